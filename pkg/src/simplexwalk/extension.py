"""Multi-index bookkeeping for the N-fold symmetric tensor power of a scheme.

The power scheme is never stored as matrices in the main path: classes are
labelled by compositions of N into d+1 parts, and everything downstream
(valencies, cosines, spectra) is computed at the index level.  Classes can
still be materialized as dense 0/1 matrices for small sizes, which is what
the brute-force oracle feeds on.
"""

from __future__ import annotations

import dataclasses
import math
import os

import numpy as np

from .schemes import AssociationScheme

DEFAULT_GUARD = 4096


def size_guard(default: int = DEFAULT_GUARD) -> int:
    """Row guard for materialized matrices; SIMPLEXWALK_GUARD overrides."""
    env = os.environ.get("SIMPLEXWALK_GUARD")
    return int(env) if env else default


def enumerate_indices(N: int, d: int) -> list:
    """All compositions of N into d+1 parts, largest first coordinate first.

    This graded-lexicographic order is the canonical row/column order for
    projected matrices and all serialized output.
    """
    if N < 0 or d < 0:
        raise ValueError("N and d must be non-negative")
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for v in range(remaining, -1, -1):
            rec(prefix + (v,), remaining - v, slots - 1)

    rec((), N, d + 1)
    return out


def multinomial(N: int, beta) -> int:
    """Exact N! / prod(beta_i!)."""
    beta = tuple(int(b) for b in beta)
    if any(b < 0 for b in beta):
        raise ValueError("multi-index entries must be non-negative")
    if sum(beta) != N:
        raise ValueError(f"multi-index {beta} does not sum to {N}")
    return math.factorial(N) // math.prod(math.factorial(b) for b in beta)


def multiset_arrangements(beta):
    """Distinct arrangements of the multiset {i repeated beta_i times}, in
    lexicographic order."""
    counts = [int(b) for b in beta]
    total = sum(counts)
    acc = []

    def rec():
        if len(acc) == total:
            yield tuple(acc)
            return
        for i, c in enumerate(counts):
            if c:
                counts[i] -= 1
                acc.append(i)
                yield from rec()
                acc.pop()
                counts[i] += 1

    yield from rec()


@dataclasses.dataclass(frozen=True, eq=False)
class ExtensionScheme:
    """Symbolic handle on the N-th symmetric tensor power of ``base``."""

    base: AssociationScheme
    copies: int
    index_set: tuple
    position: dict

    @property
    def dimension(self) -> int:
        return len(self.index_set)


def extension_scheme(base: AssociationScheme, N: int) -> ExtensionScheme:
    if N < 0:
        raise ValueError("N must be non-negative")
    indices = tuple(enumerate_indices(N, base.d))
    pos = {beta: i for i, beta in enumerate(indices)}
    return ExtensionScheme(base=base, copies=N, index_set=indices, position=pos)


def _check_index(ext: ExtensionScheme, beta) -> tuple:
    beta = tuple(int(b) for b in beta)
    if beta not in ext.position:
        raise ValueError(f"{beta} is not a composition of {ext.copies} into {ext.base.d + 1} parts")
    return beta


def class_valency(ext: ExtensionScheme, beta) -> int:
    """k_beta = multinomial(N; beta) * prod_i k_i^beta_i, exact."""
    beta = _check_index(ext, beta)
    out = multinomial(ext.copies, beta)
    for b, k in zip(beta, ext.base.valencies):
        out *= int(k) ** b
    return out


def _kron_chain(mats, dtype) -> np.ndarray:
    out = np.eye(1, dtype=dtype)
    for m in mats:
        out = np.kron(out, m)
    return out


def _materialize(ext: ExtensionScheme, index, factors, dtype) -> np.ndarray:
    rows = ext.base.size ** ext.copies
    guard = size_guard()
    if rows > guard:
        raise ValueError(f"materialization of {rows} rows exceeds the guard ({guard})")
    total = np.zeros((rows, rows), dtype=dtype)
    for arrangement in multiset_arrangements(index):
        total += _kron_chain([factors[s] for s in arrangement], dtype)
    return total


def materialize_class(ext: ExtensionScheme, beta) -> np.ndarray:
    """Dense 0/1 adjacency matrix of the class labelled by beta."""
    beta = _check_index(ext, beta)
    return _materialize(ext, beta, ext.base.adjacency, np.int64)


def materialize_idempotent(ext: ExtensionScheme, alpha) -> np.ndarray:
    """Dense primitive idempotent labelled by alpha (sum of arrangement
    tensor products of the base idempotents)."""
    alpha = _check_index(ext, alpha)
    base_idem = [ext.base.idempotent(j) for j in range(ext.base.classes)]
    return _materialize(ext, alpha, base_idem, complex)


def extension_cosine(ext: ExtensionScheme, alpha, beta) -> complex:
    """Cosine of the class beta on the idempotent alpha of the power scheme."""
    alpha = _check_index(ext, alpha)
    beta = _check_index(ext, beta)
    from . import krawtchouk

    return krawtchouk.krawtchouk_series(beta, alpha, ext.copies, ext.base.cosine)


def indices_json(ext: ExtensionScheme) -> list:
    """Index set as a JSON-ready list of integer lists, canonical order."""
    return [list(beta) for beta in ext.index_set]
