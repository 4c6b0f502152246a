"""Commutative association schemes with closed-form spectral data.

Adjacency matrices are kept as exact integer arrays; eigenmatrices are
complex floating arrays built from closed forms (roots of unity, signed
powers of two), never from a generic eigensolver.
"""

from __future__ import annotations

import dataclasses
import itertools
import math

import numpy as np

SPECTRAL_TOL = 1e-10


class SchemeError(ValueError):
    """Matrices fail the association-scheme axioms."""


def unit_root(k: int, n: int) -> complex:
    """k-th power of exp(2*pi*i/n); exact on quarter turns."""
    k = k % n
    if 4 * k % n == 0:
        return (1 + 0j, 1j, -1 + 0j, -1j)[4 * k // n]
    angle = 2.0 * math.pi * k / n
    return complex(math.cos(angle), math.sin(angle))


@dataclasses.dataclass(frozen=True, eq=False)
class AssociationScheme:
    """A commutative association scheme together with its spectral data.

    ``adjacency`` holds the 0/1 integer matrices A_0..A_d, ``first_eigenmatrix``
    and ``second_eigenmatrix`` are P and Q with A_i = sum_j P[j,i] E_j and
    E_i = (1/|X|) sum_j Q[j,i] A_j, ``cosine`` is C with C[i,j] = P[i,j]/k_j,
    and ``intersection[i,j,k]`` is the structure constant of A_i A_j on A_k.
    """

    size: int
    classes: int
    adjacency: tuple
    first_eigenmatrix: np.ndarray
    second_eigenmatrix: np.ndarray
    cosine: np.ndarray
    valencies: np.ndarray
    multiplicities: np.ndarray
    transpose_map: tuple
    intersection: np.ndarray

    @property
    def d(self) -> int:
        return self.classes - 1

    def idempotent(self, j: int) -> np.ndarray:
        """E_j reconstructed from Q and the adjacency matrices."""
        Q = self.second_eigenmatrix
        E = np.zeros((self.size, self.size), dtype=complex)
        for k in range(self.classes):
            E += Q[k, j] * self.adjacency[k]
        return E / self.size


@dataclasses.dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float


@dataclasses.dataclass(frozen=True)
class ValidationReport:
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    def __str__(self) -> str:
        lines = []
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            lines.append(f"{c.name}: {status} (residual {c.residual:.3e})")
        return "\n".join(lines)


def _as_int_matrix(m) -> np.ndarray:
    a = np.asarray(m)
    out = np.rint(a.real if np.iscomplexobj(a) else a).astype(np.int64)
    if np.abs(out - a).max() > 0:
        raise SchemeError("adjacency matrices must have integer entries")
    return out


def _intersection_tensor(adjacency) -> np.ndarray:
    """Structure constants of the products A_i A_j, exact integers.

    Raises SchemeError if products do not commute or a coefficient is not
    constant across a relation (i.e. the matrices are not a scheme).
    """
    nc = len(adjacency)
    p = np.zeros((nc, nc, nc), dtype=np.int64)
    masks = [a.astype(bool) for a in adjacency]
    for i in range(nc):
        for j in range(i, nc):
            prod = adjacency[i] @ adjacency[j]
            if not np.array_equal(prod, adjacency[j] @ adjacency[i]):
                raise SchemeError(f"A_{i} and A_{j} do not commute")
            rem = prod.copy()
            for k in range(nc):
                vals = prod[masks[k]]
                if vals.size == 0:
                    raise SchemeError(f"relation {k} is empty")
                v0 = vals[0]
                if not np.all(vals == v0):
                    raise SchemeError(
                        f"A_{i} A_{j} is not constant on relation {k}: "
                        "not an association scheme"
                    )
                p[i, j, k] = v0
                p[j, i, k] = v0
                rem -= v0 * adjacency[k]
            if np.any(rem):
                raise SchemeError(f"A_{i} A_{j} leaves the adjacency span")
    return p


def _transpose_map(adjacency) -> tuple:
    out = []
    for i, a in enumerate(adjacency):
        at = a.T
        for j, b in enumerate(adjacency):
            if np.array_equal(at, b):
                out.append(j)
                break
        else:
            raise SchemeError(f"A_{i}^T is not one of the adjacency matrices")
    return tuple(out)


def _integer_row(row, what: str) -> np.ndarray:
    vals = np.rint(row.real).astype(np.int64)
    if np.abs(vals - row).max() > 1e-9:
        raise SchemeError(f"{what} are not integers: {row}")
    if np.any(vals <= 0):
        raise SchemeError(f"{what} must be positive: {vals}")
    return vals


def _make_scheme(adjacency, P, Q) -> AssociationScheme:
    adjacency = tuple(_as_int_matrix(a) for a in adjacency)
    size = adjacency[0].shape[0]
    nc = len(adjacency)
    for a in adjacency:
        if a.shape != (size, size):
            raise ValueError("dimension mismatch among adjacency matrices")
    P = np.asarray(P, dtype=complex)
    Q = np.asarray(Q, dtype=complex)
    if P.shape != (nc, nc) or Q.shape != (nc, nc):
        raise ValueError("dimension mismatch between eigenmatrices and classes")

    resid = np.abs(P @ Q - size * np.eye(nc)).max()
    if resid > SPECTRAL_TOL * size:
        raise SchemeError(f"PQ != |X| I (residual {resid:.3e})")

    valencies = _integer_row(P[0], "valencies")
    multiplicities = _integer_row(Q[0], "multiplicities")
    cosine = P / valencies[np.newaxis, :]
    tmap = _transpose_map(adjacency)
    if any(tmap[tmap[i]] != i for i in range(nc)):
        raise SchemeError("transpose map is not an involution")
    if any(valencies[tmap[i]] != valencies[i] for i in range(nc)):
        raise SchemeError("valencies not preserved by transposition")
    inter = _intersection_tensor(adjacency)

    for arr in adjacency:
        arr.setflags(write=False)
    for arr in (P, Q, cosine, valencies, multiplicities, inter):
        arr.setflags(write=False)
    return AssociationScheme(
        size=size,
        classes=nc,
        adjacency=adjacency,
        first_eigenmatrix=P,
        second_eigenmatrix=Q,
        cosine=cosine,
        valencies=valencies,
        multiplicities=multiplicities,
        transpose_map=tmap,
        intersection=inter,
    )


def trivial_scheme_2() -> AssociationScheme:
    """The two-point scheme: identity plus the swap."""
    a0 = np.eye(2, dtype=np.int64)
    a1 = np.array([[0, 1], [1, 0]], dtype=np.int64)
    P = np.array([[1, 1], [1, -1]], dtype=complex)
    return _make_scheme([a0, a1], P, P)


def directed_ngon(n: int) -> AssociationScheme:
    """Cyclic scheme on n points: A_k is the k-th power of the forward shift."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    eye = np.eye(n, dtype=np.int64)
    adjacency = [np.roll(eye, k, axis=1) for k in range(n)]
    P = np.array([[unit_root(k * l, n) for l in range(n)] for k in range(n)])
    Q = np.conj(P)
    return _make_scheme(adjacency, P, Q)


def _ow_orbits(d: int):
    """Orbits of binary words under the flip-left-of-a-one actions."""
    orbits = []
    seen = set()
    for w in itertools.product((0, 1), repeat=d):
        if w in seen:
            continue
        orbit = {w}
        stack = [w]
        while stack:
            u = stack.pop()
            for j in range(1, d):
                if u[j] == 1:
                    v = list(u)
                    v[j - 1] ^= 1
                    v = tuple(v)
                    if v not in orbit:
                        orbit.add(v)
                        stack.append(v)
        seen |= orbit
        orbits.append(sorted(orbit))
    return orbits


def _word_matrix(word, factors) -> np.ndarray:
    out = np.eye(1, dtype=np.int64)
    for t in word:
        out = np.kron(out, factors[t])
    return out


def ordered_word_scheme(d: int) -> AssociationScheme:
    """Binary-word scheme of depth d on 2^d points.

    Built by fusing the d-fold tensor power of the two-point scheme under
    the group generated by "flip position j-1 whenever position j holds a
    one"; class j collects the words whose last one sits at position j, so
    k_0 = 1 and k_j = 2^(j-1).
    """
    if d < 1:
        raise ValueError("d must be a positive integer")
    base = trivial_scheme_2()
    orbits = _ow_orbits(d)

    def last_one(word):
        return max((t + 1 for t in range(d) if word[t]), default=0)

    by_class = {}
    for orbit in orbits:
        labels = {last_one(w) for w in orbit}
        if len(labels) != 1:
            raise SchemeError("word orbit mixes classes")
        label = labels.pop()
        if label in by_class:
            raise SchemeError("two orbits with the same class label")
        by_class[label] = orbit
    if sorted(by_class) != list(range(d + 1)):
        raise SchemeError("unexpected orbit structure")

    adjacency = []
    for j in range(d + 1):
        total = np.zeros((2 ** d, 2 ** d), dtype=np.int64)
        for word in by_class[j]:
            total += _word_matrix(word, base.adjacency)
        adjacency.append(total)

    k = np.array([1] + [2 ** (j - 1) for j in range(1, d + 1)], dtype=np.int64)
    m = k.copy()
    C = np.zeros((d + 1, d + 1))
    C[0, :] = 1.0
    for i in range(1, d + 1):
        for j in range(d + 1):
            if j <= d - i:
                C[i, j] = 1.0
            elif j == d - i + 1:
                C[i, j] = -1.0
    P = C * k[np.newaxis, :]
    Q = (C * m[:, np.newaxis]).T
    return _make_scheme(adjacency, P, Q)


def intersection_numbers(scheme: AssociationScheme) -> np.ndarray:
    """Recompute the structure-constant tensor from the adjacency matrices."""
    return _intersection_tensor(scheme.adjacency)


def validate_scheme(scheme: AssociationScheme) -> ValidationReport:
    """Check the four axioms exactly and the spectral data numerically."""
    size = scheme.size
    nc = scheme.classes
    for a in scheme.adjacency:
        if a.shape != (size, size):
            raise ValueError("dimension mismatch among adjacency matrices")

    checks = []

    def exact(name, diff):
        r = float(np.abs(diff).max()) if np.size(diff) else 0.0
        checks.append(CheckResult(name, r == 0.0, r))

    def approx(name, residual, tol=SPECTRAL_TOL):
        r = float(residual)
        checks.append(CheckResult(name, r <= tol, r))

    exact("identity-class", scheme.adjacency[0] - np.eye(size, dtype=np.int64))
    exact("partition-of-ones", sum(scheme.adjacency) - np.ones((size, size), dtype=np.int64))

    tr_ok = all(
        np.array_equal(scheme.adjacency[i].T, scheme.adjacency[scheme.transpose_map[i]])
        for i in range(nc)
    )
    invol = all(scheme.transpose_map[scheme.transpose_map[i]] == i for i in range(nc))
    checks.append(CheckResult("transpose-closure", tr_ok and invol, 0.0 if (tr_ok and invol) else 1.0))

    try:
        tensor = _intersection_tensor(scheme.adjacency)
        exact("commuting-integer-products", tensor - scheme.intersection)
    except SchemeError:
        checks.append(CheckResult("commuting-integer-products", False, float("inf")))

    P = scheme.first_eigenmatrix
    Q = scheme.second_eigenmatrix
    approx("eigenmatrix-inverse", np.abs(P @ Q - size * np.eye(nc)).max())

    E = [scheme.idempotent(j) for j in range(nc)]
    recon = max(
        np.abs(scheme.adjacency[i] - sum(P[j, i] * E[j] for j in range(nc))).max()
        for i in range(nc)
    )
    approx("adjacency-reconstruction", recon)

    idem = max(
        np.abs(E[i] @ E[j] - (E[i] if i == j else 0)).max()
        for i in range(nc)
        for j in range(nc)
    )
    approx("idempotency", idem)

    eigrel = max(
        np.abs(scheme.adjacency[i] @ E[j] - P[j, i] * E[j]).max()
        for i in range(nc)
        for j in range(nc)
    )
    approx("eigen-relation", eigrel)

    approx("valency-row", np.abs(P[0] - scheme.valencies).max())
    approx("multiplicity-row", np.abs(Q[0] - scheme.multiplicities).max())

    dual = max(
        abs(scheme.cosine[i, j] - np.conj(Q[j, i]) / scheme.multiplicities[i])
        for i in range(nc)
        for j in range(nc)
    )
    approx("cosine-duality", dual)

    m = scheme.multiplicities
    col = max(
        abs(sum(m[l] * np.conj(scheme.cosine[l, k]) for l in range(nc)) - (size if k == 0 else 0))
        for k in range(nc)
    )
    approx("column-orthogonality", col)

    return ValidationReport(tuple(checks))
