"""Multivariate Krawtchouk polynomials of Griffiths type, complex coefficients.

Two independent evaluators are provided: a hypergeometric sum over small
integer matrices and an exact generating-function expansion.  They must
agree; tests and the verification suites cross-check them.  Integer parts
(Pochhammer symbols, factorials) are kept exact and only combined with the
complex weight factors at the last moment.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction

import numpy as np

from .extension import enumerate_indices, multinomial
from .schemes import AssociationScheme, unit_root

PARAM_TOL = 1e-8


def pochhammer(x, r: int):
    """Rising factorial x (x+1) ... (x+r-1); 1 when r = 0."""
    if r < 0:
        raise ValueError("r must be non-negative")
    out = 1
    for s in range(r):
        out = out * (x + s)
    return out


@dataclasses.dataclass(frozen=True, eq=False)
class GriffithsParams:
    """Parameter tuple (nu, p, p_tilde, U) of a Griffiths-type family.

    U has first row and column all ones, p_0 = p_tilde_0 = 1/nu, and
    nu * diag(p) U diag(p_tilde) U^dagger is the identity.
    """

    dimension: int
    nu: float
    p: np.ndarray
    p_tilde: np.ndarray
    U: np.ndarray

    @property
    def unitarity_residual(self) -> float:
        lhs = self.nu * np.diag(self.p) @ self.U @ np.diag(self.p_tilde) @ self.U.conj().T
        return float(np.abs(lhs - np.eye(self.dimension + 1)).max())


def griffiths_params(nu, p, p_tilde, U) -> GriffithsParams:
    p = np.asarray(p, dtype=float)
    p_tilde = np.asarray(p_tilde, dtype=float)
    U = np.asarray(U, dtype=complex)
    d = U.shape[0] - 1
    if p.shape != (d + 1,) or p_tilde.shape != (d + 1,) or U.shape != (d + 1, d + 1):
        raise ValueError("parameter shapes do not match")
    if abs(p[0] - 1.0 / nu) > PARAM_TOL or abs(p_tilde[0] - 1.0 / nu) > PARAM_TOL:
        raise ValueError("p_0 and p_tilde_0 must equal 1/nu")
    ones = np.abs(U[0, :] - 1).max() + np.abs(U[:, 0] - 1).max()
    if ones > PARAM_TOL:
        raise ValueError("first row and column of U must be all ones")
    gp = GriffithsParams(dimension=d, nu=float(nu), p=p, p_tilde=p_tilde, U=U)
    if gp.unitarity_residual > PARAM_TOL:
        raise ValueError(
            f"parameters violate the unitarity relation (residual {gp.unitarity_residual:.3e})"
        )
    return gp


def params_from_scheme(scheme: AssociationScheme) -> GriffithsParams:
    """Griffiths parameters of a scheme: nu = |X|, U = cosine matrix,
    p from multiplicities, p_tilde from valencies."""
    nu = float(scheme.size)
    p = scheme.multiplicities / nu
    p_tilde = scheme.valencies / nu
    return griffiths_params(nu, p, p_tilde, scheme.cosine)


def _check_weights(n, N):
    n = tuple(int(v) for v in n)
    if any(v < 0 for v in n) or sum(n) != N:
        raise ValueError(f"index weight mismatch: {n} does not sum to {N}")
    return n


def _admissible_matrices(row_budget, col_budget):
    """d x d non-negative integer matrices with row sums <= row_budget and
    column sums <= col_budget."""
    d = len(row_budget)
    cells = [(i, j) for i in range(d) for j in range(d)]
    mat = [[0] * d for _ in range(d)]
    rows = list(row_budget)
    cols = list(col_budget)

    def rec(c):
        if c == len(cells):
            yield [row[:] for row in mat]
            return
        i, j = cells[c]
        for v in range(min(rows[i], cols[j]) + 1):
            mat[i][j] = v
            rows[i] -= v
            cols[j] -= v
            yield from rec(c + 1)
            rows[i] += v
            cols[j] += v
        mat[i][j] = 0

    yield from rec(0)


def krawtchouk_series(n, n_tilde, N: int, U) -> complex:
    """Hypergeometric-sum evaluation of K(n, n_tilde) for the matrix U.

    The sum runs over d x d non-negative integer matrices; entries whose row
    sums exceed n_tilde or column sums exceed n are pruned since their
    Pochhammer factors vanish.
    """
    n = _check_weights(n, N)
    n_tilde = _check_weights(n_tilde, N)
    U = np.asarray(U, dtype=complex)
    d = len(n) - 1
    if d == 0:
        return 1.0 + 0.0j
    omega = 1.0 - U

    total = 0.0 + 0.0j
    for A in _admissible_matrices(n_tilde[1:], n[1:]):
        rsum = [sum(row) for row in A]
        csum = [sum(A[i][j] for i in range(d)) for j in range(d)]
        s = sum(rsum)
        num = 1
        for j in range(d):
            num *= pochhammer(-n[j + 1], csum[j])
        for i in range(d):
            num *= pochhammer(-n_tilde[i + 1], rsum[i])
        den = pochhammer(-N, s)
        wprod = 1.0 + 0.0j
        for i in range(d):
            for j in range(d):
                a = A[i][j]
                if a:
                    den *= math.factorial(a)
                    wprod *= omega[i + 1, j + 1] ** a
        total += float(Fraction(num, den)) * wprod
    return total


def krawtchouk_genfun(n_tilde, N: int, U) -> dict:
    """Exact generating-function evaluation: expand the product of the row
    polynomials of U and read off every K(n, n_tilde) at once.

    Returns a map from each composition n to the value K(n, n_tilde).
    """
    n_tilde = _check_weights(n_tilde, N)
    U = np.asarray(U, dtype=complex)
    d = len(n_tilde) - 1

    poly = {(0,) * d: 1.0 + 0.0j}
    for i in range(d + 1):
        for _ in range(n_tilde[i]):
            new = {}
            for mono, coeff in poly.items():
                new[mono] = new.get(mono, 0.0 + 0.0j) + coeff
                for j in range(1, d + 1):
                    shifted = mono[: j - 1] + (mono[j - 1] + 1,) + mono[j:]
                    new[shifted] = new.get(shifted, 0.0 + 0.0j) + coeff * U[i, j]
            poly = new

    out = {}
    for n in enumerate_indices(N, d):
        coeff = poly.get(n[1:], 0.0 + 0.0j)
        out[n] = coeff / multinomial(N, n)
    return out


def krawtchouk_table(N: int, U) -> dict:
    """Values K(n, n_tilde) for every pair of compositions, via the
    generating function."""
    d = np.asarray(U).shape[0] - 1
    return {nt: krawtchouk_genfun(nt, N, U) for nt in enumerate_indices(N, d)}


def _power(vals, exps) -> float:
    out = 1.0
    for v, e in zip(vals, exps):
        out *= float(v) ** int(e)
    return out


def orthogonality_residual(gp: GriffithsParams, N: int) -> float:
    """Max deviation from the two sesquilinear orthogonality relations."""
    d = gp.dimension
    idx = enumerate_indices(N, d)
    table = krawtchouk_table(N, gp.U)
    factN = math.factorial(N)
    nuN = gp.nu ** N

    def fact(n):
        return math.prod(math.factorial(v) for v in n)

    worst = 0.0
    for nt in idx:
        for kt in idx:
            lhs = factN * sum(
                np.conj(table[nt][n]) * table[kt][n] * _power(gp.p_tilde, n) / fact(n)
                for n in idx
            )
            rhs = 0.0
            if nt == kt:
                rhs = fact(nt) / (factN * nuN * _power(gp.p, nt))
            worst = max(worst, abs(lhs - rhs))

    for n in idx:
        for k in idx:
            lhs = factN * sum(
                np.conj(table[nt][n]) * table[nt][k] * _power(gp.p, nt) / fact(nt)
                for nt in idx
            )
            rhs = 0.0
            if n == k:
                rhs = fact(n) / (factN * nuN * _power(gp.p_tilde, n))
            worst = max(worst, abs(lhs - rhs))
    return worst


# -- bivariate specialization on the 3-cycle cosine matrix ------------------

_ZETA3 = unit_root(1, 3)
_U1 = 1.0 - _ZETA3
_U2 = 1.0 - _ZETA3 ** 2
_V1 = _U2
_V2 = _U1


def bivariate_G(m: int, n: int, x: int, y: int, N: int) -> complex:
    """Bivariate Krawtchouk value G_{m,n}(x, y) on the triangular grid.

    Equals krawtchouk_series((N-x-y, x, y), (N-m-n, m, n), N, U) with U the
    cosine matrix of the directed 3-gon.
    """
    if not (0 <= m and 0 <= n and m + n <= N):
        raise ValueError(f"degree indices ({m},{n}) out of range for N={N}")
    if not (0 <= x and 0 <= y and x + y <= N):
        raise ValueError(f"grid point ({x},{y}) out of range for N={N}")
    total = 0.0 + 0.0j
    for i in range(m + 1):
        for j in range(m - i + 1):
            for k in range(min(n, x - i) + 1):
                for l in range(min(n - k, y - j) + 1):
                    s = i + j + k + l
                    num = (
                        pochhammer(-m, i + j)
                        * pochhammer(-n, k + l)
                        * pochhammer(-x, i + k)
                        * pochhammer(-y, j + l)
                    )
                    if num == 0:
                        continue
                    den = pochhammer(-N, s) * (
                        math.factorial(i) * math.factorial(j) * math.factorial(k) * math.factorial(l)
                    )
                    total += float(Fraction(num, den)) * (
                        _U1 ** i * _V1 ** j * _U2 ** k * _V2 ** l
                    )
    return total


def bivariate_G_tilde(m: int, n: int, x: int, y: int, N: int) -> complex:
    """Orthonormalized value: sqrt(3^N multinomial) * G_{m,n}(x,y)."""
    scale = math.sqrt(3 ** N * multinomial(N, (N - m - n, m, n)))
    return scale * bivariate_G(m, n, x, y, N)


def bivariate_orthogonality_residual(N: int, p: float = 1.0 / 3.0, q: float = 1.0 / 3.0) -> float:
    """Max deviation from the weighted orthogonality of the G_{m,n} with the
    trinomial weight w_{x,y} = multinomial * p^x q^y (1-p-q)^(N-x-y)."""
    grid = [(x, y) for x in range(N + 1) for y in range(N + 1 - x)]
    degrees = grid
    values = {
        (m, n): {(x, y): bivariate_G(m, n, x, y, N) for (x, y) in grid} for (m, n) in degrees
    }
    weight = {
        (x, y): multinomial(N, (N - x - y, x, y)) * p ** x * q ** y * (1 - p - q) ** (N - x - y)
        for (x, y) in grid
    }
    worst = 0.0
    for m1, n1 in degrees:
        for m2, n2 in degrees:
            acc = sum(
                weight[pt] * values[(m1, n1)][pt] * np.conj(values[(m2, n2)][pt]) for pt in grid
            )
            rhs = 0.0
            if (m1, n1) == (m2, n2):
                rhs = 1.0 / multinomial(N, (N - m1 - n1, m1, n1))
            worst = max(worst, abs(acc - rhs))
    return worst


def canonical_bivariate_weights() -> tuple:
    """The coupling pair (1/(zeta^-1 - 1), 1/(zeta - 1)) for the 3-cycle."""
    return 1.0 / (_ZETA3 ** -1 - 1.0), 1.0 / (_ZETA3 - 1.0)


def bivariate_recurrence_residual(N: int, w1: complex = None, w2: complex = None) -> float:
    """Max deviation from the six-term recurrence of the orthonormal
    G-tilde values over the whole degree/grid range."""
    if w1 is None or w2 is None:
        w1, w2 = canonical_bivariate_weights()
    sqrt3 = math.sqrt(3.0)
    grid = [(x, y) for x in range(N + 1) for y in range(N + 1 - x)]
    degrees = grid

    gt = {}
    for m, n in degrees:
        for pt in grid:
            gt[(m, n, pt)] = bivariate_G_tilde(m, n, pt[0], pt[1], N)

    def val(m, n, pt):
        if m < 0 or n < 0 or m + n > N:
            return 0.0 + 0.0j
        return gt[(m, n, pt)]

    worst = 0.0
    for m, n in degrees:
        for pt in grid:
            x, y = pt
            lam1 = N + sqrt3 * 1j * (_ZETA3 * y - _ZETA3 ** -1 * x)
            lam2 = N + sqrt3 * 1j * (_ZETA3 * x - _ZETA3 ** -1 * y)
            lhs = (w1 * lam1 + w2 * lam2) * val(m, n, pt)
            rhs = (
                w1 * math.sqrt((N - m - n) * (m + 1)) * val(m + 1, n, pt)
                + w1 * math.sqrt(m * (n + 1)) * val(m - 1, n + 1, pt)
                + w2 * math.sqrt((N - m - n) * (n + 1)) * val(m, n + 1, pt)
                + w2 * math.sqrt(n * (m + 1)) * val(m + 1, n - 1, pt)
                + w1 * math.sqrt((N + 1 - m - n) * n) * val(m, n - 1, pt)
                + w2 * math.sqrt((N + 1 - m - n) * m) * val(m - 1, n, pt)
            )
            worst = max(worst, abs(lhs - rhs))
    return worst
