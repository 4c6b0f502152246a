"""Dense brute-force verification of every closed form.

The Hamiltonian is materialized on all |X|^N vertices and evolved exactly,
once through the factorized idempotent phases and once through a dense
Hermitian eigendecomposition; the two must agree, and both must match the
product-formula amplitudes class by class.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from . import krawtchouk
from .extension import (
    enumerate_indices,
    extension_scheme,
    materialize_class,
    size_guard,
)
from .schemes import directed_ngon, ordered_word_scheme, trivial_scheme_2, validate_scheme
from .walk import (
    WalkSpec,
    amplitudes,
    canonical_ngon_weights,
    evolve_projected,
    projected_matrix,
    walk_spec,
)

EVOLUTION_GUARD = 4096
SWEEP_GUARD = 1024


def _guarded_size(spec: WalkSpec, default: int) -> int:
    rows = spec.base.size ** spec.copies
    guard = size_guard(default)
    if rows > guard:
        raise ValueError(f"dense verification of {rows} rows exceeds the guard ({guard})")
    return rows


def dense_hamiltonian(spec: WalkSpec) -> np.ndarray:
    """Materialize the walk Hamiltonian on the full vertex set."""
    rows = _guarded_size(spec, EVOLUTION_GUARD)
    ext = extension_scheme(spec.base, spec.copies)
    H = np.zeros((rows, rows), dtype=complex)
    if spec.copies == 0:
        return H
    for i in range(1, spec.base.classes):
        beta = [0] * spec.base.classes
        beta[0] = spec.copies - 1
        beta[i] = 1
        H += spec.weights[i - 1] * materialize_class(ext, tuple(beta))
    return H


def _single_copy_evolution(spec: WalkSpec, t: float) -> np.ndarray:
    """exp(-i t R) for the one-copy Hamiltonian R, via the base idempotents."""
    scheme = spec.base
    P = scheme.first_eigenmatrix
    F = np.zeros((scheme.size, scheme.size), dtype=complex)
    for j in range(scheme.classes):
        rate = sum(spec.weights[i - 1] * P[j, i] for i in range(1, scheme.classes))
        F += np.exp(-1j * t * rate) * scheme.idempotent(j)
    return F


def dense_evolution(spec: WalkSpec, t: float, start_vertex: int, method: str = "eig") -> np.ndarray:
    """exp(-i t M) applied to the vertex indicator.

    method "projector" phases the factorized idempotents slot by slot;
    method "eig" diagonalizes the materialized Hamiltonian.  Both are exact
    up to roundoff and must agree.
    """
    rows = _guarded_size(spec, EVOLUTION_GUARD)
    if not 0 <= start_vertex < rows:
        raise ValueError("start vertex out of range")
    if method == "projector":
        F = _single_copy_evolution(spec, t)
        state = np.zeros(rows, dtype=complex)
        state[start_vertex] = 1.0
        tensor = state.reshape((spec.base.size,) * spec.copies) if spec.copies else state
        for axis in range(spec.copies):
            tensor = np.moveaxis(np.tensordot(F, tensor, axes=(1, axis)), 0, axis)
        return tensor.reshape(rows)
    if method == "eig":
        H = dense_hamiltonian(spec)
        if np.abs(H - H.conj().T).max() > 1e-9:
            raise ValueError("materialized Hamiltonian is not Hermitian")
        vals, vecs = np.linalg.eigh(H)
        coeffs = np.conj(vecs[start_vertex, :])
        return vecs @ (np.exp(-1j * t * vals) * coeffs)
    raise ValueError(f"unknown method {method!r}")


def vertex_classes(spec: WalkSpec, start_vertex: int = 0) -> dict:
    """Map each class index to the vertices related to the start vertex."""
    _guarded_size(spec, EVOLUTION_GUARD)
    ext = extension_scheme(spec.base, spec.copies)
    out = {}
    for beta in ext.index_set:
        members = np.flatnonzero(materialize_class(ext, beta)[:, start_vertex])
        out[beta] = members
    return out


@dataclasses.dataclass(frozen=True)
class ComparisonReport:
    times: tuple
    max_amplitude_error: float
    max_within_class_error: float
    max_method_disagreement: float
    max_normalization_error: float

    @property
    def max_error(self) -> float:
        return max(
            self.max_amplitude_error,
            self.max_within_class_error,
            self.max_method_disagreement,
            self.max_normalization_error,
        )


def compare_amplitudes(spec: WalkSpec, times) -> ComparisonReport:
    """Dense evolution versus the closed-form class amplitudes.

    For each time, checks that the dense state is constant on every class
    (membership taken relative to the start vertex), equals f_beta there,
    agrees between the two dense methods, and stays normalized.
    """
    _guarded_size(spec, SWEEP_GUARD)
    members = vertex_classes(spec, start_vertex=0)
    amp_err = cls_err = mth_err = nrm_err = 0.0
    for t in times:
        psi = dense_evolution(spec, t, 0, method="eig")
        psi_proj = dense_evolution(spec, t, 0, method="projector")
        mth_err = max(mth_err, float(np.abs(psi - psi_proj).max()))
        nrm_err = max(nrm_err, abs(float(np.linalg.norm(psi)) - 1.0))
        prof = amplitudes(spec, t)
        for beta, verts in members.items():
            vals = psi[verts]
            mean = vals.mean()
            cls_err = max(cls_err, float(np.abs(vals - mean).max()))
            amp_err = max(amp_err, abs(mean - prof.coefficients[beta]))
    return ComparisonReport(
        times=tuple(float(t) for t in times),
        max_amplitude_error=amp_err,
        max_within_class_error=cls_err,
        max_method_disagreement=mth_err,
        max_normalization_error=nrm_err,
    )


# -- golden data: the projected matrix of the 3-cycle walk with N = 3 -------

_S3 = math.sqrt(3.0)
_S2 = math.sqrt(2.0)

# Coefficients of w_1 (hops one step forward) in canonical index order
# (3,0,0), (2,1,0), (2,0,1), (1,2,0), (1,1,1), (1,0,2),
# (0,3,0), (0,2,1), (0,1,2), (0,0,3).
GOLDEN_BM3_W1 = np.array(
    [
        [0, _S3, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 1, 2, 0, 0, 0, 0, 0, 0],
        [_S3, 0, 0, 0, _S2, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, _S2, 0, _S3, 0, 0, 0],
        [0, _S2, 0, 0, 0, _S2, 0, _S2, 0, 0],
        [0, 0, 2, 0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 0, _S3, 0, 0],
        [0, 0, 0, 1, 0, 0, 0, 0, 2, 0],
        [0, 0, 0, 0, _S2, 0, 0, 0, 0, _S3],
        [0, 0, 0, 0, 0, _S3, 0, 0, 0, 0],
    ]
)

# Coefficients of w_2 (hops one step backward).
GOLDEN_BM3_W2 = np.array(
    [
        [0, 0, _S3, 0, 0, 0, 0, 0, 0, 0],
        [_S3, 0, 0, 0, _S2, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 2, 0, 0, 0, 0],
        [0, 2, 0, 0, 0, 0, 0, 1, 0, 0],
        [0, 0, _S2, _S2, 0, 0, 0, 0, _S2, 0],
        [0, 0, 0, 0, _S2, 0, 0, 0, 0, _S3],
        [0, 0, 0, _S3, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, _S2, 0, _S3, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 0, 2, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, _S3, 0],
    ]
)


def golden_bmatrix_residual() -> float:
    """Rebuild the 10x10 projected matrix of the 3-cycle walk at N = 3 and
    compare its w_1 and w_2 coefficient matrices against the transcription.

    The canonical graded-lexicographic row order reproduces the reference
    layout with the identity permutation.
    """
    scheme = directed_ngon(3)
    worst = 0.0
    for weights, expected in (((1.0, 0.0), GOLDEN_BM3_W1), ((0.0, 1.0), GOLDEN_BM3_W2)):
        # probe weights isolate one coefficient matrix; hermiticity is not
        # needed for assembly, so bypass the warning in the factory
        probe = WalkSpec(base=scheme, copies=3, weights=np.asarray(weights, dtype=complex))
        pm = projected_matrix(probe)
        worst = max(worst, float(np.abs(pm.entries - expected).max()))
    return worst


def ngon_spectrum_residual(n: int, N: int) -> float:
    """Check that the projected-matrix spectrum under canonical weights is,
    after sorting, the multiset {sum_j j*gamma_j - N(n-1)/2} over
    compositions gamma of N into n parts (integers shifted by N(n-1)/2)."""
    spec = walk_spec(directed_ngon(n), N, canonical_ngon_weights(n))
    pm = projected_matrix(spec)
    vals = np.sort(np.linalg.eigvalsh(pm.entries))
    expected = sorted(
        sum(j * g for j, g in enumerate(gamma)) - N * (n - 1) / 2.0
        for gamma in enumerate_indices(N, n - 1)
    )
    return float(np.abs(vals - np.array(expected)).max())


# -- verification suites -----------------------------------------------------

def _suite_axioms() -> list:
    checks = []
    builders = [("trivial2", trivial_scheme_2())]
    builders += [(f"ngon-{n}", directed_ngon(n)) for n in range(1, 8)]
    builders += [(f"ow-{d}", ordered_word_scheme(d)) for d in range(1, 5)]
    for name, scheme in builders:
        report = validate_scheme(scheme)
        checks.append(
            {
                "name": f"axioms:{name}",
                "passed": report.ok,
                "residual": report.max_residual,
                "tolerance": 1e-10,
            }
        )
    return checks


def _suite_krawtchouk() -> list:
    checks = []
    schemes = [
        ("trivial2", trivial_scheme_2()),
        ("ngon-3", directed_ngon(3)),
        ("ow-2", ordered_word_scheme(2)),
    ]
    for name, scheme in schemes:
        worst = 0.0
        for N in range(0, 5):
            table = krawtchouk.krawtchouk_table(N, scheme.cosine)
            for nt in enumerate_indices(N, scheme.d):
                for n in enumerate_indices(N, scheme.d):
                    series = krawtchouk.krawtchouk_series(n, nt, N, scheme.cosine)
                    worst = max(worst, abs(series - table[nt][n]))
        checks.append(
            {
                "name": f"krawtchouk:series-vs-genfun:{name}",
                "passed": worst <= 1e-10,
                "residual": worst,
                "tolerance": 1e-10,
            }
        )
        gp = krawtchouk.params_from_scheme(scheme)
        worst = max(krawtchouk.orthogonality_residual(gp, N) for N in range(0, 5))
        checks.append(
            {
                "name": f"krawtchouk:orthogonality:{name}",
                "passed": worst <= 1e-10,
                "residual": worst,
                "tolerance": 1e-10,
            }
        )
    worst = max(krawtchouk.bivariate_orthogonality_residual(N) for N in range(1, 5))
    checks.append(
        {
            "name": "krawtchouk:bivariate-orthogonality",
            "passed": worst <= 1e-10,
            "residual": worst,
            "tolerance": 1e-10,
        }
    )
    worst = max(krawtchouk.bivariate_recurrence_residual(N) for N in range(1, 5))
    checks.append(
        {
            "name": "krawtchouk:bivariate-recurrence",
            "passed": worst <= 1e-9,
            "residual": worst,
            "tolerance": 1e-9,
        }
    )
    return checks


def _oracle_specs() -> list:
    specs = []
    g3 = directed_ngon(3)
    for N in range(1, 5):
        specs.append((f"ngon-3 N={N}", walk_spec(g3, N, canonical_ngon_weights(3))))
    x2 = trivial_scheme_2()
    for N in range(1, 7):
        specs.append((f"trivial2 N={N}", walk_spec(x2, N, [1.0])))
    ow3 = ordered_word_scheme(3)
    for N in range(1, 3):
        specs.append((f"ow-3 N={N}", walk_spec(ow3, N, [0.7, -0.3, 0.25])))
    return specs


def _suite_amplitudes() -> list:
    checks = []
    rng = np.random.default_rng(20250811)
    for name, spec in _oracle_specs():
        times = rng.uniform(0.0, 8.0, size=20)
        report = compare_amplitudes(spec, times)
        checks.append(
            {
                "name": f"amplitudes:dense-vs-closed:{name}",
                "passed": report.max_error <= 1e-9,
                "residual": report.max_error,
                "tolerance": 1e-9,
            }
        )
    return checks


def _suite_bmatrix() -> list:
    checks = []
    worst = golden_bmatrix_residual()
    checks.append(
        {
            "name": "bmatrix:golden-10x10",
            "passed": worst <= 1e-12,
            "residual": worst,
            "tolerance": 1e-12,
        }
    )
    spec = walk_spec(directed_ngon(3), 3, canonical_ngon_weights(3))
    pm = projected_matrix(spec)
    worst = 0.0
    for t in (0.7, 2.0 * math.pi / 3.0):
        state = evolve_projected(pm, t, (3, 0, 0))
        prof = amplitudes(spec, t)
        expected = np.array([prof.site_amplitudes[b] for b in pm.order])
        worst = max(worst, float(np.abs(state - expected).max()))
    checks.append(
        {
            "name": "bmatrix:evolution-consistency",
            "passed": worst <= 1e-9,
            "residual": worst,
            "tolerance": 1e-9,
        }
    )
    worst = max(ngon_spectrum_residual(n, N) for n in range(2, 6) for N in range(1, 4))
    checks.append(
        {
            "name": "bmatrix:integral-spectrum-shift",
            "passed": worst <= 1e-9,
            "residual": worst,
            "tolerance": 1e-9,
        }
    )
    return checks


SUITES = {
    "axioms": _suite_axioms,
    "krawtchouk": _suite_krawtchouk,
    "amplitudes": _suite_amplitudes,
    "bmatrix": _suite_bmatrix,
}


def run_suite(name: str) -> dict:
    """Run one verification suite (or all) and return a JSON-ready report."""
    if name == "all":
        checks = []
        for key in ("axioms", "krawtchouk", "amplitudes", "bmatrix"):
            checks.extend(SUITES[key]())
    elif name in SUITES:
        checks = SUITES[name]()
    else:
        raise ValueError(f"unknown suite {name!r}")
    checks = [
        {
            "name": c["name"],
            "passed": bool(c["passed"]),
            "residual": float(c["residual"]),
            "tolerance": float(c["tolerance"]),
        }
        for c in checks
    ]
    return {
        "suite": name,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }
