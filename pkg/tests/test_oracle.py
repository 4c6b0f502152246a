import math

import numpy as np
import pytest

from simplexwalk import (
    amplitudes,
    canonical_ngon_weights,
    class_valency,
    directed_ngon,
    evolve_projected,
    extension_scheme,
    materialize_class,
    ordered_word_scheme,
    projected_matrix,
    trivial_scheme_2,
    walk_spec,
)
from simplexwalk.oracle import (
    compare_amplitudes,
    dense_evolution,
    dense_hamiltonian,
    golden_bmatrix_residual,
    ngon_spectrum_residual,
    run_suite,
    vertex_classes,
)


def hypercube_adjacency(N):
    size = 2 ** N
    A = np.zeros((size, size), dtype=int)
    for v in range(size):
        for b in range(N):
            A[v, v ^ (1 << b)] = 1
    return A


def test_dense_hamiltonian_hypercube():
    spec = walk_spec(trivial_scheme_2(), 3, [1.0])
    H = dense_hamiltonian(spec)
    np.testing.assert_allclose(H, hypercube_adjacency(3), atol=0)


def test_dense_hamiltonian_single_copy_cycle():
    w = canonical_ngon_weights(3)
    spec = walk_spec(directed_ngon(3), 1, w)
    Z = np.roll(np.eye(3), 1, axis=1)
    np.testing.assert_allclose(dense_hamiltonian(spec), w[0] * Z + w[1] * (Z @ Z), atol=1e-15)


def test_dense_hamiltonian_kronecker_sum():
    w = canonical_ngon_weights(3)
    spec = walk_spec(directed_ngon(3), 2, w)
    Z = np.roll(np.eye(3), 1, axis=1)
    R = w[0] * Z + w[1] * (Z @ Z)
    eye = np.eye(3)
    expected = np.kron(R, eye) + np.kron(eye, R)
    np.testing.assert_allclose(dense_hamiltonian(spec), expected, atol=1e-15)


def test_dense_evolution_identity():
    spec = walk_spec(trivial_scheme_2(), 3, [1.0])
    psi = dense_evolution(spec, 0.0, 5)
    expected = np.zeros(8)
    expected[5] = 1.0
    np.testing.assert_allclose(psi, expected, atol=1e-12)


def test_dense_evolution_unitary():
    spec = walk_spec(directed_ngon(3), 2, canonical_ngon_weights(3))
    for t in (0.3, 1.7, 4.0):
        assert abs(np.linalg.norm(dense_evolution(spec, t, 0)) - 1.0) < 1e-12


def test_dense_evolution_methods_agree():
    specs = [
        walk_spec(directed_ngon(3), 2, canonical_ngon_weights(3)),
        walk_spec(trivial_scheme_2(), 4, [1.0]),
        walk_spec(ordered_word_scheme(3), 2, [0.7, -0.3, 0.25]),
    ]
    rng = np.random.default_rng(11)
    for spec in specs:
        for t in rng.uniform(0, 6, size=5):
            a = dense_evolution(spec, t, 0, method="eig")
            b = dense_evolution(spec, t, 0, method="projector")
            assert np.abs(a - b).max() < 1e-10


def test_dense_evolution_single_copy_transfer():
    spec = walk_spec(directed_ngon(3), 1, canonical_ngon_weights(3))
    psi = dense_evolution(spec, 2 * math.pi / 3, 0)
    mods = np.abs(psi)
    assert mods.max() > 1 - 1e-12
    assert sorted(mods)[-2] < 1e-12


def test_dense_evolution_rejects_bad_method():
    spec = walk_spec(trivial_scheme_2(), 2, [1.0])
    with pytest.raises(ValueError):
        dense_evolution(spec, 1.0, 0, method="magic")


def test_vertex_classes_partition():
    spec = walk_spec(ordered_word_scheme(2), 2, [0.5, 0.5])
    members = vertex_classes(spec)
    seen = np.concatenate(list(members.values()))
    assert sorted(seen.tolist()) == list(range(16))


def test_guard_env_override(monkeypatch):
    spec = walk_spec(trivial_scheme_2(), 4, [1.0])
    monkeypatch.setenv("SIMPLEXWALK_GUARD", "8")
    with pytest.raises(ValueError):
        dense_hamiltonian(spec)
    monkeypatch.setenv("SIMPLEXWALK_GUARD", "16")
    dense_hamiltonian(spec)


def test_compare_amplitudes_hypercube_transfer_class():
    spec = walk_spec(trivial_scheme_2(), 5, [1.0])
    report = compare_amplitudes(spec, [math.pi / 2])
    assert report.max_error < 1e-9
    psi = dense_evolution(spec, math.pi / 2, 0)
    members = vertex_classes(spec)[(0, 5)]
    assert np.abs(psi[members]).max() > 1 - 1e-9


def test_compare_amplitudes_within_class_constancy():
    spec = walk_spec(ordered_word_scheme(3), 2, [0.7, -0.3, 0.25])
    rng = np.random.default_rng(5)
    report = compare_amplitudes(spec, rng.uniform(0, 8, size=5))
    assert report.max_within_class_error < 1e-10
    assert report.max_amplitude_error < 1e-9


def _dense_projection(spec):
    """<Y_gamma|M|Y_beta> computed from materialized classes."""
    base = spec.base
    ext = extension_scheme(base, spec.copies)
    M = dense_hamiltonian(spec)
    x0 = np.zeros(base.size ** spec.copies)
    x0[0] = 1.0
    cols = []
    for beta in ext.index_set:
        A = materialize_class(ext, beta).astype(complex)
        cols.append(A @ x0 / math.sqrt(class_valency(ext, beta)))
    Y = np.array(cols).T
    gram = Y.conj().T @ Y
    np.testing.assert_allclose(gram, np.eye(len(ext.index_set)), atol=1e-12)
    return Y.conj().T @ M @ Y


@pytest.mark.parametrize(
    "spec",
    [
        walk_spec(directed_ngon(3), 2, canonical_ngon_weights(3)),
        walk_spec(ordered_word_scheme(3), 2, [0.4, -0.3, 0.8]),
        walk_spec(ordered_word_scheme(2), 3, [0.5, 0.25]),
    ],
)
def test_projected_matrix_matches_dense_projection(spec):
    S = _dense_projection(spec)
    pm = projected_matrix(spec)
    np.testing.assert_allclose(pm.entries.T, S, atol=1e-12)


def test_evolve_projected_matches_amplitudes_ow():
    spec = walk_spec(ordered_word_scheme(3), 3, [0.7, -0.3, 0.25])
    pm = projected_matrix(spec)
    for t in (0.4, 1.9):
        state = evolve_projected(pm, t, (3, 0, 0, 0))
        prof = amplitudes(spec, t)
        expected = np.array([prof.site_amplitudes[b] for b in pm.order])
        np.testing.assert_allclose(state, expected, atol=1e-9)


def test_golden_bmatrix():
    assert golden_bmatrix_residual() <= 1e-12


def test_ngon_spectrum_residuals():
    for n in (2, 3, 4):
        for N in (1, 2, 3):
            assert ngon_spectrum_residual(n, N) < 1e-9


def test_run_suite_axioms():
    report = run_suite("axioms")
    assert report["passed"]
    assert all(isinstance(c["residual"], float) for c in report["checks"])


def test_run_suite_unknown():
    with pytest.raises(ValueError):
        run_suite("nonsense")
