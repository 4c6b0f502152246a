import math

import numpy as np
import pytest

from simplexwalk import (
    bivariate_G,
    bivariate_orthogonality_residual,
    bivariate_recurrence_residual,
    directed_ngon,
    enumerate_indices,
    griffiths_params,
    krawtchouk_genfun,
    krawtchouk_series,
    krawtchouk_table,
    multinomial,
    ordered_word_scheme,
    orthogonality_residual,
    params_from_scheme,
    pochhammer,
    trivial_scheme_2,
)

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex)


def test_pochhammer():
    assert pochhammer(1.5, 0) == 1
    assert pochhammer(-2, 3) == 0
    assert pochhammer(3, 2) == 12
    assert pochhammer(-4, 2) == 12


def test_params_trivial2_exact():
    gp = params_from_scheme(trivial_scheme_2())
    assert gp.nu == 2
    np.testing.assert_allclose(gp.p, [0.5, 0.5])
    np.testing.assert_allclose(gp.p_tilde, [0.5, 0.5])
    np.testing.assert_array_equal(gp.U, HADAMARD)
    assert gp.unitarity_residual == 0.0


@pytest.mark.parametrize("scheme", [directed_ngon(3), directed_ngon(5), ordered_word_scheme(3)])
def test_params_unitarity(scheme):
    assert params_from_scheme(scheme).unitarity_residual < 1e-12


def test_params_reject_bad():
    with pytest.raises(ValueError):
        griffiths_params(2.0, [0.5, 0.5], [0.5, 0.5], [[1, 1], [1, 1]])
    with pytest.raises(ValueError):
        griffiths_params(3.0, [0.5, 0.5], [0.5, 0.5], HADAMARD)


def test_series_top_row_is_one():
    U = directed_ngon(3).cosine
    for N in range(4):
        top = (N, 0, 0)
        for n in enumerate_indices(N, 2):
            assert abs(krawtchouk_series(n, top, N, U) - 1) < 1e-12


def test_series_weight_mismatch():
    with pytest.raises(ValueError):
        krawtchouk_series((1, 1), (2, 1), 2, HADAMARD)


def test_series_univariate_frozen_value():
    # (1+z)(1-z)^2 = 1 - z - z^2 + z^3; coefficient of z is -1, over C(3;2,1)=3
    value = krawtchouk_series((2, 1), (1, 2), 3, HADAMARD)
    assert abs(value - (-1.0 / 3.0)) < 1e-14


def test_genfun_hadamard_frozen_value():
    # (1-z)^2 expands to 1 - 2z + z^2; K((1,1),(0,2)) = -2/2
    table = krawtchouk_genfun((0, 2), 2, HADAMARD)
    assert abs(table[(1, 1)] - (-1.0)) < 1e-14


def test_genfun_top_column():
    U = ordered_word_scheme(2).cosine
    for N in range(4):
        table = krawtchouk_genfun((N, 0, 0), N, U)
        for n, value in table.items():
            assert abs(value - 1) < 1e-12


@pytest.mark.parametrize(
    "scheme",
    [
        trivial_scheme_2(),
        directed_ngon(3),
        ordered_word_scheme(2),
        directed_ngon(4),
        ordered_word_scheme(3),
    ],
)
def test_series_matches_genfun(scheme):
    U = scheme.cosine
    worst = 0.0
    for N in range(5):
        table = krawtchouk_table(N, U)
        for nt in enumerate_indices(N, scheme.d):
            for n in enumerate_indices(N, scheme.d):
                worst = max(worst, abs(krawtchouk_series(n, nt, N, U) - table[nt][n]))
    assert worst < 1e-10


def test_orthogonality_trivial2():
    gp = params_from_scheme(trivial_scheme_2())
    assert orthogonality_residual(gp, 4) < 1e-10


def test_orthogonality_ngon3():
    gp = params_from_scheme(directed_ngon(3))
    assert orthogonality_residual(gp, 3) < 1e-10


@pytest.mark.parametrize("scheme", [directed_ngon(4), ordered_word_scheme(3)])
def test_orthogonality_three_variables(scheme):
    gp = params_from_scheme(scheme)
    assert max(orthogonality_residual(gp, N) for N in range(5)) < 1e-10


def test_orthogonality_N0_exact():
    gp = params_from_scheme(trivial_scheme_2())
    assert orthogonality_residual(gp, 0) == 0.0


def test_bivariate_constant():
    for N in range(1, 4):
        for x in range(N + 1):
            for y in range(N + 1 - x):
                assert bivariate_G(0, 0, x, y, N) == 1.0


def test_bivariate_range_checks():
    with pytest.raises(ValueError):
        bivariate_G(2, 2, 0, 0, 3)
    with pytest.raises(ValueError):
        bivariate_G(0, 0, 3, 1, 3)


@pytest.mark.parametrize("N", range(1, 5))
def test_bivariate_orthogonality(N):
    assert bivariate_orthogonality_residual(N) < 1e-10


def test_bivariate_matches_series():
    U = directed_ngon(3).cosine
    worst = 0.0
    for N in range(1, 4):
        for m in range(N + 1):
            for n in range(N + 1 - m):
                for x in range(N + 1):
                    for y in range(N + 1 - x):
                        g = bivariate_G(m, n, x, y, N)
                        s = krawtchouk_series((N - x - y, x, y), (N - m - n, m, n), N, U)
                        worst = max(worst, abs(g - s))
    assert worst < 1e-12


@pytest.mark.parametrize("N", range(1, 5))
def test_bivariate_recurrence(N):
    assert bivariate_recurrence_residual(N) < 1e-9


def test_bivariate_recurrence_generic_weights():
    # the identity is linear in the couplings, so it holds beyond the
    # canonical pair as long as the pair is conjugate
    w1 = 0.3 + 0.25j
    assert bivariate_recurrence_residual(3, w1, np.conj(w1)) < 1e-9


def test_recurrence_eigenvalue_factors():
    # the two factors multiplying G-tilde in the recurrence equal the
    # one-hop class eigenvalues on the idempotent grid
    N = 2
    zeta = np.exp(2j * np.pi / 3)
    for x in range(N + 1):
        for y in range(N + 1 - x):
            lam1 = N + math.sqrt(3.0) * 1j * (zeta * y - zeta ** -1 * x)
            lam2 = N + math.sqrt(3.0) * 1j * (zeta * x - zeta ** -1 * y)
            assert abs(lam1 - ((N - x - y) + x * zeta + y * zeta ** 2)) < 1e-12
            assert abs(lam2 - ((N - x - y) + x * zeta ** 2 + y * zeta)) < 1e-12


def test_genfun_values_scale_with_multinomial():
    # coefficient extraction divides by the multinomial; spot-check once
    U = directed_ngon(3).cosine
    N, nt = 3, (1, 1, 1)
    table = krawtchouk_genfun(nt, N, U)
    poly_value = sum(
        multinomial(N, n) * table[n] for n in enumerate_indices(N, 2)
    )
    # evaluating the generating product at z = (1, 1)
    expected = np.prod([(1 + U[i, 1] + U[i, 2]) ** nt[i] for i in range(3)])
    assert abs(poly_value - expected) < 1e-10
