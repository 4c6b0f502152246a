import dataclasses
import math

import numpy as np
import pytest

from simplexwalk import (
    amplitudes,
    canonical_ngon_weights,
    cascade_residual,
    classify,
    directed_ngon,
    evolve_projected,
    hypercube_pst_scenario,
    ngon_mpst_scenario,
    ordered_word_scheme,
    ow_fr_scenario,
    projected_matrix,
    scan,
    site_factors,
    solve_weights,
    trivial_scheme_2,
    walk_spec,
    zt_candidates,
)


def test_classify_identity():
    spec = walk_spec(directed_ngon(3), 2, canonical_ngon_weights(3))
    ev = classify(amplitudes(spec, 0.0))
    assert ev.kind == "PST"
    assert ev.support == ((2, 0, 0),)
    assert abs(ev.phase) < 1e-12
    assert ev.fidelity > 1 - 1e-12


def test_classify_transfer_event():
    spec = walk_spec(directed_ngon(4), 2, canonical_ngon_weights(4))
    ev = classify(amplitudes(spec, math.pi / 2))
    assert ev.kind == "PST"
    assert ev.support == ((0, 0, 0, 2),)


def test_classify_gme_half_time():
    spec = walk_spec(trivial_scheme_2(), 1, [1.0])
    ev = classify(amplitudes(spec, math.pi / 4))
    assert ev.kind == "GME"
    assert len(ev.support) == 2


def test_classify_fr_binomial_tail():
    # at half the transfer time the binomial spread leaves the far tail
    # below tolerance once N is large enough
    spec = walk_spec(trivial_scheme_2(), 30, [1.0])
    ev = classify(amplitudes(spec, math.pi / 4))
    assert ev.kind == "FR"
    assert 2 < len(ev.support) < 31


def test_classify_spread_is_none():
    spec = walk_spec(trivial_scheme_2(), 2, [1.0])
    ev = classify(amplitudes(spec, math.pi / 4))
    assert ev.kind == "none"


def test_classify_rejects_non_normalized():
    spec = walk_spec(directed_ngon(3), 1, canonical_ngon_weights(3))
    prof = amplitudes(spec, 0.4)
    bad = dataclasses.replace(prof, class_probabilities={b: 0.5 * q for b, q in prof.class_probabilities.items()})
    with pytest.raises(ValueError):
        classify(bad)
    with pytest.warns(UserWarning):
        lop = walk_spec(directed_ngon(3), 1, [0.7, 0.1])
    with pytest.raises(ValueError):
        classify(amplitudes(lop, 0.4))


def test_scan_finds_mpst_events():
    sc = ngon_mpst_scenario(3, 2)
    events = scan(sc.spec, np.linspace(0.0, 2 * math.pi, 200))
    psts = [ev for ev in events if ev.kind == "PST"]
    found = {ev.support[0]: ev for ev in psts}
    for time, kind, support in sc.expected_events:
        assert support[0] in found
        assert abs(found[support[0]].time - time) < 1e-6
        assert found[support[0]].fidelity > 1 - 1e-9


def test_scan_hypercube():
    sc = hypercube_pst_scenario(3)
    events = scan(sc.spec, np.linspace(0.0, math.pi, 120))
    hits = [ev for ev in events if ev.support == ((0, 3),)]
    assert len(hits) == 1
    assert abs(hits[0].time - math.pi / 2) < 1e-6
    assert hits[0].fidelity > 1 - 1e-9


def test_scan_zero_weights_trivial():
    spec = walk_spec(trivial_scheme_2(), 3, [0.0])
    events = scan(spec, np.linspace(0.0, math.pi, 50))
    assert all(ev.support == ((3, 0),) for ev in events)
    assert len(events) == 1


def test_scan_requires_sorted_grid():
    spec = walk_spec(trivial_scheme_2(), 2, [1.0])
    with pytest.raises(ValueError):
        scan(spec, [1.0, 0.5])


def test_zt_candidates_zero_weights():
    spec = walk_spec(trivial_scheme_2(), 2, [0.0])
    cands = zt_candidates(spec, np.linspace(0.0, math.pi, 30))
    assert [ev.support[0] for ev in cands] == [(0, 2), (1, 1)]
    assert all(ev.kind == "ZT-candidate" for ev in cands)


def test_zt_candidates_empty_for_live_walk():
    spec = walk_spec(trivial_scheme_2(), 2, [1.0])
    assert zt_candidates(spec, np.linspace(0.0, math.pi, 60)) == []


def test_ngon_scenario_expected_events_cover_extremes():
    n, N = 5, 2
    sc = ngon_mpst_scenario(n, N)
    arrivals = [support[0] for _, _, support in sc.expected_events]
    extremes = {tuple(N if j == i else 0 for j in range(n)) for i in range(n)}
    assert set(arrivals) == extremes
    assert len(arrivals) == len(set(arrivals))


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_ngon_scenario_events_hold(n):
    N = 2
    sc = ngon_mpst_scenario(n, N)
    for time, kind, support in sc.expected_events:
        prof = amplitudes(sc.spec, time)
        assert prof.class_probabilities[support[0]] > 1 - 1e-9


def test_ngon2_single_copy():
    sc = ngon_mpst_scenario(2, 1)
    time, kind, support = sc.expected_events[0]
    assert abs(time - math.pi) < 1e-12
    prof = amplitudes(sc.spec, time)
    assert prof.class_probabilities[(0, 1)] > 1 - 1e-12


def test_hypercube_scenario_fidelity():
    sc = hypercube_pst_scenario(4)
    prof = amplitudes(sc.spec, math.pi / 2)
    assert prof.class_probabilities[(0, 4)] > 1 - 1e-9


def test_hypercube_single_copy():
    sc = hypercube_pst_scenario(1)
    prof = amplitudes(sc.spec, math.pi / 2)
    assert prof.class_probabilities[(0, 1)] > 1 - 1e-12


def test_hypercube_conjugated_swap():
    sc = hypercube_pst_scenario(3)
    pm = projected_matrix(sc.spec)
    state = evolve_projected(pm, math.pi / 2, (2, 1))
    assert abs(abs(state[pm.order.index((1, 2))]) - 1.0) < 1e-9


def test_hypercube_conjugated_swap_all_starts():
    sc = hypercube_pst_scenario(5)
    pm = projected_matrix(sc.spec)
    for start in pm.order:
        state = evolve_projected(pm, math.pi / 2, start)
        swapped = (start[1], start[0])
        assert abs(abs(state[pm.order.index(swapped)]) - 1.0) < 1e-9


@pytest.mark.parametrize("k", [1, 2, 3])
def test_ow_scenario_support(k):
    d, N = 3, 4
    sc = ow_fr_scenario(d, N, k)
    time, kind, support = sc.expected_events[0]
    prof = amplitudes(sc.spec, time)
    leak = sum(q for beta, q in prof.class_probabilities.items() if beta not in support)
    assert leak < 1e-8
    assert all(all(beta[j] == 0 for j in range(k, d + 1)) for beta in support)


def test_ow_scenario_rejects_bad_k():
    with pytest.raises(ValueError):
        ow_fr_scenario(3, 4, 0)
    with pytest.raises(ValueError):
        ow_fr_scenario(3, 4, 4)


def test_ow_concentration_after_vanishing_top_factor():
    # trivial phases on the first two levels and a half turn on the last
    # leave only the second extreme class populated
    scheme = ordered_word_scheme(3)
    sol = solve_weights(scheme, math.pi / 2, [2 * math.pi, 2 * math.pi, math.pi])
    spec = walk_spec(scheme, 5, sol.weights)
    prof = amplitudes(spec, math.pi / 2)
    assert prof.class_probabilities[(0, 5, 0, 0)] > 1 - 1e-9
    p = site_factors(spec, math.pi / 2)
    assert abs(p[0]) < 1e-12 and abs(p[2]) < 1e-12 and abs(p[3]) < 1e-12


@pytest.mark.parametrize("d", [2, 3, 4])
def test_cascade_property(d):
    scheme = ordered_word_scheme(d)
    for k in range(1, d + 1):
        sc = ow_fr_scenario(d, 2, k)
        grid = np.linspace(0.0, math.pi, 40)
        assert cascade_residual(sc.spec, grid) == 0.0


def test_cascade_detects_violations_in_principle():
    # a synthetic profile with p_1 = 0 but p_2 != 0 cannot come from the
    # ordered-word cosine matrix; check the residual reports it if forced
    scheme = ordered_word_scheme(2)
    spec = walk_spec(scheme, 1, [0.5, 0.25])
    grid = np.linspace(0.0, 2 * math.pi, 60)
    assert cascade_residual(spec, grid) == 0.0


def test_unoriented_walk_has_two_destinations_only():
    # fixed start, unoriented base: destinations of perfect events never
    # exceed the start class and its antipode
    N = 3
    spec = walk_spec(trivial_scheme_2(), N, [1.0])
    destinations = set()
    for t in np.linspace(0.0, math.pi, 2001):
        prof = amplitudes(spec, t)
        for beta, q in prof.class_probabilities.items():
            if q > 1 - 1e-8:
                destinations.add(beta)
    assert destinations <= {(N, 0), (0, N)}


def test_scenario_specs_are_hermitian():
    for sc in (ngon_mpst_scenario(5, 2), hypercube_pst_scenario(3), ow_fr_scenario(3, 4, 2)):
        assert sc.spec.is_hermitian


def test_ow_generic_weights_spread():
    scheme = ordered_word_scheme(3)
    spec = walk_spec(scheme, 2, [0.31, -0.17, 0.53])
    ev = classify(amplitudes(spec, 0.83))
    assert ev.kind in ("none", "FR")
    assert len(ev.support) > 1
