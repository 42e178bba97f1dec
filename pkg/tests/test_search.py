"""Doubling strategy: phases, simulation, envelope, curve extraction."""

import math

import numpy as np
import pytest

from sphere_search.geometry import (
    Hyperplane,
    PolylineCurve,
    sample_unit_direction,
    sample_unit_directions,
    sees_any,
)
from sphere_search.search import (
    SearchTranscript,
    build_doubling_strategy,
    check_envelope,
    extract_inspection_curve,
    phase_length,
    phase_path,
    simulate_search,
    strategy_path,
)
from sphere_search.tour import build_inspection_tour

from oracles import first_hit_oracle, random_rotation

SQ2 = math.sqrt(2.0)


def d2_strategy():
    return build_doubling_strategy(build_inspection_tour(2))


# ---------------------------------------------------------------------------
# construction and phases
# ---------------------------------------------------------------------------

def test_build_requires_closed_base():
    open_curve = PolylineCurve(np.array([[1.0, 0.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        build_doubling_strategy(open_curve)


def test_build_rejects_anchor_farther_than_length():
    # a tiny closed triangle far from the origin cannot inspect the sphere
    tri = np.array([[100.0, 0.0], [100.1, 0.0], [100.0, 0.1]])
    with pytest.raises(ValueError):
        build_doubling_strategy(PolylineCurve(tri, closed=True))


def test_anchor_is_first_vertex_with_small_norm():
    st = d2_strategy()
    assert np.allclose(st.anchor, [SQ2, 0.0])
    assert np.linalg.norm(st.anchor) <= st.base_length


def test_phase_zero_path_unrolled_d2():
    path = phase_path(d2_strategy(), 0)
    want = np.array([
        [0.0, 0.0], [SQ2, 0.0], [0.0, SQ2], [-SQ2, 0.0], [0.0, -SQ2],
        [SQ2, 0.0], [0.0, 0.0],
    ])
    assert np.allclose(path.vertices, want)
    assert not path.closed


def test_phase_lengths_within_triple_bound():
    for d in range(2, 9):
        st = build_doubling_strategy(build_inspection_tour(d))
        ell = st.base_length
        for i in range(21):
            measured = phase_path(st, i).length if i <= 12 else phase_length(st, i)
            assert measured <= 3.0 * 2.0 ** i * ell + 1e-9
            assert phase_length(st, i) == pytest.approx(
                2.0 ** i * (2.0 * math.sqrt(d) + ell), rel=1e-12)


def test_phase_path_matches_phase_length():
    st = build_doubling_strategy(build_inspection_tour(3))
    for i in range(6):
        assert phase_path(st, i).length == pytest.approx(phase_length(st, i),
                                                         rel=1e-12)


# ---------------------------------------------------------------------------
# simulation
# ---------------------------------------------------------------------------

def test_simulate_axis_plane_hits_on_opening_segment():
    t = simulate_search(d2_strategy(), Hyperplane(np.array([1.0, 0.0]), 1.0))
    assert t.traversed_length == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(t.hit_point, [1.0, 0.0], atol=1e-12)
    assert t.phase == 0
    assert t.ratio == pytest.approx(1.0, abs=1e-12)
    # cross-check the phase-0 walk with the independent bisection oracle
    path = phase_path(d2_strategy(), 0)
    arc, _ = first_hit_oracle(path, np.array([1.0, 0.0]), 1.0)
    assert arc == pytest.approx(1.0, abs=1e-9)


def test_simulate_hits_second_tour_vertex():
    t = simulate_search(d2_strategy(), Hyperplane(np.array([0.0, 1.0]), SQ2))
    assert t.traversed_length == pytest.approx(SQ2 + 2.0, abs=1e-12)
    assert np.allclose(t.hit_point, [0.0, SQ2], atol=1e-12)
    path = phase_path(d2_strategy(), 0)
    arc, _ = first_hit_oracle(path, np.array([0.0, 1.0]), SQ2)
    assert arc == pytest.approx(SQ2 + 2.0, abs=1e-9)


def test_simulate_zero_offset_is_immediate():
    t = simulate_search(d2_strategy(), Hyperplane(np.array([0.0, 1.0]), 0.0))
    assert t.traversed_length == 0.0
    assert t.ratio == 0.0
    assert t.phase == 0


def test_simulate_phase_no_later_than_doubling_reach():
    rng = np.random.default_rng(42)
    st = d2_strategy()
    for _ in range(500):
        rho = float(np.exp(rng.uniform(np.log(0.1), np.log(100.0))))
        u = sample_unit_direction(rng, 2)
        t = simulate_search(st, Hyperplane(u, rho))
        latest = max(0, math.ceil(math.log2(rho)))
        assert t.phase <= latest
        assert t.traversed_length >= rho - 1e-9
        assert t.traversed_length <= sum(phase_length(st, i)
                                         for i in range(latest + 1)) + 1e-9


def test_simulate_never_fails_on_random_targets():
    rng = np.random.default_rng(4242)
    for d in range(2, 7):
        st = build_doubling_strategy(build_inspection_tour(d))
        for _ in range(400):
            u = sample_unit_direction(rng, d)
            rho = float(np.exp(rng.uniform(np.log(1e-3), np.log(1e3))))
            simulate_search(st, Hyperplane(u, rho))  # must not raise


def test_simulate_envelope_on_random_sweep():
    rng = np.random.default_rng(1)
    st = d2_strategy()
    ell = st.base_length
    transcripts = []
    for _ in range(2000):
        u = sample_unit_direction(rng, 2)
        rho = float(np.exp(rng.uniform(np.log(0.1), np.log(100.0))))
        transcripts.append(simulate_search(st, Hyperplane(u, rho)))
    assert check_envelope(transcripts, ell)


def test_simulate_errors_when_base_does_not_inspect():
    # a flat closed curve inside a 2-plane of R^3 misses most hyperplanes
    flat = PolylineCurve(
        np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0],
                  [-1.0, 0.0, 0.0], [0.0, -1.0, 0.0]]), closed=True)
    st = build_doubling_strategy(flat, max_phases=8)
    with pytest.raises(RuntimeError):
        simulate_search(st, Hyperplane(np.array([0.0, 0.0, 1.0]), 1.0))


def test_scaling_covariance():
    base = build_inspection_tour(3)
    rng = np.random.default_rng(9)
    for s in (0.5, 2.0, 10.0):
        st1 = build_doubling_strategy(base)
        st2 = build_doubling_strategy(base.scaled(s))
        for _ in range(50):
            u = sample_unit_direction(rng, 3)
            rho = float(rng.uniform(0.2, 20.0))
            t1 = simulate_search(st1, Hyperplane(u, rho))
            t2 = simulate_search(st2, Hyperplane(u, s * rho))
            assert t2.traversed_length == pytest.approx(s * t1.traversed_length,
                                                        rel=1e-9)


def test_rotation_equivariance():
    base = build_inspection_tour(3)
    rng = np.random.default_rng(10)
    for _ in range(50):
        Q = random_rotation(rng, 3)
        rot = PolylineCurve(base.vertices @ Q.T, closed=True)
        u = sample_unit_direction(rng, 3)
        rho = float(rng.uniform(0.2, 20.0))
        un = Q @ u
        un /= np.linalg.norm(un)
        t1 = simulate_search(build_doubling_strategy(base), Hyperplane(u, rho))
        t2 = simulate_search(build_doubling_strategy(rot), Hyperplane(un, rho))
        assert t2.traversed_length == pytest.approx(t1.traversed_length, rel=1e-9)


# ---------------------------------------------------------------------------
# envelope checking
# ---------------------------------------------------------------------------

def test_envelope_slack_on_unit_target():
    t = simulate_search(d2_strategy(), Hyperplane(np.array([1.0, 0.0]), 1.0))
    assert t.traversed_length <= 12.0 * 8.0 * 1.0 + 3.0 * 8.0


def test_envelope_rejects_boundary_violation():
    ell = 8.0
    rho = 1.0
    too_long = 12.0 * ell * rho + 3.0 * ell + 1.0
    fake = SearchTranscript(
        target=Hyperplane(np.array([1.0, 0.0]), rho),
        traversed_length=too_long,
        hit_point=np.array([1.0, 0.0]),
        phase=3,
        ratio=too_long / rho,
    )
    assert not check_envelope([fake], ell)
    exact = SearchTranscript(
        target=Hyperplane(np.array([1.0, 0.0]), rho),
        traversed_length=12.0 * ell * rho + 3.0 * ell,
        hit_point=np.array([1.0, 0.0]),
        phase=3,
        ratio=12.0 * ell + 3.0 * ell,
    )
    assert check_envelope([exact], ell)


def test_transcript_validates_hit_point():
    with pytest.raises(ValueError):
        SearchTranscript(
            target=Hyperplane(np.array([1.0, 0.0]), 1.0),
            traversed_length=5.0,
            hit_point=np.array([2.0, 0.0]),  # not on the plane
            phase=0,
            ratio=5.0,
        )


# ---------------------------------------------------------------------------
# extraction of an inspecting curve from a competitive path
# ---------------------------------------------------------------------------

def extraction_setup(d, eps_frac=0.1, n_dirs=512, seed=5):
    base = build_inspection_tour(d)
    st = build_doubling_strategy(base)
    ell = base.length
    eps = ell * eps_frac
    alpha = 3.0 * ell
    c = 12.0 * ell
    radius = alpha / eps
    phases = math.ceil(math.log2(radius))
    path = strategy_path(st, phases)
    dirs = sample_unit_directions(np.random.default_rng(seed), d, n_dirs)
    return path, c, alpha, eps, dirs, ell


def test_extraction_round_trip():
    for d in (2, 3):
        path, c, alpha, eps, dirs, ell = extraction_setup(d)
        curve = extract_inspection_curve(path, c, alpha, eps, dirs)
        assert curve.length <= c + eps + 0.01 * ell
        seen = sees_any(dirs, curve.subdivided_points(6))
        assert seen.all()


def test_extraction_sees_directions_from_raw_vertices():
    path, c, alpha, eps, dirs, _ = extraction_setup(2)
    curve = extract_inspection_curve(path, c, alpha, eps, dirs)
    assert sees_any(dirs, curve.vertices).all()


def test_extraction_prefix_grows_with_radius():
    # smaller eps means a larger target radius; the unscaled prefix arc
    # (extracted length rescaled back by alpha/eps) can only grow.
    # Build the path once, long enough for the smallest eps probed.
    path, c, alpha, _, dirs, ell = extraction_setup(2, eps_frac=0.05)
    prev_arc = 0.0
    for eps_frac in (0.2, 0.1, 0.05):
        eps = ell * eps_frac
        curve = extract_inspection_curve(path, c, alpha, eps, dirs)
        arc = curve.length * alpha / eps
        assert arc >= prev_arc - 1e-9
        prev_arc = arc


def test_extraction_needs_competitive_path():
    st = d2_strategy()
    short = strategy_path(st, 0)  # phase 0 only cannot reach radius 30
    dirs = sample_unit_directions(np.random.default_rng(6), 2, 16)
    with pytest.raises(ValueError):
        extract_inspection_curve(short, 96.0, 24.0, 0.8, dirs)


def test_extraction_requires_origin_start():
    path = PolylineCurve(np.array([[1.0, 0.0], [5.0, 0.0]]))
    dirs = np.array([[1.0, 0.0]])
    with pytest.raises(ValueError):
        extract_inspection_curve(path, 1.0, 1.0, 1.0, dirs)
