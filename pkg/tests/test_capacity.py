import math

import numpy as np
import pytest

from berglab.capacity import (
    CapacityEstimate,
    WeightedPointSet,
    cantor_capacity_bound,
    capacity_via_transfinite,
    circle_nodes,
    energy,
    equilibrium_measure,
    measure_dilatation_check,
    nth_diameter,
    potential,
    regularized_energy,
    scaling_law_check,
    segment_nodes,
    simplex_project,
    subadditivity_check,
)
from berglab.domains import build_cantor, build_cantor_table
from berglab.errors import GridTooSmallError, PreconditionViolatedError


# ---------------------------------------------------------------------------
# potential / energy
# ---------------------------------------------------------------------------


def test_potential_circle_center_and_exterior():
    mu = WeightedPointSet.uniform(circle_nodes(0, 0.5, 256))
    assert potential(mu, 0j) == pytest.approx(math.log(0.5), abs=1e-6)
    assert potential(mu, 2.0 + 0j) == pytest.approx(math.log(2.0), abs=1e-4)


def test_potential_point_mass_singularity():
    mu = WeightedPointSet(np.array([1.0 + 0j]), np.array([1.0]))
    assert potential(mu, 1.0 + 0j) == -math.inf


def test_energy_two_symmetric_atoms():
    mu = WeightedPointSet.uniform(np.array([-0.5 + 0j, 0.5 + 0j]))
    assert energy(mu) == pytest.approx(0.0, abs=1e-15)


def test_energy_discrete_sum_oracle_unit_circle():
    # diagonal exclusion makes the raw value log(n)/n exactly
    for n in (256, 1024):
        mu = WeightedPointSet.uniform(circle_nodes(0, 1.0, n))
        assert energy(mu) == pytest.approx(math.log(n) / n, abs=1e-10)
    assert abs(energy(WeightedPointSet.uniform(circle_nodes(0, 1.0, 1024)))) <= 1e-2


def test_energy_radius_half_circle():
    n = 1024
    mu = WeightedPointSet.uniform(circle_nodes(0, 0.5, n))
    expected = (1 - 1 / n) * math.log(0.5) + math.log(n) / n
    assert energy(mu) == pytest.approx(expected, abs=1e-10)
    assert energy(mu) == pytest.approx(math.log(0.5), abs=1e-2)


def test_regularized_energy_near_exact_on_circles():
    # chord/arc defect is O(1/n^2); at n = 128 that is ~1e-4 absolute
    for r in (0.25, 0.5, 1.0):
        mu = WeightedPointSet.uniform(circle_nodes(0, r, 128))
        assert regularized_energy(mu) == pytest.approx(math.log(r), abs=1e-4)


# ---------------------------------------------------------------------------
# n-th diameter
# ---------------------------------------------------------------------------


def test_nth_diameter_antipodal_pair():
    grid = circle_nodes(0, 1.0, 256)
    d, cfg = nth_diameter(grid, 2)
    assert d == pytest.approx(2.0, rel=1e-12)
    assert abs(cfg.nodes[0] + cfg.nodes[1]) < 1e-12


def test_nth_diameter_equilateral_triangle():
    # brute-force oracle over angular triples on a shared grid
    m = 120
    theta = 2 * math.pi * np.arange(m) / m
    grid = np.exp(1j * theta)
    best = 0.0
    for i in range(m):
        for j in range(i + 1, m):
            d_ij = abs(grid[i] - grid[j])
            d_ik = np.abs(grid[i] - grid[j + 1 :])
            d_jk = np.abs(grid[j] - grid[j + 1 :])
            prod = (d_ij * d_ik * d_jk) ** (2.0 / 6.0)
            if prod.size:
                best = max(best, float(prod.max()))
    assert best == pytest.approx(math.sqrt(3.0), rel=1e-12)  # grid contains equilateral
    d, _ = nth_diameter(grid, 3)
    assert d == pytest.approx(best, rel=1e-9)


@pytest.mark.parametrize("n", range(2, 17))
def test_nth_diameter_circle_closed_form(n):
    grid = circle_nodes(0, 1.0, 16 * n)  # grid contains the optimal roots of unity
    d, _ = nth_diameter(grid, n)
    assert d == pytest.approx(n ** (1.0 / (n - 1)), rel=1e-3)


def test_nth_diameter_dilatation_exact():
    grid = circle_nodes(0, 1.0, 192)
    d1, _ = nth_diameter(grid, 6)
    dr, _ = nth_diameter(0.37 * grid, 6)
    assert dr == pytest.approx(0.37 * d1, rel=1e-9)


def test_nth_diameter_grid_guard():
    with pytest.raises(GridTooSmallError):
        nth_diameter(circle_nodes(0, 1.0, 16), 8)


# ---------------------------------------------------------------------------
# transfinite capacity
# ---------------------------------------------------------------------------


def test_transfinite_disk_quarter():
    est = capacity_via_transfinite(circle_nodes(0, 0.25, 512), (8, 16, 32, 64))
    assert 0.25 - 1e-9 <= est.value <= 0.27
    deltas = np.array(est.diagnostics)
    assert np.all(np.diff(deltas) <= 1e-9)  # raw diameters monotone non-increasing
    assert est.value <= deltas.min() + 1e-12  # estimate below every raw diameter


def test_transfinite_segment():
    grid = segment_nodes(-1.0, 1.0, 1024)
    est = capacity_via_transfinite(grid, (8, 16, 32, 64))
    assert est.value == pytest.approx(0.5, rel=0.05)


def test_transfinite_monotone_under_inclusion():
    small = circle_nodes(0, 0.3, 256)
    big = np.concatenate([small, circle_nodes(0, 0.9, 256)])
    est_small = capacity_via_transfinite(small, (8, 16, 32))
    est_big = capacity_via_transfinite(big, (8, 16, 32))
    assert est_small.value <= est_big.value * 1.02


def test_two_disjoint_disks_dominate_single():
    r = 0.1
    grid = np.concatenate([circle_nodes(-0.5, r, 128), circle_nodes(0.5, r, 128)])
    est = capacity_via_transfinite(grid, (8, 16, 32, 64))
    assert est.value >= r * 0.98


# ---------------------------------------------------------------------------
# equilibrium measures
# ---------------------------------------------------------------------------


def test_equilibrium_circle_128():
    sol = equilibrium_measure(circle_nodes(0, 0.5, 128))
    w = sol.measure.weights
    assert np.all(np.abs(w - 1.0 / 128) <= 0.02 / 128)
    assert sol.capacity == pytest.approx(0.5, rel=0.02)
    assert sol.kkt_residual <= 1e-3 * abs(sol.raw_energy) + 1e-6


def test_equilibrium_two_nodes():
    sol = equilibrium_measure(np.array([0j, 1.0 + 0j]))
    assert sol.measure.weights.tolist() == pytest.approx([0.5, 0.5], abs=1e-12)


def test_equilibrium_segment_arcsine_shape():
    sol = equilibrium_measure(segment_nodes(-1.0, 1.0, 128))
    w = sol.measure.weights
    assert w[0] > w[64]  # mass concentrates toward the endpoints
    assert w[-1] > w[64]
    assert sol.capacity == pytest.approx(0.5, rel=0.05)


def test_equilibrium_vs_transfinite_consistency():
    # same underlying sets; the transfinite route gets the denser grid its
    # n = 128 configurations require, the energy route solves on 128 nodes
    sets = {
        "circle": (circle_nodes(0, 0.5, 512), circle_nodes(0, 0.5, 128)),
        "segment": (segment_nodes(-1.0, 1.0, 512), segment_nodes(-1.0, 1.0, 128)),
        "two_disks": (
            np.concatenate([circle_nodes(-0.5, 0.1, 256), circle_nodes(0.5, 0.1, 256)]),
            np.concatenate([circle_nodes(-0.5, 0.1, 64), circle_nodes(0.5, 0.1, 64)]),
        ),
    }
    for name, (grid, nodes) in sets.items():
        cap_t = capacity_via_transfinite(grid, (16, 32, 64, 128)).value
        cap_e = equilibrium_measure(nodes).capacity
        assert cap_e == pytest.approx(cap_t, rel=0.05), name


def test_equilibrium_rejects_singleton():
    with pytest.raises(PreconditionViolatedError):
        equilibrium_measure(np.array([1.0 + 0j]))


def test_simplex_projection_basic():
    v = np.array([0.2, 0.9, -0.3])
    p = simplex_project(v)
    assert p.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(p >= 0)
    q = simplex_project(v + 3.7)  # invariant to constant shifts
    assert np.allclose(p, q, atol=1e-12)


# ---------------------------------------------------------------------------
# Cantor bound
# ---------------------------------------------------------------------------


def test_cantor_bound_hand_value():
    # 0.5 * 0.2 * 0.02**0.5 * (2e-4)**0.25 * (2e-8)**0.125, evaluated afresh
    hand = 0.5 * 0.2 * math.sqrt(0.02) * (2e-4) ** 0.25 * (2e-8) ** 0.125
    c = build_cantor(0.1, 2.0, J=4)
    assert cantor_capacity_bound(c) == pytest.approx(hand, rel=1e-12)
    assert hand == pytest.approx(1.8340e-4, rel=2e-3)


def test_cantor_bound_polar_limit():
    c = build_cantor(0.1, 2.0, J=8)
    vals = [cantor_capacity_bound(c, J=j) for j in range(1, 9)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-4 * vals[0]


def test_cantor_transfinite_estimator():
    from berglab.capacity import cantor_transfinite_estimate

    # J = 1 is two intervals of length 1e-2 at gap ~0.08; sanity against a
    # raw-grid search at matched n (positions there still resolve in doubles)
    c1 = build_cantor(0.1, 2.0, J=1)
    est = cantor_transfinite_estimate(c1, (64,))
    lefts, lj = c1.intervals()
    grid = np.concatenate([np.linspace(lo, lo + lj, 256) for lo in lefts]).astype(complex)
    raw = capacity_via_transfinite(grid, (8, 16, 32, 64))
    assert est.value == pytest.approx(raw.value, rel=0.03)
    # deeper sets only lose capacity
    vals = [cantor_transfinite_estimate(build_cantor(0.1, 2.0, J=j), (64,)).value for j in (1, 2, 3, 4)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_cantor_bound_quarter_ratio_limit():
    lengths = [0.1 * 0.25**j for j in range(12)]
    c = build_cantor_table(lengths)
    vals = [cantor_capacity_bound(c, J=j) for j in range(1, 12)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    # closed form: (1/8) * 2 ** (2 ** (1 - J)) decreasing to 1/8
    assert vals[-1] == pytest.approx(0.125 * 2 ** (2.0 ** (1 - 11)), rel=1e-12)
    assert vals[-1] > 0.125


# ---------------------------------------------------------------------------
# capacity laws
# ---------------------------------------------------------------------------


def test_dilatation_law():
    rep = scaling_law_check(circle_nodes(0, 1.0, 512), t=0.3)
    assert rep["dilatation_ok"]
    assert rep["cap_tE"] == pytest.approx(0.3 * rep["cap_E"], rel=1e-9)


def test_holder_law_square_map():
    rep = scaling_law_check(
        circle_nodes(0, 1.0, 512), holder=(2.0, 1.0, lambda z: z**2)
    )
    assert rep["holder_ok"]


def test_measure_dilatation_node_for_node():
    rep = measure_dilatation_check(circle_nodes(0, 0.5, 64), t=0.3)
    assert rep["max_weight_deviation"] <= 1e-9


def test_subadditivity_two_disks():
    parts = [circle_nodes(-0.5, 0.1, 96), circle_nodes(0.5, 0.1, 96)]
    rep = subadditivity_check(parts, d=4.0)
    assert rep["holds"]
    assert rep["lhs"] < rep["rhs"]


def test_subadditivity_single_part_equality():
    part = circle_nodes(0, 0.2, 128)
    rep = subadditivity_check([part], d=4.0)
    assert rep["lhs"] == pytest.approx(rep["rhs"], rel=1e-12)


def test_subadditivity_precondition():
    with pytest.raises(PreconditionViolatedError):
        subadditivity_check([circle_nodes(0, 0.2, 128)], d=0.05)


def test_capacity_estimate_json():
    est = CapacityEstimate(0.5, "transfinite", 64, (0.6, 0.55, 0.5))
    d = est.to_json_dict()
    assert d["value"] == 0.5 and d["method"] == "transfinite" and len(d["diagnostics"]) == 3


def test_subadditivity_zalcman_hole_rims():
    from berglab.domains import ScaleFunction, build_zalcman

    dom = build_zalcman(ScaleFunction.h1(2.0), 0.1, K=3)
    parts = [circle_nodes(complex(c), float(r), 64) for c, r in zip(dom.centers, dom.radii)]
    rep = subadditivity_check(parts, d=4 * dom.x1)
    assert rep["holds"]


def test_holder_identity_map_tight():
    rep = scaling_law_check(circle_nodes(0, 0.5, 512), holder=(1.0, 1.0, lambda z: z))
    assert rep["holder_ok"]
    assert rep["cap_TE"] == pytest.approx(rep["cap_E"], rel=1e-12)
