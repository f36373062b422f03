import math

import numpy as np
import pytest

from berglab.domains import (
    CircleDomain,
    IntervalUnion,
    ScaleFunction,
    build_cantor,
    build_cantor_table,
    build_zalcman,
    domain_from_json,
    scale_inverse_check,
)
from berglab.errors import (
    BisectionFailureError,
    NonDisjointError,
    NotBoundaryPointError,
    RuleViolationError,
    ScaleUnderflowError,
)


def dense_boundary_samples(domain, per_circle=4096):
    """Brute-force boundary point cloud (test oracle)."""
    pts = []
    theta = np.linspace(0.0, 2.0 * math.pi, per_circle, endpoint=False)
    ring = np.exp(1j * theta)
    for comp in domain.boundary_components():
        if comp[0] == "point":
            pts.append(np.array([comp[1]]))
        else:
            _, c, rho = comp
            pts.append(c + rho * ring)
    return np.concatenate(pts)


# ---------------------------------------------------------------------------
# scale functions
# ---------------------------------------------------------------------------


def test_h1_h2_values():
    h1 = ScaleFunction.h1(2.0)
    assert h1.value(0.1) == pytest.approx(0.01, rel=1e-14)
    h2 = ScaleFunction.h2(1.0)
    r = math.exp(-10.0)
    assert h2.value(r) == pytest.approx(r / 10.0, rel=1e-14)


def test_h_less_than_r_and_increasing():
    for h in (ScaleFunction.h1(1.2), ScaleFunction.h2(2.0)):
        rs = np.exp(np.linspace(math.log(1e-12), math.log(h.epsilon0 * 0.999), 200))
        hs = np.exp(h.log_value(np.log(rs)))
        assert np.all(hs < rs)
        assert np.all(np.diff(hs) > 0)


def test_table_family_interpolates_and_validates():
    rs = np.exp(np.linspace(-20, -1, 40))
    hs = rs**1.5
    h = ScaleFunction.from_table(rs, hs)
    assert h.value(rs[7]) == pytest.approx(hs[7], rel=1e-12)
    with pytest.raises(ValueError):
        ScaleFunction.from_table([0.1, 0.2], [0.15, 0.25])  # h >= r


def test_scale_inverse_exact_roundtrip():
    h = ScaleFunction.h2(1.0)
    t = math.exp(-10.0) / 10.0
    g, ok = scale_inverse_check(h, t)
    assert g == pytest.approx(math.exp(-10.0), rel=1e-10)
    # e^-10 <= (e^-10/10) * (10 + log 10)
    assert ok


@pytest.mark.parametrize("beta,t", [(1.0, 1e-6), (2.0, 1e-8)])
def test_scale_inverse_growth_bound(beta, t):
    h = ScaleFunction.h2(beta)
    g, ok = scale_inverse_check(h, t)
    assert abs(h.value(g) - t) <= 1e-12 * t
    assert ok


def test_inverse_bracket_failure():
    h = ScaleFunction.h2(1.0)
    with pytest.raises(BisectionFailureError):
        h.inverse(0.9)  # above h(epsilon0)


# ---------------------------------------------------------------------------
# builder
# ---------------------------------------------------------------------------


def test_build_recursion_h1_direct():
    dom = build_zalcman(ScaleFunction.h1(2.0), 0.1, K=2)
    assert dom.xs[1] == pytest.approx(0.01, rel=1e-14)  # x2 = r1
    assert dom.rs[0] == pytest.approx(0.01, rel=1e-14)
    assert dom.xs[2] == pytest.approx(1e-4, rel=1e-13)  # x3 = r2
    assert dom.rs[1] == pytest.approx(1e-4, rel=1e-13)


def test_build_recursion_h2_direct():
    dom = build_zalcman(ScaleFunction.h2(1.0), math.exp(-10.0), K=1)
    assert dom.xs[1] == pytest.approx(math.exp(-10.0) / 10.0, rel=1e-13)


def test_build_deep_log_domain():
    dom = build_zalcman(ScaleFunction.h1(1.2), 0.01, K=20)
    log10_x21 = dom.logx[20] / math.log(10.0)
    assert log10_x21 == pytest.approx(-2.0 * 1.2**20, rel=1e-12)
    assert log10_x21 == pytest.approx(-76.7, abs=0.1)


def test_log_recursion_matches_direct_arithmetic():
    h = ScaleFunction.h2(1.5)
    dom = build_zalcman(h, 1e-3, K=8)
    x = 1e-3
    for k in range(1, 10):
        assert math.exp(dom.logx[k - 1]) == pytest.approx(x, rel=1e-12)
        x = h.value(x)


def test_build_rejects_bad_configs():
    with pytest.raises(NonDisjointError):
        build_zalcman(ScaleFunction.h1(1.05), 0.6, K=2)
    with pytest.raises(ScaleUnderflowError):
        build_zalcman(ScaleFunction.h1(1.2), 0.01, K=60)
    with pytest.raises(ValueError):
        build_zalcman(ScaleFunction.h1(2.0), 0.1, K=0)


# ---------------------------------------------------------------------------
# distance spectra
# ---------------------------------------------------------------------------


def test_spectrum_single_hole_from_origin():
    dom = CircleDomain.build(disks=[(0.5 + 0j, 0.1)], include_origin=True)
    spec = dom.distance_spectrum(0j)
    assert spec.contains(0.0)
    assert spec.intersects(0.4, 0.6)
    assert spec.contains(1.0)
    assert not spec.intersects(0.05, 0.39)
    assert not spec.intersects(0.61, 0.99)


def test_spectrum_from_disk_rim():
    dom = CircleDomain.build(disks=[(0.1 + 0j, 0.01)], include_origin=True)
    a = 0.11 + 0j
    spec = dom.distance_spectrum(a)
    assert spec.intersects(0.0, 0.02)  # own circle
    assert spec.contains(0.89) and spec.contains(1.11)  # unit circle band


def test_spectrum_zalcman_contains_every_scale():
    dom = build_zalcman(ScaleFunction.h1(2.0), 0.1, K=4)
    spec = dom.distance_spectrum(0j)
    for k in range(dom.K):
        lo, hi = dom.xs[k] - dom.rs[k], dom.xs[k] + dom.rs[k]
        assert spec.contains(lo) and spec.contains(hi)
    # oracle: min/max |z| over dense samples of each removed circle
    theta = np.linspace(0, 2 * math.pi, 20000, endpoint=False)
    for k in range(dom.K):
        ring = dom.xs[k] + dom.rs[k] * np.exp(1j * theta)
        assert np.abs(ring).min() == pytest.approx(dom.xs[k] - dom.rs[k], abs=1e-9)
        assert np.abs(ring).max() == pytest.approx(dom.xs[k] + dom.rs[k], abs=1e-9)


def test_spectrum_requires_boundary_point():
    dom = CircleDomain.build(include_origin=True)
    with pytest.raises(NotBoundaryPointError):
        dom.distance_spectrum(0.5 + 0j)


def test_spectrum_min_zero_on_boundary():
    dom = build_zalcman(ScaleFunction.h1(1.5), 0.01, K=5)
    for a in (0j, complex(dom.xs[2] + dom.rs[2]), 1.0 + 0j):
        assert dom.distance_spectrum(a).min() == pytest.approx(0.0, abs=1e-15)


# ---------------------------------------------------------------------------
# membership and delta
# ---------------------------------------------------------------------------


def test_delta_unit_disk_center():
    dom = CircleDomain.build()
    inside, delta = dom.delta_and_membership(0.5 + 0j)
    assert inside and delta == pytest.approx(0.5, rel=1e-15)


def test_delta_zalcman_origin_term():
    dom = build_zalcman(ScaleFunction.h1(2.0), 0.1, K=3)
    inside, delta = dom.delta_and_membership(-0.05 + 0j)
    assert inside
    assert delta == pytest.approx(0.05, rel=1e-14)  # origin is closest


def test_delta_matches_dense_sampling():
    dom = build_zalcman(ScaleFunction.h1(1.5), 0.05, K=3)
    cloud = dense_boundary_samples(dom, per_circle=200000)
    rng = np.random.default_rng(7)
    zs = rng.uniform(-1, 1, 40) + 1j * rng.uniform(-1, 1, 40)
    for z in zs:
        _, delta = dom.delta_and_membership(z)
        brute = float(np.min(np.abs(cloud - z)))
        assert delta == pytest.approx(brute, abs=1e-6)


def test_variant_sandwich_inside_superset():
    h = ScaleFunction.h1(1.5)
    sup = build_zalcman(h, 0.01, K=6, variant="superset")
    sand = build_zalcman(h, 0.01, K=6, variant="sandwich")
    deep = build_zalcman(h, 0.01, K=10, variant="superset")  # proxy for the full domain
    rng = np.random.default_rng(11)
    zs = rng.uniform(-1, 1, 4000) + 1j * rng.uniform(-1, 1, 4000)
    for z in zs:
        in_sand = sand.contains(z)
        in_deep = deep.contains(z)
        in_sup = sup.contains(z)
        assert (not in_sand) or in_deep  # sandwich subset of truncation-10 proxy
        assert (not in_deep) or in_sup  # proxy subset of superset


# ---------------------------------------------------------------------------
# Cantor sets
# ---------------------------------------------------------------------------


def test_cantor_level_one_exact():
    c = build_cantor(0.1, 2.0, J=1)
    lefts, l1 = c.intervals()
    assert l1 == pytest.approx(0.01, rel=1e-15)
    assert lefts.tolist() == pytest.approx([0.0, 0.09], abs=1e-15)


def test_cantor_level_two_matches_hand_values():
    c = build_cantor(0.1, 2.0, J=2)
    lefts, l2 = c.intervals()
    assert l2 == pytest.approx(1e-4, rel=1e-13)
    expected = [0.0, 0.0099, 0.09, 0.0999]
    assert lefts.tolist() == pytest.approx(expected, abs=1e-12)


def test_cantor_total_length_shrinks():
    c = build_cantor(0.1, 2.0, J=4)
    assert c.total_length() == pytest.approx(16 * 1e-16, rel=1e-10)
    lengths = [c.total_length(j) for j in range(5)]
    assert all(a > b for a, b in zip(lengths, lengths[1:]))


def test_cantor_nesting_invariant():
    c = build_cantor(0.15, 1.7, J=5)
    for j in range(1, 6):
        lefts_j, lj = c.intervals(j)
        lefts_p, lp = c.intervals(j - 1)
        for lo in lefts_j:
            assert np.any((lefts_p <= lo + 1e-15) & (lo + lj <= lefts_p + lp + 1e-15))


def test_cantor_rule_violation():
    with pytest.raises(RuleViolationError):
        build_cantor_table([0.1, 0.05])  # exactly half is not allowed
    with pytest.raises(ValueError):
        build_cantor(0.6, 2.0, J=2)


def test_cantor_distance_modes():
    c = build_cantor(0.1, 2.0, J=2)
    a = 0.0
    ends = c.distance_spectrum(a, mode="endpoints")
    ivs = c.distance_spectrum(a, mode="intervals")
    # endpoint distances all achievable within the interval spectrum
    for p in ends.points:
        assert ivs.contains(p, tol=1e-15)
    assert ends.contains(0.0099, tol=1e-15)  # left end of second interval


# ---------------------------------------------------------------------------
# interval unions and serialization
# ---------------------------------------------------------------------------


def test_interval_union_merge_and_queries():
    u = IntervalUnion.build([(0.5, 1.0), (0.9, 1.4), (3.0, 3.0)], points=[2.0, 1.2])
    assert u.intervals.shape == (2, 2)
    assert u.contains(1.2) and u.contains(2.0)
    assert u.sup_at_most(2.5) == pytest.approx(2.0)
    assert u.inf_at_least(1.5) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        IntervalUnion.build([(-0.1, 0.2)])


def test_domain_json_roundtrip():
    dom = domain_from_json({"type": "zalcman", "family": "h1", "alpha": 1.2, "x1": 1e-2, "K": 5})
    assert dom.K == 5 and dom.variant == "superset"
    again = domain_from_json(dom.to_json_dict())
    assert np.allclose(again.logx, dom.logx)
    cant = domain_from_json({"type": "cantor", "l0": 0.1, "alpha": 2.0, "J": 3})
    assert cant.J == 3
    disk = domain_from_json({"type": "disk"})
    assert disk.contains(0.5 + 0j)
    ann = domain_from_json({"type": "annulus", "r0": 0.5})
    assert not ann.contains(0.2 + 0j) and ann.contains(0.7 + 0j)
