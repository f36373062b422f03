"""Boundary thickness conditions and their capacity counterparts.

Two conditions are checked on a domain with boundary scale function h:

* the annulus condition: every annulus {c*h(r) <= |z-a| <= r} around a
  boundary point a meets the boundary.  On circle-hole domains this reduces
  to interval arithmetic on the exact distance spectrum, so satisfied /
  failed flags carry no sampling error.
* the capacity density condition: Cap(closed disk(a, r) minus the domain)
  >= C * h(r).  Probed numerically through boundary-arc discretizations.

The bridge between them is a branching chain of boundary points (2^k points
whose pairwise distances are controlled scale by scale), which produces a
transfinite-diameter certificate and a capacity floor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .capacity import capacity_via_transfinite, clamp_schedule
from .domains import CantorSet, CircleDomain, ScaleFunction, ZalcmanDomain
from .errors import AnnulusEmptyError, EmptySetError, NotBoundaryPointError

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# annulus condition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AnnulusTestReport:
    a: complex
    r: float
    c: float
    satisfied: bool
    c_star: float
    witness: Optional[complex] = None
    witness_distance: float = math.nan


def reachable_sup(domain: CircleDomain, a: complex, r: float) -> float:
    """Largest achievable boundary distance <= r from a (0 when only the
    degenerate self-distance remains).  c_star(a, r) is this value / h(r):
    shrinking the annulus inward, the last c for which it still meets the
    boundary is reached when c*h(r) hits the top achievable distance."""
    spec = domain.distance_spectrum(a)
    return spec.sup_at_most(r)


def annulus_condition(
    domain: CircleDomain, a: complex, r: float, c: float, h: ScaleFunction
) -> AnnulusTestReport:
    """Exact annulus test at (a, r) with inner radius c*h(r)."""
    if r <= 0:
        raise ValueError("r must be positive")
    best = reachable_sup(domain, a, r)  # may raise NotBoundaryPointError
    hr = h.value(r)
    lo = c * hr
    satisfied = best >= lo and best > 0.0
    witness = None
    wd = math.nan
    if satisfied:
        witness, wd, _ = domain.witness_at_distance(a, lo, r)
    return AnnulusTestReport(
        a=complex(a),
        r=float(r),
        c=float(c),
        satisfied=satisfied,
        c_star=best / hr,
        witness=witness,
        witness_distance=wd,
    )


def default_boundary_samples(domain: CircleDomain, per_circle: int = 8) -> np.ndarray:
    """Deterministic boundary sample set: origin (when boundary), per-circle
    points on each hole, and per_circle points on the outer circle."""
    samples = []
    if domain.include_origin:
        samples.append(np.array([0j]))
    ring = np.exp(1j * TWO_PI * np.arange(per_circle) / per_circle)
    for c0, rho in zip(domain.centers, domain.radii):
        samples.append(c0 + rho * ring)
    if domain.inner_radius is not None:
        samples.append(domain.inner_radius * ring)
    samples.append(domain.outer_radius * ring)
    return np.concatenate(samples)


def log_spaced_radii(r_min: float, r_max: float, per_decade: int = 16) -> np.ndarray:
    decades = math.log10(r_max / r_min)
    n = max(2, int(math.ceil(decades * per_decade)) + 1)
    return np.exp(np.linspace(math.log(r_min), math.log(r_max), n))


def resolved_r_min(domain: CircleDomain) -> float:
    """Radius below which truncation hides boundary structure near 0.

    From the origin, radii below x_K see no retained hole (everything deeper
    was cut), so constant profiles are only meaningful for r >= x_K.
    """
    if isinstance(domain, ZalcmanDomain) and domain.variant == "superset":
        return float(domain.xs[domain.K - 1]) * 1.0001
    if domain.centers.size:
        return 1e-3 * float(domain.radii.min())
    return 1e-6


def best_constant_profile(
    domain: CircleDomain,
    h: ScaleFunction,
    r0: Optional[float] = None,
    a_samples: Optional[np.ndarray] = None,
    r_per_decade: int = 16,
    r_min: Optional[float] = None,
) -> tuple[float, list[dict]]:
    """Tabulate c_star(a, r) over boundary samples and log-spaced radii.

    Returns (inf over the table, table).  Missing deep structure can only
    make true c_star larger, so the inf is a certified lower profile of the
    underlying domain's constant over the probed range.
    """
    if a_samples is None:
        a_samples = default_boundary_samples(domain)
    if r0 is None:
        r0 = (domain.radii.max() * 2.0) if domain.centers.size else 0.5
        if isinstance(domain, ZalcmanDomain):
            r0 = domain.x1 / 2.0
    if r_min is None:
        r_min = resolved_r_min(domain)
    radii = log_spaced_radii(r_min, r0, r_per_decade)
    table = []
    global_min = math.inf
    for a in a_samples:
        spec = domain.distance_spectrum(a)
        for r in radii:
            best = spec.sup_at_most(float(r))
            cs = best / h.value(float(r))
            table.append({"a_re": a.real, "a_im": a.imag, "r": float(r), "c_star": cs})
            global_min = min(global_min, cs)
    return global_min, table


# ---------------------------------------------------------------------------
# classification of the weak conditions
# ---------------------------------------------------------------------------


def _family_scale(family: str, param: float) -> ScaleFunction:
    if family == "h1":
        return ScaleFunction.h1(param)
    if family == "h2":
        return ScaleFunction.h2(param)
    raise ValueError(f"unknown family {family!r}")


def exact_empty_annulus(domain: ZalcmanDomain, k: int, c: float, h_test: ScaleFunction) -> Optional[dict]:
    """Certificate that [c*h_test(x_k/2), x_k/2] around a=0 misses the full
    (untruncated) boundary; None when the annulus is inhabited or when the
    truncation cannot decide.

    Valid for k <= K-1: everything unresolved lies within x_{K+1}+r_{K+1}
    of the origin, which is below the resolved disk k+1 edge.
    """
    if k < 1 or k > domain.K - 1:
        return None
    xs, rs = domain.xs, domain.rs
    r = float(xs[k - 1]) / 2.0
    lo = c * h_test.value(r)
    # structure below r from the origin: disks j >= k+1 reach up to
    # x_{k+1} + r_{k+1}; disk k begins at x_k - r_k
    upper_inhabited = xs[k] + rs[k]  # x_{k+1} + r_{k+1}
    lower_clear = xs[k - 1] - rs[k - 1]  # x_k - r_k
    if lo > upper_inhabited and r < lower_clear:
        spec = domain.distance_spectrum(0j)
        assert not spec.intersects(lo, r)  # cross-check against the spectrum
        return {"k": k, "r": r, "c": c, "annulus_lo": lo, "gap_top": float(upper_inhabited)}
    return None


def classify_weak_perfectness(
    domain: ZalcmanDomain,
    family: str,
    param: float,
    eps_list: Sequence[float],
    c_grid: Sequence[float] = (1.0, 0.5, 0.25),
) -> dict:
    """Check the annulus condition for h_{family,param} and exhibit exact
    failure witnesses for each weakened parameter in eps_list.

    Failure policy: the weakened condition is flagged failed when, for every
    c in c_grid, some resolved scale carries a certified empty annulus, and
    the c_star profile along the witness radii x_k/2 is strictly decreasing
    at the tail.  All comparisons are plain interval arithmetic.
    """
    h_own = _family_scale(family, param)
    cs_global, table = best_constant_profile(domain, h_own)
    report = {
        "family": family,
        "param": param,
        "satisfied": bool(cs_global > 0.0),
        "c_star_global": cs_global,
        "table_size": len(table),
        "failures": [],
    }
    spec0 = domain.distance_spectrum(0j)
    for eps in eps_list:
        h_weak = _family_scale(family, param - eps)
        witnesses = []
        per_c_ok = []
        for c in c_grid:
            found = None
            for k in range(1, domain.K):
                cert = exact_empty_annulus(domain, k, c, h_weak)
                if cert is not None:
                    found = cert
                    break
            per_c_ok.append(found is not None)
            if found is not None:
                witnesses.append(found)
        # c_star along witness radii r = x_k/2 decreasing at the tail
        tail = []
        for k in range(max(1, domain.K - 4), domain.K):
            r = float(domain.xs[k - 1]) / 2.0
            tail.append(spec0.sup_at_most(r) / h_weak.value(r))
        decreasing = all(a > b for a, b in zip(tail, tail[1:]))
        report["failures"].append(
            {
                "eps": eps,
                "param_weak": param - eps,
                "failed": bool(all(per_c_ok) and decreasing),
                "witnesses": witnesses,
                "c_star_tail": tail,
            }
        )
    return report


# ---------------------------------------------------------------------------
# capacity density probe
# ---------------------------------------------------------------------------


def hole_arc_nodes(
    domain: CircleDomain,
    a: complex,
    r: float,
    nodes_per_circle: int = 16,
    outer_nodes: int = 512,
) -> np.ndarray:
    """Discretize the complement set (closed disk(a, r) minus the domain)
    by the boundary arcs of the holes, the inner barrier, and the outer
    circle clipped to distance r from a."""
    pts = []

    def circle_arcs(c0: complex, rho: float, n_full: int):
        d = abs(a - c0)
        if d + rho <= r:  # whole circle inside
            theta = TWO_PI * np.arange(n_full) / n_full
            pts.append(c0 + rho * np.exp(1j * theta))
            return
        if abs(d - rho) > r or d - rho > r:  # no point of the circle in reach
            return
        if d == 0.0:  # concentric, rho > r: nothing reachable
            return
        # partial arc around the direction towards a
        cos_psi = (d * d + rho * rho - r * r) / (2.0 * d * rho)
        cos_psi = min(1.0, max(-1.0, cos_psi))
        psi = math.acos(cos_psi)
        base = math.atan2((a - c0).imag, (a - c0).real)
        m = max(8, int(n_full * psi / math.pi))
        theta = base + np.linspace(-psi, psi, m)
        pts.append(c0 + rho * np.exp(1j * theta))

    for c0, rho in zip(domain.centers, domain.radii):
        circle_arcs(complex(c0), float(rho), nodes_per_circle)
    if domain.inner_radius is not None:
        circle_arcs(0j, float(domain.inner_radius), outer_nodes)
    # outer circle: the complement includes |z| >= outer_radius
    circle_arcs(0j, float(domain.outer_radius), outer_nodes)
    if domain.include_origin and abs(a) <= r:
        pts.append(np.array([0j]))
    if not pts:
        return np.empty(0, dtype=complex)
    return np.concatenate(pts)


def condition_C_probe(
    domain: CircleDomain,
    h: ScaleFunction,
    a: complex,
    r: float,
    n: int = 64,
    nodes_per_circle: int = 16,
    outer_nodes: int = 512,
) -> tuple[float, float]:
    """Capacity of the complement piece in disk(a, r), and its ratio to h(r)."""
    grid = hole_arc_nodes(domain, a, r, nodes_per_circle, outer_nodes)
    if grid.size == 0:
        raise EmptySetError(f"no complement nodes within {r} of {a}")
    for _ in range(8):  # densify short arcs until the grid supports n
        if grid.size >= 4 * n:
            break
        nodes_per_circle *= 2
        outer_nodes *= 2
        grid = hole_arc_nodes(domain, a, r, nodes_per_circle, outer_nodes)
    schedule = clamp_schedule((8, 16, 32, n), grid.size)
    cap = capacity_via_transfinite(grid, schedule).value
    return cap, cap / h.value(r)


def condition_C_profile(
    domain: CircleDomain,
    h: ScaleFunction,
    a: complex,
    radii: Sequence[float],
    n: int = 64,
) -> dict:
    """Probe Cap(disk(a,r) \\ domain)/h(r) over a radius grid; least-squares
    slope of log cap against log r comes along for exponent diagnostics."""
    rows = []
    for r in radii:
        try:
            cap, ratio = condition_C_probe(domain, h, a, float(r), n=n)
        except EmptySetError:
            cap, ratio = 0.0, 0.0
        rows.append({"a_re": a.real, "a_im": a.imag, "r": float(r), "cap": cap, "ratio": ratio})
    good = [(math.log(x["r"]), math.log(x["cap"])) for x in rows if x["cap"] > 0]
    slope = math.nan
    if len(good) >= 2:
        lx, ly = np.array([g[0] for g in good]), np.array([g[1] for g in good])
        slope = float(np.polyfit(lx, ly, 1)[0])
    ratios = [x["ratio"] for x in rows if x["ratio"] > 0]
    return {
        "rows": rows,
        "slope": slope,
        "ratio_inf": min(ratios) if ratios else 0.0,
        "ratio_sup": max(ratios) if ratios else 0.0,
    }


# ---------------------------------------------------------------------------
# branching boundary chain
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PommerenkeCertificate:
    a: complex
    c: float
    seed: float  # starting window top s_0
    s: np.ndarray  # derived scales s_1..s_k, s_{l+1} = (c/5) h(s_l)
    points: np.ndarray  # 2^k chain points (Cartesian display values)
    chain: tuple  # exact (component index, angle) per point
    words: tuple  # binary index words, aligned with points
    pairwise_ok: bool  # every pair at prefix length m is >= s_{m+1} apart
    distinct: bool  # all points distinct (exact chord distances > 0)
    within_seed_ball: bool  # all points within 2*seed of a
    product_bound: float  # sum_{l<k} 2^(k-l-1) log s_{l+1}
    capacity_floor: float  # exp(truncated sum of log s_{l+1} / 2^(l+1))

    @property
    def depth(self) -> int:
        return int(self.s.size)


@dataclass(frozen=True)
class _ChainPoint:
    """Boundary point carried exactly: component index plus, on circles, a
    landing angle and the per-level rotation increments applied since.

    Deep chain scales shrink below both the Cartesian resolution of the
    anchors and the additive resolution of any accumulated angle, so
    same-circle distances must be formed by differencing the per-level
    increments (identical floats cancel exactly along shared lineage) and
    only then summing, deepest first."""

    comp: int  # index into domain.boundary_components()
    angle_base: float  # angle where this lineage landed on the circle
    steps: tuple  # per-level rotation increments since the chain start
    z: complex  # materialized position (display only at deep scales)


def _chain_distance(p: _ChainPoint, q: _ChainPoint, comps) -> float:
    if p.comp == q.comp and comps[p.comp][0] == "circle":
        rho = comps[p.comp][2]
        if p.angle_base == q.angle_base:
            diffs = [a - b for a, b in zip(p.steps, q.steps)]
            dang = 0.0
            for t in reversed(diffs):  # deepest (smallest) first
                dang += t
        else:
            dang = (p.angle_base - q.angle_base) + (
                math.fsum(p.steps) - math.fsum(q.steps)
            )
        return 2.0 * rho * abs(math.sin(0.5 * dang))
    return abs(p.z - q.z)


def _chain_witness(domain: CircleDomain, p: _ChainPoint, lo: float, hi: float, comps) -> _ChainPoint:
    """Boundary point nearest to p within [lo, hi]; exact on p's own circle."""
    best = None  # (distance, comp index)
    for idx, comp in enumerate(comps):
        if comp[0] == "point":
            d = abs(p.z - comp[1])
            if lo <= d <= hi and (best is None or d < best[0]):
                best = (d, idx)
            continue
        _, c0, rho = comp
        if idx == p.comp:
            cl, ch = 0.0, 2.0 * rho  # own circle, exact interval
        else:
            dc = abs(p.z - c0)
            cl, ch = abs(dc - rho), dc + rho
        if cl > hi or ch < lo:
            continue
        d = max(cl, lo)
        if best is None or d < best[0]:
            best = (d, idx)
    if best is None:
        raise ValueError("distance window misses the boundary spectrum")
    d, idx = best
    comp = comps[idx]
    level = len(p.steps)
    if comp[0] == "point":
        return _ChainPoint(idx, 0.0, (0.0,) * (level + 1), comp[1])
    _, c0, rho = comp
    if idx == p.comp:
        dtheta = 2.0 * math.asin(min(1.0, d / (2.0 * rho)))  # positive rotation
        steps = p.steps + (dtheta,)
        ang = p.angle_base + math.fsum(steps)
        return _ChainPoint(
            idx, p.angle_base, steps, c0 + rho * complex(math.cos(ang), math.sin(ang))
        )
    from .domains import _point_on_circle_at_distance

    znew = _point_on_circle_at_distance(p.z, c0, rho, d)
    ang = math.atan2((znew - c0).imag, (znew - c0).real)
    return _ChainPoint(idx, ang, (0.0,) * (level + 1), znew)


def _chain_stay(p: _ChainPoint) -> _ChainPoint:
    return _ChainPoint(p.comp, p.angle_base, p.steps + (0.0,), p.z)


def _locate_on_boundary(domain: CircleDomain, a: complex, comps) -> _ChainPoint:
    for idx, comp in enumerate(comps):
        if comp[0] == "point" and abs(a - comp[1]) <= 1e-12:
            return _ChainPoint(idx, 0.0, (), comp[1])
        if comp[0] == "circle":
            _, c0, rho = comp
            if abs(abs(a - c0) - rho) <= 1e-12 * max(1.0, rho):
                ang = math.atan2((a - c0).imag, (a - c0).real)
                return _ChainPoint(idx, ang, (), a)
    raise NotBoundaryPointError(f"{a} is not a boundary point")


def pommerenke_construct(
    domain: CircleDomain,
    a: complex,
    c: float,
    k: int,
    s1: float,
    h: ScaleFunction,
) -> PommerenkeCertificate:
    """Build the 2^k-point branching chain starting at boundary point a.

    Scales follow s_{l+1} = (c/5) h(s_l) from the seed s_0 = s1; level l
    maps every current point z to itself and to a boundary point at distance
    in [5 s_{l+1}, s_l] = [c h(s_l), s_l] from z (smallest achievable
    distance, deterministic tie-breaks).  Pairs whose index words first
    differ at level m are then >= s_{m+1} apart, exactly the certificate the
    transfinite product bound needs.  Raises AnnulusEmptyError(level) when
    some window misses the boundary, i.e. the annulus condition fails with
    this constant at that scale.
    """
    comps = domain.boundary_components()
    start = _locate_on_boundary(domain, a, comps)
    s = np.empty(k + 1)
    s[0] = s1
    for l in range(1, k + 1):
        s[l] = (c / 5.0) * h.value(s[l - 1])
        if not s[l] <= 0.5 * s[l - 1]:
            raise ValueError("scale sequence must at least halve per level")
    points = [start]
    words: list[tuple] = [()]
    for l in range(k):
        lo, hi = 5.0 * s[l + 1], s[l]
        new_points = []
        new_words = []
        for p, wd in zip(points, words):
            try:
                img = _chain_witness(domain, p, lo, hi, comps)
            except ValueError as exc:
                raise AnnulusEmptyError(
                    l, f"level {l}: no boundary point in [{lo}, {hi}] around {p.z}"
                ) from exc
            new_points.append(_chain_stay(p))
            new_words.append(wd + (0,))
            new_points.append(img)
            new_words.append(wd + (1,))
        points, words = new_points, new_words

    m = len(points)
    pairwise_ok = m == 2**k
    distinct = True
    for i in range(m):
        for j in range(i + 1, m):
            dij = _chain_distance(points[i], points[j], comps)
            if dij <= 0.0:
                distinct = False
            prefix = 0
            wi, wj = words[i], words[j]
            while prefix < k and wi[prefix] == wj[prefix]:
                prefix += 1
            # words first differ at level prefix, whose window floor is
            # 5 s[prefix+1]; later drift eats at most 4 s[prefix+1]
            if dij < s[prefix + 1]:
                pairwise_ok = False
    pairwise_ok = pairwise_ok and distinct
    pts = np.asarray([p.z for p in points], dtype=complex)
    within = bool(np.all(np.abs(pts - a) <= 2.0 * s[0]))
    log_s = np.log(s[1 : k + 1])  # log s_1 .. log s_k (derived scales)
    product_bound = float(sum(2.0 ** (k - l - 1) * log_s[l] for l in range(k)))
    floor = math.exp(float(sum(log_s[l] / 2.0 ** (l + 1) for l in range(k))))
    return PommerenkeCertificate(
        a=complex(a),
        c=float(c),
        seed=float(s[0]),
        s=s[1 : k + 1].copy(),
        points=pts,
        chain=tuple((p.comp, p.angle_base, p.steps) for p in points),
        words=tuple(words),
        pairwise_ok=bool(pairwise_ok),
        distinct=bool(distinct),
        within_seed_ball=within,
        product_bound=product_bound,
        capacity_floor=floor,
    )


def chain_capacity_comparison(
    domain: CircleDomain,
    cert: PommerenkeCertificate,
    h: ScaleFunction,
    n: int = 64,
) -> dict:
    """Measure the complement capacity on the ball containing the chain
    (radius 2*seed) and compare with the chain floor."""
    cap, _ = condition_C_probe(domain, h, cert.a, 2.0 * cert.seed, n=n)
    return {
        "capacity_floor": cert.capacity_floor,
        "measured_cap": cap,
        "floor_below_measured": cert.capacity_floor <= 1.05 * cap,
    }


# ---------------------------------------------------------------------------
# aggregated reports
# ---------------------------------------------------------------------------


def uc_report(
    domain: ZalcmanDomain,
    family: str,
    param: float,
    eps: float = 0.1,
    n: int = 64,
) -> dict:
    """One-page diagnostic: annulus-condition classification on one side,
    capacity-density constants and exponents on the other."""
    cls = classify_weak_perfectness(domain, family, param, [eps])
    h = _family_scale(family, param)
    radii = []
    xs = domain.xs
    for k in range(1, domain.K):
        radii.append(1.25 * float(xs[k - 1] + domain.rs[k - 1]))
    radii = [r for r in radii if r >= resolved_r_min(domain)]
    prof = condition_C_profile(domain, h, 0j, radii, n=n)
    out = {
        "family": family,
        "param": param,
        "U_satisfied": cls["satisfied"],
        "c_star_global": cls["c_star_global"],
        "U_weakened_failed": cls["failures"][0]["failed"],
        "C_ratio_inf": prof["ratio_inf"],
        "C_slope": prof["slope"],
        "rows": prof["rows"],
    }
    if family == "h1" and 1.0 < param < 2.0:
        out["C_exponent_bound"] = 1.0 / (2.0 - param)
        out["C_slope_ok"] = prof["slope"] <= 1.0 / (2.0 - param) + 0.2
    if family == "h2":
        out["C_ratio_positive"] = prof["ratio_inf"] > 0.0
    return out


def _cantor_endpoint_words(J: int) -> list[tuple]:
    """(b_1..b_J, side) words for every level-J interval endpoint; the
    endpoint value is sum_j b_j (l_{j-1} - l_j) + side * l_J."""
    words = []
    for mask in range(2**J):
        bits = tuple((mask >> (J - 1 - j)) & 1 for j in range(J))
        words.append(bits + (0,))
        words.append(bits + (1,))
    return words


def _cantor_pair_distances(words: list[tuple], lengths: np.ndarray) -> np.ndarray:
    """Distance matrix between endpoints from word differences.

    Endpoint positions straddle ~60 orders of magnitude; subtracting the
    assembled doubles erases everything below eps * position.  Summing the
    per-level difference terms instead keeps each distance exact to
    relative rounding at its own scale.
    """
    J = len(lengths) - 1
    steps = np.array([lengths[j - 1] - lengths[j] for j in range(1, J + 1)] + [lengths[J]])
    W = np.asarray(words, dtype=float)  # (m, J+1)
    diff = W[:, None, :] - W[None, :, :]  # entries in {-1, 0, 1}
    # ascending-magnitude summation: steps grow with level index reversed
    order = np.argsort(np.abs(steps))
    d = np.zeros(diff.shape[:2])
    for idx in order:
        d += diff[:, :, idx] * steps[idx]
    return np.abs(d)


def cantor_U_check(
    C: CantorSet,
    alpha: float,
    c: Optional[float] = None,
    r_grid: Optional[np.ndarray] = None,
) -> dict:
    """Exact annulus checks for the complement of a nested-interval set.

    Base points and witnesses are interval endpoints, which all belong to
    the limit set, so every satisfied flag is a certificate.  Distances are
    evaluated combinatorially from construction words (see
    ``_cantor_pair_distances``).  Radii are restricted to the range the
    finite depth resolves (r > 2 l_{J-1}).
    """
    if c is None:
        c = 0.5 * 2.0 ** (-1.0 - alpha)
    if r_grid is None:
        r_lo = 2.0 * float(C.lengths[C.J - 1]) * 1.0001
        r_hi = 1.9 * C.l0
        r_grid = log_spaced_radii(r_lo, r_hi, per_decade=8)
    words = _cantor_endpoint_words(C.J)
    dist = _cantor_pair_distances(words, C.lengths)
    checks = 0
    failures = []
    for i in range(len(words)):
        d = np.sort(dist[i])
        d = d[d > 0.0]
        for r in r_grid:
            lo, hi = c * r**alpha, r
            j = np.searchsorted(d, lo, side="left")
            ok = j < d.size and d[j] <= hi
            checks += 1
            if not ok:
                failures.append({"word": words[i], "r": float(r)})
    return {
        "alpha": alpha,
        "c": c,
        "checks": checks,
        "passed": not failures,
        "failures": failures[:10],
    }
