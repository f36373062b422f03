"""Domain geometry: scale recursions, disk-complement domains, Cantor sets.

The central objects are

* :class:`ScaleFunction` -- the hole-size generator h, evaluated in the
  log domain so that doubly-exponential decays stay exact,
* :class:`CircleDomain` -- unit disk minus a finite list of closed disks,
  optionally with the origin as an isolated boundary point or an inner
  circular barrier,
* :class:`ZalcmanDomain` -- a CircleDomain whose holes follow the coupling
  r_k = x_{k+1} = h(x_k),
* :class:`CantorSet` -- nested-interval set with per-level lengths l_j,
* :class:`IntervalUnion` -- exact carrier of achievable-distance sets.

Everything here is immutable after construction and all operations are pure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    BisectionFailureError,
    NonDisjointError,
    NotBoundaryPointError,
    RuleViolationError,
    ScaleUnderflowError,
)

#: natural-log floor below which scale arrays are declared unrepresentable
LOG_FLOOR = -690.0

#: tolerance for "lies on the boundary" queries
BOUNDARY_TOL = 1e-12


# ---------------------------------------------------------------------------
# scale functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScaleFunction:
    """Hole-size generator h on (0, epsilon0).

    Families:
      * ``h1``:  h(r) = r**alpha          (alpha > 1)
      * ``h2``:  h(r) = r * log(1/r)**-beta   (beta > 0)
      * ``table``: monotone samples, interpolated linearly in log-log space.

    h is strictly increasing and satisfies h(r) < r on its validity range.
    """

    family: str
    alpha: float = 0.0
    beta: float = 0.0
    log_r_samples: Optional[np.ndarray] = None
    log_h_samples: Optional[np.ndarray] = None
    epsilon0: float = 1.0

    @classmethod
    def h1(cls, alpha: float) -> "ScaleFunction":
        if alpha <= 1.0:
            raise ValueError("h1 requires alpha > 1")
        return cls(family="h1", alpha=float(alpha), epsilon0=1.0)

    @classmethod
    def h2(cls, beta: float) -> "ScaleFunction":
        if beta <= 0.0:
            raise ValueError("h2 requires beta > 0")
        # h(r) < r needs log(1/r) > 1
        return cls(family="h2", beta=float(beta), epsilon0=math.exp(-1.0))

    @classmethod
    def from_table(cls, r_samples: Sequence[float], h_samples: Sequence[float]) -> "ScaleFunction":
        r = np.asarray(r_samples, dtype=float)
        h = np.asarray(h_samples, dtype=float)
        if r.ndim != 1 or r.shape != h.shape or r.size < 2:
            raise ValueError("table needs matching 1-d sample arrays, length >= 2")
        if np.any(r <= 0) or np.any(h <= 0):
            raise ValueError("table samples must be positive")
        if np.any(np.diff(r) <= 0) or np.any(np.diff(h) <= 0):
            raise ValueError("table samples must be strictly increasing")
        if np.any(h >= r):
            raise ValueError("table must satisfy h(r) < r")
        return cls(
            family="table",
            log_r_samples=np.log(r),
            log_h_samples=np.log(h),
            epsilon0=float(r[-1]),
        )

    def log_value(self, log_r):
        """log h(r) from log r; vectorized."""
        log_r = np.asarray(log_r, dtype=float)
        if self.family == "h1":
            out = self.alpha * log_r
        elif self.family == "h2":
            out = log_r - self.beta * np.log(-log_r)
        elif self.family == "table":
            out = np.interp(log_r, self.log_r_samples, self.log_h_samples)
        else:  # pragma: no cover
            raise ValueError(f"unknown family {self.family!r}")
        return out if out.shape else float(out)

    def value(self, r: float) -> float:
        return math.exp(self.log_value(math.log(r)))

    def inverse(self, t: float, rel_tol: float = 1e-13) -> float:
        """g(t) = h^{-1}(t) by bisection in the log domain."""
        if t <= 0:
            raise BisectionFailureError("inverse target must be positive")
        log_t = math.log(t)
        lo = log_t  # h(r) < r  =>  g(t) > t
        hi = math.log(self.epsilon0) - 1e-12
        if self.log_value(hi) < log_t:
            raise BisectionFailureError(f"t={t} above h(epsilon0)")
        if self.log_value(lo) > log_t:
            raise BisectionFailureError(f"cannot bracket t={t}")
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if self.log_value(mid) < log_t:
                lo = mid
            else:
                hi = mid
            if hi - lo < 1e-15 * max(1.0, abs(hi)):
                break
        g = 0.5 * (lo + hi)
        if abs(self.log_value(g) - log_t) > max(rel_tol, 1e-12):
            raise BisectionFailureError("bisection did not converge")
        return math.exp(g)

    def to_json_dict(self) -> dict:
        if self.family == "h1":
            return {"family": "h1", "alpha": self.alpha}
        if self.family == "h2":
            return {"family": "h2", "beta": self.beta}
        return {
            "family": "table",
            "r": np.exp(self.log_r_samples).tolist(),
            "h": np.exp(self.log_h_samples).tolist(),
        }


def scale_inverse_check(h: ScaleFunction, t: float) -> tuple[float, bool]:
    """Invert h at t and test the inverse-growth bound g(t) <= t*log(1/t)**beta.

    Only meaningful for the h2 family (the bound involves beta).
    """
    if h.family != "h2":
        raise ValueError("inverse-growth bound is stated for the h2 family")
    g = h.inverse(t)
    bound = t * (math.log(1.0 / t)) ** h.beta
    return g, g <= bound


# ---------------------------------------------------------------------------
# interval unions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted disjoint closed intervals of nonnegative reals plus isolated points."""

    intervals: np.ndarray  # shape (m, 2)
    points: np.ndarray  # shape (p,)

    @classmethod
    def build(cls, intervals: Sequence[tuple[float, float]], points: Sequence[float] = ()) -> "IntervalUnion":
        ivs = [(float(lo), float(hi)) for lo, hi in intervals]
        for lo, hi in ivs:
            if lo < 0 or hi < lo:
                raise ValueError(f"bad interval [{lo}, {hi}]")
        pts = [float(p) for p in points]
        if any(p < 0 for p in pts):
            raise ValueError("negative isolated point")
        ivs.sort()
        merged: list[list[float]] = []
        for lo, hi in ivs:
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        arr = np.asarray(merged, dtype=float).reshape(-1, 2)
        keep = [p for p in pts if not _inside_any(p, arr)]
        return cls(intervals=arr, points=np.asarray(sorted(set(keep)), dtype=float))

    def min(self) -> float:
        vals = []
        if self.intervals.size:
            vals.append(float(self.intervals[0, 0]))
        if self.points.size:
            vals.append(float(self.points[0]))
        if not vals:
            raise ValueError("empty union")
        return min(vals)

    def contains(self, x: float, tol: float = 0.0) -> bool:
        if self.intervals.size and bool(
            np.any((self.intervals[:, 0] - tol <= x) & (x <= self.intervals[:, 1] + tol))
        ):
            return True
        return bool(self.points.size and np.any(np.abs(self.points - x) <= tol))

    def intersects(self, lo: float, hi: float) -> bool:
        """Nonempty intersection with the closed interval [lo, hi]."""
        if self.intervals.size and bool(
            np.any((self.intervals[:, 0] <= hi) & (self.intervals[:, 1] >= lo))
        ):
            return True
        return bool(self.points.size and np.any((self.points >= lo) & (self.points <= hi)))

    def sup_at_most(self, hi: float, positive: bool = True) -> float:
        """Largest element <= hi (0.0 if none). With positive=True, the element
        must be approachable through positive values (an interval reaching
        above 0, or a positive point)."""
        best = 0.0
        for lo, h in self.intervals:
            if lo <= hi and h > 0:
                best = max(best, min(h, hi))
        if self.points.size:
            pts = self.points[(self.points <= hi) & (self.points > (0.0 if positive else -1.0))]
            if pts.size:
                best = max(best, float(pts[-1]))
        return best

    def inf_at_least(self, lo: float) -> Optional[float]:
        """Smallest element >= lo, or None."""
        cands = []
        for a, b in self.intervals:
            if b >= lo:
                cands.append(max(a, lo))
        if self.points.size:
            pts = self.points[self.points >= lo]
            if pts.size:
                cands.append(float(pts[0]))
        return min(cands) if cands else None


def _inside_any(p: float, arr: np.ndarray) -> bool:
    return bool(arr.size and np.any((arr[:, 0] <= p) & (p <= arr[:, 1])))


# ---------------------------------------------------------------------------
# circle domains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CircleDomain:
    """Unit-disk domain with circular holes.

    Boundary components, in deterministic order: the isolated origin (when
    present), removed-disk circles, the inner barrier circle (when present),
    and the outer circle.
    """

    centers: np.ndarray  # complex hole centers
    radii: np.ndarray  # hole radii
    include_origin: bool = False
    inner_radius: Optional[float] = None
    outer_radius: float = 1.0

    @classmethod
    def build(
        cls,
        disks: Sequence[tuple[complex, float]] = (),
        include_origin: bool = False,
        inner_radius: Optional[float] = None,
        outer_radius: float = 1.0,
    ) -> "CircleDomain":
        centers = np.asarray([c for c, _ in disks], dtype=complex)
        radii = np.asarray([r for _, r in disks], dtype=float)
        if np.any(radii <= 0):
            raise ValueError("hole radii must be positive")
        return cls(centers, radii, include_origin, inner_radius, outer_radius)

    # --- geometry queries ---------------------------------------------------

    def boundary_components(self) -> list[tuple]:
        comps: list[tuple] = []
        if self.include_origin:
            comps.append(("point", 0j))
        for c, r in zip(self.centers, self.radii):
            comps.append(("circle", complex(c), float(r)))
        if self.inner_radius is not None:
            comps.append(("circle", 0j, float(self.inner_radius)))
        comps.append(("circle", 0j, float(self.outer_radius)))
        return comps

    def unsigned_boundary_distance(self, z: complex) -> float:
        d = abs(abs(z) - self.outer_radius)
        if self.include_origin:
            d = min(d, abs(z))
        if self.inner_radius is not None:
            d = min(d, abs(abs(z) - self.inner_radius))
        if self.centers.size:
            d = min(d, float(np.min(np.abs(np.abs(z - self.centers) - self.radii))))
        return d

    def delta_and_membership(self, z: complex) -> tuple[bool, float]:
        """(inside, distance to boundary). Boundary points report (False, 0)."""
        az = abs(z)
        inside = az < self.outer_radius
        if self.include_origin and z == 0:
            inside = False
        if self.inner_radius is not None and az <= self.inner_radius:
            inside = False
        if inside and self.centers.size:
            if np.any(np.abs(z - self.centers) <= self.radii):
                inside = False
        return inside, self.unsigned_boundary_distance(z)

    def contains(self, z: complex) -> bool:
        return self.delta_and_membership(z)[0]

    def is_boundary(self, z: complex, tol: float = BOUNDARY_TOL) -> bool:
        return self.unsigned_boundary_distance(z) <= tol

    def distance_spectrum(self, a: complex, tol: float = BOUNDARY_TOL) -> IntervalUnion:
        """Exact set of distances {|z - a| : z on the boundary}.

        Every circle (center c, radius rho) contributes the closed interval
        [| |a-c| - rho |, |a-c| + rho]; the isolated origin contributes {|a|}.
        Requires a on the boundary.
        """
        if not self.is_boundary(a, tol):
            raise NotBoundaryPointError(f"point {a} is off the boundary")
        intervals = []
        points = []
        for comp in self.boundary_components():
            if comp[0] == "point":
                points.append(abs(a - comp[1]))
            else:
                _, c, rho = comp
                d = abs(a - c)
                lo = abs(d - rho)
                # |d - rho| below rounding resolution of the positions is
                # noise from a point sitting on this circle; true gap is 0
                if lo <= tol * (abs(a) + abs(c) + rho):
                    lo = 0.0
                intervals.append((lo, d + rho))
        return IntervalUnion.build(intervals, points)

    def nearest_boundary_point(self, z: complex) -> tuple[complex, float, int]:
        """(point, distance, component index) of the closest boundary point."""
        best = None
        for idx, comp in enumerate(self.boundary_components()):
            if comp[0] == "point":
                d = abs(z - comp[1])
                cand = comp[1]
            else:
                _, c, rho = comp
                dc = abs(z - c)
                d = abs(dc - rho)
                if dc == 0.0:
                    cand = c + rho
                else:
                    cand = c + rho * (z - c) / dc
            if best is None or d < best[1]:
                best = (cand, d, idx)
        return best

    def witness_at_distance(
        self, a: complex, lo: float, hi: float
    ) -> tuple[complex, float, int]:
        """Boundary point at the smallest achievable distance within [lo, hi].

        Ties across components break by component order; the point on a circle
        breaks symmetric pairs by smaller absolute argument of (point - a).
        Raises NotBoundaryPointError if a is off the boundary, ValueError if
        the window misses the spectrum.
        """
        if not self.is_boundary(a):
            raise NotBoundaryPointError(f"point {a} is off the boundary")
        best: Optional[tuple[float, int]] = None
        comps = self.boundary_components()
        for idx, comp in enumerate(comps):
            if comp[0] == "point":
                d = abs(a - comp[1])
                if lo <= d <= hi and (best is None or d < best[0]):
                    best = (d, idx)
            else:
                _, c, rho = comp
                dc = abs(a - c)
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
        if comp[0] == "point":
            return comp[1], d, idx
        _, c, rho = comp
        return _point_on_circle_at_distance(a, c, rho, d), d, idx


def _point_on_circle_at_distance(a: complex, c: complex, rho: float, d: float) -> complex:
    """A point z with |z - c| = rho and |z - a| = d (smallest |arg(z - a)|)."""
    dc = abs(a - c)
    if dc == 0.0:
        return c + rho  # any point works; pick argument 0
    u = (c - a) / dc
    # law of cosines in the triangle (a, c, z)
    cos_t = (dc * dc + d * d - rho * rho) / (2.0 * dc * d) if d > 0 else 1.0
    cos_t = min(1.0, max(-1.0, cos_t))
    sin_t = math.sqrt(max(0.0, 1.0 - cos_t * cos_t))
    cand1 = a + d * u * complex(cos_t, sin_t)
    cand2 = a + d * u * complex(cos_t, -sin_t)
    # deterministic tie-break: smaller |arg|, then positive imaginary part
    a1, a2 = abs(np.angle(cand1 - a)), abs(np.angle(cand2 - a))
    if abs(a1 - a2) > 1e-15:
        return cand1 if a1 < a2 else cand2
    return cand1 if cand1.imag >= cand2.imag else cand2


# ---------------------------------------------------------------------------
# Zalcman-type domains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZalcmanDomain(CircleDomain):
    """Truncated disk-chain domain with r_k = x_{k+1} = h(x_k).

    ``logx[k-1]`` holds log x_k for k = 1..K+2 and ``logr[k-1]`` holds
    log r_k for k = 1..K+1; the recursion is evaluated purely in logs.

    Variants:
      * ``superset``: only the first K disks removed; the origin is kept as
        an isolated boundary point.  Contains the untruncated domain.
      * ``sandwich``: additionally removes the closed ball of radius
        2*x_{K+1}, which swallows every deeper disk, so the result is
        contained in the untruncated domain.
    """

    h: ScaleFunction = None
    x1: float = 0.0
    K: int = 0
    variant: str = "superset"
    logx: np.ndarray = field(default=None)
    logr: np.ndarray = field(default=None)

    @property
    def xs(self) -> np.ndarray:
        """x_k for k = 1..K+2."""
        return np.exp(self.logx)

    @property
    def rs(self) -> np.ndarray:
        """r_k for k = 1..K+1."""
        return np.exp(self.logr)

    @property
    def truncation_floor(self) -> float:
        """x_{K+1} + r_{K+1}: everything unresolved is within this of 0."""
        return float(np.exp(self.logx[self.K]) + np.exp(self.logr[self.K]))

    def to_json_dict(self) -> dict:
        d = {"type": "zalcman", **self.h.to_json_dict(), "x1": self.x1,
             "K": self.K, "variant": self.variant}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def build_zalcman(
    h: ScaleFunction, x1: float, K: int, variant: str = "superset"
) -> ZalcmanDomain:
    """Run the scale recursion in the log domain and validate disjointness."""
    if K < 1:
        raise ValueError("K >= 1 required")
    if not 0.0 < x1 < h.epsilon0:
        raise ValueError(f"x1 must lie in (0, {h.epsilon0})")
    if variant not in ("superset", "sandwich"):
        raise ValueError(f"unknown variant {variant!r}")

    logx = np.empty(K + 2)
    logx[0] = math.log(x1)
    for k in range(1, K + 2):
        logx[k] = h.log_value(logx[k - 1])
        if not np.isfinite(logx[k]) or logx[k] <= LOG_FLOOR:
            raise ScaleUnderflowError(
                f"log x_{k + 1} = {logx[k]:.1f} below representable floor {LOG_FLOOR}"
            )
        if logx[k] >= logx[k - 1]:
            raise NonDisjointError("scale sequence is not strictly decreasing")
    logr = logx[1:].copy()  # r_k = x_{k+1}

    # disjointness: x_{k+1} + r_{k+1} < x_k - r_k, checked through ratios
    # relative to x_k so deep scales never underflow.
    for k in range(K + 1):
        ratio_next = math.exp(logx[k + 1] - logx[k])  # x_{k+1}/x_k
        if k + 2 <= K + 1:
            r_next_over = math.exp(logr[k + 1] - logx[k])  # r_{k+1}/x_k
        else:
            r_next_over = 0.0
        r_over = math.exp(logr[k] - logx[k])  # r_k/x_k
        if ratio_next + r_next_over >= 1.0 - r_over:
            raise NonDisjointError(f"disks {k + 1} and {k + 2} touch (x1 too large for h)")
    if x1 + math.exp(logr[0]) >= 1.0:
        raise NonDisjointError("first disk reaches the unit circle")

    xs = np.exp(logx)
    rs = np.exp(logr)
    centers = xs[:K].astype(complex)
    radii = rs[:K]
    if variant == "superset":
        include_origin, inner = True, None
    else:
        # inner barrier swallows all unretained disks: x_j + r_j <= x_{K+1} +
        # r_{K+1} < 2 x_{K+1} for every j > K
        include_origin, inner = False, 2.0 * float(xs[K])
    return ZalcmanDomain(
        centers=centers,
        radii=radii,
        include_origin=include_origin,
        inner_radius=inner,
        outer_radius=1.0,
        h=h,
        x1=float(x1),
        K=int(K),
        variant=variant,
        logx=logx,
        logr=logr,
    )


# ---------------------------------------------------------------------------
# Cantor sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CantorSet:
    """Nested middle-removal set on [0, l0] to depth J.

    Level j consists of 2^j closed intervals of identical length l_j; level
    j+1 keeps an l_{j+1}-piece at each end of every level-j interval.  All
    interval endpoints belong to the limit set, which makes endpoint queries
    exact certificates.
    """

    l0: float
    rule: str  # "power" | "table"
    alpha: float
    J: int
    lengths: np.ndarray  # l_0..l_J
    lefts: tuple  # per level: sorted array of left endpoints

    def intervals(self, level: Optional[int] = None) -> tuple[np.ndarray, float]:
        j = self.J if level is None else level
        return self.lefts[j], float(self.lengths[j])

    def endpoints(self, level: Optional[int] = None) -> np.ndarray:
        lefts, lj = self.intervals(level)
        return np.unique(np.concatenate([lefts, lefts + lj]))

    def total_length(self, level: Optional[int] = None) -> float:
        lefts, lj = self.intervals(level)
        return lefts.size * lj

    def distance_spectrum(self, a: float, mode: str = "intervals") -> IntervalUnion:
        """Distances from a to the depth-J approximant.

        mode="intervals": distances to the full level-J intervals (a superset
        of the limit-set distances; error at most l_J).
        mode="endpoints": distances to interval endpoints, all of which lie in
        the limit set (an exact subset).
        """
        lefts, lj = self.intervals()
        if mode == "endpoints":
            return IntervalUnion.build([], np.abs(self.endpoints() - a))
        los, his = lefts, lefts + lj
        ivs = []
        for lo, hi in zip(los, his):
            if a < lo:
                ivs.append((lo - a, hi - a))
            elif a > hi:
                ivs.append((a - hi, a - lo))
            else:
                ivs.append((0.0, max(a - lo, hi - a)))
        return IntervalUnion.build(ivs)

    def is_point(self, a: float, tol: float = BOUNDARY_TOL) -> bool:
        lefts, lj = self.intervals()
        return bool(np.any((lefts - tol <= a) & (a <= lefts + lj + tol)))

    def to_json_dict(self) -> dict:
        return {"type": "cantor", "l0": self.l0, "alpha": self.alpha, "J": self.J}


def build_cantor(l0: float, alpha: float, J: int) -> CantorSet:
    """Power-rule set: l_{j+1} = l_j**alpha, endpoints exact to depth J."""
    if not 0.0 < l0 < 0.5:
        raise ValueError("l0 must lie in (0, 1/2)")
    if alpha < 1.0:
        raise ValueError("alpha >= 1 required")
    log_l = [math.log(l0)]
    for _ in range(J):
        log_l.append(alpha * log_l[-1])
    lengths = np.exp(log_l)
    return _assemble_cantor(l0, "power", alpha, J, lengths)


def build_cantor_table(lengths: Sequence[float]) -> CantorSet:
    """Explicit-lengths set; lengths[j] = l_j, depth J = len - 1."""
    lengths = np.asarray(lengths, dtype=float)
    if lengths.ndim != 1 or lengths.size < 2:
        raise ValueError("need l_0..l_J with J >= 1")
    return _assemble_cantor(float(lengths[0]), "table", 0.0, lengths.size - 1, lengths)


def _assemble_cantor(l0: float, rule: str, alpha: float, J: int, lengths: np.ndarray) -> CantorSet:
    for j in range(J):
        if not lengths[j + 1] < lengths[j] / 2.0:
            raise RuleViolationError(
                f"l_{j + 1} = {lengths[j + 1]:g} is not below l_{j}/2 = {lengths[j] / 2.0:g}"
            )
    lefts = [np.array([0.0])]
    for j in range(1, J + 1):
        prev = lefts[-1]
        lj, lprev = lengths[j], lengths[j - 1]
        nxt = np.concatenate([prev, prev + (lprev - lj)])
        lefts.append(np.sort(nxt))
    return CantorSet(l0=l0, rule=rule, alpha=alpha, J=J, lengths=lengths, lefts=tuple(lefts))


# ---------------------------------------------------------------------------
# JSON round-trip for configs
# ---------------------------------------------------------------------------


def scale_from_json(d: dict) -> ScaleFunction:
    fam = d.get("family")
    if fam == "h1":
        return ScaleFunction.h1(float(d["alpha"]))
    if fam == "h2":
        return ScaleFunction.h2(float(d["beta"]))
    if fam == "table":
        return ScaleFunction.from_table(d["r"], d["h"])
    raise ValueError(f"unknown scale family {fam!r}")


def domain_from_json(d: dict):
    """Build a domain object from its JSON description."""
    t = d.get("type")
    if t == "zalcman":
        h = scale_from_json(d)
        return build_zalcman(h, float(d["x1"]), int(d["K"]), d.get("variant", "superset"))
    if t == "cantor":
        return build_cantor(float(d["l0"]), float(d["alpha"]), int(d["J"]))
    if t == "disk":
        return CircleDomain.build()
    if t == "annulus":
        return CircleDomain.build(inner_radius=float(d["r0"]))
    raise ValueError(f"unknown domain type {t!r}")
