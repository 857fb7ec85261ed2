"""Quasiconvex function abstraction, slope estimators and benchmark gallery.

A function exposes pointwise evaluation (+inf outside its domain), an oracle
for every sublevel set, a domain oracle and its infimum. The gallery carries
three entries: the Euclidean norm in any dimension, a tube-shaped function
whose sublevel sets are capsules, and a two-disk gauge whose level sets
degenerate in curvature near the level 1.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GridTooCoarse, NonConvergence
from .geometry import (BallSet, ConvexSetOracle, FullSpaceSet, IntersectionSet,
                       TwoBallHullSet, find_interior_point)
from .rng import ball_points, split_rng, unit_directions

SLOPE_RADII = (1e-2, 1e-3, 1e-4, 1e-5)
LIMITING_RADIUS = 1e-2
LIMITING_VALUE_GAP = 1e-2
LIMITING_SAMPLES = 128
LEVEL_BISECT_TOL = 1e-10


def _rows(x):
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        return x[None, :], True
    return x, False


class QuasiconvexFunction:
    """Base interface: eval, sublevel oracles, domain, infimum, name."""

    name: str
    dim: int
    inf_value: float
    level_hi: float | None  # level at which sublevels saturate to the domain
    domain: ConvexSetOracle

    def eval(self, x):
        raise NotImplementedError

    def sublevel(self, alpha: float) -> ConvexSetOracle:
        raise NotImplementedError

    def level_bbox(self, alpha: float):
        """Axis-aligned box (lo, hi) containing the alpha-sublevel set."""
        raise NotImplementedError

    def clamp_level(self, alpha: float) -> float:
        if self.level_hi is not None:
            return min(alpha, self.level_hi)
        return alpha

    def level_project(self, alphas, points):
        """Projection of points[i] onto the alphas[i]-sublevel set, batched.

        Subclasses override with closed forms; the fallback builds one oracle
        per row and is correspondingly slow.
        """
        pts = np.asarray(points, dtype=float)
        alphas = np.broadcast_to(np.asarray(alphas, dtype=float), (len(pts),))
        return np.stack(
            [self.sublevel(a).project(p) for a, p in zip(alphas, pts)]
        )

    def level_distance(self, alphas, points):
        """Distance of points[i] to the alphas[i]-sublevel set, batched."""
        pts = np.asarray(points, dtype=float)
        return np.linalg.norm(pts - self.level_project(alphas, pts), axis=1)


class NormFunction(QuasiconvexFunction):
    """Euclidean norm; sublevel sets are centered balls."""

    def __init__(self, dim: int = 2):
        self.name = "norm" if dim == 2 else f"norm{dim}"
        self.dim = dim
        self.inf_value = 0.0
        self.level_hi = None
        self.domain = FullSpaceSet(dim)
        self.default_window = (0.5, 1.5)

    def eval(self, x):
        x2, single = _rows(x)
        v = np.linalg.norm(x2, axis=1)
        return float(v[0]) if single else v

    def sublevel(self, alpha: float) -> ConvexSetOracle:
        if alpha < self.inf_value:
            raise ValueError("sublevel below the infimum is empty")
        return BallSet(np.zeros(self.dim), alpha)

    def level_bbox(self, alpha: float):
        return -alpha * np.ones(self.dim), alpha * np.ones(self.dim)

    def level_project(self, alphas, points):
        pts = np.asarray(points, dtype=float)
        alphas = np.broadcast_to(np.asarray(alphas, dtype=float), (len(pts),))
        norms = np.linalg.norm(pts, axis=1)
        scale = np.where(norms > alphas, alphas / np.where(norms > 0, norms, 1.0), 1.0)
        return pts * scale[:, None]

    def level_distance(self, alphas, points):
        pts = np.asarray(points, dtype=float)
        return np.maximum(np.linalg.norm(pts, axis=1) - np.asarray(alphas, dtype=float), 0.0)


class TubeFunction(QuasiconvexFunction):
    """Distance-to-advancing-disk function on a capsule-shaped domain.

    f(x, y) = max(0, x - sqrt(1 - y^2)) on the hull of the unit disk and its
    translate by (3, 0); +inf outside. The alpha-sublevel set is the hull of
    the unit disk and the disk centered at (alpha, 0), i.e. a capsule, so the
    boundary of the domain cuts every sublevel boundary along the left cap.
    """

    def __init__(self):
        self.name = "tube"
        self.dim = 2
        self.inf_value = 0.0
        self.level_hi = 3.0
        self.domain = TwoBallHullSet([0.0, 0.0], 1.0, [3.0, 0.0], 1.0)
        self.default_window = (0.3, 1.7)

    def eval(self, x):
        x2, single = _rows(x)
        inside = np.asarray(self.domain.membership(x2))
        vals = np.full(len(x2), np.inf)
        if np.any(inside):
            px, py = x2[inside, 0], x2[inside, 1]
            vals[inside] = np.maximum(px - np.sqrt(np.maximum(1.0 - py**2, 0.0)), 0.0)
        return float(vals[0]) if single else vals

    def sublevel(self, alpha: float) -> ConvexSetOracle:
        if alpha < 0:
            raise ValueError("sublevel below the infimum is empty")
        t = self.clamp_level(alpha)
        return TwoBallHullSet([0.0, 0.0], 1.0, [t, 0.0], 1.0)

    def level_bbox(self, alpha: float):
        t = self.clamp_level(alpha)
        return np.array([-1.0, -1.0]), np.array([t + 1.0, 1.0])

    def level_project(self, alphas, points):
        pts = np.asarray(points, dtype=float)
        t = np.minimum(np.broadcast_to(np.asarray(alphas, dtype=float), (len(pts),)),
                       self.level_hi)
        anchor = np.stack([np.clip(pts[:, 0], 0.0, t), np.zeros(len(pts))], axis=1)
        delta = pts - anchor
        dist = np.linalg.norm(delta, axis=1)
        out = dist > 1.0
        res = pts.copy()
        if np.any(out):
            res[out] = anchor[out] + delta[out] / dist[out, None]
        return res

    def level_distance(self, alphas, points):
        pts = np.asarray(points, dtype=float)
        t = np.minimum(np.broadcast_to(np.asarray(alphas, dtype=float), (len(pts),)),
                       self.level_hi)
        seg = np.stack([np.clip(pts[:, 0], 0.0, t), np.zeros(len(pts))], axis=1)
        return np.maximum(np.linalg.norm(pts - seg, axis=1) - 1.0, 0.0)


def _gauge_membership(s, px, py):
    """Membership of (px, py) in the moving set S(s), vectorized in s."""
    s = np.asarray(s, dtype=float)
    rho = np.abs(px)
    in_ball = px**2 + py**2 <= s**2
    sb = np.maximum(s, 1.0)
    gap = 2.0 * sb - 1.0
    r2 = sb - 1.0
    in_small = rho**2 + (py - gap) ** 2 <= r2**2
    na = 1.0 / gap
    nr = np.sqrt(np.maximum(1.0 - na**2, 0.0))
    p1a, p1r = sb * na, sb * nr
    p2a, p2r = gap + r2 * na, r2 * nr
    seg_a, seg_r = p2a - p1a, p2r - p1r
    seg_len = np.hypot(seg_a, seg_r)
    safe = np.where(seg_len > 0, seg_len, 1.0)
    proj = ((py - p1a) * seg_a + (rho - p1r) * seg_r) / safe
    below = (py - p1a) * na + (rho - p1r) * nr <= 0.0
    in_cone = (proj >= 0.0) & (proj <= seg_len) & below & (seg_len > 0)
    return np.where(s < 1.0, in_ball, in_ball | in_small | in_cone)


class GaugeFunction(QuasiconvexFunction):
    """Gauge of the moving two-disk family S(s).

    S(s) is the ball of radius s for s < 1 and the hull of that ball with the
    disk of radius s - 1 centered at (0, 2s - 1) for s in [1, 2]. f(x) is the
    smallest s whose set contains x, found by bisection; the minimal internal
    curvature radius of the level boundary is s for s <= 1 and s - 1 above.
    """

    def __init__(self):
        self.name = "gauge"
        self.dim = 2
        self.inf_value = 0.0
        self.level_hi = 2.0
        self.domain = TwoBallHullSet([0.0, 0.0], 2.0, [0.0, 3.0], 1.0)
        self.default_window = (1.2, 1.8)

    def eval(self, x):
        x2, single = _rows(x)
        px, py = x2[:, 0], x2[:, 1]
        vals = np.full(len(x2), np.inf)
        inside = np.asarray(self.domain.membership(x2))
        lo = np.zeros(len(x2))
        hi = np.full(len(x2), 2.0)
        for _ in range(48):
            mid = 0.5 * (lo + hi)
            member = _gauge_membership(mid, px, py)
            hi = np.where(member, mid, hi)
            lo = np.where(member, lo, mid)
        vals[inside] = hi[inside]
        return float(vals[0]) if single else vals

    def sublevel(self, alpha: float) -> ConvexSetOracle:
        if alpha < 0:
            raise ValueError("sublevel below the infimum is empty")
        s = self.clamp_level(alpha)
        if s < 1.0:
            return BallSet([0.0, 0.0], s)
        return TwoBallHullSet([0.0, 0.0], s, [0.0, 2.0 * s - 1.0], s - 1.0)

    def level_bbox(self, alpha: float):
        s = self.clamp_level(alpha)
        top = max(s, 3.0 * s - 2.0)
        return np.array([-s, -s]), np.array([s, top])

    def level_project(self, alphas, points):
        pts = np.asarray(points, dtype=float)
        s = np.minimum(np.broadcast_to(np.asarray(alphas, dtype=float), (len(pts),)),
                       self.level_hi)
        a, rho = pts[:, 1], np.abs(pts[:, 0])
        px_sign = np.where(pts[:, 0] >= 0, 1.0, -1.0)

        # Ball branch (s <= 1, where the second disk is swallowed).
        d0 = np.hypot(a, rho)
        scale = np.where(d0 > s, s / np.where(d0 > 0, d0, 1.0), 1.0)
        ball_a, ball_rho = a * scale, rho * scale

        # Hull branch (guard s below by 1 so the formulas stay defined).
        sb = np.maximum(s, 1.0)
        gap, r2 = 2.0 * sb - 1.0, sb - 1.0
        na = 1.0 / gap
        nr = np.sqrt(np.maximum(1.0 - na**2, 0.0))
        inside = np.asarray(_gauge_membership(sb, pts[:, 0], pts[:, 1]))
        best_a, best_rho = a.copy(), rho.copy()
        best_d = np.where(inside, 0.0, np.inf)

        d1 = np.hypot(a, rho)
        ok1 = (d1 > 1e-150) & (a / np.where(d1 > 1e-150, d1, 1.0) <= na + 1e-12)
        cand_d = np.abs(d1 - sb)
        upd = ~inside & ok1 & (cand_d < best_d)
        f1 = sb / np.where(d1 > 1e-150, d1, 1.0)
        best_a = np.where(upd, a * f1, best_a)
        best_rho = np.where(upd, rho * f1, best_rho)
        best_d = np.where(upd, cand_d, best_d)

        a2 = a - gap
        d2 = np.hypot(a2, rho)
        ok2 = (d2 > 1e-150) & (a2 / np.where(d2 > 1e-150, d2, 1.0) >= na - 1e-12)
        cand_d = np.abs(d2 - r2)
        upd = ~inside & ok2 & (cand_d < best_d)
        f2 = r2 / np.where(d2 > 1e-150, d2, 1.0)
        best_a = np.where(upd, gap + a2 * f2, best_a)
        best_rho = np.where(upd, rho * f2, best_rho)
        best_d = np.where(upd, cand_d, best_d)

        p1a, p1r = sb * na, sb * nr
        seg_a, seg_r = (gap + r2 * na) - p1a, r2 * nr - p1r
        seg_len = np.hypot(seg_a, seg_r)
        safe = np.where(seg_len > 0, seg_len, 1.0)
        t = np.clip(((a - p1a) * seg_a + (rho - p1r) * seg_r) / safe, 0.0, seg_len)
        ca, cr = p1a + t * seg_a / safe, p1r + t * seg_r / safe
        cand_d = np.hypot(a - ca, rho - cr)
        upd = ~inside & (cand_d < best_d)
        best_a = np.where(upd, ca, best_a)
        best_rho = np.where(upd, cr, best_rho)

        out_a = np.where(s <= 1.0, ball_a, best_a)
        out_rho = np.where(s <= 1.0, ball_rho, best_rho)
        return np.stack([px_sign * out_rho, out_a], axis=1)


class LocalizedFunction(QuasiconvexFunction):
    """Base function plus the indicator of a closed ball around a center."""

    def __init__(self, base: QuasiconvexFunction, center, delta: float):
        center = np.asarray(center, dtype=float)
        if float(base.domain.signed_boundary_distance(center)) > -delta:
            raise DomainError("localization ball must sit inside the base domain")
        self.base = base
        self.center = center
        self.delta = float(delta)
        self.name = f"localized:{base.name}:{center[0]:g},{center[1]:g}:{delta:g}"
        self.dim = base.dim
        self.ball = BallSet(center, delta)
        self.domain = self.ball
        self.inf_value = self._min_over_ball()
        base_hi = base.level_hi if base.level_hi is not None else None
        self.level_hi = self._max_over_ball(base_hi)
        self.default_window = (
            self.inf_value + 0.25 * (self.level_hi - self.inf_value),
            self.inf_value + 0.75 * (self.level_hi - self.inf_value),
        )

    def _min_over_ball(self) -> float:
        lo = self.base.inf_value
        hi = float(self.base.eval(self.center))
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if float(self.base.sublevel(mid).distance(self.center)) <= self.delta:
                hi = mid
            else:
                lo = mid
            if hi - lo < LEVEL_BISECT_TOL:
                break
        return hi

    def _max_over_ball(self, base_hi) -> float:
        rng = split_rng(0, "localize-max", self.name)
        pts = self.center + ball_points(rng, 2048, self.dim, self.delta)
        border = self.center + self.delta * unit_directions(rng, 512, self.dim)
        vals = self.base.eval(np.vstack([pts, border]))
        hi = float(np.max(vals[np.isfinite(vals)])) + 1e-6
        if base_hi is not None:
            hi = min(hi, base_hi)
        return hi

    def eval(self, x):
        x2, single = _rows(x)
        vals = np.full(len(x2), np.inf)
        # Tolerance keeps points computed to lie on the ball circle feasible.
        inside = np.asarray(self.ball.membership(x2, tol=1e-12))
        if np.any(inside):
            vals[inside] = np.asarray(self.base.eval(x2[inside]), dtype=float)
        return float(vals[0]) if single else vals

    def sublevel(self, alpha: float) -> ConvexSetOracle:
        if alpha < self.inf_value - LEVEL_BISECT_TOL:
            raise ValueError("sublevel below the infimum is empty")
        base_set = self.base.sublevel(self.base.clamp_level(alpha))
        return IntersectionSet(base_set, self.ball,
                               interior_point=self._slater(alpha))

    def _slater(self, alpha: float):
        if alpha >= self.level_hi:
            return self.center.copy()
        mid = 0.5 * (alpha + self.inf_value)
        z = self.base.sublevel(mid).project(self.center)
        if float(self.ball.signed_boundary_distance(z)) < -1e-9:
            return z
        return find_interior_point(self.base.sublevel(alpha), self.ball,
                                   seed=abs(hash(self.name)) % (2**31))

    def level_bbox(self, alpha: float):
        return self.center - self.delta, self.center + self.delta

    def level_project(self, alphas, points, tol: float = 1e-10, max_iter: int = 4000):
        """Projection onto per-row base sublevels cut by the indicator ball."""
        pts = np.asarray(points, dtype=float)
        alphas = np.broadcast_to(np.asarray(alphas, dtype=float),
                                 (len(pts),)).copy()
        alphas = np.minimum(alphas, self.level_hi)
        if self.dim == 2:
            from .geometry import ball_lens_project
            return ball_lens_project(
                pts, self.ball,
                lambda rows, p: self.base.level_distance(alphas[rows], p) <= 1e-12,
                lambda rows, p: self.base.level_project(alphas[rows], p),
                lambda rows, p: self.base.level_distance(alphas[rows], p))
        y = pts.copy()
        p = np.zeros_like(pts)
        q = np.zeros_like(pts)
        prev = None
        for _ in range(max_iter):
            u = self.base.level_project(alphas, y + p)
            p = y + p - u
            y = self.ball.project(u + q)
            q = u + q - y
            if prev is not None and float(np.max(np.linalg.norm(y - prev, axis=1))) < tol:
                return y
            prev = y.copy()
        raise NonConvergence("localized level projection did not converge")


@dataclass
class SlopeEstimate:
    """Result of the directional descent-rate estimator."""

    value: float
    radii_used: tuple
    directions_per_radius: int
    in_domain: bool = True
    converged: bool = True


def _directions_for(dim: int, n_directions=None) -> int:
    if n_directions is not None:
        return n_directions
    return 64 if dim == 2 else 32 * dim


def slope_values(f: QuasiconvexFunction, points, radii=SLOPE_RADII,
                 n_directions=None, seed: int = 0, refine: bool = True):
    """Vectorized descent-rate estimates at a batch of points.

    For each radius the maximal positive difference quotient over a seeded
    direction sweep is taken and locally refined; the estimate is the largest
    value over the two smallest radii.
    """
    pts, single = _rows(points)
    m, dim = pts.shape
    n = _directions_for(dim, n_directions)
    fx = np.asarray(f.eval(pts), dtype=float)
    per_radius = np.zeros((len(radii), m))
    for ri, rho in enumerate(radii):
        dirs = unit_directions(split_rng(seed, "slope", ri), n, dim)
        probes = pts[:, None, :] + rho * dirs[None, :, :]
        fp = np.asarray(f.eval(probes.reshape(-1, dim))).reshape(m, n)
        with np.errstate(invalid="ignore"):
            quot = np.nan_to_num(np.maximum(fx[:, None] - fp, 0.0), nan=0.0) / rho
        best = quot.max(axis=1)
        if refine:
            if dim == 2:
                best = np.maximum(best, _refine_angle(f, pts, fx, rho,
                                                      quot.argmax(axis=1), n))
            else:
                best = np.maximum(best, _refine_cap(f, pts, fx, rho,
                                                    dirs[quot.argmax(axis=1)], seed))
        per_radius[ri] = best
    value = per_radius[-2:].max(axis=0) if len(radii) >= 2 else per_radius[-1]
    value = np.where(np.isfinite(fx), value, np.inf)
    return (float(value[0]) if single else value), per_radius


def _refine_angle(f, pts, fx, rho, arg, n):
    """Bracketed angular subdivision around the best sampled direction."""
    m = pts.shape[0]
    centers = 2.0 * np.pi * arg / n
    width = 2.0 * np.pi / n
    best = np.full(m, -np.inf)
    for _ in range(3):
        offs = np.linspace(-1.0, 1.0, 9)
        angles = centers[:, None] + width * offs[None, :]
        probes = pts[:, None, :] + rho * np.stack(
            [np.cos(angles), np.sin(angles)], axis=2
        )
        fp = np.asarray(f.eval(probes.reshape(-1, 2))).reshape(m, 9)
        with np.errstate(invalid="ignore"):
            quot = np.nan_to_num(np.maximum(fx[:, None] - fp, 0.0), nan=0.0) / rho
        idx = quot.argmax(axis=1)
        best = np.maximum(best, quot.max(axis=1))
        centers = angles[np.arange(m), idx]
        width /= 4.0
    return best


def _refine_cap(f, pts, fx, rho, dirs, seed):
    """Shrinking spherical-cap search around the best sampled direction."""
    m, dim = pts.shape
    best = np.full(m, -np.inf)
    width = 0.5
    v = dirs.copy()
    rng = split_rng(seed, "slope-cap")
    for _ in range(4):
        noise = rng.normal(size=(m, 24, dim))
        cand = v[:, None, :] + width * noise
        cand /= np.linalg.norm(cand, axis=2, keepdims=True)
        probes = pts[:, None, :] + rho * cand
        fp = np.asarray(f.eval(probes.reshape(-1, dim))).reshape(m, 24)
        with np.errstate(invalid="ignore"):
            quot = np.nan_to_num(np.maximum(fx[:, None] - fp, 0.0), nan=0.0) / rho
        idx = quot.argmax(axis=1)
        better = quot.max(axis=1) > best
        best = np.maximum(best, quot.max(axis=1))
        v[better] = cand[better, idx[better]]
        width /= 3.0
    return best


def slope(f: QuasiconvexFunction, x, radii=SLOPE_RADII, n_directions=None,
          seed: int = 0, refine: bool = True) -> SlopeEstimate:
    """Descent-rate estimate at a single point."""
    x = np.asarray(x, dtype=float)
    fx = float(f.eval(x))
    n = _directions_for(x.shape[0], n_directions)
    if not np.isfinite(fx):
        return SlopeEstimate(np.inf, tuple(radii), n, in_domain=False)
    value, per_radius = slope_values(f, x, radii=radii, n_directions=n_directions,
                                     seed=seed, refine=refine)
    tail = per_radius[-2:, 0]
    scale = max(float(tail.max()), 1e-12)
    converged = abs(tail[0] - tail[1]) <= 0.2 * scale
    if not converged:
        warnings.warn("slope estimates at the two smallest radii disagree "
                      "by more than 20%")
    return SlopeEstimate(float(value), tuple(radii), n, converged=converged)


def limiting_slope(f: QuasiconvexFunction, x, rho_outer: float = LIMITING_RADIUS,
                   delta_f: float = LIMITING_VALUE_GAP,
                   n_samples: int = LIMITING_SAMPLES, seed: int = 0) -> float:
    """Lower envelope of the slope over value-close nearby points."""
    x = np.asarray(x, dtype=float)
    fx = float(f.eval(x))
    if not np.isfinite(fx):
        return np.inf
    rng = split_rng(seed, "limiting", n_samples)
    pts = np.vstack([x[None, :], x + ball_points(rng, n_samples, x.shape[0], rho_outer)])
    fy = np.asarray(f.eval(pts), dtype=float)
    valid = np.isfinite(fy) & (np.abs(fy - fx) <= delta_f)
    vals, _ = slope_values(f, pts[valid], seed=seed)
    return float(np.min(vals))


def is_critical(f: QuasiconvexFunction, x, tol: float) -> bool:
    """True when the limiting slope at x does not exceed tol."""
    return limiting_slope(f, x) <= tol


def check_H2_region(f: QuasiconvexFunction, region, resolution: float,
                    seed: int = 0):
    """Grid slope floor over a box region disjoint from the argmin.

    Returns (passed, floor) with floor the minimal slope estimate on the grid.
    Warns when adjacent grid estimates differ by more than 50 percent.
    """
    lo, hi = (np.asarray(region[0], dtype=float), np.asarray(region[1], dtype=float))
    axes = [np.arange(lo[i], hi[i] + resolution / 2, resolution) for i in range(len(lo))]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)
    fx = np.asarray(f.eval(pts), dtype=float)
    inside = np.isfinite(fx)
    vals = np.full(len(pts), np.nan)
    est, _ = slope_values(f, pts[inside], seed=seed)
    vals[inside] = est
    grid_vals = vals.reshape(mesh[0].shape)
    for axis in range(grid_vals.ndim):
        a = np.moveaxis(grid_vals, axis, 0)
        pair_ok = np.isfinite(a[:-1]) & np.isfinite(a[1:])
        if np.any(pair_ok):
            lo_pair = np.minimum(a[:-1], a[1:])[pair_ok]
            hi_pair = np.maximum(a[:-1], a[1:])[pair_ok]
            if np.any(hi_pair - lo_pair > 0.5 * np.maximum(hi_pair, 1e-12)):
                warnings.warn("adjacent slope estimates vary by more than 50%",
                              GridTooCoarse)
                break
    floor = float(np.nanmin(vals)) if np.any(inside) else 0.0
    return floor > 0.0, floor


def localize(f: QuasiconvexFunction, center, delta: float) -> LocalizedFunction:
    """Restriction of f to a closed ball via an added indicator."""
    return LocalizedFunction(f, center, delta)


def aze_corvellec_check(f: QuasiconvexFunction, region, alpha: float,
                        slope_floor: float, n_samples: int = 200, seed: int = 0,
                        tol: float = 1e-6, rel_tol: float = 1e-3):
    """Sampled error bound: d(x, [f <= alpha]) <= (f(x) - alpha)^+ / floor.

    The relative slack absorbs the upward bias of the empirical slope floor,
    which is accurate to about one part in a thousand. Returns (passed,
    witness); witness is a violating point or None.
    """
    if slope_floor <= 0:
        raise ValueError("requires a validated positive slope floor")
    lo, hi = (np.asarray(region[0], dtype=float), np.asarray(region[1], dtype=float))
    rng = split_rng(seed, "aze", alpha)
    pts = lo + (hi - lo) * rng.uniform(size=(n_samples, len(lo)))
    fx = np.asarray(f.eval(pts), dtype=float)
    keep = np.isfinite(fx)
    pts, fx = pts[keep], fx[keep]
    dist = np.asarray(f.sublevel(alpha).distance(pts))
    bound = np.maximum(fx - alpha, 0.0) / slope_floor * (1.0 + rel_tol) + tol
    bad = dist > bound
    if np.any(bad):
        return False, pts[int(np.argmax(dist - bound))]
    return True, None


GALLERY = {
    "norm": lambda dim=2: NormFunction(dim),
    "tube": lambda dim=2: TubeFunction(),
    "gauge": lambda dim=2: GaugeFunction(),
}


def get_function(name: str, dim: int = 2) -> QuasiconvexFunction:
    """Gallery lookup; supports 'localized:<name>:<cx>,<cy>:<delta>'."""
    if name.startswith("localized:"):
        try:
            _, base_name, center_str, delta_str = name.split(":")
            center = [float(c) for c in center_str.split(",")]
            delta = float(delta_str)
        except ValueError as exc:
            raise ValueError(f"bad localized name {name!r}") from exc
        return localize(get_function(base_name, dim=dim), center, delta)
    if name not in GALLERY:
        raise ValueError(f"unknown gallery function {name!r}")
    return GALLERY[name](dim=dim)
