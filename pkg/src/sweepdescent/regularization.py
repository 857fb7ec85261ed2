"""Max-convolution regularization of quasiconvex functions.

The eps-regularization of f is the unique function whose alpha-sublevel set
is the alpha-sublevel set of f dilated by the closed eps-ball; pointwise it
equals the infimum of f over the eps-ball around the query point. Evaluation
runs a bisection on the level alpha solving d(x, [f <= alpha]) = eps, which
also yields the base point z = proj(x; [f <= f_eps(x)]) with f(z) = f_eps(x).
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .errors import (BisectionFailure, DegenerateDirection, DomainError,
                     OutOfReach)
from .functions import QuasiconvexFunction, _rows, slope
from .geometry import (ConvexSetOracle, DilatedSet, outward_normals,
                       sample_boundary)

EVAL_BISECT_TOL = 1e-10


class RegularizedFunction(QuasiconvexFunction):
    """Quasiconvex function with every sublevel set dilated by eps."""

    def __init__(self, base: QuasiconvexFunction, eps: float):
        if eps <= 0:
            raise ValueError("regularization radius must be positive")
        self.base = base
        self.eps = float(eps)
        self.name = f"{base.name}~{eps:g}"
        self.dim = base.dim
        self.inf_value = base.inf_value
        self.level_hi = base.level_hi
        self.domain = DilatedSet(base.domain, eps)
        self.default_window = getattr(base, "default_window", (0.5, 1.5))

    def eval(self, x):
        x2, single = _rows(x)
        vals = self._eval_batch(x2)
        return float(vals[0]) if single else vals

    def _eval_batch(self, pts):
        m = len(pts)
        fx = np.asarray(self.base.eval(pts), dtype=float)
        hi = np.where(np.isfinite(fx), fx, np.inf)
        if self.level_hi is not None:
            hi = np.minimum(np.where(np.isfinite(hi), hi, self.level_hi),
                            self.level_hi)
        if np.any(~np.isfinite(hi)):
            raise DomainError("no finite bracket level for evaluation")
        lo = np.full(m, self.inf_value)
        out = np.full(m, np.inf)
        feasible_hi = self.base.level_distance(hi, pts) <= self.eps + 1e-12
        at_bottom = self.base.level_distance(lo, pts) <= self.eps
        out[at_bottom] = self.inf_value
        todo = feasible_hi & ~at_bottom
        lo_t, hi_t, pts_t = lo[todo], hi[todo], pts[todo]
        for _ in range(60):
            if not len(lo_t) or float(np.max(hi_t - lo_t)) < EVAL_BISECT_TOL:
                break
            mid = 0.5 * (lo_t + hi_t)
            reach = self.base.level_distance(mid, pts_t) <= self.eps
            hi_t = np.where(reach, mid, hi_t)
            lo_t = np.where(reach, lo_t, mid)
        if len(lo_t):
            residual = self.base.level_distance(hi_t, pts_t) - self.eps
            if float(np.max(residual)) > 1e-8:
                raise BisectionFailure("level-distance map is not monotone")
            out[todo] = hi_t
        return out

    def sublevel(self, alpha: float) -> ConvexSetOracle:
        return DilatedSet(self.base.sublevel(self.base.clamp_level(alpha)), self.eps)

    def level_bbox(self, alpha: float):
        lo, hi = self.base.level_bbox(self.base.clamp_level(alpha))
        return lo - self.eps, hi + self.eps

    def level_project(self, alphas, points):
        pts = np.asarray(points, dtype=float)
        alphas = np.asarray(alphas, dtype=float)
        z = self.base.level_project(alphas, pts)
        delta = pts - z
        dist = np.linalg.norm(delta, axis=1)
        out = dist > self.eps
        res = pts.copy()
        if np.any(out):
            res[out] = z[out] + delta[out] * (self.eps / dist[out])[:, None]
        return res

    def level_distance(self, alphas, points):
        return np.maximum(
            self.base.level_distance(alphas, points) - self.eps, 0.0
        )


def regularize(f: QuasiconvexFunction, eps: float) -> RegularizedFunction:
    """Wrap f so that every sublevel oracle is the eps-dilation of f's."""
    return RegularizedFunction(f, eps)


def eval_regularized(freg: RegularizedFunction, x):
    """Value of the regularized function at x (+inf outside its domain)."""
    return freg.eval(x)


def base_point(freg: RegularizedFunction, x, warn_non_unique: bool = True):
    """Nearest point of [f <= f_eps(x)]; carries the regularized value.

    Below the bottom level the projection is still returned, but the defining
    level is not unique there, which is reported as a warning.
    """
    x2, single = _rows(x)
    vals = np.asarray(freg.eval(x2), dtype=float)
    if np.any(~np.isfinite(vals)):
        raise DomainError("base point requested outside the regularized domain")
    if warn_non_unique and np.any(vals <= freg.inf_value + EVAL_BISECT_TOL):
        warnings.warn("base point at the bottom level is not level-unique")
    z = freg.base.level_project(vals, x2)
    return z[0] if single else z


def semigroup_check(f: QuasiconvexFunction, eps1: float, eps2: float, x,
                    tol: float = 1e-6) -> bool:
    """Regularizing by eps1 + eps2 equals regularizing twice, pointwise."""
    whole = regularize(f, eps1 + eps2).eval(x)
    nested = regularize(regularize(f, eps1), eps2).eval(x)
    if np.isinf(whole) and np.isinf(nested):
        return True
    return abs(whole - nested) <= tol


def slope_inequality_check(f: QuasiconvexFunction, eps: float, x,
                           slope_tol: float = 1e-3, seed: int = 0) -> bool:
    """Slope of the regularization dominates the slope at its base point."""
    freg = regularize(f, eps)
    z = base_point(freg, x, warn_non_unique=False)
    s_reg = slope(freg, x, seed=seed).value
    s_base = slope(f, z, seed=seed).value
    return s_reg >= s_base - slope_tol


def complement_projection(freg: RegularizedFunction, alpha: float, x,
                          tol: float = 1e-12):
    """Nearest point of the closed complement of int [f_eps <= alpha].

    For x strictly between the base sublevel set and the dilated boundary the
    projection is the base projection pushed out radially to distance eps;
    points already outside the open dilated set are their own projection.
    """
    x2, single = _rows(x)
    alphas = np.full(len(x2), freg.base.clamp_level(alpha))
    z = freg.base.level_project(alphas, x2)
    delta = x2 - z
    dist = np.linalg.norm(delta, axis=1)
    if np.any(dist <= tol):
        bad = int(np.argmin(dist))
        if bool(freg.base.sublevel(alpha).membership(x2[bad], tol=tol)):
            raise OutOfReach(
                "point lies in the base sublevel set, beyond the prox-regular reach"
            )
        raise DegenerateDirection("projection direction collapsed")
    res = np.where((dist >= freg.eps)[:, None], x2,
                   z + delta * (freg.eps / dist)[:, None])
    return res[0] if single else res


@dataclass
class ProxRadiusEstimate:
    """Estimated minimal prox-regularity radius of a sublevel complement."""

    level: float
    r_hat: float
    sample_count: int
    skipped_corners: int = 0


def prox_radius_estimate(f: QuasiconvexFunction, alpha: float,
                         n_samples: int = 600, seed: int = 0) -> ProxRadiusEstimate:
    """Minimal internal curvature radius of the sublevel boundary.

    Pairs of nearby boundary samples (b, b') with outward normals n, n' give
    the secant ratio ||b - b'||^2 / <b - b', n - n'>, which equals the radius
    exactly on circular arcs; the minimum over close pairs estimates the
    prox-regularity radius of the complement. One refinement pass re-samples
    at spacing r_hat / 20. Corner samples are skipped and counted.
    """
    oracle = f.sublevel(alpha)
    lo, hi = f.level_bbox(alpha)
    resolution = float(np.linalg.norm(hi - lo)) * np.pi / max(n_samples, 32)
    r_hat, count, skipped = np.inf, 0, 0
    for _ in range(2):
        sample = sample_boundary(oracle, resolution, seed=seed)
        pts = sample.points
        normals, ok = outward_normals(oracle, pts, strict=False)
        skipped += int(np.sum(~ok))
        pts, normals = pts[ok], normals[ok]
        count = len(pts)
        ratios = _secant_ratios(pts, normals, oracle.dim, resolution)
        if len(ratios):
            r_hat = float(np.min(ratios))
        next_res = max(r_hat / 20.0, 1e-4)
        if not np.isfinite(r_hat) or abs(next_res - resolution) < 0.25 * resolution:
            break
        resolution = next_res
    return ProxRadiusEstimate(level=alpha, r_hat=float(r_hat),
                              sample_count=count, skipped_corners=skipped)


def _secant_ratios(pts, normals, dim, resolution):
    if len(pts) < 2:
        return np.zeros(0)
    if dim == 2:
        center = pts.mean(axis=0)
        order = np.argsort(np.arctan2(pts[:, 1] - center[1], pts[:, 0] - center[0]))
        b, n = pts[order], normals[order]
        db = np.roll(b, -1, axis=0) - b
        dn = np.roll(n, -1, axis=0) - n
    else:
        pairs = np.array(sorted(cKDTree(pts).query_pairs(3.0 * resolution)))
        if len(pairs) == 0:
            return np.zeros(0)
        db = pts[pairs[:, 1]] - pts[pairs[:, 0]]
        dn = normals[pairs[:, 1]] - normals[pairs[:, 0]]
    num = np.einsum("ij,ij->i", db, db)
    den = np.einsum("ij,ij->i", db, dn)
    good = den > 1e-9 * np.sqrt(num)
    return num[good] / den[good]
