"""Oracle-based convex set primitives.

Every set is exposed through the same oracle surface: membership test, metric
projection, distance, a Slater (interior) point, and a signed boundary
distance where one is cheap. Projections are exact for the analytic shapes
(balls, hulls of two balls, dilations) and tolerance-bounded for the generic
cutting-plane fallback and for intersections (Dykstra).

All point-valued operations accept a single point of shape (d,) or a batch of
shape (n, d) and return the matching shape.
"""

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .errors import DegenerateNormal, EmptySample, NonConvergence
from .rng import split_rng, unit_directions

TOL_PROJ = 1e-9
BOUNDARY_TOL = 1e-7
MAX_CUTS = 10_000
PROBE_STEP = 1e-5


def _atleast_2d(x):
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        return x[None, :], True
    return x, False


def _restore(x, single):
    return x[0] if single else x


class ConvexSetOracle:
    """Closed convex set queried through membership / projection / distance."""

    kind = "analytic"
    dim: int
    interior_point: np.ndarray

    def project(self, x):
        raise NotImplementedError

    def membership(self, x, tol: float = 0.0):
        x2, single = _atleast_2d(x)
        inside = self.distance(x2) <= tol
        return _restore(inside, single)

    def distance(self, x):
        x2, single = _atleast_2d(x)
        d = np.linalg.norm(x2 - self.project(x2), axis=1)
        return _restore(d, single)

    def signed_boundary_distance(self, x):
        """Distance to the boundary, negative inside. Exact for analytic sets."""
        raise NotImplementedError


class FullSpaceSet(ConvexSetOracle):
    """The whole space; domain oracle for finite-valued functions."""

    def __init__(self, dim: int):
        self.dim = dim
        self.interior_point = np.zeros(dim)

    def project(self, x):
        return np.asarray(x, dtype=float)

    def membership(self, x, tol: float = 0.0):
        x2, single = _atleast_2d(x)
        return _restore(np.ones(len(x2), dtype=bool), single)

    def distance(self, x):
        x2, single = _atleast_2d(x)
        return _restore(np.zeros(len(x2)), single)

    def signed_boundary_distance(self, x):
        x2, single = _atleast_2d(x)
        return _restore(np.full(len(x2), -np.inf), single)


class BallSet(ConvexSetOracle):
    """Closed ball; radius zero gives a single point."""

    def __init__(self, center, radius: float):
        if radius < 0:
            raise ValueError("ball radius must be nonnegative")
        self.center = np.asarray(center, dtype=float)
        self.radius = float(radius)
        self.dim = self.center.shape[0]
        self.interior_point = self.center.copy()

    def project(self, x):
        x2, single = _atleast_2d(x)
        delta = x2 - self.center
        norms = np.linalg.norm(delta, axis=1)
        out = norms > self.radius
        scale = np.ones_like(norms)
        scale[out] = self.radius / norms[out]
        return _restore(self.center + delta * scale[:, None], single)

    def distance(self, x):
        x2, single = _atleast_2d(x)
        d = np.maximum(np.linalg.norm(x2 - self.center, axis=1) - self.radius, 0.0)
        return _restore(d, single)

    def membership(self, x, tol: float = 0.0):
        x2, single = _atleast_2d(x)
        inside = np.linalg.norm(x2 - self.center, axis=1) <= self.radius + tol
        return _restore(inside, single)

    def signed_boundary_distance(self, x):
        x2, single = _atleast_2d(x)
        return _restore(np.linalg.norm(x2 - self.center, axis=1) - self.radius, single)


class TwoBallHullSet(ConvexSetOracle):
    """Convex hull of two closed balls.

    Covers balls (coincident centers), capsules (equal radii) and the general
    two-disk hull. Works in any dimension by reduction to the plane spanned by
    the center axis and the radial offset of the query point.
    """

    def __init__(self, center1, radius1: float, center2, radius2: float):
        c1 = np.asarray(center1, dtype=float)
        c2 = np.asarray(center2, dtype=float)
        if radius1 < radius2:
            c1, c2 = c2, c1
            radius1, radius2 = radius2, radius1
        self.c1, self.c2 = c1, c2
        self.r1, self.r2 = float(radius1), float(radius2)
        self.dim = c1.shape[0]
        self.axis_len = float(np.linalg.norm(c2 - c1))
        # One ball swallows the other: plain ball geometry.
        self.nested = self.axis_len + self.r2 <= self.r1 + 1e-15
        if not self.nested:
            self.axis = (c2 - c1) / self.axis_len
            self.normal_axial = (self.r1 - self.r2) / self.axis_len  # sin of tangent tilt
            self.normal_radial = np.sqrt(max(1.0 - self.normal_axial**2, 0.0))
            # Tangent endpoints in (axial, radial) section coordinates.
            self.p1 = np.array([self.r1 * self.normal_axial, self.r1 * self.normal_radial])
            self.p2 = np.array(
                [self.axis_len + self.r2 * self.normal_axial, self.r2 * self.normal_radial]
            )
            seg = self.p2 - self.p1
            self.seg_len = float(np.linalg.norm(seg))
            self.seg_dir = seg / self.seg_len if self.seg_len > 0 else np.array([1.0, 0.0])
        self.interior_point = self.c1.copy()

    def _section(self, x2):
        """Split points into axial coordinate, radial coordinate, radial unit."""
        rel = x2 - self.c1
        a = rel @ self.axis
        radial_vec = rel - a[:, None] * self.axis
        rho = np.linalg.norm(radial_vec, axis=1)
        safe = np.where(rho > 0, rho, 1.0)
        w = radial_vec / safe[:, None]
        # Arbitrary perpendicular for exactly-axial points (radial part is 0
        # in every formula below, so the choice never leaks into results).
        return a, rho, w

    def _section_project(self, a, rho):
        """Exact projection in the 2d section; returns (a', rho')."""
        n = len(a)
        best = np.stack([a, rho], axis=1).copy()
        best_d = np.full(n, np.inf)
        inside = self._section_membership(a, rho)

        # Candidate: cap arc of ball 1 (outward directions tilted below the tangent).
        d1 = np.hypot(a, rho)
        ok1 = d1 > 1e-150
        dir_a = np.where(ok1, a / np.where(ok1, d1, 1.0), 0.0)
        valid1 = ok1 & (dir_a <= self.normal_axial + 1e-12)
        cand = np.stack([a, rho], axis=1) * (self.r1 / np.where(ok1, d1, 1.0))[:, None]
        dist = np.abs(d1 - self.r1)
        upd = valid1 & (dist < best_d)
        best[upd] = cand[upd]
        best_d[upd] = dist[upd]

        # Candidate: cap arc of ball 2.
        a2 = a - self.axis_len
        d2 = np.hypot(a2, rho)
        ok2 = d2 > 1e-150
        dir_a2 = np.where(ok2, a2 / np.where(ok2, d2, 1.0), 0.0)
        valid2 = ok2 & (dir_a2 >= self.normal_axial - 1e-12)
        cand2 = np.stack([a2, rho], axis=1) * (self.r2 / np.where(ok2, d2, 1.0))[:, None]
        cand2[:, 0] += self.axis_len
        dist2 = np.abs(d2 - self.r2)
        upd = valid2 & (dist2 < best_d)
        best[upd] = cand2[upd]
        best_d[upd] = dist2[upd]

        # Candidate: tangent segment (always valid once clamped).
        q = np.stack([a, rho], axis=1)
        s = np.clip((q - self.p1) @ self.seg_dir, 0.0, self.seg_len)
        cand3 = self.p1 + s[:, None] * self.seg_dir
        dist3 = np.linalg.norm(q - cand3, axis=1)
        upd = dist3 < best_d
        best[upd] = cand3[upd]
        best_d[upd] = dist3[upd]

        best[inside] = np.stack([a, rho], axis=1)[inside]
        best_d[inside] = 0.0
        return best[:, 0], best[:, 1], best_d

    def _section_membership(self, a, rho):
        in1 = np.hypot(a, rho) <= self.r1
        in2 = np.hypot(a - self.axis_len, rho) <= self.r2
        q = np.stack([a, rho], axis=1)
        s = (q - self.p1) @ self.seg_dir
        below = (q - self.p1) @ np.array([self.normal_axial, self.normal_radial]) <= 0.0
        in_cone = (s >= 0.0) & (s <= self.seg_len) & below
        return in1 | in2 | in_cone

    def project(self, x):
        x2, single = _atleast_2d(x)
        if self.nested:
            return _restore(BallSet(self.c1, self.r1).project(x2), single)
        a, rho, w = self._section(x2)
        pa, prho, _ = self._section_project(a, rho)
        out = self.c1 + pa[:, None] * self.axis + prho[:, None] * w
        return _restore(out, single)

    def membership(self, x, tol: float = 0.0):
        x2, single = _atleast_2d(x)
        if self.nested:
            return _restore(BallSet(self.c1, self.r1).membership(x2, tol=tol), single)
        if tol == 0.0:
            a, rho, _ = self._section(x2)
            return _restore(self._section_membership(a, rho), single)
        return _restore(self.distance(x2) <= tol, single)

    def distance(self, x):
        x2, single = _atleast_2d(x)
        if self.nested:
            return _restore(BallSet(self.c1, self.r1).distance(x2), single)
        a, rho, _ = self._section(x2)
        _, _, d = self._section_project(a, rho)
        return _restore(d, single)

    def signed_boundary_distance(self, x):
        x2, single = _atleast_2d(x)
        if self.nested:
            return _restore(BallSet(self.c1, self.r1).signed_boundary_distance(x2), single)
        a, rho, _ = self._section(x2)
        # Distance to each boundary piece as a set: two cap arcs and the
        # tangent segment (the section is mirror-symmetric, rho >= 0).
        d1 = np.hypot(a, rho)
        dir_a = np.where(d1 > 0, a / np.where(d1 > 0, d1, 1.0), -1.0)
        arc1 = np.where(
            dir_a <= self.normal_axial,
            np.abs(d1 - self.r1),
            np.linalg.norm(np.stack([a, rho], axis=1) - self.p1, axis=1),
        )
        a2 = a - self.axis_len
        d2 = np.hypot(a2, rho)
        dir_a2 = np.where(d2 > 0, a2 / np.where(d2 > 0, d2, 1.0), 1.0)
        arc2 = np.where(
            dir_a2 >= self.normal_axial,
            np.abs(d2 - self.r2),
            np.linalg.norm(np.stack([a, rho], axis=1) - self.p2, axis=1),
        )
        q = np.stack([a, rho], axis=1)
        s = np.clip((q - self.p1) @ self.seg_dir, 0.0, self.seg_len)
        seg = np.linalg.norm(q - (self.p1 + s[:, None] * self.seg_dir), axis=1)
        dist = np.minimum(np.minimum(arc1, arc2), seg)
        sign = np.where(self._section_membership(a, rho), -1.0, 1.0)
        return _restore(sign * dist, single)


class DilatedSet(ConvexSetOracle):
    """Minkowski sum base + eps * unit ball, through the base oracle."""

    kind = "dilated"

    def __init__(self, base: ConvexSetOracle, eps: float):
        if eps <= 0:
            raise ValueError("dilation radius must be positive")
        self.base = base
        self.eps = float(eps)
        self.dim = base.dim
        self.interior_point = np.asarray(base.interior_point, dtype=float)

    def project(self, x):
        x2, single = _atleast_2d(x)
        z = self.base.project(x2)
        delta = x2 - z
        dist = np.linalg.norm(delta, axis=1)
        out = dist > self.eps
        res = x2.copy()
        if np.any(out):
            res[out] = z[out] + delta[out] * (self.eps / dist[out])[:, None]
        return _restore(res, single)

    def distance(self, x):
        x2, single = _atleast_2d(x)
        return _restore(np.maximum(self.base.distance(x2) - self.eps, 0.0), single)

    def membership(self, x, tol: float = 0.0):
        x2, single = _atleast_2d(x)
        return _restore(self.base.distance(x2) <= self.eps + tol, single)

    def signed_boundary_distance(self, x):
        x2, single = _atleast_2d(x)
        return _restore(self.base.signed_boundary_distance(x2) - self.eps, single)


def ball_lens_project(x2: np.ndarray, ball: "BallSet", row_feasible, row_project,
                      row_distance, n_theta: int = 96, tol: float = 1e-10):
    """Exact 2d projection onto (convex set A) intersect (ball), batched.

    The per-row set A is reached through callables taking (row_indices, pts).
    The projection is either A's projection of x (if inside the ball), the
    ball's projection (if inside A), or a crossing point of the two
    boundaries, found by bisecting sign changes of A-membership along the
    ball circle. A grazing tangency (single-point intersection) falls back
    to the circle point closest to A.
    """
    m = len(x2)
    rows = np.arange(m)
    best = np.full((m, 2), np.nan)
    best_d = np.full(m, np.inf)

    inside = np.asarray(row_feasible(rows, x2)) & np.asarray(ball.membership(x2))
    best[inside] = x2[inside]
    best_d[inside] = 0.0

    # When one set's own projection is feasible for the other it is already
    # the metric projection of the intersection; only the remaining rows
    # (facing a corner wedge) need boundary-crossing candidates.
    pa = np.asarray(row_project(rows, x2))
    va = ~inside & (np.asarray(ball.distance(pa)) <= tol)
    best[va] = pa[va]
    best_d[va] = np.linalg.norm(x2[va] - pa[va], axis=1)
    pb = np.asarray(ball.project(x2))
    vb = ~inside & ~va & (np.asarray(row_distance(rows, pb)) <= tol)
    best[vb] = pb[vb]
    best_d[vb] = np.linalg.norm(x2[vb] - pb[vb], axis=1)

    open_rows = np.flatnonzero(~(inside | va | vb))
    if not len(open_rows):
        return best
    theta = np.linspace(0.0, 2.0 * np.pi, n_theta, endpoint=False)

    def ring(th):
        return ball.center + ball.radius * np.stack([np.cos(th), np.sin(th)], axis=-1)

    k = len(open_rows)
    ring_pts = np.broadcast_to(ring(theta), (k, n_theta, 2)).reshape(-1, 2)
    ring_rows = np.repeat(open_rows, n_theta)
    feas = np.asarray(row_feasible(ring_rows, ring_pts)).reshape(k, n_theta)
    nxt = np.roll(feas, -1, axis=1)
    sub_i, flip_j = np.nonzero(feas != nxt)
    if len(sub_i):
        flip_r = open_rows[sub_i]
        gap = 2.0 * np.pi / n_theta
        th_in = theta[flip_j] + np.where(feas[sub_i, flip_j], 0.0, gap)
        th_out = theta[flip_j] + np.where(feas[sub_i, flip_j], gap, 0.0)
        for _ in range(46):
            mid = 0.5 * (th_in + th_out)
            ok = np.asarray(row_feasible(flip_r, ring(mid)))
            th_in = np.where(ok, mid, th_in)
            th_out = np.where(ok, th_out, mid)
        corners = ring(th_in)
        d = np.linalg.norm(x2[flip_r] - corners, axis=1)
        for i in np.argsort(d)[::-1]:
            r = flip_r[i]
            if d[i] < best_d[r] or not np.isfinite(best_d[r]):
                best[r], best_d[r] = corners[i], d[i]

    missing = ~np.isfinite(best_d)
    if np.any(missing):
        # Tangency: the intersection degenerates to (nearly) one circle point.
        sub = np.flatnonzero(missing)
        sel = np.searchsorted(open_rows, sub)
        dist_ring = np.asarray(
            row_distance(ring_rows, ring_pts)).reshape(k, n_theta)[sel]
        j = np.argmin(dist_ring, axis=1)
        lo = theta[j] - 2.0 * np.pi / n_theta
        hi = theta[j] + 2.0 * np.pi / n_theta
        for _ in range(60):
            t1 = lo + (hi - lo) / 3.0
            t2 = hi - (hi - lo) / 3.0
            d1 = np.asarray(row_distance(sub, ring(t1)))
            d2 = np.asarray(row_distance(sub, ring(t2)))
            take = d1 < d2
            hi = np.where(take, t2, hi)
            lo = np.where(take, lo, t1)
        th = 0.5 * (lo + hi)
        resid = np.asarray(row_distance(sub, ring(th)))
        if float(np.max(resid)) > 1e-6:
            raise NonConvergence("lens projection found no feasible point")
        best[sub] = ring(th)
    return best


class IntersectionSet(ConvexSetOracle):
    """Intersection of two convex oracles.

    In the plane, when the second set is a ball, the projection is computed
    exactly from boundary candidates; otherwise Dykstra's scheme is used.
    Plain alternating projections only reach a feasible point, which breaks
    the nonexpansiveness and distance contracts, so the correction terms of
    Dykstra's algorithm are required on that path.
    """

    kind = "intersection"

    def __init__(self, first: ConvexSetOracle, second: ConvexSetOracle,
                 interior_point=None, tol: float = TOL_PROJ, max_iter: int = MAX_CUTS):
        self.first = first
        self.second = second
        self.dim = first.dim
        self.tol = tol
        self.max_iter = max_iter
        if interior_point is None:
            interior_point = find_interior_point(first, second)
        self.interior_point = np.asarray(interior_point, dtype=float)

    def project(self, x):
        x2, single = _atleast_2d(x)
        if self.dim == 2 and isinstance(self.second, BallSet):
            out = ball_lens_project(
                x2, self.second,
                lambda rows, pts: self.first.membership(pts),
                lambda rows, pts: self.first.project(pts),
                lambda rows, pts: self.first.distance(pts))
            return _restore(out, single)
        return _restore(self._dykstra(x2), single)

    def _dykstra(self, x2):
        y = x2.copy()
        p = np.zeros_like(x2)
        q = np.zeros_like(x2)
        prev = None
        for _ in range(self.max_iter):
            u = self.first.project(y + p)
            p = y + p - u
            y = self.second.project(u + q)
            q = u + q - y
            if prev is not None and float(np.max(np.linalg.norm(y - prev, axis=1))) < self.tol:
                return y
            prev = y.copy()
        raise NonConvergence("Dykstra projection did not reach tolerance")

    def membership(self, x, tol: float = 0.0):
        x2, single = _atleast_2d(x)
        both = np.asarray(self.first.membership(x2, tol=tol)) & np.asarray(
            self.second.membership(x2, tol=tol)
        )
        return _restore(both, single)

    def signed_boundary_distance(self, x):
        # Exact for interior points (depth = min of the two depths); outside
        # it lower-bounds the true distance near corner wedges.
        x2, single = _atleast_2d(x)
        sa = np.asarray(self.first.signed_boundary_distance(x2))
        sb = np.asarray(self.second.signed_boundary_distance(x2))
        return _restore(np.maximum(sa, sb), single)


def find_interior_point(first: ConvexSetOracle, second: ConvexSetOracle,
                        seed: int = 0, n_samples: int = 256) -> np.ndarray:
    """Search for a common interior point of two oracles (Slater point)."""
    rng = split_rng(seed, "interior", n_samples)
    anchors = np.stack([first.interior_point, second.interior_point])
    scale = max(1.0, float(np.linalg.norm(anchors[0] - anchors[1])))
    pts = np.concatenate([
        anchors,
        anchors.mean(axis=0)[None, :],
        anchors.mean(axis=0) + scale * rng.normal(size=(n_samples, first.dim)),
    ])
    # Alternating projections drive the cloud into the intersection; the
    # centroid of distinct feasible points then sits strictly inside.
    for _ in range(400):
        pts = second.project(first.project(pts))
        if (np.all(first.membership(pts, tol=BOUNDARY_TOL))
                and np.all(second.membership(pts, tol=BOUNDARY_TOL))):
            break
    candidates = np.concatenate([pts, pts.mean(axis=0)[None, :]])
    depth = -np.maximum(
        np.asarray(first.signed_boundary_distance(candidates)),
        np.asarray(second.signed_boundary_distance(candidates)),
    )
    i = int(np.argmax(depth))
    if depth[i] <= BOUNDARY_TOL:
        raise NonConvergence("no interior point found for intersection")
    return candidates[i]


def _bisect_boundary(membership, inner, outer, iters: int = 80):
    """Boundary point on the segment [inner, outer]; inner feasible, outer not."""
    lo, hi = np.asarray(inner, dtype=float), np.asarray(outer, dtype=float)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if membership(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _project_halfspaces(x, normals, offsets, max_pivots: int = 400):
    """Projection of x onto {y : normals @ y <= offsets} by dual active set."""
    y = x.copy()
    active: list[int] = []
    for _ in range(max_pivots):
        slack = normals @ y - offsets
        worst = int(np.argmax(slack))
        if slack[worst] <= 1e-12:
            return y
        if worst not in active:
            active.append(worst)
        while True:
            a_w = normals[active]
            b_w = offsets[active]
            gram = a_w @ a_w.T
            lam, *_ = np.linalg.lstsq(gram, a_w @ x - b_w, rcond=None)
            if np.all(lam >= -1e-12):
                break
            active.pop(int(np.argmin(lam)))
            if not active:
                lam = np.zeros(0)
                a_w = normals[:0]
                break
        y = x - a_w.T @ lam if len(active) else x.copy()
    raise NonConvergence("halfspace projection active-set loop stalled")


def generic_projection_cutting_plane(membership, slater, x, tol: float = TOL_PROJ,
                                     max_iter: int = MAX_CUTS, probe: float = PROBE_STEP):
    """Metric projection onto a convex set given only a membership oracle.

    Alternates (a) bisection along [slater, y] to a boundary point, (b) a
    supporting halfspace there from finite-difference boundary probes, and
    (c) exact projection of x onto the accumulated halfspaces.
    """
    x = np.asarray(x, dtype=float)
    slater = np.asarray(slater, dtype=float)
    if membership(x):
        return x.copy()
    dim = x.shape[0]
    normals = np.zeros((0, dim))
    offsets = np.zeros(0)
    y = x.copy()
    for _ in range(max_iter):
        if membership(y):
            return y
        b_pt = _bisect_boundary(membership, slater, y)
        ray = y - slater
        ray /= np.linalg.norm(ray)
        # Tangent-plane fit from boundary points of nearby parallel rays.
        basis = [v for v in np.eye(dim) if abs(v @ ray) < 0.999]
        frame = np.linalg.qr(np.column_stack([ray] + basis))[0].T[1:dim]
        span = []
        reach = 2.0 * np.linalg.norm(y - slater) + 1.0
        for tangent in frame:
            shifted = slater + probe * tangent
            nb = _bisect_boundary(membership, shifted, shifted + reach * ray)
            span.append(nb - b_pt)
        normal = _orthogonal_unit(np.asarray(span), ray, dim)
        slack = max(float(np.abs(np.asarray(span) @ normal).max()), 0.0) if span else 0.0
        normals = np.vstack([normals, normal])
        offsets = np.append(offsets, normal @ b_pt + slack + 1e-12)
        if len(normals) > 120:
            normals, offsets = normals[-120:], offsets[-120:]
        y_new = _project_halfspaces(x, normals, offsets)
        if np.linalg.norm(y_new - y) < tol and membership(
            y_new + tol * (slater - y_new)
        ):
            return y_new
        y = y_new
    raise NonConvergence("cutting-plane projection exceeded max_iter")


def _orthogonal_unit(span, outward_hint, dim):
    """Unit vector orthogonal to the rows of span, oriented along the hint."""
    if len(span) == 0:
        normal = outward_hint
    else:
        _, _, vt = np.linalg.svd(np.atleast_2d(span), full_matrices=True)
        normal = vt[-1]
    if normal @ outward_hint < 0:
        normal = -normal
    return normal / np.linalg.norm(normal)


class CuttingPlaneSet(ConvexSetOracle):
    """Generic oracle built from a bare membership predicate and Slater point."""

    kind = "generic-cutting-plane"

    def __init__(self, membership_fn, slater, dim: int, tol: float = TOL_PROJ):
        self._membership = membership_fn
        self.dim = dim
        self.tol = tol
        self.interior_point = np.asarray(slater, dtype=float)

    def project(self, x):
        x2, single = _atleast_2d(x)
        out = np.stack(
            [
                generic_projection_cutting_plane(
                    self._membership, self.interior_point, row, tol=self.tol
                )
                for row in x2
            ]
        )
        return _restore(out, single)

    def membership(self, x, tol: float = 0.0):
        x2, single = _atleast_2d(x)
        res = np.array([bool(self._membership(row)) for row in x2])
        if tol > 0.0:
            res = res | (self.distance(x2) <= tol)
        return _restore(res, single)

    def signed_boundary_distance(self, x):
        x2, single = _atleast_2d(x)
        d = self.distance(x2)
        inside = np.array([bool(self._membership(row)) for row in x2])
        signed = np.where(inside, -_interior_depth(self, x2), d)
        return _restore(signed, single)


def _interior_depth(oracle, pts):
    """Crude interior depth for oracles without a closed form: ray probe."""
    depths = np.zeros(len(pts))
    for i, p in enumerate(pts):
        dirs = unit_directions(split_rng(0, "depth", i), 16, oracle.dim)
        lo = 0.0
        hi = 1.0
        while oracle.membership(p + hi * dirs[0]) and hi < 1e6:
            hi *= 2
        for _ in range(40):
            mid = 0.5 * (lo + hi)
            if all(oracle.membership(p + mid * d) for d in dirs):
                lo = mid
            else:
                hi = mid
        depths[i] = lo
    return depths


def project_convex(oracle: ConvexSetOracle, x):
    """Metric projection of x onto the oracle's set (identity inside)."""
    return oracle.project(x)


def dilate(oracle: ConvexSetOracle, eps: float) -> DilatedSet:
    """Oracle for the Minkowski dilation set + eps * unit ball."""
    return DilatedSet(oracle, eps)


@dataclass
class BoundarySample:
    """Points lying on a set boundary at a target spacing."""

    points: np.ndarray
    resolution: float

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)

    def __len__(self):
        return len(self.points)


def _ray_boundary_points(oracle: ConvexSetOracle, dirs: np.ndarray) -> np.ndarray:
    """Batched boundary points along rays from the interior point."""
    center = oracle.interior_point
    hi = np.ones(len(dirs))
    for _ in range(64):
        inside = np.asarray(oracle.membership(center + hi[:, None] * dirs))
        if not np.any(inside):
            break
        hi[inside] *= 2.0
    else:
        raise NonConvergence("set appears unbounded along a ray")
    lo = np.zeros(len(dirs))
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        inside = np.asarray(oracle.membership(center + mid[:, None] * dirs))
        lo = np.where(inside, mid, lo)
        hi = np.where(inside, hi, mid)
    return center + (0.5 * (lo + hi))[:, None] * dirs


def sample_boundary(oracle: ConvexSetOracle, resolution: float, seed: int = 0,
                    max_points: int = 200_000) -> BoundarySample:
    """Boundary sample by ray bisection from the interior point.

    d = 2 uses a deterministic angular sweep sized from a coarse perimeter
    estimate; d >= 3 uses seeded sphere directions. Duplicates closer than
    resolution / 2 are rejected.
    """
    dim = oracle.dim
    if dim == 2:
        t = np.linspace(0.0, 2 * np.pi, 65)[:-1]
        coarse = _ray_boundary_points(oracle, np.stack([np.cos(t), np.sin(t)], axis=1))
        perimeter = float(np.linalg.norm(np.roll(coarse, -1, axis=0) - coarse, axis=1).sum())
        count = min(max(int(np.ceil(perimeter / resolution)) * 2, 64), max_points)
        angles = np.linspace(0.0, 2 * np.pi, count + 1)[:-1]
        pts = _ray_boundary_points(oracle, np.stack([np.cos(angles), np.sin(angles)], axis=1))
    else:
        rng = split_rng(seed, "boundary", dim)
        coarse = _ray_boundary_points(oracle, unit_directions(rng, 128, dim))
        r_max = float(np.max(np.linalg.norm(coarse - oracle.interior_point, axis=1)))
        count = min(int(np.ceil((4.0 * r_max / resolution) ** (dim - 1))) + 64, max_points)
        pts = _ray_boundary_points(oracle, unit_directions(rng, count, dim))

    keep = _dedupe(pts, resolution / 2.0)
    return BoundarySample(points=pts[keep], resolution=resolution)


def _dedupe(pts, min_gap):
    tree = cKDTree(pts)
    keep = np.ones(len(pts), dtype=bool)
    for i, j in tree.query_pairs(min_gap):
        if keep[i] and keep[j]:
            keep[max(i, j)] = False
    return keep


def hausdorff_distance(a: BoundarySample, b: BoundarySample) -> float:
    """Max of the two directed sup-inf distances between the samples."""
    if len(a) == 0 or len(b) == 0:
        raise EmptySample("hausdorff_distance needs nonempty samples")
    tree_a = cKDTree(a.points)
    tree_b = cKDTree(b.points)
    d_ab = float(np.max(tree_b.query(a.points)[0]))
    d_ba = float(np.max(tree_a.query(b.points)[0]))
    return max(d_ab, d_ba)


def outward_normal(oracle: ConvexSetOracle, point, probe: float = PROBE_STEP,
                   corner_tol: float = 1e-3):
    """Unit outward normal at a boundary point.

    Seeds a direction from finite differences of the distance function, pushes
    an exterior probe and normalizes x - project(x). A second probe along the
    refined direction must agree, otherwise the point is treated as a corner.
    """
    b = np.asarray(point, dtype=float)
    if abs(float(oracle.signed_boundary_distance(b))) > BOUNDARY_TOL * 10:
        raise DegenerateNormal("query point is not on the boundary")
    normals = outward_normals(oracle, b[None, :], probe=probe, corner_tol=corner_tol)
    return normals[0]


def outward_normals(oracle: ConvexSetOracle, points, probe: float = PROBE_STEP,
                    corner_tol: float = 1e-3, strict: bool = True):
    """Vectorized outward normals.

    With strict=True a corner point raises DegenerateNormal; otherwise the
    pair (normals, ok_mask) is returned and corner rows are masked out.
    """
    pts = np.asarray(points, dtype=float)
    n, dim = pts.shape
    # Finite-difference seed from the signed boundary distance field.
    grad = np.zeros_like(pts)
    for axis in range(dim):
        off = np.zeros(dim)
        off[axis] = probe
        grad[:, axis] = (
            np.asarray(oracle.signed_boundary_distance(pts + off))
            - np.asarray(oracle.signed_boundary_distance(pts - off))
        ) / (2 * probe)
    norms = np.linalg.norm(grad, axis=1)
    bad_seed = norms < 1e-12
    norms[bad_seed] = 1.0
    seed_dir = grad / norms[:, None]

    def refine(direction):
        outside = pts + probe * direction
        feet = oracle.project(outside)
        delta = outside - feet
        dist = np.linalg.norm(delta, axis=1)
        ok = dist > probe * 1e-6
        out = direction.copy()
        out[ok] = delta[ok] / dist[ok][:, None]
        return out, ok

    n1, ok1 = refine(seed_dir)
    n_ret, ok2 = refine(n1)
    # At a corner the probe-projection is self-consistent for any direction
    # inside the normal cone, so the agreement test must re-probe from a
    # deliberately tilted direction: smooth points converge back, corners
    # keep the tilt.
    tangent = np.zeros_like(n_ret)
    idx = np.argmin(np.abs(n_ret), axis=1)
    tangent[np.arange(n), idx] = 1.0
    tangent -= n_ret * np.einsum("ij,ij->i", tangent, n_ret)[:, None]
    tangent /= np.maximum(np.linalg.norm(tangent, axis=1, keepdims=True), 1e-12)
    tilted = n_ret + 0.1 * tangent
    tilted /= np.linalg.norm(tilted, axis=1, keepdims=True)
    n_tst, ok3 = refine(tilted)
    agreement = np.einsum("ij,ij->i", n_ret, n_tst)
    corner = bad_seed | ~ok1 | ~ok2 | ~ok3 | (agreement < 1.0 - corner_tol)
    if np.any(corner) and strict:
        raise DegenerateNormal(
            f"no unique normal at rows {np.flatnonzero(corner).tolist()[:8]}"
        )
    if strict:
        return n_ret
    return n_ret, ~corner
