"""Batch property-verification harness with a structured diagnostics report.

Each check binds one verified property to a named, repeatable test with a
pass/fail verdict, a numeric margin and a witness on failure. Estimated
constants (slope floor, moving-map Lipschitz rate, prox radius, function
Lipschitz bound) are reported alongside and feed the sweeping consumers.
Probabilistic claims are reported as pass fractions over seeded samples,
never as proof verdicts.
"""

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DomainError, MissingConstants
from .functions import (LocalizedFunction, QuasiconvexFunction, limiting_slope,
                        localize, slope_values)
from .geometry import sample_boundary
from .regularization import (RegularizedFunction, base_point,
                             prox_radius_estimate, regularize)
from .rng import split_rng
from .sweeping import SweepingConfig

CRITICALITY_TOL = 1e-2


@dataclass
class CheckResult:
    """Outcome of one named property check."""

    name: str
    anchor: str
    passed: bool | None  # None marks a skipped check
    margin: float | None = None
    witness: list | None = None
    details: dict = field(default_factory=dict)


@dataclass
class DiagnosticsReport:
    """Estimated constants plus the ordered list of check outcomes."""

    constants: dict
    checks: list
    config: dict
    seed: int

    def get(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def passed_all(self) -> bool:
        return all(c.passed for c in self.checks if c.passed is not None)

    def failed_names(self) -> list:
        return [c.name for c in self.checks if c.passed is False]

    def require(self, *names: str) -> None:
        """Refuse to proceed when a prerequisite check failed or is missing."""
        for name in names:
            try:
                check = self.get(name)
            except KeyError as exc:
                raise MissingConstants(f"prerequisite check {name!r} missing") from exc
            if check.passed is not True:
                raise MissingConstants(f"prerequisite check {name!r} did not pass")

    def to_json_text(self) -> str:
        payload = {
            "constants": self.constants,
            "checks": [asdict(c) for c in sorted(self.checks, key=lambda c: c.name)],
            "config": self.config,
            "seed": self.seed,
        }
        return json.dumps(payload, sort_keys=True, indent=2, default=_json_default)


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _annulus_sample(f: QuasiconvexFunction, window, n: int, seed, tag: str):
    """Seeded points with function values inside the window."""
    lo_v, hi_v = window
    box_lo, box_hi = f.level_bbox(hi_v)
    rng = split_rng(seed, "annulus", tag)
    out = []
    for _ in range(200):
        pts = box_lo + (box_hi - box_lo) * rng.uniform(size=(4 * n, f.dim))
        vals = np.asarray(f.eval(pts), dtype=float)
        keep = np.isfinite(vals) & (vals >= lo_v) & (vals <= hi_v)
        out.append(pts[keep])
        if sum(len(o) for o in out) >= n:
            break
    pts = np.concatenate(out)
    if len(pts) < n:
        raise DomainError(f"could not sample {n} points with values in {window}")
    return pts[:n]


def estimate_slope_floor(f: QuasiconvexFunction, window, n_points: int = 160,
                         seed: int = 0) -> float:
    """Minimum slope estimate over seeded points of the level annulus."""
    pts = _annulus_sample(f, window, n_points, seed, "slope-floor")
    vals, _ = slope_values(f, pts, seed=seed)
    return float(np.min(vals))


def estimate_function_lipschitz(f: QuasiconvexFunction, window,
                                n_points: int = 160, seed: int = 0) -> float:
    """Maximum slope estimate over seeded points of the level annulus."""
    pts = _annulus_sample(f, window, n_points, seed, "func-lip")
    vals, _ = slope_values(f, pts, seed=seed)
    return float(np.max(vals[np.isfinite(vals)]))


def verify_moving_map_lipschitz(f: QuasiconvexFunction, alpha1: float,
                                alpha2: float, n_levels: int = 4,
                                slope_floor: float | None = None,
                                resolution: float = 0.01, seed: int = 0):
    """Hausdorff rate of the sublevel and complement moving maps.

    Directed distances are measured from boundary samples of the larger set
    with exact oracle distances, so the tolerance is 2 * resolution.
    Returns (sublevel check, complement check, direct rate estimate).
    """
    if slope_floor is None or slope_floor <= 0:
        raise MissingConstants("needs a validated positive slope floor")
    levels = np.linspace(alpha1, alpha2, n_levels)
    samples = {lvl: sample_boundary(f.sublevel(lvl), resolution, seed=seed)
               for lvl in levels}
    rate_bound = 1.0 / slope_floor
    margin_s, margin_u, direct = np.inf, np.inf, 0.0
    witness_s = witness_u = None
    for i, a in enumerate(levels):
        for b in levels[i + 1:]:
            gap = b - a
            pts_b = samples[b].points
            d_sub = float(np.max(f.level_distance(np.full(len(pts_b), a), pts_b)))
            depth = -np.asarray(f.sublevel(b).signed_boundary_distance(samples[a].points))
            d_comp = float(np.max(np.maximum(depth, 0.0)))
            bound = rate_bound * gap + 2.0 * resolution
            direct = max(direct, d_sub / gap)
            if bound - d_sub < margin_s:
                margin_s, witness_s = bound - d_sub, [float(a), float(b)]
            if bound - d_comp < margin_u:
                margin_u, witness_u = bound - d_comp, [float(a), float(b)]
    check_s = CheckResult(
        name="moving-map-lipschitz-sublevel",
        anchor="sublevel moving map is (1/slope-floor)-Lipschitz in Hausdorff distance",
        passed=bool(margin_s >= 0), margin=float(margin_s),
        witness=None if margin_s >= 0 else witness_s,
        details={"direct_rate": direct, "rate_bound": rate_bound,
                 "levels": levels.tolist(), "resolution": resolution})
    check_u = CheckResult(
        name="moving-map-lipschitz-complement",
        anchor="complement moving map is (1/slope-floor)-Lipschitz in Hausdorff distance",
        passed=bool(margin_u >= 0), margin=float(margin_u),
        witness=None if margin_u >= 0 else witness_u,
        details={"rate_bound": rate_bound, "resolution": resolution})
    return check_s, check_u, direct


def verify_H1_H3(f: QuasiconvexFunction, window, n_levels: int = 5,
                 seed: int = 0, slope_samples: int = 160):
    """The three standing regularity diagnostics over a level window.

    H1: sampled sublevel sets are bounded with interior points. H2: the slope
    stays bounded away from zero off the argmin. H3: the prox-regularity
    radius of the sublevel complements neither vanishes nor degenerates
    across the window (min > 1e-3 and min >= 0.1 * max).
    """
    lo_v, hi_v = window
    levels = np.linspace(lo_v, hi_v, n_levels)

    depths, bounded = [], True
    for lvl in levels:
        oracle = f.sublevel(lvl)
        try:
            sample = sample_boundary(oracle, 0.05, seed=seed)
            radius = float(np.max(np.linalg.norm(
                sample.points - oracle.interior_point, axis=1)))
            bounded &= np.isfinite(radius)
        except Exception:
            bounded = False
        depths.append(-float(oracle.signed_boundary_distance(oracle.interior_point)))
    h1 = CheckResult(
        name="h1-coercive-nonempty-interior",
        anchor="sublevel sets in the window are compact with interior points",
        passed=bool(bounded and min(depths) > 1e-9), margin=float(min(depths)),
        details={"levels": levels.tolist(), "interior_depths": depths})

    floor = estimate_slope_floor(f, window, n_points=slope_samples, seed=seed)
    h2 = CheckResult(
        name="h2-slope-floor",
        anchor="slope bounded away from zero on the window annulus",
        passed=bool(floor > 0.0), margin=floor, details={"slope_floor": floor})

    estimates = [prox_radius_estimate(f, lvl, seed=seed) for lvl in levels]
    r_hats = [e.r_hat for e in estimates]
    r_min, r_max = float(np.min(r_hats)), float(np.max(r_hats))
    degenerate = (r_min <= 1e-3) or (r_min < 0.1 * r_max)
    h3 = CheckResult(
        name="h3-complement-prox-radius",
        anchor="complement prox-regularity radius uniform over the window",
        passed=bool(not degenerate), margin=r_min,
        witness=None if not degenerate else [float(levels[int(np.argmin(r_hats))])],
        details={"levels": levels.tolist(), "r_hats": r_hats,
                 "skipped_corners": [e.skipped_corners for e in estimates]})
    return h1, h2, h3


def membership_U_epsilon(f: QuasiconvexFunction, eps: float, x,
                         crit_tol: float = CRITICALITY_TOL, seed: int = 0) -> bool:
    """Non-lower-criticality through the base point of the regularization."""
    freg = regularize(f, eps)
    val = float(freg.eval(x))
    if not np.isfinite(val):
        return False
    z = base_point(freg, x, warn_non_unique=False)
    return limiting_slope(f, z, seed=seed) > crit_tol


def probe_steepest_descent(freg: RegularizedFunction, n_starts: int,
                           cfg: SweepingConfig, window=None,
                           step_tol: float = 5e-2, step_fraction: float = 0.95,
                           seed: int = 0) -> CheckResult:
    """Empirical speed-slope product test along seeded descent trajectories.

    Starts are sampled from the window annulus, filtered to non-lower
    critical points, and each runs a forward sweep from its own value level.
    A start passes when the discrete speed times the local slope stays within
    step_tol of one on at least step_fraction of its steps. The reported
    fraction of passing starts is an empirical probe of the almost-everywhere
    statement, not a verdict on it.
    """
    if window is None:
        window = freg.default_window
    starts = _annulus_sample(freg, window, 3 * n_starts, seed, "probe-starts")
    keep = [x for x in starts
            if membership_U_epsilon(freg.base, freg.eps, x, seed=seed)]
    if len(keep) < n_starts:
        raise DomainError("not enough non-critical starts in the window")
    starts = np.stack(keep[:n_starts])

    alpha2s = np.asarray(freg.eval(starts), dtype=float)
    horizon = min(cfg.horizon, 0.8 * float(np.min(alpha2s) - freg.inf_value))
    k = cfg.steps
    times = (np.arange(k + 1) * horizon) / k
    pts = np.empty((k + 1, len(starts), freg.dim))
    pts[0] = starts
    for j in range(1, k + 1):
        pts[j] = freg.level_project(alpha2s - times[j], pts[j - 1])
    speeds = np.linalg.norm(np.diff(pts, axis=0), axis=2) / (horizon / k)
    slopes, _ = slope_values(freg, pts[1:].reshape(-1, freg.dim), seed=seed)
    products = speeds * slopes.reshape(k, len(starts))
    step_ok = np.abs(products - 1.0) <= step_tol
    per_start = step_ok.mean(axis=0)
    passing = per_start >= step_fraction
    fraction = float(np.mean(passing))
    return CheckResult(
        name="steepest-descent-probe",
        anchor="speed-slope product stays near one along descent trajectories",
        passed=None,  # thresholds belong to the caller; fraction is the result
        margin=fraction,
        details={"fraction": fraction, "n_starts": int(n_starts),
                 "step_tol": step_tol, "step_fraction": step_fraction,
                 "horizon": horizon, "steps": int(k),
                 "per_start_rate": per_start.tolist()})


def hoffmann_localization_check(f: QuasiconvexFunction, center, delta: float,
                                z, beta: float, tol: float = 1e-6) -> CheckResult:
    """Distance bound for the ball-localized function at one probe point.

    d(z, [h <= beta]) <= (delta + d(c, [f <= beta])) / (delta - d(c, [f <= beta]))
    * d(z, [f <= beta]), skipped when the denominator is not positive.
    """
    center = np.asarray(center, dtype=float)
    z = np.asarray(z, dtype=float)
    h = localize(f, center, delta)
    d_center = float(f.sublevel(beta).distance(center))
    denom = delta - d_center
    if denom <= 0:
        return CheckResult(
            name="localization-distance-bound",
            anchor="localized sublevel distances bounded by scaled base distances",
            passed=None, details={"reason": "denominator not positive",
                                  "d_center": d_center, "delta": delta})
    factor = (delta + d_center) / denom
    lhs = float(h.sublevel(beta).distance(z))
    rhs = factor * float(f.sublevel(beta).distance(z)) + tol
    return CheckResult(
        name="localization-distance-bound",
        anchor="localized sublevel distances bounded by scaled base distances",
        passed=bool(lhs <= rhs), margin=rhs - lhs,
        witness=None if lhs <= rhs else z.tolist(),
        details={"factor": factor, "lhs": lhs, "rhs": rhs, "beta": beta})


def grid_min_regularized(freg: RegularizedFunction, points, n: int = 41):
    """Brute-force min of the base over a polar grid of the dilation ball.

    Independent of the bisection path: evaluates the base function on an
    n x n (radius x angle) grid of the eps-ball and takes the minimum.
    """
    if freg.dim != 2:
        raise DomainError("polar grid oracle is two-dimensional")
    pts = np.asarray(points, dtype=float)
    radii = np.linspace(0.0, freg.eps, n)
    angles = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    rr, aa = np.meshgrid(radii, angles, indexing="ij")
    offsets = np.stack([rr * np.cos(aa), rr * np.sin(aa)], axis=-1).reshape(-1, 2)
    probes = pts[:, None, :] - offsets[None, :, :]
    vals = np.asarray(freg.base.eval(probes.reshape(-1, 2))).reshape(len(pts), -1)
    return np.min(vals, axis=1)


def _check_eval_consistency(freg, window, n_points, seed) -> CheckResult:
    # The grid oracle only supports the 1e-3 comparison where its error is
    # second order in the angular spacing: away from the bottom level (value
    # at least eps above the infimum), with the dilation ball inside the
    # base domain (no feasibility-corner pinning), and certified per point
    # against a once-refined grid.
    pts = _annulus_sample(freg, window, 3 * n_points, seed, "eval-consistency")
    vals = np.asarray(freg.eval(pts), dtype=float)
    depth = np.asarray(freg.base.domain.signed_boundary_distance(pts))
    keep = (vals >= freg.inf_value + freg.eps) & (depth <= -(freg.eps + 0.02))
    pts, vals = pts[keep], vals[keep]
    coarse = grid_min_regularized(freg, pts, n=41)
    fine = grid_min_regularized(freg, pts, n=81)
    certified = np.abs(coarse - fine) <= 5e-4
    pts = pts[certified][:n_points]
    coarse = coarse[certified][:n_points]
    vals = vals[certified][:n_points]
    gap = np.abs(coarse - vals)
    worst = float(np.max(gap))
    return CheckResult(
        name="eval-consistency",
        anchor="bisection value matches brute-force min over the dilation ball",
        passed=bool(worst <= 1e-3), margin=1e-3 - worst,
        witness=None if worst <= 1e-3 else pts[int(np.argmax(gap))].tolist(),
        details={"worst_gap": worst, "n_points": int(len(pts))})


def _check_base_point(freg, window, n_points, seed) -> CheckResult:
    pts = _annulus_sample(freg, window, n_points, seed, "base-point")
    vals = np.asarray(freg.eval(pts), dtype=float)
    z = freg.base.level_project(vals, pts)
    value_gap = np.abs(np.asarray(freg.base.eval(z), dtype=float) - vals)
    reach = np.linalg.norm(pts - z, axis=1)
    ok = bool(np.max(value_gap) <= 1e-6 and np.max(reach) <= freg.eps + 1e-6)
    worst = int(np.argmax(value_gap))
    return CheckResult(
        name="base-point-consistency",
        anchor="base point carries the regularized value within the radius",
        passed=ok, margin=float(1e-6 - np.max(value_gap)),
        witness=None if ok else pts[worst].tolist(),
        details={"max_value_gap": float(np.max(value_gap)),
                 "max_reach": float(np.max(reach))})


def _check_semigroup(freg, window, n_points, seed) -> CheckResult:
    pts = _annulus_sample(freg, window, n_points, seed, "semigroup")
    e1 = 0.4 * freg.eps
    e2 = freg.eps - e1
    nested = regularize(regularize(freg.base, e1), e2)
    gap = np.abs(np.asarray(freg.eval(pts)) - np.asarray(nested.eval(pts)))
    worst = float(np.max(gap))
    return CheckResult(
        name="semigroup-identity",
        anchor="split-radius regularization composes to the full radius",
        passed=bool(worst <= 1e-6), margin=1e-6 - worst,
        witness=None if worst <= 1e-6 else pts[int(np.argmax(gap))].tolist(),
        details={"eps_split": [e1, e2], "worst_gap": worst})


def _check_slope_transfer(freg, window, n_points, seed) -> CheckResult:
    pts = _annulus_sample(freg, window, n_points, seed, "slope-transfer")
    vals = np.asarray(freg.eval(pts), dtype=float)
    above = vals > freg.inf_value + 1e-9
    pts = pts[above]
    z = freg.base.level_project(np.asarray(freg.eval(pts)), pts)
    s_reg, _ = slope_values(freg, pts, seed=seed)
    s_base, _ = slope_values(freg.base, z, seed=seed)
    deficit = s_base - s_reg
    worst = float(np.max(deficit))
    return CheckResult(
        name="slope-transfer",
        anchor="regularized slope dominates the slope at the base point",
        passed=bool(worst <= 1e-3), margin=1e-3 - worst,
        witness=None if worst <= 1e-3 else pts[int(np.argmax(deficit))].tolist(),
        details={"worst_deficit": worst, "n_points": int(len(pts))})


def _check_monotone_eps(freg, window, n_points, seed) -> CheckResult:
    pts = _annulus_sample(freg, window, n_points, seed, "monotone-eps")
    radii = [0.1, 0.25, 0.5]
    stack = [np.asarray(regularize(freg.base, e).eval(pts)) for e in radii]
    worst = 0.0
    for lo_r, hi_r in zip(stack, stack[1:]):
        worst = max(worst, float(np.max(hi_r - lo_r)))
    return CheckResult(
        name="monotone-in-epsilon",
        anchor="pointwise values are nonincreasing in the dilation radius",
        passed=bool(worst <= 1e-9), margin=1e-9 - worst,
        details={"radii": radii, "worst_increase": worst})


def _check_lipschitz_transfer(freg, window, n_points, seed) -> CheckResult:
    # The transfer claim presumes the base is Lipschitz where the dilation
    # ball reaches; near a hard domain boundary (localized functions) the
    # regularization genuinely loses Lipschitz continuity, so pairs are kept
    # at dilation depth inside the base domain.
    rng = split_rng(seed, "lip-transfer")
    pts = _annulus_sample(freg, window, 3 * n_points, seed, "lip-transfer")
    depth = np.asarray(freg.base.domain.signed_boundary_distance(pts))
    pts = pts[depth <= -(freg.eps + 0.02)][:n_points]
    mates = pts + 1e-3 * rng.normal(size=pts.shape)
    fe_p = np.asarray(freg.eval(pts))
    fe_m = np.asarray(freg.eval(mates))
    finite = np.isfinite(fe_p) & np.isfinite(fe_m)
    pts, mates, fe_p, fe_m = pts[finite], mates[finite], fe_p[finite], fe_m[finite]
    gaps = np.linalg.norm(pts - mates, axis=1)
    emp_reg = float(np.max(np.abs(fe_p - fe_m) / gaps))
    # Translate each pair by the dilation offset of its smaller endpoint: with
    # w such that f(y - w) = f_eps(y) at the smaller endpoint y, the larger
    # one satisfies f_eps(x) <= f(x - w), so the translated base pair (which
    # lives in the eps-enlarged region) realizes at least the same quotient.
    lo_first = fe_p <= fe_m
    anchor = np.where(lo_first[:, None], pts, mates)
    w = anchor - freg.base.level_project(np.minimum(fe_p, fe_m), anchor)
    fb_p = np.asarray(freg.base.eval(pts - w))
    fb_m = np.asarray(freg.base.eval(mates - w))
    ok = np.isfinite(fb_p) & np.isfinite(fb_m)
    emp_base = float(np.max(np.abs(fb_p[ok] - fb_m[ok]) / gaps[ok]))
    passed = emp_reg <= emp_base + 1e-6
    return CheckResult(
        name="lipschitz-transfer",
        anchor="regularization preserves the local Lipschitz bound",
        passed=bool(passed), margin=emp_base + 1e-6 - emp_reg,
        details={"empirical_regularized": emp_reg, "empirical_base": emp_base})


def _check_prox_lower_bound(freg, window, seed) -> CheckResult:
    levels = np.linspace(window[0], window[1], 3)
    r_hats = [prox_radius_estimate(freg, lvl, seed=seed).r_hat for lvl in levels]
    r_min = float(np.min(r_hats))
    passed = r_min >= 0.9 * freg.eps
    return CheckResult(
        name="dilation-prox-lower-bound",
        anchor="dilated complements stay prox-regular at the dilation radius",
        passed=bool(passed), margin=r_min - 0.9 * freg.eps,
        details={"levels": levels.tolist(), "r_hats": r_hats, "eps": freg.eps})


def run_verification_suite(f: QuasiconvexFunction, eps: float | None = None,
                           window=None, seed: int = 0, n_points: int = 100,
                           n_levels: int = 4, resolution: float = 0.01,
                           probe_starts: int = 20) -> DiagnosticsReport:
    """Full named-check suite for one function (optionally regularized)."""
    target = regularize(f, eps) if eps is not None else f
    if window is None:
        window = target.default_window
    checks = []

    h1, h2, h3 = verify_H1_H3(target, window, seed=seed)
    checks += [h1, h2, h3]
    floor = h2.details["slope_floor"]

    if floor > 0:
        check_s, check_u, direct = verify_moving_map_lipschitz(
            target, window[0], window[1], n_levels=n_levels,
            slope_floor=floor, resolution=resolution, seed=seed)
        checks += [check_s, check_u]
        gap = (window[1] - window[0]) / max(n_levels - 1, 1)
        slack = 2.0 * resolution / gap + 1e-6
        checks.append(CheckResult(
            name="constants-consistency",
            anchor="direct Hausdorff rate does not exceed one over the slope floor",
            passed=bool(direct <= 1.0 / floor + slack),
            margin=1.0 / floor + slack - direct,
            details={"direct_rate": direct, "rate_bound": 1.0 / floor}))
        from .functions import aze_corvellec_check
        box = target.level_bbox(window[1])
        alpha_mid = 0.5 * (window[0] + window[1])
        ok, witness = aze_corvellec_check(target, box, alpha_mid, floor,
                                          seed=seed)
        checks.append(CheckResult(
            name="distance-level-bound",
            anchor="sublevel distance bounded by the value gap over the slope floor",
            passed=bool(ok), witness=None if ok else witness.tolist(),
            details={"alpha": alpha_mid}))
    else:
        checks.append(CheckResult(
            name="moving-map-lipschitz-sublevel",
            anchor="sublevel moving map is (1/slope-floor)-Lipschitz in Hausdorff distance",
            passed=None, details={"reason": "slope floor not positive"}))

    lip = estimate_function_lipschitz(target, window, seed=seed)
    constants = {
        "slope_floor": floor,
        "map_lipschitz": (1.0 / floor) if floor > 0 else None,
        "prox_radius": h3.margin,
        "func_lipschitz": lip,
    }

    if isinstance(target, RegularizedFunction):
        checks.append(_check_eval_consistency(target, window, n_points, seed))
        checks.append(_check_base_point(target, window, n_points, seed))
        checks.append(_check_semigroup(target, window, n_points, seed))
        checks.append(_check_slope_transfer(target, window, n_points, seed))
        checks.append(_check_monotone_eps(target, window, n_points, seed))
        checks.append(_check_lipschitz_transfer(target, window, n_points, seed))
        checks.append(_check_prox_lower_bound(target, window, seed))
        if probe_starts > 0 and h2.passed and h3.passed:
            probe_cfg = SweepingConfig(alpha2=window[1], horizon=0.4, steps=80,
                                       seed=seed)
            probe = probe_steepest_descent(target, probe_starts, probe_cfg,
                                           window=window, seed=seed)
            probe.passed = probe.details["fraction"] >= 0.9
            checks.append(probe)
        else:
            reason = ("disabled" if probe_starts <= 0
                      else "prerequisite checks failed")
            checks.append(CheckResult(
                name="steepest-descent-probe",
                anchor="speed-slope product stays near one along descent trajectories",
                passed=None, details={"reason": reason}))

    if isinstance(f, LocalizedFunction):
        rng = split_rng(seed, "hoffmann")
        span = f.level_hi - f.inf_value
        beta = f.inf_value + 0.5 * span
        z = f.center + 0.5 * f.delta * rng.normal(size=f.dim)
        checks.append(hoffmann_localization_check(
            f.base, f.center, f.delta, z, beta))

    config = {
        "function": f.name,
        "epsilon": eps,
        "window": [float(window[0]), float(window[1])],
        "n_points": n_points,
        "n_levels": n_levels,
        "resolution": resolution,
        "probe_starts": probe_starts,
    }
    return DiagnosticsReport(constants=constants, checks=checks,
                             config=config, seed=seed)
