"""Catching-up time stepping for the sublevel-set sweeping process.

The forward process tracks the shrinking sublevel sets K(t) = [f <= alpha2-t]
by projecting each iterate onto the next set on a uniform partition; an
initial waiting phase holds the start point until the moving level reaches
its value. The reverse process steps onto the growing closed complements of
the dilated sublevel interiors, which is only well posed within the
prox-regular reach and under the step-size guard theta = K * dt / r < 1.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (DomainError, LevelUnderflow, MissingConstants,
                     ReverseRefused, SweepDescentError, ThetaGuard)
from .functions import QuasiconvexFunction
from .regularization import RegularizedFunction, complement_projection

BOUNDARY_RIDE_TOL = 1e-6


@dataclass
class SweepingConfig:
    """Level window, partition and constants for one sweeping run."""

    alpha2: float
    horizon: float
    steps: int
    map_lipschitz: float | None = None
    prox_radius: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.horizon < 0:
            raise ValueError("horizon must be nonnegative")
        if self.steps < 1:
            raise ValueError("partition needs at least one step")

    @property
    def step_width(self) -> float:
        return self.horizon / self.steps if self.horizon > 0 else 0.0

    def theta(self, span: float | None = None) -> float:
        """Reverse step-size guard for a run over the given time span."""
        if self.map_lipschitz is None or self.prox_radius is None:
            raise MissingConstants(
                "theta needs map_lipschitz and prox_radius estimates"
            )
        span = self.horizon if span is None else span
        if span == 0:
            return 0.0
        return self.map_lipschitz * (span / self.steps) / self.prox_radius


@dataclass
class Trajectory:
    """Samples of one catching-up run: times, points and function values."""

    times: np.ndarray
    points: np.ndarray
    values: np.ndarray
    direction: str
    config: SweepingConfig

    @property
    def levels(self) -> np.ndarray:
        if self.direction == "forward":
            return self.config.alpha2 - self.times
        return self.config.alpha2 + self.times

    @property
    def speeds(self) -> np.ndarray:
        out = np.zeros(len(self.times))
        if len(self.times) > 1:
            dt = np.diff(self.times)
            out[1:] = np.linalg.norm(np.diff(self.points, axis=0), axis=1) / dt
        return out

    @property
    def endpoint(self) -> np.ndarray:
        return self.points[-1]

    def interpolate(self, t: float) -> np.ndarray:
        """Linear interpolation in time (used to compare unequal partitions)."""
        t = float(np.clip(t, self.times[0], self.times[-1]))
        i = int(np.searchsorted(self.times, t))
        if i == 0:
            return self.points[0]
        w = (t - self.times[i - 1]) / (self.times[i] - self.times[i - 1])
        return (1 - w) * self.points[i - 1] + w * self.points[i]

    def boundary_residuals(self, f: QuasiconvexFunction) -> np.ndarray:
        """|distance to the moving sublevel boundary| at every sample."""
        res = np.empty(len(self.times))
        for j, (lvl, p) in enumerate(zip(self.levels, self.points)):
            res[j] = abs(float(f.sublevel(lvl).signed_boundary_distance(p)))
        return res


def forward_catching_up(f: QuasiconvexFunction, x0, cfg: SweepingConfig) -> Trajectory:
    """Forward catching-up run from x0 across the level window."""
    batch = forward_catching_up_batch(f, np.asarray(x0, dtype=float)[None, :], cfg)
    return replace(batch, points=batch.points[:, 0, :], values=batch.values[:, 0])


def forward_catching_up_batch(f: QuasiconvexFunction, starts, cfg: SweepingConfig) -> Trajectory:
    """Forward runs for a batch of starts; points get shape (k+1, n, d)."""
    x0 = np.asarray(starts, dtype=float)
    if not np.all(f.sublevel(cfg.alpha2).membership(x0, tol=BOUNDARY_RIDE_TOL)):
        raise DomainError("a start point lies outside the initial sublevel set")
    if cfg.horizon > 0 and cfg.alpha2 - cfg.horizon <= f.inf_value:
        raise LevelUnderflow("level window reaches the infimum of the function")
    k = cfg.steps if cfg.horizon > 0 else 0
    times = (np.arange(k + 1) * cfg.horizon) / max(k, 1)
    f_x0 = np.asarray(f.eval(x0), dtype=float)
    pts = np.empty((k + 1, len(x0), x0.shape[1]))
    pts[0] = x0
    for j in range(1, k + 1):
        level = cfg.alpha2 - times[j]
        waiting = level >= f_x0
        try:
            moved = f.level_project(np.full(len(x0), level), pts[j - 1])
        except SweepDescentError as exc:
            raise type(exc)(f"step {j} (level {level:.6g}): {exc}") from exc
        pts[j] = np.where(waiting[:, None], x0, moved)
    values = np.asarray(
        f.eval(pts.reshape(-1, x0.shape[1])), dtype=float
    ).reshape(k + 1, len(x0))
    return Trajectory(times=times, points=pts, values=values,
                      direction="forward", config=cfg)


def _inward_boundary_projection(f: QuasiconvexFunction, alpha: float, x,
                                probe: float = 1e-5):
    """Nearest boundary point of [f <= alpha] from inside.

    Fixed-point iteration between a ray bisection to the boundary and the
    outward normal there; converges on the smooth prox-regular boundaries
    that reverse runs require.
    """
    oracle = f.sublevel(alpha)
    x = np.asarray(x, dtype=float)
    if not bool(oracle.membership(x, tol=0.0)):
        return x.copy()
    grad = np.zeros_like(x)
    for axis in range(len(x)):
        off = np.zeros(len(x))
        off[axis] = probe
        grad[axis] = float(oracle.signed_boundary_distance(x + off)) - float(
            oracle.signed_boundary_distance(x - off))
    norm = np.linalg.norm(grad)
    direction = grad / norm if norm > 0 else np.eye(len(x))[0]
    best = None
    for _ in range(20):
        hi = 1.0
        while bool(oracle.membership(x + hi * direction, tol=0.0)) and hi < 1e9:
            hi *= 2.0
        b = _bisect_to_boundary(oracle, x, x + hi * direction)
        exterior = b + probe * direction
        foot = oracle.project(exterior)
        delta = exterior - foot
        dist = np.linalg.norm(delta)
        new_dir = delta / dist if dist > probe * 1e-6 else direction
        if best is not None and np.linalg.norm(new_dir - direction) < 1e-13:
            return b
        best = b
        direction = new_dir
    return best


def _bisect_to_boundary(oracle, inner, outer, iters: int = 60):
    lo, hi = np.asarray(inner, float), np.asarray(outer, float)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if bool(oracle.membership(mid, tol=0.0)):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def reverse_catching_up(freg, ubar, tbar: float, cfg: SweepingConfig) -> Trajectory:
    """Reverse run on the complement process from level alpha2 - tbar up to alpha2.

    Only offered for regularized functions (whose complements are eps
    prox-regular by construction) or when the config carries a validated
    prox radius; refuses otherwise, and refuses when theta >= 1.
    """
    if not isinstance(freg, RegularizedFunction) and cfg.prox_radius is None:
        raise ReverseRefused(
            "reverse sweeping needs prox-regularity evidence: pass a "
            "regularized function or a validated prox_radius"
        )
    if cfg.map_lipschitz is None:
        raise MissingConstants("reverse sweeping needs a map_lipschitz estimate")
    r_hat = cfg.prox_radius if cfg.prox_radius is not None else freg.eps
    cfg = replace(cfg, prox_radius=r_hat)
    theta = cfg.theta(tbar)
    if theta >= 1.0:
        raise ThetaGuard(
            f"theta = {theta:.4g} >= 1: refine the partition before reversing"
        )
    ubar = np.asarray(ubar, dtype=float)
    start_level = cfg.alpha2 - tbar
    if abs(float(freg.sublevel(start_level).signed_boundary_distance(ubar))) > 1e-5:
        raise DomainError("reverse start must lie on the starting level boundary")
    k = cfg.steps if tbar > 0 else 0
    times = -tbar + (np.arange(k + 1) * tbar) / max(k, 1)
    pts = np.empty((k + 1, ubar.shape[0]))
    pts[0] = ubar
    regularized = isinstance(freg, RegularizedFunction)
    for j in range(1, k + 1):
        level = cfg.alpha2 + times[j]
        try:
            if regularized:
                pts[j] = complement_projection(freg, level, pts[j - 1])
            else:
                pts[j] = _inward_boundary_projection(freg, level, pts[j - 1])
        except SweepDescentError as exc:
            raise type(exc)(f"step {j} (level {level:.6g}): {exc}") from exc
    values = np.asarray(freg.eval(pts), dtype=float)
    return Trajectory(times=times, points=pts, values=values,
                      direction="reverse", config=cfg)


@dataclass
class FlowMap:
    """Forward trajectories from a grid of boundary starts."""

    grid: np.ndarray
    times: np.ndarray
    points: np.ndarray  # (k+1, n, d)
    values: np.ndarray  # (k+1, n)
    config: SweepingConfig
    errors: list = field(default_factory=list)

    def at(self, t_index: int, m_index: int) -> np.ndarray:
        return self.points[t_index, m_index]

    def trajectory(self, m_index: int) -> Trajectory:
        return Trajectory(times=self.times, points=self.points[:, m_index, :],
                          values=self.values[:, m_index],
                          direction="forward", config=self.config)

    @property
    def endpoints(self) -> np.ndarray:
        return self.points[-1]


def flow_map(f: QuasiconvexFunction, boundary_grid, cfg: SweepingConfig,
             threads: int | None = None) -> FlowMap:
    """Forward trajectories for every grid point on the starting boundary.

    Grid points must lie on the alpha2-level boundary. Work is split across
    a thread pool sized by SWEEPDESCENT_THREADS (default 1); results are
    assembled in grid order, so scheduling never changes the output.
    """
    grid = np.asarray(boundary_grid, dtype=float)
    start_set = f.sublevel(cfg.alpha2)
    residual = np.abs(np.asarray(start_set.signed_boundary_distance(grid)))
    if np.any(residual > 1e-5):
        raise DomainError("flow map grid points must lie on the level boundary")
    if threads is None:
        threads = int(os.environ.get("SWEEPDESCENT_THREADS", "1"))
    threads = max(1, min(threads, len(grid)))
    chunks = np.array_split(np.arange(len(grid)), threads)
    results: dict[int, Trajectory] = {}
    errors = []

    def run(chunk):
        return forward_catching_up_batch(f, grid[chunk], cfg)

    if threads == 1:
        results[0] = run(chunks[0])
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for i, batch in enumerate(pool.map(run, chunks)):
                results[i] = batch
    ref = results[0]
    pts = np.concatenate([results[i].points for i in range(len(chunks))], axis=1)
    vals = np.concatenate([results[i].values for i in range(len(chunks))], axis=1)
    return FlowMap(grid=grid, times=ref.times, points=pts, values=vals,
                   config=cfg, errors=errors)


def invert_flow_check(f: QuasiconvexFunction, m1, m2, t1: float, t2: float,
                      cfg: SweepingConfig, func_lipschitz: float,
                      slack: float = 0.05, tol: float = 1e-8) -> dict:
    """Bi-Lipschitz bound and forward nonexpansiveness for one start pair.

    Compares the flow distance D = |t1 - t2| + ||m1 - m2|| against
    (L + exp(K * T / r)) * ||u(t1, m1) - u(t2, m2)|| * (1 + slack).
    """
    if cfg.map_lipschitz is None or cfg.prox_radius is None:
        raise MissingConstants("invert_flow_check needs map_lipschitz and prox_radius")
    m1 = np.asarray(m1, dtype=float)
    m2 = np.asarray(m2, dtype=float)
    batch = forward_catching_up_batch(f, np.stack([m1, m2]), cfg)
    traj1 = Trajectory(times=batch.times, points=batch.points[:, 0, :],
                       values=batch.values[:, 0], direction="forward", config=cfg)
    traj2 = Trajectory(times=batch.times, points=batch.points[:, 1, :],
                       values=batch.values[:, 1], direction="forward", config=cfg)
    u1, u2 = traj1.interpolate(t1), traj2.interpolate(t2)
    d_in = abs(t1 - t2) + float(np.linalg.norm(m1 - m2))
    dist_out = float(np.linalg.norm(u1 - u2))
    factor = func_lipschitz + np.exp(
        cfg.map_lipschitz * cfg.horizon / cfg.prox_radius
    )
    bound = factor * dist_out * (1.0 + slack)
    gaps = np.linalg.norm(batch.points[:, 0, :] - batch.points[:, 1, :], axis=1)
    span = batch.times <= min(t1, t2) + 1e-12
    nonexpansive = bool(np.all(gaps[span] <= gaps[0] + tol))
    return {
        "D_in": d_in,
        "dist_out": dist_out,
        "bound": bound,
        "bilipschitz_ok": d_in <= bound,
        "nonexpansive_ok": nonexpansive,
    }


def trajectory_to_csv(traj: Trajectory, f: QuasiconvexFunction, path,
                      comment: str = "") -> None:
    """Write one trajectory in the column layout shared by all runs."""
    dim = traj.points.shape[1]
    residuals = traj.boundary_residuals(f)
    speeds = traj.speeds
    cols = ["step", "t", "level"] + [f"x{i}" for i in range(dim)] + [
        "f", "speed", "dist_to_boundary"]
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(",".join(cols))
    for j in range(len(traj.times)):
        row = [str(j), repr(float(traj.times[j])), repr(float(traj.levels[j]))]
        row += [repr(float(c)) for c in traj.points[j]]
        row += [repr(float(traj.values[j])), repr(float(speeds[j])),
                repr(float(residuals[j]))]
        lines.append(",".join(row))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
