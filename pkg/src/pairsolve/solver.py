"""Multistart damped Newton for the paired inverse-square distance system.

For each anchor T the unknown pair (X, Y) must satisfy

    1/|X-T|^2 + 1/|Y-T|^2 = k_T.

Six anchors give a square 6x6 system; with a seventh anchor G the system is
overdetermined and each iteration takes a Gauss-Newton (least squares) step
instead.  All starts are iterated together as one batch, so the result does
not depend on any scheduling order.  The found set is a lower bound on the
real solution set: nothing here certifies completeness.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np

from . import elimination
from .errors import ConditionsNotMetError, EvaluationError, PairSolveError
from .genericity import ANCHOR_LABELS, Configuration, check_conditions
from .geom import Point3

MAX_HALVINGS = 30
# damping floor relative to trace(J^T J); keeps the normal equations nonsingular
REG_FLOOR = 1e-14
# search region: starts leaving REGION_FACTOR x box_radius around the centroid are dropped
REGION_FACTOR = 2.0


@dataclass
class SolveOptions:
    starts: int = 2000
    seed: int = 0
    newton_tol: float = 1e-13
    accept_tol: float = 1e-9
    max_iter: int = 80
    box_radius: Optional[float] = None  # default: 3 x configuration diameter
    cluster_rtol: float = 1e-6
    force: bool = False


@dataclass
class SolutionPair:
    x: Point3
    y: Point3
    residual_norm: float
    is_trivial: bool = False
    certificates: Optional[dict] = None

    def swapped(self) -> SolutionPair:
        return SolutionPair(self.y, self.x, self.residual_norm, self.is_trivial, None)

    def as_array(self) -> np.ndarray:
        return np.array([*self.x, *self.y])


@dataclass
class SolveReport:
    solutions: list[SolutionPair]
    starts_used: int
    converged_count: int
    seed: int
    settings: dict = field(default_factory=dict)

    @property
    def trivial(self) -> list[SolutionPair]:
        return [s for s in self.solutions if s.is_trivial]

    @property
    def nontrivial(self) -> list[SolutionPair]:
        return [s for s in self.solutions if not s.is_trivial]

    def to_tsv(self) -> str:
        lines = ["\t".join(["x1", "x2", "x3", "y1", "y2", "y3", "residual", "trivial"])]
        for s in self.solutions:
            vals = [*s.x, *s.y, s.residual_norm]
            lines.append("\t".join(fmt(v) for v in vals) + "\t" + ("1" if s.is_trivial else "0"))
        return "\n".join(lines) + "\n"


def fmt(v: float) -> str:
    """17 significant digits: lossless for doubles."""
    return format(float(v), ".17g")


# -- residual ---------------------------------------------------------------

def _anchor_arrays(cfg: Configuration, include_g: bool):
    labels = cfg.labels if include_g else ANCHOR_LABELS
    if include_g and cfg.g is None:
        raise PairSolveError("configuration has no seventh anchor G")
    t = np.array([tuple(cfg.point(label)) for label in labels])
    k = np.array([cfg.k[label] for label in labels])
    return t, k


def residual(cfg: Configuration, x: Point3, y: Point3, include_g: bool = False) -> np.ndarray:
    """Component T is ``1/|x-T|^2 + 1/|y-T|^2 - k_T``."""
    t, k = _anchor_arrays(cfg, include_g)
    sx = ((x.as_array() - t) ** 2).sum(axis=1)
    sy = ((y.as_array() - t) ** 2).sum(axis=1)
    if np.any(sx == 0.0) or np.any(sy == 0.0):
        raise EvaluationError("x or y coincides with an anchor")
    return 1.0 / sx + 1.0 / sy - k


def _sq_dists(p: np.ndarray, t: np.ndarray):
    """Per-axis differences and squared distances between rows of ``p`` and anchors ``t``."""
    d = [p[:, c, None] - t[None, :, c] for c in range(3)]
    return d, d[0] * d[0] + d[1] * d[1] + d[2] * d[2]


def _batch_residual(z: np.ndarray, t: np.ndarray, k: np.ndarray) -> np.ndarray:
    _, sx = _sq_dists(z[:, :3], t)
    _, sy = _sq_dists(z[:, 3:], t)
    with np.errstate(divide="ignore", invalid="ignore"):
        return 1.0 / sx + 1.0 / sy - k


def _batch_jacobian(z: np.ndarray, t: np.ndarray, k: np.ndarray):
    dx, sx = _sq_dists(z[:, :3], t)
    dy, sy = _sq_dists(z[:, 3:], t)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = 1.0 / sx + 1.0 / sy - k
        wx = -2.0 / (sx * sx)
        wy = -2.0 / (sy * sy)
        jac = np.stack([wx * dx[0], wx * dx[1], wx * dx[2], wy * dy[0], wy * dy[1], wy * dy[2]], axis=2)
    return r, jac


def _norm(r: np.ndarray) -> np.ndarray:
    out = np.sqrt((r * r).sum(-1))
    out[~np.isfinite(out)] = np.inf
    return out


def _directions(jac: np.ndarray, r: np.ndarray, rn: np.ndarray) -> list[np.ndarray]:
    """Candidate steps solving ``(J^T J + mu I) s = -J^T r`` for three dampings.

    ``mu`` is floored at ``REG_FLOOR * trace(J^T J)``, so the first direction is
    the (least-squares) Newton step wherever J is well conditioned and a
    truncated one where it is not.  The two Levenberg-Marquardt steps, damped by
    ``|r|`` and ``|r|**2``, keep progress up near singular solution sets where
    the Newton step is dominated by near-null directions and the line search
    shrinks it to nothing.
    """
    jt = np.swapaxes(jac, 1, 2)
    normal = jt @ jac
    grad = -(jt @ r[:, :, None])
    eye = np.eye(jac.shape[2])
    bad = ~(np.isfinite(normal).all(axis=(1, 2)) & np.isfinite(grad).all(axis=(1, 2)))
    normal[bad] = eye
    grad[bad] = 0.0
    floor = REG_FLOOR * np.trace(normal, axis1=1, axis2=2)
    out = []
    for mu in (floor, np.maximum(rn, floor), np.maximum(rn * rn, floor)):
        out.append(np.linalg.solve(normal + mu[:, None, None] * eye, grad)[:, :, 0])
    return out


def _line_search(z: np.ndarray, step: np.ndarray, rn0: np.ndarray, t, k):
    """Halve each step until the residual norm decreases (or give up)."""
    frac = np.ones(len(z))
    trial = z + step
    trial_rn = _norm(_batch_residual(trial, t, k))
    for _ in range(MAX_HALVINGS):
        worse = ~(trial_rn < rn0)
        if not worse.any():
            break
        frac[worse] *= 0.5
        trial[worse] = z[worse] + frac[worse, None] * step[worse]
        trial_rn[worse] = _norm(_batch_residual(trial[worse], t, k))
    return trial, trial_rn, frac * np.sqrt((step * step).sum(1))


def newton_batch(z0: np.ndarray, t: np.ndarray, k: np.ndarray, opts: SolveOptions,
                 centre: np.ndarray, half_width: float):
    """Iterate all starts in ``z0`` (shape (n, 6)) together.

    Returns the final points, their residual norms, and a mask of starts whose
    iteration terminated on its own inside the search region, i.e. stopped
    on a small step or because no direction lowers the residual any further.
    Starts still moving after ``max_iter`` iterations are not terminated.
    """
    z = np.array(z0, dtype=float)
    rn = _norm(_batch_residual(z, t, k))
    active = np.isfinite(rn)
    terminated = np.zeros(len(z), dtype=bool)
    for _ in range(opts.max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        zi, rni = z[idx], rn[idx]
        r, jac = _batch_jacobian(zi, t, k)
        best_z, best_rn, best_len = None, None, None
        for step in _directions(jac, r, rni):
            trial, trial_rn, length = _line_search(zi, step, rni, t, k)
            if best_z is None:
                best_z, best_rn, best_len = trial, trial_rn, length
                continue
            better = trial_rn < best_rn
            best_z[better] = trial[better]
            best_rn[better] = trial_rn[better]
            best_len[better] = length[better]
        accepted = best_rn < rni
        z[idx[accepted]] = best_z[accepted]
        rn[idx[accepted]] = best_rn[accepted]
        zi = z[idx]
        size = np.maximum(1.0, np.sqrt((zi * zi).sum(1)))
        inside = np.all(np.abs(zi - centre) <= half_width, axis=1)
        finished = (~accepted) | (best_len <= opts.newton_tol * size)
        terminated[idx[finished & inside]] = True
        active[idx[finished | ~inside]] = False
    return z, rn, terminated


# -- starts -----------------------------------------------------------------

def _diameter(points: list[Point3]) -> float:
    arr = np.array([tuple(p) for p in points])
    diff = arr[:, None, :] - arr[None, :, :]
    return float(np.sqrt((diff**2).sum(-1)).max())


def initial_points(cfg: Configuration, opts: SolveOptions) -> tuple[np.ndarray, float]:
    """Deterministic starts followed by ``opts.starts`` seeded uniform samples,
    and the box half-width used for the samples."""
    anchors = np.array([tuple(p) for p in cfg.anchors])
    centroid = anchors.mean(axis=0)
    radius = opts.box_radius
    if radius is None:
        radius = 3.0 * _diameter(list(cfg.named_points().values()))
    xs, ys = cfg.x_star.as_array(), cfg.y_star.as_array()
    fixed = [np.concatenate([xs, ys]), np.concatenate([ys, xs])]
    for i, j in combinations(range(len(anchors)), 2):
        mid = 0.5 * (anchors[i] + anchors[j])
        fixed.append(np.concatenate([mid, 2.0 * centroid - mid]))
    rng = np.random.default_rng(opts.seed)
    centre6 = np.concatenate([centroid, centroid])
    rand = centre6 + rng.uniform(-radius, radius, size=(opts.starts, 6))
    return np.vstack([np.array(fixed), rand]), radius


# -- clustering -------------------------------------------------------------

def canonical(z: np.ndarray, tol: float) -> np.ndarray:
    """Order (x, y) so that x is lexicographically smaller, ties within ``tol``."""
    x, y = z[:3], z[3:]
    for i in range(3):
        if abs(x[i] - y[i]) > tol:
            return z.copy() if x[i] < y[i] else np.concatenate([y, x])
    return z.copy()


def _swap(z: np.ndarray) -> np.ndarray:
    return np.concatenate([z[..., 3:], z[..., :3]], axis=-1)


def cluster(points: np.ndarray, norms: np.ndarray, tol: float):
    """Merge points within ``tol`` of each other modulo the (x, y) swap.

    Candidates are sorted by their canonical coordinates before merging, so
    the outcome depends only on the candidate set.  Each cluster keeps its
    lowest-residual member.
    """
    if len(points) == 0:
        return []
    canon = np.array([canonical(p, tol) for p in points])
    order = np.lexsort(tuple(canon[:, i] for i in reversed(range(6))))
    reps: list[np.ndarray] = []
    rep_norm: list[float] = []
    rep_arr = np.empty((0, 6))
    for i in order:
        c = canon[i]
        if len(reps):
            d1 = np.abs(rep_arr - c).max(axis=1)
            d2 = np.abs(_swap(rep_arr) - c).max(axis=1)
            hit = np.flatnonzero(np.minimum(d1, d2) <= tol)
            if hit.size:
                j = int(hit[0])
                if norms[i] < rep_norm[j]:
                    reps[j] = c
                    rep_norm[j] = float(norms[i])
                    rep_arr[j] = c
                continue
        reps.append(c)
        rep_norm.append(float(norms[i]))
        rep_arr = np.vstack([rep_arr, c])
    return sorted(zip(reps, rep_norm), key=lambda item: tuple(item[0]))


# -- drivers ----------------------------------------------------------------

def _run(cfg: Configuration, opts: SolveOptions, include_g: bool) -> SolveReport:
    if not opts.force:
        report = check_conditions(cfg)
        if not report.passed:
            raise ConditionsNotMetError(
                "genericity conditions fail: "
                f"(i) {report.failing_quadruples_i}, (ii) {report.failing_quadruples_ii}"
            )
    t, k = _anchor_arrays(cfg, include_g)
    z0, radius = initial_points(cfg, opts)
    scale = max(cfg.scale, np.finfo(float).tiny)
    # iterate in coordinates centred on the anchor centroid, unit diameter
    centre = np.tile(np.array([tuple(p) for p in cfg.anchors]).mean(axis=0), 2)
    length = _diameter(list(cfg.named_points().values()))
    zn, rn, terminated = newton_batch(
        (z0 - centre) / length, (t - centre[:3]) / length, k * length**2, opts,
        np.zeros(6), REGION_FACTOR * radius / length,
    )
    z = zn * length + centre
    rn = rn / length**2
    ok = terminated & (rn <= opts.accept_tol)
    tol = opts.cluster_rtol * scale
    star = np.concatenate([cfg.x_star.as_array(), cfg.y_star.as_array()])
    solutions = []
    for rep, _ in cluster(z[ok], rn[ok], tol):
        x, y = Point3.from_array(rep[:3]), Point3.from_array(rep[3:])
        norm = residual_norm(cfg, x, y, include_g)
        trivial = bool(min(np.abs(rep - star).max(), np.abs(_swap(rep) - star).max()) <= tol)
        try:
            certs = elimination.certificates(cfg, y)
        except PairSolveError:
            certs = None
        solutions.append(SolutionPair(x, y, norm, trivial, certs))
    settings = asdict(opts)
    settings["box_radius"] = radius
    settings["extended"] = include_g
    return SolveReport(solutions, len(z0), int(ok.sum()), opts.seed, settings)


def solve(cfg: Configuration, options: Optional[SolveOptions] = None) -> SolveReport:
    """Real solutions of the six-anchor system found by multistart Newton."""
    return _run(cfg, options or SolveOptions(), include_g=False)


def solve_extended(cfg: Configuration, options: Optional[SolveOptions] = None) -> SolveReport:
    """Same as :func:`solve` with the seventh anchor G included (7 equations)."""
    if cfg.g is None:
        raise PairSolveError("solve_extended needs a configuration with G")
    return _run(cfg, options or SolveOptions(), include_g=True)


def residual_norm(cfg: Configuration, x: Point3, y: Point3, include_g: bool = False) -> float:
    return float(np.linalg.norm(residual(cfg, x, y, include_g)))
