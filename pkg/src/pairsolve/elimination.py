"""Eliminating X: the Gamma functions, Cramer recovery of X from Y, and the
determinant certificates Phi_T and Psi_{T1,T2}.

Every equation of the system can be rewritten as a sphere equation in X,

    |X - T|^2 = Gamma_T(Y) + |T|^2,
    Gamma_T(Y) = |Y-T|^2 / (k_T |Y-T|^2 - 1) - |T|^2,

so differences of two such equations are linear in X.  Four non-coplanar
anchors therefore pin X down from Y, and the remaining equations turn into
conditions on Y alone.  ``phi`` and ``psi`` evaluate those conditions at a
point; they vanish at the Y-component of every solution.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import CoplanarFrameError, SingularLocusError
from .genericity import ANCHOR_LABELS, Configuration
from .geom import COPLANAR_RTOL, Point3, det3, dist_sq, norm_sq, scale_of

# Gamma is undefined within this distance of its singular sphere
EPS_DENOM = 1e-10

DEFAULT_FRAME = ("A", "B", "C", "D")
PSI_PAIRS = tuple(combinations(ANCHOR_LABELS, 2))


def gamma(cfg: Configuration, label: str, y: Point3) -> float:
    t = cfg.point(label)
    s = dist_sq(y, t)
    denom = cfg.k[label] * s - 1.0
    if abs(denom) <= EPS_DENOM:
        raise SingularLocusError(f"k_{label}*|Y-{label}|^2 - 1 = {denom:.3g} at Y={tuple(y)}")
    return s / denom - norm_sq(t)


def gamma_vector(cfg: Configuration, y: Point3) -> dict[str, float]:
    return {label: gamma(cfg, label, y) for label in cfg.labels}


def _cramer(anchors: Sequence[Point3], gammas: Sequence[float]):
    """Numerators N_j and determinant delta for 2(T1-Ti).X = G_i - G_1, i=2..4.

    The solution is ``x_j = N_j / (2*delta)``.
    """
    t1 = anchors[0]
    rows = [tuple(t1 - t) for t in anchors[1:]]
    rhs = [g - gammas[0] for g in gammas[1:]]
    delta = det3(rows)
    nums = []
    for j in range(3):
        m = [list(r) for r in rows]
        for i in range(3):
            m[i][j] = rhs[i]
        nums.append(det3(m))
    return nums, delta


def _check_frame(anchors: Sequence[Point3], delta: float, labels) -> None:
    s = scale_of(anchors)
    if abs(delta) <= COPLANAR_RTOL * s**3:
        raise CoplanarFrameError(f"anchors {''.join(labels)} are coplanar (delta={delta:.3g})")


def recover_x(cfg: Configuration, y: Point3, frame: Sequence[str] = DEFAULT_FRAME) -> Point3:
    """The unique X compatible with ``y`` on the four ``frame`` anchors."""
    anchors = [cfg.point(t) for t in frame]
    gammas = [gamma(cfg, t, y) for t in frame]
    nums, delta = _cramer(anchors, gammas)
    _check_frame(anchors, delta, frame)
    return Point3(*(n / (2.0 * delta) for n in nums))


def phi(cfg: Configuration, omitted: str, y: Point3) -> float:
    """5x5 determinant over the five anchors other than ``omitted``.

    Rows: the Gamma values, the three coordinate rows, then ones.
    """
    kept = [t for t in ANCHOR_LABELS if t != omitted]
    if len(kept) != 5:
        raise KeyError(omitted)
    m = np.empty((5, 5))
    for col, label in enumerate(kept):
        p = cfg.point(label)
        m[0, col] = gamma(cfg, label, y)
        m[1:4, col] = (p.x, p.y, p.z)
        m[4, col] = 1.0
    return float(np.linalg.det(m))


def psi(cfg: Configuration, omitted: tuple[str, str], y: Point3) -> float:
    """First sphere equation with X replaced by its Cramer expression, denominators cleared.

    Uses the four anchors left after removing the ``omitted`` pair, in
    alphabetical order ``T1 < T2 < T3 < T4``; the value is
    ``sum_j (N_j - 2*delta*t1_j)**2 - 4*delta**2*(Gamma_T1(y) + |T1|^2)``.
    """
    kept = [t for t in ANCHOR_LABELS if t not in omitted]
    if len(kept) != 4:
        raise KeyError(omitted)
    anchors = [cfg.point(t) for t in kept]
    gammas = [gamma(cfg, t, y) for t in kept]
    nums, delta = _cramer(anchors, gammas)
    _check_frame(anchors, delta, kept)
    t1 = anchors[0]
    total = sum((n - 2.0 * delta * c) ** 2 for n, c in zip(nums, t1))
    return total - 4.0 * delta * delta * (gammas[0] + norm_sq(t1))


def certificates(cfg: Configuration, y: Point3) -> dict[str, dict]:
    """All six Phi values and fifteen Psi values at ``y``.

    Psi entries whose frame is coplanar are reported as ``None``.
    """
    phis = {t: phi(cfg, t, y) for t in ANCHOR_LABELS}
    psis: dict[tuple[str, str], float | None] = {}
    for pair in PSI_PAIRS:
        try:
            psis[pair] = psi(cfg, pair, y)
        except CoplanarFrameError:
            psis[pair] = None
    return {"phi": phis, "psi": psis}
