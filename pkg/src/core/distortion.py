"""
Standard pairs, relatively concave/convex utilities and the reflection transforms.

A standard pair (u0, v0) fixes a base utility u0 on the real line (increasing,
tagged left continuous) and a base distortion v0 on [0, 1] (increasing, tagged
right continuous, v0(0) = 0 and v0(1-) = 1). Utilities "more concave than u0"
are integrals of a decreasing generator against du0; the cut family
u0(min(., c)) spans them.
"""

import logging
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import NamedTuple, Optional, Union

import numpy as np

from config import STOCHORD_CONFIG, tolerance
from src.core.stieltjes import MonotonePL, Piecewise, StepFn, as_piecewise
from src.utils.errors import (
    BadBoundary,
    CutOutOfRange,
    DegenerateBase,
    InvalidFunction,
    NotIncreasing,
    UnboundedGenerator,
    UnknownName,
    WrongMonotonicity,
)

logger = logging.getLogger(__name__)

KINDS = ('concave', 'convex')
SIDES = ('u_side', 'v_side')


@dataclass(frozen=True)
class StandardPair:
    """Validated (u0, v0); build it with ``make_standard_pair``."""

    u0: MonotonePL
    v0: MonotonePL

    def to_dict(self) -> dict:
        return {
            'u0': [list(k) for k in self.u0.knots],
            'v0': [list(k) for k in self.v0.knots],
        }


class GeneratedUtility(NamedTuple):
    base: MonotonePL
    generator: Union[StepFn, MonotonePL, Piecewise]
    kind: str
    realized: Union[MonotonePL, Piecewise]


class RelativeCheck(NamedTuple):
    holds: bool
    witness: Optional[float]


def make_standard_pair(u0: MonotonePL, v0: MonotonePL, eps: float = None) -> StandardPair:
    """
    Validate and tag a standard pair.

    Args:
        u0: Base utility.
        v0: Base distortion on [0, 1].
        eps: Boundary tolerance (global tolerance when omitted).

    Returns:
        StandardPair: u0 re-tagged left continuous, v0 re-tagged right continuous.

    Raises:
        NotIncreasing: A component is declared decreasing.
        BadBoundary: v0(0) != 0, v0(1-) != 1 or v0 has knots outside [0, 1].
    """
    tol = tolerance(eps)
    for name, f in (('u0', u0), ('v0', v0)):
        if not isinstance(f, MonotonePL):
            raise InvalidFunction(f"{name} must be a piecewise-linear function")
        if f.direction != 'increasing' and f.ys[0] != f.ys[-1]:
            raise NotIncreasing(f"{name} is decreasing")
    if v0.xs[0] < 0.0 or v0.xs[-1] > 1.0:
        raise BadBoundary("v0 knots must lie in [0, 1]")
    if abs(v0.value(0.0)) > tol:
        raise BadBoundary(f"v0(0) = {v0.value(0.0)!r}, expected 0")
    if abs(v0.value(1.0) - 1.0) > tol:
        raise BadBoundary(f"v0(1-) = {v0.value(1.0)!r}, expected 1")
    return StandardPair(
        replace(u0, continuity='left', direction='increasing'),
        replace(v0, continuity='right', direction='increasing'),
    )


@lru_cache(maxsize=1024)
def identity_pair(lo: float, hi: float) -> StandardPair:
    """Identity utility on [lo, hi] with the identity distortion."""
    u0 = MonotonePL.identity(lo, hi, continuity='left')
    v0 = MonotonePL(((0.0, 0.0), (1.0, 1.0)), continuity='right')
    return StandardPair(u0, v0)


def _sequence(pw: Piecewise) -> np.ndarray:
    # 按 左极限/点值/右极限 顺序展开，用于单调性检查
    xs, left, at, right = pw._arr
    at = np.where(np.isnan(at), left, at)
    return np.column_stack([left, at, right]).ravel()


def _check_generator(generator, kind: str, tol: float) -> Piecewise:
    pw = as_piecewise(generator)
    values = _sequence(pw)
    if not np.all(np.isfinite(values)):
        raise UnboundedGenerator("generator takes non-finite values")
    steps = np.diff(values)
    if kind == 'concave' and np.any(steps > tol):
        raise WrongMonotonicity("a concave generator must be non-increasing")
    if kind == 'convex' and np.any(steps < -tol):
        raise WrongMonotonicity("a convex generator must be non-decreasing")
    return pw


def generate_utility(base: MonotonePL, generator, kind: str, refine: int = None,
                     eps: float = None) -> GeneratedUtility:
    """
    Realize u(x) = integral of the generator against the base up to x.

    The generator is non-increasing for ``concave`` and non-decreasing for
    ``convex``. Knot values are exact; where a linear generator meets a linear
    base the piece is quadratic and is refined with ``refine`` sub-knots.

    Args:
        base: The u0 or v0 the utility is relative to.
        generator: StepFn, MonotonePL or Piecewise generator (k, k~, m, m~).
        kind: ``concave`` or ``convex``.
        refine: Sub-knots per quadratic piece (config ``refine_knots`` when omitted).

    Returns:
        GeneratedUtility: ``realized`` is a MonotonePL when monotone, else a Piecewise.

    Raises:
        WrongMonotonicity: The generator has the wrong direction for ``kind``.
        UnboundedGenerator: The generator takes non-finite values.
    """
    if kind not in KINDS:
        raise UnknownName(f"unknown kind {kind!r}")
    tol = tolerance(eps)
    refine = int(refine or STOCHORD_CONFIG['refine_knots'])
    gen = _check_generator(generator, kind, tol)
    base_pw = base.as_piecewise()

    grid = np.union1d(base.xs, gen._arr[0])
    b_vals = base_pw.value(grid)
    g_right = gen.right_limit(grid[:-1])
    g_left = gen.left_limit(grid[1:])

    xs = [float(grid[0])]
    ys = [0.0]
    taus = np.linspace(0.0, 1.0, refine + 1)[1:]
    for i in range(len(grid) - 1):
        s, t = grid[i], grid[i + 1]
        rise = b_vals[i + 1] - b_vals[i]
        g0, g1 = g_right[i], g_left[i]
        start = ys[-1]
        if rise == 0 or g0 == g1:
            xs.append(float(t))
            ys.append(start + rise * (g0 + g1) / 2.0)
            continue
        # 二次段：节点处取精确值
        for tau in taus:
            xs.append(float(s + tau * (t - s)))
            ys.append(start + rise * (g0 * tau + (g1 - g0) * tau * tau / 2.0))
        xs[-1] = float(t)

    ys_arr = np.asarray(ys)
    steps = np.diff(ys_arr)
    if np.all(steps >= 0):
        realized = MonotonePL(tuple(zip(xs, ys)), 'continuous', 'increasing')
    elif np.all(steps <= 0):
        realized = MonotonePL(tuple(zip(xs, ys)), 'continuous', 'decreasing')
    else:
        realized = Piecewise.from_arrays(xs, ys_arr, ys_arr, ys_arr)
    logger.debug("generated %s utility with %d knots", kind, len(xs))
    return GeneratedUtility(base, generator, kind, realized)


def check_relative_concavity(u, u0: MonotonePL, kind: str = 'concave', eps: float = None) -> RelativeCheck:
    """
    Decide whether ``u`` is u0-concave (or u0-convex) on PL representations.

    The slope ratio du/du0 is computed on every piece of the merged knot grid and
    must be non-increasing (concave) or non-decreasing (convex).

    Returns:
        RelativeCheck: ``holds`` and, on failure, the first knot where the ratio turns.

    Raises:
        DegenerateBase: u0 is flat on a piece where u varies.
    """
    if kind not in KINDS:
        raise UnknownName(f"unknown kind {kind!r}")
    tol = tolerance(eps)
    upw = as_piecewise(u)
    if upw.continuity != 'continuous':
        raise InvalidFunction("relative concavity is decided for continuous functions")
    grid = np.union1d(upw._arr[0], u0.xs)
    du = np.diff(upw.value(grid))
    du0 = np.diff(u0.value(grid))

    previous = None
    for i in range(len(du)):
        if du0[i] == 0:
            if abs(du[i]) > tol:
                raise DegenerateBase(f"base is flat on [{grid[i]}, {grid[i + 1]}] where u varies")
            continue
        ratio = du[i] / du0[i]
        if previous is not None:
            slack = tol * max(1.0, abs(previous))
            turned = ratio > previous + slack if kind == 'concave' else ratio < previous - slack
            if turned:
                return RelativeCheck(False, float(grid[i]))
        previous = ratio
    return RelativeCheck(True, None)


def _base_for(pair: StandardPair, side: str) -> MonotonePL:
    if side == 'u_side':
        return pair.u0
    if side == 'v_side':
        return pair.v0
    raise UnknownName(f"unknown side {side!r}")


def convex_ray(pair: StandardPair, side: str, cut: float) -> MonotonePL:
    """f(max(., cut)) - f(cut) for f = u0 or v0."""
    base = _base_for(pair, side)
    if side == 'v_side' and not 0.0 <= cut <= 1.0:
        raise CutOutOfRange(f"distortion cut {cut} outside [0, 1]")
    return base.clip_below(cut).affine(1.0, -base.value(cut))


def extreme_ray_family(pair: StandardPair, side: str, cut: float, kind: str = 'concave') -> MonotonePL:
    """
    Extreme member of the relatively concave (or convex) class at ``cut``.

    Concave rays are u0(min(., c)) and v0(min(., p)); convex rays are
    u0(max(., c)) - u0(c) and v0(max(., p)) - v0(p).

    Raises:
        CutOutOfRange: A v-side cut outside [0, 1].
    """
    if kind == 'convex':
        return convex_ray(pair, side, cut)
    if kind != 'concave':
        raise UnknownName(f"unknown kind {kind!r}")
    base = _base_for(pair, side)
    if side == 'v_side' and not 0.0 <= cut <= 1.0:
        raise CutOutOfRange(f"distortion cut {cut} outside [0, 1]")
    return base.clip_above(cut)


@lru_cache(maxsize=1024)
def tilde_transform(pair: StandardPair) -> StandardPair:
    """
    Reflected pair: u~0(x) = -u0((-x)-), v~0(a) = 1 - v0((1-a)+).

    For PL components the one-sided limits coincide with the values, so each
    knot is reflected through the origin (u-side) or through (1/2, 1/2) (v-side).
    """
    u_knots = tuple((-x if x != 0 else 0.0, -y if y != 0 else 0.0) for x, y in reversed(pair.u0.knots))
    v_knots = tuple((1.0 - x, 1.0 - y) for x, y in reversed(pair.v0.knots))
    u_tilde = MonotonePL(u_knots, continuity='left')
    v_tilde = MonotonePL(v_knots, continuity='right')
    return make_standard_pair(u_tilde, v_tilde)


def dual_distortion(f: MonotonePL) -> MonotonePL:
    """Survivor-side dual a -> f(1) - f(1 - a)."""
    top = f.value(1.0)
    knots = tuple((1.0 - x, top - y) for x, y in reversed(f.knots))
    return MonotonePL(knots, continuity=f.continuity, direction=f.direction)


__all__ = [
    'StandardPair',
    'GeneratedUtility',
    'RelativeCheck',
    'make_standard_pair',
    'identity_pair',
    'generate_utility',
    'check_relative_concavity',
    'convex_ray',
    'extreme_ray_family',
    'tilde_transform',
    'dual_distortion',
]
