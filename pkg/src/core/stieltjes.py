"""
Exact Lebesgue-Stieltjes integration for piecewise-linear and step functions.

Every function handled here is converted to a ``Piecewise``: finitely many
breakpoints carrying a left limit, a point value and a right limit, linear in
between and constant beyond the outermost breakpoints. With the integrand and
the integrator in that form, an integral over any interval is the sum of

* the pure-jump part: g(x) times the jump of h at every breakpoint x counted by
  the interval convention, and
* the absolutely continuous part: on each gap between merged breakpoints h is
  linear and g is linear, so the integral is (h(t-) - h(s+)) * (g(s+) + g(t-)) / 2.

The interval convention is carried by the integrator's continuity tag: a
right-continuous h integrates over (a, b], a left-continuous h over [a, b).
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple, Sequence, Tuple, Union

import numpy as np

from config import tolerance
from src.core.dist_core import DiscreteCdf, eval_cdf, _quantile_closed, quantile_right
from src.utils.errors import (
    BadParams,
    ContinuityMismatch,
    EvaluationGap,
    InvalidFunction,
    NonFiniteIntegral,
    NotACompatiblePair,
    UnknownName,
)

logger = logging.getLogger(__name__)

CONTINUITY_TAGS = ('left', 'right', 'continuous')
DIRECTIONS = ('increasing', 'decreasing')


@dataclass(frozen=True)
class Piecewise:
    """
    Bounded-variation function with finitely many breakpoints.

    ``left[i]``, ``at[i]`` and ``right[i]`` are f(x_i-), f(x_i) and f(x_i+).
    Between breakpoints the function is linear from ``right[i]`` to ``left[i+1]``;
    below the first breakpoint it equals ``left[0]`` and above the last ``right[-1]``.
    A NaN point value marks a point where the function is undefined.
    """

    xs: Tuple[float, ...]
    left: Tuple[float, ...]
    at: Tuple[float, ...]
    right: Tuple[float, ...]
    _arr: Tuple[np.ndarray, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        left = np.asarray(self.left, dtype=float)
        at = np.asarray(self.at, dtype=float)
        right = np.asarray(self.right, dtype=float)
        n = len(xs)
        if n == 0 or not (len(left) == len(at) == len(right) == n):
            raise InvalidFunction("piecewise function needs matching, nonempty breakpoint arrays")
        if not np.all(np.isfinite(xs)) or np.any(np.diff(xs) <= 0):
            raise InvalidFunction("breakpoints must be finite and strictly increasing")
        if not (np.all(np.isfinite(left)) and np.all(np.isfinite(right))):
            raise InvalidFunction("one-sided limits must be finite")
        object.__setattr__(self, '_arr', (xs, left, at, right))

    @classmethod
    def from_arrays(cls, xs, left, at, right) -> 'Piecewise':
        return cls(tuple(map(float, xs)), tuple(map(float, left)),
                   tuple(map(float, at)), tuple(map(float, right)))

    @classmethod
    def constant(cls, c: float) -> 'Piecewise':
        return cls((0.0,), (float(c),), (float(c),), (float(c),))

    # --- evaluation -------------------------------------------------------
    @property
    def left_tail(self) -> float:
        """Value on (-inf, x_0): the constant extension f(-inf)."""
        return self._arr[1][0]

    @property
    def right_tail(self) -> float:
        """Value on (x_last, +inf): the constant extension f(+inf)."""
        return self._arr[3][-1]

    def _limits(self, pts) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        xs, left, at, right = self._arr
        pts = np.atleast_1d(np.asarray(pts, dtype=float))
        n = len(xs)
        idx = np.searchsorted(xs, pts, side='left')
        clamped = np.minimum(idx, n - 1)
        hit = (idx < n) & (xs[clamped] == pts)

        inner = np.zeros_like(pts)
        below = idx == 0
        above = idx == n
        middle = ~(below | above)
        inner[below] = left[0]
        inner[above] = right[-1]
        if np.any(middle):
            i = idx[middle]
            x0, x1 = xs[i - 1], xs[i]
            r0, l1 = right[i - 1], left[i]
            inner[middle] = r0 + (l1 - r0) * (pts[middle] - x0) / (x1 - x0)

        lo = np.where(hit, left[clamped], inner)
        mid = np.where(hit, at[clamped], inner)
        hi = np.where(hit, right[clamped], inner)
        return lo, mid, hi

    def value(self, x):
        _, mid, _ = self._limits(x)
        return float(mid[0]) if np.ndim(x) == 0 else mid

    def left_limit(self, x):
        lo, _, _ = self._limits(x)
        return float(lo[0]) if np.ndim(x) == 0 else lo

    def right_limit(self, x):
        _, _, hi = self._limits(x)
        return float(hi[0]) if np.ndim(x) == 0 else hi

    __call__ = value

    @property
    def jumps(self) -> np.ndarray:
        return self._arr[3] - self._arr[1]

    @property
    def continuity(self) -> str:
        """``continuous``, ``right``, ``left`` or ``mixed`` (derived from the data)."""
        _, left, at, right = self._arr
        jumping = left != right
        if not np.any(jumping):
            return 'continuous'
        if np.all(at[jumping] == right[jumping]):
            return 'right'
        if np.all(at[jumping] == left[jumping]):
            return 'left'
        return 'mixed'

    # --- arithmetic ---------------------------------------------------------
    def _on_grid(self, grid):
        return self._limits(grid)

    def __add__(self, other):
        if isinstance(other, (int, float)):
            return self.affine(1.0, float(other))
        other = as_piecewise(other)
        grid = np.union1d(self._arr[0], other._arr[0])
        a = self._on_grid(grid)
        b = other._on_grid(grid)
        return Piecewise.from_arrays(grid, a[0] + b[0], a[1] + b[1], a[2] + b[2])

    __radd__ = __add__

    def __neg__(self):
        return self.affine(-1.0, 0.0)

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            return self.affine(1.0, -float(other))
        return self + (-as_piecewise(other))

    def __rsub__(self, other):
        return (-self) + other

    def affine(self, scale: float, offset: float) -> 'Piecewise':
        xs, left, at, right = self._arr
        return Piecewise.from_arrays(xs, scale * left + offset, scale * at + offset,
                                     scale * right + offset)

    def as_piecewise(self) -> 'Piecewise':
        return self


@dataclass(frozen=True)
class MonotonePL:
    """
    Monotone piecewise-linear function.

    Linear interpolation between knots, constant extension outside the knot
    range. The continuity tag is informational for continuous PL functions and
    decides which role the function may take in a standard pair.
    """

    knots: Tuple[Tuple[float, float], ...]
    continuity: str = 'continuous'
    direction: str = 'increasing'
    _pw: Piecewise = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        knots = tuple((float(x), float(y)) for x, y in self.knots)
        object.__setattr__(self, 'knots', knots)
        if not knots:
            raise InvalidFunction("piecewise-linear function needs at least one knot")
        if self.continuity not in CONTINUITY_TAGS:
            raise InvalidFunction(f"unknown continuity tag {self.continuity!r}")
        if self.direction not in DIRECTIONS:
            raise InvalidFunction(f"unknown direction {self.direction!r}")
        xs = np.array([k[0] for k in knots])
        ys = np.array([k[1] for k in knots])
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise InvalidFunction("knots must be finite")
        if np.any(np.diff(xs) <= 0):
            raise InvalidFunction("knot x-coordinates must be strictly increasing")
        steps = np.diff(ys)
        if self.direction == 'increasing' and np.any(steps < 0):
            raise InvalidFunction("knot values decrease in an increasing function")
        if self.direction == 'decreasing' and np.any(steps > 0):
            raise InvalidFunction("knot values increase in a decreasing function")
        object.__setattr__(self, '_pw', Piecewise.from_arrays(xs, ys, ys, ys))

    @classmethod
    def identity(cls, lo: float, hi: float, continuity: str = 'continuous') -> 'MonotonePL':
        """x -> x on [lo, hi], widened by one on each side when lo == hi."""
        lo, hi = float(lo), float(hi)
        if lo >= hi:
            lo, hi = lo - 1.0, hi + 1.0
        return cls(((lo, lo), (hi, hi)), continuity=continuity)

    @property
    def xs(self) -> np.ndarray:
        return self._pw._arr[0]

    @property
    def ys(self) -> np.ndarray:
        return self._pw._arr[2]

    def value(self, x):
        return self._pw.value(x)

    __call__ = value

    def as_piecewise(self) -> Piecewise:
        return self._pw

    def clip_above(self, c: float) -> 'MonotonePL':
        """x -> f(min(x, c))."""
        c = float(c)
        kept = [k for k in self.knots if k[0] < c]
        kept.append((c, self.value(c)))
        return MonotonePL(tuple(kept), self.continuity, self.direction)

    def clip_below(self, c: float) -> 'MonotonePL':
        """x -> f(max(x, c))."""
        c = float(c)
        kept = [(c, self.value(c))]
        kept.extend(k for k in self.knots if k[0] > c)
        return MonotonePL(tuple(kept), self.continuity, self.direction)

    def affine(self, scale: float, offset: float = 0.0) -> 'MonotonePL':
        """x -> scale * f(x) + offset; a negative scale flips the direction."""
        flip = scale < 0
        direction = self.direction
        if flip:
            direction = 'decreasing' if direction == 'increasing' else 'increasing'
        knots = tuple((x, scale * y + offset) for x, y in self.knots)
        return MonotonePL(knots, self.continuity, direction)


@dataclass(frozen=True)
class StepFn:
    """Step function: ``base`` to the left of every jump, then cumulative jumps."""

    base: float
    jumps: Tuple[Tuple[float, float], ...]
    continuity: str = 'right'
    _pw: Piecewise = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        jumps = tuple((float(x), float(d)) for x, d in self.jumps)
        object.__setattr__(self, 'jumps', jumps)
        object.__setattr__(self, 'base', float(self.base))
        if self.continuity not in ('left', 'right'):
            raise InvalidFunction(f"step functions are left or right continuous, got {self.continuity!r}")
        if not np.isfinite(self.base):
            raise InvalidFunction("step base must be finite")
        if not jumps:
            object.__setattr__(self, '_pw', Piecewise.constant(self.base))
            return
        xs = np.array([j[0] for j in jumps])
        ds = np.array([j[1] for j in jumps])
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ds))):
            raise InvalidFunction("jumps must be finite")
        if np.any(np.diff(xs) <= 0):
            raise InvalidFunction("jump locations must be strictly increasing")
        if np.any(ds == 0):
            raise InvalidFunction("zero jumps are not allowed")
        after = self.base + np.cumsum(ds)
        before = np.concatenate([[self.base], after[:-1]])
        at = after if self.continuity == 'right' else before
        object.__setattr__(self, '_pw', Piecewise.from_arrays(xs, before, at, after))

    @classmethod
    def from_levels(cls, base: float, points: Sequence[float], values: Sequence[float],
                    continuity: str = 'right') -> 'StepFn':
        """Step function equal to ``values[i]`` after ``points[i]``; zero jumps dropped."""
        values = np.asarray(values, dtype=float)
        previous = np.concatenate([[float(base)], values[:-1]])
        deltas = values - previous
        jumps = tuple((float(x), float(d)) for x, d in zip(points, deltas) if d != 0)
        return cls(float(base), jumps, continuity)

    def value(self, x):
        return self._pw.value(x)

    __call__ = value

    def as_piecewise(self) -> Piecewise:
        return self._pw


Evaluable = Union[MonotonePL, StepFn, Piecewise]


class IntegralResult(NamedTuple):
    value: float
    atoms_counted: Tuple[float, ...]


def as_piecewise(f) -> Piecewise:
    """Convert a supported function; arbitrary callables are rejected."""
    if isinstance(f, (MonotonePL, StepFn, Piecewise)):
        return f.as_piecewise()
    if isinstance(f, (int, float)):
        return Piecewise.constant(float(f))
    raise EvaluationGap(f"cannot integrate {type(f).__name__} exactly; "
                        "use MonotonePL, StepFn or Piecewise")


def sample_pl(func: Callable, grid: Iterable[float], continuity: str = 'continuous') -> MonotonePL:
    """
    PL sampler for smooth utilities and distortions.

    Args:
        func: Vectorized callable evaluated on the grid.
        grid: Knot x-coordinates (sorted, distinct).
        continuity: Continuity tag of the result.

    Returns:
        MonotonePL: Interpolant of ``func`` on the grid; direction inferred.
    """
    xs = np.asarray(list(grid), dtype=float)
    ys = np.asarray(func(xs), dtype=float)
    direction = 'increasing' if np.all(np.diff(ys) >= 0) else 'decreasing'
    return MonotonePL(tuple(zip(xs.tolist(), ys.tolist())), continuity, direction)


def ls_integral(g, h, a: float = -np.inf, b: float = np.inf) -> IntegralResult:
    """
    Lebesgue-Stieltjes integral of ``g`` against ``h`` over an interval.

    The integrator's continuity decides the interval: right-continuous ``h``
    integrates over (a, b], left-continuous over [a, b). Infinite endpoints
    mean full tails; constant extension makes the tails contribute nothing.

    Args:
        g: Integrand (MonotonePL, StepFn or Piecewise).
        h: Integrator (MonotonePL, StepFn or Piecewise).
        a: Lower endpoint (may be -inf).
        b: Upper endpoint (may be +inf).

    Returns:
        IntegralResult: The value and the jump locations that were counted.

    Raises:
        EvaluationGap: ``g`` is not an exact evaluable or is undefined at a jump of ``h``.
        ContinuityMismatch: ``h`` is neither left nor right continuous.
        NonFiniteIntegral: The sum is not finite.
    """
    G = as_piecewise(g)
    H = as_piecewise(h)
    a, b = float(a), float(b)
    if a > b:
        raise BadParams(f"empty interval ({a}, {b})")
    if a == b:
        return IntegralResult(0.0, ())

    side = H.continuity
    if side == 'mixed':
        raise ContinuityMismatch("integrator mixes left and right continuous jumps")

    hx, h_left, h_at, h_right = H._arr
    dh = h_right - h_left
    if side == 'left':
        window = (hx >= a) & (hx < b)
    else:
        window = (hx > a) & (hx <= b)
    counted = window & (dh != 0)
    pts = hx[counted]
    atom_part = 0.0
    if pts.size:
        g_at = G.value(pts)
        if not np.all(np.isfinite(g_at)):
            bad = pts[~np.isfinite(g_at)]
            raise EvaluationGap(f"integrand undefined at jump point(s) {bad.tolist()}")
        atom_part = float(np.dot(g_at, dh[counted]))

    grid = np.union1d(G._arr[0], hx)
    grid = grid[(grid > a) & (grid < b)]
    ends = [e for e in (a, b) if np.isfinite(e)]
    grid = np.union1d(grid, ends)
    ac_part = 0.0
    if grid.size >= 2:
        s, t = grid[:-1], grid[1:]
        rise = H.left_limit(t) - H.right_limit(s)
        active = rise != 0
        if np.any(active):
            g_s = G.right_limit(s[active])
            g_t = G.left_limit(t[active])
            ac_part = float(np.dot(rise[active], (g_s + g_t) / 2.0))

    total = atom_part + ac_part
    if not np.isfinite(total):
        raise NonFiniteIntegral(f"integral over ({a}, {b}) is not finite")
    return IntegralResult(total, tuple(float(p) for p in pts))


# --- compositions with a cdf ------------------------------------------------
def cdf_step(F: DiscreteCdf) -> StepFn:
    """The cdf as a right-continuous step function (base 0)."""
    return StepFn.from_levels(0.0, F.locations, F.levels, 'right')


def compose_cdf(g, F: DiscreteCdf) -> StepFn:
    """x -> g(F(x)) on the x-axis; right continuous."""
    G = as_piecewise(g)
    return StepFn.from_levels(G.value(0.0), F.locations, G.value(F.levels), 'right')


def compose_survivor(g, F: DiscreteCdf) -> StepFn:
    """x -> g(1 - F(x)) on the x-axis; right continuous."""
    G = as_piecewise(g)
    return StepFn.from_levels(G.value(1.0), F.locations, G.value(1.0 - F.levels), 'right')


def compose_quantile(g, F: DiscreteCdf) -> StepFn:
    """
    alpha -> g(F^-1(alpha)) on the alpha-axis; left continuous.

    Below alpha = 0 the value is g(-inf) and above alpha = 1 it is g(+inf)
    (the constant extensions), so integrals over the whole axis carry the
    boundary terms shared by every distribution.
    """
    G = as_piecewise(g)
    points = np.concatenate([[0.0], F.levels[:-1], [1.0]])
    values = np.concatenate([G.value(F.locations), [G.right_tail]])
    return StepFn.from_levels(G.left_tail, points, values, 'left')


# --- identity checks ---------------------------------------------------------
def integrate_by_parts_check(U, V, a: float, b: float) -> float:
    """
    Residual of integration by parts on a compact interval.

    Returns |int_(a,b] U dV + int_[a,b) V dU - (U(b)V(b) - U(a)V(a))|.

    Raises:
        ContinuityMismatch: ``U`` is not left continuous or ``V`` not right continuous.
    """
    Up, Vp = as_piecewise(U), as_piecewise(V)
    if Up.continuity not in ('left', 'continuous'):
        raise ContinuityMismatch("U must be left continuous")
    if Vp.continuity not in ('right', 'continuous'):
        raise ContinuityMismatch("V must be right continuous")
    if not a < b:
        raise BadParams(f"integration by parts needs a < b, got ({a}, {b})")
    first = ls_integral(Up, Vp, a, b).value
    second = ls_integral(Vp, Up, a, b).value
    boundary = Up.value(b) * Vp.value(b) - Up.value(a) * Vp.value(a)
    return abs(first + second - boundary)


def _check_unit_interval(v: MonotonePL):
    if v.xs[0] < 0.0 or v.xs[-1] > 1.0:
        raise InvalidFunction("distortion knots must lie in [0, 1]")


def change_of_variables_sides(u, v: MonotonePL, F: DiscreteCdf, which: str) -> Tuple[float, float]:
    """Both sides of a change-of-variables identity (x-side, alpha-side)."""
    _check_unit_interval(v)
    key = which.upper()
    if key in ('CV1', 'CV2'):
        # int u dv(F) = int u(F^-1) dv
        x_side = ls_integral(u, compose_cdf(v, F)).value
        alpha_side = ls_integral(compose_quantile(u, F), v).value
    elif key in ('CV3', 'CV4'):
        # int v(F) du = int v du(F^-1)
        x_side = ls_integral(compose_cdf(v, F), u).value
        alpha_side = ls_integral(v, compose_quantile(u, F)).value
    else:
        raise UnknownName(f"unknown change-of-variables identity {which!r}")
    return x_side, alpha_side


def change_of_variables_check(u, v: MonotonePL, F: DiscreteCdf, which: str) -> float:
    """Absolute difference between the two sides of CV1..CV4."""
    x_side, alpha_side = change_of_variables_sides(u, v, F, which)
    return abs(x_side - alpha_side)


def pushforward_check(u0, v0: MonotonePL, F: DiscreteCdf, a: float) -> float:
    """
    Change of variables over A = (-inf, a] with phi = F^-1.

    Returns |int_(0, F(a)] u0(F^-1) dv0 - int_(-inf, a] u0 d(v0 o F)|.
    """
    level = eval_cdf(F, a)
    alpha_side = ls_integral(compose_quantile(u0, F), v0, 0.0, level).value
    x_side = ls_integral(u0, compose_cdf(v0, F), -np.inf, a).value
    return abs(alpha_side - x_side)


def lemma4_identity_check(pair, F: DiscreteCdf, x1: float, alpha1: float, eps: float = None) -> float:
    """
    Residual of the local identity tying the cdf side to the quantile side.

    Left side: int_(-inf, x1] v0(F) du0 + int_(0, alpha1] u0(F^-1) dv0.
    Right side: v0(F(x1))u0(x1) + v0(alpha1)u0(q) - v0(F(x1))u0(q), where q is
    the value of F^-1 on (alpha1, F(x1)]: x1 when alpha1 < F(x1), else F^-1(alpha1).

    Args:
        pair: Standard pair (anything with ``u0`` and ``v0``).
        F: Distribution.
        x1: Point on the x-axis.
        alpha1: Level in [0, 1].

    Raises:
        NotACompatiblePair: Neither F(x1-) <= alpha1 <= F(x1) nor
            F^-1(alpha1) <= x1 <= F^-1(alpha1+) holds.
    """
    tol = tolerance(eps)
    u0, v0 = pair.u0, pair.v0
    x1, alpha1 = float(x1), float(alpha1)
    if not 0.0 <= alpha1 <= 1.0:
        raise NotACompatiblePair(f"level {alpha1} outside [0, 1]")
    level = eval_cdf(F, x1)
    level_left = level - sum(m for x, m in F.atoms if x == x1)
    compatible = level_left - tol <= alpha1 <= level + tol
    if not compatible and 0.0 < alpha1 < 1.0:
        compatible = _quantile_closed(F, alpha1) <= x1 <= quantile_right(F, alpha1)
    if not compatible:
        raise NotACompatiblePair(f"(x1={x1}, alpha1={alpha1}) is not compatible with F")

    lhs = (ls_integral(compose_cdf(v0, F), u0, -np.inf, x1).value
           + ls_integral(compose_quantile(u0, F), v0, 0.0, alpha1).value)
    if alpha1 < level or alpha1 <= 0.0:
        pivot = x1
    else:
        pivot = _quantile_closed(F, alpha1)
    vF, va = v0.value(level), v0.value(alpha1)
    rhs = vF * u0.value(x1) + va * u0.value(pivot) - vF * u0.value(pivot)
    logger.debug("local identity at x1=%s alpha1=%s: lhs=%r rhs=%r", x1, alpha1, lhs, rhs)
    return abs(lhs - rhs)


__all__ = [
    'Piecewise',
    'MonotonePL',
    'StepFn',
    'IntegralResult',
    'as_piecewise',
    'sample_pl',
    'ls_integral',
    'cdf_step',
    'compose_cdf',
    'compose_survivor',
    'compose_quantile',
    'integrate_by_parts_check',
    'change_of_variables_sides',
    'change_of_variables_check',
    'pushforward_check',
    'lemma4_identity_check',
]
