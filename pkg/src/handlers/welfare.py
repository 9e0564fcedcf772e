"""
Rank-dependent welfare functionals and the perception corollaries.

A perception f0 is an increasing distortion of [0, 1] with f0(0) = 0 and
f0(1) = 1. Yaari welfare is W(F) = int x df0(F(x)); it is computed three ways
(cdf, quantile and survivor forms) and the forms must agree.
"""

import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Tuple

import numpy as np

from config import STOCHORD_CONFIG, tolerance
from src.core.dist_core import DiscreteCdf
from src.core.distortion import (
    RelativeCheck,
    check_relative_concavity,
    dual_distortion,
    make_standard_pair,
)
from src.core.stieltjes import (
    MonotonePL,
    compose_cdf,
    compose_quantile,
    compose_survivor,
    ls_integral,
)
from src.handlers.clauses import evaluate_clauses
from src.handlers.ordering import OrderingVerdict
from src.utils.errors import (
    BadBoundary,
    BadParams,
    InternalIdentityViolation,
    NotIncreasing,
    RhoOutOfRange,
    ZeroMeanNormalize,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Perception:
    """
    Validated perception.

    Attributes:
        f0: Increasing PL distortion on [0, 1].
        label: Display name.
        approx_error: Maximum gap between ``f0`` and the smooth curve it approximates.
    """

    f0: MonotonePL
    label: str = 'custom'
    approx_error: float = 0.0


class YaariForms(NamedTuple):
    cdf_form: float
    quantile_form: float
    survivor_form: float


def perception(f0: MonotonePL, label: str = 'custom', approx_error: float = 0.0,
               eps: float = None) -> Perception:
    """
    Validate a perception.

    Raises:
        NotIncreasing: ``f0`` is decreasing.
        BadBoundary: f0(0) != 0, f0(1) != 1 or knots outside [0, 1].
    """
    tol = tolerance(eps)
    if f0.direction != 'increasing' and f0.ys[0] != f0.ys[-1]:
        raise NotIncreasing("perception must be increasing")
    if f0.xs[0] < 0.0 or f0.xs[-1] > 1.0:
        raise BadBoundary("perception knots must lie in [0, 1]")
    if abs(f0.value(0.0)) > tol or abs(f0.value(1.0) - 1.0) > tol:
        raise BadBoundary("perception must satisfy f0(0) = 0 and f0(1) = 1")
    return Perception(f0, label, float(approx_error))


def identity_perception() -> Perception:
    return Perception(MonotonePL(((0.0, 0.0), (1.0, 1.0))), 'identity')


def _as_f0(f0) -> MonotonePL:
    return f0.f0 if isinstance(f0, Perception) else f0


def _chord_error(grid: np.ndarray, rho: float) -> float:
    a, b = grid[:-1], grid[1:]
    slope = (b ** rho - a ** rho) / (b - a)
    with np.errstate(over='ignore', divide='ignore', invalid='ignore'):
        peak = (slope / rho) ** (1.0 / (rho - 1.0))
    peak = np.clip(np.nan_to_num(peak, nan=0.0), a, b)
    gap = a ** rho + slope * (peak - a) - peak ** rho
    return float(np.max(gap, initial=0.0))


def s_gini_perception(rho: float, grid_size: int = None) -> Perception:
    """
    PL approximation of p -> p**rho on ``grid_size`` uniform knots.

    Args:
        rho: Inequality-aversion parameter, finite and greater than one.
        grid_size: Number of knots (config ``sgini_grid`` when omitted).

    Returns:
        Perception: Endpoints exact; ``approx_error`` is the largest chord gap.

    Raises:
        RhoOutOfRange: ``rho`` is not a finite number above one.
    """
    rho = float(rho)
    if not (np.isfinite(rho) and rho > 1.0):
        raise RhoOutOfRange(f"S-Gini parameter must exceed 1, got {rho}")
    grid_size = int(grid_size or STOCHORD_CONFIG['sgini_grid'])
    if grid_size < 2:
        raise BadParams("S-Gini grid needs at least two knots")
    grid = np.linspace(0.0, 1.0, grid_size)
    values = grid ** rho
    values[0], values[-1] = 0.0, 1.0
    f0 = MonotonePL(tuple(zip(grid.tolist(), values.tolist())))
    return Perception(f0, f"s-gini(rho={rho:g})", _chord_error(grid, rho))


def _support_identity(F: DiscreteCdf) -> MonotonePL:
    lo, hi = F.support
    return MonotonePL.identity(lo, hi)


def mean(F: DiscreteCdf) -> float:
    return F.mean


def rdeu(u0, f0, F: DiscreteCdf) -> float:
    """Rank-dependent expected utility int u0 df0(F)."""
    return ls_integral(u0, compose_cdf(_as_f0(f0), F)).value


def expected_utility(u, F: DiscreteCdf) -> float:
    return ls_integral(u, compose_cdf(identity_perception().f0, F)).value


def yaari_forms(f0, F: DiscreteCdf) -> YaariForms:
    """The cdf, quantile and survivor forms of Yaari welfare."""
    f = _as_f0(f0)
    ident = _support_identity(F)
    cdf_form = ls_integral(ident, compose_cdf(f, F)).value
    quantile_form = ls_integral(compose_quantile(ident, F), f).value
    survivor_form = -ls_integral(ident, compose_survivor(dual_distortion(f), F)).value
    return YaariForms(cdf_form, quantile_form, survivor_form)


def yaari(f0, F: DiscreteCdf, eps: float = None) -> float:
    """
    Yaari welfare W(F) = int x df0(F(x)).

    Raises:
        InternalIdentityViolation: The three forms disagree beyond tolerance.
    """
    tol = tolerance(eps)
    forms = yaari_forms(f0, F)
    spread = max(forms) - min(forms)
    if spread > tol * max(1.0, abs(forms.cdf_form)):
        raise InternalIdentityViolation(f"Yaari forms disagree: {forms}")
    return forms.cdf_form


def gini_index(F: DiscreteCdf, grid_size: int = None) -> float:
    """
    Derived Gini index W_2(F) / mean(F) - 1 with the p**2 perception.

    Raises:
        ZeroMeanNormalize: The mean is not positive.
    """
    mu = F.mean
    if mu <= 0:
        raise ZeroMeanNormalize(f"Gini index needs a positive mean, got {mu}")
    return yaari(s_gini_perception(2.0, grid_size), F) / mu - 1.0


def lorenz_curve(F: DiscreteCdf, n_points: int = None, normalize: bool = False) -> List[Tuple[float, float]]:
    """
    Rows (p, int_0^p F^-1) for p = 0, 1/n, ..., 1.

    Args:
        F: Distribution.
        n_points: Number of intervals (config ``lorenz_points`` when omitted).
        normalize: Divide by the mean (classical Lorenz curve).

    Raises:
        ZeroMeanNormalize: ``normalize`` with a non-positive mean.
    """
    n = int(n_points or STOCHORD_CONFIG['lorenz_points'])
    if n < 1:
        raise BadParams("Lorenz curve needs at least one interval")
    ps = np.arange(n + 1) / n
    before = np.concatenate([[0.0], F.levels[:-1]])
    widths = np.clip(ps[:, None], before[None, :], F.levels[None, :]) - before[None, :]
    values = widths @ F.locations
    if normalize:
        mu = F.mean
        if mu <= 0:
            raise ZeroMeanNormalize(f"cannot normalize by mean {mu}")
        values = values / mu
    return [(float(p), float(v)) for p, v in zip(ps, values)]


# --- corollaries ---------------------------------------------------------------
def _pair(u0, f0, F1: DiscreteCdf, F2: DiscreteCdf):
    if u0 is None:
        lo = min(F1.support.min_loc, F2.support.min_loc)
        hi = max(F1.support.max_loc, F2.support.max_loc)
        u0 = MonotonePL.identity(lo, hi)
    return make_standard_pair(u0, _as_f0(f0))


def corollary1_verdicts(f0, F1: DiscreteCdf, F2: DiscreteCdf, eps: float = None) -> Tuple[OrderingVerdict, OrderingVerdict]:
    """
    Risk-averse preference under perception f0 against its quantile dual.

    s1: every increasing concave u has int u df0(F1) <= int u df0(F2).
    s2: every increasing f0-concave f has int F1^-1 df <= int F2^-1 df.
    """
    verdicts = evaluate_clauses(('T1.iii', 'T1.ii'), _pair(None, f0, F1, F2), F1, F2, eps)
    return verdicts['T1.iii'], verdicts['T1.ii']


def corollary1_check(f0, F1: DiscreteCdf, F2: DiscreteCdf, eps: float = None) -> Tuple[bool, bool]:
    s1, s2 = corollary1_verdicts(f0, F1, F2, eps)
    return s1.holds, s2.holds


def corollary2_verdicts(u0: MonotonePL, f0, F1: DiscreteCdf, F2: DiscreteCdf,
                        eps: float = None) -> Tuple[OrderingVerdict, OrderingVerdict]:
    """
    Same comparison for decision-makers more risk averse than u0.

    s3 integrates u0-concave rays against f0(F); s4 integrates u0 against
    the f0-concave rays composed with F.
    """
    verdicts = evaluate_clauses(('T1.iii', 'T1.ii*'), _pair(u0, f0, F1, F2), F1, F2, eps)
    return verdicts['T1.iii'], verdicts['T1.ii*']


def corollary2_check(u0: MonotonePL, f0, F1: DiscreteCdf, F2: DiscreteCdf,
                     eps: float = None) -> Tuple[bool, bool]:
    s3, s4 = corollary2_verdicts(u0, f0, F1, F2, eps)
    return s3.holds, s4.holds


def more_inequality_averse(f: MonotonePL, f0, eps: float = None) -> RelativeCheck:
    """Whether ``f`` is f0-convex (slope ratio df/df0 non-decreasing)."""
    return check_relative_concavity(f, _as_f0(f0), kind='convex', eps=eps)


__all__ = [
    'Perception',
    'YaariForms',
    'perception',
    'identity_perception',
    's_gini_perception',
    'mean',
    'rdeu',
    'expected_utility',
    'yaari_forms',
    'yaari',
    'gini_index',
    'lorenz_curve',
    'corollary1_verdicts',
    'corollary1_check',
    'corollary2_verdicts',
    'corollary2_check',
    'more_inequality_averse',
]
