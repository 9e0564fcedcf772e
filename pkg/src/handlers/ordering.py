"""
Decision procedures for the distorted stochastic orderings.

``F1`` is ordered below ``F2`` in the upper sense when every utility that is
more concave than u0 prefers ``F2`` after distorting probabilities with v0.
The cut family u0(min(., c)) spans those utilities, which turns the universal
statement into the cumulative criterion

    D(c) = int_(-inf, c] [v0(F1) - v0(F2)] du0 >= 0   for every c.

D is linear between consecutive cuts (atoms of either law and knots of u0), so
checking it at the cuts decides the ordering exactly. The quantile side works
the same way on the alpha-axis with the cumulative levels and the knots of v0.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from config import STOCHORD_CONFIG, tolerance
from src.core.dist_core import (
    DiscreteCdf,
    eval_cdf,
    eval_cdf_left,
    merged_locations,
    negate,
    quantile_at_levels,
)
from src.core.distortion import StandardPair, identity_pair, tilde_transform
from src.core.stieltjes import MonotonePL, cdf_step, ls_integral
from src.utils.errors import UnknownName

logger = logging.getLogger(__name__)


class Witness(NamedTuple):
    point: float
    lhs: float
    rhs: float
    axis: str


@dataclass(frozen=True)
class OrderingVerdict:
    """
    Decision record.

    ``margin`` is the worst signed slack of the defining inequality (negative
    means violated) and ``witness`` the point attaining it; it is present even
    when the ordering holds.
    """

    holds: bool
    statement: str
    witness: Optional[Witness] = None
    margin: float = 0.0
    marginal: bool = False
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'holds': self.holds,
            'statement': self.statement,
            'witness': self.witness._asdict() if self.witness else None,
            'margin': self.margin,
            'marginal': self.marginal,
            'details': self.details,
        }


class CrossingInterval(NamedTuple):
    lo: float
    hi: float
    direction: str
    left_sample: float
    right_sample: float


def _is_marginal(margin: float, tol: float) -> bool:
    return abs(margin) <= STOCHORD_CONFIG['marginal_factor'] * tol


def decide(statement: str, points, lhs, rhs, sense: str, axis: str,
           eps: float = None, details: Dict[str, Any] = None) -> OrderingVerdict:
    """
    Turn pointwise sides of an inequality into a verdict.

    Args:
        statement: Identifier of the evaluated clause.
        points: Cut points where the sides were evaluated.
        lhs: Left side at each point.
        rhs: Right side at each point.
        sense: ``>=`` or ``<=``.
        axis: ``x`` or ``alpha``.

    Returns:
        OrderingVerdict: Holds when the worst slack is at least ``-eps``.
    """
    tol = tolerance(eps)
    points = np.asarray(points, dtype=float)
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    if sense == '>=':
        slack = lhs - rhs
    elif sense == '<=':
        slack = rhs - lhs
    else:
        raise ValueError(f"unknown sense {sense!r}")

    if slack.size == 0:
        return OrderingVerdict(True, statement, None, 0.0, True, dict(details or {}))
    i = int(np.argmin(slack))
    margin = float(slack[i])
    witness = Witness(float(points[i]), float(lhs[i]), float(rhs[i]), axis)
    holds = margin >= -tol
    logger.debug("%s: holds=%s margin=%r at %s=%r", statement, holds, margin, axis, witness.point)
    return OrderingVerdict(holds, statement, witness, margin, _is_marginal(margin, tol),
                           dict(details or {}))


# --- cumulative criteria ------------------------------------------------------
def _x_cuts(pair: StandardPair, F1: DiscreteCdf, F2: DiscreteCdf, extra=()) -> np.ndarray:
    return np.union1d(merged_locations(F1, F2), np.concatenate([pair.u0.xs, np.asarray(extra, float)]))


def _alpha_cuts(pair: StandardPair, F1: DiscreteCdf, F2: DiscreteCdf, extra=()) -> np.ndarray:
    knots = pair.v0.xs[(pair.v0.xs >= 0.0) & (pair.v0.xs <= 1.0)]
    cuts = np.concatenate([[0.0, 1.0], F1.levels, F2.levels, knots, np.asarray(extra, float)])
    return np.unique(np.clip(cuts, 0.0, 1.0))


def _cdf_cumulative(pair: StandardPair, F: DiscreteCdf, cuts: np.ndarray) -> np.ndarray:
    """int_(-inf, c] v0(F) du0 at every cut (v0(F) is constant on [c_k, c_k+1))."""
    weights = pair.v0.value(eval_cdf(F, cuts[:-1]))
    rises = np.diff(pair.u0.value(cuts))
    return np.concatenate([[0.0], np.cumsum(weights * rises)])


def _quantile_cumulative(pair: StandardPair, F: DiscreteCdf, cuts: np.ndarray) -> np.ndarray:
    """int_(0, p] u0(F^-1) dv0 at every cut (u0(F^-1) is constant on (p_k-1, p_k])."""
    weights = pair.u0.value(quantile_at_levels(F, cuts[1:]))
    rises = np.diff(pair.v0.value(cuts))
    return np.concatenate([[0.0], np.cumsum(weights * rises)])


def cdf_gap(pair: StandardPair, F1: DiscreteCdf, F2: DiscreteCdf, c: float) -> float:
    """D(c) = int_(-inf, c] [v0(F1) - v0(F2)] du0."""
    cuts = _x_cuts(pair, F1, F2, extra=(c,))
    i = int(np.searchsorted(cuts, c))
    return float(_cdf_cumulative(pair, F1, cuts)[i] - _cdf_cumulative(pair, F2, cuts)[i])


def quantile_gap(pair: StandardPair, F1: DiscreteCdf, F2: DiscreteCdf, p: float) -> float:
    """Q(p) = int_(0, p] [u0(F1^-1) - u0(F2^-1)] dv0 for p in [0, 1]."""
    p = min(max(float(p), 0.0), 1.0)
    cuts = _alpha_cuts(pair, F1, F2, extra=(p,))
    i = int(np.searchsorted(cuts, p))
    return float(_quantile_cumulative(pair, F1, cuts)[i] - _quantile_cumulative(pair, F2, cuts)[i])


def lemma1_cdf_side(pair: StandardPair, F1: DiscreteCdf, F2: DiscreteCdf,
                    eps: float = None, statement: str = 'L1.i') -> OrderingVerdict:
    """
    Decide int_(-inf, c] v0(F1) du0 >= int_(-inf, c] v0(F2) du0 for every c.

    The sides are evaluated at every atom of F1, F2 and every knot of u0; the
    value at the last cut is the limit c -> +inf.
    """
    cuts = _x_cuts(pair, F1, F2)
    lhs = _cdf_cumulative(pair, F1, cuts)
    rhs = _cdf_cumulative(pair, F2, cuts)
    return decide(statement, cuts, lhs, rhs, '>=', 'x', eps,
                  {'cuts': len(cuts), 'tail_gap': float(lhs[-1] - rhs[-1])})


def lemma1_quantile_side(pair: StandardPair, F1: DiscreteCdf, F2: DiscreteCdf,
                         eps: float = None, statement: str = 'L1.ii') -> OrderingVerdict:
    """Decide int_(0, p] u0(F1^-1) dv0 <= int_(0, p] u0(F2^-1) dv0 for every p in [0, 1]."""
    cuts = _alpha_cuts(pair, F1, F2)
    lhs = _quantile_cumulative(pair, F1, cuts)
    rhs = _quantile_cumulative(pair, F2, cuts)
    return decide(statement, cuts, lhs, rhs, '<=', 'alpha', eps, {'cuts': len(cuts)})


# --- the three orderings --------------------------------------------------------
_INTEGRABILITY = 'finite support: integrability conditions hold'


def upper_ordering(pair: StandardPair, F1: DiscreteCdf, F2: DiscreteCdf, eps: float = None) -> OrderingVerdict:
    """
    Upper (u0, v0)-ordering of ``F1`` below ``F2``.

    Args:
        pair: Standard pair.
        F1: Distribution ranked lower.
        F2: Distribution ranked higher.
        eps: Comparison tolerance.

    Returns:
        OrderingVerdict: statement ``T1.i``, decided by the cumulative cdf criterion.
    """
    verdict = lemma1_cdf_side(pair, F1, F2, eps, statement='T1.i')
    verdict.details['conditions'] = _INTEGRABILITY
    return verdict


def lower_ordering(pair: StandardPair, F1: DiscreteCdf, F2: DiscreteCdf, eps: float = None) -> OrderingVerdict:
    """
    Lower (u0, v0)-ordering of ``F1`` below ``F2``.

    Reflecting the pair and the outcomes turns u0-convex utilities into
    reflected-u0-concave ones and swaps the roles of the two laws, so this is the
    upper ordering of the reflected pair for (-X2, -X1). The witness point is
    mapped back to the original axis.
    """
    reflected = upper_ordering(tilde_transform(pair), negate(F2), negate(F1), eps)
    witness = reflected.witness
    if witness is not None:
        point = -witness.point if witness.point != 0 else 0.0
        witness = witness._replace(point=point)
    details = dict(reflected.details)
    details['reflected'] = True
    return OrderingVerdict(reflected.holds, "T2.i'", witness, reflected.margin,
                           reflected.marginal, details)


def signed_concave_ordering(pair: StandardPair, F1: DiscreteCdf, F2: DiscreteCdf,
                            eps: float = None) -> OrderingVerdict:
    """
    Cumulative criterion over both signed ray families.

    Utilities with a decreasing but possibly negative generator are mixtures of
    u0(min(., c)) and of -(u0(max(., c)) - u0(c)); the first family needs
    D(c) >= 0 and the second D(c) - D(+inf) >= 0.
    """
    cuts = _x_cuts(pair, F1, F2)
    gap = _cdf_cumulative(pair, F1, cuts) - _cdf_cumulative(pair, F2, cuts)
    points = np.concatenate([cuts, cuts])
    lhs = np.concatenate([gap, gap - gap[-1]])
    return decide("T3.i''", points, lhs, np.zeros_like(lhs), '>=', 'x', eps,
                  {'tail_gap': float(gap[-1])})


def double_ordering(pair: StandardPair, F1: DiscreteCdf, F2: DiscreteCdf, eps: float = None) -> OrderingVerdict:
    """
    Double ordering: upper(F1, F2) and lower(F2, F1).

    The signed cumulative criterion is evaluated alongside and reported in
    ``details['signed_concave']``.
    """
    upper = upper_ordering(pair, F1, F2, eps)
    lower = lower_ordering(pair, F2, F1, eps)
    signed = signed_concave_ordering(pair, F1, F2, eps)
    worst = upper if upper.margin <= lower.margin else lower
    if not upper.holds:
        worst = upper
    elif not lower.holds:
        worst = lower
    details = {
        'upper': upper.to_dict(),
        'lower': lower.to_dict(),
        'signed_concave': signed.holds,
    }
    if signed.holds != (upper.holds and lower.holds):
        logger.warning("double ordering and signed criterion disagree (margins %r / %r)",
                       worst.margin, signed.margin)
    return OrderingVerdict(upper.holds and lower.holds, "T1.i+T2.i'", worst.witness,
                           min(upper.margin, lower.margin), worst.marginal, details)


# --- crossings -----------------------------------------------------------------
def find_crossings(F1: DiscreteCdf, F2: DiscreteCdf, eps: float = None) -> List[CrossingInterval]:
    """
    Locate the intervals where F1 - F2 changes sign.

    Between consecutive merged locations both cdfs are constant, so the sign of
    F1 - F2 is read per gap (zero within ``eps``). Two consecutive non-zero gaps
    of opposite sign bound a crossing interval [a, b] over the zero gaps between
    them. ``up`` means F1 lies below F2 on the left.

    Returns:
        List[CrossingInterval]: Disjoint and ordered; sampled at a - delta and
        b + delta with delta half the smallest gap.
    """
    tol = tolerance(eps)
    z = merged_locations(F1, F2)
    if len(z) < 2:
        return []
    diff = eval_cdf(F1, z) - eval_cdf(F2, z)
    sign = np.where(np.abs(diff) <= tol, 0, np.sign(diff)).astype(int)
    delta = float(np.min(np.diff(z))) / 2.0

    crossings = []
    nonzero = [i for i in range(len(z)) if sign[i] != 0]
    for i, k in zip(nonzero, nonzero[1:]):
        if sign[i] == sign[k]:
            continue
        a, b = float(z[i + 1]), float(z[k])
        direction = 'up' if sign[i] < 0 else 'down'
        left = float(eval_cdf(F1, a - delta) - eval_cdf(F2, a - delta))
        right = float(eval_cdf(F1, b + delta) - eval_cdf(F2, b + delta))
        crossings.append(CrossingInterval(a, b, direction, left, right))
    return crossings


class LocalCheck(NamedTuple):
    point: float
    level: float
    cdf_gap: float
    quantile_gap: float
    holds: bool


def crossing_local_check(pair: StandardPair, F1: DiscreteCdf, F2: DiscreteCdf,
                         eps: float = None) -> Tuple[bool, List[LocalCheck]]:
    """
    Check the local link between both criteria at every crossing point.

    At an endpoint x0 of a crossing interval, every level p in [F2(x0-), F2(x0)]
    (up-crossing) or [F1(x0-), F1(x0)] (down-crossing) satisfies Q(p) = -D(x0),
    so D(x0) >= 0 forces Q(p) <= 0. Both the identity and the implication are
    tested at the ends and the middle of each level range.
    """
    tol = tolerance(eps)
    checks = []
    for crossing in find_crossings(F1, F2, eps):
        ref = F2 if crossing.direction == 'up' else F1
        for x0 in sorted({crossing.lo, crossing.hi}):
            d = cdf_gap(pair, F1, F2, x0)
            lo_level, hi_level = float(eval_cdf_left(ref, x0)), float(eval_cdf(ref, x0))
            for p in (lo_level, (lo_level + hi_level) / 2.0, hi_level):
                q = quantile_gap(pair, F1, F2, p)
                implication = d < -tol or q <= STOCHORD_CONFIG['marginal_factor'] * tol
                identity = abs(q + d) <= STOCHORD_CONFIG['marginal_factor'] * tol * max(1.0, abs(d))
                checks.append(LocalCheck(x0, p, d, q, implication and identity))
    return all(c.holds for c in checks), checks


# --- named classical orderings --------------------------------------------------
def _span_pair(F1: DiscreteCdf, F2: DiscreteCdf) -> StandardPair:
    z = merged_locations(F1, F2)
    return identity_pair(float(z[0]), float(z[-1]))


def _fsd(F1, F2, eps):
    z = merged_locations(F1, F2)
    return decide('FSD', z, eval_cdf(F1, z), eval_cdf(F2, z), '>=', 'x', eps)


def _icv(F1, F2, eps):
    z = merged_locations(F1, F2)
    ident = MonotonePL.identity(float(z[0]), float(z[-1]))
    step1, step2 = cdf_step(F1), cdf_step(F2)
    lhs, rhs = [], []
    for c in z:
        ray = ident.clip_above(c)
        lhs.append(ls_integral(ray, step1).value)
        rhs.append(ls_integral(ray, step2).value)
    return decide('T1.iii', z, lhs, rhs, '<=', 'x', eps)


def _lorenz_upper(F1, F2, eps):
    pair = _span_pair(F1, F2)
    cuts = _alpha_cuts(pair, F1, F2)
    c1 = _quantile_cumulative(pair, F1, cuts)
    c2 = _quantile_cumulative(pair, F2, cuts)
    return decide("T2.ii'", cuts, c1[-1] - c1, c2[-1] - c2, '<=', 'alpha', eps)


def classic(name: str, F1: DiscreteCdf, F2: DiscreteCdf, eps: float = None) -> OrderingVerdict:
    """
    Named classical ordering of ``F1`` below ``F2``.

    Args:
        name: FSD, SSD, ICV, ICX, LORENZ_WEAK or LORENZ_UPPER (case-insensitive).

    Raises:
        UnknownName: Unrecognised name.
    """
    key = name.upper()
    if key == 'FSD':
        return _fsd(F1, F2, eps)
    if key == 'SSD':
        return upper_ordering(_span_pair(F1, F2), F1, F2, eps)
    if key == 'ICV':
        return _icv(F1, F2, eps)
    if key == 'ICX':
        return lower_ordering(_span_pair(F1, F2), F1, F2, eps)
    if key == 'LORENZ_WEAK':
        return lemma1_quantile_side(_span_pair(F1, F2), F1, F2, eps)
    if key == 'LORENZ_UPPER':
        return _lorenz_upper(F1, F2, eps)
    raise UnknownName(f"unknown ordering {name!r}")


def check_ordering(name: str, F1: DiscreteCdf, F2: DiscreteCdf, pair: StandardPair = None,
                   eps: float = None) -> OrderingVerdict:
    """Dispatch a classical name or UPPER/LOWER/DOUBLE (identity pair when ``pair`` is omitted)."""
    key = name.upper()
    if key in STOCHORD_CONFIG['pair_orders']:
        pair = pair or _span_pair(F1, F2)
        fn = {'UPPER': upper_ordering, 'LOWER': lower_ordering, 'DOUBLE': double_ordering}[key]
        return fn(pair, F1, F2, eps)
    return classic(key, F1, F2, eps)


__all__ = [
    'Witness',
    'OrderingVerdict',
    'CrossingInterval',
    'LocalCheck',
    'decide',
    'cdf_gap',
    'quantile_gap',
    'lemma1_cdf_side',
    'lemma1_quantile_side',
    'upper_ordering',
    'lower_ordering',
    'signed_concave_ordering',
    'double_ordering',
    'find_crossings',
    'crossing_local_check',
    'classic',
    'check_ordering',
]
