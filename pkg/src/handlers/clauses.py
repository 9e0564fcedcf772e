"""
Independent finite evaluators for every clause of the equivalence theorems.

Each clause quantifies over an extreme-ray family (cuts of u0 on the x-axis or
of v0 on the alpha-axis) and integrates with ``ls_integral`` against the
compositions of each law with the pair. None of them reuses the cumulative
sums of ``ordering``, so agreement between clauses is a real cross-check.
"""

import logging
from functools import cached_property
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from src.core.dist_core import DiscreteCdf, merged_locations
from src.core.distortion import StandardPair, convex_ray, extreme_ray_family
from src.core.stieltjes import (
    Piecewise,
    as_piecewise,
    compose_cdf,
    compose_quantile,
    ls_integral,
)
from src.handlers.ordering import OrderingVerdict, decide
from src.utils.errors import UnknownName

logger = logging.getLogger(__name__)


# 射线族：(所在轴, 构造函数)
def _u_conc(pair, c):
    return extreme_ray_family(pair, 'u_side', c)


def _u_conv(pair, c):
    return convex_ray(pair, 'u_side', c)


def _u_dec(pair, c):
    return convex_ray(pair, 'u_side', c).affine(-1.0)


def _v_conc(pair, p):
    return extreme_ray_family(pair, 'v_side', p)


def _v_conv(pair, p):
    return convex_ray(pair, 'v_side', p)


def _v_dec(pair, p):
    return convex_ray(pair, 'v_side', p).affine(-1.0)


FAMILIES = {
    'u_conc': ('x', _u_conc),
    'u_conv': ('x', _u_conv),
    'u_dec': ('x', _u_dec),
    'v_conc': ('alpha', _v_conc),
    'v_conv': ('alpha', _v_conv),
    'v_dec': ('alpha', _v_dec),
}


class ComposedLaw:
    """
    A law together with its compositions with a standard pair.

    The compositions do not depend on the ray, so every cut of every clause
    evaluated on the same (pair, F) shares them.
    """

    def __init__(self, pair: StandardPair, F: DiscreteCdf):
        self.pair = pair
        self.F = F

    @cached_property
    def v0_cdf(self) -> Piecewise:
        return as_piecewise(compose_cdf(self.pair.v0, self.F))

    @cached_property
    def v0_survival(self) -> Piecewise:
        return self.v0_cdf.affine(-1.0, 1.0)

    @cached_property
    def u0_quantile(self) -> Piecewise:
        return as_piecewise(compose_quantile(self.pair.u0, self.F))


# 积分形式：(ray, law) -> float
def _cdf_d_ray(R, law):
    return ls_integral(law.v0_cdf, R).value


def _survival_d_ray(R, law):
    return -ls_integral(law.v0_survival, R).value


def _quantile_d_ray(R, law):
    return ls_integral(law.u0_quantile, R).value


def _ray_d_cdf(R, law):
    return ls_integral(R, law.v0_cdf).value


def _ray_d_quantile(R, law):
    return ls_integral(R, law.u0_quantile).value


def _complement_d_quantile(R, law):
    return -ls_integral(R.affine(-1.0, 1.0), law.u0_quantile).value


# 星号形式的复合依赖射线本身，无法共享
def _v0_d_ray_quantile(R, law):
    return ls_integral(law.pair.v0, compose_quantile(R, law.F)).value


def _u0_d_ray_cdf(R, law):
    return ls_integral(law.pair.u0, compose_cdf(R, law.F)).value


def _ray_quantile_d_v0(R, law):
    return ls_integral(compose_quantile(R, law.F), law.pair.v0).value


def _ray_cdf_d_u0(R, law):
    return ls_integral(compose_cdf(R, law.F), law.pair.u0).value


ClauseSpec = Tuple[Tuple[str, ...], Callable, str]

CLAUSE_TABLE: Dict[str, ClauseSpec] = {
    # 上序：凹射线
    'T1.i': (('u_conc',), _cdf_d_ray, '>='),
    'T1.ii': (('v_conc',), _quantile_d_ray, '<='),
    'T1.iii': (('u_conc',), _ray_d_cdf, '<='),
    'T1.iv': (('v_conc',), _ray_d_quantile, '>='),
    # 变量替换 alpha = F(x) 后的形式
    'T1.i*': (('u_conc',), _v0_d_ray_quantile, '>='),
    'T1.ii*': (('v_conc',), _u0_d_ray_cdf, '<='),
    'T1.iii*': (('u_conc',), _ray_quantile_d_v0, '<='),
    'T1.iv*': (('v_conc',), _ray_cdf_d_u0, '>='),
    # 下序：凸射线
    "T2.i'": (('u_conv',), _survival_d_ray, '>='),
    "T2.ii'": (('v_conv',), _quantile_d_ray, '<='),
    "T2.iii'": (('u_conv',), _ray_d_cdf, '<='),
    "T2.iv'": (('v_conv',), _complement_d_quantile, '>='),
    # 双序：两族带符号射线
    "T3.i''": (('u_conc', 'u_dec'), _cdf_d_ray, '>='),
    "T3.ii''": (('v_conc', 'v_dec'), _quantile_d_ray, '<='),
    "T3.iii''": (('u_conc', 'u_dec'), _ray_d_cdf, '<='),
    "T3.iv''": (('v_conc', 'v_dec'), _ray_d_quantile, '>='),
}

THEOREM_CLAUSES: Dict[str, List[str]] = {
    'T1': ['T1.i', 'T1.ii', 'T1.iii', 'T1.iv'],
    'T1-star': ['T1.i*', 'T1.ii*', 'T1.iii*', 'T1.iv*'],
    'T2': ["T2.i'", "T2.ii'", "T2.iii'", "T2.iv'"],
    'T3': ["T3.i''", "T3.ii''", "T3.iii''", "T3.iv''"],
}


def x_cuts(pair: StandardPair, F1: DiscreteCdf, F2: DiscreteCdf) -> np.ndarray:
    """Atoms of both laws and knots of u0."""
    return np.union1d(merged_locations(F1, F2), pair.u0.xs)


def alpha_cuts(pair: StandardPair, F1: DiscreteCdf, F2: DiscreteCdf) -> np.ndarray:
    """Cumulative levels of both laws, knots of v0 inside [0, 1], and the ends."""
    knots = pair.v0.xs[(pair.v0.xs >= 0.0) & (pair.v0.xs <= 1.0)]
    return np.unique(np.concatenate([[0.0, 1.0], F1.levels, F2.levels, knots]))


def _lookup(statement: str) -> ClauseSpec:
    try:
        return CLAUSE_TABLE[statement]
    except KeyError:
        raise UnknownName(f"unknown clause {statement!r}")


def _evaluate(statement: str, law1: ComposedLaw, law2: ComposedLaw, cuts: Dict[str, np.ndarray],
              rays: Dict[str, List], eps: Optional[float]) -> OrderingVerdict:
    families, integral, sense = _lookup(statement)
    points, lhs, rhs = [], [], []
    axis = FAMILIES[families[0]][0]
    for family in families:
        axis, make_ray = FAMILIES[family]
        if family not in rays:
            rays[family] = [make_ray(law1.pair, float(cut)) for cut in cuts[axis]]
        for cut, ray in zip(cuts[axis], rays[family]):
            points.append(cut)
            lhs.append(integral(ray, law1))
            rhs.append(integral(ray, law2))
    return decide(statement, points, lhs, rhs, sense, axis, eps, {'rays': len(points)})


def evaluate_clauses(statements: Iterable[str], pair: StandardPair, F1: DiscreteCdf, F2: DiscreteCdf,
                     eps: float = None) -> Dict[str, OrderingVerdict]:
    """
    Evaluate several clauses on one instance.

    Cut families, rays and the compositions of ``F1`` and ``F2`` with the pair are
    built once and shared by every clause.

    Raises:
        UnknownName: Unknown clause identifier.
    """
    statements = list(statements)
    for statement in statements:
        _lookup(statement)
    law1, law2 = ComposedLaw(pair, F1), ComposedLaw(pair, F2)
    cuts = {'x': x_cuts(pair, F1, F2), 'alpha': alpha_cuts(pair, F1, F2)}
    rays: Dict[str, List] = {}
    return {s: _evaluate(s, law1, law2, cuts, rays, eps) for s in statements}


def evaluate_clause(statement: str, pair: StandardPair, F1: DiscreteCdf, F2: DiscreteCdf,
                    eps: float = None) -> OrderingVerdict:
    """
    Evaluate one clause over its cut family.

    Args:
        statement: Clause identifier, e.g. ``T1.iii`` or ``T2.iv'``.
        pair: Standard pair.
        F1: Distribution on the left of the clause.
        F2: Distribution on the right of the clause.

    Returns:
        OrderingVerdict: Worst cut as witness.

    Raises:
        UnknownName: Unknown clause identifier.
    """
    return evaluate_clauses([statement], pair, F1, F2, eps)[statement]


def evaluate_theorem(theorem: str, pair: StandardPair, F1: DiscreteCdf, F2: DiscreteCdf,
                     eps: float = None) -> Dict[str, OrderingVerdict]:
    """Evaluate every clause of ``theorem`` (T1, T1-star, T2 or T3)."""
    try:
        statements = THEOREM_CLAUSES[theorem]
    except KeyError:
        raise UnknownName(f"unknown theorem {theorem!r}")
    return evaluate_clauses(statements, pair, F1, F2, eps)


__all__ = [
    'FAMILIES',
    'CLAUSE_TABLE',
    'THEOREM_CLAUSES',
    'ComposedLaw',
    'x_cuts',
    'alpha_cuts',
    'evaluate_clauses',
    'evaluate_clause',
    'evaluate_theorem',
]
