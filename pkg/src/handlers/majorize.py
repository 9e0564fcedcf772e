"""
Majorization of real vectors and its equivalent statements.

``majorizes(x, y, kind)`` decides whether ``y`` is majorized by ``x``:

* ``weak_lower``: the k largest entries of x sum to at least those of y, k = 1..n;
* ``weak_upper``: the k smallest entries of x sum to at most those of y, k = 1..n;
* ``strong``: weak_lower for k < n and equal totals;
* ``log*``: the same on elementwise logarithms.

Entries are sorted in descending order x(1) >= ... >= x(n). Vectors of length n
are identified with uniform laws putting mass 1/n on each entry, under which
weak_upper(x, y) is the upper ordering of (x, y) for the identity pair.
"""

import logging
from dataclasses import dataclass
from typing import Dict, NamedTuple, Optional, Tuple

import numpy as np

from config import tolerance
from src.core.dist_core import DiscreteCdf, cdf_from_atoms
from src.utils.errors import BadParams, LengthMismatch, NonPositiveEntryForLog, UnknownName

logger = logging.getLogger(__name__)

KINDS = ('strong', 'weak_upper', 'weak_lower', 'log', 'log_weak_upper', 'log_weak_lower')
STATEMENTS = ('anchored_increments', 'rank_weighted', 'utility_sum', 'distorted_mean')


@dataclass(frozen=True)
class RealVector:
    entries: Tuple[float, ...]

    def __post_init__(self):
        entries = tuple(float(e) for e in self.entries)
        if not entries:
            raise BadParams("vector needs at least one entry")
        if not all(np.isfinite(entries)):
            raise BadParams("vector entries must be finite")
        object.__setattr__(self, 'entries', entries)

    def __len__(self):
        return len(self.entries)

    def descending(self) -> np.ndarray:
        return np.sort(np.asarray(self.entries))[::-1]


class MajorizationResult(NamedTuple):
    holds: bool
    witness: Optional[int]
    margin: float


class StatementResult(NamedTuple):
    holds: bool
    witness: Optional[float]


def _vectors(x, y) -> Tuple[np.ndarray, np.ndarray]:
    x = x if isinstance(x, RealVector) else RealVector(tuple(x))
    y = y if isinstance(y, RealVector) else RealVector(tuple(y))
    if len(x) != len(y):
        raise LengthMismatch(f"vectors have lengths {len(x)} and {len(y)}")
    return np.asarray(x.entries), np.asarray(y.entries)


def _first_violation(slack: np.ndarray, tol: float) -> MajorizationResult:
    i = int(np.argmin(slack))
    margin = float(slack[i])
    if margin >= -tol:
        return MajorizationResult(True, None, margin)
    return MajorizationResult(False, i + 1, margin)


def majorizes(x, y, kind: str = 'strong', eps: float = None) -> MajorizationResult:
    """
    Decide whether ``y`` is majorized by ``x`` in the sense of ``kind``.

    Args:
        x: The majorizing vector.
        y: The majorized vector.
        kind: One of ``strong``, ``weak_upper``, ``weak_lower``, ``log``,
            ``log_weak_upper``, ``log_weak_lower``.

    Returns:
        MajorizationResult: ``witness`` is the 1-based partial-sum length that fails.

    Raises:
        LengthMismatch: Vectors differ in length.
        NonPositiveEntryForLog: A log kind meets a non-positive entry.
    """
    if kind not in KINDS:
        raise UnknownName(f"unknown majorization kind {kind!r}")
    tol = tolerance(eps)
    a, b = _vectors(x, y)
    if kind.startswith('log'):
        if np.any(a <= 0) or np.any(b <= 0):
            raise NonPositiveEntryForLog("log-majorization needs positive entries")
        a, b = np.log(a), np.log(b)
        kind = kind[4:] or 'strong'

    top_a = np.cumsum(np.sort(a)[::-1])
    top_b = np.cumsum(np.sort(b)[::-1])
    low_a = np.cumsum(np.sort(a))
    low_b = np.cumsum(np.sort(b))

    if kind == 'weak_lower':
        return _first_violation(top_a - top_b, tol)
    if kind == 'weak_upper':
        return _first_violation(low_b - low_a, tol)
    # strong
    total = abs(top_a[-1] - top_b[-1])
    partial = _first_violation((top_a - top_b)[:-1], tol) if len(a) > 1 else MajorizationResult(True, None, 0.0)
    if not partial.holds:
        return partial
    if total > tol:
        return MajorizationResult(False, len(a), -total)
    return MajorizationResult(True, None, min(partial.margin, -total))


def as_uniform_cdf(x) -> DiscreteCdf:
    """Uniform law on the entries (duplicates merged)."""
    v = x if isinstance(x, RealVector) else RealVector(tuple(x))
    n = len(v)
    return cdf_from_atoms(((e, 1.0 / n) for e in v.entries), normalize=True)


# --- equivalent statements ------------------------------------------------------
def _anchored_sum(values_desc: np.ndarray, anchor: float) -> float:
    # sum_{i=1}^{n} (i/n) (a(n-i) - a(n-i+1)) with a(0) = anchor
    n = len(values_desc)
    a = np.concatenate([[anchor], values_desc])
    i = np.arange(1, n + 1)
    return float(np.sum(i / n * (a[n - i] - a[n - i + 1])))


def _weights(v, n: int) -> np.ndarray:
    grid = np.arange(n + 1) / n
    return np.diff(v(grid))


def _statement_sides(xd: np.ndarray, yd: np.ndarray, u, v, K: float) -> Dict[str, Tuple[float, float, str]]:
    n = len(xd)
    b = _weights(v, n)
    ux, uy = np.asarray(u(xd), float), np.asarray(u(yd), float)
    # b(1) 为最大权重，作用在最小分量上
    xa, ya = xd[::-1], yd[::-1]
    top = float(np.asarray(v(np.arange(1, n + 1) / n), float)[-1])
    return {
        'anchored_increments': (_anchored_sum(ux, u(K)), _anchored_sum(uy, u(K)), '>='),
        'rank_weighted': (float(np.dot(b, xa)), float(np.dot(b, ya)), '<='),
        'utility_sum': (float(ux.sum()), float(uy.sum()), '<='),
        'distorted_mean': (top * K - float(np.dot(b, xa)), top * K - float(np.dot(b, ya)), '>='),
    }


def _holds(lhs: float, rhs: float, sense: str, tol: float) -> bool:
    return lhs - rhs >= -tol if sense == '>=' else rhs - lhs >= -tol


def majorization_statements(x, y, u, v, K: float = 0.0, eps: float = None) -> Dict[str, bool]:
    """
    Evaluate the four equivalent statements for a given utility and distortion.

    Args:
        x: First vector.
        y: Second vector.
        u: Increasing concave utility (callable or MonotonePL).
        v: Increasing concave distortion on [0, 1].
        K: Common anchor x(0) = y(0).

    Returns:
        Dict[str, bool]: Truth of ``anchored_increments``, ``rank_weighted``, ``utility_sum`` and ``distorted_mean``.
    """
    tol = tolerance(eps)
    a, b = _vectors(x, y)
    sides = _statement_sides(np.sort(a)[::-1], np.sort(b)[::-1], u, v, float(K))
    return {name: _holds(lhs, rhs, sense, tol) for name, (lhs, rhs, sense) in sides.items()}


def _first_failure(points: np.ndarray, lhs: np.ndarray, rhs: np.ndarray, sense: str, tol: float) -> StatementResult:
    slack = lhs - rhs if sense == '>=' else rhs - lhs
    failing = np.flatnonzero(slack < -tol)
    if failing.size:
        return StatementResult(False, float(points[failing[0]]))
    return StatementResult(True, None)


def _anchored_rows(values_desc: np.ndarray, anchors: np.ndarray) -> np.ndarray:
    # 每行一个截点：a(0) = anchor，其余为降序分量
    n = values_desc.shape[1]
    a = np.hstack([anchors[:, None], values_desc])
    i = np.arange(1, n + 1)
    return np.sum(i / n * (a[:, n - i] - a[:, n - i + 1]), axis=1)


def statements_hold(x, y, K: float = 0.0, eps: float = None) -> Dict[str, StatementResult]:
    """
    Universally quantified statements, decided over extreme rays.

    Utilities run over t -> min(t, c) with c at the merged entries (and K),
    weight sequences over the 0/1 steps with k leading ones, and distortions
    over a -> min(a, k/n). All rays of a statement are evaluated at once.

    Returns:
        Dict[str, StatementResult]: Per statement, truth and the first failing cut.
    """
    tol = tolerance(eps)
    a, b = _vectors(x, y)
    n = len(a)
    K = float(K)
    xd, yd = np.sort(a)[::-1], np.sort(b)[::-1]
    xa, ya = xd[::-1], yd[::-1]
    cuts = np.union1d(np.concatenate([a, b]), [K])

    # u = min(., c)，每行一个截点
    ux = np.minimum(xd[None, :], cuts[:, None])
    uy = np.minimum(yd[None, :], cuts[:, None])
    anchors = np.minimum(K, cuts)

    ks = np.arange(1, n + 1)
    levels = ks / n
    # v = min(., k/n) 的权重 b(i) = v(i/n) - v((i-1)/n)
    v_grid = np.minimum(np.arange(n + 1)[None, :] / n, levels[:, None])
    weights = np.diff(v_grid, axis=1)
    top = v_grid[:, -1]

    results = {
        'anchored_increments': _first_failure(cuts, _anchored_rows(ux, anchors),
                                              _anchored_rows(uy, anchors), '>=', tol),
        'rank_weighted': _first_failure(ks, np.cumsum(xa), np.cumsum(ya), '<=', tol),
        'utility_sum': _first_failure(cuts, ux.sum(axis=1), uy.sum(axis=1), '<=', tol),
        'distorted_mean': _first_failure(levels, top * K - weights @ xa, top * K - weights @ ya, '>=', tol),
    }
    logger.debug("statements for n=%d: %s", n, {k: r.holds for k, r in results.items()})
    return results


__all__ = [
    'KINDS',
    'STATEMENTS',
    'RealVector',
    'MajorizationResult',
    'StatementResult',
    'majorizes',
    'as_uniform_cdf',
    'majorization_statements',
    'statements_hold',
]
