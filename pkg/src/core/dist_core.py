"""
Finite-support distributions.

A ``DiscreteCdf`` is the right-continuous step cdf of finitely many weighted atoms.
Cumulative levels are stored once at construction (the last level is pinned to
exactly 1.0) and every evaluation, the quantile included, reads that same array,
so the Galois connection F(x) >= a  <=>  F^-1(a) <= x holds without rounding slack.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence, Tuple

import numpy as np

from config import STOCHORD_CONFIG
from src.utils.errors import (
    AlphaOutOfRange,
    BadParams,
    EmptySupport,
    MassNotNormalized,
    NonPositiveMass,
)

logger = logging.getLogger(__name__)


class Support(NamedTuple):
    min_loc: float
    max_loc: float


@dataclass(frozen=True)
class DiscreteCdf:
    """
    Right-continuous step cdf of a finite-support law.

    Attributes:
        atoms: Sorted ``(location, mass)`` pairs, locations strictly increasing.
    """

    atoms: Tuple[Tuple[float, float], ...]
    _locs: np.ndarray = field(init=False, repr=False, compare=False)
    _levels: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        locs = np.array([a[0] for a in self.atoms], dtype=float)
        masses = np.array([a[1] for a in self.atoms], dtype=float)
        levels = np.cumsum(masses)
        levels[-1] = 1.0
        # 只读视图，保证不可变
        locs.setflags(write=False)
        levels.setflags(write=False)
        object.__setattr__(self, '_locs', locs)
        object.__setattr__(self, '_levels', levels)

    @property
    def locations(self) -> np.ndarray:
        return self._locs

    @property
    def masses(self) -> np.ndarray:
        return np.array([a[1] for a in self.atoms], dtype=float)

    @property
    def levels(self) -> np.ndarray:
        """Cumulative levels F(x_i) at the atoms; the last one is exactly 1."""
        return self._levels

    @property
    def total_mass(self) -> float:
        return float(sum(a[1] for a in self.atoms))

    @property
    def support(self) -> Support:
        return Support(float(self._locs[0]), float(self._locs[-1]))

    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def mean(self) -> float:
        return float(np.dot(self._locs, self.masses))

    def shift(self, t: float) -> 'DiscreteCdf':
        """Law of X + t."""
        return DiscreteCdf(tuple((float(x + t), m) for x, m in self.atoms))

    def level_before(self, index: int) -> float:
        return 0.0 if index == 0 else float(self._levels[index - 1])


def cdf_from_atoms(atoms: Iterable[Sequence[float]], normalize: bool = False) -> DiscreteCdf:
    """
    Build a canonical ``DiscreteCdf`` from ``(location, mass)`` pairs.

    Duplicate locations are merged, atoms sorted, and the total mass checked
    against 1 within ``mass_eps`` (or rescaled when ``normalize`` is set).

    Args:
        atoms: Iterable of ``(location, mass)`` pairs.
        normalize: Rescale masses to sum to one instead of rejecting.

    Returns:
        DiscreteCdf: The canonical distribution.

    Raises:
        EmptySupport: No atoms were given.
        BadParams: Some location is not finite.
        NonPositiveMass: Some mass is not a positive finite number.
        MassNotNormalized: Masses do not sum to one and ``normalize`` is off.
    """
    pairs = [(float(x), float(m)) for x, m in atoms]
    if not pairs:
        raise EmptySupport("distribution needs at least one atom")

    merged = {}
    for x, m in pairs:
        if not np.isfinite(x):
            raise BadParams(f"atom location must be finite, got {x}")
        if not (m > 0 and np.isfinite(m)):
            raise NonPositiveMass(f"atom at {x} has non-positive mass {m}")
        merged[x] = merged.get(x, 0.0) + m

    total = sum(merged.values())
    if normalize:
        merged = {x: m / total for x, m in merged.items()}
    elif abs(total - 1.0) > STOCHORD_CONFIG['mass_eps']:
        raise MassNotNormalized(f"masses sum to {total!r}, expected 1")

    return DiscreteCdf(tuple(sorted(merged.items())))


def point_mass(location: float) -> DiscreteCdf:
    return DiscreteCdf(((float(location), 1.0),))


def eval_cdf(F: DiscreteCdf, x) -> float:
    """F(x): total mass at locations <= x (vectorized over ``x``)."""
    idx = np.searchsorted(F.locations, x, side='right')
    values = np.where(idx > 0, F.levels[np.maximum(idx - 1, 0)], 0.0)
    return float(values) if np.ndim(values) == 0 else values


def eval_cdf_left(F: DiscreteCdf, x) -> float:
    """Left limit F(x-): total mass at locations < x."""
    idx = np.searchsorted(F.locations, x, side='left')
    values = np.where(idx > 0, F.levels[np.maximum(idx - 1, 0)], 0.0)
    return float(values) if np.ndim(values) == 0 else values


def survivor(F: DiscreteCdf, x) -> float:
    """Survivor function 1 - F(x)."""
    return 1.0 - eval_cdf(F, x)


def quantile(F: DiscreteCdf, alpha: float) -> float:
    """
    Generalized inverse F^-1(alpha) = inf{x : F(x) >= alpha}.

    Raises:
        AlphaOutOfRange: ``alpha`` is not in the open interval (0, 1).
    """
    if not 0.0 < alpha < 1.0:
        raise AlphaOutOfRange(f"quantile level must lie in (0,1), got {alpha}")
    return _quantile_closed(F, alpha)


def quantile_right(F: DiscreteCdf, alpha: float) -> float:
    """
    Right limit F^-1(alpha+) = inf{x : F(x) > alpha}, for alpha in [0, 1).

    Raises:
        AlphaOutOfRange: ``alpha`` is outside [0, 1).
    """
    if not 0.0 <= alpha < 1.0:
        raise AlphaOutOfRange(f"right quantile level must lie in [0,1), got {alpha}")
    idx = int(np.searchsorted(F.levels, alpha, side='right'))
    return float(F.locations[min(idx, F.size - 1)])


def _quantile_closed(F: DiscreteCdf, alpha: float) -> float:
    # alpha <= 0 映射到最小原子，alpha = 1 映射到最大原子
    idx = int(np.searchsorted(F.levels, alpha, side='left'))
    return float(F.locations[min(idx, F.size - 1)])


def quantile_at_levels(F: DiscreteCdf, alphas) -> np.ndarray:
    """Vectorized F^-1 on levels in (0, 1]; level 1 maps to the largest atom."""
    idx = np.searchsorted(F.levels, np.asarray(alphas, dtype=float), side='left')
    return F.locations[np.minimum(idx, F.size - 1)]


def negate(F: DiscreteCdf) -> DiscreteCdf:
    """Law of -X."""
    return DiscreteCdf(tuple((-x if x != 0 else 0.0, m) for x, m in reversed(F.atoms)))


def merged_locations(*cdfs: DiscreteCdf) -> np.ndarray:
    return np.unique(np.concatenate([F.locations for F in cdfs]))


def merged_levels(*cdfs: DiscreteCdf) -> np.ndarray:
    return np.unique(np.concatenate([F.levels for F in cdfs]))


__all__ = [
    'Support',
    'DiscreteCdf',
    'cdf_from_atoms',
    'point_mass',
    'eval_cdf',
    'eval_cdf_left',
    'survivor',
    'quantile',
    'quantile_right',
    'quantile_at_levels',
    'negate',
    'merged_locations',
    'merged_levels',
]
