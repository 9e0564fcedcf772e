"""
Verification harness for the equivalence theorems.

Each trial draws a random instance from a seeded generator, evaluates every
clause of the requested theorem through its own code path and records whether
they agree. Disagreements within ``marginal_factor * eps`` of the decision
boundary are counted as tolerance-marginal agreements and logged.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from config import REPORT_CONFIG, STOCHORD_CONFIG, tolerance
from src.core.dist_core import DiscreteCdf, cdf_from_atoms, eval_cdf, eval_cdf_left
from src.core.distortion import StandardPair, identity_pair, make_standard_pair
from src.core.stieltjes import (
    MonotonePL,
    StepFn,
    change_of_variables_check,
    integrate_by_parts_check,
    lemma4_identity_check,
)
from src.handlers.clauses import THEOREM_CLAUSES, evaluate_clauses
from src.handlers.majorize import as_uniform_cdf, majorizes, statements_hold
from src.handlers.ordering import (
    OrderingVerdict,
    classic,
    crossing_local_check,
    double_ordering,
    lemma1_cdf_side,
    lemma1_quantile_side,
    lower_ordering,
    signed_concave_ordering,
    upper_ordering,
)
from src.handlers.welfare import corollary1_verdicts, corollary2_verdicts, perception
from src.utils.errors import ScanTooLarge, UnknownTheorem

logger = logging.getLogger(__name__)

THEOREMS = tuple(STOCHORD_CONFIG['theorems'])
SCANNABLE = ('T1', 'T1-star', 'T2', 'T3', 'L1', 'L3', 'EQ1', 'COR1', 'COR2', 'MAJ')


class InstanceSpec(BaseModel):
    """Random instance family for ``run_equivalence_suite``."""

    seed: int = Field(default_factory=lambda: STOCHORD_CONFIG['suite_defaults']['seed'])
    n_atoms_max: int = Field(default_factory=lambda: STOCHORD_CONFIG['suite_defaults']['n_atoms_max'], ge=1)
    n_knots_max: int = Field(default_factory=lambda: STOCHORD_CONFIG['suite_defaults']['n_knots_max'], ge=1)
    value_range: Tuple[float, float] = Field(default_factory=lambda: STOCHORD_CONFIG['suite_defaults']['value_range'])
    trials: int = Field(default_factory=lambda: STOCHORD_CONFIG['suite_defaults']['trials'], ge=1)
    workers: int = Field(default=1, ge=1)

    @field_validator('value_range')
    @classmethod
    def validate_range(cls, v):
        lo, hi = v
        if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
            raise ValueError(f"取值范围必须是有限区间且 lo < hi: {v}")
        return (float(lo), float(hi))


class Counterexample(BaseModel):
    trial: int
    instance: Dict[str, Any]
    verdicts: Dict[str, Any]


class EquivalenceReport(BaseModel):
    schema_version: int = REPORT_CONFIG['schema_version']
    theorem: str
    trials: int
    agreements: int
    marginal: int = 0
    counterexamples: List[Counterexample] = Field(default_factory=list)

    @model_validator(mode='after')
    def check_counts(self):
        if self.agreements > self.trials:
            raise ValueError("agreements cannot exceed trials")
        if bool(self.counterexamples) != (self.agreements < self.trials):
            raise ValueError("counterexamples must be present exactly when some trial disagrees")
        return self

    @property
    def all_agree(self) -> bool:
        return self.agreements == self.trials


class TrialOutcome(NamedTuple):
    agree: bool
    marginal: bool
    instance: Dict[str, Any]
    verdicts: Dict[str, Any]


# --- random instances ------------------------------------------------------------
def _cdf_json(F: DiscreteCdf) -> List[List[float]]:
    return [[x, m] for x, m in F.atoms]


def random_cdf(rng: np.random.Generator, n_atoms_max: int, value_range: Tuple[float, float]) -> DiscreteCdf:
    """Atoms on a coarse grid (so ties across laws are common), uniform or integer weights."""
    lo, hi = value_range
    grid = np.linspace(lo, hi, 2 * n_atoms_max + 1)
    n = int(rng.integers(1, n_atoms_max + 1))
    locs = rng.choice(grid, size=n, replace=False)
    if rng.random() < 0.5:
        weights = rng.random(n) + 0.05
    else:
        weights = rng.integers(1, 5, size=n).astype(float)
    return cdf_from_atoms(zip(locs.tolist(), weights.tolist()), normalize=True)


def random_cdf_pair(rng: np.random.Generator, spec: InstanceSpec) -> Tuple[DiscreteCdf, DiscreteCdf]:
    """Independent laws, identical laws, or a copy with one atom moved."""
    F1 = random_cdf(rng, spec.n_atoms_max, spec.value_range)
    roll = rng.random()
    if roll < 0.15:
        return F1, F1
    if roll < 0.3:
        lo, hi = spec.value_range
        grid = np.linspace(lo, hi, 2 * spec.n_atoms_max + 1)
        atoms = list(F1.atoms)
        i = int(rng.integers(len(atoms)))
        atoms[i] = (float(rng.choice(grid)), atoms[i][1])
        return F1, cdf_from_atoms(atoms, normalize=True)
    return F1, random_cdf(rng, spec.n_atoms_max, spec.value_range)


def _increasing_knots(rng: np.random.Generator, lo: float, hi: float, k: int) -> np.ndarray:
    xs = np.unique(rng.uniform(lo, hi, size=k + 1))
    if len(xs) < 2:
        xs = np.linspace(lo, hi, k + 1)
    return xs


def random_pair(rng: np.random.Generator, spec: InstanceSpec) -> StandardPair:
    """Kinked standard pair with at most ``n_knots_max`` pieces per component."""
    lo, hi = spec.value_range
    k = int(rng.integers(1, spec.n_knots_max + 1))
    xs = _increasing_knots(rng, lo, hi, k)
    rises = rng.exponential(1.0, size=len(xs) - 1)
    rises[rng.random(len(rises)) < 0.2] = 0.0
    ys = np.concatenate([[rng.uniform(lo, hi)], rises]).cumsum()
    u0 = MonotonePL(tuple(zip(xs.tolist(), ys.tolist())))

    m = int(rng.integers(1, spec.n_knots_max + 1))
    inner = np.unique(rng.random(m - 1)) if m > 1 else np.array([])
    inner = inner[(inner > 0.0) & (inner < 1.0)]
    alphas = np.concatenate([[0.0], inner, [1.0]])
    levels = np.concatenate([[0.0], np.sort(rng.random(len(inner))), [1.0]])
    v0 = MonotonePL(tuple(zip(alphas.tolist(), levels.tolist())))
    return make_standard_pair(u0, v0)


def _random_left_fn(rng, lo, hi):
    if rng.random() < 0.5:
        xs = _increasing_knots(rng, lo, hi, 3)
        return MonotonePL(tuple(zip(xs.tolist(), np.cumsum(rng.random(len(xs))).tolist())), 'left')
    xs = _increasing_knots(rng, lo, hi, 3)
    return StepFn(rng.normal(), tuple((x, rng.uniform(0.1, 1.0)) for x in xs), 'left')


def _random_right_fn(rng, lo, hi):
    if rng.random() < 0.5:
        xs = _increasing_knots(rng, lo, hi, 3)
        return MonotonePL(tuple(zip(xs.tolist(), np.cumsum(rng.random(len(xs))).tolist())), 'right')
    xs = _increasing_knots(rng, lo, hi, 3)
    signs = rng.choice([-1.0, 1.0], size=len(xs))
    return StepFn(rng.normal(), tuple((x, s * rng.uniform(0.1, 1.0)) for x, s in zip(xs, signs)), 'right')


# --- comparisons ----------------------------------------------------------------
def _barely_fails(margin: float, tol: float) -> bool:
    return margin >= -STOCHORD_CONFIG['marginal_factor'] * tol


def _compare(verdicts: Dict[str, OrderingVerdict], eps: float) -> Tuple[bool, bool]:
    # 每个累积判据在首个截点处取 0，故成立的一方总在边界附近；只看不成立一方的裕量
    tol = tolerance(eps)
    failing = [v for v in verdicts.values() if not v.holds]
    if not failing or len(failing) == len(verdicts):
        return True, False
    return False, all(_barely_fails(v.margin, tol) for v in failing)


def _dump(verdicts: Dict[str, OrderingVerdict]) -> Dict[str, Any]:
    return {k: {'holds': v.holds, 'margin': v.margin} for k, v in verdicts.items()}


def _residual(residual: float, scale: float, tol: float) -> Tuple[bool, bool]:
    bound = tol * max(1.0, abs(scale))
    return residual <= bound, residual <= STOCHORD_CONFIG['marginal_factor'] * bound


def _pair_instance(pair, F1, F2) -> Dict[str, Any]:
    return {'pair': pair.to_dict(), 'F1': _cdf_json(F1), 'F2': _cdf_json(F2)}


def harness_clauses(theorem: str) -> List[str]:
    """Clauses compared by a trial of ``theorem``; T1 covers the starred forms too."""
    if theorem == 'T1':
        return THEOREM_CLAUSES['T1'] + THEOREM_CLAUSES['T1-star']
    return THEOREM_CLAUSES.get(theorem, [])


# --- per-theorem evaluators on a fixed instance ------------------------------------
def _distributional(theorem: str, pair: StandardPair, F1: DiscreteCdf, F2: DiscreteCdf,
                    eps: float) -> TrialOutcome:
    instance = _pair_instance(pair, F1, F2)
    if theorem in ('T1', 'T1-star'):
        verdicts = {'reference': upper_ordering(pair, F1, F2, eps)}
    elif theorem == 'T2':
        verdicts = {'reference': lower_ordering(pair, F1, F2, eps)}
    elif theorem == 'T3':
        verdicts = {'reference': double_ordering(pair, F1, F2, eps),
                    'signed': signed_concave_ordering(pair, F1, F2, eps)}
    elif theorem == 'L1':
        verdicts = {'cdf_side': lemma1_cdf_side(pair, F1, F2, eps),
                    'quantile_side': lemma1_quantile_side(pair, F1, F2, eps)}
    elif theorem == 'EQ1':
        verdicts = {'ssd': classic('SSD', F1, F2, eps), 'lorenz_weak': classic('LORENZ_WEAK', F1, F2, eps)}
    elif theorem == 'L3':
        holds, checks = crossing_local_check(pair, F1, F2, eps)
        return TrialOutcome(holds, False, instance,
                            {'crossing_points': len(checks), 'holds': holds})
    else:
        raise UnknownTheorem(f"unknown theorem {theorem!r}")

    verdicts.update(evaluate_clauses(harness_clauses(theorem), pair, F1, F2, eps))
    agree, marginal = _compare(verdicts, eps)
    return TrialOutcome(agree, marginal, instance, _dump(verdicts))


def _corollary(theorem: str, pair: StandardPair, F1: DiscreteCdf, F2: DiscreteCdf, eps: float) -> TrialOutcome:
    f0 = perception(pair.v0, 'random')
    if theorem == 'COR1':
        s1, s2 = corollary1_verdicts(f0, F1, F2, eps)
        verdicts = {'s1': s1, 's2': s2}
    else:
        s3, s4 = corollary2_verdicts(pair.u0, f0, F1, F2, eps)
        verdicts = {'s3': s3, 's4': s4}
    agree, marginal = _compare(verdicts, eps)
    return TrialOutcome(agree, marginal, _pair_instance(pair, F1, F2), _dump(verdicts))


def _majorization(x: Sequence[float], y: Sequence[float], eps: float,
                  laws: Optional[Tuple[DiscreteCdf, DiscreteCdf]] = None) -> TrialOutcome:
    tol = tolerance(eps)
    strong = majorizes(x, y, 'strong', eps)
    upper = majorizes(x, y, 'weak_upper', eps)
    lower = majorizes(x, y, 'weak_lower', eps)
    F1, F2 = laws or (as_uniform_cdf(x), as_uniform_cdf(y))
    pair = identity_pair(min(min(x), min(y)), max(max(x), max(y)))
    bridge = upper_ordering(pair, F1, F2, eps)
    lower_bridge = lower_ordering(pair, F2, F1, eps)
    statements = statements_hold(x, y, 0.0, eps)
    anchored = [statements_hold(x, y, K, eps)['distorted_mean'].holds for K in (1.0, -1.0, 100.0, -100.0)]

    checks = {
        'strong_is_both_weak': strong.holds == (upper.holds and lower.holds),
        'upper_bridge': bridge.holds == upper.holds,
        'lower_bridge': lower_bridge.holds == lower.holds,
        'statements': all(r.holds == upper.holds for r in statements.values()),
        'anchor_invariance': all(h == statements['distorted_mean'].holds for h in anchored),
    }
    agree = all(checks.values())
    failing = [r.margin for r in (strong, upper, lower, bridge, lower_bridge) if not r.holds]
    marginal = not agree and any(_barely_fails(m, tol) for m in failing)
    instance = {'x': list(map(float, x)), 'y': list(map(float, y))}
    return TrialOutcome(agree, marginal, instance, checks)


def _random_vectors(rng: np.random.Generator, spec: InstanceSpec) -> Tuple[List[float], List[float]]:
    n = int(rng.integers(1, spec.n_atoms_max + 1))
    lo, hi = spec.value_range
    grid = np.linspace(lo, hi, 2 * spec.n_atoms_max + 1)
    return rng.choice(grid, size=n).tolist(), rng.choice(grid, size=n).tolist()


def _identity_trial(theorem: str, rng: np.random.Generator, spec: InstanceSpec, eps: float) -> TrialOutcome:
    tol = tolerance(eps)
    lo, hi = spec.value_range
    if theorem == 'IBP':
        U, V = _random_left_fn(rng, lo, hi), _random_right_fn(rng, lo, hi)
        a, b = np.sort(rng.uniform(lo, hi, size=2))
        residual = integrate_by_parts_check(U, V, float(a), float(b))
        agree, near = _residual(residual, max(abs(U.value(b)), abs(V.value(b)), 1.0) ** 2, tol)
        return TrialOutcome(agree, not agree and near, {'a': float(a), 'b': float(b)},
                            {'residual': residual})

    pair = random_pair(rng, spec)
    F = random_cdf(rng, spec.n_atoms_max, spec.value_range)
    scale = float(np.max(np.abs(pair.u0.ys)))
    if theorem == 'CV':
        residuals = {w: change_of_variables_check(pair.u0, pair.v0, F, w) for w in ('CV1', 'CV2', 'CV3', 'CV4')}
        worst = max(residuals.values())
        agree, near = _residual(worst, scale, tol)
        return TrialOutcome(agree, not agree and near, _pair_instance(pair, F, F), residuals)

    # L4：取相容的 (x1, alpha1)
    i = int(rng.integers(F.size))
    if rng.random() < 0.5:
        x1 = float(F.locations[i])
        alpha1 = float(rng.uniform(eval_cdf_left(F, x1), eval_cdf(F, x1)))
    else:
        x1 = float(rng.uniform(lo, hi))
        alpha1 = float(eval_cdf(F, x1))
    residual = lemma4_identity_check(pair, F, x1, alpha1, eps)
    agree, near = _residual(residual, scale, tol)
    instance = _pair_instance(pair, F, F)
    instance.update({'x1': x1, 'alpha1': alpha1})
    return TrialOutcome(agree, not agree and near, instance, {'residual': residual})


def _trial(theorem: str, rng: np.random.Generator, spec: InstanceSpec, eps: float) -> TrialOutcome:
    if theorem in ('IBP', 'CV', 'L4'):
        return _identity_trial(theorem, rng, spec, eps)
    if theorem == 'MAJ':
        x, y = _random_vectors(rng, spec)
        return _majorization(x, y, eps)
    pair = random_pair(rng, spec)
    F1, F2 = random_cdf_pair(rng, spec)
    if theorem in ('COR1', 'COR2'):
        return _corollary(theorem, pair, F1, F2, eps)
    return _distributional(theorem, pair, F1, F2, eps)


def _collect(theorem: str, outcomes: List[TrialOutcome]) -> EquivalenceReport:
    agreements, marginal, counterexamples = 0, 0, []
    for index, outcome in enumerate(outcomes):
        if outcome.agree:
            agreements += 1
        elif outcome.marginal:
            agreements += 1
            marginal += 1
            logger.warning("%s trial %d: tolerance-marginal disagreement %s", theorem, index, outcome.verdicts)
        else:
            counterexamples.append(Counterexample(trial=index, instance=outcome.instance,
                                                  verdicts=outcome.verdicts))
    logger.info("%s: %d/%d agree (%d marginal)", theorem, agreements, len(outcomes), marginal)
    return EquivalenceReport(theorem=theorem, trials=len(outcomes), agreements=agreements,
                             marginal=marginal, counterexamples=counterexamples)


def run_equivalence_suite(spec: InstanceSpec, theorem: str, eps: float = None) -> EquivalenceReport:
    """
    Run ``spec.trials`` random trials of ``theorem``.

    Every trial gets its own generator spawned from ``spec.seed``, so the report
    is the same whatever ``spec.workers`` is.

    Args:
        spec: Instance family.
        theorem: One of T1, T1-star, T2, T3, L1, L3, EQ1, COR1, COR2, MAJ, IBP, CV, L4.
        eps: Comparison tolerance.

    Returns:
        EquivalenceReport: Agreement counts and the non-marginal counterexamples.

    Raises:
        UnknownTheorem: Unrecognised theorem identifier.
    """
    if theorem not in THEOREMS:
        raise UnknownTheorem(f"unknown theorem {theorem!r}; expected one of {', '.join(THEOREMS)}")
    children = np.random.SeedSequence(spec.seed).spawn(spec.trials)
    logger.info("running %s: %d trials, seed %d", theorem, spec.trials, spec.seed)

    def run(child):
        return _trial(theorem, np.random.default_rng(child), spec, eps)

    if spec.workers > 1:
        with ThreadPoolExecutor(max_workers=spec.workers) as pool:
            outcomes = list(pool.map(run, children))
    else:
        outcomes = [run(child) for child in children]
    return _collect(theorem, outcomes)


def exhaustive_small_scan(theorem: str, n: int, grid: Sequence[float], eps: float = None) -> EquivalenceReport:
    """
    Check ``theorem`` on every ordered pair of n-vectors over ``grid``.

    Vectors become uniform laws (mass 1/n per entry) compared under the identity
    pair spanning the grid; ``MAJ`` compares the vectors directly.

    Raises:
        ScanTooLarge: n exceeds ``max_scan_n`` or |grid|^n exceeds ``scan_limit``.
        UnknownTheorem: The theorem has no vector form.
    """
    if theorem not in SCANNABLE:
        raise UnknownTheorem(f"theorem {theorem!r} cannot be scanned exhaustively")
    grid = sorted(set(float(g) for g in grid))
    count = len(grid) ** n
    if n < 1 or n > STOCHORD_CONFIG['max_scan_n'] or count > STOCHORD_CONFIG['scan_limit']:
        raise ScanTooLarge(f"{len(grid)}^{n} = {count} vectors exceeds the scan bound")

    vectors = list(itertools.product(grid, repeat=n))
    pair = identity_pair(grid[0], grid[-1])
    laws = {v: as_uniform_cdf(v) for v in vectors}
    logger.info("exhaustive %s scan: %d vectors, %d pairs", theorem, count, count * count)

    outcomes = []
    for x, y in itertools.product(vectors, repeat=2):
        if theorem == 'MAJ':
            outcomes.append(_majorization(x, y, eps, (laws[x], laws[y])))
        elif theorem in ('COR1', 'COR2'):
            outcomes.append(_corollary(theorem, pair, laws[x], laws[y], eps))
        else:
            outcomes.append(_distributional(theorem, pair, laws[x], laws[y], eps))
    return _collect(theorem, outcomes)


__all__ = [
    'THEOREMS',
    'InstanceSpec',
    'Counterexample',
    'EquivalenceReport',
    'TrialOutcome',
    'random_cdf',
    'random_cdf_pair',
    'random_pair',
    'harness_clauses',
    'run_equivalence_suite',
    'exhaustive_small_scan',
]
