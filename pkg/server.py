#!/usr/bin/env python3
"""
Stochastic Orderings MCP Server

This server exposes the ordering checks, welfare functionals, Lorenz tables,
majorization tests and the equivalence harness as MCP tools. Distributions are
passed inline as ``{"atoms": [[value, mass], ...]}`` or ``{"samples": [...]}``.
"""

import json
import logging
import logging.config
from typing import Any, Dict, List, Optional

from fastmcp import FastMCP

from config import LOGGING_CONFIG, STOCHORD_CONFIG
from src.core.distortion import identity_pair
from src.handlers.clauses import CLAUSE_TABLE, evaluate_clause
from src.handlers.dualcheck import InstanceSpec, exhaustive_small_scan, run_equivalence_suite
from src.handlers.majorize import KINDS, majorizes, statements_hold
from src.handlers.ordering import check_ordering as decide_ordering
from src.handlers.welfare import (
    gini_index,
    identity_perception,
    lorenz_curve,
    mean,
    rdeu,
    s_gini_perception,
    yaari,
    yaari_forms,
)
from src.utils.file_loader import (
    distribution_from_json,
    pair_from_json,
    perception_from_json,
    utility_from_json,
)

logging.config.dictConfig(LOGGING_CONFIG)
logger = logging.getLogger("mcp")

# Initialize FastMCP server
mcp = FastMCP(name="StochasticOrderings")


@mcp.resource("resource://orderings")
def get_orderings() -> str:
    """
    Available orderings, clauses, welfare functionals and theorem ids.

    Returns:
        JSON string describing what the tools accept
    """
    return json.dumps({
        "classic_orders": STOCHORD_CONFIG['classic_orders'],
        "pair_orders": STOCHORD_CONFIG['pair_orders'],
        "clauses": sorted(CLAUSE_TABLE),
        "welfare_functionals": ["mean", "yaari", "rdeu", "sgini", "gini"],
        "majorization_kinds": list(KINDS),
        "theorems": STOCHORD_CONFIG['theorems'],
        "distribution_format": {"atoms": "[[value, mass], ...]", "samples": "[value, ...]"},
        "pair_format": {"u0": "[[x, u0(x)], ...]", "v0": "[[alpha, v0(alpha)], ...] with v0(0)=0, v0(1)=1"},
    }, ensure_ascii=False, indent=2)


@mcp.prompt
def ordering_assistant(user_input: str, context: str = "general") -> str:
    """
    Guide a request towards the right tool.

    Args:
        user_input: User's description of the comparison they need
        context: risk, inequality, welfare or general
    """
    classic = ", ".join(STOCHORD_CONFIG['classic_orders'])
    theorems = ", ".join(STOCHORD_CONFIG['theorems'])
    return f"""# Stochastic Ordering Assistant

## User Request
**Input**: "{user_input}"
**Context**: {context}

## Tool Selection
1. **Compare two distributions**: `check_ordering`
   - classical names: {classic}
   - generalized: UPPER, LOWER, DOUBLE with a standard pair (u0, v0); identity pair when omitted
   - a single clause such as "T1.iii" through the `clause` argument
2. **Welfare of one distribution**: `compute_welfare` (mean, yaari, rdeu, sgini, gini)
3. **Inequality profile**: `lorenz_table`, normalized for the classical Lorenz curve
4. **Income vectors**: `check_majorization` (y majorized by x)
5. **Check an equivalence theorem**: `verify_theorem` with one of {theorems}

## Conventions
- `check_ordering(order, F1, F2)` asks whether F1 is ranked below F2.
- Risk aversion corresponds to UPPER/SSD, inequality aversion to the quantile side (LORENZ_WEAK).
"""


def check_ordering(
    order: str,
    dist1: Dict[str, Any],
    dist2: Dict[str, Any],
    pair: Optional[Dict[str, Any]] = None,
    clause: Optional[str] = None,
    eps: Optional[float] = None,
) -> Dict[str, Any]:
    """
    Decide whether dist1 is ranked below dist2.

    Args:
        order: FSD, SSD, ICV, ICX, LORENZ_WEAK, LORENZ_UPPER, UPPER, LOWER or DOUBLE
        dist1: First distribution ({"atoms": ...} or {"samples": ...})
        dist2: Second distribution
        pair: Optional standard pair {"u0": knots, "v0": knots}
        clause: Evaluate a single theorem clause (e.g. "T1.iii") instead
        eps: Comparison tolerance

    Returns:
        Verdict with witness, margin and the clause used
    """
    try:
        F1 = distribution_from_json(dist1, source='dist1')
        F2 = distribution_from_json(dist2, source='dist2')
        standard = pair_from_json(pair, 'pair') if pair else None
        if clause:
            if standard is None:
                lo = min(F1.support.min_loc, F2.support.min_loc)
                hi = max(F1.support.max_loc, F2.support.max_loc)
                standard = identity_pair(lo, hi)
            verdict = evaluate_clause(clause, standard, F1, F2, eps)
        else:
            verdict = decide_ordering(order, F1, F2, standard, eps)
        return verdict.to_dict()
    except Exception as e:
        logger.debug("check_ordering failed", exc_info=True)
        raise ValueError(f"Ordering check failed: {str(e)}")


def compute_welfare(
    dist: Dict[str, Any],
    functional: str = "mean",
    rho: float = 2.0,
    perception: Optional[Dict[str, Any]] = None,
    utility: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """
    Evaluate a welfare functional.

    Args:
        dist: Distribution
        functional: mean, yaari, rdeu, sgini or gini
        rho: S-Gini parameter (> 1)
        perception: {"knots": [[p, f0(p)], ...]} or {"rho": r} for yaari/rdeu
        utility: {"knots": [[x, u(x)], ...]} for rdeu

    Returns:
        Value and, for yaari/sgini, the residual between the three integral forms
    """
    try:
        F = distribution_from_json(dist, source='dist')
        result: Dict[str, Any] = {"functional": functional, "residual": None}
        if functional == "mean":
            result["value"] = mean(F)
        elif functional == "gini":
            result["value"] = gini_index(F)
        elif functional in ("yaari", "sgini"):
            f0 = s_gini_perception(rho) if functional == "sgini" else (
                perception_from_json(perception, 'perception') if perception else identity_perception())
            forms = yaari_forms(f0, F)
            result["value"] = yaari(f0, F)
            result["residual"] = max(forms) - min(forms)
        elif functional == "rdeu":
            if not utility:
                raise ValueError("rdeu needs a utility")
            f0 = perception_from_json(perception, 'perception') if perception else identity_perception()
            result["value"] = rdeu(utility_from_json(utility, 'utility'), f0, F)
        else:
            raise ValueError(f"unknown functional {functional!r}")
        return result
    except Exception as e:
        raise ValueError(f"Welfare computation failed: {str(e)}")


def lorenz_table(dist: Dict[str, Any], n_points: int = 10, normalize: bool = False) -> List[List[float]]:
    """
    Rows [p, integral of the quantile up to p] for p = 0, 1/n, ..., 1.

    Args:
        dist: Distribution
        n_points: Number of intervals
        normalize: Divide by the mean
    """
    try:
        F = distribution_from_json(dist, source='dist')
        return [list(row) for row in lorenz_curve(F, n_points, normalize)]
    except Exception as e:
        raise ValueError(f"Lorenz table failed: {str(e)}")


def check_majorization(
    x: List[float],
    y: List[float],
    kind: str = "strong",
    statements: bool = False,
    anchor: float = 0.0,
) -> Dict[str, Any]:
    """
    Decide whether y is majorized by x.

    Args:
        x: Majorizing vector
        y: Majorized vector
        kind: strong, weak_upper, weak_lower, log, log_weak_upper or log_weak_lower
        statements: Also decide the four equivalent statements
        anchor: Common anchor value used by the statements
    """
    try:
        result = majorizes(x, y, kind)
        payload = {"kind": kind, "holds": result.holds, "witness": result.witness, "margin": result.margin}
        if statements:
            payload["statements"] = {k: s._asdict() for k, s in statements_hold(x, y, anchor).items()}
        return payload
    except Exception as e:
        raise ValueError(f"Majorization check failed: {str(e)}")


def verify_theorem(
    theorem: str,
    trials: int = 200,
    seed: int = 1,
    exhaustive: bool = False,
    n: int = 3,
    grid: Optional[List[float]] = None,
) -> Dict[str, Any]:
    """
    Run the equivalence harness.

    Args:
        theorem: Theorem id (see resource://orderings)
        trials: Random trials
        seed: Generator seed
        exhaustive: Scan every pair of n-vectors over grid instead
        n: Vector length for the scan
        grid: Scan grid (default 0, 1, 2)

    Returns:
        EquivalenceReport as a dict
    """
    try:
        if exhaustive:
            report = exhaustive_small_scan(theorem, n, grid or [0.0, 1.0, 2.0])
        else:
            report = run_equivalence_suite(InstanceSpec(seed=seed, trials=trials), theorem)
        return report.model_dump()
    except Exception as e:
        raise ValueError(f"Verification failed: {str(e)}")


for _tool in (check_ordering, compute_welfare, lorenz_table, check_majorization, verify_theorem):
    mcp.tool(_tool)


if __name__ == "__main__":
    logger.info("starting StochasticOrderings MCP server")
    mcp.run()
