"""
stochord command line.

Exit codes: 0 when the checked relation holds (or every trial agrees), 1 when
it fails, 2 on input errors.
"""

import argparse
import logging
import logging.config
import sys
from typing import List, Optional

from config import LOGGING_CONFIG, STOCHORD_CONFIG
from src.core.distortion import identity_pair
from src.handlers.clauses import evaluate_clause
from src.handlers.dualcheck import InstanceSpec, exhaustive_small_scan, run_equivalence_suite
from src.handlers.majorize import KINDS, majorizes, statements_hold
from src.handlers.ordering import check_ordering
from src.handlers.report_renderer import (
    render_equivalence,
    render_lorenz,
    render_majorization,
    render_verdict,
    render_welfare,
    to_json,
)
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
from src.utils.errors import BadParams
from src.utils.file_loader import (
    load_distribution,
    load_pair,
    load_perception,
    load_utility,
    load_vector,
)

logger = logging.getLogger("stochord")

FUNCTIONALS = ('mean', 'yaari', 'rdeu', 'sgini', 'gini')


def _configure_logging(verbose: bool):
    logging.config.dictConfig(LOGGING_CONFIG)
    if verbose:
        for handler in logging.getLogger('stochord').handlers + logging.getLogger('src').handlers:
            if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.FileHandler):
                handler.setLevel(logging.DEBUG)


def _float_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _positive(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not (0 < value < float("inf")):
        raise argparse.ArgumentTypeError(f"expected a positive tolerance, got {text!r}")
    return value


def _emit(args, payload: dict, text: str):
    if args.json:
        print(to_json(payload))
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    F1 = load_distribution(args.dist1, args.bins)
    F2 = load_distribution(args.dist2, args.bins)
    order = args.order.upper()
    pair = load_pair(args.pair) if args.pair else None
    if args.clause:
        if pair is None:
            lo = min(F1.support.min_loc, F2.support.min_loc)
            hi = max(F1.support.max_loc, F2.support.max_loc)
            pair = identity_pair(lo, hi)
        verdict = evaluate_clause(args.clause, pair, F1, F2, args.eps)
    else:
        if pair is not None and order not in STOCHORD_CONFIG['pair_orders']:
            raise BadParams(f"--pair only applies to {', '.join(STOCHORD_CONFIG['pair_orders'])}")
        verdict = check_ordering(order, F1, F2, pair, args.eps)
    logger.debug("check %s: %s", order, verdict)
    _emit(args, {'order': order, 'verdict': verdict.to_dict()},
          render_verdict(order, verdict, (args.dist1, args.dist2)))
    return 0 if verdict.holds else 1


def cmd_lorenz(args) -> int:
    F = load_distribution(args.dist, args.bins)
    rows = lorenz_curve(F, args.points, args.normalize)
    _emit(args, {'normalize': args.normalize, 'rows': [list(r) for r in rows]},
          render_lorenz(rows, args.normalize))
    return 0


def cmd_welfare(args) -> int:
    F = load_distribution(args.dist, args.bins)
    residual, params = None, {}
    if args.functional == 'mean':
        value = mean(F)
    elif args.functional == 'gini':
        value = gini_index(F, args.grid)
    elif args.functional == 'rdeu':
        if not args.utility:
            raise BadParams("rdeu needs --utility")
        f0 = load_perception(args.perception) if args.perception else identity_perception()
        value = rdeu(load_utility(args.utility), f0, F)
        params['perception'] = f0.label
    else:
        if args.functional == 'sgini':
            f0 = s_gini_perception(args.rho, args.grid)
            params.update({'rho': args.rho, 'approx_error': f0.approx_error})
        else:
            f0 = load_perception(args.perception) if args.perception else identity_perception()
            params['perception'] = f0.label
        forms = yaari_forms(f0, F)
        residual = max(forms) - min(forms)
        value = yaari(f0, F)
    _emit(args, {'functional': args.functional, 'value': value, 'residual': residual, 'params': params},
          render_welfare(args.functional, value, residual, params))
    return 0


def cmd_majorize(args) -> int:
    x, y = load_vector(args.x), load_vector(args.y)
    result = majorizes(x, y, args.kind, args.eps)
    statements = statements_hold(x, y, args.anchor, args.eps) if args.statements else {}
    payload = {
        'kind': args.kind,
        'holds': result.holds,
        'witness': result.witness,
        'margin': result.margin,
        'statements': {k: s._asdict() for k, s in statements.items()},
    }
    _emit(args, payload, render_majorization(args.kind, result, statements))
    return 0 if result.holds else 1


def cmd_verify(args) -> int:
    if args.exhaustive:
        report = exhaustive_small_scan(args.theorem, args.n, args.grid, args.eps)
    else:
        overrides = {k: v for k, v in (('seed', args.seed), ('trials', args.trials),
                                       ('n_atoms_max', args.n_atoms), ('n_knots_max', args.n_knots),
                                       ('value_range', args.range), ('workers', args.workers))
                     if v is not None}
        report = run_equivalence_suite(InstanceSpec(**overrides), args.theorem, args.eps)
    if args.text:
        print(render_equivalence(report), end='')
    else:
        print(report.model_dump_json(indent=2))
    return 0 if report.all_agree else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='stochord', description="Stochastic orderings under distortions")
    parser.add_argument('--eps', type=_positive, default=None,
                        help=f"comparison tolerance (default: {STOCHORD_CONFIG['eps']:g}, env STOCHORD_EPS)")
    parser.add_argument('--json', action='store_true', help="machine-readable output")
    parser.add_argument('--verbose', action='store_true', help="debug logging on the console")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('check', help="decide an ordering between two distributions")
    p.add_argument('order', help="fsd, ssd, icv, icx, lorenz_weak, lorenz_upper, upper, lower or double")
    p.add_argument('dist1')
    p.add_argument('dist2')
    p.add_argument('--pair', help="standard pair file for upper/lower/double (identity when omitted)")
    p.add_argument('--clause', help="evaluate one theorem clause instead, e.g. T1.iii")
    p.add_argument('--bins', type=int, help="discretize sample files into histogram bins")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser('lorenz', help="cumulative quantile table")
    p.add_argument('dist')
    p.add_argument('--points', type=int, default=STOCHORD_CONFIG['lorenz_points'])
    p.add_argument('--normalize', action='store_true', help="divide by the mean")
    p.add_argument('--bins', type=int)
    p.set_defaults(func=cmd_lorenz)

    p = sub.add_parser('welfare', help="welfare functional of a distribution")
    p.add_argument('dist')
    p.add_argument('--functional', choices=FUNCTIONALS, default='mean')
    p.add_argument('--rho', type=float, default=2.0, help="S-Gini parameter (> 1)")
    p.add_argument('--grid', type=int, default=STOCHORD_CONFIG['sgini_grid'], help="S-Gini knot count")
    p.add_argument('--perception', help="perception file for yaari/rdeu")
    p.add_argument('--utility', help="utility file for rdeu")
    p.add_argument('--bins', type=int)
    p.set_defaults(func=cmd_welfare)

    p = sub.add_parser('majorize', help="majorization between two vectors")
    p.add_argument('x', help="majorizing vector file")
    p.add_argument('y', help="majorized vector file")
    p.add_argument('--kind', choices=KINDS, default='strong')
    p.add_argument('--statements', action='store_true', help="also decide the four equivalent statements")
    p.add_argument('--anchor', type=float, default=0.0, help="common anchor x(0) = y(0)")
    p.set_defaults(func=cmd_majorize)

    p = sub.add_parser('verify', help="run the equivalence harness")
    p.add_argument('theorem', help=', '.join(STOCHORD_CONFIG['theorems']))
    p.add_argument('--trials', type=int)
    p.add_argument('--seed', type=int)
    p.add_argument('--n-atoms', type=int, dest='n_atoms')
    p.add_argument('--n-knots', type=int, dest='n_knots')
    p.add_argument('--range', type=_float_list, help="value range lo,hi")
    p.add_argument('--workers', type=int)
    p.add_argument('--exhaustive', action='store_true', help="scan every vector pair over --grid")
    p.add_argument('--n', type=int, default=3, help="vector length for --exhaustive")
    p.add_argument('--grid', type=_float_list, default=[0.0, 1.0, 2.0], help="comma-separated grid")
    p.add_argument('--text', action='store_true', help="text summary instead of the JSON report")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        # StochOrdError 与 pydantic ValidationError 均为 ValueError 子类
        logger.debug("command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == '__main__':
    sys.exit(main())
