"""The ``mqapprox`` command.

Exit codes: 0 on success, 2 for configuration or input errors, 3 when a computation fails (for example an
unreachable epsilon or an exhausted sequence), and 4 when a verification suite reports a failed check.
"""

import argparse
import logging
import sys
from fractions import Fraction
from typing import Any, Callable, Sequence

import mpmath
import pandas as pd

from mqapprox.approximation.construction import CapExceededError, approximate_function, sweep_degree, sweep_y_min
from mqapprox.approximation.recovery import recovery_defect_table
from mqapprox.approximation.targets import TargetFunction
from mqapprox.centers import CenterSet, SequenceExhaustedError
from mqapprox.cli.config import SEQUENCE_KINDS, ConfigError, RunConfig
from mqapprox.constants import BOUNDEDNESS_BOUND
from mqapprox.expansion import MultiquadricParams, expansion_coefficient_oracle, expansion_polynomial
from mqapprox.expressions import ExpressionEvaluationError, ExpressionSyntaxError
from mqapprox.vandermonde import SingularSystemError, normalized_weights, solve_weights_exact
from mqapprox.verification import ALIASES, PASSED, SUITES, run_suite

__all__ = [
    "EXIT_COMPUTATION",
    "EXIT_CONFIG",
    "EXIT_OK",
    "EXIT_VERIFICATION",
    "format_frame",
    "main",
]

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_COMPUTATION = 3
EXIT_VERIFICATION = 4

SIGNIFICANT_DIGITS = 17


def format_frame(frame: pd.DataFrame) -> pd.DataFrame:
    """Render floats with 17 significant digits and exact rationals as ``p/q`` strings."""

    def render(value: Any) -> Any:
        if isinstance(value, Fraction):
            return str(value)
        if isinstance(value, float):
            return mpmath.nstr(mpmath.mpf(value), SIGNIFICANT_DIGITS)
        return value

    return frame.apply(lambda column: column.map(render))


def _emit_csv(frame: pd.DataFrame, path: Any) -> None:
    text = format_frame(frame).to_csv(index=False, lineterminator="\n")
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)
        logger.info(f"Wrote {len(frame)} rows to {path}.")


def _parse_number(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as err:
        raise ConfigError(f"Not a number: {text!r}.") from err


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ConfigError(message)


def _run_expand(args: argparse.Namespace) -> int:
    c = _parse_number(args.c)
    _require(args.k >= 1, f"--k must be at least 1, got {args.k}.")
    _require(c > 0, f"--c must be positive, got {c}.")
    _require(args.j >= 0, f"--j must be nonnegative, got {args.j}.")
    params = MultiquadricParams(k=args.k, c=c)
    build = expansion_coefficient_oracle if args.oracle else expansion_polynomial
    print(f"A[{args.k},{args.j}](x) = {build(params, args.j)}")
    return EXIT_OK


def _run_weights(args: argparse.Namespace) -> int:
    centers = [_parse_number(piece) for piece in args.centers.split(",")]
    _require(args.k >= 1, f"--k must be at least 1, got {args.k}.")
    _require(args.n >= 0, f"--n must be nonnegative, got {args.n}.")
    size = 2 * args.k + args.n + 1
    _require(len(centers) == size, f"k={args.k}, n={args.n} needs {size} centers, got {len(centers)}.")
    _require(all(y != 0 for y in centers), "Centers must be nonzero.")
    _require(len(set(centers)) == len(centers), "Centers must be distinct.")
    solution = solve_weights_exact(centers, args.k, args.n)
    normalized = normalized_weights(solution)
    frame = pd.DataFrame({"center": solution.centers, "weight": solution.weights, "normalized": normalized})
    print(frame.astype(str).to_string(index=False))
    largest = max(abs(value) for value in normalized)
    if _is_doubling(centers):
        verdict = "within" if largest < BOUNDEDNESS_BOUND else "EXCEEDS"
        print(f"max |c_j| = {float(largest):.6f} ({verdict} the doubling bound {BOUNDEDNESS_BOUND})")
    else:
        print(f"max |c_j| = {float(largest):.6f} (centers do not double; no bound applies)")
    return EXIT_OK


def _is_doubling(centers: Sequence[Fraction]) -> bool:
    try:
        CenterSet(centers)
    except ValueError:
        return False
    return True


def _run_recover(args: argparse.Namespace) -> int:
    _require(args.n >= 0, f"--n must be nonnegative, got {args.n}.")
    config = RunConfig.from_args(args)
    y_min = config.y_min if config.y_min is not None else config.params.threshold(config.interval.max_abs)
    table = recovery_defect_table(
        config.params,
        args.n,
        config.scattered_sequence(),
        config.interval,
        y_min,
        doublings=config.steps,
        grid_points=config.grid_points,
    )
    _emit_csv(table, config.csv_out)
    return EXIT_OK


def _run_approx(args: argparse.Namespace) -> int:
    config = RunConfig.from_args(args)
    target = TargetFunction.from_text(config.target)
    appr, report = approximate_function(
        target,
        config.interval,
        config.epsilon,
        config.params,
        config.scattered_sequence(),
        grid_points=config.grid_points,
        lp_exponents=config.lp_exponents,
        degree_cap=config.degree_cap,
        doubling_cap=config.doubling_cap,
        threads=config.threads,
    )
    document = appr.to_json()
    if config.json_out is None:
        print(document)
    else:
        config.json_out.write_text(document + "\n")
    rows = [{"metric": "grid_sup_error", "value": report.sup_error}]
    rows += [{"metric": f"l{p:g}_error", "value": value} for p, value in report.lp_errors.items()]
    rows.append({"metric": "grid_points", "value": report.grid_points})
    rows.append({"metric": "terms", "value": len(appr.terms)})
    rows.append({"metric": "precision_bits", "value": appr.precision})
    _emit_csv(pd.DataFrame(rows, columns=["metric", "value"]), config.csv_out)
    return EXIT_OK


def _run_sweep(args: argparse.Namespace) -> int:
    config = RunConfig.from_args(args)
    target = TargetFunction.from_text(config.target)
    seq = config.scattered_sequence()
    if args.over == "y1":
        table = sweep_y_min(
            target,
            config.interval,
            config.epsilon,
            config.params,
            seq,
            config.steps,
            config.y_min,
            config.grid_points,
            config.threads,
        )
    else:
        table = sweep_degree(
            target, config.interval, config.params, seq, config.steps, config.y_min, config.grid_points, config.threads
        )
    _emit_csv(table, config.csv_out)
    return EXIT_OK


_SUITE_OPTIONS = {
    "binomial": ("n_max", "samples", "seed"),
    "coefficients": ("k_max", "j_max"),
    "expansion": (),
    "vandermonde": ("cases", "k_max", "n_max", "seed"),
    "hoelder": ("target", "epsilon"),
    "recovery": (),
}


def _run_verify(args: argparse.Namespace) -> int:
    suite = ALIASES.get(args.suite, args.suite)
    options = {name: getattr(args, name) for name in _SUITE_OPTIONS[suite] if getattr(args, name) is not None}
    frame = run_suite(suite, **options)
    print(frame.to_string(index=False))
    failures = int((~frame[PASSED]).sum())
    print(f"{len(frame) - failures} of {len(frame)} checks passed.")
    return EXIT_OK if failures == 0 else EXIT_VERIFICATION


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    """Flags that feed RunConfig; all default to None so RunConfig defaults apply."""
    parser.add_argument("--config", help="JSON document of RunConfig fields; overrides flags")
    parser.add_argument("--k", type=int, help="multiquadric order (default 1)")
    parser.add_argument("--c", help="shape parameter, decimal or p/q (default 1)")
    parser.add_argument("--interval", help="approximation interval as a,b (default 0,1)")
    parser.add_argument("--epsilon", type=float, help="target sup error (default 1e-3)")
    parser.add_argument("--target", help="catalog name or expression in x (default exp)")
    parser.add_argument("--sequence", choices=SEQUENCE_KINDS, help="center source (default lattice)")
    parser.add_argument("--jitter-radius", dest="jitter_radius", help="offset bound for the jittered lattice")
    parser.add_argument("--seed", type=int, help="seed for the jittered lattice")
    parser.add_argument("--sequence-path", dest="sequence_path", help="file of points for --sequence file")
    parser.add_argument("--grid-points", dest="grid_points", type=int, help="measurement grid size (default 2049)")
    parser.add_argument("--lp", dest="lp_exponents", help="comma separated L^p exponents (default 1,2)")
    parser.add_argument("--degree-cap", dest="degree_cap", type=int, help="largest proxy degree")
    parser.add_argument("--doubling-cap", dest="doubling_cap", type=int, help="largest number of y_min doublings")
    parser.add_argument("--threads", type=int, help="worker threads for grid evaluation (default 1)")
    parser.add_argument("--json-out", dest="json_out", help="where to write the approximant JSON")
    parser.add_argument("--csv-out", dest="csv_out", help="where to write the CSV table")


def _add_table_options(parser: argparse.ArgumentParser) -> None:
    """Flags of the tabulating subcommands, recover and sweep."""
    parser.add_argument("--y-min", dest="y_min", help="starting smallest center")
    parser.add_argument("--steps", type=int, help="rows in the table (default 6)")


def build_parser() -> argparse.ArgumentParser:
    """The argument parser with one subparser per subcommand."""
    parser = argparse.ArgumentParser(prog="mqapprox", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="log errors only")
    commands = parser.add_subparsers(dest="command", required=True)

    expand = commands.add_parser("expand", help="print an expansion polynomial A[k,j]")
    expand.add_argument("--k", type=int, required=True)
    expand.add_argument("--c", default="1")
    expand.add_argument("--j", type=int, required=True)
    expand.add_argument("--oracle", action="store_true", help="use the generating-function form")
    expand.set_defaults(handler=_run_expand)

    weights = commands.add_parser("weights", help="solve the weight system on given centers")
    weights.add_argument("--k", type=int, required=True)
    weights.add_argument("--n", type=int, required=True)
    weights.add_argument("--centers", required=True, help="comma separated centers, decimal or p/q")
    weights.set_defaults(handler=_run_weights)

    recover = commands.add_parser("recover", help="tabulate the recovery defect over doubling y_min")
    _add_run_options(recover)
    _add_table_options(recover)
    recover.add_argument("--n", type=int, default=0, help="degree N of the recovered polynomial")
    recover.set_defaults(handler=_run_recover)

    approx = commands.add_parser("approx", help="approximate a target function to epsilon")
    _add_run_options(approx)
    approx.set_defaults(handler=_run_approx)

    verify = commands.add_parser("verify", help="run a verification suite")
    verify.add_argument("--suite", required=True, choices=sorted(SUITES) + sorted(ALIASES))
    verify.add_argument("--k-max", dest="k_max", type=int)
    verify.add_argument("--j-max", dest="j_max", type=int)
    verify.add_argument("--n-max", dest="n_max", type=int)
    verify.add_argument("--samples", type=int)
    verify.add_argument("--cases", type=int)
    verify.add_argument("--seed", type=int)
    verify.add_argument("--target")
    verify.add_argument("--epsilon", type=float)
    verify.set_defaults(handler=_run_verify)

    sweep = commands.add_parser("sweep", help="tabulate errors against y_1 or proxy degree")
    _add_run_options(sweep)
    _add_table_options(sweep)
    sweep.add_argument("--over", choices=("y1", "degree"), default="y1")
    sweep.set_defaults(handler=_run_sweep)
    return parser


def _fail(code: int, err: BaseException) -> int:
    print(f"error: {err}", file=sys.stderr)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand and return its exit code."""
    args = build_parser().parse_args(argv)
    level = logging.ERROR if args.quiet else {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s:%(name)s:%(message)s")
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except (CapExceededError, SequenceExhaustedError, ExpressionEvaluationError, SingularSystemError) as err:
        return _fail(EXIT_COMPUTATION, err)
    except (ConfigError, ExpressionSyntaxError, OSError, ValueError) as err:
        return _fail(EXIT_CONFIG, err)


if __name__ == "__main__":
    sys.exit(main())
