"""Command-line entry point: crossworld <subcommand> [flags].

Results go to stdout or --out; logs go to stderr. Exit codes: 0 success,
2 usage or configuration error, 3 data error, 4 numerical error.
"""

import argparse
import sys
from typing import Any, Callable, Optional, Sequence

from . import __version__
from .audit.diagnostics import run_audit
from .estimation.bounds import bounds_from_data, compute_nde_bounds
from .estimation.gformula import estimate_gformula
from .estimation.lsem import fit_lsem, lsem_effects
from .estimation.study import mc_gformula_study
from .grid.engine import confirm_extremes, run_grid
from .grid.summary import DEFAULT_SWEEP_POINTS, interaction_sweep, summarize_bias
from .io.config_loader import ConfigLoader
from .io.datasets import dataset_frame, read_dataset, read_grid_results, read_lsem_dataset
from .io.reports import render, write_text
from .models.audit import DEFAULT_THRESHOLD
from .models.config import ModelConfig
from .models.errors import InvalidConfig, MediationError
from .models.grid import GridMethod, GridSpec
from .models.run import OutputFormat, RunConfig
from .oracle.closed_form import (
    analytic_bias,
    closed_form_bounds_input,
    estimand_closed_form,
    truth_closed_form,
)
from .simulation.effects import mc_interventional_effects, mc_true_effects, separable_decomposition
from .simulation.sampling import simulate_observed
from .utils.logging_config import bind_run_context, get_logger

logger = get_logger(__name__)

DEFAULT_N = 1_000_000
DEFAULT_SEED = 2470
DEFAULT_CONFIRM_K = 5

QUADRATURE = "quadrature"
MONTE_CARLO = "monte_carlo"


class Context:
    """Config file values merged with command-line overrides."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.config = ConfigLoader().load(args.config) if args.config else RunConfig()

    @property
    def n(self) -> int:
        return self.args.n or self.config.n or DEFAULT_N

    @property
    def seed(self) -> int:
        if self.args.seed is not None:
            return self.args.seed
        return self.config.seed if self.config.seed is not None else DEFAULT_SEED

    @property
    def method(self) -> Optional[str]:
        return self.args.method or self.config.method

    @property
    def jobs(self) -> Optional[int]:
        return self.args.jobs or self.config.jobs

    @property
    def data(self):
        return self.args.data or self.config.io.data

    @property
    def out(self):
        return self.args.out or self.config.io.out

    @property
    def fmt(self) -> OutputFormat:
        return OutputFormat(self.args.format) if self.args.format else self.config.output_format

    def model(self) -> ModelConfig:
        if self.config.model is None:
            raise InvalidConfig(f"'{self.args.command}' needs a model section in --config")
        return self.config.model

    def grid(self) -> GridSpec:
        if self.config.grid is None:
            raise InvalidConfig(f"'{self.args.command}' needs a grid section in --config")
        spec = self.config.grid
        updates: dict[str, Any] = {}
        if self.method:
            updates["method"] = _grid_method(self.method)
        if self.args.n:
            updates["mc_n"] = self.args.n
        if self.args.seed is not None:
            updates["base_seed"] = self.args.seed
        if self.jobs:
            updates["parallelism"] = self.jobs
        if updates:
            spec = GridSpec.model_validate({**spec.model_dump(), **updates})
        return spec

    def emit(self, *results: Any) -> None:
        write_text("".join(render(r, self.fmt) for r in results), self.out)


def _grid_method(method: str) -> GridMethod:
    if method in ("mc", MONTE_CARLO):
        return GridMethod.MONTE_CARLO
    if method == QUADRATURE:
        return GridMethod.QUADRATURE
    raise InvalidConfig(f"unknown method '{method}'; use quadrature or monte_carlo")


def _method(ctx: Context, default: str = QUADRATURE) -> GridMethod:
    return _grid_method(ctx.method or default)


def cmd_simulate(ctx: Context) -> None:
    simulated = simulate_observed(ctx.model(), ctx.n, ctx.seed)
    counterfactuals = simulated.counterfactuals if ctx.args.counterfactuals else None
    ctx.emit(dataset_frame(simulated.observed, counterfactuals))


def cmd_truth(ctx: Context) -> None:
    model = ctx.model()
    if _method(ctx) == GridMethod.MONTE_CARLO:
        ctx.emit(mc_true_effects(model, ctx.n, ctx.seed, ctx.jobs))
    else:
        ctx.emit(truth_closed_form(model))


def cmd_estimate(ctx: Context) -> None:
    if ctx.data:
        ctx.emit(estimate_gformula(read_dataset(ctx.data)))
        return
    model = ctx.model()
    if _method(ctx) == GridMethod.MONTE_CARLO:
        ctx.emit(mc_gformula_study(model, ctx.n, ctx.seed, jobs=ctx.jobs).estimate)
    else:
        ctx.emit(estimand_closed_form(model))


def cmd_bias(ctx: Context) -> None:
    model = ctx.model()
    if _method(ctx) == GridMethod.MONTE_CARLO:
        ctx.emit(mc_gformula_study(model, ctx.n, ctx.seed, jobs=ctx.jobs))
    else:
        ctx.emit(analytic_bias(model))


def cmd_bounds(ctx: Context) -> None:
    if ctx.data:
        ctx.emit(bounds_from_data(read_dataset(ctx.data)))
    elif ctx.config.bounds is not None:
        ctx.emit(compute_nde_bounds(ctx.config.bounds))
    else:
        ctx.emit(compute_nde_bounds(closed_form_bounds_input(ctx.model())))


def cmd_lsem(ctx: Context) -> None:
    if not ctx.data:
        raise InvalidConfig("'lsem' needs --data with columns A,L,M,Y")
    coef = fit_lsem(read_lsem_dataset(ctx.data))
    ctx.emit(lsem_effects(coef), coef)


def cmd_audit(ctx: Context) -> None:
    threshold = DEFAULT_THRESHOLD if ctx.args.threshold is None else ctx.args.threshold
    ctx.emit(run_audit(ctx.model(), ctx.n, ctx.seed, threshold))


def cmd_grid(ctx: Context) -> None:
    ctx.emit(run_grid(ctx.grid(), jobs=ctx.jobs))


def cmd_summarize(ctx: Context) -> None:
    if not ctx.data:
        raise InvalidConfig("'summarize' needs --data with grid results")
    ctx.emit(summarize_bias(read_grid_results(ctx.data)))


def cmd_confirm(ctx: Context) -> None:
    if not ctx.data:
        raise InvalidConfig("'confirm' needs --data with grid results")
    ctx.emit(confirm_extremes(read_grid_results(ctx.data), ctx.grid(), ctx.args.k, ctx.jobs))


def cmd_figure5(ctx: Context) -> None:
    spec = ctx.grid()
    if ctx.data:
        results = read_grid_results(ctx.data)
    else:
        results = run_grid(spec.model_copy(update={"method": GridMethod.QUADRATURE}), jobs=ctx.jobs)
    summary = summarize_bias(results)
    worst = max(summary.strata, key=lambda s: s.max_abs_bias_nde).worst
    ctx.emit(interaction_sweep(worst, spec, points=ctx.args.points))


def cmd_alternatives(ctx: Context) -> None:
    model = ctx.model()
    ctx.emit(
        mc_interventional_effects(model, ctx.n, ctx.seed, ctx.jobs),
        separable_decomposition(model, ctx.n, ctx.seed, ctx.jobs),
    )


COMMANDS: dict[str, tuple[Callable[[Context], None], str]] = {
    "simulate": (cmd_simulate, "simulate a randomized study and write A,M,Y rows"),
    "truth": (cmd_truth, "true NDE, NIE and TE of the model"),
    "estimate": (cmd_estimate, "mediational g-formula from data or from the model"),
    "bias": (cmd_bias, "truth, g-formula estimand and their gap"),
    "bounds": (cmd_bounds, "nonparametric NDE bounds for binary A, M, Y"),
    "lsem": (cmd_lsem, "fit the linear structural equations and report effects"),
    "audit": (cmd_audit, "diagnose cross-world and single-world assumptions"),
    "grid": (cmd_grid, "evaluate bias over a parameter grid"),
    "summarize": (cmd_summarize, "bias ranges and worst cases of grid results"),
    "confirm": (cmd_confirm, "Monte Carlo confirmation of the worst grid settings"),
    "figure5": (cmd_figure5, "bias as beta5 varies at the worst-case setting"),
    "sweep": (cmd_figure5, "alias of figure5"),
    "alternatives": (cmd_alternatives, "interventional, organic and separable effects"),
}


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="YAML or JSON run configuration")
    parser.add_argument("--data", help="input CSV")
    parser.add_argument("--n", type=_positive_int, help=f"Monte Carlo units (default {DEFAULT_N})")
    parser.add_argument("--seed", type=_seed, help=f"base seed (default {DEFAULT_SEED})")
    parser.add_argument("--method", choices=[QUADRATURE, MONTE_CARLO, "mc"], help="evaluation method")
    parser.add_argument("--jobs", type=_positive_int, help="worker threads")
    parser.add_argument("--out", help="output file (default stdout)")
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], help="output format")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0 or value == float("inf"):
        raise argparse.ArgumentTypeError("must be a positive number")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("must be a 64-bit unsigned integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crossworld",
        description="Natural effects, g-formula bias and bounds under cross-world confounding",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        _common(p)
        if name == "simulate":
            p.add_argument(
                "--counterfactuals", action="store_true", help="add simulation-only cf_ columns"
            )
        elif name == "audit":
            p.add_argument("--threshold", type=_positive_float, help="fail beyond this many standard errors")
        elif name == "confirm":
            p.add_argument("--k", type=_positive_int, default=DEFAULT_CONFIRM_K, help="settings to confirm")
        elif name in ("figure5", "sweep"):
            p.add_argument("--points", type=_positive_int, default=DEFAULT_SWEEP_POINTS, help="beta5 points")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand and return the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    handler, _ = COMMANDS[args.command]
    try:
        ctx = Context(args)
        bind_run_context(command=args.command, seed=ctx.seed)
        logger.info("command_started")
        handler(ctx)
    except MediationError as e:
        logger.error("command_failed", command=args.command, error=str(e), exit_code=e.exit_code)
        return e.exit_code
    logger.info("command_done")
    return 0


if __name__ == "__main__":
    sys.exit(main())
