#!/usr/bin/env python3
"""
Reproduce the numerical study end to end.

This script:
1. Evaluates the default binary and continuous grids by quadrature
2. Summarizes bias ranges and worst-case settings with their bounds
3. Confirms the worst settings by Monte Carlo
4. Writes the bias-versus-beta5 sweep at the worst-case setting
5. Reports the extreme binary setting from the study text

Usage:
    python scripts/reproduce_study.py
    python scripts/reproduce_study.py --out-dir results --jobs 8
    python scripts/reproduce_study.py --skip-continuous --confirm 0
"""

import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

import argparse
from dotenv import load_dotenv

from src.grid.engine import confirm_extremes, run_grid
from src.grid.summary import interaction_sweep, summarize_bias
from src.io.reports import emit_report
from src.models.config import ModelConfig, OutcomeKind
from src.models.errors import MediationError
from src.models.grid import GridSpec
from src.models.run import OutputFormat
from src.oracle.closed_form import analytic_bias, closed_form_bounds_input
from src.estimation.bounds import compute_nde_bounds
from src.utils.logging_config import get_logger

# Load environment
load_dotenv()

logger = get_logger(__name__)

EXTREME_BINARY = [-3.5, 0.5, 2.5, -4.0, -1.0, 3.5, 3.25, 3.0, -5.0]


def reproduce_grid(kind: OutcomeKind, out_dir: Path, jobs: int, confirm: int, mc_n: int) -> None:
    spec = GridSpec(outcome_kind=kind, parallelism=jobs, mc_n=mc_n)
    results = run_grid(spec)
    emit_report(results, OutputFormat.CSV, out_dir / f"{kind.value}_grid.csv")

    summary = summarize_bias(results)
    emit_report(summary, OutputFormat.CSV, out_dir / f"{kind.value}_summary.txt")
    logger.info(
        "grid_summary",
        outcome_kind=kind.value,
        bias_nde_min=summary.bias_nde_min,
        bias_nde_max=summary.bias_nde_max,
    )

    worst = max(summary.strata, key=lambda s: s.max_abs_bias_nde).worst
    sweep = interaction_sweep(worst, spec)
    emit_report(sweep, OutputFormat.CSV, out_dir / f"{kind.value}_sweep.csv")

    if confirm > 0:
        confirmed = confirm_extremes(results, spec, k=confirm)
        emit_report(confirmed, OutputFormat.CSV, out_dir / f"{kind.value}_confirmed.csv")


def reproduce_extreme(out_dir: Path) -> None:
    config = ModelConfig.from_vector(EXTREME_BINARY, outcome_kind=OutcomeKind.BINARY)
    report = analytic_bias(config)
    bounds = compute_nde_bounds(closed_form_bounds_input(config))
    emit_report(report, OutputFormat.CSV, out_dir / "binary_extreme.txt")
    emit_report(bounds, OutputFormat.CSV, out_dir / "binary_extreme_bounds.txt")
    logger.info(
        "extreme_setting",
        true_nde=report.truth.nde,
        est_nde=report.estimand.nde,
        bias_nde=report.bias_nde,
        bounds_lower=bounds.lower,
        bounds_upper=bounds.upper,
    )


def main():
    parser = argparse.ArgumentParser(description="Reproduce the g-formula bias study")
    parser.add_argument(
        "--out-dir",
        default="results",
        help="Directory for result files (default: results)"
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="Worker threads (default: 1)"
    )
    parser.add_argument(
        "--confirm",
        type=int,
        default=5,
        help="Worst settings to confirm by Monte Carlo; 0 skips (default: 5)"
    )
    parser.add_argument(
        "--mc-n",
        type=int,
        default=1_000_000,
        help="Monte Carlo units per confirmed setting (default: 1000000)"
    )
    parser.add_argument(
        "--skip-continuous",
        action="store_true",
        help="Only run the binary grid"
    )
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    try:
        reproduce_grid(OutcomeKind.BINARY, out_dir, args.jobs, args.confirm, args.mc_n)
        if not args.skip_continuous:
            reproduce_grid(OutcomeKind.CONTINUOUS, out_dir, args.jobs, args.confirm, args.mc_n)
        reproduce_extreme(out_dir)
    except MediationError as e:
        logger.error("reproduction_failed", error=str(e))
        return e.exit_code

    logger.info("reproduction_done", out_dir=str(out_dir))
    return 0


if __name__ == "__main__":
    sys.exit(main())
