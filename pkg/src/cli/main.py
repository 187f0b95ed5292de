"""Command-line entry point: python -m src.cli.main <command> [options]."""

import argparse
import json
import os
import sys
from dataclasses import replace
from typing import Any, Dict, Optional, Sequence

import pandas as pd

from ..ahp.evaluation import AhpResult, evaluate
from ..ahp.tiers import builtin_preset_names
from ..core.config_manager import ConfigManager
from ..core.error_handling import CONSISTENCY_EXIT, DATA_EXIT, USAGE_EXIT, EngageRankError, ErrorType, create_error
from ..core.logging import logger
from ..data.schema import COMPOSITE_DISPLAY_NAMES, TARGETS, normalize_target
from ..data.survey import write_survey_csv
from ..data.synth import SynthSpec, synthesize
from ..importance.ranking import Ranking
from ..services.pipeline_service import PipelineService, run_pipeline
from ..services.report_writer import emit_report, evaluation_frame, to_json_ready
from ..utils.atomic_write import staged_directory
from ..utils.deep_merge import deep_merge


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _global_options() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand's unset flags from hiding values given before it
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="Pipeline config document (JSON or YAML)")
    common.add_argument("--seed", type=int, help="Master seed (overrides the config)")
    common.add_argument("--input", help="Survey CSV path (overrides the config source)")
    common.add_argument("--out-dir", dest="out_dir", help="Output directory")
    common.add_argument("--target", type=str.upper, choices=TARGETS, help="Engagement target (be, ce or ee)")
    return common


def build_parser() -> CliArgumentParser:
    common = _global_options()
    parser = CliArgumentParser(
        prog="engage-rank",
        description="Rank engagement drivers with boosted trees and weight them with AHP.",
        parents=[common],
    )
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    commands.add_parser("stats", parents=[common], help="Descriptive statistics of the survey table")

    synth = commands.add_parser("synth", parents=[common], help="Write a synthetic survey CSV")
    synth.add_argument("--rows", type=int, default=None, help="Number of respondents")
    synth.add_argument("--output", default=None, help="CSV path (default: stdout)")

    commands.add_parser("train", parents=[common], help="Fit one target and write its deviance curve")
    commands.add_parser("importance", parents=[common], help="Feature importance for one target")

    ahp = commands.add_parser("ahp", parents=[common], help="AHP evaluation of a ranking file")
    ahp.add_argument("ranking", help="Ranking file: one feature per line, or CSV with a 'feature' column")
    ahp.add_argument("--preset", default=None, help=f"Tier preset ({', '.join(builtin_preset_names())} or a custom preset)")

    commands.add_parser("run", parents=[common], help="Full pipeline with report emission")
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        "seed": getattr(args, "seed", None),
        "input": getattr(args, "input", None),
        "out_dir": getattr(args, "out_dir", None),
    }


def _require_target(args: argparse.Namespace) -> str:
    target = getattr(args, "target", None)
    if target is None:
        raise create_error(ErrorType.USAGE_ERROR, error_details=f"'{args.command}' needs --target")
    return normalize_target(target)


def _require_out_dir(out_dir: Optional[str]) -> str:
    if not out_dir:
        raise create_error(ErrorType.USAGE_ERROR, error_details="no output directory; pass --out-dir or set out_dir")
    return out_dir


def read_ranking_file(path: str) -> Ranking:
    """Ranking from a file: one feature per line, or a CSV whose first column is 'feature'.

    A CSV with an 'mdi' column (such as importance_<target>.csv) also
    carries MDI scores, which threshold presets need.
    """
    if not os.path.isfile(path):
        raise create_error(ErrorType.INPUT_NOT_FOUND, path=path)
    with open(path, "r", encoding="utf-8") as f:
        lines = [line.strip() for line in f if line.strip()]
    if not lines:
        raise create_error(ErrorType.EMPTY_INPUT, path=path, error_details=f"ranking file '{path}' is empty")
    if lines[0].split(",")[0].strip().lower() == "feature":
        try:
            frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
        except (pd.errors.ParserError, UnicodeDecodeError) as e:
            raise create_error(ErrorType.MALFORMED_CSV, original_exception=e, error_details=str(e))
        frame = frame[frame.iloc[:, 0].str.strip() != ""]
        names = list(frame.iloc[:, 0].str.strip())
        if "mdi" in frame.columns:
            scores = pd.to_numeric(frame["mdi"], errors="coerce")
            if scores.isna().any():
                raise create_error(ErrorType.MALFORMED_CSV, path=path,
                                   error_details=f"non-numeric mdi score in '{path}'")
            ordered = Ranking.from_order(names)
            return Ranking(tuple(
                replace(entry, mdi=float(score)) for entry, score in zip(ordered, scores)
            ))
    else:
        names = lines
    return Ranking.from_order(names)


def _print_ahp(result: AhpResult) -> None:
    print("feature,weight_score,percentage")
    for label, weight, percentage in zip(result.labels, result.weight_scores, result.percentages):
        print(f"{label},{weight:.3f},{percentage:.3f}")
    print(f"lambda_max,{result.lambda_max:.4f}")
    print(f"ci,{result.ci:.4f}")
    print(f"cr,{result.cr:.4f}")
    print(f"consistent,{str(result.consistent).lower()}")


def cmd_stats(args: argparse.Namespace, manager: ConfigManager) -> int:
    config = manager.build(_overrides(args))
    service = PipelineService(config)
    stats = service.describe(service.load_table())
    frame = stats.to_frame()
    if config.out_dir:
        with staged_directory(config.out_dir) as staging:
            frame.to_csv(os.path.join(staging, "stats.csv"), index=False, lineterminator="\n")
    sys.stdout.write(frame.to_csv(index=False, lineterminator="\n"))
    return 0


def cmd_synth(args: argparse.Namespace, manager: ConfigManager) -> int:
    configured = manager.get_config().get("synth")
    seed = getattr(args, "seed", None)
    if configured:
        spec_data = deep_merge(configured, {"n_rows": args.rows, "seed": seed})
        spec = SynthSpec.from_dict(spec_data)
    else:
        spec = SynthSpec.calibrated(n_rows=args.rows or 1132, seed=seed or 0)
    table = synthesize(spec)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8", newline="") as f:
                write_survey_csv(table, f)
        except OSError as e:
            raise create_error(ErrorType.OUTPUT_WRITE_FAILED, original_exception=e, path=args.output,
                               error_details=str(e))
    else:
        write_survey_csv(table, sys.stdout)
    return 0


def cmd_train(args: argparse.Namespace, manager: ConfigManager) -> int:
    target = _require_target(args)
    config = manager.build(_overrides(args))
    service = PipelineService(config, manager.max_workers)
    train, test = service.split_table(service.load_table())
    ensemble, curve, _, _ = service.train_target(train, test, target)

    frame = curve.to_frame()
    if config.out_dir:
        suffix = target.lower()
        with staged_directory(config.out_dir) as staging:
            frame.to_csv(os.path.join(staging, f"deviance_{suffix}.csv"), index=False, lineterminator="\n")
            with open(os.path.join(staging, f"model_{suffix}.json"), "w", encoding="utf-8", newline="\n") as f:
                json.dump(to_json_ready(ensemble.to_dict()), f, allow_nan=False)
    logger.info(f"Trained {target}", target=target, stages=curve.n_stages,
                train_mse=curve.train_mse[-1], test_mse=curve.test_mse[-1])
    sys.stdout.write(frame.to_csv(index=False, lineterminator="\n"))
    return 0


def cmd_importance(args: argparse.Namespace, manager: ConfigManager) -> int:
    target = _require_target(args)
    config = manager.build(_overrides(args))
    service = PipelineService(config, manager.max_workers)
    train, test = service.split_table(service.load_table())
    ensemble, _, _, test_problem = service.train_target(train, test, target)
    _, perm_vec, ranking = service.importance_target(ensemble, test_problem, manager.max_workers)

    frame = ranking.to_frame()
    if config.out_dir:
        suffix = target.lower()
        with staged_directory(config.out_dir) as staging:
            frame.to_csv(os.path.join(staging, f"importance_{suffix}.csv"), index=False, lineterminator="\n")
            perm_vec.long_frame().to_csv(os.path.join(staging, f"importance_long_{suffix}.csv"),
                                         index=False, lineterminator="\n")
    sys.stdout.write(frame.to_csv(index=False, lineterminator="\n"))
    return 0


def cmd_ahp(args: argparse.Namespace, manager: ConfigManager) -> int:
    ranking = read_ranking_file(args.ranking).without(COMPOSITE_DISPLAY_NAMES)
    preset = args.preset
    if preset is None:
        preset = manager.preset_for(getattr(args, "target", None) or "BE")

    try:
        result = evaluate(ranking, preset, manager.custom_presets())
    except EngageRankError as e:
        if e.error_type is not ErrorType.CONSISTENCY_REJECTED:
            raise
        _print_ahp(e.context["result"])
        print(f"error: {e.message}", file=sys.stderr)
        return CONSISTENCY_EXIT

    _print_ahp(result)
    out_dir = getattr(args, "out_dir", None)
    if out_dir:
        with staged_directory(out_dir) as staging:
            result.matrix.to_frame().to_csv(os.path.join(staging, "pairwise.csv"), lineterminator="\n")
    return 0


def cmd_run(args: argparse.Namespace, manager: ConfigManager) -> int:
    config = manager.build(_overrides(args))
    out_dir = _require_out_dir(config.out_dir)
    report = run_pipeline(config, manager.max_workers)
    emit_report(report, out_dir)
    print(evaluation_frame({t: report.targets[t].ahp for t in TARGETS}).to_csv(
        index=False, lineterminator="\n", float_format="%.3f"), end="")
    if report.rejected_targets:
        print(f"AHP consistency rejected for: {', '.join(report.rejected_targets)}", file=sys.stderr)
        return CONSISTENCY_EXIT
    return 0


COMMANDS = {
    "stats": cmd_stats,
    "synth": cmd_synth,
    "train": cmd_train,
    "importance": cmd_importance,
    "ahp": cmd_ahp,
    "run": cmd_run,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else USAGE_EXIT

    try:
        manager = ConfigManager(getattr(args, "config", None))
        return COMMANDS[args.command](args, manager)
    except EngageRankError as e:
        logger.debug_data("Error detail", e.to_dict(), command=args.command)
        print(f"error: {e.message}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.error(f"Unexpected failure in '{args.command}': {e}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return DATA_EXIT


if __name__ == "__main__":
    sys.exit(main())
