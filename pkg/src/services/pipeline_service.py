"""Full analysis pipeline: survey -> boosted models -> importance -> AHP weights."""

import platform
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, replace
from typing import Any, Dict, Optional, Tuple

import numpy as np
import pandas as pd
import scipy

from .. import __version__
from ..ahp.evaluation import AhpResult, evaluate
from ..core.config import PipelineConfig
from ..core.error_handling import EngageRankError, ErrorType, create_error
from ..core.logging import logger
from ..core.seeding import derive_seed
from ..data.schema import COMPOSITE_DISPLAY_NAMES, TARGETS, normalize_target
from ..data.stats import StatsTable, descriptive_stats
from ..data.survey import RegressionProblem, SurveyTable, compute_composites, load_survey, make_target_view, split
from ..data.synth import synthesize
from ..importance.base import ImportanceVector
from ..importance.mdi import mdi
from ..importance.permutation import PermutationConfig, permutation_importance
from ..importance.ranking import Ranking, combined_ranking
from ..models.config import TrainConfig
from ..models.ensemble import BoostedEnsemble, LossCurve, fit_ensemble, staged_deviance

STAGE_SPLIT = "split"
STAGE_TRAIN = "train"
STAGE_PERMUTATION = "permutation"


def split_seed(config: PipelineConfig) -> int:
    return derive_seed(config.seed, STAGE_SPLIT)


def train_config_for(config: PipelineConfig, target: str) -> TrainConfig:
    """The pipeline's training config for one target, seeded from its labeled sub-seed."""
    return replace(config.train, seed=derive_seed(config.seed, STAGE_TRAIN, target))


def permutation_config_for(config: PipelineConfig, target: str) -> PermutationConfig:
    return replace(config.permutation, seed=derive_seed(config.seed, STAGE_PERMUTATION, target))


@dataclass(frozen=True, eq=False)
class TargetReport:
    target: str
    n_train: int
    n_test: int
    loss_curve: LossCurve
    mdi: ImportanceVector
    permutation: ImportanceVector
    ranking: Ranking
    ahp_ranking: Ranking
    ahp: AhpResult
    preset: str
    ensemble: Optional[BoostedEnsemble] = None

    @property
    def rejected(self) -> bool:
        return not self.ahp.consistent

    def to_dict(self) -> Dict[str, Any]:
        return {
            "target": self.target,
            "n_train": self.n_train,
            "n_test": self.n_test,
            "preset": self.preset,
            "final_train_mse": self.loss_curve.train_mse[-1],
            "final_test_mse": self.loss_curve.test_mse[-1],
            "importance": {
                "mdi": self.mdi.to_dict(),
                "permutation": self.permutation.to_dict(),
            },
            "ranking": self.ranking.to_dict(),
            "ahp_features": list(self.ahp_ranking.features),
            "pairwise": self.ahp.matrix.to_dict(),
            "ahp": self.ahp.to_dict(),
            "outcome": "rejected" if self.rejected else "accepted",
        }


@dataclass(frozen=True, eq=False)
class PipelineReport:
    """Statistics, per-target results in BE, CE, EE order, and provenance."""

    stats: StatsTable
    targets: Dict[str, TargetReport]
    provenance: Dict[str, Any]

    @property
    def rejected_targets(self) -> Tuple[str, ...]:
        return tuple(t for t in TARGETS if t in self.targets and self.targets[t].rejected)

    def check_complete(self) -> None:
        missing = [t for t in TARGETS if t not in self.targets]
        if missing:
            raise create_error(ErrorType.INCOMPLETE_REPORT, error_details=", ".join(missing))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "provenance": self.provenance,
            "stats": self.stats.to_records(),
            "targets": {t: self.targets[t].to_dict() for t in TARGETS if t in self.targets},
        }


def library_versions() -> Dict[str, str]:
    return {
        "engage_rank": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "pandas": pd.__version__,
        "scipy": scipy.__version__,
    }


class PipelineService:
    """Runs the pipeline stages for one configuration.

    Every stage that draws random numbers is seeded from a labeled sub-seed
    of config.seed, so any stage can be rerun on its own.
    """

    def __init__(self, config: PipelineConfig, max_workers: int = 1):
        self.config = config
        self.max_workers = max(1, int(max_workers))

    @contextmanager
    def _stage(self, stage: str, target: Optional[str] = None):
        context = {"target": target} if target else {}
        with logger.stage_context(stage, **context):
            try:
                yield
            except EngageRankError as e:
                if e.error_type is ErrorType.STAGE_FAILED:
                    raise
                raise create_error(ErrorType.STAGE_FAILED, original_exception=e, stage=stage,
                                   error_details=e.message, **context)
            except Exception as e:
                raise create_error(ErrorType.STAGE_FAILED, original_exception=e, stage=stage,
                                   error_details=f"{type(e).__name__}: {e}", **context)

    def load_table(self) -> SurveyTable:
        with self._stage("load"):
            if self.config.input is not None:
                table = load_survey(self.config.input)
            else:
                table = synthesize(self.config.synth)
            if len(table) == 0:
                raise create_error(ErrorType.EMPTY_TABLE)
            return table if table.composites_present else compute_composites(table)

    def describe(self, table: SurveyTable) -> StatsTable:
        with self._stage("stats"):
            return descriptive_stats(table)

    def split_table(self, table: SurveyTable) -> Tuple[SurveyTable, SurveyTable]:
        with self._stage(STAGE_SPLIT):
            return split(table, self.config.train_fraction, split_seed(self.config))

    def train_target(self, train: SurveyTable, test: SurveyTable, target: str
                     ) -> Tuple[BoostedEnsemble, LossCurve, RegressionProblem, RegressionProblem]:
        """Fit one target's ensemble with its labeled sub-seed and trace its staged deviance."""
        target = normalize_target(target)
        with self._stage(STAGE_TRAIN, target):
            train_problem = make_target_view(train, target)
            test_problem = make_target_view(test, target)
            ensemble = fit_ensemble(train_problem, train_config_for(self.config, target))
            curve = staged_deviance(ensemble, train_problem, test_problem)
        return ensemble, curve, train_problem, test_problem

    def importance_target(self, ensemble: BoostedEnsemble, test_problem: RegressionProblem,
                          workers: int = 1) -> Tuple[ImportanceVector, ImportanceVector, Ranking]:
        target = test_problem.target
        with self._stage("importance", target):
            mdi_vec = mdi(ensemble)
            perm_vec = permutation_importance(
                ensemble, test_problem.X, test_problem.y,
                permutation_config_for(self.config, target),
                max_workers=workers,
            )
            ranking = combined_ranking(mdi_vec, perm_vec)
        logger.debug_data("Combined ranking", ranking.to_dict(), target=target)
        return mdi_vec, perm_vec, ranking

    def ahp_target(self, ranking: Ranking, target: str) -> Tuple[Ranking, AhpResult]:
        """AHP on the ranking without engagement composites.

        An inconsistent matrix yields its unaccepted result, not an error.
        """
        ahp_ranking = ranking.without(COMPOSITE_DISPLAY_NAMES)
        preset = self.config.ahp_presets[target]
        with self._stage("ahp", target):
            try:
                result = evaluate(ahp_ranking, preset, self.config.custom_presets)
            except EngageRankError as e:
                if e.error_type is not ErrorType.CONSISTENCY_REJECTED:
                    raise
                result = e.context["result"]
                logger.warning(f"AHP matrix for {target} rejected", target=target, cr=result.cr, preset=preset)
        return ahp_ranking, result

    def run_target(self, train: SurveyTable, test: SurveyTable, target: str, workers: int = 1) -> TargetReport:
        ensemble, curve, train_problem, test_problem = self.train_target(train, test, target)
        mdi_vec, perm_vec, ranking = self.importance_target(ensemble, test_problem, workers)
        ahp_ranking, result = self.ahp_target(ranking, target)
        return TargetReport(
            target=target,
            n_train=train_problem.n_samples,
            n_test=test_problem.n_samples,
            loss_curve=curve,
            mdi=mdi_vec,
            permutation=perm_vec,
            ranking=ranking,
            ahp_ranking=ahp_ranking,
            ahp=result,
            preset=self.config.ahp_presets[target],
            ensemble=ensemble,
        )

    def provenance(self, table: SurveyTable, train: SurveyTable, test: SurveyTable) -> Dict[str, Any]:
        return {
            "seed": self.config.seed,
            "config": self.config.to_dict(),
            "versions": library_versions(),
            "sub_seeds": {
                STAGE_SPLIT: split_seed(self.config),
                STAGE_TRAIN: {t: train_config_for(self.config, t).seed for t in TARGETS},
                STAGE_PERMUTATION: {t: permutation_config_for(self.config, t).seed for t in TARGETS},
            },
            "n_rows": len(table),
            "n_train": len(train),
            "n_test": len(test),
        }

    def run(self) -> PipelineReport:
        table = self.load_table()
        stats = self.describe(table)
        train, test = self.split_table(table)

        target_workers = min(len(TARGETS), self.max_workers)
        inner_workers = max(1, self.max_workers // target_workers)
        if target_workers == 1:
            results = [self.run_target(train, test, t, inner_workers) for t in TARGETS]
        else:
            with ThreadPoolExecutor(max_workers=target_workers) as pool:
                futures = [pool.submit(self.run_target, train, test, t, inner_workers) for t in TARGETS]
                results = [f.result() for f in futures]

        # INVARIANT: targets always in canonical BE, CE, EE order
        report = PipelineReport(
            stats=stats,
            targets={r.target: r for r in results},
            provenance=self.provenance(table, train, test),
        )
        report.check_complete()
        logger.info("Pipeline finished", seed=self.config.seed, rejected=list(report.rejected_targets))
        return report


def run_pipeline(config: PipelineConfig, max_workers: int = 1) -> PipelineReport:
    return PipelineService(config, max_workers).run()
