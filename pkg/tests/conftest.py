"""
Pytest configuration and shared fixtures for the engage-rank test suite.
"""

import io
from typing import Iterable, Sequence

import pytest

from src.core.config import PipelineConfig
from src.data.synth import SynthSpec, synthesize
from src.importance.permutation import PermutationConfig
from src.models.config import TrainConfig

SURVEY_HEADER = "gender,age_band,bl,b_act,b_int,b_gro,c_mgt,c_com,e_int,e_sat"


def survey_csv(rows: Iterable[Sequence[object]], header: str = SURVEY_HEADER) -> io.BytesIO:
    """In-memory UTF-8 survey CSV with the given data rows."""
    lines = [header] + [",".join(str(v) for v in row) for row in rows]
    return io.BytesIO(("\n".join(lines) + "\n").encode("utf-8"))


@pytest.fixture
def small_survey_rows():
    return [
        (1, 1, 1, 5, 5, 5, 4, 4, 6, 6),
        (0, 2, 0, 3, 4, 2, 5, 3, 4, 5),
        (1, 0, 1, 7, 6, 7, 6, 6, 7, 6),
        (1, 1, 0, 2, 3, 3, 2, 1, 3, 2),
        (0, 3, 1, 6, 5.5, 6, 5, 5, 6, 6.5),
        (1, 1, 0, 4, 4, 4, 4, 4, 4, 4),
    ]


@pytest.fixture
def small_survey_csv(small_survey_rows):
    return survey_csv(small_survey_rows)


@pytest.fixture(scope="session")
def strong_bl_spec() -> SynthSpec:
    """Synthetic survey where blended learning dominates every measure.

    Composites still overlap across the BL groups, so no composite threshold
    reproduces the BL split.
    """
    return SynthSpec.calibrated(n_rows=300, seed=7, bl_effect=2.0)


@pytest.fixture(scope="session")
def strong_bl_table(strong_bl_spec):
    return synthesize(strong_bl_spec)


@pytest.fixture
def fast_train_config() -> TrainConfig:
    return TrainConfig(n_stages=60, learning_rate=0.1, max_depth=3)


@pytest.fixture
def fast_pipeline_config(strong_bl_spec) -> PipelineConfig:
    """Small but complete pipeline config (few stages, few repetitions)."""
    return PipelineConfig(
        synth=strong_bl_spec,
        train=TrainConfig(n_stages=60, learning_rate=0.1, max_depth=3),
        permutation=PermutationConfig(repetitions=3),
        seed=11,
    )
