"""Fixtures for end-to-end pipeline tests (slower than tests/unit)."""

import json

import pytest

from src.core.config import PipelineConfig
from src.importance.permutation import PermutationConfig
from src.models.config import TrainConfig
from src.services.pipeline_service import run_pipeline


@pytest.fixture(scope="session")
def session_pipeline_config(strong_bl_spec) -> PipelineConfig:
    return PipelineConfig(
        synth=strong_bl_spec,
        train=TrainConfig(n_stages=60, learning_rate=0.1, max_depth=3),
        permutation=PermutationConfig(repetitions=3),
        seed=11,
    )


@pytest.fixture(scope="session")
def pipeline_report(session_pipeline_config):
    return run_pipeline(session_pipeline_config)


@pytest.fixture
def config_path(tmp_path):
    """Write a small synthetic-source config document and return its path."""
    def write(**sections):
        document = {
            "synth": {"calibrated": True, "n_rows": 200, "seed": 3, "bl_effect": 2.0},
            "train": {"n_stages": 30, "learning_rate": 0.1, "max_depth": 3},
            "permutation": {"repetitions": 2},
            "seed": 5,
        }
        document.update(sections)
        path = tmp_path / "pipeline.json"
        path.write_text(json.dumps(document))
        return str(path)
    return write
