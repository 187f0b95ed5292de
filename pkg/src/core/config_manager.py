"""Configuration document loading with command-line overrides and environment settings."""
import os
from typing import Any, Dict, Optional

import yaml

from .config import DEFAULT_AHP_PRESETS, PipelineConfig
from .error_handling import ErrorType, create_error
from .logging import logger
from ..ahp.tiers import ThresholdPreset
from ..data.schema import normalize_target
from ..utils.deep_merge import deep_merge


class ConfigManager:
    """Loads one JSON (or YAML) config document and builds PipelineConfig objects from it."""

    def __init__(self, config_path: Optional[str] = None):
        self.config_path = config_path
        self.document = self._load_document() if config_path else {}
        self.log_level = os.getenv("LOG_LEVEL", "INFO")

        logger.debug("Configuration manager initialized", extra={
            "config": {
                "config_path": config_path,
                "log_level": self.log_level,
                "keys": sorted(self.document),
            }
        })

    def _load_document(self) -> Dict[str, Any]:
        """Read the config file; JSON documents parse as YAML."""
        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                document = yaml.safe_load(f)
        except FileNotFoundError as e:
            raise create_error(ErrorType.CONFIG_NOT_FOUND, original_exception=e, path=self.config_path)
        except yaml.YAMLError as e:
            raise create_error(ErrorType.INVALID_CONFIG, original_exception=e,
                               field_name="<document>", error_details=f"cannot parse {self.config_path}: {e}")
        if document is None:
            return {}
        if not isinstance(document, dict):
            raise create_error(ErrorType.INVALID_CONFIG, field_name="<document>",
                               error_details="top level must be an object")
        return document

    def get_config(self) -> Dict[str, Any]:
        return self.document

    def merged(self, overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """Document with overrides applied; None-valued overrides are ignored.

        An `input` override replaces a configured synthetic source.
        """
        overrides = overrides or {}
        merged = deep_merge(self.document, overrides)
        if overrides.get("input") is not None:
            merged.pop("synth", None)
        return merged

    def build(self, overrides: Optional[Dict[str, Any]] = None) -> PipelineConfig:
        config = PipelineConfig.from_dict(self.merged(overrides))
        logger.debug_data("Pipeline configuration", config.to_dict())
        return config

    def custom_presets(self) -> Dict[str, ThresholdPreset]:
        """Threshold presets declared under custom_presets."""
        return {
            name: ThresholdPreset.from_dict(name, spec)
            for name, spec in (self.document.get("custom_presets") or {}).items()
        }

    def preset_for(self, target: str) -> str:
        configured = {str(k).upper(): v for k, v in (self.document.get("ahp_presets") or {}).items()}
        return {**DEFAULT_AHP_PRESETS, **configured}[normalize_target(target)]

    @property
    def max_workers(self) -> int:
        raw = os.getenv("ENGAGE_RANK_THREADS", "1")
        try:
            value = int(raw)
        except ValueError:
            value = 0
        if value < 1:
            raise create_error(ErrorType.INVALID_CONFIG, field_name="ENGAGE_RANK_THREADS",
                               error_details=f"must be a positive integer, got '{raw}'")
        return value
