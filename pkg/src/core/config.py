"""Declarative pipeline configuration and its JSON round trip."""

from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional

from ..ahp.tiers import BE_STYLE, CE_EE_STYLE, ThresholdPreset, builtin_preset_names
from ..data.schema import TARGETS
from ..data.synth import SynthSpec
from ..importance.permutation import PermutationConfig
from ..models.config import TrainConfig
from .error_handling import ErrorType, create_error

DEFAULT_AHP_PRESETS: Dict[str, str] = {"BE": BE_STYLE, "CE": CE_EE_STYLE, "EE": CE_EE_STYLE}

CONFIG_KEYS = (
    "input", "synth", "train_fraction", "train", "permutation",
    "ahp_presets", "custom_presets", "seed", "out_dir",
)


def _invalid(field_name: str, details: str):
    return create_error(ErrorType.INVALID_CONFIG, field_name=field_name, error_details=details)


@dataclass(frozen=True)
class PipelineConfig:
    """Exactly one of `input` (survey CSV path) and `synth` is set."""

    input: Optional[str] = None
    synth: Optional[SynthSpec] = None
    train_fraction: float = 0.8
    train: TrainConfig = field(default_factory=TrainConfig)
    permutation: PermutationConfig = field(default_factory=PermutationConfig)
    ahp_presets: Dict[str, str] = field(default_factory=lambda: dict(DEFAULT_AHP_PRESETS))
    custom_presets: Dict[str, ThresholdPreset] = field(default_factory=dict)
    seed: int = 0
    out_dir: Optional[str] = None

    def __post_init__(self):
        if (self.input is None) == (self.synth is None):
            raise _invalid("input", "exactly one of 'input' and 'synth' must be set")
        if not 0.0 < self.train_fraction < 1.0:
            raise _invalid("train_fraction", f"must lie in (0, 1), got {self.train_fraction}")
        if int(self.seed) != self.seed or self.seed < 0:
            raise _invalid("seed", f"must be a non-negative integer, got {self.seed}")

        for name in self.custom_presets:
            if name in builtin_preset_names():
                raise _invalid(f"custom_presets.{name}", "name clashes with a built-in preset")
        presets = dict(DEFAULT_AHP_PRESETS)
        for target, name in self.ahp_presets.items():
            label = str(target).upper()
            if label not in TARGETS:
                raise _invalid(f"ahp_presets.{target}", "unknown target")
            if name not in builtin_preset_names() and name not in self.custom_presets:
                raise create_error(ErrorType.UNKNOWN_PRESET, preset=name)
            presets[label] = name
        object.__setattr__(self, "ahp_presets", presets)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "input": self.input,
            "synth": self.synth.to_dict() if self.synth is not None else None,
            "train_fraction": self.train_fraction,
            "train": self.train.to_dict(),
            "permutation": self.permutation.to_dict(),
            "ahp_presets": {t: self.ahp_presets[t] for t in TARGETS},
            "custom_presets": {name: preset.to_dict() for name, preset in sorted(self.custom_presets.items())},
            "seed": self.seed,
            "out_dir": self.out_dir,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PipelineConfig":
        unknown = sorted(set(data) - set(CONFIG_KEYS))
        if unknown:
            raise _invalid(unknown[0], "unknown field")

        def section(key: str) -> Dict[str, Any]:
            value = data.get(key) or {}
            if not isinstance(value, Mapping):
                raise _invalid(key, "must be an object")
            return dict(value)

        synth = data.get("synth")
        return cls(
            input=data.get("input"),
            synth=SynthSpec.from_dict(section("synth")) if synth is not None else None,
            train_fraction=float(data.get("train_fraction", 0.8)),
            train=TrainConfig.from_dict(section("train")),
            permutation=PermutationConfig.from_dict(section("permutation")),
            ahp_presets=section("ahp_presets") or dict(DEFAULT_AHP_PRESETS),
            custom_presets={
                name: ThresholdPreset.from_dict(name, spec)
                for name, spec in section("custom_presets").items()
            },
            seed=int(data.get("seed", 0)),
            out_dir=data.get("out_dir"),
        )
