"""Boosting hyperparameters."""

from dataclasses import dataclass, asdict
from typing import Any, Dict

from ..core.error_handling import ErrorType, create_error


def _invalid(field_name: str, details: str):
    return create_error(ErrorType.INVALID_CONFIG, field_name=f"train.{field_name}", error_details=details)


@dataclass(frozen=True)
class TrainConfig:
    """Defaults: 500 stages, learning rate 0.01, depth 4."""

    n_stages: int = 500
    learning_rate: float = 0.01
    max_depth: int = 4
    min_samples_leaf: int = 1
    subsample: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if int(self.n_stages) != self.n_stages or self.n_stages < 1:
            raise _invalid("n_stages", f"must be an integer >= 1, got {self.n_stages}")
        if not 0.0 < self.learning_rate <= 1.0:
            raise _invalid("learning_rate", f"must lie in (0, 1], got {self.learning_rate}")
        if int(self.max_depth) != self.max_depth or self.max_depth < 1:
            raise _invalid("max_depth", f"must be an integer >= 1, got {self.max_depth}")
        if int(self.min_samples_leaf) != self.min_samples_leaf or self.min_samples_leaf < 1:
            raise _invalid("min_samples_leaf", f"must be an integer >= 1, got {self.min_samples_leaf}")
        if not 0.0 < self.subsample <= 1.0:
            raise _invalid("subsample", f"must lie in (0, 1], got {self.subsample}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TrainConfig":
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(data) - known)
        if unknown:
            raise _invalid(unknown[0], "unknown field")
        return cls(**data)
