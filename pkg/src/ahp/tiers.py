"""Importance tiers and the presets that derive them from a ranking.

A preset turns a Ranking into a TierAssignment: ordered tiers of features
(tier 0 most important) plus the Saaty scale used between each tier pair.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple, Union

from ..core.error_handling import ErrorType, create_error
from ..importance.ranking import Ranking
from .scale import MAX_TIER_SCALE, MIN_TIER_SCALE, SaatyScale

ScaleTable = Mapping[Tuple[int, int], int]

BE_STYLE = "be_style"
CE_EE_STYLE = "ce_ee_style"

BE_STYLE_SCALES: Dict[Tuple[int, int], int] = {(0, 1): 7, (0, 2): 9, (1, 2): 3}
# smallest integer Saaty scales that reproduce the reference CE/EE weight scores
CE_EE_STYLE_SCALES: Dict[Tuple[int, int], int] = {
    (0, 1): 7, (0, 2): 8, (0, 3): 9,
    (1, 2): 2, (1, 3): 3,
    (2, 3): 3,
}


def check_scales(scales: ScaleTable, n_tiers: int) -> Dict[Tuple[int, int], int]:
    """Validate a tier-pair scale table: all pairs i < j present, 2..9.

    A scale never shrinks as two tiers get further apart, in either index.
    Such tables always weight a higher tier above a lower one.
    """
    table: Dict[Tuple[int, int], int] = {}
    for i in range(n_tiers):
        for j in range(i + 1, n_tiers):
            if (i, j) not in scales:
                raise create_error(ErrorType.INVALID_SCALE, scale_key=f"{i}-{j}", error_details="missing")
            value = scales[(i, j)]
            if int(value) != value or not MIN_TIER_SCALE <= value <= MAX_TIER_SCALE:
                raise create_error(ErrorType.INVALID_SCALE, scale_key=f"{i}-{j}",
                                   error_details=f"must be an integer in {MIN_TIER_SCALE}..{MAX_TIER_SCALE}, got {value}")
            table[(i, j)] = int(value)
    extra = sorted(set(scales) - set(table))
    if extra:
        i, j = extra[0]
        raise create_error(ErrorType.INVALID_SCALE, scale_key=f"{i}-{j}", error_details=f"no such tier pair for {n_tiers} tiers")
    for i in range(n_tiers):
        for j in range(i + 2, n_tiers):
            if table[(i, j)] < table[(i, j - 1)]:
                raise create_error(ErrorType.INVALID_SCALE, scale_key=f"{i}-{j}",
                                   error_details=f"must be >= scale {i}-{j - 1} ({table[(i, j - 1)]})")
    for j in range(2, n_tiers):
        for i in range(1, j):
            if table[(i, j)] > table[(i - 1, j)]:
                raise create_error(ErrorType.INVALID_SCALE, scale_key=f"{i}-{j}",
                                   error_details=f"must be <= scale {i - 1}-{j} ({table[(i - 1, j)]})")
    return table


@dataclass(frozen=True)
class TierAssignment:
    tiers: Tuple[Tuple[str, ...], ...]
    scales: Dict[Tuple[int, int], int]
    preset: str = ""

    def __post_init__(self):
        seen = set()
        for tier in self.tiers:
            for name in tier:
                if name in seen:
                    raise create_error(ErrorType.FEATURE_SET_MISMATCH, error_details=f"'{name}' appears in two tiers")
                seen.add(name)
        object.__setattr__(self, "scales", check_scales(self.scales, len(self.tiers)))

    @property
    def n_tiers(self) -> int:
        return len(self.tiers)

    @property
    def features(self) -> Tuple[str, ...]:
        """Features in tier order, ranking order within a tier."""
        return tuple(name for tier in self.tiers for name in tier)

    def tier_of(self, name: str) -> int:
        for index, tier in enumerate(self.tiers):
            if name in tier:
                return index
        raise create_error(ErrorType.FEATURE_SET_MISMATCH, error_details=f"'{name}' is in no tier")

    def scale(self, i: int, j: int) -> float:
        """Comparison of tier i against tier j (reciprocal when i is below j)."""
        if i == j:
            return 1.0
        if i < j:
            return float(self.scales[(i, j)])
        return 1.0 / self.scales[(j, i)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "preset": self.preset,
            "tiers": [list(tier) for tier in self.tiers],
            "scales": {f"{i}-{j}": value for (i, j), value in sorted(self.scales.items())},
            "judgements": {f"{i}-{j}": SaatyScale(value).label for (i, j), value in sorted(self.scales.items())},
        }


class TierPreset(ABC):
    """Rule turning a ranking into tiers."""

    def __init__(self, name: str, scales: ScaleTable, n_tiers: int):
        self.name = name
        self.n_tiers = n_tiers
        self.scales = check_scales(scales, n_tiers)

    @abstractmethod
    def assign(self, ranking: Ranking) -> TierAssignment:
        ...


class BeStylePreset(TierPreset):
    """top-1 | middle block | bottom-1. The middle block may be empty."""

    def __init__(self):
        super().__init__(BE_STYLE, BE_STYLE_SCALES, n_tiers=3)

    def assign(self, ranking: Ranking) -> TierAssignment:
        order = ranking.features
        if len(order) < 2:
            raise create_error(ErrorType.TOO_FEW_FEATURES, preset=self.name, required=2, available=len(order))
        return TierAssignment(
            tiers=((order[0],), tuple(order[1:-1]), (order[-1],)),
            scales=self.scales,
            preset=self.name,
        )


class CeEeStylePreset(TierPreset):
    """top-1 | middle block | Age | Gender.

    Gender is pinned to the bottom tier and Age to the tier above it when
    they are ranked; otherwise those tiers take the ranking's last positions.
    """

    PINNED = ("Age", "Gender")

    def __init__(self):
        super().__init__(CE_EE_STYLE, CE_EE_STYLE_SCALES, n_tiers=4)

    def assign(self, ranking: Ranking) -> TierAssignment:
        order = list(ranking.features)
        if len(order) < self.n_tiers:
            raise create_error(ErrorType.TOO_FEW_FEATURES, preset=self.name, required=self.n_tiers, available=len(order))
        rest = [name for name in order if name not in self.PINNED]
        bottom = []
        for pinned in reversed(self.PINNED):
            bottom.insert(0, pinned if pinned in order else rest.pop())
        return TierAssignment(
            tiers=((rest[0],), tuple(rest[1:]), (bottom[0],), (bottom[1],)),
            scales=self.scales,
            preset=self.name,
        )


class ThresholdPreset(TierPreset):
    """Tiers cut by descending MDI-score thresholds.

    A feature scoring >= thresholds[0] lands in tier 0, one scoring in
    [thresholds[i], thresholds[i-1]) in tier i, the rest in the last tier.
    No thresholds means a single tier.
    """

    def __init__(self, name: str, thresholds: Sequence[float], scales: ScaleTable):
        cuts = tuple(float(t) for t in thresholds)
        if any(a <= b for a, b in zip(cuts, cuts[1:])):
            raise create_error(ErrorType.INVALID_CONFIG, field_name=f"custom_presets.{name}.thresholds",
                               error_details="must be strictly descending")
        self.thresholds = cuts
        super().__init__(name, scales, n_tiers=len(cuts) + 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ThresholdPreset):
            return NotImplemented
        return (self.name, self.thresholds, self.scales) == (other.name, other.thresholds, other.scales)

    __hash__ = None

    def assign(self, ranking: Ranking) -> TierAssignment:
        tiers = [[] for _ in range(self.n_tiers)]
        for entry in ranking:
            if entry.mdi is None:
                raise create_error(ErrorType.USAGE_ERROR,
                                   error_details=f"preset '{self.name}' needs MDI scores; '{entry.name}' has none")
            index = sum(1 for cut in self.thresholds if entry.mdi < cut)
            tiers[index].append(entry.name)
        if len(ranking) < self.n_tiers:
            raise create_error(ErrorType.TOO_FEW_FEATURES, preset=self.name, required=self.n_tiers, available=len(ranking))
        for index, tier in enumerate(tiers):
            if not tier:
                raise create_error(ErrorType.EMPTY_TIER, tier=index)
        return TierAssignment(tiers=tuple(tuple(t) for t in tiers), scales=self.scales, preset=self.name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "thresholds": list(self.thresholds),
            "scales": {f"{i}-{j}": value for (i, j), value in sorted(self.scales.items())},
        }

    @classmethod
    def from_dict(cls, name: str, data: Mapping[str, Any]) -> "ThresholdPreset":
        unknown = sorted(set(data) - {"thresholds", "scales"})
        if unknown:
            raise create_error(ErrorType.INVALID_CONFIG, field_name=f"custom_presets.{name}.{unknown[0]}",
                               error_details="unknown field")
        scales = {}
        for key, value in dict(data.get("scales", {})).items():
            try:
                i, j = (int(part) for part in str(key).split("-"))
            except ValueError:
                raise create_error(ErrorType.INVALID_SCALE, scale_key=key, error_details="key must look like 'i-j'")
            scales[(i, j)] = value
        return cls(name, data.get("thresholds", ()), scales)


_BUILTIN_PRESETS: Dict[str, TierPreset] = {
    BE_STYLE: BeStylePreset(),
    CE_EE_STYLE: CeEeStylePreset(),
}


def builtin_preset_names() -> Tuple[str, ...]:
    return tuple(_BUILTIN_PRESETS)


def get_preset(name: str, custom_presets: Optional[Mapping[str, TierPreset]] = None) -> TierPreset:
    """Look up a preset; built-in names take precedence."""
    if name in _BUILTIN_PRESETS:
        return _BUILTIN_PRESETS[name]
    if custom_presets and name in custom_presets:
        return custom_presets[name]
    raise create_error(ErrorType.UNKNOWN_PRESET, preset=name)


def assign_tiers(
    ranking: Ranking,
    preset: Union[str, TierPreset],
    custom_presets: Optional[Mapping[str, TierPreset]] = None,
) -> TierAssignment:
    if len(ranking) == 0:
        raise create_error(ErrorType.EMPTY_INPUT, error_details="ranking has no features")
    resolved = preset if isinstance(preset, TierPreset) else get_preset(preset, custom_presets)
    return resolved.assign(ranking)
