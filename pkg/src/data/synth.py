"""Seeded synthetic survey generator standing in for the private respondent dataset."""

import math
from dataclasses import dataclass, field, fields
from typing import Any, Dict, Tuple

import numpy as np
import pandas as pd

from ..core.error_handling import ErrorType, create_error
from ..core.logging import logger
from .schema import COMPOSITES, DISPLAY_NAMES, MEASURE_COLUMNS, MEASURE_RANGE, RAW_COLUMNS
from .survey import SurveyTable, compute_composites

# reference moments of the 1132-respondent survey
REFERENCE_BL_RATE = 0.4488
REFERENCE_MEANS: Dict[str, float] = {
    "b_act": 4.6693, "b_int": 4.6614, "b_gro": 4.5748,
    "c_mgt": 4.6457, "c_com": 4.4803,
    "e_int": 4.8661, "e_sat": 4.669,
}
REFERENCE_STDS: Dict[str, float] = {
    "b_act": 1.5688, "b_int": 1.5287, "b_gro": 1.6548,
    "c_mgt": 1.7207, "c_com": 1.6755,
    "e_int": 1.7922, "e_sat": 1.7820,
}
REFERENCE_FEMALE_RATE = 0.693
# under 18 / 18-21 / 22-25 / 26 and over
REFERENCE_AGE_BANDS: Tuple[float, ...] = (0.08, 0.60, 0.22, 0.10)

_MIN_DISPERSION = 0.1
# BL shift over composite noise sd above which the BL groups no longer overlap in a composite
SEPARATION_LIMIT = 6.0


def _invalid(field_name: str, details: str):
    return create_error(ErrorType.INVALID_CONFIG, field_name=f"synth.{field_name}", error_details=details)


@dataclass(frozen=True)
class SynthSpec:
    """Generator parameters. Identical specs generate identical tables.

    Each measure is clip(base + bl_effect * bl + noise_scale * dispersion * z, 1, 7)
    with z standard normal, drawn independently per measure and respondent.
    """

    n_rows: int = 1132
    seed: int = 0
    bl_probability: float = REFERENCE_BL_RATE
    base_means: Dict[str, float] = field(default_factory=lambda: dict(REFERENCE_MEANS))
    dispersions: Dict[str, float] = field(default_factory=lambda: dict(REFERENCE_STDS))
    bl_effect: float = 0.0
    noise_scale: float = 1.0
    gender_female_probability: float = REFERENCE_FEMALE_RATE
    age_band_probabilities: Tuple[float, ...] = REFERENCE_AGE_BANDS

    def __post_init__(self):
        if int(self.n_rows) != self.n_rows or self.n_rows < 1:
            raise _invalid("n_rows", f"must be a positive integer, got {self.n_rows}")
        if not 0.0 < self.bl_probability < 1.0:
            raise _invalid("bl_probability", f"must lie in (0, 1), got {self.bl_probability}")
        if self.bl_effect < 0.0:
            raise _invalid("bl_effect", f"must be >= 0, got {self.bl_effect}")
        if self.noise_scale < 0.0:
            raise _invalid("noise_scale", f"must be >= 0, got {self.noise_scale}")
        if not 0.0 <= self.gender_female_probability <= 1.0:
            raise _invalid("gender_female_probability", f"must lie in [0, 1], got {self.gender_female_probability}")

        low, high = MEASURE_RANGE
        for measure in MEASURE_COLUMNS:
            if measure not in self.base_means or measure not in self.dispersions:
                raise _invalid("base_means", f"missing measure '{measure}'")
            if not low <= self.base_means[measure] <= high:
                raise _invalid("base_means", f"'{measure}' base {self.base_means[measure]} outside [{low:g}, {high:g}]")
            if self.dispersions[measure] < 0.0:
                raise _invalid("dispersions", f"'{measure}' dispersion must be >= 0")

        probs = tuple(float(p) for p in self.age_band_probabilities)
        if len(probs) != 4 or min(probs) < 0.0 or not math.isclose(sum(probs), 1.0, abs_tol=1e-9):
            raise _invalid("age_band_probabilities", "need four non-negative probabilities summing to 1")
        object.__setattr__(self, "age_band_probabilities", probs)

    @classmethod
    def calibrated(cls, n_rows: int = 1132, seed: int = 0, bl_effect: float = 1.0,
                   noise_scale: float = 1.0, bl_probability: float = REFERENCE_BL_RATE) -> "SynthSpec":
        """Spec whose unclipped marginals match the reference means and stds.

        The BL shift is removed from each base mean and the BL-induced
        variance from each dispersion (floored at 0.1).
        """
        bl_variance = bl_effect ** 2 * bl_probability * (1.0 - bl_probability)
        low, high = MEASURE_RANGE
        base_means = {
            m: min(max(REFERENCE_MEANS[m] - bl_effect * bl_probability, low), high)
            for m in MEASURE_COLUMNS
        }
        dispersions = {
            m: math.sqrt(max(REFERENCE_STDS[m] ** 2 - bl_variance, _MIN_DISPERSION ** 2))
            for m in MEASURE_COLUMNS
        }
        return cls(n_rows=n_rows, seed=seed, bl_probability=bl_probability, base_means=base_means,
                   dispersions=dispersions, bl_effect=bl_effect, noise_scale=noise_scale)

    @property
    def composite_separation(self) -> float:
        """Largest BL shift over unclipped composite noise sd, across composites.

        Past SEPARATION_LIMIT a composite threshold reproduces the BL split and
        can replace BL in the fitted trees.
        """
        if self.bl_effect == 0.0:
            return 0.0
        separation = 0.0
        for members in COMPOSITES.values():
            sd = self.noise_scale * math.sqrt(sum(self.dispersions[m] ** 2 for m in members)) / len(members)
            if sd == 0.0:
                return math.inf
            separation = max(separation, self.bl_effect / sd)
        return separation

    def to_dict(self) -> Dict[str, Any]:
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, dict):
                value = {k: float(value[k]) for k in MEASURE_COLUMNS}
            elif isinstance(value, tuple):
                value = list(value)
            out[f.name] = value
        return out

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SynthSpec":
        """Build from a config section.

        With "calibrated": true only n_rows, seed, bl_effect, noise_scale and
        bl_probability may be given; base means and dispersions are derived.
        """
        kwargs = dict(data)
        if kwargs.pop("calibrated", False):
            allowed = {"n_rows", "seed", "bl_effect", "noise_scale", "bl_probability"}
            unknown = sorted(set(kwargs) - allowed)
            if unknown:
                raise _invalid(unknown[0], "not allowed with calibrated: true")
            return cls.calibrated(**kwargs)
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(kwargs) - known)
        if unknown:
            raise _invalid(unknown[0], "unknown field")
        if "age_band_probabilities" in kwargs:
            kwargs["age_band_probabilities"] = tuple(kwargs["age_band_probabilities"])
        return cls(**kwargs)


def synthesize(spec: SynthSpec) -> SurveyTable:
    """Generate a survey table with composites derived; a pure function of spec."""
    rng = np.random.default_rng(spec.seed)
    n = int(spec.n_rows)
    low, high = MEASURE_RANGE

    # INVARIANT: draw order is fixed (gender, age, bl, measures in schema order)
    data: Dict[str, np.ndarray] = {
        "gender": (rng.random(n) < spec.gender_female_probability).astype(np.int64),
        "age_band": rng.choice(4, size=n, p=np.asarray(spec.age_band_probabilities)).astype(np.int64),
        "bl": (rng.random(n) < spec.bl_probability).astype(np.int64),
    }
    shift = spec.bl_effect * data["bl"]
    for measure in MEASURE_COLUMNS:
        noise = spec.noise_scale * spec.dispersions[measure] * rng.standard_normal(n)
        data[measure] = np.clip(spec.base_means[measure] + shift + noise, low, high)

    logger.debug("Synthesized survey table", rows=n, seed=spec.seed, bl_effect=spec.bl_effect)
    if spec.composite_separation > SEPARATION_LIMIT:
        names = ", ".join(DISPLAY_NAMES[c] for c in COMPOSITES)
        logger.warning(f"Composites {names} separate the BL groups; importance may credit a composite for BL",
                       separation=round(spec.composite_separation, 3), limit=SEPARATION_LIMIT)
    frame = pd.DataFrame(data, columns=list(RAW_COLUMNS))
    return compute_composites(SurveyTable(frame=frame, composites_present=False))
