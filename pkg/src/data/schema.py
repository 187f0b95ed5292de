"""Survey column schema, display names, composite definitions and per-target feature views."""

from typing import Dict, Tuple

from ..core.error_handling import ErrorType, create_error

DEMOGRAPHIC_COLUMNS: Tuple[str, ...] = ("gender", "age_band", "bl")
MEASURE_COLUMNS: Tuple[str, ...] = ("b_act", "b_int", "b_gro", "c_mgt", "c_com", "e_int", "e_sat")
RAW_COLUMNS: Tuple[str, ...] = DEMOGRAPHIC_COLUMNS + MEASURE_COLUMNS

# composite column -> constituent measures
COMPOSITES: Dict[str, Tuple[str, ...]] = {
    "be": ("b_act", "b_int", "b_gro"),
    "ce": ("c_mgt", "c_com"),
    "ee": ("e_int", "e_sat"),
}
COMPOSITE_COLUMNS: Tuple[str, ...] = tuple(COMPOSITES)

# allowed values: categorical columns list their codes, measures give an inclusive range
CATEGORY_CODES: Dict[str, Tuple[int, ...]] = {
    "gender": (0, 1),
    "age_band": (0, 1, 2, 3),
    "bl": (0, 1),
}
MEASURE_RANGE: Tuple[float, float] = (1.0, 7.0)

DISPLAY_NAMES: Dict[str, str] = {
    "gender": "Gender",
    "age_band": "Age",
    "bl": "BL",
    "b_act": "B-Act",
    "b_int": "B-Int",
    "b_gro": "B-Gro",
    "c_mgt": "C-Mgt",
    "c_com": "C-Com",
    "e_int": "E-Int",
    "e_sat": "E-Sat",
    "be": "BE",
    "ce": "CE",
    "ee": "EE",
}
COLUMN_BY_DISPLAY: Dict[str, str] = {v: k for k, v in DISPLAY_NAMES.items()}

TARGETS: Tuple[str, ...] = ("BE", "CE", "EE")

# INVARIANT: feature-list order; importance ties resolve toward the earlier feature
TARGET_FEATURES: Dict[str, Tuple[str, ...]] = {
    "CE": ("gender", "age_band", "bl", "b_act", "b_int", "b_gro", "e_int", "e_sat", "be", "ee"),
    "BE": ("gender", "age_band", "bl", "c_mgt", "c_com", "e_int", "e_sat", "ce", "ee"),
    "EE": ("gender", "age_band", "bl", "b_act", "b_int", "b_gro", "c_mgt", "c_com", "be", "ce"),
}

COMPOSITE_DISPLAY_NAMES: Tuple[str, ...] = tuple(DISPLAY_NAMES[c] for c in COMPOSITE_COLUMNS)

# column order of the evaluation matrix (weights table) report
EVALUATION_FEATURES: Tuple[str, ...] = (
    "BL", "B-Act", "B-Int", "B-Gro", "C-Mgt", "C-Com", "E-Int", "E-Sat", "Gender", "Age",
)


def normalize_target(target: str) -> str:
    """Map 'be' / 'BE' to the canonical upper-case target label."""
    label = str(target).upper()
    if label not in TARGETS:
        raise create_error(ErrorType.USAGE_ERROR, error_details=f"unknown target '{target}'")
    return label
