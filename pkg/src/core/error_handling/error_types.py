"""Standardized error types for engage-rank."""

from enum import Enum
from typing import Dict, Any

USAGE_EXIT = 1
DATA_EXIT = 2
CONSISTENCY_EXIT = 3


class ErrorType(Enum):
    """Enumeration of standard error types in the system."""

    # Usage / configuration errors (exit 1)
    USAGE_ERROR = ("usage_error", USAGE_EXIT, "Usage error: {error_details}")
    INVALID_CONFIG = ("invalid_config", USAGE_EXIT, "Invalid configuration field '{field_name}': {error_details}")
    CONFIG_NOT_FOUND = ("config_not_found", USAGE_EXIT, "Configuration file not found: {path}")
    UNKNOWN_PRESET = ("unknown_preset", USAGE_EXIT, "Unknown AHP preset '{preset}'")
    INVALID_SCALE = ("invalid_scale", USAGE_EXIT, "Invalid tier scale {scale_key}: {error_details}")

    # Survey data errors (exit 2)
    INPUT_NOT_FOUND = ("input_not_found", DATA_EXIT, "Input file not found: {path}")
    MALFORMED_CSV = ("malformed_csv", DATA_EXIT, "Cannot read survey CSV: {error_details}")
    MISSING_COLUMN = ("missing_column", DATA_EXIT, "Missing required column '{column}'")
    UNPARSEABLE_CELL = ("unparseable_cell", DATA_EXIT, "Row {row}, column '{column}': cannot parse value '{value}'")
    VALUE_OUT_OF_RANGE = ("value_out_of_range", DATA_EXIT, "Row {row}, column '{column}': value {value} outside {allowed}")
    EMPTY_TABLE = ("empty_table", DATA_EXIT, "Survey table has no rows")
    COMPOSITES_MISSING = ("composites_missing", DATA_EXIT, "Composite scores BE/CE/EE have not been derived")

    # Model errors (exit 2)
    LENGTH_MISMATCH = ("length_mismatch", DATA_EXIT, "Vector lengths differ: {left} vs {right}")
    EMPTY_INPUT = ("empty_input", DATA_EXIT, "Empty input: {error_details}")
    MISSING_FEATURE = ("missing_feature", DATA_EXIT, "Input has {available} features, model needs index {required}")
    UNFITTED_MODEL = ("unfitted_model", DATA_EXIT, "Ensemble has no fitted trees")
    DEGENERATE_SCORER = ("degenerate_scorer", DATA_EXIT, "Scorer r2 undefined for zero-variance targets; use scorer 'neg_mse'")
    FEATURE_SET_MISMATCH = ("feature_set_mismatch", DATA_EXIT, "Feature sets differ: {error_details}")

    # AHP errors
    TOO_FEW_FEATURES = ("too_few_features", DATA_EXIT, "Preset '{preset}' needs at least {required} features, got {available}")
    EMPTY_TIER = ("empty_tier", DATA_EXIT, "Tier {tier} holds no features")
    NON_POSITIVE_ENTRY = ("non_positive_entry", DATA_EXIT, "Pairwise matrix entry ({row}, {col}) is not positive")
    NOT_RECIPROCAL = ("not_reciprocal", DATA_EXIT, "Pairwise matrix entries ({row}, {col}) and ({col}, {row}) are not reciprocal")
    NOT_SQUARE = ("not_square", DATA_EXIT, "Pairwise matrix must be square with one label per row, got shape {shape}")
    ZERO_WEIGHT = ("zero_weight", DATA_EXIT, "Weight vector contains a zero or negative entry")
    MATRIX_TOO_SMALL = ("matrix_too_small", DATA_EXIT, "Consistency index needs n >= 2, got {n}")
    NO_RANDOM_INDEX = ("no_random_index", DATA_EXIT, "No random index tabulated for n = {n}")
    CONSISTENCY_REJECTED = ("consistency_rejected", CONSISTENCY_EXIT, "Pairwise matrix inconsistent: CR = {cr:.4f} >= 0.1")

    # Pipeline errors
    STAGE_FAILED = ("stage_failed", DATA_EXIT, "Stage '{stage}' failed: {error_details}")
    OUTPUT_WRITE_FAILED = ("output_write_failed", DATA_EXIT, "Cannot write '{path}': {error_details}")
    INCOMPLETE_REPORT = ("incomplete_report", DATA_EXIT, "Report lacks targets: {error_details}")

    def __init__(self, code: str, exit_code: int, message_template: str):
        self.code = code
        self.exit_code = exit_code
        self.message_template = message_template

    def format_message(self, **kwargs) -> str:
        """Format the error message with provided parameters."""
        try:
            return self.message_template.format(**kwargs)
        except (KeyError, ValueError):
            return self.message_template

    def create_error_detail(self, **kwargs) -> Dict[str, Any]:
        """Create the error dictionary dumped to the debug log on CLI failures."""
        return {
            "error": {
                "code": self.code,
                "exit_code": self.exit_code,
                "message": self.format_message(**kwargs),
            }
        }
