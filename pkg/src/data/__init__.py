"""Survey data: ingestion, composites, statistics, splits, regression views and synthetic tables."""

from .schema import TARGETS, TARGET_FEATURES, DISPLAY_NAMES, RAW_COLUMNS, MEASURE_COLUMNS, normalize_target
from .survey import (
    SurveyRecord,
    SurveyTable,
    RegressionProblem,
    parse_survey_csv,
    load_survey,
    write_survey_csv,
    compute_composites,
    split,
    make_target_view,
    make_target_views,
)
from .stats import ColumnStats, StatsTable, column_stats, descriptive_stats
from .synth import SynthSpec, synthesize

__all__ = [
    'TARGETS', 'TARGET_FEATURES', 'DISPLAY_NAMES', 'RAW_COLUMNS', 'MEASURE_COLUMNS', 'normalize_target',
    'SurveyRecord', 'SurveyTable', 'RegressionProblem',
    'parse_survey_csv', 'load_survey', 'write_survey_csv', 'compute_composites', 'split',
    'make_target_view', 'make_target_views',
    'ColumnStats', 'StatsTable', 'column_stats', 'descriptive_stats',
    'SynthSpec', 'synthesize',
]
