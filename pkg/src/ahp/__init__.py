"""Analytic hierarchy process: tiers, pairwise matrices, weights and consistency."""

from .scale import SaatyScale, format_saaty, is_saaty_value
from .tiers import (
    TierAssignment,
    TierPreset,
    BeStylePreset,
    CeEeStylePreset,
    ThresholdPreset,
    BE_STYLE,
    CE_EE_STYLE,
    assign_tiers,
    get_preset,
    builtin_preset_names,
)
from .matrix import (
    PairwiseMatrix,
    RI_TABLE,
    CONSISTENCY_THRESHOLD,
    build_pairwise,
    geometric_mean_weights,
    normalize_weights,
    lambda_max,
    consistency_index,
    consistency_ratio,
    random_index,
)
from .evaluation import AhpResult, evaluate, evaluate_matrix

__all__ = [
    'SaatyScale', 'format_saaty', 'is_saaty_value',
    'TierAssignment', 'TierPreset', 'BeStylePreset', 'CeEeStylePreset', 'ThresholdPreset',
    'BE_STYLE', 'CE_EE_STYLE', 'assign_tiers', 'get_preset', 'builtin_preset_names',
    'PairwiseMatrix', 'RI_TABLE', 'CONSISTENCY_THRESHOLD', 'build_pairwise', 'geometric_mean_weights',
    'normalize_weights', 'lambda_max', 'consistency_index', 'consistency_ratio', 'random_index',
    'AhpResult', 'evaluate', 'evaluate_matrix',
]
