"""Feature importance: MDI, permutation importance and their consensus ranking."""

from .base import ImportanceVector, MDI, PERMUTATION
from .mdi import mdi
from .permutation import PermutationConfig, permutation_importance, SCORERS
from .ranking import Ranking, RankedFeature, combined_ranking, IMPORTANCE_CSV_COLUMNS

__all__ = [
    'ImportanceVector', 'MDI', 'PERMUTATION',
    'mdi',
    'PermutationConfig', 'permutation_importance', 'SCORERS',
    'Ranking', 'RankedFeature', 'combined_ranking', 'IMPORTANCE_CSV_COLUMNS',
]
