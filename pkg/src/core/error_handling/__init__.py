"""Centralized error handling: types, exception class and factory function."""

from .error_types import ErrorType, USAGE_EXIT, DATA_EXIT, CONSISTENCY_EXIT
from .error_handler import EngageRankError, create_error

__all__ = ['ErrorType', 'EngageRankError', 'create_error', 'USAGE_EXIT', 'DATA_EXIT', 'CONSISTENCY_EXIT']
