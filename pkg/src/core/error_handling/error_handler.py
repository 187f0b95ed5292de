"""Single factory for standardized engage-rank exceptions with logging."""

import logging
from typing import Optional, Dict, Any

from .error_types import ErrorType

_logger = logging.getLogger("engage-rank")

_LOGGED_CONTEXT_KEYS = ("stage", "target", "column", "row", "path", "preset", "field_name")


class EngageRankError(Exception):
    """Error raised by every engage-rank operation.

    Carries the ErrorType, the formatting context and the process exit code.
    """

    def __init__(
        self,
        error_type: ErrorType,
        message: str,
        context: Dict[str, Any],
        original_exception: Optional[Exception] = None,
    ):
        super().__init__(message)
        self.error_type = error_type
        self.message = message
        self.context = context
        self.original_exception = original_exception

    @property
    def exit_code(self) -> int:
        # INVARIANT: a wrapped stage failure exits with its cause's code
        if self.error_type is ErrorType.STAGE_FAILED and isinstance(self.original_exception, EngageRankError):
            return self.original_exception.exit_code
        return self.error_type.exit_code

    def to_dict(self) -> Dict[str, Any]:
        detail = self.error_type.create_error_detail(**self.context)
        detail["error"]["exit_code"] = self.exit_code
        return detail


def create_error(
    error_type: ErrorType,
    original_exception: Optional[Exception] = None,
    **context
) -> EngageRankError:
    """Create a standardized EngageRankError with logging.

    Context fields (stage, target, column, row, ...) are used both for
    message formatting and as log extras. The caller raises the result.
    """
    message = error_type.format_message(**context)

    log_extra = {"log_type": "error", "error_type": error_type.code}
    for key in _LOGGED_CONTEXT_KEYS:
        if context.get(key) is not None:
            log_extra[key] = context[key]

    if original_exception:
        log_extra["original_exception"] = str(original_exception)
        log_extra["original_exception_type"] = type(original_exception).__name__
        _logger.error(message, extra=log_extra, exc_info=True)
    else:
        _logger.error(message, extra=log_extra)

    return EngageRankError(error_type, message, dict(context), original_exception)
