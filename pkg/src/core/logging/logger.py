"""Thin Logger wrapper: keyword context as log extras, stage timing, debug dumps."""

import logging
import time
import json
from typing import Dict, Any, Tuple
from contextlib import contextmanager
from .config import setup_logging

# stdlib logging reserves these keys in the extra dict
_RESERVED_KEYS = (
    'args', 'asctime', 'created', 'exc_info', 'exc_text', 'filename',
    'funcName', 'levelname', 'levelno', 'lineno', 'module', 'msecs',
    'msg', 'name', 'pathname', 'process', 'processName',
    'relativeCreated', 'stack_info', 'thread', 'threadName', 'message',
)


class Logger:
    """Project logger. Keyword arguments become LogRecord extras."""

    def __init__(self):
        self._logger = setup_logging()

    def is_debug_enabled(self) -> bool:
        return self._logger.isEnabledFor(logging.DEBUG)

    def _process_kwargs(self, kwargs: Dict[str, Any]) -> Tuple[Dict[str, Any], Any]:
        """Split exc_info off, flatten `extra`, prefix reserved keys with ctx_."""
        exc_info = kwargs.pop('exc_info', None)

        extra_input = kwargs.pop('extra', {})
        if isinstance(extra_input, dict):
            kwargs.update(extra_input)

        for key in _RESERVED_KEYS:
            if key in kwargs:
                kwargs[f"ctx_{key}"] = kwargs.pop(key)

        return kwargs, exc_info

    def _log(self, level: int, message: str, kwargs: Dict[str, Any]) -> None:
        processed_kwargs, exc_info = self._process_kwargs(kwargs)
        self._logger.log(level, message, extra=processed_kwargs or None, exc_info=exc_info or False)

    def info(self, message: str, **kwargs):
        self._log(logging.INFO, message, kwargs)

    def debug(self, message: str, **kwargs):
        self._log(logging.DEBUG, message, kwargs)

    def warning(self, message: str, **kwargs):
        self._log(logging.WARNING, message, kwargs)

    def error(self, message: str, **kwargs):
        self._log(logging.ERROR, message, kwargs)

    def _truncate_large_values(self, data: Any, max_items: int = 50) -> Any:
        """Recursively shorten long lists so matrices and curves stay readable."""
        if isinstance(data, dict):
            return {k: self._truncate_large_values(v, max_items) for k, v in data.items()}
        if isinstance(data, (list, tuple)):
            items = [self._truncate_large_values(i, max_items) for i in data[:max_items]]
            if len(data) > max_items:
                items.append(f"... [truncated, total length: {len(data)}]")
            return items
        return data

    def debug_data(self, title: str, data: Any, **kwargs):
        """Dump a JSON-able payload when LOG_LEVEL=DEBUG."""
        if not self.is_debug_enabled():
            return

        truncated = self._truncate_large_values(data)
        if isinstance(truncated, (dict, list)):
            data_str = json.dumps(truncated, indent=2, ensure_ascii=False, default=str)
        else:
            data_str = str(truncated)

        message = f"DEBUG: {title}"
        if 'component' in kwargs:
            message += f" | component={kwargs['component']}"
        self.debug(f"{message}\n{data_str}", **kwargs)

    @contextmanager
    def stage_context(self, stage: str, **kwargs):
        """Log start, completion with duration, and failure of a pipeline stage."""
        start_time = time.perf_counter()
        label = stage if 'target' not in kwargs else f"{stage} [{kwargs['target']}]"
        self.info(f"Started: {label}", stage=stage, **kwargs)

        try:
            yield
        except Exception as e:
            duration_ms = int((time.perf_counter() - start_time) * 1000)
            self.error(f"{label} failed: {e} | duration={duration_ms}ms", stage=stage, **kwargs)
            raise
        duration_ms = int((time.perf_counter() - start_time) * 1000)
        self.info(f"Completed: {label} | duration={duration_ms}ms", stage=stage, **kwargs)
