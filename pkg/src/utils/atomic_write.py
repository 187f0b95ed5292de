"""Staged file output: everything is written to a scratch directory first."""

import os
import shutil
import tempfile
from contextlib import contextmanager
from typing import Iterator

from ..core.error_handling import ErrorType, create_error


@contextmanager
def staged_directory(out_dir: str) -> Iterator[str]:
    """Yield a scratch directory inside out_dir; publish its files on success.

    Each file is moved into out_dir with os.replace. If the body raises,
    the scratch directory is removed and out_dir is left untouched.
    """
    try:
        os.makedirs(out_dir, exist_ok=True)
        staging = tempfile.mkdtemp(prefix=".staging-", dir=out_dir)
    except OSError as e:
        raise create_error(ErrorType.OUTPUT_WRITE_FAILED, original_exception=e,
                           path=out_dir, error_details=str(e))
    try:
        yield staging
        for name in sorted(os.listdir(staging)):
            target = os.path.join(out_dir, name)
            try:
                os.replace(os.path.join(staging, name), target)
            except OSError as e:
                raise create_error(ErrorType.OUTPUT_WRITE_FAILED, original_exception=e,
                                   path=target, error_details=str(e))
    finally:
        shutil.rmtree(staging, ignore_errors=True)
