""" Timing helpers for sweeps, oracle runs and root searches """

import functools
import logging
import time
from contextlib import ContextDecorator
from typing import Optional

from entgeom.utils.cast import to_readable_time

logger = logging.getLogger("entgeom")


class Timeit(ContextDecorator):
    """
    Log when a block starts and how long it took; the duration is kept in `elapsed` (seconds)

    >>> with Timeit("Sweeping 200 fields") as t:
    ...     run()
    """

    def __init__(self, comment: Optional[str] = None, verbose: bool = True, level: int = logging.INFO):
        self.comment = comment
        self.verbose = verbose
        self.level = level
        self.start_time = 0.0
        self.elapsed = 0.0

    def __enter__(self):
        if self.verbose and self.comment is not None:
            logger.log(self.level, f"{self.comment}...")
            # flush before the wrapped block starts writing its own output
            for h in logger.handlers:
                h.flush()
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start_time
        if self.verbose:
            logger.log(self.level, f'>>> Finished "{self.comment}" in {to_readable_time(self.elapsed)}')
        return False


def timer(func):
    """Log the runtime of the decorated function at DEBUG level"""

    @functools.wraps(func)
    def wrapper_timer(*args, **kwargs):
        start_time = time.perf_counter()
        value = func(*args, **kwargs)
        logger.debug(f"{func.__name__} took {to_readable_time(time.perf_counter() - start_time)}")
        return value

    return wrapper_timer
