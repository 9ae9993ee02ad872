"""
Custom Decorators
Timing and resource logging for long-running numerical entry points
"""

from functools import wraps
import time

import psutil


def log_execution_time(f):
    """
    Log execution time and resident memory of a function

    Usage:
        @log_execution_time
        def reconstruct(...):
            ...
    """

    @wraps(f)
    def decorated_function(*args, **kwargs):
        from app.utils.logger import get_logger
        logger = get_logger(f.__module__)

        start_time = time.perf_counter()
        result = f(*args, **kwargs)
        execution_time = time.perf_counter() - start_time

        rss_mb = psutil.Process().memory_info().rss / 1048576
        logger.info(f'{f.__qualname__} executed in {execution_time:.4f} seconds (rss {rss_mb:.1f} MB)')

        return result

    return decorated_function
