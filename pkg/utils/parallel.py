"""
Ordered row-level parallelism.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, Tuple, TypeVar

import config

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(
    fn: Callable[[T], R],
    items: Iterable[T],
    jobs: Optional[int] = None
) -> List[Tuple[Optional[R], Optional[BaseException]]]:
    """
    Apply fn to every item, returning (result, error) pairs in input order.

    Errors are captured per item so callers can truncate at the first failing
    row; output order never depends on the number of workers.
    """
    items = list(items)
    jobs = jobs or config.DEFAULT_JOBS

    def _run(item):
        try:
            return fn(item), None
        except Exception as e:
            return None, e

    if jobs <= 1 or len(items) <= 1:
        return [_run(item) for item in items]

    logger.debug(f"Running {len(items)} rows on {jobs} workers")
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(_run, items))
