# -*- coding: utf-8 -*-
# vim: set ft=python ts=4 sw=4 expandtab:

"""
Worker pool for fanning independent evaluations out across threads.
"""

import concurrent.futures
import logging
import os
from typing import Callable, List, Optional, Sequence, TypeVar

T = TypeVar("T")  # pylint: disable=invalid-name:
R = TypeVar("R")  # pylint: disable=invalid-name:

THREADS_VARIABLE = "RICCI_ROT_THREADS"


def pool_size(threads: Optional[int] = None) -> int:
    """Number of workers: the requested count, capped by RICCI_ROT_THREADS when it is set."""
    size = threads if threads else min(32, (os.cpu_count() or 1) + 4)
    cap = os.environ.get(THREADS_VARIABLE)
    if cap:
        try:
            size = min(size, int(cap))
        except ValueError:
            logging.warning("Ignoring %s=%s, which is not an integer", THREADS_VARIABLE, cap)
    return max(1, size)


def map_ordered(fn: Callable[[T], R], items: Sequence[T], threads: Optional[int] = None) -> List[R]:
    """
    Apply fn to every item on a thread pool, returning results in input order.

    The first exception raised by any call is re-raised once all calls have finished.
    """
    size = pool_size(threads)
    if size == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=size) as executor:
        futures = [executor.submit(fn, item) for item in items]
        concurrent.futures.wait(futures)
    return [future.result() for future in futures]
