"""
Static partitioning of an index space over worker processes
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Tuple, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")

# chunks per worker; more chunks even out uneven subset costs
CHUNKS_PER_WORKER = 4


def partition(total: int, parts: int) -> List[Tuple[int, int]]:
    """Split [0, total) into at most ``parts`` contiguous non-empty ranges."""
    if total <= 0:
        return []
    parts = max(1, min(parts, total))
    size, extra = divmod(total, parts)
    ranges = []
    start = 0
    for i in range(parts):
        stop = start + size + (1 if i < extra else 0)
        ranges.append((start, stop))
        start = stop
    return ranges


def run_partitioned(task: Callable[[int, int], T], total: int, threads: int = 1) -> List[T]:
    """
    Map ``task(start, stop)`` over a partition of [0, total)

    Results come back in range order whatever the schedule, so callers can
    reduce them deterministically. ``task`` must be picklable when
    ``threads > 1``; a single thread runs inline.
    """
    if threads <= 1 or total < 2:
        return [task(start, stop) for start, stop in partition(total, 1)]

    ranges = partition(total, threads * CHUNKS_PER_WORKER)
    logger.debug("running %d chunks over %d workers", len(ranges), threads)
    starts = [start for start, _ in ranges]
    stops = [stop for _, stop in ranges]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(task, starts, stops))
