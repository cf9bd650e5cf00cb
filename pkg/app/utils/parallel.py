"""Order-preserving fan-out of independent per-node work"""
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar
import logging

from app.config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def map_nodes(
    func: Callable[[T], R],
    items: Sequence[T],
    max_workers: Optional[int] = None,
) -> List[R]:
    """
    Apply ``func`` to every item, optionally on a thread pool.

    Results are returned in input order, so the output never depends on the
    worker count.

    Args:
        func: Work unit (must be safe to call concurrently when workers > 1)
        items: Inputs, one per node
        max_workers: Pool size (default: settings.max_workers)

    Returns:
        List of results aligned with ``items``
    """
    workers = settings.max_workers if max_workers is None else max_workers
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    logger.debug(f"Dispatching {len(items)} node evaluations to {workers} workers")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
