# -*- coding: utf-8 -*-

"""
Ordered fan-out over index blocks. Results always come back in block order,
so the number of workers never changes the output bytes.
"""

import typing as T
from concurrent.futures import ThreadPoolExecutor

from .context import get_n_threads

R = T.TypeVar("R")


def split_blocks(n_items: int, block_size: int) -> T.List[T.Tuple[int, int]]:
    """
    Example::

        >>> split_blocks(10, 4)
        [(0, 4), (4, 8), (8, 10)]
    """
    if block_size <= 0:
        raise ValueError(f"block_size must be positive, got {block_size}")
    return [
        (start, min(start + block_size, n_items))
        for start in range(0, n_items, block_size)
    ]


def map_blocks(
    func: T.Callable[[int, int], R],
    n_items: int,
    block_size: int,
    n_threads: T.Optional[int] = None,
) -> T.List[R]:
    """
    Call ``func(start, stop)`` for every block of ``range(n_items)`` and
    return the results in block order.

    :param n_threads: worker cap, default from ``GREENLEM_THREADS``
    """
    blocks = split_blocks(n_items, block_size)
    if n_threads is None:
        n_threads = get_n_threads()
    if n_threads <= 1 or len(blocks) <= 1:
        return [func(start, stop) for start, stop in blocks]
    with ThreadPoolExecutor(max_workers=min(n_threads, len(blocks))) as pool:
        return list(pool.map(lambda block: func(*block), blocks))
