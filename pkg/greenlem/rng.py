# -*- coding: utf-8 -*-

"""
Counter-based random streams. Stream ``i`` of seed ``s`` is a Philox
generator keyed by the 128-bit value ``s | i << 64``, so a sample path draws
the same numbers whichever thread runs it and in whatever order.
"""

import typing as T

import numpy as np

MASK_64 = (1 << 64) - 1


def stream_key(seed: int, index: int) -> int:
    """
    Example::

        >>> hex(stream_key(1, 2))
        '0x20000000000000001'
    """
    if not (0 <= seed <= MASK_64):
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    if not (0 <= index <= MASK_64):
        raise ValueError(f"stream index must be an unsigned 64-bit integer, got {index}")
    return seed | (index << 64)


def stream(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=stream_key(seed, index)))


def uniforms(seed: int, index: int, n: int) -> np.ndarray:
    """
    ``n`` doubles in ``[0, 1)`` from stream ``index``.
    """
    return stream(seed, index).random(n)


def uniforms_many(seed: int, indices: T.Iterable[int], n: int) -> np.ndarray:
    """
    A ``(len(indices), n)`` array, row ``r`` drawn from stream ``indices[r]``.
    """
    return np.stack([uniforms(seed, i, n) for i in indices])
