# -*- coding: utf-8 -*-

"""
Dynamical Green function of a homogeneous lift, by escape rate::

    G^F(p) = lim_k d^-k log ||F^k(p)||

evaluated as the telescoping series over the normalised orbit
``p_0 = p / ||p||``, ``p_(k+1) = F(p_k) / ||F(p_k)||``::

    G^F(p) = log ||p|| + sum_k d^-(k+1) log ||F(p_k)||

Every term satisfies ``|log ||F(u)||| <= B / 2`` on the unit sphere, so after
``K`` terms the remainder is at most ``B / (d^K (d - 1))``, which is the
reported ``err_bound``.
"""

import math
import typing as T
import dataclasses
from functools import lru_cache

import numpy as np

from .algebra import HomogeneousLift, RationalMap, SpherePoint, as_lift
from .logger import logger

DEFAULT_TOL = 1e-10
ITERATION_CAP = 200
GRID_SIZE = 256
TAIL_PADDING = 2.0
STRICT_GRID_CAP = 4096
STRICT_STABILITY = 0.01

LiftLike = T.Union[RationalMap, HomogeneousLift]


@dataclasses.dataclass(frozen=True)
class GreenValue:
    """
    :param value: ``G^F(p)``; an array when evaluated on many points
    :param err_bound: certified bound on the truncation error
    :param steps: number of iterations of ``F`` used
    """

    value: T.Union[float, np.ndarray] = dataclasses.field()
    err_bound: float = dataclasses.field()
    steps: int = dataclasses.field()

    def to_json(self) -> T.Dict[str, T.Any]:
        return {
            "value": float(self.value),
            "err_bound": float(self.err_bound),
            "steps": int(self.steps),
        }


def _grid_max(F: HomogeneousLift, n: int) -> float:
    """
    ``max |log ||F(u)|||`` over ``u = (cos t, sin t e^(ib))`` on an ``n x n``
    grid, ``t`` in ``[0, pi/2]`` and ``b`` in ``[0, 2 pi)``.
    """
    theta = np.linspace(0.0, np.pi / 2, n)
    beta = 2 * np.pi * np.arange(n) / n
    u0 = np.repeat(np.cos(theta), n).astype(np.complex128)
    u1 = np.outer(np.sin(theta), np.exp(1j * beta)).ravel()
    f0, f1 = F.evaluate(u0, u1)
    with np.errstate(divide="ignore"):
        logs = np.log(np.hypot(np.abs(f0), np.abs(f1)))
    return float(np.max(np.abs(logs)))


@lru_cache(maxsize=256)
def tail_constant(F: HomogeneousLift, strict: bool = False) -> float:
    """
    The constant ``B`` of the truncation bound: twice the largest
    ``|log ||F(u)|||`` seen on a grid of the unit sphere.

    :param strict: keep doubling the grid until the grid maximum moves by
        less than 1%.
    """
    n = GRID_SIZE
    sup = _grid_max(F, n)
    if strict:
        while n < STRICT_GRID_CAP:
            n *= 2
            finer = _grid_max(F, n)
            stable = abs(finer - sup) <= STRICT_STABILITY * max(finer, 1e-300)
            sup = max(sup, finer)
            if stable:
                break
    if not math.isfinite(sup):
        # F vanishes somewhere on the sphere, numerically
        raise ValueError("log ||F|| is unbounded on the unit sphere, degenerate lift")
    bound = TAIL_PADDING * sup
    logger.debug("tail constant B = %.6g from a %dx%d grid", bound, n, n)
    return bound


def _error_bound(B: float, d: int, steps: int) -> float:
    return B * math.exp(-steps * math.log(d)) / (d - 1)


def steps_for(B: float, d: int, tol: float) -> int:
    """
    Smallest ``K >= 1`` with ``B / (d^K (d - 1)) <= tol``, not capped.
    """
    if B <= 0:
        return 1
    need = math.log(B / ((d - 1) * tol)) / math.log(d)
    return max(1, math.ceil(need))


def green_many(
    F: LiftLike,
    z0,
    z1,
    tol: float = DEFAULT_TOL,
    steps: T.Optional[int] = None,
    strict: bool = False,
) -> GreenValue:
    """
    ``G^F`` on arrays of homogeneous coordinates (same shape). The value of
    the returned :class:`GreenValue` is an array; ``err_bound`` holds for
    every entry.

    :param steps: force this many iterations instead of choosing from ``tol``
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    F = as_lift(F)
    d = F.d
    B = tail_constant(F, strict)
    if steps is None:
        steps = steps_for(B, d, tol)
        if steps > ITERATION_CAP:
            achieved = _error_bound(B, d, ITERATION_CAP)
            logger.warning(
                "tolerance %.3g not reachable within %d iterations, "
                "achieved bound %.3g",
                tol,
                ITERATION_CAP,
                achieved,
            )
            steps = ITERATION_CAP
    u0 = np.asarray(z0, dtype=np.complex128)
    u1 = np.asarray(z1, dtype=np.complex128)
    norm = np.hypot(np.abs(u0), np.abs(u1))
    if np.any(norm == 0):
        raise ValueError("(0, 0) has no Green function value")
    value = np.log(norm)
    u0 = u0 / norm
    u1 = u1 / norm
    weight = 1.0
    for _ in range(steps):
        weight /= d
        f0, f1 = F.evaluate(u0, u1)
        norm = np.hypot(np.abs(f0), np.abs(f1))
        value = value + weight * np.log(norm)
        u0 = f0 / norm
        u1 = f1 / norm
    return GreenValue(value=value, err_bound=_error_bound(B, d, steps), steps=steps)


def green(
    F: LiftLike,
    p: SpherePoint,
    tol: float = DEFAULT_TOL,
    steps: T.Optional[int] = None,
    strict: bool = False,
) -> GreenValue:
    """
    ``G^F(p)`` for one representative ``p``.

    Example: for ``f = 2 z^2``, ``green(f, SpherePoint.infinity())`` is
    ``log 2``.
    """
    result = green_many(F, p.z0, p.z1, tol=tol, steps=steps, strict=strict)
    return dataclasses.replace(result, value=float(result.value))


def green_affine(
    F: LiftLike,
    z: complex,
    tol: float = DEFAULT_TOL,
    steps: T.Optional[int] = None,
    strict: bool = False,
) -> GreenValue:
    """
    ``G^F(1, z)``.
    """
    return green(F, SpherePoint.from_affine(z), tol=tol, steps=steps, strict=strict)


def green_affine_many(
    F: LiftLike,
    zs,
    tol: float = DEFAULT_TOL,
    strict: bool = False,
) -> GreenValue:
    """
    ``G^F(1, z)`` for an array of ``z``.
    """
    zs = np.asarray(zs, dtype=np.complex128)
    return green_many(F, np.ones_like(zs), zs, tol=tol, strict=strict)


def green_at_infinity(
    F: LiftLike,
    tol: float = DEFAULT_TOL,
    strict: bool = False,
) -> GreenValue:
    """
    ``G^F(0, 1)``.
    """
    return green(F, SpherePoint.infinity(), tol=tol, strict=strict)
