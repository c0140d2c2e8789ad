# -*- coding: utf-8 -*-

"""
Projective algebra of rational maps on the Riemann sphere.

A rational map ``f = P / Q`` of degree ``d`` is stored as two coefficient
sequences in ascending powers of ``z``. Its canonical homogeneous lift is::

    F(z0, z1) = (z0^d Q(z1 / z0), z0^d P(z1 / z0))

so that ``F_0(1, z) = Q(z)`` and ``F_1(1, z) = P(z)``. A point of the sphere
is a pair ``(z0, z1) != (0, 0)`` with affine coordinate ``z1 / z0``.

Everything in here is a pure function of its inputs.
"""

import math
import typing as T
import dataclasses
from functools import cached_property

import numpy as np
from numpy.polynomial import polynomial as P

from .exc import DegenerateMapError, MapFormatError, RootFindingError
from .logger import logger
from .utils import parse_complex

ROOT_TOL = 1e-12
ROOT_ITERATION_CAP = 500
ROOT_RESTART_EVERY = 100
# iterations a row keeps refining after its residuals first pass, so that
# approximations of a double root close in to within the merge radius
ROOT_SETTLE_ITERATIONS = 8
MERGE_RADIUS = 1e-7
# approximations of an m-fold root spread like eps^(1/m)
CLUSTER_RADIUS = 1e-3
MULTIPLE_POLISH_STEPS = 8
COPRIME_TOL = 1e-12
DEGREE_DROP_TOL = 1e-14

CoefficientsLike = T.Union[T.Sequence[complex], np.ndarray]


def as_coefficients(coeffs: CoefficientsLike) -> np.ndarray:
    """
    Convert ascending coefficients to a 1-D complex array. ``[re, im]``
    pairs are accepted as in the map file format.
    """
    items = []
    for c in coeffs:
        if isinstance(c, (list, tuple)):
            if len(c) != 2:
                raise MapFormatError(f"coefficient pair must be [re, im], got {c!r}")
            items.append(complex(float(c[0]), float(c[1])))
        else:
            items.append(complex(c))
    return np.array(items, dtype=np.complex128)


def trim(coeffs: np.ndarray) -> np.ndarray:
    """
    Drop exactly-zero highest-order coefficients, keep at least one entry.
    """
    nonzero = np.flatnonzero(coeffs != 0)
    if nonzero.size == 0:
        return coeffs[:1].copy() if coeffs.size else np.zeros(1, dtype=np.complex128)
    return coeffs[: nonzero[-1] + 1].copy()


def degree_of(coeffs: np.ndarray) -> int:
    """
    Degree of the polynomial, ``-1`` for the zero polynomial.
    """
    nonzero = np.flatnonzero(coeffs != 0)
    return int(nonzero[-1]) if nonzero.size else -1


# ------------------------------------------------------------------------------
# points of P^1
# ------------------------------------------------------------------------------
@dataclasses.dataclass(frozen=True)
class SpherePoint:
    """
    Homogeneous coordinates ``(z0, z1)`` of a point of the Riemann sphere.

    :param z0: the "denominator" coordinate, ``0`` means infinity
    :param z1: the "numerator" coordinate
    """

    z0: complex = dataclasses.field()
    z1: complex = dataclasses.field()

    def __post_init__(self):
        if self.z0 == 0 and self.z1 == 0:
            raise MapFormatError("(0, 0) is not a point of the projective line")

    @classmethod
    def from_affine(cls, z: complex) -> "SpherePoint":
        return cls(z0=1 + 0j, z1=complex(z))

    @classmethod
    def infinity(cls) -> "SpherePoint":
        return cls(z0=0j, z1=1 + 0j)

    @classmethod
    def parse(cls, text: str) -> "SpherePoint":
        """
        Parse ``"inf"`` or ``"re,im"``.
        """
        if text.strip().lower() in ("inf", "infinity", "oo"):
            return cls.infinity()
        return cls.from_affine(parse_complex(text))

    @property
    def is_infinity(self) -> bool:
        return self.z0 == 0

    @property
    def affine(self) -> complex:
        """
        ``z1 / z0``, raises for the point at infinity.
        """
        if self.is_infinity:
            raise ValueError("the point at infinity has no affine coordinate")
        return self.z1 / self.z0

    def normalized(self) -> "SpherePoint":
        """
        The representative ``(1, z)``, or ``(0, 1)`` for infinity.
        """
        if self.is_infinity:
            return SpherePoint.infinity()
        return SpherePoint.from_affine(self.affine)

    def scaled(self, c: complex) -> "SpherePoint":
        return SpherePoint(z0=c * self.z0, z1=c * self.z1)

    @property
    def norm(self) -> float:
        return math.hypot(abs(self.z0), abs(self.z1))

    def chordal_distance(self, other: "SpherePoint") -> float:
        """
        ``|p ^ q| / (|p| |q|)``, a metric on the sphere bounded by 1.
        """
        return abs(wedge(self, other)) / (self.norm * other.norm)

    def to_json(self) -> T.Union[str, T.List[float]]:
        if self.is_infinity:
            return "inf"
        z = self.affine
        return [z.real, z.imag]


def wedge(p: SpherePoint, q: SpherePoint) -> complex:
    """
    ``p ^ q = z0 w1 - z1 w0``.
    """
    return p.z0 * q.z1 - p.z1 * q.z0


# ------------------------------------------------------------------------------
# rational maps and lifts
# ------------------------------------------------------------------------------
@dataclasses.dataclass(frozen=True)
class RationalMap:
    """
    ``f(z) = numerator(z) / denominator(z)``, ascending powers of ``z``.

    The constructor trims zero highest-order coefficients and rejects
    degenerate input: zero denominator, common root, degree below 2.
    """

    numerator: T.Tuple[complex, ...] = dataclasses.field()
    denominator: T.Tuple[complex, ...] = dataclasses.field()

    def __post_init__(self):
        num = trim(as_coefficients(self.numerator))
        den = trim(as_coefficients(self.denominator))
        object.__setattr__(self, "numerator", tuple(complex(c) for c in num))
        object.__setattr__(self, "denominator", tuple(complex(c) for c in den))
        deg_num, deg_den = degree_of(num), degree_of(den)
        if deg_den < 0:
            raise DegenerateMapError("denominator is identically zero")
        if deg_num < 0:
            raise DegenerateMapError("numerator is identically zero, f is constant")
        if deg_num >= 1 and deg_den >= 1:
            res = poly_resultant(num, den)
            bound = np.linalg.norm(num) ** deg_den * np.linalg.norm(den) ** deg_num
            if abs(res) <= COPRIME_TOL * bound:
                raise DegenerateMapError(
                    f"numerator and denominator share a common root "
                    f"(|R| = {abs(res):.3e}, scale {bound:.3e})"
                )
        if max(deg_num, deg_den) < 2:
            raise DegenerateMapError(
                f"degree must be >= 2, got {max(deg_num, deg_den)}"
            )

    @classmethod
    def new(
        cls,
        numerator: CoefficientsLike,
        denominator: CoefficientsLike = (1,),
    ) -> "RationalMap":
        return cls(
            numerator=tuple(as_coefficients(numerator)),
            denominator=tuple(as_coefficients(denominator)),
        )

    @classmethod
    def polynomial(cls, coeffs: CoefficientsLike) -> "RationalMap":
        return cls.new(coeffs, (1,))

    @property
    def degree(self) -> int:
        return max(len(self.numerator), len(self.denominator)) - 1

    @property
    def is_polynomial(self) -> bool:
        """
        ``F_0(1, z)`` is constant, i.e. ``d0 = 0``.
        """
        return len(self.denominator) == 1

    @cached_property
    def lift(self) -> "HomogeneousLift":
        return canonical_lift(self)

    def to_json(self) -> T.Dict[str, T.List[T.List[float]]]:
        return {
            "numerator": [[c.real, c.imag] for c in self.numerator],
            "denominator": [[c.real, c.imag] for c in self.denominator],
        }


def _homogeneous(coeffs: T.Sequence[complex], z0, z1):
    """
    ``sum_k c_k z0^(d-k) z1^k`` for padded ascending coefficients of length
    ``d + 1``. Multiplications only, so conjugate inputs give conjugate
    outputs bit for bit.
    """
    acc = coeffs[-1] * np.ones_like(z1, dtype=np.complex128)
    power = z0
    for c in coeffs[-2::-1]:
        acc = acc * z1 + c * power
        power = power * z0
    return acc


@dataclasses.dataclass(frozen=True)
class HomogeneousLift:
    """
    A lift ``F = (F_0, F_1)`` of a rational map.

    :param f0_affine: coefficients of ``F_0(1, z)``, padded to length ``d + 1``
    :param f1_affine: coefficients of ``F_1(1, z)``, padded to length ``d + 1``
    :param d: algebraic degree
    :param d0: ``deg F_0(1, z)``
    :param d1: ``deg F_1(1, z)``
    :param a_f: leading coefficient of ``F_0(1, z)``
    :param b_f: leading coefficient of ``F_1(1, z)``
    :param scale: the multiplier ``c`` with ``F = c * canonical lift``
    """

    f0_affine: T.Tuple[complex, ...] = dataclasses.field()
    f1_affine: T.Tuple[complex, ...] = dataclasses.field()
    d: int = dataclasses.field()
    d0: int = dataclasses.field()
    d1: int = dataclasses.field()
    a_f: complex = dataclasses.field()
    b_f: complex = dataclasses.field()
    scale: complex = dataclasses.field(default=1 + 0j)

    def evaluate(self, z0, z1):
        """
        ``F(z0, z1)``, scalars or arrays of the same shape.
        """
        return (
            _homogeneous(self.f0_affine, z0, z1),
            _homogeneous(self.f1_affine, z0, z1),
        )

    @property
    def f0(self) -> np.ndarray:
        """
        Trimmed ``F_0(1, z)`` coefficients.
        """
        return np.array(self.f0_affine[: self.d0 + 1], dtype=np.complex128)

    @property
    def f1(self) -> np.ndarray:
        return np.array(self.f1_affine[: self.d1 + 1], dtype=np.complex128)


def _pad(coeffs: T.Sequence[complex], d: int) -> T.Tuple[complex, ...]:
    return tuple(coeffs) + (0j,) * (d + 1 - len(coeffs))


def canonical_lift(f: RationalMap) -> HomogeneousLift:
    """
    The lift with ``F_0(1, z) = denominator`` and ``F_1(1, z) = numerator``.

    Example: ``f(z) = (z^3 + 1) / z`` lifts to
    ``F = (z0^2 z1, z1^3 + z0^3)`` with ``d0 = 1, d1 = 3``.
    """
    d = f.degree
    d0 = len(f.denominator) - 1
    d1 = len(f.numerator) - 1
    return HomogeneousLift(
        f0_affine=_pad(f.denominator, d),
        f1_affine=_pad(f.numerator, d),
        d=d,
        d0=d0,
        d1=d1,
        a_f=f.denominator[-1],
        b_f=f.numerator[-1],
        scale=1 + 0j,
    )


def scale_lift(F: HomogeneousLift, c: complex) -> HomogeneousLift:
    """
    The lift ``c * F``.
    """
    c = complex(c)
    if c == 0:
        raise DegenerateMapError("a lift can only be scaled by a non-zero constant")
    return dataclasses.replace(
        F,
        f0_affine=tuple(c * x for x in F.f0_affine),
        f1_affine=tuple(c * x for x in F.f1_affine),
        a_f=c * F.a_f,
        b_f=c * F.b_f,
        scale=c * F.scale,
    )


def as_lift(obj: T.Union[RationalMap, HomogeneousLift]) -> HomogeneousLift:
    if isinstance(obj, HomogeneousLift):
        return obj
    return obj.lift


# ------------------------------------------------------------------------------
# polynomial roots
# ------------------------------------------------------------------------------
def _horner_with_derivative(c: np.ndarray, x: np.ndarray):
    """
    Row-wise ``p(x)``, ``p'(x)`` and ``sum |c_k| |x|^k`` for ascending
    coefficient rows ``c`` of shape ``(M, n + 1)`` and points ``(M, n)``.
    """
    p = np.repeat(c[:, -1:], x.shape[1], axis=1)
    dp = np.zeros_like(x)
    ac = np.abs(c)
    ax = np.abs(x)
    scale = np.repeat(ac[:, -1:], x.shape[1], axis=1)
    for k in range(c.shape[1] - 2, -1, -1):
        dp = dp * x + p
        p = p * x + c[:, k : k + 1]
        scale = scale * ax + ac[:, k : k + 1]
    return p, dp, scale


def _initial_guesses(c: np.ndarray, attempt: int) -> np.ndarray:
    """
    Points on a circle of Fujiwara-bound radius, rotated and widened on each
    restart.
    """
    n = c.shape[1] - 1
    k = np.arange(1, n + 1)
    mags = np.abs(c[:, n - k])
    mags[:, -1] = mags[:, -1] / 2
    bound = 2 * np.max(mags ** (1.0 / k), axis=1)
    radius = np.where(bound > 0, bound, 1.0) * (1.0 + 0.1 * attempt)
    angles = 2 * np.pi * np.arange(n) / n + 0.4 + 0.7 * attempt
    return radius[:, None] * np.exp(1j * angles)[None, :]


def _aberth(
    rows: np.ndarray,
    tol: float = ROOT_TOL,
    max_iter: int = ROOT_ITERATION_CAP,
    restart_every: int = ROOT_RESTART_EVERY,
) -> T.Tuple[np.ndarray, np.ndarray]:
    """
    Aberth-Ehrlich simultaneous iteration on every row at once.

    Rows are ascending coefficients with non-zero leading and constant
    terms. A row stops once its residuals have passed the tolerance for
    ``ROOT_SETTLE_ITERATIONS`` iterations in a row or its corrections reach
    rounding level; rows still running every
    ``restart_every`` iterations start over from a perturbed circle.

    :return: roots of shape ``(M, n)`` and the worst relative residual
        ``|p(x)| / sum |c_k| |x|^k`` per row.
    """
    c = rows / rows[:, -1:]
    n = c.shape[1] - 1
    x = _initial_guesses(c, 0)
    active = np.ones(c.shape[0], dtype=bool)
    settled = np.zeros(c.shape[0], dtype=np.int64)
    diagonal = np.eye(n, dtype=bool)[None, :, :]
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for it in range(1, max_iter + 1):
            idx = np.flatnonzero(active)
            if idx.size == 0:
                break
            if it % restart_every == 0:
                attempt = it // restart_every
                logger.debug(
                    "root finder restart %d for %d stagnating rows", attempt, idx.size
                )
                x[idx] = _initial_guesses(c[idx], attempt)
                settled[idx] = 0
            xa = x[idx]
            p, dp, scale = _horner_with_derivative(c[idx], xa)
            ok = np.abs(p) <= tol * scale
            newton = np.where(p == 0, 0, p / dp)
            diff = xa[:, :, None] - xa[:, None, :]
            repulsion = np.where(diagonal, 0, 1 / diff).sum(axis=2)
            step = newton / (1 - newton * repulsion)
            bad = ~np.isfinite(step)
            if bad.any():
                jitter = 1e-3 * (1 + np.abs(xa)) * np.exp(1j * (it + np.arange(n)))
                step = np.where(bad, jitter, step)
            x[idx] = xa - step
            small = np.abs(step) <= 1e-14 * np.maximum(1.0, np.abs(x[idx]))
            settled[idx] = np.where(ok.all(axis=1), settled[idx] + 1, 0)
            done = small.all(axis=1) | (settled[idx] >= ROOT_SETTLE_ITERATIONS)
            active[idx[done]] = False
        p, _, scale = _horner_with_derivative(c, x)
        residual = np.abs(p) / np.where(scale > 0, scale, 1.0)
    return x, residual.max(axis=1)


def _linkage(values: np.ndarray, radius: float) -> T.List[T.List[int]]:
    """
    Single-linkage groups of indices closer than ``radius * max(1, |z|)``,
    in order of first appearance.
    """
    n = len(values)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            r = radius * max(1.0, abs(values[i]), abs(values[j]))
            if abs(values[i] - values[j]) < r:
                parent[find(j)] = find(i)
    groups: T.Dict[int, T.List[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _cluster(
    values: np.ndarray,
    merge_radius: float = MERGE_RADIUS,
) -> T.List[T.Tuple[complex, int]]:
    """
    Groups of :func:`_linkage` as their mean with the group size as
    multiplicity.
    """
    values = np.asarray(values)
    return [
        (complex(np.mean(values[members])), len(members))
        for members in _linkage(values, merge_radius)
    ]


def _polish_multiple(c: np.ndarray, z: complex, m: int) -> complex:
    """
    Newton on ``p^(m-1)``, where an ``m``-fold root of ``p`` is simple.
    """
    q = P.polyder(c, m - 1) if m > 1 else c
    dq = P.polyder(q)
    for _ in range(MULTIPLE_POLISH_STEPS):
        slope = P.polyval(z, dq)
        if slope == 0:
            break
        step = P.polyval(z, q) / slope
        z = z - step
        if abs(step) <= 1e-16 * max(1.0, abs(z)):
            break
    return complex(z)


def _is_multiple_root(c: np.ndarray, z: complex, m: int, tol: float) -> bool:
    """
    ``p, p', ..., p^(m-1)`` all vanish at ``z`` relative to
    ``sum |c_k| |z|^k`` of each derivative.
    """
    q = c
    for _ in range(m):
        scale = P.polyval(abs(z), np.abs(q))
        if abs(P.polyval(z, q)) > tol * max(scale, np.finfo(float).tiny):
            return False
        q = P.polyder(q)
    return True


def _group_roots(
    c: np.ndarray,
    values: np.ndarray,
    tol: float = ROOT_TOL,
    merge_radius: float = MERGE_RADIUS,
) -> T.List[T.Tuple[complex, int]]:
    """
    Approximations of a multiple root spread like ``eps^(1/m)``. Candidates
    within ``CLUSTER_RADIUS`` are polished as one ``m``-fold root and kept
    together when ``p`` and its first ``m - 1`` derivatives vanish there;
    otherwise they fall back to merging within ``merge_radius``.
    """
    values = np.asarray(values)
    result: T.List[T.Tuple[complex, int]] = []
    for members in _linkage(values, CLUSTER_RADIUS):
        m = len(members)
        if m > 1:
            z = _polish_multiple(c, complex(np.mean(values[members])), m)
            if _is_multiple_root(c, z, m, tol):
                result.append((z, m))
                continue
        result.extend(_cluster(values[members], merge_radius))
    return result


def roots(
    coeffs: CoefficientsLike,
    tol: float = ROOT_TOL,
    merge_radius: float = MERGE_RADIUS,
    max_iter: int = ROOT_ITERATION_CAP,
) -> T.List[T.Tuple[complex, int]]:
    """
    Roots with multiplicities of a polynomial given by ascending
    coefficients. Multiplicities sum to the degree.

    Example::

        >>> roots([-4, 0, 1])
        [(2+0j, 1), (-2+0j, 1)]   # order may differ
        >>> roots([0, 0, 1])
        [(0j, 2)]
        >>> roots([-1, 3, -3, 1])
        [((1+0j), 3)]

    :param tol: residual tolerance relative to ``sum |c_k| |z|^k``, also
        used to confirm a multiple root through its derivatives
    :param merge_radius: approximations closer than
        ``merge_radius * max(1, |z|)`` count as one root even when the
        derivative check does not confirm a multiple root
    """
    c = trim(as_coefficients(coeffs))
    n = degree_of(c)
    if n < 1:
        raise RootFindingError(f"cannot find roots of a degree {n} polynomial")
    result: T.List[T.Tuple[complex, int]] = []
    n_zero = int(np.flatnonzero(c != 0)[0])
    if n_zero:
        result.append((0j, n_zero))
        c = c[n_zero:]
    m = len(c) - 1
    if m == 1:
        result.append((complex(-c[0] / c[1]), 1))
    elif m >= 2:
        x, residual = _aberth(c[None, :], tol=tol, max_iter=max_iter)
        if residual[0] > tol:
            raise RootFindingError(
                f"root finder did not converge within {max_iter} iterations, "
                f"best relative residual {residual[0]:.3e}",
                best_residual=float(residual[0]),
            )
        result.extend(_group_roots(c, x[0], tol, merge_radius))
    return result


def roots_many(
    rows: np.ndarray,
    tol: float = ROOT_TOL,
    merge_radius: float = MERGE_RADIUS,
    max_iter: int = ROOT_ITERATION_CAP,
) -> T.List[T.List[T.Tuple[complex, int]]]:
    """
    :func:`roots` for every row of a ``(M, n + 1)`` coefficient matrix. Rows
    with non-zero leading and constant coefficients are iterated together;
    the rest go through :func:`roots` one by one.
    """
    rows = np.asarray(rows, dtype=np.complex128)
    result: T.List[T.Optional[T.List[T.Tuple[complex, int]]]] = [None] * rows.shape[0]
    n = rows.shape[1] - 1
    regular = (rows[:, -1] != 0) & (rows[:, 0] != 0)
    if n >= 2 and regular.any():
        idx = np.flatnonzero(regular)
        x, residual = _aberth(rows[idx], tol=tol, max_iter=max_iter)
        worst = float(residual.max())
        if worst > tol:
            raise RootFindingError(
                f"root finder did not converge within {max_iter} iterations, "
                f"best relative residual {worst:.3e}",
                best_residual=worst,
            )
        mag = np.maximum(1.0, np.abs(x))
        radius = CLUSTER_RADIUS * np.maximum(mag[:, :, None], mag[:, None, :])
        close = np.abs(x[:, :, None] - x[:, None, :]) < radius
        close[:, np.arange(n), np.arange(n)] = False
        has_close = close.any(axis=(1, 2))
        for i, row_roots, clustered in zip(idx, x, has_close):
            if clustered:
                result[i] = _group_roots(rows[i], row_roots, tol, merge_radius)
            else:
                result[i] = [(complex(z), 1) for z in row_roots]
    for i in np.flatnonzero(~regular if n >= 2 else np.ones(rows.shape[0], bool)):
        result[i] = roots(rows[i], tol=tol, merge_radius=merge_radius, max_iter=max_iter)
    return result


# ------------------------------------------------------------------------------
# resultants
# ------------------------------------------------------------------------------
def sylvester_matrix(p: CoefficientsLike, q: CoefficientsLike) -> np.ndarray:
    """
    Sylvester matrix of ``P`` (degree m) and ``Q`` (degree n), both given in
    ascending order: ``n`` shifted rows of ``P`` then ``m`` shifted rows of
    ``Q``, highest power first.
    """
    p = trim(as_coefficients(p))
    q = trim(as_coefficients(q))
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    matrix = np.zeros((size, size), dtype=np.complex128)
    for i in range(n):
        matrix[i, i : i + m + 1] = p[::-1]
    for j in range(m):
        matrix[n + j, j : j + n + 1] = q[::-1]
    return matrix


def poly_resultant(p: CoefficientsLike, q: CoefficientsLike) -> complex:
    """
    ``R(P, Q) = lc(P)^deg(Q) prod Q(roots of P)``, computed as the Sylvester
    determinant (LU with partial pivoting). A constant argument gives
    ``R(c, Q) = c^deg(Q)`` and ``R(P, c) = c^deg(P)``.
    """
    p = trim(as_coefficients(p))
    q = trim(as_coefficients(q))
    m, n = len(p) - 1, len(q) - 1
    if m == 0:
        return complex(p[0] ** n)
    if n == 0:
        return complex(q[0] ** m)
    return complex(np.linalg.det(sylvester_matrix(p, q)))


def resultant(F: T.Union[RationalMap, HomogeneousLift]) -> complex:
    """
    Homogeneous resultant
    ``Res F = a_F^(d - d1) b_F^(d - d0) R(F_0(1, z), F_1(1, z))``.

    A zero result means the lift is degenerate.
    """
    F = as_lift(F)
    return complex(
        F.a_f ** (F.d - F.d1) * F.b_f ** (F.d - F.d0) * poly_resultant(F.f0, F.f1)
    )


# ------------------------------------------------------------------------------
# preimages and fibres
# ------------------------------------------------------------------------------
def apply(f: T.Union[RationalMap, HomogeneousLift], p: SpherePoint) -> SpherePoint:
    """
    ``f(p)`` on the sphere through the lift.
    """
    F = as_lift(f)
    f0, f1 = F.evaluate(p.z0, p.z1)
    f0, f1 = complex(f0), complex(f1)
    if f0 == 0 and f1 == 0:
        raise DegenerateMapError(f"F vanishes at {p}, the lift is degenerate")
    return SpherePoint(z0=f0, z1=f1)


def effective_degree(coeffs: np.ndarray, tol: float = DEGREE_DROP_TOL) -> int:
    """
    Highest index whose coefficient is above ``tol`` times the largest one.
    """
    mags = np.abs(coeffs)
    top = mags.max()
    if top == 0:
        return -1
    return int(np.flatnonzero(mags > tol * top)[-1])


def preimages(
    f: T.Union[RationalMap, HomogeneousLift],
    w: SpherePoint,
    tol: float = ROOT_TOL,
) -> T.List[T.Tuple[SpherePoint, int]]:
    """
    ``f^{-1}(w)`` with multiplicities summing to ``d``.

    Solves ``w0 F_1(1, z) - w1 F_0(1, z) = 0``; when the combination has
    degree ``m < d`` the point at infinity is a preimage of multiplicity
    ``d - m``.
    """
    F = as_lift(f)
    combo = w.z0 * np.array(F.f1_affine) - w.z1 * np.array(F.f0_affine)
    m = effective_degree(combo)
    if m < 0:
        raise DegenerateMapError(f"F_1 and F_0 are proportional, cannot pull back {w}")
    result: T.List[T.Tuple[SpherePoint, int]] = []
    if m >= 1:
        for z, mult in roots(combo[: m + 1], tol=tol):
            result.append((SpherePoint.from_affine(z), mult))
    if m < F.d:
        result.append((SpherePoint.infinity(), F.d - m))
    return result


def fiber(
    f: T.Union[RationalMap, HomogeneousLift],
    target: SpherePoint,
) -> T.List[T.Tuple[T.Tuple[complex, complex], int]]:
    """
    ``F^{-1}(target)`` in ``C^2`` with multiplicity, ``d^2`` points counted.

    Over each preimage ``v`` of ``pi(target)`` (representative ``(1, z)`` or
    ``(0, 1)``) lie the ``d`` vectors ``t v`` with ``t^d F(v) = target``.
    The exact target coordinates are used, e.g. ``(0, 1)`` or ``(1, 0)``.
    """
    F = as_lift(f)
    out: T.List[T.Tuple[T.Tuple[complex, complex], int]] = []
    for point, mult in preimages(F, target):
        v = point.normalized()
        f0, f1 = F.evaluate(v.z0, v.z1)
        f0, f1 = complex(f0), complex(f1)
        if abs(f0) >= abs(f1):
            ratio = target.z0 / f0
        else:
            ratio = target.z1 / f1
        radius = abs(ratio) ** (1.0 / F.d)
        phase = np.angle(ratio)
        for k in range(F.d):
            t = radius * np.exp(1j * (phase + 2 * np.pi * k) / F.d)
            out.append(((complex(t * v.z0), complex(t * v.z1)), mult))
    return out
