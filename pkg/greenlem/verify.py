# -*- coding: utf-8 -*-

"""
Numerical checks of the identities that tie the Green function, the
balanced measure and the homogeneous resultant together.

Every ``check_*`` function returns a :class:`VerificationReport` (or a list of
them) with ``passed = residual <= tolerance``. Sampled checks take an
optional pre-computed measure so a suite can share one sample.
"""

import math
import typing as T
import dataclasses
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .algebra import (
    HomogeneousLift,
    RationalMap,
    SpherePoint,
    apply,
    fiber,
    preimages,
    resultant,
    scale_lift,
)
from .context import get_n_threads
from .exc import NotPolynomialError
from .green import green_affine_many, green_at_infinity, green_many
from .logger import logger
from .measure import (
    BURN_IN,
    DEFAULT_COUNT,
    DiscreteMeasure,
    energy,
    is_exceptional,
    phi_kernel,
    potential_many,
    pullback,
    pushforward,
    sample,
    sample_tree,
    sample_walk,
    v_constant,
    weighted_potential_many,
)
from .rng import uniforms
from .utils import sha256_of_json

SAMPLED_TOL = 0.05
IDENTITY_TOL = 1e-8
GREEN_IDENTITY_TOL = 1e-9
GREEN_SCALING_TOL = 1e-12
BROLIN_TOL = 1e-10
PRODUCT_TOL = 1e-6
BALANCED_TOL = 1e-8
STRICT_GREEN_TOL = 1e-13
CHECK_GREEN_TOL = 1e-12
LOW_THRESHOLD = 0.02
HIGH_THRESHOLD = 0.2
DEFAULT_DEPTH = 12
POLE_RADIUS = 1e-9
BALANCED_ATOM_LIMIT = 1024
LIFT_SCALES = 8

# stream indices of probe generators, far above any walk chain index
PROBE_STREAM = 1 << 32

POLYNOMIAL_CONSISTENT = "polynomial-consistent"
NON_POLYNOMIAL = "non-polynomial"
INCONCLUSIVE = "inconclusive"


@dataclasses.dataclass(frozen=True)
class VerificationReport:
    """
    :param identity: short name, e.g. ``"decomp"``
    :param residual: the measured violation of the identity
    :param tolerance: largest residual that still passes
    :param passed: ``residual <= tolerance``, ``False`` for a NaN residual
    :param inputs_digest: sha256 of the inputs (map, seed, sample sizes)
    :param details: identity specific numbers, JSON compatible
    """

    identity: str = dataclasses.field()
    residual: float = dataclasses.field()
    tolerance: float = dataclasses.field()
    passed: bool = dataclasses.field()
    inputs_digest: str = dataclasses.field()
    details: T.Dict[str, T.Any] = dataclasses.field(default_factory=dict)

    @classmethod
    def new(
        cls,
        identity: str,
        residual: float,
        tolerance: float,
        inputs: T.Dict[str, T.Any],
        details: T.Optional[T.Dict[str, T.Any]] = None,
    ) -> "VerificationReport":
        residual = float(residual)
        report = cls(
            identity=identity,
            residual=residual,
            tolerance=float(tolerance),
            passed=bool(residual <= tolerance),
            inputs_digest=sha256_of_json(inputs),
            details=dict(details or {}),
        )
        logger.info(
            "%s: residual %.3e, tolerance %.1e, %s",
            identity,
            residual,
            tolerance,
            "pass" if report.passed else "FAIL",
        )
        return report

    def to_json(self) -> T.Dict[str, T.Any]:
        return {
            "identity": self.identity,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "inputs_digest": self.inputs_digest,
            "details": self.details,
        }


@dataclasses.dataclass(frozen=True)
class LemniscateStat:
    """
    :param level: ``exp((d - 1)(I + G^F(0, 1)))`` with the closed-form ``I``
    :param deviation: ``max |log|F_0(1, z)| - log level|`` over the sample
    :param n_samples: number of finite atoms looked at
    """

    level: float = dataclasses.field()
    deviation: float = dataclasses.field()
    n_samples: int = dataclasses.field()

    def to_json(self) -> T.Dict[str, T.Any]:
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True)
class Discrimination:
    classification: str = dataclasses.field()
    stat: LemniscateStat = dataclasses.field()
    is_polynomial: bool = dataclasses.field()

    @property
    def agrees(self) -> bool:
        """
        The statistic agrees with the syntactic test ``d0 = 0``.
        """
        if self.is_polynomial:
            return self.classification == POLYNOMIAL_CONSISTENT
        return self.classification == NON_POLYNOMIAL

    def to_json(self) -> T.Dict[str, T.Any]:
        return {
            "classification": self.classification,
            "is_polynomial": self.is_polynomial,
            **self.stat.to_json(),
        }


# ------------------------------------------------------------------------------
# probes and samples
# ------------------------------------------------------------------------------
def random_disk(seed: int, index: int, n: int, radius: float) -> np.ndarray:
    """
    ``n`` points uniformly distributed in the disk ``|z| < radius``.
    """
    u = uniforms(seed, PROBE_STREAM + index, 2 * n)
    return radius * np.sqrt(u[:n]) * np.exp(2j * np.pi * u[n:])


def random_vectors(seed: int, index: int, n: int, radius: float = 2.0):
    """
    ``n`` vectors of ``C^2`` with both coordinates uniform in a disk.
    """
    z0 = random_disk(seed, 2 * index, n, radius)
    z1 = random_disk(seed, 2 * index + 1, n, radius)
    return z0, z1


def circle(n: int, radius: float, offset: float = 0.0) -> np.ndarray:
    return radius * np.exp(2j * np.pi * (np.arange(n) + offset) / n)


def _forward_orbit_of_infinity(f: RationalMap, n: int = 64) -> T.List[SpherePoint]:
    orbit = []
    p = SpherePoint.infinity()
    for _ in range(n):
        p = apply(f, p).normalized()
        orbit.append(p)
    return orbit


def pick_base_point(f: RationalMap) -> SpherePoint:
    """
    First candidate that is neither exceptional nor on the forward orbit of
    infinity, so no preimage tree ever reaches infinity.
    """
    orbit = _forward_orbit_of_infinity(f)
    for z in (10.0, 10.5 + 3.1j, 2.3 - 7.7j, 0.37 + 0.61j, -5.2 + 0.9j):
        a = SpherePoint.from_affine(z)
        if any(a.chordal_distance(q) < 1e-6 for q in orbit):
            continue
        if not is_exceptional(f, a):
            return a
    raise ValueError("no usable base point among the candidates")


def balanced_sample(
    f: RationalMap,
    depth: int = DEFAULT_DEPTH,
    count: int = DEFAULT_COUNT,
    seed: int = 0,
    method: str = "auto",
    base: T.Optional[SpherePoint] = None,
) -> DiscreteMeasure:
    """
    A sample of the balanced measure from the default base point.
    """
    if base is None:
        base = pick_base_point(f)
    return sample(f, base, method=method, depth=depth, count=count, seed=seed)


def _inputs(f: RationalMap, mu: T.Optional[DiscreteMeasure] = None, **kwargs):
    data = {"map": f.to_json()}
    if mu is not None:
        data["seed"] = mu.seed
        data["sample"] = dict(mu.provenance, size=mu.size)
    data.update(kwargs)
    return data


def _pole_mask(f: RationalMap, zs: np.ndarray) -> np.ndarray:
    """
    ``True`` for probes within ``1e-9`` of a pole of ``f``.
    """
    mask = np.zeros(zs.shape, dtype=bool)
    for p, _ in preimages(f, SpherePoint.infinity()):
        if not p.is_infinity:
            mask |= np.abs(zs - p.affine) < POLE_RADIUS * max(1.0, abs(p.affine))
    return mask


# ------------------------------------------------------------------------------
# sampled identities
# ------------------------------------------------------------------------------
def check_decomp(
    f: RationalMap,
    probes=None,
    depth: int = DEFAULT_DEPTH,
    count: int = DEFAULT_COUNT,
    seed: int = 0,
    tol: float = SAMPLED_TOL,
    mu: T.Optional[DiscreteMeasure] = None,
) -> VerificationReport:
    """
    ``p_mu(z) = G^F(1, z) - G^F(0, 1)`` with ``mu`` a balanced-measure
    sample. Residual is the largest difference over the probes, 100 points
    on ``|z| = 3`` by default.
    """
    if mu is None:
        mu = balanced_sample(f, depth=depth, count=count, seed=seed)
    if probes is None:
        probes = circle(100, 3.0, offset=0.25)
    probes = np.asarray(probes, dtype=np.complex128)
    sampled, skipped = potential_many(mu, probes)
    g_inf = green_at_infinity(f).value
    exact = green_affine_many(f, probes).value - g_inf
    diffs = np.abs(sampled - exact)
    return VerificationReport.new(
        "decomp",
        diffs.max(),
        tol,
        _inputs(f, mu, n_probes=int(probes.size)),
        {"n_atoms": mu.size, "skipped_atoms": int(skipped.sum())},
    )


def energy_formula(f: T.Union[RationalMap, HomogeneousLift]) -> float:
    """
    ``log|Res F| / (d (d - 1)) - 2 G^F(0, 1)``, the closed form of the
    energy of the balanced measure.
    """
    F = f if isinstance(f, HomogeneousLift) else f.lift
    g_inf = green_at_infinity(F, tol=STRICT_GREEN_TOL).value
    return math.log(abs(resultant(F))) / (F.d * (F.d - 1)) - 2 * g_inf


def check_energy(
    f: RationalMap,
    count: int = DEFAULT_COUNT,
    seed: int = 0,
    tol: float = SAMPLED_TOL,
    mu: T.Optional[DiscreteMeasure] = None,
    burn_in: int = BURN_IN,
) -> VerificationReport:
    """
    Sampled energy against the closed form; a walk of ``count`` points by
    default.
    """
    if mu is None:
        mu = sample_walk(f, pick_base_point(f), count, burn_in=burn_in, seed=seed)
    estimate = energy(mu)
    formula = energy_formula(f)
    return VerificationReport.new(
        "energy",
        abs(estimate.value - formula),
        tol,
        _inputs(f, mu),
        {
            "sampled": estimate.value,
            "formula": formula,
            "pairs_used": estimate.pairs_used,
            "pairs_skipped": estimate.pairs_skipped,
        },
    )


def check_vconstant(
    f: RationalMap,
    probes: T.Optional[T.Sequence[SpherePoint]] = None,
    depth: int = DEFAULT_DEPTH,
    count: int = DEFAULT_COUNT,
    seed: int = 0,
    tol: float = SAMPLED_TOL,
    mu: T.Optional[DiscreteMeasure] = None,
) -> VerificationReport:
    """
    ``U_{F, mu}`` is constant and equal to ``V_F``; the residual is the
    larger of its spread (standard deviation) and ``|mean - V_F|``.
    """
    if mu is None:
        mu = balanced_sample(f, depth=depth, count=count, seed=seed)
    if probes is None:
        zs = np.concatenate([circle(25, 2.5, 0.1), circle(25, 4.0, 0.6)])
        probes = [SpherePoint.from_affine(z) for z in zs]
    values, skipped = weighted_potential_many(f, mu, probes)
    expected = v_constant(f)
    spread = float(np.std(values))
    offset = abs(float(np.mean(values)) - expected)
    return VerificationReport.new(
        "vconstant",
        max(spread, offset),
        tol,
        _inputs(f, mu, n_probes=len(probes)),
        {
            "mean": float(np.mean(values)),
            "std": spread,
            "v_constant": expected,
            "skipped_atoms": int(skipped.sum()),
        },
    )


def check_laplacian(
    f: RationalMap,
    center: complex = 0j,
    radii: T.Tuple[float, float] = (0.5, 3.0),
    n_circle: int = 512,
    depth: int = DEFAULT_DEPTH,
    count: int = DEFAULT_COUNT,
    seed: int = 0,
    tol: float = SAMPLED_TOL,
    mu: T.Optional[DiscreteMeasure] = None,
) -> VerificationReport:
    """
    ``dd^c G^F(1, .) = mu_f - delta_inf`` through circle means: the mean
    ``M(R)`` of ``G^F(1, .)`` over ``|z - c| = R`` is convex in ``log R`` with
    slope ``mu_f(D(c, R))``, so the secant slope between ``R1 < R2`` lies in
    ``[mu(D_R1), mu(D_R2)]``.
    """
    if mu is None:
        mu = balanced_sample(f, depth=depth, count=count, seed=seed)
    r1, r2 = radii
    if not (0 < r1 < r2):
        raise ValueError(f"radii must satisfy 0 < R1 < R2, got {radii}")
    means = [
        float(np.mean(green_affine_many(f, center + circle(n_circle, r, 0.5)).value))
        for r in (r1, r2)
    ]
    slope = (means[1] - means[0]) / (math.log(r2) - math.log(r1))
    dist = np.abs(mu.affine - center)
    mass_1 = math.fsum(mu.weights[dist < r1])
    mass_2 = math.fsum(mu.weights[dist < r2])
    residual = max(0.0, mass_1 - slope, slope - mass_2)
    return VerificationReport.new(
        "laplacian",
        residual,
        tol,
        _inputs(f, mu, center=[center.real, center.imag], radii=list(radii)),
        {"slope": slope, "mass_inner": mass_1, "mass_outer": mass_2},
    )


# ------------------------------------------------------------------------------
# deterministic identities
# ------------------------------------------------------------------------------
def check_pullback(
    f: RationalMap,
    probes=None,
    n_probes: int = 1000,
    seed: int = 0,
    tol: float = IDENTITY_TOL,
) -> VerificationReport:
    """
    ``p(f(z)) = d p(z) - log|F_0(1, z)| + (d - 1) G^F(0, 1)`` with the
    Green-based potential ``p(z) = G^F(1, z) - G^F(0, 1)``. Probes at poles
    are skipped.
    """
    F = f.lift
    d = F.d
    if probes is None:
        probes = random_disk(seed, 1, n_probes, 3.0)
    zs = np.asarray(probes, dtype=np.complex128)
    poles = _pole_mask(f, zs)
    zs = zs[~poles]
    g_inf = green_at_infinity(F, tol=CHECK_GREEN_TOL).value
    f0, f1 = F.evaluate(np.ones_like(zs), zs)
    fz = f1 / f0
    lhs = green_affine_many(F, fz, tol=CHECK_GREEN_TOL).value - g_inf
    pz = green_affine_many(F, zs, tol=CHECK_GREEN_TOL).value - g_inf
    rhs = d * pz - np.log(np.abs(f0)) + (d - 1) * g_inf
    diffs = np.abs(lhs - rhs)
    residual = float(diffs.max()) if diffs.size else 0.0
    if poles.any():
        logger.info("pullback: skipped %d probes at poles", int(poles.sum()))
    return VerificationReport.new(
        "pullback",
        residual,
        tol,
        _inputs(f, seed=seed, n_probes=int(poles.size)),
        {"skipped_probes": int(poles.sum())},
    )


def check_kernel_pullback(
    f: RationalMap,
    probes=None,
    n_probes: int = 200,
    seed: int = 0,
    tol: float = IDENTITY_TOL,
) -> VerificationReport:
    """
    ``Phi_F(f(z), inf) = log|Res F| / d + sum over w in f^{-1}(inf) of
    m_w Phi_F(z, w)``.
    """
    F = f.lift
    if probes is None:
        probes = random_disk(seed, 2, n_probes, 3.0)
    zs = np.asarray(probes, dtype=np.complex128)
    poles = _pole_mask(f, zs)
    fibre = preimages(F, SpherePoint.infinity())
    log_res = math.log(abs(resultant(F))) / F.d
    inf = SpherePoint.infinity()
    diffs = []
    for z in zs[~poles]:
        p = SpherePoint.from_affine(z)
        lhs = phi_kernel(F, apply(F, p), inf, tol=CHECK_GREEN_TOL)
        rhs = log_res + math.fsum(
            m * phi_kernel(F, p, w, tol=CHECK_GREEN_TOL) for w, m in fibre
        )
        diffs.append(abs(lhs - rhs))
    return VerificationReport.new(
        "kernel-pullback",
        max(diffs) if diffs else 0.0,
        tol,
        _inputs(f, seed=seed, n_probes=int(poles.size)),
        {"skipped_probes": int(poles.sum())},
    )


def check_green_identities(
    f: RationalMap,
    n_points: int = 500,
    seed: int = 0,
) -> T.List[VerificationReport]:
    """
    ``G(F(p)) = d G(p)``, ``G(c p) = G(p) + log|c|`` and
    ``G^{cF}(p) = G^F(p) + log|c| / (d - 1)`` at random points. Each residual
    is the excess over the combined certified bounds.
    """
    F = f.lift
    d = F.d
    p0, p1 = random_vectors(seed, 3, n_points)
    c = random_disk(seed, 20, n_points, 3.0) + 0.1
    inputs = _inputs(f, seed=seed, n_points=n_points)

    g_p = green_many(F, p0, p1)
    f0, f1 = F.evaluate(p0, p1)
    g_fp = green_many(F, f0, f1)
    excess = np.abs(g_fp.value - d * g_p.value) - (g_fp.err_bound + d * g_p.err_bound)
    invariance = VerificationReport.new(
        "green-invariance",
        max(0.0, float(excess.max())),
        GREEN_IDENTITY_TOL,
        inputs,
        {"err_bound": g_p.err_bound, "n_points": n_points},
    )

    g_cp = green_many(F, c * p0, c * p1)
    excess = np.abs(g_cp.value - g_p.value - np.log(np.abs(c))) - (
        g_cp.err_bound + g_p.err_bound
    )
    scaling = VerificationReport.new(
        "green-scaling",
        max(0.0, float(excess.max())),
        GREEN_SCALING_TOL,
        inputs,
        {"n_points": n_points},
    )

    # one lift per scale, each scale covering every LIFT_SCALES-th point
    scales = random_disk(seed, 21, LIFT_SCALES, 3.0) + 0.1
    excess = np.empty(n_points)
    for k, c_k in enumerate(scales):
        idx = np.arange(k, n_points, LIFT_SCALES)
        if idx.size == 0:
            continue
        g_c = green_many(scale_lift(F, c_k), p0[idx], p1[idx])
        diff = np.abs(g_c.value - g_p.value[idx] - math.log(abs(c_k)) / (d - 1))
        excess[idx] = diff - (g_c.err_bound + g_p.err_bound)
    lift_change = VerificationReport.new(
        "green-lift-change",
        max(0.0, float(excess.max())),
        GREEN_IDENTITY_TOL,
        inputs,
        {"n_points": n_points, "n_scales": int(min(LIFT_SCALES, n_points))},
    )
    return [invariance, scaling, lift_change]


def brolin_capacity(f: RationalMap) -> float:
    """
    ``|b_F / a_F|^(-1 / (d - 1))``, the capacity of the Julia set of a
    polynomial.
    """
    if not f.is_polynomial:
        raise NotPolynomialError("Brolin's formula needs a polynomial map")
    F = f.lift
    return abs(F.b_f / F.a_f) ** (-1.0 / (F.d - 1))


def check_brolin(f: RationalMap, tol: float = BROLIN_TOL) -> VerificationReport:
    """
    Three closed forms of ``e^I`` for a polynomial: through the resultant and
    ``G^F(0, 1)``, ``|a_F / b_F|^(1 / (d - 1))`` and Brolin's capacity.
    """
    if not f.is_polynomial:
        raise NotPolynomialError("check_brolin needs a polynomial map")
    F = f.lift
    via_resultant = math.exp(energy_formula(F))
    via_leading = abs(F.a_f / F.b_f) ** (1.0 / (F.d - 1))
    via_brolin = brolin_capacity(f)
    values = [via_resultant, via_leading, via_brolin]
    residual = (max(values) - min(values)) / max(values)
    return VerificationReport.new(
        "brolin",
        residual,
        tol,
        _inputs(f),
        {
            "via_resultant": via_resultant,
            "via_leading": via_leading,
            "via_brolin": via_brolin,
        },
    )


def check_factorization(
    f: RationalMap,
    probes=None,
    n_probes: int = 100,
    seed: int = 0,
    tol: float = IDENTITY_TOL,
) -> VerificationReport:
    """
    ``|F(p) ^ (0, 1)| = |Res F|^(1/d) prod over q in F^{-1}(0, 1) of
    |p ^ q|^(1/d)`` in log form, probes ``p`` in ``C^2``.
    """
    F = f.lift
    d = F.d
    if probes is None:
        probes = random_vectors(seed, 4, n_probes)
    p0 = np.asarray(probes[0], dtype=np.complex128)
    p1 = np.asarray(probes[1], dtype=np.complex128)
    fibre = fiber(F, SpherePoint.infinity())
    q0 = np.array([q[0] for q, _ in fibre])
    q1 = np.array([q[1] for q, _ in fibre])
    mult = np.array([m for _, m in fibre], dtype=np.float64)
    f0, _ = F.evaluate(p0, p1)
    lhs_abs = np.abs(f0)
    used = lhs_abs > 0
    wedges = np.abs(p0[used, None] * q1[None, :] - p1[used, None] * q0[None, :])
    with np.errstate(divide="ignore"):
        rhs = math.log(abs(resultant(F))) / d + (np.log(wedges) @ mult) / d
        diffs = np.abs(np.log(lhs_abs[used]) - rhs)
    return VerificationReport.new(
        "factorization",
        float(diffs.max()) if diffs.size else 0.0,
        tol,
        _inputs(f, seed=seed, n_probes=int(p0.size)),
        {"fiber_size": int(mult.sum()), "skipped_probes": int((~used).sum())},
    )


def resultant_product(f: T.Union[RationalMap, HomogeneousLift]) -> float:
    """
    ``|Res F| = prod over p in F^{-1}(1, 0), q in F^{-1}(0, 1) of
    |p ^ q|^(-1/d^2)``, both fibres with multiplicity.
    """
    F = f if isinstance(f, HomogeneousLift) else f.lift
    zero = fiber(F, SpherePoint(1 + 0j, 0j))
    inf = fiber(F, SpherePoint.infinity())
    total = math.fsum(
        m * n * math.log(abs(p[0] * q[1] - p[1] * q[0]))
        for p, m in zero
        for q, n in inf
    )
    return math.exp(-total / F.d**2)


def check_resultant_product(f: RationalMap, tol: float = PRODUCT_TOL) -> VerificationReport:
    exact = abs(resultant(f))
    product = resultant_product(f)
    return VerificationReport.new(
        "resultant-product",
        abs(product - exact) / exact,
        tol,
        _inputs(f),
        {"sylvester": exact, "product": product},
    )


def check_balanced(
    f: RationalMap,
    depth: T.Optional[int] = None,
    tol: float = BALANCED_TOL,
) -> VerificationReport:
    """
    ``f_* (f^* mu / d) = mu`` on a tree sample: the push-forward of the
    depth ``k + 1`` tree lands on the depth ``k`` atoms and carries their
    weights.
    """
    d = f.degree
    if depth is None:
        depth = max(1, int(math.log(BALANCED_ATOM_LIMIT) / math.log(d)) - 1)
    mu = sample_tree(f, pick_base_point(f), depth)
    pushed = pushforward(f, pullback(f, mu))
    a0, a1 = pushed.coords[:, 0], pushed.coords[:, 1]
    b0, b1 = mu.coords[:, 0], mu.coords[:, 1]
    na = np.hypot(np.abs(a0), np.abs(a1))
    nb = np.hypot(np.abs(b0), np.abs(b1))
    chordal = np.abs(a0[:, None] * b1[None, :] - a1[:, None] * b0[None, :]) / (
        na[:, None] * nb[None, :]
    )
    nearest = chordal.argmin(axis=1)
    distance = float(chordal[np.arange(nearest.size), nearest].max())
    mass = np.zeros(mu.size)
    np.add.at(mass, nearest, pushed.weights)
    weight_error = float(np.abs(mass - mu.weights).max())
    return VerificationReport.new(
        "balanced",
        max(distance, weight_error),
        tol,
        _inputs(f, mu, depth=depth),
        {"max_chordal": distance, "max_weight_error": weight_error},
    )


# ------------------------------------------------------------------------------
# lemniscate and the polynomial discriminator
# ------------------------------------------------------------------------------
def log_lemniscate_level(f: RationalMap, tol_green: float = STRICT_GREEN_TOL) -> float:
    """
    ``(d - 1)(I + G^F(0, 1))`` with the closed-form energy ``I``.
    """
    F = f.lift
    g_inf = green_at_infinity(F, tol=tol_green).value
    return (F.d - 1) * (energy_formula(F) + g_inf)


def lemniscate_stat(
    f: RationalMap,
    julia_sample: DiscreteMeasure,
    tol_green: float = STRICT_GREEN_TOL,
) -> LemniscateStat:
    """
    Spread of ``log|F_0(1, z)|`` over a Julia-set sample around the level
    ``exp((d - 1)(I + G^F(0, 1)))``, where ``I`` is the closed-form energy.
    """
    F = f.lift
    log_level = log_lemniscate_level(f, tol_green)
    zs = julia_sample.coords[~julia_sample.is_infinite, 1]
    f0, _ = F.evaluate(np.ones_like(zs), zs)
    with np.errstate(divide="ignore"):
        deviation = np.abs(np.log(np.abs(f0)) - log_level)
    return LemniscateStat(
        level=math.exp(log_level),
        deviation=float(deviation.max()) if deviation.size else 0.0,
        n_samples=int(zs.size),
    )


def classify(deviation: float, low: float = LOW_THRESHOLD, high: float = HIGH_THRESHOLD) -> str:
    if deviation < low:
        return POLYNOMIAL_CONSISTENT
    if deviation > high:
        return NON_POLYNOMIAL
    return INCONCLUSIVE


def discriminate_polynomial(
    f: RationalMap,
    low: float = LOW_THRESHOLD,
    high: float = HIGH_THRESHOLD,
    mu: T.Optional[DiscreteMeasure] = None,
    depth: int = DEFAULT_DEPTH,
    count: int = DEFAULT_COUNT,
    seed: int = 0,
) -> Discrimination:
    """
    Assuming infinity lies in a fixed Fatou component, a Julia set on a
    single lemniscate of ``|F_0(1, .)|`` is what a polynomial looks like.
    The hypothesis is the caller's responsibility.
    """
    if mu is None:
        mu = balanced_sample(f, depth=depth, count=count, seed=seed)
    stat = lemniscate_stat(f, mu)
    return Discrimination(
        classification=classify(stat.deviation, low, high),
        stat=stat,
        is_polynomial=f.is_polynomial,
    )


def check_lemniscate(
    f: RationalMap,
    low: float = LOW_THRESHOLD,
    high: float = HIGH_THRESHOLD,
    mu: T.Optional[DiscreteMeasure] = None,
    depth: int = DEFAULT_DEPTH,
    count: int = DEFAULT_COUNT,
    seed: int = 0,
) -> VerificationReport:
    """
    A polynomial must keep the deviation strictly below ``low``; any other
    map must push it strictly above ``high``, the same comparisons as
    :func:`classify`.

    For a polynomial the residual is the deviation and the tolerance the
    largest double below ``low``. Otherwise the residual is
    ``high - deviation`` against the tolerance ``-5e-324``, so the report
    passes exactly when the deviation exceeds ``high``.
    """
    result = discriminate_polynomial(
        f, low=low, high=high, mu=mu, depth=depth, count=count, seed=seed
    )
    deviation = result.stat.deviation
    if result.is_polynomial:
        residual, tolerance = deviation, np.nextafter(low, -np.inf)
    else:
        residual, tolerance = high - deviation, -np.nextafter(0.0, 1.0)
    return VerificationReport.new(
        "lemniscate",
        residual,
        tolerance,
        _inputs(f, mu, low=low, high=high),
        result.to_json(),
    )


# ------------------------------------------------------------------------------
# suite
# ------------------------------------------------------------------------------
CHECK_NAMES = (
    "decomp",
    "energy",
    "pullback",
    "lemniscate",
    "brolin",
    "factorization",
    "resultant-product",
    "green",
    "vconstant",
    "kernel-pullback",
    "laplacian",
    "balanced",
)


def run_suite(
    f: RationalMap,
    which: T.Union[str, T.Sequence[str]] = "all",
    depth: int = DEFAULT_DEPTH,
    count: int = DEFAULT_COUNT,
    seed: int = 0,
    n_threads: T.Optional[int] = None,
) -> T.List[VerificationReport]:
    """
    Run the named checks, ``"all"`` for every one that applies (``brolin``
    only for polynomials). The tree / walk samples are drawn once and
    shared. Reports come back sorted by identity name.
    """
    if isinstance(which, str):
        which = [which]
    names = list(which)
    if "all" in names:
        names = [n for n in CHECK_NAMES if n != "brolin" or f.is_polynomial]
    unknown = sorted(set(names) - set(CHECK_NAMES))
    if unknown:
        raise ValueError(f"unknown checks {unknown}, choose from {list(CHECK_NAMES)}")

    mu_tree = mu_walk = None
    if {"decomp", "vconstant", "laplacian", "lemniscate"} & set(names):
        mu_tree = balanced_sample(f, depth=depth, count=count, seed=seed)
    if "energy" in names:
        mu_walk = sample_walk(f, pick_base_point(f), count, seed=seed)

    checks: T.Dict[str, T.Callable[[], T.Any]] = {
        "decomp": lambda: check_decomp(f, mu=mu_tree),
        "energy": lambda: check_energy(f, mu=mu_walk),
        "pullback": lambda: check_pullback(f, seed=seed),
        "lemniscate": lambda: check_lemniscate(f, mu=mu_tree),
        "brolin": lambda: check_brolin(f),
        "factorization": lambda: check_factorization(f, seed=seed),
        "resultant-product": lambda: check_resultant_product(f),
        "green": lambda: check_green_identities(f, seed=seed),
        "vconstant": lambda: check_vconstant(f, mu=mu_tree),
        "kernel-pullback": lambda: check_kernel_pullback(f, seed=seed),
        "laplacian": lambda: check_laplacian(f, mu=mu_tree),
        "balanced": lambda: check_balanced(f),
    }
    if n_threads is None:
        n_threads = get_n_threads()
    with ThreadPoolExecutor(max_workers=max(1, min(n_threads, len(names)))) as pool:
        results = list(pool.map(lambda name: checks[name](), names))
    reports = []
    for result in results:
        if isinstance(result, list):
            reports.extend(result)
        else:
            reports.append(result)
    return sorted(reports, key=lambda r: r.identity)
