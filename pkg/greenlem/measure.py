# -*- coding: utf-8 -*-

"""
Discrete approximations of the balanced measure and the potentials built
on them.

- :func:`sample_tree` returns the exact atoms of ``(f^k)^* delta_a / d^k``.
- :func:`sample_walk` runs random backward orbits, for depths where the
  full preimage tree is too large.
- :func:`potential`, :func:`energy` are the logarithmic potential and
  energy of a measure on ``C``.
- :func:`phi_kernel`, :func:`weighted_potential`, :func:`v_constant` are
  the Green-weighted kernel ``log|p ^ q| - G^F(p) - G^F(q)``, its potential
  and the constant that potential takes against the balanced measure.
"""

import math
import typing as T
import dataclasses

import numpy as np

from .algebra import (
    DEGREE_DROP_TOL,
    HomogeneousLift,
    RationalMap,
    SpherePoint,
    apply,
    as_lift,
    preimages,
    resultant,
    roots_many,
    wedge,
)
from .exc import (
    DegenerateMapError,
    ExceptionalPointError,
    InfiniteAtomError,
    SampleCapError,
)
from .green import DEFAULT_TOL, green, green_many
from .logger import logger
from .parallel import map_blocks
from .rng import uniforms

TREE_CAP = 2**20
TREE_DEFAULT_LIMIT = 2**14
BURN_IN = 20
DEFAULT_COUNT = 4096
COINCIDENT_TOL = 1e-14
WEIGHT_SUM_TOL = 1e-12
PULLBACK_BLOCK = 16384
ENERGY_BLOCK = 512
ATOM_BLOCK = 4096
EXCEPTIONAL_RADIUS = 1e-9

LiftLike = T.Union[RationalMap, HomogeneousLift]


def normalise_coords(z0, z1) -> np.ndarray:
    """
    Stack homogeneous coordinates into an ``(N, 2)`` array of the
    representatives ``(1, z)`` and ``(0, 1)``.
    """
    z0 = np.atleast_1d(np.asarray(z0, dtype=np.complex128))
    z1 = np.atleast_1d(np.asarray(z1, dtype=np.complex128))
    finite = z0 != 0
    out = np.zeros((z0.size, 2), dtype=np.complex128)
    out[finite, 0] = 1
    out[finite, 1] = z1[finite] / z0[finite]
    out[~finite, 1] = 1
    return out


@dataclasses.dataclass
class DiscreteMeasure:
    """
    A finite weighted point cloud on the sphere.

    :param coords: ``(N, 2)`` complex array of representatives ``(1, z)``,
        or ``(0, 1)`` for atoms at infinity
    :param weights: ``(N,)`` positive weights summing to 1
    :param seed: seed of the random streams that produced the sample
    :param provenance: how the sample was made, e.g.
        ``{"method": "tree", "depth": 12, "base": [10.0, 0.0]}``
    """

    coords: np.ndarray = dataclasses.field()
    weights: np.ndarray = dataclasses.field()
    seed: int = dataclasses.field(default=0)
    provenance: T.Dict[str, T.Any] = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        self.coords = np.asarray(self.coords, dtype=np.complex128).reshape(-1, 2)
        self.weights = np.asarray(self.weights, dtype=np.float64).ravel()
        if self.coords.shape[0] != self.weights.size:
            raise ValueError(
                f"{self.coords.shape[0]} points but {self.weights.size} weights"
            )
        if self.weights.size < 1:
            raise ValueError("a measure needs at least one atom")
        if np.any(self.weights <= 0):
            raise ValueError("weights must be positive")
        total = math.fsum(self.weights)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights must sum to 1, got {total!r}")

    @classmethod
    def new(
        cls,
        points: T.Sequence[SpherePoint],
        weights: T.Optional[T.Sequence[float]] = None,
        seed: int = 0,
        provenance: T.Optional[T.Dict[str, T.Any]] = None,
    ) -> "DiscreteMeasure":
        """
        Build from sphere points, equal weights by default.
        """
        coords = normalise_coords([p.z0 for p in points], [p.z1 for p in points])
        if weights is None:
            weights = np.full(len(points), 1.0 / len(points))
        return cls(
            coords=coords,
            weights=np.asarray(weights, dtype=np.float64),
            seed=seed,
            provenance=dict(provenance or {}),
        )

    @classmethod
    def from_affine(
        cls,
        zs: T.Sequence[complex],
        weights: T.Optional[T.Sequence[float]] = None,
        seed: int = 0,
        provenance: T.Optional[T.Dict[str, T.Any]] = None,
    ) -> "DiscreteMeasure":
        zs = np.asarray(zs, dtype=np.complex128)
        if weights is None:
            weights = np.full(zs.size, 1.0 / zs.size)
        return cls(
            coords=normalise_coords(np.ones_like(zs), zs),
            weights=np.asarray(weights, dtype=np.float64),
            seed=seed,
            provenance=dict(provenance or {}),
        )

    @classmethod
    def delta(cls, a: SpherePoint, seed: int = 0) -> "DiscreteMeasure":
        return cls.new([a], [1.0], seed=seed, provenance={"method": "delta"})

    @property
    def size(self) -> int:
        return self.weights.size

    @property
    def is_infinite(self) -> np.ndarray:
        return self.coords[:, 0] == 0

    @property
    def points(self) -> T.List[SpherePoint]:
        return [SpherePoint(z0=complex(a), z1=complex(b)) for a, b in self.coords]

    @property
    def affine(self) -> np.ndarray:
        """
        Affine coordinates of the atoms, for the measures on ``C`` the
        logarithmic potential is defined for.
        """
        n_inf = int(np.count_nonzero(self.is_infinite))
        if n_inf:
            raise InfiniteAtomError(
                f"{n_inf} atoms at infinity, the logarithmic potential needs "
                f"a compactly supported measure on C"
            )
        return self.coords[:, 1].copy()


@dataclasses.dataclass(frozen=True)
class EnergyEstimate:
    value: float = dataclasses.field()
    pairs_used: int = dataclasses.field()
    pairs_skipped: int = dataclasses.field()

    def to_json(self) -> T.Dict[str, T.Any]:
        return dataclasses.asdict(self)


# ------------------------------------------------------------------------------
# pullback / push-forward
# ------------------------------------------------------------------------------
def _pull_block(
    F: HomogeneousLift,
    coords: np.ndarray,
) -> T.List[T.List[T.Tuple[complex, complex, int]]]:
    """
    Preimages of every row of ``coords`` as ``(z0, z1, multiplicity)``.
    """
    f0 = np.array(F.f0_affine)
    f1 = np.array(F.f1_affine)
    combos = coords[:, :1] * f1[None, :] - coords[:, 1:] * f0[None, :]
    mags = np.abs(combos)
    dropped = mags[:, -1] <= DEGREE_DROP_TOL * mags.max(axis=1)
    out: T.List[T.Optional[T.List[T.Tuple[complex, complex, int]]]] = [None] * len(coords)
    regular = np.flatnonzero(~dropped)
    if regular.size:
        for i, found in zip(regular, roots_many(combos[regular])):
            out[i] = [(1 + 0j, z, m) for z, m in found]
    for i in np.flatnonzero(dropped):
        w = SpherePoint(z0=complex(coords[i, 0]), z1=complex(coords[i, 1]))
        out[i] = [(p.z0, p.z1, m) for p, m in preimages(F, w)]
    return out


def pullback(f: LiftLike, mu: DiscreteMeasure) -> DiscreteMeasure:
    """
    ``f^* mu / d``: every atom is replaced by its preimages, each carrying
    ``multiplicity / d`` of the parent weight. Children keep parent order.
    """
    F = as_lift(f)
    d = F.d
    blocks = map_blocks(
        lambda start, stop: _pull_block(F, mu.coords[start:stop]),
        mu.size,
        PULLBACK_BLOCK,
    )
    z0s, z1s, weights = [], [], []
    parent = 0
    for block in blocks:
        for children in block:
            w = mu.weights[parent]
            for z0, z1, m in children:
                z0s.append(z0)
                z1s.append(z1)
                weights.append(w * m / d)
            parent += 1
    return DiscreteMeasure(
        coords=normalise_coords(z0s, z1s),
        weights=np.array(weights),
        seed=mu.seed,
        provenance=dict(mu.provenance),
    )


def pushforward(f: LiftLike, mu: DiscreteMeasure) -> DiscreteMeasure:
    """
    ``f_* mu``: every atom ``x`` moves to ``f(x)`` with its weight.
    """
    F = as_lift(f)
    f0, f1 = F.evaluate(mu.coords[:, 0], mu.coords[:, 1])
    return DiscreteMeasure(
        coords=normalise_coords(f0, f1),
        weights=mu.weights.copy(),
        seed=mu.seed,
        provenance=dict(mu.provenance, pushed=mu.provenance.get("pushed", 0) + 1),
    )


def push_function(
    f: LiftLike,
    phi: T.Callable[[SpherePoint], float],
    z: SpherePoint,
) -> float:
    """
    ``(f_* phi)(z) = sum over w in f^{-1}(z) of m_w phi(w)``, unnormalised.
    """
    return math.fsum(m * phi(w) for w, m in preimages(f, z))


def pull_function(
    f: LiftLike,
    phi: T.Callable[[SpherePoint], float],
    z: SpherePoint,
) -> float:
    """
    ``(f^* phi)(z) = phi(f(z))``.
    """
    return phi(apply(f, z))


# ------------------------------------------------------------------------------
# sampling
# ------------------------------------------------------------------------------
def is_exceptional(f: LiftLike, a: SpherePoint) -> bool:
    """
    ``a`` is exceptional iff ``{a} U f^-1(a) U f^-2(a)`` has at most two
    distinct points.
    """
    seen = [a]
    frontier = [a]
    for _ in range(2):
        nxt = []
        for x in frontier:
            for p, _ in preimages(f, x):
                nxt.append(p)
        for p in nxt:
            if all(p.chordal_distance(q) > EXCEPTIONAL_RADIUS for q in seen):
                seen.append(p)
        if len(seen) > 2:
            return False
        frontier = nxt
    return len(seen) <= 2


def _check_base_point(f: LiftLike, a: SpherePoint):
    if is_exceptional(f, a):
        raise ExceptionalPointError(
            f"{a.to_json()} is an exceptional point, its backward orbit is finite"
        )


def sample_tree(
    f: LiftLike,
    a: SpherePoint,
    depth: int,
    cap: int = TREE_CAP,
    seed: int = 0,
) -> DiscreteMeasure:
    """
    The atoms of ``(f^k)^* delta_a / d^k``, ``d^k`` points counted with
    multiplicity.

    Example: ``f = z^2``, ``a = 1``, ``depth = 2`` gives ``1, -1, i, -i``
    with weight 1/4 each.
    """
    F = as_lift(f)
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    if F.d**depth > cap:
        raise SampleCapError(
            f"d^k = {F.d}^{depth} exceeds the tree cap {cap}, use the walk sampler"
        )
    _check_base_point(F, a)
    mu = DiscreteMeasure.delta(a, seed=seed)
    for level in range(depth):
        mu = pullback(F, mu)
        logger.debug("tree level %d: %d atoms", level + 1, mu.size)
    mu.provenance = {"method": "tree", "depth": depth, "base": a.to_json()}
    return mu


def _choose(choices: T.List[T.Tuple[SpherePoint, int]], d: int, u: float) -> SpherePoint:
    mults = np.cumsum([m for _, m in choices])
    return choices[int(np.searchsorted(mults, u * d, side="right"))][0]


def _walk_chain(
    F: HomogeneousLift,
    a: SpherePoint,
    n_points: int,
    burn_in: int,
    seed: int,
    index: int,
) -> T.List[T.Tuple[complex, complex]]:
    draws = uniforms(seed, index, burn_in + n_points)
    current = a
    out = []
    for step, u in enumerate(draws):
        current = _choose(preimages(F, current), F.d, u).normalized()
        if step >= burn_in:
            out.append((current.z0, current.z1))
    return out


def sample_walk(
    f: LiftLike,
    a: SpherePoint,
    count: int = DEFAULT_COUNT,
    burn_in: int = BURN_IN,
    seed: int = 0,
    chains: int = 1,
) -> DiscreteMeasure:
    """
    Random backward orbits of ``a``. At each step one preimage is picked
    with probability ``multiplicity / d``; the first ``burn_in`` points of
    every chain are dropped and the rest get weight ``1 / count``.

    Chain ``j`` draws from random stream ``j`` of ``seed``, so the result
    does not depend on how chains are scheduled.
    """
    F = as_lift(f)
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if burn_in < 0:
        raise ValueError(f"burn_in must be >= 0, got {burn_in}")
    if not (1 <= chains <= count):
        raise ValueError(f"chains must be in [1, count], got {chains}")
    _check_base_point(F, a)
    sizes = [count // chains + (1 if j < count % chains else 0) for j in range(chains)]
    results = map_blocks(
        lambda start, stop: _walk_chain(F, a, sizes[start], burn_in, seed, start),
        chains,
        1,
    )
    pairs = [pair for chain in results for pair in chain]
    return DiscreteMeasure(
        coords=normalise_coords([p[0] for p in pairs], [p[1] for p in pairs]),
        weights=np.full(count, 1.0 / count),
        seed=seed,
        provenance={
            "method": "walk",
            "count": count,
            "burn_in": burn_in,
            "chains": chains,
            "base": a.to_json(),
        },
    )


def sample(
    f: LiftLike,
    a: SpherePoint,
    method: str = "auto",
    depth: T.Optional[int] = None,
    count: int = DEFAULT_COUNT,
    burn_in: int = BURN_IN,
    seed: int = 0,
    chains: int = 1,
    cap: int = TREE_CAP,
) -> DiscreteMeasure:
    """
    Dispatch to :func:`sample_tree` or :func:`sample_walk`. ``"auto"`` uses
    the tree when a depth is given and ``d^depth <= 2^14``, the walk
    otherwise.
    """
    F = as_lift(f)
    if method == "auto":
        if depth is not None and F.d**depth <= TREE_DEFAULT_LIMIT:
            method = "tree"
        else:
            method = "walk"
        logger.info("sampler: %s", method)
    if method == "tree":
        if depth is None:
            raise ValueError("the tree sampler needs a depth")
        return sample_tree(F, a, depth, cap=cap, seed=seed)
    if method == "walk":
        return sample_walk(F, a, count, burn_in=burn_in, seed=seed, chains=chains)
    raise ValueError(f"unknown sampling method {method!r}")


# ------------------------------------------------------------------------------
# logarithmic potential and energy
# ------------------------------------------------------------------------------
def potential(
    mu: DiscreteMeasure,
    z: complex,
    return_skipped: bool = False,
) -> T.Union[float, T.Tuple[float, int]]:
    """
    ``p_mu(z) = sum_i w_i log|z - x_i|``; atoms within ``1e-14`` of ``z``
    are skipped and counted.
    """
    values, skipped = potential_many(mu, np.array([z]))
    if return_skipped:
        return float(values[0]), int(skipped[0])
    return float(values[0])


def potential_many(
    mu: DiscreteMeasure,
    zs,
) -> T.Tuple[np.ndarray, np.ndarray]:
    """
    :return: potentials and skipped-atom counts, one per probe
    """
    x = mu.affine
    zs = np.atleast_1d(np.asarray(zs, dtype=np.complex128))

    def block(start: int, stop: int):
        z = zs[start:stop, None]
        values = np.zeros(stop - start)
        skipped = np.zeros(stop - start, dtype=np.int64)
        for a in range(0, x.size, ATOM_BLOCK):
            b = a + ATOM_BLOCK
            dist = np.abs(z - x[None, a:b])
            used = dist >= COINCIDENT_TOL
            with np.errstate(divide="ignore"):
                logs = np.where(used, np.log(dist), 0.0)
            values += (logs * mu.weights[None, a:b]).sum(axis=1)
            skipped += (~used).sum(axis=1)
        return values, skipped

    parts = map_blocks(block, zs.size, ENERGY_BLOCK)
    values = np.concatenate([p[0] for p in parts])
    skipped = np.concatenate([p[1] for p in parts])
    if skipped.any():
        logger.info("potential: skipped %d coincident atoms", int(skipped.sum()))
    return values, skipped


def energy(mu: DiscreteMeasure, block_size: int = ENERGY_BLOCK) -> EnergyEstimate:
    """
    Pairwise estimate of ``I_mu``::

        sum_{i != j} w_i w_j log|x_i - x_j| / sum_{i != j} w_i w_j

    over pairs at distance ``>= 1e-14``. For equal weights this is the
    U-statistic ``1 / (N (N - 1)) sum_{i != j} log|x_i - x_j|``. Row sums
    are added with :func:`math.fsum`, so the row blocking does not change
    the result.
    """
    x = mu.affine
    n = x.size
    if n < 2:
        raise ValueError("energy needs at least two atoms")
    w = mu.weights

    def block(start: int, stop: int):
        dist = np.abs(x[start:stop, None] - x[None, :])
        used = dist >= COINCIDENT_TOL
        used[np.arange(stop - start), np.arange(start, stop)] = False
        ww = w[start:stop, None] * w[None, :]
        with np.errstate(divide="ignore"):
            logs = np.where(used, np.log(dist), 0.0)
        return (
            list((ww * logs).sum(axis=1)),
            list(np.where(used, ww, 0.0).sum(axis=1)),
            int(used.sum()),
        )

    parts = map_blocks(block, n, block_size)
    numerator = math.fsum(v for p in parts for v in p[0])
    denominator = math.fsum(v for p in parts for v in p[1])
    used = sum(p[2] for p in parts)
    skipped = n * (n - 1) - used
    if skipped:
        logger.info("energy: skipped %d coincident pairs", skipped)
    value = numerator / denominator if denominator > 0 else float("nan")
    return EnergyEstimate(value=value, pairs_used=used, pairs_skipped=skipped)


# ------------------------------------------------------------------------------
# Green-weighted kernel
# ------------------------------------------------------------------------------
def phi_kernel(
    F: LiftLike,
    z: SpherePoint,
    w: SpherePoint,
    tol: float = DEFAULT_TOL,
) -> float:
    """
    ``log|p ^ q| - G^F(p) - G^F(q)``; ``-inf`` when ``z`` and ``w`` are the
    same point of the sphere.
    """
    pq = abs(wedge(z, w))
    if pq <= COINCIDENT_TOL * z.norm * w.norm:
        return float("-inf")
    return math.log(pq) - green(F, z, tol=tol).value - green(F, w, tol=tol).value


def weighted_potential_many(
    F: LiftLike,
    mu: DiscreteMeasure,
    probes: T.Sequence[SpherePoint],
    tol: float = DEFAULT_TOL,
) -> T.Tuple[np.ndarray, np.ndarray]:
    """
    ``U_{F, mu}`` at many probes, the atom Green values computed once.

    :return: values and skipped-atom counts, one per probe
    """
    F = as_lift(F)
    q0, q1 = mu.coords[:, 0], mu.coords[:, 1]
    g_atoms = green_many(F, q0, q1, tol=tol).value
    p0 = np.array([p.z0 for p in probes], dtype=np.complex128)
    p1 = np.array([p.z1 for p in probes], dtype=np.complex128)
    g_probes = green_many(F, p0, p1, tol=tol).value
    q_norm = np.hypot(np.abs(q0), np.abs(q1))
    p_norm = np.hypot(np.abs(p0), np.abs(p1))

    def block(start: int, stop: int):
        wedges = np.abs(
            p0[:, None] * q1[None, start:stop] - p1[:, None] * q0[None, start:stop]
        )
        used = wedges > COINCIDENT_TOL * p_norm[:, None] * q_norm[None, start:stop]
        with np.errstate(divide="ignore"):
            kernel = np.log(wedges) - g_probes[:, None] - g_atoms[None, start:stop]
        return (
            np.where(used, kernel, 0.0) @ mu.weights[start:stop],
            (~used).sum(axis=1),
        )

    # atom blocks keep the probe x atom matrices small; summed in block order
    parts = map_blocks(block, mu.size, ATOM_BLOCK)
    values = np.zeros(len(probes))
    skipped = np.zeros(len(probes), dtype=np.int64)
    for part_values, part_skipped in parts:
        values = values + part_values
        skipped = skipped + part_skipped
    if skipped.any():
        logger.info("weighted potential: skipped %d coincident atoms", int(skipped.sum()))
    return values, skipped


def weighted_potential(
    F: LiftLike,
    mu: DiscreteMeasure,
    z: SpherePoint,
    tol: float = DEFAULT_TOL,
    return_skipped: bool = False,
) -> T.Union[float, T.Tuple[float, int]]:
    """
    ``U_{F, mu}(z) = sum_i w_i Phi_F(z, x_i)``.
    """
    values, skipped = weighted_potential_many(F, mu, [z], tol=tol)
    if return_skipped:
        return float(values[0]), int(skipped[0])
    return float(values[0])


def v_constant(F: LiftLike) -> float:
    """
    ``V_F = -log|Res F| / (d (d - 1))``.
    """
    F = as_lift(F)
    res = abs(resultant(F))
    if res == 0:
        raise DegenerateMapError("Res F = 0, the lift is degenerate")
    return -math.log(res) / (F.d * (F.d - 1))
