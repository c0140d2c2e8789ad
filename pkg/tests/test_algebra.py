# -*- coding: utf-8 -*-

import cmath

import numpy as np
import pytest
from numpy.polynomial import polynomial as P

from greenlem.algebra import (
    SpherePoint,
    RationalMap,
    wedge,
    canonical_lift,
    scale_lift,
    roots,
    roots_many,
    _cluster,
    sylvester_matrix,
    poly_resultant,
    resultant,
    apply,
    preimages,
    fiber,
)
from greenlem.exc import DegenerateMapError, MapFormatError, RootFindingError


def z2():
    return RationalMap.polynomial([0, 0, 1])


def two_z2():
    return RationalMap.polynomial([0, 0, 2])


def cubic_over_z():
    return RationalMap.new([1, 0, 0, 1], [0, 1])


def sorted_roots(found):
    return sorted(found, key=lambda rm: (round(rm[0].real, 6), round(rm[0].imag, 6)))


def test_sphere_point():
    p = SpherePoint.from_affine(2 + 1j)
    assert p.affine == 2 + 1j
    assert not p.is_infinity
    assert SpherePoint.infinity().is_infinity
    assert SpherePoint.parse("inf").is_infinity
    assert SpherePoint.parse("1.5,-2").affine == 1.5 - 2j
    assert SpherePoint(z0=2, z1=4).normalized() == SpherePoint.from_affine(2)
    assert SpherePoint.infinity().to_json() == "inf"
    with pytest.raises(MapFormatError):
        SpherePoint(z0=0, z1=0)


def test_wedge():
    assert wedge(SpherePoint(1, 2), SpherePoint(0, 1)) == 1
    assert wedge(SpherePoint(0, 1), SpherePoint(1, 0)) == -1
    z = 0.3 - 1.7j
    assert wedge(SpherePoint.from_affine(z), SpherePoint.from_affine(z)) == 0

    rng = np.random.default_rng(1)
    for _ in range(1000):
        a, b, c, d = rng.normal(size=4) + 1j * rng.normal(size=4)
        p, q = SpherePoint(a, b), SpherePoint(c, d)
        assert wedge(p, q) == -wedge(q, p)


def test_canonical_lift():
    F = canonical_lift(z2())
    assert F.f0_affine == (1, 0, 0)
    assert F.f1_affine == (0, 0, 1)
    assert (F.d, F.d0, F.d1) == (2, 0, 2)
    assert F.a_f == 1 and F.b_f == 1
    assert F.scale == 1

    F = canonical_lift(cubic_over_z())
    assert F.f0_affine == (0, 1, 0, 0)
    assert F.f1_affine == (1, 0, 0, 1)
    assert (F.d, F.d0, F.d1) == (3, 1, 3)
    assert F.a_f == 1 and F.b_f == 1

    # F(z0, z1) = (z0^2 z1, z1^3 + z0^3)
    f0, f1 = F.evaluate(2.0, 3.0)
    assert complex(f0) == pytest.approx(12)
    assert complex(f1) == pytest.approx(35)


def test_degenerate_maps():
    with pytest.raises(DegenerateMapError):
        RationalMap.new([0, 1], [0, 1])  # z / z
    with pytest.raises(DegenerateMapError):
        RationalMap.new([1, 0, 1], [0])
    with pytest.raises(DegenerateMapError):
        RationalMap.new([1, 1], [-1, 1])  # Moebius
    with pytest.raises(DegenerateMapError):
        RationalMap.new([-1, 0, 1], [1, 1])  # (z - 1)(z + 1) / (z + 1)
    with pytest.raises(DegenerateMapError):
        RationalMap.new([0], [1, 0, 1])


def test_map_trims_zero_leading_coefficients():
    f = RationalMap.new([0, 0, 1, 0, 0], [1, 0])
    assert f.numerator == (0, 0, 1)
    assert f.denominator == (1,)
    assert f.degree == 2
    assert f.is_polynomial
    assert not cubic_over_z().is_polynomial


def test_scale_lift():
    F = z2().lift
    assert scale_lift(F, 1) == F
    G = scale_lift(F, 2)
    assert G.f0_affine == (2, 0, 0)
    assert G.f1_affine == (0, 0, 2)
    assert G.scale == 2
    assert abs(resultant(scale_lift(F, 3))) == pytest.approx(81)
    with pytest.raises(DegenerateMapError):
        scale_lift(F, 0)


def test_resultant_scales_with_c_to_the_2d():
    rng = np.random.default_rng(7)
    for d in (2, 3, 4):
        num = rng.normal(size=d + 1) + 1j * rng.normal(size=d + 1)
        den = rng.normal(size=d) + 1j * rng.normal(size=d)
        F = RationalMap.new(num, den).lift
        c = complex(rng.normal(), rng.normal())
        ratio = abs(resultant(scale_lift(F, c))) / abs(resultant(F))
        assert ratio == pytest.approx(abs(c) ** (2 * d), rel=1e-9)


def test_resultant_examples():
    assert abs(resultant(z2())) == pytest.approx(1)
    assert abs(resultant(two_z2())) == pytest.approx(4)
    assert abs(resultant(cubic_over_z())) == pytest.approx(1)
    assert abs(resultant(RationalMap.polynomial([1, 0, 3]))) == pytest.approx(9)


def test_poly_resultant():
    # constant first argument
    assert poly_resultant([3], [0, 0, 1]) == 9
    assert poly_resultant([0, 0, 1], [2]) == 4
    # R(P, Q) = lc(P)^deg Q prod Q(roots of P): P = z - 2, Q = z^2 + 1
    assert poly_resultant([-2, 1], [1, 0, 1]) == pytest.approx(5)
    # common root
    assert abs(poly_resultant([-1, 1], [-1, 0, 1])) < 1e-12


def test_sylvester_matrix():
    m = sylvester_matrix([-2, 1], [1, 0, 1])
    expected = np.array(
        [
            [1, -2, 0],
            [0, 1, -2],
            [1, 0, 1],
        ]
    )
    np.testing.assert_array_equal(m, expected)


def test_roots():
    found = sorted_roots(roots([-4, 0, 1]))
    assert len(found) == 2
    assert found[0][0] == pytest.approx(-2)
    assert found[1][0] == pytest.approx(2)
    assert [m for _, m in found] == [1, 1]

    assert roots([0, 0, 1]) == [(0j, 2)]

    found = roots([1, 0, 0, 1])
    assert sum(m for _, m in found) == 3
    for z, m in found:
        assert abs(z**3 + 1) <= 1e-12 * (1 + abs(z) ** 3)
    expected = [cmath.exp(1j * cmath.pi * (2 * k + 1) / 3) for k in range(3)]
    for e in expected:
        assert min(abs(e - z) for z, _ in found) < 1e-10

    assert roots([3, 2]) == [(-1.5 + 0j, 1)]


def test_roots_multiple():
    found = roots([-1, 3, -3, 1])
    assert len(found) == 1
    assert found[0][0] == pytest.approx(1, abs=1e-12)
    assert found[0][1] == 3

    found = sorted_roots(roots(P.polyfromroots([1, 1, 1, -2])))
    assert [m for _, m in found] == [1, 3]
    assert found[0][0] == pytest.approx(-2, abs=1e-10)
    assert found[1][0] == pytest.approx(1, abs=1e-10)

    found = roots(P.polyfromroots([2j, 2j, 2j, 2j]))
    assert len(found) == 1
    assert found[0][0] == pytest.approx(2j, abs=1e-10)
    assert found[0][1] == 4


def test_close_simple_roots_stay_apart():
    found = sorted_roots(roots(P.polyfromroots([1, 1 + 1e-4, -1])))
    assert [m for _, m in found] == [1, 1, 1]
    assert found[1][0] == pytest.approx(1, abs=1e-9)
    assert found[2][0] == pytest.approx(1 + 1e-4, abs=1e-9)


def test_roots_errors():
    with pytest.raises(RootFindingError):
        roots([5])
    with pytest.raises(RootFindingError):
        roots([1, 0, 0, 1], max_iter=1)


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("deg_p,deg_q", [(1, 2), (2, 2), (2, 3)])
def test_roots_of_product_is_union(seed, deg_p, deg_q):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=deg_p) + 1j * rng.normal(size=deg_p)
    b = rng.normal(size=deg_q) + 1j * rng.normal(size=deg_q)
    product = P.polymul(P.polyfromroots(a), P.polyfromroots(b))
    found = roots(product)
    assert sum(m for _, m in found) == deg_p + deg_q
    for r in np.concatenate([a, b]):
        assert min(abs(r - z) for z, _ in found) < 1e-7 * max(1, abs(r))
    for z, _ in found:
        assert min(abs(np.concatenate([a, b]) - z)) < 1e-7 * max(1, abs(z))


def test_roots_many_matches_roots():
    rows = np.array(
        [
            [-4, 0, 1],
            [1, 0, 1],
            [0, 0, 1],
            [2, -3, 1],
        ],
        dtype=complex,
    )
    many = roots_many(rows)
    for row, found in zip(rows, many):
        single = roots(row)
        assert sum(m for _, m in found) == 2
        assert sorted_roots(found)[0][0] == pytest.approx(sorted_roots(single)[0][0])


def test_roots_many_multiple_root():
    rows = np.array([[-1, 3, -3, 1], [1, 0, 0, 1]], dtype=complex)
    triple, simple = roots_many(rows)
    assert [m for _, m in triple] == [3]
    assert triple[0][0] == pytest.approx(1, abs=1e-12)
    assert [m for _, m in simple] == [1, 1, 1]


def test_cluster():
    values = np.array([1.0, 1.0 + 1e-9, 2.0, -3.0, -3.0 - 1e-9j])
    groups = _cluster(values)
    assert [m for _, m in groups] == [2, 1, 2]
    assert groups[0][0] == pytest.approx(1.0)


def test_preimages():
    found = sorted_roots([(p.affine, m) for p, m in preimages(z2(), SpherePoint.from_affine(4))])
    assert [m for _, m in found] == [1, 1]
    assert found[0][0] == pytest.approx(-2)
    assert found[1][0] == pytest.approx(2)

    found = preimages(z2(), SpherePoint.infinity())
    assert len(found) == 1
    assert found[0][0].is_infinity and found[0][1] == 2

    found = preimages(cubic_over_z(), SpherePoint.infinity())
    finite = [(p.affine, m) for p, m in found if not p.is_infinity]
    infinite = [m for p, m in found if p.is_infinity]
    assert finite == [(0j, 1)]
    assert infinite == [2]


def test_preimage_multiplicities_sum_to_degree():
    rng = np.random.default_rng(3)
    for d in (2, 3, 4):
        num = rng.normal(size=d + 1) + 1j * rng.normal(size=d + 1)
        den = rng.normal(size=d) + 1j * rng.normal(size=d)
        f = RationalMap.new(num, den)
        for _ in range(100):
            w = SpherePoint.from_affine(complex(*rng.normal(size=2)))
            assert sum(m for _, m in preimages(f, w)) == d


def test_apply():
    assert apply(z2(), SpherePoint.from_affine(3)).normalized().affine == 9
    assert apply(cubic_over_z(), SpherePoint.from_affine(0)).is_infinity
    assert apply(cubic_over_z(), SpherePoint.infinity()).is_infinity


def test_fiber():
    # F^{-1}(0, 1) of z^2 is (0, +-1), each of multiplicity 2
    found = fiber(z2(), SpherePoint.infinity())
    assert sum(m for _, m in found) == 4
    for (q0, q1), m in found:
        assert q0 == 0
        assert abs(q1) == pytest.approx(1)
        assert m == 2

    F = cubic_over_z().lift
    for target in (SpherePoint(1, 0), SpherePoint(0, 1)):
        found = fiber(F, target)
        assert sum(m for _, m in found) == 9
        for (q0, q1), _ in found:
            f0, f1 = F.evaluate(q0, q1)
            assert complex(f0) == pytest.approx(target.z0, abs=1e-10)
            assert complex(f1) == pytest.approx(target.z1, abs=1e-10)


if __name__ == "__main__":
    import os

    basename = os.path.basename(__file__)
    pytest.main([basename, "-s", "--tb=native"])
