# -*- coding: utf-8 -*-

import math
import logging

import numpy as np
import pytest

from greenlem.algebra import RationalMap, SpherePoint, scale_lift
from greenlem.green import (
    DEFAULT_TOL,
    ITERATION_CAP,
    GreenValue,
    tail_constant,
    steps_for,
    green_many,
    green,
    green_affine,
    green_affine_many,
    green_at_infinity,
)


def z2():
    return RationalMap.polynomial([0, 0, 1])


def basilica():
    return RationalMap.polynomial([-1, 0, 1])


def cubic_over_z():
    return RationalMap.new([1, 0, 0, 1], [0, 1])


def test_green_of_z_squared():
    f = z2()
    for z in (0, 0.5j, 0.99, 3, -2 + 2j, 1e3):
        result = green_affine(f, z)
        assert result.value == pytest.approx(math.log(max(1.0, abs(z))), abs=1e-9)
        assert result.err_bound <= DEFAULT_TOL
    assert green_at_infinity(f).value == pytest.approx(0, abs=1e-9)


def test_green_at_infinity_of_two_z_squared():
    result = green_at_infinity(RationalMap.polynomial([0, 0, 2]))
    assert result.value == pytest.approx(math.log(2), abs=1e-9)
    assert result.steps >= 1


def test_green_vanishes_on_periodic_orbit():
    # 0 -> -1 -> 0 under z^2 - 1
    f = basilica()
    assert green_affine(f, 0).value == pytest.approx(0, abs=1e-9)
    assert green_affine(f, -1).value == pytest.approx(0, abs=1e-9)


def test_green_homogeneity():
    F = cubic_over_z().lift
    p = SpherePoint(0.4 - 0.2j, 1.3 + 0.5j)
    g = green(F, p).value
    for c in (2, 0.1j, -3 + 4j):
        q = SpherePoint(c * p.z0, c * p.z1)
        assert green(F, q).value == pytest.approx(g + math.log(abs(c)), abs=1e-9)


def test_green_invariance():
    F = cubic_over_z().lift
    rng = np.random.default_rng(5)
    for _ in range(50):
        z0, z1 = rng.normal(size=2) + 1j * rng.normal(size=2)
        g = green(F, SpherePoint(z0, z1))
        f0, f1 = F.evaluate(z0, z1)
        g_f = green(F, SpherePoint(complex(f0), complex(f1)))
        assert g_f.value == pytest.approx(3 * g.value, abs=1e-8)


def test_green_lift_change():
    F = basilica().lift
    p = SpherePoint(1, 0.3 + 0.9j)
    for c in (2, 0.5j, 1 - 1j):
        g_c = green(scale_lift(F, c), p).value
        g = green(F, p).value
        assert g_c - g == pytest.approx(math.log(abs(c)) / (F.d - 1), abs=1e-9)


def test_err_bound_decreases_with_steps():
    F = cubic_over_z().lift
    p = SpherePoint.from_affine(10)
    bounds = [green(F, p, steps=k).err_bound for k in (1, 2, 4, 8, 16)]
    assert all(a > b for a, b in zip(bounds, bounds[1:]))
    values = [green(F, p, steps=k).value for k in (16, 32)]
    assert values[0] == pytest.approx(values[1], abs=bounds[-1])


def test_cubic_over_z_at_ten():
    # unnormalised forward iteration, 3^-k log ||F^k(1, 10)||
    F = cubic_over_z().lift
    z0, z1 = 1 + 0j, 10 + 0j
    k = 5
    for _ in range(k):
        f0, f1 = F.evaluate(z0, z1)
        z0, z1 = complex(f0), complex(f1)
    estimate = math.log(math.hypot(abs(z0), abs(z1))) / 3**k
    B = tail_constant(F)
    assert green_affine(F, 10).value == pytest.approx(estimate, abs=B / (2 * 3**k))


def test_tail_constant():
    B = tail_constant(z2().lift)
    # max |log ||F(u)||| is log sqrt 2, at |u0| = |u1|
    assert 0.6930 <= B <= math.log(2) + 1e-12
    assert tail_constant(z2().lift, strict=True) >= B


def test_steps_for():
    assert steps_for(0.0, 2, 1e-10) == 1
    assert steps_for(1.0, 2, 0.3) == 2
    assert steps_for(1.0, 2, 10.0) == 1
    B, d, tol = 3.7, 3, 1e-10
    k = steps_for(B, d, tol)
    assert B / (d**k * (d - 1)) <= tol
    assert B / (d ** (k - 1) * (d - 1)) > tol


def test_iteration_cap_warning(caplog):
    with caplog.at_level(logging.WARNING, logger="greenlem"):
        result = green_affine(z2(), 2, tol=1e-300)
    assert result.steps == ITERATION_CAP
    assert "not reachable" in caplog.text


def test_green_many():
    f = z2()
    zs = np.array([[0.5, 2.0], [3j, -4.0]])
    result = green_affine_many(f, zs)
    assert result.value.shape == (2, 2)
    np.testing.assert_allclose(
        result.value, np.log(np.maximum(1.0, np.abs(zs))), atol=1e-9
    )


def test_green_errors():
    F = z2().lift
    with pytest.raises(ValueError):
        green_many(F, 0, 0)
    with pytest.raises(ValueError):
        green(F, SpherePoint.from_affine(1), tol=0)


def test_strict_affine_variants():
    f = basilica()
    loose = green_affine(f, 2.5, steps=6)
    tight = green_affine(f, 2.5, steps=6, strict=True)
    # same iteration, only the certified bound may grow
    assert tight.value == loose.value
    assert tight.err_bound >= loose.err_bound
    assert tight.err_bound == pytest.approx(
        tail_constant(f.lift, strict=True) / (2**6 * (2 - 1))
    )

    zs = np.array([2.5, 0.1j])
    many = green_affine_many(f, zs, strict=True)
    assert many.value[0] == pytest.approx(green_affine(f, 2.5, strict=True).value, abs=1e-9)
    assert green_at_infinity(z2(), strict=True).value == pytest.approx(0, abs=1e-10)


def test_green_value_to_json():
    data = GreenValue(value=np.float64(0.5), err_bound=1e-11, steps=7).to_json()
    assert data == {"value": 0.5, "err_bound": 1e-11, "steps": 7}


if __name__ == "__main__":
    import os

    basename = os.path.basename(__file__)
    pytest.main([basename, "-s", "--tb=native"])
