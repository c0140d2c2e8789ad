# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from greenlem.algebra import RationalMap
from greenlem.exc import NotPolynomialError
from greenlem.measure import DiscreteMeasure
from greenlem.verify import (
    POLYNOMIAL_CONSISTENT,
    NON_POLYNOMIAL,
    INCONCLUSIVE,
    LOW_THRESHOLD,
    HIGH_THRESHOLD,
    CHECK_NAMES,
    VerificationReport,
    LemniscateStat,
    Discrimination,
    random_disk,
    random_vectors,
    circle,
    pick_base_point,
    balanced_sample,
    check_decomp,
    energy_formula,
    check_energy,
    check_vconstant,
    check_laplacian,
    check_pullback,
    check_kernel_pullback,
    check_green_identities,
    brolin_capacity,
    check_brolin,
    check_factorization,
    resultant_product,
    check_resultant_product,
    check_balanced,
    lemniscate_stat,
    classify,
    discriminate_polynomial,
    check_lemniscate,
    run_suite,
)


def z2():
    return RationalMap.polynomial([0, 0, 1])


def two_z2():
    return RationalMap.polynomial([0, 0, 2])


def basilica():
    return RationalMap.polynomial([-1, 0, 1])


def cubic_over_z():
    return RationalMap.new([1, 0, 0, 1], [0, 1])


def test_verification_report():
    report = VerificationReport.new("x", 0.5, 1.0, {"a": 1})
    assert report.passed
    data = report.to_json()
    assert data["pass"] is True
    assert data["identity"] == "x"
    assert len(data["inputs_digest"]) == 64
    assert not VerificationReport.new("x", 2.0, 1.0, {}).passed
    assert not VerificationReport.new("x", float("nan"), 1.0, {}).passed


def test_sample_point_helpers():
    a = random_disk(1, 0, 500, 3.0)
    assert a.shape == (500,)
    assert np.abs(a).max() < 3.0
    np.testing.assert_array_equal(a, random_disk(1, 0, 500, 3.0))
    z0, z1 = random_vectors(1, 0, 10)
    np.testing.assert_array_equal(z0, random_disk(1, 0, 10, 2.0))
    np.testing.assert_array_equal(z1, random_disk(1, 1, 10, 2.0))
    np.testing.assert_allclose(np.abs(circle(8, 2.5)), 2.5)


def test_pick_base_point():
    assert pick_base_point(z2()).affine == 10
    a = pick_base_point(cubic_over_z())
    assert not a.is_infinity


def test_energy_formula():
    assert energy_formula(z2()) == pytest.approx(0, abs=1e-12)
    assert energy_formula(basilica()) == pytest.approx(0, abs=1e-12)
    # log 4 / 2 - 2 log 2
    assert energy_formula(two_z2()) == pytest.approx(-math.log(2), abs=1e-12)


def test_sampled_checks_on_basilica():
    f = basilica()
    mu = balanced_sample(f, depth=10, seed=1)
    assert mu.provenance["method"] == "tree"
    for report in (
        check_decomp(f, mu=mu),
        check_vconstant(f, mu=mu),
        check_laplacian(f, mu=mu),
    ):
        assert report.passed, report.to_json()


def test_sampled_checks_on_z_squared():
    f = z2()
    report = check_decomp(f, depth=10)
    assert report.passed
    assert report.details["n_atoms"] == 1024
    report = check_energy(f, count=1024, seed=3)
    assert report.passed
    assert report.details["formula"] == pytest.approx(0, abs=1e-12)
    laplacian = check_laplacian(f, depth=10)
    assert laplacian.residual == 0
    assert laplacian.details["mass_inner"] == 0
    assert laplacian.details["mass_outer"] == pytest.approx(1)


def test_check_laplacian_radii():
    with pytest.raises(ValueError):
        check_laplacian(z2(), radii=(3.0, 0.5), depth=2)


@pytest.mark.parametrize("f", [z2(), two_z2(), basilica(), cubic_over_z()])
def test_deterministic_identities(f):
    for report in (
        check_pullback(f),
        check_kernel_pullback(f),
        check_factorization(f),
        check_resultant_product(f),
        check_balanced(f),
    ):
        assert report.passed, report.to_json()
    for report in check_green_identities(f, n_points=100):
        assert report.passed, report.to_json()


def test_check_pullback_skips_poles():
    f = cubic_over_z()
    report = check_pullback(f, probes=[0, 0.5, 1 + 1j])
    assert report.details["skipped_probes"] == 1
    assert report.passed


def test_green_identity_names():
    names = [r.identity for r in check_green_identities(z2(), n_points=20)]
    assert names == ["green-invariance", "green-scaling", "green-lift-change"]


def test_brolin():
    assert brolin_capacity(z2()) == pytest.approx(1)
    assert brolin_capacity(two_z2()) == pytest.approx(0.5)
    cubic = RationalMap.polynomial([1, 0, 0, 4])
    assert brolin_capacity(cubic) == pytest.approx(0.5)
    for f in (z2(), two_z2(), basilica(), cubic):
        report = check_brolin(f)
        assert report.passed, report.to_json()
    with pytest.raises(NotPolynomialError):
        brolin_capacity(cubic_over_z())
    with pytest.raises(NotPolynomialError):
        check_brolin(cubic_over_z())


def test_resultant_product():
    assert resultant_product(z2()) == pytest.approx(1)
    assert resultant_product(two_z2()) == pytest.approx(4)
    assert resultant_product(cubic_over_z()) == pytest.approx(1)


def test_classify():
    assert classify(0.0) == POLYNOMIAL_CONSISTENT
    assert classify(0.1) == INCONCLUSIVE
    assert classify(0.5) == NON_POLYNOMIAL
    assert classify(0.1, low=0.2) == POLYNOMIAL_CONSISTENT


def test_discrimination_agrees():
    stat = LemniscateStat(level=1.0, deviation=0.0, n_samples=1)
    assert Discrimination(POLYNOMIAL_CONSISTENT, stat, True).agrees
    assert not Discrimination(INCONCLUSIVE, stat, True).agrees
    assert Discrimination(NON_POLYNOMIAL, stat, False).agrees
    assert not Discrimination(POLYNOMIAL_CONSISTENT, stat, False).agrees
    data = Discrimination(NON_POLYNOMIAL, stat, False).to_json()
    assert data["classification"] == NON_POLYNOMIAL
    assert data["deviation"] == 0.0


def test_lemniscate_of_polynomials():
    for f in (z2(), two_z2(), basilica()):
        mu = balanced_sample(f, depth=8)
        stat = lemniscate_stat(f, mu)
        assert stat.deviation < 1e-9
        assert stat.n_samples == mu.size
        result = discriminate_polynomial(f, mu=mu)
        assert result.classification == POLYNOMIAL_CONSISTENT
        assert result.agrees
        assert check_lemniscate(f, mu=mu).passed
    assert lemniscate_stat(z2(), balanced_sample(z2(), depth=4)).level == pytest.approx(1)


def test_lemniscate_of_non_polynomial():
    # F_0(1, z) = z, so the deviation is the spread of log|z| over the sample
    f = cubic_over_z()
    mu = DiscreteMeasure.from_affine([0.5, 2.0])
    stat = lemniscate_stat(f, mu)
    level = math.log(stat.level)
    assert stat.deviation == pytest.approx(
        max(abs(math.log(0.5) - level), abs(math.log(2.0) - level))
    )
    assert stat.deviation >= math.log(2)
    result = discriminate_polynomial(f, mu=mu)
    assert result.classification == NON_POLYNOMIAL
    assert result.agrees
    report = check_lemniscate(f, mu=mu)
    assert report.passed
    assert report.residual == pytest.approx(HIGH_THRESHOLD - stat.deviation)
    assert report.tolerance < 0


def test_run_suite():
    f = z2()
    reports = run_suite(f, which=["resultant-product", "green"], n_threads=2)
    names = [r.identity for r in reports]
    assert names == sorted(names)
    assert set(names) == {
        "resultant-product",
        "green-invariance",
        "green-scaling",
        "green-lift-change",
    }
    assert all(r.passed for r in reports)

    with pytest.raises(ValueError):
        run_suite(f, which="nope")


def test_run_suite_all_skips_brolin_for_rational_maps():
    reports = run_suite(cubic_over_z(), which=["resultant-product", "factorization"])
    assert "brolin" not in [r.identity for r in reports]
    assert "brolin" in CHECK_NAMES


def test_run_suite_all_on_z_squared():
    reports = run_suite(z2(), which="all", depth=10, count=1024, seed=7)
    names = {r.identity for r in reports}
    assert "brolin" in names
    assert "energy" in names
    assert "lemniscate" in names
    failed = [r.to_json() for r in reports if not r.passed]
    assert failed == []


def z2_plus_03i():
    return RationalMap.polynomial([0.3j, 0, 1])


def random_map(seed):
    rng = np.random.default_rng(seed)
    d = 2 + seed % 3
    num = rng.normal(size=d + 1) + 1j * rng.normal(size=d + 1)
    den = rng.normal(size=d + 1) + 1j * rng.normal(size=d + 1)
    return RationalMap.new(num, den)


@pytest.mark.parametrize("seed", range(50))
def test_identities_on_random_maps(seed):
    f = random_map(seed)
    assert f.degree == 2 + seed % 3
    for report in (
        check_resultant_product(f),
        check_factorization(f, seed=seed),
        check_pullback(f, seed=seed),
    ):
        assert report.passed, report.to_json()


@pytest.mark.parametrize("f", [z2(), basilica(), cubic_over_z(), random_map(2)])
def test_green_identities_use_every_point(f):
    reports = check_green_identities(f, n_points=500, seed=5)
    for report in reports:
        assert report.passed, report.to_json()
        assert report.details["n_points"] == 500
    assert reports[-1].identity == "green-lift-change"
    assert reports[-1].details["n_scales"] == 8


@pytest.mark.parametrize(
    "f,expected",
    [
        (two_z2(), -math.log(2)),
        (cubic_over_z(), 0.0),
    ],
)
def test_sampled_energy_matches_closed_form(f, expected):
    report = check_energy(f, count=4096, seed=11)
    assert report.passed, report.to_json()
    formula = report.details["formula"]
    assert formula == pytest.approx(expected, abs=1e-12)
    assert abs(report.details["sampled"] - formula) <= 0.05


@pytest.mark.parametrize("f", [z2_plus_03i(), cubic_over_z()])
def test_decomp_and_vconstant_at_depth_twelve(f):
    mu = balanced_sample(f, depth=12, method="tree")
    assert mu.provenance["depth"] == 12
    for report in (check_decomp(f, mu=mu), check_vconstant(f, mu=mu)):
        assert report.passed, report.to_json()


def test_discriminator_on_sampled_julia_sets():
    result = discriminate_polynomial(cubic_over_z())
    assert result.classification == NON_POLYNOMIAL
    assert result.stat.deviation > HIGH_THRESHOLD
    assert result.agrees

    for f in (z2_plus_03i(), basilica()):
        result = discriminate_polynomial(f)
        assert result.classification == POLYNOMIAL_CONSISTENT
        assert result.stat.deviation < LOW_THRESHOLD
        assert result.agrees


def test_lemniscate_report_agrees_with_classify():
    f = cubic_over_z()
    mu = DiscreteMeasure.from_affine([0.5, 2.0])
    dev = lemniscate_stat(f, mu).deviation
    assert classify(dev, high=dev) == INCONCLUSIVE
    assert not check_lemniscate(f, mu=mu, high=dev).passed
    assert check_lemniscate(f, mu=mu, high=np.nextafter(dev, 0.0)).passed

    f = z2()
    mu = balanced_sample(f, depth=4)
    dev = lemniscate_stat(f, mu).deviation
    assert classify(dev, low=dev) == INCONCLUSIVE
    assert not check_lemniscate(f, mu=mu, low=dev).passed
    assert check_lemniscate(f, mu=mu, low=dev + 1e-3).passed


if __name__ == "__main__":
    import os

    basename = os.path.basename(__file__)
    pytest.main([basename, "-s", "--tb=native"])
