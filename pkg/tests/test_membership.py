import math

import numpy as np
import pytest

from biunivalent import phi as phimod
from biunivalent.bounds import ClassSpec
from biunivalent.errors import DegenerateDisk, InvalidBracket, NoRegionPredicate
from biunivalent.membership import (
    AnalyticPair,
    Disk,
    FnuSpec,
    bound_consistency_check,
    check_membership,
    disk_in_region,
    fnu_image_disk,
    membership_threshold,
)
from biunivalent.series import TruncatedSeries

BETA0 = phimod.order_beta(0.0)
R1 = ClassSpec("r_sigma", BETA0, 1.0)
STAR = ClassSpec("bi_starlike", BETA0)
LEMN = ClassSpec("r_sigma", phimod.sqrt_lemniscate(), 0.0)
SUFFICIENT = math.sqrt(2) * (math.sqrt(2) + 1)


def test_image_disk_examples():
    d = fnu_image_disk(2.0)
    assert (d.centre, d.radius) == pytest.approx((4 / 3, 2 / 3))
    d = fnu_image_disk(math.sqrt(2), "derivative")
    assert (d.centre, d.radius) == pytest.approx((2, math.sqrt(2)))
    assert d.squared
    assert d.boundary(4096).real.min() == pytest.approx(0.0, abs=1e-6)
    d = fnu_image_disk(1e8)
    assert d.centre == pytest.approx(1.0) and d.radius < 1e-7
    assert fnu_image_disk(2.0, "starlike_ratio") == fnu_image_disk(2.0, "ratio")


def test_image_disk_errors():
    with pytest.raises(DegenerateDisk):
        fnu_image_disk(1.0)
    with pytest.raises(DegenerateDisk):
        FnuSpec(0.5)
    with pytest.raises(ValueError):
        fnu_image_disk(2.0, "bogus")


def test_ratio_disk_matches_mobius_image(rng):
    for nu in rng.uniform(1.05, 6, 10):
        theta = 2 * np.pi * np.arange(1024) / 1024
        direct = nu / (nu - np.exp(1j * theta))
        d = fnu_image_disk(nu)
        assert np.abs(np.abs(direct - d.centre) - d.radius).max() <= 1e-10


def test_disk_in_region_examples():
    assert disk_in_region(Disk(4 / 3, 2 / 3), BETA0)
    assert disk_in_region(fnu_image_disk(math.sqrt(2), "derivative"), BETA0)
    assert not disk_in_region(fnu_image_disk(1.4, "derivative"), BETA0)
    assert disk_in_region(fnu_image_disk(SUFFICIENT), phimod.sqrt_lemniscate())
    assert not disk_in_region(fnu_image_disk(3.0), phimod.sqrt_lemniscate())


def test_disk_in_region_guards():
    with pytest.raises(NoRegionPredicate):
        disk_in_region(Disk(1, 0.1), phimod.custom(1, 0))
    with pytest.raises(ValueError):
        disk_in_region(Disk(1, 0.1), BETA0, samples=16)


@pytest.mark.parametrize(
    "nu, spec, expected",
    [(1.5, R1, True), (1.2, R1, False), (1.2, STAR, True), (math.sqrt(2), R1, True), (1.41, R1, False)],
)
def test_check_membership_examples(nu, spec, expected):
    verdict = check_membership(FnuSpec(nu), spec)
    assert verdict.verdict is expected
    assert (verdict.margin >= -1e-9) is expected


def test_check_membership_custom_phi():
    with pytest.raises(NoRegionPredicate):
        check_membership(FnuSpec(2.0), ClassSpec("r_sigma", phimod.custom(1, 0), 0.0))


def test_series_pair_matches_closed_form():
    nu = 3.0
    f = TruncatedSeries([nu ** -k for k in range(10)])
    pair = AnalyticPair.from_series(f)
    radii = (0.5, 0.7)
    v_series = check_membership(pair, R1, radii=radii, angles=512)
    v_exact = check_membership(FnuSpec(nu), R1, radii=radii, angles=512)
    assert v_series.verdict and v_exact.verdict
    assert v_series.margin == pytest.approx(v_exact.margin, abs=1e-4)


def test_threshold_examples():
    assert membership_threshold(R1, 1.01, 3.0) == pytest.approx(math.sqrt(2), abs=1e-6)
    assert membership_threshold(STAR, 1.0001, 3.0) == 1.0001
    assert membership_threshold(LEMN, 1.01, 5.0) <= SUFFICIENT + 1e-6


def test_threshold_bracket_errors():
    with pytest.raises(InvalidBracket):
        membership_threshold(R1, 1.01, 1.2)
    with pytest.raises(InvalidBracket):
        membership_threshold(R1, 3.0, 2.0)


@pytest.mark.parametrize(
    "nu, spec",
    [(1.5, R1), (1.2, STAR), (3.5, LEMN)],
)
def test_bound_consistency_examples(nu, spec):
    assert bound_consistency_check(spec, FnuSpec(nu)).ok


@pytest.mark.parametrize("spec", [R1, STAR, LEMN, ClassSpec("r_sigma", phimod.power(0.5), 2.5)])
def test_members_respect_theorem_bounds(spec):
    for nu in np.linspace(1.02, 5, 200):
        if check_membership(FnuSpec(nu), spec, angles=256).verdict:
            assert bound_consistency_check(spec, FnuSpec(nu)).ok


def test_margin_monotone_in_nu():
    margins = [check_membership(FnuSpec(nu), R1, angles=512).margin for nu in np.linspace(1.05, 5, 60)]
    assert np.all(np.diff(margins) >= -1e-9)


def test_verdict_serialises():
    d = check_membership(FnuSpec(2.0), R1).as_dict()
    assert set(d) == {"function", "class", "verdict", "margin", "worst_point"}
