import math

import numpy as np
import pytest

from biunivalent import phi as phimod
from biunivalent.errors import B1NotPositive, InvalidProfile, NoClosedForm, NoRegionPredicate

BUILTINS = [
    phimod.janowski(1.0, -1.0),
    phimod.janowski(0.5, -0.5),
    phimod.janowski(1.0, 0.0),
    phimod.janowski(0.3, -1.0),
    phimod.power(0.5),
    phimod.power(1.0),
    phimod.power(0.2),
    phimod.order_beta(0.0),
    phimod.order_beta(0.6),
    phimod.sqrt_lemniscate(),
]


@pytest.mark.parametrize(
    "profile, expected",
    [
        (phimod.power(1.0), (2.0, 2.0)),
        (phimod.order_beta(0.0), (2.0, 2.0)),
        (phimod.sqrt_lemniscate(), (0.5, -0.125)),
        (phimod.janowski(1.0, -1.0), (2.0, 2.0)),
        (phimod.custom(1.0, 0.5), (1.0, 0.5)),
    ],
)
def test_coefficients(profile, expected):
    assert phimod.coefficients(profile) == pytest.approx(expected, abs=1e-15)


def test_region_examples():
    assert phimod.region_contains(phimod.order_beta(0.0), 1 + 0j)
    assert not phimod.region_contains(phimod.sqrt_lemniscate(), 1.5)
    assert not phimod.region_contains(phimod.power(0.5), 1j)


def test_region_boundary_is_outside():
    assert not phimod.region_contains(phimod.order_beta(0.25), 0.25 + 3j)
    assert not phimod.region_contains(phimod.janowski(1.0, 0.0), 2.0)
    assert not phimod.region_contains(phimod.sqrt_lemniscate(), math.sqrt(2.0))


def test_evaluate_examples():
    assert complex(phimod.evaluate(phimod.order_beta(0.0), 0)) == pytest.approx(1.0)
    assert complex(phimod.evaluate(phimod.janowski(1.0, -1.0), 0.5)) == pytest.approx(3.0)
    assert complex(phimod.evaluate(phimod.sqrt_lemniscate(), 0)) == pytest.approx(1.0)


def test_validate_examples():
    with pytest.raises(InvalidProfile):
        phimod.validate(phimod.PhiProfile("power", (("alpha", 1.5),)))
    with pytest.raises(B1NotPositive):
        phimod.validate(phimod.custom(-1.0, 0.0))
    assert phimod.validate(phimod.janowski(1.0, -1.0)) is None


@pytest.mark.parametrize(
    "bad",
    [
        ("janowski", (("A", 0.5), ("B", 0.5))),
        ("janowski", (("A", 1.2), ("B", 0.0))),
        ("power", (("alpha", 0.0),)),
        ("beta", (("beta", 1.0),)),
        ("beta", (("beta", -0.1),)),
    ],
)
def test_validate_rejects_out_of_range(bad):
    with pytest.raises(InvalidProfile):
        phimod.validate(phimod.PhiProfile(*bad))


def test_custom_profile_limits():
    c = phimod.custom(2.0, 1.5)
    with pytest.raises(NoRegionPredicate):
        phimod.region_contains(c, 1.0)
    with pytest.raises(NoClosedForm):
        phimod.evaluate(c, 0.1)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("janowski:A=1,B=-1", phimod.janowski(1.0, -1.0)),
        ("power:alpha=0.5", phimod.power(0.5)),
        ("beta:beta=0.25", phimod.order_beta(0.25)),
        ("sqrt", phimod.sqrt_lemniscate()),
        ("custom:b1=2,b2=1.5", phimod.custom(2.0, 1.5)),
    ],
)
def test_parse_profile(text, expected):
    parsed = phimod.parse_profile(text)
    assert parsed == expected
    assert phimod.parse_profile(parsed.label()) == parsed


@pytest.mark.parametrize("text", ["power", "power:alpha=x", "beta:gamma=0.1", "nope:a=1", "power:alpha=2"])
def test_parse_profile_rejects(text):
    with pytest.raises(InvalidProfile):
        phimod.parse_profile(text)


@pytest.mark.parametrize("profile", BUILTINS, ids=str)
def test_image_of_disk_lies_in_region(profile, rng):
    r = 0.999 * np.sqrt(rng.uniform(0, 1, 512))
    z = r * np.exp(1j * rng.uniform(0, 2 * np.pi, 512))
    assert np.all(phimod.region_contains(profile, phimod.evaluate(profile, z)))


@pytest.mark.parametrize("profile", BUILTINS, ids=str)
def test_finite_differences_recover_coefficients(profile):
    b1, b2 = phimod.coefficients(profile)
    h = 1e-5
    first = (phimod.evaluate(profile, h) - phimod.evaluate(profile, -h)) / (2 * h)
    assert abs(first - b1) <= 1e-6
    h = 1e-4
    second = (phimod.evaluate(profile, h) - 2 * phimod.evaluate(profile, 0) + phimod.evaluate(profile, -h)) / h**2
    assert abs(second / 2 - b2) <= 1e-6


@pytest.mark.parametrize("profile", BUILTINS, ids=str)
def test_margin_sign_matches_predicate(profile, rng):
    w = rng.normal(1.0, 1.5, 4000) + 1j * rng.normal(0.0, 1.5, 4000)
    margin = phimod.region_margin(profile, w)
    inside = phimod.region_contains(profile, w)
    assert np.array_equal(margin > 0, inside)
