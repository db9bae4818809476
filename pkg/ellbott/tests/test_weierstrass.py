# Tests for Weierstrass data, minimality and the Kodaira census

import numpy as np
import pytest

from .. import weierstrass
from ..weierstrass import WeierstrassData, classify_fibers, kodaira_type_from_orders
from ..exactpoly import INFINITE_ORDER


def _exception_message_starts_with(excinfo, message_body):
    return excinfo.value.args[0].startswith(message_body)


def _fiber_at(census, place_name):
    for fiber in census:
        if str(fiber.place) == place_name:
            return fiber
    raise AssertionError("No fiber over {} in {}".format(place_name, census))


@pytest.mark.parametrize('beta', [1, 2, 3])
def test_section_example(beta):
    """lambda = t^(4 beta), mu = t^(6 beta) + t is minimal with a type II fiber over t = 0"""
    w = weierstrass.section_example(beta)
    minimal, offending = weierstrass.is_minimal(w)
    assert minimal and offending == []

    census = classify_fibers(w)
    fiber = _fiber_at(census, "(t)")
    assert fiber.kodaira_type == 'II'
    assert (fiber.cluster.a, fiber.cluster.b, fiber.delta) == (4 * beta, 1, 2)
    assert census.has_type('II')
    assert census.discriminant_degree() == 12 * beta
    assert census.euler_sum() == 12 * beta


def test_singular_point_count():
    # Delta = t^2 (31 t^10 + 54 t^5 + 27): a cusp over t = 0 and ten nodal fibers
    census = classify_fibers(weierstrass.section_example(1))
    assert census.type_counts() == {'II': 1, 'I1': 10}
    assert census.singular_point_count() == 11

    # lambda = 0, mu = 1 + t^6: six cusps
    census = classify_fibers(WeierstrassData.from_coefficients(1, [], [1, 0, 0, 0, 0, 0, 1]))
    assert census.singular_point_count() == 6


def test_type_III_and_IV():
    # lambda = t (1 + t^3), mu = t^2 (1 + t^4)
    w = WeierstrassData.from_coefficients(1, [0, 1, 0, 0, 1], [0, 0, 1, 0, 0, 0, 1])
    fiber = _fiber_at(classify_fibers(w), "(t)")
    assert fiber.kodaira_type == 'III'
    assert (fiber.cluster.a, fiber.cluster.b, fiber.delta) == (1, 2, 3)

    # lambda = t^2 (1 + t^2), mu = t^2 (1 + t^4)
    w = WeierstrassData.from_coefficients(1, [0, 0, 1, 0, 1], [0, 0, 1, 0, 0, 0, 1])
    census = classify_fibers(w)
    fiber = _fiber_at(census, "(t)")
    assert fiber.kodaira_type == 'IV'
    assert fiber.delta == 4
    assert census.type_counts()['IV'] == 1


def test_zero_lambda():
    # lambda = 0, mu = 1 + t^6: Delta = 27 mu^2, six fibers of type II over the roots of mu
    w = WeierstrassData.from_coefficients(1, [], [1, 0, 0, 0, 0, 0, 1])
    census = classify_fibers(w)
    assert census.type_counts() == {'II': 6}
    for fiber in census:
        assert fiber.cluster.a == INFINITE_ORDER


def test_non_minimal_at_infinity():
    w = WeierstrassData.from_coefficients(1, [1], [1])
    minimal, offending = weierstrass.is_minimal(w)
    assert not minimal
    assert [str(p) for p in offending] == ["inf"]

    with pytest.raises(weierstrass.NotMinimal) as excinfo:
        classify_fibers(w)
    assert _exception_message_starts_with(excinfo, "Weierstrass data are not minimal at inf")
    assert excinfo.value.places[0].is_infinity


def test_non_reduced_fiber():
    # lambda = t^2, mu = t^3: I0* over t = 0 and over infinity
    w = WeierstrassData.from_coefficients(1, [0, 0, 1], [0, 0, 0, 1])
    with pytest.raises(weierstrass.NonReducedFiber) as excinfo:
        classify_fibers(w)
    assert excinfo.value.kodaira_type == 'I0*'
    assert str(excinfo.value.place) == "(t)"


def test_zero_discriminant():
    # 4 (-3)^3 + 27 (2)^2 = 0
    w = WeierstrassData.from_coefficients(1, [-3], [2])
    with pytest.raises(weierstrass.IdenticallyZeroDiscriminant) as excinfo:
        classify_fibers(w)
    assert _exception_message_starts_with(excinfo, "Discriminant 4*lambda^3 + 27*mu^2 is identically zero")


def test_degree_checks():
    with pytest.raises(ValueError) as excinfo:
        WeierstrassData.from_coefficients(1, [0, 0, 0, 0, 0, 1], [1])
    assert _exception_message_starts_with(excinfo, "Affine part of degree 5 does not fit")
    with pytest.raises(ValueError):
        WeierstrassData.from_coefficients(0, [1], [1])


def test_kodaira_table():
    assert kodaira_type_from_orders(0, 0, 0) == 'I0'
    assert kodaira_type_from_orders(0, 0, 5) == 'I5'
    assert kodaira_type_from_orders(4, 1, 2) == 'II'
    assert kodaira_type_from_orders(1, INFINITE_ORDER, 3) == 'III'
    assert kodaira_type_from_orders(INFINITE_ORDER, 2, 4) == 'IV'
    assert kodaira_type_from_orders(2, 3, 8) == 'I2*'
    assert kodaira_type_from_orders(3, 4, 8) == 'IV*'
    assert kodaira_type_from_orders(3, 5, 9) == 'III*'
    assert kodaira_type_from_orders(4, 5, 10) == 'II*'
    assert kodaira_type_from_orders(4, 6, 12) is None
    assert weierstrass.euler_number('I7') == 7
    assert weierstrass.euler_number('IV') == 4


def _random_minimal_models(count, seed):
    rng = np.random.default_rng(seed)
    models = []
    attempts = 0
    while len(models) < count and attempts < 10 * count:
        attempts += 1
        beta = int(rng.integers(1, 4))
        w = weierstrass.random_weierstrass(beta, rng, bound=5)
        try:
            census = classify_fibers(w)
        except (weierstrass.NotMinimal, weierstrass.NonReducedFiber, weierstrass.IdenticallyZeroDiscriminant):
            continue
        models.append((w, census))
    return models


def test_census_invariants_random():
    models = _random_minimal_models(100, seed=12345)
    assert len(models) == 100
    for w, census in models:
        assert census.discriminant_degree() == 12 * w.beta
        assert census.euler_sum() == 12 * w.beta
        assert census.scheme_degree() == 12 * w.beta
        assert census.singular_point_count() == sum(
            count * (int(t[1:]) if t[1:].isdigit() else 1) for t, count in census.type_counts().items())


def test_coordinate_change_invariance():
    for w, census in _random_minimal_models(10, seed=7):
        assert classify_fibers(w.shifted(3)).multiset() == census.multiset()
        assert classify_fibers(w.scaled("2/3")).multiset() == census.multiset()
