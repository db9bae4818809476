# Tests for exact polynomial arithmetic and place discovery

from fractions import Fraction

import numpy as np
import pytest

from .. import exactpoly
from ..exactpoly import UniPoly, BinaryForm, Place


def _exception_message_starts_with(excinfo, message_body):
    return excinfo.value.args[0].startswith(message_body)


def test_parse_rational():
    assert exactpoly.parse_rational(3) == 3
    assert exactpoly.parse_rational("-3/6") == Fraction(-1, 2)
    assert exactpoly.parse_rational(" 7 ") == 7

    for bad in ("1/0", "0.5", "x", 0.5, True):
        with pytest.raises(ValueError):
            exactpoly.parse_rational(bad)

    with pytest.raises(ValueError) as excinfo:
        exactpoly.parse_rational("1/0")
    assert _exception_message_starts_with(excinfo, "Coefficient has a zero denominator")


def test_unipoly_basics():
    p = UniPoly([1, 0, 1])     # 1 + t^2
    q = UniPoly([-1, 1])       # t - 1
    assert p.degree == 2
    assert UniPoly([0, 0]).degree == -1
    assert UniPoly([0, 0]).coefficients == ()
    assert (p * q).coefficients == (-1, 1, -1, 1)
    assert (p + q) == UniPoly([0, 1, 1])
    assert p - p == UniPoly()
    assert p(2) == 5
    assert p.derivative() == UniPoly([0, 2])
    assert q.shift(1) == UniPoly([0, 1])
    assert UniPoly(["1/2", 1]).monic() == UniPoly(["1/2", 1])
    assert UniPoly([1, 2]).monic() == UniPoly(["1/2", 1])


def test_division():
    p = UniPoly([-1, 0, 1])    # t^2 - 1
    q = UniPoly([1, 1])
    assert p.exact_div(q) == UniPoly([-1, 1])
    assert q.divides(p)
    quotient, remainder = divmod(UniPoly([1, 0, 1]), q)
    assert quotient * q + remainder == UniPoly([1, 0, 1])
    assert remainder == UniPoly([2])

    with pytest.raises(exactpoly.DivisionNotExact) as excinfo:
        UniPoly([1, 0, 1]).exact_div(q)
    assert _exception_message_starts_with(excinfo, "Division is not exact")

    assert exactpoly.poly_arith(p, q, 'exact_div') == UniPoly([-1, 1])
    with pytest.raises(ValueError):
        exactpoly.poly_arith(p, q, 'pow')


def test_gcd_and_squarefree():
    a = UniPoly([-1, 1]) ** 2 * UniPoly([2, 1])
    b = UniPoly([-1, 1]) * UniPoly([3, 1])
    assert a.gcd(b) == UniPoly([-1, 1])
    assert not a.is_squarefree()
    assert b.is_squarefree()

    decomposition = exactpoly.squarefree_decomposition(a * 5)
    assert sorted((g.coefficients, k) for g, k in decomposition) == [((-1, 1), 2), ((2, 1), 1)]


def test_vanishing_order_and_infinity():
    # t^2 (t - 1) as a form of degree 5 vanishes to order 2 at infinity
    f = BinaryForm(5, UniPoly([0, 0, -1, 1]))
    assert f.order_at(Place.finite(UniPoly([0, 1]))) == 2
    assert f.order_at(Place.finite(UniPoly([-1, 1]))) == 1
    assert f.order_at(Place.finite(UniPoly([1, 1]))) == 0
    assert f.order_at(Place.infinity()) == 2
    assert BinaryForm(3, UniPoly()).order_at_infinity == exactpoly.INFINITE_ORDER

    with pytest.raises(exactpoly.IdenticallyZeroForm):
        exactpoly.vanishing_order(BinaryForm(3, UniPoly()), Place.infinity())

    with pytest.raises(ValueError) as excinfo:
        BinaryForm(1, UniPoly([0, 0, 1]))
    assert _exception_message_starts_with(excinfo, "Affine part of degree 2 does not fit")


def test_place_validation():
    with pytest.raises(ValueError):
        Place.finite(UniPoly([0, 2]))            # not monic
    with pytest.raises(ValueError):
        Place.finite(UniPoly([0, 0, 1]))         # not squarefree
    assert Place.finite(UniPoly([1, 0, 1])).residue_degree == 2
    assert str(Place.infinity()) == "inf"


def test_coprime_refinement_irreducible_place():
    # (t^2 + 1)^2 and (t^2 + 1) t: the quadratic place is kept whole, never factored
    quadratic = UniPoly([1, 0, 1])
    f = BinaryForm(4, quadratic ** 2)
    g = BinaryForm(4, quadratic * UniPoly([0, 1]))
    clusters = exactpoly.coprime_refinement([f, g])
    by_place = {str(c.place): c.orders for c in clusters}
    assert by_place == {"(t)": (0, 1), "(t**2 + 1)": (2, 1), "inf": (0, 1)}


def test_degree_order_sum_random():
    rng = np.random.default_rng(2024)
    for trial in range(30):
        degree = int(rng.integers(1, 9))
        coefficients = [int(c) for c in rng.integers(-3, 4, size=int(rng.integers(1, degree + 2)))]
        # repeated roots on purpose
        form = BinaryForm(degree, UniPoly(coefficients))
        if form.is_zero:
            continue
        squared = form * form
        for h in (form, squared):
            clusters = exactpoly.coprime_refinement([h])
            assert exactpoly.degree_order_sum(clusters) == h.degree


def test_coprime_refinement_section_example():
    # lambda = t^4 and mu = t^6 + t as forms of degree 4 and 6: t^5 + 1 stays one place
    clusters = exactpoly.coprime_refinement([BinaryForm(4, UniPoly.monomial(4)),
                                             BinaryForm(6, UniPoly([0, 1, 0, 0, 0, 0, 1]))])
    by_place = {c.place: c.orders for c in clusters}
    assert by_place == {Place.finite(UniPoly([0, 1])): (4, 1),
                        Place.finite(UniPoly([1, 0, 0, 0, 0, 1])): (0, 1)}
    assert Place.finite(UniPoly([1, 0, 0, 0, 0, 1])).residue_degree == 5


def _random_form(rng, factors):
    """Product of a few factors drawn from a small pool, so that forms share roots."""
    affine = UniPoly([int(rng.integers(1, 4))])
    for i in rng.integers(0, len(factors), size=int(rng.integers(1, 4))):
        affine = affine * factors[i]
    return BinaryForm(affine.degree + int(rng.integers(0, 3)), affine)


def test_coprime_refinement_random():
    rng = np.random.default_rng(31337)
    factors = [UniPoly([0, 1]), UniPoly([-1, 1]), UniPoly([2, 1]), UniPoly([1, 0, 1]), UniPoly([-2, 0, 1]),
               UniPoly([1, 1, 1]), UniPoly([-1, 1]) * UniPoly([2, 1])]
    for trial in range(40):
        forms = [_random_form(rng, factors) for _ in range(int(rng.integers(2, 5)))]
        clusters = exactpoly.coprime_refinement(forms)

        finite = [c.place.polynomial for c in clusters if not c.place.is_infinity]
        for i, g in enumerate(finite):
            assert g.is_monic() and g.is_squarefree()
            for h in finite[i + 1:]:
                assert g.gcd(h).degree == 0, (g, h)

        for index, form in enumerate(forms):
            assert exactpoly.degree_order_sum(clusters, index) == form.degree

        # orders add under multiplication of forms
        f, g = forms[0], forms[1]
        for c in clusters:
            assert (exactpoly.vanishing_order(f * g, c.place) ==
                    exactpoly.vanishing_order(f, c.place) + exactpoly.vanishing_order(g, c.place))
