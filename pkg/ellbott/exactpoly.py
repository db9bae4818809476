"""
Exact polynomial arithmetic on the base line

Coefficients are `fractions.Fraction` values and the heavy lifting (division,
gcd, squarefree decomposition) is delegated to `sympy.Poly` over QQ. A binary
form of degree d is stored through its affine part in the chart s = 1, so its
order of vanishing at infinity is the degree deficit d - deg(affine part).

Places of the line are discovered without factoring: the squarefree parts of all
forms are refined into a pairwise coprime basis, and on every basis element each
form has a constant order of vanishing.
"""

import logging
import math
import re
from fractions import Fraction

import sympy
from sympy import Poly, QQ

__all__ = ['Rational', 'parse_rational', 'UniPoly', 'BinaryForm', 'Place', 'PlaceCluster',
           'INFINITE_ORDER', 'DivisionNotExact', 'IdenticallyZeroForm',
           'poly_arith', 'vanishing_order', 'coprime_refinement', 'squarefree_decomposition',
           'degree_order_sum']

_log = logging.getLogger('ellbott')

Rational = Fraction

# order of vanishing of an identically zero form; compares correctly with integers
INFINITE_ORDER = math.inf

_T = sympy.Symbol('t')
_RATIONAL_RE = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$')


class DivisionNotExact(ArithmeticError):
    pass


class IdenticallyZeroForm(ValueError):
    pass


def parse_rational(value):
    """Convert an integer or an integer/"p/q" string to an exact `Rational`.

    Floats are refused, since a float coefficient has usually been rounded already.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("Coefficient must be an integer or a 'p/q' string, not a boolean: {!r}".format(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if match is None:
            raise ValueError("Coefficient must be an integer or a 'p/q' string: {!r}".format(value))
        numerator = int(match.group(1))
        denominator = int(match.group(2)) if match.group(2) is not None else 1
        if denominator == 0:
            raise ValueError("Coefficient has a zero denominator: {!r}".format(value))
        return Fraction(numerator, denominator)
    raise ValueError("Coefficient must be an integer or a 'p/q' string, got {} {!r}".format(
        type(value).__name__, value))


def _to_sympy(c):
    return sympy.Rational(c.numerator, c.denominator)


def _to_fraction(c):
    return Fraction(int(c.p), int(c.q))


class UniPoly(object):
    """ Univariate polynomial in the affine coordinate t with rational coefficients.

    Parameters
    ----------
    coefficients : iterable
        Coefficients from the constant term upwards. Trailing zeros are dropped,
        so the zero polynomial has an empty coefficient tuple.
    """

    def __init__(self, coefficients=()):
        if isinstance(coefficients, Poly):
            self._poly = coefficients
        else:
            coeffs = [parse_rational(c) for c in coefficients]
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            rep = [_to_sympy(c) for c in reversed(coeffs)] or [sympy.Integer(0)]
            self._poly = Poly.from_list(rep, _T, domain=QQ)

    @classmethod
    def monomial(cls, degree, coefficient=1):
        return cls([0] * degree + [coefficient])

    @classmethod
    def constant(cls, value):
        return cls([value])

    @property
    def coefficients(self):
        if self._poly.is_zero:
            return ()
        return tuple(_to_fraction(c) for c in reversed(self._poly.all_coeffs()))

    @property
    def degree(self):
        """Degree of the polynomial; -1 for the zero polynomial."""
        if self._poly.is_zero:
            return -1
        return int(self._poly.degree())

    @property
    def is_zero(self):
        return self._poly.is_zero

    @property
    def leading_coefficient(self):
        if self.is_zero:
            return Fraction(0)
        return _to_fraction(self._poly.LC())

    def as_poly(self):
        return self._poly

    def __add__(self, other):
        return UniPoly(self._poly + _coerce(other)._poly)

    __radd__ = __add__

    def __sub__(self, other):
        return UniPoly(self._poly - _coerce(other)._poly)

    def __rsub__(self, other):
        return UniPoly(_coerce(other)._poly - self._poly)

    def __mul__(self, other):
        return UniPoly(self._poly * _coerce(other)._poly)

    __rmul__ = __mul__

    def __neg__(self):
        return UniPoly(-self._poly)

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("Polynomial exponent must be a nonnegative integer")
        return UniPoly(self._poly ** exponent)

    def __divmod__(self, other):
        other = _coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("Polynomial division by the zero polynomial")
        quotient, remainder = self._poly.div(other._poly)
        return UniPoly(quotient), UniPoly(remainder)

    def exact_div(self, other):
        quotient, remainder = divmod(self, other)
        if not remainder.is_zero:
            raise DivisionNotExact("Division is not exact: {} does not divide {} (remainder {})".format(
                other, self, remainder))
        return quotient

    def divides(self, other):
        """True if self divides other exactly."""
        return divmod(_coerce(other), self)[1].is_zero

    def gcd(self, other):
        return UniPoly(self._poly.gcd(_coerce(other)._poly))

    def derivative(self):
        return UniPoly(self._poly.diff(_T))

    def shift(self, c):
        """Return p(t + c)."""
        return UniPoly(self._poly.shift(_to_sympy(parse_rational(c))))

    def monic(self):
        if self.is_zero:
            return self
        return UniPoly(self._poly.monic())

    def is_monic(self):
        return not self.is_zero and self.leading_coefficient == 1

    def is_squarefree(self):
        if self.degree < 1:
            return True
        return self.gcd(self.derivative()).degree == 0

    def __call__(self, value):
        result = self._poly.eval(_to_sympy(parse_rational(value)))
        return _to_fraction(sympy.Rational(result))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly.constant(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(('UniPoly', self.coefficients))

    def __repr__(self):
        return "UniPoly({})".format([str(c) for c in self.coefficients])

    def __str__(self):
        if self.is_zero:
            return "0"
        return str(self._poly.as_expr())

    def sort_key(self):
        return (self.degree, tuple(self.coefficients))


def _coerce(value):
    if isinstance(value, UniPoly):
        return value
    return UniPoly.constant(value)


class BinaryForm(object):
    """ Homogeneous form of degree ``degree`` on the projective line, given by its affine part.

    Parameters
    ----------
    degree : int
        Degree d of the form, i.e. the line bundle O(d) it is a section of.
    affine_part : UniPoly or iterable of coefficients
        Dehomogenization at s = 1, low to high in t. Its degree must not exceed d.
    """

    def __init__(self, degree, affine_part):
        if not isinstance(degree, int) or isinstance(degree, bool) or degree < 0:
            raise ValueError("Form degree must be a nonnegative integer, got {!r}".format(degree))
        if not isinstance(affine_part, UniPoly):
            affine_part = UniPoly(affine_part)
        if affine_part.degree > degree:
            raise ValueError("Affine part of degree {} does not fit in a form of degree {}".format(
                affine_part.degree, degree))
        self.degree = degree
        self.affine_part = affine_part

    @property
    def is_zero(self):
        return self.affine_part.is_zero

    @property
    def order_at_infinity(self):
        if self.is_zero:
            return INFINITE_ORDER
        return self.degree - self.affine_part.degree

    def __add__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError("Cannot add forms of degrees {} and {}".format(self.degree, other.degree))
        return BinaryForm(self.degree, self.affine_part + other.affine_part)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return BinaryForm(self.degree, -self.affine_part)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            return BinaryForm(self.degree + other.degree, self.affine_part * other.affine_part)
        return BinaryForm(self.degree, self.affine_part * parse_rational(other))

    def __rmul__(self, other):
        return self * other

    def __pow__(self, exponent):
        return BinaryForm(self.degree * exponent, self.affine_part ** exponent)

    def shift(self, c):
        """Change of affine coordinate t -> t + c; the order at infinity is unchanged."""
        return BinaryForm(self.degree, self.affine_part.shift(c))

    def order_at(self, place):
        return vanishing_order(self, place)

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.degree == other.degree and self.affine_part == other.affine_part

    def __hash__(self):
        return hash(('BinaryForm', self.degree, self.affine_part))

    def __repr__(self):
        return "BinaryForm({}, {})".format(self.degree, self.affine_part)


class Place(object):
    """ Closed point locus of the projective line.

    A finite place is the zero set of a monic squarefree polynomial (not
    necessarily irreducible; all its geometric points share the local invariants
    recorded with it). The point at infinity is ``Place.infinity()``.
    """

    FINITE = 'finite'
    INFINITY = 'infinity'

    def __init__(self, kind, polynomial=None):
        if kind == Place.INFINITY:
            self.kind = kind
            self.polynomial = None
            return
        if kind != Place.FINITE:
            raise ValueError("Place kind must be 'finite' or 'infinity', got {!r}".format(kind))
        if not isinstance(polynomial, UniPoly):
            polynomial = UniPoly(polynomial)
        if polynomial.degree < 1 or not polynomial.is_monic() or not polynomial.is_squarefree():
            raise ValueError("A finite place needs a monic nonconstant squarefree polynomial, got {}".format(
                polynomial))
        self.kind = kind
        self.polynomial = polynomial

    @classmethod
    def finite(cls, polynomial):
        return cls(cls.FINITE, polynomial)

    @classmethod
    def infinity(cls):
        return cls(cls.INFINITY)

    @property
    def is_infinity(self):
        return self.kind == Place.INFINITY

    @property
    def residue_degree(self):
        return 1 if self.is_infinity else self.polynomial.degree

    def __eq__(self, other):
        if not isinstance(other, Place):
            return NotImplemented
        return self.kind == other.kind and self.polynomial == other.polynomial

    def __hash__(self):
        return hash((self.kind, self.polynomial))

    def sort_key(self):
        if self.is_infinity:
            return (1, ())
        return (0, self.polynomial.sort_key())

    def __str__(self):
        if self.is_infinity:
            return "inf"
        return "({})".format(self.polynomial)

    def __repr__(self):
        return "Place({})".format(self)


class PlaceCluster(object):
    """ A place together with the vanishing orders of a list of forms there.

    For Weierstrass data the orders are (a, b, delta) = orders of (lambda, mu, Delta),
    available under those names.
    """

    def __init__(self, place, orders):
        self.place = place
        self.orders = tuple(orders)

    @property
    def a(self):
        return self.orders[0]

    @property
    def b(self):
        return self.orders[1]

    @property
    def delta(self):
        return self.orders[2]

    def __eq__(self, other):
        if not isinstance(other, PlaceCluster):
            return NotImplemented
        return self.place == other.place and self.orders == other.orders

    def __hash__(self):
        return hash((self.place, self.orders))

    def __repr__(self):
        return "PlaceCluster({}, orders={})".format(self.place, self.orders)


def poly_arith(p, q, op):
    """ Exact arithmetic on two polynomials.

    Parameters
    ----------
    p, q : UniPoly
    op : str
        One of 'add', 'sub', 'mul' or 'exact_div'.

    Returns
    -------
    UniPoly
    """
    if op == 'add':
        return p + q
    elif op == 'sub':
        return p - q
    elif op == 'mul':
        return p * q
    elif op == 'exact_div':
        return p.exact_div(q)
    raise ValueError("Unknown polynomial operation {!r}; expected add, sub, mul or exact_div".format(op))


def vanishing_order(form, place):
    """ Order of vanishing of a binary form at a place.

    Parameters
    ----------
    form : BinaryForm
        Must not be identically zero.
    place : Place

    Returns
    -------
    int
        Largest k such that the k-th power of the place's polynomial divides the affine
        part, or the degree deficit at infinity.
    """
    if form.is_zero:
        raise IdenticallyZeroForm("Vanishing order is undefined for an identically zero form")
    if place.is_infinity:
        return form.order_at_infinity
    order = 0
    remainder = form.affine_part
    while True:
        quotient, rest = divmod(remainder, place.polynomial)
        if not rest.is_zero:
            return order
        order += 1
        remainder = quotient


def squarefree_decomposition(p):
    """Return [(g, k), ...] with p = const * prod g**k, the g monic, squarefree and pairwise coprime."""
    if p.is_zero:
        raise IdenticallyZeroForm("The zero polynomial has no squarefree decomposition")
    _, factors = p.as_poly().sqf_list()
    return [(UniPoly(g).monic(), int(k)) for g, k in factors]


def _gcd_free_basis(polys):
    """Refine squarefree polynomials into a pairwise coprime basis with the same zero set."""
    basis = []
    pending = [p for p in polys if p.degree >= 1]
    while pending:
        q = pending.pop()
        if q.degree < 1:
            continue
        for i, b in enumerate(basis):
            g = b.gcd(q)
            if g.degree >= 1:
                basis.pop(i)
                pending.extend([b.exact_div(g), g, q.exact_div(g)])
                break
        else:
            basis.append(q.monic())
    return sorted(basis, key=UniPoly.sort_key)


def coprime_refinement(forms):
    """ Discover the places where a list of forms vanish, without factoring.

    Parameters
    ----------
    forms : list of BinaryForm
        None of them may be identically zero.

    Returns
    -------
    list of PlaceCluster
        One cluster per element of a pairwise coprime, squarefree, monic basis of the
        zero loci (plus infinity when some form vanishes there), carrying the order
        of every input form on it.
    """
    for form in forms:
        if form.is_zero:
            raise IdenticallyZeroForm("Cannot refine the zero locus of an identically zero form")

    parts = []
    for form in forms:
        if form.affine_part.degree >= 1:
            parts.extend(g for g, _ in squarefree_decomposition(form.affine_part))
    basis = _gcd_free_basis(parts)
    _log.debug("Coprime refinement of {} forms gave {} finite places".format(len(forms), len(basis)))

    clusters = []
    for g in basis:
        place = Place.finite(g)
        clusters.append(PlaceCluster(place, [vanishing_order(f, place) for f in forms]))
    if any(f.order_at_infinity > 0 for f in forms):
        place = Place.infinity()
        clusters.append(PlaceCluster(place, [vanishing_order(f, place) for f in forms]))
    return clusters


def degree_order_sum(clusters, index=0):
    """Sum of residue_degree * order over clusters, for the form at position ``index``."""
    return sum(c.place.residue_degree * c.orders[index] for c in clusters)
