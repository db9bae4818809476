"""
Intersection numbers on surfaces inside P^1 x P^n

The cohomology ring of P^1 x P^n is Z[D, B] / (D^2, B^(n+1)), with D the class of
a fiber of the first projection and B the pullback of a hyperplane class. A class
is stored as a numpy object array of Python ints ``c[e1, e2]``, shape (2, n + 1), the
coefficient of D^e1 B^e2. Surfaces are either complete intersections of
hypersurfaces in P^1 x P^n, capped with the product of their classes, or double
covers of P^1 x P^1, for which intersection numbers of pulled-back classes are
twice those downstairs.
"""

import logging

import numpy as np

__all__ = ['AmbientRing', 'CycleClass', 'SubvarietySpec', 'DegreeMismatch', 'intersection_number',
           'self_intersection', 'double_cover_spec', 'hypersurface_spec', 'complete_intersection_spec']

_log = logging.getLogger('ellbott')

_as_python_ints = np.frompyfunc(int, 1, 1)


class DegreeMismatch(ValueError):
    pass


class AmbientRing(object):
    """ Cohomology ring of P^1 x P^n.

    Parameters
    ----------
    n : int
        Dimension of the second factor.
    """

    def __init__(self, n):
        if not isinstance(n, (int, np.integer)) or n < 1:
            raise ValueError("Second factor dimension must be a positive integer, got {!r}".format(n))
        self.n = int(n)

    @property
    def shape(self):
        return (2, self.n + 1)

    @property
    def top_degree(self):
        return self.n + 1

    def zero(self):
        return CycleClass(self, np.zeros(self.shape, dtype=object))

    def monomial(self, e1, e2, coefficient=1):
        coefficients = np.zeros(self.shape, dtype=object)
        if e1 <= 1 and e2 <= self.n:
            coefficients[e1, e2] = int(coefficient)
        return CycleClass(self, coefficients)

    def one(self):
        return self.monomial(0, 0)

    @property
    def D(self):
        return self.monomial(1, 0)

    @property
    def B(self):
        return self.monomial(0, 1)

    def divisor(self, d_coefficient, b_coefficient):
        """The class d D + b B, i.e. of a hypersurface of bidegree (d, b)."""
        return self.D * d_coefficient + self.B * b_coefficient

    def point_class(self):
        return self.monomial(1, self.n)

    def __eq__(self, other):
        return isinstance(other, AmbientRing) and other.n == self.n

    def __hash__(self):
        return hash(('AmbientRing', self.n))

    def __repr__(self):
        return "AmbientRing(P^1 x P^{})".format(self.n)


class CycleClass(object):
    """ Integer class in an `AmbientRing`, truncated by D^2 = 0 and B^(n+1) = 0.

    Coefficients are arbitrary-precision Python ints held in an object array.
    """

    def __init__(self, ring, coefficients):
        coefficients = np.array(coefficients, dtype=object)
        if coefficients.shape != ring.shape:
            raise ValueError("Class coefficients must have shape {}, got {}".format(ring.shape, coefficients.shape))
        coefficients = _as_python_ints(coefficients)
        self.ring = ring
        self.coefficients = coefficients

    def _check_ring(self, other):
        if other.ring != self.ring:
            raise ValueError("Classes live in different rings: {} and {}".format(self.ring, other.ring))

    def __add__(self, other):
        self._check_ring(other)
        return CycleClass(self.ring, self.coefficients + other.coefficients)

    def __sub__(self, other):
        self._check_ring(other)
        return CycleClass(self.ring, self.coefficients - other.coefficients)

    def __neg__(self):
        return CycleClass(self.ring, -self.coefficients)

    def __mul__(self, other):
        if isinstance(other, CycleClass):
            self._check_ring(other)
            a, b = self.coefficients, other.coefficients
            n = self.ring.n
            result = np.zeros(self.ring.shape, dtype=object)
            for i, j in zip(*np.nonzero(a)):
                result[i:, j:] += a[i, j] * b[:2 - i, :n + 1 - j]
            return CycleClass(self.ring, result)
        return CycleClass(self.ring, self.coefficients * int(other))

    def __rmul__(self, other):
        return self * other

    @property
    def is_zero(self):
        return not any(self.coefficients.ravel())

    def degrees(self):
        """Set of total degrees e1 + e2 with a nonzero coefficient."""
        return set(int(i + j) for i, j in zip(*np.nonzero(self.coefficients)))

    @property
    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    @property
    def degree(self):
        degrees = self.degrees()
        if len(degrees) != 1:
            raise DegreeMismatch("Class {} is not homogeneous of a single degree".format(self))
        return degrees.pop()

    def __eq__(self, other):
        if not isinstance(other, CycleClass):
            return NotImplemented
        return self.ring == other.ring and np.array_equal(self.coefficients, other.coefficients)

    def __hash__(self):
        return hash((self.ring, tuple(self.coefficients.ravel())))

    def __repr__(self):
        terms = []
        for i, j in zip(*np.nonzero(self.coefficients)):
            monomial = '*'.join(s for s in (('D' if i else ''), ('B^{}'.format(j) if j > 1 else 'B' if j else '')) if s)
            terms.append('{}{}'.format(self.coefficients[i, j], '*' + monomial if monomial else ''))
        return "CycleClass({})".format(' + '.join(terms) if terms else '0')


class SubvarietySpec(object):
    """ A surface X in (or doubly covering) P^1 x P^n.

    Parameters
    ----------
    ambient : AmbientRing
    cutting_classes : list of CycleClass
        Divisor classes whose product is [X]; there must be n - 1 of them.
    cover_degree : int
        2 for a double cover of P^1 x P^1, otherwise 1.
    """

    def __init__(self, ambient, cutting_classes=(), cover_degree=1):
        cutting_classes = list(cutting_classes)
        if cover_degree not in (1, 2):
            raise ValueError("cover_degree must be 1 or 2, got {!r}".format(cover_degree))
        for c in cutting_classes:
            if c.ring != ambient:
                raise ValueError("Cutting class {} is not in {}".format(c, ambient))
        codimension = sum(c.degree for c in cutting_classes)
        if codimension != ambient.n - 1:
            raise DegreeMismatch("Cutting classes have total codimension {}; a surface in {} needs {}".format(
                codimension, ambient, ambient.n - 1))
        self.ambient = ambient
        self.cutting_classes = cutting_classes
        self.cover_degree = cover_degree

    def fundamental_class(self):
        result = self.ambient.one()
        for c in self.cutting_classes:
            result = result * c
        return result

    @property
    def E(self):
        """Class of a fiber of X over the first factor."""
        return self.ambient.D

    def polarization(self, m):
        """The class of O_X(m, 1) = m D + B restricted to X."""
        return self.ambient.divisor(m, 1)

    def __repr__(self):
        return "SubvarietySpec({}, cutting={}, cover_degree={})".format(
            self.ambient, self.cutting_classes, self.cover_degree)


def intersection_number(spec, c1, c2):
    """ Intersection number of two divisor classes restricted to a surface.

    Parameters
    ----------
    spec : SubvarietySpec
    c1, c2 : CycleClass
        Homogeneous classes whose degrees, together with the cutting classes, add up
        to the top degree of the ambient ring.

    Returns
    -------
    int
        Coefficient of the point class in c1 * c2 * [X], times the cover degree.
    """
    for c in (c1, c2):
        if c.is_zero:
            return 0
    degree = c1.degree + c2.degree + sum(c.degree for c in spec.cutting_classes)
    if degree != spec.ambient.top_degree:
        raise DegreeMismatch("Product has degree {} but the top degree of {} is {}".format(
            degree, spec.ambient, spec.ambient.top_degree))
    product = c1 * c2 * spec.fundamental_class()
    value = int(product.coefficients[1, spec.ambient.n]) * spec.cover_degree
    _log.debug("{} . {} on {} = {}".format(c1, c2, spec, value))
    return value


def self_intersection(spec, c):
    return intersection_number(spec, c, c)


def double_cover_spec():
    """Double cover of P^1 x P^1 (branched over a curve of bidegree (2l, 4))."""
    return SubvarietySpec(AmbientRing(1), [], cover_degree=2)


def hypersurface_spec(a):
    """Hypersurface X_{a,3} of bidegree (a, 3) in P^1 x P^2."""
    ring = AmbientRing(2)
    return SubvarietySpec(ring, [ring.divisor(a, 3)])


def complete_intersection_spec(a, b):
    """Complete intersection of bidegrees (a, 2) and (b, 2) in P^1 x P^3."""
    ring = AmbientRing(3)
    return SubvarietySpec(ring, [ring.divisor(a, 2), ring.divisor(b, 2)])
