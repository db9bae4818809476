"""
Weierstrass data over the projective line and Kodaira classification of its singular fibers

An elliptic surface over P^1 with Euler characteristic beta = chi(O_X) is described
locally by y^2 = x^3 + lambda(t) x + mu(t) with lambda a section of O(4 beta) and
mu a section of O(6 beta). The discriminant Delta = 4 lambda^3 + 27 mu^2 is a section
of O(12 beta) and the fibers over its zeros are singular. Their Kodaira types are
read off the orders (a, b, delta) of (lambda, mu, Delta) at each place.

Only reduced fibers (I_n, II, III, IV) are classified; the remaining rows of the
table are detected and rejected with `NonReducedFiber`.
"""

import collections
import logging

import numpy as np

from .exactpoly import (BinaryForm, UniPoly, Place, PlaceCluster, INFINITE_ORDER,
                        coprime_refinement, parse_rational)

__all__ = ['WeierstrassData', 'KodairaFiber', 'FiberCensus', 'IdenticallyZeroDiscriminant', 'NotMinimal',
           'NonReducedFiber', 'InconsistentTable', 'discriminant', 'is_minimal', 'classify_fibers',
           'kodaira_type_from_orders', 'euler_number', 'section_example', 'random_weierstrass',
           'REDUCED_SINGULAR_TYPES']

_log = logging.getLogger('ellbott')

# Kodaira types that can occur as reduced singular fibers, other than I_n
REDUCED_SINGULAR_TYPES = ('II', 'III', 'IV')

# delta pinned by the table for the additive reduced rows
_PINNED_DELTA = {'II': 2, 'III': 3, 'IV': 4}


class IdenticallyZeroDiscriminant(ValueError):
    pass


class NotMinimal(ValueError):
    """Raised when lambda and mu vanish to orders >= 4 and >= 6 at some place."""

    def __init__(self, message, places=()):
        super().__init__(message)
        self.places = list(places)


class NonReducedFiber(ValueError):
    """Raised for a fiber whose Kodaira type is one of the non-reduced (starred) types."""

    def __init__(self, message, place=None, kodaira_type=None):
        super().__init__(message)
        self.place = place
        self.kodaira_type = kodaira_type


class InconsistentTable(RuntimeError):
    pass


def _format_order(order):
    return 'inf' if order == INFINITE_ORDER else str(order)


class WeierstrassData(object):
    """ Weierstrass data (beta, lambda, mu) of an elliptic surface over P^1.

    Parameters
    ----------
    beta : int
        Positive integer, equal to chi(O_X).
    lambda_ : BinaryForm
        Form of degree exactly 4 beta (may be identically zero).
    mu : BinaryForm
        Form of degree exactly 6 beta (may be identically zero).
    """

    def __init__(self, beta, lambda_, mu):
        if not isinstance(beta, (int, np.integer)) or isinstance(beta, bool) or beta < 1:
            raise ValueError("Weierstrass data needs a positive integer beta, got {!r}".format(beta))
        beta = int(beta)
        if lambda_.degree != 4 * beta:
            raise ValueError("lambda must be a form of degree 4*beta = {}, got degree {}".format(
                4 * beta, lambda_.degree))
        if mu.degree != 6 * beta:
            raise ValueError("mu must be a form of degree 6*beta = {}, got degree {}".format(6 * beta, mu.degree))
        self.beta = beta
        self.lambda_ = lambda_
        self.mu = mu

    @classmethod
    def from_coefficients(cls, beta, lambda_coefficients, mu_coefficients):
        """Build the forms from affine coefficient lists, low to high in t. Degrees come from beta."""
        return cls(beta,
                   BinaryForm(4 * beta, UniPoly([parse_rational(c) for c in lambda_coefficients])),
                   BinaryForm(6 * beta, UniPoly([parse_rational(c) for c in mu_coefficients])))

    def shifted(self, c):
        """Same surface in the affine coordinate t' = t - c, i.e. forms composed with t -> t + c."""
        return WeierstrassData(self.beta, self.lambda_.shift(c), self.mu.shift(c))

    def scaled(self, u):
        """Isomorphic data (u^4 lambda, u^6 mu) for a nonzero rational u."""
        u = parse_rational(u)
        if u == 0:
            raise ValueError("Scaling factor must be nonzero")
        return WeierstrassData(self.beta, self.lambda_ * u ** 4, self.mu * u ** 6)

    def __eq__(self, other):
        if not isinstance(other, WeierstrassData):
            return NotImplemented
        return (self.beta, self.lambda_, self.mu) == (other.beta, other.lambda_, other.mu)

    def __hash__(self):
        return hash((self.beta, self.lambda_, self.mu))

    def __repr__(self):
        return "WeierstrassData(beta={}, lambda={}, mu={})".format(
            self.beta, self.lambda_.affine_part, self.mu.affine_part)


def euler_number(kodaira_type):
    """Topological Euler number of a reduced singular fiber: n for I_n, 2, 3, 4 for II, III, IV."""
    if kodaira_type in _PINNED_DELTA:
        return _PINNED_DELTA[kodaira_type]
    if kodaira_type.startswith('I') and kodaira_type[1:].isdigit() and int(kodaira_type[1:]) >= 1:
        return int(kodaira_type[1:])
    raise ValueError("Not a reduced singular Kodaira type: {!r}".format(kodaira_type))


def kodaira_type_from_orders(a, b, delta):
    """ Look up the Kodaira type of a minimal Weierstrass fiber.

    Parameters
    ----------
    a, b : int or INFINITE_ORDER
        Orders of lambda and mu at the place.
    delta : int
        Order of the discriminant.

    Returns
    -------
    str or None
        'I0' for a smooth fiber, 'I<n>', 'II', 'III', 'IV' for reduced singular fibers,
        'I0*', 'I<n>*', 'IV*', 'III*', 'II*' for the non-reduced ones, and None when
        the orders are not those of a minimal model (a >= 4 and b >= 6).
    """
    if a >= 4 and b >= 6:
        return None
    if delta == 0:
        return 'I0'
    if a == 0 and b == 0:
        return 'I{}'.format(delta)
    if b == 1:
        return 'II'
    if a == 1 and b >= 2:
        return 'III'
    if a >= 2 and b == 2:
        return 'IV'
    if a == 2 and b == 3:
        return 'I0*' if delta == 6 else 'I{}*'.format(delta - 6)
    if a >= 2 and b >= 3 and (a == 2 or b == 3):
        return 'I0*'
    if a >= 3 and b == 4:
        return 'IV*'
    if a == 3 and b >= 5:
        return 'III*'
    if a >= 4 and b == 5:
        return 'II*'
    raise InconsistentTable("No Kodaira table row for orders (a, b, delta) = ({}, {}, {})".format(
        _format_order(a), _format_order(b), delta))


class KodairaFiber(object):
    """ A cluster of conjugate singular fibers sharing one Kodaira type.

    ``count`` is the residue degree of the place, the number of geometric fibers.
    """

    def __init__(self, cluster, kodaira_type, count=None):
        self.cluster = cluster
        self.kodaira_type = kodaira_type
        self.count = cluster.place.residue_degree if count is None else int(count)
        if self.count < 1:
            raise ValueError("A fiber cluster must contain at least one fiber")

    @property
    def place(self):
        return self.cluster.place

    @property
    def delta(self):
        return self.cluster.delta

    @property
    def euler_number(self):
        return euler_number(self.kodaira_type)

    @property
    def singular_point_count(self):
        """Number of singular points on one fiber of this type."""
        if self.kodaira_type in _PINNED_DELTA:
            return 1
        return euler_number(self.kodaira_type)

    def __eq__(self, other):
        if not isinstance(other, KodairaFiber):
            return NotImplemented
        return (self.cluster, self.kodaira_type, self.count) == (other.cluster, other.kodaira_type, other.count)

    def __hash__(self):
        return hash((self.cluster, self.kodaira_type, self.count))

    def __repr__(self):
        return "KodairaFiber({} at {}, (a, b, delta)=({}, {}, {}), count={})".format(
            self.kodaira_type, self.place, _format_order(self.cluster.a), _format_order(self.cluster.b),
            self.cluster.delta, self.count)


class FiberCensus(object):
    """ Multiset of the singular fibers of an elliptic surface.

    Parameters
    ----------
    fibers : list of KodairaFiber
    beta : int
        chi(O_X) of the surface; both sum(count * delta) and sum(count * e(type))
        must equal 12 beta for a complete census.
    """

    def __init__(self, fibers, beta):
        self.fibers = list(fibers)
        self.beta = int(beta)

    def types_present(self):
        """Set of the Kodaira types occurring, with all I_n reported individually."""
        return set(f.kodaira_type for f in self.fibers)

    def has_type(self, kodaira_type):
        return any(f.kodaira_type == kodaira_type for f in self.fibers)

    def type_counts(self):
        """Mapping Kodaira type -> number of geometric fibers of that type."""
        counts = collections.Counter()
        for f in self.fibers:
            counts[f.kodaira_type] += f.count
        return dict(counts)

    def discriminant_degree(self):
        return sum(f.count * f.delta for f in self.fibers)

    def euler_sum(self):
        return sum(f.count * f.euler_number for f in self.fibers)

    def singular_point_count(self):
        return sum(f.count * f.singular_point_count for f in self.fibers)

    def scheme_degree(self):
        """Degree of the singular scheme of the fibration: each fiber contributes its Euler number."""
        # per point I_n contributes 1 (n points per fiber), II/III/IV contribute 2/3/4
        return self.euler_sum()

    def multiset(self):
        """Sorted list of (type, delta) repeated by count; invariant under coordinate changes."""
        items = []
        for f in self.fibers:
            items.extend([(f.kodaira_type, f.delta)] * f.count)
        return sorted(items)

    def __eq__(self, other):
        if not isinstance(other, FiberCensus):
            return NotImplemented
        return self.beta == other.beta and self.fibers == other.fibers

    def __len__(self):
        return len(self.fibers)

    def __iter__(self):
        return iter(self.fibers)

    def __repr__(self):
        return "FiberCensus(beta={}, {})".format(self.beta, self.type_counts())


def discriminant(w):
    """ Discriminant Delta = 4 lambda^3 + 27 mu^2 as a form of degree 12 beta.

    Parameters
    ----------
    w : WeierstrassData

    Returns
    -------
    BinaryForm
    """
    delta = w.lambda_ ** 3 * 4 + w.mu ** 2 * 27
    if delta.is_zero:
        raise IdenticallyZeroDiscriminant("Discriminant 4*lambda^3 + 27*mu^2 is identically zero; "
                                          "the data do not define an elliptic fibration")
    return delta


def _clusters(w):
    """Place clusters of (lambda, mu, Delta), with infinite orders for identically zero forms."""
    delta = discriminant(w)
    forms = [w.lambda_, w.mu, delta]
    nonzero = [i for i, f in enumerate(forms) if not f.is_zero]
    clusters = []
    for cluster in coprime_refinement([forms[i] for i in nonzero]):
        orders = [INFINITE_ORDER] * 3
        for i, order in zip(nonzero, cluster.orders):
            orders[i] = order
        clusters.append(PlaceCluster(cluster.place, orders))
    return clusters


def is_minimal(w):
    """ Check that the Weierstrass data are minimal at every place.

    Returns
    -------
    minimal : bool
    offending : list of Place
        Places of the discriminant locus where ord(lambda) >= 4 and ord(mu) >= 6.
    """
    offending = [c.place for c in _clusters(w) if c.delta >= 1 and c.a >= 4 and c.b >= 6]
    return (not offending), offending


def classify_fibers(w):
    """ Classify every singular fiber of a minimal Weierstrass model.

    Parameters
    ----------
    w : WeierstrassData

    Returns
    -------
    FiberCensus
    """
    clusters = [c for c in _clusters(w) if c.delta >= 1]
    offending = [c.place for c in clusters if c.a >= 4 and c.b >= 6]
    if offending:
        raise NotMinimal("Weierstrass data are not minimal at {}: ord(lambda) >= 4 and ord(mu) >= 6".format(
            ', '.join(str(p) for p in offending)), places=offending)

    fibers = []
    for cluster in clusters:
        kodaira_type = kodaira_type_from_orders(cluster.a, cluster.b, cluster.delta)
        _log.debug("Place {}: (a, b, delta) = ({}, {}, {}) -> {}".format(
            cluster.place, _format_order(cluster.a), _format_order(cluster.b), cluster.delta, kodaira_type))
        if kodaira_type.endswith('*'):
            raise NonReducedFiber("Fiber over {} has non-reduced Kodaira type {}; only reduced fibers are "
                                  "supported".format(cluster.place, kodaira_type),
                                  place=cluster.place, kodaira_type=kodaira_type)
        pinned = _PINNED_DELTA.get(kodaira_type)
        if pinned is not None and pinned != cluster.delta:
            raise InconsistentTable("Type {} pins delta = {} but ord(Delta) = {} at {}".format(
                kodaira_type, pinned, cluster.delta, cluster.place))
        fibers.append(KodairaFiber(cluster, kodaira_type))

    census = FiberCensus(fibers, w.beta)
    if census.discriminant_degree() != 12 * w.beta:
        raise InconsistentTable("Sum of count*delta is {} instead of 12*beta = {}".format(
            census.discriminant_degree(), 12 * w.beta))
    if census.euler_sum() != 12 * w.beta:
        raise InconsistentTable("Sum of fiber Euler numbers is {} instead of 12*beta = {}".format(
            census.euler_sum(), 12 * w.beta))
    return census


def section_example(beta):
    """ The model lambda = t^(4 beta), mu = t^(6 beta) + t.

    It is minimal with a fiber of type II over t = 0, where (a, b, delta) = (4 beta, 1, 2).
    """
    lambda_coefficients = [0] * (4 * beta) + [1]
    mu_coefficients = [0, 1] + [0] * (6 * beta - 2) + [1]
    return WeierstrassData.from_coefficients(beta, lambda_coefficients, mu_coefficients)


def random_weierstrass(beta, rng=None, bound=5):
    """Weierstrass data with integer coefficients drawn uniformly from [-bound, bound]."""
    if rng is None:
        rng = np.random.default_rng()
    lambda_coefficients = [int(c) for c in rng.integers(-bound, bound + 1, size=4 * beta + 1)]
    mu_coefficients = [int(c) for c in rng.integers(-bound, bound + 1, size=6 * beta + 1)]
    return WeierstrassData.from_coefficients(beta, lambda_coefficients, mu_coefficients)
