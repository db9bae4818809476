"""
Families of polarized elliptic surfaces and the numerical summaries built from them

Each family spec knows how to compute the invariants the decision engine needs:
beta = chi(O_X), r = A.E, A^2, what is known about the singular fibers, and the
facts about twists A - kE that are certified for the family (nef and big, or the
jump h^0(L) - h^0(L - E) = r for L = A - (11 beta - 1) E).

    ========================  =========  =====  =======================
    family                    beta       r      A^2
    ========================  =========  =====  =======================
    Weierstrass, A = A0 + mE  from data  1      2m - beta
    double cover of P1 x P1   l          2      4m
    X_{a,3} in P1 x P2        a          3      6m + a
    X_{a,2} . X_{b,2}         a + b      4      8m + 2a + 2b
    ========================  =========  =====  =======================
"""

import logging

from .weierstrass import FiberCensus, WeierstrassData, classify_fibers, REDUCED_SINGULAR_TYPES
from . import intersect
from .criteria import InconsistentSummary, a2_threshold

__all__ = ['FamilySpec', 'WeierstrassSection', 'DoubleCover', 'Hypersurface', 'CompleteIntersection',
           'DeclaredSummary', 'SurfaceSummary', 'NefBig', 'H0GapEqualsR', 'H0_GAP_EQUALS_R',
           'AmplenessRangeViolated', 'OutOfValidityRange', 'build_summary', 'h0_gap_fact', 'h0_counts',
           'nef_big_facts', 'declare_summary']

_log = logging.getLogger('ellbott')


class AmplenessRangeViolated(ValueError):
    pass


class OutOfValidityRange(ValueError):
    pass


class NefBig(object):
    """Fact: A - kE is nef and big."""

    def __init__(self, k):
        self.k = int(k)

    def __eq__(self, other):
        return isinstance(other, NefBig) and other.k == self.k

    def __hash__(self):
        return hash(('NefBig', self.k))

    def __str__(self):
        return "NefBig(A-{}E)".format(self.k) if self.k >= 0 else "NefBig(A+{}E)".format(-self.k)

    __repr__ = __str__


class H0GapEqualsR(object):
    """Fact: h^0(L) - h^0(L - E) = r for L = A - (11 beta - 1) E."""

    def __eq__(self, other):
        return isinstance(other, H0GapEqualsR)

    def __hash__(self):
        return hash('H0GapEqualsR')

    def __str__(self):
        return "H0GapEqualsR"

    __repr__ = __str__


H0_GAP_EQUALS_R = H0GapEqualsR()


class SurfaceSummary(object):
    """ Numerical data of a polarized elliptic surface (X, A), input of the decision engine.

    Parameters
    ----------
    beta : int
        chi(O_X) >= 0; K_X = (beta - 2) E.
    r : int
        A.E >= 1.
    a_sq : int
        A^2.
    census : FiberCensus, set of str, or None
        A computed census, the set of reduced additive types (II, III, IV) asserted to
        occur, or None when nothing is known.
    facts : iterable of NefBig / H0GapEqualsR
    origin : dict, optional
        Family kind and parameters the summary was built from.
    """

    def __init__(self, beta, r, a_sq, census=None, facts=(), origin=None, warnings=()):
        for name, value, minimum in (('beta', beta, 0), ('r', r, 1)):
            if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
                raise InconsistentSummary("Summary needs an integer {} >= {}, got {!r}".format(name, minimum, value))
        if not isinstance(a_sq, int) or isinstance(a_sq, bool):
            raise InconsistentSummary("Summary needs an integer A^2, got {!r}".format(a_sq))
        if isinstance(census, FiberCensus):
            if census.beta != beta:
                raise InconsistentSummary("Census was computed for beta = {} but the summary has beta = {}".format(
                    census.beta, beta))
        elif census is not None:
            census = frozenset(census)
            unknown = census - set(REDUCED_SINGULAR_TYPES)
            if unknown:
                raise InconsistentSummary("Declared fiber types must be among {}, got {}".format(
                    ', '.join(REDUCED_SINGULAR_TYPES), ', '.join(sorted(unknown))))
            if beta == 0 and census:
                raise InconsistentSummary("A surface with beta = 0 has no singular fibers, but {} were declared".format(
                    ', '.join(sorted(census))))
        self.beta = beta
        self.r = r
        self.a_sq = a_sq
        self.census = census
        self.facts = frozenset(facts)
        self.origin = dict(origin) if origin else {}
        self.warnings = list(warnings)

    @property
    def census_state(self):
        if isinstance(self.census, FiberCensus):
            return 'known'
        if self.census is None:
            return 'unknown'
        return 'declared'

    def type_presence(self, kodaira_type):
        """True, False, or None when the census does not say."""
        if self.beta == 0:
            return False
        if isinstance(self.census, FiberCensus):
            return self.census.has_type(kodaira_type)
        if self.census is None:
            return None
        return kodaira_type in self.census

    def nef_big(self, k):
        """Is NefBig(A - kE) certified? A - k'E with k' >= k is nef and big, so is A - kE (E is nef)."""
        return any(isinstance(f, NefBig) and f.k >= k for f in self.facts)

    @property
    def h0_gap(self):
        return H0_GAP_EQUALS_R in self.facts

    def declared_types(self):
        """Sorted list of the additive reduced types known to occur (from a census or a declaration)."""
        if isinstance(self.census, FiberCensus):
            return sorted(t for t in self.census.types_present() if t in REDUCED_SINGULAR_TYPES)
        if self.census is None:
            return None
        return sorted(self.census)

    def __eq__(self, other):
        if not isinstance(other, SurfaceSummary):
            return NotImplemented
        return ((self.beta, self.r, self.a_sq, self.facts, self.declared_types(), self.census_state) ==
                (other.beta, other.r, other.a_sq, other.facts, other.declared_types(), other.census_state))

    def __repr__(self):
        return "SurfaceSummary(beta={}, r={}, A^2={}, census={}, facts={})".format(
            self.beta, self.r, self.a_sq, self.census_state, sorted(str(f) for f in self.facts))


def _positive_int(name, value):
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ValueError("Family parameter {} must be a positive integer, got {!r}".format(name, value))
    return value


def _integer(name, value):
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError("Family parameter {} must be an integer, got {!r}".format(name, value))
    return value


def _canonical_class_warnings(beta):
    # K_X = (beta - 2) E
    if beta == 2:
        message = "beta = 2, so K_X = 0 and X is the K3 member of the family"
        _log.warning(message)
        return [message]
    return []


class FamilySpec(object):
    """ Base class for polarized elliptic surface families.

    Subclasses set ``kind`` and ``r`` and implement `beta`, `a_sq` and
    `twist_is_nef_big`.
    """

    kind = None
    r = None

    def __init__(self, m, declared_census=None):
        self.m = _integer('m', m)
        self.declared_census = declared_census

    @property
    def beta(self):
        raise NotImplementedError("Subclasses must define beta")

    def a_sq(self):
        raise NotImplementedError("Subclasses must define A^2")

    def twist_is_nef_big(self, k):
        """Is A - kE nef and big on every member of the family?"""
        raise NotImplementedError("Subclasses must define nef and big twists")

    def check_ampleness(self):
        """Return a list of warnings; raise AmplenessRangeViolated if A cannot be ample."""
        if self.m < 1:
            raise AmplenessRangeViolated("O_X(m, 1) is ample only for m >= 1; got m = {}".format(self.m))
        return _canonical_class_warnings(self.beta)

    def census(self):
        return self.declared_census

    def parameters(self):
        return {'m': self.m}

    def __repr__(self):
        return "{}({})".format(self.__class__.__name__,
                               ', '.join('{}={}'.format(k, v) for k, v in self.parameters().items()))


class WeierstrassSection(FamilySpec):
    """ Surface from Weierstrass data, polarized by A = A0 + mE with A0 the zero section (A0^2 = -beta)."""

    kind = 'weierstrass'
    r = 1

    def __init__(self, w, m):
        if not isinstance(w, WeierstrassData):
            raise ValueError("WeierstrassSection needs WeierstrassData, got {!r}".format(w))
        super().__init__(m)
        self.w = w

    @property
    def beta(self):
        return self.w.beta

    def a_sq(self):
        return 2 * self.m - self.beta

    def twist_is_nef_big(self, k):
        # A - kE = A0 + nE; nef iff n >= beta (test against A0), big iff (A0 + nE)^2 = 2n - beta > 0
        n = self.m - k
        return n >= self.beta and 2 * n > self.beta

    def check_ampleness(self):
        if self.m <= self.beta:
            message = ("A = A0 + {}E has A.A0 = {} <= 0 and is not ample; ampleness is assumed as part of the "
                       "model declaration".format(self.m, self.m - self.beta))
            _log.warning(message)
            return [message] + _canonical_class_warnings(self.beta)
        return _canonical_class_warnings(self.beta)

    def census(self):
        return classify_fibers(self.w)

    def parameters(self):
        return {'beta': self.beta, 'm': self.m}


class DoubleCover(FamilySpec):
    """ Double cover of P^1 x P^1 branched along a smooth curve of bidegree (2l, 4), A = O_X(m, 1)."""

    kind = 'double_cover'
    r = 2

    def __init__(self, l, m, declared_census=None):
        super().__init__(m, declared_census)
        self.l = _positive_int('l', l)

    @property
    def beta(self):
        return self.l

    def subvariety(self):
        return intersect.double_cover_spec()

    def a_sq(self):
        spec = self.subvariety()
        return intersect.self_intersection(spec, spec.polarization(self.m))

    def twist_is_nef_big(self, k):
        # O_X(0, 1) has square 0 on the double cover
        return self.m - k >= 1

    def h0_counts(self):
        k = self.m - (11 * self.beta - 1)
        return 2 * (k + 1), 2 * k

    def parameters(self):
        return {'l': self.l, 'm': self.m}


class Hypersurface(FamilySpec):
    """ Smooth hypersurface X_{a,3} of bidegree (a, 3) in P^1 x P^2, A = O_X(m, 1)."""

    kind = 'hypersurface'
    r = 3

    def __init__(self, a, m, declared_census=None):
        super().__init__(m, declared_census)
        self.a = _positive_int('a', a)

    @property
    def beta(self):
        return self.a

    def subvariety(self):
        return intersect.hypersurface_spec(self.a)

    def a_sq(self):
        spec = self.subvariety()
        return intersect.self_intersection(spec, spec.polarization(self.m))

    def twist_is_nef_big(self, k):
        # O_X(0, 1) is nef with square a >= 1
        return self.m - k >= 0

    def h0_counts(self):
        k = self.m - (11 * self.beta - 1)
        return 3 * (k + 1), 3 * k

    def parameters(self):
        return {'a': self.a, 'm': self.m}


class CompleteIntersection(FamilySpec):
    """ Smooth complete intersection X_{a,2} . X_{b,2} in P^1 x P^3, A = O_X(m, 1)."""

    kind = 'complete_intersection'
    r = 4

    def __init__(self, a, b, m, declared_census=None):
        super().__init__(m, declared_census)
        self.a = _positive_int('a', a)
        self.b = _positive_int('b', b)

    @property
    def beta(self):
        return self.a + self.b

    def subvariety(self):
        return intersect.complete_intersection_spec(self.a, self.b)

    def a_sq(self):
        spec = self.subvariety()
        return intersect.self_intersection(spec, spec.polarization(self.m))

    def twist_is_nef_big(self, k):
        # O_X(0, 1) is nef with square 2a + 2b >= 4
        return self.m - k >= 0

    def parameters(self):
        return {'a': self.a, 'b': self.b, 'm': self.m}


class DeclaredSummary(FamilySpec):
    """ Summary given directly by (beta, r, A^2), the only way to describe beta = 0.

    Only the facts that follow from the numbers alone are certified: the A^2
    threshold for r >= 2, and for r = 1 the twists of A = A0 + mE with
    m = (A^2 + beta) / 2.
    """

    kind = 'declared_summary'

    def __init__(self, beta, r, a_sq, declared_census=None):
        self.beta_value = _integer('beta', beta)
        self.r = _positive_int('r', r)
        self.a_sq_value = _integer('A_sq', a_sq)
        if self.beta_value < 0:
            raise InconsistentSummary("beta = chi(O_X) is never negative for an elliptic fibration, got {}".format(
                beta))
        self.m = None
        if self.r == 1 and (self.a_sq_value + self.beta_value) % 2 == 0:
            self.m = (self.a_sq_value + self.beta_value) // 2
        self.declared_census = declared_census

    @property
    def beta(self):
        return self.beta_value

    def a_sq(self):
        return self.a_sq_value

    def twist_is_nef_big(self, k):
        if self.r == 1 and self.m is not None:
            n = self.m - k
            return n >= self.beta and 2 * n > self.beta
        return False

    def check_ampleness(self):
        warnings = []
        if self.r == 1 and self.m is None:
            warnings.append("A^2 = {} and beta = {} have different parity, so A is not of the form A0 + mE; no "
                            "twist of A is certified nef and big".format(self.a_sq_value, self.beta_value))
        if self.a_sq_value <= 0:
            warnings.append("A^2 = {} <= 0, so A is not ample; ampleness is assumed as part of the "
                            "declaration".format(self.a_sq_value))
        for message in warnings:
            _log.warning(message)
        return warnings + _canonical_class_warnings(self.beta)

    def parameters(self):
        return {'beta': self.beta, 'r': self.r, 'A_sq': self.a_sq_value}


def nef_big_facts(spec):
    """ Certified facts NefBig(A - kE) for the twists used by the decision engine.

    Returns
    -------
    set of NefBig
    """
    beta = spec.beta
    facts = set()
    for k in (beta - 2, beta, 12 * beta - 2):
        if spec.twist_is_nef_big(k):
            facts.add(NefBig(k))
    if spec.r >= 2 and spec.a_sq() >= a2_threshold(spec.r, beta):
        _log.debug("A^2 = {} reaches the threshold {}; A - {}E is nef and big".format(
            spec.a_sq(), a2_threshold(spec.r, beta), 12 * beta - 2))
        facts.add(NefBig(12 * beta - 2))
    return facts


def h0_counts(spec):
    """ Closed forms (h^0(L), h^0(L - E)) for L = A - (11 beta - 1) E.

    Available for the double cover and the hypersurface family when m >= 11 beta - 1.
    """
    if not isinstance(spec, (DoubleCover, Hypersurface)):
        raise OutOfValidityRange("Closed forms for h^0(L) are only known for the double cover and "
                                 "hypersurface families, not {}".format(spec.kind))
    if spec.m < 11 * spec.beta - 1:
        raise OutOfValidityRange("Closed forms for h^0(L) need m >= 11*beta - 1 = {}, got m = {}".format(
            11 * spec.beta - 1, spec.m))
    return spec.h0_counts()


def h0_gap_fact(spec):
    """ Certify h^0(L) - h^0(L - E) = r for L = A - (11 beta - 1) E.

    For the double cover and hypersurface families the closed forms are used; for any
    other spec the gap follows when L - (beta - 1) E = A - (12 beta - 2) E is nef and big.

    Returns
    -------
    bool
        True when certified; otherwise `OutOfValidityRange` is raised.
    """
    if isinstance(spec, (DoubleCover, Hypersurface)):
        h0_l, h0_l_minus_e = h0_counts(spec)
        if h0_l - h0_l_minus_e != spec.r:
            raise InconsistentSummary("h^0(L) - h^0(L - E) = {} differs from r = {}".format(
                h0_l - h0_l_minus_e, spec.r))
        return True
    if NefBig(12 * spec.beta - 2) in nef_big_facts(spec):
        return True
    raise OutOfValidityRange("h^0(L) - h^0(L - E) = r is not certified for {}".format(spec))


def build_summary(spec):
    """ Summary (beta, r, A^2, census, facts) of a family spec.

    Parameters
    ----------
    spec : FamilySpec

    Returns
    -------
    SurfaceSummary
    """
    warnings = spec.check_ampleness()
    census = spec.census()
    if isinstance(census, FiberCensus) and census.beta != spec.beta:
        raise InconsistentSummary("Declared census has beta = {} but the family has beta = {}".format(
            census.beta, spec.beta))
    facts = nef_big_facts(spec)
    try:
        if h0_gap_fact(spec):
            facts.add(H0_GAP_EQUALS_R)
    except OutOfValidityRange as err:
        _log.debug(str(err))
    origin = dict(spec.parameters(), kind=spec.kind)
    summary = SurfaceSummary(spec.beta, spec.r, spec.a_sq(), census=census, facts=facts, origin=origin,
                             warnings=warnings)
    _log.debug("Built {}".format(summary))
    return summary


def declare_summary(beta, r, a_sq, declared_types=None):
    """Summary of a surface given only by its numbers and, optionally, the additive fiber types present."""
    return build_summary(DeclaredSummary(beta, r, a_sq, declared_census=declared_types))
