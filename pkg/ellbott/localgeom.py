"""
Local computations at the singular points of reduced singular fibers

Two brute-force oracles live here:

    * `jacobian_scheme_degree` computes the length of C[[x, y]] / (f_x, f_y) for a
      local equation f by exact linear algebra on truncated monomial spaces.
    * `restriction_rank` builds the space of global sections of a line bundle of
      given component degrees on a reduced singular fiber, and computes the rank of
      its restriction to the singular scheme S_0 of the fiber.

The section spaces are modeled on the normalization: each component is a P^1 with
affine coordinate tau, a section of degree r_i is a polynomial of degree <= r_i, and
the gluing at singular points is expressed as linear conditions on jets. The local
plane branches used to glue are

    ====  ===============  ===========================================
    type  local equation    branches (tau -> (x, y))
    ====  ===============  ===========================================
    II    x^2 - y^3         (tau^3, tau^2)
    III   x (x - y^2)       (0, tau) and (tau^2, tau)
    IV    x (x^2 - y^2)     tau * v_i with sum(e_i v_i) = 0
    I_n   x y               (tau, 0) and (0, tau) at every node
    ====  ===============  ===========================================

and S_0 is the scheme cut out by the partial derivatives of the local equation.
"""

import itertools
import logging
from fractions import Fraction

import sympy

from . import conf
from . import exactlinalg
from .exactpoly import parse_rational

__all__ = ['LocalEquation', 'SectionSpaceModel', 'NotStabilized', 'UnsupportedSplit', 'InconsistentModel',
           'LOCAL_MODELS', 'jacobian_scheme_degree', 'singular_scheme_degree', 'fiber_euler_number',
           'restriction_rank', 'expected_restriction', 'verify_lemmas', 'tangent_weights']

_log = logging.getLogger('ellbott')

_X, _Y = sympy.symbols('x y')

# jets are taken modulo tau^_JET_ORDER; every S_0 below contains the cube of the maximal ideal
_JET_ORDER = 3
# monomials x^i y^j of degree < _JET_ORDER, the basis used for local functions modulo m^3
_LOCAL_MONOMIALS = [(i, d - i) for d in range(_JET_ORDER) for i in range(d, -1, -1)]


class NotStabilized(RuntimeError):
    pass


class UnsupportedSplit(ValueError):
    pass


class InconsistentModel(RuntimeError):
    pass


class LocalEquation(object):
    """ Local equation f(x, y) of a fiber at a singular point.

    Parameters
    ----------
    f : sympy expression or str
        Polynomial in x and y with rational coefficients.
    label : str
        Fiber type modeled ('I1', 'II', 'III', 'IV' or 'In').
    """

    def __init__(self, f, label):
        poly = sympy.Poly(sympy.sympify(f), _X, _Y, domain=sympy.QQ)
        origin = {_X: 0, _Y: 0}
        if poly.as_expr().subs(origin) != 0:
            raise ValueError("Local equation {} does not vanish at the origin".format(poly.as_expr()))
        for derivative in (poly.diff(_X), poly.diff(_Y)):
            if derivative.as_expr().subs(origin) != 0:
                raise ValueError("Local equation {} is smooth at the origin".format(poly.as_expr()))
        self.f = poly
        self.label = label

    def partials(self):
        return [self.f.diff(_X), self.f.diff(_Y)]

    def __repr__(self):
        return "LocalEquation({}, {!r})".format(self.f.as_expr(), self.label)


LOCAL_MODELS = {
    'I1': LocalEquation(_X ** 2 - _Y ** 2, 'I1'),
    'II': LocalEquation(_X ** 2 - _Y ** 3, 'II'),
    'III': LocalEquation(_X * (_X - _Y ** 2), 'III'),
    'IV': LocalEquation(_X * (_X ** 2 - _Y ** 2), 'IV'),
    'In': LocalEquation(_X * _Y, 'In'),
}


def _fraction(c):
    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


def _monomials_below(degree):
    return [(i, d - i) for d in range(degree) for i in range(d, -1, -1)]


def _truncated_quotient_length(generators, truncation):
    """Length of Q[x, y] / (generators + m^truncation)."""
    monomials = _monomials_below(truncation)
    index = {m: k for k, m in enumerate(monomials)}
    rows = []
    for g in generators:
        terms = g.terms()
        for (i, j) in monomials:
            row = [0] * len(monomials)
            for (p, q), c in terms:
                position = index.get((p + i, q + j))
                if position is not None:
                    row[position] = _fraction(c)
            if any(row):
                rows.append(row)
    return len(monomials) - exactlinalg.rank(rows, len(monomials))


def jacobian_scheme_degree(eq, truncation=None):
    """ Length of the local Jacobian quotient C[[x, y]] / (f_x, f_y) at the origin.

    Parameters
    ----------
    eq : LocalEquation
    truncation : int, optional
        Initial monomial degree bound; defaults to ``conf.jacobian_initial_truncation``.
        The bound is doubled until two consecutive lengths agree.

    Returns
    -------
    int
    """
    truncation = conf.jacobian_initial_truncation if truncation is None else int(truncation)
    if truncation < 1:
        raise ValueError("Truncation degree must be positive, got {}".format(truncation))
    partials = eq.partials()
    previous = _truncated_quotient_length(partials, truncation)
    while True:
        if 2 * truncation > conf.jacobian_max_truncation:
            raise NotStabilized("Jacobian quotient of {} still growing at truncation degree {}; the "
                                "singularity is probably not isolated".format(eq.f.as_expr(), truncation))
        truncation *= 2
        current = _truncated_quotient_length(partials, truncation)
        _log.debug("Jacobian quotient of {}: length {} below degree {}".format(eq.f.as_expr(), current, truncation))
        if current == previous:
            return current
        previous = current


def singular_scheme_degree(fiber_type):
    """ Degree of the singular scheme at one singular point of a fiber of the given type.

    I_n fibers have n singular points of degree 1 each; II, III, IV have a single point of
    degree 2, 3, 4.
    """
    if fiber_type in ('II', 'III', 'IV'):
        return {'II': 2, 'III': 3, 'IV': 4}[fiber_type]
    if _cycle_length(fiber_type) is not None:
        return 1
    raise ValueError("Unknown reduced singular fiber type {!r}".format(fiber_type))


def fiber_euler_number(fiber_type):
    if fiber_type in ('II', 'III', 'IV'):
        return singular_scheme_degree(fiber_type)
    n = _cycle_length(fiber_type)
    if n is None:
        raise ValueError("Unknown reduced singular fiber type {!r}".format(fiber_type))
    return n


def _cycle_length(fiber_type):
    if fiber_type.startswith('I') and fiber_type[1:].isdigit() and int(fiber_type[1:]) >= 1:
        return int(fiber_type[1:])
    return None


def tangent_weights():
    """Weights (e1, e2, e3) from ``conf.tangent_weights``."""
    weights = tuple(parse_rational(w.strip()) for w in str(conf.tangent_weights).split(','))
    if len(weights) != 3 or any(w == 0 for w in weights):
        raise ValueError("tangent_weights must be three nonzero rationals, got {!r}".format(conf.tangent_weights))
    return weights


class _Branch(object):
    """A local branch: component index, which end of it (0 or infinity), and its plane parametrization."""

    def __init__(self, component, end, x_series, y_series):
        self.component = component
        self.end = end
        self.x_series = x_series
        self.y_series = y_series


class SectionSpaceModel(object):
    """ Global sections of a line bundle on a reduced singular fiber.

    Parameters
    ----------
    fiber_type : str
        'II', 'III', 'IV' or 'I<n>'.
    degrees : sequence of int
        Degree of the line bundle on each component (one entry per component).
    weights : tuple of 3 rationals, optional
        Tangent weights used to glue first derivatives at a type IV point; defaults
        to ``conf.tangent_weights``.
    """

    def __init__(self, fiber_type, degrees, weights=None):
        degrees = tuple(int(d) for d in degrees)
        expected = self._component_count(fiber_type)
        if len(degrees) != expected:
            raise UnsupportedSplit("Fiber type {} has {} component(s) but {} degree(s) were given".format(
                fiber_type, expected, len(degrees)))
        if any(d < 1 for d in degrees):
            raise UnsupportedSplit("Every component degree must be at least 1, got {}".format(degrees))
        self.fiber_type = fiber_type
        self.degrees = degrees
        self.weights = tuple(parse_rational(w) for w in weights) if weights is not None else tangent_weights()
        self.points = self._singular_points()
        self.matching_conditions = self._matching_conditions()

    @staticmethod
    def _component_count(fiber_type):
        counts = {'II': 1, 'III': 2, 'IV': 3}
        if fiber_type in counts:
            return counts[fiber_type]
        n = _cycle_length(fiber_type)
        if n is None:
            raise UnsupportedSplit("Unknown reduced singular fiber type {!r}".format(fiber_type))
        return n

    @property
    def r(self):
        return sum(self.degrees)

    @property
    def ncoefficients(self):
        return sum(d + 1 for d in self.degrees)

    def _offset(self, component):
        return sum(d + 1 for d in self.degrees[:component])

    def jet(self, branch):
        """Linear functionals giving the tau^0, tau^1, tau^2 coefficients of a section along a branch."""
        degree = self.degrees[branch.component]
        offset = self._offset(branch.component)
        functionals = []
        for k in range(_JET_ORDER):
            row = [Fraction(0)] * self.ncoefficients
            # at infinity the local coordinate is 1/tau and the trivialized section is tau^-r f(tau)
            index = k if branch.end == 0 else degree - k
            if 0 <= index <= degree:
                row[offset + index] = Fraction(1)
            functionals.append(row)
        return functionals

    def _singular_points(self):
        """List of (local equation, branches) for every singular point of the fiber."""
        t = self.fiber_type
        if t == 'II':
            return [(LOCAL_MODELS['II'], [_Branch(0, 0, [0, 0, 0, 1], [0, 0, 1])])]
        if t == 'III':
            return [(LOCAL_MODELS['III'], [_Branch(0, 0, [0], [0, 1]),
                                           _Branch(1, 0, [0, 0, 1], [0, 1])])]
        if t == 'IV':
            e1, e2, e3 = self.weights
            # tangent directions with e1 v1 + e2 v2 + e3 v3 = 0 on the lines x = 0, x = y, x = -y
            v1 = (Fraction(0), -2 * e2 / e1)
            v2 = (Fraction(1), Fraction(1))
            v3 = (-e2 / e3, e2 / e3)
            return [(LOCAL_MODELS['IV'], [_Branch(i, 0, [0, v[0]], [0, v[1]])
                                          for i, v in enumerate((v1, v2, v3))])]
        n = len(self.degrees)
        # node between component i (at infinity) and component i + 1 (at zero)
        return [(LOCAL_MODELS['In'], [_Branch(i, 'inf', [0, 1], [0]),
                                      _Branch((i + 1) % n, 0, [0], [0, 1])]) for i in range(n)]

    def _matching_conditions(self):
        conditions = []
        t = self.fiber_type
        if t == 'II':
            # first derivative vanishes at the preimage of the cusp
            conditions.append(self.jet(self.points[0][1][0])[1])
        elif t == 'III':
            f_jet, g_jet = (self.jet(b) for b in self.points[0][1])
            for k in (0, 1):
                conditions.append([u - v for u, v in zip(f_jet[k], g_jet[k])])
        elif t == 'IV':
            jets = [self.jet(b) for b in self.points[0][1]]
            for other in jets[1:]:
                conditions.append([u - v for u, v in zip(jets[0][0], other[0])])
            conditions.append([sum(e * j[1][c] for e, j in zip(self.weights, jets))
                               for c in range(self.ncoefficients)])
        else:
            for _, branches in self.points:
                u_jet, v_jet = (self.jet(b) for b in branches)
                conditions.append([u - v for u, v in zip(u_jet[0], v_jet[0])])
        return conditions

    def sections(self):
        """Basis of H^0(F, L) as coefficient vectors."""
        return exactlinalg.nullspace(self.matching_conditions, self.ncoefficients)

    def __repr__(self):
        return "SectionSpaceModel({}, degrees={})".format(self.fiber_type, self.degrees)


def _series_power_coefficients(x_series, y_series, i, j):
    """Coefficients of x(tau)^i y(tau)^j below tau^3."""
    tau = sympy.Symbol('tau')
    x = sum(sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * tau ** k
            for k, c in enumerate(x_series))
    y = sum(sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * tau ** k
            for k, c in enumerate(y_series))
    expansion = sympy.Poly(sympy.expand(x ** i * y ** j), tau)
    result = []
    for k in range(_JET_ORDER):
        c = sympy.Rational(expansion.coeff_monomial(tau ** k))
        result.append(Fraction(int(c.p), int(c.q)))
    return result


def _lift_matrix(branches):
    """Rows: tau^k coefficient on each branch; columns: local monomials of degree < 3."""
    rows = []
    for branch in branches:
        columns = [_series_power_coefficients(branch.x_series, branch.y_series, i, j)
                   for (i, j) in _LOCAL_MONOMIALS]
        for k in range(_JET_ORDER):
            rows.append([column[k] for column in columns])
    return rows


def _ideal_span(eq):
    """Span of the truncations below degree 3 of all monomial multiples of f_x and f_y."""
    index = {m: k for k, m in enumerate(_LOCAL_MONOMIALS)}
    rows = []
    for g in eq.partials():
        for (i, j) in _LOCAL_MONOMIALS:
            row = [Fraction(0)] * len(_LOCAL_MONOMIALS)
            for (p, q), c in g.terms():
                position = index.get((p + i, q + j))
                if position is not None:
                    row[position] = _fraction(c)
            if any(row):
                rows.append(row)
    return rows


def restriction_rank(model):
    """ Rank of the restriction H^0(F, L) -> H^0(S_0, L).

    Each section is lifted, at every singular point, to a local plane function of
    degree < 3 with the same jets on all branches, and reduced modulo the Jacobian
    ideal of the point.

    Parameters
    ----------
    model : SectionSpaceModel

    Returns
    -------
    h0_fiber, h0_s0, rank : int
    """
    sections = model.sections()
    width = len(_LOCAL_MONOMIALS)
    npoints = len(model.points)
    ideal_rows = []
    lifted = [[Fraction(0)] * (width * npoints) for _ in sections]
    for p, (eq, branches) in enumerate(model.points):
        span = _ideal_span(eq)
        lift = _lift_matrix(branches)
        kernel = exactlinalg.nullspace(lift, width)
        if exactlinalg.rank(span + kernel, width) != exactlinalg.rank(span, width):
            raise InconsistentModel("Branch jets of {} do not determine local functions modulo the "
                                    "singular scheme".format(eq))
        ideal_rows.extend([Fraction(0)] * (width * p) + row + [Fraction(0)] * (width * (npoints - p - 1))
                          for row in span)
        jet_functionals = [row for b in branches for row in model.jet(b)]
        jets = [[sum(a * b for a, b in zip(functional, section)) for functional in jet_functionals]
                for section in sections]
        try:
            local = exactlinalg.solve_all(lift, jets)
        except exactlinalg.InconsistentSystem:
            raise InconsistentModel("Sections of {} do not lift to local functions at singular point {}".format(
                model, p))
        for s, values in enumerate(local):
            lifted[s][width * p:width * (p + 1)] = values

    ideal_rank = exactlinalg.rank(ideal_rows, width * npoints)
    h0_s0 = width * npoints - ideal_rank
    rank = exactlinalg.rank(ideal_rows + lifted, width * npoints) - ideal_rank
    _log.debug("{}: h0(F) = {}, h0(S0) = {}, rank = {}".format(model, len(sections), h0_s0, rank))
    return len(sections), h0_s0, rank


def expected_restriction(fiber_type, degrees):
    """ Dimensions and rank predicted for `restriction_rank`.

    The restriction is surjective for II with r >= 2, III with r >= 3, IV with r >= 4
    and every I_n; in the three remaining cases the rank is r and the target has
    dimension r + 1.
    """
    r = sum(degrees)
    if fiber_type in ('II', 'III', 'IV'):
        h0_s0 = singular_scheme_degree(fiber_type)
        surjective = r >= h0_s0
    else:
        h0_s0 = len(degrees)
        surjective = True
    return r, h0_s0, (h0_s0 if surjective else r)


def _restriction_cases(max_n, max_degree):
    degree_range = range(1, max_degree + 1)
    cases = [('II', (d,)) for d in degree_range]
    if max_n >= 2:
        cases.extend(('III', split) for split in itertools.product(degree_range, repeat=2))
    if max_n >= 3:
        cases.extend(('IV', split) for split in itertools.product(degree_range, repeat=3))
    for n in range(1, max_n + 1):
        # rotations and reflections of the cycle give isomorphic models
        splits = itertools.combinations_with_replacement(range(1, min(max_degree, 3) + 1), n)
        cases.extend(('I{}'.format(n), split) for split in splits)
    return cases


def verify_lemmas(max_n=None, max_degree=None):
    """ Run the Jacobian-degree and restriction-rank suites.

    Parameters
    ----------
    max_n : int, optional
        Largest number of fiber components; defaults to ``conf.verify_max_n``.
    max_degree : int, optional
        Largest component degree; defaults to ``conf.verify_max_degree``.

    Returns
    -------
    list of dict
        One row per case with the computed and expected values and a ``passed`` flag.
    """
    max_n = conf.verify_max_n if max_n is None else int(max_n)
    max_degree = conf.verify_max_degree if max_degree is None else int(max_degree)
    if max_n < 1 or max_degree < 1:
        raise ValueError("verify_lemmas needs max_n >= 1 and max_degree >= 1, got {} and {}".format(
            max_n, max_degree))

    rows = []
    jacobian_cases = [('I1', 'I1', 1), ('II', 'II', 1), ('In', 'I2', 2), ('III', 'III', 2), ('IV', 'IV', 3)]
    for label, fiber_type, components in jacobian_cases:
        if components > max_n:
            continue
        computed = jacobian_scheme_degree(LOCAL_MODELS[label])
        expected = singular_scheme_degree(fiber_type)
        rows.append({'suite': 'jacobian', 'fiber_type': label, 'degrees': '',
                     'computed': str(computed), 'expected': str(expected), 'passed': computed == expected})

    for fiber_type, split in _restriction_cases(max_n, max_degree):
        computed = restriction_rank(SectionSpaceModel(fiber_type, split))
        expected = expected_restriction(fiber_type, split)
        rows.append({'suite': 'restriction', 'fiber_type': fiber_type,
                     'degrees': ','.join(str(d) for d in split),
                     'computed': '{} {} {}'.format(*computed), 'expected': '{} {} {}'.format(*expected),
                     'passed': tuple(computed) == tuple(expected)})
    _log.info("Lemma suites: {} of {} cases passed".format(sum(r['passed'] for r in rows), len(rows)))
    return rows
