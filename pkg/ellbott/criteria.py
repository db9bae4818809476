"""
Decision engine for Bott vanishing on polarized elliptic surfaces

Given a summary (beta, r = A.E, A^2, fiber knowledge, certified facts) of an
elliptic surface X -> P^1 with reduced fibers and an ample line bundle A, decide
whether H^1(X, Omega^1 (x) A) vanishes and whether (X, A) satisfies Bott
vanishing. Rules are tried in a fixed order, from unconditional numerical
obstructions through the exact criteria to conditional implications, and every
verdict carries the trace of the rules that fired together with the statement
each rule relies on.

K_X = (beta - 2) E throughout, so every twist is of the form A - kE.
"""

import enum
import logging

__all__ = ['H1State', 'BottState', 'RuleId', 'TraceEntry', 'Verdict', 'InconsistentSummary', 'VerdictMismatch',
           'chi_omega1_twist', 'a2_threshold', 'r1_threshold', 'decide_h1', 'decide_bott', 'STATEMENTS',
           'OBSTRUCTING_TYPES']

_log = logging.getLogger('ellbott')


class InconsistentSummary(ValueError):
    pass


class VerdictMismatch(RuntimeError):
    pass


class H1State(enum.Enum):
    zero = 'Zero'
    nonzero = 'Nonzero'
    undetermined = 'Undetermined'
    conditional = 'Conditional'


class BottState(enum.Enum):
    holds = 'Holds'
    fails = 'Fails'
    undetermined = 'Undetermined'
    conditional = 'Conditional'


class RuleId(enum.Enum):
    chi_negative = 'ChiNegative'
    r1_theorem = 'R1Theorem'
    forward_fiber_obstruction = 'ForwardFiberObstruction'
    converse_with_h0_gap = 'ConverseWithH0Gap'
    cor_12_beta = 'Cor12Beta'
    cor_a2_threshold = 'CorA2Threshold'
    r1_family = 'R1Family'
    r4_family = 'R4Family'
    pair_bott = 'PairBott'


# the fiber type whose presence obstructs H^1 = 0, by r = A.E
OBSTRUCTING_TYPES = {1: 'II', 2: 'III', 3: 'IV'}

STATEMENTS = {
    RuleId.chi_negative:
        "chi(X, Omega^1 (x) A) = A^2 - 10 beta; when it is negative, h^1(X, Omega^1 (x) A) > 0 "
        "and Bott vanishing fails",
    RuleId.r1_theorem:
        "For A.E = 1: H^1(X, Omega^1 (x) A) != 0 if and only if A^2 <= 21 beta - 3 or the fibration "
        "has a fiber of type II",
    RuleId.forward_fiber_obstruction:
        "If A - beta E is nef and big and there is a fiber of type II (r = 1), III (r = 2) or IV (r = 3), "
        "then H^1(X, Omega^1 (x) A) != 0",
    RuleId.converse_with_h0_gap:
        "If A - beta E is nef and big, h^0(L) - h^0(L - E) = r for L = A - (11 beta - 1) E and there is no "
        "fiber of the obstructing type, then H^1(X, Omega^1 (x) A) = 0",
    RuleId.cor_12_beta:
        "If A - (12 beta - 2) E is nef and big, then H^1(X, Omega^1 (x) A) != 0 if and only if there is a "
        "fiber of type II (r = 1), III (r = 2) or IV (r = 3)",
    RuleId.cor_a2_threshold:
        "If r >= 2 and A^2 >= 2 r^2 beta + 25 r beta - 4 r - 2 beta, then A - (12 beta - 2) E is nef and "
        "big, so H^1(X, Omega^1 (x) A) != 0 if and only if there is a fiber of type III (r = 2) or "
        "IV (r = 3)",
    RuleId.r1_family:
        "For A = A0 + mE on a Weierstrass fibration with m > 11 beta - 1, Bott vanishing holds if and only "
        "if there is no fiber of type II",
    RuleId.r4_family:
        "For A = O_X(m, 1) on a complete intersection of bidegrees (a, 2) and (b, 2) in P^1 x P^3 with "
        "m > 12 (a + b) - 2, Bott vanishing holds",
    RuleId.pair_bott:
        "If A is ample and A - (beta - 2) E = A - K_X is nef and big, then Bott vanishing holds if and "
        "only if H^1(X, Omega^1 (x) A) = 0",
}


class TraceEntry(object):
    """ One fired rule: its id, the statement it relies on, and the inputs it consumed."""

    def __init__(self, rule, inputs=None, note=None):
        self.rule = RuleId(rule)
        self.statement = STATEMENTS[self.rule]
        self.inputs = dict(inputs or {})
        self.note = note

    def to_dict(self):
        result = {'rule': self.rule.value, 'statement': self.statement, 'inputs': self.inputs}
        if self.note:
            result['note'] = self.note
        return result

    @classmethod
    def from_dict(cls, data):
        return cls(RuleId(data['rule']), data.get('inputs'), data.get('note'))

    def __eq__(self, other):
        if not isinstance(other, TraceEntry):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return "TraceEntry({}, {})".format(self.rule.value, self.inputs)


class Verdict(object):
    """ Outcome of the decision engine.

    Attributes
    ----------
    h1_state : H1State
    condition : tuple or None
        For conditional outcomes, (sorted fiber types, polarity) where polarity
        'nonzero_iff_present' means H^1 != 0 exactly when one of the types occurs.
    bott_state : BottState or None
        None for verdicts returned by `decide_h1` alone.
    trace : list of TraceEntry
    consulted : dict
        Threshold values computed on the way (chi, A^2 thresholds), whether or not
        they decided the outcome.
    """

    def __init__(self, h1_state, trace, condition=None, bott_state=None, consulted=None, notes=()):
        self.h1_state = H1State(h1_state)
        self.bott_state = BottState(bott_state) if bott_state is not None else None
        self.trace = list(trace)
        self.condition = (tuple(condition[0]), condition[1]) if condition else None
        self.consulted = dict(consulted or {})
        self.notes = list(notes)

    @property
    def rules(self):
        return [entry.rule for entry in self.trace]

    def describe(self):
        """Short human-readable outcome, e.g. 'holds iff no type III fiber'."""
        if self.bott_state is None:
            if self.h1_state is H1State.conditional:
                return "H^1 != 0 iff a fiber of type {} occurs".format(' or '.join(self.condition[0]))
            return "H^1 {}".format(self.h1_state.value)
        if self.bott_state is BottState.conditional:
            return "holds iff no type {} fiber".format(' or '.join(self.condition[0]))
        return self.bott_state.value.lower()

    def to_dict(self):
        return {
            'h1_state': self.h1_state.value,
            'bott_state': self.bott_state.value if self.bott_state is not None else None,
            'condition': ({'types': list(self.condition[0]), 'polarity': self.condition[1]}
                          if self.condition else None),
            'description': self.describe(),
            'trace': [entry.to_dict() for entry in self.trace],
            'consulted': self.consulted,
            'notes': self.notes,
        }

    @classmethod
    def from_dict(cls, data):
        condition = data.get('condition')
        return cls(H1State(data['h1_state']),
                   [TraceEntry.from_dict(entry) for entry in data.get('trace', [])],
                   condition=(condition['types'], condition['polarity']) if condition else None,
                   bott_state=BottState(data['bott_state']) if data.get('bott_state') else None,
                   consulted=data.get('consulted'), notes=data.get('notes', ()))

    def __eq__(self, other):
        if not isinstance(other, Verdict):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return "Verdict({}, rules={})".format(self.describe(), [r.value for r in self.rules])


def chi_omega1_twist(a_sq, beta):
    """chi(X, Omega^1 (x) A) = A^2 - 10 beta."""
    return a_sq - 10 * beta


def a2_threshold(r, beta):
    """ Lower bound on A^2 making A - (12 beta - 2) E nef and big.

    Parameters
    ----------
    r : int
        A.E, at least 2.
    beta : int

    Returns
    -------
    int
        2 r^2 beta + 25 r beta - 4 r - 2 beta
    """
    if r < 2:
        raise ValueError("The A^2 threshold is only defined for r >= 2, got r = {}".format(r))
    return 2 * r * r * beta + 25 * r * beta - 4 * r - 2 * beta


def r1_threshold(beta):
    """For r = 1, H^1(Omega^1 (x) A) != 0 whenever A^2 <= 21 beta - 3."""
    return 21 * beta - 3


def _check(summary):
    if summary.r < 1 or summary.beta < 0:
        raise InconsistentSummary("Summary needs r >= 1 and beta >= 0, got r = {} and beta = {}".format(
            summary.r, summary.beta))
    census = summary.census
    if getattr(census, 'beta', summary.beta) != summary.beta:
        raise InconsistentSummary("Census has beta = {} but the summary has beta = {}".format(
            census.beta, summary.beta))


def _consulted(summary):
    consulted = {'chi': chi_omega1_twist(summary.a_sq, summary.beta)}
    if summary.r == 1:
        consulted['r1_threshold'] = r1_threshold(summary.beta)
    else:
        consulted['a2_threshold'] = a2_threshold(summary.r, summary.beta)
    return consulted


def _by_presence(presence, kodaira_type, trace, consulted, notes, rule_inputs=None):
    """Nonzero / Zero / Conditional according to whether the obstructing type is present."""
    if presence is True:
        return Verdict(H1State.nonzero, trace, consulted=consulted, notes=notes)
    if presence is False:
        return Verdict(H1State.zero, trace, consulted=consulted, notes=notes)
    return Verdict(H1State.conditional, trace, condition=([kodaira_type], 'nonzero_iff_present'),
                   consulted=consulted, notes=notes)


def decide_h1(summary):
    """ Decide whether H^1(X, Omega^1 (x) A) vanishes.

    Parameters
    ----------
    summary : SurfaceSummary

    Returns
    -------
    Verdict
        With ``bott_state`` left as None.
    """
    _check(summary)
    beta, r, a_sq = summary.beta, summary.r, summary.a_sq
    consulted = _consulted(summary)
    notes = []

    chi = consulted['chi']
    if chi < 0:
        return Verdict(H1State.nonzero, [TraceEntry(RuleId.chi_negative, {'A_sq': a_sq, 'beta': beta, 'chi': chi})],
                       consulted=consulted)

    if r == 1:
        bound = consulted['r1_threshold']
        inputs = {'A_sq': a_sq, 'beta': beta, 'r1_threshold': bound}
        if a_sq <= bound:
            return Verdict(H1State.nonzero, [TraceEntry(RuleId.r1_theorem, inputs)], consulted=consulted)
        presence = summary.type_presence('II')
        inputs['type_II'] = presence
        note = None
        if beta == 0:
            note = "beta = 0: the fibration is trivial, has no type II fiber, and A^2 > 21 beta - 3 = -3"
            notes.append(note)
        return _by_presence(presence, 'II', [TraceEntry(RuleId.r1_theorem, inputs, note)], consulted, notes)

    obstructing = OBSTRUCTING_TYPES.get(r)
    threshold = consulted['a2_threshold']
    if a_sq >= threshold or summary.nef_big(12 * beta - 2):
        if a_sq >= threshold:
            rule = RuleId.cor_a2_threshold
            inputs = {'A_sq': a_sq, 'a2_threshold': threshold, 'r': r}
        else:
            rule = RuleId.cor_12_beta
            inputs = {'nef_big_k': 12 * beta - 2, 'r': r}
        if obstructing is None:
            note = "r = {} >= 4: no fiber type obstructs, so H^1 = 0".format(r)
            notes.append(note)
            return Verdict(H1State.zero, [TraceEntry(rule, inputs, note)], consulted=consulted, notes=notes)
        presence = summary.type_presence(obstructing)
        inputs['type_' + obstructing] = presence
        return _by_presence(presence, obstructing, [TraceEntry(rule, inputs)], consulted, notes)

    if summary.nef_big(beta):
        if obstructing is None:
            if summary.h0_gap:
                note = "r = {} >= 4: no fiber type obstructs, so the converse gives H^1 = 0".format(r)
                notes.append(note)
                return Verdict(H1State.zero, [TraceEntry(RuleId.converse_with_h0_gap,
                                                         {'nef_big_k': beta, 'h0_gap': True, 'r': r}, note)],
                               consulted=consulted, notes=notes)
            return Verdict(H1State.undetermined, [], consulted=consulted,
                           notes=["A - beta E is nef and big but h^0(L) - h^0(L - E) = r is not certified"])
        presence = summary.type_presence(obstructing)
        if presence is True:
            return Verdict(H1State.nonzero, [TraceEntry(RuleId.forward_fiber_obstruction,
                                                        {'nef_big_k': beta, 'type_' + obstructing: True,
                                                         'r': r})],
                           consulted=consulted)
        if summary.h0_gap:
            inputs = {'nef_big_k': beta, 'h0_gap': True, 'type_' + obstructing: presence, 'r': r}
            trace = [TraceEntry(RuleId.converse_with_h0_gap, inputs)]
            if presence is None:
                trace.insert(0, TraceEntry(RuleId.forward_fiber_obstruction,
                                           {'nef_big_k': beta, 'type_' + obstructing: None, 'r': r}))
            return _by_presence(presence, obstructing, trace, consulted, notes)
        notes.append("A - beta E is nef and big but h^0(L) - h^0(L - E) = r is not certified; only a fiber "
                     "of type {} would decide".format(obstructing))
        return Verdict(H1State.undetermined, [], consulted=consulted, notes=notes)

    notes.append("No criterion applies: A^2 = {} is below the threshold {} and no twist of A is certified "
                 "nef and big".format(a_sq, threshold))
    return Verdict(H1State.undetermined, [], consulted=consulted, notes=notes)


_BOTT_FROM_H1 = {
    H1State.zero: BottState.holds,
    H1State.nonzero: BottState.fails,
    H1State.undetermined: BottState.undetermined,
    H1State.conditional: BottState.conditional,
}


def _family_check(summary, verdict):
    """Cross-check against the closed family results; returns an extra trace entry or None."""
    origin = summary.origin
    kind = origin.get('kind')
    m = origin.get('m')
    beta = summary.beta
    if kind == 'weierstrass' and m is not None and m > 11 * beta - 1:
        presence = summary.type_presence('II')
        if presence is None:
            return None
        expected = BottState.fails if presence else BottState.holds
        entry = TraceEntry(RuleId.r1_family, {'m': m, 'beta': beta, 'type_II': presence})
    elif kind == 'complete_intersection' and m is not None and m > 12 * beta - 2:
        expected = BottState.holds
        entry = TraceEntry(RuleId.r4_family, {'m': m, 'beta': beta})
    else:
        return None
    if verdict.bott_state is not expected:
        raise VerdictMismatch("Rule engine concluded {} but {} gives {} for {}".format(
            verdict.bott_state.value, entry.rule.value, expected.value, summary))
    return entry


def decide_bott(summary):
    """ Decide Bott vanishing for (X, A).

    Parameters
    ----------
    summary : SurfaceSummary

    Returns
    -------
    Verdict
        Holds only when H^1 = 0 and A - (beta - 2) E is certified nef and big;
        Fails whenever H^1 != 0.
    """
    h1 = decide_h1(summary)
    beta = summary.beta
    trace = list(h1.trace)
    notes = list(h1.notes)

    if summary.a_sq < 10 * beta:
        bott = BottState.fails
    elif summary.nef_big(beta - 2):
        bott = _BOTT_FROM_H1[h1.h1_state]
        trace.append(TraceEntry(RuleId.pair_bott, {'nef_big_k': beta - 2, 'h1_state': h1.h1_state.value}))
    elif h1.h1_state is H1State.nonzero:
        bott = BottState.fails
    else:
        bott = BottState.undetermined
        notes.append("A - (beta - 2) E is not certified nef and big, so H^1 = 0 alone does not decide "
                     "Bott vanishing")

    verdict = Verdict(h1.h1_state, trace, condition=h1.condition, bott_state=bott, consulted=h1.consulted,
                      notes=notes)
    entry = _family_check(summary, verdict)
    if entry is not None:
        verdict.trace.append(entry)
    _log.debug("Verdict for {}: {}".format(summary, verdict))
    return verdict
