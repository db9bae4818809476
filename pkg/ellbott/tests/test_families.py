# Tests for the family specs and the summaries built from them

import pytest

from .. import families, intersect, weierstrass
from ..families import (NefBig, H0_GAP_EQUALS_R, DoubleCover, Hypersurface, CompleteIntersection,
                        WeierstrassSection, build_summary)
from ..criteria import InconsistentSummary, chi_omega1_twist
from ..report import summary_record


def _exception_message_starts_with(excinfo, message_body):
    return excinfo.value.args[0].startswith(message_body)


def test_invariants():
    s = build_summary(DoubleCover(1, 10))
    assert (s.beta, s.r, s.a_sq) == (1, 2, 40)
    s = build_summary(Hypersurface(1, 10))
    assert (s.beta, s.r, s.a_sq) == (1, 3, 61)
    s = build_summary(CompleteIntersection(1, 1, 23))
    assert (s.beta, s.r, s.a_sq) == (2, 4, 188)
    s = build_summary(WeierstrassSection(weierstrass.section_example(1), 12))
    assert (s.beta, s.r, s.a_sq) == (1, 1, 23)
    assert s.census_state == 'known'
    assert s.type_presence('II') is True


def test_h0_counts():
    assert families.h0_counts(DoubleCover(1, 10)) == (2, 0)
    assert families.h0_counts(Hypersurface(1, 12)) == (9, 6)
    assert families.h0_gap_fact(DoubleCover(2, 21))
    assert families.h0_gap_fact(Hypersurface(2, 30))

    # m = 20 is one short of 11 beta - 1 for l = 2
    with pytest.raises(families.OutOfValidityRange) as excinfo:
        families.h0_counts(DoubleCover(2, 20))
    assert _exception_message_starts_with(excinfo, "Closed forms for h^0(L) need m >= 11*beta - 1 = 21")

    with pytest.raises(families.OutOfValidityRange):
        families.h0_counts(CompleteIntersection(1, 1, 30))


def test_h0_gap_from_nef_big():
    # m - (12 beta - 2) >= 0 makes A - (12 beta - 2) E nef and big on the complete intersection
    assert families.h0_gap_fact(CompleteIntersection(1, 1, 22))
    with pytest.raises(families.OutOfValidityRange):
        families.h0_gap_fact(CompleteIntersection(1, 1, 21))


def test_nef_big_facts():
    facts = families.nef_big_facts(DoubleCover(1, 10))
    assert facts == {NefBig(-1), NefBig(1)}
    facts = families.nef_big_facts(Hypersurface(1, 10))
    assert facts == {NefBig(-1), NefBig(1), NefBig(10)}

    # r = 1: A - kE = A0 + (m - k) E is nef and big iff m - k >= beta and 2 (m - k) > beta
    spec = WeierstrassSection(weierstrass.section_example(1), 12)
    assert spec.twist_is_nef_big(11)
    assert not spec.twist_is_nef_big(12)
    assert families.nef_big_facts(spec) == {NefBig(-1), NefBig(1), NefBig(10)}


def test_summary_nef_big_is_monotone():
    s = families.SurfaceSummary(1, 2, 40, facts=[NefBig(5)])
    assert s.nef_big(5) and s.nef_big(-1)
    assert not s.nef_big(6)
    assert not s.h0_gap


def test_declared_summaries():
    s = families.declare_summary(1, 1, 21, frozenset())
    assert s.nef_big(1) and s.type_presence('II') is False
    assert s.origin['kind'] == 'declared_summary'

    # beta = 0 has no singular fibers at all
    s = families.declare_summary(0, 1, 4)
    assert s.type_presence('II') is False

    # parity mismatch: accepted, nothing certified
    s = families.declare_summary(1, 1, 18)
    assert s.facts == frozenset()
    assert s.warnings

    s = families.declare_summary(1, 2, 48)
    assert s.nef_big(10)
    assert H0_GAP_EQUALS_R in s.facts


def test_ampleness():
    with pytest.raises(families.AmplenessRangeViolated) as excinfo:
        build_summary(DoubleCover(1, 0))
    assert _exception_message_starts_with(excinfo, "O_X(m, 1) is ample only for m >= 1")

    s = build_summary(WeierstrassSection(weierstrass.section_example(1), 1))
    assert len(s.warnings) == 1


def test_bad_parameters():
    with pytest.raises(ValueError) as excinfo:
        DoubleCover(0, 3)
    assert _exception_message_starts_with(excinfo, "Family parameter l must be a positive integer")
    with pytest.raises(InconsistentSummary):
        families.declare_summary(-1, 1, 4)
    with pytest.raises(InconsistentSummary) as excinfo:
        families.SurfaceSummary(0, 2, 4, census={'III'})
    assert _exception_message_starts_with(excinfo, "A surface with beta = 0 has no singular fibers")
    with pytest.raises(InconsistentSummary):
        families.SurfaceSummary(1, 2, 4, census={'I0*'})


@pytest.mark.parametrize('m', [2 * 10**18, 10**30])
def test_large_m(m):
    assert DoubleCover(1, m).a_sq() == 4 * m
    assert Hypersurface(1, m).a_sq() == 6 * m + 1
    assert CompleteIntersection(1, 1, m).a_sq() == 8 * m + 4
    s = build_summary(Hypersurface(1, m))
    assert s.a_sq == 6 * m + 1
    assert s.nef_big(10)


def _grid():
    for m in range(1, 5):
        for beta in range(1, 4):
            yield WeierstrassSection(weierstrass.section_example(beta), m)
        for p in range(1, 4):
            yield DoubleCover(p, m)
            yield Hypersurface(p, m)
            for q in range(1, 4):
                yield CompleteIntersection(p, q, m)


def test_a_sq_parity():
    for spec in _grid():
        a_sq = spec.a_sq()
        if spec.r == 1:
            assert (a_sq - spec.beta) % 2 == 0, spec
        elif spec.r == 3:
            assert (a_sq - spec.a) % 2 == 0, spec
        else:
            assert a_sq % 2 == 0, spec


def test_chi_matches_intersection_numbers():
    for spec in _grid():
        if spec.r == 1:
            continue
        surface = spec.subvariety()
        a_sq = intersect.self_intersection(surface, surface.polarization(spec.m))
        expected = {2: 4 * spec.m, 3: 6 * spec.m + spec.beta, 4: 8 * spec.m + 2 * spec.beta}[spec.r]
        assert a_sq == expected, spec
        assert chi_omega1_twist(a_sq, spec.beta) == a_sq - 10 * spec.beta
        assert summary_record(build_summary(spec))['chi'] == a_sq - 10 * spec.beta


def test_k3_member_is_flagged():
    for spec in (CompleteIntersection(1, 1, 23), Hypersurface(2, 30), DoubleCover(2, 21),
                 WeierstrassSection(weierstrass.section_example(2), 30)):
        s = build_summary(spec)
        assert s.warnings == ["beta = 2, so K_X = 0 and X is the K3 member of the family"], spec

    for spec in (CompleteIntersection(1, 2, 23), Hypersurface(3, 40), DoubleCover(1, 10)):
        assert build_summary(spec).warnings == [], spec
    assert families.declare_summary(2, 3, 100).warnings[-1].startswith("beta = 2, so K_X = 0")
