import pytest

from misere.notation import parse
from misere.outcomes import Outcome
from misere.tipping import (
    TippingPoints,
    contiguity_check,
    expected_outcome,
    outcome_sequence,
    tipping_points,
)

L, N, P, R = Outcome.L, Outcome.N, Outcome.P, Outcome.R


def test_tipping_points_zero(it):
    assert tipping_points(it, 0) == TippingPoints(ltp=1, ntp=0, rtp=1)


def test_tipping_points_star_star(it):
    tp = tipping_points(it, parse(it, "*+*"))
    assert tp == TippingPoints(ltp=3, ntp=0, rtp=3)


def test_strange_form_ntp(it):
    g = parse(it, "{|{|{{1|-1}|}}}")
    assert tipping_points(it, g).ntp == 3
    assert tipping_points(it, it.sum(g, it.integer(-1))).ntp == 1


def test_bounds(it):
    for expr in ("0", "*", "{|{1|1}}", "2", "-3", "{|0,1}"):
        g = parse(it, expr)
        tp = tipping_points(it, g)
        cap = it.rank(g) + 1
        assert 0 <= tp.ltp <= cap and 0 <= tp.ntp <= cap and 0 <= tp.rtp <= cap


def test_outcome_sequence_examples(it):
    assert outcome_sequence(it, 0, -2, 2).outcomes == [L, L, N, R, R]
    assert outcome_sequence(it, parse(it, "*+*"), 0, 4).outcomes == [N, P, N, R, R]
    seq = outcome_sequence(it, parse(it, "{-1|-1}"), -1, 1)
    assert seq.outcomes[0] is L and seq.at(0) is L
    with pytest.raises(ValueError):
        outcome_sequence(it, 0, 2, 1)


def test_contiguity_zero(it):
    assert contiguity_check(it, 0).three_components


def test_contiguity_star_star_violates_at_one(it):
    v = contiguity_check(it, parse(it, "*+*"))
    assert not v.three_components
    assert v.violation_k == 1


def test_contiguity_p_root(it):
    v = contiguity_check(it, parse(it, "*"))
    assert not v.three_components and v.violation_k == 0


def test_expected_outcome_case_table():
    tp = TippingPoints(ltp=0, ntp=1, rtp=2)
    assert expected_outcome(L, tp, 0) is L
    assert expected_outcome(L, tp, 1) is N
    assert expected_outcome(L, tp, 2) is R
    assert expected_outcome(L, tp, -5) is L
    tp = TippingPoints(ltp=1, ntp=0, rtp=1)
    assert expected_outcome(N, tp, -1) is L
    assert expected_outcome(N, tp, 0) is N
    assert expected_outcome(N, tp, 1) is R
    tp = TippingPoints(ltp=2, ntp=1, rtp=0)
    assert expected_outcome(R, tp, -2) is L
    assert expected_outcome(R, tp, -1) is N
    assert expected_outcome(R, tp, 0) is R
    with pytest.raises(ValueError):
        expected_outcome(P, tp, 0)


def test_conjugate_duality(shared):
    from misere.enumeration import pfree_blocking_catalog

    it = shared
    for g in pfree_blocking_catalog(it, 2, 2):
        tp = tipping_points(it, g)
        tpc = tipping_points(it, it.conjugate(g))
        assert (tpc.ltp, tpc.ntp, tpc.rtp) == (tp.rtp, tp.ntp, tp.ltp)


def test_equivalence_stability_on_integer_pairs(it):
    # n + (-n) is equivalent to 0 modulo the blocking universe; their
    # tipping points must agree with 0's
    for n in range(1, 4):
        s = it.sum(it.integer(n), it.integer(-n))
        assert tipping_points(it, s) == tipping_points(it, 0)


def test_equivalence_stability_on_equal_forms(it):
    # these two are equal modulo every set of games
    a = parse(it, "{{0,-1|0}|}")
    b = parse(it, "{{0,-1|0},*|}")
    assert tipping_points(it, a) == tipping_points(it, b)
