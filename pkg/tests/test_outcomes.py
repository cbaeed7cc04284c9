import random

from hypothesis import given, settings

from misere.forms import Interner, ZERO
from misere.notation import parse
from misere.outcomes import (
    LEFT,
    RIGHT,
    Outcome,
    naive_outcome,
    naive_sum_outcome,
    outcome,
    outcome_geq,
    outcome_left,
    strictly_p_free,
    sum_outcome,
    sum_outcome_with_integer,
)

from .test_forms import build, form_specs

L, N, P, R = Outcome.L, Outcome.N, Outcome.P, Outcome.R


def test_outcome_left_base_cases(it):
    assert outcome_left(it, ZERO) == LEFT  # mover with no moves wins
    assert outcome_left(it, parse(it, "{#,0|*}")) == LEFT  # tombstone win
    assert outcome_left(it, parse(it, "{0|*}")) == RIGHT


def test_outcome_examples(it):
    assert outcome(it, parse(it, "*")) is P
    assert outcome(it, parse(it, "{|0,1}")) is N
    assert outcome(it, parse(it, "{-1|-1}")) is L
    assert outcome(it, parse(it, "{|{1|1}}+{-1|-1}")) is P


def test_outcome_geq_table():
    assert outcome_geq(L, P) and outcome_geq(L, N) and outcome_geq(L, R)
    assert not outcome_geq(N, P) and not outcome_geq(P, N)
    for a in Outcome:
        assert outcome_geq(a, a)
        assert outcome_geq(L, a) and outcome_geq(a, R)
    assert not outcome_geq(R, P) and not outcome_geq(P, L)


def test_strictly_p_free_examples(it):
    assert strictly_p_free(it, ZERO)
    assert not strictly_p_free(it, parse(it, "{#,0|*}"))  # * is a subposition
    assert strictly_p_free(it, parse(it, "{#,0|}"))
    assert strictly_p_free(it, parse(it, "{{0,-1|0}|}"))
    assert not strictly_p_free(it, parse(it, "{{0,-1|0},*|}"))


def test_oracle_equivalence_small_forms(shared):
    from misere.enumeration import EnumSpec, enumerate_forms

    it = shared
    forms = enumerate_forms(
        it, EnumSpec(max_birthday=2, max_width=2, allow_tombstones=True)
    )
    assert len(forms) == 363
    for g in forms:
        assert outcome(it, g) is naive_outcome(it, g)


def test_sum_outcome_matches_interned_sum(shared):
    from misere.enumeration import EnumSpec, enumerate_forms

    it = shared
    forms = enumerate_forms(it, EnumSpec(max_birthday=2, max_width=2))
    rng = random.Random(11)
    for _ in range(200):
        g, h = rng.choice(forms), rng.choice(forms)
        assert sum_outcome(it, (g, h)) is outcome(it, it.sum(g, h))
        assert sum_outcome(it, (g, h)) is naive_sum_outcome(it, (g, h))


def test_multiset_sum_outcome(it):
    g = parse(it, "{|{|{{1|-1}|}}}")
    assert sum_outcome(it, (g, it.integer(1), it.integer(-1))) is N
    assert sum_outcome(it, (g, it.integer(1), it.integer(-1))) is outcome(
        it, it.sum(it.sum(g, it.integer(1)), it.integer(-1))
    )
    assert sum_outcome(it, ()) is N
    assert sum_outcome(it, (ZERO, ZERO)) is N


@given(spec=form_specs)
@settings(max_examples=100, deadline=None)
def test_conjugate_antisymmetry(spec):
    it = Interner()
    g = build(it, spec)
    flip = {L: R, R: L, N: N, P: P}
    assert outcome(it, it.conjugate(g)) is flip[outcome(it, g)]


@given(spec=form_specs)
@settings(max_examples=100, deadline=None)
def test_tombstone_roots_never_p(spec):
    it = Interner()
    left, right, _, _ = spec
    g = build(it, (left, right, True, False))
    h = build(it, (left, right, False, True))
    assert outcome(it, g) is not P
    assert outcome(it, h) is not P


@given(spec=form_specs)
@settings(max_examples=60, deadline=None)
def test_symmetric_forms_are_n_or_p(spec):
    it = Interner()
    g = build(it, spec)
    assert outcome(it, it.sum(g, it.conjugate(g))) in (N, P)


@given(spec=form_specs)
@settings(max_examples=40, deadline=None)
def test_p_isolation(spec):
    it = Interner()
    g = build(it, spec)
    lo, hi = -it.rank(g) - 2, it.rank(g) + 2
    seq = [sum_outcome_with_integer(it, g, k) for k in range(lo, hi + 1)]
    for a, b in zip(seq, seq[1:]):
        assert not (a is P and b is P)


def test_memo_and_naive_agree_on_deep_sum(it):
    g = parse(it, "{|{1|1}}")
    h = parse(it, "{-1|-1}")
    s = it.sum(g, h)
    assert outcome(it, s) is naive_outcome(it, s) is P


def test_integer_sums_never_p(it):
    for n in range(-4, 5):
        for m in range(-4, 5):
            assert sum_outcome(it, (it.integer(n), it.integer(m))) is not P
