import random

import pytest

from misere.forms import ZERO
from misere.notation import parse
from misere.outcomes import Outcome, outcome
from misere.comparison import (
    NotInUniverseError,
    compare_b,
    empirical_geq,
    equiv_b,
    geq_b,
    invertible_b,
    left_b_strong,
    pfree_modulo_b_bounded,
    right_b_strong,
)
from misere.universes import AugmentedFormError


def test_left_b_strong_examples(it):
    assert left_b_strong(it, ZERO)
    assert not left_b_strong(it, parse(it, "*"))
    assert left_b_strong(it, parse(it, "1+-1"))
    assert right_b_strong(it, parse(it, "1+-1"))


def test_left_b_strong_on_pfree_blocking_non_r(shared):
    from misere.enumeration import pfree_blocking_catalog

    it = shared
    for g in pfree_blocking_catalog(it, 2, 2):
        o = outcome(it, g)
        if o is not Outcome.R:
            assert left_b_strong(it, g)
        if o is not Outcome.L:
            assert right_b_strong(it, g)


def test_geq_reflexive(shared):
    from misere.enumeration import pfree_blocking_catalog

    it = shared
    for g in pfree_blocking_catalog(it, 2, 2):
        assert geq_b(it, g, g)


def test_integer_invertibility(it):
    for n in range(1, 5):
        s = it.sum(it.integer(n), it.integer(-n))
        assert geq_b(it, s, ZERO) and geq_b(it, ZERO, s)
        assert equiv_b(it, s, ZERO)


def test_blocked_end_not_equivalent_to_zero(it):
    g = parse(it, "{|0,1}")
    assert not (geq_b(it, g, ZERO) and geq_b(it, ZERO, g))
    star = parse(it, "*")
    d = empirical_geq(it, g, ZERO, [star]) or empirical_geq(it, ZERO, g, [star])
    assert d is not None and d.x == star


def test_compare_verdict_trace(it):
    v = compare_b(it, parse(it, "1+-1"), ZERO)
    assert v.geq and v.trace is None
    v = compare_b(it, parse(it, "*+*"), ZERO)
    assert not v.geq
    assert v.trace is not None and v.trace.clause == "proviso-left-end"


def test_equal_forms_modulo_everything(it):
    a = parse(it, "{{0,-1|0}|}")
    b = parse(it, "{{0,-1|0},*|}")
    assert equiv_b(it, a, b)


def test_invertible_examples(it):
    assert invertible_b(it, it.integer(1))
    assert not invertible_b(it, parse(it, "*"))
    with pytest.raises(NotInUniverseError):
        invertible_b(it, parse(it, "{|{1|1}}"))


def test_augmented_rejected(it):
    g = parse(it, "{#,0|}")
    with pytest.raises(AugmentedFormError):
        geq_b(it, g, ZERO)
    with pytest.raises(AugmentedFormError):
        left_b_strong(it, g)


def test_empirical_geq_examples(it):
    s = parse(it, "*+*")
    assert empirical_geq(it, s, s, [ZERO, it.integer(1)]) is None
    d = empirical_geq(it, ZERO, s, [it.integer(1)])
    assert d is not None
    assert d.o_gx is Outcome.R and d.o_hx is Outcome.P


def test_strong_implies_wins_on_left_ends(shared):
    # the semantic content of Left strength, checked directly against the
    # enumerated Left ends of the blocking universe
    from misere.enumeration import blocking_catalog
    from misere.outcomes import LEFT, sum_outcome_left

    it = shared
    pool = [x for x in blocking_catalog(it, 3, 1) if it.is_left_end(x)]
    assert pool
    probes = [ZERO, parse(it, "1+-1"), parse(it, "{|0,1}"), it.integer(-2)]
    for g in probes:
        assert left_b_strong(it, g)
        for x in pool:
            assert sum_outcome_left(it, (g, x)) == LEFT


def test_geq_soundness_vs_empirical(shared):
    from misere.enumeration import blocking_catalog, pfree_blocking_catalog

    it = shared
    cat = pfree_blocking_catalog(it, 2, 2)
    pool = blocking_catalog(it, 2, 2)
    rng = random.Random(3)
    pairs = [(rng.choice(cat), rng.choice(cat)) for _ in range(150)]
    for g, h in pairs:
        if geq_b(it, g, h):
            assert empirical_geq(it, g, h, pool) is None
        else:
            # a refutation, when the pool finds one, must agree
            d = empirical_geq(it, g, h, pool)
            if d is not None:
                assert not geq_b(it, g, h)


def test_group_law_on_invertible_set(shared):
    # (g + h) + (conj(g) + conj(h)) collapses to 0 for P-free blocking g, h
    from misere.enumeration import pfree_blocking_catalog
    from misere.forms import ZERO

    it = shared
    cat = pfree_blocking_catalog(it, 2, 2)
    rng = random.Random(9)
    for _ in range(15):
        g, h = rng.choice(cat), rng.choice(cat)
        s = it.sum(it.sum(g, h), it.sum(it.conjugate(g), it.conjugate(h)))
        assert equiv_b(it, s, ZERO)


def test_pfree_modulo_b_bounded(it):
    g = parse(it, "{{0,-1|0}|}")
    assert pfree_modulo_b_bounded(it, g, 2, 2) == g  # already strictly P-free
    augmented_twin = parse(it, "{{0,-1|0},*|}")
    w = pfree_modulo_b_bounded(it, augmented_twin, 3, 2)
    assert w is not None
    assert equiv_b(it, augmented_twin, w)
    from misere.outcomes import strictly_p_free

    assert strictly_p_free(it, w)
    # * has no P-free equivalent; the bounded search reports unknown
    assert pfree_modulo_b_bounded(it, parse(it, "*"), 2, 2) is None
