import pytest
from hypothesis import given, settings

from misere.forms import Interner, ZERO
from misere.notation import ParseError, parse, print_form

from .test_forms import build, form_specs


def test_parse_zero(it):
    assert parse(it, "{|}") == ZERO
    assert parse(it, "0") == ZERO
    assert parse(it, "{.|.}") == ZERO


def test_star_sugar(it):
    assert parse(it, "{0|0}") == parse(it, "*")


def test_tombstone(it):
    g = parse(it, "{#,0|*}")
    f = it.form(g)
    assert f.left_tombstone and not f.right_tombstone
    assert f.left == (ZERO,)
    assert f.right == (parse(it, "*"),)


def test_integers_and_conjugate_operator(it):
    assert parse(it, "3") == it.integer(3)
    assert parse(it, "-2") == it.integer(-2)
    assert parse(it, "~1") == it.integer(-1)
    assert parse(it, "~{0|*}") == it.conjugate(parse(it, "{0|*}"))


def test_sums_and_whitespace(it):
    assert parse(it, "1 + -1") == it.sum(it.integer(1), it.integer(-1))
    assert parse(it, "{ 0 , 1 | * }") == parse(it, "{0,1|*}")


def test_nested(it):
    g = parse(it, "{|{{{1|{0|1}}|}|}}")
    assert it.rank(g) == 6


def test_parse_errors_carry_position(it):
    with pytest.raises(ParseError) as e:
        parse(it, "{0|")
    assert e.value.position == 3
    with pytest.raises(ParseError):
        parse(it, "")
    with pytest.raises(ParseError) as e:
        parse(it, "{0|0} x")
    assert "trailing" in e.value.message
    with pytest.raises(ParseError):
        parse(it, "{0|0}}")
    with pytest.raises(ParseError):
        parse(it, "&")


def test_print_canonical(it):
    assert print_form(it, ZERO) == "0"
    assert print_form(it, it.integer(4)) == "4"
    assert print_form(it, it.integer(-4)) == "-4"
    assert print_form(it, parse(it, "{0|0}")) == "*"
    assert print_form(it, parse(it, "{|0,1}")) == "{|0,1}"
    assert print_form(it, parse(it, "{#,0|*}")) == "{#,0|*}"


def test_round_trip_on_enumerated_forms(shared):
    from misere.enumeration import EnumSpec, enumerate_forms

    it = shared
    forms = enumerate_forms(
        it, EnumSpec(max_birthday=2, max_width=2, allow_tombstones=True)
    )
    for g in forms:
        assert parse(it, print_form(it, g)) == g


@given(spec=form_specs)
@settings(max_examples=150, deadline=None)
def test_round_trip_random(spec):
    it = Interner()
    g = build(it, spec)
    assert parse(it, print_form(it, g)) == g


# the notable forms exercised throughout the suites and docs
NOTABLE_EXPRESSIONS = (
    "{#,0|*}",
    "{|1,#}",
    "{0|*}",
    "{{0,-1|0}|}",
    "{{0,-1|0},*|}",
    "{|{1|1}}",
    "{-1|-1}",
    "{|{1|1}}+{-1|-1}",
    "{|{1|0,1}}",
    "{|{|{{1|-1}|}}}",
    "*",
    "*+*",
    "*+*+1",
    "{|0,1}",
    "{|2}",
    "{-1|}",
    "{-1|1}",
    "{|{{{1|{0|1}}|}|}}",
    "1+-1",
    "~1",
)


def test_notable_expressions_parse_and_round_trip(it):
    for expr in NOTABLE_EXPRESSIONS:
        g = parse(it, expr)
        assert parse(it, print_form(it, g)) == g
