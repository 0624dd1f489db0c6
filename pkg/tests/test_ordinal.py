import pytest
from hypothesis import given, strategies as st

from ordwalk.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    OrdinalParseError,
    add,
    classify,
    compare,
    fundamental_sequence,
    omega_power,
    parse,
    render,
)
from strategies import ordinals

P = parse


@pytest.mark.parametrize("a, b, want", [
    ("0", "0", "equal"),
    ("w", "w+1", "less"),
    ("w^2", "w*3+5", "greater"),
    ("w^(w)", "w^100", "greater"),
    ("5", "w", "less"),
])
def test_compare_examples(a, b, want):
    assert compare(P(a), P(b)) == want


@pytest.mark.parametrize("a, b, want", [
    ("1", "w", "w"),
    ("w", "1", "w+1"),
    ("w^2+w", "w^2", "w^2*2"),
    ("w*2+3", "w*5+1", "w*7+1"),
    ("0", "w^3", "w^3"),
])
def test_add_examples(a, b, want):
    assert add(P(a), P(b)) == P(want)


def test_classify_examples():
    assert classify(ZERO) == ("zero", None)
    assert classify(P("w+3")) == ("successor", P("w+2"))
    assert classify(P("w^(w)")) == ("limit", None)


@pytest.mark.parametrize("a, k, want", [
    ("w", 5, "5"),
    ("w*2", 3, "w+3"),
    ("w^(w)", 2, "w^2"),
    ("w^2", 0, "0"),
    ("w^3+w^2", 4, "w^3+w*4"),
])
def test_fundamental_sequence_examples(a, k, want):
    assert fundamental_sequence(P(a), k) == P(want)


def test_fundamental_sequence_rejects_non_limits():
    with pytest.raises(ValueError):
        fundamental_sequence(P("w+1"), 0)
    with pytest.raises(ValueError):
        fundamental_sequence(ZERO, 0)


@pytest.mark.parametrize("text", ["0", "7", "w", "w*2+3", "w^2*5+w+1", "w^(w)+w^3", "w^(w^(w)*2+1)"])
def test_render_round_trip_literals(text):
    assert render(P(text)) == text


@pytest.mark.parametrize("text", ["", "w^w", "w*", "2+", "x", "w^(w", "w**2", "-1"])
def test_parse_rejects(text):
    with pytest.raises(OrdinalParseError):
        P(text)


@pytest.mark.parametrize("text, want", [("w^0", "1"), ("w*0", "0"), ("3+w^2", "w^2"), ("w^1", "w")])
def test_parse_evaluates_noncanonical_sums(text, want):
    assert render(P(text)) == want


def test_int_interop():
    assert Ordinal.of(3) == 3
    assert hash(Ordinal.of(3)) == hash(3)
    assert Ordinal.of(2) < OMEGA
    assert ONE.succ() == 2
    assert OMEGA.is_limit() and not OMEGA.is_finite()


@given(ordinals())
def test_parse_render_round_trip(a):
    assert P(render(a)) == a


@given(ordinals(), ordinals(), ordinals())
def test_add_associative(a, b, c):
    assert (a + b) + c == a + (b + c)


@given(ordinals(), ordinals())
def test_add_monotone_right(a, b):
    assert a + b >= b
    if not b.is_zero():
        assert a + b > a


@given(ordinals(), ordinals())
def test_compare_agrees_with_operators(a, b):
    want = "less" if a < b else "greater" if a > b else "equal"
    assert compare(a, b) == want
    assert (a == b) == (hash(a) == hash(b) and compare(a, b) == "equal")


@given(ordinals())
def test_successor_structure(a):
    s = a.succ()
    assert s.is_successor() and s.pred() == a
    assert a < s and a + 1 == s


@given(ordinals().filter(lambda x: x.is_limit()), st.integers(0, 20))
def test_fundamental_sequence_increasing_below(a, k):
    x, y = fundamental_sequence(a, k), fundamental_sequence(a, k + 1)
    assert x < y < a


@given(ordinals().filter(lambda x: x.is_limit()), st.integers(0, 20))
def test_fundamental_sequence_keeps_head(a, k):
    # a = head + w^e with e the last exponent; every ladder point lies in [head, a)
    *rest, (e, c) = a.terms()
    head = sum((omega_power(x, m) for x, m in rest), ZERO) + (omega_power(e, c - 1) if c > 1 else ZERO)
    assert head + omega_power(e) == a
    assert head <= fundamental_sequence(a, k) < a
    assert (fundamental_sequence(a, 0) == head) == e.is_successor()


def test_omega_power():
    assert omega_power(0) == 1
    assert omega_power(1, 3) == P("w*3")
    assert omega_power(OMEGA) == P("w^(w)")
