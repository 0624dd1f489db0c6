import pytest
from hypothesis import assume, given, strategies as st

from ordwalk.clubs import canonical_sequence, compound, parse_cseq
from ordwalk.ordinal import OMEGA, ZERO, Ordinal, parse
from ordwalk.walks_classic import (
    InfiniteWeight,
    branch_order,
    internal_trace,
    r1_slice,
    r2_slice,
    recursive_phi,
    rho1,
    rho2,
    rho2_internal,
    upper_trace,
)
from strategies import below_w3

P = parse
C = canonical_sequence()


def lits(xs):
    return [str(x) for x in xs]


def test_trace_examples():
    assert upper_trace(C, 5, 5).steps == (5,)
    assert upper_trace(C, 5, 5).lower == ()
    assert lits(upper_trace(C, 1, P("w*2")).steps) == ["w*2", "w", "1"]
    assert lits(upper_trace(C, 1, 5).steps) == ["5", "4", "3", "2", "1"]


def test_rho_examples():
    assert rho2(C, 3, 3) == 0
    assert rho2(C, 1, P("w*2")) == 2
    assert rho2(C, 1, 5) == 4
    assert rho1(C, OMEGA, OMEGA) == 0
    assert rho1(C, 1, P("w*2")) == 1
    assert rho1(C, 3, OMEGA) == 3


def test_rho1_infinite_weight():
    # the full club on w^2 meets w+1 in an infinite set
    F = parse_cseq("full:w^2,canonical")
    with pytest.raises(InfiniteWeight):
        rho1(F, P("w+1"), P("w^2"))


def test_walk_requires_order():
    with pytest.raises(ValueError):
        upper_trace(C, 3, 2)


def test_slices():
    assert r1_slice(C, 0, 1, 2)
    assert r1_slice(C, 4, 5, OMEGA)
    assert r2_slice(C, 4, 5, OMEGA) == (5, OMEGA)
    assert r2_slice(C, 3, 5, OMEGA) is None


def test_internal_walk_examples():
    W2 = P("w^2")
    D = compound(canonical_sequence(), 2)
    tr = internal_trace(D, W2, 0, P("w*3"))
    assert lits(tr.steps[:2]) == ["w*3", "w*2"]
    assert lits(tr.steps) == ["w*3", "w*2", "w", "0"]
    assert internal_trace(D, W2, P("w*2"), P("w*2")).steps == (P("w*2"),)
    assert rho2_internal(D, W2, P("w*2"), P("w*2")) == 0
    off = internal_trace(D, W2, 0, P("w+1"))
    assert off.steps[1] == P("w*2")


def test_internal_walk_mirrors_finite_walk():
    # pi maps the walk from 3 to 0 onto the internal walk from w*3
    W2 = P("w^2")
    D = compound(canonical_sequence(), 2)
    assert rho2_internal(D, W2, 0, P("w*3")) == rho2(C, 0, 3)


def test_recursive_phi_examples():
    assert recursive_phi(C, 6, 5) == 0
    assert recursive_phi(C, OMEGA, 3) == 4
    with pytest.raises(ValueError):
        recursive_phi(C, 3, 3)


def test_branch_order_identical_fibers():
    same = lambda xi, b: 7
    S = [0, 1, 2, OMEGA]
    assert branch_order(same, S, 3, 5)
    assert not branch_order(same, S, 5, 3)
    assert not branch_order(same, S, 4, 4)


def test_branch_order_uses_least_disagreement():
    rho = lambda xi, b: rho2(C, xi, b)
    # rho2(0, 3) = 3 > rho2(0, 2) = 2, so 2 comes first
    assert branch_order(rho, [0, 1], 2, 3)
    assert not branch_order(rho, [0, 1], 3, 2)


@given(below_w3(), below_w3())
def test_trace_shape(a, b):
    a, b = min(a, b), max(a, b)
    tr = upper_trace(C, a, b)
    assert tr.steps[0] == b and tr.steps[-1] == a
    assert all(x > y for x, y in zip(tr.steps, tr.steps[1:]))
    assert len(tr.lower) == len(tr.steps) - 1
    assert all(x <= y for x, y in zip(tr.lower, tr.lower[1:]))
    if tr.lower and not a.is_zero():
        assert tr.lower[-1] < a


@given(below_w3(), below_w3())
def test_walk_steps_compose(a, b):
    # the walk from b to a passes through each of its steps
    a, b = min(a, b), max(a, b)
    steps = upper_trace(C, a, b).steps
    for k, s in enumerate(steps):
        assert upper_trace(C, a, s).steps == steps[k:]
        assert rho2(C, a, s) == len(steps) - 1 - k


@given(below_w3(), below_w3())
def test_recursive_phi_matches_rho1(xi, b):
    assume(xi < b)
    assert recursive_phi(C, b, xi) == rho1(C, xi.succ(), b)


@given(st.integers(0, 40), st.integers(0, 40))
def test_finite_walks_step_down_by_one(a, b):
    a, b = min(a, b), max(a, b)
    assert rho2(C, a, b) == b - a
    # each C_{k+1} = {k} misses a, so no weight accumulates
    assert rho1(C, a, b) == 0
