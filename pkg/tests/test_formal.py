from hypothesis import given, strategies as st

from ordwalk.formal import FormalSum

keys = st.tuples(st.integers(0, 4), st.integers(0, 4))
sums = st.dictionaries(keys, st.integers(-5, 5), max_size=6).map(FormalSum)


def test_zero_coefficients_are_dropped():
    s = FormalSum({(1,): 0, (2,): 3})
    assert len(s) == 1 and s[(1,)] == 0 and s[(2,)] == 3
    assert FormalSum() == 0 and not FormalSum()


def test_generator_and_repr():
    g = FormalSum.generator((1, 2), -2)
    assert repr(g) == "FormalSum(-2[1,2])"
    assert repr(FormalSum()) == "FormalSum(0)"


@given(sums, sums, sums)
def test_group_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a - a == 0
    assert a + FormalSum() == a
    assert -(-a) == a


@given(sums, sums, st.integers(-3, 3))
def test_scalar_distributes(a, b, k):
    assert k * (a + b) == k * a + k * b
    assert FormalSum.total([a, b, -a]) == b


@given(sums)
def test_hash_consistent(a):
    assert hash(a) == hash(FormalSum(dict(a.items())))
