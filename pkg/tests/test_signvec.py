from hypothesis import given
from hypothesis import strategies as st

from omhk.signvec import SignVector, compose, conforms

signs = st.integers(min_value=-1, max_value=1)
vectors = st.lists(signs, min_size=1, max_size=12).map(SignVector)
paired = st.integers(min_value=1, max_value=12).flatmap(
    lambda n: st.tuples(
        st.lists(signs, min_size=n, max_size=n).map(SignVector),
        st.lists(signs, min_size=n, max_size=n).map(SignVector),
    )
)


def test_string_round_trip():
    sv = SignVector.from_string("+-0+")
    assert tuple(sv) == (1, -1, 0, 1)
    assert str(sv) == "+-0+"
    assert sv == SignVector((1, -1, 0, 1))


def test_support_and_zero_set_partition():
    sv = SignVector.from_string("0+-0-")
    assert sv.support == (1, 2, 4)
    assert sv.zero_set == (0, 3)
    assert not sv.is_zero()
    assert SignVector((0, 0)).is_zero()


def test_separates_lists_opposite_coordinates():
    x = SignVector.from_string("+-0+")
    y = SignVector.from_string("--++")
    assert x.separates(y) == (0,)
    assert y.separates(x) == (0,)


@given(vectors)
def test_code_round_trip(sv):
    assert SignVector.from_code(sv.to_code(), len(sv)) == sv


@given(vectors)
def test_negation_is_an_involution(sv):
    assert -(-sv) == sv
    assert (-sv).support == sv.support


@given(paired)
def test_compose_support_is_union(pair):
    x, y = pair
    z = compose(x, y)
    assert set(z.support) == set(x.support) | set(y.support)


@given(paired)
def test_compose_keeps_x_where_x_is_nonzero(pair):
    x, y = pair
    z = compose(x, y)
    for i in range(len(x)):
        assert z[i] == (x[i] if x[i] != 0 else y[i])


@given(vectors)
def test_compose_is_idempotent_on_equal_arguments(sv):
    assert compose(sv, sv) == sv


@given(paired)
def test_conforms_matches_definition(pair):
    x, y = pair
    expected = all(x[i] == 0 or x[i] == y[i] for i in range(len(x)))
    assert conforms(x, y) == expected
    assert conforms(x, compose(x, y))


def test_vectors_are_immutable_and_hashable():
    sv = SignVector((1, 0, -1))
    try:
        sv.signs = (0, 0, 0)
        raised = False
    except AttributeError:
        raised = True
    assert raised
    assert len({sv, SignVector((1, 0, -1))}) == 1
