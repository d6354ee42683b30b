from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidfloer.braid import (
    BraidError,
    BraidWord,
    closure_components,
    expected_invariant_gradings,
    parse_braid,
    permutation,
    self_linking,
    writhe,
)


def braids(max_strands=5, max_len=10):
    return st.integers(2, max_strands).flatmap(
        lambda n: st.lists(
            st.integers(1, n - 1).flatmap(lambda k: st.sampled_from([k, -k])), max_size=max_len
        ).map(lambda ls: BraidWord(n, tuple(ls)))
    )


def test_parse_accepts_commas_and_spaces():
    assert parse_braid("1, -2 1", 3).letters == (1, -2, 1)
    assert parse_braid("", 2).letters == ()


@pytest.mark.parametrize("text,n", [("0", 2), ("3", 3), ("1", 1), ("a", 2), ("-2", 2)])
def test_parse_rejects_bad_letters(text, n):
    with pytest.raises(BraidError):
        parse_braid(text, n)


def test_strand_count_must_be_positive():
    with pytest.raises(BraidError):
        BraidWord(0, ())


def test_self_linking_trefoil():
    assert self_linking(BraidWord(2, (1, 1, 1))) == 1


@pytest.mark.parametrize(
    "n,letters,sl",
    [(2, (), -2), (2, (1,), -1), (2, (-1,), -3), (2, (-1, -1, -1), -5), (3, (1, -2, 1, -2), -3)],
)
def test_self_linking_values(n, letters, sl):
    assert self_linking(BraidWord(n, letters)) == sl


def test_expected_gradings():
    assert expected_invariant_gradings(BraidWord(2, (1, 1, 1))) == (2, Fraction(1))
    assert expected_invariant_gradings(BraidWord(2, ())) == (-1, Fraction(-1, 2))


@pytest.mark.parametrize(
    "n,letters,comps", [(2, (), 2), (2, (1,), 1), (2, (1, 1), 2), (3, (1, 2), 1), (4, (1, 3), 2)]
)
def test_components(n, letters, comps):
    assert closure_components(BraidWord(n, letters)) == comps


def test_permutation_of_generator():
    assert permutation(BraidWord(3, (2,))) == [0, 2, 1]


@given(braids(), st.integers(1, 4), st.sampled_from([1, -1]))
def test_self_linking_conjugation_invariant(w, k, s):
    k = min(k, w.strands - 1)
    c = w.conjugate(s * k)
    assert self_linking(c) == self_linking(w)
    assert closure_components(c) == closure_components(w)


@given(braids())
def test_self_linking_positive_stabilization(w):
    s = w.stabilize(1)
    assert s.strands == w.strands + 1
    assert writhe(s) == writhe(w) + 1
    assert self_linking(s) == self_linking(w)
    assert closure_components(s) == closure_components(w)


@given(braids())
def test_negative_stabilization_drops_sl_by_two(w):
    assert self_linking(w.stabilize(-1)) == self_linking(w) - 2


@given(braids())
def test_inverse_product_is_trivial_permutation(w):
    assert permutation(w * w.inverse()) == list(range(w.strands))
