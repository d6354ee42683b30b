import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidfloer.floer import ChainComplex
from braidfloer.homology import (
    BigradedRanks,
    bigraded_ranks,
    deconvolve_v,
    is_boundary,
    is_cycle,
    transverse_verdict,
)

from conftest import dense_ranks, random_complex

F = Fraction


def tensor_v(ranks: dict, copies: int) -> dict:
    out = dict(ranks)
    for _ in range(copies):
        nxt: dict = {}
        for (m, a), r in out.items():
            for dm in (0, -1):
                key = (m + dm, a + dm)
                nxt[key] = nxt.get(key, 0) + r
        out = nxt
    return out


def test_bigraded_ranks_random_against_dense():
    rng = random.Random(11)
    for _ in range(30):
        cx, expected = random_complex(rng, pairs=12, free=6)
        got = bigraded_ranks(cx)
        assert got == dense_ranks(cx) == expected


def test_deconvolve_v_examples():
    unknot = {(0, F(0)): 1}
    assert deconvolve_v(BigradedRanks(tensor_v(unknot, 1)), 1) == unknot
    assert deconvolve_v(BigradedRanks(unknot), 0) == unknot
    with pytest.raises(ValueError):
        deconvolve_v(BigradedRanks({(0, F(0)): 1}), 1)


@given(
    st.dictionaries(
        st.tuples(st.integers(-4, 4), st.integers(-3, 3).map(F)), st.integers(1, 3), max_size=6
    ),
    st.integers(0, 3),
)
def test_deconvolve_inverts_tensor(ranks, copies):
    assert deconvolve_v(BigradedRanks(tensor_v(ranks, copies)), copies) == ranks


def test_by_alexander_and_list():
    r = BigradedRanks({(0, F(1)): 1, (-1, F(1)): 2, (3, F(-1, 2)): 1, (5, F(0)): 0})
    assert r.total == 4
    assert r.by_alexander() == {F(-1, 2): 1, F(1): 3}
    assert r.as_list() == [[-1, "1", 2], [0, "1", 1], [3, "-1/2", 1]]


def test_cycles_boundaries_and_verdict():
    # a -> b, a -> c, so b + c is a boundary but b alone is not
    cx = ChainComplex([(0,), (1,), (2,)], [1, 0, 0], [0, 0, 0], [{1, 2}, set(), set()], 1)
    assert is_cycle(cx, 1) and not is_cycle(cx, 0)
    assert not is_boundary(cx, 1)
    assert transverse_verdict(cx)
    cx2 = ChainComplex([(0,), (1,)], [1, 0], [0, 0], [{1}, set()], 1)
    assert is_boundary(cx2, 1)
    assert not transverse_verdict(cx2)
    cx2.distinguished = 0
    with pytest.raises(ValueError):
        transverse_verdict(cx2)
