import itertools
import math
from fractions import Fraction

import pytest

from braidfloer.braid import BraidWord, closure_components, self_linking
from braidfloer.floer import ResourceLimitError
from braidfloer.gridoracle import (
    FIGURE_EIGHT,
    STABILIZED_UNKNOT,
    TREFOIL_NEG,
    TREFOIL_POS,
    UNKNOT_2,
    UNLINK_2,
    GridDiagram,
    GridError,
    grid_for_braid,
    grid_from_braid,
)

from conftest import dense_ranks

F = Fraction


def euler(ranks) -> dict:
    out: dict = {}
    for (m, a), r in ranks.ranks.items():
        out[a] = out.get(a, 0) + (-1) ** (m % 2) * r
    return {a: c for a, c in out.items() if c}


def naive_differential(g: GridDiagram, x: tuple) -> set:
    """Empty rectangles out of ``x`` by direct cell inspection on the torus, mod 2."""
    n = g.size
    out = set()
    for i, j in itertools.permutations(range(n), 2):
        width = (j - i) % n
        height = (x[j] - x[i]) % n
        if height == 0:
            continue
        cols = [(i + s) % n for s in range(width)]
        rows = [(x[i] + s) % n for s in range(height)]
        if any(g.O[c] in rows or g.X[c] in rows for c in cols):
            continue
        inner = [(i + s) % n for s in range(1, width)]
        if any((x[c] - x[i]) % n in range(1, height) for c in inner):
            continue
        y = list(x)
        y[i], y[j] = x[j], x[i]
        out ^= {tuple(y)}
    return out


@pytest.mark.parametrize("g", [UNKNOT_2, STABILIZED_UNKNOT, UNLINK_2])
def test_complex_matches_naive_rectangles(g):
    cx = g.complex()
    for k, x in enumerate(cx.gens):
        assert {cx.gens[j] for j in cx.diff[k]} == naive_differential(g, x)


@pytest.mark.parametrize("g", [UNKNOT_2, STABILIZED_UNKNOT, UNLINK_2, TREFOIL_POS, FIGURE_EIGHT])
def test_complex_is_a_graded_complex(g):
    cx = g.complex()
    assert len(cx) == len(set(cx.gens)) == math.factorial(g.size)
    assert cx.check_square_zero() and cx.check_grading()
    assert g.homology() == dense_ranks(cx)


def test_unknot_2x2():
    assert UNKNOT_2.homology() == {(0, F(0)): 1, (-1, F(-1)): 1}
    assert UNKNOT_2.hfk_hat() == {(0, F(0)): 1}
    assert UNKNOT_2.invariant() == ((0, F(0)), True)


def test_trefoil_hat_ranks():
    hat = TREFOIL_POS.hfk_hat()
    assert hat.by_alexander() == {F(-1): 1, F(0): 1, F(1): 1}
    assert euler(hat) == {F(1): 1, F(0): -1, F(-1): 1}


def test_figure_eight_hat_ranks():
    hat = FIGURE_EIGHT.hfk_hat()
    assert hat.total == 5
    assert hat.by_alexander() == {F(-1): 1, F(0): 3, F(1): 1}
    assert euler(hat) == {F(1): -1, F(0): 3, F(-1): -1}


def test_unlink_has_vanishing_euler_characteristic():
    assert UNLINK_2.components() == 2
    hat = UNLINK_2.hfk_hat()
    assert euler(hat) == {}
    assert hat == {(0, F(-1, 2)): 1, (-1, F(-1, 2)): 1}


def test_invariant_calibration():
    assert TREFOIL_POS.invariant() == ((2, F(1)), True)
    assert max(TREFOIL_POS.hfk_hat().ranks) == (2, F(1))
    assert TREFOIL_NEG.invariant() == ((-4, F(-2)), False)
    assert STABILIZED_UNKNOT.invariant() == ((-2, F(-1)), False)
    assert FIGURE_EIGHT.invariant() == ((-2, F(-1)), False)


def test_fixture_gradings_match_self_linking():
    for (n, letters), g in [((2, (1,)), UNKNOT_2), ((2, (1, 1, 1)), TREFOIL_POS), ((2, (-1,)), STABILIZED_UNKNOT)]:
        sl = self_linking(BraidWord(n, letters))
        assert g.invariant()[0] == (sl + 1, F(sl + 1, 2))


@pytest.mark.parametrize(
    "n,letters", [(2, (1, 1)), (2, (1, -1)), (3, (1, 2, -1)), (3, (1, -2, 1)), (2, (1, 1, 1))]
)
def test_converted_grid_matches_braid(n, letters):
    w = BraidWord(n, letters)
    g = grid_from_braid(w)
    assert g.components() == closure_components(w)
    sl = self_linking(w)
    assert g.invariant()[0] == (sl + 1, F(sl + 1, 2))


def test_converter_rejects_unusable_words():
    with pytest.raises(GridError):
        grid_from_braid(BraidWord(2, ()))
    with pytest.raises(GridError):
        grid_from_braid(BraidWord(3, (1, 1)))


def test_grid_for_braid_lookup():
    assert grid_for_braid(BraidWord(2, (1, 1, 1))) is TREFOIL_POS
    assert grid_for_braid(BraidWord(4, (1, 2, 3, 1, 2, 3, 1, 2, 3)), max_size=8) is None


@pytest.mark.parametrize(
    "o,x", [((0, 1), (0, 1)), ((0, 0), (1, 0)), ((0, 1), (1, 0, 2)), ((), ())]
)
def test_invalid_grids(o, x):
    with pytest.raises(GridError):
        GridDiagram(o, x)


def test_resource_limit():
    with pytest.raises(ResourceLimitError):
        FIGURE_EIGHT.complex(limit=100)
