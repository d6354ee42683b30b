"""Acceptance criteria 1-10, one test each; the summary prints a PASS/FAIL line per criterion."""

import random
import time
from fractions import Fraction

import pytest

from braidfloer.braid import BraidWord, self_linking
from braidfloer.diskcurves import apply_braid, identity_config, random_word
from braidfloer.gridoracle import grid_for_braid
from braidfloer.heegaard import verify_admissible
from braidfloer.homology import bigraded_ranks
from braidfloer.pipeline import oracle_check, run_pipeline

from conftest import ACCEPTANCE, dense_ranks

F = Fraction


def timed(n, letters, **kw):
    t = time.perf_counter()
    res = run_pipeline(BraidWord(n, letters), **kw)
    return res, time.perf_counter() - t


def common_checks(res):
    assert all(res.checks.values()), res.checks


def test_criterion_01_unknot(acceptance):
    ok = False
    try:
        res, dt = timed(2, (1,))
        common_checks(res)
        assert res.sl == -1 == self_linking(res.word)
        assert res.tilde == {(0, F(0)): 1, (-1, F(-1)): 1}
        assert res.verdict is True and res.verdict_grading == (0, 0)
        assert dt < 5
        ok = True
    finally:
        acceptance(1, "unknot sigma_1 in B_2", ok)


def test_criterion_02_unlink(acceptance):
    ok = False
    try:
        res, dt = timed(2, ())
        assert res.sl == -2
        assert res.verdict_grading == (-1, F(-1, 2))
        assert dt < 5
        assert res.tilde == {(0, F(1, 2)): 1, (-1, F(-1, 2)): 1}
        ok = True
    finally:
        acceptance(2, "two-component unlink, identity in B_2", ok)


def test_criterion_03_right_trefoil(acceptance):
    ok = False
    try:
        res, dt = timed(2, (1, 1, 1))
        common_checks(res)
        assert res.tilde.total == 6
        assert res.hat.by_alexander() == {F(1): 1, F(0): 1, F(-1): 1}
        assert max(res.hat.ranks) == (2, F(1))
        assert res.verdict is True and res.verdict_grading == (2, F(1))
        assert oracle_check(res) is True
        assert dt < 120
        ok = True
    finally:
        acceptance(3, "right trefoil sigma_1^3 in B_2", ok)


def test_criterion_04_negative_stabilized_unknot(acceptance):
    ok = False
    try:
        res, dt = timed(2, (-1,))
        common_checks(res)
        assert res.tilde == {(0, F(0)): 1, (-1, F(-1)): 1}
        assert res.verdict is False and res.verdict_grading == (-2, F(-1))
        assert dt < 30
        ok = True
    finally:
        acceptance(4, "sigma_1^-1 in B_2", ok)


def test_criterion_05_left_trefoil(acceptance):
    ok = False
    try:
        res, dt = timed(2, (-1, -1, -1))
        common_checks(res)
        assert res.tilde.total == 6
        assert res.verdict is False and res.verdict_grading == (-4, F(-2))
        assert dt < 120
        ok = True
    finally:
        acceptance(5, "left trefoil sigma_1^-3 in B_2", ok)


def test_criterion_06_figure_eight(acceptance):
    ok = False
    try:
        res, dt = timed(3, (1, -2, 1, -2))
        common_checks(res)
        assert res.tilde.total == 20
        assert res.hat.total == 5
        assert res.hat.by_alexander() == {F(-1): 1, F(0): 3, F(1): 1}
        grid = grid_for_braid(res.word)
        assert grid is not None and grid.hfk_hat() == res.hat
        assert oracle_check(res) is True
        assert dt < 30 * 60
        ok = True
    finally:
        acceptance(6, "figure-eight in B_3", ok)


PROPERTY_WORDS = [
    (2, ()), (2, (1,)), (2, (-1,)), (2, (1, 1, 1)), (2, (-1, -1, -1)),
    (3, (1, -2, 1, -2)), (3, (1, 2, 1, 2)), (3, (-1, -2, -1, -2)),
    (3, (1, 1, 2, 1)), (3, (2, 2, 1, 2)), (4, (2, 1, 3, 2)), (4, (1, -2, 3, -2)),
]


def test_criterion_07_property_suite(acceptance):
    ok = False
    try:
        for n, letters in PROPERTY_WORDS:
            res = run_pipeline(BraidWord(n, letters))
            cx = res.complex
            assert cx.check_square_zero()
            for i, col in enumerate(cx.diff):
                for j in col:
                    assert cx.maslov[j] == cx.maslov[i] - 1
                    assert cx.alexander[j] == cx.alexander[i]
            assert res.nice.verify_nice()
            assert verify_admissible(res.diagram) and verify_admissible(res.nice)
            assert bigraded_ranks(res.reduced) == dense_ranks(cx)
            red = res.reduced
            i = red.distinguished
            assert i is not None and not red.diff[i]
            assert red.gens[i] == cx.gens[cx.distinguished]
            assert red.bigrading(i) == tuple(res.expected)
        ok = True
    finally:
        acceptance(7, "property suite on every pipeline run", ok)


def test_criterion_08_invariance(acceptance):
    ok = False
    try:
        t = time.perf_counter()
        fig, conj = run_pipeline(BraidWord(3, (1, -2, 1, -2))), run_pipeline(BraidWord(3, (-2, 1, -2, 1)))
        common_checks(fig)
        common_checks(conj)
        assert fig.verdict == conj.verdict and fig.hat == conj.hat
        tre, stab = run_pipeline(BraidWord(2, (1, 1, 1))), run_pipeline(BraidWord(3, (1, 1, 1, 2)))
        common_checks(tre)
        common_checks(stab)
        assert tre.verdict == stab.verdict is True
        assert tre.hat == stab.hat
        assert time.perf_counter() - t < 45 * 60
        ok = True
    finally:
        acceptance(8, "conjugation and positive stabilization invariance", ok)


def test_criterion_09_mapping_class_engine(acceptance):
    ok = False
    try:
        rng = random.Random(2024)
        t = time.perf_counter()
        for _ in range(500):
            n = rng.randint(2, 6)
            w = random_word(rng, n, rng.randint(0, 12))
            base = apply_braid(identity_config(n), w)
            assert apply_braid(identity_config(n), w * w.inverse()) == identity_config(n)
            assert base.reduced
            if n >= 3:
                i = rng.randint(1, n - 2)
                lhs = apply_braid(base, BraidWord(n, (i, i + 1, i)))
                rhs = apply_braid(base, BraidWord(n, (i + 1, i, i + 1)))
                assert lhs == rhs
            if n >= 4:
                i = rng.randint(1, n - 3)
                j = rng.randint(i + 2, n - 1)
                assert apply_braid(base, BraidWord(n, (i, j))) == apply_braid(base, BraidWord(n, (j, i)))
        assert time.perf_counter() - t < 60
        ok = True
    finally:
        acceptance(9, "mapping class engine on 500 random words", ok)


@pytest.mark.parametrize("letters", [(1,), (1, 1, 1)])
def test_criterion_10_cancellation_order(acceptance, letters):
    ok = False
    try:
        t = time.perf_counter()
        a = run_pipeline(BraidWord(2, letters), order="plan")
        b = run_pipeline(BraidWord(2, letters), order="reverse")
        assert a.tilde == b.tilde and a.hat == b.hat
        assert a.verdict == b.verdict and a.verdict_grading == b.verdict_grading
        # also on a word that actually needs cancellation
        c = run_pipeline(BraidWord(3, (1, 2, 1, 2)), order="plan")
        d = run_pipeline(BraidWord(3, (1, 2, 1, 2)), order="reverse")
        assert c.cancellations and c.tilde == d.tilde and c.verdict == d.verdict
        assert time.perf_counter() - t < 5 * 60
        ok = True
    finally:
        # both parametrized runs must pass for the criterion to pass
        prev = ACCEPTANCE.get(10, (None, True))[1]
        acceptance(10, "cancellation order robustness", ok and prev)
