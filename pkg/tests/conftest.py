import numpy as np
import pytest

from braidfloer.braid import BraidWord

ACCEPTANCE: dict = {}


def gf2_rank(m: np.ndarray) -> int:
    """Rank over F2 by dense row reduction on a uint8 copy."""
    a = (np.asarray(m, dtype=np.uint8) & 1).copy()
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if len(hits) == 0:
            continue
        p = r + hits[0]
        a[[r, p]] = a[[p, r]]
        below = np.nonzero(a[:, c])[0]
        below = below[below != r]
        a[below] ^= a[r]
        r += 1
    return r


def dense_ranks(cx) -> dict:
    """Homology ranks per bigrading from the full dense boundary matrix."""
    n = len(cx)
    mat = np.zeros((n, n), dtype=np.uint8)
    for i, col in enumerate(cx.diff):
        for j in col:
            mat[j, i] = 1
    groups: dict = {}
    for i in range(n):
        groups.setdefault(cx.bigrading(i), []).append(i)
    out = {}
    for (m, a), idx in groups.items():
        below = groups.get((m - 1, a), [])
        above = groups.get((m + 1, a), [])
        r_out = gf2_rank(mat[np.ix_(below, idx)]) if below else 0
        r_in = gf2_rank(mat[np.ix_(idx, above)]) if above else 0
        rank = len(idx) - r_out - r_in
        if rank:
            out[(m, a)] = rank
    return out


def word(n, *letters):
    return BraidWord(n, tuple(letters))


@pytest.fixture
def acceptance():
    def record(number: int, title: str, ok: bool):
        ACCEPTANCE[number] = (title, ok)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {title}")


def random_complex(rng, pairs=10, free=5, mrange=(-3, 3), arange=(-2, 2), slides=60):
    """Random bigraded complex with known homology.

    Starts from ``free`` isolated generators plus ``pairs`` acyclic pairs
    ``a -> b`` and scrambles the basis by grading preserving handle slides.
    Returns ``(ChainComplex, expected ranks)``.
    """
    from fractions import Fraction

    from braidfloer.floer import ChainComplex

    mas, alx, edges = [], [], []
    expected: dict = {}
    for _ in range(free):
        g = (rng.randint(*mrange), Fraction(rng.randint(*arange)))
        mas.append(g[0])
        alx.append(g[1])
        expected[g] = expected.get(g, 0) + 1
    for _ in range(pairs):
        m, a = rng.randint(*mrange), Fraction(rng.randint(*arange))
        mas += [m, m - 1]
        alx += [a, a]
        edges.append((len(mas) - 2, len(mas) - 1))
    n = len(mas)
    mat = np.zeros((n, n), dtype=np.uint8)
    for a, b in edges:
        mat[b, a] = 1
    for _ in range(slides):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j or (mas[i], alx[i]) != (mas[j], alx[j]):
            continue
        e = np.eye(n, dtype=np.uint8)
        e[j, i] = 1
        mat = (e @ mat @ e) & 1
    diff = [set(np.nonzero(mat[:, c])[0].tolist()) for c in range(n)]
    return ChainComplex([(k,) for k in range(n)], mas, alx, diff), expected
