"""Grid diagrams and their tilde grid complex, used as an independent check.

A grid of size N has one O and one X marking in every row and column;
``O[c]`` and ``X[c]`` are the rows of the markings in column ``c``.  Lattice
points are ``(c, r)`` with the marking of cell ``(c, r)`` sitting at
``(c + 1/2, r + 1/2)``.  A generator is a permutation ``x`` whose point in
column ``c`` is ``(c, x[c])``.  The tilde complex counts empty rectangles
containing no marking at all, and its homology is ``HFK^ (x) V^(N - l)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

import numpy as np

from .braid import BraidWord
from .floer import ChainComplex, ResourceLimitError
from .homology import BigradedRanks, bigraded_ranks, deconvolve_v, is_boundary


class GridError(ValueError):
    pass


@dataclass(frozen=True)
class GridDiagram:
    O: tuple
    X: tuple

    def __post_init__(self):
        n = len(self.O)
        if len(self.X) != n or n == 0:
            raise GridError("O and X must have the same positive length")
        if sorted(self.O) != list(range(n)) or sorted(self.X) != list(range(n)):
            raise GridError("markings must be permutations")
        if any(o == x for o, x in zip(self.O, self.X)):
            raise GridError("a cell holds both markings")

    @property
    def size(self) -> int:
        return len(self.O)

    def components(self) -> int:
        n = self.size
        row_x = {x: c for c, x in enumerate(self.X)}
        seen = set()
        count = 0
        for start in range(n):
            if start in seen:
                continue
            count += 1
            c = start
            while c not in seen:
                seen.add(c)
                # vertical X -> O in column c, then horizontal O -> X along that row
                c = row_x[self.O[c]]
        return count

    # gradings ---------------------------------------------------------------
    def _maslov_many(self, gens: np.ndarray, marks) -> np.ndarray:
        """``M_m(x) = J(x - m, x - m) + 1`` for every row of ``gens``.

        Lattice points sit at ``(c, x[c])`` and markings at ``(c + 1/2, m[c] + 1/2)``,
        so for columns ``c < d`` the marking of ``c`` lies left of the point of ``d``.
        """
        n = self.size
        m = np.asarray(marks)
        cols = np.arange(n)
        lt = cols[:, None] < cols[None, :]  # c < d
        le = cols[:, None] <= cols[None, :]  # c + 1/2 < d + 1 etc
        # I(x, x): pairs of points increasing in both coordinates
        xx = ((gens[:, :, None] < gens[:, None, :]) & lt).sum((1, 2))
        # I(x, m): point (c, x_c) below-left of marking (d + 1/2, m_d + 1/2)
        xm = ((gens[:, :, None] <= m[None, None, :]) & le).sum((1, 2))
        # I(m, x): marking (c + 1/2, m_c + 1/2) below-left of point (d, x_d)
        mx = ((m[None, :, None] < gens[:, None, :]) & lt).sum((1, 2))
        mm = ((m[:, None] < m[None, :]) & lt).sum()
        return xx - (xm + mx) + mm + 1

    def gradings_many(self, gens):
        arr = np.asarray(gens, dtype=int).reshape(-1, self.size)
        mo = self._maslov_many(arr, self.O)
        mx = self._maslov_many(arr, self.X)
        # (N - 1)/2 also for links, matching the anchor A = (sl + 1)/2
        shift = self.size - 1
        alx = [Fraction(int(a) - int(b) - shift, 2) for a, b in zip(mo, mx)]
        return [int(v) for v in mo], alx

    def gradings(self, x):
        mas, alx = self.gradings_many([x])
        return mas[0], alx[0]

    # canonical generator -------------------------------------------------------
    def canonical_generator(self) -> tuple:
        """The lower-left corners of the X markings.

        Calibrated on the 2x2 unknot and on the trefoil closures, where it sits at
        ``(sl + 1, (sl + 1)/2)`` in the same chirality as the braid pipeline.
        """
        return tuple(self.X)

    # complex -------------------------------------------------------------------
    def complex(self, limit: int = 5_000_000) -> ChainComplex:
        n = self.size
        count = 1
        for k in range(2, n + 1):
            count *= k
        if count > limit:
            raise ResourceLimitError(f"grid of size {n} has {count} generators")
        gens = sorted(permutations(range(n)))
        index = {g: i for i, g in enumerate(gens)}
        blocked = np.zeros((n, n), dtype=bool)
        for c in range(n):
            blocked[c, self.O[c]] = True
            blocked[c, self.X[c]] = True
        # prefix sums over the doubled torus for O(1) marking counts
        tiled = np.tile(blocked.astype(int), (2, 2))
        pre = np.zeros((2 * n + 1, 2 * n + 1), dtype=int)
        pre[1:, 1:] = tiled.cumsum(0).cumsum(1)

        def marks(c0, w, r0, h):
            return pre[c0 + w, r0 + h] - pre[c0, r0 + h] - pre[c0 + w, r0] + pre[c0, r0]

        mas, alx = self.gradings_many(gens)
        diff = [set() for _ in gens]
        for i, x in enumerate(gens):
            for c0 in range(n):
                r0 = x[c0]
                for w in range(1, n):
                    c1 = (c0 + w) % n
                    h = (x[c1] - r0) % n
                    if h == 0 or marks(c0, w, r0, h):
                        continue
                    # no point of x strictly inside
                    if any(0 < (x[(c0 + t) % n] - r0) % n < h for t in range(1, w)):
                        continue
                    y = list(x)
                    y[c0], y[c1] = x[c1], x[c0]
                    diff[i] ^= {index[tuple(y)]}
        cx = ChainComplex(gens, mas, alx, diff, index[self.canonical_generator()])
        return cx

    def homology(self) -> BigradedRanks:
        return bigraded_ranks(self.complex())

    def hfk_hat(self) -> BigradedRanks:
        return deconvolve_v(self.homology(), self.size - self.components())

    def invariant(self):
        """Bigrading of the canonical generator and whether it is nonzero in homology."""
        cx = self.complex()
        i = cx.distinguished
        if cx.diff[i]:
            raise GridError("canonical generator is not a cycle")
        return cx.bigrading(i), not is_boundary(cx, i)


def grid_from_braid(w: BraidWord) -> GridDiagram:
    """Grid diagram of the braid closure with two columns per letter.

    Strands run left to right at heights ``1..n`` and close up by wrapping
    around the torus.  Letter ``l`` swaps heights ``k, k+1`` with vertical
    segments in columns ``2l`` and ``2l+1``; between them the two strands
    share a height, which is resolved by ordering the rows at that height.
    """
    n, letters = w.strands, w.letters
    m = len(letters)
    if m == 0:
        raise GridError("the empty braid has no grid from this construction")
    # each letter leaves one of its two heights free of overlap; every touched
    # height needs one such gap so its rows can be ordered linearly
    touched = sorted({abs(k) for k in letters} | {abs(k) + 1 for k in letters})
    if touched != list(range(1, n + 1)):
        raise GridError("every strand must take part in a crossing")
    gap = _choose_gaps(n, letters)

    pos = list(range(1, n + 1))  # pos[h-1] = strand at height h
    verticals = []  # (column, strand, from_height, to_height)
    orders = []  # (height, column, later_above)
    for l, k in enumerate(letters):
        j = abs(k)
        up, down = pos[j - 1], pos[j]
        # up-over for positive letters; which strand moves first decides the
        # height where the two strands overlap
        up_over = k > 0
        if gap[l] == j:  # overlap at height j+1: the up strand moves first
            first, second = (up, j, j + 1), (down, j + 1, j)
            overlap = j + 1
        else:
            first, second = (down, j + 1, j), (up, j, j + 1)
            overlap = j
        verticals.append((2 * l, *first))
        verticals.append((2 * l + 1, *second))
        # the vertical of the over strand must pass the other's horizontal
        orders.append((overlap, 2 * l, up_over))
        pos[j - 1], pos[j] = down, up

    # horizontal segments: at each height, the pieces between consecutive
    # vertical endpoints, wrapping around the torus
    arrivals: dict[int, list] = {h: [] for h in range(1, n + 1)}
    departures: dict[int, list] = {h: [] for h in range(1, n + 1)}
    for col, strand, h0, h1 in verticals:
        departures[h0].append(col)
        arrivals[h1].append(col)
    segments = []  # (height, start_col, end_col)
    seg_of_arrival = {}
    seg_of_departure = {}
    for h in range(1, n + 1):
        # occupants leave a height in the order they arrived; the one left
        # at the end wraps around to the first departure
        events = sorted([(a, 1) for a in arrivals[h]] + [(d, 0) for d in departures[h]])
        queue = [None]
        pairs = []
        for col, is_arrival in events:
            if is_arrival:
                queue.append(col)
            else:
                pairs.append([queue.pop(0), col])
        (last,) = queue
        pairs[0][0] = last
        for a, d in pairs:
            segments.append((h, a, d))
            seg_of_arrival[(h, a)] = len(segments) - 1
            seg_of_departure[(h, d)] = len(segments) - 1
    # order rows within each height from the overlap constraints
    key = {}
    for h in range(1, n + 1):
        idx = [i for i, s in enumerate(segments) if s[0] == h]
        above: dict[int, set] = {i: set() for i in idx}
        for oh, col, later_above in orders:
            if oh != h:
                continue
            # overlap between the segment arriving at col or col+1 and the one
            # departing at col or col+1
            later = seg_of_arrival.get((h, col), seg_of_arrival.get((h, col + 1)))
            earlier = seg_of_departure.get((h, col + 1), seg_of_departure.get((h, col)))
            hi, lo = (later, earlier) if later_above else (earlier, later)
            above[hi].add(lo)
        order = _toposort(above)
        for rank, i in enumerate(order):
            key[i] = (h, rank)
    rows = sorted(range(len(segments)), key=lambda i: key[i])
    row_of = {i: r for r, i in enumerate(rows)}
    size = len(verticals)
    O = [None] * size
    X = [None] * size
    for col, strand, h0, h1 in verticals:
        # the strand arrives along the row it leaves at the X marking
        X[col] = row_of[seg_of_departure[(h0, col)]]
        O[col] = row_of[seg_of_arrival[(h1, col)]]
    return GridDiagram(tuple(O), tuple(X))


def _choose_gaps(n: int, letters) -> list:
    """For each letter the height (k or k+1) left without overlap, covering every height."""
    want = set(range(1, n + 1))
    if len(letters) <= 16:
        for bits in product((0, 1), repeat=len(letters)):
            choice = [abs(k) + b for k, b in zip(letters, bits)]
            if set(choice) == want:
                return choice
    raise GridError("could not place the crossings")


def _toposort(above: dict) -> list:
    """Order items bottom to top, each above everything in ``above[item]``."""
    out = []
    state = {}

    def visit(i):
        if state.get(i) == 1:
            raise GridError("inconsistent row order")
        if state.get(i) == 2:
            return
        state[i] = 1
        for j in sorted(above[i]):
            visit(j)
        state[i] = 2
        out.append(i)

    for i in sorted(above):
        visit(i)
    return out


# Fixtures -------------------------------------------------------------------

UNKNOT_2 = GridDiagram((0, 1), (1, 0))
# closure of sigma_1^3, canonical generator nonzero at the top (2, 1)
TREFOIL_POS = GridDiagram((0, 1, 2, 3, 4), (2, 3, 4, 0, 1))
# column reversal of TREFOIL_POS, matching sigma_1^-3
TREFOIL_NEG = GridDiagram((4, 3, 2, 1, 0), (1, 0, 4, 3, 2))
FIGURE_EIGHT = GridDiagram((3, 0, 1, 5, 4, 2), (1, 2, 4, 3, 0, 5))
# unknot whose canonical generator sits at (-2, -1), outside the support
STABILIZED_UNKNOT = GridDiagram((0, 2, 1), (2, 1, 0))

# two 2x2 unknot blocks: the two-component unlink
UNLINK_2 = GridDiagram((0, 1, 2, 3), (1, 0, 3, 2))

FIXTURES = {
    "unknot": UNKNOT_2,
    "trefoil+": TREFOIL_POS,
    "trefoil-": TREFOIL_NEG,
    "figure-eight": FIGURE_EIGHT,
    "stabilized-unknot": STABILIZED_UNKNOT,
    "unlink": UNLINK_2,
}

# braid words whose closures the fixtures present, in the same transverse class
BRAID_FIXTURES = {
    (2, ()): UNLINK_2,
    (2, (1,)): UNKNOT_2,
    (2, (-1,)): STABILIZED_UNKNOT,
    (2, (1, 1, 1)): TREFOIL_POS,
    (2, (-1, -1, -1)): TREFOIL_NEG,
    (3, (1, -2, 1, -2)): FIGURE_EIGHT,
}


def grid_for_braid(w: BraidWord, max_size: int = 8) -> GridDiagram | None:
    """A fixture grid for ``w`` if there is one, else the converted grid when small enough."""
    g = BRAID_FIXTURES.get((w.strands, tuple(w.letters)))
    if g is not None:
        return g
    try:
        g = grid_from_braid(w)
    except GridError:
        return None
    return g if g.size <= max_size else None
