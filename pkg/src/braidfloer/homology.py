"""F2 homology of bigraded complexes and the transverse verdict."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .floer import ChainComplex


@dataclass
class BigradedRanks:
    ranks: dict  # (maslov, alexander) -> rank

    def __post_init__(self):
        self.ranks = {k: v for k, v in sorted(self.ranks.items()) if v}

    @property
    def total(self) -> int:
        return sum(self.ranks.values())

    def by_alexander(self) -> dict:
        out: Counter = Counter()
        for (_, a), r in self.ranks.items():
            out[a] += r
        return dict(sorted(out.items()))

    def __eq__(self, other):
        if isinstance(other, dict):
            return self.ranks == {k: v for k, v in other.items() if v}
        return isinstance(other, BigradedRanks) and self.ranks == other.ranks

    def as_list(self):
        return [[m, str(a), r] for (m, a), r in self.ranks.items()]


class _Eliminator:
    """Row echelon basis over F2 with integers as bit vectors."""

    def __init__(self):
        self.pivots: dict[int, tuple[int, int]] = {}  # leading bit -> (row, combo)

    def reduce(self, row: int, combo: int = 0):
        while row:
            lead = row.bit_length() - 1
            hit = self.pivots.get(lead)
            if hit is None:
                return row, combo
            row ^= hit[0]
            combo ^= hit[1]
        return 0, combo

    def add(self, row: int, combo: int = 0) -> bool:
        row, combo = self.reduce(row, combo)
        if row:
            self.pivots[row.bit_length() - 1] = (row, combo)
            return True
        return False


def _blocks(cx: ChainComplex):
    groups = defaultdict(list)
    for i in range(len(cx)):
        groups[cx.bigrading(i)].append(i)
    return groups


def _boundary_rank(cx: ChainComplex, sources, targets) -> int:
    pos = {j: t for t, j in enumerate(targets)}
    el = _Eliminator()
    rank = 0
    for i in sources:
        bits = 0
        for j in cx.diff[i]:
            bits |= 1 << pos[j]
        if el.add(bits):
            rank += 1
    return rank


def bigraded_ranks(cx: ChainComplex) -> BigradedRanks:
    """Ranks of homology in each bigrading (the differential has degree (-1, 0))."""
    groups = _blocks(cx)
    out_rank = {}
    for (m, a), src in groups.items():
        tgt = groups.get((m - 1, a), [])
        out_rank[(m, a)] = _boundary_rank(cx, src, tgt) if tgt else 0
    ranks = {}
    for (m, a), src in groups.items():
        ranks[(m, a)] = len(src) - out_rank[(m, a)] - out_rank.get((m + 1, a), 0)
    return BigradedRanks(ranks)


def is_cycle(cx: ChainComplex, i: int) -> bool:
    return not cx.diff[i]


def is_boundary(cx: ChainComplex, i: int) -> bool:
    """Whether basis element ``i`` lies in the image of the differential."""
    m, a = cx.bigrading(i)
    groups = _blocks(cx)
    tgt = groups.get((m, a), [])
    pos = {j: t for t, j in enumerate(tgt)}
    el = _Eliminator()
    for s in groups.get((m + 1, a), []):
        bits = 0
        for j in cx.diff[s]:
            bits |= 1 << pos[j]
        el.add(bits)
    rest, _ = el.reduce(1 << pos[i])
    return rest == 0


def transverse_verdict(cx: ChainComplex) -> bool:
    """True iff the distinguished cycle is nonzero in homology."""
    i = cx.distinguished
    if i is None:
        raise ValueError("complex has no distinguished generator")
    if not is_cycle(cx, i):
        raise ValueError("distinguished generator is not a cycle")
    return not is_boundary(cx, i)


def poly_from_ranks(ranks: dict) -> dict:
    return {k: v for k, v in ranks.items() if v}


def deconvolve_v(ranks: BigradedRanks, copies: int) -> BigradedRanks:
    """Divide out ``copies`` tensor factors of V = F_(0,0) + F_(-1,-1).

    Bigraded ranks form a Laurent polynomial in ``q = t^M s^A``; V is
    ``1 + t^-1 s^-1``, so division is done along each diagonal
    ``M - A = const`` from the top down.
    """
    cur = dict(ranks.ranks)
    for _ in range(copies):
        diag = defaultdict(dict)
        for (m, a), r in cur.items():
            diag[m - a][m] = r
        nxt = {}
        for key, row in diag.items():
            rem = dict(row)
            for m in sorted(row, reverse=True):
                c = rem.get(m, 0)
                if c == 0:
                    continue
                if c < 0:
                    raise ValueError("ranks are not divisible by V")
                nxt[(m, m - key)] = c
                rem[m] = 0
                rem[m - 1] = rem.get(m - 1, 0) - c
            if any(v for v in rem.values()):
                raise ValueError("ranks are not divisible by V")
        cur = {(m, Fraction(a)): r for (m, a), r in nxt.items()}
    return BigradedRanks(cur)
