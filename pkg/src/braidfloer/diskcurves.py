"""Arcs in the punctured disk and the braid diagram of a braid closure.

The disk ``D`` carries punctures ``z_1..z_n`` on the horizontal axis and,
from each puncture, a ray ``c_k`` running straight down to the boundary.
Cutting along the rays leaves a single puncture-free disk, so an arc with
both endpoints on the boundary is pinned down (up to isotopy rel
endpoints) by the signed sequence of rays it crosses:
``+k`` crosses ``c_k`` left to right, ``-k`` right to left.  Reduced
sequences are exactly the arcs in minimal position with the rays, since a
bigon between an arc and a ray is a cancelling pair ``k, -k``.

Coordinates used for endpoints are scaled by 4: the vertical arc ``a_j``
sits at ``x = 4j + 2`` (between punctures ``j`` and ``j+1``), and its
pushoff ``b_j`` runs from ``x = 4j + 1`` on the top edge to ``x = 4j + 3``
on the bottom edge, i.e. both endpoints are shifted along the
counterclockwise boundary orientation.
"""

from __future__ import annotations

import functools
import random
import sys
from dataclasses import dataclass

from .braid import BraidWord

Word = tuple[int, ...]

# Which free-group automorphism realizes the positive generator.  Pinned by
# the trefoil chirality fixtures (right-handed closure has nonzero invariant).
POSITIVE_TWIST = +1


class ConfigurationError(ValueError):
    pass


def free_reduce(word) -> Word:
    out: list[int] = []
    for k in word:
        if out and out[-1] == -k:
            out.pop()
        else:
            out.append(k)
    return tuple(out)


def invert(word) -> Word:
    return tuple(-k for k in reversed(word))


@dataclass(frozen=True)
class ArcConfiguration:
    """Images of the arcs ``b_1..b_{n-1}`` as ray-crossing words.

    Arc ``i`` runs from its top endpoint (``x = 4i + 1``) to its bottom
    endpoint (``x = 4i + 3``).
    """

    punctures: int
    words: tuple[Word, ...]

    @property
    def reduced(self) -> bool:
        return all(free_reduce(w) == w for w in self.words)

    def crossing_lengths(self) -> list[int]:
        return [len(w) for w in self.words]

    def dump(self) -> str:
        lines = [f"punctures {self.punctures}"]
        for i, w in enumerate(self.words, start=1):
            lines.append(f"b{i}: " + " ".join(str(k) for k in w))
        return "\n".join(lines) + "\n"


def identity_config(n: int) -> ArcConfiguration:
    if n < 1:
        raise ConfigurationError("need at least one puncture")
    return ArcConfiguration(n, tuple(() for _ in range(n - 1)))


def _tail(i: int) -> Word:
    # Boundary path from the top-left corner to the bottom endpoint of b_i.
    return tuple(range(1, i + 1))


def _twist_images(j: int, sign: int) -> dict[int, Word]:
    """Images of the generators x_j, x_{j+1} under the half twist."""
    if sign * POSITIVE_TWIST > 0:
        return {j: (j, j + 1, -j), j + 1: (j,)}
    return {j: (j + 1,), j + 1: (-(j + 1), j, j + 1)}


def _apply_automorphism(word, images: dict[int, Word]) -> Word:
    out: list[int] = []
    for k in word:
        img = images.get(abs(k))
        if img is None:
            out.append(k)
        elif k > 0:
            out.extend(img)
        else:
            out.extend(invert(img))
    return free_reduce(out)


def reduce_bigons(cfg: ArcConfiguration) -> ArcConfiguration:
    """Remove every puncture-free bigon between an arc and a ray."""
    return ArcConfiguration(cfg.punctures, tuple(free_reduce(w) for w in cfg.words))


def apply_half_twist(cfg: ArcConfiguration, j: int, sign: int) -> ArcConfiguration:
    n = cfg.punctures
    if not 1 <= j <= n - 1:
        raise ConfigurationError(f"twist index {j} out of range for {n} punctures")
    if sign not in (1, -1):
        raise ConfigurationError("twist sign must be +1 or -1")
    images = _twist_images(j, sign)
    words = []
    for i, w in enumerate(cfg.words, start=1):
        tail = _tail(i)
        loop = free_reduce(w + invert(tail))
        words.append(free_reduce(_apply_automorphism(loop, images) + tail))
    return ArcConfiguration(n, tuple(words))


def apply_braid(cfg: ArcConfiguration, w: BraidWord) -> ArcConfiguration:
    if cfg.punctures != w.strands:
        raise ConfigurationError("braid and configuration disagree on strand count")
    for k in w.letters:
        cfg = apply_half_twist(cfg, abs(k), 1 if k > 0 else -1)
    return cfg


def random_word(rng: random.Random, strands: int, length: int) -> BraidWord:
    letters = [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(length)]
    return BraidWord(strands, tuple(letters))


# ---------------------------------------------------------------------------
# Layout of one disk side

# Boundary slots of the cut disk in counterclockwise order:
#   s_0, L_1, R_1, s_1, L_2, R_2, s_2, ..., L_n, R_n, s_n, TOP
# s_k is the bottom boundary between rays c_k and c_{k+1}; L_k / R_k are the
# left / right banks of ray c_k; TOP is the rest of the boundary.

def _slot_s(k: int) -> int:
    return 3 * k


def _slot_l(k: int) -> int:
    return 3 * k - 2


def _slot_r(k: int) -> int:
    return 3 * k - 1


def _slot_top(n: int) -> int:
    return 3 * n + 1


@dataclass
class Chord:
    """One straight piece of an arc inside the cut disk."""

    arc: int
    index: int
    start: tuple
    end: tuple


@dataclass
class SideLayout:
    """Planar arrangement of the a-arcs and b-arcs on one copy of the disk.

    ``a_events[j]`` / ``b_events[i]`` list, in arc order, the items met along
    the arc: ``("x", key, sign)`` for a crossing, where ``key`` is
    ``(b_arc, chord, a_arc)`` and is shared by both arcs, and
    ``("p", k, end)`` when puncture ``k``'s piece lies on the left of the arc
    directed inward from its ``"start"`` or ``"end"`` endpoint.  Both arcs
    run top to bottom.
    """

    punctures: int
    a_events: list
    b_events: list


class _Arrangement:
    def __init__(self, n: int, words):
        self.n = n
        self.words = [tuple(w) for w in words]
        self.nslots = 3 * n + 2
        self._depth: dict[tuple[int, int], int] = {}
        self._rank_rays()

    # endpoint positions ------------------------------------------------
    def top_end(self, i: int):
        return (_slot_top(self.n), -(4 * i + 1))

    def bottom_end(self, i: int):
        return (_slot_s(i), 4 * i + 3)

    # crossing comparison -------------------------------------------------
    def _next_end(self, arc: int, idx: int, forward: bool):
        """Where the chord leaving crossing ``idx`` (crossing to the right bank) ends.

        Returns ``("fixed", position)`` or ``("ray", slot, (arc, idx2))``.
        """
        w = self.words[arc]
        if forward:
            j = idx + 1
            if j == len(w):
                return ("fixed", self.bottom_end(arc + 1))
            k = w[j]
            # traveling forward, crossing +k is entered from the left bank
            return ("ray", _slot_l(k) if k > 0 else _slot_r(-k), (arc, j))
        j = idx - 1
        if j < 0:
            return ("fixed", self.top_end(arc + 1))
        k = w[j]
        # traveling backward, crossing +k is entered from the right bank
        return ("ray", _slot_r(k) if k > 0 else _slot_l(-k), (arc, j))

    def _follow(self, c, bank: str):
        """Far end of the chord leaving crossing ``c`` along the given bank."""
        arc, idx = c
        k = self.words[arc][idx]
        # the chord on the right bank leads forward after a left-to-right crossing
        return self._next_end(arc, idx, forward=(k > 0) == (bank == "R"))

    @functools.lru_cache(maxsize=None)
    def shallower(self, c1, c2, bank: str = "R") -> bool:
        """True if crossing c1 lies closer to the puncture than c2 on their ray.

        Decided by the nesting of the chords leaving both crossings on
        ``bank``; when those reach the same bank of another ray the question
        moves there, continuing along the arcs through the opposite bank.
        """
        ray = abs(self.words[c1[0]][c1[1]])
        origin = _slot_r(ray) if bank == "R" else _slot_l(ray)
        p2 = self._follow(c1, bank)
        q2 = self._follow(c2, bank)
        slot_p = p2[1][0] if p2[0] == "fixed" else p2[1]
        slot_q = q2[1][0] if q2[0] == "fixed" else q2[1]
        rel_p = (slot_p - origin) % self.nslots
        rel_q = (slot_q - origin) % self.nslots
        # right bank: the shallower chord reaches further counterclockwise
        further = bank == "R"
        if rel_p != rel_q:
            return (rel_p > rel_q) == further
        if p2[0] == "fixed":
            return (p2[1] > q2[1]) == further
        a, b = q2[2], p2[2]
        if a == b:
            raise ConfigurationError("arcs are not disjoint")
        # within a right-bank slot keys grow with depth, within a left bank they shrink
        p_deeper = (slot_p % 3 == 2) == further
        nxt = "L" if slot_p % 3 == 2 else "R"
        return self.shallower(a, b, nxt) if p_deeper else self.shallower(b, a, nxt)

    def _rank_rays(self):
        by_ray: dict[int, list] = {}
        for arc, w in enumerate(self.words):
            for idx, k in enumerate(w):
                by_ray.setdefault(abs(k), []).append((arc, idx))

        def cmp(c1, c2):
            if c1 == c2:
                return 0
            return -1 if self.shallower(c1, c2) else 1

        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 20000))
        try:
            for ray, cs in by_ray.items():
                cs.sort(key=functools.cmp_to_key(cmp))
                for rank, c in enumerate(cs):
                    self._depth[c] = rank
        finally:
            sys.setrecursionlimit(old)

    # chords ---------------------------------------------------------------
    def chords(self):
        """Chords of every b-arc, in arc order."""
        out = []
        for arc, w in enumerate(self.words):
            pos = self.top_end(arc + 1)
            for idx, k in enumerate(w):
                d = self._depth[(arc, idx)]
                if k > 0:
                    end, nxt = (_slot_l(k), -d), (_slot_r(k), d)
                else:
                    end, nxt = (_slot_r(-k), d), (_slot_l(-k), -d)
                out.append(Chord(arc, idx, pos, end))
                pos = nxt
            out.append(Chord(arc, len(w), pos, self.bottom_end(arc + 1)))
        return out


def _in_ccw_open(lo, hi, p) -> bool:
    if lo < hi:
        return lo < p < hi
    return p > lo or p < hi


def _ccw_dist(origin, p):
    return (0 if p >= origin else 1, p)


def layout_side(n: int, words) -> SideLayout:
    """Planar arrangement of ``a_1..a_{n-1}`` and arcs with the given words.

    Signs are planar: +1 when (a direction, b direction) is a positive frame,
    with both arcs oriented top to bottom.
    """
    arr = _Arrangement(n, words)
    bchords = arr.chords()
    top = _slot_top(n)
    achords = [Chord(j, 0, (top, -(4 * j + 2)), (_slot_s(j), 4 * j + 2)) for j in range(1, n)]

    a_hits: dict[int, list] = {j: [] for j in range(1, n)}
    b_hits: dict[int, list] = {}
    for bc in bchords:
        hits = []
        for ac in achords:
            if _in_ccw_open(bc.start, bc.end, ac.start) != _in_ccw_open(bc.start, bc.end, ac.end):
                # frame (a, b) is positive iff b starts counterclockwise-between a's ends
                sign = 1 if _in_ccw_open(ac.start, ac.end, bc.start) else -1
                inner_b = ac.start if _in_ccw_open(bc.start, bc.end, ac.start) else ac.end
                inner_a = bc.start if _in_ccw_open(ac.start, ac.end, bc.start) else bc.end
                key = (bc.arc, bc.index, ac.arc)
                hits.append((_ccw_dist(bc.start, inner_b), key, sign))
                a_hits[ac.arc].append((_ccw_dist(ac.start, inner_a), key, sign))
        hits.sort()
        b_hits[(bc.arc, bc.index)] = [("x", key, s) for _, key, s in hits]

    # Puncture k lies at the tip of ray c_k, between slots L_k and R_k.  The
    # first chord endpoint counterclockwise after the tip bounds its region.
    ends = []
    for bc in bchords:
        ends.append((bc.start, "b", (bc.arc, bc.index), "start"))
        ends.append((bc.end, "b", (bc.arc, bc.index), "end"))
    for ac in achords:
        ends.append((ac.start, "a", ac.arc, "start"))
        ends.append((ac.end, "a", ac.arc, "end"))
    ends.sort()
    marks: dict[tuple, list] = {}
    for k in range(1, n + 1):
        tip = (_slot_l(k), float("inf"))
        first = next((e for e in ends if e[0] > tip), ends[0] if ends else None)
        if first is None:
            continue
        marks.setdefault((first[1], first[2], first[3]), []).append(k)

    b_events = []
    for arc in range(len(arr.words)):
        ev = []
        for idx in range(len(arr.words[arc]) + 1):
            key = (arc, idx)
            for k in marks.get(("b", key, "start"), []):
                ev.append(("p", k, "start"))
            ev.extend(b_hits[key])
            for k in marks.get(("b", key, "end"), []):
                ev.append(("p", k, "end"))
        b_events.append(ev)
    a_events = []
    for j in range(1, n):
        ev = [("p", k, "start") for k in marks.get(("a", j, "start"), [])]
        ev.extend(("x", b, s) for _, b, s in sorted(a_hits[j]))
        ev.extend(("p", k, "end") for k in marks.get(("a", j, "end"), []))
        a_events.append(ev)
    return SideLayout(n, a_events, b_events)


# ---------------------------------------------------------------------------
# The doubled disk

def _boundary_endpoints(n: int):
    """Arc endpoints on the boundary circle in counterclockwise order.

    Items are ``(position, family, arc, end)`` with ``family`` 0 for a-arcs
    and 1 for b-arcs, arcs numbered from 1.
    """
    top = _slot_top(n)
    pts = []
    for j in range(1, n):
        pts.append(((top, -(4 * j + 2)), 0, j, "start"))
        pts.append(((_slot_s(j), 4 * j + 2), 0, j, "end"))
        pts.append(((top, -(4 * j + 1)), 1, j, "start"))
        pts.append(((_slot_s(j), 4 * j + 3), 1, j, "end"))
    pts.sort()
    return pts


def build_braid_diagram(w: BraidWord, cfg: ArcConfiguration | None = None):
    """Genus-zero diagram for the closure of ``w`` in the sphere ``D u -D'``.

    ``D`` holds the arcs ``a_j`` and ``b_j``; the mirror copy ``D'`` holds
    ``a_j`` and the images of ``b_j`` under the braid.  The curve ``alpha_j``
    runs down ``a_j`` on ``D`` and back up on ``D'``; ``beta_j`` likewise.
    ``z_k`` marks puncture ``k`` on ``D`` and ``w_k`` on ``D'``.
    """
    from .heegaard import ALPHA, BETA, HeegaardDiagram

    n = w.strands
    if cfg is None:
        cfg = apply_braid(identity_config(n), w)
    d = HeegaardDiagram()
    d.strands = n
    if n == 1:
        d.basepoints = {"z1": None, "w1": None}
        return d
    front = layout_side(n, [()] * (n - 1))
    back = layout_side(n, cfg.words)

    vid: dict[tuple, int] = {}

    def vertex(side, key, sign):
        k = (side,) + key
        if k not in vid:
            b_arc, _, a_arc = key
            # the back copy is glued in with reversed orientation
            vid[k] = d.new_vertex(a_arc - 1, b_arc, sign if side == 0 else -sign)
        return vid[k]

    def crossings(side, events):
        return [vertex(side, e[1], e[2]) for e in events if e[0] == "x"]

    alphas, betas = [], []
    for j in range(n - 1):
        fr = crossings(0, front.a_events[j])
        alphas.append((fr, fr + crossings(1, back.a_events[j])[::-1]))
    for i in range(n - 1):
        fr = crossings(0, front.b_events[i])
        betas.append((fr, fr + crossings(1, back.b_events[i])[::-1]))
    for fr, seq in alphas:
        d.add_curve(ALPHA, seq)
    for fr, seq in betas:
        d.add_curve(BETA, seq)

    def inward_dart(fam, arc, end):
        """Dart whose left side is the left of the arc directed inward from ``end``."""
        fr, seq = (alphas if fam == ALPHA else betas)[arc - 1]
        if end == "start":
            return (fam, arc - 1, seq[-1], 1)
        return (fam, arc - 1, fr[-1], -1)

    def mark_dart(fam, arc, side, m, end):
        """Dart for a puncture mark after ``m`` crossings along the arc's chords."""
        fr, seq = (alphas if fam == ALPHA else betas)[arc - 1]
        if side == 0:
            u = seq[-1] if m == 0 else fr[m - 1]
        else:
            # the back copy is traversed against the arc direction
            bk = seq[len(fr):][::-1]
            u = bk[m] if m < len(bk) else fr[-1]
        return (fam, arc - 1, u, 1 if end == "start" else -1)

    for side, layout, name in ((0, front, "z"), (1, back, "w")):
        for fam, events in ((ALPHA, layout.a_events), (BETA, layout.b_events)):
            for arc, ev in enumerate(events, start=1):
                m = 0
                for e in ev:
                    if e[0] == "x":
                        m += 1
                    else:
                        d.basepoints[f"{name}{e[1]}"] = mark_dart(fam, arc, side, m, e[2])
    if len(d.basepoints) != 2 * n:
        raise ConfigurationError("a puncture region was not located")

    # Consecutive boundary endpoints p, q: the gap between them lies right of
    # the arc entering at p and left of the arc entering at q.
    pts = _boundary_endpoints(n)
    for (_, fp, ap, ep), (_, fq, aq, eq) in zip(pts, pts[1:] + pts[:1]):
        dp = inward_dart(fp, ap, ep)
        d.glue.append((d.reverse(dp), inward_dart(fq, aq, eq)))
    d.distinguished = [vid[(0, i, 0, i + 1)] for i in range(n - 1)]
    d.prune_glue()
    d.check()
    return d
