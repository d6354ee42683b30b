"""Ordered cancellation from the nice complex back to the braid diagram's generators."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .floer import ChainComplex
from .heegaard import FingerTrace

log = logging.getLogger(__name__)


class PlanError(RuntimeError):
    """The basis does not split into swap pairs level by level."""


class PivotError(RuntimeError):
    """A planned cancellation has no unit pivot."""


@dataclass
class CancellationPlan:
    # (level, x, x') with basis indices; level counts from 1 in trace order
    pairs: list = field(default_factory=list)
    survivors: list = field(default_factory=list)

    def __len__(self):
        return len(self.pairs)


def generator_level(gen, level_of: dict) -> int:
    """Highest level whose ``y`` or ``y'`` the generator occupies (0 if none)."""
    return max((level_of.get(v, 0) for v in gen), default=0)


def build_plan(cx: ChainComplex, trace: FingerTrace) -> CancellationPlan:
    """Split the basis into pairs ``x <-> x'`` swapping ``y_i`` and ``y'_i``.

    Pairs are listed with levels descending and, within a level, by the index
    of ``x``.  Generators avoiding every ``y_i, y'_i`` survive.
    """
    level_of = {}
    for i, (y, yp) in enumerate(trace.pairs, start=1):
        level_of[y] = i
        level_of[yp] = i
    index = {g: k for k, g in enumerate(cx.gens)}
    by_level: dict[int, list] = {}
    for k, g in enumerate(cx.gens):
        by_level.setdefault(generator_level(g, level_of), []).append(k)
    plan = CancellationPlan(survivors=sorted(by_level.get(0, [])))
    for lev in sorted(by_level, reverse=True):
        if lev == 0:
            continue
        y, yp = trace.pairs[lev - 1]
        members = set(by_level[lev])
        for k in sorted(members):
            g = cx.gens[k]
            if y not in g:
                continue
            partner = tuple(yp if v == y else v for v in g)
            j = index.get(partner)
            if j is None or j not in members:
                raise PlanError(f"generator {g} at level {lev} has no partner")
            plan.pairs.append((lev, k, j))
        paired = 2 * sum(1 for p in plan.pairs if p[0] == lev)
        if paired != len(members):
            raise PlanError(f"level {lev} has unpaired generators")
    if cx.distinguished is not None and cx.distinguished not in plan.survivors:
        raise PlanError("distinguished generator is not a survivor")
    return plan


class Reducer:
    """Mutable differential with row and column access for repeated cancellation."""

    def __init__(self, cx: ChainComplex, track: bool = False):
        self.cx = cx
        self.diff = {i: set(c) for i, c in enumerate(cx.diff)}
        self.pred: dict[int, set] = {i: set() for i in self.diff}
        for i, col in self.diff.items():
            for j in col:
                self.pred[j].add(i)
        # lift[x]: the image of x under the composite map F into the original complex
        self.lift = {i: {i} for i in self.diff} if track else None
        self.log: list = []

    def cancel(self, a: int, b: int):
        """Remove ``a, b`` with ``<d a, b> = 1`` and twist: ``d'x = dx + <dx, b> da``."""
        if b not in self.diff.get(a, ()):
            raise PivotError(f"<d {a}, {b}> = 0")
        da = self.diff[a] - {b}
        for x in list(self.pred[b]):
            if x == a:
                continue
            col = self.diff[x]
            for j in da:
                if j in col:
                    col.discard(j)
                    self.pred[j].discard(x)
                else:
                    col.add(j)
                    self.pred[j].add(x)
            col.discard(b)
            if self.lift is not None:
                self.lift[x] ^= self.lift[a]
        # drop a and b everywhere
        for x in self.pred[a]:
            self.diff[x].discard(a)
        for j in self.diff[a]:
            self.pred[j].discard(a)
        for j in self.diff[b]:
            self.pred[j].discard(b)
        for k in (a, b):
            del self.diff[k]
            del self.pred[k]
            if self.lift is not None:
                del self.lift[k]
        self.log.append((a, b))

    def result(self) -> ChainComplex:
        keep = sorted(self.diff)
        new = {k: t for t, k in enumerate(keep)}
        cx = self.cx
        out = ChainComplex(
            [cx.gens[k] for k in keep],
            [cx.maslov[k] for k in keep],
            [cx.alexander[k] for k in keep],
            [{new[j] for j in self.diff[k]} for k in keep],
            new.get(cx.distinguished) if cx.distinguished is not None else None,
        )
        return out


def cancel_pair(cx: ChainComplex, a: int, b: int) -> ChainComplex:
    r = Reducer(cx)
    r.cancel(a, b)
    return r.result()


def reduce_all(cx: ChainComplex, plan: CancellationPlan, order: str = "plan", track: bool = False):
    """Cancel the planned pairs; returns the reduced complex (and the reducer if tracking).

    ``order="reverse"`` cancels levels in the opposite within-level order, a
    different admissible order used as a robustness check.
    """
    pairs = list(plan.pairs)
    if order == "reverse":
        pairs.sort(key=lambda p: (-p[0], -p[1]))
    elif order != "plan":
        raise ValueError(f"unknown order {order!r}")
    r = Reducer(cx, track=track)
    for lev, x, xp in pairs:
        if cx.distinguished in (x, xp):
            raise PlanError("distinguished generator in a cancelled pair")
        r.cancel(x, xp)
        log.debug("cancelled level %d: %s -> %s", lev, cx.gens[x], cx.gens[xp])
    out = r.result()
    if sorted(r.diff) != plan.survivors:
        raise PlanError("surviving basis differs from the plan")
    return (out, r) if track else out
