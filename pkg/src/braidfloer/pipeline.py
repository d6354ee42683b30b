"""Braid word to transverse invariant verdict, with verification flags."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .braid import BraidWord, closure_components, expected_invariant_gradings, self_linking
from .diskcurves import build_braid_diagram
from .floer import ChainComplex, FloerError, build_complex
from .heegaard import make_nice, verify_admissible
from .homology import BigradedRanks, bigraded_ranks, deconvolve_v, transverse_verdict
from .reduce import build_plan, reduce_all

log = logging.getLogger(__name__)


class VerificationError(RuntimeError):
    """A verification flag came out false."""


@dataclass
class Result:
    word: BraidWord
    sl: int
    components: int
    expected: tuple
    diagram: object = None
    nice: object = None
    trace: object = None
    complex: ChainComplex | None = None
    reduced: ChainComplex | None = None
    tilde: BigradedRanks | None = None
    hat: BigradedRanks | None = None
    verdict: bool | None = None
    verdict_grading: tuple | None = None
    cancellations: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)


def _fmt(a) -> str:
    a = Fraction(a)
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def run_pipeline(w: BraidWord, max_generators: int = 5_000_000, order: str = "plan") -> Result:
    """Run every stage and record the verification flags; raises on a hard failure."""
    res = Result(w, self_linking(w), closure_components(w), expected_invariant_gradings(w))
    clock = time.perf_counter()

    def lap(name):
        nonlocal clock
        now = time.perf_counter()
        res.timings[name] = now - clock
        clock = now

    d = build_braid_diagram(w)
    res.diagram = d
    res.checks["admissible"] = verify_admissible(d)
    lap("diagram")
    nice, trace = make_nice(d)
    res.nice, res.trace = nice, trace
    res.checks["nice"] = nice.verify_nice()
    lap("nicening")
    cx, _ = build_complex(nice, res.expected, limit=max_generators, check=False)
    res.complex = cx
    lap("complex")
    res.checks["square_zero"] = _flag(cx.check_square_zero)
    res.checks["gradings"] = _flag(cx.check_grading)
    plan = build_plan(cx, trace)
    red, reducer = reduce_all(cx, plan, order=order, track=True)
    res.reduced = red
    res.cancellations = [(cx.gens[a], cx.gens[b]) for a, b in reducer.log]
    lap("reduction")
    full = bigraded_ranks(cx)
    res.tilde = bigraded_ranks(red)
    res.checks["reduction_ranks"] = full == res.tilde
    i = red.distinguished
    res.checks["distinguished_cycle"] = i is not None and not red.diff[i]
    res.verdict_grading = red.bigrading(i)
    res.checks["distinguished_grading"] = res.verdict_grading == tuple(res.expected)
    res.verdict = transverse_verdict(red) if res.checks["distinguished_cycle"] else None
    try:
        res.hat = deconvolve_v(res.tilde, w.strands - res.components)
    except ValueError:
        res.hat = None
    lap("homology")
    return res


def _flag(check) -> bool:
    try:
        check()
    except FloerError:
        return False
    return True


def oracle_check(res: Result, max_size: int = 8):
    """Compare with grid homology of the closure; None when no grid is available."""
    from .gridoracle import grid_for_braid

    g = grid_for_braid(res.word, max_size)
    if g is None:
        return None
    grading, nonzero = g.invariant()
    return g.hfk_hat() == res.hat and nonzero == res.verdict and grading == res.verdict_grading


def report(res: Result, timings: bool = False) -> dict:
    """Deterministic report; key order is part of schema 1."""
    d, nice = res.diagram, res.nice
    out = {
        "schema": 1,
        "input": {"braid": list(res.word.letters), "strands": res.word.strands},
        "sl": res.sl,
        "components": res.components,
        "expected": {"maslov": res.expected[0], "alexander": _fmt(res.expected[1])},
        "diagram": {
            "vertices": len(d.vertices),
            "faces": len(d.faces()),
            "bad_regions": len(d.find_bad_regions()),
            "nice_genus": nice.genus,
            "nice_vertices": len(nice.vertices),
            "nice_faces": len(nice.faces()),
            "stabilizations": nice.stabilizations,
            "trace_length": len(res.trace),
            "generators_nice": len(res.complex),
            "generators_reduced": len(res.reduced),
        },
        "hfk_tilde": [[m, _fmt(a), r] for (m, a), r in res.tilde.ranks.items()],
        "hfk_hat": None if res.hat is None else [[m, _fmt(a), r] for (m, a), r in res.hat.ranks.items()],
        "verdict": {
            "class": None if res.verdict is None else ("nonzero" if res.verdict else "zero"),
            "maslov": res.verdict_grading[0],
            "alexander": _fmt(res.verdict_grading[1]),
        },
        "checks": dict(res.checks),
    }
    if timings:
        out["timings"] = {k: round(v, 6) for k, v in res.timings.items()}
    return out


def format_text(rep: dict) -> str:
    lines = [
        f"braid {rep['input']['braid']} on {rep['input']['strands']} strands",
        f"sl = {rep['sl']}, components = {rep['components']}",
        f"expected bigrading of t(L): ({rep['expected']['maslov']}, {rep['expected']['alexander']})",
    ]
    dg = rep["diagram"]
    lines.append(
        f"diagram: {dg['vertices']} vertices, {dg['faces']} faces, {dg['bad_regions']} bad regions; "
        f"nice genus {dg['nice_genus']}, {dg['trace_length']} finger moves"
    )
    lines.append(f"generators: {dg['generators_nice']} nice, {dg['generators_reduced']} reduced")
    lines.append("HFK~ ranks (M, A): rank")
    lines += [f"  ({m}, {a}): {r}" for m, a, r in rep["hfk_tilde"]]
    if rep["hfk_hat"] is not None:
        lines.append("HFK^ ranks (M, A): rank")
        lines += [f"  ({m}, {a}): {r}" for m, a, r in rep["hfk_hat"]]
    v = rep["verdict"]
    lines.append(f"verdict: {v['class']} at ({v['maslov']}, {v['alexander']})")
    lines.append("checks: " + ", ".join(f"{k}={v}" for k, v in rep["checks"].items()))
    if "timings" in rep:
        lines.append("timings: " + ", ".join(f"{k}={v:.3f}s" for k, v in rep["timings"].items()))
    return "\n".join(lines)
