"""Multi-pointed Heegaard diagrams as rotation-system maps.

A diagram is stored as two families of oriented closed curves (family 0 is
``alpha``, family 1 is ``beta``), each a cyclic list of intersection
vertices, plus the sign of every intersection.  The sign fixes the
counterclockwise order of the four darts leaving a vertex, so the curve lists
and signs are a complete rotation system and the faces are recovered by
dart tracing.

A dart is ``(family, curve, u, d)``: the edge of ``curve`` that starts at
vertex ``u`` (in curve order), traversed forwards (``d = 1``) or backwards
(``d = -1``).  Because darts are keyed by the start vertex rather than a
position, they stay meaningful when vertices are inserted elsewhere, and a
dart whose edge gets subdivided keeps naming the piece next to ``u``.
Basepoints and face gluings are anchored on darts: a basepoint lies in the
face to the left of its anchor dart.

When the curve graph is disconnected, faces of the map that are really one
region of the surface are merged through ``glue`` pairs of darts.
"""

from __future__ import annotations

import copy
import logging
from collections import deque
from dataclasses import dataclass, field

import numpy as np

log = logging.getLogger(__name__)

ALPHA, BETA = 0, 1

# Family whose boundary arcs of a domain in pi_2(x, y) run from x to y.  The
# braid diagram swaps the roles of the two curve systems, so this is the
# b-curve family; pinned by the trefoil and figure-eight grid fixtures.
DOMAIN_SOURCE_FAMILY = BETA


class DiagramError(RuntimeError):
    """Structural inconsistency in a diagram."""


class NicenessError(DiagramError):
    """The nicening procedure could not produce a nice diagram."""


@dataclass
class Face:
    id: int
    cycles: list  # one dart cycle per boundary component
    basepoints: list

    @property
    def darts(self):
        return [d for c in self.cycles for d in c]

    @property
    def corners(self) -> int:
        return sum(len(c) for c in self.cycles)

    @property
    def is_disk(self) -> bool:
        return len(self.cycles) == 1

    @property
    def euler(self) -> int:
        return 2 - len(self.cycles)


@dataclass
class FingerTrace:
    """Pairs ``(y, y')`` created by elementary isotopies, in creation order.

    The bigon from ``y`` to ``y'`` is the domain swept by the isotopy that
    created the pair; ``bigons[i]`` lists its faces in the final diagram.
    """

    pairs: list = field(default_factory=list)
    bigons: list = field(default_factory=list)
    # (u, v): the bigon's beta arc runs forward along the curve from u to v
    arcs: list = field(default_factory=list)

    def __len__(self):
        return len(self.pairs)


class HeegaardDiagram:
    def __init__(self):
        self.vertices: dict[int, list] = {}  # v -> [alpha, beta, sign]
        self.curves: list[list[list[int]]] = [[], []]
        self.hat: list[set] = [set(), set()]
        self.basepoints: dict[str, tuple] = {}
        self.glue: list[tuple] = []
        self.distinguished: list[int] = []
        self.strands = 1
        self.stabilizations = 0
        self._next_vertex = 0
        self._cache = None

    # -- construction ------------------------------------------------------
    def new_vertex(self, alpha: int, beta: int, sign: int) -> int:
        v = self._next_vertex
        self._next_vertex += 1
        self.vertices[v] = [alpha, beta, sign]
        return v

    def add_curve(self, family: int, vertices, hat: bool = False) -> int:
        self.curves[family].append(list(vertices))
        idx = len(self.curves[family]) - 1
        if hat:
            self.hat[family].add(idx)
        self._cache = None
        return idx

    def copy(self) -> "HeegaardDiagram":
        d = HeegaardDiagram.__new__(HeegaardDiagram)
        d.vertices = {v: list(x) for v, x in self.vertices.items()}
        d.curves = [[list(c) for c in fam] for fam in self.curves]
        d.hat = [set(h) for h in self.hat]
        d.basepoints = dict(self.basepoints)
        d.glue = list(self.glue)
        d.distinguished = list(self.distinguished)
        d.strands = self.strands
        d.stabilizations = self.stabilizations
        d._next_vertex = self._next_vertex
        d._cache = None
        return d

    def _touch(self):
        self._cache = None

    # -- basic structure ---------------------------------------------------
    @property
    def alphas(self):
        return self.curves[ALPHA]

    @property
    def betas(self):
        return self.curves[BETA]

    def curve_of(self, v: int, family: int) -> int:
        return self.vertices[v][family]

    def _links(self):
        c = self._cache
        if c is not None:
            return c
        nxt: dict = {}
        prv: dict = {}
        pos: dict = {}
        for fam in (ALPHA, BETA):
            for ci, seq in enumerate(self.curves[fam]):
                m = len(seq)
                for i, v in enumerate(seq):
                    nxt[(fam, v)] = seq[(i + 1) % m]
                    prv[(fam, v)] = seq[i - 1]
                    pos[(fam, v)] = i
        self._cache = {"nxt": nxt, "prv": prv, "pos": pos}
        return self._cache

    def next_on(self, family: int, v: int) -> int:
        return self._links()["nxt"][(family, v)]

    def prev_on(self, family: int, v: int) -> int:
        return self._links()["prv"][(family, v)]

    def edges(self):
        for fam in (ALPHA, BETA):
            for ci, seq in enumerate(self.curves[fam]):
                for u in seq:
                    yield (fam, ci, u)

    def num_edges(self) -> int:
        return sum(len(seq) for fam in self.curves for seq in fam)

    def head(self, dart) -> int:
        fam, _, u, d = dart
        return self.next_on(fam, u) if d > 0 else u

    def tail(self, dart) -> int:
        fam, _, u, d = dart
        return u if d > 0 else self.next_on(fam, u)

    @staticmethod
    def reverse(dart):
        fam, c, u, d = dart
        return (fam, c, u, -d)

    def rotation(self, v: int):
        """Outgoing darts at ``v`` in counterclockwise order."""
        a, b, s = self.vertices[v]
        ao = (ALPHA, a, v, 1)
        ab = (ALPHA, a, self.prev_on(ALPHA, v), -1)
        bo = (BETA, b, v, 1)
        bb = (BETA, b, self.prev_on(BETA, v), -1)
        return (ao, bo, ab, bb) if s > 0 else (ao, bb, ab, bo)

    def face_step(self, dart):
        """Next dart along the boundary of the face on the left of ``dart``."""
        v = self.head(dart)
        rot = self.rotation(v)
        r = self.reverse(dart)
        return rot[(rot.index(r) - 1) % 4]

    # -- faces -------------------------------------------------------------
    def _face_data(self):
        c = self._links()
        if "faces" in c:
            return c
        cycles = []
        cycle_of = {}
        for fam, ci, u in sorted(self.edges()):
            for d in (1, -1):
                start = (fam, ci, u, d)
                if start in cycle_of:
                    continue
                cyc = []
                cur = start
                while cur not in cycle_of:
                    cycle_of[cur] = len(cycles)
                    cyc.append(cur)
                    cur = self.face_step(cur)
                if cur != start:
                    raise DiagramError("inconsistent rotation system")
                cycles.append(cyc)
        parent = list(range(len(cycles)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for d1, d2 in self.glue:
            r1, r2 = find(cycle_of[self._live(d1)]), find(cycle_of[self._live(d2)])
            if r1 != r2:
                parent[max(r1, r2)] = min(r1, r2)
        groups: dict[int, list] = {}
        for i in range(len(cycles)):
            groups.setdefault(find(i), []).append(i)
        faces = []
        face_of_cycle = {}
        for fid, root in enumerate(sorted(groups)):
            for i in groups[root]:
                face_of_cycle[i] = fid
            faces.append(Face(fid, [cycles[i] for i in groups[root]], []))
        face_of_dart = {dart: face_of_cycle[i] for dart, i in cycle_of.items()}
        for name in sorted(self.basepoints, key=_bp_key):
            faces[face_of_dart[self._live(self.basepoints[name])]].basepoints.append(name)
        c["faces"] = faces
        c["face_of_dart"] = face_of_dart
        return c

    def _live(self, dart):
        """A stored anchor dart, checked against the current curves."""
        fam, ci, u, d = dart
        if (fam, u) not in self._links()["nxt"] or self.vertices[u][fam] != ci:
            raise DiagramError(f"stale anchor {dart}")
        return dart

    def prune_glue(self):
        """Drop gluings whose darts already bound the same boundary cycle.

        Anchors sit next to their start vertex, so a gluing stays valid under
        moves only while it joins distinct cycles of a multi-boundary face;
        redundant ones are removed before any move."""
        if not self.vertices or not self.glue:
            return
        cyc = self._cycle_index()
        self.glue = [(a, b) for a, b in self.glue if cyc[a] != cyc[b]]

    def _cycle_index(self):
        c = self._face_data()
        if "cycle_of" not in c:
            idx = {}
            for f in c["faces"]:
                for k, cyc in enumerate(f.cycles):
                    for dart in cyc:
                        idx[dart] = (f.id, k)
            c["cycle_of"] = idx
        return c["cycle_of"]

    def faces(self) -> list[Face]:
        if not self.vertices:
            return [Face(0, [], sorted(self.basepoints, key=_bp_key))]
        return self._face_data()["faces"]

    def face_of(self, dart) -> int:
        return self._face_data()["face_of_dart"][dart]

    def face_of_basepoint(self, name: str) -> int:
        if not self.vertices:
            return 0
        return self.face_of(self.basepoints[name])

    def quadrants(self, v: int):
        """Faces in the four corners at ``v``, counterclockwise from (alpha out, next)."""
        return [self.face_of(d) for d in self.rotation(v)]

    def euler_characteristic(self) -> int:
        if not self.vertices:
            return 2
        return len(self.vertices) - self.num_edges() + sum(f.euler for f in self.faces())

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic()) // 2

    def basepoint_faces(self) -> set:
        return {self.face_of_basepoint(n) for n in self.basepoints}

    # -- validation --------------------------------------------------------
    def check(self):
        """Raise DiagramError unless the structural invariants hold."""
        na, nb = len(self.alphas), len(self.betas)
        if na != nb:
            raise DiagramError("alpha and beta counts differ")
        if na != self.strands - 1 + self.stabilizations:
            raise DiagramError("curve count does not match strands and stabilizations")
        seen = {ALPHA: set(), BETA: set()}
        for fam in (ALPHA, BETA):
            for ci, seq in enumerate(self.curves[fam]):
                for v in seq:
                    if v in seen[fam]:
                        raise DiagramError(f"vertex {v} repeated on family {fam}")
                    seen[fam].add(v)
                    if self.vertices[v][fam] != ci:
                        raise DiagramError(f"vertex {v} curve mismatch")
        if seen[ALPHA] != set(self.vertices) or seen[BETA] != set(self.vertices):
            raise DiagramError("vertex not on exactly one alpha and one beta curve")
        if self.euler_characteristic() != 2 - 2 * self.stabilizations:
            raise DiagramError(
                f"Euler characteristic {self.euler_characteristic()} "
                f"!= {2 - 2 * self.stabilizations}"
            )
        for fam in (ALPHA, BETA):
            for comp in self.complement_components(fam):
                kinds = sorted(b[0] for f in comp for b in self.faces()[f].basepoints)
                if kinds != ["w", "z"]:
                    raise DiagramError(f"a component off family {fam} holds basepoints {kinds}")
        return True

    def complement_components(self, family: int) -> list[set]:
        """Face sets of the components of the surface cut along one curve family."""
        faces = self.faces()
        parent = list(range(len(faces)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        if self.vertices:
            for fam, ci, u in self.edges():
                if fam != family:
                    a, b = find(self.face_of((fam, ci, u, 1))), find(self.face_of((fam, ci, u, -1)))
                    parent[a] = b
        comps: dict[int, set] = {}
        for f in range(len(faces)):
            comps.setdefault(find(f), set()).add(f)
        return list(comps.values())

    # -- queries -----------------------------------------------------------
    def find_bad_regions(self) -> list[Face]:
        return [f for f in self.faces() if not f.basepoints and (f.corners > 4 or not f.is_disk)]

    def verify_nice(self) -> bool:
        if not self.vertices:
            return True
        return not self.find_bad_regions()

    def verify_nice_z_only(self) -> bool:
        """Stricter reading: faces holding only a w-basepoint must be bigons or squares too."""
        for f in self.faces():
            if any(b.startswith("z") for b in f.basepoints):
                continue
            if f.corners > 4 or not f.is_disk:
                return False
        return True

    def intersections(self, a: int, b: int) -> list[int]:
        return [v for v in self.alphas[a] if self.vertices[v][1] == b]

    # -- serialization -----------------------------------------------------
    def serialize(self) -> str:
        lines = [
            f"strands {self.strands}",
            f"stabilizations {self.stabilizations}",
            f"vertices {len(self.vertices)}",
        ]
        for v in sorted(self.vertices):
            a, b, s = self.vertices[v]
            lines.append(f"v {v} {a} {b} {s:+d}")
        for fam, name in ((ALPHA, "alpha"), (BETA, "beta")):
            for ci, seq in enumerate(self.curves[fam]):
                flag = "hat" if ci in self.hat[fam] else "std"
                lines.append(f"{name} {ci} {flag} " + " ".join(map(str, seq)))
        for name in sorted(self.basepoints, key=_bp_key):
            fam, ci, u, d = self.basepoints[name]
            lines.append(f"basepoint {name} {fam} {ci} {u} {d:+d} face {self.face_of_basepoint(name)}")
        for d1, d2 in self.glue:
            lines.append("glue " + " ".join(map(str, d1)) + " | " + " ".join(map(str, d2)))
        lines.append("distinguished " + " ".join(map(str, self.distinguished)))
        for f in self.faces():
            bp = ",".join(f.basepoints) or "-"
            lines.append(f"face {f.id} corners {f.corners} boundaries {len(f.cycles)} basepoints {bp}")
        return "\n".join(lines) + "\n"


def _bp_key(name: str):
    return (name[0], int(name[1:]))


# ---------------------------------------------------------------------------
# Moves

def _insert_after(seq: list, u: int, new: list):
    i = seq.index(u)
    seq[i + 1:i + 1] = new


def stabilize(d: HeegaardDiagram, bad_face: int, z_face: int, path=None):
    """Attach a handle with feet in ``z_face`` and ``bad_face``.

    The new alpha curve runs from the foot in ``z_face`` across the beta
    edges of ``path`` (a list of darts, each with the previous face on its
    left) to the foot in ``bad_face`` and back over the handle.  The new beta
    curve is the belt circle around the foot in ``z_face``, meeting the new
    alpha curve once.  Returns ``(diagram, alpha_hat, beta_hat, t_hat)``.
    """
    faces = d.faces()
    if faces[bad_face].basepoints:
        raise DiagramError("stabilization foot must sit in a basepoint-free face")
    if not any(b.startswith("z") for b in faces[z_face].basepoints):
        raise DiagramError("second foot must sit in a z-basepointed face")
    if path is None:
        path = beta_path(d, z_face, bad_face)
    if path is None:
        raise DiagramError("no beta-crossing path between the feet")
    d.prune_glue()
    out = d.copy()
    ahat = len(out.alphas)
    bhat = len(out.betas)
    t_hat = out.new_vertex(ahat, bhat, 1)
    crossings = []
    for dart in path:
        fam, bc, u, dirn = dart
        if fam != BETA:
            raise DiagramError("stabilization path may only cross beta edges")
        # the new curve crosses from the left of the dart to its right
        v = out.new_vertex(ahat, bc, dirn)
        _insert_after(out.betas[bc], u, [v])
        crossings.append(v)
    out.add_curve(ALPHA, [t_hat] + crossings, hat=True)
    out.add_curve(BETA, [t_hat], hat=True)
    out.stabilizations += 1
    out.distinguished.append(t_hat)
    out._touch()
    out.check()
    return out, ahat, bhat, t_hat


def beta_path(d: HeegaardDiagram, start: int, goal: int):
    """Shortest list of beta darts leading from face ``start`` to ``goal``."""
    faces = d.faces()
    prev = {start: None}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        if f == goal:
            break
        if f != start and not faces[f].is_disk:
            continue
        for dart in faces[f].darts:
            if dart[0] != BETA:
                continue
            g = d.face_of(d.reverse(dart))
            if g not in prev:
                prev[g] = (f, dart)
                queue.append(g)
    if goal not in prev:
        return None
    path = []
    f = goal
    while prev[f] is not None:
        f, dart = prev[f]
        path.append(dart)
    return path[::-1]


def finger_move(d: HeegaardDiagram, beta_dart, alpha_dart):
    """Push the beta edge of ``beta_dart`` across the alpha edge of ``alpha_dart``.

    Both darts must bound the same face on their left.  Two new vertices are
    created on the alpha curve and a bigon appears on the far side.  Returns
    ``(diagram, (y, y2))`` where the bigon domain runs from ``y`` to ``y2``.
    """
    if beta_dart[0] != BETA or alpha_dart[0] != ALPHA:
        raise DiagramError("finger move needs a beta dart and an alpha dart")
    if d.face_of(beta_dart) != d.face_of(alpha_dart):
        raise DiagramError("darts do not bound a common face")
    if not d.faces()[d.face_of(beta_dart)].is_disk:
        raise DiagramError("finger moves must start in a disk face")
    d.prune_glue()
    _, b, p, db = beta_dart
    _, a, u, da = alpha_dart
    out = d.copy()
    s = da * db
    a1 = out.new_vertex(a, b, s)
    a2 = out.new_vertex(a, b, -s)
    # along alpha_dart the crossings come as a1, a2; along beta_dart as a2, a1
    _insert_after(out.alphas[a], u, [a1, a2] if da > 0 else [a2, a1])
    _insert_after(out.betas[b], p, [a2, a1] if db > 0 else [a1, a2])
    out._touch()
    # boundary of the bigon: alpha from a2 to a1, beta from a1 to a2
    pair = (a2, a1) if DOMAIN_SOURCE_FAMILY == ALPHA else (a1, a2)
    return out, pair


def undo_finger(d: HeegaardDiagram, pair):
    """Inverse of :func:`finger_move`: remove the two vertices of ``pair``."""
    out = d.copy()
    for v in pair:
        a, b, _ = out.vertices.pop(v)
        out.alphas[a].remove(v)
        out.betas[b].remove(v)
    out._touch()
    return out


# ---------------------------------------------------------------------------
# Nicening

def _z_faces(d: HeegaardDiagram):
    return [f.id for f in d.faces() if any(b.startswith("z") for b in f.basepoints)]


def make_nice(d: HeegaardDiagram, debug: bool = False):
    """Stabilize at every bad region and finger the new beta curves out of it.

    Returns ``(nice_diagram, FingerTrace)``.
    """
    if not d.vertices:
        return d, FingerTrace()
    bad = d.find_bad_regions()
    jobs = []
    cur = d
    # remember each bad region by the darts of its alpha edges
    bad_specs = []
    for f in bad:
        if not f.is_disk:
            raise NicenessError(f"bad region {f.id} is not a disk")
        bad_specs.append([dart for dart in f.darts if dart[0] == ALPHA])
    for alpha_darts in bad_specs:
        rface = cur.face_of(alpha_darts[0])
        best = None
        for zf in _z_faces(cur):
            path = beta_path(cur, zf, rface)
            if path is not None and (best is None or len(path) < len(best[1])):
                best = (zf, path)
        if best is None:
            raise NicenessError("bad region has no z-face in its alpha component")
        cur, ahat, bhat, _ = stabilize(cur, rface, best[0], best[1])
        jobs.append((bhat, alpha_darts))

    trace = FingerTrace()
    protected: set = set()
    for bhat, alpha_darts in jobs:
        for start in alpha_darts:
            cur = _run_finger(cur, bhat, start, trace, protected)
            if debug:
                cur.check()
    if not cur.verify_nice():
        raise NicenessError(
            "nicening left bad regions: "
            + ", ".join(f"{f.id}({f.corners})" for f in cur.find_bad_regions())
        )
    cur.check()
    trace.bigons = [bigon_faces(cur, trace, i) for i in range(len(trace))]
    return cur, trace


def _beta_dart_on(d: HeegaardDiagram, face: int, bhat: int):
    for dart in d.faces()[face].darts:
        if dart[0] == BETA and dart[1] == bhat:
            return dart
    return None


def _run_finger(d, bhat, alpha_dart, trace, protected, limit=10_000):
    """Extend one finger of ``bhat`` across ``alpha_dart`` and onward."""
    face = d.face_of(alpha_dart)
    bdart = _beta_dart_on(d, face, bhat)
    if bdart is None:
        raise NicenessError("hat curve does not reach the bad region")
    for _ in range(limit):
        far = d.faces()[d.face_of(d.reverse(alpha_dart))]
        far_corners = far.corners
        far_marked = bool(far.basepoints)
        d, pair = finger_move(d, bdart, alpha_dart)
        trace.pairs.append(pair)
        y, y2 = pair
        trace.arcs.append((y, y2) if d.next_on(BETA, y) == y2 else (y2, y))
        protected.add(frozenset(pair))
        if far_marked or far_corners <= 2:
            return d
        # the remainder of the far face, seen from the new finger tip
        tip = _tip_dart(d, pair)
        rest = d.faces()[d.face_of(tip)]
        cyc = rest.cycles[0]
        k = cyc.index(tip)
        order = cyc[k:] + cyc[:k]
        m = len(order)
        candidates = [i for i in range(1, m) if order[i][0] == ALPHA]
        candidates.sort(key=lambda i: (abs(2 * i - m), i))
        nxt = None
        for i in candidates:
            dart = order[i]
            seg = frozenset((dart[2], d.next_on(ALPHA, dart[2])))
            if seg in protected:
                continue
            nxt = dart
            break
        if nxt is None:
            raise NicenessError("finger has nowhere to go")
        bdart, alpha_dart = tip, nxt
    raise NicenessError("finger did not terminate")


def _tip_dart(d: HeegaardDiagram, pair):
    """The beta dart of the finger tip between the pair, bounding the far remainder."""
    y, y2 = pair
    b = d.vertices[y][1]
    for u in pair:
        w = d.next_on(BETA, u)
        if w in pair and w != u:
            for dart in ((BETA, b, u, 1), (BETA, b, u, -1)):
                if len(d.faces()[d.face_of(dart)].darts) != 2:
                    return dart
    raise DiagramError("finger tip not found")


def bigon_faces(d: HeegaardDiagram, trace: FingerTrace, i: int) -> list[int]:
    """Faces of the bigon swept by the i-th elementary isotopy, in diagram ``d``.

    The bigon is bounded by the alpha arc between the pair and the part of
    the beta curve pushed out by this and every later move of the same finger.
    It is found by flooding from the face just inside the alpha arc without
    crossing the alpha arc or the bounding beta arc.
    """
    y, y2 = trace.pairs[i]
    b = d.vertices[y][1]
    u, v = trace.arcs[i]
    barc = []
    while u != v:
        barc.append((BETA, b, u, 1))
        u = d.next_on(BETA, u)
    a = d.vertices[y][0]
    if d.next_on(ALPHA, y) == y2:
        aedge = (ALPHA, a, y, 1)
    elif d.next_on(ALPHA, y2) == y:
        aedge = (ALPHA, a, y2, 1)
    else:
        raise DiagramError("finger pair is no longer adjacent on its alpha curve")
    wall = {e[:3] for e in barc} | {aedge[:3]}
    # seed: the side of the alpha edge that is not the bigon's outside; try both
    for seed_dart in (aedge, d.reverse(aedge)):
        region = _flood(d, d.face_of(seed_dart), wall)
        if region is not None:
            return sorted(region)
    raise DiagramError("could not isolate finger bigon")


def _flood(d: HeegaardDiagram, seed: int, wall: set, cap: int = 10_000):
    faces = d.faces()
    seen = {seed}
    stack = [seed]
    while stack:
        f = stack.pop()
        if faces[f].basepoints:
            return None
        for dart in faces[f].darts:
            if dart[:3] in wall:
                continue
            g = d.face_of(d.reverse(dart))
            if g not in seen:
                seen.add(g)
                stack.append(g)
                if len(seen) > cap:
                    return None
    return seen


# ---------------------------------------------------------------------------
# Admissibility

def periodic_constraints(d: HeegaardDiagram):
    """Linear constraints (rows over faces) cutting out basepoint-free periodic domains."""
    faces = d.faces()
    nf = len(faces)
    rows = []

    def coboundary(dart):
        row = np.zeros(nf)
        row[d.face_of(dart)] += 1
        row[d.face_of(d.reverse(dart))] -= 1
        return row

    for fam in (ALPHA, BETA):
        for ci, seq in enumerate(d.curves[fam]):
            first = coboundary((fam, ci, seq[0], 1))
            for u in seq[1:]:
                rows.append(coboundary((fam, ci, u, 1)) - first)
    for f in d.basepoint_faces():
        row = np.zeros(nf)
        row[f] = 1
        rows.append(row)
    return np.array(rows) if rows else np.zeros((0, nf))


def periodic_basis(d: HeegaardDiagram, tol: float = 1e-9):
    """Orthonormal real basis (columns) of the basepoint-free periodic domains."""
    m = periodic_constraints(d)
    nf = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(nf)
    _, s, vt = np.linalg.svd(m)
    rank = int((s > tol * max(1.0, s.max())).sum())
    return vt[rank:].T


def verify_admissible(d: HeegaardDiagram) -> bool:
    """True iff no nonzero basepoint-free periodic domain is everywhere nonnegative."""
    if not d.vertices:
        return True
    basis = periodic_basis(d)
    k = basis.shape[1]
    if k == 0:
        return True
    from scipy.optimize import linprog

    # maximize sum(D) subject to D = basis @ c >= 0, sum(D) <= 1
    ones = basis.sum(axis=0)
    res = linprog(
        -ones,
        A_ub=np.vstack([-basis, ones[None, :]]),
        b_ub=np.concatenate([np.zeros(basis.shape[0]), [1.0]]),
        bounds=[(None, None)] * k,
        method="highs",
    )
    if res.status != 0:
        return True
    return -res.fun < 1e-7
