"""The tilde knot Floer complex of a nice multi-pointed diagram.

Domains are solved linearly.  For a vertex ``v`` let ``P_f(v)`` be the path
along its family-``f`` curve from a fixed reference vertex to ``v``.  For a
generator ``x`` the 1-chain ``g(x) = sum_v P_S(v) - P_O(v)`` (``S`` the
family whose boundary arcs run from ``x`` to ``y``, ``O`` the other) has
``g(y) - g(x)`` equal to the boundary of any domain in ``pi_2(x, y)`` modulo
whole curves.  Integrating each ``P_S(v) - P_O(v)`` once over a spanning tree
of the dual graph gives per-vertex 2-chains ``W_v``, and every domain and
grading below is a signed sum of a few of them.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .heegaard import ALPHA, BETA, DOMAIN_SOURCE_FAMILY, HeegaardDiagram

log = logging.getLogger(__name__)

TOL = 1e-6
# relative singular value cutoff for rank decisions
RCOND = 1e-9


class ResourceLimitError(RuntimeError):
    """The generator count exceeds the configured limit."""


class FloerError(RuntimeError):
    """An internal consistency check on the complex failed."""


@dataclass
class ChainComplex:
    """F2 complex with bigraded basis and column-sparse differential.

    ``diff[i]`` is the set of basis indices in the boundary of basis element ``i``.
    """

    gens: list
    maslov: list
    alexander: list
    diff: list
    distinguished: int | None = None
    labels: list = field(default_factory=list)

    def __len__(self):
        return len(self.gens)

    def bigrading(self, i):
        return (self.maslov[i], self.alexander[i])

    def check_square_zero(self):
        for i, col in enumerate(self.diff):
            acc = set()
            for j in col:
                acc ^= self.diff[j]
            if acc:
                raise FloerError(f"d^2 != 0 on basis element {i}")
        return True

    def check_grading(self):
        for i, col in enumerate(self.diff):
            for j in col:
                if self.maslov[j] != self.maslov[i] - 1 or self.alexander[j] != self.alexander[i]:
                    raise FloerError(f"differential {i}->{j} does not respect the bigrading")
        return True

    def serialize(self) -> str:
        lines = [f"generators {len(self.gens)}"]
        if self.distinguished is not None:
            lines.append(f"distinguished {self.distinguished}")
        for i, g in enumerate(self.gens):
            lines.append(
                f"g {i} {self.maslov[i]} {self.alexander[i]} " + " ".join(map(str, g))
            )
        for i, col in enumerate(self.diff):
            if col:
                lines.append(f"d {i} " + " ".join(map(str, sorted(col))))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "ChainComplex":
        gens, mas, alx, diff = [], [], [], []
        dist = None
        for line in text.splitlines():
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "distinguished":
                dist = int(parts[1])
            elif parts[0] == "g":
                gens.append(tuple(int(p) for p in parts[4:]))
                mas.append(int(parts[2]))
                alx.append(Fraction(parts[3]))
                diff.append(set())
            elif parts[0] == "d":
                diff[int(parts[1])] = {int(p) for p in parts[2:]}
        return cls(gens, mas, alx, diff, dist)


# ---------------------------------------------------------------------------
# Generators

def enumerate_generators(d: HeegaardDiagram, limit: int = 5_000_000) -> list[tuple]:
    """All bijections alpha curves -> vertices with distinct beta curves, sorted."""
    k = len(d.alphas)
    if k == 0:
        return [()]
    options = [sorted(seq) for seq in d.alphas]
    # backtrack over the alpha curves with fewest intersections first
    order = sorted(range(k), key=lambda i: len(options[i]))
    out = []
    chosen = [None] * k
    used = set()

    def rec(t):
        if t == k:
            out.append(tuple(chosen))
            if len(out) > limit:
                raise ResourceLimitError(f"more than {limit} generators")
            return
        i = order[t]
        for v in options[i]:
            b = d.vertices[v][1]
            if b in used:
                continue
            used.add(b)
            chosen[i] = v
            rec(t + 1)
            used.discard(b)
        chosen[i] = None

    rec(0)
    out.sort()
    return out


def distinguished_generator(d: HeegaardDiagram) -> tuple:
    gen = [None] * len(d.alphas)
    for v in d.distinguished:
        gen[d.vertices[v][0]] = v
    if None in gen:
        raise FloerError("distinguished vertices do not form a generator")
    return tuple(gen)


# ---------------------------------------------------------------------------
# Domains

class DomainSolver:
    """Linear machinery for domains, multiplicities and Maslov indices."""

    def __init__(self, d: HeegaardDiagram):
        self.d = d
        faces = d.faces()
        self.nf = len(faces)
        self.faces = faces
        self.vlist = sorted(d.vertices)
        self.vindex = {v: i for i, v in enumerate(self.vlist)}
        self.face_euler = np.array([f.euler - f.corners / 4 for f in faces])
        self.quad = np.array([d.quadrants(v) for v in self.vlist], dtype=int).reshape(-1, 4)
        self.bp_names = sorted(d.basepoints, key=lambda s: (s[0], int(s[1:])))
        self.bp_face = np.array([d.face_of_basepoint(n) for n in self.bp_names], dtype=int)
        self.z_mask = np.array([n.startswith("z") for n in self.bp_names])
        self._edges()
        self._tree()
        self._vertex_domains()
        self._periodic()

    # edge bookkeeping -------------------------------------------------------
    def _edges(self):
        d = self.d
        self.edges = sorted(d.edges())
        self.eindex = {e: i for i, e in enumerate(self.edges)}
        self.eleft = np.array([d.face_of((f, c, u, 1)) for f, c, u in self.edges], dtype=int)
        self.eright = np.array([d.face_of((f, c, u, -1)) for f, c, u in self.edges], dtype=int)

    def _tree(self):
        """BFS spanning tree of the dual graph, rooted at face 0."""
        adj: dict[int, list] = {f: [] for f in range(self.nf)}
        for i in range(len(self.edges)):
            l, r = self.eleft[i], self.eright[i]
            adj[l].append((r, i, -1))  # D(r) = D(l) - c_e
            adj[r].append((l, i, 1))  # D(l) = D(r) + c_e
        seen = {0}
        order = []
        queue = deque([0])
        tree = set()
        while queue:
            f = queue.popleft()
            for g, e, s in adj[f]:
                if g not in seen:
                    seen.add(g)
                    order.append((f, g, e, s))
                    tree.add(e)
                    queue.append(g)
        if len(seen) != self.nf:
            raise FloerError("dual graph is disconnected")
        self.tree_order = order
        self.cotree = np.array([i for i in range(len(self.edges)) if i not in tree], dtype=int)

    def integrate(self, c: np.ndarray) -> np.ndarray:
        """Face values with D(left) - D(right) = c on tree edges (columns of ``c``)."""
        out = np.zeros((self.nf,) + c.shape[1:])
        for f, g, e, s in self.tree_order:
            out[g] = out[f] + s * c[e]
        return out

    def defects(self, c: np.ndarray, dom: np.ndarray) -> np.ndarray:
        cc = self.cotree
        return c[cc] - (dom[self.eleft[cc]] - dom[self.eright[cc]])

    def curve_chain(self, fam: int, ci: int) -> np.ndarray:
        c = np.zeros(len(self.edges))
        for u in self.d.curves[fam][ci]:
            c[self.eindex[(fam, ci, u)]] = 1
        return c

    def _vertex_domains(self):
        d = self.d
        ne = len(self.edges)
        nv = len(self.vlist)
        chains = np.zeros((ne, nv))
        for fam, sign in ((DOMAIN_SOURCE_FAMILY, 1), (1 - DOMAIN_SOURCE_FAMILY, -1)):
            for ci, seq in enumerate(d.curves[fam]):
                # path from seq[0] to seq[t] uses the first t edges
                for t, v in enumerate(seq):
                    col = self.vindex[v]
                    for u in seq[:t]:
                        chains[self.eindex[(fam, ci, u)], col] += sign
        curves = [self.curve_chain(f, ci) for f in (ALPHA, BETA) for ci in range(len(d.curves[f]))]
        self.curve_chains = np.array(curves).T if curves else np.zeros((ne, 0))
        base = self.integrate(chains)
        dm = self.defects(chains, base)
        if self.curve_chains.shape[1] and len(self.cotree):
            cdom = self.integrate(self.curve_chains)
            cm = self.defects(self.curve_chains, cdom)
            coef = -np.linalg.pinv(cm, rcond=RCOND) @ dm
            chains = chains + self.curve_chains @ coef
            base = self.integrate(chains)
            dm = self.defects(chains, base)
        self.W = base  # faces x vertices
        self.e_v = self.face_euler @ self.W
        # point measure of W_v at u: mean of the four corner multiplicities
        self.point = self.W[self.quad].mean(axis=1)  # u x v
        self.bp_v = self.W[self.bp_face]  # basepoints x vertices

    def _periodic(self):
        """Periodic domains and the normalization that clears basepoints."""
        from .heegaard import periodic_constraints

        d = self.d
        cons = periodic_constraints(d)
        nbp = len(d.basepoint_faces())
        curve_rows = cons[: cons.shape[0] - nbp] if nbp else cons
        if curve_rows.shape[0]:
            _, s, vt = np.linalg.svd(curve_rows)
            rank = int((s > 1e-9 * max(1.0, s.max())).sum())
            per = vt[rank:].T
        else:
            per = np.eye(self.nf)
        self.periodic = per
        bmat = per[self.bp_face]
        self.bp_pinv = np.linalg.pinv(bmat, rcond=RCOND) if bmat.size else np.zeros((per.shape[1], 0))
        # Pi^0: periodic domains vanishing at every basepoint, scaled to be
        # the identity on a set of pivot faces
        if bmat.size:
            _, s, vt = np.linalg.svd(bmat)
            rank = int((s > 1e-9 * max(1.0, s.max())).sum())
            null = vt[rank:].T
        else:
            null = np.eye(per.shape[1])
        q = per @ null
        if q.shape[1]:
            from scipy.linalg import qr

            _, _, piv = qr(q.T, pivoting=True)
            self.pi0_pivots = np.sort(piv[: q.shape[1]])
            self.pi0 = q @ np.linalg.inv(q[self.pi0_pivots])
        else:
            self.pi0_pivots = np.zeros(0, dtype=int)
            self.pi0 = q
        self.Wn = self.W - per @ (self.bp_pinv @ self.bp_v)

    # domain evaluation --------------------------------------------------------
    def domain(self, x, y, normalized=True) -> np.ndarray:
        """A domain in pi_2(x, y); normalized ones vanish at basepoints when possible."""
        W = self.Wn if normalized else self.W
        xs = set(x) - set(y)
        ys = set(y) - set(x)
        dom = np.zeros(self.nf)
        for v in ys:
            dom += W[:, self.vindex[v]]
        for v in xs:
            dom -= W[:, self.vindex[v]]
        return dom

    def point_measure(self, dom: np.ndarray, v: int) -> float:
        return float(dom[self.quad[self.vindex[v]]].mean())

    def maslov_index(self, dom: np.ndarray, x, y) -> float:
        e = float(self.face_euler @ dom)
        return e + sum(self.point_measure(dom, v) for v in x) + sum(self.point_measure(dom, v) for v in y)

    def basepoint_mult(self, dom: np.ndarray):
        vals = dom[self.bp_face]
        return float(vals[self.z_mask].sum()), float(vals[~self.z_mask].sum())


def _round_int(x: float, what: str) -> int:
    r = round(x)
    if abs(x - r) > TOL:
        raise FloerError(f"{what} {x} is not integral")
    return int(r)


# ---------------------------------------------------------------------------
# Gradings

def assign_gradings(solver: DomainSolver, gens: list, anchor: tuple, anchor_grading):
    """Absolute (Maslov, Alexander) for every generator, anchored at ``anchor``.

    Uses ``D = sum_{anchor} W - sum_x W`` in ``pi_2(x, anchor)`` so that
    ``M(x) = M(anchor) + mu(D) - 2 n_w(D)`` and ``A(x) = A(anchor) + n_z - n_w``.
    """
    m0, a0 = anchor_grading
    if not gens or not gens[0]:
        return [m0] * len(gens), [Fraction(a0)] * len(gens)
    vi = solver.vindex
    x0 = np.array([vi[v] for v in anchor])
    P = solver.point
    row0 = P[:, x0].sum(axis=1)  # n_u(sum_{x0} W) for each u
    col0 = P[x0, :].sum(axis=0)  # n_{x0}(W_v) for each v
    e0 = solver.e_v[x0].sum()
    bz = solver.bp_v[solver.z_mask]
    bw = solver.bp_v[~solver.z_mask]
    z0, w0 = bz[:, x0].sum(), bw[:, x0].sum()
    n0 = P[np.ix_(x0, x0)].sum()
    zsum, wsum = bz.sum(axis=0), bw.sum(axis=0)

    G = np.array([[vi[v] for v in g] for g in gens], dtype=int)
    mas, alx = [], []
    chunk = max(1, 2_000_000 // max(1, G.shape[1] ** 2))
    for s in range(0, len(G), chunk):
        g = G[s:s + chunk]
        e = e0 - solver.e_v[g].sum(axis=1)
        quad_xx = P[g[:, :, None], g[:, None, :]].sum(axis=(1, 2))
        n_x = row0[g].sum(axis=1) - quad_xx
        n_anchor = n0 - col0[g].sum(axis=1)
        mu = e + n_x + n_anchor
        nz = z0 - zsum[g].sum(axis=1)
        nw = w0 - wsum[g].sum(axis=1)
        for m, z, w in zip(mu - 2 * nw, nz, nw):
            mas.append(m0 + _round_int(m, "Maslov grading"))
            alx.append(Fraction(a0) + _round_int(z - w, "Alexander grading"))
    return mas, alx


# ---------------------------------------------------------------------------
# Differential

def _is_counted(solver: DomainSolver, dom: np.ndarray, x, y) -> bool:
    if dom.min() < -TOL or dom.max() > 1 + TOL:
        return False
    r = np.round(dom)
    if np.abs(dom - r).max() > TOL:
        return False
    if r[solver.bp_face].any():
        return False
    moved_x = set(x) - set(y)
    moved_y = set(y) - set(x)
    if abs(solver.maslov_index(r, x, y) - 1) > TOL:
        return False
    # convex corners exactly at the moved coordinates, nothing at the others
    for v in moved_x | moved_y:
        if abs(solver.point_measure(r, v) - 0.25) > TOL:
            return False
    for v in set(x) & set(y):
        if solver.point_measure(r, v) > TOL:
            return False
    corners = len(moved_x) + len(moved_y)
    if abs(float(solver.face_euler @ r) - (1 - corners / 4)) > TOL:
        return False
    return _support_is_disk(solver, r)


def _support_is_disk(solver: DomainSolver, r: np.ndarray) -> bool:
    support = set(np.nonzero(r > 0.5)[0].tolist())
    if not support:
        return False
    verts = sum(1 for q in solver.quad if any(int(f) in support for f in q))
    edges = sum(
        1
        for l, rr in zip(solver.eleft, solver.eright)
        if int(l) in support or int(rr) in support
    )
    chi = verts - edges + sum(solver.faces[f].euler for f in support)
    if chi != 1:
        return False
    # each vertex sees at most one run of covered quadrants
    for q in solver.quad:
        pat = [int(f) in support for f in q]
        runs = sum(1 for i in range(4) if pat[i] and not pat[i - 1])
        if runs > 1:
            return False
    return True


def compute_differential(d: HeegaardDiagram, solver: DomainSolver, gens, mas, alx, stats=None):
    """Column-sparse differential counting empty embedded bigons and rectangles."""
    index = {g: i for i, g in enumerate(gens)}
    on = {}
    for v, (a, b, _) in d.vertices.items():
        on.setdefault((a, b), []).append(v)
    k = len(d.alphas)
    diff = [set() for _ in gens]
    pi0, pivots = solver.pi0, solver.pi0_pivots
    # a counted domain is 0/1 valued, so its values on the pivot faces fix its
    # Pi^0 component
    targets = [np.array(t, dtype=float) for t in product((0, 1), repeat=len(pivots))]
    checked = 0
    for i, x in enumerate(gens):
        betas = [d.vertices[v][1] for v in x]
        cands = []
        for a in range(k):
            for v in on.get((a, betas[a]), ()):
                if v != x[a]:
                    cands.append(x[:a] + (v,) + x[a + 1:])
        for a in range(k):
            for b in range(a + 1, k):
                for v in on.get((a, betas[b]), ()):
                    for w in on.get((b, betas[a]), ()):
                        y = list(x)
                        y[a], y[b] = v, w
                        cands.append(tuple(y))
        for y in cands:
            j = index.get(y)
            if j is None or mas[j] != mas[i] - 1 or alx[j] != alx[i]:
                continue
            checked += 1
            base = solver.domain(x, y)
            if len(pivots):
                hits = sum(
                    1
                    for t in targets
                    if _is_counted(solver, base + pi0 @ (t - base[pivots]), x, y)
                )
            else:
                hits = int(_is_counted(solver, base, x, y))
            if hits % 2:
                diff[i].add(j)
    if stats is not None:
        stats["domains_checked"] = checked
    return diff


def build_complex(d: HeegaardDiagram, anchor_grading, limit: int = 5_000_000, check=True):
    """Generators, gradings and differential of CFK~ for a nice diagram."""
    gens = enumerate_generators(d, limit)
    if not d.vertices:
        return ChainComplex(gens, [anchor_grading[0]], [Fraction(anchor_grading[1])], [set()], 0), None
    solver = DomainSolver(d)
    anchor = distinguished_generator(d)
    mas, alx = assign_gradings(solver, gens, anchor, anchor_grading)
    diff = compute_differential(d, solver, gens, mas, alx)
    cx = ChainComplex(gens, mas, alx, diff, gens.index(anchor))
    if check:
        cx.check_square_zero()
        cx.check_grading()
    return cx, solver
