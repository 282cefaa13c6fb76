"""The m-butterfly data model.

A butterfly diagram is a planar map ``R`` together with one trunk per face.  A
trunk is stored as the two *anchor darts* of its face walk: the darts leaving
the anchor corners ``posC`` and ``posD = posC + n`` of a walk of length ``2n``.
Everything else (reflection pairings, vertex classes, the chord graph, link
components) is derived and cached.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import (
    AnchorNotAntipodal,
    BadParameters,
    ButterflyStructureError,
    GammaNotPaths,
    NonBivalentAE,
    UnclassifiableVertex,
)
from .planar_map import PlanarMap, compact, map_from_faces

__all__ = [
    "Trunk",
    "ReflectionPairing",
    "VertexClasses",
    "Chord",
    "GammaGraph",
    "ButterflyDiagram",
    "classify_vertices",
    "gamma_graph",
    "link_components",
    "make_rational_butterfly",
    "mirror_butterfly",
    "butterfly_isomorphic",
    "isomorphism_kind",
    "smooth_plain_vertices",
]


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def groups(self):
        out = defaultdict(list)
        for x in range(len(self.parent)):
            out[self.find(x)].append(x)
        return sorted(out.values())


@dataclass(frozen=True)
class Trunk:
    c_dart: int
    d_dart: int
    label: str = ""


@dataclass(frozen=True)
class ReflectionPairing:
    """Combinatorial reflection of one face: corner ``p -> 2 posC - p``."""

    face: int
    pos_c: int
    length: int

    @property
    def pos_d(self) -> int:
        return (self.pos_c + self.length // 2) % self.length

    def corner(self, p: int) -> int:
        return (2 * self.pos_c - p) % self.length

    def side(self, i: int) -> int:
        # side i joins corners i and i+1
        return (2 * self.pos_c - i - 1) % self.length

    def slot(self, p: int) -> int:
        """Signed distance from the C anchor: ``+k`` on the first wing, ``-k`` on the second."""
        k = (p - self.pos_c) % self.length
        n = self.length // 2
        return k if k <= n else k - self.length


KINDS = ("A", "E", "B", "plain")


@dataclass(frozen=True)
class VertexClasses:
    class_of: tuple[int, ...]           # vertex -> class id
    classes: tuple[tuple[int, ...], ...]
    kind: tuple[str, ...]               # vertex -> one of KINDS
    problems: tuple[str, ...] = ()

    def of_kind(self, k: str) -> list[int]:
        return [v for v, kk in enumerate(self.kind) if kk == k]

    def census(self) -> dict[str, int]:
        return {k: self.kind.count(k) for k in KINDS}

    @property
    def ok(self) -> bool:
        return not self.problems


@dataclass(frozen=True)
class Chord:
    face: int
    plus: int          # walk position posC + k
    minus: int         # walk position posC - k
    slot: int          # k, 1 <= k <= n - 1
    v_plus: int
    v_minus: int


@dataclass(frozen=True)
class GammaGraph:
    nodes: tuple[int, ...]
    chords: tuple[Chord, ...]
    paths: tuple[tuple[int, ...], ...] = ()
    problems: tuple[str, ...] = ()

    def valence(self) -> dict[int, int]:
        deg = {v: 0 for v in self.nodes}
        for ch in self.chords:
            deg[ch.v_plus] = deg.get(ch.v_plus, 0) + 1
            deg[ch.v_minus] = deg.get(ch.v_minus, 0) + 1
        return deg


@dataclass(frozen=True, eq=False)
class ButterflyDiagram:
    map: PlanarMap
    trunks: tuple[Trunk, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        m = self.map
        if len(self.trunks) != len(m.faces):
            raise ButterflyStructureError(
                f"{len(m.faces)} faces but {len(self.trunks)} trunks; need one trunk per face")
        seen = set()
        for t in self.trunks:
            fc, fd = m.face_of[t.c_dart], m.face_of[t.d_dart]
            if fc != fd:
                raise ButterflyStructureError(f"trunk {t.label!r} anchors lie on different faces")
            if fc in seen:
                raise ButterflyStructureError(f"face {fc} carries two trunks")
            seen.add(fc)
            walk = m.faces[fc].darts
            L = len(walk)
            pc, pd = walk.index(t.c_dart), walk.index(t.d_dart)
            if L % 2 or (pd - pc) % L != L // 2 or pc == pd:
                raise AnchorNotAntipodal(
                    f"trunk {t.label!r}: anchors at {pc},{pd} on a walk of length {L}")

    # -- per-face geometry -------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.trunks)

    @cached_property
    def trunk_of_face(self) -> dict[int, int]:
        return {self.map.face_of[t.c_dart]: i for i, t in enumerate(self.trunks)}

    def face_of_trunk(self, i: int) -> int:
        return self.map.face_of[self.trunks[i].c_dart]

    @cached_property
    def pairings(self) -> tuple[ReflectionPairing, ...]:
        out = []
        for f in self.map.faces:
            t = self.trunks[self.trunk_of_face[f.id]]
            out.append(ReflectionPairing(f.id, f.darts.index(t.c_dart), len(f.darts)))
        return tuple(out)

    @cached_property
    def anchor_darts(self) -> frozenset[int]:
        return frozenset(d for t in self.trunks for d in (t.c_dart, t.d_dart))

    @cached_property
    def a_vertices(self) -> frozenset[int]:
        return frozenset(self.map.vertex_of[d] for d in self.anchor_darts)

    def corner_vertex(self, face: int, p: int) -> int:
        walk = self.map.faces[face].darts
        return self.map.vertex_of[walk[p % len(walk)]]

    def corner_dart(self, face: int, p: int) -> int:
        walk = self.map.faces[face].darts
        return walk[p % len(walk)]

    def position(self, dart: int) -> tuple[int, int]:
        f = self.map.face_of[dart]
        return f, self.map.faces[f].darts.index(dart)

    @cached_property
    def classes(self) -> VertexClasses:
        return classify_vertices(self)

    @cached_property
    def gamma(self) -> GammaGraph:
        return gamma_graph(self, strict=False)

    def trunk_index(self, label: str) -> int:
        for i, t in enumerate(self.trunks):
            if t.label == label:
                return i
        raise KeyError(label)

    def remapped(self, new_map: PlanarMap, relabel: dict[int, int], drop: Iterable[int] = ()) -> "ButterflyDiagram":
        drop = set(drop)
        trunks = tuple(Trunk(relabel[t.c_dart], relabel[t.d_dart], t.label)
                       for i, t in enumerate(self.trunks) if i not in drop)
        return ButterflyDiagram(new_map, trunks, self.name)

    def walks(self) -> list[list[int]]:
        return [list(f.darts) for f in self.map.faces]

    def __repr__(self):
        v, e, f = self.map.census()
        return f"ButterflyDiagram(m={self.m}, V={v}, E={e}, name={self.name!r})"


def classify_vertices(b: ButterflyDiagram, strict: bool = False) -> VertexClasses:
    """Union-find over corner pairings, then A/E/B/plain kinds.

    With ``strict`` the first problem found is raised instead of reported.
    """
    m = b.map
    uf = UnionFind(len(m.vertices))
    for rp in b.pairings:
        walk = m.faces[rp.face].darts
        for p in range(rp.length):
            uf.union(m.vertex_of[walk[p]], m.vertex_of[walk[rp.corner(p)]])
    groups = uf.groups()
    class_of = [0] * len(m.vertices)
    for cid, g in enumerate(groups):
        for v in g:
            class_of[v] = cid
    a_set = b.a_vertices
    a_classes = {class_of[v] for v in a_set}
    kind = []
    problems = []
    for v in range(len(m.vertices)):
        if v in a_set:
            kind.append("A")
        elif class_of[v] in a_classes:
            kind.append("E")
        elif any(m.degree(u) != 2 for u in groups[class_of[v]]):
            kind.append("B")
        else:
            kind.append("plain")
    for v, k in enumerate(kind):
        if k in "AE" and m.degree(v) != 2:
            problems.append(f"NonBivalentAE: {k}-vertex {v} has valence {m.degree(v)}")
            if strict:
                raise NonBivalentAE(problems[-1])
    for v, k in enumerate(kind):
        if k == "plain":
            problems.append(f"UnclassifiableVertex: vertex {v} is neither A, E nor B")
            if strict:
                raise UnclassifiableVertex(problems[-1])
    for cid in sorted(a_classes):
        n_a = sum(1 for v in groups[cid] if v in a_set)
        if n_a != 2:
            problems.append(f"A-class {cid} contains {n_a} A-vertices, expected 2")
            if strict:
                raise GammaNotPaths(problems[-1])
    return VertexClasses(tuple(class_of), tuple(tuple(g) for g in groups), tuple(kind), tuple(problems))


def gamma_graph(b: ButterflyDiagram, strict: bool = True) -> GammaGraph:
    """Chords between mirror corners occupied by A/E vertices, and their path components."""
    cls = b.classes
    kinds = cls.kind
    chords = []
    for rp in b.pairings:
        n = rp.length // 2
        for k in range(1, n):
            p, q = (rp.pos_c + k) % rp.length, (rp.pos_c - k) % rp.length
            vp, vq = b.corner_vertex(rp.face, p), b.corner_vertex(rp.face, q)
            if kinds[vp] in "AE" or kinds[vq] in "AE":
                chords.append(Chord(rp.face, p, q, k, vp, vq))
    nodes = tuple(v for v, k in enumerate(kinds) if k in "AE")
    adj = defaultdict(list)
    for i, ch in enumerate(chords):
        adj[ch.v_plus].append(i)
        adj[ch.v_minus].append(i)
    problems = []
    for v in nodes:
        want = 1 if kinds[v] == "A" else 2
        if len(adj[v]) != want:
            problems.append(f"{kinds[v]}-vertex {v} has Γ-valence {len(adj[v])}, expected {want}")
    for ch in chords:
        if kinds[ch.v_plus] not in "AE" or kinds[ch.v_minus] not in "AE":
            problems.append(f"chord in face {ch.face} slot {ch.slot} joins a non-A/E vertex")
    paths = []
    seen = set()
    if not problems:
        for start in nodes:
            if kinds[start] != "A" or start in seen:
                continue
            path = [start]
            seen.add(start)
            prev_chord = None
            v = start
            while True:
                nxt = [c for c in adj[v] if c != prev_chord]
                if not nxt:
                    break
                c = nxt[0]
                ch = chords[c]
                w = ch.v_minus if ch.v_plus == v else ch.v_plus
                if w in seen:
                    problems.append(f"Γ component through vertex {w} is not a simple path")
                    break
                path.append(w)
                seen.add(w)
                prev_chord, v = c, w
                if kinds[w] == "A":
                    break
            paths.append(tuple(path))
        leftover = [v for v in nodes if v not in seen]
        if leftover:
            problems.append(f"Γ has closed cycles through vertices {leftover}")
        for path in paths:
            cid = cls.class_of[path[0]]
            if set(path) != set(cls.classes[cid]):
                problems.append(f"Γ path {path} does not equal its ≃-class {cls.classes[cid]}")
    if strict and problems:
        raise GammaNotPaths("; ".join(problems))
    return GammaGraph(nodes, tuple(chords), tuple(paths), tuple(problems))


# -- strand tracing ------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    """One piece of a link component: a trunk or a chord, with direction.

    ``forward`` for a trunk means C -> D; for a chord it means from the ``+k``
    corner to the ``-k`` corner.
    """

    kind: str   # "trunk" | "chord"
    index: int
    forward: bool


def _other_dart(m: PlanarMap, d: int) -> int:
    orb = m.vertices[m.vertex_of[d]]
    if len(orb) != 2:
        raise NonBivalentAE(f"vertex {m.vertex_of[d]} is not bivalent")
    return orb[1] if orb[0] == d else orb[0]


def trace_components(b: ButterflyDiagram) -> list[list[Step]]:
    """Cycles of alternating trunks and chord runs, glued at A-vertices."""
    m = b.map
    g = b.gamma
    if g.problems:
        raise GammaNotPaths("; ".join(g.problems))
    chord_at = {}
    for i, ch in enumerate(g.chords):
        chord_at[(ch.face, ch.plus)] = (i, True)
        chord_at[(ch.face, ch.minus)] = (i, False)
    anchor_at = {}
    for i, t in enumerate(b.trunks):
        anchor_at[t.c_dart] = (i, True)
        anchor_at[t.d_dart] = (i, False)
    used = set()
    comps = []
    for start in range(b.m):
        if start in used:
            continue
        comp = []
        ti, fwd = start, True
        while True:
            if ti in used:
                break
            used.add(ti)
            comp.append(Step("trunk", ti, fwd))
            t = b.trunks[ti]
            end = t.d_dart if fwd else t.c_dart
            d = _other_dart(m, end)
            while d not in anchor_at:
                f, p = b.position(d)
                ci, cfwd = chord_at[(f, p)]
                comp.append(Step("chord", ci, cfwd))
                ch = g.chords[ci]
                q = ch.minus if cfwd else ch.plus
                d = _other_dart(m, b.corner_dart(f, q))
            ti, fwd = anchor_at[d]
        comps.append(comp)
    return comps


def link_components(b: ButterflyDiagram) -> tuple[int, list[list[Step]]]:
    comps = trace_components(b)
    return len(comps), comps


# -- constructors ------------------------------------------------------------

def make_rational_butterfly(p: int, q: int) -> ButterflyDiagram:
    """Equatorial ``2p``-cycle with north trunk ``v0-vp`` and south trunk ``vq-v(q+p)``."""
    if not (isinstance(p, int) and isinstance(q, int)) or p < 2 or not 1 <= q < p:
        raise BadParameters(f"need p >= 2 and 1 <= q < p, got p={p}, q={q}")
    n = 2 * p
    north = [2 * i for i in range(n)]
    # south walk: corner k sits at v_{q-k}; dart reverses edge (q-k-1)
    south = [2 * ((q - k - 1) % n) + 1 for k in range(n)]
    m = map_from_faces([north, south])
    trunks = (Trunk(north[0], north[p], "N"), Trunk(south[0], south[p], "S"))
    return ButterflyDiagram(m, trunks, f"rational {p}/{q}")


def mirror_butterfly(b: ButterflyDiagram) -> ButterflyDiagram:
    """Same butterfly with the sphere's orientation reversed."""
    m = b.map
    n = m.n_darts
    inv = [0] * n
    for d, e in enumerate(m.sigma):
        inv[e] = d
    mm = PlanarMap(m.alpha, tuple(inv))
    phi_inv = [0] * n
    for d in range(n):
        phi_inv[m.phi(d)] = d

    def move(d):
        return m.alpha[phi_inv[d]]

    trunks = tuple(Trunk(move(t.c_dart), move(t.d_dart), t.label) for t in b.trunks)
    return ButterflyDiagram(mm, trunks, b.name)


def _extend(m1: PlanarMap, m2: PlanarMap, r1: int, r2: int) -> dict[int, int] | None:
    iso = {r1: r2}
    back = {r2: r1}
    stack = [r1]
    while stack:
        d = stack.pop()
        e = iso[d]
        for f1, f2 in ((m1.alpha[d], m2.alpha[e]), (m1.sigma[d], m2.sigma[e])):
            if f1 in iso:
                if iso[f1] != f2:
                    return None
            else:
                if f2 in back:
                    return None
                iso[f1] = f2
                back[f2] = f1
                stack.append(f1)
    return iso if len(iso) == m1.n_darts else None


def _direct_iso(b1: ButterflyDiagram, b2: ButterflyDiagram) -> bool:
    m1, m2 = b1.map, b2.map
    if m1.n_darts != m2.n_darts or b1.m != b2.m:
        return False
    if sorted(len(f) for f in m1.faces) != sorted(len(f) for f in m2.faces):
        return False
    pairs2 = {frozenset((t.c_dart, t.d_dart)) for t in b2.trunks}
    root = b1.trunks[0].c_dart
    for cand in sorted(b2.anchor_darts):
        iso = _extend(m1, m2, root, cand)
        if iso is None:
            continue
        if all(frozenset((iso[t.c_dart], iso[t.d_dart])) in pairs2 for t in b1.trunks):
            return True
    return False


def isomorphism_kind(b1: ButterflyDiagram, b2: ButterflyDiagram) -> str | None:
    """``"direct"``, ``"reversed"`` (orientation-reversing) or ``None``."""
    if _direct_iso(b1, b2):
        return "direct"
    if _direct_iso(mirror_butterfly(b1), b2):
        return "reversed"
    return None


def butterfly_isomorphic(b1: ButterflyDiagram, b2: ButterflyDiagram, allow_reversal: bool = True) -> bool:
    kind = isomorphism_kind(b1, b2)
    return kind == "direct" or (allow_reversal and kind is not None)


def smooth_plain_vertices(b: ButterflyDiagram) -> ButterflyDiagram:
    """Erase every vertex whose whole ≃-class is bivalent and neither A nor E."""
    cls = classify_vertices(b)
    m = b.map
    doomed = [m.vertices[v][0] for v, k in enumerate(cls.kind)
              if k == "plain" and m.degree(v) == 2 and m.alpha[m.vertices[v][0]] != m.vertices[v][1]]
    if not doomed:
        return b
    anchors = [(t.c_dart, t.d_dart) for t in b.trunks]
    walks = b.walks()
    alpha = {d: m.alpha[d] for d in range(m.n_darts)}
    sigma = list(m.sigma)
    for x in doomed:
        y = sigma[x]
        p, q = alpha[x], alpha[y]
        if p == y:
            continue
        walks = [[d for d in w if d not in (x, y)] for w in walks]
        alpha[p], alpha[q] = q, p
        del alpha[x], alpha[y]
        # keep sigma consistent for the darts still to be processed
        sigma[x] = sigma[y] = -1
    new_map, relabel = compact(walks, alpha)
    trunks = tuple(Trunk(relabel[c], relabel[d], t.label) for (c, d), t in zip(anchors, b.trunks))
    return ButterflyDiagram(new_map, trunks, b.name)
