"""Butterfly diagrams <-> bridge diagrams.

Butterfly to link: every trunk becomes a bridge lying over everything, every
Γ-path an underarc.  A chord of face ``F`` at slot ``k`` meets ``F``'s trunk in
one crossing; along the trunk from its C anchor the crossings come in
increasing ``k``.

Local picture at a crossing (face on the left of its walk, so walking the
trunk from C to D the corners ``posC+1 .. posC+n-1`` lie on the right): the
four ends listed counterclockwise are S (chord toward the ``+k`` corner),
E (trunk toward D), N (chord toward the ``-k`` corner), W (trunk toward C).

Link to butterfly: one B-vertex per region, two A-vertices per crossing (the
two under-ends), each A-vertex joined to the two regions beside it; the faces
are neighbourhoods of the arcs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .core import ButterflyDiagram, Trunk, smooth_plain_vertices, trace_components
from .diagram import LinkDiagram
from .errors import ComponentWithoutBridge, Disconnected, HasClosedCurve, NonPlanarPD
from .planar_map import map_from_faces

__all__ = [
    "Arc",
    "BridgeDiagram",
    "butterfly_to_link",
    "bridge_decompose",
    "preprocess_diagram",
    "link_to_butterfly",
]

S, E, N, W = 0, 1, 2, 3


@dataclass(frozen=True)
class Arc:
    """A strand run from an under-exit (position 2) to an under-entry (position 0).

    ``over`` lists ``(crossing, entry position)`` for every crossing passed
    over, in order.
    """

    start: int                  # tail slot 4*x + 2
    end: int                    # head slot 4*y + 0
    over: tuple[tuple[int, int], ...]
    segments: tuple[int, ...]
    component: int

    @property
    def kind(self) -> str:
        return "overarc" if self.over else "simple"


@dataclass(frozen=True, eq=False)
class BridgeDiagram:
    link: LinkDiagram
    arcs: tuple[Arc, ...]
    bridge_degenerate: bool = False
    # butterfly-derived diagrams remember (trunk, chord, slot) per crossing
    crossing_origin: tuple[tuple[int, int, int], ...] = ()

    @property
    def overarcs(self) -> list[Arc]:
        return [a for a in self.arcs if a.over]

    @property
    def simple_arcs(self) -> list[Arc]:
        return [a for a in self.arcs if not a.over]

    @property
    def n_bridges(self) -> int:
        return len(self.overarcs)

    @cached_property
    def census(self) -> dict[str, int]:
        return {"crossings": self.link.n_crossings, "components": self.link.n_components,
                "arcs": len(self.arcs), "overarcs": self.n_bridges,
                "simple": len(self.simple_arcs)}

    def __repr__(self):
        c = self.census
        return (f"BridgeDiagram(crossings={c['crossings']}, arcs={c['arcs']}, "
                f"overarcs={c['overarcs']}, components={c['components']})")


# -- butterfly -> link -------------------------------------------------------

def butterfly_to_link(b: ButterflyDiagram) -> BridgeDiagram:
    g = b.gamma
    comps = trace_components(b)
    # chords grouped per face in slot order
    by_face: dict[int, list[int]] = {}
    for ci, ch in enumerate(g.chords):
        by_face.setdefault(ch.face, []).append(ci)
    for lst in by_face.values():
        lst.sort(key=lambda ci: g.chords[ci].slot)

    passages_all = []
    for comp in comps:
        passages = []       # (chord index = crossing id, in end, out end)
        for step in comp:
            if step.kind == "trunk":
                face = b.face_of_trunk(step.index)
                cs = by_face.get(face, [])
                if step.forward:
                    passages.extend((ci, W, E) for ci in cs)
                else:
                    passages.extend((ci, E, W) for ci in reversed(cs))
            else:
                passages.append((step.index, S, N) if step.forward else (step.index, N, S))
        passages_all.append(passages)

    ends = {}           # (chord, end) -> segment label
    under_in = {}       # chord -> end where the under strand enters
    loops = []
    label = 1
    for passages in passages_all:
        if not passages:
            loops.append(label)
            label += 1
            continue
        L = len(passages)
        for j, (ci, e_in, e_out) in enumerate(passages):
            nci, n_in, _ = passages[(j + 1) % L]
            ends[(ci, e_out)] = ends[(nci, n_in)] = label + j
            if e_in in (S, N):
                under_in[ci] = e_in
        label += L

    crossings = []
    origin = []
    for ci, ch in enumerate(g.chords):
        ring = [ends[(ci, k)] for k in (S, E, N, W)]
        start = 0 if under_in[ci] == S else 2
        crossings.append(tuple(ring[start:] + ring[:start]))
        origin.append((b.trunk_of_face[ch.face], ci, ch.slot))
    link = LinkDiagram(tuple(crossings), tuple(loops))
    chordless = any(f.id not in by_face for f in b.map.faces)
    return BridgeDiagram(link, tuple(_arcs(link)), chordless, tuple(origin))


# -- link -> bridge structure ------------------------------------------------

def _arcs(d: LinkDiagram) -> list[Arc]:
    out = []
    for i in range(d.n_crossings):
        t = 4 * i + 2
        over = []
        segs = []
        comp = d.component_of_slot[t]
        while True:
            segs.append(d.seg(t))
            h = d.alpha[t]
            if h % 4 == 0:
                break
            over.append((h // 4, h % 4))
            t = d.rot(h, 2)
        out.append(Arc(4 * i + 2, h, tuple(over), tuple(segs), comp))
    return out


def bridge_decompose(d: LinkDiagram) -> BridgeDiagram:
    if d.loops:
        raise HasClosedCurve(f"{len(d.loops)} crossing-free component(s); preprocess first")
    if d.n_crossings == 0:
        raise HasClosedCurve("empty diagram")
    if len(d.diagram_components) > 1:
        raise Disconnected(f"diagram has {len(d.diagram_components)} pieces; preprocess first")
    arcs = _arcs(d)
    unders = {a.component for a in arcs}
    overs = {a.component for a in arcs if a.over}
    for k in range(len(d.component_tails)):
        if k not in unders:
            raise ComponentWithoutBridge(f"component {k} never passes under a crossing")
        if k not in overs:
            raise ComponentWithoutBridge(f"component {k} never passes over a crossing")
    return BridgeDiagram(d, tuple(arcs))


def _bad_components(d: LinkDiagram) -> list[int]:
    """Components that never pass under, or never pass over."""
    out = []
    for k, tails in enumerate(d.component_tails):
        heads = [d.alpha[t] % 4 for t in tails]
        if 0 not in heads or not any(h in (1, 3) for h in heads):
            out.append(k)
    return out


def preprocess_diagram(d: LinkDiagram) -> LinkDiagram:
    """Make ``d`` connected and free of closed curves without changing the link.

    Free loops and components lacking an over- or under-passage get a kink;
    split pieces are then joined by pushing a finger of one piece under a
    segment of another.
    """
    labels = list(d.segments) + list(d.loops)
    fresh = iter(range((max(labels) if labels else 0) + 1, 1 << 62))
    xs = [list(x) for x in d.crossings]

    for s in d.loops:
        s2 = next(fresh)
        xs.append([s2, s, s, s2])

    cur = LinkDiagram(tuple(map(tuple, xs)))
    for k in _bad_components(cur):
        t = cur.component_tails[k][0]
        h = cur.alpha[t]
        s = cur.seg(t)
        loop_seg, s_out = next(fresh), next(fresh)
        xs[h // 4][h % 4] = s_out
        xs.append([s, loop_seg, loop_seg, s_out])
    cur = LinkDiagram(tuple(map(tuple, xs)))

    while len(cur.diagram_components) > 1:
        first, second = cur.diagram_components[0], cur.diagram_components[1]
        cur = _join(cur, 4 * first[0], 4 * second[0], fresh)
    return cur


def _join(d: LinkDiagram, slot1: int, slot2: int, fresh) -> LinkDiagram:
    """Slide the segment leaving ``slot2``'s strand under the one at ``slot1``."""
    tails = {t for comp in d.component_tails for t in comp}

    def tail_of(slot):
        return slot if slot in tails else d.alpha[slot]

    t1, t2 = tail_of(slot1), tail_of(slot2)
    h1, h2 = d.alpha[t1], d.alpha[t2]
    s1a, s2a = d.seg(t1), d.seg(t2)
    s1b, s1c, s2b, s2c = (next(fresh) for _ in range(4))
    xs = [list(x) for x in d.crossings]
    xs[h1 // 4][h1 % 4] = s1c
    xs[h2 // 4][h2 % 4] = s2c
    for variant in ((s2a, s1b, s2b, s1a, s2b, s1b, s2c, s1c),
                    (s2a, s1a, s2b, s1b, s2b, s1c, s2c, s1b)):
        a1, b1, c1, d1, a2, b2, c2, d2 = variant
        try:
            return LinkDiagram(tuple(map(tuple, xs + [[a1, b1, c1, d1], [a2, b2, c2, d2]])))
        except NonPlanarPD:
            continue
    raise NonPlanarPD("could not join split pieces")  # pragma: no cover


# -- link -> butterfly -------------------------------------------------------

def link_to_butterfly(bd: BridgeDiagram | LinkDiagram, smooth: bool = True) -> ButterflyDiagram:
    """One trunk per arc; no E-vertices.

    Edges are keyed by ``(A-vertex slot, corner)``; the A-vertex at under-end
    slot ``4x+q`` sees corners ``4x+q-1`` and ``4x+q``.  Dart ``2e`` runs from
    the A-vertex to the region, ``2e+1`` back.
    """
    if isinstance(bd, LinkDiagram):
        bd = bridge_decompose(bd)
    d = bd.link
    edge_id: dict[tuple[int, int], int] = {}
    for i in range(d.n_crossings):
        for q in (0, 2):
            a = 4 * i + q
            for c in (4 * i + (q - 1) % 4, a):
                edge_id[(a, c)] = len(edge_id)

    def a_to_b(a, c):
        return 2 * edge_id[(a, c)]

    def b_to_a(a, c):
        return 2 * edge_id[(a, c)] + 1

    def slot(x, p):
        return 4 * x + p % 4

    walks, anchors = [], []
    for idx, arc in enumerate(bd.arcs):
        x0 = arc.start // 4
        xe = arc.end // 4
        a_s, a_e = arc.start, arc.end
        right = [a_to_b(a_s, slot(x0, 1))]
        left = []
        for x, p in arc.over:
            a_r = slot(x, p + 1)
            right += [b_to_a(a_r, slot(x, p)), a_to_b(a_r, slot(x, p + 1))]
            a_l = slot(x, p + 3)
            left += [b_to_a(a_l, slot(x, p + 2)), a_to_b(a_l, slot(x, p + 3))]
        right.append(b_to_a(a_e, slot(xe, 0)))
        back = [a_to_b(a_e, slot(xe, 3))]
        for k in range(len(arc.over) - 1, -1, -1):
            back += left[2 * k: 2 * k + 2]
        back.append(b_to_a(a_s, slot(x0, 2)))
        walk = right + back
        walks.append(walk)
        anchors.append((walk[0], walk[len(walk) // 2], f"t{idx + 1}"))
    m = map_from_faces(walks)
    b = ButterflyDiagram(m, tuple(Trunk(c, e, lab) for c, e, lab in anchors))
    return smooth_plain_vertices(b) if smooth else b
