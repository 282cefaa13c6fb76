"""Trunk-reducing moves, their inverse, and the reduction scheduler.

Reduce (simple face ``P = (C, c, D, d)``, neighbour face ``F`` across ``C``)::

    F: ... c -> C -> d ...        becomes        F': ... c -> D -> d ...
    P: C -> c -> D -> d -> C                     (P and C removed)

The two darts of ``F`` at ``C`` are replaced by ``P``'s darts ``c->D`` and
``D->d``; walk lengths, hence all reflection pairings of ``F``, are unchanged
except that ``D`` now sits at ``C``'s old corner.

Expand is the exact inverse at an E-vertex ``e`` with neighbours ``c, d`` on
some face.  When ``c`` or ``d`` is itself an A/E-vertex, the edge towards it
(together with every edge glued to it) is first subdivided so that the new
face is simple.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Iterable

from .core import ButterflyDiagram, Trunk, UnionFind, smooth_plain_vertices, trace_components
from .errors import (
    ComponentAllSimple,
    NoAdmissibleEndpoint,
    NotConnected,
    NotEVertex,
    NotSimple,
    NotSphere,
    SelfAdjacentFace,
    WouldDisconnect,
)
from .planar_map import compact

__all__ = [
    "MoveRecord",
    "is_simple_trunk",
    "admissible_endpoints",
    "trunk_reduce",
    "trunk_expand",
    "eliminate_e_vertices",
    "reduce_to_bridges",
    "write_trace",
    "read_trace",
]


@dataclass(frozen=True)
class MoveRecord:
    kind: str            # "reduce" | "expand"
    trunk: str           # label of the trunk removed or created
    endpoint: int        # vertex C (before a reduce, after an expand)
    e_vertex: int        # vertex D (after a reduce) / the expanded E-vertex (after)
    m_before: int
    m_after: int
    subdivided: int = 0  # edges subdivided to keep the new face simple

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def write_trace(records: Iterable[MoveRecord], fh) -> None:
    for r in records:
        fh.write(r.to_json() + "\n")


def read_trace(fh) -> list[MoveRecord]:
    return [MoveRecord(**json.loads(line)) for line in fh if line.strip()]


def _trunk_arg(b: ButterflyDiagram, t) -> int:
    return b.trunk_index(t) if isinstance(t, str) else int(t)


def is_simple_trunk(b: ButterflyDiagram, t) -> bool:
    i = _trunk_arg(b, t)
    f = b.face_of_trunk(i)
    rp = b.pairings[f]
    if rp.length != 4:
        return False
    kinds = b.classes.kind
    return all(kinds[b.corner_vertex(f, rp.pos_c + s)] not in ("A", "E") for s in (1, 3))


def _partner_in_other_face(b: ButterflyDiagram, anchor_dart: int) -> tuple[int, int, int]:
    """For anchor ``C`` leaving along ``anchor_dart``: (face F, C's corner in F, partner vertex)."""
    m = b.map
    walk = m.faces[m.face_of[anchor_dart]].darts
    into_c = walk[(walk.index(anchor_dart) - 1) % len(walk)]
    out_in_f = m.alpha[into_c]              # C -> d, on F
    f, p = b.position(out_in_f)
    rp = b.pairings[f]
    return f, p, b.corner_vertex(f, rp.corner(p))


def admissible_endpoints(b: ButterflyDiagram, t) -> list[int]:
    """Anchor darts of a simple trunk whose partner across ``F`` is an A-vertex."""
    i = _trunk_arg(b, t)
    tr = b.trunks[i]
    out = []
    for dart in (tr.c_dart, tr.d_dart):
        f, _, partner = _partner_in_other_face(b, dart)
        if f != b.face_of_trunk(i) and partner in b.a_vertices and partner != b.map.vertex_of[dart]:
            out.append(dart)
    return out


def trunk_reduce(b: ButterflyDiagram, t, endpoint: int | None = None) -> tuple[ButterflyDiagram, MoveRecord]:
    """Collapse simple trunk ``t``; ``endpoint`` is the anchor dart leaving C."""
    i = _trunk_arg(b, t)
    if not is_simple_trunk(b, i):
        raise NotSimple(f"trunk {b.trunks[i].label or i} is not a simple 4-gon")
    m = b.map
    tr = b.trunks[i]
    P = b.face_of_trunk(i)
    if endpoint is None:
        ok = admissible_endpoints(b, i)
        if not ok:
            raise NoAdmissibleEndpoint(f"trunk {tr.label or i}: no endpoint has an A-vertex partner")
        endpoint = min(ok)
    if endpoint not in (tr.c_dart, tr.d_dart):
        raise NoAdmissibleEndpoint(f"dart {endpoint} is not an anchor of trunk {tr.label or i}")
    walk = list(m.faces[P].darts)
    k = walk.index(endpoint)
    w0, w1, w2, w3 = (walk[(k + j) % 4] for j in range(4))
    x, y = m.alpha[w0], m.alpha[w3]           # c -> C and C -> d on F
    F = m.face_of[x]
    if F == P or m.face_of[y] == P:
        raise SelfAdjacentFace(f"trunk {tr.label or i}: the face meets itself at its endpoint")
    f_walk = list(m.faces[F].darts)
    _, _, partner = _partner_in_other_face(b, endpoint)
    if partner not in b.a_vertices or partner == m.vertex_of[endpoint]:
        raise NoAdmissibleEndpoint(f"trunk {tr.label or i}: partner of the chosen endpoint is not an A-vertex")
    if any(d in (x, y) for d in b.anchor_darts):
        raise NoAdmissibleEndpoint(f"trunk {tr.label or i}: endpoint is also an anchor of the merged face")
    px = f_walk.index(x)
    if f_walk[(px + 1) % len(f_walk)] != y:
        raise NotSimple("endpoint is not bivalent")
    f_walk[px] = w1
    f_walk[(px + 1) % len(f_walk)] = w2
    walks = []
    for f in m.faces:
        if f.id == P:
            continue
        walks.append(f_walk if f.id == F else list(f.darts))
    alpha = {d: m.alpha[d] for d in range(m.n_darts) if d not in (w0, w3, x, y)}
    try:
        new_map, relabel = compact(walks, alpha)
    except (NotConnected, NotSphere) as exc:
        raise WouldDisconnect(str(exc)) from exc
    nb = b.remapped(new_map, relabel, drop=[i])
    rec = MoveRecord("reduce", tr.label, m.vertex_of[w0], new_map.vertex_of[relabel[w2]], b.m, nb.m)
    return nb, rec


# -- expansion -----------------------------------------------------------------

def _edge_classes(b: ButterflyDiagram) -> UnionFind:
    m = b.map
    uf = UnionFind(m.n_edges)
    for rp in b.pairings:
        walk = m.faces[rp.face].darts
        for p in range(rp.length):
            uf.union(m.edge_of[walk[p]], m.edge_of[walk[rp.side(p)]])
    return uf


def _subdivide_edge_class(b: ButterflyDiagram, edge: int) -> tuple[ButterflyDiagram, dict[int, int], int]:
    """Put a midpoint on every edge glued to ``edge``; dart ``x`` keeps its tail."""
    m = b.map
    uf = _edge_classes(b)
    root = uf.find(edge)
    members = [e for e in range(m.n_edges) if uf.find(e) == root]
    alpha = {d: m.alpha[d] for d in range(m.n_darts)}
    second = {}
    nxt = m.n_darts
    for e in members:
        x, y = m.edges[e]
        x2, y2 = nxt, nxt + 1
        nxt += 2
        second[x], second[y] = x2, y2
        # x: tail(x) -> mid, x2: mid -> head(x); y likewise reversed
        alpha[x], alpha[y2] = y2, x
        alpha[x2], alpha[y] = y, x2
    walks = []
    for f in m.faces:
        w = []
        for d in f.darts:
            w.append(d)
            if d in second:
                w.append(second[d])
        walks.append(w)
    new_map, relabel = compact(walks, alpha)
    return b.remapped(new_map, relabel), relabel, len(members)


def _expand_corner(b: ButterflyDiagram, e: int) -> int:
    """Dart leaving ``e`` whose face is preferred for the expansion."""
    m = b.map
    best = None
    for out in sorted(m.vertices[e]):
        f, p = b.position(out)
        rp = b.pairings[f]
        partner = b.corner_vertex(f, rp.corner(p))
        score = 0 if partner in b.a_vertices else 1
        if best is None or score < best[0]:
            best = (score, out)
    return best[1]


def _fresh_label(b: ButterflyDiagram) -> str:
    used = {t.label for t in b.trunks}
    k = len(b.trunks) + 1
    while f"t{k}" in used:
        k += 1
    return f"t{k}"


def trunk_expand(b: ButterflyDiagram, e: int, out_dart: int | None = None) -> tuple[ButterflyDiagram, MoveRecord]:
    """Split a simple 4-gon off a face at E-vertex ``e`` (the new trunk runs C -> e)."""
    if not 0 <= e < len(b.map.vertices) or b.classes.kind[e] != "E":
        raise NotEVertex(f"vertex {e} is not an E-vertex")
    if out_dart is None:
        out_dart = _expand_corner(b, e)
    elif b.map.vertex_of[out_dart] != e:
        raise NotEVertex(f"dart {out_dart} does not leave vertex {e}")
    m_before = b.m
    subdivided = 0
    for side in ("in", "out"):
        m = b.map
        f, p = b.position(out_dart)
        walk = m.faces[f].darts
        dart = walk[p - 1] if side == "in" else out_dart
        nbr = m.tail(dart) if side == "in" else m.head(dart)
        if b.classes.kind[nbr] in ("A", "E"):
            b, relabel, cnt = _subdivide_edge_class(b, m.edge_of[dart])
            out_dart = relabel[out_dart]
            subdivided += cnt
    m = b.map
    F, p = b.position(out_dart)
    f_walk = list(m.faces[F].darts)
    w2 = out_dart
    w1 = f_walk[(p - 1) % len(f_walk)]
    n = m.n_darts
    n0, n0r, n3, n3r = n, n + 1, n + 2, n + 3     # C->c, c->C, d->C, C->d
    f_walk[(p - 1) % len(f_walk)] = n0r
    f_walk[p] = n3r
    walks = [f_walk if f.id == F else list(f.darts) for f in m.faces]
    walks.append([n0, w1, w2, n3])
    alpha = {d: m.alpha[d] for d in range(n)}
    alpha[n0], alpha[n0r], alpha[n3], alpha[n3r] = n0r, n0, n3r, n3
    new_map, relabel = compact(walks, alpha)
    trunks = []
    for t in b.trunks:
        c = n0r if t.c_dart == w1 else t.c_dart
        d = n0r if t.d_dart == w1 else t.d_dart
        trunks.append(Trunk(relabel[c], relabel[d], t.label))
    label = _fresh_label(b)
    trunks.append(Trunk(relabel[n0], relabel[w2], label))
    nb = ButterflyDiagram(new_map, tuple(trunks), b.name)
    rec = MoveRecord("expand", label, new_map.vertex_of[relabel[n0]], new_map.vertex_of[relabel[w2]],
                     m_before, nb.m, subdivided)
    return nb, rec


def eliminate_e_vertices(b: ButterflyDiagram) -> tuple[ButterflyDiagram, list[MoveRecord]]:
    records = []
    while True:
        es = b.classes.of_kind("E")
        if not es:
            return b, records
        b, rec = trunk_expand(b, es[0])
        records.append(rec)


# -- scheduler -----------------------------------------------------------------

def reduce_to_bridges(b: ButterflyDiagram) -> tuple[ButterflyDiagram, list[MoveRecord]]:
    """Tour every component from a non-simple trunk, reducing simple trunks in order.

    For each simple trunk the endpoint met first on the tour (the backward
    one) is tried before the forward one.
    """
    records = []
    while True:
        simple = {i for i in range(b.m) if is_simple_trunk(b, i)}
        if not simple:
            break
        move = None
        for comp in trace_components(b):
            trunk_steps = [s for s in comp if s.kind == "trunk"]
            starts = [k for k, s in enumerate(trunk_steps) if s.index not in simple]
            if not starts:
                if any(s.index in simple for s in trunk_steps):
                    raise ComponentAllSimple("a link component consists of simple trunks only")
                continue
            k0 = starts[0]
            for s in trunk_steps[k0:] + trunk_steps[:k0]:
                if s.index not in simple:
                    continue
                tr = b.trunks[s.index]
                order = (tr.c_dart, tr.d_dart) if s.forward else (tr.d_dart, tr.c_dart)
                ok = admissible_endpoints(b, s.index)
                for dart in order:
                    if dart in ok:
                        move = (s.index, dart)
                        break
                if move:
                    break
            if move:
                break
        if move is None:
            raise NoAdmissibleEndpoint("no simple trunk has an admissible endpoint")
        b, rec = trunk_reduce(b, *move)
        records.append(rec)
    return smooth_plain_vertices(b), records
