"""SVG drawings of butterflies and link diagrams.

Layout is Tutte's barycentric embedding: one face is pinned to a regular
polygon and every other vertex sits at the average of its neighbours.  Every
edge is subdivided first (``RenderSpec.subdivide`` times) so loops and
multi-edges become drawable polylines.  Layout never feeds back into the
combinatorics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .convert import BridgeDiagram, butterfly_to_link
from .core import ButterflyDiagram
from .diagram import LinkDiagram
from .errors import DegenerateLayout

__all__ = ["RenderSpec", "layout_svg", "tutte_layout"]

TARGETS = ("butterfly", "link", "butterfly-with-gamma")


@dataclass(frozen=True)
class RenderSpec:
    target: str = "butterfly"
    outer_face: int | None = None     # default: the longest face
    size: int = 480
    margin: int = 24
    subdivide: int = 1
    max_subdivide: int = 4
    trunk_width: float = 4.0
    edge_width: float = 1.2


def tutte_layout(n_vertices: int, edges: list[tuple[int, int]], outer: list[int]) -> np.ndarray:
    """Positions in the unit disk; ``outer`` (distinct vertices, in order) is pinned."""
    pos = np.zeros((n_vertices, 2))
    pinned = {}
    k = len(outer)
    for i, v in enumerate(outer):
        ang = math.pi / 2 + 2 * math.pi * i / k
        pinned[v] = (math.cos(ang), math.sin(ang))
    free = [v for v in range(n_vertices) if v not in pinned]
    index = {v: i for i, v in enumerate(free)}
    L = np.zeros((len(free), len(free)))
    rhs = np.zeros((len(free), 2))
    for u, v in edges:
        for a, b in ((u, v), (v, u)):
            if a in index:
                L[index[a], index[a]] += 1
                if b in index:
                    L[index[a], index[b]] -= 1
                else:
                    rhs[index[a]] += pinned[b]
    for v, xy in pinned.items():
        pos[v] = xy
    if free:
        try:
            sol = np.linalg.solve(L, rhs)
        except np.linalg.LinAlgError as exc:
            raise DegenerateLayout("barycentric system is singular") from exc
        pos[free] = sol
    return pos


def _subdivided(n_vertices, edges, depth):
    """Split each edge into ``depth + 1`` pieces; returns new vertex count, edges, polylines."""
    out_edges, polylines = [], []
    nv = n_vertices
    for u, v in edges:
        chain = [u] + list(range(nv, nv + depth)) + [v]
        nv += depth
        out_edges.extend(zip(chain, chain[1:]))
        polylines.append(chain)
    return nv, out_edges, polylines


def _outer_cycle(walk_vertices: list[int]) -> list[int]:
    seen, out = set(), []
    for v in walk_vertices:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _layout_graph(n_vertices, edges, face_walks, outer_face, spec):
    """Lay out the edge-subdivided graph, retrying with deeper subdivision."""
    depth = spec.subdivide
    while depth <= spec.max_subdivide:
        nv, sub_edges, polylines = _subdivided(n_vertices, edges, depth)
        # outer boundary: walk the outer face through the subdivision points
        boundary = []
        for e, forward in face_walks[outer_face]:
            chain = polylines[e] if forward else polylines[e][::-1]
            boundary.extend(chain[:-1])
        outer = _outer_cycle(boundary)
        if len(outer) >= 3:
            try:
                pos = tutte_layout(nv, sub_edges, outer)
            except DegenerateLayout:
                pos = None
            if pos is not None:
                rounded = {tuple(np.round(pos[v], 6)) for v in range(n_vertices)}
                if len(rounded) == n_vertices:
                    return pos, polylines
        depth += 1
    raise DegenerateLayout(f"no non-degenerate layout up to subdivision depth {spec.max_subdivide}")


class _Canvas:
    def __init__(self, spec: RenderSpec):
        self.spec = spec
        self.items: list[str] = []

    def xy(self, p) -> tuple[float, float]:
        s = self.spec
        r = (s.size - 2 * s.margin) / 2
        return (s.size / 2 + r * p[0], s.size / 2 - r * p[1])

    def polyline(self, pts, cls, width, dash=None):
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in (self.xy(p) for p in pts))
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(f'<polyline class="{cls}" points="{coords}" fill="none" stroke="black" '
                          f'stroke-width="{width:.2f}"{dash_attr}/>')

    def dot(self, p, cls, r=3.5, fill="black"):
        x, y = self.xy(p)
        self.items.append(f'<circle class="{cls}" cx="{x:.2f}" cy="{y:.2f}" r="{r:.2f}" fill="{fill}"/>')

    def star(self, p, cls):
        x, y = self.xy(p)
        self.items.append(f'<text class="{cls}" x="{x:.2f}" y="{y + 5:.2f}" font-size="16" '
                          f'text-anchor="middle">*</text>')

    def svg(self) -> str:
        s = self.spec.size
        body = "\n".join(self.items)
        return (f'<?xml version="1.0" encoding="UTF-8"?>\n'
                f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" '
                f'viewBox="0 0 {s} {s}">\n<rect width="{s}" height="{s}" fill="white"/>\n{body}\n</svg>\n')


def _render_butterfly(b: ButterflyDiagram, spec: RenderSpec) -> str:
    m = b.map
    edges = [(m.tail(x), m.head(x)) for x, _ in m.edges]
    walks = [[(m.edge_of[d], m.edges[m.edge_of[d]][0] == d) for d in f.darts] for f in m.faces]
    outer = spec.outer_face if spec.outer_face is not None else max(range(len(walks)), key=lambda f: (len(walks[f]), -f))
    pos, polylines = _layout_graph(len(m.vertices), edges, walks, outer, spec)
    cv = _Canvas(spec)
    for chain in polylines:
        cv.polyline([pos[v] for v in chain], "edge", spec.edge_width)
    # trunks: bend through the centre of their face so they stay inside it
    for i, t in enumerate(b.trunks):
        f = b.face_of_trunk(i)
        pts = np.array([pos[m.vertex_of[d]] for d in m.faces[f].darts])
        centre = pts.mean(axis=0)
        a, c = pos[m.vertex_of[t.c_dart]], pos[m.vertex_of[t.d_dart]]
        cv.polyline([a, centre, c], "trunk", spec.trunk_width)
    if spec.target == "butterfly-with-gamma":
        for ch in b.gamma.chords:
            cv.polyline([pos[ch.v_plus], pos[ch.v_minus]], "chord", spec.edge_width, dash="3,3")
    kinds = b.classes.kind
    for v in range(len(m.vertices)):
        if kinds[v] == "A":
            cv.dot(pos[v], "vertex-A")
        elif kinds[v] == "E":
            cv.dot(pos[v], "vertex-E", fill="white")
        else:
            cv.star(pos[v], "vertex-B")
    return cv.svg()


def _render_link(d: LinkDiagram, spec: RenderSpec) -> str:
    cv = _Canvas(spec)
    n = d.n_crossings
    if n:
        seg_slots = {}
        for slot, other in enumerate(d.alpha):
            if slot < other:
                seg_slots[d.seg(slot)] = (slot, other)
        segs = sorted(seg_slots)
        edge_index = {s: k for k, s in enumerate(segs)}
        edges = [(seg_slots[s][0] // 4, seg_slots[s][1] // 4) for s in segs]
        walks = []
        for cyc in d.regions:
            w = []
            for c in cyc:
                # leave crossing c//4 along position (c + 1) % 4
                out = d.rot(c)
                s = d.seg(out)
                w.append((edge_index[s], seg_slots[s][0] == out))
            walks.append(w)
        outer = spec.outer_face if spec.outer_face is not None else max(range(len(walks)), key=lambda f: (len(walks[f]), -f))
        pos, polylines = _layout_graph(n, edges, walks, outer, spec)
        gap = 0.35
        for s, chain in zip(segs, polylines):
            pts = [np.array(pos[v]) for v in chain]
            a, b = seg_slots[s]
            # shorten the ends that are under-passages
            if a % 4 in (0, 2):
                pts[0] = pts[0] + gap * (pts[1] - pts[0])
            if b % 4 in (0, 2):
                pts[-1] = pts[-1] + gap * (pts[-2] - pts[-1])
            cv.polyline(pts, "strand", spec.edge_width * 1.5)
        for i in range(n):
            cv.dot(pos[i], "crossing", r=1.0, fill="none")
    for k, _ in enumerate(d.loops):
        cx = -0.8 + 0.4 * k
        pts = [(cx + 0.15 * math.cos(t), -0.85 + 0.1 * math.sin(t)) for t in np.linspace(0, 2 * math.pi, 25)]
        cv.polyline(pts, "loop", spec.edge_width * 1.5)
    return cv.svg()


def layout_svg(obj, spec: RenderSpec = RenderSpec()) -> str:
    if spec.target not in TARGETS:
        raise ValueError(f"unknown render target {spec.target!r}")
    if spec.target == "link":
        if isinstance(obj, ButterflyDiagram):
            obj = butterfly_to_link(obj)
        if isinstance(obj, BridgeDiagram):
            obj = obj.link
        return _render_link(obj, spec)
    if not isinstance(obj, ButterflyDiagram):
        raise TypeError("butterfly renders need a ButterflyDiagram")
    return _render_butterfly(obj, spec)
