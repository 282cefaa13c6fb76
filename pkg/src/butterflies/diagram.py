"""Link diagrams in PD form.

A crossing is a tuple ``(a, b, c, d)`` of segment labels listed
counterclockwise starting at the incoming under-segment, so ``a -> c`` is the
under-strand and ``b``/``d`` carry the over-strand.  Crossing-free components
are kept separately as loop labels.

Positions are addressed as *slots* ``4 * crossing + j``.  Rotating a slot
counterclockwise is ``j -> j + 1``; ``alpha`` joins the two slots of a segment.
The region at *corner* ``(i, j)`` sits between positions ``j`` and ``j + 1``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import DanglingSegment, InconsistentOrientation, NonPlanarPD

__all__ = ["LinkDiagram"]


@dataclass(frozen=True, eq=False)
class LinkDiagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    loops: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(s) for s in x) for x in self.crossings))
        object.__setattr__(self, "loops", tuple(int(s) for s in self.loops))
        for x in self.crossings:
            if len(x) != 4:
                raise NonPlanarPD(f"crossing {x} does not have four segments")
        count = defaultdict(int)
        for x in self.crossings:
            for s in x:
                count[s] += 1
        for s, c in count.items():
            if c != 2:
                raise DanglingSegment(f"segment {s} occurs {c} time(s), expected 2")
        for s in self.loops:
            if s in count:
                raise DanglingSegment(f"loop label {s} is also used by a crossing")
        if len(set(self.loops)) != len(self.loops):
            raise DanglingSegment("repeated loop label")
        _ = self.orientation  # raises on inconsistent under-strands
        if self.genus_defect:
            raise NonPlanarPD(f"PD tuples do not realize a planar diagram (Euler defect {self.genus_defect})")

    # -- slot structure --------------------------------------------------
    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def seg(self, slot: int) -> int:
        return self.crossings[slot // 4][slot % 4]

    @cached_property
    def alpha(self) -> tuple[int, ...]:
        where = defaultdict(list)
        for i, x in enumerate(self.crossings):
            for j, s in enumerate(x):
                where[s].append(4 * i + j)
        out = [0] * (4 * self.n_crossings)
        for s, (p, q) in where.items():
            out[p], out[q] = q, p
        return tuple(out)

    @staticmethod
    def rot(slot: int, k: int = 1) -> int:
        return 4 * (slot // 4) + (slot % 4 + k) % 4

    @cached_property
    def segments(self) -> tuple[int, ...]:
        return tuple(sorted({s for x in self.crossings for s in x}))

    @cached_property
    def regions(self) -> tuple[tuple[int, ...], ...]:
        """Regions as cycles of corners; corner ``c`` follows to ``alpha(rot(c))``."""
        n = 4 * self.n_crossings
        seen = [False] * n
        out = []
        for start in range(n):
            if seen[start]:
                continue
            cyc = []
            c = start
            while not seen[c]:
                seen[c] = True
                cyc.append(c)
                c = self.alpha[self.rot(c)]
            out.append(tuple(cyc))
        return tuple(out)

    @cached_property
    def region_of(self) -> dict[int, int]:
        return {c: r for r, cyc in enumerate(self.regions) for c in cyc}

    @cached_property
    def diagram_components(self) -> tuple[tuple[int, ...], ...]:
        """Connected pieces of the 4-valent graph, as crossing-index tuples."""
        parent = list(range(self.n_crossings))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for p, q in enumerate(self.alpha):
            parent[find(p // 4)] = find(q // 4)
        groups = defaultdict(list)
        for i in range(self.n_crossings):
            groups[find(i)].append(i)
        return tuple(tuple(g) for g in sorted(groups.values()))

    @cached_property
    def genus_defect(self) -> int:
        """``2 * #pieces - (V - E + F)``; zero iff every piece is planar."""
        comps = self.diagram_components
        if not comps:
            return 0
        piece = {}
        for k, g in enumerate(comps):
            for i in g:
                piece[i] = k
        chi = defaultdict(int)
        for k, g in enumerate(comps):
            chi[k] += len(g) - 2 * len(g)   # V - E
        for cyc in self.regions:
            chi[piece[cyc[0] // 4]] += 1
        return sum(2 - v for v in chi.values())

    # -- orientation -----------------------------------------------------
    @cached_property
    def orientation(self) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
        """Per component: the ordered tail slots; plus per-crossing over entry (1 or 3).

        A segment runs from a tail slot (where it leaves a crossing) to a head
        slot (where it enters one).  The under-strand enters at 0 and leaves at 2.
        """
        n = 4 * self.n_crossings
        comp_of = [-1] * n
        comps = []
        for start in range(n):
            if comp_of[start] != -1:
                continue
            # undirected cycle: slot -alpha-> slot -through-> slot ...
            cyc = []
            s = start
            while True:
                cyc.append(s)
                comp_of[s] = len(comps)
                h = self.alpha[s]
                cyc.append(h)
                comp_of[h] = len(comps)
                s = self.rot(h, 2)
                if s == start:
                    break
            # cyc alternates tail, head, tail, head... in the chosen direction
            tails = cyc[0::2]
            heads = cyc[1::2]
            bad_fwd = any(h % 4 == 2 for h in heads) or any(t % 4 == 0 for t in tails)
            if bad_fwd:
                s = self.alpha[start]
                cyc = []
                first = s
                while True:
                    cyc.append(s)
                    h = self.alpha[s]
                    cyc.append(h)
                    s = self.rot(h, 2)
                    if s == first:
                        break
                tails, heads = cyc[0::2], cyc[1::2]
                if any(h % 4 == 2 for h in heads) or any(t % 4 == 0 for t in tails):
                    raise InconsistentOrientation("a component passes under in both directions")
            comps.append(tuple(tails))
        over_in = [0] * self.n_crossings
        for tails in comps:
            for t in tails:
                h = self.alpha[t]
                if h % 4 in (1, 3):
                    over_in[h // 4] = h % 4
        return tuple(comps), tuple(over_in)

    @property
    def component_tails(self) -> tuple[tuple[int, ...], ...]:
        return self.orientation[0]

    @property
    def over_in(self) -> tuple[int, ...]:
        return self.orientation[1]

    @property
    def n_components(self) -> int:
        return len(self.component_tails) + len(self.loops)

    @cached_property
    def component_of_slot(self) -> dict[int, int]:
        out = {}
        for k, tails in enumerate(self.component_tails):
            for t in tails:
                out[t] = k
                out[self.alpha[t]] = k
        return out

    @cached_property
    def signs(self) -> tuple[int, ...]:
        # over entering at d (3) and leaving at b (1) is a positive crossing
        return tuple(1 if o == 3 else -1 for o in self.over_in)

    def crossing_components(self) -> list[tuple[int, int]]:
        """Per crossing: (under component, over component)."""
        return [(self.component_of_slot[4 * i], self.component_of_slot[4 * i + 1])
                for i in range(self.n_crossings)]

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    # -- derived diagrams ------------------------------------------------
    def relabeled(self) -> "LinkDiagram":
        """Segments renumbered ``1..2N`` along oriented components; loops after."""
        new = {}
        k = 1
        for tails in self.component_tails:
            for t in tails:
                new[self.seg(t)] = k
                k += 1
        xs = tuple(tuple(new[s] for s in x) for x in self.crossings)
        loops = tuple(range(k, k + len(self.loops)))
        return LinkDiagram(xs, loops)

    def mirror(self) -> "LinkDiagram":
        """Switch every crossing."""
        out = []
        for x, o in zip(self.crossings, self.over_in):
            out.append(x[o:] + x[:o])
        return LinkDiagram(tuple(out), self.loops)

    def pieces(self) -> list["LinkDiagram"]:
        """Split into connected sub-diagrams (loops become one-loop pieces)."""
        out = []
        for g in self.diagram_components:
            out.append(LinkDiagram(tuple(self.crossings[i] for i in g)))
        for s in self.loops:
            out.append(LinkDiagram((), (s,)))
        return out

    def __repr__(self):
        return f"LinkDiagram(crossings={self.n_crossings}, components={self.n_components})"


def disjoint_union(diagrams: Sequence[LinkDiagram]) -> LinkDiagram:
    xs, loops = [], []
    offset = 0
    for d in diagrams:
        labels = list(d.segments) + list(d.loops)
        top = max(labels) if labels else 0
        xs.extend(tuple(s + offset for s in x) for x in d.crossings)
        loops.extend(s + offset for s in d.loops)
        offset += top + 1
    return LinkDiagram(tuple(xs), tuple(loops))
