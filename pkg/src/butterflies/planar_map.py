"""Dart-based combinatorial maps on the 2-sphere.

A map is a pair of permutations on the dart set ``0..n-1``:

* ``alpha`` -- fixed-point-free involution exchanging the two darts of an edge;
* ``sigma`` -- next dart counterclockwise around the dart's tail vertex, as seen
  from outside the ball.

The face permutation is ``phi(d) = sigma[alpha[d]]``; its orbits are the face
walks, each keeping its face on the left.  Walk position ``i`` of a face is the
*corner* at the tail vertex of the ``i``-th dart.

Maps are immutable.  Rewrites build new face lists and return a fresh map plus a
``relabel`` dict sending surviving old darts to their new indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    CornersNotOnFace,
    Disconnects,
    LoopAtVertex,
    NotBivalent,
    NotConnected,
    NotInvolution,
    NotSphere,
    ProtectedVertex,
    SameSideEdge,
)

__all__ = [
    "FaceWalk",
    "PlanarMap",
    "build_map",
    "map_from_faces",
    "faces",
    "smooth_bivalent",
    "delete_edge",
    "add_edge_in_face",
]


def _orbits(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        out.append(tuple(cyc))
    return out


@dataclass(frozen=True)
class FaceWalk:
    """One face: its id and the cyclic dart sequence (a ``phi``-orbit)."""

    id: int
    darts: tuple[int, ...]

    def __len__(self):
        return len(self.darts)

    def index(self, dart: int) -> int:
        return self.darts.index(dart)


@dataclass(frozen=True, eq=False)
class PlanarMap:
    alpha: tuple[int, ...]
    sigma: tuple[int, ...]

    def __post_init__(self):
        n = len(self.alpha)
        if n == 0 or n % 2 or len(self.sigma) != n:
            raise NotInvolution("dart set must be non-empty, of even size, shared by alpha and sigma")
        if sorted(self.sigma) != list(range(n)):
            raise NotInvolution("sigma is not a permutation")
        for d, e in enumerate(self.alpha):
            if not 0 <= e < n or e == d or self.alpha[e] != d:
                raise NotInvolution(f"alpha is not a fixed-point-free involution at dart {d}")
        if not self._transitive():
            raise NotConnected("alpha and sigma do not act transitively")
        if self.euler_characteristic != 2:
            raise NotSphere(f"V - E + F = {self.euler_characteristic}, expected 2")

    def _transitive(self) -> bool:
        n = len(self.alpha)
        seen = {0}
        stack = [0]
        while stack:
            d = stack.pop()
            for e in (self.alpha[d], self.sigma[d]):
                if e not in seen:
                    seen.add(e)
                    stack.append(e)
        return len(seen) == n

    # -- orbit data ------------------------------------------------------
    @property
    def n_darts(self) -> int:
        return len(self.alpha)

    @property
    def n_edges(self) -> int:
        return len(self.alpha) // 2

    def phi(self, d: int) -> int:
        return self.sigma[self.alpha[d]]

    @cached_property
    def vertices(self) -> tuple[tuple[int, ...], ...]:
        return tuple(_orbits(self.sigma))

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        out = [0] * self.n_darts
        for v, orb in enumerate(self.vertices):
            for d in orb:
                out[d] = v
        return tuple(out)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((d, self.alpha[d]) for d in range(self.n_darts) if d < self.alpha[d])

    @cached_property
    def edge_of(self) -> tuple[int, ...]:
        out = [0] * self.n_darts
        for k, (a, b) in enumerate(self.edges):
            out[a] = out[b] = k
        return tuple(out)

    @cached_property
    def faces(self) -> tuple[FaceWalk, ...]:
        phi = [self.sigma[self.alpha[d]] for d in range(self.n_darts)]
        return tuple(FaceWalk(i, orb) for i, orb in enumerate(_orbits(phi)))

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        out = [0] * self.n_darts
        for f in self.faces:
            for d in f.darts:
                out[d] = f.id
        return tuple(out)

    @cached_property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - self.n_edges + len(self.faces)

    def degree(self, v: int) -> int:
        return len(self.vertices[v])

    def tail(self, d: int) -> int:
        return self.vertex_of[d]

    def head(self, d: int) -> int:
        return self.vertex_of[self.alpha[d]]

    def corner_vertices(self, face: int) -> list[int]:
        return [self.vertex_of[d] for d in self.faces[face].darts]

    def census(self) -> tuple[int, int, int]:
        return len(self.vertices), self.n_edges, len(self.faces)

    def __repr__(self):
        v, e, f = self.census()
        return f"PlanarMap(V={v}, E={e}, F={f})"


def _as_perm(spec, n=None, involution=False) -> list[int]:
    """Accept an array, a list of cycles, or (for involutions) a list of pairs."""
    spec = list(spec)
    if spec and isinstance(spec[0], (tuple, list)):
        size = n if n is not None else 1 + max(x for cyc in spec for x in cyc)
        perm = list(range(size))
        for cyc in spec:
            for i, x in enumerate(cyc):
                perm[x] = cyc[(i + 1) % len(cyc)]
        return perm
    return [int(x) for x in spec]


def build_map(alpha, sigma) -> PlanarMap:
    """Validated map from ``alpha`` (array or pair list) and ``sigma`` (array or cycles)."""
    a = _as_perm(alpha, involution=True)
    s = _as_perm(sigma, n=len(a))
    return PlanarMap(tuple(a), tuple(s))


def faces(m: PlanarMap) -> list[FaceWalk]:
    return list(m.faces)


def map_from_faces(walks: Iterable[Sequence[int]], alpha: Sequence[int] | None = None) -> PlanarMap:
    """Rebuild a map from its face walks.

    ``alpha`` defaults to ``d ^ 1``.  Since ``phi = sigma o alpha`` we have
    ``sigma(x) = phi(alpha(x))``.
    """
    walks = [list(w) for w in walks]
    n = sum(len(w) for w in walks)
    phi = [-1] * n
    for w in walks:
        for i, d in enumerate(w):
            if not 0 <= d < n or phi[d] != -1:
                raise NotInvolution(f"dart {d} repeated or out of range in face walks")
            phi[d] = w[(i + 1) % len(w)]
    a = list(alpha) if alpha is not None else [d ^ 1 for d in range(n)]
    if len(a) != n:
        raise NotInvolution("alpha size does not match face walks")
    for d in range(n):
        if not 0 <= a[d] < n or a[a[d]] != d or a[d] == d:
            raise NotInvolution(f"alpha is not a fixed-point-free involution at dart {d}")
    sigma = [phi[a[d]] for d in range(n)]
    return PlanarMap(tuple(a), tuple(sigma))


def compact(walks: list[list[int]], alpha: dict[int, int]) -> tuple[PlanarMap, dict[int, int]]:
    """Relabel surviving darts densely (order preserved) and rebuild."""
    survivors = sorted(d for w in walks for d in w)
    relabel = {d: i for i, d in enumerate(survivors)}
    new_walks = [[relabel[d] for d in w] for w in walks if w]
    new_alpha = [0] * len(survivors)
    for d in survivors:
        new_alpha[relabel[d]] = relabel[alpha[d]]
    return map_from_faces(new_walks, new_alpha), relabel


def _walk_lists(m: PlanarMap) -> list[list[int]]:
    return [list(f.darts) for f in m.faces]


def smooth_bivalent(m: PlanarMap, v: int, protected: Iterable[int] = ()) -> tuple[PlanarMap, dict[int, int]]:
    """Erase bivalent vertex ``v``, merging its two edges into one.

    ``protected`` lists vertex indices (A- and E-vertices) that must not be
    smoothed.
    """
    if v in set(protected):
        raise ProtectedVertex(f"vertex {v} is protected")
    darts = m.vertices[v]
    if len(darts) != 2:
        raise NotBivalent(f"vertex {v} has degree {len(darts)}")
    x, y = darts
    if m.alpha[x] == y:
        raise LoopAtVertex(f"vertex {v} carries a loop")
    p, q = m.alpha[x], m.alpha[y]
    # p: u->v is followed by y on its face; q: w->v is followed by x.
    drop = {x, y}
    walks = [[d for d in w if d not in drop] for w in _walk_lists(m)]
    alpha = {d: m.alpha[d] for d in range(m.n_darts) if d not in drop}
    alpha[p], alpha[q] = q, p
    return compact(walks, alpha)


def delete_edge(m: PlanarMap, e: int) -> tuple[PlanarMap, dict[int, int]]:
    """Delete edge ``e`` (edge index), merging its two incident faces."""
    x, y = m.edges[e]
    fx, fy = m.face_of[x], m.face_of[y]
    if fx == fy:
        raise SameSideEdge(f"edge {e} has face {fx} on both sides")
    walks = _walk_lists(m)
    wx, wy = walks[fx], walks[fy]
    ix, iy = wx.index(x), wy.index(y)
    merged = wx[ix + 1:] + wx[:ix] + wy[iy + 1:] + wy[:iy]
    if not merged:
        raise Disconnects(f"deleting edge {e} leaves no darts")
    rest = [w for i, w in enumerate(walks) if i not in (fx, fy)]
    alpha = {d: m.alpha[d] for d in range(m.n_darts) if d not in (x, y)}
    return compact(rest + [merged], alpha)


def add_edge_in_face(m: PlanarMap, face: int, corner1: int, corner2: int) -> tuple[PlanarMap, dict[int, int]]:
    """Insert a chord of ``face`` between two of its walk positions.

    New darts ``n`` (from corner1's vertex) and ``n+1`` (from corner2's vertex).
    """
    walk = list(m.faces[face].darts)
    L = len(walk)
    if not (0 <= corner1 < L and 0 <= corner2 < L) or corner1 == corner2:
        raise CornersNotOnFace(f"corners {corner1}, {corner2} not distinct positions on face {face}")
    n = m.n_darts
    x, y = n, n + 1
    i, j = corner1, corner2
    part_a = [walk[(i + k) % L] for k in range((j - i) % L)] + [y]
    part_b = [walk[(j + k) % L] for k in range((i - j) % L)] + [x]
    walks = [w for k, w in enumerate(_walk_lists(m)) if k != face] + [part_a, part_b]
    alpha = {d: m.alpha[d] for d in range(n)}
    alpha[x], alpha[y] = y, x
    return compact(walks, alpha)
