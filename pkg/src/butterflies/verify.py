"""Independent certificates for butterflies and their links.

* ``quotient_cell_counts`` -- cell census of the identification space; a valid
  butterfly has Euler characteristic zero, i.e. ``V* = E* + 1``.
* ``check_gamma_claims`` -- the chord graph is a disjoint union of paths with
  A-vertex ends, each path being a full ≃-class.
* ``kauffman_bracket`` / ``fingerprint`` -- a link-type oracle that knows
  nothing about butterflies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels
from .core import ButterflyDiagram, Trunk, UnionFind, classify_vertices, gamma_graph
from .diagram import LinkDiagram
from .errors import ButterflyError, GammaNotPaths, NonBivalentAE, TooManyCrossings, UnclassifiableVertex
from .planar_map import PlanarMap

__all__ = [
    "Laurent",
    "QuotientComplex",
    "GammaReport",
    "ValidationReport",
    "validate_butterfly",
    "Fingerprint",
    "quotient_cell_counts",
    "check_gamma_claims",
    "kauffman_bracket",
    "fingerprint",
    "fingerprints_equal",
    "MAX_CROSSINGS",
]

MAX_CROSSINGS = 16


@dataclass(frozen=True)
class Laurent:
    """Integer Laurent polynomial in ``A``: ``sum coeffs[i] * A**(low + i)``."""

    low: int
    coeffs: tuple[int, ...]

    @classmethod
    def from_dict(cls, terms: dict[int, int]) -> "Laurent":
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls(0, ())
        lo, hi = min(terms), max(terms)
        return cls(lo, tuple(terms.get(e, 0) for e in range(lo, hi + 1)))

    def terms(self) -> dict[int, int]:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c}

    def __mul__(self, other: "Laurent") -> "Laurent":
        if not self.coeffs or not other.coeffs:
            return Laurent(0, ())
        prod = np.convolve(np.array(self.coeffs, dtype=object), np.array(other.coeffs, dtype=object))
        return Laurent.from_dict({self.low + other.low + i: int(c) for i, c in enumerate(prod)})

    def __add__(self, other: "Laurent") -> "Laurent":
        t = self.terms()
        for e, c in other.terms().items():
            t[e] = t.get(e, 0) + c
        return Laurent.from_dict(t)

    def __pow__(self, k: int) -> "Laurent":
        out = Laurent(0, (1,))
        for _ in range(k):
            out = out * self
        return out

    def invert_variable(self) -> "Laurent":
        return Laurent.from_dict({-e: c for e, c in self.terms().items()})

    @classmethod
    def monomial(cls, exp: int, coef: int = 1) -> "Laurent":
        return cls(exp, (coef,))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.terms().items(), reverse=True):
            parts.append(f"{c:+d}A^{e}")
        return " ".join(parts)


DELTA = Laurent(-2, (-1, 0, 0, 0, -1))   # -A^2 - A^-2


@dataclass(frozen=True)
class QuotientComplex:
    v_classes: int
    e_classes: int
    m: int

    @property
    def cells(self) -> tuple[int, int, int, int]:
        return (self.v_classes, self.e_classes + self.m, self.m, 1)

    @property
    def euler(self) -> int:
        v, e, f, c = self.cells
        return v - e + f - c

    @property
    def ok(self) -> bool:
        return self.euler == 0


def quotient_cell_counts(b: ButterflyDiagram) -> QuotientComplex:
    m = b.map
    uf_v = UnionFind(len(m.vertices))
    uf_e = UnionFind(m.n_edges)
    for rp in b.pairings:
        walk = m.faces[rp.face].darts
        for p in range(rp.length):
            uf_v.union(m.vertex_of[walk[p]], m.vertex_of[walk[rp.corner(p)]])
            uf_e.union(m.edge_of[walk[p]], m.edge_of[walk[rp.side(p)]])
    return QuotientComplex(len(uf_v.groups()), len(uf_e.groups()), b.m)


@dataclass(frozen=True)
class GammaReport:
    n_paths: int
    n_a: int
    n_e: int
    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems


def check_gamma_claims(b: ButterflyDiagram) -> GammaReport:
    cls = classify_vertices(b)
    g = gamma_graph(b, strict=False)
    problems = list(g.problems)
    n_a = len(cls.of_kind("A"))
    if not problems and len(g.paths) != b.m:
        problems.append(f"{len(g.paths)} Γ-paths for m = {b.m}")
    if n_a != 2 * b.m:
        problems.append(f"{n_a} A-vertices for m = {b.m}")
    return GammaReport(len(g.paths), n_a, len(cls.of_kind("E")), tuple(problems))


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    m: int = 0
    census: tuple[int, int, int] = (0, 0, 0)           # V, E, F of R
    kinds: dict = field(default_factory=dict)          # A/E/B/plain counts
    quotient: QuotientComplex | None = None
    gamma: GammaReport | None = None
    problems: tuple[tuple[str, str], ...] = ()         # (error code, message)

    def to_json(self) -> dict:
        out = {"valid": self.valid, "m": self.m, "V": self.census[0], "E": self.census[1],
               "F": self.census[2], "kinds": dict(self.kinds),
               "problems": [{"code": c, "message": msg} for c, msg in self.problems]}
        if self.quotient is not None:
            out["quotient"] = {"V*": self.quotient.v_classes, "E*": self.quotient.e_classes,
                               "chi": self.quotient.euler}
        if self.gamma is not None:
            out["gamma_paths"] = self.gamma.n_paths
        return out


def validate_butterfly(b: ButterflyDiagram | tuple[PlanarMap, tuple[Trunk, ...]]) -> ValidationReport:
    """Run every structural check and certificate; never raises on bad input."""
    if not isinstance(b, ButterflyDiagram):
        try:
            b = ButterflyDiagram(b[0], tuple(b[1]))
        except ButterflyError as exc:
            return ValidationReport(False, problems=((exc.code, str(exc)),))
    problems = []
    cls = classify_vertices(b)
    for msg in cls.problems:
        if msg.startswith("NonBivalentAE"):
            problems.append((NonBivalentAE.code, msg))
        elif msg.startswith("UnclassifiableVertex"):
            problems.append((UnclassifiableVertex.code, msg))
        else:
            problems.append((GammaNotPaths.code, msg))
    gam = check_gamma_claims(b)
    for msg in gam.problems:
        if (GammaNotPaths.code, msg) not in problems:
            problems.append((GammaNotPaths.code, msg))
    q = quotient_cell_counts(b)
    if not q.ok:
        problems.append(("quotient-euler", f"V* - E* - 1 = {q.euler}, expected 0"))
    return ValidationReport(not problems, b.m, b.map.census(), cls.census(), q, gam, tuple(problems))


# -- bracket oracle ----------------------------------------------------------

def _dense_segments(d: LinkDiagram) -> np.ndarray:
    index = {s: i for i, s in enumerate(d.segments)}
    return np.array([[index[s] for s in x] for x in d.crossings], dtype=np.int64).reshape(-1, 4)


@lru_cache(maxsize=4096)
def _bracket_cached(crossings: tuple, n_loops: int, backend: str) -> Laurent:
    d = LinkDiagram(crossings)
    N = d.n_crossings
    if N == 0:
        return DELTA ** (n_loops - 1) if n_loops else Laurent(0, (1,))
    hist = _kernels.state_histogram(_dense_segments(d), len(d.segments), backend)
    total = Laurent(0, ())
    for nb in range(hist.shape[0]):
        for loops in range(hist.shape[1]):
            cnt = int(hist[nb, loops])
            if cnt:
                term = Laurent.monomial(N - 2 * nb, cnt) * DELTA ** (loops - 1 + n_loops)
                total = total + term
    return total


def kauffman_bracket(d: LinkDiagram, backend: str | None = None) -> Laurent:
    """Unnormalized bracket with ``<O> = 1``; loop factor ``-A^2 - A^-2``."""
    if d.n_crossings > MAX_CROSSINGS:
        raise TooManyCrossings(f"{d.n_crossings} crossings exceeds the state-sum bound {MAX_CROSSINGS}")
    return _bracket_cached(d.crossings, len(d.loops), backend or _kernels.BACKEND)


@dataclass(frozen=True)
class Fingerprint:
    n_components: int
    polys: tuple[Laurent, ...]      # sorted multiset over orientation choices

    def key(self):
        return (self.n_components, tuple((p.low, p.coeffs) for p in self.polys))

    def mirrored(self) -> "Fingerprint":
        return Fingerprint(self.n_components,
                           tuple(sorted((p.invert_variable() for p in self.polys), key=_pkey)))

    def to_json(self) -> dict:
        return {"components": self.n_components,
                "polynomials": [{"low": p.low, "coeffs": list(p.coeffs)} for p in self.polys]}

    @classmethod
    def from_json(cls, obj) -> "Fingerprint":
        return cls(obj["components"], tuple(Laurent(p["low"], tuple(p["coeffs"])) for p in obj["polynomials"]))

    def __eq__(self, other):
        return isinstance(other, Fingerprint) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def _pkey(p: Laurent):
    return (p.low, p.coeffs)


def fingerprint(d: LinkDiagram, backend: str | None = None) -> Fingerprint:
    """Writhe-normalized bracket over every choice of component orientations."""
    br = kauffman_bracket(d, backend)
    n_c = len(d.component_tails)
    cc = d.crossing_components()
    signs = d.signs
    polys = []
    for flips in itertools.product((0, 1), repeat=n_c):
        w = 0
        for (u, o), s in zip(cc, signs):
            w += s if flips[u] == flips[o] else -s
        # free loops are orientation-blind; their choices only duplicate entries
        norm = Laurent.monomial(-3 * w, -1 if w % 2 else 1)
        polys.append(br * norm)
    polys *= 2 ** len(d.loops)
    return Fingerprint(d.n_components, tuple(sorted(polys, key=_pkey)))


def fingerprints_equal(f1: Fingerprint, f2: Fingerprint, allow_mirror: bool = False) -> bool:
    if f1 == f2:
        return True
    return allow_mirror and f1.mirrored() == f2
