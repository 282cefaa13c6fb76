"""Seeded random butterflies for property tests.

An instance is a *recipe*: a base butterfly (rational, or the butterfly of a
bundled bridge diagram) followed by a walk of trunk expansions.  Rebuilding a
recipe is deterministic, and shrinking simply drops expansion steps or moves
to a simpler base.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable

from .codecs import parse_pd
from .convert import link_to_butterfly, preprocess_diagram
from .core import ButterflyDiagram, make_rational_butterfly
from .corpus import corpus_path, list_corpus
from .moves import trunk_expand

__all__ = ["GenConfig", "Recipe", "Generated", "random_butterfly", "build", "shrink"]


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_m: int = 8
    max_expansions: int = 4
    max_p: int = 7
    max_crossings: int = 14
    # relative weights of the three sources
    mix: tuple[tuple[str, float], ...] = (("rational", 1.0), ("corpus", 1.0), ("expansion", 2.0))


@dataclass(frozen=True)
class Recipe:
    base: tuple                      # ("rational", p, q) | ("corpus", name)
    steps: tuple[int, ...] = ()      # index into the E-vertex list at each expansion


@dataclass(frozen=True)
class Generated:
    butterfly: ButterflyDiagram
    recipe: Recipe
    trace: tuple = field(default=(), compare=False)    # MoveRecords of the expansions


@lru_cache(maxsize=None)
def _corpus_butterfly(name: str) -> ButterflyDiagram:
    d = preprocess_diagram(parse_pd(corpus_path(name).read_text()))
    b = link_to_butterfly(d)
    return ButterflyDiagram(b.map, b.trunks, name)


def _small_corpus(limit: int) -> list[str]:
    out = []
    for name in list_corpus(".pd"):
        b = _corpus_butterfly(name)
        if len(b.gamma.chords) <= limit:
            out.append(name)
    return out


def _base(base: tuple) -> ButterflyDiagram:
    if base[0] == "rational":
        return make_rational_butterfly(base[1], base[2])
    return _corpus_butterfly(base[1])


def build(recipe: Recipe) -> Generated:
    b = _base(recipe.base)
    trace = []
    for k in recipe.steps:
        es = b.classes.of_kind("E")
        if not es:
            break
        b, rec = trunk_expand(b, es[k % len(es)])
        trace.append(rec)
    return Generated(b, recipe, tuple(trace))


def _random_rational(rng: random.Random, cfg: GenConfig) -> tuple:
    top = max(2, min(cfg.max_p, cfg.max_crossings // 2 + 1))
    p = rng.randint(2, top)
    q = rng.choice([q for q in range(1, p) if math.gcd(p, q) == 1])
    return ("rational", p, q)


def random_butterfly(cfg: GenConfig) -> Generated:
    rng = random.Random(cfg.seed)
    names, weights = zip(*cfg.mix)
    source = rng.choices(names, weights=weights)[0]
    corpus = _small_corpus(cfg.max_crossings)
    if source == "rational" or not corpus:
        base = _random_rational(rng, cfg)
    elif source == "corpus":
        base = ("corpus", rng.choice(corpus))
    else:
        base = _random_rational(rng, cfg) if rng.random() < 0.5 else ("corpus", rng.choice(corpus))
    steps = []
    if source == "expansion":
        b = _base(base)
        for _ in range(rng.randint(1, cfg.max_expansions)):
            n_e = len(b.classes.of_kind("E"))
            if not n_e or b.m >= cfg.max_m:
                break
            k = rng.randrange(n_e)
            steps.append(k)
            b, _ = trunk_expand(b, b.classes.of_kind("E")[k])
    return build(Recipe(base, tuple(steps)))


def _simpler_bases(base: tuple):
    if base[0] == "rational":
        _, p, q = base
        for pp in range(2, p + 1):
            for qq in range(1, pp):
                if math.gcd(pp, qq) == 1 and (pp, qq) < (p, q):
                    yield ("rational", pp, qq)


def shrink(recipe: Recipe, fails: Callable[[ButterflyDiagram], bool]) -> Recipe:
    """Greedy shrink: drop expansion steps, then try simpler rational bases."""
    best = recipe
    improved = True
    while improved:
        improved = False
        for i in range(len(best.steps)):
            cand = replace(best, steps=best.steps[:i] + best.steps[i + 1:])
            if fails(build(cand).butterfly):
                best, improved = cand, True
                break
        if improved:
            continue
        for base in _simpler_bases(best.base):
            cand = replace(best, base=base)
            try:
                ok = fails(build(cand).butterfly)
            except Exception:  # noqa: BLE001 - a different failure is not a shrink
                ok = False
            if ok:
                best, improved = cand, True
                break
    return best
