from hypothesis import given, settings, strategies as st

from butterflies.codecs import emit_btf
from butterflies.convert import butterfly_to_link
from butterflies.core import butterfly_isomorphic, make_rational_butterfly
from butterflies.gen import GenConfig, Recipe, build, random_butterfly, shrink
from butterflies.verify import fingerprint, validate_butterfly


def link_fp(b):
    return fingerprint(butterfly_to_link(b).link)


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6))
def test_same_seed_same_instance(seed):
    a = random_butterfly(GenConfig(seed=seed))
    b = random_butterfly(GenConfig(seed=seed))
    assert a.recipe == b.recipe
    assert emit_btf(a.butterfly) == emit_btf(b.butterfly)


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_generated_are_valid(seed):
    cfg = GenConfig(seed=seed, max_m=6)
    g = random_butterfly(cfg)
    assert validate_butterfly(g.butterfly).valid
    assert g.butterfly.m <= max(cfg.max_m, 12)
    assert butterfly_to_link(g.butterfly).link.n_crossings <= 16


def test_rational_source():
    cfg = GenConfig(seed=0, mix=(("rational", 1.0),))
    for seed in range(20):
        g = random_butterfly(GenConfig(seed=seed, mix=cfg.mix))
        kind, p, q = g.recipe.base
        assert kind == "rational" and 2 <= p <= cfg.max_p and not g.recipe.steps
        assert butterfly_isomorphic(g.butterfly, make_rational_butterfly(p, q), allow_reversal=False)


def test_expansion_walk_from_trefoil():
    base = make_rational_butterfly(3, 1)
    # 3/1 has two E-vertices and expanding both leaves none: the walk stops
    g = build(Recipe(("rational", 3, 1), (0, 0, 0)))
    assert [r.m_after for r in g.trace] == [3, 4]
    assert not g.butterfly.classes.of_kind("E")
    assert link_fp(g.butterfly) == link_fp(base)


def test_expansion_walk_of_length_three():
    base = make_rational_butterfly(5, 2)
    g = build(Recipe(("rational", 5, 2), (0, 1, 2)))
    assert [r.m_after for r in g.trace] == [3, 4, 5]
    assert g.butterfly.m == 5
    assert validate_butterfly(g.butterfly).valid
    assert link_fp(g.butterfly) == link_fp(base)


def test_shrink_drops_irrelevant_steps():
    recipe = Recipe(("rational", 7, 3), (0, 1, 0, 2))

    def fails(b):       # "bug" triggered by any butterfly with at least 3 trunks
        return b.m >= 3

    small = shrink(recipe, fails)
    assert len(small.steps) == 1
    assert small.base == ("rational", 3, 1)
    assert fails(build(small).butterfly)


def test_shrink_keeps_non_failing_recipe():
    recipe = Recipe(("rational", 5, 2), (0,))
    assert shrink(recipe, lambda b: False) == recipe
