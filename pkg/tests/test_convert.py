import pytest
from hypothesis import given, settings, strategies as st

from butterflies.codecs import parse_pd
from butterflies.convert import (
    bridge_decompose, butterfly_to_link, link_to_butterfly, preprocess_diagram,
)
from butterflies.core import classify_vertices, make_rational_butterfly
from butterflies.corpus import list_corpus
from butterflies.diagram import LinkDiagram
from butterflies.errors import ComponentWithoutBridge, Disconnected, HasClosedCurve
from butterflies.gen import GenConfig, random_butterfly
from butterflies.verify import fingerprint, fingerprints_equal, validate_butterfly
from oracles import HOPF_PD, TREFOIL_PD


def test_rational_3_1_is_a_trefoil():
    bd = butterfly_to_link(make_rational_butterfly(3, 1))
    assert bd.census["crossings"] == 4 and bd.census["components"] == 1
    assert bd.n_bridges == 2
    assert fingerprints_equal(fingerprint(bd.link), fingerprint(parse_pd(TREFOIL_PD)), allow_mirror=True)


def test_unknot_path_is_a_kink(btf):
    bd = butterfly_to_link(btf("unknot-path.btf"))
    assert bd.link.n_crossings == 1 and bd.link.n_components == 1
    assert fingerprint(bd.link) == fingerprint(LinkDiagram((), (1,)))


def test_arc_census_plat(pd):
    bd = bridge_decompose(pd("trefoil-plat.pd"))
    assert (len(bd.arcs), bd.n_bridges, len(bd.simple_arcs)) == (4, 2, 2)


def test_arc_census_standard_trefoil(pd):
    bd = bridge_decompose(pd("trefoil.pd"))
    assert (len(bd.arcs), bd.n_bridges, len(bd.simple_arcs)) == (3, 3, 0)
    assert all(len(a.over) == 1 for a in bd.arcs)


def test_decompose_errors():
    with pytest.raises(HasClosedCurve):
        bridge_decompose(LinkDiagram((), (1,)))
    with pytest.raises(HasClosedCurve):
        bridge_decompose(parse_pd(TREFOIL_PD + ", Loop[99]"))
    two = parse_pd(TREFOIL_PD)
    shifted = parse_pd(", ".join(
        f"X[{a + 10},{b + 10},{c + 10},{d + 10}]" for a, b, c, d in two.crossings))
    with pytest.raises(Disconnected):
        bridge_decompose(LinkDiagram(two.crossings + shifted.crossings))
    # two circles, one lying entirely on top of the other
    with pytest.raises(ComponentWithoutBridge):
        bridge_decompose(parse_pd("X[1,2,3,4], X[3,2,1,4]"))


def test_preprocess_examples():
    kinked = preprocess_diagram(LinkDiagram((), (1,)))
    assert kinked.n_crossings == 1 and not kinked.loops
    bridge_decompose(kinked)

    split = parse_pd(TREFOIL_PD + ", Loop[99]")
    joined = preprocess_diagram(split)
    assert not joined.loops and len(joined.diagram_components) == 1
    assert joined.n_components == 2
    assert fingerprint(joined) == fingerprint(split)
    bridge_decompose(joined)

    tref = parse_pd(TREFOIL_PD)
    assert preprocess_diagram(tref).crossings == tref.crossings


def test_preprocess_gives_every_component_a_bridge():
    for text in ("X[1,2,3,4], X[3,2,1,4]", HOPF_PD):
        d = parse_pd(text)
        fixed = preprocess_diagram(d)
        assert fingerprint(fixed) == fingerprint(d)
        bridge_decompose(fixed)


def test_link_to_butterfly_trefoil_plat(pd):
    b = link_to_butterfly(pd("trefoil-plat.pd"))
    assert b.m == 4
    assert (len(b.map.vertices), b.map.n_edges, len(b.map.faces)) == (14, 16, 4)
    assert classify_vertices(b).census() == {"A": 8, "E": 0, "B": 6, "plain": 0}


def test_link_to_butterfly_borromean(pd):
    b = link_to_butterfly(pd("borromean-12arc.pd"))
    assert b.m == 12 and not b.classes.of_kind("E")
    assert validate_butterfly(b).valid


def test_link_to_butterfly_kink(pd):
    b = link_to_butterfly(pd("unknot-kink.pd"))
    assert b.m == 1
    assert classify_vertices(b).census() == {"A": 2, "E": 0, "B": 3, "plain": 0}


@pytest.mark.parametrize("name", list_corpus(".pd"))
def test_corpus_roundtrip(name, pd):
    d = preprocess_diagram(pd(name))
    bd = bridge_decompose(d)
    b = link_to_butterfly(bd)
    assert validate_butterfly(b).valid
    assert not b.classes.of_kind("E")
    assert b.m == len(bd.arcs)
    back = butterfly_to_link(b)
    assert fingerprint(back.link) == fingerprint(d)
    assert back.link.n_crossings == len(b.gamma.chords)


@pytest.mark.parametrize("name", list_corpus(".btf"))
def test_corpus_butterflies(name, btf):
    b = btf(name)
    bd = butterfly_to_link(b)
    assert bd.link.n_crossings == len(b.gamma.chords)
    assert bridge_decompose(preprocess_diagram(bd.link)).n_bridges <= b.m or bd.bridge_degenerate


@settings(max_examples=25)
@given(st.integers(0, 10_000))
def test_bridges_at_most_m(seed):
    b = random_butterfly(GenConfig(seed=seed, max_m=6, max_expansions=3)).butterfly
    bd = butterfly_to_link(b)
    assert bd.link.n_crossings == len(b.gamma.chords)
    if not bd.bridge_degenerate:
        assert bridge_decompose(bd.link).n_bridges <= b.m


@settings(max_examples=25)
@given(st.integers(0, 10_000))
def test_chord_slots_increase_along_trunks(seed):
    b = random_butterfly(GenConfig(seed=seed, max_m=6, max_expansions=3)).butterfly
    bd = butterfly_to_link(b)
    by_trunk = {}
    for trunk, _chord, slot in bd.crossing_origin:
        by_trunk.setdefault(trunk, []).append(slot)
    for slots in by_trunk.values():
        assert len(set(slots)) == len(slots)
    # the trunk passes over its crossings in slot order
    for arc in bd.overarcs:
        trunks = {bd.crossing_origin[x][0] for x, _ in arc.over}
        for t in trunks:
            seq = [bd.crossing_origin[x][2] for x, _ in arc.over if bd.crossing_origin[x][0] == t]
            assert seq == sorted(seq) or seq == sorted(seq, reverse=True)
