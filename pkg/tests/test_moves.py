import io

import pytest
from hypothesis import given, settings, strategies as st

from butterflies.convert import butterfly_to_link, link_to_butterfly
from butterflies.core import (
    butterfly_isomorphic, make_rational_butterfly, smooth_plain_vertices,
)
from butterflies.errors import NotEVertex, NotSimple
from butterflies.gen import GenConfig, random_butterfly
from butterflies.moves import (
    MoveRecord, admissible_endpoints, eliminate_e_vertices, is_simple_trunk, read_trace,
    reduce_to_bridges, trunk_expand, trunk_reduce, write_trace,
)
from butterflies.verify import fingerprint, validate_butterfly


def link_fp(b):
    return fingerprint(butterfly_to_link(b).link)


def simple_trunks(b):
    return [t.label for i, t in enumerate(b.trunks) if is_simple_trunk(b, i)]


def test_trefoil_plat_two_reductions(pd):
    b = link_to_butterfly(pd("trefoil-plat.pd"))
    simple = simple_trunks(b)
    assert len(simple) == 2
    out = b
    for label in simple:
        out, rec = trunk_reduce(out, label)
        assert rec.kind == "reduce" and rec.m_after == rec.m_before - 1
        assert link_fp(out) == link_fp(b)
    out = smooth_plain_vertices(out)
    assert out.m == 2
    assert validate_butterfly(out).valid
    assert butterfly_isomorphic(out, make_rational_butterfly(3, 1))


def test_trivial_link_two_reductions(pd):
    b = link_to_butterfly(pd("trivial-2-link.pd"))
    assert b.m == 4
    out, records = reduce_to_bridges(b)
    assert out.m == 2 and len(records) == 2
    assert link_fp(out) == link_fp(b)
    assert butterfly_to_link(out).link.n_components == 2


def test_reduce_non_simple():
    b = make_rational_butterfly(3, 1)
    assert not any(is_simple_trunk(b, i) for i in range(b.m))
    with pytest.raises(NotSimple):
        trunk_reduce(b, 0)


def test_reduce_creates_an_e_vertex(pd):
    b = link_to_butterfly(pd("trefoil-plat.pd"))
    label = simple_trunks(b)[0]
    ends = admissible_endpoints(b, label)
    assert ends
    out, rec = trunk_reduce(b, label, ends[0])
    assert rec.e_vertex in smooth_plain_vertices(out).classes.of_kind("E") or \
        out.classes.kind[rec.e_vertex] == "E"


def test_expand_rational_3_1():
    b = make_rational_butterfly(3, 1)
    out, records = eliminate_e_vertices(b)
    assert len(records) == 2 and out.m == 4
    assert not out.classes.of_kind("E")
    assert validate_butterfly(out).valid
    assert link_fp(out) == link_fp(b)


def test_expand_borromean(btf):
    b = btf("borromean-3.btf")
    assert len(b.classes.of_kind("E")) == 9
    out, records = eliminate_e_vertices(b)
    assert out.m == 12 and len(records) == 9
    assert not out.classes.of_kind("E")
    assert link_fp(out) == link_fp(b)


@pytest.mark.parametrize("p,q", [(3, 1), (5, 2), (7, 3), (8, 3)])
def test_expand_then_reduce_is_identity(p, q):
    b = make_rational_butterfly(p, q)
    inverted = 0
    for e in b.classes.of_kind("E"):
        ex, rec = trunk_expand(b, e)
        assert ex.classes.kind[rec.e_vertex] == "A"
        assert link_fp(ex) == link_fp(b)
        # the new trunk is reducible only when e's old partner was an A-vertex
        if not admissible_endpoints(ex, rec.trunk):
            continue
        back, _ = trunk_reduce(ex, rec.trunk, _anchor_at(ex, rec.trunk, rec.endpoint))
        assert butterfly_isomorphic(smooth_plain_vertices(back), b, allow_reversal=False)
        inverted += 1
    assert inverted >= 2


def _anchor_at(b, label, vertex):
    t = b.trunks[b.trunk_index(label)]
    return next(d for d in (t.c_dart, t.d_dart) if b.map.vertex_of[d] == vertex)


def test_not_e_vertex():
    b = make_rational_butterfly(3, 1)
    with pytest.raises(NotEVertex):
        trunk_expand(b, b.classes.of_kind("A")[0])


def test_trace_roundtrip(btf):
    _, records = eliminate_e_vertices(btf("borromean-3.btf"))
    buf = io.StringIO()
    write_trace(records, buf)
    buf.seek(0)
    again = read_trace(buf)
    assert again == records
    assert all(isinstance(r, MoveRecord) for r in again)


def test_borromean_reduces_to_three(pd):
    b = link_to_butterfly(pd("borromean-12arc.pd"))
    out, records = reduce_to_bridges(b)
    assert out.m == 3 and len(records) == 9
    assert len(out.classes.of_kind("E")) == 9
    assert link_fp(out) == link_fp(b)


def test_kinked_unknot_is_a_fixpoint(pd):
    b = link_to_butterfly(pd("unknot-kink.pd"))
    out, records = reduce_to_bridges(b)
    assert records == [] and out.m == 1
    assert butterfly_isomorphic(out, b, allow_reversal=False)


@settings(max_examples=30)
@given(st.integers(0, 100_000))
def test_reduce_to_bridges_sound(seed):
    b = eliminate_e_vertices(random_butterfly(GenConfig(seed=seed, max_m=6)).butterfly)[0]
    non_simple = sum(not is_simple_trunk(b, i) for i in range(b.m))
    out, records = reduce_to_bridges(b)
    assert out.m == non_simple
    assert not simple_trunks(out)
    assert validate_butterfly(out).valid
    assert link_fp(out) == link_fp(b)


@settings(max_examples=30)
@given(st.integers(0, 100_000), st.data())
def test_single_expand_sound(seed, data):
    b = random_butterfly(GenConfig(seed=seed, max_m=6)).butterfly
    es = b.classes.of_kind("E")
    if not es:
        return
    e = data.draw(st.sampled_from(es))
    out, rec = trunk_expand(b, e)
    assert out.m == b.m + 1
    assert validate_butterfly(smooth_plain_vertices(out)).valid
    assert link_fp(out) == link_fp(b)


@pytest.mark.parametrize("name", ["trefoil-plat.pd", "trivial-2-link.pd", "borromean-12arc.pd", "8_20-a.pd"])
def test_reduce_then_expand_is_identity(name, pd):
    b = link_to_butterfly(pd(name))
    checked = 0
    for i in range(b.m):
        if not is_simple_trunk(b, i):
            continue
        for end in admissible_endpoints(b, i):
            red, rec = trunk_reduce(b, i, end)
            assert link_fp(red) == link_fp(b)
            again, _ = trunk_expand(red, rec.e_vertex)
            assert butterfly_isomorphic(again, b, allow_reversal=False)
            checked += 1
    assert checked >= 4
