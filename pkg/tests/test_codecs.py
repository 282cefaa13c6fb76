import pytest
from hypothesis import given, strategies as st

from butterflies.codecs import emit_btf, emit_gauss, emit_pd, parse_btf, parse_pd
from butterflies.core import butterfly_isomorphic, make_rational_butterfly
from butterflies.corpus import list_corpus
from butterflies.diagram import LinkDiagram
from butterflies.errors import (
    AnchorNotAntipodal, BtfSyntaxError, DanglingSegment, NonPlanarPD, NotSphere, SymbolCountError,
)
from butterflies.verify import fingerprint
from oracles import TREFOIL_PD

RATIONAL_3_1 = """\
btf 1
face N: e0 e1 e2 e3 e4 e5 ; trunk 0 3
face S: -e1 -e0 -e5 -e4 -e3 -e2 ; trunk 1 4
"""


def test_torus_word_is_not_a_sphere():
    with pytest.raises(NotSphere):
        parse_btf("btf 1\nface T: a b -a -b ; trunk 0 2\n")


def test_rational_file_matches_constructor():
    b = parse_btf(RATIONAL_3_1)
    assert butterfly_isomorphic(b, make_rational_butterfly(3, 1))


def test_odd_face_rejected():
    with pytest.raises(AnchorNotAntipodal):
        parse_btf("btf 1\nface A: a b c ; trunk 0 1\nface B: -c -b -a ; trunk 0 1\n")


def test_syntax_error_position():
    with pytest.raises(BtfSyntaxError) as info:
        parse_btf("btf 1\n# ok\nface N: e0 e1 ; trunk 0 x\n")
    assert info.value.line == 3
    assert info.value.column > 1


def test_symbol_count():
    with pytest.raises(SymbolCountError):
        parse_btf("btf 1\nface N: a b ; trunk 0 1\n")
    with pytest.raises(SymbolCountError):
        parse_btf("btf 1\nface N: a a ; trunk 0 1\n")


def test_trefoil_pd():
    d = parse_pd(f"PD[{TREFOIL_PD}]")
    assert d.n_crossings == 3
    assert d.n_components == 1


def test_pd_errors():
    with pytest.raises(DanglingSegment):
        parse_pd("X[1,2,3,4], X[4,3,2,5]")
    # a 2-crossing diagram glued as on a torus
    with pytest.raises(NonPlanarPD):
        parse_pd("X[1,2,3,4], X[3,1,4,2]")
    with pytest.raises(BtfSyntaxError):
        parse_pd("X[1,2,3]")


def test_gauss_code():
    g = emit_gauss(parse_pd(TREFOIL_PD))
    toks = g.split()
    assert len(toks) == 6 and all(t[0] in "OU" and t[-1] in "+-" for t in toks)
    assert emit_gauss(LinkDiagram((), (1,))).strip() == "loop"


def test_plain_quadruples_and_loops():
    d = parse_pd("1 4 2 5\n3 6 4 1\n5 2 6 3\nLoop[9]\n")
    assert d.n_crossings == 3 and d.loops == (9,)
    assert parse_pd(emit_pd(d)).loops == (9,)


@pytest.mark.parametrize("name", list_corpus(".btf"))
def test_btf_roundtrip(name, btf):
    b = btf(name)
    again = parse_btf(emit_btf(b))
    assert butterfly_isomorphic(b, again, allow_reversal=False)
    assert emit_btf(again) == emit_btf(b)


@pytest.mark.parametrize("name", list_corpus(".pd"))
def test_pd_roundtrip(name, pd):
    d = pd(name)
    again = parse_pd(emit_pd(d))
    assert again.crossings == d.crossings and again.loops == d.loops
    assert fingerprint(again) == fingerprint(d)


@given(st.integers(2, 9), st.data())
def test_rational_btf_roundtrip(p, data):
    q = data.draw(st.integers(1, p - 1))
    b = make_rational_butterfly(p, q)
    assert butterfly_isomorphic(parse_btf(emit_btf(b)), b, allow_reversal=False)
