import xml.etree.ElementTree as ET

import pytest

from butterflies.convert import butterfly_to_link, link_to_butterfly
from butterflies.core import make_rational_butterfly
from butterflies.render import RenderSpec, layout_svg, tutte_layout

NS = "{http://www.w3.org/2000/svg}"


def census(svg: str) -> dict[str, int]:
    root = ET.fromstring(svg)
    out: dict[str, int] = {}
    for el in root.iter():
        cls = el.get("class")
        if cls:
            out[cls] = out.get(cls, 0) + 1
    return out


def test_rational_butterfly_census():
    b = make_rational_butterfly(3, 1)
    c = census(layout_svg(b))
    assert c["trunk"] == 2 and c["edge"] == 6
    assert c.get("vertex-A", 0) + c.get("vertex-E", 0) + c.get("vertex-B", 0) == 6
    assert (c["vertex-A"], c["vertex-E"]) == (4, 2)
    assert "chord" not in c


def test_gamma_render_of_trefoil_plat(pd):
    b = link_to_butterfly(pd("trefoil-plat.pd"))
    c = census(layout_svg(b, RenderSpec(target="butterfly-with-gamma")))
    assert c["chord"] == 4 and c["trunk"] == 4
    assert c["vertex-B"] == 6 and c["edge"] == b.map.n_edges


def test_kink_link_render(pd):
    svg = layout_svg(pd("unknot-kink.pd"), RenderSpec(target="link"))
    c = census(svg)
    assert c["crossing"] == 1
    assert c["strand"] == 2


def test_link_render_from_butterfly(btf):
    b = btf("borromean-3.btf")
    c = census(layout_svg(b, RenderSpec(target="link")))
    assert c["crossing"] == len(b.gamma.chords)
    assert c["strand"] == 2 * len(b.gamma.chords)


def test_loops_are_drawn():
    from butterflies.diagram import LinkDiagram
    c = census(layout_svg(LinkDiagram((), (1, 2)), RenderSpec(target="link")))
    assert c == {"loop": 2}


def test_render_is_deterministic(btf):
    b = btf("8_20-a.btf")
    spec = RenderSpec(target="butterfly-with-gamma", size=300)
    assert layout_svg(b, spec) == layout_svg(b, spec)
    assert 'width="300"' in layout_svg(b, spec)


def test_bad_targets():
    with pytest.raises(ValueError):
        layout_svg(make_rational_butterfly(3, 1), RenderSpec(target="ball"))
    with pytest.raises(TypeError):
        layout_svg(butterfly_to_link(make_rational_butterfly(3, 1)), RenderSpec(target="butterfly"))


def test_tutte_square_with_centre():
    pos = tutte_layout(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4), (2, 4), (3, 4)], [0, 1, 2, 3])
    assert abs(pos[4]).max() < 1e-12
