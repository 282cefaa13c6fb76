"""Regenerate the bundled corpus under ``src/butterflies/corpus``.

Bridge diagrams are produced from butterflies (rational constructor or the
theta-graph search in ``find_theta_butterflies.py``) and then checked against
independent braid-closure diagrams with the bracket oracle.
"""

from __future__ import annotations

import sys
from pathlib import Path

from butterflies.codecs import emit_btf, emit_pd, parse_pd
from butterflies.convert import butterfly_to_link, preprocess_diagram
from butterflies.core import make_rational_butterfly
from butterflies.diagram import LinkDiagram
from butterflies.verify import fingerprint, fingerprints_equal

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "scripts"))
sys.path.insert(0, str(ROOT / "tests"))
from find_theta_butterflies import theta_butterfly  # noqa: E402
from oracles import (  # noqa: E402
    BORROMEAN_BRAID, EIGHT_TWENTY_BRAID, FIGURE_EIGHT_PD, HOPF_PD, TREFOIL_PD, braid_closure,
)

OUT = ROOT / "src" / "butterflies" / "corpus"

UNKNOT_PATH = """\
# path tree B1-A1-B2-A2-B3 folded along A1-A2
btf 1
face U: e0 e1 e2 e3 -e3 -e2 -e1 -e0 ; trunk 1 5
"""


def write(name: str, text: str, header: str = ""):
    path = OUT / name
    path.write_text((f"# {header}\n" if header else "") + text)
    print(f"wrote {path.relative_to(ROOT)}")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rational = {"trefoil-plat": (3, 1), "figure-eight-plat": (5, 2)}
    for name, (p, q) in rational.items():
        b = make_rational_butterfly(p, q)
        write(f"rational-{p}-{q}.btf", emit_btf(b), f"rational {p}/{q}")
        write(f"{name}.pd", emit_pd(butterfly_to_link(b).link), f"2-bridge diagram of rational {p}/{q}")

    write("trefoil.pd", f"PD[{TREFOIL_PD}]\n", "standard 3-crossing trefoil")
    write("figure-eight.pd", f"PD[{FIGURE_EIGHT_PD}]\n", "standard 4-crossing figure-eight knot")
    write("hopf.pd", f"PD[{HOPF_PD}]\n", "Hopf link")
    write("unknot-path.btf", UNKNOT_PATH)
    write("unknot-kink.pd", emit_pd(preprocess_diagram(LinkDiagram((), (1,)))), "one kink on a circle")
    trivial = preprocess_diagram(LinkDiagram((), (1, 2)))
    write("trivial-2-link.pd", emit_pd(trivial), "two kinked circles joined by a type-II move")

    borromean = theta_butterfly((10, 10, 10), (3, 3, 3))
    d = butterfly_to_link(borromean).link
    assert fingerprints_equal(fingerprint(d), fingerprint(braid_closure(*BORROMEAN_BRAID)))
    write("borromean-3.btf", emit_btf(borromean), "theta graph (10,10,10), trunk offsets (3,3,3)")
    write("borromean-12arc.pd", emit_pd(d), "3-bridge borromean rings, 12 arcs")

    ref = fingerprint(braid_closure(*EIGHT_TWENTY_BRAID))
    for tag, lengths, offsets in (("a", (6, 10, 14), (1, 1, 3)), ("b", (8, 8, 12), (3, 3, 9))):
        b = theta_butterfly(lengths, offsets)
        d = butterfly_to_link(b).link
        assert fingerprint(d) == ref
        info = f"theta graph {lengths}, trunk offsets {offsets}"
        write(f"8_20-{tag}.btf", emit_btf(b), info)
        write(f"8_20-{tag}.pd", emit_pd(d), f"3-bridge 8_20 from {info}")

    for path in sorted(OUT.glob("*.pd")):
        parse_pd(path.read_text())


if __name__ == "__main__":
    main()
