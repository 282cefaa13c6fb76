import io
import json

import pytest

from butterflies import cli
from butterflies.codecs import emit_pd, parse_btf, parse_pd
from butterflies.core import butterfly_isomorphic, make_rational_butterfly
from butterflies.corpus import corpus_path
from butterflies.errors import TooManyCrossings
from butterflies.moves import read_trace
from oracles import braid_closure


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_rational_to_gauss(capsys, monkeypatch):
    code, btf, _ = run(capsys, "rational", "3", "1")
    assert code == 0 and btf.startswith("btf 1")
    monkeypatch.setattr("sys.stdin", io.StringIO(btf))
    code, out, _ = run(capsys, "to-link", "--gauss")
    lines = out.split("\n")
    assert code == 0
    assert len(lines[0].split()) == 8       # 4 crossings, passed twice
    assert {t[1:-1] for t in lines[0].split()} == {"1", "2", "3", "4"}


def test_reduce_trefoil_plat(capsys, tmp_path):
    trace = tmp_path / "t.jsonl"
    out_btf = tmp_path / "r.btf"
    code, out, _ = run(capsys, "reduce", str(corpus_path("trefoil-plat.pd")),
                       "--trace", str(trace), "--out", str(out_btf))
    assert code == 0 and out.strip() == "m: 4 → 2"
    with trace.open() as fh:
        assert len(read_trace(fh)) == 2
    assert butterfly_isomorphic(parse_btf(out_btf.read_text()), make_rational_butterfly(3, 1))


def test_roundtrip_borromean(capsys):
    code, out, _ = run(capsys, "roundtrip", str(corpus_path("borromean-12arc.pd")))
    assert code == 0 and "preserved" in out


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", str(corpus_path("borromean-3.btf")))
    assert code == 0
    assert "A=6 E=9 B=14" in out and "chi=0" in out and out.rstrip().endswith("valid")
    code, out, _ = run(capsys, "--json", "validate", str(corpus_path("rational-3-1.btf")))
    report = json.loads(out)
    assert report["valid"] and report["m"] == 2


def test_validate_invalid(capsys, tmp_path):
    bad = tmp_path / "theta.btf"
    bad.write_text("btf 1\nface A: e0 e1 -e3 -e2 ; trunk 0 2\n"
                   "face B: e2 e3 -e5 -e4 ; trunk 0 2\nface C: e4 e5 -e1 -e0 ; trunk 0 2\n")
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == cli.EXIT_INVALID and "INVALID" in out


def test_json_syntax_error(capsys, tmp_path):
    bad = tmp_path / "bad.btf"
    bad.write_text("btf 1\nface N: e0 e1 ; trunk 0\n")
    code, _, err = run(capsys, "--json", "validate", str(bad))
    payload = json.loads(err)
    assert code == 3 == payload["exit"]
    assert payload["type"] == "BtfSyntaxError" and payload["line"] == 2


def test_error_exit_codes(capsys, tmp_path):
    torus = tmp_path / "t.btf"
    torus.write_text("btf 1\nface T: a b -a -b ; trunk 0 2\n")
    assert run(capsys, "validate", str(torus))[0] == 4
    assert run(capsys, "rational", "4", "4")[0] == 5
    big = tmp_path / "big.pd"
    big.write_text(emit_pd(braid_closure([1, -2] * 9, 3)))
    code, _, err = run(capsys, "--json", "invariant", str(big))
    assert code == 6 and json.loads(err)["error"] == TooManyCrossings.code
    assert run(capsys, "frobnicate")[0] == cli.EXIT_USAGE
    assert run(capsys, "validate", str(tmp_path / "missing.btf"))[0] == cli.EXIT_USAGE


def test_out_dir_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUT_DIR_ENV, str(tmp_path))
    code, _, _ = run(capsys, "rational", "5", "2", "--out", "sub/r52.btf")
    assert code == 0
    assert butterfly_isomorphic(parse_btf((tmp_path / "sub" / "r52.btf").read_text()),
                                make_rational_butterfly(5, 2), allow_reversal=False)


def test_to_butterfly_and_expand(capsys, tmp_path):
    out = tmp_path / "b.btf"
    assert run(capsys, "to-butterfly", str(corpus_path("figure-eight-plat.pd")), "--out", str(out))[0] == 0
    b = parse_btf(out.read_text())
    assert not b.classes.of_kind("E")
    code, text, _ = run(capsys, "expand", str(corpus_path("rational-5-2.btf")))
    assert code == 0 and not parse_btf(text).classes.of_kind("E")


def test_to_link_pd_and_svg(capsys, tmp_path):
    pd_out, svg_out = tmp_path / "x.pd", tmp_path / "x.svg"
    code, _, _ = run(capsys, "to-link", str(corpus_path("rational-3-1.btf")),
                     "--pd", str(pd_out), "--svg", str(svg_out))
    assert code == 0
    assert parse_pd(pd_out.read_text()).n_crossings == 4
    assert svg_out.read_text().count('class="crossing"') == 4


def test_invariant(capsys):
    code, out, _ = run(capsys, "--json", "invariant", str(corpus_path("8_20-a.pd")))
    a = json.loads(out)
    code2, out2, _ = run(capsys, "--json", "invariant", str(corpus_path("8_20-b.pd")))
    assert code == code2 == 0 and a == json.loads(out2) and a["components"] == 1
    code, out, _ = run(capsys, "invariant", str(corpus_path("rational-3-1.btf")))
    assert out.startswith("components: 1")


def test_random_seed_env(capsys, monkeypatch):
    monkeypatch.setenv(cli.SEED_ENV, "17")
    _, a, _ = run(capsys, "random")
    _, b, _ = run(capsys, "random", "--seed", "17")
    assert a == b and a.startswith("# seed 17")
    assert parse_btf(a).m >= 1


@pytest.mark.parametrize("target", ["butterfly", "butterfly-with-gamma", "link"])
def test_render(capsys, tmp_path, target):
    svg = tmp_path / "r.svg"
    code, _, _ = run(capsys, "render", str(corpus_path("rational-3-1.btf")), "--svg", str(svg),
                     "--target", target)
    assert code == 0 and svg.read_text().startswith("<?xml")


def test_render_pd_defaults_to_link(capsys, tmp_path):
    svg = tmp_path / "k.svg"
    assert run(capsys, "render", str(corpus_path("unknot-kink.pd")), "--svg", str(svg))[0] == 0
    assert 'class="crossing"' in svg.read_text()
