"""Command-line front end: ``butterflies <command> ...``.

Inputs are files or ``-`` (stdin, also the default when the input is
omitted); the format is taken from the suffix, or sniffed from the text
(``btf`` header versus PD tuples).  Relative output paths are resolved against
``$BUTTERFLIES_OUT_DIR`` when it is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import errors
from .codecs import emit_btf, emit_gauss, emit_pd, parse_btf, parse_pd
from .convert import bridge_decompose, butterfly_to_link, link_to_butterfly, preprocess_diagram
from .core import ButterflyDiagram, make_rational_butterfly
from .diagram import LinkDiagram
from .gen import GenConfig, random_butterfly
from .moves import eliminate_e_vertices, reduce_to_bridges, write_trace
from .render import TARGETS, RenderSpec, layout_svg
from .verify import fingerprint, validate_butterfly

OUT_DIR_ENV = "BUTTERFLIES_OUT_DIR"
SEED_ENV = "BUTTERFLIES_SEED"

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_CODES = {
    errors.FormatError: 3,
    errors.MapError: 4,
    errors.ButterflyStructureError: 5,
    errors.BadParameters: 5,
    errors.DiagramError: 6,
    errors.MoveError: 7,
    errors.DegenerateLayout: 8,
    errors.ButterflyError: 9,
}


def exit_code_for(exc: errors.ButterflyError) -> int:
    for cls in type(exc).__mro__:
        if cls in EXIT_CODES:
            return EXIT_CODES[cls]
    return 9


# -- io ----------------------------------------------------------------------

def _read(src: str) -> tuple[str, str]:
    """Return (text, kind) with kind in {"btf", "pd"}."""
    if src in ("-", None):
        text = sys.stdin.read()
        suffix = ""
    else:
        text = Path(src).read_text(encoding="utf-8")
        suffix = Path(src).suffix.lower()
    if suffix == ".btf":
        return text, "btf"
    if suffix == ".pd":
        return text, "pd"
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            return text, ("btf" if line.startswith(("btf", "face")) else "pd")
    return text, "pd"


def _out_path(p: str) -> Path:
    path = Path(p)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _write(dest: str | None, text: str) -> None:
    if dest in (None, "-"):
        sys.stdout.write(text)
    else:
        _out_path(dest).write_text(text, encoding="utf-8")


def _load_butterfly(src: str) -> ButterflyDiagram:
    text, kind = _read(src)
    if kind == "btf":
        return parse_btf(text, name=Path(src).stem if src not in (None, "-") else "")
    return link_to_butterfly(preprocess_diagram(parse_pd(text)))


def _load_link(src: str) -> LinkDiagram:
    text, kind = _read(src)
    if kind == "btf":
        return butterfly_to_link(parse_btf(text)).link
    return parse_pd(text)


# -- commands ----------------------------------------------------------------

def cmd_validate(args) -> int:
    text, kind = _read(args.input)
    if kind != "btf":
        raise errors.FormatError("validate expects a .btf butterfly")
    report = validate_butterfly(parse_btf(text))
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        v, e, f = report.census
        k = report.kinds
        q = report.quotient
        print(f"m: {report.m}")
        print(f"R: V={v} E={e} F={f}")
        print(f"vertices: A={k['A']} E={k['E']} B={k['B']} plain={k['plain']}")
        print(f"quotient: V*={q.v_classes} E*={q.e_classes} chi={q.euler}")
        print(f"gamma: {report.gamma.n_paths} paths")
        for code, msg in report.problems:
            print(f"problem [{code}]: {msg}")
        print("valid" if report.valid else "INVALID")
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_to_link(args) -> int:
    b = _load_butterfly(args.input)
    bd = butterfly_to_link(b)
    if args.gauss:
        sys.stdout.write(emit_gauss(bd.link))
    if args.pd or not (args.gauss or args.svg):
        _write(args.pd, emit_pd(bd.link))
    if args.svg:
        _write(args.svg, layout_svg(bd, RenderSpec(target="link")))
    if bd.bridge_degenerate:
        print("warning: bridge-degenerate (a trunk carries no crossing)", file=sys.stderr)
    return EXIT_OK


def cmd_to_butterfly(args) -> int:
    d = preprocess_diagram(_load_link(args.input))
    b = link_to_butterfly(bridge_decompose(d))
    _write(args.out, emit_btf(b))
    return EXIT_OK


def cmd_reduce(args) -> int:
    b = _load_butterfly(args.input)
    red, records = reduce_to_bridges(b)
    if args.trace:
        with _out_path(args.trace).open("w", encoding="utf-8") as fh:
            write_trace(records, fh)
    if args.out:
        _write(args.out, emit_btf(red))
    print(f"m: {b.m} → {red.m}")
    return EXIT_OK


def cmd_expand(args) -> int:
    b = _load_butterfly(args.input)
    ex, records = eliminate_e_vertices(b)
    if args.trace:
        with _out_path(args.trace).open("w", encoding="utf-8") as fh:
            write_trace(records, fh)
    _write(args.out, emit_btf(ex))
    return EXIT_OK


def cmd_rational(args) -> int:
    _write(args.out, emit_btf(make_rational_butterfly(args.p, args.q)))
    return EXIT_OK


def cmd_random(args) -> int:
    seed = args.seed if args.seed is not None else int(os.environ.get(SEED_ENV, "0"))
    g = random_butterfly(GenConfig(seed=seed, max_m=args.max_m, max_expansions=args.max_expansions))
    _write(args.out, f"# seed {seed}: {g.recipe}\n" + emit_btf(g.butterfly))
    return EXIT_OK


def cmd_invariant(args) -> int:
    d = preprocess_diagram(_load_link(args.input))
    f = fingerprint(d)
    if args.json:
        print(json.dumps(f.to_json(), sort_keys=True))
    else:
        print(f"components: {f.n_components}")
        for p in f.polys:
            print(p)
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    d = _load_link(args.input)
    before = fingerprint(d)
    b = link_to_butterfly(bridge_decompose(preprocess_diagram(d)))
    after = fingerprint(butterfly_to_link(b).link)
    ok = before == after
    print(f"crossings {d.n_crossings}, trunks {b.m}: {'fingerprint preserved' if ok else 'FINGERPRINT CHANGED'}")
    return EXIT_OK if ok else EXIT_INVALID


def cmd_render(args) -> int:
    text, kind = _read(args.input)
    target = args.target or ("butterfly" if kind == "btf" else "link")
    obj = parse_btf(text) if kind == "btf" else parse_pd(text)
    if isinstance(obj, LinkDiagram) and target != "link":
        obj = link_to_butterfly(preprocess_diagram(obj))
    _write(args.svg, layout_svg(obj, RenderSpec(target=target, size=args.size)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="butterflies", description="m-butterfly knot representations")
    ap.add_argument("--json", action="store_true", help="machine-readable output and errors")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        return p

    p = add("validate", cmd_validate, "check a .btf butterfly")
    p.add_argument("input", nargs="?", default="-")
    p = add("to-link", cmd_to_link, "butterfly -> bridge diagram")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--pd", help="write PD code here (default: stdout)")
    p.add_argument("--gauss", action="store_true", help="print the Gauss code")
    p.add_argument("--svg", help="render the link diagram")
    p = add("to-butterfly", cmd_to_butterfly, "PD diagram -> butterfly")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--out")
    p = add("reduce", cmd_reduce, "trunk-reduce down to the bridge number")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--trace", help="write the move trace as JSON lines")
    p.add_argument("--out", help="write the reduced butterfly")
    p = add("expand", cmd_expand, "expand every E-vertex into a trunk")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--trace")
    p.add_argument("--out")
    p = add("rational", cmd_rational, "the 2-butterfly of the rational link p/q")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--out")
    p = add("random", cmd_random, "a seeded random butterfly")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-m", type=int, default=8)
    p.add_argument("--max-expansions", type=int, default=4)
    p.add_argument("--out")
    p = add("invariant", cmd_invariant, "bracket fingerprint of a link")
    p.add_argument("input", nargs="?", default="-")
    p = add("roundtrip", cmd_roundtrip, "PD -> butterfly -> PD fingerprint check")
    p.add_argument("input", nargs="?", default="-")
    p = add("render", cmd_render, "SVG drawing")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--svg", required=True)
    p.add_argument("--target", choices=TARGETS)
    p.add_argument("--size", type=int, default=480)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        return args.fn(args)
    except errors.ButterflyError as exc:
        code = exit_code_for(exc)
        if args.json:
            payload = {"error": exc.code, "type": type(exc).__name__, "message": str(exc), "exit": code}
            for attr in ("line", "column"):
                if getattr(exc, attr, None) is not None:
                    payload[attr] = getattr(exc, attr)
            print(json.dumps(payload, sort_keys=True), file=sys.stderr)
        else:
            print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return code
    except OSError as exc:
        if args.json:
            print(json.dumps({"error": "io", "message": str(exc), "exit": EXIT_USAGE}), file=sys.stderr)
        else:
            print(f"error [io]: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
