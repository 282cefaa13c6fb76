"""Text formats: butterfly gluing files (``.btf``), PD codes and Gauss codes.

``.btf`` (UTF-8, line oriented, ``#`` starts a comment)::

    btf 1
    face N: e0 e1 e2 e3 e4 e5 ; trunk 0 3
    face S: -e1 -e0 -e5 -e4 -e3 -e2 ; trunk 1 4

Each face line lists the face walk as signed edge symbols, face on the left;
corner ``i`` is the start of symbol ``i``.  Every symbol occurs twice with
opposite signs.  ``trunk i j`` names the anchor corners, which must be
antipodal.

PD text is a list of ``X[a,b,c,d]`` tuples (counterclockwise from the incoming
under-segment), optionally wrapped in ``PD[...]``, plus ``Loop[k]`` tokens for
crossing-free components.
"""

from __future__ import annotations

import re

from .core import ButterflyDiagram, Trunk
from .diagram import LinkDiagram
from .errors import AnchorNotAntipodal, BtfSyntaxError, SymbolCountError
from .planar_map import map_from_faces

__all__ = ["parse_btf", "emit_btf", "parse_pd", "emit_pd", "emit_gauss", "FORMAT_VERSION"]

FORMAT_VERSION = 1

_FACE_RE = re.compile(r"^face\s+([\w.\-]+)\s*:\s*(.*?)\s*;\s*trunk\s+(\S+)\s+(\S+)\s*$")
_SYMBOL_RE = re.compile(r"^([+-]?)([A-Za-z_]\w*)$")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def parse_btf(text: str, name: str = "") -> ButterflyDiagram:
    version_seen = False
    records = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        stripped = line.strip()
        col = len(line) - len(line.lstrip()) + 1
        if stripped.startswith("btf"):
            parts = stripped.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise BtfSyntaxError("expected 'btf <version>'", lineno, col)
            if int(parts[1]) != FORMAT_VERSION:
                raise BtfSyntaxError(f"unsupported format version {parts[1]}", lineno, col)
            version_seen = True
            continue
        mt = _FACE_RE.match(stripped)
        if not mt:
            raise BtfSyntaxError("expected 'face <id>: <symbols> ; trunk <i> <j>'", lineno, col)
        fid, body, si, sj = mt.groups()
        if not (si.isdigit() and sj.isdigit()):
            raise BtfSyntaxError("trunk anchors must be non-negative integers", lineno, col + stripped.index("trunk"))
        word = []
        for tok in body.split():
            ms = _SYMBOL_RE.match(tok)
            if not ms:
                raise BtfSyntaxError(f"bad edge symbol {tok!r}", lineno, col + stripped.index(tok))
            word.append((ms.group(2), ms.group(1) != "-"))
        if not word:
            raise BtfSyntaxError("empty face word", lineno, col)
        records.append((fid, word, int(si), int(sj), lineno))
    if not records:
        raise BtfSyntaxError("no faces", 1, 1)
    if not version_seen:
        raise BtfSyntaxError("missing 'btf <version>' header", 1, 1)
    if len({r[0] for r in records}) != len(records):
        raise BtfSyntaxError("duplicate face id", records[-1][4], 1)

    uses: dict[str, list[bool]] = {}
    for _, word, _, _, _ in records:
        for sym, pos in word:
            uses.setdefault(sym, []).append(pos)
    for sym, signs in uses.items():
        if len(signs) != 2 or signs[0] == signs[1]:
            raise SymbolCountError(f"edge symbol {sym!r} must occur twice with opposite signs, got {len(signs)} use(s)")
    edge_id = {sym: k for k, sym in enumerate(uses)}

    walks, anchors = [], []
    for fid, word, i, j, lineno in records:
        L = len(word)
        if L % 2 or i >= L or j >= L or (j - i) % L != L // 2:
            raise AnchorNotAntipodal(f"face {fid} (line {lineno}): anchors {i},{j} not antipodal on a word of length {L}")
        walk = [2 * edge_id[sym] + (0 if pos else 1) for sym, pos in word]
        walks.append(walk)
        anchors.append((walk[i], walk[j], fid))
    m = map_from_faces(walks)
    return ButterflyDiagram(m, tuple(Trunk(c, d, fid) for c, d, fid in anchors), name)


def emit_btf(b: ButterflyDiagram) -> str:
    m = b.map
    lines = [f"btf {FORMAT_VERSION}"]
    used = set()
    for i, t in enumerate(b.trunks):
        fid = t.label if re.fullmatch(r"[\w.\-]+", t.label or "") and t.label not in used else f"t{i}"
        used.add(fid)
        f, pc = b.position(t.c_dart)
        _, pd = b.position(t.d_dart)
        syms = []
        for d in m.faces[f].darts:
            e = m.edge_of[d]
            syms.append(("" if m.edges[e][0] == d else "-") + f"e{e}")
        lines.append(f"face {fid}: {' '.join(syms)} ; trunk {pc} {pd}")
    return "\n".join(lines) + "\n"


_TOKEN_RE = re.compile(r"\s*(?:(PD\[)|(\])|(,)|X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]"
                       r"|Loop\[\s*(-?\d+)\s*\])")


def parse_pd(text: str) -> LinkDiagram:
    crossings, loops = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        pos = 0
        while pos < len(line):
            if line[pos:].strip() == "":
                break
            mt = _TOKEN_RE.match(line, pos)
            if not mt or mt.end() == pos:
                # plain whitespace-separated quadruples are accepted too
                rest = line[pos:].split()
                if len(rest) == 4 and all(re.fullmatch(r"-?\d+", r) for r in rest) and pos == 0:
                    crossings.append(tuple(int(r) for r in rest))
                    break
                col = pos + len(line[pos:]) - len(line[pos:].lstrip()) + 1
                raise BtfSyntaxError(f"unexpected text {line[pos:].strip()[:20]!r}", lineno, col)
            if mt.group(4) is not None:
                crossings.append(tuple(int(mt.group(k)) for k in range(4, 8)))
            elif mt.group(8) is not None:
                loops.append(int(mt.group(8)))
            pos = mt.end()
    return LinkDiagram(tuple(crossings), tuple(loops))


def emit_pd(d: LinkDiagram) -> str:
    toks = [f"X[{a},{b},{c},{e}]" for a, b, c, e in d.crossings]
    toks += [f"Loop[{s}]" for s in d.loops]
    return "PD[" + ", ".join(toks) + "]\n"


def emit_gauss(d: LinkDiagram) -> str:
    """One line per oriented component: ``O<k><sign>`` / ``U<k><sign>`` passages."""
    lines = []
    signs = d.signs
    for tails in d.component_tails:
        toks = []
        for t in tails:
            h = d.alpha[t]
            i = h // 4
            kind = "U" if h % 4 == 0 else "O"
            toks.append(f"{kind}{i + 1}{'+' if signs[i] > 0 else '-'}")
        lines.append(" ".join(toks))
    lines.extend("loop" for _ in d.loops)
    return "\n".join(lines) + "\n"
