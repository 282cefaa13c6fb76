"""Search 3-butterflies on theta graphs for a given link type.

A theta graph has two trivalent vertices joined by three paths of lengths
``l1, l2, l3`` (all of one parity, so every face has even length).  Every
choice of trunk offsets is tried; valid butterflies whose link fingerprint
matches the target are printed as ``.btf`` text.

    python3 scripts/find_theta_butterflies.py borromean --max-len 10 --chords 12
"""

from __future__ import annotations

import argparse
import itertools
import sys
from pathlib import Path

from butterflies.codecs import emit_btf
from butterflies.convert import butterfly_to_link
from butterflies.core import ButterflyDiagram, Trunk, butterfly_isomorphic
from butterflies.errors import ButterflyError
from butterflies.planar_map import map_from_faces
from butterflies.verify import fingerprint, fingerprints_equal

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from oracles import BORROMEAN_BRAID, EIGHT_TWENTY_BRAID, braid_closure  # noqa: E402

TARGETS = {"borromean": BORROMEAN_BRAID, "8_20": EIGHT_TWENTY_BRAID}


def theta_faces(lengths):
    """Face walks of a theta graph; edge ``k`` has darts ``2k`` (u->v) and ``2k+1``."""
    paths, k = [], 0
    for n in lengths:
        paths.append(list(range(k, k + n)))
        k += n
    fwd = [[2 * e for e in p] for p in paths]
    rev = [[2 * e + 1 for e in reversed(p)] for p in paths]
    return [fwd[0] + rev[1], fwd[1] + rev[2], fwd[2] + rev[0]]


def theta_butterfly(lengths, offsets):
    walks = theta_faces(lengths)
    m = map_from_faces(walks)
    trunks = []
    for i, (w, off) in enumerate(zip(walks, offsets)):
        n = len(w) // 2
        trunks.append(Trunk(w[off], w[off + n], f"t{i + 1}"))
    return ButterflyDiagram(m, tuple(trunks))


def search(target, max_len, chords=None, limit=None):
    found = []
    for lengths in itertools.combinations_with_replacement(range(1, max_len + 1), 3):
        if len({x % 2 for x in lengths}) != 1:
            continue
        walks = theta_faces(lengths)
        halves = [len(w) // 2 for w in walks]
        for offsets in itertools.product(*(range(h) for h in halves)):
            try:
                b = theta_butterfly(lengths, offsets)
                if not b.classes.ok or b.gamma.problems:
                    continue
                if chords is not None and len(b.gamma.chords) != chords:
                    continue
                if len(b.gamma.chords) > 16:
                    continue
                bd = butterfly_to_link(b)
                f = fingerprint(bd.link)
            except ButterflyError:
                continue
            if fingerprints_equal(f, target, allow_mirror=True):
                if any(butterfly_isomorphic(b, o) for _, _, o in found):
                    continue
                found.append((lengths, offsets, b))
                print(f"# lengths={lengths} offsets={offsets} chords={len(b.gamma.chords)} "
                      f"strict={f == target}", flush=True)
                if limit and len(found) >= limit:
                    return found
    return found


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("target", choices=sorted(TARGETS))
    ap.add_argument("--max-len", type=int, default=8)
    ap.add_argument("--chords", type=int, default=None)
    ap.add_argument("--limit", type=int, default=None)
    args = ap.parse_args(argv)
    word, n = TARGETS[args.target]
    target = fingerprint(braid_closure(word, n))
    for lengths, offsets, b in search(target, args.max_len, args.chords, args.limit):
        print(emit_btf(b))


if __name__ == "__main__":
    main()
