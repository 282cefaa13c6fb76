"""Time the bracket state sum with the compiled and the vectorized backend.

    python3 benchmarks/bench_bracket.py --repeat 3
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from butterflies import _kernels
from butterflies.codecs import parse_pd
from butterflies.convert import butterfly_to_link
from butterflies.core import make_rational_butterfly
from butterflies.corpus import corpus_path
from butterflies.verify import _dense_segments


def cases():
    for name in ("trefoil-plat.pd", "figure-eight-plat.pd", "8_20-b.pd", "borromean-12arc.pd"):
        yield name, parse_pd(corpus_path(name).read_text())
    for p, q in ((8, 3), (9, 4)):
        yield f"rational {p}/{q}", butterfly_to_link(make_rational_butterfly(p, q)).link


def bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not _kernels.HAVE_NUMBA:
        print("numba not installed; only the numpy backend is timed")
    print(f"{'diagram':22s} {'N':>3s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s}")
    for name, d in cases():
        segs = _dense_segments(d)
        n_seg = len(d.segments)
        t_np, h_np = bench(lambda: _kernels.state_histogram(segs, n_seg, "numpy"), args.repeat)
        if _kernels.HAVE_NUMBA:
            _kernels.state_histogram(segs, n_seg, "numba")    # compile outside the timing
            t_nb, h_nb = bench(lambda: _kernels.state_histogram(segs, n_seg, "numba"), args.repeat)
            assert np.array_equal(h_np, h_nb), name
            print(f"{name:22s} {d.n_crossings:3d} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}")
        else:
            print(f"{name:22s} {d.n_crossings:3d} {t_np:10.4f} {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
