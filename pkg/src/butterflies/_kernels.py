"""State-sum kernel for the Kauffman bracket.

The hot loop enumerates all ``2**N`` smoothings and counts loops.  Two
implementations share one contract and are selected by ``BUTTERFLIES_BACKEND``:

* ``numba`` (default when importable) -- compiled union-find per state;
* ``numpy`` -- vectorized min-label propagation over blocks of states.

Both return ``hist[nb, loops]``: the number of states with ``nb``
B-smoothings that produce ``loops`` closed curves.
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised by whichever backend is installed
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def _requested_backend() -> str:
    want = os.environ.get("BUTTERFLIES_BACKEND", "").strip().lower()
    if want in ("numpy", "python", "off", "0"):
        return "numpy"
    return "numba" if HAVE_NUMBA else "numpy"


BACKEND = _requested_backend()


def state_histogram_numpy(segs: np.ndarray, n_segments: int, block: int = 1 << 12) -> np.ndarray:
    """``segs`` is an ``(N, 4)`` int array of 0-based segment ids."""
    N = segs.shape[0]
    M = n_segments
    hist = np.zeros((N + 1, M + 1), dtype=np.int64)
    a, b, c, d = segs[:, 0], segs[:, 1], segs[:, 2], segs[:, 3]
    bits = np.arange(N, dtype=np.int64)
    total = 1 << N
    for lo in range(0, total, block):
        states = np.arange(lo, min(total, lo + block), dtype=np.int64)
        choose_b = ((states[:, None] >> bits[None, :]) & 1).astype(bool)   # (S, N)
        # A-smoothing joins a-b and c-d; B-smoothing joins a-d and b-c
        u1 = np.broadcast_to(a[None, :], choose_b.shape)
        v1 = np.where(choose_b, d[None, :], b[None, :])
        u2 = np.where(choose_b, b[None, :], c[None, :])
        v2 = np.where(choose_b, c[None, :], d[None, :])
        label = np.tile(np.arange(M, dtype=np.int64), (len(states), 1))
        rows = np.arange(len(states))[:, None]
        while True:
            before = label
            for uu, vv in ((u1, v1), (u2, v2)):
                lu = np.take_along_axis(label, uu, 1)
                lv = np.take_along_axis(label, vv, 1)
                m = np.minimum(lu, lv)
                new = label.copy()
                np.minimum.at(new, (np.broadcast_to(rows, uu.shape), uu), m)
                np.minimum.at(new, (np.broadcast_to(rows, vv.shape), vv), m)
                label = new
            # pointer jumping speeds convergence on long cycles
            label = np.take_along_axis(label, label, 1)
            if np.array_equal(label, before):
                break
        loops = (label == np.arange(M)[None, :]).sum(1)
        nb = choose_b.sum(1)
        np.add.at(hist, (nb, loops), 1)
    return hist


if HAVE_NUMBA:

    @njit(cache=True)
    def _hist_numba(segs, n_segments):  # pragma: no cover - compiled
        N = segs.shape[0]
        M = n_segments
        hist = np.zeros((N + 1, M + 1), dtype=np.int64)
        parent = np.empty(M, dtype=np.int64)
        for state in range(1 << N):
            for i in range(M):
                parent[i] = i
            comps = M
            nb = 0
            for i in range(N):
                if (state >> i) & 1:
                    nb += 1
                    p1, q1, p2, q2 = segs[i, 0], segs[i, 3], segs[i, 1], segs[i, 2]
                else:
                    p1, q1, p2, q2 = segs[i, 0], segs[i, 1], segs[i, 2], segs[i, 3]
                for u, v in ((p1, q1), (p2, q2)):
                    while parent[u] != u:
                        parent[u] = parent[parent[u]]
                        u = parent[u]
                    while parent[v] != v:
                        parent[v] = parent[parent[v]]
                        v = parent[v]
                    if u != v:
                        parent[v] = u
                        comps -= 1
            hist[nb, comps] += 1
        return hist


def state_histogram(segs, n_segments: int, backend: str | None = None) -> np.ndarray:
    segs = np.ascontiguousarray(np.asarray(segs, dtype=np.int64).reshape(-1, 4))
    backend = backend or BACKEND
    if segs.shape[0] == 0:
        return np.zeros((1, 1), dtype=np.int64)
    if backend == "numba" and HAVE_NUMBA:
        return _hist_numba(segs, n_segments)
    return state_histogram_numpy(segs, n_segments)
