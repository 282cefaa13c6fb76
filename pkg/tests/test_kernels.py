import os
import subprocess
import sys

import numpy as np
import pytest

from butterflies import _kernels
from butterflies.verify import _dense_segments
from oracles import braid_closure


def backend_under(value):
    env = dict(os.environ, BUTTERFLIES_BACKEND=value)
    out = subprocess.run([sys.executable, "-c", "from butterflies import _kernels; print(_kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    return out.stdout.strip()


def test_env_forces_numpy():
    assert backend_under("numpy") == "numpy"


def test_env_default():
    assert backend_under("") == ("numba" if _kernels.HAVE_NUMBA else "numpy")


def test_empty_diagram():
    h = _kernels.state_histogram(np.zeros((0, 4)), 0)
    assert h.shape == (1, 1)


def test_single_kink():
    # X[1,1,2,2]-style kink: a-b and c-d joined by A, a-d and b-c by B
    h = _kernels.state_histogram_numpy(np.array([[0, 0, 1, 1]]), 2)
    assert h[0, 2] == 1 and h[1, 1] == 1


@pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")
@pytest.mark.parametrize("word", [[1, -2] * 4, [1, 1, 2, -1, 2, 2, -1, -2, 1, 1]])
def test_histograms_identical(word):
    d = braid_closure(word, 3)
    segs = _dense_segments(d)
    a = _kernels.state_histogram(segs, len(d.segments), "numpy")
    b = _kernels.state_histogram(segs, len(d.segments), "numba")
    assert np.array_equal(a, b)
