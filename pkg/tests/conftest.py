import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).resolve().parent))

from butterflies import _kernels  # noqa: E402
from butterflies.codecs import parse_btf, parse_pd  # noqa: E402
from butterflies.corpus import corpus_path  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")


@pytest.fixture(scope="session", autouse=True)
def warm_kernel():
    # compile (or load the cached) state-sum kernel once, outside any timing
    _kernels.state_histogram([[0, 1, 1, 0]], 2)


@pytest.fixture
def pd():
    return lambda name: parse_pd(corpus_path(name).read_text())


@pytest.fixture
def btf():
    return lambda name: parse_btf(corpus_path(name).read_text(), name=name)
