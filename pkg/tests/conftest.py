import numpy as np
import pytest

from gridbcp.grid import GridGraph

_ACCEPTANCE_LINES: list[str] = []


def random_grid(rng, m, n, lo=1, hi=9) -> GridGraph:
    return GridGraph(rng.integers(lo, hi + 1, size=(m, n)))


def with_weights(m, n, overrides, base=1) -> GridGraph:
    w = np.full((m, n), base, dtype=np.int64)
    for (r, c), v in overrides.items():
        w[r - 1, c - 1] = v
    return GridGraph(w)


@pytest.fixture
def report():
    """Record one summary line per acceptance criterion."""

    def _report(label: str, ok: bool, detail: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'} {label}"
        if detail:
            line += f" ({detail})"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return _report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
