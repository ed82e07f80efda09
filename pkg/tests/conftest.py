import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from rsz import Arrow, GradedQuiver, load_fixture  # noqa: E402
from rsz.library import FIXTURE_NAMES  # noqa: E402

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(params=FIXTURE_NAMES)
def fixture_quiver(request):
    return load_fixture(request.param)


@st.composite
def graded_quivers(draw, max_vertices=3, max_extra=3, degrees=(-2, 2)):
    """Small connected graded quivers: a spanning zigzag plus extra arrows."""
    n = draw(st.integers(1, max_vertices))
    verts = [str(i + 1) for i in range(n)]
    deg = st.integers(*degrees)
    arrows = []
    for i in range(1, n):
        s, t = (verts[i - 1], verts[i]) if draw(st.booleans()) else (verts[i], verts[i - 1])
        arrows.append((s, t, draw(deg)))
    for _ in range(draw(st.integers(0, max_extra))):
        arrows.append((draw(st.sampled_from(verts)), draw(st.sampled_from(verts)), draw(deg)))
    return GradedQuiver(
        "h", tuple(verts), tuple(Arrow(f"a{k}", s, t, d) for k, (s, t, d) in enumerate(arrows))
    )


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for report in terminalreporter.stats.get(outcome, []):
            if getattr(report, "when", None) != "call":
                continue
            name = dict(report.user_properties).get("criterion")
            if name:
                lines.append((name, f"{'PASS' if outcome == 'passed' else 'FAIL'} {name} ({report.duration:.2f}s)"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
