import pytest
from hypothesis import HealthCheck, settings

from adamsfix.groups import (
    FiniteGroupModel,
    cyclic_table,
    dihedral_table,
    quaternion_table,
)

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def small_groups():
    """Groups used for solver/oracle cross-checks, keyed by a short label."""
    out = {}
    for n in range(1, 6):
        out[f"S{n}"] = FiniteGroupModel.symmetric(n)
    for n in range(3, 6):
        out[f"A{n}"] = FiniteGroupModel.alternating(n)
    for factors in ([2], [3], [4], [5], [6], [2, 2], [2, 3], [2, 4], [3, 3], [2, 2, 2], [2, 2, 3], [6, 6]):
        out["Z" + "x".join(map(str, factors))] = FiniteGroupModel.abelian(factors)
    for m in (3, 4, 5, 6, 8):
        out[f"D{m}"] = dihedral_table(m)
    out["Q8"] = quaternion_table()
    out["C7"] = cyclic_table(7)
    return out


SMALL_GROUPS = small_groups()


@pytest.fixture(params=sorted(SMALL_GROUPS), ids=sorted(SMALL_GROUPS))
def small_group(request):
    return SMALL_GROUPS[request.param]


# one PASS/FAIL line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
