import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from invquot.profile import allowed_k, numeric_kw2_range, quotient_profile  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"


def all_cells(numeric_range: bool = False):
    """Every (ks2, k, kw2) cell; ``numeric_range`` widens K_S^2 = 7 to the numeric K_W^2 range."""
    cells = []
    for ks2 in range(1, 10):
        for k in allowed_k(ks2):
            kw2s = numeric_kw2_range(ks2, k) if numeric_range else quotient_profile(ks2, k).kw2_values()
            cells += [(ks2, k, kw2) for kw2 in kw2s]
    return cells


@pytest.fixture
def golden():
    return GOLDEN


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.line(n))
