import sys

import numpy as np
import pytest

from blochsep import filter_normal_form, gentiles2_state
from blochsep.matrix import DensityMatrix

PHI_PLUS = np.array([1, 0, 0, 1]) / np.sqrt(2)


@pytest.fixture(scope="session")
def gt2():
    return gentiles2_state(3, 4)


@pytest.fixture(scope="session")
def gt2_fnf(gt2):
    return filter_normal_form(gt2, eps=1e-10)


@pytest.fixture(scope="session")
def bell():
    return DensityMatrix(np.outer(PHI_PLUS, PHI_PLUS), 2, 2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    RESULTS = mod.RESULTS
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS, key=lambda k: int(k.split()[0])):
        ok, detail = RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  AC{key}: {detail}")
