from pathlib import Path

import numpy as np
import pytest

from routespec import enumerate_paths
from routespec.generators import toy_network

DATA = Path(__file__).resolve().parent.parent / "data"

TOY_R = np.array([[0, 1, 0, 0, 1],
                  [1, 0, 1, 0, 1],
                  [1, 0, 0, 1, 0]])
T1 = np.array([5.0, 5, 2, 5, 5])
T2 = np.array([5.5, 4.5, 1, 4.5, 5.5])


@pytest.fixture
def toy():
    return toy_network()


@pytest.fixture
def toy_R(toy):
    return enumerate_paths(toy)


@pytest.fixture
def data_dir():
    return DATA


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0][2:])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}" + (f"  -- {detail}" if detail else ""))
