import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from subdirect import _kernels  # noqa: E402


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    """Run the test once per kernel backend."""
    if request.param == "numba" and _kernels.njit is None:
        pytest.skip("numba not importable")
    with _kernels.using(request.param):
        yield request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
