import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from synaptica import MatrixModel

settings.register_profile(
    "synaptica", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("synaptica")


@pytest.fixture
def m2():
    return MatrixModel(2)


@pytest.fixture
def m3():
    return MatrixModel(3)


@pytest.fixture
def m4():
    return MatrixModel(4)


def mat(model, rows):
    return model.element(np.array(rows, dtype=float))


def assert_close(x, y, atol=1e-10):
    xd = x.data if hasattr(x, "data") else np.asarray(x, dtype=float)
    yd = y.data if hasattr(y, "data") else np.asarray(y, dtype=float)
    np.testing.assert_allclose(xd, yd, rtol=0, atol=atol)


# -- acceptance report: one line per criterion in the terminal summary -------------

ACCEPTANCE: dict[str, str] = {}


def record(criterion: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}"
    ACCEPTANCE[criterion] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE.values():
            terminalreporter.write_line(line)
