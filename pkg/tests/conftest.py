import numpy as np
import pytest

ACCEPTANCE_ROWS = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_hermitian(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return a + a.conj().T


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_ROWS:
        return
    terminalreporter.section("acceptance criteria")
    for key, title, passed, detail in sorted(ACCEPTANCE_ROWS, key=lambda r: int(r[0])):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {key:>2} {title}: {detail}")
