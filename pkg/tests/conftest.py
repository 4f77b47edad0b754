import pytest

# criterion number -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict = {}


def record(number: int, passed: bool, detail: str) -> None:
    ACCEPTANCE[number] = (passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if passed else 'FAIL'} ({detail})")


@pytest.fixture
def rng():
    import random

    return random.Random(12345)
