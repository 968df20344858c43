import pytest

from poncelet.verify import run_suite


@pytest.fixture(scope="session")
def suite():
    """Full invariant-check suite, run once per test session."""
    return run_suite()


@pytest.fixture(scope="session")
def suite_by_name(suite):
    return {check.name: check for check in suite.checks}
