from pathlib import Path

import pytest

from sbom_auditor.registry import FetchPolicy
from sbom_auditor.testing import MockRegistry

FIXTURES = Path(__file__).parent / "fixtures"
SBOMS = FIXTURES / "sboms"
E2E = FIXTURES / "e2e"


@pytest.fixture
def fast_policy():
    return FetchPolicy(max_concurrency=4, max_retries=3, backoff_base=0.01,
                       per_request_timeout=5.0, min_request_interval=0.001)


@pytest.fixture
def e2e_registry():
    with MockRegistry(E2E / "registry") as reg:
        yield reg


def sbom_bytes(name):
    return (SBOMS / name).read_bytes()


# lines recorded by tests/test_acceptance.py, repeated in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
