import pytest

from badpairs.cfrac import CFStream, THETA_ROOT


@pytest.fixture(scope="session")
def theta_quotients():
    """First 100,000 partial quotients of theta (certified interval stream)."""
    stream = CFStream(THETA_ROOT)
    return [stream.next_quotient() for _ in range(100_000)]
