import pytest

from constarm import checks


@pytest.fixture(scope="session")
def sweep():
    """The standard parameter sweep: q in {7,9,13,16,17,19,25}, every divisor
    r of q-1 with 2 < r < q-1, m in {2,3,4}, admissible non-terminal."""
    return checks.sweep_params()
