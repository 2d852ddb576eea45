import pytest

from acceptance_util import canonical_classes_4x5


@pytest.fixture(scope="session")
def canonical_4x5():
    """Representatives of all 4x5 matrices up to row/column permutation."""
    return canonical_classes_4x5()
