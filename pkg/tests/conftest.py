import pytest

from intfunc import from_step_sequence

# The 24-step staircase used as the running example: a discrete sine segment
# ending at [15, 9].
SAMPLE_STEP_TEXT = "i j i j i j i j i j i j i j i i j i i j i i i i"


@pytest.fixture
def sample_if():
    return from_step_sequence((0, 0), SAMPLE_STEP_TEXT)
