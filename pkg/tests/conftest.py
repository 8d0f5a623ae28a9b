import pytest

from apolar_rank.parser import parse


@pytest.fixture
def P():
    return parse
