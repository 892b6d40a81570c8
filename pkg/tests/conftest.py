import pytest

from doxastic.bundled import patriot_game, voting_game


@pytest.fixture(scope="session")
def patriot():
    return patriot_game()


@pytest.fixture(scope="session")
def voting():
    return voting_game()
