import pytest

from sonigraph.fixtures import (
    bob_network,
    family_tree,
    friends_network,
    friends_network_variant,
    hub_five,
    ring_six,
)


@pytest.fixture(scope="session")
def friends():
    return friends_network()


@pytest.fixture(scope="session")
def friends_variant():
    return friends_network_variant()


@pytest.fixture(scope="session")
def bob():
    return bob_network()


@pytest.fixture(scope="session")
def family():
    return family_tree()


@pytest.fixture(scope="session")
def ring():
    return ring_six()


@pytest.fixture(scope="session")
def hub():
    return hub_five()


@pytest.fixture(scope="session")
def all_fixture_diagrams(friends, friends_variant, bob, family, ring, hub):
    return [friends, friends_variant, bob, family, ring, hub]
