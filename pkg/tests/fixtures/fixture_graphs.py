import pytest

from graphs.structures import Dag, UndirectedGraph


@pytest.fixture
def chain3():
    return UndirectedGraph.build(range(3), [(0, 1), (1, 2)])


@pytest.fixture
def four_cycle():
    return UndirectedGraph.build(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def two_edges():
    return UndirectedGraph.build(range(4), [(0, 1), (2, 3)])


@pytest.fixture
def star():
    def make(d):
        return UndirectedGraph.build(range(d), [(0, v) for v in range(1, d)])
    return make


@pytest.fixture
def ring():
    def make(d):
        return UndirectedGraph.build(
            range(d), [(v, (v + 1) % d) for v in range(d)]
        )
    return make


@pytest.fixture
def path_graph():
    def make(d):
        return UndirectedGraph.build(range(d), [(v, v + 1) for v in range(d - 1)])
    return make


@pytest.fixture
def chain_dag():
    return Dag.build(range(3), [(0, 1), (1, 2)])


@pytest.fixture
def collider():
    return Dag.build(range(3), [(0, 2), (1, 2)])


@pytest.fixture
def diamond():
    return Dag.build(range(4), [(0, 1), (0, 2), (1, 3), (2, 3)])
