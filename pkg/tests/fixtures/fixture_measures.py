import pytest

from extremes.husler_reiss import HRForestSpec, hr_density
from graphs.structures import Dag, UndirectedGraph
from measures.atomic import AtomicMeasure
from measures.grid import AxisGrid, generic_trivariate, pareto_margin
from measures.rays import MaxLinearSpec

P12 = 0.4
P23 = 0.7
GAMMA12 = 1.0
GAMMA23 = 2.0


@pytest.fixture
def violation_measure():
    return AtomicMeasure.build(3, [((0, 0, 1), 1.0), ((1, 1, 1), 1.0)])


@pytest.fixture
def maxlinear_pair():
    dag = Dag.build(range(2), [(0, 1)])
    return MaxLinearSpec.build(dag, {(0, 1): 2.0})


@pytest.fixture
def maxlinear_chain():
    dag = Dag.build(range(3), [(0, 1), (1, 2)])
    return MaxLinearSpec.build(dag, {(0, 1): 2.0, (1, 2): 0.5})


@pytest.fixture(scope='module')
def axis():
    return AxisGrid.geometric(0.05, 50, 14)


@pytest.fixture(scope='module')
def trivariate(axis):
    return generic_trivariate(
        P12, P23, hr_density(GAMMA12), hr_density(GAMMA23), pareto_margin,
        axis,
    )


@pytest.fixture
def hr_chain_spec():
    forest = UndirectedGraph.build(range(3), [(0, 1), (1, 2)])
    return HRForestSpec.build(
        forest, {(0, 1): 1.0, (1, 2): 2.0}, {(0, 1): 0.5, (1, 2): 0.5}
    )
