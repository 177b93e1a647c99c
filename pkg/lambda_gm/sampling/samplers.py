"""Точные сэмплеры max-linear векторов и условных законов P_R лучевых мер."""
import logging

import numpy as np

from core.exceptions import UnchargedDirection, UnsupportedInnovation
from core.utils import check_known, parallel_map
from sampling.rng import blocks, check_size, stream

logger = logging.getLogger(__name__)


def _innovations(spec, generator, size):
    columns = []
    for innovation in spec.innovations:
        if innovation.kind == "frechet":
            exponential = generator.standard_exponential(size)
            columns.append(
                innovation.scale * exponential ** (-1.0 / innovation.alpha)
            )
        elif innovation.kind == "uniform":
            columns.append(generator.uniform(0.0, innovation.scale, size))
        else:
            raise UnsupportedInnovation(
                f"Инновация {innovation.kind} не поддерживается."
            )
    return np.column_stack(columns)


def _structural_block(spec, epsilon):
    """Вычислить X_i = ⋁_k β_ik X_k ∨ β_ii ε_i в топологическом порядке."""
    values = np.empty_like(epsilon)
    for v in spec.dag.topological_order:
        column = spec.diag[v] * epsilon[:, v]
        for parent in sorted(spec.dag.parents(v)):
            parent_term = spec.beta[parent, v] * values[:, parent]
            column = np.maximum(column, parent_term)
        values[:, v] = column
    return values


def sample_maxlinear(spec, n, seed):
    """Сгенерировать n векторов max-linear модели.

    Блоки генерируются независимыми потоками по ключу.
    """
    n = check_size(n)

    def draw(block):
        block_id, start, stop = block
        generator = stream(seed, block_id)
        return _structural_block(
            spec, _innovations(spec, generator, stop - start)
        )

    parts = parallel_map(draw, blocks(n))
    logger.debug("sampled %s max-linear vectors in %s blocks", n, len(parts))
    return np.concatenate(parts, axis=0)


def sample_pareto_conditional(m, v, n, seed):
    """Сгенерировать Y ∼ P_R при R = {y_v ≥ 1} для лучевой меры m.

    Луч j выбирается с вероятностью ∝ c_j w_vj^α, радиус T имеет
    закон Парето(α) с порогом 1/w_vj.
    """
    n = check_size(n)
    check_known(range(m.d), {v})
    loads = np.where(m.directions[:, v] > 0,
                     m.scales * m.directions[:, v] ** m.alpha, 0.0)
    if not np.any(loads > 0):
        raise UnchargedDirection(f"Ни один луч не заряжает координату {v}.")
    probabilities = loads / loads.sum()

    def draw(block):
        block_id, start, stop = block
        generator = stream(seed, block_id)
        size = stop - start
        rays = generator.choice(len(loads), size=size, p=probabilities)
        uniform = 1.0 - generator.random(size)
        radius = uniform ** (-1.0 / m.alpha) / m.directions[rays, v]
        return radius[:, None] * m.directions[rays]

    return np.concatenate(parallel_map(draw, blocks(n)), axis=0)
