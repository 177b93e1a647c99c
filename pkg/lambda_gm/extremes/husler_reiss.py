"""Блоки Хюслера–Райсса и лесные модели с массой на подгранях."""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import signal, stats

from core.exceptions import (
    DomainError, InputError, NotForest, QuadratureBudgetExceeded
)
from core.utils import check_known, tuning
from extremes.special import Phi
from measures.grid import (
    AxisGrid, GridMeasure, ModifiedDensity, bivariate_block, pareto_margin,
    synthesize_forest
)

logger = logging.getLogger(__name__)

GAMMA_ERROR = "Параметр Γ должен быть положительным."
CAVEAT_GAMMA = np.array([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]])


def _check_gamma(gamma):
    gamma = float(gamma)
    if not gamma > 0 or not math.isfinite(gamma):
        raise InputError(GAMMA_ERROR)
    return gamma


def _positive(*arrays):
    arrays = [np.asarray(a, dtype=float) for a in arrays]
    for a in arrays:
        if np.any(~(a > 0)):
            raise DomainError(
                "Аргументы плотности должны быть положительными."
            )
    return arrays


def hr_density(gamma):
    """Вернуть −3-однородную двумерную плотность Хюслера–Райсса."""
    gamma = _check_gamma(gamma)
    norm = 1.0 / math.sqrt(2 * math.pi * gamma)

    def density(y1, y2):
        y1, y2 = _positive(y1, y2)
        z = np.log(y2 / y1) + gamma / 2
        value = norm * np.exp(-z * z / (2 * gamma)) / (y1 * y1 * y2)
        return float(value) if value.ndim == 0 else value

    return density


def hr_density_multi(gamma_matrix):
    """Вернуть d-мерную плотность меры экспоненты по вариограмме Γ."""
    gamma = np.asarray(gamma_matrix, dtype=float)
    d = gamma.shape[0]
    if gamma.shape != (d, d) or d < 2 or not np.allclose(gamma, gamma.T):
        raise InputError(
            "Вариограмма должна быть симметричной матрицей d×d, d ≥ 2."
        )
    sigma = (gamma[1:, :1] + gamma[:1, 1:] - gamma[1:, 1:]) / 2
    try:
        normal = stats.multivariate_normal(mean=np.zeros(d - 1), cov=sigma)
    except (ValueError, np.linalg.LinAlgError) as error:
        raise InputError(
            "Вариограмма не является условно отрицательно определённой."
        ) from error
    shift = gamma[1:, 0] / 2

    def density(y):
        (y,) = _positive(y)
        tilde = np.log(y[..., 1:] / y[..., :1]) + shift
        value = np.asarray(normal.pdf(tilde)).reshape(y.shape[:-1])
        return value / (y[..., 0] ** 2 * np.prod(y[..., 1:], axis=-1))

    return density


@lru_cache(maxsize=None)
def _announce_sign_convention():
    logger.warning(
        "Функция экспоненты Хюслера–Райсса вычисляется с положительными "
        "знаками: вариант со знаком минус дал бы отрицательную меру."
    )


def hr_exponent_biv(gamma):
    """Вернуть V(x) = Λ(E₊ ∖ [0, x]) двумерной модели Хюслера–Райсса."""
    gamma = _check_gamma(gamma)
    root = math.sqrt(gamma)
    _announce_sign_convention()

    def exponent(x1, x2):
        x1, x2 = _positive(x1, x2)
        ratio = np.log(x2 / x1) / root
        value = Phi(root / 2 + ratio) / x1 + Phi(root / 2 - ratio) / x2
        return float(value) if np.ndim(value) == 0 else value

    return exponent


@dataclass(frozen=True)
class HRForestSpec:
    """Лес с параметрами Γ_e и вероятностями смеси p_e на рёбрах."""

    forest: object
    gamma: dict
    p: dict

    @classmethod
    def build(cls, forest, gamma, p=None):
        if not forest.is_forest():
            raise NotForest("Граф модели Хюслера–Райсса должен быть лесом.")
        edges = {frozenset(e) for e in forest.edges}
        gamma = {frozenset(e): _check_gamma(v) for e, v in gamma.items()}
        p = {frozenset(e): float(v) for e, v in (p or {}).items()}
        p = {e: p.get(e, 1.0) for e in edges}
        if set(gamma) != edges:
            raise InputError("Γ должна быть задана ровно для рёбер леса.")
        if any(not 0.0 <= v <= 1.0 for v in p.values()):
            raise InputError("Вероятности смеси должны лежать в [0, 1].")
        return cls(forest, gamma, p)

    def path_edges(self, i, j):
        path = self.forest.path(i, j)
        if path is None:
            return None
        return [frozenset(pair) for pair in zip(path, path[1:])]


def tree_complete_gamma(spec):
    """Дополнить Γ суммами по путям; для разных деревьев вернуть NaN."""
    vertices = spec.forest.vertices
    d = len(vertices)
    completed = np.full((d, d), np.nan)
    for a, i in enumerate(vertices):
        for b, j in enumerate(vertices):
            edges = spec.path_edges(i, j)
            if edges is not None:
                completed[a, b] = sum(spec.gamma[e] for e in edges)
    return completed


def _path_probability(spec, edges):
    return float(np.prod([spec.p[e] for e in edges]))


def chi_forest(spec):
    """Вычислить χ_ij = (2 − 2Φ(√Γ_ij/2))·∏ p_st по пути i–j."""
    vertices = spec.forest.vertices
    completed = tree_complete_gamma(spec)
    chi = np.zeros_like(completed)
    for a, i in enumerate(vertices):
        for b, j in enumerate(vertices):
            if a == b:
                chi[a, b] = 1.0
                continue
            edges = spec.path_edges(i, j)
            if edges is not None:
                tail = 2.0 - 2.0 * Phi(math.sqrt(completed[a, b]) / 2)
                chi[a, b] = tail * _path_probability(spec, edges)
    return chi


def _log_kernel(gamma, step):
    root = math.sqrt(gamma)
    low = math.floor((-gamma / 2 - 12 * root) / step)
    high = max(math.ceil((-gamma / 2 + 12 * root) / step), 0)
    offsets = np.arange(low, high + 1) * step
    return low, step * stats.norm.pdf(offsets, loc=-gamma / 2, scale=root)


def chi_quadrature(spec, i, j, step=0.005):
    """Проинтегрировать плотность леса по {y_i > 1, y_j > 1}.

    В логарифмической шкале s = log y внутренние вершины пути
    маргинализуются последовательными свёртками с гауссовским ядром
    условного перехода κ(y_s, y_t)/m(y_s).
    """
    check_known(spec.forest.vertices, {i, j})
    if i == j:
        return 1.0
    edges = spec.path_edges(i, j)
    if edges is None:
        return 0.0
    probability = _path_probability(spec, edges)
    if probability == 0.0:
        return 0.0
    gammas = [spec.gamma[e] for e in edges]
    total = sum(gammas)
    low = math.floor(-(total / 2 + 10 * math.sqrt(total) + 2) / step)
    high = math.ceil(40.0 / step)
    size = (high - low + 1) * len(gammas)
    if size > tuning("QUADRATURE_MAX_POINTS"):
        raise QuadratureBudgetExceeded(
            f"Квадратура требует {size} узлов, что больше допустимого."
        )
    grid = np.arange(low, high + 1) * step
    mass = np.where(grid >= 0, step * np.exp(-np.maximum(grid, 0.0)), 0.0)
    mass[grid == 0] *= 0.5
    for gamma in gammas:
        offset, kernel = _log_kernel(gamma, step)
        full = signal.fftconvolve(mass, kernel)
        mass = np.clip(full[-offset:-offset + len(grid)], 0.0, None)
    inside = np.where(grid > 0, mass, 0.0).sum() + 0.5 * mass[grid == 0].sum()
    return float(probability * inside)


def _axes(grids, d):
    if isinstance(grids, AxisGrid):
        return (grids,) * d
    grids = tuple(grids)
    if len(grids) != d:
        raise InputError(f"Нужно {d} сеток, получено {len(grids)}.")
    return grids


def build_grid(spec, grids):
    """Построить плотность леса Хюслера–Райсса на сетке."""
    forest = spec.forest
    axes = _axes(grids, len(forest))
    blocks = {}
    for edge in forest.edges:
        u, v = sorted(edge)
        values, margins = bivariate_block(
            spec.p[edge], hr_density(spec.gamma[edge]), pareto_margin,
            axes[u], axes[v],
        )
        blocks[u, v] = ModifiedDensity(
            (u, v), (axes[u], axes[v]), values, margins
        )
    isolated = {
        v: ModifiedDensity(
            (v,), (axes[v],),
            np.concatenate([[1.0], pareto_margin(axes[v].nodes)]),
        )
        for v in forest.vertices if forest.degree(v) == 0
    }
    return synthesize_forest(forest, blocks, isolated)


def _discrete_tail_block(gamma, margin, axis):
    """Блок HR со строками, перенормированными к заданной маргинали."""
    y = axis.nodes
    w = axis.weights[1:]
    raw = hr_density(gamma)(y[:, None], y[None, :])
    return raw * (margin / (raw @ w))[:, None]


def caveat_chain(axis, gamma3=None, gamma34=1.0, gamma45=1.0):
    """Построить пятизвенную цепь, нарушающую факторизацию λ̄.

    Грань {1,2,3} несёт трёхмерную плотность HR с вариограммой не
    древесного вида, полная грань несёт цепное произведение блоков
    с дискретно согласованными маргиналями. Обычная плотность
    факторизуется там, где ненулевые координаты сепараторов, а λ̄ нет.
    """
    if gamma3 is None:
        gamma3 = CAVEAT_GAMMA
    gamma3 = np.asarray(gamma3, dtype=float)
    y = axis.nodes
    w = axis.weights[1:]
    grid = np.stack(np.meshgrid(y, y, y, indexing="ij"), axis=-1)
    eta = hr_density_multi(gamma3)(grid)
    kappa01 = eta @ w
    kappa12 = np.tensordot(w, eta, axes=(0, 0))
    m1 = w @ kappa01
    m2 = w @ kappa12
    kappa23 = _discrete_tail_block(gamma34, m2, axis)
    m3 = w @ kappa23
    kappa34 = _discrete_tail_block(gamma45, m3, axis)
    full = np.einsum(
        "ij,jk,kl,lo->ijklo",
        kappa01 / m1[None, :], kappa12 / m2[None, :], kappa23 / m3[None, :],
        kappa34,
    )
    n = len(axis) + 1
    density = np.zeros((n,) * 5)
    density[1:, 1:, 1:, 1:, 1:] = full
    density[1:, 1:, 1:, 0, 0] = eta
    return GridMeasure((axis,) * 5, density)
