"""Плотности на произведении сеток с нулевыми атомами по осям.

Мера μ = ⊗(dx + δ0) дискретизируется так: положительные узлы оси
получают трапецеидальные веса, нулевой атом получает вес 1.
Маргинали считаются точными дискретными суммами, поэтому
произведения блоков факторизуются на сетке с машинной точностью.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import integrate

from core.exceptions import (
    DimensionMismatch, EpsBelowGrid, InconsistentMargins, InputError,
    MarginMismatch, NotForest
)
from core.reports import CIReport, MarkovAudit
from core.utils import (
    as_index_set, check_disjoint, check_known, check_nonempty,
    check_tolerance, tuning
)
from graphs.algorithms import clique_ordering, separates
from graphs.structures import UndirectedGraph

logger = logging.getLogger(__name__)

NODES_ERROR = (
    "Узлы сетки должны быть положительными, возрастающими, не менее двух."
)


@dataclass(frozen=True, eq=False)
class AxisGrid:
    nodes: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        if (nodes.ndim != 1 or len(nodes) < 2 or nodes[0] <= 0
                or np.any(np.diff(nodes) <= 0)):
            raise InputError(NODES_ERROR)
        nodes.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)

    @classmethod
    def geometric(cls, low, high, count):
        return cls(np.geomspace(low, high, int(count)))

    @cached_property
    def points(self):
        return np.concatenate([[0.0], self.nodes])

    @cached_property
    def weights(self):
        """Вернуть веса μ: 1 для нулевого атома, трапеция для узлов."""
        g = self.nodes
        trapezoid = np.empty_like(g)
        trapezoid[0] = (g[1] - g[0]) / 2
        trapezoid[-1] = (g[-1] - g[-2]) / 2
        trapezoid[1:-1] = (g[2:] - g[:-2]) / 2
        return np.concatenate([[1.0], trapezoid])

    def __len__(self):
        return len(self.nodes)

    def same_as(self, other):
        return (len(self) == len(other)
                and np.array_equal(self.nodes, other.nodes))


def _expand(values, index, d):
    """Расширить таблицу по осям index до формы, совместимой с d осями."""
    index = list(index)
    shape = [
        values.shape[index.index(v)] if v in index else 1 for v in range(d)
    ]
    return np.reshape(values, shape)


def _face_slice(face, d):
    return tuple(slice(1, None) if v in face else 0 for v in range(d))


@dataclass(frozen=True, eq=False)
class GridMeasure:
    """Плотность λ на сетке; значение в начале координат не используется."""

    axes: tuple
    density: np.ndarray

    def __post_init__(self):
        density = np.array(self.density, dtype=float)
        shape = tuple(len(axis) + 1 for axis in self.axes)
        if density.shape != shape:
            raise DimensionMismatch(
                f"Форма плотности {density.shape} не совпадает "
                f"с сеткой {shape}."
            )
        if not np.all(np.isfinite(density)) or np.any(density < 0):
            raise InputError(
                "Плотность должна быть конечной и неотрицательной."
            )
        density[(0,) * len(shape)] = 0.0
        density.setflags(write=False)
        object.__setattr__(self, "axes", tuple(self.axes))
        object.__setattr__(self, "density", density)

    @classmethod
    def from_faces(cls, axes, faces):
        """Собрать меру из таблиц плотности по граням {D: массив}."""
        axes = tuple(axes)
        density = np.zeros(tuple(len(axis) + 1 for axis in axes))
        for face, values in faces.items():
            face = as_index_set(face)
            check_nonempty(face, "face")
            check_known(range(len(axes)), face)
            target = _face_slice(face, len(axes))
            density[target] = np.reshape(values, density[target].shape)
        return cls(axes, density)

    @property
    def d(self):
        return len(self.axes)

    @cached_property
    def mu(self):
        weights = np.ones(self.density.shape)
        for v, axis in enumerate(self.axes):
            weights = weights * _expand(axis.weights, (v,), self.d)
        return weights

    def face(self, face):
        return self.density[_face_slice(as_index_set(face), self.d)]

    def faces(self):
        """Перебрать все непустые грани с их таблицами."""
        for size in range(1, self.d + 1):
            for face in itertools.combinations(range(self.d), size):
                yield frozenset(face), self.face(face)

    def charged_faces(self):
        return {face for face, values in self.faces() if np.any(values > 0)}

    def coordinates(self, index):
        return [float(axis.points[i]) for axis, i in zip(self.axes, index)]


@dataclass(frozen=True, eq=False)
class ModifiedDensity:
    """Таблица λ̄_D на подсетке D, включая 0_D, где λ̄_D(0_D) = 1."""

    index: tuple
    axes: tuple
    values: np.ndarray
    margins: tuple = None


def marginal_measure(m, dset):
    """Вернуть GridMeasure маргинальной меры Λ_D."""
    dset = sorted(as_index_set(dset))
    check_nonempty(dset)
    check_known(range(m.d), dset)
    table = m.density
    for v in sorted(set(range(m.d)) - set(dset), reverse=True):
        table = np.tensordot(table, m.axes[v].weights, axes=([v], [0]))
    return GridMeasure(tuple(m.axes[v] for v in dset), table)


def marginal_density(m, dset):
    """Вычислить модифицированную плотность λ̄_D.

    Лишние оси суммируются с весами квадратуры.
    """
    dset = sorted(as_index_set(dset))
    marginal = marginal_measure(m, dset)
    values = np.array(marginal.density)
    values[(0,) * len(dset)] = 1.0
    return ModifiedDensity(tuple(dset), marginal.axes, values)


def _bar(m, dset):
    if not dset:
        return 1.0
    density = marginal_density(m, dset)
    return _expand(density.values, density.index, m.d)


def _plain(m, dset):
    density = marginal_density(m, dset)
    values = np.array(density.values)
    values[(0,) * len(dset)] = 0.0
    return _expand(values, density.index, m.d)


def _nonzero(m, v):
    return _expand(np.arange(len(m.axes[v]) + 1) > 0, (v,), m.d)


def _any_nonzero(m, vertices):
    mask = np.zeros((1,) * m.d, dtype=bool)
    for v in vertices:
        mask = mask | _nonzero(m, v)
    return mask


def _all_zero(m, vertices):
    return ~_any_nonzero(m, vertices)


def _defect(lhs, rhs):
    """Относительное расхождение; там, где обе стороны ≤ atol, оно нулевое."""
    atol = tuning("GRID_ZERO_ATOL")
    lhs, rhs = np.broadcast_arrays(lhs, rhs)
    scale = np.maximum(np.abs(lhs), np.abs(rhs))
    defect = np.zeros(scale.shape)
    big = scale > atol
    defect[big] = np.abs(lhs[big] - rhs[big]) / scale[big]
    return defect, lhs, rhs


def _worst(m, defect, lhs, rhs, region):
    defect = np.where(region, defect, 0.0)
    index = np.unravel_index(int(np.argmax(defect)), defect.shape)
    return {
        "max_defect": float(defect[index]),
        "worst_point": m.coordinates(index),
        "lhs": float(lhs[index]),
        "rhs": float(rhs[index]),
    }


def ci_check(m, a, b, c=frozenset(), tol=None):
    """Проверить λ̄ λ̄_C = λ̄_{A∪C} λ̄_{B∪C} вне {y_A≠0, y_B≠0, y_C=0}."""
    tol = check_tolerance(tuning("GRID_TOL") if tol is None else tol)
    a, b, c = as_index_set(a), as_index_set(b), as_index_set(c)
    check_nonempty(a, "a")
    check_nonempty(b, "b")
    check_known(range(m.d), a, b, c)
    check_disjoint(a=a, b=b, c=c)
    axes = sorted(a | b | c)
    if len(axes) < m.d:
        position = {v: i for i, v in enumerate(axes)}
        report = ci_check(
            marginal_measure(m, axes),
            {position[v] for v in a},
            {position[v] for v in b},
            {position[v] for v in c},
            tol,
        )
        return CIReport.build(a, b, c, report.verdict, report.witness)
    lhs = np.array(m.density)
    lhs[(0,) * m.d] = 1.0
    lhs = lhs * _bar(m, c)
    rhs = _bar(m, a | c) * _bar(m, b | c)
    excluded = _any_nonzero(m, a) & _any_nonzero(m, b) & _all_zero(m, c)
    defect, lhs, rhs = _defect(lhs, rhs)
    witness = _worst(m, defect, lhs, rhs, ~excluded)
    logger.debug("ci_check %s|%s|%s defect %.3e", sorted(a), sorted(b),
                 sorted(c), witness["max_defect"])
    return CIReport.build(a, b, c, witness["max_defect"] <= tol, witness)


def _check_graph(m, g):
    if sorted(g.vertices) != list(range(m.d)):
        raise DimensionMismatch(
            f"Вершины графа {sorted(g.vertices)} не совпадают "
            f"с осями 0..{m.d - 1}."
        )


def zero_set_mask(g, m, ordering=None):
    """Вернуть индикатор Z(g) = ∪ {y_a≠0, y_b≠0, y_S=0} на сетке m."""
    ordering = ordering or clique_ordering(g)
    mask = np.zeros(m.density.shape, dtype=bool)
    for s in set(ordering.separators):
        rest = [v for v in g.vertices if v not in s]
        for u, v in itertools.combinations(rest, 2):
            if separates(g, {u}, {v}, s):
                mask |= _nonzero(m, u) & _nonzero(m, v) & _all_zero(m, s)
    return mask


def hc_check(m, g, tol=None):
    """Проверить факторизацию λ̄ ∏ λ̄_S = ∏ λ̄_C вне Z(g).

    На множестве Z(g) плотность должна быть нулевой.
    """
    tol = check_tolerance(tuning("GRID_TOL") if tol is None else tol)
    _check_graph(m, g)
    ordering = clique_ordering(g)
    zero_set = zero_set_mask(g, m, ordering)
    lhs = np.array(m.density)
    lhs[(0,) * m.d] = 1.0
    for s in ordering.separators:
        lhs = lhs * _bar(m, s)
    rhs = np.ones((1,) * m.d)
    for clique in ordering.cliques:
        rhs = rhs * _bar(m, clique)
    defect, lhs, rhs = _defect(lhs, rhs)
    witness = _worst(m, defect, lhs, rhs, ~zero_set)
    audit = MarkovAudit()
    audit.add("factorization", {"V": g.vertices},
              witness["max_defect"] <= tol, witness)
    leak = float(np.max(m.density[zero_set], initial=0.0))
    audit.add("zero_set", {"V": g.vertices},
              leak <= tuning("GRID_ZERO_ATOL"), {"max_density": leak})
    logger.debug("hc_check defect %.3e, zero-set leak %.3e",
                 witness["max_defect"], leak)
    return audit


def plain_factorization_check(m, g, tol=None):
    """Проверить λ ∏ λ_S = ∏ λ_C для обычных плотностей.

    Область проверки: все координаты сепараторов ненулевые.
    """
    tol = check_tolerance(tuning("GRID_TOL") if tol is None else tol)
    _check_graph(m, g)
    ordering = clique_ordering(g)
    separator_vertices = set().union(*ordering.separators)
    region = np.ones((1,) * m.d, dtype=bool)
    for v in separator_vertices:
        region = region & _nonzero(m, v)
    region = region & _any_nonzero(m, range(m.d))
    lhs = m.density
    for s in ordering.separators:
        if s:
            lhs = lhs * _plain(m, s)
    rhs = np.ones((1,) * m.d)
    for clique in ordering.cliques:
        rhs = rhs * _plain(m, clique)
    defect, lhs, rhs = _defect(lhs, rhs)
    region = np.broadcast_to(region, defect.shape)
    witness = _worst(m, defect, lhs, rhs, region)
    audit = MarkovAudit()
    audit.add("plain_factorization", {"V": g.vertices},
              witness["max_defect"] <= tol, witness)
    return audit


def _edge_block(blocks, u, v):
    if (u, v) in blocks:
        return blocks[u, v].values, blocks[u, v]
    if (v, u) in blocks:
        return blocks[v, u].values.T, blocks[v, u]
    raise InputError(f"Нет блока плотности для ребра ({u}, {v}).")


def _block_margins(block):
    if block.margins is not None:
        return dict(zip(block.index, block.margins))
    values = block.values
    first = values @ block.axes[1].weights
    second = block.axes[0].weights @ values
    first[0] = second[0] = 1.0
    return {block.index[0]: first, block.index[1]: second}


def _collect_margins(g, blocks, vertex_densities):
    axes, margins = {}, {}
    for edge in g.edges:
        u, v = sorted(edge)
        _, block = _edge_block(blocks, u, v)
        for w, axis in zip(block.index, block.axes):
            if w in axes and not axes[w].same_as(axis):
                raise InconsistentMargins(f"Разные сетки у вершины {w}.")
            axes[w] = axis
        for w, margin in _block_margins(block).items():
            margin = np.asarray(margin, dtype=float)
            if w in margins and not np.allclose(
                margins[w], margin, rtol=1e-9, atol=0
            ):
                raise InconsistentMargins(
                    f"Маргинали у вершины {w} не совпадают."
                )
            margins[w] = margin
    for v, density in (vertex_densities or {}).items():
        axes[v] = density.axes[0]
        margins[v] = np.asarray(density.values, dtype=float)
    missing = set(g.vertices) - set(axes)
    if missing:
        raise InputError(f"Для вершин {sorted(missing)} нет плотностей.")
    return axes, margins


def synthesize_forest(g, blocks, vertex_densities=None):
    """Собрать плотность леса: λ̄ = ∏ λ̄_ij / ∏ λ̄_i^{deg(i)-1} вне Z(g)."""
    if not g.is_forest():
        raise NotForest("Граф должен быть лесом.")
    if sorted(g.vertices) != list(range(len(g))):
        raise DimensionMismatch(
            "Вершины леса должны быть пронумерованы 0..d-1."
        )
    axes, margins = _collect_margins(g, blocks, vertex_densities)
    d = len(g)
    bar = np.ones((1,) * d)
    for edge in g.edges:
        u, v = sorted(edge)
        values, _ = _edge_block(blocks, u, v)
        bar = bar * _expand(values, (u, v), d)
    for v in g.vertices:
        power = g.degree(v) - 1
        margin = _expand(margins[v], (v,), d)
        if power < 0:
            bar = bar * margin
        elif power > 0:
            shape = np.broadcast_shapes(bar.shape, margin.shape)
            bar = np.divide(
                bar, margin ** power, out=np.zeros(shape), where=margin > 0
            )
    measure_axes = tuple(axes[v] for v in range(d))
    bar = np.broadcast_to(bar, tuple(len(axis) + 1 for axis in measure_axes))
    skeleton = GridMeasure(measure_axes, np.zeros(bar.shape))
    density = np.where(zero_set_mask(g, skeleton), 0.0, bar)
    return GridMeasure(measure_axes, density)


def pareto_margin(y):
    return np.asarray(y, dtype=float) ** -2.0


def _margin_defect(kappa, m, nodes):
    worst = 0.0
    for y in nodes:
        target = float(m(y))
        for swap in (False, True):
            def integrand(s):
                t = y * np.exp(s)
                value = kappa(t, y) if swap else kappa(y, t)
                return float(value) * t
            value, _ = integrate.quad(integrand, -np.inf, np.inf, limit=200)
            worst = max(worst, abs(value - target) / target)
    return worst


def bivariate_block(p, kappa, m, first, second):
    """Блок §5.4: p·κ на положительной грани, (1-p)·m на осях, 1 в нуле."""
    q = 1.0 - p
    y1 = first.nodes[:, None]
    y2 = second.nodes[None, :]
    values = np.empty((len(first) + 1, len(second) + 1))
    values[0, 0] = 1.0
    values[1:, 0] = q * m(first.nodes)
    values[0, 1:] = q * m(second.nodes)
    values[1:, 1:] = p * kappa(y1, y2)
    margins = (
        np.concatenate([[1.0], m(first.nodes)]),
        np.concatenate([[1.0], m(second.nodes)]),
    )
    return values, margins


def generic_trivariate(p12, p23, kappa12, kappa23, m, grids):
    """Построить трёхмерную цепь из двух блоков §5.4 с общей маргиналью m."""
    if isinstance(grids, AxisGrid):
        grids = (grids,) * 3
    for p in (p12, p23):
        if not 0.0 <= p <= 1.0:
            raise InputError("Вероятности смеси должны лежать в [0, 1].")
    rtol = tuning("MARGIN_RTOL")
    for kappa, pair in ((kappa12, grids[:2]), (kappa23, grids[1:])):
        nodes = np.unique(np.concatenate([axis.nodes for axis in pair]))
        defect = _margin_defect(kappa, m, nodes)
        if defect > rtol:
            raise MarginMismatch(
                f"Маргинали κ отличаются от m на {defect:.2e} (допуск {rtol})."
            )
    blocks = {}
    for (u, v), p, kappa in (((0, 1), p12, kappa12), ((1, 2), p23, kappa23)):
        values, margins = bivariate_block(p, kappa, m, grids[u], grids[v])
        blocks[u, v] = ModifiedDensity(
            (u, v), (grids[u], grids[v]), values, margins
        )
    chain = UndirectedGraph.build(range(3), [(0, 1), (1, 2)])
    return synthesize_forest(chain, blocks)


def total_mass_tail(m, eps):
    """Вычислить Λ(E ∖ [0, ε]^d) квадратурой по сетке."""
    smallest = min(float(axis.nodes[0]) for axis in m.axes)
    if eps < smallest:
        raise EpsBelowGrid(f"ε = {eps} меньше наименьшего узла {smallest}.")
    outside = np.zeros((1,) * m.d, dtype=bool)
    for v, axis in enumerate(m.axes):
        outside = outside | _expand(axis.points > eps, (v,), m.d)
    return float(np.sum(np.where(outside, m.density * m.mu, 0.0)))
