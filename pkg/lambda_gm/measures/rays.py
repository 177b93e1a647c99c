"""Однородные меры на лучах и рекурсивные max-linear модели на DAG."""
import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from core.exceptions import (
    InputError, NotStandardized, UnchargedCoordinate, UnsupportedInnovation
)
from core.reports import CIReport, MarkovAudit
from core.utils import as_index_set, check_disjoint, check_known, tuning
from graphs.algorithms import dg_separated
from measures.validators import (
    validate_alpha, validate_dimension, validate_points, validate_weights
)

logger = logging.getLogger(__name__)

DIRECTION_ERROR = "Направление луча должно быть ненулевым и неотрицательным."
BETA_ERROR = "Коэффициенты beta должны быть положительными."
MODES = ("max", "sum")


@dataclass(frozen=True, eq=False)
class RayMeasure:
    """Мера Λ = Σ_j η_j(t: t·w_j ∈ ·) с η_j((t, ∞)) = c_j t^{−α}."""

    d: int
    alpha: float
    directions: np.ndarray
    scales: np.ndarray

    @classmethod
    def build(cls, d, alpha, rays=()):
        d = validate_dimension(d)
        alpha = validate_alpha(alpha)
        merged = defaultdict(float)
        for direction, scale in rays:
            direction = validate_points([direction], d)[0]
            if np.any(direction < 0) or not np.any(direction > 0):
                raise InputError(DIRECTION_ERROR)
            weight = float(validate_weights([scale])[0])
            merged[tuple(direction + 0.0)] += weight
        keys = sorted(merged)
        directions = np.array(keys, dtype=float).reshape(len(keys), d)
        scales = np.array([merged[k] for k in keys], dtype=float)
        directions.setflags(write=False)
        scales.setflags(write=False)
        return cls(d, alpha, directions, scales)

    def rays(self):
        return [
            (tuple(w), float(c))
            for w, c in zip(self.directions, self.scales)
        ]

    def __len__(self):
        return len(self.scales)

    def charged_faces(self):
        return {
            frozenset(np.flatnonzero(w).tolist()) for w in self.directions
        }

    def marginal_masses(self):
        """Вернуть Λ(y_i > 1) для каждой координаты."""
        weighted = self.scales[:, None] * self.directions ** self.alpha
        return weighted.sum(axis=0)


@dataclass(frozen=True)
class Innovation:
    """Радиальный закон инновации: Фреше(alpha, scale) или равномерный."""

    kind: str = "frechet"
    alpha: float = 1.0
    scale: float = 1.0

    def __post_init__(self):
        if self.kind not in ("frechet", "uniform"):
            raise UnsupportedInnovation(
                f"Неизвестный тип инновации {self.kind}."
            )
        if not (self.alpha > 0 and self.scale > 0):
            raise InputError("Параметры инновации должны быть положительными.")


@dataclass(frozen=True)
class MaxLinearSpec:
    """Рекурсивная модель X_i = ⋁ β_ij X_j ∨ β_ii ε_i на DAG."""

    dag: object
    beta: dict
    diag: dict
    innovations: tuple

    @classmethod
    def build(cls, dag, beta, diag=None, innovations=None, alpha=1.0):
        if list(dag.vertices) != list(range(len(dag))):
            raise InputError("Вершины DAG должны быть пронумерованы 0..d-1.")
        beta = {(int(p), int(ch)): float(v) for (p, ch), v in beta.items()}
        if set(beta) != set(dag.arcs):
            raise InputError(
                "Коэффициенты beta должны быть заданы ровно для дуг графа."
            )
        diag = {v: float((diag or {}).get(v, 1.0)) for v in dag.vertices}
        if any(v <= 0 for v in [*beta.values(), *diag.values()]):
            raise InputError(BETA_ERROR)
        if innovations is None:
            innovations = [Innovation("frechet", alpha, 1.0)] * len(dag)
        return cls(dag, beta, diag, tuple(innovations))

    @property
    def d(self):
        return len(self.dag.vertices)


def gamma_matrix(spec, mode="max"):
    """Вычислить γ_ij по путям j → i динамическим программированием.

    Путь начинается переходом (j → j), поэтому γ_jj = β_jj.
    """
    if mode not in MODES:
        raise InputError(f"Режим должен быть одним из {MODES}.")
    index = {v: i for i, v in enumerate(spec.dag.vertices)}
    gamma = np.zeros((spec.d, spec.d))
    combine = np.maximum if mode == "max" else np.add
    for v in spec.dag.topological_order:
        row = np.zeros(spec.d)
        for parent in spec.dag.parents(v):
            row = combine(row, spec.beta[parent, v] * gamma[index[parent]])
        row[index[v]] = spec.diag[v]
        gamma[index[v]] = row
    return gamma


def from_maxlinear(spec, mode="max"):
    """Построить меру экспоненты: по лучу γ_{·j} на каждую инновацию."""
    kinds = {inn.kind for inn in spec.innovations}
    alphas = {inn.alpha for inn in spec.innovations}
    if kinds != {"frechet"} or len(alphas) != 1:
        raise UnsupportedInnovation(
            "Точная лучевая форма требует инноваций Фреше с общим alpha."
        )
    alpha = alphas.pop()
    gamma = gamma_matrix(spec, mode)
    return RayMeasure.build(
        spec.d,
        alpha,
        [(gamma[:, j], inn.scale ** alpha)
         for j, inn in enumerate(spec.innovations)],
    )


def project(m, axes):
    axes = sorted(axes)
    return RayMeasure.build(
        len(axes),
        m.alpha,
        [
            (w[axes], c)
            for w, c in zip(m.directions, m.scales)
            if np.any(w[axes])
        ],
    )


def rectangle_mass(m, lower, upper):
    """Вычислить Λ(×_v (lower_v, upper_v]) в замкнутой форме."""
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    total = 0.0
    for w, c in zip(m.directions, m.scales):
        positive = w > 0
        if np.any(~positive & ~((lower < 0) & (upper >= 0))):
            continue
        lo = max(0.0, np.max(lower[positive] / w[positive]))
        hi = np.min(upper[positive] / w[positive])
        if hi <= lo:
            continue
        if lo == 0.0:
            return np.inf
        total += c * (lo ** -m.alpha - hi ** -m.alpha)
    return total


def exponent_function(m, x):
    """Вернуть Λ(E₊ ∖ [0, x]) = Σ_j c_j max_i (w_ij / x_i)^α."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise InputError("Точка x должна быть положительной.")
    ratios = np.max(m.directions / x, axis=1)
    return float(np.sum(m.scales * ratios ** m.alpha))


def _close(x, y, rtol):
    scale = np.maximum(np.abs(x), np.abs(y))
    return bool(np.all(np.abs(x - y) <= rtol * scale))


def _cluster(vectors, rtol):
    """Сгруппировать векторы, совпадающие с относительной точностью rtol."""
    representatives, labels = [], []
    for vector in vectors:
        for k, rep in enumerate(representatives):
            if _close(vector, rep, rtol):
                labels.append(k)
                break
        else:
            representatives.append(vector)
            labels.append(len(representatives) - 1)
    return representatives, labels


def _class_defect(values_a, values_b, weights, rtol):
    _, la = _cluster(values_a, rtol)
    _, lb = _cluster(values_b, rtol)
    table = np.zeros((max(la) + 1, max(lb) + 1))
    for i, j, weight in zip(la, lb, weights):
        table[i, j] += weight
    table /= table.sum()
    product = np.outer(table.sum(axis=1), table.sum(axis=0))
    return float(np.max(np.abs(table - product)))


def ci_oracle_rays(m, a, b, c=frozenset()):
    """Точно проверить a ⊥ b | c для однородной меры на лучах.

    Лучи с ненулевой c-частью делятся на классы пропорциональности;
    внутри класса значения (w_a/λ, w_b/λ) с весами c·λ^α должны
    образовывать произведение. Лучи с нулевой c-частью не могут
    одновременно заряжать a и b.
    """
    a, b, c = as_index_set(a), as_index_set(b), as_index_set(c)
    check_known(range(m.d), a, b, c)
    check_disjoint(a=a, b=b, c=c)
    if not a or not b:
        return CIReport.build(a, b, c, True)
    rtol = tuning("RAY_RTOL")
    axes = sorted(a | b | c)
    pm = project(m, axes)
    position = {v: i for i, v in enumerate(axes)}
    ia, ib, ic = ([position[v] for v in sorted(s)] for s in (a, b, c))
    classes = defaultdict(list)
    for w, scale in zip(pm.directions, pm.scales):
        wc = w[ic]
        if not np.any(wc > 0):
            if np.any(w[ia] > 0) and np.any(w[ib] > 0):
                witness = {"kind": "joint_support", "axes": axes,
                           "direction": w.tolist()}
                return CIReport.build(a, b, c, False, witness)
            continue
        first = int(np.flatnonzero(wc)[0])
        lam = wc[first]
        classes[first, tuple(wc > 0)].append((wc / lam, w, scale, lam))
    for members in classes.values():
        representatives, labels = _cluster([u for u, *_ in members], rtol)
        for k, rep in enumerate(representatives):
            group = [mem for mem, lab in zip(members, labels) if lab == k]
            defect = _class_defect(
                [w[ia] / lam for _, w, _, lam in group],
                [w[ib] / lam for _, w, _, lam in group],
                [scale * lam ** pm.alpha for _, _, scale, lam in group],
                rtol,
            )
            if defect > rtol:
                witness = {"kind": "class", "axes": axes,
                           "class_direction": rep.tolist(), "defect": defect}
                return CIReport.build(a, b, c, False, witness)
    return CIReport.build(a, b, c, True)


def _local_audit(spec, m, audit):
    dag = spec.dag
    for v in dag.vertices:
        parents = dag.parents(v)
        rest = set(dag.vertices) - dag.descendants(v) - {v} - parents
        sets = {"v": {v}, "nd": rest, "pa": parents}
        if not rest:
            audit.add("DL", sets, True)
            continue
        report = ci_oracle_rays(m, {v}, rest, parents)
        audit.add("DL", sets, report.verdict, report.witness)


def _global_audit(spec, m, audit):
    vertices = spec.dag.vertices
    for labels in itertools.product(range(4), repeat=len(vertices)):
        a, b, s = (frozenset(v for v, k in zip(vertices, labels) if k == n)
                   for n in (1, 2, 3))
        if not a or not b or not dg_separated(spec.dag, a, b, s):
            continue
        report = ci_oracle_rays(m, a, b, s)
        audit.add(
            "DG", {"A": a, "B": b, "S": s}, report.verdict, report.witness
        )


def verify_directed_markov(spec, level="local", mode="max"):
    """Проверить локальное (DL) или глобальное (DG) свойство Маркова."""
    if level not in ("local", "global"):
        raise InputError("Уровень должен быть local или global.")
    m = from_maxlinear(spec, mode)
    audit = MarkovAudit()
    if level == "local":
        _local_audit(spec, m, audit)
    else:
        _global_audit(spec, m, audit)
    logger.debug("directed markov (%s): %s queries, %s violations",
                 level, len(audit.entries), len(audit.violations))
    return audit


def standardize_margins(m):
    """Перемасштабировать координаты так, чтобы Λ(y_i > u) = u^{−α}."""
    masses = m.marginal_masses()
    if np.any(masses <= 0):
        raise UnchargedCoordinate(
            f"Координаты {np.flatnonzero(masses <= 0).tolist()} не заряжены."
        )
    factors = masses ** (1.0 / m.alpha)
    return RayMeasure.build(
        m.d,
        m.alpha,
        [(w / factors, c) for w, c in zip(m.directions, m.scales)],
    )


def chi_rays(m, i, j):
    """Вернуть коэффициент экстремальной корреляции χ_ij."""
    check_known(range(m.d), {i, j})
    if i == j:
        return 1.0
    masses = m.marginal_masses()
    if not _close(masses, np.full_like(masses, masses[0]), tuning("RAY_RTOL")):
        raise NotStandardized("Маргинали меры не совпадают.")
    joint = np.minimum(m.directions[:, i], m.directions[:, j]) ** m.alpha
    return float(np.sum(m.scales * joint) / masses[i])
