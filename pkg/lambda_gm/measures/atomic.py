"""Конечные атомарные меры на проколотом пространстве и точный CI-оракул."""
import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from core.exceptions import (
    DimensionMismatch, InputError, TooLarge, TooManyCells
)
from core.reports import CIReport, MarkovAudit
from core.utils import (
    as_index_set, check_disjoint, check_known, check_nonempty, tuning
)
from measures.validators import (
    ORIGIN_ERROR, validate_dimension, validate_points, validate_weights
)

logger = logging.getLogger(__name__)

CELLS_ERROR = "Число тестовых множеств 2^{log2} превышает предел 2^{limit}."


@dataclass(frozen=True, eq=False)
class AtomicMeasure:
    """Мера из конечного числа взвешенных атомов вне начала координат."""

    d: int
    points: np.ndarray
    weights: np.ndarray

    @classmethod
    def build(cls, d, atoms=()):
        """Собрать меру из пар (точка, вес), сложив веса совпадающих точек."""
        d = validate_dimension(d)
        merged = defaultdict(float)
        for point, weight in atoms:
            point = validate_points([point], d)[0]
            weight = float(validate_weights([weight])[0])
            if not np.any(point):
                raise InputError(ORIGIN_ERROR)
            merged[tuple(point + 0.0)] += weight
        return cls._from_merged(d, merged)

    @classmethod
    def _from_merged(cls, d, merged):
        keys = sorted(merged)
        points = np.array(keys, dtype=float).reshape(len(keys), d)
        weights = np.array([merged[k] for k in keys], dtype=float)
        points.setflags(write=False)
        weights.setflags(write=False)
        return cls(d, points, weights)

    def __len__(self):
        return len(self.weights)

    def atoms(self):
        return [
            (tuple(p), float(w)) for p, w in zip(self.points, self.weights)
        ]


def _project(m, dset, keep):
    dset = sorted(as_index_set(dset))
    check_nonempty(dset)
    check_known(range(m.d), dset)
    merged = defaultdict(float)
    for point, weight in zip(m.points, m.weights):
        if not keep(point):
            continue
        projected = tuple(point[dset] + 0.0)
        if any(projected):
            merged[projected] += weight
    return AtomicMeasure._from_merged(len(dset), merged)


def marginal(m, dset):
    """Вернуть маргинальную меру Λ_D.

    Атомы, попавшие в начало координат, отбрасываются.
    """
    return _project(m, dset, lambda point: True)


def restrict_zero(m, dset):
    """Вернуть ограниченную меру Λ⁰_D: остальные координаты равны нулю."""
    rest = [v for v in range(m.d) if v not in as_index_set(dset)]
    return _project(m, dset, lambda point: not np.any(point[rest]))


def charged_faces(m):
    return {frozenset(np.flatnonzero(point).tolist()) for point in m.points}


def _faces_of(m):
    if isinstance(m, AtomicMeasure):
        return charged_faces(m)
    return m.charged_faces()


def face_bound_check(m, g):
    """Проверить, что каждая заряженная грань связна в графе g."""
    if sorted(g.vertices) != list(range(m.d)):
        raise DimensionMismatch(
            f"Вершины графа {sorted(g.vertices)} не совпадают с "
            f"индексами меры 0..{m.d - 1}."
        )
    audit = MarkovAudit()
    for face in sorted(_faces_of(m), key=lambda f: (len(f), sorted(f))):
        audit.add("connected_face", {"D": face}, g.is_connected(face))
    return audit


class _ValueCells:
    """Наблюдаемые значения по осям и принадлежность атомов подмножествам.

    Любое борелевское произведение ×S_v высекает на носителе атомов
    произведение подмножеств наблюдаемых значений. Конечные множества
    замкнуты, поэтому 0 ∉ cl(R) равносильно тому, что хотя бы одна ось
    не содержит значения 0.
    """

    def __init__(self, m):
        self.m = m
        self.values = [np.unique(m.points[:, v]) for v in range(m.d)]
        self.index = np.column_stack(
            [np.searchsorted(vals, m.points[:, v])
             for v, vals in enumerate(self.values)]
        ) if len(m) else np.zeros((0, m.d), dtype=int)
        self.zero = [
            int(np.searchsorted(vals, 0.0)) if np.any(vals == 0) else None
            for vals in self.values
        ]
        self.log2_cells = sum(len(vals) for vals in self.values)

    def members(self, axis, value_mask):
        bits = 0
        for atom, value in enumerate(self.index[:, axis]):
            if value_mask >> int(value) & 1:
                bits |= 1 << atom
        return bits

    def value_mask(self, atom_bits, axis):
        mask = 0
        for atom in range(len(self.m)):
            if atom_bits >> atom & 1:
                mask |= 1 << int(self.index[atom, axis])
        return mask

    def avoids_origin(self, value_masks):
        return any(
            zero is None or not value_masks[axis] >> zero & 1
            for axis, zero in enumerate(self.zero)
        )

    def test_set(self, value_masks):
        return [
            [float(vals[i]) for i in range(len(vals)) if mask >> i & 1]
            for vals, mask in zip(self.values, value_masks)
        ]

    def atom_subsets(self):
        """Перечислить атомные следы допустимых тестовых множеств.

        След T достигается тогда и только тогда, когда минимальное
        произведение значений T не захватывает других атомов.
        """
        k = len(self.m)
        if k <= self.log2_cells:
            for bits in range(1, 1 << k):
                masks = [self.value_mask(bits, v) for v in range(self.m.d)]
                closure = (1 << k) - 1
                for axis, mask in enumerate(masks):
                    closure &= self.members(axis, mask)
                if closure == bits and self.avoids_origin(masks):
                    yield bits, masks
            return
        seen = set()
        ranges = [range(1, 1 << len(vals)) for vals in self.values]
        for masks in itertools.product(*ranges):
            if not self.avoids_origin(masks):
                continue
            bits = (1 << k) - 1
            for axis, mask in enumerate(masks):
                bits &= self.members(axis, mask)
            if bits and bits not in seen:
                seen.add(bits)
                masks = [self.value_mask(bits, v) for v in range(self.m.d)]
                yield bits, masks


def _close(lhs, rhs, rtol):
    return abs(lhs - rhs) <= rtol * max(abs(lhs), abs(rhs))


def _factorization_defect(points, weights, a, b, c, rtol):
    """Найти нарушение P(a,b,c)·P(c) = P(a,c)·P(b,c) или вернуть None."""
    joint = defaultdict(float)
    for point, weight in zip(points, weights):
        key = (tuple(point[c]), tuple(point[a]), tuple(point[b]))
        joint[key] += weight
    by_c = defaultdict(float)
    by_ac = defaultdict(float)
    by_bc = defaultdict(float)
    for (cv, av, bv), weight in joint.items():
        by_c[cv] += weight
        by_ac[cv, av] += weight
        by_bc[cv, bv] += weight
    a_values = sorted({av for _, av in by_ac})
    b_values = sorted({bv for _, bv in by_bc})
    for cv in sorted(by_c):
        for av in a_values:
            for bv in b_values:
                lhs = joint.get((cv, av, bv), 0.0) * by_c[cv]
                rhs = by_ac.get((cv, av), 0.0) * by_bc.get((cv, bv), 0.0)
                if not _close(lhs, rhs, rtol):
                    return {
                        "conditioning_value": list(cv),
                        "a_value": list(av),
                        "b_value": list(bv),
                        "lhs": lhs,
                        "rhs": rhs,
                    }
    return None


def ci_oracle(m, a, b, c=frozenset()):
    """Точно проверить a ⊥ b | c относительно атомарной меры m.

    Проверка идёт на маргинали Λ_{a∪b∪c}; для каждого заряженного
    тестового множества R условный закон P(Y_a, Y_b | Y_c) на атомах
    из R должен распадаться в произведение.
    """
    a, b, c = as_index_set(a), as_index_set(b), as_index_set(c)
    check_known(range(m.d), a, b, c)
    check_disjoint(a=a, b=b, c=c)
    if not a or not b:
        return CIReport.build(a, b, c, True)
    axes = sorted(a | b | c)
    mm = marginal(m, axes)
    position = {v: i for i, v in enumerate(axes)}
    la, lb, lc = ([position[v] for v in sorted(s)] for s in (a, b, c))
    cells = _ValueCells(mm)
    limit = tuning("ORACLE_MAX_LOG2_CELLS")
    if cells.log2_cells > limit:
        raise TooManyCells(
            CELLS_ERROR.format(log2=cells.log2_cells, limit=limit)
        )
    rtol = tuning("ATOM_RTOL")
    checked = 0
    for bits, masks in cells.atom_subsets():
        checked += 1
        chosen = [i for i in range(len(mm)) if bits >> i & 1]
        defect = _factorization_defect(
            mm.points[chosen], mm.weights[chosen], la, lb, lc, rtol
        )
        if defect is not None:
            logger.debug("ci_oracle %s|%s|%s fails after %s sets",
                         sorted(a), sorted(b), sorted(c), checked)
            witness = {"axes": axes, "test_set": cells.test_set(masks)}
            witness.update(defect)
            return CIReport.build(a, b, c, False, witness)
    logger.debug("ci_oracle %s|%s|%s holds on %s sets",
                 sorted(a), sorted(b), sorted(c), checked)
    return CIReport.build(a, b, c, True)


class _CachedOracle:
    def __init__(self, m):
        self.m = m
        self.cache = {}

    def __call__(self, a, b, c):
        key = (frozenset(a), frozenset(b), frozenset(c))
        if key not in self.cache:
            self.cache[key] = ci_oracle(self.m, *key).verdict
        return self.cache[key]


def _set_tuples(d):
    """Перебрать четвёрки непересекающихся (A, B, C, D) с непустыми A и B."""
    for labels in itertools.product(range(5), repeat=d):
        parts = [frozenset(v for v in range(d) if labels[v] == k)
                 for k in range(4)]
        if parts[0] and parts[1]:
            yield parts


def semigraphoid_audit(m):
    """Проверить аксиомы полуграфоида L1–L4 на всех наборах множеств."""
    limit = tuning("SEMIGRAPHOID_MAX_DIM")
    if m.d > limit:
        raise TooLarge(f"Размерность {m.d} больше предела {limit}.")
    ci = _CachedOracle(m)
    audit = MarkovAudit()
    for a, b, c, d in _set_tuples(m.d):
        names = {"A": a, "B": b, "C": c, "D": d}
        if not d:
            if ci(a, b, c):
                audit.add("L1", names, ci(b, a, c))
            continue
        if ci(a, b | d, c):
            audit.add("L2", names, ci(a, b, c))
            audit.add("L3", names, ci(a, b, c | d))
        if ci(a, b, c) and ci(a, d, b | c):
            audit.add("L4", names, ci(a, b | d, c))
    logger.debug("semigraphoid audit: %s instances, %s violations",
                  len(audit.entries), len(audit.violations))
    return audit
