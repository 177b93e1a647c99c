import itertools
from collections import defaultdict

import numpy as np

from graphs.structures import Dag, UndirectedGraph
from measures.atomic import AtomicMeasure
from measures.rays import MaxLinearSpec


def brute_count_connected(g):
    """Перебрать все подмножества вершин и проверить связность обходом."""
    vertices = list(g.vertices)
    total = 0
    for size in range(1, len(vertices) + 1):
        for subset in itertools.combinations(vertices, size):
            subset = set(subset)
            start = next(iter(subset))
            seen, stack = {start}, [start]
            while stack:
                v = stack.pop()
                for u in g.neighbors(v):
                    if u in subset and u not in seen:
                        seen.add(u)
                        stack.append(u)
            total += seen == subset
    return total


def _value_intervals(values):
    """Окружить каждое значение оси полуинтервалом [v − δ, v + δ).

    δ меньше половины расстояния до соседних значений и до нуля, поэтому
    интервал ненулевого значения не касается нуля даже замыканием.
    """
    gaps = [u - v for v, u in zip(values, values[1:])]
    gaps += [abs(v) for v in values if v != 0]
    delta = min(gaps, default=1.0) / 4
    return [(v - delta, v + delta) for v in values]


def _unions(intervals):
    for size in range(1, len(intervals) + 1):
        yield from itertools.combinations(intervals, size)


def _covers(union, x):
    return any(lo <= x < hi for lo, hi in union)


def _touches_zero(union):
    return any(lo <= 0.0 <= hi for lo, hi in union)


def _conditionally_independent(rows, a, b, c):
    """Проверить P(a, b | c) = P(a | c) P(b | c) делением весов."""
    strata = defaultdict(list)
    for point, weight in rows:
        strata[tuple(point[i] for i in c)].append((point, weight))
    for members in strata.values():
        mass = sum(weight for _, weight in members)
        joint, by_a, by_b = (defaultdict(float) for _ in range(3))
        for point, weight in members:
            av = tuple(point[i] for i in a)
            bv = tuple(point[i] for i in b)
            joint[av, bv] += weight / mass
            by_a[av] += weight / mass
            by_b[bv] += weight / mass
        for av in by_a:
            for bv in by_b:
                if abs(joint[av, bv] - by_a[av] * by_b[bv]) > 1e-9:
                    return False
    return True


def brute_ci_atomic(m, a, b, c=()):
    """Проверить a ⊥ b | c на всех произведениях объединений полуинтервалов.

    Тестовое множество допустимо, если хотя бы по одной оси замыкание
    объединения не содержит нуля.
    """
    a, b, c = sorted(a), sorted(b), sorted(c)
    axes = sorted(set(a) | set(b) | set(c))
    projected = defaultdict(float)
    for point, weight in zip(m.points, m.weights):
        key = tuple(float(x) for x in point[axes])
        if any(key):
            projected[key] += float(weight)
    if not projected:
        return True
    position = {v: i for i, v in enumerate(axes)}
    la, lb, lc = ([position[v] for v in s] for s in (a, b, c))
    per_axis = [
        list(_unions(_value_intervals(sorted({key[i] for key in projected}))))
        for i in range(len(axes))
    ]
    for test_set in itertools.product(*per_axis):
        if all(_touches_zero(union) for union in test_set):
            continue
        rows = [
            (key, weight) for key, weight in projected.items()
            if all(_covers(union, x) for union, x in zip(test_set, key))
        ]
        if rows and not _conditionally_independent(rows, la, lb, lc):
            return False
    return True


def brute_gamma(spec, mode='max'):
    """Вычислить γ перебором всех путей j → i в DAG."""
    d = spec.d
    gamma = np.zeros((d, d))

    def walk(start, v, product):
        value = spec.diag[start] * product
        if mode == 'max':
            gamma[v, start] = max(gamma[v, start], value)
        elif v != start:
            gamma[v, start] += value
        for child in sorted(spec.dag.children(v)):
            walk(start, child, product * spec.beta[v, child])

    for j in range(d):
        if mode == 'sum':
            gamma[j, j] = spec.diag[j]
        walk(j, j, 1.0)
    return gamma


def random_graph(rng, n, p=0.4):
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return UndirectedGraph.build(range(n), edges)


def random_atomic(rng, d, atoms, values=(0.0, 1.0, 2.0)):
    """Сгенерировать атомарную меру с координатами из небольшого набора."""
    result = []
    while len(result) < atoms:
        point = rng.choice(values, size=d)
        if np.any(point):
            result.append((point, float(rng.integers(1, 4))))
    return AtomicMeasure.build(d, result)


def random_maxlinear(rng, d, p=0.5):
    arcs = [(u, v) for u in range(d) for v in range(u + 1, d)
            if rng.random() < p]
    beta = {arc: float(rng.uniform(0.5, 2.0)) for arc in arcs}
    diag = {v: float(rng.uniform(0.5, 2.0)) for v in range(d)}
    return MaxLinearSpec.build(Dag.build(range(d), arcs), beta, diag)


def query_triples(vertices, partition=False):
    """Перебрать тройки (a, b, c) непересекающихся множеств с непустыми a, b.

    При partition=True тройки покрывают все вершины.
    """
    vertices = list(vertices)
    labels = range(3) if partition else range(4)
    for marks in itertools.product(labels, repeat=len(vertices)):
        a, b, c = (
            frozenset(v for v, k in zip(vertices, marks) if k == label)
            for label in (0, 1, 2)
        )
        if a and b:
            yield a, b, c


def random_out_forest(rng, d, p=0.75):
    """Сгенерировать DAG, в котором у каждой вершины не больше одного родителя."""
    arcs = [
        (int(rng.integers(0, v)), v) for v in range(1, d) if rng.random() < p
    ]
    return Dag.build(range(d), arcs)


def relabel(sets, support):
    """Перенумеровать вершины множеств в порядке sorted(support)."""
    position = {v: i for i, v in enumerate(sorted(support))}
    return [frozenset(position[v] for v in s) for s in sets]
