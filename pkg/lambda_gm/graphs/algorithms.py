"""Разделение, декомпозиция и морализация графов."""
import itertools
import logging
from collections import deque

import networkx as nx

from core.exceptions import NotDecomposable, TooLarge
from core.utils import check_disjoint, check_known, check_nonempty, tuning
from graphs.structures import CliqueOrdering, UndirectedGraph

logger = logging.getLogger(__name__)

TOO_LARGE_ERROR = "Перебор для {count} вершин превышает предел {limit}."


def _guard(count, limit_name):
    limit = tuning(limit_name)
    if count > limit:
        logger.warning("guard %s tripped: %s > %s", limit_name, count, limit)
        raise TooLarge(TOO_LARGE_ERROR.format(count=count, limit=limit))


def separates(g, a, b, c=frozenset()):
    """Проверить, что каждый путь из a в b проходит через c."""
    a, b, c = frozenset(a), frozenset(b), frozenset(c)
    check_nonempty(a, "a")
    check_nonempty(b, "b")
    check_known(g.vertices, a, b, c)
    check_disjoint(a=a, b=b, c=c)
    seen = set(a)
    queue = deque(a)
    while queue:
        v = queue.popleft()
        for u in g.neighbors(v):
            if u in c or u in seen:
                continue
            if u in b:
                return False
            seen.add(u)
            queue.append(u)
    return True


def _mcs_order(g, key):
    numbered = set()
    weight = {v: 0 for v in g.vertices}
    order = []
    earlier = {}
    for _ in g.vertices:
        v = min(
            (u for u in g.vertices if u not in numbered),
            key=lambda u: (-weight[u], key(u)),
        )
        earlier[v] = g.neighbors(v) & numbered
        order.append(v)
        numbered.add(v)
        for u in g.neighbors(v) - numbered:
            weight[u] += 1
    return order, earlier


def clique_ordering(g, key=None):
    """Построить упорядочение клик поиском максимальной мощности.

    Порядок MCS в обратном направлении должен быть совершенным порядком
    исключения: более ранние соседи каждой вершины образуют клику.
    Новая клика начинается, когда метка вершины не растёт.
    """
    order, earlier = _mcs_order(g, key or (lambda v: v))
    position = {v: i for i, v in enumerate(order)}
    for v in order:
        if not earlier[v]:
            continue
        last = max(earlier[v], key=position.get)
        if not earlier[v] - {last} <= earlier[last]:
            raise NotDecomposable(
                f"Граф не хордален: нужна хорда у вершины {v}."
            )
    cliques, separators = [], []
    previous = -1
    for v in order:
        label = len(earlier[v])
        if cliques and label > previous:
            cliques[-1] = cliques[-1] | {v}
        else:
            if cliques:
                separators.append(frozenset(earlier[v]))
            cliques.append(frozenset(earlier[v] | {v}))
        previous = label
    return CliqueOrdering(tuple(cliques), tuple(separators))


def is_decomposable(g):
    try:
        clique_ordering(g)
    except NotDecomposable:
        return False
    return True


def moral_ancestral(d, w):
    """Вернуть моральный граф предкового множества w."""
    w = frozenset(w)
    check_known(d.vertices, w)
    ancestral = set(w)
    for v in w:
        ancestral |= d.ancestors(v)
    moral = nx.moral_graph(d.nx.subgraph(ancestral))
    return UndirectedGraph.build(
        [v for v in d.vertices if v in ancestral], moral.edges()
    )


def dg_separated(d, a, b, s=frozenset()):
    a, b, s = frozenset(a), frozenset(b), frozenset(s)
    check_disjoint(a=a, b=b, s=s)
    return separates(moral_ancestral(d, a | b | s), a, b, s)


def count_connected_subgraphs(g):
    """Сосчитать непустые множества вершин со связным индуцированным подграфом.

    Каждое связное множество перечисляется ровно один раз: его корень
    минимальная вершина, расширение идёт только через исключительных
    соседей последней добавленной вершины.
    """
    n = len(g.vertices)
    _guard(n, "SUBGRAPH_MAX_VERTICES")
    index = {v: i for i, v in enumerate(g.vertices)}
    adjacency = [0] * n
    for edge in g.edges:
        u, v = (index[x] for x in edge)
        adjacency[u] |= 1 << v
        adjacency[v] |= 1 << u

    def extend(extension, closed, higher):
        count = 1
        while extension:
            bit = extension & -extension
            extension ^= bit
            w = bit.bit_length() - 1
            fresh = adjacency[w] & ~closed & higher
            count += extend(extension | fresh, closed | fresh, higher)
        return count

    total = 0
    for v in range(n):
        higher = ~((1 << (v + 1)) - 1)
        closed = adjacency[v] | (1 << v)
        total += extend(adjacency[v] & higher, closed, higher)
    logger.debug("connected subgraphs of %s vertices: %s", n, total)
    return total


def separation_triples(g):
    """Перечислить разбиения (a, b, c) с c, разделяющим a и b."""
    _guard(len(g.vertices), "SEPARATION_MAX_VERTICES")
    triples = []
    for labels in itertools.product(range(3), repeat=len(g.vertices)):
        parts = ([], [], [])
        for v, label in zip(g.vertices, labels):
            parts[label].append(v)
        a, b, c = (frozenset(part) for part in parts)
        if not a or not b:
            continue
        # Для разбиения путь из a в b вне c идёт только по a ∪ b.
        if any(g.neighbors(v) & b for v in a):
            continue
        triples.append((a, b, c))
    return triples
