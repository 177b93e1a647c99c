from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from core.exceptions import CyclicGraph, InputError, UnknownVertex


SELF_LOOP_ERROR = "Петля в вершине {vertex} недопустима."
EDGE_ERROR = "Ребро {edge} ссылается на неизвестную вершину."
CYCLE_ERROR = "Ориентированный граф содержит цикл."


def _vertices(vertices):
    vertices = tuple(int(v) for v in vertices)
    if len(set(vertices)) != len(vertices):
        raise InputError("Вершины графа должны быть уникальны.")
    return vertices


@dataclass(frozen=True)
class UndirectedGraph:
    """Неориентированный граф с вершинами-целыми числами."""

    vertices: tuple
    edges: frozenset

    @classmethod
    def build(cls, vertices, edges=()):
        vertices = _vertices(vertices)
        known = set(vertices)
        pairs = set()
        for edge in edges:
            u, v = (int(x) for x in edge)
            if u == v:
                raise InputError(SELF_LOOP_ERROR.format(vertex=u))
            if u not in known or v not in known:
                raise UnknownVertex(EDGE_ERROR.format(edge=(u, v)))
            pairs.add(frozenset((u, v)))
        return cls(vertices, frozenset(pairs))

    @classmethod
    def complete(cls, vertices):
        vertices = list(vertices)
        return cls.build(
            vertices,
            [(u, v) for i, u in enumerate(vertices) for v in vertices[i + 1:]],
        )

    @cached_property
    def nx(self):
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(tuple(edge) for edge in self.edges)
        return graph

    @cached_property
    def adjacency(self):
        return {v: frozenset(self.nx.neighbors(v)) for v in self.vertices}

    def neighbors(self, v):
        return self.adjacency[v]

    def has_edge(self, u, v):
        return frozenset((u, v)) in self.edges

    def degree(self, v):
        return len(self.adjacency[v])

    def __len__(self):
        return len(self.vertices)

    def is_connected(self, vertices=None):
        vertices = self.vertices if vertices is None else tuple(vertices)
        if not vertices:
            return False
        return nx.is_connected(self.nx.subgraph(vertices))

    def is_forest(self):
        if not self.vertices:
            return True
        return nx.is_forest(self.nx)

    def path(self, u, v):
        """Вернуть кратчайший путь u → v или None, если пути нет."""
        try:
            return nx.shortest_path(self.nx, u, v)
        except nx.NetworkXNoPath:
            return None


@dataclass(frozen=True)
class Dag:
    """Ориентированный ацикличный граф.

    Дуги заданы парами (родитель, ребёнок).
    """

    vertices: tuple
    arcs: frozenset

    @classmethod
    def build(cls, vertices, arcs=()):
        vertices = _vertices(vertices)
        known = set(vertices)
        pairs = set()
        for arc in arcs:
            parent, child = (int(x) for x in arc)
            if parent == child:
                raise CyclicGraph(SELF_LOOP_ERROR.format(vertex=parent))
            if parent not in known or child not in known:
                raise UnknownVertex(EDGE_ERROR.format(edge=(parent, child)))
            pairs.add((parent, child))
        dag = cls(vertices, frozenset(pairs))
        if not nx.is_directed_acyclic_graph(dag.nx):
            raise CyclicGraph(CYCLE_ERROR)
        return dag

    @cached_property
    def nx(self):
        graph = nx.DiGraph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.arcs)
        return graph

    @cached_property
    def topological_order(self):
        return tuple(nx.lexicographical_topological_sort(self.nx))

    def parents(self, v):
        return frozenset(self.nx.predecessors(v))

    def children(self, v):
        return frozenset(self.nx.successors(v))

    def ancestors(self, v):
        return frozenset(nx.ancestors(self.nx, v))

    def descendants(self, v):
        return frozenset(nx.descendants(self.nx, v))

    def skeleton(self):
        return UndirectedGraph.build(self.vertices, self.arcs)

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class CliqueOrdering:
    """Упорядоченные клики и мультимножество сепараторов."""

    cliques: tuple
    separators: tuple

    def separator_multiset(self):
        return sorted(tuple(sorted(s)) for s in self.separators)
