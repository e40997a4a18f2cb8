"""Gruenberg-Kegel prime graphs built from sets of element orders."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .factored import FactoredInteger, factor
from .groups import GroupId, Family, order, sporadic_records

__all__ = ["PrimeGraph", "build_graph", "graph_of", "order_components", "to_dot"]


@dataclass(frozen=True)
class PrimeGraph:
    """Vertices are primes; p and q are joined when some element has order divisible by pq."""

    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    @property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components, the one holding 2 first, the rest by least prime."""
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        comps = [tuple(sorted(c)) for c in nx.connected_components(g)]
        return tuple(sorted(comps, key=lambda c: (2 not in c, c[0])))

    @property
    def component_count(self) -> int:
        return len(self.components)

    def adjacent(self, p: int, q: int) -> bool:
        return (min(p, q), max(p, q)) in self.edges


def build_graph(spectrum: Iterable[int]) -> PrimeGraph:
    """Prime graph of a set of element orders."""
    spec = set(spectrum)
    if any(k < 1 for k in spec):
        raise ValueError("element orders must be positive")
    vertices: set[int] = set()
    edges: set[tuple[int, int]] = set()
    for k in spec:
        primes = factor(k).primes
        vertices.update(primes)
        edges.update(combinations(primes, 2))
    return PrimeGraph(tuple(sorted(vertices)), frozenset(edges))


def graph_of(g: GroupId) -> PrimeGraph:
    if g.family is not Family.SPORADIC:
        raise ValueError("element orders are on file for sporadic groups only")
    return build_graph(sporadic_records()[g.name].spectrum)  # type: ignore[index]


def order_components(graph: PrimeGraph, n: FactoredInteger) -> tuple[FactoredInteger, ...]:
    """The part of ``n`` supported on each component, in component order."""
    if set(n.primes) != set(graph.vertices):
        raise ValueError("the graph's vertices must be exactly the primes of n")
    return tuple(n.restrict(c) for c in graph.components)


def group_order_components(g: GroupId) -> tuple[FactoredInteger, ...]:
    return order_components(graph_of(g), order(g))


def to_dot(graph: PrimeGraph, name: str = "G") -> str:
    """Graphviz source with one cluster per connected component."""
    label = name.replace('"', r"\"")
    lines = [f'graph "{label}" {{', "  node [shape=circle];"]
    for i, comp in enumerate(graph.components, 1):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="pi_{i}";')
        lines.extend(f'    "{p}";' for p in comp)
        lines.append("  }")
    lines.extend(f'  "{p}" -- "{q}";' for p, q in sorted(graph.edges))
    lines.append("}")
    return "\n".join(lines) + "\n"
