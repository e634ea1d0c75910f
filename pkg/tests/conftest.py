"""Shared fixtures and independent reference checks.

Everything here recomputes from first principles and shares no code with
the implementations under test: witnesses are validated by counting
induced edges, star-pair freeness by scanning vertex subsets for the tree
profile, and violators by evaluating both sides of the inequality
directly.
"""

from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import strategies as st

from bifactor import BipartiteGraph, Factor, StarWitness, VertexRef


# -- graph strategies ----------------------------------------------------------


@st.composite
def bipartite_graphs(draw, max_side: int = 4, min_side: int = 1):
    n_x = draw(st.integers(min_side, max_side))
    n_y = draw(st.integers(min_side, max_side))
    cells = [(x, y) for x in range(n_x) for y in range(n_y)]
    edges = draw(st.sets(st.sampled_from(cells))) if cells else set()
    return BipartiteGraph(n_x, n_y, edges)


@st.composite
def connected_bipartite_graphs(draw, max_side: int = 4):
    from hypothesis import assume

    graph = draw(bipartite_graphs(max_side=max_side))
    assume(graph.is_connected() and graph.m > 0)
    return graph


# -- independent checks --------------------------------------------------------


def induced_edges(graph: BipartiteGraph, verts: list[VertexRef]) -> list[tuple[int, int]]:
    xs = [v.index for v in verts if v.side == "X"]
    ys = [v.index for v in verts if v.side == "Y"]
    return [(x, y) for x in xs for y in ys if graph.has_edge(x, y)]


def assert_star_witness_valid(graph: BipartiteGraph, w: StarWitness) -> None:
    verts = list(w.vertices())
    assert len(set(verts)) == w.k + w.l + 2, "witness vertices not distinct"
    assert len(w.leaves_u) == w.k and len(w.leaves_v) == w.l
    pairs = {tuple(sorted([a.label, b.label])) for a, b in [(w.center_u, w.center_v)]}
    pairs |= {tuple(sorted([w.center_u.label, leaf.label])) for leaf in w.leaves_u}
    pairs |= {tuple(sorted([w.center_v.label, leaf.label])) for leaf in w.leaves_v}
    got = {
        tuple(sorted([f"X{x}", f"Y{y}"])) for x, y in induced_edges(graph, verts)
    }
    assert got == pairs, f"induced edges {got} differ from the star pair {pairs}"


def contains_star_pair(graph: BipartiteGraph, k: int, l: int) -> bool:
    """Subset-profile search: an induced star pair is the unique tree on
    k + l + 2 vertices with degree multiset {1^(k+l), k+1, l+1}."""
    size = k + l + 2
    verts = list(graph.vertices())
    if len(verts) < size:
        return False
    want = sorted([1] * (k + l) + [k + 1, l + 1])
    for subset in combinations(verts, size):
        edges = induced_edges(graph, list(subset))
        if len(edges) != size - 1:
            continue
        deg: dict[str, int] = {v.label: 0 for v in subset}
        for x, y in edges:
            deg[f"X{x}"] += 1
            deg[f"Y{y}"] += 1
        if sorted(deg.values()) != want:
            continue
        # tree check: edge count size-1 plus connectivity
        labels = {v.label: i for i, v in enumerate(subset)}
        parent = list(range(size))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        merged = 0
        for x, y in edges:
            ra, rb = find(labels[f"X{x}"]), find(labels[f"Y{y}"])
            if ra != rb:
                parent[ra] = rb
                merged += 1
        if merged == size - 1:
            return True
    return False


def violation_sides(
    graph: BipartiteGraph, f_x: list[int], f_y: list[int], a: tuple[int, ...]
) -> tuple[int, int]:
    lhs = sum(f_x[x] for x in a)
    rhs = 0
    for y in range(graph.n_y):
        d_a = sum(1 for x in graph.neighbors_y(y) if x in set(a))
        if d_a > 0:
            rhs += min(f_y[y], d_a)
    return lhs, rhs


def assert_regular_spanning(
    graph: BipartiteGraph, factor: Factor, k: int, connected: bool = False
) -> None:
    assert set(factor.edge_list) <= set(graph.edge_list)
    deg_x = [0] * graph.n_x
    deg_y = [0] * graph.n_y
    for x, y in factor.edge_list:
        deg_x[x] += 1
        deg_y[y] += 1
    assert all(d == k for d in deg_x), f"X degrees {deg_x}"
    assert all(d == k for d in deg_y), f"Y degrees {deg_y}"
    if connected:
        seen = {("X", 0)}
        stack = [("X", 0)]
        adj: dict[tuple[str, int], list[tuple[str, int]]] = {}
        for x, y in factor.edge_list:
            adj.setdefault(("X", x), []).append(("Y", y))
            adj.setdefault(("Y", y), []).append(("X", x))
        while stack:
            v = stack.pop()
            for w in adj.get(v, []):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        assert len(seen) == graph.n_x + graph.n_y, "factor not connected"


@pytest.fixture
def p4() -> BipartiteGraph:
    from bifactor import path_graph

    return path_graph(4)


@pytest.fixture
def k33() -> BipartiteGraph:
    from bifactor import complete_bipartite

    return complete_bipartite(3, 3)
