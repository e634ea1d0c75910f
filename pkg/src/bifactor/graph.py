"""Bipartite graph core: types, text format, and basic constructions.

Graphs are simple, undirected, bipartite, with the two classes indexed
independently from 0.  A vertex is identified by (side, index) only; there
are no labels.  Instances are immutable once built.

Text format (newline-terminated, single spaces)::

    # optional comment lines
    bipartite <nX> <nY> <m>
    <x> <y>          (m lines, 0-based endpoints)

Canonical serialization sorts edges by (x, y); parse/serialize round-trips
are exact on canonical files.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    DuplicateEdgeError,
    EmptyGraphError,
    GraphFormatError,
    IndexOutOfRangeError,
    MalformedHeaderError,
    MatchingNotDisjointError,
    NotRegularError,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class VertexRef:
    """A vertex named by its side ('X' or 'Y') and 0-based index."""

    side: str
    index: int

    def __post_init__(self):
        if self.side not in ("X", "Y"):
            raise ValueError(f"side must be 'X' or 'Y', got {self.side!r}")

    @property
    def sort_key(self) -> tuple[int, int]:
        return (0 if self.side == "X" else 1, self.index)

    @property
    def label(self) -> str:
        return f"{self.side}{self.index}"

    def __str__(self) -> str:
        return self.label


class BipartiteGraph:
    """Immutable simple bipartite graph on X = [0, n_x) and Y = [0, n_y)."""

    __slots__ = ("n_x", "n_y", "edge_list", "edge_set", "_adj_x", "_adj_y")

    def __init__(self, n_x: int, n_y: int, edges: Iterable[Edge]):
        if n_x < 0 or n_y < 0:
            raise ValueError("class sizes must be non-negative")
        self.n_x = n_x
        self.n_y = n_y
        seen: set[Edge] = set()
        adj_x: list[list[int]] = [[] for _ in range(n_x)]
        adj_y: list[list[int]] = [[] for _ in range(n_y)]
        for e in edges:
            x, y = e
            if not (0 <= x < n_x and 0 <= y < n_y):
                raise IndexOutOfRangeError(f"edge ({x}, {y}) outside {n_x}x{n_y}")
            if (x, y) in seen:
                raise DuplicateEdgeError(f"edge ({x}, {y}) repeated")
            seen.add((x, y))
            adj_x[x].append(y)
            adj_y[y].append(x)
        self.edge_list: tuple[Edge, ...] = tuple(sorted(seen))
        self.edge_set: frozenset[Edge] = frozenset(seen)
        self._adj_x = tuple(tuple(sorted(a)) for a in adj_x)
        self._adj_y = tuple(tuple(sorted(a)) for a in adj_y)

    # -- basic accessors ---------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edge_list)

    @property
    def n_vertices(self) -> int:
        return self.n_x + self.n_y

    def neighbors_x(self, x: int) -> tuple[int, ...]:
        """Sorted Y-neighbors of X-vertex x."""
        return self._adj_x[x]

    def neighbors_y(self, y: int) -> tuple[int, ...]:
        """Sorted X-neighbors of Y-vertex y."""
        return self._adj_y[y]

    def degree_x(self, x: int) -> int:
        return len(self._adj_x[x])

    def degree_y(self, y: int) -> int:
        return len(self._adj_y[y])

    def has_edge(self, x: int, y: int) -> bool:
        return (x, y) in self.edge_set

    def vertices(self) -> Iterator[VertexRef]:
        for x in range(self.n_x):
            yield VertexRef("X", x)
        for y in range(self.n_y):
            yield VertexRef("Y", y)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BipartiteGraph)
            and self.n_x == other.n_x
            and self.n_y == other.n_y
            and self.edge_set == other.edge_set
        )

    def __hash__(self) -> int:
        return hash((self.n_x, self.n_y, self.edge_set))

    def __repr__(self) -> str:
        return f"BipartiteGraph({self.n_x}, {self.n_y}, m={self.m})"

    # -- global predicates -------------------------------------------------

    def is_balanced(self) -> bool:
        return self.n_x == self.n_y

    def min_degree(self) -> int:
        if self.n_vertices == 0:
            raise EmptyGraphError("graph has no vertices")
        degs = [len(a) for a in self._adj_x] + [len(a) for a in self._adj_y]
        return min(degs)

    def is_connected(self) -> bool:
        """True when every vertex is reachable from every other.

        The vertexless graph counts as connected.
        """
        if self.n_vertices == 0:
            return True
        return _component_count(self.n_x, self.n_y, self.edge_list) == 1


def _component_count(n_x: int, n_y: int, edges: Iterable[Edge]) -> int:
    """Connected components over all n_x + n_y vertices; isolated count."""
    parent = list(range(n_x + n_y))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    comps = n_x + n_y
    for x, y in edges:
        ra, rb = find(x), find(n_x + y)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    return comps


def _component_labels(
    n_x: int, n_y: int, edges: Iterable[Edge]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Deterministic component ids: 0, 1, ... in order of first root X0..Xn, Y0..Yn."""
    adj_x: list[list[int]] = [[] for _ in range(n_x)]
    adj_y: list[list[int]] = [[] for _ in range(n_y)]
    for x, y in edges:
        adj_x[x].append(y)
        adj_y[y].append(x)
    comp_x = [-1] * n_x
    comp_y = [-1] * n_y
    next_id = 0
    # vertex order: X side first, then Y side
    for side, idx in [(0, i) for i in range(n_x)] + [(1, j) for j in range(n_y)]:
        comp = comp_x if side == 0 else comp_y
        if comp[idx] != -1:
            continue
        stack = [(side, idx)]
        comp[idx] = next_id
        while stack:
            s, i = stack.pop()
            if s == 0:
                for j in adj_x[i]:
                    if comp_y[j] == -1:
                        comp_y[j] = next_id
                        stack.append((1, j))
            else:
                for j in adj_y[i]:
                    if comp_x[j] == -1:
                        comp_x[j] = next_id
                        stack.append((0, j))
        next_id += 1
    return tuple(comp_x), tuple(comp_y)


class Factor:
    """A spanning subgraph of a host graph, with component labels.

    Every vertex of the host belongs to the factor; vertices without factor
    edges sit in singleton components.  Component ids are assigned in
    discovery order scanning X0..X(n-1), Y0..Y(n-1), so they are stable
    across runs.
    """

    __slots__ = (
        "host",
        "edge_list",
        "edge_set",
        "comp_x",
        "comp_y",
        "n_components",
        "_adj_x",
        "_adj_y",
    )

    def __init__(self, host: BipartiteGraph, edges: Iterable[Edge]):
        self.host = host
        es = set()
        adj_x: list[list[int]] = [[] for _ in range(host.n_x)]
        adj_y: list[list[int]] = [[] for _ in range(host.n_y)]
        for e in edges:
            t = (e[0], e[1])
            if t not in host.edge_set:
                raise IndexOutOfRangeError(f"factor edge {t} not in host graph")
            if t in es:
                raise DuplicateEdgeError(f"factor edge {t} repeated")
            es.add(t)
            adj_x[t[0]].append(t[1])
            adj_y[t[1]].append(t[0])
        self.edge_list: tuple[Edge, ...] = tuple(sorted(es))
        self.edge_set: frozenset[Edge] = frozenset(es)
        self._adj_x = tuple(tuple(sorted(a)) for a in adj_x)
        self._adj_y = tuple(tuple(sorted(a)) for a in adj_y)
        self.comp_x, self.comp_y = _component_labels(host.n_x, host.n_y, self.edge_list)
        self.n_components = (max(self.comp_x + self.comp_y) + 1) if (self.comp_x or self.comp_y) else 0

    def degrees(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (
            tuple(len(a) for a in self._adj_x),
            tuple(len(a) for a in self._adj_y),
        )

    def neighbors_x(self, x: int) -> tuple[int, ...]:
        return self._adj_x[x]

    def neighbors_y(self, y: int) -> tuple[int, ...]:
        return self._adj_y[y]

    def regularity(self) -> int | None:
        """Common degree when the factor is regular, else None."""
        dx, dy = self.degrees()
        degs = set(dx) | set(dy)
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_connected(self) -> bool:
        return self.n_components == 1

    def component_of(self, v: VertexRef) -> int:
        return self.comp_x[v.index] if v.side == "X" else self.comp_y[v.index]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Factor)
            and self.host == other.host
            and self.edge_set == other.edge_set
        )

    def __hash__(self) -> int:
        return hash((self.host, self.edge_set))

    def __repr__(self) -> str:
        return f"Factor(m={len(self.edge_list)}, components={self.n_components})"


# -- text format ------------------------------------------------------------


def parse_graph(text: str) -> BipartiteGraph:
    """Parse the graph text format; errors name the offending line."""
    header: tuple[int, int, int] | None = None
    header_line = 0
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 4 or parts[0] != "bipartite":
                raise MalformedHeaderError(
                    f"expected 'bipartite <nX> <nY> <m>', got {line!r}", line=lineno
                )
            try:
                n_x, n_y, m = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                raise MalformedHeaderError(
                    f"non-integer field in header {line!r}", line=lineno
                ) from None
            if n_x < 0 or n_y < 0 or m < 0:
                raise MalformedHeaderError(f"negative field in header {line!r}", line=lineno)
            header = (n_x, n_y, m)
            header_line = lineno
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected '<x> <y>', got {line!r}", line=lineno)
        try:
            x, y = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer endpoint in {line!r}", line=lineno) from None
        n_x, n_y, _ = header
        if not (0 <= x < n_x and 0 <= y < n_y):
            raise IndexOutOfRangeError(
                f"edge ({x}, {y}) outside {n_x}x{n_y}", line=lineno
            )
        if (x, y) in seen:
            raise DuplicateEdgeError(f"edge ({x}, {y}) repeated", line=lineno)
        seen.add((x, y))
        edges.append((x, y))
    if header is None:
        raise MalformedHeaderError("missing 'bipartite' header line")
    n_x, n_y, m = header
    if len(edges) != m:
        raise MalformedHeaderError(
            f"header promises {m} edges, file has {len(edges)}", line=header_line
        )
    return BipartiteGraph(n_x, n_y, edges)


def serialize_graph(graph: BipartiteGraph) -> str:
    lines = [f"bipartite {graph.n_x} {graph.n_y} {graph.m}"]
    lines.extend(f"{x} {y}" for x, y in graph.edge_list)
    return "\n".join(lines) + "\n"


def parse_factor(text: str, host: BipartiteGraph) -> Factor:
    """Parse a factor file against its host graph.

    Header is ``factor <k> <m>``.  A trailing ``cycle ...`` line, as written
    for Hamilton cycles, is accepted and ignored.
    """
    header: tuple[int, int] | None = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 3 or parts[0] != "factor":
                raise MalformedHeaderError(
                    f"expected 'factor <k> <m>', got {line!r}", line=lineno
                )
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise MalformedHeaderError(
                    f"non-integer field in header {line!r}", line=lineno
                ) from None
            continue
        if line.startswith("cycle "):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected '<x> <y>', got {line!r}", line=lineno)
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphFormatError(f"non-integer endpoint in {line!r}", line=lineno) from None
    if header is None:
        raise MalformedHeaderError("missing 'factor' header line")
    k, m = header
    if len(edges) != m:
        raise MalformedHeaderError(f"header promises {m} edges, file has {len(edges)}")
    factor = Factor(host, edges)
    if factor.regularity() != k:
        raise NotRegularError(f"factor file claims {k}-regular but degrees differ")
    return factor


def serialize_factor(factor: Factor, cycle: tuple[VertexRef, ...] | None = None) -> str:
    """Canonical factor file; regular factors only.

    When ``cycle`` is given (a vertex rotation of a connected 2-regular
    factor) an extra ``cycle v0 v1 ...`` line is appended.
    """
    k = factor.regularity()
    if k is None:
        raise NotRegularError("only regular factors serialize")
    lines = [f"factor {k} {len(factor.edge_list)}"]
    lines.extend(f"{x} {y}" for x, y in factor.edge_list)
    if cycle is not None:
        lines.append("cycle " + " ".join(v.label for v in cycle))
    return "\n".join(lines) + "\n"


# -- constructions -----------------------------------------------------------


def complete_bipartite(n_x: int, n_y: int) -> BipartiteGraph:
    return BipartiteGraph(n_x, n_y, [(x, y) for x in range(n_x) for y in range(n_y)])


def complete_bipartite_minus_matching(n: int, matching: Iterable[Edge]) -> BipartiteGraph:
    """K_{n,n} minus a (not necessarily perfect) matching.

    The removed pairs must be vertex-disjoint; MatchingNotDisjointError
    otherwise.
    """
    pairs = list(matching)
    xs = [x for x, _ in pairs]
    ys = [y for _, y in pairs]
    if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
        raise MatchingNotDisjointError("removed pairs share a vertex")
    removed = set()
    for x, y in pairs:
        if not (0 <= x < n and 0 <= y < n):
            raise IndexOutOfRangeError(f"matching pair ({x}, {y}) outside {n}x{n}")
        removed.add((x, y))
    edges = [(x, y) for x in range(n) for y in range(n) if (x, y) not in removed]
    return BipartiteGraph(n, n, edges)


def double_graph(base: BipartiteGraph) -> BipartiteGraph:
    """Two copies of ``base``; every edge uv contributes uv, u'v', uv', u'v.

    Degrees double, balance and connectivity are preserved.
    """
    edges: list[Edge] = []
    for x, y in base.edge_list:
        edges.extend(
            [
                (x, y),
                (x + base.n_x, y + base.n_y),
                (x, y + base.n_y),
                (x + base.n_x, y),
            ]
        )
    return BipartiteGraph(2 * base.n_x, 2 * base.n_y, edges)


def cycle_graph(half: int) -> BipartiteGraph:
    """The cycle on 2*half vertices, x_i - y_i - x_{i+1} - ...; needs half >= 2."""
    if half < 2:
        raise ValueError("a bipartite cycle needs at least 2 vertices per side")
    edges = []
    for i in range(half):
        edges.append((i, i))
        edges.append(((i + 1) % half, i))
    return BipartiteGraph(half, half, edges)


def path_graph(n_vertices: int) -> BipartiteGraph:
    """The path on n_vertices vertices, alternating sides starting in X."""
    if n_vertices < 1:
        raise ValueError("a path needs at least one vertex")
    n_x = (n_vertices + 1) // 2
    n_y = n_vertices // 2
    edges = []
    for t in range(n_vertices - 1):
        i = t // 2
        edges.append((i, i) if t % 2 == 0 else ((i + 1), i))
    return BipartiteGraph(n_x, n_y, edges)


def star_pair_graph(k: int, l: int) -> BipartiteGraph:
    """Two stars with adjacent centers: one with k leaves, one with l leaves.

    Center u = X0 carries k leaves Y1..Yk; center v = Y0 carries l leaves
    X1..Xl.  The result has k + l + 2 vertices and k + l + 1 edges.
    """
    if k < 1 or l < 1:
        raise ValueError("both stars need at least one leaf")
    edges = [(0, 0)]
    edges.extend((0, j) for j in range(1, k + 1))
    edges.extend((i, 0) for i in range(1, l + 1))
    return BipartiteGraph(l + 1, k + 1, edges)
