"""Turning regular factors into connected ones by edge exchanges.

A *link* is a host-graph edge joining two components of a factor.  The
primary move removes one factor edge at each end of a link and re-adds the
link plus one fresh cross edge; the secondary move swaps the factor
neighbors of two same-side vertices in different components.  Both moves
preserve every degree.  A move is accepted only when a from-scratch
component recount strictly decreases, so progress is measured, never
assumed (removed edges can be bridges when the degree is odd).

A factor none of whose candidate moves helps is *stuck*.  Stuck states are
audited, not asserted away: the report carries every link, whether the
factor neighborhoods of each link are fully non-adjacent, and per-vertex
degree tallies against the bounds that hold in a genuinely stuck state of
a pattern-free graph.  When those bounds together cap a vertex's degree
below the host's minimum degree, the stuck state is impossible under the
stated hypotheses and the report flags the contradiction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    HypothesisViolatedError,
    NotConnectedError,
    NotRegularError,
    NotStuckError,
    ParamOrderError,
    StructureUnrecognizedError,
    TheoremContradictionError,
)
from .factors import DegreeDemand, ViolatorCertificate, find_f_factor
from .graph import BipartiteGraph, Edge, Factor, VertexRef, _component_count
from .structure import is_skl_free


# -- minimum-degree thresholds -------------------------------------------------


def threshold_c_raw(k: int, l: int) -> int:
    """The connectivity threshold formula with no parameter gate."""
    return max((k**3 + 1) * (2 * l - 2 * k - 1) + l, 2 * (k * k - k + l))


def threshold_c(k: int, l: int) -> int:
    """Minimum degree above which a connected k-regular factor is promised.

    Defined for 2 <= k <= l only; exact integer arithmetic throughout.
    """
    if k < 2 or k > l:
        raise ParamOrderError(f"need 2 <= k <= l, got k={k}, l={l}")
    return threshold_c_raw(k, l)


def threshold_c_prime(k: int, l: int, m: int) -> int:
    """Minimum degree above which an m-regular factor is promised."""
    if k < 1 or l < 1 or m < 1:
        raise ParamOrderError(f"need k, l, m >= 1, got k={k}, l={l}, m={m}")
    return 2 * max(k, l, m) ** 2


# -- links and swaps -----------------------------------------------------------


@dataclass(frozen=True)
class Link:
    """A host edge joining two distinct factor components."""

    u: VertexRef  # X endpoint
    v: VertexRef  # Y endpoint
    component_u: int
    component_v: int


@dataclass(frozen=True)
class SwapMove:
    """A degree-preserving exchange: drop ``removed``, add ``added``."""

    kind: str  # 'primary' | 'secondary'
    removed: tuple[Edge, Edge]
    added: tuple[Edge, Edge]


def find_links(graph: BipartiteGraph, factor: Factor) -> tuple[Link, ...]:
    """All links, sorted by (x, y)."""
    links = []
    for x, y in graph.edge_list:
        cu, cv = factor.comp_x[x], factor.comp_y[y]
        if cu != cv:
            links.append(Link(VertexRef("X", x), VertexRef("Y", y), cu, cv))
    return tuple(links)


def apply_swap(factor: Factor, move: SwapMove) -> Factor:
    edges = set(factor.edge_set)
    for e in move.removed:
        edges.remove(e)
    for e in move.added:
        edges.add(e)
    return Factor(factor.host, edges)


def _count_after(factor: Factor, removed: tuple[Edge, Edge], added: tuple[Edge, Edge]) -> int:
    host = factor.host
    edges = set(factor.edge_set)
    edges.difference_update(removed)
    edges.update(added)
    return _component_count(host.n_x, host.n_y, edges)


def try_primary_swap(graph: BipartiteGraph, factor: Factor, link: Link) -> SwapMove | None:
    """First primary move on ``link`` that strictly lowers the component count.

    Candidates scan the factor neighbors of both endpoints in index order;
    the fresh edge must exist in the host and be absent from the factor.
    """
    x, y = link.u.index, link.v.index
    base = factor.n_components
    for u2 in factor.neighbors_x(x):  # Y side
        for v2 in factor.neighbors_y(y):  # X side
            if not graph.has_edge(v2, u2):
                continue
            if (v2, u2) in factor.edge_set:
                continue
            removed = ((x, u2), (v2, y))
            added = ((x, y), (v2, u2))
            if _count_after(factor, removed, added) < base:
                return SwapMove("primary", removed, added)
    return None


def try_secondary_swap(
    graph: BipartiteGraph, factor: Factor, v1: VertexRef, v2: VertexRef
) -> SwapMove | None:
    """First neighbor exchange between two same-side vertices that helps.

    The vertices must lie in distinct components (NotStuckError is not the
    right complaint here: same-component input is a precondition breach).
    """
    if v1.side != v2.side:
        raise ValueError("secondary swap needs two vertices on the same side")
    if factor.component_of(v1) == factor.component_of(v2):
        raise ValueError("secondary swap needs vertices in distinct components")
    base = factor.n_components
    on_x = v1.side == "X"
    i1, i2 = v1.index, v2.index
    nbrs1 = factor.neighbors_x(i1) if on_x else factor.neighbors_y(i1)
    nbrs2 = factor.neighbors_x(i2) if on_x else factor.neighbors_y(i2)
    for w1 in nbrs1:
        for w2 in nbrs2:
            if on_x:
                cross1, cross2 = (i1, w2), (i2, w1)
                removed = ((i1, w1), (i2, w2))
            else:
                cross1, cross2 = (w2, i1), (w1, i2)
                removed = ((w1, i1), (w2, i2))
            if cross1 not in graph.edge_set or cross2 not in graph.edge_set:
                continue
            if cross1 in factor.edge_set or cross2 in factor.edge_set:
                continue
            added = (cross1, cross2)
            if _count_after(factor, removed, added) < base:
                return SwapMove("secondary", removed, added)
    return None


def _find_primary_move(graph: BipartiteGraph, factor: Factor) -> SwapMove | None:
    for link in find_links(graph, factor):
        move = try_primary_swap(graph, factor, link)
        if move is not None:
            return move
    return None


def _find_secondary_move(graph: BipartiteGraph, factor: Factor) -> SwapMove | None:
    for side, size in (("X", graph.n_x), ("Y", graph.n_y)):
        comp = factor.comp_x if side == "X" else factor.comp_y
        for i in range(size):
            for j in range(i + 1, size):
                if comp[i] == comp[j]:
                    continue
                move = try_secondary_swap(
                    graph, factor, VertexRef(side, i), VertexRef(side, j)
                )
                if move is not None:
                    return move
    return None


# -- stuck-state reporting -----------------------------------------------------


@dataclass(frozen=True)
class LinkIsolation:
    """Whether the factor neighborhoods at a link are mutually non-adjacent."""

    link: Link
    joining_edges: tuple[Edge, ...]  # host edges between N_F(u) and N_F(v)

    @property
    def isolated(self) -> bool:
        return not self.joining_edges


@dataclass(frozen=True)
class DegreeAuditRecord:
    """One measured degree against one bound; ok is None when no bound applies."""

    name: str  # 'outside-own-component' | 'inside-own-component'
    vertex: VertexRef
    value: int
    bound: int | None
    ok: bool | None


@dataclass(frozen=True)
class StuckReport:
    factor: Factor
    links: tuple[Link, ...]
    isolation: tuple[LinkIsolation, ...]
    neighborhoods_isolated: bool
    degree_audits: tuple[DegreeAuditRecord, ...]
    k: int
    l: int | None
    min_degree: int
    contradiction: bool
    contradiction_vertices: tuple[VertexRef, ...]


def _build_stuck_report(
    graph: BipartiteGraph, factor: Factor, k: int, l: int | None
) -> StuckReport:
    links = find_links(graph, factor)
    isolation = []
    for link in links:
        n_u = factor.neighbors_x(link.u.index)  # Y vertices
        n_v = factor.neighbors_y(link.v.index)  # X vertices
        joining = tuple(
            (a, b) for a in n_v for b in n_u if graph.has_edge(a, b)
        )
        isolation.append(LinkIsolation(link, joining))
    bound_out = None if l is None else (k * k - k + 1) * (2 * l - 2 * k - 1)
    bound_in = None if l is None else k * bound_out + l - 1

    audits: list[DegreeAuditRecord] = []
    for v in graph.vertices():
        own = factor.component_of(v)
        nbrs = (
            graph.neighbors_x(v.index) if v.side == "X" else graph.neighbors_y(v.index)
        )
        other_comp = factor.comp_y if v.side == "X" else factor.comp_x
        outside = sum(1 for w in nbrs if other_comp[w] != own)
        audits.append(
            DegreeAuditRecord(
                "outside-own-component",
                v,
                outside,
                bound_out,
                None if bound_out is None else outside <= bound_out,
            )
        )
    endpoint_seen = set()
    for link in links:
        for v in (link.u, link.v):
            if v in endpoint_seen:
                continue
            endpoint_seen.add(v)
            own = factor.component_of(v)
            nbrs = (
                graph.neighbors_x(v.index)
                if v.side == "X"
                else graph.neighbors_y(v.index)
            )
            other_comp = factor.comp_y if v.side == "X" else factor.comp_x
            inside = sum(1 for w in nbrs if other_comp[w] == own)
            audits.append(
                DegreeAuditRecord(
                    "inside-own-component",
                    v,
                    inside,
                    bound_in,
                    None if bound_in is None else inside <= bound_in,
                )
            )

    delta = graph.min_degree()
    contradiction_vertices: tuple[VertexRef, ...] = ()
    if l is not None and links:
        # In a genuinely stuck pattern-free state both bounds apply, so a
        # link endpoint's degree is capped by their sum; a cap under the
        # minimum degree is impossible.
        if bound_out + bound_in < delta:
            contradiction_vertices = tuple(
                sorted(endpoint_seen, key=lambda v: v.sort_key)
            )
    return StuckReport(
        factor=factor,
        links=links,
        isolation=tuple(isolation),
        neighborhoods_isolated=all(rec.isolated for rec in isolation),
        degree_audits=tuple(audits),
        k=k,
        l=l,
        min_degree=delta,
        contradiction=bool(contradiction_vertices),
        contradiction_vertices=contradiction_vertices,
    )


def stuck_audit(graph: BipartiteGraph, factor: Factor, k: int, l: int) -> StuckReport:
    """Full report for a factor on which no move helps.

    NotStuckError when a primary or secondary move still exists.
    """
    if factor.n_components <= 1:
        raise NotStuckError("factor is connected")
    if _find_primary_move(graph, factor) or _find_secondary_move(graph, factor):
        raise NotStuckError("an improving move still exists")
    return _build_stuck_report(graph, factor, k, l)


def serialize_stuck_report(report: StuckReport) -> str:
    lines = []
    for link in report.links:
        lines.append(
            f"LINK {link.u.label} {link.v.label} {link.component_u} {link.component_v}"
        )
    for rec in report.isolation:
        if rec.isolated:
            lines.append(f"EQ10 {rec.link.u.label} {rec.link.v.label} HOLDS")
        else:
            a, b = rec.joining_edges[0]
            lines.append(
                f"EQ10 {rec.link.u.label} {rec.link.v.label} FAILS X{a} Y{b}"
            )
    lines.append(f"EQ10 ALL {'HOLDS' if report.neighborhoods_isolated else 'FAILS'}")
    for rec in report.degree_audits:
        verdict = "NA" if rec.ok is None else ("OK" if rec.ok else "EXCEEDS")
        bound = "-" if rec.bound is None else str(rec.bound)
        lines.append(
            f"DEG-AUDIT {rec.name} {rec.vertex.label} {rec.value} {bound} {verdict}"
        )
    lines.append(f"CONTRADICTION {'RAISED' if report.contradiction else 'CLEAR'}")
    for v in report.contradiction_vertices:
        lines.append(f"CONTRADICTION-VERTEX {v.label}")
    return "\n".join(lines) + "\n"


# -- the connecting loop -------------------------------------------------------


def connect_factor(
    graph: BipartiteGraph,
    factor: Factor,
    l: int | None = None,
    trace: list | None = None,
) -> Factor | StuckReport:
    """Drive a regular factor to one component, or report the stuck state.

    Primary moves over all links are tried first, then secondary moves over
    all same-side cross-component pairs; the first strictly improving move
    is applied and the scan restarts.  ``l`` only feeds the stuck report's
    degree bounds.  ``trace`` (when a list) collects (move, count)
    pairs as moves are accepted.
    """
    if not graph.is_connected():
        raise NotConnectedError("host graph is disconnected; no factor can connect it")
    k = factor.regularity()
    if k is None:
        raise NotRegularError("connectivity search expects a regular factor")
    current = factor
    while current.n_components > 1:
        move = _find_primary_move(graph, current) or _find_secondary_move(graph, current)
        if move is None:
            return _build_stuck_report(graph, current, k, l)
        before = current.n_components
        current = apply_swap(current, move)
        if current.n_components >= before:
            raise AssertionError("accepted move failed to reduce the component count")
        if trace is not None:
            trace.append((move, current.n_components))
    return current


# -- pipelines -----------------------------------------------------------------


def check_factor(
    graph: BipartiteGraph, factor: Factor, k: int, connected: bool
) -> None:
    """Independent validity check: edges, regularity, spanning, connectivity.

    Recomputes everything from the edge list; raises AssertionError on any
    breach.  Pipelines run this before returning a factor.
    """
    for e in factor.edge_list:
        if e not in graph.edge_set:
            raise AssertionError(f"edge {e} not in host")
    dx = [0] * graph.n_x
    dy = [0] * graph.n_y
    for x, y in factor.edge_list:
        dx[x] += 1
        dy[y] += 1
    if not all(d == k for d in dx):
        raise AssertionError(f"X degrees {dx} != {k}")
    if not all(d == k for d in dy):
        raise AssertionError(f"Y degrees {dy} != {k}")
    if connected and _component_count(graph.n_x, graph.n_y, factor.edge_list) != 1:
        raise AssertionError("factor is not connected")


def cycle_order(factor: Factor) -> tuple[VertexRef, ...]:
    """Vertex rotation of a connected 2-regular factor.

    Starts at X0 and moves toward its lower-indexed factor neighbor.
    """
    if factor.regularity() != 2 or not factor.is_connected():
        raise NotRegularError("cycle order needs a connected 2-regular factor")
    host = factor.host
    order: list[VertexRef] = [VertexRef("X", 0)]
    prev: VertexRef | None = None
    cur = order[0]
    for _ in range(host.n_x + host.n_y - 1):
        nbrs = (
            factor.neighbors_x(cur.index)
            if cur.side == "X"
            else factor.neighbors_y(cur.index)
        )
        side = "Y" if cur.side == "X" else "X"
        # the previous vertex always sits on `side`; skip it to keep moving
        step = [w for w in nbrs if prev is None or w != prev.index]
        prev, cur = cur, VertexRef(side, step[0])
        order.append(cur)
    return tuple(order)


def _hypotheses(
    graph: BipartiteGraph, k: int, l: int, min_degree: int
) -> None:
    if not graph.is_connected():
        raise HypothesisViolatedError("connected", "host graph is disconnected")
    if not graph.is_balanced():
        raise HypothesisViolatedError(
            "balance", f"classes have sizes {graph.n_x} and {graph.n_y}"
        )
    if graph.min_degree() < min_degree:
        raise HypothesisViolatedError(
            "min_degree", f"minimum degree {graph.min_degree()} < {min_degree}"
        )
    if not is_skl_free(graph, k, l):
        raise HypothesisViolatedError(
            "skl_free", f"graph contains an induced ({k},{l}) star pair"
        )


def connected_k_factor(graph: BipartiteGraph, k: int, l: int) -> Factor:
    """Connected k-regular spanning subgraph under the degree threshold.

    Hypotheses (checked, in order): connected, balanced, minimum degree at
    least threshold_c(k, l), no induced (k, l) star pair.  A certificate or
    a stuck state under these hypotheses is impossible, so either raises
    TheoremContradictionError and the caller should treat it as a bug.
    """
    c = threshold_c(k, l)
    _hypotheses(graph, k, l, c)
    got = find_f_factor(graph, DegreeDemand.uniform(graph, k))
    if isinstance(got, ViolatorCertificate):
        raise TheoremContradictionError(
            "no k-regular factor despite satisfied hypotheses", report=got
        )
    result = connect_factor(graph, got, l=l)
    if isinstance(result, StuckReport):
        raise TheoremContradictionError(
            "connectivity search stuck despite satisfied hypotheses", report=result
        )
    check_factor(graph, result, k, connected=True)
    return result


def _component_vertex_sets(factor: Factor) -> list[tuple[list[int], list[int]]]:
    """Per component: (sorted X indices, sorted Y indices)."""
    n = factor.n_components
    out: list[tuple[list[int], list[int]]] = [([], []) for _ in range(n)]
    for x, c in enumerate(factor.comp_x):
        out[c][0].append(x)
    for y, c in enumerate(factor.comp_y):
        out[c][1].append(y)
    return out


def _weave_quotient_cycle(graph: BipartiteGraph, factor: Factor) -> Factor | None:
    """Hamilton cycle of a stuck all-quadrilateral state, if the shape fits.

    Requirements checked here: every component is a 4-cycle; between two
    components all host edges run one way only (Y half of one to X half of
    the other) and, when present, form the full 2x2 pattern; the component
    quotient under these arcs is a single directed cycle.  Walking that
    cycle and traversing each quadrilateral in full yields the Hamilton
    cycle.
    """
    comps = _component_vertex_sets(factor)
    for xs, ys in comps:
        if len(xs) != 2 or len(ys) != 2:
            return None
    n = len(comps)
    succ = [-1] * n
    pred = [-1] * n
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            cross = [
                (a, b) for b in comps[i][1] for a in comps[j][0] if graph.has_edge(a, b)
            ]
            if not cross:
                continue
            if len(cross) != 4:
                return None
            if succ[i] != -1 or pred[j] != -1:
                return None
            succ[i] = j
            pred[j] = i
    if any(s == -1 for s in succ) or any(p == -1 for p in pred):
        return None
    order = [0]
    while True:
        nxt = succ[order[-1]]
        if nxt == 0:
            break
        if nxt in order:
            return None
        order.append(nxt)
    if len(order) != n:
        return None
    edges: list[Edge] = []
    for pos, ci in enumerate(order):
        xs, ys = comps[ci]
        edges.append((xs[0], ys[0]))
        edges.append((xs[1], ys[0]))
        edges.append((xs[1], ys[1]))
        nxt_xs, _ = comps[order[(pos + 1) % n]]
        edges.append((nxt_xs[0], ys[1]))
    return Factor(graph, edges)


def hamilton_s13(graph: BipartiteGraph) -> Factor:
    """Hamilton cycle of a connected balanced (1,3)-star-pair-free graph
    with minimum degree at least 4.

    Pipeline: 2-regular factor by flow, then the connecting loop; if that
    sticks, the stuck state must consist of quadrilateral components whose
    quotient is a cycle, and the explicit Hamilton cycle is woven from it.
    StructureUnrecognizedError (carrying the stuck report) otherwise.
    """
    if not graph.is_connected():
        raise HypothesisViolatedError("connected", "host graph is disconnected")
    if not graph.is_balanced():
        raise HypothesisViolatedError(
            "balance", f"classes have sizes {graph.n_x} and {graph.n_y}"
        )
    if graph.min_degree() < 4:
        raise HypothesisViolatedError(
            "min_degree", f"minimum degree {graph.min_degree()} < 4"
        )
    if not is_skl_free(graph, 1, 3):
        raise HypothesisViolatedError("skl_free", "graph contains an induced (1,3) star pair")
    got = find_f_factor(graph, DegreeDemand.uniform(graph, 2))
    if isinstance(got, ViolatorCertificate):
        raise TheoremContradictionError(
            "no 2-regular factor despite satisfied hypotheses", report=got
        )
    result = connect_factor(graph, got, l=3)
    if isinstance(result, Factor):
        check_factor(graph, result, 2, connected=True)
        return result
    report = result
    comps = _component_vertex_sets(report.factor)
    if any(len(xs) != 2 or len(ys) != 2 for xs, ys in comps):
        raise StructureUnrecognizedError(
            "stuck with a component larger than a quadrilateral", report=report
        )
    # every vertex may see at most one foreign component
    for v in graph.vertices():
        own = report.factor.component_of(v)
        other_comp = report.factor.comp_y if v.side == "X" else report.factor.comp_x
        nbrs = (
            graph.neighbors_x(v.index) if v.side == "X" else graph.neighbors_y(v.index)
        )
        foreign = {other_comp[w] for w in nbrs if other_comp[w] != own}
        if len(foreign) > 1:
            raise StructureUnrecognizedError(
                f"vertex {v.label} sees {len(foreign) + 1} components", report=report
            )
    woven = _weave_quotient_cycle(graph, report.factor)
    if woven is None:
        raise StructureUnrecognizedError(
            "quadrilateral components do not chain into a cycle", report=report
        )
    check_factor(graph, woven, 2, connected=True)
    return woven
