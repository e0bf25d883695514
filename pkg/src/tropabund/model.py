"""Graphs, parametrized tropical curves, cycle bases, cores and smoothings.

Curves are immutable.  A curve stores, per bounded edge, an integral
direction vector (weight folded in, so the weight is the content of the
vector) and a positive rational length.  Vertex positions are derived data:
only a base vertex with an optional base position is stored, everything
else follows by walking edges.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import PreconditionError, StructuralError
from .linalg import ZERO, rational_content

IntVec = tuple[int, ...]


@dataclass(frozen=True)
class Edge:
    id: int
    tail: str
    head: str


@dataclass(frozen=True)
class Leg:
    id: int
    vertex: str


@dataclass(frozen=True)
class Graph:
    """Finite multigraph with legs; parallel edges and loops are allowed."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    legs: tuple[Leg, ...] = ()

    def __post_init__(self):
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise StructuralError("duplicate vertex ids")
        for e in self.edges:
            if e.tail not in vset or e.head not in vset:
                raise StructuralError(f"edge {e.id} references a missing vertex")
        for leg in self.legs:
            if leg.vertex not in vset:
                raise StructuralError(f"leg {leg.id} references a missing vertex")

    @staticmethod
    def build(vertices: Sequence[str], edge_pairs: Sequence[tuple[str, str]],
              leg_vertices: Sequence[str] = ()) -> "Graph":
        edges = tuple(Edge(i, t, h) for i, (t, h) in enumerate(edge_pairs))
        legs = tuple(Leg(i, v) for i, v in enumerate(leg_vertices))
        return Graph(tuple(vertices), edges, legs)

    def incident_edges(self, v: str) -> list[Edge]:
        return [e for e in self.edges if e.tail == v or e.head == v]

    def valence(self, v: str) -> int:
        """Number of edge endpoints at v; a loop counts twice, legs ignored."""
        n = 0
        for e in self.edges:
            if e.tail == v:
                n += 1
            if e.head == v:
                n += 1
        return n


def connected_components(graph: Graph) -> list[set[str]]:
    adj: dict[str, set[str]] = {v: set() for v in graph.vertices}
    for e in graph.edges:
        adj[e.tail].add(e.head)
        adj[e.head].add(e.tail)
    seen: set[str] = set()
    comps = []
    for v in graph.vertices:
        if v in seen:
            continue
        comp = {v}
        queue = deque([v])
        seen.add(v)
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    queue.append(y)
        comps.append(comp)
    return comps


def genus(graph: Graph) -> int:
    """First Betti number #E - #V + #components (legs ignored)."""
    return len(graph.edges) - len(graph.vertices) + len(connected_components(graph))


@dataclass(frozen=True)
class TropicalCurve:
    """A parametrized tropical curve (or declared subcurve) in R^r."""

    ambient_dim: int
    graph: Graph
    directions: tuple[IntVec, ...]
    lengths: tuple[Fraction, ...]
    leg_directions: tuple[IntVec, ...] = ()
    base_vertex: str | None = None
    base_position: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        r = self.ambient_dim
        if r < 1:
            raise StructuralError("ambient dimension must be positive")
        if len(self.directions) != len(self.graph.edges):
            raise StructuralError("one direction per edge required")
        if len(self.lengths) != len(self.graph.edges):
            raise StructuralError("one length per edge required")
        if len(self.leg_directions) != len(self.graph.legs):
            raise StructuralError("one direction per leg required")
        for w in list(self.directions) + list(self.leg_directions):
            if len(w) != r:
                raise StructuralError("direction vector has wrong dimension")
            if not all(isinstance(c, int) for c in w):
                raise StructuralError("directions must be integral")
            if all(c == 0 for c in w):
                raise StructuralError("zero direction vector")
        if self.base_vertex is not None and self.base_vertex not in self.graph.vertices:
            raise StructuralError("base vertex is not in the graph")
        if self.base_position is not None and len(self.base_position) != r:
            raise StructuralError("base position has wrong dimension")

    @staticmethod
    def build(ambient_dim: int,
              vertices: Sequence[str],
              edges: Sequence[tuple[str, str, Sequence[int], Fraction | int | str]],
              legs: Sequence[tuple[str, Sequence[int]]] = (),
              base: tuple[str, Sequence] | None = None) -> "TropicalCurve":
        graph = Graph.build(vertices,
                            [(t, h) for t, h, _, _ in edges],
                            [v for v, _ in legs])
        dirs = tuple(tuple(int(c) for c in w) for _, _, w, _ in edges)
        lens = tuple(Fraction(l) for _, _, _, l in edges)
        leg_dirs = tuple(tuple(int(c) for c in w) for _, w in legs)
        base_v = base[0] if base else None
        base_p = tuple(Fraction(x) for x in base[1]) if base else None
        return TropicalCurve(ambient_dim, graph, dirs, lens, leg_dirs, base_v, base_p)

    # -- local direction bookkeeping ------------------------------------

    def outgoing(self, v: str) -> list[IntVec]:
        """Direction vectors leaving v: +w at the tail, -w at the head.

        A loop contributes both and therefore cancels, matching the fact
        that a loop never obstructs balancing.
        """
        out: list[IntVec] = []
        for e, w in zip(self.graph.edges, self.directions):
            if e.tail == v:
                out.append(w)
            if e.head == v:
                out.append(tuple(-c for c in w))
        for leg, w in zip(self.graph.legs, self.leg_directions):
            if leg.vertex == v:
                out.append(w)
        return out

    def vertex_deficit(self, v: str) -> IntVec:
        """The leg direction that would balance v (zero iff v balances)."""
        total = [0] * self.ambient_dim
        for w in self.outgoing(v):
            for i, c in enumerate(w):
                total[i] += c
        return tuple(-c for c in total)

    def edge_weight(self, edge_id: int) -> int:
        return int(rational_content(self.directions[edge_id]))

    def positions(self) -> dict[str, tuple[Fraction, ...]]:
        """Vertex positions from the base data; requires a base position.

        Disconnected curves get each later component anchored at the origin,
        which is only used for rendering; cycle closure is checked
        separately and does not depend on this anchoring.
        """
        if self.base_position is None:
            raise PreconditionError("curve has no base position")
        r = self.ambient_dim
        pos: dict[str, tuple[Fraction, ...]] = {}
        adj: dict[str, list[tuple[Edge, int]]] = defaultdict(list)
        for e in self.graph.edges:
            adj[e.tail].append((e, +1))
            adj[e.head].append((e, -1))
        origin = tuple(Fraction(0) for _ in range(r))
        base = self.base_vertex if self.base_vertex is not None else (
            self.graph.vertices[0] if self.graph.vertices else None)
        order = list(self.graph.vertices)
        if base is not None:
            order.remove(base)
            order.insert(0, base)
        for root in order:
            if root in pos:
                continue
            pos[root] = self.base_position if root == base else origin
            queue = deque([root])
            while queue:
                x = queue.popleft()
                for e, sgn in adj[x]:
                    y = e.head if sgn > 0 else e.tail
                    if y in pos:
                        continue
                    step = tuple(pos[x][i] + sgn * self.lengths[e.id] * self.directions[e.id][i]
                                 for i in range(r))
                    pos[y] = step
                    queue.append(y)
        return pos

    def without_legs(self) -> "TropicalCurve":
        graph = Graph(self.graph.vertices, self.graph.edges, ())
        return replace(self, graph=graph, leg_directions=())


@dataclass(frozen=True)
class CycleBasis:
    """g signed edge walks; each walk is a closed cycle in the graph."""

    cycles: tuple[tuple[tuple[int, int], ...], ...]  # ((edge_id, sign), ...)

    def __len__(self) -> int:
        return len(self.cycles)

    def eta(self, cycle_index: int, edge_id: int) -> int:
        s = 0
        for eid, sign in self.cycles[cycle_index]:
            if eid == edge_id:
                s += sign
        return s


def cycle_basis(graph: Graph) -> CycleBasis:
    """Fundamental cycles of a deterministic BFS spanning forest.

    Roots are taken in vertex input order and edges are scanned in input
    order, so the same graph always yields the same basis.  Each non-tree
    edge generates one cycle carrying sign +1 on itself.
    """
    adj: dict[str, list[Edge]] = defaultdict(list)
    for e in graph.edges:
        adj[e.tail].append(e)
        adj[e.head].append(e)
    parent: dict[str, tuple[Edge, int] | None] = {}
    tree_edges: set[int] = set()
    for root in graph.vertices:
        if root in parent:
            continue
        parent[root] = None
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for e in adj[x]:
                y = e.head if e.tail == x else e.tail
                if e.tail == e.head:
                    continue
                if y not in parent:
                    parent[y] = (e, +1 if e.tail == x else -1)
                    tree_edges.add(e.id)
                    queue.append(y)

    def path_to_root(v: str) -> list[tuple[str, Edge, int]]:
        out = []
        while parent[v] is not None:
            e, sgn = parent[v]  # sgn +1: walked tail->head into v
            out.append((v, e, sgn))
            v = e.tail if sgn > 0 else e.head
        return out

    cycles: list[tuple[tuple[int, int], ...]] = []
    for e in graph.edges:
        if e.id in tree_edges:
            continue
        if e.tail == e.head:
            cycles.append(((e.id, +1),))
            continue
        t_chain = path_to_root(e.tail)
        h_chain = path_to_root(e.head)
        # Drop the common tail of the two root paths.
        while t_chain and h_chain and t_chain[-1][1].id == h_chain[-1][1].id:
            t_chain.pop()
            h_chain.pop()
        walk: list[tuple[int, int]] = [(e.id, +1)]
        # Continue from the head back down to the tail: head-to-ancestor
        # traverses against the parent pointers, ancestor-to-tail with them.
        for v, ed, sgn in h_chain:
            walk.append((ed.id, -sgn))
        for v, ed, sgn in reversed(t_chain):
            walk.append((ed.id, sgn))
        cycles.append(tuple(walk))
    return CycleBasis(tuple(cycles))


def cycle_is_closed(graph: Graph, walk: Sequence[tuple[int, int]]) -> bool:
    """Check that a signed edge walk returns to its start vertex."""
    if not walk:
        return False
    edges = {e.id: e for e in graph.edges}
    first, fs = walk[0]
    at = edges[first].head if fs > 0 else edges[first].tail
    start = edges[first].tail if fs > 0 else edges[first].head
    for eid, sgn in walk[1:]:
        e = edges[eid]
        src = e.tail if sgn > 0 else e.head
        dst = e.head if sgn > 0 else e.tail
        if src != at:
            return False
        at = dst
    return at == start


# -- validation ---------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    balanced: Mapping[str, bool]
    deficits: Mapping[str, IntVec]
    nonpositive_length_edges: tuple[int, ...]
    closure_holds: bool
    closure_failures: tuple[tuple[int, int], ...]  # (cycle index, coordinate)

    @property
    def balancing_holds(self) -> bool:
        return all(self.balanced.values())

    @property
    def unbalanced_vertices(self) -> tuple[str, ...]:
        return tuple(v for v, ok in self.balanced.items() if not ok)

    @property
    def is_valid_curve(self) -> bool:
        return self.balancing_holds and self.is_valid_subcurve

    @property
    def is_valid_subcurve(self) -> bool:
        return not self.nonpositive_length_edges and self.closure_holds


def validate(curve: TropicalCurve) -> ValidationReport:
    """Full semantic report: balancing per vertex, positivity, closure.

    Structural problems (dangling ids, shape mismatches) raise on curve
    construction and never reach this function.
    """
    balanced = {}
    deficits = {}
    for v in curve.graph.vertices:
        d = curve.vertex_deficit(v)
        deficits[v] = d
        balanced[v] = all(c == 0 for c in d)
    bad_lengths = tuple(e.id for e in curve.graph.edges if curve.lengths[e.id] <= 0)
    basis = cycle_basis(curve.graph)
    failures = []
    r = curve.ambient_dim
    for i, walk in enumerate(basis.cycles):
        total = [ZERO] * r
        for eid, sgn in walk:
            w = curve.directions[eid]
            l = curve.lengths[eid]
            for c in range(r):
                total[c] += sgn * l * w[c]
        for c in range(r):
            if total[c] != 0:
                failures.append((i, c))
    return ValidationReport(balanced, deficits, bad_lengths, not failures, tuple(failures))


# -- core neighbourhood --------------------------------------------------


def _is_bridge(graph: Graph, edge: Edge) -> bool:
    if edge.tail == edge.head:
        return False
    adj: dict[str, list[Edge]] = defaultdict(list)
    for e in graph.edges:
        if e.id == edge.id:
            continue
        adj[e.tail].append(e)
        adj[e.head].append(e)
    seen = {edge.tail}
    queue = deque([edge.tail])
    while queue:
        x = queue.popleft()
        if x == edge.head:
            return False
        for e in adj[x]:
            y = e.head if e.tail == x else e.tail
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return True


def core_neighbourhood(curve: TropicalCurve) -> TropicalCurve:
    """Minimal subcurve of full genus: drop legs, bridges, isolated vertices.

    An edge survives iff it lies on some cycle, so removing all bridges at
    once is already stable.  The result may be empty or disconnected.
    """
    keep_edges = [e for e in curve.graph.edges if not _is_bridge(curve.graph, e)]
    used = set()
    for e in keep_edges:
        used.add(e.tail)
        used.add(e.head)
    vertices = tuple(v for v in curve.graph.vertices if v in used)
    old_ids = [e.id for e in keep_edges]
    edges = tuple(Edge(i, e.tail, e.head) for i, e in enumerate(keep_edges))
    graph = Graph(vertices, edges, ())
    dirs = tuple(curve.directions[i] for i in old_ids)
    lens = tuple(curve.lengths[i] for i in old_ids)
    base_v = curve.base_vertex if curve.base_vertex in used else None
    base_p = curve.base_position if base_v is not None else None
    return TropicalCurve(curve.ambient_dim, graph, dirs, lens, (), base_v, base_p)


# -- smoothing into segments ---------------------------------------------


@dataclass(frozen=True)
class Segment:
    id: int
    edges: tuple[tuple[int, int], ...]  # (edge_id, orientation) along the path
    start: str
    end: str
    closed: bool = False


@dataclass(frozen=True)
class SegmentDecomposition:
    segments: tuple[Segment, ...]
    eta: tuple[tuple[int, ...], ...]       # eta'[cycle][segment]
    blocks: tuple[tuple[IntVec, ...], ...]  # A_j columns, traversal oriented

    def segment_of_edge(self, edge_id: int) -> int:
        for seg in self.segments:
            for eid, _ in seg.edges:
                if eid == edge_id:
                    return seg.id
        raise KeyError(edge_id)


def smoothing(core: TropicalCurve, basis: CycleBasis | None = None) -> SegmentDecomposition:
    """Group core edges into segments and express the cycle data on them.

    The input must be a core: no legs, every vertex of valence >= 2.
    Components that are pure cycles (all vertices 2-valent) become a single
    closed segment anchored at their first vertex in input order.
    """
    graph = core.graph
    if graph.legs:
        raise PreconditionError("smoothing expects a core without legs")
    for v in graph.vertices:
        if graph.valence(v) < 2:
            raise PreconditionError(f"vertex {v!r} has valence < 2; not a core")
    if basis is None:
        basis = cycle_basis(graph)

    ends: dict[str, list[tuple[Edge, int]]] = defaultdict(list)  # +1 leaving via tail
    for e in graph.edges:
        ends[e.tail].append((e, +1))
        ends[e.head].append((e, -1))
    branch = {v for v in graph.vertices if graph.valence(v) >= 3}

    segments: list[Segment] = []
    seen_edges: set[int] = set()

    def walk(start: str, first: Edge, orient: int) -> Segment:
        path = [(first.id, orient)]
        seen_edges.add(first.id)
        at = first.head if orient > 0 else first.tail
        prev = first.id
        while at not in branch and at != start:
            nxt = None
            for e, sgn in ends[at]:
                if e.id == prev or e.id in seen_edges:
                    continue
                nxt = (e, sgn)
                break
            if nxt is None:
                break
            e, sgn = nxt
            path.append((e.id, sgn))
            seen_edges.add(e.id)
            prev = e.id
            at = e.head if sgn > 0 else e.tail
        return Segment(len(segments), tuple(path), start, at, closed=(at == start))

    for v in graph.vertices:
        if v not in branch:
            continue
        for e, sgn in ends[v]:
            if e.id in seen_edges:
                continue
            segments.append(walk(v, e, sgn))
    # Pure-cycle components: anchor at the first untouched vertex.
    for v in graph.vertices:
        for e, sgn in ends[v]:
            if e.id not in seen_edges:
                segments.append(walk(v, e, sgn))

    covered = sorted(eid for s in segments for eid, _ in s.edges)
    if covered != sorted(e.id for e in graph.edges):
        raise PreconditionError("segment walk failed to cover the core exactly once")

    seg_of_edge = {}
    orient_of_edge = {}
    for seg in segments:
        for eid, sgn in seg.edges:
            seg_of_edge[eid] = seg.id
            orient_of_edge[eid] = sgn

    eta_rows: list[tuple[int, ...]] = []
    for ci, walk_edges in enumerate(basis.cycles):
        row = [0] * len(segments)
        for eid, sgn in walk_edges:
            j = seg_of_edge[eid]
            rel = sgn * orient_of_edge[eid]
            if row[j] == 0:
                row[j] = rel
            elif row[j] != rel:
                raise PreconditionError(
                    f"cycle {ci} traverses segment {j} with inconsistent signs")
        eta_rows.append(tuple(row))

    blocks = []
    for seg in segments:
        cols = []
        for eid, sgn in seg.edges:
            w = core.directions[eid]
            cols.append(tuple(sgn * c for c in w))
        blocks.append(tuple(cols))
    return SegmentDecomposition(tuple(segments), tuple(eta_rows), tuple(blocks))


def subcurve_from_segments(core: TropicalCurve, decomposition: SegmentDecomposition,
                           segment_ids: Iterable[int]) -> TropicalCurve:
    """Restriction of a core to the chosen segments (balancing not implied)."""
    wanted = set(segment_ids)
    for j in wanted:
        if j < 0 or j >= len(decomposition.segments):
            raise PreconditionError(f"unknown segment id {j}")
    edge_ids = sorted(eid for j in wanted for eid, _ in decomposition.segments[j].edges)
    keep = [core.graph.edges[i] for i in edge_ids]
    used = set()
    for e in keep:
        used.add(e.tail)
        used.add(e.head)
    vertices = tuple(v for v in core.graph.vertices if v in used)
    edges = tuple(Edge(i, e.tail, e.head) for i, e in enumerate(keep))
    dirs = tuple(core.directions[i] for i in edge_ids)
    lens = tuple(core.lengths[i] for i in edge_ids)
    return TropicalCurve(core.ambient_dim, Graph(vertices, edges, ()), dirs, lens, ())


# -- degree profiles ------------------------------------------------------


@dataclass(frozen=True)
class DegreeProfile:
    weighted_counts: Mapping[IntVec, Fraction]  # primitive direction -> total weight
    standard_degree: int | None
    n_legs: int = 0


def degree_profile(curve: TropicalCurve) -> DegreeProfile:
    """Tally legs by primitive direction, weights folded in.

    The standard degree d is set when the legs are exactly d (weighted) in
    each coordinate direction e_1..e_r plus d in -(e_1+...+e_r).
    """
    r = curve.ambient_dim
    counts: dict[IntVec, Fraction] = defaultdict(lambda: ZERO)
    for w in curve.leg_directions:
        weight = rational_content(w)
        prim = tuple(int(c / weight) for c in (Fraction(x) for x in w))
        counts[prim] += weight
    unit = [tuple(1 if i == j else 0 for i in range(r)) for j in range(r)]
    anti = tuple(-1 for _ in range(r))
    classes = unit + [anti]
    std: int | None = None
    if counts and set(counts) == set(classes):
        values = {counts[c] for c in classes}
        if len(values) == 1:
            d = values.pop()
            if d.denominator == 1 and d > 0:
                std = int(d)
    return DegreeProfile(dict(counts), std, len(curve.leg_directions))


# -- misc surgery used by tests and fixtures ------------------------------


def subdivide_edge(curve: TropicalCurve, edge_id: int, t: Fraction,
                   new_vertex: str) -> TropicalCurve:
    """Split edge ``edge_id`` at parameter t in (0,1); direction unchanged."""
    t = Fraction(t)
    if not 0 < t < 1:
        raise PreconditionError("subdivision parameter must be in (0, 1)")
    if new_vertex in curve.graph.vertices:
        raise PreconditionError("subdivision vertex id already used")
    old = curve.graph.edges[edge_id]
    vertices = curve.graph.vertices + (new_vertex,)
    pairs = []
    dirs = []
    lens = []
    for e in curve.graph.edges:
        if e.id == edge_id:
            pairs.append((old.tail, new_vertex))
            dirs.append(curve.directions[edge_id])
            lens.append(curve.lengths[edge_id] * t)
            pairs.append((new_vertex, old.head))
            dirs.append(curve.directions[edge_id])
            lens.append(curve.lengths[edge_id] * (1 - t))
        else:
            pairs.append((e.tail, e.head))
            dirs.append(curve.directions[e.id])
            lens.append(curve.lengths[e.id])
    graph = Graph.build(vertices, pairs, [l.vertex for l in curve.graph.legs])
    return TropicalCurve(curve.ambient_dim, graph, tuple(dirs), tuple(lens),
                         curve.leg_directions, curve.base_vertex, curve.base_position)


def relabel(curve: TropicalCurve, vertex_order: Sequence[str],
            edge_order: Sequence[int]) -> TropicalCurve:
    """Same curve with vertices and edges listed in a different order.

    Used to exercise invariance under spanning-tree re-choice: the BFS
    forest, and hence the cycle basis, depends on input order only.
    """
    if sorted(vertex_order) != sorted(curve.graph.vertices):
        raise PreconditionError("vertex_order must be a permutation")
    if sorted(edge_order) != list(range(len(curve.graph.edges))):
        raise PreconditionError("edge_order must be a permutation")
    pairs = [(curve.graph.edges[i].tail, curve.graph.edges[i].head) for i in edge_order]
    dirs = tuple(curve.directions[i] for i in edge_order)
    lens = tuple(curve.lengths[i] for i in edge_order)
    graph = Graph.build(vertex_order, pairs, [l.vertex for l in curve.graph.legs])
    return TropicalCurve(curve.ambient_dim, graph, dirs, lens,
                         curve.leg_directions, curve.base_vertex, curve.base_position)
