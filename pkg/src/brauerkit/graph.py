"""Brauer graphs with at most one cycle, rotations, and topology reports.

A Brauer graph is a finite connected graph with a fixed clockwise cyclic
order on the edges at every vertex.  We allow at most one cycle; parallel
edges are fine, loops only for the single-cycle-edge case.  All structures
here are immutable after construction and all operations are pure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping, Optional

from .theta import Scalar, parse_scalar


class GraphError(ValueError):
    """Raised for structurally invalid graphs or invalid (graph, s) pairs."""


# ---------------------------------------------------------------------------
# core data model


class BrauerGraph:
    """Vertices with clockwise cyclic edge lists; at most one cycle.

    ``vertices`` maps vertex id to the cyclic tuple of incident edge ids.
    Every edge id must occur exactly twice over all lists (twice at one
    vertex iff it is a loop).
    """

    def __init__(self, vertices: Mapping[str, Iterable[str]],
                 distinguished: Optional[str] = None):
        self.vertices: dict[str, tuple[str, ...]] = {
            v: tuple(edges) for v, edges in vertices.items()
        }
        self.distinguished = distinguished
        self._build_edges()
        self._check_connected()
        betti = len(self.edges) - len(self.vertices) + 1
        if betti not in (0, 1):
            raise GraphError(f"first Betti number {betti}, need 0 (tree) or 1 (unicyclic)")
        self.betti = betti
        if distinguished is not None and distinguished not in self.edges:
            raise GraphError(f"distinguished edge {distinguished!r} not in graph")

    def _build_edges(self) -> None:
        occurrences: dict[str, list[str]] = {}
        for v, cyc in self.vertices.items():
            for e in cyc:
                occurrences.setdefault(e, []).append(v)
        for e, occ in occurrences.items():
            if len(occ) != 2:
                raise GraphError(f"edge {e!r} occurs {len(occ)} times, expected 2")
        self.edges: dict[str, tuple[str, str]] = {
            e: (occ[0], occ[1]) for e, occ in occurrences.items()
        }
        if not self.edges:
            raise GraphError("graph has no edges")

    def _check_connected(self) -> None:
        start = next(iter(self.vertices))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for e in self.vertices[v]:
                for w in self.edges[e]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        if seen != set(self.vertices):
            raise GraphError("graph not connected")

    # -- basic accessors ----------------------------------------------------

    def is_loop(self, e: str) -> bool:
        a, b = self.edges[e]
        return a == b

    def other_end(self, e: str, v: str) -> str:
        a, b = self.edges[e]
        if v == a:
            return b
        if v == b:
            return a
        raise KeyError(f"{v!r} is not an endpoint of {e!r}")

    def degree(self, v: str) -> int:
        return len(self.vertices[v])

    def cyclic_successor(self, v: str, pos: int) -> tuple[str, int]:
        cyc = self.vertices[v]
        npos = (pos + 1) % len(cyc)
        return cyc[npos], npos

    def positions_of(self, v: str, e: str) -> list[int]:
        return [i for i, f in enumerate(self.vertices[v]) if f == e]

    def serialize(self) -> dict:
        """Canonical dict form: vertices sorted, lists rotated to the
        smallest edge id."""
        out = {}
        for v in sorted(self.vertices):
            cyc = list(self.vertices[v])
            k = cyc.index(min(cyc))
            out[v] = cyc[k:] + cyc[:k]
        doc = {"vertices": out}
        if self.distinguished is not None:
            doc["distinguished"] = self.distinguished
        return doc

    def __eq__(self, other) -> bool:
        if not isinstance(other, BrauerGraph):
            return NotImplemented
        return self.serialize() == other.serialize()

    def __repr__(self) -> str:
        return (f"BrauerGraph({len(self.vertices)} vertices, "
                f"{len(self.edges)} edges, betti={self.betti})")


@dataclass(frozen=True)
class Cycle:
    """The unique cycle, as ordered vertices v_1..v_k and edges e_1..e_k with
    e_i joining v_i and v_{i+1} (indices mod k).  For k = 1 the edge is a loop."""

    vertices: tuple[str, ...]
    edges: tuple[str, ...]

    @property
    def k(self) -> int:
        return len(self.edges)

    def vertex(self, i: int) -> str:
        """v_i with 1-based cyclic index."""
        return self.vertices[(i - 1) % self.k]

    def edge(self, i: int) -> str:
        """e_i with 1-based cyclic index."""
        return self.edges[(i - 1) % self.k]

    def edge_index(self, e: str) -> int:
        return self.edges.index(e) + 1

    def vertex_index(self, v: str) -> int:
        return self.vertices.index(v) + 1

    def reversed_from(self, e1: str) -> "Cycle":
        """The opposite orientation, still starting at edge e1."""
        i = self.edge_index(e1)
        k = self.k
        # new v_1 is the old v_{i+1}; walking backwards gives e_1=e_i, e_2=e_{i-1}, ...
        verts = [self.vertex(i + 1 - j) for j in range(k)]
        edges = [self.edge(i - j) for j in range(k)]
        return Cycle(tuple(verts), tuple(edges))


@dataclass(frozen=True)
class TopologyReport:
    """Edge levels, tree parents, and the inner/outer splitting per cycle vertex.

    At the cycle vertex v_u (between edges e_{u-1} and e_u) the block of the
    cyclic list strictly after e_u and before e_{u-1} is inner, the block
    strictly after e_{u-1} and before e_u is outer.  Trees are listed in
    depth-first cyclic order starting from their level-1 root.
    """

    level: dict[str, int]
    parent: dict[str, str]
    outer_trees: dict[int, tuple[str, ...]]
    inner_trees: dict[int, tuple[str, ...]]
    side: dict[str, str]  # edge -> "cycle" | "outer" | "inner"

    @property
    def o_total(self) -> int:
        return sum(len(t) for t in self.outer_trees.values())

    @property
    def i_total(self) -> int:
        return sum(len(t) for t in self.inner_trees.values())


@dataclass(frozen=True)
class Rotation:
    """The automorphism sigma_s: v_i -> v_{i+s} on the cycle, extended over
    the attached trees, preserving every cyclic order."""

    s: int
    cycle: Cycle
    vertex_map: dict[str, str]
    edge_map: dict[str, str]

    @property
    def order(self) -> int:
        k = self.cycle.k
        return k // gcd(self.s, k) if self.s else 1

    def edge_orbit(self, e: str) -> list[str]:
        orbit = [e]
        f = self.edge_map[e]
        while f != e:
            orbit.append(f)
            f = self.edge_map[f]
        return orbit

    def edge_orbits(self) -> list[list[str]]:
        seen: set[str] = set()
        out = []
        for e in self.edge_map:
            if e not in seen:
                orb = self.edge_orbit(e)
                seen.update(orb)
                out.append(orb)
        return out

    def vertex_orbit(self, v: str) -> list[str]:
        orbit = [v]
        w = self.vertex_map[v]
        while w != v:
            orbit.append(w)
            w = self.vertex_map[w]
        return orbit

    def iterate_edge(self, e: str, n: int) -> str:
        inv = n < 0
        n = abs(n) % max(self.order, 1)
        m = {v: k for k, v in self.edge_map.items()} if inv else self.edge_map
        for _ in range(n):
            e = m[e]
        return e


# ---------------------------------------------------------------------------
# parsing / serialization


@dataclass(frozen=True)
class GraphInput:
    """A parsed input document: graph plus rotation shift and twist scalar.

    ``orient`` optionally names the cycle vertex serving as v_1; rewrites
    carry it along so the inner/outer convention survives re-analysis.
    """

    graph: BrauerGraph
    s: int
    theta: Scalar
    v1: Optional[str] = None
    v2: Optional[str] = None
    orient: Optional[str] = None

    def serialize(self) -> dict:
        doc = self.graph.serialize()
        doc["s"] = self.s
        doc["theta"] = str(self.theta)
        if self.v1 is not None:
            doc["v1"] = self.v1
        if self.v2 is not None:
            doc["v2"] = self.v2
        if self.orient is not None:
            doc["orient"] = self.orient
        return doc


def parse_graph(text: str) -> BrauerGraph:
    """Parse just the graph part of an input document."""
    return load_input(text).graph


def load_input(text: str) -> GraphInput:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    return input_from_dict(doc)


def input_from_dict(doc: dict) -> GraphInput:
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise GraphError("document must be an object with a 'vertices' field")
    vertices = doc["vertices"]
    if not isinstance(vertices, dict):
        raise GraphError("'vertices' must map vertex ids to edge lists")
    for v, cyc in vertices.items():
        if not isinstance(cyc, list) or not all(isinstance(e, str) for e in cyc):
            raise GraphError(f"cyclic list at vertex {v!r} must be a list of edge ids")
    graph = BrauerGraph(vertices, distinguished=doc.get("distinguished"))
    s = doc.get("s", 0)
    if not isinstance(s, int) or s < 0:
        raise GraphError(f"shift s must be a nonnegative integer, got {s!r}")
    theta = parse_scalar(doc.get("theta", "theta"))
    v1, v2, orient = doc.get("v1"), doc.get("v2"), doc.get("orient")
    for name, v in (("v1", v1), ("v2", v2), ("orient", orient)):
        if v is not None and v not in graph.vertices:
            raise GraphError(f"{name}={v!r} is not a vertex")
    return GraphInput(graph=graph, s=s, theta=theta, v1=v1, v2=v2, orient=orient)


def dumps_input(inp: GraphInput) -> str:
    return json.dumps(inp.serialize(), indent=2, sort_keys=False)


# ---------------------------------------------------------------------------
# cycle detection and topology


def find_cycle_edges(graph: BrauerGraph) -> list[str]:
    """Edge ids on the unique cycle (empty list for a tree)."""
    if graph.betti == 0:
        return []
    deg = {v: graph.degree(v) for v in graph.vertices}
    # peel leaves; what survives is the 2-core, i.e. the cycle
    removed_edges: set[str] = set()
    changed = True
    while changed:
        changed = False
        for v in list(deg):
            live = [e for e in graph.vertices[v] if e not in removed_edges]
            if len(live) == 1 and not graph.is_loop(live[0]):
                removed_edges.add(live[0])
                changed = True
    return [e for e in graph.edges if e not in removed_edges]


def _default_e1(graph: BrauerGraph, cycle_edges: list[str]) -> str:
    if graph.distinguished is not None:
        if graph.distinguished not in cycle_edges:
            raise GraphError("distinguished edge must lie on the cycle")
        return graph.distinguished
    return min(cycle_edges)


def _walk_cycle(graph: BrauerGraph, cycle_edges: list[str], e1: str, v1: str) -> Cycle:
    """Walk the cycle starting with edge e1 out of vertex v1."""
    cyc_set = set(cycle_edges)
    verts = [v1]
    edges = [e1]
    v = graph.other_end(e1, v1) if not graph.is_loop(e1) else v1
    prev_edge = e1
    while v != v1 or len(edges) < len(cycle_edges):
        verts.append(v)
        nxt = [e for e in graph.vertices[v] if e in cyc_set and e != prev_edge]
        if not nxt:
            # k = 2: the same pair of vertices, the other parallel edge
            nxt = [e for e in graph.vertices[v] if e in cyc_set and e not in edges]
        edges.append(nxt[0])
        prev_edge = nxt[0]
        v = graph.other_end(prev_edge, v)
    return Cycle(tuple(verts), tuple(edges))


def orient_cycle(graph: BrauerGraph, flipped: bool = False,
                 v1_hint: Optional[str] = None) -> Cycle:
    """The cycle oriented so that v_1 is the given hint vertex, else the
    lexicographically smaller endpoint of e_1 (or the larger if flipped)."""
    cycle_edges = find_cycle_edges(graph)
    if not cycle_edges:
        raise GraphError("graph is a tree; no cycle to orient")
    for e in graph.edges:
        if graph.is_loop(e) and (len(cycle_edges) > 1 or e not in cycle_edges):
            raise GraphError(f"loop {e!r} only allowed as a single-edge cycle")
    e1 = _default_e1(graph, cycle_edges)
    if len(cycle_edges) == 1:
        v = graph.edges[e1][0]
        return Cycle((v,), (e1,))
    a, b = graph.edges[e1]
    if v1_hint is not None:
        if v1_hint not in (a, b):
            raise GraphError(f"orientation hint {v1_hint!r} is not an endpoint of e1")
        v1 = v1_hint if not flipped else (b if v1_hint == a else a)
    else:
        v1 = min(a, b) if not flipped else max(a, b)
    return _walk_cycle(graph, cycle_edges, e1, v1)


def analyze(graph: BrauerGraph, cycle: Optional[Cycle] = None
            ) -> tuple[Optional[Cycle], TopologyReport]:
    """Cycle plus levels, parents and the inner/outer tree splitting.

    For a Brauer tree the cycle is None and the report only carries levels
    (relative to nothing; every edge gets level 0) -- tree inputs are handled
    by the exceptional-cycle presentation, not here.
    """
    if graph.betti == 0:
        level = {e: 0 for e in graph.edges}
        report = TopologyReport(level=level, parent={}, outer_trees={},
                                inner_trees={}, side={e: "cycle" for e in graph.edges})
        return None, report
    if cycle is None:
        cycle = orient_cycle(graph)
    k = cycle.k
    cyc_set = set(cycle.edges)

    # levels by BFS from the cycle vertices
    vlevel = {v: 0 for v in cycle.vertices}
    frontier = list(cycle.vertices)
    while frontier:
        nxt = []
        for v in frontier:
            for e in graph.vertices[v]:
                if e in cyc_set:
                    continue
                w = graph.other_end(e, v)
                if w not in vlevel:
                    vlevel[w] = vlevel[v] + 1
                    nxt.append(w)
        frontier = nxt
    level: dict[str, int] = {}
    parent: dict[str, str] = {}
    for e, (a, b) in graph.edges.items():
        if e in cyc_set:
            level[e] = 0
        else:
            level[e] = max(vlevel[a], vlevel[b]) if a != b else vlevel[a] + 1

    def tree_edges(root_edge: str, root_vertex: str) -> list[str]:
        """All edges of the subtree rooted at root_edge, DFS in cyclic order."""
        out = [root_edge]
        far = graph.other_end(root_edge, root_vertex)
        cyc = graph.vertices[far]
        start = cyc.index(root_edge)
        for i in range(1, len(cyc)):
            child = cyc[(start + i) % len(cyc)]
            parent[child] = root_edge
            out.extend(tree_edges(child, far))
        return out

    outer_trees: dict[int, tuple[str, ...]] = {}
    inner_trees: dict[int, tuple[str, ...]] = {}
    side = {e: "cycle" for e in cyc_set}
    for u in range(1, k + 1):
        vu = cycle.vertex(u)
        cyc = graph.vertices[vu]
        e_prev, e_here = cycle.edge(u - 1), cycle.edge(u)
        if k == 1:
            # loop: first occurrence plays the e_u role, second the e_{u-1} role
            p_here, p_prev = graph.positions_of(vu, e_here)
        else:
            p_here = cyc.index(e_here)
            p_prev = cyc.index(e_prev)
        n = len(cyc)
        inner_roots = [cyc[(p_here + i) % n] for i in range(1, (p_prev - p_here) % n)]
        outer_roots = [cyc[(p_prev + i) % n] for i in range(1, (p_here - p_prev) % n)]
        inner_edges: list[str] = []
        for r in inner_roots:
            parent[r] = e_here
            inner_edges.extend(tree_edges(r, vu))
        outer_edges: list[str] = []
        for r in outer_roots:
            parent[r] = e_here
            outer_edges.extend(tree_edges(r, vu))
        if inner_edges:
            inner_trees[u] = tuple(inner_edges)
        if outer_edges:
            outer_trees[u] = tuple(outer_edges)
        for e in inner_edges:
            side[e] = "inner"
        for e in outer_edges:
            side[e] = "outer"
    report = TopologyReport(level=level, parent=parent, outer_trees=outer_trees,
                            inner_trees=inner_trees, side=side)
    assert report.o_total + report.i_total + k == len(graph.edges)
    return cycle, report


# ---------------------------------------------------------------------------
# rotations


def build_rotation(graph: BrauerGraph, cycle: Cycle, s: int) -> Rotation:
    """The rotation sigma_s for the given cycle orientation.

    Raises GraphError if no cyclic-order-preserving automorphism with
    vertex_map(v_i) = v_{i+s} exists.
    """
    k = cycle.k
    if not 0 <= s <= k - 1 and not (k == 1 and s == 0):
        raise GraphError(f"shift s={s} out of range 0..{k - 1}")
    vertex_map: dict[str, str] = {}
    edge_map: dict[str, str] = {}
    for i in range(1, k + 1):
        vertex_map[cycle.vertex(i)] = cycle.vertex(i + s)
        edge_map[cycle.edge(i)] = cycle.edge(i + s)

    def match_vertex(v: str, w: str, ev: str, ew: str) -> None:
        """Extend the maps so the cyclic list at v (anchored at edge ev) agrees
        with the list at w (anchored at ew), recursing into subtrees."""
        cv, cw = graph.vertices[v], graph.vertices[w]
        if len(cv) != len(cw):
            raise GraphError(f"no rotation: degree mismatch at {v!r} vs {w!r}")
        iv = cv.index(ev)
        iw = cw.index(ew)
        for t in range(len(cv)):
            a = cv[(iv + t) % len(cv)]
            b = cw[(iw + t) % len(cw)]
            if a in edge_map:
                if edge_map[a] != b:
                    raise GraphError(f"no rotation: edge {a!r} maps inconsistently")
                continue
            edge_map[a] = b
            fa, fb = graph.other_end(a, v), graph.other_end(b, w)
            if fa in vertex_map:
                if vertex_map[fa] != fb:
                    raise GraphError(f"no rotation: vertex {fa!r} maps inconsistently")
            else:
                vertex_map[fa] = fb
                match_vertex(fa, fb, a, b)

    for i in range(1, k + 1):
        match_vertex(cycle.vertex(i), cycle.vertex(i + s),
                     cycle.edge(i), cycle.edge(i + s))

    rot = Rotation(s=s, cycle=cycle, vertex_map=vertex_map, edge_map=edge_map)
    _verify_rotation(graph, rot)
    return rot


def _verify_rotation(graph: BrauerGraph, rot: Rotation) -> None:
    if set(rot.vertex_map) != set(graph.vertices) or set(rot.edge_map) != set(graph.edges):
        raise GraphError("no rotation: maps do not cover the graph")
    if len(set(rot.vertex_map.values())) != len(rot.vertex_map):
        raise GraphError("no rotation: vertex map not a bijection")
    if len(set(rot.edge_map.values())) != len(rot.edge_map):
        raise GraphError("no rotation: edge map not a bijection")
    for v, cyc in graph.vertices.items():
        w = rot.vertex_map[v]
        image = tuple(rot.edge_map[e] for e in cyc)
        cw = graph.vertices[w]
        if len(cw) != len(image):
            raise GraphError("no rotation: cyclic order length mismatch")
        # image must equal the list at w up to rotation
        n = len(cw)
        if not any(tuple(cw[(i + t) % n] for t in range(n)) == image for i in range(n)):
            raise GraphError(f"no rotation: cyclic order at {v!r} not preserved")


def oriented_rotation(graph: BrauerGraph, s: int, v1_hint: Optional[str] = None
                      ) -> tuple[Cycle, TopologyReport, Rotation]:
    """The cycle orientation admitting sigma_s, with its report and rotation.

    Tries the hinted (or default) orientation first, then the flipped one;
    the first that admits the automorphism is kept.
    """
    last_err: Optional[GraphError] = None
    for flipped in (False, True):
        cycle = orient_cycle(graph, flipped=flipped, v1_hint=v1_hint)
        try:
            rot = build_rotation(graph, cycle, s)
        except GraphError as exc:
            last_err = exc
            continue
        _, report = analyze(graph, cycle)
        return cycle, report, rot
    raise GraphError(f"no orientation admits sigma_{s}: {last_err}")


@dataclass(frozen=True)
class OrbitStructure:
    edge_orbits: tuple[tuple[str, ...], ...]
    vertex_orbits: tuple[tuple[str, ...], ...]
    orbit_size: int


def orbit_structure(rot: Rotation, report: TopologyReport) -> OrbitStructure:
    """Edge and vertex orbits of a nontrivial rotation, with the size and
    divisibility checks of the orbit remark."""
    if rot.s < 1:
        raise GraphError("orbit structure needs s >= 1")
    k = rot.cycle.k
    size = k // gcd(rot.s, k)
    eorbs = rot.edge_orbits()
    vorbs = []
    seen: set[str] = set()
    for v in rot.vertex_map:
        if v not in seen:
            orb = rot.vertex_orbit(v)
            seen.update(orb)
            vorbs.append(orb)
    for orb in eorbs + vorbs:
        if len(orb) != size:
            raise GraphError(f"orbit {orb} has size {len(orb)}, expected {size}")
    if report.o_total % size or report.i_total % size:
        raise GraphError("orbit size does not divide the outer/inner totals")
    return OrbitStructure(tuple(tuple(o) for o in eorbs),
                          tuple(tuple(o) for o in vorbs), size)
