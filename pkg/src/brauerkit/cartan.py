"""Cartan matrices: the string-basis count and the closed-form case analysis.

The two routes are independent: the count enumerates the path basis of each
projective from the reduced presentation, the closed form evaluates the
published case analysis on the graph data.  Their entrywise equality over
randomized inputs is the correctness argument for both.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graph import BrauerGraph, Cycle, GraphError, Rotation, TopologyReport
from .presentation import ReducedPresentation, maximal_paths, nakayama_permutation


@dataclass(frozen=True)
class CartanMatrix:
    vertices: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    def entry(self, i: str, j: str) -> int:
        return self.rows[self.vertices.index(i)][self.vertices.index(j)]

    def det(self) -> int:
        return _bareiss_det([list(r) for r in self.rows])

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "rows": [list(r) for r in self.rows]}


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def cartan_strings(red: ReducedPresentation) -> CartanMatrix:
    """Entry (i, j) counts the path basis of Hom(P(i), P(j)): the trivial
    path at i, the proper prefixes of the maximal paths from i ending at j,
    and one socle element at the common target of the maximal paths."""
    verts = tuple(sorted(red.vertices))
    idx = {v: n for n, v in enumerate(verts)}
    rows = [[0] * len(verts) for _ in verts]
    for i in verts:
        rows[idx[i]][idx[i]] += 1
        paths = maximal_paths(red, i)
        for p in paths:
            itinerary = red.path_vertices(p)
            for stop in itinerary[1:-1]:
                rows[idx[i]][idx[stop]] += 1
        rows[idx[i]][idx[red.path_vertices(paths[0])[-1]]] += 1
    return CartanMatrix(verts, tuple(tuple(r) for r in rows))


def cartan_closed_form(graph: BrauerGraph, cycle: Cycle, report: TopologyReport,
                       rot: Rotation) -> CartanMatrix:
    """The published entrywise description of the Cartan matrix for a
    nontrivial rotation (s >= 1, k >= 2)."""
    if rot.s < 1:
        raise GraphError("the closed form needs a nontrivial rotation")
    k = cycle.k
    s = rot.s
    sigma = rot.edge_map
    level = report.level
    parent = report.parent
    side = report.side

    def attach_index(e: str) -> int:
        """The cycle index u of the tree containing a non-cycle edge e."""
        root = e
        while level[root] > 1:
            root = parent[root]
        trees = report.outer_trees if side[e] == "outer" else report.inner_trees
        for u, edges in trees.items():
            if root in edges:
                return u
        raise GraphError(f"edge {e!r} not in any tree")

    def level1(u: int, which: str) -> set[str]:
        trees = report.outer_trees if which == "outer" else report.inner_trees
        return {e for e in trees.get((u - 1) % k + 1, ()) if level[e] == 1}

    def strictly_between(v: str, a: str, b: str) -> set[str]:
        """Edges strictly after a and before b in the cyclic list at v."""
        cyc = graph.vertices[v]
        ia, ib = cyc.index(a), cyc.index(b)
        return {cyc[(ia + t) % len(cyc)] for t in range(1, (ib - ia) % len(cyc))}

    def between_incl(v: str, a: str, b: str) -> set[str]:
        """Edges strictly after a, up to and including b, at v.  The upper
        end is closed: the socle path from an edge ends at its rotation
        image, so the image itself carries a basis element."""
        cyc = graph.vertices[v]
        ia, ib = cyc.index(a), cyc.index(b)
        return {cyc[(ia + t) % len(cyc)] for t in range(1, (ib - ia) % len(cyc) + 1)}

    def adjacent(i: str, j: str) -> bool:
        return bool(set(graph.edges[i]) & set(graph.edges[j]))

    def shared_vertex(i: str, j: str) -> str:
        common = set(graph.edges[i]) & set(graph.edges[j])
        return next(iter(common))

    def entry(i: str, j: str) -> int:
        r, t = level[i], level[j]
        if abs(r - t) >= 2:
            return 0
        if t == r - 1:
            if r >= 2:
                return 1 if j == sigma[parent[i]] else 0
            u = attach_index(i)
            e_u, e_prev = cycle.edge(u), cycle.edge(u - 1)
            if side[i] == "outer":
                return 1 if j in (sigma[e_u], sigma[e_prev]) else 0
            if s == k - 1:
                return 2 if j == e_prev else 0
            return 1 if j in (e_prev, sigma[e_u]) else 0
        if t == r + 1:
            if r >= 1:
                return 1 if adjacent(i, j) else 0
            u = cycle.edge_index(i)
            if s == k - 1 and j in level1(u, "inner"):
                return 2
            if j in level1(u, "inner") or j in (level1(u, "outer")
                                                | level1(u + 1, "outer")
                                                | level1(u + 1 + s, "inner")):
                return 1
            return 0
        # t == r
        if r == 0:
            u = cycle.edge_index(i)
            e_prev = cycle.edge(u - 1)
            if s == k - 1:
                return 2 if j in (i, e_prev) else 0
            return 1 if j in (i, e_prev, sigma[i], sigma[cycle.edge(u + 1)]) else 0
        if i == j:
            return 1
        if r >= 2:
            x = shared_vertex(i, parent[i])
            if j in strictly_between(x, i, parent[i]):
                return 1
            si = sigma[i]
            y = shared_vertex(si, parent[si])
            if j in between_incl(y, parent[si], si):
                return 1
            return 0
        # r == t == 1
        u = attach_index(i)
        vu = cycle.vertex(u)
        vsu = rot.vertex_map[vu]
        e_u, e_prev = cycle.edge(u), cycle.edge(u - 1)
        if side[i] == "outer":
            if j in level1(u + s, "inner"):
                return 1
            if j in level1(u, "outer") and j in strictly_between(vu, i, e_u):
                return 1
            if j in level1(u + s, "outer") and j in between_incl(
                    vsu, cycle.edge(u + s - 1), sigma[i]):
                return 1
            return 0
        if j in level1(u, "outer"):
            return 1
        if j in level1(u, "inner") and j in strictly_between(vu, i, e_prev):
            return 1
        if j in level1(u + s, "inner") and j in between_incl(
                vsu, sigma[e_u], sigma[i]):
            return 1
        return 0

    verts = tuple(sorted(graph.edges))
    rows = tuple(tuple(entry(i, j) for j in verts) for i in verts)
    return CartanMatrix(verts, rows)
