"""Builders for the standard input graphs and randomized test instances."""

from __future__ import annotations

import random
from math import gcd

from .graph import BrauerGraph, GraphInput
from .theta import Scalar, parse_scalar


def _scalar(theta) -> Scalar:
    return theta if isinstance(theta, Scalar) else parse_scalar(theta)


def star_graph(p: int, q: int, k: int, distinguished: str = "1") -> BrauerGraph:
    """The star-shaped graph with a k-cycle, p outer and q inner leaf edges
    at every cycle vertex.  Cycle edges are "1".."k", the outer edge r at
    vertex u is "u^r" and the inner edge l is "u_l".

    For k = 1 the cycle edge is a loop whose first occurrence in the cyclic
    list is followed by the inner block.
    """
    if k < 1 or p < 0 or q < 0:
        raise ValueError("need k >= 1 and p, q >= 0")
    vertices: dict[str, list[str]] = {}
    if k == 1:
        inner = [f"1_{l}" for l in range(1, q + 1)]
        outer = [f"1^{r}" for r in range(1, p + 1)]
        vertices["v1"] = ["1"] + inner + ["1"] + outer
        for e in inner + outer:
            vertices["w" + e] = [e]
        return BrauerGraph(vertices, distinguished=distinguished)
    for u in range(1, k + 1):
        e_prev = str((u - 2) % k + 1)
        outer = [f"{u}^{r}" for r in range(1, p + 1)]
        inner = [f"{u}_{l}" for l in range(1, q + 1)]
        vertices[f"v{u}"] = [e_prev] + outer + [str(u)] + inner
        for e in outer + inner:
            vertices["w" + e] = [e]
    return BrauerGraph(vertices, distinguished=distinguished)


def star_input(p: int, q: int, k: int, s: int, theta="theta") -> GraphInput:
    return GraphInput(graph=star_graph(p, q, k), s=s, theta=_scalar(theta))


def example_T213() -> BrauerGraph:
    """The 12-edge, 10-vertex graph of the worked 3-cycle example
    (the p=2, q=1, k=3 star with the printed edge numbering)."""
    vertices = {
        "v1": ["3", "4", "5", "1", "10"],
        "v2": ["1", "6", "7", "2", "11"],
        "v3": ["2", "8", "9", "3", "12"],
        "w4": ["4"], "w5": ["5"], "w6": ["6"], "w7": ["7"],
        "w8": ["8"], "w9": ["9"], "w10": ["10"], "w11": ["11"], "w12": ["12"],
    }
    return BrauerGraph(vertices, distinguished="1")


def example_T213_input(theta="theta") -> GraphInput:
    return GraphInput(graph=example_T213(), s=2, theta=_scalar(theta))


def section5_graph() -> BrauerGraph:
    """The 26-edge reduction example: k=6, sigma_3-symmetric, 14 outer and
    6 inner edges arranged in trees of depth up to 3."""
    vertices: dict[str, list[str]] = {}

    def leaf(e: str) -> str:
        vertices["w" + e] = [e]
        return e

    def outer_deep(u: int) -> str:
        # root a; its far vertex carries children b, d; b carries child c
        a, b, c, d = (f"o{u}{x}" for x in "abcd")
        vertices[f"x{u}a"] = [a, b, d]
        vertices[f"x{u}b"] = [b, c]
        vertices["w" + c] = [c]
        vertices["w" + d] = [d]
        return a

    def outer_path(u: int) -> str:
        a, b = f"o{u}a", f"o{u}b"
        vertices[f"x{u}a"] = [a, b]
        vertices["w" + b] = [b]
        return a

    e = lambda i: str((i - 1) % 6 + 1)
    for base in (0, 3):  # two sigma_3-related halves
        u1, u2, u3 = base + 1, base + 2, base + 3
        vertices[f"v{u1}"] = [e(u1 - 1), leaf(f"o{u1}a"), e(u1)]
        vertices[f"v{u2}"] = [e(u2 - 1), outer_deep(u2), e(u2), leaf(f"i{u2}a")]
        vertices[f"v{u3}"] = [e(u3 - 1), outer_path(u3), e(u3),
                              leaf(f"i{u3}a"), leaf(f"i{u3}b")]
    return BrauerGraph(vertices, distinguished="1")


def section5_input(theta="theta") -> GraphInput:
    return GraphInput(graph=section5_graph(), s=3, theta=_scalar(theta))


def ws_graph(outer: dict[int, int], inner: dict[int, int], k: int) -> BrauerGraph:
    """A graph with an odd k-cycle and leaf edges for the trivial-rotation
    family: ``outer[u]`` outside and ``inner[u]`` inside at vertex v_u."""
    if k % 2 == 0:
        raise ValueError("the trivial-rotation family needs odd k")
    if k == 1:
        return star_graph(outer.get(1, 0), inner.get(1, 0), 1)
    vertices: dict[str, list[str]] = {}
    for u in range(1, k + 1):
        e_prev = str((u - 2) % k + 1)
        out = [f"{u}^{r}" for r in range(1, outer.get(u, 0) + 1)]
        inn = [f"{u}_{l}" for l in range(1, inner.get(u, 0) + 1)]
        vertices[f"v{u}"] = [e_prev] + out + [str(u)] + inn
        for e in out + inn:
            vertices["w" + e] = [e]
    return BrauerGraph(vertices, distinguished="1")


def gamma_star_tree(n: int) -> BrauerGraph:
    """The Brauer tree with an n-edge star at the exceptional vertex and an
    extra edge "n+1" hanging off edge "1": v1 is the leaf of edge n+1, v2
    the star center."""
    if n < 1:
        raise ValueError("need n >= 1")
    vertices: dict[str, list[str]] = {"c": [str(i) for i in range(1, n + 1)]}
    vertices["u"] = ["1", str(n + 1)]
    vertices["v1"] = [str(n + 1)]
    for i in range(2, n + 1):
        vertices[f"w{i}"] = [str(i)]
    return BrauerGraph(vertices)


def gamma_star_input(n: int) -> GraphInput:
    return GraphInput(graph=gamma_star_tree(n), s=0, theta=parse_scalar("theta"),
                      v1="v1", v2="c")


# ---------------------------------------------------------------------------
# randomized instances


def _tree_spec(rng: random.Random, budget: int, depth: int) -> list:
    """A nested-list tree shape; each entry is the child-shape list of one
    subtree root.  Total number of edges is at most ``budget``."""
    if budget <= 0 or depth <= 0:
        return []
    n_roots = rng.randint(0, min(3, budget))
    spec = []
    remaining = budget - n_roots
    for _ in range(n_roots):
        take = rng.randint(0, remaining) if depth > 1 else 0
        remaining -= take
        spec.append(_tree_spec(rng, take, depth - 1))
    return spec


def _spec_size(spec: list) -> int:
    return sum(1 + _spec_size(ch) for ch in spec)


def _instantiate_tree(spec: list, stub: str) -> tuple[list[str], dict[str, list[str]]]:
    """Edges and interior-vertex lists for a tree shape, with ids under ``stub``."""
    lists: dict[str, list[str]] = {}
    counter = [0]

    def build(children: list, parent_edge: str, vertex: str) -> None:
        kids = []
        for ch in children:
            counter[0] += 1
            kids.append((f"{stub}e{counter[0]}", counter[0], ch))
        lists[vertex] = [parent_edge] + [e for e, _, _ in kids]
        for e, n, ch in kids:
            build(ch, e, f"{stub}x{n}")

    roots = []
    for ch in spec:
        counter[0] += 1
        e = f"{stub}e{counter[0]}"
        roots.append(e)
        build(ch, e, f"{stub}x{counter[0]}")
    return roots, lists


def random_sigma_input(rng: random.Random, max_edges: int = 40,
                       max_depth: int = 3, theta="theta") -> GraphInput:
    """A random valid rotation input: unicyclic, sigma_s-symmetric,
    gcd(s+2, k) = 1, 1 <= s <= k-1, at most ``max_edges`` edges, tree depth
    at most ``max_depth``."""
    def chain_ok(k: int, s: int) -> bool:
        d = gcd(s, k)
        return all(gcd(s * (d - 2 * i) // d + 2, k * (d - 2 * i) // d) == 1
                   for i in range((d - 1) // 2 + 1))

    while True:
        k = rng.randint(2, 9)
        choices = [s for s in range(1, k) if chain_ok(k, s)]
        if choices:
            s = rng.choice(choices)
            break
    d = gcd(s, k)
    orbit_len = k // d
    budget_per_rep = max(0, (max_edges - k) // orbit_len)
    rep_trees = {}
    for rep in range(d):
        out_budget = rng.randint(0, budget_per_rep // 2) if budget_per_rep else 0
        inn_budget = rng.randint(0, budget_per_rep - out_budget) if budget_per_rep else 0
        rep_trees[rep] = (_tree_spec(rng, out_budget, max_depth),
                          _tree_spec(rng, inn_budget, max_depth))
    vertices: dict[str, list[str]] = {}
    for u in range(1, k + 1):
        out_spec, inn_spec = rep_trees[(u - 1) % d]
        out_roots, out_lists = _instantiate_tree(out_spec, f"o{u}")
        inn_roots, inn_lists = _instantiate_tree(inn_spec, f"i{u}")
        e_prev = str((u - 2) % k + 1)
        vertices[f"v{u}"] = [e_prev] + out_roots + [str(u)] + inn_roots
        vertices.update(out_lists)
        vertices.update(inn_lists)
    graph = BrauerGraph(vertices, distinguished="1")
    return GraphInput(graph=graph, s=s, theta=_scalar(theta))
