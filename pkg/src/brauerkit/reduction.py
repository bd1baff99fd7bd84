"""Derived-equivalence normal forms: closed-form parameters and the
graph-rewrite engine (star flattening, block moves, cycle shortening).

The rewrites act on Brauer graphs only; each step realizes the combinatorial
effect of a tilting complex, and the invariant suite (constant simple count,
constant Cartan determinant, the k_i/s_i recurrence) stands in for the
homotopy-category proofs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .forms import GammaStar, LambdaCycle, LambdaLoop, NormalForm
from .graph import (BrauerGraph, Cycle, GraphError, GraphInput, Rotation,
                    TopologyReport, oriented_rotation)
from .presentation import Presentation
from .theta import Scalar, parse_scalar


class ReductionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# closed forms


def check_chain(k: int, s: int) -> None:
    """Every level of the shortening recurrence must stay inside the
    family: gcd(s_i + 2, k_i) = 1 throughout.  Inputs failing this are not
    classified by the cycle-shortening machinery (the affected two-term
    complexes stop being tilting when the coprimality degenerates)."""
    d = gcd(s, k)
    for i in range((d - 1) // 2 + 1):
        ki, si = k * (d - 2 * i) // d, s * (d - 2 * i) // d
        if gcd(si + 2, ki) != 1:
            raise ReductionError(
                f"reduction step {i} leaves the family: gcd({si}+2, {ki}) = "
                f"{gcd(si + 2, ki)} != 1")


def normal_params(o: int, i: int, k: int, s: int, theta="theta") -> LambdaCycle:
    """The normal-form parameters from the outer/inner totals and (k, s)."""
    if k < 2 or not 1 <= s <= k - 1:
        raise ReductionError(f"need k >= 2 and 1 <= s <= k-1, got {k}, {s}")
    if gcd(s + 2, k) != 1:
        raise ReductionError(f"gcd(s+2, k) = {gcd(s + 2, k)} != 1")
    d = gcd(s, k)
    if d % 2 == 0:
        raise ReductionError("gcd(s, k) must be odd")  # forced by gcd(s+2,k)=1
    check_chain(k, s)
    if o % (k // d) or i % (k // d):
        raise ReductionError("orbit length k/gcd(s,k) must divide the edge totals")
    theta = theta if isinstance(theta, Scalar) else parse_scalar(theta)
    return LambdaCycle(p=o * d // k + (d - 1) // 2,
                       q=i * d // k + (d - 1) // 2,
                       k=k // d, s=s // d, theta=theta)


def ki_si_sequence(k: int, s: int) -> list[tuple[int, int, int]]:
    """The (k_i, s_i, gcd_i) sequence of the shortening recurrence, checked
    against its closed forms k(d-2i)/d and s(d-2i)/d."""
    d = gcd(s, k)
    out = [(k, s, d)]
    ki, si = k, s
    for i in range(1, (d - 1) // 2 + 1):
        g = gcd(si, ki)
        ki, si = ki - 2 * ki // g, si - 2 * si // g
        g2 = gcd(si, ki)
        if (ki, si, g2) != (k * (d - 2 * i) // d, s * (d - 2 * i) // d, d - 2 * i):
            raise ReductionError("recurrence disagrees with its closed form")
        out.append((ki, si, g2))
    return out


def ws_params(o: int, i: int, k: int, theta="theta") -> LambdaLoop:
    """The loop-family parameters for an odd cycle with trivial rotation."""
    if k % 2 == 0 or k < 1:
        raise ReductionError("the trivial-rotation family needs odd k >= 1")
    theta = theta if isinstance(theta, Scalar) else parse_scalar(theta)
    return LambdaLoop(p=o + (k - 1) // 2, q=i + (k - 1) // 2, theta=theta)


def omega2_normal(pres: Presentation) -> GammaStar:
    """The exceptional-cycle normal form: determined by the simple count."""
    if pres.family.get("kind") != "omega2":
        raise ReductionError("expected an exceptional-cycle presentation")
    return GammaStar(len(pres.vertices) - 2)


# ---------------------------------------------------------------------------
# the rewrite engine


@dataclass(frozen=True)
class TraceStep:
    kind: str                   # "flatten" | "move_inner" | "move_outer" | "shorten"
    state: GraphInput
    k: int
    s: int


@dataclass
class ReductionTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def record(self, kind: str, inp: GraphInput) -> None:
        cycle, _, _ = oriented_rotation(inp.graph, inp.s)
        self.steps.append(TraceStep(kind=kind, state=inp, k=cycle.k, s=inp.s))


def _analyzed(inp: GraphInput) -> tuple[Cycle, TopologyReport, Rotation]:
    return oriented_rotation(inp.graph, inp.s, v1_hint=inp.orient)


def _leaf_name(existing: set[str], e: str) -> str:
    name = f"leaf_{e}"
    while name in existing:
        name += "_"
    existing.add(name)
    return name


def flatten_to_stars(inp: GraphInput) -> GraphInput:
    """Make every attached tree a star: the outer tree at v_u becomes the
    outer edges of the old tree at index u+s+1, the inner tree the old inner
    edges at u-1, all as level-1 leaves."""
    cycle, report, rot = _analyzed(inp)
    k = cycle.k
    vertices: dict[str, list[str]] = {}
    names: set[str] = {cycle.vertex(u) for u in range(1, k + 1)}
    leaves: dict[str, list[str]] = {}
    for u in range(1, k + 1):
        outer = list(report.outer_trees.get((u + inp.s + 1 - 1) % k + 1, ()))
        inner = list(report.inner_trees.get((u - 1 - 1) % k + 1, ()))
        vu = cycle.vertex(u)
        vertices[vu] = [cycle.edge(u - 1)] + outer + [cycle.edge(u)] + inner
        for e in outer + inner:
            leaves[_leaf_name(names, e)] = [e]
    vertices.update(leaves)
    graph = BrauerGraph(vertices, distinguished=inp.graph.distinguished)
    out = GraphInput(graph=graph, s=inp.s, theta=inp.theta,
                     orient=cycle.vertex(1))
    _analyzed(out)  # the rotation must survive
    return out


def _require_flat(report: TopologyReport) -> None:
    if any(lv > 1 for lv in report.level.values()):
        raise ReductionError("rewrite needs a star-flattened graph")


def _block_move(inp: GraphInput, u: int, which: str) -> GraphInput:
    cycle, report, rot = _analyzed(inp)
    _require_flat(report)
    k, s, d = cycle.k, inp.s, gcd(inp.s, cycle.k)
    vertices = {v: list(cyc) for v, cyc in inp.graph.vertices.items()}
    for j in range(k // d):
        a = (u - 1 + j * s) % k + 1
        va = cycle.vertex(a)
        if which == "inner":
            block = list(report.inner_trees.get(a, ()))
            target = cycle.vertex(a + 1)
            e_t, e_prev = cycle.edge(a + 1), cycle.edge(a)
        else:
            block = list(report.outer_trees.get(a, ()))
            target = cycle.vertex(a - s - 1)
            e_t, e_prev = cycle.edge(a - s - 1), cycle.edge(a - s - 2)
        if not block:
            continue
        vertices[va] = [e for e in vertices[va] if e not in block]
        tgt = vertices[target]
        if which == "inner":
            # append after the existing inner block, i.e. at the end of the
            # stretch that follows the cycle edge e_{a+1}
            pos = tgt.index(e_prev)
            vertices[target] = tgt[:pos] + block + tgt[pos:]
        else:
            # append after the existing outer block, right before e_{a-s-1}
            pos = tgt.index(e_t)
            vertices[target] = tgt[:pos] + block + tgt[pos:]
    graph = BrauerGraph(vertices, distinguished=inp.graph.distinguished)
    out = GraphInput(graph=graph, s=inp.s, theta=inp.theta,
                     orient=cycle.vertex(1))
    _analyzed(out)
    return out


def move_inner(inp: GraphInput, u: int) -> GraphInput:
    """Move the inner blocks of the whole orbit of v_u one vertex forward."""
    return _block_move(inp, u, "inner")


def move_outer(inp: GraphInput, u: int) -> GraphInput:
    """Move the outer blocks of the orbit of v_u back by s+1 vertices."""
    return _block_move(inp, u, "outer")


def shorten_cycle(inp: GraphInput, u: int) -> GraphInput:
    """Contract the orbit of the bare stretch (u-1, u, u+1): the edges u-1
    and u+1 leave the cycle as level-1 inner/outer edges, the cycle shrinks
    by 2k/gcd(s,k) and the shift drops to s - 2s/gcd(s,k)."""
    cycle, report, rot = _analyzed(inp)
    _require_flat(report)
    k, s = cycle.k, inp.s
    d = gcd(s, k)
    if d == 1:
        raise ReductionError("transitive rotation: nothing to shorten")
    e1 = inp.graph.distinguished
    if e1 is not None:
        idx = cycle.edge_index(e1)
        if (idx - (u - 1)) % d == 0 or (idx - (u + 1)) % d == 0:
            raise ReductionError("distinguished edge in an affected orbit")
    anchors = [a for a in range(1, k + 1) if (a - u) % d == 0]
    for a in anchors:
        for v_idx in (a, a + 1):
            vtx = cycle.vertex(v_idx)
            if len(inp.graph.vertices[vtx]) != 2:
                raise ReductionError(f"vertex {vtx!r} is not bare")
    vertices = {v: list(cyc) for v, cyc in inp.graph.vertices.items()}
    for a in anchors:
        ea, e_prev, e_next = cycle.edge(a), cycle.edge(a - 1), cycle.edge(a + 1)
        X, Y = cycle.vertex(a - 1), cycle.vertex(a + 2)
        lx = vertices[X]
        pos = lx.index(e_prev)
        vertices[X] = lx[:pos] + [ea, e_prev] + lx[pos + 1:]
        ly = vertices[Y]
        pos = ly.index(e_next)
        vertices[Y] = ly[:pos] + [ea, e_next] + ly[pos + 1:]
        vertices[cycle.vertex(a)] = [e_prev]
        vertices[cycle.vertex(a + 1)] = [e_next]
    graph = BrauerGraph(vertices, distinguished=inp.graph.distinguished)
    out = GraphInput(graph=graph, s=s - 2 * s // d, theta=inp.theta,
                     orient=cycle.vertex(u - 1))
    _analyzed(out)
    return out


def _concentrate(inp: GraphInput, trace: ReductionTrace) -> GraphInput:
    """Move every level-1 block onto the orbit of v_3, leaving the
    distinguished edge's endpoints bare."""
    while True:
        cycle, report, rot = _analyzed(inp)
        k, d = cycle.k, gcd(inp.s, cycle.k)
        moved = False
        for u in range(1, k + 1):
            if (u - 3) % d == 0:
                continue
            if report.inner_trees.get(u):
                inp = move_inner(inp, u)
                trace.record("move_inner", inp)
                moved = True
                break
            if report.outer_trees.get(u):
                inp = move_outer(inp, u)
                trace.record("move_outer", inp)
                moved = True
                break
        if not moved:
            return inp


def full_reduce(inp: GraphInput) -> tuple[LambdaCycle, ReductionTrace]:
    """Flatten, concentrate and shorten until the rotation is transitive;
    the resulting parameters are checked against the closed form."""
    cycle, report, rot = _analyzed(inp)
    if inp.s < 1:
        raise ReductionError("the rewrite engine needs a nontrivial rotation")
    expected = normal_params(report.o_total, report.i_total, cycle.k, inp.s,
                             theta=inp.theta)
    trace = ReductionTrace()
    trace.record("input", inp)
    cur = flatten_to_stars(inp)
    trace.record("flatten", cur)
    while True:
        cycle, report, rot = _analyzed(cur)
        d = gcd(cur.s, cycle.k)
        if d == 1:
            break
        cur = _concentrate(cur, trace)
        cur = shorten_cycle(cur, 1)
        trace.record("shorten", cur)
    cycle, report, rot = _analyzed(cur)
    k1 = cycle.k
    if report.o_total % k1 or report.i_total % k1:
        raise ReductionError("reduced graph is not vertex-homogeneous")
    got = LambdaCycle(p=report.o_total // k1, q=report.i_total // k1,
                      k=k1, s=cur.s, theta=inp.theta)
    if (got.p, got.q, got.k, got.s) != (expected.p, expected.q, expected.k, expected.s):
        raise ReductionError(
            f"rewrite result {got} disagrees with the closed form {expected}")
    return got, trace
