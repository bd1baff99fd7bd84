"""Edge orders, generalized Brauer quivers and their relation ideals.

The merged cyclic order on edge occurrences ("slots") drives everything:
arrows of the quiver are consecutive slot pairs, zero relations are the
mismatched compositions at a vertex, and the commutation relations are the
two socle walks of each edge, with the twist scalar attached to the
distinguished edge.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import NamedTuple, Optional, Sequence

from .graph import (BrauerGraph, Cycle, GraphError, GraphInput, Rotation,
                    TopologyReport, analyze, oriented_rotation)
from .theta import ONE, Scalar


class Slot(NamedTuple):
    vertex: str
    pos: int


class PresentationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# the merged edge order


class EdgeOrder:
    """The union of merged cyclic orders of edge slots for (T, sigma_s).

    Each edge owns two slots (its occurrences in the vertex lists).  The
    successor of a slot is the next edge around its vertex, except that a
    step onto n(v) is redirected to n(sigma(v)) at sigma(v).  For s = 0 no
    redirection happens and the orders are the plain vertex orders.
    """

    def __init__(self, graph: BrauerGraph, cycle: Optional[Cycle],
                 report: TopologyReport, rot: Rotation):
        self.graph = graph
        self.cycle = cycle
        self.report = report
        self.rot = rot
        self.slots: list[Slot] = sorted(
            Slot(v, i) for v, cyc in graph.vertices.items() for i in range(len(cyc)))
        self._build_n_edges()
        self._build_successor()
        self._build_sigma_slots()
        self._build_cycles()

    # -- construction -------------------------------------------------------

    def _build_n_edges(self) -> None:
        g = self.graph
        self.n_edge: dict[str, str] = {}
        if self.cycle is not None:
            for u in range(1, self.cycle.k + 1):
                self.n_edge[self.cycle.vertex(u)] = self.cycle.edge(u)
        for v in g.vertices:
            if v in self.n_edge:
                continue
            lv = min(self.report.level[e] for e in g.vertices[v])
            cand = [e for e in g.vertices[v] if self.report.level[e] == lv]
            if len(cand) != 1:
                raise PresentationError(f"ambiguous walk-to-cycle edge at {v!r}")
            self.n_edge[v] = cand[0]

    def edge_at(self, slot: Slot) -> str:
        return self.graph.vertices[slot.vertex][slot.pos]

    def _build_successor(self) -> None:
        g = self.graph
        s = self.rot.s
        self.succ: dict[Slot, Slot] = {}
        for slot in self.slots:
            cyc = g.vertices[slot.vertex]
            npos = (slot.pos + 1) % len(cyc)
            nxt = cyc[npos]
            if s == 0 or nxt != self.n_edge[slot.vertex]:
                self.succ[slot] = Slot(slot.vertex, npos)
            else:
                w = self.rot.vertex_map[slot.vertex]
                target_edge = self.n_edge[w]
                positions = g.positions_of(w, target_edge)
                if len(positions) != 1:
                    raise PresentationError("redirect target slot ambiguous")
                self.succ[slot] = Slot(w, positions[0])
        self.pred = {b: a for a, b in self.succ.items()}
        if len(self.pred) != len(self.succ):
            raise PresentationError("slot successor is not a bijection")

    def _build_sigma_slots(self) -> None:
        g = self.graph
        self.sigma_slot: dict[Slot, Slot] = {}
        for slot in self.slots:
            if self.rot.s == 0:
                self.sigma_slot[slot] = slot
                continue
            w = self.rot.vertex_map[slot.vertex]
            e_img = self.rot.edge_map[self.edge_at(slot)]
            positions = g.positions_of(w, e_img)
            if len(positions) != 1:
                raise PresentationError("sigma image slot ambiguous")
            self.sigma_slot[slot] = Slot(w, positions[0])
        self.sigma_slot_inv = {b: a for a, b in self.sigma_slot.items()}

    def _build_cycles(self) -> None:
        seen: set[Slot] = set()
        self.cycles: list[tuple[Slot, ...]] = []
        self.cycle_index: dict[Slot, int] = {}
        for slot in self.slots:
            if slot in seen:
                continue
            cyc = [slot]
            seen.add(slot)
            t = self.succ[slot]
            while t != slot:
                cyc.append(t)
                seen.add(t)
                t = self.succ[t]
            idx = len(self.cycles)
            self.cycles.append(tuple(cyc))
            for t in cyc:
                self.cycle_index[t] = idx
        self.offset: dict[int, int] = {}
        for idx, cyc in enumerate(self.cycles):
            target = self.sigma_slot[cyc[0]]
            if self.cycle_index.get(target) != idx:
                raise PresentationError("sigma does not preserve the merged order")
            dist = (cyc.index(target) - 0) % len(cyc)
            if dist == 0:
                dist = len(cyc)
            self.offset[idx] = dist

    # -- queries ------------------------------------------------------------

    def slots_of_edge(self, e: str) -> list[Slot]:
        a, b = self.graph.edges[e]
        out = [Slot(a, i) for i in self.graph.positions_of(a, e)]
        if b != a:
            out += [Slot(b, i) for i in self.graph.positions_of(b, e)]
        return out

    def walk(self, slot: Slot, steps: int) -> list[Slot]:
        out = [slot]
        for _ in range(steps):
            slot = self.succ[slot]
            out.append(slot)
        return out

    def socle_walk(self, slot: Slot) -> list[Slot]:
        """The slot walk from ``slot`` to the slot of sigma(edge) at
        sigma(vertex); its steps are the socle path of the edge."""
        return self.walk(slot, self.offset[self.cycle_index[slot]])

    def is_leaf_slot(self, slot: Slot) -> bool:
        return self.graph.degree(slot.vertex) == 1

    def cycles_as_edges(self) -> list[tuple[str, ...]]:
        return [tuple(self.edge_at(t) for t in cyc) for cyc in self.cycles]

    def commutation_slots(self, e: str) -> tuple[Slot, Slot]:
        """The (plain side, twist side) slot pair of an edge's two socle walks.

        For a cycle edge e_u of a k >= 2 cycle the plain side starts at v_u
        (walks the inner block first) and the twisted side at v_{u+1}.  For
        the single-loop cycle the plain side is the occurrence followed by
        the outer block, matching the printed loop-family presentation.  For
        tree edges the plain side is the end closer to the cycle.
        """
        g = self.graph
        if self.cycle is not None and e in self.cycle.edges:
            k = self.cycle.k
            u = self.cycle.edge_index(e)
            if k == 1:
                v = self.cycle.vertex(1)
                first, second = g.positions_of(v, e)
                return Slot(v, second), Slot(v, first)
            vu, vnext = self.cycle.vertex(u), self.cycle.vertex(u + 1)
            return (Slot(vu, g.vertices[vu].index(e)),
                    Slot(vnext, g.vertices[vnext].index(e)))
        a, b = g.edges[e]
        lev = self.report.level[e]

        def vertex_depth(v: str) -> int:
            levels = [self.report.level[f] for f in g.vertices[v]]
            return min(levels)

        near, far = (a, b) if vertex_depth(a) < vertex_depth(b) else (b, a)
        del lev
        return (Slot(near, g.vertices[near].index(e)),
                Slot(far, g.vertices[far].index(e)))


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class ArrowDef:
    name: str
    src: str
    dst: str
    src_slot: Optional[Slot] = None
    dst_slot: Optional[Slot] = None


@dataclass(frozen=True)
class Commutation:
    lhs: tuple[str, ...]
    rhs: tuple[str, ...]
    scalar: Scalar  # generator is lhs - scalar * rhs


@dataclass
class Presentation:
    """A quiver with zero relations and scalar-twisted commutations."""

    vertices: tuple[str, ...]
    arrows: tuple[ArrowDef, ...]
    zero: tuple[tuple[str, ...], ...]
    commutations: tuple[Commutation, ...]
    family: dict = field(default_factory=dict)
    order: Optional[EdgeOrder] = None

    def __post_init__(self):
        self.arrow_by_name = {a.name: a for a in self.arrows}

    def path_vertices(self, path: Sequence[str]) -> tuple[str, ...]:
        """The vertex itinerary of an arrow-name path."""
        if not path:
            return ()
        out = [self.arrow_by_name[path[0]].src]
        for name in path:
            a = self.arrow_by_name[name]
            if a.src != out[-1]:
                raise PresentationError(f"path {path} does not compose")
            out.append(a.dst)
        return tuple(out)

    def in_arrows(self, v: str) -> list[ArrowDef]:
        return [a for a in self.arrows if a.dst == v]

    def out_arrows(self, v: str) -> list[ArrowDef]:
        return [a for a in self.arrows if a.src == v]

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "src": a.src, "dst": a.dst}
                       for a in self.arrows],
            "zero": [list(z) for z in self.zero],
            "comm": [{"lhs": list(c.lhs), "rhs": list(c.rhs),
                      "scalar": _scalar_tag(c.scalar)}
                     for c in self.commutations],
        }

    def to_dot(self) -> str:
        lines = ["digraph quiver {"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for a in self.arrows:
            lines.append(f'  "{a.src}" -> "{a.dst}" [label="{a.name}"];')
        lines.append("}")
        return "\n".join(lines)


def _scalar_tag(s: Scalar) -> str:
    if not s.is_symbolic and s.value == 1:
        return "1"
    if s.is_symbolic and not s.inverted:
        return "theta"
    if s.is_symbolic and s.inverted:
        return "theta_inv"
    return str(s)


def build_order(inp: GraphInput) -> EdgeOrder:
    """The merged edge order of a validated rotation input."""
    graph, s = inp.graph, inp.s
    if graph.betti == 0:
        raise GraphError("edge orders with redirection need a cycle; trees use "
                         "the exceptional-vertex construction")
    cycle, report, rot = oriented_rotation(graph, s)
    return EdgeOrder(graph, cycle, report, rot)


def check_omega1_preconditions(inp: GraphInput) -> None:
    cycle, _ = analyze(inp.graph)
    if cycle is None:
        raise GraphError("the twisted family needs a unicyclic graph")
    k = cycle.k
    if inp.s == 0:
        if k % 2 == 0:
            raise GraphError("the trivial rotation needs an odd cycle")
    else:
        if not 1 <= inp.s <= k - 1:
            raise GraphError(f"s={inp.s} out of range 1..{k - 1}")
        if gcd(inp.s + 2, k) != 1:
            raise GraphError(f"gcd(s+2, k) = {gcd(inp.s + 2, k)} != 1")


def build_omega1(inp: GraphInput) -> Presentation:
    """The twisted bound-quiver presentation of a rotation input.

    Arrows are the consecutive slot pairs of the merged order; the zero
    relations are the cross-slot compositions; each edge contributes one
    commutation between its two socle walks, with the scalar attached to the
    distinguished edge.
    """
    check_omega1_preconditions(inp)
    order = build_order(inp)
    graph = inp.graph
    e1 = graph.distinguished or min(order.cycle.edges)

    slot_list = sorted(order.slots)
    arrow_of_slot: dict[Slot, str] = {}
    arrows = []
    for i, t in enumerate(slot_list, start=1):
        name = f"a{i}"
        arrow_of_slot[t] = name
        arrows.append(ArrowDef(name=name, src=order.edge_at(t),
                               dst=order.edge_at(order.succ[t]),
                               src_slot=t, dst_slot=order.succ[t]))

    zero: list[tuple[str, str]] = []
    for e in sorted(graph.edges):
        t1, t2 = sorted(order.slots_of_edge(e))
        in1, in2 = arrow_of_slot[order.pred[t1]], arrow_of_slot[order.pred[t2]]
        out1, out2 = arrow_of_slot[t1], arrow_of_slot[t2]
        zero.append((in1, out2))
        zero.append((in2, out1))

    comms = []
    for e in sorted(graph.edges):
        plain, twist = order.commutation_slots(e)
        lhs = tuple(arrow_of_slot[t] for t in order.socle_walk(plain)[:-1])
        rhs = tuple(arrow_of_slot[t] for t in order.socle_walk(twist)[:-1])
        scalar = inp.theta if e == e1 else ONE
        comms.append(Commutation(lhs=lhs, rhs=rhs, scalar=scalar))

    pres = Presentation(
        vertices=tuple(sorted(graph.edges)),
        arrows=tuple(arrows),
        zero=tuple(zero),
        commutations=tuple(comms),
        family={"kind": "omega1", "s": inp.s, "k": order.cycle.k,
                "theta": str(inp.theta), "distinguished": e1},
        order=order,
    )
    for v in pres.vertices:
        if len(pres.in_arrows(v)) != 2 or len(pres.out_arrows(v)) != 2:
            raise PresentationError(f"vertex {v!r} does not have in/out degree 2")
    return pres


# ---------------------------------------------------------------------------
# the exceptional-cycle presentation for Brauer trees


def build_omega2(tree: BrauerGraph, v1: str, v2: str) -> Presentation:
    """The bound quiver of a Brauer tree with distinguished vertices v1 (a
    leaf) and the exceptional vertex v2 (multiplicity two).

    The simple cycles of the Brauer quiver are 2-colored into alpha and beta
    camps so that the cycle at the inner endpoint of the leaf edge is an
    alpha cycle; the loop at v1 is dropped and replaced by the detour through
    the extra vertex w.
    """
    if tree.betti != 0:
        raise PresentationError("the exceptional-cycle construction needs a tree")
    if v1 not in tree.vertices or v2 not in tree.vertices:
        raise PresentationError("v1/v2 must be vertices of the tree")
    if v1 == v2:
        raise PresentationError("v1 and v2 must differ")
    if tree.degree(v1) != 1:
        raise PresentationError("v1 must be the end of exactly one edge")
    a = tree.vertices[v1][0]
    u = tree.other_end(a, v1)
    if tree.degree(u) < 2:
        raise PresentationError("the inner endpoint of the leaf edge needs degree >= 2")

    # alternate camps over the tree, alpha at u
    camp = {u: "al"}
    stack = [u]
    while stack:
        v = stack.pop()
        for e in tree.vertices[v]:
            w_ = tree.other_end(e, v)
            if w_ not in camp:
                camp[w_] = "be" if camp[v] == "al" else "al"
                stack.append(w_)
    if camp[u] != "al":
        raise PresentationError("camp coloring forces a beta cycle at the leaf base")

    def endpoint(e: str, which: str) -> str:
        x, y = tree.edges[e]
        return x if camp[x] == which else y

    def cycle_arrow(e: str, which: str) -> str:
        return f"{which}_{e}"

    arrows: list[ArrowDef] = []
    nxt: dict[str, str] = {}   # arrow name -> target edge
    for v in sorted(tree.vertices):
        cyc = tree.vertices[v]
        for i, e in enumerate(cyc):
            tgt = cyc[(i + 1) % len(cyc)]
            name = cycle_arrow(e, camp[v])
            if not (v == v1 and e == a):      # the loop at v1 is dropped
                arrows.append(ArrowDef(name=name, src=e, dst=tgt))
            nxt[name] = tgt
    arrows.append(ArrowDef(name="ga_1", src=_pred_at(tree, u, a), dst="w"))
    arrows.append(ArrowDef(name="ga_2", src="w", dst=_succ_at(tree, u, a)))

    b = _succ_at(tree, u, a)
    c = _pred_at(tree, u, a)

    def alpha(e: str) -> str:
        return nxt[cycle_arrow(e, "al")]

    def beta(e: str) -> str:
        return nxt[cycle_arrow(e, "be")]

    def full_cycle(e: str, which: str) -> tuple[str, ...]:
        out = [cycle_arrow(e, which)]
        f = nxt[out[-1]]
        while f != e:
            out.append(cycle_arrow(f, which))
            f = nxt[out[-1]]
        return tuple(out)

    def arc(start: str, stop: str) -> tuple[str, ...]:
        """alpha arrows around u from ``start`` up to the arrow into ``stop``
        (empty when start == stop)."""
        out: list[str] = []
        f = start
        while f != stop:
            out.append(cycle_arrow(f, "al"))
            f = nxt[out[-1]]
        return tuple(out)

    def exceptional(e: str, which: str) -> bool:
        return endpoint(e, which) == v2

    edges = sorted(tree.edges)
    zero: list[tuple[str, ...]] = []
    comms: list[Commutation] = []
    for i in edges:
        if i != c:
            zero.append((cycle_arrow(i, "al"), cycle_arrow(alpha(i), "be")))
        if i != a:
            zero.append((cycle_arrow(i, "be"), cycle_arrow(beta(i), "al")))
    for j in edges:
        if j == a:
            continue
        A = full_cycle(j, "al")
        B = full_cycle(j, "be")
        lhs = A + A if exceptional(j, "al") else A
        rhs = B + B if exceptional(j, "be") else B
        comms.append(Commutation(lhs=lhs, rhs=rhs, scalar=ONE))
    zero.append(("ga_2", cycle_arrow(b, "be")))
    beta_into_c = next(x for x in edges if beta(x) == c and not (x == a))
    zero.append((cycle_arrow(beta_into_c, "be"), "ga_1"))
    A_a = full_cycle(a, "al")
    if u != v2:
        zero.append(("ga_2",) + arc(b, c) + ("ga_1",))
        zero.append(A_a)
    else:
        zero.append(("ga_2",) + full_cycle(b, "al") + arc(b, c) + ("ga_1",))
        zero.append(A_a + A_a)
    comms.append(Commutation(lhs=(cycle_arrow(c, "al"), cycle_arrow(a, "al")),
                             rhs=("ga_1", "ga_2"), scalar=ONE))

    # path from u towards v2, for the degeneracy report
    e_edge = None
    if u != v2:
        e_edge = _first_edge_towards(tree, u, v2)
    degeneracies = []
    if u == v2:
        degeneracies.append("u=v2")
    if b == c:
        degeneracies.append("b=c")
    if e_edge is not None and b == e_edge:
        degeneracies.append("b=e")
    if e_edge is not None and c == e_edge:
        degeneracies.append("c=e")

    return Presentation(
        vertices=tuple(edges) + ("w",),
        arrows=tuple(arrows),
        zero=tuple(zero),
        commutations=tuple(comms),
        family={"kind": "omega2", "v1": v1, "v2": v2, "a": a, "b": b, "c": c,
                "degeneracies": degeneracies},
    )


def _succ_at(tree: BrauerGraph, v: str, e: str) -> str:
    cyc = tree.vertices[v]
    return cyc[(cyc.index(e) + 1) % len(cyc)]


def _pred_at(tree: BrauerGraph, v: str, e: str) -> str:
    cyc = tree.vertices[v]
    return cyc[(cyc.index(e) - 1) % len(cyc)]


def _first_edge_towards(tree: BrauerGraph, start: str, goal: str) -> str:
    """The edge at ``start`` lying on the unique walk to ``goal``."""
    parentv: dict[str, tuple[str, str]] = {}
    stack = [start]
    seen = {start}
    while stack:
        v = stack.pop()
        if v == goal:
            break
        for e in tree.vertices[v]:
            w_ = tree.other_end(e, v)
            if w_ not in seen:
                seen.add(w_)
                parentv[w_] = (v, e)
                stack.append(w_)
    v = goal
    while parentv[v][0] != start:
        v = parentv[v][0]
    return parentv[v][1]


# ---------------------------------------------------------------------------
# printed normal-form presentations


def gamma_star_presentation(n: int, twisted: bool = True) -> Presentation:
    """The printed presentation of the exceptional-cycle normal form: a
    beta n-ring plus an alpha/gamma double detour at vertex "1".

    With ``twisted`` False the two detour-square relations al_2*al_1 and
    ga_2*ga_1 are replaced by al_2*ga_1 and ga_2*al_1 (the weakly symmetric
    twin of the family).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    ring = [str(j) for j in range(1, n + 1)]
    arrows = [ArrowDef(f"be_{j}", str(j), str(j % n + 1)) for j in range(1, n + 1)]
    arrows += [ArrowDef("al_1", "1", "a"), ArrowDef("al_2", "a", "1"),
               ArrowDef("ga_1", "1", "w"), ArrowDef("ga_2", "w", "1")]
    B = tuple(f"be_{j}" for j in range(1, n + 1))

    def ring_path(start: int, length: int) -> tuple[str, ...]:
        return tuple(f"be_{(start - 1 + t) % n + 1}" for t in range(length))

    zero: list[tuple[str, ...]] = [
        ("al_2", "be_1"), ("ga_2", "be_1"),
        (f"be_{n}", "al_1"), (f"be_{n}", "ga_1"),
    ]
    if twisted:
        zero += [("al_2", "al_1"), ("ga_2", "ga_1")]
    else:
        zero += [("al_2", "ga_1"), ("ga_2", "al_1")]
    zero += [ring_path(j, 2 * n + 1) for j in range(2, n + 1)]
    comms = [
        Commutation(lhs=("al_1", "al_2"), rhs=B + B, scalar=ONE),
        Commutation(lhs=B + B, rhs=("ga_1", "ga_2"), scalar=ONE),
    ]
    return Presentation(
        vertices=tuple(ring) + ("a", "w"),
        arrows=tuple(arrows),
        zero=tuple(zero),
        commutations=tuple(comms),
        family={"kind": "gamma_star" if twisted else "gamma", "n": n},
    )


def lambda_loop_presentation(p: int, q: int, theta: Scalar) -> Presentation:
    """The printed presentation of the loop normal form: an outer
    (p+1)-cycle of alpha arrows and an inner (q+1)-cycle of beta arrows
    through the single cycle vertex "1", with the twisted commutation."""
    if p < 0 or q < 0:
        raise ValueError("need p, q >= 0")
    overt = ["1"] + [f"1^{r}" for r in range(1, p + 1)]
    ivert = ["1"] + [f"1_{l}" for l in range(1, q + 1)]
    arrows = []
    for i in range(p + 1):
        arrows.append(ArrowDef(f"al_{i + 1}", overt[i], overt[(i + 1) % (p + 1)]))
    for j in range(q + 1):
        arrows.append(ArrowDef(f"be_{j + 1}", ivert[j], ivert[(j + 1) % (q + 1)]))
    A = tuple(f"al_{i}" for i in range(1, p + 2))
    B = tuple(f"be_{j}" for j in range(1, q + 2))

    zero: list[tuple[str, ...]] = []
    if p > 0:
        zero.append((f"al_{p + 1}", "al_1"))
    else:
        zero.append(("al_1", "al_1"))
    if q > 0:
        zero.append((f"be_{q + 1}", "be_1"))
    else:
        zero.append(("be_1", "be_1"))
    for i in range(2, p + 2):
        zero.append(A[i - 1:] + B + A[:i - 1] + (A[i - 1],))
    for j in range(2, q + 2):
        zero.append(B[j - 1:] + A + B[:j - 1] + (B[j - 1],))
    comms = [Commutation(lhs=A + B, rhs=B + A, scalar=theta)]
    return Presentation(
        vertices=tuple(dict.fromkeys(overt + ivert)),
        arrows=tuple(arrows),
        zero=tuple(zero),
        commutations=tuple(comms),
        family={"kind": "lambda_loop", "p": p, "q": q, "theta": str(theta)},
    )


def normal_form_presentation(nf) -> Presentation:
    """The presentation of a normal form: the star-graph construction for
    the twisted cycle family, the printed quivers for the other two."""
    from .forms import GammaStar, LambdaCycle, LambdaLoop

    if isinstance(nf, LambdaCycle):
        from .fixtures import star_input
        return build_omega1(star_input(nf.p, nf.q, nf.k, nf.s, nf.theta))
    if isinstance(nf, GammaStar):
        return gamma_star_presentation(nf.n, twisted=True)
    if isinstance(nf, LambdaLoop):
        return lambda_loop_presentation(nf.p, nf.q, nf.theta)
    raise TypeError(f"not a normal form: {nf!r}")


# ---------------------------------------------------------------------------
# reduction to an admissible presentation


@dataclass
class ReducedPresentation(Presentation):
    """A presentation with all arrow-equals-path generators eliminated."""

    substitution: dict[str, tuple[str, ...]] = field(default_factory=dict)


def reduce_presentation(pres: Presentation) -> ReducedPresentation:
    """Eliminate superfluous arrows by substituting their defining paths.

    A commutation with exactly one single-arrow side (and trivial scalar)
    defines that arrow; the arrow is dropped from the quiver and its path is
    substituted into every other relation.  Substituted monomials that
    contain a surviving socle path or another zero monomial as a proper
    contiguous subword are redundant and dropped.
    """
    subs: dict[str, tuple[str, ...]] = {}
    defining: list[Commutation] = []
    for c in pres.commutations:
        one_l, one_r = len(c.lhs) == 1, len(c.rhs) == 1
        if one_l == one_r:
            continue
        arrow = c.rhs[0] if one_r else c.lhs[0]
        path = c.lhs if one_r else c.rhs
        if not (c.scalar.is_symbolic is False and c.scalar.value == 1):
            raise PresentationError(
                f"superfluous arrow {arrow} defined with nontrivial scalar")
        if arrow in path:
            raise PresentationError(f"cyclic substitution for arrow {arrow}")
        subs[arrow] = path
        defining.append(c)

    # close substitutions over each other
    for _ in range(len(subs) + 1):
        changed = False
        for arrow, path in list(subs.items()):
            if any(x in subs for x in path):
                new = _apply_subs(path, subs)
                if arrow in new:
                    raise PresentationError(f"cyclic substitution for arrow {arrow}")
                subs[arrow] = new
                changed = True
        if not changed:
            break
    else:
        raise PresentationError("cyclic substitution dependency")

    if not subs:
        red = ReducedPresentation(
            vertices=pres.vertices, arrows=pres.arrows, zero=pres.zero,
            commutations=pres.commutations, family=dict(pres.family),
            order=pres.order, substitution={})
        return red

    comms = [Commutation(lhs=_apply_subs(c.lhs, subs), rhs=_apply_subs(c.rhs, subs),
                         scalar=c.scalar)
             for c in pres.commutations if c not in defining]
    socle_paths = [c.lhs for c in comms] + [c.rhs for c in comms]
    zeros = []
    for z in pres.zero:
        zz = _apply_subs(z, subs)
        if any(_proper_subword(sp, zz) for sp in socle_paths):
            continue
        zeros.append(zz)
    zeros = _subword_minimal(zeros)

    arrows = tuple(a for a in pres.arrows if a.name not in subs)
    red = ReducedPresentation(
        vertices=pres.vertices,
        arrows=arrows,
        zero=tuple(zeros),
        commutations=tuple(comms),
        family=dict(pres.family),
        order=pres.order,
        substitution=subs,
    )
    for z in red.zero:
        if len(z) < 2:
            raise PresentationError("reduced ideal not admissible: short zero relation")
    for c in red.commutations:
        if len(c.lhs) < 2 or len(c.rhs) < 2:
            raise PresentationError("reduced ideal not admissible: short commutation")
    return red


def _apply_subs(path: tuple[str, ...], subs: dict[str, tuple[str, ...]]
                ) -> tuple[str, ...]:
    out: list[str] = []
    for x in path:
        out.extend(subs.get(x, (x,)))
    return tuple(out)


def _proper_subword(needle: tuple[str, ...], hay: tuple[str, ...]) -> bool:
    n, h = len(needle), len(hay)
    if n >= h or n == 0:
        return False
    return any(hay[i:i + n] == needle for i in range(h - n + 1))


def _subword_minimal(paths: list[tuple[str, ...]]) -> list[tuple[str, ...]]:
    seen: list[tuple[str, ...]] = []
    for z in sorted(set(paths), key=lambda t: (len(t), t)):
        if not any(_proper_subword(s, z) or s == z for s in seen):
            seen.append(z)
    order = {z: i for i, z in enumerate(paths)}
    return sorted(seen, key=lambda z: order.get(z, len(order)))


# ---------------------------------------------------------------------------
# maximal paths of slot-backed reduced presentations


def surviving_arrow_of_slot(red: ReducedPresentation) -> dict[Slot, str]:
    out = {}
    for a in red.arrows:
        if a.src_slot is not None:
            out[a.src_slot] = a.name
    return out


def maximal_paths(red: ReducedPresentation, vertex: str) -> list[tuple[str, ...]]:
    """The one or two maximal relation-avoiding paths from a vertex of a
    slot-backed reduced presentation.  Both end at the rotation image of the
    vertex (the Nakayama permutation)."""
    order = red.order
    if order is None:
        raise PresentationError("maximal paths need a slot-backed presentation")
    arrow_of = surviving_arrow_of_slot(red)
    paths = []
    for t in sorted(order.slots_of_edge(vertex)):
        if order.is_leaf_slot(t):
            continue
        walk = order.socle_walk(t)
        paths.append(tuple(arrow_of[r] for r in walk[:-1]))
    if not 1 <= len(paths) <= 2:
        raise PresentationError(f"vertex {vertex!r} has {len(paths)} maximal paths")
    targets = {red.path_vertices(p)[-1] for p in paths}
    if len(targets) != 1:
        raise PresentationError("maximal paths do not share a target")
    return paths


def nakayama_permutation(red: ReducedPresentation) -> dict[str, str]:
    return {v: red.path_vertices(maximal_paths(red, v)[0])[-1]
            for v in red.vertices}
