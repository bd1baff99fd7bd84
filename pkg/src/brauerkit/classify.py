"""Isomorphism and stable-equivalence decisions, with explicit witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .cartan import cartan_strings
from .forms import GammaStar, LambdaCycle, LambdaLoop, NormalForm, form_to_dict
from .graph import GraphError, GraphInput, analyze, oriented_rotation
from .invariants import InvariantError, m_ks, stable_type, syzygy_exponents, theorem2_constants
from .presentation import (Commutation, Presentation, build_omega1, build_omega2,
                           reduce_presentation)
from .reduction import ReductionTrace, full_reduce, omega2_normal, ws_params
from .theta import Scalar


class ClassifyError(ValueError):
    pass


@dataclass(frozen=True)
class Decision:
    verdict: str                      # yes | no | necessary-conditions-pass |
    reason: str                       # necessary-conditions-fail | undetermined
    witness: Optional[dict] = None
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "reason": self.reason,
               "evidence": self.evidence}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _case2_matches(a: LambdaCycle, b: LambdaCycle) -> bool:
    return (a.p == b.q and a.q == b.p and a.k == b.k and a.s != b.s
            and m_ks(a.k, a.s) + m_ks(b.k, b.s) == a.k - 1)


def stable_equiv_necessary(a: LambdaCycle, b: LambdaCycle) -> Decision:
    """The published necessary conditions for stable equivalence of two
    twisted cycle algebras; never a positive verdict (sufficiency is open)."""
    evidence = {
        "tube_ranks_a": sorted(stable_type(a).tube_ranks),
        "tube_ranks_b": sorted(stable_type(b).tube_ranks),
        "syzygy_exponents_a": list(syzygy_exponents(a)),
        "syzygy_exponents_b": list(syzygy_exponents(b)),
    }
    if (a.p, a.q, a.k, a.s) == (b.p, b.q, b.k, b.s):
        return Decision("necessary-conditions-pass", "identical parameters",
                        evidence=evidence)
    if _case2_matches(a, b):
        if a.k % 2 == 0:
            raise ClassifyError("the swapped case forces an odd cycle length")
        evidence["m_sum"] = m_ks(a.k, a.s) + m_ks(b.k, b.s)
        return Decision(
            "necessary-conditions-pass",
            "swapped parameters with complementary residues", evidence=evidence)
    return Decision("necessary-conditions-fail",
                    "no parameter case applies; invariant bundles differ",
                    evidence=evidence)


def iso_witness_map(k: int, s: int, s2: int) -> dict[int, int]:
    """The cycle-index bijection t of the swapped-parameter isomorphism:
    t(i) = 1 + j(i) s2 where i = 1 + j(i) s mod k.

    Verifies the four congruences, the key identity s*s2 + s + s2 = 0 mod k,
    and that the map composed with its partner is the identity.
    """
    if gcd(s, k) != 1 or gcd(s2, k) != 1:
        raise ClassifyError("both shifts must be coprime to k")
    if m_ks(k, s) + m_ks(k, s2) != k - 1:
        raise ClassifyError("residues are not complementary")
    if (s * s2 + s + s2) % k != 0:
        raise ClassifyError("key congruence s*s2 + s + s2 = 0 mod k fails")
    s_inv = pow(s, -1, k)
    t = {}
    for i in range(1, k + 1):
        j = ((i - 1) * s_inv) % k
        t[i] = (j * s2) % k + 1
    # the proof's congruences (i)-(iv)
    def norm(x: int) -> int:
        return (x - 1) % k + 1
    for i in range(1, k + 1):
        assert t[norm(i - 1)] % k == (t[i] + s2 + 1) % k, "congruence (i)"
        assert t[norm(i + s)] % k == (t[norm(i + s + 1)] + s2 + 1) % k, "congruence (ii)"
        assert t[norm(i + s + 1)] % k == (t[i] - 1) % k, "congruence (iii)"
        assert t[norm(i + s)] % k == (t[norm(i - 1)] - 1) % k, "congruence (iv)"
    t_back = {}
    s2_inv = pow(s2, -1, k)
    for i in range(1, k + 1):
        j = ((i - 1) * s2_inv) % k
        t_back[i] = (j * s) % k + 1
    for i in range(1, k + 1):
        assert t_back[t[i]] == i, "witness does not compose to the identity"
    return t


# -- arrow-level witness verification ----------------------------------------


def _witness_vertex_map(t: dict[int, int], k: int, p: int, q: int) -> dict[str, str]:
    """The full vertex bijection of the swapped-parameter isomorphism:
    e_i -> e_{t(i)}, inner i_j -> outer (t(i)+1)^j, outer i^j -> inner
    t(i-1)_j."""
    def norm(x: int) -> int:
        return (x - 1) % k + 1
    out = {}
    for i in range(1, k + 1):
        out[str(i)] = str(t[i])
        for j in range(1, q + 1):
            out[f"{i}_{j}"] = f"{norm(t[i] + 1)}^{j}"
        for j in range(1, p + 1):
            out[f"{i}^{j}"] = f"{t[norm(i - 1)]}_{j}"
    return out


def _arrow_roles(nf, pres) -> dict[str, tuple[str, str]]:
    """Each arrow keyed by (role, source vertex): cycle vertices carry an
    inner-route and an outer-route arrow, tree vertices a chain arrow and a
    superfluous one."""
    k = nf.k

    def cyc(i: int) -> str:
        return str((i - 1) % k + 1)

    roles = {}
    for a in pres.arrows:
        x, y = a.src, a.dst
        if "_" in x or "^" in x:
            i, j = x.replace("^", "_").split("_")
            sup_dst = (f"{cyc(int(i) + nf.s)}^{j}" if "^" in x
                       else f"{cyc(int(i) + nf.s)}_{j}")
            role = "sup" if y == sup_dst else "chain"
        else:
            i = int(x)
            inner_dst = f"{x}_1" if nf.q >= 1 else cyc(i - 1)
            role = "inner" if y == inner_dst else "outer"
        key = (role, x)
        if key in roles:
            raise ClassifyError(f"ambiguous arrow role {key}")
        roles[a.name] = key
    return roles


def verify_iso_witness(a: LambdaCycle, b: LambdaCycle) -> dict:
    """Push every relation generator of ``a`` through the witness map and
    check it lands in the generator set of ``b`` (with theta inverted)."""
    if not _case2_matches(a, b) or a.theta.inverse() != b.theta:
        raise ClassifyError("witness verification needs the swapped case")
    k = a.k
    t = iso_witness_map(k, a.s, b.s)
    vmap = _witness_vertex_map(t, k, a.p, a.q)
    from .fixtures import star_input
    pa = build_omega1(star_input(a.p, a.q, a.k, a.s, a.theta))
    pb = build_omega1(star_input(b.p, b.q, b.k, b.s, b.theta))
    roles_a = _arrow_roles(a, pa)
    by_role_b = {role: name for name, role in _arrow_roles(b, pb).items()}

    def image(name: str) -> str:
        role, x = roles_a[name]
        flip = {"inner": "outer", "outer": "inner", "chain": "chain", "sup": "sup"}
        return by_role_b[(flip[role], vmap[x])]

    def push(path):
        return tuple(image(ar) for ar in path)

    b_zero = set(pb.zero)
    for z in pa.zero:
        if push(z) not in b_zero:
            raise ClassifyError(f"zero relation {z} not carried to a generator")
    b_comms = {_normalize_comm(c) for c in pb.commutations}
    for c in pa.commutations:
        scalar = c.scalar.inverse() if not (not c.scalar.is_symbolic and
                                            c.scalar.value == 1) else c.scalar
        pushed = Commutation(lhs=push(c.lhs), rhs=push(c.rhs), scalar=scalar)
        if _normalize_comm(pushed) not in b_comms:
            raise ClassifyError(f"commutation at {c.lhs[:1]} not carried")
    return {"t": {str(i): t[i] for i in sorted(t)},
            "vertex_map": vmap, "theta": str(b.theta)}


def _normalize_comm(c: Commutation) -> tuple:
    """Scalar-twisted pairs up to swapping sides with inverted scalar."""
    x = (c.lhs, c.rhs, str(c.scalar))
    y = (c.rhs, c.lhs, str(c.scalar.inverse()))
    return min(x, y)


def iso_decide(a: LambdaCycle, b: LambdaCycle) -> Decision:
    """Isomorphism of two twisted cycle algebras: identical parameters with
    equal scalars, or swapped parameters with complementary residues and
    inverse scalars."""
    if (a.p, a.q, a.k, a.s) == (b.p, b.q, b.k, b.s):
        if not a.theta.comparable(b.theta):
            return Decision("undetermined", "scalars are independent symbols")
        if a.theta == b.theta:
            return Decision("yes", "identical parameters and scalar",
                            witness={"t": {str(i): i for i in range(1, a.k + 1)},
                                     "theta": str(b.theta)})
        return Decision("no", "scalars differ on identical parameters")
    if _case2_matches(a, b):
        if not a.theta.comparable(b.theta):
            return Decision("undetermined", "scalars are independent symbols")
        if a.theta.inverse() == b.theta:
            witness = verify_iso_witness(a, b)
            return Decision("yes", "swapped parameters with inverse scalar",
                            witness=witness)
        return Decision("no", "swapped parameters need the inverse scalar")
    return Decision("no", "neither parameter case of the isomorphism "
                          "criterion applies")


def cross_family_decide(a: NormalForm, b: NormalForm) -> Decision:
    """Stable-equivalence decisions across the three families."""
    if isinstance(a, GammaStar) and isinstance(b, GammaStar):
        if a.n == b.n:
            return Decision("yes", "equal exceptional parameters")
        return Decision("no", "different tube ranks",
                        evidence={"ranks_a": [2, 2, 2 * a.n + 1],
                                  "ranks_b": [2, 2, 2 * b.n + 1]})
    kinds = {type(a), type(b)}
    if kinds == {LambdaCycle, GammaStar} or kinds == {LambdaLoop, GammaStar}:
        return Decision("no", "Euclidean components of different type",
                        evidence={"component_a": stable_type(a).to_json(),
                                  "component_b": stable_type(b).to_json()})
    if kinds == {LambdaCycle, LambdaLoop}:
        cyc = a if isinstance(a, LambdaCycle) else b
        m = m_ks(cyc.k, cyc.s)
        evidence = {
            "k": cyc.k, "m": m,
            "k_equals_2m_plus_1": cyc.k == 2 * m + 1,
            "s_times_m_mod_k": (cyc.s * m) % cyc.k,
        }
        # matching tube data would force k = 2m+1 and k | s*m, impossible
        # with gcd(s, k) = 1 and 1 <= m < k
        if cyc.k == 2 * m + 1:
            assert (cyc.s * m) % cyc.k != 0
        return Decision("no", "loop and cycle families are never stably "
                              "equivalent", evidence=evidence)
    if isinstance(a, LambdaLoop) and isinstance(b, LambdaLoop):
        ranks_a = sorted((2 * a.p + 1, 2 * a.q + 1))
        ranks_b = sorted((2 * b.p + 1, 2 * b.q + 1))
        if ranks_a == ranks_b:
            return Decision("necessary-conditions-pass",
                            "matching tube ranks and syzygy exponents",
                            evidence={"ranks": ranks_a})
        return Decision("necessary-conditions-fail", "tube ranks differ",
                        evidence={"ranks_a": ranks_a, "ranks_b": ranks_b})
    # both LambdaCycle
    return stable_equiv_necessary(a, b)


# -- end-to-end classification -------------------------------------------------


def classify(inp: GraphInput) -> dict:
    """Classify a graph input: normal form, stable invariants, constants,
    and the consistency checks (simple count, Cartan determinant)."""
    graph = inp.graph
    if graph.betti == 0:
        return _classify_tree(inp)
    if inp.s == 0:
        return _classify_trivial_rotation(inp)
    return _classify_rotation(inp)


def _bundle(nf: NormalForm, checks: dict, trace_length: int = 0) -> dict:
    out = {
        "normal_form": form_to_dict(nf),
        "stable_type": stable_type(nf).to_json(),
        "theorem2": theorem2_constants(nf),
        "checks": checks,
        "trace_length": trace_length,
    }
    try:
        out["syzygy_exponents"] = list(syzygy_exponents(nf))
    except InvariantError:
        out["syzygy_exponents"] = "unavailable"
    if isinstance(nf, LambdaCycle):
        out["m_ks"] = m_ks(nf.k, nf.s)
    return out


def _classify_rotation(inp: GraphInput) -> dict:
    nf, trace = full_reduce(inp)
    red_in = reduce_presentation(build_omega1(inp))
    from .presentation import normal_form_presentation
    red_nf = reduce_presentation(normal_form_presentation(nf))
    checks = {
        "simple_count": "ok" if len(inp.graph.edges) == nf.simple_count else "fail",
        "cartan_det": "ok" if cartan_strings(red_in).det() == cartan_strings(red_nf).det()
        else "fail",
    }
    return _bundle(nf, checks, trace_length=len(trace.steps))


def _classify_trivial_rotation(inp: GraphInput) -> dict:
    cycle, report, rot = oriented_rotation(inp.graph, inp.s, v1_hint=inp.orient)
    if cycle.k % 2 == 0:
        raise ClassifyError("the trivial rotation needs an odd cycle")
    nf = ws_params(report.o_total, report.i_total, cycle.k, theta=inp.theta)
    red_in = reduce_presentation(build_omega1(inp))
    from .fixtures import star_input
    red_nf = reduce_presentation(build_omega1(star_input(nf.p, nf.q, 1, 0, nf.theta)))
    checks = {
        "simple_count": "ok" if len(inp.graph.edges) == nf.simple_count else "fail",
        "cartan_det": "ok" if cartan_strings(red_in).det() == cartan_strings(red_nf).det()
        else "fail",
    }
    return _bundle(nf, checks)


def _classify_tree(inp: GraphInput) -> dict:
    if inp.v1 is None or inp.v2 is None:
        raise ClassifyError("tree inputs need the distinguished vertices v1 and v2")
    pres = build_omega2(inp.graph, inp.v1, inp.v2)
    nf = omega2_normal(pres)
    checks = {
        "simple_count": "ok" if len(pres.vertices) == nf.simple_count else "fail",
        "cartan_det": "n/a",
    }
    out = _bundle(nf, checks)
    out["degeneracies"] = pres.family.get("degeneracies", [])
    return out
