"""Number-theoretic and stable-category invariants of the normal forms."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .forms import GammaStar, LambdaCycle, LambdaLoop, NormalForm


class InvariantError(ValueError):
    pass


def m_ks(k: int, s: int) -> int:
    """The unique 1 <= m <= k-1 with m(s+2) + 1 = 0 mod k."""
    if gcd(s + 2, k) != 1:
        raise InvariantError(f"no solution: gcd(s+2, k) = {gcd(s + 2, k)}")
    hits = [m for m in range(1, k) if (m * (s + 2) + 1) % k == 0]
    if len(hits) != 1:
        raise InvariantError(f"expected one residue, found {hits}")
    return hits[0]


@dataclass(frozen=True)
class StableType:
    """The Euclidean component and exceptional tube ranks of the stable
    Auslander-Reiten quiver."""

    component: str              # "A" or "D"
    index: int                  # the subscript of the Euclidean diagram
    tube_ranks: tuple[int, ...]
    rank_one_index_set: str

    def to_json(self) -> dict:
        return {"component": f"{self.component}~{self.index}",
                "tube_ranks": sorted(self.tube_ranks),
                "rank_one_index_set": self.rank_one_index_set}


def stable_type(nf: NormalForm) -> StableType:
    if isinstance(nf, LambdaCycle):
        st = StableType("A", 2 * (nf.p + nf.q + 1) * nf.k - 1,
                        ((2 * nf.p + 1) * nf.k, (2 * nf.q + 1) * nf.k),
                        "K minus 0")
        assert sum(st.tube_ranks) == st.index + 1
        return st
    if isinstance(nf, GammaStar):
        return StableType("D", 2 * nf.n + 3, (2, 2, 2 * nf.n + 1), "K minus 0")
    if isinstance(nf, LambdaLoop):
        return StableType("A", 2 * (nf.p + nf.q) + 1,
                          (2 * nf.p + 1, 2 * nf.q + 1), "not stated")
    raise TypeError(f"not a normal form: {nf!r}")


def syzygy_exponents(nf: NormalForm) -> tuple[int, int]:
    """The powers of the translate realizing the syzygy on the outer and
    inner stable tubes."""
    if isinstance(nf, LambdaCycle):
        m = m_ks(nf.k, nf.s)
        return (m * (2 * nf.p + 1) + nf.p + 1,
                (nf.k - m) * (2 * nf.q + 1) - nf.q)
    if isinstance(nf, LambdaLoop):
        return (nf.p + 1, nf.q + 1)
    raise InvariantError("syzygy exponents unavailable for the exceptional family")


def theorem2_constants(nf: NormalForm) -> dict:
    """Homological constants valid across all three families."""
    if not isinstance(nf, (LambdaCycle, GammaStar, LambdaLoop)):
        raise TypeError(f"not a normal form: {nf!r}")
    return {"repdim": 3, "stable_dim": 1}
