"""Normal-form tags for the three derived-equivalence families."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Union

from .theta import ONE, Scalar, parse_scalar


@dataclass(frozen=True)
class LambdaCycle:
    """The twisted k-cycle family: k >= 2, gcd(s+2, k) = 1, gcd(s, k) = 1."""

    p: int
    q: int
    k: int
    s: int
    theta: Scalar

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError("need p, q >= 0")
        if self.k < 2 or not 1 <= self.s <= self.k - 1:
            raise ValueError(f"need k >= 2 and 1 <= s <= k-1, got k={self.k}, s={self.s}")
        if gcd(self.s + 2, self.k) != 1:
            raise ValueError(f"gcd(s+2, k) = {gcd(self.s + 2, self.k)} != 1")
        if gcd(self.s, self.k) != 1:
            raise ValueError(f"gcd(s, k) = {gcd(self.s, self.k)} != 1")

    @property
    def simple_count(self) -> int:
        return self.k * (self.p + self.q + 1)

    def __str__(self) -> str:
        return f"L({self.p},{self.q},{self.k},{self.s},{self.theta})"


@dataclass(frozen=True)
class GammaStar:
    """The exceptional-cycle family; n >= 1."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need n >= 1")

    @property
    def simple_count(self) -> int:
        return self.n + 2

    def __str__(self) -> str:
        return f"G*({self.n})"


@dataclass(frozen=True)
class LambdaLoop:
    """The weakly symmetric loop family: p, q >= 0."""

    p: int
    q: int
    theta: Scalar

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError("need p, q >= 0")

    @property
    def simple_count(self) -> int:
        return self.p + self.q + 1

    def __str__(self) -> str:
        return f"WS({self.p},{self.q},{self.theta})"


NormalForm = Union[LambdaCycle, GammaStar, LambdaLoop]


def parse_literal(text: str) -> NormalForm:
    """Parse an inline algebra literal: L(p,q,k,s,theta), G*(n) or WS(p,q,theta)."""
    text = text.strip()
    if text.startswith("G*(") and text.endswith(")"):
        return GammaStar(int(text[3:-1]))
    for prefix, cls, nints in (("L(", LambdaCycle, 4), ("WS(", LambdaLoop, 2)):
        if text.startswith(prefix) and text.endswith(")"):
            parts = [p.strip() for p in text[len(prefix):-1].split(",")]
            if len(parts) != nints + 1:
                raise ValueError(f"expected {nints} integers and a scalar in {text!r}")
            ints = [int(p) for p in parts[:nints]]
            return cls(*ints, parse_scalar(parts[nints]))
    raise ValueError(f"cannot parse algebra literal {text!r}")


def form_to_dict(nf: NormalForm) -> dict:
    if isinstance(nf, LambdaCycle):
        return {"family": "lambda_cycle", "p": nf.p, "q": nf.q, "k": nf.k,
                "s": nf.s, "theta": str(nf.theta)}
    if isinstance(nf, GammaStar):
        return {"family": "gamma_star", "n": nf.n}
    return {"family": "lambda_loop", "p": nf.p, "q": nf.q, "theta": str(nf.theta)}
