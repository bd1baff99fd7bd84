"""Formal nonzero scalars for socle relations.

The twist parameter is never evaluated: it is either a named symbol (with an
optional exponent -1) or an exact rational.  Two symbols compare equal only if
they have the same name and exponent; a symbol never compares equal to a
rational.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

_SYMBOL_RE = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(\^-1)?$")


@dataclass(frozen=True)
class Scalar:
    """A formal nonzero scalar: a symbol (possibly inverted) or a rational."""

    symbol: str | None = None
    inverted: bool = False
    value: Fraction | None = None

    def __post_init__(self):
        if (self.symbol is None) == (self.value is None):
            raise ValueError("scalar is either a symbol or a rational, not both")
        if self.value is not None and self.value == 0:
            raise ValueError("scalar must be nonzero")

    @property
    def is_symbolic(self) -> bool:
        return self.symbol is not None

    def inverse(self) -> "Scalar":
        if self.is_symbolic:
            return Scalar(symbol=self.symbol, inverted=not self.inverted)
        return Scalar(value=1 / self.value)

    def comparable(self, other: "Scalar") -> bool:
        """Whether equality of self and other is decidable.

        Distinct symbol names are independent indeterminates, so nothing can
        be said about them; everything else is decidable.
        """
        if self.is_symbolic != other.is_symbolic:
            return False
        if self.is_symbolic:
            return self.symbol == other.symbol
        return True

    def __str__(self) -> str:
        if self.is_symbolic:
            return self.symbol + ("^-1" if self.inverted else "")
        return str(self.value)


def parse_scalar(text: Union[str, int, float]) -> Scalar:
    """Parse a scalar from its external form ("theta", "theta^-1", "3/2", 2)."""
    if isinstance(text, (int, float)):
        return Scalar(value=Fraction(text))
    text = text.strip()
    m = _SYMBOL_RE.match(text)
    if m:
        return Scalar(symbol=m.group(1), inverted=m.group(2) is not None)
    try:
        return Scalar(value=Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse scalar {text!r}") from exc


ONE = Scalar(value=Fraction(1))
