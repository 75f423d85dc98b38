"""The four-symbol alphabet underlying diagonal flat-manifold matrices.

A diagonal holonomy generator acts on each circle factor of a torus by one
of four isometries: the identity, the half turn, the flip, or the flipped
half turn.  We encode these as the integers ``0, 1, 2, 3``.  Under
composition they form a Klein four-group with identity ``0`` and
``1 + 2 = 3``; on this numbering the group law is bitwise XOR, which is
what :func:`add` computes.

Three Z2-valued gadgets on the alphabet drive everything else:

* :func:`conj` -- the additive involution swapping ``2`` and ``3``
  (mirrors the freedom of re-choosing the origin of a circle factor);
* :func:`alpha`, :func:`beta` -- the two linear functionals with
  ``alpha(2) = beta(3) = 1`` and ``alpha(3) = beta(2) = 0``, whose values
  on matrix columns build the degree-one cocycles;
* :func:`alpha_plus_beta` -- their sum, ``1`` exactly on the two flip
  symbols ``{2, 3}``.

The subgroup ``{0, 1}`` is a copy of Z2 inside the alphabet; whenever a
Z2 quantity is mixed with symbol arithmetic it is embedded that way.
"""

from __future__ import annotations

__all__ = [
    "SYMBOLS",
    "add",
    "conj",
    "alpha",
    "beta",
    "alpha_plus_beta",
    "scalar_mul",
    "parse_symbol",
    "format_symbol",
]

SYMBOLS = (0, 1, 2, 3)

# Lookup tables; add() is XOR, spelled out once here for the record.
_CONJ = (0, 1, 3, 2)
_ALPHA = (0, 1, 1, 0)
_BETA = (0, 1, 0, 1)


def add(a: int, b: int) -> int:
    """Klein four-group addition: commutative, every symbol self-inverse."""
    return a ^ b


def conj(a: int) -> int:
    """The additive involution fixing 0 and 1 and swapping 2 and 3."""
    return _CONJ[a]


def alpha(a: int) -> int:
    """Linear functional with alpha(2) = 1, alpha(3) = 0 (so alpha(1) = 1)."""
    return _ALPHA[a]


def beta(a: int) -> int:
    """Linear functional with beta(3) = 1, beta(2) = 0 (so beta(1) = 1)."""
    return _BETA[a]


def alpha_plus_beta(a: int) -> int:
    """(alpha + beta)(a): equals 1 exactly when ``a`` is 2 or 3."""
    return a >> 1


def scalar_mul(t: int, a: int) -> int:
    """t * a for an integer scalar t: the symbol added to itself t times."""
    return a if t & 1 else 0


def parse_symbol(ch: str) -> int:
    """Parse a single digit character '0'..'3' into a symbol."""
    if len(ch) == 1 and ch in "0123":
        return ord(ch) - ord("0")
    raise ValueError(f"not a symbol digit: {ch!r}")


def format_symbol(a: int) -> str:
    if a not in SYMBOLS:
        raise ValueError(f"not a symbol: {a!r}")
    return str(a)
