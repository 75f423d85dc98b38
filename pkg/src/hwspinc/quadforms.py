"""Polynomials of degree at most 2 over GF(2), packed into bitmasks.

A linear form in ``d`` variables is a plain int mask (bit k = coefficient
of ``x_k``).  A :class:`QuadForm` packs one coefficient per monomial into
a single int: bits ``0 .. d-1`` are the squares ``x_k^2`` and the
remaining ``d*(d-1)/2`` bits are the cross terms ``x_i*x_j`` (i < j) in
lexicographic order.  That fixed monomial order is part of the printing
and serialization contract.

The module builds the degree-one column cocycles of a symbol matrix, the
degree-two part of its total Stiefel-Whitney polynomial, and decides span
membership by bitset Gaussian elimination.  Only degree <= 2 ever occurs;
products of full polynomials are accumulated degree-truncated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .salgebra import alpha, beta
from .smatrix import SMatrix

__all__ = [
    "QuadForm",
    "zero_form",
    "square_form",
    "lin_mul",
    "alpha_form",
    "beta_form",
    "theta",
    "sw2",
    "sigma2",
    "strip_squares",
    "in_span",
    "kappa_eval",
    "format_linform",
    "format_quadform",
]


@lru_cache(maxsize=None)
def _pairs(d: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(d) for j in range(i + 1, d))


@lru_cache(maxsize=None)
def _pair_bit(d: int) -> dict[tuple[int, int], int]:
    return {pair: d + t for t, pair in enumerate(_pairs(d))}


@dataclass(frozen=True)
class QuadForm:
    """A degree <= 2 polynomial in ``nvars`` variables over GF(2)."""

    nvars: int
    bits: int

    def __post_init__(self):
        width = self.nvars + self.nvars * (self.nvars - 1) // 2
        if self.bits >> width:
            raise ValueError("coefficient bits out of range")

    def __add__(self, other: "QuadForm") -> "QuadForm":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        return QuadForm(self.nvars, self.bits ^ other.bits)

    def is_zero(self) -> bool:
        return self.bits == 0

    @property
    def squares(self) -> int:
        """Mask of the square monomials x_k^2 present."""
        return self.bits & ((1 << self.nvars) - 1)

    def cross_pairs(self) -> tuple[tuple[int, int], ...]:
        """The cross monomials x_i*x_j (i < j) present, in canonical order."""
        d = self.nvars
        return tuple(
            pair for t, pair in enumerate(_pairs(d)) if (self.bits >> (d + t)) & 1
        )


def zero_form(nvars: int) -> QuadForm:
    return QuadForm(nvars, 0)


def square_form(nvars: int, k: int) -> QuadForm:
    """The single monomial x_k^2."""
    if not 0 <= k < nvars:
        raise IndexError(f"variable index out of range: {k}")
    return QuadForm(nvars, 1 << k)


def lin_mul(f: int, g: int, nvars: int) -> QuadForm:
    """Product of two linear forms; x_k * x_k lands on the square bit k."""
    pair_bit = _pair_bit(nvars)
    bits = 0
    fi = f
    while fi:
        low = fi & -fi
        i = low.bit_length() - 1
        fi ^= low
        gj = g
        while gj:
            lowj = gj & -gj
            j = lowj.bit_length() - 1
            gj ^= lowj
            if i == j:
                bits ^= 1 << i
            else:
                bits ^= 1 << pair_bit[(i, j) if i < j else (j, i)]
    return QuadForm(nvars, bits)


def alpha_form(m: SMatrix, j: int) -> int:
    """Linear form with coefficient alpha(entry) per row, for column ``j``."""
    if not 0 <= j < m.n:
        raise IndexError(f"column index out of range: {j}")
    return sum(alpha(m.entries[k][j]) << k for k in range(m.d))


def beta_form(m: SMatrix, j: int) -> int:
    """Linear form with coefficient beta(entry) per row, for column ``j``."""
    if not 0 <= j < m.n:
        raise IndexError(f"column index out of range: {j}")
    return sum(beta(m.entries[k][j]) << k for k in range(m.d))


def theta(m: SMatrix, j: int) -> QuadForm:
    """The product cocycle of column ``j``: alpha_form * beta_form."""
    return lin_mul(alpha_form(m, j), beta_form(m, j), m.d)


def sw2(m: SMatrix) -> QuadForm:
    """Degree-2 part of the product over columns of (1 + alpha_j + beta_j).

    Expands to the second elementary symmetric polynomial of the linear
    forms ``alpha_j + beta_j``, accumulated with a running prefix sum so
    nothing above degree 2 is ever formed.
    """
    acc = zero_form(m.d)
    prefix = 0
    for j in range(m.n):
        ell = alpha_form(m, j) ^ beta_form(m, j)
        acc += lin_mul(prefix, ell, m.d)
        prefix ^= ell
    return acc


def sigma2(nvars: int) -> QuadForm:
    """Elementary symmetric polynomial of degree 2: sum of all x_i*x_j, i<j."""
    d = nvars
    ncross = d * (d - 1) // 2
    return QuadForm(d, ((1 << ncross) - 1) << d)


def strip_squares(q: QuadForm) -> QuadForm:
    """Zero out the square monomials, keeping the cross part."""
    return QuadForm(q.nvars, q.bits & ~((1 << q.nvars) - 1))


def in_span(target: QuadForm, basis: Sequence[QuadForm]) -> int | None:
    """Coefficient mask expressing ``target`` over ``basis``, or None.

    Gaussian elimination over GF(2); basis vectors are processed in the
    given order and the first representation found that way is returned,
    so the result is deterministic.  A returned mask ``c`` satisfies
    ``XOR of basis[k] for k in c == target`` exactly.
    """
    d = target.nvars
    pivots: list[tuple[int, int, int]] = []  # (pivot bit, vector, combo)
    for k, b in enumerate(basis):
        if b.nvars != d:
            raise ValueError("variable count mismatch in basis")
        vec, combo = b.bits, 1 << k
        for pbit, pvec, pcombo in pivots:
            if (vec >> pbit) & 1:
                vec ^= pvec
                combo ^= pcombo
        if vec:
            pivots.append((vec.bit_length() - 1, vec, combo))
    vec, combo = target.bits, 0
    for pbit, pvec, pcombo in pivots:
        if (vec >> pbit) & 1:
            vec ^= pvec
            combo ^= pcombo
    return combo if vec == 0 else None


def kappa_eval(q: QuadForm, u_mask: int) -> int:
    """Evaluate ``q`` at the indicator vector of the index set ``u_mask``."""
    val = (q.squares & u_mask).bit_count()
    d = q.nvars
    pairs = _pairs(d)
    bits = q.bits >> d
    while bits:
        low = bits & -bits
        bits ^= low
        i, j = pairs[low.bit_length() - 1]
        if (u_mask >> i) & 1 and (u_mask >> j) & 1:
            val += 1
    return val & 1


def format_linform(f: int, nvars: int) -> str:
    if f == 0:
        return "0"
    terms = [f"x{k}" for k in range(nvars) if (f >> k) & 1]
    return " + ".join(terms)


def format_quadform(q: QuadForm) -> str:
    """Monomials in canonical order: squares first, then cross terms."""
    if q.is_zero():
        return "0"
    terms = [f"x{k}^2" for k in range(q.nvars) if (q.bits >> k) & 1]
    terms += [f"x{i}*x{j}" for i, j in q.cross_pairs()]
    return " + ".join(terms)
