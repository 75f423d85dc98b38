"""Spin and spin-c decision procedures for HW-matrices.

Two independent roads to the same verdict:

* the *linear* criterion works on a defining (n-1) x n matrix ``A`` and
  asks whether the degree-2 Stiefel-Whitney form is congruent to a square
  modulo the span of the column cocycles -- pure GF(2) linear algebra
  (:func:`has_spin`, :func:`has_spinc_linear`);

* the *set-search* criterion works on the square HW-matrix ``M`` and
  looks for an index set ``S`` whose intersection parities against
  ``J(U) + U`` match ``binom(|U|, 2)`` for every row set ``U``
  (:func:`find_spinc_set`).

For HW input of degree >= 5 the two criteria provably agree; the theory
is stated for n >= 5, so degree-3 reports carry a caveat flag while still
evaluating both sides.  :func:`analyze` bundles everything into one
report and cross-checks consistency.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import quadforms as qf
from .smatrix import (
    CompletionError,
    PreconditionError,
    SMatrix,
    complete_to_hw,
    mask_to_indices,
    matrix_to_strings,
)

__all__ = [
    "LinearWitness",
    "SpincReport",
    "binom2_parity",
    "theta_basis",
    "has_spin",
    "has_spinc_linear",
    "is_spinc_set",
    "spinc_condition_table",
    "find_spinc_set",
    "analyze",
]


def binom2_parity(m: int) -> int:
    """binom(m, 2) mod 2; equals 1 exactly when m is 2 or 3 mod 4."""
    if m < 0:
        raise ValueError("negative cardinality")
    return 1 if m % 4 in (2, 3) else 0


def _validate_defining(a: SMatrix) -> None:
    if a.d != a.n - 1:
        raise PreconditionError(f"expected (n-1) x n matrix, got {a.d} x {a.n}")
    if not a.is_distinguished():
        raise PreconditionError("matrix is not distinguished")
    if not a.is_free():
        raise PreconditionError("matrix is not free")
    if not a.is_effective():
        raise PreconditionError("matrix is not effective")


def theta_basis(a: SMatrix) -> list[qf.QuadForm]:
    return [qf.theta(a, j) for j in range(a.n)]


def has_spin(a: SMatrix) -> tuple[bool, int | None]:
    """Spin test for a defining matrix: is sw2 spanned by the cocycles?

    Returns (verdict, witness); the witness is the column set whose theta
    forms sum to sw2.
    """
    _validate_defining(a)
    combo = qf.in_span(qf.sw2(a), theta_basis(a))
    return (combo is not None), combo


@dataclass(frozen=True)
class LinearWitness:
    """Decomposition sw2 = sum of chosen thetas + sum of chosen squares."""

    thetas: int
    squares: int


def has_spinc_linear(a: SMatrix) -> tuple[bool, LinearWitness | None]:
    """Spin-c by linear algebra: sw2 in span of thetas and all squares."""
    _validate_defining(a)
    basis = theta_basis(a) + [qf.square_form(a.d, k) for k in range(a.d)]
    combo = qf.in_span(qf.sw2(a), basis)
    if combo is None:
        return False, None
    return True, LinearWitness(combo & ((1 << a.n) - 1), combo >> a.n)


def spinc_condition_table(m: SMatrix, scope: str = "all") -> list[tuple[int, int]]:
    """Per row set U the pair (mask of J(U) + U, binom(|U|, 2) mod 2).

    ``scope`` is "all" (U over all row sets) or "omit-last" (U avoiding
    the last index -- enough for HW-matrices, where a set passing the
    restricted scope passes the full one).
    """
    n = m.n
    if scope == "all":
        count = 1 << n
    elif scope == "omit-last":
        count = 1 << (n - 1)
    else:
        raise ValueError(f"unknown scope: {scope!r}")
    full = (1 << n) - 1
    planes = m.row_planes
    table = []
    lo = hi = mask = 0
    table.append((0, 0))  # U = empty set
    for k in range(1, count):
        flip = (k & -k).bit_length() - 1
        rlo, rhi = planes[flip]
        lo ^= rlo
        hi ^= rhi
        mask ^= 1 << flip
        jmask = lo & ~hi & full
        table.append((jmask ^ mask, binom2_parity(mask.bit_count())))
    return table


def is_spinc_set(m: SMatrix, s_mask: int, scope: str = "all") -> bool:
    """Does ``s_mask`` satisfy the parity condition for every U in scope?"""
    if not m.is_square:
        raise PreconditionError("spin-c sets are defined for square matrices")
    if s_mask >> m.n:
        raise ValueError("set has bits beyond the degree")
    for tmask, parity in spinc_condition_table(m, scope):
        if (tmask & s_mask).bit_count() & 1 != parity:
            return False
    return True


def _scan_spinc(table, lo_s, hi_s, want_parity) -> int | None:
    for s in range(lo_s, hi_s):
        if want_parity is not None and s.bit_count() & 1 != want_parity:
            continue
        for tmask, parity in table:
            if (tmask & s).bit_count() & 1 != parity:
                break
        else:
            return s
    return None


def find_spinc_set(
    m: SMatrix,
    parity_prune: bool = True,
    threads: int = 1,
) -> int | None:
    """Smallest spin-c set of a HW-matrix in mask order, or None.

    Candidate sets are tried in ascending mask order; per candidate the
    row sets run over the last-index-free scope (sufficient for
    HW-matrices).  ``parity_prune`` skips candidates whose size parity
    cannot match ``(n-1)/2``; disabling it re-derives that restriction
    instead of assuming it.  Sharding across ``threads`` workers changes
    nothing about the result.
    """
    reason = m.hw_violation()
    if reason is not None:
        raise PreconditionError(f"not a HW-matrix: {reason}")
    n = m.n
    table = spinc_condition_table(m, "omit-last")
    want = ((n - 1) // 2) & 1 if parity_prune else None
    if threads <= 1:
        return _scan_spinc(table, 0, 1 << n, want)
    chunk = max(1, (1 << n) // (4 * threads))
    starts = range(0, 1 << n, chunk)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = pool.map(
            lambda s0: _scan_spinc(table, s0, min(s0 + chunk, 1 << n), want), starts
        )
        for found in results:
            if found is not None:
                return found
    return None


@dataclass(frozen=True)
class SpincReport:
    """Bundle of verdicts for one matrix.

    ``spin`` implies ``spinc_linear``; for HW input the linear and the
    set-search criteria must agree, recorded in ``consistent``.  Reports
    for degree 3 carry ``small_dimension_caveat`` because the criteria
    are theorems only from degree 5 on.
    """

    matrix: SMatrix
    is_hw: bool
    spin: bool
    spin_witness: int | None
    spinc_linear: bool
    spinc_linear_witness: LinearWitness | None
    spinc_set: int | None
    consistent: bool
    small_dimension_caveat: bool

    def to_dict(self) -> dict:
        w = self.spinc_linear_witness
        return {
            "matrix": matrix_to_strings(self.matrix),
            "is_hw": self.is_hw,
            "spin": self.spin,
            "spin_witness": (
                None if self.spin_witness is None else list(mask_to_indices(self.spin_witness))
            ),
            "spinc_linear": self.spinc_linear,
            "spinc_linear_witness": (
                None
                if w is None
                else {
                    "thetas": list(mask_to_indices(w.thetas)),
                    "squares": list(mask_to_indices(w.squares)),
                }
            ),
            "spinc_set": (
                None if self.spinc_set is None else list(mask_to_indices(self.spinc_set))
            ),
            "consistent": self.consistent,
            "small_dimension_caveat": self.small_dimension_caveat,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def analyze(m: SMatrix) -> SpincReport:
    """Run both criteria on a HW-matrix or a defining (n-1) x n matrix.

    Square input must be a HW-matrix; its defining matrix is obtained by
    dropping the last row.  Rectangular input must be distinguished, free
    and effective and is completed by the forced last row.  Anything else
    raises :class:`PreconditionError`.
    """
    if m.is_square:
        reason = m.hw_violation()
        if reason is not None:
            raise PreconditionError(f"square input is not a HW-matrix: {reason}")
        square = m
        defining = m.drop_row(m.d - 1)
    elif m.d == m.n - 1:
        _validate_defining(m)
        try:
            square = complete_to_hw(m)
        except CompletionError as exc:
            raise PreconditionError(
                f"defining matrix does not complete to a HW-matrix: {exc}"
            ) from exc
        defining = m
    else:
        raise PreconditionError(
            f"input must be n x n or (n-1) x n, got {m.d} x {m.n}"
        )
    spin, spin_witness = has_spin(defining)
    linear, linear_witness = has_spinc_linear(defining)
    sset = find_spinc_set(square)
    consistent = linear == (sset is not None) and (not spin or linear)
    return SpincReport(
        matrix=m,
        is_hw=True,
        spin=spin,
        spin_witness=spin_witness,
        spinc_linear=linear,
        spinc_linear_witness=linear_witness,
        spinc_set=sset,
        consistent=consistent,
        small_dimension_caveat=square.n == 3,
    )
