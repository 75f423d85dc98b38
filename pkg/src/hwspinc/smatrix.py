"""Matrices over the four-symbol alphabet and their structural predicates.

An ``SMatrix`` is an immutable d x n array of symbols (see
:mod:`hwspinc.salgebra`).  Row and column index sets are handled as plain
int bitmasks throughout: bit ``k`` stands for the 0-based index ``k``.
Masks support the Z2 subset algebra directly -- symmetric difference is
``^``, intersection is ``&``, and ``|U| mod 2`` is ``U.bit_count() & 1``.

Internally every row is stored twice as a pair of bit-planes (the low and
high bits of its symbols), so that adding a set of rows symbol-wise is two
XOR folds and the J-map of a row set comes out of one mask expression.
The subset-quantified predicates (:meth:`SMatrix.is_free`,
:meth:`SMatrix.is_effective`, condition (iii) of
:meth:`SMatrix.is_hw_matrix`) walk all ``2^d`` row sets in Gray-code
order, one row XOR per step; they are exponential by design and intended
for d up to roughly 24.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .salgebra import add, conj

__all__ = [
    "SMatrix",
    "MatrixParseError",
    "PreconditionError",
    "CompletionError",
    "complete_to_hw",
    "parse_matrix",
    "parse_blocks",
    "format_matrix",
    "matrix_to_strings",
    "matrix_from_strings",
    "mask_to_indices",
    "indices_to_mask",
    "gray_flips",
    "random_smatrix",
    "random_distinguished",
]


class MatrixParseError(ValueError):
    """Malformed matrix text; carries the 1-based source line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(ValueError):
    """Input does not satisfy an operation's documented precondition."""


class CompletionError(ValueError):
    """A rectangular matrix does not complete to a valid HW-matrix."""


def mask_to_indices(mask: int) -> tuple[int, ...]:
    """Sorted 0-based indices of the set bits of ``mask``."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def indices_to_mask(indices) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def gray_flips(d: int) -> Iterator[int]:
    """Bit positions to flip so that ``2**d`` steps visit every d-bit mask.

    Starting from mask 0 and XOR-ing ``1 << flip`` per step walks the
    standard reflected Gray code over all subsets of ``{0, .., d-1}``.
    """
    for k in range(1, 1 << d):
        yield (k & -k).bit_length() - 1


@dataclass(frozen=True)
class SMatrix:
    """Immutable matrix with entries in ``{0, 1, 2, 3}``."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise ValueError("ragged rows")
            for v in row:
                if not 0 <= v <= 3:
                    raise ValueError(f"not a symbol: {v!r}")

    @staticmethod
    def from_rows(rows) -> "SMatrix":
        return SMatrix(tuple(tuple(row) for row in rows))

    @property
    def d(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries[0])

    @property
    def is_square(self) -> bool:
        return self.d == self.n

    # -- bit planes -----------------------------------------------------

    @cached_property
    def row_planes(self) -> tuple[tuple[int, int], ...]:
        """Per row, the pair (lo, hi) with bit j = low/high bit of entry j."""
        planes = []
        for row in self.entries:
            lo = hi = 0
            for j, v in enumerate(row):
                lo |= (v & 1) << j
                hi |= (v >> 1) << j
            planes.append((lo, hi))
        return tuple(planes)

    @cached_property
    def col_planes(self) -> tuple[tuple[int, int], ...]:
        """Per column, the pair (lo, hi) with bit i = low/high bit of entry i."""
        planes = []
        for j in range(self.n):
            lo = hi = 0
            for i in range(self.d):
                v = self.entries[i][j]
                lo |= (v & 1) << i
                hi |= (v >> 1) << i
            planes.append((lo, hi))
        return tuple(planes)

    # -- sums and the J-map ---------------------------------------------

    def row_sum(self, i: int, cols: int | None = None) -> int:
        """Symbol sum of row ``i`` over the column set ``cols`` (all if None)."""
        if not 0 <= i < self.d:
            raise IndexError(f"row index out of range: {i}")
        mask = (1 << self.n) - 1 if cols is None else cols
        lo, hi = self.row_planes[i]
        return ((lo & mask).bit_count() & 1) | (((hi & mask).bit_count() & 1) << 1)

    def col_sum(self, j: int, rows: int | None = None) -> int:
        """Symbol sum of column ``j`` over the row set ``rows`` (all if None)."""
        if not 0 <= j < self.n:
            raise IndexError(f"column index out of range: {j}")
        mask = (1 << self.d) - 1 if rows is None else rows
        lo, hi = self.col_planes[j]
        return ((lo & mask).bit_count() & 1) | (((hi & mask).bit_count() & 1) << 1)

    def row_combination(self, rows: int) -> tuple[int, ...]:
        """Symbol-wise sum of the rows in the set ``rows`` (a length-n vector)."""
        lo, hi = self._fold_rows(rows)
        return tuple(((lo >> j) & 1) | (((hi >> j) & 1) << 1) for j in range(self.n))

    def _fold_rows(self, rows: int) -> tuple[int, int]:
        lo = hi = 0
        planes = self.row_planes
        while rows:
            low = rows & -rows
            rlo, rhi = planes[low.bit_length() - 1]
            lo ^= rlo
            hi ^= rhi
            rows ^= low
        return lo, hi

    def j_map(self, rows: int) -> int:
        """Column set where the rows in ``rows`` sum to the symbol 1."""
        lo, hi = self._fold_rows(rows)
        return lo & ~hi & ((1 << self.n) - 1)

    # -- structural predicates -------------------------------------------

    def is_free(self) -> bool:
        """Every nonempty row-set combination contains the symbol 1."""
        return self._all_combinations(need_one=True)

    def is_effective(self) -> bool:
        """Every nonempty row-set combination contains a symbol in {2, 3}."""
        return self._all_combinations(need_one=False)

    def _all_combinations(self, need_one: bool) -> bool:
        full = (1 << self.n) - 1
        planes = self.row_planes
        lo = hi = 0
        for flip in gray_flips(self.d):
            rlo, rhi = planes[flip]
            lo ^= rlo
            hi ^= rhi
            if need_one:
                if not (lo & ~hi & full):
                    return False
            elif not hi:
                return False
        return True

    def is_distinguished(self) -> bool:
        """Symbol 1 at every (i, i) and a symbol in {2, 3} everywhere else.

        Defined for d <= n; rectangular matrices use positions (i, i) for
        i < d as the diagonal.
        """
        if self.d > self.n:
            raise PreconditionError("distinguished requires d <= n")
        for i, row in enumerate(self.entries):
            for j, v in enumerate(row):
                if i == j:
                    if v != 1:
                        return False
                elif v < 2:
                    return False
        return True

    def is_self_conjugate(self) -> bool:
        """Transpose equals the entry-wise conjugate (square matrices only)."""
        if not self.is_square:
            raise PreconditionError("self-conjugacy requires a square matrix")
        e = self.entries
        return all(
            e[i][j] == conj(e[j][i]) for i in range(self.d) for j in range(i, self.n)
        )

    def principal_submatrix(self, index_mask: int) -> "SMatrix":
        """Rows and columns restricted to the same index set, order kept."""
        if not self.is_square:
            raise PreconditionError("principal submatrix requires a square matrix")
        idx = mask_to_indices(index_mask)
        if not idx:
            raise ValueError("empty index set")
        if idx[-1] >= self.n:
            raise IndexError("index out of range")
        return SMatrix(tuple(tuple(self.entries[i][j] for j in idx) for i in idx))

    def hw_violation(self) -> str | None:
        """None if this is a HW-matrix, else a short reason.

        The three conditions: (i) distinguished, (ii) every full column
        sum is 0, (iii) the J-map is nonempty away from the empty and the
        full row set.  Condition (iii) walks all ``2^n`` row sets.
        """
        if not self.is_square:
            return "not square"
        if not self.is_distinguished():
            return "not distinguished"
        n = self.n
        full = (1 << n) - 1
        planes = self.row_planes
        total_lo = total_hi = 0
        for lo, hi in planes:
            total_lo ^= lo
            total_hi ^= hi
        if total_lo or total_hi:
            bad = next(
                j for j in range(n) if (total_lo >> j) & 1 or (total_hi >> j) & 1
            )
            return f"column {bad} has nonzero sum"
        mask = lo = hi = 0
        for flip in gray_flips(n):
            rlo, rhi = planes[flip]
            lo ^= rlo
            hi ^= rhi
            mask ^= 1 << flip
            if mask != full and not (lo & ~hi & full):
                return f"J-map empty on row set {{{', '.join(map(str, mask_to_indices(mask)))}}}"
        return None

    def is_hw_matrix(self) -> bool:
        return self.hw_violation() is None

    # -- row surgery ------------------------------------------------------

    def drop_row(self, i: int) -> "SMatrix":
        """Remove row ``i``.

        Dropping any row of a HW-matrix leaves a defining (free and
        effective) matrix of the same manifold.
        """
        if not 0 <= i < self.d:
            raise IndexError(f"row index out of range: {i}")
        if self.d == 1:
            raise ValueError("cannot drop the only row")
        return SMatrix(self.entries[:i] + self.entries[i + 1 :])

    def transpose(self) -> "SMatrix":
        return SMatrix(tuple(zip(*self.entries)))


def complete_to_hw(a: SMatrix) -> SMatrix:
    """Append the row forced by the zero-column-sum condition.

    ``a`` must be a distinguished (n-1) x n matrix.  The appended row is
    the symbol sum of the existing rows per column, the unique choice that
    makes every column sum 0.  Raises :class:`CompletionError` if the
    result is not a HW-matrix.
    """
    n = a.n
    if a.d != n - 1:
        raise PreconditionError(f"expected (n-1) x n matrix, got {a.d} x {n}")
    if not a.is_distinguished():
        raise PreconditionError("matrix is not distinguished")
    forced = [0] * n
    for j in range(n):
        s = 0
        for i in range(a.d):
            s = add(s, a.entries[i][j])
        forced[j] = s
    if forced[n - 1] != 1:
        raise CompletionError(
            f"forced diagonal entry is {forced[n - 1]}, not 1 "
            f"(column {n - 1} of the input sums to {forced[n - 1]})"
        )
    m = SMatrix(a.entries + (tuple(forced),))
    reason = m.hw_violation()
    if reason is not None:
        raise CompletionError(f"completion is not a HW-matrix: {reason}")
    return m


# -- text format ----------------------------------------------------------
#
# One row per line, entries as digits 0-3, optional whitespace between
# digits, '#' starts a comment, blank lines separate matrices.


def _parse_lines(text: str):
    blocks: list[list[tuple[int, ...]]] = []
    current: list[tuple[int, ...]] = []
    current_width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if current:
                blocks.append(current)
                current = []
                current_width = None
            continue
        row = []
        for ch in line:
            if ch.isspace():
                continue
            if ch not in "0123":
                raise MatrixParseError(f"invalid character {ch!r}", line=lineno)
            row.append(ord(ch) - ord("0"))
        if current_width is None:
            current_width = len(row)
        elif len(row) != current_width:
            raise MatrixParseError(
                f"row has {len(row)} entries, expected {current_width}", line=lineno
            )
        current.append(tuple(row))
    if current:
        blocks.append(current)
    return blocks


def parse_blocks(text: str) -> list[SMatrix]:
    """Parse a text with any number of blank-line-separated matrices."""
    return [SMatrix(tuple(block)) for block in _parse_lines(text)]


def parse_matrix(text: str) -> SMatrix:
    """Parse a text containing exactly one matrix."""
    blocks = _parse_lines(text)
    if not blocks:
        raise MatrixParseError("no matrix found")
    if len(blocks) > 1:
        raise MatrixParseError(f"expected one matrix, found {len(blocks)}")
    return SMatrix(tuple(blocks[0]))


def format_matrix(m: SMatrix) -> str:
    """Digit text of one matrix; parses back bit-exactly."""
    return "\n".join("".join(str(v) for v in row) for row in m.entries)


def matrix_to_strings(m: SMatrix) -> list[str]:
    """JSON-friendly form: one digit string per row."""
    return ["".join(str(v) for v in row) for row in m.entries]


def matrix_from_strings(rows: list[str]) -> SMatrix:
    return SMatrix(tuple(tuple(int(ch) for ch in row) for row in rows))


# -- random instances ------------------------------------------------------


def random_smatrix(d: int, n: int, rng: random.Random) -> SMatrix:
    return SMatrix(
        tuple(tuple(rng.randrange(4) for _ in range(n)) for _ in range(d))
    )


def random_distinguished(d: int, n: int, rng: random.Random) -> SMatrix:
    """Random distinguished d x n matrix (d <= n)."""
    if d > n:
        raise ValueError("distinguished requires d <= n")
    return SMatrix(
        tuple(
            tuple(1 if i == j else rng.choice((2, 3)) for j in range(n))
            for i in range(d)
        )
    )
