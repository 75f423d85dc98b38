"""The wreath-product action on square symbol matrices and canonical forms.

A group element is a set of columns to conjugate plus a relabeling
permutation; the permutation conjugates the matrix (simultaneous row and
column shuffle) and also moves index sets.  Orbits of this action are
exactly the affine equivalence classes of the encoded manifolds, so two
matrices are compared by reducing each to the minimum of its orbit under
a fixed total order: row-major entry order with ``0 < 1 < 2 < 3``.

``canonical_form`` runs a branch-and-bound search over relabelings.  The
key fact making it exact is that once the first L rows of a candidate are
chosen, its top-left L x L block is fully determined: a column flip only
moves entries in {2, 3}, and the flip choice is forced by the first such
entry from the top, which lies inside the chosen prefix whenever the
prefix contains one at all.  Entries in undetermined columns are bounded
below entry-wise, which keeps the pruning sound for the row-major order.
The plain product enumeration over all ``2^n * n!`` images is kept as the
brute-force oracle.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .salgebra import conj
from .smatrix import SMatrix

__all__ = [
    "GroupElement",
    "identity",
    "compose",
    "inverse",
    "random_element",
    "permute_mask",
    "conjugate_columns",
    "act",
    "act_pair",
    "canonical_form",
    "canonical_form_bruteforce",
    "are_equivalent",
    "orbit",
]


@dataclass(frozen=True)
class GroupElement:
    """Column conjugations (a mask) followed by a relabeling permutation."""

    conj_mask: int
    perm: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.perm)

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm is not a permutation")
        if self.conj_mask >> len(self.perm):
            raise ValueError("conj_mask has bits beyond the degree")


def identity(n: int) -> GroupElement:
    return GroupElement(0, tuple(range(n)))


def permute_mask(perm: tuple[int, ...], mask: int) -> int:
    """Image of an index set under the relabeling ``k -> perm[k]``."""
    out = 0
    while mask:
        low = mask & -mask
        mask ^= low
        out |= 1 << perm[low.bit_length() - 1]
    return out


def _inverse_perm(perm: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for k, v in enumerate(perm):
        inv[v] = k
    return tuple(inv)


def compose(g2: GroupElement, g1: GroupElement) -> GroupElement:
    """The element acting as ``g1`` first, then ``g2``.

    With conjugation masks written in the coordinates the element acts on,
    the law is ``(c2, p2) . (c1, p1) = (c1 ^ p1^-1(c2), p2 o p1)``; the
    action-law test pins this down.
    """
    if g2.n != g1.n:
        raise ValueError("degree mismatch")
    inv1 = _inverse_perm(g1.perm)
    mask = g1.conj_mask ^ permute_mask(inv1, g2.conj_mask)
    perm = tuple(g2.perm[g1.perm[k]] for k in range(g1.n))
    return GroupElement(mask, perm)


def inverse(g: GroupElement) -> GroupElement:
    return GroupElement(permute_mask(g.perm, g.conj_mask), _inverse_perm(g.perm))


def random_element(n: int, rng: random.Random) -> GroupElement:
    perm = list(range(n))
    rng.shuffle(perm)
    return GroupElement(rng.randrange(1 << n), tuple(perm))


def conjugate_columns(m: SMatrix, mask: int) -> SMatrix:
    if mask >> m.n:
        raise ValueError("mask has bits beyond the number of columns")
    return SMatrix(
        tuple(
            tuple(conj(v) if (mask >> j) & 1 else v for j, v in enumerate(row))
            for row in m.entries
        )
    )


def act(g: GroupElement, m: SMatrix) -> SMatrix:
    """Conjugate the columns in ``g.conj_mask``, then relabel indices.

    Entry (i, j) of the conjugated matrix lands at (perm[i], perm[j]).
    """
    if not m.is_square or m.n != g.n:
        raise ValueError(f"expected a square matrix of degree {g.n}")
    cmask = g.conj_mask
    perm = g.perm
    out = [[0] * m.n for _ in range(m.n)]
    for i, row in enumerate(m.entries):
        target = out[perm[i]]
        for j, v in enumerate(row):
            target[perm[j]] = conj(v) if (cmask >> j) & 1 else v
    return SMatrix(tuple(tuple(row) for row in out))


def act_pair(g: GroupElement, m: SMatrix, s_mask: int) -> tuple[SMatrix, int]:
    """Act on a (matrix, index set) pair; conjugations do not move the set."""
    return act(g, m), permute_mask(g.perm, s_mask)


# -- canonical forms -------------------------------------------------------

# Entry-wise minimum over the two conjugation choices.
_MINV = (0, 1, 2, 2)


def _min_conj_rows(rows: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    """Best column flips for a fixed row/column order.

    Per column the flip is chosen to minimize the column read top to
    bottom; choices for different columns are independent, so this is the
    lexicographic row-major minimum over all flips.
    """
    n = len(rows)
    flipped_cols = []
    for j in range(n):
        flip = False
        for i in range(n):
            v = rows[i][j]
            if v >= 2:
                flip = v == 3
                break
        flipped_cols.append(flip)
    return tuple(
        tuple(conj(v) if flipped_cols[j] else v for j, v in enumerate(row))
        for row in rows
    )


def canonical_form_bruteforce(m: SMatrix) -> SMatrix:
    """Orbit minimum by enumerating all relabelings; the oracle path."""
    if not m.is_square:
        raise ValueError("canonical form requires a square matrix")
    e = m.entries
    n = m.n
    best = None
    for p in itertools.permutations(range(n)):
        cand = _min_conj_rows(tuple(tuple(e[p[i]][p[j]] for j in range(n)) for i in range(n)))
        if best is None or cand < best:
            best = cand
    return SMatrix(best)


def canonical_form(m: SMatrix) -> SMatrix:
    """Minimum of the orbit of ``m`` in row-major entry order.

    Branch-and-bound over the choice of which original index lands at
    each position.  Equals :func:`canonical_form_bruteforce` on every
    input; idempotent and constant on orbits.
    """
    if not m.is_square:
        raise ValueError("canonical form requires a square matrix")
    e = m.entries
    n = m.n
    best = list(_min_conj_rows(e))  # identity relabeling seeds the incumbent

    minv_rows = tuple(tuple(_MINV[v] for v in row) for row in e)

    def dfs(prefix: list[int], remaining: list[int]):
        nonlocal best
        L = len(prefix)
        if L == n:
            cand = _min_conj_rows(
                tuple(tuple(e[prefix[i]][prefix[j]] for j in range(n)) for i in range(n))
            )
            cand_rows = list(cand)
            if cand_rows < best:
                best = cand_rows
            return
        if L:
            # Exact top-left L x L block: per determined column the flip is
            # forced by its first {2,3} entry (inside the prefix if any).
            block_cols = []
            for j in range(L):
                col = [e[prefix[i]][prefix[j]] for i in range(L)]
                flip = False
                for v in col:
                    if v >= 2:
                        flip = v == 3
                        break
                block_cols.append([conj(v) if flip else v for v in col])
            # Bound rows: exact block + entry-wise minima on open columns.
            for i in range(L):
                tail_min = min(minv_rows[prefix[i]][q] for q in remaining)
                bound_row = tuple(block_cols[j][i] for j in range(L)) + (tail_min,) * (
                    n - L
                )
                bi = best[i]
                if bound_row > bi:
                    return
                if bound_row < bi:
                    break
        for idx, q in enumerate(remaining):
            rest = remaining[:idx] + remaining[idx + 1 :]
            prefix.append(q)
            dfs(prefix, rest)
            prefix.pop()

    dfs([], list(range(n)))
    return SMatrix(tuple(best))


def are_equivalent(m1: SMatrix, m2: SMatrix) -> bool:
    """Same orbit under the action, decided by comparing canonical forms."""
    if not (m1.is_square and m2.is_square) or m1.n != m2.n:
        raise ValueError("equivalence requires square matrices of equal degree")
    return canonical_form(m1) == canonical_form(m2)


def orbit(m: SMatrix) -> frozenset[SMatrix]:
    """The full orbit, materialized; meant for small degrees only."""
    if not m.is_square:
        raise ValueError("orbit requires a square matrix")
    n = m.n
    seen = set()
    for p in itertools.permutations(range(n)):
        base = tuple(tuple(m.entries[p[i]][p[j]] for j in range(n)) for i in range(n))
        for cmask in range(1 << n):
            seen.add(
                tuple(
                    tuple(
                        conj(v) if (cmask >> j) & 1 else v for j, v in enumerate(row)
                    )
                    for row in base
                )
            )
    return frozenset(SMatrix(rows) for rows in seen)
