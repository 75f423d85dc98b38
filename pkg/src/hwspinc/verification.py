"""Machine verification of the impossibility lemmas, and standard forms.

``verify_lemma`` runs one named check over its full search space (or a
seeded random sample where the statement is an identity over a large
family) and reports PASS with statistics or FAIL with an explicit
counterexample.  A FAIL is always an implementation bug somewhere: these
are proved statements, and the point of the runners is to keep the code
honest against them.

The standard-form half turns a spin-c pair into a normalized certificate
(support moved to a prefix, first row all 2s, self-conjugate diagonal
blocks split by row sums, all-2 cross block) by following the
constructive normalization step by step, and re-checks every promised
invariant on the result.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations

from . import quadforms as qf
from .action import GroupElement, act_pair, compose, identity, permute_mask
from .enumeration import classify_hw
from .salgebra import add, conj, scalar_mul
from .smatrix import (
    PreconditionError,
    SMatrix,
    indices_to_mask,
    mask_to_indices,
    matrix_to_strings,
    random_distinguished,
)
from .spinc import binom2_parity, find_spinc_set, is_spinc_set, spinc_condition_table

__all__ = [
    "LEMMA_IDS",
    "VerificationResult",
    "verify_lemma",
    "DEFAULT_SEED",
    "DEFAULT_BUDGET",
    "CertError",
    "StandardFormCert",
    "to_standard_form",
    "forced_row_form",
]

DEFAULT_SEED = 20240901
DEFAULT_BUDGET = 10_000


# ---------------------------------------------------------------------------
# standard forms of spin-c pairs
# ---------------------------------------------------------------------------


class CertError(ValueError):
    """A standard-form certificate failed one of its invariants."""


@dataclass(frozen=True)
class StandardFormCert:
    """Normalized spin-c pair with its block data.

    ``matrix``/``support`` are the transformed pair, ``g`` the group
    element that produced them from the input pair.  ``k`` and ``l`` are
    the diagonal block sizes splitting the support by row sum, ``r`` the
    residual size; ``k >= l`` and ``k + l = |support|``.
    """

    g: GroupElement
    matrix: SMatrix
    support: int
    k: int
    l: int
    r: int

    def check(self, original: SMatrix, original_set: int) -> None:
        """Re-verify every invariant; raises :class:`CertError`."""
        m, s = self.matrix, self.support
        n = m.n
        k, l = self.k, self.l
        if k + l != s.bit_count() or self.r != n - k - l:
            raise CertError("block sizes do not add up")
        if k < l:
            raise CertError(f"blocks out of order: k={k} < l={l}")
        got = act_pair(self.g, original, original_set)
        if got != (m, s):
            raise CertError("certificate element does not map the input pair")
        if s != (1 << (k + l)) - 1:
            raise CertError("support is not a prefix")
        if not m.is_distinguished():
            raise CertError("matrix is not distinguished")
        if any(v != 2 for v in m.entries[0][1:]):
            raise CertError("first row is not all 2 off the diagonal")
        for i in range(k):
            for j in range(i, k):
                if m.entries[i][j] != conj(m.entries[j][i]):
                    raise CertError(f"upper block not self-conjugate at ({i}, {j})")
        for i in range(k, k + l):
            for j in range(i, k + l):
                if m.entries[i][j] != conj(m.entries[j][i]):
                    raise CertError(f"lower block not self-conjugate at ({i}, {j})")
        for i in range(k):
            for j in range(k, k + l):
                if m.entries[i][j] != 2 or m.entries[j][i] != 2:
                    raise CertError(f"cross block entry at ({i}, {j}) is not 2")
        sums = [m.row_sum(i, s) for i in range(k + l)]
        if any(v != sums[0] for v in sums[:k]):
            raise CertError("upper block row sums differ")
        if l:
            if any(v != sums[k] for v in sums[k:]):
                raise CertError("lower block row sums differ")
            if sums[0] == sums[k]:
                raise CertError("the two blocks have equal row sums")
        if not is_spinc_set(m, s, "all"):
            raise CertError("transformed set is not a spin-c set")


def _sort_perm(order: list[int]) -> tuple[int, ...]:
    """Permutation sending old index order[t] to new position t."""
    perm = [0] * len(order)
    for new, old in enumerate(order):
        perm[old] = new
    return tuple(perm)


def to_standard_form(m: SMatrix, s_mask: int) -> StandardFormCert:
    """Normalize a spin-c pair to standard form.

    Preconditions: ``m`` distinguished and square, ``s_mask`` a spin-c
    set for it, and the J-map nonempty on every 3-element subset of the
    support.  The three normalization moves: (1) relabel the support to a
    prefix and flip columns until row 0 is all 2s, (2) flip column 0 if
    needed so that at least half the support rows share row 0's
    support-restricted row sum, (3) relabel the support so equal-sum rows
    form the leading block.
    """
    n = m.n
    if not m.is_square:
        raise PreconditionError("standard form requires a square matrix")
    if not m.is_distinguished():
        raise PreconditionError("matrix is not distinguished")
    if not is_spinc_set(m, s_mask, "all"):
        raise PreconditionError("the given set is not a spin-c set for the matrix")
    support = mask_to_indices(s_mask)
    for triple in combinations(support, 3):
        if m.j_map(indices_to_mask(triple)) == 0:
            raise PreconditionError(
                f"J-map vanishes on the support triple {list(triple)}"
            )
    ns = len(support)

    # (1) support to the front, then make row 0 all 2s by column flips.
    order = list(support) + [i for i in range(n) if not (s_mask >> i) & 1]
    g = GroupElement(0, _sort_perm(order))
    cur, cur_s = act_pair(g, m, s_mask)
    flips = indices_to_mask(j for j in range(1, n) if cur.entries[0][j] == 3)
    step = GroupElement(flips, tuple(range(n)))
    g = compose(step, g)
    cur, cur_s = act_pair(step, cur, cur_s)

    # (2) split the support rows by their support-restricted row sum;
    # flip column 0 if row 0's group would be the minority.
    sums = [cur.row_sum(i, cur_s) for i in range(ns)]
    share = sum(1 for v in sums if v == sums[0])
    if 2 * share < ns:
        step = GroupElement(1, tuple(range(n)))
        g = compose(step, g)
        cur, cur_s = act_pair(step, cur, cur_s)
        sums = [cur.row_sum(i, cur_s) for i in range(ns)]

    # (3) stable relabeling inside the support: rows matching row 0 first.
    matching = [i for i in range(ns) if sums[i] == sums[0]]
    rest = [i for i in range(ns) if sums[i] != sums[0]]
    order = matching + rest + list(range(ns, n))
    step = GroupElement(0, _sort_perm(order))
    g = compose(step, g)
    cur, cur_s = act_pair(step, cur, cur_s)

    cert = StandardFormCert(
        g=g,
        matrix=cur,
        support=cur_s,
        k=len(matching),
        l=len(rest),
        r=n - ns,
    )
    cert.check(m, s_mask)
    return cert


def forced_row_form(cert: StandardFormCert, row: int) -> int:
    """The symbol forced for residual row ``row`` against the support.

    Row ``row`` (with ``k + l <= row < n``) of a standard-form matrix
    must look like ``a`` on the first k columns and ``conj(a)`` on the
    next l, where ``a`` in {2, 3} solves
    ``k*a + l*conj(a) + (k - l - 1)*2 = a``.  Returns the admissible
    ``a`` (preferring the one realized in the matrix when both symbols
    solve the equation); raises :class:`CertError` if no symbol does.
    """
    k, l, n = cert.k, cert.l, cert.matrix.n
    if not k + l <= row < n:
        raise IndexError(f"row {row} is not in the residual block")
    const = scalar_mul(k - l - 1, 2)
    candidates = [
        a
        for a in (2, 3)
        if add(add(scalar_mul(k, a), scalar_mul(l, conj(a))), const) == a
    ]
    if not candidates:
        raise CertError(
            f"no admissible symbol for residual rows (k={k}, l={l}): "
            "inconsistent certificate"
        )
    actual = cert.matrix.entries[row][0] if k else None
    if actual in candidates:
        return actual
    return candidates[0]


# ---------------------------------------------------------------------------
# lemma verification
# ---------------------------------------------------------------------------

LEMMA_IDS = (
    "not-existence",
    "jmap",
    "column-sums",
    "jmap-hw",
    "almost-spinc",
    "spinc-pair-n",
    "spinc-pair-n1",
    "spinc-pair-n2",
    "main",
)


@dataclass
class VerificationResult:
    """Outcome of one lemma run; serializes with a stable field order."""

    lemma: str
    n: int
    passed: bool
    cases: int
    space: int | None = None
    counterexample: dict | None = None
    seed: int | None = None
    budget: int | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "n": self.n,
            "passed": self.passed,
            "cases": self.cases,
            "space": self.space,
            "counterexample": self.counterexample,
            "seed": self.seed,
            "budget": self.budget,
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _self_conjugate_candidates(n: int):
    """Distinguished self-conjugate matrices with first row 1 2 2 ... 2.

    Free entries are the strictly-upper off-diagonal positions outside
    row 0; the lower triangle is forced by self-conjugacy.  Yields every
    candidate; the space has 2^((n-1)(n-2)/2) elements.
    """
    pairs = [(i, j) for i in range(1, n) for j in range(i + 1, n)]
    for bits in range(1 << len(pairs)):
        rows = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for i in range(1, n):
            rows[i][0] = 3
        for t, (i, j) in enumerate(pairs):
            v = 3 if (bits >> t) & 1 else 2
            rows[i][j] = v
            rows[j][i] = conj(v)
        yield SMatrix(tuple(tuple(r) for r in rows))


def _odd_submatrix_with_unit_column(m: SMatrix) -> bool:
    """Does every odd principal submatrix have a column summing to 1?"""
    n = m.n
    for mask in range(1, 1 << n):
        if mask.bit_count() % 2 == 0:
            continue
        if all(m.col_sum(j, mask) != 1 for j in mask_to_indices(mask)):
            return False
    return True


def _verify_not_existence(n: int, budget, rng) -> VerificationResult:
    """No distinguished self-conjugate matrix with all-2 first row has
    every column summing to 1 while every odd principal submatrix keeps a
    column summing to 1."""
    if n < 2:
        raise ValueError("statement concerns degree > 1")
    space = 1 << ((n - 1) * (n - 2) // 2)
    cases = 0
    for m in _self_conjugate_candidates(n):
        cases += 1
        if any(m.col_sum(j) != 1 for j in range(n)):
            continue
        if _odd_submatrix_with_unit_column(m):
            return VerificationResult(
                "not-existence", n, False, cases, space,
                counterexample={"matrix": matrix_to_strings(m)},
            )
    return VerificationResult("not-existence", n, True, cases, space)


def _ref_j_map(m: SMatrix, u_mask: int) -> int:
    """Column-sum definition of the J-map, kept independent of the
    plane-XOR kernel on purpose."""
    out = 0
    for j in range(m.n):
        s = 0
        for i in mask_to_indices(u_mask):
            s = add(s, m.entries[i][j])
        if s == 1:
            out |= 1 << j
    return out


def _verify_jmap(n: int, budget: int, rng: random.Random) -> VerificationResult:
    """The seven J-map identities on random distinguished square matrices."""
    cases = 0
    for _ in range(budget):
        m = random_distinguished(n, n, rng)
        u = rng.randrange(1 << n)
        s_mask = rng.randrange(1 << n)
        cases += 1
        bad = _jmap_statement_violation(m, u, s_mask)
        if bad is not None:
            return VerificationResult(
                "jmap", n, False, cases, None,
                counterexample={
                    "matrix": matrix_to_strings(m),
                    "rows": list(mask_to_indices(u)),
                    "set": list(mask_to_indices(s_mask)),
                    "statement": bad,
                },
                seed=None, budget=budget,
            )
    return VerificationResult("jmap", n, True, cases, None, budget=budget)


def _jmap_statement_violation(m: SMatrix, u: int, s_mask: int) -> str | None:
    """Check statements (1)-(7) for one (matrix, row set, column set)."""
    n = m.n
    jm = m.j_map(u)
    if jm != _ref_j_map(m, u):
        return "kernel disagrees with column-sum definition"
    size = u.bit_count()
    odd = size & 1
    if size == 1 and jm != u:
        return "(1) J on a singleton"
    if odd and jm & ~u:
        return "(2) J of an odd set not inside it"
    if not odd and jm & u:
        return "(3) J of an even set meets it"
    entry_sum = 0
    idx = mask_to_indices(u)
    for i in idx:
        for j in idx:
            entry_sum = add(entry_sum, m.entries[i][j])
    row_sum_total = 0
    row_sum_s = 0
    for i in idx:
        row_sum_total = add(row_sum_total, m.row_sum(i))
        row_sum_s = add(row_sum_s, m.row_sum(i, s_mask))
    if odd:
        if entry_sum != jm.bit_count() & 1:
            return "(4) parity of |J(U)| for odd U"
    else:
        if add(entry_sum, row_sum_total) != jm.bit_count() & 1:
            return "(5) parity of |J(U)| for even U"
    comb = m.row_combination(u)
    masked = 0
    for j in idx:
        if (s_mask >> j) & 1:
            masked = add(masked, comb[j])
    if odd:
        if masked != (jm & s_mask).bit_count() & 1:
            return "(6) parity of |J(U) S| for odd U"
    else:
        if add(masked, row_sum_s) != (jm & s_mask).bit_count() & 1:
            return "(7) parity of |J(U) S| for even U"
    return None


def _column_sums_ok(m: SMatrix) -> tuple[bool, int | None]:
    """Column sums of a distinguished k x n matrix against the parity table:
    in-diagonal-range columns sum to {2,3} for even k and {0,1} for odd k,
    the rest the other way around."""
    k = m.d
    for j in range(m.n):
        v = m.col_sum(j)
        flip = (j < k) == (k % 2 == 0)
        if flip and v not in (2, 3):
            return False, j
        if not flip and v not in (0, 1):
            return False, j
    return True, None


def _verify_column_sums(n: int, budget: int, rng: random.Random) -> VerificationResult:
    """Exhaustive over small distinguished k x n shapes, randomized beyond."""
    cases = 0
    space = 0
    for k in range(1, min(n, 4) + 1):
        free = k * (n - 1)
        if free <= 16:
            space += 1 << free
            positions = [(i, j) for i in range(k) for j in range(n) if i != j]
            for bits in range(1 << len(positions)):
                rows = [[1 if i == j else 2 for j in range(n)] for i in range(k)]
                for t, (i, j) in enumerate(positions):
                    if (bits >> t) & 1:
                        rows[i][j] = 3
                m = SMatrix(tuple(tuple(r) for r in rows))
                cases += 1
                ok, bad = _column_sums_ok(m)
                if not ok:
                    return VerificationResult(
                        "column-sums", n, False, cases, space,
                        counterexample={"matrix": matrix_to_strings(m), "column": bad},
                    )
    for _ in range(budget):
        k = rng.randrange(1, n + 1)
        m = random_distinguished(k, n, rng)
        cases += 1
        ok, bad = _column_sums_ok(m)
        if not ok:
            return VerificationResult(
                "column-sums", n, False, cases, space,
                counterexample={"matrix": matrix_to_strings(m), "column": bad},
                budget=budget,
            )
    return VerificationResult("column-sums", n, True, cases, space, budget=budget)


def _hw_corpus(n: int) -> list[SMatrix]:
    return list(classify_hw(n).representatives)


def _verify_jmap_for_hw(n: int, budget, rng) -> VerificationResult:
    """On HW-matrices: J kills the full set only, and is complement-blind."""
    cases = 0
    reps = _hw_corpus(n)
    full = (1 << n) - 1
    for m in reps:
        if m.j_map(full) != 0:
            return VerificationResult(
                "jmap-hw", n, False, cases, None,
                counterexample={"matrix": matrix_to_strings(m), "rows": "full"},
            )
        for u in range(1 << n):
            cases += 1
            jm = m.j_map(u)
            if u not in (0, full) and jm == 0:
                return VerificationResult(
                    "jmap-hw", n, False, cases, None,
                    counterexample={
                        "matrix": matrix_to_strings(m),
                        "rows": list(mask_to_indices(u)),
                    },
                )
            if jm != m.j_map(full ^ u):
                return VerificationResult(
                    "jmap-hw", n, False, cases, None,
                    counterexample={
                        "matrix": matrix_to_strings(m),
                        "rows": list(mask_to_indices(u)),
                        "statement": "J(U) != J(complement)",
                    },
                )
    return VerificationResult(
        "jmap-hw", n, True, cases, None, details={"classes": len(reps)}
    )


def _verify_almost_spinc(n: int, budget, rng) -> VerificationResult:
    """Sets passing the last-index-free scope have size parity (n-1)/2 and
    pass the full scope, on every HW class of the degree."""
    cases = 0
    reps = _hw_corpus(n)
    want = ((n - 1) // 2) & 1
    for m in reps:
        for s in range(1 << n):
            cases += 1
            if not is_spinc_set(m, s, "omit-last"):
                continue
            if s.bit_count() & 1 != want or not is_spinc_set(m, s, "all"):
                return VerificationResult(
                    "almost-spinc", n, False, cases, None,
                    counterexample={
                        "matrix": matrix_to_strings(m),
                        "set": list(mask_to_indices(s)),
                    },
                )
    return VerificationResult(
        "almost-spinc", n, True, cases, None, details={"classes": len(reps)}
    )


def _verify_spinc_pair_size(n: int, size: int, lemma: str) -> VerificationResult:
    """No spin-c set of the stated size exists for any HW class."""
    cases = 0
    reps = _hw_corpus(n)
    for m in reps:
        table = spinc_condition_table(m, "all")
        for idx in combinations(range(n), size):
            s = indices_to_mask(idx)
            cases += 1
            if all((t & s).bit_count() & 1 == p for t, p in table):
                return VerificationResult(
                    lemma, n, False, cases, None,
                    counterexample={
                        "matrix": matrix_to_strings(m),
                        "set": list(idx),
                    },
                )
    return VerificationResult(
        lemma, n, True, cases, None, details={"classes": len(reps)}
    )


def _verify_main(n: int, budget, rng) -> VerificationResult:
    """No HW class of the degree admits any spin-c set."""
    cases = 0
    reps = _hw_corpus(n)
    for m in reps:
        cases += 1
        s = find_spinc_set(m)
        if s is not None:
            return VerificationResult(
                "main", n, False, cases, None,
                counterexample={
                    "matrix": matrix_to_strings(m),
                    "set": list(mask_to_indices(s)),
                },
            )
    return VerificationResult(
        "main", n, True, cases, None, details={"classes": len(reps)}
    )


def verify_lemma(
    lemma: str,
    n: int,
    budget: int | None = None,
    seed: int | None = None,
) -> VerificationResult:
    """Run one named verification at degree ``n``.

    ``budget`` bounds the number of random cases for the randomized
    checks; exhaustive checks ignore it.  ``seed`` defaults to a fixed
    value so runs are reproducible.
    """
    if lemma not in LEMMA_IDS:
        raise ValueError(f"unknown lemma id: {lemma!r} (known: {', '.join(LEMMA_IDS)})")
    rng = random.Random(DEFAULT_SEED if seed is None else seed)
    budget = DEFAULT_BUDGET if budget is None else budget
    odd_needed = lemma in (
        "jmap-hw", "almost-spinc", "spinc-pair-n", "spinc-pair-n1",
        "spinc-pair-n2", "main",
    )
    if odd_needed and (n < 3 or n % 2 == 0):
        raise ValueError(f"{lemma} concerns odd degrees >= 3, got {n}")
    if n < 5 and lemma in ("spinc-pair-n", "spinc-pair-n1", "spinc-pair-n2", "main"):
        raise ValueError(f"{lemma} is a statement about degrees >= 5, got {n}")
    if lemma == "not-existence":
        result = _verify_not_existence(n, budget, rng)
    elif lemma == "jmap":
        result = _verify_jmap(n, budget, rng)
    elif lemma == "column-sums":
        result = _verify_column_sums(n, budget, rng)
    elif lemma == "jmap-hw":
        result = _verify_jmap_for_hw(n, budget, rng)
    elif lemma == "almost-spinc":
        result = _verify_almost_spinc(n, budget, rng)
    elif lemma == "spinc-pair-n":
        result = _verify_spinc_pair_size(n, n, lemma)
    elif lemma == "spinc-pair-n1":
        result = _verify_spinc_pair_size(n, n - 1, lemma)
    elif lemma == "spinc-pair-n2":
        result = _verify_spinc_pair_size(n, n - 2, lemma)
    else:
        result = _verify_main(n, budget, rng)
    result.seed = DEFAULT_SEED if seed is None else seed
    return result
