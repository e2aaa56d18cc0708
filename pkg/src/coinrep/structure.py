"""Recovering C from D and recognising Hilbert-cube pairs.

Indices in docstrings are 1-based to match the usual d_1 < d_2 < ... labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .cube import CubeGenerators, PreconditionError, cube_parts, is_half_nondegenerate
from .genfun import criterion_eq1
from .sets import IntegerSet, Variant, _as_set, rep_function, rep_sumset

__all__ = [
    "ConditionReport",
    "TheoremHypothesisError",
    "check_conditions",
    "decompose",
    "solve_coinciding",
    "Classification",
    "classify_pair",
    "SolverDiagnostics",
    "frontier_diagnostics",
    "CLASSIFY_LIMIT",
]

CLASSIFY_LIMIT = 16


class TheoremHypothesisError(ValueError):
    """D passes the size conditions but is not the odd part it should be."""

    def __init__(self, message: str, witness: int):
        super().__init__(message)
        self.witness = witness


def _log2_exact(n: int) -> int | None:
    if n >= 1 and n & (n - 1) == 0:
        return n.bit_length() - 1
    return None


@dataclass(frozen=True)
class ConditionReport:
    ok: bool
    # (k, "gap" | "sum") for the first failing inequality
    violation: tuple[int, str] | None
    # sum family checked only for k = 2..n-1
    narrow_ok: bool

    def __bool__(self) -> bool:
        return self.ok

    @property
    def narrow_only(self) -> bool:
        """Passes the k <= n-1 sum family but fails at k = n."""
        return self.narrow_ok and not self.ok


def check_conditions(D) -> ConditionReport:
    """Gap d_{2^k+1} >= 4 d_{2^k} (k < n) and sum d_{2^k} <= d_1 + d_2 + d_3 + d_5 + ... + d_{2^(k-1)+1} (2 <= k <= n)."""
    D = _as_set(D)
    n = _log2_exact(len(D))
    if n is None:
        raise ValueError(f"|D| = {len(D)} is not a power of two")
    if D.min_element < 1:
        raise ValueError("elements of D must be positive")

    def d(i: int) -> int:
        return D[i - 1]

    gap_fail = [k for k in range(n) if d(2**k + 1) < 4 * d(2**k)]
    sum_fail = []
    for k in range(2, n + 1):
        rhs = d(1) + sum(d(2**i + 1) for i in range(k))
        if d(2**k) > rhs:
            sum_fail.append(k)

    violation = None
    if gap_fail:
        violation = (gap_fail[0], "gap")
    elif sum_fail:
        violation = (sum_fail[0], "sum")
    narrow_ok = not gap_fail and all(k == n for k in sum_fail)
    return ConditionReport(violation is None, violation, narrow_ok)


def decompose(D) -> tuple[CubeGenerators, IntegerSet]:
    """Generators (d_1, d_2, d_3, d_5, ..., d_{2^(n-1)+1}) and C = H0 of them."""
    D = _as_set(D)
    report = check_conditions(D)
    if not report:
        raise PreconditionError(f"D fails condition {report.violation}")
    n = _log2_exact(len(D))
    gens = CubeGenerators([D[0]] + [D[2**i] for i in range(n)])
    C, H1 = cube_parts(gens)
    if H1 != D:
        extra = sorted((set(D) - set(H1)) | (set(H1) - set(D)))
        witness = extra[0]
        raise TheoremHypothesisError(
            f"D is not H1{tuple(gens)}: {witness} is in exactly one of them", witness
        )
    return gens, C


def solve_coinciding(D, max_solutions: int = 16, n_max: int | None = None) -> list[IntegerSet]:
    """Every C with 0 in C, |C| = |D|, max(C) <= n_max and R_C = R_D on [0, n_max].

    Forced extension: with the partial C fixed, the smallest n whose count is
    still too low must be realised by a new element y paired with some c
    already in C, so the candidates are n - c for c in C with n - c > max(C).
    Branches that overshoot the target anywhere are cut.
    """
    D = _as_set(D)
    if not D:
        raise ValueError("D must be non-empty")
    if D.min_element < 1:
        raise ValueError("elements of D must be positive")
    if n_max is None:
        n_max = 2 * D.max_element
    if n_max < 2 * D.max_element:
        raise ValueError(f"n_max must be at least 2*max(D) = {2 * D.max_element}")

    target = rep_function(D, 2, Variant.STRICT, n_max).counts
    k = len(D)
    C = [0]
    prof = [0] * (n_max + 1)
    solutions: list[IntegerSet] = []

    def first_gap(start: int) -> int | None:
        for n in range(start, n_max + 1):
            if prof[n] != target[n]:
                return n
        return None

    def add(y: int) -> bool:
        fine = True
        for c in C:
            s = c + y
            if s <= n_max:
                prof[s] += 1
                if prof[s] > target[s]:
                    fine = False
        C.append(y)
        return fine

    def remove() -> None:
        y = C.pop()
        for c in C:
            if c + y <= n_max:
                prof[c + y] -= 1

    def dfs(start: int) -> None:
        if len(solutions) >= max_solutions:
            return
        n = first_gap(start)
        if n is None:
            if len(C) == k:
                solutions.append(IntegerSet(C))
            return
        if prof[n] > target[n] or len(C) == k:
            return
        top = C[-1]
        for y in sorted({n - c for c in C if n - c > top}):
            if add(y):
                dfs(n)
            remove()

    dfs(0)
    return sorted(set(solutions))


@dataclass(frozen=True)
class Classification:
    kind: str  # "hilbert_pair" | "non_hilbert" | "not_attempted"
    generators: tuple[int, ...] | None = None

    @property
    def is_hilbert(self) -> bool:
        return self.kind == "hilbert_pair"

    def to_json(self):
        if self.kind == "hilbert_pair":
            return {"generators": list(self.generators)}
        return self.kind

    @classmethod
    def from_json(cls, obj) -> "Classification":
        if isinstance(obj, dict):
            return cls("hilbert_pair", tuple(obj["generators"]))
        return cls(str(obj))


def _parts(gens: tuple[int, ...]) -> tuple[list[int], list[int]]:
    even, odd = [0], []
    for g in gens:
        even, odd = even + [x + g for x in odd], odd + [x + g for x in even]
    return even, odd


def classify_pair(C, D) -> Classification:
    """hilbert_pair with generators from D, non_hilbert, or not_attempted (|C| > 16).

    Candidate generator sets are the subsets of D of size log2(2|C|). The
    smallest two elements of an odd part are always its two smallest
    generators, so only subsets containing d_1 and d_2 can match.
    """
    C, D = _as_set(C), _as_set(D)
    if C == D:
        raise ValueError("C and D must differ")
    if 0 not in C:
        raise ValueError("0 must belong to C")
    if not criterion_eq1(C, D):
        raise ValueError("R_C and R_D differ; only coinciding pairs can be classified")
    size = len(C)
    if size > CLASSIFY_LIMIT:
        return Classification("not_attempted")
    l = _log2_exact(size)
    if l is None or len(D) != size:
        return Classification("non_hilbert")
    t = l + 1
    target_even = sorted(C)
    target_odd = sorted(D)
    if t == 1:
        pools = [((D[0],),)]
    else:
        pools = [((D[0], D[1]) + rest for rest in combinations(D[2:], t - 2))]
    for gens in pools[0]:
        even, odd = _parts(gens)
        if sorted(even) == target_even and sorted(odd) == target_odd:
            if is_half_nondegenerate(gens):
                return Classification("hilbert_pair", tuple(gens))
    return Classification("non_hilbert")


@dataclass(frozen=True)
class SolverDiagnostics:
    """First frontier discrepancies; None stands for +infinity."""

    p: int | None
    q: int | None
    t: int | None
    s: int | None


def _first(a, b, cmp) -> int | None:
    for n in range(len(a)):
        if cmp(a[n], b[n]):
            return n
    return None


def frontier_diagnostics(C1, C2n, D1, D2n) -> SolverDiagnostics:
    """p, q on C1 + C2n vs D1 + D2n (sumset counts), t, s on R_{C2n} vs R_{D2n}.

    p is the first n where the C side has more representations, q the first
    where it has fewer; t and s are the same for the pair functions.
    """
    C1, C2n, D1, D2n = map(_as_set, (C1, C2n, D1, D2n))
    tops = [x.max_element for x in (C1, C2n, D1, D2n) if x]
    top = 2 * max(tops) if tops else 0
    cross_c = rep_sumset(C1, C2n, top).counts
    cross_d = rep_sumset(D1, D2n, top).counts
    own_c = rep_function(C2n, 2, Variant.STRICT, top).counts
    own_d = rep_function(D2n, 2, Variant.STRICT, top).counts
    gt = lambda x, y: x > y  # noqa: E731
    lt = lambda x, y: x < y  # noqa: E731
    return SolverDiagnostics(
        p=_first(cross_c, cross_d, gt),
        q=_first(cross_c, cross_d, lt),
        t=_first(own_c, own_d, gt),
        s=_first(own_c, own_d, lt),
    )
