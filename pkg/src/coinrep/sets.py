"""Finite integer sets, sumsets and additive representation functions.

Three counting variants are supported for h-fold sums from a set A:

    ordered         every h-tuple (a_1, ..., a_h) with a_1 + ... + a_h = n
    non-decreasing  tuples with a_1 <= ... <= a_h (multisets)
    strict          tuples with a_1 < ... < a_h (distinct terms)

R_A(n) in the rest of the package always means the strict h = 2 variant.
Profiles are dense over [0, n_max]; nothing here is lazy or infinite.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "IntegerSet",
    "Variant",
    "RepProfile",
    "rep_function",
    "sumset",
    "translate",
    "dilate_naturals",
    "rep_sumset",
    "first_mismatch",
    "eventual_coincidence_scan",
    "parse_set",
]


class IntegerSet:
    """Immutable finite set of nonnegative integers kept in increasing order."""

    __slots__ = ("_elements", "_members")

    def __init__(self, elements: Iterable[int] = ()):
        values = []
        for e in elements:
            if isinstance(e, bool) or int(e) != e:
                raise ValueError(f"set elements must be integers, got {e!r}")
            e = int(e)
            if e < 0:
                raise ValueError(f"set elements must be nonnegative, got {e}")
            values.append(e)
        members = frozenset(values)
        self._elements = tuple(sorted(members))
        self._members = members

    @classmethod
    def from_mask(cls, mask: int) -> "IntegerSet":
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        return cls(out)

    @property
    def elements(self) -> tuple[int, ...]:
        return self._elements

    @property
    def max_element(self) -> int | None:
        return self._elements[-1] if self._elements else None

    @property
    def min_element(self) -> int | None:
        return self._elements[0] if self._elements else None

    def to_mask(self) -> int:
        mask = 0
        for e in self._elements:
            mask |= 1 << e
        return mask

    def restrict(self, bound: int) -> "IntegerSet":
        """Elements <= bound."""
        return IntegerSet(self._elements[: bisect.bisect_right(self._elements, bound)])

    def __iter__(self) -> Iterator[int]:
        return iter(self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    def __contains__(self, x: object) -> bool:
        return x in self._members

    def __getitem__(self, i):
        return self._elements[i]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntegerSet):
            return self._elements == other._elements
        return NotImplemented

    def __lt__(self, other: "IntegerSet") -> bool:
        return self._elements < other._elements

    def __hash__(self) -> int:
        return hash(self._elements)

    def __or__(self, other: "IntegerSet") -> "IntegerSet":
        return IntegerSet(self._members | other._members)

    def __and__(self, other: "IntegerSet") -> "IntegerSet":
        return IntegerSet(self._members & other._members)

    def __sub__(self, other: "IntegerSet") -> "IntegerSet":
        return IntegerSet(self._members - other._members)

    def __repr__(self) -> str:
        return f"IntegerSet({{{', '.join(map(str, self._elements))}}})"

    def to_list(self) -> list[int]:
        return list(self._elements)


def _as_set(A) -> IntegerSet:
    return A if isinstance(A, IntegerSet) else IntegerSet(A)


class Variant(str, Enum):
    ORDERED = "ordered"
    NONDECREASING = "non-decreasing"
    STRICT = "strict"


@dataclass(frozen=True)
class RepProfile:
    h: int
    variant: Variant
    n_max: int
    counts: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        if 0 <= n <= self.n_max:
            return self.counts[n]
        raise IndexError(f"n={n} outside profile window [0, {self.n_max}]")

    def __len__(self) -> int:
        return len(self.counts)

    def support(self) -> list[int]:
        return [n for n, c in enumerate(self.counts) if c]

    def nonzero(self) -> dict[int, int]:
        return {n: c for n, c in enumerate(self.counts) if c}

    def total(self) -> int:
        return sum(self.counts)


def _pair_sum_counts(a: np.ndarray, b: np.ndarray, n_max: int) -> np.ndarray:
    """Histogram of a_i + b_j over all (i, j), truncated to [0, n_max]."""
    counts = np.zeros(n_max + 1, dtype=np.int64)
    a = a[a <= n_max]
    b = b[b <= n_max]
    if a.size == 0 or b.size == 0:
        return counts
    step = max(1, (1 << 22) // b.size)
    for i in range(0, a.size, step):
        s = np.add.outer(a[i : i + step], b).ravel()
        s = s[s <= n_max]
        counts += np.bincount(s, minlength=n_max + 1)
    return counts


def _strict_pairs(A: IntegerSet, n_max: int) -> tuple[int, ...]:
    arr = np.fromiter(A, dtype=np.int64, count=len(A))
    ordered = _pair_sum_counts(arr, arr, n_max)
    diag = np.zeros(n_max + 1, dtype=np.int64)
    half = arr[2 * arr <= n_max]
    diag[2 * half] = 1
    return tuple(int(x) for x in (ordered - diag) // 2)


def rep_function(A, h: int, variant: Variant | str, n_max: int) -> RepProfile:
    """Count h-term representations of every n in [0, n_max] from A."""
    A = _as_set(A)
    variant = Variant(variant)
    if h < 2:
        raise ValueError(f"arity must be at least 2, got {h}")
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")

    if h == 2 and variant is Variant.STRICT:
        return RepProfile(h, variant, n_max, _strict_pairs(A, n_max))

    elems = [a for a in A if a <= n_max]
    size = n_max + 1
    if variant is Variant.ORDERED:
        base = np.zeros(size, dtype=object)
        base[:] = 0
        for a in elems:
            base[a] = 1
        acc = base.copy()
        for _ in range(h - 1):
            nxt = np.zeros(size, dtype=object)
            nxt[:] = 0
            for a in elems:
                nxt[a:] += acc[: size - a]
            acc = nxt
        counts = acc
    else:
        # table[j][n] = number of j-element (multi)subsets summing to n
        table = [np.zeros(size, dtype=object) for _ in range(h + 1)]
        for row in table:
            row[:] = 0
        table[0][0] = 1
        if variant is Variant.NONDECREASING:
            order = range(1, h + 1)
        else:
            order = range(h, 0, -1)
        for a in elems:
            for j in order:
                table[j][a:] += table[j - 1][: size - a]
        counts = table[h]
    return RepProfile(h, variant, n_max, tuple(int(x) for x in counts))


def sumset(A, B) -> IntegerSet:
    A, B = _as_set(A), _as_set(B)
    return IntegerSet({a + b for a in A for b in B})


def translate(b: int, A) -> IntegerSet:
    if b < 0:
        raise ValueError("translation amount must be nonnegative")
    return IntegerSet(b + a for a in _as_set(A))


def dilate_naturals(q: int, bound: int) -> IntegerSet:
    """The multiples of q in [0, bound]."""
    if q < 1:
        raise ValueError(f"dilation factor must be positive, got {q}")
    if bound < 0:
        return IntegerSet()
    return IntegerSet(range(0, bound + 1, q))


def rep_sumset(A, B, n_max: int) -> RepProfile:
    """Number of (a, b) in A x B with a + b = n, for n in [0, n_max]."""
    A, B = _as_set(A), _as_set(B)
    a = np.fromiter(A, dtype=np.int64, count=len(A))
    b = np.fromiter(B, dtype=np.int64, count=len(B))
    counts = _pair_sum_counts(a, b, n_max)
    return RepProfile(2, Variant.ORDERED, n_max, tuple(int(x) for x in counts))


def first_mismatch(C, D, n_max: int) -> int | None:
    """Smallest n <= n_max with R_C(n) != R_D(n), or None."""
    pc = rep_function(C, 2, Variant.STRICT, n_max).counts
    pd = rep_function(D, 2, Variant.STRICT, n_max).counts
    for n, (x, y) in enumerate(zip(pc, pd)):
        if x != y:
            return n
    return None


def eventual_coincidence_scan(
    C, D, variant: Variant | str, n_max: int, h: int = 2, margin: int = 0
) -> int | None:
    """Smallest n0 with equal profiles on [n0, n_max - margin].

    C and D are truncations that contain every element <= n_max. A sum of
    nonnegative terms never uses a term larger than itself, so counts up to
    n_max are exact; `margin` trims the top further for callers that only
    trust a shorter window. Returns None when the profiles differ at the top.
    """
    top = n_max - margin
    if top < 0:
        raise ValueError("comparison window is empty")
    pc = rep_function(C, h, variant, top).counts
    pd = rep_function(D, h, variant, top).counts
    if pc[top] != pd[top]:
        return None
    for n in range(top, -1, -1):
        if pc[n] != pd[n]:
            return n + 1
    return 0


def parse_set(text: str) -> IntegerSet:
    """Parse a set literal: ``0,3,5,6`` or ``@path`` (whitespace separated)."""
    text = text.strip()
    if text.startswith("@"):
        body = Path(text[1:]).read_text()
        tokens = body.replace(",", " ").split()
    else:
        tokens = [t for t in text.replace(" ", "").split(",") if t]
    try:
        return IntegerSet(int(t) for t in tokens)
    except ValueError as exc:
        raise ValueError(f"bad set literal {text!r}: {exc}") from None
