"""Partitions of the naturals into two cube halves that overlap on a progression.

With generators 1, 2, ..., 2^(2l-1), 2^(2l) - 1, then m, 2m, 4m, ... for
m = 2^(2l+1) - 1, the even and odd parts cover every integer and share
exactly r + mN with r = 2^(2l) - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cube import CubeGenerators, chenlev_rule, cube_parts, truncate_rule
from .sets import IntegerSet, Variant, _as_set, rep_function

__all__ = [
    "PartitionSpec",
    "PartitionReport",
    "chenlev_generators",
    "chenlev_sets",
    "verify_partition",
    "conjecture34_scan",
]


@dataclass(frozen=True)
class PartitionSpec:
    """Expected overlap r + mN; l is kept for the cube family it came from."""

    r: int
    m: int
    l: int | None = None

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"r must be nonnegative, got {self.r}")
        if self.m < 1:
            raise ValueError(f"m must be positive, got {self.m}")
        if self.l is not None and self.l < 1:
            raise ValueError(f"l must be positive, got {self.l}")

    @classmethod
    def chenlev(cls, l: int) -> "PartitionSpec":
        if l < 1:
            raise ValueError(f"l must be positive, got {l}")
        return cls(r=(1 << 2 * l) - 1, m=(1 << (2 * l + 1)) - 1, l=l)

    def progression(self, bound: int) -> IntegerSet:
        return IntegerSet(range(self.r, bound + 1, self.m))


def chenlev_generators(l: int, bound: int) -> CubeGenerators:
    return truncate_rule(chenlev_rule(l), bound)


def chenlev_sets(l: int, bound: int) -> tuple[IntegerSet, IntegerSet]:
    """(H0, H1) of the generators above, intersected with [0, bound]."""
    return cube_parts(chenlev_generators(l, bound), bound=bound)


@dataclass(frozen=True)
class PartitionReport:
    union: bool
    intersection: bool
    rep_equal: bool
    window: tuple[int, int]

    @property
    def ok(self) -> bool:
        return self.union and self.intersection and self.rep_equal

    def to_json(self) -> dict:
        return {
            "union": self.union,
            "intersection": self.intersection,
            "rep_equal": self.rep_equal,
            "window": list(self.window),
        }


def verify_partition(C, D, spec: PartitionSpec, bound: int) -> PartitionReport:
    """Check C u D = [0, bound], C n D = (r + mN) n [0, bound] and R_C = R_D.

    C and D are the full sets cut at `bound`. A pair sum n only uses elements
    <= n, so profiles are exact on all of [0, bound] and that is the window.
    """
    C, D = _as_set(C).restrict(bound), _as_set(D).restrict(bound)
    union = (C | D) == IntegerSet(range(bound + 1))
    intersection = (C & D) == spec.progression(bound)
    pc = rep_function(C, 2, Variant.STRICT, bound).counts
    pd = rep_function(D, 2, Variant.STRICT, bound).counts
    return PartitionReport(union, intersection, pc == pd, (0, bound))


def _scan_one(r: int, m: int, bound: int) -> tuple[IntegerSet, IntegerSet] | None:
    """Assign 0..bound to C only, D only or both (both = r + mN), keeping R_C = R_D.

    Pair sums at n are fixed by elements below n except for the pair (0, n),
    so with 0's membership known the choice at n is forced: exactly one
    option keeps the running difference at zero.
    """
    both = set(range(r, bound + 1, m))
    zero_in_c = True
    zero_in_d = 0 in both
    cs, ds = [0], [0] if zero_in_d else []
    diff = [0] * (2 * bound + 1)  # R_C - R_D from elements already placed
    for n in range(1, bound + 1):
        options = [(True, True)] if n in both else [(True, False), (False, True)]
        chosen = None
        for c, d in options:
            gain = int(c and zero_in_c) - int(d and zero_in_d)
            if diff[n] + gain == 0:
                chosen = (c, d)
                break
        if chosen is None:
            return None
        c, d = chosen
        if c:
            for x in cs:
                diff[x + n] += 1
            cs.append(n)
        if d:
            for x in ds:
                diff[x + n] -= 1
            ds.append(n)
    return IntegerSet(cs), IntegerSet(ds)


def conjecture34_scan(bound: int, max_m: int) -> list[tuple[int, int, IntegerSet, IntegerSet]]:
    """Every (r, m, C, D) with 0 <= r < m <= max_m that survives on [0, bound].

    Survivors are reported as found; being a survivor at a finite bound says
    nothing about the infinite sets.
    """
    if max_m < 2:
        raise ValueError(f"max_m must be at least 2, got {max_m}")
    if bound < 2 * max_m:
        raise ValueError(f"bound must be at least 2*max_m = {2 * max_m}")
    out = []
    for m in range(2, max_m + 1):
        for r in range(m):
            found = _scan_one(r, m, bound)
            if found is not None:
                out.append((r, m) + found)
    return out
