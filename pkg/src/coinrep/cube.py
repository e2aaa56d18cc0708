"""Hilbert cubes H(h_1, h_2, ...) and their even/odd parts.

Subset sums are built by doubling: after processing h_1..h_i the arrays hold
one entry per subset of those generators, indexed by bitmask, together with
the subset's parity. With a bound, sums above it are dropped as soon as they
appear (generators are positive, so they never come back down).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Callable, Iterable, Iterator

import numpy as np

from .genfun import from_set
from .polynomial import IntPolynomial
from .sets import IntegerSet, Variant, rep_function

__all__ = [
    "CubeGenerators",
    "PreconditionError",
    "Nondegeneracy",
    "cube_parts",
    "is_half_nondegenerate",
    "theorem3_verify",
    "product_identities",
    "truncate_rule",
    "pow2_rule",
    "chenlev_rule",
    "named_rule",
]

MAX_UNBOUNDED = 25


class PreconditionError(ValueError):
    """An operation was called on input that violates its precondition."""


class CubeGenerators(tuple):
    """Strictly increasing tuple of positive integers."""

    def __new__(cls, gens: Iterable[int] = ()):
        gens = tuple(int(g) for g in gens)
        for i, g in enumerate(gens):
            if g < 1:
                raise ValueError(f"generators must be positive, got {g}")
            if i and g <= gens[i - 1]:
                raise ValueError(f"generators must be strictly increasing: {gens}")
        return super().__new__(cls, gens)

    def __repr__(self) -> str:
        return f"CubeGenerators{tuple(self)!r}"


def _subset_sums(gens, bound=None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(sums, parity, mask) for every subset, pruned by bound when given."""
    sums = np.zeros(1, dtype=np.int64)
    parity = np.zeros(1, dtype=np.int8)
    masks = np.zeros(1, dtype=np.int64)
    for i, g in enumerate(gens):
        new = sums + g
        keep = slice(None) if bound is None else new <= bound
        sums = np.concatenate([sums, new[keep]])
        parity = np.concatenate([parity, 1 - parity[keep]])
        masks = np.concatenate([masks, masks[keep] | (1 << i)])
    return sums, parity, masks


def cube_parts(g, bound: int | None = None) -> tuple[IntegerSet, IntegerSet]:
    """Even part H0 and odd part H1, optionally intersected with [0, bound]."""
    g = CubeGenerators(g)
    if bound is None:
        if len(g) > MAX_UNBOUNDED:
            raise ValueError(
                f"{len(g)} generators without a bound; pass bound= for more than {MAX_UNBOUNDED}"
            )
    else:
        g = [x for x in g if x <= bound]
    sums, parity, _ = _subset_sums(g, bound)
    H0 = IntegerSet(np.unique(sums[parity == 0]).tolist())
    H1 = IntegerSet(np.unique(sums[parity == 1]).tolist())
    return H0, H1


@dataclass(frozen=True)
class Nondegeneracy:
    ok: bool
    # two distinct 0/1 coefficient vectors of equal parity and equal sum
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _vector(mask: int, k: int) -> tuple[int, ...]:
    return tuple((mask >> i) & 1 for i in range(k))


def is_half_nondegenerate(g) -> Nondegeneracy:
    g = CubeGenerators(g)
    if len(g) > MAX_UNBOUNDED:
        raise ValueError(f"at most {MAX_UNBOUNDED} generators can be checked")
    sums, parity, masks = _subset_sums(g)
    keys = sums * 2 + parity
    order = np.argsort(keys, kind="stable")
    sk = keys[order]
    hits = np.nonzero(sk[1:] == sk[:-1])[0]
    if hits.size == 0:
        return Nondegeneracy(True)
    i = int(hits[0])
    a, b = int(masks[order[i]]), int(masks[order[i + 1]])
    return Nondegeneracy(False, (_vector(a, len(g)), _vector(b, len(g))))


def theorem3_verify(g, n_max: int) -> bool:
    """R_{H0}(n) == R_{H1}(n) for all n <= n_max on a half non-degenerate cube."""
    g = CubeGenerators(g)
    check = is_half_nondegenerate(g)
    if not check:
        raise PreconditionError(f"cube {tuple(g)} is degenerate: {check.witness}")
    H0, H1 = cube_parts(g, bound=n_max)
    p0 = rep_function(H0, 2, Variant.STRICT, n_max)
    p1 = rep_function(H1, 2, Variant.STRICT, n_max)
    return p0.counts == p1.counts


def product_identities(g) -> bool:
    """prod(1 - z^h) = signed subset-sum polynomial, prod(1 + z^h) = unsigned one.

    Subset sums are counted with multiplicity. For a half non-degenerate cube
    the two polynomials must also equal H0(z) - H1(z) and H0(z) + H1(z) built
    from the deduplicated parts.
    """
    g = CubeGenerators(g)
    if len(g) > MAX_UNBOUNDED:
        raise ValueError(f"at most {MAX_UNBOUNDED} generators are supported")
    one = IntPolynomial([1])
    minus = one
    plus = one
    for h in g:
        zh = IntPolynomial.monomial(h)
        minus = minus * (one - zh)
        plus = plus * (one + zh)

    sums, parity, _ = _subset_sums(g)
    size = int(sums.max()) + 1
    signed = np.zeros(size, dtype=np.int64)
    unsigned = np.zeros(size, dtype=np.int64)
    np.add.at(signed, sums, 1 - 2 * parity.astype(np.int64))
    np.add.at(unsigned, sums, 1)
    signed_poly = IntPolynomial(signed.tolist())
    unsigned_poly = IntPolynomial(unsigned.tolist())
    if minus != signed_poly or plus != unsigned_poly:
        return False
    if is_half_nondegenerate(g):
        H0, H1 = cube_parts(g)
        P0, P1 = from_set(H0), from_set(H1)
        return P0 - P1 == minus and P0 + P1 == plus
    return True


def truncate_rule(rule, bound: int) -> CubeGenerators:
    """Generators <= bound taken from `rule` (an iterable or a zero-arg callable).

    Every cube element <= bound is a sum of generators <= bound, so the
    truncation loses nothing inside [0, bound].
    """
    it = rule() if callable(rule) else iter(rule)
    out: list[int] = []
    for x in it:
        if x < 1:
            raise ValueError(f"rule emitted a non-positive generator {x}")
        if out and x <= out[-1]:
            raise ValueError(f"rule is not strictly increasing: {out[-1]} then {x}")
        if x > bound:
            break
        out.append(x)
    return CubeGenerators(out)


def pow2_rule() -> Iterator[int]:
    for i in count():
        yield 1 << i


def chenlev_rule(l: int) -> Callable[[], Iterator[int]]:
    """1, 2, ..., 2^(2l-1), 2^(2l) - 1, then (2^(2l+1) - 1) * 2^j for j >= 0."""
    if l < 1:
        raise ValueError(f"l must be a positive integer, got {l}")

    def rule() -> Iterator[int]:
        for i in range(2 * l):
            yield 1 << i
        yield (1 << 2 * l) - 1
        m = (1 << (2 * l + 1)) - 1
        for j in count():
            yield m << j

    return rule


def named_rule(name: str):
    """Resolve ``pow2`` or ``chenlev:<l>``."""
    if name == "pow2":
        return pow2_rule
    if name.startswith("chenlev:"):
        try:
            l = int(name.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad rule {name!r}") from None
        return chenlev_rule(l)
    raise ValueError(f"unknown generator rule {name!r} (expected pow2 or chenlev:<l>)")
