"""Exhaustive enumeration of coinciding pairs and the audit built on it.

Pairs are normalised so that 0 is in C and 0 is not in D; every coinciding
pair is a translate of exactly one such pair. Work is split into shards by
the second-smallest element of C, which always equals d_1 + d_2 (the
smallest pair sum on either side). Each shard is a pure function of
(max_element, size, shard key), so shards can run in any order, in other
processes, or be replayed from a checkpoint.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .genfun import criterion_eq1
from .sets import IntegerSet, RepProfile, Variant
from .structure import Classification, classify_pair

__all__ = [
    "CEILINGS",
    "DIAGNOSTIC_CEILING",
    "SearchReport",
    "AuditVerdict",
    "profile_kernel",
    "enumerate_coinciding_pairs",
    "conjecture2_audit",
    "shard_keys",
]

CEILINGS = {1: 4096, 2: 512, 4: 128, 8: 64, 16: 40}
DIAGNOSTIC_CEILING = 32


def profile_kernel(mask: int, n_max: int) -> RepProfile:
    """Strict h = 2 profile of the set encoded by `mask`, via shift/AND/popcount.

    With rev the bit-reversal of mask over [0, W], n - a is in A exactly when
    bit a of rev >> (W - n) is set, so the ordered count at n is one popcount.
    """
    if mask < 0:
        raise ValueError("mask must be nonnegative")
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    width = max(mask.bit_length() - 1, 0)
    rev = int(format(mask, "b").zfill(width + 1)[::-1], 2) if mask else 0
    counts = []
    for n in range(n_max + 1):
        if n <= width:
            hits = mask & (rev >> (width - n))
        else:
            hits = mask & (rev << (n - width))
        ordered = hits.bit_count()
        if n % 2 == 0 and (mask >> (n // 2)) & 1:
            ordered -= 1
        counts.append(ordered // 2)
    return RepProfile(2, Variant.STRICT, n_max, tuple(counts))


def _is_pow2(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def shard_keys(max_element: int, size: int) -> list[int]:
    """Possible values of the second-smallest element of C (0 for size 1)."""
    if size == 1:
        return [0]
    return list(range(3, max_element + 1))


def _run_shard(args: tuple[int, int, int]) -> dict:
    max_element, size, key = args
    from . import _kernel

    prefixes = [()] if size == 1 else [(a, key - a) for a in range(1, (key + 1) // 2)]
    pairs = []
    nodes = window = moment = 0
    for prefix in prefixes:
        cs, ds, stats = _kernel.run_prefix(max_element, size, prefix)
        pairs.extend((c.tolist(), d.tolist()) for c, d in zip(cs, ds))
        nodes += int(stats[_kernel.NODES])
        window += int(stats[_kernel.WINDOW_CUTS])
        moment += int(stats[_kernel.MOMENT_CUTS])
    pairs.sort()
    return {
        "shard": key,
        "pairs": [[c, d] for c, d in pairs],
        "nodes": nodes,
        "window_cuts": window,
        "moment_cuts": moment,
    }


@dataclass
class SearchReport:
    max_element: int
    size: int
    # (C, D, classification or None)
    pairs: list[tuple[IntegerSet, IntegerSet, Classification | None]]
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        rows = []
        for C, D, cls in self.pairs:
            row = {"C": C.to_list(), "D": D.to_list()}
            if cls is not None:
                row["classification"] = cls.to_json()
            rows.append(row)
        return {
            "max_element": self.max_element,
            "size": self.size,
            "pairs": rows,
            "stats": self.stats,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SearchReport":
        pairs = []
        for row in obj["pairs"]:
            c = row.get("classification")
            pairs.append(
                (
                    IntegerSet(row["C"]),
                    IntegerSet(row["D"]),
                    None if c is None else Classification.from_json(c),
                )
            )
        return cls(obj["max_element"], obj["size"], pairs, dict(obj.get("stats", {})))

    def validate(self) -> None:
        """Re-check every pair and the canonical order; raises ValueError."""
        prev = None
        for C, D, _ in self.pairs:
            if len(C) != self.size or len(D) != self.size:
                raise ValueError(f"pair {C}, {D} has the wrong size")
            if 0 not in C or D.min_element < 1 or C == D:
                raise ValueError(f"pair {C}, {D} is not normalised")
            if max(C.max_element, D.max_element) > self.max_element:
                raise ValueError(f"pair {C}, {D} exceeds max_element")
            if not criterion_eq1(C, D):
                raise ValueError(f"pair {C}, {D} does not coincide")
            key = (C.elements, D.elements)
            if prev is not None and key <= prev:
                raise ValueError("pairs are not strictly ordered")
            prev = key


def _header(max_element: int, size: int) -> dict:
    return {"header": {"max_element": max_element, "size": size}}


def _load_checkpoint(path: Path, max_element: int, size: int) -> dict[int, dict]:
    done: dict[int, dict] = {}
    with open(path) as fh:
        lines = [ln for ln in fh if ln.strip()]
    if not lines:
        return done
    first = json.loads(lines[0])
    if first != _header(max_element, size):
        raise ValueError(f"checkpoint {path} was written for {first.get('header')}")
    for ln in lines[1:]:
        try:
            rec = json.loads(ln)
        except json.JSONDecodeError:
            # a torn final line from an interrupted run
            break
        done[rec["shard"]] = rec
    return done


def enumerate_coinciding_pairs(
    max_element: int,
    size: int,
    jobs: int = 1,
    diagnostic: bool = False,
    checkpoint: str | os.PathLike | None = None,
    resume: str | os.PathLike | None = None,
    classify: bool = False,
    ceiling: int | None = None,
) -> SearchReport:
    """All (C, D) of size-`size` subsets of [0, max_element], 0 in C, 0 not in D, R_C = R_D.

    Sizes other than powers of two are refused unless `diagnostic` is set.
    `checkpoint` receives one JSON line per finished shard; `resume` skips
    shards already present in such a file.
    """
    if size < 1:
        raise ValueError(f"size must be positive, got {size}")
    if max_element < 0:
        raise ValueError(f"max_element must be nonnegative, got {max_element}")
    if jobs < 1:
        raise ValueError(f"jobs must be positive, got {jobs}")
    if not _is_pow2(size) and not diagnostic:
        raise ValueError(f"size {size} is not a power of two; coinciding pairs need |C| = |D| = 2^l")
    if ceiling is None:
        ceiling = CEILINGS.get(size, DIAGNOSTIC_CEILING if diagnostic else None)
        if ceiling is None:
            raise ValueError(f"no ceiling configured for size {size}; pass ceiling explicitly")
    if max_element > ceiling:
        raise ValueError(f"max_element {max_element} exceeds the ceiling {ceiling} for size {size}")

    start = time.perf_counter()
    keys = shard_keys(max_element, size)
    done: dict[int, dict] = {}
    if resume is not None and Path(resume).exists():
        done = {k: v for k, v in _load_checkpoint(Path(resume), max_element, size).items() if k in keys}
    resumed = len(done)
    todo = [k for k in keys if k not in done]

    out = None
    if checkpoint is not None:
        cp = Path(checkpoint)
        append = resume is not None and cp.exists() and cp.resolve() == Path(resume).resolve()
        out = open(cp, "a" if append else "w")
        if not append or cp.stat().st_size == 0:
            out.write(json.dumps(_header(max_element, size)) + "\n")
            for k in sorted(done):
                out.write(json.dumps(done[k]) + "\n")
            out.flush()

    def store(rec: dict) -> None:
        done[rec["shard"]] = rec
        if out is not None:
            out.write(json.dumps(rec) + "\n")
            out.flush()

    try:
        tasks = [(max_element, size, k) for k in todo]
        if jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for rec in pool.map(_run_shard, tasks):
                    store(rec)
        else:
            for t in tasks:
                store(_run_shard(t))
    finally:
        if out is not None:
            out.close()

    merged = sorted(
        (tuple(c), tuple(d)) for k in keys for c, d in done[k]["pairs"]
    )
    pairs = []
    for c, d in merged:
        C, D = IntegerSet(c), IntegerSet(d)
        pairs.append((C, D, classify_pair(C, D) if classify else None))
    stats = {
        "nodes": sum(done[k]["nodes"] for k in keys),
        "window_cuts": sum(done[k]["window_cuts"] for k in keys),
        "moment_cuts": sum(done[k]["moment_cuts"] for k in keys),
        "shards": len(keys),
        "resumed_shards": resumed,
        "wall_time": time.perf_counter() - start,
    }
    report = SearchReport(max_element, size, pairs, stats)
    report.validate()
    return report


@dataclass
class AuditVerdict:
    verdict: str  # "all_hilbert" | "counterexample_candidates" | "incomplete"
    generators: list[tuple[IntegerSet, IntegerSet, tuple[int, ...]]]
    non_hilbert: list[tuple[IntegerSet, IntegerSet]]
    not_attempted: list[tuple[IntegerSet, IntegerSet]]
    report: SearchReport

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "pairs": len(self.report.pairs),
            "generators": [
                {"C": C.to_list(), "D": D.to_list(), "generators": list(g)}
                for C, D, g in self.generators
            ],
            "non_hilbert": [{"C": C.to_list(), "D": D.to_list()} for C, D in self.non_hilbert],
            "not_attempted": [{"C": C.to_list(), "D": D.to_list()} for C, D in self.not_attempted],
            "stats": self.report.stats,
        }


def conjecture2_audit(max_element: int, size: int, **kwargs) -> AuditVerdict:
    """Enumerate, classify every pair, and report whether all are cube pairs.

    Non-Hilbert pairs are listed as candidates; nothing is concluded from them.
    """
    kwargs["classify"] = True
    report = enumerate_coinciding_pairs(max_element, size, **kwargs)
    gens, bad, skipped = [], [], []
    for C, D, cls in report.pairs:
        if cls.is_hilbert:
            gens.append((C, D, cls.generators))
        elif cls.kind == "not_attempted":
            skipped.append((C, D))
        else:
            bad.append((C, D))
    if bad:
        verdict = "counterexample_candidates"
    elif skipped:
        verdict = "incomplete"
    else:
        verdict = "all_hilbert"
    return AuditVerdict(verdict, gens, bad, skipped, report)
