"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is printed.

Run alone with ``pytest tests/test_acceptance.py -s``; the lines are also
repeated in the terminal summary of a normal run.
"""

import json
import random
import time

import pytest

from coinrep.cube import cube_parts, product_identities, theorem3_verify
from coinrep.genfun import NathansonSpec, criterion_eq1, divisibility_check, nathanson_build, unit_root_multiplicity
from coinrep.partition import PartitionSpec, chenlev_sets, verify_partition
from coinrep.search import conjecture2_audit, enumerate_coinciding_pairs, profile_kernel
from coinrep.sets import IntegerSet, first_mismatch, rep_function
from coinrep.structure import check_conditions, classify_pair, decompose, solve_coinciding

import oracles
from conftest import ACCEPTANCE_LINES


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {detail}"
        ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
        assert ok, detail

    return emit


def test_1_finite_classification(report):
    t0 = time.perf_counter()
    two = enumerate_coinciding_pairs(12, 2, classify=True)
    shape_two = all(C == IntegerSet([0, D[0] + D[1]]) for C, D, _ in two.pairs)
    four = enumerate_coinciding_pairs(20, 4, classify=True)
    shape_four = True
    for C, D, _ in four.pairs:
        d1, d2, d3, d4 = D
        shape_four &= d4 == d1 + d2 + d3 and (C, D) == cube_parts((d1, d2, d3))
    hilbert = all(cls.is_hilbert for _, _, cls in two.pairs + four.pairs)
    elapsed = time.perf_counter() - t0
    ok = shape_two and shape_four and hilbert and bool(two.pairs) and bool(four.pairs) and elapsed < 300
    report(1, ok, f"size 2: {len(two.pairs)} pairs, size 4: {len(four.pairs)} pairs, "
                  f"all hilbert={hilbert}, {elapsed:.1f}s")


def test_2_power_of_two_sizes(report):
    odd_sizes = {k: len(enumerate_coinciding_pairs(14, k, diagnostic=True).pairs) for k in (3, 5, 6, 7)}
    law = True
    checked = 0
    for size, top in ((2, 14), (4, 14)):
        for C, D, _ in enumerate_coinciding_pairs(top, size).pairs:
            cert = unit_root_multiplicity(C, D)
            law &= cert.certifies(C, D) and 2**cert.multiplicity == len(C) + len(D)
            checked += 1
    ok = all(v == 0 for v in odd_sizes.values()) and law and checked > 0
    report(2, ok, f"pairs at sizes 3/5/6/7 = {odd_sizes}, 2^m = |C|+|D| on {checked} pairs: {law}")


def test_3_cube_halves(report):
    rng = random.Random(2024)
    t0 = time.perf_counter()
    good = 0
    for _ in range(100):
        n = rng.randint(3, 12)
        gens, total = [], 0
        for _ in range(n):
            g = total + rng.randint(1, 3)
            gens.append(g)
            total += g
        good += theorem3_verify(gens, 2 * total) and product_identities(gens)
    elapsed = time.perf_counter() - t0
    report(3, good == 100 and elapsed < 60, f"{good}/100 superincreasing cubes verified in {elapsed:.1f}s")


def test_4_criterion_vs_counting(report):
    rng = random.Random(4)
    agree = 0
    positives = 0
    for _ in range(1000):
        C = IntegerSet(rng.sample(range(61), rng.randint(1, 8)))
        D = IntegerSet(rng.sample(range(61), rng.randint(1, 8)))
        by_poly = criterion_eq1(C, D)
        by_count = first_mismatch(C, D, 120) is None
        agree += by_poly == by_count
        positives += by_poly
    report(4, agree == 1000, f"{agree}/1000 random pairs agree ({positives} coinciding)")


def _gapped_cube_instance(rng):
    gens = [rng.randint(1, 8)]
    for _ in range(rng.randint(1, 4)):
        top = cube_parts(gens)[1].max_element
        gens.append(4 * top + rng.randint(0, 3 * top))
    return tuple(gens)


def test_5_reconstruction(report):
    t0 = time.perf_counter()
    Ds = [IntegerSet([1, 4, 16, 21])]
    rng = random.Random(5)
    while len(Ds) < 51:
        D = cube_parts(_gapped_cube_instance(rng))[1]
        if check_conditions(D) and decompose(D)[0]:
            Ds.append(D)
    good = 0
    for D in Ds:
        sols = solve_coinciding(D)
        good += sols == [decompose(D)[1]]
    elapsed = time.perf_counter() - t0
    report(5, good == 51 and elapsed < 60, f"{good}/51 D sets give exactly decompose(D).C, {elapsed:.1f}s")


def test_6_partition(report):
    details = []
    ok = True
    for l, head in ((1, [3, 10, 17]), (2, [15, 46, 77])):
        C, D = chenlev_sets(l, 200)
        spec = PartitionSpec.chenlev(l)
        rep = verify_partition(C, D, spec, 200)
        starts = list((C & D).elements[:3]) == head
        ok &= rep.ok and starts
        details.append(f"l={l}: {json.dumps(rep.to_json())}")
    report(6, ok, "; ".join(details))


def test_7_nathanson(report):
    bound = 100
    lo, hi = 8, bound - 4
    good = NathansonSpec({0, 1}, {2, 3}, {0}, 2, 2)
    C, D = nathanson_build(good, bound)
    same = (rep_function(C, 2, "ordered", hi).counts[lo:] == rep_function(D, 2, "ordered", hi).counts[lo:])
    bad = NathansonSpec({0, 1}, {2}, {0}, 2, 2)
    C2, D2 = nathanson_build(bad, bound)
    differs = rep_function(C2, 2, "ordered", hi).counts[lo:] != rep_function(D2, 2, "ordered", hi).counts[lo:]
    ok = divisibility_check(good) and same and not divisibility_check(bad) and differs
    report(7, ok, f"divisible={divisibility_check(good)}, equal on [{lo},{hi}]={same}; "
                  f"perturbed divisible={divisibility_check(bad)}, mismatch={differs}")


def test_8_performance(report):
    t0 = time.perf_counter()
    r = enumerate_coinciding_pairs(40, 4)
    elapsed = time.perf_counter() - t0
    rng = random.Random(8)
    agree = 0
    for _ in range(1000):
        A = rng.sample(range(128), rng.randint(0, 64))
        n_max = rng.randint(0, 260)
        agree += list(profile_kernel(IntegerSet(A).to_mask(), n_max).counts) == oracles.strict_pairs(A, n_max)
    ok = elapsed < 60 and agree == 1000 and len(r.pairs) == 1461
    report(8, ok, f"size 4 to 40: {len(r.pairs)} pairs in {elapsed:.1f}s (1 core); kernel {agree}/1000")


def test_9_size_eight_probe(report, tmp_path):
    t0 = time.perf_counter()
    verdict = conjecture2_audit(64, 8)
    elapsed = time.perf_counter() - t0
    artifact = tmp_path / "audit_size8_max64.json"
    artifact.write_text(json.dumps(verdict.to_json()))
    reverified = all(criterion_eq1(C, D) and 0 in C and 0 not in D for C, D, _ in verdict.report.pairs)
    ok = reverified and artifact.stat().st_size > 0
    report(9, ok, f"verdict={verdict.verdict}, {len(verdict.report.pairs)} pairs re-verified={reverified}, "
                  f"non_hilbert={len(verdict.non_hilbert)}, {elapsed:.1f}s")
