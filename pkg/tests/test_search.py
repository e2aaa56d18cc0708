import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coinrep.genfun import criterion_eq1
from coinrep.search import (
    SearchReport,
    conjecture2_audit,
    enumerate_coinciding_pairs,
    profile_kernel,
)
from coinrep.sets import IntegerSet, rep_function, translate

import oracles

# counts from oracles.coinciding_pairs (plain subset enumeration)
BRUTE_COUNTS = {(12, 2): 30, (20, 4): 147, (40, 4): 1461, (20, 8): 63, (22, 8): 109}


def as_tuples(report):
    return [(C.elements, D.elements) for C, D, _ in report.pairs]


class TestKernel:
    def test_examples(self):
        assert profile_kernel(IntegerSet([0, 3]).to_mask(), 6) == rep_function({0, 3}, 2, "strict", 6)
        assert profile_kernel(0, 5).counts == (0,) * 6

    def test_negative(self):
        with pytest.raises(ValueError):
            profile_kernel(-1, 3)

    @given(st.frozensets(st.integers(0, 127), max_size=64), st.integers(0, 260))
    def test_matches_double_loop(self, A, n_max):
        got = profile_kernel(IntegerSet(A).to_mask(), n_max).counts
        assert list(got) == oracles.strict_pairs(A, n_max)


class TestEnumerate:
    def test_smallest(self):
        r = enumerate_coinciding_pairs(3, 2)
        assert as_tuples(r) == [((0, 3), (1, 2))]

    def test_size_four_examples(self):
        got = as_tuples(enumerate_coinciding_pairs(7, 4))
        assert ((0, 3, 4, 5), (1, 2, 3, 6)) in got
        assert ((0, 3, 5, 6), (1, 2, 4, 7)) in got

    def test_too_small(self):
        assert enumerate_coinciding_pairs(2, 4).pairs == []

    @pytest.mark.parametrize("size", [1, 2, 4])
    @pytest.mark.parametrize("top", [0, 3, 6, 9, 12])
    def test_matches_naive(self, size, top):
        assert as_tuples(enumerate_coinciding_pairs(top, size)) == oracles.coinciding_pairs(top, size)

    @pytest.mark.parametrize("key", sorted(BRUTE_COUNTS))
    def test_frozen_counts(self, key):
        assert len(enumerate_coinciding_pairs(*key).pairs) == BRUTE_COUNTS[key]

    @pytest.mark.parametrize("size", [3, 5, 6, 7])
    def test_diagnostic_sizes_empty(self, size):
        assert enumerate_coinciding_pairs(14, size, diagnostic=True).pairs == []

    def test_diagnostic_matches_naive(self):
        assert as_tuples(enumerate_coinciding_pairs(10, 3, diagnostic=True)) == oracles.coinciding_pairs(10, 3)

    def test_refusals(self):
        with pytest.raises(ValueError):
            enumerate_coinciding_pairs(14, 3)
        with pytest.raises(ValueError):
            enumerate_coinciding_pairs(65, 8)
        with pytest.raises(ValueError):
            enumerate_coinciding_pairs(10, 0)
        with pytest.raises(ValueError):
            enumerate_coinciding_pairs(10, 32)
        with pytest.raises(ValueError):
            enumerate_coinciding_pairs(12, 4, ceiling=10)

    def test_every_pair_verifies(self):
        r = enumerate_coinciding_pairs(24, 8)
        assert r.pairs
        for C, D, _ in r.pairs:
            assert criterion_eq1(C, D) and 0 in C and 0 not in D and C != D
        r.validate()

    def test_stats(self):
        r = enumerate_coinciding_pairs(20, 4)
        assert r.stats["nodes"] > 0
        assert r.stats["shards"] == 18
        assert r.stats["window_cuts"] + r.stats["moment_cuts"] > 0

    def test_jobs_do_not_change_output(self):
        a = enumerate_coinciding_pairs(24, 4, jobs=1)
        b = enumerate_coinciding_pairs(24, 4, jobs=2)
        assert as_tuples(a) == as_tuples(b)

    def test_report_round_trip(self):
        r = enumerate_coinciding_pairs(12, 4, classify=True)
        back = SearchReport.from_json(json.loads(json.dumps(r.to_json())))
        assert back.pairs == r.pairs
        back.validate()

    def test_validate_catches_bad_pair(self):
        r = SearchReport(5, 2, [(IntegerSet([0, 4]), IntegerSet([1, 2]), None)])
        with pytest.raises(ValueError):
            r.validate()


class TestCheckpoint:
    def test_checkpoint_lines(self, tmp_path):
        cp = tmp_path / "run.jsonl"
        r = enumerate_coinciding_pairs(16, 4, checkpoint=cp)
        lines = cp.read_text().splitlines()
        assert json.loads(lines[0]) == {"header": {"max_element": 16, "size": 4}}
        assert len(lines) == 1 + r.stats["shards"]

    def test_resume_skips_done_shards(self, tmp_path):
        cp = tmp_path / "run.jsonl"
        full = enumerate_coinciding_pairs(18, 4, checkpoint=cp)
        # keep the header and the first five shards, plus a torn line
        lines = cp.read_text().splitlines()
        cp.write_text("\n".join(lines[:6]) + "\n" + lines[6][:10])
        again = enumerate_coinciding_pairs(18, 4, checkpoint=cp, resume=cp)
        assert again.stats["resumed_shards"] == 5
        assert as_tuples(again) == as_tuples(full)

    def test_resume_wrong_run(self, tmp_path):
        cp = tmp_path / "run.jsonl"
        enumerate_coinciding_pairs(10, 4, checkpoint=cp)
        with pytest.raises(ValueError):
            enumerate_coinciding_pairs(11, 4, resume=cp)


class TestAudit:
    def test_size_two(self):
        v = conjecture2_audit(12, 2)
        assert v.verdict == "all_hilbert"
        for C, D, gens in v.generators:
            a, b = gens
            assert C == IntegerSet([0, a + b]) and D == IntegerSet([a, b])

    def test_size_four(self):
        v = conjecture2_audit(20, 4)
        assert v.verdict == "all_hilbert"
        assert len(v.generators) == 147
        for C, D, gens in v.generators:
            assert D[3] == D[0] + D[1] + D[2]

    def test_json(self):
        v = conjecture2_audit(10, 4)
        out = v.to_json()
        assert out["verdict"] == "all_hilbert" and out["non_hilbert"] == []


def test_normalisation_loses_nothing():
    # translating a pair so that its overall minimum is 0 keeps it coinciding
    rng = random.Random(5)
    for C, D, _ in enumerate_coinciding_pairs(16, 4).pairs:
        b = rng.randint(1, 9)
        C2, D2 = translate(b, C), translate(b, D)
        assert criterion_eq1(C2, D2)
        low = min(C2.min_element, D2.min_element)
        back_C = IntegerSet(x - low for x in C2)
        back_D = IntegerSet(x - low for x in D2)
        assert (back_C, back_D) == (C, D)
