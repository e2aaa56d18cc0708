import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coinrep.genfun import (
    NathansonSpec,
    criterion_eq1,
    divisibility_check,
    from_set,
    nathanson_build,
    unit_root_multiplicity,
)
from coinrep.partition import chenlev_sets
from coinrep.polynomial import IntPolynomial
from coinrep.sets import IntegerSet, first_mismatch, rep_function

import oracles

sets60 = st.frozensets(st.integers(0, 60), min_size=1, max_size=8)


def test_from_set_examples():
    assert from_set(set()).is_zero()
    assert from_set({0, 3}) == IntPolynomial([1, 0, 0, 1])
    assert from_set({1, 2, 4, 7}).terms() == [(1, 1), (2, 1), (4, 1), (7, 1)]


def test_criterion_examples():
    assert criterion_eq1({0, 3}, {1, 2})
    assert not criterion_eq1({0, 1}, {0, 2})
    assert criterion_eq1({0, 3, 5, 6}, {1, 2, 4, 7})


@given(sets60, sets60)
def test_criterion_agrees_with_counting(C, D):
    assert criterion_eq1(C, D) == (first_mismatch(C, D, 120) is None)


def test_criterion_agrees_on_known_pairs():
    for C, D in oracles.coinciding_pairs(9, 4):
        assert criterion_eq1(C, D)
        # break the pair by moving its largest element of D up by one
        D2 = D[:-1] + (D[-1] + 1,)
        assert criterion_eq1(C, D2) == (first_mismatch(C, D2, 40) is None)


def test_criterion_prefix_window():
    # cutting a coinciding pair of infinite sets keeps agreement up to the cut only
    C, D = chenlev_sets(1, 20)
    assert criterion_eq1(C, D, upto=20)
    assert not criterion_eq1(C, D)


class TestMultiplicity:
    def test_two_element_pair(self):
        cert = unit_root_multiplicity({0, 3}, {1, 2})
        assert cert.multiplicity == 2
        # 1 - z - z^2 + z^3 = (z - 1)^2 (1 + z)
        assert cert.quotient == IntPolynomial([1, 1])
        assert cert.certifies({0, 3}, {1, 2})

    def test_simple_root(self):
        cert = unit_root_multiplicity({0}, {5})
        assert cert.multiplicity == 1
        assert cert.quotient == IntPolynomial([-1] * 5)

    def test_no_root(self):
        # 1 + z - z^3 is 1 at z = 1
        cert = unit_root_multiplicity({0, 1}, {3})
        assert cert.multiplicity == 0
        assert cert.quotient == from_set({0, 1}) - from_set({3})

    def test_equal_sets_refused(self):
        with pytest.raises(ValueError):
            unit_root_multiplicity({1, 2}, {1, 2})

    @given(sets60, sets60)
    def test_certificate_sound(self, C, D):
        if C == D:
            return
        cert = unit_root_multiplicity(C, D)
        assert cert.certifies(C, D)

    def test_power_of_two_on_coinciding_pairs(self):
        for size, top in ((1, 6), (2, 10), (4, 12)):
            for C, D in oracles.coinciding_pairs(top, size):
                cert = unit_root_multiplicity(C, D)
                assert 2**cert.multiplicity == len(C) + len(D)
                total_c = rep_function(C, 2, "strict", 2 * top).total()
                assert total_c == rep_function(D, 2, "strict", 2 * top).total() == size * (size - 1) // 2


class TestNathanson:
    def test_build(self):
        spec = NathansonSpec({0, 1}, {2, 3}, {0}, 2, 2)
        C, D = nathanson_build(spec, 10)
        assert C == IntegerSet([0, 1, 4, 6, 8, 10])
        assert D == IntegerSet([2, 3, 4, 6, 8, 10])

    def test_build_empty_period(self):
        spec = NathansonSpec({0, 3}, {1, 2}, set(), 5, 1)
        assert nathanson_build(spec, 50) == (IntegerSet([0, 3]), IntegerSet([1, 2]))

    def test_build_symmetric(self):
        spec = NathansonSpec(set(), set(), {0}, 3, 1)
        C, D = nathanson_build(spec, 9)
        assert C == D == IntegerSet([3, 6, 9])

    def test_divisibility_examples(self):
        assert divisibility_check(NathansonSpec({0, 1}, {2, 3}, {0}, 2, 2))
        assert not divisibility_check(NathansonSpec({0}, {1}, {0}, 2, 1))
        for h in (2, 3):
            assert divisibility_check(NathansonSpec({1, 2}, {1, 2}, {0, 1}, 3, 1, h))

    def test_invalid_specs(self):
        with pytest.raises(ValueError):
            NathansonSpec({0, 9}, {1}, {0}, 2, 2)  # F beyond M*n0 - 1
        with pytest.raises(ValueError):
            NathansonSpec({0}, {1}, {2}, 2, 2)  # T beyond M - 1
        with pytest.raises(ValueError):
            NathansonSpec({0}, {1}, {0}, 0, 2)
        with pytest.raises(ValueError):
            NathansonSpec({0}, {1}, {0}, 2, 2, h=1)

    def test_divisible_specs_coincide_eventually(self):
        rng = random.Random(7)
        checked = 0
        for _ in range(400):
            M = rng.randint(2, 4)
            n0 = rng.randint(1, 3)
            T = IntegerSet(rng.sample(range(M), rng.randint(1, M)))
            FC = IntegerSet(rng.sample(range(M * n0), rng.randint(0, M * n0)))
            FD = IntegerSet(rng.sample(range(M * n0), rng.randint(0, M * n0)))
            spec = NathansonSpec(FC, FD, T, M, n0)
            if not divisibility_check(spec):
                continue
            checked += 1
            bound = 8 * M * n0 + 20
            C, D = nathanson_build(spec, bound)
            pc = rep_function(C, 2, "ordered", bound).counts
            pd = rep_function(D, 2, "ordered", bound).counts
            start = 2 * M * n0
            assert pc[start:] == pd[start:]
        assert checked > 10


def test_degree_argument_regression():
    """p(z)(1 + z^v) - p(z^2)(1 - z) = z(1 + z^2 + ... + z^(2v-2)) has no 0/1 solution."""
    one_minus_z = IntPolynomial([1, -1])
    for v in range(1, 11):
        rhs = IntPolynomial([0] + [1 if i % 2 == 0 else 0 for i in range(2 * v - 1)])
        bump = IntPolynomial([1]) + IntPolynomial.monomial(v)
        for bits in itertools.product((0, 1), repeat=v):
            p = IntPolynomial(bits)
            lhs = p * bump - p.substitute_power(2) * one_minus_z
            assert lhs != rhs
