"""Split enumeration, coefficient maps, and the closed proof-step sums."""

from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mbethe.errors import ConstraintError
from mbethe.partitions import (CoefficientMap, GroundSet, bits_of, count_splits,
                               enumerate_splits, mask_values,
                               pole_extraction_sum, single_extraction_sum,
                               split_elements)
from mbethe.scalars import Rat, SpectralSet, sample_generic, set_product


class TestEnumeration:
    def test_single_element_two_parts(self):
        assert list(enumerate_splits(1, 2)) == [(1, 0), (0, 1)]

    def test_counts(self):
        assert len(list(enumerate_splits(4, 2, cards=(2, 2)))) == 6
        assert len(list(enumerate_splits(3, 3))) == 27
        assert len(list(enumerate_splits(5, 2))) == 32
        assert len(list(enumerate_splits(5, 3, cards=(2, 2, 1)))) == comb(5, 2) * comb(3, 2)

    def test_each_exactly_once_and_disjoint(self):
        seen = set()
        for split in enumerate_splits(4, 3):
            assert split not in seen
            seen.add(split)
            m1, m2, m3 = split
            assert m1 | m2 | m3 == 0b1111
            assert m1 & m2 == m1 & m3 == m2 & m3 == 0
        assert len(seen) == 81

    def test_deterministic_stream(self):
        assert list(enumerate_splits(6, 2)) == list(enumerate_splits(6, 2))
        a = list(enumerate_splits(6, 3, cards=(2, 2, 2)))
        assert a == list(enumerate_splits(6, 3, cards=(2, 2, 2)))

    def test_constraint_errors(self):
        with pytest.raises(ConstraintError):
            list(enumerate_splits(4, 2, cards=(1, 2)))
        with pytest.raises(ConstraintError):
            list(enumerate_splits(4, 4))
        with pytest.raises(ConstraintError):
            list(enumerate_splits(4, 2, cards=(1, 2, 1)))

    @given(n=st.integers(0, 7), k=st.integers(0, 7))
    @settings(max_examples=40)
    def test_constrained_count(self, n, k):
        if k > n:
            with pytest.raises(ConstraintError):
                list(enumerate_splits(n, 2, cards=(k, n - k)))
            return
        splits = list(enumerate_splits(n, 2, cards=(k, n - k)))
        assert len(splits) == comb(n, k) == count_splits(n, 2, (k, n - k))
        assert all(bin(m1).count("1") == k for m1, _ in splits)


class TestSplitElements:
    def test_empty_part(self):
        s = SpectralSet([1, 2], "u")
        out = split_elements((0, 3), 0, s)
        assert len(out) == 0

    def test_multi_source_resolution(self):
        u = SpectralSet([10, 11], "u")
        v = SpectralSet([20, 21], "v")
        ground = GroundSet.from_sets(u, v)
        got = split_elements((0b0001, 0b1110), 1, (u, v), ground)
        assert got.values == (Rat(11), Rat(20), Rat(21))

    def test_round_trip(self):
        u = SpectralSet([3, 5, 8], "u")
        ground = GroundSet.from_sets(u)
        seen = 0
        for split in enumerate_splits(ground, 2):
            merged = []
            for part in range(2):
                merged.extend(split_elements(split, part, u).values)
            assert sorted(merged) == sorted(u.values)
            seen += 1
        assert seen == 8

    def test_tags(self):
        u = SpectralSet([10, 11], "u")
        v = SpectralSet([20], "v")
        ground = GroundSet.from_sets(u, v)
        assert ground.tags(0b101) == ["u[0]", "v[0]"]


class TestCoefficientMap:
    def test_absent_is_zero(self):
        m = CoefficientMap()
        assert m[5] == 0

    def test_exact_merge_and_zero_drop(self):
        m = CoefficientMap()
        m.add(3, Rat(1, 3))
        m.add(3, Rat(2, 3))
        m.add(7, Rat(1, 2))
        m.add(7, Rat(-1, 2))
        assert m[3] == 1
        assert len(m) == 1  # the exactly-cancelled key is dropped

    def test_equality_ignores_zeros(self):
        a = CoefficientMap({1: Rat(2)})
        b = CoefficientMap({1: Rat(2)})
        b.add(4, Rat(1))
        b.add(4, Rat(-1))
        assert a == b


class TestClosedSums:
    def test_binomial_partition_sum(self):
        c = Rat(1)
        for p in range(1, 8):
            xs = sample_generic(p, seed=100 + p, c=c, bound=40)
            for k in range(p + 1):
                total_a = total_b = Rat(0)
                for m1, m2 in enumerate_splits(p, 2, cards=(k, p - k)):
                    x1 = mask_values(xs.values, m1)
                    x2 = mask_values(xs.values, m2)
                    total_a += set_product("f", x2, x1, c)
                    total_b += set_product("f", x1, x2, c)
                assert total_a == comb(p, k)
                assert total_b == comb(p, k)

    def test_alternating_sum_vanishes(self):
        c = Rat(3, 2)
        for p in range(1, 7):
            xs = sample_generic(p, seed=200 + p, c=c, bound=40)
            total = Rat(0)
            for m1, m2 in enumerate_splits(p, 2):
                x1 = mask_values(xs.values, m1)
                x2 = mask_values(xs.values, m2)
                total += Rat(-1) ** len(x2) * set_product("f", x2, x1, c)
            assert total == 0

    def test_single_extraction_sum(self):
        c = Rat(1)
        for p in range(1, 9):
            ws = sample_generic(p, seed=300 + p, c=c, bound=40)
            assert single_extraction_sum(ws[0], ws, c) == 1

    def test_pole_extraction_sum(self):
        c = Rat(2)
        for p in range(1, 9):
            ws = sample_generic(p, seed=400 + p, c=c, bound=40)
            assert pole_extraction_sum(ws, ws[p // 2], c) == 1

    def test_bits_helpers(self):
        assert list(bits_of(0b1011)) == [0, 1, 3]
        assert mask_values((10, 11, 12, 13), 0b1010) == (11, 13)
