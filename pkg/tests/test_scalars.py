"""Kernel functions, set products, twist parameters, and generic sampling."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mbethe.errors import DomainError, ExhaustionError, PoleError
from mbethe.scalars import (ModelParams, Rat, SpectralSet, TwistData, is_generic,
                            kernel_f, kernel_g, kernel_h, rat, rat_str,
                            sample_generic, set_product, with_shifts)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12).map(Rat)
constants = st.fractions(min_value=-6, max_value=6, max_denominator=6).map(Rat).filter(lambda x: x != 0)


class TestRationalScalar:
    def test_lowest_terms_positive_denominator(self):
        x = rat(-6, 8)
        assert (x.numerator, x.denominator) == (-3, 4)
        assert rat(0, 5) == 0 and rat(0, 5).denominator == 1

    def test_serialization(self):
        assert rat_str(rat(3, 4)) == "3/4"
        assert rat_str(rat(8, 4)) == "2"
        assert rat_str(rat(-3, 9)) == "-1/3"

    def test_exact_field_ops(self):
        a, b = rat("2/3"), rat("-7/5")
        assert a + b == rat(-11, 15)
        assert a * b == rat(-14, 15)
        assert a / b == rat(-10, 21)
        assert a - a == 0


class TestKernels:
    def test_g_values(self):
        assert kernel_g(3, 1, 1) == Rat(1, 2)
        assert kernel_g(0, -2, 2) == 1

    def test_g_pole(self):
        with pytest.raises(PoleError) as err:
            kernel_g(2, 2, 1)
        assert err.value.kind == "g"

    def test_f_h_values(self):
        assert kernel_f(2, 1, 1) == 2
        assert kernel_h(2, 1, 1) == 2
        assert kernel_f(3, 2, 1) == 2
        assert 1 / kernel_f(1, 3, 1) == 2

    def test_f_pole(self):
        with pytest.raises(PoleError):
            kernel_f(Rat(1, 2), Rat(1, 2), 1)

    def test_h_total(self):
        assert kernel_h(5, 5, 3) == 1

    def test_shift_inversions(self):
        # g(u, v-c) = 1/h(u, v); h(u, v+c) = 1/g(u, v); f(u, v+c) = 1/f(v, u)
        u, v, c = Rat(5), Rat(1), Rat(1)
        assert kernel_g(u, v - c, c) == 1 / kernel_h(u, v, c)
        assert kernel_h(u, v + c, c) * kernel_g(u, v, c) == 1
        assert kernel_f(u, v + c, c) == 1 / kernel_f(v, u, c)

    @given(u=rationals, v=rationals, c=constants)
    @settings(max_examples=120)
    def test_symmetries(self, u, v, c):
        if u - v in (Rat(0), c, -c):
            return
        for fn in (kernel_g, kernel_f, kernel_h):
            assert fn(-u, -v, c) == fn(v, u, c)
            assert fn(u - c, v, c) == fn(u, v + c, c)
            # negating c swaps the arguments
            assert fn(u, v, -c) == fn(v, u, c)

    @given(u=rationals, v=rationals, c=constants)
    @settings(max_examples=120)
    def test_interrelations(self, u, v, c):
        if u == v:
            return
        g, f, h = kernel_g(u, v, c), kernel_f(u, v, c), kernel_h(u, v, c)
        assert f == 1 + g
        assert h == f / g


class TestSetProduct:
    def test_empty_conventions(self):
        assert set_product("f", Rat(7), (), 1) == 1
        assert set_product("f", (), (), 1) == 1
        assert set_product("g", (), SpectralSet([1, 2]), 1) == 1

    def test_double_product(self):
        assert set_product("f", (3, 5), (0,), 1) == Rat(8, 5)

    def test_complement_convention(self):
        bar_u = SpectralSet([1, 2, 4], "u")
        rest = bar_u.without(1)
        assert rest.values == (Rat(1), Rat(4))
        assert set_product("f", rest, bar_u[1], 1) == 0  # f(1,2) = 0 at c=1

    def test_singleton_matches_kernel(self):
        assert set_product("h", 5, 1, 2) == kernel_h(5, 1, 2)

    def test_permutation_invariance(self):
        a = SpectralSet([Rat(1, 2), 3, Rat(-7, 3)])
        b = SpectralSet([3, Rat(-7, 3), Rat(1, 2)])
        w = SpectralSet([9, Rat(5, 4)])
        assert set_product("f", a, w, 1) == set_product("f", b, w, 1)

    def test_pole_identifies_pair(self):
        with pytest.raises(PoleError) as err:
            set_product("f", (1, 5), (5, 7), 1)
        assert (err.value.left, err.value.right) == (Rat(5), Rat(5))

    def test_weight_product_kinds(self):
        class Weights:
            def lambda1(self, u):
                return Rat(u) + 1

            def lambda2(self, u):
                return 2 * Rat(u)

        w = Weights()
        assert set_product("lambda1", (1, 2, 3), None, w) == 2 * 3 * 4
        assert set_product("lambda2", (), None, w) == 1
        with pytest.raises(DomainError):
            set_product("lambda1", (1,), (2,), w)


class TestModelParams:
    def test_derived_values(self):
        p = ModelParams(1, 1, 2, 2, 3)
        assert p.mu == Rat(3, 2)
        assert p.beta1 == Rat(1, 2)
        assert p.beta2 == 1

    def test_untwisted(self):
        p = ModelParams(1)
        assert p.mu == 1 and p.beta1 == 0 and p.beta2 == 0

    def test_invalid(self):
        with pytest.raises(DomainError):
            ModelParams(1, 1, 1, kappa_plus=0)
        with pytest.raises(DomainError):
            ModelParams(1, 2, 3, 2, 3)  # rho1*rho2 == kp*km
        with pytest.raises(DomainError):
            ModelParams(0)

    def test_twist_data_swap(self):
        t = TwistData(Rat(1, 3), Rat(2, 5), Rat(7, 4))
        assert t.swapped() == TwistData(Rat(2, 5), Rat(1, 3), Rat(7, 4))
        assert t.swapped().swapped() == t


class TestSampling:
    def test_empty(self):
        assert len(sample_generic(0, seed=1)) == 0

    def test_deterministic(self):
        a = sample_generic(3, seed=7, bound=50)
        b = sample_generic(3, seed=7, bound=50)
        assert a.values == b.values

    def test_genericity_scan(self):
        c = Rat(2, 3)
        ctx = sample_generic(4, seed=1, c=c, bound=20)
        extra = sample_generic(5, context=with_shifts(c, ctx), seed=2, c=c,
                               bound=20)
        joint = list(ctx.values) + list(extra.values)
        bad = {Rat(0), c, -c}
        for i in range(len(joint)):
            for j in range(i + 1, len(joint)):
                assert joint[i] - joint[j] not in bad
        assert is_generic(c, ctx, extra)

    def test_exhaustion(self):
        with pytest.raises(ExhaustionError):
            sample_generic(40, seed=3, bound=1, c=1)

    def test_bad_bound(self):
        with pytest.raises(DomainError):
            sample_generic(1, bound=0)

    def test_checked_generic_constructor(self):
        ctx = SpectralSet([Rat(1, 2)])
        s = SpectralSet.generic([Rat(5), Rat(7)], c=1, context=(ctx,))
        assert s.values == (Rat(5), Rat(7))
        with pytest.raises(DomainError):
            SpectralSet.generic([Rat(3, 2)], c=1, context=(ctx,))  # differs by c
        with pytest.raises(DomainError):
            SpectralSet.generic([2, 2], c=1)  # repeated value
