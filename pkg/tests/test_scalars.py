"""Base field and Laurent arithmetic: worked examples plus ring laws."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from affinelie.scalars import CycScalar, LaurentElt


class TestCycScalar:
    def test_zeta3_times_zeta3_squared_is_one(self):
        z = CycScalar.zeta(3)
        assert z * (z * z) == CycScalar.one(3)

    def test_zeta3_square_reduces_mod_cyclotomic(self):
        z = CycScalar.zeta(3)
        assert z * z == CycScalar(3, -1, -1)

    def test_zeta2_square_is_one(self):
        z = CycScalar.zeta(2)
        assert z == CycScalar(2, -1)
        assert z * z == CycScalar.one(2)

    def test_mixed_orders_rejected(self):
        with pytest.raises(ValueError):
            CycScalar(2, 1) * CycScalar(3, 1)

    def test_inverse(self):
        for a, b in [(2, 0), (Fraction(1, 3), 0), (1, 1), (Fraction(-2, 7), 3)]:
            x = CycScalar(3, a, b)
            assert x * x.inverse() == CycScalar.one(3)

    def test_zero_has_no_inverse(self):
        with pytest.raises(ZeroDivisionError):
            CycScalar.zero(3).inverse()

    def test_unsupported_order(self):
        with pytest.raises(ValueError):
            CycScalar(4, 1)

    def test_canonical_form_low_order(self):
        # zeta folds into the rational part for m = 1, 2
        assert CycScalar(1, 0, 5) == CycScalar(1, 5)
        assert CycScalar(2, 0, 5) == CycScalar(2, -5)
        assert CycScalar(2, 1).coeffs == (Fraction(1),)

    def test_power(self):
        z = CycScalar.zeta(3)
        assert z ** 3 == CycScalar.one(3)
        assert z ** -1 == z * z
        assert CycScalar(1, 2) ** 10 == CycScalar(1, 1024)


scalars3 = st.builds(
    lambda a, b: CycScalar(3, a, b),
    st.fractions(max_denominator=6, min_value=-5, max_value=5),
    st.fractions(max_denominator=6, min_value=-5, max_value=5),
)


class TestFieldLaws:
    @given(x=scalars3, y=scalars3, z=scalars3)
    def test_mul_associative_distributive(self, x, y, z):
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z

    @given(x=scalars3, y=scalars3)
    def test_mul_commutative(self, x, y):
        assert x * y == y * x

    @given(x=scalars3)
    def test_field_inverse(self, x):
        if x:
            assert x * x.inverse() == CycScalar.one(3)


def laurent_strategy(m):
    return st.builds(
        lambda items: LaurentElt(m, dict(items)),
        st.lists(st.tuples(st.integers(-6, 6), st.integers(-5, 5)), max_size=4),
    )


class TestLaurent:
    def test_substitute_scale(self):
        # s -> zeta*s on s^2 multiplies by zeta^2
        m = 3
        z = CycScalar.zeta(m)
        p = LaurentElt.s_power(m, 2)
        assert p.substitute(z) == LaurentElt.s_power(m, 2, z * z)

    def test_substitute_invert(self):
        p = LaurentElt(1, {0: 1, 3: 1})
        assert p.substitute(CycScalar.one(1), invert=True) == LaurentElt(1, {0: 1, -3: 1})

    def test_substitute_scale_negative_exponent(self):
        # s -> 2s sends 3 s^-1 to (3/2) s^-1
        p = LaurentElt.s_power(1, -1, 3)
        expected = LaurentElt.s_power(1, -1, Fraction(3, 2))
        assert p.substitute(CycScalar(1, 2)) == expected

    def test_substitute_zero_scale_rejected(self):
        with pytest.raises(ValueError):
            LaurentElt.one(2).substitute(CycScalar.zero(2))

    def test_gamma_invariance(self):
        assert LaurentElt.t_power(3, 1).gamma_invariant()          # t = s^m
        assert not LaurentElt.s_power(2, 1).gamma_invariant()      # bare s
        assert LaurentElt(2, {0: 1, -4: 5}).gamma_invariant()      # 1 + 5 t^-2

    def test_no_zero_terms_stored(self):
        p = LaurentElt(2, {1: 3}) - LaurentElt(2, {1: 3})
        assert p.terms == {} and p.is_zero()

    def test_product_support_is_sumset(self):
        p = LaurentElt(2, {1: 1, 3: 2})
        q = LaurentElt(2, {-1: 1, 0: 5})
        assert set((p * q).terms) <= {a + b for a in (1, 3) for b in (-1, 0)}

    @given(p=laurent_strategy(2), q=laurent_strategy(2), r=laurent_strategy(2))
    @settings(max_examples=60)
    def test_ring_axioms(self, p, q, r):
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p * q == q * p

    @given(p=laurent_strategy(3))
    @settings(max_examples=40)
    def test_zeta_scale_has_order_m(self, p):
        q = p
        for _ in range(3):
            q = q.zeta_scale()
        assert q == p

    @given(p=laurent_strategy(2))
    def test_substitution_is_ring_morphism(self, p):
        a = CycScalar(2, Fraction(3, 2))
        q = LaurentElt(2, {1: 2, -2: 1})
        assert (p * q).substitute(a) == p.substitute(a) * q.substitute(a)
