import math
import random
from fractions import Fraction

import pytest

from nevlab.algebra import (
    RATIONAL_FUNCTION,
    FieldMismatch,
    InhomogeneousInput,
    MultiPoly,
    PoleAtPoint,
    RationalFunction,
    ZeroDenominator,
    monomial_basis,
    normalize_degrees,
    poly_multiply,
    poly_specialize,
    rf_canonicalize,
)

from helpers import rand_rational_function, xvar


class TestRationalFunction:
    def test_common_factor_cancellation(self):
        # (z^2 - 1)/(z - 1) -> z + 1
        r = rf_canonicalize((-1, 0, 1), (-1, 1))
        assert r.num == (Fraction(1), Fraction(1))
        assert r.den == (Fraction(1),)

    def test_zero_normalization(self):
        r = rf_canonicalize((0,), (3, 1))
        assert r.is_zero
        assert r.den == (Fraction(1),)

    def test_monic_scaling(self):
        r = rf_canonicalize((0, 2), (2,))
        assert r == RationalFunction.z()

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominator):
            rf_canonicalize((1,), (0,))

    def test_field_axioms_randomized(self):
        rng = random.Random(7)
        for _ in range(40):
            a = rand_rational_function(rng)
            b = rand_rational_function(rng)
            c = rand_rational_function(rng)
            assert (a + b) + c == a + (b + c)
            assert a * (b + c) == a * b + a * c
            assert a + b == b + a
            assert a * b == b * a
            if not a.is_zero:
                assert a * (RationalFunction.from_fraction(1) / a) == 1

    def test_evaluate_and_pole(self):
        r = RationalFunction((1,), (-1, 1))  # 1/(z-1)
        assert r.evaluate(3) == Fraction(1, 2)
        with pytest.raises(PoleAtPoint):
            r.evaluate(1)

    def test_canonical_string(self):
        assert str(RationalFunction((Fraction(4, 6),), (1,))) == "2/3"
        assert str(RationalFunction((1, 0, 1), (-1, 1))) == "(z^2 + 1)/(z - 1)"


class TestMultiPoly:
    def test_difference_of_squares(self):
        x0, x1 = xvar(0, 2), xvar(1, 2)
        p = poly_multiply(x0 + x1, x0 - x1)
        assert p == x0 * x0 - x1 * x1

    def test_coefficient_carries_through(self):
        x0 = xvar(0, 2, RATIONAL_FUNCTION)
        x1 = xvar(1, 2, RATIONAL_FUNCTION)
        z = RationalFunction.z()
        p = poly_multiply(x0.scale(z), x1)
        assert p == (x0 * x1).scale(z)

    def test_multiply_identity(self):
        x0, x1, x2 = (xvar(i) for i in range(3))
        g = x0 * x2 - x1 * x1
        one = MultiPoly.constant(3, 1)
        assert poly_multiply(g, one) == g

    def test_field_mismatch(self):
        with pytest.raises(FieldMismatch):
            poly_multiply(xvar(0, 2), xvar(1, 2, RATIONAL_FUNCTION))

    def test_degree_conventions(self):
        assert MultiPoly.zero(3).degree is None
        assert MultiPoly.zero(3).is_homogeneous
        x0, x1 = xvar(0, 2), xvar(1, 2)
        assert (x0 + x1 * x1).degree is None
        assert not (x0 + x1 * x1).is_homogeneous
        assert (x0 * x0).degree == 2

    def test_specialize_direct(self):
        x0, x1, x2 = (xvar(i, 3, RATIONAL_FUNCTION) for i in range(3))
        z = RationalFunction.z()
        p = (x0 * x0).scale(z) + x1 * x2
        q = poly_specialize(p, 3)
        x0q, x1q, x2q = (xvar(i) for i in range(3))
        assert q == (x0q * x0q).scale(3) + x1q * x2q

    def test_specialize_pole(self):
        x0 = xvar(0, 3, RATIONAL_FUNCTION)
        p = x0.scale(RationalFunction((1,), (-1, 1)))  # (1/(z-1)) x0
        with pytest.raises(PoleAtPoint):
            poly_specialize(p, 1)

    def test_specialize_vanishing_term(self):
        x0, x1, x2 = (xvar(i, 3, RATIONAL_FUNCTION) for i in range(3))
        z = RationalFunction.z()
        p = (x0 * x0).scale(z - 2) + x1 * x1
        q = poly_specialize(p, 2)
        x1q = xvar(1)
        assert q == x1q * x1q

    def test_specialize_is_ring_homomorphism(self):
        rng = random.Random(11)
        from helpers import rand_poly

        for _ in range(15):
            p = rand_poly(rng, 3, 2, RATIONAL_FUNCTION)
            q = rand_poly(rng, 3, 3, RATIONAL_FUNCTION)
            for a in (0, 1, rng.randint(-20, 20)):
                try:
                    lhs = poly_specialize(p * q, a)
                    rhs = poly_specialize(p, a) * poly_specialize(q, a)
                except PoleAtPoint:
                    continue
                assert lhs == rhs

    def test_homogeneous_scaling_symbolic(self):
        # p(t x) = t^k p(x) with t = z over Q(z)
        rng = random.Random(3)
        from helpers import rand_poly

        z = RationalFunction.z()
        for degree in (1, 2, 3):
            p = rand_poly(rng, 3, degree, RATIONAL_FUNCTION)
            scaled = p.substitute_scaled_vars(z)
            assert scaled == p.scale(z ** degree)


class TestMonomialBasis:
    def test_binary_degree_two(self):
        assert monomial_basis(1, 2) == [(2, 0), (1, 1), (0, 2)]

    def test_counts(self):
        assert len(monomial_basis(2, 2)) == 6
        assert monomial_basis(2, 0) == [(0, 0, 0)]
        for M in range(5):
            for k in range(21):
                assert len(monomial_basis(M, k)) == math.comb(k + M, M)

    def test_descending_lex_order(self):
        basis = monomial_basis(2, 3)
        assert basis == sorted(basis, reverse=True)
        assert all(sum(e) == 3 for e in basis)


class TestNormalizeDegrees:
    def test_lcm_of_one_and_two(self):
        x0, x1 = xvar(0, 2), xvar(1, 2)
        d, out = normalize_degrees([x0, x1 * x1])
        assert d == 2
        assert out[0] == x0 * x0
        assert out[1] == x1 * x1

    def test_already_common(self):
        x0, x1, x2 = (xvar(i) for i in range(3))
        qs = [x0 * x0, x1 * x2, x2 * x2]
        d, out = normalize_degrees(qs)
        assert d == 2
        assert out == qs

    def test_lcm_two_three(self):
        x0, x1 = xvar(0, 2), xvar(1, 2)
        q1 = x0 * x0
        q2 = x1 * x1 * x1
        d, out = normalize_degrees([q1, q2])
        assert d == 6
        assert out[0] == q1 ** 3
        assert out[1] == q2 ** 2

    def test_inhomogeneous_rejected(self):
        x0, x1 = xvar(0, 2), xvar(1, 2)
        with pytest.raises(InhomogeneousInput):
            normalize_degrees([x0 + x1 * x1])
