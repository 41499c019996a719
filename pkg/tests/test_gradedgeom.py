import random
from fractions import Fraction

import pytest

from nevlab.algebra import (
    RATIONAL_FUNCTION,
    RationalFunction,
)
from nevlab.gradedgeom import (
    ADMISSIBLE,
    NOT_ADMISSIBLE_EVIDENCE,
    HomogeneousIdeal,
    NotStabilized,
    admissibility_check,
    hilbert_function,
    ideal_graded_piece,
    nullstellensatz_certificate,
    specialize_space,
    variety_invariants,
)
from nevlab.linear import GradedSubspace

from helpers import conic_ideal, p1_ideal, twisted_cubic_ideal, xvar


class TestGradedPieces:
    def test_conic_degree_two(self):
        J = conic_ideal()
        assert J.graded_piece(2).dim == 1

    def test_conic_degree_three(self):
        # Oracle: rank of the 3x10 matrix of linear multiples (test_linear
        # checks that rank directly).
        J = conic_ideal()
        assert J.graded_piece(3).dim == 3

    def test_extra_generator_multiples(self):
        J = HomogeneousIdeal(2, [])
        x0 = xvar(0, 2)
        piece = ideal_graded_piece(J, [x0], 2)
        assert piece.dim == 2  # x0^2, x0x1


class TestHilbert:
    def test_empty_ideal(self):
        J = HomogeneousIdeal(3, [])
        assert hilbert_function(J, 4) == 15

    def test_conic_closed_form(self):
        # Independent oracle: H(N) = binom(N+2,2) - binom(N,2) = 2N + 1.
        J = conic_ideal()
        for N in range(1, 9):
            assert hilbert_function(J, N) == 2 * N + 1

    def test_irrelevant_ideal(self):
        J = HomogeneousIdeal(3, [xvar(0), xvar(1), xvar(2)])
        for k in range(1, 5):
            assert hilbert_function(J, k) == 0

    def test_weakly_decreasing_under_more_generators(self):
        J1 = conic_ideal()
        x0, x1, x2 = (xvar(i) for i in range(3))
        J2 = HomogeneousIdeal(3, [x0 * x2 - x1 * x1, x0 * x0])
        for k in range(0, 8):
            assert hilbert_function(J2, k) <= hilbert_function(J1, k)


class TestVarietyInvariants:
    def test_conic(self):
        assert variety_invariants(conic_ideal(), 8) == (1, 2)

    def test_p1(self):
        assert variety_invariants(p1_ideal(), 6) == (1, 1)

    def test_twisted_cubic(self):
        J = twisted_cubic_ideal()
        # Oracle: H(N) = 3N + 1 for the rational normal curve of degree 3.
        for N in range(1, 7):
            assert hilbert_function(J, N) == 3 * N + 1
        assert variety_invariants(J, 7) == (1, 3)

    def test_not_stabilized(self):
        with pytest.raises(NotStabilized):
            variety_invariants(p1_ideal(), 2, window=3)


class TestSpecializeSpace:
    def _span(self, polys, k):
        from nevlab.algebra import monomial_basis

        nvars = polys[0].nvars
        basis = monomial_basis(nvars - 1, k)
        rows = [p.coefficient_vector(basis) for p in polys]
        return GradedSubspace.from_rows(rows, ambient_degree=k, nvars=nvars,
                                        cols=len(basis), field=polys[0].field)

    def test_vanishing_leading_coefficient(self):
        z = RationalFunction.z()
        x0 = xvar(0, 2, RATIONAL_FUNCTION)
        x1 = xvar(1, 2, RATIONAL_FUNCTION)
        W = self._span([x0.scale(z) + x1], 1)
        Wa = specialize_space(W, 0)
        assert Wa.dim == 1
        ok, _ = Wa.reduce_vector([Fraction(0), Fraction(1)])
        assert not any(ok)  # x1 spans it

    def test_dependent_generators_collapse_first(self):
        z = RationalFunction.z()
        x0 = xvar(0, 2, RATIONAL_FUNCTION)
        W = self._span([x0, x0.scale(z)], 1)
        assert W.dim == 1
        assert specialize_space(W, 5).dim == 1

    def test_conic_dimension_preserved_at_random_points(self):
        # Equation-style check: the ideal piece over Q(z) has the same
        # dimension as over Q, and random specializations keep it.
        rng = random.Random(2)
        J = conic_ideal()
        Jz = J.lift()
        for N in (2, 4, 6):
            piece_q = J.graded_piece(N)
            piece_z = Jz.graded_piece(N)
            assert piece_q.dim == piece_z.dim
            for _ in range(5):
                a = rng.randint(-997, 997)
                assert specialize_space(piece_z, a).dim == piece_z.dim

    def test_rank_drop_only_at_detectable_points(self):
        # span{x0 + z x1, x0 + 2 x1}: dimension 2 over Q(z), dropping to 1
        # exactly at z = 2.  Random draws either preserve the dimension or
        # hit that detectable point.
        z = RationalFunction.z()
        x0 = xvar(0, 2, RATIONAL_FUNCTION)
        x1 = xvar(1, 2, RATIONAL_FUNCTION)
        W = self._span([x0 + x1.scale(z), x0 + x1.scale(2)], 1)
        assert W.dim == 2
        rng = random.Random(4)
        preserved = 0
        for _ in range(10):
            a = rng.randint(-997, 997)
            dim = specialize_space(W, a).dim
            if dim == W.dim:
                preserved += 1
            else:
                assert a == 2
        assert preserved >= 9

    def test_cleared_pole_still_specializes(self):
        # span{x0/(z-1)} is the same line as span{x0}: the value space at
        # z = 1 is span{x0} (take the representative (z-1) * generator).
        x0 = xvar(0, 2, RATIONAL_FUNCTION)
        W = self._span([x0.scale(RationalFunction((1,), (-1, 1)))], 1)
        Wa = specialize_space(W, 1)
        assert Wa.dim == 1
        rem, _ = Wa.reduce_vector([Fraction(1), Fraction(0)])
        assert not any(rem)


class TestNullstellensatz:
    def test_p1_one_step(self):
        J = p1_ideal()
        x0, x1 = xvar(0, 2), xvar(1, 2)
        cert = nullstellensatz_certificate(J, [x0, x1 - x0.scale(3)], 4)
        assert cert is not None and cert.s == 1
        assert cert.verify()

    def test_p1_shared_zero_never_found(self):
        J = p1_ideal()
        x0 = xvar(0, 2)
        for s_max in (2, 5, 8):
            assert nullstellensatz_certificate(J, [x0, x0.scale(5)], s_max) is None

    def test_conic_pair(self):
        J = conic_ideal()
        cert = nullstellensatz_certificate(J, [xvar(0), xvar(2)], 4)
        assert cert is not None and cert.s == 2
        assert cert.verify()

    def test_function_field_certificate(self):
        # over Q(z) itself: x1 = (x1 - z*x0) + z*x0, cofactors in the
        # function field rather than at a specialized witness
        J = p1_ideal().lift()
        z = RationalFunction.z()
        x0 = xvar(0, 2, RATIONAL_FUNCTION)
        x1 = xvar(1, 2, RATIONAL_FUNCTION)
        cert = nullstellensatz_certificate(J, [x0, x1 - x0.scale(z)], 3)
        assert cert is not None and cert.s == 1
        assert cert.verify()
        cofactor_on_x0 = cert.cofactors[1][0]
        assert cofactor_on_x0.terms[(0, 0)] == z


class TestAdmissibility:
    def test_p1_moving_pair_admissible(self):
        J = p1_ideal()
        z = RationalFunction.z()
        x0 = xvar(0, 2, RATIONAL_FUNCTION)
        x1 = xvar(1, 2, RATIONAL_FUNCTION)
        reports = admissibility_check(J, [x0, x1 - x0.scale(z)], n=1,
                                      trials=5, s_max=4, seed=1)
        assert len(reports) == 1
        rep = reports[0]
        assert rep.status == ADMISSIBLE
        assert all(c.s == 1 for c in rep.certificates)
        # stability: certificates at every witness once one succeeds
        assert rep.witnesses_succeeded >= len(rep.witnesses_tried) - 1
        for cert in rep.certificates:
            assert cert.certificate.verify()

    def test_p1_degenerate_pair_evidence(self):
        J = p1_ideal()
        z = RationalFunction.z()
        x0 = xvar(0, 2, RATIONAL_FUNCTION)
        reports = admissibility_check(J, [x0, x0.scale(z)], n=1, trials=3,
                                      s_max=4, seed=2)
        rep = reports[0]
        assert rep.status == NOT_ADMISSIBLE_EVIDENCE
        assert rep.evidence_value == 1
        assert rep.warning is not None

    def test_conic_squares_mixed(self):
        J = conic_ideal()
        x0, x1, x2 = (xvar(i) for i in range(3))
        Qs = [(x0 * x0).lift(), (x2 * x2).lift(), (x1 * x1).lift()]
        reports = admissibility_check(J, Qs, n=1, trials=3, s_max=4, seed=3)
        by_subset = {r.subset: r for r in reports}
        # {x0^2, x2^2} has no common zero on V: certificate with s <= 4.
        assert by_subset[(0, 1)].status == ADMISSIBLE
        assert all(c.s <= 4 for c in by_subset[(0, 1)].certificates)
        # pairs with x1^2 share (0:0:1) resp. (1:0:0) on V: evidence only.
        assert by_subset[(0, 2)].status == NOT_ADMISSIBLE_EVIDENCE
        assert by_subset[(1, 2)].status == NOT_ADMISSIBLE_EVIDENCE

    def test_certificates_reverify_exactly(self):
        J = conic_ideal()
        x0, x2 = xvar(0), xvar(2)
        Qs = [(x0 * x0).lift(), (x2 * x2).lift()]
        reports = admissibility_check(J, Qs, n=1, trials=4, s_max=4, seed=9)
        for rep in reports:
            for cert in rep.certificates:
                assert cert.certificate.verify()

    def test_lifted_ideal_dimensions_match(self):
        # dim over Q(z) of the lifted ideal piece equals the dim over Q,
        # for constant-coefficient generators (the matrices coincide).
        J = conic_ideal()
        Jz = J.lift()
        for N in range(0, 11):
            assert Jz.graded_piece(N).dim == J.graded_piece(N).dim
