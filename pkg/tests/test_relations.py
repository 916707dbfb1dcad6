import math

import numpy as np
import pytest

from lzphi import (
    LZ,
    PHI,
    SIN_PHI,
    THETA,
    CircularState,
    PendulumState,
    RelationId,
    RelationParams,
    RotorSuperposition,
    SphericalState,
    Verdict,
    delta_chi,
    evaluate,
    fourier_boundary_term,
    gamma,
)

from .conftest import random_rotor, random_spherical


class TestRestrictedRelation:
    def test_pendulum_ground_state_equality(self):
        report = evaluate(RelationId.R5, PendulumState(n=0))
        assert report.lhs == pytest.approx(0.5, abs=1e-10)
        assert report.rhs == pytest.approx(0.5)
        assert report.verdict == Verdict.SATISFIED_WITH_EQUALITY

    def test_pendulum_ladder(self):
        for n in range(11):
            report = evaluate(RelationId.R5, PendulumState(n=n))
            assert report.lhs == pytest.approx(n + 0.5, abs=1e-10)
            want = Verdict.SATISFIED_WITH_EQUALITY if n == 0 else Verdict.SATISFIED
            assert report.verdict == want

    def test_circular_violates_ungated_form(self):
        report = evaluate(RelationId.R5, CircularState(m=2))
        assert report.verdict == Verdict.VIOLATED

    def test_gate_blocks_circular(self):
        report = evaluate(RelationId.R33, CircularState(m=4))
        assert report.verdict == Verdict.NOT_APPLICABLE
        assert report.condition31 is False
        assert report.diagnostics["deficit_abs"] == pytest.approx(1.0)

    def test_gate_admits_pendulum(self):
        report = evaluate(RelationId.R33, PendulumState(n=1))
        assert report.condition31 is True
        assert report.verdict == Verdict.SATISFIED

    def test_gate_admits_balanced_spherical(self):
        state = SphericalState(l=1, coefficients=(2**-0.5, 0, 2**-0.5))
        report = evaluate(RelationId.R33, state)
        assert report.condition31 is True
        assert report.verdict == Verdict.SATISFIED


class TestAlternativeInequalities:
    def test_r6_degenerates_on_circular(self):
        report = evaluate(RelationId.R6, CircularState(m=1))
        assert report.verdict == Verdict.INDETERMINATE
        assert abs(report.diagnostics["denominator"]) < 1e-12

    def test_r7_negative_denominator(self):
        report = evaluate(RelationId.R7, CircularState(m=1))
        assert report.verdict == Verdict.INDETERMINATE
        assert report.diagnostics["denominator"] < 0

    def test_r14_circular(self):
        report = evaluate(RelationId.R14, CircularState(m=5))
        assert report.lhs == pytest.approx(math.pi**2 / 3, abs=1e-9)
        assert report.rhs == pytest.approx(1.0)
        assert report.verdict == Verdict.SATISFIED

    def test_r8_requires_alpha(self):
        with pytest.raises(ValueError):
            evaluate(RelationId.R8, CircularState(m=1))

    def test_r8_rhs_formula(self):
        alpha = 1.5
        report = evaluate(RelationId.R8, CircularState(m=1), RelationParams(alpha=alpha))
        want = 0.5 * (math.sqrt(9 / math.pi**2 + alpha**2) - 3 / math.pi**2)
        assert report.rhs == pytest.approx(want, rel=1e-12)

    def test_r10_r11_on_circular(self):
        # as printed, the right side keeps <cos^2> and an eigenstate violates
        r10 = evaluate(RelationId.R10, CircularState(m=2))
        assert r10.rhs == pytest.approx(1 / 8)
        assert r10.verdict == Verdict.VIOLATED
        r11 = evaluate(RelationId.R11, CircularState(m=2))
        assert r11.rhs == pytest.approx(1 / 8)

    def test_r12_uses_printed_width(self):
        report = evaluate(RelationId.R12, CircularState(m=0), RelationParams(N=1, N1=0))
        assert report.diagnostics["delta_chi"] == pytest.approx(delta_chi(1, 0))
        assert report.verdict == Verdict.VIOLATED  # dLz = 0 on an eigenstate

    def test_r12_rejects_equal_windings(self):
        with pytest.raises(ValueError):
            evaluate(RelationId.R12, CircularState(m=0), RelationParams(N=1, N1=1))


class TestSchwarzRelation:
    def test_trivial_equality_on_circular(self):
        report = evaluate(RelationId.R30, CircularState(m=4))
        assert report.lhs == 0
        assert report.rhs == 0
        assert report.verdict == Verdict.SATISFIED_WITH_EQUALITY
        assert report.diagnostics.get("trivial_zero") == 1.0

    def test_never_violated_across_families(self, fixture_states):
        for state in fixture_states:
            report = evaluate(RelationId.R30, state)
            assert report.verdict != Verdict.VIOLATED


class TestBoundaryRelation:
    def test_circular_degenerates_to_zero(self):
        for m in (-3, 0, 2):
            report = evaluate(RelationId.R52, CircularState(m=m))
            assert report.lhs == pytest.approx(0.0, abs=1e-10)
            assert report.rhs == pytest.approx(0.0, abs=1e-10)
            assert report.verdict == Verdict.SATISFIED_WITH_EQUALITY

    def test_boundary_term_values(self):
        assert fourier_boundary_term(CircularState(m=5)) == pytest.approx(0.0, abs=1e-12)
        full = RotorSuperposition({0: 2**-0.5, 1: 2**-0.5})
        assert fourier_boundary_term(full) == pytest.approx(1.0, abs=1e-12)
        single = RotorSuperposition({0: 1.0})
        assert fourier_boundary_term(single) == pytest.approx(0.0, abs=1e-12)

    def test_r15_matches_r52(self):
        state = RotorSuperposition({0: 0.6, 1: 0.8})
        a = evaluate(RelationId.R15, state)
        b = evaluate(RelationId.R52, state)
        assert (a.lhs, a.rhs) == (b.lhs, b.rhs)

    def test_rejects_spherical(self):
        with pytest.raises(ValueError):
            evaluate(RelationId.R52, SphericalState(l=1, coefficients=(1, 0, 0)))

    def test_holds_on_random_rotors(self):
        rng = np.random.default_rng(31)
        for _ in range(50):
            report = evaluate(RelationId.R52, random_rotor(rng))
            assert report.verdict != Verdict.VIOLATED


class TestGamma:
    def test_normalization(self):
        assert gamma(2, 1, 1) == pytest.approx(1.0, abs=1e-10)

    def test_magnitudes_of_reflected_orders(self):
        assert abs(gamma(2, 1, -1)) == pytest.approx(1.0, abs=1e-10)
        assert abs(gamma(2, 2, -2)) == pytest.approx(1.0, abs=1e-10)
        # the signed values follow the Condon-Shortley reflection rule
        assert gamma(2, 1, -1) == pytest.approx(-1.0, abs=1e-10)
        assert gamma(2, 2, -2) == pytest.approx(1.0, abs=1e-10)

    def test_parity_zero(self):
        assert gamma(2, 2, 1) == pytest.approx(0.0, abs=1e-10)

    def test_rejects_bad_orders(self):
        with pytest.raises(ValueError):
            gamma(2, 3, 0)


class TestDeltaChi:
    def test_rejects_equal(self):
        with pytest.raises(ValueError):
            delta_chi(0, 0)

    def test_printed_value(self):
        assert delta_chi(1, 0) == pytest.approx(math.pi * math.sqrt(25 / 6), rel=1e-12)

    def test_negative_radicand(self):
        with pytest.raises(ValueError, match="radicand"):
            delta_chi(0, 1)


class TestSphericalRelation:
    def test_never_violated_on_random_states(self):
        rng = np.random.default_rng(99)
        for _ in range(100):
            l = int(rng.integers(1, 4))
            report = evaluate(RelationId.R58, random_spherical(rng, l))
            assert report.lhs >= report.rhs - 1e-9

    def test_balanced_state_has_active_bound(self):
        state = SphericalState(l=1, coefficients=(2**-0.5, 0, 2**-0.5))
        report = evaluate(RelationId.R58, state)
        assert report.rhs == pytest.approx(0.5, abs=1e-9)
        assert report.verdict == Verdict.SATISFIED


class TestCommutingPair:
    def test_nonzero_bound_with_zero_commutator(self):
        state = SphericalState(l=1, coefficients={0: math.cos(0.7), 1: 1j * math.sin(0.7)})
        report = evaluate(RelationId.R36, state)
        assert report.rhs > 0.01
        assert report.verdict == Verdict.SATISFIED
        from lzphi import commutator_mean

        assert abs(commutator_mean(THETA, PHI, state)) < 1e-10

    def test_real_mixtures_degenerate(self):
        state = SphericalState(l=1, coefficients={-1: math.cos(0.5), 1: math.sin(0.5)})
        report = evaluate(RelationId.R36, state)
        assert report.rhs == pytest.approx(0.0, abs=1e-10)


class TestGenericPair:
    def test_pendulum_recovers_restricted_bound(self):
        report = evaluate(RelationId.R60, PendulumState(n=2), RelationParams(pair=(LZ, PHI)))
        assert report.rhs == pytest.approx(0.5, abs=1e-12)
        assert report.lhs == pytest.approx(2.5, abs=1e-10)
        assert report.condition31 is True

    def test_gate_blocks_circular(self):
        report = evaluate(RelationId.R60, CircularState(m=1), RelationParams(pair=(LZ, PHI)))
        assert report.verdict == Verdict.NOT_APPLICABLE

    def test_bounded_symbol_pair_applies_on_circle(self):
        report = evaluate(RelationId.R60, CircularState(m=1), RelationParams(pair=(LZ, SIN_PHI)))
        assert report.condition31 is True
        assert report.verdict != Verdict.NOT_APPLICABLE

    def test_requires_pair(self):
        with pytest.raises(ValueError):
            evaluate(RelationId.R60, CircularState(m=1))


class TestScaleCovariance:
    @pytest.mark.parametrize("scale", [0.5, 2.0, 7.0])
    def test_hbar_scales_both_sides(self, scale):
        base = evaluate(RelationId.R5, PendulumState(n=3))
        scaled = evaluate(RelationId.R5, PendulumState(n=3, hbar=scale))
        assert scaled.lhs == pytest.approx(scale * base.lhs, rel=1e-12)
        assert scaled.rhs == pytest.approx(scale * base.rhs, rel=1e-12)
        assert scaled.verdict == base.verdict

    def test_gated_relation_verdict_invariant(self):
        for scale in (0.5, 3.0):
            report = evaluate(RelationId.R33, CircularState(m=2, hbar=scale))
            assert report.verdict == Verdict.NOT_APPLICABLE
            assert report.diagnostics["deficit_abs"] == pytest.approx(scale)


def test_family_mismatch_raises():
    with pytest.raises(ValueError):
        evaluate(RelationId.R36, CircularState(m=0))
    with pytest.raises(ValueError):
        evaluate(RelationId.R58, PendulumState(n=0))
