import math

import numpy as np
import pytest

from lzphi import (
    LZ,
    PHI,
    PHI_SQUARED,
    SIN_PHI,
    COS_PHI,
    THETA,
    THETA_PHI,
    CircularState,
    PendulumState,
    RotorBasis,
    SphericalBasis,
    SphericalState,
    chi,
    lz_phi_symmetry_deficit,
    matrix_element,
    matrix_table,
    symmetry_deficit,
)
from lzphi.observables import ObservableKind

from .conftest import random_spherical
from .oracles import SphericalOracle

ROTOR_7 = RotorBasis(tuple(range(-3, 4)))


class TestRotorElements:
    def test_phi_diagonal_is_pi(self):
        assert matrix_element(PHI, ROTOR_7, 2, 2) == pytest.approx(math.pi)

    def test_phi_off_diagonal(self):
        # (1/2pi) int phi e^{i phi} dphi = -i by parts
        assert matrix_element(PHI, ROTOR_7, 0, 1) == pytest.approx(-1j)
        assert matrix_element(PHI, ROTOR_7, 1, 0) == pytest.approx(1j)
        assert matrix_element(PHI, ROTOR_7, -1, 2) == pytest.approx(1j / (-1 - 2))

    def test_sin_element(self):
        assert matrix_element(SIN_PHI, ROTOR_7, 0, 1) == pytest.approx(0.5j)

    def test_lz_is_diagonal(self):
        table = matrix_table(LZ, ROTOR_7, hbar=2.0)
        assert table.element(3, 3) == pytest.approx(6.0)
        assert table.element(1, 2) == 0.0

    def test_trig_tables_are_banded(self):
        for kind in (SIN_PHI, COS_PHI):
            table = matrix_table(kind, ROTOR_7)
            for i, mi in enumerate(ROTOR_7.ms):
                for j, mj in enumerate(ROTOR_7.ms):
                    if abs(mi - mj) != 1:
                        assert abs(table.matrix[i, j]) < 1e-12

    def test_chi_shifts_the_diagonal(self):
        table = matrix_table(chi(3), ROTOR_7)
        assert table.element(0, 0) == pytest.approx(math.pi + 6 * math.pi)
        assert table.element(0, 1) == pytest.approx(matrix_element(PHI, ROTOR_7, 0, 1))


class TestHermiticity:
    @pytest.mark.parametrize("kind", [LZ, PHI, PHI_SQUARED, SIN_PHI, COS_PHI])
    def test_rotor_tables(self, kind):
        mat = matrix_table(kind, ROTOR_7).matrix
        assert np.max(np.abs(mat - mat.conj().T)) < 1e-10

    @pytest.mark.parametrize("kind", [LZ, PHI, PHI_SQUARED, SIN_PHI, COS_PHI, THETA, THETA_PHI])
    def test_spherical_tables(self, kind):
        mat = matrix_table(kind, SphericalBasis(2)).matrix
        assert np.max(np.abs(mat - mat.conj().T)) < 1e-10


class TestAnalyticVersusQuadrature:
    @pytest.mark.parametrize("kind", [LZ, PHI, PHI_SQUARED, SIN_PHI, COS_PHI, chi(1)])
    def test_rotor_all_kinds(self, kind):
        basis = RotorBasis(tuple(range(-6, 7)))
        exact = matrix_table(kind, basis).matrix
        oracle = matrix_table(kind, basis, method="quadrature").matrix
        assert np.max(np.abs(exact - oracle)) < 1e-9

    @pytest.mark.parametrize("l", [1, 2, 3, 4])
    @pytest.mark.parametrize("kind", [LZ, PHI, PHI_SQUARED, SIN_PHI, COS_PHI, THETA, THETA_PHI])
    def test_spherical_all_kinds(self, kind, l):
        basis = SphericalBasis(l)
        exact = matrix_table(kind, basis).matrix
        oracle = matrix_table(kind, basis, method="quadrature").matrix
        assert np.max(np.abs(exact - oracle)) < 1e-9

    def test_provenance_labels(self):
        assert matrix_table(PHI, ROTOR_7).provenance == "analytic"
        assert matrix_table(PHI, SphericalBasis(1)).provenance == "quadrature"
        assert matrix_table(LZ, SphericalBasis(1)).provenance == "analytic"


class TestKindValidation:
    def test_theta_rejected_on_rotor(self):
        with pytest.raises(ValueError):
            matrix_table(THETA, ROTOR_7)

    def test_unknown_kind_name(self):
        with pytest.raises(ValueError):
            ObservableKind("Momentum")

    def test_winding_only_for_chi(self):
        with pytest.raises(ValueError):
            ObservableKind("Phi", winding=2)


class TestSymmetryDeficit:
    def test_circular_is_i_hbar(self):
        for m in range(-5, 6):
            assert lz_phi_symmetry_deficit(CircularState(m=m)) == pytest.approx(1j)
        assert lz_phi_symmetry_deficit(CircularState(m=2, hbar=3.0)) == pytest.approx(3j)

    def test_pendulum_is_zero(self):
        assert lz_phi_symmetry_deficit(PendulumState(n=0)) == 0
        quad = lz_phi_symmetry_deficit(PendulumState(n=4), method="quadrature")
        assert abs(quad) < 1e-10

    def test_single_coefficient_spherical(self):
        state = SphericalState(l=1, coefficients=(0, 1, 0))
        assert lz_phi_symmetry_deficit(state) == pytest.approx(1j, abs=1e-12)

    def test_spherical_against_independent_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            l = int(rng.integers(1, 4))
            state = random_spherical(rng, l)
            oracle = SphericalOracle(l, state.coefficients)
            got = lz_phi_symmetry_deficit(state)
            assert got == pytest.approx(oracle.deficit_lz_phi(), abs=1e-9)

    def test_quadrature_method_matches_closed_form(self, fixture_states):
        for state in fixture_states:
            closed = lz_phi_symmetry_deficit(state)
            quad = lz_phi_symmetry_deficit(state, method="quadrature")
            assert abs(closed - quad) < 1e-9

    def test_multiplicative_pairs_have_no_deficit(self):
        state = SphericalState(l=2, coefficients=(0, 0.6, 0, 0.8j, 0))
        assert symmetry_deficit(THETA, PHI, state) == 0
        assert abs(symmetry_deficit(THETA, PHI, state, method="quadrature")) < 1e-12

    def test_lz_with_bounded_symbols_has_no_deficit(self):
        state = _mixed_rotor()
        assert symmetry_deficit(LZ, SIN_PHI, state) == 0
        assert abs(symmetry_deficit(LZ, SIN_PHI, state, method="quadrature")) < 1e-12

    def test_lz_phi_squared_deficit_matches_quadrature(self):
        state = _mixed_rotor()
        closed = symmetry_deficit(LZ, PHI_SQUARED, state)
        quad = symmetry_deficit(LZ, PHI_SQUARED, state, method="quadrature")
        assert closed == pytest.approx(quad, abs=1e-8)

    def test_deficit_linearity_on_random_states(self):
        """Closed form against direct quadrature for 100 seeded states."""
        rng = np.random.default_rng(77)
        for _ in range(100):
            l = int(rng.integers(1, 4))
            state = random_spherical(rng, l)
            closed = lz_phi_symmetry_deficit(state)
            quad = lz_phi_symmetry_deficit(state, method="quadrature")
            assert abs(closed - quad) < 1e-9


def _mixed_rotor():
    from lzphi import RotorSuperposition

    return RotorSuperposition({-1: 0.6, 1: 0.8})
