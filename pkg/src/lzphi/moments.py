"""First-, second- and higher-order probabilistic parameters of observables.

The analytic path works in each family's own basis: exact azimuthal
Fourier moments for circular/rotor states, polar-overlap-factorized
tables for fixed-l spherical states, and oscillator ladder matrices for
the pendulum. The quadrature path re-derives every number on the
family's grid and serves as the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np
from numpy.polynomial import polynomial as P

from . import engine
from . import observables as obs
from . import states as st

MAX_CORRELATION_ORDER = 6


@dataclass(frozen=True)
class MomentSet:
    """Mean and standard deviation of one observable, with provenance."""

    mean: float
    std_dev: float
    provenance: str


@dataclass(frozen=True)
class Correlation:
    """Centered pair inner product; ``hermitized`` is its real part.

    The real part equals half the mean anticommutator of the centered
    operators whenever both orderings are defined, since swapping the
    sides conjugates the value.
    """

    value: complex
    hermitized: float


def mean(kind, state, *, method: str = "analytic", settings=None) -> float:
    """<A> = (Psi, A Psi)."""
    fam = obs.check_applicable(kind, state)
    settings = engine.resolve(settings)
    if method == "quadrature":
        grid = engine.state_grid(state, settings)
        vec = _centered_grid_vector(grid, kind, 1, 0.0)
        return float(np.real(grid.inner(_psi_vector(grid), vec)))
    if method != "analytic":
        raise ValueError(f"unknown method {method!r}")
    if fam == "pendulum":
        return _pendulum_mean(kind, state)
    c = st.coeff_vector(state)
    if kind.name == "Lz":
        return float(np.sum(np.abs(c) ** 2 * obs.lz_diagonal(obs.basis_of(state), state.hbar)))
    mat = obs.symbol_matrix(obs.kind_symbol(kind), obs.basis_of(state), settings.theta_nodes)
    return float(np.real(np.conj(c) @ mat @ c))


def std_dev(kind, state, *, method: str = "analytic", settings=None) -> float:
    """Standard deviation (C(A, A))^(1/2) of the observable in the state."""
    obs.check_applicable(kind, state)
    if method == "analytic" and st.family_of(state) == "pendulum":
        closed = _pendulum_closed_std(kind, state)
        if closed is not None:
            return closed
    mu = mean(kind, state, method=method, settings=settings)
    var = _pair_inner(kind, kind, 1, 1, mu, mu, state, method, settings)
    return math.sqrt(max(float(np.real(var)), 0.0))


def moment_set(kind, state, *, method: str = "analytic", settings=None) -> MomentSet:
    return MomentSet(
        mean=mean(kind, state, method=method, settings=settings),
        std_dev=std_dev(kind, state, method=method, settings=settings),
        provenance=method,
    )


def correlation(a, b, state, *, method: str = "analytic", settings=None) -> Correlation:
    """C(A, B) = (dA Psi, dB Psi) with dA = A - <A>."""
    mu_a = mean(a, state, method=method, settings=settings)
    mu_b = mean(b, state, method=method, settings=settings)
    value = _pair_inner(a, b, 1, 1, mu_a, mu_b, state, method, settings)
    return Correlation(value=complex(value), hermitized=float(np.real(value)))


def higher_correlation(a, b, r: int, s: int, state, *, method: str = "analytic", settings=None) -> complex:
    """((dA)^r Psi, (dB)^s Psi) for orders up to MAX_CORRELATION_ORDER."""
    if not (1 <= r <= MAX_CORRELATION_ORDER and 1 <= s <= MAX_CORRELATION_ORDER):
        raise ValueError(f"orders must be in 1..{MAX_CORRELATION_ORDER}, got r={r}, s={s}")
    mu_a = mean(a, state, method=method, settings=settings)
    mu_b = mean(b, state, method=method, settings=settings)
    return complex(_pair_inner(a, b, r, s, mu_a, mu_b, state, method, settings))


def commutator_mean(a, b, state, *, settings=None) -> complex:
    """<[A, B]> evaluated with the product rule inside the domain.

    Multiplicative pairs commute exactly; mixed pairs reduce to the mean
    of -i*hbar times the phi derivative of the multiplicative symbol.
    """
    fam_a = obs.check_applicable(a, state)
    obs.check_applicable(b, state)
    if a.name != "Lz" and b.name != "Lz":
        return 0.0 + 0.0j
    if a.name == "Lz" and b.name == "Lz":
        return 0.0 + 0.0j
    mult = b if a.name == "Lz" else a
    sign = 1.0 if a.name == "Lz" else -1.0
    if fam_a == "pendulum":
        deriv = obs.kind_symbol(mult).phi_derivative()
        val = _pendulum_symbol_mean(deriv, state)
    else:
        settings = engine.resolve(settings)
        c = st.coeff_vector(state)
        mat = obs.symbol_matrix(
            obs.kind_symbol(mult).phi_derivative(), obs.basis_of(state), settings.theta_nodes
        )
        val = complex(np.conj(c) @ mat @ c)
    return sign * (-1j) * state.hbar * val


def _pair_inner(a, b, r, s, mu_a, mu_b, state, method, settings):
    """((dA)^r Psi, (dB)^s Psi) dispatched on family and method."""
    settings = engine.resolve(settings)
    if method == "quadrature":
        grid = engine.state_grid(state, settings)
        va = _centered_grid_vector(grid, a, r, mu_a)
        vb = _centered_grid_vector(grid, b, s, mu_b)
        return grid.inner(va, vb)
    if method != "analytic":
        raise ValueError(f"unknown method {method!r}")
    fam = st.family_of(state)
    if fam == "pendulum":
        va = _pendulum_centered_vector(a, r, mu_a, state)
        vb = _pendulum_centered_vector(b, s, mu_b, state)
        return complex(np.conj(va) @ vb)
    c = st.coeff_vector(state)
    basis = obs.basis_of(state)
    nodes = settings.theta_nodes
    a_lz, b_lz = a.name == "Lz", b.name == "Lz"
    if a_lz and b_lz:
        d = obs.lz_diagonal(basis, state.hbar)
        return complex(np.sum(np.abs(c) ** 2 * (d - mu_a) ** r * (d - mu_b) ** s))
    if a_lz:
        left = (obs.lz_diagonal(basis, state.hbar) - mu_a) ** r * c
        mat = obs.symbol_matrix(_centered_symbol(b, mu_b) ** s, basis, nodes)
        return complex(np.conj(left) @ mat @ c)
    if b_lz:
        swapped = _pair_inner(b, a, s, r, mu_b, mu_a, state, method, settings)
        return np.conj(swapped)
    sym = (_centered_symbol(a, mu_a) ** r) * (_centered_symbol(b, mu_b) ** s)
    mat = obs.symbol_matrix(sym, basis, nodes)
    return complex(np.conj(c) @ mat @ c)


def _centered_symbol(kind, mu):
    return obs.kind_symbol(kind) - mu


# ---------------------------------------------------------------------------
# pendulum family: oscillator ladder matrices, exact in a padded number basis

def _ladder_ops(state, size):
    root = np.sqrt(np.arange(1.0, size))
    lower = np.diag(root, 1)
    raise_ = lower.T
    phi_m = math.sqrt(state.hbar / (2.0 * state.inertia * state.omega)) * (lower + raise_)
    lz_m = 1j * math.sqrt(state.hbar * state.inertia * state.omega / 2.0) * (raise_ - lower)
    return phi_m.astype(np.complex128), lz_m


def _pendulum_kind_matrix(kind, state, size):
    phi_m, lz_m = _ladder_ops(state, size)
    if kind.name == "Lz":
        return lz_m
    if kind.name == "Phi":
        return phi_m
    if kind.name == "PhiSquared":
        return phi_m @ phi_m
    raise ValueError(f"observable {kind} is not defined on the pendulum family")


def _pendulum_centered_vector(kind, power, mu, state):
    # bandwidth 2 per application of PhiSquared; pad so truncation is inert
    size = state.n + 2 * power + 6
    mat = _pendulum_kind_matrix(kind, state, size) - mu * np.eye(size)
    vec = np.zeros(size, dtype=np.complex128)
    vec[state.n] = 1.0
    for _ in range(power):
        vec = mat @ vec
    return vec


def _pendulum_mean(kind, state) -> float:
    if kind.name in ("Lz", "Phi"):
        return 0.0
    if kind.name == "PhiSquared":
        return state.hbar / (state.inertia * state.omega) * (state.n + 0.5)
    raise ValueError(f"observable {kind} is not defined on the pendulum family")


def _pendulum_closed_std(kind, state):
    n_half = state.n + 0.5
    if kind.name == "Lz":
        return math.sqrt(state.hbar * state.inertia * state.omega * n_half)
    if kind.name == "Phi":
        return math.sqrt(state.hbar / (state.inertia * state.omega) * n_half)
    return None


def _pendulum_symbol_mean(sym, state) -> complex:
    phi_poly = sym.phi_polynomial()
    size = state.n + 2 * len(phi_poly) + 6
    phi_m, _ = _ladder_ops(state, size)
    acc = np.zeros((size, size), dtype=np.complex128)
    pw = np.eye(size, dtype=np.complex128)
    for coeff in phi_poly:
        acc = acc + coeff * pw
        pw = pw @ phi_m
    return complex(acc[state.n, state.n])


# ---------------------------------------------------------------------------
# quadrature path: centered operator applications on the family grid

def _psi_vector(grid):
    return grid.psi


def _centered_grid_vector(grid, kind, power, mu):
    if isinstance(grid, engine.PendulumGrid):
        if kind.name == "Lz":
            return _binomial_combine(
                [grid.lz_pow(k) for k in range(power + 1)], power, mu, P.polyadd
            )
        centered = (_centered_symbol(kind, mu) ** power).phi_polynomial()
        return grid.multiply_phi_poly(grid.psi, centered)
    if kind.name == "Lz":
        return _binomial_combine(
            [grid.lz_pow(k) for k in range(power + 1)], power, mu, lambda x, y: x + y
        )
    vals = grid.symbol_values(obs.kind_symbol(kind))
    return (vals - mu) ** power * grid.psi


def _binomial_combine(powers, r, mu, add):
    total = None
    for k in range(r + 1):
        term = math.comb(r, k) * (-mu) ** (r - k) * powers[k]
        total = term if total is None else add(total, term)
    return total
