"""The four rotational state families, with exact normalization metadata.

All states are immutable value objects. ``hbar`` (and, where relevant,
``inertia`` / ``omega``) live on the state so mixed-unit sweeps work;
the dimensionless default is hbar = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math
from typing import Mapping, Union

import numpy as np

from . import numerics
from .numerics import TWO_PI

#: |sum |c|^2 - 1| beyond this is rejected unless normalize=True rescales
NORM_INPUT_TOL = 1e-6


@dataclass(frozen=True)
class CircularState:
    """Single angular-momentum eigenstate exp(i*m*phi)/sqrt(2*pi) on [0, 2*pi]."""

    m: int
    hbar: float = 1.0

    def __post_init__(self):
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")


@dataclass(frozen=True)
class RotorSuperposition:
    """Finite superposition sum_m c_m exp(i*m*phi)/sqrt(2*pi) on [0, 2*pi].

    ``coefficients`` maps integer m to a complex amplitude. Input whose
    squared amplitudes do not sum to 1 within NORM_INPUT_TOL is rejected
    unless ``normalize=True``, in which case the whole vector is rescaled.
    """

    coefficients: tuple
    hbar: float = 1.0
    normalize: bool = field(default=False, compare=False)

    def __init__(self, coefficients, hbar: float = 1.0, normalize: bool = False):
        if isinstance(coefficients, Mapping):
            items = coefficients.items()
        else:
            items = coefficients
        pairs = sorted((int(m), complex(c)) for m, c in items)
        if not pairs:
            raise ValueError("rotor superposition needs at least one coefficient")
        if len({m for m, _ in pairs}) != len(pairs):
            raise ValueError("duplicate m in rotor coefficients")
        pairs = _normalized_pairs(pairs, normalize)
        object.__setattr__(self, "coefficients", tuple(pairs))
        object.__setattr__(self, "hbar", float(hbar))
        object.__setattr__(self, "normalize", bool(normalize))
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")

    @property
    def coeff_map(self) -> dict:
        return dict(self.coefficients)


@dataclass(frozen=True)
class SphericalState:
    """Fixed-l superposition sum_m c_m Y_lm(theta, phi), m = -l..l."""

    l: int
    coefficients: tuple
    hbar: float = 1.0
    inertia: float = 1.0
    normalize: bool = field(default=False, compare=False)

    def __init__(self, l, coefficients, hbar=1.0, inertia=1.0, normalize=False):
        l = int(l)
        if l < 0 or l > numerics.MAX_ORBITAL_L:
            raise ValueError(f"l must be in 0..{numerics.MAX_ORBITAL_L}")
        if isinstance(coefficients, Mapping):
            for m in coefficients:
                if abs(int(m)) > l:
                    raise ValueError(f"coefficient index |m|={abs(int(m))} exceeds l={l}")
            vec = [complex(coefficients.get(m, 0.0)) for m in range(-l, l + 1)]
        else:
            vec = [complex(c) for c in coefficients]
            if len(vec) != 2 * l + 1:
                raise ValueError(f"spherical state needs 2l+1={2 * l + 1} coefficients, got {len(vec)}")
        pairs = _normalized_pairs(list(zip(range(-l, l + 1), vec)), normalize)
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "coefficients", tuple(c for _, c in pairs))
        object.__setattr__(self, "hbar", float(hbar))
        object.__setattr__(self, "inertia", float(inertia))
        object.__setattr__(self, "normalize", bool(normalize))
        if self.hbar <= 0 or self.inertia <= 0:
            raise ValueError("hbar and inertia must be positive")


@dataclass(frozen=True)
class PendulumState:
    """Angular harmonic oscillator number eigenstate on phi in (-inf, inf).

    The wave function is N_n exp(-xi^2/2) H_n(xi) with xi = phi*sqrt(I*omega/hbar).
    """

    n: int
    inertia: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.n < 0 or self.n > numerics.MAX_HERMITE_DEGREE:
            raise ValueError(f"n must be in 0..{numerics.MAX_HERMITE_DEGREE}")
        if self.inertia <= 0 or self.omega <= 0 or self.hbar <= 0:
            raise ValueError("inertia, omega and hbar must be positive")

    @property
    def scale(self) -> float:
        """sqrt(I*omega/hbar): converts phi to the dimensionless coordinate."""
        return math.sqrt(self.inertia * self.omega / self.hbar)

    @property
    def amplitude(self) -> float:
        """Normalization constant N_n of the position-space wave function."""
        return (self.scale**2 / math.pi) ** 0.25 / math.sqrt(2.0**self.n * math.factorial(self.n))


State = Union[CircularState, RotorSuperposition, SphericalState, PendulumState]

_FAMILIES = {
    CircularState: "circular",
    RotorSuperposition: "rotor",
    SphericalState: "spherical",
    PendulumState: "pendulum",
}


def _normalized_pairs(pairs, normalize):
    total = sum(abs(c) ** 2 for _, c in pairs)
    if normalize:
        if total == 0:
            raise ValueError("cannot normalize an all-zero coefficient vector")
        if abs(total - 1.0) <= 1e-12:  # already normalized; keep rescaling idempotent
            return pairs
        root = math.sqrt(total)
        return [(m, c / root) for m, c in pairs]
    if abs(total - 1.0) > NORM_INPUT_TOL:
        raise ValueError(
            f"squared amplitudes sum to {total!r}, not 1; pass normalize=True to rescale"
        )
    return pairs


def family_of(state: State) -> str:
    """One of 'circular', 'rotor', 'spherical', 'pendulum'."""
    try:
        return _FAMILIES[type(state)]
    except KeyError:
        raise TypeError(f"not a state: {state!r}") from None


def basis_ms(state: State) -> tuple:
    """Angular-momentum indices spanned by the state's basis expansion."""
    fam = family_of(state)
    if fam == "circular":
        return (state.m,)
    if fam == "rotor":
        return tuple(m for m, _ in state.coefficients)
    if fam == "spherical":
        return tuple(range(-state.l, state.l + 1))
    raise ValueError("pendulum states have no azimuthal Fourier basis")


def coeff_vector(state: State) -> np.ndarray:
    """Complex amplitudes aligned with basis_ms(state)."""
    fam = family_of(state)
    if fam == "circular":
        return np.array([1.0 + 0.0j])
    if fam == "rotor":
        return np.array([c for _, c in state.coefficients])
    if fam == "spherical":
        return np.array(state.coefficients)
    raise ValueError("pendulum states have no azimuthal Fourier basis")


def wavefunction(state: State, point):
    """Complex amplitude at a point of the family's domain.

    ``point`` is phi for circular/rotor/pendulum states and a
    (theta, phi) pair for spherical states. Points outside the domain
    (phi in [0, 2*pi], theta in [0, pi]; pendulum phi unrestricted)
    are rejected. Arrays broadcast.
    """
    fam = family_of(state)
    if fam == "spherical":
        theta, phi = point
        theta = np.asarray(theta, dtype=np.float64)
        phi = np.asarray(phi, dtype=np.float64)
        _check_range(theta, 0.0, math.pi, "theta")
        _check_range(phi, 0.0, TWO_PI, "phi")
        ms = np.arange(-state.l, state.l + 1)
        c = coeff_vector(state)
        tl = np.stack([numerics.theta_lm_grid(state.l, m, np.atleast_1d(theta)) for m in ms])
        ph = np.exp(1j * np.multiply.outer(ms, np.atleast_1d(phi))) / math.sqrt(TWO_PI)
        out = np.einsum("m,m...,m...->...", c, tl, ph)
        return complex(out.flat[0]) if np.ndim(theta) == 0 and np.ndim(phi) == 0 else out

    phi = np.asarray(point, dtype=np.float64)
    if fam == "pendulum":
        xi = phi * state.scale
        vals = state.amplitude * np.exp(-(xi**2) / 2.0) * numerics.hermite_poly(state.n, xi)
        out = np.asarray(vals, dtype=np.complex128)
    else:
        _check_range(phi, 0.0, TWO_PI, "phi")
        ms = np.array(basis_ms(state), dtype=np.float64)
        c = coeff_vector(state)
        out = np.exp(1j * np.multiply.outer(np.atleast_1d(phi), ms)) @ c / math.sqrt(TWO_PI)
    return complex(out.flat[0]) if phi.ndim == 0 else out.reshape(phi.shape)


def norm(state: State, *, settings=None) -> float:
    """(Psi, Psi)^(1/2) computed by the family's quadrature rule."""
    from . import engine

    grid = engine.state_grid(state, settings)
    return math.sqrt(abs(grid.inner(grid.psi, grid.psi)))


def energy(state: State):
    """Closed-form energy, or None for families with no unique energy here.

    Pendulum: hbar*omega*(n + 1/2). Spherical: hbar^2*l*(l+1)/(2*I).
    """
    if isinstance(state, PendulumState):
        return state.hbar * state.omega * (state.n + 0.5)
    if isinstance(state, SphericalState):
        return state.hbar**2 * state.l * (state.l + 1) / (2.0 * state.inertia)
    return None


def _check_range(arr, lo, hi, name):
    if np.any(arr < lo - 1e-12) or np.any(arr > hi + 1e-12):
        raise ValueError(f"{name} outside [{lo}, {hi}]")
