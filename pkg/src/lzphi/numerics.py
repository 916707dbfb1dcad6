"""Quadrature rules and special functions behind every analytic cross-check."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from . import _kernels

TWO_PI = 2.0 * math.pi

#: documented upper bounds for the recurrence-based special functions
MAX_HERMITE_DEGREE = 64
MAX_ORBITAL_L = 64


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights for a fixed integration domain.

    ``domain`` is a label: ``legendre[a,b]`` for a finite interval or
    ``hermite`` for the real line against the weight exp(-xi^2).
    """

    nodes: np.ndarray
    weights: np.ndarray
    domain: str

    def __post_init__(self):
        if self.nodes.shape != self.weights.shape or self.nodes.size < 2:
            raise ValueError("nodes and weights must have equal length >= 2")
        if np.any(self.weights <= 0):
            raise ValueError("all quadrature weights must be positive")

    def integrate(self, values: np.ndarray) -> complex:
        """Weighted sum of integrand values sampled at the nodes."""
        return np.dot(self.weights, values)


def gauss_legendre(n: int, a: float, b: float) -> QuadratureRule:
    """Gauss-Legendre rule on [a, b], exact for polynomials of degree <= 2n-1.

    Parameters
    ----------
    n : int
        Number of nodes, at least 2.
    a, b : float
        Integration bounds with a < b.
    """
    if n < 2:
        raise ValueError(f"gauss_legendre needs n >= 2, got {n}")
    if not a < b:
        raise ValueError(f"gauss_legendre needs a < b, got a={a}, b={b}")
    x, w = np.polynomial.legendre.leggauss(n)
    nodes = 0.5 * (b - a) * x + 0.5 * (b + a)
    weights = 0.5 * (b - a) * w
    return QuadratureRule(nodes, weights, f"legendre[{a!r},{b!r}]")


def gauss_hermite(n: int) -> QuadratureRule:
    """Gauss-Hermite rule: sum w_i f(xi_i) ~ int f(xi) exp(-xi^2) dxi.

    Exact for polynomial f of degree <= 2n-1.
    """
    if n < 2:
        raise ValueError(f"gauss_hermite needs n >= 2, got {n}")
    x, w = np.polynomial.hermite.hermgauss(n)
    return QuadratureRule(x, w, "hermite")


@lru_cache(maxsize=64)
def phi_rule(n: int) -> QuadratureRule:
    """Cached azimuthal rule on [0, 2*pi]."""
    return gauss_legendre(n, 0.0, TWO_PI)


@lru_cache(maxsize=64)
def theta_rule(n: int) -> QuadratureRule:
    """Cached polar rule on [0, pi]; the sin(theta) factor stays in integrands."""
    return gauss_legendre(n, 0.0, math.pi)


@lru_cache(maxsize=64)
def hermite_rule(n: int) -> QuadratureRule:
    return gauss_hermite(n)


def hermite_poly(n: int, xi):
    """Physicists' Hermite polynomial H_n(xi) via the stable recurrence.

    Accepts a scalar or an array; degrees above MAX_HERMITE_DEGREE are
    rejected.
    """
    if n < 0 or n > MAX_HERMITE_DEGREE:
        raise ValueError(f"hermite_poly supports 0 <= n <= {MAX_HERMITE_DEGREE}, got {n}")
    arr = np.asarray(xi, dtype=np.float64)
    flat = np.ascontiguousarray(arr).reshape(-1)
    out = _kernels.hermite_grid(n, flat)
    return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def theta_lm(l: int, m: int, theta):
    """Normalized polar factor of the spherical harmonic (Condon-Shortley).

    Satisfies int_0^pi theta_lm(l, m, t)^2 sin(t) dt = 1, and the full
    harmonic is theta_lm * (2*pi)**-0.5 * exp(i*m*phi). Negative orders
    follow theta_lm(l, -m) = (-1)**m * theta_lm(l, m).
    """
    if l < 0 or l > MAX_ORBITAL_L:
        raise ValueError(f"theta_lm supports 0 <= l <= {MAX_ORBITAL_L}, got {l}")
    if abs(m) > l:
        raise ValueError(f"theta_lm needs |m| <= l, got l={l}, m={m}")
    arr = np.asarray(theta, dtype=np.float64)
    if np.any(arr < -1e-12) or np.any(arr > math.pi + 1e-12):
        raise ValueError("theta_lm needs theta in [0, pi]")
    out = theta_lm_grid(l, m, np.atleast_1d(arr))
    return float(out[0]) if arr.ndim == 0 else out


def theta_lm_grid(l: int, m: int, theta: np.ndarray) -> np.ndarray:
    """theta_lm values on an array of any shape; no domain checks."""
    x = np.cos(np.asarray(theta, dtype=np.float64))
    flat = np.ascontiguousarray(x).reshape(-1)
    vals = _kernels.legendre_grid(l, abs(m), flat).reshape(x.shape)
    if m < 0 and abs(m) % 2:
        return -vals
    return vals


@lru_cache(maxsize=512)
def theta_overlap_matrix(l: int, power: int, nodes: int) -> np.ndarray:
    """Matrix of int theta_lm * theta^power * theta_lm' * sin(theta) dtheta.

    Indexed by (m, m') offsets with m = -l..l; power = 0 gives the plain
    overlap of polar factors. Computed on the cached [0, pi] rule with the
    sin(theta) factor explicit in the integrand. The result is read-only.
    """
    rule = theta_rule(nodes)
    th = rule.nodes
    big = np.vstack([theta_lm_grid(l, m, th) for m in range(-l, l + 1)])
    weighted = big * (rule.weights * np.sin(th) * th**power)
    out = weighted @ big.T
    out.flags.writeable = False
    return out
