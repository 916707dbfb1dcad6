"""Angular observables: exact matrix elements and boundary-term diagnostics.

Multiplicative observables are carried as finite symbol sums
``coeff * theta^a * phi^p * exp(i*j*phi)``; their matrix elements in the
exp(i*m*phi)/sqrt(2*pi) basis close over azimuthal Fourier moments of
phi^p, which obey an exact integration-by-parts recurrence. On the fixed-l
spherical basis each term factorizes into a polar overlap integral times
the rotor element, so no 2-D quadrature enters the analytic path.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from . import engine, numerics
from . import states as st
from .numerics import TWO_PI

_KIND_NAMES = ("Lz", "Phi", "PhiSquared", "SinPhi", "CosPhi", "Theta", "ThetaPhi", "Chi")


@dataclass(frozen=True)
class ObservableKind:
    """One of the supported angular observables; Chi carries its winding N."""

    name: str
    winding: int = 0

    def __post_init__(self):
        if self.name not in _KIND_NAMES:
            raise ValueError(f"unknown observable kind {self.name!r}")
        if self.winding and self.name != "Chi":
            raise ValueError("only Chi carries a winding number")

    def __str__(self):
        return f"Chi({self.winding})" if self.name == "Chi" else self.name


LZ = ObservableKind("Lz")
PHI = ObservableKind("Phi")
PHI_SQUARED = ObservableKind("PhiSquared")
SIN_PHI = ObservableKind("SinPhi")
COS_PHI = ObservableKind("CosPhi")
THETA = ObservableKind("Theta")
THETA_PHI = ObservableKind("ThetaPhi")


def chi(n: int) -> ObservableKind:
    """The unwound angle chi = phi + 2*pi*N."""
    return ObservableKind("Chi", int(n))


_PENDULUM_KINDS = ("Lz", "Phi", "PhiSquared")
_SPHERICAL_ONLY = ("Theta", "ThetaPhi")


def applicable(kind: ObservableKind, family: str) -> bool:
    if family == "pendulum":
        return kind.name in _PENDULUM_KINDS
    if kind.name in _SPHERICAL_ONLY:
        return family == "spherical"
    return family in ("circular", "rotor", "spherical")


def check_applicable(kind: ObservableKind, state) -> str:
    fam = st.family_of(state)
    if not applicable(kind, fam):
        raise ValueError(f"observable {kind} is not defined on the {fam} family")
    return fam


class Symbol:
    """Finite sum of coeff * theta^a * phi^p * exp(i*j*phi) terms.

    Keys are (a, j, p) triples. The algebra is closed under products,
    integer powers and d/dphi, which is all the moment machinery needs.
    """

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = {k: complex(v) for k, v in terms.items() if v != 0}

    @classmethod
    def constant(cls, value) -> "Symbol":
        return cls({(0, 0, 0): value})

    def __add__(self, other):
        if not isinstance(other, Symbol):
            other = Symbol.constant(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0.0) + v
        return Symbol(out)

    def __sub__(self, other):
        if not isinstance(other, Symbol):
            other = Symbol.constant(other)
        return self + (other * -1.0)

    def __mul__(self, other):
        if not isinstance(other, Symbol):
            return Symbol({k: v * other for k, v in self.terms.items()})
        out = {}
        for (a1, j1, p1), v1 in self.terms.items():
            for (a2, j2, p2), v2 in other.terms.items():
                k = (a1 + a2, j1 + j2, p1 + p2)
                out[k] = out.get(k, 0.0) + v1 * v2
        return Symbol(out)

    __rmul__ = __mul__

    def __pow__(self, r: int):
        out = Symbol.constant(1.0)
        for _ in range(r):
            out = out * self
        return out

    def phi_derivative(self) -> "Symbol":
        out = {}
        for (a, j, p), v in self.terms.items():
            if p:
                k = (a, j, p - 1)
                out[k] = out.get(k, 0.0) + v * p
            if j:
                k = (a, j, p)
                out[k] = out.get(k, 0.0) + v * 1j * j
        return Symbol(out)

    def theta_degree(self) -> int:
        return max((a for (a, _, _) in self.terms), default=0)

    def is_theta_free(self) -> bool:
        return self.theta_degree() == 0

    def boundary_jump(self) -> dict:
        """Per theta-power totals of term(2*pi) - term(0) along phi."""
        out = {}
        for (a, j, p), v in self.terms.items():
            if p:
                out[a] = out.get(a, 0.0) + v * TWO_PI**p
        return out

    def phi_polynomial(self) -> np.ndarray:
        """Coefficients in phi for harmonic-free, theta-free symbols."""
        if any(a or j for (a, j, _) in self.terms):
            raise ValueError("symbol is not a plain polynomial in phi")
        deg = max((p for (_, _, p) in self.terms), default=0)
        out = np.zeros(deg + 1, dtype=np.complex128)
        for (_, _, p), v in self.terms.items():
            out[p] = v
        return out

    def evaluate(self, theta, phi):
        """Pointwise values; theta is None for the plain periodic families."""
        total = 0.0
        for (a, j, p), v in self.terms.items():
            term = v * phi**p if p else v * np.ones_like(phi, dtype=np.complex128)
            if j:
                term = term * np.exp(1j * j * phi)
            if a:
                if theta is None:
                    raise ValueError("theta-dependent symbol on a circle-only grid")
                term = term * theta**a
            total = total + term
        return total


def kind_symbol(kind: ObservableKind) -> Symbol:
    """The symbol of a multiplicative observable (everything but Lz)."""
    if kind.name == "Phi":
        return Symbol({(0, 0, 1): 1.0})
    if kind.name == "PhiSquared":
        return Symbol({(0, 0, 2): 1.0})
    if kind.name == "SinPhi":
        return Symbol({(0, 1, 0): -0.5j, (0, -1, 0): 0.5j})
    if kind.name == "CosPhi":
        return Symbol({(0, 1, 0): 0.5, (0, -1, 0): 0.5})
    if kind.name == "Theta":
        return Symbol({(1, 0, 0): 1.0})
    if kind.name == "ThetaPhi":
        return Symbol({(1, 0, 1): 1.0})
    if kind.name == "Chi":
        return Symbol({(0, 0, 1): 1.0, (0, 0, 0): TWO_PI * kind.winding})
    raise ValueError(f"{kind} is not multiplicative")


@lru_cache(maxsize=4096)
def phi_fourier_moment(k: int, p: int) -> complex:
    """(1/2*pi) * int_0^2pi phi^p exp(i*k*phi) dphi, exact by recurrence."""
    if k == 0:
        return TWO_PI**p / (p + 1)
    t = 0.0 + 0.0j
    for q in range(1, p + 1):
        t = TWO_PI ** (q - 1) / (1j * k) - (q / (1j * k)) * t
    return t


@dataclass(frozen=True)
class RotorBasis:
    """Fourier basis exp(i*m*phi)/sqrt(2*pi) over an explicit index tuple."""

    ms: tuple

    @property
    def family(self) -> str:
        return "rotor"


@dataclass(frozen=True)
class SphericalBasis:
    """Spherical harmonics Y_lm at fixed l, m = -l..l."""

    l: int

    @property
    def ms(self) -> tuple:
        return tuple(range(-self.l, self.l + 1))

    @property
    def family(self) -> str:
        return "spherical"


@dataclass(frozen=True)
class MatrixElementTable:
    """Dense matrix of <basis_i| A |basis_j> with its provenance."""

    basis: object
    kind: ObservableKind
    matrix: np.ndarray
    provenance: str

    def element(self, mi: int, mj: int) -> complex:
        ms = self.basis.ms
        return complex(self.matrix[ms.index(mi), ms.index(mj)])


def basis_of(state) -> RotorBasis | SphericalBasis:
    fam = st.family_of(state)
    if fam in ("circular", "rotor"):
        return RotorBasis(st.basis_ms(state))
    if fam == "spherical":
        return SphericalBasis(state.l)
    raise ValueError("pendulum states use oscillator ladder matrices, not tables")


def symbol_matrix(sym: Symbol, basis, theta_nodes: int = 128) -> np.ndarray:
    """Exact-in-phi matrix of a multiplicative symbol on a basis."""
    ms = basis.ms
    n = len(ms)
    out = np.zeros((n, n), dtype=np.complex128)
    spherical = isinstance(basis, SphericalBasis)
    if not spherical and not all(a == 0 for (a, _, _) in sym.terms):
        raise ValueError("theta-dependent symbol on a non-spherical basis")
    for (a, j, p), v in sym.terms.items():
        theta_fac = (
            numerics.theta_overlap_matrix(basis.l, a, theta_nodes) if spherical else 1.0
        )
        phi_fac = np.array(
            [[phi_fourier_moment(mj - mi + j, p) for mj in ms] for mi in ms]
        )
        out = out + v * theta_fac * phi_fac
    return out


def lz_diagonal(basis, hbar: float) -> np.ndarray:
    return hbar * np.array(basis.ms, dtype=np.float64)


def matrix_table(
    kind: ObservableKind,
    basis,
    *,
    hbar: float = 1.0,
    method: str = "analytic",
    settings: engine.EngineSettings | None = None,
) -> MatrixElementTable:
    """Build the full table for one kind; ``method='quadrature'`` is the oracle.

    Analytic provenance means closed-form azimuthal elements; spherical
    tables other than Lz fold in the 1-D polar overlap integrals and are
    flagged as quadrature-backed.
    """
    settings = engine.resolve(settings)
    if isinstance(basis, SphericalBasis):
        fam = "spherical"
    else:
        fam = "rotor"
    if not applicable(kind, fam):
        raise ValueError(f"observable {kind} is not defined on the {fam} basis")
    if method == "analytic":
        if kind.name == "Lz":
            mat = np.diag(lz_diagonal(basis, hbar)).astype(np.complex128)
            prov = "analytic"
        else:
            mat = symbol_matrix(kind_symbol(kind), basis, settings.theta_nodes)
            prov = "quadrature" if isinstance(basis, SphericalBasis) else "analytic"
        return MatrixElementTable(basis, kind, mat, prov)
    if method != "quadrature":
        raise ValueError(f"unknown method {method!r}")
    return MatrixElementTable(basis, kind, _quadrature_matrix(kind, basis, hbar, settings), "quadrature")


def _quadrature_matrix(kind, basis, hbar, settings):
    ms = basis.ms
    n = len(ms)
    out = np.zeros((n, n), dtype=np.complex128)
    if isinstance(basis, SphericalBasis):
        trule = numerics.theta_rule(settings.theta_nodes)
        prule = numerics.phi_rule(settings.phi_nodes)
        tl = np.stack([numerics.theta_lm_grid(basis.l, m, trule.nodes) for m in ms])
        ph = np.exp(1j * np.outer(np.array(ms), prule.nodes)) / math.sqrt(TWO_PI)
        wt = trule.weights * np.sin(trule.nodes)
        if kind.name == "Lz":
            op_t, op_p = tl, hbar * np.array(ms)[:, None] * ph
        else:
            vals = kind_symbol(kind).evaluate(trule.nodes[:, None], prule.nodes[None, :])
            for i in range(n):
                fi = np.conj(tl[i][:, None] * ph[i][None, :])
                for j in range(n):
                    gj = tl[j][:, None] * ph[j][None, :] * vals
                    out[i, j] = np.einsum("t,p,tp->", wt, prule.weights, fi * gj)
            return out
        for i in range(n):
            fi = np.conj(tl[i][:, None] * ph[i][None, :])
            for j in range(n):
                gj = op_t[j][:, None] * op_p[j][None, :]
                out[i, j] = np.einsum("t,p,tp->", wt, prule.weights, fi * gj)
        return out
    prule = numerics.phi_rule(settings.phi_nodes)
    basis_vals = np.exp(1j * np.outer(np.array(ms), prule.nodes)) / math.sqrt(TWO_PI)
    if kind.name == "Lz":
        op_vals = hbar * np.array(ms)[:, None] * basis_vals
    else:
        op_vals = kind_symbol(kind).evaluate(None, prule.nodes)[None, :] * basis_vals
    return np.conj(basis_vals * prule.weights) @ op_vals.T


def matrix_element(
    kind: ObservableKind,
    basis,
    i: int,
    j: int,
    *,
    hbar: float = 1.0,
    method: str = "analytic",
    settings: engine.EngineSettings | None = None,
) -> complex:
    """<basis_i| A |basis_j> with i, j given as m values of the basis."""
    table = matrix_table(kind, basis, hbar=hbar, method=method, settings=settings)
    return table.element(i, j)


def lz_phi_symmetry_deficit(
    state,
    *,
    method: str = "analytic",
    settings: engine.EngineSettings | None = None,
) -> complex:
    """(Lz Psi, phi Psi) - (Psi, Lz phi Psi), the condition gate for the pair.

    Closed forms per family: i*hbar for a single circular mode,
    i*hbar*|sum_m c_m|^2 for rotor superpositions, the double-sum closed
    form over polar overlaps for spherical states, and exactly 0 for the
    pendulum (nothing survives at the line's infinities).
    """
    if method == "quadrature":
        return _deficit_quadrature(LZ, PHI, state, engine.resolve(settings))
    if method != "analytic":
        raise ValueError(f"unknown method {method!r}")
    fam = st.family_of(state)
    if fam == "circular":
        return 1j * state.hbar
    if fam == "rotor":
        total = sum(c for _, c in state.coefficients)
        return 1j * state.hbar * abs(total) ** 2
    if fam == "pendulum":
        return 0.0 + 0.0j
    settings = engine.resolve(settings)
    basis = SphericalBasis(state.l)
    c = st.coeff_vector(state)
    gam = numerics.theta_overlap_matrix(state.l, 0, settings.theta_nodes)
    phi_el = np.array(
        [[phi_fourier_moment(mj - mi, 1) for mj in basis.ms] for mi in basis.ms]
    )
    ms = np.array(basis.ms, dtype=np.float64)
    double_sum = np.einsum("i,j,i,ij,ij->", np.conj(c), c, ms, gam, phi_el)
    return 1j * state.hbar * (1.0 + 2.0 * float(np.imag(double_sum)))


def symmetry_deficit(
    a: ObservableKind,
    b: ObservableKind,
    state,
    *,
    method: str = "analytic",
    settings: engine.EngineSettings | None = None,
) -> complex:
    """(A Psi, B Psi) - (Psi, A B Psi) for any applicable ordered pair.

    Nonzero only when A is Lz and B carries a phi power whose boundary
    values at 0 and 2*pi differ; multiplicative A never contributes, and
    the pendulum family has no boundary at all.
    """
    check_applicable(a, state)
    fam = check_applicable(b, state)
    if method == "quadrature":
        return _deficit_quadrature(a, b, state, engine.resolve(settings))
    if method != "analytic":
        raise ValueError(f"unknown method {method!r}")
    if a.name != "Lz" or b.name == "Lz" or fam == "pendulum":
        return 0.0 + 0.0j
    settings = engine.resolve(settings)
    jump = kind_symbol(b).boundary_jump()
    if not jump:
        return 0.0 + 0.0j
    if fam == "spherical":
        c = st.coeff_vector(state)
        total = 0.0 + 0.0j
        for a_pow, coeff in jump.items():
            tmat = numerics.theta_overlap_matrix(state.l, a_pow, settings.theta_nodes)
            total += coeff * np.einsum("i,j,ij->", np.conj(c), c, tmat) / TWO_PI
        return 1j * state.hbar * complex(total)
    if fam == "circular":
        density = 1.0 / TWO_PI
    else:
        density = abs(sum(cc for _, cc in state.coefficients)) ** 2 / TWO_PI
    return 1j * state.hbar * jump[0] * density


def _deficit_quadrature(a, b, state, settings) -> complex:
    """Oracle twin of symmetry_deficit: both inner products on the grid.

    Operator actions use exact per-mode derivatives (periodic families)
    or polynomial calculus (pendulum); the only numerics is the final
    weighted sum, so no integration by parts is ever performed.
    """
    grid = engine.state_grid(state, settings)
    hbar = state.hbar

    if isinstance(grid, engine.PendulumGrid):
        def apply(kind, coeffs):
            if kind.name == "Lz":
                return grid.lz_apply(coeffs)
            return grid.multiply_phi_poly(coeffs, kind_symbol(kind).phi_polynomial())

        psi = grid.psi.astype(np.complex128)
        return grid.inner(apply(a, psi), apply(b, psi)) - grid.inner(
            psi, apply(a, apply(b, psi))
        )

    psi = grid.psi
    lz_psi = grid.lz_pow(1)
    if a.name == "Lz" and b.name == "Lz":
        return grid.inner(lz_psi, lz_psi) - grid.inner(psi, grid.lz_pow(2))
    if a.name == "Lz":
        sym = kind_symbol(b)
        b_vals = grid.symbol_values(sym)
        deriv_vals = grid.symbol_values(sym.phi_derivative())
        first = grid.inner(lz_psi, b_vals * psi)
        second = grid.inner(psi, -1j * hbar * deriv_vals * psi + b_vals * lz_psi)
        return first - second
    a_vals = grid.symbol_values(kind_symbol(a))
    if b.name == "Lz":
        return grid.inner(a_vals * psi, lz_psi) - grid.inner(psi, a_vals * lz_psi)
    b_vals = grid.symbol_values(kind_symbol(b))
    return grid.inner(a_vals * psi, b_vals * psi) - grid.inner(psi, a_vals * b_vals * psi)
