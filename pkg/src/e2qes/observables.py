"""Grid-based states, expectation values and the closed three-level system.

States live on a uniform angular grid; the mode-number operator acts
through the FFT, multiplication operators act pointwise.  The
three-level family (quantized level 2) is implemented from its closed
forms and doubles as the reference solution for time-dependent checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ModelParams, PreconditionError
from .special import bessel_i
from .timefunc import TimeFunction

OP_NAMES = ("u", "v", "J")


@dataclass(frozen=True)
class QuadratureGrid:
    """Uniform grid theta0 + 2 pi k / K with trapezoidal (= exact) weight."""

    n_nodes: int = 2048
    theta0: float = 0.0

    def __post_init__(self):
        if self.n_nodes < 8:
            raise PreconditionError("grid needs at least 8 nodes")

    @property
    def nodes(self):
        return self.theta0 + 2.0 * np.pi * np.arange(self.n_nodes) / self.n_nodes

    @property
    def weight(self):
        return 2.0 * np.pi / self.n_nodes

    def integrate(self, values):
        return self.weight * complex(np.sum(values))


def modes_to_grid(modes, grid):
    """Sample sum_k c_k exp(i k theta) on the grid nodes."""
    modes = np.asarray(modes, dtype=complex)
    if len(modes) % 2 != 1:
        raise PreconditionError("mode vector must have odd length (symmetric window)")
    half = len(modes) // 2
    ks = np.arange(-half, half + 1)
    return np.exp(1j * np.outer(grid.nodes, ks)) @ modes


def _as_samples(state, grid):
    state = np.asarray(state, dtype=complex)
    if state.ndim != 1:
        raise PreconditionError("state must be a 1-d array")
    if len(state) == grid.n_nodes:
        return state
    return modes_to_grid(state, grid)


def apply_mode_number(values, grid, power=1):
    """(J^power f) on the grid via the FFT; grid offset drops out."""
    freqs = np.fft.fftfreq(len(values), d=1.0 / len(values))
    return np.fft.ifft(np.fft.fft(values) * freqs ** power)


def apply_coefficients(coeffs, t, state, grid):
    """Apply a coefficient-set operator to a sampled state."""
    f = _as_samples(state, grid)
    c = coeffs.at(t)
    sin = np.sin(grid.nodes)
    cos = np.cos(grid.nodes)
    Jf = apply_mode_number(f, grid)
    JJf = apply_mode_number(f, grid, power=2)
    return (c["JJ"] * JJf + c["J"] * Jf
            + c["u"] * sin * f + c["v"] * cos * f
            + c["uJ"] * sin * Jf + c["vJ"] * cos * Jf
            + c["uu"] * sin * sin * f + c["vv"] * cos * cos * f
            + c["uv"] * sin * cos * f)


def expectation(op_name, state, grid, norm_tol=1e-8):
    """<state|op|state> for op in {u, v, J} on a normalized state."""
    if op_name not in OP_NAMES:
        raise PreconditionError(f"op must be one of {OP_NAMES}, got {op_name!r}")
    f = _as_samples(state, grid)
    norm = grid.integrate(np.abs(f) ** 2).real
    if abs(norm - 1.0) > norm_tol:
        raise PreconditionError(f"state norm deviates from 1 by {abs(norm - 1.0):.3e}")
    if op_name == "J":
        g = apply_mode_number(f, grid)
    elif op_name == "u":
        g = np.sin(grid.nodes) * f
    else:
        g = np.cos(grid.nodes) * f
    return grid.integrate(np.conj(f) * g).real


def tdse_residual(state_fn, h_coeffs, t, grid, dt=1e-5):
    """Relative L2 residual of i d/dt psi = h psi by central difference."""
    if not 1e-7 <= dt <= 1e-3:
        raise PreconditionError("dt must lie in [1e-7, 1e-3]")
    psi = _as_samples(state_fn(t), grid)
    plus = _as_samples(state_fn(t + dt), grid)
    minus = _as_samples(state_fn(t - dt), grid)
    dpsi = (plus - minus) / (2.0 * dt)
    rhs = apply_coefficients(h_coeffs, t, psi, grid)
    num = np.sqrt(grid.integrate(np.abs(1j * dpsi - rhs) ** 2).real)
    den = 1.0 + np.sqrt(grid.integrate(np.abs(rhs) ** 2).real)
    return num / den


# ---------------------------------------------------------------------------
# the closed three-level family (quantized level 2)

STATE_NAMES = ("plus", "minus", "zero")


@dataclass(frozen=True)
class ThreeLevelSystem:
    """Quantized-level-2 eigensystem in the Hermitian frame.

    Both parity sectors contribute: two even states (plus/minus) and one
    odd state (zero).  All closed forms depend on the single combination
    gamma = (1 + beta) zeta and the frame angle lam(t).
    """

    params: ModelParams
    lam: TimeFunction

    def __post_init__(self):
        if not self.params.is_quantized(2):
            raise PreconditionError(
                f"three-level system requires level = 2 + beta, got {self.params.level}")
        if self.params.zeta == 0.0:
            raise PreconditionError("three-level closed forms need zeta != 0")

    @classmethod
    def from_couplings(cls, zeta, beta, lam):
        return cls(ModelParams.quantized(2, zeta, beta), TimeFunction(lam))

    @property
    def gamma(self):
        return self.params.gamma

    def energies(self):
        bz = self.params.beta * self.params.zeta ** 2
        s = np.sqrt(1.0 + self.gamma ** 2)
        return {
            "plus": 2.0 - bz + 2.0 * s,
            "minus": 2.0 - bz - 2.0 * s,
            "zero": 4.0 - bz,
        }

    def normalization(self, state):
        """Quadratic normalization constants of the closed forms."""
        g = self.gamma
        i0 = bessel_i(0, 0.5 * g)
        i1 = bessel_i(1, 0.5 * g)
        if state == "zero":
            return i1
        sgn = 1.0 if state == "plus" else -1.0
        s = np.sqrt(1.0 + g * g)
        return (g * (1.0 + g * g + sgn * s) * i0
                - (2.0 + 2.0 * g * g + sgn * (2.0 + g * g) * s) * i1)

    def moment(self, state):
        """First-moment constants entering <u> and <v> of the even states."""
        if state == "zero":
            raise PreconditionError("moment constants are defined for plus/minus only")
        g = self.gamma
        i1 = bessel_i(1, 0.5 * g)
        i2 = bessel_i(2, 0.5 * g)
        sgn = 1.0 if state == "plus" else -1.0
        s = np.sqrt(1.0 + g * g)
        return (g * (1.0 - g * g + sgn * s) * i1
                + (2.0 + 2.0 * g * g + sgn * (2.0 + g * g) * s) * i2)

    def wavefunction(self, state, t, grid):
        """Sampled closed-form state including its energy phase."""
        if state not in STATE_NAMES:
            raise PreconditionError(f"state must be one of {STATE_NAMES}")
        g = self.gamma
        x = grid.nodes + self.lam(t)
        envelope = np.exp(-0.25 * g * np.cos(x))
        energies = self.energies()
        phase = np.exp(-1j * energies[state] * t)
        if state == "zero":
            amp = np.sqrt(g) / (2.0 * np.sqrt(np.pi * self.normalization("zero")))
            return amp * envelope * np.sin(x) * phase
        s = np.sqrt(1.0 + g * g)
        coef = 1.0 + s if state == "plus" else 1.0 - s
        amp = np.sqrt(g) / (2.0 * np.sqrt(np.pi * self.normalization(state)))
        return amp * envelope * (g + coef * np.cos(x)) * phase

    def superposition(self, amplitudes, t, grid):
        """sum_s a_s phi_s(t); phases are carried by the states themselves."""
        out = np.zeros(grid.n_nodes, dtype=complex)
        for state, a in amplitudes.items():
            if a != 0:
                out = out + a * self.wavefunction(state, t, grid)
        return out

    def closed_form_expectations(self, t):
        """<u>, <v>, <J> per state from the first-moment closed forms."""
        lam_t = self.lam(t)
        sin_l, cos_l = np.sin(lam_t), np.cos(lam_t)
        g = self.gamma
        ratio0 = bessel_i(2, 0.5 * g) / bessel_i(1, 0.5 * g)
        out = {"zero": {"u": ratio0 * sin_l, "v": -ratio0 * cos_l, "J": 0.0}}
        for state in ("plus", "minus"):
            r = self.moment(state) / self.normalization(state)
            out[state] = {"u": -r * sin_l, "v": r * cos_l, "J": 0.0}
        return out


def double_scaling_compare(g, zeta_list, beta, order=64, k_low=4):
    """Low-lying spectra of the level-locked family against its limit.

    For each zeta the level parameter is N = g / zeta; the static frame
    shift with angle (1 - beta) zeta / 4 symmetrizes the operator before
    diagonalization.  Returns one row per zeta with the lowest k_low
    eigenvalues, the limit spectrum of 4 J^2 + 2 g v, and deviations.
    """
    from scipy.linalg import eigvalsh, expm

    from .algebra import build_generators
    from .model import model_hamiltonian, realize

    if k_low < 1:
        raise PreconditionError("k_low must be positive")
    J, u, v = build_generators(order)
    limit = 4.0 * (J @ J).entries + 2.0 * float(g) * v.entries
    limit_eigs = np.sort(eigvalsh(limit))[:k_low]

    rows = []
    for zeta in zeta_list:
        zeta = float(zeta)
        if zeta <= 0.0:
            raise PreconditionError("zeta values must be positive")
        level = float(g) / zeta
        if level < 10.0:
            raise PreconditionError(
                f"double-scaling comparison needs g/zeta >= 10, got {level}")
        p = ModelParams(zeta=zeta, beta=float(beta), level=level)
        H = realize(model_hamiltonian(p), 0.0, order).entries
        tau = (1.0 - p.beta) * p.zeta / 4.0
        eta = expm(tau * v.entries)
        eta_inv = expm(-tau * v.entries)
        h = eta @ H @ eta_inv
        h = 0.5 * (h + h.conj().T)
        eigs = np.sort(eigvalsh(h))[:k_low]
        rows.append({
            "zeta": zeta,
            "eigs": eigs,
            "limit": limit_eigs,
            "deviation": np.abs(eigs - limit_eigs),
        })
    return rows
