"""Terminating-series spectral engine for the quartic rotor family.

Eigenvalues in the cos and sin parity sectors are roots of a three-term
polynomial recurrence in the spectral variable.  At quantized level
parameter N = n_hat + (n_hat - 1) beta the recurrence kernel develops a
zero and every later polynomial factors through the n_hat-th one, which
is what terminates the eigenfunction series.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from .model import ModelParams, PreconditionError
from .special import bessel_i_array

SECTORS = ("cos", "sin")


@dataclass(frozen=True)
class LambdaPolynomial:
    """Monic polynomial in the spectral variable, ascending coefficients."""

    coeffs: tuple

    def __call__(self, x):
        return npoly.polyval(x, np.asarray(self.coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def derivative(self):
        return LambdaPolynomial(tuple(npoly.polyder(np.asarray(self.coeffs))))


def _check_sector(sector):
    if sector not in SECTORS:
        raise PreconditionError(f"sector must be 'cos' or 'sin', got {sector!r}")


def _kernel(n, p):
    """Coupling weight between neighbours n and n-1 of the recurrence."""
    N, b, z = p.level, p.beta, p.zeta
    return z ** 2 * (N + n * b + (n - 1)) * (N - (n - 1) * b - n)


def recurrence_polynomials(sector, n_max, p):
    """All sector polynomials with subscripts up to n_max, ascending.

    cos returns [P_0, ..., P_n_max]; sin returns [Q_1, ..., Q_n_max].
    """
    _check_sector(sector)
    N, b, z = p.level, p.beta, p.zeta
    if sector == "cos":
        if n_max < 0:
            raise PreconditionError("n_max must be nonnegative for the cos sector")
        polys = [np.array([1.0])]
        if n_max >= 1:
            polys.append(np.array([0.0, 1.0]))
        if n_max >= 2:
            # the n = 1 step carries an extra factor 2 on the kernel term
            polys.append(npoly.polyadd(
                npoly.polymul([-4.0, 1.0], polys[1]),
                [-2.0 * z ** 2 * (N - 1.0) * (N + b)]))
    else:
        if n_max < 1:
            raise PreconditionError("n_max must be at least 1 for the sin sector")
        polys = [np.array([1.0])]
        if n_max >= 2:
            polys.append(np.array([-4.0, 1.0]))
    built = min(n_max, 2)  # highest subscript constructed explicitly
    for k in range(built + 1, n_max + 1):
        n = k - 1  # recurrence index of the step producing subscript k
        polys.append(npoly.polysub(
            npoly.polymul([-4.0 * n ** 2, 1.0], polys[-1]),
            _kernel(n, p) * polys[-2]))
    return [LambdaPolynomial(tuple(c)) for c in polys]


def recurrence_polynomial(sector, n, p):
    return recurrence_polynomials(sector, n, p)[-1]


def series_coefficient(n, p):
    """Weight c_n multiplying the n-th sector polynomial in the series."""
    if n < 0:
        raise PreconditionError("series index must be nonnegative")
    N, b, z = p.level, p.beta, p.zeta
    if n == 0:
        return 1.0
    if z == 0.0:
        raise PreconditionError("series weights are undefined at zeta = 0")
    if N + b == 0.0:
        raise PreconditionError("series weights diverge at N + beta = 0")
    if 1.0 + b == 0.0:
        raise PreconditionError("series weights diverge at beta = -1")
    a = (1.0 + N + 2.0 * b) / (1.0 + b)
    poch = 1.0
    for j in range(n - 1):
        poch *= a + j
    if poch == 0.0:
        raise PreconditionError(f"series weight c_{n} hits a zero factor")
    return 1.0 / (z ** n * (N + b) * (1.0 + b) ** (n - 1) * poch)


@dataclass(eq=False)
class QesSpectrum:
    sector: str
    n_hat: int
    zeta: float
    beta: float
    lambdas: np.ndarray
    energies: np.ndarray
    weights: list = field(default=None)

    def to_json_dict(self):
        return {
            "sector": self.sector,
            "nHat": self.n_hat,
            "zeta": self.zeta,
            "beta": self.beta,
            "lambdas": [float(x) for x in self.lambdas],
            "energies": [float(x) for x in self.energies],
        }


def quantization_eigenvalues(sector, n_hat, zeta, beta):
    """Sector spectrum at the quantized level parameter.

    Roots of the terminating polynomial are located by companion-matrix
    eigenvalues and polished with one Newton step; residual imaginary
    parts above 1e-8 are an error, real parts are sorted and repeats
    within 1e-9 merged.  Energies shift each root by -beta zeta^2.
    """
    _check_sector(sector)
    min_n = 1 if sector == "cos" else 2
    if not isinstance(n_hat, (int, np.integer)) or n_hat < min_n:
        raise PreconditionError(
            f"n_hat must be an integer >= {min_n} for the {sector} sector")
    zeta, beta = float(zeta), float(beta)
    p = ModelParams.quantized(int(n_hat), zeta, beta)

    n_roots = n_hat if sector == "cos" else n_hat - 1
    if zeta == 0.0:
        # free-rotor limit: the series weights degenerate, but the
        # spectrum itself continues to 4 k^2
        ks = range(0, n_roots) if sector == "cos" else range(1, n_hat)
        lambdas = np.array([4.0 * k ** 2 for k in ks])
        energies = np.array([lam - beta * zeta ** 2 for lam in lambdas])
        return QesSpectrum(sector, int(n_hat), zeta, beta, lambdas, energies, None)

    poly = recurrence_polynomial(sector, int(n_hat), p)
    coeffs = np.asarray(poly.coeffs)
    if abs(coeffs[-1] - 1.0) > 0:
        raise RuntimeError("recurrence lost monicity")
    roots = np.roots(coeffs[::-1])
    deriv = poly.derivative()
    polished = []
    for r in roots:
        d = deriv(r)
        if d != 0:
            r = r - poly(r) / d
        polished.append(r)
    polished = np.asarray(polished)
    scale = max(1.0, float(np.max(np.abs(polished))))
    bad = np.abs(polished.imag) > 1e-8 * scale
    if np.any(bad):
        raise PreconditionError(
            f"complex roots encountered in the {sector} sector at "
            f"zeta={zeta}, beta={beta}: {polished[bad]}")
    lambdas = np.sort(polished.real)
    merged = [lambdas[0]]
    for x in lambdas[1:]:
        if abs(x - merged[-1]) > 1e-9 * (1.0 + abs(x)):
            merged.append(x)
    lambdas = np.array(merged)
    energies = np.array([lam - beta * zeta ** 2 for lam in lambdas])

    weights = []
    lo = 0 if sector == "cos" else 1
    polys = recurrence_polynomials(sector, int(n_hat) - 1, p) if n_hat > lo else []
    for lam in lambdas:
        w = np.array([series_coefficient(n, p) * polys[i](lam)
                      for i, n in enumerate(range(lo, n_hat))])
        weights.append(w)
    return QesSpectrum(sector, int(n_hat), zeta, beta, lambdas, energies, weights)


def closed_form_eigenvalues(sector, n_hat, gamma):
    """Hand closed forms for the low quantized levels, sorted ascending.

    Available for cos with n_hat <= 3 and sin with n_hat <= 4; the cubic
    cases use the trigonometric resolvent with branch angles 2 pi l / 3.
    """
    _check_sector(sector)
    gamma = float(gamma)
    g2 = gamma * gamma

    if sector == "cos":
        if n_hat == 1:
            return np.array([0.0])
        if n_hat == 2:
            s = np.sqrt(1.0 + g2)
            return np.sort(np.array([2.0 - 2.0 * s, 2.0 + 2.0 * s]))
        if n_hat == 3:
            return _cubic_cos3(g2)
        raise PreconditionError(f"no closed form for cos sector at n_hat={n_hat}")
    if n_hat == 2:
        return np.array([4.0])
    if n_hat == 3:
        s = np.sqrt(9.0 + g2)
        return np.sort(np.array([10.0 - 2.0 * s, 10.0 + 2.0 * s]))
    if n_hat == 4:
        return _cubic_sin4(g2)
    raise PreconditionError(f"no closed form for sin sector at n_hat={n_hat}")


def _resolvent_angles(arg):
    if abs(arg) > 1.0 + 1e-12:
        raise PreconditionError(f"resolvent angle argument {arg} out of range")
    return np.arccos(min(1.0, max(-1.0, arg))) / 3.0


def _cubic_cos3(g2):
    kappa = np.sqrt(13.0 + 3.0 * g2)
    theta = _resolvent_angles((35.0 - 18.0 * g2) / kappa ** 3)
    vals = [(4.0 / 3.0) * (5.0 + 2.0 * kappa * np.cos(2.0 * np.pi * ell / 3.0 - theta))
            for ell in (0, 1, 2)]
    return np.sort(np.array(vals))


def _cubic_sin4(g2):
    kappa = np.sqrt(49.0 + 3.0 * g2)
    theta = _resolvent_angles((143.0 - 18.0 * g2) / kappa ** 3)
    vals = [(8.0 / 3.0) * (7.0 + kappa * np.cos(2.0 * np.pi * ell / 3.0 - theta))
            for ell in (0, 1, 2)]
    return np.sort(np.array(vals))


def factorization_residual(sector, n_hat, ell, p):
    """Relative coefficient defect of P_{n_hat+ell} = R_ell P_n_hat.

    The one- and two-step cofactors R_1, R_2 are closed forms in the
    quantized level; ell in {1, 2}.
    """
    _check_sector(sector)
    if ell not in (1, 2):
        raise PreconditionError(f"ell must be 1 or 2, got {ell!r}")
    if n_hat < 1:
        raise PreconditionError("n_hat must be >= 1")
    if not p.is_quantized(n_hat):
        raise PreconditionError(
            f"level {p.level} is not quantized at n_hat={n_hat} (expected "
            f"{n_hat + (n_hat - 1) * p.beta})")
    nh = int(n_hat)
    g2 = p.gamma ** 2
    if ell == 1:
        cof = np.array([-4.0 * nh ** 2, 1.0])
    else:
        cof = np.array([
            16.0 * nh ** 2 * (nh + 1) ** 2 + 2.0 * nh * g2,
            -4.0 - 8.0 * nh * (nh + 1),
            1.0,
        ])
    polys = recurrence_polynomials(sector, nh + ell, p)
    base = np.asarray(polys[nh - (0 if sector == "cos" else 1)].coeffs)
    target = np.asarray(polys[nh + ell - (0 if sector == "cos" else 1)].coeffs)
    product = npoly.polymul(cof, base)
    diff = npoly.polysub(target, product)
    scale = float(np.max(np.abs(target)))
    return float(np.max(np.abs(diff))) / max(scale, 1.0)


def eigenfunction_series(sector, n_hat, lam_value, p, frame="H", shift=0.0,
                         order=64):
    """Fourier modes of one terminating eigenfunction, |n| <= order.

    frame 'H' multiplies the series by the bare-frame weight
    exp(-(zeta/2) cos theta); frame 'h' uses exp(-(gamma/4) cos(theta +
    shift)) and rotates each mode by exp(i n shift).  The mode vector is
    L2-normalized.  A relative tail mass above 1e-12 outside the window
    means the truncation is too small and raises.
    """
    _check_sector(sector)
    if not p.is_quantized(n_hat):
        raise PreconditionError(
            f"level {p.level} is not quantized at n_hat={n_hat}")
    if p.zeta == 0.0:
        raise PreconditionError("series eigenfunctions need zeta != 0")
    if frame not in ("H", "h"):
        raise PreconditionError(f"frame must be 'H' or 'h', got {frame!r}")
    nh = int(n_hat)
    lo = 0 if sector == "cos" else 1
    if nh - 1 < lo:
        raise PreconditionError(f"{sector} sector needs n_hat >= {lo + 1}")
    poly = recurrence_polynomial(sector, nh, p)
    scale = max(1.0, float(np.max(np.abs(poly.coeffs))))
    if abs(poly(lam_value)) > 1e-8 * scale * max(1.0, abs(lam_value) ** poly.degree):
        raise PreconditionError(
            f"lam={lam_value} is not a root of the {sector} sector polynomial")

    polys = recurrence_polynomials(sector, nh - 1, p) if nh - 1 >= lo else []
    terms = [series_coefficient(n, p) * polys[i](lam_value)
             for i, n in enumerate(range(lo, nh))]

    ext = order + 16
    series = np.zeros(2 * ext + 1, dtype=complex)
    mid = ext
    for n, w in zip(range(lo, nh), terms):
        if sector == "cos":
            if n == 0:
                series[mid] += w
            else:
                series[mid + n] += 0.5 * w
                series[mid - n] += 0.5 * w
        else:
            series[mid + n] += -0.5j * w
            series[mid - n] += 0.5j * w

    z = -0.5 * p.zeta if frame == "H" else -0.25 * p.gamma
    bess = bessel_i_array(2 * ext, z)
    pref = np.array([bess[abs(k)] for k in range(-ext, ext + 1)])
    modes = np.convolve(pref, series)[ext:3 * ext + 1]  # central slice, len 2*ext+1

    if frame == "h" and shift != 0.0:
        ks = np.arange(-ext, ext + 1)
        modes = modes * np.exp(1j * ks * shift)

    total = float(np.sum(np.abs(modes) ** 2))
    tail = total - float(np.sum(np.abs(modes[16:-16]) ** 2))
    if total == 0.0:
        raise PreconditionError("series collapsed to zero")
    if tail / total > 1e-12:
        raise PreconditionError(
            f"relative tail mass {tail / total:.2e} outside |n| <= {order}; "
            "increase the truncation order")
    window = modes[16:-16]
    return window / np.sqrt(np.sum(np.abs(window) ** 2))
