"""Modified Bessel functions of integer order, self-contained.

Two regimes: an ascending power series for |z| <= 20, and Miller's
backward recurrence normalized through exp(z) = I0 + 2 sum_k I_k for
20 < |z| <= 100.  Negative arguments and orders reduce by parity.
scipy's implementation is used in the test suite as an oracle, never
here.
"""

from __future__ import annotations

import math


def _series(n, z):
    # running term keeps (z/2)^n / n! scaled to avoid overflow staging
    half = 0.5 * z
    term = 1.0
    for j in range(1, n + 1):
        term *= half / j
    total = term
    k = 1
    while True:
        term *= half * half / (k * (n + k))
        new = total + term
        if new == total:
            return total
        total = new
        k += 1
        if k > 1000:  # series always converges long before this
            return total


def _miller(n_max, z):
    """I_0..I_n_max at z > 0 via backward recurrence."""
    start = max(n_max, int(z)) + 40
    if start % 2:
        start += 1
    vals = [0.0] * (start + 2)
    vals[start] = 1e-300
    for k in range(start, 0, -1):
        vals[k - 1] = vals[k + 1] + (2.0 * k / z) * vals[k]
        if abs(vals[k - 1]) > 1e250:
            for j in range(k - 1, start + 2):
                vals[j] *= 1e-250
    norm = vals[0] + 2.0 * math.fsum(vals[1:start + 1])
    scale = math.exp(z) / norm
    return [v * scale for v in vals[:n_max + 1]]


def bessel_i(n, z):
    """I_n(z) for integer n, |z| <= 100."""
    n = int(n)
    if n < 0:
        n = -n  # I_{-n} = I_n
    z = float(z)
    if abs(z) > 100.0:
        raise ValueError(f"argument out of supported range |z| <= 100, got {z}")
    sign = 1.0
    if z < 0.0:
        z = -z
        sign = -1.0 if n % 2 else 1.0
    if z == 0.0:
        return 1.0 if n == 0 else 0.0
    if z <= 20.0:
        return sign * _series(n, z)
    return sign * _miller(n, z)[n]


def bessel_i_array(n_max, z):
    """[I_0(z), ..., I_n_max(z)] with the same range contract."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    z = float(z)
    if abs(z) > 100.0:
        raise ValueError(f"argument out of supported range |z| <= 100, got {z}")
    az = abs(z)
    if az == 0.0:
        return [1.0] + [0.0] * n_max
    if az <= 20.0:
        out = [_series(n, az) for n in range(n_max + 1)]
    else:
        out = _miller(n_max, az)
    if z < 0.0:
        out = [v if n % 2 == 0 else -v for n, v in enumerate(out)]
    return out
