"""Complex dilogarithm, Bloch-Wigner function, and the corrected L-hat formula.

All functions use the principal branch throughout: Im(log) in (-pi, pi],
with the dilogarithm cut along [1, oo).  Values exactly on a cut take the
limit from below the cut (arg(1-z) = +pi on negative reals), so results are
deterministic for real inputs.

Evaluation strategy for ``li2``: direct power series on |z| <= 1/2; the
inversion and reflection identities map most other points into that disk.
Points near the unit circle with Re(z) <= 1/2 cannot be reached that way
(the six anharmonic images of exp(+-i*pi/3) all have modulus 1), so that
region uses the Bernoulli series in u = -log(1-z), which converges
geometrically for |u| < 2*pi.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

PI = math.pi
PI2_6 = math.pi ** 2 / 6.0

_SERIES_TERMS = 64
_LOG_SERIES_TERMS = 36
_OVERFLOW_SCALE = 1e300


def _bernoulli_coeffs(count: int) -> np.ndarray:
    """Coefficients B_n / (n+1)! for the log-series, computed exactly."""
    bern = [Fraction(1)]
    for m in range(1, count):
        acc = Fraction(0)
        for j in range(m):
            acc += Fraction(math.comb(m + 1, j)) * bern[j]
        bern.append(-acc / (m + 1))
    out = [b / Fraction(math.factorial(n + 1)) for n, b in enumerate(bern)]
    return np.array([float(c) for c in out])


_LOG_COEFFS = _bernoulli_coeffs(_LOG_SERIES_TERMS)
_SERIES_COEFFS = np.array([1.0 / k / k for k in range(1, _SERIES_TERMS + 1)])


def _check_finite(z: np.ndarray, name: str) -> None:
    if not np.all(np.isfinite(z)):
        raise ValueError(f"{name}: input must be finite")
    if np.any(np.abs(z) > _OVERFLOW_SCALE):
        raise ValueError(f"{name}: |z| exceeds overflow scale {_OVERFLOW_SCALE:g}")


def log_p(z):
    """Principal logarithm with Im in (-pi, pi], +pi on the negative real axis.

    numpy's log follows the sign of a zero imaginary part, which would map
    x - 0j below the cut; we force the +pi (limit-from-above) convention so
    results do not depend on the sign of a zero.
    """
    arr = np.asarray(z, dtype=np.complex128)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(arr == 0):
        raise ValueError("log_p: argument must be nonzero")
    _check_finite(arr, "log_p")
    out = np.log(arr)
    fix = (arr.imag == 0.0) & (arr.real < 0.0)
    if np.any(fix):
        out = out.copy()
        out[fix] = np.log(np.abs(arr[fix])) + 1j * PI
    return out[0] if scalar else out


def _li2_core(w: np.ndarray) -> np.ndarray:
    """li2 on the region {|w| <= 1, Re w <= 1/2} via two series."""
    out = np.empty_like(w)
    small = np.abs(w) <= 0.5
    if np.any(small):
        ws = w[small]
        acc = np.zeros_like(ws)
        for c in _SERIES_COEFFS[::-1]:
            acc = (acc + c) * ws
        out[small] = acc
    rest = ~small
    if np.any(rest):
        # |1-w| in [1/2, 2] and Re(1-w) >= 1/2 here, so |u| <= ~1.32 << 2*pi.
        u = -np.log(1.0 - w[rest])
        acc = np.zeros_like(u)
        for c in _LOG_COEFFS[::-1]:
            acc = (acc + c) * u
        out[rest] = acc
    return out


def li2(z):
    """Principal-branch dilogarithm Li2(z), accurate to ~1e-14 for |z| <= 1e6.

    Accepts scalars or arrays.  Li2(1) = pi^2/6 (the function is finite at
    the branch point); real z > 1 evaluates on the limit from below the cut.
    """
    arr = np.asarray(z, dtype=np.complex128)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr).copy()
    _check_finite(arr, "li2")

    out = np.zeros_like(arr)
    todo = arr != 0

    at_one = todo & (arr == 1)
    out[at_one] = PI2_6
    todo &= ~at_one

    z0 = arr[todo]
    # Inversion: Li2(z) = -Li2(1/z) - pi^2/6 - log(-z)^2 / 2 for |z| > 1.
    big = np.abs(z0) > 1.0
    sign_a = np.where(big, -1.0, 1.0)
    add_a = np.zeros_like(z0)
    if np.any(big):
        lg = log_p(-z0[big])
        add_a[big] = -PI2_6 - 0.5 * lg * lg
    z1 = np.where(big, 1.0 / z0, z0)

    # Reflection: Li2(z) = pi^2/6 - log(z)log(1-z) - Li2(1-z) for Re z > 1/2.
    ref = z1.real > 0.5
    sign_b = np.where(ref, -1.0, 1.0)
    add_b = np.zeros_like(z0)
    if np.any(ref):
        zr = z1[ref]
        add_b[ref] = PI2_6 - log_p(zr) * log_p(1.0 - zr)
    z2 = np.where(ref, 1.0 - z1, z1)

    out[todo] = sign_a * (sign_b * _li2_core(z2) + add_b) + add_a
    return out[0] if scalar else out


def bloch_wigner(z):
    """Bloch-Wigner function D(z) = Im Li2(z) + arg(1-z) * log|z|.

    D is the signed volume of the ideal tetrahedron with cross-ratio z; it
    vanishes on the reals and satisfies D(conj z) = -D(z).
    """
    arr = np.asarray(z, dtype=np.complex128)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(arr == 0) or np.any(arr == 1):
        raise ValueError("bloch_wigner: degenerate tetrahedron (z in {0, 1})")
    _check_finite(arr, "bloch_wigner")
    out = li2(arr).imag + log_p(1.0 - arr).imag * np.log(np.abs(arr))
    out = np.atleast_1d(out)
    return float(out[0]) if scalar else out


def lhat(u: complex, p: int, q: int) -> complex:
    """Corrected dilogarithm term for a flattened ideal tetrahedron [u; p, q].

    Returns Li2(u) - pi^2/6 + (q*pi*i/2) log u + (1/2) log(1-u)(log u + p*pi*i),
    all logarithms principal.
    """
    u = complex(u)
    if u == 0 or u == 1:
        raise ValueError("lhat: degenerate input (u in {0, 1})")
    lu = log_p(u)
    l1u = log_p(1.0 - u)
    return (
        complex(li2(u))
        - PI2_6
        + 0.5j * PI * q * lu
        + 0.5 * l1u * (lu + 1j * PI * p)
    )
