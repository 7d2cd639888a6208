"""The dilogarithm potential function of a diagram and its derived objects.

Each crossing with quadruple (a, b, c, d) (over-strand at slots a, c)
contributes the four signed terms

    Li2(z_b/z_a) - Li2(z_b/z_c) + Li2(z_d/z_c) - Li2(z_d/z_a),

and V is the sum over crossings.  The solved equation set is

    H = { exp(z_k dV/dz_k) = 1,  k = 1..n },

where each exp(z_k dV/dz_k) is a finite product of factors (1 - ratio)^(+-1)
and is therefore evaluated purely rationally (branch-free) for solving.
Logarithmic forms are used only for flattening integers and the corrected
potential V0 = V - sum_k r_k * pi*i * log z_k, which equals
i(vol + i*cs) mod pi^2 at essential solutions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from linkvol.diagram import LinkDiagram
from linkvol.dilog import li2, log_p

PI = math.pi
PI2 = math.pi ** 2
FOUR_PI2 = 4.0 * PI2

# Default tolerances; every consumer takes them as keyword overrides.
TOL_SOLVE = 1e-12
TOL_FLAT = 1e-8
TOL_ESS = 1e-8
TOL_DEDUPE = 1e-6


class DegenerateRatioError(ValueError):
    """A dilogarithm argument hit {0, 1, oo} where that is not allowed."""


class FlatteningError(RuntimeError):
    """z_k dV/dz_k is not an integer multiple of pi*i within tolerance."""


@dataclass(frozen=True)
class DilogTerm:
    """One signed term sign * Li2(z_num / z_den)."""

    sign: int
    num: int
    den: int


@dataclass(frozen=True)
class PotentialFunction:
    terms: tuple[DilogTerm, ...]
    n: int

    @cached_property
    def _arrays(self):
        num0 = np.array([t.num - 1 for t in self.terms], dtype=np.int64)
        den0 = np.array([t.den - 1 for t in self.terms], dtype=np.int64)
        inc: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for ti, t in enumerate(self.terms):
            inc[t.num - 1].append((ti, -t.sign))
            inc[t.den - 1].append((ti, t.sign))
        width = max((len(lst) for lst in inc), default=0)
        inc_term = np.zeros((self.n, width), dtype=np.int64)
        inc_exp = np.zeros((self.n, width), dtype=np.int64)
        for k, lst in enumerate(inc):
            for j, (ti, e) in enumerate(lst):
                inc_term[k, j] = ti
                inc_exp[k, j] = e
        return num0, den0, inc_term, inc_exp

    def arrays(self):
        """(num0, den0, inc_term, inc_exp) in 0-based form for the kernels."""
        return self._arrays

    def ratios(self, z) -> np.ndarray:
        z = _as_vector(z, self.n)
        num0, den0, _, _ = self._arrays
        return z[num0] / z[den0]


def _as_vector(z, n: int) -> np.ndarray:
    z = np.asarray(z, dtype=np.complex128)
    if z.shape != (n,):
        raise ValueError(f"expected a length-{n} complex vector, got shape {z.shape}")
    if np.any(z == 0) or not np.all(np.isfinite(z)):
        raise DegenerateRatioError("all side variables must be finite and nonzero")
    return z


def crossing_terms(quad: tuple[int, int, int, int]) -> list[DilogTerm]:
    a, b, c, d = quad
    return [
        DilogTerm(1, b, a),
        DilogTerm(-1, b, c),
        DilogTerm(1, d, c),
        DilogTerm(-1, d, a),
    ]


def build(d: LinkDiagram) -> PotentialFunction:
    """The potential function of a validated diagram (4 terms per crossing).

    The per-corner pi^2/6 constants cancel within each crossing and are
    omitted.
    """
    terms: list[DilogTerm] = []
    for cr in d.crossings:
        terms.extend(crossing_terms(cr.quad))
    return PotentialFunction(tuple(terms), d.n_sides)


def from_quads(quads, n: int) -> PotentialFunction:
    """Potential of raw quadruples without diagram validation (for tests)."""
    terms: list[DilogTerm] = []
    for q in quads:
        terms.extend(crossing_terms(tuple(q)))
    return PotentialFunction(tuple(terms), n)


def degenerate_ones(pf: PotentialFunction, z, tol: float = 0.0) -> list[int]:
    """Indices of terms whose ratio equals 1 (within tol); Li2(1) is finite
    but such points are flagged since dV there is not."""
    rho = pf.ratios(z)
    return list(np.nonzero(np.abs(rho - 1.0) <= tol)[0])


def eval_v(pf: PotentialFunction, z) -> complex:
    """V(z) = sum of sign * Li2(ratio), principal branch."""
    rho = pf.ratios(z)
    signs = np.array([t.sign for t in pf.terms], dtype=np.float64)
    return complex(np.sum(signs * li2(rho)))


def _term_logs(pf: PotentialFunction, z) -> np.ndarray:
    """log(1 - ratio) for every term, raising on ratio == 1."""
    rho = pf.ratios(z)
    f = 1.0 - rho
    bad = np.nonzero(f == 0)[0]
    if bad.size:
        t = pf.terms[bad[0]]
        raise DegenerateRatioError(
            f"ratio z_{t.num}/z_{t.den} equals 1 (term {int(bad[0])})"
        )
    return log_p(f)


def log_derivative(pf: PotentialFunction, z, k: int) -> complex:
    """z_k dV/dz_k as a sum of principal logarithms (k is a 1-based side id)."""
    if not (1 <= k <= pf.n):
        raise ValueError(f"side id {k} out of range 1..{pf.n}")
    return complex(log_derivatives(pf, z)[k - 1])


def log_derivatives(pf: PotentialFunction, z) -> np.ndarray:
    """Vector of z_k dV/dz_k for all sides.

    The exponent structure matches the rational form: the formal identity
    sum_k z_k dV/dz_k = 0 holds term by term, exactly.
    """
    lg = _term_logs(pf, z)
    _, _, inc_term, inc_exp = pf.arrays()
    return np.sum(inc_exp * lg[inc_term], axis=1)


def h_residuals(pf: PotentialFunction, z) -> np.ndarray:
    """Component k of H in rational form: prod (1 - ratio)^e - 1.

    Computed without logarithms, hence branch-free and invariant under
    rescaling z -> lambda*z.
    """
    rho = pf.ratios(z)
    f = 1.0 - rho
    _, _, inc_term, inc_exp = pf.arrays()
    vanishing = (f == 0)
    if np.any(vanishing[inc_term] & (inc_exp < 0)):
        bad = np.nonzero(vanishing)[0][0]
        t = pf.terms[bad]
        raise DegenerateRatioError(
            f"vanishing factor 1 - z_{t.num}/z_{t.den} inverted in H (term {int(bad)})"
        )
    gathered = f[inc_term]
    factors = np.where(inc_exp == 1, gathered, 1.0)
    neg = inc_exp == -1
    factors = np.where(neg, np.divide(1.0, gathered, where=neg | (gathered != 0)), factors)
    return np.prod(factors, axis=1) - 1.0


def flattening(pf: PotentialFunction, z, tol_flat: float = TOL_FLAT) -> np.ndarray:
    """Integers r_k with z_k dV/dz_k = r_k * pi * i, validated against tol_flat.

    Raises FlatteningError if some component is not integral -- which means
    z does not actually solve H (or the tolerance is too loose for it).
    """
    ld = log_derivatives(pf, z)
    r = np.round(ld.imag / PI).astype(np.int64)
    err = np.abs(ld - 1j * PI * r)
    if np.any(err > tol_flat):
        k = int(np.argmax(err))
        raise FlatteningError(
            f"non-integral flattening at side {k + 1}: z_k dV/dz_k = {ld[k]:.3e}, "
            f"|deviation| = {err[k]:.3e} > {tol_flat:g}"
        )
    if int(r.sum()) != 0 or np.any(r % 2 != 0):
        raise FlatteningError(f"flattening vector {r.tolist()} is not even with zero sum")
    return r


def is_essential(pf: PotentialFunction, z, tol_ess: float = TOL_ESS) -> bool:
    """True iff every term ratio stays tol_ess away from {0, 1, oo}."""
    try:
        rho = pf.ratios(z)
    except DegenerateRatioError:
        return False
    mag = np.abs(rho)
    return bool(
        np.all(mag > tol_ess)
        and np.all(mag < 1.0 / tol_ess)
        and np.all(np.abs(rho - 1.0) > tol_ess)
    )


def mod_pi2_canonical(x: float) -> float:
    """Reduce mod pi^2 into the canonical interval (-pi^2/2, pi^2/2]."""
    y = x - PI2 * math.floor(x / PI2 + 0.5)
    if y <= -PI2 / 2.0:
        y += PI2
    elif y > PI2 / 2.0:
        y -= PI2
    return y


def mod_dist(a: float, b: float, modulus: float) -> float:
    """Distance from a to b modulo the given (real) modulus."""
    d = (a - b) % modulus
    return min(d, modulus - d)


@dataclass(frozen=True)
class SolutionPoint:
    """A solution of H: side vector, flattening integers, essentiality flag."""

    z: np.ndarray
    r: np.ndarray
    essential: bool


@dataclass(frozen=True)
class VolumeReport:
    """V0 at a solution with vol = Im V0 and cs = -Re V0 reduced mod pi^2.

    bw_volume and max_gluing_residual are cross-checks filled in from the
    octahedral triangulation; they stay None until attached.
    """

    v0: complex
    vol: float
    cs: float
    r: np.ndarray
    essential: bool
    bw_volume: float | None = None
    max_gluing_residual: float | None = None


def eval_v0(
    pf: PotentialFunction,
    z,
    tol_flat: float = TOL_FLAT,
    tol_ess: float = TOL_ESS,
    li2_shifts=None,
    log_shifts=None,
) -> VolumeReport:
    """Evaluate the corrected potential V0 = V - sum r_k pi i log z_k.

    ``li2_shifts`` (per term) and ``log_shifts`` (per side) re-evaluate V0
    with deliberately shifted logarithm branches: term t gains
    2*pi*i*a_t*log(ratio_t) inside its dilogarithm and side k uses
    log z_k + 2*pi*i*m_k.  V0 changes by an element of 4*pi^2*Z only,
    which is the testable content of branch invariance.
    """
    z = _as_vector(z, pf.n)
    rho = pf.ratios(z)
    signs = np.array([t.sign for t in pf.terms], dtype=np.float64)
    v = np.sum(signs * li2(rho))
    ld = log_derivatives(pf, z)
    if li2_shifts is not None:
        a = np.asarray(li2_shifts, dtype=np.int64)
        if a.shape != (len(pf.terms),):
            raise ValueError("li2_shifts must give one integer per term")
        v = v + 2j * PI * np.sum(signs * a * log_p(rho))
        _, _, inc_term, inc_exp = pf.arrays()
        ld = ld - 2j * PI * np.sum(inc_exp * a[inc_term], axis=1)
    logs = log_p(z)
    if log_shifts is not None:
        m = np.asarray(log_shifts, dtype=np.int64)
        if m.shape != (pf.n,):
            raise ValueError("log_shifts must give one integer per side")
        logs = logs + 2j * PI * m

    r = np.round(ld.imag / PI).astype(np.int64)
    err = np.abs(ld - 1j * PI * r)
    if np.any(err > tol_flat):
        k = int(np.argmax(err))
        raise FlatteningError(
            f"non-integral flattening at side {k + 1}: |deviation| = {err[k]:.3e}"
        )
    v0 = complex(v - np.sum(r * 1j * PI * logs))
    return VolumeReport(
        v0=v0,
        vol=v0.imag,
        cs=mod_pi2_canonical(-v0.real),
        r=r,
        essential=is_essential(pf, z, tol_ess),
    )
