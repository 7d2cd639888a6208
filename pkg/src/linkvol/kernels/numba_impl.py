"""Numba-compiled implementation of the hot kernels.

The algorithm (damping schedule, convergence thresholds, status codes) is
kept exactly in step with linkvol.kernels.numpy_impl.
"""

from __future__ import annotations

import numpy as np
from numba import njit

NAME = "numba"

DECREASE = 0.25
MAX_BACKTRACK = 25
Z_MAX = 1e12
Z_MIN = 1e-12

STATUS_CONVERGED = 0
STATUS_MAX_ITER = 1
STATUS_STALLED = 2
STATUS_BLOWUP = 3


@njit(cache=True)
def _resid_jac_impl(z, num0, den0, inc_term, inc_exp):
    n = inc_term.shape[0]
    width = inc_term.shape[1]
    nterms = num0.shape[0]
    rho = np.empty(nterms, dtype=np.complex128)
    f = np.empty(nterms, dtype=np.complex128)
    for t in range(nterms):
        rho[t] = z[num0[t]] / z[den0[t]]
        f[t] = 1.0 - rho[t]
    fvec = np.empty(n, dtype=np.complex128)
    jac = np.zeros((n, n), dtype=np.complex128)
    for k in range(n):
        p = 1.0 + 0.0j
        for j in range(width):
            e = inc_exp[k, j]
            if e == 0:
                continue
            t = inc_term[k, j]
            if e == 1:
                p = p * f[t]
            else:
                p = p / f[t]
        fvec[k] = p - 1.0
        for j in range(width):
            e = inc_exp[k, j]
            if e == 0:
                continue
            t = inc_term[k, j]
            w = e * rho[t] / f[t]
            nm = num0[t]
            dn = den0[t]
            jac[k, nm] += -p * w / z[nm]
            jac[k, dn] += p * w / z[dn]
    return fvec, jac


@njit(cache=True)
def _resid_only_impl(z, num0, den0, inc_term, inc_exp):
    n = inc_term.shape[0]
    width = inc_term.shape[1]
    nterms = num0.shape[0]
    f = np.empty(nterms, dtype=np.complex128)
    for t in range(nterms):
        f[t] = 1.0 - z[num0[t]] / z[den0[t]]
    fvec = np.empty(n, dtype=np.complex128)
    for k in range(n):
        p = 1.0 + 0.0j
        for j in range(width):
            e = inc_exp[k, j]
            if e == 0:
                continue
            t = inc_term[k, j]
            if e == 1:
                p = p * f[t]
            else:
                p = p / f[t]
        fvec[k] = p - 1.0
    return fvec


@njit(cache=True)
def _max_abs(v):
    m = 0.0
    ok = True
    for i in range(v.shape[0]):
        a = abs(v[i])
        if not np.isfinite(a):
            ok = False
            break
        if a > m:
            m = a
    return m, ok


@njit(cache=True)
def _norm2(v):
    s = 0.0
    for i in range(v.shape[0]):
        s += v[i].real * v[i].real + v[i].imag * v[i].imag
    return np.sqrt(s)


@njit(cache=True)
def _newton_run_impl(z0, free_idx, keep_idx, num0, den0, inc_term, inc_exp, tol, max_iter):
    z = z0.copy()
    fvec, jac = _resid_jac_impl(z, num0, den0, inc_term, inc_exp)
    fk = fvec[keep_idx]
    res, ok = _max_abs(fk)
    if not ok:
        res = np.inf
    nrm = _norm2(fk) if ok else np.inf
    if free_idx.shape[0] == 0:
        status = STATUS_CONVERGED if res < tol else STATUS_STALLED
        return z, status, 0, res

    nkeep = keep_idx.shape[0]
    nfree = free_idx.shape[0]
    for iters in range(1, max_iter + 1):
        if res < tol:
            return z, STATUS_CONVERGED, iters - 1, res
        if not np.isfinite(nrm):
            return z, STATUS_BLOWUP, iters - 1, res
        jf = np.empty((nkeep, nfree), dtype=np.complex128)
        finite = True
        for a in range(nkeep):
            for b in range(nfree):
                v = jac[keep_idx[a], free_idx[b]]
                if not (np.isfinite(v.real) and np.isfinite(v.imag)):
                    finite = False
                jf[a, b] = v
        if not finite:
            return z, STATUS_BLOWUP, iters - 1, res
        step = np.linalg.lstsq(jf, -fk, rcond=-1.0)[0]

        lam = 1.0
        accepted = False
        for _ in range(MAX_BACKTRACK):
            zt = z.copy()
            for b in range(nfree):
                zt[free_idx[b]] += lam * step[b]
            zero = False
            for i in range(zt.shape[0]):
                if zt[i] == 0:
                    zero = True
                    break
            if zero:
                lam *= 0.5
                continue
            ft = _resid_only_impl(zt, num0, den0, inc_term, inc_exp)[keep_idx]
            _, okt = _max_abs(ft)
            nt = _norm2(ft) if okt else np.inf
            if nt < nrm * (1.0 - DECREASE * lam):
                z = zt
                accepted = True
                break
            lam *= 0.5
        if not accepted:
            return z, STATUS_STALLED, iters, res
        zmax = 0.0
        zmin = np.inf
        for i in range(z.shape[0]):
            a = abs(z[i])
            if a > zmax:
                zmax = a
            if a < zmin:
                zmin = a
        if zmax > Z_MAX or zmin < Z_MIN:
            return z, STATUS_BLOWUP, iters, res
        fvec, jac = _resid_jac_impl(z, num0, den0, inc_term, inc_exp)
        fk = fvec[keep_idx]
        res, ok = _max_abs(fk)
        if not ok:
            res = np.inf
        nrm = _norm2(fk) if ok else np.inf

    status = STATUS_CONVERGED if res < tol else STATUS_MAX_ITER
    return z, status, max_iter, res


def resid_jac(z, num0, den0, inc_term, inc_exp):
    return _resid_jac_impl(
        np.ascontiguousarray(z), num0, den0, inc_term, inc_exp
    )


def newton_run(z0, free_idx, keep_idx, num0, den0, inc_term, inc_exp, tol, max_iter):
    z, status, iters, res = _newton_run_impl(
        np.ascontiguousarray(z0),
        free_idx,
        keep_idx,
        num0,
        den0,
        inc_term,
        inc_exp,
        float(tol),
        int(max_iter),
    )
    return z, int(status), int(iters), float(res)
