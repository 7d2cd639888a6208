"""Pure-numpy implementation of the hot kernels.

Mirrors linkvol.kernels.numba_impl step for step (same damping schedule,
same convergence thresholds) so the two backends differ only by float
summation order.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"

# Newton/line-search constants shared (by value) with the numba kernels.
DECREASE = 0.25
MAX_BACKTRACK = 25
Z_MAX = 1e12
Z_MIN = 1e-12

STATUS_CONVERGED = 0
STATUS_MAX_ITER = 1
STATUS_STALLED = 2
STATUS_BLOWUP = 3


def resid_jac(z, num0, den0, inc_term, inc_exp):
    """Residual F (rational form of H minus 1) and Jacobian dF/dz."""
    n = inc_term.shape[0]
    with np.errstate(divide="ignore", invalid="ignore"):
        rho = z[num0] / z[den0]
        f = 1.0 - rho
        gathered = f[inc_term]
        factors = np.where(inc_exp == 1, gathered, 1.0)
        neg = inc_exp == -1
        factors = np.where(neg, 1.0 / gathered, factors)
        p = np.prod(factors, axis=1)
        fvec = p - 1.0

        w = inc_exp * (rho / f)[inc_term]
        contrib = p[:, None] * w
        jac = np.zeros((n, n), dtype=np.complex128)
        rows = np.broadcast_to(np.arange(n)[:, None], inc_term.shape)
        cols_num = num0[inc_term]
        cols_den = den0[inc_term]
        np.add.at(jac, (rows, cols_num), -contrib / z[cols_num])
        np.add.at(jac, (rows, cols_den), contrib / z[cols_den])
    return fvec, jac


def _resid_only(z, num0, den0, inc_term, inc_exp):
    with np.errstate(divide="ignore", invalid="ignore"):
        rho = z[num0] / z[den0]
        f = 1.0 - rho
        gathered = f[inc_term]
        factors = np.where(inc_exp == 1, gathered, 1.0)
        neg = inc_exp == -1
        factors = np.where(neg, 1.0 / gathered, factors)
        return np.prod(factors, axis=1) - 1.0


def newton_run(z0, free_idx, keep_idx, num0, den0, inc_term, inc_exp, tol, max_iter):
    """Damped least-squares Newton on the kept equations over free coordinates.

    Returns (z, status, iterations, final_max_residual_on_kept).
    """
    z = z0.copy()
    fvec, jac = resid_jac(z, num0, den0, inc_term, inc_exp)
    fk = fvec[keep_idx]
    res = float(np.max(np.abs(fk))) if np.all(np.isfinite(fk)) else np.inf
    nrm = float(np.linalg.norm(fk)) if np.isfinite(res) else np.inf
    iters = 0
    if free_idx.size == 0:
        status = STATUS_CONVERGED if res < tol else STATUS_STALLED
        return z, status, 0, res

    for iters in range(1, max_iter + 1):
        if res < tol:
            return z, STATUS_CONVERGED, iters - 1, res
        if not np.isfinite(nrm):
            return z, STATUS_BLOWUP, iters - 1, res
        jf = jac[keep_idx][:, free_idx]
        if not np.all(np.isfinite(jf)):
            return z, STATUS_BLOWUP, iters - 1, res
        step = np.linalg.lstsq(jf, -fk, rcond=None)[0]

        lam = 1.0
        accepted = False
        for _ in range(MAX_BACKTRACK):
            zt = z.copy()
            zt[free_idx] += lam * step
            if np.any(zt == 0):
                lam *= 0.5
                continue
            ft = _resid_only(zt, num0, den0, inc_term, inc_exp)[keep_idx]
            nt = float(np.linalg.norm(ft)) if np.all(np.isfinite(ft)) else np.inf
            if nt < nrm * (1.0 - DECREASE * lam):
                z = zt
                accepted = True
                break
            lam *= 0.5
        if not accepted:
            return z, STATUS_STALLED, iters, res
        if np.max(np.abs(z)) > Z_MAX or np.min(np.abs(z)) < Z_MIN:
            return z, STATUS_BLOWUP, iters, res
        fvec, jac = resid_jac(z, num0, den0, inc_term, inc_exp)
        fk = fvec[keep_idx]
        res = float(np.max(np.abs(fk))) if np.all(np.isfinite(fk)) else np.inf
        nrm = float(np.linalg.norm(fk)) if np.isfinite(res) else np.inf

    status = STATUS_CONVERGED if res < tol else STATUS_MAX_ITER
    return z, status, max_iter, res
