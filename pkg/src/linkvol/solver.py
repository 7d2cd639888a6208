"""Finding essential solutions of H: gauged Newton runs and multi-start search.

H is scale-invariant (z and lambda*z solve it together) and carries one
formal product dependency among its equations, and solution components can
have higher dimension still.  A GaugeSpec pins at least the overall scale
(z_1 = 1 by default); the Newton step is a damped least-squares step, which
tolerates the remaining rank deficiency, and the search escalates by
anchoring extra coordinates when a converged point's reduced Jacobian is
rank-deficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from linkvol.kernels import get_kernels
from linkvol.potential import (
    TOL_DEDUPE,
    TOL_ESS,
    TOL_FLAT,
    TOL_SOLVE,
    FlatteningError,
    PotentialFunction,
    SolutionPoint,
    VolumeReport,
    eval_v0,
    h_residuals,
    is_essential,
)

MAX_ITER = 100

_STATUS_NAMES = {
    0: "converged",
    1: "max-iterations",
    2: "stalled",
    3: "blow-up",
}


@dataclass(frozen=True)
class GaugeSpec:
    """Pinned coordinates (1-based side -> value) and dropped equation ids."""

    pinned: dict[int, complex]
    dropped_equations: frozenset[int] = frozenset()

    def __post_init__(self):
        if not self.pinned:
            raise ValueError("GaugeSpec requires at least one pinned coordinate")

    def free_idx(self, n: int) -> np.ndarray:
        pinned0 = {k - 1 for k in self.pinned}
        return np.array([i for i in range(n) if i not in pinned0], dtype=np.int64)

    def keep_idx(self, n: int) -> np.ndarray:
        dropped0 = {k - 1 for k in self.dropped_equations}
        return np.array([i for i in range(n) if i not in dropped0], dtype=np.int64)


@dataclass(frozen=True)
class NewtonResult:
    point: SolutionPoint | None
    converged: bool
    iterations: int
    residual: float
    reason: str
    z_final: np.ndarray | None = None


@dataclass(frozen=True)
class SolutionSet:
    points: tuple[SolutionPoint, ...]
    reports: tuple[VolumeReport, ...]
    geometric_index: int | None
    n_starts: int
    n_converged: int
    n_nonessential: int


def _run_kernel(pf, z0, free_idx, keep_idx, tol, max_iter, backend):
    kern = get_kernels(backend)
    num0, den0, inc_term, inc_exp = pf.arrays()
    return kern.newton_run(
        np.asarray(z0, dtype=np.complex128),
        free_idx,
        keep_idx,
        num0,
        den0,
        inc_term,
        inc_exp,
        tol,
        max_iter,
    )


def newton(
    pf: PotentialFunction,
    gauge: GaugeSpec,
    start,
    tol_solve: float = TOL_SOLVE,
    tol_flat: float = TOL_FLAT,
    tol_ess: float = TOL_ESS,
    max_iter: int = MAX_ITER,
    backend: str | None = None,
) -> NewtonResult:
    """Damped least-squares Newton from one start, respecting the gauge.

    Success means max |H residual| < tol_solve on the full system within
    max_iter iterations AND the limit is essential with integral flattening.
    """
    z0 = np.asarray(start, dtype=np.complex128).copy()
    if z0.shape != (pf.n,):
        raise ValueError(f"start must have shape ({pf.n},)")
    for k, v in gauge.pinned.items():
        if not (1 <= k <= pf.n):
            raise ValueError(f"pinned side {k} out of range")
        if abs(z0[k - 1] - v) > 1e-12 * max(1.0, abs(v)):
            raise ValueError(
                f"start violates pinned coordinate z_{k} = {v} (got {z0[k - 1]})"
            )
        z0[k - 1] = v
    free_idx = gauge.free_idx(pf.n)
    keep_idx = gauge.keep_idx(pf.n)
    z, status, iters, res = _run_kernel(
        pf, z0, free_idx, keep_idx, tol_solve, max_iter, backend
    )
    if status != 0:
        return NewtonResult(None, False, iters, res, _STATUS_NAMES[status], z)
    full_res = float(np.max(np.abs(h_residuals(pf, z))))
    if full_res > tol_solve:
        return NewtonResult(None, False, iters, full_res, "dropped-equation-violated", z)
    if not is_essential(pf, z, tol_ess):
        return NewtonResult(None, False, iters, full_res, "non-essential", z)
    try:
        from linkvol.potential import flattening

        r = flattening(pf, z, tol_flat)
    except FlatteningError as exc:
        return NewtonResult(None, False, iters, full_res, f"flattening: {exc}", z)
    return NewtonResult(
        SolutionPoint(z=z, r=r, essential=True), True, iters, full_res, "converged", z
    )


def polish(
    pf: PotentialFunction,
    z,
    tol_solve: float = TOL_SOLVE,
    max_iter: int = 8,
    backend: str | None = None,
) -> np.ndarray:
    """Minimum-norm Newton refinement of an approximate solution.

    No coordinates are pinned; the least-squares step is orthogonal to the
    solution component, so the point moves only toward the component.
    """
    n = pf.n
    all_idx = np.arange(n, dtype=np.int64)
    z1, status, _, _ = _run_kernel(pf, z, all_idx, all_idx, tol_solve, max_iter, backend)
    return z1 if status == 0 else np.asarray(z, dtype=np.complex128)


def _jacobian_rank_deficiency(pf, z, free_idx, backend=None) -> tuple[int, np.ndarray]:
    kern = get_kernels(backend)
    num0, den0, inc_term, inc_exp = pf.arrays()
    _, jac = kern.resid_jac(np.asarray(z, np.complex128), num0, den0, inc_term, inc_exp)
    jf = jac[:, free_idx]
    sv = np.linalg.svd(jf, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return len(free_idx), np.array([])
    deficiency = int(np.sum(sv < 1e-8 * sv[0]))
    return deficiency, sv


def _sample_starts(rng, n_starts, n, radius):
    """Log-uniform moduli in [1/radius, radius], uniform phases."""
    expo = rng.uniform(-1.0, 1.0, size=(n_starts, n))
    phase = rng.uniform(0.0, 2.0 * math.pi, size=(n_starts, n))
    return (radius ** expo) * np.exp(1j * phase)


def search(
    pf: PotentialFunction,
    n_starts: int = 500,
    seed: int = 0,
    radius: float = 10.0,
    tol_solve: float = TOL_SOLVE,
    tol_flat: float = TOL_FLAT,
    tol_ess: float = TOL_ESS,
    tol_dedupe: float = TOL_DEDUPE,
    max_iter: int = MAX_ITER,
    backend: str | None = None,
) -> SolutionSet:
    """Deterministic multi-start search for essential solutions of H.

    Pins z_1 = 1 (the projective scale), runs damped least-squares Newton
    from n_starts random points, anchors extra coordinates where the reduced
    Jacobian is rank-deficient at a converged point, deduplicates
    projectively, and flags the max-Im-V0 point as geometric.  An empty
    result is a legitimate outcome (diagrams whose H forces a degenerate
    ratio have no essential solutions), not an error.
    """
    n = pf.n
    rng = np.random.default_rng(seed)
    starts = _sample_starts(rng, n_starts, n, radius)
    starts[:, 0] = 1.0
    free_idx = np.array(range(1, n), dtype=np.int64)
    keep_idx = np.arange(n, dtype=np.int64)

    accepted: list[tuple[np.ndarray, np.ndarray, VolumeReport]] = []
    n_converged = 0
    n_nonessential = 0
    for i in range(n_starts):
        z, status, _, _ = _run_kernel(
            pf, starts[i], free_idx, keep_idx, tol_solve, max_iter, backend
        )
        if status != 0:
            continue
        if float(np.max(np.abs(h_residuals(pf, z)))) > tol_solve:
            continue
        n_converged += 1
        if not is_essential(pf, z, tol_ess):
            n_nonessential += 1
            continue
        # Anchor any residual gauge freedom at the converged point and
        # re-polish, so the reduced Jacobian of the final gauge is regular.
        deficiency, _ = _jacobian_rank_deficiency(pf, z, free_idx, backend)
        if deficiency > 0:
            anchors = free_idx[: deficiency]
            sub_free = np.array(
                [j for j in free_idx if j not in set(anchors.tolist())], dtype=np.int64
            )
            z, status, _, _ = _run_kernel(
                pf, z, sub_free, keep_idx, tol_solve, 10, backend
            )
            if status != 0 or not is_essential(pf, z, tol_ess):
                continue
        try:
            report = eval_v0(pf, z, tol_flat=tol_flat, tol_ess=tol_ess)
        except FlatteningError:
            continue
        accepted.append((z, report.r, report))

    # Projective dedupe: z_1 is pinned to 1, so compare vectors directly.
    unique: list[tuple[np.ndarray, np.ndarray, VolumeReport]] = []
    for z, r, rep in accepted:
        dup = False
        for zu, _, _ in unique:
            if np.max(np.abs(z - zu)) < tol_dedupe:
                dup = True
                break
        if not dup:
            unique.append((z, r, rep))

    unique.sort(
        key=lambda item: (
            -round(item[2].vol, 9),
            round(item[2].cs, 9),
            tuple(np.round(item[0].view(np.float64), 9).tolist()),
        )
    )
    points = tuple(SolutionPoint(z=z, r=r, essential=True) for z, r, _ in unique)
    reports = tuple(rep for _, _, rep in unique)
    geometric = None
    if points:
        geometric = int(np.argmax([rep.vol for rep in reports]))
    return SolutionSet(
        points=points,
        reports=reports,
        geometric_index=geometric,
        n_starts=n_starts,
        n_converged=n_converged,
        n_nonessential=n_nonessential,
    )
