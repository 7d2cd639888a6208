"""Exact pipeline for twist knots: defining polynomials and their solutions.

With the gauge a = 2, b = -1, y_{n+1} = 1 the remaining H equations force
x_{n+1} = 3, y_0 = (t+2)/t, x_1 = t(t+2)/(t^2-4t+8), y_1 = 4/t in terms of
t = x_0, and the half-twist crossings give the recursions

    x_{k+1} = x_k y_k / (-x_{k-1} + x_k + y_k),
    y_{k+1} = x_k + y_k - x_k y_k / y_{k-1}.

Running these in exact rational-function arithmetic and clearing
denominators in y_n = 3t/(3t-4) produces an integer defining polynomial
for t; every root reconstructs a full solution of H, whose corrected
potential V0 gives the complex volume of the associated representation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from linkvol.diagram import twist_knot_diagram
from linkvol.intpoly import IntPoly, RatFunc, poly_gcd, univariate_roots
from linkvol.potential import (
    TOL_ESS,
    TOL_FLAT,
    TOL_SOLVE,
    PotentialFunction,
    SolutionPoint,
    VolumeReport,
    build,
    eval_v0,
    h_residuals,
)
from linkvol.solver import polish


def twist_variable_table(kmax: int) -> list[tuple[RatFunc, RatFunc]]:
    """(x_k, y_k) as reduced rational functions of t, for k = 0..kmax."""
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    t = RatFunc.x()
    x0 = t
    y0 = (t + RatFunc.const(2)) / t
    table = [(x0, y0)]
    if kmax == 0:
        return table
    x1 = (t * t + RatFunc.const(2) * t) / (
        t * t - RatFunc.const(4) * t + RatFunc.const(8)
    )
    y1 = RatFunc.const(4) / t
    table.append((x1, y1))
    for k in range(1, kmax):
        xkm1, ykm1 = table[k - 1]
        xk, yk = table[k]
        x_next = (xk * yk) / (xk + yk - xkm1)
        y_next = xk + yk - (xk * yk) / ykm1
        table.append((x_next, y_next))
    del one
    return table


def twist_defining_polynomial(n: int) -> IntPoly:
    """Integer defining polynomial of t for the n-twist knot.

    Clears denominators in y_n * (3t - 4) - 3t = 0 and removes any
    polynomial factor shared with the accumulated denominators (a guard;
    empty for small n).  The overall sign is normalized positive; the raw
    integer content is kept so coefficients match the published table
    exactly.
    """
    if n < 1:
        raise ValueError("twist_defining_polynomial: n must be >= 1")
    table = twist_variable_table(n)
    yn = table[n][1]
    three_t = IntPoly((0, 3))
    clasp = IntPoly((-4, 3))  # 3t - 4
    p = yn.num * clasp - three_t * yn.den
    if p.is_zero:
        raise ArithmeticError("degenerate defining polynomial")
    # Guard against spurious factors introduced by clearing denominators.
    dens = [yn.den, three_t, clasp]
    dens.extend(x.den for x, _ in table)
    dens.extend(y.den for _, y in table)
    for d in dens:
        while True:
            g = poly_gcd(p, d)
            if g.degree < 1:
                break
            p, _ = p.divmod_exact(g)
    return p.sign_normalized()


@dataclass(frozen=True)
class TwistRow:
    """One root t of the defining polynomial with its solution data."""

    t: complex
    point: SolutionPoint
    report: VolumeReport
    verified: bool
    max_residual: float


@dataclass(frozen=True)
class TwistResult:
    n: int
    polynomial: IntPoly
    rows: tuple[TwistRow, ...]
    pf: PotentialFunction
    geometric_index: int

    @property
    def points(self) -> tuple[SolutionPoint, ...]:
        return tuple(row.point for row in self.rows)


def twist_side_vector(n: int, t: complex, table=None) -> np.ndarray:
    """Full side vector for the twist diagram at parameter t.

    Index layout matches twist_knot_diagram: a=1, b=2, x_k=3+k, y_k=n+5+k.
    """
    if table is None:
        table = twist_variable_table(n)
    z = np.empty(2 * n + 6, dtype=np.complex128)
    z[0] = 2.0
    z[1] = -1.0
    for k in range(n + 1):
        xk, yk = table[k]
        z[2 + k] = xk(t)
        z[n + 4 + k] = yk(t)
    z[2 + n + 1] = 3.0
    z[n + 4 + n + 1] = 1.0
    return z


def twist_solutions(
    n: int,
    tol_solve: float = TOL_SOLVE,
    tol_flat: float = TOL_FLAT,
    tol_ess: float = TOL_ESS,
    backend: str | None = None,
) -> TwistResult:
    """All solutions of H for the n-twist knot from the defining polynomial.

    Each root is substituted into the recomputed rational expressions,
    polished on the full system, and verified against every equation of H.
    Rows are ordered by descending Im V0, so the geometric representation
    (maximal imaginary part) comes first.
    """
    if n < 1:
        raise ValueError("twist_solutions: n must be >= 1")
    diagram = twist_knot_diagram(n)
    pf = build(diagram)
    poly = twist_defining_polynomial(n)
    table = twist_variable_table(n)
    roots = univariate_roots(poly)
    rows = []
    for t in sorted(roots, key=lambda r: (round(r.real, 10), round(r.imag, 10))):
        z = twist_side_vector(n, complex(t), table)
        z = polish(pf, z, tol_solve=tol_solve, backend=backend)
        res = float(np.max(np.abs(h_residuals(pf, z))))
        verified = res < tol_solve
        report = eval_v0(pf, z, tol_flat=tol_flat, tol_ess=tol_ess)
        point = SolutionPoint(z=z, r=report.r, essential=report.essential)
        rows.append(TwistRow(complex(t), point, report, verified, res))
    rows.sort(key=lambda row: (-row.report.vol, row.report.cs, row.t.real, row.t.imag))
    geometric = int(np.argmax([row.report.vol for row in rows])) if rows else -1
    return TwistResult(n, poly, tuple(rows), pf, geometric)
