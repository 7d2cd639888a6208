"""Exact dense integer polynomials, rational functions, and root finding.

Coefficients are arbitrary-precision Python ints, stored ascending by
degree.  Division, gcd (via primitive pseudo-remainder sequences), and
rational-function arithmetic are exact; these back the twist-knot pipeline
where defining polynomials must come out coefficient-for-coefficient.

Complex roots are computed from the companion matrix (numpy eigenvalues)
and polished with a few Newton steps on the exact polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


def _trim(coeffs) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(int(x) for x in c)


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial c[0] + c[1] t + ... + c[deg] t^deg, c[deg] != 0."""

    coeffs: tuple[int, ...]

    @classmethod
    def from_coeffs(cls, coeffs) -> "IntPoly":
        return cls(_trim(coeffs))

    @classmethod
    def const(cls, v: int) -> "IntPoly":
        return cls.from_coeffs([v])

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> "IntPoly":
        """Divide out the content and make the leading coefficient positive."""
        if self.is_zero:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPoly(tuple(c // g for c in self.coeffs))

    def sign_normalized(self) -> "IntPoly":
        """Flip sign so the leading coefficient is positive (content kept)."""
        if self.is_zero or self.leading > 0:
            return self
        return IntPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(_trim(out))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            if other == 0:
                return IntPoly(())
            return IntPoly(tuple(c * other for c in self.coeffs))
        if self.is_zero or other.is_zero:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(_trim(out))

    __rmul__ = __mul__

    def shift(self, k: int) -> "IntPoly":
        """Multiply by t^k."""
        if self.is_zero:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def divmod_exact(self, other: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Polynomial division assuming every coefficient quotient is exact.

        Used only where exactness is guaranteed (dividing out a known factor);
        raises if a non-integer quotient appears.
        """
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        q = [0] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lc = other.leading
        while len(rem) - 1 >= d and any(rem):
            k = len(rem) - 1
            if rem[-1] == 0:
                rem.pop()
                continue
            if rem[-1] % lc != 0:
                raise ValueError("non-exact polynomial division")
            f = rem[-1] // lc
            q[k - d] = f
            for i, c in enumerate(other.coeffs):
                rem[k - d + i] -= f * c
            rem.pop()
        return IntPoly(_trim(q)), IntPoly(_trim(rem))

    def pseudo_rem(self, other: "IntPoly") -> "IntPoly":
        """Pseudo-remainder: rem of (lc(other)^(deg diff + 1)) * self by other."""
        if other.is_zero:
            raise ZeroDivisionError("pseudo-division by zero polynomial")
        rem = list(self.coeffs)
        d = other.degree
        lc = other.leading
        while len(rem) - 1 >= d:
            if rem[-1] == 0:
                rem.pop()
                continue
            f = rem[-1]
            rem = [lc * c for c in rem]
            for i, c in enumerate(other.coeffs):
                rem[len(rem) - 1 - d + i] -= f * c
            rem.pop()
        return IntPoly(_trim(rem))

    def derivative(self) -> "IntPoly":
        return IntPoly(_trim([i * c for i, c in enumerate(self.coeffs)][1:]))

    def __call__(self, t):
        """Horner evaluation; preserves the argument's arithmetic (int,
        Fraction, float, complex, ndarray)."""
        if self.is_zero:
            return 0 * t if not np.isscalar(t) else 0
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * t + c
        return acc

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"{c:+}*t")
            else:
                parts.append(f"{c:+}*t^{i}")
        return " ".join(parts)


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd via a primitive pseudo-remainder sequence."""
    if a.is_zero:
        return b.primitive()
    if b.is_zero:
        return a.primitive()
    a, b = a.primitive(), b.primitive()
    while not b.is_zero:
        r = a.pseudo_rem(b)
        a, b = b, r.primitive() if not r.is_zero else r
    return a.primitive()


@dataclass(frozen=True)
class RatFunc:
    """Reduced rational function num/den over the integers.

    Always stored with gcd(num, den) = 1 and den's leading coefficient
    positive (the primitive-part convention pushes content into num).
    """

    num: IntPoly
    den: IntPoly

    @classmethod
    def make(cls, num: IntPoly, den: IntPoly) -> "RatFunc":
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            return cls(IntPoly(()), IntPoly((1,)))
        g = poly_gcd(num, den)
        if g.degree > 0 or g.leading != 1:
            num, _ = num.divmod_exact(g)
            den, _ = den.divmod_exact(g)
        cg = math.gcd(num.content(), den.content())
        if den.leading < 0:
            cg = -cg
        if cg != 1:
            num = IntPoly(tuple(c // cg for c in num.coeffs))
            den = IntPoly(tuple(c // cg for c in den.coeffs))
        return cls(num, den)

    @classmethod
    def from_poly(cls, p: IntPoly) -> "RatFunc":
        return cls(p, IntPoly((1,)))

    @classmethod
    def const(cls, v: int) -> "RatFunc":
        return cls.from_poly(IntPoly.const(v))

    @classmethod
    def x(cls) -> "RatFunc":
        return cls.from_poly(IntPoly.x())

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.num.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc.make(self.num * other.den, self.den * other.num)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __call__(self, t):
        return self.num(t) / self.den(t)

    def eval_fraction(self, t: Fraction) -> Fraction:
        return Fraction(self.num(t)) / Fraction(self.den(t))

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"


def univariate_roots(p: IntPoly, polish: bool = True) -> np.ndarray:
    """All complex roots of p to ~1e-12 (companion-matrix eigenvalues,
    then Newton-polished on the exact polynomial to ~1e-14)."""
    if p.is_zero:
        raise ValueError("the zero polynomial has no well-defined roots")
    if p.degree < 1:
        return np.array([], dtype=np.complex128)
    monic_rev = np.array([float(c) for c in reversed(p.coeffs)])
    roots = np.roots(monic_rev).astype(np.complex128)
    if polish:
        dp = p.derivative()
        for i, r in enumerate(roots):
            x = complex(r)
            for _ in range(50):
                fx = complex(p(x))
                dfx = complex(dp(x))
                if dfx == 0:
                    break
                step = fx / dfx
                x -= step
                if abs(step) < 1e-15 * max(1.0, abs(x)):
                    break
            roots[i] = x
    return roots
