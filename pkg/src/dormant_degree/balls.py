"""Certified complex ball arithmetic on top of gmpy2 (MPFR/MPC).

A Ball is a midpoint-radius pair enclosing an exact value: the true
value always lies within `rad` of `mid`.  Midpoints are computed with
correctly rounded MPC operations at the requested precision; every
operation then widens the radius by an upper bound for the propagated
input radii plus the rounding error of the midpoint operation itself.
Radius arithmetic runs in dedicated 64-bit contexts with directed
rounding (up for upper bounds, down for the magnitude lower bounds
needed in division), so the enclosure survives the radius computation
too.

Final results are snapshotted into exact Fractions (binary floats
convert to rationals losslessly), and candidate isolation is decided in
exact rational arithmetic only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Union

import gmpy2
from gmpy2 import mpc, mpfr, mpq, mpz

from .errors import ParameterError, PrecisionError

Scalar = Union[int, Fraction]

MIN_PRECISION_BITS = 2
MAX_PRECISION_BITS = 1 << 20


def _mpfr_to_fraction(x) -> Fraction:
    q = mpq(x)
    return Fraction(int(q.numerator), int(q.denominator))


@dataclass(frozen=True)
class FloatEstimate:
    """Exact snapshot of a ball: midpoint (re, im) and radius, as Fractions."""

    real: Fraction
    imag: Fraction
    radius: Fraction
    precision_bits: int

    def encloses(self, value: Fraction) -> bool:
        """Whether a real value is inside the ball (exact comparison)."""
        return abs(self.real - value) <= self.radius and abs(self.imag) <= self.radius

    def real_interval(self) -> tuple[Fraction, Fraction]:
        return self.real - self.radius, self.real + self.radius


class BallContext:
    """Factory and arithmetic context for balls at a fixed precision."""

    def __init__(self, bits: int):
        if not isinstance(bits, int) or not MIN_PRECISION_BITS <= bits <= MAX_PRECISION_BITS:
            raise ParameterError(
                f"precision_bits must be an integer in "
                f"[{MIN_PRECISION_BITS}, {MAX_PRECISION_BITS}], got {bits!r}"
            )
        self.bits = bits
        self._mid = gmpy2.context(precision=bits, allow_complex=True)
        self._up = gmpy2.context(precision=64, round=gmpy2.RoundUp)
        self._down = gmpy2.context(precision=64, round=gmpy2.RoundDown)
        # Upper bound for the relative rounding error of one correctly
        # rounded midpoint operation (both components, with slack).
        self._eps = mpfr(2) ** (2 - bits)
        self._rad_zero = mpfr(0)

    # -- internal helpers ---------------------------------------------

    def _round_err(self, mid) -> mpfr:
        return self._up.mul(self._eps, self._up.abs(mid))

    def _ball(self, mid, rad) -> "Ball":
        if not gmpy2.is_finite(mid) or not gmpy2.is_finite(rad):
            raise PrecisionError("midpoint or radius overflowed to a non-finite value")
        return Ball(self, mid, rad)

    # -- constructors --------------------------------------------------

    def exact(self, value: Scalar) -> "Ball":
        q = mpq(value.numerator, value.denominator) if isinstance(value, Fraction) else mpq(value)
        mid = self._mid.add(mpc(0), q)
        return self._ball(mid, self._round_err(mid))

    def root_of_unity(self, n: int, power: int) -> "Ball":
        """zeta_n ** power as cos/sin of 2*pi*power/n."""
        k = power % n
        t = self._mid.div(self._mid.mul(self._mid.const_pi(), mpz(2 * k)), mpz(n))
        mid = mpc(self._mid.cos(t), self._mid.sin(t), (self.bits, self.bits))
        # |t| <= 2*pi with ~3 rounded ops, sin/cos are 1-Lipschitz.
        return self._ball(mid, mpfr(2) ** (6 - self.bits))

    def two_sin_pi(self, num: int, den: int) -> "Ball":
        """2*sin(pi*num/den) as a real ball (imaginary part exactly zero)."""
        t = self._mid.div(self._mid.mul(self._mid.const_pi(), mpz(num)), mpz(den))
        mid = mpc(self._mid.mul(mpfr(2), self._mid.sin(t)), mpfr(0), (self.bits, self.bits))
        return self._ball(mid, mpfr(2) ** (6 - self.bits))


class Ball:
    """Midpoint-radius enclosure; arithmetic widens the radius rigorously."""

    __slots__ = ("ctx", "mid", "rad")

    def __init__(self, ctx: BallContext, mid, rad):
        self.ctx = ctx
        self.mid = mid
        self.rad = rad

    def _wrap(self, other) -> "Ball | None":
        if isinstance(other, Ball):
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.exact(other)
        return None

    def __add__(self, other) -> "Ball":
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        ctx = self.ctx
        mid = ctx._mid.add(self.mid, o.mid)
        rad = ctx._up.add(ctx._up.add(self.rad, o.rad), ctx._round_err(mid))
        return ctx._ball(mid, rad)

    __radd__ = __add__

    def __sub__(self, other) -> "Ball":
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        ctx = self.ctx
        mid = ctx._mid.sub(self.mid, o.mid)
        rad = ctx._up.add(ctx._up.add(self.rad, o.rad), ctx._round_err(mid))
        return ctx._ball(mid, rad)

    def __rsub__(self, other) -> "Ball":
        o = self._wrap(other)
        return o - self

    def __neg__(self) -> "Ball":
        return Ball(self.ctx, self.ctx._mid.minus(self.mid), self.rad)

    def __mul__(self, other) -> "Ball":
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        ctx = self.ctx
        up = ctx._up
        mid = ctx._mid.mul(self.mid, o.mid)
        # |xy - m1*m2| <= |m1|r2 + |m2|r1 + r1*r2, then midpoint rounding.
        cross = up.add(
            up.add(up.mul(up.abs(self.mid), o.rad), up.mul(up.abs(o.mid), self.rad)),
            up.mul(self.rad, o.rad),
        )
        return ctx._ball(mid, up.add(cross, ctx._round_err(mid)))

    __rmul__ = __mul__

    def inverse(self) -> "Ball":
        ctx = self.ctx
        lo = ctx._down.abs(self.mid)
        if not lo > self.rad:
            raise PrecisionError(
                "cannot invert a ball that may contain zero; increase precision"
            )
        mid = ctx._mid.div(mpc(1), self.mid)
        denom = ctx._down.mul(lo, ctx._down.sub(lo, self.rad))
        rad = ctx._up.add(ctx._up.div(self.rad, denom), ctx._round_err(mid))
        return ctx._ball(mid, rad)

    def __truediv__(self, other) -> "Ball":
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "Ball":
        o = self._wrap(other)
        return o * self.inverse()

    def __pow__(self, exponent: int) -> "Ball":
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        acc = self.ctx.exact(1)
        while exponent:
            if exponent & 1:
                acc = acc * base
            base = base * base if exponent > 1 else base
            exponent >>= 1
        return acc

    def to_estimate(self) -> FloatEstimate:
        return FloatEstimate(
            real=_mpfr_to_fraction(self.mid.real),
            imag=_mpfr_to_fraction(self.mid.imag),
            radius=_mpfr_to_fraction(self.rad),
            precision_bits=self.ctx.bits,
        )

    def __repr__(self) -> str:
        return f"Ball({self.mid} +/- {self.rad})"


def isolate_integer(lo: Fraction, hi: Fraction) -> int | None:
    """The unique integer in [lo, hi], or None if there is not exactly one."""
    k_lo, k_hi = ceil(lo), floor(hi)
    return k_lo if k_lo == k_hi else None


def isolate_rational(lo: Fraction, hi: Fraction, denominator: int) -> Fraction | None:
    """The unique multiple of 1/denominator in [lo, hi], if exactly one exists."""
    k = isolate_integer(lo * denominator, hi * denominator)
    return None if k is None else Fraction(k, denominator)
