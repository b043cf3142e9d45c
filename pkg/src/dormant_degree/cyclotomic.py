"""Exact arithmetic in cyclotomic fields Q(zeta_m).

An element is stored as its coefficient vector in the power basis
1, zeta, ..., zeta^(phi(m)-1), i.e. as a polynomial in a primitive m-th
root of unity reduced modulo the m-th cyclotomic polynomial Phi_m.  The
vector always has length phi(m) (zero-padded), so the representation is
canonical and two elements are equal iff their vectors are equal.
Coefficients are exact rationals; nothing in this module touches
floating point.

Phi_m itself is computed over the integers by the divisor recursion
Phi_m = (x^m - 1) / prod(Phi_d : d | m, d < m) with exact polynomial
division.  Products are reduced eagerly after every multiplication,
which keeps intermediate degrees below 2*phi(m).  For prime m the
reduction uses x^(m-1) = -(1 + x + ... + x^(m-2)) directly instead of a
generic polynomial remainder.

Everything here is immutable after construction and safe to share
between threads or processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence, Union

from .errors import ConductorMismatchError, IrrationalityError, ParameterError
from .util import divisors, is_prime

#: The exact rational scalar used throughout the package.  The stdlib
#: Fraction already guarantees canonical form (positive denominator,
#: gcd(numerator, denominator) == 1 after every operation).
BigRational = Fraction

Scalar = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _trim_int(coeffs: Sequence[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients lowest degree first.

    The zero polynomial is the empty tuple; otherwise the leading
    coefficient is nonzero.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim_int(tuple(self.coeffs)))

    @property
    def degree(self) -> int:
        """Degree, with the convention degree(0) == -1."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if not self.coeffs or not other.coeffs:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    def divide_exact(self, den: "IntPoly") -> "IntPoly":
        """Exact quotient self / den; raises if the division leaves a remainder."""
        if not den:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dc = den.coeffs
        lead = dc[-1]
        qlen = max(0, len(rem) - len(dc) + 1)
        quot = [0] * qlen
        for k in range(len(rem) - 1, len(dc) - 2, -1):
            c = rem[k]
            if c == 0:
                continue
            if c % lead:
                raise ArithmeticError("inexact polynomial division")
            f = c // lead
            quot[k - len(dc) + 1] = f
            for j, b in enumerate(dc):
                rem[k - len(dc) + 1 + j] -= f * b
        if any(rem):
            raise ArithmeticError("inexact polynomial division")
        return IntPoly(tuple(quot))

    def __call__(self, x: "CycloElt") -> "CycloElt":
        """Evaluate at a cyclotomic element (Horner)."""
        acc = CycloElt.zero(x.conductor)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> IntPoly:
    """The m-th cyclotomic polynomial Phi_m, monic of degree phi(m)."""
    if m < 1:
        raise ParameterError(f"conductor must be >= 1, got {m}")
    if m == 1:
        return IntPoly((-1, 1))
    x_m_minus_1 = IntPoly((-1,) + (0,) * (m - 1) + (1,))
    den = reduce(
        lambda a, b: a * b,
        (cyclotomic_polynomial(d) for d in divisors(m) if d < m),
    )
    return x_m_minus_1.divide_exact(den)


@dataclass(frozen=True)
class _Field:
    """Cached per-conductor data: Phi_m, its degree, and a prime flag."""

    m: int
    phi: tuple[int, ...]
    degree: int
    prime: bool


@lru_cache(maxsize=None)
def _field(m: int) -> _Field:
    phi = cyclotomic_polynomial(m)
    return _Field(m, phi.coeffs, phi.degree, is_prime(m))


def _reduce_mod_phi(field: _Field, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    """Unique remainder of a coefficient list modulo the monic Phi_m."""
    d = field.degree
    phi = field.phi
    for k in range(len(coeffs) - 1, d - 1, -1):
        top = coeffs[k]
        if top:
            coeffs[k] = _ZERO
            base = k - d
            for j in range(d):
                pj = phi[j]
                if pj:
                    coeffs[base + j] -= top * pj
    out = coeffs[:d]
    if len(out) < d:
        out.extend([_ZERO] * (d - len(out)))
    return tuple(out)


def _mul_reduced(field: _Field, a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    prod: list[Fraction] = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    m = field.m
    if field.prime and m > 2:
        # x^m == 1, then x^(m-1) == -(1 + x + ... + x^(m-2)).
        folded: list[Fraction] = [_ZERO] * m
        for k, c in enumerate(prod):
            if c:
                folded[k % m] += c
        top = folded[m - 1]
        if top:
            return tuple(c - top for c in folded[: m - 1])
        return tuple(folded[: m - 1])
    return _reduce_mod_phi(field, prod)


class CycloElt:
    """An element of Q(zeta_m) in canonical reduced form.

    Instances are immutable; arithmetic returns new objects.  Mixing two
    conductors in one operation raises ConductorMismatchError, and plain
    ints / Fractions coerce to constants of the matching field.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: tuple[Fraction, ...]):
        field = _field(conductor)
        if len(coeffs) != field.degree:
            raise ParameterError(
                f"coefficient vector for Q(zeta_{conductor}) must have length "
                f"{field.degree}, got {len(coeffs)}"
            )
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("CycloElt is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def from_coeffs(cls, m: int, coeffs: Iterable[Scalar]) -> "CycloElt":
        """Build an element from any coefficient list, reducing mod Phi_m."""
        field = _field(m)
        lst = [Fraction(c) for c in coeffs]
        if len(lst) > field.degree:
            return cls(m, _reduce_mod_phi(field, lst))
        lst.extend([_ZERO] * (field.degree - len(lst)))
        return cls(m, tuple(lst))

    @classmethod
    def zero(cls, m: int) -> "CycloElt":
        return cls.from_coeffs(m, ())

    @classmethod
    def one(cls, m: int) -> "CycloElt":
        return cls.from_coeffs(m, (1,))

    @classmethod
    def from_rational(cls, m: int, value: Scalar) -> "CycloElt":
        return cls.from_coeffs(m, (Fraction(value),))

    @classmethod
    def root(cls, m: int, power: int = 1) -> "CycloElt":
        """zeta_m ** power for the canonical primitive m-th root zeta_m."""
        k = power % m
        return cls.from_coeffs(m, (0,) * k + (1,))

    # -- helpers -----------------------------------------------------

    def _coerce(self, other) -> "CycloElt | None":
        if isinstance(other, CycloElt):
            if other.conductor != self.conductor:
                raise ConductorMismatchError(
                    f"conductor mismatch: {self.conductor} vs {other.conductor}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycloElt.from_rational(self.conductor, other)
        return None

    # -- arithmetic --------------------------------------------------

    def __add__(self, other) -> "CycloElt":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloElt(self.conductor, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycloElt":
        return CycloElt(self.conductor, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> "CycloElt":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloElt(self.conductor, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other) -> "CycloElt":
        return (-self) + other

    def __mul__(self, other) -> "CycloElt":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycloElt(self.conductor, tuple(a * q for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloElt(self.conductor, _mul_reduced(_field(self.conductor), self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "CycloElt":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if not q:
                raise ZeroDivisionError(f"division by zero in Q(zeta_{self.conductor})")
            return self * (1 / q)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * cyclo_invert(o)

    def __rtruediv__(self, other) -> "CycloElt":
        inv = cyclo_invert(self)
        return inv * other

    def __pow__(self, exponent: int) -> "CycloElt":
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base = cyclo_invert(base)
            exponent = -exponent
        acc = CycloElt.one(self.conductor)
        while exponent:
            if exponent & 1:
                acc = acc * base
            base = base * base if exponent > 1 else base
            exponent >>= 1
        return acc

    # -- predicates & conversion --------------------------------------

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycloElt.from_rational(self.conductor, other)
        if not isinstance(other, CycloElt):
            return NotImplemented
        return self.conductor == other.conductor and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.conductor, self.coeffs))

    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else (f"{c}*z^{k}" if k > 1 else f"{c}*z"))
        body = " + ".join(terms) if terms else "0"
        return f"CycloElt({self.conductor}: {body})"


def cyclo_mul(u: CycloElt, v: CycloElt) -> CycloElt:
    """Exact product in Q(zeta_m); conductors must agree."""
    if not isinstance(u, CycloElt) or not isinstance(v, CycloElt):
        raise ParameterError("cyclo_mul expects two CycloElt values")
    return u * v


def _trim_frac(coeffs: list[Fraction]) -> list[Fraction]:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return coeffs[:n]


def _poly_mul_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_sub_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = list(a) + [_ZERO] * (len(b) - len(a))
    for j, bj in enumerate(b):
        if bj:
            out[j] -= bj
    return _trim_frac(out)


def _poly_divmod_frac(num: list[Fraction], den: list[Fraction]):
    rem = list(num)
    lead = den[-1]
    qlen = max(0, len(rem) - len(den) + 1)
    quot = [_ZERO] * qlen
    for k in range(len(rem) - 1, len(den) - 2, -1):
        c = rem[k]
        if c:
            f = c / lead
            quot[k - len(den) + 1] = f
            for j, bj in enumerate(den):
                if bj:
                    rem[k - len(den) + 1 + j] -= f * bj
    return quot, _trim_frac(rem[: len(den) - 1])


def cyclo_invert(u: CycloElt) -> CycloElt:
    """Multiplicative inverse via the extended Euclidean algorithm.

    Runs on (representative polynomial, Phi_m) over Q[x].  Phi_m is
    irreducible over Q, so the gcd is a nonzero constant for every
    nonzero input.
    """
    if not isinstance(u, CycloElt):
        raise ParameterError("cyclo_invert expects a CycloElt")
    if not u:
        raise ZeroDivisionError(f"zero has no inverse in Q(zeta_{u.conductor})")
    field = _field(u.conductor)
    r0 = [Fraction(c) for c in field.phi]
    r1 = _trim_frac(list(u.coeffs))
    t0: list[Fraction] = []
    t1: list[Fraction] = [_ONE]
    while r1:
        q, rem = _poly_divmod_frac(r0, r1)
        r0, r1 = r1, rem
        t0, t1 = t1, _poly_sub_frac(t0, _poly_mul_frac(q, t1))
    if len(r0) != 1:
        raise ArithmeticError(
            f"gcd with Phi_{u.conductor} is not constant; Phi should be irreducible"
        )
    scale = _ONE / r0[0]
    return CycloElt.from_coeffs(u.conductor, [c * scale for c in t0])


def as_rational(u: CycloElt) -> Fraction:
    """Extract the rational value of a constant element.

    Symmetric root-of-unity sums are rational by Galois invariance; a
    non-constant coefficient vector here therefore signals a bug in the
    symmetry assumptions of the caller, not bad user input.
    """
    if not isinstance(u, CycloElt):
        raise ParameterError("as_rational expects a CycloElt")
    if not u.is_rational:
        raise IrrationalityError(f"element of Q(zeta_{u.conductor}) is not rational: {u!r}")
    return u.coeffs[0]


def euler_phi(m: int) -> int:
    """phi(m), read off as the degree of Phi_m."""
    return _field(m).degree
