"""Degree formulas for dormant-oper loci and related Quot-scheme invariants.

This layer is pure bookkeeping over the tuple-sum engine: thresholds,
slopes, the degree of the dormant locus and its SL(r) cover, the
maximal-subbundle invariants, and the degree of the generic
Frobenius-pullback fibre.  Everything is exact; the only floating point
lives behind the certified float variants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, NamedTuple

from .balls import isolate_rational
from .errors import FormulaDomainError, ParameterError, PrecisionError
from .util import is_prime
from .vi import ReductionChoice, derive_params, vi_degree, vi_sum_float, vi_sum_reduced

Convention = Literal["as_written", "with_factorial"]


def oper_threshold(r: int, g: int) -> int:
    """C(r, g) = r(r-1)(r-2)(g-1); results below require p > C(r, g)."""
    if r < 2:
        raise ParameterError(f"rank must be >= 2, got {r}")
    if g < 2:
        raise ParameterError(f"genus must be >= 2, got {g}")
    return r * (r - 1) * (r - 2) * (g - 1)


def canonical_line_degree(r: int, g: int) -> int:
    """Degree of a line bundle L with L^r tensor (Omega^1)^(r(r-1)/2) trivial."""
    if r < 1:
        raise ParameterError(f"rank must be >= 1, got {r}")
    if g < 2:
        raise ParameterError(f"genus must be >= 2, got {g}")
    degree = (1 - r) * (g - 1)
    # r*deg(L) must cancel the twist by (r choose 2) copies of Omega^1
    assert r * degree + (r * (r - 1) // 2) * (2 * g - 2) == 0
    return degree


class PushforwardSlope(NamedTuple):
    slope: Fraction
    degree: int


def pushforward_slope_degree(p: int, deg_line: int, g: int) -> PushforwardSlope:
    """Slope and total degree of the Frobenius pushforward of a line bundle.

    mu = (deg(L) + (p-1)(g-1)) / p on a rank-p bundle; genus 1 is allowed
    here since the formula is plain arithmetic.
    """
    if p < 2:
        raise ParameterError(f"characteristic must be >= 2, got {p}")
    degree = deg_line + (p - 1) * (g - 1)
    return PushforwardSlope(Fraction(degree, p), degree)


@dataclass(frozen=True)
class OperParams:
    """Validated (p, r, g) with the derived threshold and degrees.

    p > C(r, g) does not by itself imply p prime or gcd(p, r) = 1, so
    both are checked independently at construction.
    """

    p: int
    r: int
    g: int
    threshold: int = field(init=False)
    line_degree: int = field(init=False)
    pushforward_degree: int = field(init=False)

    def __post_init__(self) -> None:
        threshold = oper_threshold(self.r, self.g)
        if not is_prime(self.p):
            raise ParameterError(f"p={self.p} is not prime")
        if self.p <= threshold:
            raise ParameterError(f"p <= C(r,g)={threshold} (got p={self.p})")
        if math.gcd(self.p, self.r) != 1:
            raise ParameterError(f"p={self.p} must not divide the rank r={self.r}")
        object.__setattr__(self, "threshold", threshold)
        object.__setattr__(self, "line_degree", canonical_line_degree(self.r, self.g))
        object.__setattr__(
            self, "pushforward_degree", (self.p - self.r) * (self.g - 1)
        )


def dormant_degree(p: int, r: int, g: int) -> Fraction:
    """Degree of the locus of dormant PGL(r)-opers: N(p, (p-r)(g-1), r, g) / p^g."""
    params = OperParams(p, r, g)
    return vi_degree(p, params.pushforward_degree, r, g) / Fraction(p**g)


def dormant_degree_float(p: int, r: int, g: int, precision_bits: int = 192) -> Fraction:
    """Same value through the certified ball backend."""
    from .vi import vi_degree_float

    params = OperParams(p, r, g)
    return vi_degree_float(p, params.pushforward_degree, r, g, precision_bits) / Fraction(
        p**g
    )


def sl_oper_degree(p: int, r: int, g: int) -> Fraction:
    """Degree of the dormant SL(r)-oper locus: r^(2g) times the PGL(r) degree."""
    return r ** (2 * g) * dormant_degree(p, r, g)


def quot_scale_check(p: int, r: int, g: int, gamma_count: int | None = None) -> Fraction:
    """Unrestricted Quot-scheme degree, with the p^g scaling cross-checked.

    gamma_count is the number of determinant twists acting on the scheme
    (the order p^g of the Verschiebung kernel); overriding it is only
    useful for demonstrating that the consistency check actually fires.
    """
    small = dormant_degree(p, r, g)
    count = p**g if gamma_count is None else gamma_count
    total = count * small
    full = vi_degree(p, (p - r) * (g - 1), r, g)
    if total != full:
        raise FormulaDomainError(
            f"scaled degree {total} (count {count}) disagrees with the direct "
            f"evaluation {full}"
        )
    return total


@dataclass(frozen=True)
class SubbundleInvariants:
    """Mukai-Sakai / Hirschowitz numerics for rank-r subbundles."""

    mukai_bound: int
    s_r: int
    epsilon: int
    e_max: Fraction


def subbundle_invariants(n: int, d: int, r: int, g: int) -> SubbundleInvariants:
    """s_r, epsilon and e_max for a very general bundle of rank n, degree d."""
    if g < 2:
        raise ParameterError(f"genus must be >= 2, got {g}")
    if not 1 <= r < n:
        raise ParameterError(f"subbundle rank must satisfy 1 <= r < n, got r={r}, n={n}")
    base = r * (n - r) * (g - 1)
    epsilon = (r * d - base) % n
    s_r = base + epsilon
    mukai_bound = r * (n - r) * g
    assert s_r <= mukai_bound
    return SubbundleInvariants(
        mukai_bound=mukai_bound,
        s_r=s_r,
        epsilon=epsilon,
        e_max=Fraction(d * r - s_r, n),
    )


def _frobenius_params(p: int, r: int, g: int):
    if not is_prime(p):
        raise ParameterError(f"p={p} is not prime")
    if r < 1:
        raise ParameterError(f"rank must be >= 1, got {r}")
    if math.gcd(p, r) != 1:
        raise ParameterError(f"p={p} and r={r} must be coprime")
    if g < 2:
        raise ParameterError(f"genus must be >= 2, got {g}")
    # Degree r(p-1)(g-1) of the pushforward bundle yields b = r(g-1), so
    # the tuple exponent is (r-1)(g-1) and the rotation character is 0.
    params = derive_params(p * r, r * (p - 1) * (g - 1), r, g)
    assert params.rotation_character == 0
    return params


def _frobenius_prefactor(p: int, r: int, g: int, convention: Convention) -> Fraction:
    if convention not in ("as_written", "with_factorial"):
        raise ParameterError(f"unknown convention {convention!r}")
    prefactor = Fraction((p * r) ** (r * (g - 1)), p**g)
    if convention == "with_factorial":
        prefactor /= math.factorial(r)
    return prefactor


def frobenius_fiber_degree(
    p: int, r: int, g: int, convention: Convention = "as_written"
) -> Fraction:
    """Degree of the generic fibre of Frobenius pullback on trivial-determinant moduli.

    Sums over ordered tuples of distinct pr-th roots of unity with
    numerator exponent (r-1)(g-1) and prefactor (pr)^(r(g-1)) / p^g.  The
    formula carries no 1/r! as written; ``with_factorial`` divides by r!
    for comparison and is never chosen silently.
    """
    params = _frobenius_params(p, r, g)
    return _frobenius_prefactor(p, r, g, convention) * vi_sum_reduced(params).exact


def frobenius_fiber_degree_float(
    p: int,
    r: int,
    g: int,
    convention: Convention = "as_written",
    precision_bits: int = 192,
    reduction: ReductionChoice = "naive",
) -> Fraction:
    """Certified-ball evaluation; defaults to brute-force tuple enumeration."""
    params = _frobenius_params(p, r, g)
    ball, _terms, _used = vi_sum_float(params, precision_bits, reduction)
    est = ball.to_estimate()
    if abs(est.imag) > est.radius:
        raise PrecisionError(
            "imaginary part of the sum is not certified to vanish; increase precision"
        )
    prefactor = _frobenius_prefactor(p, r, g, convention)
    lo, hi = est.real_interval()
    lo, hi = sorted((lo * prefactor, hi * prefactor))
    value = isolate_rational(lo, hi, math.factorial(r) * p * r)
    if value is None:
        raise PrecisionError(
            f"{precision_bits} bits do not isolate a unique rational with "
            f"denominator dividing {math.factorial(r) * p * r}"
        )
    return value
