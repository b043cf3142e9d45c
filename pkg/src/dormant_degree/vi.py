"""Evaluation of N(n, d, r, g): sums over tuples of distinct n-th roots of unity.

The quantity computed here is

    N(n, d, r, g) = (-1)^e * n^(r(g-1)) / r! *
        sum over ordered tuples (rho_1, ..., rho_r) of pairwise distinct
        n-th roots of unity of
            (rho_1 * ... * rho_r)^(b - g + 1)
            / prod over ordered pairs i != j of (rho_i - rho_j)^(g-1)

where d = n*a - b with 0 <= b < n and e = (r-1)(b*r - (g-1)*r^2)/n.  The
sign exponent e must be an integer for the formula to make sense as
written; other parameter tuples are flagged sign-invalid and refused.

Three evaluators are provided:

* ``vi_sum_naive`` - literal enumeration of all ordered tuples in exact
  cyclotomic arithmetic.  Slow, kept deliberately free of algebraic
  shortcuts; it is the oracle for everything else.
* ``vi_sum_reduced`` - the production path.  The summand is symmetric
  under permutations of the tuple and picks up the character
  zeta^(r(b-g+1) - r(r-1)(g-1)) under the rotation rho_i -> zeta*rho_i.
  If that character is nontrivial the sum vanishes outright; otherwise
  the sum equals n * (r-1)! times the sum over subsets {1} union S with
  S drawn from the non-identity roots.  Subset terms are assembled from
  precomputed powers of (1 - zeta^s)^(-1) as integer coefficient vectors
  in Z[x]/(x^n - 1) (one shared denominator), and the accumulator is
  reduced modulo Phi_n once at the end.
* ``vi_sum_float`` / ``vi_degree_float`` - certified ball arithmetic
  backend; returns the unique rational with denominator dividing r! * n
  inside the final enclosure, or raises PrecisionError.

All evaluators are pure functions of their parameters; results do not
depend on evaluation order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Literal, Optional, Sequence

from .balls import Ball, BallContext, FloatEstimate, isolate_rational
from .cyclotomic import CycloElt, as_rational, cyclo_invert
from .errors import EnumerationCapError, FormulaDomainError, ParameterError, PrecisionError

#: Default caps for the naive oracle (exact backend).
NAIVE_MAX_N = 7
NAIVE_MAX_R = 3

#: The float backend enumerates naively up to this many ordered tuples,
#: then switches to the rotation/permutation reduction.
FLOAT_NAIVE_TUPLE_CAP = 4000


class Reduction(str, Enum):
    NAIVE = "naive"
    ROTATION = "rotation_and_permutation"


ReductionChoice = Literal["auto", "naive", "rotation_and_permutation"]


@dataclass(frozen=True)
class ViParams:
    """Validated parameters together with the derived exponents.

    ``sign_exponent`` is None when n does not divide
    (r-1)(b*r - (g-1)*r^2); such parameter records are sign-invalid and
    rejected by the degree evaluators (the sums themselves are fine).
    """

    n: int
    d: int
    r: int
    g: int
    a: int
    b: int
    term_exponent: int
    sign_exponent: Optional[int]
    rotation_character: int

    @property
    def sign_valid(self) -> bool:
        return self.sign_exponent is not None


def derive_params(n: int, d: int, r: int, g: int) -> ViParams:
    """Split d = n*a - b with 0 <= b < n and derive all exponents."""
    if n < 1:
        raise ParameterError(f"root-of-unity order n must be >= 1, got {n}")
    if g < 2:
        raise ParameterError(f"genus must be >= 2, got {g}")
    if r < 1 or r > n:
        raise ParameterError(
            f"no tuples of {r} distinct {n}-th roots of unity exist (need 1 <= r <= n)"
        )
    b = (-d) % n
    a = (d + b) // n
    term_exponent = b - g + 1
    sign_num = (r - 1) * (b * r - (g - 1) * r * r)
    sign_exponent = sign_num // n if sign_num % n == 0 else None
    rotation_character = (r * term_exponent - r * (r - 1) * (g - 1)) % n
    return ViParams(n, d, r, g, a, b, term_exponent, sign_exponent, rotation_character)


@dataclass(frozen=True)
class SumValue:
    """A computed sum with its provenance."""

    exact: Optional[Fraction]
    float_estimate: Optional[FloatEstimate]
    terms_evaluated: int
    reduction: Reduction


def vi_term(roots: Sequence[CycloElt], params: ViParams) -> CycloElt:
    """One summand: (prod rho_i)^t / prod over ordered pairs (rho_i - rho_j)^(g-1).

    The denominator runs over ordered pairs, so for r = 2 it is
    -(rho_1 - rho_2)^2 rather than (rho_1 - rho_2)^2.
    """
    if len(roots) != params.r:
        raise ParameterError(f"expected {params.r} roots, got {len(roots)}")
    for root in roots:
        if root.conductor != params.n:
            raise ParameterError(
                f"root has conductor {root.conductor}, parameters require {params.n}"
            )
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if roots[i] == roots[j]:
                raise ZeroDivisionError("repeated root makes the pair product vanish")
    num = CycloElt.one(params.n)
    for root in roots:
        num = num * root
    num = num ** params.term_exponent
    den = CycloElt.one(params.n)
    for i, rho_i in enumerate(roots):
        for j, rho_j in enumerate(roots):
            if i != j:
                den = den * (rho_i - rho_j)
    den = den ** (params.g - 1)
    return num * cyclo_invert(den)


def vi_sum_naive(
    params: ViParams, *, max_n: int = NAIVE_MAX_N, max_r: int = NAIVE_MAX_R
) -> SumValue:
    """Brute-force sum over every ordered tuple of distinct roots.

    Refuses parameter sets beyond the configured caps; this path exists
    as an oracle, not as the production evaluator.
    """
    n, r = params.n, params.r
    if n > max_n or r > max_r:
        raise EnumerationCapError(
            f"naive enumeration refused: n={n}, r={r} exceeds cap "
            f"(n <= {max_n}, r <= {max_r})"
        )
    roots = [CycloElt.root(n, k) for k in range(n)]
    total = CycloElt.zero(n)
    count = 0
    for combo in itertools.permutations(range(n), r):
        total = total + vi_term([roots[k] for k in combo], params)
        count += 1
    return SumValue(as_rational(total), None, count, Reduction.NAIVE)


@lru_cache(maxsize=None)
def _inverse_power_table(n: int, exponent: int) -> tuple[int, dict[int, tuple[int, ...]]]:
    """(1 - zeta^s)^(-exponent) for s = 1..n-1 as integer vectors.

    Returns (D, table) where table[s] is a length-n integer coefficient
    vector in Z[x]/(x^n - 1) and table[s] / D represents the exact field
    element (one denominator D shared by all s).
    """
    one = CycloElt.one(n)
    exact: dict[int, tuple[Fraction, ...]] = {}
    denom = 1
    for s in range(1, n):
        value = cyclo_invert(one - CycloElt.root(n, s)) ** exponent
        padded = value.coeffs + (Fraction(0),) * (n - len(value.coeffs))
        exact[s] = padded
        for c in padded:
            denom = math.lcm(denom, c.denominator)
    table = {
        s: tuple(int(c * denom) for c in padded) for s, padded in exact.items()
    }
    return denom, table


def _cyclic_mul(u: Sequence[int], v: Sequence[int], n: int) -> list[int]:
    """Product in Z[x]/(x^n - 1) by schoolbook convolution and folding."""
    out = [0] * (2 * n)
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                out[i + j] += ui * vj
    for k in range(2 * n - 1, n - 1, -1):
        c = out[k]
        if c:
            out[k - n] += c
    return out[:n]


def vi_sum_reduced(params: ViParams) -> SumValue:
    """Rotation/permutation-reduced evaluation of the same sum.

    Equals ``vi_sum_naive`` whenever both run; the arithmetic happens on
    integer vectors in Z[x]/(x^n - 1), which maps onto Q(zeta_n) by the
    final reduction modulo Phi_n.
    """
    n, r, g, t = params.n, params.r, params.g, params.term_exponent
    if params.rotation_character % n != 0:
        return SumValue(Fraction(0), None, 0, Reduction.ROTATION)
    denom, table = _inverse_power_table(n, 2 * (g - 1))
    acc = [0] * n
    terms = 0
    for subset in itertools.combinations(range(1, n), r - 1):
        exps = (0,) + subset
        vec: Optional[Sequence[int]] = None
        for i in range(r):
            for j in range(i + 1, r):
                w = table[exps[j] - exps[i]]
                vec = w if vec is None else _cyclic_mul(vec, w, n)
        pair_sum = sum(e * (r - 1 - i) for i, e in enumerate(exps))
        rot = (t * sum(exps) - 2 * (g - 1) * pair_sum) % n
        if vec is None:
            acc[rot] += 1
        else:
            for idx, c in enumerate(vec):
                if c:
                    acc[(idx + rot) % n] += c
        terms += 1
    pairs = r * (r - 1) // 2
    sign = -1 if (pairs * (g - 1)) % 2 else 1
    scale = Fraction(sign * n * math.factorial(r - 1), denom**pairs)
    exact = as_rational(CycloElt.from_coeffs(n, acc)) * scale
    return SumValue(exact, None, terms, Reduction.ROTATION)


def _degree_prefactor(params: ViParams) -> Fraction:
    assert params.sign_exponent is not None
    sign = -1 if params.sign_exponent % 2 else 1
    return Fraction(
        sign * params.n ** (params.r * (params.g - 1)), math.factorial(params.r)
    )


def _require_sign_valid(params: ViParams) -> None:
    if not params.sign_valid:
        raise FormulaDomainError(
            f"sign exponent (r-1)(b*r-(g-1)*r^2)/n is not an integer for "
            f"n={params.n}, d={params.d}, r={params.r}, g={params.g} (b={params.b})"
        )


def vi_degree(n: int, d: int, r: int, g: int) -> Fraction:
    """N(n, d, r, g) by the exact reduced evaluator."""
    params = derive_params(n, d, r, g)
    _require_sign_valid(params)
    return _degree_prefactor(params) * vi_sum_reduced(params).exact


def _tuple_count(n: int, r: int) -> int:
    count = 1
    for i in range(r):
        count *= n - i
    return count


def vi_sum_float(
    params: ViParams,
    precision_bits: int,
    reduction: ReductionChoice = "auto",
    *,
    naive_cap: int = FLOAT_NAIVE_TUPLE_CAP,
) -> tuple[Ball, int, Reduction]:
    """The raw tuple sum as a certified ball.

    ``reduction="naive"`` enumerates every ordered tuple (fully
    independent of the exact backend's algebra); ``"auto"`` does so while
    the tuple count stays under ``naive_cap`` and otherwise applies the
    same rotation/permutation reduction as the exact path.
    """
    n, r, g, t = params.n, params.r, params.g, params.term_exponent
    ctx = BallContext(precision_bits)
    if reduction == "auto":
        reduction = "naive" if _tuple_count(n, r) <= naive_cap else "rotation_and_permutation"
    if reduction == "naive":
        roots = [ctx.root_of_unity(n, k) for k in range(n)]
        diffs = {
            (i, j): roots[i] - roots[j]
            for i in range(n)
            for j in range(n)
            if i != j
        }
        total = ctx.exact(0)
        count = 0
        for combo in itertools.permutations(range(n), r):
            num = roots[combo[0]]
            for k in combo[1:]:
                num = num * roots[k]
            num = num**t
            den = ctx.exact(1)
            for i in combo:
                for j in combo:
                    if i != j:
                        den = den * diffs[(i, j)]
            total = total + num / den ** (g - 1)
            count += 1
        return total, count, Reduction.NAIVE
    if reduction != "rotation_and_permutation":
        raise ParameterError(f"unknown reduction {reduction!r}")
    if params.rotation_character % n != 0:
        return ctx.exact(0), 0, Reduction.ROTATION
    one = ctx.exact(1)
    roots = [ctx.root_of_unity(n, k) for k in range(n)]
    inv_powers = [None] + [
        (one - roots[s]).inverse() ** (2 * (g - 1)) for s in range(1, n)
    ]
    pairs = r * (r - 1) // 2
    sign = -1 if (pairs * (g - 1)) % 2 else 1
    total = ctx.exact(0)
    terms = 0
    for subset in itertools.combinations(range(1, n), r - 1):
        exps = (0,) + subset
        term = one
        for i in range(r):
            for j in range(i + 1, r):
                term = term * inv_powers[exps[j] - exps[i]]
        pair_sum = sum(e * (r - 1 - i) for i, e in enumerate(exps))
        rot = (t * sum(exps) - 2 * (g - 1) * pair_sum) % n
        total = total + term * roots[rot]
        terms += 1
    total = total * (sign * n * math.factorial(r - 1))
    return total, terms, Reduction.ROTATION


def vi_degree_float(
    n: int,
    d: int,
    r: int,
    g: int,
    precision_bits: int = 192,
    reduction: ReductionChoice = "auto",
) -> Fraction:
    """N(n, d, r, g) via the ball backend with certified rational rounding.

    The result is the unique rational with denominator dividing r! * n
    inside the final enclosure; if the enclosure admits zero or several
    candidates a PrecisionError asks the caller to retry with more bits.
    """
    params = derive_params(n, d, r, g)
    _require_sign_valid(params)
    ball, _terms, _used = vi_sum_float(params, precision_bits, reduction)
    est = ball.to_estimate()
    if abs(est.imag) > est.radius:
        raise PrecisionError(
            "imaginary part of the sum is not certified to vanish; increase precision"
        )
    prefactor = _degree_prefactor(params)
    lo, hi = est.real_interval()
    lo, hi = sorted((lo * prefactor, hi * prefactor))
    value = isolate_rational(lo, hi, math.factorial(r) * n)
    if value is None:
        raise PrecisionError(
            f"{precision_bits} bits do not isolate a unique rational with "
            f"denominator dividing {math.factorial(r) * n}"
        )
    return value
