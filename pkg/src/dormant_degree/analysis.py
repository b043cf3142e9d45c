"""Exact interpolation, the polynomiality check, and grid tables."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import ParameterError
from .opers import dormant_degree, oper_threshold, sl_oper_degree
from .report import fraction_str
from .util import is_prime
from .verlinde import check_verlinde_equivalence

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class RatPoly:
    """Polynomial with rational coefficients, lowest degree first, trimmed."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        n = len(coeffs)
        while n and not coeffs[n - 1]:
            n -= 1
        object.__setattr__(self, "coefficients", coeffs[:n])

    @property
    def degree(self) -> int:
        """Degree, with degree(0) == -1."""
        return len(self.coefficients) - 1

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for k, c in enumerate(self.coefficients):
            if not c:
                continue
            if k == 0:
                parts.append(fraction_str(c))
            elif k == 1:
                parts.append(f"({fraction_str(c)})*x")
            else:
                parts.append(f"({fraction_str(c)})*x^{k}")
        return " + ".join(parts)


def interpolate_rational(points: Sequence[tuple]) -> RatPoly:
    """The unique polynomial of degree < len(points) through all points (exact Lagrange)."""
    pts: list[Point] = [(Fraction(x), Fraction(y)) for x, y in points]
    if not pts:
        raise ParameterError("at least one interpolation point is required")
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ParameterError("interpolation x-values must be pairwise distinct")
    total = [Fraction(0)] * len(pts)
    for i, (xi, yi) in enumerate(pts):
        # basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            basis = [Fraction(0)] + basis  # multiply by x
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        scale = yi / denom
        for k, c in enumerate(basis):
            total[k] += scale * c
    return RatPoly(tuple(total))


@dataclass(frozen=True)
class PolynomialityReport:
    """Outcome of fitting the rank-2 dormant degree as a polynomial in p."""

    genus: int
    poly: RatPoly
    degree_ok: bool
    verified: bool
    predictions: tuple[tuple[int, Fraction, Fraction], ...]  # (p, predicted, actual)


def polynomiality_check(
    g: int, fit_primes: Sequence[int], verify_primes: Sequence[int]
) -> PolynomialityReport:
    """Fit dormant_degree(p, 2, g) on fit_primes; the degree must be <= 3g-3.

    The claim is only established for rank 2, so no rank argument is
    offered.  Fitting uses exactly determined interpolation; surplus
    points belong in verify_primes, where predictions are compared with
    freshly computed degrees.
    """
    if g < 2:
        raise ParameterError(f"genus must be >= 2, got {g}")
    needed = 3 * g - 2
    if len(fit_primes) < needed:
        raise ParameterError(
            f"need at least {needed} fit primes for degree 3g-3={3 * g - 3}, "
            f"got {len(fit_primes)}"
        )
    floor = max(2 * g - 2, 2)
    for p in list(fit_primes) + list(verify_primes):
        if not is_prime(p):
            raise ParameterError(f"{p} is not prime")
        if p <= floor:
            raise ParameterError(f"primes must exceed max(2g-2, 2) = {floor}, got {p}")
    points = [(Fraction(p), dormant_degree(p, 2, g)) for p in fit_primes]
    poly = interpolate_rational(points)
    degree_ok = poly.degree <= 3 * g - 3
    predictions = tuple(
        (p, poly(Fraction(p)), dormant_degree(p, 2, g)) for p in verify_primes
    )
    verified = degree_ok and all(pred == actual for _, pred, actual in predictions)
    return PolynomialityReport(g, poly, degree_ok, verified, predictions)


@dataclass(frozen=True)
class TableRow:
    g: int
    r: int
    p: int
    dormant: Optional[str]
    sl_degree: Optional[str]
    verlinde: Optional[str]
    skipped: bool
    reason: Optional[str]


@dataclass(frozen=True)
class GridReport:
    """Rows of degree data over a (g, r, p) grid, sorted lexicographically."""

    rows: tuple[TableRow, ...]
    format: str

    COLUMNS = ("g", "r", "p", "dormant", "sl_degree", "verlinde", "skipped", "reason")

    def _cells(self) -> list[dict]:
        return [
            {col: getattr(row, col) for col in self.COLUMNS} for row in self.rows
        ]

    def serialize(self) -> str:
        from .report import to_csv, to_json, to_markdown

        cells = self._cells()
        if self.format == "json":
            return to_json({"rows": cells})
        if self.format == "csv":
            return to_csv(self.COLUMNS, cells)
        if self.format == "md":
            return to_markdown(self.COLUMNS, cells)
        raise ParameterError(f"unknown table format {self.format!r}")


def _classify_cell(p: int, r: int, g: int) -> Optional[str]:
    if not is_prime(p):
        return "non-prime"
    if p <= oper_threshold(r, g):
        return "threshold"
    if p <= r:
        return "rank-exceeds-p"
    return None


def generate_table(
    g_range: Iterable[int],
    r_range: Iterable[int],
    p_range: Iterable[int],
    fmt: str = "json",
    precision_bits: int = 192,
) -> GridReport:
    """Degree table over the grid; invalid cells are skipped with a reason."""
    if fmt not in ("json", "csv", "md"):
        raise ParameterError(f"unknown table format {fmt!r}")
    rows = []
    for g in sorted(set(g_range)):
        for r in sorted(set(r_range)):
            for p in sorted(set(p_range)):
                reason = _classify_cell(p, r, g)
                if reason is not None:
                    rows.append(TableRow(g, r, p, None, None, None, True, reason))
                    continue
                dormant = dormant_degree(p, r, g)
                sl = sl_oper_degree(p, r, g)
                verdict = check_verlinde_equivalence(p, r, g, precision_bits)
                rows.append(
                    TableRow(
                        g,
                        r,
                        p,
                        fraction_str(dormant),
                        fraction_str(sl),
                        "equal" if verdict.equal else "unequal",
                        False,
                        None,
                    )
                )
    return GridReport(tuple(rows), fmt)
