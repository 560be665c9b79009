"""Slope and surface arithmetic: divisibility, characteristic surfaces, Jones-surface tests."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from pathlib import Path
from typing import Iterable


class SlopeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Slope:
    """Reduced ``a/b`` with ``b > 0``; ``1/0`` (the meridian) is ``Slope(1, 0)``."""

    a: int
    b: int

    def __init__(self, a: int, b: int = 1):
        a, b = int(a), int(b)
        if a == 0 and b == 0:
            raise SlopeError("0/0 is not a slope")
        if b < 0:
            a, b = -a, -b
        if b == 0:
            a = 1
        g = gcd(a, b)
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "b", b // g)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                return cls(int(num), int(den))
            return cls(int(text), 1)
        except ValueError:
            raise SlopeError(f"cannot parse slope {text!r}") from None

    @classmethod
    def from_fraction(cls, value: Fraction) -> "Slope":
        value = Fraction(value)
        return cls(value.numerator, value.denominator)

    @property
    def is_meridian(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.is_meridian:
            raise SlopeError("slope 1/0 has no rational value")
        return Fraction(self.a, self.b)

    def __str__(self) -> str:
        return f"{self.a}/{self.b}"


def _finite(slope: Slope) -> None:
    if slope.is_meridian:
        raise SlopeError("slope 1/0 is not a Jones slope; predicates need a finite slope")


@dataclass(frozen=True)
class SurfaceStats:
    slope: Slope
    boundary_count: int
    euler: int
    sheets: int | None = None

    def __post_init__(self):
        if self.boundary_count < 1:
            raise ValueError("boundary_count must be positive")
        expected = self.slope.b * self.boundary_count
        if self.sheets is None:
            object.__setattr__(self, "sheets", expected)
        elif self.sheets != expected and not self.slope.is_meridian:
            raise ValueError(f"sheets {self.sheets} != b*|dS| = {expected}")


@dataclass(frozen=True)
class DivisibilityReport:
    b_divides_p2: bool
    sheets_divides_2p2chi: bool
    integral_when_p1: bool | None = None

    @property
    def ok(self) -> bool:
        return self.b_divides_p2 and self.sheets_divides_2p2chi and self.integral_when_p1 is not False


def _divides(d: int, n: int) -> bool:
    return n % d == 0


def check_divisibility(s: SurfaceStats, p: int) -> DivisibilityReport:
    """``b | p^2`` and ``b|dS| | 2 p^2 chi``; for ``p = 1`` also ``2 chi / |dS|`` integral."""
    _finite(s.slope)
    if p < 1:
        raise ValueError("period must be positive")
    integral = None
    if p == 1:
        integral = _divides(s.boundary_count, 2 * s.euler) and s.slope.b == 1
    return DivisibilityReport(
        _divides(s.slope.b, p * p),
        _divides(s.sheets, 2 * p * p * s.euler),
        integral,
    )


def is_characteristic(s: SurfaceStats, p: int) -> bool:
    _finite(s.slope)
    return _divides(s.sheets, p)


def jones_surface_predicate(s: SurfaceStats, jx: Iterable[Fraction], side: str = "max") -> bool:
    """Is ``chi/sheets`` (max side) or ``-chi/sheets`` (min side) in ``jx``?"""
    _finite(s.slope)
    jx = {Fraction(v) for v in jx}
    if not jx:
        raise ValueError("jx must be nonempty")
    if side not in ("max", "min"):
        raise ValueError("side must be 'max' or 'min'")
    beta = Fraction(s.euler, s.sheets)
    return (beta if side == "max" else -beta) in jx


def lambda_of(beta: Fraction, p: int) -> int:
    lam = 2 * p * p * Fraction(beta)
    if lam.denominator != 1:
        raise ValueError("λ not integral: β incompatible with period")
    return int(lam)


def bounded_filter(s: SurfaceStats, beta: Fraction, p: int) -> bool:
    _finite(s.slope)
    return -s.euler + s.sheets <= (1 - Fraction(beta)) * p


def denominator_lcm(*fractions: Fraction) -> int:
    return lcm(*(Fraction(f).denominator for f in fractions))


# -- knot table fixture ------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    knot: str
    js: Slope
    boundary: int
    chi: int
    sheets: int
    js_star: Slope
    boundary_star: int
    chi_star: int
    sheets_star: int
    period: int

    def sides(self) -> tuple[SurfaceStats, SurfaceStats]:
        return (SurfaceStats(self.js, self.boundary, self.chi, self.sheets),
                SurfaceStats(self.js_star, self.boundary_star, self.chi_star, self.sheets_star))


TABLE1_PATH = Path(__file__).parent / "data" / "table1.csv"


def load_table(path=TABLE1_PATH) -> list[TableRow]:
    with open(path, newline="") as fh:
        lines = [line for line in fh if line.strip() and not line.lstrip().startswith("#")]
    rows = []
    for rec in csv.DictReader(lines):
        rows.append(TableRow(
            knot=rec["knot"],
            js=Slope.parse(rec["js"]),
            boundary=int(rec["|dS|"]),
            chi=int(rec["chi"]),
            sheets=int(rec["sheets"]),
            js_star=Slope.parse(rec["js*"]),
            boundary_star=int(rec["|dS*|"]),
            chi_star=int(rec["chi*"]),
            sheets_star=int(rec["sheets*"]),
            period=int(rec["p"]),
        ))
    return rows
