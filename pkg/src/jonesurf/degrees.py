"""Degree sequences of ``J_K(n)``, exact quasi-polynomial fits, slope data."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .bracket import DEFAULT_LIMITS, BracketLimits, chebyshev, kauffman_bracket
from .diagram import Diagram, cable
from .laurent import LaurentPolynomial, TDegree, degrees_t

# the unknot has jx = {1} and js = {0} under the literal degree definitions
UNKNOT_JX = Fraction(1)
UNKNOT_JS = Fraction(0)


class FitError(ValueError):
    pass


@dataclass(frozen=True)
class Calibration:
    """Affine map ``slope -> scale * slope + shift`` applied to reported slopes.

    Fixed once against the trefoil and 8_19; the identity reproduces both.
    """

    scale: Fraction = Fraction(1)
    shift: Fraction = Fraction(0)

    def apply(self, value: Fraction) -> Fraction:
        return self.scale * value + self.shift

    def to_json(self) -> dict[str, str]:
        return {"scale": str(self.scale), "shift": str(self.shift)}


CALIBRATION = Calibration()


@dataclass(frozen=True)
class QuasiPolynomial:
    period: int
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    c: tuple[Fraction, ...]
    n_K: int = 0
    samples: int = 0

    def __call__(self, n: int) -> Fraction:
        r = n % self.period
        return self.a[r] * n * n + self.b[r] * n + self.c[r]


@dataclass(frozen=True)
class SlopeData:
    js: frozenset[Fraction]
    js_star: frozenset[Fraction]
    jx: frozenset[Fraction]
    jx_star: frozenset[Fraction]
    period: int
    n_K: int | None = None
    samples: int | None = None
    provisional: bool = True
    calibration: Calibration = field(default=CALIBRATION)
    # (slope, linear term) per residue class; empty means "pair everything"
    pairs: frozenset[tuple[Fraction, Fraction]] = frozenset()
    pairs_star: frozenset[tuple[Fraction, Fraction]] = frozenset()

    def linear_terms(self, slope: Fraction, side: str = "max") -> list[Fraction]:
        """Linear terms that occur together with ``slope`` on one side."""
        pairs, xs = (self.pairs, self.jx) if side == "max" else (self.pairs_star, self.jx_star)
        if not pairs:
            return sorted(xs)
        return sorted({x for s, x in pairs if s == Fraction(slope)})

    def to_json(self) -> dict:
        def fmt(values):
            return [str(v) for v in sorted(values)]

        return {
            "js": fmt(self.js),
            "js_star": fmt(self.js_star),
            "jx": fmt(self.jx),
            "jx_star": fmt(self.jx_star),
            "period": self.period,
            "n_K": self.n_K,
            "samples": self.samples,
            "provisional": self.provisional,
            "provisional_note": (
                f"provisional from {self.samples} samples" if self.provisional else None
            ),
            "calibration": self.calibration.to_json(),
            "pairs": [[str(a), str(b)] for a, b in sorted(self.pairs)],
            "pairs_star": [[str(a), str(b)] for a, b in sorted(self.pairs_star)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SlopeData":
        def parse(key):
            return frozenset(Fraction(str(v)) for v in data.get(key, []))

        return cls(
            js=parse("js"),
            js_star=parse("js_star"),
            jx=parse("jx"),
            jx_star=parse("jx_star"),
            period=int(data["period"]),
            n_K=data.get("n_K"),
            samples=data.get("samples"),
            provisional=bool(data.get("provisional", False)),
            pairs=frozenset((Fraction(str(a)), Fraction(str(b))) for a, b in data.get("pairs", [])),
            pairs_star=frozenset((Fraction(str(a)), Fraction(str(b)))
                                 for a, b in data.get("pairs_star", [])),
        )


class CableBrackets:
    """Bracket cache for the blackboard cables of one diagram."""

    def __init__(self, d: Diagram, limits: BracketLimits = DEFAULT_LIMITS, bracket=None):
        self.diagram = d
        self.limits = limits
        self._bracket = bracket or kauffman_bracket
        self._cache: dict[int, LaurentPolynomial] = {0: LaurentPolynomial.constant(1)}

    def __getitem__(self, k: int) -> LaurentPolynomial:
        if k not in self._cache:
            self._cache[k] = self._bracket(cable(self.diagram, k), self.limits)
        return self._cache[k]

    def colored_jones(self, n: int) -> LaurentPolynomial:
        d = self.diagram
        if d.components != 1:
            raise ValueError(f"colored Jones needs a knot diagram (got {d.components} components)")
        total = LaurentPolynomial()
        for k, ck in enumerate(chebyshev(n - 1)):
            if ck:
                total = total + self[k] * ck
        sign = -1 if (n - 1) % 2 else 1
        w = d.writhe
        return LaurentPolynomial.monomial((n * n - 1) * w, sign ** (w % 2) * sign) * total


def degree_sequence(d: Diagram, n_max: int, limits: BracketLimits = DEFAULT_LIMITS,
                    jones=None) -> list[tuple[int, TDegree, TDegree]]:
    """``(n, d_+, d_-)`` for ``n = 1..n_max``, degrees in powers of ``t``.

    ``jones`` may replace the cabling route with any ``n -> J_K(n)`` callable.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if jones is None:
        jones = CableBrackets(d, limits).colored_jones
    rows = []
    for n in range(1, n_max + 1):
        hi, lo = degrees_t(jones(n))
        rows.append((n, hi, lo))
    return rows


def _quadratic_through(points: Sequence[tuple[int, Fraction]]):
    (x0, y0), (x1, y1), (x2, y2) = points[:3]
    # Newton divided differences
    d01 = Fraction(y1 - y0, x1 - x0)
    d12 = Fraction(y2 - y1, x2 - x1)
    a = (d12 - d01) / (x2 - x0)
    b = d01 - a * (x0 + x1)
    c = Fraction(y0) - a * x0 * x0 - b * x0
    return a, b, c


def _fit_period(samples, p, min_points):
    a, b, c = [], [], []
    for r in range(p):
        cls = [(n, v) for n, v in samples if n % p == r]
        if len(cls) < min_points:
            return "short", None
        qa, qb, qc = _quadratic_through(cls)
        if any(qa * n * n + qb * n + qc != v for n, v in cls):
            return "inexact", None
        a.append(qa)
        b.append(qb)
        c.append(qc)
    return "ok", (tuple(a), tuple(b), tuple(c))


def fit_quasipolynomial(samples: Iterable[tuple[int, Fraction]], p_max: int = 6,
                        tail: int = 0, min_points: int = 3) -> QuasiPolynomial:
    """Smallest period ``p <= p_max`` whose residue classes fit a quadratic exactly.

    Only samples with ``n > tail`` enter the fit; each class needs
    ``min_points`` of them. ``n_K`` is pushed back as far as the fit still
    reproduces the earlier samples.
    """
    data = sorted({int(n): Fraction(v) for n, v in samples}.items())
    used = [(n, v) for n, v in data if n > tail]
    short = True
    for p in range(1, p_max + 1):
        status, coeffs = _fit_period(used, p, min_points)
        if status == "short":
            continue
        short = False
        if status == "ok":
            a, b, c = coeffs
            qp = QuasiPolynomial(p, a, b, c, n_K=0, samples=len(used))
            n_k = 0
            for n, v in reversed(data):
                if qp(n) != v:
                    n_k = n
                    break
            return QuasiPolynomial(p, a, b, c, n_K=n_k, samples=len(used))
    if short:
        raise FitError("insufficient data: fewer than "
                       f"{min_points} points per residue class beyond n > {tail}")
    raise FitError(f"no exact fit up to p_max={p_max}")


def minimal_period(values: Sequence[Fraction]) -> int:
    p = len(values)
    for d in range(1, p + 1):
        if p % d == 0 and all(values[i] == values[i % d] for i in range(p)):
            return d
    return p


def slope_data(qp_plus: QuasiPolynomial, qp_minus: QuasiPolynomial,
               calibration: Calibration = CALIBRATION, provisional: bool = True) -> SlopeData:
    js = frozenset(calibration.apply(4 * v) for v in qp_plus.a)
    js_star = frozenset(calibration.apply(4 * v) for v in qp_minus.a)
    jx = frozenset(2 * v for v in qp_plus.b)
    jx_star = frozenset(2 * v for v in qp_minus.b)
    periods = [minimal_period(f) for f in (qp_plus.a, qp_plus.b, qp_plus.c,
                                           qp_minus.a, qp_minus.b, qp_minus.c)]
    n_k = max(qp_plus.n_K, qp_minus.n_K)
    samples = min(qp_plus.samples, qp_minus.samples)
    pairs = frozenset((calibration.apply(4 * a), 2 * b) for a, b in zip(qp_plus.a, qp_plus.b))
    pairs_star = frozenset((calibration.apply(4 * a), 2 * b)
                           for a, b in zip(qp_minus.a, qp_minus.b))
    return SlopeData(js, js_star, jx, jx_star, lcm(*periods), n_K=n_k,
                     samples=samples, provisional=provisional, calibration=calibration,
                     pairs=pairs, pairs_star=pairs_star)


def slopes_from_sequence(rows, p_max: int = 6, tail: int = 0, min_points: int = 3,
                         calibration: Calibration = CALIBRATION) -> SlopeData:
    plus = fit_quasipolynomial([(n, hi) for n, hi, _ in rows], p_max, tail, min_points)
    minus = fit_quasipolynomial([(n, lo) for n, _, lo in rows], p_max, tail, min_points)
    return slope_data(plus, minus, calibration)


def compute_slopes(d: Diagram, n_max: int, p_max: int = 6, tail: int = 0,
                   limits: BracketLimits = DEFAULT_LIMITS,
                   calibration: Calibration = CALIBRATION) -> SlopeData:
    return slopes_from_sequence(degree_sequence(d, n_max, limits), p_max, tail,
                                calibration=calibration)


def detect_unknot(s: SlopeData, reference: Fraction = UNKNOT_JX, field: str = "jx") -> bool:
    """True iff the chosen cluster set (``"jx"`` or ``"js"``) is exactly ``{reference}``."""
    if field not in ("jx", "js"):
        raise ValueError("field must be 'jx' or 'js'")
    return getattr(s, field) == frozenset({Fraction(reference)})
