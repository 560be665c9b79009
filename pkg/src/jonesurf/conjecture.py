"""Decision pipeline for Jones surfaces over a triangulated knot exterior.

For every Jones slope the pipeline looks for an essential fundamental
surface with ``x = 0``. Failing that, it solves the single homogeneous
equation over the essential surfaces with ``x != 0`` and the closed
essential surfaces of negative Euler characteristic, and tries the
resulting Haken sums. Essentiality is never decided here: an
:class:`EssentialityOracle` answers, and every answer is logged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .degrees import SlopeData, compute_slopes
from .diagram import Diagram
from .hilbert import DEFAULT_LIMITS, DiophantineSystem, HilbertLimits, hilbert_basis
from .normal import (NormalSurface, SurfaceError, Triangulation, boundary_data, compatible,
                     euler_characteristic, fundamental_surfaces, haken_sum, satisfies_matching)
from .sheets import Slope


class Status(str, Enum):
    SATISFIED = "SATISFIED"
    FAILED_SLOPE_MEMBERSHIP = "FAILED_SLOPE_MEMBERSHIP"
    FAILED_NO_ESSENTIAL = "FAILED_NO_ESSENTIAL"
    FAILED_NO_JONES_SURFACE = "FAILED_NO_JONES_SURFACE"
    CONDITIONAL = "CONDITIONAL"

    @property
    def failed(self) -> bool:
        return self.value.startswith("FAILED")


# worst first
_SEVERITY = [Status.FAILED_SLOPE_MEMBERSHIP, Status.FAILED_NO_ESSENTIAL,
             Status.FAILED_NO_JONES_SURFACE, Status.CONDITIONAL, Status.SATISFIED]

ESSENTIAL, NOT_ESSENTIAL, UNKNOWN, ASSUMED = "essential", "not-essential", "unknown", "assumed"


class OracleError(ValueError):
    pass


@dataclass
class EssentialityOracle:
    """Answers "is this surface essential?" from annotations or by assumption.

    Annotation files hold lines ``c1 c2 ... c7t -> essential|not-essential``;
    ``#`` starts a comment. A label refers to the surface exactly as given
    by its coordinates, even when it is one-sided (the caller decides how to
    treat the double). Coordinates that are not listed answer ``unknown``.
    """

    mode: str = "annotation"
    annotations: dict[tuple[int, ...], str] = field(default_factory=dict)
    source: str = ""
    log: list[dict] = field(default_factory=list)

    @classmethod
    def assume_essential(cls) -> "EssentialityOracle":
        return cls(mode="assume-essential", source="assume-essential")

    @classmethod
    def parse(cls, text: str, source: str = "") -> "EssentialityOracle":
        ann: dict[tuple[int, ...], str] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "->" not in line:
                raise OracleError(f"line {lineno}: expected 'coords -> label'")
            lhs, rhs = (part.strip() for part in line.split("->", 1))
            if rhs not in (ESSENTIAL, NOT_ESSENTIAL, UNKNOWN):
                raise OracleError(f"line {lineno}: unknown label {rhs!r}")
            try:
                key = tuple(int(x) for x in lhs.split())
            except ValueError:
                raise OracleError(f"line {lineno}: coordinates must be integers") from None
            if key in ann and ann[key] != rhs:
                raise OracleError(f"line {lineno}: conflicting labels for {lhs}")
            ann[key] = rhs
        return cls(mode="annotation", annotations=ann, source=source)

    @classmethod
    def load(cls, path) -> "EssentialityOracle":
        p = Path(path)
        return cls.parse(p.read_text(), source=p.name)

    def check_keys(self, tri: Triangulation) -> None:
        for key in self.annotations:
            s = NormalSurface(key) if len(key) % 7 == 0 else None
            if s is None or s.size != tri.size:
                raise OracleError(f"annotation {key} has the wrong length for this triangulation")
            if not s.admissible or not satisfies_matching(tri, s):
                raise OracleError(f"annotation {key} is not an admissible normal surface")

    def with_label(self, coords: Sequence[int], label: str) -> "EssentialityOracle":
        ann = dict(self.annotations)
        ann[tuple(coords)] = label
        return EssentialityOracle(self.mode, ann, self.source)

    def query(self, s: NormalSurface, purpose: str = "") -> str:
        if self.mode == "assume-essential":
            answer = ASSUMED
        else:
            answer = self.annotations.get(s.coords, UNKNOWN)
        self.log.append({"coords": list(s.coords), "answer": answer,
                         "source": self.source, "purpose": purpose})
        return answer


def _essential(answer: str) -> bool:
    return answer in (ESSENTIAL, ASSUMED)


# -- arithmetic ---------------------------------------------------------------

def x_value(chi: int, sheets: int, p: int, lam: int) -> int:
    """``2 p^2 chi - lam * sheets``; zero marks a Jones surface candidate."""
    return 2 * p * p * chi - lam * sheets


def jones_lambda(beta: Fraction, p: int) -> int:
    lam = 2 * p * p * Fraction(beta)
    if lam.denominator != 1:
        raise ValueError(f"2p^2 * {beta} is not an integer for p = {p}")
    return int(lam)


@dataclass(frozen=True)
class MembershipVerdict:
    ok: bool
    missing: tuple[Fraction, ...] = ()
    warning: str | None = None


def step1_slope_membership(s: SlopeData, boundary_slopes: Iterable) -> MembershipVerdict:
    known = {Fraction(x.as_fraction() if isinstance(x, Slope) else x) for x in boundary_slopes}
    wanted = set(s.js) | set(s.js_star)
    if not wanted:
        return MembershipVerdict(True, (), "no Jones slopes given; membership holds vacuously")
    missing = tuple(sorted(wanted - known))
    return MembershipVerdict(not missing, missing)


# -- surfaces with their data ----------------------------------------------------

@dataclass(frozen=True)
class Candidate:
    surface: NormalSurface
    chi: int
    sheets: int
    boundary_count: int
    slope: Slope | None

    def to_json(self) -> dict:
        return {"coords": list(self.surface.coords), "chi": self.chi, "sheets": self.sheets,
                "boundary_count": self.boundary_count,
                "slope": None if self.slope is None else str(self.slope)}


def describe(tri: Triangulation, s: NormalSurface) -> Candidate:
    chi = euler_characteristic(tri, s)
    try:
        bd = boundary_data(tri, s)
    except SurfaceError:
        return Candidate(s, chi, 0, 0, None)
    return Candidate(s, chi, bd.sheets, bd.boundary_count, bd.slope)


@dataclass
class SurfaceCatalogue:
    """Admissible fundamental surfaces of one triangulation with their data."""

    tri: Triangulation
    surfaces: list[Candidate]

    @classmethod
    def build(cls, tri: Triangulation, limits: HilbertLimits = DEFAULT_LIMITS) -> "SurfaceCatalogue":
        found = [s for s in fundamental_surfaces(tri, limits) if s.admissible]
        return cls(tri, [describe(tri, s) for s in found])

    def at_slope(self, slope: Slope) -> list[Candidate]:
        return [c for c in self.surfaces if c.slope == slope]

    @property
    def closed(self) -> list[Candidate]:
        return [c for c in self.surfaces if c.boundary_count == 0]

    def slopes(self) -> set[Slope]:
        return {c.slope for c in self.surfaces if c.slope is not None and not c.slope.is_meridian}


# -- fundamental search -------------------------------------------------------------

@dataclass
class SearchResult:
    witness: Candidate | None
    x_nonzero: list[tuple[int, Candidate]]
    unknown: list[Candidate]
    oracle_calls: list[dict]
    note: str = ""


def find_fundamental_jones(tri: Triangulation, slope: Slope, lam: int, p: int,
                           oracle: EssentialityOracle,
                           catalogue: SurfaceCatalogue | None = None) -> SearchResult:
    """Essential fundamental surface at ``slope`` with ``x = 0``, else the ``x != 0`` ones.

    Surfaces the oracle cannot classify are returned in ``unknown``.
    """
    cat = catalogue or SurfaceCatalogue.build(tri)
    start = len(oracle.log)
    witness, nonzero, unknown = None, [], []
    for c in sorted(cat.at_slope(slope), key=lambda c: c.surface.coords):
        x = x_value(c.chi, c.sheets, p, lam)
        answer = oracle.query(c.surface, purpose=f"slope {slope}, x = {x}")
        if answer == UNKNOWN:
            unknown.append(c)
        elif _essential(answer):
            if x == 0 and witness is None:
                witness = c
            elif x != 0:
                nonzero.append((x, c))
    note = ""
    if witness is None and nonzero:
        note = "each surface S realising the slope has a summand with |dSigma| <= |dS|"
    return SearchResult(witness, nonzero, unknown, oracle.log[start:], note)


def homozero_search(ez_prime: Sequence[tuple[int, NormalSurface]],
                    closed: Sequence[tuple[int, NormalSurface]], p: int,
                    limits: HilbertLimits = DEFAULT_LIMITS) -> list[tuple[int, ...]]:
    """Fundamental solutions of ``sum x_i n_i + 2p^2 sum chi_j m_j = 0``.

    Solutions that use two surfaces with clashing quad types are dropped.
    """
    if any(x == 0 for x, _ in ez_prime):
        raise ValueError("homozero_search expects nonzero x-values")
    coeffs = [x for x, _ in ez_prime] + [2 * p * p * chi for chi, _ in closed]
    if not coeffs:
        return []
    surfaces = [s for _, s in ez_prime] + [s for _, s in closed]
    basis = hilbert_basis(DiophantineSystem([coeffs]), limits)
    clash = [(i, j) for i in range(len(surfaces)) for j in range(i + 1, len(surfaces))
             if not compatible(surfaces[i], surfaces[j])]
    return [v for v in basis if not any(v[i] and v[j] for i, j in clash)]


def combine(coeffs: Sequence[int], surfaces: Sequence[NormalSurface]) -> NormalSurface:
    total = NormalSurface([0] * len(surfaces[0].coords))
    for k, s in zip(coeffs, surfaces):
        if k:
            total = haken_sum(total, k * s)
    return total


# -- report -------------------------------------------------------------------

@dataclass
class Verdict:
    slope: Fraction
    side: str
    status: Status
    beta: Fraction | None = None
    lam: int | None = None
    witness: dict | None = None
    candidates: list[dict] = field(default_factory=list)
    oracle_calls: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "slope": str(self.slope),
            "side": self.side,
            "status": self.status.value,
            "beta": None if self.beta is None else str(self.beta),
            "lambda": self.lam,
            "witness": self.witness,
            "candidates": self.candidates,
            "oracle_calls": self.oracle_calls,
            "notes": self.notes,
        }


@dataclass
class ConjectureReport:
    verdicts: list[Verdict]
    period: int
    oracle_mode: str
    oracle_source: str
    boundary_slopes: list[Fraction]
    membership: MembershipVerdict
    notes: list[str] = field(default_factory=list)

    @property
    def status(self) -> Status:
        if not self.membership.ok:
            return Status.FAILED_SLOPE_MEMBERSHIP
        if not self.verdicts:
            return Status.SATISFIED
        return min((v.status for v in self.verdicts), key=_SEVERITY.index)

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "period": self.period,
            "oracle": {"mode": self.oracle_mode, "source": self.oracle_source},
            "boundary_slopes": [str(s) for s in self.boundary_slopes],
            "membership": {
                "ok": self.membership.ok,
                "missing": [str(s) for s in self.membership.missing],
                "warning": self.membership.warning,
            },
            "verdicts": [v.to_json() for v in self.verdicts],
            "notes": self.notes,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


@dataclass(frozen=True)
class PipelineConfig:
    n_max: int = 8
    p_max: int = 6
    tail: int = 0
    limits: HilbertLimits = DEFAULT_LIMITS
    boundary_slopes: frozenset[Fraction] | None = None  # overrides the computed set


_ESSENTIAL_NOTE = ("essentiality comes from the oracle; minimal position of summands "
                   "is not verified here")
_TORUS_NOTE = "closed surfaces enter only with chi < 0; tori are excluded"
_HOMOLOGY_NOTE = ("slopes a/b mean [a mu + b lambda]; the longitude path has slope 0 "
                  "and the meridian edge 1/0")


def _witness(c: Candidate, x: int, fundamental: bool, coeffs=None) -> dict:
    out = c.to_json()
    out["x_value"] = x
    out["fundamental"] = fundamental
    if coeffs is not None:
        out["combination"] = list(coeffs)
    return out


def _decide_slope(cat: SurfaceCatalogue, slope: Fraction, side: str, betas: list[Fraction],
                  p: int, oracle: EssentialityOracle, config: PipelineConfig) -> Verdict:
    tri = cat.tri
    sl = Slope.from_fraction(slope)
    verdict = Verdict(slope, side, Status.FAILED_NO_ESSENTIAL)
    start = len(oracle.log)
    if not betas:
        verdict.notes.append("no linear term paired with this slope")
        return verdict
    conditional = False
    for beta in betas:
        verdict.beta = beta
        try:
            lam = jones_lambda(beta if side == "max" else -beta, p)
        except ValueError as exc:
            verdict.notes.append(str(exc))
            continue
        verdict.lam = lam
        res = find_fundamental_jones(tri, sl, lam, p, oracle, cat)
        if res.witness is not None:
            verdict.status = Status.SATISFIED
            verdict.witness = _witness(res.witness, 0, True)
            break
        verdict.candidates = [_witness(c, x, True) for x, c in res.x_nonzero]
        if res.unknown:
            conditional = True
            verdict.notes.append(f"{len(res.unknown)} surface(s) at this slope have unknown status")
        if not res.x_nonzero:
            continue
        verdict.status = Status.FAILED_NO_JONES_SURFACE
        if res.note:
            verdict.notes.append(res.note)
        closed = []
        for c in cat.closed:
            if c.chi < 0 and _essential(oracle.query(c.surface, "closed surface for homozero")):
                closed.append(c)
        ez = [(x, c) for x, c in res.x_nonzero]
        combos = homozero_search([(x, c.surface) for x, c in ez],
                                 [(c.chi, c.surface) for c in closed], p, config.limits)
        parts = [c for _, c in ez] + closed
        for coeffs in combos:
            total = combine(coeffs, [c.surface for c in parts])
            cand = describe(tri, total)
            x = x_value(cand.chi, cand.sheets, p, lam) if cand.boundary_count else None
            answer = oracle.query(total, purpose="Haken sum from homozero")
            if answer == UNKNOWN:
                conditional = True
            elif _essential(answer) and x == 0 and cand.slope == sl:
                verdict.status = Status.SATISFIED
                verdict.witness = _witness(cand, 0, False, coeffs)
                break
        if verdict.status == Status.SATISFIED:
            break
        if not combos:
            verdict.notes.append("the homogeneous equation has no admissible solution")
    verdict.oracle_calls = oracle.log[start:]
    if verdict.status != Status.SATISFIED and conditional:
        verdict.status = Status.CONDITIONAL
    if verdict.status == Status.SATISFIED and oracle.mode == "assume-essential":
        verdict.status = Status.CONDITIONAL
        verdict.notes.append("essentiality assumed, not certified")
    if verdict.status in (Status.SATISFIED, Status.CONDITIONAL):
        verdict.notes.append(_ESSENTIAL_NOTE)
    return verdict


def check_strong_slope(source: Diagram | SlopeData, tri: Triangulation,
                       oracle: EssentialityOracle,
                       config: PipelineConfig = PipelineConfig()) -> ConjectureReport:
    """Run every step; per-slope errors become notes instead of aborting the run."""
    if isinstance(source, Diagram):
        data = compute_slopes(source, config.n_max, config.p_max, config.tail)
    else:
        data = source
    if oracle.mode == "annotation":
        oracle.check_keys(tri)
    cat = SurfaceCatalogue.build(tri, config.limits)
    if config.boundary_slopes is not None:
        slopes = set(config.boundary_slopes)
    else:
        slopes = {s.as_fraction() for s in cat.slopes()}
    membership = step1_slope_membership(data, slopes)
    notes = [_TORUS_NOTE, _HOMOLOGY_NOTE]
    if membership.warning:
        notes.append(membership.warning)
    verdicts: list[Verdict] = []
    if membership.ok:
        p = data.period
        for side, values in (("max", data.js), ("min", data.js_star)):
            for slope in sorted(values):
                try:
                    betas = data.linear_terms(slope, side)
                    verdicts.append(_decide_slope(cat, slope, side, betas, p, oracle, config))
                except Exception as exc:  # attach, keep going
                    v = Verdict(slope, side, Status.CONDITIONAL)
                    v.notes.append(f"error: {exc}")
                    verdicts.append(v)
    return ConjectureReport(verdicts, data.period, oracle.mode, oracle.source,
                            sorted(slopes), membership, notes)


@dataclass(frozen=True)
class CorollaryVerdict:
    ok: bool
    reason: str


def corollary_check(report: ConjectureReport, slope, certified_maximal: bool = False) -> CorollaryVerdict:
    """With a maximal-χ spanning Jones surface at ``slope``, a fundamental one must exist.

    Typical use: the fiber surface of a positive braid closure at slope 0.
    """
    if not certified_maximal:
        raise ValueError("caller must certify maximality")
    slope = Fraction(slope)
    hits = [v for v in report.verdicts if v.slope == slope and v.witness is not None]
    if any(v.witness["sheets"] == 1 and v.witness["fundamental"] for v in hits):
        return CorollaryVerdict(True, "fundamental spanning witness present")
    if hits:
        return CorollaryVerdict(False, "witnesses at this slope are not fundamental spanning "
                                       "surfaces: hypothesis or data inconsistent")
    return CorollaryVerdict(False, "no witness at this slope")


def load_slopes(path) -> SlopeData:
    return SlopeData.from_json(json.loads(Path(path).read_text()))
