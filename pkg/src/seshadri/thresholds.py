"""Rationality thresholds, the witness catalog, and classification.

For r >= 10 very general points the Seshadri function mu -> epsilon(mu) on
the ray L(mu) = mu*H - sum(E_i) is linear (hence rational) wherever some
curve class computes it.  The threshold mu_0(r) is the explicitly known
value above which a catalog of witness curves covers the whole ray: their
weakly-submaximal loci chain into [mu_0(r), inf) with no gap.  Below the
threshold, inside (sqrt(r), mu_0(r)), no witness is known; there epsilon(mu)
= sqrt(mu^2 - r) would follow from the standard submaximality conjecture,
and rationality of epsilon(mu) is equivalent to mu^2 - r being a square.

The catalog is small: the exceptional ray [sqrt(r+1), inf) exists for every
r, and a handful of low-degree pencils close the remaining gap down to
mu_0(r) for r in {8, ..., 13}; from r = 12 on the exceptional ray alone
suffices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import isqrt

from .errors import NotAboveSqrtR, UnsupportedR
from .exact import QuadraticNumber, RationalLike, _as_fraction, compare
from .surface import CurveClass, MuInterval, submaximal_locus


@dataclass(frozen=True)
class ThresholdEntry:
    """Threshold mu_0(r); conditional marks reliance on the submaximality
    conjecture for the region below it."""

    r: int
    mu0: QuadraticNumber
    conditional: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu0", QuadraticNumber._coerce(self.mu0))
        if compare(self.mu0 * self.mu0, self.r) < 0 or compare(self.mu0, 0) <= 0:
            raise ValueError(f"mu0 = {self.mu0} sits below sqrt({self.r})")


def threshold(r: int) -> ThresholdEntry:
    """mu_0(r): 77/24, 4 - sqrt(3)/3, sqrt(13), (26 - sqrt(13))/6 for
    r = 10..13, and sqrt(r+1) from r = 14 on."""
    if r < 10:
        raise UnsupportedR(f"thresholds start at r = 10, got {r}")
    if r == 10:
        mu0 = QuadraticNumber.from_rational(Fraction(77, 24))
    elif r == 11:
        mu0 = QuadraticNumber(Fraction(4), Fraction(-1, 3), 3)
    elif r == 12:
        mu0 = QuadraticNumber.sqrt(13)
    elif r == 13:
        mu0 = QuadraticNumber(Fraction(13, 3), Fraction(-1, 6), 13)
    else:
        mu0 = QuadraticNumber.sqrt(r + 1)
    return ThresholdEntry(r, mu0)


@dataclass(frozen=True)
class CatalogCurve:
    """A witness curve: its class, the multiplicity t it is used with, and a
    plain-language description of the geometry."""

    r: int
    curve: CurveClass
    t: int
    source: str


def catalog(r: int) -> list[CatalogCurve]:
    """Witness curves at r, exceptional ray first, then by ascending degree.

    Every entry has a nonempty weakly-submaximal locus; for r <= 7 only the
    exceptional ray is cataloged.
    """
    if r < 1:
        raise ValueError(f"need r >= 1, got {r}")
    entries = [
        CatalogCurve(
            r,
            CurveClass.exceptional(r),
            1,
            "exceptional divisor of one blown-up point",
        )
    ]
    if r == 8:
        entries.append(
            CatalogCurve(
                r,
                CurveClass(6, (3,) + (2,) * 7),
                1,
                "sextic with one triple point and seven double points",
            )
        )
    if r in (9, 10):
        entries.append(
            CatalogCurve(
                r,
                CurveClass(3, (1,) * 9 + (0,) * (r - 9)),
                1,
                "cubic through nine of the points",
            )
        )
    if r == 10:
        entries.append(
            CatalogCurve(
                r,
                CurveClass(10, (4,) + (3,) * 9),
                2,
                "pencil of decics with one quadruple point and nine triple points",
            )
        )
    if r == 11:
        entries.append(
            CatalogCurve(
                r,
                CurveClass(4, (2,) + (1,) * 10),
                2,
                "pencil of quartics with one double point",
            )
        )
    if r == 13:
        entries.append(
            CatalogCurve(
                r,
                CurveClass(4, (1,) * 13),
                2,
                "pencil of quartics through all thirteen points",
            )
        )
    interior = [e for e in entries if not e.curve.is_exceptional]
    interior.sort(key=lambda e: e.curve.d)
    return entries[:1] + interior


@dataclass(frozen=True)
class CoverageReport:
    """Result of chaining the catalog loci against the target ray."""

    r: int
    target_lo: QuadraticNumber
    target_lo_closed: bool
    chain: tuple[tuple[CatalogCurve, MuInterval], ...]
    gaps: tuple[tuple[QuadraticNumber, QuadraticNumber], ...]
    covered: bool

    def to_json_dict(self) -> dict:
        left = "[" if self.target_lo_closed else "("
        return {
            "r": self.r,
            "target": f"{left}{self.target_lo.render()}, inf)",
            "covered": self.covered,
            "chain": [
                {"class": str(cc.curve), "t": cc.t, "locus": iv.render()}
                for cc, iv in self.chain
            ],
            "gaps": [[lo.render(), hi.render()] for lo, hi in self.gaps],
        }


def _coverage_target(r: int) -> tuple[QuadraticNumber, bool]:
    """Ray the catalog is expected to cover at this r.

    r >= 10: [mu_0(r), inf).  r = 9: the ample range (3, inf).  r = 8: the
    ample range (17/6, inf).  r <= 7: only the exceptional ray
    [sqrt(r+1), inf) is claimed.
    """
    if r >= 10:
        return threshold(r).mu0, True
    if r == 9:
        return QuadraticNumber.from_rational(3), False
    if r == 8:
        return QuadraticNumber.from_rational(Fraction(17, 6)), False
    return QuadraticNumber.sqrt(r + 1), True


def verify_coverage(r: int) -> CoverageReport:
    """Sweep the catalog loci left to right and report gaps.

    Starting from the target's left end, each locus must begin no later than
    the point already reached; the sweep succeeds when some locus is
    unbounded above and no gap was recorded.  All loci are closed, so
    touching endpoints chain.
    """
    target_lo, target_closed = _coverage_target(r)
    loci: list[tuple[CatalogCurve, MuInterval]] = []
    for cc in catalog(r):
        for iv in submaximal_locus(cc.curve, cc.t, r):
            loci.append((cc, iv))
    loci.sort(key=cmp_to_key(lambda p, q: compare(p[1].lo, q[1].lo)))
    reach = target_lo
    unbounded = False
    gaps: list[tuple[QuadraticNumber, QuadraticNumber]] = []
    for _, iv in loci:
        if unbounded:
            break
        if compare(iv.lo, reach) > 0:
            gaps.append((reach, iv.lo))
        if iv.hi is None:
            unbounded = True
        elif compare(iv.hi, reach) > 0:
            reach = iv.hi
    return CoverageReport(
        r=r,
        target_lo=target_lo,
        target_lo_closed=target_closed,
        chain=tuple(loci),
        gaps=tuple(gaps),
        covered=unbounded and not gaps,
    )


class RationalityVerdict(enum.Enum):
    RATIONAL_WITH_WITNESS = "RationalWithWitness"
    RATIONAL_SQRT = "RationalSqrt"
    CONDITIONALLY_IRRATIONAL = "ConditionallyIrrational"


@dataclass(frozen=True)
class Classification:
    """Rationality status of epsilon(mu) at one rational mu > sqrt(r)."""

    r: int
    mu: Fraction
    verdict: RationalityVerdict
    witness: CatalogCurve | None
    witness_locus: MuInterval | None
    mu0: QuadraticNumber
    mu_below_mu0: bool
    l_squared: Fraction
    l_squared_is_rational_square: bool
    conditional_on_conjecture: bool

    def to_json_dict(self) -> dict:
        return {
            "r": self.r,
            "mu": str(self.mu),
            "verdict": self.verdict.value,
            "witness": (
                None
                if self.witness is None
                else {
                    "class": str(self.witness.curve),
                    "t": self.witness.t,
                    "locus": self.witness_locus.render()
                    if self.witness_locus is not None
                    else None,
                    "source": self.witness.source,
                }
            ),
            "mu0": self.mu0.render(),
            "mu_below_mu0": self.mu_below_mu0,
            "l_squared": str(self.l_squared),
            "l_squared_is_rational_square": self.l_squared_is_rational_square,
            "conditional_on_conjecture": self.conditional_on_conjecture,
        }


def _is_rational_square(x: Fraction) -> bool:
    if x < 0:
        return False
    num, den = x.numerator, x.denominator
    return isqrt(num) ** 2 == num and isqrt(den) ** 2 == den


def classify(r: int, mu: RationalLike) -> Classification:
    """Classify rationality of epsilon(mu) at rational mu.

    Above the threshold a catalog curve whose locus contains mu witnesses
    rationality outright (interior curves in ascending degree are preferred
    over the exceptional ray when several apply).  Below the threshold the
    verdict rides on the submaximality conjecture: epsilon(mu) would equal
    sqrt(mu^2 - r), rational exactly when mu^2 - r is a rational square.
    """
    if r < 10:
        raise UnsupportedR(f"classification starts at r = 10, got {r}")
    mu = _as_fraction(mu)
    l_squared = mu * mu - r
    if mu <= 0 or l_squared <= 0:
        raise NotAboveSqrtR(f"need mu > sqrt({r}), got {mu}")
    entry = threshold(r)
    below = compare(mu, entry.mu0) < 0
    square = _is_rational_square(l_squared)
    if not below:
        candidates = sorted(
            catalog(r), key=lambda cc: (cc.curve.is_exceptional, cc.curve.d)
        )
        for cc in candidates:
            for iv in submaximal_locus(cc.curve, cc.t, r):
                if iv.contains(mu):
                    return Classification(
                        r=r,
                        mu=mu,
                        verdict=RationalityVerdict.RATIONAL_WITH_WITNESS,
                        witness=cc,
                        witness_locus=iv,
                        mu0=entry.mu0,
                        mu_below_mu0=False,
                        l_squared=l_squared,
                        l_squared_is_rational_square=square,
                        conditional_on_conjecture=False,
                    )
        raise RuntimeError(
            f"coverage invariant violated: no witness at r={r}, mu={mu}"
        )
    verdict = (
        RationalityVerdict.RATIONAL_SQRT
        if square
        else RationalityVerdict.CONDITIONALLY_IRRATIONAL
    )
    return Classification(
        r=r,
        mu=mu,
        verdict=verdict,
        witness=None,
        witness_locus=None,
        mu0=entry.mu0,
        mu_below_mu0=True,
        l_squared=l_squared,
        l_squared_is_rational_square=square,
        conditional_on_conjecture=verdict
        is RationalityVerdict.CONDITIONALLY_IRRATIONAL,
    )
