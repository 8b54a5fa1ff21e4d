"""Enumeration of balanced critical pairs and the counterexample search.

A candidate counterexample to rationality of the Seshadri function on the
blow-up at r >= 10 very general points is a pair (C, t): an effective class
C = (d; m_1, ..., m_r) carrying a point of multiplicity t, weakly submaximal
for some mu in [sqrt(r), sqrt(r+1)).  Two reductions cut the search space to
finitely many pairs:

* Balancing.  Replacing multiplicities (m_1, m_r) by (m_1 - 1, m_r + 1)
  (largest decremented, smallest incremented) preserves both the
  submaximality condition, which depends on C only through d and
  M = sum(m_i), and the expected-dimension condition (**) below, whose left
  side can only grow.  So only balanced classes (m^s, (m-1)^(r-s)) matter.

* Criticality.  For fixed (d, t) the relevant class maximizes M subject to

      (**)  C(d+2,2) - sum C(m_i+1,2) > max{C(t+1,2) - 2, 0},

  and the pair survives only if t is extremal too: either t = d - 1 or (**)
  fails with t replaced by t + 1.  Larger t values are capped by t_range,
  and M is capped by total_multiplicity_bound; both caps come from the
  geometry of the strip [sqrt(r), sqrt(r+1)).

Each critical pair is then checked against a threshold mu_0: with
Delta = M^2 - r(d^2 - t^2), the pair is harmless when Delta < 0 (the class
is never submaximal on the strip) or when mu_- = (dM - t*sqrt(Delta))/(d^2
- t^2) >= mu_0, i.e. submaximality starts only above the threshold.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt

from .errors import ExceptionalClassUnsupported, InvalidT, UnsupportedR
from .exact import QuadraticLike, QuadraticNumber, compare
from .surface import CurveClass
from . import thresholds as _thresholds


@dataclass(frozen=True)
class BalancedPair:
    """Balanced class (d; m^s, (m-1)^(r-s)) with a marked multiplicity t."""

    d: int
    m: int
    s: int
    r: int
    t: int

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError(f"need d >= 2, got {self.d}")
        if self.m < 1:
            raise ValueError(f"need m >= 1, got {self.m}")
        if not 1 <= self.s <= self.r:
            raise ValueError(f"need 1 <= s <= r, got s={self.s}, r={self.r}")
        if not 1 <= self.t < self.d:
            raise InvalidT(f"need 1 <= t < d = {self.d}, got t = {self.t}")

    @property
    def total_multiplicity(self) -> int:
        return self.s * self.m + (self.r - self.s) * (self.m - 1)

    @property
    def mean_multiplicity(self) -> Fraction:
        return Fraction(self.total_multiplicity, self.r)

    def curve_class(self) -> CurveClass:
        return CurveClass(self.d, (self.m,) * self.s + (self.m - 1,) * (self.r - self.s))

    def __str__(self) -> str:
        return f"({self.curve_class()}, t={self.t})"


class Outcome(enum.Enum):
    PASS_NEGATIVE_DELTA = "PassNegativeDelta"
    PASS_MU_MINUS_ABOVE_THRESHOLD = "PassMuMinusAboveThreshold"
    COUNTEREXAMPLE = "Counterexample"


@dataclass(frozen=True)
class Verdict:
    """Outcome of checking one pair; mu_minus is present iff delta >= 0."""

    delta: int
    mu_minus: QuadraticNumber | None
    outcome: Outcome

    def __post_init__(self) -> None:
        if (self.delta >= 0) != (self.mu_minus is not None):
            raise ValueError("mu_minus must be present exactly when delta >= 0")

    @property
    def passed(self) -> bool:
        return self.outcome is not Outcome.COUNTEREXAMPLE


@dataclass(frozen=True)
class VerificationReport:
    r: int
    mu0: QuadraticNumber
    pairs: tuple[tuple[BalancedPair, Verdict], ...]

    @property
    def all_pass(self) -> bool:
        return all(v.passed for _, v in self.pairs)

    @property
    def counterexamples(self) -> tuple[tuple[BalancedPair, Verdict], ...]:
        return tuple((p, v) for p, v in self.pairs if not v.passed)


def balanced_split(total: int, r: int) -> tuple[int, int]:
    """The unique (m, s), 1 <= s <= r, with s*m + (r-s)*(m-1) = total.

    Multiplicities as equal as possible: m = floor((total-1)/r) + 1 and
    s = total - (m-1)*r.  Needs total >= 1.
    """
    if total < 1:
        raise ValueError(f"need total >= 1, got {total}")
    m = (total - 1) // r + 1
    s = total - (m - 1) * r
    return m, s


def balancing_move(mults: tuple[int, ...]) -> tuple[int, ...]:
    """Decrement one largest multiplicity, increment one smallest.

    The move that drives any class to its balanced representative while
    preserving the total.  Needs max - min >= 2 to produce a genuinely
    different class; callers enforce that when it matters.
    """
    out = list(mults)
    out[out.index(max(out))] -= 1
    out[out.index(min(out))] += 1
    return tuple(sorted(out, reverse=True))


def _edim_lhs(c: CurveClass) -> int:
    return comb(c.d + 2, 2) - sum(comb(m + 1, 2) for m in c.mults)


def edim_condition(c: CurveClass, t: int) -> bool:
    """(**): C(d+2,2) - sum C(m_i+1,2) > max{C(t+1,2) - 2, 0}.

    Guarantees a curve in |C| with an ordinary point of multiplicity t can be
    found through the r general points.
    """
    if c.is_exceptional:
        raise ExceptionalClassUnsupported("(**) applies to interior classes only")
    if t < 1:
        raise InvalidT(f"need t >= 1, got {t}")
    return _edim_lhs(c) > max(comb(t + 1, 2) - 2, 0)


def t_range(r: int) -> frozenset[int]:
    """Multiplicities t worth searching at this r.

    For t outside this set no class can be weakly submaximal on the strip:
    the bound is t <= 3(1 + 1/(4(r - 3 sqrt(r)))) rounded per r, which gives
    {1..5} at r = 10, {1..4} at r = 11, {1..3} at r = 12 and {1, 2} for all
    r >= 13.
    """
    if r < 10:
        raise UnsupportedR(f"need r >= 10, got {r}")
    if r == 10:
        return frozenset({1, 2, 3, 4, 5})
    if r == 11:
        return frozenset({1, 2, 3, 4})
    if r == 12:
        return frozenset({1, 2, 3})
    return frozenset({1, 2})


def total_multiplicity_bound(r: int) -> int:
    """Largest M compatible with submaximality somewhere on the strip.

    A weakly submaximal class on [sqrt(r), sqrt(r+1)) satisfies
    4rM - 25r <= 12M sqrt(r), so the bound is the largest M with that
    inequality, i.e. floor(25r / (4r - 12 sqrt(r))).  Decided exactly: for
    4rM - 25r <= 0 it holds outright, otherwise both sides are positive and
    squaring gives the rational test (4rM - 25r)^2 <= 144 M^2 r.
    """
    if r < 10:
        raise UnsupportedR(f"need r >= 10, got {r}")

    def holds(m_total: int) -> bool:
        lhs = 4 * r * m_total - 25 * r
        if lhs <= 0:
            return True
        return lhs * lhs <= 144 * m_total * m_total * r

    m_total = 1
    while holds(m_total + 1):
        m_total += 1
    return m_total


def _max_total_satisfying_edim(d: int, t: int, r: int) -> int:
    """Largest M >= 1 whose balanced class satisfies (**) at t; 0 if none."""
    best = 0
    m_total = 1
    while True:
        m, s = balanced_split(m_total, r)
        c = CurveClass(d, (m,) * s + (m - 1,) * (r - s))
        if edim_condition(c, t):
            best = m_total
            m_total += 1
        else:
            return best


def _is_t_critical(d: int, t: int, r: int, m_total: int) -> bool:
    """t = d - 1, or (**) fails once t is bumped to t + 1."""
    if t == d - 1:
        return True
    m, s = balanced_split(m_total, r)
    c = CurveClass(d, (m,) * s + (m - 1,) * (r - s))
    return not edim_condition(c, t + 1)


def critical_pair_for(d: int, t: int, r: int) -> BalancedPair | None:
    """The critical balanced pair at (d, t), if any.

    Maximizes M subject to (**), then keeps the pair only if t is extremal
    (see module docstring).  None when no M >= 1 satisfies (**) or when t is
    not extremal.
    """
    if r < 10:
        raise UnsupportedR(f"need r >= 10, got {r}")
    if not 1 <= t < d:
        raise InvalidT(f"need 1 <= t < d = {d}, got t = {t}")
    m_total = _max_total_satisfying_edim(d, t, r)
    if m_total == 0 or not _is_t_critical(d, t, r, m_total):
        return None
    m, s = balanced_split(m_total, r)
    return BalancedPair(d, m, s, r, t)


def enumerate_critical_pairs(r: int) -> tuple[BalancedPair, ...]:
    """All critical pairs with M <= total_multiplicity_bound(r), sorted (t, d).

    For fixed t the maximal M satisfying (**) grows with d (the left side of
    (**) gains a full row of C(d+2,2) while the balanced sum is unchanged),
    so the d-scan stops at the first d whose maximal M exceeds the bound.
    The monotonicity is asserted on every step.
    """
    bound = total_multiplicity_bound(r)
    pairs: list[BalancedPair] = []
    for t in sorted(t_range(r)):
        previous = 0
        d = t + 1
        while True:
            m_total = _max_total_satisfying_edim(d, t, r)
            assert m_total >= previous, (
                f"maximal M not monotone in d at r={r}, t={t}, d={d}"
            )
            previous = m_total
            if m_total > bound:
                break
            if m_total >= 1 and _is_t_critical(d, t, r, m_total):
                m, s = balanced_split(m_total, r)
                pairs.append(BalancedPair(d, m, s, r, t))
            d += 1
    return tuple(pairs)


def check_pair(pair: BalancedPair, mu0: QuadraticLike) -> Verdict:
    """Check one pair against the threshold mu0.

    Delta < 0 means the class is nowhere submaximal above sqrt(r).  Otherwise
    submaximality starts at mu_- = (dM - t sqrt(Delta))/(d^2 - t^2) and the
    pair passes iff mu_- >= mu0 (equality passes: rationality at mu_- itself
    is witnessed by this very class).
    """
    d, t, m_total = pair.d, pair.t, pair.total_multiplicity
    lead = d * d - t * t
    delta = m_total * m_total - pair.r * lead
    if delta < 0:
        return Verdict(delta, None, Outcome.PASS_NEGATIVE_DELTA)
    mu_minus = (QuadraticNumber.sqrt(delta) * (-t) + d * m_total) / lead
    if compare(mu_minus, mu0) >= 0:
        return Verdict(delta, mu_minus, Outcome.PASS_MU_MINUS_ABOVE_THRESHOLD)
    return Verdict(delta, mu_minus, Outcome.COUNTEREXAMPLE)


def verify_no_counterexample(
    r: int, mu0: QuadraticLike | None = None
) -> VerificationReport:
    """Check every critical pair at r against mu0 (default: threshold(r))."""
    if r < 10:
        raise UnsupportedR(f"need r >= 10, got {r}")
    if mu0 is None:
        mu0 = _thresholds.threshold(r).mu0
    mu0 = QuadraticNumber._coerce(mu0)
    pairs = tuple(
        (pair, check_pair(pair, mu0)) for pair in enumerate_critical_pairs(r)
    )
    return VerificationReport(r, mu0, pairs)


def small_degree_pairs(r: int) -> tuple[BalancedPair, ...]:
    """The five balanced pairs with d <= 4 that are critical for every large r.

    For r >= 20 these are the only critical pairs in degrees d < 5, and each
    has Delta = M^2 - r(d^2 - t^2) < 0 there, which is what the large-r
    verification consumes.
    """
    if r < 14:
        raise UnsupportedR(f"need r >= 14 to host 14 simple points, got {r}")
    return (
        BalancedPair(2, 1, 5, r, 1),
        BalancedPair(3, 1, 9, r, 1),
        BalancedPair(4, 1, 14, r, 1),
        BalancedPair(3, 1, 8, r, 2),
        BalancedPair(4, 1, 13, r, 2),
    )


@dataclass(frozen=True)
class OracleReport:
    """Result of the independent brute-force sweep at one r."""

    r: int
    mu0: QuadraticNumber
    pairs_checked: int
    counterexamples: tuple[tuple[BalancedPair, Verdict], ...]
    critical: tuple[BalancedPair, ...]
    matches_enumeration: bool

    @property
    def all_pass(self) -> bool:
        return not self.counterexamples and self.matches_enumeration


def brute_force_oracle(r: int, mu0: QuadraticLike | None = None) -> OracleReport:
    """Exhaustive sweep over balanced pairs, independent of the d-scan cutoff.

    Scans every balanced pair (d, t, M) with 2 <= d <= d_max, 1 <= t <
    min(d, max t_range) and 1 <= M <= total_multiplicity_bound(r) that
    satisfies (**), checking each against mu0 and recording which are
    critical.  The finite d_max genuinely covers all d >= 2:

    * a Counterexample needs Delta >= 0, i.e. d^2 <= M^2/r + t^2, so no
      counterexample exists beyond d_ce = isqrt(B^2/r + t_max^2) + 1;
    * criticality needs (**) to fail at M + 1 <= B + 1, impossible once
      C(d+2,2) exceeds max{C(t+1,2)-2, 0} + sum C(m_i+1,2) evaluated on the
      balanced class of B + 1, since the left side of (**) then stays
      positive for every M <= B.
    """
    if r < 10:
        raise UnsupportedR(f"need r >= 10, got {r}")
    if mu0 is None:
        mu0 = _thresholds.threshold(r).mu0
    mu0 = QuadraticNumber._coerce(mu0)
    bound = total_multiplicity_bound(r)
    t_max = max(t_range(r))

    d_ce = isqrt(bound * bound // r + t_max * t_max) + 1
    m, s = balanced_split(bound + 1, r)
    rhs_cap = max(comb(t_max + 1, 2) - 2, 0) + s * comb(m + 1, 2) + (r - s) * comb(m, 2)
    d_crit = 2
    while comb(d_crit + 3, 2) <= rhs_cap:
        d_crit += 1
    d_max = max(d_ce, d_crit)

    pairs_checked = 0
    counterexamples: list[tuple[BalancedPair, Verdict]] = []
    critical: list[BalancedPair] = []
    for d in range(2, d_max + 1):
        for t in range(1, min(d, t_max + 1)):
            for m_total in range(1, bound + 1):
                m, s = balanced_split(m_total, r)
                c = CurveClass(d, (m,) * s + (m - 1,) * (r - s))
                if not edim_condition(c, t):
                    continue
                pair = BalancedPair(d, m, s, r, t)
                pairs_checked += 1
                verdict = check_pair(pair, mu0)
                if not verdict.passed:
                    counterexamples.append((pair, verdict))
                m_next, s_next = balanced_split(m_total + 1, r)
                c_next = CurveClass(d, (m_next,) * s_next + (m_next - 1,) * (r - s_next))
                m_critical = not edim_condition(c_next, t)
                t_critical = t == d - 1 or not edim_condition(c, t + 1)
                if m_critical and t_critical:
                    critical.append(pair)
    critical.sort(key=lambda p: (p.t, p.d))
    matches = tuple(critical) == enumerate_critical_pairs(r)
    return OracleReport(
        r, mu0, pairs_checked, tuple(counterexamples), tuple(critical), matches
    )
