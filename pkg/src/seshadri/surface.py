"""Divisor classes on the blow-up of P^2 at r very general points.

Classes are written dH - sum(m_i E_i) against the line pull-back H and the
exceptional divisors E_i, with the intersection pairing H^2 = 1, E_i^2 = -1,
H.E_i = 0.  The uniform polarization is L(mu) = mu*H - (E_1 + ... + E_r).

The central computation is the weakly-submaximal locus of a class C with a
point of multiplicity t: the set of mu >= sqrt(r) where
(L(mu).C)/t <= sqrt(L(mu)^2) = sqrt(mu^2 - r).  After squaring (valid where
the degree side d*mu - M is nonnegative) this is controlled by the quadratic

    R(mu) = (d^2 - t^2) mu^2 - 2 d M mu + (M^2 + t^2 r) <= 0,

whose roots mu_± = (dM ± t sqrt(Delta))/(d^2 - t^2), Delta = M^2 - r(d^2-t^2),
are exact quadratic numbers.  R(sqrt(r)) = (d sqrt(r) - M)^2 >= 0, so the root
interval never straddles sqrt(r); it lies entirely on one side.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import ExceptionalClassUnsupported, InvalidMultiplicityIndex
from .exact import QuadraticLike, QuadraticNumber, compare


@dataclass(frozen=True)
class CurveClass:
    """Class dH - sum(m_i E_i), encoded as (d, mults).

    Interior classes have d >= 1 and all m_i >= 0.  Exceptional divisors are
    encoded uniformly as d = 0 with exactly one mult equal to -1 (so that
    degree_against and self_intersection need no special case).
    """

    d: int
    mults: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "mults", tuple(self.mults))
        if self.d >= 1:
            if any(m < 0 for m in self.mults):
                raise ValueError(f"interior class needs all m_i >= 0, got {self.mults}")
        elif self.d == 0:
            if sorted(self.mults) != [-1] + [0] * (len(self.mults) - 1):
                raise ValueError(
                    "d = 0 encodes an exceptional divisor: exactly one mult -1, rest 0"
                )
        else:
            raise ValueError(f"degree must be nonnegative, got {self.d}")

    @property
    def r(self) -> int:
        return len(self.mults)

    @property
    def is_exceptional(self) -> bool:
        return self.d == 0

    @property
    def total_multiplicity(self) -> int:
        return sum(self.mults)

    @staticmethod
    def exceptional(r: int, index: int = 0) -> CurveClass:
        if not 0 <= index < r:
            raise ValueError(f"index {index} out of range for r={r}")
        mults = [0] * r
        mults[index] = -1
        return CurveClass(0, tuple(mults))

    def render(self) -> str:
        """Class syntax "(d;m1^e1,m2^e2,...)": multiplicities descending,
        exponents counting repetition, ^1 and zero entries omitted."""
        if self.is_exceptional:
            return f"E{self.mults.index(-1) + 1}"
        groups: list[str] = []
        for m in sorted(set(self.mults), reverse=True):
            if m == 0:
                continue
            e = self.mults.count(m)
            groups.append(f"{m}^{e}" if e > 1 else f"{m}")
        return f"({self.d};{','.join(groups)})"

    def __str__(self) -> str:
        return self.render()


_CLASS_RE = re.compile(r"^\(\s*(?P<d>\d+)\s*;(?P<mults>[^)]*)\)$")
_EXC_RE = re.compile(r"^E(?P<i>\d+)?$")


def parse_curve_class(text: str, r: int) -> CurveClass:
    """Inverse of CurveClass.render; needs r to restore omitted zeros.

    Accepts "^1" exponents and the padded exceptional form "(0;-1)" as well.
    """
    s = text.strip()
    m = _EXC_RE.match(s)
    if m:
        index = int(m.group("i")) - 1 if m.group("i") else 0
        return CurveClass.exceptional(r, index)
    m = _CLASS_RE.match(s)
    if not m:
        raise ValueError(f"cannot parse curve class from {text!r}")
    d = int(m.group("d"))
    mults: list[int] = []
    body = m.group("mults").strip()
    if body:
        for part in body.split(","):
            part = part.strip()
            if "^" in part:
                base, _, exp = part.partition("^")
                mults.extend([int(base)] * int(exp))
            else:
                mults.append(int(part))
    if len(mults) > r:
        raise ValueError(f"{len(mults)} multiplicities exceed r={r}")
    while len(mults) < r:
        mults.append(0)
    return CurveClass(d, tuple(mults))


@dataclass(frozen=True)
class UniformPolarization:
    """L(mu) = mu*H - (E_1 + ... + E_r)."""

    r: int
    mu: QuadraticNumber

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError(f"need r >= 1, got {self.r}")
        object.__setattr__(self, "mu", QuadraticNumber._coerce(self.mu))
        if compare(self.mu, 0) <= 0:
            raise ValueError(f"need mu > 0, got {self.mu}")

    def self_intersection(self) -> QuadraticNumber:
        return self.mu * self.mu - self.r


@dataclass(frozen=True)
class MuInterval:
    """Interval of mu values; hi = None means unbounded above."""

    lo: QuadraticNumber
    hi: QuadraticNumber | None
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", QuadraticNumber._coerce(self.lo))
        if self.hi is None:
            object.__setattr__(self, "hi_closed", False)
        else:
            object.__setattr__(self, "hi", QuadraticNumber._coerce(self.hi))
            if compare(self.lo, self.hi) > 0:
                raise ValueError(f"empty interval: {self.lo} > {self.hi}")

    def contains(self, mu: QuadraticLike) -> bool:
        lo_cmp = compare(mu, self.lo)
        if lo_cmp < 0 or (lo_cmp == 0 and not self.lo_closed):
            return False
        if self.hi is None:
            return True
        hi_cmp = compare(mu, self.hi)
        return hi_cmp < 0 or (hi_cmp == 0 and self.hi_closed)

    def render(self) -> str:
        left = "[" if self.lo_closed else "("
        if self.hi is None:
            return f"{left}{self.lo.render()}, inf)"
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo.render()}, {self.hi.render()}{right}"

    def __str__(self) -> str:
        return self.render()


def self_intersection(c: CurveClass) -> int:
    return c.d * c.d - sum(m * m for m in c.mults)


def degree_against(l: UniformPolarization, c: CurveClass) -> QuadraticNumber:
    """L(mu).C = mu*d - M."""
    if c.r != l.r:
        raise ValueError(f"class has r={c.r}, polarization has r={l.r}")
    return l.mu * c.d - c.total_multiplicity


def _require_interior(c: CurveClass) -> None:
    if c.is_exceptional:
        raise ExceptionalClassUnsupported(f"{c} is not an interior class")


def expected_dim(c: CurveClass) -> int:
    """max{C(d+2,2) - sum C(m_i+1,2) - 1, -1}."""
    _require_interior(c)
    edim = comb(c.d + 2, 2) - sum(comb(m + 1, 2) for m in c.mults) - 1
    return max(edim, -1)


def arithmetic_genus(c: CurveClass) -> int:
    """(d-1)(d-2)/2 - sum m_i(m_i-1)/2."""
    _require_interior(c)
    return (c.d - 1) * (c.d - 2) // 2 - sum(m * (m - 1) // 2 for m in c.mults)


def _check_t(c: CurveClass, t: int) -> None:
    if c.is_exceptional:
        if t != 1:
            raise InvalidMultiplicityIndex(f"exceptional class needs t = 1, got {t}")
    elif not 1 <= t < c.d:
        raise InvalidMultiplicityIndex(f"need 1 <= t < d = {c.d}, got t = {t}")


def submaximality_quadratic(
    c: CurveClass, t: int, r: int, mu: QuadraticLike
) -> QuadraticNumber:
    """R(mu) = (d^2-t^2) mu^2 - 2dM mu + (M^2 + t^2 r).

    Nonpositivity of R certifies weak submaximality wherever d*mu - M >= 0.
    """
    if c.r != r:
        raise ValueError(f"class has r={c.r}, expected {r}")
    mu = QuadraticNumber._coerce(mu)
    d, m_total = c.d, c.total_multiplicity
    return (
        mu * mu * (d * d - t * t)
        - mu * (2 * d * m_total)
        + (m_total * m_total + t * t * r)
    )


def is_weakly_submaximal(c: CurveClass, t: int, l: UniformPolarization) -> bool:
    """Decide (L(mu).C)/t <= sqrt(mu^2 - r) exactly.

    False whenever L(mu)^2 <= 0.  For positive L^2 the inequality holds
    trivially when the degree side is nonpositive; otherwise both sides are
    positive and squaring reduces it to R(mu) <= 0.
    """
    _check_t(c, t)
    if c.r != l.r:
        raise ValueError(f"class has r={c.r}, polarization has r={l.r}")
    if compare(l.self_intersection(), 0) <= 0:
        return False
    if compare(degree_against(l, c), 0) <= 0:
        return True
    return compare(submaximality_quadratic(c, t, l.r, l.mu), 0) <= 0


def submaximal_locus(c: CurveClass, t: int, r: int) -> list[MuInterval]:
    """Locus {mu >= sqrt(r)} cut out by R(mu) <= 0; endpoints are R's roots.

    Exceptional class: [sqrt(r+1), inf).  Interior: [mu_-, mu_+] clipped at
    sqrt(r), empty when Delta < 0 or the root interval sits below sqrt(r).
    Endpoints attain equality, so intervals are closed (boundary points have
    rational sqrt(L^2)); restricting to the ample range is the caller's job.
    """
    if c.r != r:
        raise ValueError(f"class has r={c.r}, expected {r}")
    _check_t(c, t)
    if c.is_exceptional:
        return [MuInterval(QuadraticNumber.sqrt(r + 1), None)]
    d, m_total = c.d, c.total_multiplicity
    lead = d * d - t * t
    delta = m_total * m_total - r * lead
    if delta < 0:
        return []
    half_span = QuadraticNumber.sqrt(delta) * Fraction(t, lead)
    center = QuadraticNumber.from_rational(Fraction(d * m_total, lead))
    mu_minus = center - half_span
    mu_plus = center + half_span
    sqrt_r = QuadraticNumber.sqrt(r)
    if compare(mu_plus, sqrt_r) < 0:
        return []
    lo = mu_minus if compare(mu_minus, sqrt_r) >= 0 else sqrt_r
    return [MuInterval(lo, mu_plus)]
