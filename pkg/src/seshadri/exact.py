"""Exact arithmetic over Q and real quadratic extensions Q(sqrt(n)).

Everything downstream (curve loci, threshold comparisons, the branch-and-bound
certifier) reduces to statements about numbers of the form a + b*sqrt(n) with
a, b rational and n a nonnegative integer, so this module provides exactly
that: quadratic numbers with decidable comparison, rational closed intervals,
and a small expression evaluator for interval enclosures of one-square-root
formulas.

Normalization makes representations canonical: the radicand is reduced to its
squarefree part on construction and b == 0 forces rad == 0.  Canonical forms
turn value equality into structural equality, because 1 and sqrt(n) are
linearly independent over Q for squarefree n > 1 and sqrt(n), sqrt(m) generate
different fields for distinct squarefree n, m > 1.  Strict order between
distinct values is then decided by refining interval enclosures until they
separate; termination is guaranteed because equality was excluded
symbolically.

All interval endpoint arithmetic is exact rational arithmetic.  The only
outward rounding in the package happens in sqrt_enclosure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Mapping, Union

from .errors import (
    DivisionByZeroInterval,
    IncompatibleRadicands,
    NegativeRadicand,
    NegativeRadicandInterval,
)

Rational = Fraction
RationalLike = Union[Fraction, int]

DEFAULT_SQRT_WIDTH = Fraction(1, 2**32)


def _as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Split n >= 0 as f**2 * m with m squarefree; returns (f, m)."""
    if n < 0:
        raise NegativeRadicand(f"radicand must be nonnegative, got {n}")
    if n in (0, 1):
        return 1, n
    f = 1
    m = n
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            f *= p
        p += 1 if p == 2 else 2
    return f, m


def sqrt_enclosure(x: RationalLike, width: RationalLike) -> RationalInterval:
    """Closed rational interval containing sqrt(x), at most `width` wide.

    Exact at perfect squares of rationals: lo == hi == sqrt(x).  Raises
    NegativeRadicand for x < 0 and ValueError for width <= 0.
    """
    x = _as_fraction(x)
    width = _as_fraction(width)
    if x < 0:
        raise NegativeRadicand(f"cannot enclose sqrt of {x}")
    if width <= 0:
        raise ValueError(f"enclosure width must be positive, got {width}")
    num, den = x.numerator, x.denominator
    sn, sd = isqrt(num), isqrt(den)
    if sn * sn == num and sd * sd == den:
        root = Fraction(sn, sd)
        return RationalInterval(root, root)
    # denominator d with 1/d <= width; floor(x * d^2) brackets sqrt within 1/d
    d = -((-width.denominator) // width.numerator)
    n = (num * d * d) // den
    s = isqrt(n)
    return RationalInterval(Fraction(s, d), Fraction(s + 1, d))


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", _as_fraction(self.lo))
        object.__setattr__(self, "hi", _as_fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")

    @staticmethod
    def point(x: RationalLike) -> RationalInterval:
        x = _as_fraction(x)
        return RationalInterval(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: RationalLike) -> bool:
        x = _as_fraction(x)
        return self.lo <= x <= self.hi

    def intersect(self, other: RationalInterval) -> RationalInterval | None:
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        return RationalInterval(lo, hi) if lo <= hi else None

    def _coerce(self, other: RationalInterval | RationalLike) -> RationalInterval:
        if isinstance(other, RationalInterval):
            return other
        return RationalInterval.point(other)

    def __add__(self, other: RationalInterval | RationalLike) -> RationalInterval:
        o = self._coerce(other)
        return RationalInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> RationalInterval:
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other: RationalInterval | RationalLike) -> RationalInterval:
        return self + (-self._coerce(other))

    def __rsub__(self, other: RationalLike) -> RationalInterval:
        return (-self) + other

    def __mul__(self, other: RationalInterval | RationalLike) -> RationalInterval:
        o = self._coerce(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RationalInterval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other: RationalInterval | RationalLike) -> RationalInterval:
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise DivisionByZeroInterval(f"divisor {o} contains zero")
        quotients = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return RationalInterval(min(quotients), max(quotients))

    def __rtruediv__(self, other: RationalLike) -> RationalInterval:
        return RationalInterval.point(other) / self

    def sqrt(self, width: RationalLike = DEFAULT_SQRT_WIDTH) -> RationalInterval:
        """Enclosure of sqrt over the interval.

        A lower endpoint slightly below zero is clamped to zero: callers use
        this on radicands they know are nonnegative (e.g. mu^2 - r for
        mu >= sqrt(r)) where outward rounding may have leaked below zero.
        Raises NegativeRadicandInterval when even hi < 0.
        """
        if self.hi < 0:
            raise NegativeRadicandInterval(f"radicand interval {self} is negative")
        lo = max(self.lo, Fraction(0))
        return RationalInterval(
            sqrt_enclosure(lo, width).lo, sqrt_enclosure(self.hi, width).hi
        )

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


QuadraticLike = Union["QuadraticNumber", Fraction, int]


@dataclass(frozen=True)
class QuadraticNumber:
    """Exact real number a + b*sqrt(rad) with a, b rational, rad an integer >= 0.

    Canonical invariants, enforced on construction: rad is squarefree,
    and b == 0 iff rad == 0.  Hence two instances are equal as numbers iff
    they are equal as triples.
    """

    a: Fraction
    b: Fraction = Fraction(0)
    rad: int = 0

    def __post_init__(self) -> None:
        a = _as_fraction(self.a)
        b = _as_fraction(self.b)
        rad = self.rad
        if not isinstance(rad, int):
            raise TypeError(f"radicand must be an int, got {type(rad).__name__}")
        if rad < 0:
            raise NegativeRadicand(f"radicand must be nonnegative, got {rad}")
        f, m = squarefree_decomposition(rad)
        if m <= 1:
            # sqrt(rad) = f (m == 1) or 0 (m == 0): the number is rational
            a, b, rad = a + b * f * m, Fraction(0), 0
        else:
            b, rad = b * f, m
            if b == 0:
                rad = 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "rad", rad)

    @staticmethod
    def from_rational(x: RationalLike) -> QuadraticNumber:
        return QuadraticNumber(_as_fraction(x))

    @staticmethod
    def sqrt(x: RationalLike) -> QuadraticNumber:
        """sqrt of a nonnegative rational, as an exact quadratic number."""
        x = _as_fraction(x)
        if x < 0:
            raise NegativeRadicand(f"cannot take the square root of {x}")
        # sqrt(p/q) = sqrt(p*q)/q
        return QuadraticNumber(Fraction(0), Fraction(1, x.denominator), x.numerator * x.denominator)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.a

    @staticmethod
    def _coerce(x: QuadraticLike) -> QuadraticNumber:
        if isinstance(x, QuadraticNumber):
            return x
        return QuadraticNumber(_as_fraction(x))

    def _common_rad(self, other: QuadraticNumber) -> int:
        if self.b == 0:
            return other.rad
        if other.b == 0:
            return self.rad
        if self.rad != other.rad:
            raise IncompatibleRadicands(
                f"cannot combine sqrt({self.rad}) with sqrt({other.rad})"
            )
        return self.rad

    def __add__(self, other: QuadraticLike) -> QuadraticNumber:
        o = self._coerce(other)
        rad = self._common_rad(o)
        return QuadraticNumber(self.a + o.a, self.b + o.b, rad)

    __radd__ = __add__

    def __neg__(self) -> QuadraticNumber:
        return QuadraticNumber(-self.a, -self.b, self.rad)

    def __sub__(self, other: QuadraticLike) -> QuadraticNumber:
        return self + (-self._coerce(other))

    def __rsub__(self, other: QuadraticLike) -> QuadraticNumber:
        return (-self) + other

    def __mul__(self, other: QuadraticLike) -> QuadraticNumber:
        o = self._coerce(other)
        rad = self._common_rad(o)
        # (a1 + b1 s)(a2 + b2 s) with s^2 = rad; b1 or b2 is 0 when rads differ
        return QuadraticNumber(
            self.a * o.a + self.b * o.b * rad, self.a * o.b + self.b * o.a, rad
        )

    __rmul__ = __mul__

    def __truediv__(self, other: QuadraticLike) -> QuadraticNumber:
        o = self._coerce(other)
        if o.a == 0 and o.b == 0:
            raise ZeroDivisionError("division by zero")
        rad = self._common_rad(o)
        # multiply by the conjugate; norm a2^2 - b2^2*rad is nonzero for
        # nonzero o because sqrt(rad) is irrational or b2 == 0
        norm = o.a * o.a - o.b * o.b * rad
        conj = QuadraticNumber(o.a, -o.b, rad)
        num = self * conj
        return QuadraticNumber(num.a / norm, num.b / norm, num.rad)

    def __rtruediv__(self, other: QuadraticLike) -> QuadraticNumber:
        return self._coerce(other) / self

    def enclosure(self, width: RationalLike = DEFAULT_SQRT_WIDTH) -> RationalInterval:
        """Closed rational interval containing the value, at most `width` wide."""
        if self.b == 0:
            return RationalInterval.point(self.a)
        width = _as_fraction(width)
        if width <= 0:
            raise ValueError(f"enclosure width must be positive, got {width}")
        s = sqrt_enclosure(self.rad, width / abs(self.b))
        lo = self.a + self.b * (s.lo if self.b > 0 else s.hi)
        hi = self.a + self.b * (s.hi if self.b > 0 else s.lo)
        return RationalInterval(lo, hi)

    def sign(self) -> int:
        return compare(self, 0)

    def approx_decimal(self, digits: int = 6) -> str:
        """Decimal string within 10**-digits of the value. Deterministic."""
        scale = 10**digits
        mid = self.enclosure(Fraction(1, 4 * scale)).midpoint
        scaled = round(mid * scale)
        sign = "-" if scaled < 0 else ""
        whole, frac = divmod(abs(scaled), scale)
        return f"{sign}{whole}.{frac:0{digits}d}"

    def __lt__(self, other: QuadraticLike) -> bool:
        return compare(self, other) < 0

    def __le__(self, other: QuadraticLike) -> bool:
        return compare(self, other) <= 0

    def __gt__(self, other: QuadraticLike) -> bool:
        return compare(self, other) > 0

    def __ge__(self, other: QuadraticLike) -> bool:
        return compare(self, other) >= 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (QuadraticNumber, Fraction, int)):
            o = self._coerce(other)
            return (self.a, self.b, self.rad) == (o.a, o.b, o.rad)
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.a)
        return hash((self.a, self.b, self.rad))

    def render(self) -> str:
        """Canonical string: "p/q", "sqrt(n)", "p/q + r/s*sqrt(n)", etc.

        Fractions are reduced, a unit coefficient on the root is omitted,
        a zero rational part is omitted, and the root term's sign becomes
        the connective ("a - b*sqrt(n)" rather than "a + -b*sqrt(n)").
        """
        if self.b == 0:
            return str(self.a)
        babs = abs(self.b)
        root = f"sqrt({self.rad})" if babs == 1 else f"{babs}*sqrt({self.rad})"
        if self.a == 0:
            return root if self.b > 0 else f"-{root}"
        op = "+" if self.b > 0 else "-"
        return f"{self.a} {op} {root}"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"QuadraticNumber({self.render()!r})"


_RATIONAL_RE = r"-?\d+(?:/\d+)?"
_QN_FULL_RE = re.compile(
    rf"^(?P<a>{_RATIONAL_RE})\s*(?P<op>[+-])\s*(?:(?P<b>\d+(?:/\d+)?)\*)?sqrt\((?P<n>\d+)\)$"
)
_QN_ROOT_RE = re.compile(
    rf"^(?P<sign>-?)(?:(?P<b>\d+(?:/\d+)?)\*)?sqrt\((?P<n>\d+)\)$"
)
_QN_RATIONAL_RE = re.compile(rf"^(?P<a>{_RATIONAL_RE})$")


def parse_quadratic(text: str) -> QuadraticNumber:
    """Inverse of QuadraticNumber.render (accepts any valid spacing)."""
    s = text.strip()
    m = _QN_RATIONAL_RE.match(s)
    if m:
        return QuadraticNumber(Fraction(m.group("a")))
    m = _QN_ROOT_RE.match(s)
    if m:
        b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
        if m.group("sign") == "-":
            b = -b
        return QuadraticNumber(Fraction(0), b, int(m.group("n")))
    m = _QN_FULL_RE.match(s)
    if m:
        b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
        if m.group("op") == "-":
            b = -b
        return QuadraticNumber(Fraction(m.group("a")), b, int(m.group("n")))
    raise ValueError(f"cannot parse quadratic number from {text!r}")


def compare(x: QuadraticLike, y: QuadraticLike) -> int:
    """Exact trichotomous comparison: -1, 0, or +1.

    Equality is decided structurally on canonical forms; strict order by
    refining enclosures until they separate (termination follows because the
    values are then known to differ).
    """
    qx = QuadraticNumber._coerce(x)
    qy = QuadraticNumber._coerce(y)
    if (qx.a, qx.b, qx.rad) == (qy.a, qy.b, qy.rad):
        return 0
    if qx.is_rational and qy.is_rational:
        return -1 if qx.a < qy.a else 1
    width = Fraction(1, 2**16)
    while True:
        ex = qx.enclosure(width)
        ey = qy.enclosure(width)
        if ex.hi < ey.lo:
            return -1
        if ey.hi < ex.lo:
            return 1
        width = width * width


class Expression:
    """Node of a tiny arithmetic AST evaluated over rational intervals."""

    def _coerce(self, other: ExpressionLike) -> Expression:
        if isinstance(other, Expression):
            return other
        return Const(_as_fraction(other))

    def __add__(self, other: ExpressionLike) -> Expression:
        return BinOp("+", self, self._coerce(other))

    def __radd__(self, other: ExpressionLike) -> Expression:
        return BinOp("+", self._coerce(other), self)

    def __sub__(self, other: ExpressionLike) -> Expression:
        return BinOp("-", self, self._coerce(other))

    def __rsub__(self, other: ExpressionLike) -> Expression:
        return BinOp("-", self._coerce(other), self)

    def __mul__(self, other: ExpressionLike) -> Expression:
        return BinOp("*", self, self._coerce(other))

    def __rmul__(self, other: ExpressionLike) -> Expression:
        return BinOp("*", self._coerce(other), self)

    def __truediv__(self, other: ExpressionLike) -> Expression:
        return BinOp("/", self, self._coerce(other))

    def __rtruediv__(self, other: ExpressionLike) -> Expression:
        return BinOp("/", self._coerce(other), self)

    def __neg__(self) -> Expression:
        return BinOp("-", Const(Fraction(0)), self)

    def sqrt(self) -> Expression:
        return SqrtOp(self)


ExpressionLike = Union[Expression, Fraction, int]


@dataclass(frozen=True)
class Const(Expression):
    value: Fraction


@dataclass(frozen=True)
class Var(Expression):
    name: str


@dataclass(frozen=True)
class BinOp(Expression):
    op: str
    left: Expression
    right: Expression


@dataclass(frozen=True)
class SqrtOp(Expression):
    arg: Expression


def interval_eval(
    expr: Expression,
    bindings: Mapping[str, RationalInterval],
    sqrt_width: RationalLike = DEFAULT_SQRT_WIDTH,
) -> RationalInterval:
    """Evaluate an expression over interval bindings; result encloses the range.

    Square roots follow RationalInterval.sqrt semantics: a lower radicand
    endpoint below zero is clamped (the caller asserts true nonnegativity),
    a fully negative radicand raises NegativeRadicandInterval.
    """
    if isinstance(expr, Const):
        return RationalInterval.point(expr.value)
    if isinstance(expr, Var):
        try:
            return bindings[expr.name]
        except KeyError:
            raise KeyError(f"no binding for variable {expr.name!r}") from None
    if isinstance(expr, SqrtOp):
        return interval_eval(expr.arg, bindings, sqrt_width).sqrt(sqrt_width)
    if isinstance(expr, BinOp):
        left = interval_eval(expr.left, bindings, sqrt_width)
        right = interval_eval(expr.right, bindings, sqrt_width)
        if expr.op == "+":
            return left + right
        if expr.op == "-":
            return left - right
        if expr.op == "*":
            return left * right
        if expr.op == "/":
            return left / right
        raise ValueError(f"unknown operator {expr.op!r}")
    raise TypeError(f"not an expression node: {expr!r}")
