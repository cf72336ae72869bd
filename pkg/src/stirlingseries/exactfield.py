"""Exact arithmetic in the quadratic field Q(sqrt 2).

Rationals are :class:`fractions.Fraction` (always reduced, positive denominator),
integers are Python ints.  :class:`QSqrt2` pairs two rationals ``p + q*sqrt(2)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from mpmath.libmp import from_rational

from .precision import PrecisionContext

BigRational = Fraction

__all__ = [
    "BigRational",
    "QSqrt2",
    "format_rational",
    "parse_rational",
    "qsqrt2_arith",
    "qsqrt2_to_decimal",
]


def format_rational(r: Fraction) -> str:
    """Canonical "p/q" rendering; integers render without a denominator."""
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True, init=False)
class QSqrt2:
    """The number ``p + q*sqrt(2)`` with rational ``p`` and ``q``."""

    p: Fraction
    q: Fraction

    def __init__(self, p=0, q=0):
        object.__setattr__(self, "p", _as_fraction(p))
        object.__setattr__(self, "q", _as_fraction(q))

    @classmethod
    def coerce(cls, x) -> QSqrt2:
        if isinstance(x, QSqrt2):
            return x
        return cls(x, 0)

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def is_rational(self) -> bool:
        return self.q == 0

    def is_pure_sqrt2(self) -> bool:
        return self.p == 0

    def conjugate(self) -> QSqrt2:
        return QSqrt2(self.p, -self.q)

    def norm(self) -> Fraction:
        """Field norm p^2 - 2 q^2, nonzero for every nonzero element."""
        return self.p * self.p - 2 * self.q * self.q

    def __add__(self, other):
        if not isinstance(other, (QSqrt2, int, Fraction)):
            return NotImplemented
        other = QSqrt2.coerce(other)
        return QSqrt2(self.p + other.p, self.q + other.q)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2(-self.p, -self.q)

    def __sub__(self, other):
        if not isinstance(other, (QSqrt2, int, Fraction)):
            return NotImplemented
        return self + (-QSqrt2.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, (QSqrt2, int, Fraction)):
            return NotImplemented
        return QSqrt2.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSqrt2(self.p * other, self.q * other)
        if not isinstance(other, QSqrt2):
            return NotImplemented
        return QSqrt2(
            self.p * other.p + 2 * self.q * other.q,
            self.p * other.q + self.q * other.p,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (QSqrt2, int, Fraction)):
            return NotImplemented
        other = QSqrt2.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        n = other.norm()
        num = self * other.conjugate()
        return QSqrt2(num.p / n, num.q / n)

    def __rtruediv__(self, other):
        if not isinstance(other, (QSqrt2, int, Fraction)):
            return NotImplemented
        return QSqrt2.coerce(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        if isinstance(other, QSqrt2):
            return self.p == other.p and self.q == other.q
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.q))

    def __str__(self):
        if self.q == 0:
            return format_rational(self.p)
        root = f"{format_rational(self.q)}*sqrt(2)"
        if self.p == 0:
            return root
        sign = "-" if self.q < 0 else "+"
        return f"{format_rational(self.p)} {sign} {format_rational(abs(self.q))}*sqrt(2)"

    def __repr__(self):
        return f"QSqrt2({format_rational(self.p)!r}, {format_rational(self.q)!r})"

    @classmethod
    def parse(cls, text: str) -> QSqrt2:
        """Inverse of ``str()``: accepts "p", "q*sqrt(2)" and "p +/- q*sqrt(2)"."""
        m = _QSQRT2_RE.fullmatch(text.strip())
        if m is None:
            raise ValueError(f"not a canonical Q(sqrt 2) rendering: {text!r}")
        if m["mixed_p"] is not None:
            q = Fraction(m["mixed_q"])
            return cls(Fraction(m["mixed_p"]), -q if m["sign"] == "-" else q)
        if m["root"] is not None:
            return cls(0, Fraction(m["root"]))
        return cls(Fraction(m["rat"]), 0)


_FRAC = r"-?\d+(?:/\d+)?"
_QSQRT2_RE = re.compile(
    rf"(?P<mixed_p>{_FRAC}) (?P<sign>[+-]) (?P<mixed_q>\d+(?:/\d+)?)\*sqrt\(2\)"
    rf"|(?P<root>{_FRAC})\*sqrt\(2\)"
    rf"|(?P<rat>{_FRAC})"
)


def qsqrt2_arith(a: QSqrt2, b: QSqrt2, op: str) -> QSqrt2:
    """Apply ``op`` in {"add", "sub", "mul", "div"}; division by zero raises."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def _scaled_sqrt2(digits: int) -> Fraction:
    return Fraction(math.isqrt(2 * 10 ** (2 * digits)), 10**digits)


@lru_cache(maxsize=4096)
def qsqrt2_to_decimal(a: QSqrt2, ctx: PrecisionContext):
    """Round ``p + q*sqrt(2)`` to the working precision of ``ctx``.

    sqrt(2) comes from an integer square root at ``digits + guard`` digits; the
    guard grows until the truncation of sqrt(2) cannot move the rounded result
    by more than half an ulp, which also covers cancellation between p and q*sqrt(2).
    """
    mp = ctx.mp
    if a.q == 0:
        return ctx.rational(a.p.numerator, a.p.denominator)
    guard = 10
    while True:
        approx = a.p + a.q * _scaled_sqrt2(ctx.digits + guard)
        # truncation error of q*sqrt(2) is below |q| * 10^-(digits+guard)
        slack = abs(a.q) * Fraction(1, 10 ** (ctx.digits + guard))
        lo, hi = approx - slack, approx + slack * 2
        rlo = from_rational(lo.numerator, lo.denominator, mp.prec, "n")
        rhi = from_rational(hi.numerator, hi.denominator, mp.prec, "n")
        if rlo == rhi:
            return mp.make_mpf(rlo)
        if guard > 4 * ctx.digits + 400:
            return mp.make_mpf(from_rational(approx.numerator, approx.denominator, mp.prec, "n"))
        guard *= 2
