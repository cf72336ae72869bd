"""Working-precision contexts and self-generated constants.

Every floating evaluation in the package goes through a :class:`PrecisionContext`,
which owns a private mpmath context.  Nothing mutates the global ``mpmath.mp``,
so evaluations at different precisions can run side by side in threads.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from mpmath.ctx_mp import MPContext
from mpmath.libmp import from_rational

DEFAULT_DIGITS = 64
MIN_DIGITS = 16


@lru_cache(maxsize=None)
def _mp_for(digits: int) -> MPContext:
    mp = MPContext()
    mp.dps = digits
    return mp


@dataclass(frozen=True)
class PrecisionContext:
    """Decimal significant digits used for floating evaluation (at least 16)."""

    digits: int = DEFAULT_DIGITS

    def __post_init__(self):
        if not isinstance(self.digits, int) or self.digits < MIN_DIGITS:
            raise ValueError(f"precision must be an integer >= {MIN_DIGITS}, got {self.digits!r}")

    @cached_property
    def mp(self) -> MPContext:
        return _mp_for(self.digits)

    @property
    def eps(self):
        return self.mp.mpf(10) ** (-self.digits)

    def with_guard(self, extra: int) -> PrecisionContext:
        return PrecisionContext(self.digits + extra)

    def mpf(self, x):
        """Convert ``x`` (int, float, str, Fraction, mpf) to a float of this context."""
        if isinstance(x, Fraction):
            return self.rational(x.numerator, x.denominator)
        return self.mp.mpf(x)

    def rational(self, num: int, den: int = 1):
        """Correctly rounded value of ``num/den``."""
        return self.mp.make_mpf(from_rational(num, den, self.mp.prec, "n"))

    def nstr(self, x, digits: int | None = None) -> str:
        return self.mp.nstr(x, digits or self.digits, strip_zeros=False)


def default_context() -> PrecisionContext:
    """Context honoring the ``STIRLING_DIGITS`` environment override."""
    raw = os.environ.get("STIRLING_DIGITS")
    return PrecisionContext(int(raw)) if raw else PrecisionContext(DEFAULT_DIGITS)


def _arctan_inverse(x: int, digits: int) -> Fraction:
    # exact partial sum of arctan(1/x), truncated below 10^-digits
    total = Fraction(0)
    bound = Fraction(1, 10**digits)
    k = 0
    while True:
        term = Fraction(1, (2 * k + 1) * x ** (2 * k + 1))
        if term < bound:
            return total
        total += -term if k % 2 else term
        k += 1


@lru_cache(maxsize=None)
def _pi_fraction(digits: int) -> Fraction:
    # Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    return 16 * _arctan_inverse(5, digits + 4) - 4 * _arctan_inverse(239, digits + 4)


def pi(ctx: PrecisionContext):
    return ctx.mpf(_pi_fraction(ctx.digits + 10))


def sqrt2(ctx: PrecisionContext):
    guard = ctx.digits + 10
    return ctx.rational(math.isqrt(2 * 10 ** (2 * guard)), 10**guard)


def sqrt_2pi(ctx: PrecisionContext):
    """sqrt(2*pi) from the integer square root of a scaled rational 2*pi."""
    guard = ctx.digits + 10
    two_pi = 2 * _pi_fraction(2 * guard + 2)
    scaled = two_pi.numerator * 10 ** (2 * guard) // two_pi.denominator
    return ctx.rational(math.isqrt(scaled), 10**guard)
