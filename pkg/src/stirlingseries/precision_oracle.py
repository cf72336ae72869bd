"""Cross-checks that share no code with the coefficient recurrence.

* :func:`method1_coefficient` recovers a_n as the x -> 0+ limit of

      2^{n/2} ( sqrt(g(x))/x - sum_{k<n} a_k g(x)^{k/2} ) / x^n,

  sampled at x = 4^-m.  The limit exists only if the supplied a_0..a_{n-1} are
  right, so a failure to stabilize flags a bad prefix.
* :func:`stirling_from_bernoulli` exponentiates the classical log-Gamma
  expansion with Bernoulli numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactfield import QSqrt2, qsqrt2_to_decimal
from .precision import PrecisionContext
from .series_engine import StirlingSeries

__all__ = [
    "Method1Estimate",
    "PrecisionContext",
    "StabilizationError",
    "bernoulli_numbers",
    "method1_coefficient",
    "stirling_from_bernoulli",
]

MIN_STABLE_DIGITS = 4
# digits kept in reserve after the cancellation in the Method I numerator
_RESERVE_DIGITS = 30


@dataclass(frozen=True)
class Method1Estimate:
    n: int
    value: object
    stabilized_digits: int
    samples: tuple  # (x_m, estimate_m), x_m decreasing


class StabilizationError(ArithmeticError):
    """The Method I estimates did not settle; ``estimate`` holds the diagnostics."""

    def __init__(self, estimate: Method1Estimate):
        self.estimate = estimate
        super().__init__(
            f"Method I for a_{estimate.n} stabilized to only {estimate.stabilized_digits} "
            f"digits (need {MIN_STABLE_DIGITS}); the prefix or the precision is inadequate"
        )


def _g_series(x, ctx: PrecisionContext):
    """x - ln(1+x) for 0 < x <= 1/4, from the alternating Taylor series of ln(1+x).

    The leading x cancels exactly, so the sum starts at x^2/2; terms are added
    until the first one below 10^-(digits+5) relative to that leading term.
    """
    mp = ctx.mp
    cutoff = x * x * mp.mpf(10) ** (-(ctx.digits + 5))
    total = mp.zero
    power = x * x
    k = 2
    while True:
        term = power / k
        if term < cutoff:
            return total
        total += term if k % 2 == 0 else -term
        power *= x
        k += 1


def _agreeing_digits(a, b, ctx: PrecisionContext) -> int:
    if a == b:
        return ctx.digits
    scale = max(abs(a), abs(b))
    if scale == 0:
        return ctx.digits
    rel = abs(a - b) / scale
    return max(0, min(ctx.digits, int(math.floor(-float(ctx.mp.log10(rel))))))


def _prefix_value(a, ctx: PrecisionContext):
    if isinstance(a, QSqrt2):
        return qsqrt2_to_decimal(a, ctx)
    return ctx.mpf(a)


def method1_coefficient(
    n: int,
    known: Sequence,
    ctx: PrecisionContext,
    *,
    strict: bool = True,
) -> Method1Estimate:
    """Estimate a_n from the limit formula, given a_0..a_{n-1} in ``known``.

    Samples run over x_m = 4^-m for m = 2, 3, ... as long as the cancellation in
    the numerator (about n*m*log10(4) digits) leaves a reserve of working digits.
    With ``strict`` a :class:`StabilizationError` is raised when the last two
    estimates agree to fewer than 4 digits.
    """
    if n < 1:
        raise ValueError("Method I applies to n >= 1")
    if len(known) < n:
        raise ValueError(f"need a_0..a_{n - 1}, got {len(known)} values")
    if ctx.digits < 10 * (n + 2):
        raise ValueError(f"Method I for a_{n} needs at least {10 * (n + 2)} digits")
    mp = ctx.mp
    prefix = [_prefix_value(a, ctx) for a in list(known)[:n]]
    m_last = max(3, int((ctx.digits - _RESERVE_DIGITS) / (n * math.log10(4))))
    scale = mp.sqrt(2) ** n
    samples = []
    for m in range(2, m_last + 1):
        x = ctx.rational(1, 4**m)
        g = _g_series(x, ctx)
        root = mp.sqrt(g)
        acc = mp.zero
        for c in reversed(prefix):
            acc = acc * root + c
        est = scale * (root / x - acc) / x**n
        samples.append((x, est))
    # digits surviving the cancellation at the smallest x bound what agreement can mean
    surviving = ctx.digits - math.ceil(n * m_last * math.log10(4))
    digits = min(surviving, _agreeing_digits(samples[-2][1], samples[-1][1], ctx))
    result = Method1Estimate(n=n, value=samples[-1][1], stabilized_digits=digits, samples=tuple(samples))
    if strict and digits < MIN_STABLE_DIGITS:
        raise StabilizationError(result)
    return result


def bernoulli_numbers(m_max: int) -> list[Fraction]:
    """B_0..B_{m_max} (B_1 = -1/2) from sum_{j<=m} C(m+1, j) B_j = 0."""
    if m_max < 0:
        raise ValueError("m_max must be non-negative")
    B = [Fraction(1)]
    for m in range(1, m_max + 1):
        s = sum(math.comb(m + 1, j) * B[j] for j in range(m))
        B.append(-s / (m + 1))
    return B


def stirling_from_bernoulli(n_max: int) -> StirlingSeries:
    """c_0..c_{n_max} as the power series exp(mu(t)) in t = 1/s, where

    mu(t) = sum_{j>=1} B_{2j} / (2j (2j-1)) t^{2j-1}.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    B = bernoulli_numbers(n_max + 1)
    mu = [Fraction(0)] * (n_max + 1)
    for j in range(1, n_max // 2 + 2):
        if 2 * j - 1 <= n_max:
            mu[2 * j - 1] = B[2 * j] / (2 * j * (2 * j - 1))
    # E = exp(mu): E' = mu' E  =>  n e_n = sum_{k=1}^{n} k mu_k e_{n-k}
    e = [Fraction(1)]
    for n in range(1, n_max + 1):
        e.append(sum(k * mu[k] * e[n - k] for k in range(1, n + 1)) / n)
    return StirlingSeries(tuple(e))
