"""Truncated Stirling approximations of Gamma(s+1) and their error tables."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .precision import PrecisionContext, sqrt_2pi
from .quadrature import DomainError, _shift, gamma_reference, power_factor
from .series_engine import StirlingSeries

SCALING_BAND = (0.8, 1.25)


@dataclass(frozen=True)
class ApproximationRow:
    s: object
    order: int
    reference: object
    approx: object
    rel_error: object
    scaled_error: object


@dataclass(frozen=True)
class ApproximationReport:
    rows: tuple[ApproximationRow, ...]

    def row(self, s, order: int) -> ApproximationRow:
        for r in self.rows:
            if r.order == order and r.s == s:
                return r
        raise KeyError((s, order))

    def scaled_errors(self, order: int) -> list:
        return [r.scaled_error for r in self.rows if r.order == order]


@dataclass(frozen=True)
class ScalingResult:
    order: int
    expected: int
    ratios: tuple  # ((s, 2s, ratio), ...)
    passed: bool


def _check_order(n: int, series: StirlingSeries):
    if n < 0 or n > series.max_index:
        raise ValueError(f"order {n} outside 0..{series.max_index}")


def partial_sum(s, n: int, series: StirlingSeries, ctx: PrecisionContext):
    """sum_{k<=n} c_k s^-k, Horner in 1/s."""
    mp = ctx.mp
    inv = 1 / ctx.mpf(s)
    acc = mp.zero
    for c in reversed(series.coeffs[: n + 1]):
        acc = acc * inv + ctx.mpf(Fraction(c))
    return acc


def prefactor(s, ctx: PrecisionContext):
    """(s/e)^s sqrt(2 pi s)."""
    return power_factor(s, ctx) * sqrt_2pi(ctx) * ctx.mp.sqrt(ctx.mpf(s))


def stirling_approx(s, n: int, series: StirlingSeries, ctx: PrecisionContext | None = None):
    ctx = ctx or PrecisionContext()
    if ctx.mpf(s) <= 0:
        raise DomainError(f"s must be positive, got {s}")
    _check_order(n, series)
    return prefactor(s, ctx) * partial_sum(s, n, series, ctx)


def _row(s, n, series, ctx, reference, pref):
    mp = ctx.mp
    total = partial_sum(s, n, series, ctx)
    approx = pref * total
    ratio = reference / pref
    return ApproximationRow(
        s=s,
        order=n,
        reference=reference,
        approx=approx,
        rel_error=abs(approx - reference) / abs(reference),
        scaled_error=abs(ratio - total) * ctx.mpf(s) ** n,
    )


def error_table(
    s_list: Sequence,
    n_list: Sequence[int],
    series: StirlingSeries,
    ctx: PrecisionContext | None = None,
) -> ApproximationReport:
    """Rows for every (s, n), sorted by (n, s); references from :func:`gamma_reference`."""
    ctx = ctx or PrecisionContext()
    for n in n_list:
        _check_order(n, series)
    cache = {}
    for s in s_list:
        if ctx.mpf(s) <= 0:
            raise DomainError(f"s must be positive, got {s}")
        cache[s] = (gamma_reference(_shift(s), ctx), prefactor(s, ctx))
    rows = [
        _row(s, n, series, ctx, *cache[s])
        for n in sorted(set(n_list))
        for s in sorted(set(s_list))
    ]
    return ApproximationReport(tuple(rows))


def remainder(s, n: int, series: StirlingSeries, ctx: PrecisionContext):
    """|R(s) - sum_{k<=n} c_k s^-k| with R(s) = Gamma(s+1) / ((s/e)^s sqrt(2 pi s))."""
    ref = gamma_reference(_shift(s), ctx)
    return abs(ref / prefactor(s, ctx) - partial_sum(s, n, series, ctx))


def scaling_check(
    n: int,
    s_pairs: Sequence[tuple],
    series: StirlingSeries,
    ctx: PrecisionContext | None = None,
    band: tuple = SCALING_BAND,
) -> ScalingResult:
    """Check remainder(s)/remainder(2s) against 2^(n+1) within ``band``."""
    ctx = ctx or PrecisionContext()
    if n + 1 > series.max_index:
        raise ValueError("scaling_check needs the coefficient after the truncation order")
    expected = 2 ** (n + 1)
    ratios = []
    ok = True
    for s, s2 in s_pairs:
        r = remainder(s, n, series, ctx) / remainder(s2, n, series, ctx)
        ratios.append((s, s2, r))
        ok = ok and band[0] * expected <= r <= band[1] * expected
    return ScalingResult(order=n, expected=expected, ratios=tuple(ratios), passed=bool(ok))
