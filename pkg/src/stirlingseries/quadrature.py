"""High-precision checks of the integral representations of Gamma(s+1).

Everything is composite Gauss-Legendre on a truncated window.  Panel counts
double until two successive sums agree; that difference is reported as the
error estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .analytic_core import f_of_v, g_eval, y_of_v
from .precision import PrecisionContext, pi, sqrt_2pi

GL_ORDER = 32
START_PANELS = 4
MAX_PANELS = 1024
# extra e-folds beyond the working precision when truncating a window
TAIL_MARGIN = 10


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class IntegralResult:
    value: object
    estimated_error: object
    panels: int
    truncation_point: object


@lru_cache(maxsize=32)
def gauss_legendre(order: int, ctx: PrecisionContext) -> tuple[tuple, tuple]:
    """Nodes and weights on [-1, 1], from Newton iteration on P_order."""
    mp = ctx.mp
    p = pi(ctx)
    nodes, weights = [], []
    tol = ctx.eps * 10
    for i in range(1, order // 2 + 1):
        x = mp.cos(p * (i - mp.mpf(1) / 4) / (order + mp.mpf(1) / 2))
        for _ in range(100):
            p0, p1 = mp.one, x
            for k in range(2, order + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = order * (x * p1 - p0) / (x * x - 1)
            dx = p1 / dp
            x -= dx
            if abs(dx) <= tol:
                break
        # recompute the derivative at the converged node
        p0, p1 = mp.one, x
        for k in range(2, order + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        dp = order * (x * p1 - p0) / (x * x - 1)
        w = 2 / ((1 - x * x) * dp * dp)
        nodes += [x, -x]
        weights += [w, w]
    if order % 2:
        raise ValueError("only even orders are supported")
    return tuple(nodes), tuple(weights)


def composite_gauss_legendre(fn: Callable, a, b, panels: int, ctx: PrecisionContext):
    """Sum of GL_ORDER-point rules over ``panels`` equal panels; fixed summation order."""
    mp = ctx.mp
    nodes, weights = gauss_legendre(GL_ORDER, ctx)
    a, b = ctx.mpf(a), ctx.mpf(b)
    h = (b - a) / panels
    total = mp.zero
    for i in range(panels):
        mid = a + (i + mp.mpf(1) / 2) * h
        part = mp.zero
        for x, w in zip(nodes, weights):
            part += w * fn(mid + x * h / 2)
        total += part * h / 2
    return total


def integrate(
    fn: Callable,
    a,
    b,
    ctx: PrecisionContext,
    rel_tol=None,
    start_panels: int = START_PANELS,
    max_panels: int = MAX_PANELS,
) -> IntegralResult:
    """Composite GL with panel doubling until |I_P - I_2P| <= rel_tol |I_2P|."""
    mp = ctx.mp
    if rel_tol is None:
        rel_tol = mp.mpf(10) ** (-(ctx.digits - 6))
    panels = start_panels
    prev = composite_gauss_legendre(fn, a, b, panels, ctx)
    while True:
        panels *= 2
        cur = composite_gauss_legendre(fn, a, b, panels, ctx)
        err = abs(cur - prev)
        if err <= rel_tol * abs(cur) or panels >= max_panels:
            return IntegralResult(value=cur, estimated_error=err, panels=panels, truncation_point=ctx.mpf(b))
        prev = cur


def _is_integral(s) -> bool:
    if isinstance(s, int):
        return True
    if isinstance(s, Fraction):
        return s.denominator == 1
    if isinstance(s, float):
        return s.is_integer()
    return False


def _lower_gamma_unit(s, ctx: PrecisionContext):
    """int_0^1 t^(s-1) e^-t dt = sum_k (-1)^k / (k! (s+k)), free of the t = 0 singularity."""
    mp = ctx.mp
    total = mp.zero
    fact = mp.one
    k = 0
    while True:
        term = 1 / (fact * (s + k))
        total += -term if k % 2 else term
        if term < ctx.eps * abs(total) / 100:
            return total
        k += 1
        fact *= k


def gamma_integral(s, ctx: PrecisionContext | None = None) -> IntegralResult:
    """Gamma(s) = int_0^inf t^(s-1) e^-t dt, split at t = 1.

    [0, 1] uses the termwise-integrated exponential series; [1, T] uses
    Gauss-Legendre with T past the point where the integrand falls below
    10^-digits of the peak.
    """
    ctx = ctx or PrecisionContext()
    mp = ctx.mp
    s = ctx.mpf(s)
    if s <= 0:
        raise DomainError(f"Gamma integral needs s > 0, got {s}")
    head = _lower_gamma_unit(s, ctx)
    sf = float(s)
    cut = sf * math.log(max(sf, 2.0)) + (ctx.digits + TAIL_MARGIN) * math.log(10)
    # push the cut until the integrand is negligible against the peak (log scale)
    log_peak = (sf - 1) * math.log(max(sf - 1, 1.0)) - max(sf - 1, 1.0)
    while (sf - 1) * math.log(cut) - cut > log_peak - (ctx.digits + TAIL_MARGIN) * math.log(10):
        cut *= 1.5
    T = mp.mpf(math.ceil(cut))
    sm1 = s - 1
    body = integrate(lambda t: mp.exp(sm1 * mp.ln(t) - t), 1, T, ctx, start_panels=8)
    return IntegralResult(
        value=head + body.value,
        estimated_error=body.estimated_error,
        panels=body.panels,
        truncation_point=T,
    )


def gamma_reference(s, ctx: PrecisionContext | None = None):
    """Gamma(s): exact (s-1)! for integer s, otherwise :func:`gamma_integral`."""
    ctx = ctx or PrecisionContext()
    if _is_integral(s):
        n = int(s)
        if n <= 0:
            raise DomainError(f"Gamma needs s > 0, got {s}")
        return ctx.mpf(math.factorial(n - 1))
    return gamma_integral(s, ctx).value


def _log_budget(ctx: PrecisionContext) -> float:
    return ctx.digits * math.log(10) + TAIL_MARGIN


def laplace_integral(s, ctx: PrecisionContext | None = None, rel_tol=None) -> IntegralResult:
    """int_{-1}^inf exp(-s g(x)) dx, which equals Gamma(s+1) e^s / s^(s+1).

    The part over (-1, 0] is mapped by x = -1 + e^-w to w in [0, inf), where the
    integrand is exp(-s (w - 1 + e^-w) - w).
    """
    ctx = ctx or PrecisionContext()
    mp = ctx.mp
    s = ctx.mpf(s)
    if s <= 0:
        raise DomainError(f"s must be positive, got {s}")
    budget = _log_budget(ctx)
    x_cut = f_of_v(mp.sqrt(mp.mpf(budget) / s), ctx)
    w_cut = max(mp.one, (budget + s) / (s + 1)) + 1

    def right(x):
        return mp.exp(-s * g_eval(x, ctx))

    def left(w):
        return mp.exp(-s * (w + mp.expm1(-w)) - w)

    pos = integrate(right, 0, x_cut, ctx, rel_tol)
    neg = integrate(left, 0, w_cut, ctx, rel_tol)
    return IntegralResult(
        value=pos.value + neg.value,
        estimated_error=pos.estimated_error + neg.estimated_error,
        panels=pos.panels + neg.panels,
        truncation_point=x_cut,
    )


def substituted_integral(s, ctx: PrecisionContext | None = None, rel_tol=None) -> IntegralResult:
    """int_0^inf 2 (y(u/sqrt s) + y(-u/sqrt s)) e^{-u^2} du = Gamma(s+1) / ((s/e)^s sqrt s)."""
    ctx = ctx or PrecisionContext()
    mp = ctx.mp
    s = ctx.mpf(s)
    if s <= 0:
        raise DomainError(f"s must be positive, got {s}")
    root_s = mp.sqrt(s)
    u_cut = mp.sqrt(mp.mpf(_log_budget(ctx)))

    def integrand(u):
        v = u / root_s
        return 2 * (y_of_v(v, ctx) + y_of_v(-v, ctx)) * mp.exp(-u * u)

    res = integrate(integrand, 0, u_cut, ctx, rel_tol)
    return IntegralResult(
        value=res.value,
        estimated_error=res.estimated_error,
        panels=res.panels,
        truncation_point=u_cut,
    )


def power_factor(s, ctx: PrecisionContext):
    """(s/e)^s as exp(s (ln s - 1))."""
    mp = ctx.mp
    s = ctx.mpf(s)
    return mp.exp(s * (mp.ln(s) - 1))


def power_factor_exact(s: int, ctx: PrecisionContext):
    """(s/e)^s for integer s via the exact integer s^s; cross-checks :func:`power_factor`."""
    return ctx.mpf(s**s) * ctx.mp.exp(-s)


def laplace_identity_residual(s, ctx: PrecisionContext | None = None) -> tuple:
    """Relative gap between s^(s+1) e^-s * laplace_integral(s) and Gamma(s+1)."""
    ctx = ctx or PrecisionContext()
    mp = ctx.mp
    res = laplace_integral(s, ctx)
    sm = ctx.mpf(s)
    lhs = mp.exp((sm + 1) * mp.ln(sm) - sm) * res.value
    ref = gamma_reference(_shift(s), ctx)
    return abs(lhs - ref) / ref, res


def substituted_identity_residual(s, ctx: PrecisionContext | None = None) -> tuple:
    """Relative gap between (s/e)^s sqrt(s) * substituted_integral(s) and Gamma(s+1)."""
    ctx = ctx or PrecisionContext()
    mp = ctx.mp
    res = substituted_integral(s, ctx)
    sm = ctx.mpf(s)
    lhs = power_factor(sm, ctx) * mp.sqrt(sm) * res.value
    ref = gamma_reference(_shift(s), ctx)
    return abs(lhs - ref) / ref, res


def _shift(s):
    if isinstance(s, (int, Fraction)):
        return s + 1
    if isinstance(s, float) and s.is_integer():
        return int(s) + 1
    return s + 1


def limit_check_e9(s_list: Sequence, ctx: PrecisionContext | None = None) -> list[tuple]:
    """(s, substituted_integral(s), |value - sqrt(2 pi)|) for increasing s."""
    ctx = ctx or PrecisionContext()
    if any(b <= a for a, b in zip(s_list, s_list[1:])) or any(s <= 0 for s in s_list):
        raise ValueError("s_list must be positive and strictly increasing")
    target = sqrt_2pi(ctx)
    rows = []
    for s in s_list:
        value = substituted_integral(s, ctx).value
        rows.append((s, value, abs(value - target)))
    return rows
