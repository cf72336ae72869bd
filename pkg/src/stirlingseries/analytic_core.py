"""The functions g, G, v(x), f(v) = v^{-1}(v) and y(v) = v / f(v).

All evaluations take an optional :class:`PrecisionContext` (64 digits if
omitted) and return mpmath floats of that context.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .precision import PrecisionContext, sqrt2
from .series_engine import compute_coefficients, maclaurin_eval

TINY_X = 2.0**-26
G_SERIES_CUTOFF = 1e-3
Y_SERIES_CUTOFF = 1e-3
MAX_NEWTON_STEPS = 400

DEFAULT_GRID = (-10, 10, Fraction(1, 100))


class DomainError(ValueError):
    pass


class ConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class EvalPoint:
    """A point of the change of variables: x > -1 and v = v(x)."""

    x: object
    v: object

    def __post_init__(self):
        if self.x <= -1:
            raise DomainError(f"x must exceed -1, got {self.x}")


@dataclass(frozen=True)
class BoundWitness:
    C: object
    grid: tuple
    max_ratio: object


def _ctx(ctx):
    return ctx if ctx is not None else PrecisionContext()


def _check_x(x):
    if x <= -1:
        raise DomainError(f"x must exceed -1, got {x}")


def g_eval(x, ctx: PrecisionContext | None = None):
    """g(x) = x - ln(1 + x), free of cancellation near 0."""
    ctx = _ctx(ctx)
    mp = ctx.mp
    x = ctx.mpf(x)
    _check_x(x)
    if x == 0:
        return mp.zero
    ax = abs(x)
    if ax < TINY_X:
        # x^2/2 - x^3/3 + ...; each term is ~8 digits smaller than the last
        total = mp.zero
        power = x * x
        k = 2
        bound = power * ctx.eps
        while abs(power) > bound:
            total += power / k if k % 2 == 0 else -power / k
            power *= x
            k += 1
        return total
    if ax < 0.5:
        # x - log1p(x) cancels about log10(2/|x|) digits; recover them with guard digits
        guarded = ctx.with_guard(int(math.log10(2 / float(ax))) + 5)
        xg = guarded.mpf(x)
        return mp.mpf(xg - guarded.mp.log1p(xg))
    return x - mp.log1p(x)


def G_eval(x, ctx: PrecisionContext | None = None):
    """G(x) = g(x)/x^2 with G(0) = 1/2."""
    ctx = _ctx(ctx)
    mp = ctx.mp
    x = ctx.mpf(x)
    _check_x(x)
    if abs(x) < G_SERIES_CUTOFF:
        # 1/2 - x/3 + x^2/4 - ...
        total = mp.zero
        power = mp.one
        k = 0
        while abs(power) > ctx.eps / 16 or k < 2:
            total += power / (k + 2)
            power *= -x
            k += 1
        return total
    return g_eval(x, ctx) / (x * x)


def v_of_x(x, ctx: PrecisionContext | None = None):
    ctx = _ctx(ctx)
    x = ctx.mpf(x)
    r = ctx.mp.sqrt(g_eval(x, ctx))
    return -r if x < 0 else r


def _newton(h, dh, lo, hi, start, ctx: PrecisionContext):
    """Root of an increasing convex-on-bracket function, Newton with bisection fallback."""
    mp = ctx.mp
    tol = 4 * ctx.eps
    z = start if lo < start < hi else (lo + hi) / 2
    for _ in range(MAX_NEWTON_STEPS):
        hz = h(z)
        if hz == 0:
            return z
        if hz > 0:
            hi = z
        else:
            lo = z
        d = dh(z)
        nz = z - hz / d if d != 0 else mp.inf
        if abs(nz - z) <= tol * abs(z):
            # a step below resolution would otherwise trip the bracket test
            return nz
        if not lo < nz < hi:
            nz = (lo + hi) / 2
        if abs(nz - z) <= tol * abs(nz) or hi - lo <= tol * abs(nz):
            return nz
        z = nz
    raise ConvergenceError(f"root finder did not converge in {MAX_NEWTON_STEPS} steps")


def _inverse(v, ctx: PrecisionContext):
    """Return (f(v), 1 + f(v)), the second kept accurate as f(v) -> -1."""
    mp = ctx.mp
    v = ctx.mpf(v)
    if v == 0:
        return mp.zero, mp.one
    t = v * v
    if v > 0:
        start = v * sqrt2(ctx) + 2 * t / 3 if t < 1 else t + mp.log1p(t)
        x = _newton(
            lambda x: g_eval(x, ctx) - t,
            lambda x: x / (1 + x),
            mp.zero,
            max(4 * t, mp.mpf(4)),
            start,
            ctx,
        )
        return x, 1 + x

    # negative branch in w = -ln(1 + x) > 0, so 1 + x = e^-w never underflows to 0
    def g_of_w(w):
        if w < 0.5:
            return g_eval(mp.expm1(-w), ctx)
        return w + mp.expm1(-w)

    if t < 1:
        start = -mp.log1p(max(v * sqrt2(ctx) + 2 * t / 3, mp.mpf(-0.9)))
    else:
        start = t + 1
    w = _newton(
        lambda w: g_of_w(w) - t,
        lambda w: -mp.expm1(-w),
        mp.zero,
        t + 2,
        start,
        ctx,
    )
    return mp.expm1(-w), mp.exp(-w)


def f_of_v(v, ctx: PrecisionContext | None = None):
    """Inverse of v(x): the x > -1 with sgn(x) sqrt(g(x)) = v.

    For very negative v the true value lies within e^{-v^2} of -1 and rounds to
    -1 once that falls below the working precision; use :func:`one_plus_f`
    when the distance to -1 matters.
    """
    return _inverse(v, _ctx(ctx))[0]


def one_plus_f(v, ctx: PrecisionContext | None = None):
    """1 + f(v), accurate to working precision even where f(v) rounds to -1."""
    return _inverse(v, _ctx(ctx))[1]


def _series_order(ctx: PrecisionContext) -> int:
    # |v| < 1e-3 and |a_n| < 1: truncation after order N is below 10^-(3N+3)
    return max(8, (ctx.digits + 2) // 3 + 1)


def y_of_v(v, ctx: PrecisionContext | None = None):
    """y(v) = v / f(v), with y(0) = sqrt(2)/2."""
    ctx = _ctx(ctx)
    v = ctx.mpf(v)
    if abs(v) < Y_SERIES_CUTOFF:
        n = _series_order(ctx)
        return maclaurin_eval(compute_coefficients(n), v, n, ctx)
    return v / f_of_v(v, ctx)


def fixed_point_residual(v, ctx: PrecisionContext | None = None):
    """|y(v) - sqrt(G(v / y(v)))|, zero for the true solution."""
    ctx = _ctx(ctx)
    mp = ctx.mp
    v = ctx.mpf(v)
    y = y_of_v(v, ctx)
    x = v / y
    if v < -1:
        # x is within e^-(v^2) of -1; take ln(1+x) from the tracked 1 + f(v)
        _, one_plus_x = _inverse(v, ctx)
        G = (x - mp.ln(one_plus_x)) / (x * x)
    else:
        G = G_eval(x, ctx)
    return abs(y - mp.sqrt(G))


def implicit_derivative(v, ctx: PrecisionContext | None = None):
    """d/dy [y - sqrt(G(v/y))] at y = y(v), which equals 1 / (2 (1 + f(v)) y(v)^2)."""
    ctx = _ctx(ctx)
    v = ctx.mpf(v)
    if v == 0:
        # f(0) = 0 and y(0)^2 = 1/2 exactly
        return ctx.mp.one
    _, one_plus_x = _inverse(v, ctx)
    y = y_of_v(v, ctx)
    return 1 / (2 * one_plus_x * y * y)


def make_grid(start, stop, step) -> tuple[Fraction, ...]:
    """Inclusive grid start, start+step, ..., stop in exact rationals."""
    start, stop, step = Fraction(start), Fraction(stop), Fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    count = int((stop - start) / step)
    return tuple(start + i * step for i in range(count + 1))


def bound_constant_search(
    start=DEFAULT_GRID[0],
    stop=DEFAULT_GRID[1],
    step=DEFAULT_GRID[2],
    *,
    points: Iterable | None = None,
    ctx: PrecisionContext | None = None,
) -> BoundWitness:
    """Empirical witness C = max y(v)/(|v|+1) over a grid.

    The grid is ``start..stop`` by ``step`` unless explicit ``points`` are given.
    """
    ctx = _ctx(ctx)
    grid = tuple(points) if points is not None else make_grid(start, stop, step)
    if not grid:
        raise ValueError("grid must be nonempty")
    top = max(bound_ratios(grid, ctx))
    return BoundWitness(C=top, grid=grid, max_ratio=top)


def bound_ratios(points: Iterable, ctx: PrecisionContext | None = None) -> list:
    ctx = _ctx(ctx)
    out = []
    for v in points:
        v = ctx.mpf(v)
        out.append(y_of_v(v, ctx) / (abs(v) + 1))
    return out


def modulus_omega(r, grid_density: int = 100, ctx: PrecisionContext | None = None):
    """Sampled omega(r) = max_{|v|<=r} |y(v) - y(0)| on 2*density+1 points including +-r."""
    ctx = _ctx(ctx)
    mp = ctx.mp
    r = ctx.mpf(r)
    if r <= 0:
        raise ValueError("r must be positive")
    if grid_density < 1:
        raise ValueError("grid_density must be positive")
    y0 = y_of_v(mp.zero, ctx)
    best = mp.zero
    for i in range(-grid_density, grid_density + 1):
        v = r * i / grid_density
        best = max(best, abs(y_of_v(v, ctx) - y0))
    return best
