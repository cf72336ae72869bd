"""Verification suites driven by ``stirling verify``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactfield import qsqrt2_to_decimal
from .known_values import KNOWN_A, KNOWN_C
from .precision import PrecisionContext, sqrt_2pi
from .precision_oracle import method1_coefficient, stirling_from_bernoulli
from .quadrature import (
    laplace_identity_residual,
    limit_check_e9,
    substituted_identity_residual,
)
from .series_engine import compute_coefficients, stirling_coefficients

IDENTITY_S = (1, 2, 5, 10, 20)
IDENTITY_TOL = Fraction(1, 10**10)
LIMIT_S = (1, 10, 100, 1000)
LIMIT_BAND = 0.15
METHOD1_DIGITS = 120
METHOD1_MIN_DIGITS = 8
SUITES = ("identities", "oracles", "limits")


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    tolerance: str
    measured: str


def _sci(x) -> str:
    return format(float(x), ".3e")


def identities(ctx: PrecisionContext) -> list[Check]:
    mp = ctx.mp
    tol = ctx.mpf(IDENTITY_TOL)
    out = []
    for s in IDENTITY_S:
        r1, res1 = laplace_identity_residual(s, ctx)
        r5, res5 = substituted_identity_residual(s, ctx)
        # both integrals scaled to Gamma(s+1)/((s/e)^s sqrt s)
        lhs1 = res1.value * mp.sqrt(ctx.mpf(s))
        cross = abs(lhs1 - res5.value) / abs(res5.value)
        out.append(Check(f"laplace identity s={s}", r1 <= tol, f"<= {_sci(tol)}", _sci(r1)))
        out.append(Check(f"substituted identity s={s}", r5 <= tol, f"<= {_sci(tol)}", _sci(r5)))
        out.append(Check(f"laplace vs substituted s={s}", cross <= tol, f"<= {_sci(tol)}", _sci(cross)))
    return out


def oracles(ctx: PrecisionContext) -> list[Check]:
    table = compute_coefficients(20)
    rendered = [str(a) for a in table]
    mismatches = [n for n, (got, want) in enumerate(zip(rendered, KNOWN_A)) if got != want]
    out = [
        Check(
            "a_0..a_20 == published table",
            not mismatches,
            "exact",
            "EXACT MATCH" if not mismatches else f"mismatch at {mismatches}",
        )
    ]
    series = stirling_coefficients(table)
    ok = tuple(series.coeffs) == KNOWN_C
    out.append(Check("c_0..c_10 == published series", ok, "exact", "EXACT MATCH" if ok else "MISMATCH"))
    bern = stirling_from_bernoulli(10)
    ok = bern.coeffs == series.coeffs
    out.append(
        Check(
            "stirling_from_bernoulli == stirling_coefficients (k<=10)",
            ok,
            "exact",
            "EXACT MATCH" if ok else "MISMATCH",
        )
    )
    mctx = PrecisionContext(max(ctx.digits, METHOD1_DIGITS))
    full = compute_coefficients(9)
    for n in range(1, 9):
        est = method1_coefficient(n, full.coeffs[:n], mctx, strict=False)
        exact = qsqrt2_to_decimal(full[n], mctx)
        rel = abs(est.value - exact) / abs(exact)
        tol = mctx.mpf(10) ** -METHOD1_MIN_DIGITS
        out.append(Check(f"method I a_{n}", rel <= tol, f"rel <= {_sci(tol)}", _sci(rel)))
    bad = list(full.coeffs[:8])
    bad[7] = bad[7] + Fraction(1, 10**6)
    est = method1_coefficient(8, bad, mctx, strict=False)
    out.append(
        Check(
            "method I flags perturbed prefix",
            est.stabilized_digits < 4,
            "stabilized digits < 4",
            str(est.stabilized_digits),
        )
    )
    return out


def limits(ctx: PrecisionContext) -> list[Check]:
    rows = limit_check_e9(LIMIT_S, ctx)
    devs = [d for _, _, d in rows]
    decreasing = all(b < a for a, b in zip(devs, devs[1:]))
    out = [
        Check(
            "limit deviations strictly decreasing s=" + ",".join(map(str, LIMIT_S)),
            decreasing,
            "strict decrease",
            " > ".join(_sci(d) for d in devs),
        )
    ]
    predicted = sqrt_2pi(ctx) / 12
    s_last = rows[-1][0]
    ratio = devs[-1] * s_last / predicted
    out.append(
        Check(
            f"deviation*s at s={s_last} vs sqrt(2 pi)/12",
            abs(ratio - 1) <= LIMIT_BAND,
            f"within {LIMIT_BAND:.0%}",
            f"ratio {float(ratio):.6f}",
        )
    )
    return out


def run_suite(suite: str, ctx: PrecisionContext) -> list[Check]:
    if suite == "all":
        return [c for name in SUITES for c in run_suite(name, ctx)]
    runners = {"identities": identities, "oracles": oracles, "limits": limits}
    if suite not in runners:
        raise ValueError(f"unknown suite {suite!r}")
    return runners[suite](ctx)
