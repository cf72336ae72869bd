import threading

import mpmath
import pytest

from stirlingseries.precision import PrecisionContext, default_context, pi, sqrt2, sqrt_2pi


def test_minimum_digits():
    with pytest.raises(ValueError):
        PrecisionContext(15)
    with pytest.raises(ValueError):
        PrecisionContext(20.0)


@pytest.mark.parametrize("digits", [16, 40, 64, 150])
def test_constants_match_mpmath(digits):
    ctx = PrecisionContext(digits)
    with mpmath.workdps(digits + 30):
        tol = mpmath.mpf(10) ** (-(digits - 1))
        assert abs(pi(ctx) - mpmath.pi) <= tol * mpmath.pi
        assert abs(sqrt2(ctx) - mpmath.sqrt(2)) <= tol * 2
        assert abs(sqrt_2pi(ctx) - mpmath.sqrt(2 * mpmath.pi)) <= tol * 3


def test_sqrt_2pi_leading_digits():
    ctx = PrecisionContext(30)
    assert ctx.nstr(sqrt_2pi(ctx), 18) == "2.50662827463100050"


def test_env_override(monkeypatch):
    monkeypatch.setenv("STIRLING_DIGITS", "33")
    assert default_context().digits == 33
    monkeypatch.delenv("STIRLING_DIGITS")
    assert default_context().digits == 64


def test_contexts_do_not_touch_global_mpmath():
    before = mpmath.mp.dps
    ctx = PrecisionContext(90)
    ctx.mp.sqrt(2)
    assert mpmath.mp.dps == before


def test_parallel_contexts_are_independent():
    results = {}

    def work(d):
        ctx = PrecisionContext(d)
        results[d] = ctx.nstr(ctx.mp.sqrt(ctx.mpf(2)), d)

    threads = [threading.Thread(target=work, args=(d,)) for d in (20, 40, 80)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for d, text in results.items():
        assert len(text.replace(".", "")) == d
