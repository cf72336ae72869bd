import decimal
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stirlingseries.exactfield import QSqrt2, format_rational, qsqrt2_arith, qsqrt2_to_decimal
from stirlingseries.precision import PrecisionContext

HALF_ROOT2 = QSqrt2(0, Fraction(1, 2))

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=60)
elements = st.builds(QSqrt2, fractions, fractions)
nonzero = elements.filter(lambda a: not a.is_zero())


def test_examples():
    assert qsqrt2_arith(HALF_ROOT2, HALF_ROOT2, "mul") == QSqrt2(Fraction(1, 2), 0)
    assert qsqrt2_arith(HALF_ROOT2, QSqrt2(Fraction(-1, 3)), "mul") == QSqrt2(0, Fraction(-1, 6))
    one_plus = QSqrt2(1, 1)
    assert qsqrt2_arith(one_plus, one_plus, "div") == QSqrt2(1, 0)
    assert qsqrt2_arith(one_plus, HALF_ROOT2, "add") == QSqrt2(1, Fraction(3, 2))
    assert qsqrt2_arith(one_plus, HALF_ROOT2, "sub") == QSqrt2(1, Fraction(1, 2))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        qsqrt2_arith(QSqrt2(1, 1), QSqrt2(), "div")


def test_unknown_op():
    with pytest.raises(ValueError):
        qsqrt2_arith(QSqrt2(1), QSqrt2(1), "pow")


def test_rejects_floats():
    with pytest.raises(TypeError):
        QSqrt2(0.5, 0)


def test_stored_reduced():
    a = QSqrt2(Fraction(2, 4), Fraction(-6, -9))
    assert (a.p.numerator, a.p.denominator) == (1, 2)
    assert (a.q.numerator, a.q.denominator) == (2, 3)


@pytest.mark.parametrize(
    "value, text",
    [
        (QSqrt2(Fraction(-1, 3)), "-1/3"),
        (QSqrt2(0, Fraction(-139, 194400)), "-139/194400*sqrt(2)"),
        (QSqrt2(0, Fraction(1, 2)), "1/2*sqrt(2)"),
        (QSqrt2(0, 1), "1*sqrt(2)"),
        (QSqrt2(), "0"),
        (QSqrt2(5), "5"),
        (QSqrt2(1, Fraction(-1, 3)), "1 - 1/3*sqrt(2)"),
        (QSqrt2(Fraction(-2, 7), 3), "-2/7 + 3*sqrt(2)"),
    ],
)
def test_rendering(value, text):
    assert str(value) == text
    assert QSqrt2.parse(text) == value


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        QSqrt2.parse("sqrt(2)/2")


def test_format_rational():
    assert format_rational(Fraction(6, -4)) == "-3/2"
    assert format_rational(Fraction(4, 2)) == "2"


@given(elements, elements, elements)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == QSqrt2()


@given(elements, nonzero)
def test_division_inverts_multiplication(a, b):
    assert (a / b) * b == a


@given(elements)
def test_canonical_rendering_idempotent(a):
    once = QSqrt2.parse(str(a))
    assert once == a
    assert str(QSqrt2.parse(str(once))) == str(once)


@given(nonzero)
def test_norm_nonzero(a):
    assert a.norm() != 0


def test_to_decimal_half_root2_30_digits():
    # independent route: integer square root at scaled precision, rounded by decimal
    digits = 30
    scaled = math.isqrt(2 * 10 ** (2 * (digits + 20)))
    with decimal.localcontext() as dctx:
        dctx.prec = digits
        expected = +(decimal.Decimal(scaled).scaleb(-(digits + 20)) / 2)
    ctx = PrecisionContext(30)
    got = ctx.nstr(qsqrt2_to_decimal(HALF_ROOT2, ctx), 30)
    assert got == str(expected) == "0.707106781186547524400844362105"


def test_to_decimal_trivial():
    ctx = PrecisionContext(40)
    assert qsqrt2_to_decimal(QSqrt2(Fraction(1, 12)), ctx) == ctx.mp.mpf(1) / 12
    assert qsqrt2_to_decimal(QSqrt2(), ctx) == 0


def _ulp_error(a: QSqrt2, ctx: PrecisionContext) -> float:
    got = qsqrt2_to_decimal(a, ctx)
    with mpmath.workdps(ctx.digits * 3 + 50):
        exact = mpmath.mpf(a.p.numerator) / a.p.denominator + (
            mpmath.mpf(a.q.numerator) / a.q.denominator
        ) * mpmath.sqrt(2)
        if exact == 0:
            return 0.0
        ulp = mpmath.mpf(2) ** (mpmath.floor(mpmath.log(abs(exact), 2)) - ctx.mp.prec + 1)
        return float(abs(mpmath.mpf(got) - exact) / ulp)


@pytest.mark.parametrize(
    "a",
    [
        QSqrt2(99, -70),  # 99 - 70 sqrt 2 ~ 0.00505, heavy cancellation
        QSqrt2(3363, -2378),
        QSqrt2(Fraction(1, 7), Fraction(-3, 11)),
        QSqrt2(0, Fraction(6232523202521089, 110618531624233259827200000)),
    ],
)
@pytest.mark.parametrize("digits", [16, 30, 64])
def test_to_decimal_within_one_ulp(a, digits):
    assert _ulp_error(a, PrecisionContext(digits)) <= 1.0


@settings(max_examples=40, deadline=None)
@given(elements, st.integers(min_value=16, max_value=60))
def test_to_decimal_precision_consistency(a, p):
    lo = qsqrt2_to_decimal(a, PrecisionContext(p))
    hi = qsqrt2_to_decimal(a, PrecisionContext(p + 10))
    if hi == 0:
        assert lo == 0
        return
    assert abs(lo - hi) <= abs(hi) * mpmath.mpf(10) ** (-(p - 2))


@settings(max_examples=40, deadline=None)
@given(elements)
def test_to_decimal_random_within_one_ulp(a):
    assert _ulp_error(a, PrecisionContext(20)) <= 1.0
