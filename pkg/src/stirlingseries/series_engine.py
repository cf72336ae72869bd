"""Exact MacLaurin coefficients of y(v) and the Stirling series built from them.

The coefficients a_n of y(v) = v / f(v) follow from the ODE

    v y' = y - 2 y^2 - 2 v y^2,

whose v^n coefficient gives

    a_n = -2/(n+2) * [ sum_{k+j+l=n; k,j,l<n} a_k a_j a_l + sum_{k+j=n-1} a_k a_j ],

seeded with a_0 = sqrt(2)/2.  The Stirling coefficients are then

    c_k = 2 a_{2k} Gamma(k + 1/2) / sqrt(2 pi) = 2 q_{2k} (2k)! / (4^k k!),

where a_{2k} = q_{2k} sqrt(2).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactfield import QSqrt2, qsqrt2_to_decimal
from .precision import PrecisionContext

A0 = QSqrt2(0, Fraction(1, 2))


class ParityError(ArithmeticError):
    """An even-index coefficient has a rational part (or odd-index a sqrt(2) part)."""

    def __init__(self, index: int, value: QSqrt2):
        self.index = index
        self.value = value
        super().__init__(f"parity violated at a_{index} = {value}")


@dataclass(frozen=True)
class CoeffTable:
    coeffs: tuple[QSqrt2, ...]

    @property
    def max_index(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> QSqrt2:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def parity_violations(self) -> list[int]:
        """Indices where a_{2k} is not a pure sqrt(2) multiple or a_{2k+1} is not rational."""
        return [
            n
            for n, a in enumerate(self.coeffs)
            if (n % 2 == 0 and a.p != 0) or (n % 2 == 1 and a.q != 0)
        ]

    def prefix(self, m: int) -> CoeffTable:
        if m > self.max_index:
            raise ValueError(f"prefix length {m} exceeds table max index {self.max_index}")
        return CoeffTable(self.coeffs[: m + 1])


@dataclass(frozen=True)
class StirlingSeries:
    """Exact c_0..c_N with Gamma(s+1) ~ (s/e)^s sqrt(2 pi s) sum_k c_k s^-k."""

    coeffs: tuple[Fraction, ...]

    @property
    def max_index(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)


class _Recurrence:
    """Grows the coefficient list on demand and never recomputes a prefix.

    ``squares[m]`` caches the full Cauchy square sum_{j+l=m} a_j a_l, so each new
    coefficient costs O(n) field multiplications.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self.coeffs: list[QSqrt2] = [A0]
        self.squares: list[QSqrt2] = [A0 * A0]

    def extend_to(self, n_max: int) -> tuple[QSqrt2, ...]:
        with self._lock:
            a, sq = self.coeffs, self.squares
            for n in range(len(a), n_max + 1):
                # square restricted to indices 1..n-1 (the a_0 * a_n pair is unknown)
                inner = QSqrt2()
                for j in range(1, n):
                    inner += a[j] * a[n - j]
                triple = a[0] * inner
                for k in range(1, n):
                    triple += a[k] * sq[n - k]
                an = (triple + sq[n - 1]) * Fraction(-2, n + 2)
                a.append(an)
                sq.append(inner + 2 * a[0] * an)
            return tuple(a[: n_max + 1])


_RECURRENCE = _Recurrence()


def compute_coefficients(n_max: int) -> CoeffTable:
    """Exact a_0..a_{n_max} of the MacLaurin series of y(v)."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    return CoeffTable(_RECURRENCE.extend_to(n_max))


def gamma_half_integer_ratio(k: int) -> Fraction:
    """Gamma(k + 1/2) / Gamma(1/2) = (2k)! / (4^k k!)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return Fraction(math.factorial(2 * k), 4**k * math.factorial(k))


def stirling_coefficients(table: CoeffTable) -> StirlingSeries:
    out = []
    for k in range(table.max_index // 2 + 1):
        a = table[2 * k]
        if a.p != 0:
            raise ParityError(2 * k, a)
        out.append(2 * a.q * gamma_half_integer_ratio(k))
    return StirlingSeries(tuple(out))


@lru_cache(maxsize=64)
def _float_coeffs(table: CoeffTable, n: int, ctx: PrecisionContext):
    return tuple(qsqrt2_to_decimal(table[k], ctx) for k in range(n + 1))


def maclaurin_eval(table: CoeffTable, v, n: int, ctx: PrecisionContext | None = None):
    """Horner evaluation of sum_{k<=n} a_k v^k at the precision of ``ctx``."""
    ctx = ctx or PrecisionContext()
    if n > table.max_index:
        raise ValueError(f"order {n} exceeds table max index {table.max_index}")
    v = ctx.mpf(v)
    acc = ctx.mp.zero
    for c in reversed(_float_coeffs(table, n, ctx)):
        acc = acc * v + c
    return acc
