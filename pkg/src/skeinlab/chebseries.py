"""Chebyshev polynomials T_n, their binomial sums (T+1)_n, the squared-log
coefficients a_n, arccosh^2 series, and the truncated twist element x_c.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .exactnum import TruncBivariate, UniPoly, twist_prefactor

X = UniPoly([0, 1], "X")


class ChebCache:
    """Memoised T_n and (T+1)_n over the integers; extension is locked."""

    def __init__(self):
        self._t = [UniPoly([2], "X"), X]
        self._tp: dict[int, UniPoly] = {}
        self._lock = threading.Lock()

    def T(self, n: int) -> UniPoly:
        if n < 0:
            raise ValueError("Chebyshev index must be >= 0")
        if n >= len(self._t):
            with self._lock:
                while len(self._t) <= n:
                    self._t.append(X * self._t[-1] - self._t[-2])
        return self._t[n]

    def t_plus_one(self, n: int) -> UniPoly:
        if n < 0:
            raise ValueError("index must be >= 0")
        if n not in self._tp:
            acc = UniPoly([], "X")
            for i in range(n + 1):
                acc = acc + self.T(i) * comb(n, i)
            with self._lock:
                self._tp[n] = acc
        return self._tp[n]


_CACHE = ChebCache()


def cheb_T(n: int) -> UniPoly:
    """T_0 = 2, T_1 = X, T_{n+1} = X T_n - T_{n-1}."""
    return _CACHE.T(n)


def t_plus_one(n: int) -> UniPoly:
    """(T+1)_n = sum_i binom(n, i) T_i."""
    return _CACHE.t_plus_one(n)


def a_coefficients(N: int) -> list[Fraction]:
    """[a_2, ..., a_N] where (log(1 - z))^2 = sum a_n z^n."""
    if N < 2:
        raise ValueError("need N >= 2")
    # log(1 - z) = -sum z^k / k; its square has a_n = sum_{i+j=n} 1/(i j)
    return [sum((Fraction(1, i * (n - i)) for i in range(1, n)), Fraction(0)) for n in range(2, N + 1)]


def a_coefficient(n: int) -> Fraction:
    return a_coefficients(n)[-1]


def _arccosh_coefficient(i: int) -> Fraction:
    return Fraction(factorial(i) ** 2, (i + 1) * factorial(2 * i + 1))


SIGN_VARIANTS = ("literal", "corrected", "factor_flip")


def arccosh_sq_series(N: int, sign_variant: str = "corrected") -> TruncBivariate:
    """(arccosh(-c/2))^2 as a power series in w = c + 2, to w-order N.

    ``literal``
        sum_i k_i (1 - c^2/4)^(i+1), the formula as usually quoted with
        k_i = i! i! / ((i+1) (2i+1)!).
    ``factor_flip``
        sum_i k_i (c^2/4 - 1)^(i+1).
    ``corrected``
        -sum_i k_i (c + 2)^(i+1), which is the actual Taylor expansion:
        with -c/2 = cos(theta), arccosh^2 = -theta^2 and
        theta^2 = 4 arcsin^2(sqrt(w)/2) = sum_i k_i w^(i+1).
    """
    if N < 1:
        raise ValueError("need N >= 1")
    if sign_variant not in SIGN_VARIANTS:
        raise ValueError(f"unknown sign variant {sign_variant!r}")
    names = ("u", "w")
    if sign_variant == "corrected":
        return TruncBivariate({(0, i + 1): -_arccosh_coefficient(i) for i in range(N)}, N, "algebra", names)
    w = TruncBivariate.gen(1, N, "algebra", names)
    base = w - w * w * Fraction(1, 4)  # 1 - c^2/4 with c = w - 2
    if sign_variant == "factor_flip":
        base = -base
    return base.compose_unary([0] + [_arccosh_coefficient(i) for i in range(N)])


def log_t_squared(N: int) -> TruncBivariate:
    """sum_{n=2}^{2N+1} a_n (T+1)_n(X) as a w-series (X = w - 2), exact to order N."""
    names = ("u", "w")
    M = 2 * N + 1
    shift = UniPoly([-2, 1], "w")
    acc = UniPoly([], "w")
    for n, a in zip(range(2, M + 1), a_coefficients(M)):
        acc = acc + t_plus_one(n).substitute(shift) * a
    return TruncBivariate({(0, j): c for j, c in acc.to_dict().items()}, N, "algebra", names)


@dataclass(frozen=True)
class TwistElement:
    """x_c truncated at order N, as a series in u = A + 1 and w = l + 2."""

    order: int
    series: TruncBivariate

    def to_json(self) -> dict:
        return {"order": self.order, "series": self.series.to_json()}


def xc_truncated(N: int) -> TwistElement:
    """x_c = (-A + A^-1) / (8 log(-A)) * sum_{n=2}^{2N+1} a_n (T+1)_n(l)."""
    if N < 2:
        raise ValueError("need N >= 2")
    beta = twist_prefactor(N, "algebra", ("u", "w"))
    return TwistElement(N, (beta * log_t_squared(N)).truncate(N))


def summation_bound(N: int) -> int:
    """Index beyond which every (T+1)_n term has w-valuation >= N."""
    return 2 * N + 1


__all__ = [
    "ChebCache", "cheb_T", "t_plus_one", "a_coefficients", "a_coefficient",
    "arccosh_sq_series", "log_t_squared", "TwistElement", "xc_truncated",
    "summation_bound",
]
