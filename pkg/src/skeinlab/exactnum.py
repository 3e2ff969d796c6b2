"""Exact arithmetic: Laurent polynomials in A, dense univariate polynomials,
and truncated bivariate power series in (u, v) with u = A + 1.

Rationals are :class:`fractions.Fraction` (plain ``int`` is accepted wherever a
rational is expected).  Floating point never enters.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

Rational = Union[int, Fraction]

#: returned by :func:`divisibility_order` for the zero polynomial
MAX_ORDER = sys.maxsize


def _rat(x) -> Rational:
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return x
    return Fraction(x)


class LaurentPoly:
    """Immutable element of Q[A, A^-1], stored as ``{exponent: coefficient}``."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Rational] | None = None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                if v:
                    c[int(k)] = _rat(v)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def const(cls, x: Rational) -> "LaurentPoly":
        return cls({0: x}) if x else cls()

    @classmethod
    def monomial(cls, exp: int, coeff: Rational = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        return cls.const(_rat(x))

    # -- inspection -------------------------------------------------------
    def items(self):
        return self._c.items()

    def coeff(self, k: int) -> Rational:
        return self._c.get(k, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def min_degree(self) -> int:
        return min(self._c)

    def max_degree(self) -> int:
        return max(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly()
            return LaurentPoly._raw({k: v * other for k, v in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if len(other._c) == 1:
            (e, x), = other._c.items()
            return LaurentPoly._raw({k + e: v * x for k, v in self._c.items()})
        c: dict = {}
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                k = k1 + k2
                c[k] = c.get(k, 0) + v1 * v2
        return LaurentPoly._raw({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials have negative powers")
            (e, x), = self._c.items()
            return LaurentPoly({e * n: Fraction(1) / Fraction(x) ** (-n)})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by A^k."""
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def scale(self, x: Rational) -> "LaurentPoly":
        return self * _rat(x)

    def bar(self) -> "LaurentPoly":
        """The involution A -> A^-1."""
        return LaurentPoly._raw({-k: v for k, v in self._c.items()})

    def __call__(self, value):
        """Evaluate at a rational (or any ring element supporting ** with ints)."""
        total = 0
        for k, v in self._c.items():
            total = total + v * (Fraction(value) ** k)
        return total

    def divmod_exact(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """Return ``self / other`` if the quotient lies in Q[A, A^-1], else None."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly()
        lo_d = other.min_degree()
        den = [Fraction(other.coeff(lo_d + i)) for i in range(other.max_degree() - lo_d + 1)]
        lo_n = self.min_degree()
        num = [Fraction(self.coeff(lo_n + i)) for i in range(self.max_degree() - lo_n + 1)]
        if len(num) < len(den):
            return None
        q = [Fraction(0)] * (len(num) - len(den) + 1)
        lead = den[-1]
        for i in range(len(q) - 1, -1, -1):
            c = num[i + len(den) - 1] / lead
            q[i] = c
            if c:
                for j, d in enumerate(den):
                    num[i + j] -= c * d
        if any(num):
            return None
        return LaurentPoly({lo_n - lo_d + i: c for i, c in enumerate(q)})

    def __truediv__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        q = self.divmod_exact(LaurentPoly.coerce(other))
        if q is None:
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return q

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k in sorted(self._c, reverse=True):
            v = self._c[k]
            mono = "" if k == 0 else ("A" if k == 1 else f"A^{k}")
            if mono and v == 1:
                parts.append(f"+{mono}")
            elif mono and v == -1:
                parts.append(f"-{mono}")
            else:
                sv = str(v)
                if not sv.startswith("-"):
                    sv = "+" + sv
                parts.append(sv + ("*" + mono if mono else ""))
        s = " ".join(parts)
        return s[1:] if s.startswith("+") else s

    def to_json(self) -> list:
        return [[k, str(self._c[k])] for k in sorted(self._c)]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls({int(k): Fraction(v) for k, v in data})


A = LaurentPoly.monomial(1)
A_INV = LaurentPoly.monomial(-1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()
#: value of a contractible loop
DELTA = LaurentPoly({2: -1, -2: -1})


def laurent_eval_at_minus_one(f: LaurentPoly) -> Rational:
    total = 0
    for k, v in f.items():
        total += -v if k % 2 else v
    return total


def divisibility_order(f: LaurentPoly, g: LaurentPoly) -> int:
    """Largest k with f in g^k Q[A, A^-1]; MAX_ORDER when f == 0."""
    if g.is_zero():
        raise ZeroDivisionError("divisibility by the zero polynomial")
    if f.is_zero():
        return MAX_ORDER
    if len(g._c) == 1:
        # units divide everything; no finite answer
        return MAX_ORDER
    k = 0
    while True:
        q = f.divmod_exact(g)
        if q is None:
            return k
        f = q
        k += 1


class UniPoly:
    """Dense univariate (Laurent) polynomial with ring-valued coefficients.

    ``coeffs[i]`` is the coefficient of ``var**(low + i)``.  ``low`` may be
    negative, which gives Laurent polynomials in the variable.
    """

    __slots__ = ("coeffs", "low", "var")

    def __init__(self, coeffs: Iterable, var: str = "X", low: int = 0):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        while cs and not cs[0]:
            cs.pop(0)
            low += 1
        self.coeffs = tuple(cs)
        self.low = low if cs else 0
        self.var = var

    @classmethod
    def from_dict(cls, d: Mapping[int, object], var: str = "X") -> "UniPoly":
        d = {k: v for k, v in d.items() if v}
        if not d:
            return cls([], var)
        lo, hi = min(d), max(d)
        return cls([d.get(i, 0) for i in range(lo, hi + 1)], var, lo)

    def degree(self) -> int:
        return self.low + len(self.coeffs) - 1 if self.coeffs else -1

    def coeff(self, k: int):
        i = k - self.low
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def to_dict(self) -> dict:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c}

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            other = UniPoly([other], self.var)
        return self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(tuple(sorted(self.to_dict().items())))

    def __add__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            other = UniPoly([other], self.var)
        d = self.to_dict()
        for k, v in other.to_dict().items():
            d[k] = d[k] + v if k in d else v
        return UniPoly.from_dict(d, self.var)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs], self.var, self.low)

    def __sub__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            other = UniPoly([other], self.var)
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs], self.var, self.low)
        if not self.coeffs or not other.coeffs:
            return UniPoly([], self.var)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.var, self.low + other.low)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        result = UniPoly([1], self.var)
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, x):
        """Horner evaluation at a ring element (requires low >= 0)."""
        if self.low < 0:
            raise ValueError("cannot evaluate a Laurent polynomial with negative exponents")
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        for _ in range(self.low):
            acc = acc * x
        return acc

    def substitute(self, poly: "UniPoly") -> "UniPoly":
        """Composition self(poly)."""
        if self.low < 0:
            raise ValueError("cannot compose a Laurent polynomial")
        acc = UniPoly([], poly.var)
        for c in reversed(self.coeffs):
            acc = acc * poly + UniPoly([c], poly.var)
        for _ in range(self.low):
            acc = acc * poly
        return acc

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Euclidean division over a field of rationals (ordinary polynomials)."""
        if self.low < 0 or other.low < 0:
            raise ValueError("divmod needs ordinary polynomials")
        num = [Fraction(self.coeff(k)) for k in range(self.degree() + 1)]
        den = [Fraction(other.coeff(k)) for k in range(other.degree() + 1)]
        if not den:
            raise ZeroDivisionError
        q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
        for i in range(len(q) - 1, -1, -1):
            c = num[i + len(den) - 1] / den[-1]
            q[i] = c
            for j, d in enumerate(den):
                num[i + j] -= c * d
        return UniPoly(q, self.var), UniPoly(num, self.var)

    def __repr__(self) -> str:
        terms = [f"({c})*{self.var}^{k}" for k, c in sorted(self.to_dict().items())]
        return "UniPoly(" + (" + ".join(terms) or "0") + ")"


class TruncBivariate:
    """Truncated power series in (u, v) with rational coefficients.

    ``mode`` fixes the grading used for truncation and valuation:

    * ``"algebra"``: grade(i, j) = i + j
    * ``"strand"``:  grade(i, j) = i + j // 2

    Only monomials of grade < ``cap`` are stored.  Both gradings are
    superadditive, so the set of dropped monomials is an ideal and all ring
    operations are well defined modulo it.  Binary operations take the
    smaller cap and refuse to mix modes.
    """

    __slots__ = ("_c", "cap", "mode", "names")

    MODES = ("algebra", "strand")

    def __init__(self, coeffs: Mapping[tuple[int, int], Rational] | None, cap: int,
                 mode: str = "algebra", names: tuple[str, str] = ("u", "w")):
        if cap < 1:
            raise ValueError("truncation order must be >= 1")
        if mode not in self.MODES:
            raise ValueError(f"unknown grading mode {mode!r}")
        self.cap = cap
        self.mode = mode
        self.names = names
        g = self.grade
        self._c = {}
        if coeffs:
            for (i, j), v in coeffs.items():
                if i < 0 or j < 0:
                    raise ValueError("negative exponent in power series")
                if v and g(i, j) < cap:
                    self._c[(i, j)] = _rat(v)

    def grade(self, i: int, j: int) -> int:
        return i + j if self.mode == "algebra" else i + j // 2

    def _like(self, c: dict, cap: int | None = None) -> "TruncBivariate":
        return TruncBivariate(c, self.cap if cap is None else cap, self.mode, self.names)

    def _check(self, other: "TruncBivariate") -> int:
        if other.mode != self.mode:
            raise ValueError("cannot combine series with different gradings")
        return min(self.cap, other.cap)

    @classmethod
    def constant(cls, x: Rational, cap: int, mode: str = "algebra", names=("u", "w")):
        return cls({(0, 0): x}, cap, mode, names)

    @classmethod
    def gen(cls, which: int, cap: int, mode: str = "algebra", names=("u", "w")):
        """The generator u (which=0) or v (which=1)."""
        return cls({(1, 0) if which == 0 else (0, 1): 1}, cap, mode, names)

    def items(self):
        return self._c.items()

    def coeff(self, i: int, j: int) -> Rational:
        return self._c.get((i, j), 0)

    def is_zero(self) -> bool:
        return not self._c

    def valuation(self) -> int | None:
        """Smallest grade of a stored monomial; None means 'at least cap'."""
        if not self._c:
            return None
        return min(self.grade(i, j) for i, j in self._c)

    def truncate(self, cap: int) -> "TruncBivariate":
        return self._like(self._c, min(cap, self.cap))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncBivariate):
            return NotImplemented
        cap = min(self.cap, other.cap)
        return (self.mode == other.mode
                and self.truncate(cap)._c == other.truncate(cap)._c)

    def __add__(self, other) -> "TruncBivariate":
        if isinstance(other, (int, Fraction)):
            other = TruncBivariate.constant(other, self.cap, self.mode, self.names)
        cap = self._check(other)
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return self._like(c, cap)

    __radd__ = __add__

    def __neg__(self) -> "TruncBivariate":
        return self._like({k: -v for k, v in self._c.items()})

    def __sub__(self, other) -> "TruncBivariate":
        if isinstance(other, (int, Fraction)):
            other = TruncBivariate.constant(other, self.cap, self.mode, self.names)
        return self + (-other)

    def __rsub__(self, other) -> "TruncBivariate":
        return (-self) + other

    def __mul__(self, other) -> "TruncBivariate":
        if isinstance(other, (int, Fraction)):
            return self._like({k: v * other for k, v in self._c.items()})
        if not isinstance(other, TruncBivariate):
            return NotImplemented
        cap = self._check(other)
        g = self.grade
        c: dict = {}
        for (i1, j1), v1 in self._c.items():
            for (i2, j2), v2 in other._c.items():
                i, j = i1 + i2, j1 + j2
                if g(i, j) < cap:
                    c[(i, j)] = c.get((i, j), 0) + v1 * v2
        return self._like(c, cap)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TruncBivariate":
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncBivariate.constant(1, self.cap, self.mode, self.names)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _nilpotency_bound(self) -> int:
        # a series without constant term raised to this power vanishes under the cap
        return 2 * self.cap + 1

    def inverse(self) -> "TruncBivariate":
        c0 = self.coeff(0, 0)
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not a unit")
        c0 = Fraction(c0)
        y = self._like({k: v / c0 for k, v in self._c.items() if k != (0, 0)})
        # 1/(1+y) = sum (-y)^k
        term = TruncBivariate.constant(1, self.cap, self.mode, self.names)
        total = term
        for _ in range(self._nilpotency_bound()):
            term = term * (-y)
            if term.is_zero():
                break
            total = total + term
        return total * (1 / c0)

    def compose_unary(self, coeffs: Iterable[Rational]) -> "TruncBivariate":
        """Evaluate sum coeffs[k] * self^k for a series without constant term."""
        if self.coeff(0, 0):
            raise ValueError("substitution needs a series without constant term")
        acc = TruncBivariate({}, self.cap, self.mode, self.names)
        power = TruncBivariate.constant(1, self.cap, self.mode, self.names)
        for k, a in enumerate(coeffs):
            if k:
                power = power * self
                if power.is_zero():
                    break
            if a:
                acc = acc + power * a
        return acc

    def exp(self) -> "TruncBivariate":
        coeffs = []
        f = Fraction(1)
        for k in range(self._nilpotency_bound() + 1):
            if k:
                f /= k
            coeffs.append(f)
        return self.compose_unary(coeffs)

    def __repr__(self) -> str:
        u, v = self.names
        terms = [f"{c}*{u}^{i}{v}^{j}" for (i, j), c in sorted(self._c.items())]
        return f"TruncBivariate[{self.mode}, cap={self.cap}](" + (" + ".join(terms) or "0") + ")"

    def to_json(self) -> list:
        return [[i, j, str(self._c[(i, j)])] for (i, j) in sorted(self._c)]


def series_divide(num: TruncBivariate, den: TruncBivariate) -> TruncBivariate:
    """Quotient q with q * den == num modulo the cap.

    ``den`` is either a unit, or ``u^a v^b`` times a unit with ``num`` divisible
    by the same monomial.  Cancelling the monomial lowers the reliable order,
    so the result's cap shrinks by the monomial's grade (plus one when ``b`` is
    odd in strand mode, where floor-halving can hide a unit of grade).
    """
    cap = num._check(den)
    if den.coeff(0, 0):
        return (num * den.inverse()).truncate(cap)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero series")
    a = min(i for i, _ in den._c)
    b = min(j for i, j in den._c if i == a)
    if any(i < a or j < b for i, j in den._c):
        raise ArithmeticError("denominator is not a monomial times a unit")
    if any(i < a or j < b for i, j in num._c):
        raise ArithmeticError("numerator not divisible by the denominator's monomial factor")
    loss = den.grade(a, b) + (1 if den.mode == "strand" and b % 2 else 0)
    new_cap = cap - loss
    if new_cap < 1:
        raise ArithmeticError("truncation order too small for this division")
    n2 = TruncBivariate({(i - a, j - b): v for (i, j), v in num._c.items()}, cap, num.mode, num.names)
    d2 = TruncBivariate({(i - a, j - b): v for (i, j), v in den._c.items()}, cap, den.mode, den.names)
    return (n2.truncate(new_cap) * d2.truncate(new_cap).inverse()).truncate(new_cap)


# ---------------------------------------------------------------------------
# coordinate expansions

def _a_powers(cap: int, mode: str, names) -> Callable[[int], TruncBivariate]:
    """Memoised powers of A = -1 + u as series."""
    base = TruncBivariate({(0, 0): -1, (1, 0): 1}, cap, mode, names)
    cache = {0: TruncBivariate.constant(1, cap, mode, names), 1: base}
    inv = None

    def power(k: int) -> TruncBivariate:
        nonlocal inv
        if k in cache:
            return cache[k]
        if k < 0:
            if inv is None:
                inv = base.inverse()
                cache[-1] = inv
            step = inv
            nearest = max((e for e in cache if k <= e <= 0), default=0)
            val = cache[nearest]
            for e in range(nearest - 1, k - 1, -1):
                val = val * step
                cache[e] = val
        else:
            nearest = max(e for e in cache if 0 <= e <= k)
            val = cache[nearest]
            for e in range(nearest + 1, k + 1):
                val = val * base
                cache[e] = val
        return cache[k]

    return power


def _v_shift_powers(cap: int, mode: str, names, shift: int) -> Callable[[int], TruncBivariate]:
    """Memoised powers of (v + shift); shift must be a nonzero constant for negative powers."""
    base = TruncBivariate({(0, 0): shift, (0, 1): 1}, cap, mode, names)
    cache = {0: TruncBivariate.constant(1, cap, mode, names)}
    inv = None

    def power(k: int) -> TruncBivariate:
        nonlocal inv
        if k in cache:
            return cache[k]
        if k > 0:
            cache[k] = power(k - 1) * base
        else:
            if inv is None:
                inv = base.inverse()
            cache[k] = power(k + 1) * inv
        return cache[k]

    return power


def expand_laurent(f: LaurentPoly, cap: int, mode: str = "algebra", names=("u", "w")) -> TruncBivariate:
    """Image of f under A = -1 + u."""
    apow = _a_powers(cap, mode, names)
    acc = TruncBivariate({}, cap, mode, names)
    for k, c in f.items():
        acc = acc + apow(k) * c
    return acc


def expand_strand(f: Mapping[tuple[int, int], Rational], N: int, a_shift: int = 1) -> TruncBivariate:
    """Expand a Laurent polynomial in A and r into strand-graded (u, s) series.

    ``f`` maps ``(A-exponent, r-exponent)`` to coefficients.  The substitution
    is A = -1 + u and r = A^(-a_shift) (s - 1), i.e. s = A^a_shift r + 1.
    """
    if N < 1:
        raise ValueError("order cap must be >= 1")
    names = ("u", "s")
    apow = _a_powers(N, "strand", names)
    spow = _v_shift_powers(N, "strand", names, -1)
    acc = TruncBivariate({}, N, "strand", names)
    for (a, b), c in f.items():
        if c:
            acc = acc + apow(a - a_shift * b) * spow(b) * c
    return acc


def expand_algebra(f: Mapping[int, LaurentPoly], N: int) -> TruncBivariate:
    """Expand sum_j f[j](A) l^j under A = -1 + u, l = w - 2 (total-degree grading)."""
    if N < 1:
        raise ValueError("order cap must be >= 1")
    names = ("u", "w")
    apow = _a_powers(N, "algebra", names)
    lpow = _v_shift_powers(N, "algebra", names, -2)
    acc = TruncBivariate({}, N, "algebra", names)
    for j, coeff in f.items():
        part = TruncBivariate({}, N, "algebra", names)
        for k, c in coeff.items():
            part = part + apow(k) * c
        acc = acc + part * lpow(j)
    return acc


def log_minus_a(cap: int, mode: str = "algebra", names=("u", "w")) -> TruncBivariate:
    """log(-A) = log(1 - u) = -sum u^i / i."""
    return TruncBivariate({(i, 0): Fraction(-1, i) for i in range(1, cap + 1)}, cap, mode, names)


def twist_prefactor(cap: int, mode: str = "algebra", names=("u", "w"), denominator: int = 8) -> TruncBivariate:
    """(-A + A^-1) / (denominator * log(-A)) as a series in u, exact to ``cap``."""
    work = cap + 1
    num = expand_laurent(LaurentPoly({1: -1, -1: 1}), work, mode, names)
    den = log_minus_a(work, mode, names) * denominator
    return series_divide(num, den).truncate(cap)

