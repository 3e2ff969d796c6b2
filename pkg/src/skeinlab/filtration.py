"""The augmentation, the filtration by powers of its kernel, and valuations.

Two exact membership oracles are provided.

* Closed annulus elements live in Q[A, A^-1][l].  The kernel of the
  augmentation (A -> -1, l -> -2) is the ideal (A + 1, l + 2), and A is a
  unit, so after the substitution A = -1 + u, l = w - 2 membership in the
  n-th power is decided monomial by monomial in the total degree of (u, w).
* One-strand elements are Laurent polynomials in A and r.  The left action
  of l is multiplication by q + 1/q with q = A^k r (k = +-1 fixed by the
  smoothing convention), so l + 2 acts as a unit times s^2 where s = q + 1.
  The n-th filtration piece is then (u, s^2)^n, and the valuation is the
  least u^i s^j grade i + floor(j / 2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .atlcalc import ATLElement, StrandElement, wrap_left
from .conventions import DEFAULT_PROFILE, Profile
from .diagram import MorseWord, WordValidationError, components, delete_components
from .exactnum import (MAX_ORDER, LaurentPoly, divisibility_order, expand_algebra, expand_strand,
                       laurent_eval_at_minus_one)
from .tlcalc import bracket

A_PLUS_ONE = LaurentPoly({1: 1, 0: 1})


@dataclass(frozen=True)
class ValuationReport:
    """Valuation of an element; ``valuation`` is None when it is at least ``cap``."""

    element: str
    valuation: int | None
    mode: str
    cap: int

    @property
    def at_least_cap(self) -> bool:
        return self.valuation is None

    def at_least(self, n: int) -> bool:
        if n > self.cap:
            raise ValueError(f"cannot decide grade {n} with cap {self.cap}")
        return self.valuation is None or self.valuation >= n

    def to_json(self) -> dict:
        return {
            "element": self.element,
            "valuation": self.valuation if self.valuation is not None else f">={self.cap}",
            "mode": self.mode,
            "cap": self.cap,
        }


def epsilon(x: ATLElement) -> Fraction:
    """Augmentation: A -> -1 and each essential loop -> -2."""
    if not x.is_closed:
        raise ValueError("epsilon is defined on closed elements only")
    total = Fraction(0)
    for j, c in x.loop_coefficients().items():
        total += laurent_eval_at_minus_one(c) * (-2) ** j
    return total


def valuation_algebra(x: ATLElement, cap: int) -> ValuationReport:
    if not x.is_closed:
        raise ValueError("valuation_algebra needs a closed element")
    series = expand_algebra(x.loop_coefficients(), cap)
    return ValuationReport(repr(x), series.valuation(), "algebra", cap)


@lru_cache(maxsize=None)
def left_wrap_shift(profile: Profile = DEFAULT_PROFILE) -> int:
    """k with wrap_left(l, r^0) = A^k r + A^-k r^-1 under ``profile``."""
    w = StrandElement.from_atl(wrap_left(ATLElement.from_loop_poly({1: 1}), ATLElement.identity(1), profile))
    for k in (1, -1):
        if w == StrandElement({(k, 1): 1, (-k, -1): 1}):
            return k
    raise AssertionError(f"unexpected left wrap {w!r}")


def strand_series(v: StrandElement, cap: int, profile: Profile = DEFAULT_PROFILE):
    return expand_strand(v.terms, cap, left_wrap_shift(profile))


def valuation_strand(v: StrandElement, cap: int, profile: Profile = DEFAULT_PROFILE) -> ValuationReport:
    return ValuationReport(repr(v), strand_series(v, cap, profile).valuation(), "strand", cap)


# -- sublink sums ----------------------------------------------------------------

def _check_marked(word: MorseWord, marked: Sequence[int]) -> list[int]:
    cmap = components(word)
    marked = sorted(set(marked))
    for c in marked:
        if not 0 <= c < len(cmap) or not cmap.components[c].closed:
            raise WordValidationError(f"component {c} is not a closed component")
    return marked


def star_element(word: MorseWord, marked: Sequence[int]) -> list[tuple[int, MorseWord]]:
    """Weighted sublink sum: 2^(m - j) times the word keeping j of the m marked components."""
    marked = _check_marked(word, marked)
    m = len(marked)
    out = []
    for j in range(m + 1):
        for kept in combinations(marked, j):
            out.append((2 ** (m - j), delete_components(word, set(marked) - set(kept))))
    return out


def combination_bracket(terms: Sequence[tuple[int, MorseWord]], profile: Profile = DEFAULT_PROFILE) -> LaurentPoly:
    total = LaurentPoly()
    for weight, w in terms:
        total = total + bracket(w, profile) * weight
    return total


@dataclass(frozen=True)
class FiniteTypeResult:
    value: LaurentPoly
    order: int
    components: int
    divisibility: int
    divisible: bool

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "order": self.order,
            "components": self.components,
            "divisibility_by_A_plus_1": self.divisibility if self.divisibility < MAX_ORDER else "infinite",
            "divisible": self.divisible,
        }


def finite_type_sum(word: MorseWord, n: int, profile: Profile = DEFAULT_PROFILE) -> FiniteTypeResult:
    """2^|L| * sum over sublinks L' of (-1)^|L'| (-2)^-|L'| K(L'), tested against (A+1)^n."""
    if n < 0:
        raise ValueError("order must be >= 0")
    cmap = components(word)
    if cmap.open:
        raise WordValidationError("finite_type_sum needs a closed link")
    c = len(cmap)
    if c <= n:
        raise ValueError(f"need more than {n} components, got {c}")
    total = LaurentPoly()
    everything = set(range(c))
    for j in range(c + 1):
        for kept in combinations(range(c), j):
            sub = delete_components(word, everything - set(kept))
            # (-1)^j (-2)^-j = 2^-j, cleared by 2^c
            total = total + bracket(sub, profile) * 2 ** (c - j)
    order = divisibility_order(total, A_PLUS_ONE)
    return FiniteTypeResult(total, n, c, order, order >= n)


# -- certificates for the relative modules -------------------------------------

@dataclass
class CertificateTerm:
    """coefficient * u^alpha * (l+2)^beta acting on a basis element.

    ``layers`` records how many (l+2) factors sit on each strand's layer.
    """

    coefficient: LaurentPoly
    u_power: int
    layers: tuple[int, ...]
    description: str = ""

    @property
    def grade(self) -> int:
        return self.u_power + sum(self.layers)

    def to_json(self) -> dict:
        return {"coeff": self.coefficient.to_json(), "u": self.u_power,
                "l_plus_2": list(self.layers), "grade": self.grade, "what": self.description}


@dataclass
class Certificate:
    """A decomposition of a target element into terms of grade at least ``order``.

    ``exact`` is True once the terms were evaluated and summed back to the
    target exactly.
    """

    order: int
    terms: list[CertificateTerm] = field(default_factory=list)
    exact: bool = False

    @property
    def min_grade(self) -> int | None:
        return min((t.grade for t in self.terms), default=None)

    @property
    def valid(self) -> bool:
        return self.exact and all(t.grade >= self.order for t in self.terms)

    def to_json(self) -> dict:
        return {"order": self.order, "exact": self.exact, "valid": self.valid,
                "min_grade": self.min_grade, "terms": len(self.terms)}
