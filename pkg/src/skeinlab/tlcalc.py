"""Kauffman bracket reduction in the disk.

Diagrams are Temperley-Lieb matchings: a tuple ``m`` over ``bottom + top``
points (bottom ``0..a-1`` left to right, then top ``0..b-1``) with ``m[i]``
the partner of point ``i``.  Words are reduced slice by slice, so the state
never holds more than one coefficient per crossingless matching.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .conventions import DEFAULT_PROFILE, Profile
from .diagram import CROSSINGS, MorseWord, WordValidationError, components, delete_components
from .exactnum import DELTA, LaurentPoly, ONE


@dataclass(frozen=True)
class TLMatching:
    bottom: int
    top: int
    partner: tuple[int, ...]

    def __post_init__(self):
        n = self.bottom + self.top
        if len(self.partner) != n or n % 2:
            raise ValueError("matching size does not fit the boundary")
        for i, j in enumerate(self.partner):
            if not 0 <= j < n or j == i or self.partner[j] != i:
                raise ValueError("not a perfect matching")
        # planarity: read boundary counterclockwise (bottom L->R, top R->L) as brackets
        order = list(range(self.bottom)) + list(range(n - 1, self.bottom - 1, -1))
        rank = {p: r for r, p in enumerate(order)}
        stack = []
        for p in order:
            q = self.partner[p]
            if rank[q] > rank[p]:
                stack.append(p)
            elif not stack or stack.pop() != q:
                raise ValueError("matching is not planar")

    @classmethod
    def identity(cls, k: int) -> "TLMatching":
        return cls(k, k, tuple(list(range(k, 2 * k)) + list(range(k))))

    def through_count(self) -> int:
        return sum(1 for i in range(self.bottom) if self.partner[i] >= self.bottom)

    def to_json(self) -> dict:
        pairs = sorted({tuple(sorted((i, j))) for i, j in enumerate(self.partner)})
        return {"bottom": self.bottom, "top": self.top, "pairs": [list(p) for p in pairs]}


def _from_pairs(a: int, b: int, pairs: Iterable[tuple[int, int]]) -> TLMatching:
    partner = [-1] * (a + b)
    for i, j in pairs:
        partner[i], partner[j] = j, i
    return TLMatching(a, b, tuple(partner))


@lru_cache(maxsize=None)
def generator(kind: str, k: int, p: int = 0) -> TLMatching:
    """Elementary matchings on k bottom points; p is a 0-based position."""
    if kind == "id":
        return TLMatching.identity(k)
    if kind == "cup":  # k -> k+2
        pairs = [(x, k + x) for x in range(p)] + [(x, k + x + 2) for x in range(p, k)]
        pairs.append((k + p, k + p + 1))
        return _from_pairs(k, k + 2, pairs)
    if kind == "cap":  # k -> k-2
        pairs = [(x, k + x) for x in range(p)] + [(x, k + x - 2) for x in range(p + 2, k)]
        pairs.append((p, p + 1))
        return _from_pairs(k, k - 2, pairs)
    if kind == "e":
        d, loops = compose_matchings(generator("cap", k, p), generator("cup", k - 2, p))
        return d
    raise ValueError(kind)


@lru_cache(maxsize=200000)
def compose_matchings(lower: TLMatching, upper: TLMatching) -> tuple[TLMatching, int]:
    """Stack ``upper`` on ``lower``; returns the matching and the number of closed loops."""
    if lower.top != upper.bottom:
        raise ValueError("boundary mismatch in composition")
    a, b, c = lower.bottom, lower.top, upper.top
    lp, up = lower.partner, upper.partner
    result = [-1] * (a + c)
    seen_mid = [False] * b

    def run(side: str, idx: int) -> int:
        # side 'L': currently at lower point idx; 'U': at upper point idx
        while True:
            if side == "L":
                q = lp[idx]
                if q < a:
                    return q
                m = q - a
                seen_mid[m] = True
                side, idx = "U", m
            else:
                q = up[idx]
                if q >= b:
                    return a + (q - b)
                seen_mid[q] = True
                side, idx = "L", a + q

    for x in range(a):
        if result[x] < 0:
            y = run("L", x)
            result[x], result[y] = y, x
    for z in range(c):
        if result[a + z] < 0:
            y = run("U", b + z)
            result[a + z], result[y] = y, a + z
    loops = 0
    for m in range(b):
        if not seen_mid[m]:
            loops += 1
            cur = m
            while not seen_mid[cur]:
                seen_mid[cur] = True
                nxt = up[cur]  # stays in the middle row
                seen_mid[nxt] = True
                cur = lp[a + nxt] - a
    return TLMatching(a, c, tuple(result)), loops


class TLElement:
    """Finite Q[A, A^-1]-combination of TL matchings with common boundary."""

    __slots__ = ("terms", "bottom", "top")

    def __init__(self, terms: Mapping[TLMatching, LaurentPoly], bottom: int, top: int):
        self.terms = {d: c for d, c in terms.items() if c}
        self.bottom, self.top = bottom, top

    @classmethod
    def identity(cls, k: int) -> "TLElement":
        return cls({TLMatching.identity(k): ONE}, k, k)

    def __eq__(self, other) -> bool:
        return (isinstance(other, TLElement) and self.terms == other.terms
                and (self.bottom, self.top) == (other.bottom, other.top))

    def __add__(self, other: "TLElement") -> "TLElement":
        t = dict(self.terms)
        for d, c in other.terms.items():
            t[d] = t[d] + c if d in t else c
        return TLElement(t, self.bottom, self.top)

    def __neg__(self) -> "TLElement":
        return TLElement({d: -c for d, c in self.terms.items()}, self.bottom, self.top)

    def __sub__(self, other: "TLElement") -> "TLElement":
        return self + (-other)

    def scale(self, f) -> "TLElement":
        f = LaurentPoly.coerce(f)
        return TLElement({d: c * f for d, c in self.terms.items()}, self.bottom, self.top)

    def compose(self, upper: "TLElement") -> "TLElement":
        out: dict = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in upper.terms.items():
                d, loops = compose_matchings(d1, d2)
                coeff = c1 * c2 * (DELTA ** loops)
                out[d] = out[d] + coeff if d in out else coeff
        return TLElement(out, self.bottom, upper.top)

    def scalar(self) -> LaurentPoly:
        """The coefficient of the empty matching (closed elements)."""
        if self.bottom or self.top:
            raise ValueError("element is not closed")
        return self.terms.get(TLMatching(0, 0, ()), LaurentPoly())

    def __repr__(self) -> str:
        return "TLElement(" + ", ".join(f"{c}*{d.partner}" for d, c in self.terms.items()) + ")"


def _apply(state: dict, gen: TLMatching, factor: LaurentPoly, out: dict) -> None:
    for d, c in state.items():
        nd, loops = compose_matchings(d, gen)
        coeff = c * factor
        if loops:
            coeff = coeff * (DELTA ** loops)
        if nd in out:
            s = out[nd] + coeff
            if s:
                out[nd] = s
            else:
                del out[nd]
        elif coeff:
            out[nd] = coeff


def reduce_disk(word: MorseWord, profile: Profile = DEFAULT_PROFILE) -> TLElement:
    """Skein class of a disk word in the Temperley-Lieb basis."""
    if word.ambient != "disk":
        raise WordValidationError("reduce_disk needs a disk word")
    k = word.bottom
    state = {TLMatching.identity(k): ONE}
    for kind, arg in word.slices:
        p = arg - 1
        out: dict = {}
        if kind == "cup":
            _apply(state, generator("cup", k, p), ONE, out)
            k += 2
        elif kind == "cap":
            _apply(state, generator("cap", k, p), ONE, out)
            k -= 2
        elif kind in CROSSINGS:
            e_id, e_e = profile.crossing_exponents(kind)
            _apply(state, generator("id", k), LaurentPoly.monomial(e_id), out)
            _apply(state, generator("e", k, p), LaurentPoly.monomial(e_e), out)
        else:
            raise WordValidationError(f"slice {kind!r} is not allowed in the disk")
        state = out
    return TLElement(state, word.bottom, word.top)


def bracket(word: MorseWord, profile: Profile = DEFAULT_PROFILE) -> LaurentPoly:
    """Kauffman bracket K(L) of a closed disk word, normalised by K(empty) = 1."""
    if not word.is_closed:
        raise WordValidationError("bracket needs a closed diagram")
    return reduce_disk(word, profile).scalar()


def star_bracket(word: MorseWord, marked: Iterable[int], profile: Profile = DEFAULT_PROFILE) -> LaurentPoly:
    """sum over S in marked of 2^(m - |S|) K(word with marked \\ S deleted)."""
    marked = sorted(set(marked))
    cmap = components(word)
    for c in marked:
        if not 0 <= c < len(cmap) or not cmap.components[c].closed:
            raise WordValidationError(f"component {c} is not a closed component")
    m = len(marked)
    total = LaurentPoly()
    for j in range(m + 1):
        for kept in combinations(marked, j):
            removed = set(marked) - set(kept)
            sub = delete_components(word, removed)
            total = total + bracket(sub, profile) * (2 ** (m - j))
    return total
