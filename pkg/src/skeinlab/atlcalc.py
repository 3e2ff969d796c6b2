"""Skein calculus in the annulus.

Annular Temperley-Lieb diagrams are stored as lifted periodic matchings in
the universal cover of the annulus.  A bottom point with cover coordinate
``x`` sits at position ``x mod a`` on sheet ``x // a`` (``a`` = bottom point
count, similarly for the top).  For each of the ``a + b`` fundamental points
the diagram records its partner as ``(side, position, sheet)``; side 0 is the
inner (bottom) circle, side 1 the outer (top) one.  Essential loops are kept
as a counter ``loops``, which is only allowed when no strand runs through.

Composition glues two diagrams by tracing paths in the cover.  A leftover
middle loop that closes on its starting sheet is contractible (factor delta);
one that closes on a shifted sheet is essential.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

from .conventions import DEFAULT_PROFILE, Profile
from .diagram import CROSSINGS, MorseWord, WordValidationError, core_slices, expand_cores
from .exactnum import DELTA, LaurentPoly, ONE

Point = tuple[int, int, int]


@dataclass(frozen=True)
class ATLDiagram:
    bottom: int
    top: int
    partner: tuple[Point, ...]
    loops: int = 0

    def __post_init__(self):
        if len(self.partner) != self.bottom + self.top:
            raise ValueError("partner table does not fit the boundary")
        for idx, (side, pos, sheet) in enumerate(self.partner):
            back = self.partner[self._index(side, pos)]
            my_side, my_pos = self._location(idx)
            if back != (my_side, my_pos, -sheet):
                raise ValueError("partner table is not an involution")
        if self.loops < 0 or (self.loops and self.through_count()):
            raise ValueError("essential loops require zero through strands")

    def _index(self, side: int, pos: int) -> int:
        return pos if side == 0 else self.bottom + pos

    def _location(self, idx: int) -> tuple[int, int]:
        return (0, idx) if idx < self.bottom else (1, idx - self.bottom)

    def size(self, side: int) -> int:
        return self.bottom if side == 0 else self.top

    def lift(self, side: int, x: int) -> tuple[int, int]:
        """Partner of the cover point ``x`` on ``side`` as (side, cover coordinate)."""
        n = self.size(side)
        pos, sheet = x % n, x // n
        s2, p2, sh2 = self.partner[self._index(side, pos)]
        return s2, p2 + (sh2 + sheet) * self.size(s2)

    @classmethod
    def from_pairs(cls, a: int, b: int, pairs: Iterable[tuple[tuple[int, int], tuple[int, int]]],
                   loops: int = 0) -> "ATLDiagram":
        """Build from pairs of (side, cover coordinate) endpoints."""
        table: list = [None] * (a + b)
        sizes = (a, b)
        for (s1, x1), (s2, x2) in pairs:
            for (sa, xa), (sb, xb) in (((s1, x1), (s2, x2)), ((s2, x2), (s1, x1))):
                # shift both ends back by the sheet of the first end
                shift_b = xb - (xa // sizes[sa]) * sizes[sb]
                idx = (xa % sizes[sa]) if sa == 0 else a + (xa % sizes[sa])
                table[idx] = (sb, shift_b % sizes[sb], shift_b // sizes[sb])
        if any(t is None for t in table):
            raise ValueError("pairs do not cover every boundary point")
        return cls(a, b, tuple(table), loops)

    @classmethod
    def identity(cls, k: int) -> "ATLDiagram":
        return cls.rotation(k, 0)

    @classmethod
    def rotation(cls, k: int, t: int) -> "ATLDiagram":
        """All k strands through, bottom x joined to top x + t."""
        if k == 0:
            return cls(0, 0, ())
        return cls.from_pairs(k, k, [((0, x), (1, x + t)) for x in range(k)])

    @classmethod
    def loop_power(cls, j: int) -> "ATLDiagram":
        return cls(0, 0, (), j)

    def through_count(self) -> int:
        return sum(1 for side, _, _ in self.partner[: self.bottom] if side == 1)

    def turnbacks(self, side: int) -> list[tuple[int, int]]:
        """Turnback pairs on one side as (position, partner cover coordinate)."""
        out = []
        n = self.size(side)
        for pos in range(n):
            s2, p2, sh2 = self.partner[self._index(side, pos)]
            y = p2 + sh2 * n
            if s2 == side and y > pos:
                out.append((pos, y))
        return out

    def rotation_index(self) -> int:
        """(k - 1) + sheet * p for the first bottom through point (k is 1-based)."""
        p = self.through_count()
        if p == 0:
            return 0
        tops = [pos for pos in range(self.top) if self.partner[self.bottom + pos][0] == 0]
        first = next(pos for pos in range(self.bottom) if self.partner[pos][0] == 1)
        _, tpos, sheet = self.partner[first]
        return tops.index(tpos) + sheet * p

    def descriptor(self) -> dict:
        return {
            "p": self.through_count(),
            "inner": [list(t) for t in self.turnbacks(0)],
            "outer": [list(t) for t in self.turnbacks(1)],
            "rot": self.rotation_index(),
            "loops": self.loops,
        }

    def sort_key(self) -> tuple:
        return (self.bottom, self.top, self.loops, self.partner)


@lru_cache(maxsize=None)
def generator(kind: str, k: int, p: int = 0) -> ATLDiagram:
    """Elementary annular diagrams on k bottom points; p is a 0-based position."""
    if kind == "id":
        return ATLDiagram.identity(k)
    if kind == "rot":
        return ATLDiagram.rotation(k, p)
    if kind == "cup":
        pairs = [((0, x), (1, x)) for x in range(p)] + [((0, x), (1, x + 2)) for x in range(p, k)]
        pairs.append(((1, p), (1, p + 1)))
        return ATLDiagram.from_pairs(k, k + 2, pairs)
    if kind == "cap":
        pairs = [((0, x), (1, x)) for x in range(p)] + [((0, x), (1, x - 2)) for x in range(p + 2, k)]
        pairs.append(((0, p), (0, p + 1)))
        return ATLDiagram.from_pairs(k, k - 2, pairs)
    if kind == "e":
        return compose_diagrams(generator("cap", k, p), generator("cup", k - 2, p))[0]
    raise ValueError(kind)


@lru_cache(maxsize=500000)
def compose_diagrams(lower: ATLDiagram, upper: ATLDiagram) -> tuple[ATLDiagram, int]:
    """Stack ``upper`` on ``lower``; returns (diagram, contractible loop count)."""
    if lower.top != upper.bottom:
        raise ValueError("boundary mismatch in composition")
    a, b, c = lower.bottom, lower.top, upper.top
    seen = [False] * b
    pairs = []

    def from_lower(side: int, x: int) -> tuple[int, int]:
        # enter the lower diagram at (side, x) and follow until leaving the middle
        s, y = lower.lift(side, x)
        while s == 1:
            seen[y % b] = True
            s2, z = upper.lift(0, y)
            if s2 == 1:
                return 1, z
            seen[z % b] = True
            s, y = lower.lift(1, z)
        return 0, y

    def from_upper(x: int) -> tuple[int, int]:
        s, y = upper.lift(1, x)
        while s == 0:
            seen[y % b] = True
            s2, z = lower.lift(1, y)
            if s2 == 0:
                return 0, z
            seen[z % b] = True
            s, y = upper.lift(0, z)
        return 1, y

    done_top = [False] * c
    for x in range(a):
        end = from_lower(0, x)
        pairs.append(((0, x), end))
        if end[0] == 1:
            done_top[end[1] % c] = True
    for x in range(c):
        if not done_top[x]:
            end = from_upper(x)
            pairs.append(((1, x), end))
    contractible = 0
    essential = lower.loops + upper.loops
    for m in range(b):
        if seen[m]:
            continue
        y = m
        while True:
            seen[y % b] = True
            _, z = upper.lift(0, y)
            seen[z % b] = True
            _, y = lower.lift(1, z)
            if y % b == m:
                break
        if y == m:
            contractible += 1
        else:
            essential += 1
    return ATLDiagram.from_pairs(a, c, pairs, essential), contractible


def _accumulate(out: dict, d: ATLDiagram, coeff: LaurentPoly) -> None:
    if d in out:
        s = out[d] + coeff
        if s:
            out[d] = s
        else:
            del out[d]
    elif coeff:
        out[d] = coeff


class ATLElement:
    """Finite Q[A, A^-1]-combination of annular diagrams with fixed boundary."""

    __slots__ = ("terms", "bottom", "top")

    def __init__(self, terms: Mapping[ATLDiagram, LaurentPoly], bottom: int, top: int):
        self.terms = {d: LaurentPoly.coerce(c) for d, c in terms.items() if c}
        self.bottom, self.top = bottom, top

    @classmethod
    def identity(cls, k: int) -> "ATLElement":
        return cls({ATLDiagram.identity(k): ONE}, k, k)

    @classmethod
    def basis(cls, d: ATLDiagram, coeff=ONE) -> "ATLElement":
        return cls({d: LaurentPoly.coerce(coeff)}, d.bottom, d.top)

    @classmethod
    def zero(cls, bottom: int, top: int) -> "ATLElement":
        return cls({}, bottom, top)

    @classmethod
    def from_loop_poly(cls, coeffs: Mapping[int, object] | Sequence) -> "ATLElement":
        """Closed element sum_j c_j l^j from a mapping or list of coefficients."""
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        return cls({ATLDiagram.loop_power(j): LaurentPoly.coerce(c) for j, c in items}, 0, 0)

    @property
    def is_closed(self) -> bool:
        return self.bottom == 0 and self.top == 0

    def loop_coefficients(self) -> dict[int, LaurentPoly]:
        if not self.is_closed:
            raise ValueError("element is not closed")
        return {d.loops: c for d, c in self.terms.items()}

    def __eq__(self, other) -> bool:
        return (isinstance(other, ATLElement) and self.terms == other.terms
                and (self.bottom, self.top) == (other.bottom, other.top))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "ATLElement") -> None:
        if (self.bottom, self.top) != (other.bottom, other.top):
            raise ValueError("boundary mismatch")

    def __add__(self, other: "ATLElement") -> "ATLElement":
        self._check(other)
        t = dict(self.terms)
        for d, c in other.terms.items():
            _accumulate(t, d, c)
        return ATLElement(t, self.bottom, self.top)

    def __neg__(self) -> "ATLElement":
        return ATLElement({d: -c for d, c in self.terms.items()}, self.bottom, self.top)

    def __sub__(self, other: "ATLElement") -> "ATLElement":
        return self + (-other)

    def scale(self, f) -> "ATLElement":
        f = LaurentPoly.coerce(f)
        return ATLElement({d: c * f for d, c in self.terms.items()}, self.bottom, self.top)

    def map_coefficients(self, fn) -> "ATLElement":
        return ATLElement({d: fn(c) for d, c in self.terms.items()}, self.bottom, self.top)

    def divide(self, f) -> "ATLElement":
        """Exact coefficientwise division; ArithmeticError if some coefficient is not divisible."""
        f = LaurentPoly.coerce(f)
        return ATLElement({d: c / f for d, c in self.terms.items()}, self.bottom, self.top)

    def to_json(self) -> list:
        return [{"diagram": d.descriptor(), "coeff": c.to_json()}
                for d, c in sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())]

    def __repr__(self) -> str:
        return "ATLElement(" + " + ".join(f"({c})*{d.descriptor()}" for d, c in self.terms.items()) + ")"


def compose(x: ATLElement, y: ATLElement) -> ATLElement:
    """x below, y on top."""
    if x.top != y.bottom:
        raise ValueError(f"cannot compose: {x.top} points meet {y.bottom}")
    out: dict = {}
    for d1, c1 in x.terms.items():
        for d2, c2 in y.terms.items():
            d, loops = compose_diagrams(d1, d2)
            coeff = c1 * c2
            if loops:
                coeff = coeff * DELTA ** loops
            _accumulate(out, d, coeff)
    return ATLElement(out, x.bottom, y.top)


def apply_slices(element: ATLElement, slices: Iterable, profile: Profile = DEFAULT_PROFILE) -> ATLElement:
    """Stack the primitive slices (no ``core``) on top of ``element``."""
    k = element.top
    state = dict(element.terms)
    for kind, arg in slices:
        out: dict = {}
        if kind in ("cup", "cap"):
            gens = [(generator(kind, k, arg - 1), ONE)]
            k += 2 if kind == "cup" else -2
        elif kind in CROSSINGS:
            e_id, e_e = profile.crossing_exponents(kind)
            gens = [(generator("id", k), LaurentPoly.monomial(e_id)),
                    (generator("e", k, arg - 1), LaurentPoly.monomial(e_e))]
        elif kind == "rot":
            gens = [(generator("rot", k, arg), ONE)]
        elif kind == "core":
            state = apply_slices(ATLElement(state, element.bottom, k), core_slices(k, arg), profile).terms
            continue
        else:
            raise WordValidationError(f"unknown slice {kind!r}")
        for d, c in state.items():
            for g, f in gens:
                nd, loops = compose_diagrams(d, g)
                coeff = c * f
                if loops:
                    coeff = coeff * DELTA ** loops
                _accumulate(out, nd, coeff)
        state = out
    return ATLElement(state, element.bottom, k)


def reduce_annulus(word: MorseWord, profile: Profile = DEFAULT_PROFILE) -> ATLElement:
    """Normal form of an annulus word in the annular Temperley-Lieb basis."""
    if word.ambient != "annulus":
        raise WordValidationError("reduce_annulus needs an annulus word")
    return apply_slices(ATLElement.identity(word.bottom), expand_cores(word).slices, profile)


# -- diagrams back to words ---------------------------------------------------

def diagram_word(d: ATLDiagram) -> list:
    """A crossingless primitive slice list whose reduction is exactly ``d``.

    Bottom turnbacks are peeled off with caps, top turnbacks with cups; a
    turnback across the seam is first rotated into view.  What remains is a
    rotation of the through strands, or a power of the core loop.
    """
    bottom_part: list = []
    top_part: list = []
    cur = d
    while True:
        a = cur.bottom
        found = None
        for x in range(a):
            s, p, sh = cur.partner[x]
            if s == 0 and p + sh * a == x + 1:
                found = x
                break
        if found is None:
            break
        if found + 1 < a:
            bottom_part.append(("cap", found + 1))
            cur, loops = compose_diagrams(generator("cup", a - 2, found), cur)
            assert loops == 1
        else:
            bottom_part.append(("rot", 1))
            cur, loops = compose_diagrams(generator("rot", a, -1), cur)
    while True:
        b = cur.top
        found = None
        for y in range(b):
            s, p, sh = cur.partner[cur.bottom + y]
            if s == 1 and p + sh * b == y + 1:
                found = y
                break
        if found is None:
            break
        if found + 1 < b:
            top_part.append(("cup", found + 1))
            cur, loops = compose_diagrams(cur, generator("cap", b, found))
            assert loops == 1
        else:
            top_part.append(("rot", 1))
            cur, loops = compose_diagrams(cur, generator("rot", b, -1))
    middle: list = []
    if cur.bottom != cur.top:
        raise AssertionError("peeling left unmatched turnbacks")
    if cur.bottom:
        t = cur.rotation_index()
        middle = [("rot", 1 if t > 0 else -1)] * abs(t)
    else:
        for _ in range(cur.loops):
            middle.extend(core_slices(0, "over"))
    return bottom_part + middle + top_part[::-1]


def element_words(v: ATLElement) -> list[tuple[list, LaurentPoly]]:
    return [(diagram_word(d), c) for d, c in v.terms.items()]


# -- stacking in the thickening direction -------------------------------------

def _gather(roles: list[str], active_in_front: bool) -> list:
    """Bubble active strands to the left; each swap passes an active strand
    to the left of a passive one."""
    roles = list(roles)
    out = []
    changed = True
    while changed:
        changed = False
        for i in range(len(roles) - 1):
            if roles[i] == "p" and roles[i + 1] == "a":
                # left strand is passive; "over" puts the left strand in front
                out.append(("under" if active_in_front else "over", i + 1))
                roles[i], roles[i + 1] = "a", "p"
                changed = True
    return out


def _flip(kind: str) -> str:
    return "under" if kind == "over" else "over"


def _layered(word: list, roles_in: list[str], roles_out: list[str], active_in_front: bool) -> list:
    """Embed a word on the active strands into the full strand set.

    Passive strands run straight up in their own layer; the active word is
    performed on the gathered active strands, and a rotation of the active
    group first carries the moving strand across the passive ones.
    """
    seq = _gather(roles_in, active_in_front)
    kk = roles_in.count("a")
    npass = roles_in.count("p")
    for kind, arg in word:
        if kind in ("cup", "cap") or kind in CROSSINGS:
            seq.append((kind, arg))
            if kind == "cup":
                kk += 2
            elif kind == "cap":
                kk -= 2
        elif kind == "rot":
            if kk == 0:
                continue
            total = kk + npass
            if arg > 0:
                for j in range(kk - 1, total - 1):
                    seq.append(("over" if active_in_front else "under", j + 1))
                seq.append(("rot", 1))
            else:
                seq.append(("rot", -1))
                for j in range(total - 2, kk - 2, -1):
                    seq.append(("under" if active_in_front else "over", j + 1))
        else:
            raise ValueError(f"unexpected slice {kind!r}")
    if kk != roles_out.count("a"):
        raise AssertionError("active strand count mismatch")
    back = _gather(roles_out, active_in_front)
    seq.extend((_flip(kind), arg) for kind, arg in reversed(back))
    return seq


def _roles(positions: Sequence[int], other: Sequence[int], active: str) -> list[str]:
    merged = sorted([(p, "a" if active == "v" else "p") for p in positions]
                    + [(p, "p" if active == "v" else "a") for p in other])
    return [r for _, r in merged]


def boxtimes(v: ATLElement, w: ATLElement, positions_v: Sequence[int] | None = None,
             positions_w: Sequence[int] | None = None, profile: Profile = DEFAULT_PROFILE) -> ATLElement:
    """v stacked entirely above w in the thickening direction.

    ``positions_v`` and ``positions_w`` are the disjoint slots the two
    elements occupy among the combined marked points (same slots on both
    boundary circles).  By default v takes the first slots.
    """
    if v.bottom != v.top or w.bottom != w.top:
        raise ValueError("boxtimes needs elements with matching boundaries")
    if positions_v is None and positions_w is None:
        positions_v = tuple(range(v.bottom))
        positions_w = tuple(range(v.bottom, v.bottom + w.bottom))
    elif positions_v is None or positions_w is None:
        raise ValueError("give both position lists or neither")
    if len(positions_v) != v.bottom or len(positions_w) != w.bottom:
        raise ValueError("position list length does not match element size")
    if set(positions_v) & set(positions_w):
        raise ValueError("marked point sets overlap")
    positions_v, positions_w = sorted(positions_v), sorted(positions_w)
    total = len(positions_v) + len(positions_w)
    roles_w = _roles(positions_v, positions_w, "w")
    roles_v = _roles(positions_v, positions_w, "v")
    # w runs first with the passive strands of v in front, then v in front of w
    words_w = element_words(w)
    words_v = element_words(v)
    out = ATLElement.zero(total, total)
    for (word_w, cw), (word_v, cv) in product(words_w, words_v):
        seq = _layered(word_w, roles_w, roles_w, active_in_front=False)
        seq += _layered(word_v, roles_v, roles_v, active_in_front=True)
        out = out + apply_slices(ATLElement.identity(total), seq, profile).scale(cw * cv)
    return out


def boxtimes_all(elements: Sequence[ATLElement], profile: Profile = DEFAULT_PROFILE) -> ATLElement:
    """e_1 above e_2 above ... on consecutive slots."""
    acc = elements[-1]
    for e in reversed(elements[:-1]):
        acc = boxtimes(e, acc, profile=profile)
    return acc


def wrap_left(x: ATLElement, v: ATLElement, profile: Profile = DEFAULT_PROFILE) -> ATLElement:
    """x v: the closed element x placed in front of v."""
    return _wrap(x, v, "over", profile)


def wrap_right(x: ATLElement, v: ATLElement, profile: Profile = DEFAULT_PROFILE) -> ATLElement:
    """v x: the closed element x placed behind v."""
    return _wrap(x, v, "under", profile)


def _wrap(x: ATLElement, v: ATLElement, kind: str, profile: Profile) -> ATLElement:
    if not x.is_closed:
        raise ValueError("wrap needs a closed element")
    out = ATLElement.zero(v.bottom, v.top)
    k = v.top
    cache: dict[int, ATLElement] = {0: v}
    for j, c in sorted(x.loop_coefficients().items()):
        while max(cache) < j:
            i = max(cache)
            cache[i + 1] = apply_slices(cache[i], core_slices(k, kind), profile)
        out = out + cache[j].scale(c)
    return out


def dehn_twist(v: ATLElement, direction: int = 1, profile: Profile = DEFAULT_PROFILE) -> ATLElement:
    """Twist along the core: stack the full rotation of the top circle."""
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    m = v.top
    if m == 0:
        return v
    full = ATLElement.basis(ATLDiagram.rotation(m, profile.handedness * direction * m))
    return compose(v, full)


SIGMA_DENOMINATOR = LaurentPoly({1: -1, -1: 1})


def commutator(x: ATLElement, v: ATLElement, profile: Profile = DEFAULT_PROFILE) -> ATLElement:
    return wrap_left(x, v, profile) - wrap_right(x, v, profile)


def sigma(x: ATLElement, v: ATLElement, profile: Profile = DEFAULT_PROFILE) -> ATLElement:
    """(x v - v x) / (-A + A^-1), exact."""
    diff = commutator(x, v, profile)
    try:
        return diff.divide(SIGMA_DENOMINATOR)
    except ArithmeticError as exc:
        raise ArithmeticError(f"commutator not divisible by -A + A^-1: {diff!r}") from exc


# -- the one-strand module ----------------------------------------------------

class StrandElement:
    """Element of the one-strand module: a Laurent polynomial in A and r.

    ``terms`` maps (A exponent, r exponent) to a rational coefficient.
    Composition of one-strand diagrams adds winding numbers, so the product
    here is the commutative Laurent product.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def r_power(cls, k: int, coeff: LaurentPoly | int = 1) -> "StrandElement":
        c = LaurentPoly.coerce(coeff)
        return cls({(e, k): v for e, v in c.items()})

    @classmethod
    def from_atl(cls, v: ATLElement) -> "StrandElement":
        if (v.bottom, v.top) != (1, 1):
            raise ValueError("not a one-strand element")
        out: dict = {}
        for d, c in v.terms.items():
            k = d.rotation_index()
            for e, val in c.items():
                out[(e, k)] = out.get((e, k), 0) + val
        return cls(out)

    def to_atl(self) -> ATLElement:
        return ATLElement({ATLDiagram.rotation(1, k): c for k, c in self.by_r_power().items()}, 1, 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, StrandElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "StrandElement") -> "StrandElement":
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return StrandElement(t)

    def __neg__(self) -> "StrandElement":
        return StrandElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "StrandElement") -> "StrandElement":
        return self + (-other)

    def __mul__(self, other) -> "StrandElement":
        if not isinstance(other, StrandElement):
            other = StrandElement.r_power(0, other)
        t: dict = {}
        for (e1, k1), v1 in self.terms.items():
            for (e2, k2), v2 in other.terms.items():
                key = (e1 + e2, k1 + k2)
                t[key] = t.get(key, 0) + v1 * v2
        return StrandElement(t)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "StrandElement":
        if n < 0:
            raise ValueError("negative power")
        result = StrandElement.r_power(0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def by_r_power(self) -> dict[int, LaurentPoly]:
        out: dict[int, dict] = {}
        for (e, k), v in self.terms.items():
            out.setdefault(k, {})[e] = v
        return {k: LaurentPoly(c) for k, c in out.items()}

    @classmethod
    def from_r_powers(cls, parts: Mapping[int, LaurentPoly]) -> "StrandElement":
        return cls({(e, k): v for k, c in parts.items() for e, v in c.items()})

    def divide(self, f) -> "StrandElement":
        """Exact division of every r-coefficient by the Laurent polynomial f."""
        f = LaurentPoly.coerce(f)
        return StrandElement.from_r_powers({k: c / f for k, c in self.by_r_power().items()})

    def shift_r(self, k: int) -> "StrandElement":
        return StrandElement({(e, j + k): v for (e, j), v in self.terms.items()})

    def to_json(self) -> list:
        return [[e, k, str(v)] for (e, k), v in sorted(self.terms.items())]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{v}*A^{e}*r^{k}" for (e, k), v in sorted(self.terms.items()))
