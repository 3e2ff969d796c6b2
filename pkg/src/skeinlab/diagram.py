"""Morse-word presentations of framed unoriented tangle diagrams.

A word is read from the bottom boundary (inner boundary, for the annulus) to
the top.  At every level the strands sit at positions ``1..k``; in the
annulus the positions are cyclic and the gap between ``k`` and ``1`` is the
seam.  Slices:

``cup i``      new adjacent pair at positions i, i+1 (``1 <= i <= k+1``)
``cap i``      join the strands at i and i+1
``over i``     strands i, i+1 cross; the one entering at i is in front
``under i``    strands i, i+1 cross; the one entering at i is behind
``rot +1``     strand k crosses the seam to position 1, others shift right
``rot -1``     inverse of ``rot +1``
``core over``  the core circle, in front of every current strand
``core under`` the core circle, behind every current strand

Text grammar: a header ``disk|annulus BOTTOM TOP`` followed by
semicolon-separated slices; ``#`` starts a comment.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

AMBIENTS = ("disk", "annulus")
CROSSINGS = ("over", "under")


class WordError(ValueError):
    """Base class for malformed words; ``kind`` is a stable machine-readable tag."""

    kind = "word-error"

    def to_json(self) -> dict:
        return {"error": self.kind, "message": str(self)}


class WordSyntaxError(WordError):
    kind = "syntax-error"

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column

    def to_json(self) -> dict:
        return {"error": self.kind, "message": str(self), "line": self.line, "column": self.column}


class WordValidationError(WordError):
    kind = "validation-error"

    def __init__(self, message: str, slice_index: int | None = None):
        super().__init__(message if slice_index is None else f"slice {slice_index + 1}: {message}")
        self.slice_index = slice_index

    def to_json(self) -> dict:
        return {"error": self.kind, "message": str(self), "slice": self.slice_index}


Slice = tuple  # (kind, arg)


@dataclass(frozen=True)
class MorseWord:
    ambient: str
    bottom: int
    top: int
    slices: tuple[Slice, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "slices", tuple(tuple(s) for s in self.slices))
        validate(self)

    @property
    def is_closed(self) -> bool:
        return self.bottom == 0 and self.top == 0

    def crossing_count(self) -> int:
        return sum(1 for k, _ in self.slices if k in CROSSINGS)

    def then(self, other: "MorseWord") -> "MorseWord":
        """Stack ``other`` on top of this word."""
        if other.ambient != self.ambient or other.bottom != self.top:
            raise WordValidationError("words do not stack")
        return MorseWord(self.ambient, self.bottom, other.top, self.slices + other.slices)

    def __str__(self) -> str:
        return format_word(self)


def strand_counts(ambient: str, bottom: int, slices: Sequence[Slice]) -> list[int]:
    """Strand count before each slice and after the last one."""
    counts = [bottom]
    k = bottom
    for idx, (kind, arg) in enumerate(slices):
        if kind == "cup":
            if not 1 <= arg <= k + 1:
                raise WordValidationError(f"cup position {arg} out of range for {k} strands", idx)
            k += 2
        elif kind == "cap":
            if not 1 <= arg <= k - 1:
                raise WordValidationError(f"cap position {arg} out of range for {k} strands", idx)
            k -= 2
        elif kind in CROSSINGS:
            if not 1 <= arg <= k - 1:
                raise WordValidationError(f"crossing position {arg} out of range for {k} strands", idx)
        elif kind == "rot":
            if ambient != "annulus":
                raise WordValidationError("rot is only allowed in the annulus", idx)
            if arg not in (1, -1):
                raise WordValidationError("rot takes +1 or -1", idx)
        elif kind == "core":
            if ambient != "annulus":
                raise WordValidationError("core is only allowed in the annulus", idx)
            if arg not in CROSSINGS:
                raise WordValidationError("core takes over or under", idx)
        else:
            raise WordValidationError(f"unknown slice {kind!r}", idx)
        counts.append(k)
    return counts


def validate(word: MorseWord) -> None:
    if word.ambient not in AMBIENTS:
        raise WordValidationError(f"unknown ambient {word.ambient!r}")
    if word.bottom < 0 or word.top < 0:
        raise WordValidationError("boundary counts must be non-negative")
    if (word.bottom + word.top) % 2:
        raise WordValidationError("boundary points must have even total")
    counts = strand_counts(word.ambient, word.bottom, word.slices)
    if counts[-1] != word.top:
        raise WordValidationError(f"word ends with {counts[-1]} strands, header declares {word.top}")


# ---------------------------------------------------------------------------
# text form

_TOKEN = re.compile(r"\s*(?:(#[^\n]*)|(;)|([A-Za-z]+|[+-]?\d+))")


def _tokenize(text: str):
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            # skip trailing whitespace or report junk
            rest = text[pos:]
            if not rest.strip():
                return
            ws = len(rest) - len(rest.lstrip())
            bad = pos + ws
            line = text.count("\n", 0, bad) + 1
            ls = text.rfind("\n", 0, bad) + 1
            raise WordSyntaxError(f"unexpected character {text[bad]!r}", line, bad - ls + 1)
        start = m.start(m.lastindex)
        line = text.count("\n", 0, start) + 1
        col = start - (text.rfind("\n", 0, start) + 1) + 1
        pos = m.end()
        if m.group(1):
            continue
        yield m.group(m.lastindex), line, col


def parse(text: str) -> MorseWord:
    """Parse the text grammar into a validated :class:`MorseWord`."""
    groups: list[list[tuple[str, int, int]]] = [[]]
    for tok, line, col in _tokenize(text):
        if tok == ";":
            groups.append([])
        else:
            groups[-1].append((tok, line, col))
    groups = [g for g in groups if g]
    if not groups:
        raise WordSyntaxError("empty input", 1, 1)

    head = groups[0]
    if head[0][0] not in AMBIENTS:
        raise WordSyntaxError(f"expected 'disk' or 'annulus', got {head[0][0]!r}", head[0][1], head[0][2])
    if len(head) != 3:
        tok = head[min(len(head), 3) - 1] if len(head) > 3 else head[-1]
        raise WordSyntaxError("header needs exactly two integers", tok[1], tok[2])
    ints = []
    for tok, line, col in head[1:]:
        if not re.fullmatch(r"\d+", tok):
            raise WordSyntaxError(f"expected a non-negative integer, got {tok!r}", line, col)
        ints.append(int(tok))

    slices = []
    for g in groups[1:]:
        name, line, col = g[0]
        if len(g) != 2:
            where = g[2] if len(g) > 2 else g[0]
            raise WordSyntaxError(f"slice {name!r} takes exactly one argument", where[1], where[2])
        arg, aline, acol = g[1]
        if name in ("cup", "cap", "over", "under"):
            if not re.fullmatch(r"\d+", arg):
                raise WordSyntaxError(f"expected a position, got {arg!r}", aline, acol)
            slices.append((name, int(arg)))
        elif name == "rot":
            if arg not in ("+1", "-1", "1"):
                raise WordSyntaxError(f"rot takes +1 or -1, got {arg!r}", aline, acol)
            slices.append(("rot", int(arg)))
        elif name == "core":
            if arg not in CROSSINGS:
                raise WordSyntaxError(f"core takes over or under, got {arg!r}", aline, acol)
            slices.append(("core", arg))
        else:
            raise WordSyntaxError(f"unknown slice {name!r}", line, col)
    return MorseWord(head[0][0], ints[0], ints[1], tuple(slices))


def format_word(word: MorseWord) -> str:
    parts = [f"{word.ambient} {word.bottom} {word.top}"]
    for kind, arg in word.slices:
        if kind == "rot":
            parts.append(f"rot {'+1' if arg > 0 else '-1'}")
        else:
            parts.append(f"{kind} {arg}")
    return "; ".join(parts)


# ---------------------------------------------------------------------------
# components

class _UnionFind:
    def __init__(self):
        self.parent: list[int] = []

    def make(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class Component:
    index: int
    closed: bool
    is_core: bool
    slices: tuple[int, ...]


@dataclass(frozen=True)
class ComponentMap:
    components: tuple[Component, ...]
    #: component index of each strand position before every slice (and at the top)
    levels: tuple[tuple[int, ...], ...] = field(repr=False)
    #: component created by each core slice, keyed by slice index
    core_components: dict = field(repr=False, default_factory=dict)

    def __len__(self) -> int:
        return len(self.components)

    @property
    def closed(self) -> list[int]:
        return [c.index for c in self.components if c.closed]

    @property
    def open(self) -> list[int]:
        return [c.index for c in self.components if not c.closed]


def _walk_arcs(word: MorseWord):
    """Track arc ids through the word; returns (uf, levels, boundary arcs, slice arcs, core arcs)."""
    uf = _UnionFind()
    pos = [uf.make() for _ in range(word.bottom)]
    boundary = set(pos)
    levels = [tuple(pos)]
    touched: list[tuple[int, ...]] = []
    core_arcs: dict[int, int] = {}
    for idx, (kind, arg) in enumerate(word.slices):
        if kind == "cup":
            a = uf.make()
            pos[arg - 1:arg - 1] = [a, a]
            touched.append((a,))
        elif kind == "cap":
            a, b = pos[arg - 1], pos[arg]
            uf.union(a, b)
            del pos[arg - 1:arg + 1]
            touched.append((a, b))
        elif kind in CROSSINGS:
            touched.append((pos[arg - 1], pos[arg]))
            pos[arg - 1], pos[arg] = pos[arg], pos[arg - 1]
        elif kind == "rot":
            if pos:
                moving = pos[-1] if arg > 0 else pos[0]
                pos = [pos[-1]] + pos[:-1] if arg > 0 else pos[1:] + [pos[0]]
                touched.append((moving,))
            else:
                touched.append(())
        elif kind == "core":
            a = uf.make()
            core_arcs[idx] = a
            touched.append((a,) + tuple(pos))
        levels.append(tuple(pos))
    boundary.update(pos)
    return uf, levels, boundary, touched, core_arcs


def components(word: MorseWord) -> ComponentMap:
    """Partition the word's arcs into components (numbered by first appearance)."""
    uf, levels, boundary, touched, core_arcs = _walk_arcs(word)
    order: dict[int, int] = {}

    def label(arc: int) -> int:
        root = uf.find(arc)
        if root not in order:
            order[root] = len(order)
        return order[root]

    for arc in levels[0]:
        label(arc)
    slice_sets: dict[int, list[int]] = {}
    for idx, arcs in enumerate(touched):
        kind = word.slices[idx][0]
        relevant = arcs[:1] if kind == "core" else arcs
        if kind == "core":
            # a core slice belongs to the core component; the strands it meets are unaffected
            for a in arcs[1:]:
                label(a)
        for a in relevant:
            slice_sets.setdefault(label(a), []).append(idx)
    for arc in levels[-1]:
        label(arc)
    boundary_roots = {uf.find(a) for a in boundary}
    core_roots = {uf.find(a) for a in core_arcs.values()}
    comps = []
    for root, i in sorted(order.items(), key=lambda kv: kv[1]):
        comps.append(Component(i, root not in boundary_roots, root in core_roots,
                               tuple(sorted(set(slice_sets.get(i, []))))))
    lv = tuple(tuple(label(a) for a in level) for level in levels)
    cores = {idx: label(a) for idx, a in core_arcs.items()}
    return ComponentMap(tuple(comps), lv, cores)


def delete_components(word: MorseWord, subset: Iterable[int]) -> MorseWord:
    """Remove closed components and renumber positions."""
    subset = set(subset)
    cmap = components(word)
    for c in subset:
        if not 0 <= c < len(cmap):
            raise WordValidationError(f"no component {c}")
        if not cmap.components[c].closed:
            raise WordValidationError(f"component {c} is not closed")
    if not subset:
        return word
    out = []
    for idx, (kind, arg) in enumerate(word.slices):
        before = cmap.levels[idx]
        after = cmap.levels[idx + 1]

        def kept_before(i):  # number of kept strands strictly left of 0-based position i
            return sum(1 for c in before[:i] if c not in subset)

        if kind == "cup":
            if after[arg - 1] not in subset:
                out.append(("cup", kept_before(arg - 1) + 1))
        elif kind == "cap":
            if before[arg - 1] not in subset:
                out.append(("cap", kept_before(arg - 1) + 1))
        elif kind in CROSSINGS:
            if before[arg - 1] not in subset and before[arg] not in subset:
                out.append((kind, kept_before(arg - 1) + 1))
        elif kind == "rot":
            if before:
                moving = before[-1] if arg > 0 else before[0]
                if moving not in subset:
                    out.append(("rot", arg))
        elif kind == "core":
            if cmap.core_components[idx] not in subset:
                out.append(("core", arg))
    return MorseWord(word.ambient, word.bottom, word.top, tuple(out))


# ---------------------------------------------------------------------------
# rewrites

def core_slices(k: int, kind: str) -> list[Slice]:
    """The core circle on k strands as cup, crossings, rot and cap.

    A cup is opened right of strand k, its left leg travels leftwards past
    every strand (in front for ``over``), and the two legs are joined across
    the seam.
    """
    leg_crossing = "under" if kind == "over" else "over"
    seq: list[Slice] = [("cup", k + 1)]
    for p in range(k, 0, -1):
        seq.append((leg_crossing, p))
    seq.append(("rot", 1))
    seq.append(("cap", 1))
    return seq


def expand_cores(word: MorseWord) -> MorseWord:
    counts = strand_counts(word.ambient, word.bottom, word.slices)
    out: list[Slice] = []
    for idx, s in enumerate(word.slices):
        if s[0] == "core":
            out.extend(core_slices(counts[idx], s[1]))
        else:
            out.append(s)
    return MorseWord(word.ambient, word.bottom, word.top, tuple(out))


def mirror(word: MorseWord) -> MorseWord:
    """Swap every crossing (and core layer)."""
    flip = {"over": "under", "under": "over"}
    out = []
    for kind, arg in word.slices:
        if kind in CROSSINGS:
            out.append((flip[kind], arg))
        elif kind == "core":
            out.append(("core", flip[arg]))
        else:
            out.append((kind, arg))
    return MorseWord(word.ambient, word.bottom, word.top, tuple(out))


def identity_word(ambient: str, k: int) -> MorseWord:
    return MorseWord(ambient, k, k, ())


def disjoint_union(w1: MorseWord, w2: MorseWord) -> MorseWord:
    """Place closed word ``w2`` to the right of ``w1`` (split union in the disk)."""
    if w2.bottom or w2.top:
        raise WordValidationError("only closed words can be placed side by side")
    return MorseWord(w1.ambient, w1.bottom, w1.top, w1.slices + _offset(w2.slices, w1.top))


def _offset(slices: Sequence[Slice], k: int) -> tuple[Slice, ...]:
    out = []
    for kind, arg in slices:
        if kind in ("cup", "cap") + CROSSINGS:
            out.append((kind, arg + k))
        else:
            raise WordValidationError("cannot offset rot/core slices")
    return tuple(out)


# ---------------------------------------------------------------------------
# random words

def random_word(rng: random.Random, ambient: str = "disk", bottom: int = 0, top: int = 0,
                max_crossings: int = 8, max_strands: int = 6, length: int = 14,
                allow_core: bool = True) -> MorseWord:
    """A random valid word; closes up to ``top`` strands at the end."""
    slices: list[Slice] = []
    k = bottom
    crossings = 0
    for _ in range(length):
        choices = []
        if k + 2 <= max_strands:
            choices += ["cup"] * 2
        if k >= 2:
            choices += ["cap"]
            if crossings < max_crossings:
                choices += ["over", "under"] * 2
        if ambient == "annulus":
            choices += ["rot"]
            if allow_core and crossings + k <= max_crossings and k <= 3:
                choices += ["core"]
        if not choices:
            break
        kind = rng.choice(choices)
        if kind == "cup":
            slices.append(("cup", rng.randint(1, k + 1)))
            k += 2
        elif kind == "cap":
            slices.append(("cap", rng.randint(1, k - 1)))
            k -= 2
        elif kind in CROSSINGS:
            slices.append((kind, rng.randint(1, k - 1)))
            crossings += 1
        elif kind == "rot":
            slices.append(("rot", rng.choice((1, -1))))
        else:
            slices.append(("core", rng.choice(CROSSINGS)))
            crossings += k
    while k > top + 1:
        slices.append(("cap", rng.randint(1, k - 1)))
        k -= 2
    while k < top:
        slices.append(("cup", rng.randint(1, k + 1)))
        k += 2
    if k != top:
        raise ValueError("parity of bottom and top must agree")
    return MorseWord(ambient, bottom, top, tuple(slices))
