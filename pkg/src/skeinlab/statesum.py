"""Brute-force all-states oracle, independent of the slice reducers.

Every crossing is smoothed both ways (2^c states).  Each crossingless state
is evaluated by building the graph of arcs between consecutive levels and
walking it, accumulating the signed number of seam crossings.  Nothing here
uses diagram composition.
"""

from __future__ import annotations

from itertools import product

from .atlcalc import ATLDiagram, ATLElement
from .conventions import DEFAULT_PROFILE, Profile
from .diagram import CROSSINGS, MorseWord, expand_cores, strand_counts
from .exactnum import DELTA, LaurentPoly
from .tlcalc import TLElement, TLMatching

MAX_ORACLE_CROSSINGS = 16


def _smooth(slices, choice):
    """Replace crossings by (nothing) or (cap, cup) according to ``choice``."""
    out = []
    it = iter(choice)
    for kind, arg in slices:
        if kind in CROSSINGS:
            if next(it):
                out.append(("cap", arg))
                out.append(("cup", arg))
        else:
            out.append((kind, arg))
    return out


def walk_state(bottom: int, slices) -> tuple[list, int, int]:
    """Evaluate a crossingless primitive word by walking its arc graph.

    Returns (pairs, contractible loops, essential loops); ``pairs`` lists each
    boundary arc as ((side, pos), (side, pos), seam winding from first to
    second end).
    """
    counts = strand_counts("annulus", bottom, slices)
    top = counts[-1]
    if not slices:
        return [((0, q), (1, q), 0) for q in range(bottom)], 0, 0
    adj: dict = {}
    n_edges = 0

    def link(p, q, w):
        nonlocal n_edges
        adj.setdefault(p, []).append((n_edges, q, w))
        adj.setdefault(q, []).append((n_edges, p, -w))
        n_edges += 1

    for t, (kind, arg) in enumerate(slices):
        k = counts[t]
        if kind == "cup":
            p = arg - 1
            for q in range(k):
                link((t, q), (t + 1, q if q < p else q + 2), 0)
            link((t + 1, p), (t + 1, p + 1), 0)
        elif kind == "cap":
            p = arg - 1
            for q in range(k):
                if q < p:
                    link((t, q), (t + 1, q), 0)
                elif q > p + 1:
                    link((t, q), (t + 1, q - 2), 0)
            link((t, p), (t, p + 1), 0)
        elif kind == "rot":
            for q in range(k):
                dest = q + arg
                link((t, q), (t + 1, dest % k), dest // k)
        else:
            raise ValueError(f"unexpected slice {kind!r}")

    last = len(slices)
    visited = set()

    def walk(start):
        cur, came, wind = start, None, 0
        while True:
            visited.add(cur)
            step = next(((e, n, w) for e, n, w in adj.get(cur, []) if e != came), None)
            if step is None:
                return cur, wind
            came, cur = step[0], step[1]
            wind += step[2]
            if cur == start:
                return cur, wind

    def boundary(node):
        return (0, node[1]) if node[0] == 0 else (1, node[1])

    pairs = []
    for e in [(0, q) for q in range(bottom)] + [(last, q) for q in range(top)]:
        if e in visited:
            continue
        end, wind = walk(e)
        pairs.append((boundary(e), boundary(end), wind))
    contractible = essential = 0
    for node in list(adj):
        if node in visited:
            continue
        _, wind = walk(node)
        if wind == 0:
            contractible += 1
        else:
            essential += 1
    return pairs, contractible, essential


def state_sum(word: MorseWord, profile: Profile = DEFAULT_PROFILE):
    """Sum over all 2^c states; returns a TLElement (disk) or ATLElement (annulus)."""
    word = expand_cores(word)
    c = word.crossing_count()
    if c > MAX_ORACLE_CROSSINGS:
        raise ValueError(f"{c} crossings is too many for the state-sum oracle")
    crossing_kinds = [kind for kind, _ in word.slices if kind in CROSSINGS]
    out: dict = {}
    a, b = word.bottom, word.top
    for choice in product((0, 1), repeat=c):
        exp = 0
        for kind, e in zip(crossing_kinds, choice):
            e_id, e_e = profile.crossing_exponents(kind)
            exp += e_e if e else e_id
        pairs, contractible, essential = walk_state(a, _smooth(word.slices, choice))
        coeff = LaurentPoly.monomial(exp) * DELTA ** contractible
        if word.ambient == "disk":
            partner = [0] * (a + b)
            for (s1, p1), (s2, p2), _ in pairs:
                i, j = p1 + s1 * a, p2 + s2 * a
                partner[i], partner[j] = j, i
            key = TLMatching(a, b, tuple(partner))
        else:
            key = ATLDiagram.from_pairs(
                a, b, [((s1, p1), (s2, p2 + w * (a if s2 == 0 else b))) for (s1, p1), (s2, p2), w in pairs],
                essential)
        out[key] = out[key] + coeff if key in out else coeff
    if word.ambient == "disk":
        return TLElement(out, a, b)
    return ATLElement(out, a, b)
