"""Named Morse words used by the tests, demos and the command line.

Disk links are built from stacked cups and caps; two unknots are clasped by
a pair of crossings between the right leg of one and the left leg of the
next.  A name can be looked up with ``corpus:<name>`` wherever the command
line expects a word file.
"""

from __future__ import annotations

from .diagram import MorseWord, parse

UNKNOT = "disk 0 0; cup 1; cap 1"
HOPF = "disk 0 0; cup 1; cup 3; over 2; over 2; cap 3; cap 1"
TREFOIL = "disk 0 0; cup 1; cup 3; over 2; over 2; over 2; cap 3; cap 1"
KINKED_UNLINK = "disk 0 0; cup 1; cup 2; over 2; over 2; cap 2; cap 1"
KINK_STRAND = "disk 1 1; cup 2; over 1; cap 2"


def unlink(n: int) -> str:
    """n split unknots, stacked one after another."""
    if n < 0:
        raise ValueError("component count must be >= 0")
    return "disk 0 0" + "; cup 1; cap 1" * n


def hopf_chain(n: int, clasp: str = "over") -> str:
    """A chain of n unknots, each clasped to the next."""
    if n < 1:
        raise ValueError("a chain needs at least one component")
    parts = ["disk 0 0", "cup 1"]
    for _ in range(n - 1):
        parts += ["cup 3", f"{clasp} 2", f"{clasp} 2", "cap 1"]
    parts.append("cap 1")
    return "; ".join(parts)


def twisted_chain(n: int) -> str:
    """A chain whose clasps alternate between the two crossing types."""
    if n < 1:
        raise ValueError("a chain needs at least one component")
    parts = ["disk 0 0", "cup 1"]
    for i in range(n - 1):
        c = "over" if i % 2 == 0 else "under"
        parts += ["cup 3", f"{c} 2", f"{c} 2", "cap 1"]
    parts.append("cap 1")
    return "; ".join(parts)


def split_union(*texts: str) -> str:
    """Closed disk words placed one after another (split union)."""
    slices = []
    for t in texts:
        head, _, rest = t.partition(";")
        if head.split()[1:] != ["0", "0"]:
            raise ValueError("split_union needs closed words")
        if rest.strip():
            slices.append(rest.strip())
    return "disk 0 0; " + "; ".join(slices) if slices else "disk 0 0"


ANNULUS = {
    "core": "annulus 0 0; core over",
    "core_squared": "annulus 0 0; core over; core under",
    "r1": "annulus 1 1; rot +1",
    "r-1": "annulus 1 1; rot -1",
    "wrapped_strand": "annulus 1 1; core over",
    "double_crossing": "annulus 2 2; over 1; over 1",
    "full_twist_2": "annulus 2 2; rot +1; rot +1",
    "core_and_kinked_loop": "annulus 0 0; cup 1; core over; over 1; over 1; cap 1",
    "strand_across_seam": "annulus 1 1; cup 2; over 1; rot +1; cap 1; rot -1",
}

DISK = {
    "unknot": UNKNOT,
    "hopf": HOPF,
    "trefoil": TREFOIL,
    "kinked_unlink": KINKED_UNLINK,
    "kink_strand": KINK_STRAND,
    "hopf_plus_unknot": split_union(HOPF, UNKNOT),
    **{f"unlink{n}": unlink(n) for n in range(1, 7)},
    **{f"hopf_chain{n}": hopf_chain(n) for n in range(2, 7)},
    **{f"twisted_chain{n}": twisted_chain(n) for n in range(2, 6)},
}

WORDS = {**DISK, **ANNULUS}


def get(name: str) -> MorseWord:
    try:
        return parse(WORDS[name])
    except KeyError:
        raise KeyError(f"no corpus word named {name!r}") from None


def names(ambient: str | None = None) -> list[str]:
    if ambient == "disk":
        return sorted(DISK)
    if ambient == "annulus":
        return sorted(ANNULUS)
    return sorted(WORDS)
