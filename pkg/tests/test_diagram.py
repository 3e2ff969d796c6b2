from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from skeinlab import corpus
from skeinlab.diagram import (MorseWord, WordSyntaxError, WordValidationError, components, core_slices,
                              delete_components, disjoint_union, expand_cores, format_word, identity_word,
                              mirror, parse, random_word, strand_counts)


def test_parse_round_trip_corpus():
    for name in corpus.names():
        w = corpus.get(name)
        assert parse(format_word(w)) == w


@given(st.integers(0, 10_000), st.sampled_from(["disk", "annulus"]), st.integers(0, 3))
def test_parse_round_trip_random(seed, ambient, bottom):
    w = random_word(random.Random(seed), ambient, bottom, bottom % 2)
    assert parse(str(w)) == w


def test_parse_whitespace_comments_and_newlines():
    text = "# a hopf link\ndisk 0 0;\n  cup 1; cup 3   # two cups\n; over 2; over 2;\ncap 3; cap 1;\n"
    assert parse(text) == parse(corpus.HOPF)


@pytest.mark.parametrize("text,line,column", [
    ("", 1, 1),
    ("plane 0 0", 1, 1),
    ("disk 0", 1, 6),
    ("disk 0 x", 1, 8),
    ("disk 0 0; cup", 1, 11),
    ("disk 0 0; cup 1 2", 1, 17),
    ("disk 0 0; swap 1", 1, 11),
    ("disk 0 0;\ncup 1;\n  cap q", 3, 7),
    ("disk 0 0; cup 1; cap $", 1, 22),
    ("annulus 0 0; rot 2", 1, 18),
    ("annulus 0 0; core sideways", 1, 19),
])
def test_syntax_errors_carry_position(text, line, column):
    with pytest.raises(WordSyntaxError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert info.value.to_json()["line"] == line


@pytest.mark.parametrize("text", [
    "disk 0 0; cap 1",
    "disk 0 2; cup 1; cap 1",
    "disk 1 0",
    "disk 0 0; cup 3",
    "disk 0 0; rot +1",
    "disk 0 0; core over",
    "disk 2 2; over 2",
])
def test_validation_errors(text):
    with pytest.raises(WordValidationError):
        parse(text)


def test_validation_error_reports_slice():
    with pytest.raises(WordValidationError) as info:
        parse("disk 0 0; cup 1; cap 1; cap 1")
    assert info.value.slice_index == 2


def test_strand_counts_and_crossings():
    w = parse(corpus.HOPF)
    assert strand_counts(w.ambient, w.bottom, w.slices) == [0, 2, 4, 4, 4, 2, 0]
    assert w.crossing_count() == 2 and w.is_closed
    assert parse(corpus.ANNULUS["core"]).crossing_count() == 0


@pytest.mark.parametrize("name,count", [
    ("unknot", 1), ("hopf", 2), ("trefoil", 1), ("kinked_unlink", 2), ("hopf_plus_unknot", 3),
    ("unlink4", 4), ("hopf_chain5", 5), ("twisted_chain3", 3), ("core", 1), ("core_squared", 2),
    ("core_and_kinked_loop", 2), ("r1", 1), ("wrapped_strand", 2),
])
def test_component_counts(name, count):
    assert len(components(corpus.get(name))) == count


def test_component_kinds():
    cmap = components(corpus.get("wrapped_strand"))
    assert cmap.open == [0] and cmap.closed == [1]
    assert cmap.components[1].is_core
    cmap = components(parse("annulus 2 0; cup 1; cap 2; cap 1"))
    assert cmap.open == [0] and cmap.closed == []
    cmap = components(parse("annulus 2 0; cup 3; cap 3; cap 1"))
    assert cmap.open == [0] and cmap.closed == [1]


def test_delete_components():
    hopf = corpus.get("hopf")
    for c in range(2):
        assert delete_components(hopf, [c]) == parse("disk 0 0; cup 1; cap 1")
    assert delete_components(hopf, [0, 1]) == parse("disk 0 0")
    assert delete_components(hopf, []) is hopf
    chain = corpus.get("hopf_chain3")
    middle_gone = delete_components(chain, [1])
    assert len(components(middle_gone)) == 2 and middle_gone.crossing_count() == 0
    kinked = corpus.get("core_and_kinked_loop")
    assert delete_components(kinked, [1]) == parse("annulus 0 0; cup 1; over 1; over 1; cap 1")
    assert delete_components(kinked, [0]) == parse("annulus 0 0; core over")
    with pytest.raises(WordValidationError):
        delete_components(corpus.get("wrapped_strand"), [0])
    with pytest.raises(WordValidationError):
        delete_components(hopf, [5])


def test_core_expansion():
    assert core_slices(0, "over") == [("cup", 1), ("rot", 1), ("cap", 1)]
    assert core_slices(2, "over") == [("cup", 3), ("under", 2), ("under", 1), ("rot", 1), ("cap", 1)]
    w = expand_cores(corpus.get("wrapped_strand"))
    assert all(k != "core" for k, _ in w.slices) and len(components(w)) == 2


def test_mirror_union_identity():
    h = corpus.get("hopf")
    assert mirror(mirror(h)) == h
    assert mirror(h).slices[2] == ("under", 2)
    u = disjoint_union(h, corpus.get("unknot"))
    assert len(components(u)) == 3
    assert identity_word("annulus", 3) == MorseWord("annulus", 3, 3, ())
    with pytest.raises(WordValidationError):
        disjoint_union(h, identity_word("disk", 2))
    assert corpus.get("unknot").then(identity_word("disk", 0)) == corpus.get("unknot")


def test_random_word_respects_limits():
    rng = random.Random(7)
    for _ in range(100):
        w = random_word(rng, "annulus", 2, 0, max_crossings=5)
        assert w.top == 0 and expand_cores(w).crossing_count() <= 5 + 6
        assert w.crossing_count() <= 5
    with pytest.raises(ValueError):
        random_word(rng, "disk", 1, 0)


def test_corpus_lookup():
    with pytest.raises(KeyError):
        corpus.get("nope")
    assert set(corpus.names("disk")) | set(corpus.names("annulus")) == set(corpus.names())
    assert corpus.split_union(corpus.UNKNOT, corpus.UNKNOT) == corpus.unlink(2)
