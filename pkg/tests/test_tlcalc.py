from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from skeinlab import corpus
from skeinlab.conventions import ALL_PROFILES, DEFAULT_PROFILE, Profile
from skeinlab.diagram import MorseWord, WordValidationError, components, disjoint_union, mirror, parse, random_word
from skeinlab.exactnum import A, A_INV, DELTA, LaurentPoly, ONE, divisibility_order, laurent_eval_at_minus_one
from skeinlab.filtration import A_PLUS_ONE
from skeinlab.tlcalc import (TLElement, TLMatching, bracket, compose_matchings, generator, reduce_disk,
                             star_bracket)

R = LaurentPoly.monomial


def _closed_random(seed: int, max_crossings: int = 10) -> MorseWord:
    return random_word(random.Random(seed), "disk", 0, 0, max_crossings=max_crossings, length=16)


def test_unknot_and_empty():
    assert bracket(parse("disk 0 0")) == ONE
    assert bracket(corpus.get("unknot")) == DELTA
    assert bracket(corpus.get("unlink3")) == DELTA ** 3


def test_frozen_link_values():
    assert bracket(corpus.get("hopf")) == R(6) + R(2) + R(-2) + R(-6)
    assert bracket(corpus.get("hopf")) == DELTA * (-R(4) - R(-4))
    assert bracket(corpus.get("trefoil")) == R(7) + R(3) + R(-1) - R(-9)
    assert bracket(mirror(corpus.get("trefoil"))) == R(-7) + R(-3) + R(1) - R(9)
    assert bracket(corpus.get("kinked_unlink")) == R(-6) * DELTA ** 2


@pytest.mark.parametrize("kind,factor", [("over", -A ** 3), ("under", -A_INV ** 3)])
def test_kink_removal(kind, factor):
    kinked = reduce_disk(parse(f"disk 1 1; cup 2; {kind} 1; cap 2"))
    assert kinked == TLElement.identity(1).scale(factor)
    other_side = reduce_disk(parse(f"disk 1 1; cup 1; {kind} 2; cap 1"))
    assert other_side.scale(factor) == TLElement.identity(1).scale(factor * factor)


def test_second_move():
    assert reduce_disk(parse("disk 2 2; over 1; under 1")) == TLElement.identity(2)
    assert reduce_disk(parse("disk 2 2; under 1; over 1")) == TLElement.identity(2)


def test_third_move():
    lhs = reduce_disk(parse("disk 3 3; over 1; over 2; over 1"))
    rhs = reduce_disk(parse("disk 3 3; over 2; over 1; over 2"))
    assert lhs == rhs
    lhs = reduce_disk(parse("disk 3 3; under 1; under 2; under 1"))
    rhs = reduce_disk(parse("disk 3 3; under 2; under 1; under 2"))
    assert lhs == rhs


def test_temperley_lieb_relations():
    k = 4
    e = [generator("e", k, p) for p in range(k - 1)]
    for p in range(k - 1):
        d, loops = compose_matchings(e[p], e[p])
        assert (d, loops) == (e[p], 1)
    for p in range(k - 2):
        d, _ = compose_matchings(compose_matchings(e[p], e[p + 1])[0], e[p])
        assert d == e[p]
    d1, _ = compose_matchings(e[0], e[2])
    d2, _ = compose_matchings(e[2], e[0])
    assert d1 == d2
    assert compose_matchings(generator("cup", 0), generator("cap", 2)) == (TLMatching.identity(0), 1)


def test_matching_validation():
    with pytest.raises(ValueError):
        TLMatching(2, 2, (3, 2, 1, 0))  # crossing pairs
    with pytest.raises(ValueError):
        TLMatching(1, 0, (0,))
    assert TLMatching.identity(2).through_count() == 2
    assert generator("e", 2, 0).through_count() == 0
    assert generator("e", 2, 0).to_json() == {"bottom": 2, "top": 2, "pairs": [[0, 1], [2, 3]]}


def test_crossing_change_local():
    diff = reduce_disk(parse("disk 2 2; over 1")) - reduce_disk(parse("disk 2 2; under 1"))
    e = reduce_disk(parse("disk 2 2; cap 1; cup 1"))
    assert diff == (TLElement.identity(2) - e).scale(A - A_INV)


@settings(max_examples=100)
@given(st.integers(0, 10 ** 6))
def test_crossing_change_in_context(seed):
    rng = random.Random(seed)
    below = random_word(rng, "disk", 0, 4, max_crossings=4, length=8)
    above = random_word(rng, "disk", 4, 0, max_crossings=4, length=8)
    p = rng.randint(1, 3)

    def closed(mid):
        return bracket(MorseWord("disk", 0, 0, below.slices + tuple(mid) + above.slices))

    lhs = closed([("over", p)]) - closed([("under", p)])
    rhs = (closed([]) - closed([("cap", p), ("cup", p)])) * (A - A_INV)
    assert lhs == rhs


def test_augmentation_of_brackets_on_random_words():
    for seed in range(200):
        w = _closed_random(seed)
        assert w.crossing_count() <= 10
        assert laurent_eval_at_minus_one(bracket(w)) == (-2) ** len(components(w))


def test_bracket_multiplicative_on_split_union():
    for seed in range(20):
        w1, w2 = _closed_random(seed, 4), _closed_random(seed + 1000, 4)
        assert bracket(disjoint_union(w1, w2)) == bracket(w1) * bracket(w2)


def test_mirror_inverts_a():
    for seed in range(20):
        w = _closed_random(seed, 5)
        assert bracket(mirror(w)) == LaurentPoly({-e: c for e, c in bracket(w).items()})


def test_profiles_differ_only_by_convention():
    hopf = corpus.get("hopf")
    values = {p: bracket(hopf, p) for p in ALL_PROFILES}
    assert values[DEFAULT_PROFILE] == values[Profile(0, -1)]
    assert values[Profile(1, 1)] == bracket(mirror(hopf))


def test_reduce_rejects_annulus_and_open_bracket():
    with pytest.raises(WordValidationError):
        reduce_disk(corpus.get("core"))
    with pytest.raises(WordValidationError):
        bracket(corpus.get("kink_strand"))


def test_star_bracket_examples():
    # one marked unknot: K + 2 = -(A - A^-1)^2
    assert star_bracket(corpus.get("unknot"), [0]) == DELTA + 2
    hopf = corpus.get("hopf")
    assert star_bracket(hopf, []) == bracket(hopf)
    assert star_bracket(hopf, [0, 1]) == bracket(hopf) + DELTA * 4 + 4
    with pytest.raises(WordValidationError):
        star_bracket(hopf, [2])


@pytest.mark.parametrize("name", ["unlink1", "unlink2", "unlink3", "hopf", "hopf_chain3", "twisted_chain3",
                                  "trefoil", "hopf_plus_unknot"])
def test_star_bracket_divisibility(name):
    w = corpus.get(name)
    n = len(components(w))
    for m in range(0, min(n, 3) + 1):
        marked = list(range(m))
        assert divisibility_order(star_bracket(w, marked), A_PLUS_ONE) >= m
