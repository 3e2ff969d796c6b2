from __future__ import annotations

import random

import pytest

from skeinlab import corpus
from skeinlab.atlcalc import reduce_annulus
from skeinlab.conventions import ALL_PROFILES
from skeinlab.diagram import expand_cores, parse, random_word
from skeinlab.statesum import MAX_ORACLE_CROSSINGS, state_sum, walk_state
from skeinlab.tlcalc import reduce_disk


def _reduce(word, profile):
    return reduce_disk(word, profile) if word.ambient == "disk" else reduce_annulus(word, profile)


@pytest.mark.parametrize("name", corpus.names())
def test_corpus_agrees_with_state_sum(name):
    w = corpus.get(name)
    assert expand_cores(w).crossing_count() <= 12
    assert state_sum(w) == _reduce(w, ALL_PROFILES[0])


@pytest.mark.parametrize("profile", ALL_PROFILES)
def test_random_words_agree_under_every_profile(profile):
    rng = random.Random(11)
    for _ in range(40):
        ambient = rng.choice(["disk", "annulus"])
        bottom = rng.randint(0, 3)
        top = rng.choice([t for t in range(0, 5) if (t + bottom) % 2 == 0])
        w = random_word(rng, ambient, bottom, top, max_crossings=6, length=12)
        assert state_sum(w, profile) == _reduce(w, profile)


def test_walk_counts_loops():
    pairs, contractible, essential = walk_state(0, [("cup", 1), ("cap", 1)])
    assert (pairs, contractible, essential) == ([], 1, 0)
    pairs, contractible, essential = walk_state(0, [("cup", 1), ("rot", 1), ("cap", 1)])
    assert (contractible, essential) == (0, 1)
    pairs, _, _ = walk_state(1, [("rot", 1), ("rot", 1)])
    assert len(pairs) == 1 and abs(pairs[0][2]) == 2


def test_oracle_refuses_large_words():
    w = parse("disk 2 2" + "; over 1" * (MAX_ORACLE_CROSSINGS + 1))
    with pytest.raises(ValueError):
        state_sum(w)
