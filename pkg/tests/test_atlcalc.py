from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from skeinlab import corpus
from skeinlab.atlcalc import (SIGMA_DENOMINATOR, ATLDiagram, ATLElement, StrandElement, apply_slices, boxtimes,
                              boxtimes_all, commutator, compose, compose_diagrams, dehn_twist, diagram_word,
                              generator, reduce_annulus, sigma, wrap_left, wrap_right)
from skeinlab.chebseries import cheb_T
from skeinlab.diagram import parse, random_word
from skeinlab.exactnum import A, A_INV, DELTA, LaurentPoly, ONE

R = LaurentPoly.monomial
r0 = ATLElement.identity(1)
loop = ATLElement.from_loop_poly({1: 1})


def strand(*terms):
    """StrandElement from (A exponent, r exponent, coefficient) triples."""
    return StrandElement({(e, k): c for e, k, c in terms})


def _random_element(rng: random.Random, k: int, max_crossings: int = 3) -> ATLElement:
    return reduce_annulus(random_word(rng, "annulus", k, k, max_crossings=max_crossings, length=8,
                                      allow_core=False))


def test_rotation_composition():
    for k in (1, 2, 3):
        for s, t in ((1, 2), (-1, 1), (3, -5)):
            d, loops = compose_diagrams(ATLDiagram.rotation(k, s), ATLDiagram.rotation(k, t))
            assert (d, loops) == (ATLDiagram.rotation(k, s + t), 0)
    assert ATLDiagram.rotation(2, 1).rotation_index() == 1
    assert ATLDiagram.rotation(2, -3).rotation_index() == -3


def test_cup_cap_gives_contractible_loop():
    assert compose_diagrams(generator("cup", 1, 0), generator("cap", 3, 0)) == (ATLDiagram.identity(1), 1)
    assert reduce_annulus(parse("annulus 0 0; cup 1; cap 1")) == ATLElement.from_loop_poly({0: DELTA})


def test_seam_cap_gives_essential_loop():
    # a cup whose legs close up around the seam is the core
    assert reduce_annulus(parse("annulus 0 0; cup 1; rot +1; cap 1")) == loop
    assert reduce_annulus(corpus.get("core")) == loop
    assert reduce_annulus(corpus.get("core_squared")) == ATLElement.from_loop_poly({2: 1})
    e = reduce_annulus(corpus.get("core_and_kinked_loop"))
    assert e == ATLElement.from_loop_poly({1: R(-6) * DELTA})


def test_diagram_validation():
    with pytest.raises(ValueError):
        ATLDiagram(1, 1, ((1, 0, 0), (0, 0, 1)))
    with pytest.raises(ValueError):
        ATLDiagram(1, 1, ((1, 0, 0), (0, 0, 0)), loops=1)


def test_strand_examples():
    assert StrandElement.from_atl(reduce_annulus(corpus.get("r1"))) == StrandElement.r_power(1)
    assert StrandElement.from_atl(reduce_annulus(corpus.get("r-1"))) == StrandElement.r_power(-1)
    # the strand crosses a cup leg that is then closed across the seam
    assert StrandElement.from_atl(reduce_annulus(corpus.get("strand_across_seam"))) == strand((-1, 0, 1), (1, -2, 1))


def test_wrap_formulas():
    assert StrandElement.from_atl(wrap_left(loop, r0)) == strand((1, 1, 1), (-1, -1, 1))
    assert StrandElement.from_atl(wrap_right(loop, r0)) == strand((-1, 1, 1), (1, -1, 1))
    assert reduce_annulus(corpus.get("wrapped_strand")) == wrap_left(loop, r0)
    assert StrandElement.from_atl(sigma(loop, r0)) == strand((0, -1, 1), (0, 1, -1))


def test_wrap_of_closed_element_is_product():
    assert wrap_left(loop, loop) == ATLElement.from_loop_poly({2: 1})
    assert wrap_right(loop, ATLElement.from_loop_poly({0: A})) == ATLElement.from_loop_poly({1: A})
    with pytest.raises(ValueError):
        wrap_left(r0, r0)


@pytest.mark.parametrize("n", range(0, 13))
def test_chebyshev_wrap_identity(n):
    # l acts on one strand as q + 1/q with q = A r, so T_n(l) acts as q^n + q^-n
    x = ATLElement.from_loop_poly(cheb_T(n).to_dict())
    assert StrandElement.from_atl(wrap_left(x, r0)) == strand((n, n, 1)) + strand((-n, -n, 1))


def test_loop_on_twisted_strand():
    t_r0 = dehn_twist(r0)
    assert StrandElement.from_atl(t_r0) == StrandElement.r_power(1)
    left = StrandElement.from_atl(wrap_left(loop, t_r0))
    # l r = A r^2 + A^-1 r^0
    assert left == strand((1, 2, 1), (-1, 0, 1))


def test_twist_and_inverse():
    for seed in range(10):
        v = _random_element(random.Random(seed), 2)
        assert dehn_twist(dehn_twist(v, 1), -1) == v
    with pytest.raises(ValueError):
        dehn_twist(r0, 2)
    assert dehn_twist(loop) == loop


def test_full_twist_on_two_strands():
    assert reduce_annulus(corpus.get("full_twist_2")) == dehn_twist(ATLElement.identity(2))
    x1 = boxtimes(dehn_twist(r0), r0)
    x2 = boxtimes(r0, dehn_twist(r0))
    assert compose(x1, x2) == compose(x2, x1) == dehn_twist(ATLElement.identity(2))


def test_diagram_word_round_trip():
    rng = random.Random(3)
    seen = 0
    for _ in range(60):
        k = rng.choice([0, 1, 2, 3])
        top = rng.choice([t for t in range(0, 5) if (t + k) % 2 == 0])
        v = reduce_annulus(random_word(rng, "annulus", k, top, max_crossings=3, length=10))
        for d in v.terms:
            word = diagram_word(d)
            assert all(kind in ("cup", "cap", "rot") for kind, _ in word)
            assert apply_slices(ATLElement.identity(d.bottom), word) == ATLElement.basis(d)
            seen += 1
    assert seen > 60


def test_boxtimes_identity_and_order():
    assert boxtimes(r0, r0) == ATLElement.identity(2)
    assert boxtimes_all([r0, r0, r0]) == ATLElement.identity(3)
    # in front versus behind a single strand
    assert boxtimes(loop, r0) == wrap_left(loop, r0)
    assert boxtimes(r0, loop) == wrap_right(loop, r0)
    with pytest.raises(ValueError):
        boxtimes(r0, r0, positions_v=[0], positions_w=[0])


@settings(max_examples=100)
@given(st.integers(0, 10 ** 6))
def test_boxtimes_commutator_divisible(seed):
    rng = random.Random(seed)
    v = _random_element(rng, rng.choice([0, 1]), 2)
    w = _random_element(rng, 1, 2)
    total = v.bottom + w.bottom
    slots = list(range(total))
    rng.shuffle(slots)
    pv, pw = sorted(slots[:v.bottom]), sorted(slots[v.bottom:])
    diff = boxtimes(v, w, pv, pw) - boxtimes(w, v, pw, pv)
    assert diff.divide(SIGMA_DENOMINATOR).scale(SIGMA_DENOMINATOR) == diff


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_sigma_commutes_with_vertical_composition(seed):
    # the closed element slides radially in front of (or behind) everything
    rng = random.Random(seed)
    k = rng.choice([1, 2])
    v, w = _random_element(rng, k), _random_element(rng, k)
    x = ATLElement.from_loop_poly({1: 1, 2: rng.randint(-2, 2)})
    lhs = sigma(x, compose(v, w))
    assert lhs == compose(sigma(x, v), w) == compose(v, sigma(x, w))


def test_commutator_vanishes_for_closed():
    assert not commutator(loop, ATLElement.from_loop_poly({3: A}))


def test_strand_element_algebra():
    a = strand((1, 1, 2), (0, -1, 1))
    assert a * StrandElement.r_power(0) == a
    assert (a ** 2) == a * a
    assert a.shift_r(2) == a * StrandElement.r_power(2)
    assert StrandElement.from_atl(a.to_atl()) == a
    assert (a * (A - A_INV)).divide(A - A_INV) == a
    assert hash(a) == hash(strand((1, 1, 2), (0, -1, 1)))
    assert StrandElement.r_power(2, ONE + A).by_r_power() == {2: ONE + A}
