from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import algebra_valuation, strand_valuation
from skeinlab import corpus
from skeinlab.atlcalc import ATLElement, StrandElement, dehn_twist, reduce_annulus, sigma
from skeinlab.conventions import DEFAULT_PROFILE, Profile
from skeinlab.diagram import WordValidationError, components, parse
from skeinlab.exactnum import A, DELTA, LaurentPoly, UniPoly, divisibility_order
from skeinlab.filtration import (A_PLUS_ONE, Certificate, CertificateTerm, ValuationReport, combination_bracket,
                                 epsilon, finite_type_sum, left_wrap_shift, star_element, valuation_algebra,
                                 valuation_strand)
from skeinlab.tlcalc import bracket

CAP = 8
L_PLUS_2 = UniPoly([2, 1])


def closed(poly: UniPoly) -> ATLElement:
    return ATLElement.from_loop_poly(poly.to_dict())


def _random_closed(rng: random.Random, low: int = 0) -> ATLElement:
    """A random combination of A^e (A+1)^i (l+2)^j with i + j >= low and i, j <= 4."""
    acc = UniPoly([])
    for _ in range(rng.randint(1, 3)):
        i, j = rng.randint(0, 4), rng.randint(0, 4)
        if i + j < low:
            i = low - j if low - j <= 4 else 4
            j = max(j, low - i)
        coeff = A_PLUS_ONE ** i * LaurentPoly.monomial(rng.randint(-3, 3)) * rng.choice([1, -1, 2, Fraction(1, 3)])
        acc = acc + (L_PLUS_2 ** j) * coeff
    return closed(acc)


def _s() -> StrandElement:
    k = left_wrap_shift(DEFAULT_PROFILE)
    return StrandElement({(k, 1): 1, (0, 0): 1})


def _random_strand(rng: random.Random) -> StrandElement:
    """A random combination of A^e r^f (A+1)^i s^j with i, j <= 4."""
    acc = StrandElement()
    for _ in range(rng.randint(1, 3)):
        i, j = rng.randint(0, 4), rng.randint(0, 4)
        unit = StrandElement({(rng.randint(-3, 3), rng.randint(-2, 2)): rng.choice([1, -1, 3])})
        acc = acc + unit * (_s() ** j) * (A_PLUS_ONE ** i)
    return acc


def _v_alg(x: ATLElement) -> int:
    v = valuation_algebra(x, CAP).valuation
    return CAP if v is None else v


def _v_str(x: StrandElement) -> int:
    v = valuation_strand(x, CAP).valuation
    return CAP if v is None else v


def test_epsilon():
    assert epsilon(ATLElement.from_loop_poly({0: 1})) == 1
    assert epsilon(ATLElement.from_loop_poly({1: 1})) == -2
    assert epsilon(ATLElement.from_loop_poly({2: A})) == -4
    assert epsilon(reduce_annulus(corpus.get("core_and_kinked_loop"))) == 4
    with pytest.raises(ValueError):
        epsilon(ATLElement.identity(1))


def test_algebra_valuation_examples():
    assert valuation_algebra(closed(L_PLUS_2), 4).valuation == 1
    assert valuation_algebra(closed(L_PLUS_2 ** 3), 4).valuation == 3
    assert valuation_algebra(ATLElement.from_loop_poly({0: DELTA + 2}), 4).valuation == 2
    assert valuation_algebra(ATLElement.from_loop_poly({0: 1}), 4).valuation == 0
    report = valuation_algebra(closed(L_PLUS_2 ** 5), 4)
    assert report.at_least_cap and report.at_least(4) and report.to_json()["valuation"] == ">=4"
    with pytest.raises(ValueError):
        report.at_least(5)
    with pytest.raises(ValueError):
        valuation_algebra(ATLElement.identity(1), 3)


def test_strand_valuation_examples():
    r = StrandElement.r_power
    assert valuation_strand(r(0), 4).valuation == 0
    assert valuation_strand(r(1) - r(0), 4).valuation == 0
    assert valuation_strand(_s() ** 2, 4).valuation == 1
    assert valuation_strand((r(1) - r(0)) * (r(1) - r(0)), 4).valuation == 1
    assert valuation_strand(r(0) * A_PLUS_ONE, 4).valuation == 1
    assert valuation_strand(StrandElement(), 4).at_least_cap


def test_wrap_shift_under_profiles():
    assert left_wrap_shift(DEFAULT_PROFILE) == 1
    assert left_wrap_shift(Profile(1, 1)) == -1


@settings(max_examples=100)
@given(st.integers(0, 10 ** 6))
def test_valuations_match_binomial_oracles(seed):
    rng = random.Random(seed)
    x = _random_closed(rng)
    coeffs = {j: dict(c.items()) for j, c in x.loop_coefficients().items()}
    assert valuation_algebra(x, CAP).valuation == algebra_valuation(coeffs, CAP)
    v = _random_strand(rng)
    assert valuation_strand(v, CAP).valuation == strand_valuation(v.terms, CAP)


@settings(max_examples=100)
@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_certificate_elements_are_in_the_filtration(seed, n):
    rng = random.Random(seed)
    assert _v_alg(_random_closed(rng, n)) >= n


@settings(max_examples=100)
@given(st.integers(0, 10 ** 6))
def test_product_is_superadditive(seed):
    rng = random.Random(seed)
    x, y = _random_closed(rng), _random_closed(rng)
    prod = closed(UniPoly.from_dict(x.loop_coefficients()) * UniPoly.from_dict(y.loop_coefficients()))
    assert _v_alg(prod) >= min(CAP, _v_alg(x) + _v_alg(y))
    v, w = _random_strand(rng), _random_strand(rng)
    assert _v_str(v * w) >= min(CAP, _v_str(v) + _v_str(w))


@settings(max_examples=100)
@given(st.integers(0, 10 ** 6))
def test_sigma_bound(seed):
    rng = random.Random(seed)
    x = _random_closed(rng)
    v = _random_strand(rng)
    i, j = _v_alg(x), _v_str(v)
    out = StrandElement.from_atl(sigma(x, v.to_atl()))
    assert _v_str(out) >= min(CAP - 1, max(i + j - 1, i - 1, j))


@settings(max_examples=100)
@given(st.integers(0, 10 ** 6))
def test_twist_preserves_valuation(seed):
    v = _random_strand(random.Random(seed))
    for direction in (1, -1):
        twisted = StrandElement.from_atl(dehn_twist(v.to_atl(), direction))
        assert _v_str(twisted) == _v_str(v)


def test_star_element_weights():
    hopf = corpus.get("hopf")
    terms = star_element(hopf, [0, 1])
    assert sorted(w for w, _ in terms) == [1, 2, 2, 4]
    assert combination_bracket(terms) == bracket(hopf) + DELTA * 4 + 4
    with pytest.raises(WordValidationError):
        star_element(corpus.get("wrapped_strand"), [0])


@pytest.mark.parametrize("parts", [
    ["unknot", "unknot"], ["trefoil", "unknot", "hopf"], ["trefoil", "hopf"], ["unknot", "trefoil", "unknot"],
])
def test_star_product_identity(parts):
    # marking every split piece but the last gives prod (K(K_i) + 2) * K(rest)
    words = [corpus.WORDS[p] for p in parts]
    union = parse(corpus.split_union(*words))
    pieces = [parse(w) for w in words]
    sizes = [len(components(p)) for p in pieces]
    # mark the components belonging to all pieces except the last
    marked_sets = []
    start = 0
    for size in sizes[:-1]:
        marked_sets.append(list(range(start, start + size)))
        start += size
    if any(len(m) != 1 for m in marked_sets):
        pytest.skip("each marked piece must be a knot")
    marked = [m[0] for m in marked_sets]
    want = bracket(pieces[-1])
    for p in pieces[:-1]:
        want = want * (bracket(p) + 2)
    assert combination_bracket(star_element(union, marked)) == want


@pytest.mark.parametrize("name", ["unlink2", "unlink3", "unlink4", "hopf", "hopf_chain3", "hopf_chain4",
                                  "twisted_chain3", "hopf_plus_unknot"])
def test_star_divisibility(name):
    w = corpus.get(name)
    for m in range(1, min(3, len(components(w))) + 1):
        value = combination_bracket(star_element(w, range(m)))
        assert divisibility_order(value, A_PLUS_ONE) >= m


@pytest.mark.parametrize("name,n", [
    ("unlink2", 1), ("unlink6", 5), ("hopf", 1), ("hopf_chain3", 2), ("hopf_chain6", 5),
    ("twisted_chain5", 4), ("hopf_plus_unknot", 2), ("unlink4", 3),
])
def test_finite_type_sums(name, n):
    res = finite_type_sum(corpus.get(name), n)
    assert res.divisible and res.divisibility >= n
    assert res.to_json()["divisible"] is True


def test_finite_type_unlink_value():
    # each unknot contributes (K(O) + 2) = -(A - A^-1)^2, with (A+1)-order 2
    res = finite_type_sum(corpus.get("unlink3"), 2)
    assert res.value == (DELTA + 2) ** 3
    assert res.divisibility == 6


def test_finite_type_rejects_small_links():
    with pytest.raises(ValueError):
        finite_type_sum(corpus.get("hopf"), 2)
    with pytest.raises(WordValidationError):
        finite_type_sum(corpus.get("kink_strand"), 0)


def test_certificate_bookkeeping():
    terms = [CertificateTerm(LaurentPoly.const(1), 1, (1, 0)), CertificateTerm(LaurentPoly.const(2), 0, (1, 1))]
    cert = Certificate(2, terms, exact=True)
    assert cert.min_grade == 2 and cert.valid
    assert not Certificate(3, terms, exact=True).valid
    assert not Certificate(2, terms, exact=False).valid
    assert ValuationReport("x", 2, "strand", 4).to_json()["valuation"] == 2
