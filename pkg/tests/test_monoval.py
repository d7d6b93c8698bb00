import random
from fractions import Fraction

import pytest

from degenskel import (
    INFINITY,
    BaseElement,
    MonomialWeights,
    MultivariatePoly,
    ValidationError,
    monomial_valuation,
    parse_polynomial,
    uniformizer,
)
from helpers import random_element, random_poly, random_weights


def test_eval_two_term_example():
    # f = t + T1*T2 at alpha = (1/4, 1/2): min(1 + 0, 0 + 3/4) = 3/4
    f = parse_polynomial("t + T1*T2")
    w = MonomialWeights((Fraction(1, 4), Fraction(1, 2)))
    assert monomial_valuation(w, f) == Fraction(3, 4)


def test_eval_constant_is_coefficient_valuation():
    rng = random.Random(11)
    for arity in range(5):
        w = random_weights(rng, arity)
        d = random_element(rng)
        f = MultivariatePoly.constant(arity, d)
        assert monomial_valuation(w, f) == d.valuation()


def test_eval_normalized_weights_give_uniformizer_value_one():
    # product of T_i^{N_i} has value sum(alpha_i * N_i) = 1
    cases = [
        ((Fraction(1, 4), Fraction(1, 2)), (2, 1)),
        ((Fraction(1, 3), Fraction(1, 6)), (1, 4)),
        ((Fraction(1, 2), Fraction(1, 4), Fraction(1, 12)), (1, 1, 3)),
    ]
    for alpha, mults in cases:
        w = MonomialWeights(alpha, mults)
        f = MultivariatePoly.monomial(len(mults), mults, 1)
        assert monomial_valuation(w, f) == 1


def test_eval_zero_polynomial():
    w = MonomialWeights((Fraction(1, 2),))
    assert monomial_valuation(w, MultivariatePoly(1)) == INFINITY


def test_arity_mismatch_is_rejected():
    w = MonomialWeights((Fraction(1, 2),))
    f = parse_polynomial("T1*T2")
    with pytest.raises(ValidationError):
        monomial_valuation(w, f)


def test_is_divisorial_documents_rationality():
    assert MonomialWeights((Fraction(1, 3), Fraction(1, 3))).is_divisorial()
    assert MonomialWeights((Fraction(1), Fraction(0))).is_divisorial()
    assert MonomialWeights(
        (Fraction(2, 5), Fraction(1, 5)), (1, 3)
    ).is_divisorial()


def test_restrict_to_support_drops_zero_weights():
    w = MonomialWeights((Fraction(1, 2), Fraction(0)))
    r = w.restrict_to_support()
    assert r.alpha == (Fraction(1, 2),)
    assert r.arity == 1


def test_restrict_to_support_preserves_eval():
    # (1/3, 1/3, 0) on f = T1*T2: both routes give 2/3
    w = MonomialWeights((Fraction(1, 3), Fraction(1, 3), Fraction(0)))
    f = parse_polynomial("T1*T2", arity=3)
    full = monomial_valuation(w, f)
    restricted = monomial_valuation(w.restrict_to_support(), f.restrict(w.support))
    assert full == restricted == Fraction(2, 3)


def test_all_zero_weights():
    w = MonomialWeights((Fraction(0), Fraction(0)))
    f = random_poly(random.Random(21), 2)
    expected = min(c.valuation() for c in f.terms.values())
    assert monomial_valuation(w, f) == expected
    r = w.restrict_to_support()
    assert r.arity == 0
    d = random_element(random.Random(22))
    assert monomial_valuation(r, MultivariatePoly.constant(0, d)) == d.valuation()


def test_restrict_rejects_polynomials_in_dropped_variables():
    w = MonomialWeights((Fraction(1, 2), Fraction(0)))
    f = parse_polynomial("T1*T2", arity=2)
    with pytest.raises(ValidationError):
        f.restrict(w.support)


def test_normalization_invariant_enforced():
    with pytest.raises(ValidationError):
        MonomialWeights((Fraction(1, 2), Fraction(1, 2)), (1, 3))
    with pytest.raises(ValidationError):
        MonomialWeights((Fraction(-1, 2), Fraction(1)))


def test_multiplicativity_sampled():
    rng = random.Random(31)
    for _ in range(300):
        arity = rng.randint(1, 4)
        w = random_weights(rng, arity)
        f, g = random_poly(rng, arity), random_poly(rng, arity)
        assert monomial_valuation(w, f * g) == monomial_valuation(
            w, f
        ) + monomial_valuation(w, g)


def test_subadditivity_sampled():
    rng = random.Random(41)
    for _ in range(300):
        arity = rng.randint(1, 4)
        w = random_weights(rng, arity)
        f, g = random_poly(rng, arity), random_poly(rng, arity)
        vf, vg = monomial_valuation(w, f), monomial_valuation(w, g)
        v = monomial_valuation(w, f + g)
        assert v >= min(vf, vg)
        if vf != vg:
            assert v == min(vf, vg)


def test_concavity_in_weights_sampled():
    rng = random.Random(51)
    for _ in range(300):
        arity = rng.randint(1, 4)
        w1, w2 = random_weights(rng, arity), random_weights(rng, arity)
        lam = Fraction(rng.randint(0, 6), 6)
        mixed = MonomialWeights(
            tuple(lam * a + (1 - lam) * b for a, b in zip(w1.alpha, w2.alpha))
        )
        f = random_poly(rng, arity)
        assert monomial_valuation(mixed, f) >= lam * monomial_valuation(
            w1, f
        ) + (1 - lam) * monomial_valuation(w2, f)


def test_monotonicity_in_weights_sampled():
    rng = random.Random(61)
    for _ in range(300):
        arity = rng.randint(1, 4)
        w = random_weights(rng, arity)
        bigger = MonomialWeights(
            tuple(a + Fraction(rng.randint(0, 4), 3) for a in w.alpha)
        )
        f = random_poly(rng, arity)
        assert monomial_valuation(w, f) <= monomial_valuation(bigger, f)


def test_polynomial_parser():
    f = parse_polynomial("t + T1*T2^2")
    assert f.arity == 2
    assert f.terms[(0, 0)] == uniformizer()
    assert f.terms[(1, 2)] == BaseElement(1)
    g = parse_polynomial("(1+t)*T1^2 - T1^2", arity=1)
    assert g == parse_polynomial("t*T1^2", arity=1)
    assert parse_polynomial("T2", arity=3).arity == 3


def test_polynomial_parser_rejects_bad_input():
    with pytest.raises(ValidationError):
        parse_polynomial("T1^-1")
    with pytest.raises(ValidationError):
        parse_polynomial("1/T1")
    with pytest.raises(ValidationError):
        parse_polynomial("T3", arity=2)
    with pytest.raises(ValidationError):
        parse_polynomial("0.5*T1")


def test_evaluate_substitution():
    rng = random.Random(71)
    t = uniformizer()
    f = parse_polynomial("T1^2 + t*T2")
    x1, x2 = random_element(rng), random_element(rng)
    assert f.evaluate([x1, x2]) == x1 * x1 + t * x2
