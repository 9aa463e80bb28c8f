import itertools
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from pureshapes.densities import (
    Normalization,
    TooLarge,
    _literal_count,
    _transfer_count,
    complement_count,
    delta_q,
    delta_q_bruteforce,
    delta_q_expansion,
    euler_product,
    euler_tail_bound,
    predicted_constants,
    primes_up_to,
)


def _naive_fraction(q, n):
    """Literal definition, written independently of the library's helpers."""
    good = 0
    for t in itertools.product(range(q * q), repeat=n):
        if all(x != 0 for x in t) and sum(x % q == 0 for x in t) <= 1:
            good += 1
    return Fraction(good, q ** (2 * n))


def test_delta_q_examples():
    assert delta_q(2, 2) == Fraction(1, 2)
    assert delta_q(3, 2) == Fraction(20, 27)
    assert delta_q(2, 4) == Fraction(3, 16)
    with pytest.raises(ValueError):
        delta_q(4, 2)
    with pytest.raises(ValueError):
        delta_q(3, 1)


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 4), (5, 2), (3, 3)])
def test_bruteforce_matches_naive(q, n):
    assert delta_q_bruteforce(q, n) == _naive_fraction(q, n) == delta_q(q, n)


@pytest.mark.parametrize("q,n", [(2, 2), (2, 6), (3, 4), (5, 3), (7, 2)])
def test_literal_and_transfer_agree(q, n):
    assert _literal_count(q, n) == _transfer_count(q, n)


@pytest.mark.parametrize("q", [2, 3, 5, 7])
@pytest.mark.parametrize("n", [2, 4, 6])
def test_density_identity(q, n):
    assert delta_q(q, n) == delta_q_bruteforce(q, n)


def test_displayed_expansions():
    x = sympy.Symbol("x")
    assert delta_q_expansion(2) == [1, 0, -3, 2]
    assert delta_q_expansion(4) == [1, 0, -10, 20, -15, 4]
    for n in (2, 4):
        closed = sympy.expand((1 - x) ** n * (1 + n * x))
        assert [closed.coeff(x, k) for k in range(n + 2)] == delta_q_expansion(n)


@given(st.sampled_from([2, 3, 5, 7, 11, 101]), st.integers(2, 8))
def test_expansion_evaluates_to_delta(q, n):
    assert sum(Fraction(c, q**k) for k, c in enumerate(delta_q_expansion(n))) == delta_q(q, n)


@given(st.sampled_from([2, 3, 5, 7, 11]), st.integers(2, 8))
def test_complement_count(q, n):
    no_zero = (q * q - 1) ** n
    assert Fraction(no_zero - complement_count(q, n), q ** (2 * n)) == delta_q(q, n)


def test_bruteforce_limits():
    with pytest.raises(TooLarge):
        delta_q_bruteforce(17, 2)
    with pytest.raises(TooLarge):
        delta_q_bruteforce(3, 7)


def test_primes_up_to():
    assert primes_up_to(30).tolist() == list(sympy.primerange(2, 31))
    assert len(primes_up_to(1)) == 0
    assert len(primes_up_to(10**6)) == 78498


def test_euler_product_examples(frozen):
    assert euler_product(3, 2) == 0.5
    E = euler_product(3, 10**6)
    assert abs(E - 0.2867474) < 1e-6
    assert E == pytest.approx(frozen["euler_product_p3_Y1e6"], rel=1e-12)
    assert euler_product(3, 10**3) >= E
    with pytest.raises(ValueError):
        euler_product(3, 1)


def test_euler_product_exact_small_Y():
    exact = math.prod(delta_q(q, 4) for q in sympy.primerange(2, 200))
    assert euler_product(5, 199) == pytest.approx(float(exact), rel=1e-13)


def test_euler_tail_bound_covers_truncation():
    far = euler_product(3, 10**6)
    near = euler_product(3, 10**3)
    assert 0 < 1 - far / near <= euler_tail_bound(2, 10**3)


def test_predicted_constants_section_six():
    E = euler_product(3)
    c = predicted_constants(3)
    assert c.normalization is Normalization.SECTION_SIX
    assert c.c_wild == pytest.approx(2 / (15 * math.sqrt(3)) * E, rel=1e-13)
    c5 = predicted_constants(5)
    E5 = euler_product(5)
    assert c5.c_wild == pytest.approx(E5 / (225 * 5**0.25), rel=1e-13)
    assert c5.c_tame == pytest.approx(E5 / (360 * 5**0.75), rel=1e-13)
    assert 0 < c5.euler_product < 1 and c5.h_minus == 1


def test_predicted_constants_theorem_c():
    c = predicted_constants(3, normalization=Normalization.THEOREM_C)
    E = euler_product(3)
    assert c.c_wild == pytest.approx(E / 10, rel=1e-13)
    assert c.c_tame == pytest.approx(2 * E / 5, rel=1e-13)


def test_predict_edge_cases():
    c = predicted_constants(3)
    assert c.predict(1, 1.0, tame=False) == 0.0
    assert math.isnan(c.predict(1e6, math.inf, tame=True))
    # p = 3: no log factor, linear in mu and in X^(1/2)
    assert c.predict(4e6, 2.0, tame=False) == pytest.approx(2 * c.predict(1e6, 2.0, tame=False))
