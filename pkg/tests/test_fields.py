import math
import random
from dataclasses import replace

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from oracles import is_algebraic_integer, orbit_by_powers, random_tuple, tuple_from_radicand
from pureshapes.fields import (
    BadLength,
    DegenerateUnit,
    FactorizationTooLarge,
    NotCoprime,
    NotPPowerFree,
    NotSquarefree,
    Ramification,
    SCTuple,
    canonical_tuple,
    canonicalize,
    discriminant,
    factor_radicand,
    field_from_tuple,
    integral_basis,
    orbit,
    pure_field,
    ramification_type,
    validate,
)


def test_validate_examples():
    assert validate(3, (2, 1)).m == 2
    with pytest.raises(NotSquarefree) as e:
        validate(3, (4, 1))
    assert e.value.index == 1
    with pytest.raises(NotCoprime) as e:
        validate(5, (2, 1, 2, 1))
    assert (e.value.i, e.value.j) == (1, 3)


def test_validate_rejects_bad_shapes():
    with pytest.raises(BadLength):
        validate(5, (2, 1))
    with pytest.raises(DegenerateUnit):
        validate(3, (1, 1))
    with pytest.raises(ValueError):
        validate(4, (1, 2, 1))


def test_factor_radicand_examples():
    assert factor_radicand(3, 12).a == (3, 2)
    assert factor_radicand(3, 2).a == (2, 1)
    assert factor_radicand(5, 72).a == (1, 3, 2, 1)
    with pytest.raises(NotPPowerFree):
        factor_radicand(3, 8)
    with pytest.raises(DegenerateUnit):
        factor_radicand(3, 1)


def test_factor_radicand_trial_bound():
    big = 1000003 * 1000033
    with pytest.raises(FactorizationTooLarge):
        factor_radicand(3, big, bound=1000)


@given(st.integers(2, 10**7), st.sampled_from([3, 5, 7]))
def test_factor_radicand_matches_sympy(m, p):
    f = sympy.factorint(m)
    if any(e >= p for e in f.values()):
        with pytest.raises(NotPPowerFree):
            factor_radicand(p, m)
    else:
        assert factor_radicand(p, m).a == tuple_from_radicand(p, m)


def test_ramification_examples():
    assert ramification_type(validate(3, (10, 1))) is Ramification.TAME
    assert ramification_type(validate(3, (2, 1))) is Ramification.WILD
    assert ramification_type(validate(5, (7, 1, 1, 1))) is Ramification.TAME


def test_discriminant_examples():
    assert discriminant(validate(3, (2, 1))) == -108
    assert discriminant(validate(3, (10, 1))) == -300
    assert discriminant(validate(5, (2, 1, 1, 1))) == 50000


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.randoms(use_true_random=False))
def test_discriminant_divides_polynomial_discriminant_by_a_square(p, rnd):
    t = random_tuple(rnd, p)
    x = sympy.Symbol("x")
    poly_disc = int(sympy.discriminant(x**p - t.m, x))
    d = discriminant(t)
    assert poly_disc % d == 0
    q = poly_disc // d
    assert q > 0 and sympy.sqrt(q).is_integer


def test_orbit_p5_example():
    a = (2, 3, 5, 7)
    expected = {(2, 3, 5, 7), (3, 7, 2, 5), (7, 5, 3, 2), (5, 2, 7, 3)}
    assert {t.a for t in orbit(SCTuple(5, a))} == expected


def test_orbit_p3():
    assert {t.a for t in orbit(SCTuple(3, (2, 1)))} == {(2, 1), (1, 2)}


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7, 11]), st.randoms(use_true_random=False))
def test_orbit_matches_power_rule(p, rnd):
    t = random_tuple(rnd, p)
    assert {s.a for s in orbit(t)} == orbit_by_powers(p, t.a)
    assert t in orbit(t)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.randoms(use_true_random=False))
def test_orbit_invariants(p, rnd):
    t = random_tuple(rnd, p)
    types = {ramification_type(s) for s in orbit(t)}
    discs = {discriminant(s) for s in orbit(t)}
    assert len(types) == 1 and len(discs) == 1


def test_canonicalize_examples():
    assert canonicalize(SCTuple(3, (1, 2))).a == (1, 2)
    assert canonicalize(SCTuple(3, (2, 1))).a == (1, 2)
    assert canonicalize(SCTuple(5, (2, 1, 1, 1))).a == (1, 1, 1, 2)
    f = canonicalize(SCTuple(5, (2, 3, 1, 1)))
    assert canonicalize(f.tuple) == f


def test_pure_field_tame_unit():
    f = pure_field(3, 10)
    assert f.a == (1, 10) and f.m == 100
    assert f.is_tame and f.eps == 1 and f.b == (1, 10)
    g = pure_field(5, 7)
    assert g.m == 7**4 and g.eps * g.m % 25 == 1


def test_integral_basis_examples():
    f = field_from_tuple(SCTuple(3, (2, 1)))
    basis = integral_basis(f)
    assert [float(b) for b in basis] == pytest.approx([1, 2 ** (1 / 3), 2 ** (2 / 3)])
    # the canonical representative (1, 2) has radicand 4 and yields the same elements
    other = sorted(float(b) for b in integral_basis(pure_field(3, 2)))
    assert other == pytest.approx(sorted(float(b) for b in basis))
    g = field_from_tuple(SCTuple(3, (10, 1)))
    nu = integral_basis(g)[1]
    assert float(nu) == pytest.approx((10 + 10 ** (1 / 3) + 10 ** (2 / 3)) / 3)
    assert float(integral_basis(g)[2]) == pytest.approx(10 ** (2 / 3))


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("p", [3, 5, 7])
def test_basis_elements_are_integral(p, seed):
    rng = random.Random(1000 * p + seed)
    t = random_tuple(rng, p)
    for b in integral_basis(field_from_tuple(t)):
        assert is_algebraic_integer(b)


def _tame_tuple(p, rng):
    while True:
        t = random_tuple(rng, p)
        if ramification_type(t) is Ramification.TAME:
            return t


@pytest.mark.parametrize("p", [3, 5, 7])
def test_nu_integral_exactly_when_tame(p):
    rng = random.Random(p)
    tame = field_from_tuple(_tame_tuple(p, rng))
    assert is_algebraic_integer(integral_basis(tame)[1])
    # the same expression built for a wild field is not integral
    wild_t = next(t for t in (random_tuple(rng, p) for _ in range(100)) if ramification_type(t) is Ramification.WILD)
    w = field_from_tuple(wild_t)
    eps = pow(w.m % (p * p) or 1, -1, p * p) if math.gcd(w.m, p) == 1 else 1
    fake = replace(w, ramification=Ramification.TAME, eps=eps)
    assert not is_algebraic_integer(integral_basis(fake)[1])
