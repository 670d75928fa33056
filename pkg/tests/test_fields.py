import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ropelab.errors import DivisionByZero, NonPrimeCharacteristic
from ropelab.fields import Field, make_field, scalar_inv


def test_make_field_accepts_zero_and_primes():
    assert make_field(0).char == 0
    assert make_field(2).char == 2
    assert make_field(101).char == 101


@pytest.mark.parametrize("bad", [4, 6, 9, 15, 21, 1, -3, 2**31 + 11])
def test_make_field_rejects_nonprimes(bad):
    with pytest.raises(NonPrimeCharacteristic):
        make_field(bad)


def test_inverse_examples():
    F2 = make_field(2)
    assert scalar_inv(F2, 1) == 1
    Q = make_field(0)
    assert scalar_inv(Q, Fraction(2, 3)) == Fraction(3, 2)


def test_inverse_of_two_mod_five_brute_force():
    # independent oracle: scan all residues for the one with 2*x = 1 mod 5
    F5 = make_field(5)
    expected = next(x for x in range(5) if (2 * x) % 5 == 1)
    assert scalar_inv(F5, 2) == expected == 3


def test_inverse_of_zero_raises():
    for ch in (0, 5):
        with pytest.raises(DivisionByZero):
            make_field(ch).inv(make_field(ch).zero)


@pytest.mark.parametrize("ch", [0, 2, 3, 5])
def test_field_axioms_on_random_triples(ch):
    K = make_field(ch)
    rng = random.Random(ch + 17)
    for _ in range(1000):
        a, b, c = (K.rand(rng) for _ in range(3))
        assert K.add(K.add(a, b), c) == K.add(a, K.add(b, c))
        assert K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c))
        assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
        assert K.add(a, K.neg(a)) == K.zero
        if b:
            assert K.mul(b, K.inv(b)) == K.one


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_fermat_little_theorem(p):
    K = make_field(p)
    rng = random.Random(p)
    for _ in range(1000):
        x = K.rand(rng)
        y = K.one
        for _ in range(p):
            y = K.mul(y, x)
        assert y == x


@given(st.integers(-10**6, 10**6), st.integers(1, 10**4))
def test_rational_json_roundtrip(num, den):
    Q = make_field(0)
    x = Fraction(num, den)
    assert Q.scalar_from_json(Q.scalar_to_json(x)) == x


def test_modular_coercion_of_fractions():
    F7 = make_field(7)
    assert F7.of(Fraction(1, 2)) == 4  # 2*4 = 8 = 1 mod 7
    with pytest.raises(DivisionByZero):
        F7.of(Fraction(1, 7))


def test_field_equality_and_repr():
    assert make_field(5) == make_field(5)
    assert make_field(0) != make_field(5)
    assert repr(make_field(0)) == "Q"
