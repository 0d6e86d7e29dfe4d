import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ybmaps.errors import SamplingExhausted
from ybmaps.field import (DEFAULT_MODULUS, FieldConfig, FpElement, derive_rng,
                          is_prime, make_field, sample)

FP = FieldConfig(kind="fp", rng_seed=1)
Q = FieldConfig(kind="q", rng_seed=1)


def test_rational_examples():
    assert Fraction(1, 2) + Fraction(1, 3) == Fraction(5, 6)
    with pytest.raises(ZeroDivisionError):
        Fraction(1) / Fraction(0)


def test_prime_field_examples():
    three = FpElement(3, 7)
    assert 1 / three == FpElement(5, 7)
    assert three * FpElement(5, 7) == 1
    with pytest.raises(ZeroDivisionError):
        three / FpElement(0, 7)
    with pytest.raises(ZeroDivisionError):
        1 / FpElement(0, 7)


def test_fp_int_and_fraction_mixing():
    x = FpElement(10, 101)
    assert x + 1 == FpElement(11, 101)
    assert 1 - x == FpElement(-9, 101)
    assert x * Fraction(1, 2) == FpElement(5, 101)
    assert Fraction(3, 10) * x == FpElement(3, 101)
    assert x ** 0 == 1
    assert x ** -1 == 1 / x
    with pytest.raises(TypeError):
        x + FpElement(1, 7)


def test_fraction_denominator_divisible_by_p_is_a_pole():
    x = FpElement(1, 7)
    with pytest.raises(ZeroDivisionError):
        x + Fraction(1, 7)


def test_default_modulus_is_the_mersenne_prime():
    assert DEFAULT_MODULUS == 2 ** 61 - 1
    assert is_prime(DEFAULT_MODULUS)


@pytest.mark.parametrize("n,expect", [
    (0, False), (1, False), (2, True), (3, True), (4, False), (7, True),
    (561, False), (7919, True), (2 ** 31 - 1, True), (2 ** 61 - 1, True),
    (2 ** 61 + 1, False),
])
def test_is_prime(n, expect):
    assert is_prime(n) is expect


def test_config_validation():
    with pytest.raises(ValueError):
        FieldConfig(kind="fp", modulus=91)
    with pytest.raises(ValueError):
        FieldConfig(kind="float")
    with pytest.raises(ValueError):
        FieldConfig(sample_bound=0)


def test_sampling_deterministic_and_avoids():
    a = sample(FieldConfig(kind="fp", rng_seed=1), 3, avoid=lambda v: v != 0)
    b = sample(FieldConfig(kind="fp", rng_seed=1), 3, avoid=lambda v: v != 0)
    assert a == b
    assert all(v != 0 for v in a)
    c = sample(FieldConfig(kind="fp", rng_seed=2), 3)
    assert a != c


def test_prime_sample_in_range():
    (v,) = sample(FieldConfig(kind="fp", modulus=2 ** 61 - 1, rng_seed=5), 1)
    assert 0 <= v.val < 2 ** 61 - 1


def test_sampling_exhausted_with_unit_bound():
    cfg = FieldConfig(kind="q", rng_seed=1, sample_bound=1)
    with pytest.raises(SamplingExhausted):
        sample(cfg, 1, avoid=lambda v: v not in (-1, 0, 1))


def test_rational_sampling_respects_bound():
    for v in sample(FieldConfig(kind="q", rng_seed=3, sample_bound=10), 50):
        assert abs(v.numerator) <= 10 and 0 < v.denominator <= 10


def _axiom_sweep(cfg):
    fld = make_field(cfg)
    rng = random.Random(99)
    for _ in range(1000):
        a, b, c = (fld.sample(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == fld.zero
        if b != 0:
            assert b * (1 / b) == fld.one
            got = a / b
            if isinstance(got, Fraction):
                assert math.gcd(abs(got.numerator), got.denominator) == 1
                assert got.denominator > 0


def test_field_axioms_rational():
    _axiom_sweep(Q)


def test_field_axioms_prime():
    _axiom_sweep(FP)


def test_field_axioms_small_prime():
    _axiom_sweep(FieldConfig(kind="fp", modulus=2147483647, rng_seed=4))


@given(st.fractions(), st.fractions(), st.fractions())
def test_rational_distributivity_hypothesis(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(st.integers(min_value=1, max_value=10 ** 6))
def test_fp_inverse_hypothesis(n):
    p = 2 ** 61 - 1
    x = FpElement(n, p)
    assert x * (1 / x) == 1


def test_derive_rng_streams_independent():
    r0, r1 = derive_rng(1, 0), derive_rng(1, 1)
    assert [r0.randrange(100) for _ in range(5)] != \
           [r1.randrange(100) for _ in range(5)]
    again = derive_rng(1, 0)
    assert again.randrange(10 ** 9) == derive_rng(1, 0).randrange(10 ** 9)
