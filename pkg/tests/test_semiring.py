"""Algebraic laws and encodings of the three semiring instances."""

import random
from fractions import Fraction

import pytest

from monoproj.errors import SemiringMismatchError
from monoproj.semiring import BOOL, INF, REAL, TROPICAL, by_tag


def _random_element(rng, sr):
    if sr is BOOL:
        return rng.randint(0, 1)
    if sr is TROPICAL and rng.random() < 0.2:
        return INF
    return Fraction(rng.randint(-50, 50), rng.randint(1, 9))


@pytest.mark.parametrize("sr", [REAL, TROPICAL, BOOL], ids=lambda s: s.tag)
def test_semiring_laws_random_triples(sr):
    rng = random.Random(1234 + hash(sr.tag) % 1000)
    for _ in range(1000):
        a, b, c = (_random_element(rng, sr) for _ in range(3))
        # commutativity
        assert sr.add(a, b) == sr.add(b, a)
        assert sr.mul(a, b) == sr.mul(b, a)
        # associativity
        assert sr.add(sr.add(a, b), c) == sr.add(a, sr.add(b, c))
        assert sr.mul(sr.mul(a, b), c) == sr.mul(a, sr.mul(b, c))
        # distributivity
        assert sr.mul(a, sr.add(b, c)) == sr.add(sr.mul(a, b), sr.mul(a, c))
        # identities and absorption
        assert sr.add(a, sr.zero) == sr.check(a)
        assert sr.mul(a, sr.one) == sr.check(a)
        assert sr.mul(a, sr.zero) == sr.zero
        # total order: comparability and compatibility with addition
        assert sr.leq(a, b) or sr.leq(b, a)
        if sr.leq(a, b):
            assert sr.leq(sr.add(a, c), sr.add(b, c))


def test_real_characteristic_zero():
    # 1 + 1 + ... + 1 (k times) stays distinct from zero for k up to 100
    acc = REAL.zero
    seen = set()
    for _ in range(100):
        acc = REAL.add(acc, REAL.one)
        assert not REAL.is_zero(acc)
        assert acc not in seen
        seen.add(acc)


def test_tropical_and_bool_addition_idempotent():
    rng = random.Random(99)
    for sr in (TROPICAL, BOOL):
        for _ in range(200):
            a = _random_element(rng, sr)
            assert sr.add(a, a) == sr.check(a)


def test_tropical_structure():
    assert TROPICAL.zero is INF
    assert TROPICAL.one == Fraction(0)
    assert TROPICAL.add(Fraction(3), Fraction(5)) == Fraction(3)
    assert TROPICAL.mul(Fraction(3), Fraction(5)) == Fraction(8)
    assert TROPICAL.mul(INF, Fraction(-7)) is INF
    assert TROPICAL.add(INF, Fraction(-7)) == Fraction(-7)
    # INF is the top of the order, so literal non-negativity admits only INF
    assert TROPICAL.leq(Fraction(10 ** 9), INF)
    assert TROPICAL.is_nonneg(INF)
    assert not TROPICAL.is_nonneg(Fraction(0))
    assert not TROPICAL.is_nonneg(Fraction(5))


def test_real_nonnegativity_is_literal():
    assert REAL.is_nonneg(Fraction(0))
    assert REAL.is_nonneg(Fraction(7, 3))
    assert not REAL.is_nonneg(Fraction(-1, 5))


def test_bool_is_or_and():
    assert BOOL.add(1, 1) == 1
    assert BOOL.mul(1, 0) == 0
    assert BOOL.is_nonneg(0) and BOOL.is_nonneg(1)


@pytest.mark.parametrize("sr", [REAL, TROPICAL, BOOL], ids=lambda s: s.tag)
def test_format_parse_round_trip(sr):
    rng = random.Random(4321)
    for _ in range(200):
        a = _random_element(rng, sr)
        assert sr.parse(sr.format(a)) == sr.check(a)


def test_check_rejects_foreign_values():
    with pytest.raises(SemiringMismatchError):
        REAL.check(0.5)
    with pytest.raises(SemiringMismatchError):
        REAL.check(True)
    with pytest.raises(SemiringMismatchError):
        BOOL.check(2)
    with pytest.raises(SemiringMismatchError):
        TROPICAL.check("inf")


def test_by_tag():
    assert by_tag("real") is REAL
    assert by_tag("tropical") is TROPICAL
    assert by_tag("bool") is BOOL
    with pytest.raises(SemiringMismatchError):
        by_tag("max-plus")


def test_inf_is_a_singleton():
    import copy
    assert copy.deepcopy(INF) is INF
    assert type(INF)() is INF
