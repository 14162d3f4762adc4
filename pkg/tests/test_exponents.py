from fractions import Fraction

import pytest

from conftest import decimal_value_bounds
from tatekit.errors import SearchExhausted
from tatekit.exponents import (
    CosetSignature,
    ExponentVector,
    bounded_coset_representatives,
    certify_in_open_interval,
    compare,
    enclose,
    find_p_multiple_near,
    nth_prime,
)
from tatekit.selftest import sample_exponent_vector

E1 = ExponentVector.unit(1)
E2 = ExponentVector.unit(2)


def test_group_law_examples():
    assert (E1 + (-E1)).is_zero
    assert (E1 + E2).as_dict() == {1: 1, 2: 1}
    assert (E1.scale(2) + E1.scale(3)).as_dict() == {1: 5}


def test_canonical_form_drops_zeros():
    v = ExponentVector.from_dict({1: 2, 2: 0, 5: -1})
    assert v.coords == ((1, 2), (5, -1))


def test_enclose_sqrt2_inverse():
    iv = enclose(E1, Fraction(1, 1000))
    assert iv.width <= Fraction(1, 1000)
    # Independent check: lo < 1/sqrt(2) < hi, by exact squaring.
    assert iv.lo > 0 and 2 * iv.lo**2 < 1 < 2 * iv.hi**2


def test_enclose_sqrt3_inverse():
    iv = enclose(E2, Fraction(1, 1000))
    assert iv.width <= Fraction(1, 1000)
    assert iv.lo > 0 and 3 * iv.lo**2 < 1 < 3 * iv.hi**2


def test_enclose_zero_vector():
    iv = enclose(ExponentVector.zero(), Fraction(1, 10**9))
    assert iv.lo == 0 and iv.hi == 0


def test_compare_examples():
    assert compare(E1, E1) == 0
    # 1/sqrt(2) > 1/sqrt(3) since squares compare as 1/2 > 1/3.
    assert compare(E1, E2) == 1
    # 2/sqrt(3) > 1/sqrt(2) since 4/3 > 1/2.
    assert compare(E2.scale(2), E1) == 1


def test_signature_examples():
    assert E1.signature(2) == CosetSignature(2, ((1, 1),))
    assert E1.scale(2).signature(2).is_zero
    v = E1.scale(3) + E2.scale(-4)
    assert v.signature(3) == CosetSignature(3, ((2, 2),))


def test_find_p_multiple_trivial_target():
    assert find_p_multiple_near(Fraction(0), Fraction(1, 10), 2, 3, 6).is_zero


def test_find_p_multiple_frozen_example():
    # Oracle: enumerate all even vectors with |c| <= 6 over two generators
    # with an independent sqrt enclosure and record the qualifying ones.
    hits = []
    for a in range(-6, 7, 2):
        for b in range(-6, 7, 2):
            lo, hi = decimal_value_bounds({1: a, 2: b})
            if Fraction(9, 20) < lo and hi < Fraction(11, 20):
                hits.append((a, b))
    assert hits == [(4, -4)]
    found = find_p_multiple_near(Fraction(1, 2), Fraction(1, 20), 2, 2, 6)
    assert found.as_dict() == {1: 4, 2: -4}


def test_find_p_multiple_exhausted():
    assert find_p_multiple_near(Fraction(1, 2), Fraction(1, 10**9), 2, 1, 3) is None


def test_find_p_multiple_lexicographic_tie_break():
    # Oracle: at eps = 1 around 1.3, shell radius 2 contains exactly the
    # hits (0, 2) -> 2/sqrt(3) and (2, 0) -> 2/sqrt(2); lexicographically
    # the first wins.
    hits = []
    for a in (-2, 0, 2):
        for b in (-2, 0, 2):
            if max(abs(a), abs(b)) != 2:
                continue
            lo, hi = decimal_value_bounds({1: a, 2: b})
            if Fraction(13, 10) - 1 < lo and hi < Fraction(13, 10) + 1:
                hits.append((a, b))
    assert hits == [(0, 2), (2, 0)]
    found = find_p_multiple_near(Fraction(13, 10), Fraction(1), 2, 2, 2)
    assert found.as_dict() == {2: 2}


def test_bounded_reps_first_two_are_generators():
    reps = bounded_coset_representatives(2, 2)
    assert reps == [E1, E2]


def test_bounded_reps_single():
    assert bounded_coset_representatives(2, 1) == [E1]


def test_bounded_reps_distinct_mod_2():
    reps = bounded_coset_representatives(2, 2)
    assert reps[0].signature(2) != reps[1].signature(2)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_bounded_reps_postconditions(p):
    reps = bounded_coset_representatives(p, 8)
    signatures = set()
    for i, rep in enumerate(reps, start=1):
        assert certify_in_open_interval(rep, Fraction(-1), Fraction(1))
        assert rep.signature(p) == ExponentVector.unit(i).signature(p)
        signatures.add(rep.signature(p))
    assert len(signatures) == 8


def test_order_compatible_with_intervals(rng):
    width = Fraction(1, 10**12)
    for _ in range(200):
        a = sample_exponent_vector(rng)
        b = sample_exponent_vector(rng)
        verdict = compare(a, b)
        ia, ib = enclose(a, width), enclose(b, width)
        if ia.lo > ib.hi:
            assert verdict == 1
        elif ia.hi < ib.lo:
            assert verdict == -1
        assert (verdict == 0) == (a.coords == b.coords)


def test_translation_invariance(rng):
    for _ in range(200):
        a = sample_exponent_vector(rng)
        b = sample_exponent_vector(rng)
        c = sample_exponent_vector(rng)
        assert compare(a + c, b + c) == compare(a, b)


def test_find_p_multiple_postconditions(rng):
    for _ in range(25):
        p = rng.choice([2, 3])
        target = Fraction(rng.randint(-8, 8), rng.randint(1, 8))
        eps = Fraction(1, rng.randint(2, 6))
        found = find_p_multiple_near(target, eps, p, 2, 4 * p)
        if found is None:
            continue
        assert found.signature(p).is_zero
        iv = enclose(found, eps / 8)
        assert target - eps < iv.lo and iv.hi < target + eps


def test_rep_shift_search_exhaustion_surfaces():
    with pytest.raises(SearchExhausted):
        # A zero coefficient bound leaves no shell with p-divisible entries
        # near 1/sqrt(2) at the tiny eps, so the shift search must fail.
        bounded_coset_representatives(
            2, 1, shift_eps=Fraction(1, 10**9), shift_coeff_bound=0
        )


def test_nth_prime_sequence():
    assert [nth_prime(i) for i in range(1, 9)] == [2, 3, 5, 7, 11, 13, 17, 19]
