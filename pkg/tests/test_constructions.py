"""Construction generators against their closed forms."""

import math
from fractions import Fraction

import pytest

from diamondfree.chainstats import count_mnm
from diamondfree.constructions import (canonical_family, canonical_lubell,
                                       canonical_mnm_count, even_odd_family,
                                       even_odd_lubell, product_antichain,
                                       product_antichain_lubell,
                                       two_middle_levels)
from diamondfree.errors import DomainError
from diamondfree.lattice import Family, lubell, sigma
from diamondfree.posets import is_diamond_free, is_pattern_free, chain_poset


def test_two_middle_levels_n4():
    fam = two_middle_levels(4)
    assert len(fam) == 10 == sigma(4, 2)
    assert lubell(fam) == 2
    assert sorted(m.bit_count() for m in fam.members) == [1] * 4 + [2] * 6
    assert is_diamond_free(fam)


def test_two_middle_levels_n5():
    fam = two_middle_levels(5)
    assert len(fam) == 20
    assert lubell(fam) == 2
    assert {m.bit_count() for m in fam.members} == {2, 3}


def test_two_middle_levels_domain():
    with pytest.raises(DomainError):
        two_middle_levels(1)


def test_even_odd_n4_members_and_value():
    fam = even_odd_family(4)
    assert fam == Family.from_sets(4, [(), (2,), (4,), (1, 2), (2, 3), (1, 4),
                                       (3, 4), (1, 3)])
    assert len(fam) == 8
    assert lubell(fam) == Fraction(7, 3)
    assert is_diamond_free(fam)


def test_even_odd_equals_canonical_with_even_block():
    assert even_odd_family(6) == canonical_family(6, (2, 4, 6))


def test_even_odd_large_n_near_limit():
    # the limiting Lubell value is 9/4
    val = even_odd_lubell(200)
    assert abs(float(val) - 2.25) < 0.02


@pytest.mark.parametrize("n", range(2, 9))
def test_canonical_closed_form_matches_family(n):
    for a_size in range(0, n + 1):
        fam = canonical_family(n, range(1, a_size + 1))
        assert lubell(fam) == canonical_lubell(n, a_size)


def test_canonical_a_zero():
    fam = canonical_family(4, ())
    assert fam == Family.from_sets(4, [(), (1, 2), (1, 3), (1, 4), (2, 3),
                                       (2, 4), (3, 4)])
    assert lubell(fam) == 2


def test_canonical_large_n():
    assert abs(float(canonical_lubell(100, 30)) - 2.21) < 0.02


@pytest.mark.parametrize("n", range(2, 7))
def test_canonical_mnm_formula_small(n):
    nfact = math.factorial(n)
    for a_size in range(0, n + 1):
        fam = canonical_family(n, range(1, a_size + 1))
        assert count_mnm(fam) == Fraction(canonical_mnm_count(n, a_size), nfact)


@pytest.mark.parametrize("n", range(2, 8))
def test_generated_families_diamond_free(n):
    assert is_diamond_free(two_middle_levels(n))
    assert is_diamond_free(even_odd_family(n))
    for a_size in (0, n // 2, n):
        assert is_diamond_free(canonical_family(n, range(1, a_size + 1)))


def test_product_antichain_examples():
    fam = product_antichain(6, (1,), (2, 3, 4, 5, 6))
    assert len(fam) == 5
    assert lubell(fam) == Fraction(1, 3) == product_antichain_lubell(6, 1, 5)
    assert len(product_antichain(6, (1,), ())) == 0
    assert lubell(product_antichain(6, (1,), (2, 3))) == Fraction(2, 15)


def test_product_antichain_formula_vs_correction_factor():
    # value equals 2 x (|C|/n) n/(n-1) exactly
    n, xs, cs = 7, 2, 4
    val = product_antichain_lubell(n, xs, cs)
    assert val == 2 * Fraction(xs, n) * Fraction(cs, n) * Fraction(n, n - 1)
    fam = product_antichain(n, (1, 2), (3, 4, 5, 6))
    assert lubell(fam) == val
    assert is_pattern_free(fam, chain_poset(2))


def test_product_antichain_disjointness():
    with pytest.raises(DomainError):
        product_antichain(5, (1, 2), (2, 3))
