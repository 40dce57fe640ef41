"""Core lattice tests: binomials, Lubell values, chains, serialization."""

import math
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diamondfree.errors import CapacityError, DomainError
from diamondfree.lattice import (Family, binomial, complement_family,
                                 enumerate_chains, family_from_json,
                                 family_from_text, family_to_json,
                                 family_to_text, lubell, lubell_via_chains,
                                 mask_elements, sigma, subset_mask)

from conftest import random_family


def pascal(n, k):
    # independent recurrence oracle for the binomial values
    if k < 0 or k > n:
        return 0
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row[k]


def test_binomial_small_values():
    assert binomial(4, 2) == 6
    assert binomial(7, 0) == 1
    assert binomial(12, 5) == pascal(12, 5) == 792


@pytest.mark.parametrize("n", range(0, 13))
def test_binomial_matches_pascal(n):
    for k in range(-1, n + 2):
        assert binomial(n, k) == pascal(n, k)


def test_binomial_domain():
    with pytest.raises(DomainError):
        binomial(-1, 0)
    assert binomial(5, -3) == 0
    assert binomial(5, 9) == 0


def test_sigma_examples():
    assert sigma(4, 2) == 10
    assert sigma(3, 1) == 3
    assert sigma(5, 0) == 0
    assert sigma(4, 5) == 16


@pytest.mark.parametrize("n", range(0, 9))
def test_sigma_matches_sorted_oracle(n):
    values = sorted((math.comb(n, k) for k in range(n + 1)), reverse=True)
    for k in range(n + 2):
        assert sigma(n, k) == sum(values[:k])


def test_sigma_domain():
    with pytest.raises(DomainError):
        sigma(4, 6)
    with pytest.raises(DomainError):
        sigma(4, -1)


def test_family_canonical_order_and_dedup():
    fam = Family.from_sets(4, [(2, 1), (3,), (), (1, 2), (1, 3)])
    assert fam.member_sets() == ((), (3,), (1, 2), (1, 3))


def test_family_rejects_oversized():
    with pytest.raises(DomainError):
        Family.from_masks(3, [0b1000])
    with pytest.raises(CapacityError):
        Family.from_masks(30, [1])


def test_lubell_examples():
    middle = Family.from_sets(4, combinations(range(1, 5), 2))
    assert lubell(middle) == 1
    assert lubell(Family.from_masks(4, [])) == 0
    assert lubell(Family.from_sets(4, [(1, 2)])) == Fraction(1, 6)


def test_lubell_even_odd_value():
    fam = Family.from_sets(4, [(), (2,), (4,), (1, 2), (2, 3), (1, 4), (3, 4),
                               (1, 3)])
    assert lubell(fam) == Fraction(7, 3)
    assert lubell_via_chains(fam) == Fraction(7, 3)


def test_lubell_via_chains_single_set():
    fam = Family.from_sets(4, [(1, 2)])
    assert lubell_via_chains(fam) == Fraction(4, 24)


def test_lubell_via_chains_cap():
    with pytest.raises(CapacityError):
        lubell_via_chains(Family.from_masks(11, [1]))


def test_lubell_equals_chain_average_exhaustive_n3():
    for code in range(1 << 8):
        fam = Family.from_masks(3, [m for m in range(8) if code >> m & 1])
        assert lubell(fam) == lubell_via_chains(fam)


@pytest.mark.parametrize("n", [5, 6, 7])
def test_lubell_equals_chain_average_random(n, rng):
    for _ in range(10):
        fam = random_family(rng, n, 0.2)
        assert lubell(fam) == lubell_via_chains(fam)


def test_lubell_additive_over_disjoint_split(rng):
    for _ in range(20):
        fam = random_family(rng, 5)
        members = list(fam.members)
        rng.shuffle(members)
        cut = len(members) // 2
        left = Family.from_masks(5, members[:cut])
        right = Family.from_masks(5, members[cut:])
        assert lubell(left) + lubell(right) == lubell(fam)


def test_ymbl_antichains_exhaustive_n4():
    # every antichain has Lubell value at most 1; level 1 attains it
    sets = list(range(1 << 4))
    comparable = []
    for m in sets:
        rel = 0
        for other in sets:
            if other != m and (m & ~other == 0 or other & ~m == 0):
                rel |= 1 << other
        comparable.append(rel)
    antichains = 0
    for code in range(1 << 16):
        ok = True
        rest = code
        while rest:
            bit = rest & -rest
            rest ^= bit
            if code & comparable[bit.bit_length() - 1]:
                ok = False
                break
        if not ok:
            continue
        antichains += 1
        fam = Family.from_masks(4, [m for m in sets if code >> m & 1])
        assert lubell(fam) <= 1
    assert antichains == 168  # Dedekind count of antichains in 2^[4]


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7), st.data())
def test_ymbl_random_antichains(n, data):
    masks = data.draw(st.lists(st.integers(0, (1 << n) - 1), max_size=25))
    chosen = []
    for m in masks:
        if all(m != o and (m & ~o) and (o & ~m) for o in chosen):
            chosen.append(m)
    assert lubell(Family.from_masks(n, chosen)) <= 1


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.data())
def test_size_bounded_by_lubell_times_middle_binomial(n, data):
    masks = data.draw(st.lists(st.integers(0, (1 << n) - 1), max_size=40))
    fam = Family.from_masks(n, masks)
    assert len(fam) <= lubell(fam) * math.comb(n, n // 2)


def test_complement_examples():
    assert complement_family(Family.from_sets(3, [()])).member_sets() \
        == ((1, 2, 3),)
    two_mid = Family.from_sets(4, list(combinations(range(1, 5), 1))
                               + list(combinations(range(1, 5), 2)))
    comp = complement_family(two_mid)
    assert sorted(m.bit_count() for m in comp.members) == [2] * 6 + [3] * 4


def test_complement_involution(rng):
    for n in (3, 5, 8):
        fam = random_family(rng, n)
        comp = complement_family(fam)
        assert len(comp) == len(fam)
        assert complement_family(comp) == fam


def test_enumerate_chains_counts():
    assert len(list(enumerate_chains(1))) == 1
    chains = list(enumerate_chains(3))
    assert len(chains) == 6
    assert len(set(c.order for c in chains)) == 6


def test_enumerate_chains_nested_prefixes():
    for chain in enumerate_chains(4):
        masks = list(chain.prefix_masks())
        assert masks[0] == 0 and masks[-1] == 0b1111
        for lo, hi in zip(masks, masks[1:]):
            assert lo & ~hi == 0 and hi.bit_count() == lo.bit_count() + 1


def test_enumerate_chains_cap():
    with pytest.raises(CapacityError):
        next(enumerate_chains(11))
    with pytest.raises(DomainError):
        next(enumerate_chains(0))


def test_subset_mask_roundtrip():
    assert mask_elements(subset_mask(6, (5, 2))) == (2, 5)
    with pytest.raises(DomainError):
        subset_mask(4, (5,))


def test_text_serialization_roundtrip(rng):
    for n in (1, 4, 7):
        fam = random_family(rng, n, 0.4)
        assert family_from_text(family_to_text(fam)) == fam


def test_text_format_shape():
    fam = Family.from_sets(4, [(), (2,), (1, 2)])
    assert family_to_text(fam) == "n=4\n{}\n2\n1,2\n"


def test_text_parse_errors():
    with pytest.raises(DomainError):
        family_from_text("3\n1,2\n")
    with pytest.raises(DomainError):
        family_from_text("n=3\nfoo\n")


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.data())
def test_json_serialization_roundtrip(n, data):
    masks = data.draw(st.lists(st.integers(0, (1 << n) - 1), max_size=20))
    fam = Family.from_masks(n, masks)
    assert family_from_json(family_to_json(fam)) == fam
    assert family_from_text(family_to_text(fam)) == fam
