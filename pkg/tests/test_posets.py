"""Pattern containment tests, including the specialized scans."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diamondfree.errors import CapacityError, DomainError, ValidationError
from diamondfree.lattice import Family, lubell
from diamondfree.posets import (PosetSpec, chain_poset, contains_weak_subposet,
                                diamond_poset, fork_poset, is_diamond_free,
                                is_lambda_free, is_pattern_free, is_v_free,
                                lambda_poset, parse_poset, v_poset)

from conftest import random_family

EVEN_ODD_4 = [(), (2,), (4,), (1, 2), (2, 3), (1, 4), (3, 4), (1, 3)]


def test_parse_named_patterns():
    assert parse_poset("chain:3").size == 3
    assert parse_poset("v") == v_poset()
    assert parse_poset("LAMBDA") == lambda_poset()
    assert parse_poset("diamond") == diamond_poset()
    assert parse_poset("fork:4").size == 5
    with pytest.raises(DomainError):
        parse_poset("pentagon")


def test_poset_spec_validation():
    with pytest.raises(ValidationError):
        PosetSpec(2, ((True, False), (False, False)))  # reflexive
    with pytest.raises(ValidationError):
        PosetSpec(2, ((False, True), (True, False)))  # not antisymmetric
    lt = ((False, True, False), (False, False, True), (False, False, False))
    with pytest.raises(ValidationError):
        PosetSpec(3, lt)  # not transitively closed


def test_diamond_embeds_in_four_chain():
    fam = Family.from_sets(3, [(), (1,), (1, 2), (1, 2, 3)])
    assert contains_weak_subposet(fam, diamond_poset())
    found, witness = contains_weak_subposet(fam, diamond_poset(), witness=True)
    assert found
    assert len(witness) == 4
    bottom, m1, m2, top = witness
    assert set(bottom) < set(m1) and set(bottom) < set(m2)
    assert set(m1) < set(top) and set(m2) < set(top)


def test_small_family_cannot_contain_diamond():
    fam = Family.from_sets(3, [(), (1,), (2,)])
    assert not contains_weak_subposet(fam, diamond_poset())


def test_lambda_containment():
    fam = Family.from_sets(2, [(1,), (2,), (1, 2)])
    assert contains_weak_subposet(fam, lambda_poset())
    assert not is_lambda_free(fam)


def test_pattern_capacity():
    with pytest.raises(CapacityError):
        contains_weak_subposet(Family.from_masks(3, []), chain_poset(9))


def test_two_middle_levels_diamond_free():
    from diamondfree.constructions import two_middle_levels

    assert is_pattern_free(two_middle_levels(4), diamond_poset())


def test_full_square_contains_diamond():
    fam = Family.from_masks(2, [0, 1, 2, 3])
    assert not is_pattern_free(fam, diamond_poset())
    assert not is_diamond_free(fam)


def test_antichain_is_chain2_free():
    fam = Family.from_sets(4, [(1, 2), (3, 4), (1, 3)])
    assert is_pattern_free(fam, chain_poset(2))


def test_even_odd_specialized_scans():
    fam = Family.from_sets(4, EVEN_ODD_4)
    assert is_diamond_free(fam)
    no_empty = Family.from_sets(4, [s for s in EVEN_ODD_4 if s])
    assert is_lambda_free(no_empty)


def test_specialized_agree_with_generic_exhaustive_n3():
    for code in range(1 << 8):
        fam = Family.from_masks(3, [m for m in range(8) if code >> m & 1])
        assert is_diamond_free(fam) == is_pattern_free(fam, diamond_poset())
        assert is_lambda_free(fam) == is_pattern_free(fam, lambda_poset())
        assert is_v_free(fam) == is_pattern_free(fam, v_poset())


@pytest.mark.parametrize("n", [4, 5])
def test_specialized_agree_with_generic_random(n, rng):
    for _ in range(60):
        fam = random_family(rng, n, rng.choice([0.1, 0.25, 0.5]))
        assert is_diamond_free(fam) == is_pattern_free(fam, diamond_poset())
        assert is_lambda_free(fam) == is_pattern_free(fam, lambda_poset())


@pytest.mark.parametrize("n", [2, 3, 4])
def test_lambda_free_iff_adding_empty_is_diamond_free(n):
    nonempty = [m for m in range(1, 1 << n)]
    for code in range(1 << len(nonempty)):
        masks = [nonempty[i] for i in range(len(nonempty)) if code >> i & 1]
        fam = Family.from_masks(n, masks)
        with_empty = Family.from_masks(n, masks + [0])
        assert is_lambda_free(fam) == is_diamond_free(with_empty)


def test_adding_empty_set_raises_lubell_by_one(rng):
    for _ in range(20):
        fam = random_family(rng, 5)
        without = Family.from_masks(5, [m for m in fam.members if m])
        with_empty = Family.from_masks(5, list(without.members) + [0])
        assert lubell(with_empty) == lubell(without) + 1


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 5), st.data())
def test_subfamily_of_pattern_free_is_pattern_free(n, data):
    masks = data.draw(st.lists(st.integers(0, (1 << n) - 1), max_size=12))
    fam = Family.from_masks(n, masks)
    pattern = data.draw(st.sampled_from(
        [diamond_poset(), v_poset(), lambda_poset(), chain_poset(3)]))
    if not is_pattern_free(fam, pattern):
        return
    keep = data.draw(st.lists(st.sampled_from(sorted(fam.members)),
                              max_size=len(fam))) if len(fam) else []
    assert is_pattern_free(Family.from_masks(n, keep), pattern)


def test_fork_containment():
    fam = Family.from_sets(4, [(1,), (1, 2), (1, 3), (1, 4)])
    assert contains_weak_subposet(fam, fork_poset(3))
    assert not contains_weak_subposet(fam, fork_poset(4))
