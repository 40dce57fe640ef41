"""Backend-agreement tests: kernels against the naive permutation oracle."""

import random

import pytest

from diamondfree import _kernels_py, kernels
from diamondfree.chainstats import _member_flags
from diamondfree.errors import CapacityError

from conftest import naive_chain_scan, naive_count_chains


def _random_members(rng, n, count):
    pool = list(range(1 << n))
    rng.shuffle(pool)
    return sorted(pool[:count])


@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_chain_scan_matches_naive(n, seed):
    rng = random.Random(seed * 1000 + n)
    members = _random_members(rng, n, rng.randint(0, min(10, 1 << n)))
    maximal, minimal = _member_flags(members)
    expected = naive_chain_scan(n, members, maximal, minimal)
    assert kernels.chain_scan(n, members, maximal, minimal) == tuple(expected)
    assert _kernels_py.chain_scan(n, members, maximal, minimal) == tuple(expected)


@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_count_chains_matches_naive(n, seed):
    rng = random.Random(seed * 77 + n)
    members = _random_members(rng, n, rng.randint(0, min(8, 1 << n)))
    full = (1 << n) - 1
    for _ in range(4):
        first = rng.randint(0, full)
        second = rng.randint(0, full)
        for hit in (False, True):
            expected = naive_count_chains(n, members, first, second, hit)
            assert kernels.count_chains(n, members, first, second, hit) == expected
            assert _kernels_py.count_chains(n, members, first, second, hit) \
                == expected


def test_empty_set_member_counts_on_every_chain():
    # the empty prefix is part of every chain
    total, mnm, badmin, mc, mhs = kernels.chain_scan(3, [0], [True], [True])
    assert total == 6 and mnm == 0 and badmin == 0
    assert mc == [6] and mhs == [6]
    assert kernels.count_chains(3, [0], 7, 7, False) == 0
    assert kernels.count_chains(3, [0], 7, 7, True) == 6


def test_full_set_member_forces_full_depth():
    n = 4
    full = (1 << n) - 1
    total, _, _, _, _ = kernels.chain_scan(n, [full], [True], [True])
    assert total == 24


def test_first_and_second_element_constraints():
    # chains of [3] starting with element 1 (bit 0), second element 3 (bit 2)
    assert kernels.count_chains(3, [], 0b001, 0b100, False) == 1
    assert kernels.count_chains(3, [], 0b001, 0b100, True) == 0
    assert kernels.count_chains(3, [], 0b000, 0b111, False) == 0


def test_capacity_guard():
    with pytest.raises(CapacityError):
        kernels.chain_scan(25, [], [], [])


def test_backends_agree_when_compiled_available(rng):
    try:
        from diamondfree import _speedups  # noqa: F401
    except ImportError:
        pytest.skip("compiled backend not built")
    if kernels.get_backend() != "compiled":
        pytest.skip("selector forced to pure")
    for n in (4, 5, 6, 7):
        members = _random_members(rng, n, rng.randint(0, 20))
        maximal, minimal = _member_flags(members)
        assert kernels.chain_scan(n, members, maximal, minimal) == tuple(
            _kernels_py.chain_scan(n, members, maximal, minimal))
        full = (1 << n) - 1
        first, second = rng.randint(0, full), rng.randint(0, full)
        for hit in (False, True):
            assert kernels.count_chains(n, members, first, second, hit) \
                == _kernels_py.count_chains(n, members, first, second, hit)
