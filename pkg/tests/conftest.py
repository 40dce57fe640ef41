"""Shared test helpers: naive chain oracles and family generators.

The naive oracles enumerate all n! permutations directly and classify
each chain from scratch; they are deliberately independent of the
package's prefix-tree kernels.
"""

import random
from itertools import permutations

import pytest

from diamondfree.lattice import Family


def naive_chain_scan(n, members, maximal, minimal):
    index = {m: i for i, m in enumerate(members)}
    total = mnm = badmin = 0
    mc = [0] * len(members)
    mhs = [0] * len(members)
    for perm in permutations(range(n)):
        prefixes = [0]
        m = 0
        for e in perm:
            m |= 1 << e
            prefixes.append(m)
        hits = 0
        first = last = -1
        for pm in prefixes:
            i = index.get(pm)
            if i is not None:
                hits += 1
                last = i
                if hits == 1:
                    first = i
        total += hits
        if hits:
            if not maximal[last]:
                mnm += 1
            if not minimal[first]:
                badmin += 1
            mc[first] += 1
            mhs[first] += hits
        else:
            badmin += 1
    return total, mnm, badmin, mc, mhs


def naive_count_chains(n, members, first_mask, second_mask, require_hit):
    # a constraint on a position that does not exist admits no chain
    full = (1 << n) - 1
    first_mask &= full
    second_mask &= full
    if (first_mask != full and n < 1) or (second_mask != full and n < 2):
        return 0
    memb = set(members)
    count = 0
    for perm in permutations(range(n)):
        if not first_mask >> perm[0] & 1:
            continue
        if n >= 2 and not second_mask >> perm[1] & 1:
            continue
        hit = 0 in memb
        m = 0
        for e in perm:
            m |= 1 << e
            if m in memb:
                hit = True
        if hit == require_hit:
            count += 1
    return count


def random_family(rng: random.Random, n: int, density: float = 0.3) -> Family:
    masks = [m for m in range(1 << n) if rng.random() < density]
    return Family.from_masks(n, masks)


@pytest.fixture
def rng():
    return random.Random(0xD1A30)
