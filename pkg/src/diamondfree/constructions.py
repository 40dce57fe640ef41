"""Generators for the standard diamond-free families, with closed forms.

All generators return canonical :class:`~diamondfree.lattice.Family`
values; the ``*_lubell`` helpers give the matching exact Lubell values
without materializing anything.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .errors import DomainError
from .lattice import Family, mask_elements, subset_mask


def two_middle_levels(n: int) -> Family:
    """The two levels nearest the middle; diamond-free with Lubell value 2.

    For even n this takes levels n/2 and n/2 - 1 (the choice between
    n/2 - 1 and n/2 + 1 is immaterial by complement symmetry).
    """
    if n < 2:
        raise DomainError(f"two_middle_levels needs n >= 2, got {n}")
    hi = (n + 1) // 2
    sets = [c for k in (hi, hi - 1) for c in combinations(range(1, n + 1), k)]
    return Family.from_sets(n, sets)


def canonical_family(n: int, a_elements: Iterable[int]) -> Family:
    """The family: empty set, singletons {e}, pairs {e,o} and {o1,o2}.

    ``e`` ranges over the distinguished set A, ``o`` over its complement.
    Diamond-free for every choice of A.
    """
    amask = subset_mask(n, a_elements)
    a_elems = list(mask_elements(amask))
    o_elems = [e for e in range(1, n + 1) if not amask >> (e - 1) & 1]
    sets: list[tuple[int, ...]] = [()]
    sets += [(e,) for e in a_elems]
    sets += [(e, o) for e in a_elems for o in o_elems]
    sets += list(combinations(o_elems, 2))
    return Family.from_sets(n, sets)


def even_odd_family(n: int) -> Family:
    """The canonical family with A = the even labels in [n]."""
    if n < 2:
        raise DomainError(f"even_odd_family needs n >= 2, got {n}")
    return canonical_family(n, range(2, n + 1, 2))


def canonical_lubell(n: int, a_size: int) -> Fraction:
    """Exact Lubell value of the canonical family with |A| = a_size."""
    if not 0 <= a_size <= n or n < 2:
        raise DomainError(f"need 0 <= a_size <= n and n >= 2, got {a_size}, {n}")
    o = n - a_size
    pairs = a_size * o + math.comb(o, 2)
    return 1 + Fraction(a_size, n) + Fraction(pairs, math.comb(n, 2))


def even_odd_lubell(n: int) -> Fraction:
    return canonical_lubell(n, n // 2)


def canonical_mnm_count(n: int, a_size: int) -> int:
    """Number of chains whose largest canonical-family member is a singleton.

    These are exactly the chains whose first two elements both lie in A:
    a_size * (a_size - 1) * (n - 2)! of them.
    """
    if n < 2 or not 0 <= a_size <= n:
        raise DomainError(f"need n >= 2 and 0 <= a_size <= n")
    return a_size * (a_size - 1) * math.factorial(n - 2)


def product_antichain(n: int, x_elements: Iterable[int],
                      c_elements: Iterable[int]) -> Family:
    """All pairs {d,o} with d from one block and o from a disjoint block."""
    xmask = subset_mask(n, x_elements)
    cmask = subset_mask(n, c_elements)
    if xmask & cmask:
        raise DomainError("the two element blocks must be disjoint")
    return Family.from_sets(n, ((d, o) for d in mask_elements(xmask)
                                for o in mask_elements(cmask)))


def product_antichain_lubell(n: int, x_size: int, c_size: int) -> Fraction:
    """Exact Lubell value x_size*c_size / binomial(n,2) of the pair block."""
    return Fraction(x_size * c_size, math.comb(n, 2))
