"""Families of subsets of [n], exact Lubell values, and maximal chains.

Subsets are bitmasks over elements 1..n (element i is bit i-1).  All
chain fractions are exact ``Fraction`` values with denominator dividing
n!.  Floating point never enters this module.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Iterator

from .errors import CapacityError, DomainError
from . import kernels

MAX_GROUND = 24
MAX_CHAIN_N = 10  # 10! = 3.6M chains


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient; 0 outside 0 <= k <= n."""
    if n < 0:
        raise DomainError(f"binomial needs n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def sigma(n: int, k: int) -> int:
    """Sum of the k largest binomial coefficients of order n.

    Levels are taken central-outward, so the value equals the size of a
    union of k largest levels of the lattice.
    """
    if n < 0:
        raise DomainError(f"sigma needs n >= 0, got n={n}")
    if not 0 <= k <= n + 1:
        raise DomainError(f"sigma needs 0 <= k <= n+1, got k={k}")
    levels = sorted(range(n + 1), key=lambda i: (abs(2 * i - n), i))
    return sum(math.comb(n, i) for i in levels[:k])


def subset_mask(n: int, elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        if not 1 <= e <= n:
            raise DomainError(f"element {e} outside 1..{n}")
        mask |= 1 << (e - 1)
    return mask


def mask_elements(mask: int) -> tuple[int, ...]:
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


@dataclass(frozen=True)
class Family:
    """A deduplicated family of subsets of [n], in canonical order.

    Members are bitmasks sorted by (size, element tuple) so iteration
    order, serialized output, and search witnesses are reproducible.
    """

    n: int
    members: tuple[int, ...]

    @staticmethod
    def from_masks(n: int, masks: Iterable[int]) -> "Family":
        if not 0 <= n <= MAX_GROUND:
            raise CapacityError(f"ground-set size must be 0..{MAX_GROUND}, got {n}")
        full = (1 << n) - 1
        seen = set()
        for m in masks:
            if m & ~full:
                raise DomainError(f"mask {m:#x} has bits above position {n}")
            seen.add(m)
        ordered = sorted(seen, key=lambda m: (m.bit_count(), mask_elements(m)))
        return Family(n, tuple(ordered))

    @staticmethod
    def from_sets(n: int, sets: Iterable[Iterable[int]]) -> "Family":
        return Family.from_masks(n, (subset_mask(n, s) for s in sets))

    def member_sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(mask_elements(m) for m in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask: int) -> bool:
        return mask in set(self.members)


def lubell(family: Family) -> Fraction:
    """Sum over members of 1 / binomial(n, |member|), exactly."""
    counts: dict[int, int] = {}
    for m in family.members:
        s = m.bit_count()
        counts[s] = counts.get(s, 0) + 1
    total = Fraction(0)
    for s, c in counts.items():
        total += Fraction(c, math.comb(family.n, s))
    return total


def lubell_via_chains(family: Family) -> Fraction:
    """Average number of members on a chain, by full chain enumeration.

    Must agree exactly with :func:`lubell`; used as its oracle.
    """
    n = family.n
    if n > MAX_CHAIN_N:
        raise CapacityError(f"chain enumeration capped at n={MAX_CHAIN_N}, got {n}")
    k = len(family.members)
    hits, _, _, _, _ = kernels.chain_scan(n, list(family.members),
                                          [True] * k, [True] * k)
    return Fraction(hits, math.factorial(n))


def complement_family(family: Family) -> Family:
    full = (1 << family.n) - 1
    return Family.from_masks(family.n, (m ^ full for m in family.members))


@dataclass(frozen=True)
class Chain:
    """A maximal chain, identified with a permutation of 1..n."""

    order: tuple[int, ...]

    def prefix_sets(self) -> Iterator[tuple[int, ...]]:
        """Yield the chain's sets, from the empty set to [n]."""
        cur: list[int] = []
        yield ()
        for e in self.order:
            cur.append(e)
            yield tuple(sorted(cur))

    def prefix_masks(self) -> Iterator[int]:
        mask = 0
        yield 0
        for e in self.order:
            mask |= 1 << (e - 1)
            yield mask


def enumerate_chains(n: int) -> Iterator[Chain]:
    """Yield all n! chains in lexicographic permutation order."""
    if n < 1:
        raise DomainError(f"enumerate_chains needs n >= 1, got {n}")
    if n > MAX_CHAIN_N:
        raise CapacityError(f"chain enumeration capped at n={MAX_CHAIN_N}, got {n}")
    for perm in permutations(range(1, n + 1)):
        yield Chain(perm)


# -- serialization -----------------------------------------------------------
#
# Text format: a header line "n=<int>", then one subset per line as sorted
# comma-separated elements, with "{}" for the empty set.  JSON format: an
# object {"n": <int>, "sets": [[...], ...]}.  Both round-trip exactly.


def family_to_text(family: Family) -> str:
    lines = [f"n={family.n}"]
    for elems in family.member_sets():
        lines.append(",".join(str(e) for e in elems) if elems else "{}")
    return "\n".join(lines) + "\n"


def _parse_subset_line(line: str, n: int) -> int:
    if line == "{}":
        return 0
    try:
        elems = [int(tok) for tok in line.split(",")]
    except ValueError:
        raise DomainError(f"bad subset line: {line!r}") from None
    return subset_mask(n, elems)


def family_from_text(text: str) -> Family:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise DomainError("family text must start with an 'n=<int>' header")
    n = int(lines[0][2:])
    return Family.from_masks(n, (_parse_subset_line(ln, n) for ln in lines[1:]))


def family_to_json(family: Family) -> str:
    return json.dumps({"n": family.n,
                       "sets": [list(s) for s in family.member_sets()]})


def family_from_json(text: str) -> Family:
    obj = json.loads(text)
    return Family.from_sets(obj["n"], obj["sets"])
