"""Forbidden patterns and weak-subposet containment tests.

A pattern is contained in a family if its elements inject into distinct
members so that every strict pattern relation becomes strict inclusion.
Images of unrelated pattern elements are allowed to be related, so a
4-chain of sets contains the diamond pattern.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError, DomainError, ValidationError
from .lattice import Family, mask_elements

MAX_PATTERN = 8


@dataclass(frozen=True)
class PosetSpec:
    """A strict partial order on elements 0..size-1 as a boolean matrix."""

    size: int
    lt: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        k, lt = self.size, self.lt
        if len(lt) != k or any(len(row) != k for row in lt):
            raise ValidationError("relation matrix shape must be size x size")
        for i in range(k):
            if lt[i][i]:
                raise ValidationError("strict order must be irreflexive")
            for j in range(k):
                if lt[i][j] and lt[j][i]:
                    raise ValidationError("strict order must be antisymmetric")
                for m in range(k):
                    if lt[i][j] and lt[j][m] and not lt[i][m]:
                        raise ValidationError("strict order must be transitive")


def _from_pairs(k: int, pairs) -> PosetSpec:
    lt = [[False] * k for _ in range(k)]
    for i, j in pairs:
        lt[i][j] = True
    # transitive closure
    for m in range(k):
        for i in range(k):
            if lt[i][m]:
                for j in range(k):
                    if lt[m][j]:
                        lt[i][j] = True
    return PosetSpec(k, tuple(tuple(row) for row in lt))


def chain_poset(k: int) -> PosetSpec:
    if k < 1:
        raise DomainError("chain pattern needs k >= 1")
    return _from_pairs(k, ((i, j) for i in range(k) for j in range(i + 1, k)))


def v_poset() -> PosetSpec:
    return _from_pairs(3, [(0, 1), (0, 2)])


def lambda_poset() -> PosetSpec:
    return _from_pairs(3, [(0, 2), (1, 2)])


def diamond_poset() -> PosetSpec:
    return _from_pairs(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def fork_poset(r: int) -> PosetSpec:
    if r < 1:
        raise DomainError("fork pattern needs r >= 1")
    return _from_pairs(r + 1, ((0, j) for j in range(1, r + 1)))


def parse_poset(text: str) -> PosetSpec:
    """Parse a pattern name: chain:k, v, lambda, diamond, fork:r."""
    t = text.strip().lower()
    if t == "v":
        return v_poset()
    if t == "lambda":
        return lambda_poset()
    if t == "diamond":
        return diamond_poset()
    if t.startswith("chain:"):
        return chain_poset(int(t.split(":", 1)[1]))
    if t.startswith("fork:"):
        return fork_poset(int(t.split(":", 1)[1]))
    raise DomainError(f"unknown pattern {text!r}")


def _linear_extension(p: PosetSpec) -> list[int]:
    k = p.size
    preds = [sum(p.lt[j][i] for j in range(k)) for i in range(k)]
    order, ready = [], [i for i in range(k) if preds[i] == 0]
    while ready:
        i = ready.pop()
        order.append(i)
        for j in range(k):
            if p.lt[i][j]:
                preds[j] -= 1
                if preds[j] == 0:
                    ready.append(j)
    return order


def contains_weak_subposet(family: Family, pattern: PosetSpec,
                           witness: bool = False):
    """Test pattern containment; optionally return one witness injection.

    The witness lists the image of each pattern element, in pattern-element
    order, as element tuples.  Returns bool, or (bool, witness-or-None).
    """
    if pattern.size > MAX_PATTERN:
        raise CapacityError(f"patterns capped at {MAX_PATTERN} elements")
    members = sorted(family.members, key=lambda m: (m.bit_count(), m))
    order = _linear_extension(pattern)
    assign: dict[int, int] = {}
    used: set[int] = set()

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        u = order[pos]
        below = [assign[v] for v in range(pattern.size)
                 if pattern.lt[v][u] and v in assign]
        for m in members:
            if m in used:
                continue
            if any(not (b & ~m == 0 and b != m) for b in below):
                continue
            assign[u] = m
            used.add(m)
            if extend(pos + 1):
                return True
            used.discard(m)
            del assign[u]
        return False

    found = len(members) >= pattern.size and extend(0)
    if not witness:
        return found
    if not found:
        return False, None
    return True, [mask_elements(assign[u]) for u in range(pattern.size)]


def is_pattern_free(family: Family, pattern: PosetSpec) -> bool:
    return not contains_weak_subposet(family, pattern)


def _relation_id_masks(members):
    # sub[i] / sup[i]: bitmask over member indices of proper subsets /
    # supersets of member i
    k = len(members)
    sub = [0] * k
    sup = [0] * k
    for i in range(k):
        mi = members[i]
        for j in range(i + 1, k):
            mj = members[j]
            if mi & ~mj == 0:  # mi ⊂ mj (members are distinct)
                sub[j] |= 1 << i
                sup[i] |= 1 << j
            elif mj & ~mi == 0:
                sub[i] |= 1 << j
                sup[j] |= 1 << i
    return sub, sup


def is_diamond_free(family: Family) -> bool:
    """Direct scan: no pair A ⊂ D with two members strictly between."""
    members = family.members
    sub, sup = _relation_id_masks(members)
    for a in range(len(members)):
        tops = sup[a]
        while tops:
            bit = tops & -tops
            tops ^= bit
            d = bit.bit_length() - 1
            if (sup[a] & sub[d]).bit_count() >= 2:
                return False
    return True


def is_lambda_free(family: Family) -> bool:
    """Direct scan: no member with two members strictly below it."""
    sub, _ = _relation_id_masks(family.members)
    return all(s.bit_count() < 2 for s in sub)


def is_v_free(family: Family) -> bool:
    _, sup = _relation_id_masks(family.members)
    return all(s.bit_count() < 2 for s in sup)
