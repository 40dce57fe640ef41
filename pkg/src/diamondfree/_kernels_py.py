"""Pure-Python chain-classification kernels.

Both kernels walk the tree of ordered prefixes of maximal chains in the
Boolean lattice on ``n`` elements (bits 0..n-1).  A chain is identified
with a permutation; its sets are the prefixes of sizes 0..n.  Because a
family only meets prefixes up to the largest member size, the walk stops
at that depth and weighs each node by the factorial number of chain
completions, which keeps every count exact.

The compiled extension in ``_speedups.pyx`` mirrors these functions; see
``kernels`` for backend selection.
"""

from math import factorial


def chain_scan(n, members, maximal, minimal):
    """Classify all n! chains against a family of bitmask members.

    ``maximal``/``minimal`` flag, per member, whether it is maximal or
    minimal within the family.  Returns exact integer counts
    ``(total_hits, mnm, badmin, min_counts, min_hit_sums)``:

    - total_hits: sum over chains of |chain ∩ family|
    - mnm: chains whose largest member on the chain is not maximal
    - badmin: chains meeting no member, or whose smallest member on the
      chain is not minimal
    - min_counts[i]: chains whose smallest member on the chain is i
    - min_hit_sums[i]: total_hits restricted to those chains
    """
    k = len(members)
    index = {m: i for i, m in enumerate(members)}
    maximal = list(maximal)
    minimal = list(minimal)
    smax = max((m.bit_count() for m in members), default=0)
    tail = factorial(n - smax)
    full = (1 << n) - 1

    acc = [0, 0, 0]  # total_hits, mnm, badmin
    min_counts = [0] * k
    min_hit_sums = [0] * k

    def rec(depth, mask, hits, first, last):
        if depth == smax:
            if hits:
                acc[0] += hits * tail
                if not maximal[last]:
                    acc[1] += tail
                if not minimal[first]:
                    acc[2] += tail
                min_counts[first] += tail
                min_hit_sums[first] += hits * tail
            else:
                acc[2] += tail
            return
        avail = full & ~mask
        while avail:
            bit = avail & -avail
            avail ^= bit
            m2 = mask | bit
            i = index.get(m2)
            if i is None:
                rec(depth + 1, m2, hits, first, last)
            elif hits:
                rec(depth + 1, m2, hits + 1, first, i)
            else:
                rec(depth + 1, m2, 1, i, i)

    i0 = index.get(0)
    if i0 is None:
        rec(0, 0, 0, -1, -1)
    else:
        rec(0, 0, 1, i0, i0)
    return acc[0], acc[1], acc[2], min_counts, min_hit_sums


def count_chains(n, members, first_mask, second_mask, require_hit):
    """Count chains constrained by their first two elements.

    Counts chains whose first element lies in ``first_mask`` and whose
    second lies in ``second_mask`` (element bitmasks; pass the full mask
    for "any") and that meet at least one member (``require_hit``) or
    none.  Returns an exact integer.
    """
    full = (1 << n) - 1
    first_mask &= full
    second_mask &= full
    if first_mask != full and n < 1:
        return 0
    if second_mask != full and n < 2:
        return 0
    memb = set(members)
    smax = max((m.bit_count() for m in members), default=0)
    need = 2 if second_mask != full else (1 if first_mask != full else 0)
    dmax = max(smax, need)

    def completions(depth, mask):
        # orderings of the remaining elements honouring what is left of
        # the first/second position constraints
        r = n - depth
        if depth >= 2 or need <= depth:
            return factorial(r)
        avail = full & ~mask
        if depth == 1:
            return (avail & second_mask).bit_count() * factorial(r - 1)
        c1 = (avail & first_mask).bit_count()
        if second_mask == full:
            return c1 * factorial(r - 1)
        c2 = (avail & second_mask).bit_count()
        c12 = (avail & first_mask & second_mask).bit_count()
        return (c1 * c2 - c12) * factorial(r - 2)

    count = 0

    def rec(depth, mask):
        nonlocal count
        if mask in memb:
            if require_hit:
                count += completions(depth, mask)
            return
        if depth == dmax:
            if not require_hit:
                count += factorial(n - depth)
            return
        avail = full & ~mask
        if depth == 0 and first_mask != full:
            avail &= first_mask
        elif depth == 1 and second_mask != full:
            avail &= second_mask
        while avail:
            bit = avail & -avail
            avail ^= bit
            rec(depth + 1, mask | bit)

    rec(0, 0)
    return count
