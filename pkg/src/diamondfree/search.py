"""Exact small-n extremal search and exhaustive bound verification.

``la_exact`` computes the largest pattern-free family by depth-first
search over sets in middle-out canonical order, with incremental
freeness checks and two admissible prunes: remaining candidate count,
and the Lubell-capacity bound |extra| <= (height_cap - l(F)) * maxbinom
that follows from the YMBL inequality applied to an antichain partition.
``max_lubell`` runs the same search with the exact Lubell objective.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from . import kernels
from .bounds import lambda_free_bound, scenario_bound
from .chainstats import _member_flags, random_scenario, scenario_stats
from .errors import CapacityError, DomainError, ValidationError
from .lattice import Family, lubell, mask_elements
from .posets import (PosetSpec, chain_poset, contains_weak_subposet,
                     diamond_poset, fork_poset, lambda_poset, v_poset)


@dataclass(frozen=True)
class SearchProblem:
    n: int
    pattern: PosetSpec
    level_window: Optional[tuple[int, int]] = None
    must_contain: tuple[int, ...] = ()
    objective: str = "cardinality"  # or "lubell"

    def __post_init__(self):
        if self.level_window is not None:
            lo, hi = self.level_window
            if not 0 <= lo <= hi <= self.n:
                raise ValidationError("level window must satisfy 0 <= lo <= hi <= n")
            for m in self.must_contain:
                if not lo <= m.bit_count() <= hi:
                    raise ValidationError("must_contain sets must lie inside the window")
        if self.objective not in ("cardinality", "lubell"):
            raise ValidationError("objective must be cardinality or lubell")


@dataclass(frozen=True)
class SearchResult:
    optimum: object  # int for cardinality, Fraction for lubell
    witness: Family
    nodes: int


def _classify_pattern(p: PosetSpec):
    if p == chain_poset(p.size):
        return "chain", p.size
    if p.size == 3 and p == v_poset():
        return "v", 2
    if p.size == 3 and p == lambda_poset():
        return "lambda", 2
    if p.size == 4 and p == diamond_poset():
        return "diamond", 0
    if p.size >= 2 and p == fork_poset(p.size - 1):
        return "fork", p.size - 1
    return "generic", 0


class _FreeState:
    """Mutable family with push/pop and incremental pattern-freeness.

    Subset/superset relations between chosen members are kept as
    index bitmasks, so each insertion costs O(|F|) subset tests plus a
    violation check specialized to the pattern shape.
    """

    def __init__(self, n: int, pattern: PosetSpec):
        self.n = n
        self.pattern = pattern
        self.kind, self.param = _classify_pattern(pattern)
        self.members: list[int] = []
        self.sub: list[int] = []
        self.sup: list[int] = []

    def _violates(self, subm: int, supm: int) -> bool:
        sub, sup = self.sub, self.sup
        kind = self.kind
        if kind == "chain":
            k = self.param
            memo: dict[int, int] = {}

            def down(i):
                if i not in memo:
                    best, t = 0, sub[i]
                    while t:
                        b = t & -t
                        t ^= b
                        d = down(b.bit_length() - 1)
                        if d > best:
                            best = d
                    memo[i] = best + 1
                return memo[i]

            umemo: dict[int, int] = {}

            def up(i):
                if i not in umemo:
                    best, t = 0, sup[i]
                    while t:
                        b = t & -t
                        t ^= b
                        d = up(b.bit_length() - 1)
                        if d > best:
                            best = d
                    umemo[i] = best + 1
                return umemo[i]

            dn = 1
            t = subm
            while t:
                b = t & -t
                t ^= b
                dn = max(dn, 1 + down(b.bit_length() - 1))
            upl = 1
            t = supm
            while t:
                b = t & -t
                t ^= b
                upl = max(upl, 1 + up(b.bit_length() - 1))
            return dn + upl - 1 >= k
        if kind in ("v", "fork"):
            r = self.param
            if supm.bit_count() >= r:
                return True
            t = subm
            while t:
                b = t & -t
                t ^= b
                if sup[b.bit_length() - 1].bit_count() >= r - 1:
                    return True
            return False
        if kind == "lambda":
            if subm.bit_count() >= 2:
                return True
            t = supm
            while t:
                b = t & -t
                t ^= b
                if sub[b.bit_length() - 1].bit_count() >= 1:
                    return True
            return False
        if kind == "diamond":
            t = subm
            while t:
                b = t & -t
                t ^= b
                a = b.bit_length() - 1
                if (sup[a] & subm).bit_count() >= 2:  # new member on top
                    return True
                tops = sup[a] & supm
                while tops:  # new member in the middle
                    bb = tops & -tops
                    tops ^= bb
                    if sup[a] & sub[bb.bit_length() - 1]:
                        return True
            t = supm
            while t:
                b = t & -t
                t ^= b
                if (sub[b.bit_length() - 1] & supm).bit_count() >= 2:  # on bottom
                    return True
            return False
        return False  # generic: handled by a full containment run in try_add

    def try_add(self, m: int) -> bool:
        subm = 0
        supm = 0
        for i, other in enumerate(self.members):
            if other & ~m == 0:
                subm |= 1 << i
            elif m & ~other == 0:
                supm |= 1 << i
        if self._violates(subm, supm):
            return False
        if self.kind == "generic":
            trial = Family.from_masks(self.n, self.members + [m])
            if contains_weak_subposet(trial, self.pattern):
                return False
        bit = 1 << len(self.members)
        t = subm
        while t:
            b = t & -t
            t ^= b
            self.sup[b.bit_length() - 1] |= bit
        t = supm
        while t:
            b = t & -t
            t ^= b
            self.sub[b.bit_length() - 1] |= bit
        self.members.append(m)
        self.sub.append(subm)
        self.sup.append(supm)
        return True

    def pop(self):
        self.members.pop()
        self.sub.pop()
        self.sup.pop()
        clear = ~(1 << len(self.members))
        for i in range(len(self.members)):
            self.sub[i] &= clear
            self.sup[i] &= clear


def _candidates(problem: SearchProblem, order_seed: Optional[int]) -> list[int]:
    n = problem.n
    lo, hi = problem.level_window if problem.level_window else (0, n)
    cands = []
    for size in range(lo, hi + 1):
        for combo in combinations(range(1, n + 1), size):
            mask = 0
            for e in combo:
                mask |= 1 << (e - 1)
            if mask not in problem.must_contain:
                cands.append(mask)
    cands.sort(key=lambda m: (abs(2 * m.bit_count() - n), m.bit_count(),
                              mask_elements(m)))
    if order_seed is not None:
        random.Random(order_seed).shuffle(cands)
    return cands


def _check_caps(problem: SearchProblem):
    kind, _ = _classify_pattern(problem.pattern)
    window = problem.level_window
    narrow = window is not None and window[1] - window[0] <= 2
    cap = 8 if narrow else (6 if kind == "chain" else 5)
    if problem.n > cap:
        raise CapacityError(
            f"search capped at n={cap} for this pattern/window, got n={problem.n}")


def _run_search(problem: SearchProblem, order_seed: Optional[int]) -> SearchResult:
    n = problem.n
    cands = _candidates(problem, order_seed)
    state = _FreeState(n, problem.pattern)
    for m in problem.must_contain:
        if not state.try_add(m):
            raise ValidationError("must_contain sets already contain the pattern")
    height_cap = problem.pattern.size - 1
    weights = [Fraction(1, math.comb(n, m.bit_count())) for m in cands]
    suffix_lub = [Fraction(0)] * (len(cands) + 1)
    suffix_maxbin = [0] * (len(cands) + 1)
    for i in range(len(cands) - 1, -1, -1):
        suffix_lub[i] = suffix_lub[i + 1] + weights[i]
        suffix_maxbin[i] = max(suffix_maxbin[i + 1],
                               math.comb(n, cands[i].bit_count()))

    base_count = len(problem.must_contain)
    base_lub = sum((Fraction(1, math.comb(n, m.bit_count()))
                    for m in problem.must_contain), Fraction(0))
    by_card = problem.objective == "cardinality"
    best_value = base_count if by_card else base_lub
    best_witness = list(state.members)
    nodes = 0

    def rec(i, count, lub):
        nonlocal best_value, best_witness, nodes
        nodes += 1
        value = count if by_card else lub
        if value > best_value:
            best_value = value
            best_witness = list(state.members)
        if i == len(cands):
            return
        if by_card:
            bound = min(count + (len(cands) - i),
                        count + int((height_cap - lub) * suffix_maxbin[i]))
        else:
            bound = min(lub + suffix_lub[i], Fraction(height_cap))
        if bound <= best_value:
            return
        m = cands[i]
        if state.try_add(m):
            rec(i + 1, count + 1, lub + weights[i])
            state.pop()
        rec(i + 1, count, lub)

    rec(0, base_count, base_lub)
    return SearchResult(best_value, Family.from_masks(n, best_witness), nodes)


def la_exact(problem: SearchProblem, order_seed: Optional[int] = None) -> SearchResult:
    """Largest pattern-free family size, with a witness attaining it."""
    _check_caps(problem)
    p = SearchProblem(problem.n, problem.pattern, problem.level_window,
                      problem.must_contain, "cardinality")
    return _run_search(p, order_seed)


def max_lubell(problem: SearchProblem, require_empty_set: bool = False,
               order_seed: Optional[int] = None) -> SearchResult:
    """Maximum Lubell value of a pattern-free family, exactly."""
    if problem.n > 5 or (problem.n == 5 and problem.level_window is None):
        raise CapacityError("max_lubell needs n <= 4, or n = 5 with a level window")
    must = problem.must_contain
    if require_empty_set and 0 not in must:
        must = (0,) + must
    p = SearchProblem(problem.n, problem.pattern, problem.level_window,
                      must, "lubell")
    return _run_search(p, order_seed)


# -- bound verification -------------------------------------------------------


@dataclass(frozen=True)
class BoundCheckReport:
    candidates: int
    checked: int
    failures: int
    worst_slack: float
    worst_witness: object
    max_lubell: Fraction
    max_lubell_witness: object

    @property
    def passed(self) -> bool:
        return self.checked > 0 and self.failures == 0


def _masks_of_sizes(n, smin, smax):
    masks = []
    for size in range(smin, smax + 1):
        for combo in combinations(range(n), size):
            m = 0
            for e in combo:
                m |= 1 << e
            masks.append(m)
    return masks


def _lambda_free_masks(masks):
    k = len(masks)
    for i in range(k):
        below = 0
        for j in range(k):
            if i != j and masks[j] & ~masks[i] == 0:
                below += 1
                if below >= 2:
                    return False
    return True


def check_lambda_free_bound_exhaustive(n: int, nprime: int,
                                       samples: Optional[int] = None,
                                       seed: int = 0) -> BoundCheckReport:
    """Check the lambda-free Lubell bound over families of sizes 1..n-nprime.

    Exhaustive for n <= 4; n = 5 uses seeded random sampling of at least
    10**5 candidate families.  The left side is exact; the right side is
    evaluated in floats with a 1e-12 guard.
    """
    if nprime < 1 or nprime >= n:
        raise DomainError("need 1 <= nprime < n")
    pool = _masks_of_sizes(n, 1, n - nprime)
    nfact = math.factorial(n)
    rng = random.Random(seed)
    if n <= 4:
        def families():
            for code in range(1 << len(pool)):
                yield [pool[i] for i in range(len(pool)) if code >> i & 1]
        total = 1 << len(pool)
    elif n == 5:
        samples = samples or 100_000
        def families():
            for _ in range(samples):
                yield [m for m in pool if rng.random() < 0.3]
        total = samples
    else:
        raise CapacityError("exhaustive bound check capped at n=5")

    checked = failures = 0
    worst = math.inf
    worst_fam = None
    best_lub = Fraction(0)
    best_fam = None
    for masks in families():
        if not _lambda_free_masks(masks):
            continue
        checked += 1
        maximal, minimal = _member_flags(masks)
        _, mnm, _, _, _ = kernels.chain_scan(n, masks, maximal, minimal)
        c = Fraction(mnm, nfact)
        lub = sum((Fraction(1, math.comb(n, m.bit_count())) for m in masks),
                  Fraction(0))
        rhs = lambda_free_bound(float(c), nprime)
        slack = rhs - float(lub)
        if float(lub) > rhs + 1e-12:
            failures += 1
        if slack < worst:
            worst = slack
            worst_fam = Family.from_masks(n, masks)
        if lub > best_lub:
            best_lub = lub
            best_fam = Family.from_masks(n, masks)
    return BoundCheckReport(total, checked, failures, worst, worst_fam,
                            best_lub, best_fam)


@dataclass(frozen=True)
class ScenarioCheckReport:
    samples: int
    failures: int
    worst_slack: float
    worst_scenario: object

    @property
    def passed(self) -> bool:
        return self.samples > 0 and self.failures == 0


def check_scenario_bound_random(n_values, samples: int,
                                seed: int = 0) -> ScenarioCheckReport:
    """Check the scenario Lubell bound on randomly drawn valid scenarios."""
    rng = random.Random(seed)
    n_values = list(n_values)
    failures = 0
    worst = math.inf
    worst_scen = None
    for i in range(samples):
        scen = random_scenario(rng, n_values[i % len(n_values)])
        st = scenario_stats(scen)
        rhs = scenario_bound(float(st.x), float(st.c), float(st.mu),
                             float(st.alpha), scen.nprime)
        lhs = float(lubell(scen.family))
        slack = rhs - lhs
        if lhs > rhs + 1e-12:
            failures += 1
        if slack < worst:
            worst = slack
            worst_scen = scen
    return ScenarioCheckReport(samples, failures, worst, worst_scen)
