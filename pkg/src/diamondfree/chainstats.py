"""Chain statistics for lambda-free families under forbidden-set scenarios.

A Scenario bundles a lambda-free family F with a forbidden element set X,
a forbidden antichain (each of whose members contains exactly one X
element), and a top-level margin nprime.  This module computes the
scenario's exact chain statistics, verifies the counting identities that
relate them, derives the per-element child scenarios used by the
induction, and profiles families by their minimal members.

Every quantity is an exact Fraction with denominator dividing n!; no
check in this module has a tolerance.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from . import kernels
from .errors import CapacityError, DomainError, UnsupportedCaseError, ValidationError
from .lattice import MAX_CHAIN_N, Family, lubell, mask_elements, complement_family
from .posets import is_lambda_free


def _member_flags(members):
    k = len(members)
    maximal = [True] * k
    minimal = [True] * k
    for i in range(k):
        mi = members[i]
        for j in range(k):
            mj = members[j]
            if mi != mj and mi & ~mj == 0:  # mi ⊂ mj
                maximal[i] = False
                minimal[j] = False
    return maximal, minimal


def _check_cap(n: int):
    if n > MAX_CHAIN_N:
        raise CapacityError(f"chain enumeration capped at n={MAX_CHAIN_N}, got {n}")


def count_mnm(family: Family) -> Fraction:
    """Fraction of chains whose largest family member is not maximal."""
    _check_cap(family.n)
    members = list(family.members)
    maximal, minimal = _member_flags(members)
    _, mnm, _, _, _ = kernels.chain_scan(family.n, members, maximal, minimal)
    return Fraction(mnm, math.factorial(family.n))


# -- scenarios ---------------------------------------------------------------


@dataclass(frozen=True)
class Scenario:
    """A lambda-free family with forbidden set/antichain and margin nprime."""

    n: int
    family: Family
    forbidden_set: int  # element bitmask
    forbidden_antichain: Family
    nprime: int

    @staticmethod
    def from_sets(n, family_sets, x_elements, antichain_sets, nprime):
        from .lattice import subset_mask

        return Scenario(n, Family.from_sets(n, family_sets),
                        subset_mask(n, x_elements),
                        Family.from_sets(n, antichain_sets), nprime)


@dataclass(frozen=True)
class ScenarioParts:
    """Derived decomposition of a scenario's family."""

    a_mask: int       # elements whose singletons lie in the family
    atilde_mask: int  # those also covered by a larger family member
    o_mask: int       # elements outside both X and A
    b_family: Family  # non-singleton members meeting A
    c_family: Family  # members inside the O block


def _related(m1: int, m2: int) -> bool:
    return m1 & ~m2 == 0 or m2 & ~m1 == 0


def scenario_parts(s: Scenario) -> ScenarioParts:
    full = (1 << s.n) - 1
    a_mask = 0
    for m in s.family.members:
        if m.bit_count() == 1:
            a_mask |= m
    b_members, c_members = [], []
    atilde = 0
    for m in s.family.members:
        if m.bit_count() >= 2:
            if m & a_mask:
                b_members.append(m)
                atilde |= m & a_mask
            else:
                c_members.append(m)
    o_mask = full & ~s.forbidden_set & ~a_mask
    return ScenarioParts(a_mask, atilde, o_mask,
                         Family.from_masks(s.n, b_members),
                         Family.from_masks(s.n, c_members))


def validate_scenario(s: Scenario) -> ScenarioParts:
    """Check every scenario invariant; the error names the failed clause."""
    if s.n < 1:
        raise ValidationError("scenario needs n >= 1")
    if s.nprime < 1:
        raise ValidationError("scenario needs nprime >= 1")
    if s.family.n != s.n or s.forbidden_antichain.n != s.n:
        raise ValidationError("family and antichain must share the scenario's n")
    full = (1 << s.n) - 1
    if s.forbidden_set & ~full:
        raise ValidationError("forbidden set has elements outside the ground set")
    if 0 in s.family.members:
        raise ValidationError("family must not contain the empty set")
    for m in s.family.members:
        if m.bit_count() > s.n - s.nprime:
            raise ValidationError("family contains a set larger than n - nprime")
        if m & s.forbidden_set:
            raise ValidationError("family member meets the forbidden set")
    if not is_lambda_free(s.family):
        raise ValidationError("family must be lambda-free")
    xf = s.forbidden_antichain.members
    for i, m1 in enumerate(xf):
        if (m1 & s.forbidden_set).bit_count() != 1:
            raise ValidationError(
                "forbidden antichain member must contain exactly one forbidden element")
        for m2 in xf[i + 1:]:
            if _related(m1, m2):
                raise ValidationError("forbidden antichain contains comparable sets")
    for m in s.family.members:
        for d in xf:
            if _related(m, d):
                raise ValidationError(
                    "family member comparable to a forbidden antichain member")
    parts = scenario_parts(s)
    # structural consequences of the invariants, asserted for safety
    for d in xf:
        if d & parts.a_mask:
            raise ValidationError("forbidden antichain member meets a singleton element")
    bm = parts.b_family.members
    for i, b in enumerate(bm):
        if (b & parts.a_mask).bit_count() != 1:
            raise ValidationError("meeting-A member must contain exactly one singleton element")
        for other in bm[i + 1:]:
            if _related(b, other):
                raise ValidationError("meeting-A members must form an antichain")
        for c in parts.c_family.members:
            if _related(b, c):
                raise ValidationError("meeting-A member comparable to an O-block member")
    return parts


@dataclass(frozen=True)
class ScenarioStats:
    """Exact chain statistics of a valid scenario."""

    x: Fraction
    a: Fraction
    atilde: Fraction
    alpha: Fraction
    beta: Fraction
    mu: Fraction
    nu: Fraction
    c: Fraction
    c0: Fraction
    onebar: Fraction
    oneunder: Fraction


def scenario_stats(s: Scenario) -> ScenarioStats:
    parts = validate_scenario(s)
    _check_cap(s.n)
    n = s.n
    nfact = math.factorial(n)
    full = (1 << n) - 1
    x = Fraction(s.forbidden_set.bit_count(), n)
    a = Fraction(parts.a_mask.bit_count(), n)
    atilde = Fraction(parts.atilde_mask.bit_count(), n)
    alpha = lubell(s.forbidden_antichain)
    beta = lubell(parts.b_family)
    mu = Fraction(kernels.count_chains(n, list(s.forbidden_antichain.members),
                                       s.forbidden_set, full, False), nfact)
    bm = list(parts.b_family.members)
    nu = Fraction(kernels.count_chains(n, bm, parts.atilde_mask, parts.o_mask,
                                       False), nfact)
    c0 = Fraction(kernels.count_chains(n, bm, parts.atilde_mask, full, False),
                  nfact)
    c = count_mnm(s.family)
    onebar = Fraction(n, n - 1) if n >= 2 else Fraction(1)
    if x + a == 0 or n == 1:
        oneunder = Fraction(1)
    else:
        oneunder = ((x + a) * n - 1) / ((x + a) * (n - 1))
    return ScenarioStats(x, a, atilde, alpha, beta, mu, nu, c, c0,
                         onebar, oneunder)


class CaseTag(Enum):
    SINGLETONS = "singletons"
    NO_SINGLETON = "no_singleton"
    MIXED = "mixed"


def classify_case(s: Scenario) -> CaseTag:
    """Classify the forbidden antichain: all singletons, none, or mixed."""
    xf = set(s.forbidden_antichain.members)
    singles = {1 << (e - 1) for e in mask_elements(s.forbidden_set)}
    if xf == singles:
        return CaseTag.SINGLETONS
    if all(m.bit_count() >= 2 for m in xf):
        return CaseTag.NO_SINGLETON
    return CaseTag.MIXED


# -- identity checks ---------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    lhs: Fraction
    rhs: Fraction
    relation: str  # "==", "<=", ">="

    @property
    def passed(self) -> bool:
        if self.relation == "==":
            return self.lhs == self.rhs
        if self.relation == "<=":
            return self.lhs <= self.rhs
        return self.lhs >= self.rhs

    def as_record(self) -> dict:
        return {"name": self.name, "lhs": str(self.lhs), "rhs": str(self.rhs),
                "relation": self.relation, "pass": self.passed}


def verify_counting_props(s: Scenario) -> list[Check]:
    """Exact identity/inequality checks relating the scenario statistics.

    Chain classes on the left sides are enumerated independently of the
    closed forms on the right sides.
    """
    parts = validate_scenario(s)
    st = scenario_stats(s)
    case = classify_case(s)
    n = s.n
    nfact = math.factorial(n)
    full = (1 << n) - 1
    xf = list(s.forbidden_antichain.members)
    bm = list(parts.b_family.members)

    checks = [
        Check("cbound_identity",
              st.atilde * (st.x + st.a) * st.oneunder + st.nu, st.c0, "=="),
        Check("cbound_mnm", st.c0, st.c, "<="),
        Check("bfamily_chain_split",
              Fraction(kernels.count_chains(n, bm, parts.o_mask, full, True),
                       nfact),
              st.beta - st.atilde * (1 - st.x - st.a) * st.onebar + st.nu,
              "=="),
    ]
    if case is CaseTag.NO_SINGLETON:
        checks.append(Check(
            "antichain_chain_split",
            Fraction(kernels.count_chains(n, xf, parts.o_mask, full, True),
                     nfact),
            st.alpha - st.x + st.mu, "=="))
        checks.append(Check(
            "mu_lower_bound", st.mu, st.x * (st.x + st.a) * st.oneunder, ">="))
        checks.append(Check(
            "mu_excess_count",
            Fraction(kernels.count_chains(n, xf, s.forbidden_set,
                                          parts.o_mask, False), nfact),
            st.mu - st.x * (st.x + st.a) * st.oneunder, "=="))
    return checks


# -- child scenarios ---------------------------------------------------------


def _drop_element(mask: int, bit_index: int) -> int:
    low = mask & ((1 << bit_index) - 1)
    high = mask >> (bit_index + 1)
    return low | (high << bit_index)


@dataclass(frozen=True)
class ChildDerivation:
    children: tuple[Scenario, ...]
    child_elements: tuple[int, ...]
    child_stats: tuple[ScenarioStats, ...]
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(ch.passed for ch in self.checks)


def derive_children(s: Scenario) -> ChildDerivation:
    """Restrict the scenario to each element outside X and A.

    Builds the combined forbidden antichain for the next level, forms one
    child scenario per element of the O block, and checks the exact sum
    identities and bounds tying the children's statistics to the parent's.
    """
    parts = validate_scenario(s)
    st = scenario_stats(s)
    case = classify_case(s)
    if case is CaseTag.MIXED:
        raise UnsupportedCaseError(
            "mixed forbidden antichains are rejected; split into the pure cases")
    n = s.n
    full = (1 << n) - 1
    x_elems = mask_elements(s.forbidden_set)
    o_elems = mask_elements(parts.o_mask)
    spare = parts.a_mask & ~parts.atilde_mask  # singleton elements no member covers

    pair_y = [(1 << (d - 1)) | (1 << (o - 1)) for d in x_elems for o in o_elems]
    pair_z = [(1 << (e - 1)) | (1 << (o - 1))
              for e in mask_elements(spare) for o in o_elems]
    base = pair_y if case is CaseTag.SINGLETONS else list(s.forbidden_antichain.members)
    groups = [base, list(parts.b_family.members), pair_z]
    combined = [m for g in groups for m in g]

    checks = []
    disjoint = len(set(combined)) == sum(len(g) for g in groups)
    checks.append(Check("combined_parts_disjoint",
                        Fraction(len(set(combined))),
                        Fraction(sum(len(g) for g in groups)), "=="))
    antichain_ok = all(not _related(combined[i], combined[j])
                       for i in range(len(combined))
                       for j in range(i + 1, len(combined)))
    checks.append(Check("combined_antichain", Fraction(int(antichain_ok)),
                        Fraction(1), "=="))
    if not (disjoint and antichain_ok):
        raise ValidationError("combined forbidden antichain is malformed")

    xprime = s.forbidden_set | parts.a_mask
    children, child_stats = [], []
    for o in o_elems:
        bit = 1 << (o - 1)
        idx = o - 1
        c_i = [_drop_element(m & ~bit, idx)
               for m in parts.c_family.members if m & bit]
        xf_i = [_drop_element(m & ~bit, idx) for m in combined if m & bit]
        child = Scenario(n - 1, Family.from_masks(n - 1, c_i),
                         _drop_element(xprime, idx),
                         Family.from_masks(n - 1, xf_i), s.nprime)
        children.append(child)
        child_stats.append(scenario_stats(child))  # validates preconditions

    checks.append(Check("children_valid", Fraction(len(children)),
                        Fraction(len(o_elems)), "=="))

    sum_alpha = sum((cs.alpha for cs in child_stats), Fraction(0))
    sum_mu = sum((cs.mu for cs in child_stats), Fraction(0))
    sum_c = sum((cs.c for cs in child_stats), Fraction(0))
    sum_lub = sum((lubell(ch.family) for ch in children), Fraction(0))

    tail = (st.beta - st.atilde * (1 - st.x - st.a) * st.onebar + st.nu) \
        + (1 - st.x - st.a) * (st.a - st.atilde) * st.onebar
    if case is CaseTag.SINGLETONS:
        alpha_bound = (st.x * (1 - st.x - st.a) * st.onebar + tail) * n
        mu_sum_rhs = st.nu * n
    else:
        alpha_bound = ((st.alpha - st.x + st.mu) + tail) * n
        mu_sum_rhs = (st.mu - st.x * (st.x + st.a) * st.oneunder + st.nu) * n
    checks.append(Check("children_alpha_sum", sum_alpha, alpha_bound, ">="))
    checks.append(Check("children_mu_sum", sum_mu, mu_sum_rhs, "=="))
    checks.append(Check("children_mnm_sum", sum_c, (st.c - st.c0) * n, "=="))

    # the same sums, tied to parent-level chain classes
    nfact = math.factorial(n)
    fact1 = math.factorial(n - 1)
    hit = kernels.count_chains(n, combined, parts.o_mask, full, True)
    checks.append(Check("children_alpha_chains", sum_alpha,
                        Fraction(hit, fact1), "=="))
    avoid = kernels.count_chains(n, combined, parts.o_mask, xprime, False)
    checks.append(Check("children_mu_chains", sum_mu,
                        Fraction(avoid, fact1), "=="))

    checks.append(Check("lubell_split", lubell(s.family),
                        st.a + st.beta + lubell(parts.c_family), "=="))
    checks.append(Check("lubell_recursion", lubell(parts.c_family),
                        Fraction(1, n) * sum_lub, "=="))
    return ChildDerivation(tuple(children), tuple(o_elems),
                           tuple(child_stats), tuple(checks))


# -- minimal-member profile --------------------------------------------------


def _drop_mask(mask: int, removed: int, n: int) -> int:
    out = 0
    pos = 0
    for b in range(n):
        if removed >> b & 1:
            continue
        if mask >> b & 1:
            out |= 1 << pos
        pos += 1
    return out


@dataclass(frozen=True)
class MinsetProfile:
    c_values: dict          # minimal member elements -> Fraction
    big_c: Fraction         # chains meeting nothing or with non-minimal minimum
    mnm: Fraction
    decomposition_ok: bool
    accounting_chains: int  # MNM chains whose minimum is a minimal member
    accounting_within_mnm: bool
    normalized_swapped: bool
    normalized_big_c: Fraction
    normalized_accounting_ok: bool


def minset_profile(family: Family) -> MinsetProfile:
    """Per-minimal-member MNM fractions and the global chain accounting.

    For each minimal member A the value c(A) is the MNM fraction of the
    sublattice of supersets of A, taken over (n-|A|)! chains.  The global
    accounting compares the number of MNM chains passing through minimal
    members against the non-minimal-minimum fraction, on whichever of the
    family and its complement satisfies that comparison.
    """
    n = family.n
    _check_cap(n)
    members = list(family.members)
    nfact = math.factorial(n)

    def orientation(fam):
        mem = list(fam.members)
        maximal, minimal = _member_flags(mem)
        hits, mnm, badmin, _, min_hit_sums = kernels.chain_scan(
            fam.n, mem, maximal, minimal)
        return mem, minimal, hits, mnm, badmin, min_hit_sums

    mem, minimal, hits, mnm, badmin, min_hit_sums = orientation(family)
    comp = complement_family(family)
    _, _, _, c_mnm, c_badmin, _ = orientation(comp)

    c_values = {}
    acc = 0
    for i, m in enumerate(mem):
        if not minimal[i]:
            continue
        size = m.bit_count()
        reduced = Family.from_masks(
            n - size, [_drop_mask(s & ~m, m, n) for s in mem if s & m == m])
        c_a = count_mnm(reduced)
        c_values[mask_elements(m)] = c_a
        acc += math.factorial(size) * int(c_a * math.factorial(n - size))

    decomposition_ok = Fraction(sum(min_hit_sums), nfact) == lubell(family)
    swapped = badmin < c_badmin
    norm_badmin, norm_mnm = (c_badmin, c_mnm) if swapped else (badmin, mnm)
    norm_acc = acc
    if swapped:
        # accounting is stated for the normalized orientation
        cmem, cminimal, _, _, _, _ = orientation(comp)
        norm_acc = 0
        for i, m in enumerate(cmem):
            if not cminimal[i]:
                continue
            size = m.bit_count()
            reduced = Family.from_masks(
                n - size, [_drop_mask(s & ~m, m, n) for s in cmem if s & m == m])
            norm_acc += math.factorial(size) * int(
                count_mnm(reduced) * math.factorial(n - size))
    return MinsetProfile(
        c_values=c_values,
        big_c=Fraction(badmin, nfact),
        mnm=Fraction(mnm, nfact),
        decomposition_ok=decomposition_ok,
        accounting_chains=acc,
        accounting_within_mnm=acc <= mnm,
        normalized_swapped=swapped,
        normalized_big_c=Fraction(norm_badmin, nfact),
        normalized_accounting_ok=norm_acc <= norm_badmin,
    )


# -- Monte Carlo estimates ---------------------------------------------------

MC_GENERATORS = ("even-odd", "canonical", "two-middle-levels")


def mc_estimate(generator: str, n: int, samples: int, seed: int,
                a_size: Optional[int] = None) -> dict:
    """Estimate Lubell value and MNM fraction from uniform random chains.

    Membership uses the construction's closed-form predicate, which only
    involves a chain's first two elements, so only those are sampled (the
    first two entries of a uniformly random permutation).  Deterministic
    for a given seed.  With a single sample the standard errors are
    undefined and flagged.
    """
    import numpy as np

    if samples < 1:
        raise DomainError("samples must be >= 1")
    if n < 2:
        raise DomainError("Monte Carlo estimation needs n >= 2")
    if generator not in MC_GENERATORS:
        raise DomainError(f"unknown generator {generator!r}")
    rng = np.random.default_rng(seed)
    first = rng.integers(0, n, size=samples)
    second = rng.integers(0, n - 1, size=samples)
    second = second + (second >= first)

    if generator == "two-middle-levels":
        counts = np.full(samples, 2, dtype=np.int64)
        mnm = np.zeros(samples, dtype=np.int64)
    else:
        if generator == "even-odd":
            in_a1 = (first % 2) == 1   # 0-based index i is element i+1
            in_a2 = (second % 2) == 1
            a_count = n // 2
        else:
            if a_size is None:
                raise DomainError("canonical generator needs a_size")
            if not 0 <= a_size <= n:
                raise DomainError("a_size must be within 0..n")
            in_a1 = first < a_size
            in_a2 = second < a_size
            a_count = a_size
        counts = 1 + in_a1.astype(np.int64) + (~(in_a1 & in_a2)).astype(np.int64)
        mnm = (in_a1 & in_a2).astype(np.int64) if a_count < n \
            else np.zeros(samples, dtype=np.int64)

    def est(values):
        mean = float(values.mean())
        if samples < 2:
            return mean, None
        return mean, float(values.std(ddof=1) / math.sqrt(samples))

    lub, lub_se = est(counts)
    mnm_est, mnm_se = est(mnm)
    return {"lubell": lub, "lubell_stderr": lub_se,
            "mnm": mnm_est, "mnm_stderr": mnm_se,
            "samples": samples, "stderr_defined": samples >= 2}


# -- random scenario generation ----------------------------------------------


def random_scenario(seed, n: int, nprime: Optional[int] = None,
                    case: Optional[CaseTag] = None) -> Scenario:
    """Draw a valid scenario, reproducibly.

    Sampling order: the forbidden set X, then the singleton block A from
    its complement, then the forbidden antichain (per the requested case),
    then greedy addition of meeting-A and O-block members while lambda
    freeness and antichain incomparability are preserved.  Rejection
    sampling guards the full invariant set, though by construction it
    nearly always passes first try.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if n < 2:
        raise DomainError("random scenarios need n >= 2")
    for _ in range(100):
        npr = nprime if nprime is not None else rng.randint(1, min(3, n - 1))
        tag = case if case is not None else rng.choice(
            [CaseTag.SINGLETONS, CaseTag.NO_SINGLETON])
        elems = list(range(1, n + 1))
        x_elems = rng.sample(elems, rng.randint(0, n // 3))
        rest = [e for e in elems if e not in x_elems]
        a_elems = rng.sample(rest, rng.randint(0, min(len(rest), n // 2)))
        o_elems = [e for e in rest if e not in a_elems]

        xfam: list[frozenset] = []
        if tag is CaseTag.SINGLETONS:
            xfam = [frozenset([d]) for d in x_elems]
        else:
            for d in x_elems:
                for _ in range(rng.randint(0, 2)):
                    width = rng.randint(1, max(1, min(2, len(o_elems))))
                    if len(o_elems) < width:
                        continue
                    cand = frozenset([d] + rng.sample(o_elems, width))
                    if all(not (cand <= other or other <= cand)
                           for other in xfam):
                        xfam.append(cand)

        members = [frozenset([e]) for e in a_elems]
        big = []

        def unrelated_to_all(cand):
            return (all(not (cand <= other or other <= cand) for other in big)
                    and all(not (cand <= d or d <= cand) for d in xfam))

        max_size = n - npr
        for e in a_elems:
            for _ in range(rng.randint(0, 2)):
                width = rng.randint(1, max(1, min(3, max_size - 1, len(o_elems))))
                if len(o_elems) < width or max_size < width + 1:
                    continue
                cand = frozenset([e] + rng.sample(o_elems, width))
                if unrelated_to_all(cand):
                    big.append(cand)
        for _ in range(rng.randint(0, n)):
            if len(o_elems) < 2 or max_size < 2:
                break
            width = rng.randint(2, max(2, min(4, max_size, len(o_elems))))
            if len(o_elems) < width:
                continue
            cand = frozenset(rng.sample(o_elems, width))
            if unrelated_to_all(cand):
                big.append(cand)

        scen = Scenario.from_sets(n, members + big, x_elems,
                                  [tuple(sorted(d)) for d in xfam], npr)
        try:
            validate_scenario(scen)
        except ValidationError:
            continue
        if case is not None and classify_case(scen) is not case:
            continue
        return scen
    raise RuntimeError("scenario sampling failed to produce a valid draw")


# -- scenario serialization ---------------------------------------------------
#
# Scenario files extend the family text format: after the "n=" header comes
# "nprime=<int>", the family's subset lines, an "X=<elements or {}>" line,
# and an "XFAM=" line followed by the antichain's subset lines.


def scenario_to_text(s: Scenario) -> str:
    lines = [f"n={s.n}", f"nprime={s.nprime}"]
    for elems in s.family.member_sets():
        lines.append(",".join(map(str, elems)) if elems else "{}")
    xe = mask_elements(s.forbidden_set)
    lines.append("X=" + (",".join(map(str, xe)) if xe else "{}"))
    lines.append("XFAM=")
    for elems in s.forbidden_antichain.member_sets():
        lines.append(",".join(map(str, elems)) if elems else "{}")
    return "\n".join(lines) + "\n"


def scenario_from_text(text: str) -> Scenario:
    from .lattice import subset_mask

    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 3 or not lines[0].startswith("n=") \
            or not lines[1].startswith("nprime="):
        raise DomainError("scenario text must start with 'n=' and 'nprime=' headers")
    n = int(lines[0][2:])
    nprime = int(lines[1][7:])
    fam_lines, x_line, xfam_lines = [], None, []
    section = "family"
    for ln in lines[2:]:
        if ln.startswith("X="):
            x_line = ln[2:]
            section = "x"
        elif ln == "XFAM=":
            section = "xfam"
        elif section == "family":
            fam_lines.append(ln)
        elif section == "xfam":
            xfam_lines.append(ln)
        else:
            raise DomainError(f"unexpected line {ln!r} after X=")
    if x_line is None:
        raise DomainError("scenario text is missing the X= line")

    def parse(ln):
        if ln == "{}":
            return ()
        return tuple(int(tok) for tok in ln.split(","))

    x_elems = () if x_line in ("{}", "") else tuple(
        int(tok) for tok in x_line.split(","))
    return Scenario(n, Family.from_sets(n, [parse(ln) for ln in fam_lines]),
                    subset_mask(n, x_elems),
                    Family.from_sets(n, [parse(ln) for ln in xfam_lines]),
                    nprime)
