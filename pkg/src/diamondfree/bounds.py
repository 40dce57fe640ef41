"""Piecewise bound functions on chain statistics, and their verification.

``lubell_bound(x, c)`` caps the Lubell value of a lambda-free family in
terms of the forbidden fraction x and the MNM chain fraction c.  It has
four branches: a tangent line in c, a concave sqrt curve, a plateau, and
the linear tail 1 - x for x >= 1/2.  The two split bounds recombine the
per-element child bounds of the induction into the parent bound, one per
forbidden-antichain case.  ``verify_bound_properties`` checks every
analytic property of these functions numerically on a dense admissible
grid and reports the worst slack per property.

This is the only module that works in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import DomainError

FINAL_CURVE_CSTAR = (2.0 - math.sqrt(2.0)) / 4.0
FINAL_CURVE_MAX = (3.0 + math.sqrt(2.0)) / 2.0

EQ_TOL = 1e-12
INEQ_TOL = 1e-9
TANGENCY_TOL = 1e-6


def _check_xc(x: float, c: float):
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0,1], got {x}")
    if not c >= 0.0:
        raise DomainError(f"c must be >= 0, got {c}")


def lubell_bound_branch(x: float, c: float) -> str:
    """Which branch of the bound is active: tangent, sqrt, plateau, linear."""
    _check_xc(x, c)
    if x > 0.5:
        return "linear"
    if c < 4.0 * (x - x * x) ** 2:
        return "tangent"
    if c <= 0.25:
        return "sqrt"
    return "plateau"


def lubell_bound(x: float, c: float) -> float:
    """Upper bound on the Lubell value given fractions x and c."""
    branch = lubell_bound_branch(x, c)
    if branch == "linear":
        return 1.0 - x
    if branch == "tangent":
        return 1.0 - x + (1.0 / (4.0 * (x - x * x)) - 1.0) * c
    if branch == "sqrt":
        return x * x - 2.0 * x + 1.0 - c + math.sqrt(c)
    return x * x - 2.0 * x + 1.25


def lubell_bound_exact(x: Fraction, c: Fraction) -> Optional[Fraction]:
    """Exact-rational bound value, or None when sqrt(c) is irrational."""
    if not (0 <= x <= 1 and c >= 0):
        raise DomainError("arguments outside the bound's domain")
    if x > Fraction(1, 2):
        return 1 - x
    thr = 4 * (x - x * x) ** 2
    if c < thr:
        return 1 - x + (Fraction(1, 1) / (4 * (x - x * x)) - 1) * c
    if c <= Fraction(1, 4):
        num, den = c.numerator, c.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn != num or rd * rd != den:
            return None
        return x * x - 2 * x + 1 - c + Fraction(rn, rd)
    return x * x - 2 * x + Fraction(5, 4)


def tangent_minorant(x: float, c: float) -> float:
    """The sqrt-branch expression, a lower bound for the full bound."""
    if not 0.0 <= x <= 0.5:
        raise DomainError(f"minorant needs x in [0,1/2], got {x}")
    if not 0.0 <= c <= 0.25:
        raise DomainError(f"minorant needs c in [0,1/4], got {c}")
    return x * x - 2.0 * x + 1.0 - c + math.sqrt(c)


def _split_inner(x, c, a, atilde, offset):
    # shared domain checks for the two split bounds; the admissible range
    # for atilde is [0, min(a, c/(x+a) - offset)], with offset 0 or x
    _check_xc(x, c)
    if not 0.0 <= a < 1.0 - x:
        raise DomainError(f"a must lie in [0, 1-x), got a={a}, x={x}")
    if not -EQ_TOL <= atilde <= a + EQ_TOL:
        raise DomainError(f"atilde must lie in [0, a], got {atilde}")
    used = (offset + atilde) * (x + a)
    if used > c + EQ_TOL:
        raise DomainError(f"atilde={atilde} above its admissible cap")
    return max(c - used, 0.0) / (1.0 - x - a)


def split_bound_singletons(x: float, c: float, a: float, atilde: float) -> float:
    """Recombined child bound when the forbidden antichain is all singletons."""
    inner = _split_inner(x, c, a, atilde, 0.0)
    return a + (1.0 - x - a) * lubell_bound(x + a, inner) \
        + 2.0 * atilde * (1.0 - x - a)


def split_bound_no_singletons(x: float, c: float, a: float, atilde: float) -> float:
    """Recombined child bound when the forbidden antichain has no singleton."""
    inner = _split_inner(x, c, a, atilde, x)
    return a + (1.0 - x - a) * lubell_bound(x + a, inner) \
        + 2.0 * atilde * (1.0 - x - a) + x - 3.0 * x * (x + a)


def lubell_bound_zero(c: float) -> float:
    """The x = 0 bound, 1 - min(c,1/4) + sqrt(min(c,1/4))."""
    if not c >= 0.0:
        raise DomainError(f"c must be >= 0, got {c}")
    ct = min(c, 0.25)
    return 1.0 - ct + math.sqrt(ct)


def lambda_free_bound(c: float, nprime: int) -> float:
    """Lubell bound for a lambda-free, empty-set-free family.

    Valid when the family has cn! MNM chains and the top nprime levels
    are empty.
    """
    if nprime < 1:
        raise DomainError("nprime must be >= 1")
    if not c >= 0.0:
        raise DomainError(f"c must be >= 0, got {c}")
    t = min(c + 1.0 / nprime, 0.25)
    return 1.0 - t + math.sqrt(t) + 3.0 / nprime


def scenario_bound(x: float, c: float, mu: float, alpha: float,
                   nprime: int) -> float:
    """Lubell bound for a forbidden-set scenario; generalizes
    :func:`lambda_free_bound`, which it equals at x = mu = alpha = 0."""
    if nprime < 1:
        raise DomainError("nprime must be >= 1")
    return lubell_bound(x, c + mu + 1.0 / nprime) - (alpha - mu - x) \
        + 3.0 / nprime


def final_curve(big_c: float) -> float:
    """The closing bound curve 1 + C + (1-C) * bound(C/(1-C))."""
    if not 0.0 <= big_c < 1.0:
        raise DomainError(f"C must lie in [0,1), got {big_c}")
    return 1.0 + big_c + (1.0 - big_c) * lubell_bound_zero(big_c / (1.0 - big_c))


def maximize_final_curve(tol: float = 1e-12) -> tuple[float, float]:
    """Golden-section maximum of the closing curve on [0, 1/5].

    Above C = 1/5 the curve decreases linearly, so the global maximum
    lies in this bracket.  Near the flat maximum, float64 curve values
    tie and would let the bracket drift, so the comparisons run at
    extended precision.  The analytic stationary point
    ``FINAL_CURVE_CSTAR`` is kept as an independent cross-check, not a
    substitute.
    """
    import mpmath

    with mpmath.workdps(40):
        def curve(c):
            # on [0, 1/5] the inner argument c/(1-c) stays below 1/4
            inner = c / (1 - c)
            return 1 + c + (1 - c) * (1 - inner + mpmath.sqrt(inner))

        gr = (mpmath.sqrt(5) + 1) / 2
        lo, hi = mpmath.mpf(0), mpmath.mpf("0.2")
        c1 = hi - (hi - lo) / gr
        c2 = lo + (hi - lo) / gr
        while abs(hi - lo) > tol:
            if curve(c1) > curve(c2):
                hi = c2
            else:
                lo = c1
            c1 = hi - (hi - lo) / gr
            c2 = lo + (hi - lo) / gr
        cstar = float((lo + hi) / 2)
    return cstar, final_curve(cstar)


def tail_mass(n: int) -> Fraction:
    """Exact mass of the levels at distance at least n^(2/3) from n/2,
    relative to the middle binomial coefficient.

    The cutoff |k - n/2| >= n^(2/3) is decided by the equivalent integer
    comparison |2k - n|^3 >= 8 n^2.
    """
    if n < 1:
        raise DomainError(f"tail_mass needs n >= 1, got {n}")
    total = sum(math.comb(n, k) for k in range(n + 1)
                if abs(2 * k - n) ** 3 >= 8 * n * n)
    return Fraction(total, math.comb(n, n // 2))


# -- grid verification --------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """Grid density and ranges for the bound-function property checks."""

    x_steps: int = 201
    c_steps: int = 201
    a_steps: int = 51
    atilde_steps: int = 51
    x_max: float = 1.0
    c_max: float = 1.0
    exact_anchors: bool = True

    def __post_init__(self):
        for s in (self.x_steps, self.c_steps, self.a_steps, self.atilde_steps):
            if s < 2:
                raise DomainError("each grid axis needs at least 2 steps")


@dataclass
class PropertyResult:
    name: str
    threshold: float
    worst_slack: float = math.inf
    location: tuple = ()
    points: int = 0

    @property
    def passed(self) -> bool:
        return self.worst_slack >= self.threshold

    def update(self, slack: float, location: tuple):
        self.points += 1
        if slack < self.worst_slack:
            self.worst_slack = slack
            self.location = location

    def update_array(self, slacks, locator):
        import numpy as np

        n = int(slacks.size)
        if n == 0:
            return
        self.points += n
        i = int(np.argmin(slacks))
        s = float(slacks.flat[i])
        if s < self.worst_slack:
            self.worst_slack = s
            self.location = locator(i)


@dataclass
class BoundReport:
    grid: GridSpec
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def result(self, name: str) -> PropertyResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)


def _c_branches(x, c):
    # tangent / sqrt / plateau selection; valid for x <= 1/2 entrywise
    import numpy as np

    thr = 4.0 * (x - x * x) ** 2
    tang = c < thr
    sq = ~tang & (c <= 0.25)
    pl = ~tang & ~sq
    vals = np.empty(x.shape, dtype=float)
    xt = x[tang]
    vals[tang] = 1.0 - xt + (1.0 / (4.0 * (xt - xt * xt)) - 1.0) * c[tang]
    xs, cs = x[sq], c[sq]
    vals[sq] = xs * xs - 2.0 * xs + 1.0 - cs + np.sqrt(cs)
    xp = x[pl]
    vals[pl] = xp * xp - 2.0 * xp + 1.25
    return vals


def _f_array(x, c):
    import numpy as np

    x, c = np.broadcast_arrays(np.asarray(x, float), np.asarray(c, float))
    out = np.empty(x.shape, dtype=float)
    lin = x >= 0.5
    out[lin] = 1.0 - x[lin]
    rest = ~lin
    out[rest] = _c_branches(x[rest], c[rest])
    return out


def _check_split_bound(res_ineq, res_mono, X, C, F, a_vals, t_vals, offset_x):
    # one split bound over the admissible (x,c,a,atilde) grid; offset_x
    # switches between the singletons and no-singleton variants
    import numpy as np

    nan = math.nan
    for a in a_vals:
        xa = X + a
        base = a < 1.0 - X
        denom = 1.0 - xa
        prev = None
        for t in t_vals:
            if t > a + EQ_TOL:
                break
            used = ((X + t) if offset_x else t) * xa
            mask = base & (used <= C)
            idx = np.flatnonzero(mask)
            if idx.size == 0:
                prev = None
                continue
            xa_c = xa[idx]
            den_c = denom[idx]
            # den_c can round to 0 when a is at the edge of 1-x; the inner
            # argument is then ignored by the linear branch of the bound
            inner = np.maximum(C[idx] - used[idx], 0.0) \
                / np.where(den_c > 0.0, den_c, 1.0)
            g = a + den_c * _f_array(xa_c, inner) + 2.0 * t * den_c
            if offset_x:
                g = g + X[idx] - 3.0 * X[idx] * xa_c
            res_ineq.update_array(
                F[idx] - g,
                lambda i, ix=idx, aa=float(a), tt=float(t): (
                    float(X[ix[i]]), float(C[ix[i]]), aa, tt))
            g_full = np.full(X.shape, nan)
            g_full[idx] = g
            if prev is not None:
                both = ~np.isnan(g_full) & ~np.isnan(prev)
                bidx = np.flatnonzero(both)
                if bidx.size:
                    res_mono.update_array(
                        (g_full - prev)[bidx],
                        lambda i, ix=bidx, aa=float(a), tt=float(t): (
                            float(X[ix[i]]), float(C[ix[i]]), aa, tt))
            prev = g_full


def verify_bound_properties(grid: GridSpec = GridSpec()) -> BoundReport:
    """Check the bound functions' analytic properties on a dense grid.

    Identity, continuity, monotonicity and concavity use the 1e-12
    equality tolerance; the comparison inequalities use the 1e-9 slack;
    the tangency quotient check uses 1e-6.  Slacks are signed so that a
    worst slack below the threshold marks a failure, and each property
    records where its worst point lies.
    """
    import numpy as np

    xs = np.linspace(0.0, grid.x_max, grid.x_steps)
    cs = np.linspace(0.0, grid.c_max, grid.c_steps)
    a_vals = np.linspace(0.0, 1.0, grid.a_steps)
    t_vals = np.linspace(0.0, 1.0, grid.atilde_steps)

    X = np.repeat(xs, len(cs))
    C = np.tile(cs, len(xs))
    F = _f_array(X, C)
    Fm = F.reshape(len(xs), len(cs))

    report = BoundReport(grid)

    r = PropertyResult("identity_at_zero", -EQ_TOL)
    ct = np.minimum(cs, 0.25)
    r.update_array(-np.abs(_f_array(np.zeros_like(cs), cs)
                           - (1.0 - ct + np.sqrt(ct))),
                   lambda i: (0.0, float(cs[i])))
    report.results.append(r)

    r = PropertyResult("monotone_decreasing_x", -EQ_TOL)
    r.update_array((Fm[:-1, :] - Fm[1:, :]).ravel(),
                   lambda i: (float(xs[i // len(cs)]), float(cs[i % len(cs)])))
    report.results.append(r)

    r = PropertyResult("monotone_increasing_c", -EQ_TOL)
    r.update_array((Fm[:, 1:] - Fm[:, :-1]).ravel(),
                   lambda i: (float(xs[i // (len(cs) - 1)]),
                              float(cs[i % (len(cs) - 1)])))
    report.results.append(r)

    r = PropertyResult("concave_in_c", -EQ_TOL)
    mid = (cs[:, None] + cs[None, :]) / 2.0
    for xi, x in enumerate(xs):
        fm = _f_array(np.full(mid.shape, x), mid)
        avg = (Fm[xi][:, None] + Fm[xi][None, :]) / 2.0
        r.update_array((fm - avg).ravel(),
                       lambda i, x=x: (float(x), float(cs[i // len(cs)]),
                                       float(cs[i % len(cs)])))
    report.results.append(r)

    r = PropertyResult("lower_bound_one_minus_x", -INEQ_TOL)
    r.update_array(F - (1.0 - X), lambda i: (float(X[i]), float(C[i])))
    report.results.append(r)

    r = PropertyResult("minorant", -INEQ_TOL)
    rect = np.flatnonzero((X <= 0.5) & (C <= 0.25))
    r.update_array(
        (F - (X * X - 2.0 * X + 1.0 - C + np.sqrt(C)))[rect],
        lambda i, ix=rect: (float(X[ix[i]]), float(C[ix[i]])))
    report.results.append(r)

    # branch agreement at the three breakpoints
    r = PropertyResult("continuity_breakpoints", -EQ_TOL)
    half = xs[xs <= 0.5]
    hx = half[half > 0.0]
    thr = 4.0 * (hx - hx * hx) ** 2
    tangent_side = 1.0 - hx + (1.0 / (4.0 * (hx - hx * hx)) - 1.0) * thr
    sqrt_side = hx * hx - 2.0 * hx + 1.0 - thr + np.sqrt(thr)
    r.update_array(-np.abs(tangent_side - sqrt_side),
                   lambda i: (float(hx[i]), float(thr[i])))
    sqrt_q = half * half - 2.0 * half + 1.0 - 0.25 + 0.5
    plateau_q = half * half - 2.0 * half + 1.25
    r.update_array(-np.abs(sqrt_q - plateau_q),
                   lambda i: (float(half[i]), 0.25))
    if grid.x_max >= 0.5:
        at_half = _c_branches(np.full(cs.shape, 0.5), cs)
        r.update_array(-np.abs(at_half - 0.5), lambda i: (0.5, float(cs[i])))
    report.results.append(r)

    # tangency of the first two branches, by one-sided difference quotients;
    # restricted to x where both quotients are well conditioned
    r = PropertyResult("tangency_quotients", -TANGENCY_TOL)
    dc = 1e-8
    for x in xs[(xs >= 0.1) & (xs <= 0.49)]:
        c0 = 4.0 * (x - x * x) ** 2
        if c0 - dc < 0.0 or c0 + dc > 0.25:
            continue
        left = (lubell_bound(x, c0) - lubell_bound(x, c0 - dc)) / dc
        right = (lubell_bound(x, c0 + dc) - lubell_bound(x, c0)) / dc
        r.update(-abs(left - right), (float(x), float(c0)))
    report.results.append(r)

    ineq_g = PropertyResult("split_singletons_below", -INEQ_TOL)
    mono_g = PropertyResult("split_singletons_atilde_monotone", -EQ_TOL)
    _check_split_bound(ineq_g, mono_g, X, C, F, a_vals, t_vals, offset_x=False)
    report.results.append(ineq_g)
    report.results.append(mono_g)

    ineq_h = PropertyResult("split_no_singletons_below", -INEQ_TOL)
    mono_h = PropertyResult("split_no_singletons_atilde_monotone", -EQ_TOL)
    _check_split_bound(ineq_h, mono_h, X, C, F, a_vals, t_vals, offset_x=True)
    report.results.append(ineq_h)
    report.results.append(mono_h)

    if grid.exact_anchors:
        r = PropertyResult("exact_rational_anchors", -EQ_TOL)
        for xq in (Fraction(0), Fraction(1, 8), Fraction(1, 4), Fraction(3, 8),
                   Fraction(1, 2), Fraction(3, 4), Fraction(1)):
            for p in range(0, 11):
                for q in (2, 3, 4, 5, 7, 10, 16, 20):
                    cq = Fraction(p, q) ** 2
                    if float(cq) > grid.c_max:
                        continue
                    exact = lubell_bound_exact(xq, cq)
                    if exact is None:
                        continue
                    approx = lubell_bound(float(xq), float(cq))
                    r.update(-abs(approx - float(exact)),
                             (float(xq), float(cq)))
        report.results.append(r)

    return report
