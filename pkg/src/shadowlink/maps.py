"""Piecewise-linear interval maps and the demo-grade smooth maps.

A PLMap is stored as breakpoints plus values at breakpoints (linear in
between), which makes continuity structural and slope data derived.  All
geometry downstream (images, preimages, shadow sets) relies on the exact
lap decomposition built here.
"""

from dataclasses import dataclass, field
from typing import Optional

import mpmath

from .scalars import (
    Q,
    Enclosure,
    Quadratic,
    exact_cmp,
    golden_ratio,
    is_exact,
    scalar_abs,
    scalar_max,
    scalar_min,
)


class DomainError(ValueError):
    pass


class PLMap:
    """Continuous piecewise-linear self-map of [lo, hi].

    ``breakpoints`` must be strictly increasing; ``values`` are the images
    of the breakpoints.  ``kind``/``param`` tag named constructions (tent
    maps) so structure-aware operations like ``core`` stay exact.
    """

    def __init__(self, breakpoints, values, kind=None, param=None,
                 check_self_map=True):
        if len(breakpoints) != len(values):
            raise ValueError("breakpoints and values must have equal length")
        if len(breakpoints) < 2:
            raise ValueError("need at least two breakpoints")
        for a, b in zip(breakpoints, breakpoints[1:]):
            if exact_cmp(a, b) >= 0:
                raise ValueError("breakpoints must be strictly increasing")
        self.breakpoints = list(breakpoints)
        self.values = list(values)
        self.lo = breakpoints[0]
        self.hi = breakpoints[-1]
        self.kind = kind
        self.param = param
        self.slopes = [
            (values[i + 1] - values[i]) / (breakpoints[i + 1] - breakpoints[i])
            for i in range(len(breakpoints) - 1)
        ]
        if check_self_map:
            for v in values:
                if exact_cmp(v, self.lo) < 0 or exact_cmp(v, self.hi) > 0:
                    raise ValueError("map values leave the domain (not a self-map)")

    @property
    def n_laps(self):
        return len(self.slopes)

    def is_constant_slope(self):
        mags = [scalar_abs(s) for s in self.slopes]
        return all(exact_cmp(m, mags[0]) == 0 for m in mags[1:])

    def max_slope(self):
        out = scalar_abs(self.slopes[0])
        for s in self.slopes[1:]:
            out = scalar_max(out, scalar_abs(s))
        return out

    def is_exact(self):
        return all(is_exact(x) for x in self.breakpoints + self.values)

    def contains(self, x):
        return exact_cmp(x, self.lo) >= 0 and exact_cmp(x, self.hi) <= 0

    def lap_index(self, x):
        """Index of a lap containing x (the leftmost one at breakpoints)."""
        lo, hi = 0, len(self.breakpoints) - 1
        if exact_cmp(x, self.lo) < 0 or exact_cmp(x, self.hi) > 0:
            raise DomainError("point %s outside [%s, %s]" % (x, self.lo, self.hi))
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if exact_cmp(x, self.breakpoints[mid]) <= 0:
                hi = mid
            else:
                lo = mid
        return lo

    def __call__(self, x):
        i = self.lap_index(x)
        return self.values[i] + self.slopes[i] * (x - self.breakpoints[i])

    def iterate(self, x, n):
        for _ in range(n):
            x = self(x)
        return x

    def orbit(self, x, n):
        out = [x]
        for _ in range(n):
            x = self(x)
            out.append(x)
        return out

    def __repr__(self):
        tag = self.kind or "plmap"
        return "PLMap(%s, %d laps on [%s, %s])" % (
            tag, self.n_laps, self.lo, self.hi)


def make_tent(s):
    """Tent map: x -> s*x on [0, 1/2], s*(1-x) on [1/2, 1]; needs 1 < s <= 2."""
    if exact_cmp(s, 1) <= 0 or exact_cmp(s, 2) > 0:
        raise ValueError("tent slope must satisfy 1 < s <= 2")
    half = Q(1, 2)
    return PLMap([Q(0), half, Q(1)], [Q(0), s * half, s * Q(0)], kind="tent",
                 param=s)


def make_tent_golden():
    return make_tent(golden_ratio())


def make_double_tent():
    """Odd extension of tent(2) to [-1, 1]: x -> -tent(2)(-x) for x < 0.

    Constant slope 2; the interior breakpoint 0 is not a critical point
    (both neighbouring laps have slope 2).
    """
    half = Q(1, 2)
    return PLMap(
        [Q(-1), -half, Q(0), half, Q(1)],
        [Q(0), Q(-1), Q(0), Q(1), Q(0)],
        kind="double-tent", param=Q(2))


def critical_points(m: PLMap):
    """Endpoints plus interior breakpoints where the slope actually changes."""
    out = [m.lo]
    for i in range(1, len(m.breakpoints) - 1):
        if exact_cmp(m.slopes[i - 1], m.slopes[i]) != 0:
            out.append(m.breakpoints[i])
    out.append(m.hi)
    return out


def _range_on(m, lo, hi):
    """Exact (min, max) of m over [lo, hi] via lap extrema."""
    cands = [m(lo), m(hi)]
    for p in m.breakpoints:
        if exact_cmp(p, lo) > 0 and exact_cmp(p, hi) < 0:
            cands.append(m(p))
    vmin = vmax = cands[0]
    for v in cands[1:]:
        vmin = scalar_min(vmin, v)
        vmax = scalar_max(vmax, v)
    return vmin, vmax


def restrict(m: PLMap, lo, hi):
    """Restriction to an exactly-verified invariant subinterval."""
    if exact_cmp(lo, m.lo) < 0 or exact_cmp(hi, m.hi) > 0 or exact_cmp(lo, hi) >= 0:
        raise DomainError("restriction interval not inside the domain")
    vmin, vmax = _range_on(m, lo, hi)
    if exact_cmp(vmin, lo) < 0 or exact_cmp(vmax, hi) > 0:
        raise DomainError(
            "interval [%s, %s] is not invariant: image is [%s, %s]"
            % (lo, hi, vmin, vmax))
    bps = [lo]
    for p in m.breakpoints:
        if exact_cmp(p, lo) > 0 and exact_cmp(p, hi) < 0:
            bps.append(p)
    bps.append(hi)
    return PLMap(bps, [m(p) for p in bps], kind=None, param=None)


def core(m: PLMap):
    """Invariant core (f^2(c), f(c)) of a tent map with slope in (sqrt(2), 2]."""
    if m.kind != "tent":
        raise ValueError("core is defined for tent maps")
    s = m.param
    if exact_cmp(s * s, 2) <= 0:
        raise ValueError("core requires slope > sqrt(2)")
    c = Q(1, 2)
    return m(m(c)), m(c)


def tent_core(m: PLMap):
    lo, hi = core(m)
    return restrict(m, lo, hi)


@dataclass
class CycleVerdict:
    point: object
    status: str  # "eventually-periodic" | "escaped" | "undecided"
    preperiod: Optional[int] = None
    period: Optional[int] = None
    orbit: list = field(default_factory=list)


def detect_critical_cycle(m: PLMap, max_steps=200):
    """Exact recurrence detection for each critical point's forward orbit."""
    if not m.is_exact():
        return [CycleVerdict(c, "undecided") for c in critical_points(m)]
    verdicts = []
    for c in critical_points(m):
        seen = {}
        x = c
        orbit = []
        verdict = None
        for i in range(max_steps + 1):
            if x in seen:
                first = seen[x]
                verdict = CycleVerdict(c, "eventually-periodic",
                                       preperiod=first, period=i - first,
                                       orbit=orbit)
                break
            seen[x] = i
            orbit.append(x)
            if not m.contains(x):
                verdict = CycleVerdict(c, "escaped", orbit=orbit)
                break
            x = m(x)
        verdicts.append(verdict or CycleVerdict(c, "undecided", orbit=orbit))
    return verdicts


def all_critical_orbits_periodic(m: PLMap, max_steps=200):
    vs = detect_critical_cycle(m, max_steps)
    if all(v.status == "eventually-periodic" for v in vs):
        return True, vs
    return False, vs


# ---------------------------------------------------------------------------
# smooth demo maps (enclosure-grade only)

CUBE = "cube"
PIECEWISE_CUBIC = "piecewise-cubic"
LOG_OSCILLATION = "log-oscillation"


class SmoothMap1D:
    """Increasing homeomorphisms of [-1, 1] fixing -1, 0, 1 (demo-grade).

    Variants: ``cube`` x^3; ``piecewise-cubic`` ((2x+1)^3 - 1)/2 on [-1, 0]
    and x^3 on [0, 1]; ``log-oscillation`` x + x*sin(2*pi*ln|x|)/(2*pi*sqrt(2))
    on [-1, 0) and x^3 on [0, 1].  Evaluation returns sound enclosures
    computed with outward interval arithmetic.
    """

    VARIANTS = (CUBE, PIECEWISE_CUBIC, LOG_OSCILLATION)

    def __init__(self, variant, precision_bits=80):
        if variant not in self.VARIANTS:
            raise ValueError("unknown variant %r" % (variant,))
        self.variant = variant
        self.precision_bits = precision_bits
        self.lo, self.hi = Q(-1), Q(1)

    def _iv(self, lo, hi):
        return mpmath.iv.mpf([mpmath.mpf(lo.numerator) / mpmath.mpf(lo.denominator),
                              mpmath.mpf(hi.numerator) / mpmath.mpf(hi.denominator)])

    def _formula(self, xi):
        if self.variant == CUBE:
            return xi ** 3
        if xi.b <= 0:
            if self.variant == PIECEWISE_CUBIC:
                return ((2 * xi + 1) ** 3 - 1) / 2
            # log-oscillation branch; undefined at 0 but extends by 0
            if xi.a == xi.b == 0:
                return mpmath.iv.mpf(0)
            two_pi = 2 * mpmath.iv.pi
            osc = xi * mpmath.iv.sin(two_pi * mpmath.iv.log(abs(xi)))
            return xi + osc / (two_pi * mpmath.iv.sqrt(2))
        if xi.a >= 0:
            return xi ** 3
        raise DomainError("enclosure straddles the branch point 0")

    def __call__(self, x):
        lo, hi = (x.lo, x.hi) if isinstance(x, Enclosure) else (Q(x), Q(x))
        if lo < -1 or hi > 1:
            raise DomainError("point outside [-1, 1]")
        old = mpmath.mp.prec
        try:
            mpmath.mp.prec = self.precision_bits
            if lo < 0 < hi:
                left = self._formula(self._iv(lo, Q(0)))
                right = self._formula(self._iv(Q(0), hi))
                res = left.a if left.a < right.a else right.a, \
                    left.b if left.b > right.b else right.b
                a, b = res
            else:
                out = self._formula(self._iv(lo, hi))
                a, b = out.a, out.b
            enc = Enclosure(_mpf_to_q(a, down=True), _mpf_to_q(b, down=False))
        finally:
            mpmath.mp.prec = old
        return Enclosure(scalar_max(enc.lo, Q(-1)), scalar_min(enc.hi, Q(1)))

    def iterate(self, x, n):
        for _ in range(n):
            x = self(x)
        return x

    def __repr__(self):
        return "SmoothMap1D(%s)" % self.variant


def _mpf_to_q(v, down):
    """Dyadic rational bound for an mpf, rounded outward."""
    v = mpmath.mpf(v)
    if v == 0:
        return Q(0)
    num, exp = int(v.man if hasattr(v, "man") else 0), 0
    # use exact man/exp decomposition
    man, exp = mpmath.libmp.from_man_exp, None
    m, e = v._mpf_[1], v._mpf_[2]
    if v < 0:
        m = -m
    if e >= 0:
        return Q(m << e)
    return Q(m, 1 << (-e))


def log_oscillation_fixed_points(count=6):
    """The oscillatory branch fixes x = -exp(-k/2); return the first few.

    These accumulate at the fixed point 0 from the left, which is what the
    tail-failure demo leans on.
    """
    out = []
    old = mpmath.mp.prec
    try:
        mpmath.mp.prec = 80
        for k in range(1, count + 1):
            iv = -mpmath.iv.exp(mpmath.iv.mpf(-k) / 2)
            out.append(Enclosure(_mpf_to_q(iv.a, True), _mpf_to_q(iv.b, False)))
    finally:
        mpmath.mp.prec = old
    return out
