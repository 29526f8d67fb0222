"""Exact set algebra on finite unions of closed intervals.

Everything downstream — Bowen balls, shadow sets, linking witnesses —
reduces to images, preimages and boolean operations computed here.  The
convention is closed intervals and weak inequalities throughout: emptiness
stays exactly decidable and sets are at worst fattened by boundary points,
which never flips any verdict that is continuous in epsilon/delta.
"""

from functools import cmp_to_key

from . import config
from .scalars import Q, exact_cmp, scalar_max, scalar_min


class ComponentCapError(RuntimeError):
    pass


def _cmp_interval(a, b):
    c = exact_cmp(a[0], b[0])
    return c if c != 0 else exact_cmp(a[1], b[1])


class IntervalSet:
    """Sorted, disjoint, closed intervals; degenerate points allowed."""

    __slots__ = ("intervals",)

    def __init__(self, intervals=(), normalized=False):
        if normalized:
            self.intervals = list(intervals)
        else:
            self.intervals = self._normalize(intervals)
        if len(self.intervals) > config.get_component_cap():
            raise ComponentCapError(
                "interval set exceeds the %d-component cap"
                % config.get_component_cap())

    @staticmethod
    def _normalize(pairs):
        items = []
        for lo, hi in pairs:
            if exact_cmp(lo, hi) > 0:
                raise ValueError("interval endpoints out of order")
            items.append((lo, hi))
        items.sort(key=cmp_to_key(_cmp_interval))
        out = []
        for lo, hi in items:
            if out and exact_cmp(lo, out[-1][1]) <= 0:  # overlap or touch
                if exact_cmp(hi, out[-1][1]) > 0:
                    out[-1] = (out[-1][0], hi)
            else:
                out.append((lo, hi))
        return out

    # -- constructors -------------------------------------------------------

    @classmethod
    def empty(cls):
        return cls((), normalized=True)

    @classmethod
    def point(cls, x):
        return cls([(x, x)], normalized=True)

    @classmethod
    def interval(cls, lo, hi):
        return cls([(lo, hi)])

    @classmethod
    def ball(cls, x, eps, lo, hi):
        """Closed eps-ball around x clipped to [lo, hi]."""
        a = scalar_max(x - eps, lo)
        b = scalar_min(x + eps, hi)
        if exact_cmp(a, b) > 0:
            return cls.empty()
        return cls([(a, b)], normalized=True)

    # -- predicates ---------------------------------------------------------

    def is_empty(self):
        return not self.intervals

    def __bool__(self):
        return bool(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def contains_point(self, x):
        for lo, hi in self.intervals:
            if exact_cmp(x, lo) >= 0 and exact_cmp(x, hi) <= 0:
                return True
            if exact_cmp(x, lo) < 0:
                return False
        return False

    def leftmost(self):
        if not self.intervals:
            raise ValueError("empty set has no leftmost point")
        return self.intervals[0][0]

    def rightmost(self):
        if not self.intervals:
            raise ValueError("empty set has no rightmost point")
        return self.intervals[-1][1]

    def hull(self):
        return IntervalSet([(self.leftmost(), self.rightmost())], normalized=True)

    def measure(self):
        total = Q(0)
        for lo, hi in self.intervals:
            total = total + (hi - lo)
        return total

    def min_distance_to_point(self, x):
        """Exact distance from x to the set (set must be nonempty)."""
        if not self.intervals:
            raise ValueError("distance to empty set")
        best = None
        for lo, hi in self.intervals:
            if exact_cmp(x, lo) >= 0 and exact_cmp(x, hi) <= 0:
                return Q(0)
            d = lo - x if exact_cmp(x, lo) < 0 else x - hi
            best = d if best is None else scalar_min(best, d)
        return best

    # -- boolean algebra ----------------------------------------------------

    def union(self, other):
        return IntervalSet(self.intervals + other.intervals)

    def intersection(self, other):
        out = []
        i = j = 0
        a, b = self.intervals, other.intervals
        while i < len(a) and j < len(b):
            lo = scalar_max(a[i][0], b[j][0])
            hi = scalar_min(a[i][1], b[j][1])
            if exact_cmp(lo, hi) <= 0:
                out.append((lo, hi))
            if exact_cmp(a[i][1], b[j][1]) <= 0:
                i += 1
            else:
                j += 1
        return IntervalSet(out, normalized=True)

    def difference(self, other):
        """Closure of the set difference (boundary points are kept)."""
        out = []
        for lo, hi in self.intervals:
            pieces = [(lo, hi)]
            for c, d in other.intervals:
                nxt = []
                for a, b in pieces:
                    if exact_cmp(d, a) < 0 or exact_cmp(c, b) > 0:
                        nxt.append((a, b))
                        continue
                    if exact_cmp(a, c) < 0:
                        nxt.append((a, scalar_min(c, b)))
                    if exact_cmp(d, b) < 0:
                        nxt.append((scalar_max(d, a), b))
                pieces = nxt
                if not pieces:
                    break
            out.extend(pieces)
        return IntervalSet(out)

    def is_subset_of(self, other):
        return self.difference(other).is_empty() if self.intervals else True

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        if len(self.intervals) != len(other.intervals):
            return False
        for (a, b), (c, d) in zip(self.intervals, other.intervals):
            if exact_cmp(a, c) != 0 or exact_cmp(b, d) != 0:
                return False
        return True

    def __repr__(self):
        return "IntervalSet(%s)" % (
            " u ".join("[%s, %s]" % iv for iv in self.intervals) or "{}")


def set_ops(a: IntervalSet, b: IntervalSet, op):
    if op in ("&", "cap", "intersection"):
        return a.intersection(b)
    if op in ("|", "cup", "union"):
        return a.union(b)
    if op in ("-", "setminus", "difference"):
        return a.difference(b)
    raise ValueError("unknown set op %r" % op)


# ---------------------------------------------------------------------------
# map actions


def image(m, s: IntervalSet) -> IntervalSet:
    """Exact forward image under a PLMap, lap by lap."""
    out = []
    for lo, hi in s.intervals:
        cuts = [lo]
        for p in m.breakpoints:
            if exact_cmp(p, lo) > 0 and exact_cmp(p, hi) < 0:
                cuts.append(p)
        cuts.append(hi)
        for a, b in zip(cuts, cuts[1:]):
            fa, fb = m(a), m(b)
            out.append((scalar_min(fa, fb), scalar_max(fa, fb)))
    return IntervalSet(out)


def preimage(m, s: IntervalSet) -> IntervalSet:
    """Exact full preimage under a PLMap, branch by branch."""
    out = []
    for i in range(m.n_laps):
        p, q = m.breakpoints[i], m.breakpoints[i + 1]
        vp, vq = m.values[i], m.values[i + 1]
        slope = m.slopes[i]
        lap_lo, lap_hi = (vp, vq) if exact_cmp(vp, vq) <= 0 else (vq, vp)
        for c, d in s.intervals:
            lo = scalar_max(c, lap_lo)
            hi = scalar_min(d, lap_hi)
            if exact_cmp(lo, hi) > 0:
                continue
            if exact_cmp(slope, 0) == 0:
                out.append((p, q))
                continue
            xa = p + (lo - vp) / slope
            xb = p + (hi - vp) / slope
            out.append((scalar_min(xa, xb), scalar_max(xa, xb)))
    return IntervalSet(out)


def preimage_iter(m, s: IntervalSet, n: int) -> IntervalSet:
    for _ in range(n):
        s = preimage(m, s)
    return s


def bowen_ball(m, x, eps, k: int) -> IntervalSet:
    """{y : |f^i(x) - f^i(y)| <= eps, 0 <= i <= k}, by backward pullback."""
    orb = m.orbit(x, k)
    s = IntervalSet.ball(orb[k], eps, m.lo, m.hi)
    for i in range(k - 1, -1, -1):
        s = IntervalSet.ball(orb[i], eps, m.lo, m.hi).intersection(preimage(m, s))
    return s


def domain_set(m) -> IntervalSet:
    return IntervalSet([(m.lo, m.hi)], normalized=True)
