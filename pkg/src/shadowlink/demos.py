"""Chain connectivity search and the oscillatory-circle-map failure demo."""

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Optional

import mpmath

from .maps import LOG_OSCILLATION, SmoothMap1D, _mpf_to_q
from .pseudo import PseudoOrbit
from .scalars import Enclosure, Q, exact_cmp, scalar_abs


class IteratedMap:
    """m composed with itself ``power`` times, quacking like a map."""

    def __init__(self, m, power=1):
        self.base = m
        self.power = power
        self.lo, self.hi = m.lo, m.hi

    def __call__(self, x):
        for _ in range(self.power):
            x = self.base(x)
        return x

    def contains(self, x):
        return self.base.contains(x)

    def max_slope(self):
        return self.base.max_slope() ** self.power

    def orbit(self, x, n):
        out = [x]
        for _ in range(n):
            out.append(self(out[-1]))
        return out


class _FloatPL:
    """Float shadow of a PLMap, for candidate search only (never certifies)."""

    def __init__(self, m):
        self.bps = [float(p) for p in m.breakpoints]
        self.vals = [float(v) for v in m.values]
        self.slopes = [float(s) for s in m.slopes]

    def __call__(self, x):
        i = min(max(bisect_right(self.bps, x) - 1, 0), len(self.slopes) - 1)
        return self.vals[i] + self.slopes[i] * (x - self.bps[i])

    def image(self, a, b):
        cands = [self(a), self(b)]
        for p in self.bps:
            if a < p < b:
                cands.append(self(p))
        return min(cands), max(cands)


def chain_connect(m, a, b, delta, resolution=None, power=1
                  ) -> Optional[PseudoOrbit]:
    """Certified delta-chain from a to b under m^power, or None.

    The search runs on a float grid (breadth-first over cells whose inflated
    float image meets them); the returned chain is re-verified exactly, so a
    positive answer is a certificate.  None means the search was inconclusive
    at this resolution, never a proof of absence.
    """
    fm = IteratedMap(m, power)
    smax = float(m.max_slope()) ** power
    span = m.hi - m.lo
    if resolution is None:
        # resolution must stay below delta/(smax + 1) for the cell condition
        k = 1
        while float(span) / 2 ** k >= float(delta) / (smax + 2):
            k += 1
        resolution = span / 2 ** k
    w = resolution
    wf = float(w)
    n_cells = int(math.ceil(float(span) / wf))
    lo_f = float(m.lo)

    fpl = _FloatPL(m)

    def fpow_image(x0, x1):
        a0, a1 = x0, x1
        for _ in range(power):
            a0, a1 = fpl.image(a0, a1)
        return a0, a1

    margin = 0.9 * float(delta) - wf * (smax + 1) / 2
    if margin <= 0:
        raise ValueError("resolution too coarse for this delta")

    def cell_of(x):
        return min(max(int((x - lo_f) / wf), 0), n_cells - 1)

    def midpoint(i):
        return m.lo + w * (2 * i + 1) / 2

    target_cell = cell_of(float(b))
    parent = {}
    start_img = fpow_image(float(a), float(a))
    frontier = []
    seen = [False] * n_cells
    c0 = max(cell_of(start_img[0] - margin), 0)
    c1 = min(cell_of(start_img[1] + margin), n_cells - 1)
    for c in range(c0, c1 + 1):
        seen[c] = True
        parent[c] = None
        frontier.append(c)

    found = None
    while frontier and found is None:
        nxt = []
        for c in frontier:
            mc = lo_f + (c + 0.5) * wf
            img = fpow_image(mc, mc)
            if abs(img[0] - float(b)) <= 0.9 * float(delta):
                found = c
                break
            d0 = max(cell_of(img[0] - margin), 0)
            d1 = min(cell_of(img[1] + margin), n_cells - 1)
            for d in range(d0, d1 + 1):
                if not seen[d]:
                    seen[d] = True
                    parent[d] = c
                    nxt.append(d)
        frontier = nxt

    if found is None:
        return None

    cells = []
    c = found
    while c is not None:
        cells.append(c)
        c = parent[c]
    cells.reverse()
    pts = [a] + [midpoint(c) for c in cells] + [b]

    # exact certification
    for p, q in zip(pts, pts[1:]):
        if exact_cmp(scalar_abs(fm(p) - q), delta) > 0:
            return None
    return PseudoOrbit(tuple(pts), delta=delta)


# ---------------------------------------------------------------------------
# the oscillatory circle map: shadowing without s-limit shadowing


def circle_distance(x, y):
    """Metric on [-1, 1] with endpoints identified."""
    d = abs(float(x) - float(y))
    return min(d, 2 - d)


def oscillation_fixed_point_below(delta):
    """Enclosure of the branch fixed point -exp(-k/2) with magnitude < delta."""
    k = 1
    while math.exp(-k / 2) >= float(delta):
        k += 1
    old = mpmath.mp.prec
    try:
        mpmath.mp.prec = 80
        iv = -mpmath.iv.exp(mpmath.iv.mpf(-k) / 2)
        enc = Enclosure(_mpf_to_q(iv.a, True), _mpf_to_q(iv.b, False))
    finally:
        mpmath.mp.prec = old
    return enc, k


@dataclass
class CircleDemoReport:
    delta: object
    x_delta: Enclosure
    head_length: int
    pseudo_orbit_head: list
    candidates_checked: int
    candidates_passing: int
    all_candidates_nonnegative: bool
    head_shadow_point: object
    tail_liminf_lower_bound: float
    tail_liminf_observed: float
    horizon: int
    tail_failure_certified: bool


def circle_slimit_failure_demo(n_head=6, delta=Q(1, 100), horizon=10**4,
                               grid_step=Q(1, 100)) -> CircleDemoReport:
    """The asymptotic pseudo-orbit that no point asymptotically shadows.

    Head: the exact orbit of 1/2 under the cubing branch, collapsing to 0.
    Tail: jump to a genuinely fixed point x_delta of the oscillatory branch
    with |x_delta| < delta (those fixed points accumulate at 0 from the
    left).  Any point that (1/2)-shadows the head lies in [0, 1], its orbit
    decreases monotonically to 0, and so its distance to x_delta is
    eventually bounded below by |x_delta| — asymptotic shadowing fails.
    """
    phi = SmoothMap1D(LOG_OSCILLATION)
    x_delta, _k = oscillation_fixed_point_below(delta)

    head = [Q(1, 2)]
    for _ in range(n_head):
        head.append(head[-1] ** 3)  # cubing branch, exactly

    # jump errors of the displayed pseudo-orbit (head -> 0 -> x_delta -> ...)
    jump1 = head[-1] ** 3           # |Phi(last head point) - 0|
    assert float(jump1) < float(delta)
    assert float(-x_delta.lo) < float(delta)

    # grid scan: who (1/2)-shadows the head?
    eps = 0.5
    candidates = []
    n_checked = 0
    g = float(grid_step)
    z = -1.0
    while z <= 1.0 + 1e-12:
        n_checked += 1
        x = z
        ok = True
        for h in head:
            if abs(x - float(h)) > eps + 1e-12:
                ok = False
                break
            # surviving candidates satisfy |x - 1/2| <= 1/2 at step 0, hence
            # live in [0, 1] where the map is the cubing branch
            x = x ** 3
        if ok:
            candidates.append(z)
        z += g

    all_nonneg = all(c >= -1e-12 for c in candidates)

    # tail behaviour: iterate the cubing branch to the horizon
    xd = float(x_delta.midpoint())
    liminf_obs = float("inf")
    for z in candidates:
        x = max(z, 0.0)
        for i in range(horizon):
            x = x ** 3
            if i >= horizon - 100:
                liminf_obs = min(liminf_obs, circle_distance(x, xd))
        # final stretch dominates the liminf for a monotone orbit

    # certified lower bound: candidates are >= 0, the cubing orbit stays
    # >= 0, and x_delta < 0 with |x_delta| < delta << 1, so the circle
    # distance is at least |x_delta|
    lower = float(-x_delta.hi)

    return CircleDemoReport(
        delta=delta, x_delta=x_delta, head_length=n_head,
        pseudo_orbit_head=head,
        candidates_checked=n_checked, candidates_passing=len(candidates),
        all_candidates_nonnegative=all_nonneg,
        head_shadow_point=Q(1, 2),
        tail_liminf_lower_bound=lower,
        tail_liminf_observed=liminf_obs,
        horizon=horizon,
        tail_failure_certified=all_nonneg and lower >= float(-x_delta.lo) / 2)
