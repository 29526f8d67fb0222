"""Shadow sets, epsilon-linking and the linking property for PL maps.

The linking property is what makes shadowing decidable here: when every
critical orbit is eventually periodic, "x is linked to y for every eps"
is equivalent to "the forward orbit of x hits y".  One direction is the
witness z = x; for the other, any witness orbit that stays eps-close to
the orbit of x must end (at step m) within eps of y, so the orbit of x
accumulates on y, and an eventually periodic orbit is a finite set.
"""

import random
from dataclasses import dataclass, field
from typing import Optional

from .intervals import IntervalSet, bowen_ball, image, preimage
from .maps import critical_points, detect_critical_cycle
from .pseudo import PseudoOrbit, perturbed_orbit
from .scalars import Q, exact_cmp, scalar_abs, scalar_min


def shadow_set(m, po: PseudoOrbit, eps) -> IntervalSet:
    """{z : |f^i(z) - x_i| <= eps for all i}, by backward pullback."""
    pts = po.points
    s = IntervalSet.ball(pts[-1], eps, m.lo, m.hi)
    for i in range(len(pts) - 2, -1, -1):
        s = IntervalSet.ball(pts[i], eps, m.lo, m.hi).intersection(preimage(m, s))
    return s


@dataclass
class LinkResult:
    linked: bool
    m: Optional[int] = None
    witnesses: Optional[IntervalSet] = None


def eps_linked(m, x, y, eps, m_max) -> LinkResult:
    """First m in 1..m_max admitting z with f^m(z) = y and
    |f^j(x) - f^j(z)| <= eps for 0 <= j <= m."""
    orb = m.orbit(x, m_max)
    for mm in range(1, m_max + 1):
        w = IntervalSet.point(y).intersection(
            IntervalSet.ball(orb[mm], eps, m.lo, m.hi))
        for j in range(mm - 1, -1, -1):
            if w.is_empty():
                break
            w = IntervalSet.ball(orb[j], eps, m.lo, m.hi).intersection(
                preimage(m, w))
        if not w.is_empty():
            return LinkResult(True, mm, w)
    return LinkResult(False)


@dataclass
class PointLinking:
    point: object
    linked: bool
    target: Optional[object] = None
    m: Optional[int] = None
    orbit_gap: Optional[object] = None  # positive lower bound when not linked


@dataclass
class LinkingVerdict:
    status: str  # yes-certified | yes-up-to-ladder | no | undecided
    details: list = field(default_factory=list)


def has_linking(m, eps_ladder=None, m_max=50, max_steps=300) -> LinkingVerdict:
    """Linking verdict for a piecewise-linear map.

    Certified (yes or no) whenever every critical orbit is eventually
    periodic; otherwise probes a decreasing epsilon ladder and reports
    yes-up-to-ladder or undecided.
    """
    crit = critical_points(m)
    cycles = detect_critical_cycle(m, max_steps)
    if m.is_exact() and all(v.status == "eventually-periodic" for v in cycles):
        details = []
        all_linked = True
        for v in cycles:
            horizon = v.preperiod + v.period
            x = v.point
            found = None
            gap = None
            for mm in range(1, horizon + 1):
                x = m(x)
                for y in crit:
                    if exact_cmp(x, y) == 0:
                        found = (y, mm)
                        break
                    d = scalar_abs(x - y)
                    gap = d if gap is None else scalar_min(gap, d)
                if found:
                    break
            if found:
                details.append(PointLinking(v.point, True, found[0], found[1]))
            else:
                all_linked = False
                details.append(PointLinking(v.point, False, orbit_gap=gap))
        return LinkingVerdict("yes-certified" if all_linked else "no", details)

    # fallback: epsilon-ladder probing
    if eps_ladder is None:
        eps_ladder = [Q(1, 4), Q(1, 16), Q(1, 64)]
    details = []
    for eps in eps_ladder:
        for c in crit:
            hit = None
            for y in crit:
                r = eps_linked(m, c, y, eps, m_max)
                if r.linked:
                    hit = PointLinking(c, True, y, r.m)
                    break
            if hit is None:
                return LinkingVerdict("undecided", details)
            details.append(hit)
    return LinkingVerdict("yes-up-to-ladder", details)


# ---------------------------------------------------------------------------
# the expansion-regain inclusion and return times


def set_A(m, x, n, gamma, lam) -> IntervalSet:
    """{y : |x - y| <= gamma, |f^i(x) - f^i(y)| <= lam*gamma, 1 <= i <= n}."""
    if n == 0:
        return IntervalSet.ball(x, gamma, m.lo, m.hi)
    orb = m.orbit(x, n)
    s = IntervalSet.ball(orb[n], lam * gamma, m.lo, m.hi)
    for i in range(n - 1, 0, -1):
        s = IntervalSet.ball(orb[i], lam * gamma, m.lo, m.hi).intersection(
            preimage(m, s))
    return IntervalSet.ball(x, gamma, m.lo, m.hi).intersection(preimage(m, s))


def check_inclusion_dagger(m, x, eps, n) -> bool:
    """f(B(f^n(x), eps+eta)) contained in f^{n+1}(A(x, n, eps)),
    with eta = (s-1)*eps and lam = s^2 for constant slope s."""
    s = m.max_slope()
    eta = (s - 1) * eps
    lam = s * s
    lhs = image(m, IntervalSet.ball(m.iterate(x, n), eps + eta, m.lo, m.hi))
    rhs = set_A(m, x, n, eps, lam)
    for _ in range(n + 1):
        rhs = image(m, rhs)
    return lhs.is_subset_of(rhs)


def return_time(m, x, eps, n_max) -> Optional[int]:
    """Least n <= n_max passing the inclusion test, or None."""
    for n in range(n_max + 1):
        if check_inclusion_dagger(m, x, eps, n):
            return n
    return None


# ---------------------------------------------------------------------------
# modulus estimation (labelled estimate, never a certificate)


def modulus_estimate(m, eps, length=20, trials=50, seed=0, j_max=20):
    """Largest tested dyadic delta = 2^-j such that all sampled and
    critical-point-straddling delta-pseudo-orbits of the given length are
    eps-shadowed.  An empirical estimate of the shadowing modulus."""
    rng = random.Random(seed)
    crit = critical_points(m)
    span = m.hi - m.lo
    for j in range(1, j_max + 1):
        delta = Q(1, 2 ** j)
        if exact_cmp(delta, span) > 0:
            continue
        ok = True
        starts = [m.lo + span * Q(rng.randint(0, 2**16), 2**16)
                  for _ in range(trials)]
        starts += list(crit)
        for k, x0 in enumerate(starts):
            po = perturbed_orbit(m, x0, length, delta,
                                 seed="%d:%d:%d" % (seed, j, k))
            if shadow_set(m, po, eps).is_empty():
                ok = False
                break
        if ok:
            return delta, j
    return None, None
