"""Pseudo-orbits with exactly checkable per-step error certificates."""

import random
from dataclasses import dataclass
from typing import Optional

from .scalars import Q, exact_cmp, scalar_abs, scalar_max, scalar_min


@dataclass(frozen=True)
class PseudoOrbit:
    """Points x_0..x_n with either a uniform delta or a per-step schedule.

    A schedule e_0 >= e_1 >= ... -> 0 is how asymptotic pseudo-orbits are
    certified at finite horizon: the bound for step i is e_i.
    """

    points: tuple
    delta: Optional[object] = None       # uniform mode
    schedule: Optional[tuple] = None     # per-step mode

    def __post_init__(self):
        if (self.delta is None) == (self.schedule is None):
            raise ValueError("exactly one of delta/schedule must be given")
        if self.schedule is not None:
            if len(self.schedule) < len(self.points) - 1:
                raise ValueError("schedule shorter than the number of steps")
            for a, b in zip(self.schedule, self.schedule[1:]):
                if exact_cmp(b, a) > 0:
                    raise ValueError("schedule must be non-increasing")

    def __len__(self):
        return len(self.points)

    @property
    def n_steps(self):
        return len(self.points) - 1

    def bound(self, i):
        return self.delta if self.schedule is None else self.schedule[i]

    def max_bound(self):
        return self.delta if self.schedule is None else self.schedule[0]

    def tail(self, start):
        """The sub-pseudo-orbit from index ``start`` on."""
        if self.schedule is None:
            return PseudoOrbit(self.points[start:], delta=self.delta)
        return PseudoOrbit(self.points[start:], schedule=self.schedule[start:])


def step_errors(m, po: PseudoOrbit):
    return [scalar_abs(m(po.points[i]) - po.points[i + 1])
            for i in range(po.n_steps)]


def verify_pseudo_orbit(m, po: PseudoOrbit) -> bool:
    """Exact check: every step error <= the declared bound (closed convention)."""
    for x in po.points:
        if not m.contains(x):
            return False
    for i, err in enumerate(step_errors(m, po)):
        if exact_cmp(err, po.bound(i)) > 0:
            return False
    return True


def is_delta_tail(m, po: PseudoOrbit, start: int, delta) -> bool:
    """Is the tail from ``start`` a delta-pseudo-orbit?  Uses the certificate
    bounds only (no re-evaluation), so it is monotone in the schedule."""
    for i in range(start, po.n_steps):
        if exact_cmp(po.bound(i), delta) > 0:
            return False
    return True


def _dyadic_noise(rng: random.Random, bound, grain=2**20):
    """Uniform dyadic perturbation in [-bound, bound]."""
    return bound * Q(rng.randint(-grain, grain), grain)


def perturbed_orbit(m, x0, n, delta, seed) -> PseudoOrbit:
    """Seeded random delta-pseudo-orbit of length n+1 starting at x0."""
    rng = random.Random(seed)
    pts = [x0]
    for _ in range(n):
        y = m(pts[-1]) + _dyadic_noise(rng, delta)
        y = scalar_min(scalar_max(y, m.lo), m.hi)
        pts.append(y)
    po = PseudoOrbit(tuple(pts), delta=delta)
    assert verify_pseudo_orbit(m, po)
    return po


def asymptotic_orbit(m, x0, n, schedule, seed) -> PseudoOrbit:
    """Seeded pseudo-orbit whose step-i error is at most schedule[i]."""
    schedule = tuple(schedule)
    if len(schedule) < n:
        raise ValueError("schedule shorter than horizon")
    rng = random.Random(seed)
    pts = [x0]
    for i in range(n):
        y = m(pts[-1]) + _dyadic_noise(rng, schedule[i])
        y = scalar_min(scalar_max(y, m.lo), m.hi)
        pts.append(y)
    po = PseudoOrbit(tuple(pts), schedule=schedule[:n])
    assert verify_pseudo_orbit(m, po)
    return po


def geometric_schedule(first, ratio, n):
    """first, first*ratio, first*ratio^2, ... (ratio in (0, 1])."""
    out = [first]
    for _ in range(n - 1):
        out.append(out[-1] * ratio)
    return tuple(out)


def exact_orbit(m, x0, n, delta=None) -> PseudoOrbit:
    pts = tuple(m.orbit(x0, n))
    return PseudoOrbit(pts, delta=delta if delta is not None else Q(0))
