"""The s-limit tracing engine for constant-slope (or slope-bounded) PL maps.

Given an asymptotic pseudo-orbit, the engine builds the block structure
(m_k, n_k, j_k), the pullback sets W_k and a tracing point z whose error
profile follows the 2*lam*eps_{j_k} envelope, where lam = s^2 and
eta(eps) = (s-1)*eps for slope s.  Every recorded bound is re-verified
exactly before the certificate is returned; soundness rests on that
verification, not on the construction.

An arbitrary asymptotic pseudo-orbit typically starts with step errors far
above the engine's delta_0 threshold, so tracing begins at the first index
whose tail is a delta_0-pseudo-orbit.  Indices before that are covered by
the trivial domain-diameter bound, and the tracing point for the full
sequence is obtained by pulling the tail's tracing point backwards (the
maps in scope are surjective onto their domains, so a preimage always
exists).  The head bound is honest: the certificate claims asymptotic
tracing, not epsilon-shadowing of an arbitrary head.
"""

from dataclasses import dataclass, field
from typing import Optional

from .intervals import IntervalSet, image, preimage
from .maps import make_tent_golden, restrict, tent_core
from .pseudo import PseudoOrbit, step_errors, verify_pseudo_orbit
from .scalars import Q, exact_cmp, golden_ratio, scalar_abs, scalar_min
from .shadowing import return_time, set_A


class TracingError(RuntimeError):
    """Engine invariant violated (empty W_k or missing return time)."""


@dataclass
class SLimitConfig:
    n_max: int = 12          # return-time cutoff; also the N in the delta rule
    eps_hat: Optional[object] = None

    def lam(self, s):
        return s * s

    def eta(self, s, eps):
        return (s - 1) * eps


@dataclass
class TraceCertificate:
    z: object
    bounds: list                    # per-index verified error bounds
    start_index: int                # first index traced by the engine
    cover_end: int                  # last index with a recorded bound
    m_ks: list
    n_ks: list
    j_ks: list
    w_sets: list                    # the nested W_k interval sets (tail coords)
    eps: object
    eps0: object
    lam: object
    degenerate: bool = False        # no promotion happened within the horizon
    verified: bool = False

    @property
    def promotions(self):
        return self.j_ks[-1] if self.j_ks else 0


def _suffix_start(errors, threshold):
    """Earliest index i such that errors[j] <= threshold for all j >= i."""
    start = len(errors)
    for i in range(len(errors) - 1, -1, -1):
        if exact_cmp(errors[i], threshold) <= 0:
            start = i
        else:
            break
    return start


def slimit_trace(m, po: PseudoOrbit, eps, cfg: Optional[SLimitConfig] = None,
                 _pre_verified=False) -> TraceCertificate:
    if cfg is None:
        cfg = SLimitConfig()
    if not _pre_verified and not verify_pseudo_orbit(m, po):
        raise ValueError("input pseudo-orbit fails its own certificate")
    if cfg.eps_hat is not None and exact_cmp(eps, cfg.eps_hat) >= 0:
        raise ValueError("eps above the configured eps_hat")

    s = m.max_slope()
    lam = cfg.lam(s)
    eps0 = eps / (3 * lam)
    diam = m.hi - m.lo
    errors = step_errors(m, po)
    horizon = po.n_steps

    # delta_j: any delta_j-pseudo-orbit of length <= n_max stays within
    # eta_j of the true orbit of its initial point, via the geometric
    # error-accumulation bound delta * (s^k - 1)/(s - 1)
    growth = (s ** cfg.n_max - 1) / (s - 1)

    def eps_level(j):
        return eps0 / 2 ** j

    def delta_level(j):
        e = eps_level(j)
        eta = scalar_min(cfg.eta(s, e), e)
        return scalar_min(eta / growth, e / 2)

    start = _suffix_start(errors, delta_level(0))
    if start >= horizon:
        raise TracingError(
            "no tail of the pseudo-orbit is a delta_0-pseudo-orbit "
            "(horizon too short for this eps)")

    tail_pts = po.points[start:]
    tail_err = errors[start:]

    # block structure
    m_ks, n_ks, j_ks = [0], [], [0]
    promo_cache = {}

    def tail_is_delta(idx, j):
        if j not in promo_cache:
            promo_cache[j] = _suffix_start(tail_err, delta_level(j))
        return promo_cache[j] <= idx

    k = 0
    while True:
        n_k = return_time(m, tail_pts[m_ks[k]], eps_level(j_ks[k]), cfg.n_max)
        if n_k is None:
            raise TracingError(
                "no return time <= %d at tail index %d (does the map have "
                "the linking property?)" % (cfg.n_max, m_ks[k]))
        if m_ks[k] + n_k > len(tail_pts) - 1:
            break
        n_ks.append(n_k)
        nxt = m_ks[k] + n_k
        m_ks.append(nxt)
        j_prev = j_ks[k]
        j_ks.append(j_prev + 1 if tail_is_delta(nxt, j_prev + 1) else j_prev)
        k += 1
        if nxt >= len(tail_pts) - 1:
            break
    K = len(n_ks) - 1
    if K < 0:
        raise TracingError("horizon too short for a single block")
    m_ks = m_ks[:K + 2]
    j_ks = j_ks[:K + 1]

    # pullback sets: W_k = A_0 /\ inter_{1<=l<=k} f^{-(m_l+1)}(f(A_l)),
    # computed by chaining from the far end to keep component counts low
    A = [set_A(m, tail_pts[m_ks[kk]], n_ks[kk], eps_level(j_ks[kk]), lam)
         for kk in range(K + 1)]
    fA = [image(m, a) for a in A]
    w_sets = [A[0]]
    for kk in range(1, K + 1):
        v = fA[kk]
        for l in range(kk - 1, 0, -1):
            for _ in range(n_ks[l]):
                v = preimage(m, v)
            v = fA[l].intersection(v)
        for _ in range(n_ks[0] + 1):
            v = preimage(m, v)
        w = A[0].intersection(v)
        if w.is_empty():
            raise TracingError("empty W_%d: engine invariant violated" % kk)
        w_sets.append(w)

    z_tail = w_sets[-1].leftmost()

    # pull the tracing point back through the untraced head
    z = z_tail
    for _ in range(start):
        pre = preimage(m, IntervalSet.point(z))
        if pre.is_empty():
            raise TracingError("map not surjective enough to extend the head")
        z = pre.leftmost()

    cover_end = start + m_ks[K + 1]
    bounds = [diam] * start
    env0 = 2 * lam * eps_level(j_ks[0])
    bounds.extend([env0] * (m_ks[1] + 1))
    for kk in range(1, K + 1):
        env = 2 * lam * eps_level(j_ks[kk])
        bounds.extend([env] * (m_ks[kk + 1] - m_ks[kk]))
    assert len(bounds) == cover_end + 1

    cert = TraceCertificate(
        z=z, bounds=bounds, start_index=start, cover_end=cover_end,
        m_ks=m_ks, n_ks=n_ks, j_ks=j_ks, w_sets=w_sets,
        eps=eps, eps0=eps0, lam=lam,
        degenerate=(j_ks[-1] == 0))

    verify_certificate(m, po, cert)
    return cert


def verify_certificate(m, po: PseudoOrbit, cert: TraceCertificate):
    """Independent exact re-check of every recorded bound; raises on failure."""
    x = cert.z
    for i in range(cert.cover_end + 1):
        if exact_cmp(scalar_abs(x - po.points[i]), cert.bounds[i]) > 0:
            raise TracingError("bound violated at index %d" % i)
        x = m(x)
    for a, b in zip(cert.w_sets, cert.w_sets[1:]):
        if not b.is_subset_of(a):
            raise TracingError("W_k nesting violated")
    cert.verified = True
    return True


# ---------------------------------------------------------------------------
# the restriction-with-projection pipeline


@dataclass
class ProjectionResult:
    z: object
    cert: TraceCertificate
    projected: PseudoOrbit
    combined_bounds: list
    last_projection_index: int      # -1 when nothing was projected
    verified: bool


def golden_restriction():
    """tent(golden) restricted to [d, f(c)] with d = 1/(s + s^2)."""
    s = golden_ratio()
    g = make_tent_golden()
    d = 1 / (s + s * s)
    return restrict(g, d, g(Q(1, 2)))


def limit_shadow_via_projection(po: PseudoOrbit, eps,
                                cfg: Optional[SLimitConfig] = None
                                ) -> ProjectionResult:
    """Trace a pseudo-orbit of the no-linking restriction [d, f(c)] by
    projecting it into the core [f^2(c), f(c)], tracing there, and
    re-verifying the tracing point against the original sequence."""
    g = make_tent_golden()
    gr = golden_restriction()
    gc = tent_core(g)
    f2c = gc.lo
    if not verify_pseudo_orbit(gr, po):
        raise ValueError("input pseudo-orbit fails its certificate on [d, f(c)]")

    proj_pts = []
    disp = []
    last_proj = -1
    for i, x in enumerate(po.points):
        if exact_cmp(x, f2c) < 0:
            proj_pts.append(f2c)
            disp.append(f2c - x)
            last_proj = i
        else:
            proj_pts.append(x)
            disp.append(Q(0))

    # re-certify on the core with the exact non-increasing error hull
    errs = [scalar_abs(gc(proj_pts[i]) - proj_pts[i + 1])
            for i in range(len(proj_pts) - 1)]
    sched = list(errs)
    for i in range(len(sched) - 2, -1, -1):
        if exact_cmp(sched[i], sched[i + 1]) < 0:
            sched[i] = sched[i + 1]
    tiny = Q(1, 2) ** 80
    sched = [s_ + tiny for s_ in sched]  # keep bounds strictly positive
    core_po = PseudoOrbit(tuple(proj_pts), schedule=tuple(sched))

    cert = slimit_trace(gc, core_po, eps, cfg)

    combined = [cert.bounds[i] + disp[i] for i in range(cert.cover_end + 1)]
    x = cert.z
    ok = True
    for i in range(cert.cover_end + 1):
        if exact_cmp(scalar_abs(x - po.points[i]), combined[i]) > 0:
            ok = False
            break
        x = gc(x)
    return ProjectionResult(cert.z, cert, core_po, combined, last_proj, ok)
