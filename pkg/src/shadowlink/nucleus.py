"""The countable-linking example, truncated to finite depth, in exact arithmetic.

The construction glues geometrically scaled copies of a 3-lap "nucleus"
along the line.  Its parameters solve

    s*a = 1 + mu*(1 - a),   s*mu*a = mu + a,   4*s*a = s + 1,

which reduce (after eliminating a and mu) to the cubic s^3 - 5s^2 + s - 1 = 0
with a single real root near 4.836.  All breakpoints therefore live in one
cubic number field and every verdict below is exact.

A finite truncation at ``depth`` keeps the central nucleus plus ``depth``
scaled copies on each side, then closes each end with a contracting lap onto
the outermost copy's critical value followed by an expanding lap into a
genuinely fixed endpoint.  Every critical orbit of the truncated map is
eventually periodic and hits a critical point, which is what makes the
linking verdict certifiable.
"""

from functools import lru_cache

from .maps import PLMap
from .scalars import AlgebraicField, Q, exact_cmp

# s^3 - 5 s^2 + s - 1, unique real root in [4, 5]
_MINPOLY = (Q(-1), Q(1), Q(-5), Q(1))


@lru_cache(maxsize=1)
def nucleus_field():
    return AlgebraicField(_MINPOLY, 4, 5, name="s")


@lru_cache(maxsize=1)
def nucleus_parameters():
    """(a, mu, s) as exact field elements."""
    s = nucleus_field().generator()
    a = (s + 1) / (4 * s)
    mu = (s + 1) / (s * (s - 3))
    return a, mu, s


def nucleus_equation_residuals():
    """The three defining equations, as exact residuals (all zero)."""
    a, mu, s = nucleus_parameters()
    return (
        s * a - (1 + mu * (1 - a)),
        s * mu * a - (mu + a),
        4 * s * a - (s + 1),
    )


def parameter_enclosures(bits=80):
    """Certified (lo, hi) bounds for a, mu, s at 2^-bits accuracy."""
    a, mu, s = nucleus_parameters()
    return a.bounds(bits), mu.bounds(bits), s.bounds(bits)


def _copy_sum(mu, j):
    """mu + mu^2 + ... + mu^j."""
    total = mu * 0
    p = mu * 0 + 1
    for _ in range(j):
        p = p * mu
        total = total + p
    return total


def make_nucleus_family(depth=1, rescale=True):
    """Truncated example with ``depth`` scaled copies glued on each side.

    Returns a PLMap; with ``rescale`` the domain is mapped affinely onto
    [0, 1] (the affine change fixes both endpoints, which are fixed points
    of the un-rescaled map, so the two-sided extension stays continuous).
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    a, mu, s = nucleus_parameters()
    one = s / s

    def mu_pow(j):
        p = one
        for _ in range(j):
            p = p * mu
        return p

    # breakpoint/value pairs, built left to right
    pts = []

    R = [one + _copy_sum(mu, j) for j in range(depth + 1)]   # R[0] = 1
    L = [_copy_sum(mu, j) for j in range(depth + 1)]         # L[0] = 0

    md = mu_pow(depth)
    md1 = mu_pow(depth - 1) if depth >= 1 else one / mu
    e_span = md1 * a * (s + mu) / (s - 1)
    e_left = -L[depth] - e_span
    e_right = R[depth] + e_span
    q_left = -L[depth] - md1 * a
    q_right = R[depth] + md1 * a

    # left closing: fixed endpoint, then contracting lap onto C1 of the
    # outermost left copy
    pts.append((e_left, e_left))
    pts.append((q_left, -L[depth] + md * a))

    # left copies, outermost first: copy j lives on [-L[j], -L[j-1]] and is
    # the nucleus scaled by mu^j anchored at its left corner
    for j in range(depth, 0, -1):
        w = mu_pow(j)
        base = -L[j]
        pts.append((base, base))
        pts.append((base + w * a, base + w * s * a))
        pts.append((base + w * (1 - a), base + w * (1 - s * a)))

    # central nucleus on [0, 1]
    pts.append((one * 0, one * 0))
    pts.append((a, s * a))
    pts.append((one - a, one - s * a))

    # right copies, innermost first: copy j on [R[j-1], R[j]]
    for j in range(1, depth + 1):
        w = mu_pow(j)
        base = R[j - 1]
        pts.append((base, base))
        pts.append((base + w * a, base + w * s * a))
        pts.append((base + w * (1 - a), base + w * (1 - s * a)))

    # right closing: contracting lap onto C2 of the outermost right copy,
    # then an expanding lap into the fixed endpoint
    pts.append((R[depth], R[depth]))
    pts.append((q_right, R[depth] - md * a))
    pts.append((e_right, e_right))

    bps = [p for p, _ in pts]
    vals = [v for _, v in pts]
    if not rescale:
        return PLMap(bps, vals, kind="nucleus-raw", param=depth)
    span = e_right - e_left
    t = lambda x: (x - e_left) / span
    return PLMap([t(p) for p in bps], [t(v) for v in vals],
                 kind="nucleus", param=depth)


def make_two_sided(depth=1):
    """g on [-1, 1]: g(x) = -f(x) for x >= 0 and f(-x) for x < 0,
    with f the rescaled truncated example (which fixes 0 and 1)."""
    f = make_nucleus_family(depth, rescale=True)
    bps, vals = [], []
    for p, v in zip(reversed(f.breakpoints), reversed(f.values)):
        if exact_cmp(p, 0) == 0:
            continue
        bps.append(-p)
        vals.append(v)
    for p, v in zip(f.breakpoints, f.values):
        bps.append(p)
        vals.append(-v)
    return PLMap(bps, vals, kind="two-sided", param=depth)
