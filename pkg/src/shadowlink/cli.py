"""Command-line interface.

Every subcommand prints a deterministic ``key: value`` report (no
timestamps or timings, so identical invocations produce byte-identical
output) and exits with 0 when a verdict was produced (including negative
verdicts), 1 when the run was inconclusive, and 2 on input errors.
"""

import argparse
import math
import os
import random
import sys

from . import config
from .demos import chain_connect, circle_slimit_failure_demo
from .intervals import IntervalSet
from .io import (
    load_certificate,
    load_pseudo_orbit,
    map_field,
    resolve_map,
    save_certificate,
    save_pseudo_orbit,
)
from .maps import PLMap, SmoothMap1D
from .pseudo import PseudoOrbit, asymptotic_orbit, geometric_schedule
from .scalars import Q, exact_cmp, format_scalar, parse_scalar
from .shadowing import has_linking, modulus_estimate, shadow_set
from .symbolic import (
    INF,
    LadderPoint,
    SftSpec,
    ladder_delta,
    ladder_metric,
    ladder_omega,
    ladder_shadow,
    parse_seq,
    random_sft_point,
    walters_shadow,
    xk_spec,
)
from .tracing import TracingError, slimit_trace, verify_certificate


class Report:
    """Collects key: value lines and prints them in insertion order."""

    def __init__(self):
        self.lines = []

    def add(self, key, value):
        self.lines.append("%s: %s" % (key, value))

    def emit(self, stream=None):
        out = stream or sys.stdout
        for line in self.lines:
            print(line, file=out)


def _require_plmap(m, what):
    if not isinstance(m, PLMap):
        raise ValueError(
            "%s needs an exact piecewise-linear map; enclosure-grade circle "
            "maps are only supported by circle-demo and figure-data" % what)
    return m


# ---------------------------------------------------------------------------
# subcommand implementations (each returns the exit code)


def cmd_linking(args):
    m = _require_plmap(resolve_map(args.map), "linking")
    ladder = None
    if args.eps_ladder:
        ladder = [parse_scalar(e) for e in args.eps_ladder.split(",")]
    v = has_linking(m, eps_ladder=ladder, m_max=args.m_max,
                    max_steps=args.max_steps)
    rep = Report()
    rep.add("map", args.map)
    rep.add("verdict", v.status)
    for d in v.details:
        if d.linked:
            rep.add("point %s" % format_scalar(d.point),
                    "linked to %s at m=%d" % (format_scalar(d.target), d.m))
        else:
            gap = ("orbit-gap %s" % format_scalar(d.orbit_gap)
                   if d.orbit_gap is not None else "no witness")
            rep.add("point %s" % format_scalar(d.point), "not linked (%s)" % gap)
    rep.emit()
    return 1 if v.status == "undecided" else 0


def cmd_shadow_set(args):
    m = _require_plmap(resolve_map(args.map), "shadow-set")
    po = load_pseudo_orbit(args.po, map_field(m))
    eps = parse_scalar(args.eps)
    s = shadow_set(m, po, eps)
    rep = Report()
    rep.add("map", args.map)
    rep.add("eps", format_scalar(eps))
    rep.add("steps", po.n_steps)
    rep.add("nonempty", "yes" if not s.is_empty() else "no")
    rep.add("components", len(s))
    for i, (a, b) in enumerate(s):
        rep.add("component %d" % i,
                "[%s, %s]" % (format_scalar(a), format_scalar(b)))
    rep.emit()
    return 0


def cmd_modulus(args):
    m = _require_plmap(resolve_map(args.map), "modulus")
    eps = parse_scalar(args.eps)
    delta, j = modulus_estimate(m, eps, length=args.length,
                                trials=args.trials, seed=args.seed,
                                j_max=args.j_max)
    rep = Report()
    rep.add("map", args.map)
    rep.add("eps", format_scalar(eps))
    rep.add("kind", "estimate (not a certificate)")
    if delta is None:
        rep.add("delta", "none found up to 2^-%d" % args.j_max)
        rep.emit()
        return 1
    rep.add("delta", format_scalar(delta))
    rep.add("dyadic exponent", j)
    rep.emit()
    return 0


def cmd_slimit_trace(args):
    m = _require_plmap(resolve_map(args.map), "slimit-trace")
    eps = parse_scalar(args.eps)
    field = map_field(m)
    if args.po:
        po = load_pseudo_orbit(args.po, field)
    else:
        if args.seed is None:
            raise ValueError("--seed is required when generating an orbit")
        x0 = parse_scalar(args.x0, field) if args.x0 else \
            m.lo + (m.hi - m.lo) / 3
        sched = geometric_schedule(Q(1, 2), Q(1, 2), args.horizon)
        po = asymptotic_orbit(m, x0, args.horizon, sched, seed=args.seed)
    try:
        cert = slimit_trace(m, po, eps)
    except TracingError as exc:
        print("inconclusive: %s" % exc, file=sys.stderr)
        return 1
    rep = Report()
    rep.add("map", args.map)
    rep.add("eps", format_scalar(eps))
    rep.add("horizon", po.n_steps)
    rep.add("start index", cert.start_index)
    rep.add("cover end", cert.cover_end)
    rep.add("blocks", len(cert.n_ks))
    rep.add("promotions", cert.promotions)
    rep.add("degenerate", "yes" if cert.degenerate else "no")
    rep.add("tracing point", format_scalar(cert.z))
    rep.add("verified", "yes" if cert.verified else "no")
    if args.out:
        save_certificate(cert, args.out, field)
        rep.add("certificate path", args.out)
    if args.po_out:
        save_pseudo_orbit(po, args.po_out, field)
        rep.add("pseudo-orbit path", args.po_out)
    rep.emit()
    return 0


def cmd_chain(args):
    m = _require_plmap(resolve_map(args.map), "chain")
    field = map_field(m)
    a = parse_scalar(getattr(args, "from"), field)
    b = parse_scalar(args.to, field)
    delta = parse_scalar(args.delta)
    chain = chain_connect(m, a, b, delta, power=args.power)
    rep = Report()
    rep.add("map", args.map)
    rep.add("delta", format_scalar(delta))
    rep.add("power", args.power)
    if chain is None:
        rep.add("chain", "inconclusive (none found at this resolution)")
        rep.emit()
        return 1
    rep.add("chain", "found")
    rep.add("length", len(chain.points))
    if args.out:
        save_pseudo_orbit(chain, args.out, field)
        rep.add("chain path", args.out)
    rep.emit()
    return 0


def cmd_sft_shadow(args):
    alphabet = tuple(args.alphabet)
    forbidden = tuple(w for w in args.forbidden.split(",") if w) \
        if args.forbidden else ()
    s = SftSpec(alphabet, forbidden)
    po = [parse_seq(w) for w in args.po.split(";")]
    delta = parse_scalar(args.delta)
    eps = parse_scalar(args.eps) if args.eps else None
    z, cert = walters_shadow(s, po, delta, eps)
    rep = Report()
    rep.add("alphabet", "".join(alphabet))
    rep.add("forbidden", ",".join(forbidden) if forbidden else "(none)")
    rep.add("memory", s.memory)
    rep.add("delta", format_scalar(delta))
    rep.add("shadow", repr(z))
    rep.add("eps", format_scalar(cert.eps))
    rep.add("sup distance", format_scalar(cert.sup_distance))
    rep.add("verified", "yes")
    rep.emit()
    return 0


def cmd_ladder_demo(args):
    eps = parse_scalar(args.eps)
    delta, k = ladder_delta(eps)
    rng = random.Random(args.seed)
    level = rng.choice([0, 1, 2, 3, INF])
    if level == INF:
        start = LadderPoint(INF, parse_seq("0" * rng.randint(0, 8) + "10*"))
    else:
        start = LadderPoint(level, random_sft_point(rng, xk_spec(level)))
    po = [start]
    for _ in range(args.length - 1):
        po.append(po[-1].apply())
    z = ladder_shadow(po, delta, eps)
    sup = Q(0)
    w = z
    for p in po:
        d = ladder_metric(w, p)
        if exact_cmp(d, sup) > 0:
            sup = d
        w = w.apply()
    rep = Report()
    rep.add("eps", format_scalar(eps))
    rep.add("delta", format_scalar(delta))
    rep.add("k", k)
    rep.add("input level", "inf" if start.level == INF else start.level)
    rep.add("input seq", repr(start.seq))
    rep.add("shadow level", "inf" if z.level == INF else z.level)
    rep.add("shadow seq", repr(z.seq))
    rep.add("sup distance", format_scalar(sup))
    rep.add("verified", "yes")
    rep.emit()
    return 0


def cmd_circle_demo(args):
    rep_data = circle_slimit_failure_demo(
        n_head=args.head, delta=parse_scalar(args.delta),
        horizon=args.horizon, grid_step=parse_scalar(args.grid))
    rep = Report()
    rep.add("delta", format_scalar(rep_data.delta))
    rep.add("fixed point enclosure",
            "[%s, %s]" % (format_scalar(rep_data.x_delta.lo),
                          format_scalar(rep_data.x_delta.hi)))
    rep.add("head length", rep_data.head_length)
    rep.add("candidates checked", rep_data.candidates_checked)
    rep.add("candidates passing", rep_data.candidates_passing)
    rep.add("all candidates nonnegative",
            "yes" if rep_data.all_candidates_nonnegative else "no")
    rep.add("horizon", rep_data.horizon)
    rep.add("tail liminf lower bound", repr(rep_data.tail_liminf_lower_bound))
    rep.add("tail liminf observed", repr(rep_data.tail_liminf_observed))
    rep.add("asymptotic shadowing fails",
            "certified" if rep_data.tail_failure_certified else "not certified")
    rep.emit()
    return 0 if rep_data.tail_failure_certified else 1


def cmd_omega(args):
    level = INF if args.level == "inf" else int(args.level)
    p = LadderPoint(level, parse_seq(args.seq))
    om = ladder_omega(p)
    rep = Report()
    rep.add("point", "(level %s, %r)" % (args.level, p.seq))
    rep.add("omega size", len(om))
    for i, q in enumerate(om):
        rep.add("omega %d" % i,
                "(level %s, %r)" % ("inf" if q.level == INF else q.level,
                                    q.seq))
    rep.emit()
    return 0


def cmd_verify(args):
    m = _require_plmap(resolve_map(args.map), "verify")
    field = map_field(m)
    po = load_pseudo_orbit(args.po, field)
    cert = load_certificate(args.cert, field)
    rep = Report()
    rep.add("map", args.map)
    rep.add("certificate", args.cert)
    try:
        verify_certificate(m, po, cert)
        rep.add("valid", "yes")
    except TracingError as exc:
        rep.add("valid", "no")
        rep.add("reason", str(exc))
    rep.emit()
    return 0


def cmd_figure_data(args):
    m = resolve_map(args.map)
    rows = []
    if isinstance(m, PLMap):
        lo, hi = float(m.lo), float(m.hi)
        xs = set()
        for i in range(args.samples + 1):
            xs.add(m.lo + (m.hi - m.lo) * Q(i, args.samples))
        for p in m.breakpoints:
            xs.add(p)
        for x in sorted(xs, key=float):
            rows.append((float(x), float(m(x))))
    elif isinstance(m, SmoothMap1D):
        for i in range(args.samples + 1):
            x = Q(-1) + Q(2 * i, args.samples)
            enc = m(x)
            rows.append((float(x), float(enc.midpoint())))
    else:
        raise ValueError("unsupported map for figure-data")
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for x, y in rows:
            print("%.12g %.12g" % (x, y), file=out)
    finally:
        if args.out:
            out.close()
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def build_parser():
    p = argparse.ArgumentParser(
        prog="shadowlink",
        description="certified shadowing, linking and tracing for interval "
                    "maps and shift spaces")
    sub = p.add_subparsers(dest="command", required=True)

    def add_map(sp):
        sp.add_argument("--map", required=True,
                        help="preset (tent:golden, tent:s=3/2, golden-core, "
                             "golden-restriction, double-tent, "
                             "nucleus:depth=N, two-sided:depth=N, "
                             "circle:a|b|c) or a JSON map file")

    sp = sub.add_parser("linking", help="linking-property verdict")
    add_map(sp)
    sp.add_argument("--m-max", type=int, default=50)
    sp.add_argument("--max-steps", type=int, default=300)
    sp.add_argument("--eps-ladder", default=None,
                    help="comma-separated eps values for the fallback probe")
    sp.set_defaults(fn=cmd_linking)

    sp = sub.add_parser("shadow-set", help="set of eps-shadowing points")
    add_map(sp)
    sp.add_argument("--po", required=True, help="pseudo-orbit JSON file")
    sp.add_argument("--eps", required=True)
    sp.set_defaults(fn=cmd_shadow_set)

    sp = sub.add_parser("modulus", help="empirical shadowing-modulus estimate")
    add_map(sp)
    sp.add_argument("--eps", required=True)
    sp.add_argument("--length", type=int, default=20)
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--j-max", type=int, default=20)
    sp.set_defaults(fn=cmd_modulus)

    sp = sub.add_parser("slimit-trace", help="s-limit tracing certificate")
    add_map(sp)
    sp.add_argument("--eps", required=True)
    sp.add_argument("--po", default=None, help="pseudo-orbit JSON file")
    sp.add_argument("--x0", default=None,
                    help="start point for a generated orbit")
    sp.add_argument("--horizon", type=int, default=60)
    sp.add_argument("--seed", type=int, default=None,
                    help="required when generating the orbit")
    sp.add_argument("--out", default=None, help="certificate output path")
    sp.add_argument("--po-out", default=None,
                    help="write the generated pseudo-orbit here")
    sp.set_defaults(fn=cmd_slimit_trace)

    sp = sub.add_parser("chain", help="certified delta-chain search")
    add_map(sp)
    sp.add_argument("--from", required=True)
    sp.add_argument("--to", required=True)
    sp.add_argument("--delta", required=True)
    sp.add_argument("--power", type=int, default=1)
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_chain)

    sp = sub.add_parser("sft-shadow", help="diagonal shadowing in an SFT")
    sp.add_argument("--alphabet", required=True, help="e.g. 01")
    sp.add_argument("--forbidden", default="",
                    help="comma-separated forbidden words")
    sp.add_argument("--po", required=True,
                    help="semicolon-separated sequence literals")
    sp.add_argument("--delta", required=True)
    sp.add_argument("--eps", default=None)
    sp.set_defaults(fn=cmd_sft_shadow)

    sp = sub.add_parser("ladder-demo",
                        help="shadow a random ladder pseudo-orbit")
    sp.add_argument("--eps", default="1/2")
    sp.add_argument("--length", type=int, default=20)
    sp.add_argument("--seed", type=int, required=True)
    sp.set_defaults(fn=cmd_ladder_demo)

    sp = sub.add_parser("circle-demo",
                        help="asymptotic-shadowing failure on the circle")
    sp.add_argument("--delta", default="1/100")
    sp.add_argument("--horizon", type=int, default=10**4)
    sp.add_argument("--head", type=int, default=6)
    sp.add_argument("--grid", default="1/100")
    sp.set_defaults(fn=cmd_circle_demo)

    sp = sub.add_parser("omega", help="omega-limit of a ladder point")
    sp.add_argument("--level", required=True, help="integer or 'inf'")
    sp.add_argument("--seq", required=True, help="sequence literal")
    sp.set_defaults(fn=cmd_omega)

    sp = sub.add_parser("verify", help="re-verify a tracing certificate")
    add_map(sp)
    sp.add_argument("--po", required=True)
    sp.add_argument("--cert", required=True)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("figure-data",
                        help="two-column samples of a map's graph")
    add_map(sp)
    sp.add_argument("--samples", type=int, default=512)
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_figure_data)

    return p


def main(argv=None):
    env_prec = os.environ.get("SHADOWLINK_PRECISION")
    if env_prec:
        config.set_precision(int(env_prec))
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
