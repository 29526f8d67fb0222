"""Serialization: map presets, pseudo-orbit files, certificate files.

Everything round-trips bit-exactly for exact scalars.  Files are JSON with
scalars stored as strings in the format of ``format_scalar``; algebraic
scalars carry their number field (minimal polynomial + isolating interval)
in the file header so they can be parsed back without context.
"""

import json

from .demos import circle_slimit_failure_demo  # noqa: F401  (re-export hub)
from .maps import (
    PLMap,
    SmoothMap1D,
    CUBE,
    LOG_OSCILLATION,
    PIECEWISE_CUBIC,
    make_double_tent,
    make_tent,
    make_tent_golden,
    tent_core,
)
from .nucleus import make_nucleus_family, make_two_sided, nucleus_field
from .pseudo import PseudoOrbit
from .scalars import (
    AlgebraicElement,
    AlgebraicField,
    Q,
    format_scalar,
    golden_ratio,
    parse_scalar,
)
from .tracing import TraceCertificate, golden_restriction


CIRCLE_VARIANTS = {"a": CUBE, "b": PIECEWISE_CUBIC, "c": LOG_OSCILLATION}


def resolve_map(spec: str):
    """Turn a map spec string into a map object.

    Presets: ``tent:golden``, ``tent:s=<rational>``, ``golden-core``,
    ``golden-restriction``, ``double-tent``, ``nucleus:depth=N``,
    ``two-sided:depth=N``, ``circle:a|b|c``.  Anything else is read as a
    path to a JSON breakpoints/values file.
    """
    if spec == "tent:golden":
        return make_tent_golden()
    if spec.startswith("tent:s="):
        return make_tent(parse_scalar(spec[len("tent:s="):]))
    if spec == "golden-core":
        return tent_core(make_tent_golden())
    if spec == "golden-restriction":
        return golden_restriction()
    if spec == "double-tent":
        return make_double_tent()
    if spec.startswith("nucleus:depth="):
        return make_nucleus_family(int(spec[len("nucleus:depth="):]))
    if spec.startswith("two-sided:depth="):
        return make_two_sided(int(spec[len("two-sided:depth="):]))
    if spec.startswith("circle:"):
        variant = spec[len("circle:"):]
        if variant not in CIRCLE_VARIANTS:
            raise ValueError("unknown circle variant %r (use a, b or c)" % variant)
        return SmoothMap1D(CIRCLE_VARIANTS[variant])
    return load_map(spec)


def map_field(m):
    """The number field of a map's scalars, or None for rational ones."""
    if not isinstance(m, PLMap):
        return None
    for x in m.breakpoints + m.values:
        if isinstance(x, AlgebraicElement):
            return x.field
    return None


def _field_header(field):
    if field is None:
        return None
    return {
        "minpoly": [str(c) for c in field.minpoly],
        "lo": str(field.lo),
        "hi": str(field.hi),
    }


def _field_from_header(header):
    if header is None:
        return None
    return AlgebraicField([Q(c) for c in header["minpoly"]],
                          Q(header["lo"]), Q(header["hi"]))


def save_map(m: PLMap, path):
    field = map_field(m)
    doc = {
        "breakpoints": [format_scalar(x) for x in m.breakpoints],
        "values": [format_scalar(v) for v in m.values],
    }
    if field is not None:
        doc["field"] = _field_header(field)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)


def load_map(path) -> PLMap:
    with open(path) as fh:
        doc = json.load(fh)
    field = _field_from_header(doc.get("field"))
    bps = [parse_scalar(x, field) for x in doc["breakpoints"]]
    vals = [parse_scalar(v, field) for v in doc["values"]]
    return PLMap(bps, vals)


def save_pseudo_orbit(po: PseudoOrbit, path, field=None):
    doc = {"points": [format_scalar(x) for x in po.points]}
    if po.delta is not None:
        doc["delta"] = format_scalar(po.delta)
    else:
        doc["schedule"] = [format_scalar(e) for e in po.schedule]
    if field is not None:
        doc["field"] = _field_header(field)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)


def load_pseudo_orbit(path, field=None) -> PseudoOrbit:
    with open(path) as fh:
        doc = json.load(fh)
    if field is None:
        field = _field_from_header(doc.get("field"))
    pts = tuple(parse_scalar(x, field) for x in doc["points"])
    if "delta" in doc:
        return PseudoOrbit(pts, delta=parse_scalar(doc["delta"], field))
    return PseudoOrbit(
        pts, schedule=tuple(parse_scalar(e, field) for e in doc["schedule"]))


def save_certificate(cert: TraceCertificate, path, field=None):
    doc = {
        "z": format_scalar(cert.z),
        "bounds": [format_scalar(b) for b in cert.bounds],
        "start_index": cert.start_index,
        "cover_end": cert.cover_end,
        "m_ks": cert.m_ks,
        "n_ks": cert.n_ks,
        "j_ks": cert.j_ks,
        "w_sets": [[[format_scalar(a), format_scalar(b)] for a, b in w]
                   for w in cert.w_sets],
        "eps": format_scalar(cert.eps),
        "eps0": format_scalar(cert.eps0),
        "lam": format_scalar(cert.lam),
        "degenerate": cert.degenerate,
    }
    if field is not None:
        doc["field"] = _field_header(field)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)


def load_certificate(path, field=None) -> TraceCertificate:
    from .intervals import IntervalSet

    with open(path) as fh:
        doc = json.load(fh)
    if field is None:
        field = _field_from_header(doc.get("field"))

    def sc(text):
        return parse_scalar(text, field)

    return TraceCertificate(
        z=sc(doc["z"]),
        bounds=[sc(b) for b in doc["bounds"]],
        start_index=doc["start_index"],
        cover_end=doc["cover_end"],
        m_ks=list(doc["m_ks"]),
        n_ks=list(doc["n_ks"]),
        j_ks=list(doc["j_ks"]),
        w_sets=[IntervalSet([(sc(a), sc(b)) for a, b in w])
                for w in doc["w_sets"]],
        eps=sc(doc["eps"]),
        eps0=sc(doc["eps0"]),
        lam=sc(doc["lam"]),
        degenerate=doc["degenerate"],
    )
