"""Global numeric configuration.

Enclosure endpoints are dyadic rationals; ``precision`` is the number of
fractional bits kept after outward rounding.  Raising it tightens every
subsequently computed enclosure.
"""

from contextlib import contextmanager

DEFAULT_PRECISION = 128
DEFAULT_COMPONENT_CAP = 10**6

_state = {"precision": DEFAULT_PRECISION, "component_cap": DEFAULT_COMPONENT_CAP}


def get_precision():
    return _state["precision"]


def set_precision(bits):
    if bits < 4:
        raise ValueError("precision must be at least 4 bits")
    _state["precision"] = int(bits)


def get_component_cap():
    return _state["component_cap"]


def set_component_cap(n):
    _state["component_cap"] = int(n)


@contextmanager
def precision(bits):
    """Temporarily run with a different working precision."""
    old = _state["precision"]
    set_precision(bits)
    try:
        yield
    finally:
        _state["precision"] = old
