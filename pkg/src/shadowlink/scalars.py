"""Exact and enclosure scalar arithmetic.

Three numeric modes, promotable in this order:

* rationals (``fractions.Fraction`` / ``gmpy2.mpq``),
* algebraic numbers: ``Quadratic`` elements p + q*sqrt(D) of a real quadratic
  field, and ``AlgebraicElement`` values in a higher-degree real field given
  by a minimal polynomial and an isolating root interval,
* ``Enclosure``: a dyadic interval [lo, hi] guaranteed to contain the value,
  outward-rounded at the configured working precision.

Exact modes compare decidably; enclosures may compare UNKNOWN when they
overlap.
"""

import math
import re
from enum import Enum
from fractions import Fraction

from . import config

try:
    from gmpy2 import mpq as Q

    _MPQ = type(Q(1))
except ImportError:  # pragma: no cover - gmpy2 is normally present
    Q = Fraction
    _MPQ = Fraction

RATIONAL_TYPES = (int, Fraction, _MPQ)


class Cmp(Enum):
    LT = -1
    EQ = 0
    GT = 1
    UNKNOWN = 2


class PrecisionError(ArithmeticError):
    """A verdict needed an exact comparison the enclosure could not resolve."""


def _sign(r):
    return (r > 0) - (r < 0)


def sqrt_bounds(d, bits):
    """Rational lo <= sqrt(d) <= hi with hi - lo <= 2**-bits."""
    scaled = d << (2 * bits)
    root = math.isqrt(scaled)
    return Q(root, 1 << bits), Q(root + 1, 1 << bits)


# ---------------------------------------------------------------------------
# quadratic field Q(sqrt(D))


class Quadratic:
    """p + q*sqrt(d) with rational p, q and square-free d > 1."""

    __slots__ = ("p", "q", "d")

    def __init__(self, p, q, d):
        self.p = Q(p)
        self.q = Q(q)
        self.d = int(d)
        if self.d <= 1:
            raise ValueError("d must be a square-free integer > 1")

    def _coerce(self, other):
        if isinstance(other, Quadratic):
            if other.d != self.d:
                raise ValueError("cannot mix sqrt(%d) and sqrt(%d)" % (self.d, other.d))
            return other
        if isinstance(other, RATIONAL_TYPES):
            return Quadratic(other, 0, self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quadratic(self.p + o.p, self.q + o.q, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quadratic(self.p - o.p, self.q - o.q, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quadratic(
            self.p * o.p + self.q * o.q * self.d,
            self.p * o.q + self.q * o.p,
            self.d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        norm = o.p * o.p - o.q * o.q * o.d
        if norm == 0:
            raise ZeroDivisionError("division by zero quadratic value")
        conj = Quadratic(o.p, -o.q, self.d)
        num = self * conj
        return Quadratic(num.p / norm, num.q / norm, self.d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Quadratic(-self.p, -self.q, self.d)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Quadratic(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sign(self):
        """Exact sign of p + q*sqrt(d), by rational arithmetic only."""
        p, q = self.p, self.q
        if q == 0:
            return _sign(p)
        if p == 0:
            return _sign(q)
        if p > 0 and q > 0:
            return 1
        if p < 0 and q < 0:
            return -1
        # p, q of opposite signs: compare p^2 against q^2 d (cannot tie,
        # d square-free)
        if p > 0:
            return 1 if p * p > q * q * self.d else -1
        return 1 if q * q * self.d > p * p else -1

    def bounds(self, bits=None):
        if bits is None:
            bits = config.get_precision()
        lo, hi = sqrt_bounds(self.d, bits)
        if self.q >= 0:
            return self.p + self.q * lo, self.p + self.q * hi
        return self.p + self.q * hi, self.p + self.q * lo

    def __eq__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            return self.q == 0 and self.p == other
        if isinstance(other, Quadratic) and other.d == self.d:
            return self.p == other.p and self.q == other.q
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(Fraction(self.p))
        return hash((Fraction(self.p), Fraction(self.q), self.d))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        lo, hi = self.bounds(64)
        return float((lo + hi) / 2)

    def __repr__(self):
        return "Quadratic(%s, %s, %d)" % (self.p, self.q, self.d)

    def __str__(self):
        return format_scalar(self)


def golden_ratio():
    """(1 + sqrt(5)) / 2."""
    return Quadratic(Q(1, 2), Q(1, 2), 5)


# ---------------------------------------------------------------------------
# general real algebraic field Q[x]/(minpoly), one fixed real root


def _poly_trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _poly_divmod(a, b):
    a = _poly_trim(a)
    b = _poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Q(0)] * max(0, len(a) - len(b) + 1)
    rem = list(a)
    inv_lead = 1 / Q(b[-1])
    while len(rem) >= len(b) and _poly_trim(rem):
        rem = _poly_trim(rem)
        if len(rem) < len(b):
            break
        k = len(rem) - len(b)
        c = rem[-1] * inv_lead
        quot[k] = c
        for i, bc in enumerate(b):
            rem[k + i] -= c * bc
        rem.pop()
    return quot, _poly_trim(rem)


def _poly_eval_interval(cs, lo, hi):
    """Interval Horner: bounds of sum(cs[i] * x^i) over x in [lo, hi]."""
    alo = ahi = Q(0)
    for c in reversed(cs):
        # [alo, ahi] * [lo, hi]
        cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(cands) + c, max(cands) + c
    return alo, ahi


class AlgebraicField:
    """Real number field with a distinguished root of an irreducible minpoly.

    ``minpoly`` is a coefficient sequence c0..cn (cn != 0); the isolating
    interval must bracket exactly one real root and is refined in place as
    sign decisions demand.
    """

    def __init__(self, minpoly, lo, hi, name="x"):
        self.minpoly = tuple(Q(c) for c in minpoly)
        self.degree = len(self.minpoly) - 1
        if self.degree < 2:
            raise ValueError("minpoly must have degree >= 2")
        self._lo = Q(lo)
        self._hi = Q(hi)
        self.name = name
        if self._poly_at(self._lo) * self._poly_at(self._hi) >= 0:
            raise ValueError("interval does not bracket a root")
        self._sign_lo = _sign(self._poly_at(self._lo))
        # x^(degree+k) reduced mod minpoly, for k = 0 .. degree-2
        self._power_table = self._build_powers()
        self._inv_cache = {}

    def describes_same_root(self, other):
        """Same minimal polynomial and overlapping isolating intervals:
        the two field objects denote the same embedded number field."""
        return (self.minpoly == other.minpoly
                and self._lo < other._hi and other._lo < self._hi)

    @property
    def lo(self):
        return self._lo

    @property
    def hi(self):
        return self._hi

    def _poly_at(self, x):
        acc = Q(0)
        for c in reversed(self.minpoly):
            acc = acc * x + c
        return acc

    def _build_powers(self):
        n = self.degree
        lead = self.minpoly[-1]
        base = [-c / lead for c in self.minpoly[:-1]]  # x^n = base
        table = [list(base)]
        for _ in range(n - 2):
            prev = table[-1]
            nxt = [Q(0)] + prev[: n - 1]
            top = prev[n - 1]
            if top != 0:
                for i in range(n):
                    nxt[i] += top * base[i]
            table.append(nxt)
        return [tuple(row) for row in table]

    def refine(self, width):
        """Shrink the isolating interval below ``width`` by bisection."""
        while self._hi - self._lo > width:
            mid = (self._lo + self._hi) / 2
            s = _sign(self._poly_at(mid))
            if s == 0:
                # rational root would contradict irreducibility; treat as tie
                # broken towards keeping a bracket
                eps = (self._hi - self._lo) / 4
                self._lo, self._hi = mid - eps, mid + eps
                return
            if s == self._sign_lo:
                self._lo = mid
            else:
                self._hi = mid

    def root_bounds(self, bits=None):
        if bits is None:
            bits = config.get_precision()
        self.refine(Q(1, 1 << bits))
        return self._lo, self._hi

    def interval(self):
        return self._lo, self._hi

    def element(self, coeffs):
        cs = [Q(c) for c in coeffs]
        if len(cs) > self.degree:
            raise ValueError("coefficient vector too long")
        cs += [Q(0)] * (self.degree - len(cs))
        return AlgebraicElement(self, tuple(cs))

    def generator(self):
        return self.element([0, 1])

    def from_rational(self, r):
        return self.element([r])


class AlgebraicElement:
    """Element of an :class:`AlgebraicField`, stored as poly coeffs in the root."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, AlgebraicElement):
            if (other.field is not self.field
                    and not self.field.describes_same_root(other.field)):
                raise ValueError("cannot mix elements of different fields")
            return other
        if isinstance(other, RATIONAL_TYPES):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicElement(
            self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicElement(
            self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs))
        )

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = self.field.degree
        a, b = self.coeffs, o.coeffs
        prod = [Q(0)] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj != 0:
                    prod[i + j] += ai * bj
        out = prod[:n]
        table = self.field._power_table
        for k in range(n, 2 * n - 1):
            ck = prod[k]
            if ck != 0:
                row = table[k - n]
                for i in range(n):
                    out[i] += ck * row[i]
        return AlgebraicElement(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        key = self.coeffs
        cached = self.field._inv_cache.get(key)
        if cached is not None:
            return AlgebraicElement(self.field, cached)
        if all(c == 0 for c in self.coeffs):
            raise ZeroDivisionError("division by zero field element")
        # extended Euclid: find u with u * self == 1 (mod minpoly)
        r0, r1 = list(self.field.minpoly), _poly_trim(self.coeffs)
        s0, s1 = [], [Q(1)]
        while True:
            quot, rem = _poly_divmod(r0, r1)
            if not rem:
                break
            s_next = list(s0)
            s_next += [Q(0)] * (len(quot) + len(s1) - 1 - len(s_next))
            for i, qc in enumerate(quot):
                if qc == 0:
                    continue
                for j, sc in enumerate(s1):
                    s_next[i + j] -= qc * sc
            r0, r1, s0, s1 = r1, rem, s1, _poly_trim(s_next) or [Q(0)]
        if len(r1) != 1:
            raise ZeroDivisionError("element not invertible (minpoly reducible?)")
        inv_const = 1 / r1[0]
        inv = [c * inv_const for c in s1]
        result = tuple(
            (inv[i] if i < len(inv) else Q(0)) for i in range(self.field.degree)
        )
        if len(self.field._inv_cache) < 4096:
            self.field._inv_cache[key] = result
        return AlgebraicElement(self.field, result)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return AlgebraicElement(self.field, tuple(-c for c in self.coeffs))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = self.field.from_rational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def sign(self):
        cs = _poly_trim(self.coeffs)
        if not cs:
            return 0
        if len(cs) == 1:
            return _sign(cs[0])
        while True:
            lo, hi = _poly_eval_interval(cs, *self.field.interval())
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            width = self.field._hi - self.field._lo
            self.field.refine(width / 16)

    def bounds(self, bits=None):
        if bits is None:
            bits = config.get_precision()
        tol = Q(1, 1 << bits)
        while True:
            lo, hi = _poly_eval_interval(list(self.coeffs), *self.field.interval())
            if hi - lo <= tol:
                return lo, hi
            width = self.field._hi - self.field._lo
            self.field.refine(width / 16)

    def __eq__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, AlgebraicElement) and other.field is self.field:
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.coeffs[0]))
        return hash((id(self.field),) + tuple(Fraction(c) for c in self.coeffs))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        lo, hi = self.bounds(64)
        return float((lo + hi) / 2)

    def __repr__(self):
        return "AlgebraicElement(%s; %s)" % (
            "+".join("%s*%s^%d" % (c, self.field.name, i)
                     for i, c in enumerate(self.coeffs) if c != 0) or "0",
            self.field.name,
        )


# ---------------------------------------------------------------------------
# enclosures


def _round_down(x, bits):
    num, den = x.numerator, x.denominator
    scaled = (num << bits) // den
    return Q(scaled, 1 << bits)


def _round_up(x, bits):
    num, den = x.numerator, x.denominator
    scaled = -((-num << bits) // den)
    return Q(scaled, 1 << bits)


class Enclosure:
    """Closed dyadic interval certified to contain the represented number.

    Arithmetic is exact on rational endpoints, then outward-rounded so the
    endpoint size stays bounded by the working precision.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi, rounded=False):
        lo, hi = Q(lo), Q(hi)
        if lo > hi:
            raise ValueError("enclosure lower bound exceeds upper bound")
        if not rounded:
            bits = config.get_precision()
            if lo.denominator.bit_length() > bits + 8:
                lo = _round_down(lo, bits)
            if hi.denominator.bit_length() > bits + 8:
                hi = _round_up(hi, bits)
        self.lo = lo
        self.hi = hi

    @property
    def width(self):
        return self.hi - self.lo

    def midpoint(self):
        return (self.lo + self.hi) / 2

    def _coerce(self, other):
        if isinstance(other, Enclosure):
            return other
        return to_enclosure(other)

    def __add__(self, other):
        o = self._coerce(other)
        return Enclosure(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Enclosure(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        cands = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Enclosure(min(cands), max(cands))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("enclosure divisor straddles zero")
        cands = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return Enclosure(min(cands), max(cands))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo)

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Enclosure(0, max(-self.lo, self.hi))

    def contains(self, x):
        """True when the exact value x certainly lies inside."""
        lo, hi = bounds_of(x)
        return self.lo <= lo and hi <= self.hi

    def __float__(self):
        return float(self.midpoint())

    def __repr__(self):
        return "Enclosure(%s, %s)" % (self.lo, self.hi)

    def __str__(self):
        return format_scalar(self)


def bounds_of(x, bits=None):
    """Certified rational (lo, hi) bounds for any scalar."""
    if isinstance(x, RATIONAL_TYPES):
        r = Q(x)
        return r, r
    if isinstance(x, (Quadratic, AlgebraicElement)):
        return x.bounds(bits)
    if isinstance(x, Enclosure):
        return x.lo, x.hi
    raise TypeError("not a scalar: %r" % (x,))


def to_enclosure(x, bits=None):
    lo, hi = bounds_of(x, bits)
    return Enclosure(lo, hi)


def is_exact(x):
    return isinstance(x, RATIONAL_TYPES + (Quadratic, AlgebraicElement))


# ---------------------------------------------------------------------------
# comparisons


def compare(a, b):
    """Three-valued (plus UNKNOWN) comparison across all scalar modes."""
    if isinstance(a, Enclosure) or isinstance(b, Enclosure):
        attempts = 0
        while True:
            alo, ahi = bounds_of(a)
            blo, bhi = bounds_of(b)
            if ahi < blo:
                return Cmp.LT
            if bhi < alo:
                return Cmp.GT
            if alo == ahi == blo == bhi:
                return Cmp.EQ
            # overlapping: escalation only helps for the exact operand
            if attempts >= 2 or (isinstance(a, Enclosure) and isinstance(b, Enclosure)):
                return Cmp.UNKNOWN
            attempts += 1
    diff_sign = sign_of_difference(a, b)
    return Cmp(diff_sign)


def sign_of_difference(a, b):
    if isinstance(a, RATIONAL_TYPES) and isinstance(b, RATIONAL_TYPES):
        return _sign(Q(a) - Q(b))
    if isinstance(a, (Quadratic, AlgebraicElement)):
        return (a - b).sign()
    if isinstance(b, (Quadratic, AlgebraicElement)):
        return -((b - a).sign())
    raise TypeError("cannot compare %r with %r" % (a, b))


def exact_cmp(a, b):
    """Comparison that must resolve; raises PrecisionError on UNKNOWN."""
    c = compare(a, b)
    if c is Cmp.UNKNOWN:
        raise PrecisionError("comparison of %r and %r did not resolve" % (a, b))
    return c.value


def scalar_min(a, b):
    return a if exact_cmp(a, b) <= 0 else b


def scalar_max(a, b):
    return a if exact_cmp(a, b) >= 0 else b


def scalar_abs(x):
    if isinstance(x, RATIONAL_TYPES):
        r = Q(x)
        return -r if r < 0 else r
    return abs(x)


def arith(a, b, op):
    """Spec-level arithmetic entry point: op in '+', '-', '*', '/'."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    raise ValueError("unknown op %r" % op)


# ---------------------------------------------------------------------------
# text round-trip


_QUAD_RE = re.compile(
    r"^\s*(?P<p>[+-]?\d+(?:/\d+)?)\s*(?P<sign>[+-])\s*"
    r"(?P<q>\d+(?:/\d+)?)\s*\*\s*sqrt\(\s*(?P<d>\d+)\s*\)\s*$"
)
_QUAD_BARE_RE = re.compile(
    r"^\s*(?P<sign>[+-]?)\s*(?P<q>\d+(?:/\d+)?)\s*\*\s*sqrt\(\s*(?P<d>\d+)\s*\)\s*$"
)
_ENC_RE = re.compile(r"^\s*\[\s*(?P<lo>[^,\]]+)\s*,\s*(?P<hi>[^,\]]+)\s*\]\s*$")


def format_scalar(x):
    if isinstance(x, RATIONAL_TYPES):
        return str(Q(x))
    if isinstance(x, Quadratic):
        if x.q == 0:
            return str(x.p)
        q = x.q
        op = "+" if q >= 0 else "-"
        return "%s%s%s*sqrt(%d)" % (x.p, op, scalar_abs(q), x.d)
    if isinstance(x, Enclosure):
        return "[%s,%s]" % (x.lo, x.hi)
    if isinstance(x, AlgebraicElement):
        return "alg(%s)" % ",".join(str(c) for c in x.coeffs)
    raise TypeError("not a scalar: %r" % (x,))


def parse_scalar(text, field=None):
    """Inverse of :func:`format_scalar`; bit-exact for exact scalars."""
    text = text.strip()
    m = _ENC_RE.match(text)
    if m:
        return Enclosure(Q(m.group("lo")), Q(m.group("hi")), rounded=True)
    if text.startswith("alg(") and text.endswith(")"):
        if field is None:
            raise ValueError("algebraic scalar needs its field to parse")
        coeffs = [Q(c) for c in text[4:-1].split(",")]
        return field.element(coeffs)
    m = _QUAD_RE.match(text)
    if m:
        q = Q(m.group("q"))
        if m.group("sign") == "-":
            q = -q
        return Quadratic(Q(m.group("p")), q, int(m.group("d")))
    m = _QUAD_BARE_RE.match(text)
    if m:
        q = Q(m.group("q"))
        if m.group("sign") == "-":
            q = -q
        return Quadratic(0, q, int(m.group("d")))
    return Q(text)
