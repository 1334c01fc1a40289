"""Exact dyadic rationals, outward-rounded intervals, and certified enclosures.

Dyadic numbers m * 2**e are closed under +, -, *, so interval arithmetic here
is exact unless a rounding precision is requested explicitly.  Rounding, when
asked for, always moves lower endpoints down and upper endpoints up.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class Dyadic:
    """An exact dyadic rational m * 2**e, stored normalized (m odd or zero)."""

    __slots__ = ("m", "e")

    def __init__(self, m: int, e: int = 0):
        if m == 0:
            e = 0
        else:
            shift = (m & -m).bit_length() - 1
            m >>= shift
            e += shift
        self.m = m
        self.e = e

    @classmethod
    def from_fraction_floor(cls, fr: Fraction, precision: int) -> "Dyadic":
        """Largest multiple of 2**-precision that is <= fr."""
        return cls((fr.numerator << precision) // fr.denominator, -precision)

    @classmethod
    def from_fraction_ceil(cls, fr: Fraction, precision: int) -> "Dyadic":
        return cls(-((-fr.numerator << precision) // fr.denominator), -precision)

    def as_fraction(self) -> Fraction:
        if self.e >= 0:
            return Fraction(self.m << self.e)
        return Fraction(self.m, 1 << -self.e)

    def floor_to(self, precision: int) -> "Dyadic":
        """Round down to a multiple of 2**-precision (exact if already one)."""
        shift = -precision - self.e
        if shift <= 0:
            return self
        return Dyadic(self.m >> shift, -precision)

    def ceil_to(self, precision: int) -> "Dyadic":
        shift = -precision - self.e
        if shift <= 0:
            return self
        return Dyadic(-((-self.m) >> shift), -precision)

    def _cmp(self, other: "Dyadic") -> int:
        d = self.e - other.e
        a, b = (self.m << d, other.m) if d >= 0 else (self.m, other.m << -d)
        return (a > b) - (a < b)

    @staticmethod
    def _coerce(value) -> "Dyadic":
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, int):
            return Dyadic(value)
        raise TypeError(f"cannot mix Dyadic with {type(value).__name__}")

    def __add__(self, other):
        other = Dyadic._coerce(other)
        e = min(self.e, other.e)
        return Dyadic((self.m << (self.e - e)) + (other.m << (other.e - e)), e)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-Dyadic._coerce(other))

    def __rsub__(self, other):
        return Dyadic._coerce(other) + (-self)

    def __mul__(self, other):
        other = Dyadic._coerce(other)
        return Dyadic(self.m * other.m, self.e + other.e)

    __rmul__ = __mul__

    def __neg__(self):
        return Dyadic(-self.m, self.e)

    def __abs__(self):
        return Dyadic(abs(self.m), self.e)

    def half(self) -> "Dyadic":
        return Dyadic(self.m, self.e - 1)

    def __eq__(self, other):
        if not isinstance(other, (Dyadic, int)):
            return NotImplemented
        return self._cmp(Dyadic._coerce(other)) == 0

    def __lt__(self, other):
        return self._cmp(Dyadic._coerce(other)) < 0

    def __le__(self, other):
        return self._cmp(Dyadic._coerce(other)) <= 0

    def __gt__(self, other):
        return self._cmp(Dyadic._coerce(other)) > 0

    def __ge__(self, other):
        return self._cmp(Dyadic._coerce(other)) >= 0

    def __hash__(self):
        return hash(self.as_fraction())

    def sign(self) -> int:
        return (self.m > 0) - (self.m < 0)

    def __float__(self):
        return self.m * 2.0 ** self.e

    def as_json(self) -> dict:
        return {"mantissa": str(self.m), "exponent": self.e}

    @classmethod
    def from_json(cls, obj: dict) -> "Dyadic":
        return cls(int(obj["mantissa"]), int(obj["exponent"]))

    def __repr__(self):
        return f"Dyadic({self.m}, {self.e})"


class DyadicInterval:
    """Closed interval with dyadic endpoints; arithmetic encloses the true range."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Dyadic, hi: Dyadic):
        if lo > hi:
            raise ValueError(f"inverted interval [{lo!r}, {hi!r}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, value) -> "DyadicInterval":
        d = Dyadic._coerce(value)
        return cls(d, d)

    @classmethod
    def from_fractions(cls, lo: Fraction, hi: Fraction, precision: int) -> "DyadicInterval":
        return cls(Dyadic.from_fraction_floor(lo, precision),
                   Dyadic.from_fraction_ceil(hi, precision))

    def is_point(self) -> bool:
        return self.lo == self.hi

    def width(self) -> Dyadic:
        return self.hi - self.lo

    def midpoint(self) -> Dyadic:
        return (self.lo + self.hi).half()

    def sign(self):
        """+1 / -1 if definitely positive / negative, 0 if exactly zero, None otherwise."""
        if self.lo.m > 0:
            return 1
        if self.hi.m < 0:
            return -1
        if self.lo.m == 0 and self.hi.m == 0:
            return 0
        return None

    @staticmethod
    def _coerce(value) -> "DyadicInterval":
        if isinstance(value, DyadicInterval):
            return value
        return DyadicInterval.point(value)

    def __add__(self, other):
        other = DyadicInterval._coerce(other)
        return DyadicInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        other = DyadicInterval._coerce(other)
        return DyadicInterval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        return DyadicInterval._coerce(other) - self

    def __neg__(self):
        return DyadicInterval(-self.hi, -self.lo)

    def __mul__(self, other):
        other = DyadicInterval._coerce(other)
        if self.is_point() and other.is_point():
            return DyadicInterval.point(self.lo * other.lo)
        cands = (self.lo * other.lo, self.lo * other.hi,
                 self.hi * other.lo, self.hi * other.hi)
        lo = hi = cands[0]
        for c in cands[1:]:
            if c < lo:
                lo = c
            elif c > hi:
                hi = c
        return DyadicInterval(lo, hi)

    __rmul__ = __mul__

    def round_outward(self, precision: int) -> "DyadicInterval":
        return DyadicInterval(self.lo.floor_to(precision), self.hi.ceil_to(precision))

    def contains(self, other) -> bool:
        other = DyadicInterval._coerce(other)
        return self.lo <= other.lo and other.hi <= self.hi

    def contains_fraction(self, fr: Fraction) -> bool:
        return self.lo.as_fraction() <= fr <= self.hi.as_fraction()

    def __eq__(self, other):
        if not isinstance(other, DyadicInterval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


def _atan_inv_scaled(q: int, work: int) -> tuple[int, int]:
    """arctan(1/q) * 2**work as an integer, plus an error bound in ulps.

    Alternating series; every floor division loses < 1 ulp and the dropped
    tail is below the first omitted term, itself < 1 ulp at the stop point.
    """
    top = 1 << work
    total, sign, j, power, terms = 0, 1, 0, q, 0
    q2 = q * q
    while True:
        den = power * (2 * j + 1)
        if den > top:
            break
        total += sign * (top // den)
        sign, j, power, terms = -sign, j + 1, power * q2, terms + 1
    return total, terms + 1


@lru_cache(maxsize=None)
def pi_bounds(precision: int) -> tuple[Fraction, Fraction]:
    """Rational lo <= pi <= hi with hi - lo <= 2**-precision (Machin's formula)."""
    work = precision + 32
    v5, e5 = _atan_inv_scaled(5, work)
    v239, e239 = _atan_inv_scaled(239, work)
    value = 16 * v5 - 4 * v239
    err = 16 * e5 + 4 * e239
    scale = 1 << work
    lo, hi = Fraction(value - err, scale), Fraction(value + err, scale)
    assert hi - lo <= Fraction(1, 1 << precision)
    return lo, hi


def _cos_bounds(t: Fraction, precision: int) -> tuple[Fraction, Fraction]:
    """Rational bounds on cos(t) for 0 <= t <= 8/5, width <= 2**-precision.

    Taylor terms t^(2j)/(2j)! decrease strictly from j = 1 on for t <= 8/5,
    so the first omitted term bounds the truncation error.
    """
    if not (0 <= t <= Fraction(8, 5)):
        raise ValueError(f"cos bounds need t in [0, 8/5], got {t}")
    eps = Fraction(1, 1 << (precision + 2))
    t2 = t * t
    total = Fraction(1)
    term = Fraction(1)
    j = 0
    while True:
        j += 1
        term = term * t2 / ((2 * j - 1) * (2 * j))
        if j >= 2 and term < eps:
            break
        total += term if j % 2 == 0 else -term
    return total - term, total + term


@lru_cache(maxsize=None)
def sqrt_enclosure(n: int, precision: int) -> DyadicInterval:
    """Enclose sqrt(n) for 1 < n < 4 by exact bisection of t**2 - n.

    Endpoint signs of t**2 - n stay opposite throughout, certifying the root.
    """
    if not 1 < n < 4:
        raise ValueError("sqrt_enclosure handles radicands strictly between 1 and 4")
    lo, hi = Dyadic(1), Dyadic(2)
    for _ in range(precision + 1):
        mid = (lo + hi).half()
        s = (mid * mid - n).sign()
        if s == 0:
            return DyadicInterval.point(mid)
        if s < 0:
            lo = mid
        else:
            hi = mid
    return DyadicInterval(lo, hi)


_EXACT_TWO_COS = {Fraction(0): 2, Fraction(1, 3): 1, Fraction(1, 2): 0}


@lru_cache(maxsize=None)
def two_cos_pi_ratio(num: int, den: int, precision: int) -> DyadicInterval:
    """Enclose 2*cos(num*pi/den) with width <= 2**-precision, 0 <= num <= den.

    Exact for ratios 0, 1/3, 1/2 (and their reflections); sqrt bisection for
    1/4 and 1/6; otherwise a certified pi enclosure plus the Taylor series,
    after reflecting cos(t) = -cos(pi - t) into [0, pi/2].
    """
    if den < 1 or not 0 <= num <= den:
        raise ValueError(f"need 0 <= num <= den, got {num}/{den}")
    r = Fraction(num, den)
    if r > Fraction(1, 2):
        return -two_cos_pi_ratio((1 - r).numerator, (1 - r).denominator, precision)
    if r in _EXACT_TWO_COS:
        return DyadicInterval.point(_EXACT_TWO_COS[r])
    if r == Fraction(1, 4):
        return sqrt_enclosure(2, precision)
    if r == Fraction(1, 6):
        return sqrt_enclosure(3, precision)
    work = precision + 16
    target = Dyadic(1, -precision)
    while True:
        pi_lo, pi_hi = pi_bounds(work)
        # cos is decreasing on [0, pi/2], so bound at the swapped endpoints
        c_lo = _cos_bounds(pi_hi * r, work)[0]
        c_hi = _cos_bounds(pi_lo * r, work)[1]
        iv = DyadicInterval.from_fractions(2 * c_lo, 2 * c_hi, precision + 2)
        if iv.width() <= target:
            return iv
        work *= 2
