"""Exact sparse polynomial rings: Z[x,y] and the Laurent ring Z[s,1/s,y].

Every value is immutable after construction and every operation is pure.
Canonical term order everywhere (serialization, hashing, iteration) is
(degree-in-y, degree-in-x/exponent-of-s) ascending.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .dyadic import Dyadic, DyadicInterval


class NotSymmetric(ValueError):
    """A Laurent polynomial expected to be invariant under s -> 1/s is not."""


class ZeroPolynomial(ValueError):
    """Operation undefined on the zero polynomial."""


def _merge(a: dict, b: dict, bsign: int = 1) -> dict:
    out = dict(a)
    for key, c in b.items():
        c = bsign * c + out.get(key, 0)
        if c:
            out[key] = c
        else:
            out.pop(key, None)
    return out


def _product(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            key = (i1 + i2, j1 + j2)
            c = out.get(key, 0) + c1 * c2
            if c:
                out[key] = c
            else:
                del out[key]
    return out


class _SparsePoly:
    """Shared arithmetic over {(first_exp, y_deg): int} term maps."""

    __slots__ = ("_terms",)
    _first_symbol = "?"
    _first_nonneg = True

    def __init__(self, terms: dict):
        # internal: callers hand over ownership of an already-clean dict
        self._terms = terms

    @classmethod
    def from_terms(cls, items: Iterable[tuple[int, int, int]]):
        """Build from (first_exp, y_deg, coeff) triples, summing duplicates."""
        terms: dict = {}
        for i, j, c in items:
            if cls._first_nonneg and i < 0:
                raise ValueError(f"negative {cls._first_symbol}-exponent {i}")
            if j < 0:
                raise ValueError(f"negative y-exponent {j}")
            key = (i, j)
            c = terms.get(key, 0) + c
            if c:
                terms[key] = c
            else:
                terms.pop(key, None)
        return cls(terms)

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def one(cls):
        return cls({(0, 0): 1})

    @classmethod
    def const(cls, c: int):
        return cls({(0, 0): c} if c else {})

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == ({(0, 0): other} if other else {})
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash((type(self).__name__, tuple(self.terms())))

    def terms(self) -> Iterator[tuple[int, int, int]]:
        """(first_exp, y_deg, coeff) in canonical (y_deg, first_exp) order."""
        for (i, j) in sorted(self._terms, key=lambda key: (key[1], key[0])):
            yield i, j, self._terms[(i, j)]

    def _coerce(self, other):
        if isinstance(other, int):
            return type(self).const(other)
        if type(other) is type(self):
            return other
        raise TypeError(f"cannot mix {type(self).__name__} with {type(other).__name__}")

    def __add__(self, other):
        return type(self)(_merge(self._terms, self._coerce(other)._terms))

    __radd__ = __add__

    def __sub__(self, other):
        return type(self)(_merge(self._terms, self._coerce(other)._terms, -1))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return type(self)({key: -c for key, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return type(self).zero()
            return type(self)({key: other * c for key, c in self._terms.items()})
        return type(self)(_product(self._terms, self._coerce(other)._terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = type(self).one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def to_text(self) -> str:
        """Canonical text: one `coeff * sym^i * y^j` per line, sorted."""
        if not self._terms:
            return "0"
        sym = self._first_symbol
        return "\n".join(f"{c} * {sym}^{i} * y^{j}" for i, j, c in self.terms())

    @classmethod
    def parse_text(cls, text: str):
        text = text.strip()
        if text == "0":
            return cls.zero()
        items = []
        for line in text.splitlines():
            coeff_part, x_part, y_part = (piece.strip() for piece in line.split("*"))
            items.append((int(x_part.split("^")[1]), int(y_part.split("^")[1]),
                          int(coeff_part)))
        return cls.from_terms(items)

    def triples(self) -> list[list]:
        """Structured form: [first_exp, y_deg, "coeff"] triples, canonical order."""
        return [[i, j, str(c)] for i, j, c in self.terms()]

    @classmethod
    def from_triples(cls, triples: Iterable[Sequence]):
        return cls.from_terms((int(i), int(j), int(c)) for i, j, c in triples)

    def content_hash(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()

    def __repr__(self):
        return f"{type(self).__name__}({self.to_text()!r})"


class XYPoly(_SparsePoly):
    """Element of Z[x, y]; exponents of both variables are nonnegative."""

    __slots__ = ()
    _first_symbol = "x"
    _first_nonneg = True

    @classmethod
    def x(cls) -> "XYPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "XYPoly":
        return cls({(0, 1): 1})

    def deg_y(self) -> int:
        return max((j for (_, j) in self._terms), default=0)

    def deg_x(self) -> int:
        return max((i for (i, _) in self._terms), default=0)

    def y_slices(self) -> dict[int, "XYPoly"]:
        """y_deg -> coefficient polynomial in x."""
        out: dict[int, dict] = {}
        for (i, j), c in self._terms.items():
            out.setdefault(j, {})[(i, 0)] = c
        return {j: XYPoly(t) for j, t in out.items()}

    def substitute_y(self, value) -> "XYPoly":
        """Exact substitution y -> value (an XYPoly or int), Horner in y."""
        if isinstance(value, int):
            value = XYPoly.const(value)
        slices = self.y_slices()
        if not slices:
            return XYPoly.zero()
        acc = XYPoly.zero()
        for j in range(max(slices), -1, -1):
            acc = acc * value + slices.get(j, XYPoly.zero())
        return acc

    def diff_y(self) -> "XYPoly":
        return XYPoly({(i, j - 1): c * j for (i, j), c in self._terms.items() if j})

    def to_sy(self) -> "SYPoly":
        """Substitute x -> s + 1/s, exactly."""
        x_image = SYPoly({(1, 0): 1, (-1, 0): 1})
        slices: dict[int, dict] = {}
        for (i, j), c in self._terms.items():
            slices.setdefault(i, {})[(0, j)] = c
        acc = SYPoly.zero()
        for i in range(max(slices, default=0), -1, -1):
            acc = acc * x_image + SYPoly(slices.get(i, {}))
        return acc

    def eval_fraction(self, x: Fraction, y: Fraction) -> Fraction:
        """Exact rational evaluation (the oracle for interval evaluation)."""
        total = Fraction(0)
        for i, j, c in self.terms():
            total += c * x**i * y**j
        return total


class SYPoly(_SparsePoly):
    """Element of Z[s, 1/s, y]; the s-exponent may be negative."""

    __slots__ = ()
    _first_symbol = "s"
    _first_nonneg = False

    @classmethod
    def s(cls, exp: int = 1) -> "SYPoly":
        return cls({(exp, 0): 1})

    @classmethod
    def y(cls) -> "SYPoly":
        return cls({(0, 1): 1})

    def invert_s(self) -> "SYPoly":
        return SYPoly({(-i, j): c for (i, j), c in self._terms.items()})

    def is_symmetric(self) -> bool:
        return self._terms == self.invert_s()._terms

    def eval_fraction(self, s: Fraction, y: Fraction) -> Fraction:
        total = Fraction(0)
        for i, j, c in self.terms():
            total += c * s**i * y**j
        return total


def symmetric_rewrite(p: SYPoly) -> XYPoly:
    """Rewrite an s <-> 1/s symmetric Laurent polynomial as f(x, y), x = s + 1/s.

    Uses the basis p_0 = 2, p_1 = x, p_k = x*p_{k-1} - p_{k-2} representing
    s^k + s^-k; the defining identity f(s + 1/s, y) = p is re-verified after
    the rewrite as insurance against exponent bookkeeping mistakes.
    """
    if not p.is_symmetric():
        raise NotSymmetric("polynomial is not invariant under s -> 1/s")
    by_y: dict[int, dict[int, int]] = {}
    max_k = 0
    for i, j, c in p.terms():
        by_y.setdefault(j, {})[i] = c
        max_k = max(max_k, abs(i))
    # p_k(x) for k = 0..max_k
    basis = [XYPoly.const(2), XYPoly.x()]
    while len(basis) <= max_k:
        basis.append(XYPoly.x() * basis[-1] - basis[-2])
    result = XYPoly.zero()
    for j, coeffs in by_y.items():
        fj = XYPoly.zero()
        for k, c in coeffs.items():
            if k < 0:
                continue  # mirrored term is carried by its k > 0 partner
            fj = fj + (XYPoly.const(c) if k == 0 else basis[k] * c)
        result = result + fj * XYPoly({(0, j): 1})
    if result.to_sy() != p:
        raise AssertionError("symmetric rewrite failed back-substitution check")
    return result


def compose_univariate(outer: Sequence[int], inner: XYPoly) -> XYPoly:
    """Substitute inner for the variable of outer (ascending int coefficients)."""
    if len(outer) == 0:
        raise ValueError("outer polynomial must have degree >= 0")
    acc = XYPoly.const(outer[-1])
    for c in reversed(outer[:-1]):
        acc = acc * inner + c
    return acc


def eval_interval(p: XYPoly, x: DyadicInterval, y: DyadicInterval,
                  precision: int | None = None) -> DyadicInterval:
    """Interval enclosing {p(u, v) : u in x, v in y}, Horner in y then x.

    Dyadics are closed under +/-/*, so with precision=None the only width in
    the result comes from the input intervals; a precision rounds outward
    after every step to cap mantissa growth.
    """
    slices: dict[int, dict[int, int]] = {}
    for i, j, c in p.terms():
        slices.setdefault(i, {})[j] = c
    if not slices:
        return DyadicInterval.point(0)

    def rnd(iv: DyadicInterval) -> DyadicInterval:
        return iv if precision is None else iv.round_outward(precision)

    def horner_y(coeffs: dict[int, int]) -> DyadicInterval:
        acc = DyadicInterval.point(0)
        for j in range(max(coeffs), -1, -1):
            acc = rnd(acc * y + coeffs.get(j, 0))
        return acc

    acc = DyadicInterval.point(0)
    for i in range(max(slices), -1, -1):
        acc = rnd(acc * x)
        if i in slices:
            acc = rnd(acc + horner_y(slices[i]))
    return acc


def leading_y_term(p: XYPoly) -> tuple[int, XYPoly]:
    """Highest y-degree and its coefficient polynomial in x."""
    if not p:
        raise ZeroPolynomial("zero polynomial has no leading term")
    j_max = p.deg_y()
    return j_max, p.y_slices()[j_max]


class PolyMatrix:
    """2x2 matrix over Z[s, 1/s, y]."""

    __slots__ = ("e11", "e12", "e21", "e22")

    def __init__(self, e11: SYPoly, e12: SYPoly, e21: SYPoly, e22: SYPoly):
        self.e11, self.e12, self.e21, self.e22 = e11, e12, e21, e22

    @classmethod
    def identity(cls) -> "PolyMatrix":
        return cls(SYPoly.one(), SYPoly.zero(), SYPoly.zero(), SYPoly.one())

    def __matmul__(self, o: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(self.e11 * o.e11 + self.e12 * o.e21,
                          self.e11 * o.e12 + self.e12 * o.e22,
                          self.e21 * o.e11 + self.e22 * o.e21,
                          self.e21 * o.e12 + self.e22 * o.e22)

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            return self @ other
        return PolyMatrix(self.e11 * other, self.e12 * other,
                          self.e21 * other, self.e22 * other)

    __rmul__ = __mul__

    def __add__(self, o: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(self.e11 + o.e11, self.e12 + o.e12,
                          self.e21 + o.e21, self.e22 + o.e22)

    def __sub__(self, o: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(self.e11 - o.e11, self.e12 - o.e12,
                          self.e21 - o.e21, self.e22 - o.e22)

    def det(self) -> SYPoly:
        return self.e11 * self.e22 - self.e12 * self.e21

    def trace(self) -> SYPoly:
        return self.e11 + self.e22

    def adjugate(self) -> "PolyMatrix":
        """The inverse, when det = 1."""
        return PolyMatrix(self.e22, -self.e12, -self.e21, self.e11)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.e11 == other.e11 and self.e12 == other.e12
                and self.e21 == other.e21 and self.e22 == other.e22)

    def __hash__(self):
        return hash((self.e11, self.e12, self.e21, self.e22))

    def __repr__(self):
        return (f"PolyMatrix([{self.e11.to_text()!r}, {self.e12.to_text()!r}], "
                f"[{self.e21.to_text()!r}, {self.e22.to_text()!r}])")
