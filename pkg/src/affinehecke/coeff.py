"""
Exact coefficient arithmetic.

Two coefficient rings are used throughout the package:

* ``Rat`` -- arbitrary-precision rationals (``gmpy2.mpq``; compares and hashes
  equal to :class:`fractions.Fraction`, which is accepted everywhere as input).
* :class:`RatFunc` -- the field Q(v) of rational functions in one indeterminate
  ``v``.  Values are kept in canonical form (reduced fraction, monic
  denominator), so structural equality is mathematical equality.

Polynomial arithmetic under :class:`RatFunc` is delegated to FLINT's
``fmpq_poly``; normalization and the public surface live here.

>>> v = RatFunc.v()
>>> (v + 1) / 2 + (v - 1) / 2
RatFunc('v')
>>> str(((v + 1) / 2) ** 2 * (v - 1))
'(v^3+v^2-v-1)/4'
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import flint
import gmpy2

from .errors import DivisionByZero, InvalidParameter, PoleAtPoint

__all__ = [
    "Rat", "to_rat", "RatFunc", "CoeffMode", "SYMBOLIC",
    "rf_add", "rf_mul", "rf_inv", "rf_eval",
    "parse_rat", "format_rat", "parse_mode",
]

Rat = gmpy2.mpq
_MPQ = type(gmpy2.mpq())
_RAT_TYPES = (int, Fraction, _MPQ, type(gmpy2.mpz()))


def is_rat(x) -> bool:
    return isinstance(x, _RAT_TYPES) and not isinstance(x, bool)


def to_rat(x) -> Rat:
    """Coerce an int, Fraction, mpq or rational literal string to ``Rat``."""
    if isinstance(x, str):
        return parse_rat(x)
    if not is_rat(x):
        raise TypeError(f"cannot interpret {x!r} as a rational")
    return gmpy2.mpq(x)


_ZERO = flint.fmpq_poly([])
_ONE = flint.fmpq_poly([1])


def _to_fmpq(x) -> flint.fmpq:
    if isinstance(x, int):
        return flint.fmpq(x)
    return flint.fmpq(int(x.numerator), int(x.denominator))


def _from_fmpq(x: flint.fmpq) -> Rat:
    return gmpy2.mpq(int(x.p), int(x.q))


class RatFunc:
    """An element of Q(v), stored as ``num/den`` with ``den`` monic and coprime to ``num``."""

    # den is the shared _ONE object whenever the value is a polynomial
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        self.num, self.den = _normalize(num, den)
        self._hash = None

    @classmethod
    def v(cls) -> "RatFunc":
        return _raw(flint.fmpq_poly([0, 1]), _ONE)

    @classmethod
    def const(cls, c) -> "RatFunc":
        return _raw(_as_poly(c), _ONE)

    @classmethod
    def from_coeffs(cls, num, den=(1,)) -> "RatFunc":
        """Build from ascending coefficient lists of rationals."""
        return cls(flint.fmpq_poly([_to_fmpq(c) for c in num]),
                   flint.fmpq_poly([_to_fmpq(c) for c in den]))

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den is _ONE

    def is_constant(self) -> bool:
        return self.den is _ONE and self.num.degree() <= 0

    def constant_value(self) -> Rat:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if self.num.is_zero():
            return gmpy2.mpq(0)
        return _from_fmpq(self.num.coeffs()[0])

    def is_negative(self) -> bool:
        """True when the leading coefficient of the numerator is negative."""
        return not self.num.is_zero() and self.num.leading_coefficient() < 0

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if type(other) is not RatFunc:
            other = _coerce(other)
            if other is NotImplemented:
                return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if b is _ONE and d is _ONE:
            return _raw(a + c, _ONE)
        if c.is_zero():
            return self
        if a.is_zero():
            return other
        if b == d:
            num = a + c
            g = num.gcd(b)
            if g.is_one():
                return _raw(num, b)
            return _make(num / g, b / g)
        return _make_reduce(a * d + c * b, b * d)

    __radd__ = __add__

    def __neg__(self):
        return _raw(-self.num, self.den)

    def __sub__(self, other):
        if type(other) is not RatFunc:
            other = _coerce(other)
            if other is NotImplemented:
                return other
        if self.den is _ONE and other.den is _ONE:
            return _raw(self.num - other.num, _ONE)
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if type(other) is not RatFunc:
            other = _coerce(other)
            if other is NotImplemented:
                return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if b is _ONE and d is _ONE:
            return _raw(a * c, _ONE)
        if a.is_zero() or c.is_zero():
            return _RF_ZERO
        if d is not _ONE:
            g1 = a.gcd(d)
            if not g1.is_one():
                a, d = a / g1, d / g1
        if b is not _ONE:
            g2 = c.gcd(b)
            if not g2.is_one():
                c, b = c / g2, b / g2
        return _make(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise DivisionByZero("inverse of the zero rational function")
        lead = self.num.leading_coefficient()
        return _make(self.den / lead, self.num / lead)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return _make(self.num ** k, self.den ** k)

    # -- evaluation -------------------------------------------------------

    def __call__(self, at) -> Rat:
        x = _to_fmpq(at)
        d = self.den(x)
        if d == 0:
            raise PoleAtPoint(f"{self} has a pole at v = {format_rat(at)}")
        return _from_fmpq(self.num(x) / d)

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if type(other) is RatFunc:
            return self.num == other.num and self.den == other.den
        if is_rat(other):
            return self.den is _ONE and self.num == _as_poly(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((str(self.num), str(self.den)))
        return self._hash

    def __reduce__(self):
        return (RatFunc.from_coeffs, (list(map(_from_fmpq, self.num.coeffs())),
                                      list(map(_from_fmpq, self.den.coeffs()))))

    # -- rendering --------------------------------------------------------

    def integer_parts(self) -> tuple[list[int], list[int]]:
        """Ascending integer coefficients (P, Q) with self = P/Q, content(P, Q) = 1, lead(Q) > 0."""
        pn, cn = self.num.numer(), int(self.num.denom())
        pd, cd = self.den.numer(), int(self.den.denom())
        p = [int(c) * cd for c in pn.coeffs()]
        q = [int(c) * cn for c in pd.coeffs()]
        g = 0
        for c in p + q:
            g = gmpy2.gcd(g, c)
        g = int(g)
        if g > 1:
            p = [c // g for c in p]
            q = [c // g for c in q]
        return p, q

    def is_compound(self) -> bool:
        """True when the rendering has a top-level ``+``/``-`` (needs parens as a factor)."""
        p, q = self.integer_parts()
        return q == [1] and sum(1 for c in p if c) > 1

    def __str__(self):
        p, q = self.integer_parts()
        if not p:
            return "0"
        ptxt = _poly_str(p)
        if q == [1]:
            return ptxt
        if sum(1 for c in p if c) > 1:
            ptxt = f"({ptxt})"
        qtxt = _poly_str(q)
        if not _is_bare(q):
            qtxt = f"({qtxt})"
        return f"{ptxt}/{qtxt}"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


def _raw(num: flint.fmpq_poly, den: flint.fmpq_poly) -> RatFunc:
    # canonical input only; den must be the _ONE singleton for polynomials
    obj = object.__new__(RatFunc)
    obj.num = num
    obj.den = den
    obj._hash = None
    return obj


def _make(num: flint.fmpq_poly, den: flint.fmpq_poly) -> RatFunc:
    # reduced and monic, but den may be an unshared 1
    if den.degree() == 0:
        return _raw(num, _ONE)
    return _raw(num, den)


def _make_reduce(num, den) -> RatFunc:
    n, d = _normalize(num, den)
    return _raw(n, d)


def _as_poly(x) -> flint.fmpq_poly:
    if isinstance(x, flint.fmpq_poly):
        return x
    if is_rat(x):
        return flint.fmpq_poly([_to_fmpq(x)]) if x else _ZERO
    raise TypeError(f"cannot interpret {x!r} as a polynomial")


def _normalize(num: flint.fmpq_poly, den: flint.fmpq_poly):
    if num.is_zero():
        return _ZERO, _ONE
    g = num.gcd(den)
    if not g.is_one():
        num, den = num / g, den / g
    lead = den.leading_coefficient()
    if lead != 1:
        num, den = num / lead, den / lead
    if den.degree() == 0:
        den = _ONE
    return num, den


def _coerce(x):
    if type(x) is RatFunc:
        return x
    if is_rat(x):
        return _raw(_as_poly(x), _ONE)
    return NotImplemented


def _is_bare(coeffs: list[int]) -> bool:
    # a constant or a unit monomial v^k renders without parens as a divisor
    nz = [i for i, c in enumerate(coeffs) if c]
    if len(nz) != 1:
        return False
    return nz[0] == 0 or coeffs[nz[0]] == 1


def _poly_str(coeffs: list[int]) -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = "v" if k == 1 else f"v^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += sign + body
    return out


_RF_ZERO = _raw(_ZERO, _ONE)


# -- functional surface -------------------------------------------------------

def rf_add(a: RatFunc, b: RatFunc) -> RatFunc:
    return a + b


def rf_mul(a: RatFunc, b: RatFunc) -> RatFunc:
    return a * b


def rf_inv(a: RatFunc) -> RatFunc:
    return a.inverse()


def rf_eval(a: RatFunc, at) -> Rat:
    return a(at)


# -- rationals ----------------------------------------------------------------

def parse_rat(text: str) -> Rat:
    """Parse ``"a"`` or ``"a/b"``; raises ValueError on malformed input."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    try:
        return gmpy2.mpq(Fraction(text))
    except ZeroDivisionError as exc:
        raise ValueError(f"zero denominator in {text!r}") from exc


def format_rat(x) -> str:
    x = gmpy2.mpq(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class CoeffMode:
    """Parameter mode: ``value is None`` means symbolic (the parameter is ``v``)."""
    value: Rat | None = None

    @property
    def symbolic(self) -> bool:
        return self.value is None

    @classmethod
    def numeric(cls, z) -> "CoeffMode":
        z = to_rat(z)
        if z == 0:
            raise InvalidParameter("the Hecke parameter must be nonzero")
        return cls(z)

    def __str__(self):
        return "v" if self.value is None else format_rat(self.value)


SYMBOLIC = CoeffMode()


def parse_mode(text: str) -> CoeffMode:
    """``"v"`` -> symbolic, otherwise a nonzero rational literal."""
    text = text.strip()
    if text == "v":
        return SYMBOLIC
    try:
        z = parse_rat(text)
    except ValueError as exc:
        raise InvalidParameter(f"bad parameter {text!r}: expected 'v' or a rational") from exc
    return CoeffMode.numeric(z)
