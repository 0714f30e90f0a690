"""Exact scalars: Laurent polynomials in v = q^(1/4) over Q and their fraction field.

Integer powers of q are stored as v-exponents divisible by 4, so ``q`` is
``LaurentPoly.monomial(4)``.  Dense univariate arithmetic is delegated to
``flint.fmpq_poly``; this module only tracks the v-valuation and the
canonical form of fractions.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator, Union

import flint

__all__ = [
    "LaurentPoly",
    "RatFunc",
    "DivisionByZero",
    "ZeroArgument",
    "Scalar",
    "Q",
    "QINV",
    "ONE",
    "ZERO",
    "as_coeff",
    "lp_add",
    "lp_mul",
    "lp_neg",
    "rf_div",
    "lp_eval_float",
    "parse_coeff",
    "qint",
    "qfact",
    "qbinom",
]


class DivisionByZero(ZeroDivisionError):
    pass


class ZeroArgument(ValueError):
    pass


_ZP = flint.fmpq_poly([])
_ONEP = flint.fmpq_poly([1])


def _valuation(p: flint.fmpq_poly) -> int:
    if p[0] != 0:
        return 0
    for i, c in enumerate(p.coeffs()):
        if c != 0:
            return i
    raise ValueError("zero polynomial has no valuation")


class LaurentPoly:
    """Laurent polynomial in v with rational coefficients.

    Stored as ``v^low * poly`` where ``poly`` has a nonzero constant term,
    or ``poly == 0`` for the zero element (then ``low == 0``).
    """

    __slots__ = ("low", "poly", "_hash")

    def __init__(self, low: int = 0, poly: flint.fmpq_poly | None = None, _norm: bool = True):
        if poly is None:
            poly = _ZP
        if _norm:
            if poly.is_zero():
                low = 0
            elif poly[0] == 0:
                s = _valuation(poly)
                poly = poly.right_shift(s)
                low += s
        self.low = low
        self.poly = poly
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def from_dict(cls, terms: dict[int, object]) -> "LaurentPoly":
        terms = {e: c for e, c in terms.items() if c != 0}
        if not terms:
            return ZERO
        lo = min(terms)
        hi = max(terms)
        cs = [0] * (hi - lo + 1)
        for e, c in terms.items():
            cs[e - lo] = _to_fmpq(c)
        return cls(lo, flint.fmpq_poly(cs), _norm=False)

    @classmethod
    def monomial(cls, vexp: int, c=1) -> "LaurentPoly":
        if c == 0:
            return ZERO
        return cls(vexp, flint.fmpq_poly([_to_fmpq(c)]), _norm=False)

    @classmethod
    def qpow(cls, k: int, c=1) -> "LaurentPoly":
        """c * q^k for integer k."""
        return cls.monomial(4 * k, c)

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls.monomial(0, c)

    # inspection -------------------------------------------------------
    def terms(self) -> dict[int, Fraction]:
        """Map v-exponent -> nonzero Fraction."""
        out = {}
        for i, c in enumerate(self.poly.coeffs()):
            if c != 0:
                out[self.low + i] = Fraction(int(c.p), int(c.q))
        return out

    def items_desc(self) -> Iterator[tuple[int, Fraction]]:
        t = self.terms()
        for e in sorted(t, reverse=True):
            yield e, t[e]

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __bool__(self) -> bool:
        return not self.poly.is_zero()

    def is_one(self) -> bool:
        return self.low == 0 and self.poly.is_one()

    def is_monomial(self) -> bool:
        return self.poly.degree() == 0

    def high(self) -> int:
        return self.low + self.poly.degree()

    def min_exp(self) -> int:
        return self.low

    def max_exp(self) -> int:
        return self.low + self.poly.degree()

    @property
    def num(self) -> "LaurentPoly":
        return self

    @property
    def den(self) -> "LaurentPoly":
        return ONE

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, LaurentPoly):
            if other.poly.is_zero():
                return self
            if self.poly.is_zero():
                return other
            a, b = self.low, other.low
            if a == b:
                return LaurentPoly(a, self.poly + other.poly)
            if a < b:
                return LaurentPoly(a, self.poly + other.poly.left_shift(b - a))
            return LaurentPoly(b, self.poly.left_shift(a - b) + other.poly)
        if isinstance(other, RatFunc):
            return RatFunc.lift(self) + other
        if isinstance(other, (int, Fraction)):
            return self + LaurentPoly.const(other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        if self.poly.is_zero():
            return self
        return LaurentPoly(self.low, -self.poly, _norm=False)

    def __sub__(self, other):
        if isinstance(other, (LaurentPoly, RatFunc, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            if self.poly.is_zero() or other.poly.is_zero():
                return ZERO
            return LaurentPoly(self.low + other.low, self.poly * other.poly, _norm=False)
        if isinstance(other, RatFunc):
            return RatFunc.lift(self) * other
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            return LaurentPoly(self.low, self.poly * _to_fmpq(other), _norm=False)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if self.is_monomial():
                c = self.poly[0]
                return LaurentPoly(-self.low * (-n), flint.fmpq_poly([1 / c ** (-n)]), _norm=False)
            return RatFunc.lift(self) ** n
        r = ONE
        b = self
        while n:
            if n & 1:
                r = r * b
            n >>= 1
            if n:
                b = b * b
        return r

    def __truediv__(self, other):
        return rf_div(RatFunc.lift(self), as_coeff(other))

    def __rtruediv__(self, other):
        return rf_div(as_coeff(other), RatFunc.lift(self))

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """Quotient if ``other`` divides ``self`` in the Laurent ring, else None."""
        if other.poly.is_zero():
            raise DivisionByZero("division by zero Laurent polynomial")
        qt, r = divmod(self.poly, other.poly)
        if not r.is_zero():
            return None
        return LaurentPoly(self.low - other.low, qt)

    def subs_q_inv(self) -> "LaurentPoly":
        """Apply v -> v^{-1} (hence q -> q^{-1})."""
        if self.poly.is_zero():
            return self
        d = self.poly.degree()
        cs = list(reversed(self.poly.coeffs()))
        return LaurentPoly(-(self.low + d), flint.fmpq_poly(cs), _norm=False)

    def simplify(self) -> "LaurentPoly":
        return self

    # comparisons ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.low == other.low and self.poly == other.poly
        if isinstance(other, RatFunc):
            return other.den.is_one() and other.num == self
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.low, tuple(self.poly.coeffs())))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return format_laurent(self)


Scalar = Union[LaurentPoly, "RatFunc"]


def _to_fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    if isinstance(c, int):
        return flint.fmpq(c)
    raise TypeError(f"not a rational: {c!r}")


class RatFunc:
    """Quotient num/den of Laurent polynomials in canonical form.

    ``den`` is an honest polynomial in v (valuation 0) that is monic and
    coprime to ``num``; all v-powers are folded into ``num``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None, _canon: bool = True):
        if den is None:
            den = ONE
        if _canon:
            num, den = _canon_frac(num, den)
        self.num = num
        self.den = den

    @classmethod
    def lift(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, LaurentPoly):
            return cls(x, ONE, _canon=False)
        return cls(LaurentPoly.const(x), ONE, _canon=False)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def simplify(self) -> Scalar:
        return self.num if self.den.is_one() else self

    def __add__(self, other):
        if not isinstance(other, _SCALAR_TYPES):
            return NotImplemented
        other = as_coeff(other)
        if isinstance(other, LaurentPoly):
            if self.den.is_one():
                return RatFunc(self.num + other, ONE, _canon=False)
            return RatFunc(self.num + other * self.den, self.den, _canon=False)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den, _canon=not self.den.is_one())
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _canon=False)

    def __sub__(self, other):
        if not isinstance(other, _SCALAR_TYPES):
            return NotImplemented
        return self + (-as_coeff(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, _SCALAR_TYPES):
            return NotImplemented
        other = as_coeff(other)
        if isinstance(other, LaurentPoly):
            if self.den.is_one():
                return RatFunc(self.num * other, ONE, _canon=False)
            return RatFunc(self.num * other, self.den)
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, ONE, _canon=False)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return rf_div(self, as_coeff(other))

    def __rtruediv__(self, other):
        return rf_div(as_coeff(other), self)

    def __pow__(self, n: int):
        if n < 0:
            return rf_div(RatFunc.lift(ONE), self) ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _canon=False)

    def subs_q_inv(self) -> "RatFunc":
        return RatFunc(self.num.subs_q_inv(), self.den.subs_q_inv())

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, LaurentPoly):
            return self.den.is_one() and self.num == other
        if isinstance(other, (int, Fraction)):
            return self.den.is_one() and self.num == other
        return NotImplemented

    def __hash__(self):
        if self.den.is_one():
            return hash(self.num)
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den.is_one():
            return format_laurent(self.num)
        return f"({format_laurent(self.num)})/({format_laurent(self.den)})"


def _canon_frac(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    if num.is_zero():
        return ZERO, ONE
    low = num.low - den.low
    a, b = num.poly, den.poly
    if b.degree() > 0:
        g = a.gcd(b)
        if not g.is_one():
            a = a // g
            b = b // g
    lc = b.leading_coefficient()
    if lc != 1:
        a = a / lc
        b = b / lc
    return LaurentPoly(low, a, _norm=False), LaurentPoly(0, b, _norm=False)


_SCALAR_TYPES = (LaurentPoly, RatFunc, int, Fraction)


def as_coeff(x) -> Scalar:
    if isinstance(x, (LaurentPoly, RatFunc)):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot coerce {x!r} to a coefficient")


ZERO = LaurentPoly()
ONE = LaurentPoly(0, _ONEP, _norm=False)
Q = LaurentPoly.qpow(1)
QINV = LaurentPoly.qpow(-1)


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_neg(a: LaurentPoly) -> LaurentPoly:
    return -a


def rf_div(a: Scalar, b: Scalar) -> RatFunc:
    a = RatFunc.lift(a)
    b = RatFunc.lift(b)
    if b.is_zero():
        raise DivisionByZero("division by zero")
    return RatFunc(a.num * b.den, a.den * b.num)


def lp_eval_float(a: Scalar, x: float) -> float:
    """Evaluate at v = x (so q = x**4).  Debug aid only."""
    if x == 0:
        raise ZeroArgument("evaluation point must be nonzero")
    if isinstance(a, RatFunc):
        return lp_eval_float(a.num, x) / lp_eval_float(a.den, x)
    return float(sum(float(c) * x ** e for e, c in a.terms().items()))


# q-numbers ----------------------------------------------------------------

_qint_cache: dict[int, LaurentPoly] = {}


def qint(n: int) -> LaurentPoly:
    """[n] = (q^n - q^-n)/(q - q^-1)."""
    r = _qint_cache.get(n)
    if r is None:
        if n == 0:
            r = ZERO
        elif n > 0:
            r = LaurentPoly.from_dict({4 * (n - 1 - 2 * j): 1 for j in range(n)})
        else:
            r = -qint(-n)
        _qint_cache[n] = r
    return r


def qfact(n: int) -> LaurentPoly:
    r = ONE
    for j in range(1, n + 1):
        r = r * qint(j)
    return r


def qbinom(n: int, k: int) -> LaurentPoly:
    """Symmetric Gaussian binomial [n choose k] (Laurent in q)."""
    if k < 0 or k > n:
        return ZERO
    r = rf_div(qfact(n), qfact(k) * qfact(n - k))
    assert r.den.is_one()
    return r.num


# text format --------------------------------------------------------------

def _fmt_exp(vexp: int) -> str:
    f = Fraction(vexp, 4)
    if f.denominator == 1:
        k = f.numerator
        return "q" if k == 1 else f"q^{k}"
    return f"q^({f.numerator}/{f.denominator})"


def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_laurent(a: LaurentPoly) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for e, c in a.items_desc():
        sign = "-" if c < 0 else "+"
        m = abs(c)
        if e == 0:
            body = _fmt_rat(m)
        elif m == 1:
            body = _fmt_exp(e)
        else:
            body = f"{_fmt_rat(m)}*{_fmt_exp(e)}"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(q)|(\^)|(\()|(\))|([-+*/]))")


def parse_coeff(text: str) -> Scalar:
    """Parse the printed coefficient format (sums of c*q^k, optional quotient)."""
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad coefficient text at {pos}: {text!r}")
        toks.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
    i = 0

    def peek():
        return toks[i] if i < len(toks) else None

    def take():
        nonlocal i
        i += 1
        return toks[i - 1]

    def expr():
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        acc = term() * sign
        while peek() in ("+", "-"):
            s = take()
            t = term()
            acc = acc + t if s == "+" else acc - t
        return acc

    def exponent():
        if peek() == "(":
            take()
            neg = False
            if peek() == "-":
                take()
                neg = True
            f = Fraction(take())
            if take() != ")":
                raise ValueError("expected )")
            return -f if neg else f
        neg = False
        if peek() == "-":
            take()
            neg = True
        f = Fraction(take())
        return -f if neg else f

    def factor():
        t = peek()
        if t == "(":
            take()
            v = expr()
            if take() != ")":
                raise ValueError("expected )")
            return v
        if t == "q":
            take()
            k = Fraction(1)
            if peek() == "^":
                take()
                k = exponent()
            ve = k * 4
            if ve.denominator != 1:
                raise ValueError("q exponent must be a multiple of 1/4")
            return LaurentPoly.monomial(int(ve))
        if t is not None and t[0].isdigit():
            take()
            return LaurentPoly.const(Fraction(t))
        raise ValueError(f"unexpected token {t!r}")

    def term():
        acc = factor()
        while peek() in ("*", "/"):
            op = take()
            f = factor()
            acc = acc * f if op == "*" else rf_div(acc, f)
        return acc

    v = expr()
    if i != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return v.simplify() if isinstance(v, RatFunc) else v
