"""The commutative coefficient ring R[s1, s2, s3, s4, s1234] over Q(v).

A ``CentralPoly`` is a map from dense exponent vectors (one slot per
central generator) to nonzero scalars.  The five-punctured sphere has the
central loops s1..s4 of degree 1 and s1234 of degree 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .coeff import ONE, ZERO, Scalar, as_coeff, format_laurent, parse_coeff, RatFunc, LaurentPoly

__all__ = [
    "CentralGen",
    "CENTRAL_GENS",
    "CentralPoly",
    "UniverseMismatch",
    "ZeroPolynomial",
    "cp_add",
    "cp_mul",
    "cp_degree",
    "format_scalar",
    "central_series",
]


class UniverseMismatch(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


@dataclass(frozen=True)
class CentralGen:
    id: int
    name: str
    degree: int


CENTRAL_GENS: tuple[CentralGen, ...] = (
    CentralGen(0, "s1", 1),
    CentralGen(1, "s2", 1),
    CentralGen(2, "s3", 1),
    CentralGen(3, "s4", 1),
    CentralGen(4, "s1234", 4),
)
NVARS = len(CENTRAL_GENS)
ZERO_EXP = (0,) * NVARS
_DEGS = tuple(g.degree for g in CENTRAL_GENS)


def exp_degree(e: tuple) -> int:
    return sum(a * d for a, d in zip(e, _DEGS))


def exp_add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def format_scalar(c: Scalar) -> str:
    """Scalar text: Laurent polynomials as sums, fractions as (num)/(den)."""
    if isinstance(c, RatFunc):
        c = c.simplify()
    if isinstance(c, LaurentPoly):
        return format_laurent(c)
    return f"({format_laurent(c.num)})/({format_laurent(c.den)})"


def _grlex_key(e: tuple) -> tuple:
    # graded lexicographic with s1 > s2 > ... > s1234, printed largest first
    return (exp_degree(e), e)


def format_monomial(e: tuple, names: Iterable[str] | None = None) -> str:
    names = list(names) if names is not None else [g.name for g in CENTRAL_GENS]
    parts = []
    for k, name in zip(e, names):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


class CentralPoly:
    """Polynomial in the central loops with Q(v) coefficients (immutable)."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple, Scalar] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != NVARS:
                    raise UniverseMismatch(f"exponent vector {e} has {len(e)} slots, expected {NVARS}")
                c = as_coeff(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "CentralPoly":
        return cls({ZERO_EXP: c})

    @classmethod
    def var(cls, name: str) -> "CentralPoly":
        for g in CENTRAL_GENS:
            if g.name == name:
                e = [0] * NVARS
                e[g.id] = 1
                return cls({tuple(e): ONE})
        raise KeyError(name)

    @classmethod
    def _raw(cls, terms: dict) -> "CentralPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    # inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_scalar(self) -> bool:
        return all(e == ZERO_EXP for e in self.terms)

    def scalar(self) -> Scalar:
        if not self.is_scalar():
            raise ValueError("not a scalar")
        return self.terms.get(ZERO_EXP, ZERO)

    def degree(self) -> int:
        return cp_degree(self)

    def sorted_items(self) -> list[tuple[tuple, Scalar]]:
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def __iter__(self) -> Iterator[tuple[tuple, Scalar]]:
        return iter(self.sorted_items())

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return CentralPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return CentralPoly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = exp_add(e1, e2)
                v = c1 * c2
                if e in out:
                    v = out[e] + v
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return CentralPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a central polynomial")
        r = CentralPoly.const(1)
        for _ in range(n):
            r = r * self
        return r

    def __eq__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def subs_q_inv(self) -> "CentralPoly":
        return CentralPoly._raw({e: c.subs_q_inv() for e, c in self.terms.items()})

    # text and JSON ----------------------------------------------------
    def __str__(self) -> str:
        return format_central(self)

    def __repr__(self) -> str:
        return f"CentralPoly({format_central(self)!r})"

    def to_json(self) -> list:
        return [{"exps": list(e), "coeff": format_scalar(c)} for e, c in self.sorted_items()]

    @classmethod
    def from_json(cls, data: list) -> "CentralPoly":
        return cls({tuple(d["exps"]): parse_coeff(d["coeff"]) for d in data})


def _lift(x):
    if isinstance(x, CentralPoly):
        return x
    if isinstance(x, (int, Fraction, LaurentPoly, RatFunc)):
        return CentralPoly.const(x)
    return NotImplemented


def _coeff_text(c: Scalar) -> tuple[str, str]:
    """Return (sign, body) where body needs no leading sign."""
    s = format_scalar(c)
    if isinstance(c, RatFunc) and not c.den.is_one():
        return "+", s
    c = c.simplify() if isinstance(c, RatFunc) else c
    if c.is_monomial():
        if s.startswith("-"):
            return "-", s[1:]
        return "+", s
    return "+", f"({s})"


def format_central(p: CentralPoly, names: Iterable[str] | None = None) -> str:
    """Print as e.g. ``(q^2 + 1)*s1*s3^2*s1234 - s2``, graded-lex order."""
    if not p.terms:
        return "0"
    out = []
    for e, c in p.sorted_items():
        sign, body = _coeff_text(c)
        mono = format_monomial(e, names)
        if mono:
            if body == "1":
                text = mono
            else:
                text = f"{body}*{mono}"
        else:
            text = body
        out.append((sign, text))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, text in out[1:]:
        s += f" {sign} {text}"
    return s


def cp_add(a: CentralPoly, b: CentralPoly) -> CentralPoly:
    return a + b


def cp_mul(a: CentralPoly, b: CentralPoly) -> CentralPoly:
    return a * b


def cp_degree(a: CentralPoly) -> int:
    if not a.terms:
        raise ZeroPolynomial("degree of the zero polynomial")
    return max(exp_degree(e) for e in a.terms)


def central_monomials(degree: int) -> list[tuple]:
    """All exponent vectors of the given weighted degree."""
    out = []

    def rec(i, left, acc):
        if i == NVARS:
            if left == 0:
                out.append(tuple(acc))
            return
        d = _DEGS[i]
        for k in range(left // d + 1):
            rec(i + 1, left - k * d, acc + [k])

    rec(0, degree, [])
    return out


def central_series(N: int) -> list[int]:
    """Graded dimensions of the central ring, degrees 0..N, by enumeration."""
    return [len(central_monomials(d)) for d in range(N + 1)]
