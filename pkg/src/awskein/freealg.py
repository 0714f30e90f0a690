"""Free algebra over the central ring on the extended loop alphabet.

Words are tuples of generator indices.  An ``NCPoly`` is stored flat, as a
map ``(word, central exponent vector) -> scalar``; ``word_terms`` regroups it
into ``word -> CentralPoly`` when the structured view is wanted.

The text grammar is

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := atom ("^" signed-int)?
    atom   := rational | "q" | genname | "(" expr ")"

with division allowed only by scalars, and ``q^(a/b)`` accepted for
quarter powers of q.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .centralring import (
    CENTRAL_GENS,
    NVARS,
    ZERO_EXP,
    CentralPoly,
    exp_add,
    exp_degree,
    format_monomial,
    format_scalar,
)
from .coeff import ONE, Q, QINV, LaurentPoly, RatFunc, Scalar, as_coeff, parse_coeff, rf_div

__all__ = [
    "Generator",
    "GeneratorTable",
    "NCPoly",
    "ExprSyntaxError",
    "UnknownGenerator",
    "TableMismatch",
    "build_table",
    "SIGMA05",
    "nc_mul",
    "q_commutator",
    "parse_expr",
    "format_ncpoly",
]

GROUP_NAMES = ("I", "II", "III", "IV", "V")


class ExprSyntaxError(SyntaxError):
    def __init__(self, msg: str, position: int, text: str = ""):
        super().__init__(f"{msg} at position {position}")
        self.position = position
        self.text = text


class UnknownGenerator(ValueError):
    def __init__(self, name: str):
        super().__init__(f"unknown generator {name!r}")
        self.name = name


class TableMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    """One letter of the extended alphabet.

    ``kind`` is ``simple`` (a loop around ``points``), ``double`` (a loop
    around ``points`` passing outside ``double_points``) or ``pair`` (two
    disjoint simple loops, ``points`` and ``other``).
    """

    name: str
    group: int  # 1..5
    kind: str
    points: tuple[int, ...]
    double_points: tuple[int, ...] = ()
    other: tuple[int, ...] = ()

    @property
    def degree(self) -> int:
        return len(self.points) + len(self.other) + 2 * len(self.double_points)

    @property
    def group_name(self) -> str:
        return GROUP_NAMES[self.group - 1]


@dataclass
class GeneratorTable:
    entries: list[Generator]
    index: dict[str, int] = field(init=False)

    def __post_init__(self):
        self.index = {g.name: i for i, g in enumerate(self.entries)}
        self.degrees = tuple(g.degree for g in self.entries)
        self.groups = tuple(g.group for g in self.entries)
        self.names = tuple(g.name for g in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Generator:
        return self.entries[i]

    def id(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def word(self, names: Iterable[str]) -> tuple[int, ...]:
        return tuple(self.id(n) for n in names)

    def word_names(self, w: Iterable[int]) -> list[str]:
        return [self.names[i] for i in w]

    def word_degree(self, w: Iterable[int]) -> int:
        d = self.degrees
        return sum(d[i] for i in w)

    def simple_id(self, points: Iterable[int]) -> int:
        return self.id("S" + "".join(str(p) for p in sorted(points)))


def build_table() -> GeneratorTable:
    """The 20 extended generators of the five-punctured sphere, in global order."""
    g = []
    for pts in ((1, 2), (2, 3), (3, 4), (1, 4)):
        g.append(Generator("S" + "".join(map(str, pts)), 1, "simple", pts))
    for a, d, b in ((1, 2, 3), (2, 3, 4), (3, 4, 1), (4, 1, 2)):
        g.append(Generator(f"D{a}{d}{b}", 2, "double", (a, b), (d,)))
    g.append(Generator("P1234", 2, "pair", (1, 2), other=(3, 4)))
    g.append(Generator("P2314", 2, "pair", (2, 3), other=(1, 4)))
    for name, pts, dps in (
        ("T1234", (1, 4), (2, 3)),
        ("T2341", (2, 1), (3, 4)),
        ("T3142", (3, 2), (1, 4)),
        ("T4123", (4, 3), (1, 2)),
    ):
        g.append(Generator(name, 3, "double", pts, dps))
    for pts in ((1, 3), (2, 4)):
        g.append(Generator("S" + "".join(map(str, pts)), 4, "simple", pts))
    for pts in ((1, 2, 3), (2, 3, 4), (1, 3, 4), (1, 2, 4)):
        g.append(Generator("S" + "".join(map(str, pts)), 5, "simple", pts))
    return GeneratorTable(g)


SIGMA05 = build_table()
_CENTRAL_INDEX = {g.name.upper(): g.id for g in CENTRAL_GENS}


def _add_into(out: dict, key, c) -> None:
    v = out.get(key)
    if v is not None:
        c = v + c
    if c:
        out[key] = c
    else:
        out.pop(key, None)


class NCPoly:
    """Element of R<X>: finite sum of scalar * central monomial * word."""

    __slots__ = ("table", "terms")

    def __init__(self, terms: Mapping | None = None, table: GeneratorTable = SIGMA05):
        self.table = table
        clean: dict = {}
        if terms:
            for (w, e), c in terms.items():
                c = as_coeff(c)
                if c:
                    _add_into(clean, (tuple(w), tuple(e)), c)
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict, table: GeneratorTable = SIGMA05) -> "NCPoly":
        obj = cls.__new__(cls)
        obj.table = table
        obj.terms = terms
        return obj

    # construction -----------------------------------------------------
    @classmethod
    def one(cls, table: GeneratorTable = SIGMA05) -> "NCPoly":
        return cls._raw({((), ZERO_EXP): ONE}, table)

    @classmethod
    def scalar(cls, c, table: GeneratorTable = SIGMA05) -> "NCPoly":
        return cls({((), ZERO_EXP): c}, table)

    @classmethod
    def letter(cls, name: str, table: GeneratorTable = SIGMA05) -> "NCPoly":
        return cls._raw({((table.id(name),), ZERO_EXP): ONE}, table)

    @classmethod
    def word(cls, names: Iterable[str], table: GeneratorTable = SIGMA05) -> "NCPoly":
        return cls._raw({(table.word(names), ZERO_EXP): ONE}, table)

    @classmethod
    def central(cls, p: CentralPoly, table: GeneratorTable = SIGMA05) -> "NCPoly":
        return cls._raw({((), e): c for e, c in p.terms.items()}, table)

    @classmethod
    def from_word_terms(cls, wt: Mapping, table: GeneratorTable = SIGMA05) -> "NCPoly":
        out: dict = {}
        for w, cp in wt.items():
            for e, c in cp.terms.items():
                _add_into(out, (tuple(w), e), c)
        return cls._raw(out, table)

    # inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def words(self) -> set:
        return {w for w, _ in self.terms}

    def word_terms(self) -> dict[tuple, CentralPoly]:
        out: dict = {}
        for (w, e), c in self.terms.items():
            out.setdefault(w, {})[e] = c
        return {w: CentralPoly._raw(d) for w, d in out.items()}

    def coefficient(self, word) -> CentralPoly:
        w = tuple(word)
        return CentralPoly._raw({e: c for (ww, e), c in self.terms.items() if ww == w})

    def total_degree(self) -> int:
        deg = self.table.degrees
        return max(sum(deg[i] for i in w) + exp_degree(e) for w, e in self.terms)

    # arithmetic -------------------------------------------------------
    def _check(self, other: "NCPoly") -> None:
        if other.table is not self.table:
            raise TableMismatch("polynomials over different generator tables")

    def _lift(self, other):
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        if isinstance(other, CentralPoly):
            return NCPoly.central(other, self.table)
        if isinstance(other, (int, Fraction, LaurentPoly, RatFunc)):
            return NCPoly.scalar(other, self.table)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return NCPoly._raw(out, self.table)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw({k: -c for k, c in self.terms.items()}, self.table)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly, RatFunc)):
            c0 = as_coeff(other)
            if not c0:
                return NCPoly._raw({}, self.table)
            return NCPoly._raw({k: c * c0 for k, c in self.terms.items()}, self.table)
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for (w1, e1), c1 in self.terms.items():
            for (w2, e2), c2 in other.terms.items():
                _add_into(out, (w1 + w2, exp_add(e1, e2)), c1 * c2)
        return NCPoly._raw(out, self.table)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly, RatFunc)):
            return self * other
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly, RatFunc)):
            inv = rf_div(ONE, as_coeff(other)).simplify()
            return self * inv
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a noncommutative polynomial")
        r = NCPoly.one(self.table)
        for _ in range(n):
            r = r * self
        return r

    def __eq__(self, other):
        other = self._lift(other) if not isinstance(other, NCPoly) else other
        if other is NotImplemented:
            return NotImplemented
        return self.table is other.table and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def map_scalars(self, fn) -> "NCPoly":
        out: dict = {}
        for k, c in self.terms.items():
            _add_into(out, k, fn(c))
        return NCPoly._raw(out, self.table)

    # text and JSON ----------------------------------------------------
    def __str__(self) -> str:
        return format_ncpoly(self)

    def __repr__(self) -> str:
        return f"NCPoly({format_ncpoly(self)!r})"

    def to_json(self) -> list:
        out = []
        for w, cp in sorted(self.word_terms().items(), key=lambda kv: _word_sort_key(self.table, kv[0]), reverse=True):
            out.append({"coeff": cp.to_json(), "word": self.table.word_names(w)})
        return out

    @classmethod
    def from_json(cls, data: list, table: GeneratorTable = SIGMA05) -> "NCPoly":
        wt = {table.word(d["word"]): CentralPoly.from_json(d["coeff"]) for d in data}
        return cls.from_word_terms(wt, table)


def nc_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    return a * b


def q_commutator(a: NCPoly, b: NCPoly) -> NCPoly:
    """[a, b]_q = q a b - q^-1 b a."""
    return Q * (a * b) - QINV * (b * a)


# printing -------------------------------------------------------------------

_CENTRAL_PRINT_NAMES = [g.name.upper() for g in CENTRAL_GENS]


def _word_sort_key(table: GeneratorTable, w: tuple) -> tuple:
    return (table.word_degree(w), len(w), w)


def _term_sort_key(table: GeneratorTable, key) -> tuple:
    w, e = key
    return (table.word_degree(w) + exp_degree(e), _word_sort_key(table, w), e)


def format_ncpoly(p: NCPoly) -> str:
    """Flat sum of ``coeff*central*word`` terms, largest total degree first."""
    if not p.terms:
        return "0"
    table = p.table
    pieces = []
    for key in sorted(p.terms, key=lambda k: _term_sort_key(table, k), reverse=True):
        w, e = key
        c = p.terms[key]
        factors = [f for f in (format_monomial(e, _CENTRAL_PRINT_NAMES),) if f]
        factors += table.word_names(w)
        mono = "*".join(factors)
        c = c.simplify() if isinstance(c, RatFunc) else c
        if isinstance(c, RatFunc):
            sign, body = "+", format_scalar(c)
        else:
            s = format_scalar(c)
            if c.is_monomial():
                sign, body = ("-", s[1:]) if s.startswith("-") else ("+", s)
            else:
                sign, body = "+", f"({s})"
        if mono:
            text = mono if body == "1" else f"{body}*{mono}"
        else:
            text = body
        pieces.append((sign, text))
    s = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, text in pieces[1:]:
        s += f" {sign} {text}"
    return s


# parsing --------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<q>q)(?![A-Za-z0-9])|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ExprSyntaxError(f"unexpected character {text[start]!r}", start, text)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, table: GeneratorTable):
        self.text = text
        self.table = table
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value: str):
        t = self.take()
        if t[1] != value:
            raise ExprSyntaxError(f"expected {value!r}, found {t[1] or 'end of input'!r}", t[2], self.text)

    def error(self, msg: str):
        raise ExprSyntaxError(msg, self.peek()[2], self.text)

    def parse(self) -> NCPoly:
        v = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return v

    def expr(self) -> NCPoly:
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> NCPoly:
        acc = self.factor()
        while self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            f = self.factor()
            if op == "*":
                acc = acc * f
            else:
                if not all(w == () and e == ZERO_EXP for w, e in f.terms):
                    raise ExprSyntaxError("division by a non-scalar", pos, self.text)
                if not f.terms:
                    raise ExprSyntaxError("division by zero", pos, self.text)
                acc = acc / f.terms[((), ZERO_EXP)]
        return acc

    def signed_int(self) -> int:
        neg = False
        if self.peek()[1] in ("+", "-"):
            neg = self.take()[1] == "-"
        t = self.take()
        if t[0] != "num":
            raise ExprSyntaxError("expected an integer exponent", t[2], self.text)
        return -int(t[1]) if neg else int(t[1])

    def factor(self) -> NCPoly:
        kind, val, pos = self.peek()
        if kind == "q":
            self.take()
            k = Fraction(1)
            if self.peek()[1] == "^":
                self.take()
                if self.peek()[1] == "(":
                    self.take()
                    neg = False
                    if self.peek()[1] == "-":
                        self.take()
                        neg = True
                    a = self.signed_int()
                    b = 1
                    if self.peek()[1] == "/":
                        self.take()
                        b = self.signed_int()
                    self.expect(")")
                    k = Fraction(-a if neg else a, b)
                else:
                    k = Fraction(self.signed_int())
            ve = k * 4
            if ve.denominator != 1:
                raise ExprSyntaxError("q exponent must be a multiple of 1/4", pos, self.text)
            return NCPoly.scalar(LaurentPoly.monomial(int(ve)), self.table)
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            k = self.signed_int()
            if k < 0:
                if not all(w == () and e == ZERO_EXP for w, e in base.terms) or not base.terms:
                    raise ExprSyntaxError("negative power of a non-scalar", pos, self.text)
                c = base.terms[((), ZERO_EXP)]
                return NCPoly.scalar(rf_div(ONE, as_coeff(c) ** (-k)).simplify(), self.table)
            base = base ** k
        return base

    def atom(self) -> NCPoly:
        kind, val, pos = self.take()
        if kind == "num":
            return NCPoly.scalar(int(val), self.table)
        if kind == "name":
            key = val.upper()
            if key in _CENTRAL_INDEX:
                e = [0] * NVARS
                e[_CENTRAL_INDEX[key]] = 1
                return NCPoly._raw({((), tuple(e)): ONE}, self.table)
            if key in self.table.index:
                return NCPoly.letter(key, self.table)
            raise UnknownGenerator(val)
        if val == "(":
            v = self.expr()
            self.expect(")")
            return v
        raise ExprSyntaxError(f"unexpected {val or 'end of input'!r}", pos, self.text)


def parse_expr(text: str, table: GeneratorTable = SIGMA05) -> NCPoly:
    """Parse an expression such as ``q*S12*S23 - q^-1*S23*S12``."""
    return _Parser(text, table).parse()
