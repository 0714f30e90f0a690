"""Exact arithmetic in U_q(sl2).

Basis.  A monomial key ``(e, f, k)`` stands for ``X^e F^f K^k`` where
``X = (q - q^-1) E``.  In this rescaled basis the commutation relation reads
``XF - FX = K - K^-1`` and every structure constant is a Laurent polynomial,
so products never leave Z[q, q^-1].  Coefficients may still be RatFunc when
the caller divides (quasi-R components, the bare generator ``E``).
Printing and :meth:`UqElem.e_basis_terms` translate back to ``E^e F^f K^k``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Iterable

from .coeff import ONE, Q, QINV, ZERO, LaurentPoly, RatFunc, Scalar, as_coeff, qfact, rf_div

__all__ = [
    "Mono",
    "UqElem",
    "TruncationExceeded",
    "QQI",
    "E",
    "X",
    "F",
    "K",
    "KINV",
    "UNIT",
    "casimir",
    "casimir_ef",
    "uq_mul",
    "mono_mul",
    "coproduct",
    "antipode",
    "counit",
    "grade_decompose",
    "adjoint",
    "adjoint_X",
    "adjoint_F",
    "tau_L",
    "quasi_r_coeff",
    "verify_rea_image",
    "rea_image",
]

Mono = tuple  # (e, f, k)

QQI = Q - QINV  # q - q^-1


class TruncationExceeded(RuntimeError):
    def __init__(self, bound: int):
        super().__init__(f"adjoint orbit did not terminate within bound {bound}")
        self.bound = bound


def _qp(n: int) -> LaurentPoly:
    return LaurentPoly.monomial(4 * n)


@lru_cache(maxsize=None)
def _fx(b: int, d: int) -> tuple:
    """Normal form of F^b X^d as a tuple of ((i, j, k), coeff)."""
    if b == 0 or d == 0:
        return (((d, b, 0), ONE),)
    # F X^d = X^d F - X^(d-1) (S+ K - S- K^-1)
    sp = LaurentPoly.from_dict({8 * j: 1 for j in range(d)})
    sm = LaurentPoly.from_dict({-8 * j: 1 for j in range(d)})
    out: dict = {}
    for (i, j, k), c in _fx(b - 1, d):
        key = (i, j + 1, k)
        out[key] = out.get(key, ZERO) + c * _qp(-2 * k)
    for (i, j, k), c in _fx(b - 1, d - 1):
        for dk, s in ((1, -sp), (-1, sm)):
            key = (i, j, k + dk)
            out[key] = out.get(key, ZERO) + c * s
    return tuple((m, c) for m, c in out.items() if c)


@lru_cache(maxsize=200000)
def mono_mul(m1: Mono, m2: Mono) -> tuple:
    """Product of two basis monomials as a tuple of (mono, LaurentPoly)."""
    a, b, c = m1
    d, e, g = m2
    pre = 2 * c * (d - e)
    if b == 0 or d == 0:
        return (((a + d, b + e, c + g), _qp(pre)),)
    out = []
    for (i, j, k), co in _fx(b, d):
        out.append(((a + i, j + e, k + c + g), co * _qp(pre - 2 * k * e)))
    return tuple(out)


class UqElem:
    """Element of U_q(sl2): map from (e, f, k) to a nonzero coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def mono(cls, e: int = 0, f: int = 0, k: int = 0, c=ONE) -> "UqElem":
        return cls({(e, f, k): as_coeff(c)})

    @classmethod
    def scalar(cls, c) -> "UqElem":
        return cls.mono(0, 0, 0, c)

    def __add__(self, other):
        if not isinstance(other, UqElem):
            other = UqElem.scalar(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t[m] + c if m in t else c
        return UqElem(t)

    __radd__ = __add__

    def __neg__(self):
        return UqElem({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, UqElem):
            return uq_mul(self, other)
        s = as_coeff(other)
        return UqElem({m: c * s for m, c in self.terms.items()})

    def __rmul__(self, other):
        s = as_coeff(other)
        return UqElem({m: s * c for m, c in self.terms.items()})

    def __pow__(self, n: int):
        r = UNIT
        for _ in range(n):
            r = r * self
        return r

    def __eq__(self, other):
        if not isinstance(other, UqElem):
            other = UqElem.scalar(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def grades(self) -> set[int]:
        return {e - f for (e, f, _k) in self.terms}

    def e_basis_terms(self) -> dict:
        """Coefficients with respect to E^e F^f K^k."""
        return {m: (c * QQI ** m[0]) for m, c in self.terms.items()}

    def __str__(self):
        return format_uq(self)

    __repr__ = __str__


def _fmt_mono(e: int, f: int, k: int) -> str:
    parts = []
    if e:
        parts.append("E" if e == 1 else f"E^{e}")
    if f:
        parts.append("F" if f == 1 else f"F^{f}")
    if k:
        parts.append("K" if k == 1 else f"K^{k}")
    return "*".join(parts) if parts else "1"


def format_uq(x: UqElem) -> str:
    if not x.terms:
        return "0"
    out = []
    for (e, f, k) in sorted(x.terms, key=lambda m: (-(m[0] + m[1]), -m[0], -m[2])):
        c = x.terms[(e, f, k)] * QQI ** e
        c = c.simplify() if isinstance(c, RatFunc) else c
        mono = _fmt_mono(e, f, k)
        if c == ONE:
            out.append(mono)
        elif c == -ONE:
            out.append("-" + mono)
        else:
            out.append(f"({c})" + ("" if mono == "1" else "*" + mono))
    return " + ".join(out).replace("+ -", "- ")


def uq_mul(a: UqElem, b: UqElem) -> UqElem:
    out: dict = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            c12 = c1 * c2
            for m, co in mono_mul(m1, m2):
                v = c12 * co
                out[m] = out[m] + v if m in out else v
    return UqElem(out)


UNIT = UqElem.mono()
X = UqElem.mono(1, 0, 0)
F = UqElem.mono(0, 1, 0)
K = UqElem.mono(0, 0, 1)
KINV = UqElem.mono(0, 0, -1)
E = UqElem.mono(1, 0, 0, rf_div(ONE, QQI))


def casimir() -> UqElem:
    """Lambda = (q - q^-1)^2 F E + q K + q^-1 K^-1, computed from the FE form."""
    return QQI * (F * X) + Q * K + QINV * KINV


def casimir_ef() -> UqElem:
    """Lambda = (q - q^-1)^2 E F + q^-1 K + q K^-1."""
    return QQI * (X * F) + QINV * K + Q * KINV


LAMBDA = casimir()


def counit(a: UqElem) -> Scalar:
    c = ZERO
    for (e, f, _k), v in a.terms.items():
        if e == 0 and f == 0:
            c = c + v
    return c


def grade_decompose(a: UqElem) -> list[tuple[int, UqElem]]:
    parts: dict[int, dict] = {}
    for m, c in a.terms.items():
        parts.setdefault(m[0] - m[1], {})[m] = c
    return [(g, UqElem(t)) for g, t in sorted(parts.items())]


def antipode(a: UqElem) -> UqElem:
    out = UqElem()
    for (e, f, k), c in a.terms.items():
        out = out + c * _antipode_mono(e, f, k)
    return out


@lru_cache(maxsize=None)
def _antipode_mono(e: int, f: int, k: int) -> UqElem:
    # S(X^e F^f K^k) = S(K)^k S(F)^f S(X)^e with S(X) = -X K^-1, S(F) = -K F
    sx = -(X * KINV)
    sf = -(K * F)
    return UqElem.mono(0, 0, -k) * sf ** f * sx ** e


# coproduct ----------------------------------------------------------------
# Elements of U x U are dicts keyed by (m1, m2); kept private here, the public
# n-fold type lives in the tensor module.


def _t2_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (x1, x2), c1 in a.items():
        for (y1, y2), c2 in b.items():
            c12 = c1 * c2
            for m1, d1 in mono_mul(x1, y1):
                for m2, d2 in mono_mul(x2, y2):
                    key = (m1, m2)
                    v = c12 * d1 * d2
                    out[key] = out[key] + v if key in out else v
    return {k: v for k, v in out.items() if v}


_DX = {((1, 0, 0), (0, 0, 1)): ONE, ((0, 0, 0), (1, 0, 0)): ONE}
_DF = {((0, 1, 0), (0, 0, 0)): ONE, ((0, 0, -1), (0, 1, 0)): ONE}


@lru_cache(maxsize=None)
def coproduct_mono(e: int, f: int, k: int) -> tuple:
    r = {((0, 0, k), (0, 0, k)): ONE}
    acc = {((0, 0, 0), (0, 0, 0)): ONE}
    for _ in range(e):
        acc = _t2_mul(acc, _DX)
    for _ in range(f):
        acc = _t2_mul(acc, _DF)
    acc = _t2_mul(acc, r)
    return tuple(acc.items())


def coproduct(a: UqElem) -> dict:
    """Delta(a) as a dict keyed by (mono, mono)."""
    out: dict = {}
    for (e, f, k), c in a.terms.items():
        for key, v in coproduct_mono(e, f, k):
            w = c * v
            out[key] = out[key] + w if key in out else w
    return {k: v for k, v in out.items() if v}


# adjoint action -----------------------------------------------------------

def adjoint(h: UqElem, x: UqElem) -> UqElem:
    """h |> x = sum h_(1) x S(h_(2))."""
    out = UqElem()
    for (m1, m2), c in coproduct(h).items():
        out = out + c * (UqElem({m1: ONE}) * x * antipode(UqElem({m2: ONE})))
    return out


def adjoint_X(x: UqElem) -> UqElem:
    """X |> x = X x K^-1 - x X K^-1."""
    return (X * x - x * X) * KINV


def adjoint_F(x: UqElem) -> UqElem:
    """F |> x = F x - K^-1 x K F."""
    return F * x - KINV * x * K * F


def quasi_r_coeff(i: int) -> RatFunc:
    """Scalar c_i with u_i = c_i X^i, v_i = F^i: c_i = q^(i(i-1)/2)/[i]!."""
    return rf_div(LaurentPoly.monomial(2 * i * (i - 1)), qfact(i))


def _x_orbit(x: UqElem, bound: int) -> list[UqElem]:
    """[x, X|>x, X^2|>x, ...] up to the first zero (exclusive)."""
    orbit = []
    y = x
    while y:
        if len(orbit) > bound:
            raise TruncationExceeded(bound)
        orbit.append(y)
        y = adjoint_X(y)
    return orbit


def _freeze(x: UqElem) -> frozenset:
    return frozenset(x.terms.items())


@lru_cache(maxsize=20000)
def _tau_L_frozen(fx: frozenset, bound: int) -> tuple:
    x = UqElem(dict(fx))
    out: dict = {}
    for g, comp in grade_decompose(x):
        for i, y in enumerate(_x_orbit(comp, bound)):
            ci = quasi_r_coeff(i)
            # K^(i+g) F^i = q^(-2 i (i+g)) F^i K^(i+g)
            left = (0, i, i + g)
            lc = _qp(-2 * (i + g) * i)
            for m2, c in y.terms.items():
                v = ci * lc * c
                key = (left, m2)
                out[key] = out[key] + v if key in out else v
    res = []
    for k, v in out.items():
        if v:
            res.append((k, v.simplify() if isinstance(v, RatFunc) else v))
    return tuple(res)


def tau_L(x: UqElem, truncation_bound: int = 16) -> dict:
    """Left coaction tau_L(x) = sum K^(i+|x|) v_i (x) u_i |> x, as a (mono, mono) dict.

    ``x`` must lie in the locally finite part; single monomials such as K^-1
    do not, so the sum is taken over whole homogeneous components.
    """
    return dict(_tau_L_frozen(_freeze(x), truncation_bound))


# reflection equation algebra ----------------------------------------------

def rea_image() -> list[list[UqElem]]:
    """Image of the 2x2 generator matrix [[k++, k+-], [k-+, k--]]."""
    kpp = QINV * (LAMBDA - QINV * K)
    kpm = QINV * X  # q^-1 (q - q^-1) E
    kmp = K * F * QQI
    kmm = K
    return [[kpp, kpm], [kmp, kmm]]


def _r_matrix() -> list[list[Scalar]]:
    z = ZERO
    return [[Q, z, z, z], [z, ONE, QQI, z], [z, z, ONE, z], [z, z, z, Q]]


def _mat_mul(a, b):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = UqElem()
            for t in range(n):
                x, y = a[i][t], b[t][j]
                if isinstance(x, UqElem) and isinstance(y, UqElem):
                    s = s + x * y
                elif isinstance(x, UqElem):
                    if y:
                        s = s + x * y
                elif isinstance(y, UqElem):
                    if x:
                        s = s + x * y
                else:
                    if x and y:
                        s = s + UqElem.scalar(x * y)
            row.append(s)
        out.append(row)
    return out


def _kron(a, b):
    out = [[None] * 4 for _ in range(4)]
    for i, j, k, l in itertools.product(range(2), repeat=4):
        x, y = a[i][k], b[j][l]
        if isinstance(x, UqElem) and isinstance(y, UqElem):
            v = x * y
        elif isinstance(x, UqElem):
            v = x * y if y else UqElem()
        elif isinstance(y, UqElem):
            v = x * y if x else UqElem()
        else:
            v = UqElem.scalar(x * y) if (x and y) else UqElem()
        out[2 * i + j][2 * k + l] = v
    return out


def _re_failures(km, r, r21) -> list[tuple[int, int]]:
    ident = [[ONE if i == j else ZERO for j in range(2)] for i in range(2)]
    r = [[UqElem.scalar(c) if c else UqElem() for c in row] for row in r]
    r21 = [[UqElem.scalar(c) if c else UqElem() for c in row] for row in r21]
    k1 = _kron(km, ident)
    k2 = _kron(ident, km)
    lhs = _mat_mul(_mat_mul(_mat_mul(r21, k1), r), k2)
    rhs = _mat_mul(_mat_mul(_mat_mul(k2, r21), k1), r)
    return [(i, j) for i in range(4) for j in range(4) if lhs[i][j] != rhs[i][j]]


def verify_rea_image() -> dict:
    """Check the image matrix against the reflection equation algebra relations.

    Literal checks: ``k++ k-- - q k+- k-+ = 1`` and
    ``R21 (K x I) R (I x K) = (I x K) R21 (K x I) R``, plus ``tr_q = Lambda``.
    The report also carries the two convention variants that the image does
    satisfy (determinant with q^2, reflection equation with R and R21
    interchanged) so a failure of the literal form can be diagnosed.
    """
    km = rea_image()
    (kpp, kpm), (kmp, kmm) = km
    det = kpp * kmm - Q * (kpm * kmp)
    det_q2 = kpp * kmm - Q * Q * (kpm * kmp)
    trq = Q * kpp + QINV * kmm
    r = _r_matrix()
    perm = [0, 2, 1, 3]
    r21 = [[r[perm[i]][perm[j]] for j in range(4)] for i in range(4)]
    bad = _re_failures(km, r, r21)
    bad_swapped = _re_failures(km, r21, r)
    report = {
        "determinant": det == UNIT,
        "determinant_residual": str(det - UNIT),
        "determinant_q2_variant": det_q2 == UNIT,
        "reflection_equation": not bad,
        "reflection_failures": bad,
        "reflection_equation_swapped_R": not bad_swapped,
        "trace": trq == LAMBDA,
    }
    report["ok"] = report["determinant"] and report["reflection_equation"] and report["trace"]
    return report
