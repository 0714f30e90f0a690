"""Hilbert series: truncated power series, closed forms and graded characters.

Everything is exact (``fractions.Fraction``).  A ``Series1`` is a power
series in t truncated after t^N; a ``Series2`` is a series in t whose
coefficients are Laurent polynomials in u, stored only on even u-exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

__all__ = [
    "Series1",
    "Series2",
    "DenominatorVanishesAtZero",
    "expand_rational",
    "poly_mul",
    "multichoose",
    "closed_form_h",
    "closed_form_numerator",
    "displayed_n4_forms",
    "character_route",
    "central_ring_series",
    "enumerated_series",
    "N4_NUMERATOR",
    "N4_DENOMINATOR",
]


class DenominatorVanishesAtZero(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class Series1:
    """c_0 + c_1 t + ... + c_N t^N (mod t^{N+1})."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_poly(cls, p: Sequence, N: int) -> "Series1":
        c = [Fraction(0)] * (N + 1)
        for i, a in enumerate(p[: N + 1]):
            c[i] = Fraction(a)
        return cls(tuple(c))

    def _common(self, other: "Series1") -> int:
        return min(self.N, other.N)

    def __add__(self, other: "Series1") -> "Series1":
        n = self._common(other)
        return Series1(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)))

    def __sub__(self, other: "Series1") -> "Series1":
        n = self._common(other)
        return Series1(tuple(self.coeffs[i] - other.coeffs[i] for i in range(n + 1)))

    def __mul__(self, other) -> "Series1":
        if not isinstance(other, Series1):
            return Series1(tuple(c * other for c in self.coeffs))
        n = self._common(other)
        a, b = self.coeffs, other.coeffs
        return Series1(tuple(sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n + 1)))

    __rmul__ = __mul__

    def truncate(self, N: int) -> "Series1":
        return Series1(self.coeffs[: N + 1])

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def as_ints(self) -> list[int]:
        if any(c.denominator != 1 for c in self.coeffs):
            raise ValueError("series has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.coeffs)


@dataclass(frozen=True)
class Series2:
    """Sum over (u-exponent, t-degree) of rational coefficients, t-degree <= N."""

    N: int
    terms: dict

    def __post_init__(self):
        for (k, d), c in self.terms.items():
            if k % 2:
                raise ValueError(f"odd u-exponent {k}")
            if d > self.N:
                raise ValueError(f"t-degree {d} exceeds truncation {self.N}")

    @classmethod
    def one(cls, N: int) -> "Series2":
        return cls(N, {(0, 0): Fraction(1)})

    @classmethod
    def from_t(cls, s: Series1) -> "Series2":
        return cls(s.N, {(0, d): c for d, c in enumerate(s.coeffs) if c})

    @classmethod
    def geometric(cls, uexp: int, N: int) -> "Series2":
        """1 / (1 - u^uexp t)."""
        return cls(N, {(uexp * d, d): Fraction(1) for d in range(N + 1)})

    def __mul__(self, other: "Series2") -> "Series2":
        N = min(self.N, other.N)
        out: dict = {}
        for (k1, d1), c1 in self.terms.items():
            for (k2, d2), c2 in other.terms.items():
                if d1 + d2 <= N:
                    key = (k1 + k2, d1 + d2)
                    out[key] = out.get(key, 0) + c1 * c2
        return Series2(N, {k: c for k, c in out.items() if c})

    def __pow__(self, n: int) -> "Series2":
        r = Series2.one(self.N)
        for _ in range(n):
            r = r * self
        return r

    def u_coefficient(self, k: int) -> Series1:
        c = [Fraction(0)] * (self.N + 1)
        for (kk, d), v in self.terms.items():
            if kk == k:
                c[d] += v
        return Series1(tuple(c))


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_pow(a: Sequence[int], n: int) -> list[int]:
    r = [1]
    for _ in range(n):
        r = poly_mul(r, a)
    return r


def expand_rational(num: Sequence, den: Sequence, N: int) -> Series1:
    """num(t) / den(t) as a power series to order N (exact long division)."""
    den = [Fraction(c) for c in den]
    if not den or den[0] == 0:
        raise DenominatorVanishesAtZero("denominator vanishes at t = 0")
    num = [Fraction(c) for c in num] + [Fraction(0)] * (N + 1)
    out = []
    for k in range(N + 1):
        s = num[k] - sum(den[i] * out[k - i] for i in range(1, min(k, len(den) - 1) + 1))
        out.append(s / den[0])
    return Series1(tuple(out))


def multichoose(n: int, k: int) -> int:
    """Number of multisets of size k from n items, binom(n + k - 1, k)."""
    if k < 0:
        return 0
    if n == 0:
        return 1 if k == 0 else 0
    return comb(n + k - 1, k)


def closed_form_numerator(n: int) -> list[int]:
    """sum binom(n-2,k)^2 t^2k - sum binom(n-2,k) binom(n-2,k+1) t^(2k+1)."""
    m = n - 2
    p = [0] * (2 * m + 1)
    for k in range(m + 1):
        p[2 * k] += comb(m, k) ** 2
    for k in range(m):
        p[2 * k + 1] -= comb(m, k) * comb(m, k + 1)
    return p


def closed_form_h(n: int, N: int) -> Series1:
    """(1+t)^(n-2) / ((1-t)^n (1-t^2)^(2n-3)) times the binomial numerator.

    For n = 1 the displayed formula degenerates; the one-factor invariant
    algebra is the polynomial ring on the Casimir, 1/(1-t).
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return expand_rational([1], [1, -1], N)
    num = poly_mul(_poly_pow([1, 1], n - 2), closed_form_numerator(n))
    den = poly_mul(_poly_pow([1, -1], n), _poly_pow([1, 0, -1], 2 * n - 3))
    return expand_rational(num, den, N)


N4_NUMERATOR = [1, 0, 1, 4, 1, 0, 1]
N4_DENOMINATOR = poly_mul(_poly_pow([1, -1], 4), _poly_pow([1, 0, -1], 5))


def displayed_n4_forms() -> dict:
    """The two printed forms of the n = 4 series, as numerator polynomials over
    the common denominator (1-t)^4 (1-t^2)^5.

    ``first`` is (1+t)^2 (1 - 2t + 2t^2 - 2t^3 + t^4) exactly as printed,
    ``first_from_theorem`` uses the general formula's middle coefficient 4.
    """
    return {
        "first": poly_mul([1, 2, 1], [1, -2, 2, -2, 1]),
        "first_from_theorem": poly_mul([1, 2, 1], closed_form_numerator(4)),
        "second": list(N4_NUMERATOR),
    }


def character_route(n: int, N: int, method: str = "bivariate") -> Series1:
    """Invariant Hilbert series from the graded character of n factors.

    ``bivariate`` expands ((1+t)/((1-t)(1-u^2 t)(1-u^-2 t)))^n and reads off
    the u^1 coefficient of (u - u^-1) h, which is [u^0] - [u^2].
    ``convolution`` uses ((1+t)/(1-t))^n times the multichoose sums.
    """
    if method == "bivariate":
        base = Series2.from_t(expand_rational([1, 1], [1, -1], N))
        base = base * Series2.geometric(2, N) * Series2.geometric(-2, N)
        h = base ** n
        return h.u_coefficient(0) - h.u_coefficient(2)
    if method == "convolution":
        s = [Fraction(0)] * (N + 1)
        for m in range(N // 2 + 1):
            s[2 * m] += multichoose(n, m) ** 2
            if 2 * m + 1 <= N:
                s[2 * m + 1] -= multichoose(n, m) * multichoose(n, m + 1)
        pre = expand_rational(_poly_pow([1, 1], n), _poly_pow([1, -1], n), N)
        return pre * Series1(tuple(s))
    raise ValueError(f"unknown method {method!r}")


def central_ring_series(N: int) -> Series1:
    """1 / ((1-t)^4 (1-t^4)): the loops s1..s4 and s1234."""
    return expand_rational([1], poly_mul(_poly_pow([1, -1], 4), [1, 0, 0, 0, -1]), N)


def enumerated_series(sys, N: int) -> Series1:
    """Irreducible words by degree, times the central ring series."""
    from .rewrite import irreducible_monomials

    counts = irreducible_monomials(sys, N)
    words = Series1(tuple(counts[d] for d in range(N + 1)))
    return words * central_ring_series(N)
