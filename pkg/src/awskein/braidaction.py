"""The braid group B_4 acting on the five-punctured sphere by half twists.

``beta_on_generator(i, A)`` is the image of the simple loop s_A under the
half twist exchanging punctures i and i+1.  When exactly i+1 lies in A the
image is a q-commutator expression divided by q^2 - q^-2; the division is
done coefficientwise and must be exact.  The empty loop appearing in that
formula is the skein value of a trivial circle, -(q + q^-1).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .centralring import NVARS, ZERO_EXP
from .coeff import ONE, Q, QINV, LaurentPoly, RatFunc, rf_div
from .freealg import SIGMA05, NCPoly, parse_expr

__all__ = [
    "InexactDivision",
    "InvalidBraidGenerator",
    "SIMPLE_LOOPS",
    "beta_on_generator",
    "beta_inverse_on_generator",
    "beta_endomorphism",
    "beta_word",
    "verify_braid_action",
    "verify_inverse",
]

N_POINTS = 4
SIMPLE_LOOPS: tuple[frozenset, ...] = tuple(
    frozenset(c)
    for r in range(1, N_POINTS + 1)
    for c in __import__("itertools").combinations(range(1, N_POINTS + 1), r)
)
_CENTRAL_SETS = (frozenset({1}), frozenset({2}), frozenset({3}), frozenset({4}), frozenset({1, 2, 3, 4}))


class InexactDivision(ArithmeticError):
    pass


class InvalidBraidGenerator(ValueError):
    pass


def _system():
    from .skein import golden_system

    return golden_system()


def _loop(A: frozenset) -> NCPoly:
    if not A:
        return NCPoly.scalar(-(Q + QINV))
    return parse_expr("S" + "".join(map(str, sorted(A))))


def _exact_div(p: NCPoly, d: LaurentPoly) -> NCPoly:
    out = {}
    for k, c in p.terms.items():
        v = rf_div(c, d).simplify()
        if isinstance(v, RatFunc):
            raise InexactDivision(f"coefficient {c} is not divisible by {d}")
        out[k] = v
    return NCPoly._raw(out, p.table)


def _check(i: int, A) -> frozenset:
    if not 1 <= i < N_POINTS:
        raise InvalidBraidGenerator(f"braid generator index {i} outside 1..{N_POINTS - 1}")
    A = frozenset(A)
    if not A or not A <= set(range(1, N_POINTS + 1)):
        raise ValueError(f"{sorted(A)} is not a nonempty subset of 1..{N_POINTS}")
    return A


def _twist(i: int, A: frozenset, inverse: bool) -> NCPoly:
    # the forward twist moves i to i+1; the inverse is the mirror image
    a, b = (i + 1, i) if inverse else (i, i + 1)
    q, qi = (QINV, Q) if inverse else (Q, QINV)
    if (a in A) == (b in A):
        return _loop(A)
    if a in A:
        return _loop((A - {a}) | {b})
    sys = _system()
    sA, sab = _loop(A), _loop(frozenset({i, i + 1}))
    num = q * (sA * sab) - qi * (sab * sA)
    num = num - (q - qi) * (_loop(frozenset({b})) * _loop(A | {a}) + _loop(frozenset({a})) * _loop(A - {b}))
    return _exact_div(sys.normal_form(num), q * q - qi * qi)


@lru_cache(maxsize=None)
def beta_on_generator(i: int, A: frozenset) -> NCPoly:
    """beta_i . s_A, in normal form."""
    return _twist(i, _check(i, A), inverse=False)


@lru_cache(maxsize=None)
def beta_inverse_on_generator(i: int, A: frozenset) -> NCPoly:
    """beta_i^-1 . s_A: the crossing-switched formula."""
    return _twist(i, _check(i, A), inverse=True)


def _letter_image(i: int, name: str, inverse: bool) -> NCPoly:
    return _letter_image_cached(i, name, inverse)


@lru_cache(maxsize=None)
def _letter_image_cached(i: int, name: str, inverse: bool) -> NCPoly:
    g = SIGMA05[SIGMA05.id(name)]
    on_gen = beta_inverse_on_generator if inverse else beta_on_generator
    if g.kind == "simple":
        return on_gen(i, frozenset(g.points))
    from .skein import extended_definitions

    return beta_endomorphism(i, extended_definitions()[name], inverse=inverse)


def beta_endomorphism(i: int, x: NCPoly, inverse: bool = False) -> NCPoly:
    """Apply beta_i (or its inverse) multiplicatively and reduce."""
    if not 1 <= i < N_POINTS:
        raise InvalidBraidGenerator(f"braid generator index {i} outside 1..{N_POINTS - 1}")
    sys = _system()
    on_gen = beta_inverse_on_generator if inverse else beta_on_generator
    central = [on_gen(i, S) for S in _CENTRAL_SETS]
    out = NCPoly({}, x.table)
    for (w, e), c in x.terms.items():
        t = NCPoly.scalar(c, x.table)
        for k, S in zip(e, central):
            for _ in range(k):
                t = t * S
        for letter in w:
            t = sys.normal_form(t * _letter_image(i, x.table.names[letter], inverse))
        out = out + t
    return sys.normal_form(out)


def beta_word(word: Sequence[int], x: NCPoly) -> NCPoly:
    """Apply a braid word; negative entries are inverse generators.

    The word acts left to right as written, so "1 2" means beta_1 beta_2 . x,
    i.e. beta_2 is applied first.
    """
    for g in reversed(list(word)):
        x = beta_endomorphism(abs(g), x, inverse=g < 0)
    return x


def verify_braid_action(relations: Iterable | None = None, generators: Sequence[frozenset] = SIMPLE_LOOPS) -> dict:
    """Well-definedness on relations, braid relations and far commutation."""
    from .skein import load_appendix_corpus

    if relations is None:
        relations = load_appendix_corpus()
    sys = _system()
    report = {"well_defined_checked": 0, "braid_checked": 0, "far_checked": 0, "failures": []}
    for r in relations:
        diff = r.lhs - r.rhs
        for i in range(1, N_POINTS):
            report["well_defined_checked"] += 1
            if beta_endomorphism(i, diff):
                report["failures"].append({"check": "well-defined", "relation": r.name, "i": i})
    for A in generators:
        s = _loop(A)
        for i in (1, 2):
            lhs = beta_word((i, i + 1, i), s)
            rhs = beta_word((i + 1, i, i + 1), s)
            report["braid_checked"] += 1
            if sys.normal_form(lhs - rhs):
                report["failures"].append({"check": "braid", "loop": sorted(A), "i": i})
        report["far_checked"] += 1
        if sys.normal_form(beta_word((1, 3), s) - beta_word((3, 1), s)):
            report["failures"].append({"check": "far", "loop": sorted(A)})
    report["ok"] = not report["failures"]
    return report


def verify_inverse(generators: Sequence[frozenset] = SIMPLE_LOOPS) -> dict:
    report = {"checked": 0, "failures": []}
    for A in generators:
        s = _loop(A)
        for i in range(1, N_POINTS):
            for word in ((-i, i), (i, -i)):
                report["checked"] += 1
                if beta_word(word, s) != s:
                    report["failures"].append({"loop": sorted(A), "word": list(word)})
    report["ok"] = not report["failures"]
    return report
