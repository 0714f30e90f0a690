"""The five-punctured sphere instance: generators, relation corpus, symmetries.

Relations are stored as text in the expression grammar of ``freealg`` in
``data/appendix_corpus.json``, keyed by relation family.  The generator
generating relations are stated once per family; the other members of
each family are produced by the cyclic rotation 1 -> 2 -> 3 -> 4 -> 1,
which is a symmetry of the relation set with q unchanged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable

from .centralring import NVARS, CentralPoly
from .coeff import ONE, Q, QINV, rf_div
from .freealg import SIGMA05, GeneratorTable, NCPoly, build_table, parse_expr

__all__ = [
    "Relation",
    "RelationCorpus",
    "NotApplicable",
    "build_generator_table",
    "load_appendix_corpus",
    "rotate",
    "rotate_name",
    "generator_generating_relations",
    "extended_definitions",
    "eliminate_extended",
    "commutator_relation",
    "commutator_relations",
    "commuting_relations",
    "bullock_przytycki_relations",
    "main_text_variants",
    "seed_rules",
    "gen_gen_rules",
    "build_skein_system",
    "golden_system",
    "CLASS_OF_SECTION",
]

CLASS_OF_SECTION = {
    "commuting": "Commuting",
    "commutators": "Commutator",
    "cubic": "Cubic",
    "cubic_triples": "CubicTriple",
    "quartic": "Quartic",
    "loop_triple": "LoopTriple",
    "link_triple": "LinkTriple",
    "crossing": "Crossing",
    "double_triple_crossing": "DoubleTripleCrossing",
    "generator_generating": "GeneratorGenerating",
    "extended_cubic": "ExtendedCubic",
    "extended_quartic": "ExtendedQuartic",
}

# Relation families that belong to the presentation in simple loops.
SIMPLE_SECTIONS = (
    "commuting",
    "commutators",
    "cubic",
    "cubic_triples",
    "quartic",
    "loop_triple",
    "link_triple",
    "crossing",
    "double_triple_crossing",
)
EXTENDED_SECTIONS = ("extended_cubic", "extended_quartic")


class NotApplicable(ValueError):
    pass


@dataclass(frozen=True)
class Relation:
    name: str
    lhs: NCPoly
    rhs: NCPoly
    cls: str
    section: str

    @property
    def residual(self) -> NCPoly:
        return self.lhs - self.rhs

    def to_json(self) -> dict:
        return {"name": self.name, "class": self.cls, "lhs": str(self.lhs), "rhs": str(self.rhs)}


@dataclass(frozen=True)
class RelationCorpus:
    relations: tuple[Relation, ...]

    def __len__(self) -> int:
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)

    def section(self, *names: str) -> list[Relation]:
        return [r for r in self.relations if r.section in names]

    def by_name(self, name: str) -> Relation:
        for r in self.relations:
            if r.name == name:
                return r
        raise KeyError(name)


def build_generator_table() -> GeneratorTable:
    return build_table()


@lru_cache(maxsize=1)
def _raw_corpus() -> dict:
    text = resources.files("awskein").joinpath("data/appendix_corpus.json").read_text()
    return json.loads(text)


def _relation(section: str, lhs: str, rhs: str, table: GeneratorTable) -> Relation:
    return Relation(
        name=lhs.replace("*", " "),
        lhs=parse_expr(lhs, table),
        rhs=parse_expr(rhs, table),
        cls=CLASS_OF_SECTION.get(section, section),
        section=section,
    )


@lru_cache(maxsize=1)
def load_appendix_corpus() -> RelationCorpus:
    """All simple-loop relations plus the two extended cubic and quartic pairs."""
    raw = _raw_corpus()
    rels = []
    for section in SIMPLE_SECTIONS + EXTENDED_SECTIONS:
        for item in raw[section]:
            rels.append(_relation(section, item["lhs"], item["rhs"], SIGMA05))
    return RelationCorpus(tuple(rels))


def main_text_variants() -> list[Relation]:
    return [_relation("main_text_variants", d["lhs"], d["rhs"], SIGMA05) for d in _raw_corpus()["main_text_variants"]]


# symmetries -----------------------------------------------------------------

def _rot(i: int, k: int) -> int:
    return (i - 1 + k) % 4 + 1


def rotate_name(name: str, k: int = 1) -> str:
    """Image of a generator name under the rotation i -> i + k (mod 4)."""
    kind, digits = name[0], [int(c) for c in name[1:]]
    r = [_rot(d, k) for d in digits]
    if kind == "S":
        if len(digits) == 4:
            return name
        return "S" + "".join(map(str, sorted(r)))
    if kind == "D":
        a, d, b = r
        # the loop around a and b passing outside d; either end point may lead
        for cand in (f"D{a}{d}{b}", f"D{b}{d}{a}"):
            if cand in SIGMA05.index:
                return cand
    if kind == "T":
        a, d1, d2, b = r
        dd = "".join(map(str, sorted((d1, d2))))
        for cand in (f"T{a}{dd}{b}", f"T{b}{dd}{a}"):
            if cand in SIGMA05.index:
                return cand
    if kind == "P":
        p1 = "".join(map(str, sorted(r[:2])))
        p2 = "".join(map(str, sorted(r[2:])))
        for cand in (f"P{p1}{p2}", f"P{p2}{p1}"):
            if cand in SIGMA05.index:
                return cand
    raise ValueError(f"cannot rotate {name!r}")


def _rotate_exps(e: tuple, k: int) -> tuple:
    out = [0] * NVARS
    for i in range(4):
        out[_rot(i + 1, k) - 1] = e[i]
    out[4] = e[4]
    return tuple(out)


def rotate(p: NCPoly, k: int = 1) -> NCPoly:
    table = p.table
    letter_map = [table.id(rotate_name(g.name, k)) for g in table.entries]
    out: dict = {}
    for (w, e), c in p.terms.items():
        key = (tuple(letter_map[i] for i in w), _rotate_exps(e, k))
        v = out.get(key)
        out[key] = c if v is None else v + c
    return NCPoly({k_: v for k_, v in out.items()}, table)


# generator generating relations ---------------------------------------------

def _new_generator(r: Relation) -> str:
    """The extended generator introduced by a definitional relation."""
    table = r.lhs.table
    lhs_letters = {i for w in r.lhs.words() for i in w}
    best = None
    for w in r.rhs.words():
        if len(w) == 1 and w[0] not in lhs_letters:
            g = table[w[0]]
            if g.kind != "simple" and (best is None or w[0] > best):
                best = w[0]
    if best is None:
        raise ValueError(f"relation {r.name} introduces no generator")
    return table.names[best]


@lru_cache(maxsize=1)
def generator_generating_relations() -> tuple[Relation, ...]:
    """The 12 generator generating relations.

    Ten are definitional (two disjoint pairs, four single and four double
    double-point loops).  The remaining two rewrite a group I loop times a
    disjoint pair; they are consequences of the definitions.
    """
    raw = _raw_corpus()["generator_generating"]
    base = [_relation("generator_generating", d["lhs"], d["rhs"], SIGMA05) for d in raw]
    out: list[Relation] = []
    seen: set[str] = set()
    for r in base[:3]:
        for k in range(4):
            lhs, rhs = rotate(r.lhs, k), rotate(r.rhs, k)
            rr = Relation(str(lhs).replace("*", " "), lhs, rhs, r.cls, r.section)
            g = _new_generator(rr)
            if g not in seen:
                seen.add(g)
                out.append(rr)
    r = base[3]
    for k in range(2):
        lhs, rhs = rotate(r.lhs, k), rotate(r.rhs, k)
        out.append(Relation(str(lhs).replace("*", " "), lhs, rhs, r.cls, r.section))
    return tuple(out)


@lru_cache(maxsize=1)
def extended_definitions() -> dict[str, NCPoly]:
    """Each extended generator written in simple loops (skein product order)."""
    defs: dict[str, NCPoly] = {}
    for r in generator_generating_relations()[:10]:
        g = _new_generator(r)
        gid = r.lhs.table.id(g)
        c = r.rhs.terms[((gid,), (0,) * NVARS)]
        rest = r.rhs - NCPoly.word([g]) * c
        defs[g] = (r.lhs - rest) * rf_div(ONE, c).simplify()
    # substitute earlier definitions into later ones until only simple loops remain
    for _ in range(3):
        defs = {g: eliminate_extended(p, defs) for g, p in defs.items()}
    return defs


def eliminate_extended(p: NCPoly, defs: dict[str, NCPoly] | None = None) -> NCPoly:
    """Replace every extended generator by its definition."""
    if defs is None:
        defs = extended_definitions()
    table = p.table
    images = {}
    for i, g in enumerate(table.entries):
        if g.name in defs:
            images[i] = defs[g.name]
    if not any(i in images for w in p.words() for i in w):
        return p
    out = NCPoly({}, table)
    for (w, e), c in p.terms.items():
        term = NCPoly._raw({((), e): c}, table)
        for i in w:
            term = term * (images[i] if i in images else NCPoly._raw({((i,), (0,) * NVARS): ONE}, table))
        out = out + term
    return out


# relations for arbitrary n --------------------------------------------------

def _block_case(A: frozenset, B: frozenset):
    from .tensor import block_decomposition

    return block_decomposition(A, B, max(A | B))


def commutator_relation(A: Iterable[int], B: Iterable[int], n: int) -> tuple[dict, dict]:
    """Skein form q s_A s_B - q^-1 s_B s_A = rhs, as symbolic loop products.

    Returns ``(lhs, rhs)`` where each is a map from tuples of point sets
    (a product of loops, in order) to scalars; the empty set stands for the
    scalar q + q^-1.
    """
    from .tensor import _commutes_by_prop, block_decomposition

    A, B = frozenset(A), frozenset(B)
    if not A or not B or A == B or _commutes_by_prop(A, B) or block_decomposition(A, B, n) is None:
        raise NotApplicable(f"no commutator relation for {sorted(A)}, {sorted(B)}")
    lhs = {(A, B): Q, (B, A): -QINV}
    sym = (A | B) - (A & B)
    rhs: dict = {}
    qq = Q - QINV

    def add(key, c):
        rhs[key] = rhs[key] + c if key in rhs else c

    add((sym,), Q * Q - QINV * QINV)
    add((A & B, A | B), qq)
    add((A - B, B - A), qq)
    return lhs, rhs


def loop_product_to_ncpoly(terms: dict, table: GeneratorTable = SIGMA05) -> NCPoly:
    """Turn a map (point sets, ...) -> scalar into an NCPoly over the table.

    Single points and the full set become central variables; the empty set
    is the scalar q + q^-1.
    """
    out = NCPoly({}, table)
    for sets, c in terms.items():
        t = NCPoly.scalar(c, table)
        for S in sets:
            t = t * _loop(S, table)
        out = out + t
    return out


def _loop(S: frozenset, table: GeneratorTable) -> NCPoly:
    if not S:
        return NCPoly.scalar(Q + QINV, table)
    name = "S" + "".join(map(str, sorted(S)))
    return parse_expr(name, table)


def commutator_relations(n: int = 4) -> list[Relation]:
    """Every admissible commutator relation for n = 4, as NCPoly equalities."""
    from .tensor import admissible_commutator_pairs

    out = []
    for A, B, case in admissible_commutator_pairs(n):
        lhs, rhs = commutator_relation(A, B, n)
        name = f"[s{''.join(map(str, sorted(A)))}, s{''.join(map(str, sorted(B)))}]_q"
        out.append(Relation(name, loop_product_to_ncpoly(lhs), loop_product_to_ncpoly(rhs), "Commutator", "theorem"))
    return out


def commuting_relations(n: int = 4) -> list[Relation]:
    from .tensor import commuting_pairs

    out = []
    for A, B in commuting_pairs(n):
        a, b = _loop(frozenset(A), SIGMA05), _loop(frozenset(B), SIGMA05)
        out.append(Relation(f"s{''.join(map(str, sorted(A)))} s{''.join(map(str, sorted(B)))}", a * b, b * a,
                            "Commuting", "theorem"))
    return out


# the four-punctured sphere ---------------------------------------------------

def bullock_przytycki_relations() -> list[tuple[str, NCPoly, NCPoly]]:
    """Relations of the four-punctured sphere in x1 = S12, x2 = S23, x3 = S13.

    Central loops s1, s2, s3 and the outer loop s4 are written S1..S4.  The
    outer loop is evaluated as the loop around all three inner points.
    """
    x = {1: "S12", 2: "S23", 3: "S13"}
    p = {1: "(S1*S2 + S3*S4)", 2: "(S2*S3 + S1*S4)", 3: "(S1*S3 + S2*S4)"}
    rels = []
    for i in (1, 2, 3):
        j, k = i % 3 + 1, (i + 1) % 3 + 1
        lhs = f"q*{x[i]}*{x[j]} - q^-1*{x[j]}*{x[i]}"
        rhs = f"(q^2 - q^-2)*{x[k]} + (q - q^-1)*{p[k]}"
        rels.append((f"[x{i}, x{j}]_q", parse_expr(lhs), parse_expr(rhs)))
    omega = (
        "-q*S12*S23*S13 + q^2*S12^2 + q^-2*S23^2 + q^2*S13^2"
        f" + q*{p[1]}*S12 + q^-1*{p[2]}*S23 + q*{p[3]}*S13"
    )
    rhs = "(q + q^-1)^2 - (S1*S2*S3*S4 + S1^2 + S2^2 + S3^2 + S4^2)"
    rels.append(("Omega", parse_expr(omega), parse_expr(rhs)))
    return rels


# assembly of the reduction system ---------------------------------------------

def seed_rules() -> list:
    """Corpus relations (simple and extended) as rules ``lhs -> rhs``."""
    from .rewrite import Rule

    out = []
    for r in load_appendix_corpus():
        words = r.lhs.words()
        if len(r.lhs.terms) == 1 and len(next(iter(words))) >= 2:
            (w, e), c = next(iter(r.lhs.terms.items()))
            if e == (0,) * NVARS and c == ONE:
                out.append(Rule(w, r.rhs, "seed-appendix"))
                continue
        out.append(r.lhs - r.rhs)
    return out


def gen_gen_rules() -> list:
    from .rewrite import Rule

    out = []
    for r in generator_generating_relations():
        (w, e), c = next(iter(r.lhs.terms.items()))
        out.append(Rule(w, r.rhs, "generator-generating"))
    return out


def build_skein_system(max_degree: int | None = None, log=None):
    """Complete the corpus and generator generating relations.

    The full completion certifies compatibility with the chained order.
    """
    from .rewrite import complete_system

    return complete_system(
        seed_rules(), gen_gen_rules(), SIGMA05, max_degree=max_degree, log=log, certify=max_degree is None
    )


@lru_cache(maxsize=1)
def golden_system():
    """The completed system as shipped in ``data/rules_sigma05.json``."""
    from .rewrite import rules_from_json

    text = resources.files("awskein").joinpath("data/rules_sigma05.json").read_text()
    return rules_from_json(text)
