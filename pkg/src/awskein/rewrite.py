"""Reduction systems on the free algebra over the central ring (diamond lemma).

A rule rewrites a word ``lhs`` to an ``NCPoly``.  Normal forms use the
leftmost match and, at that position, the lowest rule index.  Words are
memoised per system, so repeated reductions share work.

Two orders appear here.  ``compare`` is the chained partial order used to
certify termination (inversions, then total degree, then group distance).
``completion_key`` is a total monomial order (word degree, group weight,
lexicographic) used internally by ``complete_system`` to orient new
relations; it is never used to certify anything.
"""

from __future__ import annotations

import enum
import heapq
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .centralring import ZERO_EXP, CentralPoly, exp_add, exp_degree
from .coeff import ONE, LaurentPoly, rf_div
from .freealg import SIGMA05, GeneratorTable, NCPoly

__all__ = [
    "Rule",
    "RuleSystem",
    "Order",
    "OrderKey",
    "StepBudgetExceeded",
    "NonPairwiseRule",
    "DerivedRuleIncomparable",
    "NoProgress",
    "LeadingCoefficientNotUnit",
    "order_key",
    "compare",
    "completion_key",
    "normal_form",
    "enumerate_ambiguities",
    "check_confluence",
    "check_compatibility",
    "complete_system",
    "irreducible_monomials",
    "rules_to_json",
    "rules_from_json",
    "random_word",
    "check_strategy_independence",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**6
ORIGINS = ("seed-appendix", "generator-generating", "propagated", "commutator-closure")


class StepBudgetExceeded(RuntimeError):
    def __init__(self, budget: int, witness):
        super().__init__(f"normal form did not finish within {budget} reductions (at {witness})")
        self.budget = budget
        self.witness = witness


class NonPairwiseRule(ValueError):
    pass


class DerivedRuleIncomparable(ValueError):
    def __init__(self, rule: "Rule", monomial):
        super().__init__(f"derived rule {rule.lhs} has a right-hand monomial not below it: {monomial}")
        self.rule = rule
        self.monomial = monomial


class NoProgress(RuntimeError):
    def __init__(self, word):
        super().__init__(f"completion stalled at {word}")
        self.word = word


class LeadingCoefficientNotUnit(ValueError):
    def __init__(self, word, coeff):
        super().__init__(f"leading coefficient of {word} is not a unit: {coeff}")
        self.word = word
        self.coeff = coeff


@dataclass(frozen=True)
class Rule:
    lhs: tuple
    rhs: NCPoly
    origin: str = "seed-appendix"

    def lhs_poly(self) -> NCPoly:
        return NCPoly._raw({(self.lhs, ZERO_EXP): ONE}, self.rhs.table)


# the chained partial order ---------------------------------------------------

class Order(enum.Enum):
    LESS = "Less"
    GREATER = "Greater"
    EQUAL = "Equal"
    INCOMPARABLE = "Incomparable"


def inversions(w: Sequence[int]) -> int:
    """Pairs k < l with w[k] > w[l]."""
    n = 0
    for k in range(len(w)):
        a = w[k]
        for l in range(k + 1, len(w)):
            if a > w[l]:
                n += 1
    return n


def nearness(w: Sequence[int], groups: Sequence[int]) -> int:
    g = [groups[i] for i in w]
    return sum(abs(a - b) for a in g for b in g)


@dataclass(frozen=True)
class OrderKey:
    rho: tuple  # (length, inversion sum) pairs with nonzero sum, ascending length
    total_degree: int
    max_distinct: int
    nearness_sum: int

    @property
    def reduced_degree(self) -> int:
        return self.rho[-1][0] if self.rho else 0

    def rho_at(self, n: int) -> int:
        return dict(self.rho).get(n, 0)


def order_key(x: NCPoly) -> OrderKey:
    table = x.table
    rho: dict = {}
    for w in x.words():
        inv = inversions(w)
        if inv:
            rho[len(w)] = rho.get(len(w), 0) + inv
    if x.terms:
        degs = {k: table.word_degree(k[0]) + exp_degree(k[1]) for k in x.terms}
        top = max(degs.values())
        tops = {k[0] for k, d in degs.items() if d == top}
    else:
        top, tops = -1, set()
    return OrderKey(
        rho=tuple(sorted(rho.items())),
        total_degree=top,
        max_distinct=max((len(set(w)) for w in tops), default=0),
        nearness_sum=sum(nearness(w, table.groups) for w in tops),
    )


def _cmp(a, b) -> int:
    return (a > b) - (a < b)


def compare_keys(ka: OrderKey, kb: OrderKey) -> int:
    """-1, 0 or 1; 0 means the three tiers tie."""
    c = _cmp(ka.reduced_degree, kb.reduced_degree)
    if c:
        return c
    n = ka.reduced_degree
    c = _cmp(ka.rho_at(n), kb.rho_at(n))
    if c:
        return c
    c = _cmp(ka.total_degree, kb.total_degree)
    if c:
        return c
    c = _cmp(ka.max_distinct, kb.max_distinct)
    if c:
        return c
    # larger nearness is smaller
    return _cmp(kb.nearness_sum, ka.nearness_sum)


def compare(a: NCPoly, b: NCPoly, table: GeneratorTable | None = None) -> Order:
    if a == b:
        return Order.EQUAL
    c = compare_keys(order_key(a), order_key(b))
    if c < 0:
        return Order.LESS
    if c > 0:
        return Order.GREATER
    return Order.INCOMPARABLE


# internal monomial order for completion ---------------------------------------

# group weights break ties between words of equal degree so that a product
# of simple loops sits above the extended generator it defines
GROUP_WEIGHT = {1: 2, 2: 3, 3: 4, 4: 4, 5: 3}


def completion_key(table: GeneratorTable) -> Callable[[tuple], tuple]:
    deg = table.degrees
    wt = tuple(GROUP_WEIGHT[g] for g in table.groups)

    def key(w: tuple) -> tuple:
        return (sum(deg[i] for i in w), sum(wt[i] for i in w), w)

    return key


# rule systems -----------------------------------------------------------------

def _add(out: dict, key, c) -> None:
    v = out.get(key)
    if v is None:
        out[key] = c
    else:
        v = v + c
        if v:
            out[key] = v
        else:
            del out[key]


class RuleSystem:
    """An ordered list of rules with a memoised word normal form."""

    def __init__(self, rules: Iterable[Rule], table: GeneratorTable = SIGMA05, budget: int = DEFAULT_BUDGET):
        self.rules: tuple[Rule, ...] = tuple(rules)
        self.table = table
        self.budget = budget
        self._by_lhs: dict = {}
        for i, r in enumerate(self.rules):
            if r.lhs in self._by_lhs:
                raise ValueError(f"duplicate left-hand side {table.word_names(r.lhs)}")
            self._by_lhs[r.lhs] = i
        self._lengths = sorted({len(r.lhs) for r in self.rules})
        self._rhs_terms = [list(r.rhs.terms.items()) for r in self.rules]
        self._cache: dict = {}

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def rule_for(self, lhs: tuple) -> Rule | None:
        i = self._by_lhs.get(tuple(lhs))
        return None if i is None else self.rules[i]

    @property
    def lhs_set(self) -> set:
        return set(self._by_lhs)

    # matching ---------------------------------------------------------
    def find_match(self, w: tuple, strategy: str = "leftmost"):
        """(position, rule index) of the chosen redex, or None."""
        n = len(w)
        positions = range(n) if strategy == "leftmost" else range(n - 1, -1, -1)
        for p in positions:
            best = None
            for L in self._lengths:
                if p + L <= n:
                    i = self._by_lhs.get(w[p : p + L])
                    if i is not None and (best is None or (i < best if strategy == "leftmost" else i > best)):
                        best = i
            if best is not None:
                return p, best
        return None

    def is_irreducible(self, w: tuple) -> bool:
        return self.find_match(w) is None

    # normal forms -----------------------------------------------------
    def word_nf(self, w: tuple, strategy: str = "leftmost") -> dict:
        """Normal form of a single word as ``{(word, exps): scalar}``."""
        cache = self._cache.setdefault(strategy, {})
        w = tuple(w)
        if w in cache:
            return cache[w]
        steps = 0
        stack = [w]
        children: dict = {}
        while stack:
            top = stack[-1]
            if top in cache:
                stack.pop()
                continue
            ch = children.get(top)
            if ch is None:
                m = self.find_match(top, strategy)
                if m is None:
                    cache[top] = {(top, ZERO_EXP): ONE}
                    stack.pop()
                    continue
                p, i = m
                L = len(self.rules[i].lhs)
                pre, post = top[:p], top[p + L :]
                ch = [(pre + u + post, e, c) for (u, e), c in self._rhs_terms[i]]
                children[top] = ch
                steps += 1
                if steps > self.budget:
                    raise StepBudgetExceeded(self.budget, self.table.word_names(top))
            pending = [cw for cw, _, _ in ch if cw not in cache]
            if pending:
                if len(stack) > self.budget:
                    raise StepBudgetExceeded(self.budget, self.table.word_names(top))
                stack.extend(pending)
                continue
            out: dict = {}
            for cw, e, c in ch:
                for (u, e2), c2 in cache[cw].items():
                    _add(out, (u, exp_add(e, e2) if e != ZERO_EXP else e2), c * c2)
            cache[top] = out
            del children[top]
            stack.pop()
        return cache[w]

    def normal_form(self, x: NCPoly, strategy: str = "leftmost") -> NCPoly:
        out: dict = {}
        for (w, e), c in x.terms.items():
            for (u, e2), c2 in self.word_nf(w, strategy).items():
                _add(out, (u, exp_add(e, e2) if e != ZERO_EXP else e2), c * c2)
        return NCPoly._raw(out, x.table)

    def clear_cache(self) -> None:
        self._cache.clear()


def normal_form(x: NCPoly, sys: RuleSystem, strategy: str = "leftmost") -> NCPoly:
    return sys.normal_form(x, strategy)


# ambiguities and confluence --------------------------------------------------

def enumerate_ambiguities(sys: RuleSystem) -> list[tuple[int, int, tuple]]:
    """Overlap words abc with ab and bc both left-hand sides (rule indices, word)."""
    for r in sys.rules:
        if len(r.lhs) != 2:
            raise NonPairwiseRule(f"left-hand side {sys.table.word_names(r.lhs)} has length {len(r.lhs)}")
    by_first: dict = {}
    for j, r in enumerate(sys.rules):
        by_first.setdefault(r.lhs[0], []).append(j)
    out = []
    for i, r in enumerate(sys.rules):
        a, b = r.lhs
        for j in by_first.get(b, ()):
            out.append((i, j, (a, b, sys.rules[j].lhs[1])))
    return out


def _overlap_difference(sys: RuleSystem, i: int, j: int, word: tuple) -> tuple[NCPoly, NCPoly]:
    """Reduce ``word`` first by rule i at the left, then by rule j at the right."""
    ri, rj = sys.rules[i], sys.rules[j]
    table = sys.table
    left = ri.rhs * NCPoly._raw({(word[len(ri.lhs) :], ZERO_EXP): ONE}, table)
    right = NCPoly._raw({(word[: len(word) - len(rj.lhs)], ZERO_EXP): ONE}, table) * rj.rhs
    return left, right


def check_confluence(sys: RuleSystem, ambiguities=None) -> dict:
    if ambiguities is None:
        ambiguities = enumerate_ambiguities(sys)
    report = {"ambiguities": len(ambiguities), "resolved": 0, "failures": []}
    for i, j, word in ambiguities:
        left, right = _overlap_difference(sys, i, j, word)
        a, b = sys.normal_form(left), sys.normal_form(right)
        if a == b:
            report["resolved"] += 1
        else:
            report["failures"].append(
                {"word": sys.table.word_names(word), "nf_via_A": str(a), "nf_via_B": str(b)}
            )
    report["ok"] = not report["failures"]
    return report


def check_compatibility(sys: RuleSystem) -> dict:
    """Every right-hand monomial must lie strictly below its left-hand side."""
    report = {"rules": len(sys.rules), "violations": []}
    table = sys.table
    for idx, r in enumerate(sys.rules):
        lk = order_key(r.lhs_poly())
        for key, c in r.rhs.terms.items():
            mono = NCPoly._raw({key: ONE}, table)
            if mono == r.lhs_poly() or compare_keys(order_key(mono), lk) >= 0:
                report["violations"].append(
                    {"rule": idx, "lhs": table.word_names(r.lhs), "monomial": str(mono)}
                )
    report["ok"] = not report["violations"]
    return report


# completion --------------------------------------------------------------------

def _leading(p: NCPoly, key) -> tuple[tuple, CentralPoly]:
    top = max(p.words(), key=key)
    return top, p.coefficient(top)


def _orient(p: NCPoly, key, origin: str) -> Rule:
    top, c = _leading(p, key)
    if not c.is_scalar():
        raise LeadingCoefficientNotUnit(p.table.word_names(top), str(c))
    inv = rf_div(ONE, c.scalar()).simplify()
    rest = {k: -v * inv for k, v in p.terms.items() if k[0] != top}
    return Rule(top, NCPoly._raw({k: v for k, v in rest.items() if v}, p.table), origin)


def _overlaps(l1: tuple, l2: tuple) -> list[tuple]:
    """Words in which a proper suffix of l1 equals a proper prefix of l2."""
    out = []
    for k in range(1, min(len(l1), len(l2))):
        if l1[-k:] == l2[:k]:
            out.append(l1 + l2[k:])
    return out


def complete_system(
    seed: Sequence[Rule | NCPoly],
    gen_gen: Sequence[Rule] = (),
    table: GeneratorTable = SIGMA05,
    key: Callable | None = None,
    max_degree: int | None = None,
    max_rules: int = 5000,
    log: Callable[[str], None] | None = None,
    certify: bool = False,
) -> RuleSystem:
    """Complete the seed relations to a confluent reduction system.

    Every seed item is a relation (an ``NCPoly`` equal to zero, or a rule
    read as ``lhs - rhs``).  Relations are reduced and oriented by the
    completion order; overlaps are processed lowest degree first, so the
    run is deterministic.  With ``max_degree`` set, overlaps above that
    degree are skipped and the result is complete only up to it.  With
    ``certify`` set, every final rule is checked against ``compare`` and
    ``DerivedRuleIncomparable`` is raised on the first violation.
    """
    key = key or completion_key(table)
    deg = table.degrees
    rules: list[Rule] = []
    by_lhs: dict = {}

    def system() -> RuleSystem:
        return RuleSystem(rules, table)

    sys = system()
    queue: list = []
    counter = 0

    def push(p: NCPoly, origin: str, degree: int):
        nonlocal counter
        heapq.heappush(queue, (degree, counter, origin, p))
        counter += 1

    for item in list(gen_gen) + list(seed):
        origin = "generator-generating" if any(item is g for g in gen_gen) else "seed-appendix"
        p = item.lhs_poly() - item.rhs if isinstance(item, Rule) else item
        if p.terms:
            push(p, getattr(item, "origin", origin) if isinstance(item, Rule) else origin, p.total_degree())

    pairs_done: set = set()

    def add_overlaps(new_idx: int):
        new = rules[new_idx]
        for idx, r in enumerate(rules):
            for a, b in ((new, r), (r, new)) if idx != new_idx else ((new, new),):
                for w in _overlaps(a.lhs, b.lhs):
                    d = sum(deg[i] for i in w)
                    if max_degree is not None and d > max_degree:
                        continue
                    push(("overlap", a.lhs, b.lhs, w), "propagated", d)

    while queue:
        d, _, origin, item = heapq.heappop(queue)
        if isinstance(item, tuple):
            _, l1, l2, w = item
            if (l1, l2, w) in pairs_done:
                continue
            pairs_done.add((l1, l2, w))
            if l1 not in by_lhs or l2 not in by_lhs:
                continue
            r1, r2 = rules[by_lhs[l1]], rules[by_lhs[l2]]
            left = r1.rhs * NCPoly._raw({(w[len(l1) :], ZERO_EXP): ONE}, table)
            right = NCPoly._raw({(w[: len(w) - len(l2)], ZERO_EXP): ONE}, table) * r2.rhs
            p = left - right
        else:
            p = item
        p = sys.normal_form(p)
        if not p.terms:
            continue
        rule = _orient(p, key, origin)
        if len(rule.lhs) == 2 and rule.lhs[0] > rule.lhs[1] and origin == "propagated":
            rule = Rule(rule.lhs, rule.rhs, "commutator-closure")
        rules.append(rule)
        by_lhs[rule.lhs] = len(rules) - 1
        # rules whose left side contains the new one are retired and re-queued
        retired = [i for i, r in enumerate(rules[:-1]) if _contains(r.lhs, rule.lhs)]
        for i in sorted(retired, reverse=True):
            old = rules.pop(i)
            push(old.lhs_poly() - old.rhs, old.origin, table.word_degree(old.lhs))
        by_lhs.clear()
        by_lhs.update({r.lhs: i for i, r in enumerate(rules)})
        if len(rules) > max_rules:
            raise NoProgress(table.word_names(rule.lhs))
        sys = system()
        add_overlaps(by_lhs[rule.lhs])
        if log:
            log(f"rule {len(rules)}: {' '.join(table.word_names(rule.lhs))} (degree {d}, queue {len(queue)})")

    # inter-reduce right-hand sides
    final = []
    for r in rules:
        final.append(Rule(r.lhs, sys.normal_form(r.rhs), r.origin))
    final.sort(key=lambda r: key(r.lhs))
    result = RuleSystem(final, table)
    if certify:
        rep = check_compatibility(result)
        if rep["violations"]:
            v = rep["violations"][0]
            raise DerivedRuleIncomparable(result.rules[v["rule"]], v["monomial"])
    return result


def _contains(w: tuple, sub: tuple) -> bool:
    if len(sub) > len(w):
        return False
    return any(w[i : i + len(sub)] == sub for i in range(len(w) - len(sub) + 1)) and w != sub


def irreducible_monomials(sys: RuleSystem, max_degree: int) -> dict[int, int]:
    """Count irreducible words by degree, 0..max_degree."""
    deg = sys.table.degrees
    counts = {d: 0 for d in range(max_degree + 1)}
    letters = range(len(sys.table))
    lhs = sys.lhs_set
    stack = [()]
    while stack:
        w = stack.pop()
        d = sum(deg[i] for i in w)
        counts[d] += 1
        for a in letters:
            if d + deg[a] > max_degree:
                continue
            v = w + (a,)
            if not any(v[len(v) - L :] in lhs for L in sys._lengths if L <= len(v)):
                stack.append(v)
    return counts


# strategy independence ---------------------------------------------------------

def random_word(table: GeneratorTable, rng, max_degree: int) -> tuple:
    """A uniformly grown word of generator degree at most ``max_degree``."""
    target = rng.randint(2, max_degree)
    w: list = []
    d = 0
    while True:
        fits = [i for i, g in enumerate(table.degrees) if d + g <= target]
        if not fits:
            return tuple(w)
        i = rng.choice(fits)
        w.append(i)
        d += table.degrees[i]


def check_strategy_independence(sys: RuleSystem, samples: int = 1000, max_degree: int = 8, seed: int = 0) -> dict:
    """Leftmost and rightmost reduction must give the same normal form."""
    import random

    rng = random.Random(seed)
    report = {"samples": samples, "max_degree": max_degree, "failures": []}
    for _ in range(samples):
        # one to three words with coefficients +-q^k
        terms: dict = {}
        for _ in range(rng.randint(1, 3)):
            c = LaurentPoly.qpow(rng.randint(-3, 3)) * rng.choice((1, -1))
            _add(terms, (random_word(sys.table, rng, max_degree), ZERO_EXP), c)
        x = NCPoly._raw(terms, sys.table)
        a, b = sys.normal_form(x, "leftmost"), sys.normal_form(x, "rightmost")
        if a != b:
            report["failures"].append({"input": str(x), "leftmost": str(a), "rightmost": str(b)})
    report["ok"] = not report["failures"]
    return report


# JSON ------------------------------------------------------------------------

RULES_FORMAT = "awskein-rules/1"


def rules_to_json(sys: RuleSystem) -> dict:
    return {
        "format": RULES_FORMAT,
        "generators": list(sys.table.names),
        "rules": [
            {"lhs": sys.table.word_names(r.lhs), "rhs": r.rhs.to_json(), "origin": r.origin} for r in sys.rules
        ],
    }


def rules_from_json(data: dict | str, table: GeneratorTable = SIGMA05) -> RuleSystem:
    if isinstance(data, str):
        data = json.loads(data)
    if data.get("format") != RULES_FORMAT:
        raise ValueError(f"unsupported rules format {data.get('format')!r}")
    if list(data["generators"]) != list(table.names):
        raise ValueError("rule file was written for a different generator table")
    rules = [Rule(table.word(d["lhs"]), NCPoly.from_json(d["rhs"], table), d["origin"]) for d in data["rules"]]
    return RuleSystem(rules, table)
