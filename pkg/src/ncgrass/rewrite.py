"""Rewriting engine: oriented relations, truncated diamond-lemma completion,
normal forms, and an independent linear-algebra dimension oracle.

Reduction is deterministic: at each step the leftmost redex is taken, ties
broken by lowest rule index. Completion resolves every overlap and inclusion
ambiguity whose superposition word has weight at most the bound; by the
diamond lemma this makes normal forms unique below that weight.

reduces_to_zero is one-sided on purpose: a zero normal form proves ideal
membership, a nonzero one proves nothing (the bound may simply be too small).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field

from . import symbols as sy
from .fields import Field, check_same_field
from .poly import NcPoly, Word, mul_words, order_key, word_weight


class RewriteRule:
    """lhs word -> rhs polynomial, with lhs strictly dominating every rhs word.

    Module-elimination rules are the one sanctioned exception: their lhs is a
    single module variable and their rhs may be heavier; termination holds
    because each application removes one eliminable variable for good.
    """

    __slots__ = ("lhs", "rhs", "is_module")

    def __init__(self, lhs: Word, rhs: NcPoly, is_module: bool = False):
        self.lhs = tuple(lhs)
        self.rhs = rhs
        self.is_module = is_module
        if not self.lhs:
            raise ValueError("rule lhs may not be the empty word")
        if is_module:
            if len(self.lhs) != 1 or not sy.is_module_var(self.lhs[0]):
                raise ValueError("module rule lhs must be a single module variable")
            return
        if any(sy.is_module_var(s) for s in self.lhs):
            raise ValueError("ordinary rule lhs may not contain module variables")
        lk = order_key(self.lhs)
        for w in rhs.terms:
            if not order_key(w) < lk:
                raise ValueError(f"rule lhs does not dominate rhs word {w}")

    def __repr__(self):
        return f"Rule({'*'.join(sy.sym_name(s) for s in self.lhs)} -> {self.rhs})"


def orient(relation: NcPoly) -> RewriteRule:
    """Monicize and split off the order-leading word as the rule's lhs."""
    if relation.is_zero():
        raise ValueError("cannot orient the zero relation")
    m = relation.monic()
    lw, _ = m.leading()
    f = relation.field
    rhs = NcPoly(f, {w: f.neg(c) for w, c in m.terms.items() if w != lw})
    return RewriteRule(lw, rhs)


def orient_module(relation: NcPoly, eliminated: int) -> RewriteRule:
    """Orient x_j - (expansion) as the elimination rule x_j -> expansion."""
    f = relation.field
    lhs = (eliminated,)
    c = relation.terms.get(lhs)
    if c is None:
        raise ValueError("eliminated variable does not occur linearly")
    inv = f.inv(c)
    rhs = NcPoly(
        f, {w: f.neg(f.mul(inv, cc)) for w, cc in relation.terms.items() if w != lhs}
    )
    return RewriteRule(lhs, rhs, is_module=True)


@dataclass
class Ambiguity:
    """One superposition of two rule lhs words with its two one-step reductions."""

    word: Word
    left: NcPoly
    right: NcPoly

    def difference(self) -> NcPoly:
        return self.left - self.right


def overlap_ambiguities(r1: RewriteRule, r2: RewriteRule, field: Field) -> list[Ambiguity]:
    """All proper overlaps (suffix of r1.lhs = prefix of r2.lhs) and inclusions
    of r2.lhs inside r1.lhs. Module rules never superpose with anything."""
    if r1.is_module or r2.is_module:
        return []
    out = []
    u, v = r1.lhs, r2.lhs
    for k in range(1, min(len(u), len(v))):
        if u[len(u) - k :] == v[:k]:
            tail = v[k:]
            head = u[: len(u) - k]
            sup = u + tail
            left = r1.rhs * NcPoly.from_word(field, tail) if tail else r1.rhs
            right = NcPoly.from_word(field, head) * r2.rhs if head else r2.rhs
            out.append(Ambiguity(sup, left, right))
    if len(v) <= len(u):
        for pos in range(len(u) - len(v) + 1):
            if u[pos : pos + len(v)] == v:
                mid = r2.rhs
                if pos:
                    mid = NcPoly.from_word(field, u[:pos]) * mid
                if pos + len(v) < len(u):
                    mid = mid * NcPoly.from_word(field, u[pos + len(v) :])
                out.append(Ambiguity(u, r1.rhs, mid))
    return out


class RewriteSystem:
    """An ordered list of rules over one coefficient field, with memoized
    word normal forms. Rule order matters: it is the reduction tie-break."""

    def __init__(self, field: Field, rules: list[RewriteRule] | None = None):
        self.field = field
        self.rules: list[RewriteRule] = []
        self.completed_bound: int | None = None
        # set when completion derives a unit: the quotient is the zero ring
        self.collapsed = False
        self._by_first: dict[int, list[tuple[int, RewriteRule]]] = {}
        self._nf_cache: dict[Word, dict] = {}
        self._redex_cache: dict[Word, tuple | None] = {}
        for r in rules or []:
            self.add_rule(r)

    @staticmethod
    def from_relations(field: Field, relations, module_rules=()) -> "RewriteSystem":
        s = RewriteSystem(field)
        for rel in relations:
            check_same_field(field, rel.field)
            s.add_rule(orient(rel))
        for mr in module_rules:
            s.add_rule(mr)
        return s

    def add_rule(self, rule: RewriteRule) -> None:
        idx = len(self.rules)
        self.rules.append(rule)
        self._by_first.setdefault(rule.lhs[0], []).append((idx, rule))
        self._nf_cache.clear()
        self._redex_cache.clear()

    def copy(self) -> "RewriteSystem":
        s = RewriteSystem(self.field)
        for r in self.rules:
            s.add_rule(r)
        s.collapsed = self.collapsed
        return s

    # reduction

    def find_redex(self, w: Word):
        """(position, rule index) of the leftmost, lowest-index match; None if irreducible."""
        got = self._redex_cache.get(w)
        if got is not None or w in self._redex_cache:
            return got
        n = len(w)
        best = None
        for pos in range(n):
            cands = self._by_first.get(w[pos])
            if not cands:
                continue
            for idx, rule in cands:
                L = len(rule.lhs)
                if pos + L <= n and w[pos : pos + L] == rule.lhs:
                    if best is None or idx < best[1]:
                        best = (pos, idx)
            if best is not None:
                break
        self._redex_cache[w] = best
        return best

    def is_irreducible(self, w: Word) -> bool:
        return self.find_redex(w) is None

    def _expand(self, w: Word, pos: int, idx: int) -> dict:
        rule = self.rules[idx]
        prefix = w[:pos]
        suffix = w[pos + len(rule.lhs) :]
        f = self.field
        out: dict = {}
        for rw, rc in rule.rhs.terms.items():
            nw = mul_words(mul_words(prefix, rw), suffix)
            c0 = out.get(nw)
            out[nw] = f.add(c0, rc) if c0 is not None else rc
        return {wd: c for wd, c in out.items() if not f.is_zero(c)}

    def nf_word(self, w: Word) -> dict:
        """Normal form of a single word, as a terms dict. Memoized."""
        cache = self._nf_cache
        got = cache.get(w)
        if got is not None:
            return got
        f = self.field
        stack = [w]
        while stack:
            cur = stack[-1]
            if cur in cache:
                stack.pop()
                continue
            red = self.find_redex(cur)
            if red is None:
                cache[cur] = {cur: f.one}
                stack.pop()
                continue
            step = self._expand(cur, red[0], red[1])
            missing = [u for u in step if u not in cache]
            if missing:
                stack.extend(missing)
                continue
            acc: dict = {}
            for u, c in step.items():
                for v, cv in cache[u].items():
                    c0 = acc.get(v)
                    c2 = f.add(c0, f.mul(c, cv)) if c0 is not None else f.mul(c, cv)
                    if f.is_zero(c2):
                        acc.pop(v, None)
                    else:
                        acc[v] = c2
            cache[cur] = acc
            stack.pop()
        return cache[w]

    def normal_form(self, p: NcPoly) -> NcPoly:
        check_same_field(self.field, p.field)
        f = self.field
        if self.collapsed:
            return NcPoly(f, {})
        acc: dict = {}
        for w, c in p.terms.items():
            for v, cv in self.nf_word(w).items():
                c0 = acc.get(v)
                c2 = f.add(c0, f.mul(c, cv)) if c0 is not None else f.mul(c, cv)
                if f.is_zero(c2):
                    acc.pop(v, None)
                else:
                    acc[v] = c2
        return NcPoly(f, acc)


def complete(system: RewriteSystem, bound: int) -> RewriteSystem:
    """Truncated completion: resolve all ambiguities with superposition weight
    at most `bound`, iterating to a fixpoint. Deterministic: tasks are handled
    in order of (superposition weight, rule pair, enumeration index), and each
    surviving difference is oriented and appended in that order."""
    s = system.copy()
    f = s.field
    heap: list = []
    records: dict = {}
    serial = 0

    def push_pair(i: int, j: int) -> None:
        nonlocal serial
        ambs = overlap_ambiguities(s.rules[i], s.rules[j], f)
        for k, amb in enumerate(ambs):
            wt = word_weight(amb.word)
            if wt > bound:
                continue
            key = (wt, i, j, k, serial)
            records[key] = amb
            heapq.heappush(heap, key)
            serial += 1

    n0 = len(s.rules)
    for i in range(n0):
        for j in range(n0):
            push_pair(i, j)

    while heap:
        key = heapq.heappop(heap)
        amb = records.pop(key)
        h = s.normal_form(amb.difference())
        if h.is_zero():
            continue
        if h.leading()[0] == ():
            # a nonzero scalar lies in the ideal, so the presented algebra is
            # the zero ring and every element reduces to zero
            s.collapsed = True
            break
        s.add_rule(orient(h))
        m = len(s.rules) - 1
        for k in range(m + 1):
            push_pair(k, m)
            if k != m:
                push_pair(m, k)
    s.completed_bound = bound
    return s


@dataclass
class ReduceOutcome:
    """Zero is a proof of ideal membership; Inconclusive is just a bound report."""

    zero: bool
    bound: int
    normal_form: NcPoly

    @property
    def label(self) -> str:
        return "Zero" if self.zero else f"Inconclusive(bound={self.bound})"


def reduces_to_zero(p: NcPoly, system: RewriteSystem, bound: int | None = None) -> ReduceOutcome:
    """Reduce p with `system`, completing it first if it was not completed.
    Never claims nonzero-ness."""
    if system.completed_bound is None:
        if bound is None:
            raise ValueError("an uncompleted system needs an explicit bound")
        system = complete(system, bound)
    b = system.completed_bound
    nf = system.normal_form(p)
    return ReduceOutcome(nf.is_zero(), b, nf)


# independent dimension oracle (no rewriting involved)


def words_of_weight(generators, weight: int) -> list[Word]:
    """All words over `generators` of exactly the given total weight,
    in deterministic order."""
    gens = sorted(generators, key=lambda s: sy.KEY[s])
    out: list[Word] = []

    def rec(prefix: tuple, left: int):
        if left == 0:
            out.append(prefix)
            return
        for g in gens:
            wg = sy.WEIGHT[g]
            if wg <= left:
                rec(prefix + (g,), left - wg)

    rec((), weight)
    return out


def _relation_weight(rel: NcPoly) -> int:
    wts = {word_weight(w) for w in rel.terms}
    if len(wts) != 1:
        raise ValueError("truncated dimension needs homogeneous relations")
    return wts.pop()


def _rank(rows, field: Field, key) -> int:
    """Exact Gaussian elimination on sparse rows (dict monomial -> coeff)."""
    pivots: dict = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            lead = max(row, key=key)
            piv = pivots.get(lead)
            if piv is None:
                c = field.inv(row[lead])
                pivots[lead] = {m: field.mul(c, v) for m, v in row.items()}
                rank += 1
                break
            c = row[lead]
            nxt = dict(row)
            for m, v in piv.items():
                v2 = field.sub(nxt.get(m, field.zero), field.mul(c, v))
                if field.is_zero(v2):
                    nxt.pop(m, None)
                else:
                    nxt[m] = v2
            row = nxt
    return rank


def truncated_dimension(field: Field, generators, relations, degree: int) -> int:
    """Dimension of the weight-`degree` slice of the quotient algebra, computed
    by spanning { u * r * v } and row-reducing exactly. Independent of the
    rewrite machinery by construction."""
    basis = words_of_weight(generators, degree)
    rows = []
    for rel in relations:
        check_same_field(field, rel.field)
        k = _relation_weight(rel)
        if k > degree:
            continue
        for wl in range(0, degree - k + 1):
            for u in words_of_weight(generators, wl):
                for v in words_of_weight(generators, degree - k - wl):
                    up = NcPoly.from_word(field, u)
                    vp = NcPoly.from_word(field, v)
                    prod = up * rel * vp
                    if not prod.is_zero():
                        rows.append(prod.terms)
    return len(basis) - _rank(rows, field, order_key)


def count_irreducible_words(system: RewriteSystem, generators, weight: int) -> int:
    return sum(1 for w in words_of_weight(generators, weight) if system.is_irreducible(w))


def commutative_truncated_dimension(field: Field, generators, relations, degree: int) -> int:
    """Same oracle for the abelianization: monomials are sorted tuples."""
    from itertools import combinations_with_replacement

    gens = sorted(generators, key=lambda s: sy.KEY[s])
    if any(sy.WEIGHT[g] != 1 for g in gens):
        raise ValueError("commutative oracle expects weight-1 generators")
    monomials = [tuple(m) for m in combinations_with_replacement(gens, degree)]
    rows = []
    for rel in relations:
        degs = {len(m) for m in rel.terms}
        if len(degs) > 1:
            raise ValueError("inhomogeneous commutative relation")
        if not rel.terms:
            continue
        k = degs.pop()
        if k > degree:
            continue
        for m in combinations_with_replacement(gens, degree - k):
            row: dict = {}
            for rm, c in rel.terms.items():
                mm = tuple(sorted(m + rm, key=lambda s: sy.KEY[s]))
                c0 = row.get(mm)
                row[mm] = field.add(c0, c) if c0 is not None else c
            row = {m2: c for m2, c in row.items() if not field.is_zero(c)}
            if row:
                rows.append(row)
    monkey = lambda m: tuple(sy.KEY[s] for s in m)
    return len(monomials) - _rank(rows, field, monkey)
