"""Chart atlas of the noncommutative Grassmannian NCG(2,4).

Six charts indexed by 2-subsets of {1,2,3,4}. Each chart algebra is a free
algebra on four entries a(chart; i, j), i in the chart and j outside, modulo
two row-commutation relations and one quartet relation. Ordered chart pairs
are adjacent (share one index) or disjoint; each kind has a canonical pair
with hand-written transition formulas, and every other pair is obtained by
relabeling along a permutation of {1,2,3,4} (symmetry transport).

Overlap algebras are represented over the base chart: the base chart algebra
with the required elements inverted. Foreign charts enter only through
homomorphisms into that localization.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, permutations

from . import symbols as sy
from .fields import QQ, Field
from .poly import Hom, NcPoly, commutator, poly_str
from .rewrite import RewriteRule, RewriteSystem, complete, orient_module

Chart = tuple  # tuple[int, ...], sorted


def _chart(c) -> Chart:
    return tuple(sorted(c))


def all_charts(m: int = 2, n: int = 4) -> list[Chart]:
    return [tuple(c) for c in combinations(range(1, n + 1), m)]


def validate_chart(m: int, n: int, lam) -> Chart:
    lam = _chart(lam)
    if len(lam) != m or len(set(lam)) != m:
        raise ValueError(f"chart size mismatch: {lam} is not a {m}-subset")
    if any(i < 1 or i > n for i in lam):
        raise ValueError(f"index out of range in chart {lam} for n={n}")
    return lam


def overlap_type(lam, lam2) -> str:
    lam = validate_chart(2, 4, lam)
    lam2 = validate_chart(2, 4, lam2)
    if lam == lam2:
        return "equal"
    shared = len(set(lam) & set(lam2))
    if shared == 1:
        return "adjacent"
    return "disjoint"


# ---------------------------------------------------------------------------
# chart algebras


def chart_relations(m: int, n: int, lam, field: Field = QQ) -> list[NcPoly]:
    """Defining relations of one chart algebra of NCG(m, n), monic, deduplicated.

    Row relations: entries in one row commute pairwise. Quartet relations: for
    rows i1 < i2 and columns j1 != j2, [a(i1,j1), a(i2,j2)] = [a(i1,j2), a(i2,j1)].
    """
    lam = validate_chart(m, n, lam)
    comp = [j for j in range(1, n + 1) if j not in lam]
    g = lambda i, j: NcPoly.gen(field, sy.entry(lam, i, j))
    rels: list[NcPoly] = []
    seen = set()
    for i in lam:
        for j1, j2 in combinations(comp, 2):
            r = commutator(g(i, j1), g(i, j2)).monic()
            key = poly_str(r)
            if key not in seen:
                seen.add(key)
                rels.append(r)
    for i1, i2 in combinations(lam, 2):
        for j1 in comp:
            for j2 in comp:
                if j1 == j2:
                    continue
                r = commutator(g(i1, j1), g(i2, j2)) - commutator(g(i1, j2), g(i2, j1))
                if r.is_zero():
                    continue
                r = r.monic()
                key = poly_str(r)
                if key not in seen:
                    seen.add(key)
                    rels.append(r)
    return rels


def chart_relations_bruteforce(m: int, n: int, lam, field: Field = QQ) -> set:
    """Independent enumeration used as the dedup oracle: every row commutator
    and every quartet shape, canonicalized, collected into a set of strings."""
    lam = validate_chart(m, n, lam)
    comp = [j for j in range(1, n + 1) if j not in lam]
    g = lambda i, j: NcPoly.gen(field, sy.entry(lam, i, j))
    out = set()
    for i in lam:
        for j1 in comp:
            for j2 in comp:
                if j1 != j2:
                    out.add(poly_str(commutator(g(i, j1), g(i, j2)).monic()))
    for i1 in lam:
        for i2 in lam:
            if i1 == i2:
                continue
            for j1 in comp:
                for j2 in comp:
                    if j1 == j2:
                        continue
                    r = commutator(g(i1, j1), g(i2, j2)) - commutator(g(i1, j2), g(i2, j1))
                    if not r.is_zero():
                        out.add(poly_str(r.monic()))
    return out


def universal_module_relations(lam, n: int = 4, field: Field = QQ) -> list[NcPoly]:
    """x_j = sum over i in the chart of a(i,j) x_i, one relation per j outside."""
    lam = validate_chart(len(_chart(lam)), n, lam)
    rels = []
    for j in range(1, n + 1):
        if j in lam:
            continue
        p = NcPoly.gen(field, sy.module_var(j))
        for i in lam:
            p = p - NcPoly.from_pairs(field, [(1, (sy.entry(lam, i, j), sy.module_var(i)))])
        rels.append(p)
    return rels


def module_rules(lam, n: int = 4, field: Field = QQ) -> list[RewriteRule]:
    lam = _chart(lam)
    rules = []
    for rel in universal_module_relations(lam, n, field):
        j = next(
            s for w in rel.terms for s in w if sy.is_module_var(s) and sy.sym(s).i not in lam
        )
        rules.append(orient_module(rel, j))
    return rules


# ---------------------------------------------------------------------------
# presentations


@dataclass
class AlgebraPresentation:
    """A localization of one chart algebra, as an explicit presentation.

    definitions drive commutative evaluation: entries get assigned first, then
    each (symbol, expr, as_inverse) in order sets symbol := eval(expr) or its
    reciprocal. inverted lists the actual elements that were made invertible.
    """

    name: str
    field: Field
    base_chart: Chart | None
    generators: tuple
    commutation_relations: tuple
    definition_relations: tuple = ()
    inverse_relations: tuple = ()
    module_relations: tuple = ()
    definitions: tuple = ()  # (sid, NcPoly expr, bool as_inverse)
    inverted: tuple = ()  # NcPoly elements

    @property
    def relations(self) -> tuple:
        return self.commutation_relations + self.definition_relations + self.inverse_relations

    def rewrite_rules(self) -> list[RewriteRule]:
        from .rewrite import orient

        rules = [orient(r) for r in self.relations]
        for rel in self.module_relations:
            j = next(
                s
                for w in rel.terms
                for s in w
                if sy.is_module_var(s) and sy.sym(s).i not in (self.base_chart or ())
            )
            rules.append(orient_module(rel, j))
        return rules

    def key(self) -> tuple:
        return (
            self.field.key,
            self.generators,
            tuple(poly_str(r) for r in self.relations),
            tuple(poly_str(r) for r in self.module_relations),
        )

    def completed(self, bound: int) -> RewriteSystem:
        return _completed_system(self, bound)

    def names(self) -> dict:
        out = {sy.sym_name(s): s for s in self.generators}
        for rel in self.module_relations:
            for w in rel.terms:
                for s in w:
                    if sy.is_module_var(s):
                        out[sy.sym_name(s)] = s
        return out


_completion_cache: dict = {}


def _completed_system(pres: AlgebraPresentation, bound: int) -> RewriteSystem:
    ck = (pres.key(), bound)
    got = _completion_cache.get(ck)
    if got is None:
        base = RewriteSystem(pres.field)
        for rule in pres.rewrite_rules():
            base.add_rule(rule)
        got = complete(base, bound)
        _completion_cache[ck] = got
    return got


def clear_caches() -> None:
    _completion_cache.clear()


def chart_presentation(
    lam, field: Field = QQ, with_module: bool = False, n: int = 4
) -> AlgebraPresentation:
    m = len(_chart(lam))
    lam = validate_chart(m, n, lam)
    gens = tuple(sy.entry(lam, i, j) for i in lam for j in range(1, n + 1) if j not in lam)
    rels = tuple(chart_relations(m, n, lam, field))
    mods = tuple(universal_module_relations(lam, n, field)) if with_module else ()
    name = ("F" if with_module else "R") + "(" + ",".join(map(str, lam)) + ")"
    return AlgebraPresentation(
        name=name,
        field=field,
        base_chart=lam,
        generators=gens,
        commutation_relations=rels,
        module_relations=mods,
    )


# ---------------------------------------------------------------------------
# canonical transition formulas
#
# Generator descriptors: ("a", side, i, j), ("ainv", side, i, j), ("d", side),
# ("dinv", side); side 0 is the first chart of the pair, side 1 the second.
# Indices are written for the canonical pairs ({1,2},{2,3}) and ({1,2},{3,4})
# and relabeled along the transport permutation for any other pair.
# Each formula is a tuple of signed words.

ADJACENT_TO_BASE = {
    ("a", 1, 2, 4): (
        (1, (("a", 0, 2, 4),)),
        (-1, (("ainv", 0, 1, 3), ("a", 0, 1, 4), ("a", 0, 2, 3))),
    ),
    ("a", 1, 2, 1): ((-1, (("ainv", 0, 1, 3), ("a", 0, 2, 3))),),
    ("a", 1, 3, 4): ((1, (("ainv", 0, 1, 3), ("a", 0, 1, 4))),),
    ("a", 1, 3, 1): ((1, (("ainv", 0, 1, 3),)),),
}

# bookkeeping image needed to substitute the reverse formulas: the pivot of
# the far chart is invertible, with inverse the base pivot itself
ADJACENT_TO_BASE_EXTRA = {
    ("ainv", 1, 3, 1): ((1, (("a", 0, 1, 3),)),),
}

ADJACENT_FROM_BASE = {
    ("a", 0, 1, 3): ((1, (("ainv", 1, 3, 1),)),),
    ("a", 0, 1, 4): ((1, (("ainv", 1, 3, 1), ("a", 1, 3, 4))),),
    ("a", 0, 2, 3): ((-1, (("ainv", 1, 3, 1), ("a", 1, 2, 1))),),
    ("a", 0, 2, 4): (
        (1, (("a", 1, 2, 4),)),
        (-1, (("ainv", 1, 3, 1), ("a", 1, 3, 4), ("a", 1, 2, 1))),
    ),
}

ADJACENT_FROM_BASE_EXTRA = {
    ("ainv", 0, 1, 3): ((1, (("a", 1, 3, 1),)),),
}

DISJOINT_TO_BASE = {
    ("a", 1, 3, 1): ((1, (("dinv", 0), ("a", 0, 2, 4))),),
    ("a", 1, 3, 2): ((-1, (("dinv", 0), ("a", 0, 1, 4))),),
    ("a", 1, 4, 1): ((-1, (("dinv", 0), ("a", 0, 2, 3))),),
    ("a", 1, 4, 2): ((1, (("dinv", 0), ("a", 0, 1, 3))),),
}

DISJOINT_TO_BASE_EXTRA = {
    ("d", 1): ((1, (("dinv", 0),)),),
    ("dinv", 1): ((1, (("d", 0),)),),
}

DISJOINT_FROM_BASE = {
    ("a", 0, 1, 3): ((1, (("dinv", 1), ("a", 1, 4, 2))),),
    ("a", 0, 1, 4): ((-1, (("dinv", 1), ("a", 1, 3, 2))),),
    ("a", 0, 2, 3): ((-1, (("dinv", 1), ("a", 1, 4, 1))),),
    ("a", 0, 2, 4): ((1, (("dinv", 1), ("a", 1, 3, 1))),),
}

DISJOINT_FROM_BASE_EXTRA = {
    ("d", 0): ((1, (("dinv", 1),)),),
    ("dinv", 0): ((1, (("d", 1),)),),
}


@dataclass(frozen=True)
class FormulaSet:
    """The four displayed canonical formula groups, mutation-aware."""

    adjacent_to_base: tuple = tuple(ADJACENT_TO_BASE.items())
    adjacent_from_base: tuple = tuple(ADJACENT_FROM_BASE.items())
    disjoint_to_base: tuple = tuple(DISJOINT_TO_BASE.items())
    disjoint_from_base: tuple = tuple(DISJOINT_FROM_BASE.items())

    def group(self, name: str) -> dict:
        return dict(getattr(self, name))


CANONICAL = FormulaSet()


def sign_sites() -> list[tuple]:
    """Every (group, target, term index) carrying a sign in the displayed
    canonical transition formulas."""
    sites = []
    for gname in (
        "adjacent_to_base",
        "adjacent_from_base",
        "disjoint_to_base",
        "disjoint_from_base",
    ):
        for target, terms in getattr(CANONICAL, gname):
            for ti in range(len(terms)):
                sites.append((gname, target, ti))
    return sites


def flip_sign(formulas: FormulaSet, site: tuple) -> FormulaSet:
    gname, target, ti = site
    group = []
    for tgt, terms in getattr(formulas, gname):
        if tgt == target:
            terms = tuple(
                ((-sg if k == ti else sg), word) for k, (sg, word) in enumerate(terms)
            )
        group.append((tgt, terms))
    return FormulaSet(**{**{g: getattr(formulas, g) for g in (
        "adjacent_to_base", "adjacent_from_base", "disjoint_to_base", "disjoint_from_base"
    )}, gname: tuple(group)})


def _desc_sid(desc: tuple, sigma: dict, lam: Chart, lam2: Chart) -> int:
    tag = desc[0]
    if tag in ("a", "ainv"):
        _, side, i, j = desc
        chart = lam if side == 0 else lam2
        mk = sy.entry if tag == "a" else sy.entry_inverse
        return mk(chart, sigma[i], sigma[j])
    side = desc[1]
    c0, c1 = (lam, lam2) if side == 0 else (lam2, lam)
    return sy.quasi_det(c0, c1) if tag == "d" else sy.quasi_det_inverse(c0, c1)


def _materialize(table: dict, sigma: dict, lam: Chart, lam2: Chart, field: Field) -> dict:
    mapping = {}
    for tgt, terms in table.items():
        sid = _desc_sid(tgt, sigma, lam, lam2)
        pairs = [
            (sg, tuple(_desc_sid(d, sigma, lam, lam2) for d in word)) for sg, word in terms
        ]
        mapping[sid] = NcPoly.from_pairs(field, pairs)
    return mapping


def adjacent_sigma(lam, lam2) -> dict:
    """The unique permutation of {1..4} carrying ({1,2},{2,3}) to (lam, lam2)."""
    lam, lam2 = _chart(lam), _chart(lam2)
    if overlap_type(lam, lam2) != "adjacent":
        raise ValueError(f"charts {lam}, {lam2} are not adjacent")
    common = (set(lam) & set(lam2)).pop()
    only1 = (set(lam) - set(lam2)).pop()
    only2 = (set(lam2) - set(lam)).pop()
    rest = (set(range(1, 5)) - {common, only1, only2}).pop()
    return {1: only1, 2: common, 3: only2, 4: rest}


def disjoint_sigmas(lam, lam2) -> list[dict]:
    """All four permutations carrying ({1,2},{3,4}) to (lam, lam2) as chart
    pairs, lexicographically least first. The first and last agree on the
    quasi-determinant; the middle two produce its negative."""
    lam, lam2 = _chart(lam), _chart(lam2)
    if overlap_type(lam, lam2) != "disjoint":
        raise ValueError(f"charts {lam}, {lam2} are not disjoint")
    out = []
    for r in permutations(lam):
        for s in permutations(lam2):
            out.append({1: r[0], 2: r[1], 3: s[0], 4: s[1]})
    out.sort(key=lambda sg: (sg[1], sg[2], sg[3], sg[4]))
    return out


def pivot_entry(lam, lam2) -> int:
    """For adjacent charts: the base entry whose inversion glues them."""
    lam, lam2 = _chart(lam), _chart(lam2)
    i = (set(lam) - set(lam2)).pop()
    j = (set(lam2) - set(lam)).pop()
    return sy.entry(lam, i, j)


def quasi_det_element(lam, lam2, field: Field = QQ) -> NcPoly:
    """For disjoint charts: the 2x2 quasi-determinant over the base chart,
    rows and columns in increasing order."""
    lam, lam2 = _chart(lam), _chart(lam2)
    (r1, r2), (s1, s2) = lam, lam2
    e = lambda i, j: (sy.entry(lam, i, j),)
    return NcPoly.from_pairs(
        field, [(1, e(r1, s1) + e(r2, s2)), (-1, e(r1, s2) + e(r2, s1))]
    )


# ---------------------------------------------------------------------------
# pairwise overlaps


@dataclass
class OverlapPair:
    """Overlap of two charts, presented over the first one."""

    lam: Chart
    lam2: Chart
    kind: str
    presentation: AlgebraPresentation
    to_base: Hom  # far-chart symbols -> base-localization elements
    from_base: Hom  # base symbols -> far-chart expressions
    sigma: dict

    @property
    def field(self) -> Field:
        return self.presentation.field


def _inverse_pair_relations(field: Field, elt: NcPoly, inv_sid: int) -> tuple:
    one = NcPoly.scalar(field, 1)
    inv = NcPoly.gen(field, inv_sid)
    return (elt * inv - one, inv * elt - one)


def adjacent_overlap(
    lam, lam2, field: Field = QQ, formulas: FormulaSet = CANONICAL, sigma: dict | None = None
) -> OverlapPair:
    """Base-chart localization at the pivot entry, plus the transition
    homomorphisms in both directions."""
    lam, lam2 = _chart(lam), _chart(lam2)
    if sigma is None:
        sigma = adjacent_sigma(lam, lam2)
    piv = pivot_entry(lam, lam2)
    piv_inv = sy.inverse_symbol(piv)
    gens = tuple(sy.entry(lam, i, j) for i in lam for j in range(1, 5) if j not in lam)
    piv_poly = NcPoly.gen(field, piv)
    pres = AlgebraPresentation(
        name=f"O({lam[0]},{lam[1]}|{lam2[0]},{lam2[1]})",
        field=field,
        base_chart=lam,
        generators=gens + (piv_inv,),
        commutation_relations=tuple(chart_relations(2, 4, lam, field)),
        inverse_relations=_inverse_pair_relations(field, piv_poly, piv_inv),
        definitions=((piv_inv, piv_poly, True),),
        inverted=(piv_poly,),
    )
    to_base = Hom(
        field,
        {
            **_materialize(formulas.group("adjacent_to_base"), sigma, lam, lam2, field),
            **_materialize(ADJACENT_TO_BASE_EXTRA, sigma, lam, lam2, field),
        },
    )
    from_base = Hom(
        field,
        {
            **_materialize(formulas.group("adjacent_from_base"), sigma, lam, lam2, field),
            **_materialize(ADJACENT_FROM_BASE_EXTRA, sigma, lam, lam2, field),
        },
    )
    return OverlapPair(lam, lam2, "adjacent", pres, to_base, from_base, sigma)


def disjoint_overlap(
    lam, lam2, field: Field = QQ, formulas: FormulaSet = CANONICAL, sigma: dict | None = None
) -> OverlapPair:
    """Two-sided presentation of the overlap of opposite charts: both charts'
    entries together with both quasi-determinants and their inverses, and the
    eight displayed identification formulas imposed as relations. Unlike the
    adjacent case, neither single-chart localization supports the transition
    on its own: the quasi-determinant is not central, so the far chart's
    commutation relations and both formula groups carry independent content.
    The transporting permutation defaults to the lexicographically least
    suitable one."""
    lam, lam2 = _chart(lam), _chart(lam2)
    if sigma is None:
        sigma = disjoint_sigmas(lam, lam2)[0]
    dsym = sy.quasi_det(lam, lam2)
    dinv = sy.quasi_det_inverse(lam, lam2)
    d2sym = sy.quasi_det(lam2, lam)
    d2inv = sy.quasi_det_inverse(lam2, lam)
    gens = tuple(sy.entry(lam, i, j) for i in lam for j in range(1, 5) if j not in lam)
    gens2 = tuple(sy.entry(lam2, i, j) for i in lam2 for j in range(1, 5) if j not in lam2)
    det_sigma = NcPoly.from_pairs(
        field,
        [
            (1, (sy.entry(lam, sigma[1], sigma[3]), sy.entry(lam, sigma[2], sigma[4]))),
            (-1, (sy.entry(lam, sigma[1], sigma[4]), sy.entry(lam, sigma[2], sigma[3]))),
        ],
    )
    det2_sigma = NcPoly.from_pairs(
        field,
        [
            (1, (sy.entry(lam2, sigma[3], sigma[1]), sy.entry(lam2, sigma[4], sigma[2]))),
            (-1, (sy.entry(lam2, sigma[3], sigma[2]), sy.entry(lam2, sigma[4], sigma[1]))),
        ],
    )
    dpoly = NcPoly.gen(field, dsym)
    d2poly = NcPoly.gen(field, d2sym)
    to_map = _materialize(formulas.group("disjoint_to_base"), sigma, lam, lam2, field)
    from_map = _materialize(formulas.group("disjoint_from_base"), sigma, lam, lam2, field)
    subst = tuple(NcPoly.gen(field, s) - img for s, img in to_map.items())
    subst += tuple(NcPoly.gen(field, s) - img for s, img in from_map.items())
    pres = AlgebraPresentation(
        name=f"O({lam[0]},{lam[1]}|{lam2[0]},{lam2[1]})",
        field=field,
        base_chart=lam,
        generators=gens + gens2 + (dsym, dinv, d2sym, d2inv),
        commutation_relations=tuple(chart_relations(2, 4, lam, field))
        + tuple(chart_relations(2, 4, lam2, field)),
        definition_relations=(det_sigma - dpoly, det2_sigma - d2poly) + subst,
        inverse_relations=_inverse_pair_relations(field, dpoly, dinv)
        + _inverse_pair_relations(field, d2poly, d2inv),
        definitions=((dsym, det_sigma, False), (dinv, det_sigma, True))
        + tuple((s, img, False) for s, img in to_map.items())
        + ((d2sym, det2_sigma, False), (d2inv, det2_sigma, True)),
        inverted=(det_sigma,),
    )
    to_base = Hom(
        field,
        {
            **to_map,
            **_materialize(DISJOINT_TO_BASE_EXTRA, sigma, lam, lam2, field),
        },
    )
    from_base = Hom(
        field,
        {
            **from_map,
            **_materialize(DISJOINT_FROM_BASE_EXTRA, sigma, lam, lam2, field),
        },
    )
    return OverlapPair(lam, lam2, "disjoint", pres, to_base, from_base, sigma)


def pair_overlap(lam, lam2, field: Field = QQ, formulas: FormulaSet = CANONICAL) -> OverlapPair:
    kind = overlap_type(lam, lam2)
    if kind == "equal":
        raise ValueError("overlap of a chart with itself is the chart")
    if kind == "adjacent":
        return adjacent_overlap(lam, lam2, field, formulas)
    return disjoint_overlap(lam, lam2, field, formulas)


# ---------------------------------------------------------------------------
# iterated overlaps (triple and longer chains)


@dataclass
class ChainOverlap:
    """Overlap of a chain of charts, presented over the first one. homs maps
    each member chart's symbols (entries plus that hop's adjoined inverses)
    into the presentation."""

    charts: tuple
    presentation: AlgebraPresentation
    homs: dict  # Chart -> Hom
    known_inverses: list  # (element, inverse) pairs, both as presentation polys

    @property
    def field(self) -> Field:
        return self.presentation.field

    def inverse_of(self, elt: NcPoly, bound: int | None = None):
        """An inverse of elt in the presentation, if one is structurally known.

        Single words invert letter by letter; other elements are matched
        against the recorded invertible elements (syntactically, then modulo
        reduction when a bound is supplied)."""
        f = self.field
        if len(elt.terms) == 1:
            ((word, c),) = elt.terms.items()
            out = NcPoly.scalar(f, f.inv(c))
            for s in reversed(word):
                out = out * self._letter_inverse(s)
            return out
        for known, inv in self.known_inverses:
            if known == elt:
                return inv
        if bound is not None:
            system = self.presentation.completed(bound)
            for known, inv in self.known_inverses:
                if system.normal_form(elt - known).is_zero():
                    return inv
        return None

    def _letter_inverse(self, s: int) -> NcPoly:
        f = self.field
        partner = sy.inverse_symbol(s)
        if partner in self.presentation.generators:
            return NcPoly.gen(f, partner)
        for sid, expr, as_inv in self.presentation.definitions:
            if sid == s and as_inv:
                return expr
        raise ValueError(f"no inverse available for letter {sy.sym_name(s)}")


def overlap_chain(
    charts, field: Field = QQ, formulas: FormulaSet = CANONICAL
) -> ChainOverlap:
    """Base-chart presentation of the overlap of a chart chain: walk the chain,
    pushing each hop's transition down to base coordinates and inverting, over
    the base, exactly what the hop requires. Single-entry requirements become
    plain entry inverses; non-monomial ones are adjoined as formal inverses."""
    charts = tuple(_chart(c) for c in charts)
    if len(set(charts)) != len(charts) or len(charts) < 2:
        raise ValueError("chain needs at least two distinct charts")
    base = charts[0]
    gens = [sy.entry(base, i, j) for i in base for j in range(1, 5) if j not in base]
    comm = list(chart_relations(2, 4, base, field))
    def_rels: list[NcPoly] = []
    inv_rels: list[NcPoly] = []
    definitions: list[tuple] = []
    inverted: list[NcPoly] = []
    known: list[tuple] = []

    ident = Hom(field, {e: NcPoly.gen(field, e) for e in gens})
    homs: dict = {base: ident}

    def letter_inverse(s: int) -> NcPoly:
        partner = sy.inverse_symbol(s)
        if partner in gens:
            return NcPoly.gen(field, partner)
        for sid, expr, as_inv in definitions:
            if sid == s and as_inv:
                return expr
        if sy.sym(s).kind == sy.ENTRY and sy.sym(s).chart == base:
            gens.append(partner)
            spoly = NcPoly.gen(field, s)
            inv_rels.extend(_inverse_pair_relations(field, spoly, partner))
            definitions.append((partner, spoly, True))
            inverted.append(spoly)
            known.append((spoly, NcPoly.gen(field, partner)))
            return NcPoly.gen(field, partner)
        raise ValueError(f"cannot invert letter {sy.sym_name(s)} over chart {base}")

    def adjoin_inverse(u: NcPoly, label: int) -> NcPoly:
        """Make u invertible over the base; return the expression standing for
        the formal symbol `label` (the hop-side inverse)."""
        if len(u.terms) == 1:
            ((word, c),) = u.terms.items()
            out = NcPoly.scalar(field, field.inv(c))
            for s in reversed(word):
                out = out * letter_inverse(s)
            known.append((u, out))
            return out
        gens.append(label)
        lab_poly = NcPoly.gen(field, label)
        inv_rels.extend(_inverse_pair_relations(field, u, label))
        definitions.append((label, u, True))
        inverted.append(u)
        known.append((u, lab_poly))
        return lab_poly

    prev = base
    for nxt in charts[1:]:
        # extensions added while processing this hop land in homs[prev], so
        # each stored hom also covers its chart's hop-adjoined inverse symbols
        phi_prev = homs[prev]
        kind = overlap_type(prev, nxt)
        hop = pair_overlap(prev, nxt, field, formulas)
        if kind == "adjacent":
            piv = pivot_entry(prev, nxt)
            u = phi_prev.apply(NcPoly.gen(field, piv))
            inv_expr = adjoin_inverse(u, sy.inverse_symbol(piv))
            phi_prev.mapping[sy.inverse_symbol(piv)] = inv_expr
        else:
            det_elt = quasi_det_element(prev, nxt, field)
            u = phi_prev.apply(det_elt)
            dsym = sy.quasi_det(prev, nxt)
            dinv = sy.quasi_det_inverse(prev, nxt)
            d2sym = sy.quasi_det(nxt, prev)
            d2inv = sy.quasi_det_inverse(nxt, prev)
            if prev == base:
                # adjoin the quasi-determinant symbol itself, like the pair case
                gens.append(dsym)
                dpoly = NcPoly.gen(field, dsym)
                def_rels.append(u - dpoly)
                definitions.append((dsym, u, False))
                gens.append(dinv)
                inv_rels.extend(_inverse_pair_relations(field, dpoly, dinv))
                definitions.append((dinv, u, True))
                inverted.append(u)
                known.append((u, NcPoly.gen(field, dinv)))
                phi_prev.mapping[dsym] = dpoly
                phi_prev.mapping[dinv] = NcPoly.gen(field, dinv)
            else:
                inv_expr = adjoin_inverse(u, dinv)
                phi_prev.mapping[dsym] = u
                phi_prev.mapping[dinv] = inv_expr
            phi_next = Hom(
                field, {s: phi_prev.apply(p) for s, p in hop.to_base.mapping.items()}
            )
            # a disjoint hop imposes structure the base localization does not
            # imply: the far chart's commutation relations, the reverse
            # identification formulas, and a formal inverse for the far
            # quasi-determinant's image
            far_det_img = phi_next.apply(quasi_det_element(nxt, prev, field))
            gens.append(d2inv)
            wpoly = NcPoly.gen(field, d2inv)
            inv_rels.extend(_inverse_pair_relations(field, far_det_img, d2inv))
            definitions.append((d2inv, far_det_img, True))
            inverted.append(far_det_img)
            known.append((far_det_img, wpoly))
            phi_next.mapping[d2sym] = far_det_img
            phi_next.mapping[d2inv] = wpoly
            for rel in chart_relations(2, 4, nxt, field):
                comm.append(phi_next.apply(rel))
            for s, img in hop.from_base.mapping.items():
                if sy.sym(s).kind == sy.ENTRY:
                    def_rels.append(
                        phi_prev.apply(NcPoly.gen(field, s)) - phi_next.apply(img)
                    )
            homs[nxt] = phi_next
            prev = nxt
            continue
        phi_next = Hom(field, {s: phi_prev.apply(p) for s, p in hop.to_base.mapping.items()})
        homs[nxt] = phi_next
        prev = nxt

    pres = AlgebraPresentation(
        name="O(" + "|".join(f"{c[0]},{c[1]}" for c in charts) + ")",
        field=field,
        base_chart=base,
        generators=tuple(gens),
        commutation_relations=tuple(comm),
        definition_relations=tuple(def_rels),
        inverse_relations=tuple(inv_rels),
        definitions=tuple(definitions),
        inverted=tuple(inverted),
    )
    chain = ChainOverlap(charts, pres, homs, known)
    # record quasi-determinant inverses for every disjoint pair in the chain:
    # the far side's quasi-determinant maps to an inverse of the base one
    for a, b in combinations(charts, 2):
        if overlap_type(a, b) == "disjoint" and a in homs and b in homs:
            ea = homs[a].apply(quasi_det_element(a, b, field))
            eb = homs[b].apply(quasi_det_element(b, a, field))
            chain.known_inverses.append((ea, eb))
            chain.known_inverses.append((eb, ea))
    return chain


def triple_ordering(charts) -> tuple:
    """Canonical chain order for an unordered chart triple: for a path (one
    disjoint pair) the disjoint pair's lex-least member is the base and the
    mutual neighbor sits in the middle; all-adjacent triangles are sorted."""
    charts = sorted(_chart(c) for c in charts)
    if len(charts) != 3:
        raise ValueError("expected three charts")
    disjoint = [
        (a, b) for a, b in combinations(charts, 2) if overlap_type(a, b) == "disjoint"
    ]
    if not disjoint:
        return tuple(charts)
    if len(disjoint) > 1:
        raise ValueError("no chart is adjacent to both ends of two disjoint pairs")
    a, b = disjoint[0]
    middle = next(c for c in charts if c not in (a, b))
    return (a, middle, b)


def triple_overlap(lam1, lam2, lam3, field: Field = QQ, formulas: FormulaSet = CANONICAL) -> ChainOverlap:
    return overlap_chain((lam1, lam2, lam3), field, formulas)


def direct_far_images(chain: ChainOverlap, formulas: FormulaSet = CANONICAL) -> dict:
    """Images of the far chart's entries under the direct (single-hop) pair
    formulas, expressed inside the chain presentation. Used by the cocycle
    comparison against the composite images the chain stores."""
    lam, nu = chain.charts[0], chain.charts[-1]
    field = chain.field
    pair = pair_overlap(lam, nu, field, formulas)
    subst = {e: NcPoly.gen(field, e) for e in chain.presentation.generators}
    if pair.kind == "adjacent":
        piv = pivot_entry(lam, nu)
        pinv = sy.inverse_symbol(piv)
        if pinv not in chain.presentation.generators:
            inv = chain.inverse_of(NcPoly.gen(field, piv))
            if inv is None:
                raise ValueError("direct pivot inverse not available in chain")
            subst[pinv] = inv
    else:
        det_elt = quasi_det_element(lam, nu, field)
        inv = chain.inverse_of(det_elt)
        if inv is None:
            raise ValueError("direct quasi-determinant inverse not available in chain")
        subst[sy.quasi_det(lam, nu)] = det_elt
        subst[sy.quasi_det_inverse(lam, nu)] = inv
    h = Hom(field, subst)
    out = {}
    for e in (sy.entry(nu, i, j) for i in nu for j in range(1, 5) if j not in nu):
        out[e] = h.apply(pair.to_base.mapping[e])
    return out


# ---------------------------------------------------------------------------
# the poset of chart intersections and the structure presheaf


@dataclass(frozen=True)
class PosetIndex:
    """A formal minimum of a set of maximal charts. This is a label in the
    index poset, not a set intersection of index sets: min({1,2},{2,3}) covers
    the chart overlap and is unrelated to the 1-element set {2}."""

    charts: tuple

    @staticmethod
    def of(*charts) -> "PosetIndex":
        return PosetIndex(tuple(sorted(_chart(c) for c in charts)))

    def leq(self, other: "PosetIndex") -> bool:
        """self <= other in the poset (self is a deeper intersection)."""
        return set(other.charts) <= set(self.charts)

    def minimum(self, other: "PosetIndex") -> "PosetIndex":
        return PosetIndex(tuple(sorted(set(self.charts) | set(other.charts))))

    @property
    def is_maximal(self) -> bool:
        return len(self.charts) == 1

    @property
    def name(self) -> str:
        if self.is_maximal:
            c = self.charts[0]
            return f"R({c[0]},{c[1]})"
        return "min(" + "/".join(f"{c[0]},{c[1]}" for c in self.charts) + ")"


@dataclass
class TransitionHom:
    source: PosetIndex
    target: PosetIndex
    hom: Hom


@dataclass
class Presheaf:
    field: Field
    nodes: dict  # PosetIndex -> ChartNode | OverlapPair | ChainOverlap
    restrictions: dict  # (source, target) -> TransitionHom

    def presentation(self, idx: PosetIndex) -> AlgebraPresentation:
        node = self.nodes[idx]
        return node if isinstance(node, AlgebraPresentation) else node.presentation


def _pair_to_chain_hom(pair: OverlapPair, chain: ChainOverlap, bound: int = 8) -> Hom:
    """Restriction from a pair overlap into a chain overlap containing both
    charts. Chart entries go through the chain's own Homs; adjoined symbols
    resolve through the pair's definitions and the chain's known invertibles."""
    field = chain.field
    hom_a = chain.homs[pair.lam]
    hom_b = chain.homs.get(pair.lam2)
    mapping: dict = {}
    for g in pair.presentation.generators:
        if g in hom_a.mapping:
            mapping[g] = hom_a.mapping[g]
        elif hom_b is not None and g in hom_b.mapping:
            mapping[g] = hom_b.mapping[g]
    work = Hom(field, mapping)
    for sid, expr, as_inv in pair.presentation.definitions:
        if sid in mapping:
            continue  # a chain hom already carries an image for this symbol
        img = work.apply(expr)
        if not as_inv:
            mapping[sid] = img
            continue
        inv = chain.inverse_of(img, bound)
        if inv is None:
            raise ValueError(
                f"cannot express inverse of {poly_str(img)} in {chain.presentation.name}"
            )
        mapping[sid] = inv
    return Hom(field, mapping)


def build_presheaf(field: Field = QQ, formulas: FormulaSet = CANONICAL) -> Presheaf:
    """All 6 maximal charts, 15 pairwise minima, and 20 triple minima, with
    restriction homomorphisms along every comparable pair."""
    charts = all_charts()
    nodes: dict = {}
    restrictions: dict = {}

    for c in charts:
        nodes[PosetIndex.of(c)] = chart_presentation(c, field)

    pairs: dict = {}
    for a, b in combinations(charts, 2):
        idx = PosetIndex.of(a, b)
        ov = pair_overlap(a, b, field, formulas)  # base = lex-least member
        pairs[idx] = ov
        nodes[idx] = ov
        ident = Hom(
            field,
            {e: NcPoly.gen(field, e) for e in ov.presentation.generators},
        )
        restrictions[(PosetIndex.of(a), idx)] = TransitionHom(PosetIndex.of(a), idx, ident)
        restrictions[(PosetIndex.of(b), idx)] = TransitionHom(
            PosetIndex.of(b), idx, ov.to_base
        )

    for combo in combinations(charts, 3):
        idx = PosetIndex.of(*combo)
        chain = overlap_chain(triple_ordering(combo), field, formulas)
        nodes[idx] = chain
        for c in combo:
            restrictions[(PosetIndex.of(c), idx)] = TransitionHom(
                PosetIndex.of(c), idx, chain.homs[c]
            )
        for a, b in combinations(combo, 2):
            pidx = PosetIndex.of(a, b)
            restrictions[(pidx, idx)] = TransitionHom(
                pidx, idx, _pair_to_chain_hom(pairs[pidx], chain)
            )

    return Presheaf(field, nodes, restrictions)
