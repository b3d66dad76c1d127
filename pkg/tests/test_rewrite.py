"""Truncated diamond-lemma completion and the dimension oracles."""

import random
from fractions import Fraction

import pytest

from ncgrass import atlas
from ncgrass import symbols as sy
from ncgrass.fields import QQ
from ncgrass.poly import NcPoly, abelianize, commutator
from ncgrass.rewrite import (
    RewriteSystem,
    commutative_truncated_dimension,
    complete,
    count_irreducible_words,
    orient,
    orient_module,
    reduces_to_zero,
    truncated_dimension,
    words_of_weight,
)


def _gens():
    return [sy.entry((1, 2), i, j) for i in (1, 2) for j in (3, 4)]


def _chart_system(bound=4):
    pres = atlas.chart_presentation((1, 2))
    return pres, pres.completed(bound)


def test_orient_picks_the_leading_word():
    a13, a14 = (NcPoly.gen(QQ, s) for s in (sy.entry((1, 2), 1, 3), sy.entry((1, 2), 1, 4)))
    rule = orient(commutator(a13, a14))
    assert rule.lhs == (sy.entry((1, 2), 1, 4), sy.entry((1, 2), 1, 3))
    assert rule.rhs == a13 * a14
    with pytest.raises(ValueError):
        orient(NcPoly.zero(QQ))
    with pytest.raises(ValueError):
        orient(NcPoly.scalar(QQ, Fraction(3)))  # a unit relation collapses the ring


def test_orient_module_eliminates_the_outside_variable():
    rel = next(iter(atlas.universal_module_relations((1, 2), 4, QQ)))
    j = next(
        s
        for w in rel.terms
        for s in w
        if sy.is_module_var(s) and sy.sym(s).i not in (1, 2)
    )
    rule = orient_module(rel, j)
    assert rule.lhs == (j,)
    assert rule.is_module


def test_chart_relations_reduce_to_zero():
    pres, system = _chart_system()
    for rel in pres.relations:
        assert system.normal_form(rel).is_zero()


def test_normal_form_is_idempotent_and_linear():
    pres, system = _chart_system()
    rng = random.Random(11)
    gens = [NcPoly.gen(QQ, s) for s in pres.generators]
    for _ in range(25):
        p = NcPoly.zero(QQ)
        for _ in range(3):
            w = rng.sample(gens, k=rng.randint(1, 3))
            t = w[0]
            for f in w[1:]:
                t = t * f
            p = p + t.scale(Fraction(rng.randint(-4, 4)))
        nf = system.normal_form(p)
        assert system.normal_form(nf) == nf
        q = gens[rng.randrange(4)]
        assert system.normal_form(p + q) == system.normal_form(nf + q)


def test_confluence_spot_check():
    # random two-sided multiples of the relations must reduce to zero
    pres, system = _chart_system()
    rng = random.Random(23)
    gens = [NcPoly.gen(QQ, s) for s in pres.generators]
    for _ in range(60):
        rel = rng.choice(pres.relations)
        u = rng.choice(gens + [NcPoly.scalar(QQ, Fraction(1))])
        v = rng.choice(gens + [NcPoly.scalar(QQ, Fraction(1))])
        out = reduces_to_zero(u * rel * v, system)
        assert out.zero, out.normal_form


def test_soundness_by_commutative_sampling():
    # p - nf(p) lies in the two-sided ideal, and the chart ideal abelianizes
    # to zero, so p and nf(p) agree at every commutative point
    pres, system = _chart_system()
    rng = random.Random(5)
    gens = [NcPoly.gen(QQ, s) for s in pres.generators]
    for _ in range(100):
        t1 = gens[rng.randrange(4)] * gens[rng.randrange(4)] * gens[rng.randrange(4)]
        t2 = gens[rng.randrange(4)] * gens[rng.randrange(4)]
        p = t1 - t2.scale(Fraction(rng.randint(1, 5)))
        diff = abelianize(p - system.normal_form(p))
        vals = {s: Fraction(rng.randint(-9, 9)) for s in pres.generators}
        assert diff.evaluate(vals) == Fraction(0)


def test_completion_reports_collapse():
    a13 = NcPoly.gen(QQ, sy.entry((1, 2), 1, 3))
    base = RewriteSystem(QQ)
    base.add_rule(orient(a13 - NcPoly.scalar(QQ, Fraction(1))))
    base.add_rule(orient(a13 - NcPoly.scalar(QQ, Fraction(2))))
    system = complete(base, 4)
    assert system.collapsed
    assert system.normal_form(NcPoly.scalar(QQ, Fraction(7))).is_zero()


def test_words_of_weight_counts():
    gens = _gens()
    assert len(words_of_weight(gens, 0)) == 1
    assert len(words_of_weight(gens, 1)) == 4
    assert len(words_of_weight(gens, 3)) == 64
    d = sy.quasi_det((1, 2), (3, 4))
    # one weight-2 letter plus four weight-1 letters
    assert len(words_of_weight(gens + [d], 2)) == 17


def test_truncated_dimension_matches_rewriting_on_every_chart():
    for lam in atlas.all_charts():
        pres = atlas.chart_presentation(lam)
        system = pres.completed(4)
        for d in range(5):
            lin = truncated_dimension(QQ, pres.generators, list(pres.relations), d)
            rew = count_irreducible_words(system, pres.generators, d)
            assert lin == rew, (lam, d, lin, rew)


def test_chart_degree_two_dimension_is_thirteen():
    pres = atlas.chart_presentation((1, 2))
    assert truncated_dimension(QQ, pres.generators, list(pres.relations), 2) == 13


def test_commutative_dimension_of_a_polynomial_ring():
    gens = _gens()
    rels = [abelianize(commutator(NcPoly.gen(QQ, gens[0]), NcPoly.gen(QQ, gens[1])))]
    # no honest relations: binomial coefficients of a 4-variable polynomial ring
    for d, expect in enumerate([1, 4, 10, 20, 35]):
        assert commutative_truncated_dimension(QQ, gens, rels, d) == expect


def test_module_rules_eliminate_outside_variables():
    pres = atlas.chart_presentation((1, 2), with_module=True)
    system = pres.completed(4)
    x3 = NcPoly.gen(QQ, sy.module_var(3))
    a13 = NcPoly.gen(QQ, sy.entry((1, 2), 1, 3))
    a23 = NcPoly.gen(QQ, sy.entry((1, 2), 2, 3))
    x1 = NcPoly.gen(QQ, sy.module_var(1))
    x2 = NcPoly.gen(QQ, sy.module_var(2))
    assert system.normal_form(x3) == a13 * x1 + a23 * x2


def test_reduces_to_zero_requires_a_bound_for_raw_systems():
    pres = atlas.chart_presentation((1, 2))
    raw = RewriteSystem.from_relations(QQ, pres.relations)
    with pytest.raises(ValueError):
        reduces_to_zero(pres.relations[0], raw)
    out = reduces_to_zero(pres.relations[0], raw, bound=4)
    assert out.zero and out.bound == 4
