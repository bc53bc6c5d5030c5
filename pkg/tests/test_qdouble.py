import random
from fractions import Fraction
from itertools import product

import pytest

from qhyper.checks import double_monomials, hopf_defects, random_element, uq_monomials
from qhyper.linear import Tensor
from qhyper.qalgebra import RadiusSpec, antipode, coproduct, counit, uq
from qhyper.qdouble import (ALL_CONVENTIONS, FROZEN_CONVENTION, BorelPairing, FormulaEngine,
                            borel_pairing, convolution, double, double_mul_formula,
                            double_mul_relations, graded_commutativity_defect, quotient_to_uq,
                            select_convention, sigma_bar)
from qhyper.scalars import QParams

from oracles import expanded_pairing, naive_normalize

QP = QParams()
q = QP.q
D = double(QP)
BP, BM = uq(QP, "borel+"), uq(QP, "borel-")


def _plus_word(m):
    e, k, _ = m
    return ("E",) * e + ("K" if k > 0 else "k",) * abs(k)


def _minus_word(m):
    _, k, f = m
    return ("M" if k > 0 else "m",) * abs(k) + ("F",) * f


def test_borel_pairing_examples():
    assert borel_pairing(BP.monomial((0, 1, 0)), BM.monomial((0, 1, 0))) == q**-2
    assert borel_pairing(BP.one(), BM.one()) == 1
    E2, F2 = BP.monomial((2, 0, 0)), BM.monomial((0, 0, 2))
    assert borel_pairing(E2, F2) == expanded_pairing("EE", "FF", q)
    with pytest.raises(TypeError):
        borel_pairing(BM.one(), BP.one())


def test_borel_pairing_matches_full_expansion():
    plus = [m for m in uq_monomials(3, "borel+") if m[0] <= 2]
    minus = [m for m in uq_monomials(3, "borel-") if m[2] <= 2]
    for a in plus:
        for b in minus:
            want = expanded_pairing(_plus_word(a), _minus_word(b), q)
            got = borel_pairing(BP.monomial(a), BM.monomial(b))
            assert got == want, (a, b)


def test_memo_does_not_change_values():
    fresh = BorelPairing(QP)
    fresh.use_memo = False
    for a in uq_monomials(3, "borel+"):
        for b in uq_monomials(3, "borel-"):
            assert fresh.monomial_value(a, b) == borel_pairing(BP.monomial(a), BM.monomial(b))


def test_sigma_bar_examples():
    K, Km = BP.monomial((0, 1, 0)), BM.monomial((0, 1, 0))
    assert sigma_bar(K, Km) == q**2
    for b in uq_monomials(2, "borel-"):
        y = BM.monomial(b)
        assert sigma_bar(BP.one(), y) == counit(y)


def test_convolution_inverse():
    for a in uq_monomials(2, "borel+"):
        for b in uq_monomials(2, "borel-"):
            x, y = BP.monomial(a), BM.monomial(b)
            want = counit(x) * counit(y)
            assert convolution(borel_pairing, sigma_bar, x, y) == want
            assert convolution(sigma_bar, borel_pairing, x, y) == want


def test_double_relation_examples():
    E, F, K, Km = (D.generator(g) for g in ("E", "F", "K", "K_-"))
    assert Km * E == (E * Km).scale(q**2)
    assert K * Km == Km * K
    assert (K * Km) == D.monomial((0, 1, 1, 0))
    Kmi = D.generator("K_-^-1")
    assert E * F - F * E == (K - Kmi).scale(1 / QP.qdiff)


def test_double_normal_form_matches_naive_rewriter():
    letters = {"E": "E", "F": "F", "K": "K", "k": "K^-1", "M": "K_-", "m": "K_-^-1"}
    for n in range(1, 4):
        for word in product("EFKkMm", repeat=n):
            got = D.normalize([letters[c] for c in word])
            assert dict(got.items()) == naive_normalize(word, q, "double"), word


def test_formula_product_examples():
    E, F = D.generator("E"), D.generator("F")
    assert double_mul_formula(F, E) == double_mul_relations(F, E)
    a, a2 = D.monomial((1, 1, 0, 0)), D.monomial((2, -1, 0, 0))
    assert double_mul_formula(a, a2) == a * a2
    assert double_mul_formula(E, F) - double_mul_formula(F, E) == \
        (D.generator("K") - D.generator("K_-^-1")).scale(1 / QP.qdiff)


def test_formula_equals_relations_low_degree():
    mons = double_monomials(3)
    for m1 in mons:
        for m2 in mons:
            x, y = D.monomial(m1), D.monomial(m2)
            assert double_mul_formula(x, y) == double_mul_relations(x, y), (m1, m2)


def test_convention_is_unique_and_frozen():
    assert select_convention(QP) == FROZEN_CONVENTION
    assert select_convention(QParams(7, Fraction(8))) == FROZEN_CONVENTION
    E, F = D.generator("E"), D.generator("F")
    others = [c for c in ALL_CONVENTIONS if c != FROZEN_CONVENTION]
    assert all(FormulaEngine(QP, c).mul(F, E) != F * E for c in others)


def test_double_hopf_structure():
    K, Km = D.generator("K"), D.generator("K_-")
    assert coproduct(K) == Tensor.pure(K, K)
    assert antipode(Km) == D.generator("K_-^-1")
    for m in double_monomials(2):
        assert hopf_defects(D.monomial(m)) == [], m


def test_quotient_examples():
    K, Km = D.generator("K"), D.generator("K_-")
    U = uq(QP)
    assert quotient_to_uq(K - Km).is_zero()
    E, F = D.generator("E"), D.generator("F")
    want = (U.generator("K") - U.generator("K^-1")).scale(1 / QP.qdiff)
    assert quotient_to_uq(E * F - F * E) == want


def test_quotient_is_an_algebra_map():
    rng = random.Random(1)
    mons = double_monomials(2)
    for _ in range(30):
        x, y = random_element(rng, D, mons), random_element(rng, D, mons)
        assert quotient_to_uq(x * y) == quotient_to_uq(x) * quotient_to_uq(y)


def test_graded_commutativity_examples():
    rs = RadiusSpec(1, 1, 0)
    E, K = D.generator("E"), D.generator("K")
    rep = graded_commutativity_defect(E, K, rs)
    assert rep.commutator_norm == QP.lognorm(1 - q**2) + 1
    assert rep.strict
    assert graded_commutativity_defect(E, E, rs).commutator_norm == float("-inf")


def test_graded_commutativity_sweep():
    rs = RadiusSpec(1, 1, 0)
    mons = double_monomials(2)
    for m1 in mons:
        for m2 in mons:
            if m1 != m2:
                assert graded_commutativity_defect(D.monomial(m1), D.monomial(m2), rs).strict
