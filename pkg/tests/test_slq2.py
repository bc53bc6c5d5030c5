import random
from fractions import Fraction
from itertools import product

import pytest

from qhyper.checks import coord_monomials, hopf_defects, random_element, uq_monomials
from qhyper.linear import Tensor
from qhyper.qalgebra import RadiusSpec, antipode, coproduct, counit, from_kef, uq
from qhyper.scalars import QParams, q_factorial
from qhyper.slq2 import (MatrixAlgebra, breve_pairing, coord, dual_norm, dual_norm_sweep,
                         gram_rank, phi_theta_route, transpose_auto, uq_pairing)

from oracles import coord_monomial_word, naive_coord, rep_pairing

QP = QParams()
q = QP.q
C = coord(QP)
U = uq(QP)
B = uq(QP, "breve")
a, b, c, d = (C.generator(g) for g in "abcd")


def test_coordinate_relations():
    assert b * a == (a * b).scale(1 / q)
    assert a * d == C.one() + (b * c).scale(q)
    assert d * a == C.one() + (b * c).scale(1 / q)
    assert b * c == c * b


def test_normal_form_matches_naive_rewriter():
    gens = dict(zip("abcd", (a, b, c, d)))
    for n in range(1, 5):
        for word in product("abcd", repeat=n):
            got = C.normalize([gens[g] for g in word])
            assert dict(got.items()) == naive_coord(word, q), word


def test_quantum_determinant_before_the_quotient():
    M = MatrixAlgebra(QP)
    det = M.det_q()
    for g in "abcd":
        x = M.generator(g)
        assert det * x == x * det


def test_hopf_examples():
    # Delta(det_q) computed leg by leg collapses to 1 (x) 1
    delta = coproduct(a) * coproduct(d) - (coproduct(b) * coproduct(c)).scale(q)
    assert delta == Tensor.pure(C.one(), C.one())
    assert counit(b) == 0 and counit(a) == 1
    t = coproduct(a)
    assert t.apply_leg(0, C.antipode_monomial).contract(C) == C.one()


def test_hopf_axioms():
    for m in coord_monomials(3):
        assert hopf_defects(C.monomial(m)) == [], m


def test_transpose_automorphism():
    assert transpose_auto(b * c, 1, 7) == b * c
    det = a * d - (b * c).scale(q)
    assert transpose_auto(det, 3, 5) == det
    rng = random.Random(1)
    mons = coord_monomials(3)
    for _ in range(20):
        x = random_element(rng, C, mons)
        # b and c trade places, so the inverse keeps beta and inverts alpha
        assert transpose_auto(transpose_auto(x, 3, 5), Fraction(1, 3), 5) == x
    with pytest.raises(ValueError):
        transpose_auto(a, 0, 1)


def test_transpose_is_an_algebra_map():
    rng = random.Random(2)
    mons = coord_monomials(2)
    for _ in range(20):
        x, y = random_element(rng, C, mons), random_element(rng, C, mons)
        assert transpose_auto(x * y, 2, 3) == transpose_auto(x, 2, 3) * transpose_auto(y, 2, 3)


def test_breve_pairing_examples():
    assert breve_pairing(B.one(), C.one()) == 1
    # vanishes unless n - r = l - t
    assert breve_pairing(B.generator("E"), C.one()) == 0
    assert breve_pairing(B.generator("E"), d) == 0
    with pytest.raises(ValueError):
        breve_pairing(U.one(), C.one())


@pytest.mark.parametrize("kind", ["breve", "standard"])
def test_pairing_matches_tensor_representation(kind):
    A = B if kind == "breve" else U
    pair = breve_pairing if kind == "breve" else uq_pairing
    for mon in coord_monomials(3):
        word = coord_monomial_word(mon)
        for m in (-1, 0, 2):
            for n in range(3):
                for l in range(3):
                    x = from_kef(A, {(m, n, l): Fraction(1)})
                    assert pair(x, C.monomial(mon)) == rep_pairing((m, n, l), word, QP.u, kind)


def test_uq_pairing_values():
    E, F, K = (U.generator(g) for g in "EFK")
    assert uq_pairing(E, c) == 1
    assert uq_pairing(F, b) == 1
    assert uq_pairing(K, a) == 1 / q
    assert uq_pairing(K, d) == q
    assert uq_pairing(U.one(), C.one()) == 1


def test_uq_pairing_equals_the_phi_theta_composite():
    rng = random.Random(3)
    for _ in range(40):
        x = random_element(rng, U, uq_monomials(3))
        y = random_element(rng, C, coord_monomials(3))
        assert uq_pairing(x, y) == phi_theta_route(x, y)


def _pair_tensor(tx, ty, pair):
    total = Fraction(0)
    for (x1, x2), cx in tx.items():
        for (y1, y2), cy in ty.items():
            total += cx * cy * pair(U.monomial(x1), C.monomial(y1)) * pair(U.monomial(x2), C.monomial(y2))
    return total


def test_duality_laws():
    rng = random.Random(4)
    for _ in range(30):
        x, x2 = random_element(rng, U, uq_monomials(2)), random_element(rng, U, uq_monomials(2))
        y, y2 = random_element(rng, C, coord_monomials(2)), random_element(rng, C, coord_monomials(2))
        assert uq_pairing(x * x2, y) == _pair_tensor(Tensor.pure(x, x2), coproduct(y), uq_pairing)
        assert uq_pairing(x, y * y2) == _pair_tensor(coproduct(x), Tensor.pure(y, y2), uq_pairing)
        assert uq_pairing(U.one(), y) == counit(y)
        assert uq_pairing(x, C.one()) == counit(x)
        assert uq_pairing(antipode(x), y) == uq_pairing(x, antipode(y))


def test_pairing_magnitudes():
    for mon in coord_monomials(4):
        _, s, r, t = mon
        for m in range(-2, 3):
            for n in range(5):
                for l in range(5):
                    v = uq_pairing(from_kef(U, {(m, n, l): Fraction(1)}), C.monomial(mon))
                    if mon[0] == "A" and (r, t) == (n, l):
                        want = QP.lognorm(q_factorial(n, QP)) + QP.lognorm(q_factorial(l, QP))
                        assert QP.lognorm(v) == want
                    elif mon[0] == "A":
                        assert v == 0


def test_pairing_is_nondegenerate_in_low_degree():
    ys = coord_monomials(2)
    xs = [(m, n, l) for m in range(-3, 4) for n in range(3) for l in range(3)]
    rows = [[uq_pairing(from_kef(U, {x: Fraction(1)}), C.monomial(y)) for x in xs] for y in ys]
    assert gram_rank(rows) == len(ys)


def test_dual_norm_examples():
    rs = RadiusSpec(1, 2, 0)
    assert dual_norm(c, rs) == -1
    assert dual_norm(C.monomial(("A", 5, 0, 0)), rs) == 0
    assert dual_norm(b, rs) == -2
    sup, arg = dual_norm_sweep(b, rs)
    assert sup == -2 and arg is not None


def test_dual_norm_sweep_matches_closed_form():
    for rs in (RadiusSpec(1, 1), RadiusSpec(2, 1)):
        for mon in (("A", 0, 1, 1), ("A", 2, 0, 1), ("D", 1, 2, 0), ("A", 0, 3, 0)):
            y = C.monomial(mon)
            assert dual_norm_sweep(y, rs, bound=6)[0] == dual_norm(y, rs)
