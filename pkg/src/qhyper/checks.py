"""Named invariant suites, shared by ``qhyper check`` and the test-suite.

Every suite takes ``full`` (acceptance-sized sweeps) or the quick default
and returns a list of :class:`CheckResult`.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .linear import Element
from .qalgebra import (RadiusSpec, antipode, build_second_construction, coproduct, counit,
                       from_kef, nu_norm, phi, theta_alpha, uq)
from .qdouble import (FROZEN_CONVENTION, borel_pairing, double, double_mul_formula,
                      graded_commutativity_defect, select_convention)
from .scalars import (NEG_INF, QParams, gamma_constant, legendre_valuation, log_norm,
                      q_factorial)
from .skewseries import ScalarBase, gauss_norm, laurent_ring, scalar_ring
from .slq2 import (coord, dual_norm, dual_norm_monomial, dual_norm_sweep, transpose_route,
                   uq_monomial_value, uq_pairing, phi_theta_route)
from .weierstrass import residual, wdivide


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.detail} ({self.seconds:.1f}s)"


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


# ---------------------------------------------------------------------------
# monomial enumerations

def uq_monomials(deg: int, variant: str = "standard"):
    out = []
    for e in range(deg + 1):
        for f in range(deg + 1 - e):
            rest = deg - e - f
            for k in range(-rest, rest + 1):
                if variant == "borel+" and f:
                    continue
                if variant == "borel-" and e:
                    continue
                out.append((e, k, f))
    return out


def double_monomials(deg: int):
    out = []
    for e in range(deg + 1):
        for f in range(deg + 1 - e):
            rest = deg - e - f
            for k in range(-rest, rest + 1):
                for j in range(-(rest - abs(k)), rest - abs(k) + 1):
                    out.append((e, k, j, f))
    return out


def coord_monomials(deg: int):
    out = []
    for s in range(deg + 1):
        for r in range(deg + 1 - s):
            for t in range(deg + 1 - s - r):
                out.append(("A", s, r, t))
                if s:
                    out.append(("D", s, r, t))
    return out


def monomial_degree(m) -> int:
    if isinstance(m[0], str):
        return sum(m[1:])
    return sum(abs(v) for v in m)


# ---------------------------------------------------------------------------
# 1. Hopf axioms

def hopf_defects(x: Element) -> list[str]:
    """Which Hopf axioms fail on ``x`` (empty list when all hold)."""
    A = x.parent
    t = coproduct(x)
    bad = []
    if t.apply_leg(0, A.coproduct_monomial) != t.apply_leg(1, A.coproduct_monomial):
        bad.append("coassociativity")
    if t.apply_leg(0, A.counit_monomial, parent=()).contract(A) != x:
        bad.append("left counit")
    if t.apply_leg(1, A.counit_monomial, parent=()).contract(A) != x:
        bad.append("right counit")
    unit = A.one().scale(counit(x))
    if t.apply_leg(0, A.antipode_monomial).contract(A) != unit:
        bad.append("left antipode")
    if t.apply_leg(1, A.antipode_monomial).contract(A) != unit:
        bad.append("right antipode")
    return bad


def suite_hopf(qp: QParams, full: bool = False) -> list[CheckResult]:
    deg = 4 if full else 2
    algebras = [("U_q(sl2)", uq(qp), uq_monomials(deg)),
                ("breve U_q(sl2)", uq(qp, "breve"), uq_monomials(deg)),
                ("double", double(qp), double_monomials(deg)),
                ("SL_q(2)", coord(qp), coord_monomials(deg))]
    results = []
    for name, A, mons in algebras:
        with _Timer() as tm:
            failures = []
            for m in mons:
                bad = hopf_defects(A.monomial(m))
                if bad:
                    failures.append((m, bad))
        results.append(CheckResult(f"hopf axioms on {name} (degree <= {deg})", not failures,
                                   f"{len(mons)} monomials, {len(failures)} failures"
                                   + (f", first {failures[0]}" if failures else ""), tm.seconds))
    return results


# ---------------------------------------------------------------------------
# 2. double: formula engine against relations engine

def suite_double(qp: QParams, full: bool = False) -> list[CheckResult]:
    deg = 5 if full else 3
    D = double(qp)
    results = []
    with _Timer() as tm:
        conv = select_convention(qp)
    results.append(CheckResult("double leg convention is unique and frozen",
                               conv == FROZEN_CONVENTION, repr(conv), tm.seconds))
    with _Timer() as tm:
        mons = double_monomials(deg)
        count = bad = 0
        first = None
        for m1 in mons:
            d1 = monomial_degree(m1)
            for m2 in mons:
                if d1 + monomial_degree(m2) > deg:
                    continue
                x, y = D.monomial(m1), D.monomial(m2)
                count += 1
                if double_mul_formula(x, y) != x * y:
                    bad += 1
                    first = first or (m1, m2)
    results.append(CheckResult(f"double product formula = relations (pair degree <= {deg})",
                               bad == 0, f"{count} pairs, {bad} mismatches"
                               + (f", first {first}" if first else ""), tm.seconds))
    with _Timer() as tm:
        E, F, K, Km = (D.generator(g) for g in ("E", "F", "K", "K_-"))
        H = (K - D.generator("K_-^-1")).scale(1 / qp.qdiff)
        ok = double_mul_formula(E, F) - double_mul_formula(F, E) == H
    results.append(CheckResult("EF - FE = (K - K_-^-1)/(q - q^-1) via the formula", ok, "", tm.seconds))
    return results


# ---------------------------------------------------------------------------
# 3. second construction

def random_pbw_monomial(rng: random.Random, deg: int = 3):
    return (rng.randint(0, deg), rng.randint(-deg, deg), rng.randint(0, deg))


def suite_second(qp: QParams, full: bool = False) -> list[CheckResult]:
    n = 200 if full else 25
    rng = random.Random(3)
    U = uq(qp)
    results = []
    for rs in (RadiusSpec(eE=1, eF=1, eK=0), RadiusSpec(eE=2, eF=0, eK=0)):
        with _Timer() as tm:
            sc = build_second_construction(qp, rs)
            bad = 0
            for _ in range(n):
                x = U.monomial(random_pbw_monomial(rng))
                y = U.monomial(random_pbw_monomial(rng))
                if sc.mul(x, y) != sc.from_pbw(x * y):
                    bad += 1
        results.append(CheckResult(f"Ore tower products = normalize products (eE={rs.eE}, eF={rs.eF})",
                                   bad == 0, f"{n} random pairs, {bad} mismatches", tm.seconds))
    return results


# ---------------------------------------------------------------------------
# 4. Weierstrass division

def _rand_scalar(rng: random.Random, p: int, vmin: int = 0, spread: int = 2) -> Fraction:
    v = rng.randint(vmin, vmin + spread)
    num = rng.choice([n for n in range(-30, 31) if n % p])
    den = rng.choice([d for d in range(1, 8) if d % p])
    return Fraction(p) ** v * Fraction(num, den)


def _rand_base(rng: random.Random, base, p: int, vmin: int = 0):
    if isinstance(base, ScalarBase):
        return _rand_scalar(rng, p, vmin)
    ks = rng.sample(range(-2, 3), rng.randint(1, 2))
    return Element(base, {k: _rand_scalar(rng, p, vmin) for k in ks})


def random_regular(rng: random.Random, ring, tail_val: int = 1):
    """A regular element of degree 1..4: unit scalar lead, norm <= 1 below, small tail."""
    p, base = ring.p, ring.base
    d = rng.randint(1, 4)
    coeffs = {i: _rand_base(rng, base, p, 0) for i in range(d) if rng.random() < 0.7}
    lead = Fraction(rng.choice([n for n in range(1, 7) if n % p]), rng.choice([d_ for d_ in (1, 2, 3) if d_ % p]))
    coeffs[d] = base.coerce(lead + (_rand_scalar(rng, p, 1) if rng.random() < 0.3 else 0))
    for i in range(d + 1, d + 1 + rng.randint(0, 2)):
        coeffs[i] = _rand_base(rng, base, p, tail_val)
    return ring.element(coeffs), d


def random_series(rng: random.Random, ring, max_deg: int = 6):
    p, base = ring.p, ring.base
    return ring.element({i: _rand_base(rng, base, p, rng.randint(-1, 1))
                         for i in range(rng.randint(0, max_deg) + 1)})


def suite_weierstrass(qp: QParams, full: bool = False) -> list[CheckResult]:
    n = 50 if full else 8
    floor = -40
    rng = random.Random(4)
    results = []
    for name, ring, tail in (("L", scalar_ring(qp.p), 1), ("U_q(h)", laurent_ring(qp, var="z"), 2)):
        with _Timer() as tm:
            bad = []
            for i in range(n):
                f, d = random_regular(rng, ring, tail)
                g = random_series(rng, ring)
                res = wdivide(g, f, floor)
                r_ok = residual(g, f, res.q, res.r) <= floor
                deg_ok = res.r.degree < d
                norm_ok = gauss_norm(g) == max(gauss_norm(res.q), gauss_norm(res.r))
                if not (r_ok and deg_ok and norm_ok):
                    bad.append(i)
        results.append(CheckResult(f"Weierstrass division over {name} (floor p^{floor})", not bad,
                                   f"{n} random regular divisors, failures {bad}", tm.seconds))
    return results


# ---------------------------------------------------------------------------
# 5. norm laws

def random_element(rng: random.Random, A, mons, terms: int = 3) -> Element:
    p = A.qp.p
    return Element(A, {rng.choice(mons): _rand_scalar(rng, p, -1, 3) for _ in range(rng.randint(1, terms))})


def suite_norms(qp: QParams, full: bool = False) -> list[CheckResult]:
    n = 500 if full else 60
    rng = random.Random(5)
    rs = RadiusSpec(eE=1, eF=1, eK=0)
    results = []
    cases = [("U_q(b+)", uq(qp, "borel+"), uq_monomials(3, "borel+"), True),
             ("U_q(b-)", uq(qp, "borel-"), uq_monomials(3, "borel-"), True),
             ("double", double(qp), double_monomials(3), True),
             ("U_q(sl2)", uq(qp), uq_monomials(3), False),
             ("breve U_q(sl2)", uq(qp, "breve"), uq_monomials(3), False)]
    for name, A, mons, multiplicative in cases:
        with _Timer() as tm:
            bad = 0
            for _ in range(n):
                x, y = random_element(rng, A, mons), random_element(rng, A, mons)
                lhs, rhs = nu_norm(x * y, rs), nu_norm(x, rs) + nu_norm(y, rs)
                bad += (lhs != rhs) if multiplicative else (lhs > rhs)
        law = "multiplicative" if multiplicative else "submultiplicative"
        results.append(CheckResult(f"nu_R {law} on {name}", bad == 0,
                                   f"{n} random pairs, {bad} violations", tm.seconds))
    # skew-Tate Gauss norms: multiplicative over L and U_q(h) with alpha isometric
    for name, ring in (("L{z}", scalar_ring(qp.p, 1)), ("U_q(h){z}", laurent_ring(qp, 1, var="z"))):
        with _Timer() as tm:
            bad = 0
            for _ in range(n // 5):
                f, g = random_series(rng, ring, 4), random_series(rng, ring, 4)
                bad += gauss_norm(f * g) != gauss_norm(f) + gauss_norm(g)
        results.append(CheckResult(f"Gauss norm multiplicative on {name}", bad == 0,
                                   f"{n // 5} random pairs, {bad} violations", tm.seconds))
    return results


# ---------------------------------------------------------------------------
# 6. boundedness

def suite_boundedness(qp: QParams, full: bool = False) -> list[CheckResult]:
    deg = 4 if full else 2
    U = uq(qp)
    results = []
    with _Timer() as tm:
        bad = []
        count = 0
        for e in (1, 2, 3):
            for eF in (1, 2, 3):
                rs = RadiusSpec(eE=e, eF=eF, eK=0)
                for m in uq_monomials(deg):
                    x = U.monomial(m)
                    nx = nu_norm(x, rs)
                    count += 1
                    t = coproduct(x)
                    if t.lognorm(lambda mm: rs.eE * mm[0] + rs.eF * mm[2]) > nx:
                        bad.append(("delta", rs, m))
                    if log_norm(counit(x), qp.p) > nx:
                        bad.append(("counit", rs, m))
                    if nu_norm(antipode(x), rs) > nx:
                        bad.append(("antipode", rs, m))
    results.append(CheckResult(f"||Delta||, ||eps||, ||S|| <= 1 at R_K = 1 (degree <= {deg})", not bad,
                               f"{count} (radius, monomial) cases, {len(bad)} violations"
                               + (f", first {bad[0]}" if bad else ""), tm.seconds))
    with _Timer() as tm:
        Bp, Bm = uq(qp, "borel+"), uq(qp, "borel-")
        bound = qp.lognorm(1 / (1 / qp.q - qp.q))
        bad = 0
        count = 0
        for e in (bound + 1, bound + 2):
            rs = RadiusSpec(eE=e, eF=e, eK=0)
            for a in uq_monomials(deg, "borel+"):
                for b in uq_monomials(deg, "borel-"):
                    x, y = Bp.monomial(a), Bm.monomial(b)
                    count += 1
                    if log_norm(borel_pairing(x, y), qp.p) > nu_norm(x, rs) + nu_norm(y, rs):
                        bad += 1
    results.append(CheckResult("|<x,y>| <= ||x||_R ||y||_R for R > |(q^-1 - q)^-1|", bad == 0,
                               f"{count} monomial pairs, {bad} violations", tm.seconds))
    return results


# ---------------------------------------------------------------------------
# 7. duality numerics

def suite_duality(qp: QParams, full: bool = False) -> list[CheckResult]:
    results = []
    top = 6 if full else 3
    with _Timer() as tm:
        bad = 0
        explained = 0
        count = 0
        factorial_law = True
        for p in (3, 5, 7):
            qpp = QParams(p, Fraction(1 + p))
            rng_idx = range(top + 1)
            for n in rng_idx:
                for l in rng_idx:
                    fact = qpp.lognorm(q_factorial(n, qpp)) + qpp.lognorm(q_factorial(l, qpp))
                    for s in range(-top, top + 1):
                        for r in rng_idx:
                            for t in rng_idx:
                                for m in rng_idx:
                                    count += 1
                                    v = qpp.lognorm(gamma_constant(s, r, t, m, n, l, qpp))
                                    factorial_law &= v == fact
                                    if v != 0:
                                        bad += 1
                                        explained += max(n, l) >= p
    results.append(CheckResult(f"|gamma| = 1 for p in 3,5,7, q = (1+p)^2, indices <= {top}", bad == 0,
                               f"{count} constants, {bad} non-units"
                               + (f" (all {explained} with max(n, l) >= p)" if bad and bad == explained else ""),
                               tm.seconds))
    results.append(CheckResult("|gamma| = |[n]_q!| |[l]_q!| on the same range", factorial_law,
                               f"{count} constants", 0.0))
    top = 8 if full else 4
    with _Timer() as tm:
        bad = 0
        count = 0
        for m in range(-top, top + 1):
            for n in range(top + 1):
                for l in range(top + 1):
                    fact = qp.lognorm(q_factorial(n, qp)) + qp.lognorm(q_factorial(l, qp))
                    for s in range(top + 1):
                        for r in range(top + 1):
                            for t in range(top + 1):
                                v = uq_monomial_value((m, n, l), ("A", s, r, t), qp)
                                want = fact if (r == n and t == l) else NEG_INF
                                count += 1
                                bad += qp.lognorm(v) != want
    results.append(CheckResult(f"|<K^mE^nF^l, a^s c^r b^t>| = d_rn d_tl |[n]!||[l]!| (indices <= {top})",
                               bad == 0, f"{count} values, {bad} mismatches", tm.seconds))
    rs = RadiusSpec(eE=2, eF=3, eK=0)
    C = coord(qp)
    top = 10 if full else 4
    with _Timer() as tm:
        bad = 0
        count = 0
        for mon in coord_monomials(2 * top + 2):
            if mon[2] > top or mon[3] > top or mon[1] > 2:
                continue
            count += 1
            want = -rs.eE * mon[2] - rs.eF * mon[3]
            bad += dual_norm(C.monomial(mon), rs) != want
    results.append(CheckResult(f"dual norms R_E^-r R_F^-t on basis monomials (r, t <= {top})",
                               bad == 0, f"{count} monomials, {bad} mismatches", tm.seconds))
    with _Timer() as tm:
        bad = []
        sweep_mons = [("A", 0, 0, 1), ("A", 0, 1, 0), ("A", 1, 0, 0), ("D", 1, 0, 0),
                      ("A", 2, 1, 1), ("D", 1, 1, 1), ("D", 2, 0, 2), ("A", 0, 2, 3)]
        if not full:
            sweep_mons = sweep_mons[:3]
        bound = 12 if full else 6
        for mon in sweep_mons:
            sup, _ = dual_norm_sweep(C.monomial(mon), rs, bound=bound, kbound=2)
            if sup != dual_norm_monomial(mon, rs):
                bad.append((mon, sup))
    results.append(CheckResult(f"truncated supremum sweep (indices <= {bound}) attains the closed form",
                               not bad, f"{len(sweep_mons)} monomials, mismatches {bad}", tm.seconds))
    return results


# ---------------------------------------------------------------------------
# 8. factorial estimate

def suite_factorial(qp: QParams, full: bool = False) -> list[CheckResult]:
    top = 100 if full else 30
    with _Timer() as tm:
        bad = []
        for p in (3, 5, 7):
            qpp = QParams(p, Fraction(1 + p))
            for n in range(top + 1):
                if qpp.val(q_factorial(n, qpp)) != legendre_valuation(n, p):
                    bad.append((p, n))
                # |1/[n]!| <= p^(n/(p-1))
                if legendre_valuation(n, p) * (p - 1) > n:
                    bad.append(("bound", p, n))
    return [CheckResult(f"v_p([n]_q!) = v_p(n!) for n <= {top}, p in 3,5,7", not bad,
                        f"mismatches {bad[:5]}", tm.seconds)]


# ---------------------------------------------------------------------------
# 9. graded commutativity

def suite_commutativity(qp: QParams, full: bool = False) -> list[CheckResult]:
    deg = 4 if full else 2
    D = double(qp)
    rs = RadiusSpec(eE=1, eF=1, eK=0)
    with _Timer() as tm:
        mons = [m for m in double_monomials(deg) if any(m)]
        bad = []
        count = 0
        for i, m1 in enumerate(mons):
            for m2 in mons[i + 1:]:
                count += 1
                rep = graded_commutativity_defect(D.monomial(m1), D.monomial(m2), rs)
                if not rep.strict:
                    bad.append((m1, m2))
    return [CheckResult(f"nu_R(xy - yx) < nu_R(x) nu_R(y) on the double (degree <= {deg})", not bad,
                        f"{count} monomial pairs, {len(bad)} violations"
                        + (f", first {bad[0]}" if bad else ""), tm.seconds)]


# ---------------------------------------------------------------------------
# 10. pairing routes

def _route_cases(qp: QParams, deg: int):
    U, C = uq(qp), coord(qp)
    xs = [U.monomial(m) for m in uq_monomials(deg)]
    ys = [C.monomial(m) for m in coord_monomials(deg)]
    return xs, ys


def suite_routes(qp: QParams, full: bool = False) -> list[CheckResult]:
    deg = 3 if full else 2
    xs, ys = _route_cases(qp, deg)
    U, C = uq(qp), coord(qp)
    gens_x = [U.generator(g) for g in ("E", "F", "K", "K^-1")]
    gens_y = [C.generator(g) for g in "abcd"]
    results = []
    for label, route in (("<phi(x), theta_{1,q^-1/2}(y)>", transpose_route),
                         ("<phi(theta_{q^1/2}(x)), y>", phi_theta_route)):
        with _Timer() as tm:
            gen_bad = sum(uq_pairing(x, y) != route(x, y) for x in gens_x for y in gens_y)
            bad = sum(uq_pairing(x, y) != route(x, y) for x in xs for y in ys)
        results.append(CheckResult(f"uq_pairing = {label}", gen_bad == 0 and bad == 0,
                                   f"generators: {gen_bad}/16 mismatches, degree <= {deg}: "
                                   f"{bad}/{len(xs) * len(ys)} mismatches", tm.seconds))
    return results


# ---------------------------------------------------------------------------
# 11. CLI

def suite_cli(qp: QParams, full: bool = False) -> list[CheckResult]:
    from .cli import run_command
    from .parser import parse, to_text
    results = []
    with _Timer() as tm:
        examples = [(["norm", "--nuprime", "E^3"], f"{qp.p}^3"),
                    (["pair", "E", "c"], "1"),
                    (["quotient", "K - K_-"], "0")]
        got = [(args, run_command(args)) for args, _ in examples]
        bad = [(a, out) for (a, out), (_, want) in zip(got, examples) if out != (0, want)]
    results.append(CheckResult("worked CLI examples", not bad, f"mismatches {bad}", tm.seconds))
    n = 200 if full else 40
    rng = random.Random(11)
    with _Timer() as tm:
        bad = []
        gens = {"uq": ["E", "F", "K", "K^-1"], "breve": ["E", "F", "K", "K^-1"],
                "double": ["E", "F", "K", "K^-1", "K_-", "K_-^-1"], "slq2": ["a", "b", "c", "d"],
                "skew": ["z", "K", "K^-1"]}
        for i in range(n):
            dialect = list(gens)[i % len(gens)]
            words = []
            for _ in range(rng.randint(1, 3)):
                w = "*".join(rng.choice(gens[dialect]) for _ in range(rng.randint(1, 3)))
                words.append(f"{rng.randint(-9, 9)}/{rng.randint(1, 9)}*{w}")
            x = parse(" + ".join(words), dialect, qp)
            if parse(to_text(x), dialect, qp) != x:
                bad.append((dialect, to_text(x)))
    results.append(CheckResult("parse(print(x)) = x", not bad, f"{n} random elements, failures {bad[:2]}",
                               tm.seconds))
    return results


SUITES = {
    "hopf": suite_hopf,
    "double": suite_double,
    "second": suite_second,
    "weierstrass": suite_weierstrass,
    "norms": suite_norms,
    "boundedness": suite_boundedness,
    "duality": suite_duality,
    "factorial": suite_factorial,
    "commutativity": suite_commutativity,
    "routes": suite_routes,
    "cli": suite_cli,
}


def run_suite(name: str, qp: QParams | None = None, full: bool = False) -> list[CheckResult]:
    qp = qp or QParams()
    if name == "all":
        out = []
        for suite in SUITES.values():
            out.extend(suite(qp, full))
        return out
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    return SUITES[name](qp, full)
