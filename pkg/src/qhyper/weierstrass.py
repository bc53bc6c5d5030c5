"""Regularity, Weierstrass division and Weierstrass preparation in
``A{z, alpha, delta}``, run as the iterative algorithm of the constructive
proof: divide by the polynomial part ``f0`` using the recursively built
decompositions ``z^n = q_n f0 + r_n``, then feed ``g_{k+1} = q^(k) D``
back in until the remainder of the input drops below the target floor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import NEG_INF, log_norm
from .skewseries import SkewSeries, gauss_norm, rescale, residue_reduce

DEFAULT_FLOOR = -40


class NotRegularError(ValueError):
    pass


class NonConvergenceError(ArithmeticError):
    pass


@dataclass
class RegularityReport:
    is_regular: bool
    degree: int | None = None
    leading_residue: object = None
    lam: Fraction | None = None
    f0: SkewSeries | None = None
    D: SkewSeries | None = None

    def to_json(self):
        if not self.is_regular:
            return {"is_regular": False}
        return {"is_regular": True, "degree": self.degree,
                "leading_residue": self.leading_residue,
                "D": self.D.to_json()}


def _to_unit_radius(f: SkewSeries):
    e = f.ring.radius_exp
    if e == 0:
        return f, None
    s = Fraction(f.ring.p) ** (-e)
    return rescale(f, s), s


def _back(x: SkewSeries, s):
    return x if s is None else rescale(x, 1 / s, strict=False)


def check_regular(f: SkewSeries) -> RegularityReport:
    """Decide regularity and produce the split ``f = f0 - D``.

    ``f0`` is the canonical lift ``lam z^d + sum_{i<d} c_i z^i`` of the
    residue polynomial and ``D = f0 - f`` has norm < 1.
    """
    if f.is_zero() or gauss_norm(f) != 0:
        return RegularityReport(False)
    g, s = _to_unit_radius(f)
    bar = residue_reduce(g)
    d = bar.degree
    base = g.ring.base
    lead = bar.coeffs[d]
    # the leading residue must be a nonzero scalar of the residue ring
    lam_lift = base.lift(lead)
    if base.lognorm(base.add(lam_lift, base.neg(base.coerce(base.constant_term(lam_lift))))) >= 0:
        return RegularityReport(False)
    lam = base.constant_term(lam_lift)
    coeffs = {i: base.lift(c) for i, c in bar.coeffs.items() if i < d}
    coeffs[d] = base.coerce(lam)
    f0 = g.ring.element(coeffs)
    D = f0 - g
    return RegularityReport(True, d, lead, lam, _back(f0, s), _back(D, s))


class _PowerTable:
    """Decompositions ``z^n = q_n f0 + r_n`` built by the proof's recursion."""

    def __init__(self, ring, d: int, lam: Fraction, c: dict, bound=NEG_INF):
        self.ring = ring
        self.bound = bound
        self.d = d
        self.lam_inv = 1 / lam
        base = ring.base
        zero = base.zero()
        self.q: list[SkewSeries] = []
        self.r: list[dict] = []
        for n in range(d):
            self.q.append(ring.zero())
            self.r.append({n: base.one()})
        if d == 0:
            return
        self.rd = {i: base.scale(-self.lam_inv, c.get(i, zero)) for i in range(d)}
        self.q.append(ring.const(base.scale(self.lam_inv, base.one())))
        self.r.append(dict(self.rd))

    def get(self, n: int):
        ring, base, ore, d = self.ring, self.ring.base, self.ring.ore, self.d
        while len(self.q) <= n:
            m = len(self.q) - 1
            cn = self.r[m]
            zero = base.zero()
            top = ore.alpha(cn.get(d - 1, zero))
            qn = ring.gen() * self.q[m] + ring.const(base.scale(self.lam_inv, top))
            rn = {i: base.mul(top, self.rd[i]) for i in range(d)}
            for i in range(d):
                extra = ore.apply_delta(base, cn.get(i, zero))
                if i > 0:
                    extra = base.add(extra, ore.alpha(cn.get(i - 1, zero)))
                rn[i] = base.add(rn[i], extra)
            if self.bound != NEG_INF:
                qn = qn.approx(self.bound)
                rn = {i: base.approx(c, self.bound) for i, c in rn.items()}
            self.q.append(qn)
            self.r.append(rn)
        return self.q[n], self.r[n]


def _divide_f0(g: SkewSeries, table: _PowerTable):
    ring, base = g.ring, g.ring.base
    qacc: dict = {}
    racc: dict = {}
    for n, gn in g.coeffs.items():
        qn, rn = table.get(n)
        for k, c in qn.coeffs.items():
            v = base.add(qacc.get(k, base.zero()), base.mul(gn, c))
            qacc[k] = v
        for i, c in rn.items():
            racc[i] = base.add(racc.get(i, base.zero()), base.mul(gn, c))
    return ring.element(qacc), ring.element(racc)


@dataclass
class DivisionResult:
    q: SkewSeries
    r: SkewSeries
    iterations: int
    residual_floor: object  # log_p of the last discarded piece, -inf when exact

    def __iter__(self):
        return iter((self.q, self.r))


def wdivide(g: SkewSeries, f: SkewSeries, target_floor: int = DEFAULT_FLOOR,
            truncate: bool = True, max_iter: int = 10_000) -> DivisionResult:
    """Weierstrass division ``g = q f + r`` with ``deg r < d``.

    ``target_floor`` is ``log_p`` of the precision floor.  With ``truncate``
    the pieces of each ``g_k`` at or below the floor are discarded before
    the next pass; without it they are carried until the whole ``g_k`` is
    below the floor.  Both batchings agree modulo the floor.
    """
    g._check(f)
    rep = check_regular(f)
    if not rep.is_regular:
        raise NotRegularError("divisor is not regular")
    if g.is_zero():
        return DivisionResult(g.ring.zero(), g.ring.zero(), 0, NEG_INF)
    g1, s = _to_unit_radius(g)
    f1, _ = _to_unit_radius(f)
    f0, _ = _to_unit_radius(rep.f0)
    D = f0 - f1
    if not D.is_zero() and gauss_norm(D) >= 0:
        raise NonConvergenceError("||D|| = 1")
    ring = g1.ring
    # table entries are multiplied by coefficients of norm <= ||g||
    table_bound = target_floor - max(0, gauss_norm(g1)) if truncate else NEG_INF
    table = _PowerTable(ring, rep.degree, rep.lam, f0.low(rep.degree).coeffs, table_bound)
    q_tot, r_tot = ring.zero(), ring.zero()
    cur = g1
    iterations = 0
    discarded = NEG_INF
    while not cur.is_zero():
        if iterations and gauss_norm(cur) <= target_floor:
            discarded = max(discarded, gauss_norm(cur))
            break
        if iterations >= max_iter:
            raise NonConvergenceError("iteration limit reached")
        if truncate:
            kept = cur.approx(target_floor)
            rest = cur - kept
            if not rest.is_zero():
                discarded = max(discarded, gauss_norm(rest))
            cur = kept
        qk, rk = _divide_f0(cur, table)
        q_tot, r_tot = q_tot + qk, r_tot + rk
        cur = qk * D if not D.is_zero() else ring.zero()
        iterations += 1
    return DivisionResult(_back(q_tot, s), _back(r_tot, s), iterations, discarded)


def residual(g: SkewSeries, f: SkewSeries, q: SkewSeries, r: SkewSeries):
    """``log_p ||g - (q f + r)||``."""
    return gauss_norm(g - (q * f + r))


@dataclass
class Preparation:
    w: SkewSeries
    e_prime: SkewSeries
    target_floor: int

    @property
    def e(self) -> SkewSeries:
        """``e'^-1`` to the working precision, so that ``f = e w``."""
        return invert_unit(self.e_prime, self.target_floor)

    def __iter__(self):
        return iter((self.w, self.e))


def wprepare(f: SkewSeries, target_floor: int = DEFAULT_FLOOR) -> Preparation:
    """``x^d = e' f + r``; ``w = x^d - r = e' f`` is regular of degree d."""
    rep = check_regular(f)
    if not rep.is_regular:
        raise NotRegularError("not regular")
    ring = f.ring
    xd = ring.element({rep.degree: ring.base.one()})
    if ring.radius_exp:
        # x^d has norm R^d; divide the unit-norm monomial instead
        xd = xd.scale(Fraction(ring.p) ** (ring.radius_exp * rep.degree))
    res = wdivide(xd, f, target_floor)
    return Preparation(xd - res.r, res.q, target_floor)


def invert_unit(e: SkewSeries, target_floor: int = DEFAULT_FLOOR) -> SkewSeries:
    """Inverse of ``e = mu (1 - N)`` with ``mu`` a unit scalar and ``||N|| < 1``."""
    ring, base = e.ring, e.ring.base
    mu = base.constant_term(e[0])
    if mu == 0 or log_norm(mu, ring.p) != 0:
        raise ValueError("not a unit of the form mu(1 - N)")
    N = ring.one() - e.scale(1 / mu)
    if not N.is_zero() and gauss_norm(N) >= 0:
        raise ValueError("||1 - e/mu|| = 1")
    total, power = ring.one(), ring.one()
    while not N.is_zero():
        power = (power * N).approx(target_floor)
        if power.is_zero():
            break
        total = total + power
    return total.scale(1 / mu)
