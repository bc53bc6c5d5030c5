"""Ore extensions ``A[x, alpha, delta]`` over normed base algebras.

Elements are finite representatives ``sum f_n x^n`` (coefficients on the
left) with an optional precision floor; the completion is never built.
Norms are logarithmic: ``log_p ||f||``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .linear import Element, add_into
from .scalars import NEG_INF, QParams, as_scalar, format_scalar, log_norm


# ---------------------------------------------------------------------------
# base algebras

def approx_scalar(c: Fraction, p: int, bound) -> Fraction:
    """A short rational ``c'`` with ``|c - c'| <= p^bound``.

    ``c' = 0`` when ``|c| <= p^bound``; ``c`` itself when it is already short.
    """
    if c == 0 or bound == NEG_INF:
        return c
    v = -log_norm(c, p)
    if v >= -bound:
        return Fraction(0)
    digits = int(-bound - v)
    unit = c / Fraction(p) ** v
    mod = p ** digits
    if abs(unit.numerator) < mod and unit.denominator < mod:
        # already short: keep it exact
        return c
    r = unit.numerator * pow(unit.denominator, -1, mod) % mod
    if r > mod // 2:
        r -= mod
    return Fraction(r) * Fraction(p) ** v


class ScalarBase:
    """The field L itself (exact rationals with the p-adic norm)."""

    multiplicative = True

    def __init__(self, p: int):
        self.p = p

    def __repr__(self):
        return f"ScalarBase(p={self.p})"

    def __eq__(self, other):
        return isinstance(other, ScalarBase) and other.p == self.p

    def __hash__(self):
        return hash(("L", self.p))

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, a):
        return as_scalar(a)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def scale(self, c, a):
        return as_scalar(c) * a

    def is_zero(self, a) -> bool:
        return a == 0

    def lognorm(self, a):
        return log_norm(a, self.p)

    def truncate(self, a, bound):
        return Fraction(0) if self.lognorm(a) <= bound else a

    def constant_term(self, a) -> Fraction:
        return a

    def approx(self, a, bound):
        return approx_scalar(a, self.p, bound)

    # residue field F_p
    def residue(self, a) -> int:
        if self.lognorm(a) > 0:
            raise ValueError("residue needs norm <= 1")
        a = as_scalar(a)
        return a.numerator * pow(a.denominator, -1, self.p) % self.p

    def res_zero(self):
        return 0

    def res_add(self, a, b):
        return (a + b) % self.p

    def res_mul(self, a, b):
        return a * b % self.p

    def res_is_zero(self, a) -> bool:
        return a % self.p == 0

    def lift(self, r) -> Fraction:
        return Fraction(r)

    def to_json(self, a):
        return format_scalar(a)

    def from_json(self, obj):
        return as_scalar(obj)

    def format(self, a) -> str:
        return str(a)


class _MonomialBase:
    """Shared code for bases whose elements are :class:`Element` sums."""

    multiplicative = True

    def __init__(self, qp: QParams):
        self.qp = qp
        self.p = qp.p
        self._mul: dict = {}

    # parent protocol for Element
    def one(self):
        return Element(self, {self.unit_key: 1})

    def zero(self):
        return Element(self, {})

    def scalar(self, c):
        return Element(self, {self.unit_key: as_scalar(c)})

    def monomial(self, m):
        return Element(self, {m: 1})

    def coerce(self, a):
        return a if isinstance(a, Element) else self.scalar(a)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def scale(self, c, a):
        return a.scale(c)

    def is_zero(self, a):
        return a.is_zero()

    def lognorm(self, a):
        best = NEG_INF
        for m, c in a.items():
            best = max(best, log_norm(c, self.p) + self.weight(m))
        return best

    def truncate(self, a, bound):
        return Element(self, {m: c for m, c in a.items()
                              if log_norm(c, self.p) + self.weight(m) > bound})

    def constant_term(self, a) -> Fraction:
        return a.coeff(self.unit_key)

    def approx(self, a, bound):
        return Element(self, {m: approx_scalar(c, self.p, bound - self.weight(m))
                              for m, c in a.items()})

    def _unit_scale(self, m) -> Fraction:
        # rescaled monomial: m / p^weight has norm 1
        return Fraction(self.p) ** self.weight(m)

    def residue(self, a) -> dict:
        if self.lognorm(a) > 0:
            raise ValueError("residue needs norm <= 1")
        out = {}
        for m, c in a.items():
            c2 = c * self._unit_scale(m)
            if log_norm(c2, self.p) == 0:
                out[m] = c2.numerator * pow(c2.denominator, -1, self.p) % self.p
        return out

    def res_zero(self):
        return {}

    def res_add(self, a, b):
        out = dict(a)
        for m, c in b.items():
            v = (out.get(m, 0) + c) % self.p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return out

    def res_mul(self, a, b):
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                for m, c in self.mul_monomials(m1, m2).items():
                    # structure constants are powers of q: units
                    cr = c.numerator * pow(c.denominator, -1, self.p) % self.p
                    v = (out.get(m, 0) + c1 * c2 * cr) % self.p
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
        return out

    def res_is_zero(self, a):
        return not a

    def lift(self, r) -> Element:
        return Element(self, {m: Fraction(c) / self._unit_scale(m) for m, c in r.items()})

    def format(self, a) -> str:
        return str(a)


class LaurentBase(_MonomialBase):
    """Laurent polynomials ``sum f_n K^n`` with norm ``max |f_n| R_K^n``."""

    unit_key = 0

    def __init__(self, qp: QParams, eK: int = 0):
        super().__init__(qp)
        self.eK = eK

    def __repr__(self):
        return f"LaurentBase(p={self.p}, eK={self.eK})"

    def __eq__(self, other):
        return isinstance(other, LaurentBase) and (other.qp, other.eK) == (self.qp, self.eK)

    def __hash__(self):
        return hash(("K", self.qp, self.eK))

    def weight(self, m) -> int:
        return self.eK * m

    def mul_monomials(self, a, b):
        return {a + b: Fraction(1)}

    def K(self, n: int = 1) -> Element:
        return self.monomial(n)

    def format_monomial(self, m):
        return "1" if m == 0 else ("K" if m == 1 else f"K^{m}")

    def to_json(self, a):
        return [{"k": m, "coeff": format_scalar(c)} for m, c in sorted(a.items())]

    def from_json(self, obj):
        return Element(self, {int(t["k"]): as_scalar(t["coeff"]) for t in obj})


class BorelMinusBase(_MonomialBase):
    """U_q(b-) in F-K order: monomials ``(j, l) = F^j K^l`` with
    ``K F = q^-2 F K`` and norm ``max |c| R_F^j R_K^l``."""

    unit_key = (0, 0)

    def __init__(self, qp: QParams, eF: int, eK: int = 0):
        super().__init__(qp)
        self.eF = eF
        self.eK = eK

    def __repr__(self):
        return f"BorelMinusBase(p={self.p}, eF={self.eF}, eK={self.eK})"

    def __eq__(self, other):
        return (isinstance(other, BorelMinusBase)
                and (other.qp, other.eF, other.eK) == (self.qp, self.eF, self.eK))

    def __hash__(self):
        return hash(("FK", self.qp, self.eF, self.eK))

    def weight(self, m) -> int:
        return self.eF * m[0] + self.eK * m[1]

    def mul_monomials(self, a, b):
        key = (a, b)
        hit = self._mul.get(key)
        if hit is None:
            (j, l), (i, m) = a, b
            hit = self._mul[key] = {(j + i, l + m): self.qp.q ** (-2 * l * i)}
        return hit

    def format_monomial(self, m):
        j, l = m
        parts = []
        if j:
            parts.append("F" if j == 1 else f"F^{j}")
        if l:
            parts.append("K" if l == 1 else f"K^{l}")
        return "*".join(parts) if parts else "1"

    def to_json(self, a):
        return [{"nF": m[0], "nK": m[1], "coeff": format_scalar(c)} for m, c in sorted(a.items())]

    def from_json(self, obj):
        return Element(self, {(int(t["nF"]), int(t["nK"])): as_scalar(t["coeff"]) for t in obj})


for _cls in (LaurentBase, BorelMinusBase):
    def _fmt(self, x, _cls=_cls):
        from .qalgebra import format_terms
        return format_terms(x, self.format_monomial)
    _cls.format = _fmt  # type: ignore[assignment]


# ---------------------------------------------------------------------------
# Ore data

@dataclass(frozen=True)
class OreData:
    """An endomorphism ``alpha`` and an alpha-derivation ``delta`` of the base.

    ``alpha_bound`` / ``delta_bound`` are declared ``log_p`` operator-norm
    bounds (0 means norm <= 1).  ``alpha_bar`` / ``delta_bar`` optionally
    give the induced maps on the residue ring; otherwise they are derived
    by lifting.
    """

    alpha: Callable
    delta: Callable | None = None
    alpha_bound: int = 0
    delta_bound: int = 0
    alpha_isometric: bool = True
    alpha_bar: Callable | None = None
    delta_bar: Callable | None = None
    name: str = ""

    def apply_delta(self, base, a):
        return base.zero() if self.delta is None else self.delta(a)

    def scaled(self, s) -> "OreData":
        """Same alpha, delta replaced by ``s^-1 delta``."""
        s = as_scalar(s)
        if self.delta is None:
            return self
        d = self.delta
        return OreData(self.alpha, lambda a: d(a) * (1 / s) if not isinstance(d(a), Fraction)
                       else d(a) / s,
                       self.alpha_bound, self.delta_bound, self.alpha_isometric,
                       self.alpha_bar, None, f"{self.name}/s")


def identity_ore() -> OreData:
    return OreData(alpha=lambda a: a, delta=None, name="id")


def check_ore(base, ore: OreData, samples) -> list[str]:
    """Spot-check the derivation rule and the declared norm bounds."""
    problems = []
    samples = list(samples)
    for a in samples:
        if ore.alpha_bound <= 0 and base.lognorm(ore.alpha(a)) > base.lognorm(a) + ore.alpha_bound:
            problems.append(f"||alpha({a})|| exceeds bound")
        d = ore.apply_delta(base, a)
        if ore.delta is not None and base.lognorm(d) > base.lognorm(a) + ore.delta_bound:
            problems.append(f"||delta({a})|| exceeds bound")
        for b in samples:
            lhs = ore.apply_delta(base, base.mul(a, b))
            rhs = base.add(base.mul(ore.apply_delta(base, a), b),
                           base.mul(ore.alpha(a), ore.apply_delta(base, b)))
            if lhs != rhs:
                problems.append(f"delta rule fails on ({a}, {b})")
    return problems


# ---------------------------------------------------------------------------
# skew rings and their elements

@dataclass(frozen=True, eq=False)
class SkewRing:
    """``A{x/R, alpha, delta}`` with ``R = p^radius_exp``."""

    base: object
    ore: OreData
    radius_exp: int = 0
    var: str = "x"
    _pow_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def p(self) -> int:
        return self.base.p

    def element(self, coeffs: dict, floor=None) -> "SkewSeries":
        return SkewSeries(self, {n: self.base.coerce(c) for n, c in coeffs.items()}, floor)

    def zero(self):
        return SkewSeries(self, {})

    def one(self):
        return SkewSeries(self, {0: self.base.one()})

    def gen(self):
        return SkewSeries(self, {1: self.base.one()})

    def const(self, a):
        return SkewSeries(self, {0: self.base.coerce(a)})

    def x_times(self, poly: dict) -> dict:
        """``x * sum b_i x^i = sum alpha(b_i) x^(i+1) + delta(b_i) x^i``."""
        base, ore = self.base, self.ore
        out: dict = {}
        for i, b in poly.items():
            _acc(base, out, i + 1, ore.alpha(b))
            if ore.delta is not None:
                _acc(base, out, i, ore.delta(b))
        return out

    def x_power_times(self, n: int, a) -> dict:
        """``x^n * a`` for a base element ``a``, via the one-step rule."""
        key = (n, a)
        try:
            hit = self._pow_cache.get(key)
        except TypeError:
            hit, key = None, None
        if hit is not None:
            return hit
        poly = {0: a} if n == 0 else self.x_times(self.x_power_times(n - 1, a))
        if key is not None:
            self._pow_cache[key] = poly
        return poly


def _acc(base, out: dict, n: int, c):
    if base.is_zero(c):
        return
    if n in out:
        v = base.add(out[n], c)
        if base.is_zero(v):
            del out[n]
        else:
            out[n] = v
    else:
        out[n] = c


def _max(a, b):
    return a if b is None else (b if a is None else max(a, b))


class SkewSeries:
    """A finite representative ``sum f_n x^n`` plus a precision floor.

    ``floor`` is ``None`` for exact elements, else the ``log_p`` of the
    floor: the element stands for its coset modulo terms of norm <= floor.
    """

    __slots__ = ("ring", "coeffs", "floor")

    def __init__(self, ring: SkewRing, coeffs: dict, floor=None):
        base = ring.base
        clean = {}
        for n, c in coeffs.items():
            if n < 0:
                raise ValueError("negative degree")
            if floor is not None:
                c = base.truncate(c, floor - ring.radius_exp * n)
            if not base.is_zero(c):
                clean[n] = c
        self.ring = ring
        self.coeffs = clean
        self.floor = floor

    # -- structure ------------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, SkewSeries):
            raise TypeError("expected a SkewSeries")
        if other.ring is not self.ring:
            if (other.ring.base != self.ring.base
                    or other.ring.radius_exp != self.ring.radius_exp
                    or other.ring.ore is not self.ring.ore):
                raise ValueError("mismatched base algebra, Ore data or radius")

    @property
    def degree(self) -> int:
        return max(self.coeffs) if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, n):
        return self.coeffs.get(n, self.ring.base.zero())

    def __eq__(self, other):
        if not isinstance(other, SkewSeries):
            return NotImplemented
        return (self.ring.base == other.ring.base and self.coeffs == other.coeffs
                and self.floor == other.floor)

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs)))

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, SkewSeries):
            other = self.ring.const(other)
        self._check(other)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            _acc(self.ring.base, out, n, c)
        return SkewSeries(self.ring, out, _max(self.floor, other.floor))

    def __neg__(self):
        base = self.ring.base
        return SkewSeries(self.ring, {n: base.neg(c) for n, c in self.coeffs.items()}, self.floor)

    def __sub__(self, other):
        if not isinstance(other, SkewSeries):
            other = self.ring.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SkewSeries):
            return skew_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def scale(self, c):
        base = self.ring.base
        return SkewSeries(self.ring, {n: base.scale(c, a) for n, a in self.coeffs.items()},
                          None if self.floor is None else self.floor + log_norm(c, self.ring.p))

    def left_mul(self, a):
        """``a * f`` for a base element ``a``."""
        base = self.ring.base
        return SkewSeries(self.ring, {n: base.mul(a, c) for n, c in self.coeffs.items()}, self.floor)

    def shift(self, k: int):
        """``f * x^k``."""
        return SkewSeries(self.ring, {n + k: c for n, c in self.coeffs.items()}, self.floor)

    def approx(self, bound) -> "SkewSeries":
        """Exact representative agreeing with ``self`` up to ``p^bound``, with short coefficients."""
        base, e = self.ring.base, self.ring.radius_exp
        return SkewSeries(self.ring, {n: base.approx(c, bound - e * n)
                                      for n, c in self.coeffs.items()}, None)

    def with_floor(self, floor):
        return SkewSeries(self.ring, self.coeffs, floor)

    def low(self, d: int):
        return SkewSeries(self.ring, {n: c for n, c in self.coeffs.items() if n < d}, self.floor)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        v = self.ring.var
        parts = []
        for n in sorted(self.coeffs):
            c = self.ring.base.format(self.coeffs[n])
            mon = "" if n == 0 else (v if n == 1 else f"{v}^{n}")
            parts.append(f"({c})*{mon}" if mon else f"({c})")
        s = " + ".join(parts)
        if self.floor is not None:
            s += f" + O(p^{self.floor})"
        return s

    # -- JSON ---------------------------------------------------------------------
    def to_json(self) -> dict:
        base = self.ring.base
        return {"radius_exp": self.ring.radius_exp,
                "precision_floor_exp": None if self.floor is None else int(self.floor),
                "terms": [{"deg": n, "coeff": base.to_json(self.coeffs[n])}
                          for n in sorted(self.coeffs)]}


def from_json(ring: SkewRing, obj: dict) -> SkewSeries:
    if obj.get("radius_exp", ring.radius_exp) != ring.radius_exp:
        raise ValueError("radius mismatch")
    base = ring.base
    return SkewSeries(ring, {int(t["deg"]): base.from_json(t["coeff"]) for t in obj["terms"]},
                      obj.get("precision_floor_exp"))


# ---------------------------------------------------------------------------
# operations

def gauss_norm(f: SkewSeries):
    """``log_p max_n ||f_n|| R^n``; ``-inf`` for the zero representative."""
    base, e = f.ring.base, f.ring.radius_exp
    best = NEG_INF
    for n, c in f.coeffs.items():
        best = max(best, base.lognorm(c) + e * n)
    return best


def _floor_log(f):
    return NEG_INF if f.floor is None else f.floor


def skew_multiply(f: SkewSeries, g: SkewSeries) -> SkewSeries:
    f._check(g)
    ring = f.ring
    base = ring.base
    out: dict = {}
    for k, gk in g.coeffs.items():
        for n, fn in f.coeffs.items():
            for i, c in ring.x_power_times(n, gk).items():
                _acc(base, out, i + k, base.mul(fn, c))
    floor = None
    if f.floor is not None or g.floor is not None:
        nf, ng = gauss_norm(f), gauss_norm(g)
        ef, eg = _floor_log(f), _floor_log(g)
        floor = max(ef + ng, eg + nf, ef + eg)
        if floor == NEG_INF:
            floor = max(ef, eg)
    return SkewSeries(ring, out, floor)


def rescale(f: SkewSeries, s, strict: bool = True) -> SkewSeries:
    """Substitute ``x = s z``: ``A{x/R, alpha, delta} -> A{z/(R/|s|), alpha, s^-1 delta}``.

    With ``strict`` the target is the unit-radius ring and ``|s| = R`` is
    required.
    """
    s = as_scalar(s)
    ring = f.ring
    ls = log_norm(s, ring.p)
    if s == 0 or (strict and ls != ring.radius_exp):
        raise ValueError(f"rescale needs |s| = R = p^{ring.radius_exp}")
    target = _rescaled_ring(ring, s)
    base = ring.base
    floor = None if f.floor is None else f.floor
    return SkewSeries(target, {n: base.scale(s ** n, c) for n, c in f.coeffs.items()}, floor)


def _rescaled_ring(ring: SkewRing, s) -> SkewRing:
    cache = ring._pow_cache.setdefault(("rescaled",), {})
    hit = cache.get(s)
    if hit is None:
        hit = cache[s] = SkewRing(ring.base, ring.ore.scaled(s),
                                  ring.radius_exp - log_norm(s, ring.p), ring.var)
        # remember the way back so that round trips land in the original ring
        hit._pow_cache.setdefault(("rescaled",), {})[1 / s] = ring
    return hit


# -- residue reduction ----------------------------------------------------------------

class ResiduePoly:
    """An element of the reduced Ore ring ``A-bar[x-bar, alpha-bar, delta-bar]``."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: SkewRing, coeffs: dict):
        base = ring.base
        self.ring = ring
        self.coeffs = {n: c for n, c in coeffs.items() if not base.res_is_zero(c)}

    def _alpha_bar(self, r):
        ore, base = self.ring.ore, self.ring.base
        if ore.alpha_bar is not None:
            return ore.alpha_bar(r)
        return base.residue(ore.alpha(base.lift(r)))

    def _delta_bar(self, r):
        ore, base = self.ring.ore, self.ring.base
        if ore.delta is None:
            return base.res_zero()
        if ore.delta_bar is not None:
            return ore.delta_bar(r)
        return base.residue(ore.delta(base.lift(r)))

    def __mul__(self, other: "ResiduePoly") -> "ResiduePoly":
        base = self.ring.base
        out: dict = {}

        def acc(n, c):
            out[n] = base.res_add(out.get(n, base.res_zero()), c)

        for k, gk in other.coeffs.items():
            for n, fn in self.coeffs.items():
                poly = {0: gk}
                for _ in range(n):
                    nxt: dict = {}
                    for i, b in poly.items():
                        nxt[i + 1] = base.res_add(nxt.get(i + 1, base.res_zero()), self._alpha_bar(b))
                        nxt[i] = base.res_add(nxt.get(i, base.res_zero()), self._delta_bar(b))
                    poly = nxt
                for i, c in poly.items():
                    acc(i + k, base.res_mul(fn, c))
        return ResiduePoly(self.ring, out)

    def __eq__(self, other):
        return isinstance(other, ResiduePoly) and self.coeffs == other.coeffs

    @property
    def degree(self) -> int:
        return max(self.coeffs) if self.coeffs else -1

    def __repr__(self):
        return " + ".join(f"[{c}]*z^{n}" for n, c in sorted(self.coeffs.items())) or "0"


def residue_reduce(f: SkewSeries) -> ResiduePoly:
    """Reduce ``f`` (Gauss norm <= 1) modulo the elements of norm < 1.

    The variable is first rescaled to unit radius.
    """
    if gauss_norm(f) > 0:
        raise ValueError("residue_reduce needs gauss_norm <= 1")
    if f.ring.radius_exp != 0:
        f = rescale(f, Fraction(f.ring.p) ** (-f.ring.radius_exp))
    base = f.ring.base
    return ResiduePoly(f.ring, {n: base.residue(c) for n, c in f.coeffs.items()
                                if base.lognorm(c) == 0})


# ---------------------------------------------------------------------------
# standard rings used throughout

def scalar_ring(p: int, radius_exp: int = 0, var: str = "z") -> SkewRing:
    """``L{z}`` with trivial Ore data (a commutative Tate algebra)."""
    return SkewRing(ScalarBase(p), identity_ore(), radius_exp, var)


def laurent_ore(qp: QParams, weight: int = 2, eK: int = 0) -> tuple[LaurentBase, OreData]:
    """``U_q(h)`` with ``alpha(K) = q^weight K`` and ``delta = 0``."""
    base = LaurentBase(qp, eK)
    q = qp.q

    def alpha(a):
        return Element(base, {k: c * q ** (weight * k) for k, c in a.items()})

    qbar = q.numerator * pow(q.denominator, -1, qp.p) % qp.p

    def alpha_bar(r):
        return {k: c * pow(qbar, weight * k, qp.p) % qp.p for k, c in r.items()}

    return base, OreData(alpha=alpha, alpha_bar=alpha_bar, name=f"K->q^{weight}K")


def laurent_ring(qp: QParams, radius_exp: int = 0, var: str = "F", weight: int = 2) -> SkewRing:
    base, ore = laurent_ore(qp, weight)
    return SkewRing(base, ore, radius_exp, var)
