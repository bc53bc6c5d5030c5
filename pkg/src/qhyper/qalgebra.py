"""U_q(sl2), its breve variant and the Borel halves in E-K-F normal form.

Monomials are tuples ``(nE, nK, nF)`` standing for ``E^nE K^nK F^nF``.
Products are computed by a memoized straightening rule for ``F^b E^c``;
``normalize`` reduces arbitrary words of generators to this form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linear import Element, Tensor, add_into
from .scalars import NEG_INF, QParams, as_scalar, format_scalar, q_factorial

VARIANTS = ("standard", "breve", "borel+", "borel-")


class TriangularAlgebra:
    """Algebras with a normal form ``E^a K^t F^b`` over a Laurent torus.

    Subclasses set ``rank`` (number of torus generators) and
    ``w_e``, ``w_f``, ``h_terms`` so that

        K^t E = q^<w_e,t> E K^t,   F K^t = q^<w_f,t> K^t F,
        F E = E F - sum_t h_t K^t.
    """

    rank = 1
    w_e: tuple = (2,)
    w_f: tuple = (2,)
    h_terms: dict = {}

    def __init__(self, qp: QParams):
        self.qp = qp
        self._mul_cache: dict = {}
        self._fe_cache: dict = {}

    # -- basic element constructors -------------------------------------
    def _unit_key(self):
        return (0,) * (self.rank + 2)

    def one(self) -> Element:
        return Element(self, {self._unit_key(): 1})

    def zero(self) -> Element:
        return Element(self, {})

    def scalar(self, c) -> Element:
        return Element(self, {self._unit_key(): as_scalar(c)})

    def monomial(self, m) -> Element:
        self.check_monomial(m)
        return Element(self, {tuple(m): 1})

    def element(self, terms) -> Element:
        for m in terms:
            self.check_monomial(m)
        return Element(self, {tuple(m): c for m, c in terms.items()})

    def check_monomial(self, m):
        if len(m) != self.rank + 2 or m[0] < 0 or m[-1] < 0:
            raise ValueError(f"bad monomial {m!r} for {self}")

    # -- multiplication --------------------------------------------------
    def _dot(self, w, t):
        return sum(a * b for a, b in zip(w, t))

    def mul_monomials(self, m1, m2) -> dict:
        key = (m1, m2)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        e1, t1, f1 = m1[0], m1[1:-1], m1[-1]
        e2, t2, f2 = m2[0], m2[1:-1], m2[-1]
        q = self.qp.q
        out: dict = {}
        for (i, s, j), c in self._fe(f1, e2).items():
            power = self._dot(self.w_e, t1) * i + self._dot(self.w_f, t2) * j
            t = tuple(a + b + d for a, b, d in zip(t1, s, t2))
            add_into(out, (e1 + i, *t, j + f2), c * q ** power)
        self._mul_cache[key] = out
        return out

    def _fe(self, b: int, c: int) -> dict:
        """``F^b E^c`` as ``{(i, t, j): coeff}`` meaning ``E^i K^t F^j``."""
        key = (b, c)
        hit = self._fe_cache.get(key)
        if hit is not None:
            return hit
        zero_t = (0,) * self.rank
        if b == 0 or c == 0:
            out = {(c, zero_t, b): Fraction(1)}
            self._fe_cache[key] = out
            return out
        # F E^c = E^c F - E^(c-1) sum_{n<c} sum_t h_t q^(<w_e,t> n) K^t
        q = self.qp.q
        fb1 = (0, *zero_t, b - 1)
        parts: dict = {}
        for m, v in self.mul_monomials(fb1, (c, *zero_t, 1)).items():
            add_into(parts, m, v)
        for t, h in self.h_terms.items():
            shift = sum(q ** (self._dot(self.w_e, t) * n) for n in range(c))
            for m, v in self.mul_monomials(fb1, (c - 1, *t, 0)).items():
                add_into(parts, m, -h * shift * v)
        out = {(m[0], tuple(m[1:-1]), m[-1]): v for m, v in parts.items()}
        self._fe_cache[key] = out
        return out

    # -- generators and words --------------------------------------------
    def generator(self, name: str) -> Element:
        raise NotImplementedError

    def normalize(self, word) -> Element:
        """Normal form of a product of generators and scalars.

        ``word`` is a sequence whose items are generator names, scalars
        or Elements of this algebra.
        """
        out = self.one()
        for item in word:
            if isinstance(item, Element):
                out = out * item
            elif isinstance(item, str):
                out = out * self.generator(item)
            else:
                out = out.scale(item)
        return out

    # -- printing ----------------------------------------------------------
    torus_names: tuple = ("K",)

    def format_monomial(self, m) -> str:
        parts = []
        if m[0]:
            parts.append("E" if m[0] == 1 else f"E^{m[0]}")
        for name, k in zip(self.torus_names, m[1:-1]):
            if k:
                parts.append(name if k == 1 else f"{name}^{k}")
        if m[-1]:
            parts.append("F" if m[-1] == 1 else f"F^{m[-1]}")
        return "*".join(parts) if parts else "1"

    def format(self, x: Element) -> str:
        return format_terms(x, self.format_monomial, sort_key=lambda m: (sum(map(abs, m)), m))

    def degree(self, m) -> int:
        return sum(abs(v) for v in m)


def format_terms(x: Element, fmt, sort_key=None) -> str:
    if x.is_zero():
        return "0"
    out = []
    for m, c in sorted(x.items(), key=lambda kv: sort_key(kv[0]) if sort_key else kv[0]):
        ms = fmt(m)
        a = abs(c)
        if ms == "1":
            body = str(a)
        elif a == 1:
            body = ms
        else:
            body = f"{a}*{ms}"
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


class UqAlgebra(TriangularAlgebra):
    """U_q(sl2) (``standard``), the breve algebra, or a Borel half.

    Borel halves share the standard multiplication and reject monomials
    with the missing generator.
    """

    def __init__(self, qp: QParams, variant: str = "standard"):
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        super().__init__(qp)
        self.variant = variant
        self._coprod_cache: dict = {}
        hinv = 1 / qp.qdiff
        if variant == "breve":
            self.w_e, self.w_f = (1,), (1,)
            self.h_terms = {(2,): hinv, (-2,): -hinv}
        else:
            self.w_e, self.w_f = (2,), (2,)
            self.h_terms = {(1,): hinv, (-1,): -hinv}

    def __repr__(self):
        return f"UqAlgebra(p={self.qp.p}, u={self.qp.u}, {self.variant})"

    def check_monomial(self, m):
        super().check_monomial(m)
        if self.variant == "borel+" and m[2]:
            raise ValueError(f"F is not in U_q(b+): {m!r}")
        if self.variant == "borel-" and m[0]:
            raise ValueError(f"E is not in U_q(b-): {m!r}")

    def generator(self, name: str) -> Element:
        table = {"E": (1, 0, 0), "F": (0, 0, 1), "K": (0, 1, 0), "K^-1": (0, -1, 0),
                 "Ki": (0, -1, 0)}
        if name not in table:
            raise KeyError(f"unknown generator {name!r}")
        return self.monomial(table[name])

    # -- Hopf structure ------------------------------------------------------
    def _gen_coproducts(self):
        one, E, F = (0, 0, 0), (1, 0, 0), (0, 0, 1)
        K, Ki = (0, 1, 0), (0, -1, 0)
        par = (self, self)
        if self.variant == "breve":
            dE = Tensor(par, {(E, K): 1, (Ki, E): 1})
            dF = Tensor(par, {(F, K): 1, (Ki, F): 1})
        else:
            dE = Tensor(par, {(E, K): 1, (one, E): 1})
            dF = Tensor(par, {(F, one): 1, (Ki, F): 1})
        return dE, dF

    def coproduct_monomial(self, m) -> Tensor:
        return _uq_coproduct(self, m)

    def counit_monomial(self, m) -> Fraction:
        return Fraction(1) if m[0] == 0 and m[2] == 0 else Fraction(0)

    def antipode_monomial(self, m) -> Element:
        return _uq_antipode(self, m)

    def require_hopf(self, x: Element):
        for m in x.support():
            self.check_monomial(m)


_ALGEBRAS: dict = {}


def uq(qp: QParams, variant: str = "standard") -> UqAlgebra:
    """Shared algebra instance for the given parameters and variant."""
    alg = _ALGEBRAS.get((qp, variant))
    if alg is None:
        alg = _ALGEBRAS[(qp, variant)] = UqAlgebra(qp, variant)
    return alg


def _tensor_power(t: Tensor, n: int, unit: Tensor) -> Tensor:
    out = unit
    for _ in range(n):
        out = out * t
    return out


def _uq_coproduct(alg: UqAlgebra, m) -> Tensor:
    hit = alg._coprod_cache.get(m)
    if hit is not None:
        return hit
    e, k, f = m
    dE, dF = alg._gen_coproducts()
    unit = Tensor((alg, alg), {((0, 0, 0), (0, 0, 0)): 1})
    dK = Tensor((alg, alg), {((0, k, 0), (0, k, 0)): 1})
    out = _tensor_power(dE, e, unit) * dK * _tensor_power(dF, f, unit)
    alg._coprod_cache[m] = out
    return out


def _uq_antipode(alg: UqAlgebra, m) -> Element:
    e, k, f = m
    q = alg.qp.q
    out = alg.monomial((0, -k, 0))
    if f:
        if alg.variant == "breve":
            sF = Element(alg, {(0, 0, 1): -1 / q})
        else:
            sF = Element(alg, {(0, 1, 1): -1})
        out = sF ** f * out
    if e:
        if alg.variant == "breve":
            sE = Element(alg, {(1, 0, 0): -q})
        else:
            sE = Element(alg, {(1, -1, 0): -1})
        out = out * sE ** e
    return out


# -- Hopf operations on elements ---------------------------------------------

def coproduct(x: Element) -> Tensor:
    alg = x.parent
    alg.require_hopf(x)
    out = Tensor((alg, alg), {})
    for m, c in x.items():
        out = out + alg.coproduct_monomial(m).scale(c)
    return out


def counit(x: Element) -> Fraction:
    alg = x.parent
    alg.require_hopf(x)
    return sum((c * alg.counit_monomial(m) for m, c in x.items()), Fraction(0))


def antipode(x: Element) -> Element:
    alg = x.parent
    alg.require_hopf(x)
    out = alg.zero()
    for m, c in x.items():
        out = out + alg.antipode_monomial(m).scale(c)
    return out


# -- norms ---------------------------------------------------------------------

@dataclass(frozen=True)
class RadiusSpec:
    """Radii ``R_E = p^eE``, ``R_F = p^eF``, ``R_K = p^eK``."""

    eE: int = 1
    eF: int = 1
    eK: int = 0

    def require_hopf(self):
        if self.eK != 0:
            raise ValueError("Hopf operations need R_K = 1 (eK = 0)")


def monomial_weight(m, rs: RadiusSpec) -> int:
    """``log_p`` of ``R_E^nE R_K^nK R_F^nF`` for a PBW or double monomial."""
    torus = sum(m[1:-1])
    return rs.eE * m[0] + rs.eF * m[-1] + rs.eK * torus


def nu_norm(x: Element, rs: RadiusSpec):
    """``log_p`` of the coefficient-decay norm ``max |a| R_E^nE R_F^nF``."""
    qp = x.parent.qp
    best = NEG_INF
    for m, c in x.items():
        best = max(best, qp.lognorm(c) + monomial_weight(m, rs))
    return best


def nu_prime_norm(x: Element, rs: RadiusSpec):
    """Like :func:`nu_norm` with the extra factor ``|[nE]_q!| |[nF]_q!|``."""
    qp = x.parent.qp
    best = NEG_INF
    for m, c in x.items():
        fact = qp.lognorm(q_factorial(m[0], qp)) + qp.lognorm(q_factorial(m[-1], qp))
        best = max(best, qp.lognorm(c) + fact + monomial_weight(m, rs))
    return best


def tensor_nu_norm(t: Tensor, rs: RadiusSpec):
    return t.lognorm(lambda m: monomial_weight(m, rs))


# -- phi and theta ---------------------------------------------------------------

def phi(x: Element) -> Element:
    """The embedding ``E -> EK, F -> K^-1 F, K -> K^2`` into the breve algebra."""
    alg = x.parent
    if alg.variant == "breve":
        raise ValueError("phi is defined on the standard algebra")
    target = uq(alg.qp, "breve")
    img_e = target.monomial((1, 1, 0))
    img_f = target.monomial((0, -1, 1))

    def on_monomial(m):
        e, k, f = m
        return img_e ** e * target.monomial((0, 2 * k, 0)) * img_f ** f

    return x.map_terms(on_monomial) if x else target.zero()


def theta_alpha(x: Element, alpha) -> Element:
    """The automorphism ``E -> aE, F -> a^-1 F, K -> K``."""
    alpha = as_scalar(alpha)
    if alpha == 0:
        raise ValueError("theta_alpha needs alpha != 0")
    return Element(x.parent, {m: c * alpha ** (m[0] - m[2]) for m, c in x.items()})


def to_kef(x: Element) -> dict:
    """Rewrite E-K-F monomials as ``K^m E^n F^l``: ``{(m, n, l): coeff}``."""
    alg = x.parent
    w = alg.w_e[0]
    q = alg.qp.q
    out: dict = {}
    for (e, k, f), c in x.items():
        # E^e K^k = q^(-w e k) K^k E^e
        add_into(out, (k, e, f), c * q ** (-w * e * k))
    return out


def from_kef(alg: UqAlgebra, terms: dict) -> Element:
    w = alg.w_e[0]
    q = alg.qp.q
    return Element(alg, {(n, m, l): c * q ** (w * n * m) for (m, n, l), c in terms.items()})


# -- the second construction ------------------------------------------------------

class RadiusHypothesisError(ValueError):
    pass


class SecondConstruction:
    """U_q(sl2) rebuilt as ``U_q(b-){E/R_E, alpha1, delta}``.

    The base is the Borel-minus algebra in F-K order, the Ore variable is
    E, and
    ``E F^j K^l = q^-2l F^j K^l E + F^(j-1) sum_i H(q^-2i K) K^l``
    with ``H(K) = (K - K^-1) / (q - q^-1)``.
    """

    def __init__(self, qp: QParams, rs: RadiusSpec):
        from .skewseries import BorelMinusBase, OreData, SkewRing

        c = qp.lognorm(1 / qp.qdiff)
        if not (c + rs.eK <= rs.eF or c + rs.eK <= rs.eE):
            raise RadiusHypothesisError(
                f"need |1/(q - q^-1)| R_K <= R_F or <= R_E (p^{c + rs.eK} vs R_F=p^{rs.eF}, R_E=p^{rs.eE})")
        self.qp = qp
        self.rs = rs
        base = BorelMinusBase(qp, rs.eF, rs.eK)
        q, qd = qp.q, qp.qdiff

        def alpha(a):
            return Element(base, {(j, l): v * q ** (-2 * l) for (j, l), v in a.items()})

        def delta(a):
            out: dict = {}
            for (j, l), v in a.items():
                for i in range(j):
                    lam = q ** (-2 * i)
                    add_into(out, (j - 1, l + 1), v * lam / qd)
                    add_into(out, (j - 1, l - 1), -v / (lam * qd))
            return Element(base, out)

        self.base = base
        self.ore = OreData(alpha=alpha, delta=delta, alpha_bound=0,
                           delta_bound=c + rs.eK - rs.eF, name="alpha1, delta")
        self.ring = SkewRing(base, self.ore, rs.eE, "E")

    # -- conversions: everything is built by products inside the engine --
    def E(self):
        return self.ring.gen()

    def F(self, j: int = 1):
        return self.ring.const(self.base.monomial((j, 0)))

    def K(self, k: int = 1):
        return self.ring.const(self.base.monomial((0, k)))

    def from_pbw(self, x: Element):
        """Embed an E-K-F element by multiplying generators inside the skew ring."""
        out = self.ring.zero()
        for (e, k, f), c in x.items():
            term = self.ring.element({e: self.base.one()}) * self.K(k) * self.F(f)
            out = out + term.scale(c)
        return out

    def to_pbw(self, s) -> Element:
        """``F^j K^l E^n`` terms rewritten in E-K-F order (for display)."""
        U = uq(self.qp)
        out = U.zero()
        for n, coeff in s.coeffs.items():
            for (j, l), c in coeff.items():
                out = out + U.normalize(["F"] * j + [U.monomial((0, l, 0)), *(["E"] * n)]).scale(c)
        return out

    def mul(self, x: Element, y: Element):
        return self.from_pbw(x) * self.from_pbw(y)


def build_second_construction(qp: QParams, rs: RadiusSpec) -> SecondConstruction:
    return SecondConstruction(qp, rs)
