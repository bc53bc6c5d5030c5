"""The coordinate Hopf algebra SL_q(2) and its pairing with U_q(sl2).

Basis monomials are ``("A", s, r, t) = a^s c^r b^t`` and
``("D", s, r, t) = d^s c^r b^t`` with ``s >= 1`` for the D family.
"""

from __future__ import annotations

from fractions import Fraction

from .linear import Element, Tensor, add_into
from .qalgebra import (RadiusSpec, format_terms, from_kef, nu_prime_norm, phi, theta_alpha,
                       to_kef, uq)
from .scalars import NEG_INF, QParams, as_scalar, gamma_constant, gauss_binomial

ONE = ("A", 0, 0, 0)


def _mon(kind, s, r, t):
    if s == 0:
        kind = "A"
    return (kind, s, r, t)


class CoordAlgebra:
    """SL_q(2) = M_q(2) / (det_q - 1) with ``ad -> 1 + q bc``."""

    def __init__(self, qp: QParams):
        self.qp = qp
        self._mul_cache: dict = {}
        self._ad_cache: dict = {}
        self._coprod_cache: dict = {}

    def __repr__(self):
        return f"CoordAlgebra(p={self.qp.p}, u={self.qp.u})"

    def one(self):
        return Element(self, {ONE: 1})

    def zero(self):
        return Element(self, {})

    def scalar(self, c):
        return Element(self, {ONE: as_scalar(c)})

    def check_monomial(self, m):
        kind, s, r, t = m
        if kind not in ("A", "D") or min(s, r, t) < 0 or (kind == "D" and s == 0):
            raise ValueError(f"bad coordinate monomial {m!r}")

    def monomial(self, m):
        self.check_monomial(m)
        return Element(self, {tuple(m): 1})

    def element(self, terms):
        for m in terms:
            self.check_monomial(m)
        return Element(self, dict(terms))

    def generator(self, name: str):
        table = {"a": ("A", 1, 0, 0), "b": ("A", 0, 0, 1),
                 "c": ("A", 0, 1, 0), "d": ("D", 1, 0, 0)}
        if name not in table:
            raise KeyError(f"unknown generator {name!r}")
        return self.monomial(table[name])

    def normalize(self, word):
        out = self.one()
        for item in word:
            if isinstance(item, Element):
                out = out * item
            elif isinstance(item, str):
                out = out * self.generator(item)
            else:
                out = out.scale(item)
        return out

    # -- multiplication ---------------------------------------------------
    def _mixed(self, first, s1, s2) -> dict:
        """``a^s1 d^s2`` (first="A") or ``d^s1 a^s2`` (first="D") as
        ``{(kind, x, y): coeff}`` meaning ``X^x (bc)^y``."""
        key = (first, s1, s2)
        hit = self._ad_cache.get(key)
        if hit is not None:
            return hit
        q = self.qp.q
        if s1 == 0 or s2 == 0:
            if first == "A":
                out = {("A", s1, 0): Fraction(1)} if s2 == 0 else {("D", s2, 0): Fraction(1)}
            else:
                out = {("D", s1, 0): Fraction(1)} if s2 == 0 else {("A", s2, 0): Fraction(1)}
            if out and next(iter(out))[1] == 0:
                out = {("A", 0, 0): Fraction(1)}
        else:
            # ad = 1 + q bc, da = 1 + q^-1 bc; bc d = q^2 d bc, bc a = q^-2 a bc
            factor = q ** (2 * s2 - 1) if first == "A" else q ** (1 - 2 * s2)
            out = {}
            for (kind, x, y), c in self._mixed(first, s1 - 1, s2 - 1).items():
                add_into(out, (kind, x, y), c)
                add_into(out, (kind, x, y + 1), c * factor)
        self._ad_cache[key] = out
        return out

    def mul_monomials(self, m1, m2) -> dict:
        key = (m1, m2)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        q = self.qp.q
        k1, s1, r1, t1 = m1
        k2, s2, r2, t2 = m2
        # move c^r1 b^t1 past the leading letter power of m2
        if s2 == 0:
            c0 = Fraction(1)
        elif k2 == "A":
            c0 = q ** (-(r1 + t1) * s2)
        else:
            c0 = q ** ((r1 + t1) * s2)
        if s1 == 0 or s2 == 0 or k1 == k2:
            kind = k1 if s1 else k2
            lead = {(kind, s1 + s2, 0): Fraction(1)}
        else:
            lead = self._mixed(k1, s1, s2)
        out: dict = {}
        for (kind, x, y), c in lead.items():
            add_into(out, _mon(kind, x, y + r1 + r2, y + t1 + t2), c * c0)
        self._mul_cache[key] = out
        return out

    # -- Hopf structure -----------------------------------------------------
    def _gen_coproduct(self, g) -> Tensor:
        a, b, c, d = ("A", 1, 0, 0), ("A", 0, 0, 1), ("A", 0, 1, 0), ("D", 1, 0, 0)
        table = {"a": {(a, a): 1, (b, c): 1}, "b": {(a, b): 1, (b, d): 1},
                 "c": {(c, a): 1, (d, c): 1}, "d": {(c, b): 1, (d, d): 1}}
        return Tensor((self, self), table[g])

    def coproduct_monomial(self, m) -> Tensor:
        hit = self._coprod_cache.get(m)
        if hit is not None:
            return hit
        kind, s, r, t = m
        out = Tensor((self, self), {(ONE, ONE): 1})
        lead = self._gen_coproduct("a" if kind == "A" else "d")
        for g, n in ((lead, s), (self._gen_coproduct("c"), r), (self._gen_coproduct("b"), t)):
            for _ in range(n):
                out = out * g
        self._coprod_cache[m] = out
        return out

    def counit_monomial(self, m) -> Fraction:
        return Fraction(1) if m[2] == 0 and m[3] == 0 else Fraction(0)

    def antipode_monomial(self, m) -> Element:
        kind, s, r, t = m
        q = self.qp.q
        sb = self.generator("b").scale(-1 / q)
        sc = self.generator("c").scale(-q)
        sx = self.generator("d" if kind == "A" else "a")
        return sb ** t * sc ** r * sx ** s

    def require_hopf(self, x):
        pass

    # -- printing --------------------------------------------------------------
    def format_monomial(self, m) -> str:
        kind, s, r, t = m
        parts = []
        for name, n in (("a" if kind == "A" else "d", s), ("c", r), ("b", t)):
            if n:
                parts.append(name if n == 1 else f"{name}^{n}")
        return "*".join(parts) if parts else "1"

    def format(self, x):
        return format_terms(x, self.format_monomial,
                            sort_key=lambda m: (m[1] + m[2] + m[3], m))

    def degree(self, m) -> int:
        return m[1] + m[2] + m[3]


_COORD: dict = {}


def coord(qp: QParams) -> CoordAlgebra:
    alg = _COORD.get(qp)
    if alg is None:
        alg = _COORD[qp] = CoordAlgebra(qp)
    return alg


class MatrixAlgebra:
    """M_q(2) before the determinant quotient; monomials ``a^i c^k b^j d^l``."""

    def __init__(self, qp: QParams):
        self.qp = qp
        self._app: dict = {}
        self._mul: dict = {}

    def one(self):
        return Element(self, {(0, 0, 0, 0): 1})

    def zero(self):
        return Element(self, {})

    def scalar(self, c):
        return Element(self, {(0, 0, 0, 0): as_scalar(c)})

    def monomial(self, m):
        return Element(self, {tuple(m): 1})

    def generator(self, name):
        idx = "acbd".index(name)
        m = [0, 0, 0, 0]
        m[idx] = 1
        return self.monomial(tuple(m))

    def _append(self, m, g) -> dict:
        key = (m, g)
        hit = self._app.get(key)
        if hit is not None:
            return hit
        q = self.qp.q
        i, k, j, l = m
        if g == "d":
            out = {(i, k, j, l + 1): Fraction(1)}
        elif g == "b":
            out = {(i, k, j + 1, l): q ** -l}
        elif g == "c":
            out = {(i, k + 1, j, l): q ** -l}
        elif l == 0:
            out = {(i + 1, k, j, 0): q ** -(k + j)}
        else:
            # d a = a d - (q - q^-1) b c
            base = (i, k, j, l - 1)
            out = {}
            for m1, c1 in self._append(base, "a").items():
                for m2, c2 in self._append(m1, "d").items():
                    add_into(out, m2, c1 * c2)
            for m1, c1 in self._append(base, "b").items():
                for m2, c2 in self._append(m1, "c").items():
                    add_into(out, m2, -self.qp.qdiff * c1 * c2)
        self._app[key] = out
        return out

    def mul_monomials(self, m1, m2) -> dict:
        key = (m1, m2)
        hit = self._mul.get(key)
        if hit is not None:
            return hit
        cur = {m1: Fraction(1)}
        word = "a" * m2[0] + "c" * m2[1] + "b" * m2[2] + "d" * m2[3]
        for g in word:
            nxt: dict = {}
            for m, c in cur.items():
                for m3, c3 in self._append(m, g).items():
                    add_into(nxt, m3, c * c3)
            cur = nxt
        self._mul[key] = cur
        return cur

    def det_q(self):
        a, b, c, d = (self.generator(x) for x in "abcd")
        return a * d - (b * c).scale(self.qp.q)

    def format_monomial(self, m):
        parts = [n if e == 1 else f"{n}^{e}" for n, e in zip("acbd", m) if e]
        return "*".join(parts) if parts else "1"

    def format(self, x):
        return format_terms(x, self.format_monomial)


# -- automorphism ------------------------------------------------------------

def transpose_auto(x: Element, alpha, beta) -> Element:
    """``a -> alpha a, b -> beta c, c -> beta^-1 b, d -> alpha^-1 d``."""
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    if alpha == 0 or beta == 0:
        raise ValueError("transpose_auto needs nonzero parameters")
    out: dict = {}
    for (kind, s, r, t), c in x.items():
        a_pow = s if kind == "A" else -s
        add_into(out, _mon(kind, s, t, r), c * alpha ** a_pow * beta ** (t - r))
    return Element(x.parent, out)


# -- pairings -------------------------------------------------------------------

def breve_monomial_value(kef, mon, qp: QParams) -> Fraction:
    """``<K^m E^n F^l, y>`` in the breve normalization for a basis monomial ``y``."""
    m, n, l = kef
    kind, s, r, t = mon
    if kind == "A":
        if r == n and t == l:
            return gamma_constant(-s, r, t, m, n, l, qp)
        return Fraction(0)
    k = n - r
    if 0 <= k == l - t <= s:
        q = qp.q
        return q ** (k * k) * gauss_binomial(s, k, q * q) * gamma_constant(s, r, t, m, n, l, qp)
    return Fraction(0)


def uq_monomial_value(kef, mon, qp: QParams) -> Fraction:
    """``<K^m E^n F^l, y>`` for the standard algebra.

    Equals ``u^-(n-l)^2`` times the breve value at K-index ``2m + n - l``,
    i.e. the breve pairing precomposed with ``phi o theta_u``.
    """
    m, n, l = kef
    return qp.upow(-(n - l) ** 2) * breve_monomial_value((2 * m + n - l, n, l), mon, qp)


class _Pairing:
    """Bilinear extension of a monomial rule, with an optional memo.

    The memo is a pure cache: results are identical with ``use_memo=False``.
    """

    def __init__(self, qp: QParams, rule, variant: str):
        self.qp = qp
        self.rule = rule
        self.variant = variant
        self.use_memo = True
        self._memo: dict = {}

    def monomial_value(self, kef, mon) -> Fraction:
        if not self.use_memo:
            return self.rule(kef, mon, self.qp)
        key = (kef, mon)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._memo[key] = self.rule(kef, mon, self.qp)
        return hit

    def __call__(self, x: Element, y: Element) -> Fraction:
        if x.parent.variant != self.variant:
            raise ValueError(f"expected an element of the {self.variant} algebra")
        total = Fraction(0)
        kef_terms = to_kef(x)
        for mon, d in y.items():
            for kef, c in kef_terms.items():
                total += c * d * self.monomial_value(kef, mon)
        return total


_PAIRINGS: dict = {}


def _pairing(qp: QParams, which: str) -> _Pairing:
    key = (qp, which)
    if key not in _PAIRINGS:
        if which == "breve":
            _PAIRINGS[key] = _Pairing(qp, breve_monomial_value, "breve")
        else:
            _PAIRINGS[key] = _Pairing(qp, uq_monomial_value, "standard")
    return _PAIRINGS[key]


def breve_pairing(x: Element, y: Element) -> Fraction:
    return _pairing(x.parent.qp, "breve")(x, y)


def uq_pairing(x: Element, y: Element) -> Fraction:
    return _pairing(x.parent.qp, "standard")(x, y)


def phi_theta_route(x: Element, y: Element) -> Fraction:
    """``<phi(theta_{q^(1/2)}(x)), y>`` in the breve pairing."""
    return breve_pairing(phi(theta_alpha(x, x.parent.qp.u)), y)


def transpose_route(x: Element, y: Element) -> Fraction:
    """``<phi(x), theta_{1, q^(-1/2)}(y)>`` in the breve pairing."""
    qp = x.parent.qp
    return breve_pairing(phi(x), transpose_auto(y, 1, 1 / qp.u))


def gram_rank(rows: list[list[Fraction]]) -> int:
    """Rank of a rational matrix by exact elimination."""
    mat = [list(r) for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pr = mat[rank]
        for i in range(rank + 1, len(mat)):
            if mat[i][col]:
                f = mat[i][col] / pr[col]
                mat[i] = [a - f * b for a, b in zip(mat[i], pr)]
        rank += 1
    return rank


# -- dual norms -----------------------------------------------------------------

def dual_norm_monomial(mon, rs: RadiusSpec) -> int:
    """``log_p R_E^-r R_F^-t``."""
    _, _, r, t = mon
    return -rs.eE * r - rs.eF * t


def dual_norm(y: Element, rs: RadiusSpec):
    """``log_p`` of the dual norm, treating the basis as orthogonal."""
    qp = y.parent.qp
    best = NEG_INF
    for mon, c in y.items():
        best = max(best, qp.lognorm(c) + dual_norm_monomial(mon, rs))
    return best


def dual_norm_sweep(y: Element, rs: RadiusSpec, bound: int = 12, kbound: int = 3):
    """Truncated supremum of ``|<x, y>| / nu'(x)`` over ``K^m E^n F^l``
    with ``n, l <= bound`` and ``|m| <= kbound``.  Returns ``(log_p sup, argmax)``."""
    U = uq(y.parent.qp)
    qp = U.qp
    best, arg = NEG_INF, None
    for n in range(bound + 1):
        for l in range(bound + 1):
            for m in range(-kbound, kbound + 1):
                x = from_kef(U, {(m, n, l): Fraction(1)})
                v = uq_pairing(x, y)
                if v == 0:
                    continue
                ratio = qp.lognorm(v) - nu_prime_norm(x, rs)
                if ratio > best:
                    best, arg = ratio, (m, n, l)
    return best, arg
