"""Exact p-adic scalars and q-combinatorial constants.

Scalars are plain :class:`fractions.Fraction` values; the prime lives in
:class:`QParams`.  Norms are handled through their logarithms: a p-power
``p**k`` is stored as the integer ``k`` and the zero norm as ``-inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

INF = math.inf
NEG_INF = -math.inf

__all__ = [
    "INF", "NEG_INF", "QParams", "valuation", "log_norm", "as_scalar",
    "format_scalar", "parse_scalar", "format_lognorm", "q_integer",
    "q_factorial", "q_binomial", "q_pochhammer", "gamma_constant",
    "legendre_valuation",
]


def as_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return Fraction(x)


def _int_valuation(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x, p: int):
    """Exact p-adic valuation; ``math.inf`` for zero."""
    x = as_scalar(x)
    if x == 0:
        return INF
    return _int_valuation(x.numerator, p) - _int_valuation(x.denominator, p)


def log_norm(x, p: int):
    """``log_p |x|``, i.e. ``-valuation``; ``-inf`` for zero."""
    v = valuation(x, p)
    return NEG_INF if v == INF else -v


def format_scalar(x) -> str:
    x = as_scalar(x)
    return f"{x.numerator}/{x.denominator}"


def parse_scalar(s: str) -> Fraction:
    return Fraction(s.strip())


def format_lognorm(k, p: int) -> str:
    if k == NEG_INF:
        return "0"
    return f"{p}^{int(k)}"


def legendre_valuation(n: int, p: int) -> int:
    """v_p(n!) by Legendre's formula."""
    total, pk = 0, p
    while pk <= n:
        total += n // pk
        pk *= p
    return total


@dataclass(frozen=True)
class QParams:
    """Deformation data: an odd prime ``p`` and a square root ``u`` of ``q``.

    ``q = u**2`` must satisfy ``|q| = 1`` and ``|1 - q| < 1``.
    """

    p: int = 5
    u: Fraction = Fraction(6)
    q: Fraction = field(init=False)

    def __post_init__(self):
        u = as_scalar(self.u)
        object.__setattr__(self, "u", u)
        p = self.p
        if p < 3 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
            raise ValueError(f"p must be an odd prime, got {p}")
        if u == 0 or valuation(u, p) != 0:
            raise ValueError("u must be a p-adic unit")
        q = u * u
        if valuation(1 - q, p) <= 0:
            raise ValueError("need |1 - q| < 1")
        if q * q == 1:
            raise ValueError("q - 1/q must be nonzero")
        object.__setattr__(self, "q", q)

    @property
    def qinv(self) -> Fraction:
        return 1 / self.q

    def qpow(self, n: int) -> Fraction:
        return self.q ** n

    def upow(self, n: int) -> Fraction:
        """``q**(n/2)``."""
        return self.u ** n

    @property
    def qdiff(self) -> Fraction:
        """``q - q**-1``."""
        return self.q - 1 / self.q

    def val(self, x):
        return valuation(x, self.p)

    def lognorm(self, x):
        return log_norm(x, self.p)


def q_integer(n: int, qp: QParams, base: Fraction | None = None) -> Fraction:
    """Balanced q-integer ``(b**n - b**-n) / (b - b**-1)`` with ``b = base or q``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    b = qp.q if base is None else as_scalar(base)
    return _q_integer(n, b)


@lru_cache(maxsize=None)
def _q_integer(n: int, b: Fraction) -> Fraction:
    # sum of b**(n-1-2k), exact and avoids the division
    return sum((b ** (n - 1 - 2 * k) for k in range(n)), Fraction(0))


def q_factorial(n: int, qp: QParams, base: Fraction | None = None) -> Fraction:
    b = qp.q if base is None else as_scalar(base)
    return _q_factorial(n, b)


@lru_cache(maxsize=None)
def _q_factorial(n: int, b: Fraction) -> Fraction:
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = Fraction(1)
    for k in range(1, n + 1):
        out *= _q_integer(k, b)
    return out


def q_binomial(s: int, k: int, qp: QParams, base: Fraction | None = None) -> Fraction:
    """Balanced q-binomial ``[s]! / ([k]! [s-k]!)`` in the given base."""
    if k < 0 or s < 0 or k > s:
        raise ValueError(f"q_binomial needs 0 <= k <= s, got s={s}, k={k}")
    b = qp.q if base is None else as_scalar(base)
    return _q_factorial(s, b) / (_q_factorial(k, b) * _q_factorial(s - k, b))


def gauss_binomial(s: int, k: int, b) -> Fraction:
    """Gaussian binomial ``prod_{i<k} (1 - b^(s-i)) / (1 - b^(i+1))`` (zero when ``k > s``)."""
    if k < 0 or s < 0:
        raise ValueError("gauss_binomial needs nonnegative s, k")
    return _gauss_binomial(s, k, as_scalar(b))


@lru_cache(maxsize=None)
def _gauss_binomial(s: int, k: int, b: Fraction) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out *= (1 - b ** (s - i)) / (1 - b ** (i + 1))
    return out


def q_pochhammer(a, q, n: int) -> Fraction:
    """``(a; q)_n = (1 - a)(1 - a q) ... (1 - a q**(n-1))``."""
    a, q = as_scalar(a), as_scalar(q)
    out = Fraction(1)
    for k in range(n):
        out *= 1 - a * q ** k
    return out


def gamma_constant(s: int, r: int, t: int, m: int, n: int, l: int, qp: QParams) -> Fraction:
    """The constant multiplying the duality pairing values.

    Half-integer powers of q are taken as integer powers of ``u``.
    ``s`` may be negative (the a-led family uses ``-s``).
    """
    if min(n, l, r, t) < 0:
        raise ValueError("n, l, r, t must be nonnegative")
    uexp = m * (s + r - t) - s * (n + l) - n * (n - 1) - l * (l - 1)
    return qp.upow(uexp) * _gamma_poch(n, l, qp.q)


@lru_cache(maxsize=None)
def _gamma_poch(n: int, l: int, q: Fraction) -> Fraction:
    q2 = q ** 2
    return q_pochhammer(q2, q2, l) * q_pochhammer(q2, q2, n) / (1 - q2) ** (l + n)
