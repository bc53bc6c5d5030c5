"""Finite linear combinations of monomials and their tensor products.

An algebra ("parent") supplies ``mul_monomials``, ``one`` and
``format_monomial``; :class:`Element` and :class:`Tensor` do the rest.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .scalars import as_scalar


def add_into(acc: dict, key, c) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class Element:
    """A finite sum ``sum c_m * m`` over monomials of ``parent``.  Immutable."""

    __slots__ = ("parent", "_terms", "_hash")

    def __init__(self, parent, terms=None):
        self.parent = parent
        clean = {}
        for m, c in (terms or {}).items():
            c = as_scalar(c)
            if c:
                clean[m] = c
        self._terms = clean
        self._hash = None

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, m) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def support(self):
        return list(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def _coerce(self, other):
        if isinstance(other, Element):
            if other.parent != self.parent:
                raise TypeError(f"cannot combine {self.parent} and {other.parent}")
            return other
        return self.parent.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            add_into(acc, m, c)
        return Element(self.parent, acc)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.parent, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Element":
        c = as_scalar(c)
        return Element(self.parent, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        other = self._coerce(other)
        acc: dict = {}
        mul = self.parent.mul_monomials
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                c12 = c1 * c2
                for m, c in mul(m1, m2).items():
                    acc[m] = acc.get(m, 0) + (c12 if c == 1 else c12 * c)
        return Element(self.parent, acc)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(1 / as_scalar(c))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = self.parent.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.parent == other.parent and self._terms == other._terms
        try:
            return self == self.parent.scalar(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.parent, frozenset(self._terms.items())))
        return self._hash

    def map_terms(self, f) -> "Element":
        """Linear extension of ``f: monomial -> Element`` (same or other parent)."""
        out = None
        for m, c in self._terms.items():
            img = f(m) * c
            out = img if out is None else out + img
        return out

    def __repr__(self):
        return self.parent.format(self)

    __str__ = __repr__


class Tensor:
    """Finite sums of ``m_1 (x) ... (x) m_k`` over the given parents."""

    __slots__ = ("parents", "_terms")

    def __init__(self, parents, terms=None):
        self.parents = tuple(parents)
        clean = {}
        for key, c in (terms or {}).items():
            c = as_scalar(c)
            if c:
                clean[tuple(key)] = c
        self._terms = clean

    @classmethod
    def pure(cls, *elements: Element) -> "Tensor":
        acc: dict = {}
        for combo in product(*(e.items() for e in elements)):
            c = Fraction(1)
            for _, v in combo:
                c *= v
            add_into(acc, tuple(m for m, _ in combo), c)
        return cls([e.parent for e in elements], acc)

    @property
    def arity(self) -> int:
        return len(self.parents)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "Tensor"):
        acc = dict(self._terms)
        for k, c in other._terms.items():
            add_into(acc, k, c)
        return Tensor(self.parents, acc)

    def __neg__(self):
        return Tensor(self.parents, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_scalar(c)
        return Tensor(self.parents, {k: c * v for k, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Tensor):
            return self.scale(other)
        acc: dict = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                legs = [par.mul_monomials(a, b).items()
                        for par, a, b in zip(self.parents, k1, k2)]
                for combo in product(*legs):
                    c = c1 * c2
                    for _, v in combo:
                        c *= v
                    add_into(acc, tuple(m for m, _ in combo), c)
        return Tensor(self.parents, acc)

    __rmul__ = scale

    def __eq__(self, other):
        return (isinstance(other, Tensor) and self.parents == other.parents
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.parents, frozenset(self._terms.items())))

    def apply_leg(self, i: int, f, parent=None) -> "Tensor":
        """Replace leg ``i`` by ``f(monomial)``: an Element, a Tensor or a scalar.

        Scalars drop the leg, Tensors splice their legs in.
        """
        acc: dict = {}
        parents = None
        for key, c in self._terms.items():
            img = f(key[i])
            if isinstance(img, Element):
                pieces = [((m,), v) for m, v in img.items()]
                new_par = (img.parent,)
            elif isinstance(img, Tensor):
                pieces = list(img.items())
                new_par = img.parents
            else:
                pieces = [((), as_scalar(img))]
                new_par = ()
            if parents is None:
                parents = self.parents[:i] + new_par + self.parents[i + 1:]
            for sub, v in pieces:
                add_into(acc, key[:i] + tuple(sub) + key[i + 1:], c * v)
        if parents is None:
            if parent is None:
                raise ValueError("cannot infer parents of an empty image")
            parents = self.parents[:i] + tuple(parent) + self.parents[i + 1:]
        return Tensor(parents, acc)

    def contract(self, parent) -> Element:
        """Multiply the legs together inside ``parent``."""
        out = parent.zero()
        for key, c in self._terms.items():
            term = parent.one()
            for m in key:
                term = term * parent.monomial(m)
            out = out + term * c
        return out

    def lognorm(self, weight) -> float:
        """Max over terms of ``log|c| + sum weight(leg)``; the cross norm."""
        from .scalars import NEG_INF, log_norm
        best = NEG_INF
        for key, c in self._terms.items():
            p = self.parents[0].qp.p
            val = log_norm(c, p) + sum(weight(m) for m in key)
            best = max(best, val)
        return best

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for key, c in sorted(self._terms.items(), key=lambda kv: repr(kv[0])):
            legs = " (x) ".join(par.format_monomial(m) for par, m in zip(self.parents, key))
            parts.append(f"({c})*[{legs}]")
        return " + ".join(parts)
