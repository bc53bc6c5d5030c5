"""Text front-end: a small expression grammar shared by every dialect.

Grammar (EBNF)::

    expr    = term { ("+" | "-") term } ;
    term    = unary { ("*" | "/") unary } ;
    unary   = "-" unary | power ;
    power   = atom [ "^" [ "-" ] INT ] ;
    atom    = INT | IDENT | "q" | "(" expr ")" ;
    IDENT   = "K_-" | letter ;

Division is only by scalars, so ``3/4`` is a rational literal.  ``q`` is
the deformation parameter of the session.  Identifiers depend on the
dialect: ``E F K`` (uq, breve), ``E F K K_-`` (double), ``a b c d``
(slq2) and ``z K`` (skew).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .linear import Element, Tensor
from .scalars import QParams, format_scalar

MAX_EXPONENT = 10_000

DIALECTS = ("uq", "breve", "double", "slq2", "skew")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "op", "end"
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(K_-|[A-Za-z])|([-+*/^()]))")


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        ch = text[pos]
        if ch == "\n":
            line += 1
            pos += 1
            line_start = pos
            continue
        if ch.isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {ch!r}", line, col)
        start = m.start(m.lastindex)
        col = start - line_start + 1
        kind = {1: "int", 2: "ident", 3: "op"}[m.lastindex]
        tokens.append(Token(kind, m.group(m.lastindex), line, col))
        pos = m.end()
    # the end token sits just past the last character
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


# ---------------------------------------------------------------------------
# dialects: how identifiers and inverses are realized

class Dialect:
    def __init__(self, name: str, qp: QParams, parent, idents: dict, invert=None):
        self.name = name
        self.qp = qp
        self.parent = parent
        self.idents = idents
        self._invert = invert

    def ident(self, name: str):
        make = self.idents.get(name)
        return None if make is None else make()

    def invert(self, x):
        if isinstance(x, Fraction):
            if x == 0:
                raise ZeroDivisionError("division by zero")
            return 1 / x
        return None if self._invert is None else self._invert(x)

    def lift(self, x):
        """Scalars become elements of the dialect's algebra."""
        if isinstance(x, Fraction):
            if hasattr(self.parent, "const"):
                return self.parent.const(x)
            return self.parent.scalar(x)
        return x


def _torus_inverse(x: Element, torus):
    """Inverse of ``c * m`` where ``m`` only involves the invertible generators."""
    if len(x) != 1:
        return None
    (m, c), = x.items()
    if not torus(m):
        return None
    inv = -m if isinstance(m, int) else tuple(-v for v in m)
    return Element(x.parent, {inv: 1 / c})


def make_dialect(name: str, qp: QParams, radius_exp: int = 0) -> Dialect:
    if name in ("uq", "breve"):
        from .qalgebra import uq
        A = uq(qp, "standard" if name == "uq" else "breve")
        idents = {g: (lambda g=g: A.generator(g)) for g in ("E", "F", "K")}
        return Dialect(name, qp, A, idents,
                       lambda x: _torus_inverse(x, lambda m: m[0] == 0 and m[2] == 0))
    if name == "double":
        from .qdouble import double
        D = double(qp)
        idents = {g: (lambda g=g: D.generator(g)) for g in ("E", "F", "K", "K_-")}
        return Dialect(name, qp, D, idents,
                       lambda x: _torus_inverse(x, lambda m: m[0] == 0 and m[3] == 0))
    if name == "slq2":
        from .slq2 import coord
        C = coord(qp)
        idents = {g: (lambda g=g: C.generator(g)) for g in "abcd"}
        return Dialect(name, qp, C, idents, None)
    if name == "skew":
        R = skew_ring(qp, radius_exp)
        idents = {"z": R.gen, "K": lambda: R.const(R.base.K())}

        def inv(x):
            if len(x.coeffs) != 1 or 0 not in x.coeffs:
                return None
            y = _torus_inverse(x.coeffs[0], lambda m: True)
            return None if y is None else R.const(y)

        return Dialect(name, qp, R, idents, inv)
    raise ValueError(f"unknown dialect {name!r}; expected one of {', '.join(DIALECTS)}")


_SKEW_RINGS: dict = {}


def skew_ring(qp: QParams, radius_exp: int = 0):
    """The session's skew ring ``U_q(h){z/R, K -> q^2 K}`` (one object per setting)."""
    from .skewseries import laurent_ring
    key = (qp, radius_exp)
    if key not in _SKEW_RINGS:
        _SKEW_RINGS[key] = laurent_ring(qp, radius_exp, var="z")
    return _SKEW_RINGS[key]


# ---------------------------------------------------------------------------
# recursive descent, evaluating as it goes

class _Parser:
    def __init__(self, text: str, dialect: Dialect):
        self.tokens = tokenize(text)
        self.i = 0
        self.d = dialect
        self.open_parens: list[Token] = []

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        if tok.kind == "end" and self.open_parens:
            # running out of input inside parentheses: blame the opener
            opener = self.open_parens[-1]
            return ParseError(f"unclosed '(' ({msg})", opener.line, opener.col)
        return ParseError(msg, tok.line, tok.col)

    def take(self, text=None, kind=None):
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text else kind
            got = "end of input" if t.kind == "end" else repr(t.text)
            raise self.error(f"expected {want}, got {got}")
        self.i += 1
        return t

    def parse(self):
        if self.tok.kind == "end":
            raise self.error("empty expression")
        val = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return val

    def expr(self):
        val = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.take().text
            rhs = self.term()
            val = _add(val, rhs, self.d) if op == "+" else _add(val, _neg(rhs), self.d)
        return val

    def term(self):
        val = self.unary()
        while self.tok.text in ("*", "/") and self.tok.kind == "op":
            op_tok = self.take()
            rhs = self.unary()
            if op_tok.text == "*":
                val = _mul(val, rhs)
            else:
                if not isinstance(rhs, Fraction):
                    raise self.error("can only divide by a scalar", op_tok)
                if rhs == 0:
                    raise self.error("division by zero", op_tok)
                val = val / rhs if isinstance(val, Fraction) else val.scale(1 / rhs)
        return val

    def unary(self):
        if self.tok.text == "-" and self.tok.kind == "op":
            self.take()
            return _neg(self.unary())
        return self.power()

    def power(self):
        base_tok = self.tok
        val = self.atom()
        if self.tok.text == "^" and self.tok.kind == "op":
            self.take()
            sign = 1
            if self.tok.text == "-":
                self.take()
                sign = -1
            exp_tok = self.take(kind="int")
            n = int(exp_tok.text)
            if n > MAX_EXPONENT:
                raise self.error(f"exponent {n} exceeds {MAX_EXPONENT}", exp_tok)
            if sign < 0:
                inv = self.d.invert(val)
                if inv is None:
                    raise self.error("negative power of a non-invertible element", base_tok)
                val = inv
            val = _pow(val, n, self.d)
        return val

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.take()
            return Fraction(int(t.text))
        if t.kind == "ident":
            self.take()
            if t.text == "q":
                return self.d.qp.q
            val = self.d.ident(t.text)
            if val is None:
                raise self.error(f"unknown identifier {t.text!r} for dialect {self.d.name}", t)
            return val
        if t.text == "(":
            self.take()
            self.open_parens.append(t)
            val = self.expr()
            self.take(")")
            self.open_parens.pop()
            return val
        got = "end of input" if t.kind == "end" else repr(t.text)
        raise self.error(f"expected an operand, got {got}")


def _neg(x):
    return -x


def _add(x, y, d: Dialect):
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x + y
    return d.lift(x) + d.lift(y)


def _mul(x, y):
    if isinstance(x, Fraction):
        return y * x if not isinstance(y, Fraction) else x * y
    if isinstance(y, Fraction):
        return x.scale(y)
    return x * y


def _pow(x, n: int, d: Dialect):
    if isinstance(x, Fraction):
        return x ** n
    out = d.lift(Fraction(1))
    for _ in range(n):
        out = out * x
    return out


def parse(text: str, dialect: str | Dialect, qp: QParams | None = None, radius_exp: int = 0):
    """Parse and evaluate ``text`` into a normalized element of the dialect."""
    d = dialect if isinstance(dialect, Dialect) else make_dialect(dialect, qp or QParams(), radius_exp)
    return d.lift(_Parser(text, d).parse())


# ---------------------------------------------------------------------------
# printing

def to_text(x) -> str:
    """Printed form; exact elements print in the input grammar."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Element):
        return x.parent.format(x)
    return repr(x)


def _monomial_json(parent, m) -> dict:
    from .qdouble import DoubleAlgebra
    from .slq2 import CoordAlgebra
    if isinstance(parent, CoordAlgebra):
        kind, s, r, t = m
        return {"kind": kind, "s": s, "r": r, "t": t}
    if isinstance(parent, DoubleAlgebra):
        return {"nE": m[0], "nK": m[1], "nKminus": m[2], "nF": m[3]}
    return {"nE": m[0], "nK": m[1], "nF": m[2]}


def to_json(x):
    """JSON-ready form of any kernel value (stable ordering)."""
    from .skewseries import SkewSeries
    if isinstance(x, Fraction):
        return format_scalar(x)
    if isinstance(x, SkewSeries):
        return x.to_json()
    if isinstance(x, Element):
        parent = x.parent
        out = {}
        if hasattr(parent, "variant"):
            out["variant"] = parent.variant
        out["terms"] = [{**_monomial_json(parent, m), "coeff": format_scalar(c)}
                        for m, c in sorted(x.items(), key=lambda kv: repr(kv[0]))]
        return out
    if isinstance(x, Tensor):
        return {"arity": x.arity,
                "terms": [{"legs": [_monomial_json(par, m) for par, m in zip(x.parents, key)],
                           "coeff": format_scalar(c)}
                          for key, c in sorted(x.items(), key=lambda kv: repr(kv[0]))]}
    return x


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
