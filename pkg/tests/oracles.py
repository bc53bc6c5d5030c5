"""Independent reference computations used as test oracles.

Nothing here imports the package's multiplication engines: words are
rewritten one relation at a time, pairings are expanded in full.
"""

from fractions import Fraction
from itertools import product

# ---------------------------------------------------------------------------
# naive rewriting in U_q(sl2), the breve algebra and the double
# letters: E, F, K, k (=K^-1), M (=K_-), m (=K_-^-1)

TORUS = "KkMm"


def _relations(kind, q):
    qd = q - 1 / q
    if kind == "standard":
        ke = {"K": q ** 2, "k": q ** -2}
        fk = {"K": q ** 2, "k": q ** -2}
        h = [(("K",), 1 / qd), (("k",), -1 / qd)]
    elif kind == "breve":
        ke = {"K": q, "k": 1 / q}
        fk = {"K": q, "k": 1 / q}
        h = [(("K", "K"), 1 / qd), (("k", "k"), -1 / qd)]
    elif kind == "double":
        ke = {"K": q ** 2, "k": q ** -2, "M": q ** 2, "m": q ** -2}
        fk = {"K": q ** 2, "k": q ** -2, "M": q ** 2, "m": q ** -2}
        h = [(("K",), 1 / qd), (("m",), -1 / qd)]
    else:
        raise ValueError(kind)
    return ke, fk, h


def _rewrite_once(word, ke, fk, h):
    for i in range(len(word) - 1):
        a, b = word[i], word[i + 1]
        pre, post = word[:i], word[i + 2:]
        if {a, b} in ({"K", "k"}, {"M", "m"}):
            return [(pre + post, Fraction(1))]
        if a in TORUS and b == "E":
            return [(pre + ("E", a) + post, ke[a])]
        if a == "F" and b in TORUS:
            return [(pre + (b, "F") + post, fk[b])]
        if a == "F" and b == "E":
            out = [(pre + ("E", "F") + post, Fraction(1))]
            for tw, c in h:
                out.append((pre + tw + post, -c))
            return out
        if a in TORUS and b in TORUS and TORUS.index(a) > TORUS.index(b):
            return [(pre + (b, a) + post, Fraction(1))]
    return None


def naive_normalize(word, q, kind="standard"):
    """Normal form of a word of letters, returned as {monomial: coeff}."""
    ke, fk, h = _relations(kind, q)
    todo = {tuple(word): Fraction(1)}
    done = {}
    while todo:
        w, c = todo.popitem()
        step = _rewrite_once(w, ke, fk, h)
        if step is None:
            done[w] = done.get(w, 0) + c
            continue
        for w2, c2 in step:
            todo[w2] = todo.get(w2, 0) + c * c2
    out = {}
    for w, c in done.items():
        if not c:
            continue
        e = w.count("E")
        f = w.count("F")
        kk = w.count("K") - w.count("k")
        mm = w.count("M") - w.count("m")
        mon = (e, kk, mm, f) if kind == "double" else (e, kk, f)
        out[mon] = out.get(mon, 0) + c
    return {m: c for m, c in out.items() if c}


def monomial_word(m, kind="standard"):
    if kind == "double":
        e, k, j, f = m
        torus = ("K" if k > 0 else "k",) * abs(k) + ("M" if j > 0 else "m",) * abs(j)
    else:
        e, k, f = m
        torus = ("K" if k > 0 else "k",) * abs(k)
    return ("E",) * e + torus + ("F",) * f


# ---------------------------------------------------------------------------
# naive rewriting in SL_q(2); normal order a|d < c < b

def naive_coord(word, q):
    rules = {
        ("b", "a"): [(("a", "b"), 1 / q)],
        ("c", "a"): [(("a", "c"), 1 / q)],
        ("b", "d"): [(("d", "b"), q)],
        ("c", "d"): [(("d", "c"), q)],
        ("b", "c"): [(("c", "b"), Fraction(1))],
        ("a", "d"): [((), Fraction(1)), (("c", "b"), q)],
        ("d", "a"): [((), Fraction(1)), (("c", "b"), 1 / q)],
    }
    todo = {tuple(word): Fraction(1)}
    done = {}
    while todo:
        w, c = todo.popitem()
        for i in range(len(w) - 1):
            rep = rules.get((w[i], w[i + 1]))
            if rep:
                for sub, v in rep:
                    w2 = w[:i] + sub + w[i + 2:]
                    todo[w2] = todo.get(w2, 0) + c * v
                break
        else:
            done[w] = done.get(w, 0) + c
    out = {}
    for w, c in done.items():
        if not c:
            continue
        na, nd = w.count("a"), w.count("d")
        assert not (na and nd)
        mon = ("D", nd, w.count("c"), w.count("b")) if nd else ("A", na, w.count("c"), w.count("b"))
        out[mon] = out.get(mon, 0) + c
    return {m: c for m, c in out.items() if c}


# ---------------------------------------------------------------------------
# Borel pairing by full expansion (no memo, no recursion on monomials)

def _delta_n_plus(g, n):
    """n-fold coproduct of an E/K/k letter as a list of (legs, coeff)."""
    if g in "Kk":
        return [((g,) * n, 1)]
    out = []
    for i in range(n):
        out.append((("1",) * i + ("E",) + ("K",) * (n - i - 1), 1))
    return out


def _delta_n_minus(g, n):
    if g in "Mm":
        return [((g,) * n, 1)]
    out = []
    for i in range(n):
        out.append((("m",) * i + ("F",) + ("1",) * (n - i - 1), 1))
    return out


def _gen_pair(x, y, q):
    if x == "1" or y == "1":
        if x == "1" and y == "1":
            return Fraction(1)
        other = y if x == "1" else x
        return Fraction(1) if other in "KkMm" else Fraction(0)
    if x in "Kk" and y in "Mm":
        sign = (1 if x == "K" else -1) * (1 if y == "M" else -1)
        return q ** (-2 * sign)
    if x == "E" and y == "F":
        return 1 / (1 / q - q)
    return Fraction(0)


def expanded_pairing(xword, yword, q):
    """<x1...xn, y1...ym> with <xx',y> = <x,y(1)><x',y(2)> and
    <x,yy'> = <x(1),y'><x(2),y>, expanded all the way down to letters."""
    n, m = len(xword), len(yword)
    if n == 0 or m == 0:
        val = Fraction(1)
        for g in xword:
            val *= 1 if g in "Kk" else 0
        for g in yword:
            val *= 1 if g in "Mm" else 0
        return val
    xs = [_delta_n_plus(g, m) for g in xword]
    ys = [_delta_n_minus(g, n) for g in yword]
    total = Fraction(0)
    for xchoice in product(*xs):
        for ychoice in product(*ys):
            val = Fraction(1)
            for i in range(n):
                legs_x = xchoice[i][0]
                for j in range(m):
                    val *= _gen_pair(legs_x[m - 1 - j], ychoice[j][0][i], q)
                    if not val:
                        break
                if not val:
                    break
            total += val
    return total


# ---------------------------------------------------------------------------
# SL_q(2) pairing through tensor powers of the 2-dim representation

def _matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _kron(a, b):
    na, nb = len(a), len(b)
    return [[a[i // nb][j // nb] * b[i % nb][j % nb] for j in range(na * nb)]
            for i in range(na * nb)]


def _ident(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _matpow(a, k):
    out = _ident(len(a))
    for _ in range(k):
        out = _matmul(out, a)
    return out


def _tensor_rep(gens, legs, coproduct_kind):
    """Representation of E, F, K on (C^2)^{(x) legs} via the iterated coproduct."""
    TE, TF, TK, TKi = gens
    n = 2 ** legs
    if legs == 0:
        one = [[Fraction(1)]]
        zero = [[Fraction(0)]]
        return zero, zero, one, one
    K = _ident(1)
    Ki = _ident(1)
    for _ in range(legs):
        K = _kron(K, TK)
        Ki = _kron(Ki, TKi)

    def summed(g, left, right):
        tot = [[Fraction(0)] * n for _ in range(n)]
        for pos in range(legs):
            mat = _ident(1)
            for j in range(legs):
                mat = _kron(mat, left if j < pos else (g if j == pos else right))
            tot = [[tot[i][k] + mat[i][k] for k in range(n)] for i in range(n)]
        return tot

    I2 = _ident(2)
    if coproduct_kind == "breve":
        E = summed(TE, TKi, TK)   # E(x)K + K^-1(x)E
        F = summed(TF, TKi, TK)
    else:
        E = summed(TE, I2, TK)    # E(x)K + 1(x)E
        F = summed(TF, TKi, I2)   # F(x)1 + K^-1(x)F
    return E, F, K, Ki


def rep_pairing(kef, coord_word, u, kind="breve"):
    """<K^m E^n F^l, y1...yk> as a matrix entry of the k-fold tensor representation.

    kind="breve": T(K)=diag(u^-1, u), T(E)=e_21, T(F)=e_12.
    kind="standard": T(K)=diag(q^-1, q) with the standard coproduct.
    """
    m, n, l = kef
    Z, O = Fraction(0), Fraction(1)
    if kind == "breve":
        TK = [[1 / u, Z], [Z, u]]
        TKi = [[u, Z], [Z, 1 / u]]
    else:
        q = u * u
        TK = [[1 / q, Z], [Z, q]]
        TKi = [[q, Z], [Z, 1 / q]]
    TE = [[Z, Z], [O, Z]]
    TF = [[Z, O], [Z, Z]]
    legs = len(coord_word)
    E, F, K, Ki = _tensor_rep((TE, TF, TK, TKi), legs, kind)
    Km = _matpow(K, m) if m >= 0 else _matpow(Ki, -m)
    M = _matmul(_matmul(Km, _matpow(E, n)), _matpow(F, l))
    idx = {"a": (0, 0), "b": (0, 1), "c": (1, 0), "d": (1, 1)}
    row = col = 0
    for y in coord_word:
        i, j = idx[y]
        row = 2 * row + i
        col = 2 * col + j
    return M[row][col]


def coord_monomial_word(mon):
    kind, s, r, t = mon
    return ("a" if kind == "A" else "d",) * s + ("c",) * r + ("b",) * t


# ---------------------------------------------------------------------------
# misc

def legendre(n, p):
    v, pk = 0, p
    while pk <= n:
        v += n // pk
        pk *= p
    return v


def poly_divmod(g, f):
    """Classical long division of dense coefficient lists (low degree first),
    f monic-normalisable by its leading coefficient."""
    g = list(g)
    d = len(f) - 1
    lead = f[-1]
    qlen = max(len(g) - d, 0)
    quo = [Fraction(0)] * qlen
    for k in range(len(g) - 1, d - 1, -1):
        c = g[k] / lead
        quo[k - d] = c
        for i in range(d + 1):
            g[k - d + i] -= c * f[i]
    return quo, g[:d]
