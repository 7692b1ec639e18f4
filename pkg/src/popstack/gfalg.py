"""Exact integer polynomials, rational functions and generating functions of DFAs."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .automata import Dfa, PartialDfa, count_words, trim


class Polynomial:
    """Integer polynomial with ascending coefficients and no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def const(cls, c: int) -> "Polynomial":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial([other])
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = "x" if i == 1 else f"x^{i}"
                body = power if mag == 1 else f"{mag}*{power}"
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __add__(self, other):
        other = _poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_poly(other))

    def __rsub__(self, other):
        return _poly(other) - self

    def __mul__(self, other):
        other = _poly(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        if len(b) == 1:
            c = b[0]
            return Polynomial(x * c for x in a)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out, base = Polynomial([1]), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift(self, n: int) -> "Polynomial":
        """Multiply by ``x**n``; negative ``n`` drops low terms, which must be zero."""
        if n >= 0:
            return Polynomial([0] * n + list(self.coeffs)) if self.coeffs else Polynomial()
        if any(self.coeffs[: -n]):
            raise ValueError(f"polynomial is not divisible by x^{-n}")
        return Polynomial(self.coeffs[-n:])

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def primitive(self) -> "Polynomial":
        """Divide out the content; leading coefficient made positive."""
        c = self.content()
        if not c:
            return Polynomial()
        if self.lead < 0:
            c = -c
        return Polynomial(x // c for x in self.coeffs)

    def pseudo_divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """``lead(other)**(deg self - deg other + 1) * self = q * other + r``."""
        other = _poly(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        delta = self.degree - other.degree + 1
        if delta <= 0:
            return Polynomial(), self
        lc = other.lead
        r = list(self.coeffs)
        q = [0] * delta
        db = other.degree
        for i in range(len(r) - 1, db - 1, -1):
            q = [c * lc for c in q]
            c = r[i]
            q[i - db] += c
            r = [x * lc for x in r]
            for j, y in enumerate(other.coeffs):
                r[i - db + j] -= c * y
        return Polynomial(q), Polynomial(r[:db])

    def __divmod__(self, other):
        """Division over the integers; raises if a quotient coefficient is fractional."""
        other = _poly(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db, lc = other.degree, other.lead
        if self.degree < db:
            return Polynomial(), self
        q = [0] * (self.degree - db + 1)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if not c:
                continue
            if c % lc:
                raise ValueError("quotient is not an integer polynomial")
            t = c // lc
            q[i - db] = t
            for j, y in enumerate(other.coeffs):
                r[i - db + j] -= t * y
        return Polynomial(q), Polynomial(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = divmod(self, other)
        if r:
            raise ValueError(f"{other} does not divide {self}")
        return q

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)


def _poly(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    if isinstance(p, int):
        return Polynomial([p])
    raise TypeError(f"cannot use {type(p).__name__} as a polynomial")


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Primitive-remainder-sequence gcd, primitive with positive leading coefficient."""
    a, b = _poly(a), _poly(b)
    if not a or not b:
        g = a or b
        return -g if g.lead < 0 else g
    ca, cb = a.content(), b.content()
    c = gcd(ca, cb)
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while b:
        _, r = a.pseudo_divmod(b)
        a, b = b, (r.primitive() if r else r)
    return a.primitive() * c


class RationalFunction:
    """Reduced quotient ``num / den`` with ``den(0) = -1`` whenever possible."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, reduce_terms: bool = True):
        num, den = _poly(num), _poly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if reduce_terms:
            g = poly_gcd(num, den) if num else den
            if g.degree > 0 or (g and g.lead != 1):
                num = num.exact_div(g) if num else num
                den = den.exact_div(g)
            num, den = _normalize(num, den)
        self.num, self.den = num, den

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        return f"({self.num})/({self.den})"

    def __add__(self, other):
        other = _rat(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce_terms=False)

    def __sub__(self, other):
        return self + (-_rat(other))

    def __mul__(self, other):
        other = _rat(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _rat(other)
        return RationalFunction(self.num * other.den, self.den * other.num)

    def to_text(self) -> str:
        return "\n".join(
            [
                "num: " + " ".join(str(c) for c in self.num.coeffs or (0,)),
                "den: " + " ".join(str(c) for c in self.den.coeffs),
            ]
        )

    @classmethod
    def from_text(cls, text: str) -> "RationalFunction":
        parts = {}
        for line in text.strip().splitlines():
            key, _, rest = line.partition(":")
            parts[key.strip()] = Polynomial(int(t) for t in rest.split())
        return cls(parts["num"], parts["den"])


def _rat(f) -> RationalFunction:
    return f if isinstance(f, RationalFunction) else RationalFunction(f)


def _normalize(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    c = gcd(num.content(), den.content())
    if c > 1:
        num = Polynomial(x // c for x in num.coeffs)
        den = Polynomial(x // c for x in den.coeffs)
    anchor = den.coeffs[0] if den.coeffs[0] else den.lead
    flip = anchor > 0 if den.coeffs[0] else anchor < 0
    if flip:
        num, den = -num, -den
    return num, den


# --- generating functions of automata ----------------------------------------


def _useful_part(d: Dfa | PartialDfa) -> PartialDfa:
    return trim(d)


def transfer_matrix(d: Dfa | PartialDfa) -> tuple[list[list[int]], list[int], int | None]:
    """Symbol counts between useful states, accepting indicator, initial index."""
    t = _useful_part(d)
    m = t.num_states
    mat = [[0] * m for _ in range(m)]
    for p, _, q in t.edges:
        mat[p][q] += 1
    acc = [1 if q in t.accepting else 0 for q in range(m)]
    return mat, acc, t.initial


def _bareiss_solve_last(mat: list[list[Polynomial]], rhs: list[Polynomial]) -> tuple[Polynomial, Polynomial]:
    """Fraction-free elimination on ``[mat | rhs]``; returns (numerator, det) of the last unknown."""
    m = len(mat)
    a = [row[:] + [r] for row, r in zip(mat, rhs)]
    prev = Polynomial([1])
    for k in range(m - 1):
        piv = a[k][k]
        if not piv:
            raise ArithmeticError("zero pivot in fraction-free elimination")
        rowk = a[k]
        for i in range(k + 1, m):
            rowi = a[i]
            f = rowi[k]
            for j in range(k + 1, m + 1):
                v = piv * rowi[j]
                if f and rowk[j]:
                    v = v - f * rowk[j]
                rowi[j] = v.exact_div(prev) if prev.degree > 0 or prev.lead != 1 else v
            rowi[k] = Polynomial()
        prev = piv
    return a[m - 1][m], a[m - 1][m - 1]


def gf_bareiss(d: Dfa | PartialDfa) -> RationalFunction:
    """Solve ``F_q = [q accepting] + x * sum_q' A[q][q'] F_q'`` for the initial state."""
    mat, acc, init = transfer_matrix(d)
    if init is None:
        return RationalFunction(0)
    m = len(mat)
    # put the initial state last so the last unknown is the one we want
    order = [q for q in range(m) if q != init] + [init]
    x = Polynomial.x()
    sys_ = []
    for i in order:
        row = []
        for j in order:
            entry = Polynomial([1]) if i == j else Polynomial()
            if mat[i][j]:
                entry = entry - x * mat[i][j]
            row.append(entry)
        sys_.append(row)
    rhs = [Polynomial([acc[i]]) for i in order]
    num, det = _bareiss_solve_last(sys_, rhs)
    return RationalFunction(num, det)


def berlekamp_massey(seq: Sequence[int]) -> tuple[list[Fraction], int]:
    """Shortest recurrence ``sum_i c_i a_{n-i} = 0`` (``c_0 = 1``) over the rationals."""
    c = [Fraction(1)]
    b = [Fraction(1)]
    length, shift, last = 0, 1, Fraction(1)
    for n, _ in enumerate(seq):
        delta = Fraction(seq[n])
        for i in range(1, length + 1):
            delta += c[i] * seq[n - i]
        if delta == 0:
            shift += 1
            continue
        coef = delta / last
        t = c[:]
        c = c + [Fraction(0)] * max(0, len(b) + shift - len(c))
        for i, bi in enumerate(b):
            c[i + shift] -= coef * bi
        if 2 * length <= n:
            length, b, last, shift = n + 1 - length, t, delta, 1
        else:
            shift += 1
    return c[: length + 1] + [Fraction(0)] * max(0, length + 1 - len(c)), length


def gf_recurrence(d: Dfa | PartialDfa) -> RationalFunction:
    """Fit the shortest linear recurrence to ``2m + 2`` exact word counts."""
    t = _useful_part(d)
    if t.initial is None:
        return RationalFunction(0)
    terms = _word_counts(t, 2 * t.num_states + 2)
    c, length = berlekamp_massey(terms)
    scale = reduce(lambda acc, f: acc * f.denominator // gcd(acc, f.denominator), c, 1)
    den = Polynomial(int(f * scale) for f in c)
    prod = [sum(den.coeffs[i] * terms[n - i] for i in range(min(n, den.degree) + 1)) for n in range(length)]
    return RationalFunction(Polynomial(prod), den)


def _word_counts(t: PartialDfa, count: int) -> list[int]:
    vec = {t.initial: 1}
    out = []
    for _ in range(count):
        out.append(sum(c for q, c in vec.items() if q in t.accepting))
        nxt: dict[int, int] = {}
        for a, _, b in t.edges:
            if a in vec:
                nxt[b] = nxt.get(b, 0) + vec[a]
        vec = nxt
    return out


def gf_of_dfa(d: Dfa | PartialDfa, method: str = "auto") -> RationalFunction:
    """Generating function of accepted words counted by length."""
    if method == "auto":
        method = "bareiss" if trim(d).num_states <= 64 else "recurrence"
    if method == "bareiss":
        return gf_bareiss(d)
    if method == "recurrence":
        return gf_recurrence(d)
    raise ValueError(f"unknown method {method!r}")


def series(f: RationalFunction, n: int) -> list:
    """First ``n + 1`` Taylor coefficients of ``f`` at 0."""
    den = f.den.coeffs
    if not den or den[0] == 0:
        raise ValueError("series expansion needs den(0) != 0")
    num = f.num.coeffs
    d0 = den[0]
    out = []
    for i in range(n + 1):
        acc = num[i] if i < len(num) else 0
        for j in range(1, min(i, len(den) - 1) + 1):
            acc -= den[j] * out[i - j]
        if acc % d0 == 0:
            out.append(acc // d0)
        else:
            out.append(Fraction(acc, d0))
    return out


def growth_rate(f: RationalFunction, digits: int = 30) -> float:
    """``max(1/|z|)`` over the roots ``z`` of the denominator."""
    import mpmath

    den = f.den
    if den.degree < 1:
        raise ValueError("growth rate needs a nonconstant denominator")
    if den.coeffs[0] == 0:
        raise ValueError("denominator vanishes at 0")
    coeffs = den.coeffs
    scale = max(abs(c) for c in coeffs)
    approx = np.roots([c / scale for c in reversed(coeffs)])
    candidates = sorted(approx, key=abs)[: min(6, len(approx))]
    best = None
    with mpmath.workdps(digits):
        p = [mpmath.mpf(c) for c in reversed(coeffs)]
        dp = [mpmath.mpf(c * i) for i, c in reversed(list(enumerate(coeffs))) if i]
        for z0 in candidates:
            z = mpmath.mpc(complex(z0))
            for _ in range(100):
                step = mpmath.polyval(p, z) / mpmath.polyval(dp, z)
                z -= step
                if abs(step) < mpmath.mpf(10) ** (-digits + 5) * max(1, abs(z)):
                    break
            r = abs(z)
            if best is None or r < best:
                best = r
    return float(1 / best)


_GF_CACHE: dict[int, RationalFunction] = {}


def plan_gf(d: Dfa | PartialDfa, method: str = "auto") -> RationalFunction:
    """Divide the word generating function by ``x``: words of length n+1 are plans of length n."""
    f = gf_of_dfa(d, method)
    if not f.num:
        return f
    return RationalFunction(f.num.shift(-1), f.den)


def sortable_gf(k: int, **pipeline) -> RationalFunction:
    """Generating function of the permutations sortable by ``k`` pop-stack passes."""
    from .automata import build_sorting_plan_dfa

    if k < 1:
        raise ValueError("order must be at least 1")
    if pipeline or k not in _GF_CACHE:
        f = plan_gf(build_sorting_plan_dfa(k, **pipeline))
        if pipeline:
            return f
        _GF_CACHE[k] = f
    return _GF_CACHE[k]
