"""Exact arithmetic in the rational function field Q(h1, h2, w).

``h3`` never appears as a symbol: it is eliminated as ``-h1 - h2`` on
construction.  A :class:`Scalar` keeps its numerator expanded and its
denominator as a product of irreducible primitive factors, so that
reducing a fraction only needs trial division by known factors instead of
a multivariate gcd.  Almost every denominator produced by the Yangian
formulas is a product of linear forms in h1, h2, which makes this cheap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Mapping, Optional

from . import kernels as K

SYMBOLS = ("h1", "h2", "w")

_P = (1 << 61) - 1
_PROBE = (982451653, 57885161, 1000000007)


class PoleError(ZeroDivisionError):
    """A denominator vanished at a specialization point."""


class ParseError(ValueError):
    pass


# -- factor bookkeeping --------------------------------------------------

def _fkey(poly):
    return tuple(sorted(poly.items()))


@lru_cache(maxsize=None)
def _finfo(fkey):
    """(poly, probe) for a denominator factor; probe is a point mod p on the
    zero set of a linear factor, or None."""
    poly = dict(fkey)
    probe = None
    if K.ptotal_degree(poly) == 1:
        coeffs = [0, 0, 0]
        const = 0
        for k, c in poly.items():
            e = K.unpack(k)
            if e == (0, 0, 0):
                const = c
            else:
                coeffs[e.index(1)] = c
        i = next(j for j in range(3) if coeffs[j])
        pt = list(_PROBE)
        rest = const + sum(coeffs[j] * pt[j] for j in range(3) if j != i)
        pt[i] = (-rest * pow(coeffs[i], -1, _P)) % _P
        probe = tuple(pt)
    return poly, probe


@lru_cache(maxsize=4096)
def _expand(den):
    """Expanded product of a factor tuple ((fkey, mult), ...)."""
    out = {0: 1}
    for fk, m in den:
        out = K.pmul(out, K.ppow(_finfo(fk)[0], m))
    return out


def _cancel(num, den):
    """Divide ``num`` by as many denominator factors as possible.

    Returns the reduced numerator and the remaining factor list.
    """
    rest = []
    for fk, m in den:
        poly, probe = _finfo(fk)
        left = m
        while left:
            if probe is not None and K.peval_mod(num, probe[0], probe[1], probe[2], _P):
                break
            q = K.pdivexact(num, poly)
            if q is None:
                break
            num = q
            left -= 1
        if left:
            rest.append((fk, left))
    return num, rest


def _leading_sign(poly):
    return 1 if poly[max(poly)] > 0 else -1


@lru_cache(maxsize=None)
def _factor_primitive(fkey):
    """Irreducible factorization of a primitive polynomial with positive
    leading coefficient; returns (sign, ((fkey, mult), ...))."""
    poly = dict(fkey)
    if K.ptotal_degree(poly) <= 1:
        return 1, ((fkey, 1),)
    import sympy

    gens = sympy.symbols("h1 h2 w")
    sp = sympy.Poly.from_dict({K.unpack(k): c for k, c in poly.items()}, *gens)
    unit, facs = sp.factor_list()
    sign = 1 if unit > 0 else -1
    out = {}
    for f, m in facs:
        d = {K.pack(*e): int(c) for e, c in f.as_dict().items()}
        if len(f.gens) != 3:  # sympy may drop unused generators
            d = {}
            names = [str(g) for g in f.gens]
            for e, c in f.as_dict().items():
                full = [0, 0, 0]
                for nm, ex in zip(names, e):
                    full[SYMBOLS.index(nm)] = ex
                d[K.pack(*full)] = int(c)
        if _leading_sign(d) < 0:
            d = {k: -c for k, c in d.items()}
            if m % 2:
                sign = -sign
        fk = _fkey(d)
        out[fk] = out.get(fk, 0) + m
    return sign, tuple(sorted(out.items()))


def factor_poly(poly):
    """Return (unit, factors) with ``poly == unit * prod(f**m)``."""
    c = K.pcontent(poly)
    s = _leading_sign(poly)
    prim = K.pdivint(poly, c * s) if c * s != 1 else poly
    if len(prim) == 1 and 0 in prim:
        return s * c, ()
    sign, facs = _factor_primitive(_fkey(prim))
    return s * c * sign, facs


def _merge(a, b):
    d = dict(a)
    for fk, m in b:
        d[fk] = d.get(fk, 0) + m
    return d


# -- Scalar --------------------------------------------------------------

class Scalar:
    """Element of Q(h1, h2, w) in canonical reduced form.

    ``num`` is the expanded numerator (packed-key dict), ``den`` a sorted
    tuple of (irreducible factor, multiplicity) and ``dc`` a positive
    integer, so the value is ``num / (dc * prod f**m)``.  Values are
    immutable; equality is structural equality of the canonical forms.
    """

    __slots__ = ("num", "den", "dc", "_hash")

    def __init__(self, num=None, den=(), dc=1):
        self.num = {} if num is None else num
        self.den = den
        self.dc = dc
        self._hash = None

    @classmethod
    def _make(cls, num, den, dc):
        if not num:
            return ZERO
        if den:
            num, den = _cancel(num, den)
            den = tuple(sorted(den))
        g = gcd(K.pcontent(num), dc)
        if g != 1:
            num = K.pdivint(num, g)
            dc //= g
        return cls(num, den, dc)

    # constructors
    @classmethod
    def from_int(cls, n):
        return cls({0: n}) if n else ZERO

    @classmethod
    def from_fraction(cls, q):
        q = Fraction(q)
        if not q:
            return ZERO
        return cls({0: q.numerator}, (), q.denominator)

    @classmethod
    def poly(cls, poly, dc=1):
        """Scalar from an integer polynomial dict (optionally over ``dc``)."""
        return cls._make({k: v for k, v in poly.items() if v}, (), dc)

    @classmethod
    def linear(cls, a=0, b=0, c=0, d=0):
        """``a*h1 + b*h2 + c*w + d`` for rationals a, b, c, d."""
        qs = [Fraction(x) for x in (a, b, c, d)]
        den = 1
        for q in qs:
            den = den * q.denominator // gcd(den, q.denominator)
        keys = (K.pack(1, 0, 0), K.pack(0, 1, 0), K.pack(0, 0, 1), 0)
        poly = {k: int(q * den) for k, q in zip(keys, qs) if q}
        return cls._make(poly, (), den)

    @classmethod
    def symbol(cls, name):
        if name == "h3":
            return cls.linear(-1, -1)
        if name not in SYMBOLS:
            raise ValueError(f"unknown symbol {name!r}")
        return cls({K.pack(*(int(name == s) for s in SYMBOLS)): 1})

    # predicates / views
    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_constant(self):
        return not self.den and all(k == 0 for k in self.num)

    def to_fraction(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(self.num.get(0, 0), self.dc)

    @property
    def numerator(self):
        return dict(self.num)

    @property
    def denominator(self):
        return K.pscale(_expand(self.den), self.dc)

    def symbols(self):
        """Names of the symbols occurring in this value."""
        used = set()
        polys = [self.num] + [_finfo(fk)[0] for fk, _ in self.den]
        for p in polys:
            for k in p:
                for s, e in zip(SYMBOLS, K.unpack(k)):
                    if e:
                        used.add(s)
        return used

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        a, b = self, other
        L = a.dc * b.dc // gcd(a.dc, b.dc)
        if a.den == b.den:
            num = K.pscale(a.num, L // a.dc)
            K.paddmul(num, b.num, L // b.dc)
            return Scalar._make(num, a.den, L)
        da, db = dict(a.den), dict(b.den)
        merged = {fk: max(da.get(fk, 0), db.get(fk, 0)) for fk in set(da) | set(db)}
        fa = tuple(sorted((fk, m - da.get(fk, 0)) for fk, m in merged.items() if m > da.get(fk, 0)))
        fb = tuple(sorted((fk, m - db.get(fk, 0)) for fk, m in merged.items() if m > db.get(fk, 0)))
        num = K.pmul(a.num, _expand(fa)) if fa else dict(a.num)
        if L != a.dc:
            num = K.pscale(num, L // a.dc)
        nb = K.pmul(b.num, _expand(fb)) if fb else b.num
        K.paddmul(num, nb, L // b.dc)
        return Scalar._make(num, tuple(sorted(merged.items())), L)

    __radd__ = __add__

    def __neg__(self):
        if not self.num:
            return self
        return Scalar({k: -v for k, v in self.num.items()}, self.den, self.dc)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return ZERO
        a, b = self, other
        if not a.den and not b.den:
            return Scalar._make(K.pmul(a.num, b.num), (), a.dc * b.dc)
        na, db = _cancel(a.num, b.den) if b.den else (a.num, [])
        nb, da = _cancel(b.num, a.den) if a.den else (b.num, [])
        num = K.pmul(na, nb)
        dc = a.dc * b.dc
        g = gcd(K.pcontent(num), dc)
        if g != 1:
            num = K.pdivint(num, g)
            dc //= g
        return Scalar(num, tuple(sorted(_merge(da, db).items())), dc)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("division by zero Scalar")
        unit, facs = factor_poly(self.num)
        sign = 1 if unit > 0 else -1
        num = K.pscale(_expand(self.den), self.dc * sign)
        return Scalar._make(num, facs, abs(unit))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if not self.num:
            return ONE if n == 0 else ZERO
        den = tuple((fk, m * n) for fk, m in self.den)
        return Scalar(K.ppow(self.num, n), den, self.dc ** n)

    # comparison / hashing
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.dc == other.dc and self.den == other.den and self.num == other.num

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), self.den, self.dc))
        return self._hash

    # specialization
    def subs(self, values: Mapping[str, Fraction]):
        """Substitute rationals for some symbols; result stays a Scalar."""
        values = _normalize_values(values)
        num = _poly_subs(self.num, values)
        out = num / self.dc
        for fk, m in self.den:
            f = _poly_subs(_finfo(fk)[0], values)
            if not f:
                raise PoleError(f"denominator factor {format_poly(_finfo(fk)[0])} vanishes "
                                f"at {_fmt_values(values)}")
            out = out / f ** m
        return out

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        """Exact rational value; every occurring symbol must be assigned."""
        values = _normalize_values(values)
        missing = self.symbols() - set(values)
        if missing:
            raise ValueError(f"specialization does not assign {sorted(missing)}")
        return self.subs(values).to_fraction()

    def swap_h12(self) -> "Scalar":
        """The image under the exchange h1 <-> h2."""
        def sw(poly):
            out = {}
            for k, v in poly.items():
                a, b, e = K.unpack(k)
                out[K.pack(b, a, e)] = v
            return out
        out = Scalar._make(sw(self.num), (), self.dc)
        for fk, m in self.den:
            out = out / Scalar.poly(sw(_finfo(fk)[0])) ** m
        return out

    # text
    def __str__(self):
        if not self.den:
            if self.dc == 1:
                return format_poly(self.num)
            return f"({format_poly(self.num)})/{self.dc}"
        return f"({format_poly(self.num)})/({format_poly(self.denominator)})"

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def factored(self):
        """Human-readable form with the denominator left factored."""
        parts = [str(self.dc)] if self.dc != 1 else []
        for fk, m in self.den:
            s = f"({format_poly(_finfo(fk)[0])})"
            parts.append(s if m == 1 else f"{s}^{m}")
        den = "*".join(parts)
        num = format_poly(self.num)
        return f"({num})/({den})" if den else num


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return Scalar.from_int(x)
    if isinstance(x, Fraction):
        return Scalar.from_fraction(x)
    return NotImplemented


ZERO = Scalar()
ONE = Scalar({0: 1})
h1 = Scalar.symbol("h1")
h2 = Scalar.symbol("h2")
h3 = Scalar.symbol("h3")
w = Scalar.symbol("w")
sigma2 = h1 * h2 + h1 * h3 + h2 * h3
sigma3 = h1 * h2 * h3


def as_scalar(x) -> Scalar:
    y = _coerce(x)
    if y is NotImplemented:
        if isinstance(x, str):
            return parse(x)
        raise TypeError(f"cannot convert {x!r} to Scalar")
    return y


def psi0(n_layers: int) -> Scalar:
    """Central element ψ0 = -N/(h1 h2)."""
    return Scalar.from_int(-n_layers) / (h1 * h2)


@lru_cache(maxsize=None)
def lin(a: int, b: int) -> Scalar:
    """The weight a*h1 + b*h2 (cached; weights of boxes are of this form)."""
    return Scalar.linear(a, b)


# -- substitution helpers ------------------------------------------------

def _normalize_values(values):
    out = {}
    for k, v in values.items():
        if k not in SYMBOLS:
            raise ValueError(f"unknown symbol {k!r}; expected one of {SYMBOLS}")
        out[k] = Fraction(v)
    return out


def _fmt_values(values):
    return ", ".join(f"{k}={v}" for k, v in sorted(values.items()))


def _poly_subs(poly, values) -> Scalar:
    idx = [(i, values[s]) for i, s in enumerate(SYMBOLS) if s in values]
    acc = {}
    for k, c in poly.items():
        e = list(K.unpack(k))
        coeff = Fraction(c)
        for i, v in idx:
            if e[i]:
                coeff *= v ** e[i]
                e[i] = 0
        if coeff:
            kk = K.pack(*e)
            acc[kk] = acc.get(kk, 0) + coeff
    den = 1
    for q in acc.values():
        den = den * q.denominator // gcd(den, q.denominator)
    return Scalar.poly({k: int(q * den) for k, q in acc.items() if q}, den)


# -- canonical text form -------------------------------------------------

def _term_order(item):
    e1, e2, e3 = K.unpack(item[0])
    return (e1 + e2 + e3, e3, e2, e1)


def format_poly(poly) -> str:
    if not poly:
        return "0"
    out = []
    for k, c in sorted(poly.items(), key=_term_order, reverse=True):
        mon = "*".join(s if e == 1 else f"{s}^{e}"
                       for s, e in zip(SYMBOLS, K.unpack(k)) if e)
        mag = abs(c)
        if mon:
            body = mon if mag == 1 else f"{mag}*{mon}"
        else:
            body = str(mag)
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|(h1|h2|h3|w)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at {text[pos:pos + 10]!r}")
        pos = m.end()
        if m.group(1):
            toks.append(("int", int(m.group(1))))
        elif m.group(2):
            toks.append(("sym", m.group(2)))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op))
    return toks


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self):
        v = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self):
        v = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            v = v * rhs if op == "*" else v / rhs
        return v

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            neg = False
            if self.peek()[1] == "-":
                self.take()
                neg = True
            kind, n = self.take()
            if kind != "int":
                raise ParseError("exponent must be an integer")
            return base ** (-n if neg else n)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return Scalar.from_int(val)
        if kind == "sym":
            return Scalar.symbol(val)
        if val == "(":
            v = self.expr()
            self.take(")")
            return v
        raise ParseError(f"unexpected token {val!r}")


def parse(text: str) -> Scalar:
    """Parse the canonical text form (or any +,-,*,/,^ expression in
    h1, h2, h3, w and integers)."""
    p = _Parser(_tokenize(text))
    v = p.expr()
    if p.i != len(p.toks):
        raise ParseError(f"trailing input in {text!r}")
    return v


# -- model parameters ----------------------------------------------------

@dataclass(frozen=True)
class ModelParams:
    """Number of layers/alphabets N, the shift w, optional specialization."""

    N: int = 1
    w: Scalar = field(default_factory=lambda: w)
    specialization: Optional[Mapping[str, Fraction]] = None

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be a positive integer")
        object.__setattr__(self, "w", as_scalar(self.w))
        if self.specialization is not None:
            object.__setattr__(self, "specialization",
                               _normalize_values(self.specialization))

    @property
    def psi0(self) -> Scalar:
        return psi0(self.N)

    def specialize(self, x: Scalar) -> Scalar:
        if not self.specialization:
            return x
        return x.subs(self.specialization)

    def __hash__(self):
        spec = tuple(sorted(self.specialization.items())) if self.specialization else None
        return hash((self.N, self.w, spec))
