"""Power-sum polynomials in N alphabets and the differential W-operators.

A monomial is a sorted tuple of ``(j, n, e)``: the factor p_{j,n}^e, with
alphabet j in 1..N and mode n >= 1.  One alphabet (N = 1) is the 2D case,
where p_{1,n} is written p_n.
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import factorial

from .graded import (GradedOperator, GradedSpace, ad_power, compare_on, linear_combination,
                     vadd, vscale)
from .scalar import ONE, ZERO, ModelParams, Scalar, as_scalar, h1, h2, h3, psi0, sigma3

Monomial = tuple


class AlphabetError(ValueError):
    pass


# -- monomials -----------------------------------------------------------

def mon_degree(m: Monomial) -> int:
    return sum(n * e for _, n, e in m)


def mon_length(m: Monomial) -> int:
    return sum(e for _, _, e in m)


def mon_alphabets(m: Monomial) -> int:
    return max((j for j, _, _ in m), default=0)


def make_mon(factors) -> Monomial:
    """Monomial from an iterable of (j, n) or (j, n, e)."""
    acc = {}
    for f in factors:
        j, n, e = (tuple(f) + (1,))[:3]
        if j < 1 or n < 1 or e < 0:
            raise AlphabetError(f"bad factor {f}")
        acc[(j, n)] = acc.get((j, n), 0) + e
    return tuple(sorted((j, n, e) for (j, n), e in acc.items() if e))


def mon_mul(a: Monomial, b: Monomial) -> Monomial:
    return make_mon(a + b)


def mon_times(m: Monomial, j: int, n: int) -> Monomial:
    out = list(m)
    for i, (jj, nn, e) in enumerate(out):
        if (jj, nn) == (j, n):
            out[i] = (j, n, e + 1)
            return tuple(out)
    out.append((j, n, 1))
    return tuple(sorted(out))


def mon_diff(m: Monomial, j: int, n: int):
    """(exponent, m / p_{j,n}) or None when p_{j,n} does not occur."""
    for i, (jj, nn, e) in enumerate(m):
        if (jj, nn) == (j, n):
            rest = m[:i] + (((j, n, e - 1),) if e > 1 else ()) + m[i + 1:]
            return e, rest
    return None


def mon_exp(m: Monomial, j: int, n: int) -> int:
    for jj, nn, e in m:
        if (jj, nn) == (j, n):
            return e
    return 0


def _compositions(d, maxpart=None):
    """Partitions of d as weakly decreasing tuples."""
    if d == 0:
        yield ()
        return
    if maxpart is None or maxpart > d:
        maxpart = d
    for k in range(maxpart, 0, -1):
        for rest in _compositions(d - k, k):
            yield (k,) + rest


@lru_cache(maxsize=None)
def monomials(d: int, N: int) -> tuple:
    """All monomials of degree d in N alphabets, in a fixed order."""
    out = set()
    # distribute degree d among alphabets, then a partition per alphabet
    def rec(j, left, acc):
        if j > N:
            if left == 0:
                out.add(make_mon(acc))
            return
        for part in range(left, -1, -1):
            if j == N and part != left:
                continue
            for lam in _compositions(part):
                rec(j + 1, left - part, acc + [(j, n) for n in lam])
    rec(1, d, [])
    return tuple(sorted(out, key=lambda m: (tuple(sorted(((n, j) for j, n, e in m for _ in range(e)),
                                                       reverse=True)), m), reverse=True))


def format_mon(m: Monomial, N: int = 1) -> str:
    if not m:
        return "1"
    parts = []
    for j, n, e in m:
        v = f"p{n}" if N == 1 else f"p[{j},{n}]"
        parts.append(v if e == 1 else f"{v}^{e}")
    return "*".join(parts)


# -- polynomials ---------------------------------------------------------

class PowerSumPoly:
    """Sparse polynomial {monomial: Scalar} in N alphabets."""

    __slots__ = ("N", "terms")

    def __init__(self, terms=None, N: int = 1):
        self.N = N
        t = {}
        for m, c in (terms or {}).items():
            c = as_scalar(c)
            if c:
                if mon_alphabets(m) > N:
                    raise AlphabetError(f"monomial {m} uses more than {N} alphabets")
                t[m] = c
        self.terms = t

    @classmethod
    def one(cls, N=1):
        return cls({(): ONE}, N)

    @classmethod
    def p(cls, n, j=1, N=1):
        return cls({((j, n, 1),): ONE}, N)

    @classmethod
    def from_vector(cls, vec, N=1):
        return cls(vec, N)

    def _check(self, other):
        if not isinstance(other, PowerSumPoly):
            return NotImplemented
        if other.N != self.N:
            raise AlphabetError(f"alphabet mismatch: N={self.N} vs N={other.N}")
        return other

    def __add__(self, other):
        if isinstance(other, (int, Scalar)):
            other = PowerSumPoly({(): other}, self.N)
        if self._check(other) is NotImplemented:
            return NotImplemented
        return PowerSumPoly(vadd(dict(self.terms), other.terms), self.N)

    __radd__ = __add__

    def __neg__(self):
        return PowerSumPoly({m: -c for m, c in self.terms.items()}, self.N)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PowerSumPoly):
            self._check(other)
            out = {}
            for ma, ca in self.terms.items():
                for mb, cb in other.terms.items():
                    vadd(out, {mon_mul(ma, mb): ca * cb})
            return PowerSumPoly(out, self.N)
        return PowerSumPoly(vscale(self.terms, other), self.N)

    def __rmul__(self, other):
        return PowerSumPoly(vscale(self.terms, other), self.N)

    def __truediv__(self, c):
        return self * (ONE / as_scalar(c))

    def __pow__(self, k: int):
        out = PowerSumPoly.one(self.N)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Scalar)):
            other = PowerSumPoly({(): other}, self.N)
        return isinstance(other, PowerSumPoly) and self.N == other.N and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set:
        return {mon_degree(m) for m in self.terms}

    def homogeneous(self, d: int) -> "PowerSumPoly":
        return PowerSumPoly({m: c for m, c in self.terms.items() if mon_degree(m) == d}, self.N)

    def truncate(self, d: int) -> "PowerSumPoly":
        return PowerSumPoly({m: c for m, c in self.terms.items() if mon_degree(m) <= d}, self.N)

    def coeff(self, factors) -> Scalar:
        """Coefficient of the monomial given as (j, n) or (j, n, e) factors."""
        return self.terms.get(make_mon(factors), ZERO)

    def map_coeffs(self, fn) -> "PowerSumPoly":
        return PowerSumPoly({m: fn(c) for m, c in self.terms.items()}, self.N)

    def swap_h(self) -> "PowerSumPoly":
        """Exchange h1 and h2 in every coefficient."""
        return self.map_coeffs(swap_h12)

    def subs(self, values) -> "PowerSumPoly":
        return self.map_coeffs(lambda c: c.subs(values))

    def evaluate_vars(self, assignment) -> Scalar:
        """Substitute Scalars for variables: ``assignment[(j, n)]``; missing
        variables are set to zero."""
        out = ZERO
        for m, c in self.terms.items():
            t = c
            for j, n, e in m:
                v = assignment.get((j, n))
                if v is None:
                    t = ZERO
                    break
                t = t * as_scalar(v) ** e
            out = out + t
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda t: (-mon_degree(t[0]), [(-n, j, -e) for j, n, e in t[0]]))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{format_mon(m, self.N)}" for m, c in self.sorted_terms())

    def __repr__(self):
        return f"PowerSumPoly(N={self.N}, {self})"


def swap_h12(c: Scalar) -> Scalar:
    return c.swap_h12()


# -- inner product -------------------------------------------------------

def mon_norm(m: Monomial, psi: Scalar) -> Scalar:
    """<m, m> = prod n^e e! psi^e."""
    k = 1
    for _, n, e in m:
        k *= n ** e * factorial(e)
    return psi ** mon_length(m) * k


def inner(a: PowerSumPoly, b: PowerSumPoly, params: ModelParams | int | None = None,
          psi: Scalar | None = None) -> Scalar:
    """Bilinear pairing with <p_{j,n}, p_{i,m}> = delta delta n*psi0.

    ``psi`` overrides the per-mode constant (default psi0 = -N/(h1 h2)).
    """
    if a.N != b.N:
        raise AlphabetError("alphabet mismatch in inner product")
    if psi is None:
        N = a.N if params is None else (params if isinstance(params, int) else params.N)
        psi = psi0(N)
    small, big = (a, b) if len(a.terms) <= len(b.terms) else (b, a)
    out = ZERO
    for m, c in small.terms.items():
        d = big.terms.get(m)
        if d is not None:
            out = out + c * d * mon_norm(m, psi)
    return out


# -- operators -----------------------------------------------------------

@lru_cache(maxsize=None)
def poly_space(N: int) -> GradedSpace:
    return GradedSpace(f"powersums(N={N})", lambda d: monomials(d, N), mon_degree)


def as_vector(p: PowerSumPoly) -> dict:
    return dict(p.terms)


def apply(op: GradedOperator, p: PowerSumPoly) -> PowerSumPoly:
    return PowerSumPoly(op.apply(p.terms), p.N)


def _cut_join(m, N, cut_c, join_c):
    """sum_i sum_{k,l} (cut_c * k l p_{k+l} d_k d_l + join_c (k+l) p_k p_l d_{k+l})
    applied to a monomial, alphabet by alphabet."""
    out = {}
    for idx, (j, k, ek) in enumerate(m):
        # cut (join of two variables into one): ordered pairs (k, l)
        for (jl, l, el) in m[idx:]:
            if jl != j:
                continue
            if l == k:
                if ek < 2:
                    continue
                mult = ek * (ek - 1)
            else:
                mult = 2 * ek * el  # (k,l) and (l,k)
            _, r = mon_diff(m, j, k)
            _, r = mon_diff(r, j, l)
            vadd(out, {mon_times(r, j, k + l): cut_c * (k * l * mult)})
        # join term: p_{j,a} p_{j,b} d_{j,k}, a + b = k, ordered
        if join_c:
            _, r = mon_diff(m, j, k)
            for a in range(1, k):
                vadd(out, {mon_times(mon_times(r, j, a), j, k - a): join_c * (k * ek)})
    return out


def _cross(m, N, coef):
    """coef * sum_{i1<i2} sum_k k^2 p_{i1,k} d_{i2,k}."""
    out = {}
    for (j2, k, e) in m:
        _, r = mon_diff(m, j2, k)
        for j1 in range(1, j2):
            vadd(out, {mon_times(r, j1, k): coef * (k * k * e)})
    return out


def _diag(m, fn):
    """sum_{j,k} fn(j, k) k p_{j,k} d_{j,k} (diagonal on monomials)."""
    c = ZERO
    for (j, k, e) in m:
        c = c + fn(j, k) * (k * e)
    return {m: c} if c else {}


class OperatorFactory:
    """Builds and caches named operators for fixed (N, w)."""

    def __init__(self, params: ModelParams | int = 1, two_d: bool | None = None):
        if isinstance(params, int):
            params = ModelParams(N=params)
        self.params = params
        self.N = params.N
        self.w = params.w
        self.space = poly_space(self.N)
        self._cache = {}

    def get(self, name: str) -> GradedOperator:
        if name not in self._cache:
            self._cache[name] = self._build(name)
        return self._cache[name]

    __getitem__ = get

    def _op(self, shift, rule, name):
        return GradedOperator(self.space, shift, rule, name)

    def _require_2d(self, name):
        if self.N != 1:
            raise AlphabetError(f"{name} is a one-alphabet operator (got N={self.N})")

    def _build(self, name: str) -> GradedOperator:
        N, w = self.N, self.w
        s12 = h1 * h2
        s = h1 + h2
        mt = re.fullmatch(r"W(minus|plus)(\d+)_(2d|3d)", name)
        if mt:
            kind, n, dim = mt.group(1), int(mt.group(2)), mt.group(3)
            if n < 1:
                raise ValueError("W-operator index must be >= 1")
            return self._w_tower(kind, n, dim)
        if name.endswith("_2d"):
            self._require_2d(name)
        if name == "W0_2d":
            def rule(m):
                out = _cut_join(m, 1, ONE / 2, -s12 / 2)
                return vadd(out, _diag(m, lambda j, k: (s * (k - 1) + 2 * w) / 2))
            return self._op(0, rule, name)
        if name == "W0_3d":
            def rule(m):
                out = _cut_join(m, N, ONE / 2, -s12 / 2)
                vadd(out, _cross(m, N, s))
                return vadd(out, _diag(m, lambda j, k: (s * (k - 2 * N + 2 * j - 1) + 2 * w) / 2))
            return self._op(0, rule, name)
        if name in ("E1_2d", "E1_3d"):
            def rule(m):
                out = {}
                for (j, k, e) in m:
                    _, r = mon_diff(m, j, k)
                    vadd(out, {mon_times(r, j, k + 1): as_scalar(k * e)})
                for j in range(1, N + 1):
                    vadd(out, {mon_times(m, j, 1): w})
                return out
            return self._op(1, rule, name)
        if name in ("Eminus1_2d", "Eminus1_3d"):
            dim = name[-2:]
            return self._renamed(self.get(f"W0_{dim}").commutator(self.get(f"f0_{dim}")), name)
        if name == "psi2_2d":
            # -2 h1 h2 sum_j b_{-j} b_j
            return self._boson_sum(name, 0, -2 * s12, lambda j: (-j, j))
        if name == "psi2_3d":
            return self._op(0, lambda m: _diag(m, lambda j, k: as_scalar(2)), name)
        if name == "psi3_2d":
            return self._psi3_boson(name)
        if name == "psi3_3d":
            def rule(m):
                out = _cut_join(m, N, as_scalar(3), -3 * s12)
                vadd(out, _cross(m, N, -6 * h3))
                return vadd(out, _diag(m, lambda j, k: -(6 * j - 4 * N - 3) * h3 - 3 * h3 * k))
            return self._op(0, rule, name)
        if name == "e0_2d":
            return self._boson_sum(name, 1, ONE, None, (-1,))
        if name == "e1_2d":
            return self._boson_sum(name, 1, -s12, lambda j: (-j - 1, j))
        if name == "f0_2d":
            return self._boson_sum(name, -1, -ONE, None, (1,))
        if name == "e0_3d":
            return self._op(1, lambda m: {mon_times(m, j, 1): ONE for j in range(1, N + 1)}, name)
        if name == "e1_3d":
            def rule(m):
                out = {}
                for (j, k, e) in m:
                    _, r = mon_diff(m, j, k)
                    vadd(out, {mon_times(r, j, k + 1): as_scalar(k * e)})
                return out
            return self._op(1, rule, name)
        if name == "f0_3d":
            def rule(m):
                out = {}
                for j in range(1, N + 1):
                    d = mon_diff(m, j, 1)
                    if d:
                        vadd(out, {d[1]: as_scalar(d[0]) / s12})
                return out
            return self._op(-1, rule, name)
        if name in ("f1_2d", "f1_3d"):
            dim = name[-2:]
            em1, f0 = self.get(f"Eminus1_{dim}"), self.get(f"f0_{dim}")
            return self._renamed(linear_combination([(-1, em1), (-w, f0)]), name)
        raise KeyError(f"unknown operator {name!r}")

    def _renamed(self, op, name):
        op.name = name
        return op

    def _w_tower(self, kind, n, dim):
        W0 = self.get(f"W0_{dim}")
        if kind == "minus":
            E = self.get(f"E1_{dim}")
            if n == 1:
                return self._renamed(W0.commutator(E), f"Wminus1_{dim}")
            op = ad_power(self.get(f"Wminus1_{dim}"), E, n - 1)
            return self._renamed(op.scale(Scalar.from_int(1) / factorial(n - 1)), f"Wminus{n}_{dim}")
        E = self.get(f"Eminus1_{dim}")
        if n == 1:
            return self._renamed(W0.commutator(E), f"Wplus1_{dim}")
        op = ad_power(self.get(f"Wplus1_{dim}"), E, n - 1)
        return self._renamed(op.scale(Scalar.from_int((-1) ** n) / factorial(n - 1)),
                             f"Wplus{n}_{dim}")

    # literal boson words for the one-alphabet realization
    def _boson(self, mode: int, m: Monomial) -> dict:
        """b_{-n} = p_n, b_n = -(n/(h1 h2)) d/dp_n."""
        if mode < 0:
            return {mon_times(m, 1, -mode): ONE}
        d = mon_diff(m, 1, mode)
        if d is None:
            return {}
        return {d[1]: as_scalar(-mode * d[0]) / (h1 * h2)}

    def _word(self, modes, vec: dict) -> dict:
        """Apply b_{modes[0]} ... b_{modes[-1]} (rightmost acts first)."""
        for mode in reversed(modes):
            out = {}
            for m, c in vec.items():
                vadd(out, self._boson(mode, m), c)
            vec = out
            if not vec:
                break
        return vec

    def _boson_sum(self, name, shift, coef, word_of_j, word=None):
        """``coef * sum_{j>=1} word_of_j(j)`` or ``coef * word`` for a fixed word."""
        def rule(m):
            if word is not None:
                return vscale(self._word(word, {m: ONE}), coef)
            out = {}
            for j in range(1, mon_degree(m) + 2):
                vadd(out, self._word(word_of_j(j), {m: ONE}), coef)
            return out
        return self._op(shift, rule, name)

    def _psi3_boson(self, name):
        s12 = h1 * h2

        def rule(m):
            d = mon_degree(m)
            out = {}
            c3 = 3 * s12 * s12
            for j in range(1, d + 1):
                for k in range(1, d + 1):
                    vadd(out, self._word((-(j + k), j, k), {m: ONE}), c3)
                    if j + k <= d:
                        vadd(out, self._word((-j, -k, j + k), {m: ONE}), c3)
                vadd(out, self._word((-j, j), {m: ONE}), 3 * sigma3 * j - sigma3)
            return out
        return self._op(0, rule, name)


OPERATOR_NAMES = (
    "W0_2d", "E1_2d", "Eminus1_2d", "psi2_2d", "psi3_2d", "e0_2d", "e1_2d", "f0_2d", "f1_2d",
    "W0_3d", "E1_3d", "Eminus1_3d", "psi2_3d", "psi3_3d", "e0_3d", "e1_3d", "f0_3d", "f1_3d",
    "Wminus<n>_2d", "Wplus<n>_2d", "Wminus<n>_3d", "Wplus<n>_3d",
)


def build_operator(name: str, params: ModelParams | int = 1, degree_cap: int | None = None):
    """Named operator; with ``degree_cap`` its blocks up to the cap are
    materialized eagerly."""
    if degree_cap is not None and degree_cap < 1:
        raise ValueError("degree_cap must be >= 1")
    op = OperatorFactory(params).get(name)
    if degree_cap is not None:
        op.materialize(degree_cap)
    return op


def operator_identity_check(lhs: GradedOperator, rhs: GradedOperator, degree_cap: int) -> dict:
    degrees = [d for d in range(degree_cap + 1) if 0 <= d + lhs.shift <= degree_cap]
    ok, wit = compare_on(lhs, rhs, degrees)
    out = {"lhs": lhs.name, "rhs": rhs.name, "domain": degrees, "status": "pass" if ok else "fail"}
    if wit:
        out["witness"] = {k: str(v) for k, v in wit.items()}
    return out
