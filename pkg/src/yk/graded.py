"""Degree-homogeneous linear maps on graded spaces with a finite basis per
degree.

An operator is given by a *rule*: a function taking a basis key and
returning a sparse vector (dict key -> Scalar).  Columns are memoized, so
composite operators built from commutators reuse work.  Basis keys must
be hashable and carry a ``degree`` via the ``degree_of`` callable of the
space.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Hashable

from .scalar import ONE, ZERO, Scalar, as_scalar


def thread_count() -> int:
    try:
        n = int(os.environ.get("YK_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


def pmap(fn, items):
    """Map honoring YK_THREADS; results come back in input order."""
    items = list(items)
    n = thread_count()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


# -- sparse vectors ------------------------------------------------------

def vadd(acc: dict, v: dict, c=None) -> dict:
    """In place ``acc += c*v``."""
    for k, x in v.items():
        if c is not None:
            x = x * c
        y = acc.get(k)
        y = x if y is None else y + x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def vscale(v: dict, c) -> dict:
    c = as_scalar(c)
    if not c:
        return {}
    return {k: x * c for k, x in v.items()}


def vsub(a: dict, b: dict) -> dict:
    return vadd(dict(a), b, -ONE)


class GradedSpace:
    def __init__(self, name: str, basis: Callable[[int], list], degree_of: Callable):
        self.name = name
        self._basis = basis
        self.degree_of = degree_of
        self._cache = {}

    def basis(self, d: int) -> list:
        if d < 0:
            return []
        if d not in self._cache:
            self._cache[d] = list(self._basis(d))
        return self._cache[d]

    def __repr__(self):
        return f"GradedSpace({self.name})"


class GradedOperator:
    """Linear map raising degree by ``shift``."""

    def __init__(self, space: GradedSpace, shift: int, rule: Callable[[Hashable], dict], name="op"):
        self.space = space
        self.shift = shift
        self.rule = rule
        self.name = name
        self._cols = {}

    def column(self, key) -> dict:
        col = self._cols.get(key)
        if col is None:
            col = {k: v for k, v in self.rule(key).items() if v}
            self._cols[key] = col
        return col

    def apply(self, vec: dict) -> dict:
        out = {}
        for k, c in vec.items():
            vadd(out, self.column(k), c)
        return out

    __call__ = apply

    def block(self, d: int) -> dict:
        """Sparse block of degree ``d``: {(row_key, col_key): value}."""
        keys = self.space.basis(d)
        cols = pmap(self.column, keys)
        return {(r, c): v for c, col in zip(keys, cols) for r, v in col.items()}

    def materialize(self, cap: int) -> dict:
        return {d: self.block(d) for d in range(cap + 1) if 0 <= d + self.shift}

    # algebra
    def _check(self, other):
        if other.space is not self.space:
            raise ValueError("operators act on different spaces")

    def __add__(self, other):
        self._check(other)
        if other.shift != self.shift:
            raise ValueError("adding operators of different degree shift")
        return GradedOperator(self.space, self.shift,
                              lambda k: vadd(dict(self.column(k)), other.column(k)),
                              f"({self.name} + {other.name})")

    def __sub__(self, other):
        self._check(other)
        if other.shift != self.shift:
            raise ValueError("subtracting operators of different degree shift")
        return GradedOperator(self.space, self.shift,
                              lambda k: vsub(self.column(k), other.column(k)),
                              f"({self.name} - {other.name})")

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "GradedOperator":
        c = as_scalar(c)
        return GradedOperator(self.space, self.shift, lambda k: vscale(self.column(k), c),
                              f"{c}*{self.name}")

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction, Scalar)):
            return self.scale(c)
        return NotImplemented

    def __matmul__(self, other):
        """Composition ``self after other``."""
        self._check(other)
        return GradedOperator(self.space, self.shift + other.shift,
                              lambda k: self.apply(other.column(k)),
                              f"{self.name}.{other.name}")

    def commutator(self, other) -> "GradedOperator":
        self._check(other)
        a, b = self, other
        return GradedOperator(self.space, a.shift + b.shift,
                              lambda k: vsub(a.apply(b.column(k)), b.apply(a.column(k))),
                              f"[{a.name}, {b.name}]")

    def anticommutator(self, other) -> "GradedOperator":
        self._check(other)
        a, b = self, other
        return GradedOperator(self.space, a.shift + b.shift,
                              lambda k: vadd(a.apply(b.column(k)), b.apply(a.column(k))),
                              f"{{{a.name}, {b.name}}}")

    def __repr__(self):
        return f"GradedOperator({self.name}, shift={self.shift})"


def identity(space: GradedSpace) -> GradedOperator:
    return GradedOperator(space, 0, lambda k: {k: ONE}, "1")


def zero(space: GradedSpace, shift: int = 0) -> GradedOperator:
    return GradedOperator(space, shift, lambda k: {}, "0")


def ad_power(a: GradedOperator, b: GradedOperator, n: int) -> GradedOperator:
    out = b
    for _ in range(n):
        out = a.commutator(out)
    return out


def linear_combination(terms) -> GradedOperator:
    """Sum of ``c * op`` for (c, op) pairs; all ops share space and shift."""
    terms = [(as_scalar(c), op) for c, op in terms]
    space, shift = terms[0][1].space, terms[0][1].shift
    for _, op in terms:
        if op.space is not space or op.shift != shift:
            raise ValueError("incompatible operators in linear combination")

    def rule(k):
        out = {}
        for c, op in terms:
            if c:
                vadd(out, op.column(k), c)
        return out

    return GradedOperator(space, shift, rule, " + ".join(f"{c}*{op.name}" for c, op in terms))


def compare_on(lhs: GradedOperator, rhs: GradedOperator, degrees) -> tuple:
    """(True, None) if equal on every basis key of ``degrees``, otherwise
    (False, witness dict) for the first differing column entry."""
    for d in degrees:
        for key in lhs.space.basis(d):
            diff = vsub(lhs.column(key), rhs.column(key))
            if diff:
                row = min(diff, key=str)
                return False, {"input": key, "output": row, "difference": diff[row]}
    return True, None


def is_zero_on(op: GradedOperator, degrees) -> tuple:
    for d in degrees:
        for key in op.space.basis(d):
            col = op.column(key)
            if col:
                row = min(col, key=str)
                return False, {"input": key, "output": row, "value": col[row]}
    return True, None


def exp_apply(op: GradedOperator, vec: dict, max_degree: int, degree_of, coeff=ONE) -> dict:
    """``exp(coeff*op) vec`` truncated to degree ``max_degree`` (op must
    raise degree)."""
    if op.shift <= 0:
        raise ValueError("truncated exponential needs a degree-raising operator")
    out = dict(vec)
    term = dict(vec)
    k = 0
    while term:
        k += 1
        term = op.apply({key: v for key, v in term.items() if degree_of(key) + op.shift <= max_degree})
        term = vscale(term, as_scalar(coeff) / k)
        if not term:
            break
        vadd(out, term)
    return out


__all__ = [
    "GradedSpace", "GradedOperator", "identity", "zero", "ad_power", "linear_combination",
    "compare_on", "is_zero_on", "exp_apply", "vadd", "vsub", "vscale", "pmap", "thread_count",
    "ZERO", "ONE",
]
