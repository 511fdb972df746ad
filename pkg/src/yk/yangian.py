"""The plane-partition representation of the affine Yangian of gl(1).

States are labelled by plane partitions of height at most N and normalized
along their canonical growth path, so a state carries the product of the
amplitudes E along that path.  Only squares E^2 and the rational transport
factors between paths are ever formed; every matrix entry is rational.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterable

from .diagrams import (Box, PlanePartition, addable_boxes, all_paths, canonical_path,
                       enumerate_pp, removable_boxes, weight_coeffs)
from .graded import GradedOperator, GradedSpace, compare_on, is_zero_on, linear_combination
from .scalar import ONE, ZERO, ModelParams, Scalar, lin, sigma2, sigma3

# h1, h2, h3 as coefficient pairs over (h1, h2)
_H = ((1, 0), (0, 1), (-1, -1))


class YangianError(ArithmeticError):
    pass


def _add(r, s):
    return (r[0] + s[0], r[1] + s[1])


def _sub(r, s):
    return (r[0] - s[0], r[1] - s[1])


class FactoredRationalU:
    """``prefactor * prod (u - root)^mult`` with roots integer linear forms
    a*h1 + b*h2, stored as (a, b)."""

    __slots__ = ("prefactor", "factors")

    def __init__(self, prefactor: Scalar, factors):
        self.prefactor = prefactor
        merged = Counter()
        for root, m in (factors.items() if isinstance(factors, dict) else factors):
            merged[tuple(root)] += m
        self.factors = {r: m for r, m in sorted(merged.items()) if m}

    def roots(self) -> list:
        return [(lin(*r), m) for r, m in self.factors.items()]

    def order_at(self, root) -> int:
        return self.factors.get(tuple(root), 0)

    def __mul__(self, other):
        f = Counter(self.factors)
        f.update(other.factors)
        return FactoredRationalU(self.prefactor * other.prefactor, f)

    def evaluate(self, u: Scalar) -> Scalar:
        out = self.prefactor
        for r, m in self.factors.items():
            out = out * (u - lin(*r)) ** m
        return out

    def residue(self, root) -> Scalar:
        """Residue at a simple pole ``u = root``."""
        root = tuple(root)
        m = self.factors.get(root, 0)
        if m != -1:
            raise YangianError(f"u = {lin(*root)} is not a simple pole (order {m})")
        out = self.prefactor
        for r, k in self.factors.items():
            if r != root:
                out = out * lin(*_sub(root, r)) ** k
        return out

    def series(self, order: int) -> list:
        """Coefficients c_0..c_order of the expansion in 1/u; the function
        must have total degree zero in u."""
        if sum(self.factors.values()) != 0:
            raise YangianError("series expansion needs a degree-zero function")
        coeffs = [ONE] + [ZERO] * order
        for r, m in self.factors.items():
            x = lin(*r)
            # (1 - x/u)^m = sum binom(m, k) (-x)^k u^-k
            fac = [ONE]
            c = Fraction(1)
            for k in range(1, order + 1):
                c = c * (m - k + 1) / k
                fac.append((-x) ** k * c if c else ZERO)
            coeffs = [sum((coeffs[i] * fac[n - i] for i in range(n + 1) if fac[n - i]), ZERO)
                      for n in range(order + 1)]
        return [self.prefactor * c for c in coeffs]

    def __eq__(self, other):
        return (isinstance(other, FactoredRationalU) and self.prefactor == other.prefactor
                and self.factors == other.factors)

    def __str__(self):
        parts = []
        for r, m in self.factors.items():
            s = f"(u - ({lin(*r)}))"
            parts.append(s if m == 1 else f"{s}^{m}")
        body = "*".join(parts) or "1"
        return body if self.prefactor == ONE else f"{self.prefactor}*{body}"

    __repr__ = __str__


def phi_factors(shift) -> dict:
    """phi(u - shift) as {root: mult}."""
    out = Counter()
    for h in _H:
        out[_sub(shift, h)] += 1
        out[_add(shift, h)] -= 1
    return out


def phi(x: Scalar) -> Scalar:
    """phi(x) = (x+h1)(x+h2)(x+h3)/((x-h1)(x-h2)(x-h3))."""
    num = den = ONE
    for h in _H:
        hs = lin(*h)
        num = num * (x + hs)
        den = den * (x - hs)
    return num / den


@lru_cache(maxsize=None)
def _phi_lin(r) -> Scalar:
    return phi(lin(*r))


@lru_cache(maxsize=4096)
def _psi_pi(pi: PlanePartition, N: int) -> FactoredRationalU:
    f = Counter({(-N, -N): 1, (0, 0): -1})  # (u + sigma3*psi0)/u, sigma3*psi0 = -N*h3
    for b in pi.boxes():
        f.update(phi_factors(weight_coeffs(b)))
    return FactoredRationalU(ONE, f)


def psi_pi(pi: PlanePartition, params: ModelParams | int = 1) -> FactoredRationalU:
    N = params if isinstance(params, int) else params.N
    if pi.height > N:
        raise YangianError(f"{pi} exceeds {N} layers")
    return _psi_pi(PlanePartition(pi.heights), N)


@lru_cache(maxsize=None)
def _e_sq(pi: PlanePartition, b: Box, N: int) -> Scalar:
    return _psi_pi(pi, N).residue(weight_coeffs(b)) / sigma3


def e_sq_amp(pi: PlanePartition, b: Box, params: ModelParams | int = 1) -> Scalar:
    """E^2(pi -> pi+b) = Res_{u=h_b} psi_pi(u) / sigma3."""
    N = params if isinstance(params, int) else params.N
    pi = PlanePartition(pi.heights)
    if b not in addable_boxes(pi, N):
        raise YangianError(f"box {tuple(b)} is not addable to {pi} with {N} layers")
    return _e_sq(pi, Box(*b), N)


def transport(path_a: Iterable[Box], path_b: Iterable[Box]) -> Scalar:
    """Phi with state(path_a) = Phi * state(path_b).

    Every pair of boxes met in opposite orders contributes phi(h_a - h_b),
    where a is the box added later along ``path_a``.
    """
    pa, pb = tuple(map(Box._make, path_a)), tuple(map(Box._make, path_b))
    if set(pa) != set(pb) or len(pa) != len(pb):
        raise YangianError("paths build different diagrams")
    pos_b = {b: i for i, b in enumerate(pb)}
    out = ONE
    for i, a in enumerate(pa):
        for b in pa[:i]:
            if pos_b[a] < pos_b[b]:
                out = out * _phi_lin(_sub(weight_coeffs(a), weight_coeffs(b)))
    return out


@lru_cache(maxsize=None)
def _canon(pi: PlanePartition) -> tuple:
    return tuple(canonical_path(pi))


def path_sq_amp(path: Iterable[Box], N: int = 1) -> Scalar:
    """Product of E^2 along a growth path."""
    out = ONE
    pi = PlanePartition(())
    for b in path:
        out = out * _e_sq(pi, Box(*b), N)
        pi = pi.add(b)
    return out


@lru_cache(maxsize=None)
def _norm(pi: PlanePartition, N: int) -> Scalar:
    if pi.size == 0:
        return ONE
    path = _canon(pi)
    parent = PlanePartition.from_boxes(path[:-1])
    return _norm(parent, N) * _e_sq(parent, path[-1], N)


def norm(pi: PlanePartition, params: ModelParams | int = 1) -> Scalar:
    """<pi|pi> in the canonical normalization."""
    N = params if isinstance(params, int) else params.N
    if pi.height > N:
        raise YangianError(f"{pi} exceeds {N} layers")
    return _norm(PlanePartition(pi.heights), N)


def path_norms_consistent(pi: PlanePartition, params: ModelParams | int = 1) -> bool:
    """For every growth path, the product of E^2 along it equals the norm
    of the state normalized along that path, i.e. norm(pi) * Phi^2."""
    N = params if isinstance(params, int) else params.N
    target = norm(pi, N)
    canon = _canon(PlanePartition(pi.heights))
    return all(path_sq_amp(p, N) == target * transport(p, canon) ** 2 for p in all_paths(pi))


@lru_cache(maxsize=None)
def _up_factor(pi: PlanePartition, b: Box) -> Scalar:
    """Phi(canon(pi)+b, canon(pi+b))."""
    sigma = pi.add(b)
    return transport(_canon(pi) + (b,), _canon(sigma))


@lru_cache(maxsize=None)
def psi_eigen(pi: PlanePartition, N: int, order: int) -> tuple:
    """Eigenvalues psi_0..psi_order on |pi>."""
    ser = _psi_pi(pi, N).series(order + 1)
    return tuple(c / sigma3 for c in ser[1:])


def psi_eigenvalue(pi, j: int, params: ModelParams | int = 1) -> Scalar:
    N = params if isinstance(params, int) else params.N
    return psi_eigen(PlanePartition(pi.heights), N, max(j, 3))[j]


# -- mode matrices -------------------------------------------------------

@lru_cache(maxsize=None)
def diagram_space(N: int) -> GradedSpace:
    return GradedSpace(f"diagrams(N={N})", lambda d: enumerate_pp(d, N), lambda pi: pi.size)


def _hpow(b: Box, j: int) -> Scalar:
    return lin(*weight_coeffs(b)) ** j


def e_op(j: int, N: int) -> GradedOperator:
    def rule(pi):
        return {pi.add(b): _hpow(b, j) * _up_factor(pi, b) for b in addable_boxes(pi, N)}
    return GradedOperator(diagram_space(N), 1, rule, f"e{j}")


def f_op(j: int, N: int) -> GradedOperator:
    def rule(sigma):
        out = {}
        for b in removable_boxes(sigma):
            pi = sigma.remove(b)
            out[pi] = -_hpow(b, j) * _e_sq(pi, b, N) / _up_factor(pi, b)
        return out
    return GradedOperator(diagram_space(N), -1, rule, f"f{j}")


def psi_op(j: int, N: int) -> GradedOperator:
    return GradedOperator(diagram_space(N), 0, lambda pi: {pi: psi_eigen(pi, N, max(j, 3))[j]},
                          f"psi{j}")


_BUILDERS = {"e": e_op, "f": f_op, "psi": psi_op}


class ModeMatrix:
    """Per-degree sparse blocks of e_j, f_j or psi_j up to ``degree_cap``."""

    def __init__(self, label: str, j: int, degree_cap: int, params: ModelParams | int = 1):
        N = params if isinstance(params, int) else params.N
        if label not in _BUILDERS:
            raise ValueError(f"unknown mode label {label!r}")
        self.label, self.j, self.cap, self.N = label, j, degree_cap, N
        self.op = _BUILDERS[label](j, N)
        self.shift = self.op.shift
        # blocks indexed by the source degree; the target stays within the cap
        self.blocks = {d: self.op.block(d) for d in range(degree_cap + 1)
                       if 0 <= d + self.shift <= degree_cap}

    def entry(self, row, col) -> Scalar:
        return self.blocks.get(col.size, {}).get((row, col), ZERO)

    def triplets(self):
        for d in sorted(self.blocks):
            for (r, c), v in sorted(self.blocks[d].items(), key=lambda t: (str(t[0][1]), str(t[0][0]))):
                yield r, c, v


def mode_matrix(label: str, j: int, degree_cap: int, params: ModelParams | int = 1) -> ModeMatrix:
    return ModeMatrix(label, j, degree_cap, params)


# -- relation checker ----------------------------------------------------

class _Ops:
    def __init__(self, N):
        self.N = N
        self._c = {}

    def __call__(self, label, j):
        key = (label, j)
        if key not in self._c:
            self._c[key] = _BUILDERS[label](j, self.N)
        return self._c[key]


def _cubic(ops, x, y, j, k, sign):
    """The cubic exchange relation combination for generators x, y."""
    s2, s3 = sigma2, sigma3
    c = lambda a, b: a.commutator(b)
    terms = [
        (1, c(x(j + 3), y(k))), (-3, c(x(j + 2), y(k + 1))),
        (3, c(x(j + 1), y(k + 2))), (-1, c(x(j), y(k + 3))),
        (s2, c(x(j + 1), y(k))), (-s2, c(x(j), y(k + 1))),
        (-sign * s3, x(j).anticommutator(y(k))),
    ]
    return linear_combination(terms)


def _serre(gen, j1, j2, j3):
    # complete symmetrization: 6 orderings, repeated labels counted with multiplicity
    mult = Counter(permutations((j1, j2, j3)))
    terms = [(m, gen(a).commutator(gen(b).commutator(gen(c + 1))))
             for (a, b, c), m in sorted(mult.items())]
    return linear_combination(terms)


def _domain(cap, up):
    """Source degrees whose images under a word raising degree by at most
    ``up`` stay within the cap."""
    return [d for d in range(cap + 1) if d + up <= cap]


def verify_relations(jmax: int, kmax: int, degree_cap: int,
                     params: ModelParams | int = 1) -> list:
    """Check the defining relations as exact matrix identities.

    Returns a list of report entries {relation, indices, domain, status,
    witness?}.  A relation is only claimed on the degrees listed in
    ``domain``, chosen so no intermediate vector leaves the cap.
    """
    N = params if isinstance(params, int) else params.N
    ops = _Ops(N)
    e = lambda j: ops("e", j)
    f = lambda j: ops("f", j)
    psi = lambda j: ops("psi", j)
    report = []

    def record(rel, idx, op_or_pair, dom):
        if isinstance(op_or_pair, tuple):
            ok, wit = compare_on(op_or_pair[0], op_or_pair[1], dom)
        else:
            ok, wit = is_zero_on(op_or_pair, dom)
        entry = {"relation": rel, "indices": list(idx), "domain": dom,
                 "status": "pass" if ok else "fail"}
        if wit:
            entry["witness"] = {k: str(v) for k, v in wit.items()}
        report.append(entry)
        return ok

    js = range(jmax + 1)
    ks = range(kmax + 1)
    for j in js:
        for k in ks:
            record("psi_commute", (j, k), psi(j).commutator(psi(k)), _domain(degree_cap, 0))
            record("ee_cubic", (j, k), _cubic(ops, e, e, j, k, 1), _domain(degree_cap, 2))
            record("ff_cubic", (j, k), _cubic(ops, f, f, j, k, -1), _domain(degree_cap, 0))
            record("ef_psi", (j, k), (e(j).commutator(f(k)), psi(j + k)),
                   _domain(degree_cap, 1))
            record("psi_e_cubic", (j, k), _cubic(ops, psi, e, j, k, 1), _domain(degree_cap, 1))
            record("psi_f_cubic", (j, k), _cubic(ops, psi, f, j, k, -1), _domain(degree_cap, 0))
    for j in js:
        two_e = e(j).scale(2)
        two_f = f(j).scale(-2)
        record("psi0_e", (j,), psi(0).commutator(e(j)), _domain(degree_cap, 1))
        record("psi1_e", (j,), psi(1).commutator(e(j)), _domain(degree_cap, 1))
        record("psi2_e", (j,), (psi(2).commutator(e(j)), two_e), _domain(degree_cap, 1))
        record("psi0_f", (j,), psi(0).commutator(f(j)), _domain(degree_cap, 0))
        record("psi1_f", (j,), psi(1).commutator(f(j)), _domain(degree_cap, 0))
        record("psi2_f", (j,), (psi(2).commutator(f(j)), two_f), _domain(degree_cap, 0))
    for j1 in js:
        for j2 in range(j1, jmax + 1):
            for j3 in range(j2, jmax + 1):
                # Sym is symmetric in the three labels, so sorted triples suffice
                record("serre_e", (j1, j2, j3), _serre(e, j1, j2, j3), _domain(degree_cap, 3))
                record("serre_f", (j1, j2, j3), _serre(f, j1, j2, j3), _domain(degree_cap, 0))
    return report
