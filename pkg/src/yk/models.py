"""Partition functions built from the eigenfunctions of W_0.

The time variable t is never a ring element.  A term of a truncated
partition function is ``prefactor * exp(t * exponent) * poly`` with all
three parts t-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .diagrams import PlanePartition, all_paths, enumerate_pp, weight_coeffs
from .graded import exp_apply, pmap, vadd, vscale
from .polyalg import OperatorFactory, PowerSumPoly, inner, make_mon, mon_degree, monomials
from .scalar import ONE, ZERO, ModelParams, Scalar, as_scalar, lin
from .symfun import build, eigenvalue
from .yangian import _canon, norm, transport


def _mode(mode: str, N: int) -> str:
    if mode not in ("2d", "3d"):
        raise ValueError(f"unknown model {mode!r}")
    if mode == "2d" and N != 1:
        raise ValueError("the 2d model has a single alphabet")
    return mode


def _params(params) -> ModelParams:
    if params is None:
        return ModelParams()
    if isinstance(params, int):
        return ModelParams(N=params)
    return params


@dataclass(frozen=True)
class SpectrumEntry:
    shape: PlanePartition
    c: Scalar
    norm: Scalar


def spectrum(degree_cap: int, params: ModelParams | int | None = None) -> list:
    params = _params(params)
    out = []
    for d in range(degree_cap + 1):
        for pi in enumerate_pp(d, params.N):
            out.append(SpectrumEntry(pi, params.specialize(eigenvalue(pi, params.w)),
                                     params.specialize(norm(pi, params.N))))
    return out


# -- Z_0 ------------------------------------------------------------------

@dataclass(frozen=True)
class ZTerm:
    shape: PlanePartition
    prefactor: Scalar
    exponent: Scalar
    poly: PowerSumPoly


@dataclass
class TruncatedZ:
    degree: int
    M: Scalar
    mode: str
    terms: list = field(default_factory=list)

    def grouped(self) -> dict:
        """{exponent: polynomial}; shapes sharing c are merged."""
        out = {}
        for t in self.terms:
            acc = out.get(t.exponent)
            p = t.poly * t.prefactor
            out[t.exponent] = p if acc is None else acc + p
        return {k: v for k, v in out.items() if v}

    def evaluate(self, t, specialization=None) -> list:
        """Numeric value of each term's scalar factor at rational t (floats;
        the exponent is exact until the final exp)."""
        t = Fraction(t)
        rows = []
        for term in self.terms:
            pre = term.prefactor.subs(specialization) if specialization else term.prefactor
            ex = term.exponent.subs(specialization) if specialization else term.exponent
            pre_q, ex_q = pre.to_fraction(), ex.to_fraction()
            rows.append((term.shape, pre_q, ex_q * t, float(pre_q) * math.exp(ex_q * t)))
        return rows


def dual_evaluation(poly: PowerSumPoly, x) -> Scalar:
    """poly at p_{j,1} = x/N for every j and all other variables 0, so the
    sum of the p_{j,1} takes the value x."""
    N = poly.N
    x = as_scalar(x)
    return poly.evaluate_vars({(j, 1): x / N for j in range(1, N + 1)})


def z0_expand(D: int, params: ModelParams | int | None = None, mode: str = "2d",
              M=None) -> TruncatedZ:
    """Spectral sum: sum over shapes of J{x=e^{-tM}} e^{t c} J / norm.

    ``M`` defaults to N.  The exponent stored is c - |pi| M.
    """
    params = _params(params)
    N = params.N
    _mode(mode, N)
    M = as_scalar(N if M is None else M)

    def term(pi):
        J = build(pi, N).poly
        pre = dual_evaluation(J, ONE) / norm(pi, N)
        ex = eigenvalue(pi, params.w) - M * pi.size
        return ZTerm(pi, params.specialize(pre), params.specialize(ex), J.subs(params.specialization)
                     if params.specialization else J)

    shapes = [pi for d in range(D + 1) for pi in enumerate_pp(d, N)]
    return TruncatedZ(D, M, mode, pmap(term, shapes))


def z0_operator_route(D: int, params: ModelParams | int | None = None, mode: str = "2d",
                      M=None) -> dict:
    """exp(t W_0) exp(P_11 / (psi0 e^{tM})) truncated at degree D, grouped as
    {exponent: polynomial}.

    Each degree block is split into W_0 eigenspaces by Lagrange projectors
    in W_0 itself; no eigenfunction or dual evaluation is used.
    """
    params = _params(params)
    N = params.N
    dim = _mode(mode, N)
    M = as_scalar(N if M is None else M)
    W0 = OperatorFactory(ModelParams(N=N, w=params.w)).get(f"W0_{dim}")
    P11 = PowerSumPoly({make_mon([(j, 1)]): ONE for j in range(1, N + 1)}, N)
    out = {}
    power = PowerSumPoly.one(N)
    for d in range(D + 1):
        if d:
            power = power * P11 / (params.psi0 * d)
        vec = power.terms
        cs = sorted({eigenvalue(pi, params.w) for pi in enumerate_pp(d, N)}, key=str)
        rest = dict(vec)
        for c in cs:
            proj = dict(vec)
            for c2 in cs:
                if c2 != c:
                    proj = vscale(vadd(W0.apply(proj), proj, -c2), ONE / (c - c2))
            vadd(rest, proj, -ONE)
            ex = params.specialize(c - M * d)
            p = PowerSumPoly(proj, N)
            if params.specialization:
                p = p.subs(params.specialization)
            out[ex] = out[ex] + p if ex in out else p
        if rest:
            raise ArithmeticError(f"degree {d} block is not spanned by the known eigenvalues")
    return {k: v for k, v in out.items() if v}


def z0_routes_agree(D: int, params=None, mode="2d", M=None) -> tuple:
    """(ok, spectral grouped, operator grouped)."""
    a = z0_expand(D, params, mode, M).grouped()
    b = z0_operator_route(D, params, mode, M)
    return a == b, a, b


# -- hierarchies --------------------------------------------------------

def z_hierarchy(n: int, D: int, params: ModelParams | int | None = None,
                mode: str = "2d") -> PowerSumPoly:
    """exp(W_{-n}/n) . 1 up to degree D."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if D < 0:
        raise ValueError("degree cap must be >= 0")
    params = _params(params)
    dim = _mode(mode, params.N)
    op = OperatorFactory(params).get(f"Wminus{n}_{dim}")
    vec = exp_apply(op, {(): ONE}, D, mon_degree, Fraction(1, n))
    poly = PowerSumPoly(vec, params.N)
    return poly.subs(params.specialization) if params.specialization else poly


def w_minus1_path_sum(d: int, params: ModelParams | int | None = None) -> PowerSumPoly:
    """Degree-d part of exp(W_{-1}) . 1 from box weights: each growth path
    to pi contributes the product of (h_b + w)^2 and the transport to the
    canonical path, divided by d!."""
    params = _params(params)
    N = params.N
    out = PowerSumPoly(N=N)
    for pi in enumerate_pp(d, N):
        acc = ZERO
        for path in all_paths(pi):
            wt = ONE
            for b in path:
                wt = wt * (lin(*weight_coeffs(b)) + params.w) ** 2
            acc = acc + wt * transport(path, _canon(pi))
        out = out + build(pi, N).poly * (acc / factorial(d))
    return out.subs(params.specialization) if params.specialization else out


# -- Cauchy kernels -----------------------------------------------------

def _z_factor(m) -> int:
    z = 1
    for _, n, e in m:
        z *= n ** e * factorial(e)
    return z


def _kernel(D: int, N: int, psi: Scalar) -> dict:
    """exp(sum p_{j,n} pb_{j,n} / (n psi)) as {(mon, mon): coeff}."""
    out = {}
    for d in range(D + 1):
        for m in monomials(d, N):
            ell = sum(e for _, _, e in m)
            out[(m, m)] = ONE / (_z_factor(m) * psi ** ell)
    return out


def _spectral_kernel(D: int, N: int) -> dict:
    out = {}
    for d in range(D + 1):
        for pi in enumerate_pp(d, N):
            J = build(pi, N).poly
            inv = ONE / norm(pi, N)
            for a, ca in J.terms.items():
                for b, cb in J.terms.items():
                    vadd(out, {(a, b): ca * cb * inv})
    return out


def cauchy_check(D: int, params: ModelParams | int | None = None, mode: str = "2d") -> dict:
    """Compare the exponential kernel with sum J{p} J{pb} / norm.

    In 2d both sides are expanded fully.  In 3d the kernel is compared on
    the span of the J's: it reproduces that span exactly when the Gram
    matrix of the J's for the diagonal pairing is diag(norm), so the report
    lists where that fails alongside the full-space comparison.
    """
    params = _params(params)
    N = params.N
    _mode(mode, N)
    psi = params.psi0
    lhs = _kernel(D, N, psi)
    rhs = _spectral_kernel(D, N)
    if params.specialization:
        lhs = {k: v.subs(params.specialization) for k, v in lhs.items()}
        rhs = {k: v.subs(params.specialization) for k, v in rhs.items()}
        lhs = {k: v for k, v in lhs.items() if v}
        rhs = {k: v for k, v in rhs.items() if v}
    diff = vadd(dict(lhs), rhs, -ONE)
    report = {"mode": mode, "N": N, "degree": D, "full_space_equal": not diff,
              "coefficients": len(set(lhs) | set(rhs)), "mismatches": len(diff),
              "pairs_compared": sum(len(monomials(d, N)) ** 2 for d in range(1, D + 1))}
    if mode == "3d":
        gram = []
        for d in range(D + 1):
            fs = [build(pi, N) for pi in enumerate_pp(d, N)]
            for a in fs:
                for b in fs:
                    v = inner(a.poly, b.poly, psi=psi)
                    want = norm(a.shape, N) if a.shape == b.shape else ZERO
                    if v != want:
                        gram.append({"row": str(a.shape), "col": str(b.shape),
                                     "pairing": str(v), "expected": str(want)})
        report["gram_defects"] = gram
        report["span_equal"] = not gram
        report["status"] = "pass" if not gram else "discrepancy"
    else:
        report["status"] = "pass" if not diff else "fail"
    return report


__all__ = [
    "SpectrumEntry", "spectrum", "ZTerm", "TruncatedZ", "dual_evaluation", "z0_expand",
    "z0_operator_route", "z0_routes_agree", "z_hierarchy", "w_minus1_path_sum", "cauchy_check",
]
