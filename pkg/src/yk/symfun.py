"""Y_lambda (one alphabet) and 3-Jack polynomials (N alphabets).

Every function is normalized along the canonical growth path of its shape.
Construction is by the Pieri rule: multiply the function of the canonical
parent by p_1 (the sum of the p_{j,1} for N alphabets), which produces one
term per addable box, then keep the wanted term with a projector built from
W_0 on the other children.  Since the last box of the canonical path is the
one added, no transport factor is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .diagrams import (Box, GrowthPath, PlanePartition, addable_boxes, canonical_parent,
                       enumerate_pp, transform, weight_coeffs)
from .graded import vadd, vscale
from .polyalg import OperatorFactory, PowerSumPoly, apply, inner, make_mon
from .scalar import ONE, ZERO, ModelParams, Scalar, as_scalar, h1, h2, h3, lin, psi0
from .yangian import _canon, _up_factor, norm, transport


class SymFunError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SymFun:
    shape: PlanePartition
    poly: PowerSumPoly
    path: tuple

    @property
    def N(self):
        return self.poly.N

    @property
    def degree(self):
        return self.shape.size


def content(pi: PlanePartition) -> Scalar:
    """Sum of the box weights."""
    a = b = 0
    for box in pi.boxes():
        x, y = weight_coeffs(box)
        a += x
        b += y
    return lin(a, b)


def eigenvalue(pi: PlanePartition, w=None) -> Scalar:
    """c_pi = sum (h_box + w)."""
    from .scalar import w as w_sym
    w = w_sym if w is None else as_scalar(w)
    return content(pi) + w * pi.size


@lru_cache(maxsize=None)
def _factory(N: int) -> OperatorFactory:
    return OperatorFactory(ModelParams(N=N, w=0))


def _dim(N):
    return "2d" if N == 1 else "3d"


@lru_cache(maxsize=None)
def _build(pi: PlanePartition, N: int) -> dict:
    if pi.size == 0:
        return {(): ONE}
    F = _factory(N)
    parent, box = canonical_parent(pi)
    vec = F.get(f"e0_{_dim(N)}").apply(_build(parent, N))
    W0 = F.get(f"W0_{_dim(N)}")
    c = content(pi)
    for other in addable_boxes(parent, N):
        if other == box:
            continue
        c2 = content(parent.add(other))
        if c2 == c:
            raise SymFunError(f"children {pi} and {parent.add(other)} share the eigenvalue {c}")
        vec = vadd(W0.apply(vec), vec, -c2)
        vec = vscale(vec, ONE / (c - c2))
    resid = vadd(W0.apply(vec), vec, -c)
    if resid:
        raise SymFunError(f"projection for {pi} is not an eigenvector")
    return vec


def _shape(shape, N):
    if isinstance(shape, str):
        from .diagrams import parse_shape
        shape = parse_shape(shape)
    pi = PlanePartition(shape.heights) if isinstance(shape, PlanePartition) else shape.to_plane()
    if pi.height > N:
        raise SymFunError(f"{pi} needs more than {N} layers")
    return pi


def build(shape, params: ModelParams | int = 1) -> SymFun:
    """J_pi (Y_lambda for N = 1) in the canonical normalization."""
    N = params if isinstance(params, int) else params.N
    pi = _shape(shape, N)
    poly = PowerSumPoly(_build(pi, N), N)
    if not isinstance(params, int) and params.specialization:
        poly = poly.subs(params.specialization)
    return SymFun(pi, poly, _canon(pi))


def build_along(path, params: ModelParams | int = 1) -> SymFun:
    """The function normalized along an arbitrary growth path."""
    N = params if isinstance(params, int) else params.N
    path = GrowthPath(path)
    pi = path.shape()
    base = build(pi, N)
    return SymFun(pi, base.poly * transport(path, base.path), tuple(path))


def all_of_degree(d: int, params: ModelParams | int = 1) -> list:
    N = params if isinstance(params, int) else params.N
    return [build(pi, N) for pi in enumerate_pp(d, N)]


def y_row(n: int, params: ModelParams | None = None) -> SymFun:
    """Y_(n) from its generating function (one alphabet)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    alpha = h2 / h1
    # exp(sum a_k z^k): n c_n = sum k a_k c_{n-k}
    a = [None] + [PowerSumPoly.p(k) * ((-1) ** (k - 1) * alpha / (h1 ** (k - 1) * k))
                  for k in range(1, n + 1)]
    c = [PowerSumPoly.one()]
    for m in range(1, n + 1):
        acc = PowerSumPoly()
        for k in range(1, m + 1):
            acc = acc + a[k] * c[m - k] * k
        c.append(acc / m)
    binom = ONE
    for i in range(n):
        binom = binom * (alpha - i)
    binom = binom / factorial(n)
    poly = c[n] / binom
    if params is not None and params.specialization:
        poly = poly.subs(params.specialization)
    pi = PlanePartition(((1,) * n,))
    return SymFun(pi, poly, _canon(pi))


# -- checks --------------------------------------------------------------

def transposed_path(path) -> tuple:
    return tuple(Box(b.y, b.x, b.z) for b in path)


def verify_symfun(s: SymFun, params: ModelParams | int | None = None) -> dict:
    """Eigen-equation, norm, E_1 action, h1 <-> h2 symmetry.

    The norm is read from the contravariant form (see ``shapovalov``); for
    one alphabet it is also compared with the diagonal power-sum pairing.
    """
    N = s.N
    if params is None or isinstance(params, int):
        params = ModelParams(N=N)
    F = OperatorFactory(params)
    dim = _dim(N)
    pi = s.shape
    report = {"shape": str(pi), "N": N}
    c = eigenvalue(pi, params.w)
    lhs = apply(F.get(f"W0_{dim}"), s.poly)
    report["eigen"] = lhs == s.poly * c
    target = norm(pi, N) * transport(s.path, _canon(pi)) ** 2
    ok = shapovalov(s.poly, s.poly, N) == target
    if N == 1:
        ok = ok and inner(s.poly, s.poly, psi=psi0(1)) == target
    report["norm"] = ok
    # E_1 J = sum (h_b + w) * Phi * J_{pi+b}
    expect = PowerSumPoly(N=N)
    for b in addable_boxes(pi, N):
        sig = pi.add(b)
        expect = expect + build(sig, N).poly * ((lin(*weight_coeffs(b)) + params.w) * _up_factor(pi, b))
    report["E1_action"] = apply(F.get(f"E1_{dim}"), s.poly) == expect * transport(s.path, _canon(pi))
    tpi = transform(pi, "xy", N)
    along = build_along(transposed_path(s.path), N)
    report["swap_symmetry"] = s.poly.swap_h() == along.poly and along.shape == tpi
    report["status"] = "pass" if all(report[k] for k in ("eigen", "norm", "E1_action",
                                                            "swap_symmetry")) else "fail"
    return report


# -- J basis and the contravariant form ----------------------------------

def expand(poly: PowerSumPoly, d: int, N: int) -> dict:
    """Coefficients of a degree-d polynomial in the J basis of degree d.
    Raises SymFunError if it is not in their span."""
    shapes = enumerate_pp(d, N)
    if not shapes:
        if poly.homogeneous(d):
            raise SymFunError("nonzero polynomial of degree with no shapes")
        return {}
    basis = [PowerSumPoly(_build(pi, N), N) for pi in shapes]
    mons = sorted(set().union(*(b.terms for b in basis)) | set(poly.homogeneous(d).terms))
    rows = [[b.terms.get(m, ZERO) for b in basis] for m in mons]
    rhs = [poly.terms.get(m, ZERO) for m in mons]
    sol = _solve(rows, rhs)
    return {pi: c for pi, c in zip(shapes, sol) if c}


def shapovalov(a: PowerSumPoly, b: PowerSumPoly, N: int) -> Scalar:
    """Contravariant form on the span of the J's: <1,1> = 1 and e_j is
    adjoint to -f_j.  Its J-basis Gram matrix is diag(norm); the fact that
    the polynomial operators respect this is checked by
    ``contravariance_defects``."""
    out = ZERO
    for d in sorted(a.degrees() & b.degrees()):
        ea = expand(a.homogeneous(d), d, N)
        eb = expand(b.homogeneous(d), d, N)
        for pi, c in ea.items():
            if pi in eb:
                out = out + c * eb[pi] * norm(pi, N)
    return out


_MODE_OPS = (("e", 0), ("e", 1), ("f", 0), ("f", 1), ("psi", 2), ("psi", 3))


def _poly_op(label, j, N):
    return _factory(N).get(f"{label}{j}_{_dim(N)}")


def intertwining_defects(d: int, N: int) -> list:
    """Polynomial e_0, e_1, f_0, f_1, psi_2, psi_3 on J_pi (|pi| = d),
    expanded in J's, against the diagram-basis matrices."""
    from .yangian import e_op, f_op, psi_op
    diag = {"e": e_op, "f": f_op, "psi": psi_op}
    bad = []
    for label, j in _MODE_OPS:
        P = _poly_op(label, j, N)
        D = diag[label](j, N)
        if d + D.shift < 0:
            continue
        for pi in enumerate_pp(d, N):
            got = expand(PowerSumPoly(P.apply(_build(pi, N)), N), d + D.shift, N)
            want = D.column(pi)
            if got != want:
                bad.append((f"{label}{j}", str(pi)))
    return bad


def contravariance_defects(d: int, N: int) -> list:
    """Checks norm(sigma) E_j[sigma, pi] = -norm(pi) F_j[pi, sigma] for
    j = 0, 1 with both matrices read off the polynomial operators, for
    |pi| = d - 1 and |sigma| = d.  Together with <1,1> = 1 this fixes the
    contravariant form and shows the J's are orthogonal for it with the
    stated norms."""
    bad = []
    for j in (0, 1):
        E = _poly_op("e", j, N)
        F = _poly_op("f", j, N)
        Ecols = {pi: expand(PowerSumPoly(E.apply(_build(pi, N)), N), d, N)
                 for pi in enumerate_pp(d - 1, N)}
        for sig in enumerate_pp(d, N):
            Fcol = expand(PowerSumPoly(F.apply(_build(sig, N)), N), d - 1, N)
            for pi, col in Ecols.items():
                lhs = norm(sig, N) * col.get(sig, ZERO)
                rhs = -norm(pi, N) * Fcol.get(pi, ZERO)
                if lhs != rhs:
                    bad.append((j, str(pi), str(sig)))
    return bad


def orthogonality_defects(d: int, N: int, psi=None) -> list:
    """Pairs of distinct degree-d shapes whose functions are not orthogonal
    under the diagonal power-sum pairing with per-mode constant ``psi``
    (default psi0 at N = 1)."""
    psi = psi0(1) if psi is None else psi
    fs = all_of_degree(d, N)
    bad = []
    for i, a in enumerate(fs):
        for b in fs[i + 1:]:
            v = inner(a.poly, b.poly, psi=psi)
            if v:
                bad.append((str(a.shape), str(b.shape), v))
    return bad


def pieri_check(pi: PlanePartition, N: int) -> bool:
    """p_1 J_pi equals the transport-weighted sum over addable boxes."""
    F = _factory(N)
    lhs = F.get(f"e0_{_dim(N)}").apply(_build(pi, N))
    rhs = {}
    for b in addable_boxes(pi, N):
        vadd(rhs, _build(pi.add(b), N), _up_factor(pi, b))
    return lhs == rhs


# -- P variables ---------------------------------------------------------

def p_vars(N: int) -> dict:
    """P_{1,1}, P_{2,1}, P_{2,2} as polynomials in the p_{j,n}."""
    s12 = h1 * h2
    P11 = PowerSumPoly({make_mon([(j, 1)]): ONE for j in range(1, N + 1)}, N)
    P21 = PowerSumPoly({make_mon([(j, 2)]): ONE for j in range(1, N + 1)}, N)
    sq = PowerSumPoly({make_mon([(j, 1, 2)]): ONE for j in range(1, N + 1)}, N)
    lin2 = PowerSumPoly({make_mon([(j, 2)]): -(N - 2 * j + 1) * h3 for j in range(1, N + 1)}, N)
    P22 = sq * (-s12) + P11 * P11 * (s12 / N) + lin2
    return {"P11": P11, "P21": P21, "P22": P22}


def _solve(rows, rhs):
    """Exact Gaussian elimination; rows are lists of Scalars.  Returns the
    unique solution or raises when the system is singular or inconsistent."""
    n = len(rows[0])
    A = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_rows = []
    r = 0
    for col in range(n):
        p = next((i for i in range(r, len(A)) if A[i][col]), None)
        if p is None:
            raise SymFunError("singular system")
        A[r], A[p] = A[p], A[r]
        inv = ONE / A[r][col]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col]:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        piv_rows.append(r)
        r += 1
    if any(A[i][n] for i in range(r, len(A))):
        raise SymFunError("inconsistent system")
    return [A[i][n] for i in piv_rows]


def to_p_vars(s: SymFun) -> dict:
    """Coefficients of s in P11^2, P21, P22 (degree 2) or P11 (degree 1)."""
    N = s.N
    P = p_vars(N)
    if s.degree == 0:
        return {"1": s.poly.terms.get((), ZERO)}
    if s.degree == 1:
        basis = {"P11": P["P11"]}
    elif s.degree == 2:
        if N == 1:
            raise SymFunError("P_{2,1} and P_{2,2} are proportional for one alphabet; "
                              "the degree-2 rewriting is not unique")
        basis = {"P11^2": P["P11"] * P["P11"], "P21": P["P21"], "P22": P["P22"]}
    else:
        raise SymFunError("P-variable rewriting is only defined up to degree 2")
    mons = sorted(set().union(*(b.terms for b in basis.values())) | set(s.poly.terms))
    rows = [[b.terms.get(m, ZERO) for b in basis.values()] for m in mons]
    rhs = [s.poly.terms.get(m, ZERO) for m in mons]
    sol = _solve(rows, rhs)
    return dict(zip(basis, sol))


def p_form_display(coeffs: dict) -> str:
    return " + ".join(f"({c})*{k}" for k, c in coeffs.items() if c) or "0"


def compare_display(computed: SymFun, display: PowerSumPoly, N: int) -> dict:
    """Diagnose a reference polynomial against the computed function.

    Orthogonality uses the diagonal pairing for one alphabet and the
    contravariant form otherwise; a polynomial outside the span of the
    J's counts as not orthogonal.
    """
    W0 = _factory(N).get(f"W0_{_dim(N)}")
    c = content(computed.shape)
    d = computed.degree
    out = {"shape": str(computed.shape), "N": N, "match": display == computed.poly}
    out["display_eigen"] = not vadd(W0.apply(display.terms), display.terms, -c)
    out["candidate_eigen"] = not vadd(W0.apply(computed.poly.terms), computed.poly.terms, -c)
    others = [f for f in all_of_degree(d, N) if f.shape != computed.shape]

    def orthogonal(p):
        if N == 1:
            return all(not inner(p, f.poly, psi=psi0(1)) for f in others)
        try:
            return all(not shapovalov(p, f.poly, N) for f in others)
        except SymFunError:
            return False

    out["display_orthogonal"] = orthogonal(display)
    out["candidate_orthogonal"] = orthogonal(computed.poly) and (
        N == 1 or not contravariance_defects(d, N))
    out["candidate_pieri"] = pieri_check(computed.shape, N) if d < 6 else None
    out["difference"] = str(display - computed.poly)
    if display.terms and not out["match"]:
        m = next((m for m in computed.poly.terms if m in display.terms), None)
        if m is not None:
            r = display.terms[m] / computed.poly.terms[m]
            out["proportional"] = display == computed.poly * r
            out["ratio"] = str(r)
    return out
