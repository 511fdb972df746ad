"""Acceptance criteria, one test each, all exact.

Every check prints a ``CRITERION n: PASS|FAIL  detail`` line; the lines are
also repeated in the pytest terminal summary.  Run directly with
``python tests/test_acceptance.py`` for the lines alone.
"""

import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import reference_jacks as fx  # noqa: E402
from oracles import partitions, schur  # noqa: E402
from yk.diagrams import Partition2D, all_paths, enumerate_pp, parse_shape, transform  # noqa: E402
from yk.graded import compare_on, linear_combination, vadd  # noqa: E402
from yk.models import _kernel, cauchy_check, w_minus1_path_sum, z0_routes_agree, z_hierarchy  # noqa: E402,E501
from yk.polyalg import OperatorFactory, PowerSumPoly, apply, inner  # noqa: E402
from yk.scalar import ONE, ZERO, ModelParams, h1, h2, psi0, sigma3, w  # noqa: E402
from yk.symfun import (build, build_along, compare_display, eigenvalue, shapovalov,  # noqa: E402
                       transposed_path)
from yk.yangian import path_norms_consistent, path_sq_amp, phi, psi_eigenvalue  # noqa: E402
from yk.yangian import verify_relations  # noqa: E402

RESULTS = {}
P = PowerSumPoly
SCHUR_POINT = {"h1": 1, "h2": -1}


def report(n, ok, detail, t0):
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'}  {detail} ({time.perf_counter() - t0:.1f}s)"
    RESULTS[n] = line
    print(line)
    return ok


def shape2d(*rows):
    return Partition2D(rows).to_plane()


def _pairing(a, b, N):
    return inner(a, b, psi=psi0(1)) if N == 1 else shapovalov(a, b, N)


# -- criteria ----------------------------------------------------------------

def criterion_1():
    t0 = time.perf_counter()
    p1, p2, p3 = P.p(1), P.p(2), P.p(3)
    num21 = 2 * p3 - 2 * (h1 + h2) * p1 * p2 + 2 * h1 * h2 * p1 ** 3
    refs = {
        "(1)": (build(shape2d(1)).poly, p1),
        "(2)": (build(shape2d(2)).poly, p2 / (h1 - h2) - h2 * p1 ** 2 / (h1 - h2)),
        "(1,1)": (build(shape2d(1, 1)).poly, p2 / (h2 - h1) - h1 * p1 ** 2 / (h2 - h1)),
        "(3)": (build(shape2d(3)).poly,
                (2 * p3 - 3 * h2 * p1 * p2 + h2 ** 2 * p1 ** 3) / ((2 * h1 - h2) * (h1 - h2))),
        "(2,1)h1h2": (build_along(((0, 0, 0), (0, 1, 0), (1, 0, 0))).poly,
                      num21 / ((h2 - 2 * h1) * (h1 - h2))),
        "(2,1)h2h1": (build_along(((0, 0, 0), (1, 0, 0), (0, 1, 0))).poly,
                      num21 / ((h1 - 2 * h2) * (h2 - h1))),
        "(1,1,1)": (build(shape2d(1, 1, 1)).poly,
                    (2 * p3 - 3 * h1 * p1 * p2 + h1 ** 2 * p1 ** 3) / ((2 * h2 - h1) * (h2 - h1))),
    }
    bad = [k for k, (got, want) in refs.items() if got != want]
    row, col = refs["(2,1)h1h2"][0], refs["(2,1)h2h1"][0]
    stated = row == col * phi(h1 - h2)
    reciprocal = row == col * phi(h2 - h1)
    detail = (f"reference polynomials {len(refs) - len(bad)}/{len(refs)} match{' ' + str(bad) if bad else ''}; "
              f"Y_h1h2 = phi(h1-h2) Y_h2h1: {stated}; "
              f"Y_h1h2 = phi(h2-h1) Y_h2h1 (implied by both references): {reciprocal}")
    return report(1, not bad and stated, detail, t0)


def criterion_2():
    t0 = time.perf_counter()
    y2 = build(shape2d(2)).poly
    ok_y2 = inner(y2, y2, psi=psi0(1)) == 2 * psi0(1) / (h1 * (h1 - h2))
    count = 0
    bad = []
    for N in (1, 2):
        for d in range(6):
            for pi in enumerate_pp(d, N):
                count += 1
                if not path_norms_consistent(pi, N):
                    bad.append((N, str(pi)))
                # the function normalized along each path has norm = prod E^2 along it
                if d <= 4:
                    for path in all_paths(pi):
                        f = build_along(path, N).poly
                        if _pairing(f, f, N) != path_sq_amp(path, N):
                            bad.append((N, str(pi), path))
    detail = f"<Y2,Y2> {ok_y2}; {count} shapes, all paths, defects {len(bad)}"
    return report(2, ok_y2 and not bad, detail, t0)


def criterion_3():
    t0 = time.perf_counter()
    lines, ok = [], True
    for N in (1, 2, 3):
        for text, (builder, need) in fx.DEGREE_1_2.items():
            if N >= need and build(parse_shape(text), N).poly != builder(N):
                ok = False
                lines.append(f"deg<=2 {text} N={N} mismatch")
        for text, (builder, need) in fx.DEGREE_3.items():
            if N < need:
                continue
            got = build(parse_shape(text), N)
            rep = compare_display(got, builder(N), N)
            if rep["match"]:
                continue
            explained = (rep["candidate_eigen"] and rep["candidate_orthogonal"]
                         and rep["candidate_pieri"]
                         and not (rep["display_eigen"] and rep["display_orthogonal"]))
            ok = ok and explained
            lines.append(f"{text} N={N} mismatch-report={'ok' if explained else 'UNEXPLAINED'}")
    return report(3, ok, "; ".join(lines) or "all match", t0)


def criterion_4():
    t0 = time.perf_counter()
    total, failed = 0, []
    for N in (1, 2):
        rep = verify_relations(2, 2, 4, N)
        total += len(rep)
        failed += [(N, r["relation"], r["indices"]) for r in rep if r["status"] != "pass"]
    return report(4, not failed, f"{total - len(failed)}/{total} relation instances exact", t0)


def criterion_5():
    t0 = time.perf_counter()
    results = []
    for N, dim in ((1, "2d"), (1, "3d"), (2, "3d")):
        F = OperatorFactory(N)
        g = lambda n: F[f"{n}_{dim}"]
        s = psi0(N) * sigma3
        pairs = [
            (g("W0"), linear_combination([(ONE / 6, g("psi3")), ((w - s / 3) / 2, g("psi2"))])),
            (g("E1"), linear_combination([(1, g("e1")), (w, g("e0"))])),
            (g("Eminus1"), linear_combination([(-1, g("f1")), (-w, g("f0"))])),
        ]
        pairs.append((g("psi3").commutator(g("e0")),
                      linear_combination([(6, g("e1")), (2 * s, g("e0"))])))
        for lhs, rhs in pairs:
            dom = [d for d in range(6) if 0 <= d + lhs.shift <= 5]
            results.append(compare_on(lhs, rhs, dom)[0])
    F = OperatorFactory(1)
    results.append(compare_on(F["W0_3d"], F["W0_2d"], range(6))[0])
    return report(5, all(results), f"{sum(results)}/{len(results)} identities exact on degrees <= 5", t0)


def criterion_6():
    t0 = time.perf_counter()
    bad, count = [], 0
    for N, cap in ((1, 6), (2, 4)):
        F = OperatorFactory(N)
        dim = "2d" if N == 1 else "3d"
        W0, ps2, ps3 = F[f"W0_{dim}"], F[f"psi2_{dim}"], F[f"psi3_{dim}"]
        for d in range(cap + 1):
            for pi in enumerate_pp(d, N):
                count += 1
                J = build(pi, N).poly
                want3 = sum((6 * (b.y * h1 + b.x * h2 - b.z * (h1 + h2)) + 2 * psi0(N) * sigma3
                             for b in pi.boxes()), ZERO)
                checks = (apply(W0, J) == eigenvalue(pi) * J,
                          apply(ps2, J) == 2 * d * J,
                          apply(ps3, J) == want3 * J,
                          psi_eigenvalue(pi, 2, N) == 2 * d,
                          psi_eigenvalue(pi, 3, N) == want3)
                if not all(checks):
                    bad.append((N, str(pi), checks))
    return report(6, not bad, f"{count} shapes, defects {len(bad)}", t0)


def criterion_7():
    t0 = time.perf_counter()
    a, b = shape2d(4, 1, 1), shape2d(3, 3)
    W0 = OperatorFactory(1)["W0_2d"]
    fa, fb = build(a).poly, build(b).poly
    same_c = eigenvalue(a) == eigenvalue(b)
    orth = inner(fa, fb, psi=psi0(1)) == ZERO
    eig = apply(W0, fa) == eigenvalue(a) * fa and apply(W0, fb) == eigenvalue(b) * fb
    return report(7, same_c and orth and eig, f"equal c {same_c}, orthogonal {orth}, eigen {eig}", t0)


def _schur_kernel(D):
    out = {}
    for d in range(D + 1):
        for lam in partitions(d):
            s = schur(lam)
            for x, cx in s.terms.items():
                for y, cy in s.terms.items():
                    vadd(out, {(x, y): cx * cy})
    return {k: v for k, v in out.items() if v}


def criterion_8():
    t0 = time.perf_counter()
    bad = [lam for d in range(7) for lam in partitions(d)
           if build(shape2d(*lam)).poly.subs(SCHUR_POINT) != schur(lam)]
    rep = cauchy_check(4, ModelParams(N=1, specialization=SCHUR_POINT), "2d")
    kern = {k: v.subs(SCHUR_POINT) for k, v in _kernel(4, 1, psi0(1)).items()}
    classical = kern == _schur_kernel(4)
    ok = not bad and rep["status"] == "pass" and classical
    return report(8, ok, f"Schur mismatches {len(bad)}; Cauchy {rep['status']}; "
                         f"classical kernel {classical}", t0)


def criterion_9():
    t0 = time.perf_counter()
    routes = all(z0_routes_agree(D, 1, "2d")[0] for D in range(5))
    routes3 = all(z0_routes_agree(D, 2, "3d")[0] for D in range(4))
    trunc = True
    for N, dim in ((1, "2d"), (2, "3d")):
        F = OperatorFactory(N)
        for n in (1, 2, 3):
            W = F[f"Wminus{n}_{dim}"]
            cap = 6 if N == 1 else 4
            term, acc = P.one(N), P.one(N)
            for k in range(1, cap // n + 1):
                term = apply(W, term) / (n * k)
                acc = acc + term
            trunc = trunc and z_hierarchy(n, cap, N, dim) == acc
    pieri = all(z_hierarchy(1, d, N, "2d" if N == 1 else "3d").homogeneous(d)
                == w_minus1_path_sum(d, N) for N in (1, 2) for d in range(5))
    ok = routes and routes3 and trunc and pieri
    return report(9, ok, f"Z0 routes 2d {routes}, 3d {routes3}; truncations {trunc}; "
                         f"W_-1 path sums {pieri}", t0)


def criterion_10():
    t0 = time.perf_counter()
    count, bad = 0, []
    for N, cap in ((1, 6), (2, 4), (3, 3)):
        for d in range(cap + 1):
            for pi in enumerate_pp(d, N):
                count += 1
                s = build(pi, N)
                image = build_along(transposed_path(s.path), N)
                if not (s.poly.swap_h() == image.poly and image.shape == transform(pi, "xy", N)):
                    bad.append((N, str(pi)))
    return report(10, not bad, f"{count} shapes, defects {len(bad)}", t0)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("fn", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_criterion(fn):
    assert fn()


if __name__ == "__main__":
    results = [fn() for fn in CRITERIA]
    sys.exit(0 if all(results) else 1)
