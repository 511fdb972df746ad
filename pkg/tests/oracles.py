"""Independent reference computations used by the tests."""

from fractions import Fraction
from functools import lru_cache
from math import factorial

from yk.polyalg import PowerSumPoly, make_mon


def partitions(n, maxpart=None):
    maxpart = n if maxpart is None else maxpart
    if n == 0:
        yield ()
        return
    for k in range(min(n, maxpart), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def z_lambda(mu):
    out = 1
    for k in set(mu):
        m = mu.count(k)
        out *= k ** m * factorial(m)
    return out


def p_mu(mu):
    counts = {}
    for k in mu:
        counts[k] = counts.get(k, 0) + 1
    return make_mon([(1, k, e) for k, e in counts.items()])


@lru_cache(maxsize=None)
def complete_h(n):
    """h_n = sum over mu of p_mu / z_mu."""
    if n < 0:
        return PowerSumPoly()
    return PowerSumPoly({p_mu(mu): Fraction(1, z_lambda(mu)) for mu in partitions(n)})


def _det(mat):
    n = len(mat)
    if n == 0:
        return PowerSumPoly.one()
    if n == 1:
        return mat[0][0]
    out = PowerSumPoly()
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * _det(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


def schur(lam):
    """Jacobi-Trudi: s_lambda = det h_{lambda_i - i + j}."""
    n = len(lam)
    return _det([[complete_h(lam[i] - i + j) for j in range(n)] for i in range(n)])


def partition_count(n):
    """Euler's pentagonal recurrence."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        k, s = 1, 0
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            s += sign * p[m - g1]
            if g2 <= m:
                s += sign * p[m - g2]
            k += 1
        p[m] = s
    return p[n]


def plane_partitions(size, max_height=None):
    """All plane partitions of ``size`` as height matrices, by filling a
    size x size grid cell by cell with monotone entries."""
    cap = size if max_height is None else min(size, max_height)
    n = max(size, 1)
    out = []
    grid = [[0] * n for _ in range(n)]

    def fill(idx, left):
        if idx == n * n:
            if left == 0:
                rows = tuple(tuple(v for v in r if v) for r in grid)
                out.append(tuple(r for r in rows if r))
            return
        i, j = divmod(idx, n)
        hi = min(cap, left)
        if i:
            hi = min(hi, grid[i - 1][j])
        if j:
            hi = min(hi, grid[i][j - 1])
        for v in range(hi + 1):
            grid[i][j] = v
            fill(idx + 1, left - v)
        grid[i][j] = 0

    fill(0, size)
    return sorted(set(out))


def box_set(heights):
    return {(x, y, z) for x, row in enumerate(heights) for y, h in enumerate(row) for z in range(h)}


def is_valid_box_set(boxes):
    for x, y, z in boxes:
        for b in ((x - 1, y, z), (x, y - 1, z), (x, y, z - 1)):
            if min(b) >= 0 and b not in boxes:
                return False
    return True


def brute_addable(heights, max_height=None):
    boxes = box_set(heights)
    n = len(boxes) + 1
    out = set()
    for x in range(n):
        for y in range(n):
            for z in range(n if max_height is None else max_height):
                b = (x, y, z)
                if b not in boxes and is_valid_box_set(boxes | {b}):
                    out.add(b)
    return out


def brute_removable(heights):
    boxes = box_set(heights)
    return {b for b in boxes if is_valid_box_set(boxes - {b})}
