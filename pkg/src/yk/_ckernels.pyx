# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse integer polynomial kernels (same API as _pykernels)."""

from math import gcd

DEF FIELD = 20
DEF MASK = (1 << FIELD) - 1

BACKEND = "cython"


cdef inline bint _divides(long long small, long long big):
    return ((small >> (2 * FIELD)) <= (big >> (2 * FIELD))
            and ((small >> FIELD) & MASK) <= ((big >> FIELD) & MASK)
            and (small & MASK) <= (big & MASK))


def pack(long long e1, long long e2, long long e3):
    return (e1 << (2 * FIELD)) | (e2 << FIELD) | e3


def unpack(long long key):
    return (key >> (2 * FIELD), (key >> FIELD) & MASK, key & MASK)


def divides(long long small, long long big):
    return _divides(small, big)


def padd(dict a, dict b):
    cdef dict out
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) + c
        if v:
            out[k] = v
        else:
            del out[k]
    return out


def psub(dict a, dict b):
    cdef dict out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) - c
        if v:
            out[k] = v
        else:
            del out[k]
    return out


def paddmul(dict acc, dict a, c, long long shift=0):
    cdef long long k
    if not c:
        return acc
    for key, v in a.items():
        k = <long long>key + shift
        s = acc.get(k, 0) + c * v
        if s:
            acc[k] = s
        else:
            del acc[k]
    return acc


def pscale(dict a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def pdivint(dict a, c):
    return {k: v // c for k, v in a.items()}


def pmul(dict a, dict b):
    cdef dict out
    cdef list ka_list, kb_list, ca_list, cb_list
    cdef Py_ssize_t i, j, na, nb
    cdef long long ka, k
    if len(a) > len(b):
        a, b = b, a
    if not a:
        return {}
    out = {}
    ka_list = list(a.keys())
    ca_list = list(a.values())
    kb_list = list(b.keys())
    cb_list = list(b.values())
    na = len(ka_list)
    nb = len(kb_list)
    for i in range(na):
        ka = ka_list[i]
        ca = ca_list[i]
        for j in range(nb):
            k = ka + <long long>kb_list[j]
            prev = out.get(k)
            if prev is None:
                out[k] = ca * cb_list[j]
            else:
                out[k] = prev + ca * cb_list[j]
    return {key: v for key, v in out.items() if v}


def ppow(dict a, long n):
    cdef dict result = {0: 1}
    cdef dict base = a
    while n:
        if n & 1:
            result = pmul(result, base)
        n >>= 1
        if n:
            base = pmul(base, base)
    return result


def pdivexact(dict a, dict b):
    cdef long long lk, k, d, kk
    cdef dict rem, quo
    cdef list kb_list, cb_list
    cdef Py_ssize_t j, nb
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lk = max(b)
    lc = b[lk]
    kb_list = list(b.keys())
    cb_list = list(b.values())
    nb = len(kb_list)
    rem = dict(a)
    quo = {}
    while rem:
        k = max(rem)
        if not _divides(lk, k):
            return None
        c, r = divmod(rem[k], lc)
        if r:
            return None
        d = k - lk
        quo[d] = c
        for j in range(nb):
            kk = <long long>kb_list[j] + d
            v = rem.get(kk, 0) - c * cb_list[j]
            if v:
                rem[kk] = v
            else:
                del rem[kk]
    return quo


def pcontent(dict a):
    g = 0
    for v in a.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


def peval_mod(dict a, x1, x2, x3, p):
    cdef long long k
    s = 0
    for key, c in a.items():
        k = key
        s += c * pow(x1, k >> (2 * FIELD), p) * pow(x2, (k >> FIELD) & MASK, p) \
            * pow(x3, k & MASK, p)
    return s % p


def ptotal_degree(dict a):
    cdef long long k, d, m = 0
    for key in a:
        k = key
        d = (k >> (2 * FIELD)) + ((k >> FIELD) & MASK) + (k & MASK)
        if d > m:
            m = d
    return m
