"""Pure-Python sparse integer polynomial kernels.

Polynomials are plain dicts mapping a packed exponent key to a nonzero
``int`` coefficient.  Three variables (h1, h2, w) are packed into one
integer, ``FIELD`` bits each, so monomial multiplication is key addition
and integer comparison of keys is lex order with h1 > h2 > w.

This module is the reference implementation; ``_ckernels`` mirrors it.
"""

from math import gcd

FIELD = 20
MASK = (1 << FIELD) - 1
_M1 = MASK << (2 * FIELD)
_M2 = MASK << FIELD
_M3 = MASK

BACKEND = "python"


def pack(e1, e2, e3):
    return (e1 << (2 * FIELD)) | (e2 << FIELD) | e3


def unpack(key):
    return (key >> (2 * FIELD), (key >> FIELD) & MASK, key & MASK)


def divides(small, big):
    """True if monomial ``small`` divides monomial ``big``."""
    return ((small & _M1) <= (big & _M1) and (small & _M2) <= (big & _M2)
            and (small & _M3) <= (big & _M3))


def padd(a, b):
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


def psub(a, b):
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) - c
        if v:
            out[k] = v
        else:
            del out[k]
    return out


def paddmul(acc, a, c, shift=0):
    """In place ``acc += c * x^shift * a``; returns ``acc``."""
    if not c:
        return acc
    for k, v in a.items():
        kk = k + shift
        s = acc.get(kk, 0) + c * v
        if s:
            acc[kk] = s
        else:
            del acc[kk]
    return acc


def pscale(a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def pdivint(a, c):
    """Exact division of every coefficient by the integer ``c``."""
    return {k: v // c for k, v in a.items()}


def pmul(a, b):
    if len(a) > len(b):
        a, b = b, a
    if not a:
        return {}
    out = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def ppow(a, n):
    result = {0: 1}
    base = a
    while n:
        if n & 1:
            result = pmul(result, base)
        n >>= 1
        if n:
            base = pmul(base, base)
    return result


def pdivexact(a, b):
    """Quotient ``a / b`` if ``b`` divides ``a`` over Z[h1,h2,w], else None."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lk = max(b)
    lc = b[lk]
    rem = dict(a)
    quo = {}
    while rem:
        k = max(rem)
        if not divides(lk, k):
            return None
        c, r = divmod(rem[k], lc)
        if r:
            return None
        d = k - lk
        quo[d] = c
        for kb, cb in b.items():
            kk = kb + d
            v = rem.get(kk, 0) - c * cb
            if v:
                rem[kk] = v
            else:
                del rem[kk]
    return quo


def pcontent(a):
    g = 0
    for v in a.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


def peval_mod(a, x1, x2, x3, p):
    """Evaluate at (x1, x2, x3) modulo the prime ``p``."""
    s = 0
    for k, c in a.items():
        e1, e2, e3 = k >> (2 * FIELD), (k >> FIELD) & MASK, k & MASK
        s += c * pow(x1, e1, p) * pow(x2, e2, p) * pow(x3, e3, p)
    return s % p


def ptotal_degree(a):
    m = 0
    for k in a:
        d = (k >> (2 * FIELD)) + ((k >> FIELD) & MASK) + (k & MASK)
        if d > m:
            m = d
    return m
