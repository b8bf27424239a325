# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled arithmetic kernels; mirrors _fallback.py exactly.

Coefficient values stay generic Python numbers (int / Fraction) so all
arithmetic remains exact; the speedup comes from C-level loops, tuple
packing and dict access.
"""

BACKEND_NAME = "c"


def lp_add(dict a, dict b):
    cdef dict out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def lp_sub(dict a, dict b):
    cdef dict out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) - v
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def lp_neg(dict a):
    cdef dict out = {}
    for k, v in a.items():
        out[k] = -v
    return out


def lp_scale(dict a, s):
    cdef dict out = {}
    if not s:
        return out
    for k, v in a.items():
        out[k] = v * s
    return out


def lp_mul(dict a, dict b):
    cdef dict out = {}
    cdef long long az, ac, bz, bc
    cdef tuple k
    if len(a) > len(b):
        a, b = b, a
    for ka, av in a.items():
        az = <long long> (<tuple> ka)[0]
        ac = <long long> (<tuple> ka)[1]
        for kb, bv in b.items():
            bz = <long long> (<tuple> kb)[0]
            bc = <long long> (<tuple> kb)[1]
            k = (az + bz, ac + bc)
            s = out.get(k, 0) + av * bv
            if s:
                out[k] = s
            elif k in out:
                del out[k]
    return out


def lp_mul_mono(dict a, long long dz, long long dc, s):
    cdef dict out = {}
    cdef long long ez, ec
    for ka, v in a.items():
        ez = <long long> (<tuple> ka)[0]
        ec = <long long> (<tuple> ka)[1]
        out[(ez + dz, ec + dc)] = v * s
    return out


def ser_mul(list a, list b, Py_ssize_t n):
    cdef list out = [None] * (n + 1)
    cdef Py_ssize_t i, j, lim, la, lb
    cdef dict ai, bj
    for i in range(n + 1):
        out[i] = {}
    la = len(a)
    lb = len(b)
    for i in range(la):
        ai = <dict> a[i]
        if not ai:
            continue
        lim = n - i
        if lim >= lb - 1:
            lim = lb - 1
        for j in range(lim + 1):
            bj = <dict> b[j]
            if bj:
                out[i + j] = lp_add(<dict> out[i + j], lp_mul(ai, bj))
    return out


def ser_mul_binomial(list a, Py_ssize_t j, long long dz, long long dc, s, Py_ssize_t n):
    cdef list out = list(a)
    cdef Py_ssize_t k, top
    cdef dict ak
    top = len(a) - 1
    if top > n - j:
        top = n - j
    for k in range(top, -1, -1):
        ak = <dict> a[k]
        if ak:
            out[k + j] = lp_sub(<dict> out[k + j], lp_mul_mono(ak, dz, dc, s))
    return out


def ser_invert(list a, Py_ssize_t n, dict inv0):
    cdef dict neg_inv0 = lp_neg(inv0)
    cdef list out = [inv0]
    cdef Py_ssize_t k, j, top
    cdef dict acc, aj, bkj
    for k in range(1, n + 1):
        acc = {}
        top = k
        if top > len(a) - 1:
            top = len(a) - 1
        for j in range(1, top + 1):
            aj = <dict> a[j]
            if aj:
                bkj = <dict> out[k - j]
                if bkj:
                    acc = lp_add(acc, lp_mul(aj, bkj))
        out.append(lp_mul(neg_inv0, acc) if acc else {})
    return out


def rat_ser_mul(list a, list b, Py_ssize_t n):
    cdef list out = [0] * (n + 1)
    cdef Py_ssize_t i, j, lim, la, lb
    la = len(a)
    lb = len(b)
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        lim = n - i
        if lim >= lb - 1:
            lim = lb - 1
        for j in range(lim + 1):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def rat_ser_mul_binomial(list a, Py_ssize_t j, s, Py_ssize_t n):
    cdef list out = list(a)
    cdef Py_ssize_t k, top
    top = len(a) - 1
    if top > n - j:
        top = n - j
    for k in range(top, -1, -1):
        ak = a[k]
        if ak:
            out[k + j] = out[k + j] - ak * s
    return out


def rat_ser_invert(list a, Py_ssize_t n, inv0):
    neg_inv0 = -inv0
    cdef list out = [inv0]
    cdef Py_ssize_t k, j, top
    for k in range(1, n + 1):
        acc = 0
        top = k
        if top > len(a) - 1:
            top = len(a) - 1
        for j in range(1, top + 1):
            aj = a[j]
            if aj:
                bkj = out[k - j]
                if bkj:
                    acc = acc + aj * bkj
        out.append(neg_inv0 * acc if acc else 0)
    return out
