"""Pure Python arithmetic kernels.

Coefficients are sparse Laurent polynomials stored as plain dicts mapping an
exponent pair ``(e_z, e_c)`` to a nonzero int or Fraction.  Truncated power
series in q are stored as lists indexed by the q exponent; entries are either
dicts (symbolic coefficients) or bare numbers (specialized coefficients).

The compiled twin in ``_speedups.pyx`` implements the same functions with the
same semantics; zero terms are always dropped so dict equality is meaningful.
"""

BACKEND_NAME = "python"


def lp_add(a, b):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def lp_sub(a, b):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) - v
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def lp_neg(a):
    return {k: -v for k, v in a.items()}


def lp_scale(a, s):
    if not s:
        return {}
    return {k: v * s for k, v in a.items()}


def lp_mul(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for (az, ac), av in a.items():
        for (bz, bc), bv in b.items():
            k = (az + bz, ac + bc)
            s = out.get(k, 0) + av * bv
            if s:
                out[k] = s
            elif k in out:
                del out[k]
    return out


def lp_mul_mono(a, dz, dc, s):
    """a * (s * z**dz * c**dc); s must be nonzero."""
    return {(ez + dz, ec + dc): v * s for (ez, ec), v in a.items()}


def ser_mul(a, b, n):
    """Cauchy product of symbolic coefficient lists, truncated at order n."""
    out = [{} for _ in range(n + 1)]
    for i, ai in enumerate(a):
        if not ai:
            continue
        lim = n - i
        for j, bj in enumerate(b):
            if j > lim:
                break
            if bj:
                out[i + j] = lp_add(out[i + j], lp_mul(ai, bj))
    return out


def ser_mul_binomial(a, j, dz, dc, s, n):
    """a * (1 - s*z**dz*c**dc * q**j) truncated at order n, for j >= 1."""
    out = list(a)
    for k in range(min(len(a) - 1, n - j), -1, -1):
        ak = a[k]
        if ak:
            out[k + j] = lp_sub(out[k + j], lp_mul_mono(ak, dz, dc, s))
    return out


def ser_invert(a, n, inv0):
    """Invert a symbolic series given inv0, the coefficient-ring inverse of a[0].

    Uses b[k] = -inv0 * sum_{j=1..k} a[j] * b[k-j].
    """
    neg_inv0 = lp_neg(inv0)
    out = [inv0]
    for k in range(1, n + 1):
        acc = {}
        for j in range(1, min(k, len(a) - 1) + 1):
            aj = a[j]
            if aj:
                bkj = out[k - j]
                if bkj:
                    acc = lp_add(acc, lp_mul(aj, bkj))
        out.append(lp_mul(neg_inv0, acc) if acc else {})
    return out


def rat_ser_mul(a, b, n):
    out = [0] * (n + 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        lim = n - i
        for j, bj in enumerate(b):
            if j > lim:
                break
            if bj:
                out[i + j] += ai * bj
    return out


def rat_ser_mul_binomial(a, j, s, n):
    out = list(a)
    for k in range(min(len(a) - 1, n - j), -1, -1):
        ak = a[k]
        if ak:
            out[k + j] -= ak * s
    return out


def rat_ser_invert(a, n, inv0):
    neg_inv0 = -inv0
    out = [inv0]
    for k in range(1, n + 1):
        acc = 0
        for j in range(1, min(k, len(a) - 1) + 1):
            aj = a[j]
            if aj:
                bkj = out[k - j]
                if bkj:
                    acc += aj * bkj
        out.append(neg_inv0 * acc if acc else 0)
    return out
