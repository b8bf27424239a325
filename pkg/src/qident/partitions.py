"""Partition enumeration, statistics, counters, and weighted sums.

Partitions are weakly decreasing tuples of positive integers.  Everything in
this module counts by direct enumeration or trial division, never through
generating functions, so its numbers can cross-check the series machinery
as a fully independent oracle.

Enumerable classes:

* ALL — unrestricted partitions;
* DISTINCT — strictly decreasing parts;
* NO_GAPS — every integer from 1 to the largest part occurs;
* ODD_PARTS — all parts odd;
* Q_GARVAN — see below;
* OVERPARTITIONS — a partition plus a choice of overlined part values;
* VECTOR_S_SELFCONJ — pairs (p1, p2) standing for triples (p1, p2, p2)
  with p1 nonempty with distinct parts and s(p1) <= s(p2).

The Q_GARVAN class matches the support of the series it is checked
against: odd values must form an unbroken run 1, 3, ..., L_odd with free
multiplicities, and at most one even value may appear, which is then the
largest part and equals L_odd + 1 (again with free multiplicity).  Among
the candidate readings of "all parts except possibly the largest are odd
and all odd integers up to the largest part occur", this is the one that
reproduces the signed divisor counts d81; requiring the odd run only up
to the largest *odd* part admits extra partitions such as 6+1 and breaks
the match from n = 7 on.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .dsl import chi12_value
from .errors import UnknownCounter, UnknownWeight
from .laurent import C, LaurentPoly, Z, geometric_weight

CLASSES = (
    "ALL",
    "DISTINCT",
    "NO_GAPS",
    "ODD_PARTS",
    "Q_GARVAN",
    "OVERPARTITIONS",
    "VECTOR_S_SELFCONJ",
)


@dataclass(frozen=True)
class Overpartition:
    parts: tuple
    overlined: frozenset


@dataclass(frozen=True, eq=True)
class PartitionStats:
    s: int
    l: int
    num_parts: int
    rank: int
    L: int
    nu_d: int
    mult: object  # part value -> multiplicity


def stats(parts):
    """All statistics of a nonempty partition in one pass."""
    if not parts:
        raise ValueError("statistics need a nonempty partition")
    mult = Counter(parts)
    l = parts[0]
    return PartitionStats(
        s=parts[-1],
        l=l,
        num_parts=len(parts),
        rank=l - len(parts),
        L=mult[l],
        nu_d=len(mult),
        mult=dict(mult),
    )


def conjugate(parts):
    """Transpose of the Young diagram."""
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p >= i) for i in range(1, parts[0] + 1))


# -- enumerators -------------------------------------------------------------


def _partitions(n, max_part):
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _partitions_min(n, min_part):
    """Partitions of n with every part >= min_part."""

    def rec(m, max_part):
        if m == 0:
            yield ()
            return
        for first in range(min(m, max_part), min_part - 1, -1):
            for rest in rec(m - first, first):
                yield (first,) + rest

    yield from rec(n, n)


def _distinct(n, max_part):
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _distinct(n - first, first - 1):
            yield (first,) + rest


def _no_gaps(n):
    # Multiplicities nu(1..l) >= 1 with sum i*nu(i) = n, built largest first.
    def rec(i, remaining):
        if i == 0:
            if remaining == 0:
                yield ()
            return
        floor_below = i * (i - 1) // 2  # parts 1..i-1 once each
        k = 1
        while i * k + floor_below <= remaining:
            for rest in rec(i - 1, remaining - i * k):
                yield (i,) * k + rest
            k += 1

    l = 1
    while l * (l + 1) // 2 <= n:
        yield from rec(l, n)
        l += 1


def _odd_parts(n, max_part):
    if n == 0:
        yield ()
        return
    start = min(n, max_part)
    if start % 2 == 0:
        start -= 1
    for first in range(start, 0, -2):
        for rest in _odd_parts(n - first, first):
            yield (first,) + rest


def _q_garvan(n):
    # One block per largest odd part 2t-1; blocks are disjoint since the
    # odd values present determine t.
    def distribute(values, mins, remaining):
        if not values:
            if remaining == 0:
                yield ()
            return
        v = values[0]
        floor_below = sum(vv * mm for vv, mm in zip(values[1:], mins[1:]))
        k = mins[0]
        while v * k + floor_below <= remaining:
            for rest in distribute(values[1:], mins[1:], remaining - v * k):
                yield (v,) * k + rest
            k += 1

    t = 1
    while t * t <= n:
        values = [2 * t] + list(range(2 * t - 1, 0, -2))
        mins = [0] + [1] * t
        yield from distribute(values, mins, n)
        t += 1


def _overpartitions(n):
    for parts in _partitions(n, n):
        values = sorted(set(parts))
        for mask in range(1 << len(values)):
            marked = frozenset(v for i, v in enumerate(values) if mask >> i & 1)
            yield Overpartition(parts, marked)


def _vector_s_selfconj(n):
    for j in range(1, n + 1):
        if (n - j) % 2:
            continue
        half = (n - j) // 2
        for p1 in _distinct(j, j):
            if half == 0:
                yield (p1, ())
            else:
                yield from ((p1, p2) for p2 in _partitions_min(half, p1[-1]))


def enumerate_class(name, n):
    """Iterate one of the partition classes of n (n >= 1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if name == "ALL":
        return _partitions(n, n)
    if name == "DISTINCT":
        return _distinct(n, n)
    if name == "NO_GAPS":
        return _no_gaps(n)
    if name == "ODD_PARTS":
        return _odd_parts(n, n)
    if name == "Q_GARVAN":
        return _q_garvan(n)
    if name == "OVERPARTITIONS":
        return _overpartitions(n)
    if name == "VECTOR_S_SELFCONJ":
        return _vector_s_selfconj(n)
    raise ValueError(f"unknown partition class {name!r}")


# -- counters ----------------------------------------------------------------

_COUNTERS = {}


def _counter(name):
    def register(fn):
        _COUNTERS[name] = lru_cache(maxsize=None)(fn)
        return _COUNTERS[name]

    return register


def _divisors(n):
    return [k for k in range(1, n + 1) if n % k == 0]


@_counter("p")
def _count_p(n):
    return sum(1 for _ in _partitions(n, n))


@_counter("d")
def _count_d(n):
    return len(_divisors(n))


@_counter("d_o")
def _count_d_o(n):
    return sum(1 for k in _divisors(n) if k % 2)


@_counter("d_e")
def _count_d_e(n):
    return sum(1 for k in _divisors(n) if k % 2 == 0)


@_counter("d81")
def _count_d81(n):
    acc = 0
    for k in _divisors(n):
        r = k % 8
        if r in (1, 7):
            acc += 1
        elif r in (3, 5):
            acc -= 1
    return acc


@_counter("spt")
def _count_spt(n):
    return sum(p.count(p[-1]) for p in _partitions(n, n))


@_counter("lpt")
def _count_lpt(n):
    return sum(p.count(p[0]) for p in _partitions(n, n))


def _rank_counts(n):
    counts = Counter()
    for p in _partitions(n, n):
        counts[p[0] - len(p)] += 1
    return counts


_rank_counts = lru_cache(maxsize=None)(_rank_counts)


@_counter("N2")
def _count_n2(n):
    return sum(m * m * c for m, c in _rank_counts(n).items())


@_counter("NSC")
def _count_nsc(n):
    return sum((-1) ** (len(p1) - 1) for p1, _ in _vector_s_selfconj(n))


@_counter("w")
def _count_w(n):
    acc = 0
    for p in _no_gaps(n):
        st = stats(p)
        if min(st.mult.values()) < 2:
            continue
        prod = 1
        for i in range(1, st.l):
            prod *= st.mult[i] - 1
        acc += st.L * (st.L - 1) // 2 * prod
    return acc


@_counter("ssptd")
def _count_ssptd(n):
    return sum(p[-1] for p in _distinct(n, n))


@_counter("ssptd_o")
def _count_ssptd_o(n):
    return sum(p[-1] for p in _distinct(n, n) if len(p) % 2 == 1)


@_counter("ssptd_e")
def _count_ssptd_e(n):
    return sum(p[-1] for p in _distinct(n, n) if len(p) % 2 == 0)


@_counter("a")
def _count_a(n):
    return sum(
        1
        for p in _partitions(n, n)
        if all(m == 1 for v, m in Counter(p).items() if v != p[0])
    )


@_counter("pbar")
def _count_pbar(n):
    return sum(1 for _ in _overpartitions(n))


@_counter("rstar")
def _count_rstar(n):
    acc = 0
    k = 1
    while k * k - 2 * (k // 2) ** 2 <= n:
        for m in range(-(k // 2), (k - 1) // 2 + 1):
            if k * k - 2 * m * m == n:
                acc += (-1) ** (m - 1)
        k += 1
    return acc


def count(name, n, extra=None):
    """Exact value of a registered counter at n (extra = m for N(m, n))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if name == "N":
        if extra is None:
            raise ValueError("counter N needs the rank value as extra")
        return _rank_counts(n).get(extra, 0)
    fn = _COUNTERS.get(name)
    if fn is None:
        raise UnknownCounter(name)
    return fn(n)


def counter_names():
    return ("N",) + tuple(sorted(_COUNTERS))


# -- weighted sums -------------------------------------------------------------

_WEIGHTS = {}


def _weight(name):
    def register(fn):
        _WEIGHTS[name] = lru_cache(maxsize=None)(fn)
        return _WEIGHTS[name]

    return register


@lru_cache(maxsize=None)
def _c_run(s):
    """1 + c + ... + c^(s-1)."""
    return LaurentPoly({(0, i): 1 for i in range(s)})


@lru_cache(maxsize=None)
def _alt_c_run(s):
    """1 - c + c^2 - ... to s terms."""
    return LaurentPoly({(0, i): (-1) ** i for i in range(s)})


@lru_cache(maxsize=None)
def _z_run(lo, s):
    """z^lo + z^(lo+1) + ... to s terms."""
    return LaurentPoly({(lo + i, 0): 1 for i in range(s)})


@lru_cache(maxsize=None)
def _alt_z_run(lo, s):
    return LaurentPoly({(lo + i, 0): (-1) ** i for i in range(s)})


@lru_cache(maxsize=None)
def _cm1_pow(k):
    return (C - 1) ** k


@lru_cache(maxsize=None)
def _cp1_pow(k):
    return (C + 1) ** k


@lru_cache(maxsize=None)
def _zm1_pow(k):
    return (Z - 1) ** k


@lru_cache(maxsize=None)
def _zp1_pow(k):
    return (Z + 1) ** k


@lru_cache(maxsize=None)
def _alt_geometric(length):
    """c^(L-1) - c^(L-2) + ... with alternating signs ending at c^0."""
    return LaurentPoly({(0, length - 1 - i): (-1) ** i for i in range(length)})


def _zc_pow(ez, ec, coeff=1):
    return LaurentPoly({(ez, ec): coeff}) if coeff else LaurentPoly({})


def _sum_over(cls, n, term):
    acc = LaurentPoly({})
    for p in enumerate_class(cls, n):
        acc = acc + term(stats(p))
    return acc


# Distinct-partition weights.


@_weight("W_FFW")
def _w_ffw(n):
    return _sum_over("DISTINCT", n, lambda st: _c_run(st.s) * (-1) ** (st.num_parts - 1))


@_weight("W_GWPI_L")
def _w_gwpi_l(n):
    def term(st):
        sign = (-1) ** (st.num_parts - 1)
        return _zc_pow(st.l + 1 - st.s, 0, sign) * geometric_weight(st.s)

    return _sum_over("DISTINCT", n, term)


@_weight("W_SIGMA_L")
def _w_sigma_l(n):
    return _sum_over("DISTINCT", n, lambda st: _alt_c_run(st.s) * (-1) ** st.rank)


@_weight("W_CTO1_L")
def _w_cto1_l(n):
    def term(st):
        return _z_run(st.l + 1 - st.s, st.s) * (-1) ** (st.num_parts - 1)

    return _sum_over("DISTINCT", n, term)


@_weight("W_CTOM1_L")
def _w_ctom1_l(n):
    def term(st):
        return _alt_z_run(st.l + 1 - st.s, st.s) * (-1) ** (st.num_parts + st.s)

    return _sum_over("DISTINCT", n, term)


@_weight("W_CEZ_L")
def _w_cez_l(n):
    def term(st):
        return _zc_pow(st.l, 0, st.s * (-1) ** (st.num_parts - 1))

    return _sum_over("DISTINCT", n, term)


@_weight("W_RANKS_L")
def _w_ranks_l(n):
    return _sum_over("DISTINCT", n, lambda st: LaurentPoly.const(st.s * (-1) ** st.rank))


@_weight("W_CEMZ_L")
def _w_cemz_l(n):
    def term(st):
        if st.s % 2 == 0:
            return LaurentPoly({})
        return _zc_pow(st.l, 0, (-1) ** (st.num_parts - 1))

    return _sum_over("DISTINCT", n, term)


@_weight("W_ALLA_L")
def _w_alla_l(n):
    def term(st):
        if st.s % 2 == 0:
            return LaurentPoly({})
        return LaurentPoly.const((-1) ** (st.num_parts - 1))

    return _sum_over("DISTINCT", n, term)


@_weight("W_DEO_L")
def _w_deo_l(n):
    def term(st):
        if st.s % 2 == 0:
            return LaurentPoly({})
        return LaurentPoly.const((-1) ** (st.rank - 1))

    return _sum_over("DISTINCT", n, term)


# Unrestricted-partition weights; the recurring factor c^(l-nu_d)(c-1)^(nu_d-1)
# is (c^(l-1) times (1-1/c)^(nu_d-1)) cleared of negative powers.


@_weight("W_FFW_RHS")
def _w_ffw_rhs(n):
    return _sum_over("ALL", n, lambda st: _zc_pow(0, st.l - st.nu_d) * _cm1_pow(st.nu_d - 1))


@_weight("W_GWPI_R")
def _w_gwpi_r(n):
    def term(st):
        return _zc_pow(st.num_parts, st.l - st.nu_d) * _cm1_pow(st.nu_d - 1)

    return _sum_over("ALL", n, term)


@_weight("W_SIGMA_R")
def _w_sigma_r(n):
    def term(st):
        sign = (-1) ** (st.num_parts - 1)
        return _zc_pow(0, st.l - st.nu_d, sign) * _cm1_pow(st.nu_d - 1)

    return _sum_over("ALL", n, term)


@_weight("W_CTOM1_R")
def _w_ctom1_r(n):
    def term(st):
        w = (-1) ** (st.l - 1) * 2 ** (st.nu_d - 1)
        return _zc_pow(st.num_parts, 0, w)

    return _sum_over("ALL", n, term)


@_weight("W_CEZ_R")
def _w_cez_r(n):
    def term(st):
        return _zc_pow(st.num_parts + st.l - st.nu_d, 0) * _zm1_pow(st.nu_d - 1)

    return _sum_over("ALL", n, term)


@_weight("W_RANKS_R")
def _w_ranks_r(n):
    def term(st):
        return LaurentPoly.const((-1) ** st.rank * 2 ** (st.nu_d - 1))

    return _sum_over("ALL", n, term)


@_weight("W_CEMZ_R")
def _w_cemz_r(n):
    def term(st):
        sign = (-1) ** (st.l - 1)
        return _zc_pow(st.num_parts + st.l - st.nu_d, 0, sign) * _zp1_pow(st.nu_d - 1)

    return _sum_over("ALL", n, term)


@_weight("W_ALLA_R")
def _w_alla_r(n):
    def term(st):
        return LaurentPoly.const((-1) ** (st.l - 1) * 2 ** (st.nu_d - 1))

    return _sum_over("ALL", n, term)


@_weight("W_G5WPI_L")
def _w_g5wpi_l(n):
    def term(st):
        head = _zc_pow(st.l + st.num_parts - st.L - st.nu_d + 1, 0)
        return head * _zm1_pow(st.nu_d - 1) * geometric_weight(st.L)

    return _sum_over("ALL", n, term)


@_weight("W_G5WPI_R")
def _w_g5wpi_r(n):
    def term(st):
        return _zc_pow(st.num_parts, st.l - st.nu_d, st.L) * _cm1_pow(st.nu_d - 1)

    return _sum_over("ALL", n, term)


@_weight("W_CEQMZ_L")
def _w_ceqmz_l(n):
    def term(st):
        if st.L % 2 == 0:
            return LaurentPoly({})
        return _zc_pow(st.l + st.num_parts - st.nu_d, 0) * _zm1_pow(st.nu_d - 1)

    return _sum_over("ALL", n, term)


@_weight("W_CEQMZ_R")
def _w_ceqmz_r(n):
    def term(st):
        w = (-1) ** (st.l - 1) * st.L
        return _zc_pow(st.l + st.num_parts - st.nu_d, 0, w) * _zp1_pow(st.nu_d - 1)

    return _sum_over("ALL", n, term)


@_weight("W_G5Z1_R")
def _w_g5z1_r(n):
    def term(st):
        return _zc_pow(0, st.l - st.nu_d, st.L) * _cm1_pow(st.nu_d - 1)

    return _sum_over("ALL", n, term)


@_weight("W_CLPTI_R")
def _w_clpti_r(n):
    def term(st):
        return LaurentPoly.const((-1) ** (st.l - 1) * 2 ** (st.nu_d - 1) * st.L)

    return _sum_over("ALL", n, term)


@_weight("W_CLI_R")
def _w_cli_r(n):
    def term(st):
        if st.L % 2 == 0:
            return LaurentPoly({})
        return LaurentPoly.const((-1) ** (st.rank - 1) * 2 ** (st.nu_d - 1))

    return _sum_over("ALL", n, term)


@_weight("W_G5ZM1_L")
def _w_g5zm1_l(n):
    def term(st):
        sign = (-1) ** (st.rank - st.L) * 2 ** (st.nu_d - 1)
        return _alt_geometric(st.L) * sign

    return _sum_over("ALL", n, term)


@_weight("W_G5ZM1_R")
def _w_g5zm1_r(n):
    def term(st):
        sign = (-1) ** st.num_parts * st.L
        return _zc_pow(0, st.l - st.nu_d, sign) * _cm1_pow(st.nu_d - 1)

    return _sum_over("ALL", n, term)


# Divisor-loop weights (no partition class involved).


@_weight("W_CTO1_R")
def _w_cto1_r(n):
    return LaurentPoly({(d, 0): 1 for d in _divisors(n)})


@_weight("W_G5Z1_L")
def _w_g5z1_l(n):
    acc = LaurentPoly({})
    for d in _divisors(n):
        acc = acc + _c_run(d)
    return acc


@_weight("W_CLI_L")
def _w_cli_l(n):
    return LaurentPoly.const(sum((-1) ** d * d for d in _divisors(n)))


# Overpartition and gap-free weights.


@_weight("W_DO_OVERP")
def _w_do_overp(n):
    acc = 0
    for op in _overpartitions(n):
        st = stats(op.parts)
        acc += (-1) ** (st.l - 1) * st.L
    half = Fraction(acc, 2)
    return LaurentPoly.const(half)


@_weight("W_NEWDN_A")
def _w_newdn_a(n):
    acc = 0
    for op in _overpartitions(n):
        if op.parts[0] in op.overlined:
            acc += 2 * op.parts.count(op.parts[0]) - 1
    return LaurentPoly.const(acc)


@_weight("W_NEWDN_B")
def _w_newdn_b(n):
    acc = 0
    for p in _no_gaps(n):
        st = stats(p)
        if st.L < 2:
            continue
        prod = 1
        for i in range(1, st.l):
            prod *= 2 * st.mult[i] - 1
        acc += st.L * (st.L - 1) * prod
    return LaurentPoly.const(acc)


@_weight("W_GAR1")
def _w_gar1(n):
    acc = 0
    for p in _q_garvan(n):
        largest_odd = next(v for v in p if v % 2)
        acc += (-1) ** ((largest_odd + 1) // 2 + len(p))
    return LaurentPoly.const(acc)


@_weight("W_GAR2")
def _w_gar2(n):
    acc = 0
    for p in _odd_parts(n, n):
        st = stats(p)
        acc += 2 ** (st.nu_d - 1) * (-1) ** ((st.l + 1) // 2 + st.num_parts)
    return LaurentPoly.const(acc)


def weighted_sum(weight_id, n):
    """Exact weighted count over the weight's partition class, as a LaurentPoly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    fn = _WEIGHTS.get(weight_id)
    if fn is None:
        raise UnknownWeight(weight_id)
    return fn(n)


def weight_names():
    return tuple(sorted(_WEIGHTS))


# -- plain integer sequences ---------------------------------------------------

_SEQUENCES = {}


def _sequence(name):
    def register(fn):
        _SEQUENCES[name] = lru_cache(maxsize=None)(fn)
        return _SEQUENCES[name]

    return register


@_sequence("np")
def _seq_np(n):
    return n * count("p", n)


@_sequence("np_minus_half_n2")
def _seq_np_minus_half_n2(n):
    n2 = count("N2", n)
    assert n2 % 2 == 0
    return n * count("p", n) - n2 // 2


@_sequence("neg_half_n2")
def _seq_neg_half_n2(n):
    n2 = count("N2", n)
    assert n2 % 2 == 0
    return -(n2 // 2)


@_sequence("signed_d81")
def _seq_signed_d81(n):
    return (-1) ** (n * (n - 1) // 2) * count("d81", n)


@_sequence("de_minus_do")
def _seq_de_minus_do(n):
    return count("d_e", n) - count("d_o", n)


@_sequence("alladi_square")
def _seq_alladi_square(n):
    r = isqrt(n)
    return (-1) ** (r - 1) if r * r == n else 0


@_sequence("ssptd_o_plus_e")
def _seq_ssptd_o_plus_e(n):
    return count("ssptd_o", n) + count("ssptd_e", n)


@_sequence("d_plus_w")
def _seq_d_plus_w(n):
    return count("d", n) + count("w", n)


@_sequence("wnrep")
def _seq_wnrep(n):
    # -2 d(n) - (1/2) sum over k of k chi12(k) p(n - (k^2 - 1)/24),
    # with p(0) = 1; only k with chi12(k) nonzero contribute, and for those
    # (k^2 - 1)/24 is an integer.
    acc = Fraction(0)
    k = 1
    while (k * k - 1) // 24 <= n:
        ch = chi12_value(k)
        if ch:
            offset = (k * k - 1) // 24
            pk = 1 if offset == n else count("p", n - offset)
            acc += k * ch * pk
        k += 1
    total = -2 * count("d", n) - acc / 2
    assert total.denominator == 1
    return int(total)


@_sequence("newdn_weighted_diff")
def _seq_newdn_weighted_diff(n):
    a = weighted_sum("W_NEWDN_A", n).constant_value()
    b = weighted_sum("W_NEWDN_B", n).constant_value()
    return a - b


def sequence(name, n):
    """Exact value of a registered integer sequence at n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    fn = _SEQUENCES.get(name)
    if fn is None:
        raise UnknownCounter(name)
    return fn(n)


def sequence_names():
    return tuple(sorted(_SEQUENCES))
