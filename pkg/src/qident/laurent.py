"""Exact Laurent polynomials in the two weight variables z and c.

These are the coefficients of the truncated q-series used everywhere else.
Terms live in a dict mapping ``(e_z, e_c)`` to a nonzero int or Fraction;
exponents may be negative.  All arithmetic is exact.

Display order is graded lexicographic: ascending total degree, and inside a
degree block descending z exponent, so ``geometric_weight(3)`` renders as
``z^2 + z*c + c^2`` and ``1 - c`` keeps its natural reading.
"""

from fractions import Fraction

from ._backend import kernel
from .errors import NotDivisible, ZeroAtPole

_NUMS = (int, Fraction)


def _norm_num(x):
    """Collapse integral Fractions to int; reject non-rationals."""
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, int):
        return int(x)
    raise TypeError(f"coefficients must be int or Fraction, not {type(x).__name__}")


def _clean_terms(terms):
    out = {}
    for (ez, ec), v in terms.items():
        v = _norm_num(v)
        if v:
            out[(int(ez), int(ec))] = v
    return out


class LaurentPoly:
    """Immutable sparse Laurent polynomial in z and c over the rationals."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        object.__setattr__(self, "terms", _clean_terms(terms or {}))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, terms):
        """Wrap a kernel-produced dict without re-normalizing."""
        self = object.__new__(cls)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", None)
        return self

    @classmethod
    def const(cls, value):
        value = _norm_num(Fraction(value) if not isinstance(value, _NUMS) else value)
        return cls._raw({(0, 0): value} if value else {})

    @classmethod
    def var(cls, name):
        if name == "z":
            return cls._raw({(1, 0): 1})
        if name == "c":
            return cls._raw({(0, 1): 1})
        raise ValueError(f"unknown variable {name!r}")

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, _NUMS):
            return LaurentPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return LaurentPoly._raw(kernel.lp_add(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return LaurentPoly._raw(kernel.lp_sub(self.terms, other.terms))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return LaurentPoly._raw(kernel.lp_sub(other.terms, self.terms))

    def __neg__(self):
        return LaurentPoly._raw(kernel.lp_neg(self.terms))

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return LaurentPoly._raw(kernel.lp_mul(self.terms, other.terms))
        if isinstance(other, _NUMS):
            return LaurentPoly._raw(kernel.lp_scale(self.terms, _norm_num(other)))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            mono = self.as_monomial()
            if mono is None:
                raise NotDivisible("negative power of a non-monomial Laurent polynomial")
            coeff, ez, ec = mono
            inv = LaurentPoly._raw({(-ez, -ec): _norm_num(Fraction(1, 1) / coeff)})
            return inv ** (-n)
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, _NUMS):
            return self.terms == LaurentPoly.const(other).terms
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self.terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or set(self.terms) == {(0, 0)}

    def constant_value(self):
        """The value of a constant polynomial, as int or Fraction."""
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return self.terms.get((0, 0), 0)

    def as_monomial(self):
        """(coeff, e_z, e_c) for a single-term polynomial, else None."""
        if len(self.terms) != 1:
            return None
        (ez, ec), v = next(iter(self.terms.items()))
        return v, ez, ec

    def min_exponents(self):
        if not self.terms:
            raise ValueError("zero polynomial has no exponent range")
        return (min(e for e, _ in self.terms), min(e for _, e in self.terms))

    def evaluate(self, z_value, c_value):
        """Exact evaluation; raises ZeroAtPole on 0 ** negative."""
        z_value = Fraction(z_value)
        c_value = Fraction(c_value)
        total = Fraction(0)
        for (ez, ec), v in self.terms.items():
            if (ez < 0 and z_value == 0) or (ec < 0 and c_value == 0):
                raise ZeroAtPole(f"monomial z^{ez}*c^{ec} evaluated at a zero base")
            total += Fraction(v) * z_value**ez * c_value**ec
        return _norm_num(total)

    def exact_div(self, divisor):
        return lp_exact_div(self, divisor)

    def _sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], -kv[0][0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (ez, ec), v in self._sorted_terms():
            factors = []
            if ez:
                factors.append("z" if ez == 1 else f"z^{ez}")
            if ec:
                factors.append("c" if ec == 1 else f"c^{ec}")
            mag = v if v > 0 else -v
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if v > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if v > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


ZERO = LaurentPoly.const(0)
ONE = LaurentPoly.const(1)
Z = LaurentPoly.var("z")
C = LaurentPoly.var("c")


def _leading(terms):
    key = max(terms, key=lambda e: (e[0] + e[1], e[0]))
    return key, terms[key]


def lp_exact_div(dividend, divisor):
    """Exact division in the Laurent ring; raises NotDivisible on failure.

    Single-divisor long division under a graded-lex term order decides
    divisibility: when the quotient exists the leading term of the running
    remainder always cancels, so hitting a non-cancelling leading term or a
    nonzero final remainder proves there is no polynomial quotient.
    """
    if isinstance(divisor, _NUMS):
        divisor = LaurentPoly.const(divisor)
    if isinstance(dividend, _NUMS):
        dividend = LaurentPoly.const(dividend)
    if divisor.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if dividend.is_zero():
        return ZERO

    # Shift both operands to honest polynomials; the monomial offset is a unit.
    dmin = dividend.min_exponents()
    vmin = divisor.min_exponents()
    a = {(ez - dmin[0], ec - dmin[1]): v for (ez, ec), v in dividend.terms.items()}
    b = {(ez - vmin[0], ec - vmin[1]): v for (ez, ec), v in divisor.terms.items()}
    (lbz, lbc), lbv = _leading(b)

    quot = {}
    rem = dict(a)
    while rem:
        (lrz, lrc), lrv = _leading(rem)
        qz, qc = lrz - lbz, lrc - lbc
        if qz < 0 or qc < 0:
            raise NotDivisible(f"{dividend} is not divisible by {divisor}")
        qv = _norm_num(Fraction(lrv) / Fraction(lbv))
        quot[(qz, qc)] = qv
        rem = kernel.lp_sub(rem, kernel.lp_mul_mono(b, qz, qc, qv))

    sz, sc = dmin[0] - vmin[0], dmin[1] - vmin[1]
    return LaurentPoly._raw({(ez + sz, ec + sc): v for (ez, ec), v in quot.items()})


def geometric_weight(s):
    """sum of z^i * c^(s-1-i) for 0 <= i < s; the initial-run weight."""
    if s < 0:
        raise ValueError("geometric_weight needs s >= 0")
    return LaurentPoly._raw({(i, s - 1 - i): 1 for i in range(s)})
