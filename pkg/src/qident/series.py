"""Truncated formal power series in q.

A QSeries holds exact coefficients for q^0 .. q^order and nothing beyond;
every operation truncates at the same order.  Two coefficient modes exist:

* symbolic — coefficients are Laurent polynomials in z and c, stored as the
  raw dicts the kernels consume;
* specialized — coefficients are plain ints / Fractions, after substituting
  rational values for the weight variables.

Mixing modes or orders in one operation is an error rather than a silent
coercion, since the two modes are meant to cross-check each other.
"""

import functools
import warnings
from dataclasses import dataclass
from fractions import Fraction

from ._backend import kernel
from .errors import (
    ModeMismatch,
    NonInvertibleConstantTerm,
    NonTruncatingInfiniteProduct,
    OrderMismatch,
)
from .laurent import LaurentPoly, _norm_num

INFINITY = float("inf")

_NUMS = (int, Fraction)


@dataclass(frozen=True)
class Monomial:
    """A single term coeff * z^e_z * c^e_c * q^e_q with e_q >= 0."""

    coeff: object
    e_z: int = 0
    e_c: int = 0
    e_q: int = 0

    def __post_init__(self):
        if not self.coeff:
            raise ValueError("monomial coefficient must be nonzero")
        if self.e_q < 0:
            raise ValueError("monomial q exponent must be >= 0")

    def key(self):
        return (self.coeff, self.e_z, self.e_c, self.e_q)


class ReindexTruncationWarning(UserWarning):
    """Reindexing q -> q^m pushed nonzero coefficients past the order."""


def _wrap_coeff(value, symbolic):
    """Internal storage form of one coefficient."""
    if isinstance(value, LaurentPoly):
        if symbolic:
            return dict(value.terms)
        if not value.is_constant():
            raise ModeMismatch("polynomial coefficient in a specialized series")
        return value.constant_value()
    value = _norm_num(value)
    if symbolic:
        return {(0, 0): value} if value else {}
    return value


class QSeries:
    """Exact power series in q truncated at a fixed order."""

    __slots__ = ("order", "symbolic", "_coeffs")

    def __init__(self, order, symbolic, coeffs=None):
        if order < 0:
            raise ValueError("order must be >= 0")
        self.order = order
        self.symbolic = symbolic
        if coeffs is None:
            coeffs = [{} if symbolic else 0 for _ in range(order + 1)]
        self._coeffs = coeffs

    # -- construction ------------------------------------------------------

    @classmethod
    def constant(cls, value, order, symbolic):
        s = cls(order, symbolic)
        s._coeffs[0] = _wrap_coeff(value, symbolic)
        return s

    @classmethod
    def from_monomial(cls, mono, order, symbolic):
        s = cls(order, symbolic)
        if mono.e_q > order:
            return s
        if symbolic:
            s._coeffs[mono.e_q] = {(mono.e_z, mono.e_c): mono.coeff}
        else:
            if mono.e_z or mono.e_c:
                raise ModeMismatch("z/c exponents in a specialized series")
            s._coeffs[mono.e_q] = _norm_num(mono.coeff)
        return s

    @classmethod
    def variable(cls, name, order):
        """The symbolic series for z or c (a q-degree-0 coefficient)."""
        return cls.from_monomial(
            Monomial(1, e_z=1 if name == "z" else 0, e_c=1 if name == "c" else 0),
            order,
            True,
        )

    # -- inspection --------------------------------------------------------

    def coefficient(self, k):
        """Coefficient of q^k, as LaurentPoly (symbolic) or number."""
        if not 0 <= k <= self.order:
            raise IndexError(f"q^{k} is outside order {self.order}")
        v = self._coeffs[k]
        return LaurentPoly(v) if self.symbolic else v

    def coefficients(self):
        return [self.coefficient(k) for k in range(self.order + 1)]

    def min_degree(self):
        """Smallest k with a nonzero coefficient, or None for the zero series."""
        for k, v in enumerate(self._coeffs):
            if v:
                return k
        return None

    def is_zero(self):
        return self.min_degree() is None

    def as_single_monomial(self):
        """Monomial form if exactly one coefficient is a single term, else None."""
        found = None
        for k, v in enumerate(self._coeffs):
            if not v:
                continue
            if found is not None:
                return None
            found = (k, v)
        if found is None:
            return None
        k, v = found
        if self.symbolic:
            if len(v) != 1:
                return None
            (ez, ec), coeff = next(iter(v.items()))
            return Monomial(coeff, ez, ec, k)
        return Monomial(v, 0, 0, k)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self.order == other.order
            and self.symbolic == other.symbolic
            and self._coeffs == other._coeffs
        )

    __hash__ = None

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, QSeries):
            raise TypeError(f"expected QSeries, got {type(other).__name__}")
        if self.order != other.order:
            raise OrderMismatch(f"orders differ: {self.order} vs {other.order}")
        if self.symbolic != other.symbolic:
            raise ModeMismatch("cannot mix symbolic and specialized series")

    def __add__(self, other):
        if isinstance(other, (_NUMS) + (LaurentPoly,)):
            other = QSeries.constant(other, self.order, self.symbolic)
        self._check(other)
        if self.symbolic:
            coeffs = [kernel.lp_add(a, b) for a, b in zip(self._coeffs, other._coeffs)]
        else:
            coeffs = [a + b for a, b in zip(self._coeffs, other._coeffs)]
        return QSeries(self.order, self.symbolic, coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (_NUMS) + (LaurentPoly,)):
            other = QSeries.constant(other, self.order, self.symbolic)
        self._check(other)
        if self.symbolic:
            coeffs = [kernel.lp_sub(a, b) for a, b in zip(self._coeffs, other._coeffs)]
        else:
            coeffs = [a - b for a, b in zip(self._coeffs, other._coeffs)]
        return QSeries(self.order, self.symbolic, coeffs)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        if self.symbolic:
            coeffs = [kernel.lp_neg(a) for a in self._coeffs]
        else:
            coeffs = [-a for a in self._coeffs]
        return QSeries(self.order, self.symbolic, coeffs)

    def __mul__(self, other):
        if isinstance(other, (_NUMS) + (LaurentPoly,)):
            return self.scale(other)
        self._check(other)
        # Single-monomial operands are common (signs, powers of z, q shifts)
        # and turn the Cauchy product into one linear pass.
        for a, b in ((self, other), (other, self)):
            m = a.as_single_monomial()
            if m is None:
                continue
            shifted = b.shift(m.e_q) if m.e_q else b
            if self.symbolic:
                coeffs = [
                    kernel.lp_mul_mono(cc, m.e_z, m.e_c, m.coeff) if cc else {}
                    for cc in shifted._coeffs
                ]
            else:
                coeffs = [cc * m.coeff for cc in shifted._coeffs]
            return QSeries(self.order, self.symbolic, coeffs)
        if self.symbolic:
            coeffs = kernel.ser_mul(self._coeffs, other._coeffs, self.order)
        else:
            coeffs = kernel.rat_ser_mul(self._coeffs, other._coeffs, self.order)
        return QSeries(self.order, self.symbolic, coeffs)

    __rmul__ = __mul__

    def scale(self, value):
        """Multiply every coefficient by a scalar or Laurent polynomial."""
        if self.symbolic:
            t = value.terms if isinstance(value, LaurentPoly) else {(0, 0): _norm_num(value)}
            if not t:
                return QSeries(self.order, True)
            coeffs = [kernel.lp_mul(a, t) if a else {} for a in self._coeffs]
        else:
            if isinstance(value, LaurentPoly):
                value = value.constant_value()
            value = _norm_num(value)
            coeffs = [a * value for a in self._coeffs]
        return QSeries(self.order, self.symbolic, coeffs)

    def shift(self, k):
        """Multiply by q^k (k >= 0), dropping coefficients past the order."""
        if k < 0:
            raise ValueError("shift must be >= 0")
        zero = {} if self.symbolic else 0
        coeffs = [zero] * min(k, self.order + 1) + self._coeffs[: max(self.order + 1 - k, 0)]
        return QSeries(self.order, self.symbolic, coeffs)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.invert() ** (-n)
        mono = self.as_single_monomial()
        if mono is not None and n > 0:
            coeff = mono.coeff
            p = coeff**n if n < 64 else Fraction(coeff) ** n
            if mono.e_q * n > self.order:
                return QSeries(self.order, self.symbolic)
            return QSeries.from_monomial(
                Monomial(p, mono.e_z * n, mono.e_c * n, mono.e_q * n), self.order, self.symbolic
            )
        result = QSeries.constant(1, self.order, self.symbolic)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def invert(self):
        """Multiplicative inverse, when the constant term is a unit.

        The symbolic constant term must be a single signed monomial in z and
        c; a full polynomial there has no Laurent-polynomial inverse.
        """
        c0 = self._coeffs[0]
        if self.symbolic:
            if len(c0) != 1:
                raise NonInvertibleConstantTerm(
                    f"constant term {LaurentPoly(c0)} is not a single monomial"
                )
            (ez, ec), v = next(iter(c0.items()))
            inv0 = {(-ez, -ec): _norm_num(Fraction(1) / Fraction(v))}
            coeffs = kernel.ser_invert(self._coeffs, self.order, inv0)
        else:
            if not c0:
                raise NonInvertibleConstantTerm("constant term is zero")
            inv0 = _norm_num(Fraction(1) / Fraction(c0))
            coeffs = kernel.rat_ser_invert(self._coeffs, self.order, inv0)
        return QSeries(self.order, self.symbolic, coeffs)

    # -- display -----------------------------------------------------------

    def __str__(self):
        parts = []
        for k in range(self.order + 1):
            v = self._coeffs[k]
            if not v:
                continue
            if self.symbolic:
                poly = LaurentPoly(v)
                mono = poly.as_monomial()
                body = str(poly) if mono else f"({poly})"
                negated = False
                if mono and mono[0] < 0:
                    negated = True
                    body = str(-poly)
                coeff_is_one = body == "1"
            else:
                negated = v < 0
                mag = -v if negated else v
                body = str(mag)
                coeff_is_one = mag == 1
            if k == 0:
                term = body
            else:
                qpart = "q" if k == 1 else f"q^{k}"
                term = qpart if coeff_is_one else f"{body}*{qpart}"
            if not parts:
                parts.append(f"-{term}" if negated else term)
            else:
                parts.append(f"- {term}" if negated else f"+ {term}")
        return " ".join(parts) if parts else "0"

    def __repr__(self):
        mode = "symbolic" if self.symbolic else "specialized"
        return f"QSeries(order={self.order}, {mode}, {str(self)!r})"


# -- named operations ------------------------------------------------------


def qs_mul_binomial(s, x):
    """Multiply a series by the factor (1 - x) for a Monomial x."""
    if s.symbolic:
        if x.e_q == 0:
            unit = kernel.lp_sub({(0, 0): 1}, {(x.e_z, x.e_c): x.coeff})
            coeffs = [kernel.lp_mul(a, unit) if a else {} for a in s._coeffs]
        else:
            coeffs = kernel.ser_mul_binomial(s._coeffs, x.e_q, x.e_z, x.e_c, x.coeff, s.order)
    else:
        if x.e_z or x.e_c:
            raise ModeMismatch("z/c exponents in a specialized binomial factor")
        if x.e_q == 0:
            unit = 1 - x.coeff
            coeffs = [a * unit for a in s._coeffs]
        else:
            coeffs = kernel.rat_ser_mul_binomial(s._coeffs, x.e_q, x.coeff, s.order)
    return QSeries(s.order, s.symbolic, coeffs)


def qs_poch(x, count, order, symbolic, base=1):
    """Truncated q-Pochhammer product of (1 - x * q^(base*j)) for 0 <= j < count.

    ``x`` is a Monomial; ``count`` is a nonnegative int or INFINITY.  An
    infinite product needs x.e_q >= 1, otherwise no truncation order exists.
    Factors whose q exponent exceeds the order are identically 1 and are
    skipped, which is what makes the infinite case finite work.
    """
    if base < 1:
        raise ValueError("pochhammer base exponent must be >= 1")
    if not symbolic and (x.e_z or x.e_c):
        raise ModeMismatch("z/c exponents in a specialized pochhammer argument")
    if count is INFINITY:
        if x.e_q < 1:
            raise NonTruncatingInfiniteProduct(
                "infinite pochhammer needs a positive q power in its argument"
            )
        top = None
    else:
        count = int(count)
        if count < 0:
            raise ValueError("pochhammer count must be >= 0 or INFINITY")
        top = count - 1

    out = QSeries.constant(1, order, symbolic)
    j = 0
    while (top is None or j <= top) and x.e_q + base * j <= order:
        out = qs_mul_binomial(out, Monomial(x.coeff, x.e_z, x.e_c, x.e_q + base * j))
        j += 1
    return out


@functools.lru_cache(maxsize=None)
def _qbin_coeffs(n, k, base, order):
    """Gaussian binomial [n, k] in q^base as a tuple of int coefficients.

    Pascal recurrence [n, k] = [n-1, k] + q^(base*(n-k)) * [n-1, k-1],
    truncated at the order so the table stays small.
    """
    if k < 0 or k > n:
        return (0,) * (order + 1)
    if k == 0 or k == n:
        return (1,) + (0,) * order
    a = _qbin_coeffs(n - 1, k, base, order)
    b = _qbin_coeffs(n - 1, k - 1, base, order)
    shift = base * (n - k)
    out = list(a)
    for i in range(order + 1 - shift):
        if b[i]:
            out[i + shift] += b[i]
    return tuple(out)


def qs_qbin(n, k, order, symbolic, base=1):
    """Gaussian binomial coefficient [n, k] as a truncated series."""
    if n < 0:
        raise ValueError("qbin needs n >= 0")
    if base < 1:
        raise ValueError("qbin base exponent must be >= 1")
    flat = _qbin_coeffs(n, k, base, order)
    if symbolic:
        coeffs = [{(0, 0): v} if v else {} for v in flat]
    else:
        coeffs = list(flat)
    return QSeries(order, symbolic, coeffs)


def qs_reindex(series, m):
    """Substitute q -> q^m at the same order, warning when terms fall off."""
    if m < 1:
        raise ValueError("reindex exponent must be >= 1")
    out = QSeries(series.order, series.symbolic)
    dropped = []
    for k, v in enumerate(series._coeffs):
        if not v:
            continue
        if k * m > series.order:
            dropped.append(k)
        else:
            out._coeffs[k * m] = v
    if dropped:
        warnings.warn(
            f"reindex q -> q^{m} discarded {len(dropped)} nonzero coefficient(s) "
            f"(first at source power {dropped[0]}); raise the order to keep them",
            ReindexTruncationWarning,
            stacklevel=2,
        )
    return out


def qs_scalar_exact_div(series, divisor):
    """Divide every coefficient exactly by a q-free Laurent polynomial or number."""
    if series.symbolic:
        if not isinstance(divisor, LaurentPoly):
            divisor = LaurentPoly.const(divisor)
        coeffs = [
            LaurentPoly(v).exact_div(divisor).terms if v else {} for v in series._coeffs
        ]
    else:
        if isinstance(divisor, LaurentPoly):
            divisor = divisor.constant_value()
        if not divisor:
            raise ZeroDivisionError("scalar division by zero")
        inv = Fraction(1) / Fraction(divisor)
        coeffs = [_norm_num(v * inv) if v else 0 for v in series._coeffs]
    return QSeries(series.order, series.symbolic, coeffs)
