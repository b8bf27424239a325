"""Expression language for q-series.

Identities are stored as text, parsed to small immutable ASTs, and evaluated
to QSeries under an environment that fixes the truncation order, the
coefficient mode, and the values of free variables.  The grammar:

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := "-" factor | atom ("^" exponent)?
    atom   := NUMBER | IDENT | "(" expr ")"
            | "poch" "(" expr "," (expr|"inf") ("," "q^" NUMBER)? ")"
            | "qbin" "(" expr "," expr ("," "q^" NUMBER)? ")"
            | "sum" "(" IDENT "=" expr ".." (expr|"inf") "," expr ")"
            | "chi12" "(" expr ")"

Exponents, summation bounds, Pochhammer counts, and chi12 arguments are
index expressions: they are evaluated with exact rational arithmetic over
the integer-valued bindings in scope and must come out integral.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DslSyntaxError,
    EvalError,
    ModeMismatch,
    NonConvergent,
    NonIntegerIndex,
    NonTruncatingInfiniteProduct,
    OrderMismatch,
)
from .laurent import LaurentPoly
from .series import (
    INFINITY,
    Monomial,
    QSeries,
    qs_mul_binomial,
    qs_qbin,
    qs_scalar_exact_div,
)

_RESERVED = ("poch", "qbin", "sum", "chi12", "inf")


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Div:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: object


@dataclass(frozen=True)
class Poch:
    arg: object
    count: object  # Expr or INFINITY
    base: int = 1


@dataclass(frozen=True)
class QBin:
    n: object
    k: object
    base: int = 1


@dataclass(frozen=True)
class Sum:
    var: str
    lo: object
    hi: object  # Expr or INFINITY
    body: object


@dataclass(frozen=True)
class Chi12:
    arg: object


# -- tokenizer ---------------------------------------------------------------

_PUNCT = frozenset("+-*/^(),=")


def _tokenize(text):
    toks = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
        elif ch in " \t\r":
            i += 1
            col += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("num", int(text[i:j]), line, col))
            col += j - i
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("ident", text[i:j], line, col))
            col += j - i
            i = j
        elif ch == ".":
            if text[i : i + 2] == "..":
                toks.append(("..", "..", line, col))
                i += 2
                col += 2
            else:
                raise DslSyntaxError("unexpected '.'", line, col, ("..",))
        elif ch in _PUNCT:
            toks.append((ch, ch, line, col))
            i += 1
            col += 1
        else:
            raise DslSyntaxError(f"unexpected character {ch!r}", line, col, ())
    toks.append(("eof", None, line, col))
    return toks


def _describe(tok):
    kind, value = tok[0], tok[1]
    if kind == "eof":
        return "end of input"
    if kind == "num":
        return f"number {value}"
    if kind == "ident":
        return f"'{value}'"
    return f"'{value}'"


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, expected):
        t = self.peek()
        raise DslSyntaxError(f"unexpected {_describe(t)}", t[2], t[3], tuple(expected))

    def expect(self, kind):
        if self.peek()[0] != kind:
            self.fail((kind,))
        return self.advance()

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.advance()[0]
            rhs = self.factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def factor(self):
        if self.peek()[0] == "-":
            self.advance()
            return Neg(self.factor())
        node = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            node = Pow(node, self.exponent())
        return node

    def exponent(self):
        # An exponent is a single tight unit; anything larger needs parens.
        if self.peek()[0] == "-":
            self.advance()
            return Neg(self.atom())
        return self.atom()

    def atom(self):
        t = self.peek()
        if t[0] == "num":
            self.advance()
            return Num(t[1])
        if t[0] == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if t[0] == "ident":
            name = t[1]
            if name == "poch":
                return self.poch_call()
            if name == "qbin":
                return self.qbin_call()
            if name == "sum":
                return self.sum_call()
            if name == "chi12":
                return self.chi12_call()
            if name == "inf":
                self.fail(("number", "identifier", "("))
            self.advance()
            return Var(name)
        self.fail(("number", "identifier", "("))

    def opt_base(self):
        """Optional trailing ', q^m' argument; returns m (default 1)."""
        if self.peek()[0] != ",":
            return 1
        self.advance()
        t = self.expect("ident")
        if t[1] != "q":
            raise DslSyntaxError(f"unexpected '{t[1]}'", t[2], t[3], ("q",))
        self.expect("^")
        m = self.expect("num")[1]
        if m < 1:
            raise DslSyntaxError("base exponent must be >= 1", t[2], t[3], ())
        return m

    def bound_or_inf(self):
        t = self.peek()
        if t[0] == "ident" and t[1] == "inf":
            self.advance()
            return INFINITY
        return self.expr()

    def poch_call(self):
        self.advance()
        self.expect("(")
        arg = self.expr()
        self.expect(",")
        count = self.bound_or_inf()
        base = self.opt_base()
        self.expect(")")
        return Poch(arg, count, base)

    def qbin_call(self):
        self.advance()
        self.expect("(")
        n = self.expr()
        self.expect(",")
        k = self.expr()
        base = self.opt_base()
        self.expect(")")
        return QBin(n, k, base)

    def sum_call(self):
        self.advance()
        self.expect("(")
        t = self.expect("ident")
        var = t[1]
        if var in _RESERVED:
            raise DslSyntaxError(f"'{var}' cannot be a summation variable", t[2], t[3], ())
        self.expect("=")
        lo = self.expr()
        self.expect("..")
        hi = self.bound_or_inf()
        self.expect(",")
        body = self.expr()
        self.expect(")")
        return Sum(var, lo, hi, body)

    def chi12_call(self):
        self.advance()
        self.expect("(")
        arg = self.expr()
        self.expect(")")
        return Chi12(arg)


def parse(text):
    """Parse expression text to an AST."""
    p = _Parser(_tokenize(text))
    node = p.expr()
    if p.peek()[0] != "eof":
        p.fail(("end of input",))
    return node


# -- pretty printer ----------------------------------------------------------

_ATOMIC = (Num, Var, Poch, QBin, Sum, Chi12)


def _wrap(node, text):
    return f"({text})" if not isinstance(node, _ATOMIC) else text


def pretty(e):
    """Render an AST back to text; parse(pretty(e)) == e."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        inner = pretty(e.arg)
        if isinstance(e.arg, (Add, Sub, Mul, Div)):
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(e, Add):
        right = pretty(e.right)
        if isinstance(e.right, (Add, Sub)):
            right = f"({right})"
        return f"{pretty(e.left)} + {right}"
    if isinstance(e, Sub):
        right = pretty(e.right)
        if isinstance(e.right, (Add, Sub)):
            right = f"({right})"
        return f"{pretty(e.left)} - {right}"
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        left = pretty(e.left)
        if isinstance(e.left, (Add, Sub)):
            left = f"({left})"
        right = pretty(e.right)
        if isinstance(e.right, (Add, Sub, Mul, Div, Neg)):
            right = f"({right})"
        return f"{left}{op}{right}"
    if isinstance(e, Pow):
        base = _wrap(e.base, pretty(e.base))
        exp = pretty(e.exponent)
        if not isinstance(e.exponent, (Num, Var)):
            exp = f"({exp})"
        return f"{base}^{exp}"
    if isinstance(e, Poch):
        count = "inf" if e.count is INFINITY else pretty(e.count)
        base = f", q^{e.base}" if e.base != 1 else ""
        return f"poch({pretty(e.arg)}, {count}{base})"
    if isinstance(e, QBin):
        base = f", q^{e.base}" if e.base != 1 else ""
        return f"qbin({pretty(e.n)}, {pretty(e.k)}{base})"
    if isinstance(e, Sum):
        hi = "inf" if e.hi is INFINITY else pretty(e.hi)
        return f"sum({e.var}={pretty(e.lo)}..{hi}, {pretty(e.body)})"
    if isinstance(e, Chi12):
        return f"chi12({pretty(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")


# -- environment -------------------------------------------------------------


class _SymbolicTag:
    __slots__ = ()

    def __repr__(self):
        return "SYMBOLIC"


SYMBOLIC = _SymbolicTag()


class Env:
    """Evaluation context: truncation order, mode, and variable bindings.

    Bindings map names to SYMBOLIC (z and c only), integers, Fractions,
    Monomials, or whole QSeries.  A shared Pochhammer cache keeps partial
    products so nested sums reuse factor work across terms.
    """

    __slots__ = ("order", "symbolic", "bindings", "_poch")

    def __init__(self, order, symbolic, bindings=None):
        self.order = order
        self.symbolic = symbolic
        self.bindings = dict(bindings) if bindings else {}
        self._poch = {}

    def bind(self, name, value):
        child = Env.__new__(Env)
        child.order = self.order
        child.symbolic = self.symbolic
        child.bindings = {**self.bindings, name: value}
        child._poch = self._poch
        return child


# -- index expressions -------------------------------------------------------


def _eval_rat(e, env):
    if isinstance(e, Num):
        return Fraction(e.value)
    if isinstance(e, Var):
        v = env.bindings.get(e.name)
        if isinstance(v, bool) or not isinstance(v, (int, Fraction)):
            raise EvalError(f"variable {e.name!r} has no integer value in an index expression")
        return Fraction(v)
    if isinstance(e, Neg):
        return -_eval_rat(e.arg, env)
    if isinstance(e, Add):
        return _eval_rat(e.left, env) + _eval_rat(e.right, env)
    if isinstance(e, Sub):
        return _eval_rat(e.left, env) - _eval_rat(e.right, env)
    if isinstance(e, Mul):
        return _eval_rat(e.left, env) * _eval_rat(e.right, env)
    if isinstance(e, Div):
        d = _eval_rat(e.right, env)
        if not d:
            raise EvalError("division by zero in an index expression")
        return _eval_rat(e.left, env) / d
    if isinstance(e, Pow):
        b = _eval_rat(e.base, env)
        x = _eval_rat(e.exponent, env)
        if x.denominator != 1:
            raise NonIntegerIndex(f"exponent {x} in an index expression is not an integer")
        x = int(x)
        if b == 0 and x < 0:
            raise EvalError("zero base with negative exponent in an index expression")
        return b**x
    if isinstance(e, Chi12):
        return Fraction(chi12_value(eval_int(e.arg, env)))
    raise EvalError(f"{type(e).__name__} is not allowed in an index expression")


def eval_int(e, env):
    """Evaluate an index expression; must come out an exact integer."""
    v = _eval_rat(e, env)
    if v.denominator != 1:
        raise NonIntegerIndex(f"index expression evaluated to {v}")
    return int(v)


def chi12_value(n):
    """The character mod 12: +1 at ±1, -1 at ±5, 0 elsewhere."""
    r = n % 12
    if r in (1, 11):
        return 1
    if r in (5, 7):
        return -1
    return 0


# -- series evaluation -------------------------------------------------------


def _poch_cached(env, mono, count, base):
    """(1 - mono)(1 - mono*q^base)... with memoized partial products."""
    order = env.order
    if count is INFINITY and mono.e_q < 1:
        raise NonTruncatingInfiniteProduct(
            "infinite pochhammer needs a positive q power in its argument"
        )
    # Factors with q exponent beyond the order are identically 1.
    full = (order - mono.e_q) // base + 1
    if full < 0:
        full = 0
    idx = full if count is INFINITY else min(count, full)
    key = (mono.key(), base)
    partials = env._poch.get(key)
    if partials is None:
        partials = [QSeries.constant(1, order, env.symbolic)]
        env._poch[key] = partials
    while len(partials) <= idx:
        j = len(partials) - 1
        factor = Monomial(mono.coeff, mono.e_z, mono.e_c, mono.e_q + base * j)
        partials.append(qs_mul_binomial(partials[-1], factor))
    return partials[idx]


def _divide(a, b):
    if a.is_zero():
        if b.is_zero():
            raise EvalError("0/0 in a series expression")
        return a
    m = b.as_single_monomial()
    if m is not None:
        if m.e_q == 0:
            inv = Fraction(1) / Fraction(m.coeff)
            if a.symbolic:
                poly = LaurentPoly({(-m.e_z, -m.e_c): inv})
                return a.scale(poly)
            return a.scale(inv)
        # Dividing by s*q^v shifts the window; only monomial numerators
        # keep full precision, anything else would lose top coefficients.
        am = a.as_single_monomial()
        if am is None:
            raise EvalError(
                "dividing a series by a positive power of q would lose truncation order"
            )
        if am.e_q < m.e_q:
            raise EvalError("negative net power of q in a series expression")
        quot = Monomial(
            Fraction(am.coeff) / Fraction(m.coeff),
            am.e_z - m.e_z,
            am.e_c - m.e_c,
            am.e_q - m.e_q,
        )
        return QSeries.from_monomial(quot, a.order, a.symbolic)
    if b.symbolic and b._coeffs[0] and not any(b._coeffs[1:]):
        # q-free polynomial denominator such as (1 - c): exact division
        # coefficient by coefficient.
        return qs_scalar_exact_div(a, LaurentPoly(b._coeffs[0]))
    return a * b.invert()


def _eval_var(e, env):
    if e.name == "q":
        return QSeries.from_monomial(Monomial(1, e_q=1), env.order, env.symbolic)
    try:
        v = env.bindings[e.name]
    except KeyError:
        raise EvalError(f"unbound variable {e.name!r}") from None
    if v is SYMBOLIC:
        if e.name not in ("z", "c"):
            raise ModeMismatch(f"only z and c may be symbolic, not {e.name!r}")
        if not env.symbolic:
            raise ModeMismatch(f"{e.name!r} is symbolic in a specialized evaluation")
        return QSeries.variable(e.name, env.order)
    if isinstance(v, bool):
        raise EvalError(f"variable {e.name!r} bound to a boolean")
    if isinstance(v, (int, Fraction)):
        return QSeries.constant(v, env.order, env.symbolic)
    if isinstance(v, Monomial):
        return QSeries.from_monomial(v, env.order, env.symbolic)
    if isinstance(v, QSeries):
        if v.order != env.order:
            raise OrderMismatch(f"{e.name!r} has order {v.order}, expected {env.order}")
        if v.symbolic != env.symbolic:
            raise ModeMismatch(f"{e.name!r} was built in the other coefficient mode")
        return v
    raise EvalError(f"variable {e.name!r} bound to unsupported value {v!r}")


def _eval_sum(e, env):
    lo = eval_int(e.lo, env)
    acc = QSeries(env.order, env.symbolic)
    if e.hi is not INFINITY:
        hi = eval_int(e.hi, env)
        for k in range(lo, hi + 1):
            acc = acc + evaluate(e.body, env.bind(e.var, k))
        return acc
    # Truncation contract: a term whose minimum q-degree exceeds the order
    # truncates to zero; three in a row means every later term stays out of
    # the window for the series in this catalog, so the sum is complete.
    cap = 100 + 20 * env.order
    consecutive = 0
    k = lo
    for _ in range(cap):
        term = evaluate(e.body, env.bind(e.var, k))
        if term.is_zero():
            consecutive += 1
            if consecutive >= 3:
                return acc
        else:
            consecutive = 0
            acc = acc + term
        k += 1
    raise NonConvergent(
        f"sum over {e.var!r} ran {cap} terms without leaving the truncation window"
    )


def evaluate(e, env):
    """Evaluate an AST to a QSeries at env.order in env's coefficient mode."""
    if isinstance(e, Num):
        return QSeries.constant(e.value, env.order, env.symbolic)
    if isinstance(e, Var):
        return _eval_var(e, env)
    if isinstance(e, Neg):
        return -evaluate(e.arg, env)
    if isinstance(e, Add):
        return evaluate(e.left, env) + evaluate(e.right, env)
    if isinstance(e, Sub):
        return evaluate(e.left, env) - evaluate(e.right, env)
    if isinstance(e, Mul):
        return evaluate(e.left, env) * evaluate(e.right, env)
    if isinstance(e, Div):
        return _divide(evaluate(e.left, env), evaluate(e.right, env))
    if isinstance(e, Pow):
        exp = eval_int(e.exponent, env)
        return evaluate(e.base, env) ** exp
    if isinstance(e, Poch):
        count = e.count if e.count is INFINITY else eval_int(e.count, env)
        if count is not INFINITY and count < 0:
            raise EvalError(f"pochhammer count {count} is negative")
        arg = evaluate(e.arg, env)
        if arg.is_zero():
            return QSeries.constant(1, env.order, env.symbolic)
        m = arg.as_single_monomial()
        if m is None:
            raise EvalError("pochhammer argument must evaluate to a single monomial")
        return _poch_cached(env, m, count, e.base)
    if isinstance(e, QBin):
        n = eval_int(e.n, env)
        k = eval_int(e.k, env)
        if n < 0:
            raise EvalError(f"qbin needs a nonnegative upper index, got {n}")
        return qs_qbin(n, k, env.order, env.symbolic, e.base)
    if isinstance(e, Sum):
        return _eval_sum(e, env)
    if isinstance(e, Chi12):
        return QSeries.constant(chi12_value(eval_int(e.arg, env)), env.order, env.symbolic)
    raise TypeError(f"not an expression node: {e!r}")


# -- diagnostics -------------------------------------------------------------


@dataclass
class ConvergenceReport:
    """Minimum q-degrees of the first terms of an infinite sum.

    degrees holds one entry per inspected term; None marks a term that left
    the truncation window entirely.  flagged means the inspected prefix gave
    no evidence that later terms leave the window.
    """

    degrees: list
    exited: bool
    eventually_increasing: bool

    @property
    def flagged(self):
        return not (self.exited or self.eventually_increasing)


def check_convergence(e, env, terms=30):
    """Inspect term degrees of an infinite sum without summing it."""
    if not isinstance(e, Sum) or e.hi is not INFINITY:
        raise EvalError("convergence diagnostics apply to infinite sums only")
    lo = eval_int(e.lo, env)
    degrees = []
    consecutive = 0
    exited = False
    for k in range(lo, lo + terms):
        t = evaluate(e.body, env.bind(e.var, k))
        d = t.min_degree()
        degrees.append(d)
        if d is None:
            consecutive += 1
            if consecutive >= 3:
                exited = True
                break
        else:
            consecutive = 0
    seen = [d for d in degrees if d is not None]
    run = 0
    if seen:
        run = 1
        for i in range(len(seen) - 1, 0, -1):
            if seen[i] > seen[i - 1]:
                run += 1
            else:
                break
    increasing = run >= 3 or (run == len(seen) and len(seen) >= 2)
    return ConvergenceReport(degrees, exited, increasing)


# -- coefficient polynomials -------------------------------------------------


def parse_poly(text):
    """Parse the canonical rendering of a Laurent polynomial in z and c."""
    env = Env(order=0, symbolic=True, bindings={"z": SYMBOLIC, "c": SYMBOLIC})
    series = evaluate(parse(text), env)
    return series.coefficient(0)
