"""Exact quadratic irrationals (A + B*sqrt(D))/C over Python integers.

Values are kept in a canonical form so that equality is a field-wise
comparison: C > 0, D squarefree, gcd(A, B, C) = 1, and anything whose
radical vanishes (B = 0 or D a perfect square) is stored as a rational with
B = D = 0.  No floating point is used anywhere.
"""
from __future__ import annotations

import re
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache
import math
from math import gcd, isqrt
from numbers import Rational

from .errors import DomainError, ParseError

__all__ = [
    "QuadraticIrrational",
    "qi_normalize",
    "qi_conjugate",
    "qi_floor",
    "qi_compare",
    "qi_recip_shift",
    "parse_value",
    "as_exact",
]

# Radicands above this are only partially reduced (trial division stops at
# _TRIAL_LIMIT); equality then falls back to the exact comparison.
_TRIAL_LIMIT = 10**6


def _sign(n: int) -> int:
    return (n > 0) - (n < 0)


def _surd_sign(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d) for integers a, b and d >= 0."""
    if b == 0 or d == 0:
        return _sign(a)
    sa, sb = _sign(a), _sign(b)
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    lhs, rhs = a * a, b * b * d
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


@lru_cache(maxsize=4096)
def _square_split(d: int) -> tuple[int, int]:
    """Return (f, r) with d = f*f*r and r squarefree.

    Trial division up to the cube root of d suffices: the cofactor left over
    has at most two prime factors, so it is squarefree unless it is a
    perfect square.  Beyond _TRIAL_LIMIT**3 the reduction is best effort.
    """
    if d > _TRIAL_LIMIT**3:
        limit = _TRIAL_LIMIT
    else:
        limit = int(round(d ** (1 / 3))) + 2
    f, sf, r = 1, 1, d
    p = 2
    while p <= limit and p * p * p <= r:
        if r % p == 0:
            e = 0
            while r % p == 0:
                r //= p
                e += 1
            f *= p ** (e // 2)
            if e % 2:
                sf *= p
        p += 1 if p == 2 else 2
    s = isqrt(r)
    if s * s == r:
        return f * s, sf
    return f, sf * r


class QuadraticIrrational:
    """The exact real number (A + B*sqrt(D))/C in canonical form.

    Construct directly with any integers (C != 0, D >= 0); the result is
    normalized.  Rationals are represented with B == D == 0.

    >>> QuadraticIrrational(12, 2, 2, 34)
    QuadraticIrrational(6, 1, 2, 17)
    >>> QuadraticIrrational(3, 1, 4, 2)
    QuadraticIrrational(5, 0, 0, 2)
    """

    __slots__ = ("A", "B", "D", "C")

    def __init__(self, A: int, B: int = 0, D: int = 0, C: int = 1):
        A, B, D, C = int(A), int(B), int(D), int(C)
        if C == 0:
            raise ZeroDivisionError("quadratic irrational with zero denominator")
        if D < 0:
            raise DomainError("negative radicand: complex values are not supported")
        if B != 0 and D != 0:
            f, D = _square_split(D)
            B *= f
            if D == 1:
                A, B, D = A + B, 0, 0
        if B == 0 or D == 0:
            B = D = 0
        if C < 0:
            A, B, C = -A, -B, -C
        g = gcd(gcd(A, B), C)
        if g > 1:
            A, B, C = A // g, B // g, C // g
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "C", C)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticIrrational is immutable")

    @classmethod
    def sqrt(cls, d: int) -> "QuadraticIrrational":
        return cls(0, 1, d, 1)

    @classmethod
    def coerce(cls, x) -> "QuadraticIrrational":
        if isinstance(x, QuadraticIrrational):
            return x
        if isinstance(x, Rational):
            x = Fraction(x)
            return cls(x.numerator, 0, 0, x.denominator)
        raise TypeError(f"cannot convert {type(x).__name__} to QuadraticIrrational")

    # -- predicates and views -------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.B == 0

    def as_fraction(self) -> Fraction:
        if self.B:
            raise DomainError(f"{self} is irrational")
        return Fraction(self.A, self.C)

    def conjugate(self) -> "QuadraticIrrational":
        return _raw(self.A, -self.B, self.D, self.C)

    def norm(self) -> Fraction:
        """x * conjugate(x), a rational."""
        return Fraction(self.A * self.A - self.B * self.B * self.D, self.C * self.C)

    def trace(self) -> Fraction:
        return Fraction(2 * self.A, self.C)

    def __floor__(self) -> int:
        if self.B == 0:
            return self.A // self.C
        s = isqrt(self.B * self.B * self.D)
        if self.B > 0:
            return (self.A + s) // self.C
        return (self.A - s - 1) // self.C

    def sign(self) -> int:
        return _surd_sign(self.A, self.B, self.D)

    # -- arithmetic -----------------------------------------------------

    def _common(self, other):
        try:
            other = QuadraticIrrational.coerce(other)
        except TypeError:
            return None
        if self.B and other.B and self.D != other.D:
            raise DomainError("values lie in different quadratic fields")
        return other

    def __add__(self, other):
        o = self._common(other)
        if o is None:
            return NotImplemented
        d = self.D or o.D
        return QuadraticIrrational(
            self.A * o.C + o.A * self.C, self.B * o.C + o.B * self.C, d, self.C * o.C
        )

    __radd__ = __add__

    def __neg__(self):
        return _raw(-self.A, -self.B, self.D, self.C)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __sub__(self, other):
        o = self._common(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._common(other)
        if o is None:
            return NotImplemented
        d = self.D or o.D
        return QuadraticIrrational(
            self.A * o.A + self.B * o.B * d,
            self.A * o.B + self.B * o.A,
            d,
            self.C * o.C,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "QuadraticIrrational":
        n = self.A * self.A - self.B * self.B * self.D
        if n == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return QuadraticIrrational(self.A * self.C, -self.B * self.C, self.D, n)

    def __truediv__(self, other):
        o = self._common(other)
        if o is None:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    # -- comparison -----------------------------------------------------

    def __eq__(self, other):
        try:
            o = QuadraticIrrational.coerce(other)
        except TypeError:
            return NotImplemented
        if (self.A, self.B, self.D, self.C) == (o.A, o.B, o.D, o.C):
            return True
        if self.B and o.B and self.D != o.D and max(self.D, o.D) > _TRIAL_LIMIT**3:
            return qi_compare(self, o) == 0
        return False

    def __hash__(self):
        if self.B == 0:
            return hash(Fraction(self.A, self.C))
        return hash((self.A, self.B, self.D, self.C))

    def __lt__(self, other):
        return qi_compare(self, other) < 0

    def __le__(self, other):
        return qi_compare(self, other) <= 0

    def __gt__(self, other):
        return qi_compare(self, other) > 0

    def __ge__(self, other):
        return qi_compare(self, other) >= 0

    # -- printing -------------------------------------------------------

    def __repr__(self):
        return f"QuadraticIrrational({self.A}, {self.B}, {self.D}, {self.C})"

    def __str__(self):
        if self.B == 0:
            return str(self.A) if self.C == 1 else f"{self.A}/{self.C}"
        radical = f"sqrt({self.D})"
        if abs(self.B) != 1:
            radical = f"{abs(self.B)}*{radical}"
        if self.A == 0:
            num = radical if self.B > 0 else "-" + radical
            return num if self.C == 1 else f"{num}/{self.C}"
        num = f"({self.A}{'+' if self.B > 0 else '-'}{radical})"
        return num if self.C == 1 else f"{num}/{self.C}"

    def to_decimal(self, places: int = 12) -> Decimal:
        """Decimal value truncated toward -inf; error below 10**-places."""
        scale = 10**places
        n = math.floor(QuadraticIrrational(self.A * scale, self.B * scale, self.D, self.C))
        return Decimal(n).scaleb(-places)

    def __float__(self):
        return float(self.to_decimal(20))


def _raw(A, B, D, C) -> QuadraticIrrational:
    # skips normalization; callers pass canonical data
    x = object.__new__(QuadraticIrrational)
    object.__setattr__(x, "A", A)
    object.__setattr__(x, "B", B)
    object.__setattr__(x, "D", D)
    object.__setattr__(x, "C", C)
    return x


def qi_normalize(A: int, B: int, D: int, C: int) -> QuadraticIrrational:
    return QuadraticIrrational(A, B, D, C)


def qi_conjugate(x: QuadraticIrrational) -> QuadraticIrrational:
    return QuadraticIrrational.coerce(x).conjugate()


def qi_floor(x) -> int:
    """Greatest integer <= x, via integer square roots only."""
    return math.floor(QuadraticIrrational.coerce(x))


def qi_compare(x, y) -> int:
    """Exact three-way comparison: -1, 0 or 1."""
    x = QuadraticIrrational.coerce(x)
    y = QuadraticIrrational.coerce(y)
    p = x.A * y.C - y.A * x.C
    if x.B == 0 or y.B == 0 or x.D == y.D:
        d = x.D or y.D
        return _surd_sign(p, x.B * y.C - y.B * x.C, d)
    # p + u*sqrt(d1) + v*sqrt(d2), different radicands
    u, v = x.B * y.C, -y.B * x.C
    s1, s2 = _surd_sign(p, u, x.D), _sign(v)
    if s1 == 0 or s1 == s2:
        return s2 if s1 == 0 else s1
    # opposite signs: compare squares
    s = _surd_sign(p * p + u * u * x.D - v * v * y.D, 2 * p * u, x.D)
    if s == 0:
        return 0
    return s1 if s > 0 else s2


def qi_recip_shift(x, n: int) -> QuadraticIrrational:
    """1/(x - n), the continued-fraction step map."""
    return (QuadraticIrrational.coerce(x) - n).reciprocal()


def as_exact(x):
    """Collapse a rational QuadraticIrrational to a Fraction."""
    if isinstance(x, QuadraticIrrational) and x.is_rational:
        return x.as_fraction()
    return x


_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)|(.))")


def parse_value(text: str) -> QuadraticIrrational:
    """Parse `(A+B*sqrt(D))/C`, `A/C`, `sqrt(D)` or integers.

    Any arithmetic expression in +, -, *, / and parentheses over integers
    and square roots of one radicand is accepted.

    >>> str(parse_value("(1+sqrt(5))/2"))
    '(1+sqrt(5))/2'
    """
    tokens = []
    for m in _TOKEN.finditer(text.strip()):
        num, fn, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif fn:
            tokens.append(("sqrt", None))
        elif op and op.strip():
            if op not in "+-*/()":
                raise ParseError(f"unexpected character {op!r} in {text!r}")
            tokens.append((op, None))
    if not tokens:
        raise ParseError("empty value")
    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def take(kind):
        nonlocal pos
        if peek() != kind:
            raise ParseError(f"expected {kind!r} in {text!r}")
        tok = tokens[pos]
        pos += 1
        return tok

    def expr():
        v = term()
        while peek() in ("+", "-"):
            op = take(peek())[0]
            rhs = term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term():
        v = unary()
        while peek() in ("*", "/"):
            op = take(peek())[0]
            rhs = unary()
            v = v * rhs if op == "*" else v / rhs
        return v

    def unary():
        if peek() == "-":
            take("-")
            return -unary()
        if peek() == "+":
            take("+")
            return unary()
        return atom()

    def atom():
        kind = peek()
        if kind == "num":
            return QuadraticIrrational(take("num")[1])
        if kind == "sqrt":
            take("sqrt")
            take("(")
            inner = expr()
            take(")")
            if not inner.is_rational or inner.C != 1:
                raise ParseError("sqrt() takes an integer argument")
            return QuadraticIrrational.sqrt(inner.A)
        if kind == "(":
            take("(")
            v = expr()
            take(")")
            return v
        raise ParseError(f"unexpected token in {text!r}")

    try:
        value = expr()
    except ZeroDivisionError as exc:
        raise ParseError(f"division by zero in {text!r}") from exc
    except DomainError as exc:
        raise ParseError(str(exc)) from exc
    if pos != len(tokens):
        raise ParseError(f"trailing input in {text!r}")
    return value
