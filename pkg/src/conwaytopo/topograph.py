"""Binary quadratic forms and walks on their Conway topograph.

A vertex of the topograph is a superbase (e1, e2, e3 = -(e1+e2)).  The
cursor keeps the SL2 basis matrix [[p, q], [r, s]] whose columns are e1 and
e2, together with the values a = Q(e1), b = Q(e2), c = Q(e1 + e2).

A left turn keeps e1 and replaces e2 by e1 + e2 (right multiplication by
L = [[1, 1], [0, 1]]); a right turn replaces e1 by e1 + e2 (R = [[1, 0],
[1, 1]]).  Products of turns are then the Farey-tree matrices L^c0 R^c1 ...
and the values follow from the parallelogram rule alone.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import DomainError, ParseError
from .quadratic import QuadraticIrrational

__all__ = [
    "QuadraticForm",
    "SuperbaseTriple",
    "TopographCursor",
    "FormClass",
    "INFINITY",
    "L",
    "R",
    "IDENTITY",
    "mat_mul",
    "word_matrix",
    "digits_to_turns",
    "form_values",
    "step",
    "walk",
    "transform_form",
    "hat_matrix",
    "vieta_flip",
    "markov_discriminant",
    "classify_form",
    "roots",
    "is_galois_form",
    "parse_form",
]

Matrix = tuple[int, int, int, int]  # (p, q, r, s) for [[p, q], [r, s]]

IDENTITY: Matrix = (1, 0, 0, 1)
L: Matrix = (1, 1, 0, 1)
R: Matrix = (1, 0, 1, 1)

# Marker for the root at infinity of a form with a = 0.
INFINITY = "inf"


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    p, q, r, s = x
    t, u, v, w = y
    return (p * t + q * v, p * u + q * w, r * t + s * v, r * u + s * w)


def det(m: Matrix) -> int:
    return m[0] * m[3] - m[1] * m[2]


def word_matrix(word: Iterable[str]) -> Matrix:
    m = IDENTITY
    for t in word:
        m = mat_mul(m, L if t == "L" else R)
    return m


def digits_to_turns(digits: Iterable[int], start: str = "L") -> Iterator[str]:
    """c0 turns of `start`, then c1 of the other kind, alternating.

    A zero digit contributes no turns but still flips the kind.
    """
    kind, other = start, "R" if start == "L" else "L"
    for d in digits:
        if d < 0:
            raise DomainError("turn blocks need nonnegative digits")
        for _ in range(d):
            yield kind
        kind, other = other, kind


@dataclass(frozen=True)
class QuadraticForm:
    """Q(x, y) = a*x^2 + h*x*y + b*y^2 with integer coefficients."""

    a: int
    h: int
    b: int

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.h * x * y + self.b * y * y

    @property
    def discriminant(self) -> int:
        return self.h * self.h - 4 * self.a * self.b

    def doubled_matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """2Q as an integral symmetric matrix [[2a, h], [h, 2b]]."""
        return ((2 * self.a, self.h), (self.h, 2 * self.b))

    def __neg__(self) -> "QuadraticForm":
        return QuadraticForm(-self.a, -self.h, -self.b)

    def coefficients(self) -> tuple[int, int, int]:
        return (self.a, self.h, self.b)

    def __str__(self):
        terms = []
        for coef, mono in ((self.a, "x^2"), (self.h, "x*y"), (self.b, "y^2")):
            if coef == 0:
                continue
            mag = "" if abs(coef) == 1 else f"{abs(coef)}*"
            sign = "-" if coef < 0 else ("+" if terms else "")
            terms.append(f"{sign}{mag}{mono}")
        return "".join(terms) or "0"


class SuperbaseTriple(NamedTuple):
    a: int
    b: int
    c: int


@dataclass(frozen=True)
class TopographCursor:
    form: QuadraticForm
    basis: Matrix
    triple: SuperbaseTriple

    @classmethod
    def root(cls, form: QuadraticForm) -> "TopographCursor":
        return cls(form, IDENTITY, form_values(form))

    @property
    def e1(self) -> tuple[int, int]:
        return (self.basis[0], self.basis[2])

    @property
    def e2(self) -> tuple[int, int]:
        return (self.basis[1], self.basis[3])


_MONO = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(x\s*\^\s*2|y\s*\^\s*2|x\s*\*?\s*y|y\s*\*?\s*x|x|y)?")


def parse_form(text: str) -> QuadraticForm:
    """Parse ``a,h,b`` or a polynomial such as ``x^2-2*x*y-2*y^2``.

    >>> parse_form("x^2-2*x*y-2*y^2")
    QuadraticForm(a=1, h=-2, b=-2)
    """
    text = text.strip()
    if re.fullmatch(r"\s*[-+]?\d+\s*,\s*[-+]?\d+\s*,\s*[-+]?\d+\s*", text):
        a, h, b = (int(t) for t in text.split(","))
        return QuadraticForm(a, h, b)
    coef = {"x2": 0, "xy": 0, "y2": 0}
    body = text.replace(" ", "").replace("**", "^")
    if not body:
        raise ParseError("empty form")
    pos = 0
    while pos < len(body):
        m = _MONO.match(body, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse form {text!r}")
        sign, num, mono = m.groups()
        if mono is None or mono in ("x", "y"):
            raise ParseError(f"form must be homogeneous of degree 2: {text!r}")
        if pos > 0 and not sign:
            raise ParseError(f"missing operator in {text!r}")
        value = int(num) if num else 1
        if sign == "-":
            value = -value
        key = {"x^2": "x2", "y^2": "y2"}.get(mono, "xy")
        coef[key] += value
        pos = m.end()
    return QuadraticForm(coef["x2"], coef["xy"], coef["y2"])


# -- local rules ----------------------------------------------------------


def form_values(Q: QuadraticForm) -> SuperbaseTriple:
    return SuperbaseTriple(Q.a, Q.b, Q.a + Q.b + Q.h)


def step(cur: TopographCursor, turn: str) -> TopographCursor:
    """Move to a child vertex with the arithmetic progression rule."""
    a, b, c = cur.triple
    p, q, r, s = cur.basis
    if turn == "L":
        return TopographCursor(cur.form, (p, p + q, r, r + s), SuperbaseTriple(a, c, 2 * (a + c) - b))
    if turn == "R":
        return TopographCursor(cur.form, (p + q, q, r + s, s), SuperbaseTriple(c, b, 2 * (b + c) - a))
    raise ValueError(f"turn must be 'L' or 'R', got {turn!r}")


def walk(Q: QuadraticForm, word: Iterable[str]) -> list[SuperbaseTriple]:
    cur = TopographCursor.root(Q)
    out = [cur.triple]
    for t in word:
        cur = step(cur, t)
        out.append(cur.triple)
    return out


def transform_form(Q: QuadraticForm, A: Matrix) -> QuadraticForm:
    """The form Q o A, i.e. A^t Q A."""
    p, q, r, s = A
    if det(A) != 1:
        raise DomainError(f"matrix {A} is not in SL2(Z)")
    return QuadraticForm(
        Q(p, r),
        2 * Q.a * p * q + Q.h * (p * s + q * r) + 2 * Q.b * r * s,
        Q(q, s),
    )


def hat_matrix(A: Matrix) -> tuple[tuple[int, int, int], ...]:
    """3x3 matrix sending (a, h, b) of Q to (a, h, b) of Q o A.

    This is a right action: hat(AB) = hat(B) @ hat(A).  Its trace is
    tr(A)^2 - 1 and its eigenvalues are lam^2, 1, lam^-2.
    """
    p, q, r, s = A
    if det(A) != 1:
        raise DomainError(f"matrix {A} is not in SL2(Z)")
    return (
        (p * p, p * r, r * r),
        (2 * p * q, p * s + q * r, 2 * r * s),
        (q * q, q * s, s * s),
    )


def vieta_flip(t: SuperbaseTriple, position: str) -> SuperbaseTriple:
    """Replace one entry x by 2*(sum of the other two) - x."""
    a, b, c = t
    if position == "a":
        return SuperbaseTriple(2 * (b + c) - a, b, c)
    if position == "b":
        return SuperbaseTriple(a, 2 * (a + c) - b, c)
    if position == "c":
        return SuperbaseTriple(a, b, 2 * (a + b) - c)
    raise ValueError(f"position must be 'a', 'b' or 'c', got {position!r}")


def markov_discriminant(t: Sequence[int]) -> int:
    a, b, c = t
    return a * a + b * b + c * c - 2 * a * b - 2 * a * c - 2 * b * c


# -- classification -------------------------------------------------------


class FormClass(str, Enum):
    POSITIVE_DEFINITE = "positive-definite"
    NEGATIVE_DEFINITE = "negative-definite"
    SEMIDEFINITE = "semidefinite"
    INDEFINITE_ANISOTROPIC = "indefinite-anisotropic"
    INDEFINITE_ISOTROPIC = "indefinite-isotropic"

    def __str__(self):
        return self.value


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def classify_form(Q: QuadraticForm) -> FormClass:
    D = Q.discriminant
    if D < 0:
        return FormClass.POSITIVE_DEFINITE if Q.a > 0 else FormClass.NEGATIVE_DEFINITE
    if D == 0:
        return FormClass.SEMIDEFINITE
    if _is_square(D):
        return FormClass.INDEFINITE_ISOTROPIC
    return FormClass.INDEFINITE_ANISOTROPIC


def _as_value(x: QuadraticIrrational):
    return x.as_fraction() if x.is_rational else x


def roots(Q: QuadraticForm):
    """Roots of Q(t, 1) = 0, the one of larger modulus first.

    Rational roots come back as Fractions.  When a = 0 one root is at
    infinity and is reported as INFINITY.  On a modulus tie the positive
    root comes first.
    """
    D = Q.discriminant
    if D < 0:
        raise DomainError(f"{Q} is definite and has no real roots")
    if Q.a == 0:
        if Q.h == 0:
            raise DomainError(f"{Q} vanishes identically in x")
        return INFINITY, Fraction(-Q.b, Q.h)
    plus = QuadraticIrrational(-Q.h, 1, D, 2 * Q.a)
    minus = QuadraticIrrational(-Q.h, -1, D, 2 * Q.a)
    if D == 0:
        return _as_value(plus), _as_value(minus)
    # plus^2 - minus^2 = -h*sqrt(D)/a^2, so plus dominates exactly when h < 0
    if Q.h > 0:
        plus, minus = minus, plus
    elif Q.h == 0 and plus < 0:
        plus, minus = minus, plus
    return _as_value(plus), _as_value(minus)


def is_galois_form(Q: QuadraticForm) -> bool:
    a, b, c = form_values(Q)
    return a * b < 0 and a * c < 0 and a * (2 * a + 2 * b - c) > 0
