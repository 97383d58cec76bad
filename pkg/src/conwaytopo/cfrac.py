"""Continued fractions of rationals and quadratic irrationals.

A :class:`ContinuedFraction` is a preperiod, a (possibly empty) period and a
global sign.  ``sign == -1`` is the negative presentation ``-[c0, c1, ...]``
kept on purpose for conjugates that fall into (-inf, 0) from the river side;
:func:`cf_canonical` converts it to ordinary digits.

Canonical form: digits after position 0 are positive, there are no zeros
(except possibly in position 0), the period is minimal, and the last
preperiod digit differs from the last period digit.  Finite expansions end in
a digit >= 2 unless they have a single digit.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, ParseError
from .quadratic import QuadraticIrrational

__all__ = [
    "ContinuedFraction",
    "cf_expand",
    "cf_expand_rational",
    "cf_expand_quadratic",
    "cf_value",
    "cf_normalize",
    "cf_canonical",
    "cf_negate",
    "cf_conjugate",
    "cf_is_pure_periodic",
    "qi_is_galois",
    "parse_cf",
]


@dataclass(frozen=True)
class ContinuedFraction:
    preperiod: tuple[int, ...]
    period: tuple[int, ...] = ()
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(int(d) for d in self.preperiod))
        object.__setattr__(self, "period", tuple(int(d) for d in self.period))
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if not self.preperiod and not self.period:
            raise ValueError("a continued fraction needs at least one digit")

    @property
    def is_periodic(self) -> bool:
        return bool(self.period)

    def digits(self) -> Iterator[int]:
        """All digits in order; infinite when periodic."""
        yield from self.preperiod
        while self.period:
            yield from self.period

    def __str__(self):
        pre = ",".join(map(str, self.preperiod))
        if self.period:
            body = f"[{pre};({','.join(map(str, self.period))})]"
        else:
            body = f"[{pre}]"
        return "-" + body if self.sign < 0 else body

    def to_json(self) -> dict:
        return {"preperiod": list(self.preperiod), "period": list(self.period), "sign": self.sign}

    @classmethod
    def from_json(cls, data: dict) -> "ContinuedFraction":
        return cls(tuple(data["preperiod"]), tuple(data.get("period", ())), data.get("sign", 1))


_CF_RE = re.compile(
    r"^\s*(-?)\s*\[\s*([-+\d\s,]*?)\s*(?:[;,]\s*\(\s*([-+\d\s,]+?)\s*\))?\s*\]\s*$"
)


def _int_list(text: str | None) -> tuple[int, ...]:
    if not text or not text.strip():
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise ParseError(f"bad digit list {text!r}") from exc


def parse_cf(text: str) -> ContinuedFraction:
    """Parse ``[a0,a1;(b1,b2)]``; ``[a0,a1,(b1,b2)]`` and a leading ``-`` are accepted.

    >>> parse_cf("[1,3,1,4;(7,2,3,9)]").period
    (7, 2, 3, 9)
    """
    m = _CF_RE.match(text)
    if not m:
        raise ParseError(f"not a continued fraction: {text!r}")
    sign, pre, per = m.groups()
    pre_digits, per_digits = _int_list(pre), _int_list(per)
    if not pre_digits and not per_digits:
        raise ParseError(f"empty continued fraction: {text!r}")
    return ContinuedFraction(pre_digits, per_digits, -1 if sign else 1)


# -- expansion ------------------------------------------------------------


def cf_expand_rational(x) -> ContinuedFraction:
    x = Fraction(x)
    n, d = x.numerator, x.denominator
    digits = []
    while d:
        q = n // d
        digits.append(q)
        n, d = d, n - q * d
    return ContinuedFraction(tuple(digits))


def _surd_state(x: QuadraticIrrational) -> tuple[int, int, int]:
    """Write x as (P + sqrt(N))/Q with Q dividing N - P*P."""
    N = x.B * x.B * x.D
    if x.B > 0:
        P, Q = x.A, x.C
    else:
        P, Q = -x.A, -x.C
    if (N - P * P) % Q:
        P, N, Q = P * abs(Q), N * Q * Q, Q * abs(Q)
    return P, N, Q


def cf_expand_quadratic(x: QuadraticIrrational) -> ContinuedFraction:
    """Preperiod and minimal period, found by exact repetition of the remainder.

    The remainder after each digit is kept as the integer pair (P, Q) of
    (P + sqrt(N))/Q, so repetition is plain tuple equality.
    """
    x = QuadraticIrrational.coerce(x)
    if x.is_rational:
        raise DomainError(f"{x} is rational; use cf_expand_rational")
    P, N, Q = _surd_state(x)
    r = math.isqrt(N)
    seen: dict[tuple[int, int], int] = {}
    digits = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(digits)
        a = (P + r) // Q if Q > 0 else (-P - r - 1) // -Q
        digits.append(a)
        P = a * Q - P
        Q = (N - P * P) // Q
    start = seen[(P, Q)]
    return ContinuedFraction(tuple(digits[:start]), tuple(digits[start:]))


def cf_expand(x) -> ContinuedFraction:
    """Expansion of a rational or quadratic irrational value."""
    if isinstance(x, QuadraticIrrational):
        return cf_expand_quadratic(x) if not x.is_rational else cf_expand_rational(x.as_fraction())
    return cf_expand_rational(x)


# -- evaluation -----------------------------------------------------------


def _mobius(digits: Iterable[int]) -> tuple[int, int, int, int]:
    p0, p1, q0, q1 = 1, 0, 0, 1
    for d in digits:
        p0, p1, q0, q1 = d * p0 + p1, p0, d * q0 + q1, q0
    return p0, p1, q0, q1


def cf_value(cf: ContinuedFraction):
    """Exact value: a Fraction for finite input, a QuadraticIrrational otherwise."""
    if not cf.period:
        p0, _, q0, _ = _mobius(cf.preperiod)
        if q0 == 0:
            raise DomainError(f"{cf} folds to a zero denominator")
        return cf.sign * Fraction(p0, q0)
    if any(d <= 0 for d in cf.period):
        cf = cf_normalize(cf)
        if any(d <= 0 for d in cf.period):
            raise DomainError(f"period digits must be positive: {cf}")
    m00, m01, m10, m11 = _mobius(cf.period)
    # beta = [period, beta] is the root > 1 of m10*b^2 + (m11-m00)*b - m01.
    # Dividing out the content keeps the discriminant at the size of the
    # class invariant instead of growing with the matrix entries.
    g = math.gcd(m10, m11 - m00, m01)
    u, v, w = m10 // g, (m11 - m00) // g, -m01 // g
    beta = QuadraticIrrational(-v, 1, v * v - 4 * u * w, 2 * u)
    p0, p1, q0, q1 = _mobius(cf.preperiod)
    value = (p0 * beta + p1) / (q0 * beta + q1)
    return value if cf.sign > 0 else -value


# -- normalization --------------------------------------------------------


def _minimal_period(period: Sequence[int]) -> tuple[int, ...]:
    n = len(period)
    for size in range(1, n + 1):
        if n % size == 0 and tuple(period[:size]) * (n // size) == tuple(period):
            return tuple(period[:size])
    return tuple(period)


def _merge_zeros(digits: list[int]) -> list[int]:
    # [.., c, 0, d, ..] -> [.., c+d, ..] for zeros past position 0
    out: list[int] = []
    for d in digits:
        out.append(d)
        while len(out) >= 3 and out[-2] == 0:
            out[-3:] = [out[-3] + out[-1]]
    return out


def cf_normalize(cf: ContinuedFraction | Sequence[int]) -> ContinuedFraction:
    """Remove zeros, shorten the period and rotate it into canonical position.

    >>> str(cf_normalize(ContinuedFraction((0, 2, 0, 1, 1), (2,))))
    '[0,3,1;(2)]'
    """
    if not isinstance(cf, ContinuedFraction):
        cf = ContinuedFraction(tuple(cf))
    period = cf.period
    if not period:
        digits = _merge_zeros(list(cf.preperiod))
        while len(digits) >= 2 and digits[-1] == 0:
            # [.., c, 0] is [..] with c dropped: 1/0 sends c to infinity
            if len(digits) == 2:
                raise DomainError(f"{cf} has an infinite value")
            del digits[-2:]
        if len(digits) >= 2 and digits[-1] == 1:
            digits[-2:] = [digits[-2] + 1]
        return ContinuedFraction(tuple(digits), (), cf.sign)

    if any(d == 0 for d in period):
        raise DomainError(f"zeros inside the period are not supported: {cf}")
    digits = _merge_zeros(list(cf.preperiod) + list(period) * 2)
    period = _minimal_period(period)
    n = len(period)
    while len(digits) > n and digits[-n:] == list(period):
        del digits[-n:]
    # rotate right by `shift` while the preperiod ends like the period
    shift = 0
    while digits and digits[-1] == period[(-1 - shift) % n]:
        digits.pop()
        shift += 1
    cut = (n - shift) % n
    return ContinuedFraction(tuple(digits), period[cut:] + period[:cut], cf.sign)


def _negate_positive(digits: list[int], period: tuple[int, ...]) -> ContinuedFraction:
    """Canonical digits of -[digits; period] via -[c0,c1,...] = [-c0-1, 1, c1-1, ...]."""
    if period:
        digits = digits + list(period) * 2
    if len(digits) == 1:
        return ContinuedFraction((-digits[0],))
    c0, c1, rest = digits[0], digits[1], digits[2:]
    return cf_normalize(ContinuedFraction(tuple([-c0 - 1, 1, c1 - 1] + rest), period))


def cf_canonical(cf: ContinuedFraction) -> ContinuedFraction:
    """Canonical positive-sign presentation of the same value."""
    cf = cf_normalize(cf)
    if cf.sign > 0:
        return cf
    return _negate_positive(list(cf.preperiod), cf.period)


def cf_negate(cf: ContinuedFraction) -> ContinuedFraction:
    """Canonical expansion of -x.

    >>> str(cf_negate(ContinuedFraction((2, 3))))
    '[-3,1,2]'
    """
    cf = cf_normalize(cf)
    if cf.sign < 0:
        return ContinuedFraction(cf.preperiod, cf.period)
    return _negate_positive(list(cf.preperiod), cf.period)


# -- conjugation ----------------------------------------------------------


def _conj_lower(head: list[int], ak: int, period: tuple[int, ...]) -> ContinuedFraction:
    # alpha = [head.., ak, (b1..bl)] with ak < bl and head nonempty
    bl = period[-1]
    tail = period[-2::-1] + period[-1:]  # b_{l-1}, ..., b_1, b_l
    pre = head[:-1] + [head[-1] - 1, 1, bl - ak - 1]
    return cf_normalize(ContinuedFraction(tuple(pre), tail))


def cf_conjugate(cf: ContinuedFraction) -> ContinuedFraction:
    """Expansion of the Galois conjugate, read off the digits alone.

    Four cases on the last preperiod digit a_k against the last period
    digit b_l, plus the pure periodic case.  When a_k > b_l the expansion is
    first rewritten as [.., a_k - b_l, 0, (b_l, b_1, .., b_{l-1})], which
    reduces it to the a_k < b_l case.

    >>> str(cf_conjugate(parse_cf("[0,2,3;(2)]")))
    '[0,3,1;(2)]'
    >>> str(cf_conjugate(parse_cf("[;(1)]")))
    '-[0;(1)]'
    """
    if not cf.period:
        raise DomainError("conjugation needs a periodic (irrational) expansion")
    if cf.sign < 0:
        return cf_negate(cf_conjugate(ContinuedFraction(cf.preperiod, cf.period)))
    cf = cf_canonical(cf)
    pre, period = list(cf.preperiod), cf.period
    if not pre:
        return cf_normalize(ContinuedFraction((0,), period[::-1], -1))
    ak, bl = pre[-1], period[-1]
    if len(pre) == 1 and ak < bl:
        tail = period[-2::-1] + period[-1:]
        return cf_normalize(ContinuedFraction((bl - ak,), tail, -1))
    if ak > bl:
        rotated = period[-1:] + period[:-1]
        return _conj_lower(pre[:-1] + [ak - bl], 0, rotated)
    return _conj_lower(pre[:-1], ak, period)


# -- Galois ---------------------------------------------------------------


def cf_is_pure_periodic(cf: ContinuedFraction) -> bool:
    if not cf.period:
        return False
    cf = cf_canonical(cf)
    return not cf.preperiod


def qi_is_galois(x) -> bool:
    """True when x > 1 and -1 < conjugate(x) < 0, decided exactly."""
    if not isinstance(x, QuadraticIrrational) or x.is_rational:
        return False
    xb = x.conjugate()
    return x > 1 and xb < 0 and xb > -1
