"""Growth of matrix products and form values along Farey-tree paths.

A path is the turn sequence c0 x L, c1 x R, c2 x L, ... of a nonnegative
real with continued fraction [c0, c1, ...].  All integer data is exact;
only the logarithms at the very end are decimal approximations, computed
with a guard of many digits so the absolute error stays far below 1e-12.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from itertools import islice
from numbers import Rational
from typing import Iterator, Optional, Union

from .cfrac import ContinuedFraction, cf_expand, cf_value
from .errors import DomainError
from .quadratic import QuadraticIrrational
from .topograph import (
    IDENTITY,
    L,
    R,
    Matrix,
    QuadraticForm,
    TopographCursor,
    det,
    digits_to_turns,
    mat_mul,
    step,
)

__all__ = [
    "Path",
    "ExactExponent",
    "GrowthSeries",
    "path_matrices",
    "spectral_radius",
    "lambda_monoid",
    "lambda_monoid_exact",
    "lambda_form",
    "sandwich_check",
    "SandwichReport",
    "theorem_ratio",
    "decimal_log",
    "form_h_norm",
]

_PREC = 60
_LN2_CACHE: dict[int, Decimal] = {}


def decimal_log(n: int, prec: int = _PREC) -> Decimal:
    """ln(n) for a positive integer n of any size.

    Only the top 200 bits are fed to Decimal.ln, the rest becomes k*ln 2,
    so the cost does not depend on the size of n.
    """
    if n <= 0:
        raise DomainError("logarithm of a nonpositive number")
    k = max(n.bit_length() - 200, 0)
    top = n >> k
    with localcontext() as ctx:
        ctx.prec = prec
        if prec not in _LN2_CACHE:
            _LN2_CACHE[prec] = Decimal(2).ln()
        return Decimal(top).ln() + k * _LN2_CACHE[prec]


# -- paths ----------------------------------------------------------------


PathInput = Union[int, Fraction, QuadraticIrrational, ContinuedFraction, str]


class Path:
    """The turn sequence of a nonnegative real, a CF or an explicit word.

    ``mirrored`` is true when the path starts with a left turn (xi > 1); the
    growth of such paths is measured on the first row instead of the second.
    Zero is the infinite all-right path; other rationals give finite paths.
    """

    def __init__(self, source: PathInput):
        self.source = source
        self.value = None
        self.cf: Optional[ContinuedFraction] = None
        self.word: Optional[str] = None
        if isinstance(source, str):
            if set(source) - {"L", "R"}:
                raise DomainError(f"turn words use only L and R: {source!r}")
            self.word = source
            self.mirrored = source[:1] == "L"
            return
        if isinstance(source, ContinuedFraction):
            if source.sign < 0 or any(d < 0 for d in source.preperiod + source.period):
                raise DomainError("paths need xi >= 0; reflect negative values with x -> -x first")
            self.cf = source
            self.value = cf_value(source)
        else:
            if isinstance(source, Rational) and not isinstance(source, QuadraticIrrational):
                source = Fraction(source)
            if source < 0:
                raise DomainError(
                    f"paths need xi >= 0, got {source}; Lambda is invariant under the "
                    "reflection x -> -x, so pass the absolute value"
                )
            self.value = source
            self.cf = cf_expand(source)
        self.mirrored = self.value > 1

    @property
    def is_infinite(self) -> bool:
        if self.word is not None:
            return False
        return self.value == 0 or self.cf.is_periodic

    def turns(self) -> Iterator[str]:
        if self.word is not None:
            yield from self.word
        elif self.value == 0:
            while True:
                yield "R"
        else:
            yield from digits_to_turns(self.cf.digits())

    def __repr__(self):
        return f"Path({self.source!r})"


def _as_path(p) -> Path:
    return p if isinstance(p, Path) else Path(p)


def path_matrices(path, n: int) -> tuple[list[Matrix], bool]:
    """Prefix products A_1..A_k, k <= n, and whether the path ran out."""
    if n < 0:
        raise DomainError("step count must be nonnegative")
    path = _as_path(path)
    out: list[Matrix] = []
    m = IDENTITY
    for t in islice(path.turns(), n):
        m = mat_mul(m, L if t == "L" else R)
        out.append(m)
    return out, len(out) < n


def spectral_radius(A: Matrix) -> QuadraticIrrational:
    if det(A) != 1:
        raise DomainError(f"{A} is not in SL2(Z)")
    tr = A[0] + A[3]
    if abs(tr) < 2:
        return QuadraticIrrational(1)
    tr = abs(tr)
    return QuadraticIrrational(tr, 1, tr * tr - 4, 2)


# -- series ---------------------------------------------------------------


def form_h_norm(a: int, b: int, c: int) -> int:
    """max(|a|, |b|, |h|) for the form with superbase values a, b, c."""
    return max(abs(a), abs(b), abs(c - a - b))


@dataclass
class ExactExponent:
    """Lambda = ln(rho) / period_turns; rho = 1, period_turns = 0 means zero."""

    rho: QuadraticIrrational
    period_turns: int

    def value(self, prec: int = _PREC) -> Decimal:
        if self.period_turns == 0:
            return Decimal(0)
        # ln(rho) from an integer scaling keeps everything exact until the log
        scale = 10 ** (prec + 5)
        num = math.floor(self.rho * scale)
        with localcontext() as ctx:
            ctx.prec = prec
            return (decimal_log(num, prec + 10) - decimal_log(scale, prec + 10)) / self.period_turns

    def to_json(self) -> dict:
        return {"rho": str(self.rho), "period_turns": self.period_turns}

    def __iter__(self):
        yield self.rho
        yield self.period_turns


@dataclass
class GrowthSeries:
    """Exact integer data per step plus the log ratios ln(x_n)/n."""

    n: list[int]
    w: list[int]
    log_ratios: list[Decimal]
    abs_Q: Optional[list[int]] = None
    abs_Q_h: Optional[list[int]] = None
    exhausted: bool = False
    exact: Optional[ExactExponent] = None
    kind: str = "monoid"
    extra: dict = field(default_factory=dict)

    @property
    def last(self) -> Decimal:
        return self.log_ratios[-1] if self.log_ratios else Decimal(0)

    @property
    def limit(self) -> Decimal:
        """Final ratio, or 0 when a finite path ran out."""
        return Decimal(0) if self.exhausted else self.last

    @property
    def tail_max(self) -> Decimal:
        """Max of the log ratios over the last 10% of steps."""
        if not self.log_ratios:
            return Decimal(0)
        k = max(1, len(self.log_ratios) // 10)
        return max(self.log_ratios[-k:])

    def to_json(self, precision: int = 12, full: bool = False) -> dict:
        def fmt(d: Decimal) -> str:
            return f"{d:.{precision}f}"

        report = {
            "kind": self.kind,
            "n": self.n[-1] if self.n else 0,
            "w_n": str(self.w[-1]) if self.w else "1",
            "abs_Q_n": str(self.abs_Q[-1]) if self.abs_Q else None,
            "abs_Q_n_h": str(self.abs_Q_h[-1]) if self.abs_Q_h else None,
            "log_ratio": fmt(self.last),
            "tail_max": fmt(self.tail_max),
            "exhausted": self.exhausted,
            "exact": self.exact.to_json() if self.exact else None,
        }
        report.update(self.extra)
        if full:
            report["series"] = {
                "w": [str(x) for x in self.w],
                "log_ratio": [fmt(x) for x in self.log_ratios],
            }
            if self.abs_Q is not None:
                report["series"]["abs_Q"] = [str(x) for x in self.abs_Q]
        return report


def _ratio(x: int, n: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = _PREC
        return decimal_log(x) / n


def _growth_weight(m: Matrix, mirrored: bool) -> int:
    p, q, r, s = m
    return p + q if mirrored else r + s


def _exact_or_none(path: Path) -> Optional[ExactExponent]:
    if path.cf is not None and path.cf.is_periodic:
        return lambda_monoid_exact(path.cf)
    if path.value == 0 or (path.cf is not None):
        return ExactExponent(QuadraticIrrational(1), 0)
    return None


def lambda_monoid(path, n: int) -> GrowthSeries:
    """ln(w_n)/n with w_n the second row sum of A_n (first row if xi > 1)."""
    path = _as_path(path)
    mats, exhausted = path_matrices(path, n)
    ws = [_growth_weight(m, path.mirrored) for m in mats]
    ratios = [_ratio(w, i + 1) for i, w in enumerate(ws)]
    return GrowthSeries(
        n=list(range(1, len(ws) + 1)),
        w=ws,
        log_ratios=ratios,
        exhausted=exhausted,
        exact=_exact_or_none(path),
        kind="monoid",
    )


def lambda_monoid_exact(cf) -> ExactExponent:
    """(rho, m) with Lambda = ln(rho)/m for a periodic continued fraction.

    The block is the shortest repeating turn word: the period digits once
    when their count is even, twice when it is odd (the turn kinds swap on
    the second pass).  Finite input gives rho = 1, m = 0.
    """
    if not isinstance(cf, ContinuedFraction):
        cf = cf_expand(cf)
    if cf.sign < 0:
        raise DomainError("paths need xi >= 0")
    if not cf.is_periodic:
        return ExactExponent(QuadraticIrrational(1), 0)
    block = cf.period if len(cf.period) % 2 == 0 else cf.period * 2
    start = "L" if len(cf.preperiod) % 2 == 0 else "R"
    word = list(digits_to_turns(block, start))
    m = IDENTITY
    for t in word:
        m = mat_mul(m, L if t == "L" else R)
    return ExactExponent(spectral_radius(m), len(word))


def lambda_form(Q: QuadraticForm, path, n: int) -> GrowthSeries:
    """|Q_n| = max |triple|, |Q_n|_h and ln|Q_n|/n along the path.

    Steps where |Q_n| = 0 (only possible for degenerate forms) get ratio 0.
    """
    path = _as_path(path)
    cur = TopographCursor.root(Q)
    abs_q, abs_h, ws, ratios = [], [], [], []
    for i, t in enumerate(islice(path.turns(), n), start=1):
        cur = step(cur, t)
        a, b, c = cur.triple
        v = max(abs(a), abs(b), abs(c))
        abs_q.append(v)
        abs_h.append(form_h_norm(a, b, c))
        ws.append(_growth_weight(cur.basis, path.mirrored))
        ratios.append(_ratio(v, i) if v else Decimal(0))
    return GrowthSeries(
        n=list(range(1, len(abs_q) + 1)),
        w=ws,
        log_ratios=ratios,
        abs_Q=abs_q,
        abs_Q_h=abs_h,
        exhausted=len(abs_q) < n,
        exact=_exact_or_none(path),
        kind="form",
    )


@dataclass
class SandwichReport:
    ok: bool
    steps: int
    failures: list[int]

    def __bool__(self):
        return self.ok


def sandwich_check(Q: QuadraticForm, path, n: int) -> SandwichReport:
    """Check w_n^2 <= 2|Q_n|_h and |Q_n|_h <= 4 w_n^2 |Q|_h at each step."""
    if min(Q.a, Q.b, Q.h) < 1:
        raise DomainError(f"{Q} needs a, b, h >= 1")
    path = _as_path(path)
    if path.value is not None:
        if not 0 < path.value <= 1:
            raise DomainError(f"the sandwich bound needs 0 < xi <= 1, got {path.value}")
    elif path.mirrored:
        raise DomainError("the sandwich bound needs a path starting with a right turn")
    q_h = form_h_norm(Q.a, Q.b, Q.a + Q.b + Q.h)
    cur = TopographCursor.root(Q)
    failures = []
    steps = 0
    for i, t in enumerate(islice(path.turns(), n), start=1):
        cur = step(cur, t)
        steps = i
        w = _growth_weight(cur.basis, False)
        h = form_h_norm(*cur.triple)
        if not (w * w <= 2 * h and h <= 4 * w * w * q_h):
            failures.append(i)
    return SandwichReport(not failures, steps, failures)


def theorem_ratio(Q: QuadraticForm, path, n: int) -> Decimal:
    """ln|Q_n| / (2 ln w_n) at the last step; tends to 1 off the river ends."""
    series = lambda_form(Q, path, n)
    if not series.w:
        return Decimal(0)
    w, v = series.w[-1], series.abs_Q[-1]
    if w <= 1 or v == 0:
        return Decimal(0)
    with localcontext() as ctx:
        ctx.prec = _PREC
        return decimal_log(v) / (2 * decimal_log(w))
