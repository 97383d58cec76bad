"""Conway rivers of anisotropic forms and lakes of isotropic ones.

Two independent routes find the river of an indefinite form that does not
represent zero:

* :func:`find_river` reads the entry path and the periodic part off the
  continued fraction of the dominant root;
* :func:`river_by_sign_steering` never looks at continued fractions.  It
  walks downhill (flipping the largest value) until the signs at a vertex
  mix, then follows the edges separating positive from negative values.

A river state is the triple seen by a cursor that entered its vertex across
a river edge: (positive-side value, negative-side value, value ahead).  It
determines everything downstream, so its first repetition is the period.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator

from .cfrac import ContinuedFraction, cf_expand, cf_expand_rational
from .errors import DomainError
from .quadratic import QuadraticIrrational
from .topograph import (
    INFINITY,
    FormClass,
    Matrix,
    QuadraticForm,
    TopographCursor,
    classify_form,
    digits_to_turns,
    roots,
    step,
)

__all__ = [
    "RiverDescription",
    "LakeDescription",
    "river_state",
    "find_river",
    "river_by_sign_steering",
    "same_cycle",
    "find_lakes",
    "prop3_entry_digits",
]

RiverState = tuple[int, int, int]


@dataclass(frozen=True)
class RiverDescription:
    form: QuadraticForm
    entry_digits: tuple[int, ...]
    entry_path: str
    river_period: str
    period_states: tuple[tuple[int, int], ...]
    period_triples: tuple[RiverState, ...]
    dominant_root: QuadraticIrrational
    conjugate_root: QuadraticIrrational
    guide_root: QuadraticIrrational
    guide_expansion: ContinuedFraction
    mirrored: bool = False

    def to_json(self) -> dict:
        return {
            "form": [self.form.a, self.form.h, self.form.b],
            "class": str(FormClass.INDEFINITE_ANISOTROPIC),
            "entry_digits": list(self.entry_digits),
            "entry_path": self.entry_path,
            "river_period": self.river_period,
            "period_length": len(self.river_period),
            "period_states": [list(s) for s in self.period_states],
            "dominant_root": str(self.dominant_root),
            "conjugate_root": str(self.conjugate_root),
            "guide_expansion": str(self.guide_expansion),
            "mirrored": self.mirrored,
        }


@dataclass(frozen=True)
class LakeDescription:
    form: QuadraticForm
    zero_vectors: tuple[tuple[int, int], tuple[int, int]]
    river_word: str
    reduced_params: tuple[int, int]
    reduction: Matrix = field(default=(1, 0, 0, 1))

    def to_json(self) -> dict:
        a, b = self.reduced_params
        return {
            "form": [self.form.a, self.form.h, self.form.b],
            "class": str(FormClass.INDEFINITE_ISOTROPIC),
            "zero_vectors": [list(v) for v in self.zero_vectors],
            "reduced_form": [0, a, -b],
            "reduced_params": [a, b],
            "river_word": self.river_word,
            "adjacent_lakes": b == 0,
        }


def _sgn(n: int) -> int:
    return (n > 0) - (n < 0)


def river_state(x: int, y: int, ahead: int) -> RiverState:
    """State of a cursor that crossed the river edge between faces x and y."""
    return (x, y, ahead) if x > 0 else (y, x, ahead)


# -- continued-fraction route ---------------------------------------------


def prop3_entry_digits(cf: ContinuedFraction) -> tuple[int, ...]:
    """Digits of the path from the root vertex down to the river.

    ``cf`` is the expansion of the dominant root of a form whose root values
    share a sign with h of the opposite sign.
    """
    pre, period = list(cf.preperiod), cf.period
    if not pre:
        return ()
    ak, bl = pre[-1], period[-1]
    if len(pre) == 1:
        return (ak - bl,) if ak > bl else ()
    if ak > bl:
        return tuple(pre[:-1] + [ak - bl - 1])
    return tuple(pre[:-2] + [pre[-2] - 1])


def _positive_root(Q: QuadraticForm) -> QuadraticIrrational:
    r1, r2 = roots(Q)
    return r1 if r1 > 0 else r2


def _trace_period(cur: TopographCursor, first_turns: Iterator[str] | None = None):
    """Follow the river from a cursor that entered across a river edge."""
    seen: dict[RiverState, int] = {}
    states: list[RiverState] = []
    word: list[str] = []
    while True:
        a, b, c = cur.triple
        if _sgn(a) * _sgn(b) >= 0:
            raise AssertionError(f"cursor left the river at {cur.triple}")
        st = river_state(a, b, c)
        if st in seen:
            i = seen[st]
            return "".join(word[i:]), tuple(states[i:])
        seen[st] = len(states)
        states.append(st)
        turn = "R" if _sgn(c) == _sgn(a) else "L"
        if first_turns is not None:
            expected = next(first_turns)
            if expected != turn:
                raise AssertionError("continued-fraction path leaves the river")
        word.append(turn)
        cur = step(cur, turn)


def find_river(Q: QuadraticForm, validate: bool = True) -> RiverDescription:
    """Entry path and periodic course of the river of an anisotropic form.

    Cases by the values (a, b, c) at the root vertex:

    * a, b of opposite signs: the root edge lies on the river; the river is
      followed forward toward the positive root.
    * a, b of one sign and c of the other: the root is a river vertex; the
      river is followed toward the dominant root.
    * a, b, c of one sign with h of the opposite sign: both roots are
      positive and the entry path is read off the dominant root's expansion.
    * a, b, c and h of one sign: the river lies in the reflected half of the
      tree.  The form is mirrored (h -> -h) and the description refers to
      the mirrored paths (``mirrored=True``).

    With ``validate`` the period is cross-checked against
    :func:`river_by_sign_steering`.
    """
    cls = classify_form(Q)
    if cls is not FormClass.INDEFINITE_ANISOTROPIC:
        raise DomainError(f"{Q} is {cls}; rivers need an indefinite anisotropic form")
    dominant, conjugate = roots(Q)
    a, b, c = Q.a, Q.b, Q.a + Q.b + Q.h
    mirrored = False
    work = Q
    if _sgn(a) == _sgn(b) == _sgn(c) and _sgn(Q.h) == _sgn(a):
        mirrored = True
        work = QuadraticForm(Q.a, -Q.h, Q.b)

    if a * b < 0:
        guide = _positive_root(work)
        entry: tuple[int, ...] = ()
    else:
        r1, _ = roots(work)
        guide = r1
        if _sgn(a) == _sgn(c):
            entry = prop3_entry_digits(cf_expand(guide))
        else:
            entry = ()
    gcf = cf_expand(guide)
    entry_path = "".join(digits_to_turns(entry))
    guide_turns = digits_to_turns(gcf.digits())
    for expected in entry_path:
        if next(guide_turns) != expected:
            raise AssertionError("entry path is not a prefix of the guide path")

    cur = TopographCursor.root(work)
    for t in entry_path:
        cur = step(cur, t)
    if _sgn(cur.triple.a) == _sgn(cur.triple.b):
        # first river vertex: both forward edges are river edges
        if _sgn(cur.triple.c) == _sgn(cur.triple.a):
            raise AssertionError(f"entry path ends off the river at {cur.triple}")
        cur = step(cur, next(guide_turns))
    word, states = _trace_period(cur, guide_turns)

    desc = RiverDescription(
        form=Q,
        entry_digits=entry,
        entry_path=entry_path,
        river_period=word,
        period_states=tuple((s[0], s[1]) for s in states),
        period_triples=states,
        dominant_root=dominant,
        conjugate_root=conjugate,
        guide_root=guide,
        guide_expansion=gcf,
        mirrored=mirrored,
    )
    if validate:
        cycles = river_by_sign_steering(Q)
        if not any(same_cycle(states, cyc) for cyc in cycles):
            raise AssertionError(f"river of {Q} disagrees with the sign-steering oracle")
    return desc


# -- sign-steering route --------------------------------------------------


def river_by_sign_steering(Q: QuadraticForm, max_steps: int = 10**6) -> tuple[tuple[RiverState, ...], ...]:
    """Period state cycles of the river in both directions, found without
    continued fractions.

    Vertices are superbases (u, v, w) with u + v + w = 0.  Off the river
    the largest value is flipped, which strictly lowers it for indefinite
    anisotropic forms; on the river the walk crosses, at each vertex, the
    other edge with values of opposite signs.
    """
    if classify_form(Q) is not FormClass.INDEFINITE_ANISOTROPIC:
        raise DomainError(f"{Q} has no periodic river")
    vec = [(1, 0), (0, 1), (-1, -1)]
    val = [Q.a, Q.b, Q.a + Q.b + Q.h]

    def flip(i: int):
        j, k = [n for n in range(3) if n != i]
        new = (vec[j][0] - vec[k][0], vec[j][1] - vec[k][1])
        val[i] = 2 * (val[j] + val[k]) - val[i]
        vec[i], vec[j] = new, (-vec[j][0], -vec[j][1])

    for _ in range(max_steps):
        if not (_sgn(val[0]) == _sgn(val[1]) == _sgn(val[2])):
            break
        i = max(range(3), key=lambda n: abs(val[n]))
        before = abs(val[i])
        flip(i)
        if abs(val[i]) >= before:
            raise AssertionError("downhill flip failed to descend")
    else:
        raise AssertionError("no river vertex reached")

    # odd one out: the face whose sign differs from the other two
    signs = [_sgn(v) for v in val]
    odd = next(i for i in range(3) if signs.count(signs[i]) == 1)
    cycles = []
    for other in (n for n in range(3) if n != odd):
        v_save, w_save = list(vec), list(val)
        # cross the river edge (odd, other) by flipping the remaining face
        flip(next(n for n in range(3) if n not in (odd, other)))
        edge = [odd, other]
        seen: dict[RiverState, int] = {}
        states: list[RiverState] = []
        for _ in range(max_steps):
            ahead = next(n for n in range(3) if n not in edge)
            st = river_state(val[edge[0]], val[edge[1]], val[ahead])
            if st in seen:
                cycles.append(tuple(states[seen[st]:]))
                break
            seen[st] = len(states)
            states.append(st)
            # keep the face of opposite sign to the one ahead
            keep = edge[0] if _sgn(val[edge[0]]) != _sgn(val[ahead]) else edge[1]
            drop = edge[1] if keep == edge[0] else edge[0]
            flip(drop)
            edge = [keep, ahead]
        else:
            raise AssertionError("river period not found")
        vec, val = v_save, w_save
    return tuple(cycles)


def same_cycle(x, y) -> bool:
    """Whether two state sequences are rotations of each other."""
    x, y = tuple(x), tuple(y)
    if len(x) != len(y):
        return False
    if not x:
        return True
    doubled = y + y
    return any(doubled[i : i + len(x)] == x for i in range(len(y)))


# -- lakes ----------------------------------------------------------------


def _primitive(x: int, y: int) -> tuple[int, int]:
    g = gcd(x, y)
    x, y = x // g, y // g
    if x < 0 or (x == 0 and y < 0):
        x, y = -x, -y
    return x, y


def _zero_vector(root) -> tuple[int, int]:
    if root == INFINITY:
        return (1, 0)
    r = Fraction(root)
    return _primitive(r.numerator, r.denominator)


def _complete_basis(v: tuple[int, int]) -> Matrix:
    """SL2 matrix with first column v."""
    p, r = v
    # extended Euclid: p*s - r*q = 1
    old_r, rr = p, r
    old_s, s = 1, 0
    old_t, t = 0, 1
    while rr:
        quo = old_r // rr
        old_r, rr = rr, old_r - quo * rr
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    # old_s*p + old_t*r = old_r = +-1
    g = old_r
    x, y = old_s * g, old_t * g  # x*p + y*r = 1
    return (p, -y, r, x)


def find_lakes(Q: QuadraticForm) -> LakeDescription:
    """Zero vectors, reduced form y(ax - by) and the river between the lakes.

    The reduced parameters satisfy a > b >= 0.  The river word is the turn
    sequence of b/a, i.e. the expansion of a/b read starting with a right
    turn; b = 0 means the two lakes are adjacent.
    """
    cls = classify_form(Q)
    if cls is not FormClass.INDEFINITE_ISOTROPIC:
        raise DomainError(f"{Q} is {cls}; lakes need an indefinite isotropic form")
    r1, r2 = roots(Q)
    v1, v2 = _zero_vector(r1), _zero_vector(r2)
    M = _complete_basis(v2)
    reduced = _transform_any(Q, M)
    assert reduced.a == 0
    A, B = reduced.h, -reduced.b
    if A < 0:
        # (x, y) -> (-x, y) is in GL2(Z); it flips the sign of the xy term only
        M = (-M[0], M[1], -M[2], M[3])
        A = -A
    # e2 -> e2 + k*e1 lowers B by k*A
    k = B // A
    M = (M[0], M[1] + k * M[0], M[2], M[3] + k * M[2])
    B -= k * A
    word = "".join(digits_to_turns(cf_expand_rational(Fraction(B, A)).preperiod))
    return LakeDescription(Q, (v1, v2), word, (A, B), M)


def _transform_any(Q: QuadraticForm, A: Matrix) -> QuadraticForm:
    p, q, r, s = A
    return QuadraticForm(Q(p, r), 2 * Q.a * p * q + Q.h * (p * s + q * r) + 2 * Q.b * r * s, Q(q, s))
