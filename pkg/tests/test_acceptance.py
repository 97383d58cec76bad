"""Acceptance criteria, one test each.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints a
PASS/FAIL line per criterion.
"""
import random
import sys
import time
from decimal import Decimal, localcontext

import pytest

from conwaytopo.cfrac import (
    cf_canonical,
    cf_conjugate,
    cf_expand,
    cf_is_pure_periodic,
    cf_value,
    parse_cf,
    qi_is_galois,
)
from conwaytopo.lyapunov import (
    lambda_form,
    lambda_monoid_exact,
    sandwich_check,
    theorem_ratio,
)
from conwaytopo.quadratic import QuadraticIrrational as QI, parse_value, qi_conjugate
from conwaytopo.river import find_lakes, find_river, river_by_sign_steering, same_cycle
from conwaytopo.topograph import (
    QuadraticForm as F,
    TopographCursor,
    is_galois_form,
    markov_discriminant,
    roots,
    step,
    walk,
)

from oracles import basis_after, brute_triple, dec, random_qi_params

criterion = pytest.mark.criterion

with localcontext() as _ctx:
    _ctx.prec = 60
    LN_PHI = dec(1, 1, 5, 2).ln()


@criterion(1, "worked examples: (6+-sqrt2)/17 and the 15006 pair, exact")
def test_criterion_1_worked_examples():
    alpha = parse_value("(6+sqrt(2))/17")
    t0 = time.perf_counter()
    assert str(cf_expand(alpha)) == "[0,2,3;(2)]"
    assert str(cf_expand(qi_conjugate(alpha))) == "[0,3,1;(2)]"
    assert str(cf_conjugate(parse_cf("[0,2,3;(2)]"))) == "[0,3,1;(2)]"
    assert cf_value(parse_cf("[0,3,1;(2)]")) == qi_conjugate(alpha)
    assert time.perf_counter() - t0 < 1

    t0 = time.perf_counter()
    beta = parse_value("(11523+sqrt(15006))/9222")
    assert str(cf_expand(beta)) == "[1,3,1,4;(7,2,3,9)]"
    assert str(cf_conjugate(parse_cf("[1,3,1,4;(7,2,3,9)]"))) == "[1,4,4;(3,2,7,9)]"
    assert str(cf_expand(qi_conjugate(beta))) == "[1,4,4;(3,2,7,9)]"
    assert time.perf_counter() - t0 < 1


@criterion(2, "golden case: phi = [(1)], conjugate -[0,(1)], Galois form (1,-1,-1)")
def test_criterion_2_golden():
    phi = parse_value("(1+sqrt(5))/2")
    cf = cf_expand(phi)
    assert str(cf) == "[;(1)]"
    conj = cf_conjugate(cf)
    assert str(conj) == "-[0;(1)]"
    assert cf_value(conj) == parse_value("(1-sqrt(5))/2")
    assert qi_is_galois(phi) and cf_is_pure_periodic(cf)
    assert is_galois_form(F(1, -1, -1))
    assert roots(F(1, -1, -1))[0] == phi


@criterion(3, "1000 random quadratic irrationals: round trip, involution, Galois, < 30 s")
def test_criterion_3_property_suites():
    rng = random.Random(20240601)
    sample = []
    while len(sample) < 1000:
        x = QI(*random_qi_params(rng))
        if not x.is_rational:
            sample.append(x)
    t0 = time.perf_counter()
    for x in sample:
        cf = cf_expand(x)
        assert cf_value(cf) == x
        conj = cf_conjugate(cf)
        assert cf_canonical(cf_conjugate(conj)) == cf
        assert cf_canonical(conj) == cf_expand(qi_conjugate(x))
        reduced = x > 1 and -1 < qi_conjugate(x) < 0
        assert cf_is_pure_periodic(cf) == reduced
    assert time.perf_counter() - t0 < 30


@criterion(4, "100 forms x 30-turn words: steps equal direct evaluation, discriminant conserved, < 10 s")
def test_criterion_4_topograph_oracle():
    rng = random.Random(4)
    t0 = time.perf_counter()
    for _ in range(100):
        form = F(*(rng.randint(-10**6, 10**6) for _ in range(3)))
        word = "".join(rng.choice("LR") for _ in range(30))
        cur = TopographCursor.root(form)
        D = form.discriminant
        assert markov_discriminant(cur.triple) == D
        for i, t in enumerate(word, start=1):
            cur = step(cur, t)
            assert cur.basis == basis_after(word[:i])
            assert cur.triple == brute_triple(form.coefficients(), cur.basis)
            assert markov_discriminant(cur.triple) == D
    assert time.perf_counter() - t0 < 10


@criterion(5, "rivers of x^2-2xy-2y^2 and 17x^2-12xy+2y^2, lakes of 2x^2-xy-3y^2")
def test_criterion_5_rivers_and_lakes():
    Q = F(1, -2, -2)
    desc = find_river(Q)
    a, b, c = walk(Q, "")[0]
    assert a * b < 0 and desc.entry_path == ""
    assert len(desc.river_period) == 3
    triples = walk(Q, desc.river_period * 4)
    values = [max(map(abs, t)) for t in triples]
    assert values[3:] == values[:-3]
    assert max(values) <= 3

    Q = F(17, -12, 2)
    desc = find_river(Q, validate=False)
    assert desc.entry_digits == (0, 2, 0)
    cycles = river_by_sign_steering(Q)
    assert any(same_cycle(desc.period_triples, cyc) for cyc in cycles)

    lakes = find_lakes(F(2, -1, -3))
    assert list(lakes.river_word) == ["R", "L", "R", "R"]
    assert lakes.reduced_params == (5, 3)


@criterion(6, "exact exponents: phi -> (phi^2, 2), 1+sqrt3 -> (2+sqrt3, 3)")
def test_criterion_6_exact_lyapunov():
    phi = parse_value("(1+sqrt(5))/2")
    rho, m = lambda_monoid_exact(phi)
    assert rho == phi * phi and m == 2
    rho, m = lambda_monoid_exact(parse_value("1+sqrt(3)"))
    assert rho == parse_value("2+sqrt(3)") and m == 3
    assert abs(lambda_monoid_exact(phi).value() - LN_PHI) < Decimal("1e-40")


@criterion(7, "x^2+y^2 along phi: growth 2 ln phi, ratio 1; zero growth on the river, < 60 s")
def test_criterion_7_growth_rates():
    phi = parse_value("(1+sqrt(5))/2")
    t0 = time.perf_counter()
    series = lambda_form(F(1, 0, 1), phi, 2000)
    assert abs(series.last - 2 * LN_PHI) <= Decimal("1e-2")
    assert abs(theorem_ratio(F(1, 0, 1), phi, 2000) - 1) <= Decimal("1e-2")
    river = find_river(F(1, -2, -2))
    path = river.entry_path + river.river_period * (2000 // len(river.river_period) + 1)
    series = lambda_form(F(1, -2, -2), path[:2000], 2000)
    assert len(series.n) == 2000
    assert series.last <= Decimal("1e-2")
    # the same path as the value 1+sqrt(3)
    assert lambda_form(F(1, -2, -2), parse_value("1+sqrt(3)"), 2000).last <= Decimal("1e-2")
    assert time.perf_counter() - t0 < 60


SANDWICH_PATHS = [
    "(sqrt(5)-1)/2",
    "sqrt(2)-1",
    "sqrt(3)-1",
    "sqrt(7)-2",
    "(sqrt(13)-3)/2",
]


@criterion(8, "sandwich bound, 20 positive forms x 5 paths x 200 steps")
def test_criterion_8_sandwich():
    rng = random.Random(8)
    forms = set()
    while len(forms) < 20:
        forms.add(F(rng.randint(1, 50), rng.randint(1, 50), rng.randint(1, 50)))
    failures = []
    for form in sorted(forms, key=lambda f: f.coefficients()):
        for text in SANDWICH_PATHS:
            report = sandwich_check(form, parse_value(text), 200)
            assert report.steps == 200
            if not report.ok:
                failures.append((form, text, report.failures[:3]))
    assert not failures


@criterion(9, "climbing: max entry strictly increases once a, b, h >= 1 (1000 continuations)")
def test_criterion_9_climbing():
    rng = random.Random(9)
    tested = 0
    while tested < 1000:
        form = F(*(rng.randint(-30, 30) for _ in range(3)))
        cur = TopographCursor.root(form)
        for _ in range(40):
            a, b, c = cur.triple
            if min(a, b, c - a - b) >= 1:
                break
            cur = step(cur, rng.choice("LR"))
        else:
            continue
        top = max(cur.triple)
        for _ in range(60):
            cur = step(cur, rng.choice("LR"))
            assert max(cur.triple) > top
            top = max(cur.triple)
        tested += 1


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
