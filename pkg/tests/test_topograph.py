import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conwaytopo.cfrac import cf_expand, cf_is_pure_periodic
from conwaytopo.errors import DomainError, ParseError
from conwaytopo.quadratic import parse_value
from conwaytopo.topograph import (
    INFINITY,
    IDENTITY,
    L,
    R,
    FormClass,
    QuadraticForm as F,
    SuperbaseTriple as T,
    TopographCursor,
    classify_form,
    digits_to_turns,
    form_values,
    hat_matrix,
    is_galois_form,
    markov_discriminant,
    mat_mul,
    parse_form,
    roots,
    step,
    transform_form,
    vieta_flip,
    walk,
    word_matrix,
)

from oracles import basis_after, brute_triple, is_square

forms = st.builds(F, st.integers(-40, 40), st.integers(-40, 40), st.integers(-40, 40))
words = st.text(alphabet="LR", max_size=30)


def mat3_mul(x, y):
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def mat3_apply(m, v):
    return tuple(sum(m[i][k] * v[k] for k in range(3)) for i in range(3))


@pytest.mark.parametrize(
    "form, triple",
    [(F(1, 0, 1), (1, 1, 2)), (F(1, -2, -2), (1, -2, -3)), (F(17, -12, 2), (17, 2, 7))],
)
def test_form_values(form, triple):
    assert form_values(form) == triple


def test_step_example():
    cur = step(TopographCursor.root(F(1, 0, 1)), "L")
    assert cur.triple == (1, 2, 5)
    assert cur.basis == (1, 1, 0, 1)


@settings(max_examples=200)
@given(forms, words)
def test_walk_matches_direct_evaluation(form, word):
    cur = TopographCursor.root(form)
    for i, t in enumerate(word):
        cur = step(cur, t)
        assert cur.basis == basis_after(word[: i + 1])
        assert cur.triple == brute_triple(form.coefficients(), cur.basis)
        p, q, r, s = cur.basis
        assert p * s - q * r == 1


@settings(max_examples=200)
@given(forms, words)
def test_discriminant_conserved(form, word):
    D = form.discriminant
    assert all(markov_discriminant(t) == D for t in walk(form, word))


@settings(max_examples=100)
@given(forms, words)
def test_parallelogram_identity(form, word):
    cur = TopographCursor.root(form)
    for t in word:
        cur = step(cur, t)
    (p, r), (q, s) = cur.e1, cur.e2
    assert form(p + q, r + s) + form(p - q, r - s) == 2 * (form(p, r) + form(q, s))


def test_walk_fibonacci_path():
    phi_word = "".join(digits_to_turns([1] * 5))
    assert phi_word == "LRLRL"
    cs = [t.c for t in walk(F(1, 0, 1), phi_word)]
    assert cs[:5] == [2, 5, 13, 34, 89]
    # the values met along the path: 1, 2, 5, 13, 34
    seen = []
    for t in walk(F(1, 0, 1), phi_word):
        for v in t:
            if v not in seen:
                seen.append(v)
    assert seen[:5] == [1, 2, 5, 13, 34]


def test_empty_walk():
    assert walk(F(3, 1, 2), "") == [T(3, 2, 6)]


def test_digits_to_turns():
    assert "".join(digits_to_turns([1, 1, 2])) == "LRLL"
    assert "".join(digits_to_turns([0, 2, 3])) == "RRLLL"
    assert "".join(digits_to_turns([2, 0, 1])) == "LLL"
    with pytest.raises(DomainError):
        list(digits_to_turns([1, -1]))


def test_word_matrix():
    assert word_matrix("LR") == (2, 1, 1, 1)
    assert word_matrix("") == IDENTITY
    assert word_matrix("RRR") == (1, 0, 3, 1)


def test_transform_examples():
    assert transform_form(F(1, 0, 1), L) == F(1, 2, 2)
    assert transform_form(F(5, -3, 7), IDENTITY) == F(5, -3, 7)
    with pytest.raises(DomainError):
        transform_form(F(1, 0, 1), (2, 0, 0, 1))


@settings(max_examples=100)
@given(forms, words)
def test_transform_invariants(form, word):
    A = word_matrix(word)
    Q2 = transform_form(form, A)
    assert Q2.discriminant == form.discriminant
    # the transformed form's root triple is the triple reached by the walk
    assert form_values(Q2) == walk(form, word)[-1]


@settings(max_examples=100)
@given(forms, words, words)
def test_hat_matrix(form, w1, w2):
    A, B = word_matrix(w1), word_matrix(w2)
    hA = hat_matrix(A)
    assert mat3_apply(hA, form.coefficients()) == transform_form(form, A).coefficients()
    # Q -> Q o A is a right action, so hat is an anti-homomorphism
    assert hat_matrix(mat_mul(A, B)) == mat3_mul(hat_matrix(B), hA)
    tr = A[0] + A[3]
    assert hA[0][0] + hA[1][1] + hA[2][2] == tr * tr - 1


def test_hat_identity_and_eigenvalues():
    assert hat_matrix(IDENTITY) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    # LR has lambda = phi^2; lambda^2 + 1 + lambda^-2 = tr(A)^2 - 1 = 8
    h = hat_matrix(mat_mul(L, R))
    assert h[0][0] + h[1][1] + h[2][2] == 8


def test_hat_matrix_is_not_multiplicative_in_the_given_order():
    A, B = L, R
    assert hat_matrix(mat_mul(A, B)) != mat3_mul(hat_matrix(A), hat_matrix(B))


def test_vieta_examples():
    assert vieta_flip(T(1, 1, 2), "c") == T(1, 1, 2)
    assert vieta_flip(T(1, -1, -1), "c").c == 1
    with pytest.raises(ValueError):
        vieta_flip(T(1, 1, 1), "d")


@settings(max_examples=1000)
@given(st.tuples(*[st.integers(-10**6, 10**6)] * 3), st.sampled_from("abc"))
def test_vieta_preserves_discriminant(t, pos):
    t = T(*t)
    flipped = vieta_flip(t, pos)
    assert markov_discriminant(flipped) == markov_discriminant(t)
    assert vieta_flip(flipped, pos) == t


def test_markov_discriminant_examples():
    assert markov_discriminant((1, 1, 2)) == -4
    assert markov_discriminant((1, -1, -1)) == 5
    assert markov_discriminant((0, 0, 0)) == 0


@pytest.mark.parametrize(
    "form, cls",
    [
        (F(1, 0, 1), FormClass.POSITIVE_DEFINITE),
        (F(-1, 1, -1), FormClass.NEGATIVE_DEFINITE),
        (F(1, -2, -2), FormClass.INDEFINITE_ANISOTROPIC),
        (F(2, -1, -3), FormClass.INDEFINITE_ISOTROPIC),
        (F(1, 0, 0), FormClass.SEMIDEFINITE),
        (F(1, 2, 1), FormClass.SEMIDEFINITE),
        (F(0, 1, 0), FormClass.INDEFINITE_ISOTROPIC),
        (F(0, 0, -3), FormClass.SEMIDEFINITE),
    ],
)
def test_classify(form, cls):
    assert classify_form(form) is cls


def test_roots_examples():
    assert roots(F(1, -2, -2)) == (parse_value("1+sqrt(3)"), parse_value("1-sqrt(3)"))
    assert roots(F(17, -12, 2)) == (parse_value("(6+sqrt(2))/17"), parse_value("(6-sqrt(2))/17"))
    assert roots(F(2, -1, -3)) == (Fraction(3, 2), Fraction(-1))
    assert roots(F(0, 1, 0)) == (INFINITY, 0)
    assert roots(F(1, 0, 0)) == (0, 0)
    with pytest.raises(DomainError):
        roots(F(1, 0, 1))


@settings(max_examples=300)
@given(forms)
def test_roots_are_roots_and_dominant_first(form):
    if form.discriminant < 0 or (form.a == 0 and form.h == 0):
        return
    r1, r2 = roots(form)
    for r in (r1, r2):
        if r != INFINITY:
            assert form.a * r * r + form.h * r + form.b == 0
    if r1 != INFINITY:
        assert abs(r1) >= abs(r2)


def test_galois_form_examples():
    assert is_galois_form(F(1, -1, -1))
    assert not is_galois_form(F(1, 0, 1))
    assert is_galois_form(F(1, -2, -2))
    assert not is_galois_form(F(17, -12, 2))


def test_galois_form_coherence():
    rng = random.Random(11)
    checked = 0
    while checked < 200:
        form = F(rng.randint(-30, 30), rng.randint(-30, 30), rng.randint(-30, 30))
        D = form.discriminant
        if D <= 0 or is_square(D) or form.a == 0:
            continue
        alpha = roots(form)[0]
        assert is_galois_form(form) == cf_is_pure_periodic(cf_expand(alpha)), form
        checked += 1


@pytest.mark.parametrize(
    "text, form",
    [
        ("1,-2,-2", F(1, -2, -2)),
        ("x^2-2*x*y-2*y^2", F(1, -2, -2)),
        ("17x^2 - 12xy + 2y^2", F(17, -12, 2)),
        ("x*y", F(0, 1, 0)),
        ("-y^2+3*x*y", F(0, 3, -1)),
    ],
)
def test_parse_form(text, form):
    assert parse_form(text) == form
    assert parse_form(str(form)) == form


@pytest.mark.parametrize("text", ["", "x^3", "x+y", "1,2", "2x^2 y^2"])
def test_parse_form_errors(text):
    with pytest.raises(ParseError):
        parse_form(text)


def test_climbing_from_positive_triple():
    rng = random.Random(5)
    for _ in range(200):
        form = F(rng.randint(1, 20), rng.randint(1, 20), rng.randint(1, 20))
        cur = TopographCursor.root(form)
        top = max(cur.triple)
        for _ in range(40):
            cur = step(cur, rng.choice("LR"))
            assert max(cur.triple) > top
            top = max(cur.triple)
