import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import form_pairs_for_wedge, sparse_forms
from oracle import (
    dense_from_terms,
    dense_hodge,
    dense_inner,
    dense_interior,
    dense_to_terms,
    dense_wedge,
)

import crossforms as cf
from crossforms import ExteriorForm, blade, zero_form
from crossforms.forms import from_dense, to_dense


def as_dense(form):
    return dense_from_terms(form.dim, form.degree, dict(form.terms))


# -- construction and value semantics -----------------------------------------


def test_rejects_bad_blades():
    with pytest.raises(ValueError):
        ExteriorForm(3, 2, {(2, 1): 1.0})
    with pytest.raises(ValueError):
        ExteriorForm(3, 2, {(1, 1): 1.0})
    with pytest.raises(ValueError):
        ExteriorForm(3, 2, {(1, 4): 1.0})
    with pytest.raises(ValueError):
        ExteriorForm(3, 2, {(1,): 1.0})
    with pytest.raises(ValueError):
        ExteriorForm(11, 3)
    with pytest.raises(ValueError):
        ExteriorForm(3, 4)


def test_zero_coefficients_are_not_stored():
    a = ExteriorForm(3, 1, {(1,): 0.0, (2,): 2.0})
    assert (1,) not in a.terms
    assert a.coeff((2,)) == 2.0
    assert zero_form(4, 2).is_zero()


def test_equality_and_hash():
    a = ExteriorForm(3, 2, {(1, 2): 1.0})
    b = blade(3, (1, 2))
    assert a == b and hash(a) == hash(b)
    assert a != blade(3, (1, 3))
    assert a != a.embed(4)  # embedding changes the ambient dimension
    assert blade(3, (1, 2)) != blade(4, (1, 2))


def test_scalar_algebra():
    a = ExteriorForm(3, 2, {(1, 2): 1.0, (1, 3): -2.0})
    assert (2 * a).coeff((1, 3)) == -4.0
    assert (a - a).is_zero()
    assert (-a + a).is_zero()
    assert (a / 2).coeff((1, 2)) == 0.5
    with pytest.raises(ValueError):
        a + blade(3, (1,))


def test_json_roundtrip():
    a = ExteriorForm(6, 3, {(1, 3, 5): 1.5, (2, 4, 6): -0.25})
    assert ExteriorForm.from_dict(a.to_dict()) == a
    payload = a.to_dict()
    payload["terms"].append({"indices": [1, 3, 5], "coeff": 2.0})
    with pytest.raises(ValueError):
        ExteriorForm.from_dict(payload)


# -- wedge ---------------------------------------------------------------------


def test_wedge_basis_products():
    assert cf.wedge(blade(3, (1,)), blade(3, (2,))) == blade(3, (1, 2))
    assert cf.wedge(blade(4, (1, 2)), blade(4, (1, 2))).is_zero()


def test_wedge_square_of_su3_contraction():
    a = ExteriorForm(6, 2, {(3, 5): 1.0, (4, 6): -1.0})
    assert cf.wedge(a, a) == ExteriorForm(6, 4, {(3, 4, 5, 6): 2.0})


def test_wedge_errors():
    with pytest.raises(ValueError):
        cf.wedge(blade(3, (1,)), blade(4, (1,)))
    with pytest.raises(ValueError):
        cf.wedge(blade(3, (1, 2)), blade(3, (1, 2)))  # degree 4 > 3


@settings(max_examples=150)
@given(form_pairs_for_wedge())
def test_wedge_graded_commutativity(pair):
    a, b = pair
    sign = (-1) ** (a.degree * b.degree)
    assert cf.wedge(a, b) == sign * cf.wedge(b, a)


@settings(max_examples=75)
@given(form_pairs_for_wedge(), st.integers(-3, 3), st.integers(-3, 3))
def test_wedge_bilinearity(pair, s, t):
    a, b = pair
    c = ExteriorForm(a.dim, a.degree, {k: 1.0 for k in itertools.combinations(range(1, a.dim + 1), a.degree)})
    left = cf.wedge(float(s) * a + float(t) * c, b)
    right = float(s) * cf.wedge(a, b) + float(t) * cf.wedge(c, b)
    assert left == right


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_wedge_associativity(data):
    n = data.draw(st.integers(3, 5))
    p = data.draw(st.integers(0, 2))
    q = data.draw(st.integers(0, 2))
    r = data.draw(st.integers(0, n - p - q).map(lambda x: min(x, 2)))
    a = data.draw(sparse_forms(dim=n, degree=p))
    b = data.draw(sparse_forms(dim=n, degree=q))
    c = data.draw(sparse_forms(dim=n, degree=r))
    assert cf.wedge(cf.wedge(a, b), c) == cf.wedge(a, cf.wedge(b, c))


def test_wedge_matches_dense_oracle():
    rng = np.random.default_rng(3)
    for _ in range(25):
        n = int(rng.integers(2, 7))
        p = int(rng.integers(0, 3))
        q = int(rng.integers(0, n - p + 1)) if n - p >= 0 else 0
        a = random_float_form(rng, n, p)
        b = random_float_form(rng, n, min(q, 3))
        got = cf.wedge(a, b)
        want = dense_to_terms(dense_wedge(as_dense(a), as_dense(b)), got.degree)
        assert_terms_close(got, want)


# -- interior product ------------------------------------------------------------


def test_interior_basis_examples():
    e123 = blade(3, (1, 2, 3))
    assert cf.interior([1, 0, 0], e123) == blade(3, (2, 3))
    assert cf.interior([0, 1, 0], e123) == blade(3, (1, 3), -1.0)
    sigma0 = cf.canonical("SIGMA0")
    assert cf.interior(np.eye(6)[0], sigma0) == ExteriorForm(6, 2, {(3, 5): 1.0, (4, 6): -1.0})
    assert cf.interior(np.eye(6)[2], sigma0) == ExteriorForm(6, 2, {(1, 5): -1.0, (2, 6): 1.0})


def test_interior_errors():
    with pytest.raises(ValueError):
        cf.interior([1, 0], blade(3, (1,)))
    with pytest.raises(ValueError):
        cf.interior([1, 0, 0], zero_form(3, 0))


@settings(max_examples=150)
@given(form_pairs_for_wedge(), st.integers(0, 4))
def test_interior_is_an_antiderivation(pair, slot):
    a, b = pair
    if a.degree + b.degree < 1:
        return
    n = a.dim
    v = np.zeros(n)
    v[slot % n] = 1.0
    total = cf.wedge(a, b)
    left = cf.interior(v, total) if total.degree >= 1 else None
    first = cf.wedge(cf.interior(v, a), b) if a.degree >= 1 else zero_form(n, b.degree - 1 + a.degree)
    sign = (-1) ** a.degree
    second = (
        float(sign) * cf.wedge(a, cf.interior(v, b))
        if b.degree >= 1
        else zero_form(n, max(a.degree - 1, 0))
    )
    if a.degree >= 1 and b.degree >= 1:
        assert left == first + second
    elif a.degree >= 1:
        assert left == first
    else:
        assert left == second


@settings(max_examples=100)
@given(sparse_forms(max_dim=5), st.integers(0, 4))
def test_interior_squares_to_zero(a, slot):
    if a.degree < 2:
        return
    v = np.zeros(a.dim)
    v[slot % a.dim] = 1.0
    assert cf.interior(v, cf.interior(v, a)).is_zero()


def test_interior_matches_dense_oracle():
    rng = np.random.default_rng(4)
    for _ in range(25):
        n = int(rng.integers(2, 7))
        k = int(rng.integers(1, min(n, 4) + 1))
        a = random_float_form(rng, n, k)
        v = rng.standard_normal(n)
        got = cf.interior(v, a)
        want = dense_to_terms(dense_interior(v, as_dense(a)), k - 1)
        assert_terms_close(got, want)


# -- Hodge star -------------------------------------------------------------------


def test_hodge_small_cases():
    assert cf.hodge(ExteriorForm(3, 0, {(): 1.0})) == blade(3, (1, 2, 3))
    assert cf.hodge(blade(3, (1, 2))) == blade(3, (3,))


def test_hodge_of_su3_form():
    got = cf.hodge(cf.canonical("SIGMA0"))
    assert got == ExteriorForm(
        6, 3, {(1, 3, 6): 1.0, (1, 4, 5): 1.0, (2, 3, 5): 1.0, (2, 4, 6): -1.0}
    )
    assert got == cf.canonical("PSI_MINUS")


def test_hodge_involution_over_all_blades():
    for n in range(1, 9):
        for k in range(0, n + 1):
            for combo in itertools.combinations(range(1, n + 1), k):
                a = ExteriorForm(n, k, {combo: 1.0}) if k else ExteriorForm(n, 0, {(): 1.0})
                sign = (-1) ** (k * (n - k))
                assert cf.hodge(cf.hodge(a)) == float(sign) * a


def test_wedge_with_hodge_recovers_inner_product():
    for n in range(1, 8):
        vol = cf.volume_form(n)
        for k in range(0, n + 1):
            blades = list(itertools.combinations(range(1, n + 1), k))
            for ia in blades:
                for ib in blades:
                    a = ExteriorForm(n, k, {ia: 1.0}) if k else ExteriorForm(n, 0, {(): 1.0})
                    b = ExteriorForm(n, k, {ib: 1.0}) if k else ExteriorForm(n, 0, {(): 1.0})
                    assert cf.wedge(a, cf.hodge(b)) == cf.inner(a, b) * vol


def test_hodge_matches_dense_oracle():
    rng = np.random.default_rng(5)
    for _ in range(20):
        n = int(rng.integers(2, 7))
        k = int(rng.integers(0, n + 1))
        a = random_float_form(rng, n, k)
        got = cf.hodge(a)
        want = dense_to_terms(dense_hodge(as_dense(a), n), n - k)
        assert_terms_close(got, want)


# -- inner product ------------------------------------------------------------------


def test_inner_examples():
    assert cf.inner(blade(3, (1, 2)), blade(3, (1, 2))) == 1.0
    tau0 = cf.canonical("TAU0")
    sigma0 = cf.canonical("SIGMA0")
    assert cf.inner(tau0, tau0) == 7.0
    assert cf.inner(sigma0, sigma0) == 4.0
    with pytest.raises(ValueError):
        cf.inner(tau0, sigma0)


def test_inner_matches_dense_oracle():
    rng = np.random.default_rng(6)
    for _ in range(20):
        n = int(rng.integers(2, 7))
        k = int(rng.integers(0, n + 1))
        a = random_float_form(rng, n, k)
        b = random_float_form(rng, n, k)
        assert cf.inner(a, b) == pytest.approx(dense_inner(as_dense(a), as_dense(b)), abs=1e-12)


def test_contraction_norms_of_three_forms():
    # sum_i |e_i _| tau|^2 = 3 |tau|^2 in the orthonormal blade convention
    rng = np.random.default_rng(7)
    for trial in range(50):
        n = int(rng.integers(3, 9))
        tau = cf.random_form(trial, n, 3)
        total = sum(
            cf.inner(cf.interior(np.eye(n)[i], tau), cf.interior(np.eye(n)[i], tau))
            for i in range(n)
        )
        assert abs(total - 3.0 * cf.inner(tau, tau)) <= 1e-10


# -- the 2-form / skew endomorphism dictionary ---------------------------------------


def test_two_form_to_endo_convention():
    A = cf.two_form_to_endo(blade(3, (1, 2)))
    want = np.zeros((3, 3))
    want[1, 0] = 1.0
    want[0, 1] = -1.0
    assert np.array_equal(A, want)


def test_endo_dictionary_roundtrip():
    beta = ExteriorForm(6, 2, {(3, 5): 1.0, (4, 6): -1.0})
    assert cf.endo_to_two_form(cf.two_form_to_endo(beta)) == beta
    A = cf.canonical("A0")
    assert np.array_equal(cf.two_form_to_endo(cf.endo_to_two_form(A)), A)


def test_su3_contraction_square_spectrum():
    B = cf.two_form_to_endo(ExteriorForm(6, 2, {(3, 5): 1.0, (4, 6): -1.0}))
    eig = np.sort(np.linalg.eigvalsh(B @ B))
    assert np.allclose(eig, [-1, -1, -1, -1, 0, 0], atol=1e-12)


def test_non_skew_matrix_rejected():
    M = np.eye(4)
    with pytest.raises(ValueError):
        cf.endo_to_two_form(M)


def test_trace_of_square_vs_blade_norm():
    rng = np.random.default_rng(8)
    for trial in range(30):
        n = int(rng.integers(2, 9))
        beta = cf.random_form(trial, n, 2)
        B = cf.two_form_to_endo(beta)
        assert np.trace(B @ B) == pytest.approx(-2.0 * cf.inner(beta, beta), abs=1e-10)


# -- derivation action of skew endomorphisms ------------------------------------------


def test_action_of_complex_structure():
    omega0 = cf.canonical("OMEGA0")
    J = cf.two_form_to_endo(omega0)
    assert cf.endo_action(J, omega0).is_zero()
    assert cf.endo_action(J, cf.canonical("PSI_PLUS")) == 3.0 * cf.canonical("PSI_MINUS")


def test_action_on_one_forms_is_the_endomorphism():
    rng = np.random.default_rng(9)
    for _ in range(10):
        n = int(rng.integers(2, 7))
        A = rng.standard_normal((n, n))
        A = A - A.T
        v = rng.standard_normal(n)
        got = cf.endo_action(A, cf.one_form(v))
        assert_terms_close(got, dict(cf.one_form(A @ v).terms))


def test_action_kills_scalars():
    A = cf.canonical("A0")
    assert cf.endo_action(A, ExteriorForm(7, 0, {(): 5.0})).is_zero()


# -- dense conversion and pullback -----------------------------------------------------


def test_dense_roundtrip():
    rng = np.random.default_rng(10)
    for _ in range(10):
        n = int(rng.integers(2, 7))
        k = int(rng.integers(0, min(n, 4) + 1))
        a = random_float_form(rng, n, k)
        assert from_dense(n, k, to_dense(a)).isclose(a, 1e-12)


def test_pullback_by_identity():
    tau0 = cf.canonical("TAU0")
    assert cf.pullback(tau0, np.eye(7)).isclose(tau0, 1e-12)


# -- helpers ------------------------------------------------------------------------


def random_float_form(rng, n, k):
    terms = {c: float(rng.standard_normal()) for c in itertools.combinations(range(1, n + 1), k)}
    if k == 0:
        terms = {(): float(rng.standard_normal())}
    return ExteriorForm(n, k, terms)


def assert_terms_close(form, expected_terms, tol=1e-10):
    keys = set(form.terms) | set(expected_terms)
    for key in keys:
        assert abs(form.coeff(key) - expected_terms.get(key, 0.0)) <= tol, key
