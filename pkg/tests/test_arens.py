import itertools

import numpy as np
import pytest

from ternkit import arens, linalg
from ternkit.arens import Bidual, BidualElement
from ternkit.category import FiniteStarCategory
from ternkit.errors import InputError
from ternkit.sampling import random_cstar_category


def unit(i, j, n=2, m=None):
    e = np.zeros((n, m or n), dtype=complex)
    e[i, j] = 1
    return e


def full_hom(rows, cols):
    return linalg.span([unit(i, j, rows, cols) for i in range(rows) for j in range(cols)])


def matrix_category(dims, flavor="cstar"):
    homs = {(x, y): full_hom(dims[y], dims[x]) for x in dims for y in dims}
    return FiniteStarCategory(dims, homs, flavor, unital=flavor == "cstar")


SCALAR_C = matrix_category({"X": 1})
SCALAR_T = matrix_category({"X": 1}, "tstar")
TWO = matrix_category({"X": 1, "Y": 2})


def rand(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def random_bidual(B, rng, pair):
    return BidualElement(pair, rand(rng, B.dim(pair)))


# ---------------------------------------------------------------- pairings


def test_hat_pairs_like_evaluation():
    B = Bidual(TWO)
    rng = np.random.default_rng(0)
    a = rand(rng, 2)
    f = B.functional(("X", "Y"), rand(rng, 2))
    assert B.hat(("X", "Y"), a).pair(f) == pytest.approx(f.pair(a))


def test_pairing_is_linear():
    B = Bidual(TWO)
    rng = np.random.default_rng(1)
    f = B.functional(("Y", "Y"), rand(rng, 4))
    a, b = rand(rng, 4), rand(rng, 4)
    assert f.pair(2j * a + b) == pytest.approx(2j * f.pair(a) + f.pair(b))


def test_hat_rejects_wrong_dimension():
    with pytest.raises(InputError):
        Bidual(TWO).hat(("X", "Y"), [1.0, 2.0, 3.0])


# ---------------------------------------------------------------- binary Arens product


def test_binary_extends_composition():
    B = Bidual(TWO)
    rng = np.random.default_rng(2)
    a, b = rand(rng, 2), rand(rng, 2)
    out = arens.arens_binary(TWO, B.hat(("X", "Y"), a), B.hat(("Y", "X"), b))
    # oracle: multiply the matrices and read off coordinates
    ma = TWO.hom("X", "Y").element(a)
    mb = TWO.hom("Y", "X").element(b)
    np.testing.assert_allclose(out.coeffs, TWO.hom("X", "X").coords(mb @ ma), atol=1e-12)


def test_binary_zero_and_scalar_chain():
    B = Bidual(SCALAR_C)
    p = ("X", "X")
    assert np.all(arens.arens_binary(SCALAR_C, B.zero(p), B.hat(p, [5.0])).coeffs == 0)
    six = arens.arens_binary(SCALAR_C, B.hat(p, [2.0]), B.hat(p, [3.0]))
    assert six.coeffs == pytest.approx([6.0])


def test_binary_pair_mismatch():
    B = Bidual(TWO)
    with pytest.raises(InputError):
        arens.arens_binary(TWO, B.zero(("X", "Y")), B.zero(("X", "Y")))


def test_binary_associativity_on_biduals():
    B = Bidual(TWO)
    rng = np.random.default_rng(3)
    F = random_bidual(B, rng, ("X", "Y"))
    G = random_bidual(B, rng, ("Y", "Y"))
    H = random_bidual(B, rng, ("Y", "X"))
    lhs = B.arens_binary(F, B.arens_binary(G, H))
    rhs = B.arens_binary(B.arens_binary(F, G), H)
    np.testing.assert_allclose(lhs.coeffs, rhs.coeffs, atol=1e-10)


# ---------------------------------------------------------------- ternary Arens product


def test_mu0_scalar_evaluation():
    B = Bidual(SCALAR_T)
    p = ("X", "X")
    f = B.functional(p, [1.0])
    # ⟨μ₀(f, 2, 3), c⟩ = f(c · conj(3) · 2), so μ₀(f, 2, 3) = 6 f
    assert B.mu0(f, p, np.array([2.0]), p, np.array([3.0])).coeffs == pytest.approx([6.0])
    assert B.mu0(f, p, np.array([2.0]), p, np.array([3j])).coeffs == pytest.approx([-6j])


def test_ternary_zero():
    B = Bidual(SCALAR_T)
    p = ("X", "X")
    z = B.zero(p)
    assert np.all(arens.arens_ternary(SCALAR_T, z, z, z).coeffs == 0)


def test_ternary_extends_product_on_span_e12():
    C = FiniteStarCategory({"X": 2}, {("X", "X"): linalg.span([unit(0, 1)])}, "tstar")
    B = Bidual(C)
    p = ("X", "X")
    e = np.array([1.0])
    out = arens.arens_ternary(C, B.hat(p, e), B.hat(p, e), B.hat(p, e))
    m = C.hom(*p).element(e)  # ±e12, whichever sign the orthonormal basis picked
    assert abs(abs(m[0, 1]) - 1) < 1e-12
    expected = C.hom(*p).coords(C.ternary(m, m, m, "X", "X"))
    assert np.abs(out.coeffs - expected).max() < 1e-12


def test_ternary_extends_product_across_objects():
    C = matrix_category({"X": 1, "Y": 2}, "tstar")
    B = Bidual(C)
    rng = np.random.default_rng(4)
    for x, y, z, w in itertools.product(C.names, repeat=4):
        a, b, c = rand(rng, B.dim((x, y))), rand(rng, B.dim((z, y))), rand(rng, B.dim((z, w)))
        out = B.arens_ternary(B.hat((x, y), a), B.hat((z, y), b), B.hat((z, w), c))
        ma, mb, mc = C.hom(x, y).element(a), C.hom(z, y).element(b), C.hom(z, w).element(c)
        expected = C.hom(x, w).coords(C.ternary(mc, mb, ma, x, w))
        np.testing.assert_allclose(out.coeffs, expected, atol=1e-12)


def test_ternary_middle_slot_conjugate_linear():
    C = matrix_category({"X": 2}, "tstar")
    B = Bidual(C)
    rng = np.random.default_rng(5)
    p = ("X", "X")
    F, G, H = (random_bidual(B, rng, p) for _ in range(3))
    lam = 0.3 - 1.7j
    lhs = B.arens_ternary(F, lam * G, H)
    rhs = B.arens_ternary(F, G, H)
    np.testing.assert_allclose(lhs.coeffs, np.conj(lam) * rhs.coeffs, atol=1e-12)


def test_ternary_pattern_violation():
    C = matrix_category({"X": 1, "Y": 2}, "tstar")
    B = Bidual(C)
    with pytest.raises(InputError):
        B.arens_ternary(B.zero(("X", "Y")), B.zero(("X", "X")), B.zero(("X", "Y")))


# ---------------------------------------------------------------- involution


def test_involution_on_embedded_elements():
    B = Bidual(TWO)
    rng = np.random.default_rng(6)
    a = rand(rng, 2)
    star = arens.bidual_involution(TWO, B.hat(("X", "Y"), a))
    m = TWO.hom("X", "Y").element(a)
    np.testing.assert_allclose(star.coeffs, TWO.hom("Y", "X").coords(m.conj().T), atol=1e-12)


def test_involution_twice_and_anti_multiplicative():
    B = Bidual(TWO)
    rng = np.random.default_rng(7)
    F = random_bidual(B, rng, ("X", "Y"))
    G = random_bidual(B, rng, ("Y", "Y"))
    twice = B.bidual_involution(B.bidual_involution(F))
    np.testing.assert_allclose(twice.coeffs, F.coeffs, atol=1e-12)
    lhs = B.bidual_involution(B.arens_binary(F, G))
    rhs = B.arens_binary(B.bidual_involution(G), B.bidual_involution(F))
    np.testing.assert_allclose(lhs.coeffs, rhs.coeffs, atol=1e-12)


def test_involution_needs_cstar_category():
    with pytest.raises(InputError):
        arens.bidual_involution(SCALAR_T, Bidual(SCALAR_T).zero(("X", "X")))


# ---------------------------------------------------------------- Sherman–Takeda


def test_sherman_takeda_on_embedded_and_scalar():
    B = Bidual(SCALAR_C)
    p = ("X", "X")
    out = arens.sherman_takeda(SCALAR_C, B.hat(p, [2.0]), B.hat(p, [3.0]))
    assert out.coeffs == pytest.approx([6.0])


def test_sherman_takeda_matches_arens_on_random_biduals():
    C = matrix_category({"X": 2})
    B = Bidual(C)
    rng = np.random.default_rng(8)
    p = ("X", "X")
    for _ in range(10):
        F, G = random_bidual(B, rng, p), random_bidual(B, rng, p)
        a = B.arens_binary(F, G)
        s = B.sherman_takeda(F, G)
        assert np.abs(a.coeffs - s.coeffs).max() < 1e-10


def test_sherman_takeda_rejects_non_faithful_representation():
    C = matrix_category({"X": 2})
    B = Bidual(C)
    p = ("X", "X")
    sigma = {p: np.zeros((4, 2, 2))}
    with pytest.raises(InputError):
        arens.sherman_takeda(C, B.zero(p), B.zero(p), sigma)


# ---------------------------------------------------------------- regularity report


def test_regularity_report_on_matrix_category():
    rep = arens.regularity_report(TWO, samples=100, seed=0)
    assert rep.passed
    assert rep["arens_ternary_associativity_outer"].max_residual < 1e-9
    assert rep["arens_binary_associativity"].max_residual < 1e-10


def test_regularity_report_on_zero_category():
    rep = arens.regularity_report(FiniteStarCategory({"X": 1}, {}, "cstar"), samples=5)
    assert rep.passed


def test_regularity_report_on_random_categories():
    for s in range(3):
        C = random_cstar_category(np.random.default_rng(500 + s))
        assert arens.regularity_report(C, samples=20, seed=s).passed
