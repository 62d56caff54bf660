import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ternkit import embedding, linalg, ternary
from ternkit.embedding import Bar, OperatorPair, ell, r_pair
from ternkit.errors import InputError, StructureError, UnsupportedError
from ternkit.sampling import random_tro


def unit(i, j, n=2, m=None):
    e = np.zeros((n, m or n), dtype=complex)
    e[i, j] = 1
    return e


E11, E12, E21, E22 = unit(0, 0), unit(0, 1), unit(1, 0), unit(1, 1)


def full(n, m=None, sign=1):
    m = m or n
    return ternary.ConcreteTRO(linalg.span([unit(i, j, n, m) for i in range(n) for j in range(m)]), sign)


def left_mult(M, a):
    """Oracle: matrix of f ↦ a f on the coefficients of M."""
    return np.array([M.coords(a @ M.element(e)) for e in np.eye(M.dim)]).T


def right_mult(M, b):
    return np.array([M.coords(M.element(e) @ b) for e in np.eye(M.dim)]).T


SPAN_E12 = ternary.ternary_closure([E12])
M2 = full(2)


# ---------------------------------------------------------------- pairs


def test_pair_multiplication_conventions():
    rng = np.random.default_rng(0)
    a1, a2, b1, b2 = rng.standard_normal((4, 2, 2))
    left = OperatorPair("left", a1, a2) * OperatorPair("left", b1, b2)
    np.testing.assert_allclose(left.A1, a1 @ b1)
    np.testing.assert_allclose(left.A2, b2 @ a2)
    right = OperatorPair("right", a1, a2) * OperatorPair("right", b1, b2)
    np.testing.assert_allclose(right.A1, b1 @ a1)
    np.testing.assert_allclose(right.A2, a2 @ b2)


def test_pair_involution_reverses_products():
    rng = np.random.default_rng(1)
    for side in ("left", "right"):
        p = OperatorPair(side, *rng.standard_normal((2, 3, 3)))
        q = OperatorPair(side, *rng.standard_normal((2, 3, 3)))
        lhs, rhs = (p * q).star(), q.star() * p.star()
        np.testing.assert_allclose(lhs.A1, rhs.A1)
        np.testing.assert_allclose(lhs.A2, rhs.A2)


def test_mixed_sides_rejected():
    with pytest.raises(InputError):
        OperatorPair("left", np.eye(2), np.eye(2)) * OperatorPair("right", np.eye(2), np.eye(2))


def test_ell_and_r_examples():
    I = M2.coords(np.eye(2))
    e11 = M2.coords(E11)
    np.testing.assert_allclose(ell(M2, I, I).A1, np.eye(4), atol=1e-12)
    np.testing.assert_allclose(ell(M2, I, I).A2, np.eye(4), atol=1e-12)
    np.testing.assert_allclose(r_pair(M2, I, I).A1, np.eye(4), atol=1e-12)
    np.testing.assert_allclose(ell(M2, e11, e11).A1, left_mult(M2, E11), atol=1e-12)
    np.testing.assert_allclose(r_pair(M2, e11, e11).A1, right_mult(M2, E11), atol=1e-12)
    zero = np.zeros(4)
    assert ell(M2, zero, I).norm() == 0.0
    assert r_pair(M2, I, zero).norm() == 0.0


def test_module_actions():
    rng = np.random.default_rng(2)
    f, h, k = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    I = M2.coords(np.eye(2))
    np.testing.assert_allclose(embedding.module_action(ell(M2, I, I), f), f, atol=1e-12)
    np.testing.assert_allclose(embedding.module_action(f, r_pair(M2, h, k)), M2.product(f, h, k), atol=1e-12)
    bar = embedding.module_action(r_pair(M2, h, k), Bar(f))
    np.testing.assert_allclose(bar.f, M2.product(f, k, h), atol=1e-12)
    with pytest.raises(InputError):
        embedding.module_action(r_pair(M2, h, k), f)


def test_inner_product_examples():
    e = SPAN_E12.coords(E12)
    R = embedding.build_R(SPAN_E12)
    assert R.dim == 1
    ip = embedding.inner_product(SPAN_E12, e, e)
    np.testing.assert_allclose(ip.vector(), r_pair(SPAN_E12, e, e).vector())
    assert embedding.inner_product(SPAN_E12, np.zeros(1), e).norm() == 0.0


def test_inner_product_right_linearity():
    rng = np.random.default_rng(3)
    f, g, h, k = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    B = r_pair(M2, h, k)
    fB = embedding.module_action(f, B)
    lhs = embedding.inner_product(M2, fB, g)
    rhs = embedding.inner_product(M2, f, g) * B
    np.testing.assert_allclose(lhs.vector(), rhs.vector(), atol=1e-10)


# ---------------------------------------------------------------- L(M), R(M)


def brute_pair_span_dim(M, side):
    maker = ell if side == "left" else r_pair
    eye = np.eye(M.dim)
    vecs = [maker(M, eye[i], eye[j]).vector() for i in range(M.dim) for j in range(M.dim)]
    return np.linalg.matrix_rank(np.array(vecs), tol=1e-9) if vecs else 0


@pytest.mark.parametrize("M", [SPAN_E12, M2, ternary.ternary_closure([E12, E21])], ids=["e12", "m2", "e12_e21"])
def test_pair_algebra_dimensions_match_span_rank(M):
    for side, build in (("left", embedding.build_L), ("right", embedding.build_R)):
        assert build(M).dim == brute_pair_span_dim(M, side)
    assert embedding.build_R(SPAN_E12).dim == 1


def test_left_pairs_of_full_matrices_form_a_copy_of_m2():
    # ℓ(e_ij, e_kj) = (left mult by e_ik, left mult by e_ki): one pair per matrix unit
    L = embedding.build_L(M2)
    assert L.dim == brute_pair_span_dim(M2, "left") == 4
    assert linalg.projector_distance(
        linalg.span([p.reshape(4, 4) for p in L.first]),
        linalg.span([left_mult(M2, unit(i, k)) for i in range(2) for k in range(2)])) < 1e-10


def test_zero_system_pair_algebras():
    zero = ternary.ConcreteTRO(linalg.zero_subspace(2, 2))
    assert embedding.build_L(zero).dim == 0 and embedding.build_R(zero).dim == 0
    assert embedding.EmbeddingAlgebra(zero).dim == 0


def test_pair_algebras_closed_under_star():
    for M in (SPAN_E12, M2):
        for alg in (embedding.build_L(M), embedding.build_R(M)):
            rng = np.random.default_rng(4)
            x = rng.standard_normal(alg.dim) + 1j * rng.standard_normal(alg.dim)
            star = alg.pair(alg.star(x))
            np.testing.assert_allclose(star.vector(), alg.pair(x).star().vector(), atol=1e-10)


def test_pair_identities_pass_on_tros_and_scalar():
    assert embedding.check_pair_identities(M2).passed
    scalar = ternary.StructureConstants(np.ones((1, 1, 1, 1)))
    rep = embedding.check_pair_identities(scalar)
    assert rep.passed and rep.max_residual == 0.0


def test_pair_identities_fail_on_perturbed_tensor():
    rng = np.random.default_rng(5)
    bad = ternary.StructureConstants(M2.tensor + 0.2 * rng.standard_normal((4, 4, 4, 4)))
    rep = embedding.check_pair_identities(bad)
    assert not rep.passed
    assert all(c.witnesses for c in rep.failed())


# ---------------------------------------------------------------- 𝒜(M)


def test_embedding_dimensions_and_triple():
    E, rep = embedding.standard_embedding(SPAN_E12)
    assert E.dim == 4 and rep.passed
    e = SPAN_E12.coords(E12)
    a = E.corner(e)
    np.testing.assert_allclose(E.mul(E.mul(a, E.sharp(a)), a), a, atol=1e-12)


def test_standard_embedding_rejects_nonassociative():
    rng = np.random.default_rng(6)
    bad = ternary.StructureConstants(M2.tensor + 0.2 * rng.standard_normal((4, 4, 4, 4)))
    with pytest.raises(StructureError):
        embedding.standard_embedding(bad)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([1, -1]))
def test_embedding_is_associative_star_algebra(seed, sign):
    M = random_tro(np.random.default_rng(seed), max_size=3, sign=sign, max_dim=5)
    _, rep = embedding.standard_embedding(M, samples=10, seed=seed)
    assert rep.passed


def test_pi_on_corner_element():
    E = embedding.EmbeddingAlgebra(M2)
    rng = np.random.default_rng(7)
    f = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    fp = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    beta = rng.standard_normal(E.dr) + 1j * rng.standard_normal(E.dr)
    out = E.pi(E.corner(f)) @ np.concatenate([fp, beta])
    expected_f = embedding.module_action(f, E.R.pair(beta))
    np.testing.assert_allclose(out[:4], expected_f, atol=1e-10)
    np.testing.assert_allclose(out[4:], 0, atol=1e-12)
    assert np.all(E.pi(E.zero()) == 0)


def test_pi_faithful_on_span_e12():
    E = embedding.EmbeddingAlgebra(SPAN_E12)
    _, rep = embedding.pi_representation(E)
    assert rep.passed
    assert rep["pi_injective"].details["kernel_dim"] == 0


# ---------------------------------------------------------------- norms


def test_cstar_norm_examples():
    E = embedding.EmbeddingAlgebra(M2)
    norm = embedding.cstar_norm(E)
    f = M2.coords(E12 + 2 * E21)
    assert norm(E.corner(f)) == pytest.approx(linalg.operator_norm(E12 + 2 * E21))
    assert norm(E.zero()) == 0.0
    E2 = embedding.EmbeddingAlgebra(ternary.ternary_closure([E12, E21]))
    rep = embedding.check_cstar_identity(E2, samples=50)
    assert rep.passed and rep["cstar_identity"].max_residual < 1e-8


def test_cstar_norm_needs_concrete_positive_system():
    scalar = ternary.StructureConstants(np.ones((1, 1, 1, 1)))
    with pytest.raises(UnsupportedError):
        embedding.cstar_norm(embedding.EmbeddingAlgebra(scalar))
    with pytest.raises(UnsupportedError):
        embedding.cstar_norm(embedding.EmbeddingAlgebra(full(2, sign=-1)))


def test_R_cstar_identity_examples():
    rep = embedding.cstar_identity_R(SPAN_E12, samples=5)
    assert rep.passed
    U = r_pair(SPAN_E12, [1.0], [1.0])
    assert U.A1 == pytest.approx(np.ones((1, 1)))
    assert (U.star() * U).A1 == pytest.approx(np.ones((1, 1)))
    assert embedding.cstar_identity_R(M2, samples=100).passed


# ---------------------------------------------------------------- functoriality


def test_identity_extension_is_identity():
    ext = embedding.functorial_extension(np.eye(4), M2, M2)
    assert ext.report.passed
    np.testing.assert_allclose(ext.matrix, np.eye(embedding.EmbeddingAlgebra(M2).dim), atol=1e-10)


def test_quotient_extension_kills_the_dropped_corner():
    a, b = full(1), ternary.ternary_closure([E12])
    total = ternary.DirectSum([a, b])
    ext = embedding.functorial_extension(np.array([[1.0, 0.0]]), total, a)
    assert ext.report.passed
    E1 = embedding.EmbeddingAlgebra(total)
    dropped = E1.corner([0.0, 1.0])
    np.testing.assert_allclose(ext(dropped), 0, atol=1e-12)
    kept = E1.corner([1.0, 0.0])
    assert np.linalg.norm(ext(kept)) == pytest.approx(1.0)


def test_non_linear_map_rejected():
    scalar = ternary.StructureConstants(np.ones((1, 1, 1, 1)))
    with pytest.raises(InputError):
        embedding.functorial_extension(lambda z: np.conj(z), scalar, scalar)


def test_non_surjective_extension_rejected():
    with pytest.raises(InputError):
        embedding.functorial_extension(np.zeros((4, 4)), M2, M2)
