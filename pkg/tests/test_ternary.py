import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ternkit import linalg, ternary
from ternkit.errors import InputError, MembershipError, StructureError, UnsupportedError
from ternkit.sampling import random_tro


def unit(i, j, n=2, m=None):
    e = np.zeros((n, m or n), dtype=complex)
    e[i, j] = 1
    return e


E11, E12, E21, E22 = unit(0, 0), unit(0, 1), unit(1, 0), unit(1, 1)
I2 = np.eye(2, dtype=complex)


def full(n, m=None, sign=1):
    m = m or n
    return ternary.ConcreteTRO(linalg.span([unit(i, j, n, m) for i in range(n) for j in range(m)]), sign)


def scalar_system(sign=1):
    return ternary.StructureConstants(np.full((1, 1, 1, 1), sign, dtype=complex))


def brute_closure_dim(gens, rounds=6):
    """Oracle: repeatedly add all triple products of the current spanning set."""
    current = [np.asarray(g, dtype=complex) for g in gens]
    for _ in range(rounds):
        basis = linalg.span(current).basis
        current = list(basis) + [x @ y.conj().T @ z for x, y, z in itertools.product(basis, repeat=3)]
    return linalg.span(current).dim


# ---------------------------------------------------------------- triple products


def test_concrete_triple_examples():
    M = full(2)
    np.testing.assert_allclose(M.triple(I2, I2, I2), I2)
    np.testing.assert_allclose(M.triple(E11, E11, E12), E11 @ E11.conj().T @ E12)
    np.testing.assert_allclose(M.triple(I2, 1j * I2, I2), -1j * I2)


def test_triple_rejects_non_member():
    M = ternary.ternary_closure([E12])
    with pytest.raises(MembershipError):
        M.triple(E21, E12, E12)


def test_sign_scales_product():
    plus, minus = full(2), full(2, sign=-1)
    x, y, z = E12, E12, E21 + E22
    np.testing.assert_allclose(minus.triple(x, y, z), -plus.triple(x, y, z))


def test_coefficient_triple_conjugates_middle():
    M = full(2)
    rng = np.random.default_rng(3)
    x, y, z = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    expected = M.coords(M.element(x) @ M.element(y).conj().T @ M.element(z))
    np.testing.assert_allclose(M.triple(x, y, z), expected, atol=1e-12)


# ---------------------------------------------------------------- associativity and linearity


def test_associativity_passes_on_concrete_and_scalar():
    rep = ternary.check_associativity(full(2))
    assert rep.passed and rep["associativity"].max_residual < 1e-12
    assert ternary.check_associativity(scalar_system()).passed


def test_unconjugated_middle_slot_fails_linearity_first():
    sys = ternary.ProductSystem(1, lambda x, y, z: x * y * z)
    rep = ternary.check_associativity(sys)
    assert not rep["linearity"].passed
    assert rep["linearity"].witnesses == ["middle"]
    assert rep["associativity"].status == "skipped"


def test_perturbed_tensor_reports_witness():
    rng = np.random.default_rng(5)
    c = full(2).tensor + 0.3 * rng.standard_normal((4, 4, 4, 4))
    rep = ternary.check_associativity(ternary.StructureConstants(c))
    assert not rep.passed
    x = rep["associativity"].witnesses[0]
    r1, r2, _ = ternary.associativity_residuals(c, [x])
    assert max(r1[0], r2[0]) == pytest.approx(rep["associativity"].max_residual)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([1, -1]))
def test_random_tro_axioms(seed, sign):
    tro = random_tro(np.random.default_rng(seed), max_size=3, sign=sign)
    assert ternary.check_closure(tro).passed
    assert ternary.check_associativity(tro, seed=seed).passed
    assert ternary.check_norm_axioms(tro, samples=30, seed=seed).passed


def test_change_basis_preserves_associativity():
    tro = ternary.ternary_closure([E12, E21 + E11])
    rng = np.random.default_rng(1)
    n = tro.dim
    s = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) + n * np.eye(n)
    assert ternary.check_associativity(ternary.change_basis(tro, s)).passed


# ---------------------------------------------------------------- norms


def test_norm_examples():
    M = full(2)
    e12 = M.coords(E12)
    assert linalg.operator_norm(M.matrix_product(E12, E12, E12)) == pytest.approx(1.0)
    assert M.norm(e12) ** 3 == pytest.approx(1.0)
    x = 2 * I2
    assert linalg.operator_norm(M.matrix_product(x, x, x)) == pytest.approx(8.0)
    assert ternary.check_norm_axioms(M).passed
    assert ternary.check_norm_axioms(full(2, sign=-1)).passed
    assert linalg.operator_norm(full(2, sign=-1).matrix_product(x, x, x)) == pytest.approx(8.0)


def test_norm_axioms_need_concrete_presentation():
    with pytest.raises(UnsupportedError):
        ternary.check_norm_axioms(scalar_system())


# ---------------------------------------------------------------- closure and algebras


@pytest.mark.parametrize("gens, dim", [([E12], 1), ([I2], 1), ([E12, E21], 2)])
def test_ternary_closure_examples(gens, dim):
    tro = ternary.ternary_closure(gens)
    assert tro.dim == dim == brute_closure_dim(gens)
    for g in gens:
        assert linalg.contains(tro.space, g)[0]


@pytest.mark.parametrize("gens, left, right", [
    ([E12], [E11], [E22]),
    ([E12, E21], [E11, E22], [E11, E22]),
    ([E11, E12, E21, E22], [E11, E12, E21, E22], [E11, E12, E21, E22]),
])
def test_left_and_right_algebras(gens, left, right):
    tro = ternary.ternary_closure(gens)
    assert linalg.projector_distance(ternary.left_algebra(tro), linalg.span(left)) < 1e-12
    assert linalg.projector_distance(ternary.right_algebra(tro), linalg.span(right)) < 1e-12


def test_linking_algebra_examples():
    # span{e12} compressed to B(C, C) is the full 1×1 TRO
    corner = ternary.ternary_closure([np.ones((1, 1))])
    link = ternary.linking_algebra(corner)
    assert link.dim == 4
    assert linalg.projector_distance(link, linalg.span([E11, E12, E21, E22])) < 1e-12
    # uncompressed span{e12} in B(C^2): still one dimension per block
    assert ternary.linking_algebra(ternary.ternary_closure([E12])).dim == 4
    zero = ternary.ConcreteTRO(linalg.zero_subspace(2, 2))
    assert ternary.linking_algebra(zero).dim == 0


def test_linking_algebra_rejects_negative_sign():
    with pytest.raises(UnsupportedError):
        ternary.linking_algebra(full(2, sign=-1))


# ---------------------------------------------------------------- homomorphisms


def test_identity_homomorphism():
    M = full(2)
    rep = ternary.check_homomorphism_contractive(np.eye(4), M, M)
    assert rep.passed


def test_scaled_identity_is_not_homomorphism():
    M = full(2)
    with pytest.raises(StructureError) as info:
        ternary.check_homomorphism_contractive(2 * np.eye(4), M, M)
    assert not info.value.report.passed


def test_projection_of_direct_sum_is_contractive_homomorphism():
    a, b = full(1), ternary.ternary_closure([E12])
    total = ternary.DirectSum([a, b])
    phi = np.array([[1.0, 0.0]])
    rep = ternary.check_homomorphism_contractive(phi, total, a)
    assert rep.passed and rep["contractive"].status == "pass"


def test_corner_compression_is_not_homomorphism():
    # keep e12, kill e13: [e13, e13, e12] = e12 is sent to e12 but the images give 0
    e12, e13 = unit(0, 1, 1, 3), unit(0, 2, 1, 3)
    source = ternary.ternary_closure([e12, e13])
    target = ternary.ternary_closure([e12])
    # orthogonal compression onto e12 under the trace inner product
    phi = np.array([target.space.coords(source.element(v)) for v in np.eye(2)]).T
    with pytest.raises(StructureError):
        ternary.check_homomorphism_contractive(phi, source, target)


def test_non_surjective_map_rejected():
    M = full(2)
    with pytest.raises(InputError):
        ternary.check_homomorphism_contractive(np.zeros((4, 4)), M, M)
