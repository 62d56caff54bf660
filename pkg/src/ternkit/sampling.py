"""Seeded random structures for property tests and the acceptance suite."""
import numpy as np

from . import linalg
from .category import random_cstar_category, random_tstar_category  # noqa: F401  (re-exported)
from .ternary import ConcreteTRO, DirectSum, change_basis, ternary_closure


def _rand_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_generator(rng, rows, cols):
    """One random generator: a phased matrix unit, a rank-one matrix, or a sparse matrix."""
    kind = int(rng.integers(3))
    if kind == 0:
        m = np.zeros((rows, cols), dtype=complex)
        m[int(rng.integers(rows)), int(rng.integers(cols))] = np.exp(2j * np.pi * rng.random())
        return m
    if kind == 1:
        return np.outer(_rand_complex(rng, rows), np.conj(_rand_complex(rng, cols)))
    m = _rand_complex(rng, (rows, cols)) * (rng.random((rows, cols)) < 0.3)
    if not m.any():
        m[int(rng.integers(rows)), int(rng.integers(cols))] = 1.0
    return m


def random_tro(rng, max_size=4, max_generators=3, sign=1, max_dim=None, tries=100):
    """Ternary closure of ≤ max_generators random generators in a ≤ max_size square ambient."""
    for _ in range(tries):
        rows = int(rng.integers(1, max_size + 1))
        cols = int(rng.integers(1, max_size + 1))
        gens = [random_generator(rng, rows, cols) for _ in range(int(rng.integers(1, max_generators + 1)))]
        tro = ternary_closure(gens, sign=sign)
        if max_dim is None or tro.dim <= max_dim:
            return tro
    raise RuntimeError("could not draw a random TRO within the size limit")


def random_signed_direct_sum(rng, max_parts=3, max_dim=4, max_size=3):
    """(Z, S, parts): a direct sum of signed random TROs seen through x' = S x.

    At least one part is positive and one negative when max_parts ≥ 2.
    Returns the system in the new coordinates, S, and the list of parts.
    """
    k = int(rng.integers(2, max_parts + 1)) if max_parts >= 2 else 1
    signs = [1, -1] + [int(rng.choice([1, -1])) for _ in range(k - 2)]
    signs = [signs[i] for i in rng.permutation(k)] if k > 1 else [1]
    parts = [random_tro(rng, max_size=max_size, sign=s, max_dim=max_dim) for s in signs]
    total = DirectSum(parts)
    n = total.dim
    S = _rand_complex(rng, (n, n)) + n * np.eye(n)
    return change_basis(total, S), S, parts


def signed_components(S, parts):
    """Oracle: coefficient subspaces of the positive and negative parts after x' = S x."""
    n = S.shape[0]
    plus, minus, off = [], [], 0
    for p in parts:
        cols = S[:, off:off + p.dim]
        (plus if p.scalar_sign == 1 else minus).append(cols)
        off += p.dim

    def space(blocks):
        cols = np.concatenate(blocks, axis=1) if blocks else np.zeros((n, 0))
        q = linalg.column_space(cols, 1e-12) if cols.shape[1] else cols
        return linalg.MatrixSubspace(n, 1, np.transpose(q).reshape(q.shape[1], n, 1))

    return space(plus), space(minus)


def direct_sum_norm(S, parts):
    """Norm on the new coordinates: the max norm of the parts evaluated at S⁻¹x′."""
    total = DirectSum(parts)
    sinv = np.linalg.inv(S)
    return lambda x: total.norm(sinv @ np.asarray(x, dtype=complex))


def random_element(rng, space):
    return space.element(_rand_complex(rng, space.dim))


__all__ = [
    "random_generator", "random_tro", "random_signed_direct_sum", "signed_components",
    "direct_sum_norm", "random_element", "random_cstar_category", "random_tstar_category",
    "ConcreteTRO",
]
