"""Dense complex linear algebra and subspace arithmetic.

All subspaces of matrix spaces are orthonormalized under the trace
(Hilbert-Schmidt) inner product <A, B> = tr(B* A).  Matrices are vectorized
row-major, so that inner product is `np.vdot(B.ravel(), A.ravel())`.
"""
from dataclasses import dataclass

import numpy as np

from .errors import InputError, StructureError

DEFAULT_TOL = 1e-9


def as_matrix(m, name="matrix"):
    """Return `m` as a finite 2-D complex array, or raise InputError."""
    a = np.asarray(m, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2:
        raise InputError(f"{name} must be 2-dimensional, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError(f"{name} has non-finite entries")
    return a


def operator_norm(m):
    """Largest singular value."""
    a = as_matrix(m)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def adjoint(m):
    return np.conj(np.asarray(m, dtype=complex)).T


def hs_inner(a, b):
    """Trace inner product tr(b* a)."""
    return complex(np.vdot(np.asarray(b).ravel(), np.asarray(a).ravel()))


def row_basis(vectors, tol=DEFAULT_TOL):
    """Orthonormal rows spanning the row space of `vectors`.

    Singular directions below tol * (largest singular value) are dropped.
    Returns (basis, coefficient map K) with basis = K @ vectors.
    """
    v = np.asarray(vectors, dtype=complex)
    if v.ndim != 2:
        raise InputError("expected a 2-D array of row vectors")
    k, n = v.shape
    if k == 0 or n == 0:
        return np.zeros((0, n), dtype=complex), np.zeros((0, k), dtype=complex)
    u, s, vh = np.linalg.svd(v, full_matrices=False)
    if s[0] == 0.0:
        return np.zeros((0, n), dtype=complex), np.zeros((0, k), dtype=complex)
    r = int(np.sum(s > tol * s[0]))
    basis = vh[:r]
    coef = (np.conj(u[:, :r]).T) / s[:r, None]
    return basis, coef


def null_space(a, tol=DEFAULT_TOL):
    """Orthonormal columns spanning the kernel of `a` (relative threshold)."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n, dtype=complex)
    u, s, vh = np.linalg.svd(a, full_matrices=True)
    top = s[0] if s.size else 0.0
    r = int(np.sum(s > tol * top)) if top > 0 else 0
    return np.conj(vh[r:]).T


@dataclass(frozen=True, eq=False)
class MatrixSubspace:
    """Orthonormal basis (k, rows, cols) of a subspace of rows x cols matrices."""

    rows: int
    cols: int
    basis: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=complex)
        k = b.shape[0] if b.ndim == 3 else (b.size // max(self.rows * self.cols, 1))
        b = b.reshape(k, self.rows, self.cols)
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self):
        return self.basis.shape[0]

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def vectors(self):
        """Basis as rows of a (k, rows*cols) matrix."""
        return self.basis.reshape(self.dim, self.rows * self.cols)

    def coords(self, m):
        """Coefficients of the orthogonal projection of m onto the span."""
        m = np.asarray(m, dtype=complex)
        if m.shape[-2:] != self.shape:
            raise InputError(f"shape {m.shape[-2:]} does not match subspace shape {self.shape}")
        flat = m.reshape(m.shape[:-2] + (self.rows * self.cols,))
        return flat @ np.conj(self.vectors).T

    def element(self, coeffs):
        """Matrix with the given coefficients (works on stacked coefficients)."""
        c = np.asarray(coeffs, dtype=complex)
        return np.tensordot(c, self.basis, axes=([-1], [0]))

    def projector(self):
        v = self.vectors
        return v.T @ np.conj(v)

    def with_tol(self, tol):
        return MatrixSubspace(self.rows, self.cols, self.basis, tol)


def zero_subspace(rows, cols, tol=DEFAULT_TOL):
    return MatrixSubspace(rows, cols, np.zeros((0, rows, cols), dtype=complex), tol)


def span(generators, tol=DEFAULT_TOL, shape=None):
    """Orthonormal basis of the complex span of equally shaped matrices."""
    if tol <= 0:
        raise InputError("tol must be positive")
    gens = [as_matrix(g, "generator") for g in generators]
    if not gens:
        if shape is None:
            raise InputError("empty generator list needs an explicit shape")
        return zero_subspace(shape[0], shape[1], tol)
    rows, cols = gens[0].shape
    if any(g.shape != (rows, cols) for g in gens):
        raise InputError("generators do not share one shape")
    if shape is not None and tuple(shape) != (rows, cols):
        raise InputError("generator shape does not match the requested shape")
    basis, _ = row_basis(np.stack(gens).reshape(len(gens), rows * cols), tol)
    return MatrixSubspace(rows, cols, basis.reshape(-1, rows, cols), tol)


def residual(s, m):
    """Norm of the component of m orthogonal to s."""
    m = as_matrix(m)
    if m.shape != s.shape:
        raise InputError(f"shape {m.shape} does not match subspace shape {s.shape}")
    if s.dim == 0:
        return float(np.linalg.norm(m))
    return float(np.linalg.norm(m - s.element(s.coords(m))))


def contains(s, m):
    """(flag, residual); flag iff residual <= s.tol * max(1, ||m||_HS)."""
    r = residual(s, m)
    scale = max(1.0, float(np.linalg.norm(as_matrix(m))))
    return r <= s.tol * scale, r


def projector_distance(s, t):
    """Operator norm of the difference of the orthogonal projectors."""
    if s.shape != t.shape:
        raise InputError("subspaces live in different ambient spaces")
    return operator_norm(s.projector() - t.projector())


def column_projector(q):
    """Orthogonal projector onto the column span of orthonormal columns q."""
    q = np.asarray(q, dtype=complex)
    return q @ np.conj(q).T


def column_space(a, tol=DEFAULT_TOL):
    """Orthonormal columns spanning the range of `a`."""
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return np.zeros((a.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if s[0] == 0:
        return np.zeros((a.shape[0], 0), dtype=complex)
    return u[:, : int(np.sum(s > tol * s[0]))]


@dataclass(frozen=True)
class AlgebraElementSpectrum:
    eigenvalues: tuple
    is_self_adjoint: bool


def left_regular(table, element):
    """Matrix of y -> element * y for the product e_i e_j = sum_k table[i,j,k] e_k."""
    return np.einsum("i,ijk->kj", np.asarray(element, dtype=complex), table)


def find_unit(table, tol=DEFAULT_TOL):
    """Coefficients of a two-sided unit, or None when the algebra is not unital."""
    table = np.asarray(table, dtype=complex)
    n = table.shape[0]
    if n == 0:
        return None
    # u e_j = e_j and e_j u = e_j for every j, linear in u.
    left = np.transpose(table, (1, 2, 0)).reshape(n * n, n)
    right = np.transpose(table, (0, 2, 1)).reshape(n * n, n)
    a = np.vstack([left, right])
    b = np.concatenate([np.eye(n).ravel(), np.eye(n).ravel()])
    u, *_ = np.linalg.lstsq(a, b.astype(complex), rcond=None)
    if np.linalg.norm(a @ u - b) > tol * max(1.0, np.linalg.norm(b)) * 10:
        return None
    return u


def algebra_spectrum(table, element, star=None, tol=DEFAULT_TOL, seed=0, samples=4):
    """Spectrum of `element` in the unitalization of a finite-dimensional algebra.

    `table[i,j,k]` holds the product structure constants.  When the algebra
    already has a unit the spectrum is that of left multiplication; otherwise
    the adjoined unit contributes the extra eigenvalue 0.  `star`, if given,
    is the matrix J with coords(x*) = J @ conj(x); it is only used for the
    self-adjointness flag.
    """
    table = np.asarray(table, dtype=complex)
    x = np.asarray(element, dtype=complex)
    n = table.shape[0]
    if x.shape != (n,):
        raise InputError(f"element has {x.shape} coefficients, algebra has dimension {n}")
    if n == 0:
        return AlgebraElementSpectrum((0j,), True)
    rng = np.random.default_rng(seed)
    scale = max(1.0, float(np.max(np.abs(table))))
    for _ in range(samples):
        a, b, c = (rng.standard_normal((3, n)) + 1j * rng.standard_normal((3, n)))
        ab = np.einsum("i,j,ijk->k", a, b, table)
        bc = np.einsum("i,j,ijk->k", b, c, table)
        lhs = np.einsum("i,j,ijk->k", ab, c, table)
        rhs = np.einsum("i,j,ijk->k", a, bc, table)
        if np.linalg.norm(lhs - rhs) > 1e3 * tol * scale**2 * max(1.0, np.linalg.norm(lhs)):
            raise StructureError("multiplication table is not associative")
    eig = np.linalg.eigvals(left_regular(table, x))
    if find_unit(table, tol) is None:
        eig = np.append(eig, 0.0)
    eig = eig[np.lexsort((eig.imag, eig.real))]
    sa = False
    if star is not None:
        sa = bool(np.linalg.norm(np.asarray(star) @ np.conj(x) - x) <= tol * max(1.0, np.linalg.norm(x)))
    return AlgebraElementSpectrum(tuple(complex(e) for e in eig), sa)


def gns_representation(table, star, tol=DEFAULT_TOL):
    """Faithful *-representation from the trace form phi(a) = Tr(L_a).

    Returns a callable-free tuple (rho_basis, gram_min_eig) where
    rho_basis[i] is the matrix of the i-th basis element acting on C^n with the
    standard inner product.  Raises StructureError when the Gram matrix
    G[i,j] = phi(e_i* e_j) is not positive definite (algebra not C*-able).
    """
    table = np.asarray(table, dtype=complex)
    star = np.asarray(star, dtype=complex)
    n = table.shape[0]
    if n == 0:
        return np.zeros((0, 0, 0), dtype=complex), 0.0
    # phi(e_i* e_j) with e_i* = sum_a conj(star[a,i])... star acts on conj coords:
    # coords(e_i*) = star @ conj(delta_i) = star[:, i].
    traces = np.einsum("ijj->i", np.transpose(table, (0, 2, 1)))  # Tr(L_{e_a}) = sum_j table[a,j,j]
    prod = np.einsum("ai,ajk->ijk", star, table)  # coords of e_i* e_j
    gram = np.einsum("ijk,k->ij", prod, traces)
    gram = 0.5 * (gram + np.conj(gram).T)
    w_eig = np.linalg.eigvalsh(gram)
    top = max(abs(w_eig[-1]), 1e-300)
    if w_eig[0] <= tol * top:
        raise StructureError(
            "input is not C*-able: trace form is not positive definite "
            f"(smallest Gram eigenvalue {w_eig[0]:.3e})"
        )
    chol = np.linalg.cholesky(gram)  # gram = chol chol^H
    w = np.conj(chol).T
    w_inv = np.linalg.inv(w)
    regs = np.transpose(table, (0, 2, 1))  # regs[i] = L_{e_i}, [k, j]
    rho = np.einsum("ab,ibc,cd->iad", w, regs, w_inv)
    return rho, float(w_eig[0] / top)
