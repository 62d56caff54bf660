"""Zettl decomposition Z = Z₊ ⊕ Z₋, the grading operator T, and realizations.

The minimal ideals of Z are found as the eigenspaces of a generic element of
the commutant of all multiplication operators f ↦ [g,h,f] and f ↦ [f,g,h].
Each ideal is classified by the spectrum of α(z,z) = r(z,z) in R(Z), which is
computed algebraically, so abstract structure constants need no norm.
"""
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .embedding import EmbeddingAlgebra, build_R, r_pair
from .errors import InputError, InternalError, StructureError
from .linalg import DEFAULT_TOL
from .report import Report, check, skipped
from .ternary import ConcreteTRO, DirectSum, restrict, scaled, twist

ANCHOR_T_SQUARE = "T²=I"
ANCHOR_T_INTERTWINE = "T((x,y,z))=(Tx,y,z)=(x,Ty,z)=(x,y,Tz)"
ANCHOR_T_POSITIVE = "α(Tz,z) ≥ 0"
ANCHOR_UNIQUE = "Z = Z₊ ⊕ Z₋"
ANCHOR_POSITIVE = "Z+={z∈Z:α(z,z)≥ 0}"
ANCHOR_NORM_MAX = "‖(α,β)‖=max(‖α‖,‖β‖)"
ANCHOR_REALIZE = "‖ψ(z)‖ = ‖z‖, ψ([x,y,z]) = ±ψ(x)ψ(y)*ψ(z)"

CLUSTER_GAP = 1e-6
RESAMPLES = 8


def _rand_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def is_positive(R_algebra, b, tol=DEFAULT_TOL):
    """True iff the self-adjoint b ∈ R has spectrum ≥ −tol (relative)."""
    b = np.asarray(b, dtype=complex)
    if R_algebra.dim == 0:
        return True
    nb = float(np.linalg.norm(b))
    if np.linalg.norm(R_algebra.star(b) - b) > 1e3 * tol * max(1.0, nb):
        raise InputError("element is not self-adjoint under the swap involution")
    spec = np.array(linalg.algebra_spectrum(R_algebra.mult_table, b, tol=tol).eigenvalues)
    scale = max(1.0, float(np.abs(spec).max(initial=0.0)))
    return bool(spec.real.min() >= -1e3 * tol * scale)


def _spectrum_sign(R_algebra, b, tol):
    """+1, -1, 0 (null) or None (indefinite) for a self-adjoint element of R."""
    spec = np.array(linalg.algebra_spectrum(R_algebra.mult_table, b, tol=tol).eigenvalues)
    scale = float(np.abs(spec).max(initial=0.0))
    if scale <= 1e3 * tol * max(1.0, float(np.abs(R_algebra.mult_table).max(initial=0.0))):
        return 0
    eps = 1e-6 * scale
    lo, hi = spec.real.min(), spec.real.max()
    if lo >= -eps:
        return 1
    if hi <= eps:
        return -1
    return None


def multiplication_operators(Z):
    """All f ↦ [e_g, e_h, f] and f ↦ [f, e_g, e_h] as matrices."""
    c = Z.tensor
    lops = np.transpose(c, (0, 1, 3, 2)).reshape(-1, Z.dim, Z.dim)
    rops = np.transpose(c, (1, 2, 3, 0)).reshape(-1, Z.dim, Z.dim)
    return np.concatenate([lops, rops])


def commutant(ops, tol=DEFAULT_TOL):
    """Basis (k, n, n) of {K : K O = O K for all O}."""
    ops = np.asarray(ops, dtype=complex)
    n = ops.shape[-1]
    eye = np.eye(n)
    gram = np.zeros((n * n, n * n), dtype=complex)
    for o in ops:
        a = np.kron(o, eye) - np.kron(eye, o.T)
        gram += np.conj(a).T @ a
    w, v = np.linalg.eigh(gram)
    top = max(float(w[-1]), 1e-300)
    keep = w <= 1e-10 * top if top > 1e-300 else np.ones_like(w, dtype=bool)
    return np.transpose(v[:, keep]).reshape(-1, n, n)


def _cluster(eigs, gap):
    scale = max(1.0, float(np.abs(eigs).max(initial=0.0)))
    parent = list(range(len(eigs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(eigs)):
        for j in range(i + 1, len(eigs)):
            if abs(eigs[i] - eigs[j]) <= gap * scale:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(len(eigs)):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: min(g))


def minimal_ideals(Z, seed=0, tol=DEFAULT_TOL):
    """Spectral projectors onto the minimal ideals (eigenspaces of a generic centroid element)."""
    n = Z.dim
    if n == 0:
        return []
    basis = commutant(multiplication_operators(Z), tol)
    rng = np.random.default_rng(seed)
    k = np.einsum("a,aij->ij", _rand_complex(rng, basis.shape[0]), basis)
    eigs, vecs = np.linalg.eig(k)
    if np.linalg.cond(vecs) > 1e8:
        raise StructureError("centroid element is not diagonalizable; the system is not semisimple")
    inv = np.linalg.inv(vecs)
    projs = []
    for group in _cluster(eigs, CLUSTER_GAP):
        projs.append(vecs[:, group] @ inv[group, :])
    return projs


@dataclass
class GradingOperator:
    T: np.ndarray
    plus_space: linalg.MatrixSubspace
    minus_space: linalg.MatrixSubspace
    block_signs: list
    report: Report = field(default_factory=Report)

    @property
    def eigenvalues(self):
        return sorted({int(round(s)) for s in np.linalg.eigvals(self.T).real}) if self.T.size else []


def _coefficient_subspace(columns, n, tol):
    # columns form a projector (eigenvalues 0 or 1), so an absolute cut is right
    if columns.size:
        u, s, _ = np.linalg.svd(columns)
        q = u[:, : int(np.sum(s > tol))]
    else:
        q = np.zeros((n, 0))
    return linalg.MatrixSubspace(n, 1, np.transpose(q).reshape(q.shape[1], n, 1), tol)


def grading_operator(Z, seed=0, tol=None, samples=20):
    """T with T² = I intertwining the product, +1 on positive and −1 on negative ideals."""
    tol = Z.tol if tol is None else tol
    n = Z.dim
    rep = Report(environment={"seed": seed, "cluster_gap": CLUSTER_GAP})
    R = build_R(Z)
    rng = np.random.default_rng(seed + 7919)
    projs = minimal_ideals(Z, seed=seed, tol=tol)
    T = np.zeros((n, n), dtype=complex)
    signs = []
    for k, p in enumerate(projs):
        sign = 0
        for _ in range(RESAMPLES):
            z = p @ _rand_complex(rng, n)
            b = R.coords(r_pair(Z, z, z), check=False)
            b = 0.5 * (b + R.star(b))
            sign = _spectrum_sign(R, b, tol)
            if sign is None:
                raise StructureError(f"ideal {k} has indefinite α(z,z): not a C*-ternary ring at tolerance")
            if sign != 0:
                break
        sign = 1 if sign == 0 else sign  # null blocks go to Z₊ by convention
        signs.append(sign)
        T += sign * p
    plus = _coefficient_subspace((np.eye(n) + T) / 2, n, 1e-6)
    minus = _coefficient_subspace((np.eye(n) - T) / 2, n, 1e-6)
    rep.add(verify_grading(Z, T, tol=1e-9, seed=seed, samples=samples))
    g = GradingOperator(T, plus, minus, signs, rep)
    bad = [c for c in rep.checks if not c.passed]
    if bad:
        raise InternalError("grading operator failed verification: " + ", ".join(
            f"{c.check_id}={c.max_residual:.2e}" for c in bad), report=rep)
    return g


def verify_grading(Z, T, tol=1e-9, seed=0, samples=20):
    rep = Report()
    n = Z.dim
    c = Z.tensor
    scale = max(1.0, float(np.abs(c).max(initial=0.0)))
    tscale = max(1.0, float(np.abs(T).max(initial=0.0)))
    rep.add(check("grading_square", ANCHOR_T_SQUARE,
                  float(np.abs(T @ T - np.eye(n)).max(initial=0.0)), tol * tscale**2))
    lhs = np.einsum("ijkl,ml->ijkm", c, T)
    r1 = np.einsum("ai,ajkm->ijkm", T, c)
    r2 = np.einsum("bj,ibkm->ijkm", np.conj(T), c)
    r3 = np.einsum("ck,ijcm->ijkm", T, c)
    res = max((float(np.abs(lhs - r).max(initial=0.0)) for r in (r1, r2, r3)), default=0.0)
    rep.add(check("grading_intertwining", ANCHOR_T_INTERTWINE, res, tol * scale * tscale))
    # twisted positivity on samples
    tw = twist(Z, T)
    Rt = build_R(tw)
    rng = np.random.default_rng(seed + 104729)
    worst = 0.0
    for _ in range(samples if n else 0):
        z = _rand_complex(rng, n)
        b = Rt.coords(r_pair(tw, z, z), check=False)
        if Rt.dim == 0:
            continue
        spec = np.array(linalg.algebra_spectrum(Rt.mult_table, 0.5 * (b + Rt.star(b)), tol=tol).eigenvalues)
        top = max(float(np.abs(spec).max(initial=0.0)), 1e-300)
        worst = max(worst, max(0.0, -float(spec.real.min())) / top)
    rep.add(check("grading_twisted_positive", ANCHOR_T_POSITIVE, worst, 1e-6, samples=samples))
    return rep


@dataclass
class Realization:
    """A concrete signed TRO with the map from Z-coefficients to matrices."""

    tro: ConcreteTRO
    sign: int
    matrices: np.ndarray  # image of each Z basis vector under ψ∘(projection onto the part)
    residual: float
    rank: int
    part_dim: int
    gns_matrices: np.ndarray = None  # ρ(corner) on the full GNS space

    def __call__(self, coeffs):
        return np.tensordot(np.asarray(coeffs, dtype=complex), self.matrices, axes=(0, 0))


@dataclass
class ZettlDecomposition:
    grading: GradingOperator
    plus_realization: Realization = None
    minus_realization: Realization = None
    report: Report = field(default_factory=Report)

    @property
    def plus_dim(self):
        return self.grading.plus_space.dim

    @property
    def minus_dim(self):
        return self.grading.minus_space.dim


def _columns(space):
    return np.transpose(space.basis[:, :, 0]) if space.dim else np.zeros((space.rows, 0))


def decompose(Z, seed=0, realize_parts=False, norm=None, samples=50, tol=None):
    """Grading operator, uniqueness across seeds, and optional realizations.

    `norm` (coefficients → real) enables the max-norm check; it defaults to
    the concrete operator norm when Z is concrete.
    """
    tol = Z.tol if tol is None else tol
    g = grading_operator(Z, seed=seed, tol=tol)
    rep = Report(environment={"seed": seed})
    rep.add(g.report)
    g2 = grading_operator(Z, seed=seed + 1, tol=tol)
    dist = max(linalg.projector_distance(g.plus_space, g2.plus_space),
               linalg.projector_distance(g.minus_space, g2.minus_space)) if Z.dim else 0.0
    rep.add(check("decomposition_unique", ANCHOR_UNIQUE, dist, 1e-8, seeds=[seed, seed + 1]))
    dec = ZettlDecomposition(g, report=rep)
    if realize_parts:
        plus, minus = realize(Z, grading=g, seed=seed)
        dec.plus_realization, dec.minus_realization = plus, minus
        rep.add(check("realization_certificate", ANCHOR_REALIZE, max(plus.residual, minus.residual), 1e-8,
                      plus_rank=plus.rank, minus_rank=minus.rank))
        if norm is None and Z.concrete:
            conc = Z.as_concrete() if isinstance(Z, DirectSum) else Z
            norm = conc.norm
        if norm is not None:
            rep.add(check_norm_max_law(Z, dec, norm, samples=samples, seed=seed))
        else:
            rep.add(skipped("norm_max_law", ANCHOR_NORM_MAX, "input carries no norm"))
    return dec


def _gns_corner(sub, tol):
    """Concrete TRO realization of a positive system via the trace-form GNS of 𝒜."""
    E = EmbeddingAlgebra(sub)
    rho, _ = linalg.gns_representation(E.table, E.star_matrix, tol=tol)
    k = sub.dim
    corner = rho[E.slices["f"]] if k else np.zeros((0, 0, 0))
    if k == 0:
        return np.zeros((0, 0, 0)), np.zeros((0, 0, 0)), E
    N = rho.shape[1]
    stacked = np.concatenate(list(corner), axis=1)
    uk = linalg.column_space(stacked, 1e-10)
    uh = linalg.column_space(np.concatenate([np.conj(m).T for m in corner], axis=1), 1e-10)
    psi = np.einsum("ai,kab,bj->kij", np.conj(uk), corner, uh)
    return psi, corner, E


def realize(Z, grading=None, seed=0, tol=None):
    """Concrete realizations (plus, minus) of the two Zettl parts.

    Each part is restricted to an orthonormal basis, the minus part is
    twisted by −1, and its standard embedding is represented faithfully via
    the trace-form GNS construction; the part is read off as the corner.
    """
    tol = Z.tol if tol is None else tol
    g = grading_operator(Z, seed=seed, tol=tol) if grading is None else grading
    n = Z.dim
    out = []
    for sign, space in ((1, g.plus_space), (-1, g.minus_space)):
        proj = (np.eye(n) + sign * g.T) / 2
        q = _columns(space)
        k = q.shape[1]
        if k == 0:
            empty = ConcreteTRO(linalg.zero_subspace(0, 0), sign)
            out.append(Realization(empty, sign, np.zeros((n, 0, 0)), 0.0, 0, 0, np.zeros((n, 0, 0))))
            continue
        sub = restrict(Z, q)
        if sign == -1:
            sub = scaled(sub, -1.0)
        psi, corner, _ = _gns_corner(sub, tol)
        # part coordinates of each Z basis vector: q^H proj e_i
        coords = np.conj(q).T @ proj
        mats = np.einsum("ki,kab->iab", coords, psi)
        gns_mats = np.einsum("ki,kab->iab", coords, corner)
        rows, cols = psi.shape[1:]
        space_m = linalg.span(list(psi), tol=tol)
        tro = ConcreteTRO(space_m, sign)
        # certificate: ψ(sub-product) = sign·ψ ψ* ψ on the part's basis
        pr = np.einsum("ijkl,lab->ijkab", sub.tensor, psi)
        direct = np.einsum("iab,jcb,kcd->ijkad", psi, np.conj(psi), psi)
        res = float(np.abs(pr - direct).max())
        rank = int(np.linalg.matrix_rank(psi.reshape(k, -1), tol=1e-9))
        out.append(Realization(tro, sign, mats, res, rank, k, gns_mats))
    return tuple(out)


def check_norm_max_law(Z, dec, norm, samples=50, seed=0, tol=1e-8):
    """‖z‖ = max(‖ψ₊(z₊)‖, ‖ψ₋(z₋)‖) on samples."""
    rng = np.random.default_rng(seed + 31)
    plus, minus = dec.plus_realization, dec.minus_realization
    worst = 0.0
    for _ in range(samples if Z.dim else 0):
        z = _rand_complex(rng, Z.dim)
        a = linalg.operator_norm(plus(z)) if plus.part_dim else 0.0
        b = linalg.operator_norm(minus(z)) if minus.part_dim else 0.0
        nz = norm(z)
        worst = max(worst, abs(nz - max(a, b)) / max(nz, 1e-300))
    return check("norm_max_law", ANCHOR_NORM_MAX, worst, tol, samples=samples)
