"""Finite-dimensional associative triple systems.

Elements are coefficient vectors against a fixed basis.  Every presentation
exposes the structure tensor c with

    [e_i, e_j, e_k] = sum_l c[i, j, k, l] e_l,

so that for general vectors the middle coefficients enter conjugated:
[x, y, z]_l = sum x_i conj(y_j) z_k c[i, j, k, l].
"""
import itertools
from functools import cached_property

import numpy as np

from . import linalg
from .errors import InputError, MembershipError, StructureError, UnsupportedError
from .linalg import DEFAULT_TOL, MatrixSubspace
from .report import Check, Report, check, skipped

ANCHOR_ASSOC = "(x,y,(z,u,v))=((x,y,z),u,v)=(x,(u,z,y),v)"
ANCHOR_LINEAR = "(x,λy,z) = λ̄(x,y,z)"
ANCHOR_NORM_LE = "‖(x,y,z)‖ ≤ ‖x‖‖y‖‖z‖"
ANCHOR_NORM_CUBE = "‖(x,x,x)‖ = ‖x‖³"
ANCHOR_CLOSED = "xy*z ∈ X for all x, y, z ∈ X"
ANCHOR_HOM = "φ((x,y,z)) = (φx,φy,φz)"
ANCHOR_CONTRACTIVE = "‖φ(x)‖ ≤ ‖x‖"

EXHAUSTIVE_CAP = 8
ASSOC_SAMPLES = 1000


def _rand_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def contract(c, x, y, z):
    """[x, y, z] for coefficient vectors (leading batch axes allowed on none)."""
    return np.einsum("i,j,k,ijkl->l", x, np.conj(y), z, c)


class TernarySystem:
    """Common interface.  Subclasses provide `dim` and `tensor`."""

    tol = DEFAULT_TOL
    concrete = False

    @property
    def dim(self):
        raise NotImplementedError

    @property
    def tensor(self):
        raise NotImplementedError

    def product(self, x, y, z):
        """Triple product of coefficient vectors."""
        return contract(self.tensor, x, y, z)

    def triple(self, x, y, z):
        return self.product(*(self._coerce(v) for v in (x, y, z)))

    def _coerce(self, v):
        v = np.asarray(v, dtype=complex)
        if v.shape != (self.dim,):
            raise MembershipError(f"expected {self.dim} coefficients, got shape {v.shape}")
        return v

    def basis_products(self):
        """All [e_i, e_j, e_k]; the tensor itself."""
        return self.tensor


class StructureConstants(TernarySystem):
    """Presentation by a four-index tensor."""

    def __init__(self, c, tol=DEFAULT_TOL):
        c = np.asarray(c, dtype=complex)
        if c.ndim != 4 or len(set(c.shape)) > 1:
            raise InputError(f"structure tensor must be n×n×n×n, got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise InputError("structure tensor has non-finite entries")
        c = c.copy()
        c.setflags(write=False)
        self._c = c
        self.tol = tol

    @property
    def dim(self):
        return self._c.shape[0]

    @property
    def tensor(self):
        return self._c

    def __repr__(self):
        return f"StructureConstants(dim={self.dim})"


class ProductSystem(TernarySystem):
    """Presentation by an arbitrary product callable on coefficient vectors.

    The callable is trusted for nothing: linearity is sampled by
    `check_linearity`, and the structure tensor is read off the basis.
    """

    def __init__(self, dim, fn, tol=DEFAULT_TOL):
        self._dim = int(dim)
        self._fn = fn
        self.tol = tol

    @property
    def dim(self):
        return self._dim

    def product(self, x, y, z):
        return np.asarray(self._fn(x, y, z), dtype=complex)

    @cached_property
    def tensor(self):
        n = self._dim
        eye = np.eye(n, dtype=complex)
        c = np.zeros((n, n, n, n), dtype=complex)
        for i, j, k in itertools.product(range(n), repeat=3):
            c[i, j, k] = self.product(eye[i], eye[j], eye[k])
        return c


def _normalize_sign(sign, rows, cols):
    """Scalar +-1, or a +-1 row grading (rows,), or a +-1 mask (rows, cols)."""
    if np.isscalar(sign):
        if sign not in (1, -1):
            raise InputError(f"sign must be +1 or -1, got {sign}")
        return int(sign)
    s = np.asarray(sign, dtype=float)
    if s.shape == (rows,):
        s = np.repeat(s[:, None], cols, axis=1)
    if s.shape != (rows, cols) or not np.all(np.isin(s, (1.0, -1.0))):
        raise InputError("sign must be +-1, a +-1 row grading, or a +-1 mask of the ambient shape")
    if np.all(s == s.flat[0]) and s.size:
        return int(s.flat[0])
    s = s.copy()
    s.setflags(write=False)
    return s


class ConcreteTRO(TernarySystem):
    """A subspace of rows×cols matrices with [x,y,z] = sign ⊙ (x y* z).

    `sign` is +1 or -1 globally.  For categories and assembled direct sums it
    may also be a +-1 row grading or an entrywise mask; closure and
    associativity are then verified rather than assumed.
    """

    concrete = True

    def __init__(self, space, sign=1):
        if not isinstance(space, MatrixSubspace):
            raise InputError("space must be a MatrixSubspace")
        self.space = space
        self.sign = _normalize_sign(sign, space.rows, space.cols)
        self.tol = space.tol

    @property
    def dim(self):
        return self.space.dim

    @property
    def shape(self):
        return self.space.shape

    @property
    def scalar_sign(self):
        return self.sign if isinstance(self.sign, int) else None

    def apply_sign(self, m):
        return self.sign * m

    def matrix_product(self, x, y, z):
        return self.apply_sign(x @ linalg.adjoint(y) @ z)

    def element(self, coeffs):
        return self.space.element(coeffs)

    def coords(self, m, check_membership=True):
        m = linalg.as_matrix(m)
        if m.shape != self.shape:
            raise MembershipError(f"matrix shape {m.shape} differs from {self.shape}")
        if check_membership:
            ok, res = linalg.contains(self.space, m)
            if not ok:
                raise MembershipError(f"element lies outside the system (residual {res:.3e})")
        return self.space.coords(m)

    def triple(self, x, y, z):
        args = [np.asarray(v) for v in (x, y, z)]
        if all(a.ndim == 2 for a in args):
            for a in args:
                self.coords(a)
            return self.matrix_product(*(linalg.as_matrix(a) for a in args))
        return self.product(*(self._coerce(a) for a in args))

    @cached_property
    def basis_triples(self):
        """P[i,j,k] = sign ⊙ (e_i e_j* e_k) as matrices."""
        b = self.space.basis
        p = np.einsum("iab,jcb,kcd->ijkad", b, np.conj(b), b)
        return self.apply_sign(p)

    @cached_property
    def tensor(self):
        p = self.basis_triples
        return np.einsum("ijkab,lab->ijkl", p, np.conj(self.space.basis))

    @cached_property
    def closure_residual(self):
        p = self.basis_triples
        if p.size == 0:
            return 0.0
        back = np.einsum("ijkl,lab->ijkab", self.tensor, self.space.basis)
        return float(np.max(np.linalg.norm((p - back).reshape(-1, self.shape[0] * self.shape[1]), axis=1)))

    def norm(self, coeffs):
        return linalg.operator_norm(self.element(coeffs))

    def __repr__(self):
        s = self.sign if isinstance(self.sign, int) else "graded"
        return f"ConcreteTRO(dim={self.dim}, shape={self.shape}, sign={s})"


class DirectSum(TernarySystem):
    """Orthogonal direct sum; coefficients are concatenated."""

    def __init__(self, parts):
        self.parts = tuple(parts)
        self.tol = min((p.tol for p in self.parts), default=DEFAULT_TOL)
        self.concrete = all(p.concrete for p in self.parts)

    @property
    def dim(self):
        return sum(p.dim for p in self.parts)

    @property
    def offsets(self):
        return np.cumsum([0] + [p.dim for p in self.parts])

    @cached_property
    def tensor(self):
        n = self.dim
        c = np.zeros((n, n, n, n), dtype=complex)
        for p, o in zip(self.parts, self.offsets):
            s = slice(o, o + p.dim)
            c[s, s, s, s] = p.tensor
        return c

    def as_concrete(self):
        """Block-diagonal ConcreteTRO with a row-graded sign."""
        if not self.concrete:
            raise UnsupportedError("direct sum has abstract summands; use zettl.realize")
        parts = [p if isinstance(p, ConcreteTRO) else p.as_concrete() for p in self.parts]
        rows = sum(p.shape[0] for p in parts)
        cols = sum(p.shape[1] for p in parts)
        basis, sign = [], np.ones((rows, cols))
        r0 = c0 = 0
        for p in parts:
            r, c = p.shape
            for b in p.space.basis:
                m = np.zeros((rows, cols), dtype=complex)
                m[r0:r0 + r, c0:c0 + c] = b
                basis.append(m)
            if isinstance(p.sign, int):
                sign[r0:r0 + r, :] = p.sign
            else:
                sign[r0:r0 + r, :] = p.sign[:, :1]
                sign[r0:r0 + r, c0:c0 + c] = p.sign
            r0, c0 = r0 + r, c0 + c
        space = MatrixSubspace(rows, cols, np.array(basis).reshape(-1, rows, cols), self.tol)
        return ConcreteTRO(space, sign)

    def norm(self, coeffs):
        return self.as_concrete().norm(coeffs)


def change_basis(sys, s, tol=None):
    """Structure constants after the coordinate change x' = s @ x."""
    s = np.asarray(s, dtype=complex)
    sinv = np.linalg.inv(s)
    c = np.einsum("ia,jb,kc,ijkl,dl->abcd", sinv, np.conj(sinv), sinv, sys.tensor, s)
    return StructureConstants(c, tol if tol is not None else sys.tol)


def restrict(sys, q, tol=None):
    """Structure constants on the span of orthonormal columns q (a subsystem)."""
    q = np.asarray(q, dtype=complex)
    c = np.einsum("ia,jb,kc,ijkl,ld->abcd", q, np.conj(q), q, sys.tensor, np.conj(q))
    return StructureConstants(c, tol if tol is not None else sys.tol)


def twist(sys, t):
    """T-twisted product [x, Ty, z]."""
    c = np.einsum("mj,imkl->ijkl", np.conj(np.asarray(t, dtype=complex)), sys.tensor)
    return StructureConstants(c, sys.tol)


def scaled(sys, factor):
    return StructureConstants(factor * sys.tensor, sys.tol)


# ---------------------------------------------------------------- checks


def check_linearity(sys, samples=16, seed=0):
    """Outer slots complex-linear, middle slot conjugate-linear (sampled)."""
    rng = np.random.default_rng(seed)
    n = sys.dim
    worst, witness, scale = 0.0, [], 0.0
    if n == 0:
        return check("linearity", ANCHOR_LINEAR, 0.0, 0.0, seed=seed)
    for _ in range(samples):
        x, y, z, w = _rand_complex(rng, (4, n))
        lam = complex(*rng.standard_normal(2))
        base = sys.product(x, y, z)
        scale = max(scale, float(np.linalg.norm(base)))
        tests = {
            "first": sys.product(lam * x + w, y, z) - lam * base - sys.product(w, y, z),
            "middle": sys.product(x, lam * y + w, z) - np.conj(lam) * base - sys.product(x, w, z),
            "third": sys.product(x, y, lam * z + w) - lam * base - sys.product(x, y, w),
        }
        for slot, d in tests.items():
            r = float(np.linalg.norm(d))
            if r > worst:
                worst, witness = r, [slot]
    return check("linearity", ANCHOR_LINEAR, worst, 1e3 * sys.tol * max(scale, 1.0),
                 witnesses=witness, samples=samples, seed=seed)


def associativity_residuals(c, tuples=None):
    """Residual arrays of the two identities.

    Without `tuples`, returns full (n,)*5 arrays; otherwise per-tuple values.
    """
    if tuples is None:
        a = np.einsum("zuvm,xyml->xyzuvl", c, c)  # (x,y,(z,u,v))
        b = np.einsum("xyzm,muvl->xyzuvl", c, c)  # ((x,y,z),u,v)
        m = np.einsum("uzym,xmvl->xyzuvl", np.conj(c), c)  # (x,(u,z,y),v)
        scale = max(np.max(np.abs(a)), np.max(np.abs(b)), np.max(np.abs(m)))
        r1 = np.linalg.norm(a - b, axis=-1)
        r2 = np.linalg.norm(b - m, axis=-1)
        return r1, r2, float(scale)
    t = np.asarray(tuples)
    x, y, z, u, v = t.T
    a = np.einsum("tm,tml->tl", c[z, u, v], c[x, y])
    b = np.einsum("tm,tml->tl", c[x, y, z], c[:, u, v].transpose(1, 0, 2))
    cm = np.conj(c[u, z, y])
    m = np.einsum("tm,tml->tl", cm, c[x, :, v])
    scale = max(np.max(np.abs(a)), np.max(np.abs(b)), np.max(np.abs(m))) if len(t) else 0.0
    return np.linalg.norm(a - b, axis=-1), np.linalg.norm(b - m, axis=-1), float(scale)


def check_associativity(sys, tol=None, cap=EXHAUSTIVE_CAP, samples=ASSOC_SAMPLES, seed=0):
    """Both associativity identities over basis 5-tuples.

    Exhaustive up to dimension `cap`, otherwise `samples` random 5-tuples.
    The linearity sampling check runs first; if it fails, associativity is
    not attempted.
    """
    tol = sys.tol if tol is None else tol
    rep = Report(environment={"seed": seed, "tol": tol})
    lin = rep.add(check_linearity(sys, seed=seed))
    if not lin.passed:
        rep.add(skipped("associativity", ANCHOR_ASSOC, "linearity check failed"))
        return rep
    n = sys.dim
    c = sys.tensor
    if n == 0:
        rep.add(check("associativity", ANCHOR_ASSOC, 0.0, 0.0, mode="exhaustive", tuples=0))
        return rep
    if n <= cap:
        r1, r2, scale = associativity_residuals(c)
        worst = np.maximum(r1, r2)
        idx = np.unravel_index(int(np.argmax(worst)), worst.shape)
        mode, count = "exhaustive", n**5
    else:
        rng = np.random.default_rng(seed)
        tuples = rng.integers(0, n, size=(samples, 5))
        r1, r2, scale = associativity_residuals(c, tuples)
        worst = np.maximum(r1, r2)
        idx = tuple(tuples[int(np.argmax(worst))])
        mode, count = "sampled", samples
    res = float(np.max(worst))
    rep.add(check("associativity", ANCHOR_ASSOC, res, tol * scale,
                  witnesses=[[int(i) for i in idx]] if res > tol * scale else [],
                  mode=mode, tuples=count, scale=scale))
    return rep


def check_norm_axioms(sys, samples=200, seed=0, tol=1e-8):
    """Sampled ‖[x,y,z]‖ ≤ ‖x‖‖y‖‖z‖ and ‖[x,x,x]‖ = ‖x‖³ (relative tol)."""
    if isinstance(sys, DirectSum) and sys.concrete:
        sys = sys.as_concrete()
    if not isinstance(sys, ConcreteTRO):
        raise UnsupportedError("norm axioms need a concrete presentation; realize it first with zettl.realize")
    rep = Report(environment={"seed": seed, "samples": samples})
    rng = np.random.default_rng(seed)
    n = sys.dim
    worst_le = worst_cube = 0.0
    wit_le, wit_cube = [], []
    candidates = [np.eye(n)[i] for i in range(n)]
    candidates += list(_rand_complex(rng, (samples, n))) if n else []
    for k, x in enumerate(candidates):
        y, z = _rand_complex(rng, (2, n))
        xm, ym, zm = sys.element(x), sys.element(y), sys.element(z)
        nx, ny, nz = (linalg.operator_norm(m) for m in (xm, ym, zm))
        lhs = linalg.operator_norm(sys.matrix_product(xm, ym, zm))
        over = (lhs - nx * ny * nz) / max(nx * ny * nz, 1e-300)
        if over > worst_le:
            worst_le, wit_le = over, [k]
        cube = linalg.operator_norm(sys.matrix_product(xm, xm, xm))
        dev = abs(cube - nx**3) / max(nx**3, 1e-300)
        if dev > worst_cube:
            worst_cube, wit_cube = dev, [k]
    rep.add(check("norm_submultiplicative", ANCHOR_NORM_LE, max(worst_le, 0.0), 1e-9,
                  witnesses=wit_le if worst_le > 1e-9 else [], samples=len(candidates)))
    rep.add(check("norm_cubic", ANCHOR_NORM_CUBE, worst_cube, tol,
                  witnesses=wit_cube if worst_cube > tol else [], samples=len(candidates)))
    return rep


def check_closure(sys):
    """Membership of every basis triple product in the space."""
    return check("closure", ANCHOR_CLOSED, sys.closure_residual,
                 sys.tol * max(1.0, float(np.max(np.abs(sys.basis_triples)) if sys.dim else 1.0)))


# ---------------------------------------------------------------- builders


def ternary_closure(generators, sign=1, tol=DEFAULT_TOL, shape=None, max_rounds=None):
    """Smallest subspace containing the generators and closed under the product."""
    space = linalg.span(generators, tol=tol, shape=shape)
    probe = ConcreteTRO(space, sign)
    sign = probe.sign
    limit = max_rounds or space.rows * space.cols + 1
    for _ in range(limit):
        if space.dim == 0:
            break
        tro = ConcreteTRO(space, sign)
        prods = tro.basis_triples.reshape(-1, space.rows, space.cols)
        new = linalg.span(list(space.basis) + list(prods), tol=tol)
        if new.dim == space.dim:
            break
        space = new
    return ConcreteTRO(space, sign)


def _algebra_closure(gens, rows, tol):
    space = linalg.span(list(gens) + [linalg.adjoint(g) for g in gens], tol=tol, shape=(rows, rows))
    for _ in range(rows * rows + 1):
        b = space.basis
        if space.dim == 0:
            break
        prods = np.einsum("iab,jbc->ijac", b, b).reshape(-1, rows, rows)
        new = linalg.span(list(b) + list(prods), tol=tol)
        if new.dim == space.dim:
            break
        space = new
    return space


def _check_star_algebra(space):
    b = space.basis
    if space.dim == 0:
        return 0.0
    worst = 0.0
    for m in list(np.einsum("iab,jbc->ijac", b, b).reshape(-1, *space.shape)) + [linalg.adjoint(x) for x in b]:
        worst = max(worst, linalg.residual(space, m))
    return worst


def left_algebra(tro):
    """*-algebra generated by {x y*} inside B(K)."""
    b = tro.space.basis
    rows = tro.shape[0]
    gens = list(np.einsum("iab,jcb->ijac", b, np.conj(b)).reshape(-1, rows, rows))
    space = _algebra_closure(gens, rows, tro.tol)
    res = _check_star_algebra(space)
    if res > 1e3 * tro.tol:
        from .errors import InternalError
        raise InternalError(f"left algebra not closed (residual {res:.3e})")
    return space


def right_algebra(tro):
    """*-algebra generated by {y* z} inside B(H)."""
    b = tro.space.basis
    cols = tro.shape[1]
    gens = list(np.einsum("jba,kbc->jkac", np.conj(b), b).reshape(-1, cols, cols))
    space = _algebra_closure(gens, cols, tro.tol)
    res = _check_star_algebra(space)
    if res > 1e3 * tro.tol:
        from .errors import InternalError
        raise InternalError(f"right algebra not closed (residual {res:.3e})")
    return space


def linking_algebra(tro):
    """The block algebra [[C, X], [X*, D]] inside B(K ⊕ H)."""
    if tro.scalar_sign != 1:
        raise UnsupportedError("linking algebra needs sign +1; use embedding.standard_embedding for signed systems")
    rows, cols = tro.shape
    n = rows + cols
    blocks = []
    for m in left_algebra(tro).basis:
        z = np.zeros((n, n), dtype=complex)
        z[:rows, :rows] = m
        blocks.append(z)
    for m in tro.space.basis:
        z = np.zeros((n, n), dtype=complex)
        z[:rows, rows:] = m
        blocks.append(z)
        z = np.zeros((n, n), dtype=complex)
        z[rows:, :rows] = linalg.adjoint(m)
        blocks.append(z)
    for m in right_algebra(tro).basis:
        z = np.zeros((n, n), dtype=complex)
        z[rows:, rows:] = m
        blocks.append(z)
    space = linalg.span(blocks, tol=tro.tol, shape=(n, n))
    res = _check_star_algebra(space)
    if res > 1e3 * tro.tol:
        from .errors import InternalError
        raise InternalError(f"linking algebra not closed (residual {res:.3e})")
    return space


def check_homomorphism_contractive(phi, source, target, samples=200, seed=0, tol=None):
    """Triple-product preservation on basis triples and sampled contractivity.

    `phi` is the (target.dim × source.dim) matrix on coefficient vectors.
    Raises StructureError (report attached) when phi is not a homomorphism.
    """
    phi = np.asarray(phi, dtype=complex)
    tol = source.tol if tol is None else tol
    if phi.shape != (target.dim, source.dim):
        raise InputError(f"map has shape {phi.shape}, expected {(target.dim, source.dim)}")
    rank = int(np.linalg.matrix_rank(phi, tol=tol * max(1.0, np.abs(phi).max(initial=0.0)))) if phi.size else 0
    if rank != target.dim:
        raise InputError(f"map is not surjective (rank {rank} < {target.dim})")
    rep = Report(environment={"seed": seed})
    lhs = np.einsum("ijkl,ml->ijkm", source.tensor, phi)
    rhs = np.einsum("ai,bj,ck,abcm->ijkm", phi, np.conj(phi), phi, target.tensor)
    err = np.linalg.norm(lhs - rhs, axis=-1) if lhs.size else np.zeros((0,))
    res = float(np.max(err)) if err.size else 0.0
    scale = max(1.0, float(np.max(np.abs(lhs))) if lhs.size else 1.0, float(np.max(np.abs(rhs))) if rhs.size else 1.0)
    wit = [list(map(int, np.unravel_index(int(np.argmax(err)), err.shape)))] if res > tol * scale else []
    hom = rep.add(check("homomorphism", ANCHOR_HOM, res, tol * scale, witnesses=wit))
    if not hom.passed:
        raise StructureError(f"map is not a triple homomorphism (residual {res:.3e} at {wit[0]})", report=rep)
    src = source.as_concrete() if isinstance(source, DirectSum) and source.concrete else source
    dst = target.as_concrete() if isinstance(target, DirectSum) and target.concrete else target
    if isinstance(src, ConcreteTRO) and isinstance(dst, ConcreteTRO):
        rng = np.random.default_rng(seed)
        worst = 0.0
        xs = list(np.eye(source.dim)) + list(_rand_complex(rng, (samples, source.dim)))
        for x in xs:
            nx = src.norm(x)
            if nx == 0:
                continue
            worst = max(worst, (dst.norm(phi @ x) - nx) / nx)
        rep.add(check("contractive", ANCHOR_CONTRACTIVE, max(worst, 0.0), 1e-9, samples=len(xs)))
    else:
        rep.add(skipped("contractive", ANCHOR_CONTRACTIVE, "no concrete norm on one of the systems"))
    return rep
