"""Operator pairs, L(M), R(M), the block *-algebra 𝒜(M) and its representation π.

Pairs (A1, A2) live in End(M) ⊕ End(M)^op.  Because ℓ(λg, h) = (λA1, λ̄A2),
the second summand carries the conjugate scalar action; pairs are therefore
vectorized as (vec A1, conj(vec A2)), which makes spans and structure
constants complex-linear.  Conjugation happens only at that boundary.

𝒜(M) elements are coefficient records (α, f, γ, β): α over the basis of L,
f over M, γ = conj(coefficients of g) for the barred corner ḡ, β over R.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .errors import InputError, InternalError, StructureError, UnsupportedError
from .report import Report, check, skipped
from .ternary import ConcreteTRO, DirectSum, check_associativity, check_homomorphism_contractive

ANCHOR_LEMMA_LL = "ℓ(g,h)ℓ(g′,h′)=ℓ([ghg′],h′)"
ANCHOR_LEMMA_RR = "r(g,h)∘r(g′,h′)=r(g,[hg′h′])"
ANCHOR_LEMMA_RL = "R(f,g)L(h,k)=L(h,k)R(f,g)"
ANCHOR_MODULE = {
    "module_left": "(AA′)·f=A·(A′·f)",
    "module_right": "f·(B∘B′)=(f·B)·B′",
    "module_bar_right": "f̄·(AA′)=(f̄·A)·A′",
    "module_bar_left": "(B∘B′)·f̄=B·(B′·f̄)",
    "module_bimodule": "(A·f)·B=A·(f·B)",
    "module_bar_bimodule": "(B·f̄)·A=B·(f̄·A)",
    "module_bar_scalar_left": "B·(λ∘f̄)=λ∘(B·f̄)",
    "module_bar_scalar_right": "(λ∘f̄)·A=λ∘(f̄·A)",
}
ANCHOR_EMBED_TRIPLE = "[[0,f],[0,0]]·[[0,g],[0,0]]♯·[[0,h],[0,0]] = [[0,[fgh]],[0,0]]"
ANCHOR_A_ASSOC = "(ab)c = a(bc), a, b, c ∈ 𝒜(M)"
ANCHOR_SHARP = "(ab)♯ = b♯a♯"
ANCHOR_PI = "π(a)[f′;B′] = [A·f′+f·B′; r(g,f′)+B∘B′]"
ANCHOR_PI_MULT = "π(a′′)π(a)b′=π(a′′a)b′"
ANCHOR_PI_INJ = "ker π = 0"
ANCHOR_PI_ADJ = {
    "pi_adj_1": "⟨Ā·f′,f′′⟩=⟨f′,A·f′′⟩",
    "pi_adj_2": "⟨g·B′,f′′⟩=⟨B′,r(g,f′′)⟩",
    "pi_adj_3": "⟨r(f,f′),B′′⟩=⟨f′,f·B′′⟩",
    "pi_adj_4": "⟨B̄∘B′,B′′⟩=⟨B′,B∘B′′⟩",
    "pi_mult_5": "ℓ(f′′,g)·f′=f′′·r(g,f′)",
    "pi_mult_6": "r(ḡ′′·A,f′)=r(g′′,A·f′)",
    "pi_mult_7": "r(B′′·ḡ,f′)=B′′∘r(g,f′)",
    "pi_mult_8": "r(g′′,f)∘B′=r(g′′,f·B′)",
}
ANCHOR_PI_STAR = "⟨π(a)x, y⟩ = ⟨x, π(a♯)y⟩, x, y ∈ M⊕R"
ANCHOR_CSTAR = "‖a♯a‖ = ‖a‖²"
ANCHOR_R_CSTAR = "‖U‖²=‖ŪU‖"
ANCHOR_R_PROOF = "[Uh,Uh,Uh]=[h,ŪUh,Uh]"
ANCHOR_FUNCTORIAL = "φ₁₁(A)=Σᵢ([φ(gᵢ)φ(hᵢ)·],[φ(hᵢ)φ(gᵢ)·])"

LEFT, RIGHT = "left", "right"


def _rand_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _coeffs(M, x):
    x = np.asarray(x, dtype=complex)
    if x.ndim == 2 and isinstance(M, ConcreteTRO):
        return M.coords(x)
    if x.shape != (M.dim,):
        raise InputError(f"expected {M.dim} coefficients, got shape {x.shape}")
    return x


# ------------------------------------------------------------------ pairs


@dataclass(frozen=True, eq=False)
class OperatorPair:
    side: str
    A1: np.ndarray
    A2: np.ndarray

    def __post_init__(self):
        if self.side not in (LEFT, RIGHT):
            raise InputError(f"side must be 'left' or 'right', got {self.side!r}")
        object.__setattr__(self, "A1", np.asarray(self.A1, dtype=complex))
        object.__setattr__(self, "A2", np.asarray(self.A2, dtype=complex))

    def __mul__(self, other):
        if isinstance(other, OperatorPair):
            if other.side != self.side:
                raise InputError("cannot multiply a left pair with a right pair")
            if self.side == LEFT:
                return OperatorPair(LEFT, self.A1 @ other.A1, other.A2 @ self.A2)
            return OperatorPair(RIGHT, other.A1 @ self.A1, self.A2 @ other.A2)
        lam = complex(other)
        return OperatorPair(self.side, lam * self.A1, np.conj(lam) * self.A2)

    __rmul__ = __mul__

    def __add__(self, other):
        if other.side != self.side:
            raise InputError("cannot add pairs of different sides")
        return OperatorPair(self.side, self.A1 + other.A1, self.A2 + other.A2)

    def __sub__(self, other):
        return self + (-1) * other

    def star(self):
        """The swap involution (A1, A2) ↦ (A2, A1)."""
        return OperatorPair(self.side, self.A2, self.A1)

    def vector(self):
        return np.concatenate([self.A1.ravel(), np.conj(self.A2).ravel()])

    @staticmethod
    def from_vector(side, v, n):
        v = np.asarray(v, dtype=complex)
        return OperatorPair(side, v[: n * n].reshape(n, n), np.conj(v[n * n:]).reshape(n, n))

    def norm(self):
        return float(np.linalg.norm(self.vector()))


@dataclass(frozen=True)
class Bar:
    """The element f̄ of the conjugate space M̄ (stores the coefficients of f)."""

    f: np.ndarray


def _ell_mats(c, g, h):
    return np.einsum("i,j,ijkl->lk", g, np.conj(h), c)


def _r_mats(c, g, h):
    return np.einsum("j,k,ijkl->li", np.conj(g), h, c)


def ell(M, g, h):
    """ℓ(g,h) = ([gh·], [hg·])."""
    g, h = _coeffs(M, g), _coeffs(M, h)
    c = M.tensor
    return OperatorPair(LEFT, _ell_mats(c, g, h), _ell_mats(c, h, g))


def r_pair(M, g, h):
    """r(g,h) = ([·gh], [·hg]): first component f ↦ [f,g,h]."""
    g, h = _coeffs(M, g), _coeffs(M, h)
    c = M.tensor
    return OperatorPair(RIGHT, _r_mats(c, g, h), _r_mats(c, h, g))


def module_action(x, y):
    """A·f = A1 f;  f·B = B1 f;  B·f̄ = (B2 f)‾;  f̄·A = (A2 f)‾."""
    if isinstance(x, OperatorPair) and isinstance(y, Bar):
        if x.side != RIGHT:
            raise InputError("only right pairs act on the left of M̄")
        return Bar(x.A2 @ np.asarray(y.f, dtype=complex))
    if isinstance(x, Bar) and isinstance(y, OperatorPair):
        if y.side != LEFT:
            raise InputError("only left pairs act on the right of M̄")
        return Bar(y.A2 @ np.asarray(x.f, dtype=complex))
    if isinstance(x, OperatorPair):
        if x.side != LEFT:
            raise InputError("only left pairs act on the left of M")
        return x.A1 @ np.asarray(y, dtype=complex)
    if isinstance(y, OperatorPair):
        if y.side != RIGHT:
            raise InputError("only right pairs act on the right of M")
        return y.A1 @ np.asarray(x, dtype=complex)
    raise InputError("module_action needs one OperatorPair argument")


def inner_product(M, f, g):
    """⟨f|g⟩ = r(g, f) ∈ R(M)."""
    return r_pair(M, g, f)


# ------------------------------------------------------------ pair algebras


class PairAlgebra:
    """Orthonormalized span of pairs with its structure constants.

    `gen_coef` expresses each basis vector in terms of the generators
    ℓ(e_i, e_j) (or r(e_i, e_j)), labelled by `gen_labels`.
    """

    def __init__(self, side, n, basis, gen_coef, gen_labels, gen_vectors, tol):
        self.side = side
        self.n = n
        self.basis = basis
        self.gen_coef = gen_coef
        self.gen_labels = gen_labels
        self.gen_vectors = gen_vectors
        self.tol = tol
        nn = n * n
        k = basis.shape[0]
        self.first = basis[:, :nn].reshape(k, n, n)
        self.second = np.conj(basis[:, nn:]).reshape(k, n, n)
        prods = np.zeros((k, k, 2 * nn), dtype=complex)
        for a in range(k):
            pa = OperatorPair(side, self.first[a], self.second[a])
            for b in range(k):
                prods[a, b] = (pa * OperatorPair(side, self.first[b], self.second[b])).vector()
        flat = prods.reshape(k * k, 2 * nn)
        coords = flat @ np.conj(basis).T
        res = np.linalg.norm(flat - coords @ basis, axis=1) if k else np.zeros(0)
        self.closure_residual = float(res.max()) if k else 0.0
        self.mult_table = coords.reshape(k, k, k)
        swapped = np.concatenate([np.conj(basis[:, nn:]), np.conj(basis[:, :nn])], axis=1) if k else basis
        self.star_matrix = (swapped @ np.conj(basis).T).T if k else np.zeros((0, 0))

    @property
    def dim(self):
        return self.basis.shape[0]

    def pair(self, x):
        x = np.asarray(x, dtype=complex)
        return OperatorPair(self.side, np.einsum("a,aij->ij", x, self.first),
                            np.einsum("a,aij->ij", np.conj(x), self.second))

    def coords(self, p, check=True):
        v = p.vector()
        c = np.conj(self.basis) @ v
        if check:
            r = float(np.linalg.norm(v - c @ self.basis))
            if r > self.tol * max(1.0, float(np.linalg.norm(v))) * 1e3:
                raise InputError(f"pair does not lie in the algebra (residual {r:.3e})")
        return c

    def mul(self, x, y):
        return np.einsum("a,b,abc->c", x, y, self.mult_table)

    def star(self, x):
        return self.star_matrix @ np.conj(np.asarray(x, dtype=complex))


def _build_pairs(M, side, tol=None):
    tol = M.tol if tol is None else tol
    n = M.dim
    c = M.tensor
    labels, vecs = [], []
    maker = _ell_mats if side == LEFT else _r_mats
    eye = np.eye(n, dtype=complex)
    for i in range(n):
        for j in range(n):
            labels.append((i, j))
            vecs.append(OperatorPair(side, maker(c, eye[i], eye[j]), maker(c, eye[j], eye[i])).vector())
    vecs = np.array(vecs).reshape(len(labels), 2 * n * n)
    basis, coef = linalg.row_basis(vecs, tol)
    alg = PairAlgebra(side, n, basis, coef, labels, vecs, tol)
    scale = max(1.0, float(np.abs(c).max(initial=0.0)) ** 2)
    if alg.closure_residual > 1e3 * tol * scale:
        raise StructureError(
            f"span of {'ℓ' if side == LEFT else 'r'}-pairs is not closed under multiplication "
            f"(residual {alg.closure_residual:.3e}); the triple system is not associative")
    return alg


def build_L(M, tol=None):
    """L(M) = span{ℓ(g,h)}."""
    return _build_pairs(M, LEFT, tol)


def build_R(M, tol=None):
    """R(M) = span{r(g,h)}."""
    return _build_pairs(M, RIGHT, tol)


def _op_tensors(c):
    """Lop[g,h] = matrix of [g,h,·];  Rop[a,b] = matrix of [·,b,a]."""
    lop = np.transpose(c, (0, 1, 3, 2))
    rop = np.transpose(c, (2, 1, 3, 0))
    return lop, rop


def check_pair_identities(M, tol=1e-10):
    """The three pair identities over all basis 4-tuples."""
    c = np.asarray(M.tensor)
    n = M.dim
    lop, rop = _op_tensors(c)
    rep = Report()
    worst = {"ll": (0.0, []), "rr": (0.0, []), "rl": (0.0, [])}
    scale = max(1.0, float(np.abs(c).max(initial=0.0)) ** 2)
    for g in range(n):
        for h in range(n):
            # (i) first and second components
            lhs1 = np.einsum("ab,pqbc->pqac", lop[g, h], lop)
            rhs1 = np.einsum("pm,mqac->pqac", c[g, h], lop)
            lhs2 = np.einsum("qpab,bc->pqac", lop, lop[h, g])
            rhs2 = np.einsum("pm,qmac->pqac", np.conj(c[g, h]), lop)
            e1 = np.maximum(np.abs(lhs1 - rhs1).reshape(n, n, -1).max(-1), np.abs(lhs2 - rhs2).reshape(n, n, -1).max(-1))
            # (ii) r(g,h)∘r(g',h') = r(g,[h g' h']);  B1 f = [f,g,h]
            r1 = _r_mats(c, np.eye(n)[g], np.eye(n)[h])
            r2 = _r_mats(c, np.eye(n)[h], np.eye(n)[g])
            rb1 = np.einsum("ijkl->jkli", c)  # rb1[j,k] = matrix of f ↦ [f,e_j,e_k]
            lhs3 = np.einsum("pqab,bc->pqac", rb1, r1)
            # compute (ii) directly: second argument is [h,g',h'] = sum_m c[h,p,q,m] e_m
            rhs3 = np.einsum("pqm,mac->pqac", c[h], rb1[g])
            lhs4 = np.einsum("ab,qpbc->pqac", r2, rb1)
            rhs4 = np.einsum("pqm,mac->pqac", np.conj(c[h]), rb1[:, g])
            e2 = np.maximum(np.abs(lhs3 - rhs3).reshape(n, n, -1).max(-1), np.abs(lhs4 - rhs4).reshape(n, n, -1).max(-1))
            # (iii) R(f,g)L(h,k) = L(h,k)R(f,g) with R(a,b) = [·,b,a]
            lhs5 = np.einsum("pqab,bc->pqac", rop, lop[g, h])
            rhs5 = np.einsum("ab,pqbc->pqac", lop[g, h], rop)
            e3 = np.abs(lhs5 - rhs5).reshape(n, n, -1).max(-1)
            for key, e in (("ll", e1), ("rr", e2), ("rl", e3)):
                m = float(e.max()) if e.size else 0.0
                if m > worst[key][0]:
                    p, q = np.unravel_index(int(np.argmax(e)), e.shape)
                    worst[key] = (m, [int(g), int(h), int(p), int(q)])
    thr = tol * scale
    for key, cid, anchor in (("ll", "pair_identity_left", ANCHOR_LEMMA_LL),
                             ("rr", "pair_identity_right", ANCHOR_LEMMA_RR),
                             ("rl", "pair_identity_commute", ANCHOR_LEMMA_RL)):
        res, wit = worst[key]
        rep.add(check(cid, anchor, res, thr, witnesses=[wit] if res > thr else []))
    return rep


def check_module_identities(M, L=None, R=None, tol=1e-10):
    """The module compatibilities over basis elements, using the structure constants of L and R."""
    L = build_L(M) if L is None else L
    R = build_R(M) if R is None else R
    n = M.dim
    rep = Report()
    eye = np.eye(n, dtype=complex)
    A1, A2 = L.first, L.second
    B1, B2 = R.first, R.second
    Lt, Rt = L.mult_table, R.mult_table
    # products reconstructed from the tables
    AA1 = np.einsum("abc,cij->abij", Lt, A1)
    AA2 = np.einsum("abc,cij->abij", np.conj(Lt), A2)
    BB1 = np.einsum("abc,cij->abij", Rt, B1)
    BB2 = np.einsum("abc,cij->abij", np.conj(Rt), B2)
    res = {}
    res["module_left"] = np.abs(AA1 - np.einsum("aij,bjk->abik", A1, A1))
    res["module_right"] = np.abs(BB1 - np.einsum("bij,ajk->abik", B1, B1))
    # f̄·A = (A2 f)‾ → coefficient map conj(A2) on γ; (f̄·A)·A′ = conj(A′2 A2)
    res["module_bar_right"] = np.abs(AA2 - np.einsum("bij,ajk->abik", A2, A2))
    # (B∘B′)·f̄ = (B∘B′)2 f, B·(B′·f̄) = B2 B′2 f
    res["module_bar_left"] = np.abs(BB2 - np.einsum("aij,bjk->abik", B2, B2))
    # (A·f)·B = B1 A1 f vs A·(f·B) = A1 B1 f
    res["module_bimodule"] = np.abs(np.einsum("bij,ajk->abik", B1, A1) - np.einsum("aij,bjk->abik", A1, B1))
    res["module_bar_bimodule"] = np.abs(np.einsum("aij,bjk->abik", A2, B2) - np.einsum("bij,ajk->abik", B2, A2))
    rng = np.random.default_rng(0)
    lam = complex(*rng.standard_normal(2))
    # λ∘f̄ = (λ̄ f)‾: B·(λ∘f̄) = (B2 λ̄ f)‾ = λ∘(B·f̄)
    sc_l = [np.abs(np.conj(lam) * (B2[b] @ eye) - B2[b] @ (np.conj(lam) * eye)) for b in range(R.dim)]
    sc_r = [np.abs(np.conj(lam) * (A2[a] @ eye) - A2[a] @ (np.conj(lam) * eye)) for a in range(L.dim)]
    res["module_bar_scalar_left"] = np.array(sc_l)
    res["module_bar_scalar_right"] = np.array(sc_r)
    scale = max(1.0, float(np.abs(M.tensor).max(initial=0.0)) ** 2)
    for cid, arr in res.items():
        r = float(arr.max()) if arr.size else 0.0
        wit = [list(map(int, np.unravel_index(int(np.argmax(arr)), arr.shape)))[:2]] if r > tol * scale else []
        rep.add(check(cid, ANCHOR_MODULE[cid], r, tol * scale, witnesses=wit))
    return rep


# --------------------------------------------------------------- 𝒜(M)


class EmbeddingAlgebra:
    """𝒜(M) = L ⊕ M ⊕ M̄ ⊕ R with precompiled structure constants."""

    def __init__(self, M, L=None, R=None):
        self.M = M
        self.L = build_L(M) if L is None else L
        self.R = build_R(M) if R is None else R
        n, dl, dr = M.dim, self.L.dim, self.R.dim
        self.n, self.dl, self.dr = n, dl, dr
        self.dim = dl + 2 * n + dr
        sl = slice(0, dl)
        sf = slice(dl, dl + n)
        sg = slice(dl + n, dl + 2 * n)
        sr = slice(dl + 2 * n, self.dim)
        self.slices = {"L": sl, "f": sf, "g": sg, "R": sr}
        c = M.tensor
        eye = np.eye(n, dtype=complex)
        # ℓ(e_i, e_j) and r(e_j, e_k) in L/R coordinates
        ell_l = np.zeros((n, n, dl), dtype=complex)
        r_r = np.zeros((n, n, dr), dtype=complex)
        for i in range(n):
            for j in range(n):
                ell_l[i, j] = self.L.coords(OperatorPair(LEFT, _ell_mats(c, eye[i], eye[j]), _ell_mats(c, eye[j], eye[i])), check=False)
                r_r[i, j] = self.R.coords(OperatorPair(RIGHT, _r_mats(c, eye[i], eye[j]), _r_mats(c, eye[j], eye[i])), check=False)
        self.ell_coords = ell_l
        self.r_coords = r_r
        A1, A2, B1, B2 = self.L.first, self.L.second, self.R.first, self.R.second
        t = np.zeros((self.dim,) * 3, dtype=complex)
        t[sl, sl, sl] = self.L.mult_table
        t[sf, sg, sl] = ell_l
        t[sl, sf, sf] = np.transpose(A1, (0, 2, 1))  # α_a f′_k → A1[a][l,k]
        t[sf, sr, sf] = np.transpose(B1, (2, 0, 1))  # f_i β′_b → B1[b][l,i]
        t[sg, sl, sg] = np.transpose(np.conj(A2), (2, 0, 1))  # γ_i α′_a → conj(A2[a])[l,i]
        t[sr, sg, sg] = np.transpose(np.conj(B2), (0, 2, 1))  # β_b γ′_i → conj(B2[b])[l,i]
        t[sg, sf, sr] = r_r
        t[sr, sr, sr] = self.R.mult_table
        self.table = t
        s = np.zeros((self.dim, self.dim), dtype=complex)
        s[sl, sl] = self.L.star_matrix
        s[sr, sr] = self.R.star_matrix
        s[sf, sg] = np.eye(n)
        s[sg, sf] = np.eye(n)
        self.star_matrix = s

    # element helpers
    def zero(self):
        return np.zeros(self.dim, dtype=complex)

    def embed(self, block, x):
        a = self.zero()
        a[self.slices[block]] = x
        return a

    def corner(self, f):
        return self.embed("f", _coeffs(self.M, f))

    def bar_corner(self, g):
        return self.embed("g", np.conj(_coeffs(self.M, g)))

    def split(self, a):
        return {k: a[s] for k, s in self.slices.items()}

    def mul(self, a, b):
        return np.einsum("a,b,abc->c", a, b, self.table)

    def sharp(self, a):
        return self.star_matrix @ np.conj(np.asarray(a, dtype=complex))

    def left_regular(self, a):
        return linalg.left_regular(self.table, a)

    def random(self, rng):
        return _rand_complex(rng, self.dim)

    @cached_property
    def pi_tensor(self):
        """Pi[a] = matrix of π(e_a) on the coefficient space of M ⊕ R."""
        n, dr, dl = self.n, self.dr, self.dl
        N = n + dr
        B1 = self.R.first
        pi = np.zeros((self.dim, N, N), dtype=complex)
        sl, sf, sg, sr = (self.slices[k] for k in "L f g R".split())
        pi[sl, :n, :n] = self.L.first
        pi[sf, :n, n:] = np.transpose(B1, (2, 1, 0))  # f_i: column b′ is B1[b′] e_i
        pi[sg, n:, :n] = np.transpose(self.r_coords, (0, 2, 1))  # γ_j: column k is r(e_j, e_k)
        pi[sr, n:, n:] = np.transpose(self.R.mult_table, (0, 2, 1))
        return pi

    def pi(self, a):
        return np.tensordot(np.asarray(a, dtype=complex), self.pi_tensor, axes=(0, 0))

    @cached_property
    def module_inner_tensor(self):
        """IP[p,q] = ⟨e_p, e_q⟩ ∈ R for the R-valued inner product on M ⊕ R."""
        n, dr = self.n, self.dr
        N = n + dr
        ip = np.zeros((N, N, dr), dtype=complex)
        ip[:n, :n] = np.transpose(self.r_coords, (1, 0, 2))  # ⟨e_p,e_q⟩_M = r(e_q, e_p)
        js = self.R.star_matrix
        ip[n:, n:] = np.einsum("bq,bpc->pqc", js, self.R.mult_table)  # ⟨e_p,e_q⟩_R = ē_q∘e_p
        return ip


def standard_embedding(M, samples=50, seed=0, tol=1e-10):
    """Build 𝒜(M) and verify associativity, ♯ and the embedded-triple identity.

    Returns (EmbeddingAlgebra, Report).  Raises StructureError when M fails
    the associativity checks.
    """
    pre = check_associativity(M)
    if not pre.passed:
        raise StructureError("triple system fails associativity; 𝒜(M) is undefined", report=pre)
    E = EmbeddingAlgebra(M)
    rep = Report(environment={"seed": seed, "samples": samples})
    rng = np.random.default_rng(seed)
    worst_assoc = worst_sharp = worst_inv = 0.0
    scale = 1.0
    for _ in range(samples):
        a, b, c = (E.random(rng) for _ in range(3))
        ab = E.mul(a, b)
        lhs = E.mul(ab, c)
        rhs = E.mul(a, E.mul(b, c))
        scale = max(scale, float(np.linalg.norm(lhs)))
        worst_assoc = max(worst_assoc, float(np.linalg.norm(lhs - rhs)))
        worst_sharp = max(worst_sharp, float(np.linalg.norm(E.sharp(ab) - E.mul(E.sharp(b), E.sharp(a)))))
        worst_inv = max(worst_inv, float(np.linalg.norm(E.sharp(E.sharp(a)) - a)))
    rep.add(check("embedding_associative", ANCHOR_A_ASSOC, worst_assoc / scale, tol * 1e2, samples=samples))
    rep.add(check("embedding_sharp", ANCHOR_SHARP, max(worst_sharp, worst_inv) / scale, tol * 1e2, samples=samples))
    rep.add(check_embedded_triple(E, tol))
    return E, rep


def check_embedded_triple(E, tol=1e-10):
    n = E.n
    eye = np.eye(n, dtype=complex)
    corners = np.array([E.corner(eye[i]) for i in range(n)]).reshape(n, E.dim)
    sharps = np.array([E.sharp(x) for x in corners]).reshape(n, E.dim)
    t = E.table
    left = np.einsum("fa,gb,abc->fgc", corners, sharps, t)
    prod = np.einsum("fga,hb,abc->fghc", left, corners, t)
    target = np.zeros_like(prod)
    target[..., E.slices["f"]] = E.M.tensor
    err = np.linalg.norm(prod - target, axis=-1) if prod.size else np.zeros(0)
    res = float(err.max()) if err.size else 0.0
    scale = max(1.0, float(np.abs(E.M.tensor).max(initial=0.0)))
    wit = [list(map(int, np.unravel_index(int(np.argmax(err)), err.shape)))] if res > tol * scale else []
    return check("embedded_triple", ANCHOR_EMBED_TRIPLE, res, tol * scale, witnesses=wit)


# ------------------------------------------------------------------ π


def pi_representation(E, samples=100, seed=0, tol=1e-9):
    """π on M ⊕ R with its verification report.

    Returns (pi_tensor, Report); `E.pi(a)` evaluates π at an element.
    """
    rep = Report(environment={"seed": seed, "samples": samples})
    pi = E.pi_tensor
    d = E.dim
    N = E.n + E.dr
    scale = max(1.0, float(np.abs(E.table).max(initial=0.0)))
    if d == 0:
        for cid in ["pi_multiplicative", "pi_star", "pi_injective", *ANCHOR_PI_ADJ]:
            rep.add(check(cid, ANCHOR_PI_ADJ.get(cid, ANCHOR_PI), 0.0, 0.0))
        return pi, rep
    # multiplicativity on all basis pairs and on random pairs
    prod = np.einsum("aij,bjk->abik", pi, pi)
    target = np.einsum("abc,cij->abij", E.table, pi)
    err = np.abs(prod - target).reshape(d, d, -1).max(-1)
    rng = np.random.default_rng(seed)
    worst_rand = 0.0
    for _ in range(samples):
        a, b = E.random(rng), E.random(rng)
        lhs = E.pi(a) @ E.pi(b)
        worst_rand = max(worst_rand, linalg.operator_norm(lhs - E.pi(E.mul(a, b))) / max(1.0, linalg.operator_norm(lhs)))
    res = max(float(err.max()), worst_rand)
    wit = [list(map(int, np.unravel_index(int(np.argmax(err)), err.shape)))] if res > tol * scale else []
    rep.add(check("pi_multiplicative", ANCHOR_PI_MULT, res, tol * scale, witnesses=wit, samples=samples))
    # ♯-compatibility for the R-valued inner product
    ip = E.module_inner_tensor
    pi_sharp = np.einsum("ba,bij->aij", E.star_matrix, pi)
    lhs = np.einsum("apx,pyc->axyc", pi, ip)
    rhs = np.einsum("aqy,xqc->axyc", np.conj(pi_sharp), ip)
    err = np.linalg.norm(lhs - rhs, axis=-1)
    res = float(err.max())
    wit = [list(map(int, np.unravel_index(int(np.argmax(err)), err.shape)))] if res > tol * scale else []
    rep.add(check("pi_star", ANCHOR_PI_STAR, res, tol * scale, witnesses=wit))
    for cid, arr in _pi_identities(E).items():
        r = float(arr.max()) if arr.size else 0.0
        wit = [list(map(int, np.unravel_index(int(np.argmax(arr)), arr.shape)))] if r > tol * scale else []
        rep.add(check(cid, ANCHOR_PI_ADJ[cid], r, tol * scale, witnesses=wit))
    # injectivity
    flat = pi.reshape(d, N * N).T
    kernel = linalg.null_space(flat, tol=1e-10)
    kdim = kernel.shape[1]
    wit = [np.round(kernel[:, 0], 12)] if kdim else []
    rep.add(check("pi_injective", ANCHOR_PI_INJ, float(kdim), 0.0, witnesses=wit, kernel_dim=kdim))
    return pi, rep


def _pi_identities(E):
    """The eight inner-product and multiplication identities, as residual arrays."""
    n = E.n
    A1, A2 = E.L.first, E.L.second
    B1, B2 = E.R.first, E.R.second
    rr = E.r_coords
    Rt = E.R.mult_table
    JR = E.R.star_matrix
    out = {}
    # 1: r(f″, A2 f′) = r(A1 f″, f′)          [a, f′=p, f″=q]
    lhs = np.einsum("akp,qkc->apqc", A2, rr)
    rhs = np.einsum("ajq,jpc->apqc", np.conj(A1), rr)
    out["pi_adj_1"] = np.linalg.norm(lhs - rhs, axis=-1)
    # 2: r(f″, B′1 g) = (r(g,f″))‾∘B′          [b, g, q]
    lhs = np.einsum("bkg,qkc->bgqc", B1, rr)
    ubar = np.einsum("xy,gqy->gqx", JR, np.conj(rr))
    rhs = np.einsum("gqx,xbc->bgqc", ubar, Rt)
    out["pi_adj_2"] = np.linalg.norm(lhs - rhs, axis=-1)
    # 3: B̄″∘r(f,f′) = r(B″1 f, f′)             [p, q, b]
    lhs = np.einsum("xb,xyc,pqy->pqbc", JR, Rt, rr)
    rhs = np.einsum("bjp,jqc->pqbc", np.conj(B1), rr)
    out["pi_adj_3"] = np.linalg.norm(lhs - rhs, axis=-1)
    # 4: B̄″∘(B̄∘B′) = (B∘B″)‾∘B′               [b, b′, b″]
    inner = np.einsum("xb,xyc->byc", JR, Rt)  # B̄_b ∘ e_y
    lhs = np.einsum("zs,zyc,bty->btsc", JR, Rt, inner)
    bbar = np.einsum("zx,bsx->bsz", JR, np.conj(Rt))  # (e_b∘e_s)‾
    rhs = np.einsum("bsz,ztc->btsc", bbar, Rt)
    out["pi_adj_4"] = np.linalg.norm(lhs - rhs, axis=-1)
    # 5: ℓ(f″,g)·f′ = f″·r(g,f′)                [f″=p, g, f′=q]
    ell_first = np.einsum("pga,aij->pgij", E.ell_coords, A1)
    lhs = ell_first
    rhs = np.einsum("gqb,bip->pgiq", rr, B1)
    out["pi_mult_5"] = np.abs(lhs - rhs).max(axis=2) if n else np.zeros(0)
    # 6: r(A2 g″, f′) = r(g″, A1 f′)            [a, g″, f′]
    lhs = np.einsum("ajg,jqc->agqc", np.conj(A2), rr)
    rhs = np.einsum("akq,gkc->agqc", A1, rr)
    out["pi_mult_6"] = np.linalg.norm(lhs - rhs, axis=-1)
    # 7: r(B″2 g, f′) = B″∘r(g,f′)              [b, g, f′]
    lhs = np.einsum("bjg,jqc->bgqc", np.conj(B2), rr)
    rhs = np.einsum("gqx,bxc->bgqc", rr, Rt)
    out["pi_mult_7"] = np.linalg.norm(lhs - rhs, axis=-1)
    # 8: r(g″,f)∘B′ = r(g″, B′1 f)              [g″, f, b]
    lhs = np.einsum("gpx,xbc->gpbc", rr, Rt)
    rhs = np.einsum("bkp,gkc->gpbc", B1, rr)
    out["pi_mult_8"] = np.linalg.norm(lhs - rhs, axis=-1)
    return out


# -------------------------------------------------------------- C*-norm


class CStarNorm:
    """Operator norm through the concrete linking picture of a sign +1 TRO.

    Φ(α, f, γ, β) = [[Σ α_a C_a, Σ f_i x_i], [Σ γ_i x_i*, Σ β_b D_b]] where
    C_a, D_b are the concrete counterparts of the L and R basis pairs
    (ℓ(g,h) ↔ g h*, r(g,h) ↔ g* h).
    """

    def __init__(self, E):
        M = E.M
        if isinstance(M, DirectSum) and M.concrete:
            M = M.as_concrete()
        if not isinstance(M, ConcreteTRO):
            raise UnsupportedError("no concrete realization available; route abstract input through zettl.realize")
        if M.scalar_sign != 1:
            raise UnsupportedError(
                "𝒜(M) with the untwisted involution is not a C*-algebra for a negatively signed system; "
                "use the grading-twisted embedding (zettl.realize)")
        self.E = E
        xb = M.space.basis
        rows, cols = M.shape
        self.rows, self.cols = rows, cols
        gl = np.einsum("iab,jcb->ijac", xb, np.conj(xb)).reshape(-1, rows, rows)
        gr = np.einsum("jba,kbc->jkac", np.conj(xb), xb).reshape(-1, cols, cols)
        self.C = np.einsum("ag,gij->aij", E.L.gen_coef, gl) if E.dl else np.zeros((0, rows, rows))
        self.D = np.einsum("bg,gij->bij", E.R.gen_coef, gr) if E.dr else np.zeros((0, cols, cols))
        self.X = xb
        N = rows + cols
        phi = np.zeros((E.dim, N, N), dtype=complex)
        phi[E.slices["L"], :rows, :rows] = self.C
        phi[E.slices["f"], :rows, rows:] = xb
        phi[E.slices["g"], rows:, :rows] = np.conj(np.transpose(xb, (0, 2, 1)))
        phi[E.slices["R"], rows:, rows:] = self.D
        self.phi_tensor = phi
        self.verification = self._verify()

    def realize(self, a):
        return np.tensordot(np.asarray(a, dtype=complex), self.phi_tensor, axes=(0, 0))

    def __call__(self, a):
        return linalg.operator_norm(self.realize(a))

    def _verify(self):
        E = self.E
        phi = self.phi_tensor
        if E.dim == 0:
            return 0.0
        prod = np.einsum("aij,bjk->abik", phi, phi)
        target = np.einsum("abc,cij->abij", E.table, phi)
        r1 = float(np.abs(prod - target).max())
        sharp = np.einsum("ba,bij->aij", E.star_matrix, phi)
        r2 = float(np.abs(sharp - np.conj(np.transpose(phi, (0, 2, 1)))).max())
        flat = phi.reshape(E.dim, -1)
        rank = np.linalg.matrix_rank(flat, tol=1e-9)
        if max(r1, r2) > 1e-8 or rank != E.dim:
            raise InternalError(f"linking picture is not a faithful *-isomorphism (residuals {r1:.2e}, {r2:.2e}, rank {rank})")
        return max(r1, r2)


def cstar_norm(E):
    """The C*-norm of 𝒜(M) for a concrete sign +1 system."""
    return CStarNorm(E)


def check_cstar_identity(E, norm=None, samples=100, seed=0, tol=1e-8):
    norm = cstar_norm(E) if norm is None else norm
    rng = np.random.default_rng(seed)
    worst = worst_sub = 0.0
    for _ in range(samples):
        a, b = E.random(rng), E.random(rng)
        na = norm(a)
        if na > 0:
            worst = max(worst, abs(norm(E.mul(E.sharp(a), a)) - na**2) / na**2)
        nb = norm(b)
        if na * nb > 0:
            worst_sub = max(worst_sub, (norm(E.mul(a, b)) - na * nb) / (na * nb))
    rep = Report(environment={"seed": seed, "samples": samples})
    rep.add(check("cstar_identity", ANCHOR_CSTAR, worst, tol, samples=samples))
    rep.add(check("cstar_submultiplicative", "‖ab‖ ≤ ‖a‖‖b‖", max(worst_sub, 0.0), tol, samples=samples))
    return rep


def cstar_identity_R(M, samples=100, seed=0, tol=1e-8, R=None):
    """‖U‖² = ‖ŪU‖ for U ∈ R(M), with U acting componentwise on M ⊕ M.

    For a concrete TRO every U1 is right multiplication by some d1 (found by a
    linear solve), so ‖U1‖ = ‖d1‖ and U2 U1 is right multiplication by d1 d2.
    Both the B(M)-norm ‖U1‖ and the M⊕M norm max(‖U1‖,‖U2‖) are recorded.
    """
    if isinstance(M, DirectSum) and M.concrete:
        M = M.as_concrete()
    if not isinstance(M, ConcreteTRO) or M.scalar_sign is None:
        raise UnsupportedError("R(M) norms need a concrete system with a global sign")
    R = build_R(M) if R is None else R
    rep = Report(environment={"seed": seed, "samples": samples})
    xb = M.space.basis
    rows, cols = M.shape
    n = M.dim
    system = np.concatenate([np.kron(x, np.eye(cols)) for x in xb]) if n else np.zeros((0, cols * cols))
    rng = np.random.default_rng(seed)

    def right_factor(op):
        rhs = np.concatenate([np.einsum("l,lab->ab", op[:, i], xb).ravel() for i in range(n)]) if n else np.zeros(0)
        d, *_ = np.linalg.lstsq(system, rhs, rcond=None)
        return d.reshape(cols, cols), float(np.linalg.norm(system @ d - rhs))

    worst = worst_proof = worst_solve = 0.0
    records = []
    coeff_samples = [np.eye(R.dim)[i] for i in range(R.dim)] + [_rand_complex(rng, R.dim) for _ in range(samples)]
    for beta in coeff_samples if R.dim else []:
        U = R.pair(beta)
        d1, s1 = right_factor(U.A1)
        d2, s2 = right_factor(U.A2)
        worst_solve = max(worst_solve, s1, s2)
        n1, n2 = linalg.operator_norm(d1), linalg.operator_norm(d2)
        norm_mm = max(n1, n2)
        norm_uu = max(linalg.operator_norm(d1 @ d2), linalg.operator_norm(d2 @ d1))
        if norm_mm > 0:
            worst = max(worst, abs(norm_mm**2 - norm_uu) / norm_mm**2)
        records.append((n1, norm_mm, norm_uu))
        h1, h2 = _rand_complex(rng, (2, n))
        for h, Ua, Ub in ((h1, U.A1, U.A2), (h2, U.A2, U.A1)):
            uh = Ua @ h
            lhs = M.product(uh, uh, uh)
            rhs = M.product(h, Ub @ uh, uh)
            worst_proof = max(worst_proof, float(np.linalg.norm(lhs - rhs)) / max(1.0, float(np.linalg.norm(lhs))))
    rep.add(check("r_cstar_identity", ANCHOR_R_CSTAR, worst, tol, samples=len(records),
                  norm_B_M=[r[0] for r in records[:5]], norm_B_MM=[r[1] for r in records[:5]],
                  norm_UbarU=[r[2] for r in records[:5]], solve_residual=worst_solve))
    rep.add(check("r_proof_identity", ANCHOR_R_PROOF, worst_proof, 1e-10, samples=len(records)))
    return rep


# ------------------------------------------------------- functoriality


@dataclass
class FunctorialExtension:
    matrix: np.ndarray
    report: Report

    def __call__(self, a):
        return self.matrix @ np.asarray(a, dtype=complex)


def _map_matrix(phi, source, target, seed=0):
    if callable(phi):
        n1 = source.dim
        cols = [np.asarray(phi(e), dtype=complex) for e in np.eye(n1, dtype=complex)]
        mat = np.array(cols).T.reshape(target.dim, n1)
        rng = np.random.default_rng(seed)
        for _ in range(8):
            x = _rand_complex(rng, n1)
            lam = complex(*rng.standard_normal(2))
            if np.linalg.norm(np.asarray(phi(lam * x)) - lam * (mat @ x)) > 1e-9 * max(1.0, np.linalg.norm(mat @ x)):
                raise InputError("map is not complex-linear")
        return mat
    return np.asarray(phi, dtype=complex)


def functorial_extension(phi, source, target, samples=20, seed=0, tol=1e-9):
    """The block map 𝒜(φ): 𝒜(M1) → 𝒜(M2) for a surjective triple homomorphism φ."""
    mat = _map_matrix(phi, source, target, seed)
    base = check_homomorphism_contractive(mat, source, target, seed=seed)
    E1, E2 = EmbeddingAlgebra(source), EmbeddingAlgebra(target)
    n1 = source.dim
    out = np.zeros((E2.dim, E1.dim), dtype=complex)
    # ℓ(e_i,e_j) ↦ ℓ(φe_i, φe_j);  r(e_i,e_j) ↦ r(φe_i, φe_j)
    img_l = np.einsum("pi,qj,pqc->ijc", mat, np.conj(mat), E2.ell_coords).reshape(n1 * n1, E2.dl)
    img_r = np.einsum("pi,qj,pqc->ijc", np.conj(mat), mat, E2.r_coords).reshape(n1 * n1, E2.dr)
    out[E2.slices["L"], E1.slices["L"]] = (E1.L.gen_coef @ img_l).T if E1.dl else 0
    out[E2.slices["R"], E1.slices["R"]] = (E1.R.gen_coef @ img_r).T if E1.dr else 0
    out[E2.slices["f"], E1.slices["f"]] = mat
    out[E2.slices["g"], E1.slices["g"]] = np.conj(mat)
    rep = Report(environment={"seed": seed})
    rep.add(base)
    # well-definedness: vanishing generator combinations must map to zero
    wd = 0.0
    for side, alg, img in (("L", E1.L, img_l), ("R", E1.R, img_r)):
        if alg.gen_vectors.size:
            null = linalg.null_space(alg.gen_vectors.T, tol=1e-10)
            if null.size:
                wd = max(wd, float(np.abs(null.T @ img).max()))
    rep.add(check("functorial_well_defined", ANCHOR_FUNCTORIAL, wd, tol))
    if E1.dim:
        lhs = np.einsum("abk,ck->abc", E1.table, out)
        rhs = np.einsum("pa,qb,pqc->abc", out, out, E2.table)
        hom = float(np.abs(lhs - rhs).max())
        star = float(np.abs(out @ E1.star_matrix - E2.star_matrix @ np.conj(out)).max())
    else:
        hom = star = 0.0
    rep.add(check("functorial_homomorphism", "𝒜(φ)(ab) = 𝒜(φ)(a)𝒜(φ)(b)", hom, tol))
    rep.add(check("functorial_star", "𝒜(φ)(a♯) = 𝒜(φ)(a)♯", star, tol))
    try:
        N1, N2 = cstar_norm(E1), cstar_norm(E2)
    except UnsupportedError as exc:
        rep.add(skipped("functorial_contractive", "‖φ₁₁(A)‖ ≤ ‖A‖, ‖φ₂₂(B)‖ ≤ ‖B‖", str(exc)))
    else:
        worst = 0.0
        for blk in ("L", "R"):
            s = E1.slices[blk]
            for k in range(s.start, s.stop):
                a = np.eye(E1.dim)[k]
                na = N1(a)
                worst = max(worst, (N2(out @ a) - na) / max(na, 1e-300))
        rep.add(check("functorial_contractive", "‖φ₁₁(A)‖ ≤ ‖A‖, ‖φ₂₂(B)‖ ≤ ‖B‖", max(worst, 0.0), tol))
    return FunctorialExtension(out, rep)
