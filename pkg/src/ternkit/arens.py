"""Duals, biduals, Arens products and the Sherman–Takeda product.

Coordinates: each hom-space (X,Y) carries the orthonormal basis e_1..e_n of
its MatrixSubspace.  A functional f ∈ (X,Y)′ is stored by its values
f_i = ⟨f, e_i⟩ (dual basis), so ⟨f, a⟩ = Σ f_i a_i.  A bidual element F is
stored by F_i = ⟨F, δ_i⟩ against the dual basis δ_i; the canonical
embedding â therefore has the same coefficients as a.

Every stage of the Arens chains is evaluated literally: each intermediate
functional is computed by pairing it with all basis vectors through the
defining identity, never by shortcutting through the canonical isomorphism.
At finite dimension the weak*-continuity statements collapse to coordinate
identities; the reports label them that way.
"""
import itertools
from dataclasses import dataclass

import numpy as np

from .category import CSTAR, faithful_representation
from .errors import InputError
from .report import Report, check

ANCHOR_DUAL = "(X,Y)′ ∋ f, ⟨f, a⟩"
ANCHOR_EMBED = "\\widehat b∘\\widehat a=\\widehat{ba}"
ANCHOR_BINARY = "⟨G∘F,f⟩=⟨G,fF⟩"
ANCHOR_BINARY_ASSOC = "(H∘G)∘F=H∘(G∘F)"
ANCHOR_TERNARY = "⟨[HGF],f⟩=⟨F,μ₂(G,H,f)⟩"
ANCHOR_TERNARY_EMBED = "[Ĥ Ĝ F̂] = ([hgf])̂"
ANCHOR_TERNARY_ASSOC_1 = "[LK[HGF]]=[[LKH]GF]"
ANCHOR_TERNARY_ASSOC_2 = "[LK[HGF]]=[L[GHK]F]"
ANCHOR_MIDDLE = "[H(λG)F] = λ̄[HGF]"
ANCHOR_INVOLUTION = "⟨F*,f⟩=⟨F,f*⟩‾"
ANCHOR_ANTI = "(G∘F)* = F*∘G*"
ANCHOR_ST = "G∙F=τ⁻¹(τ(G)τ(F))"
ANCHOR_ST_EQUAL = "G∘F = G∙F"
ANCHOR_COLLAPSE = "(X,Y)′′ = ((X,Y))̂"


@dataclass(frozen=True)
class DualFunctional:
    hom_pair: tuple
    coeffs: np.ndarray

    def pair(self, coeffs):
        """⟨f, a⟩ for a given by hom coordinates (complex-linear in a)."""
        return complex(np.dot(self.coeffs, np.asarray(coeffs, dtype=complex)))


@dataclass(frozen=True)
class BidualElement:
    hom_pair: tuple
    coeffs: np.ndarray

    def pair(self, f):
        """⟨F, f⟩ for a dual functional f."""
        if tuple(f.hom_pair) != tuple(self.hom_pair):
            raise InputError(f"cannot pair {self.hom_pair}″ with {f.hom_pair}′")
        return complex(np.dot(self.coeffs, f.coeffs))

    def __add__(self, other):
        _same(self.hom_pair, other.hom_pair)
        return BidualElement(self.hom_pair, self.coeffs + other.coeffs)

    def __sub__(self, other):
        _same(self.hom_pair, other.hom_pair)
        return BidualElement(self.hom_pair, self.coeffs - other.coeffs)

    def __rmul__(self, scalar):
        return BidualElement(self.hom_pair, complex(scalar) * self.coeffs)


def _same(p, q):
    if tuple(p) != tuple(q):
        raise InputError(f"hom-pair mismatch: {p} vs {q}")


def _unit(n, i):
    e = np.zeros(n, dtype=complex)
    e[i] = 1.0
    return e


class Bidual:
    """Arens machinery for one finite category (either flavor)."""

    def __init__(self, C):
        self.C = C
        self._bin = {}
        self._ter = {}

    # ------------------------------------------------------------ basics
    def dim(self, pair):
        return self.C.hom(*pair).dim

    def hat(self, pair, coeffs):
        """Canonical embedding a ↦ â."""
        c = np.asarray(coeffs, dtype=complex)
        if c.shape != (self.dim(pair),):
            raise InputError(f"{pair} has dimension {self.dim(pair)}, got {c.shape[0] if c.ndim else 0} coefficients")
        return BidualElement(tuple(pair), c.copy())

    def hat_matrix(self, pair, m):
        return self.hat(pair, self.C.hom(*pair).coords(m))

    def zero(self, pair):
        return BidualElement(tuple(pair), np.zeros(self.dim(pair), dtype=complex))

    def functional(self, pair, coeffs):
        return DualFunctional(tuple(pair), np.asarray(coeffs, dtype=complex))

    def dual_basis(self, pair):
        n = self.dim(pair)
        return [DualFunctional(tuple(pair), _unit(n, i)) for i in range(n)]

    # ------------------------------------------------- base compositions
    def compose(self, x, y, z, a, b):
        """b∘a ∈ (x,z) in coordinates, a ∈ (x,y), b ∈ (y,z)."""
        return np.einsum("i,j,ijk->k", a, b, self._binary_tensor(x, y, z))

    def _binary_tensor(self, x, y, z):
        key = (x, y, z)
        if key not in self._bin:
            A, B, T = self.C.hom(x, y), self.C.hom(y, z), self.C.hom(x, z)
            if A.dim and B.dim and T.dim:
                prods = np.einsum("jab,ibc->ijac", B.basis, A.basis)
                self._bin[key] = T.coords(prods)
            else:
                self._bin[key] = np.zeros((A.dim, B.dim, T.dim), dtype=complex)
        return self._bin[key]

    def triple(self, x, y, z, w, a, b, c):
        """[c b a] ∈ (x,w) in coordinates: a ∈ (x,y), b ∈ (z,y), c ∈ (z,w)."""
        return np.einsum("i,j,k,ijkl->l", a, np.conj(b), c, self._ternary_tensor(x, y, z, w))

    def _ternary_tensor(self, x, y, z, w):
        key = (x, y, z, w)
        if key not in self._ter:
            C = self.C
            A, B, Cc, T = C.hom(x, y), C.hom(z, y), C.hom(z, w), C.hom(x, w)
            if A.dim and B.dim and Cc.dim and T.dim:
                prods = np.einsum("kab,jcb,icd->ijkad", Cc.basis, np.conj(B.basis), A.basis, optimize=True)
                prods = C.sign(x, w)[:, None] * prods
                self._ter[key] = T.coords(prods)
            else:
                self._ter[key] = np.zeros((A.dim, B.dim, Cc.dim, T.dim), dtype=complex)
        return self._ter[key]

    # ---------------------------------------------------- binary chain
    def left_dual(self, b_pair, b, f):
        """bf ∈ (X,Y)′ with ⟨bf, a⟩ = ⟨f, ba⟩, for b ∈ (Y,Z), f ∈ (X,Z)′."""
        (y, z), (x, z2) = b_pair, f.hom_pair
        _same((z,), (z2,))
        n = self.dim((x, y))
        vals = [f.pair(self.compose(x, y, z, _unit(n, i), b)) for i in range(n)]
        return DualFunctional((x, y), np.array(vals, dtype=complex))

    def dual_bidual(self, f, F):
        """fF ∈ (Y,Z)′ with ⟨fF, b⟩ = ⟨F, bf⟩, for F ∈ (X,Y)″, f ∈ (X,Z)′."""
        (x, y), (x2, z) = F.hom_pair, f.hom_pair
        _same((x,), (x2,))
        n = self.dim((y, z))
        vals = [F.pair(self.left_dual((y, z), _unit(n, j), f)) for j in range(n)]
        return DualFunctional((y, z), np.array(vals, dtype=complex))

    def arens_binary(self, F, G):
        """G∘F ∈ (X,Z)″ with ⟨G∘F, f⟩ = ⟨G, fF⟩."""
        (x, y), (y2, z) = F.hom_pair, G.hom_pair
        if y != y2:
            raise InputError(f"cannot compose {F.hom_pair}″ with {G.hom_pair}″")
        vals = [G.pair(self.dual_bidual(f, F)) for f in self.dual_basis((x, z))]
        return BidualElement((x, z), np.array(vals, dtype=complex))

    # --------------------------------------------------- ternary chain
    def mu0(self, f, a_pair, a, b_pair, b):
        """μ₀(f,a,b) ∈ (Z,W)′: ⟨μ₀(f,a,b), c⟩ = ⟨f, [cba]⟩."""
        (x, w), (xa, y), (z, yb) = f.hom_pair, a_pair, b_pair
        if xa != x or yb != y:
            raise InputError("μ₀ needs f ∈ (X,W)′, a ∈ (X,Y), b ∈ (Z,Y)")
        n = self.dim((z, w))
        vals = [f.pair(self.triple(x, y, z, w, a, b, _unit(n, k))) for k in range(n)]
        return DualFunctional((z, w), np.array(vals, dtype=complex))

    def mu1(self, F, f, a_pair, a):
        """μ₁(F,f,a) ∈ (Z,Y)′: ⟨μ₁(F,f,a), b⟩ = conj⟨F, μ₀(f,a,b)⟩."""
        (z, w), (x, w2), (xa, y) = F.hom_pair, f.hom_pair, a_pair
        if w != w2 or xa != x:
            raise InputError("μ₁ needs F ∈ (Z,W)″, f ∈ (X,W)′, a ∈ (X,Y)")
        n = self.dim((z, y))
        vals = [np.conj(F.pair(self.mu0(f, a_pair, a, (z, y), _unit(n, j)))) for j in range(n)]
        return DualFunctional((z, y), np.array(vals, dtype=complex))

    def mu2(self, F, G, f):
        """μ₂(F,G,f) ∈ (X,Y)′: ⟨μ₂(F,G,f), a⟩ = conj⟨F, μ₁(G,f,a)⟩."""
        (z, y), (z2, w), (x, w2) = F.hom_pair, G.hom_pair, f.hom_pair
        if z != z2 or w != w2:
            raise InputError("μ₂ needs F ∈ (Z,Y)″, G ∈ (Z,W)″, f ∈ (X,W)′")
        n = self.dim((x, y))
        vals = [np.conj(F.pair(self.mu1(G, f, (x, y), _unit(n, i)))) for i in range(n)]
        return DualFunctional((x, y), np.array(vals, dtype=complex))

    def arens_ternary(self, F, G, H):
        """[HGF] ∈ (X,W)″ with ⟨[HGF], f⟩ = ⟨F, μ₂(G,H,f)⟩."""
        (x, y), (z, y2), (z2, w) = F.hom_pair, G.hom_pair, H.hom_pair
        if y != y2 or z != z2:
            raise InputError(f"object pattern violation: F∈{F.hom_pair}″, G∈{G.hom_pair}″, H∈{H.hom_pair}″")
        vals = [F.pair(self.mu2(G, H, f)) for f in self.dual_basis((x, w))]
        return BidualElement((x, w), np.array(vals, dtype=complex))

    # ------------------------------------------------------- involution
    def _star_matrix(self, x, y):
        """S[:, i] = coords in (Y,X) of e_i* for the basis e_i of (X,Y)."""
        A, B = self.C.hom(x, y), self.C.hom(y, x)
        if A.dim == 0:
            return np.zeros((B.dim, 0), dtype=complex)
        if B.dim == 0:
            raise InputError(f"hom ({y},{x}) is zero, so ({x},{y}) has no adjoints")
        return B.coords(np.conj(np.transpose(A.basis, (0, 2, 1)))).T

    def dual_star(self, f):
        """f ∈ (Y,X)′ ↦ f* ∈ (X,Y)′ with ⟨f*, a⟩ = conj⟨f, a*⟩."""
        y, x = f.hom_pair
        S = self._star_matrix(x, y)
        n = self.dim((x, y))
        vals = [np.conj(f.pair(S @ _unit(n, i))) for i in range(n)]
        return DualFunctional((x, y), np.array(vals, dtype=complex))

    def bidual_involution(self, F):
        """F ∈ (X,Y)″ ↦ F* ∈ (Y,X)″ with ⟨F*, f⟩ = conj⟨F, f*⟩."""
        x, y = F.hom_pair
        vals = [np.conj(F.pair(self.dual_star(f))) for f in self.dual_basis((y, x))]
        return BidualElement((y, x), np.array(vals, dtype=complex))

    # ---------------------------------------------------- Sherman–Takeda
    def sherman_takeda(self, F, G, sigma=None):
        """G•F = τ⁻¹(τ(G)τ(F)), where τ extends a faithful representation σ."""
        (x, y), (y2, z) = F.hom_pair, G.hom_pair
        if y != y2:
            raise InputError(f"cannot compose {F.hom_pair}″ with {G.hom_pair}″")
        sigma = self.representation() if sigma is None else sigma
        _check_faithful(sigma, self.C)
        tau_f = _tau(sigma, F)
        tau_g = _tau(sigma, G)
        return _tau_inverse(sigma, (x, z), tau_g @ tau_f, self.dim((x, z)))

    def representation(self):
        if getattr(self, "_sigma", None) is None:
            self._sigma = faithful_representation(self.C)
        return self._sigma


def _tau(sigma, F):
    mats = sigma.get(tuple(F.hom_pair))
    if mats is None or len(F.coeffs) == 0:
        n = next(iter(sigma.values())).shape[1] if sigma else 0
        return np.zeros((n, n), dtype=complex)
    return np.tensordot(F.coeffs, mats, axes=(0, 0))


def _tau_inverse(sigma, pair, m, dim):
    if dim == 0:
        return BidualElement(pair, np.zeros(0, dtype=complex))
    mats = sigma[pair]
    a = mats.reshape(dim, -1).T
    coeffs, *_ = np.linalg.lstsq(a, m.ravel(), rcond=None)
    return BidualElement(pair, coeffs)


def _check_faithful(sigma, C):
    for pair in C.hom_pairs:
        mats = sigma.get(pair)
        d = C.hom(*pair).dim
        if mats is None or np.linalg.matrix_rank(mats.reshape(d, -1), tol=1e-9) < d:
            raise InputError(f"representation is not faithful on hom {pair}")


# ------------------------------------------------------------ module API


def arens_binary(C, F, G):
    return Bidual(C).arens_binary(F, G)


def arens_ternary(C, F, G, H):
    return Bidual(C).arens_ternary(F, G, H)


def bidual_involution(C, F):
    if C.flavor != CSTAR:
        raise InputError("the bidual involution needs a C*-category")
    return Bidual(C).bidual_involution(F)


def sherman_takeda(C, F, G, sigma=None):
    if C.flavor != CSTAR:
        raise InputError("the Sherman–Takeda product needs a C*-category")
    return Bidual(C).sherman_takeda(F, G, sigma)


# --------------------------------------------------------------- reports


def _rand(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def _diff(A, B):
    _same(A.hom_pair, B.hom_pair)
    if A.coeffs.size == 0:
        return 0.0
    return float(np.abs(A.coeffs - B.coeffs).max())


def _rel(A, B, *factors):
    scale = max(1.0, float(np.prod([max(np.abs(f.coeffs).max(initial=0.0), 1e-300) for f in factors])))
    return _diff(A, B) / scale


def regularity_report(C, samples=100, seed=0):
    """Arens suite: embedding compatibility, associativity, collapse, involution, S-T equality."""
    bd = Bidual(C)
    rng = np.random.default_rng(seed)
    names = C.names
    rep = Report(environment={"seed": seed, "samples": samples, "label": "finite-dimensional collapse"})
    nz = lambda p: C.hom(*p).dim > 0  # noqa: E731

    # embedded elements: binary (C* flavor only: a linear composition) and ternary
    bin_pats = [(x, y, z) for x, y, z in itertools.product(names, repeat=3) if nz((x, y)) and nz((y, z))]
    ter_pats = [(x, y, z, w) for x, y, z, w in itertools.product(names, repeat=4)
                if nz((x, y)) and nz((z, y)) and nz((z, w))]
    if C.flavor == CSTAR:
        worst = 0.0
        for x, y, z in bin_pats:
            for i, j in itertools.product(range(bd.dim((x, y))), range(bd.dim((y, z)))):
                a, b = _unit(bd.dim((x, y)), i), _unit(bd.dim((y, z)), j)
                lhs = bd.arens_binary(bd.hat((x, y), a), bd.hat((y, z), b))
                worst = max(worst, _diff(lhs, bd.hat((x, z), bd.compose(x, y, z, a, b))))
        rep.add(check("arens_binary_embedding", ANCHOR_EMBED, worst, 1e-12))
    worst = 0.0
    for x, y, z, w in ter_pats:
        dims = (bd.dim((x, y)), bd.dim((z, y)), bd.dim((z, w)))
        for i, j, k in itertools.product(*(range(d) for d in dims)):
            a, b, c = _unit(dims[0], i), _unit(dims[1], j), _unit(dims[2], k)
            lhs = bd.arens_ternary(bd.hat((x, y), a), bd.hat((z, y), b), bd.hat((z, w), c))
            worst = max(worst, _diff(lhs, bd.hat((x, w), bd.triple(x, y, z, w, a, b, c))))
    rep.add(check("arens_ternary_embedding", ANCHOR_TERNARY_EMBED, worst, 1e-12))

    rand = lambda p: BidualElement(p, _rand(rng, bd.dim(p)))  # noqa: E731

    if C.flavor == CSTAR:
        pats = [(x, y, z, w) for x, y, z, w in itertools.product(names, repeat=4)
                if nz((x, y)) and nz((y, z)) and nz((z, w))]
        worst = 0.0
        for t in range(samples if pats else 0):
            x, y, z, w = pats[int(rng.integers(len(pats)))]
            F, G, H = rand((x, y)), rand((y, z)), rand((z, w))
            lhs = bd.arens_binary(F, bd.arens_binary(G, H))
            rhs = bd.arens_binary(bd.arens_binary(F, G), H)
            worst = max(worst, _rel(lhs, rhs, F, G, H))
        rep.add(check("arens_binary_associativity", ANCHOR_BINARY_ASSOC, worst, 1e-10, patterns=len(pats)))

    pats5 = [(x, y, z, w, u, v) for x, y, z, w, u, v in itertools.product(names, repeat=6)
             if all(nz(p) for p in ((x, y), (z, y), (z, w), (u, w), (u, v)))]
    w1 = w2 = 0.0
    for t in range(samples if pats5 else 0):
        x, y, z, w, u, v = pats5[int(rng.integers(len(pats5)))]
        F, G, H, K, L = rand((x, y)), rand((z, y)), rand((z, w)), rand((u, w)), rand((u, v))
        inner = bd.arens_ternary(F, G, H)
        lhs = bd.arens_ternary(inner, K, L)
        r1 = bd.arens_ternary(F, G, bd.arens_ternary(H, K, L))
        r2 = bd.arens_ternary(F, bd.arens_ternary(K, H, G), L)
        w1 = max(w1, _rel(lhs, r1, F, G, H, K, L))
        w2 = max(w2, _rel(lhs, r2, F, G, H, K, L))
    rep.add(check("arens_ternary_associativity_outer", ANCHOR_TERNARY_ASSOC_1, w1, 1e-9, patterns=len(pats5)))
    rep.add(check("arens_ternary_associativity_middle", ANCHOR_TERNARY_ASSOC_2, w2, 1e-9, patterns=len(pats5)))

    # collapse: the chain equals the canonical trilinear extension; middle slot conjugate-linear
    collapse = middle = 0.0
    for t in range(min(samples, 20) if ter_pats else 0):
        x, y, z, w = ter_pats[int(rng.integers(len(ter_pats)))]
        F, G, H = rand((x, y)), rand((z, y)), rand((z, w))
        arens = bd.arens_ternary(F, G, H)
        canon = BidualElement((x, w), bd.triple(x, y, z, w, F.coeffs, G.coeffs, H.coeffs))
        collapse = max(collapse, _rel(arens, canon, F, G, H))
        turned = bd.arens_ternary(F, 1j * G, H)
        middle = max(middle, _diff(turned, -1j * arens) / max(1.0, np.abs(arens.coeffs).max(initial=0.0)))
    rep.add(check("arens_canonical_extension", ANCHOR_COLLAPSE, collapse, 1e-10))
    rep.add(check("arens_middle_conjugate_linear", ANCHOR_MIDDLE, middle, 1e-12))

    if C.flavor == CSTAR:
        anti = twice = st = 0.0
        inv_pats = [(x, y, z) for x, y, z in bin_pats if nz((y, x)) and nz((z, y)) and nz((z, x))]
        for t in range(samples if inv_pats else 0):
            x, y, z = inv_pats[int(rng.integers(len(inv_pats)))]
            F, G = rand((x, y)), rand((y, z))
            lhs = bd.bidual_involution(bd.arens_binary(F, G))
            rhs = bd.arens_binary(bd.bidual_involution(G), bd.bidual_involution(F))
            anti = max(anti, _rel(lhs, rhs, F, G))
            twice = max(twice, _diff(bd.bidual_involution(bd.bidual_involution(F)), F))
        rep.add(check("arens_involution_anti_multiplicative", ANCHOR_ANTI, anti, 1e-12))
        rep.add(check("arens_involution_twice", ANCHOR_INVOLUTION, twice, 1e-12))
        if C.hom_pairs:
            sigma = bd.representation()
            for t in range(samples if bin_pats else 0):
                x, y, z = bin_pats[int(rng.integers(len(bin_pats)))]
                F, G = rand((x, y)), rand((y, z))
                st = max(st, _rel(bd.arens_binary(F, G), bd.sherman_takeda(F, G, sigma), F, G))
        rep.add(check("arens_equals_sherman_takeda", ANCHOR_ST_EQUAL, st, 1e-10))
    return rep
