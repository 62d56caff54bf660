"""Finite C*- and T*-categories with matrix hom-spaces.

A hom-space (X,Y) is a MatrixSubspace of d(Y)×d(X) matrices.  The ternary
composition of f ∈ (X,Y), g ∈ (Z,Y), h ∈ (Z,W) is

    [h g f] = S(X,W) · h g* f ∈ (X,W),

where the sector sign S(X,W) is a ±1 vector of length d(W) acting on rows
(a global scalar per pair is the constant vector).  Evaluation is batched
per object pattern, so axiom suites cover all composable basis tuples.
"""
import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import InputError, StructureError
from .linalg import DEFAULT_TOL, MatrixSubspace
from .report import Report, check, skipped
from .ternary import ConcreteTRO, twist
from . import zettl
from .embedding import EmbeddingAlgebra

CSTAR, TSTAR = "cstar", "tstar"

ANCHOR_C_CLOSURE = "g∘f ∈ (X,Z) for f ∈ (X,Y), g ∈ (Y,Z)"
ANCHOR_C_INVOLUTION = "h* ∈ (Y,X) for h ∈ (X,Y)"
ANCHOR_C_ANTI = "(g∘f)* = f*∘g*"
ANCHOR_C_SUBMULT = "‖g∘f‖ ≤ ‖f‖‖g‖"
ANCHOR_C_IDENTITY = "‖h‖²=‖h*h‖ for h∈(X,Y)"
ANCHOR_C_POSITIVE = "h*h=g*g for some g∈Hom(X,X)"
ANCHOR_C_UNIT = "1_X ∈ (X,X)"
ANCHOR_T_CLOSURE = "[hgf] = h∘g*∘f ∈ (X,W)"
ANCHOR_T_ASSOC = "(l k* h) g* f = l (g h* k)* f"
ANCHOR_T_SUBMULT = "‖[gh*f]‖ ≤ ‖h‖‖f‖‖g‖"
ANCHOR_T_CUBE = "‖hh*h‖=‖h‖³, for h∈(X,Y)"
ANCHOR_SIGNS = "sign(X,W) = sign(X,Y)·sign(Z,Y)·sign(Z,W)"
ANCHOR_FUNCTOR = "F(h ∘ g* ∘ f) = F(h) ∘ F(g)* ∘ F(f)"
ANCHOR_IDEAL = "(Z,W)_J ∘ (Z,Y) ∘ (X,Y) ⊂ (X,W)_J"
ANCHOR_LINKING = "Hom(X,X)=𝒜(X,X)"
ANCHOR_FAITHFUL = "ker(C/K → ℋ₊⊕ℋ₋) = 0"
ANCHOR_PM = "(X,Y)_{C±}:=(X,Y)±"
ANCHOR_GN = "H=(G₊∘F₊)⊕(G₋∘F₋)"
ANCHOR_DIRECT_SUM = "Hom(X,Y)_{C⊕D}=Hom(X,Y)_C ⊕ Hom(X,Y)_D"


def _rand_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


class FiniteStarCategory:
    def __init__(self, objects, homs=None, flavor=TSTAR, signs=None, unital=False, tol=DEFAULT_TOL):
        if flavor not in (CSTAR, TSTAR):
            raise InputError(f"flavor must be 'cstar' or 'tstar', got {flavor!r}")
        self.objects = {str(k): int(v) for k, v in dict(objects).items()}
        if any(d < 0 for d in self.objects.values()):
            raise InputError("object dimensions must be non-negative")
        self.names = list(self.objects)
        self.flavor = flavor
        self.unital = bool(unital)
        self.tol = tol
        self._homs = {}
        for (x, y), space in (homs or {}).items():
            if x not in self.objects or y not in self.objects:
                raise InputError(f"hom ({x},{y}) names an unknown object")
            if space.shape != (self.objects[y], self.objects[x]):
                raise InputError(f"hom ({x},{y}) must hold {self.objects[y]}×{self.objects[x]} matrices")
            if space.dim:
                self._homs[(x, y)] = space
        self._signs = {}
        for (x, w), s in (signs or {}).items():
            if x not in self.objects or w not in self.objects:
                raise InputError(f"sign ({x},{w}) names an unknown object")
            vec = np.broadcast_to(np.asarray(s, dtype=float), (self.objects[w],)).copy()
            if not np.all(np.isin(vec, (1.0, -1.0))):
                raise InputError("sector signs must be ±1")
            self._signs[(x, w)] = vec
        if flavor == CSTAR and any(np.any(v != 1) for v in self._signs.values()):
            raise InputError("C*-categories carry no sector signs")

    # ------------------------------------------------------------ access
    def hom(self, x, y):
        return self._homs[(x, y)] if (x, y) in self._homs else linalg.zero_subspace(self.objects[y], self.objects[x], self.tol)

    def sign(self, x, w):
        v = self._signs.get((x, w))
        return np.ones(self.objects[w]) if v is None else v

    @property
    def hom_pairs(self):
        return [(x, y) for x in self.names for y in self.names if self.hom(x, y).dim]

    @property
    def signs(self):
        return dict(self._signs)

    def ternary(self, h, g, f, x, w):
        """[h g f] for matrices with f ∈ (x,·), h ∈ (·,w)."""
        return self.sign(x, w)[:, None] * (h @ np.conj(g).T @ f)

    @property
    def offsets(self):
        out, o = {}, 0
        for name in self.names:
            out[name] = o
            o += self.objects[name]
        return out

    @property
    def total_dim(self):
        return sum(self.objects.values())

    def embed(self, x, y, m):
        """Place a d(y)×d(x) matrix in its block of the total space."""
        n = self.total_dim
        off = self.offsets
        z = np.zeros(np.shape(m)[:-2] + (n, n), dtype=complex)
        z[..., off[y]:off[y] + self.objects[y], off[x]:off[x] + self.objects[x]] = m
        return z

    def block(self, x, y, big):
        off = self.offsets
        return big[..., off[y]:off[y] + self.objects[y], off[x]:off[x] + self.objects[x]]

    def total_space(self):
        n = self.total_dim
        basis = [self.embed(x, y, b) for (x, y) in self.hom_pairs for b in self.hom(x, y).basis]
        return MatrixSubspace(n, n, np.array(basis).reshape(-1, n, n), self.tol)

    def total_labels(self):
        return [((x, y), i) for (x, y) in self.hom_pairs for i in range(self.hom(x, y).dim)]

    def sign_mask(self):
        n = self.total_dim
        mask = np.ones((n, n))
        for x in self.names:
            for w in self.names:
                self.block(x, w, mask)[...] = self.sign(x, w)[:, None]
        return mask

    def total_tro(self):
        """The whole category as one concrete system (blocks never mix)."""
        return ConcreteTRO(self.total_space(), self.sign_mask())

    def hom_tro(self, x, y):
        """The hom-space (x,y) as a triple system under its own composition."""
        return ConcreteTRO(self.hom(x, y), self.sign(x, y))

    def with_homs(self, homs, signs=None, flavor=None):
        return FiniteStarCategory(self.objects, homs, flavor or self.flavor,
                                  self._signs if signs is None else signs, self.unital, self.tol)

    def __repr__(self):
        dims = {p: self.hom(*p).dim for p in self.hom_pairs}
        return f"FiniteStarCategory({self.flavor}, objects={self.objects}, homs={dims})"


def split_blocks(cat_objects, space, tol=DEFAULT_TOL):
    """Hom-spaces of a block-supported subspace of the total space."""
    names = list(cat_objects)
    proto = FiniteStarCategory(cat_objects)
    homs = {}
    for x in names:
        for y in names:
            mats = proto.block(x, y, space.basis) if space.dim else np.zeros((0, cat_objects[y], cat_objects[x]))
            keep = [m for m in mats if np.linalg.norm(m) > tol]
            if keep:
                homs[(x, y)] = linalg.span(keep, tol=tol)
    return homs


# ---------------------------------------------------------------- T* axioms


def _patterns(cat, k):
    return itertools.product(cat.names, repeat=k)


def check_tstar_axioms(C, samples=20, seed=0, tol=1e-9):
    rep = Report(environment={"seed": seed, "samples": samples})
    homs = {p: C.hom(*p).basis for p in itertools.product(C.names, repeat=2)}
    # closure and associativity over object patterns
    worst_close, wit_close = 0.0, []
    for x, y, z, w in _patterns(C, 4):
        f, g, h = homs[(x, y)], homs[(z, y)], homs[(z, w)]
        if not (len(f) and len(g) and len(h)):
            continue
        prod = C.sign(x, w)[:, None] * np.einsum("hab,gcb,fcd->hgfad", h, np.conj(g), f, optimize=True)
        target = C.hom(x, w)
        flat = prod.reshape(-1, *target.shape)
        if target.dim:
            res = np.linalg.norm((flat - target.element(target.coords(flat))).reshape(len(flat), -1), axis=1)
        else:
            res = np.linalg.norm(flat.reshape(len(flat), -1), axis=1)
        r = float(res.max())
        if r > worst_close:
            worst_close, wit_close = r, [x, y, z, w]
    rep.add(check("tstar_closure", ANCHOR_T_CLOSURE, worst_close, tol * 10,
                  witnesses=[wit_close] if worst_close > tol * 10 else []))
    worst_assoc, wit_assoc = 0.0, []
    for x, y, z, w, u, v in _patterns(C, 6):
        f, g, h, k, l = homs[(x, y)], homs[(z, y)], homs[(z, w)], homs[(u, w)], homs[(u, v)]
        if not (len(f) and len(g) and len(h) and len(k) and len(l)):
            continue
        s_xw, s_xv, s_zv, s_uy = C.sign(x, w), C.sign(x, v), C.sign(z, v), C.sign(u, y)
        hgf = s_xw[:, None] * np.einsum("hab,gcb,fcd->hgfad", h, np.conj(g), f, optimize=True)
        a = s_xv[:, None] * np.einsum("lab,kcb,hgfcd->lkhgfad", l, np.conj(k), hgf, optimize=True)
        lkh = s_zv[:, None] * np.einsum("lab,kcb,hcd->lkhad", l, np.conj(k), h, optimize=True)
        b = s_xv[:, None] * np.einsum("lkhab,gcb,fcd->lkhgfad", lkh, np.conj(g), f, optimize=True)
        ghk = s_uy[:, None] * np.einsum("gab,hcb,kcd->ghkad", g, np.conj(h), k, optimize=True)
        c = s_xv[:, None] * np.einsum("lab,ghkcb,fcd->lkhgfad", l, np.conj(ghk), f, optimize=True)
        r = float(max(np.abs(a - b).max(), np.abs(a - c).max()))
        if r > worst_assoc:
            worst_assoc, wit_assoc = r, [x, y, z, w, u, v]
    rep.add(check("tstar_associativity", ANCHOR_T_ASSOC, worst_assoc, tol,
                  witnesses=[wit_assoc] if worst_assoc > tol else []))
    rep.add(_sign_consistency(C, homs))
    rng = np.random.default_rng(seed)
    worst_le = worst_cube = 0.0
    for x, y, z, w in _patterns(C, 4):
        F, G, H = C.hom(x, y), C.hom(z, y), C.hom(z, w)
        if not (F.dim and G.dim and H.dim):
            continue
        for _ in range(samples):
            f = F.element(_rand_complex(rng, F.dim))
            g = G.element(_rand_complex(rng, G.dim))
            h = H.element(_rand_complex(rng, H.dim))
            lhs = linalg.operator_norm(C.ternary(h, g, f, x, w))
            bound = linalg.operator_norm(f) * linalg.operator_norm(g) * linalg.operator_norm(h)
            worst_le = max(worst_le, (lhs - bound) / max(bound, 1e-300))
    for x, y in C.hom_pairs:
        H = C.hom(x, y)
        for _ in range(samples):
            h = H.element(_rand_complex(rng, H.dim))
            nh = linalg.operator_norm(h)
            cube = linalg.operator_norm(C.ternary(h, h, h, x, y))
            worst_cube = max(worst_cube, abs(cube - nh**3) / max(nh**3, 1e-300))
    rep.add(check("tstar_submultiplicative", ANCHOR_T_SUBMULT, max(worst_le, 0.0), tol))
    rep.add(check("tstar_cubic_norm", ANCHOR_T_CUBE, worst_cube, 1e-8))
    return rep


def _sign_consistency(C, homs):
    """For pair-constant signs: s(X,W) = s(X,Y)s(Z,Y)s(Z,W) wherever [hgf] ≠ 0."""
    def scalar(x, y):
        v = C.sign(x, y)
        return v[0] if v.size and np.all(v == v[0]) else None

    bad, checked = [], 0
    for x, y, z, w in _patterns(C, 4):
        f, g, h = homs[(x, y)], homs[(z, y)], homs[(z, w)]
        if not (len(f) and len(g) and len(h)):
            continue
        s = [scalar(x, w), scalar(x, y), scalar(z, y), scalar(z, w)]
        if any(v is None for v in s):
            continue
        prod = np.einsum("hab,gcb,fcd->hgfad", h, np.conj(g), f, optimize=True)
        if np.abs(prod).max() <= C.tol:
            continue
        checked += 1
        if s[0] != s[1] * s[2] * s[3]:
            bad.append([x, y, z, w])
    return check("tstar_sign_consistency", ANCHOR_SIGNS, float(len(bad)), 0.0,
                 witnesses=bad[:3], patterns_checked=checked)


# ---------------------------------------------------------------- C* axioms


def check_cstar_axioms(C, samples=20, seed=0, tol=1e-9):
    rep = Report(environment={"seed": seed, "samples": samples})
    names = C.names
    worst, wit = 0.0, []
    for x, y, z in _patterns(C, 3):
        F, G = C.hom(x, y), C.hom(y, z)
        if not (F.dim and G.dim):
            continue
        prod = np.einsum("gab,fbc->gfac", G.basis, F.basis).reshape(-1, C.objects[z], C.objects[x])
        target = C.hom(x, z)
        for m in prod:
            r = linalg.residual(target, m) if target.dim else float(np.linalg.norm(m))
            if r > worst:
                worst, wit = r, [x, y, z]
    rep.add(check("cstar_composition_closure", ANCHOR_C_CLOSURE, worst, tol * 10,
                  witnesses=[wit] if worst > tol * 10 else []))
    worst, wit = 0.0, []
    for x, y in C.hom_pairs:
        back = C.hom(y, x)
        for b in C.hom(x, y).basis:
            m = np.conj(b).T
            r = linalg.residual(back, m) if back.dim else float(np.linalg.norm(m))
            if r > worst:
                worst, wit = r, [x, y]
    rep.add(check("cstar_involution_closure", ANCHOR_C_INVOLUTION, worst, tol * 10,
                  witnesses=[wit] if worst > tol * 10 else []))
    rng = np.random.default_rng(seed)
    anti = sub = ident = 0.0
    for x, y, z in _patterns(C, 3):
        F, G = C.hom(x, y), C.hom(y, z)
        if not (F.dim and G.dim):
            continue
        for _ in range(samples):
            f = F.element(_rand_complex(rng, F.dim))
            g = G.element(_rand_complex(rng, G.dim))
            gf = g @ f
            anti = max(anti, float(np.abs(np.conj(gf).T - np.conj(f).T @ np.conj(g).T).max()))
            bound = linalg.operator_norm(f) * linalg.operator_norm(g)
            sub = max(sub, (linalg.operator_norm(gf) - bound) / max(bound, 1e-300))
    pos_mem = pos_psd = pos_sqrt = 0.0
    for x, y in C.hom_pairs:
        H = C.hom(x, y)
        diag = C.hom(x, x)
        for _ in range(samples):
            h = H.element(_rand_complex(rng, H.dim))
            hh = np.conj(h).T @ h
            nh = linalg.operator_norm(h)
            ident = max(ident, abs(linalg.operator_norm(hh) - nh**2) / max(nh**2, 1e-300))
            scale = max(1.0, linalg.operator_norm(hh))
            pos_mem = max(pos_mem, (linalg.residual(diag, hh) if diag.dim else float(np.linalg.norm(hh))) / scale)
            w, v = np.linalg.eigh(0.5 * (hh + np.conj(hh).T))
            pos_psd = max(pos_psd, max(0.0, -float(w.min())) / scale)
            root = (v * np.sqrt(np.clip(w, 0, None))) @ np.conj(v).T
            pos_sqrt = max(pos_sqrt, (linalg.residual(diag, root) if diag.dim else float(np.linalg.norm(root))) / max(1.0, linalg.operator_norm(root)))
    rep.add(check("cstar_anti_multiplicative", ANCHOR_C_ANTI, anti, tol))
    rep.add(check("cstar_submultiplicative", ANCHOR_C_SUBMULT, max(sub, 0.0), tol))
    rep.add(check("cstar_identity", ANCHOR_C_IDENTITY, ident, 1e-8))
    rep.add(check("cstar_positivity", ANCHOR_C_POSITIVE, max(pos_mem, pos_psd, pos_sqrt), 1e-7,
                  membership=pos_mem, psd=pos_psd, sqrt_membership=pos_sqrt))
    if C.unital:
        worst = 0.0
        for x in names:
            worst = max(worst, linalg.residual(C.hom(x, x), np.eye(C.objects[x])))
        rep.add(check("cstar_unit", ANCHOR_C_UNIT, worst, tol * 10))
    else:
        rep.add(skipped("cstar_unit", ANCHOR_C_UNIT, "category not declared unital"))
    return rep


def check_axioms(C, **kw):
    return check_cstar_axioms(C, **kw) if C.flavor == CSTAR else check_tstar_axioms(C, **kw)


# ---------------------------------------------------------------- linking


@dataclass
class LinkingData:
    """Per-object realization of the grading-twisted 𝒜(X,X)."""

    grading: np.ndarray
    embedding: EmbeddingAlgebra
    rho: np.ndarray  # ρ(e_a) for the basis of 𝒜
    corner: np.ndarray  # F(e_i) = ρ(corner e_i) for the basis of (X,X)


@dataclass
class TernaryFunctor:
    source: "FiniteStarCategory"
    target: "FiniteStarCategory"
    hom_maps: dict  # (x,y) -> array (dim source hom, ...) of target matrices per source basis vector
    report: Report = field(default_factory=Report)
    grading: dict = field(default_factory=dict)

    def __call__(self, x, y, coeffs):
        mats = self.hom_maps.get((x, y))
        if mats is None:
            t = self.target
            return np.zeros((t.objects[y], t.objects[x]), dtype=complex)
        return np.tensordot(np.asarray(coeffs, dtype=complex), mats, axes=(0, 0))


def _linking_object(C, x, seed, tol):
    M = C.hom_tro(x, x)
    g = zettl.grading_operator(M, seed=seed, tol=tol)
    tw = twist(M, g.T)
    E = EmbeddingAlgebra(tw)
    rho, _ = linalg.gns_representation(E.table, E.star_matrix, tol=tol)
    corner = rho[E.slices["f"]]
    return LinkingData(g.T, E, rho, corner)


def linking_category(C, seed=0, tol=None, samples=10):
    """Linking C*-category A_C and the corner functor F: C → A_C.

    Diagonal homs are faithful matrix realizations of the grading-twisted
    𝒜(X,X); off-diagonal homs are zero.  F sends f ∈ (X,X) to its corner
    and every off-diagonal morphism to 0.
    """
    if C.flavor != TSTAR:
        raise InputError("linking_category expects a T*-category")
    tol = C.tol if tol is None else tol
    data, objects, homs = {}, {}, {}
    for x in C.names:
        if C.hom(x, x).dim == 0:
            objects[x] = 0
            continue
        d = _linking_object(C, x, seed, tol)
        data[x] = d
        n = d.rho.shape[1]
        objects[x] = n
        homs[(x, x)] = linalg.span(list(d.rho), tol=tol)
    A = FiniteStarCategory(objects, homs, CSTAR, tol=tol)
    rep = Report(environment={"seed": seed})
    rep.add(check_cstar_axioms(A, samples=samples, seed=seed))
    maps = {(x, x): data[x].corner for x in data}
    F = TernaryFunctor(C, A, maps, grading={x: data[x].grading for x in data})
    rep.add(_check_corner_functor(C, F, data))
    F.report = rep
    return A, F, rep


def _check_corner_functor(C, F, data):
    """Graded functor identity on diagonal triples, plus the cross-object audit."""
    rep = Report()
    worst = 0.0
    for x, d in data.items():
        M = C.hom_tro(x, x)
        c = M.tensor
        cor = d.corner
        tg = np.einsum("mj,mab->jab", d.grading, cor)  # F(T e_j)
        lhs = np.einsum("ijkl,lab->ijkab", c, cor)
        rhs = np.einsum("iab,jcb,kcd->ijkad", cor, np.conj(tg), cor, optimize=True)
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    rep.add(check("functor_diagonal", ANCHOR_FUNCTOR, worst, 1e-8, graded=True))
    # compositions with off-diagonal factors that land on the diagonal
    cross, wit = 0.0, []
    homs = {p: C.hom(*p).basis for p in itertools.product(C.names, repeat=2)}
    for x, y, z in _patterns(C, 3):
        if (x == y == z) or x not in data:
            continue
        f, g, h = homs[(x, y)], homs[(z, y)], homs[(z, x)]
        if not (len(f) and len(g) and len(h)):
            continue
        prod = C.sign(x, x)[:, None] * np.einsum("hab,gcb,fcd->hgfad", h, np.conj(g), f, optimize=True)
        coords = C.hom(x, x).coords(prod.reshape(-1, *C.hom(x, x).shape))
        img = np.tensordot(coords, data[x].corner, axes=(1, 0))
        r = float(np.abs(img).max()) if img.size else 0.0
        if r > cross:
            cross, wit = r, [x, y, z]
    rep.add(check("functor_cross_object", ANCHOR_FUNCTOR, cross, 1e-8,
                  witnesses=[wit] if cross > 1e-8 else [],
                  note="F vanishes off the diagonal, so compositions through other objects must vanish too"))
    return rep


def kernel_ideal_and_quotient(C, seed=0, tol=None, linking=None):
    """K = off-diagonal homs, C/K = diagonal homs, and the induced functor into A_C."""
    tol = C.tol if tol is None else tol
    K = {p: C.hom(*p) for p in C.hom_pairs if p[0] != p[1]}
    quotient = C.with_homs({(x, x): C.hom(x, x) for x in C.names if C.hom(x, x).dim})
    rep = Report(environment={"seed": seed})
    # ideal absorption: products with a K factor must have no diagonal component
    homs = {p: C.hom(*p).basis for p in itertools.product(C.names, repeat=2)}
    worst = {0: (0.0, []), 1: (0.0, []), 2: (0.0, [])}
    for x, y, z in _patterns(C, 3):
        w = x  # only diagonal results can violate absorption
        f, g, h = homs[(x, y)], homs[(z, y)], homs[(z, w)]
        if not (len(f) and len(g) and len(h)):
            continue
        in_k = [(z, w) in K, (z, y) in K, (x, y) in K]
        if not any(in_k):
            continue
        prod = C.sign(x, w)[:, None] * np.einsum("hab,gcb,fcd->hgfad", h, np.conj(g), f, optimize=True)
        r = float(np.abs(prod).max())
        for slot, flag in enumerate(in_k):
            if flag and r > worst[slot][0]:
                worst[slot] = (r, [x, y, z, w])
    for slot, name in enumerate(("outer_left", "middle", "outer_right")):
        r, wit = worst[slot]
        rep.add(check(f"ideal_absorption_{name}", ANCHOR_IDEAL, r, 1e-9,
                      witnesses=[wit] if r > 1e-9 else []))
    if linking is None:
        linking = linking_category(C, seed=seed, tol=tol)
    A, F, _ = linking
    worst_rank = 0
    ranks = {}
    for x in C.names:
        H = C.hom(x, x)
        if H.dim == 0:
            continue
        mats = F.hom_maps[(x, x)]
        rank = int(np.linalg.matrix_rank(mats.reshape(H.dim, -1), tol=1e-9))
        ranks[x] = [rank, H.dim]
        worst_rank = max(worst_rank, H.dim - rank)
    rep.add(check("quotient_functor_injective", ANCHOR_LINKING, float(worst_rank), 0.0, ranks=ranks))
    functor = TernaryFunctor(quotient, A, dict(F.hom_maps), grading=F.grading)
    return K, quotient, functor, rep


# ------------------------------------------------------ ± subcategories


def pm_subcategories(C, seed=0, tol=None):
    """C₊ and C₋ from the Zettl decomposition of every hom-space."""
    if C.flavor != TSTAR:
        raise InputError("pm_subcategories expects a T*-category")
    tol = C.tol if tol is None else tol
    plus, minus = {}, {}
    rep = Report(environment={"seed": seed})
    for x, y in C.hom_pairs:
        H = C.hom(x, y)
        dec = zettl.decompose(C.hom_tro(x, y), seed=seed, tol=tol)
        rep.add(dec.report["decomposition_unique"])
        for space, store in ((dec.grading.plus_space, plus), (dec.grading.minus_space, minus)):
            if space.dim:
                cols = space.basis[:, :, 0]
                store[(x, y)] = linalg.span([H.element(v) for v in cols], tol=tol)
    Cp, Cm = C.with_homs(plus), C.with_homs(minus)
    worst, wit = 0.0, []
    for part, cat in (("plus", Cp), ("minus", Cm)):
        homs = {p: cat.hom(*p).basis for p in itertools.product(C.names, repeat=2)}
        for x, y, z, w in _patterns(C, 4):
            f, g, h = homs[(x, y)], homs[(z, y)], homs[(z, w)]
            if not (len(f) and len(g) and len(h)):
                continue
            prod = C.sign(x, w)[:, None] * np.einsum("hab,gcb,fcd->hgfad", h, np.conj(g), f, optimize=True)
            target = cat.hom(x, w)
            flat = prod.reshape(-1, *target.shape)
            res = max((linalg.residual(target, m) if target.dim else float(np.linalg.norm(m))) for m in flat)
            if res > worst:
                worst, wit = res, [part, x, y, z, w]
    c = rep.add(check("pm_cross_closure", ANCHOR_PM, worst, 1e-8, witnesses=[wit] if worst > 1e-8 else []))
    if not c.passed:
        raise StructureError(f"± parts are not closed across hom-spaces (residual {worst:.3e})", report=rep)
    # direct-sum isomorphism: dimensions add, mixed products vanish
    dim_gap = sum(abs(C.hom(*p).dim - Cp.hom(*p).dim - Cm.hom(*p).dim) for p in C.hom_pairs)
    mixed = 0.0
    for x, y, z, w in _patterns(C, 4):
        for a, b, cc in itertools.product((Cp, Cm), repeat=3):
            if a is b is cc:
                continue
            f, g, h = a.hom(x, y).basis, b.hom(z, y).basis, cc.hom(z, w).basis
            if len(f) and len(g) and len(h):
                mixed = max(mixed, float(np.abs(np.einsum("hab,gcb,fcd->hgfad", h, np.conj(g), f, optimize=True)).max()))
    rep.add(check("pm_direct_sum", ANCHOR_PM, max(float(dim_gap), mixed), 1e-8, dimension_gap=dim_gap, mixed=mixed))
    # positivity suites: T = +1 on every hom of C₊, −1 on every hom of C₋
    for part, cat, want in (("plus", Cp, 1), ("minus", Cm, -1)):
        worst = 0.0
        for x, y in cat.hom_pairs:
            g = zettl.grading_operator(cat.hom_tro(x, y), seed=seed, tol=tol)
            worst = max(worst, float(np.abs(g.T - want * np.eye(len(g.T))).max()))
        rep.add(check(f"pm_{part}_positivity", zettl.ANCHOR_POSITIVE, worst, 1e-8))
    return Cp, Cm, rep


# --------------------------------------------------------- GN functor


def gelfand_naimark_functor(C, seed=0, tol=None):
    """Faithful functor C/K → ℋ₊⊕ℋ₋: H(f) = ρ₊(f₊) ⊕ ρ₋(f₋) on each diagonal hom.

    ρ± are the GNS realizations of the grading-twisted embeddings of the two
    Zettl parts of (X,X).  The target composition is [a b c] = J a b* c with
    J = +1 on the ℋ₊ block and −1 on the ℋ₋ block.
    """
    if C.flavor != TSTAR:
        raise InputError("gelfand_naimark_functor expects a T*-category")
    tol = C.tol if tol is None else tol
    rep = Report(environment={"seed": seed})
    maps, objects, homs, signs = {}, {}, {}, {}
    for x in C.names:
        H = C.hom(x, x)
        if H.dim == 0:
            objects[x] = 0
            continue
        M = C.hom_tro(x, x)
        plus, minus = zettl.realize(M, seed=seed, tol=tol)
        blocks = []
        for part in (plus, minus):
            blocks.append(part.gns_matrices if part.part_dim else np.zeros((H.dim, 0, 0)))
        n_p, n_m = blocks[0].shape[1], blocks[1].shape[1]
        n = n_p + n_m
        mats = np.zeros((H.dim, n, n), dtype=complex)
        mats[:, :n_p, :n_p] = blocks[0]
        mats[:, n_p:, n_p:] = blocks[1]
        maps[(x, x)] = mats
        objects[x] = n
        signs[(x, x)] = np.concatenate([np.ones(n_p), -np.ones(n_m)])
        homs[(x, x)] = linalg.span(list(mats), tol=tol)
    target = FiniteStarCategory(objects, homs, TSTAR, signs, tol=tol)
    worst, ranks, gap = 0.0, {}, 0
    for (x, _), mats in maps.items():
        M = C.hom_tro(x, x)
        J = target.sign(x, x)[:, None]
        lhs = np.einsum("ijkl,lab->ijkab", M.tensor, mats)
        rhs = J * np.einsum("iab,jcb,kcd->ijkad", mats, np.conj(mats), mats, optimize=True)
        worst = max(worst, float(np.abs(lhs - rhs).max()))
        rank = int(np.linalg.matrix_rank(mats.reshape(len(mats), -1), tol=1e-9))
        ranks[x] = [rank, len(mats)]
        gap = max(gap, len(mats) - rank)
    rep.add(check("gn_preserves_composition", ANCHOR_GN, worst, 1e-8))
    rep.add(check("gn_faithful", ANCHOR_FAITHFUL, float(gap), 0.0, ranks=ranks))
    quotient = C.with_homs({(x, x): C.hom(x, x) for x in C.names if C.hom(x, x).dim})
    return TernaryFunctor(quotient, target, maps, rep), rep


# ---------------------------------------------------------- direct sums


def direct_sum(C, D):
    if set(C.objects) != set(D.objects):
        raise InputError("direct sum needs identical object sets")
    if C.flavor != D.flavor:
        raise InputError("direct sum needs matching flavors")
    objects = {x: C.objects[x] + D.objects[x] for x in C.names}
    homs, signs = {}, {}
    for x in C.names:
        for y in C.names:
            a, b = C.hom(x, y), D.hom(x, y)
            ry, rx = C.objects[y], C.objects[x]
            mats = []
            for m in a.basis:
                z = np.zeros((objects[y], objects[x]), dtype=complex)
                z[:ry, :rx] = m
                mats.append(z)
            for m in b.basis:
                z = np.zeros((objects[y], objects[x]), dtype=complex)
                z[ry:, rx:] = m
                mats.append(z)
            if mats:
                homs[(x, y)] = linalg.span(mats, tol=C.tol)
            signs[(x, y)] = np.concatenate([C.sign(x, y), D.sign(x, y)])
    return FiniteStarCategory(objects, homs, C.flavor, signs if C.flavor == TSTAR else None,
                              C.unital and D.unital, min(C.tol, D.tol))


# ------------------------------------------------- faithful representation


@dataclass
class TotalAlgebra:
    space: MatrixSubspace
    labels: list
    table: np.ndarray
    star_matrix: np.ndarray


def total_algebra(C):
    """The *-algebra ⊕ homs inside B(⊕ C^{d(X)}) with its structure constants."""
    space = C.total_space()
    b = space.basis
    k = space.dim
    if k:
        prods = np.einsum("iab,jbc->ijac", b, b)
        table = space.coords(prods)
        star = space.coords(np.conj(np.transpose(b, (0, 2, 1)))).T
    else:
        table = np.zeros((0, 0, 0), dtype=complex)
        star = np.zeros((0, 0), dtype=complex)
    return TotalAlgebra(space, C.total_labels(), table, star)


def faithful_representation(C, tol=None):
    """σ on each hom-space from the trace-form GNS of the total algebra.

    Returns {(x,y): array (dim, N, N)} of representing matrices.
    """
    if C.flavor != CSTAR:
        raise InputError("faithful_representation expects a C*-category")
    tol = C.tol if tol is None else tol
    alg = total_algebra(C)
    rho, _ = linalg.gns_representation(alg.table, alg.star_matrix, tol=tol)
    out = {}
    for (x, y) in C.hom_pairs:
        H = C.hom(x, y)
        emb = C.embed(x, y, H.basis)
        coords = alg.space.coords(emb)
        out[(x, y)] = np.tensordot(coords, rho, axes=(1, 0))
    return out


# ------------------------------------------------------------- generators


def _sector_block_matrix(rng, jy, jx, sector):
    rows = np.flatnonzero(jy == sector)
    cols = np.flatnonzero(jx == sector)
    m = np.zeros((len(jy), len(jx)), dtype=complex)
    if len(rows) == 0 or len(cols) == 0:
        return None
    u = _rand_complex(rng, len(rows))
    v = _rand_complex(rng, len(cols))
    if rng.random() < 0.5:
        block = np.outer(u, np.conj(v))
    else:
        block = _rand_complex(rng, (len(rows), len(cols))) * (rng.random((len(rows), len(cols))) < 0.6)
    if np.abs(block).max() == 0:
        block[0, 0] = 1.0
    m[np.ix_(rows, cols)] = block
    return m


def random_tstar_category(rng, max_objects=3, max_dim=3, max_hom_dim=4, max_generators=4, tries=200):
    """Random T*-category: sector-split objects, closed under signed composition."""
    from .ternary import ternary_closure

    for _ in range(tries):
        k = int(rng.integers(1, max_objects + 1))
        names = [f"X{i}" for i in range(k)]
        grading = {}
        for x in names:
            d = int(rng.integers(1, max_dim + 1))
            dp = int(rng.integers(0, d + 1))
            grading[x] = np.array([1.0] * dp + [-1.0] * (d - dp))
        objects = {x: len(grading[x]) for x in names}
        proto = FiniteStarCategory(objects)
        gens = []
        for i in range(int(rng.integers(1, max_generators + 1))):
            x = names[int(rng.integers(k))]
            y = x if i == 0 or rng.random() < 0.4 else names[int(rng.integers(k))]
            pieces = [_sector_block_matrix(rng, grading[y], grading[x], s) for s in (1.0, -1.0)]
            pieces = [m for m in pieces if m is not None]
            if not pieces:
                continue
            if len(pieces) == 2 and rng.random() < 0.35:
                m = pieces[0] + pieces[1]  # mixed-sector generator
            else:
                m = pieces[int(rng.integers(len(pieces)))]
            gens.append(proto.embed(x, y, m))
        if not gens:
            continue
        row_sign = np.concatenate([grading[x] for x in names])
        tro = ternary_closure(gens, sign=row_sign)
        homs = split_blocks(objects, tro.space)
        if any(h.dim > max_hom_dim for h in homs.values()):
            continue
        signs = {(x, w): grading[w] for x in names for w in names}
        return FiniteStarCategory(objects, homs, TSTAR, signs)
    raise RuntimeError("could not draw a random T*-category within the size limits")


def random_cstar_category(rng, max_objects=3, max_dim=2, max_hom_dim=4, max_generators=3, tries=100):
    """Random C*-category: closed under composition and adjoint."""
    from .ternary import _algebra_closure

    for _ in range(tries):
        k = int(rng.integers(1, max_objects + 1))
        names = [f"X{i}" for i in range(k)]
        objects = {x: int(rng.integers(1, max_dim + 1)) for x in names}
        proto = FiniteStarCategory(objects, flavor=CSTAR)
        gens = []
        for _ in range(int(rng.integers(1, max_generators + 1))):
            x, y = names[int(rng.integers(k))], names[int(rng.integers(k))]
            m = _rand_complex(rng, (objects[y], objects[x]))
            if rng.random() < 0.5:
                m = np.outer(m[:, 0], np.conj(_rand_complex(rng, objects[x])))
            gens.append(proto.embed(x, y, m))
        space = _algebra_closure(gens, proto.total_dim, DEFAULT_TOL)
        homs = split_blocks(objects, space)
        if any(h.dim > max_hom_dim for h in homs.values()):
            continue
        return FiniteStarCategory(objects, homs, CSTAR)
    raise RuntimeError("could not draw a random C*-category within the size limits")
