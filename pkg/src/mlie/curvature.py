"""Curvature of left-invariant pseudo-Riemannian metrics, computed on the
Lie algebra.

Conventions, for a Lie algebra g with bracket [,] and a nondegenerate
symmetric form ⟨,⟩:

* Levi-Civita product u·v, determined by the Koszul identity
  2⟨u·v, w⟩ = ⟨[u,v], w⟩ + ⟨[w,u], v⟩ + ⟨[w,v], u⟩.
* L_u v = u·v (skew-symmetric in ⟨,⟩), R_u v = v·u, ad_u = L_u − R_u.
* Curvature K(u,v)w = L_[u,v] w − [L_u, L_v] w; flat means K ≡ 0.
* Ricci ric(u,v) = −tr(R_u ∘ R_v) + tr(R_{u·v}).
* Structure endomorphisms S_i, defined by [u,v] = Σ_i ⟨S_i u, v⟩ e_i; each
  S_i is ⟨,⟩-skew.
* J_u = Σ_i ⟨u, e_i⟩ S_i, equivalently J_u(v) = ad_v^*(u); ker J = [g,g]^⊥.
* 𝒥₁ = −Σ_{i,j} ⟨e_i,e_j⟩ S_i∘S_j and 𝒥₂ u = −Σ_{i,j} ⟨e_i,u⟩ tr(S_i∘S_j) e_j,
  both ⟨,⟩-self-adjoint with tr 𝒥₁ = tr 𝒥₂.
* Mean vector H with ⟨H, u⟩ = tr(ad_u).
* For nilpotent g the Ricci operator is Ric = −½𝒥₁ + ¼𝒥₂; in general
  ric(u,v) = −½tr(ad_u∘ad_v) − ½tr(ad_u∘ad_v^*) − ¼tr(J_u∘J_v)
             − ½⟨ad_H u, v⟩ − ½⟨ad_H v, u⟩.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from .errors import DegenerateGram, InvalidInput, NotNilpotent
from .liealg import LieAlgebra
from .pseudolin import DEFAULT_TOL, Gram, Signature, orthonormal_basis, signature

#: Default relative tolerance for Einstein/flatness verdicts.
VERDICT_TOL = 1e-8


class Verdict(Enum):
    EINSTEIN = "Einstein"
    RICCI_FLAT = "RicciFlat"
    FLAT = "Flat"
    NOT_EINSTEIN = "NotEinstein"


@dataclass(frozen=True)
class CurvatureReport:
    """Summary verdict for one metric Lie algebra."""

    verdict: Verdict
    ricci_operator: np.ndarray
    ricci_form: np.ndarray
    scalar_curvature: float
    einstein_lambda: Optional[float]
    einstein_residual: float
    flat: bool
    signature: Signature


@dataclass(frozen=True, eq=False)
class MetricLieAlgebra:
    """A Lie algebra together with a nondegenerate ⟨,⟩, caches built eagerly.

    All cached tensors are read-only, so instances are safe to share.
    """

    algebra: LieAlgebra
    gram: Gram

    def __init__(self, algebra: LieAlgebra, gram: Gram, tol: float = DEFAULT_TOL) -> None:
        if not isinstance(gram, Gram):
            gram = Gram(gram)
        if gram.n != algebra.n:
            raise InvalidInput("gram size does not match algebra dimension")
        if not gram.is_nondegenerate(tol):
            raise DegenerateGram("metric gram matrix is degenerate at tolerance")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "_cache", {})
        self._build_caches()

    # -- cached tensors ---------------------------------------------------

    def _build_caches(self) -> None:
        n = self.n
        g = self.gram.mat
        c = self.algebra.c
        cache = self._cache

        cache["gram_inv"] = np.linalg.inv(g)

        # Koszul right-hand side: T[i,j,l] = ⟨[e_i,e_j],e_l⟩ + ⟨[e_l,e_i],e_j⟩
        #                                   + ⟨[e_l,e_j],e_i⟩
        cg = c @ g  # cg[i,j,l] = ⟨[e_i,e_j], e_l⟩
        t = cg + cg.transpose(1, 2, 0) + cg.transpose(2, 1, 0)
        # lc[i,j,:] = e_i · e_j, solving 2 G (e_i·e_j) = T[i,j,:]
        lc = 0.5 * np.linalg.solve(g, t.reshape(n * n, n).T).T.reshape(n, n, n)
        cache["levi_civita"] = lc

        # structure endomorphisms: S_i = -G^{-1} M_i with M_i[j,k] = c[j,k,i]
        m = c.transpose(2, 0, 1)
        s = -np.linalg.solve(g, m.transpose(1, 0, 2).reshape(n, n * n)).reshape(
            n, n, n
        ).transpose(1, 0, 2)
        cache["structure_endos"] = s

        for key in ("gram_inv", "levi_civita", "structure_endos"):
            cache[key].flags.writeable = False

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def gram_inv(self) -> np.ndarray:
        return self._cache["gram_inv"]

    def signature(self, tol: float = DEFAULT_TOL) -> Signature:
        return signature(self.gram, tol)

    def adjoint(self, m) -> np.ndarray:
        """⟨,⟩-adjoint: M* = G^{-1} Mᵀ G."""
        return self.gram_inv @ np.asarray(m, dtype=float).T @ self.gram.mat

    # -- Levi-Civita ------------------------------------------------------

    def levi_civita(self, u, v) -> np.ndarray:
        """The product u·v defined by the Koszul identity."""
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        return np.einsum("ijk,i,j->k", self._cache["levi_civita"], u, v)

    def left_mult(self, u) -> np.ndarray:
        """Matrix of L_u : v ↦ u·v."""
        return np.einsum("ijk,i->kj", self._cache["levi_civita"], np.asarray(u, dtype=float))

    def right_mult(self, u) -> np.ndarray:
        """Matrix of R_u : v ↦ v·u."""
        return np.einsum("jik,i->kj", self._cache["levi_civita"], np.asarray(u, dtype=float))

    def left_mult_skewness_defect(self, u) -> float:
        """Sup-norm of G L_u + L_uᵀ G; zero for the metric product."""
        l = self.left_mult(u)
        return float(np.abs(self.gram.mat @ l + l.T @ self.gram.mat).max())

    def torsion_defect(self) -> float:
        """Sup-norm of e_i·e_j − e_j·e_i − [e_i,e_j] over basis pairs."""
        lc = self._cache["levi_civita"]
        return float(np.abs(lc - lc.transpose(1, 0, 2) - self.algebra.c).max(initial=0.0))

    # -- curvature --------------------------------------------------------

    def curvature_tensor(self) -> np.ndarray:
        """K[i,j,k,:] = K(e_i,e_j)e_k = (L_[e_i,e_j] − [L_i, L_j]) e_k."""
        lc = self._cache["levi_civita"]
        c = self.algebra.c
        l_all = lc.transpose(0, 2, 1)  # l_all[i] = matrix of L_{e_i}
        term_bracket = np.einsum("ijm,mlk->ijkl", c, l_all)
        ll = np.einsum("iab,jbc->ijac", l_all, l_all)
        commutator = ll - ll.transpose(1, 0, 2, 3)
        return term_bracket - commutator.transpose(0, 1, 3, 2)

    def flatness_defect(self) -> Tuple[float, float]:
        """(sup-norm of the curvature tensor, its roundoff scale)."""
        k = self.curvature_tensor()
        lc_max = float(np.abs(self._cache["levi_civita"]).max(initial=0.0))
        scale = max(1.0, lc_max) ** 2
        return float(np.abs(k).max(initial=0.0)), scale

    # -- Ricci, three routes ----------------------------------------------

    def ricci_via_definition(self) -> np.ndarray:
        """ric(e_i,e_j) = −tr(R_i R_j) + tr(R_{e_i·e_j}); symmetric matrix."""
        lc = self._cache["levi_civita"]
        r_all = lc.transpose(1, 2, 0)  # r_all[a] = matrix of R_{e_a}
        term1 = np.einsum("akj,bjk->ab", r_all, r_all)
        r_traces = np.einsum("akk->a", r_all)
        term2 = np.einsum("abm,m->ab", lc, r_traces)
        ric = -term1 + term2
        return (ric + ric.T) / 2.0

    def structure_endos(self) -> np.ndarray:
        """Stack S[i] of the structure endomorphisms."""
        return self._cache["structure_endos"]

    def j_map(self, u) -> np.ndarray:
        """J_u = Σ_i ⟨u, e_i⟩ S_i."""
        w = self.gram.mat @ np.asarray(u, dtype=float)
        return np.einsum("i,iab->ab", w, self._cache["structure_endos"])

    def mean_vector(self) -> np.ndarray:
        """H with ⟨H, u⟩ = tr(ad_u) for all u."""
        traces = np.array([np.trace(self.algebra.ad(e)) for e in np.eye(self.n)])
        return np.linalg.solve(self.gram.mat, traces)

    def j1_j2(self) -> Tuple[np.ndarray, np.ndarray]:
        """The self-adjoint operators 𝒥₁ and 𝒥₂ built from the S_i."""
        s = self._cache["structure_endos"]
        g = self.gram.mat
        j1 = -np.einsum("ij,iab,jbc->ac", g, s, s)
        t = np.einsum("iab,jba->ij", s, s)  # tr(S_i S_j)
        j2 = -t @ g
        return j1, j2

    def ricci_nilpotent(self, tol: float = DEFAULT_TOL) -> np.ndarray:
        """Ricci operator −½𝒥₁ + ¼𝒥₂; only valid on nilpotent algebras."""
        if not self.algebra.is_nilpotent(tol):
            raise NotNilpotent("the 𝒥-form of the Ricci operator needs a nilpotent algebra")
        j1, j2 = self.j1_j2()
        return -0.5 * j1 + 0.25 * j2

    def ricci_general(self) -> np.ndarray:
        """Ricci form from the adjoint/J/mean-vector expression; any algebra."""
        n = self.n
        g = self.gram.mat
        ads = np.array([self.algebra.ad(e) for e in np.eye(n)])
        ad_star = np.array([self.adjoint(a) for a in ads])
        js = np.array([self.j_map(e) for e in np.eye(n)])
        ad_h = self.algebra.ad(self.mean_vector())

        t_adad = np.einsum("iab,jba->ij", ads, ads)
        t_adstar = np.einsum("iab,jba->ij", ads, ad_star)
        t_jj = np.einsum("iab,jba->ij", js, js)
        # ⟨ad_H e_i, e_j⟩ = Σ_k (ad_H)[k,i] G[k,j] = (ad_Hᵀ G)[i,j]
        bh = ad_h.T @ g
        ric = -0.5 * t_adad - 0.5 * t_adstar - 0.25 * t_jj - 0.5 * (bh + bh.T)
        return (ric + ric.T) / 2.0

    def killing_form(self) -> np.ndarray:
        """B(e_i,e_j) = tr(ad_i ∘ ad_j)."""
        ads = np.array([self.algebra.ad(e) for e in np.eye(self.n)])
        return np.einsum("iab,jba->ij", ads, ads)

    # -- trace identity ---------------------------------------------------

    def trace_q_times(self, e) -> Tuple[float, float]:
        """Both sides of the trace identity for Q = −½𝒥₁ + ¼𝒥₂.

        Returns (tr(Q∘E), ¼ Σ_{i,j} ε_i ε_j ⟨E[b_i,b_j] − [Eb_i,b_j] −
        [b_i,Eb_j], [b_i,b_j]⟩) over an internally built pseudo-orthonormal
        basis (b_i) with ⟨b_i,b_i⟩ = ε_i.  The two agree for any E, and both
        vanish when E is a derivation.
        """
        e = np.asarray(getattr(e, "matrix", e), dtype=float)
        j1, j2 = self.j1_j2()
        q = -0.5 * j1 + 0.25 * j2
        lhs = float(np.trace(q @ e))

        b, eps = orthonormal_basis(self.gram)
        # bracket tensor in the orthonormal basis: [b_a, b_b] in b-coordinates
        binv = np.linalg.inv(b)
        cb = np.einsum("ia,jb,ijk,lk->abl", b, b, self.algebra.c, binv, optimize=True)
        eb = binv @ e @ b  # E in b-coordinates
        t1 = np.einsum("lk,abk->abl", eb, cb)  # E[b_a, b_b]
        t2 = np.einsum("ka,kbl->abl", eb, cb)  # [E b_a, b_b]
        t3 = np.einsum("kb,akl->abl", eb, cb)  # [b_a, E b_b]
        inner = np.einsum("abl,l,abl->ab", t1 - t2 - t3, eps, cb)
        rhs = 0.25 * float(np.einsum("a,b,ab->", eps, eps, inner))
        return lhs, rhs

    # -- verdicts ---------------------------------------------------------

    def ricci_operator(self, tol: float = DEFAULT_TOL) -> np.ndarray:
        """Ric = G^{-1}·ric, via the 𝒥-route when nilpotent (cross-checked
        against the definitional route), the definitional route otherwise."""
        ric_def = self.gram_inv @ self.ricci_via_definition()
        if self.algebra.is_nilpotent(tol):
            ric_nil = self.ricci_nilpotent(tol)
            scale = max(1.0, float(np.abs(ric_nil).max(initial=0.0)))
            if np.abs(ric_nil - ric_def).max(initial=0.0) > 1e-6 * scale:
                raise RuntimeError("internal Ricci routes disagree beyond cross-check bound")
            return ric_nil
        return ric_def

    def einstein_classify(self, tol: float = VERDICT_TOL) -> CurvatureReport:
        """Classify as Flat / RicciFlat / Einstein(λ≠0) / NotEinstein.

        Residuals are measured against max(1, ‖Ric‖∞); flatness against the
        squared Levi-Civita magnitude.
        """
        ric_form = self.ricci_via_definition()
        ric_op = self.ricci_operator()
        lam = float(np.trace(ric_op)) / self.n
        scale = max(1.0, float(np.abs(ric_op).max(initial=0.0)))
        residual = float(np.abs(ric_op - lam * np.eye(self.n)).max(initial=0.0))
        scalar = float(np.trace(self.gram_inv @ ric_form))

        k_defect, k_scale = self.flatness_defect()
        flat = k_defect <= tol * k_scale

        if residual > tol * scale:
            verdict = Verdict.NOT_EINSTEIN
            lam_out = None
        elif flat:
            verdict = Verdict.FLAT
            lam_out = lam
        elif abs(lam) <= tol * scale:
            verdict = Verdict.RICCI_FLAT
            lam_out = lam
        else:
            verdict = Verdict.EINSTEIN
            lam_out = lam
        return CurvatureReport(
            verdict=verdict,
            ricci_operator=ric_op,
            ricci_form=ric_form,
            scalar_curvature=scalar,
            einstein_lambda=lam_out,
            einstein_residual=residual,
            flat=flat,
            signature=self.signature(),
        )
