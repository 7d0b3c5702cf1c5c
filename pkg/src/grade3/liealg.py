"""Finite-dimensional Lie algebras with a distinguished 3-grading.

An algebra is specified by a faithful matrix basis; elements are real
coefficient vectors over that basis.  Structure constants are derived once at
construction and every bracket closes over the basis within tolerance.  The
grading of ad(h) with eigenvalues {-1, 0, +1} is computed through exact
spectral projector polynomials after the spectrum has been clustered.
"""

from __future__ import annotations

import numpy as np

from . import numkit
from .errors import (
    AdjointOutOfSpan,
    NoTauImplementation,
    NotThreeGraded,
)
from .numkit import DEFAULT_TOL, Tolerance

__all__ = [
    "LieAlgebraSpec",
    "Grading",
    "GroupElement",
    "grade_by",
    "adjoint",
    "ad_image",
    "tau_group",
    "sharp",
]


class LieAlgebraSpec:
    """A real Lie algebra given by a linearly independent matrix basis.

    Coefficient vectors are always real; the representing matrices may be
    complex (e.g. su(2)).  Construction derives structure constants and
    fails if the basis is dependent or the bracket does not close.
    """

    def __init__(self, name, basis, tau_matrix=None, tol: Tolerance = DEFAULT_TOL):
        self.name = str(name)
        mats = [numkit.require_finite(b, f"basis[{i}]") for i, b in enumerate(basis)]
        if not mats:
            raise ValueError("empty basis")
        r = mats[0].shape[0]
        if any(m.shape != (r, r) for m in mats):
            raise ValueError("basis matrices must be square and same-shaped")
        self.rep_dim = r
        self.dim = len(mats)
        self.basis = np.stack([m.astype(complex) for m in mats])
        self._is_real_rep = all(not np.iscomplexobj(m) or np.abs(m.imag).max(initial=0) == 0 for m in mats)
        if tau_matrix is not None:
            tau_matrix = numkit.require_finite(tau_matrix, "tau_matrix")
            if tau_matrix.shape != (r, r):
                raise ValueError("tau_matrix shape mismatch")
        self.tau_matrix = tau_matrix

        # Real stacked basis (re over im), one column per basis element.
        flat = self.basis.reshape(self.dim, r * r).T
        self._bstack = np.vstack([flat.real, flat.imag])
        if np.linalg.matrix_rank(self._bstack, tol=1e-10) != self.dim:
            raise ValueError("basis matrices are linearly dependent")
        self._pinv = np.linalg.pinv(self._bstack)
        self._basis_scale = max(1.0, float(np.abs(self.basis).max()))

        # Structure constants C[i, j, k]: coordinate k of [b_i, b_j].
        comm = np.einsum("iab,jbc->ijac", self.basis, self.basis)
        comm = comm - np.transpose(comm, (1, 0, 2, 3))
        self.structure_constants = np.empty((self.dim, self.dim, self.dim))
        worst = 0.0
        for i in range(self.dim):
            for j in range(self.dim):
                v, res = self.try_coords(comm[i, j])
                worst = max(worst, res)
                self.structure_constants[i, j] = v
        if worst > tol.gate(self._basis_scale**2):
            raise ValueError(
                f"bracket does not close over the basis (residual {worst:.3e})"
            )
        self._ad_tensor = np.ascontiguousarray(
            np.transpose(self.structure_constants, (0, 2, 1))
        )  # _ad_tensor[i, k, j] so ad(x) = einsum('i,ikj->kj')

    def to_matrix(self, x) -> np.ndarray:
        """Representing matrix of the coefficient vector x."""
        x = np.asarray(x, dtype=float)
        m = np.einsum("i,iab->ab", x, self.basis)
        return m.real if self._is_real_rep else m

    def try_coords(self, m):
        """Best real coefficient vector for matrix m and its residual."""
        m = np.asarray(m, dtype=complex).reshape(-1)
        stacked = np.concatenate([m.real, m.imag])
        v = self._pinv @ stacked
        res = float(np.linalg.norm(self._bstack @ v - stacked))
        return v, res

    def coords(self, m, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
        """Coefficient vector of m; raises ValueError if m leaves the span."""
        v, res = self.try_coords(m)
        scale = max(1.0, float(np.abs(m).max(initial=0.0)))
        if res > tol.gate(scale):
            raise ValueError(f"matrix outside basis span (residual {res:.3e})")
        return v

    def bracket(self, x, y) -> np.ndarray:
        """Lie bracket of coefficient vectors."""
        return np.einsum("i,j,ijk->k", x, y, self.structure_constants)

    def ad(self, x) -> np.ndarray:
        """Matrix of ad(x) on coefficient vectors."""
        return np.einsum("i,ikj->kj", np.asarray(x, dtype=float), self._ad_tensor)

    def jacobi_defect(self) -> float:
        """Largest Jacobi-identity residual over basis triples."""
        c = self.structure_constants
        # [b_i, [b_j, b_k]] summed cyclically
        t = np.einsum("jkm,imn->ijkn", c, c)
        cyc = t + np.transpose(t, (1, 2, 0, 3)) + np.transpose(t, (2, 0, 1, 3))
        return float(np.abs(cyc).max())

    def center(self) -> np.ndarray:
        """Orthonormal basis (columns) of the center {x : ad(x) = 0}."""
        cols = self._ad_tensor.reshape(self.dim, -1).T  # vec(ad b_i) columns
        _, s, vt = np.linalg.svd(cols)
        rank = int(np.sum(s > 1e-10 * max(1.0, s[0] if s.size else 1.0)))
        return vt[rank:].T

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "rep_dim": self.rep_dim,
            "basis": [numkit.matrix_to_json(self.to_matrix(e)) for e in np.eye(self.dim)],
        }
        if self.tau_matrix is not None:
            out["tau_matrix"] = numkit.matrix_to_json(self.tau_matrix)
        return out

    @classmethod
    def from_json(cls, d: dict) -> "LieAlgebraSpec":
        try:
            name = d["name"]
            basis = [numkit.matrix_from_json(b) for b in d["basis"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad algebra object: {exc}") from exc
        tau = numkit.matrix_from_json(d["tau_matrix"]) if "tau_matrix" in d else None
        return cls(name, basis, tau_matrix=tau)

    def __repr__(self):
        return f"LieAlgebraSpec({self.name!r}, dim={self.dim}, rep_dim={self.rep_dim})"


class Grading:
    """Spectral data of a 3-grading: projectors onto the ad(h) eigenspaces
    for eigenvalues -1, 0, +1 and the induced involution tau = P0 - P- - P+."""

    def __init__(self, algebra: LieAlgebraSpec, h, p_minus, p_zero, p_plus):
        self.algebra = algebra
        self.h = np.asarray(h, dtype=float)
        self.p_minus = p_minus
        self.p_zero = p_zero
        self.p_plus = p_plus
        self.tau = p_zero - p_minus - p_plus
        self.dims = (
            int(round(np.trace(p_minus).real)),
            int(round(np.trace(p_zero).real)),
            int(round(np.trace(p_plus).real)),
        )
        self._bases = {}

    def projector(self, degree: int) -> np.ndarray:
        return {-1: self.p_minus, 0: self.p_zero, 1: self.p_plus}[degree]

    def part(self, x, degree: int) -> np.ndarray:
        """Component of x in the degree eigenspace."""
        return self.projector(degree) @ np.asarray(x, dtype=float)

    def eigenbasis(self, degree: int) -> np.ndarray:
        """Orthonormal columns spanning the degree eigenspace."""
        if degree not in self._bases:
            p = self.projector(degree)
            u, s, _ = np.linalg.svd(p)
            k = self.dims[degree + 1]
            if k and s[k - 1] < 0.5:
                raise NotThreeGraded("projector rank is ambiguous")
            self._bases[degree] = u[:, :k]
        return self._bases[degree]

    def to_json(self) -> dict:
        return {"h": [float(v) for v in self.h], "dims": list(self.dims)}


def grade_by(algebra: LieAlgebraSpec, h, tol: Tolerance = DEFAULT_TOL) -> Grading:
    """3-grading of the algebra by ad(h) eigenvalues {-1, 0, +1}.

    The spectrum is clustered with the fixed structural gap
    numkit.CLUSTER_GAP (independent of tol); projectors are the Lagrange
    polynomials of ad(h) at the clustered eigenvalues, and the bracket
    compatibility [g^i, g^j] in g^{i+j} is verified before returning.
    """
    h = np.asarray(h, dtype=float)
    if h.shape != (algebra.dim,):
        raise ValueError("h must be a coefficient vector of the algebra")
    a = algebra.ad(h)
    for z in numkit.eigvals_clustered(a):
        if min(abs(z - t) for t in (-1.0, 0.0, 1.0)) > numkit.CLUSTER_GAP:
            raise NotThreeGraded(f"ad(h) eigenvalue {z} not in {{-1, 0, 1}}")
    a2 = a @ a
    p_plus = (a2 + a) / 2.0
    p_minus = (a2 - a) / 2.0
    p_zero = np.eye(algebra.dim) - a2
    # Projector sanity: idempotent, mutually annihilating, resolution of id.
    defect = 0.0
    for p in (p_minus, p_zero, p_plus):
        defect = max(defect, float(np.abs(p @ p - p).max()))
    defect = max(defect, float(np.abs(p_plus @ p_minus).max()))
    defect = max(defect, float(np.abs(p_zero @ p_plus).max()))
    if defect > 1e3 * numkit.CLUSTER_GAP:
        raise NotThreeGraded(f"ad(h) is not semisimple enough (defect {defect:.3e})")
    g = Grading(algebra, h, p_minus, p_zero, p_plus)
    # Bracket compatibility: [g^i, g^j] lands in g^{i+j} (zero if |i+j| > 1).
    scale = max(1.0, float(np.abs(algebra.structure_constants).max()))
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            bi = g.eigenbasis(di)
            bj = g.eigenbasis(dj)
            worst = 0.0
            for u in bi.T:
                for v in bj.T:
                    w = algebra.bracket(u, v)
                    if -1 <= di + dj <= 1:
                        w = w - g.part(w, di + dj)
                    worst = max(worst, float(np.abs(w).max(initial=0.0)))
            if worst > tol.gate(scale):
                raise NotThreeGraded(
                    f"[g^{di}, g^{dj}] leaves g^{di + dj} (residual {worst:.3e})"
                )
    return g


class GroupElement:
    """Invertible matrix in the representation carrying the algebra."""

    def __init__(self, algebra: LieAlgebraSpec, matrix):
        self.algebra = algebra
        m = numkit.require_finite(matrix, "group element")
        if m.shape != (algebra.rep_dim, algebra.rep_dim):
            raise ValueError("group element has wrong shape for the representation")
        self.matrix = m
        self._inv = None

    @classmethod
    def exp(cls, algebra: LieAlgebraSpec, x) -> "GroupElement":
        """exp of the coefficient vector x."""
        return cls(algebra, numkit.expm(algebra.to_matrix(x)))

    @property
    def inv_matrix(self) -> np.ndarray:
        if self._inv is None:
            self._inv = np.linalg.inv(self.matrix)
        return self._inv

    def inverse(self) -> "GroupElement":
        out = GroupElement(self.algebra, self.inv_matrix)
        out._inv = self.matrix
        return out

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        if other.algebra is not self.algebra:
            raise ValueError("group elements from different algebras")
        return GroupElement(self.algebra, self.matrix @ other.matrix)

    def __repr__(self):
        return f"GroupElement({self.algebra.name}, {self.matrix.tolist()})"


def ad_image(g: GroupElement, x, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Coefficients of Ad(g) x = g X g^{-1}; raises AdjointOutOfSpan when the
    conjugate leaves the basis span.  The residual gate scales with the
    product of the factor norms, the size roundoff actually reaches when the
    conjugation cancels."""
    alg = g.algebra
    xm = alg.to_matrix(x)
    m = g.matrix @ xm @ g.inv_matrix
    v, res = alg.try_coords(m)
    scale = max(1.0, float(np.linalg.norm(g.matrix) * np.linalg.norm(xm)
                           * np.linalg.norm(g.inv_matrix)))
    if res > tol.gate(scale):
        raise AdjointOutOfSpan(f"Ad(g)x residual {res:.3e}")
    return v


def adjoint(g: GroupElement, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Matrix of Ad(g) on coefficient vectors."""
    alg = g.algebra
    conj = np.einsum("ab,ibc,cd->iad", g.matrix.astype(complex), alg.basis, g.inv_matrix.astype(complex))
    flat = conj.reshape(alg.dim, -1).T
    stacked = np.vstack([flat.real, flat.imag])
    cols = alg._pinv @ stacked
    res = np.linalg.norm(alg._bstack @ cols - stacked, axis=0)
    scale = max(1.0, float(np.linalg.norm(g.matrix) * np.linalg.norm(g.inv_matrix)
                           * alg._basis_scale))
    if res.max(initial=0.0) > tol.gate(scale):
        raise AdjointOutOfSpan(f"Ad(g) residual {res.max():.3e}")
    return cols


def tau_group(g: GroupElement, grading: Grading | None = None,
              tol: Tolerance = DEFAULT_TOL) -> GroupElement:
    """Group-level involution implemented by the algebra's tau matrix.

    When a grading is supplied, the implementing matrix is verified against
    the grading involution on the basis."""
    alg = g.algebra
    t = alg.tau_matrix
    if t is None:
        raise NoTauImplementation(f"algebra {alg.name} has no tau matrix")
    tinv = np.linalg.inv(t)
    if grading is not None:
        for i in range(alg.dim):
            want = alg.to_matrix(grading.tau @ np.eye(alg.dim)[i])
            got = t @ alg.to_matrix(np.eye(alg.dim)[i]) @ tinv
            if np.abs(want - got).max() > tol.gate(alg._basis_scale):
                raise NoTauImplementation(
                    "tau matrix does not implement the grading involution"
                )
    return GroupElement(alg, t @ g.matrix @ tinv)


def sharp(g: GroupElement, tol: Tolerance = DEFAULT_TOL) -> GroupElement:
    """The semigroup involution g -> tau_G(g)^{-1}."""
    return tau_group(g, tol=tol).inverse()
