"""Root decomposition with respect to a compactly embedded Cartan
subalgebra, compact/noncompact classification of roots, and the maximal
cone cut out by an adapted positive system.

All computations happen on the complexified coefficient space.  The star
map (x + iy)* = -x + iy of the real form acts on coefficient vectors as
v -> -conj(v), since coefficients over the defining basis are exactly the
real-form coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import numkit
from .cones import Cone
from .errors import NonReducedRootSystem, NotAdapted, NotCartan, NotRegular
from .liealg import LieAlgebraSpec
from .numkit import DEFAULT_TOL, Tolerance

__all__ = [
    "RootDatum",
    "root_decomposition",
    "classify_root",
    "c_max",
    "find_adapted_x0",
    "star",
]

# Joint eigenvalues are merged below this separation.
_EIG_GAP = 1e-8


def star(v) -> np.ndarray:
    """The involution (x + iy)* = -x + iy on coefficient vectors."""
    return -np.conj(np.asarray(v, dtype=complex))


@dataclass
class RootDatum:
    """Roots of a compactly embedded Cartan: each root is the tuple of
    ad-eigenvalues along the Cartan basis, with a unit root vector and a
    compactness tag."""

    algebra: LieAlgebraSpec
    cartan: np.ndarray            # rows are coefficient vectors spanning t
    roots: list                   # complex (k,) arrays alpha(t_1..t_k)
    vectors: list                 # complex (dim,) unit root vectors
    types: list                   # tags parallel to roots

    @property
    def rank(self) -> int:
        return self.cartan.shape[0]

    def index_of(self, alpha, atol: float = 1e-8) -> int:
        alpha = np.asarray(alpha, dtype=complex)
        for i, r in enumerate(self.roots):
            if np.allclose(r, alpha, atol=atol):
                return i
        raise KeyError(f"{alpha} is not a root of this datum")

    def i_values(self, x0) -> np.ndarray:
        """Real numbers i alpha(x0) for every root, x0 in Cartan coords."""
        x0 = np.asarray(x0, dtype=float)
        if x0.shape != (self.rank,):
            raise ValueError("x0 must be a coefficient vector over the Cartan basis")
        return np.array([-float(np.imag(r @ x0)) for r in self.roots])

    def to_json(self) -> dict:
        return {
            "cartan": [[float(v) for v in row] for row in self.cartan],
            "roots": [
                {"re": [float(v) for v in r.real], "im": [float(v) for v in r.imag]}
                for r in self.roots
            ],
            "vectors": [
                {"re": [float(v) for v in x.real], "im": [float(v) for v in x.imag]}
                for x in self.vectors
            ],
            "types": list(self.types),
        }


def _refine_blocks(blocks, a, gap):
    """Split each invariant block along the eigenspaces of a."""
    out = []
    for q in blocks:
        if q.shape[1] == 1:
            out.append(q)
            continue
        a_res = q.conj().T @ (a @ q)
        w, vec = np.linalg.eig(a_res)
        if np.linalg.matrix_rank(vec, tol=1e-10) < q.shape[1]:
            raise NotCartan("ad(t) is not semisimple on the complexification")
        groups: list[list[int]] = []
        for i in np.argsort(w.real + 1e-3 * w.imag):
            for grp in groups:
                if abs(w[i] - w[grp[0]]) < gap:
                    grp.append(i)
                    break
            else:
                groups.append([i])
        for grp in groups:
            sub = np.linalg.qr(vec[:, grp])[0]
            out.append(q @ sub)
    return out


def root_decomposition(algebra: LieAlgebraSpec, cartan,
                       tol: Tolerance = DEFAULT_TOL) -> RootDatum:
    """Simultaneous eigendecomposition of ad over a compactly embedded
    Cartan subalgebra.

    cartan is a sequence of coefficient vectors spanning t.  Raises
    NotCartan when t is not abelian, not self-centralizing, or when an
    ad-eigenvalue fails to be purely imaginary; NonReducedRootSystem when a
    root space has dimension above one.
    """
    t_mat = np.atleast_2d(np.asarray(cartan, dtype=float))
    k, dim = t_mat.shape
    if dim != algebra.dim:
        raise ValueError("cartan vectors do not match the algebra dimension")
    if np.linalg.matrix_rank(t_mat, tol=1e-10) != k:
        raise ValueError("cartan vectors are linearly dependent")
    scale = max(1.0, float(np.abs(t_mat).max()))
    for i in range(k):
        for j in range(i + 1, k):
            if np.abs(algebra.bracket(t_mat[i], t_mat[j])).max() > tol.gate(scale**2):
                raise NotCartan("cartan subalgebra is not abelian")

    ads = [algebra.ad(t_mat[i]).astype(complex) for i in range(k)]
    gap = _EIG_GAP * max(1.0, max(float(np.abs(a).max()) for a in ads))
    blocks = [np.eye(algebra.dim, dtype=complex)]
    for a in ads:
        blocks = _refine_blocks(blocks, a, gap)

    zero_dim = 0
    roots, vectors = [], []
    for q in blocks:
        weight = np.array([complex(np.trace(q.conj().T @ (a @ q))) / q.shape[1]
                           for a in ads])
        if np.abs(weight.real).max() > gap:
            raise NotCartan(
                f"ad(t) eigenvalue {weight} is not purely imaginary; "
                "the Cartan subalgebra is not compactly embedded"
            )
        weight = 1j * weight.imag
        if np.abs(weight).max() <= gap:
            zero_dim += q.shape[1]
            continue
        if q.shape[1] > 1:
            raise NonReducedRootSystem(
                f"root space of dimension {q.shape[1]} at weight {weight}"
            )
        x = q[:, 0]
        worst = max(
            float(np.abs(a @ x - w * x).max()) for a, w in zip(ads, weight)
        )
        if worst > tol.gate(scale):
            raise NotCartan(f"joint eigenvector residual {worst:.3e}")
        roots.append(weight)
        vectors.append(x)

    if zero_dim != k:
        raise NotCartan(
            f"centralizer of t has dimension {zero_dim}, expected {k}"
        )
    for r in roots:
        try:
            _match(roots, -r)
        except KeyError:
            raise NotCartan(f"root {r} has no negative") from None

    types = [
        _classify(algebra, t_mat, roots[i], vectors[i], tol)
        for i in range(len(roots))
    ]
    return RootDatum(algebra, t_mat, roots, vectors, types)


def _match(roots, alpha, atol: float = 1e-8) -> int:
    for i, r in enumerate(roots):
        if np.allclose(r, alpha, atol=atol):
            return i
    raise KeyError(alpha)


def _classify(algebra, t_mat, alpha, x, tol: Tolerance) -> str:
    """Sign of alpha([x, x*]) decides the tag for a 1-dimensional root
    space: positive compact, negative noncompact simple, zero noncompact."""
    z = algebra.bracket(x, star(x))
    coeff, _, _, _ = np.linalg.lstsq(t_mat.T.astype(complex), z, rcond=None)
    resid = float(np.abs(t_mat.T @ coeff - z).max())
    if resid > tol.gate(max(1.0, float(np.abs(z).max()))):
        raise NotCartan(f"[x, x*] leaves the Cartan subalgebra (residual {resid:.3e})")
    value = complex(np.dot(alpha, coeff))
    if abs(value.imag) > tol.gate(max(1.0, abs(value))):
        raise NotCartan(f"alpha([x, x*]) = {value} is not real")
    thr = tol.gate()
    if value.real > thr:
        return "compact"
    if value.real < -thr:
        return "noncompact_simple"
    return "noncompact"


def classify_root(datum: RootDatum, alpha) -> str:
    """Tag of a root given by index or coefficient tuple."""
    if isinstance(alpha, (int, np.integer)):
        return datum.types[int(alpha)]
    return datum.types[datum.index_of(alpha)]


def _dual_rays(rows: np.ndarray, k: int, tol: Tolerance) -> np.ndarray:
    """Generators of {x in R^k : rows @ x >= 0} for k <= 3.

    Splits off the lineality space (nullspace of rows) and enumerates
    extreme rays of the pointed part through nullspaces of row subsets.
    """
    if k > 3:
        raise ValueError("facet enumeration is implemented for dimension <= 3 only")
    if rows.size == 0:
        return np.hstack([np.eye(k), -np.eye(k)])
    u, s, vt = np.linalg.svd(rows)
    rank = int(np.sum(s > 1e-10 * max(1.0, s[0])))
    lineality = vt[rank:].T                      # (k, k - rank)
    slack = tol.abs_tol * max(1.0, float(np.abs(rows).max()))

    rays = []
    for subset in combinations(range(rows.shape[0]), rank - 1):
        m = np.vstack([rows[list(subset)], lineality.T]) if subset or lineality.size \
            else np.zeros((0, k))
        _, sm, vm = np.linalg.svd(m) if m.size else (None, np.zeros(0), np.eye(k))
        null = vm[int(np.sum(sm > 1e-10 * max(1.0, sm[0] if sm.size else 1.0))):]
        if null.shape[0] != 1:
            continue
        d = null[0]
        for cand in (d, -d):
            if (rows @ cand).min() >= -slack:
                cand = cand / np.linalg.norm(cand)
                if not any(np.allclose(cand, r, atol=1e-8) for r in rays):
                    rays.append(cand)
    gens = list(rays)
    for col in lineality.T:
        gens.append(col)
        gens.append(-col)
    if not gens:
        return np.zeros((k, 0))
    return np.column_stack(gens)


def c_max(datum: RootDatum, x0, tol: Tolerance = DEFAULT_TOL) -> Cone:
    """The cone {x in t : i alpha(x) >= 0 for all noncompact positive
    roots}, in Cartan coordinates, by generators.

    x0 defines the positive system and must be regular; the system must be
    adapted (noncompact positive values dominate all compact values).
    """
    ivals = datum.i_values(x0)
    if ivals.size and np.abs(ivals).min() <= tol.gate():
        raise NotRegular(f"x0 is not regular: i alpha(x0) reaches {np.abs(ivals).min():.3e}")
    pos_noncompact = [i for i in range(len(ivals))
                      if ivals[i] > 0 and datum.types[i] != "compact"]
    compact = [i for i in range(len(ivals)) if datum.types[i] == "compact"]
    if pos_noncompact and compact:
        lo = min(ivals[i] for i in pos_noncompact)
        hi = max(ivals[i] for i in compact)
        if not lo > hi:
            raise NotAdapted(
                f"positive system at x0 is not adapted: "
                f"min noncompact {lo:.3g} <= max compact {hi:.3g}"
            )
    rows = np.array([[-float(np.imag(v)) for v in datum.roots[i]]
                     for i in pos_noncompact]).reshape(len(pos_noncompact), datum.rank)
    gens = _dual_rays(rows, datum.rank, tol)
    return Cone("polyhedral", datum.rank, generators=gens, label="c_max")


def find_adapted_x0(datum: RootDatum, rng: np.random.Generator | None = None,
                    attempts: int = 200, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Search for a regular Cartan element whose positive system is adapted.

    Existence is not guaranteed for every algebra; after the given number
    of random draws the search reports failure instead of guessing.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    for _ in range(int(attempts)):
        x0 = rng.normal(size=datum.rank)
        try:
            c_max(datum, x0, tol)
        except (NotRegular, NotAdapted):
            continue
        return x0
    raise NotAdapted(f"no adapted positive system found in {attempts} attempts")
