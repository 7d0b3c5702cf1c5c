"""Dense linear-algebra kernel used by every other module.

Thin, deterministic wrappers around numpy/scipy primitives plus the pieces
they do not provide: principal-log branch-cut detection, the Loewner order,
eigenvalue clustering, adaptive Gauss-Legendre quadrature, and the JSON
matrix codec.  All tolerances flow through a single Tolerance object.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import BranchCutError, NotSelfAdjoint

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "CLUSTER_GAP",
    "require_finite",
    "matrix_to_json",
    "matrix_from_json",
    "expm",
    "logm_principal",
    "solve_lstsq",
    "hermitian_defect",
    "loewner_leq",
    "eigvals_clustered",
    "quad_adaptive",
    "subspace_gap",
]

# Gap threshold for clustering eigenvalues onto structural targets.  Fixed by
# design, independent of the user tolerance.
CLUSTER_GAP = 1e-8


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative tolerance pair used across the package.

    abs_tol gates absolute residuals and one-sided cone slacks; rel_tol
    scales with the problem data through gate().
    """

    abs_tol: float = 1e-9
    rel_tol: float = 1e-9

    def __post_init__(self):
        if not (self.abs_tol >= 0 and self.rel_tol >= 0):
            raise ValueError("tolerances must be nonnegative")

    def gate(self, scale: float = 1.0) -> float:
        """Largest residual accepted for data of the given magnitude."""
        return self.abs_tol + self.rel_tol * abs(scale)


DEFAULT_TOL = Tolerance()


def require_finite(a, what: str = "matrix") -> np.ndarray:
    """Return a as an ndarray after checking every entry is finite."""
    a = np.asarray(a)
    if a.dtype == object:
        raise ValueError(f"{what} has non-numeric entries")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{what} has non-finite entries")
    return a


def matrix_to_json(m) -> dict:
    """Serialize a matrix to {"rows", "cols", "re"[, "im"]} with row-major
    flat entry lists.  "im" is present only for complex matrices."""
    m = require_finite(np.atleast_2d(m))
    out = {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "re": [float(v) for v in np.real(m).ravel()],
    }
    if np.iscomplexobj(m):
        out["im"] = [float(v) for v in np.imag(m).ravel()]
    return out


def matrix_from_json(d: dict) -> np.ndarray:
    """Inverse of matrix_to_json.  Raises ValueError on malformed input."""
    try:
        rows, cols = int(d["rows"]), int(d["cols"])
        re = np.asarray(d["re"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad matrix object: {exc}") from exc
    if rows < 0 or cols < 0 or re.size != rows * cols:
        raise ValueError("matrix entry count does not match rows*cols")
    m = re.reshape(rows, cols)
    if "im" in d:
        im = np.asarray(d["im"], dtype=float)
        if im.size != rows * cols:
            raise ValueError("matrix entry count does not match rows*cols")
        m = m + 1j * im.reshape(rows, cols)
    return require_finite(m)


def expm(a) -> np.ndarray:
    """Matrix exponential (scaling-and-squaring)."""
    return scipy.linalg.expm(require_finite(a))


def _cut_distance(z: complex) -> float:
    """Distance from z to the ray (-inf, 0]."""
    if z.real <= 0.0:
        return abs(z.imag)
    return abs(z)


def logm_principal(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Principal matrix logarithm.

    Raises BranchCutError when any eigenvalue lies within tol.abs_tol of the
    closed negative real axis, where the principal branch is ill-defined.
    """
    a = require_finite(a)
    for z in eigvals_clustered(a):
        if _cut_distance(complex(z)) <= tol.abs_tol:
            raise BranchCutError(
                f"eigenvalue {z} within {tol.abs_tol} of the branch cut"
            )
    out = scipy.linalg.logm(a)
    if not np.iscomplexobj(a) and np.abs(out.imag).max(initial=0.0) < 1e3 * np.finfo(float).eps * max(1.0, np.abs(out.real).max(initial=0.0)):
        out = out.real
    return out


def solve_lstsq(a, b):
    """Minimum-norm least-squares solution of a x = b.

    Returns (x, residual) with residual = ||a x - b||_2 computed explicitly
    (numpy's residual output is empty in the rank-deficient case).
    """
    a = require_finite(a)
    b = require_finite(b)
    x, _, _, _ = np.linalg.lstsq(a, b, rcond=None)
    residual = float(np.linalg.norm(a @ x - b))
    return x, residual


def hermitian_defect(a) -> float:
    """Max-norm of the antihermitian part of a."""
    a = np.atleast_2d(a)
    return float(np.abs(a - a.conj().T).max(initial=0.0))


def loewner_leq(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Decide a <= b in the Loewner order: b - a has smallest eigenvalue
    >= -tol.abs_tol.  Raises NotSelfAdjoint if either argument is not
    self-adjoint within tolerance."""
    a = require_finite(a)
    b = require_finite(b)
    if a.shape != b.shape:
        raise ValueError("shape mismatch in Loewner comparison")
    for name, m in (("first", a), ("second", b)):
        scale = max(1.0, float(np.abs(m).max(initial=0.0)))
        if hermitian_defect(m) > tol.gate(scale):
            raise NotSelfAdjoint(f"{name} argument is not self-adjoint")
    diff = b - a
    diff = (diff + diff.conj().T) / 2
    return bool(np.linalg.eigvalsh(diff).min() >= -tol.abs_tol)


def eigvals_clustered(a, gap: float = CLUSTER_GAP) -> np.ndarray:
    """Eigenvalues of a via the (complex) Schur form, with values closer than
    gap merged onto their mean.  Robust for the non-normal matrices produced
    by adjoint actions in non-orthogonal bases."""
    a = np.atleast_2d(a)
    t = scipy.linalg.schur(a.astype(complex), output="complex")[0]
    vals = np.diag(t).copy()
    order = np.argsort(vals.real + 1e-3 * vals.imag, kind="stable")
    merged = vals[order]
    i = 0
    while i < len(merged):
        j = i + 1
        while j < len(merged) and abs(merged[j] - merged[i]) <= gap:
            j += 1
        merged[i:j] = merged[i:j].mean()
        i = j
    out = np.empty_like(vals)
    out[order] = merged
    return out


# 15-point Gauss-Legendre rule used by the adaptive quadrature.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)


def _gl_panel(f, a: float, b: float):
    mid, half = (a + b) / 2.0, (b - a) / 2.0
    return half * np.sum(_GL_WEIGHTS * f(mid + half * _GL_NODES))

def quad_adaptive(f, a: float, b: float, tol: float = 1e-8, max_depth: int = 40):
    """Adaptive Gauss-Legendre integral of f over [a, b].

    f must accept a numpy array of nodes and return values (real or complex).
    A panel is accepted when whole-panel and split-panel estimates agree to
    tol; tol halves with each bisection so the total error stays below tol.
    """

    def recurse(lo, hi, whole, budget, depth):
        mid = (lo + hi) / 2.0
        left = _gl_panel(f, lo, mid)
        right = _gl_panel(f, mid, hi)
        if depth >= max_depth or abs(left + right - whole) <= budget:
            return left + right
        return recurse(lo, mid, left, budget / 2.0, depth + 1) + recurse(
            mid, hi, right, budget / 2.0, depth + 1
        )

    return recurse(float(a), float(b), _gl_panel(f, float(a), float(b)), float(tol), 0)


def subspace_gap(u, v) -> float:
    """sin of the largest principal angle between the column spans of u, v.

    Returns 1.0 when dimensions differ.  Used for 'same subspace' checks."""
    u = np.atleast_2d(u)
    v = np.atleast_2d(v)
    qu = np.linalg.qr(u)[0]
    qv = np.linalg.qr(v)[0]
    if qu.shape[1] != qv.shape[1]:
        return 1.0
    # ||(I - P_u) Q_v|| = sin(theta_max), stable for tiny angles
    resid = qv - qu @ (qu.conj().T @ qv)
    return float(np.linalg.norm(resid, 2))
