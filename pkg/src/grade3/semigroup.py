"""Compression semigroups of a 3-grading and their factorizations.

member_ShC decides h - Ad(g)h in C directly.  triangular_factor computes the
open-cell factorization g = exp(x+) g0 exp(x-) (or the mirrored order): with
w = Ad(g)h and graded parts (w1, w0, w-1), expanding w = e^{ad x+}(h + y) for
y in g^{-1} gives w0 = h + [x+, y] and w1 = -(1/2)(I + ad w0) x+, so x+
solves a linear system on g^1; x- is then read off from h - Ad(g'^{-1})h.
The Olshanski-type polar factorization g0 exp(x) comes from the principal
log of sharp(g) g.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numkit
from .cones import Cone, graded_parts
from .errors import AdjointOutOfSpan, NotInOpenCell, NotPolar
from .liealg import Grading, GroupElement, ad_image, sharp
from .numkit import DEFAULT_TOL, Tolerance

__all__ = [
    "TriangularFactorization",
    "PolarFactorization",
    "member_ShC",
    "member_P",
    "member_decomposed",
    "triangular_factor",
    "polar_factor",
    "strip_check_abelian",
]


@dataclass
class TriangularFactorization:
    """g = exp(x_plus) g0 exp(x_minus) for order '+0-', the mirrored product
    for order '-0+'.  residual is the Frobenius reconstruction error."""

    x_plus: np.ndarray
    g0: GroupElement
    x_minus: np.ndarray
    residual: float
    order: str = "+0-"

    def to_json(self) -> dict:
        return {
            "x_plus": [float(v) for v in self.x_plus],
            "g0": numkit.matrix_to_json(self.g0.matrix),
            "x_minus": [float(v) for v in self.x_minus],
            "residual": float(self.residual),
            "order": self.order,
        }


@dataclass
class PolarFactorization:
    """g = g0 exp(x) with Ad(g0)h = h and tau(x) = -x."""

    g0: GroupElement
    x: np.ndarray
    residual: float

    def to_json(self) -> dict:
        return {
            "g0": numkit.matrix_to_json(self.g0.matrix),
            "x": [float(v) for v in self.x],
            "residual": float(self.residual),
        }


def member_ShC(g: GroupElement, grading: Grading, cone: Cone,
               tol: Tolerance = DEFAULT_TOL) -> bool:
    """Compression-semigroup membership: h - Ad(g)h in C."""
    w = ad_image(g, grading.h, tol)
    return cone.contains(grading.h - w, tol)


def member_P(g: GroupElement, grading: Grading, sign: int,
             tol: Tolerance = DEFAULT_TOL) -> bool:
    """Membership in P(sign) = G^0 G^{sign}: Ad(g)h lands in h + g^{sign}."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    r = ad_image(g, grading.h, tol) - grading.h
    off = r - grading.part(r, sign)
    scale = max(1.0, float(np.linalg.norm(r)))
    return bool(np.linalg.norm(off) <= tol.gate(scale))


def triangular_factor(g: GroupElement, grading: Grading, order: str = "+0-",
                      tol: Tolerance = DEFAULT_TOL) -> TriangularFactorization:
    """Factor g through the open cell G^1 G^0 G^{-1} (or G^{-1} G^0 G^1).

    Raises NotInOpenCell when the linear solve for the unipotent factor is
    inconsistent or any verification (middle-factor fixing h, reconstruction)
    fails at tolerance.
    """
    if order not in ("+0-", "-0+"):
        raise ValueError("order must be '+0-' or '-0+'")
    alg = g.algebra
    s = +1 if order == "+0-" else -1
    h = grading.h
    w = ad_image(g, h, tol)
    w_lead = grading.part(w, s)    # graded part matching the leading factor
    w0 = grading.part(w, 0)

    # (I + s ad(w0)) x_lead = -2 s w_lead, solved on the leading eigenspace.
    basis = grading.eigenbasis(s)
    op = np.eye(alg.dim) + s * alg.ad(w0)
    mat = basis.T @ op @ basis
    rhs = basis.T @ (-2.0 * s * w_lead)
    sol, _ = numkit.solve_lstsq(mat, rhs)
    x_lead = basis @ sol
    scale = max(1.0, float(np.linalg.norm(w)))
    if np.linalg.norm(op @ x_lead + 2.0 * s * w_lead) > tol.gate(scale):
        raise NotInOpenCell("leading-factor linear system is inconsistent")

    try:
        g1 = GroupElement.exp(alg, -x_lead) @ g
        r = ad_image(g1, h, tol) - h
        off = r - grading.part(r, -s)
        if np.linalg.norm(off) > tol.gate(scale):
            raise NotInOpenCell("residual conjugation does not reach h + g^{-lead}")

        # Trailing factor from Ad(g1^{-1})h = h -+ x_trail.
        r_inv = ad_image(g1.inverse(), h, tol) - h
        x_trail = grading.part(s * -1.0 * r_inv, -s)
        if np.linalg.norm(r_inv - grading.part(r_inv, -s)) > tol.gate(scale):
            raise NotInOpenCell("trailing factor is not purely graded")

        g0 = g1 @ GroupElement.exp(alg, -x_trail)
        if np.linalg.norm(ad_image(g0, h, tol) - h) > tol.gate(scale):
            raise NotInOpenCell("middle factor does not fix h")
    except AdjointOutOfSpan as exc:
        # A diverging unipotent factor can push the intermediate conjugations
        # past what the representation can verify; that is a failed
        # factorization, not a broken group element.
        raise NotInOpenCell(f"factor verification failed: {exc}") from exc

    recon = (GroupElement.exp(alg, x_lead) @ g0 @ GroupElement.exp(alg, x_trail)).matrix
    residual = float(np.linalg.norm(recon - g.matrix))
    if residual > tol.gate(max(1.0, float(np.linalg.norm(g.matrix)))):
        raise NotInOpenCell(f"reconstruction residual {residual:.3e}")

    if s == +1:
        return TriangularFactorization(x_lead, g0, x_trail, residual, order)
    return TriangularFactorization(x_trail, g0, x_lead, residual, order)


def member_decomposed(g: GroupElement, grading: Grading, cone: Cone,
                      tol: Tolerance = DEFAULT_TOL, parts=None) -> bool:
    """Membership through the decomposition theorem: g factors in the open
    cell with x+ in C+ and x- in C-.  False when g is not in the cell.

    parts may carry precomputed (C+, C-) handles to avoid rebuilding them."""
    try:
        f = triangular_factor(g, grading, "+0-", tol)
    except NotInOpenCell:
        return False
    c_plus, c_minus = parts if parts is not None else graded_parts(cone, grading)
    return c_plus.contains(f.x_plus, tol) and c_minus.contains(f.x_minus, tol)


def polar_factor(g: GroupElement, grading: Grading,
                 tol: Tolerance = DEFAULT_TOL) -> PolarFactorization:
    """Polar-type factorization g = g0 exp(x), tau(x) = -x, Ad(g0)h = h.

    Computes m = sharp(g) g = exp(2x) and halves its principal log.
    BranchCutError from the log propagates; NotPolar flags a log outside the
    algebra, a tau-symmetric part in x, or a bad unit factor.
    """
    alg = g.algebra
    m = (sharp(g, tol) @ g).matrix
    logm = numkit.logm_principal(m, tol)
    v, res = alg.try_coords(logm)
    scale = max(1.0, float(np.abs(logm).max(initial=0.0)))
    if res > tol.gate(scale):
        raise NotPolar("log of sharp(g) g leaves the algebra")
    x = v / 2.0
    sym = grading.tau @ x + x
    if np.linalg.norm(sym) > tol.gate(max(1.0, float(np.linalg.norm(x)))):
        raise NotPolar("odd part of the factorization is not tau-antifixed")
    g0 = g @ GroupElement.exp(alg, -x)
    if np.linalg.norm(ad_image(g0, grading.h, tol) - grading.h) > tol.gate():
        raise NotPolar("unit factor does not fix h")
    recon = (g0 @ GroupElement.exp(alg, x)).matrix
    residual = float(np.linalg.norm(recon - g.matrix))
    if residual > tol.gate(max(1.0, float(np.linalg.norm(g.matrix)))):
        raise NotPolar(f"reconstruction residual {residual:.3e}")
    return PolarFactorization(g0, x, residual)


def strip_check_abelian(x, cone_pm: Cone, steps: int = 64,
                        tol: Tolerance = DEFAULT_TOL) -> bool:
    """Grid version of the abelian strip criterion.

    For x in g^{+-1} the boundary-value condition reduces to
    sin(y) x in C_{+-} for all y in [0, pi], which the grid checks directly;
    by positive homogeneity it is equivalent to x in C_{+-} itself.
    """
    x = np.asarray(x, dtype=float)
    for y in np.linspace(0.0, np.pi, steps):
        if not cone_pm.contains(np.sin(y) * x, tol):
            return False
    return True
