"""Convex cones in Lie algebra coordinate spaces.

Supported kinds: finitely generated (polyhedral), the sl2 Lorentz-type cone,
the forward light cone, nonnegative polynomials of degree <= 2, and custom
predicate cones.  Analytic kinds may be embedded into a larger ambient space
through a linear injection; membership then also requires the off-subspace
component to vanish within tolerance.

Membership is always one-sided: a point belongs to the cone when its
violation (a nonnegative defect measure) is at most tol.abs_tol.
"""

from __future__ import annotations

import numpy as np
import scipy.optimize

from . import numkit
from .errors import AmbientMismatch
from .numkit import DEFAULT_TOL, Tolerance

__all__ = [
    "Cone",
    "leq_C",
    "graded_parts",
    "invariance_check",
    "poly_gram",
    "gram_to_poly",
    "poly_eval",
    "nonneg_poly_dim",
]

_KINDS = ("polyhedral", "sl2_lorentz", "light_cone", "nonneg_poly", "custom")


def nonneg_poly_dim(n: int) -> int:
    """Coefficient-space dimension of degree-<=2 polynomials on R^n."""
    return 1 + n + n * (n + 1) // 2


def _pack_indices(n: int):
    return [(i, j) for i in range(n) for j in range(i, n)]


def poly_gram(coeffs, n: int) -> np.ndarray:
    """(n+1) x (n+1) symmetric Gram matrix M of a degree-<=2 polynomial.

    Coefficient order: constant, n linear terms, then xi_i*xi_j terms for
    i <= j.  f(xi) = [1, xi]^T M [1, xi], and f >= 0 on R^n iff M >= 0.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape != (nonneg_poly_dim(n),):
        raise AmbientMismatch("polynomial coefficient vector has wrong length")
    m = np.zeros((n + 1, n + 1))
    m[0, 0] = coeffs[0]
    m[0, 1:] = coeffs[1 : n + 1] / 2.0
    m[1:, 0] = coeffs[1 : n + 1] / 2.0
    for (i, j), v in zip(_pack_indices(n), coeffs[n + 1 :]):
        if i == j:
            m[1 + i, 1 + i] = v
        else:
            m[1 + i, 1 + j] = v / 2.0
            m[1 + j, 1 + i] = v / 2.0
    return m


def gram_to_poly(m) -> np.ndarray:
    """Inverse of poly_gram."""
    m = np.asarray(m, dtype=float)
    n = m.shape[0] - 1
    out = np.empty(nonneg_poly_dim(n))
    out[0] = m[0, 0]
    out[1 : n + 1] = 2.0 * m[0, 1:]
    out[n + 1 :] = [
        m[1 + i, 1 + i] if i == j else 2.0 * m[1 + i, 1 + j]
        for i, j in _pack_indices(n)
    ]
    return out


def poly_eval(coeffs, points, n: int) -> np.ndarray:
    """Evaluate the polynomial at points of shape (k, n)."""
    m = poly_gram(coeffs, n)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    ext = np.hstack([np.ones((pts.shape[0], 1)), pts])
    return np.einsum("ka,ab,kb->k", ext, m, ext)


class Cone:
    """A closed convex cone with a quantitative membership defect.

    violation(x) is 0 exactly on the cone (up to floating point); contains()
    compares it against tol.abs_tol.  sample() draws cone points through the
    kind's closed-form sampler.
    """

    def __init__(self, kind: str, ambient_dim: int, *, generators=None, d=None,
                 n=None, inject=None, violation_fn=None, sampler=None,
                 pointed: bool = True, label: str = ""):
        if kind not in _KINDS:
            raise ValueError(f"unknown cone kind {kind!r}")
        self.kind = kind
        self.ambient_dim = int(ambient_dim)
        self.pointed = bool(pointed)
        self.label = label
        self.d = d
        self.n = n
        self._violation_fn = violation_fn
        self._sampler = sampler

        if kind == "polyhedral":
            if generators is None:
                generators = np.zeros((self.ambient_dim, 0))
            g = np.asarray(generators, dtype=float)
            if g.ndim == 1:
                g = g[:, None]
            if g.shape[0] != self.ambient_dim:
                raise AmbientMismatch("generators do not match ambient dimension")
            self.generators = g
        else:
            self.generators = None

        native_dim = {"sl2_lorentz": 3, "light_cone": d, "nonneg_poly": None}.get(kind)
        if kind == "light_cone":
            if not d or d < 2:
                raise ValueError("light cone needs dimension d >= 2")
        if kind == "nonneg_poly":
            if n is None or n < 1:
                raise ValueError("nonneg_poly needs n >= 1")
            native_dim = nonneg_poly_dim(n)
        if kind in ("sl2_lorentz", "light_cone", "nonneg_poly"):
            if inject is None:
                if self.ambient_dim != native_dim:
                    raise AmbientMismatch(
                        "ambient dimension does not match the cone's native space"
                    )
                self._inject = None
                self._project = None
            else:
                inject = np.asarray(inject, dtype=float)
                if inject.shape != (self.ambient_dim, native_dim):
                    raise AmbientMismatch("inject matrix has wrong shape")
                self._inject = inject
                self._project = np.linalg.pinv(inject)
        else:
            self._inject = None
            self._project = None
        if kind == "custom" and violation_fn is None:
            raise ValueError("custom cone needs a violation function")
        # Cheap construction-time sanity: 0 always belongs.
        if self.violation(np.zeros(self.ambient_dim)) > 1e-12:
            raise ValueError("cone rejects the origin")

    # -- membership ------------------------------------------------------

    def _check_vec(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.ambient_dim,):
            raise AmbientMismatch(
                f"vector of length {x.shape} in ambient of dim {self.ambient_dim}"
            )
        return x

    def _to_native(self, x):
        """(native coords, off-subspace defect)."""
        if self._inject is None:
            return x, 0.0
        v = self._project @ x
        return v, float(np.linalg.norm(self._inject @ v - x))

    def violation(self, x) -> float:
        """Nonnegative defect; 0 iff x lies in the cone."""
        x = self._check_vec(x)
        if self.kind == "custom":
            return float(self._violation_fn(x))
        if self.kind == "polyhedral":
            if self.generators.shape[1] == 0:
                return float(np.linalg.norm(x))
            _, dist = scipy.optimize.nnls(self.generators, x)
            return float(dist)
        v, off = self._to_native(x)
        if self.kind == "light_cone":
            body = max(0.0, float(np.linalg.norm(v[1:]) - v[0]))
        elif self.kind == "sl2_lorentz":
            a, b, c = v[0] / 2.0, v[1], v[2]
            body = max(0.0, -b, c, a * a + b * c)
        else:  # nonneg_poly
            m = poly_gram(v, self.n)
            body = max(0.0, -float(np.linalg.eigvalsh(m).min()))
        return max(body, off)

    def contains(self, x, tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.violation(x) <= tol.abs_tol

    def dual_contains(self, y, tol: Tolerance = DEFAULT_TOL) -> bool:
        """y in the dual cone: <y, g_i> >= -tol for every generator."""
        if self.kind != "polyhedral":
            raise ValueError("dual membership is exposed for polyhedral cones only")
        y = self._check_vec(y)
        if self.generators.shape[1] == 0:
            return True
        return bool((self.generators.T @ y).min() >= -tol.abs_tol)

    # -- sampling --------------------------------------------------------

    def sample(self, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
        """Draw one cone element."""
        if self.kind == "custom":
            if self._sampler is None:
                raise ValueError("custom cone has no sampler")
            return np.asarray(self._sampler(rng), dtype=float)
        if self.kind == "polyhedral":
            k = self.generators.shape[1]
            if k == 0:
                return np.zeros(self.ambient_dim)
            return self.generators @ (scale * np.abs(rng.normal(size=k)))
        if self.kind == "light_cone":
            x0 = scale * abs(rng.normal())
            direction = rng.normal(size=self.d - 1)
            nrm = np.linalg.norm(direction)
            if nrm > 0:
                direction = direction / nrm * (x0 * rng.uniform())
            v = np.concatenate([[x0], direction])
        elif self.kind == "sl2_lorentz":
            b = scale * abs(rng.normal())
            c = -scale * abs(rng.normal())
            a = rng.uniform(-1.0, 1.0) * np.sqrt(b * -c)
            v = np.array([2.0 * a, b, c])
        else:  # nonneg_poly
            g = rng.normal(size=(self.n + 1, self.n + 1)) * np.sqrt(scale)
            v = gram_to_poly(g.T @ g)
        if self._inject is not None:
            return self._inject @ v
        return v

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        if self.kind == "polyhedral":
            out = {"kind": "polyhedral",
                   "generators": [[float(v) for v in col] for col in self.generators.T]}
        elif self.kind == "sl2_lorentz":
            out = {"kind": "sl2_lorentz"}
        elif self.kind == "light_cone":
            out = {"kind": "light_cone", "d": int(self.d)}
        elif self.kind == "nonneg_poly":
            out = {"kind": "nonneg_poly", "n": int(self.n)}
        else:
            raise ValueError("custom cones are not serializable")
        if self._inject is not None:
            out["embedded"] = True
        return out

    @classmethod
    def from_json(cls, d: dict, ambient_dim: int | None = None) -> "Cone":
        try:
            kind = d["kind"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad cone object: {exc}") from exc
        if kind == "polyhedral":
            gens = np.asarray(d.get("generators", []), dtype=float)
            if gens.size == 0:
                if ambient_dim is None:
                    raise ValueError("empty polyhedral cone needs ambient_dim")
                return cls("polyhedral", ambient_dim)
            return cls("polyhedral", gens.shape[1], generators=gens.T)
        if kind == "sl2_lorentz":
            return cls("sl2_lorentz", 3)
        if kind == "light_cone":
            dd = int(d["d"])
            return cls("light_cone", dd, d=dd)
        if kind == "nonneg_poly":
            n = int(d["n"])
            return cls("nonneg_poly", nonneg_poly_dim(n), n=n)
        raise ValueError(f"cone kind {kind!r} is not serializable")

    def __repr__(self):
        tag = self.label or self.kind
        return f"Cone({tag}, ambient_dim={self.ambient_dim})"


def leq_C(x, y, cone: Cone, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Cone order: x <= y iff y - x lies in the cone."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise AmbientMismatch("order comparison of vectors with different shapes")
    return cone.contains(y - x, tol)


def graded_parts(cone: Cone, grading) -> tuple[Cone, Cone]:
    """Membership handles for C+ = C cap g^1 and C- = (-C) cap g^{-1}.

    Samplers project cone samples onto the graded pieces, which stay inside
    the graded cones because C is contained in C+ + g^0 + (-C-).
    """
    p_plus = grading.p_plus
    p_minus = grading.p_minus

    def make(p, sign, name):
        def violation(x):
            off = float(np.linalg.norm(x - p @ x))
            return max(off, cone.violation(sign * x))

        def sampler(rng):
            return sign * (p @ cone.sample(rng))

        return Cone("custom", cone.ambient_dim, violation_fn=violation,
                    sampler=sampler, label=name)

    return (make(p_plus, +1.0, f"{cone.label or cone.kind}+"),
            make(p_minus, -1.0, f"{cone.label or cone.kind}-"))


def invariance_check(cone: Cone, algebra, samples: int = 50,
                     tol: Tolerance = DEFAULT_TOL,
                     rng: np.random.Generator | None = None,
                     tau=None) -> dict:
    """Sampled certificate that the cone is Ad-invariant (and tau(C) = -C
    when tau, the grading involution on coordinates, is supplied).

    Group elements are drawn from one-parameter subgroups exp(t b_i) along
    basis directions and two-factor products of those.
    """
    from .liealg import GroupElement, adjoint  # local import to avoid a cycle

    if rng is None:
        rng = np.random.default_rng(0)
    ad_worst = 0.0
    tau_worst = 0.0
    for _ in range(samples):
        x = cone.sample(rng)
        factors = []
        for _ in range(rng.integers(1, 3)):
            e = np.zeros(algebra.dim)
            e[rng.integers(algebra.dim)] = rng.uniform(-1.0, 1.0)
            factors.append(GroupElement.exp(algebra, e))
        g = factors[0]
        for f in factors[1:]:
            g = g @ f
        ad = adjoint(g, tol)
        ad_worst = max(ad_worst, cone.violation(ad @ x))
        if tau is not None:
            tau_worst = max(tau_worst, cone.violation(-(tau @ x)))
    report = {
        "samples": int(samples),
        "max_ad_violation": float(ad_worst),
        "ok": bool(ad_worst <= tol.gate()),
    }
    if tau is not None:
        report["max_tau_violation"] = float(tau_worst)
        report["ok"] = bool(report["ok"] and tau_worst <= tol.gate())
    return report
