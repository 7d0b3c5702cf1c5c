import numpy as np
import pytest

from grade3.cones import (
    Cone,
    gram_to_poly,
    graded_parts,
    invariance_check,
    leq_C,
    nonneg_poly_dim,
    poly_eval,
    poly_gram,
)
from grade3.errors import AmbientMismatch


def quadrant():
    return Cone("polyhedral", 2, generators=np.eye(2))


def test_polyhedral_membership():
    c = quadrant()
    assert c.contains([1.0, 2.0])
    assert c.contains([0.0, 0.0])
    assert not c.contains([-1.0, 0.0])
    assert c.violation([-1.0, 0.0]) == pytest.approx(1.0)
    assert c.violation([-3.0, -4.0]) == pytest.approx(5.0)


def test_empty_polyhedral_is_origin():
    c = Cone("polyhedral", 2)
    assert c.contains([0.0, 0.0])
    assert c.violation([1.0, 1.0]) == pytest.approx(np.sqrt(2.0))


def test_polyhedral_dual():
    c = quadrant()
    assert c.dual_contains([1.0, 1.0])
    assert c.dual_contains([0.0, 5.0])
    assert not c.dual_contains([-1.0, 1.0])
    with pytest.raises(ValueError):
        Cone("light_cone", 3, d=3).dual_contains([1.0, 0.0, 0.0])


def test_sl2_lorentz_closed_form(sl2):
    c = sl2.cone
    # coords (h, e, f): matrix [[a, b], [c, -a]] with a = h-coeff / 2
    assert c.contains([0.0, 1.0, -1.0])
    assert c.contains([2.0, 1.0, -1.0])  # a^2 + bc = 0 boundary
    assert c.violation([0.0, -1.0, 1.0]) == pytest.approx(1.0)
    assert c.violation([2.0, 1.0, 0.0]) == pytest.approx(1.0)  # a^2 + bc = 1
    assert not c.contains([1.0, 0.0, 0.0])  # h itself: a^2 > 0


def test_light_cone():
    c = Cone("light_cone", 3, d=3)
    assert c.violation([1.0, 0.5, 0.0]) == 0.0
    assert c.violation([0.5, 1.0, 0.0]) == pytest.approx(0.5)
    assert not c.contains([-1.0, 0.0, 0.0])


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        quadrant().violation([1.0, 2.0, 3.0])
    with pytest.raises(AmbientMismatch):
        Cone("polyhedral", 2, generators=np.eye(3))
    with pytest.raises(AmbientMismatch):
        Cone("sl2_lorentz", 5)


def test_nonneg_poly_dim():
    assert nonneg_poly_dim(1) == 3
    assert nonneg_poly_dim(2) == 6
    assert nonneg_poly_dim(3) == 10


def test_poly_gram_eval():
    # 1 + 2x + 3x^2 at x = 2
    coeffs = np.array([1.0, 2.0, 3.0])
    np.testing.assert_allclose(poly_eval(coeffs, [[2.0]], 1), [17.0])
    m = poly_gram(coeffs, 1)
    np.testing.assert_allclose(m, [[1.0, 1.0], [1.0, 3.0]])
    np.testing.assert_allclose(gram_to_poly(m), coeffs)


def test_poly_gram_cross_terms():
    # x1*x2 on R^2
    coeffs = np.zeros(6)
    coeffs[4] = 1.0  # order: const, x1, x2, x1^2, x1*x2, x2^2
    np.testing.assert_allclose(poly_eval(coeffs, [[2.0, 3.0]], 2), [6.0])
    np.testing.assert_allclose(gram_to_poly(poly_gram(coeffs, 2)), coeffs)


def test_nonneg_poly_cone():
    c = Cone("nonneg_poly", 3, n=1)
    assert c.contains([1.0, 0.0, 1.0])       # 1 + x^2
    assert c.contains([1.0, 2.0, 1.0])       # (1 + x)^2
    assert c.violation([-1.0, 0.0, -1.0]) == pytest.approx(1.0)
    assert c.violation([0.0, 1.0, 0.0]) == pytest.approx(0.5)  # f(x) = x


def test_cone_sampling_stays_inside(rng):
    cones = [quadrant(), Cone("light_cone", 4, d=4),
             Cone("sl2_lorentz", 3), Cone("nonneg_poly", 6, n=2)]
    for c in cones:
        for _ in range(40):
            assert c.violation(c.sample(rng)) <= 1e-10


def test_custom_cone_requires_fn():
    with pytest.raises(ValueError):
        Cone("custom", 2)
    with pytest.raises(ValueError):
        Cone("bogus_kind", 2)


def test_origin_rejecting_cone_fails_fast():
    with pytest.raises(ValueError):
        Cone("custom", 1, violation_fn=lambda x: 1.0)


def test_leq_C():
    c = quadrant()
    assert leq_C([0.0, 0.0], [1.0, 1.0], c)
    assert not leq_C([1.0, 1.0], [0.0, 0.0], c)


def test_serialization_roundtrip():
    for c in (quadrant(), Cone("sl2_lorentz", 3), Cone("light_cone", 4, d=4),
              Cone("nonneg_poly", 6, n=2)):
        back = Cone.from_json(c.to_json())
        assert back.kind == c.kind
        assert back.ambient_dim == c.ambient_dim
    with pytest.raises(ValueError):
        Cone.from_json({"kind": "custom"})
    with pytest.raises(ValueError):
        Cone("custom", 1, violation_fn=lambda x: 0.0).to_json()


def test_graded_parts_sl2(sl2):
    cp, cm = graded_parts(sl2.cone, sl2.grading)
    # C+ = C cap g^1 is the ray through e; C- = -C cap g^{-1} is the ray
    # through f (the cone itself meets g^{-1} along -f)
    assert cp.contains([0.0, 1.0, 0.0])
    assert not cp.contains([0.0, -1.0, 0.0])
    assert not cp.contains([0.0, 0.0, -1.0])  # wrong graded piece
    assert cm.contains([0.0, 0.0, 1.0])
    assert not cm.contains([0.0, 0.0, -1.0])
    assert sl2.cone.contains([0.0, 0.0, -1.0])


def test_graded_parts_sampler(sl2, rng):
    cp, cm = graded_parts(sl2.cone, sl2.grading)
    for _ in range(20):
        assert cp.violation(cp.sample(rng)) <= 1e-10
        assert cm.violation(cm.sample(rng)) <= 1e-10


def test_invariance_check_on_catalog(sl2, poincare3, rng):
    for entry in (sl2, poincare3):
        rep = invariance_check(entry.cone, entry.algebra, samples=30,
                               rng=rng, tau=entry.grading.tau)
        assert rep["ok"]
        assert rep["max_ad_violation"] <= 1e-8
        assert rep["max_tau_violation"] <= 1e-8
