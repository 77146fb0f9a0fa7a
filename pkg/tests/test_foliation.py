"""Tests for leaf integration, leaf-restricted densities, leaf curvature,
the transverse field, and divisor-approach limits."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grauertlab.curvature import hsc, line_curvature
from grauertlab.errors import RadiusCollapse, SingularField
from grauertlab.foliation import (
    VectorField,
    divisor_approach,
    geometric_path,
    integrate_leaf,
    leaf_curvature,
    leaf_density,
    transverse_field,
)
from grauertlab.holomorphic import HoloMap, Polynomial, eval_jet
from grauertlab.metric import metric_eval


def test_constant_field_straight_leaf():
    c = integrate_leaf(VectorField.constant([2.0, 1j]), (0.0, 1.0))
    assert np.allclose(c.coeffs[0], [0, 1])
    assert np.allclose(c.coeffs[1], [2, 1j])
    assert np.max(np.abs(c.coeffs[2:])) == 0.0


def test_linear_field_exponential_leaf():
    X = VectorField((HoloMap.poly(1, {(1,): 1}),))
    c = integrate_leaf(X, [1.0], order=10)
    import math

    for j in range(11):
        assert abs(c.coeffs[j, 0] - 1 / math.factorial(j)) < 1e-12


def test_quadratic_field_geometric_leaf():
    # X(z) = z^2 at p = 1 integrates to z = 1/(1 - T): c_j = 1
    X = VectorField((HoloMap.poly(1, {(2,): 1}),))
    c = integrate_leaf(X, [1.0], order=12)
    assert np.allclose(c.coeffs[:, 0], 1.0)
    assert c.radius < 1.0  # unit-radius pole is detected


def test_singular_field_rejected():
    X = VectorField((HoloMap.poly(1, {(1,): 1}),))
    with pytest.raises(SingularField):
        integrate_leaf(X, [0.0])


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_leaf_residual(salt):
    # Z'(T) = X(Z(T)) holds along the chart for random quadratic fields
    rng = np.random.default_rng(salt)
    n = int(rng.integers(1, 4))
    exps = [tuple(e) for e in np.eye(n, dtype=int)] + [(0,) * n]
    comps = tuple(
        HoloMap.poly(n, {e: 0.5 * complex(*rng.normal(size=2)) for e in exps})
        for _ in range(n)
    )
    X = VectorField(comps)
    p = rng.normal(size=n) + 1j * rng.normal(size=n)
    if np.linalg.norm(X(p)) < 1e-6:
        return
    chart = integrate_leaf(X, p)
    T = 0.5 * chart.radius
    assert np.linalg.norm(chart.derivative(T) - X(chart(T))) < 1e-9


def test_leaf_density_kernel_direction():
    f = HoloMap.poly(2, {(1, 0): 1})
    X = VectorField.constant([0.0, 1.0])
    assert abs(leaf_density(f, X, (2.0, 0.0), 0.01) - 1.0) < 1e-12


def test_leaf_density_at_origin_is_metric_eval():
    f = HoloMap.poly(2, {(1, 1): 1, (0, 0): -1})
    X = VectorField.constant([1.0, -0.5j])
    p = (2.0, 1.0)
    assert abs(leaf_density(f, X, p, 0.0) - metric_eval(f, p, X(p))) < 1e-12


def test_leaf_curvature_n1_triangle():
    # one variable, constant field: leaf curvature = full curvature = hsc
    rng = np.random.default_rng(12)
    for _ in range(10):
        terms = {(d,): complex(*rng.normal(size=2)) for d in range(4)}
        f = HoloMap.poly(1, terms)
        p = complex(*rng.normal(size=2))
        if abs(f([p])) < 0.1:
            continue
        c = complex(*rng.normal(size=2))
        if abs(c) < 0.1:
            c += 1.0
        K = leaf_curvature(f, VectorField.constant([c]), [p])
        assert abs(K - line_curvature(f, p)) < 1e-8
        assert abs(K - hsc(f, [p], [1.0])) < 1e-8


def test_leaf_curvature_kernel_constant_field():
    f = HoloMap.poly(2, {(1, 1): 1, (0, 0): -1})
    p = (2.0, 1.0)
    X = VectorField.constant([-2.0, 1.0])  # value in Ker df(p)
    assert leaf_curvature(f, X, p) <= 1e-8


def test_series_vs_stencil():
    rng = np.random.default_rng(13)
    f = HoloMap.poly(2, {(1, 1): 1, (2, 0): 0.3, (0, 0): -1})
    X = VectorField((HoloMap.poly(2, {(0, 1): 1, (0, 0): 0.5}),
                     HoloMap.constant(2, 1.0)))
    for _ in range(5):
        p = rng.normal(size=2) + 1j * rng.normal(size=2)
        if abs(f(p)) < 0.1 or np.linalg.norm(X(p)) < 0.1:
            continue
        a = leaf_curvature(f, X, p, method="series")
        b = leaf_curvature(f, X, p, method="stencil")
        assert abs(a - b) < 1e-5 * max(1.0, abs(a))


def test_flat_case_cauchy_schwarz_equality():
    # constant f: Euclidean metric; X(z) = z has dX(X) parallel to X
    f = HoloMap.constant(1, 2.0)
    X = VectorField((HoloMap.poly(1, {(1,): 1}),))
    assert abs(leaf_curvature(f, X, [1.0 + 0.5j])) < 1e-8
    # and a generic linear field gives non-positive curvature
    Y = VectorField((HoloMap.poly(1, {(1,): 1, (0,): 1}),))
    assert leaf_curvature(f, Y, [0.3]) <= 1e-8


def test_reparametrization_invariance():
    f = HoloMap.poly(2, {(1, 1): 1, (0, 0): -1})
    X = VectorField.constant([1.0, 0.3j])
    p = (2.0, 1.0)
    base = leaf_curvature(f, X, p)
    for lam in (2.0, -1j, 0.5 + 0.5j):
        Xs = VectorField(tuple(c.scaled(lam) for c in X.components))
        assert abs(leaf_curvature(f, Xs, p) - base) < 1e-8


def test_transverse_field_construction():
    f = HoloMap.poly(2, {(1, 1): 1, (0, 0): -1})
    X = transverse_field(f, (2.0, 1.0))
    # X = (1/z2, 0)
    assert abs(X((2.0, 1.0))[0] - 1.0) < 1e-12
    assert X((2.0, 1.0))[1] == 0.0
    rng = np.random.default_rng(14)
    for _ in range(20):
        z = 0.5 + rng.random(2) * 2 + 1j * rng.normal(size=2)
        df = eval_jet(f, z, 1).gradient()
        assert abs(np.dot(df, X(z)) - 1.0) < 1e-12


def test_transverse_field_slot_one():
    f = HoloMap.poly(2, {(1, 0): 1})
    X = transverse_field(f, (1.0, 0.0))
    assert np.allclose(X((1.0, 0.0)), [1.0, 0.0])


def test_divisor_approach_hyperbola():
    f = HoloMap.poly(2, {(1, 1): 1, (0, 0): -1})
    path = geometric_path((1.0, 1.0), (1.0, 0.0), start=0.1, steps=8)
    recs = divisor_approach(f, (1.0, 1.0), path)
    gaps = [r["gap"] for r in recs]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 0.3


def test_divisor_approach_coordinate_plane():
    f = HoloMap.poly(2, {(1, 0): 1})
    path = [(10.0**-m, 0.0) for m in range(2, 11)]
    recs = divisor_approach(f, (0.0, 0.0), path)
    gaps = [r["gap"] for r in recs]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 0.3


def test_field_json_round_trip():
    X = VectorField(
        (
            HoloMap(Polynomial.constant(2, 1.0), Polynomial(2, {(0, 1): 1})),
            HoloMap.constant(2, 0.0),
        )
    )
    Y = VectorField.from_json(X.to_json())
    assert np.allclose(Y((2.0, 4.0)), X((2.0, 4.0)))
