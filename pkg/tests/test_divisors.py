"""Tests for divisor families, compact grids, gap measurements, twisting,
and the liminf inequality check."""

import numpy as np
import pytest

from grauertlab.divisors import (
    CompactGrid,
    DivisorFamily,
    curvature_gap,
    liminf_check,
    sup_metric_gap,
    twisted_family,
)
from grauertlab.errors import GridTouchesDivisor, UnitVanishes
from grauertlab.foliation import VectorField
from grauertlab.holomorphic import HoloMap, Polynomial
from grauertlab.verify import family_1d, family_2d, grid_1d, grid_2d


def constant_family(J=(1, 2, 4)):
    f0 = Polynomial(1, {(1,): 1, (0,): -1})
    return DivisorFamily.from_template(f0, dict(f0.terms), {}, J)


def test_constant_family_zero_gap():
    fam = constant_family()
    grid = CompactGrid(((-1.0, 3.0, -1.0, 1.0),), 6, 0.2)
    assert sup_metric_gap(fam, grid, 2) == 0.0
    assert curvature_gap(fam, VectorField.constant([1.0]), grid, 2) == 0.0


def test_coefficient_gap():
    fam = family_1d()
    assert abs(fam.coefficient_gap(64) - 1 / 64) < 1e-15
    assert fam.coefficient_gap(64) < 0.02  # declared convergence spot-check


def test_metric_gap_trend_and_ratio():
    # annulus-style grid with margin 0.2: first-order decay in 1/j
    fam = family_1d()
    grid = CompactGrid(((-0.97, 3.03, -2.0, 2.0),), 21, 0.2)
    gaps = {j: sup_metric_gap(fam, grid, j) for j in (1, 8, 16, 32, 64)}
    assert gaps[64] < gaps[8] < gaps[1]
    assert abs(gaps[32] / gaps[16] - 0.5) < 0.125
    assert gaps[64] < 1e-2 * gaps[1]


def test_curvature_gap_trend():
    fam = family_1d()
    X = VectorField.constant([1.0])
    g4 = curvature_gap(fam, X, grid_1d(), 4)
    g64 = curvature_gap(fam, X, grid_1d(), 64)
    assert g64 < 0.1 * g4


def test_grid_touches_divisor():
    fam = family_1d(J=(1,))
    # z = 2 (the j = 1 divisor) is a grid point of this box
    grid = CompactGrid(((0.0, 2.0, -1.0, 1.0),), 3, 0.2)
    with pytest.raises(GridTouchesDivisor) as exc:
        sup_metric_gap(fam, grid, 1)
    assert exc.value.j == 1 and len(exc.value.points) >= 1


def test_grid_validation():
    with pytest.raises(ValueError):
        CompactGrid(((0.0, 1.0, 0.0, 1.0),), 4, 1e-9)  # delta too small
    grid = CompactGrid(((-0.05, 0.05, -0.05, 0.05),), 3, 0.5)
    with pytest.raises(ValueError):
        grid.points(HoloMap.poly(1, {(1,): 1}))  # empty after exclusion


def test_twisted_identity_unit():
    fam = family_1d()
    tfam = twisted_family(fam, HoloMap.constant(1, 1.0))
    for j in (1, 8):
        assert tfam.member(j).num.terms == fam.member(j).num.terms


def test_twisted_constant_unit_converges():
    fam = family_1d()
    grid = grid_1d()
    tfam = twisted_family(fam, HoloMap.constant(1, 2.0))
    # different defining function (metric differs from the untwisted one)...
    assert sup_metric_gap(
        DivisorFamily(fam.f0, tfam.member_fn, fam.J), grid, 8
    ) > 0.0
    # ...but the twisted family still converges
    g = {j: sup_metric_gap(tfam, grid, j) for j in (1, 8, 64)}
    assert g[64] < g[8] < g[1]


def test_twisted_roots_unchanged():
    # h(z) = 2 + z: the twisted members vanish exactly where the members do
    fam = family_1d()
    unit = HoloMap.poly(1, {(0,): 2.0, (1,): 1.0})
    tfam = twisted_family(fam, unit, grid_1d())
    for j in (1, 8, 64):
        c = tfam.member(j).num.terms
        roots = np.roots([c.get((2,), 0), c.get((1,), 0), c.get((0,), 0)])
        keep = [r for r in roots if abs(r + 2) > 1e-6]
        assert len(keep) == 1
        assert abs(keep[0] - (1 + 1 / j)) < 1e-9


def test_twisted_vanishing_unit_rejected():
    fam = family_1d()
    unit = HoloMap.poly(1, {(1,): 1, (0,): 0.97})  # vanishes at grid point -0.97
    with pytest.raises(UnitVanishes):
        twisted_family(fam, unit, grid_1d())


def test_liminf_trivial_equality():
    fam = constant_family()
    rep = liminf_check(fam, [3.0], [1.0], tail=1)
    assert rep["margin"] == 0.0 and rep["passed"]


def test_liminf_canonical_points():
    deep = family_1d((10_000_000, 100_000_000))
    rep = liminf_check(deep, [3.0], [1.0], tail=10_000_000)
    assert rep["passed"] and rep["margin"] >= -1e-6
    deep2 = family_2d((10_000_000, 100_000_000))
    rep2 = liminf_check(deep2, (2.0, 1.0), (1.0, 0.0), tail=10_000_000)
    assert rep2["passed"] and rep2["margin"] >= -1e-6


def test_family_json_round_trip():
    obj = {
        "f0": {"n": 1, "terms": [{"exp": [1], "re": 1}, {"exp": [0], "re": -1}]},
        "fj": {
            "template": {
                "terms": [{"exp": [1], "re": 1}, {"exp": [0], "re": -1, "re_j": -1}]
            }
        },
        "J": [1, 4, 64],
    }
    fam = DivisorFamily.from_json(obj)
    assert fam.J == (1, 4, 64)
    assert abs(fam.member(4)((1.0,)) - (-0.25)) < 1e-15
    assert fam.f0((1.0,)) == 0.0


def test_n2_canonical_grids_nonempty():
    assert len(grid_2d().points(family_2d().f0)) > 100
    assert len(grid_1d().points(family_1d().f0)) > 100
