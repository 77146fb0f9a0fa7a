"""Holomorphic vector fields, power-series leaf integration, and the
curvature of the metric restricted to leaves.

A leaf chart is the truncated Taylor solution of Z'(T) = X(Z(T)), Z(0) = p.
The leaf-restricted density h(T) factors through holomorphic series
(f o Z, its derivative, and the field components along the leaf), so its
Wirtinger jet at T = 0 -- and hence the leaf curvature -- is computed in
closed form.  A stencil path on h(T) is kept as the independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curvature import gaussian_conformal
from .density import DensityJet, gamma_jet
from .errors import DegenerateDirection, OnDivisor, RadiusCollapse, SingularField
from .holomorphic import HoloMap, Polynomial, _as_point, eval_jet, wirtinger_fd
from .metric import DIVISOR_TOL, metric_eval

#: default truncation order of leaf charts
DEFAULT_ORDER = 16

#: convergence-radius floor below which a chart is rejected
RADIUS_FLOOR = 1e-6

#: |X(p)| below this counts as a singular point of the field
FIELD_TOL = 1e-10


# -- truncated power series in one variable, complex coefficients -----------

def _series_mul(a: np.ndarray, b: np.ndarray, m: int) -> np.ndarray:
    out = np.zeros(m + 1, dtype=complex)
    for i, ai in enumerate(a[: m + 1]):
        if ai == 0:
            continue
        top = min(m - i, len(b) - 1)
        out[i : i + top + 1] += ai * b[: top + 1]
    return out


def _series_div(a: np.ndarray, b: np.ndarray, m: int) -> np.ndarray:
    if b[0] == 0:
        raise ZeroDivisionError("series division by a series vanishing at 0")
    out = np.zeros(m + 1, dtype=complex)
    for i in range(m + 1):
        acc = a[i] if i < len(a) else 0.0
        for j in range(1, i + 1):
            if j < len(b):
                acc -= b[j] * out[i - j]
        out[i] = acc / b[0]
    return out


def _poly_on_series(p: Polynomial, Z: list[np.ndarray], m: int) -> np.ndarray:
    """Compose a polynomial with component series, truncated at order m."""
    powers: list[dict[int, np.ndarray]] = [dict() for _ in range(p.n)]
    one = np.zeros(m + 1, dtype=complex)
    one[0] = 1.0

    def power(i: int, e: int) -> np.ndarray:
        if e == 0:
            return one
        cache = powers[i]
        if e not in cache:
            cache[e] = _series_mul(power(i, e - 1), Z[i], m)
        return cache[e]

    out = np.zeros(m + 1, dtype=complex)
    for exp, c in p.terms.items():
        term = one
        for i, e in enumerate(exp):
            if e:
                term = _series_mul(term, power(i, e), m)
        out += c * term
    return out


def _map_on_series(f: HoloMap, Z: list[np.ndarray], m: int) -> np.ndarray:
    num = _poly_on_series(f.num, Z, m)
    if f.den is None:
        return num
    den = _poly_on_series(f.den, Z, m)
    return _series_div(num, den, m)


# -- vector fields and leaf charts ------------------------------------------

@dataclass(frozen=True)
class VectorField:
    """Holomorphic vector field on C^n with HoloMap components."""

    components: tuple[HoloMap, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("vector field needs at least one component")
        n = self.components[0].n
        if any(c.n != n for c in self.components):
            raise ValueError("component dimension mismatch")
        if len(self.components) != n:
            raise ValueError("need exactly n components in dimension n")

    @property
    def n(self) -> int:
        return len(self.components)

    def __call__(self, z) -> np.ndarray:
        return np.array([c(z) for c in self.components])

    @staticmethod
    def constant(V) -> "VectorField":
        V = np.atleast_1d(np.asarray(V, dtype=complex))
        n = V.size
        return VectorField(tuple(HoloMap.constant(n, v) for v in V))

    def to_json(self) -> dict:
        return {"components": [c.to_json() for c in self.components]}

    @staticmethod
    def from_json(obj: dict) -> "VectorField":
        return VectorField(tuple(HoloMap.from_json(c) for c in obj["components"]))


@dataclass(frozen=True)
class LeafChart:
    """Truncated Taylor parametrization of a leaf through its base point."""

    base: tuple[complex, ...]
    order: int
    coeffs: np.ndarray  # shape (order + 1, n); coeffs[0] = base
    radius: float

    @property
    def n(self) -> int:
        return len(self.base)

    def __call__(self, T: complex) -> np.ndarray:
        z = np.zeros(self.n, dtype=complex)
        for c in self.coeffs[::-1]:
            z = z * T + c
        return z

    def derivative(self, T: complex) -> np.ndarray:
        z = np.zeros(self.n, dtype=complex)
        for j in range(self.order, 0, -1):
            z = z * T + j * self.coeffs[j]
        return z


def _radius_estimate(coeffs: np.ndarray) -> float:
    m = coeffs.shape[0] - 1
    tail = range(max(1, m // 2), m + 1)
    vals = []
    for j in tail:
        mag = float(np.max(np.abs(coeffs[j])))
        if mag > 0:
            vals.append(mag ** (-1.0 / j))
    if not vals:
        return 1e6  # polynomial leaf: effectively unbounded chart
    return 0.5 * min(vals)


def integrate_leaf(X: VectorField, p, order: int = DEFAULT_ORDER) -> LeafChart:
    """Taylor coefficients of Z'(T) = X(Z(T)), Z(0) = p, up to ``order``.

    Coefficient recursion c_{j+1} = [T^j] X(Z(T)) / (j + 1); the radius is
    estimated from tail coefficient growth.
    """
    if not 1 <= order <= 24:
        raise ValueError("order must be in 1..24")
    p = _as_point(p, X.n)
    if float(np.linalg.norm(X(p))) <= FIELD_TOL:
        raise SingularField(f"|X({p})| <= {FIELD_TOL}")
    n = X.n
    coeffs = np.zeros((order + 1, n), dtype=complex)
    coeffs[0] = p
    for j in range(order):
        Z = [coeffs[: j + 1, i].copy() for i in range(n)]
        for i, comp in enumerate(X.components):
            rhs = _map_on_series(comp, Z, j)
            coeffs[j + 1, i] = rhs[j] / (j + 1)
    rho = _radius_estimate(coeffs)
    if rho < RADIUS_FLOOR:
        raise RadiusCollapse(f"estimated radius {rho:.3e} below {RADIUS_FLOOR}")
    return LeafChart(p, order, coeffs, rho)


# -- leaf-restricted density and curvature ----------------------------------

def leaf_density(f: HoloMap, X: VectorField, p, T: complex,
                 chart: LeafChart | None = None) -> float:
    """Density h(T) of the leaf-restricted metric at parameter T."""
    if chart is None:
        chart = integrate_leaf(X, p)
    if abs(T) >= chart.radius:
        raise ValueError(f"|T| = {abs(T):.3e} outside chart radius {chart.radius:.3e}")
    zT = chart(T)
    return metric_eval(f, zT, X(zT))


def leaf_density_jet(f: HoloMap, X: VectorField, p,
                     chart: LeafChart | None = None) -> DensityJet:
    """Wirtinger jet of h(T) at T = 0, assembled from holomorphic series.

    With g = f o Z the pullback satisfies dg/dT = df(Z)(X(Z)), so
    h(T) = gamma(|g|^2) |g'|^2 + sum_i |X_i(Z)|^2 and every derivative at 0
    follows from the series coefficients of g and X_i o Z.
    """
    if chart is None:
        chart = integrate_leaf(X, p, order=4)
    m = min(4, chart.order)
    Z = [chart.coeffs[: m + 1, i].copy() for i in range(chart.n)]
    g = _map_on_series(f, Z, m)
    chi = np.array([_map_on_series(c, Z, m) for c in X.components])

    g0, g1, g2 = g[0], g[1], 2.0 * g[2]
    if abs(g0) < DIVISOR_TOL:
        raise OnDivisor(f"f vanishes along the leaf at {chart.base}")
    t = abs(g0) ** 2
    gm, gmp, gmpp = gamma_jet(t)
    s = abs(g1) ** 2
    chi0 = chi[:, 0]
    chi1 = chi[:, 1]

    h = gm * s + float(np.vdot(chi0, chi0).real)
    d = gmp * g1 * np.conj(g0) * s + gm * g2 * np.conj(g1) + np.dot(
        chi1, np.conj(chi0)
    )
    ddbar = (
        gmpp * t * s**2
        + gmp * s**2
        + 2.0 * (gmp * g1**2 * np.conj(g0 * g2)).real
        + gm * abs(g2) ** 2
        + float(np.vdot(chi1, chi1).real)
    )
    return DensityJet(0j, float(h), complex(d), complex(np.conj(d)), float(ddbar))


def _stencil_step(f: HoloMap, X: VectorField, chart: LeafChart) -> float:
    """Stencil step: inside the chart and well short of the divisor crossing.

    Along the leaf f(Z(T)) moves at rate |df(X)|, so the divisor sits at
    parameter distance ~ |f(p)| / |df(p)(X(p))|; the step stays a factor
    100 inside that.
    """
    p = chart.base
    step = min(1e-4, chart.radius / 10.0)
    Xp = X(p)
    dfX = abs(np.dot(eval_jet(f, p, 1).gradient(), Xp))
    if dfX > 0:
        step = min(step, 0.01 * abs(f(p)) / dfX)
    return step


def leaf_curvature(f: HoloMap, X: VectorField, p, method: str = "series",
                   order: int = DEFAULT_ORDER) -> float:
    """Leaf curvature of the metric along the foliation of X at p.

    ``method="series"`` uses the closed-form jet of the leaf density
    (exact up to roundoff); ``method="stencil"`` is the finite-difference
    oracle with Richardson extrapolation.
    """
    chart = integrate_leaf(X, p, order=order)
    if method == "series":
        return gaussian_conformal(leaf_density_jet(f, X, p, chart=chart))
    if method != "stencil":
        raise ValueError(f"unknown method {method!r}")

    def F(T: complex) -> float:
        zT = chart(T)
        return metric_eval(f, zT, X(zT))

    step = _stencil_step(f, X, chart)
    j1 = wirtinger_fd(F, 0j, step)
    j2 = wirtinger_fd(F, 0j, step / 2.0)
    # second-order stencils: Richardson-combine for fourth-order accuracy
    d = (4.0 * j2.d - j1.d) / 3.0
    ddbar = (4.0 * j2.ddbar - j1.ddbar) / 3.0
    jet = DensityJet(0j, j2.value, d, np.conj(d), ddbar)
    return gaussian_conformal(jet)


def transverse_field(f: HoloMap, p) -> VectorField:
    """Field X with df(X) = 1: e_i / f_{z_i} for the strongest partial at p."""
    p = _as_point(p, f.n)
    grad = eval_jet(f, p, 1).gradient()
    i = 0 if abs(grad[0]) > FIELD_TOL else int(np.argmax(np.abs(grad)))
    if abs(grad[i]) <= FIELD_TOL:
        raise DegenerateDirection(f"no partial of f exceeds {FIELD_TOL} at {p}")
    one = Polynomial.constant(f.n, 1.0)
    if f.den is None:
        di = f.num.partial(i)
        comp = HoloMap(one, di)
    else:
        # (num/den)' = (num' den - num den') / den^2
        di_num = f.num.partial(i) * f.den + f.num.scaled(-1.0) * f.den.partial(i)
        comp = HoloMap(f.den * f.den, di_num)
    zero = HoloMap.constant(f.n, 0.0)
    return VectorField(tuple(comp if j == i else zero for j in range(f.n)))


def divisor_approach(f: HoloMap, p, path) -> list[dict]:
    """Leaf curvatures of the transverse field along a path toward p in |D|.

    Returns one record per path point with the curvature and its gap to the
    limit value -4.
    """
    X = transverse_field(f, p)
    out = []
    for m, zm in enumerate(path):
        K = leaf_curvature(f, X, zm)
        out.append({"m": m, "z": _as_point(zm, f.n), "K": K, "gap": abs(K + 4.0)})
    return out


def geometric_path(base, direction, start: float = 1.0, ratio: float = 0.1,
                   steps: int = 9) -> list[tuple[complex, ...]]:
    """Points base + start * ratio^m * direction, m = 1..steps."""
    base = np.asarray(base, dtype=complex)
    direction = np.asarray(direction, dtype=complex)
    return [
        tuple(base + start * ratio**m * direction) for m in range(1, steps + 1)
    ]
