"""Pullback Hermitian metric fields on the complement of a principal divisor.

The metric is G_{ik}(z) = gamma(|f|^2) f_{z_i} conj(f_{z_k}) + delta_{ik}
with gamma(t) = 1 + t u^2(t): a rank-one update of the Euclidean identity.
Derivative blocks are assembled by the chain rule from the holomorphic jet
of f and the profile jet of u.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .density import gamma_jet
from .errors import OnDivisor, SolveFailure
from .holomorphic import HoloMap, _as_point, eval_jet

#: |f(z)| below this counts as "on the divisor"
DIVISOR_TOL = 1e-300

#: Sherman-Morrison conditioning guard before declaring failure
COND_LIMIT = 1e12


def _check_off_divisor(f: HoloMap, z) -> complex:
    v = f(z)
    if abs(v) < DIVISOR_TOL:
        raise OnDivisor(f"f vanishes at {z} (|f| = {abs(v):.3e})")
    return v


def metric_eval(f: HoloMap, z, V) -> float:
    """Metric value phi(z, V) = gamma(|f|^2) |df(z)(V)|^2 + |V|^2."""
    z = _as_point(z, f.n)
    V = np.asarray(V, dtype=complex)
    fz = _check_off_divisor(f, z)
    jet = eval_jet(f, z, 1)
    g, _, _ = gamma_jet(abs(fz) ** 2)
    dfv = np.dot(jet.gradient(), V)
    return float(g * abs(dfv) ** 2 + np.vdot(V, V).real)


def metric_matrix(f: HoloMap, z) -> np.ndarray:
    """Matrix G(z) of the metric; Hermitian, eigenvalues >= 1."""
    z = _as_point(z, f.n)
    fz = _check_off_divisor(f, z)
    a = eval_jet(f, z, 1).gradient()
    g, _, _ = gamma_jet(abs(fz) ** 2)
    G = g * np.outer(a, np.conj(a)) + np.eye(f.n)
    return 0.5 * (G + G.conj().T)  # Hermitian by construction


@dataclass(frozen=True)
class MetricDerivatives:
    """G, its first and mixed-second Wirtinger derivative blocks, and G^-1.

    ``dG[k]`` is the matrix of d_k G_{ij}, ``ddG[k, l]`` of dbar_l d_k G_{ij};
    the anti-holomorphic first block is the conjugate transpose of ``dG``.
    """

    z: tuple[complex, ...]
    G: np.ndarray
    dG: np.ndarray  # shape (n, n, n): dG[k][i, j]
    ddG: np.ndarray  # shape (n, n, n, n): ddG[k][l][i, j]
    Ginv: np.ndarray


def metric_matrix_jet(f: HoloMap, z) -> MetricDerivatives:
    """Exact analytic derivative blocks of the metric matrix at ``z``.

    The inverse uses the Sherman-Morrison rank-one form; its condition
    number 1 + gamma |grad f|^2 must stay below the guard.
    """
    z = _as_point(z, f.n)
    n = f.n
    fz = _check_off_divisor(f, z)
    jet = eval_jet(f, z, 2)
    a = jet.gradient()
    H = jet.hessian()
    t = abs(fz) ** 2
    g, gp, gpp = gamma_jet(t)

    aa = np.outer(a, np.conj(a))
    G = g * aa + np.eye(n)

    dG = np.empty((n, n, n), dtype=complex)
    for k in range(n):
        dG[k] = gp * a[k] * np.conj(fz) * aa + g * np.outer(H[:, k], np.conj(a))

    ddG = np.empty((n, n, n, n), dtype=complex)
    for k in range(n):
        for l in range(n):
            ddG[k, l] = (
                (gpp * t + gp) * a[k] * np.conj(a[l]) * aa
                + gp * a[k] * np.conj(fz) * np.outer(a, np.conj(H[:, l]))
                + gp * fz * np.conj(a[l]) * np.outer(H[:, k], np.conj(a))
                + g * np.outer(H[:, k], np.conj(H[:, l]))
            )

    na2 = float(np.vdot(a, a).real)
    cond = 1.0 + g * na2
    if cond > COND_LIMIT:
        raise SolveFailure(
            f"metric conditioning {cond:.3e} exceeds {COND_LIMIT:.0e} at {z}"
        )
    if na2 < 1e-30:
        Ginv = np.linalg.inv(G)  # rank-one factor numerically absent
    else:
        Ginv = np.eye(n) - (g / (1.0 + g * na2)) * aa
    return MetricDerivatives(z, G, dG, ddG, Ginv)


def metric_det(f: HoloMap, z) -> float:
    """det G(z) = 1 + gamma(|f|^2) |grad f|^2 (matrix determinant lemma)."""
    z = _as_point(z, f.n)
    fz = _check_off_divisor(f, z)
    a = eval_jet(f, z, 1).gradient()
    g, _, _ = gamma_jet(abs(fz) ** 2)
    return float(1.0 + g * np.vdot(a, a).real)
