"""Difference-connection operators K_m(z) on weight subspaces.

Each K_m is an ordered product of rational R-matrices on the factor pairs
(m, l) with a diagonal kappa^{Lam_m - H_m} in the middle:

    K_m(z) = R_{m,m-1}(z_m - z_{m-1} + p) ... R_{m,1}(z_m - z_1 + p)
             kappa^{Lam_m - H_m}
             R_{m,n}(z_m - z_n) ... R_{m,m+1}(z_m - z_{m+1}),

where R_{m,l} acts on factors m and l (first R-matrix leg on factor m).  The
shift by +p multiplies exactly the factors left of the kappa term.  The family
is flat: shifting z_m by p in K_l and composing with K_m is symmetric in
(l, m), which `check_flatness` verifies numerically.

The weight-subspace determinant of K_m has a closed product form (it only
sees the R-matrix eigenvalues), used here as an independent cross-check on
the assembled operator.
"""

import cmath
from dataclasses import replace
from math import comb

import numpy as np

from .algebra import LinearOperator, _dist_to_pZ
from .rmatrix import embed_pair, rational_blocks, spectral_decomposition

_DISCRIMINANT_TOL = 1e-8


class DiscriminantError(ValueError):
    """z is too close to a hyperplane where some K_m degenerates."""


def discriminant_distance(params):
    """Distance from z to the nearest hyperplane z_l+L_l-z_m+L_m = r + p s.

    The minimum runs over ordered pairs l != m, r = 0..ell-1 and integer s.
    K_m has a pole or a zero on each of these hyperplanes, so solutions and
    determinant formulas are only sampled away from them.
    """
    best = float("inf")
    for l in range(params.n):
        for m in range(params.n):
            if l == m:
                continue
            base = (params.z[l] + params.lams[l]
                    - params.z[m] + params.lams[m])
            for r in range(params.ell):
                best = min(best, _dist_to_pZ(base - r, params.p))
    return best


def _require_off_discriminant(params):
    dist = discriminant_distance(params)
    if dist < _DISCRIMINANT_TOL:
        raise DiscriminantError(
            "z is within %.3g of the discriminant" % dist)


def qkz_operator(m, params, basis=None):
    """Matrix of K_m(z) on a level-ell weight subspace (1-based m)."""
    if basis is None:
        basis = params.basis()
    n = params.n
    if not 1 <= m <= n:
        raise ValueError("factor index %d out of range 1..%d" % (m, n))
    _require_off_discriminant(params)
    level = basis.level
    factors = basis.factors

    def pair_factor(l, x):
        dec = spectral_decomposition(factors[m - 1], factors[l - 1], level)
        return embed_pair(rational_blocks(x, dec), basis, m, l)

    mat = np.eye(basis.size, dtype=complex)
    for l in range(m - 1, 0, -1):
        mat = mat @ pair_factor(l, params.z[m - 1] - params.z[l - 1]
                                + params.p)
    kappa_diag = np.array([cmath.exp(params.mu * idx[m - 1])
                           for idx in basis.indices])
    mat = mat * kappa_diag[None, :]
    for l in range(n, m, -1):
        mat = mat @ pair_factor(l, params.z[m - 1] - params.z[l - 1])
    return LinearOperator(level, level, mat)


def _shifted(params, m):
    """params with z_m replaced by z_m + p (1-based m)."""
    z = list(params.z)
    z[m - 1] += params.p
    return replace(params, z=tuple(z))


def check_flatness(params, l, m):
    """Relative residual of K_l(..z_m+p..) K_m(z) = K_m(..z_l+p..) K_l(z)."""
    basis = params.basis()
    K_m = qkz_operator(m, params, basis).matrix
    K_l = qkz_operator(l, params, basis).matrix
    lhs = qkz_operator(l, _shifted(params, m), basis).matrix @ K_m
    rhs = qkz_operator(m, _shifted(params, l), basis).matrix @ K_l
    scale = max(np.linalg.norm(lhs), 1e-300)
    return np.linalg.norm(lhs - rhs) / scale


def qkz_determinant(m, params):
    """Determinant of K_m on the level-ell subspace, three ways of looking.

    Returns (closed form, numeric determinant, relative discrepancy).  The
    closed form is

        kappa^C(n+ell-1, n) *
        prod_{s<ell} [ prod_{l<m} (z_m+L_m-z_l+L_l-s+p)/(z_m-L_m-z_l-L_l+s+p)
                     * prod_{l>m} (z_m+L_m-z_l+L_l-s)/(z_m-L_m-z_l-L_l+s)
                     ]^C(n+ell-s-2, n-1).
    """
    _require_off_discriminant(params)
    n, ell = params.n, params.ell
    numeric = np.linalg.det(qkz_operator(m, params).matrix)
    closed = cmath.exp(params.mu * comb(n + ell - 1, n))
    zm, lm = params.z[m - 1], params.lams[m - 1]
    for s in range(ell):
        ratio = 1.0 + 0.0j
        for l in range(1, n + 1):
            if l == m:
                continue
            zl, ll = params.z[l - 1], params.lams[l - 1]
            shift = params.p if l < m else 0.0
            ratio *= (zm + lm - zl + ll - s + shift) \
                / (zm - lm - zl - ll + s + shift)
        closed *= ratio ** comb(n + ell - s - 2, n - 1)
    discrepancy = abs(closed - numeric) / max(abs(closed), 1e-300)
    return closed, numeric, discrepancy
