"""Truncated Verma modules for sl2 and Uq(sl2), tensor products, weight
subspaces, and Yangian / quantum-loop evaluation generator matrices.

Normalization warning
---------------------
The Cartan triple used throughout the library is

    [H, E] = E,    [H, F] = -F,    [E, F] = 2 H,

so H is *half* of the usual Cartan generator.  Consequently

    H F^k v = (Lam - k) F^k v,        E F^k v = k (2 Lam - k + 1) F^{k-1} v,

and in the quantum case (q^x means exp(x log q) with the carried branch)

    q^H F_q^k v = q^{Lam-k} F_q^k v,  E_q F_q^k v = [k]_q [2 Lam - k + 1]_q F_q^{k-1} v.

Do not "fix" factors of two locally; every downstream formula (R-matrices,
difference operators, determinants) uses this convention coherently.

Basis order
-----------
Monomials F^{k_1} v_1 x ... x F^{k_n} v_n of the full truncated product are
ordered lexicographically in (k_1, ..., k_n), which coincides with numpy's
C-order for an array of shape (d_1, ..., d_n).  Weight subspaces inherit this
order, so level-ell multi-indices always appear in lexicographic order and all
matrices are reproducible bit for bit.
"""

from __future__ import annotations

import cmath
import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MultiIndex",
    "VermaFactor",
    "TensorBasis",
    "LinearOperator",
    "ModelParams",
    "ResonanceError",
    "TruncationError",
    "multi_indices",
    "weight_basis",
    "partial_sum",
    "unit_index",
    "sl2_generator",
    "uq_generator",
    "yangian_T",
    "yangian_aux",
    "qloop_L",
    "qloop_aux",
    "qnum",
]

MultiIndex = tuple


class ResonanceError(ValueError):
    """Parameters hit (or nearly hit) an excluded resonance set."""


class TruncationError(ValueError):
    """A requested operator block is not exact at the stored truncation."""


def multi_indices(n, ell):
    """All of Z_ell^n = {l in Z_{>=0}^n : sum l_m = ell}, lexicographic."""
    if n < 1 or ell < 0:
        raise ValueError("need n >= 1 and ell >= 0")
    if n == 1:
        return [(ell,)]
    out = []
    for head in range(ell + 1):
        out.extend((head,) + tail for tail in multi_indices(n - 1, ell - head))
    return out


def partial_sum(index, m):
    """l^m = l_1 + ... + l_m (m may be 0)."""
    return sum(index[:m])


def unit_index(n, m):
    """e(m), 1-based m."""
    return tuple(1 if i == m - 1 else 0 for i in range(n))


@dataclass(frozen=True)
class VermaFactor:
    """One truncated highest-weight factor: states F^k v, 0 <= k < truncation."""
    highest_weight: complex
    truncation: int

    def __post_init__(self):
        if self.truncation < 1:
            raise ValueError("truncation must be at least 1")


@dataclass(frozen=True)
class TensorBasis:
    """Weight subspace of level `level` inside a truncated tensor product."""
    level: int
    factors: tuple
    indices: tuple

    @property
    def n(self):
        return len(self.factors)

    @property
    def dims(self):
        return tuple(f.truncation for f in self.factors)

    @property
    def weights(self):
        return tuple(f.highest_weight for f in self.factors)

    @property
    def size(self):
        return len(self.indices)

    def sibling(self, level):
        """Same factors, different level."""
        if level < 0:
            raise ValueError("negative level")
        return TensorBasis(level, self.factors,
                           tuple(multi_indices(self.n, level)))

    def index_position(self, index):
        return self.indices.index(tuple(index))


def weight_basis(n, ell, weights=None, truncation=None):
    """Level-ell weight subspace basis of V_1 x ... x V_n.

    `weights` defaults to zeros (useful for pure bookkeeping); `truncation`
    defaults to ell + 2 per factor so that E-, F- and R-matrix blocks touching
    levels <= ell + 1 are exact.
    """
    if weights is None:
        weights = [0.0] * n
    if len(weights) != n:
        raise ValueError("expected %d weights, got %d" % (n, len(weights)))
    if truncation is None:
        truncation = ell + 2
    factors = tuple(VermaFactor(complex(w), int(truncation)) for w in weights)
    return TensorBasis(ell, factors, tuple(multi_indices(n, ell)))


@dataclass
class LinearOperator:
    """Dense matrix block between two weight subspaces.

    Row index runs over the codomain multi-indices, column index over the
    domain multi-indices, both in lexicographic order.
    """
    domain_level: int
    codomain_level: int
    matrix: np.ndarray

    @property
    def degree(self):
        return self.codomain_level - self.domain_level

    def __matmul__(self, other):
        if isinstance(other, LinearOperator):
            if other.codomain_level != self.domain_level:
                raise ValueError("level mismatch in composition")
            return LinearOperator(other.domain_level, self.codomain_level,
                                  self.matrix @ other.matrix)
        return self.matrix @ other


# ---------------------------------------------------------------------------
# single-factor matrices
# ---------------------------------------------------------------------------

def _single_F(d):
    mat = np.zeros((d, d), dtype=complex)
    for k in range(d - 1):
        mat[k + 1, k] = 1.0
    return mat


def _single_E(d, lam):
    mat = np.zeros((d, d), dtype=complex)
    for k in range(1, d):
        mat[k - 1, k] = k * (2 * lam - k + 1)
    return mat


def _single_H(d, lam):
    return np.diag([lam - k for k in range(d)]).astype(complex)


def _single_qH(d, lam, log_q, sign=+1):
    return np.diag([cmath.exp(sign * (lam - k) * log_q)
                    for k in range(d)]).astype(complex)


def qnum(x, log_q):
    """Symmetric q-number [x]_q = (q^x - q^-x)/(q - q^-1)."""
    return (cmath.exp(x * log_q) - cmath.exp(-x * log_q)) / (
        cmath.exp(log_q) - cmath.exp(-log_q))


def _single_Eq(d, lam, log_q):
    mat = np.zeros((d, d), dtype=complex)
    for k in range(1, d):
        mat[k - 1, k] = qnum(k, log_q) * qnum(2 * lam - k + 1, log_q)
    return mat


# ---------------------------------------------------------------------------
# full-product-space assembly
# ---------------------------------------------------------------------------

def _kron_all(mats):
    out = np.array([[1.0 + 0.0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


def _embed(site, mat, dims):
    mats = [np.eye(d, dtype=complex) for d in dims]
    mats[site] = mat
    return _kron_all(mats)


@functools.lru_cache(maxsize=256)
def _level_positions(dims, ell):
    """Positions of the level-ell states inside the full product space."""
    pos = []
    for i, key in enumerate(itertools.product(*[range(d) for d in dims])):
        if sum(key) == ell:
            pos.append(i)
    return tuple(pos)


def _check_depth(basis, level):
    if any(d < level + 1 for d in basis.dims):
        raise TruncationError(
            "factor truncation %s too shallow for level %d"
            % (basis.dims, level))


def _block(full, basis, domain_level, codomain_level):
    _check_depth(basis, max(domain_level, codomain_level))
    rows = _level_positions(basis.dims, codomain_level)
    cols = _level_positions(basis.dims, domain_level)
    return LinearOperator(domain_level, codomain_level,
                          full[np.ix_(rows, cols)])


@functools.lru_cache(maxsize=256)
def _full_sl2(factors, which):
    dims = tuple(f.truncation for f in factors)
    total = np.zeros((int(np.prod(dims)),) * 2, dtype=complex)
    for m, f in enumerate(factors):
        if which == "F":
            single = _single_F(f.truncation)
        elif which == "E":
            single = _single_E(f.truncation, f.highest_weight)
        elif which == "H":
            single = _single_H(f.truncation, f.highest_weight)
        else:
            raise ValueError(which)
        total += _embed(m, single, dims)
    return total


@functools.lru_cache(maxsize=256)
def _full_uq(factors, which, log_q):
    dims = tuple(f.truncation for f in factors)
    if which in ("qH", "qHinv"):
        sign = +1 if which == "qH" else -1
        return _kron_all([_single_qH(f.truncation, f.highest_weight,
                                     log_q, sign) for f in factors])
    # coproduct-dressed sum for E_q / F_q: q^-H on the left, q^H on the right
    total = np.zeros((int(np.prod(dims)),) * 2, dtype=complex)
    for m, f in enumerate(factors):
        mats = []
        for l, g in enumerate(factors):
            if l < m:
                mats.append(_single_qH(g.truncation, g.highest_weight,
                                       log_q, -1))
            elif l > m:
                mats.append(_single_qH(g.truncation, g.highest_weight,
                                       log_q, +1))
            elif which == "Fq":
                mats.append(_single_F(f.truncation))
            elif which == "Eq":
                mats.append(_single_Eq(f.truncation, f.highest_weight, log_q))
            else:
                raise ValueError(which)
        total += _kron_all(mats)
    return total


_DEGREE = {"H": 0, "qH": 0, "qHinv": 0, "F": +1, "Fq": +1, "E": -1, "Eq": -1}


def sl2_generator(which, basis):
    """Matrix block of H, E or F on the level-`basis.level` weight subspace.

    The codomain level is basis.level for H, basis.level + 1 for F and
    basis.level - 1 for E.
    """
    if which not in ("H", "E", "F"):
        raise ValueError("which must be one of H, E, F")
    full = _full_sl2(basis.factors, which)
    target = basis.level + _DEGREE[which]
    if target < 0:
        # E applied at level 0: the codomain is empty
        return LinearOperator(basis.level, target,
                              np.zeros((0, basis.size), dtype=complex))
    return _block(full, basis, basis.level, target)


def _normalize_uq_name(which):
    name = which.replace("_", "")
    if name in ("Eq", "Fq", "qH", "qHinv"):
        return name
    raise ValueError("which must be one of E_q, F_q, qH, qHinv")


def uq_generator(which, basis, q=None, log_q=None):
    """Matrix block of E_q, F_q, q^H or q^{-H} on the weight subspace.

    Powers of q are taken as exp(x * log_q).  Passing log_q explicitly avoids
    branch surprises for |p| < 1; otherwise the principal log of q is used.
    """
    name = _normalize_uq_name(which)
    if log_q is None:
        if q is None:
            raise ValueError("need q or log_q")
        log_q = cmath.log(q)
    log_q = complex(log_q)
    if abs(cmath.exp(log_q) - cmath.exp(-log_q)) < 1e-12:
        raise ResonanceError("q too close to +-1 for q-number arithmetic")
    full = _full_uq(basis.factors, name, log_q)
    target = basis.level + _DEGREE[name]
    if target < 0:
        return LinearOperator(basis.level, target,
                              np.zeros((0, basis.size), dtype=complex))
    return _block(full, basis, basis.level, target)


# ---------------------------------------------------------------------------
# model parameters
# ---------------------------------------------------------------------------

def _dist_to_pZ(x, p):
    """Distance from complex x to the lattice pZ."""
    w = complex(x) / p
    return abs(w - round(w.real)) * abs(p)


@dataclass(frozen=True)
class ModelParams:
    """Global parameter pack (n, ell, weights, points, step p, exponent mu).

    kappa = e^mu and q = e^{i pi / p} are derived; log q is carried explicitly
    as i pi / p so complex powers of q never pick a wrong branch.
    """
    n: int
    ell: int
    lams: tuple
    z: tuple
    p: float
    mu: complex = 0.0 + 0.0j
    resonance_tol: float = 1e-8

    def __post_init__(self):
        object.__setattr__(self, "lams", tuple(complex(w) for w in self.lams))
        object.__setattr__(self, "z", tuple(complex(w) for w in self.z))
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "mu", complex(self.mu))
        if len(self.lams) != self.n or len(self.z) != self.n:
            raise ValueError("lams and z must have length n")
        if self.p >= 0:
            raise ValueError("step p must be real negative")
        self.validate()

    # -- derived quantities ------------------------------------------------
    @property
    def kappa(self):
        return cmath.exp(self.mu)

    @property
    def log_q(self):
        return 1j * math.pi / self.p

    @property
    def q(self):
        return cmath.exp(self.log_q)

    def zeta(self, m):
        """exp(2 pi i z_m / p), 1-based m."""
        return cmath.exp(2j * math.pi * self.z[m - 1] / self.p)

    def basis(self, level=None, truncation=None):
        if level is None:
            level = self.ell
        return weight_basis(self.n, level, weights=self.lams,
                            truncation=truncation
                            if truncation is not None else self.ell + 2)

    # -- excluded-set checks ----------------------------------------------
    def validate(self):
        tol = self.resonance_tol
        for s in range(1, self.ell + 1):
            if _dist_to_pZ(s, self.p) < tol:
                raise ResonanceError("step resonance: %d in pZ" % s)
        for m, lam in enumerate(self.lams):
            for s in range(1 - self.ell, self.ell):
                if _dist_to_pZ(2 * lam - s, self.p) < tol:
                    raise ResonanceError(
                        "weight resonance at factor %d, s=%d" % (m + 1, s))
        for l in range(self.n):
            for m in range(self.n):
                if l == m:
                    continue
                for sl in (+1, -1):
                    for sm in (+1, -1):
                        base = (self.z[l] + sl * self.lams[l]
                                - self.z[m] - sm * self.lams[m])
                        for s in range(1 - self.ell, self.ell):
                            if _dist_to_pZ(base - s, self.p) < tol:
                                raise ResonanceError(
                                    "coordinate resonance between factors "
                                    "%d and %d (s=%d)" % (l + 1, m + 1, s))
        return True


# ---------------------------------------------------------------------------
# Yangian and quantum-loop evaluation modules
# ---------------------------------------------------------------------------

def _aux_product(site_blocks):
    """Multiply 2x2 matrices with operator entries, left to right."""
    out = site_blocks[0]
    for blk in site_blocks[1:]:
        new = [[None, None], [None, None]]
        for i in range(2):
            for j in range(2):
                new[i][j] = out[i][0] @ blk[0][j] + out[i][1] @ blk[1][j]
        out = new
    return out


def yangian_T(i, j, u, params, basis):
    """Matrix of T_ij(u) on V_1(z_1) x ... x V_n(z_n).

    Per factor the entries are  [[1 + H/(u-z_m), F/(u-z_m)],
                                 [E/(u-z_m),     1 - H/(u-z_m)]],
    and the n factors are multiplied in the auxiliary 2x2 space with factor 1
    leftmost, which realizes the coproduct T_ij -> sum_k T_ik x T_kj.
    """
    if i not in (1, 2) or j not in (1, 2):
        raise ValueError("i, j must be 1 or 2")
    for m in range(params.n):
        if abs(u - params.z[m]) < 1e-10 * max(1.0, abs(u)):
            raise ValueError("u collides with z_%d" % (m + 1))
    full = yangian_aux(u, params, basis)[i - 1][j - 1]
    target = basis.level + (j - i)
    if target < 0:
        return LinearOperator(basis.level, target,
                              np.zeros((0, basis.size), dtype=complex))
    return _block(full, basis, basis.level, target)


def _qloop_site(sign, d, lam, log_q, xi_over_zeta):
    """2x2 auxiliary matrix of evaluation images of L^sign at one factor."""
    qH = _single_qH(d, lam, log_q, +1)
    qHi = _single_qH(d, lam, log_q, -1)
    Eq = _single_Eq(d, lam, log_q)
    Fq = _single_F(d)
    dq = cmath.exp(log_q) - cmath.exp(-log_q)
    x = xi_over_zeta
    if sign == "+":
        return [[qHi - qH * x, -Fq * dq * x],
                [-Eq * dq, qH - qHi * x]]
    if sign == "-":
        return [[qH - qHi / x, Fq * dq],
                [Eq * dq / x, qHi - qH / x]]
    raise ValueError("sign must be '+' or '-'")


def yangian_aux(u, params, basis):
    """Full 2x2 auxiliary matrix of T(u) with entries on the whole truncated
    product space (no weight slicing); used for RTT-type residual checks."""
    dims = basis.dims
    ident = np.eye(int(np.prod(dims)), dtype=complex)
    blocks = []
    for m, f in enumerate(basis.factors):
        d = f.truncation
        lam = f.highest_weight
        denom = u - params.z[m]
        H = _embed(m, _single_H(d, lam), dims)
        E = _embed(m, _single_E(d, lam), dims)
        F = _embed(m, _single_F(d), dims)
        blocks.append([[ident + H / denom, F / denom],
                       [E / denom, ident - H / denom]])
    return _aux_product(blocks)


def qloop_aux(sign, xi, params, basis):
    """Full 2x2 auxiliary matrix of L^sign(xi) on the whole product space."""
    dims = basis.dims
    blocks = []
    for m, f in enumerate(basis.factors):
        site = _qloop_site(sign, f.truncation, f.highest_weight,
                           params.log_q, xi / params.zeta(m + 1))
        blocks.append([[_embed(m, site[a][b], dims) for b in range(2)]
                       for a in range(2)])
    return _aux_product(list(reversed(blocks)))


def qloop_L(sign, i, j, xi, params, basis):
    """Matrix of L^sign_ij(xi) on the evaluation product V_1(zeta_1) x ...

    The m-th factor evaluates the generating series at xi/zeta_m with
    zeta_m = exp(2 pi i z_m / p); the auxiliary product runs with factor n
    leftmost, realizing the coproduct L_ij -> sum_k L_kj x L_ik.
    """
    if i not in (1, 2) or j not in (1, 2):
        raise ValueError("i, j must be 1 or 2")
    if xi == 0 and sign == "-":
        raise ValueError("L^- is a series in 1/xi; xi must be nonzero")
    full = qloop_aux(sign, xi, params, basis)[i - 1][j - 1]
    target = basis.level + (j - i)
    if target < 0:
        return LinearOperator(basis.level, target,
                              np.zeros((0, basis.size), dtype=complex))
    return _block(full, basis, basis.level, target)
