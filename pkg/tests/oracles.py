"""Reference implementations used only by the test-suite.

Everything in this file is written in the most naive way that could possibly
work: vectors in truncated highest-weight modules are dictionaries mapping
monomial labels to coefficients, generator actions are explicit recursions,
R-matrices are obtained by solving the defining intertwining relations level
by level with least squares, and integrals are done with mpmath.  None of it
shares code with the library, so agreement between the two is meaningful.
"""

import cmath
import itertools
import math

import numpy as np


# ---------------------------------------------------------------------------
# multi-index bookkeeping
# ---------------------------------------------------------------------------

def compositions(n, ell):
    """All tuples of n nonnegative integers summing to ell, lex order."""
    if n == 1:
        return [(ell,)]
    out = []
    for first in range(ell + 1):
        for rest in compositions(n - 1, ell - first):
            out.append((first,) + rest)
    return out


def dim_weight_space(n, ell):
    return math.comb(n + ell - 1, n - 1)


# ---------------------------------------------------------------------------
# classical Verma modules: dict-of-monomials arithmetic
#
# A vector in V_1 x ... x V_n is {(k_1,...,k_n): coefficient}.  The module
# normalization is [E,F] = 2H, H F^k v = (Lam-k) F^k v,
# E F^k v = k (2 Lam - k + 1) F^{k-1} v.
# ---------------------------------------------------------------------------

def vadd(acc, key, coeff):
    if coeff != 0:
        acc[key] = acc.get(key, 0.0 + 0.0j) + coeff


def apply_H(vec, lams):
    out = {}
    for key, c in vec.items():
        eig = sum(lams) - sum(key)
        vadd(out, key, c * eig)
    return out


def apply_F(vec, lams):
    out = {}
    for key, c in vec.items():
        for m in range(len(key)):
            new = list(key)
            new[m] += 1
            vadd(out, tuple(new), c)
    return out


def apply_E(vec, lams):
    out = {}
    for key, c in vec.items():
        for m, k in enumerate(key):
            if k == 0:
                continue
            new = list(key)
            new[m] -= 1
            vadd(out, tuple(new), c * k * (2 * lams[m] - k + 1))
    return out


# ---------------------------------------------------------------------------
# quantum counterparts.  q-powers always go through an explicit log so that
# complex weights exponentiate consistently: q^x := exp(x*logq).
# ---------------------------------------------------------------------------

def qnum(x, logq):
    """[x]_q = (q^x - q^-x)/(q - 1/q)."""
    return (cmath.exp(x * logq) - cmath.exp(-x * logq)) / (
        cmath.exp(logq) - cmath.exp(-logq))


def apply_qH(vec, lams, logq, sign=+1):
    out = {}
    for key, c in vec.items():
        eig = sum(lams) - sum(key)
        vadd(out, key, c * cmath.exp(sign * eig * logq))
    return out


def _dress(key, lams, m, logq):
    """Coproduct dressing for the m-th term of Delta(F_q) or Delta(E_q):
    q^{-H} on factors to the left of m, q^H on factors to the right."""
    w = 0.0 + 0.0j
    for l in range(m):
        w -= lams[l] - key[l]
    for l in range(m + 1, len(key)):
        w += lams[l] - key[l]
    return cmath.exp(w * logq)


def apply_Fq(vec, lams, logq):
    out = {}
    for key, c in vec.items():
        for m in range(len(key)):
            new = list(key)
            new[m] += 1
            vadd(out, tuple(new), c * _dress(key, lams, m, logq))
    return out


def apply_Eq(vec, lams, logq):
    out = {}
    for key, c in vec.items():
        for m, k in enumerate(key):
            if k == 0:
                continue
            new = list(key)
            new[m] -= 1
            amp = qnum(k, logq) * qnum(2 * lams[m] - k + 1, logq)
            vadd(out, tuple(new), c * amp * _dress(key, lams, m, logq))
    return out


def operator_matrix(apply_fn, domain_states, codomain_states):
    """Materialize a dict-action into a dense matrix."""
    col_of = {s: i for i, s in enumerate(domain_states)}
    row_of = {s: i for i, s in enumerate(codomain_states)}
    mat = np.zeros((len(codomain_states), len(domain_states)), dtype=complex)
    for s, j in col_of.items():
        image = apply_fn({s: 1.0 + 0.0j})
        for key, c in image.items():
            if key in row_of:
                mat[row_of[key], j] = c
    return mat


# ---------------------------------------------------------------------------
# two-factor R-matrices solved from their defining relations, level by level.
#
# Rational: R commutes with Delta(F) and intertwines
#   H x F - F x H + x F x 1   with   F x H - H x F + x F x 1,
# normalized by R(v x v) = v x v.  Trigonometric: the two zeta-relations for
# Delta-type combinations of F_q with q^{+-H}, normalized the same way.
# Both solutions are unique, so the least-squares recursion is exact.
# ---------------------------------------------------------------------------

def _pair_states(ell, d1, d2):
    return [(k, ell - k) for k in range(ell + 1) if k < d1 and ell - k < d2]


def _pair_matrix(apply_fn, ell_from, ell_to, d1, d2):
    return operator_matrix(apply_fn, _pair_states(ell_from, d1, d2),
                           _pair_states(ell_to, d1, d2))


def solve_rational_R(x, lam1, lam2, lmax):
    """Blocks of R(x) on V_1 x V_2 for levels 0..lmax, as a list of arrays."""
    lams = [lam1, lam2]
    d1 = d2 = lmax + 1

    def mk(single):
        return lambda ell: _pair_matrix(single, ell, ell + 1, d1, d2)

    def dF(vec):
        return apply_F(vec, lams)

    def m_right(vec):  # H x F - F x H + x F x 1
        out = {}
        for key, c in vec.items():
            k1, k2 = key
            vadd(out, (k1, k2 + 1), c * (lams[0] - k1))
            vadd(out, (k1 + 1, k2), -c * (lams[1] - k2))
            vadd(out, (k1 + 1, k2), c * x)
        return out

    def m_left(vec):  # F x H - H x F + x F x 1
        out = {}
        for key, c in vec.items():
            k1, k2 = key
            vadd(out, (k1 + 1, k2), c * (lams[1] - k2))
            vadd(out, (k1, k2 + 1), -c * (lams[0] - k1))
            vadd(out, (k1 + 1, k2), c * x)
        return out

    blocks = [np.array([[1.0 + 0.0j]])]
    for ell in range(lmax):
        A1 = mk(dF)(ell)
        A2 = mk(m_right)(ell)
        B2 = mk(m_left)(ell)
        B = blocks[ell]
        # R_{l+1} [A1 | A2] = [A1 B | B2 B]
        lhs = np.hstack([A1, A2])
        rhs = np.hstack([A1 @ B, B2 @ B])
        sol, *_ = np.linalg.lstsq(lhs.T, rhs.T, rcond=None)
        blocks.append(sol.T)
    return blocks


def solve_trig_R(zeta, lam1, lam2, logq, lmax):
    """Blocks of R^q(zeta) on V_1 x V_2 for levels 0..lmax."""
    lams = [lam1, lam2]
    d1 = d2 = lmax + 1

    def dressed_F(vec, s1, s2, w1=1.0, w2=1.0):
        # w1 * F_q x q^{s1 H} + w2 * q^{s2 H} x F_q
        out = {}
        for key, c in vec.items():
            k1, k2 = key
            vadd(out, (k1 + 1, k2),
                 c * w1 * cmath.exp(s1 * (lams[1] - k2) * logq))
            vadd(out, (k1, k2 + 1),
                 c * w2 * cmath.exp(s2 * (lams[0] - k1) * logq))
        return out

    pairs = [
        (lambda v: dressed_F(v, +1, -1), lambda v: dressed_F(v, -1, +1)),
        (lambda v: dressed_F(v, -1, +1, 1.0, zeta),
         lambda v: dressed_F(v, +1, -1, 1.0, zeta)),
    ]
    blocks = [np.array([[1.0 + 0.0j]])]
    for ell in range(lmax):
        cols, rims = [], []
        B = blocks[ell]
        for right, left in pairs:
            A = _pair_matrix(right, ell, ell + 1, d1, d2)
            Bm = _pair_matrix(left, ell, ell + 1, d1, d2)
            cols.append(A)
            rims.append(Bm @ B)
        lhs = np.hstack(cols)
        rhs = np.hstack(rims)
        sol, *_ = np.linalg.lstsq(lhs.T, rhs.T, rcond=None)
        blocks.append(sol.T)
    return blocks


def singular_vector_coeffs(lam1, lam2, ell):
    """Coefficients c_k of the singular vector sum_k c_k F^k v1 x F^{ell-k} v2
    (classical), from E(s)=0 read off term by term; c_0 = 1."""
    c = [1.0 + 0.0j]
    for j in range(ell):
        num = -(ell - j) * (2 * lam2 - ell + j + 1)
        den = (j + 1) * (2 * lam1 - j)
        c.append(c[j] * num / den)
    return c


# ---------------------------------------------------------------------------
# printed small-case weight functions, hard-coded
# ---------------------------------------------------------------------------

def w1d(m, t, z, lams):
    """Rational one-variable weight function, m = 1..n."""
    m -= 1
    val = 1.0 / (t - z[m] - lams[m])
    for l in range(m):
        val *= (t - z[l] + lams[l]) / (t - z[l] - lams[l])
    return val


def sinp(x, p):
    return cmath.sin(cmath.pi * x / p)


def expp(x, p):
    return cmath.exp(cmath.pi * 1j * x / p)


def W1d(m, t, z, lams, p):
    """Trigonometric one-variable weight function, m = 1..n."""
    m -= 1
    val = expp(z[m] - t, p) / sinp(t - z[m] - lams[m], p)
    for l in range(m):
        val *= sinp(t - z[l] + lams[l], p) / sinp(t - z[l] - lams[l], p)
    return val


def W1d_sing(m, t, z, lams, p):
    """Singular combination W_m e^{-i pi Lam_m / p} - W_{m+1} e^{i pi Lam_{m+1}/p}."""
    return (W1d(m, t, z, lams, p) * expp(-lams[m - 1], p)
            - W1d(m + 1, t, z, lams, p) * expp(lams[m], p))


def w22(lpair, t1, t2, z, lams):
    """Rational weight functions for n = 2, ell = 2, printed form."""
    z1, z2 = z
    g1, g2 = lams
    if lpair == (2, 0):
        return (1.0 / ((t1 - z1 - g1) * (t2 - z1 - g1))
                * (t1 - t2) / (t1 - t2 + 1))
    if lpair == (1, 1):
        a = (1.0 / ((t1 - z1 - g1) * (t2 - z2 - g2))
             * (t2 - z1 + g1) / (t2 - z1 - g1))
        b = (1.0 / ((t2 - z1 - g1) * (t1 - z2 - g2))
             * (t1 - z1 + g1) / (t1 - z1 - g1)
             * (t1 - t2 - 1) / (t1 - t2 + 1))
        return a + b
    if lpair == (0, 2):
        return (1.0 / ((t1 - z2 - g2) * (t2 - z2 - g2))
                * ((t1 - z1 + g1) * (t2 - z1 + g1))
                / ((t1 - z1 - g1) * (t2 - z1 - g1))
                * (t1 - t2) / (t1 - t2 + 1))
    raise ValueError(lpair)


def W22(lpair, t1, t2, z, lams, p):
    """Trigonometric weight functions for n = 2, ell = 2, printed form."""
    z1, z2 = z
    g1, g2 = lams

    def s(x):
        return sinp(x, p)

    if lpair == (2, 0):
        return (expp(2 * z1 - t1 - t2, p) / (s(t1 - z1 - g1) * s(t2 - z1 - g1))
                * s(t1 - t2) / s(t1 - t2 + 1))
    if lpair == (1, 1):
        a = (expp(z1 + z2 - t1 - t2, p) / (s(t1 - z1 - g1) * s(t2 - z2 - g2))
             * s(t2 - z1 + g1) / s(t2 - z1 - g1))
        b = (expp(z1 + z2 - t1 - t2, p) / (s(t2 - z1 - g1) * s(t1 - z2 - g2))
             * s(t1 - z1 + g1) / s(t1 - z1 - g1)
             * s(t1 - t2 - 1) / s(t1 - t2 + 1))
        return a + b
    if lpair == (0, 2):
        return (expp(2 * z2 - t1 - t2, p) / (s(t1 - z2 - g2) * s(t2 - z2 - g2))
                * (s(t1 - z1 + g1) * s(t2 - z1 + g1))
                / (s(t1 - z1 - g1) * s(t2 - z1 - g1))
                * s(t1 - t2) / s(t1 - t2 + 1))
    raise ValueError(lpair)


def W22_sing(t1, t2, z, lams, p):
    """The singular combination at n = 2, ell = 2 (one-dimensional space)."""
    g1, g2 = lams
    return (W22((2, 0), t1, t2, z, lams, p) * expp(1 - 2 * g1, p)
            - W22((1, 1), t1, t2, z, lams, p) * expp(g2 - g1, p)
            + W22((0, 2), t1, t2, z, lams, p) * expp(2 * g2 - 1, p))


# ---------------------------------------------------------------------------
# fully naive symmetrized weight functions for any (n, ell): direct
# permutation sum with explicit inversion factors.
# ---------------------------------------------------------------------------

def _group_of(a, lvec):
    acc = 0
    for m, lm in enumerate(lvec):
        acc += lm
        if a < acc:
            return m
    raise IndexError(a)


def naive_w(lvec, ts, z, lams):
    """Rational weight function w_l(t, z), permutation sum over S_ell."""
    ell = len(ts)
    n = len(z)
    total = 0.0 + 0.0j
    for sigma in itertools.permutations(range(ell)):
        ts_s = [ts[sigma[a]] for a in range(ell)]
        term = 1.0 + 0.0j
        for m in range(n):
            term /= math.factorial(lvec[m])
        for a in range(ell):
            m = _group_of(a, lvec)
            term /= ts_s[a] - z[m] - lams[m]
            for l in range(m):
                term *= (ts_s[a] - z[l] + lams[l]) / (ts_s[a] - z[l] - lams[l])
        # bracket action factor: product over inversions of sigma
        for a in range(ell):
            for b in range(a + 1, ell):
                if sigma[a] > sigma[b]:
                    x = ts[sigma[b]] - ts[sigma[a]]
                    term *= (x - 1) / (x + 1)
        total += term
    return total


def naive_W(lvec, ts, z, lams, p):
    """Trigonometric weight function W_l(t, z), permutation sum."""
    ell = len(ts)
    n = len(z)
    total = 0.0 + 0.0j
    pref = 1.0 + 0.0j
    for m in range(n):
        for s in range(1, lvec[m] + 1):
            pref *= cmath.sin(cmath.pi / p) / cmath.sin(cmath.pi * s / p)
    for sigma in itertools.permutations(range(ell)):
        ts_s = [ts[sigma[a]] for a in range(ell)]
        term = 1.0 + 0.0j
        for a in range(ell):
            m = _group_of(a, lvec)
            term *= expp(z[m] - ts_s[a], p) / sinp(ts_s[a] - z[m] - lams[m], p)
            for l in range(m):
                term *= (sinp(ts_s[a] - z[l] + lams[l], p)
                         / sinp(ts_s[a] - z[l] - lams[l], p))
        for a in range(ell):
            for b in range(a + 1, ell):
                if sigma[a] > sigma[b]:
                    x = ts[sigma[b]] - ts[sigma[a]]
                    term *= sinp(x - 1, p) / sinp(x + 1, p)
        total += term
    return pref * total


def naive_W_sing(lvec, ts, z, lams, p):
    """Singular trigonometric weight function, lvec has n-1 entries."""
    ell = len(ts)
    n = len(z)
    total = 0.0 + 0.0j
    pref = 1.0 + 0.0j
    for m in range(n - 1):
        for s in range(1, lvec[m] + 1):
            pref *= (cmath.sin(cmath.pi / p) / cmath.sin(cmath.pi * s / p)
                     * sinp(z[m] - lams[m] - z[m + 1] - lams[m + 1] + s - 1, p))
    for sigma in itertools.permutations(range(ell)):
        ts_s = [ts[sigma[a]] for a in range(ell)]
        term = 1.0 + 0.0j
        for a in range(ell):
            m = _group_of(a, lvec)
            term /= (sinp(ts_s[a] - z[m] - lams[m], p)
                     * sinp(ts_s[a] - z[m + 1] - lams[m + 1], p))
            for l in range(m):
                term *= (sinp(ts_s[a] - z[l] + lams[l], p)
                         / sinp(ts_s[a] - z[l] - lams[l], p))
        for a in range(ell):
            for b in range(a + 1, ell):
                if sigma[a] > sigma[b]:
                    x = ts[sigma[b]] - ts[sigma[a]]
                    term *= sinp(x - 1, p) / sinp(x + 1, p)
        total += term
    return pref * total


def naive_phi(t, z, lams, p, mu):
    """Full phase function as a plain product of gamma ratios (mpmath)."""
    import mpmath as mp
    ell = len(t)
    n = len(z)
    val = mp.exp(mu * sum(t) / p)
    for a in range(ell):
        for m in range(n):
            val *= (mp.gamma((t[a] - z[m] + lams[m]) / p)
                    / mp.gamma((t[a] - z[m] - lams[m]) / p))
    for a in range(ell):
        for b in range(a + 1, ell):
            val *= (mp.gamma((t[a] - t[b] - 1) / p)
                    / mp.gamma((t[a] - t[b] + 1) / p))
    return complex(val)


# ---------------------------------------------------------------------------
# Barnes-type integrals by brute quadrature (mpmath)
# ---------------------------------------------------------------------------

def barnes_first_lhs(a, u, cutoff=60, digits=12):
    """integral over the imaginary axis of Gamma(a+s)Gamma(a-s)u^{2s} ds."""
    import mpmath as mp
    mp.mp.dps = 25

    def f(y):
        s = 1j * y
        return mp.gamma(a + s) * mp.gamma(a - s) * mp.power(u, 2 * s)

    val = mp.quad(f, [-cutoff, 0, cutoff])
    return complex(1j * val)


def barnes_second_lhs(a, b, c, d, cutoff=60):
    import mpmath as mp
    mp.mp.dps = 25

    def f(y):
        s = 1j * y
        return (mp.gamma(a + s) * mp.gamma(b + s)
                * mp.gamma(c - s) * mp.gamma(d - s))

    val = mp.quad(f, [-cutoff, 0, cutoff])
    return complex(1j * val)
