"""Rational and trigonometric R-matrices on two-factor products.

Both families of operators preserve the weight decomposition, so they are
stored drop by drop: for a weight drop k the subspace carries the frame
{F^{k-l} s_l : 0 <= l <= k}, where s_l is the singular vector of drop l
(killed by the raising generator), and the R-matrix acts on each frame line
by an explicit scalar.  A ``SpectralDecomposition`` holds these frames once
per pair of highest weights; evaluating at a spectral argument is then a
small similarity transform per drop.  This matters downstream, where the
difference operators evaluate R at many shifted arguments.

Frame columns are normalized so that the coefficient of F^l v1 (x) v2 in
s_l equals one.  That choice is a convention of this implementation, not a
canonical one.
"""

import cmath
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import (
    LinearOperator,
    ResonanceError,
    TruncationError,
    VermaFactor,
    qnum,
    weight_basis,
)

_POLE_TOL = 1e-8
_NULLSPACE_TOL = 1e-10


def _pair_states(k, d1, d2):
    """Monomial states F^a v1 (x) F^b v2 of drop k, ascending in a."""
    return [(a, k - a) for a in range(k + 1) if a < d1 and k - a < d2]


def _raise_matrix(k, lams, dims, flavor, log_q):
    """Matrix of the raising generator from drop k to drop k-1."""
    dom = _pair_states(k, *dims)
    cod = _pair_states(k - 1, *dims)
    pos = {s: i for i, s in enumerate(cod)}
    mat = np.zeros((len(cod), len(dom)), dtype=complex)
    lam1, lam2 = lams
    for j, (a, b) in enumerate(dom):
        if flavor == "classical":
            c1 = a * (2 * lam1 - a + 1)
            c2 = b * (2 * lam2 - b + 1)
        else:
            c1 = qnum(a, log_q) * qnum(2 * lam1 - a + 1, log_q) \
                * cmath.exp((lam2 - b) * log_q)
            c2 = cmath.exp(-(lam1 - a) * log_q) \
                * qnum(b, log_q) * qnum(2 * lam2 - b + 1, log_q)
        if a > 0 and (a - 1, b) in pos:
            mat[pos[(a - 1, b)], j] += c1
        if b > 0 and (a, b - 1) in pos:
            mat[pos[(a, b - 1)], j] += c2
    return mat


def _lower_matrix(k, lams, dims, flavor, log_q):
    """Matrix of the lowering generator from drop k to drop k+1."""
    dom = _pair_states(k, *dims)
    cod = _pair_states(k + 1, *dims)
    pos = {s: i for i, s in enumerate(cod)}
    mat = np.zeros((len(cod), len(dom)), dtype=complex)
    lam1, lam2 = lams
    for j, (a, b) in enumerate(dom):
        if flavor == "classical":
            c1 = c2 = 1.0
        else:
            c1 = cmath.exp((lams[1] - b) * log_q)
            c2 = cmath.exp(-(lams[0] - a) * log_q)
        if (a + 1, b) in pos:
            mat[pos[(a + 1, b)], j] += c1
        if (a, b + 1) in pos:
            mat[pos[(a, b + 1)], j] += c2
    return mat


def _nullspace(mat, tol=_NULLSPACE_TOL):
    _, sing, vh = np.linalg.svd(mat)
    cutoff = tol * max(1.0, sing[0] if sing.size else 0.0)
    null = [vh[i].conj() for i in range(vh.shape[0])
            if i >= sing.size or sing[i] < cutoff]
    return null


def _gram_diagonal(k, lams, dims, flavor, log_q):
    """Diagonal of the contravariant bilinear form on the drop-k monomials.

    The form makes the raising and lowering generators adjoint to each
    other (componentwise on the pair), and descendants of distinct singular
    vectors are orthogonal under it.  That yields a closed-form dual frame,
    sidestepping the ill-conditioned inversion of nearly parallel
    descendant columns.
    """
    def site_norm(a, lam):
        val = 1.0 + 0.0j
        for j in range(1, a + 1):
            if flavor == "classical":
                val *= j * (2 * lam - j + 1)
            else:
                val *= qnum(j, log_q) * qnum(2 * lam - j + 1, log_q)
        return val

    return np.array([site_norm(a, lams[0]) * site_norm(b, lams[1])
                     for a, b in _pair_states(k, *dims)])


@dataclass(frozen=True)
class DropData:
    """Frame data for one weight drop of the pair.

    ``frame`` keeps the contract normalization (unit coefficient on
    F^l v1 (x) v2); descendant columns grow factorially, so arithmetic uses
    the column-rescaled copy (conjugating a diagonal by the frame is
    unchanged under column rescaling).  The inverse comes from the
    contravariant-form dual frame rather than from matrix inversion; the
    rescaled frame's condition number is still reported as the measure of
    how close the descendant lines come to collapsing.
    """

    level: int
    states: tuple
    frame: np.ndarray      # columns F^{k-l} s_l, l = 0..k, monomial coords
    frame_scaled: np.ndarray
    frame_scaled_inv: np.ndarray
    drops: tuple           # origin drop l of each column
    cond: float


@dataclass(frozen=True)
class SpectralDecomposition:
    factor1: VermaFactor
    factor2: VermaFactor
    flavor: str
    log_q: complex
    max_level: int
    per_level: tuple       # DropData for k = 0..max_level
    zero_blocks: tuple     # quantum only: blocks of the zero-argument operator

    @property
    def weights(self):
        return (self.factor1.highest_weight, self.factor2.highest_weight)

    @property
    def weight_sum(self):
        return self.factor1.highest_weight + self.factor2.highest_weight

    def states(self, k):
        return self.per_level[k].states


def singular_vectors(factors, level, flavor="classical", q=None, log_q=None):
    """Kernel vectors of the raising generator at drops 0..level.

    Each vector is returned in the monomial coordinates of its drop subspace
    (states ascending in the first factor's power) and normalized so that
    the coefficient of F^l v1 (x) v2 equals one.
    """
    dec = spectral_decomposition(factors[0], factors[1], level,
                                 flavor=flavor, q=q, log_q=log_q)
    out = []
    for l in range(level + 1):
        data = dec.per_level[l]
        col = list(data.drops).index(l)
        out.append(data.frame[:, col].copy())
    return out


def spectral_decomposition(factor1, factor2, max_level, flavor="classical",
                           q=None, log_q=None):
    """Build (or fetch from cache) the frame data for a weight pair.

    Frames are immutable once built; a concurrent duplicate build is
    harmless, so the memoization needs no locking.
    """
    if flavor not in ("classical", "quantum"):
        raise ValueError("flavor must be 'classical' or 'quantum'")
    if flavor == "quantum":
        if log_q is None:
            if q is None:
                raise ValueError("quantum flavor needs q or log_q")
            log_q = cmath.log(q)
        elif q is not None and abs(cmath.exp(log_q) - q) > 1e-9 * abs(q):
            raise ValueError("q and log_q disagree")
    else:
        log_q = None
    if min(factor1.truncation, factor2.truncation) < max_level + 1:
        raise TruncationError(
            "truncation depth %d cannot hold drop %d states"
            % (min(factor1.truncation, factor2.truncation), max_level))
    return _build_decomposition(factor1, factor2, max_level, flavor, log_q)


@lru_cache(maxsize=None)
def _build_decomposition(factor1, factor2, max_level, flavor, log_q):
    lams = (factor1.highest_weight, factor2.highest_weight)
    dims = (factor1.truncation, factor2.truncation)
    columns = []           # columns[l] = current descendant of s_l
    per_level = []
    for k in range(max_level + 1):
        states = _pair_states(k, *dims)
        if k > 0:
            F = _lower_matrix(k - 1, lams, dims, flavor, log_q)
            columns = [F @ col for col in columns]
        if k == 0:
            s_k = np.array([1.0 + 0.0j])
        else:
            null = _nullspace(_raise_matrix(k, lams, dims, flavor, log_q))
            if len(null) != 1:
                raise ResonanceError(
                    "raising generator has a %d-dimensional kernel at drop "
                    "%d (degenerate highest weights)" % (len(null), k))
            s_k = null[0]
        columns.append(s_k)
        # Descendant lines of distinct singular vectors are orthogonal in
        # the contravariant form; enforcing that here strips the roundoff
        # component along lower lines, which otherwise gets amplified when
        # the lines are nearly parallel.
        gram = _gram_diagonal(k, lams, dims, flavor, log_q)
        norms = []
        for j, col in enumerate(columns):
            for _ in range(2):
                for i in range(j):
                    col = col - (columns[i] * gram) @ col / norms[i] \
                        * columns[i]
            columns[j] = col
            norm_j = (col * gram) @ col
            if abs(norm_j) <= 1e-12 * np.abs(col * gram * col).sum():
                raise ResonanceError(
                    "contravariant form degenerates on a descendant line "
                    "at drop %d" % k)
            norms.append(norm_j)
        top = columns[-1][states.index((k, 0))]
        if abs(top) < 1e-10 * np.linalg.norm(columns[-1]):
            raise ResonanceError(
                "singular vector at drop %d has no F^%d v1 (x) v2 "
                "component; cannot normalize" % (k, k))
        columns[-1] = columns[-1] / top
        norms[-1] = norms[-1] / top ** 2
        frame = np.column_stack(columns)
        scale = np.linalg.norm(frame, axis=0)
        scaled = frame / scale
        cond = np.linalg.cond(scaled)
        if not np.isfinite(cond) or cond > 1e12:
            raise ResonanceError(
                "descendant frame at drop %d is numerically singular "
                "(condition %.3g)" % (k, cond))
        dual = (scaled * gram[:, None]) / (np.array(norms) / scale ** 2)
        per_level.append(DropData(level=k, states=tuple(states), frame=frame,
                                  frame_scaled=scaled,
                                  frame_scaled_inv=dual.T,
                                  drops=tuple(range(k + 1)), cond=cond))
    zero_blocks = ()
    if flavor == "quantum":
        zero_blocks = tuple(
            _zero_argument_block(k, lams, dims, log_q)
            for k in range(max_level + 1))
    return SpectralDecomposition(factor1=factor1, factor2=factor2,
                                 flavor=flavor, log_q=log_q,
                                 max_level=max_level,
                                 per_level=tuple(per_level),
                                 zero_blocks=zero_blocks)


def _zero_argument_block(k, lams, dims, log_q):
    """Drop-k block of the zero-argument trigonometric operator.

    Diagonal part q^{2 Lam1 Lam2 - 2 H (x) H}; the nilpotent tail is a
    terminating series in (q^H F_q) (x) (q^{-H} E_q), which strictly raises
    the first factor's power, so powers beyond the drop vanish identically.
    """
    states = _pair_states(k, *dims)
    pos = {s: i for i, s in enumerate(states)}
    lam1, lam2 = lams
    q2 = cmath.exp(2 * log_q)
    nil = np.zeros((len(states), len(states)), dtype=complex)
    for j, (a, b) in enumerate(states):
        if (a + 1, b - 1) in pos:
            c = cmath.exp((lam1 - a - 1) * log_q) \
                * qnum(b, log_q) * qnum(2 * lam2 - b + 1, log_q) \
                * cmath.exp(-(lam2 - b + 1) * log_q)
            nil[pos[(a + 1, b - 1)], j] = c
    series = np.eye(len(states), dtype=complex)
    power = np.eye(len(states), dtype=complex)
    coeff = 1.0 + 0.0j
    for s in range(1, k + 1):
        power = nil @ power
        coeff *= (q2 - 1) ** 2 / (1 - q2 ** s)
        series = series + coeff * power
    diag = np.array([cmath.exp((2 * lam1 * lam2
                                - 2 * (lam1 - a) * (lam2 - b)) * log_q)
                     for a, b in states])
    return (diag[:, None] * series)


def _rational_eigenvalue(l, x, lam_sum):
    val = 1.0 + 0.0j
    for s in range(l):
        den = x - lam_sum + s
        if abs(den) < _POLE_TOL * max(1.0, abs(x)):
            raise ValueError("argument %s too close to pole at %s"
                             % (x, lam_sum - s))
        val *= (x + lam_sum - s) / den
    return val


def _trig_eigenvalue(l, zeta, lam_sum, log_q):
    val = 1.0 + 0.0j
    for s in range(l):
        den = 1 - zeta * cmath.exp((2 * lam_sum - 2 * s) * log_q)
        if abs(den) < _POLE_TOL * max(1.0, abs(zeta)):
            raise ValueError("argument %s too close to pole at %s"
                             % (zeta, cmath.exp((2 * s - 2 * lam_sum) * log_q)))
        val *= (1 - zeta * cmath.exp((2 * s - 2 * lam_sum) * log_q)) / den
    return val


def rational_blocks(x, decomposition):
    """Drop-k matrices of the rational R-matrix, k = 0..max_level."""
    if decomposition.flavor != "classical":
        raise ValueError("decomposition is not classical")
    lam_sum = decomposition.weight_sum
    out = []
    for data in decomposition.per_level:
        eig = np.array([_rational_eigenvalue(l, x, lam_sum)
                        for l in data.drops])
        out.append(data.frame_scaled @ (eig[:, None]
                                        * data.frame_scaled_inv))
    return out


def trig_blocks(zeta, decomposition):
    """Drop-k matrices of the trigonometric R-matrix, k = 0..max_level."""
    if decomposition.flavor != "quantum":
        raise ValueError("decomposition is not quantum")
    lam_sum = decomposition.weight_sum
    log_q = decomposition.log_q
    out = []
    for data, zero in zip(decomposition.per_level,
                          decomposition.zero_blocks):
        eig = np.array([_trig_eigenvalue(l, zeta, lam_sum, log_q)
                        for l in data.drops])
        out.append(zero @ data.frame_scaled @ (eig[:, None]
                                               * data.frame_scaled_inv))
    return out


def rational_R(x, decomposition, level=None):
    """The rational R-matrix on the drop-``level`` subspace of the pair."""
    if level is None:
        level = decomposition.max_level
    block = rational_blocks(x, decomposition)[level]
    return LinearOperator(level, level, block)


def trig_R(zeta, decomposition, q=None, level=None):
    """The trigonometric R-matrix on the drop-``level`` pair subspace."""
    if q is not None and decomposition.log_q is not None \
            and abs(cmath.exp(decomposition.log_q) - q) > 1e-9 * abs(q):
        raise ValueError("q disagrees with the decomposition")
    if level is None:
        level = decomposition.max_level
    block = trig_blocks(zeta, decomposition)[level]
    return LinearOperator(level, level, block)


def embed_pair(blocks, basis, site_a, site_b):
    """Act with per-drop pair blocks on factors (site_a, site_b) of a basis.

    Sites are 1-based.  The pair drop of every basis state must be covered
    by ``blocks``; with the default truncation depth this holds whenever the
    blocks were built to the basis level.
    """
    a, b = site_a - 1, site_b - 1
    if a == b:
        raise ValueError("sites must differ")
    pos = {idx: i for i, idx in enumerate(basis.indices)}
    d_a, d_b = basis.dims[a], basis.dims[b]
    out = np.zeros((basis.size, basis.size), dtype=complex)
    for col, idx in enumerate(basis.indices):
        s = idx[a] + idx[b]
        if s >= len(blocks):
            raise TruncationError(
                "pair drop %d not covered by the decomposition" % s)
        states = _pair_states(s, d_a, d_b)
        j = states.index((idx[a], idx[b]))
        block = blocks[s]
        new = list(idx)
        for i, (ka, kb) in enumerate(states):
            if block[i, j] == 0:
                continue
            new[a], new[b] = ka, kb
            out[pos[tuple(new)], col] += block[i, j]
    return out


def check_yang_baxter(flavor, params, x, y, level):
    """Relative residual of the triple exchange relation on three factors.

    Rational arguments: (x - y, x, y) on the factor pairs (1,2), (1,3),
    (2,3); trigonometric arguments: (x / y, x, y).
    """
    if params.n < 3:
        raise ValueError("need at least three factors")
    lams = params.lams[:3]
    basis = weight_basis(3, level, weights=lams, truncation=level + 2)
    f1, f2, f3 = basis.factors
    if flavor == "rational":
        args = {(1, 2): x - y, (1, 3): x, (2, 3): y}
        kw = {"flavor": "classical"}
        mk = rational_blocks
    elif flavor == "trig":
        if y == 0:
            raise ValueError("trigonometric arguments must be nonzero")
        args = {(1, 2): x / y, (1, 3): x, (2, 3): y}
        kw = {"flavor": "quantum", "log_q": params.log_q}
        mk = trig_blocks
    else:
        raise ValueError("flavor must be 'rational' or 'trig'")
    factors = {1: f1, 2: f2, 3: f3}
    embedded = {}
    for (i, j), arg in args.items():
        dec = spectral_decomposition(factors[i], factors[j], level, **kw)
        embedded[(i, j)] = embed_pair(mk(arg, dec), basis, i, j)
    lhs = embedded[(1, 2)] @ embedded[(1, 3)] @ embedded[(2, 3)]
    rhs = embedded[(2, 3)] @ embedded[(1, 3)] @ embedded[(1, 2)]
    scale = max(np.linalg.norm(lhs), 1e-300)
    return float(np.linalg.norm(lhs - rhs) / scale)
