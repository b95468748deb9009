"""Weight-function bases on the point configuration space.

The rational, trigonometric, and singular trigonometric weight functions are
symmetrizations of products of simple-pole factors: the symmetric group acts
on functions of (t_1, ..., t_ell) through a multiplicative cocycle built from
the inversion factors (t - t' - 1)/(t - t' + 1), or their sin-quotient
analogue in the trigonometric case, and each basis element is the orbit sum
of one ordered pole product.  Everything is evaluated pointwise and exactly
(direct ell! sums, capped at ell <= 6); no symbolic simplification happens.

On top of the bases the module provides the change-of-basis matrices to the
reference pole functions (solved numerically from sample points and checked
against closed-form determinants), the shuffle-type star products that glue
weight functions of disjoint parameter blocks, the discrete shift derivatives
D_a f = phi_a . (t_a -> t_a + p) f - f, and the sl2-type generator actions
(H, E, F and their q-analogues) on function evaluators.  The raising actions
are genuine limits: E extrapolates t_l -> infinity along a fixed ray, and its
q-analogue evaluates deep in the lower half plane where exp(2 pi i t_l / p)
is negligible.
"""

import cmath
from dataclasses import dataclass, replace
from itertools import permutations
from math import comb, factorial

import numpy as np

from .algebra import _dist_to_pZ, multi_indices

_POLE_TOL = 1e-8
_FACTORIAL_CAP = 6
_LIMIT_RADII = (1e3, 1e4, 1e5)
_LIMIT_DIRECTION = cmath.exp(0.7j)
_XI_DEPTHS = (5.0, 6.0)


class PoleError(ValueError):
    """Evaluation point within _POLE_TOL of a pole hyperplane."""


@dataclass(frozen=True)
class FunctionEvaluator:
    """An immutable function of (t_1, ..., t_arity), tagged with its flavor.

    ``evaluate`` takes a tuple of complex numbers; ``label`` records which
    basis element or composite the closure computes.  Evaluators close over
    immutable parameters only, so they are safe to call concurrently.
    """

    arity: int
    flavor: str  # "rational" or "trig"
    evaluate: object
    label: str = ""

    def __post_init__(self):
        if self.flavor not in ("rational", "trig"):
            raise ValueError("flavor must be 'rational' or 'trig'")

    def __call__(self, t):
        t = tuple(complex(x) for x in t)
        if len(t) != self.arity:
            raise ValueError(
                f"{self.label or 'evaluator'} expects {self.arity} points, "
                f"got {len(t)}")
        return self.evaluate(t)


def _sinp(x, p):
    return cmath.sin(cmath.pi * x / p)


def _check_cap(ell):
    if ell > _FACTORIAL_CAP:
        raise ValueError(
            f"direct S_ell summation is capped at ell <= {_FACTORIAL_CAP}")


def _check_index(index, parts, ell):
    index = tuple(int(v) for v in index)
    if len(index) != parts or any(v < 0 for v in index) or sum(index) != ell:
        raise ValueError(
            f"index {index} is not a composition of {ell} into {parts} parts")
    return index


def _owners(index):
    """Flat block map: position a (0-based) -> parameter slot (0-based)."""
    owner = []
    for m, count in enumerate(index):
        owner.extend([m] * count)
    return owner


def _guard_rational(t, params):
    for x in t:
        for m in range(params.n):
            if abs(x - params.z[m] - params.lams[m]) < _POLE_TOL:
                raise PoleError(f"t near pole z_{m + 1} + Lambda_{m + 1}")
    for a, x in enumerate(t):
        for b, y in enumerate(t):
            if a != b and abs(x - y - 1.0) < _POLE_TOL:
                raise PoleError("t_a - t_b near 1")


def _guard_trig(t, params):
    for x in t:
        for m in range(params.n):
            if _dist_to_pZ(x - params.z[m] - params.lams[m],
                           params.p) < _POLE_TOL:
                raise PoleError(f"t near pole z_{m + 1} + Lambda_{m + 1} + pZ")
    for a, x in enumerate(t):
        for b, y in enumerate(t):
            if a != b and _dist_to_pZ(x - y - 1.0, params.p) < _POLE_TOL:
                raise PoleError("t_a - t_b near 1 + pZ")


def _guard(t, params, flavor):
    if flavor == "rational":
        _guard_rational(t, params)
    else:
        _guard_trig(t, params)


def _rational_ratio(d):
    return (d - 1.0) / (d + 1.0)


def _trig_ratio(p):
    return lambda d: _sinp(d - 1.0, p) / _sinp(d + 1.0, p)


def _ratio_for(flavor, p):
    return _rational_ratio if flavor == "rational" else _trig_ratio(p)


def _apply_bracket(fn, sigma, t, ratio):
    """One term [fn]_sigma(t): permuted arguments times inversion factors."""
    term = fn(tuple(t[i] for i in sigma))
    for i in range(len(t)):
        for j in range(i + 1, len(t)):
            if sigma[i] > sigma[j]:
                term = term * ratio(t[sigma[j]] - t[sigma[i]])
    return term


def _sym_apply(fn, t, ratio):
    """Full orbit sum over S_ell of the bracket action on fn."""
    total = 0.0 + 0.0j
    for sigma in permutations(range(len(t))):
        total += _apply_bracket(fn, sigma, t, ratio)
    return total


def _sym_product_sum(rows, owner, t, ratio):
    """Orbit sum when the seed is a product over positions.

    rows[m][j] is the block-m pole factor at point t_j, so the seed value for
    a permutation sigma is prod_a rows[owner[a]][sigma[a]].
    """
    total = 0.0 + 0.0j
    for sigma in permutations(range(len(t))):
        term = 1.0 + 0.0j
        for a, ja in enumerate(sigma):
            term *= rows[owner[a]][ja]
        for i in range(len(t)):
            for j in range(i + 1, len(t)):
                if sigma[i] > sigma[j]:
                    term *= ratio(t[sigma[j]] - t[sigma[i]])
        total += term
    return total


def symmetric_action(sigma, f, params):
    """The bracket action of one permutation on an evaluator.

    ``sigma`` is a 1-based tuple: the new function reads its a-th argument
    from position sigma_a.  Rational evaluators get the rational inversion
    cocycle, trigonometric ones the sin-quotient cocycle.
    """
    sigma0 = tuple(int(v) - 1 for v in sigma)
    if sorted(sigma0) != list(range(f.arity)):
        raise ValueError("sigma must be a permutation of 1..arity")
    ratio = _ratio_for(f.flavor, params.p)

    def evaluate(t):
        return _apply_bracket(f.evaluate, sigma0, t, ratio)

    return FunctionEvaluator(f.arity, f.flavor, evaluate,
                             f"[{f.label}]_{sigma}")


# -- the three weight-function families ------------------------------------

def _rational_row(m, t, params):
    row = []
    for x in t:
        val = 1.0 / (x - params.z[m] - params.lams[m])
        for l in range(m):
            val *= (x - params.z[l] + params.lams[l]) \
                / (x - params.z[l] - params.lams[l])
        row.append(val)
    return row


def eval_w(l, t, params):
    """Rational weight function w_l at the points t."""
    t = tuple(complex(x) for x in t)
    l = _check_index(l, params.n, len(t))
    _check_cap(len(t))
    _guard_rational(t, params)
    rows = [_rational_row(m, t, params) for m in range(params.n)]
    pref = 1.0
    for count in l:
        pref /= factorial(count)
    return pref * _sym_product_sum(rows, _owners(l), t, _rational_ratio)


def _trig_row(m, t, params):
    p = params.p
    row = []
    for x in t:
        val = cmath.exp(1j * cmath.pi * (params.z[m] - x) / p) \
            / _sinp(x - params.z[m] - params.lams[m], p)
        for l in range(m):
            val *= _sinp(x - params.z[l] + params.lams[l], p) \
                / _sinp(x - params.z[l] - params.lams[l], p)
        row.append(val)
    return row


def _sin_ratio_prefactor(l, p):
    pref = 1.0 + 0.0j
    for count in l:
        for s in range(1, count + 1):
            pref *= cmath.sin(cmath.pi / p) / cmath.sin(cmath.pi * s / p)
    return pref


def eval_W(l, t, params):
    """Trigonometric weight function W_l at the points t."""
    t = tuple(complex(x) for x in t)
    l = _check_index(l, params.n, len(t))
    _check_cap(len(t))
    _guard_trig(t, params)
    rows = [_trig_row(m, t, params) for m in range(params.n)]
    pref = _sin_ratio_prefactor(l, params.p)
    return pref * _sym_product_sum(rows, _owners(l), t, _trig_ratio(params.p))


def _singular_row(m, t, params):
    p = params.p
    row = []
    for x in t:
        val = 1.0 / (_sinp(x - params.z[m] - params.lams[m], p)
                     * _sinp(x - params.z[m + 1] - params.lams[m + 1], p))
        for l in range(m):
            val *= _sinp(x - params.z[l] + params.lams[l], p) \
                / _sinp(x - params.z[l] - params.lams[l], p)
        row.append(val)
    return row


def eval_W_sing(l, t, params):
    """Singular trigonometric weight function W°_l; l has n - 1 parts."""
    if params.n < 2:
        raise ValueError("singular weight functions need n >= 2")
    t = tuple(complex(x) for x in t)
    l = _check_index(l, params.n - 1, len(t))
    _check_cap(len(t))
    _guard_trig(t, params)
    p = params.p
    pref = 1.0 + 0.0j
    for m, count in enumerate(l):
        gap = params.z[m] - params.lams[m] \
            - params.z[m + 1] - params.lams[m + 1]
        for s in range(1, count + 1):
            pref *= cmath.sin(cmath.pi / p) / cmath.sin(cmath.pi * s / p) \
                * _sinp(gap + s - 1, p)
    rows = [_singular_row(m, t, params) for m in range(params.n - 1)]
    return pref * _sym_product_sum(rows, _owners(l), t, _trig_ratio(p))


def permuted_basis(tau, l, flavor, params):
    """Evaluator of a tau-permuted basis element.

    ``tau`` is a 1-based permutation of 1..n; the permuted element is the
    unpermuted one with the (z, Lambda) pairs and the index read off in the
    order tau.  Flavors: "rational" (w), "trig" (W), "trig_singular" (W°,
    identity tau only — the permuted singular normalization is not pinned
    down by the construction, so it is not offered).
    """
    tau = tuple(int(v) for v in tau)
    if sorted(tau) != list(range(1, params.n + 1)):
        raise ValueError("tau must be a permutation of 1..n")
    identity = tau == tuple(range(1, params.n + 1))
    if flavor == "trig_singular":
        if not identity:
            raise ValueError("singular basis is available for identity tau "
                             "only")
        index = _check_index(l, params.n - 1, sum(l))
        return FunctionEvaluator(
            sum(index), "trig",
            lambda t: eval_W_sing(index, t, params),
            f"Wsing{index}")
    if flavor not in ("rational", "trig"):
        raise ValueError("flavor must be rational, trig, or trig_singular")
    index = _check_index(l, params.n, sum(l))
    if identity:
        target, label = params, f"{'w' if flavor == 'rational' else 'W'}{index}"
        perm_index = index
    else:
        target = replace(
            params,
            lams=tuple(params.lams[v - 1] for v in tau),
            z=tuple(params.z[v - 1] for v in tau))
        perm_index = tuple(index[v - 1] for v in tau)
        label = f"{'w' if flavor == 'rational' else 'W'}{index}^tau{tau}"
    base = eval_w if flavor == "rational" else eval_W
    return FunctionEvaluator(
        sum(index), flavor,
        lambda t: base(perm_index, t, target), label)


# -- reference pole functions and change-of-basis matrices -----------------

def _poly_P(index, u):
    """Symmetrized monomial: positions in block m carry the power m."""
    owner = _owners(index)
    total = 0.0 + 0.0j
    for sigma in permutations(range(len(u))):
        term = 1.0 + 0.0j
        for a, ja in enumerate(sigma):
            term *= u[ja] ** owner[a]
        total += term
    for count in index:
        total /= factorial(count)
    return total


def reference_function(kind, index, t, params):
    """Reference basis of simple pole products: kinds g, G, G°."""
    t = tuple(complex(x) for x in t)
    _check_cap(len(t))
    p = params.p
    if kind == "g":
        index = _check_index(index, params.n, len(t))
        _guard_rational(t, params)
        val = _poly_P(index, t)
        for m in range(params.n):
            for x in t:
                val /= x - params.z[m] - params.lams[m]
        for a in range(len(t)):
            for b in range(a + 1, len(t)):
                val *= (t[a] - t[b]) / (t[a] - t[b] + 1.0)
        return val
    if kind not in ("G", "Go"):
        raise ValueError("reference kind must be g, G, or Go")
    parts = params.n if kind == "G" else params.n - 1
    index = _check_index(index, parts, len(t))
    _guard_trig(t, params)
    # Half-period exponentials keep each row p-periodic against the n sine
    # denominators: n copies per point in the full space, n - 2 in the
    # singular one (both counts have the parity the sign flips require).
    copies = params.n if kind == "G" else params.n - 2
    xi = tuple(cmath.exp(2j * cmath.pi * x / p) for x in t)
    val = _poly_P(index, xi)
    for x in t:
        val *= cmath.exp(-1j * cmath.pi * copies * x / p)
        for m in range(params.n):
            val /= _sinp(x - params.z[m] - params.lams[m], p)
    for a in range(len(t)):
        for b in range(a + 1, len(t)):
            val *= _sinp(t[a] - t[b], p) / _sinp(t[a] - t[b] + 1.0, p)
    return val


def closed_determinant(kind, params):
    """Closed form of the basis-matrix determinant for kinds M, Mq, Mo."""
    n, ell, p = params.n, params.ell, params.p
    gaps = [params.z[l] - params.lams[l] - params.z[m] - params.lams[m]
            for l in range(n) for m in range(l + 1, n)]
    if kind == "M":
        val = 1.0 + 0.0j
        for s in range(ell):
            expo = comb(n + ell - s - 2, n - 1)
            for gap in gaps:
                val *= (gap + s) ** expo
        return val
    if kind == "Mq":
        dim = comb(n + ell - 1, n)
        val = (2j) ** (-(n * (n - 1) // 2) * dim) \
            * cmath.exp(1j * cmath.pi * sum(params.z) / p * dim)
        for s in range(ell):
            expo = comb(n + ell - s - 2, n - 1)
            for gap in gaps:
                val *= _sinp(gap + s, p) ** expo
        return val
    if kind == "Mo":
        val = (2j) ** (-((n - 1) * (n - 2) // 2) * comb(n + ell - 2, n - 1))
        for s in range(ell):
            expo = comb(n + ell - s - 3, n - 2)
            for gap in gaps:
                val *= _sinp(gap + s, p) ** expo
        return val
    raise ValueError("determinant kind must be M, Mq, or Mo")


@dataclass(frozen=True)
class BasisMatrixResult:
    kind: str
    indices: tuple
    matrix: np.ndarray
    closed_det: complex
    relative_error: float
    condition: float
    sample_points: tuple


_MATRIX_TARGETS = {
    "M": (eval_w, "g"),
    "Mq": (eval_W, "G"),
    "Mo": (eval_W_sing, "Go"),
}


def _draw_points(rng, ell, count):
    pts = []
    for _ in range(count):
        re = rng.uniform(-1.4, 1.4, ell)
        im = rng.uniform(0.15, 1.1, ell) * rng.choice((-1.0, 1.0), ell)
        pts.append(tuple(complex(a, b) for a, b in zip(re, im)))
    return pts


def basis_matrix(kind, params, sample_points=None, rng=None):
    """Solve a weight basis against its reference basis at sample points.

    Returns the matrix whose row l expands the weight function of index l in
    the reference functions, together with the closed-form determinant and
    the relative discrepancy of the numeric determinant against it.  Random
    sample sets are redrawn while the collocation matrix is ill-conditioned.
    """
    kind = {"M": "M", "Mq": "Mq", "Mo": "Mo", "M°": "Mo"}.get(kind)
    if kind is None:
        raise ValueError("matrix kind must be M, Mq, or Mo")
    if kind == "Mo" and params.n < 2:
        raise ValueError("singular basis matrix needs n >= 2")
    target, ref_kind = _MATRIX_TARGETS[kind]
    parts = params.n if kind != "Mo" else params.n - 1
    indices = multi_indices(parts, params.ell)
    dim = len(indices)
    rng = np.random.default_rng(11 if rng is None else rng)
    last_error = None
    for _ in range(30):
        pts = sample_points if sample_points is not None \
            else _draw_points(rng, params.ell, dim)
        if len(pts) != dim:
            raise ValueError(f"need exactly {dim} sample points")
        try:
            ref = np.array([[reference_function(ref_kind, mm, t, params)
                             for mm in indices] for t in pts])
            tgt = np.array([[target(ll, t, params) for ll in indices]
                            for t in pts])
        except PoleError as err:
            if sample_points is not None:
                raise
            last_error = err
            continue
        cond = np.linalg.cond(ref)
        if cond > 1e9 and sample_points is None:
            last_error = RuntimeError(f"collocation condition {cond:.2e}")
            continue
        matrix = np.linalg.solve(ref, tgt).T
        closed = closed_determinant(kind, params)
        numeric = np.linalg.det(matrix)
        rel = abs(numeric - closed) / max(abs(closed), 1e-300)
        return BasisMatrixResult(kind, tuple(indices), matrix, closed, rel,
                                 cond, tuple(pts))
    raise RuntimeError(
        f"no usable sample set for basis matrix {kind}: {last_error}")


# -- star products ---------------------------------------------------------

def primitive_w(m, count, params):
    """Single-parameter rational weight function in the block of z_m."""
    zm, lm = params.z[m - 1], params.lams[m - 1]

    def evaluate(t):
        def seed(s):
            val = 1.0 + 0.0j
            for x in s:
                den = x - zm - lm
                if abs(den) < _POLE_TOL:
                    raise PoleError(f"t near pole z_{m} + Lambda_{m}")
                val /= den
            return val
        return _sym_apply(seed, t, _rational_ratio) / factorial(count)

    return FunctionEvaluator(count, "rational", evaluate, f"w^({m})_({count})")


def primitive_W(m, count, params):
    """Single-parameter trigonometric weight function in the block of z_m."""
    zm, lm, p = params.z[m - 1], params.lams[m - 1], params.p
    pref = _sin_ratio_prefactor((count,), p)

    def evaluate(t):
        def seed(s):
            val = 1.0 + 0.0j
            for x in s:
                den = _sinp(x - zm - lm, p)
                if abs(den) < _POLE_TOL:
                    raise PoleError(f"t near pole z_{m} + Lambda_{m} + pZ")
                val *= cmath.exp(1j * cmath.pi * (zm - x) / p) / den
            return val
        return pref * _sym_apply(seed, t, _trig_ratio(p))

    return FunctionEvaluator(count, "trig", evaluate, f"W^({m})_({count})")


def star_product(kind, f, g, split, params):
    """Shuffle product of evaluators over a split of the parameter list.

    ``split`` names the (z, Lambda) pairs belonging to f — either an integer
    k (f owns the first k pairs) or a tuple of 1-based parameter indices.
    The cross factor couples exactly those parameters to the points fed to
    g.  The kind ("rational" or "trig") must match both flavors.
    """
    if kind not in ("rational", "trig"):
        raise ValueError("star product kind must be rational or trig")
    if f.flavor != kind or g.flavor != kind:
        raise ValueError("inconsistent split: evaluator flavors do not match")
    if isinstance(split, int):
        owned = tuple(range(split))
    else:
        owned = tuple(int(v) - 1 for v in split)
    if len(set(owned)) != len(owned) \
            or any(not 0 <= i < params.n for i in owned):
        raise ValueError("inconsistent split: not a sublist of 1..n")
    j, l = f.arity, g.arity
    _check_cap(j + l)
    ratio = _ratio_for(kind, params.p)
    left = tuple((params.z[i], params.lams[i]) for i in owned)

    def cross(x):
        val = 1.0 + 0.0j
        for zi, li in left:
            if kind == "rational":
                val *= (x - zi + li) / (x - zi - li)
            else:
                val *= _sinp(x - zi + li, params.p) \
                    / _sinp(x - zi - li, params.p)
        return val

    def evaluate(t):
        _guard(t, params, kind)

        def seed(s):
            val = f.evaluate(s[:j]) * g.evaluate(s[j:])
            for x in s[j:]:
                val *= cross(x)
            return val

        return _sym_apply(seed, t, ratio) / (factorial(j) * factorial(l))

    return FunctionEvaluator(j + l, kind, evaluate,
                             f"({f.label}){'*' if kind == 'trig' else '#'}"
                             f"({g.label})")


# -- discrete derivatives --------------------------------------------------

def connection_coefficient(a, t, params):
    """Multiplier phi_a of the shift t_a -> t_a + p (a <= ell) or
    z_m -> z_m + p (a = ell + m) in the phase-function shift equations."""
    t = tuple(complex(x) for x in t)
    if len(t) != params.ell:
        raise ValueError("need all ell points to evaluate phi_a")
    ell, p = params.ell, params.p
    if not 1 <= a <= ell + params.n:
        raise ValueError("a must lie in 1..ell + n")
    if a <= ell:
        x = t[a - 1]
        val = params.kappa
        for m in range(params.n):
            den = x - params.z[m] - params.lams[m]
            if abs(den) < _POLE_TOL:
                raise PoleError("phi_a pole: t_a near z_m + Lambda_m")
            val *= (x - params.z[m] + params.lams[m]) / den
        for b in range(a, ell):
            den = x - t[b] + 1.0
            if abs(den) < _POLE_TOL:
                raise PoleError("phi_a pole: t_a - t_b near -1")
            val *= (x - t[b] - 1.0) / den
        for b in range(a - 1):
            den = x - t[b] + 1.0 + p
            if abs(den) < _POLE_TOL:
                raise PoleError("phi_a pole: t_a - t_b near -1 - p")
            val *= (x - t[b] - 1.0 + p) / den
        return val
    m = a - ell - 1
    val = 1.0 + 0.0j
    for x in t:
        den = x - params.z[m] + params.lams[m] - p
        if abs(den) < _POLE_TOL:
            raise PoleError("phi pole: t_a near z_m - Lambda_m + p")
        val *= (x - params.z[m] - params.lams[m] - p) / den
    return val


def discrete_derivative(a, f, params):
    """D_a f = phi_a . (shift of t_a by p) f - f, for a t-direction a."""
    if not 1 <= a <= f.arity:
        raise ValueError("discrete derivative needs a t-direction 1..arity")
    if f.arity != params.ell:
        raise ValueError("evaluator arity must match ell for phi_a")

    def evaluate(t):
        shifted = t[:a - 1] + (t[a - 1] + params.p,) + t[a:]
        return connection_coefficient(a, t, params) * f.evaluate(shifted) \
            - f.evaluate(t)

    return FunctionEvaluator(f.arity, f.flavor, evaluate, f"D{a}[{f.label}]")


# -- generator actions on evaluators ---------------------------------------

def _neville_zero(xs, vals):
    """Value at 0 of the interpolating polynomial, plus an error estimate."""
    work = list(vals)
    previous = work[0]
    for stage in range(1, len(xs)):
        for i in range(len(xs) - stage):
            work[i] = (xs[i + stage] * work[i] - xs[i] * work[i + 1]) \
                / (xs[i + stage] - xs[i])
        previous, estimate = work[0], abs(work[0] - previous)
    return work[0], estimate


def _scalar_action(f, scalar, label):
    return FunctionEvaluator(f.arity, f.flavor,
                             lambda t: scalar * f.evaluate(t), label)


def _lower_rational(f, params):
    l = f.arity

    def evaluate(t):
        _guard_rational(t, params)

        def seed(s):
            head = s[0]
            big = 1.0 + 0.0j
            for m in range(params.n):
                big *= (head - params.z[m] + params.lams[m]) \
                    / (head - params.z[m] - params.lams[m])
            for x in s[1:]:
                big *= (head - x - 1.0) / (head - x + 1.0)
            return f.evaluate(s[1:]) * (big - 1.0)

        total = 0.0 + 0.0j
        for a in range(l + 1):
            sigma = list(range(l + 1))
            sigma[0], sigma[a] = sigma[a], sigma[0]
            total += _apply_bracket(seed, tuple(sigma), t, _rational_ratio)
        return total

    return FunctionEvaluator(l + 1, "rational", evaluate, f"F[{f.label}]")


def _lower_trig(f, params):
    l = f.arity
    sumlam = sum(params.lams)
    p = params.p
    pref = cmath.exp(-1j * cmath.pi * (l + sumlam) / p)
    lead = cmath.exp(2j * cmath.pi * l / p)
    tail = cmath.exp(2j * cmath.pi * sumlam / p)
    ratio = _trig_ratio(p)

    def evaluate(t):
        _guard_trig(t, params)

        def seed(s):
            head = s[0]
            big = lead
            for m in range(params.n):
                big *= _sinp(head - params.z[m] + params.lams[m], p) \
                    / _sinp(head - params.z[m] - params.lams[m], p)
            for x in s[1:]:
                big *= _sinp(head - x - 1.0, p) / _sinp(head - x + 1.0, p)
            return f.evaluate(s[1:]) * (big - tail)

        total = 0.0 + 0.0j
        for a in range(l + 1):
            sigma = list(range(l + 1))
            sigma[0], sigma[a] = sigma[a], sigma[0]
            total += _apply_bracket(seed, tuple(sigma), t, ratio)
        return pref * total

    return FunctionEvaluator(l + 1, "trig", evaluate, f"Fq[{f.label}]")


def _raise_rational(f, params):
    if f.arity == 0:
        return FunctionEvaluator(0, "rational", lambda t: 0.0 + 0.0j,
                                 f"E[{f.label}]")

    def evaluate(t):
        xs, vals = [], []
        for radius in _LIMIT_RADII:
            far = radius * _LIMIT_DIRECTION
            xs.append(1.0 / radius)
            vals.append(far * f.evaluate(t + (far,)))
        value, estimate = _neville_zero(xs, vals)
        if estimate > 1e-5 * max(1.0, abs(value)):
            raise ValueError(
                f"t -> infinity limit did not stabilize ({estimate:.2e})")
        return value

    return FunctionEvaluator(f.arity - 1, "rational", evaluate,
                             f"E[{f.label}]")


def _raise_trig(f, params):
    if f.arity == 0:
        return FunctionEvaluator(0, "trig", lambda t: 0.0 + 0.0j,
                                 f"Eq[{f.label}]")
    sumlam = sum(params.lams)
    p = params.p
    pref = -1.0 / (2j * cmath.sin(cmath.pi / p)) \
        * cmath.exp(1j * cmath.pi * (f.arity - 1 + sumlam) / p)

    def evaluate(t):
        # exp(2 pi i t_l / p) decays like exp(-2 pi depth) down the
        # imaginary axis, so two depths establish the constant term.
        vals = [f.evaluate(t + (-1j * depth * abs(p),))
                for depth in _XI_DEPTHS]
        if abs(vals[1] - vals[0]) > 1e-8 * max(1.0, abs(vals[1])):
            raise ValueError("xi -> 0 limit did not stabilize")
        return pref * vals[1]

    return FunctionEvaluator(f.arity - 1, "trig", evaluate, f"Eq[{f.label}]")


def fock_action(generator, f, params):
    """Action of a Cartan/raising/lowering generator on an evaluator.

    H and qH are scalars on fixed arity; F and Fq adjoin a point through the
    (l + 1)-term transposition sum; E and Eq remove the last point through
    the appropriate limit.
    """
    weight = sum(params.lams) - f.arity
    if generator == "H":
        return _scalar_action(f, weight, f"H[{f.label}]")
    if generator == "qH":
        return _scalar_action(f, cmath.exp(params.log_q * weight),
                              f"qH[{f.label}]")
    if generator in ("F", "E"):
        if f.flavor != "rational":
            raise ValueError(f"{generator} acts on rational evaluators")
        return (_lower_rational if generator == "F" else _raise_rational)(
            f, params)
    if generator in ("Fq", "Eq"):
        if f.flavor != "trig":
            raise ValueError(f"{generator} acts on trig evaluators")
        return (_lower_trig if generator == "Fq" else _raise_trig)(f, params)
    raise ValueError("generator must be one of H, E, F, qH, Eq, Fq")
