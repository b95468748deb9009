"""Log-scale evaluation of the hypergeometric phase function.

The phase of one primitive factor is a ratio of two Gamma values,
Phi(x; a) = Gamma((x+a)/p) / Gamma((x-a)/p); the full phase multiplies one
such factor per (point, weight) pair, one per point pair with a = -1, and an
exponential mu-factor.  Everything here is accumulated as complex logarithms
and exponentiated as late as possible, which both avoids overflow (Gamma
grows superexponentially along real directions) and pins the branch: a sum
of principal log-Gammas is continuous wherever no individual argument
crosses the negative real axis.

The quasiclassical functions at the end are the h -> 0 degenerations: the
phase collapses onto a product of power factors with the branch fixed by
|arg(x/p)| < pi, and the weight functions collapse onto symmetrized products
of simple poles.
"""

import cmath
import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np
from scipy.special import loggamma

_POLE_TOL = 1e-8
_FACTORIAL_CAP = 6


@dataclass(frozen=True)
class LogValue:
    """A chosen branch of log(value).

    Addition and subtraction act on the logs, i.e. they multiply and divide
    the underlying values while keeping track of the accumulated branch.
    """
    log: complex

    @property
    def value(self):
        return cmath.exp(self.log)

    def __add__(self, other):
        return LogValue(self.log + other.log)

    def __sub__(self, other):
        return LogValue(self.log - other.log)


def _log_gamma(w):
    """Principal-branch log-Gamma with a pole guard at 0, -1, -2, ..."""
    w = complex(w)
    nearest = round(w.real)
    if nearest <= 0 and abs(w - nearest) < _POLE_TOL:
        raise ValueError(
            "Gamma argument %s within %g of pole %d" % (w, _POLE_TOL,
                                                        nearest))
    return complex(loggamma(w))


def log_primitive_phase(x, alpha, p):
    """log of Gamma((x+alpha)/p) / Gamma((x-alpha)/p)."""
    if alpha == 0:
        return LogValue(0j)
    return LogValue(_log_gamma((x + alpha) / p) - _log_gamma((x - alpha) / p))


def log_phase(t, params):
    """log of the full phase at points t = (t_1 ... t_ell).

    Factors: exp(mu * sum t_a / p), one primitive phase per (t_a, z_m) pair
    with shift parameter Lam_m, and one per ordered point pair (a < b) with
    shift parameter -1.
    """
    t = [complex(v) for v in t]
    if len(t) != params.ell:
        raise ValueError("expected %d points, got %d" % (params.ell, len(t)))
    p = params.p
    total = params.mu * sum(t) / p
    for ta in t:
        for m in range(params.n):
            total += log_primitive_phase(ta - params.z[m],
                                         params.lams[m], p).log
    for a in range(len(t)):
        for b in range(a + 1, len(t)):
            total += log_primitive_phase(t[a] - t[b], -1.0, p).log
    return LogValue(total)


# ---------------------------------------------------------------------------
# quasiclassical limit
# ---------------------------------------------------------------------------

def _log_power_base(x, p):
    """Principal log of x/p, rejecting the branch cut arg(x/p) = pi."""
    w = complex(x) / p
    if w.real < 0 and abs(w.imag) < 1e-12 * abs(w):
        raise ValueError("argument %s lies on the power branch cut" % x)
    return cmath.log(w)

def qcl_phase(u, y, eta, p, lams):
    """log of the limiting phase: exponential times pure power factors.

    Powers ((u_a - y_m)/p)^{2 Lam_m / p} and ((u_a - u_b)/p)^{-2/p} on the
    branch |arg(x/p)| < pi.
    """
    u = [complex(v) for v in u]
    y = [complex(v) for v in y]
    total = eta * sum(u) / p
    for ua in u:
        for ym, lam in zip(y, lams):
            total += (2 * lam / p) * _log_power_base(ua - ym, p)
    for a in range(len(u)):
        for b in range(a + 1, len(u)):
            total += (-2 / p) * _log_power_base(u[a] - u[b], p)
    return LogValue(total)


def qcl_w(l, u, y):
    """Limiting weight function: symmetrized product of simple poles.

    For the composition l = (l_1 ... l_n), each permuted block of l_m points
    contributes first-order poles at y_m, with a 1/l_m! multiplicity factor.
    """
    l = tuple(int(v) for v in l)
    u = [complex(v) for v in u]
    ell = sum(l)
    if len(u) != ell:
        raise ValueError("expected %d points, got %d" % (ell, len(u)))
    if ell > _FACTORIAL_CAP:
        raise ValueError("permutation sum capped at %d points"
                         % _FACTORIAL_CAP)
    bounds = np.cumsum((0,) + l)
    weight = 1.0
    for lm in l:
        weight /= math.factorial(lm)
    total = 0j
    for sigma in permutations(range(ell)):
        term = weight
        for m in range(len(l)):
            for a in range(bounds[m], bounds[m + 1]):
                term = term / (u[sigma[a]] - y[m])
        total += term
    return total


# ---------------------------------------------------------------------------
# vertical-line boundedness
# ---------------------------------------------------------------------------

def gamma_line_bound(alpha, s_max=50.0, samples=2001):
    """Sup of the two bounded Gamma combinations along a vertical line.

    For Re(alpha) > 0 both  (a^2+s^2)^{1-a} e^{-pi|s|} G(a+is) G(a-is)  and
    (a^2+s^2)^{-a} G(is+a)/G(is-a)  stay bounded over real s; the returned
    constant certifies quadrature tails along Re t = const contours.
    """
    alpha = complex(alpha)
    if alpha.real <= 0:
        raise ValueError("need Re(alpha) > 0")
    grid = np.linspace(-s_max, s_max, samples)
    best = 0.0
    for s in grid:
        base = cmath.log(alpha ** 2 + s ** 2)
        first = ((1 - alpha) * base - math.pi * abs(s)
                 + _log_gamma(alpha + 1j * s) + _log_gamma(alpha - 1j * s))
        second = (-alpha * base + _log_gamma(1j * s + alpha)
                  - _log_gamma(1j * s - alpha))
        best = max(best, abs(cmath.exp(first)), abs(cmath.exp(second)))
    return best
