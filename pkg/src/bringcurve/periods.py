"""Periods of the holomorphic differentials and the symmetric period matrix.

The four differentials (y^3 - x, x y^2 - 1, y - x^2, y(x^2 - y)) dx / dC/dy
are integrated along the basis cycles by Gauss-Legendre panels with adaptive
bisection; the canonical-basis periods give tau = B A^-1, which is a scalar
multiple of a fixed integer matrix.  The scalar is pinned by two Klein
j-invariant conditions evaluated from Eisenstein q-series.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .config import DEFAULT_CONFIG
from .continuation import solve_fiber, track
from .curves import affine_dx, affine_dy
from .geometry import Arc, Line
from .homology import CANONICAL_COMBINATIONS, Cycle

#: tau = tau0 * TAU_STRUCTURE for the symmetry-adapted canonical basis
TAU_STRUCTURE = np.array([
    [4, 1, -1, 1],
    [1, 4, 1, -1],
    [-1, 1, 4, 1],
    [1, -1, 1, 4],
], dtype=float)

#: j-invariant values pinning tau0: j(tau0) = -121945/32, j(5 tau0) = -25/2
J_AT_TAU0 = -121945.0 / 32.0
J_AT_5TAU0 = -12.5

#: action of (x, y) -> (zeta^2 x, zeta^4 y) on the differential basis
PHI_DIFFERENTIAL_ACTION = np.diag(np.exp(2j * np.pi / 5 * np.array([1, 4, 3, 2])))


@dataclass(frozen=True)
class Differential:
    """Holomorphic differential numerator(x, y) dx / (dC/dy), index 1..4."""

    index: int

    def numerator(self, x, y):
        if self.index == 1:
            return y ** 3 - x
        if self.index == 2:
            return y * y * x - 1.0
        if self.index == 3:
            return y - x * x
        if self.index == 4:
            return y * (x * x - y)
        raise ValueError("differential index must be 1..4")

    def at(self, x, y):
        """Value of the differential divided by dx."""
        return self.numerator(x, y) / affine_dy(x, y)


def holomorphic_differentials():
    return tuple(Differential(i) for i in range(1, 5))


def _numerators(x, y):
    """All four numerators stacked on the last axis (vectorized)."""
    return np.stack([y ** 3 - x, y * y * x - 1.0, y - x * x, y * (x * x - y)], axis=-1)


# ---------------------------------------------------------------------------
# quadrature along tracked legs
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=8)
def _gauss(order):
    nodes, weights = leggauss(order)
    return nodes, weights


def _subsegment(seg, t0, t1):
    if isinstance(seg, Line):
        return Line(seg.at(t0), seg.at(t1))
    return Arc(seg.center, seg.radius, seg.theta0 + t0 * (seg.theta1 - seg.theta0),
               seg.theta0 + t1 * (seg.theta1 - seg.theta0))


def _panel(seg, t0, t1, fiber_ys, my, order, config):
    """Gauss-Legendre estimate of the four integrals over seg[t0, t1].

    Returns the panel value and the tracked full fiber at t1.
    """
    nodes, weights = _gauss(order)
    ts = t0 + (nodes + 1.0) / 2.0 * (t1 - t0)
    loc = (ts - t0) / (t1 - t0)
    sub = _subsegment(seg, t0, t1)
    ys_end, samples = track([sub], fiber_ys, collect=[loc], config=config)
    xs = np.array([seg.at(t) for t in ts])
    yv = samples[0][:, my]
    dxdt = np.array([seg.tangent(t) for t in ts]) * (t1 - t0)
    f = _numerators(xs, yv) / affine_dy(xs, yv)[:, None] * dxdt[:, None]
    return (weights / 2.0) @ f, ys_end


def integrate_leg(seg, y0, config=DEFAULT_CONFIG, order=None, max_depth=10):
    """Adaptively bisected integrals of all four differentials over one leg."""
    order = order or config.quad_order
    fib = solve_fiber(seg.at(0.0))
    ys = np.asarray(fib.sheets)
    my = int(np.argmin(np.abs(ys - y0)))
    tol = config.quad_tol

    def recurse(t0, t1, ys_t0, whole, depth):
        tm = 0.5 * (t0 + t1)
        left, ys_tm = _panel(seg, t0, tm, ys_t0, my, order, config)
        right, _ = _panel(seg, tm, t1, ys_tm, my, order, config)
        if np.max(np.abs(left + right - whole)) < tol * (1.0 + np.max(np.abs(whole))) \
                or depth >= max_depth:
            return left + right
        return (recurse(t0, tm, ys_t0, left, depth + 1)
                + recurse(tm, t1, ys_tm, right, depth + 1))

    whole, _ = _panel(seg, 0.0, 1.0, ys, my, order, config)
    return recurse(0.0, 1.0, ys, whole, 0)


def cycle_integrals(cycle: Cycle, config=DEFAULT_CONFIG, order=None) -> np.ndarray:
    """The four periods of a closed cycle."""
    return sum(integrate_leg(seg, y0, config, order) for seg, y0 in cycle.legs)


def integrate(v: Differential, cycle: Cycle, config=DEFAULT_CONFIG, order=None) -> complex:
    """Period of a single differential along a closed cycle."""
    return complex(cycle_integrals(cycle, config, order)[v.index - 1])


# ---------------------------------------------------------------------------
# period matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PeriodData:
    """Unnormalized periods and the normalized period matrix.

    ``pi_alpha`` holds the periods over the geometric basis cycles;
    ``pi_canonical = CANONICAL_COMBINATIONS @ pi_alpha`` stacks A over B.
    """

    pi_alpha: np.ndarray
    pi_canonical: np.ndarray
    a_periods: np.ndarray
    b_periods: np.ndarray
    tau: np.ndarray
    tau0: complex
    tau_fit_residual: float

    def lattice_generators(self):
        """Columns-first generators (I | tau) of the normalized period lattice."""
        return np.eye(4), self.tau


def period_matrices(alphas, config=DEFAULT_CONFIG) -> PeriodData:
    """Integrate the differential basis over the canonical homology basis.

    Checks the Riemann relations (tau symmetric, Im tau positive definite)
    and fits the scalar tau0 in tau = tau0 * TAU_STRUCTURE by least squares.
    """
    pi_alpha = np.array([cycle_integrals(c, config) for c in alphas])
    pi_canonical = CANONICAL_COMBINATIONS @ pi_alpha
    A = pi_canonical[:4]
    B = pi_canonical[4:]
    if np.linalg.cond(A) > 1e12:
        raise ArithmeticError("a-period matrix is numerically singular")
    tau = np.linalg.solve(A.T, B.T).T  # B A^-1
    sym = np.max(np.abs(tau - tau.T))
    if sym > 1e-8:
        raise ArithmeticError(f"period matrix asymmetry {sym:.2e} exceeds tolerance")
    eigs = np.linalg.eigvalsh(tau.imag)
    if np.min(eigs) <= 0:
        raise ArithmeticError("Im(tau) is not positive definite")
    tau0 = complex(np.sum(tau * TAU_STRUCTURE) / np.sum(TAU_STRUCTURE ** 2))
    resid = float(np.max(np.abs(tau - tau0 * TAU_STRUCTURE)))
    return PeriodData(pi_alpha=pi_alpha, pi_canonical=pi_canonical,
                      a_periods=A, b_periods=B, tau=tau, tau0=tau0,
                      tau_fit_residual=resid)


def verify_symmetry_relation(M: np.ndarray, L: np.ndarray, pi: np.ndarray) -> float:
    """max |M Pi - Pi L| normalized by max |Pi|."""
    if M.shape[0] != pi.shape[0]:
        raise ValueError("homology action and period matrix bases disagree")
    return float(np.max(np.abs(M @ pi - pi @ L)) / np.max(np.abs(pi)))


def structured_a_matrix_fit(A: np.ndarray):
    """Fit A^T = diag(a_i) W with W rows (1, -1-z^k, 1+z^k+z^2k, z^-k).

    The order-5 symmetry forces this shape with k = (4, 1, 2, 3); returns the
    fitted scales and the relative residual.
    """
    z = np.exp(2j * np.pi / 5)
    ks = (4, 1, 2, 3)
    W = np.array([[1.0, -1.0 - z ** k, 1.0 + z ** k + z ** (2 * k), z ** (-k)]
                  for k in ks])
    AT = A.T
    scales = np.array([np.vdot(W[i], AT[i]) / np.vdot(W[i], W[i]) for i in range(4)])
    resid = float(np.max(np.abs(AT - scales[:, None] * W)) / np.max(np.abs(AT)))
    return scales, resid


# ---------------------------------------------------------------------------
# differential pullbacks and the period route to homology actions
# ---------------------------------------------------------------------------

def differential_action(proj_matrix: np.ndarray, n_samples: int = 12,
                        seed: int = 7) -> tuple[np.ndarray, float]:
    """Matrix L with pullback(v_j) = sum_k v_k L[k, j] for a projective map.

    Sampled at random curve points: the pullback of numerator dx / (dC/dy)
    under (x, y) -> (X, Y) given in homogeneous coordinates is evaluated via
    dX = (dX/dx + dX/dy * y'(x)) dx on the curve.  Returns L and the
    least-squares residual (tiny when the map is an automorphism).
    """
    rng = np.random.default_rng(seed)
    P = np.asarray(proj_matrix, dtype=complex)
    pts = []
    while len(pts) < n_samples:
        x = 0.8 * np.exp(2j * np.pi * rng.random())
        ys = np.asarray(solve_fiber(x).sheets)
        pts.append((x, ys[rng.integers(0, 5)]))
    V = np.zeros((n_samples, 4), dtype=complex)
    W = np.zeros((n_samples, 4), dtype=complex)
    for i, (x, y) in enumerate(pts):
        w = P @ np.array([x, y, 1.0])
        X, Y = w[0] / w[2], w[1] / w[2]
        yprime = -affine_dx(x, y) / affine_dy(x, y)
        dXdx = (P[0, 0] * w[2] - P[2, 0] * w[0]) / w[2] ** 2
        dXdy = (P[0, 1] * w[2] - P[2, 1] * w[0]) / w[2] ** 2
        dX = dXdx + dXdy * yprime
        V[i] = _numerators(x, y) / affine_dy(x, y)
        W[i] = _numerators(X, Y) / affine_dy(X, Y) * dX
    L, res, _, _ = np.linalg.lstsq(V, W, rcond=None)
    resid = float(np.max(np.abs(V @ L - W)) / np.max(np.abs(W)))
    return L, resid


def action_from_periods(L: np.ndarray, pi: np.ndarray, tol: float = 1e-6) -> np.ndarray:
    """Integer homology action M solving M Pi = Pi L.

    The 8x8 real system [Re Pi | Im Pi] is generically invertible, so M is
    determined; integrality of the solution certifies the result.
    """
    lhs = np.hstack([pi.real, pi.imag])
    pl = pi @ L
    rhs = np.hstack([pl.real, pl.imag])
    M = rhs @ np.linalg.inv(lhs)
    Mint = np.round(M).astype(int)
    err = np.max(np.abs(M - Mint))
    if err > tol:
        raise ArithmeticError(f"period-derived action is not integral (err {err:.2e})")
    return Mint


# ---------------------------------------------------------------------------
# Klein j-invariant via Eisenstein q-series
# ---------------------------------------------------------------------------

def klein_j(tau: complex, terms: int = 200) -> complex:
    """j(tau) = 1728 E4^3 / (E4^3 - E6^2) from q-expansions.

    The truncation leaves a tail below 1e-8 whenever Im tau >= 0.05; smaller
    imaginary parts are rejected rather than silently inaccurate.
    """
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    q = np.exp(2j * np.pi * tau)
    if abs(q) ** terms > 1e-10:
        raise ValueError("Im(tau) too small for the configured q-series truncation")
    n = np.arange(1, terms + 1, dtype=float)
    qn = q ** n
    e4 = 1.0 + 240.0 * np.sum(n ** 3 * qn / (1.0 - qn))
    e6 = 1.0 - 504.0 * np.sum(n ** 5 * qn / (1.0 - qn))
    return complex(1728.0 * e4 ** 3 / (e4 ** 3 - e6 ** 2))
