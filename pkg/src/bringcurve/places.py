"""Puiseux desingularization: places of the curve over special x-values.

A place is a point of the desingularized curve: a projective center plus a
truncated local parameterization t -> (x(t), y(t)).  The leading exponents
come from the Newton polygon of the recentered equation; subsequent terms are
lifted by Newton iteration in truncated series arithmetic (the series version
of undetermined coefficients).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import series as S
from .continuation import INFINITY, SINGULAR_FIBER_XS, branch_points
from .curves import ZETA5, hulek_craig_curve

_CURVE = hulek_craig_curve()


@dataclass(frozen=True)
class Place:
    """Desingularized point with a truncated Puiseux parameterization.

    ``x_series`` and ``y_series`` are Laurent series in the local parameter t
    (integer exponents; the ramification has been cleared by the t -> t^e
    substitution).  ``ram_index`` is the number of sheets of the x-cover
    meeting at the place.
    """

    center: tuple
    ram_index: int
    x_series: dict
    y_series: dict
    branch_label: str = ""

    def x_of(self, t):
        return S.evaluate(self.x_series, t)

    def y_of(self, t):
        return S.evaluate(self.y_series, t)

    def projective_of(self, t):
        """Homogeneous representative [x(t), y(t), 1] with poles cleared."""
        m = max(0, -min(S.valuation(self.x_series) or 0, S.valuation(self.y_series) or 0))
        x = S.evaluate(self.x_series, t) * t ** m
        y = S.evaluate(self.y_series, t) * t ** m
        return np.array([x, y, t ** m])

    def curve_residual(self, t: float = 0.05) -> float:
        """|C| at the parameterized point, normalized to unit max coordinate."""
        p = self.projective_of(t)
        p = p / np.max(np.abs(p))
        return float(abs(_CURVE.evaluate(p)))


# ---------------------------------------------------------------------------
# Newton polygon + Hensel lifting at a recentered equation F(s, w) = 0
# ---------------------------------------------------------------------------

def _newton_polygon_branches(F, tol=1e-12):
    """Leading terms w ~ c t^q with s = t^p from the lower Newton polygon.

    Walks the lower hull of the support from the w-axis down to the s-axis.
    An edge from (i1, j1) to (i2, j2) carries branches w ~ c s^(di/dj) with
    c a nonzero root of the edge polynomial; every edge root is simple for
    the centers this curve needs (p-fold root families c, zeta_p c, ... are
    normalizations of one and the same place).
    """
    from math import gcd

    pts = sorted({(i, j) for (i, j), c in F.items() if abs(c) > tol})
    cur = min((p for p in pts if p[0] == min(q[0] for q in pts)), key=lambda p: p[1])
    out = []
    while cur[1] > 0:
        best = None
        for p in pts:
            if p[1] >= cur[1] or p[0] <= cur[0]:
                continue
            slope = (p[1] - cur[1]) / (p[0] - cur[0])
            if best is None or slope < best[0] - 1e-15 or \
                    (abs(slope - best[0]) < 1e-15 and p[0] > best[1][0]):
                best = (slope, p)
        if best is None:
            break
        slope, nxt = best
        di, dj = nxt[0] - cur[0], cur[1] - nxt[1]
        g = gcd(di, dj)
        q, p_ = di // g, dj // g
        edge = [pt for pt in pts if cur[0] <= pt[0] <= nxt[0]
                and abs((pt[1] - cur[1]) - slope * (pt[0] - cur[0])) < 1e-12]
        jmin = min(pt[1] for pt in edge)
        deg = max(pt[1] for pt in edge) - jmin
        poly = np.zeros(deg + 1, dtype=complex)
        for (i, j) in edge:
            poly[deg - (j - jmin)] = F[(i, j)]
        for c in np.roots(poly):
            if abs(c) > tol:
                out.append((p_, q, complex(c)))
        cur = nxt
    return out


def _lift_branch(F, p, q, c, order):
    """Newton-iterate w(t) from its leading term c t^q; s = t^p exactly."""
    w = {q: c}
    Fw = S.derivative_w(F)
    for _ in range(12):
        num = S.compose_bivariate(F, p, w, order)
        if not num:
            break
        den = S.compose_bivariate(Fw, p, w, order)
        corr = S.mul(num, S.reciprocal(den, order), order)
        if not S.clean(corr):
            break
        w = S.clean(S.add(w, S.scale(corr, -1.0)))
    return w


def _recenter(x0, y0):
    """Affine curve recentered: F(s, w) = C(x0 + s, y0 + w) as a coeff dict."""
    # affine curve x y^5 + x + x^2 y^2 - x^4 y - 2 y^3 expanded around (x0, y0)
    import itertools

    base = {(1, 5): 1.0, (1, 0): 1.0, (2, 2): 1.0, (4, 1): -1.0, (0, 3): -2.0}
    out = {}
    for (a, b), coef in base.items():
        for i in range(a + 1):
            for j in range(b + 1):
                c = (coef * _binom(a, i) * x0 ** (a - i)
                     * _binom(b, j) * y0 ** (b - j))
                if c != 0:
                    out[(i, j)] = out.get((i, j), 0.0) + c
    return S.clean(out, tol=1e-13)


def _binom(n, k):
    from math import comb

    return comb(n, k)


# ---------------------------------------------------------------------------
# places over the supported x-values
# ---------------------------------------------------------------------------

def places_over(x0, order_terms: int = 8):
    """All places of the desingularized curve above x0.

    Supported x0: 0, infinity, the singular-fiber values zeta^k, and the ten
    finite nonzero branch points.  The ramification indices over each x0 sum
    to 5.
    """
    if x0 is None or x0 == INFINITY:
        return _places_at_infinity(order_terms)
    x0 = complex(x0)
    if abs(x0) < 1e-12:
        return _places_at_zero(order_terms)
    if any(abs(x0 - s) < 1e-9 for s in SINGULAR_FIBER_XS):
        return _places_at_singular_fiber(x0, order_terms)
    if any(abs(x0 - b) < 1e-9 for b in branch_points()[1:-1]):
        return _places_at_branch_point(x0, order_terms)
    raise ValueError(f"x0 = {x0} is not a special fiber of the cover")


def _finite_place(x0, y0, p, q, c, order, label=""):
    F = _recenter(x0, y0)
    w = _lift_branch(F, p, q, c, order)
    x_series = {0: x0, p: 1.0}
    if abs(x0) < 1e-14:
        x_series = {p: 1.0}
    y_series = S.add({0: y0}, w) if abs(y0) > 1e-14 else w
    return Place(center=(x0, y0, 1.0), ram_index=p,
                 x_series=S.clean(x_series), y_series=S.clean(y_series),
                 branch_label=label)


def _places_at_zero(order):
    # [0,0,1]: three sheets, y ~ (x/2)^(1/3); one Newton-polygon branch
    F = _recenter(0.0, 0.0)
    branches = list(_newton_polygon_branches(F))
    places = []
    for (p, q, c) in branches:
        if abs(c.imag) < 1e-9 and c.real > 0:  # principal real branch
            places.append(_finite_place(0.0, 0.0, p, q, c, q + 8 * p,
                                        label="[0,0,1]"))
    # [0,1,0]: two sheets; work in the chart y = 1, curve C(X, 1, Z) with
    # w = X, s = Z: X + X Z^5 + X^2 Z^2 - X^4 Z - 2 Z^3 = 0, X ~ 2 Z^3
    F010 = {(0, 1): 1.0, (5, 1): 1.0, (2, 2): 1.0, (1, 4): -1.0, (3, 0): -2.0}
    (p, q, c) = next(b for b in _newton_polygon_branches(F010)
                     if abs(b[2].imag) < 1e-9 and b[2].real > 0)
    N = q + 8 * p + 10
    Xs = _lift_branch(F010, p, q, c, N)        # X(t), with Z = t exactly
    t_recip = {-1: 1.0}
    x_series = S.mul(Xs, t_recip, N)           # x = X/Z ~ 2 t^2
    places.append(Place(center=(0.0, 1.0, 0.0), ram_index=2,
                        x_series=S.clean(x_series), y_series={-1: 1.0},
                        branch_label="[0,1,0]"))
    return places


def _places_at_infinity(order):
    # chart X = 1: curve y^5 + z^5 + y^2 z^2 - y z - 2 y^3 z^3 = 0
    # branch y ~ z^4 (one sheet): s = z, w = y
    F1 = {(0, 5): 1.0, (5, 0): 1.0, (2, 2): 1.0, (1, 1): -1.0, (3, 3): -2.0}
    N = 40
    w = _lift_branch(F1, 1, 4, 1.0, N)          # y(t), z = t
    x_series = {-1: 1.0}                        # x = 1/z
    y_series = S.mul(w, {-1: 1.0}, N)           # y_aff = y/z ~ t^3
    p1 = Place(center=(1.0, 0.0, 0.0), ram_index=1,
               x_series=x_series, y_series=S.clean(y_series),
               branch_label="[1,0,0]_1")
    # branch z ~ y^4 (four sheets): s = y, w = z; swap variable roles
    F2 = {(j, i): c for (i, j), c in F1.items()}
    w2 = _lift_branch(F2, 1, 4, 1.0, N)         # z(t), y = t
    x_series2 = S.reciprocal(w2, N)             # x = 1/z ~ t^-4
    y_series2 = S.mul(x_series2, {1: 1.0}, N)   # y_aff = y/z = t/z ~ t^-3
    p2 = Place(center=(1.0, 0.0, 0.0), ram_index=4,
               x_series=S.clean(x_series2), y_series=S.clean(y_series2),
               branch_label="[1,0,0]_2")
    return [p1, p2]


def _places_at_singular_fiber(x0, order):
    """Five unramified places over a zeta^k fiber; the node resolves to two."""
    k = int(round((np.angle(x0) % (2 * np.pi)) / (2 * np.pi / 5))) % 5
    y_node = ZETA5 ** (2 * k)
    places = []
    F = _recenter(x0, y_node)
    for (p, q, c) in _newton_polygon_branches(F):
        places.append(_finite_place(x0, y_node, p, q, c, q + 8 * p,
                                    label=f"node slope {c:.4f}"))
    # remaining simple roots of the fiber quintic
    coeffs = np.array([x0, 0.0, -2.0, x0 * x0, -(x0 ** 4), x0], dtype=complex)
    for y0 in np.roots(coeffs):
        if abs(y0 - y_node) < 1e-6:
            continue
        F0 = _recenter(x0, y0)
        (p, q, c) = next(iter(_newton_polygon_branches(F0)))
        places.append(_finite_place(x0, y0, p, q, c, q + 8 * p))
    _check_total_ramification(places)
    return places


def _places_at_branch_point(b, order):
    """One square-root place plus three unramified places."""
    coeffs = np.array([b, 0.0, -2.0, b * b, -(b ** 4), b], dtype=complex)
    ys = np.roots(coeffs)
    d = np.abs(ys[:, None] - ys[None, :]) + np.eye(5) * 1e18
    i, j = np.unravel_index(np.argmin(d), d.shape)
    y_double = 0.5 * (ys[i] + ys[j])
    places = []
    F = _recenter(b, y_double)
    branch = [br for br in _newton_polygon_branches(F) if br[0] == 2]
    p, q, c = branch[0]
    places.append(_finite_place(b, y_double, p, q, c, q + 8 * p, label="sqrt"))
    for idx, y0 in enumerate(ys):
        if idx in (i, j):
            continue
        F0 = _recenter(b, complex(y0))
        (p, q, c) = next(iter(_newton_polygon_branches(F0)))
        places.append(_finite_place(b, complex(y0), p, q, c, q + 8 * p))
    _check_total_ramification(places)
    return places


def _check_total_ramification(places):
    total = sum(p.ram_index for p in places)
    if total != 5:
        raise AssertionError(f"ramification indices sum to {total}, expected 5")
