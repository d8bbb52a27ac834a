"""Analytic continuation of fibers of the 5-sheeted cover over the x-line.

The affine Hulek-Craig curve is a degree-5 polynomial in y whose roots are
tracked along piecewise paths in the x-plane by adaptive nearest-neighbour
matching with an ambiguity guard.  Monodromy permutations around the twelve
branch points are derived from standard lollipop loops.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_CONFIG
from .curves import ZETA5, affine_dy, affine_value, fiber_coefficients
from .geometry import Arc, Line, line_with_detours

INFINITY = complex(np.inf)

#: x-values of the resolved singular fibers; not branch points, but root
#: collisions in y happen there, so paths must keep clear of them too.
SINGULAR_FIBER_XS = tuple(ZETA5 ** k for k in range(5))


class ContinuationError(RuntimeError):
    """Sheet matching stayed ambiguous above the minimum step size."""


@dataclass(frozen=True)
class Fiber:
    """Ordered y-values over a regular base point."""

    base_x: complex
    sheets: tuple

    def __post_init__(self):
        if len(self.sheets) != 5:
            raise ValueError("a fiber consists of exactly 5 sheets")

    def residuals(self):
        return np.array([abs(affine_value(self.base_x, y)) for y in self.sheets])

    def min_gap(self) -> float:
        ys = np.asarray(self.sheets)
        d = np.abs(ys[:, None] - ys[None, :]) + np.eye(5) * 1e18
        return float(d.min())


@dataclass(frozen=True)
class PlanePath:
    """Piecewise path (lines and arcs) in the x-plane.

    Consecutive segments must share endpoints; branch-point clearance is the
    constructor's caller's responsibility and is enforced by the tracker's
    ambiguity guard at run time.
    """

    segments: tuple

    def __post_init__(self):
        for s1, s2 in zip(self.segments, self.segments[1:]):
            if abs(s1.at(1.0) - s2.at(0.0)) > 1e-9:
                raise ValueError("path segments are not contiguous")

    @property
    def start(self) -> complex:
        return self.segments[0].at(0.0)

    @property
    def end(self) -> complex:
        return self.segments[-1].at(1.0)


@dataclass(frozen=True)
class MonodromyDatum:
    branch_point: complex
    permutation: tuple

    def cycle_type(self):
        return cycle_type(self.permutation)


# ---------------------------------------------------------------------------
# fiber solving
# ---------------------------------------------------------------------------

def solve_fiber(x0: complex, polish: int = 2) -> Fiber:
    """All five y-roots over x0, Newton-polished, sorted by (Re, Im).

    x0 = 0 is rejected: the leading coefficient of the quintic degenerates.
    """
    if abs(x0) < 1e-12:
        raise ValueError("fiber is degenerate at x = 0")
    ys = _roots_at(x0, polish)
    order = np.lexsort((ys.imag, ys.real))
    return Fiber(x0, tuple(ys[order]))


def _roots_at(x0, polish: int = 2):
    ys = np.roots(fiber_coefficients(x0))
    for _ in range(polish):
        ys = ys - affine_value(x0, ys) / affine_dy(x0, ys)
    return ys


def _match(ys, roots, ambiguity_factor):
    """Bijective nearest match of tracked values onto fresh roots, or None."""
    d = np.abs(np.asarray(ys)[:, None] - roots[None, :])
    idx = np.argmin(d, axis=1)
    if len(set(idx.tolist())) != 5:
        return None
    part = np.partition(d, 1, axis=1)
    if np.any(part[:, 0] > ambiguity_factor * part[:, 1]):
        return None
    return idx


def track(segments, ys0, collect=None, config=DEFAULT_CONFIG):
    """Continue the 5 tracked y-values along a list of segments.

    Parameters
    ----------
    segments : sequence of Line/Arc
    ys0 : array-like of 5 complex
        Values over the first segment's start point.
    collect : list of arrays or None
        Per segment, increasing parameter values in (0, 1] at which the
        tracked values must be reported.

    Returns
    -------
    ys : (5,) array
        Tracked values over the final endpoint.
    samples : list of (len(collect[k]), 5) arrays (empty if collect is None)
    """
    ys = np.asarray(ys0, dtype=complex).copy()
    samples = []
    for k, seg in enumerate(segments):
        want = np.asarray(collect[k]) if collect is not None else np.empty(0)
        got = np.empty((len(want), 5), dtype=complex)
        wi = 0
        t = 0.0
        step = config.continuation_step
        while t < 1.0 - 1e-15:
            target = want[wi] if wi < len(want) else 1.0
            t2 = min(t + step, target)
            idx = _match(ys, _roots_at(seg.at(t2)), config.ambiguity_factor)
            if idx is None:
                step *= 0.5
                if step < config.continuation_min_step:
                    raise ContinuationError(
                        f"ambiguous sheet matching near x = {seg.at(t2):.6g}")
                continue
            ys = _roots_at(seg.at(t2))[idx]
            t = t2
            step = min(step * 1.4, config.continuation_step)
            if wi < len(want) and t >= target - 1e-15:
                got[wi] = ys
                wi += 1
        samples.append(got)
    return ys, samples


def continue_fiber(path, start: Fiber, config=DEFAULT_CONFIG):
    """Continue a full fiber along a path.

    Returns the end fiber (sheets listed in the start ordering, i.e. entry i
    is the continuation of start sheet i) and, when the path is closed, the
    induced permutation p with p[i] = j meaning start sheet i is carried onto
    start sheet j.
    """
    segments = path.segments if isinstance(path, PlanePath) else tuple(path)
    if abs(segments[0].at(0.0) - start.base_x) > 1e-9:
        raise ValueError("path does not start at the fiber's base point")
    ys, _ = track(segments, start.sheets, config=config)
    end_x = segments[-1].at(1.0)
    fiber = Fiber(end_x, tuple(ys))
    perm = None
    if abs(end_x - start.base_x) < 1e-9:
        idx = _match(ys, np.asarray(start.sheets), config.ambiguity_factor)
        if idx is None:
            raise ContinuationError("closed path did not return to the start fiber")
        perm = tuple(int(i) for i in idx)
    return fiber, perm


# ---------------------------------------------------------------------------
# permutation helpers
# ---------------------------------------------------------------------------

IDENTITY_PERM = (0, 1, 2, 3, 4)


def compose(p, q):
    """Permutation of 'p then q'."""
    return tuple(q[p[i]] for i in range(len(p)))


def inverse(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def cycle_type(p):
    seen = [False] * len(p)
    lens = []
    for i in range(len(p)):
        if seen[i]:
            continue
        n, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            n += 1
        lens.append(n)
    return tuple(sorted(lens, reverse=True))


# ---------------------------------------------------------------------------
# branch points and monodromy
# ---------------------------------------------------------------------------

def branch_points():
    """0, the ten roots of 256 x^10 - 837 x^5 + 3456, and infinity.

    The finite nonzero points are the fifth roots of (1674 +- 870 i sqrt 15)/1024,
    all of modulus (1.5 sqrt 6)^(1/5); they are listed in increasing argument,
    with 0 first and infinity last.
    """
    us = [(1674.0 + 870j * np.sqrt(15.0)) / 1024.0, (1674.0 - 870j * np.sqrt(15.0)) / 1024.0]
    pts = []
    for u in us:
        r = abs(u) ** 0.2
        a = np.angle(u) / 5.0
        pts.extend(r * np.exp(1j * (a + 2.0 * np.pi * k / 5.0)) for k in range(5))
    for p in pts:
        val = 256.0 * p ** 10 - 837.0 * p ** 5 + 3456.0
        if abs(val) > 1e-8:
            raise AssertionError(f"branch point {p} fails |p(x)| < 1e-8: {abs(val)}")
    pts.sort(key=lambda z: (np.angle(z) % (2.0 * np.pi), abs(z)))
    return [0j] + pts + [INFINITY]


def finite_nonzero_branch_points():
    return branch_points()[1:-1]


def branch_clearance() -> float:
    """A quarter of the closest spacing among the finite branch points."""
    pts = [0j] + finite_nonzero_branch_points()
    gaps = [abs(p - q) for i, p in enumerate(pts) for q in pts[i + 1:]]
    return 0.25 * min(gaps)


def detour_obstacles():
    """Points that continuation paths must keep clear of."""
    return finite_nonzero_branch_points() + list(SINGULAR_FIBER_XS)


def lollipop(base: complex, around: complex, loop_radius: float,
             detour_radius: float):
    """Loop from base around one point: arc to its argument, in, circle, back.

    The connector runs counterclockwise along the circle |x| = |base| to the
    target's argument, then radially; the loop circles once counterclockwise.
    """
    obstacles = [o for o in detour_obstacles() if abs(o - around) > 1e-12]
    segs = []
    th_b = np.angle(base)
    th = np.angle(around) if abs(around) > 0 else th_b
    sweep = (th - th_b) % (2.0 * np.pi)
    rb = abs(base)
    if sweep > 1e-12:
        segs.append(Arc(0.0, rb, th_b, th_b + sweep))
    ray_end = rb * np.exp(1j * th)
    if abs(around) < rb:
        entry = (abs(around) + loop_radius) * np.exp(1j * th)
        phi = th
    else:
        entry = (abs(around) - loop_radius) * np.exp(1j * th)
        phi = th + np.pi
    segs.extend(line_with_detours(ray_end, entry, obstacles, detour_radius))
    circle = Arc(around, loop_radius, phi, phi + 2.0 * np.pi)
    out = segs + [circle] + [s.reversed() for s in reversed(segs)]
    return PlanePath(tuple(out))


def monodromy(base_x: complex = 2.0, config=DEFAULT_CONFIG):
    """Monodromy permutations around every branch point.

    Sheets are labelled by the (Re, Im)-lexicographic order of the base
    fiber.  The infinity entry is the clockwise circle |x| = |base_x| (the
    counterclockwise loop around all finite points, reversed).  Because the
    lollipop connectors run counterclockwise from the base, the loops
    multiply to the identity when applied in decreasing-argument order:
    finite nonzero loops by decreasing argument, then the 0 loop, then the
    infinity loop.
    """
    base = solve_fiber(base_x)
    clear = branch_clearance()
    loop_r = 0.5 * clear
    detour_r = min(0.1, clear)
    data = []
    for b in branch_points()[:-1]:
        r = 0.15 if b == 0 else loop_r
        path = lollipop(base_x, b, r, detour_r)
        _, perm = continue_fiber(path, base, config=config)
        data.append(MonodromyDatum(b, perm))
    rb = abs(base_x)
    inf_path = PlanePath((Arc(0.0, rb, np.angle(base_x), np.angle(base_x) - 2.0 * np.pi),))
    _, perm_inf = continue_fiber(inf_path, base, config=config)
    data.append(MonodromyDatum(INFINITY, perm_inf))

    total = IDENTITY_PERM
    for d in data[1:-1][::-1] + [data[0], data[-1]]:
        total = compose(total, d.permutation)
    if total != IDENTITY_PERM:
        raise AssertionError(f"monodromy product relation violated: {total}")
    return data


def riemann_hurwitz_genus(data) -> int:
    """Genus from the ramification of the degree-5 cover."""
    ram = sum(sum(c - 1 for c in d.cycle_type()) for d in data)
    return (ram - 2 * 5 + 2) // 2
