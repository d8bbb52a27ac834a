"""Piecewise paths in the complex x-plane: lines, circular arcs, crossings."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class Line:
    start: complex
    end: complex

    def at(self, t: float) -> complex:
        return self.start + t * (self.end - self.start)

    def tangent(self, t: float) -> complex:
        return self.end - self.start

    @property
    def length(self) -> float:
        return abs(self.end - self.start)

    def reversed(self) -> "Line":
        return Line(self.end, self.start)

    def scaled_rotated(self, factor: complex) -> "Line":
        return Line(self.start * factor, self.end * factor)

    def conjugated(self) -> "Line":
        return Line(np.conj(self.start), np.conj(self.end))


@dataclass(frozen=True)
class Arc:
    """Circular arc; theta sweeps linearly from theta0 to theta1.

    The sweep may exceed a full turn, in which case the same geometric point
    is traversed several times (used for multi-loop legs around 0).
    """

    center: complex
    radius: float
    theta0: float
    theta1: float

    def at(self, t: float) -> complex:
        th = self.theta0 + t * (self.theta1 - self.theta0)
        return self.center + self.radius * np.exp(1j * th)

    def tangent(self, t: float) -> complex:
        th = self.theta0 + t * (self.theta1 - self.theta0)
        return 1j * (self.theta1 - self.theta0) * self.radius * np.exp(1j * th)

    @property
    def start(self) -> complex:
        return self.at(0.0)

    @property
    def end(self) -> complex:
        return self.at(1.0)

    @property
    def length(self) -> float:
        return abs(self.theta1 - self.theta0) * self.radius

    def reversed(self) -> "Arc":
        return Arc(self.center, self.radius, self.theta1, self.theta0)

    def scaled_rotated(self, factor: complex) -> "Arc":
        rot = np.angle(factor)
        return Arc(self.center * factor, self.radius * abs(factor),
                   self.theta0 + rot, self.theta1 + rot)

    def conjugated(self) -> "Arc":
        return Arc(np.conj(self.center), self.radius, -self.theta0, -self.theta1)


Segment = Line | Arc


def line_with_detours(a: complex, b: complex, obstacles, radius: float):
    """Straight segment from a to b with semicircular detours.

    Any obstacle closer to the open segment than ``radius`` triggers an arc
    of that radius around it; the arc keeps to one side (sweep in (-pi, pi],
    counterclockwise when the obstacle sits exactly on the segment).
    """
    d = b - a
    L = abs(d)
    if L == 0.0:
        return []
    u = d / L
    hits = []
    for o in obstacles:
        s = ((o - a) / u).real
        dist = abs(o - (a + s * u))
        if dist < radius and 0.0 < s < L:
            hits.append((s, o, dist))
    hits.sort()
    segs = []
    cur = a
    for s, o, dist in hits:
        half = np.sqrt(radius * radius - dist * dist)
        p_in = a + (s - half) * u
        p_out = a + (s + half) * u
        th_in = np.angle(p_in - o)
        th_out = np.angle(p_out - o)
        sweep = (th_out - th_in) % TWO_PI
        if sweep > np.pi + 1e-12:
            sweep -= TWO_PI
        elif abs(sweep - np.pi) <= 1e-12:
            sweep = np.pi  # on-segment obstacle: counterclockwise by convention
        if abs(p_in - cur) > 1e-14:
            segs.append(Line(cur, p_in))
        segs.append(Arc(o, radius, th_in, th_in + sweep))
        cur = p_out
    if abs(b - cur) > 1e-14:
        segs.append(Line(cur, b))
    return segs


def path_points(segments, n_per_seg: int = 32):
    """Sample points along a segment list (for exports and reports)."""
    pts = []
    for seg in segments:
        ts = np.linspace(0.0, 1.0, n_per_seg, endpoint=False)
        pts.extend(seg.at(t) for t in ts)
    if segments:
        pts.append(segments[-1].at(1.0))
    return np.array(pts)


# ---------------------------------------------------------------------------
# transversal crossings between segments
# ---------------------------------------------------------------------------

_EDGE_TOL = 1e-9


def _arc_params(arc: Arc, point: complex):
    """All parameters t in (0,1) at which the arc passes through the point."""
    phi = np.angle(point - arc.center)
    span = arc.theta1 - arc.theta0
    out = []
    # enumerate phi + 2 pi m inside the swept interval
    m_lo = int(np.floor((min(arc.theta0, arc.theta1) - phi) / TWO_PI)) - 1
    m_hi = int(np.ceil((max(arc.theta0, arc.theta1) - phi) / TWO_PI)) + 1
    for m in range(m_lo, m_hi + 1):
        t = (phi + TWO_PI * m - arc.theta0) / span
        if _EDGE_TOL < t < 1.0 - _EDGE_TOL:
            out.append(float(t))
    return out


def _cross_line_line(s1: Line, s2: Line):
    d1 = s1.end - s1.start
    d2 = s2.end - s2.start
    denom = (d1 * np.conj(d2)).imag
    if abs(denom) < 1e-14 * abs(d1) * abs(d2):
        return []
    w = s2.start - s1.start
    t1 = (w * np.conj(d2)).imag / denom
    t2 = (w * np.conj(d1)).imag / denom
    if _EDGE_TOL < t1 < 1 - _EDGE_TOL and _EDGE_TOL < t2 < 1 - _EDGE_TOL:
        return [(t1, t2, s1.at(t1))]
    return []


def _cross_line_arc(line: Line, arc: Arc):
    d = line.end - line.start
    f = line.start - arc.center
    a = (d * np.conj(d)).real
    b = 2.0 * (f * np.conj(d)).real
    c = (f * np.conj(f)).real - arc.radius ** 2
    disc = b * b - 4.0 * a * c
    if disc <= 0.0:
        return []
    out = []
    for t1 in ((-b - np.sqrt(disc)) / (2 * a), (-b + np.sqrt(disc)) / (2 * a)):
        if not (_EDGE_TOL < t1 < 1 - _EDGE_TOL):
            continue
        p = line.at(t1)
        for t2 in _arc_params(arc, p):
            out.append((t1, t2, p))
    return out


def _cross_arc_arc(a1: Arc, a2: Arc):
    d = a2.center - a1.center
    dist = abs(d)
    r1, r2 = a1.radius, a2.radius
    if dist < 1e-13:
        return []  # concentric: either disjoint or degenerate overlap
    if dist > r1 + r2 or dist < abs(r1 - r2):
        return []
    # circle-circle intersection
    h2 = r1 * r1 - ((r1 * r1 - r2 * r2 + dist * dist) / (2 * dist)) ** 2
    if h2 <= 0.0:
        return []
    mid = a1.center + d * (r1 * r1 - r2 * r2 + dist * dist) / (2 * dist * dist)
    off = 1j * d / dist * np.sqrt(h2)
    out = []
    for p in (mid + off, mid - off):
        for t1 in _arc_params(a1, p):
            for t2 in _arc_params(a2, p):
                out.append((t1, t2, p))
    return out


def segment_crossings(s1: Segment, s2: Segment):
    """Interior transversal crossings (t1, t2, point) of two segments."""
    if isinstance(s1, Line) and isinstance(s2, Line):
        return _cross_line_line(s1, s2)
    if isinstance(s1, Line) and isinstance(s2, Arc):
        return _cross_line_arc(s1, s2)
    if isinstance(s1, Arc) and isinstance(s2, Line):
        return [(t1, t2, p) for (t2, t1, p) in _cross_line_arc(s2, s1)]
    return _cross_arc_arc(s1, s2)
