"""The symmetric homology basis of the branched cover.

Two explicit cycles are built geometrically and the order-5 automorphism
(x, y) -> (zeta^3 x, zeta y) generates the rest of the rank-8 basis.  Each
cycle goes out from the two-sheeted place over x = 0 along the positive real
axis, crosses the circle of finite branch points, winds around infinity,
comes back in along a rotated ray and closes up by winding around 0.  The
winding counts are found by search; the constructions below reproduce the
classical symmetry-adapted basis, as the frozen intersection matrix in the
test suite certifies.

Intersection numbers are counted on the x-plane projection: a crossing of
two legs contributes only when both cycles occupy the same sheet there, with
the sign of the tangent determinant.  Overlapping legs (the basis reuses
rays and circles) are separated by a tiny rigid scale-and-rotate perturbation
of one cycle, re-validated by continuation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_CONFIG
from .continuation import ContinuationError, detour_obstacles, solve_fiber, track
from .curves import ZETA5
from .geometry import Arc, Line, line_with_detours, segment_crossings

R_IN = 0.3    # base circle radius, inside the branch-point circle (~1.2973)
R_OUT = 2.0   # outer circle radius, outside it
DETOUR_RADIUS = 0.1

TWO_PI = 2.0 * np.pi

#: Rows are the alpha-coefficients of the canonical basis (a1..a4, b1..b4).
#: This conjugates the alpha intersection form to the standard symplectic
#: form J = [[0, I], [-I, 0]] exactly (see canonical_basis_change).
CANONICAL_COMBINATIONS = np.array([
    [1, 1, 1, 0, 1, 1, 1, 0],
    [0, -1, -1, -1, -1, -1, -1, -1],
    [0, 0, 0, 0, 1, 1, 1, 0],
    [0, -1, 0, 0, 0, -1, -1, -1],
    [-2, -1, -1, 1, -1, 0, 0, 1],
    [0, 1, 2, 2, 1, 0, 1, 1],
    [1, 1, 1, 0, -1, -1, 0, 1],
    [0, 1, -1, 0, -1, 1, 1, 2],
], dtype=int)

#: Symplectic transformation bringing the conjugation action on the
#: canonical basis to the normal form of an antiholomorphic involution with
#: one nondividing real oval.
REAL_NORMALIZER = np.array([
    [-1, 2, 1, 2, -1, 1, 0, 1],
    [0, 1, 0, -3, 0, 0, 0, -1],
    [-2, 1, 2, -1, 0, 1, 0, 0],
    [0, 0, -1, 0, -1, 0, -1, 0],
    [2, -2, -3, -2, 0, -1, -1, -1],
    [-1, 0, 1, 3, 0, 1, 0, 1],
    [1, -1, -1, -2, 0, -1, 0, -1],
    [-1, 2, 3, 2, 0, 1, 1, 1],
], dtype=int)

#: Normal form of the one-oval antiholomorphic involution on homology.
ONE_OVAL_FORM = np.block([
    [np.eye(4, dtype=int), np.eye(4, dtype=int)],
    [np.zeros((4, 4), dtype=int), -np.eye(4, dtype=int)],
])

SYMPLECTIC_J = np.block([
    [np.zeros((4, 4), dtype=int), np.eye(4, dtype=int)],
    [-np.eye(4, dtype=int), np.zeros((4, 4), dtype=int)],
])


@dataclass(frozen=True)
class Cycle:
    """Closed path on the cover: x-plane legs with the tracked y at each start."""

    legs: tuple

    @property
    def segments(self):
        return tuple(s for s, _ in self.legs)

    @property
    def start_point(self):
        seg, y = self.legs[0]
        return seg.at(0.0), y

    def to_jsonable(self):
        out = []
        for seg, y in self.legs:
            if isinstance(seg, Line):
                g = {"kind": "line", "start": [seg.start.real, seg.start.imag],
                     "end": [seg.end.real, seg.end.imag]}
            else:
                g = {"kind": "arc", "center": [seg.center.real, seg.center.imag],
                     "radius": seg.radius, "theta0": seg.theta0, "theta1": seg.theta1}
            fib = solve_fiber(seg.at(0.0))
            sheet = int(np.argmin(np.abs(np.asarray(fib.sheets) - y)))
            out.append({"segment": g, "sheet": sheet, "y": [y.real, y.imag]})
        return out


class CycleClosureError(RuntimeError):
    """A constructed or transformed cycle failed to close on itself."""


def _track_legs(segments, y_start, config=DEFAULT_CONFIG):
    """Continue along segments, recording the tracked y at each leg start."""
    fib = solve_fiber(segments[0].at(0.0))
    ys = np.asarray(fib.sheets)
    my = int(np.argmin(np.abs(ys - y_start)))
    if abs(ys[my] - y_start) > 1e-6 * (1.0 + abs(y_start)):
        raise CycleClosureError(f"start value {y_start} is not on the fiber")
    legs = []
    for seg in segments:
        legs.append((seg, complex(ys[my])))
        ys, _ = track([seg], ys, config=config)
    return legs, complex(ys[my])


def _build_closed(segments, y_start, config=DEFAULT_CONFIG) -> Cycle:
    legs, y_end = _track_legs(segments, y_start, config)
    if abs(y_end - y_start) > 1e-8 * (1.0 + abs(y_start)):
        raise CycleClosureError(f"cycle does not close: {y_end} vs {y_start}")
    return Cycle(tuple(legs))


def _ray_out(arg: float):
    return line_with_detours(R_IN * np.exp(1j * arg), R_OUT * np.exp(1j * arg),
                             detour_obstacles(), DETOUR_RADIUS)


def _ray_in(arg: float):
    return line_with_detours(R_OUT * np.exp(1j * arg), R_IN * np.exp(1j * arg),
                             detour_obstacles(), DETOUR_RADIUS)


def build_alpha_12(config=DEFAULT_CONFIG):
    """Construct the two generating cycles.

    The first cycle leaves x = 0 along the positive axis on the sheet with
    y >> 0, rounds infinity to the ray arg x = 2 pi/5 (arriving with
    arg y = 4 pi/5), and closes around 0.  The second leaves on the sheet
    with y << 0 and returns along arg x = -2 pi/5; there it must arrive on
    the two-sheeted place over x = 0 (the only sheets a winding around 0 can
    close from), which pins arg y = pi/5.  Winding counts around infinity
    and 0 are searched.
    """
    fib = solve_fiber(R_IN)
    ys = np.asarray(fib.sheets)
    y_plus = complex(ys[np.argmax(ys.real)])
    y_minus = complex(ys[np.argmin(ys.real)])
    a1 = _search_cycle(y_plus, 2.0 * np.pi / 5.0, np.pi * 4.0 / 5.0, config)
    a2 = _search_cycle(y_minus, -2.0 * np.pi / 5.0, np.pi / 5.0, config)
    return a1, a2


def _search_cycle(y_start, in_arg, expect_arg_y, config) -> Cycle:
    out = _ray_out(0.0)
    big = sorted(np.abs(np.asarray(solve_fiber(R_IN).sheets)))[-2]  # two-sheeted place scale
    for m_inf in (0, 1, -1, 2, -2):
        sweep_inf = in_arg % TWO_PI + TWO_PI * m_inf
        if abs(sweep_inf) < 1e-12 or abs(sweep_inf) > 2.5 * TWO_PI:
            continue
        head = out + [Arc(0.0, R_OUT, 0.0, sweep_inf)] + _ray_in(in_arg)
        legs, y_arr = _track_legs(head, y_start, config)
        if abs(y_arr) < 0.7 * big:
            continue  # arrived on the three-sheeted place: cannot close around 0
        darg = (np.angle(y_arr) - expect_arg_y + np.pi) % TWO_PI - np.pi
        if abs(darg) > 0.3:
            continue
        for m0 in (0, 1, -1, 2, -2):
            sweep0 = (-in_arg) % TWO_PI - TWO_PI + TWO_PI * m0
            if abs(sweep0) < 1e-12:
                continue
            segs = head + [Arc(0.0, R_IN, in_arg, in_arg + sweep0)]
            try:
                return _build_closed(segs, y_start, config)
            except CycleClosureError:
                continue
    raise CycleClosureError("no winding combination closes the cycle")


def transform_cycle(cycle: Cycle, xmul: complex, ymul: complex,
                    config=DEFAULT_CONFIG) -> Cycle:
    """Image of a cycle under the automorphism (x, y) -> (xmul x, ymul y).

    The map must scale the affine curve (any power of (x, y) -> (zeta x,
    zeta^2 y) does); sheet values are re-resolved against fresh fibers and
    the image is re-tracked to confirm closure.
    """
    segments = [s.scaled_rotated(xmul) for s, _ in cycle.legs]
    y0 = cycle.legs[0][1] * ymul
    return _build_closed(segments, y0, config)


def conjugate_cycle(cycle: Cycle, config=DEFAULT_CONFIG) -> Cycle:
    """Image under the antiholomorphic involution (x, y) -> (conj x, conj y)."""
    segments = [s.conjugated() for s, _ in cycle.legs]
    y0 = np.conj(cycle.legs[0][1])
    return _build_closed(segments, y0, config)


def alpha_basis(config=DEFAULT_CONFIG):
    """The eight basis cycles: the two generators and their rotations.

    Entries 2k+1, 2k+2 are the k-th images under (x, y) -> (zeta^3 x, zeta y).
    """
    a1, a2 = build_alpha_12(config)
    cycles = [a1, a2]
    for _ in range(3):
        cycles.append(transform_cycle(cycles[-2], ZETA5 ** 3, ZETA5, config))
        cycles.append(transform_cycle(cycles[-2], ZETA5 ** 3, ZETA5, config))
    return cycles


# ---------------------------------------------------------------------------
# intersection numbers
# ---------------------------------------------------------------------------

def _perturbed(cycle: Cycle, factor: complex, config=DEFAULT_CONFIG) -> Cycle:
    """Rigid scale-and-rotate copy, reached by a short connector continuation."""
    segments = [s.scaled_rotated(factor) for s, _ in cycle.legs]
    x_old = cycle.legs[0][0].at(0.0)
    x_new = segments[0].at(0.0)
    fib = solve_fiber(x_old)
    ys = np.asarray(fib.sheets)
    my = int(np.argmin(np.abs(ys - cycle.legs[0][1])))
    ys, _ = track([Line(x_old, x_new)], ys, config=config)
    return _build_closed(segments, complex(ys[my]), config)


def _y_on_leg(cycle: Cycle, leg_index: int, t: float, config=DEFAULT_CONFIG):
    seg, y0 = cycle.legs[leg_index]
    if t < 1e-12:
        return y0
    if isinstance(seg, Line):
        sub = Line(seg.start, seg.at(t))
    else:
        sub = Arc(seg.center, seg.radius, seg.theta0,
                  seg.theta0 + t * (seg.theta1 - seg.theta0))
    fib = solve_fiber(seg.at(0.0))
    ys = np.asarray(fib.sheets)
    my = int(np.argmin(np.abs(ys - y0)))
    ys, _ = track([sub], ys, config=config)
    return complex(ys[my])


def intersection(c1: Cycle, c2: Cycle, config=DEFAULT_CONFIG, _budget: int = 4) -> int:
    """Signed count of same-sheet transversal crossings of two closed cycles.

    The second cycle is perturbed to put the pair in general position; the
    crossing sign is the sign of det(tangent1, tangent2), normalized so that
    the two generators of alpha_basis intersect in +1.
    """
    last_err = None
    for attempt in range(_budget):
        factor = (1.0 + 3e-3 * (attempt + 1)) * np.exp(1j * (4e-3 + 2.3e-3 * attempt))
        try:
            return _intersection_once(c1, _perturbed(c2, factor, config), config)
        except (ContinuationError, _TangencyError) as err:  # retry rotated
            last_err = err
    raise RuntimeError(f"intersection unresolved after perturbations: {last_err}")


class _TangencyError(RuntimeError):
    pass


def _intersection_once(c1: Cycle, c2: Cycle, config) -> int:
    total = 0
    for i, (s1, _) in enumerate(c1.legs):
        for j, (s2, _) in enumerate(c2.legs):
            for (t1, t2, p) in segment_crossings(s1, s2):
                T1 = s1.tangent(t1)
                T2 = s2.tangent(t2)
                cr = (np.conj(T1) * T2).imag
                if abs(cr) < 1e-10 * abs(T1) * abs(T2):
                    raise _TangencyError(f"near-tangential crossing at {p}")
                y1 = _y_on_leg(c1, i, t1, config)
                y2 = _y_on_leg(c2, j, t2, config)
                if abs(y1 - y2) < 0.3 * solve_fiber(p).min_gap():
                    total += 1 if cr > 0 else -1
    return total


def intersection_matrix(cycles, config=DEFAULT_CONFIG) -> np.ndarray:
    """Antisymmetric matrix of pairwise intersection numbers."""
    n = len(cycles)
    out = np.zeros((n, n), dtype=int)
    for i in range(n):
        for j in range(i + 1, n):
            v = intersection(cycles[i], cycles[j], config)
            out[i, j] = v
            out[j, i] = -v
    return out


def express_in_alpha(cycle: Cycle, alphas, j_alpha: np.ndarray,
                     config=DEFAULT_CONFIG) -> np.ndarray:
    """Integer coefficients of a closed cycle in the alpha basis.

    Solves <cycle, alpha_j> = (c J)_j; the intersection matrix is unimodular
    so the solution is integral, which is verified by rounding.
    """
    v = np.array([intersection(cycle, a, config) for a in alphas])
    c = v @ np.round(np.linalg.inv(j_alpha)).astype(int)
    return c.astype(int)


def homology_action(automorphism, alphas, j_alpha, config=DEFAULT_CONFIG) -> np.ndarray:
    """Matrix A with image(alpha_i) = sum_j A[i, j] alpha_j.

    ``automorphism`` is either a pair (xmul, ymul) for a coordinate scaling
    of the affine curve, or the string "conjugation" for the antiholomorphic
    involution.  (Projective maps that do not preserve the line/arc leg
    family are handled through the period relation instead; see
    ``periods.action_from_periods``.)
    """
    rows = []
    for a in alphas:
        if automorphism == "conjugation":
            img = conjugate_cycle(a, config)
        else:
            xmul, ymul = automorphism
            img = transform_cycle(a, xmul, ymul, config)
        rows.append(express_in_alpha(img, alphas, j_alpha, config))
    return np.array(rows, dtype=int)


# ---------------------------------------------------------------------------
# canonical basis and the real structure
# ---------------------------------------------------------------------------

def canonical_basis_change(j_alpha: np.ndarray) -> np.ndarray:
    """The combination matrix sending alphas to the canonical (a, b) basis.

    Raises unless it is unimodular and conjugates the computed alpha
    intersection form into the standard symplectic J.
    """
    B = CANONICAL_COMBINATIONS
    det = round(np.linalg.det(B))
    if abs(det) != 1:
        raise AssertionError(f"basis change is not unimodular (det {det})")
    got = B @ j_alpha @ B.T
    if not np.array_equal(got, SYMPLECTIC_J):
        raise AssertionError("basis change does not produce the standard symplectic form")
    return B


def to_canonical(action_alpha: np.ndarray) -> np.ndarray:
    """Rewrite a homology action from the alpha basis to the canonical basis."""
    B = CANONICAL_COMBINATIONS
    Binv = np.round(np.linalg.inv(B)).astype(int)
    return B @ action_alpha @ Binv


@dataclass(frozen=True)
class RealStructureReport:
    normalizer_symplectic: bool
    conjugation_normal_form: bool
    involution_squares_to_identity: bool
    oval_count: int


def verify_real_structure(conj_alpha: np.ndarray, oval_count: int = 1) -> RealStructureReport:
    """Check the conjugation action against the one-oval normal form.

    The fixed normalizer T must be symplectic and must conjugate the
    canonical-basis conjugation action into ONE_OVAL_FORM, the normal form
    of an antiholomorphic involution with a single nondividing oval.
    """
    T = REAL_NORMALIZER
    sympl = np.array_equal(T @ SYMPLECTIC_J @ T.T, SYMPLECTIC_J)
    s_can = to_canonical(conj_alpha)
    Tinv = np.round(np.linalg.inv(T)).astype(int)
    normal = np.array_equal(T @ s_can @ Tinv, ONE_OVAL_FORM)
    invol = np.array_equal(conj_alpha @ conj_alpha, np.eye(8, dtype=int))
    return RealStructureReport(
        normalizer_symplectic=bool(sympl),
        conjugation_normal_form=bool(normal),
        involution_squares_to_identity=bool(invol),
        oval_count=oval_count,
    )
