"""Real points of the affine curve: the single oval of the real structure.

The real fibers have 1/3/3 roots on (-inf,0), (0,1), (1,inf).  The three
positive-axis paths are labelled gamma_minus < gamma_0 < gamma_plus by their
y-order near x = 0; they cross only at x = 1 (gamma_0 and gamma_plus swap),
and together with the negative-axis path they close up into one loop through
the four real places at x = 0 and x = infinity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import fiber_coefficients

SLOPE_UP = (-1.0 + np.sqrt(5.0)) / 2.0    # node branch crossed by gamma_0
SLOPE_DOWN = (-1.0 - np.sqrt(5.0)) / 2.0  # node branch crossed by gamma_plus

#: junction nodes: the real places compactifying the affine real locus
NODE_00, NODE_010, NODE_INF1, NODE_INF2 = "[0,0,1]", "[0,1,0]", "[1,0,0]_1", "[1,0,0]_2"


@dataclass(frozen=True)
class RealPathReport:
    segments: list
    oval_count: int
    crossing_data: dict


def _real_roots(x, tol=1e-9):
    ys = np.roots(fiber_coefficients(x))
    return np.sort(ys.real[np.abs(ys.imag) < tol * (1.0 + np.abs(ys))])


def trace_real_paths(x_max: float = 3.0, samples_per_unit: int = 64) -> RealPathReport:
    """Follow the real y-roots across the three real intervals.

    Junctions at x = 0, 1, infinity are matched through the local expansions
    (cube root / inverse square root at 0, the node slopes at 1, the
    +-x^(3/4) and x^-3 branches at infinity); the resulting 4-valent graph is
    scanned for closed loops.
    """
    if samples_per_unit < 16:
        raise ValueError("sampling resolution must be >= 16 points per unit interval")
    delta = 0.5 / samples_per_unit
    grids = {
        "neg": np.linspace(-x_max, -delta, int(samples_per_unit * x_max)),
        "mid": np.linspace(delta, 1.0 - delta, samples_per_unit),
        "pos": np.linspace(1.0 + delta, x_max, int(samples_per_unit * (x_max - 1.0))),
    }
    roots = {k: [_real_roots(x) for x in g] for k, g in grids.items()}
    counts = {k: {len(r) for r in roots[k]} for k in roots}
    expect = {"neg": {1}, "mid": {3}, "pos": {3}}
    for k in counts:
        if counts[k] != expect[k]:
            raise AssertionError(
                f"real root count on {k} is {counts[k]}, expected {expect[k]}")

    mid = np.array(roots["mid"])   # columns sorted: gamma_-, gamma_0, gamma_+
    pos = np.array(roots["pos"])
    neg = np.array([r[0] for r in roots["neg"]])

    # match the sorted columns on x > 1 to path labels via the node slopes
    x1 = grids["pos"][0]
    slopes = (pos[0] - 1.0) / (x1 - 1.0)
    # pos columns: [gamma_-, ?, ?]; among the last two, the slope SLOPE_DOWN
    # branch is gamma_plus and SLOPE_UP is gamma_0
    if abs(slopes[1] - SLOPE_DOWN) < abs(slopes[1] - SLOPE_UP):
        pos_labels = ("gamma-", "gamma+", "gamma0")
    else:
        pos_labels = ("gamma-", "gamma0", "gamma+")

    ordering_mid = bool(np.all(np.diff(mid, axis=1) > 0))
    ordering_pos = bool(np.all(np.diff(pos, axis=1) > 0))

    # junction graph; each entry is (node at small-x end, node at large-x end)
    edges = {
        "negative-axis": (NODE_00, NODE_INF1),
        "gamma0": (NODE_00, _inf_node(pos[:, pos_labels.index("gamma0")][-1])),
        "gamma+": (NODE_010, _inf_node(pos[:, pos_labels.index("gamma+")][-1])),
        "gamma-": (NODE_010, _inf_node(pos[:, pos_labels.index("gamma-")][-1])),
    }
    oval_count = _count_loops(edges)

    segments = [
        ((-x_max, 0.0), "negative-axis", np.column_stack([grids["neg"], neg])),
        ((0.0, 1.0), "gamma-", np.column_stack([grids["mid"], mid[:, 0]])),
        ((0.0, 1.0), "gamma0", np.column_stack([grids["mid"], mid[:, 1]])),
        ((0.0, 1.0), "gamma+", np.column_stack([grids["mid"], mid[:, 2]])),
    ]
    for col, lab in enumerate(pos_labels):
        segments.append(((1.0, x_max), lab, np.column_stack([grids["pos"], pos[:, col]])))

    crossing_data = {
        "ordering_on_(0,1)": ["gamma-", "gamma0", "gamma+"] if ordering_mid else None,
        "ordering_on_(1,inf)": list(pos_labels) if ordering_pos else None,
        "node_slope_of_gamma0": SLOPE_UP,
        "node_slope_of_gamma+": SLOPE_DOWN,
        "junctions": edges,
    }
    return RealPathReport(segments=segments, oval_count=oval_count,
                          crossing_data=crossing_data)


def _inf_node(y_at_xmax):
    # y ~ x^-3 lands on the unramified place, y ~ +-x^(3/4) on the 4-sheeted one
    return NODE_INF1 if abs(y_at_xmax) < 1.0 else NODE_INF2


def _count_loops(edges) -> int:
    """Connected components of the junction graph (every node has degree 2)."""
    adj = {}
    for lab, (a, b) in edges.items():
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen = set()
    loops = 0
    for start in adj:
        if start in seen:
            continue
        loops += 1
        stack = [start]
        while stack:
            n = stack.pop()
            if n in seen:
                continue
            seen.add(n)
            stack.extend(adj[n])
    return loops
