"""The vector of Riemann constants: torsion analysis, theta search, checks.

The order-5 symmetry with fixed base place restricts 2 K_Q to 25 explicit
candidates (Smith normal form of the homology action minus the identity);
the canonical-divisor relation selects the class, and the half-period
completing it is found by testing the vanishing of the theta function over
random degree-3 divisors.  A classical double-integral formula over the
a-cycles gives a further cross-check; see ``direct_K`` for its caveats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial.legendre import leggauss

from .config import DEFAULT_CONFIG
from .continuation import solve_fiber, track
from .curves import affine_dy
from .geometry import Arc
from .periods import _numerators
from .thetafn import PeriodLattice, RiemannTheta


# ---------------------------------------------------------------------------
# Smith normal form over the integers
# ---------------------------------------------------------------------------

def smith_normal_form(M):
    """U, S, V with M = U S V, U and V unimodular, S diagonal, d_i | d_{i+1}.

    Exact integer arithmetic throughout; the factorization is verified before
    returning.
    """
    A = [[int(x) for x in row] for row in np.asarray(M)]
    n, m = len(A), len(A[0])
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(i, j, c):  # row i += c * row j
        A[i] = [a + c * b for a, b in zip(A[i], A[j])]
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]

    def add_col(i, j, c):  # col i += c * col j
        for r in A:
            r[i] += c * r[j]
        for r in V:
            r[i] += c * r[j]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]

    k = 0
    while k < min(n, m):
        # find smallest nonzero pivot in the remaining block
        piv = None
        for i in range(k, n):
            for j in range(k, m):
                if A[i][j] != 0 and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(k, piv[0])
        swap_cols(k, piv[1])
        done = False
        while not done:
            done = True
            for i in range(k + 1, n):
                if A[i][k] % A[k][k]:
                    add_row(i, k, -(A[i][k] // A[k][k]))
                    swap_rows(k, i)
                    done = False
            for i in range(k + 1, n):
                if A[i][k]:
                    add_row(i, k, -(A[i][k] // A[k][k]))
            for j in range(k + 1, m):
                if A[k][j] % A[k][k]:
                    add_col(j, k, -(A[k][j] // A[k][k]))
                    swap_cols(k, j)
                    done = False
            for j in range(k + 1, m):
                if A[k][j]:
                    add_col(j, k, -(A[k][j] // A[k][k]))
            if done:
                # enforce divisibility of the remaining block by the pivot
                for i in range(k + 1, n):
                    for j in range(k + 1, m):
                        if A[i][j] % A[k][k]:
                            add_row(k, i, 1)
                            done = False
                            break
                    if not done:
                        break
        if A[k][k] < 0:
            negate_row(k)
        k += 1

    # we tracked S = U_ops M V_ops, so M = U_ops^-1 S V_ops^-1; report those
    # inverses (integral since the operations are unimodular)
    S = np.array(A, dtype=int)
    U_out = _unimodular_inverse(np.array(U, dtype=int))
    V_out = _unimodular_inverse(np.array(V, dtype=int))
    M_in = np.array([[int(x) for x in row] for row in np.asarray(M)], dtype=int)
    if not np.array_equal(U_out @ S @ V_out, M_in):
        raise AssertionError("Smith normal form verification failed")
    return U_out, S, V_out


def _unimodular_inverse(M):
    A = np.asarray(M, dtype=float)
    det = round(np.linalg.det(A))
    if abs(det) != 1:
        raise AssertionError("matrix is not unimodular")
    inv = np.round(np.linalg.inv(A)).astype(int)
    if not np.array_equal(np.asarray(M, dtype=int) @ inv, np.eye(len(A), dtype=int)):
        raise AssertionError("integer inverse verification failed")
    return inv


# ---------------------------------------------------------------------------
# 25 torsion candidates for 2 K_Q
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TorsionCandidate:
    """Representative n = (n1, 0, 0, 0, n5, 0, 0, 0) and its point in C^4."""

    n: tuple
    value: np.ndarray


@dataclass(frozen=True)
class TwoKConstraints:
    snf_diagonal: tuple
    congruences: list          # (coefficients mod 5, modulus) pairs
    candidates: list           # 25 TorsionCandidate entries


def constrain_2K(M: np.ndarray, pi: np.ndarray, L: np.ndarray) -> TwoKConstraints:
    """Candidates for 2 K_Q allowed by the order-5 symmetry.

    M is the canonical-basis homology action, pi the 8x4 canonical period
    matrix and L the differential action.  n and n' label the same candidate
    iff n - n' lies in the row span of (M - Id); the Smith normal form turns
    that into congruences mod the nontrivial elementary divisors, leaving
    representatives supported on slots 1 and 5.
    """
    if np.min(np.abs(np.linalg.eigvals(L) - 1.0)) < 1e-9:
        raise ArithmeticError("L - Id is singular: the torsion argument does not apply")
    A = np.asarray(M, dtype=int) - np.eye(8, dtype=int)
    U, S, V = smith_normal_form(A)
    d = tuple(int(S[i, i]) for i in range(8))
    Vinv = _unimodular_inverse(np.array(V, dtype=object)).astype(int)
    congruences = [(tuple(int(c) % d[i] for c in Vinv[:, i]), d[i])
                   for i in range(8) if d[i] > 1]

    a_mat = pi[:4]
    tau = np.linalg.solve(a_mat.T, pi[4:].T).T
    Ainv_frac = _rational_inverse(A)
    candidates = []
    for n1 in range(5):
        for n5 in range(5):
            n = (n1, 0, 0, 0, n5, 0, 0, 0)
            w = _frac_vecmat(n, Ainv_frac)
            wf = np.array([float(x) for x in w])
            value = wf[:4] + wf[4:] @ tau
            candidates.append(TorsionCandidate(n=n, value=value))
    return TwoKConstraints(snf_diagonal=d, congruences=congruences,
                           candidates=candidates)


def _rational_inverse(A):
    n = len(A)
    M = [[Fraction(int(A[i][j])) for j in range(n)] for i in range(n)]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = M[col][col]
        M[col] = [x / f for x in M[col]]
        inv[col] = [x / f for x in inv[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
                inv[r] = [a - f * b for a, b in zip(inv[r], inv[col])]
    return inv


def _frac_vecmat(v, M):
    n = len(M)
    return [sum(Fraction(v[i]) * M[i][j] for i in range(n)) for j in range(n)]


def class_of(n_vector, congruences):
    """Evaluate the congruence forms on an integer 8-vector."""
    return tuple(sum(int(c) * int(x) for c, x in zip(coeffs, n_vector)) % mod
                 for coeffs, mod in congruences)


def resolve_2K(constraints: TwoKConstraints, target: np.ndarray,
               lattice: PeriodLattice, tol: float = 1e-4) -> TorsionCandidate:
    """The unique candidate matching a target value modulo the lattice."""
    hits = [c for c in constraints.candidates
            if lattice.distance(c.value - target) < tol]
    if len(hits) != 1:
        raise ArithmeticError(f"{len(hits)} torsion candidates match the target")
    return hits[0]


# ---------------------------------------------------------------------------
# half-period search via theta vanishing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HalfPeriodResult:
    K: np.ndarray
    shift: tuple               # (p, q) in {0,1}^4 x {0,1}^4
    vanishing_score: float     # normalized max |theta| over the test divisors
    separation: float          # next-best score / best score
    divisor_seed: int


def half_period_search(twoK: np.ndarray, theta: RiemannTheta, abel,
                       n_divisors: int = 10, seed: int = 20120610,
                       tol: float = 1e-5) -> HalfPeriodResult:
    """Select K among the 256 half-period completions of twoK / 2.

    K is correct iff theta(A(P1+P2+P3) - K) vanishes for every effective
    degree-3 divisor; random divisors separate the true candidate from the
    rest by orders of magnitude.
    """
    lattice = abel.lattice
    tau = theta.tau
    pts = abel.random_divisor_points(3 * n_divisors, seed)
    divisor_sums = [sum(abel.to_point(x, y).value for x, y in pts[3 * i:3 * i + 3])
                    for i in range(n_divisors)]
    scale = theta.typical_scale()

    shifts = []
    Z = []
    for p in range(16):
        for q in range(16):
            pu = np.array([(p >> k) & 1 for k in range(4)], dtype=float)
            qu = np.array([(q >> k) & 1 for k in range(4)], dtype=float)
            K = twoK / 2.0 + 0.5 * (pu + qu @ tau)
            shifts.append(((p, q), K))
            for ad in divisor_sums:
                Z.append(lattice.reduce(ad - K))
    vals = np.abs(theta.many(np.array(Z))) / scale
    scores = vals.reshape(256, n_divisors).max(axis=1)
    order = np.argsort(scores)
    best, second = order[0], order[1]
    if scores[best] > tol:
        raise ArithmeticError(f"no half-period candidate vanishes "
                              f"(best normalized score {scores[best]:.2e})")
    if scores[second] < tol:
        raise ArithmeticError("multiple half-period candidates vanish")
    (pq, K) = shifts[best]
    return HalfPeriodResult(K=K, shift=pq,
                            vanishing_score=float(scores[best]),
                            separation=float(scores[second] / scores[best]),
                            divisor_seed=seed)


# ---------------------------------------------------------------------------
# direct a-cycle double-integral formula
# ---------------------------------------------------------------------------

def _based_loop(row, alphas, abel, config):
    """Closed hub-based loop realizing sum_i row[i] alpha_i.

    Each piece is fully conjugated (steer, arc out, traverse, arc back,
    un-steer) so the composite class is exact; the class is certified by the
    caller through the loop's period vector.
    """
    hub_ys = abel._hub_ys
    s0 = abel._hub_start
    legs = []

    def track_along(segments, y):
        for seg in segments:
            legs.append((seg, y))
            fib = solve_fiber(seg.at(0.0))
            ys = np.asarray(fib.sheets)
            my = int(np.argmin(np.abs(ys - y)))
            ys, _ = track([seg], ys, config=config)
            y = complex(ys[my])
        return y

    def word_segments(word, invert):
        out = []
        steps = [(k, -d) for (k, d) in reversed(word)] if invert else word
        for (k, d) in steps:
            path, _ = abel._loop_library()[k]
            segs = path.segments if d > 0 else tuple(
                s.reversed() for s in reversed(path.segments))
            out.extend(segs)
        return out

    from .abel import HUB_X

    for i, c in enumerate(row):
        if c == 0:
            continue
        a = alphas[i]
        theta = float(np.angle(a.legs[0][0].at(0.0)) % (2.0 * np.pi))
        starts = [y for _, y in a.legs] + [a.legs[0][1]]
        fwd = list(a.legs)
        rev = [(a.legs[k][0].reversed(), starts[k + 1])
               for k in range(len(a.legs) - 1, -1, -1)]
        use = fwd if c > 0 else rev
        y_entry = use[0][1]
        if theta > 1e-12:
            arc_out = Arc(0.0, HUB_X, 0.0, theta)
            ys_end, _ = track([arc_out], hub_ys, config=config)
            s_req = int(np.argmin(np.abs(ys_end - y_entry)))
        else:
            s_req = int(np.argmin(np.abs(hub_ys - y_entry)))
        word = abel._steer_word(s0, s_req)
        for _ in range(abs(c)):
            y = track_along(word_segments(word, invert=False), complex(hub_ys[s0]))
            if theta > 1e-12:
                y = track_along([Arc(0.0, HUB_X, 0.0, theta)], y)
            if abs(y - y_entry) > 1e-6 * (1.0 + abs(y_entry)):
                raise RuntimeError("loop connector missed the cycle's start sheet")
            y = track_along([s for s, _ in use], y)
            if theta > 1e-12:
                y = track_along([Arc(0.0, HUB_X, theta, 0.0)], y)
            y = track_along(word_segments(word, invert=True), y)
            if abs(y - hub_ys[s0]) > 1e-6:
                raise RuntimeError("composite loop failed to return to its base")
    return legs


def _leg_double_integral(seg, y0, inner0, a_inv, config, order_out=24, order_in=8):
    """One leg's contribution to D[m, j] = integral v_m(P) inner_j(P) dP.

    The inner vector accumulates by composite quadrature between consecutive
    outer nodes; all fiber tracking happens in a single pass.
    """
    no, wo = leggauss(order_out)
    ni, wi = leggauss(order_in)
    outer = (no + 1.0) / 2.0
    allts = []
    prev = 0.0
    for t in outer:
        allts.extend(prev + (ni + 1.0) / 2.0 * (t - prev))
        allts.append(t)
        prev = t
    allts.extend(prev + (ni + 1.0) / 2.0 * (1.0 - prev))
    allts = np.array(allts)
    fib = solve_fiber(seg.at(0.0))
    ys = np.asarray(fib.sheets)
    my = int(np.argmin(np.abs(ys - y0)))
    _, samples = track([seg], ys, collect=[allts], config=config)
    yv = samples[0][:, my]
    xs = np.array([seg.at(t) for t in allts])
    dxdt = np.array([seg.tangent(t) for t in allts])
    vals = _numerators(xs, yv) / affine_dy(xs, yv)[:, None] * dxdt[:, None]

    D = np.zeros((4, 4), dtype=complex)
    single = np.zeros(4, dtype=complex)
    inner = np.asarray(inner0, dtype=complex).copy()
    prev, idx = 0.0, 0
    for i in range(order_out + 1):
        t_hi = outer[i] if i < order_out else 1.0
        inner = inner + (wi / 2.0 * (t_hi - prev)) @ vals[idx:idx + order_in]
        idx += order_in
        if i < order_out:
            D += (wo[i] / 2.0) * np.outer(vals[idx], inner @ a_inv)
            single += (wo[i] / 2.0) * vals[idx]
            idx += 1
            prev = t_hi
    return D, single, inner


@dataclass(frozen=True)
class DirectKResult:
    K: np.ndarray
    loop_period_error: float   # max deviation of the loop periods from e_k


def direct_K(alphas, canonical_rows, period_data, abel,
             config=DEFAULT_CONFIG) -> DirectKResult:
    """K_j = -(tau_jj + 1)/2 + sum_{k != j} loop_k[ omega_k(P) int_Q^P omega_j ].

    The a-cycles are realized as hub-based loops daisy-chained from the
    geometric basis cycles (class-exactness is certified by their period
    vectors), and the inner Abel integral accumulates incrementally along
    the traversal on top of the fixed base-to-hub segment.

    Caveat: the classical formula is a homotopy functional (the integrand is
    closed but the inner integral is multivalued), so its value depends on
    the realization of the loops through period-commutator terms; only a
    canonical-polygon realization reproduces K exactly, and building one is
    outside this engine's scope.  The result is reported for cross-checking
    with that caveat; see the test suite for the measured discrepancy.
    """
    a_inv = np.linalg.inv(period_data.a_periods)
    from .abel import HUB_X

    A0 = abel.to_point(HUB_X, complex(abel._hub_ys[abel._hub_start])).raw
    tau = period_data.tau
    E = np.zeros((4, 4), dtype=complex)
    period_err = 0.0
    for k, row in enumerate(canonical_rows):
        legs = _based_loop(row, alphas, abel, config)
        D = np.zeros((4, 4), dtype=complex)
        inner = A0.copy()
        total = np.zeros(4, dtype=complex)
        for seg, y in legs:
            Dk, sk, inner = _leg_double_integral(seg, y, inner, a_inv, config)
            D += Dk
            total += sk
        period = total @ a_inv
        ek = np.eye(4)[k]
        period_err = max(period_err, float(np.max(np.abs(period - ek))))
        E[k] = a_inv[:, k] @ D
    # the double integral is quadratic in omega, so the reported-value
    # orientation convention drops out of this route
    K = np.array([-(tau[j, j] + 1.0) / 2.0
                  + sum(E[k, j] for k in range(4) if k != j)
                  for j in range(4)])
    return DirectKResult(K=K, loop_period_error=period_err)


# ---------------------------------------------------------------------------
# torsion checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TorsionReport:
    ten_K_distance: float
    psi_orbit_distance: float
    K_not_lattice_distance: float


def torsion_checks(K: np.ndarray, abel, psi_point) -> TorsionReport:
    """Lattice membership of 10 K_Q and of 30 * int_Q^psi(Q) omega."""
    lat = abel.lattice
    x, y = psi_point
    orbit = abel.to_point(x, y).value
    return TorsionReport(
        ten_K_distance=lat.distance(10.0 * K),
        psi_orbit_distance=lat.distance(30.0 * orbit),
        K_not_lattice_distance=lat.distance(K),
    )


# ---------------------------------------------------------------------------
# theta characteristics and the invariant spin structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThetaCharacteristic:
    """Half-integer characteristic; a and b store doubled entries in {0, 1}."""

    a: tuple
    b: tuple

    @property
    def parity(self) -> int:
        """0 for even, 1 for odd (= 4 a.b mod 2 on the half-integer values)."""
        return sum(x * y for x, y in zip(self.a, self.b)) % 2

    def vector(self):
        return np.array(self.a + self.b, dtype=int)


def all_characteristics():
    out = []
    for code in range(256):
        bits = [(code >> k) & 1 for k in range(8)]
        out.append(ThetaCharacteristic(a=tuple(bits[:4]), b=tuple(bits[4:])))
    return out


def _symplectic_inverse(g):
    ginv = np.round(np.linalg.inv(g)).astype(int)
    if not np.array_equal(g @ ginv, np.eye(len(g), dtype=int)):
        raise ValueError("matrix is not invertible over the integers")
    return ginv


def is_symplectic(g) -> bool:
    J = np.block([[np.zeros((4, 4), dtype=int), np.eye(4, dtype=int)],
                  [-np.eye(4, dtype=int), np.zeros((4, 4), dtype=int)]])
    return np.array_equal(g @ J @ g.T, J)


def characteristic_transform(g, ch: ThetaCharacteristic) -> ThetaCharacteristic:
    """Affine action of a symplectic matrix on half-integer characteristics.

    (a, b) -> (a, b) g^-1 + ((diag C D^T)/2, (diag A B^T)/2) mod 1, computed
    on the doubled integer entries mod 2.  Composing by g1 then g2 equals
    the transform by g2 g1.
    """
    g = np.asarray(g, dtype=int)
    if not is_symplectic(g):
        raise ValueError("characteristic transform requires a symplectic matrix")
    A, B = g[:4, :4], g[:4, 4:]
    C, D = g[4:, :4], g[4:, 4:]
    shift = np.concatenate([np.diag(C @ D.T), np.diag(A @ B.T)])
    v = (ch.vector() @ _symplectic_inverse(g) + shift) % 2
    return ThetaCharacteristic(a=tuple(int(x) for x in v[:4]),
                               b=tuple(int(x) for x in v[4:]))


def invariant_spin_structures(generators):
    """Characteristics fixed by every generator's transform."""
    out = []
    for ch in all_characteristics():
        if all(characteristic_transform(g, ch) == ch for g in generators):
            out.append(ch)
    return out
