"""Riemann theta function and period-lattice arithmetic for a fixed tau."""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_CONFIG


@dataclass(frozen=True)
class PeriodLattice:
    """The lattice Z^4 + tau Z^4 with reduction and distance helpers."""

    tau: np.ndarray

    def split(self, z):
        """Real vectors (u, w) with z = u + tau w."""
        z = np.asarray(z, dtype=complex)
        w = np.linalg.solve(self.tau.imag, z.imag)
        u = z.real - self.tau.real @ w
        return u, w

    def reduce(self, z):
        """Representative of z with fractional (u, w) in [-1/2, 1/2)."""
        u, w = self.split(z)
        u0 = u - np.round(u)
        w0 = w - np.round(w)
        return u0 + self.tau @ w0

    def distance(self, z) -> float:
        """max-norm distance from z to the lattice (adjacent-shift search)."""
        return float(np.max(np.abs(self.nearest_difference(z))))

    def nearest_difference(self, z):
        """The minimal-norm representative of z modulo the lattice.

        The fractional residue is compared against all 3^8 adjacent integer
        shifts, which suffices for this well-conditioned tau.
        """
        u, w = self.split(z)
        u0 = u - np.round(u)
        w0 = w - np.round(w)
        eu, ew = _shift_grid()
        cand = (u0 + eu) + (w0 + ew) @ self.tau.T
        norms = np.max(np.abs(cand), axis=1)
        return cand[np.argmin(norms)]


@functools.lru_cache(maxsize=1)
def _shift_grid():
    rng = [-1, 0, 1]
    grid = np.array(np.meshgrid(*([rng] * 8), indexing="ij")).reshape(8, -1).T
    return grid[:, :4].astype(float), grid[:, 4:].astype(float)


class RiemannTheta:
    """Truncated lattice sum theta(z | tau) for one fixed tau.

    The summation radius R is chosen from the smallest eigenvalue of Im tau
    so that the discarded tail is below ``tail`` for lattice-reduced z; the
    sum pairs n with -n, so evenness theta(z) = theta(-z) holds exactly.
    """

    def __init__(self, tau: np.ndarray, tail: float | None = None,
                 radius: int | None = None, config=DEFAULT_CONFIG):
        self.tau = np.asarray(tau, dtype=complex)
        tail = tail if tail is not None else config.theta_tail
        lam = float(np.min(np.linalg.eigvalsh(self.tau.imag)))
        if lam <= 0:
            raise ValueError("Im(tau) must be positive definite")
        R = radius if radius is not None else config.theta_radius_override
        if R is None:
            R = int(np.ceil(np.sqrt(-np.log(tail) / (np.pi * lam)))) + 2
        if R > config.theta_radius_max:
            raise ValueError(f"theta truncation radius {R} exceeds the configured "
                             f"maximum {config.theta_radius_max}")
        self.radius = R
        rng = np.arange(-R, R + 1)
        grid = np.array(np.meshgrid(rng, rng, rng, rng, indexing="ij")).reshape(4, -1).T
        # keep one of each +-n pair (first nonzero coordinate positive)
        key = grid[:, 0] * 8 ** 3 + grid[:, 1] * 8 ** 2 + grid[:, 2] * 8 + grid[:, 3]
        half = grid[key > 0].astype(float)
        # prune terms that stay below the tail whenever z = u + tau w has
        # |w_i| <= 1.75 (covers reduced arguments plus small lattice shifts):
        # |term| <= exp(-pi n.Im(tau).n + 2 pi w_max sum_i |(Im(tau) n)_i|)
        im_n = half @ self.tau.imag
        bound = (-np.pi * np.einsum("ni,ni->n", half, im_n)
                 + 2.0 * np.pi * 1.75 * np.sum(np.abs(im_n), axis=1))
        keep = bound >= np.log(tail) - 3.0
        self._half = half[keep]
        qf = np.einsum("ni,ij,nj->n", self._half, self.tau, self._half)
        self._gauss = np.exp(1j * np.pi * qf)

    def __call__(self, z) -> complex:
        return complex(self.many(np.asarray(z, dtype=complex)[None, :])[0])

    def many(self, Z, chunk: int = 64) -> np.ndarray:
        """Theta at each row of Z, vectorized over the lattice sum.

        Evaluated in column chunks to bound the size of the phase matrix
        (half-lattice size times chunk).
        """
        Z = np.asarray(Z, dtype=complex)
        out = np.empty(len(Z), dtype=complex)
        for lo in range(0, len(Z), chunk):
            phases = 2.0 * np.pi * (self._half @ Z[lo:lo + chunk].T)
            out[lo:lo + chunk] = 1.0 + 2.0 * (self._gauss @ np.cos(phases))
        return out

    def typical_scale(self, seed: int = 1, n: int = 32) -> float:
        """Median |theta| over random reduced points, for normalized tests."""
        rng = np.random.default_rng(seed)
        u = rng.random((n, 4)) - 0.5
        w = rng.random((n, 4)) - 0.5
        Z = u + w @ self.tau.T
        return float(np.median(np.abs(self.many(Z))))
