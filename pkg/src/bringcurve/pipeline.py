"""Lazy orchestration of the full computation chain."""

from __future__ import annotations

from functools import cached_property

import numpy as np

from . import homology, periods, riemann_constants as rc
from .abel import AbelMap
from .config import DEFAULT_CONFIG, PipelineConfig
from .continuation import monodromy, riemann_hurwitz_genus
from .curves import ZETA5, hulek_craig_curve
from .realpaths import trace_real_paths
from .thetafn import RiemannTheta


def order_two_symmetry() -> np.ndarray:
    """The projective order-2 symmetry of the sextic (a real matrix)."""
    c1 = 2.0 * np.cos(2.0 * np.pi / 5.0)
    c2 = 2.0 * np.cos(4.0 * np.pi / 5.0)
    return np.array([[1.0, 2.0, 2.0], [1.0, c1, c2], [1.0, c2, c1]])


class Engine:
    """Caches each pipeline stage; all stages derive from one configuration."""

    def __init__(self, config: PipelineConfig = DEFAULT_CONFIG):
        self.config = config

    @cached_property
    def curve(self):
        return hulek_craig_curve()

    @cached_property
    def monodromy_data(self):
        return monodromy(2.0, self.config)

    @property
    def genus(self):
        return riemann_hurwitz_genus(self.monodromy_data)

    @cached_property
    def real_paths(self):
        return trace_real_paths()

    @cached_property
    def alphas(self):
        return homology.alpha_basis(self.config)

    @cached_property
    def intersections(self):
        return homology.intersection_matrix(self.alphas, self.config)

    @cached_property
    def basis_change(self):
        return homology.canonical_basis_change(self.intersections)

    @cached_property
    def phi_action_alpha(self):
        return homology.homology_action((ZETA5 ** 2, ZETA5 ** 4),
                                        self.alphas, self.intersections, self.config)

    @cached_property
    def phi_action(self):
        return homology.to_canonical(self.phi_action_alpha)

    @cached_property
    def conjugation_action_alpha(self):
        return homology.homology_action("conjugation", self.alphas,
                                        self.intersections, self.config)

    @cached_property
    def period_data(self):
        return periods.period_matrices(self.alphas, self.config)

    @cached_property
    def abel(self):
        return AbelMap(self.period_data, self.config)

    @cached_property
    def theta(self):
        return RiemannTheta(self.period_data.tau, config=self.config)

    @cached_property
    def order2_differential_action(self):
        L, resid = periods.differential_action(order_two_symmetry())
        if resid > 1e-8:
            raise ArithmeticError(f"order-2 pullback sampling residual {resid:.2e}")
        return L

    @cached_property
    def order2_action(self):
        """Canonical homology action of the order-2 symmetry (period route)."""
        M = periods.action_from_periods(self.order2_differential_action,
                                        self.period_data.pi_canonical)
        if not rc.is_symplectic(M):
            raise ArithmeticError("order-2 homology action is not symplectic")
        if not np.array_equal(M @ M, np.eye(8, dtype=int)):
            raise ArithmeticError("order-2 homology action does not square to identity")
        return M

    @cached_property
    def two_k_constraints(self):
        return rc.constrain_2K(self.phi_action, self.period_data.pi_canonical,
                               periods.PHI_DIFFERENTIAL_ACTION)

    @cached_property
    def canonical_divisor_two_k(self):
        """A(a + 2b + 3c): the canonical-divisor route to 2 K_Q."""
        b = self.abel.to_place("b").value
        c = self.abel.to_place("c").value
        return 2.0 * b + 3.0 * c

    @cached_property
    def resolved_two_k(self):
        return rc.resolve_2K(self.two_k_constraints, self.canonical_divisor_two_k,
                             self.abel.lattice)

    @cached_property
    def half_period_result(self):
        return rc.half_period_search(self.resolved_two_k.value, self.theta,
                                     self.abel, seed=self.config.seed,
                                     tol=self.config.tol_theta)

    @property
    def riemann_constant(self):
        return self.half_period_result.K

    @cached_property
    def direct_k_result(self):
        return rc.direct_K(self.alphas, homology.CANONICAL_COMBINATIONS[:4],
                           self.period_data, self.abel, self.config)

    @cached_property
    def psi_of_base(self):
        """Image of the base place under the order-2 symmetry, affine."""
        w = order_two_symmetry() @ np.array([0.0, 0.0, 1.0])
        return (w[0] / w[2], w[1] / w[2])

    @cached_property
    def torsion_report(self):
        return rc.torsion_checks(self.riemann_constant, self.abel, self.psi_of_base)

    @cached_property
    def invariant_characteristics(self):
        gens = [self.phi_action, self.order2_action]
        return rc.invariant_spin_structures(gens)
