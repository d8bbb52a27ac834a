"""Numerical engine for Bring's curve via the Hulek-Craig plane sextic.

Reconstructs the symmetry-adapted homology basis and period matrix of the
genus-4 curve with maximal automorphism group, and computes the vector of
Riemann constants with torsion and spin-structure analysis.
"""

from .config import DEFAULT_CONFIG, PipelineConfig
from .curves import (PlaneCurve, dye_curve, hulek_craig_curve, ramanujan_check,
                     singular_points, verify_equivalence)
from .continuation import (Fiber, MonodromyDatum, PlanePath, branch_points,
                           continue_fiber, monodromy, solve_fiber)
from .places import Place, places_over
from .realpaths import RealPathReport, trace_real_paths
from .homology import (Cycle, alpha_basis, build_alpha_12, canonical_basis_change,
                       conjugate_cycle, homology_action, intersection,
                       intersection_matrix, transform_cycle, verify_real_structure)
from .periods import (Differential, PeriodData, holomorphic_differentials,
                      integrate, klein_j, period_matrices, verify_symmetry_relation)
from .abel import AbelImage, AbelMap
from .thetafn import PeriodLattice, RiemannTheta
from .riemann_constants import (ThetaCharacteristic, TorsionCandidate,
                                characteristic_transform, constrain_2K, direct_K,
                                half_period_search, invariant_spin_structures,
                                smith_normal_form, torsion_checks)
from .pipeline import Engine

__version__ = "0.1.0"
