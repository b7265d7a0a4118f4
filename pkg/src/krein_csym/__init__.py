"""C-symmetries of J-self-adjoint matrices in finite-dimensional Krein spaces."""

from .exceptions import *  # noqa: F401,F403
from .krein_core import (KreinStructure, SubspaceBasis, SubspaceClass, classify_subspace,
                         indefinite_inner, j_adjoint, j_orthogonal_complement,
                         krein_projector, oblique_projector, same_subspace)
from .transition import (DualPair, TransitionOperator, c_from_transition,
                         dual_pair_from_transition, oblique_projectors, transition_from_c,
                         validate_transition)
from .csymmetry import (COperator, CSymmetryReport, JSelfAdjointOperator, adjoint_c_symmetry,
                        block_diagonalize, c_inner_gram, construct_c, foldy_wouthuysen,
                        hermitize, j_self_adjoint, verify_c_symmetry)
from .point_interaction import (GammaModel, SweepRow, SymmetricGrid, build_a_gamma,
                                build_c_gamma, build_model, build_t_gamma, dual_pair_gamma,
                                gamma_sweep, neutral_subspace_at_2)
from .direct_sum import (DirectSumSpec, Truncation, build_truncation, check_unboundedness,
                         unboundedness_table)

__version__ = "0.1.0"
