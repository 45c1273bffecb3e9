"""Complex-weighted graph calculus for Gaussian pure states."""

from .analysis import (
    ClosestClusterResult,
    Partition,
    apply_phases,
    closest_cluster,
    entanglement_entropy,
    error_gradient,
    error_hessian,
    is_extremum,
    is_local_min,
    minimality_matrix,
    squeezing_efficient,
    symplectic_eigenvalues,
)
from .errors import *  # noqa: F401,F403
from .graph import (
    CovarianceMatrix,
    GaussianGraph,
    from_covariance,
    from_parts,
    to_covariance,
    vacuum,
)
from .rules import Operation, apply_operation, run_script
from .states import (
    HGraphSpec,
    canonical_cluster,
    cluster_family_alpha,
    ghz_hgraph,
    ground_hamiltonian,
    hgraph_state,
    hgraph_state_selfinv,
    offline_squeezed_state,
)
from .symplectic import Symplectic, embed, graph_to_symplectic, mobius, pre_iwasawa

__version__ = "0.1.0"
