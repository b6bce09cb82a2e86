"""Homogeneous Poisson structures on compact and noncompact symmetric spaces.

Concrete matrix-group realizations (SU(p,q)-type and the group case SU(n)),
their Iwasawa/Birkhoff factorizations, the parameterized closed two-form with
its torus actions and momentum maps, the Poisson tensors on both symmetric
spaces with leaf symplectic forms, explicit leaf coordinates with product
formulas, and a numerical verification harness for all of the identities.
"""

from .core import (
    AlgebraElement,
    CotangentVector,
    GroupElement,
    SpaceInstance,
    TagError,
    TangentVector,
    hilbert,
    involution,
    membership_residual,
    nijenhuis,
    project,
    sample,
    sample_matrix,
    trace_form,
    triangular_parts,
)
from .factorization import (
    BirkhoffFactors,
    FactorizationError,
    IwasawaFactors,
    OffTopStratumError,
    birkhoff,
    bruhat_cell,
    cartan_embed,
    iwasawa,
    layer_of,
)
from .hamiltonian import (
    LeafParameter,
    MomentumValue,
    dressing,
    grass_leaf_candidates,
    group_leaf,
    make_leaf,
    momentum,
    omega,
    omega_xy,
    sample_torus,
    stabilizer_algebra,
    t_w_basis,
    torus_act,
)
from .verify import SuiteReport, d_omega_fd, kappa_field, run_suite
from .weyl import RootDatum, WeylElement, make_weyl_element, reduced_word

__version__ = "0.1.0"
