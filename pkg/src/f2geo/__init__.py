"""Translation-invariant noncommutative differential geometries over GF(2).

Classification of the commutative algebra structures V on the coordinate
span (equivalently, of the bimodule calculi [dx^mu, x^nu] = V^{mu nu}_rho dx^rho
on F2[x^1..x^n]), their central metrics, quantum Levi-Civita bimodule
connections, curvature, a finite-difference field calculus, and an AND/XOR
netlist compiler for the products.
"""

from .algebra import (
    EnumerationMode,
    SearchCapExceeded,
    StructureConstants,
    UnitVector,
    act,
    calculus_relations,
    enumerate_algebras,
    find_unit,
    is_associative,
    is_commutative,
)
from .circuits import Netlist, compile_bilinear, compile_linear, compile_pi, simulate
from .constructions import (
    PartitionDatum,
    all_partition_data,
    cyclic_algebra,
    cyclic_metrics,
    euclidean_metric,
    field_extension_algebra,
    functions_algebra,
    partition_qlc,
    partition_qlc_count,
)
from .fieldcalc import OneForm, Polynomial, differential, laplacian, partial
from .geometry import (
    AlphaMap,
    Connection,
    Metric,
    Omega2Element,
    Omega2Tensor,
    SigmaMap,
    curvature,
    find_alphas,
    find_metrics,
    find_qlcs,
    flip_sigma,
    is_flat,
    qlcs_bimodule,
    reconstruct_sigma,
    sigma_from_gamma,
    torsion,
    wedge,
)
from .gf2 import (
    AffineSolutionSpace,
    GF2Matrix,
    enumerate_gl,
    gl_order,
    mat_from_lists,
    mat_identity,
    mat_inverse,
    mat_mul,
    mat_rank,
    solve_affine,
)
from .orbits import OrbitReport, canonical_rep, find_isomorphism, isotropy, orbits
from .tables import compare_table, label_of

__version__ = "0.1.0"
