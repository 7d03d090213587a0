"""Cellularity of classifying spaces of saturated fusion systems.

The library decides, by finite group computation alone, whether the
classifying space of a saturated fusion system is cellular with respect
to the classifying space of a finite p-group: the verdict is positive
exactly when the smallest strongly closed subgroup containing every
homomorphic image of the test group is the full Sylow group.
"""

from .errors import (
    ExternalDataRequired,
    FusioncellError,
    InternalInvariantError,
    InvalidInput,
    InvalidSpec,
    OrderCapExceeded,
    RelationCheckFailed,
    SubgroupMismatch,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    all_subgroups,
    center,
    centralizer,
    conjugate_subgroup,
    element_order,
    enumerate_homs,
    full_subgroup,
    is_normal,
    minimal_generating_set,
    normalizer,
    quotient_group,
    subgroup_as_group,
    subgroup_generated,
    sylow_subgroup,
    trivial_subgroup,
)
from .specs import (
    MatrixSpec,
    PermSpec,
    SemidirectSpec,
    TableSpec,
    build_group,
    expand_shorthand,
    group_from_json,
    parse_group_spec,
    spec_to_json,
)
from .fusion import (
    Axiomatized,
    FusionSystem,
    Generated,
    GroupInduced,
    SaturationReport,
    SaturationWitness,
    fusion_automorphism_group,
    fusion_axiomatized,
    fusion_from_group,
    fusion_generated,
    fusion_outer_automorphism_group,
    is_fusion_preserving,
    is_saturated,
    is_strongly_closed,
    strongly_closed_subgroups,
)
from .cellularity import (
    CellularityReport,
    FusionInvarianceCertificate,
    HyperfocalResult,
    cellularity_report,
    closure_from_seed,
    fusion_invariance_certificate,
    hyperfocal_subgroup,
    is_normal_in_fusion,
    min_cellular_exponent,
    omega_subgroup,
    strong_closure,
)
from .catalog import (
    B3rGroup,
    OrderCensus,
    build_b3r,
    build_suzuki_8,
    build_wreath,
    exotic_cellularity_verdict,
    exotic_pi1_check,
    order_census,
    standard_exotic_seeds,
)

__version__ = "0.1.0"
