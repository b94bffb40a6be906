"""Finite groups with operations, their crossed modules, internal groupoids
and cat¹-groups, with exhaustive validators and verified equivalences."""

from .actions import (
    ActionSet,
    SplitExtension,
    action_from_split_extension,
    canonical_split_extension,
    conjugation_action,
    find_split_extension,
    ideal_semidirect_conditions,
    induced_action,
    is_derived_action,
    quotient_action,
    semidirect,
    semidirect_subset,
)
from .cat1 import (
    Cat1Group,
    Cat1Morphism,
    cat1_kernel,
    is_covering_cat1,
    is_normal_subcat1,
    quotient_cat1,
    standard_cat1,
    validate_cat1,
)
from .core import (
    GROUPS,
    RINGS,
    GroupWithOps,
    Morphism,
    OpSignature,
    ValidationReport,
    Violation,
    cyclic_group,
    cyclic_ring,
    direct_product,
    enumerate_ideals,
    enumerate_subobjects,
    find_isomorphism,
    find_morphisms,
    from_group_table,
    is_ideal,
    is_morphism,
    is_subobject,
    kernel_and_image,
    quotient_gwo,
    restrict,
    trivial_gwo,
    validate_gwo,
)
from .equivalences import (
    cat1_to_xmod,
    covering_transport,
    gpd_to_cat1,
    gpd_to_xmod,
    roundtrip_cat1,
    roundtrip_gpd,
    roundtrip_xmod_cat1,
    roundtrip_xmod_gpd,
    transport_morphism,
    transport_normality,
    xmod_to_cat1,
    xmod_to_gpd,
)
from .errors import (
    BoundExceededError,
    GwoError,
    IllDefinedError,
    InconsistencyError,
    NotCoveringError,
    NotIdealError,
    NotNormalError,
    NotSplitError,
    PreconditionError,
    SignatureMismatchError,
    StructureError,
)
from .fileformat import Subobject, parse, serialize
from .groupoid import (
    GpdMorphism,
    InternalGroupoid,
    SubGroupoid,
    compare_quotients,
    covering_pullback_quotient,
    enumerate_internal_normal,
    enumerate_wide_subgroupoids,
    gpd_kernel,
    higgins_quotient,
    hom_queries,
    internal_quotient,
    is_covering_gpd,
    is_internal_normal_subgroupoid,
    is_normal_subgroupoid_higgins,
    pair_groupoid,
    validate_internal_gpd,
)
from .witness import IsoWitness
from .xmod import (
    CrossedModule,
    XModMorphism,
    ideal_inclusion_xmod,
    identity_xmod,
    is_covering_xmod,
    is_normal_subxmod,
    is_subxmod,
    isomorphism_theorem,
    quotient_xmod,
    semidirect_quotient_iso,
    validate_xmod,
    xmod_kernel,
    zero_boundary_xmod,
    zero_xmod,
)

__version__ = "0.1.0"
