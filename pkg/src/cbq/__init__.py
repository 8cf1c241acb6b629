"""cbq: exact arithmetic for finite group actions on the projective line and
singular-fibre bookkeeping of conic-bundle quotients."""

from .cyclofield import (
    CycloNum,
    FieldSpec,
    KummerExt,
    KummerNum,
    contains_root_of_unity,
    cyclo_make,
    galois_apply,
    kummer_galois,
    kummer_make,
    root_of_unity,
    roots_in_field,
    sqrt_in_field,
    subfield_contains,
)
from .proj_group import (
    ALL_POINTS,
    FiniteGroup,
    P1Point,
    Pgl2Elem,
    classify_group,
    expected_orbit_table,
    fixed_points,
    fixed_points_defined_over,
    generate_group,
    minimal_field_for,
    orbit,
    special_orbit_table,
    stabilizer,
    standard_generators,
    standard_group,
)
from .hj_chains import (
    FibreChain,
    FibreFate,
    HJFraction,
    contract_chain,
    hj_eval,
    hj_expand,
    singular_fibre_chain,
    smooth_fibre_chain,
)
from .quotient_engine import (
    OrbitDatum,
    QuotientReport,
    SurfaceModel,
    check_theorem_cbundle,
    classify_swap_mechanism,
    fibre_fate,
    quotient_count,
    reduce_group,
    swap_parity_check,
    table1_bound,
    validate_model,
)
from .example_factory import (
    EquationPayload,
    ExampleReport,
    ExampleSpec,
    build_example,
    build_stabilized_example,
    generate_family,
    integer_mu_tuples,
    verify_example,
)
from .birational_compare import (
    FibreLocus,
    compare_loci,
    loci_equivalent,
    mobius_from_triples,
    pairwise_inequivalence,
    quotient_locus,
    upstairs_locus,
)

__version__ = "0.1.0"
