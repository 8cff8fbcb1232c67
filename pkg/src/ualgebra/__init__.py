"""Finite universal algebra: operation tables, congruences, and semidirect
products, inner and outer, with specialized group, ring, digroup, skew brace,
heap and near-truss machinery."""

from .algebras import (
    FiniteAlgebra,
    Homomorphism,
    all_subalgebras,
    emit_algebra,
    find_isomorphism,
    generated_subalgebra,
    is_homomorphism,
    is_isomorphic,
    is_subalgebra,
    parse_algebras,
    product,
    quotient,
    subalgebra_as_algebra,
)
from .congruences import (
    all_congruences,
    congruence_generated,
    is_congruence,
    kernel,
    principal_congruence,
)
from .errors import UAError
from .inner import (
    InnerDecomposition,
    constant_endomorphisms,
    decomposition_from_idempotent,
    idempotent_endomorphisms,
    idempotent_poset,
    totally_idempotent_elements,
    verify_inner_sdp,
)
from .outer import (
    ActionFamily,
    OuterProduct,
    PointedFamily,
    build_outer_product,
    direct_product_check,
    inner_to_outer,
    pointed_object_to_sdp,
    sdp_morphism_check,
)
from .partitions import Partition, parse_partition
from .terms import Identity, Signature, Term, eval_term, parse_term, term_to_str
from .varieties import REGISTRY, VarietySpec, check_identities, get_variety

__all__ = [
    "ActionFamily",
    "FiniteAlgebra",
    "Homomorphism",
    "Identity",
    "InnerDecomposition",
    "OuterProduct",
    "Partition",
    "PointedFamily",
    "REGISTRY",
    "Signature",
    "Term",
    "UAError",
    "VarietySpec",
    "all_congruences",
    "all_subalgebras",
    "build_outer_product",
    "check_identities",
    "congruence_generated",
    "constant_endomorphisms",
    "decomposition_from_idempotent",
    "direct_product_check",
    "emit_algebra",
    "eval_term",
    "find_isomorphism",
    "generated_subalgebra",
    "get_variety",
    "idempotent_endomorphisms",
    "idempotent_poset",
    "inner_to_outer",
    "is_congruence",
    "is_homomorphism",
    "is_isomorphic",
    "is_subalgebra",
    "kernel",
    "parse_algebras",
    "parse_partition",
    "parse_term",
    "pointed_object_to_sdp",
    "principal_congruence",
    "product",
    "quotient",
    "sdp_morphism_check",
    "subalgebra_as_algebra",
    "term_to_str",
    "totally_idempotent_elements",
    "verify_inner_sdp",
]
