"""Reductions from Boolean and number-theoretic problems to polynomial systems."""

from .affine import NAIVE_VARS, h2n_to_hn, h2n_witness, naive_squaring_fixture
from .artifact import ReductionArtifact
from .boolean import (
    BoolSys,
    CnfFormula,
    Equation,
    boolsys_to_h2n,
    decode_point,
    encode_assignment,
    sat_to_boolsys,
)
from .partition import (
    PartitionInstance,
    partition_predicate,
    partition_roles,
    partition_to_system,
    sign_point,
    w_index,
)
from .plaisted import PlaistedEncoding, plaisted_encode, upoly_gcd
from .squarify import (
    LAMBDA_OVER_Q,
    chain_epsilons,
    chain_matrix,
    homogenized_modulus,
    lambda_root,
    squarify_det,
    squarify_homogeneous,
    squarify_random,
    witness_from_assignment,
)

__all__ = [
    "BoolSys", "CnfFormula", "Equation", "LAMBDA_OVER_Q", "NAIVE_VARS", "PartitionInstance",
    "PlaistedEncoding", "ReductionArtifact", "boolsys_to_h2n", "chain_epsilons", "chain_matrix",
    "decode_point", "encode_assignment", "h2n_to_hn", "h2n_witness", "homogenized_modulus",
    "lambda_root", "naive_squaring_fixture", "partition_predicate", "partition_roles",
    "partition_to_system", "plaisted_encode", "sat_to_boolsys", "sign_point", "squarify_det",
    "squarify_homogeneous", "squarify_random", "upoly_gcd", "w_index", "witness_from_assignment",
]
