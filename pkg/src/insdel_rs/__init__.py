"""Two-dimensional Reed-Solomon codes over cubic extension fields that correct n - 3 insertions/deletions."""

from .channel import (
    DecodeResult,
    Delete,
    EditScript,
    Insert,
    Outcome,
    apply_edits,
    confusability_check,
    decode_k2,
    insdel_distance,
    lcs,
    oracle_decode,
    random_edit_script,
)
from .finite_field import BaseField, TowerField, base_context_create, canonical_irreducible, tower_create
from .insdel_verify import (
    IndexVectorPair,
    VerificationReport,
    agreement_count,
    build_condition_matrix,
    coefficient_decomposition,
    determinant,
    enumerate_violations,
    verify_code,
)
from .rs_core import (
    ConstructionKind,
    DeltaSet,
    MessagePoly,
    RsCode,
    construct_code,
    decoding_radius,
    encode,
    field_size_bounds,
    max_length,
    select_delta_set,
)

__version__ = "0.1.0"
