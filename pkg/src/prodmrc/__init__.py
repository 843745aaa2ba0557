"""Maximally recoverable codes for product topologies T_{m,n}(a,b,0)."""

from .codegen import (
    SampledCode,
    SymbolicMatrix,
    build_gcol_a1,
    build_gcol_a2,
    build_grow,
    proof_decomposition,
    sample_code,
    sample_code_a2,
    sample_generic_code,
    sample_universal_mrc,
    tensor,
)
from .errors import MRCError
from .gfield import DEFAULT_Q, Field, FieldMatrix, det, field_new, nullspace, rank, rref, solve
from .matchgraph import (
    BipartiteGraph,
    HallWitness,
    Matching,
    build_erasure_nonerasure_graph,
    build_rowcol_graph,
    complete_matching,
    matrix_pattern_graph,
    neighborhood_check,
)
from .patterns import (
    ErasurePattern,
    Topology,
    enclosing_grid,
    extend_pattern,
    find_extension,
    format_pattern,
    is_regular,
    parse_pattern,
    reduce_rowwise,
    row_profiles,
)
from .recovery import Codeword, ReceivedWord, decode, encode, erase, is_recoverable_by

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "Codeword",
    "DEFAULT_Q",
    "ErasurePattern",
    "Field",
    "FieldMatrix",
    "HallWitness",
    "MRCError",
    "Matching",
    "ReceivedWord",
    "SampledCode",
    "SymbolicMatrix",
    "Topology",
    "build_erasure_nonerasure_graph",
    "build_gcol_a1",
    "build_gcol_a2",
    "build_grow",
    "build_rowcol_graph",
    "complete_matching",
    "decode",
    "det",
    "enclosing_grid",
    "encode",
    "erase",
    "extend_pattern",
    "field_new",
    "find_extension",
    "format_pattern",
    "is_recoverable_by",
    "is_regular",
    "matrix_pattern_graph",
    "neighborhood_check",
    "nullspace",
    "parse_pattern",
    "proof_decomposition",
    "rank",
    "reduce_rowwise",
    "row_profiles",
    "rref",
    "sample_code",
    "sample_code_a2",
    "sample_generic_code",
    "sample_universal_mrc",
    "solve",
    "tensor",
]
