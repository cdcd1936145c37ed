"""Certified class tests and block decompositions for dense complex matrices."""

from .classify import (
    ClassReport,
    PencilCertificate,
    PencilVerdict,
    classify,
    compress,
    is_hyponormal,
    is_isometry_multiple,
    is_normal,
    is_paranormal,
    is_positive,
    is_self_adjoint,
    is_star_paranormal,
    is_unitary,
    joint_norm_attaining_set,
    kernel_compare,
    norm_attaining_subspace,
    pencil_min,
    powers_chain,
)
from .decompose import (
    BlockCheckReport,
    BlockDecomposition,
    adjoint_blocks,
    check_blocks,
    from_blocks,
    hypo_block_check,
    invariant_check,
    star_para_blocks,
)
from .hardy import (
    SymbolSpec,
    classify_hankel,
    classify_toeplitz,
    hankel_matrix,
    symbol_from_samples,
    toeplitz_matrix,
)
from .linalg import DEFAULT_TOLERANCES, InputError, Tolerances
from .spectra import (
    SpectrumDiagram,
    cluster,
    diagram_emit,
    diagram_parse,
    essential_candidate,
    singular_spectrum,
    spectrum_diagram,
)

__version__ = "0.1.0"
