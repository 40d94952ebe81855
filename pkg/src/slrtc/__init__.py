"""Sparse-plus-low-rank tensor completion for image and video inpainting.

The package completes partially observed tensors by combining two priors:
low-rank mode unfoldings (weighted nuclear norm or singular-value
p-shrinkage) and a sparse orthonormal DCT spectrum, solved with an
augmented-Lagrangian alternating-direction method.
"""

from .tensor import (
    unfold,
    fold,
    project,
    expand_mask,
    inner,
    frob_norm,
    sampling_rate,
    random_mask,
    mask_from_image,
)
from .transforms import dct_nd, idct_nd
from .linalg import ThinSvd, thin_svd, reassemble
from .shrinkage import (
    WeightVector,
    soft_shrink,
    p_shrink,
    compute_weights,
    w_shrink,
    prox_wnn,
    prox_pshrink_matrix,
)
from .solvers import (
    SolverConfig,
    SolverState,
    IterationReport,
    DivergenceError,
    config_to_json,
    config_from_json,
    init_state,
    solve,
    step,
    kkt_residuals,
    lagrangian_value,
)
from .metrics import psnr, ssim, rel_change, sparsity_level, truncate_reconstruct
from .io import (
    load_image,
    save_image,
    load_video,
    save_video,
    load_tensor,
    save_tensor,
    load_mask,
    save_mask,
    write_report,
    read_report,
    write_history_csv,
)

__version__ = "0.1.0"

__all__ = [
    "unfold",
    "fold",
    "project",
    "expand_mask",
    "inner",
    "frob_norm",
    "sampling_rate",
    "random_mask",
    "mask_from_image",
    "dct_nd",
    "idct_nd",
    "ThinSvd",
    "thin_svd",
    "reassemble",
    "WeightVector",
    "soft_shrink",
    "p_shrink",
    "compute_weights",
    "w_shrink",
    "prox_wnn",
    "prox_pshrink_matrix",
    "SolverConfig",
    "SolverState",
    "IterationReport",
    "DivergenceError",
    "config_to_json",
    "config_from_json",
    "init_state",
    "solve",
    "step",
    "kkt_residuals",
    "lagrangian_value",
    "psnr",
    "ssim",
    "rel_change",
    "sparsity_level",
    "truncate_reconstruct",
    "load_image",
    "save_image",
    "load_video",
    "save_video",
    "load_tensor",
    "save_tensor",
    "load_mask",
    "save_mask",
    "write_report",
    "read_report",
    "write_history_csv",
    "__version__",
]
