from .dense import dense_eigh, tridiagonalize, tql2
from .lanczos import lanczos_top
from .norms import NormBundle, frobenius, max_abs, norms, spectral_estimate, two_to_inf
from .sign import Aligner, matrix_sign
from .subspace import SpectralSubspace, spectral_norm_sym, top_eigenpairs
from .svd import TruncatedSVD, dilation_dense, dilation_matvec, truncated_svd

__all__ = [
    "Aligner",
    "NormBundle",
    "SpectralSubspace",
    "TruncatedSVD",
    "dense_eigh",
    "dilation_dense",
    "dilation_matvec",
    "frobenius",
    "lanczos_top",
    "matrix_sign",
    "max_abs",
    "norms",
    "spectral_estimate",
    "spectral_norm_sym",
    "top_eigenpairs",
    "tql2",
    "tridiagonalize",
    "truncated_svd",
    "two_to_inf",
]
