"""Mayer homology and Mayer Laplacian spectra for filtered simplicial complexes.

The boundary operator generalizes the usual one by weighting the i-th face
with the i-th power of a primitive N-th root of unity, so d^N = 0; each
stage q = 1 .. N-1 then carries its own homology, Laplacian, persistence
diagrams, and spectral curves.
"""

__version__ = "0.1.0"

from .chain import (
    ConsistencyError,
    MayerBoundary,
    PersistenceDiagram,
    betti_curve,
    boundary_matrix,
    composed_boundary,
    count_variations,
    mayer_betti,
    persistence_diagram,
    persistent_betti,
)
from .cyclotomic import (
    CycMatrix,
    CyclotomicNumber,
    exact_kernel_basis,
    exact_rank,
    is_prime,
    root_of_unity,
)
from .metrics import (
    DiagramFamily,
    bottleneck,
    family_bottleneck,
    family_wasserstein,
    mayer_family,
    wasserstein,
)
from .pipeline import ChannelReport, CrossCheckError, PipelineResult, RunConfig, run_pipeline
from .simplicial import FilteredComplex, PointCloud, Simplex, sublevel_sizes, vr_filtration
from .spectral import (
    HermitianMatrix,
    NotPositiveSemidefinite,
    PairingError,
    SpectrumReport,
    hermitian_eigenvalues,
    laplacian_matrix,
    persistent_laplacian,
    spectral_summary,
)

__all__ = [
    "__version__",
    "CyclotomicNumber",
    "CycMatrix",
    "root_of_unity",
    "exact_rank",
    "exact_kernel_basis",
    "is_prime",
    "Simplex",
    "PointCloud",
    "FilteredComplex",
    "vr_filtration",
    "sublevel_sizes",
    "MayerBoundary",
    "boundary_matrix",
    "composed_boundary",
    "mayer_betti",
    "persistent_betti",
    "betti_curve",
    "persistence_diagram",
    "PersistenceDiagram",
    "count_variations",
    "ConsistencyError",
    "HermitianMatrix",
    "SpectrumReport",
    "laplacian_matrix",
    "persistent_laplacian",
    "hermitian_eigenvalues",
    "spectral_summary",
    "PairingError",
    "NotPositiveSemidefinite",
    "wasserstein",
    "bottleneck",
    "DiagramFamily",
    "family_wasserstein",
    "family_bottleneck",
    "mayer_family",
    "RunConfig",
    "ChannelReport",
    "PipelineResult",
    "run_pipeline",
    "CrossCheckError",
]
