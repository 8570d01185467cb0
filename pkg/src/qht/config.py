"""Numerical tolerances, optimizer settings and global budgets."""

from dataclasses import dataclass

# Dense eigensolves grow cubically; 4096 covers qubits to n = 12 and
# qutrits to n = 7.
MAX_TENSOR_DIM = 4096


@dataclass(frozen=True)
class ToleranceConfig:
    """Thresholds controlling validation, clustering and support decisions.

    cluster_rel_tol
        Eigenvalues of a Hermitian operator whose consecutive gap is below
        ``cluster_rel_tol * spectral_norm`` are merged into one distinct
        eigenvalue; the eigenvalue count v(A) and all pinching blocks are
        defined on these clusters.
    psd_tol
        Slack allowed below zero when testing positive semidefiniteness.
    proj_tol
        Slack for idempotence, orthogonality and completeness of projectors.
    support_cutoff
        Eigenvalues at or below ``support_cutoff * max_eigenvalue`` are
        treated as zero when taking inverse powers or logarithms.
    hermitian_tol, trace_tol
        Validation slack for Hermitian symmetry and unit trace.
    strict
        When True (default), inverse powers and logarithms reject
        rank-deficient input instead of silently restricting to the support.
        Use :meth:`qht.pairs.HypothesisPair.smoothed` to mix in a multiple
        of the identity when rank-deficient states must be handled.
    """

    cluster_rel_tol: float = 1e-10
    psd_tol: float = 1e-10
    proj_tol: float = 1e-9
    support_cutoff: float = 1e-12
    hermitian_tol: float = 1e-10
    trace_tol: float = 1e-10
    strict: bool = True

    def __post_init__(self):
        for name in (
            "cluster_rel_tol",
            "psd_tol",
            "proj_tol",
            "support_cutoff",
            "hermitian_tol",
            "trace_tol",
        ):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be strictly positive")


@dataclass(frozen=True)
class OptimizerConfig:
    """Settings for the one-dimensional maximizations and the rate solver."""

    grid_points: int = 2001
    refine_iterations: int = 60
    bisection_tol: float = 1e-10

    def __post_init__(self):
        if self.grid_points < 3:
            raise ValueError("grid_points must be at least 3")
        if self.refine_iterations < 1:
            raise ValueError("refine_iterations must be at least 1")
        if self.bisection_tol <= 0.0:
            raise ValueError("bisection_tol must be strictly positive")


DEFAULT_TOL = ToleranceConfig()
DEFAULT_OPT = OptimizerConfig()
