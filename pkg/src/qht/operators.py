"""Hermitian spectral calculus, pinching, projections and inequality residuals.

All operators are plain complex numpy arrays.  Functions validate their
inputs against the declared invariants and raise the typed errors from
:mod:`qht.errors`; nothing here mutates its arguments.
"""

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, MAX_TENSOR_DIM, ToleranceConfig
from .errors import (
    DimensionBudgetExceeded,
    DimensionMismatch,
    NegativeSpectrum,
    NonHermitianInput,
    NotPositiveSemidefinite,
    SingularInput,
    SingularInStrictMode,
)


def as_complex_matrix(M) -> np.ndarray:
    """Coerce to a square complex array, raising DimensionMismatch otherwise."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    return A


def hermitian_part(M) -> np.ndarray:
    A = as_complex_matrix(M)
    return (A + A.conj().T) / 2.0


def check_hermitian(M, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Validate Hermitian symmetry of ``M`` relative to its spectral norm."""
    A = as_complex_matrix(M)
    asym = np.abs(A - A.conj().T).max() if A.size else 0.0
    scale = 1.0 + (np.linalg.norm(A, 2) if A.size else 0.0)
    if asym > tol.hermitian_tol * scale:
        raise NonHermitianInput(
            f"max |M - M*| = {asym:.3e} exceeds {tol.hermitian_tol:.1e} * {scale:.3e}"
        )
    return A


@dataclass(frozen=True)
class SpectralDecomposition:
    """Clustered eigensystem of a Hermitian operator.

    ``eigenvalues`` holds the distinct eigenvalues in strictly increasing
    order after merging raw eigenvalues whose consecutive gap is at most
    ``cluster_tol``; ``projections[i]`` is the orthogonal projector onto the
    eigenspace of ``eigenvalues[i]``.  The number of clusters is the
    eigenvalue count v(A) used by the pinching inequality.
    """

    eigenvalues: np.ndarray  # shape (v,)
    projections: np.ndarray  # shape (v, d, d)
    cluster_tol: float

    @property
    def v(self) -> int:
        return len(self.eigenvalues)

    @property
    def dim(self) -> int:
        return self.projections.shape[1]

    def reconstruct(self) -> np.ndarray:
        return np.einsum("a,aij->ij", self.eigenvalues, self.projections)


def eigendecompose(H, tol: ToleranceConfig = DEFAULT_TOL) -> SpectralDecomposition:
    """Eigendecompose a Hermitian operator into gap-clustered eigenspaces.

    Raw eigenvalues whose consecutive gap is below
    ``cluster_rel_tol * spectral_norm`` merge into a single cluster whose
    projector is the sum of the corresponding rank-one projectors.  Tensor
    powers produce numerically coincident eigenvalues, and merging them is
    what keeps v(A) at its exact-arithmetic value.
    """
    A = check_hermitian(H, tol)
    w, V = np.linalg.eigh(hermitian_part(A))
    norm = np.abs(w).max() if w.size else 0.0
    thr = tol.cluster_rel_tol * norm
    values = []
    projections = []
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[i - 1] > thr:
            block = V[:, start:i]
            values.append(w[start:i].mean())
            projections.append(block @ block.conj().T)
            start = i
    return SpectralDecomposition(
        eigenvalues=np.asarray(values),
        projections=np.asarray(projections),
        cluster_tol=thr,
    )


def pinch(reference: SpectralDecomposition, B) -> np.ndarray:
    """Apply the pinching map of ``reference`` to ``B``: sum of E_i B E_i.

    The result commutes with the reference operator and has the same trace
    as ``B``; for ``B`` commuting with the reference it is ``B`` itself.
    """
    A = as_complex_matrix(B)
    if A.shape[0] != reference.dim:
        raise DimensionMismatch(
            f"operator dimension {A.shape[0]} != reference dimension {reference.dim}"
        )
    return np.einsum("aij,jk,akl->il", reference.projections, A, reference.projections)


def positive_projection(X, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Projector onto the strictly positive eigenspaces of Hermitian ``X``.

    Clusters whose eigenvalue is within the cluster tolerance of zero do not
    count as strictly positive, matching the strict inequality in {X > 0}.
    """
    dec = eigendecompose(X, tol)
    mask = dec.eigenvalues > dec.cluster_tol
    if not mask.any():
        return np.zeros((dec.dim, dec.dim), dtype=complex)
    return dec.projections[mask].sum(axis=0)


def matrix_power(H, t: float, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Functional-calculus power of a Hermitian operator.

    Integer ``t >= 0`` works on any Hermitian input.  Fractional or negative
    ``t`` requires a positive semidefinite operator; eigenvalues within
    ``psd_tol`` of zero are floored at zero first.  For ``t < 0`` the
    operator must have full support: in strict mode a cluster at or below
    ``support_cutoff * max_eigenvalue`` raises, otherwise it is excluded
    (inverse on the support).  ``t == 0`` returns the support projection.
    """
    dec = eigendecompose(H, tol)
    w = dec.eigenvalues.copy()
    norm = np.abs(w).max() if w.size else 0.0
    fractional = not float(t).is_integer()
    if (t < 0 or fractional) and w.min() < -tol.psd_tol * norm:
        raise NegativeSpectrum(
            f"matrix_power with t={t} needs a PSD operator; min eigenvalue {w.min():.3e}"
        )
    if t < 0 or fractional:
        w = np.clip(w, 0.0, None)

    if t == 0:
        f = (np.abs(w) > tol.support_cutoff * norm).astype(float)
    elif t < 0:
        small = w <= tol.support_cutoff * w.max()
        if small.any() and tol.strict:
            raise SingularInStrictMode(
                f"negative power t={t} of a rank-deficient operator in strict mode"
            )
        f = np.zeros_like(w)
        f[~small] = w[~small] ** t
    else:
        f = w**t
    return np.einsum("a,aij->ij", f, dec.projections)


def matrix_log(H, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Functional-calculus logarithm; requires full support."""
    dec = eigendecompose(H, tol)
    w = dec.eigenvalues
    cutoff = tol.support_cutoff * max(w.max(), 0.0)
    if w.min() <= cutoff:
        raise SingularInput(
            f"matrix_log needs eigenvalues above {cutoff:.3e}; smallest is {w.min():.3e}"
        )
    return np.einsum("a,aij->ij", np.log(w), dec.projections)


def tensor_power(A, n: int, max_dim: int = MAX_TENSOR_DIM) -> np.ndarray:
    """n-fold Kronecker power of a square operator, within the dense budget."""
    M = as_complex_matrix(A)
    if n < 1 or int(n) != n:
        raise ValueError(f"tensor power order must be a positive integer, got {n}")
    if M.shape[0] ** n > max_dim:
        raise DimensionBudgetExceeded(
            f"dim {M.shape[0]}^{n} exceeds the budget of {max_dim}"
        )
    out = np.array([[1.0 + 0.0j]])
    for _ in range(int(n)):
        out = np.kron(out, M)
    return out


def min_eigenvalue(X, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Smallest clustered eigenvalue; X >= 0 iff this is >= -psd_tol * norm."""
    dec = eigendecompose(X, tol)
    return float(dec.eigenvalues[0])


def key_inequality_residual(
    rho_n, sigma_n_decomp: SpectralDecomposition, tol: ToleranceConfig = DEFAULT_TOL
) -> float:
    """Signed residual of the pinching inequality rho <= v * pinch(rho).

    Returns the smallest eigenvalue of ``v * pinch(rho_n) - rho_n`` for the
    pinching defined by ``sigma_n_decomp``; nonnegative (within tolerance)
    for every density operator and every projective measurement.
    """
    R = as_complex_matrix(rho_n)
    if R.shape[0] != sigma_n_decomp.dim:
        raise DimensionMismatch(
            f"state dimension {R.shape[0]} != PVM dimension {sigma_n_decomp.dim}"
        )
    residual = sigma_n_decomp.v * pinch(sigma_n_decomp, R) - R
    return min_eigenvalue(residual, tol)


def operator_convexity_gap(
    A, X, Y, t: float, tol: ToleranceConfig = DEFAULT_TOL
) -> np.ndarray:
    """Gap matrix of the operator convexity of X -> X* A X for PSD ``A``.

    Returns ``t X*AX + (1-t) Y*AY - Z*AZ`` with ``Z = tX + (1-t)Y``, which
    equals ``t(1-t) (X-Y)* A (X-Y)`` identically and is therefore PSD.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    A = check_hermitian(A, tol)
    wA = np.linalg.eigvalsh(hermitian_part(A))
    norm = np.abs(wA).max() if wA.size else 0.0
    if wA.min() < -tol.psd_tol * norm:
        raise NotPositiveSemidefinite(
            f"weight operator has min eigenvalue {wA.min():.3e}"
        )
    X = as_complex_matrix(X)
    Y = as_complex_matrix(Y)
    if X.shape != A.shape or Y.shape != A.shape:
        raise DimensionMismatch("A, X, Y must share one dimension")
    Z = t * X + (1.0 - t) * Y
    gap = (
        t * (X.conj().T @ A @ X)
        + (1.0 - t) * (Y.conj().T @ A @ Y)
        - Z.conj().T @ A @ Z
    )
    return hermitian_part(gap)


def operator_convexity_residual(
    A, X, Y, t: float, tol: ToleranceConfig = DEFAULT_TOL
) -> float:
    """Smallest eigenvalue of the convexity gap; nonnegative within psd_tol."""
    return min_eigenvalue(operator_convexity_gap(A, X, Y, t, tol), tol)
