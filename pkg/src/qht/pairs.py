"""Validated hypothesis pairs, state constructors and named presets."""

from functools import cached_property

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .errors import (
    DimensionMismatch,
    InvariantViolation,
    NotPositiveSemidefinite,
    ParseError,
    SingularInput,
)
from .operators import check_hermitian, hermitian_part


def check_density(M, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Validate a density operator: Hermitian, PSD within tolerance, unit trace."""
    A = check_hermitian(M, tol)
    w = np.linalg.eigvalsh(hermitian_part(A))
    if w.min() < -tol.psd_tol:
        raise NotPositiveSemidefinite(f"min eigenvalue {w.min():.3e}")
    tr = np.trace(A).real
    if abs(tr - 1.0) > tol.trace_tol:
        raise InvariantViolation("trace", f"trace is {tr!r}, expected 1")
    return A


class HypothesisPair:
    """A validated pair (rho, sigma) of equal-dimension density operators.

    rho is the null hypothesis, sigma the alternative.  In strict mode
    (the default ToleranceConfig) both states must be positive definite,
    because the exponent functions take inverse powers and logarithms of
    them.  Eigendecompositions of both states are computed once and cached;
    eigenvalues within ``psd_tol`` below zero are floored at zero.
    """

    def __init__(self, rho, sigma, tol: ToleranceConfig = DEFAULT_TOL):
        rho = check_density(rho, tol)
        sigma = check_density(sigma, tol)
        if rho.shape != sigma.shape:
            raise DimensionMismatch(
                f"rho has dimension {rho.shape[0]}, sigma {sigma.shape[0]}"
            )
        self.rho = rho
        self.sigma = sigma
        self.dim = rho.shape[0]
        self.tol = tol
        self._level_cache = {}
        if tol.strict:
            self.assert_invertible("strict mode")

    @cached_property
    def rho_eig(self):
        w, V = np.linalg.eigh(hermitian_part(self.rho))
        return np.clip(w, 0.0, None), V

    @cached_property
    def sigma_eig(self):
        w, V = np.linalg.eigh(hermitian_part(self.sigma))
        return np.clip(w, 0.0, None), V

    def _min_support_ratio(self) -> float:
        p, _ = self.rho_eig
        q, _ = self.sigma_eig
        return min(p.min() / p.max(), q.min() / q.max())

    def assert_invertible(self, context: str) -> None:
        """Raise SingularInput unless both states have full support."""
        if self._min_support_ratio() <= self.tol.support_cutoff:
            raise SingularInput(
                f"{context} requires positive definite states; "
                f"smallest relative eigenvalue is {self._min_support_ratio():.3e}"
            )

    @cached_property
    def log_rho(self):
        self.assert_invertible("log_rho")
        p, U = self.rho_eig
        return (U * np.log(p)) @ U.conj().T

    @cached_property
    def log_sigma(self):
        self.assert_invertible("log_sigma")
        q, V = self.sigma_eig
        return (V * np.log(q)) @ V.conj().T

    @cached_property
    def swapped(self) -> "HypothesisPair":
        """The pair with the roles of the two hypotheses exchanged."""
        return HypothesisPair(self.sigma, self.rho, self.tol)

    def smoothed(self, delta: float) -> "HypothesisPair":
        """Mix both states with delta * I/d to guarantee full rank."""
        if not 0.0 < delta < 1.0:
            raise ValueError(f"smoothing delta must lie in (0, 1), got {delta}")
        eye = np.eye(self.dim) / self.dim
        return HypothesisPair(
            (1.0 - delta) * self.rho + delta * eye,
            (1.0 - delta) * self.sigma + delta * eye,
            self.tol,
        )

    def __repr__(self):
        return f"HypothesisPair(dim={self.dim})"


def random_density(rng: np.random.Generator, dim: int, floor: float = 1e-6) -> np.ndarray:
    """Draw G G*/Tr[G G*] from a standard complex normal G, floored to full rank."""
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    W = G @ G.conj().T
    rho = W / np.trace(W).real
    return (1.0 - floor) * rho + floor * np.eye(dim) / dim


def random_pair(
    seed, dim: int = 2, tol: ToleranceConfig = DEFAULT_TOL, floor: float = 1e-6
) -> HypothesisPair:
    """Deterministic random full-rank pair; ``seed`` is an int or a Generator."""
    rng = np.random.default_rng(seed) if not isinstance(seed, np.random.Generator) else seed
    return HypothesisPair(random_density(rng, dim, floor), random_density(rng, dim, floor), tol)


def random_diagonal_pair(
    seed, dim: int = 2, tol: ToleranceConfig = DEFAULT_TOL, floor: float = 1e-6
) -> HypothesisPair:
    """Deterministic commuting pair built from two random distributions."""
    rng = np.random.default_rng(seed) if not isinstance(seed, np.random.Generator) else seed
    p = rng.random(dim) + floor
    q = rng.random(dim) + floor
    return HypothesisPair(np.diag(p / p.sum()), np.diag(q / q.sum()), tol)


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-ish unitary from the QR factorization of a complex Gaussian."""
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    Q, R = np.linalg.qr(G)
    return Q * (np.diagonal(R) / np.abs(np.diagonal(R)))


def _preset_identical():
    rho = np.diag([0.6, 0.4]).astype(complex)
    return rho, rho.copy()


def _preset_commuting_1():
    return np.diag([0.5, 0.5]).astype(complex), np.diag([0.9, 0.1]).astype(complex)


def _preset_qubit_generic():
    rho = np.array([[0.70, 0.10 + 0.10j], [0.10 - 0.10j, 0.30]])
    sigma = np.array([[0.40, -0.15j], [0.15j, 0.60]])
    return rho, sigma


def _preset_qubit_skewed():
    # Strongly separated, mildly rotated pair: relative entropy ~ 16 nats,
    # so the finite-n error bounds decay visibly already at n <= 8.
    rho = np.array([[0.9999999, 0.0], [0.0, 1.0e-7]], dtype=complex)
    sigma = np.array([[2.0e-7, 3.0e-4], [3.0e-4, 0.9999998]], dtype=complex)
    return rho, sigma


PRESETS = {
    "identical": _preset_identical,
    "commuting-1": _preset_commuting_1,
    "qubit-generic": _preset_qubit_generic,
    "qubit-skewed": _preset_qubit_skewed,
}


def preset_pair(name: str, tol: ToleranceConfig = DEFAULT_TOL) -> HypothesisPair:
    try:
        builder = PRESETS[name]
    except KeyError:
        raise ParseError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        ) from None
    rho, sigma = builder()
    return HypothesisPair(rho, sigma, tol)
