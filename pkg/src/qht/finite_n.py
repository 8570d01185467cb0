"""Exact finite-n tests, error probabilities and bound reports.

The projection test built from the pinched state commutes with the n-fold
alternative state, so its construction and both error probabilities are
evaluated blockwise in the tensor-product eigenbasis of ``sigma^{(x) n}``
with thresholds compared in log space.  That is identical to projecting
``pinch(rho_n) - e^{na} sigma_n`` onto its positive part in exact
arithmetic, but it stays accurate when ``e^{na}`` spans hundreds of orders
of magnitude, which a dense eigensolve of the difference cannot do.
"""

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_OPT, DEFAULT_TOL, MAX_TENSOR_DIM, OptimizerConfig, ToleranceConfig
from .errors import (
    DimensionBudgetExceeded,
    DimensionMismatch,
    InvariantViolation,
    NonHermitianInput,
    RateAboveDivergence,
)
from .exponents import phi, phi_bar, relative_entropy
from .operators import (
    eigendecompose,
    hermitian_part,
    key_inequality_residual,
    positive_projection,
    tensor_power,
)
from .pairs import HypothesisPair


@dataclass(frozen=True)
class TestBlock:
    """One eigenvalue level of sigma_n with the block spectrum of pinch(rho_n).

    ``log_weight`` is the log of the sigma_n eigenvalue shared by the level;
    ``in_eigs`` are the block eigenvalues of the pinched state whose
    directions lie inside the test, ``out_eigs`` the remainder.
    """

    log_weight: float
    in_eigs: np.ndarray
    out_eigs: np.ndarray


@dataclass(frozen=True)
class TestOperator:
    """A two-outcome test 0 <= A <= I on the n-fold space.

    Both constructions here produce projections; idempotency within
    ``proj_tol`` is validated at creation, which also pins the spectrum to
    a neighborhood of {0, 1}.  ``blocks`` carries the per-level data of the
    pinched construction and is None for the plain one.
    """

    operator: np.ndarray
    n: int
    a: float
    kind: str  # "pinched" or "plain"
    blocks: tuple[TestBlock, ...] | None = None

    def __post_init__(self):
        A = self.operator
        if np.abs(A - A.conj().T).max() > DEFAULT_TOL.proj_tol:
            raise NonHermitianInput("test operator is not Hermitian")
        gap = np.linalg.norm(A @ A - A)
        if gap > DEFAULT_TOL.proj_tol * max(1.0, np.linalg.norm(A)):
            raise InvariantViolation("projection", f"||A^2 - A|| = {gap:.3e}")

    @property
    def dim(self) -> int:
        return self.operator.shape[0]


@dataclass(frozen=True)
class ErrorProbabilities:
    """First- and second-kind error probabilities of one test."""

    alpha: float
    beta: float
    n: int
    a: float

    def __post_init__(self):
        for name, value in (("alpha", self.alpha), ("beta", self.beta)):
            if not -1e-12 <= value <= 1.0 + 1e-12:
                raise InvariantViolation("probability", f"{name} = {value!r}")


@dataclass(frozen=True)
class BoundReport:
    """Exact errors of the pinched test next to their proven envelopes."""

    n: int
    a: float
    alpha: float
    alpha_bound: float
    beta: float
    beta_bound: float
    key_residual: float
    v_sigma_n: int
    type_bound: int


@dataclass(frozen=True)
class SteinPoint:
    """One blocklength of the vanishing-alpha trace at fixed threshold a."""

    n: int
    a: float
    alpha: float
    alpha_bound: float
    beta: float
    log_beta_rate: float
    log_beta_envelope: float


@dataclass(frozen=True)
class ConjectureRow:
    n: int
    a: float
    alpha: float
    log_alpha_rate: float
    alpha_conjecture: float
    beta: float
    log_beta_rate: float
    beta_conjecture: float


@dataclass(frozen=True)
class ConjectureReport:
    """Plain-test rate table against the unproven plain-exponent targets.

    The comparison columns are targets only; nothing here asserts them.
    """

    label: str
    a: float
    phi_value: float
    rows: tuple[ConjectureRow, ...]


class _Level:
    __slots__ = ("log_weight", "eigenvalues", "vectors")

    def __init__(self, log_weight, eigenvalues, vectors):
        self.log_weight = log_weight
        self.eigenvalues = eigenvalues
        self.vectors = vectors  # d^n x k, orthonormal block eigenvectors


def _level_data(pair: HypothesisPair, n: int, tol: ToleranceConfig, max_dim: int):
    """Eigenvalue levels of sigma_n with the diagonalized blocks of pinch(rho_n).

    Levels group the exact tensor-product eigenvalues of sigma_n by their
    log with relative gap ``cluster_rel_tol``; numerically coincident
    products of the single-copy eigenvalues always land in one level.
    Cached per pair and n.
    """
    key = n
    cached = pair._level_cache.get(key)
    if cached is not None:
        return cached
    lam, V = pair.sigma_eig
    with np.errstate(divide="ignore"):
        loglam = np.where(lam > 0.0, np.log(lam), -np.inf)
    rho_n = tensor_power(pair.rho, n, max_dim)
    Vn = np.array([[1.0 + 0.0j]])
    logq = np.zeros(1)
    for _ in range(n):
        Vn = np.kron(Vn, V)
        logq = (logq[:, None] + loglam[None, :]).ravel()
    rt = Vn.conj().T @ rho_n @ Vn
    order = np.argsort(logq, kind="stable")
    levels = []
    start = 0
    for i in range(1, len(order) + 1):
        split = i == len(order)
        if not split:
            gap = logq[order[i]] - logq[order[start]]
            split = gap > tol.cluster_rel_tol  # NaN (-inf vs -inf) never splits
        if split:
            idx = order[start:i]
            B = hermitian_part(rt[np.ix_(idx, idx)])
            w, U = np.linalg.eigh(B)
            finite = np.isfinite(logq[idx])
            log_weight = logq[idx][finite].mean() if finite.any() else -np.inf
            levels.append(_Level(float(log_weight), w, Vn[:, idx] @ U))
            start = i
    pair._level_cache[key] = levels
    return levels


def build_pinched_test(
    pair: HypothesisPair,
    n: int,
    a: float,
    tol: ToleranceConfig = DEFAULT_TOL,
    max_dim: int = MAX_TENSOR_DIM,
) -> TestOperator:
    """Projection onto the positive part of pinch(rho_n) - e^{na} sigma_n.

    Within each sigma_n eigenvalue level the difference is the pinched
    block minus a scalar threshold, so the positive part is read off the
    block spectrum.  Block eigenvalues within the cluster tolerance of the
    threshold count as zero and stay outside, matching the strict
    inequality of the positive projection.  The result commutes with
    sigma_n by construction.
    """
    a = float(a)
    levels = _level_data(pair, n, tol, max_dim)
    dn = pair.dim**n
    blocks = []
    kept = []
    for lev in levels:
        log_thr = n * a + lev.log_weight
        if log_thr > math.log(2.0):
            # the block of a density operator has norm <= 1 < threshold
            mask = np.zeros(len(lev.eigenvalues), dtype=bool)
        else:
            thr = math.exp(log_thr)
            pos_tol = tol.cluster_rel_tol * max(1.0, thr)
            mask = lev.eigenvalues - thr > pos_tol
        blocks.append(
            TestBlock(
                log_weight=lev.log_weight,
                in_eigs=lev.eigenvalues[mask].copy(),
                out_eigs=lev.eigenvalues[~mask].copy(),
            )
        )
        if mask.any():
            kept.append(lev.vectors[:, mask])
    if kept:
        W = np.hstack(kept)
        operator = W @ W.conj().T
    else:
        operator = np.zeros((dn, dn), dtype=complex)
    return TestOperator(operator=operator, n=n, a=a, kind="pinched", blocks=tuple(blocks))


def build_plain_test(
    pair: HypothesisPair,
    n: int,
    a: float,
    tol: ToleranceConfig = DEFAULT_TOL,
    max_dim: int = MAX_TENSOR_DIM,
) -> TestOperator:
    """Projection onto the positive part of rho_n - e^{na} sigma_n, unpinched."""
    a = float(a)
    if pair.dim**n > max_dim:
        raise DimensionBudgetExceeded(f"dim {pair.dim}^{n} exceeds budget {max_dim}")
    if n * a > 700.0:
        # e^{na} overflows; the scaled alternative dominates everywhere on
        # its support, which is everything for an invertible pair.
        pair.assert_invertible("plain test with n*a > 700")
        operator = np.zeros((pair.dim**n, pair.dim**n), dtype=complex)
        return TestOperator(operator=operator, n=n, a=a, kind="plain")
    rho_n = tensor_power(pair.rho, n, max_dim)
    sigma_n = tensor_power(pair.sigma, n, max_dim)
    X = rho_n - math.exp(n * a) * sigma_n
    return TestOperator(
        operator=positive_projection(X, tol), n=n, a=a, kind="plain"
    )


def error_probabilities(
    pair: HypothesisPair, test: TestOperator, max_dim: int = MAX_TENSOR_DIM
) -> ErrorProbabilities:
    """alpha = Tr[rho_n (I - A)] and beta = Tr[sigma_n A] for one test.

    Tests carrying block data are evaluated from it: alpha is the sum of
    the excluded block eigenvalues and beta weights each included direction
    with its sigma_n eigenvalue, exact even when beta underflows any dense
    trace.  Other tests fall back to dense traces.
    """
    if test.dim != pair.dim**test.n:
        raise DimensionMismatch(
            f"test dimension {test.dim} != {pair.dim}^{test.n}"
        )
    if test.blocks is not None:
        alpha = sum(float(b.out_eigs.sum()) for b in test.blocks)
        beta = sum(
            math.exp(b.log_weight) * len(b.in_eigs)
            for b in test.blocks
            if len(b.in_eigs) and math.isfinite(b.log_weight)
        )
        return ErrorProbabilities(alpha=alpha, beta=float(beta), n=test.n, a=test.a)
    rho_n = tensor_power(pair.rho, test.n, max_dim)
    sigma_n = tensor_power(pair.sigma, test.n, max_dim)
    eye = np.eye(test.dim)
    alpha = np.trace(rho_n @ (eye - test.operator))
    beta = np.trace(sigma_n @ test.operator)
    if max(abs(alpha.imag), abs(beta.imag)) > 1e-12:
        raise ArithmeticError("error probabilities have imaginary residue")
    return ErrorProbabilities(
        alpha=float(alpha.real), beta=float(beta.real), n=test.n, a=test.a
    )


def error_envelopes(
    pair: HypothesisPair, n: int, a: float, opt: OptimizerConfig = DEFAULT_OPT
) -> tuple[float, float]:
    """Envelopes (n+1)^d e^{-n phi_bar(a)} and (n+1)^d e^{-n (phi_bar(a)+a)}.

    Valid upper bounds on the exact alpha and beta of the pinched test for
    every n and a; they may exceed 1, which is vacuous but correct.
    """
    value, _ = phi_bar(pair, a, opt)
    pref = float((n + 1) ** pair.dim)
    return pref * math.exp(-n * value), pref * math.exp(-n * (value + a))


def verify_bounds(
    pair: HypothesisPair,
    n_range,
    a_grid,
    tol: ToleranceConfig = DEFAULT_TOL,
    opt: OptimizerConfig = DEFAULT_OPT,
    max_dim: int = MAX_TENSOR_DIM,
) -> list[BoundReport]:
    """Exact errors, envelopes, pinching residual and eigenvalue counts.

    One report per (n, a); the envelopes come from the same phi_bar value
    per threshold, the pinching residual and v(sigma_n) from a dense
    clustered eigendecomposition of the n-fold alternative.
    """
    phis = {float(a): phi_bar(pair, a, opt)[0] for a in a_grid}
    reports = []
    for n in n_range:
        sigma_n = tensor_power(pair.sigma, n, max_dim)
        rho_n = tensor_power(pair.rho, n, max_dim)
        dec = eigendecompose(sigma_n, tol)
        key = key_inequality_residual(rho_n, dec, tol)
        pref = int((n + 1) ** pair.dim)
        for a in a_grid:
            a = float(a)
            test = build_pinched_test(pair, n, a, tol, max_dim)
            ep = error_probabilities(pair, test, max_dim)
            reports.append(
                BoundReport(
                    n=int(n),
                    a=a,
                    alpha=ep.alpha,
                    alpha_bound=pref * math.exp(-n * phis[a]),
                    beta=ep.beta,
                    beta_bound=pref * math.exp(-n * (phis[a] + a)),
                    key_residual=key,
                    v_sigma_n=dec.v,
                    type_bound=pref,
                )
            )
    return reports


def stein_trace(
    pair: HypothesisPair,
    a: float,
    n_max: int,
    tol: ToleranceConfig = DEFAULT_TOL,
    opt: OptimizerConfig = DEFAULT_OPT,
    max_dim: int = MAX_TENSOR_DIM,
) -> list[SteinPoint]:
    """Errors of the pinched test for n = 1..n_max at fixed a below D.

    Reports alpha next to its envelope (n+1)^d e^{-n phi_bar(a)}, which
    decays since phi_bar(a) > 0 below the relative entropy, and the beta
    rate (1/n) log beta next to -a + (d/n) log(n+1).
    """
    a = float(a)
    div = relative_entropy(pair)
    if a >= div:
        raise RateAboveDivergence(f"a = {a} is not below D = {div}")
    value, _ = phi_bar(pair, a, opt)
    points = []
    for n in range(1, int(n_max) + 1):
        test = build_pinched_test(pair, n, a, tol, max_dim)
        ep = error_probabilities(pair, test, max_dim)
        rate = math.log(ep.beta) / n if ep.beta > 0.0 else -math.inf
        points.append(
            SteinPoint(
                n=n,
                a=a,
                alpha=ep.alpha,
                alpha_bound=(n + 1) ** pair.dim * math.exp(-n * value),
                beta=ep.beta,
                log_beta_rate=rate,
                log_beta_envelope=-a + (pair.dim / n) * math.log(n + 1.0),
            )
        )
    return points


def conjecture_probe(
    pair: HypothesisPair,
    n_range,
    a: float,
    tol: ToleranceConfig = DEFAULT_TOL,
    opt: OptimizerConfig = DEFAULT_OPT,
    max_dim: int = MAX_TENSOR_DIM,
) -> ConjectureReport:
    """Rate table for the plain test against the plain-exponent targets.

    Whether those targets bound the plain test is an open question; the
    report is labeled EXPERIMENTAL and asserts nothing.
    """
    a = float(a)
    value, _ = phi(pair, a, opt)
    rows = []
    for n in n_range:
        n = int(n)
        test = build_plain_test(pair, n, a, tol, max_dim)
        ep = error_probabilities(pair, test, max_dim)
        la = math.log(ep.alpha) / n if ep.alpha > 0.0 else -math.inf
        lb = math.log(ep.beta) / n if ep.beta > 0.0 else -math.inf
        rows.append(
            ConjectureRow(
                n=n,
                a=a,
                alpha=ep.alpha,
                log_alpha_rate=la,
                alpha_conjecture=-value,
                beta=ep.beta,
                log_beta_rate=lb,
                beta_conjecture=-(value + a),
            )
        )
    return ConjectureReport(
        label="EXPERIMENTAL", a=a, phi_value=value, rows=tuple(rows)
    )
