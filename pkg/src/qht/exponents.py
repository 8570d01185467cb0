"""Error-exponent functions for a hypothesis pair.

Two families are implemented.  ``psi_bar`` is the exponent of the pinched
trace functional ``-log Tr[rho sigma^{s/2} rho^{-s} sigma^{s/2}]`` whose
Legendre-type transform ``phi_bar`` governs the finite-blocklength bounds;
``psi``/``phi`` are the plain (unpinched) counterparts built from
``-log Tr[rho^{1-s} sigma^s]``.  ``hoeffding_rate`` converts ``psi_bar``
into the achievable trade-off exponent for the second-kind error under an
exponential constraint on the first kind, and ``classical_psi`` /
``classical_hoeffding`` are the scalar reductions for distributions.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_OPT, OptimizerConfig
from .errors import (
    BracketFailure,
    DimensionMismatch,
    InvariantViolation,
    NonpositiveRate,
    RateTooSmallWarning,
    SingularInput,
)
from .pairs import HypothesisPair

# Lower cutoff of the s-interval for the ratio objective in the rate bound;
# the maximizer is interior for every r > 0, so the cutoff only guards 0/0.
S_MIN = 1e-6

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0

_IMAG_RESIDUE = 1e-10


def _real_trace(values: np.ndarray, context: str) -> np.ndarray:
    scale = 1.0 + np.abs(values.real)
    bad = np.abs(values.imag) > _IMAG_RESIDUE * scale
    if bad.any():
        worst = np.abs(values.imag).max()
        raise ArithmeticError(f"{context}: imaginary residue {worst:.3e} too large")
    return values.real


def _batched_powers(w, V, exponents) -> np.ndarray:
    """Stack of functional-calculus powers, one matrix per exponent.

    Zero eigenvalues contribute nothing for any exponent (support
    convention); negative exponents require the caller to have checked
    invertibility.
    """
    w = np.asarray(w, dtype=float)
    e = np.atleast_1d(np.asarray(exponents, dtype=float))
    with np.errstate(divide="ignore", invalid="ignore"):
        pw = np.where(w[None, :] > 0.0, w[None, :] ** e[:, None], 0.0)
    return np.einsum("ij,mj,kj->mik", V, pw, V.conj())


def _check_s(s) -> np.ndarray:
    s = np.atleast_1d(np.asarray(s, dtype=float))
    if (s < 0.0).any() or (s > 1.0).any():
        raise ValueError("s must lie in [0, 1]")
    return s


def psi_bar_values(pair: HypothesisPair, s) -> np.ndarray:
    """Vectorized pinched exponent over an array of s values in [0, 1]."""
    s = _check_s(s)
    pair.assert_invertible("psi_bar")
    p, U = pair.rho_eig
    q, V = pair.sigma_eig
    half = _batched_powers(q, V, s / 2.0)  # sigma^{s/2}
    inv = _batched_powers(p, U, -s)  # rho^{-s}
    tr = np.einsum("ij,mjk,mkl,mli->m", pair.rho, half, inv, half)
    tr = _real_trace(tr, "psi_bar trace")
    if (tr <= 0.0).any():
        raise ArithmeticError("psi_bar trace is not positive")
    return -np.log(tr)


def psi_values(pair: HypothesisPair, s) -> np.ndarray:
    """Vectorized plain exponent -log Tr[rho^{1-s} sigma^s] over s in [0, 1]."""
    s = _check_s(s)
    p, U = pair.rho_eig
    q, V = pair.sigma_eig
    rp = _batched_powers(p, U, 1.0 - s)
    sp = _batched_powers(q, V, s)
    tr = _real_trace(np.einsum("mij,mji->m", rp, sp), "psi trace")
    if (tr <= 0.0).any():
        raise ArithmeticError("psi trace is not positive")
    return -np.log(tr)


def psi_bar(pair: HypothesisPair, s: float) -> float:
    return float(psi_bar_values(pair, s)[0])


def psi(pair: HypothesisPair, s: float) -> float:
    return float(psi_values(pair, s)[0])


def symmetric_psi_bar(pair: HypothesisPair, s: float) -> float:
    """Hypothesis-symmetric variant: the larger of psi_bar and its swap."""
    return max(psi_bar(pair, s), psi_bar(pair.swapped, s))


def relative_entropy(pair: HypothesisPair) -> float:
    """Quantum relative entropy Tr[rho (log rho - log sigma)]."""
    value = np.trace(pair.rho @ (pair.log_rho - pair.log_sigma))
    return float(_real_trace(np.atleast_1d(value), "relative entropy")[0])


def psi_derivatives(pair: HypothesisPair, s: float) -> tuple[float, float]:
    """First and second derivative of psi at s.

    Uses the closed forms
    ``psi'(s) = e^{psi} Tr[rho^{1-s} sigma^s (log rho - log sigma)]`` and
    ``psi''(s) = -e^{psi} Tr[rho^{1-s} A sigma^s A]`` with
    ``A = log rho - log sigma - psi'(s)``; the latter is minus a variance,
    so ``psi'' < 0`` whenever rho != sigma.
    """
    s = float(_check_s(s)[0])
    L = pair.log_rho - pair.log_sigma
    p, U = pair.rho_eig
    q, V = pair.sigma_eig
    R = (U * p ** (1.0 - s)) @ U.conj().T
    S = (V * q**s) @ V.conj().T
    f = float(_real_trace(np.atleast_1d(np.trace(R @ S)), "psi trace")[0])
    d1 = float(np.trace(R @ S @ L).real) / f
    A = L - d1 * np.eye(pair.dim)
    d2 = -float(np.trace(R @ A @ S @ A).real) / f
    return d1, d2


def _golden_max(f, lo: float, hi: float, iterations: int) -> tuple[float, float]:
    """Deterministic golden-section maximization of f on [lo, hi].

    Returns the best probed point (endpoints included); ties between equal
    values resolve toward the smaller argument.
    """
    best_x, best_v = lo, f(lo)
    for x in (hi,):
        v = f(x)
        if v > best_v:
            best_x, best_v = x, v
    a, b = lo, hi
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(iterations):
        for x, v in ((x1, f1), (x2, f2)):
            if v > best_v or (v == best_v and x < best_x):
                best_x, best_v = x, v
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = f(x2)
    return best_x, best_v


def _grid_then_refine(f_many, f_one, grid: np.ndarray, iterations: int):
    """Grid scan plus golden-section refinement in the bracketing interval."""
    vals = f_many(grid)
    k = int(np.argmax(vals))
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, len(grid) - 1)]
    xr, vr = _golden_max(f_one, float(lo), float(hi), iterations)
    if vr > vals[k] or (vr == vals[k] and xr < grid[k]):
        return xr, float(vr), k
    return float(grid[k]), float(vals[k]), k


def phi_bar(
    pair: HypothesisPair, a: float, opt: OptimizerConfig = DEFAULT_OPT
) -> tuple[float, float]:
    """max over s in [0, 1] of psi_bar(s) - a s, with the maximizing s.

    Concavity of psi_bar is not established, so a dense grid scan runs
    first and golden-section only refines the winning bracket.  Ties break
    toward smaller s.
    """
    a = float(a)
    grid = np.linspace(0.0, 1.0, opt.grid_points)
    s_star, value, _ = _grid_then_refine(
        lambda s: psi_bar_values(pair, s) - a * s,
        lambda s: psi_bar(pair, s) - a * s,
        grid,
        opt.refine_iterations,
    )
    return value, s_star


def phi(
    pair: HypothesisPair, a: float, opt: OptimizerConfig = DEFAULT_OPT
) -> tuple[float, float]:
    """max over s in [0, 1] of psi(s) - a s, with the maximizing s.

    psi'' < 0 makes the objective strictly concave, so golden-section
    search over the whole interval is sufficient.
    """
    a = float(a)
    s_star, value = _golden_max(
        lambda s: psi(pair, s) - a * s, 0.0, 1.0, 2 * DEFAULT_OPT.refine_iterations
    )
    return float(value), float(s_star)


def _rate_objective_max(f_many, f_one, r: float, opt: OptimizerConfig) -> float:
    grid = np.linspace(S_MIN, 1.0, opt.grid_points)

    def many(s):
        return (f_many(s) - (1.0 - s) * r) / s

    def one(s):
        return (f_one(s) - (1.0 - s) * r) / s

    s_star, value, k = _grid_then_refine(many, one, grid, opt.refine_iterations)
    if k == 0:
        warnings.warn(
            f"rate objective peaked at the lower cutoff s = {S_MIN}; "
            "the requested rate may be too small to resolve",
            RateTooSmallWarning,
            stacklevel=3,
        )
    return value


def hoeffding_rate(
    pair: HypothesisPair, r: float, opt: OptimizerConfig = DEFAULT_OPT
) -> float:
    """Achievable second-kind exponent under the first-kind constraint e^{-nr}.

    Maximizes ``(psi_bar(s) - (1-s) r) / s`` over s in (0, 1]; equals
    ``r + a_r`` for the threshold a_r solving phi_bar(a_r) = r.
    """
    if r <= 0.0:
        raise NonpositiveRate(f"rate must be positive, got {r}")
    return _rate_objective_max(
        lambda s: psi_bar_values(pair, s), lambda s: psi_bar(pair, s), float(r), opt
    )


def solve_rate_parameter(
    pair: HypothesisPair, r: float, opt: OptimizerConfig = DEFAULT_OPT
) -> float:
    """Find a_r with phi_bar(a_r) = r by bisection.

    phi_bar is convex, nonincreasing and ranges from 0 to infinity, so a
    bracket always exists: the upper end starts where phi_bar vanishes
    (one unit above the relative entropy), the lower end doubles downward.
    """
    if r <= 0.0:
        raise NonpositiveRate(f"rate must be positive, got {r}")

    def value(a):
        return phi_bar(pair, a, opt)[0]

    a_hi = relative_entropy(pair) + 1.0
    step = 1.0
    while value(a_hi) > r:
        a_hi += step
        step *= 2.0
        if a_hi > 1e6:
            raise BracketFailure("upper bracket exceeded 1e6")
    a_lo = -1.0
    while value(a_lo) < r:
        a_lo *= 2.0
        if a_lo < -1e6:
            raise BracketFailure("lower bracket exceeded -1e6")
    # |d phi_bar / d a| <= 1, so a bracket of width w pins the value to w.
    width_goal = min(opt.bisection_tol / 10.0, 1e-11)
    for _ in range(200):
        if a_hi - a_lo <= width_goal:
            break
        mid = 0.5 * (a_lo + a_hi)
        if value(mid) >= r:
            a_lo = mid
        else:
            a_hi = mid
    return 0.5 * (a_lo + a_hi)


def check_distribution(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise DimensionMismatch(f"expected a 1-D distribution, got shape {p.shape}")
    if (p < 0.0).any():
        raise InvariantViolation("probability", f"negative entry {p.min()!r}")
    if abs(p.sum() - 1.0) > 1e-12:
        raise InvariantViolation("normalization", f"sum is {p.sum()!r}")
    return p


def classical_psi(p, q, s: float) -> float:
    """The sum ``Psi(s) = sum_x p(x)^{1-s} q(x)^s`` (not its negative log).

    Terms with p(x) = 0 contribute nothing for every s in [0, 1].
    """
    p = check_distribution(p)
    q = check_distribution(q)
    if p.shape != q.shape:
        raise DimensionMismatch("distributions must have equal support size")
    s = float(_check_s(s)[0])
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0.0, p ** (1.0 - s) * q**s, 0.0)
    return float(terms.sum())


def _classical_exponent_values(p, q, s: np.ndarray) -> np.ndarray:
    """-log sum_x p^{1-s} q^s, vectorized over s (full common support)."""
    terms = p[:, None] ** (1.0 - s[None, :]) * q[:, None] ** s[None, :]
    return -np.log(terms.sum(axis=0))


def classical_hoeffding(
    p, q, r: float, opt: OptimizerConfig = DEFAULT_OPT
) -> float:
    """Classical trade-off exponent for distributions with full common support.

    Maximizes ``(E(s) - (1-s) r) / s`` over s in (0, 1], where
    ``E(s) = -log sum_x p(x)^{1-s} q(x)^s`` is the exponent associated
    with Psi; on commuting (diagonal) quantum pairs this coincides with
    :func:`hoeffding_rate`.
    """
    if r <= 0.0:
        raise NonpositiveRate(f"rate must be positive, got {r}")
    p = check_distribution(p)
    q = check_distribution(q)
    if p.shape != q.shape:
        raise DimensionMismatch("distributions must have equal support size")
    if p.min() <= 0.0 or q.min() <= 0.0:
        raise SingularInput("classical_hoeffding requires full common support")
    return _rate_objective_max(
        lambda s: _classical_exponent_values(p, q, np.atleast_1d(s)),
        lambda s: float(_classical_exponent_values(p, q, np.atleast_1d(s))[0]),
        float(r),
        opt,
    )


@dataclass(frozen=True)
class ExponentCurve:
    """Sampled curve of one exponent function, for export and plotting."""

    parameter_name: str  # "s", "a" or "r"
    params: np.ndarray
    values: np.ndarray
    argmax_s: np.ndarray | None = None

    def __post_init__(self):
        if self.parameter_name not in ("s", "a", "r"):
            raise ValueError(f"unknown parameter name {self.parameter_name!r}")
        if len(self.params) != len(self.values):
            raise ValueError("params and values must have equal length")
        if (np.diff(self.params) <= 0.0).any():
            raise InvariantViolation("grid", "parameters must be strictly increasing")
        if self.argmax_s is not None and (
            (self.argmax_s < 0.0).any() or (self.argmax_s > 1.0).any()
        ):
            raise InvariantViolation("argmax", "argmax_s must lie in [0, 1]")

    def __len__(self):
        return len(self.params)


SWEEPABLE = ("psi_bar", "psi", "phi_bar", "phi")


def sweep_curve(
    pair: HypothesisPair,
    which: str,
    grid,
    opt: OptimizerConfig = DEFAULT_OPT,
) -> ExponentCurve:
    """Sample one of psi_bar, psi, phi_bar, phi over a strictly increasing grid.

    The phi-type sweeps record the maximizing s per grid point.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or (np.diff(grid) <= 0.0).any():
        raise InvariantViolation("grid", "grid must be 1-D and strictly increasing")
    if which == "psi_bar":
        return ExponentCurve("s", grid, psi_bar_values(pair, grid))
    if which == "psi":
        return ExponentCurve("s", grid, psi_values(pair, grid))
    if which in ("phi_bar", "phi"):
        fn = phi_bar if which == "phi_bar" else phi
        values = np.empty_like(grid)
        argmax = np.empty_like(grid)
        for i, a in enumerate(grid):
            values[i], argmax[i] = fn(pair, a, opt)
        return ExponentCurve("a", grid, values, argmax)
    raise ValueError(f"unknown curve {which!r}; expected one of {SWEEPABLE}")
