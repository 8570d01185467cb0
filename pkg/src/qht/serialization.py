"""File formats: the JSON matrix exchange schema and CSV/JSON table exports.

A matrix travels as ``{"dim": d, "re": [[...]], "im": [[...]]}`` with
row-major entries and is validated against the Hermitian invariant on
load.  Curve and report tables are written as CSV with 17 significant
digits plus a JSON mirror carrying the same fields, so identical inputs
produce byte-identical outputs.
"""

import json
import math

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .errors import ParseError
from .exponents import ExponentCurve
from .finite_n import BoundReport, ConjectureReport, SteinPoint
from .pairs import HypothesisPair, PRESETS, preset_pair


def _fmt(x) -> str:
    if x is None:
        return ""
    x = float(x)
    if math.isinf(x):
        return "-inf" if x < 0 else "inf"
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return f"{x:.17g}"


def _jnum(x):
    # strict JSON has no Infinity literal
    x = float(x)
    if math.isfinite(x):
        return x
    return "-inf" if x < 0 else "inf"


def matrix_to_dict(M) -> dict:
    A = np.asarray(M, dtype=complex)
    return {
        "dim": int(A.shape[0]),
        "re": A.real.tolist(),
        "im": A.imag.tolist(),
    }


def matrix_from_dict(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ParseError(f"expected a matrix object, got {type(obj).__name__}")
    try:
        dim = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed matrix object: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise ParseError(
            f"matrix entries must be {dim}x{dim}, got {re.shape} and {im.shape}"
        )
    return re + 1j * im


def pair_to_json(pair: HypothesisPair) -> str:
    payload = {
        "rho": matrix_to_dict(pair.rho),
        "sigma": matrix_to_dict(pair.sigma),
    }
    return json.dumps(payload, indent=2) + "\n"


def pair_from_json(text: str, tol: ToleranceConfig = DEFAULT_TOL) -> HypothesisPair:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(payload, dict) or "rho" not in payload or "sigma" not in payload:
        raise ParseError('pair files need top-level "rho" and "sigma" matrices')
    rho = matrix_from_dict(payload["rho"])
    sigma = matrix_from_dict(payload["sigma"])
    return HypothesisPair(rho, sigma, tol)


def load_pair(
    path_or_preset: str,
    tol: ToleranceConfig = DEFAULT_TOL,
    smoothing_delta: float | None = None,
) -> HypothesisPair:
    """Load a pair from a preset name or a JSON file, optionally smoothed."""
    if path_or_preset in PRESETS:
        pair = preset_pair(path_or_preset, tol)
    else:
        try:
            with open(path_or_preset, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {path_or_preset!r}: {exc}") from exc
        pair = pair_from_json(text, tol)
    if smoothing_delta is not None:
        pair = pair.smoothed(smoothing_delta)
    return pair


def curve_to_csv(curve: ExponentCurve) -> str:
    lines = ["param,value,argmax_s"]
    for i in range(len(curve)):
        arg = None if curve.argmax_s is None else curve.argmax_s[i]
        lines.append(f"{_fmt(curve.params[i])},{_fmt(curve.values[i])},{_fmt(arg)}")
    return "\n".join(lines) + "\n"


def curve_to_json(curve: ExponentCurve) -> str:
    samples = []
    for i in range(len(curve)):
        samples.append(
            {
                "param": float(curve.params[i]),
                "value": float(curve.values[i]),
                "argmax_s": None if curve.argmax_s is None else float(curve.argmax_s[i]),
            }
        )
    payload = {"parameter_name": curve.parameter_name, "samples": samples}
    return json.dumps(payload, indent=2) + "\n"


BOUND_COLUMNS = (
    "n",
    "a",
    "alpha",
    "alpha_bound",
    "beta",
    "beta_bound",
    "key_residual",
    "v_sigma_n",
    "type_bound",
)


def bound_reports_to_csv(reports: list[BoundReport]) -> str:
    lines = [",".join(BOUND_COLUMNS)]
    for r in reports:
        lines.append(
            ",".join(
                [
                    str(r.n),
                    _fmt(r.a),
                    _fmt(r.alpha),
                    _fmt(r.alpha_bound),
                    _fmt(r.beta),
                    _fmt(r.beta_bound),
                    _fmt(r.key_residual),
                    str(r.v_sigma_n),
                    str(r.type_bound),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def bound_reports_to_json(reports: list[BoundReport]) -> str:
    payload = [
        {
            "n": r.n,
            "a": r.a,
            "alpha": r.alpha,
            "alpha_bound": r.alpha_bound,
            "beta": r.beta,
            "beta_bound": r.beta_bound,
            "key_residual": r.key_residual,
            "v_sigma_n": r.v_sigma_n,
            "type_bound": r.type_bound,
        }
        for r in reports
    ]
    return json.dumps(payload, indent=2) + "\n"


def hoeffding_table_to_csv(rows: list[tuple[float, float, float]]) -> str:
    lines = ["r,u,a_r"]
    for r, u, ar in rows:
        lines.append(f"{_fmt(r)},{_fmt(u)},{_fmt(ar)}")
    return "\n".join(lines) + "\n"


def hoeffding_table_to_json(rows: list[tuple[float, float, float]]) -> str:
    payload = [{"r": r, "u": u, "a_r": ar} for r, u, ar in rows]
    return json.dumps(payload, indent=2) + "\n"


def stein_points_to_csv(points: list[SteinPoint]) -> str:
    lines = ["n,a,alpha,alpha_bound,beta,log_beta_rate,log_beta_envelope"]
    for p in points:
        lines.append(
            ",".join(
                [
                    str(p.n),
                    _fmt(p.a),
                    _fmt(p.alpha),
                    _fmt(p.alpha_bound),
                    _fmt(p.beta),
                    _fmt(p.log_beta_rate),
                    _fmt(p.log_beta_envelope),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def stein_points_to_json(points: list[SteinPoint]) -> str:
    payload = [
        {
            "n": p.n,
            "a": p.a,
            "alpha": p.alpha,
            "alpha_bound": p.alpha_bound,
            "beta": p.beta,
            "log_beta_rate": _jnum(p.log_beta_rate),
            "log_beta_envelope": p.log_beta_envelope,
        }
        for p in points
    ]
    return json.dumps(payload, indent=2) + "\n"


def conjecture_report_to_csv(report: ConjectureReport) -> str:
    lines = [
        "n,a,alpha,log_alpha_rate,alpha_conjecture,beta,log_beta_rate,beta_conjecture"
    ]
    for row in report.rows:
        lines.append(
            ",".join(
                [
                    str(row.n),
                    _fmt(row.a),
                    _fmt(row.alpha),
                    _fmt(row.log_alpha_rate),
                    _fmt(row.alpha_conjecture),
                    _fmt(row.beta),
                    _fmt(row.log_beta_rate),
                    _fmt(row.beta_conjecture),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def conjecture_report_to_json(report: ConjectureReport) -> str:
    payload = {
        "label": report.label,
        "a": report.a,
        "phi_value": report.phi_value,
        "rows": [
            {
                "n": row.n,
                "a": row.a,
                "alpha": row.alpha,
                "log_alpha_rate": _jnum(row.log_alpha_rate),
                "alpha_conjecture": row.alpha_conjecture,
                "beta": row.beta,
                "log_beta_rate": _jnum(row.log_beta_rate),
                "beta_conjecture": row.beta_conjecture,
            }
            for row in report.rows
        ],
    }
    return json.dumps(payload, indent=2) + "\n"
