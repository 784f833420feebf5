"""Report construction and rendering for the command-line front end.

The JSON and text renderings are produced from the same :class:`Report`
model, so they always agree. Nothing time dependent is recorded.
"""

from __future__ import annotations

from typing import Any, Iterable

import numpy as np

from .channel import GaussianChannel, cp_check, cp_margin, distance_from_identity, is_reversible
from .linalg import JordanNegativeReport, Tolerance, norm, symplectic_defect
from .models import MatrixPayload, Report, Verdict
from .semigroup import EmbeddabilityVerdict

INDETERMINATE = "indeterminate"


def new_report(
    command: str, source: str, tol: Tolerance, label: str | None = None
) -> Report:
    return Report(label=label, source=source, command=command, tolerance=tol.abs_eps)


def _plain(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, (tuple, list, np.ndarray)):
        return [float(v) for v in value]
    return value


def add_verdict(report: Report, name: str, value, **certificates) -> Verdict:
    verdict = Verdict(
        name=name,
        value=_plain(value),
        certificates={key: _plain(val) for key, val in certificates.items()},
    )
    report.verdicts.append(verdict)
    return verdict


def matrix_payload(m) -> MatrixPayload:
    m = np.asarray(m)
    if np.iscomplexobj(m):
        return MatrixPayload(re=m.real.tolist(), im=m.imag.tolist())
    return MatrixPayload(re=m.astype(float).tolist())


def add_matrix(report: Report, name: str, m) -> None:
    report.matrices[name] = matrix_payload(m)


def cp_verdict(report: Report, x, y, tol: Tolerance) -> bool:
    margin = cp_margin(x, y, tol)
    ok = cp_check(x, y, tol)
    add_verdict(report, "cp", ok, min_eigenvalue=margin)
    return ok


def reversible_verdict(report: Report, c: GaussianChannel, tol: Tolerance, name="reversible"):
    add_verdict(
        report,
        name,
        is_reversible(c, tol),
        symplectic_defect=symplectic_defect(c.x),
        noise_norm=norm(c.y),
        distance_from_identity=distance_from_identity(c),
    )


def det_sign_verdict(report: Report, x, tol: Tolerance) -> float:
    det = float(np.linalg.det(x))
    if abs(det) <= tol.abs_eps:
        sign = "zero"
    else:
        sign = "positive" if det > 0 else "negative"
    add_verdict(report, "det_sign", sign, det=det)
    return det


def _jordan_certificates(reports: Iterable[JordanNegativeReport]) -> dict:
    certificates = {}
    for i, item in enumerate(reports):
        certificates[f"eigenvalue_{i}"] = item.eigenvalue
        certificates[f"block_sizes_{i}"] = [float(s) for s in item.block_sizes]
    return certificates


def embeddability_verdict(report: Report, name: str, verdict: EmbeddabilityVerdict) -> None:
    certificates = _jordan_certificates(verdict.reports)
    if verdict.detail:
        certificates["detail"] = verdict.detail
    add_verdict(report, name, verdict.status.value, **certificates)


def _format_value(value: Any) -> str:
    if value is None:
        return INDETERMINATE
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, list):
        return "[" + ", ".join(_format_value(v) for v in value) + "]"
    return str(value)


def _format_rows(rows, indent: str) -> Iterable[str]:
    for row in rows:
        yield indent + "  ".join(f"{v: .6e}" for v in row)


def render_text(report: Report) -> str:
    head = f"{report.command}: {report.source}"
    if report.label:
        head += f" ({report.label})"
    lines = [head, f"  tolerance: {report.tolerance:g}"]
    for verdict in report.verdicts:
        line = f"  {verdict.name}: {_format_value(verdict.value)}"
        if verdict.certificates:
            certs = ", ".join(f"{k}={_format_value(v)}" for k, v in verdict.certificates.items())
            line += f"  [{certs}]"
        lines.append(line)
    if report.notes:
        lines.append("  notes:")
        lines.extend(f"    - {note}" for note in report.notes)
    for name, payload in report.matrices.items():
        if payload.im is None:
            lines.append(f"  {name}:")
            lines.extend(_format_rows(payload.re, "    "))
        else:
            lines.append(f"  {name} (real part):")
            lines.extend(_format_rows(payload.re, "    "))
            lines.append(f"  {name} (imaginary part):")
            lines.extend(_format_rows(payload.im, "    "))
    return "\n".join(lines)


def render_json(report: Report, *, compact: bool = False) -> str:
    return report.model_dump_json(indent=None if compact else 2)
