"""Console script for checking, composing and classifying Gaussian channels.

This module exposes the :func:`main` function used by the ``gausschan`` entry
point. Every sub-command prints a report (text, or JSON with ``--json``) and
exits with 0 for a computed positive verdict, 1 for a negative verdict or a
domain error and 2 for unreadable input.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, List, Sequence, Tuple

import numpy as np

from .channel import (
    GaussianChannel,
    compose,
    distance_from_identity,
    divide,
    idempotent_normal_form,
    is_idempotent,
    is_reversible,
)
from .channel_io import (
    channel_matrices,
    load_channel,
    load_generator,
    read_channel_file,
    write_channel,
)
from .exceptions import (
    GaussChanError,
    Indeterminate,
    MissingConfiguration,
    ParseError,
    SingularKroneckerSum,
)
from .gauge import classify, gauge_semigroup_membership, hat, is_gauge_covariant, unhat_matrix
from .ini_manager import Settings, resolve_settings
from .linalg import Tolerance, norm
from .logger import configure_package_logging, create_logger
from .models import Report
from .reports import (
    INDETERMINATE,
    add_matrix,
    add_verdict,
    cp_verdict,
    det_sign_verdict,
    embeddability_verdict,
    new_report,
    render_json,
    render_text,
    reversible_verdict,
)
from .semigroup import (
    bounded_noise_check,
    embeddable_x,
    evolve,
    in_exp_sp,
    infdiv_certificate,
    infdiv_necessary,
    invariant_state,
    lindblad_export,
    semigroup_law_check,
    simple_form,
    split_exp_sp,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2

COMPOSE_ORDER_NOTE = (
    "Heisenberg-picture product: the signal first goes through the second channel"
)

Outcome = Tuple[Report, int]

logger = create_logger(__name__)


def cmd_check(path: str, tol: Tolerance) -> Outcome:
    """CP and reversibility report; exit 0 iff the channel is CP."""
    data = read_channel_file(path)
    x, y = channel_matrices(data)
    report = new_report("check", str(path), tol, data.label)
    if not cp_verdict(report, x, y, tol):
        report.notes.append("y + i (x sigma x^T - sigma) is not positive semidefinite")
        return report, EXIT_NEGATIVE
    c = GaussianChannel(x, y, tol)
    reversible_verdict(report, c, tol)
    det_sign_verdict(report, c.x, tol)
    return report, EXIT_OK


def cmd_compose(
    first: str, second: str, tol: Tolerance, out: str | None = None
) -> Outcome:
    c1 = load_channel(first, tol)
    c2 = load_channel(second, tol)
    product = compose(c1, c2, tol)
    report = new_report("compose", f"{first} . {second}", tol)
    cp_verdict(report, product.x, product.y, tol)
    report.notes.append(COMPOSE_ORDER_NOTE)
    if out:
        write_channel(out, product)
        report.notes.append(f"written to {out}")
    else:
        add_matrix(report, "x", product.x)
        add_matrix(report, "y", product.y)
    return report, EXIT_OK


def _idempotent_section(report: Report, c: GaussianChannel, tol: Tolerance) -> None:
    if not is_idempotent(c, tol):
        add_verdict(report, "idempotent", False)
        return
    try:
        form = idempotent_normal_form(c, tol)
    except GaussChanError as exc:
        add_verdict(report, "idempotent", True)
        report.notes.append(f"no idempotent normal form: {exc}")
        return
    add_verdict(report, "idempotent", True, k=form.k, noise=form.noise)
    add_matrix(report, "normal_form_s", form.s)


def _gauge_section(report: Report, c: GaussianChannel, tol: Tolerance) -> None:
    if not is_gauge_covariant(c, tol):
        add_verdict(report, "gauge_covariant", False)
        return
    add_verdict(report, "gauge_covariant", True)
    g = hat(c, tol)
    try:
        classification = classify(g, tol)
    except GaussChanError as exc:
        add_verdict(report, "gauge_case", INDETERMINATE, detail=str(exc))
        return
    unitary_defect = norm(classification.unitary_factor - np.identity(g.modes))
    certificates = dict(spectrum=classification.spectrum, unitary_defect=unitary_defect)
    if classification.components:
        certificates["components"] = ", ".join(
            part.case.value for part in classification.components
        )
    add_verdict(report, "gauge_case", classification.case.value, **certificates)
    if classification.invariant_cov is not None:
        report.notes.append("gauge channel has an invariant state")
        add_matrix(report, "invariant_cov", unhat_matrix(classification.invariant_cov))
    embeddability_verdict(report, "gauge_semigroup", gauge_semigroup_membership(g, tol))


def _infdiv_section(report: Report, c: GaussianChannel, tol: Tolerance) -> None:
    if not infdiv_necessary(c, tol):
        add_verdict(report, "infinitesimal_divisible", False)
        report.notes.append("det x < 0: not infinitesimal divisible")
        return
    try:
        certificate = infdiv_certificate(c.x, tol)
    except GaussChanError as exc:
        add_verdict(report, "infinitesimal_divisible", INDETERMINATE, detail=str(exc))
        return
    add_verdict(
        report,
        "infinitesimal_divisible",
        True,
        sign_factor=certificate.first is not None,
    )


def cmd_classify(path: str, tol: Tolerance) -> Outcome:
    """Aggregated classification; indeterminate verdicts are reported, not failed."""
    data = read_channel_file(path)
    x, y = channel_matrices(data)
    report = new_report("classify", str(path), tol, data.label)
    if not cp_verdict(report, x, y, tol):
        return report, EXIT_NEGATIVE
    c = GaussianChannel(x, y, tol)
    reversible_verdict(report, c, tol)
    _idempotent_section(report, c, tol)
    _gauge_section(report, c, tol)
    det_sign_verdict(report, c.x, tol)
    _infdiv_section(report, c, tol)
    embeddability_verdict(report, "embeddable", embeddable_x(c.x, tol))
    return report, EXIT_OK


def cmd_divide(
    path: str,
    tol: Tolerance,
    epsilon: float | None = None,
    out_left: str | None = None,
    out_right: str | None = None,
) -> Outcome:
    data = read_channel_file(path)
    c = load_channel(path, tol)
    division = divide(c, tol, epsilon=epsilon)
    report = new_report("divide", str(path), tol, data.label)
    add_verdict(
        report,
        "division",
        division.branch,
        residual=division.residual,
        epsilon=division.epsilon,
        attempts=division.attempts,
    )
    reversible_verdict(report, division.left, tol, name="left_reversible")
    reversible_verdict(report, division.right, tol, name="right_reversible")
    if division.branch == "kernel_projector":
        report.notes.append("x is singular: right factor projects onto its kernel")
    for side, factor, out in (
        ("left", division.left, out_left),
        ("right", division.right, out_right),
    ):
        if out:
            write_channel(out, factor, label=f"{data.label or Path(path).stem} {side}")
            report.notes.append(f"{side} factor written to {out}")
        else:
            add_matrix(report, f"{side}_x", factor.x)
            add_matrix(report, f"{side}_y", factor.y)
    return report, EXIT_OK


def _time_tag(t: float) -> str:
    return f"{t:g}"


def cmd_semigroup(
    path: str,
    tol: Tolerance,
    times: Sequence[float] = (1.0,),
    out_dir: str | None = None,
) -> Outcome:
    g = load_generator(path, tol)
    report = new_report("semigroup", str(path), tol)

    for t in times:
        channel = evolve(g, t, tol)
        add_verdict(
            report,
            f"evolve t={_time_tag(t)}",
            True,
            t=t,
            distance_from_identity=distance_from_identity(channel),
        )
        if out_dir:
            target = Path(out_dir) / f"channel_t{_time_tag(t)}.json"
            write_channel(target, channel, label=f"t={_time_tag(t)}")
            report.notes.append(f"t={_time_tag(t)} written to {target}")
        else:
            add_matrix(report, f"x(t={_time_tag(t)})", channel.x)
            add_matrix(report, f"y(t={_time_tag(t)})", channel.y)

    add_verdict(report, "semigroup_law", semigroup_law_check(g, 0.5, 0.5, tol), t=0.5, s=0.5)

    try:
        form = simple_form(g, tol)
    except SingularKroneckerSum as exc:
        add_verdict(report, "simple_form", False)
        report.notes.append(f"no simple form: {exc}")
        form = None
    except GaussChanError as exc:
        add_verdict(report, "simple_form", INDETERMINATE, detail=str(exc))
        form = None
    if form is not None:
        add_verdict(report, "simple_form", True, unique=form.unique)
        add_matrix(report, "anchor", form.anchor)

    try:
        bounded, _ = bounded_noise_check(g, tol)
        add_verdict(report, "bounded_noise", bounded)
    except Indeterminate as exc:
        add_verdict(report, "bounded_noise", INDETERMINATE, detail=str(exc))

    state = invariant_state(form, tol) if form is not None else None
    add_verdict(report, "invariant_state", state is not None)
    if state is not None:
        add_matrix(report, "invariant_cov", state.cov)

    h, rows = lindblad_export(g, tol)
    add_matrix(report, "lindblad_h", h)
    add_matrix(report, "lindblad_l", rows.astype(complex))
    return report, EXIT_OK


def cmd_embed_check(path: str, tol: Tolerance) -> Outcome:
    """Embeddability of ``x``; reversible channels also get the symplectic tests."""
    data = read_channel_file(path)
    x, y = channel_matrices(data)
    report = new_report("embed-check", str(path), tol, data.label)
    verdict = embeddable_x(x, tol)
    embeddability_verdict(report, "embeddable", verdict)

    try:
        c = GaussianChannel(x, y, tol)
    except GaussChanError as exc:
        report.notes.append(f"not a valid channel, symplectic tests skipped: {exc}")
        c = None
    if c is not None and is_reversible(c, tol):
        embeddability_verdict(report, "in_exp_sp", in_exp_sp(c.x, tol))
        p, o = split_exp_sp(c.x, tol)
        add_matrix(report, "positive_factor", p)
        add_matrix(report, "orthogonal_factor", o)

    if verdict.status.value == "no":
        return report, EXIT_NEGATIVE
    return report, EXIT_OK


def _guarded(fn: Callable[..., Outcome], *args, **kwargs) -> Tuple[Report | None, int]:
    try:
        return fn(*args, **kwargs)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, EXIT_PARSE
    except (GaussChanError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return None, EXIT_NEGATIVE


def batch_paths(path: str) -> List[Path]:
    return sorted(Path(path).glob("*.json"))


def run_batch(
    fn: Callable[[str, Tolerance], Outcome], path: str, settings: Settings
) -> List[Tuple[Report | None, int]]:
    """Apply ``fn`` to every ``*.json`` in ``path``; results follow sorted path order."""
    paths = batch_paths(path)
    logger.debug("batch: %d files with %d workers", len(paths), settings.workers)
    with ThreadPoolExecutor(max_workers=settings.workers) as pool:
        futures = [pool.submit(_guarded, fn, str(p), settings.tolerance) for p in paths]
        return [future.result() for future in futures]


def _emit(
    outcomes: Sequence[Tuple[Report | None, int]], as_json: bool, *, batch: bool = False
) -> int:
    for report, _ in outcomes:
        if report is None:
            continue
        if as_json:
            print(render_json(report, compact=batch))
        else:
            print(render_text(report))
    return max((code for _, code in outcomes), default=EXIT_OK)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gausschan", description="Check and classify Gaussian quantum channels."
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="Absolute and relative tolerance.")
    common.add_argument("--json", action="store_true", help="Print the machine-readable report.")
    common.add_argument("--ini", default=None, help="Path to GAUSSCHAN.INI.")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", parents=[common], help="CP and reversibility checks.")
    check.add_argument("path", help="Channel file or directory of channel files.")
    check.add_argument("--workers", type=int, default=None, help="Threads for directory mode.")

    comp = sub.add_parser("compose", parents=[common], help="Compose two channels.")
    comp.add_argument("first")
    comp.add_argument("second")
    comp.add_argument("--out", default=None, help="Write the product to this file.")

    cls = sub.add_parser("classify", parents=[common], help="Full classification report.")
    cls.add_argument("path", help="Channel file or directory of channel files.")
    cls.add_argument("--workers", type=int, default=None, help="Threads for directory mode.")

    div = sub.add_parser("divide", parents=[common], help="Split into two non-reversible factors.")
    div.add_argument("path")
    div.add_argument("--epsilon", type=float, default=None)
    div.add_argument("--out-left", default=None)
    div.add_argument("--out-right", default=None)

    semi = sub.add_parser("semigroup", parents=[common], help="Evolve a generator file.")
    semi.add_argument("path")
    semi.add_argument("--t", type=float, nargs="+", default=[1.0], dest="times")
    semi.add_argument("--out-dir", default=None)

    emb = sub.add_parser("embed-check", parents=[common], help="Semigroup embeddability of x.")
    emb.add_argument("path")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = resolve_settings(
            tol=args.tol, workers=getattr(args, "workers", None), ini_path=args.ini
        )
    except MissingConfiguration as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if settings.log_file or settings.log_level:
        configure_package_logging(settings.log_file, settings.log_level)
    tol = settings.tolerance

    if args.command in ("check", "classify"):
        fn = cmd_check if args.command == "check" else cmd_classify
        if Path(args.path).is_dir():
            return _emit(run_batch(fn, args.path, settings), args.json, batch=True)
        return _emit([_guarded(fn, args.path, tol)], args.json)
    if args.command == "compose":
        outcome = _guarded(cmd_compose, args.first, args.second, tol, args.out)
    elif args.command == "divide":
        outcome = _guarded(
            cmd_divide, args.path, tol, args.epsilon, args.out_left, args.out_right
        )
    elif args.command == "semigroup":
        outcome = _guarded(cmd_semigroup, args.path, tol, args.times, args.out_dir)
    else:
        outcome = _guarded(cmd_embed_check, args.path, tol)
    return _emit([outcome], args.json)


if __name__ == "__main__":
    sys.exit(main())
