"""
Command-line entry point.

::

    scalevar deriv --curve abs --eps 0.1 --grid 5 --from -0.2 --to 0.2
    scalevar residual --spec problem.json
    scalevar verify-paper

Exit codes: 0 on success, 1 if a verdict fails, 2 on input errors.
"""

import typing as tp
import argparse
import dataclasses
import hashlib
import json
import logging
import sys
import time

import numpy as np

from . import errors
from .bracket import bracket
from .constants import CSV_SIGNIFICANT_DIGITS
from .curves import Curve, corpus_curve, make_variation, validate_domain
from .problem import ProblemSpec, load_problem
from .scale import box
from .variational import (
    classical_el_residual,
    constraint_value,
    el_residual,
    el_residual_higher2,
    el_residual_param,
    evaluate_functional,
    first_variation,
    isoperimetric_multiplier,
    solve_param,
    variation_spot_check,
)
from ._core import to_jsonable
from ._checks import run_checks

logger = logging.getLogger(__name__)

COMMANDS: tp.Final = (
    "deriv",
    "eval",
    "residual",
    "variation",
    "bracket",
    "isoperimetric",
    "solve-param",
    "verify-paper",
)
DEFAULT_VARIATIONS: tp.Final = ("sine_mode", "bump", "poly_bump")

# exit codes
EXIT_OK: tp.Final = 0
EXIT_FAILED: tp.Final = 1
EXIT_INPUT: tp.Final = 2

Row = dict[str, tp.Any]


@dataclasses.dataclass
class Report:
    """
    Result of one command.

    Attributes
    ----------
    command : str
    inputs_digest : str
        sha256 of the canonical JSON of the spec and the flags.
    results : list of dict
        Table rows; derivative and residual rows carry ``x`` and ``value``.
    verdicts : dict of str to str
    passed : bool
    timing : float
        Wall time in seconds; the only field that differs between runs.
    """

    command: str
    inputs_digest: str
    results: list[Row] = dataclasses.field(default_factory=list)
    verdicts: dict[str, str] = dataclasses.field(default_factory=dict)
    passed: bool = True
    timing: float = 0.0

    def to_dict(self) -> dict[str, tp.Any]:
        return to_jsonable(dataclasses.asdict(self))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        rows = [r for r in self.results if "x" in r and "value" in r]
        if not rows:
            raise ValueError(f"command '{self.command}' has no x/value rows for csv")
        lines = ["x,re,im"]
        for row in rows:
            value = complex(row["value"])
            fields = (float(row["x"]), value.real, value.imag)
            lines.append(",".join(f"{v:.{CSV_SIGNIFICANT_DIGITS}g}" for v in fields))
        return "\n".join(lines) + "\n"


def canonical_json(value: tp.Any) -> str:
    return json.dumps(to_jsonable(value), sort_keys=True, separators=(",", ":"))


def inputs_digest(spec: ProblemSpec | None, flags: dict[str, tp.Any]) -> str:
    payload = {"spec": None if spec is None else spec.canonical(), "flags": flags}
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


def _eps_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid scale list '{text}'") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scalevar",
        description="Scale derivatives and variational residuals of non-smooth curves.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--spec", help="problem-spec JSON file")
    parser.add_argument("--out", help="write the report to this file")
    parser.add_argument("--format", choices=("json", "csv"), default=None)
    parser.add_argument("--grid", type=int, help="number of grid points")
    parser.add_argument("--eps", type=_eps_list, help="comma separated scales")
    parser.add_argument("--tol", type=float, help="verdict tolerance")
    parser.add_argument("--curve", help="corpus curve kind (deriv without --spec)")
    parser.add_argument("--from", dest="x_from", type=float, help="grid start")
    parser.add_argument("--to", dest="x_to", type=float, help="grid end")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def _flags(args: argparse.Namespace) -> dict[str, tp.Any]:
    keys = ("command", "grid", "eps", "tol", "curve", "x_from", "x_to")
    return {k: getattr(args, k) for k in keys}


def _require(spec: ProblemSpec | None, command: str) -> ProblemSpec:
    if spec is None:
        raise errors.ProblemSpecError(f"command '{command}' needs --spec", field="spec")
    return spec


def _apply_overrides(spec: ProblemSpec, args: argparse.Namespace) -> ProblemSpec:
    if not args.eps:
        return spec
    F = spec.functional.at(args.eps)
    validate_domain(spec.curve, F.interval, F.eps.eps_max, 2)
    constraint = None if spec.constraint is None else spec.constraint.at(args.eps)
    ladder = spec.ladder.starting_at(F.eps.eps_max)
    return dataclasses.replace(
        spec, functional=F, constraint=constraint, ladder=ladder
    )


def _grid_n(spec: ProblemSpec | None, args: argparse.Namespace) -> int:
    if args.grid is not None:
        return args.grid
    return spec.tolerances.grid_n if spec is not None else 201


def _xi(spec: ProblemSpec) -> complex | None:
    if spec.functional.L.has_param and spec.xi is None:
        return 0j
    return spec.xi


def _run_deriv(spec: ProblemSpec | None, args: argparse.Namespace, report: Report):
    curve: Curve
    if args.curve is not None:
        curve = corpus_curve(args.curve)
    elif spec is not None:
        curve = spec.curve
    else:
        raise errors.ProblemSpecError("deriv needs --curve or --spec", field="curve")
    if args.eps:
        eps = args.eps[0]
    else:
        eps = spec.functional.eps[0] if spec is not None else 0.1
    a, b = spec.functional.interval if spec is not None else (-1.0, 1.0)
    a = args.x_from if args.x_from is not None else a
    b = args.x_to if args.x_to is not None else b
    x = np.linspace(a, b, _grid_n(spec, args))
    values = np.asarray(box(curve, x, eps))
    report.results = [{"x": xj, "value": vj} for xj, vj in zip(x, values)]


def _run_eval(spec: ProblemSpec, args: argparse.Namespace, report: Report):
    F, xi = spec.functional, _xi(spec)
    phi = evaluate_functional(F, spec.curve, xi)
    report.results.append({"quantity": "phi", "value": phi})
    if spec.variation is not None and F.order == 1:
        dphi = first_variation(F, spec.curve, spec.variation, xi)
        report.results.append({"quantity": "first_variation", "value": dphi})
    if spec.constraint is not None:
        psi = constraint_value(spec.constraint, spec.curve, xi)
        report.results.append({"quantity": "constraint", "value": psi})


def _run_residual(spec: ProblemSpec, args: argparse.Namespace, report: Report):
    F, y, xi = spec.functional, spec.curve, _xi(spec)
    tol = args.tol if args.tol is not None else spec.tolerances.residual
    ladder = dataclasses.replace(spec.ladder, zero_tol=tol)
    grid_n = _grid_n(spec, args)
    param = None
    if F.order == 2:
        rtn = el_residual_higher2(
            F, y, xi, grid_n, ladder, diff_step=spec.tolerances.diff_step
        )
        res, param = rtn if isinstance(rtn, tuple) else (rtn, None)
    elif F.L.has_param:
        assert xi is not None
        res, param = el_residual_param(F, y, xi, grid_n, ladder)
    else:
        res = el_residual(F, y, grid_n, ladder, xi)

    classical = None
    if F.order == 1 and F.L.n == 1 and not F.L.bindings:
        try:
            classical = classical_el_residual(F.L, y, res.grid, xi)
        except errors.UnsupportedOrderError:
            logger.info("no classical residual: the curve has no second derivative")

    for j, (x, value, b) in enumerate(zip(res.grid, res.values, res.bracketed)):
        row = {"x": x, "value": value, "limit": b.limit, "verdict": b.verdict}
        if classical is not None:
            row["classical"] = classical[j]
        report.results.append(row)
    report.verdicts["residual"] = res.verdict
    report.passed = res.verdict == "extremal"
    if param is not None:
        param_ok = param.limit is not None and abs(param.limit) <= spec.tolerances.param
        report.verdicts["param"] = "zero" if param_ok else param.verdict
        report.passed = report.passed and param_ok


def _run_variation(spec: ProblemSpec, args: argparse.Namespace, report: Report):
    F, xi = spec.functional, _xi(spec)
    if spec.variation is not None:
        kinds = [spec.model.lagrangian.variation.kind]  # type: ignore[union-attr]
        family = [spec.variation]
    else:
        kinds = list(DEFAULT_VARIATIONS)
        family = [make_variation(kind, F.interval) for kind in kinds]
    tol = args.tol if args.tol is not None else spec.tolerances.residual
    ladder = dataclasses.replace(spec.ladder, zero_tol=tol)
    results = variation_spot_check(F, spec.curve, family, ladder, xi)
    for kind, h, b in zip(kinds, family, results):
        value = first_variation(F, spec.curve, h, xi)
        row = {"variation": kind, "value": value, "limit": b.limit}
        row["verdict"] = b.verdict
        report.results.append(row)
        report.verdicts[kind] = b.verdict
    report.passed = all(b.is_zero for b in results)


def _run_bracket(spec: ProblemSpec, args: argparse.Namespace, report: Report):
    F, xi = spec.functional, _xi(spec)
    ladder = spec.ladder
    if args.tol is not None:
        ladder = dataclasses.replace(ladder, zero_tol=args.tol)
    eps_max = F.eps.eps_max

    def phi(e: float) -> complex:
        return evaluate_functional(F.at(F.eps.scaled(e / eps_max)), spec.curve, xi)

    result = bracket(phi, ladder)
    report.results = [
        {"eps": e, "value": a} for e, a in zip(result.eps, result.samples)
    ]
    report.results.append(
        {"limit": result.limit, "exponent": result.exponent, "fit": result.residual}
    )
    report.verdicts["phi"] = result.verdict
    report.verdicts["diagnostic"] = result.diagnostic


def _run_isoperimetric(spec: ProblemSpec, args: argparse.Namespace, report: Report):
    if spec.constraint is None:
        msg = "isoperimetric needs a constraint Lagrangian"
        raise errors.ProblemSpecError(msg, field="lagrangian.constraint")
    res = isoperimetric_multiplier(
        spec.functional, spec.constraint, spec.curve, _grid_n(spec, args), spec.ladder
    )
    tol = args.tol if args.tol is not None else spec.tolerances.residual
    report.results.append(dataclasses.asdict(res))
    report.passed = res.k_residual_sup <= tol
    report.verdicts["multiplier"] = "extremal" if report.passed else "not-extremal"


def _run_solve_param(spec: ProblemSpec, args: argparse.Namespace, report: Report):
    xi0 = _xi(spec) or 0j
    tol = args.tol if args.tol is not None else spec.tolerances.solve
    xi = solve_param(spec.functional, spec.curve, xi0, tol)
    report.results.append({"xi0": xi0, "xi": xi})
    report.verdicts["solve"] = "converged"


def _run_verify_paper(spec, args: argparse.Namespace, report: Report):
    for check in run_checks():
        row = {"check": check.name, "passed": check.passed, **check.details}
        report.results.append(row)
        report.verdicts[check.name] = "pass" if check.passed else "fail"
    report.passed = all(v == "pass" for v in report.verdicts.values())


_RUNNERS: tp.Final[dict[str, tp.Callable[..., None]]] = {
    "deriv": _run_deriv,
    "eval": _run_eval,
    "residual": _run_residual,
    "variation": _run_variation,
    "bracket": _run_bracket,
    "isoperimetric": _run_isoperimetric,
    "solve-param": _run_solve_param,
    "verify-paper": _run_verify_paper,
}


def run(
    command: str, spec: ProblemSpec | None, args: argparse.Namespace
) -> tuple[int, Report]:
    """
    Run `command` on `spec` with the parsed flags `args`.

    Returns
    -------
    exit_code : int
        0 on success, 1 if a verdict failed.
    report : :class:`Report`
    """
    if command not in _RUNNERS:
        raise ValueError(f"{command=}, but it must be one of {COMMANDS}")
    start = time.perf_counter()
    report = Report(command, inputs_digest(spec, _flags(args)))
    if command not in ("deriv", "verify-paper"):
        spec = _apply_overrides(_require(spec, command), args)
    _RUNNERS[command](spec, args, report)
    report.timing = time.perf_counter() - start
    return (EXIT_OK if report.passed else EXIT_FAILED), report


def exit_code_for(exc: Exception) -> int:
    """Exit code of an error raised while running a command."""
    if isinstance(
        exc,
        (
            errors.NonConvergenceError,
            errors.ConditionViolationError,
            errors.HolderEstimationError,
        ),
    ):
        return EXIT_FAILED
    return EXIT_INPUT


def _error_object(exc: Exception) -> dict[str, tp.Any]:
    if isinstance(exc, errors.ScaleVarError):
        return {"error": to_jsonable(exc.to_dict())}
    return {"error": {"type": type(exc).__name__, "message": str(exc)}}


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as file:
        file.write(text)


def main(argv: tp.Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )

    try:
        spec = load_problem(args.spec) if args.spec is not None else None
        code, report = run(args.command, spec, args)
        fmt = args.format or ("csv" if args.command == "deriv" else "json")
        _write(report.to_csv() if fmt == "csv" else report.to_json(), args.out)
    except (errors.ScaleVarError, ValueError, OSError) as exc:
        logger.debug("command failed", exc_info=True)
        sys.stdout.write(json.dumps(_error_object(exc), sort_keys=True) + "\n")
        return exit_code_for(exc)
    return code


if __name__ == "__main__":
    sys.exit(main())
