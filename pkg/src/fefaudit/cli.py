"""Command-line front end.

Subcommands:

* ``bound``     : full bound report for one state (built-in family or file).
* ``sweep``     : bounds along a one-parameter family, CSV/JSON rows.
* ``verify``    : exact-identity suites per dimension plus audit findings.
* ``decompose`` : nonzero expansion coefficients in either operator basis.

Exit codes: 0 success, 1 usage or parse error, 2 physicality error,
3 I/O error.  Bound violations found by the audit never affect the exit
code; they are findings about the audited formulas, not failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from .basis import (
    gell_mann_basis,
    gell_mann_identity_residuals,
    principal_basis_table,
    principal_identity_residuals,
)
from .decompose import (
    bloch_coefficients,
    bloch_reconstruct,
    max_entangled_identity_residual,
    principal_coefficients,
    principal_reconstruct,
    printed_max_entangled_residual,
)
from .errors import (
    HermiticityError,
    ParameterError,
    PhysicalityError,
    StateFileError,
    UnitarityError,
)
from .fef import (
    BoundReport,
    OptimizerOptions,
    bound_audit,
    paper_example3_form,
)
from .linalg import frobenius_norm
from .states import (
    DensityState,
    horodecki_state,
    isotropic_state,
    max_entangled_projector,
    random_density_state,
    state_from_matrix,
    werner_state,
)

FAMILIES = ("maxent", "isotropic", "werner-swap", "werner-paper", "horodecki", "random")

# Residual ceilings for the verify suites.
IDENTITY_TOL = 1e-10
EXPANSION_TOL = 1e-12
ROUNDTRIP_TOL = 1e-10
PATTERN_TOL = 1e-12


def _fmt(x: float) -> str:
    # 17 significant digits round-trip any finite double
    return "%.17g" % float(x)


def _fmt_complex(z: complex) -> str:
    return "%.17g%+.17gj" % (z.real, z.imag)


@dataclass(frozen=True)
class StateSpec:
    """One state: either a file path or a named family with parameters."""

    file: str | None = None
    family: str | None = None
    d: int | None = None
    p: float | None = None
    a: float | None = None
    seed: int = 0
    allow_unphysical: bool = False


@dataclass(frozen=True)
class SweepSpec:
    """Linear parameter grid over a one-parameter family, endpoints included."""

    family: str
    parameter: str
    start: float
    stop: float
    steps: int
    d: int | None = None
    optimizer: OptimizerOptions = field(default_factory=OptimizerOptions)


def parse_state_file(path: str, allow_unphysical: bool = False) -> DensityState:
    """Load {"dim": d, "re": [[...]], "im": [[...]]} and validate it.

    re/im must be d^2 x d^2 real arrays.  Validation failures raise unless
    `allow_unphysical`, in which case the record is attached for audit use.
    """
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(payload, dict):
        raise StateFileError(f"{path}: top-level value must be a JSON object")
    for key in ("dim", "re", "im"):
        if key not in payload:
            raise StateFileError(f'{path}: missing field "{key}"')
    dim = payload["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 2:
        raise StateFileError(f'{path}: field "dim" must be an integer >= 2')
    n = dim * dim

    def grid(key: str) -> np.ndarray:
        try:
            arr = np.asarray(payload[key], dtype=np.float64)
        except (TypeError, ValueError) as exc:
            raise StateFileError(f'{path}: field "{key}" is not a numeric matrix') from exc
        if arr.shape != (n, n):
            raise StateFileError(
                f'{path}: field "{key}" must be {n} x {n} for dim {dim}, got shape {arr.shape}'
            )
        return arr

    matrix = grid("re") + 1j * grid("im")
    return state_from_matrix(matrix, enforce=not allow_unphysical)


def write_state_file(state: DensityState, path: str) -> None:
    """Serialize a state in the format parse_state_file reads.

    json emits shortest round-trip representations, so the re-parsed matrix
    is bit-identical for finite doubles.
    """
    payload = {
        "dim": state.d,
        "re": state.matrix.real.tolist(),
        "im": state.matrix.imag.tolist(),
    }
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def _family_state(spec: StateSpec) -> tuple[DensityState, str]:
    family = spec.family
    if family == "horodecki":
        if spec.a is None:
            raise ParameterError("--a is required for the horodecki family")
        return horodecki_state(spec.a), f"horodecki(a={spec.a:g})"
    if spec.d is None:
        raise ParameterError(f"--d is required for the {family} family")
    d = spec.d
    if family == "maxent":
        return max_entangled_projector(d), f"maxent(d={d})"
    if family == "isotropic":
        if spec.p is None:
            raise ParameterError("--p is required for the isotropic family")
        return isotropic_state(d, spec.p), f"isotropic(d={d}, p={spec.p:g})"
    if family == "werner-swap":
        return werner_state(d, variant="swap"), f"werner-swap(d={d})"
    if family == "werner-paper":
        return werner_state(d, variant="paper"), f"werner-paper(d={d})"
    if family == "random":
        return random_density_state(d, spec.seed), f"random(d={d}, seed={spec.seed})"
    raise ParameterError(f"unknown family {family!r}")


def resolve_state(spec: StateSpec) -> tuple[DensityState, str]:
    """Materialize a StateSpec into a state plus a label for reports."""
    if (spec.file is None) == (spec.family is None):
        raise ParameterError("exactly one of --state or --family must be given")
    if spec.file is not None:
        return parse_state_file(spec.file, spec.allow_unphysical), spec.file
    return _family_state(spec)


def _write_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def cmd_bound(
    spec: StateSpec, opts: OptimizerOptions, out: str | None = None
) -> BoundReport:
    """Print the full bound report; optionally serialize it as JSON."""
    rho, label = resolve_state(spec)
    report = bound_audit(rho, opts, label=label)
    fro = frobenius_norm(rho.matrix)
    closed_form = paper_example3_form(spec.a) if spec.family == "horodecki" else None

    lines = [
        f"state: {label}",
        f"d: {report.d}",
        f"frobenius_norm: {_fmt(fro)}",
        f"theorem1_bound: {_fmt(report.bounds['theorem1'])}",
    ]
    if closed_form is not None:
        lines.append(f"paper_example3_form: {_fmt(closed_form)}")
    lines += [
        f"hoelder_sum_bound: {_fmt(report.bounds['hoelder_sum'])}",
        f"lm_bound: {_fmt(report.bounds['lm'])}",
        f"spectral_bound: {_fmt(report.bounds['spectral'])}",
        f"fef_lower: {_fmt(report.fef_lower)}",
    ]
    if report.violations:
        flagged = ", ".join(
            f"{v.bound} (undercut by {_fmt(v.gap)})" for v in report.violations
        )
        lines.append(f"violations: {flagged}")
    else:
        lines.append("violations: none")
    print("\n".join(lines))

    if out is not None:
        payload = {
            "state_label": label,
            "d": report.d,
            "frobenius_norm": fro,
            "bounds": report.bounds,
            "fef_lower": report.fef_lower,
            "violations": [{"bound": v.bound, "gap": v.gap} for v in report.violations],
            "best_unitary": {
                "re": report.best_unitary.real.tolist(),
                "im": report.best_unitary.imag.tolist(),
            },
        }
        if closed_form is not None:
            payload["paper_example3_form"] = closed_form
        with open(out, "w", encoding="utf-8", newline="") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return report


def sweep_columns(family: str) -> list[str]:
    cols = ["param", "frobenius_norm", "theorem1_bound"]
    if family == "horodecki":
        cols.append("paper_example3_form")
    cols += ["hoelder_sum_bound", "lm_bound", "spectral_bound", "fef_lower"]
    return cols


def sweep_rows(spec: SweepSpec) -> list[dict[str, float]]:
    """Evaluate every bound and the lower estimate on the parameter grid."""
    if spec.steps < 2:
        raise ParameterError(f"--steps must be at least 2, got {spec.steps}")
    if spec.start > spec.stop:
        raise ParameterError(f"--from ({spec.start:g}) exceeds --to ({spec.stop:g})")
    if spec.family == "isotropic":
        if spec.parameter != "p":
            raise ParameterError("the isotropic family sweeps --param p")
        if spec.d is None:
            raise ParameterError("--d is required for the isotropic family")
    elif spec.family == "horodecki":
        if spec.parameter != "a":
            raise ParameterError("the horodecki family sweeps --param a")
    else:
        raise ParameterError(
            f"family {spec.family!r} has no sweep parameter; use isotropic or horodecki"
        )

    rows: list[dict[str, float]] = []
    for x in np.linspace(spec.start, spec.stop, spec.steps):
        x = float(x)
        if spec.family == "isotropic":
            rho = isotropic_state(spec.d, x)
        else:
            rho = horodecki_state(x)
        report = bound_audit(rho, spec.optimizer)
        row: dict[str, float] = {
            "param": x,
            "frobenius_norm": frobenius_norm(rho.matrix),
            "theorem1_bound": report.bounds["theorem1"],
        }
        if spec.family == "horodecki":
            row["paper_example3_form"] = paper_example3_form(x)
        row["hoelder_sum_bound"] = report.bounds["hoelder_sum"]
        row["lm_bound"] = report.bounds["lm"]
        row["spectral_bound"] = report.bounds["spectral"]
        row["fef_lower"] = report.fef_lower
        rows.append(row)
    return rows


def format_rows_csv(rows: list[dict[str, float]], columns: list[str]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def cmd_sweep(
    spec: SweepSpec,
    out: str | None = None,
    fmt: str = "csv",
    plot: str | None = None,
) -> list[dict[str, float]]:
    """Write the sweep table; optionally render the curves to an image."""
    rows = sweep_rows(spec)
    columns = sweep_columns(spec.family)
    if fmt == "csv":
        text = format_rows_csv(rows, columns)
    elif fmt == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        raise ParameterError(f"unknown format {fmt!r}")
    _write_text(text, out)

    if spec.family == "horodecki":
        gap = max(
            abs(row["theorem1_bound"] - row["paper_example3_form"]) for row in rows
        )
        print(
            f"max |theorem1_bound - paper_example3_form| over grid: {_fmt(gap)}",
            file=sys.stderr,
        )
    if plot is not None:
        from .plotting import render_sweep

        render_sweep(rows, spec.parameter, spec.family, plot)
    return rows


def cmd_decompose(
    spec: StateSpec, basis: str = "principal", out: str | None = None
) -> None:
    """List coefficients with magnitude above 1e-12 plus the rebuild residual."""
    rho, label = resolve_state(spec)
    lines = [f"state: {label}", f"basis: {basis}", f"d: {rho.d}"]
    if basis == "principal":
        coeffs = principal_coefficients(rho)
        d = coeffs.d
        for i in range(d):
            for j in range(d):
                if abs(coeffs.a[i, j]) > 1e-12:
                    lines.append(f"a[{i},{j}] = {_fmt_complex(coeffs.a[i, j])}")
        for i in range(d):
            for j in range(d):
                if abs(coeffs.b[i, j]) > 1e-12:
                    lines.append(f"b[{i},{j}] = {_fmt_complex(coeffs.b[i, j])}")
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    for l in range(d):
                        if abs(coeffs.c[i, j, k, l]) > 1e-12:
                            lines.append(
                                f"c[{i},{j};{k},{l}] = "
                                f"{_fmt_complex(coeffs.c[i, j, k, l])}"
                            )
        residual = frobenius_norm(rho.matrix - principal_reconstruct(coeffs))
    elif basis == "bloch":
        coeffs = bloch_coefficients(rho)
        n = coeffs.r.shape[0]
        for i in range(n):
            if abs(coeffs.r[i]) > 1e-12:
                lines.append(f"r[{i}] = {_fmt(coeffs.r[i])}")
        for j in range(n):
            if abs(coeffs.s[j]) > 1e-12:
                lines.append(f"s[{j}] = {_fmt(coeffs.s[j])}")
        for i in range(n):
            for j in range(n):
                if abs(coeffs.m[i, j]) > 1e-12:
                    lines.append(f"m[{i},{j}] = {_fmt(coeffs.m[i, j])}")
        residual = frobenius_norm(rho.matrix - bloch_reconstruct(coeffs))
    else:
        raise ParameterError(f"unknown basis {basis!r}")
    lines.append(f"reconstruction_residual = {_fmt(residual)}")
    _write_text("\n".join(lines) + "\n", out)


def _check(label: str, residual: float, ceiling: float, lines: list[str]) -> bool:
    ok = residual <= ceiling
    lines.append(
        f"{label}: max residual {residual:.3e} "
        f"(allowed {ceiling:.0e}) -> {'PASS' if ok else 'FAIL'}"
    )
    return ok


def _isotropic_pattern_residuals(d: int, p: float) -> tuple[float, float]:
    """(on-pattern deviation from p, worst off-pattern magnitude).

    The extraction puts coefficient p on c[i, j, -i, j]; the shift index of
    the partner keeps its sign.
    """
    coeffs = principal_coefficients(isotropic_state(d, p))
    c = coeffs.c.copy()
    on = 0.0
    for i in range(d):
        for j in range(d):
            if i == 0 and j == 0:
                continue
            on = max(on, abs(c[i, j, (-i) % d, j] - p))
            c[i, j, (-i) % d, j] = 0.0
    off = max(
        float(np.abs(c).max()),
        float(np.abs(coeffs.a).max()),
        float(np.abs(coeffs.b).max()),
    )
    return on, off


def _werner_paper_check(d: int) -> tuple[float, float, float]:
    """(coefficient deviation from -1/d, off-pattern magnitude, min eigenvalue)."""
    w = werner_state(d, variant="paper")
    coeffs = principal_coefficients(w)
    c = coeffs.c.copy()
    on = 0.0
    for i in range(d):
        for j in range(d):
            if i == 0 and j == 0:
                continue
            on = max(on, abs(c[i, j, (-i) % d, j] + 1.0 / d))
            c[i, j, (-i) % d, j] = 0.0
    off = max(
        float(np.abs(c).max()),
        float(np.abs(coeffs.a).max()),
        float(np.abs(coeffs.b).max()),
    )
    return on, off, w.validation.min_eigenvalue


def cmd_verify(d_max: int, opts: OptimizerOptions | None = None) -> int:
    """Identity suites for d = 2..d_max, then optimizer-backed findings.

    The exit code reflects identity checks only.
    """
    if not (2 <= d_max <= 8):
        raise ParameterError(f"--d-max must be between 2 and 8, got {d_max}")
    if opts is None:
        opts = OptimizerOptions()

    lines: list[str] = [f"identity checks (d = 2..{d_max}):"]
    all_ok = True
    for d in range(2, d_max + 1):
        res = principal_identity_residuals(principal_basis_table(d))
        all_ok &= _check(f"d={d} principal identities", max(res.values()), IDENTITY_TOL, lines)
        res = gell_mann_identity_residuals(gell_mann_basis(d))
        all_ok &= _check(f"d={d} gell-mann identities", max(res.values()), IDENTITY_TOL, lines)
        all_ok &= _check(
            f"d={d} maximally entangled expansion",
            max_entangled_identity_residual(d),
            EXPANSION_TOL,
            lines,
        )

        worst_p = worst_b = 0.0
        for k in range(5):
            rho = random_density_state(d, seed=k)
            pc = principal_coefficients(rho)
            worst_p = max(worst_p, frobenius_norm(rho.matrix - principal_reconstruct(pc)))
            bc = bloch_coefficients(rho)
            worst_b = max(worst_b, frobenius_norm(rho.matrix - bloch_reconstruct(bc)))
        all_ok &= _check(f"d={d} principal roundtrip (5 states)", worst_p, ROUNDTRIP_TOL, lines)
        all_ok &= _check(f"d={d} bloch roundtrip (5 states)", worst_b, ROUNDTRIP_TOL, lines)

        ws = werner_state(d, variant="swap")
        wr = frobenius_norm(
            ws.matrix - principal_reconstruct(principal_coefficients(ws))
        )
        all_ok &= _check(f"d={d} werner-swap roundtrip", wr, ROUNDTRIP_TOL, lines)

        on, off = _isotropic_pattern_residuals(d, 0.3)
        all_ok &= _check(f"d={d} isotropic(p=0.3) coefficient pattern", on, IDENTITY_TOL, lines)
        all_ok &= _check(f"d={d} isotropic(p=0.3) off-pattern", off, PATTERN_TOL, lines)

        on, off, min_eig = _werner_paper_check(d)
        all_ok &= _check(f"d={d} werner-paper coefficient -1/d", on, IDENTITY_TOL, lines)
        all_ok &= _check(f"d={d} werner-paper off-pattern", off, PATTERN_TOL, lines)
        lines.append(f"d={d} werner-paper minimum eigenvalue: {_fmt(min_eig)}")

    lines.append(f"identity summary: {'all checks passed' if all_ok else 'FAILURES ABOVE'}")
    lines.append("")
    lines.append("paper-claim findings:")

    audits = [
        ("maxent(d=2)", max_entangled_projector(2)),
        ("isotropic(d=2, p=0.5)", isotropic_state(2, 0.5)),
        ("isotropic(d=2, p=0) [maximally mixed]", isotropic_state(2, 0.0)),
    ]
    for label, rho in audits:
        report = bound_audit(rho, opts, label=label)
        if report.violations:
            for v in report.violations:
                lines.append(
                    f"- {label}: {v.bound} bound {_fmt(report.bounds[v.bound])} "
                    f"undercut by fef_lower {_fmt(report.fef_lower)} "
                    f"(gap {_fmt(v.gap)})"
                )
        else:
            lines.append(f"- {label}: no bound undercut")
    on, off, min_eig = _werner_paper_check(2)
    lines.append(
        "- werner-paper(d=2): printed operator has minimum eigenvalue "
        f"{_fmt(min_eig)} (not a state); principal coefficients equal -1/d"
    )
    for d in range(2, min(d_max, 4) + 1):
        lines.append(
            f"- printed dual pairing (-i,-j) at d={d}: expansion residual "
            f"{_fmt(printed_max_entangled_residual(d))} "
            "(conjugate pairing (-i,+j) is exact)"
        )
    lines.append("findings never affect the exit code")

    print("\n".join(lines))
    return 0 if all_ok else 1


def _add_state_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--state", metavar="FILE", help="JSON state file")
    p.add_argument("--family", choices=FAMILIES, help="built-in family")
    p.add_argument("--d", type=int, help="subsystem dimension")
    p.add_argument("--p", type=float, help="isotropic mixing parameter")
    p.add_argument("--a", type=float, help="horodecki parameter in [0, 1]")
    p.add_argument(
        "--allow-unphysical",
        action="store_true",
        help="audit state files that fail physicality validation",
    )


def _add_optimizer_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--restarts", type=int, default=32, help="optimizer restarts")
    p.add_argument("--tol", type=float, default=1e-10, help="ascent stop tolerance")
    p.add_argument(
        "--seed", type=int, default=0, help="seed for Haar restarts and random states"
    )


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1, not argparse's default 2
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fefaudit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bound", help="bound report for one state")
    _add_state_flags(p)
    _add_optimizer_flags(p)
    p.add_argument("--out", metavar="FILE", help="also write the report as JSON")

    p = sub.add_parser("sweep", help="bounds along a family")
    p.add_argument("--family", choices=("isotropic", "horodecki"), required=True)
    p.add_argument("--d", type=int, help="subsystem dimension (isotropic)")
    p.add_argument("--param", choices=("p", "a"), required=True, help="swept parameter")
    p.add_argument("--from", dest="start", type=float, required=True, metavar="X")
    p.add_argument("--to", dest="stop", type=float, required=True, metavar="X")
    p.add_argument("--steps", type=int, default=11, help="grid points (endpoints included)")
    _add_optimizer_flags(p)
    p.add_argument("--out", metavar="FILE", help="write table here instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--plot", metavar="FILE", help="also render the curves to an image")

    p = sub.add_parser("verify", help="identity suites and findings")
    p.add_argument("--d-max", type=int, default=4, help="largest dimension checked (2..8)")
    _add_optimizer_flags(p)

    p = sub.add_parser("decompose", help="coefficient listing")
    _add_state_flags(p)
    p.add_argument("--seed", type=int, default=0, help="seed for the random family")
    p.add_argument("--basis", choices=("principal", "bloch"), default="principal")
    p.add_argument("--out", metavar="FILE", help="write listing here instead of stdout")

    return parser


def _state_spec(args: argparse.Namespace) -> StateSpec:
    return StateSpec(
        file=args.state,
        family=args.family,
        d=args.d,
        p=args.p,
        a=args.a,
        seed=args.seed,
        allow_unphysical=args.allow_unphysical,
    )


def _optimizer(args: argparse.Namespace) -> OptimizerOptions:
    return OptimizerOptions(restarts=args.restarts, tolerance=args.tol, seed=args.seed)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "bound":
            cmd_bound(_state_spec(args), _optimizer(args), out=args.out)
            return 0
        if args.command == "sweep":
            spec = SweepSpec(
                family=args.family,
                parameter=args.param,
                start=args.start,
                stop=args.stop,
                steps=args.steps,
                d=args.d,
                optimizer=_optimizer(args),
            )
            cmd_sweep(spec, out=args.out, fmt=args.format, plot=args.plot)
            return 0
        if args.command == "verify":
            return cmd_verify(args.d_max, _optimizer(args))
        if args.command == "decompose":
            cmd_decompose(_state_spec(args), basis=args.basis, out=args.out)
            return 0
        raise ParameterError(f"unknown command {args.command!r}")
    except (PhysicalityError, HermiticityError, UnitarityError) as exc:
        print(f"fefaudit: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"fefaudit: error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"fefaudit: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
