"""The ``helix-lattice`` command: constants, verification runs, and sweeps.

Exit codes are a stable contract: 0 all substantive checks passed, 1 a
checked bound was violated (the witness is in the report), 2 malformed
input, 3 a work budget was exceeded.  Reports are JSON (schema version 1,
see README) or a flat CSV projection; identical inputs produce byte-identical
output.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from .enumeration import DEFAULT_TUBE_BUDGET, TubeQuery, enumerate_tube
from .errors import (
    BudgetExceededError,
    DomainError,
    HelixLatticeError,
    PreconditionError,
    SingularBasisError,
)
from .geometry import Helix
from .lattice import AffineLattice, lattice_constants
from .reports import SCHEMA_VERSION, csv_dumps, json_dumps, svg_scatter, write_text
from .verify import (
    delta_admissible_max,
    on_helix_bounds,
    verify_corollary,
    verify_near_helix,
    verify_on_helix,
    verify_schinzel,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3

_ON_CURVE_TOL = 1e-9


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage problems as DomainError (exit 2)."""

    def error(self, message):
        raise DomainError(message)


def parse_lattice(spec: str | None) -> AffineLattice:
    """Lattice from an inline spec or a file.

    Inline: 12 numbers (origin then the three basis vectors, row-major),
    separated by commas and/or whitespace.  A value starting with '@' names
    a file holding either the same 12 numbers or a JSON array of 4 rows.
    Omitted: the standard integer lattice.
    """
    if spec is None:
        return AffineLattice.standard()
    text = spec
    if spec.startswith("@"):
        try:
            with open(spec[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DomainError(f"cannot read lattice file {spec[1:]!r}: {exc}") from exc
    text = text.strip()
    if text.startswith("["):
        import json

        try:
            rows = json.loads(text)
        except ValueError as exc:
            raise DomainError(f"malformed lattice JSON: {exc}") from exc
        arr = np.asarray(rows, dtype=float)
        if arr.shape != (4, 3) and arr.size != 12:
            raise DomainError(f"lattice JSON must hold 12 numbers, got shape {arr.shape}")
        return AffineLattice.from_rows(arr.reshape(4, 3))
    parts = text.replace(",", " ").split()
    if len(parts) != 12:
        raise DomainError(f"lattice spec needs 12 numbers, got {len(parts)}")
    try:
        values = [float(p) for p in parts]
    except ValueError as exc:
        raise DomainError(f"malformed lattice number: {exc}") from exc
    return AffineLattice.from_rows(np.asarray(values).reshape(4, 3))


def _helix_from_args(args) -> Helix:
    if args.kappa is None or args.tau is None:
        raise DomainError("this command needs --kappa and --tau")
    return Helix.from_curvature_torsion(args.kappa, args.tau)


def _emit(args, payload: dict, csv_rows=None, csv_fields=None) -> None:
    if getattr(args, "format", "json") == "csv":
        if csv_rows is None:
            raise DomainError("csv output is not available for this command")
        # the schema version rides along as the first column of every row
        rows = [{"schema": SCHEMA_VERSION, **row} for row in csv_rows]
        content = csv_dumps(rows, ["schema"] + list(csv_fields))
    else:
        content = json_dumps(payload)
    if getattr(args, "out", None):
        write_text(args.out, content)
    else:
        sys.stdout.write(content)


def _lattice_rows(lattice: AffineLattice) -> list[list[float]]:
    return [
        list(lattice.v0.as_tuple()),
        list(lattice.v1.as_tuple()),
        list(lattice.v2.as_tuple()),
        list(lattice.v3.as_tuple()),
    ]


# ---------------------------------------------------------------------------
# constants


def cmd_constants(args) -> int:
    lattice = parse_lattice(args.lattice)
    constants = lattice_constants(
        lattice, exhaustive_bound=args.exhaustive_bound, budget=args.budget
    )
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "constants",
        "lattice": _lattice_rows(lattice),
        "lambda1": constants.lambda1,
        "d_min": constants.d_min,
        "d_min_coeffs": list(constants.d_min_coeffs),
        "a_min_lb": constants.a_min_lb,
        "a_min_exact": constants.a_min_exact,
    }
    row = {k: payload[k] for k in ("lambda1", "d_min", "a_min_lb", "a_min_exact")}
    row["d_min_coeffs"] = " ".join(str(c) for c in constants.d_min_coeffs)
    _emit(args, payload, [row], ["lambda1", "d_min", "d_min_coeffs", "a_min_lb", "a_min_exact"])
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _report_row(report_dict: dict) -> dict:
    row = {
        "theorem_id": report_dict["theorem_id"],
        "bound_value": report_dict["bound_value"],
        "observed_min": report_dict["observed_min"],
        "admissible": report_dict["admissible"],
        "tightness": report_dict["tightness"],
        "vacuous": report_dict["vacuous"],
        "ok": report_dict["ok"],
    }
    return row


_REPORT_FIELDS = ["theorem_id", "bound_value", "observed_min", "admissible", "tightness", "vacuous", "ok"]


def _finish_verify(args, subcommand: str, params: dict, reports) -> int:
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "verify",
        "subcommand": subcommand,
        "params": params,
        "reports": [r.as_dict() for r in reports],
        "summary": {
            "ok": all(r.ok for r in reports),
            "vacuous_count": sum(1 for r in reports if r.vacuous),
            "substantive_count": sum(1 for r in reports if not r.vacuous),
        },
    }
    rows = [_report_row(r.as_dict()) for r in reports]
    _emit(args, payload, rows, _REPORT_FIELDS)
    if not payload["summary"]["ok"]:
        failing = [r for r in reports if not r.ok]
        print(
            f"violation: {failing[0].theorem_id.value} bound not met "
            f"(bound {failing[0].bound_value!r}, observed {failing[0].observed_min!r})",
            file=sys.stderr,
        )
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_verify_schinzel(args) -> int:
    report = verify_schinzel(args.n)
    return _finish_verify(args, "schinzel", {"n": args.n}, [report])


def _tube_query_from_args(args, delta: float) -> tuple[TubeQuery, AffineLattice]:
    lattice = parse_lattice(args.lattice)
    helix = _helix_from_args(args)
    t_min, t_max = args.window
    query = TubeQuery(
        helix=helix,
        lattice=lattice,
        delta=delta,
        t_min=t_min,
        t_max=t_max,
        budget=args.budget,
    )
    return query, lattice


def _write_svg(args, query: TubeQuery) -> None:
    if getattr(args, "svg", None):
        points = enumerate_tube(query)
        write_text(args.svg, svg_scatter(query.helix, query.t_min, query.t_max, points))


def cmd_verify_on_helix(args) -> int:
    delta = args.delta if args.delta is not None else _ON_CURVE_TOL
    query, lattice = _tube_query_from_args(args, delta)
    constants = lattice_constants(lattice)
    reports = [verify_on_helix(query, constants)]
    corollary = verify_corollary(query, constants)
    if corollary is not None:
        reports.append(corollary)
    _write_svg(args, query)
    params = {
        "kappa": args.kappa,
        "tau": args.tau,
        "delta": delta,
        "window": list(args.window),
        "lattice": _lattice_rows(lattice),
        "seed": args.seed,
    }
    return _finish_verify(args, "on-helix", params, reports)


def cmd_verify_near_helix(args) -> int:
    delta = args.delta if args.delta is not None else 0.0
    query, lattice = _tube_query_from_args(args, delta)
    constants = lattice_constants(lattice)
    report = verify_near_helix(query, constants)
    if report.admissible:
        _write_svg(args, query)
    params = {
        "kappa": args.kappa,
        "tau": args.tau,
        "delta": delta,
        "window": list(args.window),
        "lattice": _lattice_rows(lattice),
        "seed": args.seed,
    }
    return _finish_verify(args, "near-helix", params, [report])


# ---------------------------------------------------------------------------
# sweep


@dataclass
class SweepConfig:
    """Grid sweep over (kappa, tau) with a fixed lattice and window."""

    kappa_range: tuple[float, float, int]
    tau_range: tuple[float, float, int]
    delta_policy: str
    delta_fraction: float
    lattice: AffineLattice
    window: tuple[float, float]
    seed: int
    budget: int

    def delta_for(self, helix: Helix, admissible: float) -> float:
        if self.delta_policy == "zero":
            return 0.0
        if self.delta_policy == "admissible_max":
            return admissible
        return self.delta_fraction * admissible


def _range_from(value, field: str) -> tuple[float, float, int]:
    try:
        if isinstance(value, str):
            parts = [p for p in value.replace(",", " ").split() if p]
            lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
        else:
            lo, hi, steps = float(value[0]), float(value[1]), int(value[2])
    except (ValueError, IndexError, TypeError) as exc:
        raise DomainError(f"malformed sweep field {field!r}: expected lo,hi,steps") from exc
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo <= 0 or hi < lo or steps < 1:
        raise DomainError(f"invalid sweep field {field!r}: need 0 < lo <= hi, steps >= 1")
    return lo, hi, steps


def parse_sweep_config(text: str) -> SweepConfig:
    """Sweep config from JSON or simple key=value lines."""
    text = text.strip()
    if text.startswith("{"):
        import json

        try:
            raw = json.loads(text)
        except ValueError as exc:
            raise DomainError(f"malformed sweep config JSON: {exc}") from exc
    else:
        raw = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DomainError(f"malformed sweep config line {lineno}: {line!r}")
            key, _, value = line.partition("=")
            raw[key.strip()] = value.strip()

    known = {
        "kappa_range",
        "tau_range",
        "delta_policy",
        "lattice",
        "window",
        "seed",
        "budget",
    }
    for key in raw:
        if key not in known:
            raise DomainError(f"unknown sweep config field {key!r}")
    for required in ("kappa_range", "tau_range"):
        if required not in raw:
            raise DomainError(f"sweep config is missing field {required!r}")

    kappa_range = _range_from(raw["kappa_range"], "kappa_range")
    tau_range = _range_from(raw["tau_range"], "tau_range")

    policy_raw = raw.get("delta_policy", "zero")
    fraction = 0.0
    if isinstance(policy_raw, dict):
        if set(policy_raw) != {"fraction"}:
            raise DomainError("delta_policy object must be {\"fraction\": f}")
        policy = "fraction"
        fraction = float(policy_raw["fraction"])
    else:
        policy = str(policy_raw).strip().lower()
        if policy.startswith("fraction:"):
            policy, _, frac_text = policy.partition(":")
            try:
                fraction = float(frac_text)
            except ValueError as exc:
                raise DomainError(f"malformed delta_policy fraction {frac_text!r}") from exc
    if policy not in ("zero", "admissible_max", "fraction"):
        raise DomainError(f"unknown delta_policy {policy_raw!r}")
    if policy == "fraction" and not 0.0 <= fraction <= 1.0:
        raise DomainError(f"delta_policy fraction must lie in [0, 1], got {fraction}")

    lattice_raw = raw.get("lattice")
    if lattice_raw is None:
        lattice = AffineLattice.standard()
    elif isinstance(lattice_raw, str):
        lattice = parse_lattice(lattice_raw)
    else:
        arr = np.asarray(lattice_raw, dtype=float)
        if arr.size != 12:
            raise DomainError(f"sweep field 'lattice' must hold 12 numbers, got {arr.size}")
        lattice = AffineLattice.from_rows(arr.reshape(4, 3))

    window_raw = raw.get("window", (0.0, 8.0 * math.pi))
    try:
        if isinstance(window_raw, str):
            parts = [p for p in window_raw.replace(",", " ").split() if p]
            window = (float(parts[0]), float(parts[1]))
        else:
            window = (float(window_raw[0]), float(window_raw[1]))
    except (ValueError, IndexError, TypeError) as exc:
        raise DomainError("malformed sweep field 'window': expected lo,hi") from exc
    if not window[0] < window[1]:
        raise DomainError(f"invalid sweep field 'window': {window}")

    try:
        seed = int(raw.get("seed", 0))
    except (ValueError, TypeError) as exc:
        raise DomainError("malformed sweep field 'seed'") from exc
    try:
        budget = int(raw.get("budget", DEFAULT_TUBE_BUDGET))
    except (ValueError, TypeError) as exc:
        raise DomainError("malformed sweep field 'budget'") from exc
    if budget < 1:
        raise DomainError(f"sweep field 'budget' must be positive, got {budget}")

    return SweepConfig(
        kappa_range=kappa_range,
        tau_range=tau_range,
        delta_policy=policy,
        delta_fraction=fraction,
        lattice=lattice,
        window=window,
        seed=seed,
        budget=budget,
    )


_SWEEP_FIELDS = [
    "kappa",
    "tau",
    "radius",
    "pitch_rate",
    "delta",
    "delta_admissible_max",
    "separation_bound",
    "chord_bound",
    "arc_bound",
    "admissible",
    "point_count",
    "observed_min",
    "tightness",
    "vacuous",
    "ok",
]


def run_sweep(config: SweepConfig) -> list[dict]:
    """One row per (kappa, tau) grid cell; fully deterministic."""
    constants = lattice_constants(config.lattice)
    kappas = np.linspace(*config.kappa_range)
    taus = np.linspace(*config.tau_range)
    rows = []
    for kappa in kappas:
        for tau in taus:
            helix = Helix.from_curvature_torsion(float(kappa), float(tau))
            admissible = delta_admissible_max(helix, constants)
            delta = config.delta_for(helix, admissible)
            query = TubeQuery(
                helix=helix,
                lattice=config.lattice,
                delta=delta,
                t_min=config.window[0],
                t_max=config.window[1],
                budget=config.budget,
            )
            report = verify_near_helix(query, constants)
            bounds = on_helix_bounds(helix, constants)
            rows.append(
                {
                    "kappa": float(kappa),
                    "tau": float(tau),
                    "radius": helix.a,
                    "pitch_rate": helix.b,
                    "delta": delta,
                    "delta_admissible_max": admissible,
                    "separation_bound": report.bound_value,
                    "chord_bound": bounds.chord_bound,
                    "arc_bound": bounds.arc_bound,
                    "admissible": report.admissible,
                    "point_count": report.details.get("point_count"),
                    "observed_min": report.observed_min,
                    "tightness": report.tightness,
                    "vacuous": report.vacuous,
                    "ok": report.ok,
                }
            )
    return rows


def cmd_sweep(args) -> int:
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read sweep config {args.config!r}: {exc}") from exc
    config = parse_sweep_config(text)
    rows = run_sweep(config)
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "sweep",
        "config": {
            "kappa_range": list(config.kappa_range),
            "tau_range": list(config.tau_range),
            "delta_policy": config.delta_policy,
            "delta_fraction": config.delta_fraction,
            "lattice": _lattice_rows(config.lattice),
            "window": list(config.window),
            "seed": config.seed,
            "budget": config.budget,
        },
        "rows": rows,
        "summary": {
            "ok": all(r["ok"] for r in rows),
            "vacuous_count": sum(1 for r in rows if r["vacuous"]),
            "substantive_count": sum(1 for r in rows if not r["vacuous"]),
        },
    }
    if getattr(args, "format", None) is None:
        args.format = "csv"
    _emit(args, payload, rows, _SWEEP_FIELDS)
    if not payload["summary"]["ok"]:
        bad = next(r for r in rows if not r["ok"])
        print(
            f"violation at kappa={bad['kappa']!r}, tau={bad['tau']!r}: "
            f"observed {bad['observed_min']!r} below bound {bad['separation_bound']!r}",
            file=sys.stderr,
        )
        return EXIT_VIOLATION
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_common(parser: argparse.ArgumentParser, *, window: bool) -> None:
    parser.add_argument("--lattice", help="12 numbers (v0, v1, v2, v3 row-major) or @file")
    parser.add_argument("--out", help="write the report to this path instead of stdout")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--budget", type=int, default=DEFAULT_TUBE_BUDGET)
    parser.add_argument("--seed", type=int, default=0)
    if window:
        parser.add_argument("--kappa", type=float)
        parser.add_argument("--tau", type=float)
        parser.add_argument("--delta", type=float, default=None)
        parser.add_argument(
            "--window",
            type=float,
            nargs=2,
            default=(0.0, 8.0 * math.pi),
            metavar=("T_MIN", "T_MAX"),
        )
        parser.add_argument("--svg", help="write an SVG scatter of tube points to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="helix-lattice", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_const = sub.add_parser("constants", help="lattice separation constants")
    _add_common(p_const, window=False)
    p_const.add_argument("--exhaustive-bound", type=int, default=None)
    p_const.set_defaults(func=cmd_constants)

    p_verify = sub.add_parser("verify", help="run a verification")
    v_sub = p_verify.add_subparsers(dest="target", required=True, parser_class=_Parser)

    p_sch = v_sub.add_parser("schinzel", help="circle three-point checks")
    p_sch.add_argument("n", type=int)
    _add_common(p_sch, window=False)
    p_sch.set_defaults(func=cmd_verify_schinzel)

    p_on = v_sub.add_parser("on-helix", help="chord/arc bounds for on-curve lattice points")
    _add_common(p_on, window=True)
    p_on.set_defaults(func=cmd_verify_on_helix)

    p_near = v_sub.add_parser("near-helix", help="separation bound for tube lattice points")
    _add_common(p_near, window=True)
    p_near.set_defaults(func=cmd_verify_near_helix)

    p_sweep = sub.add_parser("sweep", help="grid sweep over kappa and tau")
    p_sweep.add_argument("--config", required=True, help="JSON or key=value sweep config file")
    p_sweep.add_argument("--out", help="write the table to this path instead of stdout")
    p_sweep.add_argument("--format", choices=("json", "csv"), default="csv")
    p_sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DomainError, PreconditionError, SingularBasisError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HelixLatticeError as exc:  # pragma: no cover - safety net
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def console_main() -> None:
    sys.exit(main())
