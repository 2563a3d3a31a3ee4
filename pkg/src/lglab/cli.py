"""Command-line surface.

Subcommands: evaluate | figure | sweep | optimize | threshold | verify.

Output contracts:
  * CSV files use "\n" newlines, a header row, and floats printed with 12
    significant digits; identical flags produce byte-identical files.
  * JSON reports carry a top-level "schema": "1" key.
  * Angles are radians; every angle flag has a --<name>-deg twin.

Exit codes: 0 success; 1 verification failure; 2 invalid configuration or
arguments (with a field-path diagnostic); 3 unwritable output path; 4 no
violation anywhere in a threshold regime.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import kernel
from .core import GadParams, PureStateParams, gad_kraus, make_povm, make_state
from .errors import LgLabError, NoViolationAnywhere
from .expressions import (
    ChannelDyn,
    ScenarioConfig,
    UnitaryDyn,
    closed_form_L,
    closed_form_V,
    evaluate_numeric,
)
from .explorer import (
    DEFAULT_BOUNDS,
    OBJECTIVES,
    REGIMES,
    SweepSpec,
    eta_threshold,
    make_config,
    maximize,
    sweep,
)
from .macrorealism import aot_check, analyze, decomposition_check_L, decomposition_check_V
from .matrix2 import IDENTITY, adjoint, mat_mul

ANGLE_FLAGS = ("theta", "phi", "g1", "g2")


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# config assembly


def _angle(args, name: str, default: float | None) -> float | None:
    rad = getattr(args, name, None)
    deg = getattr(args, f"{name}_deg", None)
    if rad is not None and deg is not None:
        raise CliError(f"{name}: give either --{name} or --{name}-deg, not both", 2)
    if deg is not None:
        return math.radians(deg)
    if rad is not None:
        return rad
    return default


def _scenario_from_flags(args) -> ScenarioConfig:
    if args.unitary and args.channel:
        raise CliError("dynamics: --unitary and --channel are mutually exclusive", 2)
    if not args.unitary and not args.channel:
        raise CliError("dynamics: one of --unitary or --channel is required", 2)
    theta = _angle(args, "theta", 0.0)
    phi = _angle(args, "phi", 0.0)
    if args.unitary:
        g1 = _angle(args, "g1", None)
        g2 = _angle(args, "g2", None)
        if g1 is None or g2 is None:
            raise CliError("dynamics: --unitary requires --g1 and --g2", 2)
        dyn = UnitaryDyn(g1, g2)
    else:
        vals = {}
        for name in ("p", "gamma12", "gamma23", "gamma13"):
            v = getattr(args, name)
            vals[name] = 0.0 if v is None else v
        dyn = ChannelDyn(vals["p"], vals["gamma12"], vals["gamma23"], vals["gamma13"])
    return _build_scenario(theta, phi, args.alpha, args.eta, dyn)


def _build_scenario(theta, phi, alpha, eta, dyn) -> ScenarioConfig:
    try:
        return ScenarioConfig(PureStateParams(theta, phi), alpha, eta, dyn)
    except (LgLabError, ValueError) as exc:
        field = "dynamics" if "dynamics" in str(exc) else "eta"
        raise CliError(f"{field}: {exc}", 2) from exc


_SCENARIO_KEYS = {"theta", "phi", "alpha", "eta", "dynamics"}
_UNITARY_KEYS = {"kind", "g1", "g2"}
_CHANNEL_KEYS = {"kind", "p", "gamma12", "gamma23", "gamma13", "strict_composition"}


def _scenario_from_doc(doc: dict, path: str) -> ScenarioConfig:
    if not isinstance(doc, dict):
        raise CliError(f"{path}: expected a mapping", 2)
    unknown = set(doc) - _SCENARIO_KEYS
    if unknown:
        raise CliError(f"{path}.{sorted(unknown)[0]}: unknown key", 2)
    if "dynamics" not in doc:
        raise CliError(f"{path}.dynamics: required", 2)
    dyn_doc = doc["dynamics"]
    kind = dyn_doc.get("kind") if isinstance(dyn_doc, dict) else None
    if kind == "unitary":
        unknown = set(dyn_doc) - _UNITARY_KEYS
        if unknown:
            raise CliError(f"{path}.dynamics.{sorted(unknown)[0]}: unknown key", 2)
        dyn = UnitaryDyn(float(dyn_doc.get("g1", 0.0)), float(dyn_doc.get("g2", 0.0)))
    elif kind == "channel":
        unknown = set(dyn_doc) - _CHANNEL_KEYS
        if unknown:
            raise CliError(f"{path}.dynamics.{sorted(unknown)[0]}: unknown key", 2)
        dyn = ChannelDyn(
            float(dyn_doc.get("p", 0.0)),
            float(dyn_doc.get("gamma12", 0.0)),
            float(dyn_doc.get("gamma23", 0.0)),
            float(dyn_doc.get("gamma13", 0.0)),
            bool(dyn_doc.get("strict_composition", False)),
        )
    else:
        raise CliError(f"{path}.dynamics.kind: must be 'unitary' or 'channel'", 2)
    return _build_scenario(
        float(doc.get("theta", 0.0)), float(doc.get("phi", 0.0)),
        float(doc.get("alpha", 0.0)), float(doc.get("eta", 1.0)), dyn,
    )


_TOP_KEYS = {"scenario", "sweep", "output"}
_SWEEP_KEYS = {"axes", "quantities"}
_AXIS_KEYS = {"name", "start", "stop", "steps"}


def _load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CliError(f"config: cannot read {path}: {exc}", 2) from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"config: {path} is not valid JSON: {exc}", 2) from exc
    if not isinstance(doc, dict):
        raise CliError("config: top level must be a mapping", 2)
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise CliError(f"config.{sorted(unknown)[0]}: unknown key", 2)
    return doc


def _sweep_from_doc(doc: dict) -> SweepSpec:
    if "scenario" not in doc:
        raise CliError("config.scenario: required", 2)
    base = _scenario_from_doc(doc["scenario"], "config.scenario")
    sw = doc.get("sweep")
    if not isinstance(sw, dict):
        raise CliError("config.sweep: required mapping", 2)
    unknown = set(sw) - _SWEEP_KEYS
    if unknown:
        raise CliError(f"config.sweep.{sorted(unknown)[0]}: unknown key", 2)
    axes = []
    for i, ax in enumerate(sw.get("axes", [])):
        unknown = set(ax) - _AXIS_KEYS
        if unknown:
            raise CliError(f"config.sweep.axes[{i}].{sorted(unknown)[0]}: unknown key", 2)
        try:
            axes.append((ax["name"], float(ax["start"]), float(ax["stop"]),
                         int(ax["steps"])))
        except KeyError as exc:
            raise CliError(f"config.sweep.axes[{i}].{exc.args[0]}: required", 2) from exc
    quantities = tuple(sw.get("quantities", ("L", "V")))
    try:
        return SweepSpec(base, tuple(axes), quantities)
    except LgLabError as exc:
        raise CliError(f"config.sweep: {exc}", 2) from exc


# ---------------------------------------------------------------------------
# output helpers


def _write_csv(path: str | None, header: list[str], rows: list[list[float]]):
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"out: cannot write {path}: {exc}", 3) from exc


def _config_doc(cfg: ScenarioConfig) -> dict:
    doc = {"theta": cfg.state.theta, "phi": cfg.state.phi,
           "alpha": cfg.alpha, "eta": cfg.eta}
    if isinstance(cfg.dynamics, UnitaryDyn):
        doc["dynamics"] = {"kind": "unitary", "g1": cfg.dynamics.g1,
                           "g2": cfg.dynamics.g2}
    else:
        d = cfg.dynamics
        doc["dynamics"] = {"kind": "channel", "p": d.p, "gamma12": d.gamma12,
                           "gamma23": d.gamma23, "gamma13": d.gamma13}
    return doc


def _emit_json(payload: dict):
    payload = {"schema": "1", **payload}
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_evaluate(args) -> int:
    if args.config:
        doc = _load_config_file(args.config)
        if "scenario" not in doc:
            raise CliError("config.scenario: required", 2)
        cfg = _scenario_from_doc(doc["scenario"], "config.scenario")
    else:
        cfg = _scenario_from_flags(args)
    values = evaluate_numeric(cfg)
    report = analyze(cfg)

    if args.json:
        _emit_json({
            "config": _config_doc(cfg),
            "values": {"L": values.L, "V": values.V, **values.correlators},
            "nsit": {
                "d123": {f"{k[0]},{k[1]}": v for k, v in report.d123_table.items()},
                "d1_23": {f"{k[0]},{k[1]}": v for k, v in report.d1_23_table.items()},
                "d12": {str(k): v for k, v in report.d12_table.items()},
                "beta": report.beta, "delta": report.delta,
                "l123": report.l123, "v123": report.v123,
                "max_abs_disturbance": report.max_abs_disturbance(),
            },
        })
        return 0

    print("scenario:", _config_doc(cfg))
    print(f"L  = {values.L:.12g}    V  = {values.V:.12g}")
    for name, v in values.correlators.items():
        print(f"  <{name}> = {v:.12g}")
    print(f"beta = {report.beta:.12g}  delta = {report.delta:.12g}"
          f"  L123 = {report.l123:.12g}  V123 = {report.v123:.12g}")
    print("no-signaling-in-time tables:")
    print("  first-absent  :", {k: round(v, 12) for k, v in report.d123_table.items()})
    print("  middle-absent :", {k: round(v, 12) for k, v in report.d1_23_table.items()})
    print("  two-time      :", {k: round(v, 12) for k, v in report.d12_table.items()})
    print(f"max |D| = {report.max_abs_disturbance():.12g}")
    return 0


#: frozen parameters and axes of the six reference curves/surfaces
_FIGURES = {
    1: dict(kind="channel", columns=("p", "gamma12", "L"),
            axes=(("p", 0.0, 1.0), ("gamma12", 0.0, 1.0))),
    2: dict(kind="channel", columns=("p", "gamma12", "V"),
            axes=(("p", 0.0, 1.0), ("gamma12", 0.0, 1.0))),
    3: dict(kind="unitary", columns=("g1", "L", "D"),
            axes=(("g1", 0.0, math.pi),), frozen={"g2": math.pi / 6},
            d_quantity="d_middle_offdiag_minus_diag"),
    4: dict(kind="channel", columns=("gamma12", "L", "D"),
            axes=(("gamma12", 0.0, 1.0),), d_quantity="d_middle_diag"),
    5: dict(kind="unitary", columns=("g1", "V", "D1_23", "D12"),
            axes=(("g1", 0.0, math.pi),),
            frozen={"g2": math.pi / 4, "theta": math.pi / 4, "phi": math.pi / 2},
            d_quantity="d_middle_offdiag_minus_diag"),
    6: dict(kind="channel", columns=("gamma12", "V", "D"),
            axes=(("gamma12", 0.0, 1.0),), d_quantity="d_middle_diag"),
}

FIGURE_POINTS = 101


def cmd_figure(args) -> int:
    fig = _FIGURES.get(args.id)
    if fig is None:
        raise CliError(f"id: figure id must be 1..6, got {args.id}", 2)
    frozen = dict(fig.get("frozen", {}))
    if fig["kind"] == "unitary":
        base = _build_scenario(frozen.get("theta", 0.0), frozen.get("phi", 0.0),
                               0.0, 1.0,
                               UnitaryDyn(0.0, frozen.get("g2", 0.0)))
    else:
        base = _build_scenario(0.0, 0.0, 0.0, 1.0, ChannelDyn(0.0, 0.0, 0.0, 0.0))

    quantities = []
    for col in fig["columns"]:
        if col in ("L", "V"):
            quantities.append(col)
        elif col in ("D", "D1_23"):
            quantities.append(fig["d_quantity"])
        elif col == "D12":
            quantities.append("d12_signed")
    axes = tuple((n, a, b, FIGURE_POINTS) for n, a, b in fig["axes"])
    rows = sweep(SweepSpec(base, axes, tuple(dict.fromkeys(quantities))))

    out_rows = []
    for row in rows:
        values = []
        for col in fig["columns"]:
            if col in (a[0] for a in fig["axes"]):
                values.append(row[col])
            elif col == "D12":
                # convention: difference "never measured minus marginalized"
                # with the first outcome subtracted, matching the sign of the
                # analytic first-measurement disturbance
                values.append(-row["d12_signed"])
            elif col in ("D", "D1_23"):
                values.append(row[fig["d_quantity"]])
            else:
                values.append(row[col])
        out_rows.append(values)
    _write_csv(args.out, list(fig["columns"]), out_rows)
    return 0


def cmd_sweep(args) -> int:
    doc = _load_config_file(args.config)
    spec = _sweep_from_doc(doc)
    rows = sweep(spec)
    header = [a[0] for a in spec.axes] + list(spec.quantities)
    out = args.out or (doc.get("output", {}) or {}).get("path")
    _write_csv(out, header, [[row[h] for h in header] for row in rows])
    return 0


def _parse_assignments(items, what) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise CliError(f"{what}: expected name=value, got {item!r}", 2)
        name, _, raw = item.partition("=")
        try:
            out[name.strip()] = float(raw)
        except ValueError as exc:
            raise CliError(f"{what}.{name}: {raw!r} is not a number", 2) from exc
    return out


def cmd_optimize(args) -> int:
    frozen = _parse_assignments(args.freeze, "freeze")
    bounds = {}
    for item in args.bound or []:
        if "=" not in item or ":" not in item.partition("=")[2]:
            raise CliError(f"bound: expected name=lo:hi, got {item!r}", 2)
        name, _, raw = item.partition("=")
        lo, _, hi = raw.partition(":")
        bounds[name.strip()] = (float(lo), float(hi))
    for name in (args.free or "").split(","):
        name = name.strip()
        if name and name not in bounds:
            if name not in DEFAULT_BOUNDS:
                raise CliError(f"free: unknown parameter {name!r}", 2)
            bounds[name] = DEFAULT_BOUNDS[name]
    # unspecified state/measurement parameters default to a benign scenario
    for name, default in (("theta", 0.0), ("phi", 0.0), ("alpha", 0.0), ("eta", 1.0)):
        if name not in frozen and name not in bounds:
            frozen[name] = default
    try:
        result = maximize(args.objective, args.dynamics, frozen, bounds,
                          grid_points=args.grid_points)
    except LgLabError as exc:
        raise CliError(f"optimize: {exc}", 2) from exc

    if args.json:
        _emit_json({
            "objective": args.objective,
            "best_value": result.best_value,
            "best_config": _config_doc(result.best_config),
            "trace": [[int(i), v] for i, v in result.trace],
        })
    else:
        print(f"best {args.objective} = {result.best_value:.12g}")
        print("at", _config_doc(result.best_config))
        for i, v in result.trace:
            print(f"  round {i}: {v:.12g}")
    return 0


def cmd_threshold(args) -> int:
    try:
        value = eta_threshold(args.objective, args.regime)
    except NoViolationAnywhere as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except LgLabError as exc:
        raise CliError(f"threshold: {exc}", 2) from exc
    if args.json:
        _emit_json({"objective": args.objective, "regime": args.regime,
                    "critical_eta": value})
    else:
        print(f"critical eta ({args.objective}, {args.regime}) = {value:.4f}")
    return 0


# ---------------------------------------------------------------------------
# verify


def _random_scenario(rng, channel: bool) -> ScenarioConfig:
    theta = rng.uniform(0, math.pi)
    phi = rng.uniform(0, 2 * math.pi)
    eta = rng.uniform(0, 1)
    if channel:
        # closed forms cover the unbiased and alpha = 1 - eta families
        alpha = 0.0 if rng.uniform() < 0.5 else 1.0 - eta
        dyn = ChannelDyn(*rng.uniform(0, 1, 4))
    else:
        alpha = rng.uniform(-(1 - eta), 1 - eta)
        dyn = UnitaryDyn(rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi))
    return ScenarioConfig(PureStateParams(theta, phi), alpha, eta, dyn)


def _kraus_completeness(rng) -> float:
    p, gamma = rng.uniform(0, 1, 2)
    total = np.zeros((2, 2), dtype=complex)
    for k in gad_kraus(GadParams(p, gamma)):
        total += mat_mul(adjoint(k), k)
    return float(np.abs(total - IDENTITY).max())


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise CliError(f"trials: must be >= 1, got {args.trials}", 2)
    rng = np.random.default_rng(args.seed)
    checks = {
        "closed-form L vs numeric (1e-9)": (0.0, 1e-9, None),
        "closed-form V vs numeric (1e-9)": (0.0, 1e-9, None),
        "decomposition residual L (1e-10)": (0.0, 1e-10, None),
        "decomposition residual V (1e-10)": (0.0, 1e-10, None),
        "Kraus completeness (1e-12)": (0.0, 1e-12, None),
        "arrow-of-time residual (1e-12)": (0.0, 1e-12, None),
    }

    def record(name, value, cfg):
        worst, tol, _ = checks[name]
        if value > worst:
            checks[name] = (value, tol, cfg)

    for _ in range(args.trials):
        channel = bool(rng.uniform() < 0.5)
        cfg = _random_scenario(rng, channel)
        values = evaluate_numeric(cfg)
        record("closed-form L vs numeric (1e-9)", abs(closed_form_L(cfg) - values.L), cfg)
        record("closed-form V vs numeric (1e-9)", abs(closed_form_V(cfg) - values.V), cfg)
        record("decomposition residual L (1e-10)",
               abs(decomposition_check_L(cfg)[2]), cfg)
        record("decomposition residual V (1e-10)",
               abs(decomposition_check_V(cfg)[2]), cfg)
        record("Kraus completeness (1e-12)", _kraus_completeness(rng), cfg)
        record("arrow-of-time residual (1e-12)", aot_check(cfg), cfg)

    failed = False
    for name, (worst, tol, cfg) in checks.items():
        ok = worst <= tol
        print(f"{'PASS' if ok else 'FAIL'}  {name:38s} worst = {worst:.3e}")
        if not ok:
            failed = True
            print("      failing config:", json.dumps(_config_doc(cfg), sort_keys=True))
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# parser


def _add_scenario_flags(sp):
    for name in ANGLE_FLAGS:
        sp.add_argument(f"--{name}", type=float, default=None)
        sp.add_argument(f"--{name}-deg", type=float, default=None,
                        dest=f"{name}_deg")
    sp.add_argument("--alpha", type=float, default=0.0)
    sp.add_argument("--eta", type=float, default=1.0)
    sp.add_argument("--unitary", action="store_true")
    sp.add_argument("--channel", action="store_true")
    for name in ("p", "gamma12", "gamma23", "gamma13"):
        sp.add_argument(f"--{name}", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lglab",
        description="Temporal-correlation laboratory: Leggett-Garg values and "
                    "no-signaling-in-time diagnostics for a qubit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("evaluate", help="evaluate one scenario")
    _add_scenario_flags(sp)
    sp.add_argument("--config", help="JSON config file with a 'scenario' entry")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_evaluate)

    sp = sub.add_parser("figure", help="emit the CSV behind a reference figure")
    sp.add_argument("--id", type=int, required=True)
    sp.add_argument("--out", help="output CSV path (default stdout)")
    sp.set_defaults(func=cmd_figure)

    sp = sub.add_parser("sweep", help="tabulate quantities over a parameter grid")
    sp.add_argument("--config", required=True,
                    help="JSON config file with 'scenario' and 'sweep' entries")
    sp.add_argument("--out", help="output CSV path (default stdout)")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("optimize", help="maximize an LG expression")
    sp.add_argument("--objective", required=True, choices=OBJECTIVES)
    sp.add_argument("--dynamics", required=True, choices=("unitary", "channel"))
    sp.add_argument("--free", default="",
                    help="comma-separated free parameters (default bounds)")
    sp.add_argument("--freeze", action="append", metavar="NAME=VALUE")
    sp.add_argument("--bound", action="append", metavar="NAME=LO:HI")
    sp.add_argument("--grid-points", type=int, default=25)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_optimize)

    sp = sub.add_parser("threshold", help="critical sharpness for violation")
    sp.add_argument("--objective", required=True, choices=OBJECTIVES)
    sp.add_argument("--regime", required=True, choices=REGIMES)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_threshold)

    sp = sub.add_parser("verify", help="run the self-verification suite")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=200)
    sp.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
