"""Parameter sweeps, deterministic maximization and sharpness thresholds.

Everything here is grid-based and fully deterministic: a coarse scan over the
free axes followed by coordinate refinement (the window around the incumbent
shrinks by a fixed factor each round). The LG landscapes are smooth
trigonometric/polynomial surfaces, so this converges fast and — unlike
stochastic search — reproduces the same numbers on every run. Ties on
plateaus are broken toward the lexicographically smallest parameter tuple.

Grid evaluation is chunked and can fan out over threads; LG_LAB_THREADS caps
the pool (absent means all cores). Results are assembled in grid order, so
the output is identical at any parallelism degree.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernel
from .core import PureStateParams, composed_gamma13
from .errors import (
    EmptyFeasibleRegion,
    NoViolationAnywhere,
    UnknownParameter,
    UnknownQuantity,
)
from .expressions import (
    ChannelDyn,
    L_SIGN_PATTERNS,
    ScenarioConfig,
    UnitaryDyn,
    V_SIGN_PATTERNS,
)

#: canonical parameter ordering used for lexicographic tie-breaking
PARAM_ORDER = ("theta", "phi", "alpha", "eta",
               "g1", "g2", "p", "gamma12", "gamma23", "gamma13")

UNITARY_PARAMS = ("theta", "phi", "alpha", "eta", "g1", "g2")
CHANNEL_PARAMS = ("theta", "phi", "alpha", "eta",
                  "p", "gamma12", "gamma23", "gamma13")

#: validity ranges; free-axis bounds must sit inside these
DEFAULT_BOUNDS = {
    "theta": (0.0, np.pi / 2), "phi": (0.0, 2 * np.pi),
    "alpha": (-1.0, 1.0), "eta": (0.0, 1.0),
    "g1": (0.0, np.pi), "g2": (0.0, np.pi),
    "p": (0.0, 1.0), "gamma12": (0.0, 1.0),
    "gamma23": (0.0, 1.0), "gamma13": (0.0, 1.0),
}

OBJECTIVES = ("L", "V", "L2", "L3", "L4", "V2", "V3", "V4")

_CHUNK = 1 << 20


def thread_count() -> int:
    raw = os.environ.get("LG_LAB_THREADS", "").strip()
    if raw:
        return max(1, int(raw))
    return os.cpu_count() or 1


def _param_names(dynamics: str):
    if dynamics == "unitary":
        return UNITARY_PARAMS
    if dynamics == "channel":
        return CHANNEL_PARAMS
    raise UnknownParameter(f"unknown dynamics tag {dynamics!r}")


def _objective_from(out: dict, objective: str):
    """Evaluate an LG expression (or one of its outcome-relabelings) from the
    correlator dictionary."""
    if objective in ("L", "V"):
        return out[objective]
    idx = int(objective[1]) - 1
    if objective[0] == "L":
        a, b, c = L_SIGN_PATTERNS[idx]
        return -a * out["m12"] + b * out["m23"] + c * out["m13"]
    v, w = V_SIGN_PATTERNS[idx]
    return v * w * out["m123"] + v * out["m13"] - w * out["m2"]


def _lg_eval(dynamics: str, params: dict):
    if dynamics == "unitary":
        return kernel.unitary_lg(params["theta"], params["phi"], params["alpha"],
                                 params["eta"], params["g1"], params["g2"])
    return kernel.channel_lg(params["theta"], params["phi"], params["alpha"],
                             params["eta"], params["p"], params["gamma12"],
                             params["gamma23"], params["gamma13"])


def _chunked(fn, arrays: dict, length: int):
    """Apply fn to dict-of-arrays in chunks, threading across chunks."""
    starts = range(0, length, _CHUNK)
    if len(starts) <= 1 or thread_count() <= 1:
        return [fn({k: v[s:s + _CHUNK] if np.ndim(v) else v
                    for k, v in arrays.items()}) for s in starts]
    def run(s):
        return fn({k: v[s:s + _CHUNK] if np.ndim(v) else v
                   for k, v in arrays.items()})
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        return list(pool.map(run, starts))


# ---------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepSpec:
    """A grid over 1-3 scenario parameters plus the quantities to tabulate."""

    base: ScenarioConfig
    axes: tuple  # of (name, start, stop, steps)
    quantities: tuple

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 3:
            raise UnknownParameter(
                f"need between 1 and 3 sweep axes, got {len(self.axes)}"
            )
        names = _param_names(_config_tag(self.base))
        for name, _, _, steps in self.axes:
            if name not in names:
                raise UnknownParameter(f"unknown sweep parameter {name!r}")
            if steps < 1:
                raise UnknownParameter(f"axis {name!r} needs steps >= 1")
        for q in self.quantities:
            if q not in kernel.QUANTITIES:
                raise UnknownQuantity(f"unknown quantity {q!r}")


def _config_tag(cfg: ScenarioConfig) -> str:
    return "unitary" if isinstance(cfg.dynamics, UnitaryDyn) else "channel"


def _config_params(cfg: ScenarioConfig) -> dict:
    base = {"theta": cfg.state.theta, "phi": cfg.state.phi,
            "alpha": cfg.alpha, "eta": cfg.eta}
    if isinstance(cfg.dynamics, UnitaryDyn):
        base.update(g1=cfg.dynamics.g1, g2=cfg.dynamics.g2)
    else:
        d = cfg.dynamics
        base.update(p=d.p, gamma12=d.gamma12, gamma23=d.gamma23,
                    gamma13=d.effective_gamma13())
    return base


def make_config(dynamics: str, params: dict) -> ScenarioConfig:
    """Assemble a ScenarioConfig from a flat parameter dict."""
    state = PureStateParams(params["theta"], params["phi"])
    if dynamics == "unitary":
        dyn = UnitaryDyn(params["g1"], params["g2"])
    else:
        dyn = ChannelDyn(params["p"], params["gamma12"],
                         params["gamma23"], params["gamma13"])
    return ScenarioConfig(state, params["alpha"], params["eta"], dyn)


def _axis_values(start, stop, steps):
    if steps == 1:
        return np.array([float(start)])
    return np.linspace(start, stop, steps)


def sweep(spec: SweepSpec) -> list[dict]:
    """One row per grid point; row = axis values plus requested quantities."""
    tag = _config_tag(spec.base)
    axis_names = [a[0] for a in spec.axes]
    grids = [_axis_values(a, b, n) for _, a, b, n in spec.axes]
    mesh = np.meshgrid(*grids, indexing="ij")
    flat = {n: m.ravel() for n, m in zip(axis_names, mesh)}
    size = mesh[0].size

    params = dict(_config_params(spec.base))
    params.update(flat)
    if (tag == "channel" and spec.base.dynamics.strict_composition
            and "gamma13" not in flat):
        params["gamma13"] = composed_gamma13(
            np.asarray(params["gamma12"]), np.asarray(params["gamma23"])
        )

    batch = kernel.unitary_batch if tag == "unitary" else kernel.channel_batch
    names = _param_names(tag)
    pieces = _chunked(lambda ps: batch(**{n: ps[n] for n in names}),
                      params, size)
    out = {q: np.concatenate([np.broadcast_to(p[q], (len(p["L"]),)).ravel()
                              if np.ndim(p[q]) else np.full(1, p[q])
                              for p in pieces])
           for q in spec.quantities}

    rows = []
    for i in range(size):
        row = {n: float(flat[n][i]) for n in axis_names}
        row.update({q: float(out[q][i]) for q in spec.quantities})
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# maximization


@dataclass(frozen=True)
class OptResult:
    best_value: float
    best_config: ScenarioConfig
    trace: tuple  # of (round, incumbent value); non-decreasing


def _scan(objective, dynamics, frozen, free_names, windows, points):
    """One full grid scan; returns (best value, best free-value tuple)."""
    grids = [np.linspace(lo, hi, points) for lo, hi in windows]
    mesh = np.meshgrid(*grids, indexing="ij")
    size = mesh[0].size
    params = dict(frozen)
    params.update({n: m.ravel() for n, m in zip(free_names, mesh)})

    def score(ps):
        vals = np.asarray(
            _objective_from(_lg_eval(dynamics, ps), objective), dtype=float
        )
        vals = np.atleast_1d(vals)
        feasible = np.abs(np.asarray(ps["alpha"]) + 0 * vals) \
            + np.asarray(ps["eta"]) <= 1.0 + 1e-12
        vals = np.where(np.broadcast_to(feasible, vals.shape), vals, -np.inf)
        top = vals.max()
        if not np.isfinite(top):
            return -np.inf, None
        cand = np.flatnonzero(vals == top)
        cols = [np.broadcast_to(np.asarray(ps[n]), vals.shape).ravel()[cand]
                for n in free_names]
        # lexicographic minimum over the tied candidates (lexsort keys are
        # least-significant first)
        order = np.lexsort(cols[::-1])[0]
        return float(top), tuple(float(c[order]) for c in cols)

    results = _chunked(score, params, size)
    best_v, best_x = -np.inf, None
    for v, x in results:
        if x is None:
            continue
        if v > best_v or (v == best_v and (best_x is None or x < best_x)):
            best_v, best_x = v, x
    return best_v, best_x


def maximize(objective: str, dynamics: str, frozen: dict, bounds: dict,
             grid_points: int = 25, rounds: int = 8,
             shrink: float = 0.25) -> OptResult:
    """Deterministic grid scan plus coordinate refinement.

    `frozen` pins parameters; `bounds` maps each free parameter to its
    (lo, hi) search window. Every parameter of the chosen dynamics must be
    either frozen or bounded.
    """
    if objective not in OBJECTIVES:
        raise UnknownQuantity(f"unknown objective {objective!r}")
    names = _param_names(dynamics)
    for n in list(frozen) + list(bounds):
        if n not in names:
            raise UnknownParameter(f"unknown parameter {n!r}")
    missing = [n for n in names if n not in frozen and n not in bounds]
    if missing:
        raise UnknownParameter(f"parameters neither frozen nor bounded: {missing}")

    free_names = [n for n in PARAM_ORDER if n in bounds]
    windows = []
    for n in free_names:
        lo, hi = bounds[n]
        vlo, vhi = DEFAULT_BOUNDS[n]
        if not (vlo - 1e-12 <= lo <= hi <= vhi + 1e-12):
            raise EmptyFeasibleRegion(
                f"bounds for {n!r} = ({lo}, {hi}) outside validity {DEFAULT_BOUNDS[n]}"
            )
        windows.append((float(lo), float(hi)))

    best_v, best_x = _scan(objective, dynamics, frozen, free_names,
                           windows, grid_points)
    if best_x is None:
        raise EmptyFeasibleRegion(
            "no grid point satisfies |alpha| + eta <= 1"
        )
    trace = [(0, best_v)]

    full = [hi - lo for lo, hi in windows]
    outer = list(windows)
    for r in range(1, rounds + 1):
        widths = [f * shrink ** r for f in full]
        wins = []
        for (olo, ohi), w, x in zip(outer, widths, best_x):
            lo = min(max(x - w / 2, olo), ohi - w)
            wins.append((lo, lo + w))
        v, x = _scan(objective, dynamics, frozen, free_names, wins, grid_points)
        if x is not None and (v > best_v or (v == best_v and x < best_x)):
            best_v, best_x = v, x
        trace.append((r, best_v))

    params = dict(frozen)
    params.update(dict(zip(free_names, best_x)))
    return OptResult(best_value=best_v,
                     best_config=make_config(dynamics, params),
                     trace=tuple(trace))


# ---------------------------------------------------------------------------
# sharpness thresholds


REGIMES = ("unitary-unbiased", "channel-unbiased", "channel-biased")


def _best_at_eta(objective: str, regime: str, eta: float,
                 grid_points: int) -> float:
    if regime == "unitary-unbiased":
        frozen = {"alpha": 0.0, "eta": eta}
        bounds = {"theta": DEFAULT_BOUNDS["theta"], "phi": DEFAULT_BOUNDS["phi"],
                  "g1": DEFAULT_BOUNDS["g1"], "g2": DEFAULT_BOUNDS["g2"]}
        dynamics = "unitary"
    else:
        alpha = 0.0 if regime == "channel-unbiased" else 1.0 - eta
        # phi is irrelevant under damping-only dynamics (the sigma_y Bloch
        # component never feeds the measured sigma_z one)
        frozen = {"alpha": alpha, "eta": eta, "phi": 0.0}
        bounds = {n: DEFAULT_BOUNDS[n]
                  for n in ("theta", "p", "gamma12", "gamma23", "gamma13")}
        dynamics = "channel"
    return maximize(objective, dynamics, frozen, bounds,
                    grid_points=grid_points).best_value


def eta_threshold(objective: str, regime: str, tol: float = 1e-3,
                  grid_points: int = 15) -> float:
    """Critical sharpness: bisection on eta of (max over everything else of
    the objective) minus 1."""
    if regime not in REGIMES:
        raise UnknownParameter(f"unknown regime {regime!r}")
    if objective not in OBJECTIVES:
        raise UnknownQuantity(f"unknown objective {objective!r}")

    def excess(eta):
        return _best_at_eta(objective, regime, eta, grid_points) - 1.0

    if excess(1.0) <= 0.0:
        raise NoViolationAnywhere(
            f"{objective} never exceeds 1 in regime {regime!r}, even at eta = 1"
        )
    lo, hi = 0.0, 1.0
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
