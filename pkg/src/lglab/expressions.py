"""Leggett-Garg expression evaluators for a full scenario configuration.

`evaluate_numeric` drives the matrix pipeline (ground truth); `closed_form_L`
and `closed_form_V` evaluate the analytic expressions from lglab.formulas and
exist to cross-check it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import formulas
from .core import (
    Evolution,
    Gad,
    GadParams,
    IDENTITY_EVOLUTION,
    PureStateParams,
    Unitary,
    composed_gamma13,
    make_povm,
    make_state,
)
from .errors import InvalidPovm, UncoveredRegime
from .protocol import (
    correlator,
    one_time_dist,
    three_time_dist,
    two_time_dist,
)

#: sign patterns (a, b, c) with a*b*c = +1, i.e. the four relabelings of
#: L = -a<M1M2> + b<M2M3> + c<M1M3> reachable by flipping outcome signs
L_SIGN_PATTERNS = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))

#: sign patterns (v, w) of V = v*w*<M1M2M3> + v*<M1M3> - w*<M2>
V_SIGN_PATTERNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


@dataclass(frozen=True)
class UnitaryDyn:
    """Rotation angles of the two inter-measurement unitaries."""

    g1: float
    g2: float


@dataclass(frozen=True)
class ChannelDyn:
    """GAD channel parameters; the three interval dampings are independent.

    With strict_composition=True, gamma13 is replaced by the damping of the
    two intervals composed (gamma12 + gamma23 - gamma12*gamma23).
    """

    p: float
    gamma12: float
    gamma23: float
    gamma13: float
    strict_composition: bool = False

    def effective_gamma13(self) -> float:
        if self.strict_composition:
            return composed_gamma13(self.gamma12, self.gamma23)
        return self.gamma13


@dataclass(frozen=True)
class ScenarioConfig:
    """One fully specified three-time LG experiment."""

    state: PureStateParams
    alpha: float
    eta: float
    dynamics: UnitaryDyn | ChannelDyn

    def __post_init__(self):
        if abs(self.alpha) + self.eta > 1.0 + 1e-12:
            raise InvalidPovm(
                f"|alpha| + eta = {abs(self.alpha) + self.eta:.6g} exceeds 1"
            )
        if isinstance(self.dynamics, ChannelDyn):
            d = self.dynamics
            for name, v in (("p", d.p), ("gamma12", d.gamma12),
                            ("gamma23", d.gamma23), ("gamma13", d.gamma13)):
                if not 0.0 <= v <= 1.0:
                    raise ValueError(f"dynamics.{name} = {v} outside [0, 1]")

    def evolutions(self) -> tuple[Evolution, Evolution, Evolution]:
        """(ev12, ev23, ev13) for the three inter-measurement spans."""
        if isinstance(self.dynamics, UnitaryDyn):
            return (
                Unitary(self.dynamics.g1),
                Unitary(self.dynamics.g2),
                Unitary(self.dynamics.g1 + self.dynamics.g2),
            )
        d = self.dynamics
        return (
            Gad(GadParams(d.p, d.gamma12)),
            Gad(GadParams(d.p, d.gamma23)),
            Gad(GadParams(d.p, d.effective_gamma13())),
        )


@dataclass(frozen=True)
class LgValues:
    """All correlators plus the two LG expression values and their relabelings."""

    L: float
    V: float
    correlators: dict[str, float]
    variant_values: dict[str, tuple[float, float, float, float]] = field(repr=False)


def evaluate_numeric(cfg: ScenarioConfig) -> LgValues:
    """Evaluate every correlator of the scenario with the matrix pipeline."""
    rho = make_state(cfg.state)
    povm = make_povm(cfg.alpha, cfg.eta)
    ev12, ev23, ev13 = cfg.evolutions()

    m12 = correlator(two_time_dist(rho, povm, IDENTITY_EVOLUTION, ev12))
    m23 = correlator(two_time_dist(rho, povm, ev12, ev23))
    m13 = correlator(two_time_dist(rho, povm, IDENTITY_EVOLUTION, ev13))
    m123 = correlator(three_time_dist(rho, povm, ev12, ev23))
    m2 = correlator(one_time_dist(rho, povm, ev12))

    l_variants = tuple(-a * m12 + b * m23 + c * m13 for a, b, c in L_SIGN_PATTERNS)
    v_variants = tuple(v * w * m123 + v * m13 - w * m2 for v, w in V_SIGN_PATTERNS)
    return LgValues(
        L=l_variants[0],
        V=v_variants[0],
        correlators={"m12": m12, "m23": m23, "m13": m13, "m123": m123, "m2": m2},
        variant_values={"L": l_variants, "V": v_variants},
    )


def _channel_regime_covered(cfg: ScenarioConfig) -> bool:
    # exact flag values, no tolerance: avoids silent regime misclassification
    return cfg.alpha == 0.0 or cfg.alpha == 1.0 - cfg.eta


def closed_form_L(cfg: ScenarioConfig) -> float:
    """Analytic value of L; raises UncoveredRegime for arbitrary-alpha channel
    configurations (only alpha = 0 and alpha = 1 - eta are covered there)."""
    th, ph = cfg.state.theta, cfg.state.phi
    if isinstance(cfg.dynamics, UnitaryDyn):
        return formulas.standard_lg_unitary(
            th, ph, cfg.alpha, cfg.eta, cfg.dynamics.g1, cfg.dynamics.g2
        )
    if not _channel_regime_covered(cfg):
        raise UncoveredRegime(
            f"no closed form for channel dynamics with alpha = {cfg.alpha}"
        )
    d = cfg.dynamics
    return formulas.standard_lg_channel(
        th, cfg.alpha, cfg.eta, d.p, d.gamma12, d.gamma23, d.effective_gamma13()
    )


def closed_form_V(cfg: ScenarioConfig) -> float:
    """Analytic value of V; same regime coverage as closed_form_L."""
    th, ph = cfg.state.theta, cfg.state.phi
    if isinstance(cfg.dynamics, UnitaryDyn):
        return formulas.third_order_lg_unitary(
            th, ph, cfg.alpha, cfg.eta, cfg.dynamics.g1, cfg.dynamics.g2
        )
    if not _channel_regime_covered(cfg):
        raise UncoveredRegime(
            f"no closed form for channel dynamics with alpha = {cfg.alpha}"
        )
    d = cfg.dynamics
    return formulas.third_order_lg_channel(
        th, cfg.alpha, cfg.eta, d.p, d.gamma12, d.gamma23, d.effective_gamma13()
    )
