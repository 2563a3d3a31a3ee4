"""Temporal-correlation laboratory for a single qubit.

Computes the standard (L) and third-order (V) Leggett-Garg expression values
for three-time measurement scenarios with biased/unsharp two-outcome
measurements, under unitary rotations or a generalized amplitude damping
channel, together with the no-signaling-in-time disturbance analysis that
underlies them.

Layers:
  * matrix2 / core / protocol — exact 2x2 matrix pipeline (ground truth)
  * formulas — independent analytic closed forms used to cross-check it
  * kernel — vectorized fast path over numpy parameter arrays
  * expressions / macrorealism — scenario-level evaluators and diagnostics
  * explorer / cli — sweeps, maximization, thresholds, artifacts
"""

from .core import GadParams, PureStateParams, gad_kraus, make_povm, make_state
from .errors import (
    BadIndex,
    BadPair,
    EmptyFeasibleRegion,
    InvalidPovm,
    LgLabError,
    NoViolationAnywhere,
    NotPsd,
    UncoveredRegime,
    UnknownParameter,
    UnknownQuantity,
)
from .expressions import (
    ChannelDyn,
    LgValues,
    ScenarioConfig,
    UnitaryDyn,
    closed_form_L,
    closed_form_V,
    evaluate_numeric,
)
from .explorer import (
    DEFAULT_BOUNDS,
    OptResult,
    SweepSpec,
    eta_threshold,
    maximize,
    sweep,
)
from .macrorealism import (
    NsitReport,
    analyze,
    aot_check,
    decomposition_check_L,
    decomposition_check_V,
    two_time_nsit,
)

__all__ = [
    "BadIndex", "BadPair", "ChannelDyn", "DEFAULT_BOUNDS",
    "EmptyFeasibleRegion", "GadParams", "InvalidPovm", "LgLabError",
    "LgValues", "NoViolationAnywhere", "NotPsd", "NsitReport", "OptResult",
    "PureStateParams", "ScenarioConfig", "SweepSpec", "UncoveredRegime",
    "UnitaryDyn", "UnknownParameter", "UnknownQuantity", "analyze",
    "aot_check", "closed_form_L", "closed_form_V", "decomposition_check_L",
    "decomposition_check_V", "eta_threshold", "evaluate_numeric", "gad_kraus",
    "make_povm", "make_state", "maximize", "sweep", "two_time_nsit",
]

__version__ = "0.1.0"
