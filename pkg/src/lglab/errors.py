"""Exception types raised across the package."""


class LgLabError(Exception):
    """Base class for all package-specific errors."""


class NotPsd(LgLabError):
    """Matrix handed to a PSD-only routine has a negative eigenvalue."""


class InvalidPovm(LgLabError):
    """Requested two-effect POVM violates |alpha| + eta <= 1."""


class BadIndex(LgLabError):
    """Outcome-slot index out of range for a distribution."""


class BadPair(LgLabError):
    """Invalid (i, j) time pair for a two-time no-signaling check."""


class UncoveredRegime(LgLabError):
    """No closed-form expression is available for this configuration."""


class UnknownParameter(LgLabError):
    """Sweep axis names a parameter that ScenarioConfig does not have."""


class UnknownQuantity(LgLabError):
    """Sweep requests an output quantity the evaluator does not produce."""


class EmptyFeasibleRegion(LgLabError):
    """Optimization bounds leave no valid configuration to evaluate."""


class NoViolationAnywhere(LgLabError):
    """Objective never exceeds 1 even at full sharpness; no threshold exists."""
