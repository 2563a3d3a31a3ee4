"""States, biased POVMs, unitaries and the generalized-amplitude-damping channel.

Conventions fixed here and relied on everywhere else:

* measurement basis is sigma_z with |0> the +1 eigenstate;
* the inter-measurement unitary is U(g) = exp(-i g sigma_x), which gives the
  sharp sigma_z two-time correlator cos(2 g);
* the GAD Kraus set is
      G0 = sqrt(p)   diag(1, sqrt(1 - gamma)),  G1 = sqrt(p)   sqrt(gamma) |0><1|,
      G2 = sqrt(1-p) diag(sqrt(1 - gamma), 1),  G3 = sqrt(1-p) sqrt(gamma) |1><0|,
  whose stationary state is diag(p, 1 - p).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidPovm
from .matrix2 import IDENTITY, PAULI, SIGMA_X, as_mat2, psd_sqrt

POVM_TOL = 1e-12

Z_AXIS = (0.0, 0.0, 1.0)


@dataclass(frozen=True)
class PureStateParams:
    """Angles of the pure state cos(theta)|0> + e^{i phi} sin(theta)|1>."""

    theta: float
    phi: float = 0.0


@dataclass(frozen=True)
class PovmPair:
    """Two-effect biased measurement: effects (I +- (alpha I + eta n.sigma)) / 2."""

    alpha: float
    eta: float
    axis: tuple[float, float, float]
    effect_plus: np.ndarray = field(repr=False)
    effect_minus: np.ndarray = field(repr=False)
    sqrt_plus: np.ndarray = field(repr=False)
    sqrt_minus: np.ndarray = field(repr=False)

    def effect(self, outcome: int) -> np.ndarray:
        return self.effect_plus if outcome > 0 else self.effect_minus

    def sqrt_effect(self, outcome: int) -> np.ndarray:
        return self.sqrt_plus if outcome > 0 else self.sqrt_minus


@dataclass(frozen=True)
class GadParams:
    """Thermal mixing p and damping gamma of one GAD application."""

    p: float
    gamma: float

    def __post_init__(self):
        if not (0.0 <= self.p <= 1.0 and 0.0 <= self.gamma <= 1.0):
            raise ValueError(f"GAD parameters out of range: p={self.p}, gamma={self.gamma}")


class Evolution:
    """Tagged choice of what happens between two measurements."""

    __slots__ = ()


@dataclass(frozen=True)
class Unitary(Evolution):
    g: float


@dataclass(frozen=True)
class Gad(Evolution):
    params: GadParams


@dataclass(frozen=True)
class Identity(Evolution):
    pass


IDENTITY_EVOLUTION = Identity()


def make_state(params: PureStateParams) -> np.ndarray:
    """Density matrix |psi><psi| of the two-angle pure state."""
    c, s = np.cos(params.theta), np.sin(params.theta)
    psi = np.array([c, np.exp(1j * params.phi) * s], dtype=complex)
    return np.outer(psi, psi.conj())


def make_povm(alpha: float, eta: float, axis=Z_AXIS) -> PovmPair:
    """Build the biased two-effect POVM with biasedness alpha and sharpness eta.

    Raises InvalidPovm unless |alpha| + eta <= 1 (up to 1e-12); the axis must
    be within 1e-9 of unit norm and is renormalized internally.
    """
    if eta < 0:
        raise InvalidPovm(f"sharpness must be nonnegative, got {eta}")
    if abs(alpha) + eta > 1.0 + POVM_TOL:
        raise InvalidPovm(f"|alpha| + eta = {abs(alpha) + eta:.6g} exceeds 1")
    n = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(n)
    if abs(norm - 1.0) > 1e-9:
        raise InvalidPovm(f"measurement axis must be unit norm, |axis| = {norm:.12g}")
    n = n / norm
    bias_op = alpha * IDENTITY + eta * sum(n[k] * PAULI[k] for k in range(3))
    plus = 0.5 * (IDENTITY + bias_op)
    minus = 0.5 * (IDENTITY - bias_op)
    return PovmPair(
        alpha=alpha,
        eta=eta,
        axis=tuple(n),
        effect_plus=plus,
        effect_minus=minus,
        sqrt_plus=psd_sqrt(plus),
        sqrt_minus=psd_sqrt(minus),
    )


def unitary_of_angle(g: float) -> np.ndarray:
    """U(g) = exp(-i g sigma_x)."""
    return np.cos(g) * IDENTITY - 1j * np.sin(g) * SIGMA_X


def gad_kraus(params: GadParams) -> list[np.ndarray]:
    """The four GAD Kraus operators G0..G3."""
    p, gamma = params.p, params.gamma
    sp, sq = np.sqrt(p), np.sqrt(1.0 - p)
    damp, jump = np.sqrt(1.0 - gamma), np.sqrt(gamma)
    g0 = sp * np.array([[1, 0], [0, damp]], dtype=complex)
    g1 = sp * np.array([[0, jump], [0, 0]], dtype=complex)
    g2 = sq * np.array([[damp, 0], [0, 1]], dtype=complex)
    g3 = sq * np.array([[0, 0], [jump, 0]], dtype=complex)
    return [g0, g1, g2, g3]


def composed_gamma13(gamma12: float, gamma23: float) -> float:
    """Damping of the two intervals composed: gamma12 + gamma23 - gamma12*gamma23.

    Only used when a caller opts into strict channel composition; by default
    the three interval dampings are independent free parameters.
    """
    return gamma12 + gamma23 - gamma12 * gamma23


def apply_evolution(rho, ev: Evolution) -> np.ndarray:
    """Evolve a density matrix through one inter-measurement interval."""
    rho = as_mat2(rho)
    if isinstance(ev, Identity):
        return rho
    if isinstance(ev, Unitary):
        u = unitary_of_angle(ev.g)
        return u @ rho @ u.conj().T
    if isinstance(ev, Gad):
        out = np.zeros((2, 2), dtype=complex)
        for k in gad_kraus(ev.params):
            out += k @ rho @ k.conj().T
        return out
    raise TypeError(f"unknown evolution {ev!r}")
