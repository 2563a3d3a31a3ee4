"""Exact outcome statistics for one, two and three sequential measurements.

Joint probabilities are assembled from unnormalized Luders-style updates
sqrt(M) rho sqrt(M) with the requested evolution applied between updates, so
no division by an outcome probability ever happens and zero-probability
branches are harmless.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .core import Evolution, PovmPair, apply_evolution
from .errors import BadIndex
from .matrix2 import as_mat2

OUTCOMES = (1, -1)

NORM_TOL = 1e-10
PROB_TOL = 1e-12


@dataclass(frozen=True)
class OutcomeDist:
    """Normalized probability table over tuples in {+1, -1}^arity."""

    arity: int
    probs: dict[tuple[int, ...], float]

    def __post_init__(self):
        total = 0.0
        clean = {}
        for outcome in product(OUTCOMES, repeat=self.arity):
            p = self.probs[outcome]
            if p < -PROB_TOL or p > 1.0 + PROB_TOL:
                raise ValueError(f"probability {p!r} for {outcome} outside [0, 1]")
            clean[outcome] = min(max(p, 0.0), 1.0)
            total += clean[outcome]
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "probs", clean)

    def __getitem__(self, outcome) -> float:
        if isinstance(outcome, int):
            outcome = (outcome,)
        return self.probs[tuple(outcome)]


def _prob(rho, effect) -> float:
    return float(np.trace(as_mat2(rho) @ effect).real)


def _update(rho, sqrt_effect) -> np.ndarray:
    return sqrt_effect @ as_mat2(rho) @ sqrt_effect.conj().T


def one_time_dist(rho0, povm: PovmPair, ev1: Evolution) -> OutcomeDist:
    """P(m) for a single measurement after evolving rho0 through ev1."""
    rho = apply_evolution(rho0, ev1)
    probs = {(m,): _prob(rho, povm.effect(m)) for m in OUTCOMES}
    return OutcomeDist(1, probs)


def two_time_dist(rho0, povm: PovmPair, ev_pre: Evolution, ev_between: Evolution) -> OutcomeDist:
    """P(m1, m2) with ev_pre before the first measurement, ev_between after it."""
    rho = apply_evolution(rho0, ev_pre)
    probs = {}
    for m1 in OUTCOMES:
        branch = apply_evolution(_update(rho, povm.sqrt_effect(m1)), ev_between)
        for m2 in OUTCOMES:
            probs[(m1, m2)] = _prob(branch, povm.effect(m2))
    return OutcomeDist(2, probs)


def three_time_dist(rho0, povm: PovmPair, ev12: Evolution, ev23: Evolution) -> OutcomeDist:
    """P(m1, m2, m3): measure at t1 immediately, evolve, measure, evolve, measure."""
    rho = as_mat2(rho0)
    probs = {}
    for m1 in OUTCOMES:
        after1 = apply_evolution(_update(rho, povm.sqrt_effect(m1)), ev12)
        for m2 in OUTCOMES:
            after2 = apply_evolution(_update(after1, povm.sqrt_effect(m2)), ev23)
            for m3 in OUTCOMES:
                probs[(m1, m2, m3)] = _prob(after2, povm.effect(m3))
    return OutcomeDist(3, probs)


def correlator(d: OutcomeDist) -> float:
    """Sum of (product of outcomes) * P over the table."""
    return sum(float(np.prod(outcome)) * p for outcome, p in d.probs.items())


def marginalize(d: OutcomeDist, drop: int) -> OutcomeDist:
    """Sum out the outcome slot at index `drop` (0-based)."""
    if d.arity < 2:
        raise BadIndex("cannot marginalize an arity-1 distribution")
    if not 0 <= drop < d.arity:
        raise BadIndex(f"slot {drop} out of range for arity {d.arity}")
    probs: dict[tuple[int, ...], float] = {}
    for outcome, p in d.probs.items():
        kept = outcome[:drop] + outcome[drop + 1:]
        probs[kept] = probs.get(kept, 0.0) + p
    return OutcomeDist(d.arity - 1, probs)
