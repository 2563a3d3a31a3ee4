"""No-signaling-in-time diagnostics and their relation to LG violations.

The central objects are the per-outcome disturbance tables

    D_first(m2, m3)  = P(m2, m3)    - sum_m1 P(m1, m2, m3)
    D_middle(m1, m3) = P(m1, m3)    - sum_m2 P(m1, m2, m3)
    D_first2(m2)     = P(m2)        - sum_m1 P(m1, m2)

where every marginal on the left comes from a *separate experiment* in which
the omitted measurements are never performed. Marginalizing an actually
performed measurement is the arrow-of-time direction and is an identity for
trace-preserving dynamics; the difference between the two is the entire
content of no-signaling in time.

Scalar reductions. The analytic scalar disturbances in lglab.formulas
correspond to these reductions of the tables (discovered numerically,
documented here and in REDUCTIONS):

* middle_disturbance_unitary: sum over m1 != m3 minus sum over m1 = m3
  of the middle table;
* middle_disturbance_channel: sum over m1 = m3 of the middle table;
* first_disturbance_unitary: D_first2(-1) - D_first2(+1), valid at the
  third-order optimum point (see the formula's docstring).

The decomposition identities use the signed sums directly:

    L - L123 = sum_{m2=m3} D_first - sum_{m2!=m3} D_first
               + sum_{m1=m3} D_middle - sum_{m1!=m3} D_middle
    V - V123 = 2 sum_{m1=m3} D_middle - (D_first2(+1) - D_first2(-1))

with L123 = 1 - 4 beta and V123 = 1 - 4 delta as distribution identities.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import IDENTITY_EVOLUTION, apply_evolution, make_povm, make_state
from .errors import BadPair
from .expressions import ScenarioConfig, evaluate_numeric
from .protocol import (
    OUTCOMES,
    OutcomeDist,
    marginalize,
    one_time_dist,
    three_time_dist,
    two_time_dist,
)

REDUCTIONS = {
    "middle_unitary": "sum(m1 != m3) - sum(m1 = m3) of the middle table",
    "middle_channel": "sum(m1 = m3) of the middle table",
    "first_two_time": "D(-1) - D(+1) of the two-time table",
}


@dataclass(frozen=True)
class NsitReport:
    """Disturbance tables, the beta/delta decomposition and both
    violation-condition left-hand sides for one scenario."""

    d123_table: dict[tuple[int, int], float]
    d1_23_table: dict[tuple[int, int], float]
    d12_table: dict[int, float]
    beta: float
    delta: float
    l123: float
    v123: float
    lhs_L_condition: float
    lhs_V_condition: float
    reductions: dict[str, str]

    @property
    def d1_23_diag_sum(self) -> float:
        """Sum of the middle table over m1 = m3 (channel-formula reduction)."""
        return self.d1_23_table[(1, 1)] + self.d1_23_table[(-1, -1)]

    @property
    def d1_23_offdiag_minus_diag(self) -> float:
        """Off-diagonal minus diagonal sum of the middle table
        (unitary-formula reduction)."""
        return (self.d1_23_table[(1, -1)] + self.d1_23_table[(-1, 1)]
                - self.d1_23_diag_sum)

    @property
    def d12_signed(self) -> float:
        """D(+1) - D(-1) of the two-time table; this is the scalar entering
        the third-order decomposition identity."""
        return self.d12_table[1] - self.d12_table[-1]

    def max_abs_disturbance(self) -> float:
        return max(
            max(abs(v) for v in self.d123_table.values()),
            max(abs(v) for v in self.d1_23_table.values()),
            max(abs(v) for v in self.d12_table.values()),
        )


def _experiments(cfg: ScenarioConfig):
    rho = make_state(cfg.state)
    povm = make_povm(cfg.alpha, cfg.eta)
    ev12, ev23, ev13 = cfg.evolutions()
    triple = three_time_dist(rho, povm, ev12, ev23)
    pair12 = two_time_dist(rho, povm, IDENTITY_EVOLUTION, ev12)
    pair23 = two_time_dist(rho, povm, ev12, ev23)
    pair13 = two_time_dist(rho, povm, IDENTITY_EVOLUTION, ev13)
    solo2 = one_time_dist(rho, povm, ev12)
    return rho, povm, (ev12, ev23, ev13), triple, pair12, pair23, pair13, solo2


def analyze(cfg: ScenarioConfig) -> NsitReport:
    """Build all disturbance tables and decomposition scalars for a scenario."""
    _, _, _, triple, pair12, pair23, pair13, solo2 = _experiments(cfg)

    no_first = marginalize(triple, 0)
    no_middle = marginalize(triple, 1)
    d123 = {(m2, m3): pair23[(m2, m3)] - no_first[(m2, m3)]
            for m2 in OUTCOMES for m3 in OUTCOMES}
    d1_23 = {(m1, m3): pair13[(m1, m3)] - no_middle[(m1, m3)]
             for m1 in OUTCOMES for m3 in OUTCOMES}
    d12 = {m2: solo2[(m2,)] - sum(pair12[(m1, m2)] for m1 in OUTCOMES)
           for m2 in OUTCOMES}

    beta = triple[(1, 1, -1)] + triple[(-1, -1, 1)]
    delta = triple[(-1, 1, 1)] + triple[(1, 1, -1)]

    lhs_l = (d123[(1, 1)] + d123[(-1, -1)]
             + d1_23[(1, 1)] + d1_23[(-1, -1)])
    d12_signed = d12[1] - d12[-1]
    lhs_v = 2.0 * (d1_23[(1, 1)] + d1_23[(-1, -1)]) - d12_signed

    return NsitReport(
        d123_table=d123,
        d1_23_table=d1_23,
        d12_table=d12,
        beta=beta,
        delta=delta,
        l123=_l_from_triple(triple),
        v123=_v_from_triple(triple),
        lhs_L_condition=lhs_l,
        lhs_V_condition=lhs_v,
        reductions=dict(REDUCTIONS),
    )


def _l_from_triple(triple: OutcomeDist) -> float:
    """L evaluated with every correlator taken from the all-three-measured
    experiment; equals 1 - 4 beta identically."""
    total = 0.0
    for (m1, m2, m3), p in triple.probs.items():
        total += (-m1 * m2 + m2 * m3 + m1 * m3) * p
    return total


def _v_from_triple(triple: OutcomeDist) -> float:
    """V from the all-three-measured experiment; equals 1 - 4 delta."""
    total = 0.0
    for (m1, m2, m3), p in triple.probs.items():
        total += (m1 * m2 * m3 + m1 * m3 - m2) * p
    return total


def decomposition_check_L(cfg: ScenarioConfig):
    """Return (lhs, 2*beta, residual) for the standard-LGI decomposition.

    residual is (L - L123) minus the signed disturbance sums; it vanishes
    identically for trace-preserving dynamics.
    """
    report = analyze(cfg)
    values = evaluate_numeric(cfg)
    d123, d1_23 = report.d123_table, report.d1_23_table
    signed = (
        d123[(1, 1)] + d123[(-1, -1)] - d123[(1, -1)] - d123[(-1, 1)]
        + d1_23[(1, 1)] + d1_23[(-1, -1)] - d1_23[(1, -1)] - d1_23[(-1, 1)]
    )
    residual = (values.L - report.l123) - signed
    return report.lhs_L_condition, 2.0 * report.beta, residual


def decomposition_check_V(cfg: ScenarioConfig):
    """Return (lhs, 4*delta, residual) for the third-order decomposition."""
    report = analyze(cfg)
    values = evaluate_numeric(cfg)
    residual = (values.V - report.v123) - report.lhs_V_condition
    return report.lhs_V_condition, 4.0 * report.delta, residual


def two_time_nsit(cfg: ScenarioConfig, i: int, j: int) -> dict[int, float]:
    """Per-outcome difference P(m_j) - sum_{m_i} P(m_i, m_j).

    The single-measurement experiment keeps the evolutions of the pairwise
    experiment it is compared against and just drops the first measurement.
    """
    if (i, j) not in ((1, 2), (1, 3), (2, 3)):
        raise BadPair(f"unsupported time pair ({i}, {j})")
    rho = make_state(cfg.state)
    povm = make_povm(cfg.alpha, cfg.eta)
    ev12, ev23, ev13 = cfg.evolutions()
    if (i, j) == (1, 2):
        pair = two_time_dist(rho, povm, IDENTITY_EVOLUTION, ev12)
        solo = one_time_dist(rho, povm, ev12)
    elif (i, j) == (1, 3):
        pair = two_time_dist(rho, povm, IDENTITY_EVOLUTION, ev13)
        solo = one_time_dist(rho, povm, ev13)
    else:
        pair = two_time_dist(rho, povm, ev12, ev23)
        solo = one_time_dist(apply_evolution(rho, ev12), povm, ev23)
    return {m: solo[(m,)] - sum(pair[(mi, m)] for mi in OUTCOMES)
            for m in OUTCOMES}


def aot_check(cfg: ScenarioConfig) -> float:
    """Maximum arrow-of-time residual over all AOT conditions.

    Earlier statistics must be unchanged by later measurements; for
    trace-preserving dynamics every residual is zero to rounding.
    """
    rho, povm, (ev12, ev23, ev13), triple, pair12, pair23, pair13, solo2 = \
        _experiments(cfg)
    solo1 = one_time_dist(rho, povm, IDENTITY_EVOLUTION)
    worst = 0.0
    # AOT_12(3): the (1,2) pairwise experiment vs the triple marginalized on m3
    no_last = marginalize(triple, 2)
    for key, p in pair12.probs.items():
        worst = max(worst, abs(p - no_last[key]))
    # AOT_i(j) for every pairwise experiment
    for pair, solo, slot in (
        (pair12, solo1, 1),
        (pair13, solo1, 1),
        (pair23, solo2, 1),
    ):
        kept = marginalize(pair, slot)
        for m in OUTCOMES:
            worst = max(worst, abs(kept[(m,)] - solo[(m,)]))
    return worst
