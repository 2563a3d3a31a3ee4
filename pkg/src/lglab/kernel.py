"""Vectorized fast path for sigma_z-axis scenarios.

With sigma_z measurements, exp(-i g sigma_x) rotations and GAD damping, the
whole sequential-measurement pipeline only ever touches the trace, the
sigma_z component and the sigma_y component of the (unnormalized) state, so
a scenario reduces to a short scalar recursion:

    measurement update, outcome m:  t' = ((1 + m a) t + m e z) / 2
                                    z' = (m e t + (1 + m a) z) / 2
                                    y' = sqrt((1 + m a)^2 - e^2) / 2 * y
    rotation by g:                  z' = z cos 2g + y sin 2g,
                                    y' = y cos 2g - z sin 2g
    GAD(p, gamma):                  z' = (1 - gamma) z + gamma (2p - 1) t,
                                    y' = sqrt(1 - gamma) y
    outcome probability:            ((1 + m a) t + m e z) / 2

(a = biasedness, e = sharpness). Everything broadcasts, so parameter grids of
millions of points evaluate in a few numpy passes. The matrix pipeline in
lglab.protocol is the ground truth this module is tested against.
"""

from __future__ import annotations

import numpy as np

OUTCOMES = (1, -1)


def _init_state(theta, phi):
    t = np.ones(np.broadcast(theta, phi).shape, dtype=float)
    return t, np.sin(2 * theta) * np.sin(phi) * t, np.cos(2 * theta) * t


def _measure(state, m, alpha, eta):
    t, y, z = state
    s = 1.0 + m * alpha
    chi = np.sqrt(np.maximum(s * s - eta * eta, 0.0))
    return (
        0.5 * (s * t + m * eta * z),
        0.5 * chi * y,
        0.5 * (m * eta * t + s * z),
    )


def _prob(state, m, alpha, eta):
    t, _, z = state
    return 0.5 * ((1.0 + m * alpha) * t + m * eta * z)


def _rotate(state, g):
    t, y, z = state
    c, s = np.cos(2 * g), np.sin(2 * g)
    return t, y * c - z * s, z * c + y * s


def _damp(state, p, gamma):
    t, y, z = state
    return t, np.sqrt(1.0 - gamma) * y, (1.0 - gamma) * z + gamma * (2 * p - 1) * t


def _evaluate(theta, phi, alpha, eta, ev12, ev23, ev13):
    """Assemble every scenario quantity given the three evolution callables."""
    rho0 = _init_state(theta, phi)

    triple = {}
    pair12 = {}
    for m1 in OUTCOMES:
        after1 = ev12(_measure(rho0, m1, alpha, eta))
        for m2 in OUTCOMES:
            pair12[(m1, m2)] = _prob(after1, m2, alpha, eta)
            after2 = ev23(_measure(after1, m2, alpha, eta))
            for m3 in OUTCOMES:
                triple[(m1, m2, m3)] = _prob(after2, m3, alpha, eta)

    evolved1 = ev12(rho0)
    pair23 = {}
    for m2 in OUTCOMES:
        after2 = ev23(_measure(evolved1, m2, alpha, eta))
        for m3 in OUTCOMES:
            pair23[(m2, m3)] = _prob(after2, m3, alpha, eta)

    evolved13 = ev13(rho0)
    pair13 = {}
    for m1 in OUTCOMES:
        after1 = ev13(_measure(rho0, m1, alpha, eta))
        for m3 in OUTCOMES:
            pair13[(m1, m3)] = _prob(after1, m3, alpha, eta)

    solo2 = {m2: _prob(evolved1, m2, alpha, eta) for m2 in OUTCOMES}

    m12 = sum(m1 * m2 * p for (m1, m2), p in pair12.items())
    m23 = sum(m2 * m3 * p for (m2, m3), p in pair23.items())
    m13 = sum(m1 * m3 * p for (m1, m3), p in pair13.items())
    m123 = sum(m1 * m2 * m3 * p for (m1, m2, m3), p in triple.items())
    m2_mean = solo2[1] - solo2[-1]

    d123 = {
        (m2, m3): pair23[(m2, m3)] - triple[(1, m2, m3)] - triple[(-1, m2, m3)]
        for m2 in OUTCOMES for m3 in OUTCOMES
    }
    d1_23 = {
        (m1, m3): pair13[(m1, m3)] - triple[(m1, 1, m3)] - triple[(m1, -1, m3)]
        for m1 in OUTCOMES for m3 in OUTCOMES
    }
    d12 = {
        m2: solo2[m2] - pair12[(1, m2)] - pair12[(-1, m2)] for m2 in OUTCOMES
    }

    beta = triple[(1, 1, -1)] + triple[(-1, -1, 1)]
    delta = triple[(-1, 1, 1)] + triple[(1, 1, -1)]

    d_middle_diag = d1_23[(1, 1)] + d1_23[(-1, -1)]
    d_middle_cross = d1_23[(1, -1)] + d1_23[(-1, 1)]
    max_abs_d = np.maximum.reduce(
        [np.abs(v) for v in d123.values()]
        + [np.abs(v) for v in d1_23.values()]
        + [np.abs(v) for v in d12.values()]
    )

    return {
        "m12": m12,
        "m23": m23,
        "m13": m13,
        "m123": m123,
        "m2": m2_mean,
        "L": -m12 + m23 + m13,
        "V": m123 + m13 - m2_mean,
        "beta": beta,
        "delta": delta,
        "l123": 1.0 - 4.0 * beta,
        "v123": 1.0 - 4.0 * delta,
        "d_middle_diag": d_middle_diag,
        "d_middle_offdiag_minus_diag": d_middle_cross - d_middle_diag,
        "d12_signed": d12[1] - d12[-1],
        "max_abs_d": max_abs_d,
    }


def _mean(state, alpha, eta):
    t, _, z = state
    return alpha * t + eta * z


def _lg_only(theta, phi, alpha, eta, ev12, ev23, ev13):
    """Correlators, L and V without the disturbance tables (8 branch states
    instead of 14 sequential experiments); used by the optimizer hot loop."""
    rho0 = _init_state(theta, phi)

    m12 = 0.0
    m123 = 0.0
    for m1 in OUTCOMES:
        after1 = ev12(_measure(rho0, m1, alpha, eta))
        m12 = m12 + m1 * _mean(after1, alpha, eta)
        for m2 in OUTCOMES:
            after2 = ev23(_measure(after1, m2, alpha, eta))
            m123 = m123 + m1 * m2 * _mean(after2, alpha, eta)

    evolved1 = ev12(rho0)
    m2_mean = _mean(evolved1, alpha, eta)
    m23 = 0.0
    for m2 in OUTCOMES:
        m23 = m23 + m2 * _mean(ev23(_measure(evolved1, m2, alpha, eta)), alpha, eta)

    m13 = 0.0
    for m1 in OUTCOMES:
        m13 = m13 + m1 * _mean(ev13(_measure(rho0, m1, alpha, eta)), alpha, eta)

    return {
        "m12": m12, "m23": m23, "m13": m13, "m123": m123, "m2": m2_mean,
        "L": -m12 + m23 + m13, "V": m123 + m13 - m2_mean,
    }


def unitary_lg(theta, phi, alpha, eta, g1, g2) -> dict[str, np.ndarray]:
    """Correlators and LG values only, unitary dynamics."""
    return _lg_only(
        theta, phi, alpha, eta,
        lambda s: _rotate(s, g1),
        lambda s: _rotate(s, g2),
        lambda s: _rotate(s, g1 + g2),
    )


def channel_lg(theta, phi, alpha, eta, p, gamma12, gamma23, gamma13) -> dict[str, np.ndarray]:
    """Correlators and LG values only, GAD dynamics.

    Under damping-only dynamics the off-diagonal Bloch components never feed
    the measured sigma_z one, so the closed forms (which do not involve phi)
    apply and are cheaper than the branch recursion. These are the array
    versions of the scalar forms in lglab.formulas.
    """
    z0 = np.cos(2 * theta)
    q = 2 * p - 1

    def pair(gamma, z):
        return (alpha**2 + eta**2 * (1 - gamma) + alpha * eta * gamma * q
                + (alpha * eta * (2 - gamma) + eta**2 * gamma * q) * z)

    m12 = pair(gamma12, z0)
    m13 = pair(gamma13, z0)
    m23 = pair(gamma23, (1 - gamma12) * z0 + gamma12 * q)
    a = alpha**2 + eta**2 * (1 - gamma23) + alpha * eta * gamma23 * q
    b = alpha * eta * (2 - gamma23) + eta**2 * gamma23 * q
    m123 = (a * (alpha + eta * z0)
            + b * ((1 - gamma12) * (eta + alpha * z0)
                   + gamma12 * q * (alpha + eta * z0)))
    m2 = alpha + eta * (1 - gamma12) * z0 + eta * gamma12 * q
    return {
        "m12": m12, "m23": m23, "m13": m13, "m123": m123, "m2": m2,
        "L": -m12 + m23 + m13, "V": m123 + m13 - m2,
    }


QUANTITIES = (
    "m12", "m23", "m13", "m123", "m2", "L", "V", "beta", "delta",
    "l123", "v123", "d_middle_diag", "d_middle_offdiag_minus_diag",
    "d12_signed", "max_abs_d",
)


def unitary_batch(theta, phi, alpha, eta, g1, g2) -> dict[str, np.ndarray]:
    """All scenario quantities on broadcastable arrays, unitary dynamics."""
    theta, phi, alpha, eta, g1, g2 = np.broadcast_arrays(
        *map(np.asarray, (theta, phi, alpha, eta, g1, g2))
    )
    return _evaluate(
        theta, phi, alpha, eta,
        lambda s: _rotate(s, g1),
        lambda s: _rotate(s, g2),
        lambda s: _rotate(s, g1 + g2),
    )


def channel_batch(theta, phi, alpha, eta, p, gamma12, gamma23, gamma13) -> dict[str, np.ndarray]:
    """All scenario quantities on broadcastable arrays, GAD dynamics."""
    theta, phi, alpha, eta, p, gamma12, gamma23, gamma13 = np.broadcast_arrays(
        *map(np.asarray, (theta, phi, alpha, eta, p, gamma12, gamma23, gamma13))
    )
    return _evaluate(
        theta, phi, alpha, eta,
        lambda s: _damp(s, p, gamma12),
        lambda s: _damp(s, p, gamma23),
        lambda s: _damp(s, p, gamma13),
    )
