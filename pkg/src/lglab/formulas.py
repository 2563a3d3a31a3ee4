"""Closed-form correlators and LG expressions used as cross-check oracles.

Two families, matching the two dynamics tags:

* unitary: U(g) = exp(-i g sigma_x) between measurements; valid for any
  biasedness alpha with |alpha| + eta <= 1.
* channel: one GAD application per interval, with independent dampings
  gamma12, gamma23, gamma13 and common thermal parameter p.

State-angle convention. All functions take the state angles (theta, phi) of
cos(theta)|0> + e^{i phi} sin(theta)|1>, so the Bloch components are
z0 = cos(2 theta) and y0 = sin(2 theta) sin(phi). The channel family depends
only on z0 (GAD and sigma_z measurements never read coherences), which is why
its expressions carry cos(2 theta) where the unitary family mixes in y0.

Everything here is an independent code path from lglab.protocol: these are
scalar trigonometric/polynomial expressions, the protocol builds matrices.
"""

from __future__ import annotations

import numpy as np


def _chi(alpha: float, eta: float) -> tuple[float, float]:
    """sqrt((1 +- alpha)^2 - eta^2); real whenever |alpha| + eta <= 1."""
    return (
        float(np.sqrt(max((1 + alpha) ** 2 - eta**2, 0.0))),
        float(np.sqrt(max((1 - alpha) ** 2 - eta**2, 0.0))),
    )


def _bloch(theta: float, phi: float) -> tuple[float, float]:
    return float(np.cos(2 * theta)), float(np.sin(2 * theta) * np.sin(phi))


# ---------------------------------------------------------------------------
# unitary dynamics
# ---------------------------------------------------------------------------

def corr_pair_unitary(theta, phi, alpha, eta, g) -> float:
    """<M_i M_j> for measurements separated by one rotation of angle g,
    the first performed directly on the initial state."""
    z0, y0 = _bloch(theta, phi)
    c, s = np.cos(2 * g), np.sin(2 * g)
    chi1, chi2 = _chi(alpha, eta)
    return float(
        alpha**2 + eta**2 * c + alpha * eta * z0 * (1 + c)
        + 0.5 * eta * s * (chi1 - chi2) * y0
    )


def corr_23_unitary(theta, phi, alpha, eta, g1, g2) -> float:
    """<M2 M3>: state rotated unmeasured by g1, then measured twice across g2."""
    z0, y0 = _bloch(theta, phi)
    c1, s1 = np.cos(2 * g1), np.sin(2 * g1)
    z2 = z0 * c1 + y0 * s1
    y2 = y0 * c1 - z0 * s1
    c2, s2 = np.cos(2 * g2), np.sin(2 * g2)
    chi1, chi2 = _chi(alpha, eta)
    return float(
        alpha**2 + eta**2 * c2 + alpha * eta * z2 * (1 + c2)
        + 0.5 * eta * s2 * (chi1 - chi2) * y2
    )


def corr_triple_unitary(theta, phi, alpha, eta, g1, g2) -> float:
    """<M1 M2 M3> under rotations g1, g2 between the three measurements."""
    z0, y0 = _bloch(theta, phi)
    c1, s1 = np.cos(2 * g1), np.sin(2 * g1)
    c2, s2 = np.cos(2 * g2), np.sin(2 * g2)
    chi1, chi2 = _chi(alpha, eta)
    dchi = chi1 - chi2
    sum_t = alpha + eta * z0
    sum_z = c1 * (eta + alpha * z0) + 0.5 * s1 * y0 * dchi
    sum_y = 0.5 * c1 * y0 * dchi - s1 * (eta + alpha * z0)
    return float(
        (alpha**2 + eta**2 * c2) * sum_t
        + alpha * eta * (1 + c2) * sum_z
        + 0.5 * eta * s2 * dchi * sum_y
    )


def mean_2_unitary(theta, phi, alpha, eta, g1) -> float:
    """<M2>: single measurement after an unmeasured rotation by g1."""
    z0, y0 = _bloch(theta, phi)
    return float(alpha + eta * (z0 * np.cos(2 * g1) + y0 * np.sin(2 * g1)))


def standard_lg_unitary(theta, phi, alpha, eta, g1, g2) -> float:
    """L = -<M1M2> + <M2M3> + <M1M3> under unitary dynamics, any alpha."""
    return (
        -corr_pair_unitary(theta, phi, alpha, eta, g1)
        + corr_23_unitary(theta, phi, alpha, eta, g1, g2)
        + corr_pair_unitary(theta, phi, alpha, eta, g1 + g2)
    )


def third_order_lg_unitary(theta, phi, alpha, eta, g1, g2) -> float:
    """V = <M1M2M3> + <M1M3> - <M2> under unitary dynamics, any alpha."""
    return (
        corr_triple_unitary(theta, phi, alpha, eta, g1, g2)
        + corr_pair_unitary(theta, phi, alpha, eta, g1 + g2)
        - mean_2_unitary(theta, phi, alpha, eta, g1)
    )


def standard_lg_unitary_unbiased(eta, g1, g2) -> float:
    """State-independent unbiased form: eta^2 (-cos2g1 + cos2g2 + cos2(g1+g2))."""
    return float(
        eta**2 * (-np.cos(2 * g1) + np.cos(2 * g2) + np.cos(2 * (g1 + g2)))
    )


def third_order_lg_unitary_unbiased(theta, phi, eta, g1, g2) -> float:
    """Unbiased third-order form (depends on the state even at eta = 1)."""
    return float(
        eta * (
            np.cos(2 * theta) * (eta**2 * np.cos(2 * g2) - np.cos(2 * g1))
            + eta * np.cos(2 * (g1 + g2))
            - np.sin(2 * g1) * np.sin(2 * theta) * np.sin(phi)
        )
    )


def standard_lg_unitary_biased(theta, phi, eta, g1, g2) -> float:
    """Biased family alpha = 1 - eta, unitary dynamics."""
    s2t, sp, c2t = np.sin(2 * theta), np.sin(phi), np.cos(2 * theta)
    r = np.sqrt(1 - eta)
    return float(0.5 * (
        2 * (eta - 1) ** 2
        + eta * (
            s2t * sp * (4 * r * np.sin(g2) * np.cos(2 * g1 + g2)
                        - 4 * (eta - 1) * np.sin(2 * g1) * np.cos(g2) ** 2)
            + c2t * (4 * (eta - 1) * np.sin(g2) * np.sin(2 * g1 + g2)
                     - 2 * r * np.sin(2 * g1) * np.sin(2 * g2))
            + 4 * eta * np.cos(g1) * np.cos(g1 + 2 * g2)
            + np.cos(2 * g1) * (-2 * eta + 2 * r * np.sin(2 * g2) * s2t * sp
                                - 4 * (eta - 1) * np.cos(g2) ** 2 * c2t)
        )
    ))


def third_order_lg_unitary_biased(theta, phi, eta, g1, g2) -> float:
    """Biased family alpha = 1 - eta, unitary dynamics, third-order expression."""
    c2t, s2t, sp = np.cos(2 * theta), np.sin(2 * theta), np.sin(phi)
    r = np.sqrt(1 - eta)
    s1, c1 = np.sin(g1), np.cos(g1)
    return float(
        eta * (
            c2t * ((eta - 1) * (eta + (r + 1) * np.sin(2 * g1) * np.sin(2 * g2) - 2)
                   + (eta - 2) * np.cos(2 * g1) * (eta + (eta - 1) * np.cos(2 * g2))
                   + eta**2 * np.cos(2 * g2))
            + s1**2 * (2 * eta + (eta - 1) * np.sin(2 * g2) * s2t * sp - 3)
            + r * s2t * sp * np.sin(2 * (g1 + g2))
            - 2 * r * eta * np.sin(2 * g1) * np.cos(g2) ** 2 * s2t * sp
            + np.sin(2 * g1) * s2t * sp * (2 * r * np.cos(g2) ** 2 - 1)
            + eta * np.cos(2 * (g1 + g2))
        )
        - (eta - 1) * c1**2 * (2 * (eta - 1) * eta + 2 * eta**2 * np.cos(2 * g2)
                               + eta * np.sin(2 * g2) * s2t * sp + 1)
        + (eta - 1) * eta
        - 4 * r * eta**2 * s1 * c1 * np.sin(g2) * np.cos(g2)
        + s1**2
    )


# ---------------------------------------------------------------------------
# GAD channel dynamics
# ---------------------------------------------------------------------------

def corr_pair_channel(theta, alpha, eta, p, gamma) -> float:
    """<M_i M_j> with one GAD application (damping gamma) between measurements,
    the first measurement acting directly on the initial state."""
    z0 = np.cos(2 * theta)
    q = 2 * p - 1
    return float(
        alpha**2 + eta**2 * (1 - gamma) + alpha * eta * gamma * q
        + (alpha * eta * (2 - gamma) + eta**2 * gamma * q) * z0
    )


def corr_23_channel(theta, alpha, eta, p, gamma12, gamma23) -> float:
    """<M2 M3>: state damped unmeasured through gamma12 first."""
    z0 = np.cos(2 * theta)
    q = 2 * p - 1
    z2 = (1 - gamma12) * z0 + gamma12 * q
    return float(
        alpha**2 + eta**2 * (1 - gamma23) + alpha * eta * gamma23 * q
        + (alpha * eta * (2 - gamma23) + eta**2 * gamma23 * q) * z2
    )


def corr_triple_channel(theta, alpha, eta, p, gamma12, gamma23) -> float:
    """<M1 M2 M3> with GAD applications gamma12, gamma23 between measurements."""
    z0 = np.cos(2 * theta)
    q = 2 * p - 1
    a = alpha**2 + eta**2 * (1 - gamma23) + alpha * eta * gamma23 * q
    b = alpha * eta * (2 - gamma23) + eta**2 * gamma23 * q
    sum_t = alpha + eta * z0
    sum_z = eta + alpha * z0
    return float(a * sum_t + b * ((1 - gamma12) * sum_z + gamma12 * q * sum_t))


def mean_2_channel(theta, alpha, eta, p, gamma12) -> float:
    """<M2>: single measurement after one unmeasured GAD application."""
    z0 = np.cos(2 * theta)
    return float(alpha + eta * (1 - gamma12) * z0 + eta * gamma12 * (2 * p - 1))


def standard_lg_channel(theta, alpha, eta, p, gamma12, gamma23, gamma13) -> float:
    """L under GAD dynamics, any alpha."""
    return (
        -corr_pair_channel(theta, alpha, eta, p, gamma12)
        + corr_23_channel(theta, alpha, eta, p, gamma12, gamma23)
        + corr_pair_channel(theta, alpha, eta, p, gamma13)
    )


def third_order_lg_channel(theta, alpha, eta, p, gamma12, gamma23, gamma13) -> float:
    """V under GAD dynamics, any alpha."""
    return (
        corr_triple_channel(theta, alpha, eta, p, gamma12, gamma23)
        + corr_pair_channel(theta, alpha, eta, p, gamma13)
        - mean_2_channel(theta, alpha, eta, p, gamma12)
    )


def standard_lg_channel_biased(theta, eta, p, gamma12, gamma23, gamma13) -> float:
    """Biased family alpha = 1 - eta under GAD dynamics."""
    ct = np.cos(2 * theta)
    return float(
        (eta - 1) ** 2
        + eta**2 * (gamma12 - gamma13 - gamma23 + gamma12 * gamma23 * (1 - 2 * p) ** 2 + 1)
        - eta * ct * (gamma12 * (-gamma23) + gamma12 + gamma13 + gamma23
                      + 2 * eta * (gamma12 * (gamma23 * p + p - 1)
                                   - p * (gamma13 + gamma23) + 1) - 2)
        + (1 - eta) * eta * (2 * p - 1) * (gamma12 * (-gamma23) + gamma12 + gamma13 + gamma23)
    )


def third_order_lg_channel_biased(theta, eta, p, gamma12, gamma23, gamma13) -> float:
    """Biased family alpha = 1 - eta under GAD dynamics, third-order expression."""
    ct = np.cos(2 * theta)
    return float(
        1 - 4 * eta**3 * (gamma12 * p - 1) * (gamma23 * p - 1)
        + eta * ct * (gamma12 * gamma23 - gamma12 - gamma13 - gamma23
                      + 2 * eta * (gamma12 - 2 * (gamma12 - 1) * gamma23 * p
                                   + 2 * gamma12 * p + gamma13 * p - 4)
                      + 4 * eta**2 * (gamma12 * p - 1) * (gamma23 * p - 1) + 4)
        + 2 * eta**2 * (gamma12 + 2 * gamma23 * p * (gamma12 * p - 1)
                        - 4 * gamma12 * p - gamma13 * p + 4)
        - eta * (gamma13 + gamma23 + gamma12 * (gamma23 - 1) * (2 * p - 1)
                 - 2 * p * (gamma13 + gamma23) + 4)
    )


# ---------------------------------------------------------------------------
# no-signaling disturbance scalars (sharp, unbiased measurements)
# ---------------------------------------------------------------------------

def middle_disturbance_unitary(g1, g2) -> float:
    """Scalar disturbance of the (1,3) statistics by the middle measurement,
    unitary dynamics, sharp unbiased measurements: sin(2 g1) sin(2 g2).

    Reduction of the per-outcome table: (sum over m1 != m3) - (sum over m1 = m3).
    State independent.
    """
    return float(np.sin(2 * g1) * np.sin(2 * g2))


def middle_disturbance_channel(theta, p, gamma12, gamma23, gamma13) -> float:
    """Scalar disturbance of the (1,3) statistics by the middle measurement,
    GAD dynamics, sharp unbiased measurements.

    Reduction of the per-outcome table: sum over m1 = m3.
    """
    ct = np.cos(2 * theta)
    return float(
        0.5 * (gamma12 * (gamma23 - 1) + gamma13 - gamma23)
        * (-1 - ct * (1 - 2 * p))
    )


def first_disturbance_unitary(theta, phi, g1) -> float:
    """Scalar disturbance of the t2 statistics by the first measurement,
    unitary dynamics, sharp unbiased measurements.

    Reduction of the per-outcome table: D(-1) - D(+1). Matches the identity
    value -sin(2 theta) sin(phi) sin(2 g1) only at points where
    sin^2(g1) (1 + cos 2 theta) = -sin(2 g1) sin(2 theta) sin(phi) / 2
    (e.g. the third-order optimum g1 = 3 pi / 4, theta = pi / 4, phi = pi / 2).
    """
    return float(
        np.sin(g1) * (2 * np.sin(g1) * np.cos(theta) ** 2
                      - np.cos(g1) * np.sin(2 * theta) * np.sin(phi))
    )
