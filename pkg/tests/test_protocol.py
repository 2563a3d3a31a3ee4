import numpy as np
import pytest

from lglab.core import (
    Gad,
    GadParams,
    IDENTITY_EVOLUTION,
    PureStateParams,
    Unitary,
    make_povm,
    make_state,
    unitary_of_angle,
)
from lglab.errors import BadIndex
from lglab.protocol import (
    OUTCOMES,
    correlator,
    marginalize,
    one_time_dist,
    three_time_dist,
    two_time_dist,
)


def random_setup(rng):
    rho = make_state(PureStateParams(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)))
    eta = rng.uniform(0, 1)
    povm = make_povm(rng.uniform(-(1 - eta), 1 - eta), eta)
    if rng.uniform() < 0.5:
        evs = (Unitary(rng.uniform(0, 2 * np.pi)), Unitary(rng.uniform(0, 2 * np.pi)))
    else:
        evs = (Gad(GadParams(rng.uniform(), rng.uniform())),
               Gad(GadParams(rng.uniform(), rng.uniform())))
    return rho, povm, evs


def test_distributions_normalized_1000_random_configs():
    rng = np.random.default_rng(42)
    for _ in range(1000):
        rho, povm, (e1, e2) = random_setup(rng)
        for d in (
            one_time_dist(rho, povm, e1),
            two_time_dist(rho, povm, e1, e2),
            three_time_dist(rho, povm, e1, e2),
        ):
            total = sum(d.probs.values())
            assert abs(total - 1.0) < 1e-12
            assert all(p >= 0.0 for p in d.probs.values())


def test_marginalizing_last_measurement_is_lossless():
    """Arrow of time: dropping the final measurement from the joint
    distribution reproduces the shorter experiment exactly."""
    rng = np.random.default_rng(7)
    for _ in range(100):
        rho, povm, (e1, e2) = random_setup(rng)
        triple = three_time_dist(rho, povm, e1, e2)
        pair = two_time_dist(rho, povm, e1, e2)  # same two evolutions
        # the (m1, m2) experiment shares only the first span with the triple
        pair12 = two_time_dist(rho, povm, IDENTITY_EVOLUTION, e1)
        no_last = marginalize(triple, 2)
        for key in pair12.probs:
            assert no_last[key] == pytest.approx(pair12[key], abs=1e-12)
        del pair


def test_sharp_two_time_correlator_is_cos_2g():
    povm = make_povm(0.0, 1.0)
    for g in np.linspace(0, 2 * np.pi, 41):
        rho = make_state(PureStateParams(0.0))
        d = two_time_dist(rho, povm, IDENTITY_EVOLUTION, Unitary(g))
        assert correlator(d) == pytest.approx(np.cos(2 * g), abs=1e-12)


def test_sharp_projective_matches_independent_path():
    """For eta = 1, alpha = 0 the sequential pipeline must equal the textbook
    projector computation P(m1, m2) = tr(P2 U P1 rho P1 U^dag)."""
    rng = np.random.default_rng(9)
    povm = make_povm(0.0, 1.0)
    proj = {m: np.diag([(1 + m) / 2, (1 - m) / 2]).astype(complex) for m in OUTCOMES}
    for _ in range(50):
        theta, phi, g = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi), rng.uniform(0, np.pi)
        rho = make_state(PureStateParams(theta, phi))
        u = unitary_of_angle(g)
        d = two_time_dist(rho, povm, IDENTITY_EVOLUTION, Unitary(g))
        for m1 in OUTCOMES:
            branch = u @ proj[m1] @ rho @ proj[m1] @ u.conj().T
            for m2 in OUTCOMES:
                expected = np.trace(proj[m2] @ branch).real
                assert d[(m1, m2)] == pytest.approx(expected, abs=1e-12)


def test_zero_probability_branch_is_safe():
    # projective measurement of |0> gives a deterministic branch; the
    # unnormalized update must not divide by the vanishing probability
    povm = make_povm(0.0, 1.0)
    rho = make_state(PureStateParams(0.0))
    d = two_time_dist(rho, povm, IDENTITY_EVOLUTION, IDENTITY_EVOLUTION)
    assert d[(1, 1)] == pytest.approx(1.0)
    assert d[(-1, 1)] == 0.0
    assert d[(-1, -1)] == 0.0


def test_correlator_signs():
    povm = make_povm(0.0, 1.0)
    rho = make_state(PureStateParams(np.pi / 2))  # |1>, sigma_z = -1
    d = one_time_dist(rho, povm, IDENTITY_EVOLUTION)
    assert correlator(d) == pytest.approx(-1.0)


def test_marginalize_bad_index():
    povm = make_povm(0.0, 0.5)
    rho = make_state(PureStateParams(0.3))
    d = two_time_dist(rho, povm, IDENTITY_EVOLUTION, Unitary(0.3))
    with pytest.raises(BadIndex):
        marginalize(d, 2)
    with pytest.raises(BadIndex):
        marginalize(d, -1)
