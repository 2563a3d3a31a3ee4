import numpy as np
import pytest

from lglab import kernel
from lglab.core import Gad, PureStateParams, Unitary, composed_gamma13
from lglab.errors import InvalidPovm, UncoveredRegime
from lglab.expressions import (
    ChannelDyn,
    L_SIGN_PATTERNS,
    ScenarioConfig,
    UnitaryDyn,
    V_SIGN_PATTERNS,
    closed_form_L,
    closed_form_V,
    evaluate_numeric,
)


def random_unitary_config(rng):
    eta = rng.uniform(0, 1)
    return ScenarioConfig(
        PureStateParams(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)),
        rng.uniform(-(1 - eta), 1 - eta), eta,
        UnitaryDyn(rng.uniform(0, 2 * np.pi), rng.uniform(0, 2 * np.pi)),
    )


def random_channel_config(rng):
    eta = rng.uniform(0, 1)
    alpha = 0.0 if rng.uniform() < 0.5 else 1.0 - eta
    return ScenarioConfig(
        PureStateParams(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)),
        alpha, eta, ChannelDyn(*rng.uniform(0, 1, 4)),
    )


def test_closed_form_matches_numeric_unitary_500():
    rng = np.random.default_rng(100)
    for _ in range(500):
        cfg = random_unitary_config(rng)
        values = evaluate_numeric(cfg)
        assert abs(closed_form_L(cfg) - values.L) < 1e-9
        assert abs(closed_form_V(cfg) - values.V) < 1e-9


def test_closed_form_matches_numeric_channel_500():
    # covers both the unbiased and the alpha = 1 - eta measurement families,
    # at arbitrary theta
    rng = np.random.default_rng(101)
    for _ in range(500):
        cfg = random_channel_config(rng)
        values = evaluate_numeric(cfg)
        assert abs(closed_form_L(cfg) - values.L) < 1e-9
        assert abs(closed_form_V(cfg) - values.V) < 1e-9


def test_uncovered_channel_regime_raises():
    cfg = ScenarioConfig(PureStateParams(0.3), 0.1, 0.5,
                         ChannelDyn(0.2, 0.3, 0.4, 0.5))
    with pytest.raises(UncoveredRegime):
        closed_form_L(cfg)
    with pytest.raises(UncoveredRegime):
        closed_form_V(cfg)


def test_config_validation():
    with pytest.raises(InvalidPovm):
        ScenarioConfig(PureStateParams(0.0), 0.5, 0.6, UnitaryDyn(0.1, 0.2))
    with pytest.raises(ValueError):
        ScenarioConfig(PureStateParams(0.0), 0.0, 1.0, ChannelDyn(1.2, 0.0, 0.0, 0.0))
    with pytest.raises(ValueError):
        ScenarioConfig(PureStateParams(0.0), 0.0, 1.0, ChannelDyn(0.0, 0.0, -0.1, 0.0))


def test_evolutions_composition():
    cfg = ScenarioConfig(PureStateParams(0.0), 0.0, 1.0, UnitaryDyn(0.7, 0.4))
    e12, e23, e13 = cfg.evolutions()
    assert isinstance(e12, Unitary) and e13.g == pytest.approx(1.1)

    dyn = ChannelDyn(0.2, 0.3, 0.4, 0.9, strict_composition=True)
    cfg = ScenarioConfig(PureStateParams(0.0), 0.0, 1.0, dyn)
    _, _, e13 = cfg.evolutions()
    assert isinstance(e13, Gad)
    assert e13.params.gamma == pytest.approx(composed_gamma13(0.3, 0.4))


def test_variant_values_are_the_sign_relabelings():
    rng = np.random.default_rng(102)
    for _ in range(50):
        cfg = random_unitary_config(rng)
        values = evaluate_numeric(cfg)
        c = values.correlators
        for i, (a, b, cc) in enumerate(L_SIGN_PATTERNS):
            assert values.variant_values["L"][i] == pytest.approx(
                -a * c["m12"] + b * c["m23"] + cc * c["m13"], abs=1e-12)
        for i, (v, w) in enumerate(V_SIGN_PATTERNS):
            assert values.variant_values["V"][i] == pytest.approx(
                v * w * c["m123"] + v * c["m13"] - w * c["m2"], abs=1e-12)
        assert values.variant_values["L"][0] == values.L
        assert values.variant_values["V"][0] == values.V


def test_luders_ceiling_standard_grid():
    """L never exceeds 3/2 under sharp unbiased unitary dynamics; scanned on a
    one-degree grid in both angles (L is state-independent at alpha = 0)."""
    g = np.arange(0.0, np.pi + 1e-12, np.pi / 180)
    g1, g2 = np.meshgrid(g, g, indexing="ij")
    out = kernel.unitary_lg(0.0, 0.0, 0.0, 1.0, g1, g2)
    assert out["L"].max() <= 1.5 + 1e-9
    # and every sign relabeling obeys the same bound
    for a, b, c in L_SIGN_PATTERNS:
        v = -a * out["m12"] + b * out["m23"] + c * out["m13"]
        assert v.max() <= 1.5 + 1e-9


def test_luders_ceiling_third_order_grid():
    """V never exceeds 2 under sharp unbiased unitary dynamics, over a grid in
    both angles and the initial state."""
    g = np.arange(0.0, np.pi + 1e-12, np.pi / 60)  # includes 3pi/4 and pi/4
    theta = np.arange(0.0, np.pi / 2 + 1e-12, np.pi / 36)
    g1, g2, th = np.meshgrid(g, g, theta, indexing="ij")
    worst = -np.inf
    for phi in np.arange(0.0, 2 * np.pi + 1e-12, np.pi / 36):
        out = kernel.unitary_lg(th, phi, 0.0, 1.0, g1, g2)
        worst = max(worst, float(out["V"].max()))
    assert worst <= 2.0 + 1e-9
    assert worst > 2.0 - 1e-9  # the bound is attained at a grid point


def test_eta_squared_scaling_of_standard_lg():
    for eta in np.linspace(0.1, 1.0, 10):
        cfg = ScenarioConfig(PureStateParams(0.0), 0.0, eta,
                             UnitaryDyn(2 * np.pi / 3, np.pi / 6))
        assert evaluate_numeric(cfg).L == pytest.approx(1.5 * eta**2, abs=1e-12)


def test_third_order_optimum_point():
    cfg = ScenarioConfig(PureStateParams(np.pi / 4, np.pi / 2), 0.0, 1.0,
                         UnitaryDyn(3 * np.pi / 4, np.pi / 4))
    assert evaluate_numeric(cfg).V == pytest.approx(2.0, abs=1e-12)


def test_gad_corner_reaches_algebraic_maximum():
    cfg = ScenarioConfig(PureStateParams(0.0), 0.0, 1.0,
                         ChannelDyn(0.0, 1.0, 0.0, 0.0))
    values = evaluate_numeric(cfg)
    assert values.L == pytest.approx(3.0, abs=1e-12)
    assert values.V == pytest.approx(3.0, abs=1e-12)
    assert values.correlators["m12"] == pytest.approx(-1.0, abs=1e-12)
    assert values.correlators["m23"] == pytest.approx(1.0, abs=1e-12)
    assert values.correlators["m13"] == pytest.approx(1.0, abs=1e-12)
