import math

import numpy as np
import pytest

from nlsplit import (
    AdmissiblePair,
    ConstraintError,
    Field,
    GridSpec,
    StrichartzAccumulator,
    admissible_check,
    canonical_pair,
    delta_of_r,
    gamma_exponent,
    lp_norm,
    make_datum,
    sigma_norm,
)

ROOT_HALF_PI = math.sqrt(math.pi / 2.0)


def test_lp_norm_constant_zero_gaussian():
    g = GridSpec(1, 256, 8.0)
    c = 1.5 - 2.0j
    f = Field(g, np.full(g.shape, c))
    assert abs(lp_norm(f, 2) - abs(c) * math.sqrt(2 * g.half_width)) < 1e-12
    zero = Field(g, np.zeros(g.shape, dtype=complex))
    for p in (1, 2, 4, np.inf):
        assert lp_norm(zero, p) == 0.0
    gauss = make_datum("gaussian", GridSpec(1, 2048, 16.0))
    assert abs(lp_norm(gauss, 2) - (math.pi / 2) ** 0.25) < 1e-10
    with pytest.raises(ConstraintError):
        lp_norm(gauss, 0.5)


def test_sigma_norm_gaussian_closed_form():
    # for exp(-x^2): ||f||^2 = sqrt(pi/2), ||f'||^2 = sqrt(pi/2), ||xf||^2 = sqrt(pi/2)/4
    gauss = make_datum("gaussian", GridSpec(1, 2048, 16.0))
    exact = math.sqrt(ROOT_HALF_PI * (1.0 + 1.0 + 0.25))
    assert abs(sigma_norm(gauss) - exact) < 1e-8
    zero = Field(GridSpec(1, 256, 8.0), np.zeros(256, dtype=complex))
    assert sigma_norm(zero) == 0.0


def test_sigma_norm_windowed_wave_stable_under_refinement():
    values = []
    for n in (1024, 2048):
        g = GridSpec(1, n, 16.0)
        x = g.coordinate_axis
        f = Field(g, np.exp(1j * 3.0 * x) * np.exp(-((x / 4.0) ** 2)))
        values.append(sigma_norm(f))
    assert abs(values[0] - values[1]) <= 1e-6 * values[1]


def test_delta_of_r():
    assert delta_of_r(2.0, 1) == 0.0
    assert delta_of_r(2.0, 2) == 0.0
    assert abs(delta_of_r(6.0, 1) - 1.0 / 3.0) < 1e-15
    assert delta_of_r(np.inf, 1) == 0.5
    with pytest.raises(ConstraintError):
        delta_of_r(1.0, 1)


def test_admissible_check():
    for d in (1, 2):
        assert admissible_check(np.inf, 2.0, d)
    assert admissible_check(4.0, np.inf, 1)
    assert admissible_check(6.0, 6.0, 1)
    assert not admissible_check(6.0, 6.0, 2)
    assert not admissible_check(3.0, 6.0, 1)  # q below the d=1 range
    assert not admissible_check(np.inf, np.inf, 2)  # r = inf excluded in d=2
    with pytest.raises(ConstraintError):
        AdmissiblePair(6.0, 6.0, 2)


def test_canonical_pair_and_gamma():
    p = canonical_pair(2.0, 1)
    assert (p.q, p.r) == (6.0, 6.0)
    p = canonical_pair(1.0, 2)
    assert (p.q, p.r) == (4.0, 4.0)
    assert gamma_exponent(2.0, 1) == 6.0
    assert gamma_exponent(1.0, 2) == 4.0
    # gamma * delta(r0) > 1 and the Holder budget identity 1/q0' = 1/q0 + 2 sigma/gamma
    for d, sigma in ((1, 2.0), (2, 1.0)):
        pair = canonical_pair(sigma, d)
        gam = gamma_exponent(sigma, d)
        assert gam * delta_of_r(pair.r, d) > 1.0
        assert abs((1 - 1 / pair.q) - (1 / pair.q + 2 * sigma / gam)) < 1e-12
    for d, sigmas in ((1, (2.0, 2.5, 3.0, 4.0)), (2, (1.0, 1.5, 2.0, 5.0))):
        for s in sigmas:
            pair = canonical_pair(s, d)
            assert admissible_check(pair.q, pair.r, d)
            assert gamma_exponent(s, d) * delta_of_r(pair.r, d) > 1.0


def test_accumulator_single_constant_and_sup():
    pair = AdmissiblePair(6.0, 6.0, 1)
    tau = 0.25
    acc = StrichartzAccumulator(pair, tau)
    acc.accumulate(2.0)
    assert abs(acc.finalize() - tau ** (1 / 6) * 2.0) < 1e-14

    acc = StrichartzAccumulator(pair, tau)
    for _ in range(8):
        acc.accumulate(2.0)
    assert abs(acc.finalize() - (8 * tau) ** (1 / 6) * 2.0) < 1e-14

    sup_acc = StrichartzAccumulator(AdmissiblePair(np.inf, 2.0, 1), tau)
    for v in (0.3, 1.7, 0.9):
        sup_acc.accumulate(v)
    assert sup_acc.finalize() == 1.7
    with pytest.raises(ConstraintError):
        sup_acc.accumulate(-1.0)


def test_accumulator_order_independent():
    pair = AdmissiblePair(6.0, 6.0, 1)
    rng = np.random.default_rng(11)
    values = rng.uniform(0.1, 3.0, 200)
    a, b = StrichartzAccumulator(pair, 0.125), StrichartzAccumulator(pair, 0.125)
    for v in values:
        a.accumulate(float(v))
    for v in values[::-1]:
        b.accumulate(float(v))
    assert a.finalize() == b.finalize()
    assert a.count == 200
