"""End-to-end checks that the Python layer exposes working bindings."""

import math

import pytest

import noisyvoter as nv


def test_graph_and_patterns():
    g = nv.torus(6, 1)
    assert g.n == 6 and g.m == 6 and g.connected
    assert abs(sum(g.pi) - 1.0) < 1e-12
    x = nv.lattice_pattern(6, 1, 3, [1])
    assert x.colors == [0, 1, 2, 0, 1, 2]
    assert len(x) == 6 and x[2] == 2
    nv.check_config(g, x)


def test_forward_matches_backward_pathwise():
    g = nv.torus(7, 1)
    p = nv.ModelParams(theta=0.4, q=3)
    x0 = nv.uniform_random(7, 3, seed=5)
    for seed in range(1, 11):
        xf = nv.run_forward(g, p, x0, 1.5, seed)
        xb = nv.backward_sample(g, p, x0, 1.5, seed)
        assert xf.colors == xb.colors


def test_closed_form_predictor():
    g = nv.torus(60, 1)
    spec = nv.eigendecompose(g)
    p = nv.ModelParams(theta=0.5, q=3)
    x0 = nv.lattice_pattern(60, 1, 3, [1])
    curve = nv.autocorr_curve(spec, x0, p)
    # single-rate curve (2/3) exp(-2.5 t); threshold 1/60
    assert nv.t_x0(curve, 60) == pytest.approx(math.log(40.0) / 2.5, rel=1e-7)
    pred = nv.predicted_tmix(curve, 60, 0.5)
    assert pred.value == pytest.approx(math.log(60.0) / 2.0, rel=1e-9)
    assert not pred.autocorr_branch
    assert nv.eval_autocorr(curve, 1.0, nv.Flavor.A1) == pytest.approx(
        nv.eval_autocorr(curve, 0.5), abs=1e-12
    )


def test_lattice_spectrum_constants():
    knight = nv.lattice_pattern_spectrum(2, 5, [1, 2], 0.5)
    assert knight.lambda_star == pytest.approx(-0.25, abs=1e-12)
    assert knight.theta_v == pytest.approx(5.0 / 9.0, abs=1e-12)
    rainbow = nv.lattice_pattern_spectrum(2, 5, [1, 1], 0.5)
    assert rainbow.theta_v == pytest.approx((10.0 - math.sqrt(5.0)) / 19.0, abs=1e-12)


def test_cftp_and_exact_stationary():
    g = nv.torus(5, 1)
    p = nv.ModelParams(theta=0.5, q=2)
    mu = nv.exact_stationary(g, p)
    assert sum(mu.probs) == pytest.approx(1.0, abs=1e-12)
    reps = 20000
    hist = [0.0] * 32
    for i in range(reps):
        y = nv.cftp_sample(g, p, nv.substream(11, i))
        hist[nv.encode_config(y)] += 1.0 / reps
    tv = 0.5 * sum(abs(a - b) for a, b in zip(hist, mu.probs))
    assert tv <= 3.0 * math.sqrt(32.0 / (2.0 * reps))
    # same seed, same sample
    a = nv.cftp_sample(g, p, 123)
    b = nv.cftp_sample(g, p, 123)
    assert a == b


def test_pair_closed_form():
    k2 = nv.build_graph(2, [(0, 1)])
    p = nv.ModelParams(theta=0.3, q=2)
    ps = nv.coalescence_probs(k2, p, 0, 1, 1.0, 50000, seed=7)
    assert abs(ps.p_meet.value - 0.7) <= 5 * ps.p_meet.se
    assert abs(ps.p_after.value - 0.7 * math.exp(-2.0)) <= 5 * ps.p_after.se


def test_errors_become_value_error():
    with pytest.raises(ValueError, match="BadParams"):
        nv.ModelParams(theta=0.0, q=2)
    with pytest.raises(ValueError, match="StateSpaceTooLarge"):
        nv.config_count(2, 23)
    g = nv.torus(4, 1)
    with pytest.raises(ValueError, match="NegativeTime"):
        nv.run_forward(g, nv.ModelParams(0.5, 2), nv.monochromatic(4, 2, 0), -1.0, 1)
