import numpy as np
import pytest

from designmosaics.families import build_m1, build_m4
from designmosaics.security import WiretapJoint, exact_wiretap_metrics
from designmosaics.simkit import (
    SimConfig,
    channel_from_csv,
    chi_square_gof,
    constant_column_channel,
    identity_channel,
    independent_source,
    make_channel,
    pa_roundtrip,
    random_source,
    symmetric_channel,
    wiretap_roundtrip,
)


def test_channel_constructors():
    assert np.array_equal(identity_channel(4).W, np.eye(4))
    assert np.array_equal(symmetric_channel(4, 0.0).W, np.eye(4))
    W = symmetric_channel(3, 0.3).W
    assert np.allclose(W.sum(axis=1), 1.0)
    assert np.allclose(np.diag(W), 0.7)
    cc = constant_column_channel(5, [0.2, 0.8])
    assert np.allclose(cc.W, np.tile([0.2, 0.8], (5, 1)))
    # zero leakage: exact mutual information vanishes
    M = build_m1(2, 2)
    res = exact_wiretap_metrics(WiretapJoint(M, constant_column_channel(M.v, [0.2, 0.8])))
    assert abs(res["mutual_information"]) < 1e-12


def test_channel_from_csv_rejects_nonstochastic(tmp_path):
    path = tmp_path / "w.csv"
    np.savetxt(path, np.array([[0.5, 0.4], [0.5, 0.5]]), delimiter=",")
    with pytest.raises(ValueError):
        channel_from_csv(path)


def test_make_channel_dispatch():
    assert make_channel("identity", v=3).W.shape == (3, 3)
    assert make_channel("symmetric", v=3, crossover=0.2).W.shape == (3, 3)
    assert make_channel("constant-column", v=3).W.shape == (3, 2)
    assert make_channel("random", v=3, nz=5, rng=np.random.default_rng(0)).W.shape == (3, 5)
    with pytest.raises(ValueError):
        make_channel("nope", v=3)


def test_chi_square_gof_calibration():
    rng = np.random.default_rng(0)
    probs = np.array([0.5, 0.3, 0.2])
    draws = rng.choice(3, size=20000, p=probs)
    counts = np.bincount(draws, minlength=3)
    _, _, p_good = chi_square_gof(counts, probs)
    assert p_good > 1e-3
    _, _, p_bad = chi_square_gof(counts, np.array([1 / 3] * 3))
    assert p_bad < 1e-6
    # observation in a zero-probability cell is fatal
    stat, df, p_zero = chi_square_gof(np.array([10, 10]), np.array([1.0, 0.0]))
    assert p_zero == 0.0


def test_wiretap_roundtrip_decodes_and_calibrates():
    M = build_m1(2, 3)
    cfg = SimConfig(mosaic=M, trials=20000, seed=123, channel=identity_channel(M.v))
    res = wiretap_roundtrip(cfg)
    assert res.decode_errors == 0
    assert res.pvalues["joint_zsa"] >= 1e-3
    assert res.passed
    # Miller-Madow corrected MI estimate within 3 sigma of the exact value
    diff = abs(res.empirical["mi_batch_mean"] - res.exact["mutual_information"])
    assert diff <= 3 * res.empirical["mi_batch_se"] + 1e-3


def test_wiretap_roundtrip_point_mass_message():
    M = build_m1(2, 2)
    p_a = np.array([0.0, 1.0])
    cfg = SimConfig(mosaic=M, trials=8000, seed=7, channel=identity_channel(M.v), p_a=p_a)
    res = wiretap_roundtrip(cfg)
    assert res.decode_errors == 0
    # empirical conditional matches the member law
    counts = res.counts.reshape(M.v, M.b, M.a)
    assert counts[:, :, 0].sum() == 0
    J = WiretapJoint(M, identity_channel(M.v), p_a)
    _, _, p = chi_square_gof(counts[:, :, 1].ravel(), J.cond_zs[1].ravel())
    assert p >= 1e-3


def test_pa_roundtrip_agreement_and_uniformity():
    M = build_m4(2, 3)
    src = random_source(M.v, 4, np.random.default_rng(5))
    cfg = SimConfig(mosaic=M, trials=20000, seed=11, source=src)
    res = pa_roundtrip(cfg)
    assert res.agreement == 1.0
    assert res.pvalues["key_uniformity"] >= 1e-3
    assert res.pvalues["joint_zsa"] >= 1e-3
    assert res.passed


def test_pa_roundtrip_independent_source_low_tv():
    M = build_m4(2, 3)
    cfg = SimConfig(mosaic=M, trials=20000, seed=2, source=independent_source(M.v, 3))
    res = pa_roundtrip(cfg)
    assert res.exact["max_tv"] < 1e-12
    assert res.empirical["max_tv"] < 0.2      # sampling noise only


def test_reproducibility_bit_identical():
    M = build_m1(2, 3)
    cfg = SimConfig(mosaic=M, trials=5000, seed=99, channel=symmetric_channel(M.v, 0.2))
    r1 = wiretap_roundtrip(cfg)
    r2 = wiretap_roundtrip(cfg)
    assert np.array_equal(r1.counts, r2.counts)
    assert r1.to_json() == r2.to_json()


def test_standard_error_halves_when_trials_quadruple():
    M = build_m1(2, 3)
    ch = symmetric_channel(M.v, 0.3)
    se = []
    for trials in (8000, 32000):
        cfg = SimConfig(mosaic=M, trials=trials, seed=31, channel=ch, batches=16)
        se.append(wiretap_roundtrip(cfg).empirical["mi_batch_se"])
    ratio = se[1] / se[0]
    assert 0.25 <= ratio <= 0.9


def test_trial_count_validation():
    M = build_m1(2, 2)
    with pytest.raises(ValueError):
        wiretap_roundtrip(SimConfig(mosaic=M, trials=0, seed=1, channel=identity_channel(4)))
    with pytest.raises(ValueError):
        pa_roundtrip(SimConfig(mosaic=M, trials=0, seed=1, source=independent_source(4, 2)))
    with pytest.raises(ValueError):
        wiretap_roundtrip(SimConfig(mosaic=M, trials=10, seed=1))
