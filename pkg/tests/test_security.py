import math
from fractions import Fraction

import numpy as np
import pytest

from designmosaics.designs import GDDParams, IncidenceStructure
from designmosaics.families import ag_design, build_m1, build_m2, build_m3, build_m4, clatworthy_r1
from designmosaics.security import (
    Channel,
    JointXZ,
    PAJoint,
    WiretapJoint,
    bound_pa_kl,
    bound_pa_tv,
    bound_wt_bibd,
    bound_wt_gdd,
    bound_wt_tv_bibd,
    bound_wt_tv_gdd,
    chi2,
    d2,
    d2_cond,
    divergence_comparison,
    entropy_comparison,
    exact_pa_metrics,
    exact_wiretap_metrics,
    generalized_bound,
    key_marginal_exact,
    kl,
    kl_cond,
    mutual_information,
    pa_report,
    prop41_check,
    prop42_check,
    renyi2_entropy,
    tv,
    wiretap_report,
)
from designmosaics.simkit import (
    constant_column_channel,
    identity_channel,
    independent_source,
    random_channel,
    random_source,
)


# -- divergences ---------------------------------------------------------------

def test_divergences_at_equal_distributions():
    P = np.array([0.2, 0.3, 0.5])
    assert tv(P, P) == 0.0
    assert kl(P, P) == 0.0
    assert chi2(P, P) == 0.0
    assert d2(P, P) == 0.0


def test_divergence_hand_example():
    P = np.array([1.0, 0.0])
    Q = np.array([0.5, 0.5])
    assert abs(d2(P, Q) - 1.0) < 1e-15          # log 2 = 1 bit
    assert abs(chi2(P, Q) - 1.0) < 1e-15
    assert abs(tv(P, Q) - 1.0) < 1e-15


def test_d2_cond_identity_channel_uniform():
    v = 6
    unif = np.full(v, 1.0 / v)
    val = d2_cond(np.eye(v), unif, unif)
    assert abs(val - math.log2(v)) < 1e-12


def test_divergence_relations_random():
    rng = np.random.default_rng(0)
    for _ in range(200):
        n = int(rng.integers(2, 8))
        P = rng.dirichlet(np.ones(n))
        Q = rng.dirichlet(np.ones(n))
        assert kl(P, Q) <= d2(P, Q) + 1e-12
        assert abs(chi2(P, Q) - (2.0 ** d2(P, Q) - 1.0)) < 1e-9
        assert tv(P, Q) <= math.sqrt(chi2(P, Q)) + P[Q == 0].sum() + 1e-12


def test_divergences_support_condition():
    P = np.array([0.5, 0.5, 0.0])
    Q = np.array([1.0, 0.0, 0.0])
    assert kl(P, Q) == math.inf
    assert d2(P, Q) == math.inf
    # chi2 only sums over the support of Q
    assert chi2(P, Q) == 0.25
    # tv dominated by sqrt(chi2) + P(Q = 0)
    assert tv(P, Q) <= math.sqrt(chi2(P, Q)) + 0.5 + 1e-12


def test_renyi2_entropy_and_mutual_information():
    assert abs(renyi2_entropy(np.full(8, 1 / 8)) - 3.0) < 1e-12
    P_XY = np.array([[0.25, 0.25], [0.25, 0.25]])
    assert abs(mutual_information(P_XY)) < 1e-12
    P_XY = np.array([[0.5, 0.0], [0.0, 0.5]])
    assert abs(mutual_information(P_XY) - 1.0) < 1e-12
    # I(X ^ Y) = sum_x P(x) D(P_{Y|X=x} || P_Y) = kl_cond
    rng = np.random.default_rng(1)
    P = rng.dirichlet(np.ones(6)).reshape(2, 3)
    rows = P / P.sum(axis=1, keepdims=True)
    assert abs(mutual_information(P) - kl_cond(rows, P.sum(axis=0), P.sum(axis=1))) < 1e-12


def test_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        kl(np.ones(3) / 3, np.ones(4) / 4)


# -- channels and sources ---------------------------------------------------------

def test_channel_validation():
    with pytest.raises(ValueError):
        Channel(np.array([[0.5, 0.4], [0.5, 0.5]]))
    with pytest.raises(ValueError):
        Channel(np.array([[1.2, -0.2], [0.5, 0.5]]))
    sub = Channel(np.array([[0.5, 0.3], [0.2, 0.2]]), substochastic=True)
    assert sub.substochastic
    with pytest.raises(ValueError):
        Channel(np.array([[0.9, 0.3], [0.5, 0.5]]), substochastic=True)


def test_joint_validation():
    with pytest.raises(ValueError):
        JointXZ(np.array([[0.3, 0.3], [0.3, 0.3]]))
    with pytest.raises(ValueError):
        JointXZ(np.array([[0.5, 0.0], [0.5, 0.0]]))  # P_Z has a zero column
    j = JointXZ(np.array([[0.25, 0.25], [0.25, 0.25]]))
    assert np.allclose(j.P_Z, [0.5, 0.5])


# -- joint builders -----------------------------------------------------------------

def test_wiretap_joint_pz_two_ways():
    M = build_m1(2, 3)
    rng = np.random.default_rng(2)
    W = random_channel(M.v, 7, rng)
    for p_a in (None, rng.dirichlet(np.ones(M.a))):
        J = WiretapJoint(M, W, p_a)
        pz_tensor = J.p_zsa.sum(axis=(0, 2))
        assert np.abs(pz_tensor - J.p_z).max() < 1e-12
        assert abs(J.p_zsa.sum() - 1.0) < 1e-12
        assert abs(J.tensor().sum() - 1.0) < 1e-12


def test_wiretap_point_mass_marginal_is_member_conditional():
    M = build_m1(2, 2)
    rng = np.random.default_rng(3)
    W = random_channel(M.v, 5, rng)
    alpha0 = 1
    p_a = np.zeros(M.a)
    p_a[alpha0] = 1.0
    J = WiretapJoint(M, W, p_a)
    marg = J.p_zsa.sum(axis=0)
    assert np.abs(marg - J.cond_zs[alpha0]).max() < 1e-15


def test_pa_joint_key_marginal_exactly_uniform():
    M = build_m4(2, 3)
    rng = np.random.default_rng(4)
    src = random_source(M.v, 5, rng)
    fractions = key_marginal_exact(M, src.P)
    assert len(set(fractions)) == 1
    # each P_A(alpha) = (r/b) * sum P_X = total/a, exactly
    total = sum(Fraction(float(t)) for row in src.P for t in row)
    assert fractions[0] * M.a == total
    # and in floating point the deviation is at the machine level
    J = PAJoint(M, src)
    assert exact_pa_metrics(J)["key_uniformity_deviation"] < 1e-14


def test_pa_joint_seed_conditional_formula():
    # P_{S|Z=z,A=alpha}(s) = (p_z^T N_alpha)(s) / (r p_z^T 1)
    M = build_m2(2, 1)
    rng = np.random.default_rng(5)
    src = random_source(M.v, 4, rng)
    J = PAJoint(M, src)
    N = M.member_matrices().astype(float)
    r = M.b * M.k // M.v
    for alpha in range(M.a):
        for z in range(src.nz):
            p_z = src.P[:, z]
            want = (p_z @ N[alpha]) / (r * p_z.sum())
            assert np.abs(J.cond_s_given_za[alpha, z] - want).max() < 1e-15
    # the same conditional from the full tensor
    T = J.tensor()  # (x, z, s, alpha)
    cond = T.sum(axis=0)  # (z, s, alpha)
    for alpha in range(M.a):
        got = cond[:, :, alpha] / cond[:, :, alpha].sum(axis=1, keepdims=True)
        assert np.abs(got - J.cond_s_given_za[alpha]).max() < 1e-12


# -- exact metrics -----------------------------------------------------------------

def test_wiretap_metrics_constant_column_channel():
    M = build_m1(2, 3)
    W = constant_column_channel(M.v, [0.3, 0.7])
    res = exact_wiretap_metrics(WiretapJoint(M, W))
    assert abs(res["mutual_information"]) < 1e-12
    assert abs(res["max_d2_cond"]) < 1e-12
    assert res["tv"] < 1e-12


def test_wiretap_metrics_chain_and_pa_independence():
    M = build_m1(2, 3)
    rng = np.random.default_rng(6)
    W = random_channel(M.v, 6, rng)
    values = []
    for _ in range(10):
        p_a = rng.dirichlet(np.ones(M.a))
        res = exact_wiretap_metrics(WiretapJoint(M, W, p_a))
        assert res["chain_ok"] and res["tv_chain_ok"]
        values.append((res["max_kl_cond"], res["max_d2_cond"]))
    kls, d2s = zip(*values)
    assert max(kls) - min(kls) < 1e-12     # independent of P_A
    assert max(d2s) - min(d2s) < 1e-12


def test_pa_metrics_independent_source_vanish():
    M = build_m4(2, 3)
    src = independent_source(M.v, 4)
    res = exact_pa_metrics(PAJoint(M, src))
    assert res["max_kl"] < 1e-12
    assert res["max_tv"] < 1e-12
    assert res["mutual_information"] < 1e-12


def test_pa_metrics_strong_secrecy_chain():
    M = build_m4(2, 3)
    rng = np.random.default_rng(7)
    for _ in range(20):
        src = random_source(M.v, int(rng.integers(2, 7)), rng)
        res = exact_pa_metrics(PAJoint(M, src))
        assert res["strong_secrecy_ok"]


# -- theorem bounds ------------------------------------------------------------------

def test_bound_wt_constant_column_is_one():
    M = build_m1(2, 3)
    W = constant_column_channel(M.v, [0.4, 0.6])
    assert abs(bound_wt_bibd(M.member_params, W).value - 1.0) < 1e-12
    assert bound_wt_tv_bibd(M.member_params, W).value < 1e-6
    G = build_m4(2, 3)
    WG = constant_column_channel(G.v, [0.4, 0.6])
    assert abs(bound_wt_gdd(G.member_params, WG, G.point_classes).value - 1.0) < 1e-12
    assert bound_wt_tv_gdd(G.member_params, WG, G.point_classes).value < 1e-6


def test_bound_wt_identity_channel_equals_a():
    for M in (build_m1(2, 2), build_m1(2, 3), build_m2(2, 1)):
        W = identity_channel(M.v)
        assert abs(bound_wt_bibd(M.member_params, W).value - M.a) < 1e-9
        # and the bound is attained by the exact conditional divergence
        res = exact_wiretap_metrics(WiretapJoint(M, W))
        assert abs(2 ** res["max_d2_cond"] - M.a) < 1e-9


def test_bound_wt_tv_identity_channel_closed_form():
    M = build_m1(2, 3)
    p = M.member_params
    W = identity_channel(M.v)
    want = 2.0 * math.sqrt((p.r - p.lam) * (M.v - 1) / (p.k * p.r))
    assert abs(bound_wt_tv_bibd(p, W).value - want) < 1e-12


def test_gdd_bound_with_equal_lambdas_reduces_to_bibd():
    M = build_m1(2, 3)
    p = M.member_params
    # view the BIBD as a GDD with singleton classes and lambda1 = lambda2
    gdd = GDDParams(u=1, m=M.v, k=p.k, lambda1=p.lam, lambda2=p.lam,
                    v=M.v, r=p.r, b=M.b,
                    partition=tuple((x,) for x in range(M.v)))
    rng = np.random.default_rng(8)
    W = random_channel(M.v, 5, rng)
    assert abs(bound_wt_gdd(gdd, W).value - bound_wt_bibd(p, W).value) < 1e-12
    assert abs(bound_wt_tv_gdd(gdd, W).value - bound_wt_tv_bibd(p, W).value) < 1e-12
    src = random_source(M.v, 5, rng)
    assert abs(bound_pa_kl(gdd, src).value - bound_pa_kl(p, src).value) < 1e-12
    assert abs(bound_pa_tv(gdd, src).value - bound_pa_tv(p, src).value) < 1e-12


def test_bound_pa_uniform_independent_source():
    # X uniform and independent of Z: H2 = log v, the bound collapses to 1
    M = build_m1(2, 3)
    src = independent_source(M.v, 3)
    rep = bound_pa_kl(M.member_params, src)
    assert abs(rep.value - 1.0) < 1e-12
    assert bound_pa_tv(M.member_params, src).value < 1e-6
    res = exact_pa_metrics(PAJoint(M, src))
    assert 2 ** res["max_kl"] <= rep.value + 1e-9


def test_bound_pa_full_leakage_regime():
    # Z = X: H2(X|Z=z) = 0, the bound is large but still dominates
    M = build_m1(2, 3)
    eye = np.eye(M.v) / M.v
    src = JointXZ(eye)
    rep = bound_pa_kl(M.member_params, src)
    res = exact_pa_metrics(PAJoint(M, src))
    assert rep.value >= M.a * (M.member_params.r - M.member_params.lam) / M.member_params.r
    assert 2 ** res["max_kl"] <= rep.value + 1e-9


def test_gdd_specialization_coefficients():
    rng = np.random.default_rng(9)
    # singular: only the partition divergence term survives
    M3 = build_m3(2, 1, 2)
    W = random_channel(M3.v, 5, rng)
    rep = bound_wt_gdd(M3.member_params, W, M3.point_classes)
    assert rep.specialization["class"] == "singular"
    assert abs(rep.coefficients["exp_d2_w"]) < 1e-15
    # semi-regular TD: coefficients (1, -1/k, 1/k)
    M4 = build_m4(3, 4)
    W4 = random_channel(M4.v, 5, rng)
    rep4 = bound_wt_gdd(M4.member_params, W4, M4.point_classes)
    assert rep4.specialization["class"] == "semi-regular"
    assert rep4.specialization["td_coefficients"] == (1.0, -1.0 / 3, 1.0 / 3)
    # PA side: TD coefficients (a, -1, 0)
    src = random_source(M4.v, 5, rng)
    rep_pa = bound_pa_kl(M4.member_params, src, M4.point_classes)
    assert rep_pa.specialization["td_coefficients"] == (float(M4.a), -1.0, 0.0)


# -- exact identities -----------------------------------------------------------------

def test_prop41_constant_column_and_identity_channel():
    M = build_m1(2, 3)
    D = M.member(0)
    W = constant_column_channel(M.v, [0.25, 0.75])
    rep = prop41_check(D, M.member_params, W)
    assert abs(rep.lhs - 1.0) < 1e-12 and abs(rep.rhs - 1.0) < 1e-12
    rep = prop41_check(D, M.member_params, identity_channel(M.v))
    assert abs(rep.lhs - M.v / M.k) < 1e-12
    assert rep.discrepancy < 1e-12


def test_prop41_random_channels_ag23():
    M = build_m1(2, 3)
    D = M.member(0)
    rng = np.random.default_rng(10)
    worst = 0.0
    for _ in range(100):
        W = random_channel(M.v, int(rng.integers(2, 12)), rng)
        worst = max(worst, prop41_check(D, M.member_params, W).discrepancy)
    assert worst < 1e-9


def test_prop42_uniform_independent_and_random():
    M = build_m4(2, 3)
    D = M.member(0)
    src = independent_source(M.v, 3)
    rep = prop42_check(D, M.member_params, src)
    for lhs, rhs in rep.per_z:
        assert abs(lhs - 1.0) < 1e-12 and abs(rhs - 1.0) < 1e-12
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(100):
        src = random_source(M.v, int(rng.integers(2, 9)), rng)
        worst = max(worst, prop42_check(D, M.member_params, src).discrepancy)
    assert worst < 1e-9


def test_prop_identities_on_regular_gdd():
    cat = clatworthy_r1()
    rng = np.random.default_rng(12)
    for _ in range(50):
        W = random_channel(4, int(rng.integers(2, 7)), rng)
        assert prop41_check(cat.structure, cat.params, W).discrepancy < 1e-9
        src = random_source(4, int(rng.integers(2, 7)), rng)
        assert prop42_check(cat.structure, cat.params, src).discrepancy < 1e-9


# -- generalized bounds ----------------------------------------------------------------

def test_spectral_bound_equals_bibd_identity():
    # for a BIBD, mu2 = r - lambda and (mu1 - mu2)/v = lambda, so the spectral
    # bound coincides with the exact identity value
    M = build_m1(2, 3)
    p = M.member_params
    D = M.member(0)
    rng = np.random.default_rng(13)
    W = random_channel(M.v, 6, rng)
    rep = generalized_bound(D, channel=W)
    assert abs(rep.c - (p.r - p.lam)) < 1e-9
    assert abs(rep.d - p.lam) < 1e-9
    ident = prop41_check(D, p, W)
    assert abs(rep.wiretap["bound"] - ident.rhs) < 1e-9
    assert rep.wiretap["dominates"]


def test_lambda_max_bound_dominates_gdd():
    M = build_m4(2, 3)
    D = M.member(0)
    rng = np.random.default_rng(14)
    for _ in range(30):
        W = random_channel(M.v, 5, rng)
        src = random_source(M.v, 5, rng)
        rep = generalized_bound(D, channel=W, joint=src, gdd_params=M.member_params)
        assert rep.wiretap["dominates"] and rep.pa["dominates"]
        assert rep.lambda_max["wiretap"]["dominates"]
        assert rep.lambda_max["pa"]["dominates"]


def test_generalized_bound_rank_one_gram():
    # v = k: a single block repeated; mu2 = 0 and the bound is exactly 1
    D = IncidenceStructure(np.ones((2, 3)))
    rng = np.random.default_rng(15)
    W = random_channel(2, 4, rng)
    rep = generalized_bound(D, channel=W)
    assert abs(rep.c) < 1e-9
    assert abs(rep.wiretap["bound"] - 1.0) < 1e-9
    assert abs(rep.wiretap["exact"] - 1.0) < 1e-9


# -- sandwich comparisons ----------------------------------------------------------------

def test_divergence_comparison_singleton_classes():
    rng = np.random.default_rng(16)
    W = random_channel(6, 4, rng)
    rep = divergence_comparison(W, [(x,) for x in range(6)])
    assert rep.left_holds and rep.right_holds
    assert rep.right_equality and rep.left_equality  # log u = 0 collapses both


def test_divergence_comparison_equality_detectors():
    part = [(0, 1), (2, 3)]
    # rows constant within classes: right equality
    row = np.array([0.2, 0.8])
    W = Channel(np.stack([row, row, [0.6, 0.4], [0.6, 0.4]]))
    rep = divergence_comparison(W, part)
    assert rep.right_detector and rep.right_equality
    # class-disjoint supports: left equality
    W2 = Channel(np.array([[1.0, 0, 0, 0], [0, 1.0, 0, 0], [0, 0, 1.0, 0], [0, 0, 0, 1.0]]))
    rep2 = divergence_comparison(W2, part)
    assert rep2.left_detector and rep2.left_equality
    # detectors match numeric equality on random channels
    rng = np.random.default_rng(17)
    for _ in range(50):
        W3 = random_channel(4, int(rng.integers(2, 6)), rng)
        r = divergence_comparison(W3, part)
        assert r.left_holds and r.right_holds
        if r.right_detector:
            assert r.right_equality
        if r.left_detector:
            assert r.left_equality


def test_entropy_comparison_detectors():
    part = [(0, 1), (2, 3)]
    # conditional constant on classes: left equality
    P = np.full((4, 2), 1 / 8)
    rep = entropy_comparison(JointXZ(P), part)
    assert rep["left_detector"] and rep["left_equality"]
    # at most one positive point per class: right equality
    P2 = np.array([[0.3, 0.0], [0.0, 0.25], [0.2, 0.0], [0.0, 0.25]])
    rep2 = entropy_comparison(JointXZ(P2), part)
    assert rep2["right_detector"] and rep2["right_equality"]
    rng = np.random.default_rng(18)
    for _ in range(50):
        src = random_source(4, int(rng.integers(2, 6)), rng)
        r = entropy_comparison(src, part)
        assert r["left_holds"] and r["right_holds"]


# -- assembled reports -------------------------------------------------------------------

def test_wiretap_report_dominates_random():
    rng = np.random.default_rng(19)
    for M in (build_m1(2, 3), build_m2(2, 1), build_m3(2, 1, 2), build_m4(2, 3)):
        for _ in range(10):
            W = random_channel(M.v, int(rng.integers(2, 8)), rng)
            p_a = rng.dirichlet(np.ones(M.a))
            rep = wiretap_report(M, W, p_a)
            assert rep.dominates
            assert rep.to_json()["dominates"]


def test_pa_report_dominates_random():
    rng = np.random.default_rng(20)
    for M in (build_m1(2, 3), build_m2(2, 1), build_m3(2, 1, 2), build_m4(2, 3)):
        for _ in range(10):
            src = random_source(M.v, int(rng.integers(2, 8)), rng)
            rep = pa_report(M, src)
            assert rep.dominates


def test_pa_report_d2_attains_bound():
    # the worst-case seed Renyi divergence is EQUAL to the bound (Prop level)
    rng = np.random.default_rng(21)
    for M in (build_m1(2, 3), build_m4(2, 3)):
        src = random_source(M.v, 4, rng)
        rep = pa_report(M, src)
        assert abs(2 ** rep.exact["max_d2_seed"] - rep.bounds["exp_max_kl"]) < 1e-9
