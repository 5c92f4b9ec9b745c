import numpy as np
import pytest

from designmosaics.designs import (
    BIBDParams,
    CheckFailure,
    GDDParams,
    IncidenceStructure,
    check_affine,
    classify_gdd,
    incidence_from_csv,
    incidence_gram,
    incidence_to_csv,
    params_from_json,
    params_to_json,
    verify_bibd,
    verify_gdd,
    verify_resolution,
    verify_tactical,
)
from designmosaics.families import ag_design, build_m3, build_m4, clatworthy_r1, td_design


def test_tactical_ag22():
    D, _ = ag_design(2, 2)
    tact = verify_tactical(D)
    assert tact and (tact.v, tact.b, tact.k, tact.r) == (4, 6, 2, 3)


def test_tactical_all_ones():
    D = IncidenceStructure(np.ones((2, 2)))
    tact = verify_tactical(D)
    assert (tact.v, tact.b, tact.k, tact.r) == (2, 2, 2, 2)


def test_tactical_failure_witness():
    N = np.ones((3, 3), dtype=int)
    N[1, 2] = 0
    res = verify_tactical(IncidenceStructure(N))
    assert isinstance(res, CheckFailure) and not res
    assert res.witness[0] == "row" and res.witness[1] == 1


def test_bibd_ag23_and_ag2_32():
    D, _ = ag_design(2, 3)
    res = verify_bibd(D, 1)
    assert res and (res.v, res.k, res.lam, res.r, res.b) == (9, 3, 1, 4, 12)
    # AG_2(3, 2): the planes of AG(3, 2) form the 2-(8, 4, 3) design
    D2, _ = ag_design(3, 2)
    assert not verify_bibd(D2, 2)  # the pair count is forced by r(k-1) = lam(v-1)
    res2 = verify_bibd(D2, 3)
    assert res2 and (res2.v, res2.b, res2.k, res2.lam) == (8, 14, 4, 3)


def test_bibd_rejects_gdd():
    D, _ = td_design(2, 3)
    assert not verify_bibd(D, 1)
    assert not verify_bibd(D, 0)  # lambda >= 1 required


def test_bibd_matches_brute_force_pair_counts():
    # two independent code paths: matrix identity vs direct pair counting
    for D, lam in [(ag_design(2, 3)[0], 1), (ag_design(3, 2)[0], 3)]:
        res = verify_bibd(D, lam)
        assert res
        N = D.N
        for x in range(D.v):
            for y in range(x + 1, D.v):
                assert int((N[x] & N[y]).sum()) == lam


def test_gdd_clatworthy_r1():
    cat = clatworthy_r1()
    res = verify_gdd(cat.structure, cat.partition, 2, 1)
    assert res and (res.v, res.r, res.k, res.lambda1, res.lambda2) == (4, 4, 2, 2, 1)
    assert classify_gdd(res) == "regular"


def test_gdd_singleton_partition_is_bibd():
    D, _ = ag_design(2, 3)
    singles = [(x,) for x in range(9)]
    # with u = 1 the lambda1 coefficient is vacuous: any lambda1 verifies
    for l1 in (0, 1, 5):
        res = verify_gdd(D, singles, l1, 1)
        assert res and res.u == 1 and res.m == 9


def test_gdd_td_from_m4():
    D, _ = td_design(2, 3)
    part = [(0, 1, 2), (3, 4, 5)]
    res = verify_gdd(D, part, 0, 1)
    assert res and (res.u, res.m, res.k, res.b) == (3, 2, 2, 9)
    assert classify_gdd(res) == "semi-regular"


def test_gdd_malformed_partition():
    D, _ = td_design(2, 3)
    with pytest.raises(ValueError):
        verify_gdd(D, [(0, 1), (2, 3, 4, 5)], 0, 1)   # unequal sizes
    with pytest.raises(ValueError):
        verify_gdd(D, [(0, 1, 2), (2, 3, 4)], 0, 1)   # not a partition


def test_dual_involution_and_sum_swap():
    D, _ = ag_design(2, 2)
    assert D.dual().dual() == D
    tact = verify_tactical(D)
    dtact = verify_tactical(D.dual())
    assert (dtact.k, dtact.r) == (tact.r, tact.k)
    assert (dtact.v, dtact.b) == (tact.b, tact.v)


def test_resolution_ag23():
    D, R = ag_design(2, 3)
    assert verify_resolution(D, R.classes)


def test_resolution_shuffle_fails():
    D, R = ag_design(2, 3)
    classes = [list(c) for c in R.classes]
    classes[0][0], classes[1][0] = classes[1][0], classes[0][0]
    assert not verify_resolution(D, classes)


def test_resolution_single_block_repeated():
    # v = k: one block repeated r times, one class each
    N = np.ones((3, 4), dtype=int)
    D = IncidenceStructure(N)
    res = verify_resolution(D, [(0,), (1,), (2,), (3,)])
    assert res


def test_classify_gdd_cases():
    m3 = build_m3(2, 1, 2)
    assert classify_gdd(m3.member_params) == "singular"
    m4 = build_m4(2, 3)
    assert classify_gdd(m4.member_params) == "semi-regular"
    assert classify_gdd(clatworthy_r1().params) == "regular"
    with pytest.raises(ValueError):
        classify_gdd(GDDParams(u=2, m=2, k=2, lambda1=5, lambda2=1, v=4, r=4, b=8))


def test_affine_ag23():
    D, R = ag_design(2, 3)
    rep = check_affine(D, R)
    assert rep.affine and rep.mu == 1


def test_affine_ag_2_3_2():
    D, R = ag_design(3, 2)
    rep = check_affine(D, R)
    assert rep.affine and rep.mu == 2


def test_not_affine_when_bose_strict():
    # the K6 pair design: resolvable (6, 2, 1) BIBD with b = 15 > v + r - 1 = 10
    from designmosaics.families import denniston_design, denniston_geometry
    D, R = denniston_design(denniston_geometry(2, 1))
    assert verify_bibd(D, 1)
    rep = check_affine(D, R)
    assert not rep.affine and "Bose" in rep.reason


def test_incidence_gram():
    D, _ = ag_design(2, 3)
    G = incidence_gram(D)
    expect = 3 * np.eye(9, dtype=np.int64) + np.ones((9, 9), dtype=np.int64)
    assert np.array_equal(G, expect)
    empty = IncidenceStructure(np.zeros((3, 4)))
    assert np.array_equal(incidence_gram(empty), np.zeros((3, 3)))
    cat = clatworthy_r1()
    C = np.zeros((4, 4), dtype=np.int64)
    for cls in cat.partition:
        idx = np.array(cls)
        C[np.ix_(idx, idx)] = 1
    expect = (4 - 2) * np.eye(4, dtype=np.int64) + (2 - 1) * C + np.ones((4, 4), dtype=np.int64)
    assert np.array_equal(incidence_gram(cat.structure), expect)


def test_fisher_bose_hanani_inequalities():
    # Fisher: b >= v for BIBDs with k < v
    for (t, q) in [(2, 2), (2, 3), (3, 2)]:
        D, R = ag_design(t, q)
        tact = verify_tactical(D)
        assert tact.b >= tact.v
        # Bose for resolvable BIBDs
        assert tact.b >= tact.v + tact.r - 1
    # Hanani: k <= (lambda u^2 - 1)/(u - 1) for (u, k, lambda) TDs
    for q in (2, 3, 4):
        for k in range(2, q + 2):
            m4 = build_m4(k, q)
            p = m4.member_params
            assert p.k <= (p.lambda2 * p.u ** 2 - 1) // (p.u - 1)


def test_bibd_params_derivation():
    p = BIBDParams.from_vkl(9, 3, 1)
    assert (p.r, p.b) == (4, 12)
    with pytest.raises(ValueError):
        BIBDParams.from_vkl(8, 3, 1)


def test_csv_and_json_round_trips(tmp_path):
    D, _ = ag_design(2, 2)
    path = tmp_path / "d.csv"
    incidence_to_csv(D, path)
    assert incidence_from_csv(path) == D

    bj = params_to_json(verify_bibd(D, 1))
    assert params_from_json(bj) == verify_bibd(D, 1)
    cat = clatworthy_r1()
    gj = params_to_json(cat.params)
    assert params_from_json(gj) == cat.params
