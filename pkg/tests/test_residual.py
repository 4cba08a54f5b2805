import pytest

from reeslab.groebner import IdealData, height
from reeslab.modules import PModule, direct_sum, free_module, ideal_module
from reeslab.poly import PolyRing
from reeslab.residual import (INF, ResidualError, check_AN, check_Gs, ext_vanishing_locus_check, is_ideal_module,
                              is_strongly_cm, koszul_homology, residual_intersection, sliding_depth_check,
                              sliding_depth_data)

R2 = PolyRing(["x", "y"])
R3 = PolyRing(["x", "y", "z"])
R4 = PolyRing(["x", "y", "z", "w"])


def test_gs_of_complete_intersection_and_square():
    assert check_Gs(ideal_module(IdealData.parse(R3, ["x", "y"])), INF).verdict
    sq = ideal_module(IdealData.parse(R2, ["x^2", "x*y", "y^2"]))
    assert check_Gs(sq, 2).verdict
    rep = check_Gs(sq, 3)
    assert not rep.verdict and rep.failed_at == 2
    assert check_Gs(free_module(R2, 2), 5).verdict


def test_forced_link():
    I = IdealData.parse(R2, ["x", "y"])
    res = residual_intersection(I, 2, J=IdealData.parse(R2, ["x^2", "y"]))
    assert res.K == IdealData.parse(R2, ["x", "y"])
    assert res.height_K == 2 and res.cm_quotient and not res.geometric


def test_generic_link_of_maximal_ideal_is_improper():
    assert residual_intersection(IdealData.parse(R2, ["x", "y"]), 2).improper


@pytest.mark.parametrize("seed", range(4))
def test_seeded_residuals_have_height_at_least_s(seed):
    I = IdealData.parse(R3, ["x", "y"])
    for s in (2, 3):
        res = residual_intersection(I, s, seed, extra_degree=seed % 2)
        if not res.improper:
            assert res.is_residual and res.height_K >= s
            assert res.K.contains_ideal(res.J)


def test_residual_rejects_small_s():
    with pytest.raises(ResidualError):
        residual_intersection(IdealData.parse(R3, ["x", "y"]), 1)


def test_artin_nagata_for_complete_intersection():
    I = IdealData.parse(R3, ["x", "y"])
    rep = check_AN(I, 2, trials=3)
    assert rep.status == "verified"
    assert check_AN(I, 1).notes


def test_koszul_homology_of_regular_sequence():
    H = koszul_homology(IdealData.parse(R3, ["x", "y", "z"]).gens)
    assert [h.is_zero() for h in H] == [False, True, True, True]


def test_sliding_depth_and_strong_cm():
    assert sliding_depth_check(IdealData.parse(R2, ["x", "y"]))
    assert is_strongly_cm(IdealData.parse(R2, ["x^2", "x*y", "y^2"]))
    J = IdealData.parse(R4, ["x*z", "x*w", "y*z", "y*w"])
    data = sliding_depth_data(J)
    assert any(j == 1 and dp < bound for j, dp, bound in data)
    assert not sliding_depth_check(J)
    assert height(J) == 2


def test_ext_locus_and_ideal_modules():
    assert ext_vanishing_locus_check(ideal_module(IdealData.parse(R3, ["x", "y"])), 1, 2)
    x, y, z, w = R4.gens()
    assert is_ideal_module(direct_sum(ideal_module([x, y]), ideal_module([z, w])))
    assert is_ideal_module(ideal_module([x]))
    assert is_ideal_module(ideal_module(IdealData.parse(R2, ["x^2", "x*y", "y^2"])))
    # syzygies of (x, y, z): reflexive of rank 2, not free
    a, b, c = R3.gens()
    assert not is_ideal_module(PModule(R3, 3, ((a, b, c),), (1, 1, 1)))
