import pytest

from reeslab.bourbaki import (BourbakiError, bourbaki_construct, bourbaki_invariant_check, koszul_strand_exact,
                              rees_deformation_check)
from reeslab.groebner import IdealData
from reeslab.modules import direct_sum, free_module, ideal_module, quotient_ring_module
from reeslab.poly import PolyRing
from reeslab.rees import rees_ideal

R2 = PolyRing(["x", "y"])
R4 = PolyRing(["x", "y", "z", "w"])


def xy_plus_r():
    x, y = R2.gens()
    return direct_sum(ideal_module([x, y]), free_module(R2, 1, [1]), label="(x,y)+R")


@pytest.mark.parametrize("seed", range(3))
def test_bourbaki_ideal_of_xy_plus_free(seed):
    E = xy_plus_r()
    B = bourbaki_construct(E, seed=seed)
    assert not B.free_case
    assert B.grade_I == 2
    assert B.ideal_I == IdealData.parse(R2, ["x", "y"])
    pkg = rees_ideal(E, seed)
    ipkg = rees_ideal(B.ideal_as_module(), seed)
    assert pkg.special_fiber_dim() == 3
    assert ipkg.special_fiber_dim() == pkg.special_fiber_dim() - B.rank + 1
    assert pkg.is_cohen_macaulay() == ipkg.is_cohen_macaulay()
    assert rees_deformation_check(pkg, B, seed)
    for j in range(4):
        assert koszul_strand_exact(pkg, B, j, seed)
    assert bourbaki_invariant_check(E, B, seed).status == "verified"


def test_symbolic_mode_uses_generic_coefficients():
    B = bourbaki_construct(xy_plus_r(), mode="symbolic")
    assert any(v.startswith("Z") for v in B.ext_ring.vars)
    assert B.grade_I == 2


def test_free_module_has_no_proper_bourbaki_ideal():
    B = bourbaki_construct(free_module(R2, 3))
    assert B.free_case and B.ideal_I is None


def test_sum_of_two_ideals():
    x, y, z, w = R4.gens()
    E = direct_sum(ideal_module([x, y]), ideal_module([z, w]))
    B = bourbaki_construct(E, seed=1)
    assert B.grade_I >= 2
    assert rees_ideal(E).special_fiber_dim() == 4
    assert rees_ideal(B.ideal_as_module()).special_fiber_dim() == 3


def test_hypotheses_are_enforced():
    x, y = R2.gens()
    with pytest.raises(BourbakiError):
        bourbaki_construct(direct_sum(quotient_ring_module([x]), ideal_module([x, y])))
    with pytest.raises(ValueError):
        bourbaki_construct(xy_plus_r(), mode="other")
