import pytest

from reeslab import rees as rs
from reeslab.groebner import IdealData
from reeslab.modules import direct_sum, free_module, ideal_module, module_rank
from reeslab.poly import PolyRing
from reeslab.rees import (is_linear_type, power_module, reduction_number, rees_ideal, rees_ideal_by_embedding,
                          special_fiber_dim)
from reeslab.theorems import random_pd1_module

R2 = PolyRing(["x", "y"])
R3 = PolyRing(["x", "y", "z"])


def _ideal(ring, texts):
    return ideal_module(IdealData.parse(ring, texts))


def test_maximal_ideal_plane():
    pkg = rees_ideal(_ideal(R2, ["x", "y"]))
    assert pkg.sorted_strings("rees") == ["y*T1 - x*T2"]
    assert pkg.is_linear_type()
    assert pkg.special_fiber_dim() == 2
    assert pkg.is_cohen_macaulay()


def test_square_of_maximal_ideal():
    pkg = rees_ideal(_ideal(R2, ["x^2", "x*y", "y^2"]))
    A = pkg.ambient
    L = pkg.sym_ideal
    assert pkg.rees_ideal == L + IdealData.parse(A, ["T2^2 - T1*T3"])
    assert not pkg.is_linear_type()
    assert pkg.sorted_strings("fiber") == ["T2^2 - T1*T3"]
    assert pkg.rees_pd() == 2 and pkg.rees_dim() == 3
    assert pkg.is_cohen_macaulay()


@pytest.mark.parametrize("seed", range(3))
def test_reduction_number_of_square(seed):
    assert reduction_number(_ideal(R2, ["x^2", "x*y", "y^2"]), seed) == 1


def test_reduction_number_of_linear_type_ideal():
    assert reduction_number(_ideal(R3, ["x", "y", "z"])) == 0


def test_powers_of_maximal_ideal():
    pkg = rees_ideal(_ideal(R2, ["x", "y"]))
    for j in range(1, 4):
        P = power_module(pkg, j)
        assert P.mu == j + 1
        assert module_rank(P) == 1


def test_free_module_rees_algebra_is_polynomial():
    pkg = rees_ideal(free_module(R2, 2))
    assert pkg.rees_ideal.gb() == []
    assert pkg.special_fiber_dim() == 2
    assert pkg.rees_pd() == 0


MODULES = {
    "(x,y)": lambda: _ideal(R2, ["x", "y"]),
    "(x2,xy,y2)": lambda: _ideal(R2, ["x^2", "x*y", "y^2"]),
    "(x2,xy,y2)+R": lambda: direct_sum(_ideal(R2, ["x^2", "x*y", "y^2"]), free_module(R2, 1, [2])),
    "(x,y)+R": lambda: direct_sum(_ideal(R2, ["x", "y"]), free_module(R2, 1, [1])),
    "(x2,y2,xz)": lambda: _ideal(R3, ["x^2", "y^2", "x*z"]),
    "(xy,xz,yz)": lambda: _ideal(R3, ["x*y", "x*z", "y*z"]),
}


@pytest.mark.parametrize("name", sorted(MODULES))
def test_saturation_agrees_with_elimination_oracle(name):
    E = MODULES[name]()
    pkg = rees_ideal(E)
    oracle = rees_ideal_by_embedding(E, None)
    assert IdealData(pkg.ambient, oracle.gens) == pkg.rees_ideal


@pytest.mark.parametrize("seed", range(3))
def test_pd1_module_oracle_and_spread_bounds(seed):
    E, _ = random_pd1_module(R3, 3, 2, seed)
    pkg = rees_ideal(E)
    oracle = rees_ideal_by_embedding(E, 6)
    low = IdealData(pkg.ambient, [g for g in pkg.rees_ideal.gb() if pkg.t_degree(g) <= 6])
    assert IdealData(pkg.ambient, oracle.gens) == low
    e = module_rank(E)
    ell = special_fiber_dim(pkg)
    assert e <= ell <= R3.nvars + e - 1
    assert ell <= E.mu


def test_explicit_witness_gives_same_ideal():
    E = _ideal(R2, ["x^2", "x*y", "y^2"])
    x = R2.parse("x")
    assert rees_ideal(E, witness=x).rees_ideal == rees_ideal(E).rees_ideal


def test_zero_rank_rejected():
    from reeslab.modules import quotient_ring_module
    with pytest.raises(rs.ReesError):
        rees_ideal(quotient_ring_module(IdealData.parse(R2, ["x"])))


def test_is_linear_type_complete_intersection():
    assert is_linear_type(_ideal(R3, ["x", "y", "z"]))
    assert not is_linear_type(_ideal(R3, ["x^2", "x*y", "y^2"]))
