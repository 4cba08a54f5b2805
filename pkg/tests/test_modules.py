import pytest
from hypothesis import given
from hypothesis import strategies as st

from reeslab.groebner import IdealData
from reeslab.modules import (PModule, depth_and_pd, depth_by_regular_sequence, direct_sum, exterior_power,
                             ext_is_zero, ext_module, fitting_ideal, free_module, hom_dual, ideal_module,
                             minimal_resolution, module_rank, quotient_ring_module, torsion_submodule)
from reeslab.poly import PolyRing
from reeslab.theorems import random_linear_matrix

R3 = PolyRing(["x", "y", "z"])


def test_koszul_resolution_betti_numbers():
    F = minimal_resolution(quotient_ring_module(IdealData.parse(R3, ["x", "y", "z"])))
    assert F.betti == [1, 3, 3, 1]
    assert F.graded_betti() == [{0: 1}, {1: 3}, {2: 3}, {3: 1}]
    assert F.check_exact()


def test_twisted_cubic_resolution():
    R = PolyRing(["x", "y", "z", "w"])
    Q = quotient_ring_module(IdealData.parse(R, ["y^2 - x*z", "y*z - x*w", "z^2 - y*w"]))
    F = minimal_resolution(Q)
    assert F.betti == [1, 3, 2]
    assert F.check_exact()
    assert depth_and_pd(Q) == (2, 2)


@pytest.mark.parametrize("vars_", [["x", "y"], ["x", "y", "z"]])
def test_ext_of_residue_of_complete_intersection(vars_):
    R = PolyRing(vars_)
    Q = quotient_ring_module(IdealData.parse(R, ["x", "y"]))
    assert ext_is_zero(Q, 1)
    assert not ext_is_zero(Q, 2)
    X = ext_module(Q, 2)
    assert X.mu == 1
    assert fitting_ideal(X, 0) == IdealData.parse(R, ["x", "y"])


def test_ideal_module_presentation_and_rank():
    E = ideal_module(IdealData.parse(R3, ["x^2", "x*y", "y^2"]))
    assert E.mu == 3 and E.nrels == 2
    assert module_rank(E) == 1
    assert torsion_submodule(E).is_torsion_free
    assert fitting_ideal(E, 1) == IdealData.parse(R3, ["x^2", "x*y", "y^2"])


def test_torsion_is_detected():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    # R/(x) + (x, y): torsion summand
    E = direct_sum(quotient_ring_module([x]), ideal_module([x, y]))
    assert not torsion_submodule(E).is_torsion_free


def test_hom_dual_of_ideal_is_free():
    R = PolyRing(["x", "y"])
    D = hom_dual(ideal_module(IdealData.parse(R, ["x", "y"])))
    assert D.is_free() and D.mu == 1


def test_exterior_power_rank():
    E = direct_sum(ideal_module(IdealData.parse(R3, ["x", "y"])), free_module(R3, 1, [1]))
    W = exterior_power(E, 2)
    assert module_rank(W) == 1
    # wedge^2 (x,y) = R/(x,y) sits inside as torsion
    assert not torsion_submodule(W).is_torsion_free
    assert exterior_power(E, 3).is_zero() or module_rank(exterior_power(E, 3)) == 0


def test_minimize_drops_unit_relations():
    x, y, z = R3.gens()
    one = R3.one()
    E = PModule(R3, 3, ((one, x, R3.zero()), (R3.zero(), y, z)), (1, 1, 1))
    M = E.minimized
    assert M.ambient_rank == 2 and M.nrels == 1


@given(st.integers(0, 10 ** 6), st.sampled_from([(2, 1), (3, 2), (3, 1), (4, 2)]))
def test_random_cokernel_resolution_invariants(seed, shape):
    rows, cols = shape
    mat = random_linear_matrix(R3, rows, cols, seed, 0.8)
    E = PModule(R3, rows, tuple(mat), (0,) * rows)
    F = minimal_resolution(E)
    assert F.check_exact()
    dp, pd = depth_and_pd(E)
    assert dp + pd == R3.nvars
    assert depth_by_regular_sequence(E, seed) == dp
    # alternating sum of Betti numbers is the rank
    assert sum((-1) ** i * b for i, b in enumerate(F.betti)) == module_rank(E, seed)
