import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reeslab import groebner as gb
from reeslab.groebner import (BudgetError, Budget, EmptyVariety, IdealData, dimension, eliminate, height, ideal_quotient,
                              intersect, s_polynomial_check, saturate)
from reeslab.poly import Poly, PolyRing

QR = PolyRing(["x", "y", "z"], char=0)
PR = PolyRing(["x", "y", "z"])


def random_ideal(ring, rng, ngens=3, maxdeg=3):
    gens = []
    for _ in range(ngens):
        pairs = []
        for _ in range(rng.randint(1, 4)):
            e = [0, 0, 0]
            for _ in range(rng.randint(1, maxdeg)):
                e[rng.randrange(3)] += 1
            pairs.append((tuple(e), rng.randint(-5, 5) or 1))
        gens.append(Poly.from_terms(ring, pairs))
    return IdealData(ring, gens)


@pytest.mark.parametrize("seed", range(12))
def test_reduced_basis_matches_sympy(seed):
    sympy = pytest.importorskip("sympy")
    I = random_ideal(QR, random.Random(seed))
    x, y, z = sympy.symbols("x y z")
    G = sympy.groebner([sympy.sympify(str(g).replace("^", "**")) for g in I.gens], x, y, z,
                       order="grevlex", domain="QQ")
    theirs = []
    for g in G.exprs:
        num = sympy.fraction(sympy.together(g))[0]
        theirs.append(QR.parse(str(sympy.expand(num)).replace("**", "^")).monic())
    assert sorted(map(str, I.gb())) == sorted(map(str, theirs))
    assert s_polynomial_check(I)


@given(st.integers(0, 10 ** 6))
def test_basis_post_check_and_membership(seed):
    I = random_ideal(PR, random.Random(seed))
    assert s_polynomial_check(I)
    for g in I.gens:
        assert I.contains(g)
    # the normal form is idempotent and lands in the same coset
    f = PR.parse("x^3*y + 5*z^4 - x*y*z^2 + 7")
    nf = I.normal_form(f)
    assert I.normal_form(nf) == nf
    assert I.contains(f - nf)


def test_twisted_cubic_by_elimination():
    R = PolyRing(["s", "t", "x", "y", "z", "w"])
    I = IdealData.parse(R, ["x - s^3", "y - s^2*t", "z - s*t^2", "w - t^3"])
    K = eliminate(I, ["x", "y", "z", "w"])
    S = PolyRing(["x", "y", "z", "w"])
    expected = IdealData.parse(S, ["y^2 - x*z", "y*z - x*w", "z^2 - y*w"])
    got = IdealData(S, [S.parse(str(g)) for g in K.gens])
    assert got == expected
    assert height(expected) == 2 and dimension(expected) == 2


def test_quotient_intersection_saturation():
    I = IdealData.parse(PR, ["x^2", "x*y"])
    assert ideal_quotient(I, IdealData.parse(PR, ["x"])) == IdealData.parse(PR, ["x", "y"])
    assert saturate(I, PR.parse("x")) == IdealData(PR, [PR.one()])
    assert saturate(I, PR.parse("y")) == IdealData.parse(PR, ["x"])
    J = intersect(IdealData.parse(PR, ["x"]), IdealData.parse(PR, ["y"]))
    assert J == IdealData.parse(PR, ["x*y"])


@pytest.mark.parametrize("method", ["bayer", "rabinowitsch", "iterate"])
def test_saturation_methods_agree(method):
    I = IdealData.parse(PR, ["x^3*y - z^4", "x*y^2*z - z^4", "x^2*z^2 - y^4"])
    ref = saturate(I, PR.parse("z"), method="iterate")
    assert saturate(I, PR.parse("z"), method=method) == ref


@pytest.mark.parametrize("gens, d", [(["x", "y"], 1), (["x*y", "x*z"], 2), (["x", "y", "z"], 0),
                                     (["x^2", "y^3"], 1)])
def test_dimension_and_height(gens, d):
    I = IdealData.parse(PR, gens)
    assert dimension(I) == d
    assert height(I) == 3 - d


def test_unit_ideal_has_infinite_height():
    I = IdealData.parse(PR, ["x + 1", "x"])
    assert I.is_unit()
    assert height(I) == float("inf")
    with pytest.raises(EmptyVariety):
        dimension(I)


def test_budget_exhaustion_raises():
    I = IdealData(PR, random_ideal(PR, random.Random(5), 4, 4).gens, Budget(max_pairs=2))
    with pytest.raises(BudgetError):
        I.gb()


def test_verify_flag_rechecks_every_basis():
    old, before = gb.VERIFY, gb.VERIFY_COUNT
    gb.VERIFY = True
    try:
        random_ideal(PR, random.Random(9)).gb()
    finally:
        gb.VERIFY = old
    assert gb.VERIFY_COUNT > before
