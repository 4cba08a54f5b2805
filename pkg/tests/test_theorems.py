import pytest

from reeslab import theorems as th
from reeslab.groebner import IdealData
from reeslab.modules import direct_sum, ext_is_zero, free_module, ideal_module
from reeslab.poly import PolyRing
from reeslab.rees import power_module, rees_ideal
from reeslab.report import CONTRADICTION, VERIFIED
from reeslab.theorems import (PREDICATES, REGISTRY, ModuleFacts, check_prop_generators, check_theorem, gallery,
                              resolve_predicate, run_gallery)

R2 = PolyRing(["x", "y"])
R3 = PolyRing(["x", "y", "z"])

SPEC_IDS = ["T2.5", "T2.10", "T2.11", "T2.12", "T3.2", "P3.5", "P3.6", "T3.7", "L3.8", "T4.4", "C-d4", "C-d5",
            "C-LargeRed1", "C-LargeRed2", "T-IdealMod", "T-HerLinType"]


def _ideal(ring, texts):
    return ideal_module(IdealData.parse(ring, texts))


def test_registry_covers_every_theorem():
    assert set(SPEC_IDS) <= set(REGISTRY)


def test_every_predicate_resolves():
    for entry in REGISTRY.values():
        for name in entry.hypotheses + entry.conclusions:
            assert name in PREDICATES, (entry.id, name)
            assert callable(resolve_predicate(name))


def test_report_names_are_registered():
    for rep in run_gallery(seed=0, items=gallery(0)[:6]):
        for v in rep.hypotheses + rep.conclusions:
            assert v.name in PREDICATES, (rep.theorem, v.name)


def test_t32_on_maximal_ideal_of_plane():
    rep = check_theorem("T3.2", _ideal(R2, ["x", "y"]), seed=7)
    assert rep.status == VERIFIED
    assert rep.hypotheses_hold


def test_t211_on_maximal_ideal_of_space():
    rep = check_theorem("T2.11", _ideal(R3, ["x", "y", "z"]))
    assert rep.status == VERIFIED
    assert {v.name for v in rep.conclusions} == {"linear_type", "cm_rees"}


def test_t44_on_square_of_maximal_ideal():
    rep = check_theorem("T4.4", _ideal(R2, ["x^2", "x*y", "y^2"]), {"k": 1})
    assert rep.status == VERIFIED
    assert rep.hypothesis("G_s").passed and rep.hypothesis("reduction_number").passed
    assert rep.hypothesis("depth_powers").passed
    assert th.GS_NOTE in rep.notes and th.R_NOTE in rep.notes


def test_rees_irrelevant_ideal_has_height_rank():
    for E in (_ideal(R2, ["x^2", "x*y", "y^2"]), direct_sum(_ideal(R2, ["x", "y"]), free_module(R2, 1, [1]))):
        F = ModuleFacts(E, 0)
        assert F.pkg.irrelevant_height() == F.rank


def test_unknown_theorem():
    with pytest.raises(th.TheoremInputError):
        check_theorem("T9.9", _ideal(R2, ["x", "y"]))


def test_p35_generated_module():
    E, rep = check_prop_generators("P3.5", {"rows": 3, "cols": 2}, seed=0)
    assert rep.status == VERIFIED
    pkg = rees_ideal(E)
    assert E.mu == pkg.special_fiber_dim()
    for j in range(1, 4):
        assert ext_is_zero(power_module(pkg, j), j + 1)


def test_p36_spread_grows_by_free_rank():
    I = IdealData.parse(R2, ["x^2", "x*y", "y^2"])
    E, rep = check_prop_generators("P3.6", {"ideal": I, "free_rank": 1}, seed=0)
    # this ideal misses G_3 in dimension two, so the check is report-only
    assert rep.status == "hypotheses-fail" and not rep.hypothesis("G_s").passed
    assert rees_ideal(E).special_fiber_dim() == rees_ideal(ideal_module(I)).special_fiber_dim() + 1


def test_p36_default_ideal():
    _, rep = check_prop_generators("P3.6", {}, seed=3)
    assert rep.status == VERIFIED


def test_l38_dimension_bound():
    M, rep = check_prop_generators("L3.8", {"s": 2}, seed=0)
    assert rep.status == VERIFIED
    v = rep.conclusions[0]
    assert v.name == "quotient_dimension" and v.witness["dim_M_over_E"] <= 0


def test_t37_default_module():
    _, rep = check_prop_generators("T3.7", {}, seed=1)
    assert rep.status != CONTRADICTION


def _strip(rep):
    d = rep.to_dict()
    return d["status"], [(v["name"], v["passed"]) for v in d["hypotheses"]]


def test_hypothesis_evaluation_is_order_independent():
    E = direct_sum(_ideal(R2, ["x", "y"]), free_module(R2, 1, [1]))
    ids = list(REGISTRY)
    F1 = ModuleFacts(E, 0)
    forward = {i: _strip(check_theorem(i, F1)) for i in ids}
    F2 = ModuleFacts(E, 0)
    backward = {i: _strip(check_theorem(i, F2)) for i in reversed(ids)}
    assert forward == backward


def test_corollaries_imply_t44_hypotheses():
    for seed in range(2):
        for rep in run_gallery(seed=seed):
            if rep.theorem.startswith("C-") and rep.hypotheses_hold:
                v = [c for c in rep.conclusions if c.name == "T4.4_hypotheses"]
                assert all(c.passed for c in v)
                assert v or rep.notes


def test_gallery_shape():
    items = gallery(0)
    assert len(items) >= 12
    names = " ".join(i.name for i in items)
    for part in ("R^2", "(x,y,z)", "(x2,xy,y2)", "+R", "pd1", "(x,y)+(z,w)"):
        assert part in names


def test_gallery_filter_t25_compares_cm():
    reps = run_gallery("T2.5", seed=0)
    assert reps and all(r.theorem == "T2.5" for r in reps)
    for r in reps:
        if r.hypotheses_hold:
            v = next(c for c in r.conclusions if c.name == "cm_equivalence")
            assert v.passed


def test_gallery_filter_p21():
    reps = run_gallery("P2.1", seed=0)
    assert reps and all(r.status == VERIFIED for r in reps if r.hypotheses_hold)
    assert not any(r.status == CONTRADICTION for r in reps)
