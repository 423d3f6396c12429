"""Admissible sequences, saturation, universal objects, certification.

The certification sweep is frozen as a full status table over the
bundled corpus; certificates are replayed from their recorded plans,
and universal lifts and extensions are checked extremal against the
bounded brute-force search.
"""

import pytest

from qperiods import zoo
from qperiods.quivalg import ModuleMap, SubmoduleHandle, module_power
from qperiods.yoga import (
    BudgetExceeded,
    HypothesisFailed,
    NotExact,
    OrthogonalityFailure,
    SupportViolation,
    WeightPartition,
    admissible_check,
    bounded_extension_search,
    bounded_lift_search,
    certify_principal,
    class_c_explore,
    dual_sequence,
    replay_derivation,
    saturated_check,
    saturated_sum_check,
    slice_by_weight,
    sum_sequence,
    trivial_sub_sequence,
    universal_extension,
    universal_lift,
)


def parts(algebra_key: str) -> WeightPartition:
    return WeightPartition.of(dict(zoo.weight_classes(algebra_key)))


A2 = parts("a2")
A3 = parts("a3")


# ---------------------------------------------------------------------------
# partitions and slicing


def test_partition_validation():
    with pytest.raises(ValueError):
        WeightPartition.of({0: ("v1",), -1: ("v1",)})   # vertex twice
    p = WeightPartition.of({0: ("v1",), -1: ("v2",)})
    assert p.weights == (0, -1)
    assert p.negate().weights == (1, 0)
    assert p.negate().negate() == p
    with pytest.raises(ValueError):
        parts("a2").validate_for(zoo.algebra("a3"))


def test_partition_rejects_climbing_arrows():
    # weights upside down: the arrow of a2 would climb from -1 to 0
    bad = WeightPartition.of({0: ("v2",), -1: ("v1",)})
    with pytest.raises(OrthogonalityFailure):
        slice_by_weight(zoo.get_module("a2/p1"), bad, -1)


def test_slice_by_weight_p1():
    seq = slice_by_weight(zoo.get_module("a2/p1"), A2, -1)
    assert seq.sub.dims == (0, 1)
    assert seq.module.dims == (1, 1)
    assert seq.quot.dims == (1, 0)
    assert seq.low_weights == frozenset({-1})
    assert seq.high_weights == frozenset({0})


def test_admissible_check_rejects_non_exact():
    m = zoo.get_module("a2/p1")
    seq = slice_by_weight(m, A2, -1)
    # the identity is surjective but its kernel misses the included socle
    with pytest.raises(NotExact):
        admissible_check(seq.inclusion, ModuleMap.identity(m), A2)


def test_support_violation():
    m = zoo.get_module("a2/p1+s2")
    # cutting at weight 0 puts everything in the sub and nothing above
    seq = slice_by_weight(m, A2, 0)
    assert seq.quot.is_zero()
    # a sub that reaches weight 0 under a quotient also at weight 0 fails
    with pytest.raises(SupportViolation):
        full = SubmoduleHandle.spin(m, [(1, 0, 0)])
        sub, incl = full.sub_module()
        quot, proj = full.quotient_module()
        admissible_check(incl, proj, A2)


# ---------------------------------------------------------------------------
# saturation


def test_p1_socle_sequence_right_saturated():
    seq = slice_by_weight(zoo.get_module("a2/p1"), A2, -1)
    v = saturated_check(seq, "right")
    assert v.status == "certified"
    assert v.conditions == {
        "restriction_surjective": True,
        "restriction_rank": 1,
        "end_stage_dim": 1,
        "end_stage_semisimple": True,
        "maps_into_low_classes_vanish": True,
    }
    assert "splits" in v.splitness
    left = saturated_check(seq, "left")
    assert left.status == "certified"
    assert "maps_from_high_classes_vanish" in left.conditions


def test_saturation_mirrors_through_duality():
    seq = slice_by_weight(zoo.get_module("a2/p1"), A2, -1)
    dual = dual_sequence(seq)
    assert (saturated_check(seq, "right").status
            == saturated_check(dual, "left").status)
    assert (saturated_check(seq, "left").status
            == saturated_check(dual, "right").status)


def test_saturated_sum_check():
    proj = zoo.get_module("a3/proj")
    seq = slice_by_weight(proj, A3, -1)
    extra = trivial_sub_sequence(zoo.get_module("a3/s_wm2"), A3)
    for side in ("left", "right"):
        verdict = saturated_sum_check(seq, extra, side)
        assert verdict.status == "certified", side
        assert verdict.conditions["first_summand"] == "certified"
        assert verdict.conditions["second_summand"] == "trivial"
    summed = sum_sequence(seq, extra)
    assert summed.module.dims == (1, 1, 2)
    # an extra summand that admits maps into the sub breaks the left side
    blocked = saturated_sum_check(
        slice_by_weight(proj, A3, -2),
        trivial_sub_sequence(zoo.get_module("a3/s_wm2"), A3), "left")
    assert blocked.status == "unknown"
    assert not blocked.conditions["sub_homs_vanish"]


# ---------------------------------------------------------------------------
# universal lifts and extensions


def test_universal_lift_degenerate_ends():
    seq = slice_by_weight(zoo.get_module("a2/p1"), A2, -1)
    assert universal_lift(seq, SubmoduleHandle.zero(seq.quot)).is_zero()
    lift = universal_lift(seq, SubmoduleHandle.full(seq.quot))
    assert lift.is_full()          # P1 is generated above its socle


def test_universal_lift_split_case():
    m = zoo.get_module("a2/p1+s1")
    seq = slice_by_weight(m, A2, -1)
    # the quotient is two copies of the top simple; the split one lifts
    # to a one-dimensional submodule, the projective one drags its socle
    split_coord = SubmoduleHandle.spin(seq.quot, [(0, 1)])
    lift = universal_lift(seq, split_coord)
    assert lift.dim in (1, 2)
    assert not lift.is_full()


def test_universal_extension_essential_socle():
    seq = slice_by_weight(zoo.get_module("a2/p1"), A2, -1)
    # the socle is essential: nothing meets it trivially except zero
    assert universal_extension(seq, SubmoduleHandle.zero(seq.sub)).is_zero()
    full = universal_extension(seq, SubmoduleHandle.full(seq.sub))
    assert full.is_full()


LIFT_FIXTURES = [("a2/p1", -1), ("a2/p1+s2", -1), ("a2/p1+s1", -1),
                 ("a3/proj", -1), ("a3/proj", -2), ("a3/rad", -2),
                 ("a3/tower", -1), ("a3yx/p0", -1), ("square/proj1", -1),
                 ("kronecker/proj1", -1), ("star/all", -1)]


def test_universal_objects_beat_bounded_search():
    assert len(LIFT_FIXTURES) >= 10
    for key, cut in LIFT_FIXTURES:
        m = zoo.get_module(key)
        seq = slice_by_weight(m, parts(key.split("/")[0]), cut)
        target = SubmoduleHandle.full(seq.quot)
        lift = universal_lift(seq, target)
        for candidate in bounded_lift_search(seq, target):
            assert candidate.contains(lift), (key, cut)
        ext = universal_extension(seq, SubmoduleHandle.zero(seq.sub))
        for candidate in bounded_extension_search(
                seq, SubmoduleHandle.zero(seq.sub)):
            assert ext.contains(candidate), (key, cut)


# ---------------------------------------------------------------------------
# certification sweep, frozen

SWEEP = {
    "a2/s1": ("C", 1, 1),
    "a2/s2": ("C", 1, 1),
    "a2/p1": ("R", 4, 3),
    "a2/s1+s2": ("C", 2, 2),
    "a2/p1+s2": ("C", 3, 3),
    "a2/p1^2": ("R", 4, 3),
    "a2/p1+s1": ("C", 3, 3),
    "a3/s_w0": ("C", 1, 1),
    "a3/s_wm1": ("C", 1, 1),
    "a3/s_wm2": ("C", 1, 1),
    "a3/proj": ("R", 9, 6),
    "a3/rad": ("R", 4, 3),
    "a3/tower": ("C", 6, 6),
    "a3/rad+s2": ("C", 3, 3),
    "a3/ss": ("C", 3, 3),
    "a3yx/p0": ("R", 4, 3),
    "a3yx/p1": ("R", 4, 3),
    "a3yx/mix": ("U", 5, 5),
    "a3yx/s_w0": ("C", 1, 1),
    "a3yx/p0+s_wm2": ("R", 5, 4),
    "square/proj1": ("R", 16, 9),
    "square/rad": ("R", 9, 5),
    "square/s1": ("C", 1, 1),
    "square/s4": ("C", 1, 1),
    "square/proj1+s4": ("R", 13, 9),
    "square/proj2": ("R", 4, 3),
    "square/proj2+s2+s3": ("C", 4, 4),
    "kronecker/s1": ("C", 1, 1),
    "kronecker/s2": ("C", 1, 1),
    "kronecker/reg0": ("R", 4, 3),
    "kronecker/reg1": ("R", 4, 3),
    "kronecker/proj1": ("R", 9, 4),
    "kronecker/proj1+s2": ("C", 4, 4),
    "kronecker/big": ("R", 9, 4),
    "loop2/s": ("C", 1, 1),
    "loop2/reg": ("U", 2, 2),
    "star/p_u1": ("R", 4, 3),
    "star/s_c": ("C", 1, 1),
    "star/all": ("R", 16, 7),
}


def test_certification_sweep_matches_frozen_table():
    seen = {}
    for entry in zoo.corpus():
        partition = parts(entry.algebra_key)
        verdict = certify_principal(entry.module, partition)
        seen[entry.key] = (verdict.status[0],
                           verdict.dims["endo_quotient"],
                           verdict.dims["period_space"])
        if verdict.status == "Certified":
            assert verdict.dims["endo_quotient"] == \
                verdict.dims["period_space"], entry.key
            assert replay_derivation(entry.module, partition, verdict), \
                entry.key
        if verdict.status == "Refuted":
            assert verdict.dims["endo_quotient"] > \
                verdict.dims["period_space"], entry.key
    assert seen == SWEEP


def test_certified_plans_frozen():
    def plan_of(key):
        verdict = certify_principal(zoo.get_module(key),
                                    parts(key.split("/")[0]))
        return verdict.plan

    assert plan_of("a2/p1+s2")["stages"] == [
        {"side": "right", "variant": "plain"}]
    assert plan_of("square/proj2+s2+s3")["stages"] == [
        {"side": "left", "variant": "witness"}]
    assert plan_of("kronecker/proj1+s2")["stages"] == [
        {"side": "right", "variant": "witness"}]
    assert plan_of("a3/tower")["stages"] == [
        {"side": "right", "variant": "plain"},
        {"side": "left", "variant": "plain"}]
    assert plan_of("a2/s1")["kind"] == "semisimple"


def test_derivation_rules_on_witness_certificate():
    verdict = certify_principal(zoo.get_module("square/proj2+s2+s3"),
                                parts("square"))
    rules = set()

    def walk(node):
        rules.add(node.rule)
        for child in node.children:
            walk(child)

    walk(verdict.derivation)
    assert "Iso" in rules and "SatPrincipalVar" in rules


def test_unknown_is_not_a_bluff():
    # equal dimensions but no certificate found: stays Unknown
    verdict = certify_principal(zoo.get_module("loop2/reg"), parts("loop2"))
    assert verdict.status == "Unknown"
    assert verdict.derivation is None
    assert verdict.dims["endo_quotient"] == verdict.dims["period_space"]


# ---------------------------------------------------------------------------
# bounded exploration


def test_explore_reaches_easy_diagonal():
    m = zoo.get_module("a2/p1")
    mm = module_power(m, 2)
    diag = SubmoduleHandle.spin(mm, [(1, 0, 1, 0)])
    res = class_c_explore(mm, diag, power_cap=2, budget=400)
    assert res.found
    assert res.steps is not None and len(res.steps) >= 1


def test_explore_cannot_derive_socle():
    m = zoo.get_module("a2/p1")
    socle = SubmoduleHandle.spin(m, [(0, 1)])
    res = class_c_explore(m, socle, power_cap=2, budget=400)
    assert not res.found
    assert res.exhausted
    assert res.visited == 8


def test_explore_budget_guard():
    m = zoo.get_module("a2/p1")
    socle = SubmoduleHandle.spin(m, [(0, 1)])
    with pytest.raises(BudgetExceeded):
        class_c_explore(m, socle, power_cap=2, budget=1)
