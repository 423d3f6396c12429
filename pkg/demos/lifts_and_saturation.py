"""Slice a module by weight, lift universally, and check saturation.

Cutting a module along a weight partition produces an admissible
sequence 0 -> sub -> M -> quot -> 0 whose outer terms live in
Hom-orthogonal weight classes.  A subobject of the quotient has a
smallest lift to a submodule of M; a subobject of the sub has a largest
extension.  Saturation says endomorphisms of an outer term lift, which
is what powers the certification rules.
"""

from qperiods import zoo
from qperiods.quivalg import SubmoduleHandle
from qperiods.yoga import (
    WeightPartition,
    bounded_lift_search,
    saturated_check,
    slice_by_weight,
    universal_extension,
    universal_lift,
)

part = WeightPartition.of(dict(zoo.weight_classes("a3")))
m = zoo.get_module("a3/tower")
seq = slice_by_weight(m, part, -1)
print("tower dims:", m.dims, "-> sub", seq.sub.dims, "quot", seq.quot.dims)

target = SubmoduleHandle.full(seq.quot)
lift = universal_lift(seq, target)
print(f"universal lift of the full quotient: dim {lift.dim}")
for candidate in bounded_lift_search(seq, target):
    assert candidate.contains(lift)
print("every lift found by brute-force search contains it")

# the radical's socle is essential: extending it drags in everything
rad = zoo.get_module("a3/rad")
rad_seq = slice_by_weight(rad, part, -2)
ext = universal_extension(rad_seq, SubmoduleHandle.full(rad_seq.sub))
assert ext.is_full()
print("universal extension of the essential socle is all of a3/rad")

# the projective-over-socle sequence is saturated on the right
p1_seq = slice_by_weight(zoo.get_module("a2/p1"),
                         WeightPartition.of(dict(zoo.weight_classes("a2"))),
                         -1)
verdict = saturated_check(p1_seq, "right")
print("a2/p1 socle sequence, right side:", verdict.status)
for name, value in sorted(verdict.conditions.items()):
    print(f"  {name}: {value}")
assert verdict.status == "certified"
