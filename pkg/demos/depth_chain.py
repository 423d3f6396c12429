"""Watch relation spaces grow with depth and stabilize.

Relations of depth k come from exact sequences whose middle term is a
power M^m with m <= k.  The chain of relation subspaces is increasing
and becomes stationary once k reaches the dimension of M; the stable
value is certified against the full coefficient kernel.
"""

from qperiods import zoo
from qperiods.periods import depth_space, period_space

for key in ("a2/p1", "loop2/reg", "a3yx/mix"):
    m = zoo.get_module(key)
    res = depth_space(m, m.dim + 1)
    print(f"{key}: dim {m.dim}")
    for k, rel_dim in enumerate(res.per_stage_relation_dims, start=1):
        print(f"  depth {k}: {rel_dim} relations")
    full = period_space(m).relations.dim
    print(f"  full relation space: {full}")
    assert res.per_stage_relation_dims[m.dim - 1] == full
    assert res.certified

# loop2/reg is the module that genuinely needs depth two: one relation
# is visible inside M itself, the second only inside M^2
chain = depth_space(zoo.get_module("loop2/reg"), 3).per_stage_relation_dims
assert chain == (1, 2, 2)
print("loop2/reg picks up its second relation only at depth 2")
