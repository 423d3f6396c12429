"""Count graded period dimensions for saturated three-layer inputs.

The input is an endomorphism algebra B acting on three layers; the
calculator returns the dimensions of the weight 0, -1 and -2 pieces of
the period space.  A matrix model is synthesized alongside and must
reproduce the same numbers through its commutator quotient.  Over
B = Q the closed forms are 2 + 4g^2, 2gm + 2gl and ml.
"""

from qperiods.onemotive import (
    baker_dims,
    graded_period_dims,
    rational_input,
    regular_power,
    saturated_input,
    synthesize_model,
)
from qperiods.quivalg import field_extension_structure

print("B = Q, g = 1, m = 1, l = 1:")
dims = graded_period_dims(rational_input(1, 1, 1))
print("  graded dims:", dims, "total", sum(dims))
assert dims == (6, 4, 1)

model = synthesize_model(rational_input(1, 1, 1))
print("  matrix model ambient:", model.ambient_dim,
      "graded:", model.graded, "matches:", model.matches)
assert model.matches and model.total_dim == 11

print("closed forms over B = Q:")
for g in range(3):
    row = []
    for m in range(1, 4):
        dims = graded_period_dims(rational_input(g, m, 2))
        assert dims == (2 + 4 * g * g, 2 * g * m + 4 * g, 2 * m)
        row.append(dims)
    print(f"  g={g}:", row)

# Gaussian endomorphisms shrink the counts
qi = field_extension_structure([1, 0, 1])
reg = regular_power(qi, 1)
dims = graded_period_dims(saturated_input(qi, reg, reg, reg))
print("B = Q(i), regular layers:", dims)
assert dims == (4, 4, 2)

# degenerate inputs with no middle layer reduce to a two-term count
print("two-term counts:", [baker_dims(1, 2, n) for n in range(3)])
assert [baker_dims(1, 2, n) for n in range(3)] == [4, 3, 2]
