"""Build a bound quiver algebra by hand and measure a period space.

The smallest interesting example: one arrow a: v1 -> v2, and the
two-dimensional module P with a acting as the identity.  Its period
space is a quotient of the 4-dimensional coefficient space by the
relations cut out by the trace pairing against the three basis paths
e_v1, e_v2 and a.
"""

from qperiods.exactlin import Matrix
from qperiods.periods import endo_quotient, period_space
from qperiods.quivalg import FdModule, build_algebra

algebra = build_algebra(["v1", "v2"], [("a", "v1", "v2")])
print("path basis:", ", ".join(algebra.basis_names()))

p = FdModule(algebra, {"v1": 1, "v2": 1}, {"a": Matrix([[1]])})
print("module dims per vertex:", dict(zip(algebra.vertices, p.dims)))

space = period_space(p)
print(f"ambient coefficient space: {space.ambient_dim}")
print(f"relations found: {space.relations.dim}")
print(f"period space dimension: {space.dim}")
for vec in space.relations.basis_vectors():
    rows = Matrix.unvec(vec, p.dim, p.dim).rows
    print("relation matrix:", [[str(x) for x in row] for row in rows])

# the endomorphism-side quotient is coarser here: P has only scalar
# endomorphisms, so commutators span less than the full relation space
endo = endo_quotient(p)
print(f"endomorphism-side dimension: {endo.dim}")

assert space.dim == 3
assert endo.dim == 4
print("the gap 4 > 3 is what refutes principality for this module")
