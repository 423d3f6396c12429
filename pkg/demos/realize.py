"""Turn an abstract relation into an explicit exact-sequence witness.

A relation is a coefficient matrix C with tr(rho(b) C) = 0 for every
basis path b.  Realization finds a power M^m, a tuple of vectors sigma
spanning a submodule N', and a tuple of functionals omega vanishing on
N', whose contraction reproduces C.  The witness is checked exactly.
"""

from qperiods import zoo
from qperiods.exactlin import Matrix
from qperiods.periods import period_space, realize_relation, verify_realization

m = zoo.get_module("a2/p1")
space = period_space(m)
print(f"module dim {m.dim}, relation space dim {space.relations.dim}")

def show(vectors):
    return [tuple(str(x) for x in v) for v in vectors]


for vec in space.relations.basis_vectors():
    c = Matrix.unvec(vec, m.dim, m.dim)
    res = realize_relation(m, c)
    assert res.status == "realized"
    real = res.realization
    print(f"relation {show(c.rows)} realized in M^{real.power}")
    print(f"  sigma: {show(real.sigma)}")
    print(f"  omega: {show(real.omega)}")
    print(f"  witness submodule dim: {real.witness.dim}")
    assert verify_realization(c, real)

# budgets refuse honestly: the same relation cannot be forced into a
# smaller power than it needs
c = Matrix([[0, 0], [1, 0]])
res = realize_relation(m, c, power_budget=0)
print(f"with budget 0 the engine answers: {res.status!r}")
assert res.status == "budget"
