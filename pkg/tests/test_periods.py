"""Period spaces: sympy pairing oracle, frozen corpus values, identities.

The oracle recomputes every basis path action with sympy from the raw
arrow matrices and takes the nullspace of the trace pairing; the
package's own kernel code never enters that route.
"""

from fractions import Fraction

import pytest
import sympy

from qperiods import zoo
from qperiods.exactlin import Matrix, NumberField, Subspace
from qperiods.periods import (
    ComparisonPoint,
    check_absorb_identity,
    check_orthogonal_additivity,
    check_power_identity,
    depth_space,
    endo_quotient,
    eval_and_conjecture,
    period_space,
    pushout_reduction,
    realize_relation,
    verify_realization,
)
from qperiods.quivalg import ModuleMap, SubmoduleHandle, module_power
from qperiods.yoga import WeightPartition, slice_by_weight


def to_sympy(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix(m.nrows, m.ncols,
                        lambda i, j: sympy.Rational(m.rows[i][j]))


def sympy_relation_oracle(m) -> Subspace:
    """Nullspace of the trace pairing, built independently with sympy."""
    d = m.dim
    rows = []
    for src, arrows in m.algebra.basis:
        cur = sympy.eye(m.vdim(src))
        vertex = src
        for name in arrows:
            cur = to_sympy(m.maps[name]) * cur
            vertex = m.algebra.arrow_by_name[name].target
        rho = sympy.zeros(d, d)
        r_off = m.offsets[vertex]
        c_off = m.offsets[src]
        for r in range(cur.rows):
            for c in range(cur.cols):
                rho[r_off + r, c_off + c] = cur[r, c]
        # tr(rho . E_ij) is the (j, i) entry; columns follow vec order
        rows.append([rho[j, i] for i in range(d) for j in range(d)])
    null = sympy.Matrix(rows).nullspace()
    return Subspace(d * d, [tuple(Fraction(x) for x in v) for v in null])


def test_period_space_matches_sympy_oracle():
    for key in ("a2/p1", "a2/s1+s2", "a3/proj", "a3/rad", "a3yx/mix",
                "square/proj1", "kronecker/reg0", "loop2/reg", "star/all"):
        m = zoo.get_module(key)
        assert period_space(m).relations == sympy_relation_oracle(m), key


FROZEN_DIMS = {
    # key: (period dim, endo-side dim)
    "a2/p1": (3, 4),
    "a2/s1+s2": (2, 2),
    "a2/p1+s2": (3, 3),
    "a3/proj": (6, 9),
    "a3/tower": (6, 6),
    "square/proj1": (9, 16),
    "kronecker/proj1": (4, 9),
    "loop2/reg": (2, 2),
    "star/all": (7, 16),
}


def test_frozen_period_and_endo_dims():
    for key, (p, e) in FROZEN_DIMS.items():
        m = zoo.get_module(key)
        assert period_space(m).dim == p, key
        assert endo_quotient(m).dim == e, key


def test_endo_quotient_bounds_period_space():
    for entry in zoo.corpus():
        ps = period_space(entry.module)
        es = endo_quotient(entry.module)
        assert es.dim >= ps.dim, entry.key
        # commutator relations always pair to zero
        assert ps.relations.contains(es.relations), entry.key


def test_depth_space_certifies_and_stabilizes():
    m = zoo.get_module("loop2/reg")
    res = depth_space(m, 3)
    assert res.certified
    assert res.space.relations == period_space(m).relations
    assert res.per_stage_dims == (3, 2, 2)


def test_depth_single_strategies_are_lower_bounds():
    m = zoo.get_module("a2/p1")
    oracle = period_space(m)
    for strategy in ("hom-closure", "spin-box"):
        res = depth_space(m, 2, strategy=strategy)
        assert oracle.relations.contains(res.space.relations)
        assert res.strategy == strategy


def test_realize_relation_frozen_cases():
    m = zoo.get_module("loop2/reg")
    d = m.dim
    # the two-sided rank-two commutator needs the second power
    c = Matrix([[1, 0], [0, -1]])
    r = realize_relation(m, c)
    assert r.status == "realized" and r.realization.power == 2
    assert verify_realization(c, r.realization)
    # a rank-one relation realizes inside the module itself
    c1 = Matrix([[0, 0], [1, 0]])
    r1 = realize_relation(m, c1)
    assert r1.status == "realized" and r1.realization.power == 1
    # the zero matrix is the empty realization
    r0 = realize_relation(m, Matrix.zero(d, d))
    assert r0.status == "realized" and r0.realization.power == 0
    # budgets refuse honestly rather than widen
    rb = realize_relation(m, c, power_budget=1)
    assert rb.status == "budget" and rb.realization is None


def test_realize_rejects_non_relations():
    m = zoo.get_module("a2/p1")
    not_relation = Matrix([[1, 0], [0, 0]])    # pairs to 1 against e1
    r = realize_relation(m, not_relation)
    assert r.status == "unknown"


def test_power_identity():
    for key in ("a2/p1", "a3/rad", "kronecker/reg0"):
        m = zoo.get_module(key)
        for n in (1, 2, 3):
            rep = check_power_identity(m, n)
            assert rep.applicable and rep.holds, (key, n)


def test_absorb_identity():
    m = zoo.get_module("a2/p1")
    socle = SubmoduleHandle.spin(m, [(0, 1)])
    sub, incl = socle.sub_module()
    rep = check_absorb_identity(m, incl)
    assert rep.applicable and rep.holds
    quot, proj = socle.quotient_module()
    rep = check_absorb_identity(m, proj)
    assert rep.applicable and rep.holds
    # a map that is neither mono into m nor epi out of m is inapplicable
    rep = check_absorb_identity(m, ModuleMap.zero(m, m))
    assert not rep.applicable


def test_orthogonal_additivity_frozen():
    s1 = zoo.get_module("a2/s1")
    s2 = zoo.get_module("a2/s2")
    rep = check_orthogonal_additivity(s1, s2)
    assert rep.applicable and rep.holds
    assert rep.dims == {"left": 1, "right": 1, "sum": 2}
    # P1 and S1 share the top factor, so the pair is not orthogonal
    rep = check_orthogonal_additivity(zoo.get_module("a2/p1"), s1)
    assert not rep.applicable
    # homs vanish both ways here, but the shared middle factor still
    # couples the coefficient spaces: 6 + 1 would overcount
    rep = check_orthogonal_additivity(zoo.get_module("a3/proj"),
                                      zoo.get_module("a3/s_wm1"))
    assert not rep.applicable


def _socle_slice(x: int):
    part = WeightPartition.of({0: ("v1",), -1: ("v2",)})
    m = module_power(zoo.get_module("a2/p1"), x)
    seq = slice_by_weight(m, part, -1)
    return m, seq


def test_pushout_reduction_frozen():
    s1 = zoo.get_module("a2/s1")
    for x in (1, 2):
        red = pushout_reduction(*_pushout_args(x))
        assert red.holds, x
        assert red.sub_map.is_injective()
        assert red.quot_map.is_surjective()
        assert red.quot_map.target == module_power(s1, x * x)
    assert pushout_reduction(*_pushout_args(1)).dims["middle_dim"] == 2
    assert pushout_reduction(*_pushout_args(2)).dims["middle_dim"] == 5


def _pushout_args(x: int):
    s1 = zoo.get_module("a2/s1")
    s2 = zoo.get_module("a2/s2")
    m, seq = _socle_slice(x)
    return (m, s2, x, seq.inclusion, s1, x, seq.projection)


def q_point(m, coords):
    field = NumberField([0, 1])
    return ComparisonPoint(field, tuple(field.elem([c]) for c in coords))


def test_eval_at_unit_point_fails_for_p1():
    m = zoo.get_module("a2/p1")
    rep = eval_and_conjecture(m, q_point(m, (1, 1, 0)))
    assert rep.verdict == "fails" and not rep.holds
    assert len(rep.quotient_kernel) == 2
    assert len(rep.ambient_kernel) == 3
    assert rep.relations_evaluate_to_zero
    statuses = sorted(r.status for _, r in rep.realizations)
    assert statuses == ["realized", "unknown", "unknown"]
    # the realized kernel vector witnesses the socle
    realized = [r for _, r in rep.realizations if r.status == "realized"]
    socle = SubmoduleHandle.spin(m, [(0, 1)])
    assert realized[0].realization.witness == socle


def test_eval_at_generic_cubic_point_holds():
    m = zoo.get_module("a2/p1")
    lf = NumberField([-2, 0, 0, 1])
    one, gen = lf.one(), lf.gen()
    point = ComparisonPoint(lf, (one, gen, gen * gen))
    rep = eval_and_conjecture(m, point)
    assert rep.verdict == "holds" and rep.holds
    assert len(rep.quotient_kernel) == 0
    assert len(rep.ambient_kernel) == 1
    assert rep.relations_evaluate_to_zero


def test_eval_requires_a_unit():
    m = zoo.get_module("a2/p1")
    with pytest.raises(ValueError):
        eval_and_conjecture(m, q_point(m, (0, 0, 1)))   # rho(u) singular


def test_eval_with_proper_coefficient_subfield():
    # K = Q(sqrt 2) inside L = Q[x]/(x^4 - 2), embedded through x^2
    m = zoo.get_module("a2/p1")
    lf = NumberField([-2, 0, 0, 0, 1])
    kf = NumberField([-2, 0, 1])
    image = lf.elem([0, 0, 1])
    point = ComparisonPoint(lf, (lf.one(), lf.gen(), lf.zero()),
                            coeff_field=kf, coeff_image=image)
    rep = eval_and_conjecture(m, point)
    # kernels are K-spaces; evaluation stays exact all the way down
    assert rep.relations_evaluate_to_zero
    assert isinstance(rep.holds, bool)
