"""Formal period spaces of representations, and everything that bounds them.

Conventions, fixed once for the whole package:

- For a module M of total dimension d, a coefficient matrix is a d x d
  rational matrix C; its row index runs over the chosen basis of M and
  its column index over the dual basis.  Coefficient matrices are
  vectorized row-major (Matrix.vec), so the coefficient ambient is Q^(d*d).
- The pairing against the algebra sends C to the tuple of traces
  tr(rho(b) C) over the path basis b.  The relation subspace of M is the
  kernel of that pairing; the period space is the quotient of Q^(d*d) by
  the relation subspace, so its dimension equals the rank of the algebra
  action on M.
- Every certified lower-bound construction in this module produces
  relation vectors inside that kernel; the containment is checked, not
  assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactlin import (
    FieldEmbedding,
    Matrix,
    NumberField,
    NumberFieldElem,
    QuotientPresentation,
    Subspace,
    ZERO,
    ONE,
    k_linear_kernel,
    kernel_basis,
    rat,
    rref,
)
from .quivalg import (
    FdModule,
    ModuleMap,
    SubmoduleHandle,
    end_algebra,
    factor_through_quotient,
    image_submodule,
    module_power,
    module_power_with_maps,
    tuple_embed,
    tuple_split,
)


class NotAUnit(ValueError):
    """The evaluation element is not invertible in the scalar extension."""


def _outer(u: Sequence, v: Sequence) -> Matrix:
    return Matrix(tuple(tuple(a * b for b in v) for a in u), ncols=len(v))


def _elementary(d: int, i: int, j: int) -> Matrix:
    rows = [[ZERO] * d for _ in range(d)]
    rows[i][j] = ONE
    return Matrix(rows, ncols=d)


# ---------------------------------------------------------------------------
# the coefficient pairing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PeriodSpace:
    """The period space of a module: ambient coefficients modulo relations.

    relations is a subspace of Q^(d*d); provenance records which
    construction produced it ('pairing-kernel' for the full space,
    'depth' or 'endo-quotient' for certified lower bounds, whose relation
    subspaces are contained in the pairing kernel).
    """

    module: FdModule
    relations: Subspace
    provenance: str

    @property
    def ambient_dim(self) -> int:
        return self.module.dim ** 2

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.relations.dim

    def quotient(self) -> QuotientPresentation:
        return QuotientPresentation(self.relations)

    def class_of(self, c: Matrix) -> tuple:
        return self.quotient().project(c.vec())

    def __repr__(self) -> str:
        return (f"PeriodSpace(dim {self.dim}, provenance "
                f"{self.provenance!r})")


def pairing_matrix(m: FdModule) -> Matrix:
    """Rows: the functional C -> tr(rho(b) C) for each basis path b."""
    return Matrix(
        tuple(m.act_basis(i).transpose().vec()
              for i in range(m.algebra.dim)),
        ncols=m.dim ** 2)


def period_space(m: FdModule) -> PeriodSpace:
    """The full period space, via the kernel of the coefficient pairing."""
    relations = Subspace(m.dim ** 2, kernel_basis(pairing_matrix(m)))
    return PeriodSpace(m, relations, "pairing-kernel")


# ---------------------------------------------------------------------------
# relations realized by submodules of powers
# ---------------------------------------------------------------------------


def relation_from_submodule(m: FdModule, power: int,
                            handle: SubmoduleHandle) -> Subspace:
    """All coefficient relations contracted out of one submodule of M^power.

    For a submodule N' of M^power, every pair of a vector tuple inside N'
    and a functional tuple annihilating N' contracts to the coefficient
    matrix sum_k outer(sigma_k, omega_k), which pairs to zero against the
    whole algebra.  The function returns the span of these contractions
    over a basis of N' and a basis of its annihilator.
    """
    ambient = module_power(m, power)
    if handle.ambient != ambient:
        raise ValueError("handle does not live in the expected power of M")
    d = m.dim
    flat = handle.flat()
    ann = flat.annihilator()
    vecs = []
    for s_flat in flat.basis_vectors():
        sigmas = tuple_split(m, power, s_flat)
        for w_flat in ann.basis_vectors():
            omegas = tuple_split(m, power, w_flat)
            c = Matrix.zero(d, d)
            for sg, om in zip(sigmas, omegas):
                c = c + _outer(sg, om)
            vecs.append(c.vec())
    return Subspace(d * d, vecs)


def hom_relation(f: ModuleMap) -> Subspace:
    """Relations tying the coefficients of f's source and target together.

    Lives in Q^(dM*dM) + Q^(dN*dN), flattened side by side: for every
    vector sigma of M and functional omega of N, the pair
    (sigma (x) omega.f, -(f.sigma) (x) omega) pairs to zero against every
    algebra element simultaneously on both sides.
    """
    m, n = f.source, f.target
    a = f.flattened()
    dm, dn = m.dim, n.dim
    vecs = []
    for i in range(dm):
        sigma = tuple(ONE if t == i else ZERO for t in range(dm))
        a_sigma = a.apply(sigma)
        for j in range(dn):
            omega = tuple(ONE if t == j else ZERO for t in range(dn))
            omega_a = tuple(a.rows[j][t] for t in range(dm))
            left = _outer(sigma, omega_a)
            right = _outer(a_sigma, omega).scale(Fraction(-1))
            vecs.append(left.vec() + right.vec())
    return Subspace(dm * dm + dn * dn, vecs)


def endo_quotient(m: FdModule) -> PeriodSpace:
    """The endomorphism-side upper bound for the period space.

    Relations are spanned by the commutators [C0, E] of elementary
    coefficient matrices with flattened endomorphisms; the quotient is the
    coefficient space modulo the span.  Always contains the pairing
    kernel's quotient as a quotient; equality is what principality
    certificates are about.
    """
    d = m.dim
    _, basis_maps = end_algebra(m)
    flats = [b.flattened() for b in basis_maps]
    vecs = []
    for e in flats:
        for i in range(d):
            for j in range(d):
                c0 = _elementary(d, i, j)
                comm = c0 * e - e * c0
                if not comm.is_zero():
                    vecs.append(comm.vec())
    return PeriodSpace(m, Subspace(d * d, vecs), "endo-quotient")


# ---------------------------------------------------------------------------
# depth filtration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DepthResult:
    space: PeriodSpace
    per_stage_relation_dims: tuple[int, ...]
    certified: bool
    strategy: str

    @property
    def per_stage_dims(self) -> tuple[int, ...]:
        amb = self.space.ambient_dim
        return tuple(amb - r for r in self.per_stage_relation_dims)


def _endo_tuple_maps(m: FdModule, power: int,
                     endos: Sequence[ModuleMap]):
    """Column and row maps between M and M^power over {id} + End basis.

    Tuples keep at most two slots away from the identity entry, which is
    enough to reach every relation the corpus and the certificates need
    while keeping the candidate count polynomial in the power.
    """
    alphabet = [ModuleMap.identity(m)] + list(endos)
    slots = range(power)
    combos = [dict()]
    for j in slots:
        for a in range(1, len(alphabet)):
            combos.append({j: a})
    for j, k in itertools.combinations(slots, 2):
        for a in range(1, len(alphabet)):
            for b in range(1, len(alphabet)):
                combos.append({j: a, k: b})
    return alphabet, combos


def _column_map(m: FdModule, power: int, entries: Sequence[ModuleMap]) -> ModuleMap:
    """(f_1, ..., f_power): M -> M^power."""
    target = module_power(m, power)
    blocks = []
    for v in m.algebra.vertices:
        stacked = None
        for f in entries:
            b = f.block(v)
            stacked = b if stacked is None else stacked.vstack(b)
        blocks.append(stacked)
    return ModuleMap(m, target, blocks, check=False)


def _row_map(m: FdModule, power: int, entries: Sequence[ModuleMap]) -> ModuleMap:
    """(g_1 ... g_power): M^power -> M."""
    source = module_power(m, power)
    blocks = []
    for v in m.algebra.vertices:
        glued = None
        for f in entries:
            b = f.block(v)
            glued = b if glued is None else glued.hstack(b)
        blocks.append(glued)
    return ModuleMap(source, m, blocks, check=False)


def _candidate_handles(m: FdModule, power: int, strategy: str,
                       spin_bound: int,
                       endos: Sequence[ModuleMap]) -> list[SubmoduleHandle]:
    ambient = module_power(m, power)
    seen: set = set()
    out: list[SubmoduleHandle] = []

    def push(h: SubmoduleHandle):
        key = h.spaces
        if key not in seen:
            seen.add(key)
            out.append(h)

    use_hom = strategy in ("certified", "hom-closure")
    use_spin = strategy in ("certified", "spin-box") and power <= 2

    if use_hom:
        alphabet, combos = _endo_tuple_maps(m, power, endos)
        for combo in combos:
            entries = [alphabet[combo.get(j, 0)] for j in range(power)]
            col = _column_map(m, power, entries)
            push(col.image())
            row = _row_map(m, power, entries)
            push(row.kernel())
        # kernels and images of single endomorphisms, pushed to power 1
        if power == 1:
            for e in endos:
                push(e.image())
                push(e.kernel())
            for e, f in itertools.combinations(endos, 2):
                push((e + f).image())
                push((e + f).kernel())
                push((e - f).image())
                push((e - f).kernel())

    if use_spin:
        n = ambient.dim
        b = spin_bound
        singles = Matrix.identity(n).rows
        for v in singles:
            push(SubmoduleHandle.spin(ambient, [v]))
        coeff_pairs = [(Fraction(1), Fraction(c))
                       for c in range(-b, b + 1) if c]
        for i, j in itertools.combinations(range(n), 2):
            for c1, c2 in coeff_pairs:
                vec = [ZERO] * n
                vec[i] = c1
                vec[j] = c2
                push(SubmoduleHandle.spin(ambient, [tuple(vec)]))
    return out


def depth_space(m: FdModule, k: int, strategy: str = "certified",
                spin_bound: int = 1) -> DepthResult:
    """Accumulated relation space over submodules of M^1, ..., M^k.

    Strategies: 'certified' exhausts the hom-closure and spin-box
    candidate families and stops as soon as the accumulated relations
    match the pairing kernel; 'hom-closure' and 'spin-box' use a single
    family and never stop early.  Each stage's relation dimension is
    recorded; the chain is monotone by construction, and everything it
    produces is checked to sit inside the pairing kernel.
    """
    if strategy not in ("certified", "hom-closure", "spin-box"):
        raise ValueError(f"unknown strategy {strategy!r}")
    oracle = period_space(m)
    d = m.dim
    _, endos = end_algebra(m)
    acc = Subspace.zero_space(d * d)
    per_stage = []
    certified = acc == oracle.relations
    for power in range(1, k + 1):
        if certified:
            per_stage.append(acc.dim)
            continue
        for handle in _candidate_handles(m, power, strategy, spin_bound, endos):
            rel = relation_from_submodule(m, power, handle)
            if rel.dim == 0:
                continue
            grown = acc.add(rel)
            if grown.dim != acc.dim:
                acc = grown
                if strategy == "certified" and acc == oracle.relations:
                    break
        assert oracle.relations.contains(acc), \
            "a contracted relation escaped the pairing kernel"
        per_stage.append(acc.dim)
        if acc == oracle.relations:
            certified = True
    space = PeriodSpace(m, acc, "depth")
    return DepthResult(space, tuple(per_stage), acc == oracle.relations,
                       strategy)


# ---------------------------------------------------------------------------
# realization of single relations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Realization:
    """An explicit witness that a coefficient matrix is a relation.

    sigma are vectors of M, omega are functionals, both of length m; the
    witness submodule contains the embedded sigma tuple, its annihilator
    contains the omega tuple, and the contraction of the two tuples
    reproduces the matrix.
    """

    module: FdModule
    power: int
    sigma: tuple[tuple, ...]
    omega: tuple[tuple, ...]
    witness: SubmoduleHandle

    def contraction(self) -> Matrix:
        d = self.module.dim
        c = Matrix.zero(d, d)
        for sg, om in zip(self.sigma, self.omega):
            c = c + _outer(sg, om)
        return c


@dataclass(frozen=True)
class RealizationResult:
    status: str                # 'realized' | 'unknown' | 'budget'
    realization: Realization | None
    reason: str = ""


def realize_relation(m: FdModule, c: Matrix,
                     power_budget: int | None = None) -> RealizationResult:
    """Realize a coefficient relation as a submodule of a power of M.

    Rank-factors C = sum_k outer(sigma_k, omega_k) with m = rank(C) and
    spins the sigma tuple inside M^m; by minimality of the spin this is
    the canonical candidate witness, and if the omega tuple fails to
    annihilate it the matrix is reported unrealizable at this power
    rather than silently widened.
    """
    d = m.dim
    if (c.nrows, c.ncols) != (d, d):
        raise ValueError("coefficient matrix has the wrong shape")
    red, pivots = rref(c)
    r = len(pivots)
    if r == 0:
        zero_power = module_power(m, 0)
        real = Realization(m, 0, (), (), SubmoduleHandle.zero(zero_power))
        return RealizationResult("realized", real)
    if power_budget is not None and r > power_budget:
        return RealizationResult(
            "budget", None,
            f"rank {r} exceeds the allowed power budget {power_budget}")
    omega = tuple(red.rows[i] for i in range(r))
    w_mat = Matrix(omega, ncols=d)
    sig_cols = []
    for row in c.rows:
        coeffs = []
        for i in range(r):
            coeffs.append(row[pivots[i]])
        sig_cols.append(tuple(coeffs))
    # row i of C equals sum_k sig_cols[i][k] * omega_k because the pivots
    # of an rref basis read off coordinates directly
    lmat = Matrix(sig_cols, ncols=r)
    assert lmat * w_mat == c, "rank factorization failed"
    sigma = tuple(lmat.column(k) for k in range(r))
    ambient = module_power(m, r)
    s_flat = tuple_embed(m, r, sigma)
    witness = SubmoduleHandle.spin(ambient, [s_flat])
    w_flat = tuple_embed(m, r, omega)
    if witness.flat().annihilator().contains_vector(w_flat):
        real = Realization(m, r, sigma, omega, witness)
        assert real.contraction() == c
        return RealizationResult("realized", real)
    return RealizationResult(
        "unknown", None,
        "the functional tuple does not annihilate the spun witness; the "
        "matrix is not a relation realizable at its own rank")


def verify_realization(c: Matrix, real: Realization) -> bool:
    """Recheck a realization from scratch; used by tests and the CLI."""
    m = real.module
    if real.power == 0:
        return c.is_zero()
    ambient = module_power(m, real.power)
    if real.witness.ambient != ambient:
        return False
    try:
        SubmoduleHandle(ambient, real.witness.spaces)  # revalidate stability
    except Exception:
        return False
    s_flat = tuple_embed(m, real.power, real.sigma)
    if not real.witness.contains_vector(s_flat):
        return False
    w_flat = tuple_embed(m, real.power, real.omega)
    if not real.witness.flat().annihilator().contains_vector(w_flat):
        return False
    return real.contraction() == c


def change_realization_basis(real: Realization, g: Matrix) -> Realization:
    """Rewrite the witness data along an invertible change of the tuple index.

    Replaces sigma by sigma.g and omega by g^{-1}.omega; the contraction
    is unchanged and the new spin witness is recomputed.
    """
    from .exactlin import invert
    if real.power == 0:
        return real
    ginv = invert(g)
    d = real.module.dim
    smat = Matrix.from_columns(real.sigma, nrows=d)
    wmat = Matrix(real.omega, ncols=d)
    smat2 = smat * g
    wmat2 = ginv * wmat
    sigma = tuple(smat2.column(k) for k in range(real.power))
    omega = tuple(wmat2.rows)
    ambient = module_power(real.module, real.power)
    witness = SubmoduleHandle.spin(ambient, [tuple_embed(real.module,
                                                         real.power, sigma)])
    return Realization(real.module, real.power, sigma, omega, witness)


def pad_realization(real: Realization, extra: int = 1) -> Realization:
    """Append zero-vector slots; the relation realized does not change."""
    m = real.module
    p = real.power + extra
    zero_vec = tuple([ZERO] * m.dim)
    sigma = real.sigma + tuple(zero_vec for _ in range(extra))
    omega = real.omega + tuple(zero_vec for _ in range(extra))
    ambient = module_power(m, p)
    witness = SubmoduleHandle.spin(ambient, [tuple_embed(m, p, sigma)])
    return Realization(m, p, sigma, omega, witness)


def enlarge_realization(real: Realization,
                        extra_vectors: Sequence[Sequence]) -> Realization | None:
    """Grow the witness submodule if the functional tuple still allows it."""
    m = real.module
    ambient = module_power(m, real.power)
    gens = [tuple_embed(m, real.power, real.sigma)]
    gens.extend(tuple(rat(x) for x in v) for v in extra_vectors)
    witness = SubmoduleHandle.spin(ambient, gens)
    w_flat = tuple_embed(m, real.power, real.omega)
    if not witness.flat().annihilator().contains_vector(w_flat):
        return None
    return Realization(m, real.power, real.sigma, real.omega, witness)


# ---------------------------------------------------------------------------
# induced maps on period spaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PeriodMap:
    """The map a mono or epi induces between period spaces.

    For a mono M' -> M it maps coefficients of M' to coefficients of M;
    for an epi M -> M'' it maps coefficients of M'' to coefficients of M.
    In both cases the relation subspace maps into the relation subspace
    and evaluation at any comparison point is preserved, so the map
    descends to the period quotients; on_quotient is that matrix, and it
    does not depend on the one-sided inverse chosen inside.
    """

    kind: str
    domain: PeriodSpace
    codomain: PeriodSpace
    ambient: Matrix
    on_quotient: Matrix

    def apply_ambient(self, c: Matrix) -> Matrix:
        d = self.codomain.module.dim
        return Matrix.unvec(self.ambient.apply(c.vec()), d, d)


def induced_span_map(f: ModuleMap) -> PeriodMap:
    """Period map induced by an injective or surjective module map.

    Raises ValueError for maps that are neither; a map that is both is
    treated as a mono.  Well-definedness on relations is checked, not
    assumed.
    """
    from .exactlin import invert
    if f.is_injective():
        kind = "mono"
        small, big = f.source, f.target
        j = f.flattened()
        # left inverse via the rational Gram matrix, deterministic
        jt = j.transpose()
        s = invert(jt * j) * jt
        def push(cmat: Matrix) -> Matrix:
            return j * cmat * s
    elif f.is_surjective():
        kind = "epi"
        small, big = f.target, f.source
        p = f.flattened()
        pt = p.transpose()
        s = pt * invert(p * pt)
        def push(cmat: Matrix) -> Matrix:
            return s * cmat * p
    else:
        raise ValueError("induced maps require a mono or an epi")
    dom = period_space(small)
    cod = period_space(big)
    dsmall, dbig = small.dim, big.dim
    cols = []
    for i in range(dsmall):
        for jj in range(dsmall):
            cols.append(push(_elementary(dsmall, i, jj)).vec())
    ambient = Matrix.from_columns(cols, nrows=dbig * dbig)
    # well-definedness: relations land in relations
    for v in dom.relations.basis_vectors():
        image = ambient.apply(v)
        if not cod.relations.contains_vector(image):
            raise AssertionError(
                "induced map failed to preserve relation subspaces")
    qd, qc = dom.quotient(), cod.quotient()
    on_quot_cols = []
    for k in range(qd.dim):
        coords = tuple(ONE if t == k else ZERO for t in range(qd.dim))
        lifted = qd.lift(coords)
        on_quot_cols.append(qc.project(ambient.apply(lifted)))
    on_quotient = Matrix.from_columns(on_quot_cols, nrows=qc.dim)
    return PeriodMap(kind, dom, cod, ambient, on_quotient)


def compose_period_maps(outer: PeriodMap, inner: PeriodMap) -> Matrix:
    """Quotient-level composition, for functoriality checks."""
    if inner.codomain.module != outer.domain.module:
        raise ValueError("period maps do not compose")
    return outer.on_quotient * inner.on_quotient


# ---------------------------------------------------------------------------
# evaluation at comparison points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComparisonPoint:
    """A value field L, an optional coefficient subfield K inside it, and a
    unit of the scalar-extended algebra given by L-coordinates over the
    path basis."""

    value_field: NumberField
    u_coords: tuple[NumberFieldElem, ...]
    coeff_field: NumberField | None = None
    coeff_image: NumberFieldElem | None = None

    def embedding(self) -> FieldEmbedding:
        return FieldEmbedding(self.coeff_field, self.value_field,
                              self.coeff_image)


@dataclass(frozen=True)
class EvalReport:
    module: FdModule
    point: ComparisonPoint
    space: PeriodSpace
    values: tuple                      # value of each period class
    quotient_kernel: tuple             # K-basis of kernel on the quotient
    ambient_kernel: tuple              # K-basis of kernel on coefficients
    relations_evaluate_to_zero: bool
    holds: bool                        # no kernel beyond the relations
    realizations: tuple                # (vector, RealizationResult) pairs

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "fails"


def evaluate_coefficient(m: FdModule, point: ComparisonPoint,
                         c: Matrix) -> NumberFieldElem:
    """tr(rho(u) C) inside the value field."""
    rho_u = _rho_of_unit(m, point)
    total = point.value_field.zero()
    d = m.dim
    for i in range(d):
        for jj in range(d):
            total = total + rho_u.rows[i][jj] * rat(c.rows[jj][i])
    return total


def _rho_of_unit(m: FdModule, point: ComparisonPoint) -> Matrix:
    lf = point.value_field
    d = m.dim
    rows = [[lf.zero() for _ in range(d)] for _ in range(d)]
    for b, coeff in enumerate(point.u_coords):
        if not coeff:
            continue
        mat = m.act_basis(b)
        for i in range(d):
            for jj in range(d):
                if mat.rows[i][jj]:
                    rows[i][jj] = rows[i][jj] + coeff * rat(mat.rows[i][jj])
    return Matrix(rows, ncols=d)


def _check_unit(m: FdModule, point: ComparisonPoint):
    """u must be invertible in the scalar-extended algebra itself."""
    algebra = m.algebra
    lf = point.value_field
    if len(point.u_coords) != algebra.dim:
        raise ValueError("unit coordinates do not match the algebra basis")
    n = algebra.dim
    cols = []
    for jj in range(n):
        basis = [ZERO] * n
        basis[jj] = ONE
        col = [lf.zero() for _ in range(n)]
        for i, ci in enumerate(point.u_coords):
            if not ci:
                continue
            prod = algebra.multiply_basis(i, jj)
            for t, c in enumerate(prod):
                if c:
                    col[t] = col[t] + ci * rat(c)
        cols.append(tuple(col))
    lmul = Matrix.from_columns(cols, nrows=n)
    _, pivots = rref(lmul)
    if len(pivots) != n:
        raise NotAUnit("the evaluation element is not a unit of the "
                       "scalar-extended algebra")


def eval_and_conjecture(m: FdModule, point: ComparisonPoint,
                        realize: bool = True) -> EvalReport:
    """Evaluate the period classes of M at a comparison point.

    Computes the value of every period class, the K-linear kernel of
    evaluation both on the period quotient and on the full coefficient
    space, checks that the relation subspace evaluates to zero, and (for
    rational kernel vectors) attempts to realize each ambient kernel
    vector as a submodule relation.  The point holds when evaluation is
    injective on the period quotient over K.
    """
    _check_unit(m, point)
    space = period_space(m)
    lf = point.value_field
    emb = point.embedding()
    rho_u = _rho_of_unit(m, point)
    d = m.dim
    # ambient values: tr(rho(u) E_{ij}) is just the (j, i) entry
    ambient_values = []
    for i in range(d):
        for jj in range(d):
            ambient_values.append(rho_u.rows[jj][i])
    quot = space.quotient()
    values = []
    for k in range(quot.dim):
        coords = tuple(ONE if t == k else ZERO for t in range(quot.dim))
        lifted = quot.lift(coords)
        total = lf.zero()
        for idx, x in enumerate(lifted):
            if x:
                total = total + ambient_values[idx] * x
        values.append(total)
    values = tuple(values)
    quotient_kernel = k_linear_kernel(emb, values)
    ambient_kernel = k_linear_kernel(emb, tuple(ambient_values))
    relations_zero = True
    for v in space.relations.basis_vectors():
        total = lf.zero()
        for idx, x in enumerate(v):
            if x:
                total = total + ambient_values[idx] * x
        if total:
            relations_zero = False
    realizations = []
    if realize:
        for vec in ambient_kernel:
            rational = _rational_vector(vec)
            if rational is None:
                realizations.append(
                    (vec, RealizationResult(
                        "unknown", None,
                        "kernel vector has non-rational coefficients")))
                continue
            c = Matrix.unvec(rational, d, d)
            realizations.append((vec, realize_relation(m, c)))
    return EvalReport(
        module=m, point=point, space=space, values=values,
        quotient_kernel=quotient_kernel, ambient_kernel=ambient_kernel,
        relations_evaluate_to_zero=relations_zero,
        holds=(len(quotient_kernel) == 0),
        realizations=tuple(realizations))


def _rational_vector(vec) -> tuple | None:
    out = []
    for x in vec:
        if isinstance(x, Fraction):
            out.append(x)
        elif isinstance(x, NumberFieldElem):
            if any(x.coeffs[1:]):
                return None
            out.append(x.coeffs[0])
        else:
            out.append(rat(x))
    return tuple(out)


# ---------------------------------------------------------------------------
# structural identities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityReport:
    name: str
    applicable: bool
    holds: bool
    dims: dict


def check_power_identity(m: FdModule, n: int) -> IdentityReport:
    """The period space dimension of M^n equals that of M for n >= 1."""
    if n < 1:
        raise ValueError("power must be at least 1")
    base = period_space(m)
    powered = period_space(module_power(m, n))
    return IdentityReport(
        "power", True, base.dim == powered.dim,
        {"base": base.dim, "power": powered.dim, "n": n})


def check_absorb_identity(m: FdModule, witness: ModuleMap) -> IdentityReport:
    """M + N has the same period space dimension as M alone when N embeds
    in or is a quotient of M.

    witness must be a mono N -> M or an epi M -> N.
    """
    if witness.target == m and witness.is_injective():
        other = witness.source
    elif witness.source == m and witness.is_surjective():
        other = witness.target
    else:
        return IdentityReport("absorb", False, False, {})
    from .quivalg import direct_sum
    base = period_space(m)
    summed = period_space(direct_sum([m, other]))
    return IdentityReport(
        "absorb", True, base.dim == summed.dim,
        {"base": base.dim, "sum": summed.dim})


def check_orthogonal_additivity(m0: FdModule, m1: FdModule) -> IdentityReport:
    """dim P(M0 + M1) = dim P(M0) + dim P(M1) for modules with disjoint
    vertex support.

    Disjoint support means disjoint composition factors, which is what
    makes the subquotient-closed subcategories around the two modules
    Hom-orthogonal.  Hom-vanishing between the modules alone is weaker
    and does not grant additivity: a uniserial module and one of its
    middle factors admit no homs either way yet share coefficients.
    """
    support0 = {v for v in m0.algebra.vertices if m0.vdim(v)}
    support1 = {v for v in m1.algebra.vertices if m1.vdim(v)}
    if m0.algebra is not m1.algebra or support0 & support1:
        return IdentityReport("orthogonal-additivity", False, False, {})
    from .quivalg import direct_sum
    p0, p1 = period_space(m0), period_space(m1)
    ps = period_space(direct_sum([m0, m1]))
    return IdentityReport(
        "orthogonal-additivity", True, ps.dim == p0.dim + p1.dim,
        {"left": p0.dim, "right": p1.dim, "sum": ps.dim})


@dataclass(frozen=True)
class PushoutReduction:
    module: FdModule                 # the reduced middle term
    sub_map: ModuleMap               # M0 -> reduced
    quot_map: ModuleMap              # reduced -> M1^(x*l)
    dims: dict
    holds: bool


def pushout_reduction(m: FdModule, m0: FdModule, x: int,
                      left: ModuleMap, m1: FdModule, l: int,
                      right: ModuleMap) -> PushoutReduction:
    """Collapse a two-sided power sequence to a one-sided one.

    Input: a mono left: M0^x -> M and an epi right: M -> M1^l with
    image(left) = kernel(right); M0 and M1 are passed along with their
    multiplicities and the power layout is validated.  Output: a module
    with a mono from M0 itself and an epi onto M1^(x*l), exact in the
    middle, and the period dimension comparison with M.  The middle term
    is M^x modulo the kernel of the slotwise evaluation map on the
    embedded copies of M0^x.
    """
    if left.target != m or right.source != m:
        raise ValueError("maps do not frame the given module")
    inner, inner_incls, inner_projs = module_power_with_maps(m0, x)
    if left.source != inner:
        raise ValueError("the mono's source is not the declared power of M0")
    if right.target != module_power(m1, l):
        raise ValueError("the epi's target is not the declared power of M1")
    if not left.is_injective():
        raise ValueError("left map must be injective")
    if not right.is_surjective():
        raise ValueError("right map must be surjective")
    if left.image().spaces != right.kernel().spaces:
        raise ValueError("image of the mono must equal the kernel of the epi")
    mx, mx_incls, _ = module_power_with_maps(m, x)
    big, _, big_projs = module_power_with_maps(inner, x)
    # g: (M0^x)^x -> M0, (u_1, ..., u_x) -> sum_j slot_j(u_j)
    g = None
    for jj in range(x):
        term = inner_projs[jj].compose(big_projs[jj])
        g = term if g is None else g + term
    kh = g.kernel()
    lifted = _map_power(left, x, big, mx)
    k_in_mx = image_submodule(lifted, kh)
    reduced, proj = k_in_mx.quotient_module()
    # mono from M0: embed into slot 1 of the inner power, then slot 1 of M^x
    mu = proj.compose(mx_incls[0]).compose(left).compose(inner_incls[0])
    if not mu.is_injective():
        raise AssertionError("reduced sequence lost injectivity")
    # epi onto M1^(x*l)
    m1xl = module_power(m1, x * l)
    right_power = _map_power(right, x, mx, module_power(right.target, x))
    retyped = ModuleMap(mx, m1xl, right_power.blocks, check=False)
    pi = factor_through_quotient(retyped, k_in_mx)
    if not pi.is_surjective():
        raise AssertionError("reduced sequence lost surjectivity")
    if not pi.compose(mu).flattened().is_zero():
        raise AssertionError("reduced sequence is not a complex")
    if mu.image().spaces != pi.kernel().spaces:
        raise AssertionError("reduced sequence is not exact in the middle")
    base = period_space(m)
    red_space = period_space(reduced)
    return PushoutReduction(
        reduced, mu, pi,
        {"original": base.dim, "reduced": red_space.dim,
         "x": x, "l": l, "middle_dim": reduced.dim},
        base.dim == red_space.dim)


def _map_power(f: ModuleMap, x: int, src_power: FdModule,
               tgt_power: FdModule) -> ModuleMap:
    from .exactlin import block_diagonal
    blocks = []
    for v in f.source.algebra.vertices:
        blocks.append(block_diagonal([f.block(v)] * x))
    return ModuleMap(src_power, tgt_power, blocks, check=False)
