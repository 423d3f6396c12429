"""Bound quiver algebras and their finite-dimensional representations.

An algebra is presented by a quiver (vertices, arrows) and an admissible
set of relations: Q-linear combinations of parallel paths of length at
least two.  The algebra object carries an explicit path basis of the
quotient and a full multiplication table, both computed exactly.

Paths are stored as (source_vertex, arrow_names) with arrow names in
traversal order, so the path "first x then y" is (v, ("x", "y")) and is
displayed as "y*x" to match composition order.  Representations store one
rational matrix per arrow; the flattened coordinate space of a module
concatenates the vertex spaces in the algebra's vertex order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exactlin import (
    Matrix,
    QuotientPresentation,
    Subspace,
    ZERO,
    ONE,
    block_diagonal,
    kernel_basis,
    rat,
    rref,
    solve,
)


class NotAdmissible(ValueError):
    """Quiver or relation data violates the admissibility requirements."""


class NotFiniteDimensional(ValueError):
    """The bound quiver algebra could not be certified finite-dimensional."""


class NotAModuleMap(ValueError):
    """Blocks fail to commute with the arrow action."""


class NotASubmodule(ValueError):
    """A subspace is not vertex-homogeneous or not arrow-stable."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


PathKey = tuple  # (source_vertex, tuple_of_arrow_names)


def path_name(key: PathKey) -> str:
    source, arrows = key
    if not arrows:
        return f"e_{source}"
    return "*".join(reversed(arrows))


class BoundQuiverAlgebra:
    """Finite-dimensional quotient of a path algebra by an admissible ideal.

    Built through :func:`build_algebra`; do not construct directly.
    """

    def __init__(self, vertices, arrows, relations, basis, reduction,
                 raw_relations, max_len):
        self.vertices: tuple[str, ...] = vertices
        self.arrows: tuple[Arrow, ...] = arrows
        self.relations = relations          # normalized: tuple of term tuples
        self.basis: tuple[PathKey, ...] = basis
        self.dim = len(basis)
        self.basis_index = {k: i for i, k in enumerate(basis)}
        self.arrow_by_name = {a.name: a for a in arrows}
        self._reduction = reduction         # PathKey -> tuple[(basis_idx, coeff)]
        self._raw_relations = raw_relations
        self._max_len = max_len
        self._mult: dict[tuple[int, int], tuple[Fraction, ...]] = {}
        self._opposite = None
        self.unit = self.coords_from_terms(
            [(ONE, (v, ())) for v in vertices])

    # -- paths ---------------------------------------------------------------

    def path_target(self, key: PathKey) -> str:
        source, arrows = key
        v = source
        for a in arrows:
            arrow = self.arrow_by_name[a]
            if arrow.source != v:
                raise NotAdmissible(f"path {key} is not composable at {a}")
            v = arrow.target
        return v

    def basis_names(self) -> tuple[str, ...]:
        return tuple(path_name(k) for k in self.basis)

    def basis_by_name(self, name: str) -> int:
        for i, k in enumerate(self.basis):
            if path_name(k) == name:
                return i
        raise KeyError(f"no basis path named {name}")

    def vertex_unit_index(self, v: str) -> int:
        return self.basis_index[(v, ())]

    # -- reduction and multiplication ------------------------------------------

    def _reduce_key(self, key: PathKey) -> tuple:
        """Coordinates of a raw path in the quotient basis."""
        hit = self._reduction.get(key)
        if hit is not None:
            return hit
        source, arrows = key
        if len(arrows) <= self._max_len:
            # enumerated but absent: the raw path never existed (not composable)
            raise NotAdmissible(f"path {key} is not a path of the quiver")
        head = (source, arrows[:self._max_len])
        tail = arrows[self._max_len:]
        out: dict[int, Fraction] = {}
        for b_idx, c in self._reduce_key(head):
            b_src, b_arrows = self.basis[b_idx]
            for b2_idx, c2 in self._reduce_key((b_src, b_arrows + tail)):
                out[b2_idx] = out.get(b2_idx, ZERO) + c * c2
        result = tuple((i, c) for i, c in sorted(out.items()) if c)
        self._reduction[key] = result
        return result

    def coords_from_terms(self, terms) -> tuple[Fraction, ...]:
        """Linear combination of raw paths, reduced to basis coordinates."""
        out = [ZERO] * self.dim
        for coeff, key in terms:
            for i, c in self._reduce_key(key):
                out[i] += rat(coeff) * c
        return tuple(out)

    def multiply_basis(self, i: int, j: int) -> tuple[Fraction, ...]:
        """Coordinates of p_i * p_j, with p_j acting first."""
        hit = self._mult.get((i, j))
        if hit is not None:
            return hit
        left, right = self.basis[i], self.basis[j]
        if self.path_target(right) != left[0]:
            out = tuple([ZERO] * self.dim)
        else:
            key = (right[0], right[1] + left[1])
            out = [ZERO] * self.dim
            for b, c in self._reduce_key(key):
                out[b] = c
            out = tuple(out)
        self._mult[(i, j)] = out
        return out

    def multiply(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple:
        out = [ZERO] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, c in enumerate(self.multiply_basis(i, j)):
                    if c:
                        out[k] += a * b * c
        return tuple(out)

    def to_structure_algebra(self) -> "StructureAlgebra":
        table = tuple(tuple(self.multiply_basis(i, j) for j in range(self.dim))
                      for i in range(self.dim))
        return StructureAlgebra(self.dim, self.unit, table)

    # -- opposite algebra -------------------------------------------------------

    def opposite(self) -> "BoundQuiverAlgebra":
        if self._opposite is None:
            arrows = [(a.name, a.target, a.source) for a in self.arrows]
            relations = []
            for rel in self._raw_relations:
                relations.append([(c, tuple(reversed(key[1])))
                                  for c, key in rel])
            self._opposite = build_algebra(
                self.vertices, arrows, relations,
                max_path_length=self._max_len + 4)
        return self._opposite

    def __eq__(self, other) -> bool:
        return (isinstance(other, BoundQuiverAlgebra)
                and self.vertices == other.vertices
                and self.arrows == other.arrows
                and self.relations == other.relations)

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows, self.relations))

    def __repr__(self) -> str:
        return (f"BoundQuiverAlgebra({len(self.vertices)} vertices, "
                f"{len(self.arrows)} arrows, dim {self.dim})")


def build_algebra(vertices: Sequence[str],
                  arrows: Sequence,
                  relations: Sequence = (),
                  max_path_length: int = 24) -> BoundQuiverAlgebra:
    """Construct a bound quiver algebra with an explicit path basis.

    arrows: triples (name, source, target).  relations: each relation is a
    list of (coeff, arrow_names) terms; arrow names are in traversal order
    and all terms of one relation must be parallel paths of length >= 2.

    Path layers are enumerated until they die out, where a layer is dead
    when every path of that length lies in the span of the relation ideal
    modulo shorter paths.  For relations that mix path lengths the
    enumeration keeps going for a window of extra layers before it
    commits, which settles every ideal in this package's scope; if layers
    refuse to die within max_path_length the construction raises
    NotFiniteDimensional rather than guess.
    """
    vertices = tuple(str(v) for v in vertices)
    if len(set(vertices)) != len(vertices):
        raise NotAdmissible("duplicate vertex names")
    arrow_objs = []
    for name, src, tgt in arrows:
        if src not in vertices or tgt not in vertices:
            raise NotAdmissible(f"arrow {name} touches an unknown vertex")
        arrow_objs.append(Arrow(str(name), str(src), str(tgt)))
    arrow_objs = tuple(arrow_objs)
    names = [a.name for a in arrow_objs]
    if len(set(names)) != len(names):
        raise NotAdmissible("duplicate arrow names")
    by_name = {a.name: a for a in arrow_objs}

    def walk(key: PathKey) -> str:
        v = key[0]
        for a in key[1]:
            v = by_name[a].target
        return v

    norm_relations = []
    max_rel_len = 1
    for rel in relations:
        terms = []
        endpoints = None
        for coeff, arrow_seq in rel:
            coeff = rat(coeff)
            arrow_seq = tuple(str(a) for a in arrow_seq)
            if len(arrow_seq) < 2:
                raise NotAdmissible("relation terms must be paths of length >= 2")
            if not coeff:
                continue
            for a in arrow_seq:
                if a not in by_name:
                    raise NotAdmissible(f"unknown arrow {a} in a relation")
            src = by_name[arrow_seq[0]].source
            v = src
            for a in arrow_seq:
                if by_name[a].source != v:
                    raise NotAdmissible(f"relation term {arrow_seq} is not composable")
                v = by_name[a].target
            if endpoints is None:
                endpoints = (src, v)
            elif endpoints != (src, v):
                raise NotAdmissible("relation terms are not parallel")
            terms.append((coeff, (src, arrow_seq)))
            max_rel_len = max(max_rel_len, len(arrow_seq))
        if not terms:
            raise NotAdmissible("relation with no nonzero terms")
        norm_relations.append(tuple(terms))
    norm_relations = tuple(norm_relations)

    window = max(2, max_rel_len)
    layers: list[list[PathKey]] = [[(v, ()) for v in vertices]]
    all_paths: list[PathKey] = list(layers[0])
    dead_streak = 0
    final_len = 0
    path_budget = 200_000

    for length in range(1, max_path_length + 1):
        prev = layers[length - 1]
        layer = []
        for src, seq in prev:
            tip = walk((src, seq))
            for a in arrow_objs:
                if a.source == tip:
                    layer.append((src, seq + (a.name,)))
        layers.append(layer)
        all_paths.extend(layer)
        if len(all_paths) > path_budget:
            raise NotFiniteDimensional(
                "path enumeration exceeded the budget; the algebra was not "
                "certified finite-dimensional")
        final_len = length
        if not layer:
            dead_streak = window
            break
        # ideal elements whose terms all fit within the current length
        col_order = sorted(all_paths, key=lambda k: (-len(k[1]), k[0], k[1]))
        col_index = {k: i for i, k in enumerate(col_order)}
        ideal_rows = []
        for rel in norm_relations:
            src_v = rel[0][1][0]
            tgt_v = walk(rel[0][1])
            pres = [p for p in all_paths if walk(p) == src_v]
            posts = [p for p in all_paths if p[0] == tgt_v]
            for pre in pres:
                for post in posts:
                    row = [ZERO] * len(col_order)
                    ok = True
                    for coeff, (tsrc, tarrows) in rel:
                        key = (pre[0], pre[1] + tarrows + post[1])
                        if len(key[1]) > length:
                            ok = False
                            break
                        row[col_index[key]] += coeff
                    if ok and any(row):
                        ideal_rows.append(tuple(row))
        red, pivots = rref(Matrix(ideal_rows) if ideal_rows
                           else Matrix.zero(0, len(col_order)))
        pivot_paths = {col_order[c] for c in pivots}
        if all(p in pivot_paths for p in layer):
            dead_streak += 1
            if dead_streak >= window:
                break
        else:
            dead_streak = 0
    else:
        raise NotFiniteDimensional(
            f"path layers did not die out within length {max_path_length}")

    # final reduction data over everything enumerated
    col_order = sorted(all_paths, key=lambda k: (-len(k[1]), k[0], k[1]))
    col_index = {k: i for i, k in enumerate(col_order)}
    ideal_rows = []
    for rel in norm_relations:
        src_v = rel[0][1][0]
        tgt_v = walk(rel[0][1])
        pres = [p for p in all_paths if walk(p) == src_v]
        posts = [p for p in all_paths if p[0] == tgt_v]
        for pre in pres:
            for post in posts:
                row = [ZERO] * len(col_order)
                ok = True
                for coeff, (tsrc, tarrows) in rel:
                    key = (pre[0], pre[1] + tarrows + post[1])
                    if len(key[1]) > final_len:
                        ok = False
                        break
                    row[col_index[key]] += coeff
                if ok and any(row):
                    ideal_rows.append(tuple(row))
    red, pivots = rref(Matrix(ideal_rows) if ideal_rows
                       else Matrix.zero(0, len(col_order)))
    pivot_cols = set(pivots)
    basis = tuple(sorted((k for i, k in enumerate(col_order)
                          if i not in pivot_cols),
                         key=lambda k: (len(k[1]), k[0], k[1])))
    basis_index = {k: i for i, k in enumerate(basis)}
    reduction: dict[PathKey, tuple] = {}
    for k in basis:
        reduction[k] = ((basis_index[k], ONE),)
    for r, c in enumerate(pivots):
        terms = []
        for j in range(len(col_order)):
            if j != c and red.rows[r][j]:
                other = col_order[j]
                assert other in basis_index, "pivot reduced to a pivot column"
                terms.append((basis_index[other], -red.rows[r][j]))
        reduction[col_order[c]] = tuple(sorted(terms))

    return BoundQuiverAlgebra(vertices, arrow_objs, norm_relations, basis,
                              reduction, norm_relations, final_len)


# ---------------------------------------------------------------------------
# abstract algebras by structure constants
# ---------------------------------------------------------------------------


class StructureAlgebra:
    """A finite-dimensional unital Q-algebra given by structure constants.

    table[i][j] holds the coordinates of b_i * b_j.  Used for endomorphism
    algebras and for coefficient algebras that are not quiver-presented.
    """

    def __init__(self, dim: int, unit: Sequence, table):
        self.dim = dim
        self.unit = tuple(rat(c) for c in unit)
        self.table = tuple(tuple(tuple(rat(c) for c in cell) for cell in row)
                           for row in table)
        if len(self.unit) != dim or len(self.table) != dim:
            raise ValueError("structure constant data has the wrong shape")

    def multiply(self, x: Sequence, y: Sequence) -> tuple:
        out = [ZERO] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, c in enumerate(self.table[i][j]):
                    if c:
                        out[k] += a * b * c
        return tuple(out)

    def left_mult(self, x: Sequence) -> Matrix:
        cols = []
        for j in range(self.dim):
            basis = [ZERO] * self.dim
            basis[j] = ONE
            cols.append(self.multiply(x, basis))
        return Matrix.from_columns(cols)

    def right_mult(self, x: Sequence) -> Matrix:
        cols = []
        for j in range(self.dim):
            basis = [ZERO] * self.dim
            basis[j] = ONE
            cols.append(self.multiply(basis, x))
        return Matrix.from_columns(cols)

    def trace_form(self) -> Matrix:
        mults = [self.left_mult(tuple(ONE if i == j else ZERO
                                      for j in range(self.dim)))
                 for i in range(self.dim)]
        return Matrix(tuple(tuple((mults[i] * mults[j]).trace()
                                  for j in range(self.dim))
                            for i in range(self.dim)))

    def radical(self) -> Subspace:
        """Radical of the trace form; equals the Jacobson radical over Q."""
        if self.dim == 0:
            return Subspace.zero_space(0)
        return Subspace(self.dim, kernel_basis(self.trace_form()))

    def is_semisimple(self) -> bool:
        return self.radical().dim == 0

    def is_commutative(self) -> bool:
        return all(self.table[i][j] == self.table[j][i]
                   for i in range(self.dim) for j in range(self.dim))

    def check_associative(self) -> bool:
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    ei = tuple(ONE if t == i else ZERO for t in range(self.dim))
                    ej = tuple(ONE if t == j else ZERO for t in range(self.dim))
                    ek = tuple(ONE if t == k else ZERO for t in range(self.dim))
                    if self.multiply(self.multiply(ei, ej), ek) != \
                            self.multiply(ei, self.multiply(ej, ek)):
                        return False
        return True

    def check_unit(self) -> bool:
        for i in range(self.dim):
            ei = tuple(ONE if t == i else ZERO for t in range(self.dim))
            if self.multiply(self.unit, ei) != ei or \
                    self.multiply(ei, self.unit) != ei:
                return False
        return True

    def __repr__(self) -> str:
        return f"StructureAlgebra(dim {self.dim})"


def matrix_algebra_structure(n: int) -> StructureAlgebra:
    """M_n(Q) on the matrix-unit basis, row-major."""
    dim = n * n
    def idx(i, j):
        return i * n + j
    table = [[tuple([ZERO] * dim) for _ in range(dim)] for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    out = [ZERO] * dim
                    if j == k:
                        out[idx(i, l)] = ONE
                    table[idx(i, j)][idx(k, l)] = tuple(out)
    unit = [ZERO] * dim
    for i in range(n):
        unit[idx(i, i)] = ONE
    return StructureAlgebra(dim, unit, table)


def field_extension_structure(coeffs: Sequence[int]) -> StructureAlgebra:
    """Q[x]/(f) as a structure-constant algebra on the power basis."""
    from .exactlin import NumberField
    nf = NumberField(coeffs)
    n = nf.degree
    table = []
    for i in range(n):
        row = []
        xi = nf.gen() ** i
        for j in range(n):
            row.append((xi * (nf.gen() ** j)).coeffs)
        table.append(row)
    unit = [ONE] + [ZERO] * (n - 1)
    return StructureAlgebra(n, unit, table)


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------


class FdModule:
    """A finite-dimensional representation: vertex spaces plus arrow matrices."""

    def __init__(self, algebra: BoundQuiverAlgebra,
                 dims: dict | Sequence[int],
                 maps: dict | None = None):
        self.algebra = algebra
        if isinstance(dims, dict):
            unknown = set(dims) - set(algebra.vertices)
            if unknown:
                raise ValueError(f"unknown vertices in dims: {sorted(unknown)}")
            self.dims = tuple(int(dims.get(v, 0)) for v in algebra.vertices)
        else:
            self.dims = tuple(int(d) for d in dims)
            if len(self.dims) != len(algebra.vertices):
                raise ValueError("dims length does not match vertex count")
        if any(d < 0 for d in self.dims):
            raise ValueError("negative vertex dimension")
        self.dim = sum(self.dims)
        offsets = {}
        run = 0
        for v, d in zip(algebra.vertices, self.dims):
            offsets[v] = run
            run += d
        self.offsets = offsets
        maps = dict(maps or {})
        self.maps: dict[str, Matrix] = {}
        for a in algebra.arrows:
            m = maps.pop(a.name, None)
            if m is None:
                m = Matrix.zero(self.vdim(a.target), self.vdim(a.source))
            elif not isinstance(m, Matrix):
                m = Matrix(tuple(tuple(rat(x) for x in row) for row in m))
            self.maps[a.name] = m
        if maps:
            raise ValueError(f"maps given for unknown arrows: {sorted(maps)}")
        self.validate()
        self._act_cache: dict[int, Matrix] = {}

    # -- structure checks -----------------------------------------------------

    def validate(self):
        """Check arrow matrix shapes and that every relation acts by zero."""
        for a in self.algebra.arrows:
            m = self.maps[a.name]
            want = (self.vdim(a.target), self.vdim(a.source))
            if (m.nrows, m.ncols) != want:
                raise ValueError(
                    f"map for arrow {a.name} has shape {(m.nrows, m.ncols)}, "
                    f"expected {want}")
        for rel in self.algebra.relations:
            acc = None
            for coeff, (src, arrows) in rel:
                term = Matrix.identity(self.vdim(src))
                for a in arrows:
                    term = self.maps[a] * term
                term = term.scale(coeff)
                acc = term if acc is None else acc + term
            if acc is not None and not acc.is_zero():
                raise ValueError("a relation does not act by zero")

    # -- vertex bookkeeping -----------------------------------------------------

    def vdim(self, v: str) -> int:
        return self.dims[self.algebra.vertices.index(v)]

    def vertex_range(self, v: str) -> range:
        off = self.offsets[v]
        return range(off, off + self.vdim(v))

    def slice_of(self, flat: Sequence, v: str) -> tuple:
        r = self.vertex_range(v)
        return tuple(flat[i] for i in r)

    def embed_vertex_vector(self, v: str, vec: Sequence) -> tuple:
        out = [ZERO] * self.dim
        for i, x in zip(self.vertex_range(v), vec):
            out[i] = rat(x)
        return tuple(out)

    # -- algebra action -----------------------------------------------------------

    def act_basis(self, i: int) -> Matrix:
        """The i-th basis path as a dim x dim matrix on the flattened space."""
        hit = self._act_cache.get(i)
        if hit is not None:
            return hit
        src, arrows = self.algebra.basis[i]
        tgt = self.algebra.path_target((src, arrows))
        block = Matrix.identity(self.vdim(src))
        for a in arrows:
            block = self.maps[a] * block
        rows = [[ZERO] * self.dim for _ in range(self.dim)]
        for bi, gi in enumerate(self.vertex_range(tgt)):
            for bj, gj in enumerate(self.vertex_range(src)):
                rows[gi][gj] = block.rows[bi][bj]
        out = Matrix(rows)
        self._act_cache[i] = out
        return out

    def act_element(self, coords: Sequence) -> Matrix:
        out = Matrix.zero(self.dim, self.dim)
        for i, c in enumerate(coords):
            if c:
                out = out + self.act_basis(i).scale(rat(c))
        return out

    def action_matrices(self) -> tuple[Matrix, ...]:
        return tuple(self.act_basis(i) for i in range(self.algebra.dim))

    # -- predicates ------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_semisimple_rep(self) -> bool:
        # for admissible relations the radical acts through the arrows
        return all(m.is_zero() for m in self.maps.values())

    def __eq__(self, other) -> bool:
        return (isinstance(other, FdModule)
                and self.algebra == other.algebra
                and self.dims == other.dims
                and self.maps == other.maps)

    def __repr__(self) -> str:
        d = {v: n for v, n in zip(self.algebra.vertices, self.dims) if n}
        return f"FdModule({d!r})"


def simple_module(algebra: BoundQuiverAlgebra, vertex: str) -> FdModule:
    return FdModule(algebra, {vertex: 1}, {})


def semisimple_module(algebra: BoundQuiverAlgebra, counts: dict) -> FdModule:
    return FdModule(algebra, dict(counts), {})


def projective_module(algebra: BoundQuiverAlgebra, vertex: str) -> FdModule:
    """The projective cover of the simple at a vertex, on the path basis.

    Basis of the vertex space at w: paths from `vertex` to w that are in
    the algebra's basis.  An arrow acts by appending itself.
    """
    paths = [k for k in algebra.basis if k[0] == vertex]
    by_vertex: dict[str, list[PathKey]] = {v: [] for v in algebra.vertices}
    for k in paths:
        by_vertex[algebra.path_target(k)].append(k)
    for v in by_vertex:
        by_vertex[v].sort(key=lambda k: (len(k[1]), k[1]))
    dims = {v: len(by_vertex[v]) for v in algebra.vertices}
    maps = {}
    for a in algebra.arrows:
        src_paths = by_vertex[a.source]
        tgt_paths = by_vertex[a.target]
        tgt_index = {k: i for i, k in enumerate(tgt_paths)}
        rows = [[ZERO] * len(src_paths) for _ in range(len(tgt_paths))]
        for j, (psrc, parrows) in enumerate(src_paths):
            extended = (psrc, parrows + (a.name,))
            for b_idx, c in algebra._reduce_key(extended):
                bkey = algebra.basis[b_idx]
                if bkey[0] != vertex:
                    continue
                rows[tgt_index[bkey]][j] = c
        maps[a.name] = Matrix(rows, ncols=len(src_paths))
    return FdModule(algebra, dims, maps)


def direct_sum_with_maps(modules: Sequence[FdModule]):
    """Direct sum together with the canonical inclusions and projections."""
    if not modules:
        raise ValueError("empty direct sum is ambiguous; pass a zero module")
    algebra = modules[0].algebra
    for m in modules:
        if m.algebra != algebra:
            raise ValueError("direct sum of modules over different algebras")
    dims = {v: sum(m.vdim(v) for m in modules) for v in algebra.vertices}
    maps = {}
    for a in algebra.arrows:
        maps[a.name] = block_diagonal([m.maps[a.name] for m in modules])
    total = FdModule(algebra, dims, maps)
    inclusions, projections = [], []
    for idx, m in enumerate(modules):
        inc_blocks, proj_blocks = [], []
        for v in algebra.vertices:
            before = sum(mm.vdim(v) for mm in modules[:idx])
            rows = []
            for i in range(dims[v]):
                row = [ZERO] * m.vdim(v)
                if before <= i < before + m.vdim(v):
                    row[i - before] = ONE
                rows.append(tuple(row))
            inc = Matrix(rows, ncols=m.vdim(v))
            inc_blocks.append(inc)
            proj_blocks.append(inc.transpose())
        inclusions.append(ModuleMap(m, total, inc_blocks))
        projections.append(ModuleMap(total, m, proj_blocks))
    return total, tuple(inclusions), tuple(projections)


def direct_sum(modules: Sequence[FdModule]) -> FdModule:
    return direct_sum_with_maps(modules)[0]


def module_power(m: FdModule, n: int) -> FdModule:
    if n == 0:
        return FdModule(m.algebra, {v: 0 for v in m.algebra.vertices}, {})
    return direct_sum([m] * n)


def module_power_with_maps(m: FdModule, n: int):
    if n == 0:
        zero = FdModule(m.algebra, {v: 0 for v in m.algebra.vertices}, {})
        return zero, (), ()
    return direct_sum_with_maps([m] * n)


def tuple_embed(m: FdModule, n: int, vectors: Sequence[Sequence]) -> tuple:
    """Flatten an n-tuple of vectors of M into the coordinates of M^n."""
    if len(vectors) != n:
        raise ValueError("tuple length does not match the power")
    out = []
    for v in m.algebra.vertices:
        for k in range(n):
            out.extend(m.slice_of(vectors[k], v))
    return tuple(rat(x) for x in out)


def tuple_split(m: FdModule, n: int, flat: Sequence) -> tuple[tuple, ...]:
    """Inverse of tuple_embed."""
    comps = [[ZERO] * m.dim for _ in range(n)]
    pos = 0
    for v in m.algebra.vertices:
        d = m.vdim(v)
        for k in range(n):
            for i, gi in enumerate(m.vertex_range(v)):
                comps[k][gi] = rat(flat[pos + i])
            pos += d
    return tuple(tuple(c) for c in comps)


# ---------------------------------------------------------------------------
# module maps
# ---------------------------------------------------------------------------


class ModuleMap:
    """A homomorphism of representations, stored blockwise per vertex."""

    def __init__(self, source: FdModule, target: FdModule,
                 blocks: Sequence[Matrix], check: bool = True):
        if source.algebra != target.algebra:
            raise NotAModuleMap("source and target live over different algebras")
        self.source = source
        self.target = target
        self.blocks = tuple(
            b if isinstance(b, Matrix)
            else Matrix(tuple(tuple(rat(x) for x in row) for row in b))
            for b in blocks)
        if len(self.blocks) != len(source.algebra.vertices):
            raise NotAModuleMap("one block per vertex is required")
        for v, b in zip(source.algebra.vertices, self.blocks):
            if (b.nrows, b.ncols) != (target.vdim(v), source.vdim(v)):
                raise NotAModuleMap(f"block at vertex {v} has the wrong shape")
        if check:
            for a in source.algebra.arrows:
                sblk = self.block(a.source)
                tblk = self.block(a.target)
                if target.maps[a.name] * sblk != tblk * source.maps[a.name]:
                    raise NotAModuleMap(
                        f"blocks do not commute with arrow {a.name}")

    @classmethod
    def zero(cls, source: FdModule, target: FdModule) -> "ModuleMap":
        return cls(source, target,
                   [Matrix.zero(target.vdim(v), source.vdim(v))
                    for v in source.algebra.vertices], check=False)

    @classmethod
    def identity(cls, m: FdModule) -> "ModuleMap":
        return cls(m, m, [Matrix.identity(d) for d in m.dims], check=False)

    def block(self, v: str) -> Matrix:
        return self.blocks[self.source.algebra.vertices.index(v)]

    def flattened(self) -> Matrix:
        return block_diagonal(self.blocks)

    def apply(self, flat: Sequence) -> tuple:
        return self.flattened().apply(flat)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other."""
        if other.target is not self.source and other.target != self.source:
            raise NotAModuleMap("composition of non-matching maps")
        return ModuleMap(other.source, self.target,
                         [a * b for a, b in zip(self.blocks, other.blocks)],
                         check=False)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         [a + b for a, b in zip(self.blocks, other.blocks)],
                         check=False)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         [a - b for a, b in zip(self.blocks, other.blocks)],
                         check=False)

    def scale(self, c) -> "ModuleMap":
        c = rat(c)
        return ModuleMap(self.source, self.target,
                         [b.scale(c) for b in self.blocks], check=False)

    def kernel(self) -> "SubmoduleHandle":
        spaces = [Subspace(b.ncols, kernel_basis(b)) for b in self.blocks]
        return SubmoduleHandle(self.source, spaces)

    def image(self) -> "SubmoduleHandle":
        spaces = [Subspace(b.nrows, tuple(b.transpose().rows))
                  for b in self.blocks]
        return SubmoduleHandle(self.target, spaces)

    def is_injective(self) -> bool:
        return all(s.dim == 0 for s in self.kernel().spaces)

    def is_surjective(self) -> bool:
        return all(s.dim == b.nrows
                   for s, b in zip(self.image().spaces, self.blocks))

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective() \
            and self.source.dims == self.target.dims

    def __eq__(self, other) -> bool:
        return (isinstance(other, ModuleMap) and self.source == other.source
                and self.target == other.target and self.blocks == other.blocks)

    def __repr__(self) -> str:
        return f"ModuleMap({self.source!r} -> {self.target!r})"


def hom_space(m: FdModule, n: FdModule) -> tuple[ModuleMap, ...]:
    """A canonical basis of Hom(M, N), via the commutation linear system."""
    if m.algebra != n.algebra:
        raise NotAModuleMap("modules live over different algebras")
    algebra = m.algebra
    sizes = [(n.vdim(v), m.vdim(v)) for v in algebra.vertices]
    offs = []
    run = 0
    for r, c in sizes:
        offs.append(run)
        run += r * c
    total = run
    if total == 0:
        return ()

    def var(vi, i, j):
        return offs[vi] + i * sizes[vi][1] + j

    rows = []
    for a in algebra.arrows:
        si = algebra.vertices.index(a.source)
        ti = algebra.vertices.index(a.target)
        na = n.maps[a.name]
        ma = m.maps[a.name]
        for i in range(n.vdim(a.target)):
            for j in range(m.vdim(a.source)):
                row = [ZERO] * total
                for k in range(n.vdim(a.source)):
                    row[var(si, k, j)] += na.rows[i][k]
                for l in range(m.vdim(a.target)):
                    row[var(ti, i, l)] -= ma.rows[l][j]
                if any(row):
                    rows.append(tuple(row))
    if rows:
        basis = kernel_basis(Matrix(rows))
    else:
        basis = Matrix.identity(total).rows
    out = []
    for vec in basis:
        blocks = []
        for vi, (r, c) in enumerate(sizes):
            blocks.append(Matrix.unvec(
                vec[offs[vi]:offs[vi] + r * c], r, c))
        out.append(ModuleMap(m, n, blocks))
    return tuple(out)


def end_algebra(m: FdModule) -> tuple[StructureAlgebra, tuple[ModuleMap, ...]]:
    """End(M) as a structure-constant algebra on the canonical hom basis."""
    basis = hom_space(m, m)
    k = len(basis)
    if k == 0:
        return StructureAlgebra(0, (), ()), ()
    stacked = Matrix.from_columns([b.flattened().vec() for b in basis])
    def coords(f: ModuleMap) -> tuple:
        sol = solve(stacked, f.flattened().vec())
        assert sol is not None, "endomorphism outside its own basis"
        return sol
    table = tuple(tuple(coords(basis[i].compose(basis[j])) for j in range(k))
                  for i in range(k))
    unit = coords(ModuleMap.identity(m))
    return StructureAlgebra(k, unit, table), basis


# ---------------------------------------------------------------------------
# submodules
# ---------------------------------------------------------------------------


class SubmoduleHandle:
    """A submodule of an FdModule, held by per-vertex canonical subspaces."""

    def __init__(self, ambient: FdModule, spaces: Sequence[Subspace],
                 check: bool = True):
        self.ambient = ambient
        self.spaces = tuple(spaces)
        if len(self.spaces) != len(ambient.algebra.vertices):
            raise NotASubmodule("one subspace per vertex is required")
        for v, s in zip(ambient.algebra.vertices, self.spaces):
            if s.ambient != ambient.vdim(v):
                raise NotASubmodule(f"subspace at vertex {v} has the wrong ambient")
        if check:
            for a in ambient.algebra.arrows:
                src = self.space(a.source)
                tgt = self.space(a.target)
                if not tgt.contains(src.image_under(ambient.maps[a.name])):
                    raise NotASubmodule(
                        f"subspace is not stable under arrow {a.name}")
        self._sub = None
        self._quot = None

    # -- constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, ambient: FdModule) -> "SubmoduleHandle":
        return cls(ambient, [Subspace.zero_space(d) for d in ambient.dims],
                   check=False)

    @classmethod
    def full(cls, ambient: FdModule) -> "SubmoduleHandle":
        return cls(ambient, [Subspace.full_space(d) for d in ambient.dims],
                   check=False)

    @classmethod
    def from_flat_vectors(cls, ambient: FdModule,
                          vectors: Sequence[Sequence]) -> "SubmoduleHandle":
        """Strict constructor: the span must already be a submodule."""
        flat = Subspace(ambient.dim, vectors)
        pieces = []
        covered = 0
        for v in ambient.algebra.vertices:
            coord = Subspace(ambient.dim, [
                ambient.embed_vertex_vector(v, row)
                for row in Matrix.identity(ambient.vdim(v)).rows])
            piece = flat.intersect(coord)
            covered += piece.dim
            pieces.append(Subspace(ambient.vdim(v), [
                ambient.slice_of(b, v) for b in piece.basis_vectors()]))
        if covered != flat.dim:
            raise NotASubmodule("span is not a direct sum of vertex pieces")
        return cls(ambient, pieces)

    @classmethod
    def spin(cls, ambient: FdModule,
             vectors: Sequence[Sequence]) -> "SubmoduleHandle":
        """Smallest submodule containing the given flattened vectors."""
        spaces = []
        for v in ambient.algebra.vertices:
            spaces.append(Subspace(
                ambient.vdim(v),
                [ambient.slice_of(w, v) for w in vectors]))
        changed = True
        while changed:
            changed = False
            for a in ambient.algebra.arrows:
                si = ambient.algebra.vertices.index(a.source)
                ti = ambient.algebra.vertices.index(a.target)
                pushed = spaces[si].image_under(ambient.maps[a.name])
                grown = spaces[ti].add(pushed)
                if grown.dim != spaces[ti].dim:
                    spaces[ti] = grown
                    changed = True
        return cls(ambient, spaces, check=False)

    # -- queries ------------------------------------------------------------------

    def space(self, v: str) -> Subspace:
        return self.spaces[self.ambient.algebra.vertices.index(v)]

    @property
    def dim(self) -> int:
        return sum(s.dim for s in self.spaces)

    def flat(self) -> Subspace:
        vecs = []
        for v, s in zip(self.ambient.algebra.vertices, self.spaces):
            for b in s.basis_vectors():
                vecs.append(self.ambient.embed_vertex_vector(v, b))
        return Subspace(self.ambient.dim, vecs)

    def contains(self, other: "SubmoduleHandle") -> bool:
        return all(a.contains(b) for a, b in zip(self.spaces, other.spaces))

    def contains_vector(self, flat: Sequence) -> bool:
        return all(
            s.contains_vector(self.ambient.slice_of(flat, v))
            for v, s in zip(self.ambient.algebra.vertices, self.spaces))

    def add(self, other: "SubmoduleHandle") -> "SubmoduleHandle":
        return SubmoduleHandle(
            self.ambient,
            [a.add(b) for a, b in zip(self.spaces, other.spaces)],
            check=False)

    def intersect(self, other: "SubmoduleHandle") -> "SubmoduleHandle":
        return SubmoduleHandle(
            self.ambient,
            [a.intersect(b) for a, b in zip(self.spaces, other.spaces)],
            check=False)

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient.dim

    def __eq__(self, other) -> bool:
        return (isinstance(other, SubmoduleHandle)
                and self.ambient == other.ambient
                and self.spaces == other.spaces)

    def __hash__(self) -> int:
        return hash(self.spaces)

    def __repr__(self) -> str:
        return f"SubmoduleHandle(dim {self.dim} of {self.ambient!r})"

    # -- derived modules --------------------------------------------------------

    def sub_module(self) -> tuple[FdModule, ModuleMap]:
        """The submodule as a module of its own, with the inclusion."""
        if self._sub is not None:
            return self._sub
        algebra = self.ambient.algebra
        dims = {v: s.dim for v, s in zip(algebra.vertices, self.spaces)}
        maps = {}
        for a in algebra.arrows:
            src = self.space(a.source)
            tgt = self.space(a.target)
            cols = []
            for b in src.basis_vectors():
                img = self.ambient.maps[a.name].apply(b)
                sol = solve(tgt.basis.transpose(), img)
                assert sol is not None, "stability was already checked"
                cols.append(sol)
            maps[a.name] = (Matrix.from_columns(cols) if cols
                            else Matrix.zero(tgt.dim, 0))
        sub = FdModule(algebra, dims, maps)
        incl = ModuleMap(sub, self.ambient,
                         [s.basis.transpose() for s in self.spaces],
                         check=False)
        self._sub = (sub, incl)
        return self._sub

    def quotient_module(self) -> tuple[FdModule, ModuleMap]:
        """The quotient by this submodule, with the projection."""
        if self._quot is not None:
            return self._quot
        algebra = self.ambient.algebra
        pres = [QuotientPresentation(s) for s in self.spaces]
        dims = {v: p.dim for v, p in zip(algebra.vertices, pres)}
        maps = {}
        for a in algebra.arrows:
            si = algebra.vertices.index(a.source)
            ti = algebra.vertices.index(a.target)
            maps[a.name] = pres[ti].projection * self.ambient.maps[a.name] \
                * pres[si].section
        quot = FdModule(algebra, dims, maps)
        proj = ModuleMap(self.ambient, quot,
                         [p.projection for p in pres], check=False)
        self._quot = (quot, proj)
        return self._quot


def preimage_submodule(f: ModuleMap, handle: SubmoduleHandle) -> SubmoduleHandle:
    """f^{-1}(H) for H a submodule of f's target."""
    if handle.ambient != f.target:
        raise NotASubmodule("handle does not live in the map's target")
    spaces = [s.preimage_under(b) for s, b in zip(handle.spaces, f.blocks)]
    return SubmoduleHandle(f.source, spaces, check=False)


def image_submodule(f: ModuleMap, handle: SubmoduleHandle) -> SubmoduleHandle:
    """f(H) for H a submodule of f's source."""
    if handle.ambient != f.source:
        raise NotASubmodule("handle does not live in the map's source")
    spaces = [s.image_under(b) for s, b in zip(handle.spaces, f.blocks)]
    return SubmoduleHandle(f.target, spaces, check=False)


def factor_through_sub(f: ModuleMap, handle: SubmoduleHandle) -> ModuleMap:
    """Rewrite f: X -> ambient, with image inside the handle, as X -> sub."""
    sub, incl = handle.sub_module()
    blocks = []
    for v, b, s in zip(f.source.algebra.vertices, f.blocks, handle.spaces):
        cols = []
        for j in range(b.ncols):
            sol = solve(s.basis.transpose(), b.column(j))
            if sol is None:
                raise NotAModuleMap("image is not inside the submodule")
            cols.append(sol)
        blocks.append(Matrix.from_columns(cols) if cols
                      else Matrix.zero(s.dim, 0))
    return ModuleMap(f.source, sub, blocks, check=False)


def factor_through_quotient(f: ModuleMap, handle: SubmoduleHandle) -> ModuleMap:
    """Descend f: ambient -> Y along the projection, when f kills the handle."""
    quot, proj = handle.quotient_module()
    for v, b, s in zip(f.source.algebra.vertices, f.blocks, handle.spaces):
        for vec in s.basis_vectors():
            if any(b.apply(vec)):
                raise NotAModuleMap("map does not kill the submodule")
    pres = [QuotientPresentation(s) for s in handle.spaces]
    blocks = [b * p.section for b, p in zip(f.blocks, pres)]
    return ModuleMap(quot, f.target, blocks, check=False)


# ---------------------------------------------------------------------------
# trace and support constructions
# ---------------------------------------------------------------------------


@dataclass
class TraceQuotient:
    generated: SubmoduleHandle
    quotient: FdModule
    projection: ModuleMap


def trace_quotient(m: FdModule, vertices: Iterable[str]) -> TraceQuotient:
    """Largest quotient of M with no composition factor at the given vertices.

    The generated submodule is the one spun up by every vertex-space vector
    at the listed vertices; the quotient is M modulo that trace.
    """
    vertices = set(vertices)
    unknown = vertices - set(m.algebra.vertices)
    if unknown:
        raise ValueError(f"unknown vertices: {sorted(unknown)}")
    gens = []
    for v in sorted(vertices):
        for row in Matrix.identity(m.vdim(v)).rows:
            gens.append(m.embed_vertex_vector(v, row))
    generated = SubmoduleHandle.spin(m, gens)
    quot, proj = generated.quotient_module()
    return TraceQuotient(generated, quot, proj)


def largest_supported_submodule(m: FdModule,
                                vertices: Iterable[str]) -> SubmoduleHandle:
    """Largest submodule of M supported only at the given vertices."""
    vertices = set(vertices)
    spaces = [Subspace.full_space(d) if v in vertices
              else Subspace.zero_space(d)
              for v, d in zip(m.algebra.vertices, m.dims)]
    changed = True
    while changed:
        changed = False
        for a in m.algebra.arrows:
            si = m.algebra.vertices.index(a.source)
            ti = m.algebra.vertices.index(a.target)
            shrunk = spaces[si].intersect(
                spaces[ti].preimage_under(m.maps[a.name]))
            if shrunk.dim != spaces[si].dim:
                spaces[si] = shrunk
                changed = True
    return SubmoduleHandle(m, spaces, check=False)


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------


def dual_module(m: FdModule) -> FdModule:
    """The linear dual as a module over the opposite algebra."""
    opp = m.algebra.opposite()
    maps = {a.name: m.maps[a.name].transpose() for a in m.algebra.arrows}
    return FdModule(opp, dict(zip(m.algebra.vertices, m.dims)), maps)


def dual_submodule(m: FdModule, dm: FdModule,
                   handle: SubmoduleHandle) -> SubmoduleHandle:
    """The annihilator of a submodule, as a submodule of the dual."""
    if handle.ambient != m:
        raise NotASubmodule("handle does not live in the given module")
    spaces = [s.annihilator() for s in handle.spaces]
    return SubmoduleHandle(dm, spaces, check=False)


# ---------------------------------------------------------------------------
# isomorphism testing
# ---------------------------------------------------------------------------


def module_iso(m: FdModule, n: FdModule, tries: int = 64) -> ModuleMap | None:
    """An isomorphism M -> N, or None if the bounded search finds none.

    Sound but not complete: a None may only be trusted after the cheap
    necessary conditions (vertex dimensions, hom dimensions) have already
    separated the modules, which the callers arrange.
    """
    if m.algebra != n.algebra or m.dims != n.dims:
        return None
    if m.is_semisimple_rep() and n.is_semisimple_rep():
        return ModuleMap(m, n, [Matrix.identity(d) for d in m.dims])
    homs = hom_space(m, n)
    if not homs:
        return None

    def invertible(f: ModuleMap) -> bool:
        return all(len(rref(b)[1]) == b.nrows for b in f.blocks)

    for f in homs:
        if invertible(f):
            return f
    acc = homs[0]
    for f in homs[1:]:
        acc = acc + f
    if invertible(acc):
        return acc
    for t in range(2, 2 + len(homs)):
        acc = homs[0]
        scale = Fraction(1)
        for f in homs[1:]:
            scale *= t
            acc = acc + f.scale(scale)
        if invertible(acc):
            return acc
    rng = random.Random(20240)
    for _ in range(tries):
        acc = None
        for f in homs:
            c = Fraction(rng.randint(-5, 5))
            term = f.scale(c)
            acc = term if acc is None else acc + term
        if acc is not None and invertible(acc):
            return acc
    return None
