"""Exact linear algebra over Q and over number fields Q[x]/(f).

Every computation in this package routes through this module, and every
scalar is exact: ``fractions.Fraction`` for rational work, and
``NumberFieldElem`` for work in a number field presented as Q[x]/(f) with
f monic, integral and squarefree.  No floats, ever.

Matrices are small and dense (tuples of tuples), which is the right
trade-off at the scale this package targets: ambient dimensions are a few
dozen at most, and canonical forms matter far more than asymptotics.
Subspaces are stored by their reduced row echelon basis, so two equal
subspaces are structurally equal and hash alike.  That canonicality is
what makes the rest of the package deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

QQ = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionMismatch(ValueError):
    """Shapes of operands do not line up."""


class DivisionByZero(ArithmeticError):
    """Division by zero, or by a zero divisor of a reducible Q[x]/(f)."""


class ReduciblePolynomial(ValueError):
    """The defining polynomial is not monic integral squarefree."""


class FieldMismatch(TypeError):
    """Elements of two different number fields were mixed."""


def rat(value) -> Fraction:
    """Coerce ints, Fractions and strings like '3/4' or '-2' to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot coerce {value!r} to a rational number")


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


class Matrix:
    """Immutable dense matrix over any exact field.

    Entries only need the arithmetic dunders, truthiness for "is nonzero"
    and exact division; Fraction and NumberFieldElem both qualify.  Mixed
    Fraction/NumberFieldElem matrices are not supported; lift first.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        # ints are promoted so that later division cannot fall into floats;
        # Fraction and NumberFieldElem entries pass through untouched
        rows = tuple(tuple(Fraction(x) if isinstance(x, int) else x
                           for x in r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged rows")
        self.rows = rows
        self.nrows = len(rows)
        if rows:
            if ncols is not None and ncols != len(rows[0]):
                raise DimensionMismatch("declared ncols contradicts the rows")
            self.ncols = len(rows[0])
        else:
            # a matrix with no rows still has a width; callers that can
            # produce one must say what it is
            self.ncols = 0 if ncols is None else ncols

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, n: int, one=ONE, zero=ZERO) -> "Matrix":
        return cls(tuple(tuple(one if i == j else zero for j in range(n))
                         for i in range(n)), ncols=n)

    @classmethod
    def zero(cls, nrows: int, ncols: int, zero=ZERO) -> "Matrix":
        return cls(tuple(tuple(zero for _ in range(ncols))
                         for _ in range(nrows)), ncols=ncols)

    @classmethod
    def from_columns(cls, cols: Sequence[Iterable], nrows: int | None = None) -> "Matrix":
        cols = tuple(tuple(c) for c in cols)
        if not cols and nrows is None:
            nrows = 0
        return cls(cols, ncols=nrows).transpose()

    # -- basic queries -------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def trace(self):
        if not self.is_square():
            raise DimensionMismatch("trace of a non-square matrix")
        if self.nrows == 0:
            return ZERO
        total = self.rows[0][0]
        for i in range(1, self.nrows):
            total = total + self.rows[i][i]
        return total

    def vec(self) -> tuple:
        """Row-major flattening; the package-wide vectorization convention."""
        return tuple(x for r in self.rows for x in r)

    @classmethod
    def unvec(cls, entries: Sequence, nrows: int, ncols: int) -> "Matrix":
        if len(entries) != nrows * ncols:
            raise DimensionMismatch("entry count does not match shape")
        return cls(tuple(tuple(entries[i * ncols + j] for j in range(ncols))
                         for i in range(nrows)), ncols=ncols)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(tuple(tuple(a + b for a, b in zip(ra, rb))
                            for ra, rb in zip(self.rows, other.rows)),
                      ncols=self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(tuple(tuple(a - b for a, b in zip(ra, rb))
                            for ra, rb in zip(self.rows, other.rows)),
                      ncols=self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix(tuple(tuple(-a for a in r) for r in self.rows),
                      ncols=self.ncols)

    def scale(self, c) -> "Matrix":
        return Matrix(tuple(tuple(c * a for a in r) for r in self.rows),
                      ncols=self.ncols)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return self.scale(other)
        if self.ncols != other.nrows:
            raise DimensionMismatch(
                f"cannot multiply {self.nrows}x{self.ncols} by "
                f"{other.nrows}x{other.ncols}")
        cols = other.transpose().rows
        return Matrix(tuple(
            tuple(_dot(r, c) for c in cols) for r in self.rows),
            ncols=other.ncols)

    def apply(self, vector: Sequence) -> tuple:
        if len(vector) != self.ncols:
            raise DimensionMismatch("vector length does not match columns")
        return tuple(_dot(r, vector) for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(tuple(tuple(self.rows[i][j] for i in range(self.nrows))
                            for j in range(self.ncols)), ncols=self.nrows)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise DimensionMismatch("row counts differ")
        return Matrix(tuple(ra + rb for ra, rb in zip(self.rows, other.rows)),
                      ncols=self.ncols + other.ncols)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise DimensionMismatch("column counts differ")
        return Matrix(self.rows + other.rows, ncols=self.ncols)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        return Matrix(tuple(tuple(self.rows[i][j] for j in col_idx)
                            for i in row_idx), ncols=len(col_idx))

    def _same_shape(self, other: "Matrix"):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise DimensionMismatch("shapes differ")

    # -- equality ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.ncols == other.ncols)

    def __hash__(self) -> int:
        return hash((self.rows, self.ncols))

    def __repr__(self) -> str:
        return f"Matrix({list(map(list, self.rows))!r})"


def _dot(u: Sequence, v: Sequence):
    total = None
    for a, b in zip(u, v):
        term = a * b
        total = term if total is None else total + term
    return ZERO if total is None else total


def block_diagonal(blocks: Sequence[Matrix], zero=ZERO) -> Matrix:
    """Assemble square-or-rectangular blocks along the diagonal."""
    nrows = sum(b.nrows for b in blocks)
    ncols = sum(b.ncols for b in blocks)
    rows = [[zero] * ncols for _ in range(nrows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.nrows):
            for j in range(b.ncols):
                rows[r0 + i][c0 + j] = b.rows[i][j]
        r0 += b.nrows
        c0 += b.ncols
    return Matrix(rows, ncols=ncols)


# ---------------------------------------------------------------------------
# echelon forms, kernels, solving
# ---------------------------------------------------------------------------


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form.

    Returns (R, pivots) where R has the same shape as m, pivot entries are
    one, pivot columns are otherwise zero, and zero rows sit at the bottom.
    Works over any exact field the entries implement.
    """
    rows = [list(r) for r in m.rows]
    pivots = []
    lead = 0
    for col in range(m.ncols):
        pivot_row = None
        for r in range(lead, m.nrows):
            if rows[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[lead], rows[pivot_row] = rows[pivot_row], rows[lead]
        inv = rows[lead][col]
        rows[lead] = [x / inv for x in rows[lead]]
        for r in range(m.nrows):
            if r != lead and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[lead])]
        pivots.append(col)
        lead += 1
        if lead == m.nrows:
            break
    return Matrix(rows, ncols=m.ncols), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix, one=ONE, zero=ZERO) -> tuple[tuple, ...]:
    """Basis of the right kernel {x : m x = 0}, one vector per free column.

    The basis is the standard echelon kernel basis: vector k for free
    column f has entry one at f, minus the reduced entries at the pivot
    coordinates, zero elsewhere.  Deterministic given m.
    """
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivot_set]
    basis = []
    for f in free:
        vec = [zero] * m.ncols
        vec[f] = one
        for r, p in enumerate(pivots):
            vec[p] = -red.rows[r][f]
        basis.append(tuple(vec))
    return tuple(basis)


def solve(a: Matrix, b: Sequence) -> tuple | None:
    """One solution of a x = b, or None if the system is inconsistent.

    When solutions form an affine family, the representative with zero free
    coordinates is returned, so the output is deterministic.
    """
    if len(b) != a.nrows:
        raise DimensionMismatch("right-hand side has wrong length")
    aug = a.hstack(Matrix(tuple((x,) for x in b), ncols=1))
    red, pivots = rref(aug)
    if a.ncols in pivots:
        return None
    x = [ZERO] * a.ncols
    if a.ncols and a.nrows:
        zero = a.rows[0][0] - a.rows[0][0]
        x = [zero] * a.ncols
    for r, p in enumerate(pivots):
        x[p] = red.rows[r][a.ncols]
    return tuple(x)


def invert(m: Matrix) -> Matrix:
    """Inverse of a square matrix; DivisionByZero if singular."""
    if not m.is_square():
        raise DimensionMismatch("inverse of a non-square matrix")
    n = m.nrows
    if n == 0:
        return m
    one = m.rows[0][0] / m.rows[0][0] if m.rows[0][0] else None
    if one is None:
        for r in m.rows:
            for x in r:
                if x:
                    one = x / x
        if one is None:
            raise DivisionByZero("matrix is singular")
    zero = one - one
    aug = m.hstack(Matrix.identity(n, one=one, zero=zero))
    red, pivots = rref(aug)
    if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) < n:
        raise DivisionByZero("matrix is singular")
    return Matrix(tuple(r[n:] for r in red.rows))


# ---------------------------------------------------------------------------
# rational subspaces in canonical form
# ---------------------------------------------------------------------------


class Subspace:
    """A subspace of Q^n held by its reduced row echelon basis.

    Canonical: two Subspace objects are equal iff they are the same
    subspace, and equal subspaces hash alike.  All the constructions the
    package needs (sum, intersection, annihilator, images and preimages
    under linear maps) stay inside this canonical representation.
    """

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: int, vectors: Iterable[Sequence] = ()):
        rows = tuple(tuple(rat(x) for x in v) for v in vectors)
        mat = Matrix(rows, ncols=ambient if not rows else None)
        if mat.ncols != ambient:
            raise DimensionMismatch("vector length does not match ambient")
        red, pivots = rref(mat)
        self.ambient = ambient
        self.basis = Matrix(red.rows[:len(pivots)], ncols=ambient)
        self.pivots = pivots

    @classmethod
    def zero_space(cls, ambient: int) -> "Subspace":
        return cls(ambient)

    @classmethod
    def full_space(cls, ambient: int) -> "Subspace":
        return cls(ambient, Matrix.identity(ambient).rows)

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def basis_vectors(self) -> tuple[tuple, ...]:
        return self.basis.rows

    def contains_vector(self, v: Sequence) -> bool:
        if len(v) != self.ambient:
            raise DimensionMismatch("vector length does not match ambient")
        v = [rat(x) for x in v]
        for r, p in zip(self.basis.rows, self.pivots):
            if v[p]:
                c = v[p]
                v = [a - c * b for a, b in zip(v, r)]
        return not any(v)

    def contains(self, other: "Subspace") -> bool:
        self._same_ambient(other)
        return all(self.contains_vector(v) for v in other.basis.rows)

    def add(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        return Subspace(self.ambient, self.basis.rows + other.basis.rows)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero_space(self.ambient)
        # x in both spans: x = A^T u = B^T v, read off from the kernel of
        # the stacked transposes.
        stacked = self.basis.transpose().hstack(-other.basis.transpose())
        vecs = []
        for k in kernel_basis(stacked):
            u = k[:self.dim]
            vecs.append(self.basis.transpose().apply(u))
        return Subspace(self.ambient, vecs)

    def annihilator(self) -> "Subspace":
        """Functionals vanishing on this subspace, as row vectors."""
        if self.dim == 0:
            return Subspace.full_space(self.ambient)
        return Subspace(self.ambient, kernel_basis(self.basis))

    def image_under(self, t: Matrix) -> "Subspace":
        if t.ncols != self.ambient:
            raise DimensionMismatch("map domain does not match ambient")
        return Subspace(t.nrows, tuple(t.apply(v) for v in self.basis.rows))

    def preimage_under(self, t: Matrix) -> "Subspace":
        if t.nrows != self.ambient:
            raise DimensionMismatch("map codomain does not match ambient")
        ann = self.annihilator()
        if ann.dim == 0:
            return Subspace.full_space(t.ncols)
        return Subspace(t.ncols, kernel_basis(ann.basis * t))

    def _same_ambient(self, other: "Subspace"):
        if self.ambient != other.ambient:
            raise DimensionMismatch("subspaces live in different ambients")

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.basis == other.basis)

    def __hash__(self) -> int:
        return hash((self.ambient, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of Q^{self.ambient})"


def kernel_subspace(m: Matrix) -> Subspace:
    return Subspace(m.ncols, kernel_basis(m))


def row_space(m: Matrix) -> Subspace:
    return Subspace(m.ncols, m.rows)


class QuotientPresentation:
    """Coordinates on Q^n / R for a subspace R, via the free coordinates.

    project sends a vector to the coordinate tuple of its class, section
    sends coordinates to the canonical representative supported on the
    free coordinates.  project after section is the identity, and
    project kills exactly R.
    """

    __slots__ = ("relations", "free", "dim", "projection", "section")

    def __init__(self, relations: Subspace):
        self.relations = relations
        pivot_set = set(relations.pivots)
        self.free = tuple(j for j in range(relations.ambient)
                          if j not in pivot_set)
        self.dim = len(self.free)
        proj_rows = []
        for v in Matrix.identity(relations.ambient).rows:
            proj_rows.append(self._project_raw(v))
        self.projection = Matrix(proj_rows, ncols=self.dim).transpose()
        sec_cols = []
        for k in self.free:
            col = [ZERO] * relations.ambient
            col[k] = ONE
            sec_cols.append(tuple(col))
        self.section = Matrix.from_columns(sec_cols, nrows=relations.ambient)

    def _project_raw(self, v: Sequence) -> tuple:
        v = [rat(x) for x in v]
        for r, p in zip(self.relations.basis.rows, self.relations.pivots):
            if v[p]:
                c = v[p]
                v = [a - c * b for a, b in zip(v, r)]
        return tuple(v[k] for k in self.free)

    def project(self, v: Sequence) -> tuple:
        if len(v) != self.relations.ambient:
            raise DimensionMismatch("vector length does not match ambient")
        return self._project_raw(v)

    def lift(self, coords: Sequence) -> tuple:
        if len(coords) != self.dim:
            raise DimensionMismatch("coordinate length does not match")
        return self.section.apply(coords)


# ---------------------------------------------------------------------------
# polynomials over Q (little-endian coefficient tuples)
# ---------------------------------------------------------------------------


def poly_trim(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def poly_add(p, q):
    n = max(len(p), len(q))
    return poly_trim(tuple((p[i] if i < len(p) else ZERO)
                           + (q[i] if i < len(q) else ZERO)
                           for i in range(n)))


def poly_mul(p, q):
    if not p or not q:
        return ()
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p, q):
    q = poly_trim(q)
    if not q:
        raise DivisionByZero("polynomial division by zero")
    p = list(poly_trim(p))
    quot = [ZERO] * max(0, len(p) - len(q) + 1)
    while len(p) >= len(q):
        c = p[-1] / q[-1]
        d = len(p) - len(q)
        quot[d] = c
        for i, b in enumerate(q):
            p[d + i] -= c * b
        p = list(poly_trim(p))
    return poly_trim(quot), poly_trim(p)


def poly_gcd(p, q):
    """Monic gcd over Q."""
    p, q = poly_trim(p), poly_trim(q)
    while q:
        p, q = q, poly_divmod(p, q)[1]
    if p:
        lead = p[-1]
        p = tuple(c / lead for c in p)
    return p


def poly_derivative(p):
    return poly_trim(tuple(p[i] * i for i in range(1, len(p))))


# ---------------------------------------------------------------------------
# number fields Q[x]/(f)
# ---------------------------------------------------------------------------


class NumberField:
    """Q[x]/(f) for monic integral squarefree f of degree >= 1.

    Squarefree rather than irreducible: irreducibility testing is not
    needed for anything downstream, while squarefreeness (checked via
    gcd(f, f')) guarantees the ring is a product of fields, so every
    nonzero non-zero-divisor is invertible and zero divisors are reported
    as DivisionByZero when inversion actually fails.
    """

    __slots__ = ("coeffs", "degree")

    def __init__(self, coeffs: Sequence[int]):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) < 2:
            raise ReduciblePolynomial("defining polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise ReduciblePolynomial("defining polynomial must be monic")
        f = tuple(Fraction(c) for c in coeffs)
        g = poly_gcd(f, poly_derivative(f))
        if len(g) != 1:
            raise ReduciblePolynomial("defining polynomial is not squarefree")
        self.coeffs = coeffs
        self.degree = len(coeffs) - 1

    def elem(self, coeffs: Sequence) -> "NumberFieldElem":
        coeffs = [rat(c) for c in coeffs]
        if len(coeffs) > self.degree:
            f = tuple(Fraction(c) for c in self.coeffs)
            coeffs = list(poly_divmod(tuple(coeffs), f)[1])
        coeffs += [ZERO] * (self.degree - len(coeffs))
        return NumberFieldElem(self, tuple(coeffs))

    def zero(self) -> "NumberFieldElem":
        return self.elem(())

    def one(self) -> "NumberFieldElem":
        return self.elem((ONE,))

    def gen(self) -> "NumberFieldElem":
        return self.elem((ZERO, ONE))

    def from_rational(self, c) -> "NumberFieldElem":
        return self.elem((rat(c),))

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"NumberField({list(self.coeffs)!r})"


class NumberFieldElem:
    """Element of a NumberField; supports mixed arithmetic with rationals."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: tuple[Fraction, ...]):
        assert len(coeffs) == field.degree
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, NumberFieldElem):
            if other.field != self.field:
                raise FieldMismatch("elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return NumberFieldElem(self.field, tuple(
            a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return NumberFieldElem(self.field, tuple(
            a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return NumberFieldElem(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        f = tuple(Fraction(c) for c in self.field.coeffs)
        prod = poly_divmod(poly_mul(self.coeffs, other.coeffs), f)[1]
        return self.field.elem(prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def inverse(self) -> "NumberFieldElem":
        if not self:
            raise DivisionByZero("inverse of zero")
        f = tuple(Fraction(c) for c in self.field.coeffs)
        # extended euclid: s*a + t*f = g
        a, b = poly_trim(self.coeffs), f
        s0, s1 = (ONE,), ()
        while b:
            q, r = poly_divmod(a, b)
            a, b = b, r
            s0, s1 = s1, poly_add(s0, tuple(-c for c in poly_mul(q, s1)))
        if len(a) != 1:
            raise DivisionByZero("zero divisor in a reducible Q[x]/(f)")
        inv = tuple(c / a[0] for c in s0)
        return self.field.elem(inv)

    def __pow__(self, exp: int):
        if exp < 0:
            return self.inverse() ** (-exp)
        out = self.field.one()
        base = self
        while exp:
            if exp & 1:
                out = out * base
            base = base * base
            exp >>= 1
        return out

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        return (isinstance(other, NumberFieldElem)
                and other.field == self.field
                and other.coeffs == self.coeffs)

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{i}")
        return " + ".join(terms) if terms else "0"


class FieldEmbedding:
    """An embedding of a coefficient field K into a value field L.

    K may be None, meaning Q, in which case the embedding is the canonical
    one and ``image`` is ignored.  Otherwise ``image`` must be an element
    of L on which K's defining polynomial vanishes; that single value
    determines the embedding.
    """

    __slots__ = ("domain", "codomain", "image")

    def __init__(self, domain: NumberField | None,
                 codomain: NumberField,
                 image: NumberFieldElem | None = None):
        if domain is not None:
            if image is None:
                raise ValueError("an embedding of a nontrivial field needs the image of its generator")
            if image.field != codomain:
                raise FieldMismatch("image lives in the wrong field")
            acc = codomain.zero()
            for c in reversed(domain.coeffs):
                acc = acc * image + codomain.from_rational(c)
            if acc:
                raise ValueError("claimed image is not a root of the defining polynomial")
        self.domain = domain
        self.codomain = codomain
        self.image = image

    def apply(self, value) -> NumberFieldElem:
        if isinstance(value, (int, Fraction)):
            return self.codomain.from_rational(value)
        if isinstance(value, NumberFieldElem):
            if self.domain is None or value.field != self.domain:
                raise FieldMismatch("value does not live in the embedding's domain")
            acc = self.codomain.zero()
            for c in reversed(value.coeffs):
                acc = acc * self.image + self.codomain.from_rational(c)
            return acc
        raise TypeError(f"cannot embed {value!r}")


def k_linear_kernel(embedding: FieldEmbedding,
                    values: Sequence[NumberFieldElem]) -> tuple[tuple, ...]:
    """Kernel of (c_1, ..., c_p) -> sum c_i * values[i] with c_i in K.

    Values live in L = embedding.codomain; coefficients range over the
    domain K (Q when the embedding's domain is None).  The sum is taken
    inside L through the embedding.  Returns a canonical K-basis of the
    kernel: tuples of Fractions when K is Q, tuples of K-elements
    otherwise.
    """
    codomain = embedding.codomain
    for v in values:
        if v.field != codomain:
            raise FieldMismatch("value outside the embedding's codomain")
    p = len(values)
    if embedding.domain is None:
        # one Q-row per L-coordinate
        rows = [[values[j].coeffs[i] for j in range(p)]
                for i in range(codomain.degree)]
        return kernel_basis(Matrix(rows))
    dom = embedding.domain
    e = dom.degree
    # unknowns: c_j = sum_t u_{j,t} g^t with g the K-generator; the L-linear
    # condition becomes a Q-system in the u_{j,t}.
    gen_powers = [embedding.apply(dom.gen() ** t) for t in range(e)]
    cols = []
    for j in range(p):
        for t in range(e):
            prod = gen_powers[t] * values[j]
            cols.append(prod.coeffs)
    big = Matrix(cols).transpose()
    raw = kernel_basis(big)
    if not raw:
        return ()
    # reassemble into K-vectors and put into canonical K-echelon form
    k_rows = []
    for vec in raw:
        k_rows.append(tuple(dom.elem(vec[j * e:(j + 1) * e]) for j in range(p)))
    red, pivots = rref(Matrix(k_rows))
    return tuple(red.rows[:len(pivots)])
