"""JSON import and export for every object the command line touches.

The file formats are small and explicit.  Rationals travel as strings
"p/q" or "p" (never floats), number-field elements as coefficient
arrays with the constant term first, matrices as row lists.  Loaders
raise ParseError for files that are not JSON at all, with file and
line, and ValidationError naming the invariant a structurally intact
file violates.  Dumpers sort keys and emit canonical rational strings
so that repeated runs are byte identical.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .exactlin import Matrix, NumberField, NumberFieldElem
from .quivalg import (
    BoundQuiverAlgebra,
    FdModule,
    StructureAlgebra,
    build_algebra,
)
from .periods import ComparisonPoint
from .yoga import WeightPartition
from .onemotive import BModule, SaturatedInput, b_module, saturated_input


class ParseError(ValueError):
    """A file is not JSON.  Carries the path and the offending line."""

    def __init__(self, path, line, message):
        self.path = str(path)
        self.line = line
        where = self.path if line is None else f"{self.path}:{line}"
        super().__init__(f"{where}: {message}")


class ValidationError(ValueError):
    """A structurally intact file violates a named invariant."""


def load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(path, None, exc.strerror or str(exc)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(path, exc.lineno, exc.msg) from exc


def dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# scalars, vectors, matrices


def parse_rational(value, what: str = "value") -> Fraction:
    if isinstance(value, bool):
        raise ValidationError(f"{what} must be a rational string, not a bool")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(
                f"{what} is not a rational: {value!r}") from exc
    raise ValidationError(
        f"{what} must be a rational encoded as a string like '3/4', "
        f"got {type(value).__name__}")


def rational_str(value) -> str:
    return str(Fraction(value))


def _expect(data, kind, what: str):
    if not isinstance(data, kind):
        raise ValidationError(
            f"{what} must be a JSON {kind.__name__}, "
            f"got {type(data).__name__}")
    return data


def _field(data: dict, key: str, what: str):
    if key not in data:
        raise ValidationError(f"{what} is missing the {key!r} key")
    return data[key]


def matrix_from_data(rows, nrows: int, ncols: int, what: str) -> Matrix:
    _expect(rows, list, what)
    if len(rows) != nrows:
        raise ValidationError(
            f"{what} must have {nrows} rows, got {len(rows)}")
    parsed = []
    for i, row in enumerate(rows):
        _expect(row, list, f"{what} row {i}")
        if len(row) != ncols:
            raise ValidationError(
                f"{what} row {i} must have {ncols} entries, got {len(row)}")
        parsed.append([parse_rational(x, f"{what}[{i}][{j}]")
                       for j, x in enumerate(row)])
    return Matrix(parsed, ncols=ncols)


def matrix_to_data(mat: Matrix) -> list:
    return [[rational_str(x) for x in row] for row in mat.rows]


def vector_from_data(entries, length: int, what: str) -> tuple:
    _expect(entries, list, what)
    if len(entries) != length:
        raise ValidationError(
            f"{what} must have {length} entries, got {len(entries)}")
    return tuple(parse_rational(x, f"{what}[{i}]")
                 for i, x in enumerate(entries))


def vector_to_data(vec) -> list:
    return [rational_str(x) for x in vec]


# ---------------------------------------------------------------------------
# bound quiver algebras


def algebra_from_data(data) -> BoundQuiverAlgebra:
    _expect(data, dict, "algebra")
    vertices = _expect(_field(data, "vertices", "algebra"), list, "vertices")
    arrows = []
    for i, arrow in enumerate(_expect(
            _field(data, "arrows", "algebra"), list, "arrows")):
        _expect(arrow, dict, f"arrow {i}")
        arrows.append((str(_field(arrow, "name", f"arrow {i}")),
                       str(_field(arrow, "from", f"arrow {i}")),
                       str(_field(arrow, "to", f"arrow {i}"))))
    relations = []
    for i, rel in enumerate(_expect(data.get("relations", []),
                                    list, "relations")):
        _expect(rel, list, f"relation {i}")
        terms = []
        for j, term in enumerate(rel):
            _expect(term, dict, f"relation {i} term {j}")
            path = _expect(_field(term, "path", f"relation {i} term {j}"),
                           list, "path")
            coeff = parse_rational(term.get("coeff", 1),
                                   f"relation {i} term {j} coeff")
            terms.append((coeff, tuple(str(a) for a in path)))
        relations.append(terms)
    try:
        return build_algebra(vertices, arrows, relations)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def algebra_to_data(alg: BoundQuiverAlgebra) -> dict:
    return {
        "vertices": list(alg.vertices),
        "arrows": [{"name": a.name, "from": a.source, "to": a.target}
                   for a in alg.arrows],
        "relations": [
            [{"path": list(key[1]), "coeff": rational_str(coeff)}
             for coeff, key in rel]
            for rel in alg.relations],
    }


def load_algebra(path) -> BoundQuiverAlgebra:
    return algebra_from_data(load_json(path))


# ---------------------------------------------------------------------------
# modules


def module_from_data(data, base_dir=None) -> FdModule:
    """Build a module from parsed JSON.

    The "algebra" key holds either an inline algebra object or a path,
    resolved relative to base_dir (the directory of the module file).
    Arrows absent from "maps" act by zero.
    """
    _expect(data, dict, "module")
    alg_ref = _field(data, "algebra", "module")
    if isinstance(alg_ref, str):
        ref = Path(alg_ref)
        if base_dir is not None and not ref.is_absolute():
            ref = Path(base_dir) / ref
        algebra = algebra_from_data(load_json(ref))
    else:
        algebra = algebra_from_data(alg_ref)

    dims_data = _expect(_field(data, "dims", "module"), dict, "dims")
    dims = {}
    for vertex, d in dims_data.items():
        if vertex not in algebra.vertices:
            raise ValidationError(f"dims names an unknown vertex {vertex!r}")
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise ValidationError(
                f"dims[{vertex!r}] must be a nonnegative integer")
        dims[vertex] = d

    maps = {}
    maps_data = _expect(data.get("maps", {}), dict, "maps")
    for name, rows in maps_data.items():
        if name not in algebra.arrow_by_name:
            raise ValidationError(f"maps names an unknown arrow {name!r}")
        arrow = algebra.arrow_by_name[name]
        maps[name] = matrix_from_data(
            rows,
            dims.get(arrow.target, 0),
            dims.get(arrow.source, 0),
            f"map for arrow {name!r}")
    try:
        return FdModule(algebra, dims, maps)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def module_to_data(m: FdModule, algebra_ref=None) -> dict:
    """Serialize a module; algebra_ref is a path string or None for inline."""
    maps = {}
    for arrow in m.algebra.arrows:
        nrows = m.dims[m.algebra.vertices.index(arrow.target)]
        ncols = m.dims[m.algebra.vertices.index(arrow.source)]
        if nrows and ncols:
            maps[arrow.name] = matrix_to_data(m.maps[arrow.name])
    return {
        "algebra": algebra_ref if algebra_ref is not None
        else algebra_to_data(m.algebra),
        "dims": {v: d for v, d in zip(m.algebra.vertices, m.dims) if d},
        "maps": maps,
    }


def load_module(path) -> FdModule:
    return module_from_data(load_json(path), base_dir=Path(path).parent)


# ---------------------------------------------------------------------------
# weight partitions


def partition_from_data(data) -> WeightPartition:
    _expect(data, dict, "partition")
    classes = _expect(_field(data, "classes", "partition"), list, "classes")
    table = {}
    for i, cls in enumerate(classes):
        _expect(cls, dict, f"class {i}")
        weight = _field(cls, "weight", f"class {i}")
        if not isinstance(weight, int) or isinstance(weight, bool):
            raise ValidationError(f"class {i} weight must be an integer")
        if weight in table:
            raise ValidationError(f"weight {weight} appears twice")
        vertices = _expect(_field(cls, "vertices", f"class {i}"),
                           list, "vertices")
        table[weight] = tuple(str(v) for v in vertices)
    try:
        return WeightPartition.of(table)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def partition_to_data(partition: WeightPartition) -> dict:
    return {"classes": [{"weight": w, "vertices": list(vs)}
                        for w, vs in partition.classes]}


def load_partition(path) -> WeightPartition:
    return partition_from_data(load_json(path))


# ---------------------------------------------------------------------------
# comparison points


def _int_poly(coeffs, what: str) -> list:
    _expect(coeffs, list, what)
    out = []
    for i, c in enumerate(coeffs):
        value = parse_rational(c, f"{what}[{i}]")
        if value.denominator != 1:
            raise ValidationError(
                f"{what}[{i}] must be an integer, got {value}")
        out.append(int(value))
    return out


def _nf_elem(field: NumberField, coeffs, what: str) -> NumberFieldElem:
    _expect(coeffs, list, what)
    if len(coeffs) > field.degree:
        raise ValidationError(
            f"{what} has {len(coeffs)} coefficients but the field has "
            f"degree {field.degree}")
    vals = [parse_rational(c, f"{what}[{i}]") for i, c in enumerate(coeffs)]
    return field.elem(vals)


RATIONAL_FIELD_COEFFS = (0, 1)      # the polynomial x, a degree-one field


def comparison_from_data(data, algebra: BoundQuiverAlgebra) -> ComparisonPoint:
    """Build a comparison point over a given algebra.

    "field" holds the defining polynomial of the value field L with the
    constant term first; omit it (or use null) for plain rationals.  "u"
    maps path names to L-coordinate arrays, paths not named act by zero.
    A proper coefficient subfield K is given by "coeff_field" (its
    defining polynomial) together with "embedding_of_K" (the image of
    its generator in L); omit both for K = Q.
    """
    _expect(data, dict, "comparison point")
    field_coeffs = data.get("field")
    if field_coeffs is None:
        field_coeffs = list(RATIONAL_FIELD_COEFFS)
    try:
        value_field = NumberField(_int_poly(field_coeffs, "field"))
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc

    coeff_field = None
    coeff_image = None
    k_coeffs = data.get("coeff_field")
    k_image = data.get("embedding_of_K")
    if (k_coeffs is None) != (k_image is None):
        raise ValidationError(
            "a proper coefficient field needs both 'coeff_field' and "
            "'embedding_of_K'")
    if k_coeffs is not None:
        try:
            coeff_field = NumberField(_int_poly(k_coeffs, "coeff_field"))
        except ValueError as exc:
            raise ValidationError(str(exc)) from exc
        coeff_image = _nf_elem(value_field, k_image, "embedding_of_K")

    u_data = _expect(_field(data, "u", "comparison point"), dict, "u")
    coords = [value_field.zero()] * algebra.dim
    for name, coeffs in u_data.items():
        try:
            idx = algebra.basis_by_name(name)
        except KeyError as exc:
            raise ValidationError(
                f"'u' names an unknown path {name!r}") from exc
        coords[idx] = _nf_elem(value_field, coeffs, f"u[{name!r}]")
    try:
        return ComparisonPoint(value_field, tuple(coords),
                               coeff_field, coeff_image)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def comparison_to_data(point: ComparisonPoint,
                       algebra: BoundQuiverAlgebra) -> dict:
    data = {
        "field": list(point.value_field.coeffs),
        "u": {name: vector_to_data(elem.coeffs)
              for name, elem in zip(algebra.basis_names(), point.u_coords)
              if any(elem.coeffs)},
    }
    if point.coeff_field is not None:
        data["coeff_field"] = list(point.coeff_field.coeffs)
        data["embedding_of_K"] = vector_to_data(point.coeff_image.coeffs)
    return data


def load_comparison(path, algebra: BoundQuiverAlgebra) -> ComparisonPoint:
    return comparison_from_data(load_json(path), algebra)


# ---------------------------------------------------------------------------
# coefficient relations


def relation_from_data(data, m: FdModule) -> Matrix:
    """A relation file holds one d-by-d coefficient matrix."""
    _expect(data, dict, "relation")
    return matrix_from_data(_field(data, "matrix", "relation"),
                            m.dim, m.dim, "relation matrix")


def relation_to_data(c: Matrix) -> dict:
    return {"matrix": matrix_to_data(c)}


# ---------------------------------------------------------------------------
# weight-graded inputs for the one-motive dimension counts


def structure_algebra_from_data(data) -> StructureAlgebra:
    _expect(data, dict, "structure algebra")
    unit = _expect(_field(data, "unit", "structure algebra"), list, "unit")
    dim = len(unit)
    table = _expect(_field(data, "table", "structure algebra"), list, "table")
    if len(table) != dim:
        raise ValidationError(
            f"structure table must have {dim} rows, got {len(table)}")
    parsed_unit = tuple(parse_rational(c, f"unit[{i}]")
                        for i, c in enumerate(unit))
    parsed_table = []
    for i, row in enumerate(table):
        _expect(row, list, f"table row {i}")
        if len(row) != dim:
            raise ValidationError(
                f"table row {i} must have {dim} cells, got {len(row)}")
        cells = []
        for j, cell in enumerate(row):
            cells.append(tuple(vector_from_data(
                cell, dim, f"table[{i}][{j}]")))
        parsed_table.append(tuple(cells))
    try:
        algebra = StructureAlgebra(dim, parsed_unit, tuple(parsed_table))
        algebra.check_associative()
        algebra.check_unit()
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    return algebra


def structure_algebra_to_data(algebra: StructureAlgebra) -> dict:
    return {
        "unit": vector_to_data(algebra.unit),
        "table": [[vector_to_data(cell) for cell in row]
                  for row in algebra.table],
    }


def _b_module_from_data(data, algebra: StructureAlgebra,
                        what: str) -> BModule:
    _expect(data, dict, what)
    action = data.get("action")
    if action is None:
        dim = data.get("dim", 0)
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
            raise ValidationError(
                f"{what} without an action needs a nonnegative 'dim'")
        if dim != 0:
            raise ValidationError(
                f"{what} has positive dimension, so it needs an 'action'")
        mats = [Matrix([], ncols=0) for _ in range(algebra.dim)]
    else:
        _expect(action, list, f"{what} action")
        if len(action) != algebra.dim:
            raise ValidationError(
                f"{what} action must list one matrix per algebra basis "
                f"element ({algebra.dim}), got {len(action)}")
        first = _expect(action[0], list, f"{what} action[0]")
        dim = len(first)
        mats = [matrix_from_data(rows, dim, dim, f"{what} action[{k}]")
                for k, rows in enumerate(action)]
    try:
        return b_module(algebra, mats)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def graded_input_from_data(data) -> SaturatedInput:
    _expect(data, dict, "graded input")
    algebra = structure_algebra_from_data(_field(data, "B", "graded input"))
    parts = {}
    for key in ("HL", "HA", "HT"):
        parts[key] = _b_module_from_data(
            _field(data, key, "graded input"), algebra, key)
    try:
        return saturated_input(algebra, parts["HA"], parts["HT"],
                               parts["HL"])
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def load_graded_input(path) -> SaturatedInput:
    return graded_input_from_data(load_json(path))


# ---------------------------------------------------------------------------
# exact sequences and lift targets


def sequence_file_from_data(data, base_dir=None):
    """A sequence file names a module, a partition, and a weight cut.

    Returns (module, partition, cut); the caller slices.
    """
    _expect(data, dict, "sequence")
    module = module_from_data(_field(data, "module", "sequence"), base_dir)
    partition = partition_from_data(_field(data, "partition", "sequence"))
    cut = _field(data, "cut", "sequence")
    if not isinstance(cut, int) or isinstance(cut, bool):
        raise ValidationError("sequence cut must be an integer weight")
    return module, partition, cut


def target_vectors_from_data(data, ambient: FdModule, what: str) -> tuple:
    """A target file holds flat coordinate vectors spanning a submodule."""
    _expect(data, dict, what)
    vectors = _expect(_field(data, "vectors", what), list, "vectors")
    return tuple(vector_from_data(v, ambient.dim, f"{what} vector {i}")
                 for i, v in enumerate(vectors))


# ---------------------------------------------------------------------------
# file schemas, printed by the command line on request

SCHEMAS = {
    "algebra": {
        "vertices": ["v1", "..."],
        "arrows": [{"name": "a", "from": "v1", "to": "v2"}],
        "relations": [[{"path": ["a", "b"], "coeff": "1"}]],
    },
    "module": {
        "algebra": "path/to/algebra.json | inline algebra object",
        "dims": {"v1": 1},
        "maps": {"a": [["1", "0"]]},
    },
    "partition": {
        "classes": [{"weight": 0, "vertices": ["v1"]}],
    },
    "comparison": {
        "field": ["-2", "0", "0", "1"],
        "u": {"e_v1": ["1"], "a": ["0", "1"]},
        "coeff_field": "optional: defining polynomial of K",
        "embedding_of_K": "optional: image of K's generator in L",
    },
    "relation": {
        "matrix": [["0", "1"], ["0", "0"]],
    },
    "sequence": {
        "module": "inline module object",
        "partition": {"classes": [{"weight": 0, "vertices": ["v1"]}]},
        "cut": 0,
    },
    "target": {
        "vectors": [["1", "0", "0"]],
    },
    "graded-input": {
        "B": {"unit": ["1"], "table": [[["1"]]]},
        "HL": {"action": [[["1"]]]},
        "HA": {"action": [[["1", "0"], ["0", "1"]]]},
        "HT": {"dim": 0},
    },
}
