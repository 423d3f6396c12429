"""Command line front end.

Loads JSON inputs, dispatches one command, and prints one report,
either human readable or as a stable-keyed JSON object.  Exit codes
distinguish three outcomes: 0 for a definite answer (a refutation is an
answer), 2 for an honest Unknown, and 1 for inputs that fail to parse
or validate.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .exactlin import Matrix, NumberFieldElem
from .quivalg import NotAdmissible, NotFiniteDimensional, SubmoduleHandle
from .periods import (
    depth_space,
    endo_quotient,
    eval_and_conjecture,
    period_space,
    realize_relation,
)
from .yoga import (
    HypothesisFailed,
    NotExact,
    OrthogonalityFailure,
    SupportViolation,
    certify_principal,
    slice_by_weight,
    universal_lift,
)
from .onemotive import (
    RangeError,
    baker_dims,
    graded_period_dims,
    rational_input,
    synthesize_model,
)
from .serialize import (
    SCHEMAS,
    ParseError,
    ValidationError,
    dump_json,
    load_comparison,
    load_graded_input,
    load_json,
    load_module,
    load_partition,
    matrix_to_data,
    rational_str,
    relation_from_data,
    sequence_file_from_data,
    target_vectors_from_data,
    vector_to_data,
)

INPUT_ERRORS = (
    ParseError,
    ValidationError,
    NotAdmissible,
    NotFiniteDimensional,
    NotExact,
    SupportViolation,
    OrthogonalityFailure,
    HypothesisFailed,
    RangeError,
)


@dataclass
class RunConfig:
    """One resolved invocation: a command, its inputs, and its budgets."""

    command: str
    paths: dict = field(default_factory=dict)
    numbers: dict = field(default_factory=dict)
    k: int | None = None
    spin_bound: int = 1
    power_budget: int | None = None
    core_cap: int = 24
    fmt: str = "text"

    def validate(self):
        for role, path in self.paths.items():
            if path is not None and not Path(path).is_file():
                raise ValidationError(f"{role} file does not exist: {path}")
        for name, bound in (("--spin-bound", self.spin_bound),
                            ("--power-budget", self.power_budget),
                            ("--frontier-cap", self.core_cap)):
            if bound is not None and bound < 1:
                raise ValidationError(f"{name} must be positive")
        if self.k is not None and self.k < 1:
            raise ValidationError("--k must be positive")


# ---------------------------------------------------------------------------
# rendering helpers


def _scalar_data(x):
    if isinstance(x, NumberFieldElem):
        return vector_to_data(x.coeffs)
    return rational_str(x)


def _vec_data(vec) -> list:
    return [_scalar_data(x) for x in vec]


def _matrix_text(mat: Matrix, indent: str = "    ") -> list:
    widths = [max((len(rational_str(row[j])) for row in mat.rows),
                  default=1)
              for j in range(mat.ncols)]
    return [indent + "  ".join(rational_str(x).rjust(w)
                               for x, w in zip(row, widths))
            for row in mat.rows]


def _handle_data(handle: SubmoduleHandle) -> dict:
    ambient = handle.ambient
    return {
        "dims": {v: handle.space(v).dim
                 for v in ambient.algebra.vertices},
        "spaces": {v: [vector_to_data(b)
                       for b in handle.space(v).basis_vectors()]
                   for v in ambient.algebra.vertices
                   if handle.space(v).dim},
    }


def _node_data(node) -> dict:
    return {
        "rule": node.rule,
        "statement": node.statement,
        "data": _plain(node.data),
        "children": [_node_data(c) for c in node.children],
    }


def _plain(value):
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in sorted(value.items(),
                                                     key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Fraction):
        return rational_str(value)
    return value


def _node_text(node, depth: int = 0) -> list:
    lines = ["  " * depth + f"[{node.rule}] {node.statement}"]
    for child in node.children:
        lines.extend(_node_text(child, depth + 1))
    return lines


# ---------------------------------------------------------------------------
# command handlers, each returning (exit_code, report dict, text lines)


def _space_report(command: str, space) -> tuple:
    d = space.module.dim
    basis = [matrix_to_data(Matrix.unvec(v, d, d))
             for v in space.relations.basis_vectors()]
    report = {
        "command": command,
        "ambient_dim": space.ambient_dim,
        "dim": space.dim,
        "relation_dim": space.relations.dim,
        "relation_basis": basis,
        "provenance": space.provenance,
    }
    return report


def _space_text(label: str, space) -> list:
    d = space.module.dim
    lines = [f"{label} dimension: {space.dim} "
             f"(ambient {space.ambient_dim}, relations "
             f"{space.relations.dim})"]
    for i, v in enumerate(space.relations.basis_vectors()):
        lines.append(f"relation {i}:")
        lines.extend(_matrix_text(Matrix.unvec(v, d, d)))
    return lines


def _cmd_period(cfg: RunConfig):
    m = load_module(cfg.paths["module"])
    space = period_space(m)
    return 0, _space_report("period", space), \
        _space_text("period space", space)


def _cmd_endo(cfg: RunConfig):
    m = load_module(cfg.paths["module"])
    space = endo_quotient(m)
    return 0, _space_report("endo", space), \
        _space_text("endomorphism-side space", space)


def _cmd_depth(cfg: RunConfig):
    m = load_module(cfg.paths["module"])
    result = depth_space(m, cfg.k, spin_bound=cfg.spin_bound)
    report = _space_report("depth", result.space)
    report.update({
        "k": cfg.k,
        "per_stage_dims": list(result.per_stage_dims),
        "certified": result.certified,
        "strategy": result.strategy,
    })
    lines = _space_text(f"depth-{cfg.k} space", result.space)
    lines.insert(1, "per-stage dimensions: "
                 + ", ".join(str(x) for x in result.per_stage_dims))
    lines.insert(2, f"certified against the full space: "
                 f"{'yes' if result.certified else 'no'}")
    return (0 if result.certified else 2), report, lines


def _cmd_certify(cfg: RunConfig):
    m = load_module(cfg.paths["module"])
    partition = load_partition(cfg.paths["weights"])
    verdict = certify_principal(m, partition, core_cap=cfg.core_cap)
    report = {
        "command": "certify",
        "status": verdict.status,
        "dims": dict(verdict.dims),
        "derivation": _node_data(verdict.derivation)
        if verdict.derivation is not None else None,
        "plan": _plain(verdict.plan),
    }
    e = verdict.dims["endo_quotient"]
    p = verdict.dims["period_space"]
    lines = [f"verdict: {verdict.status}"]
    if verdict.status == "Refuted":
        lines.append(f"endomorphism-side dimension {e} exceeds the period "
                     f"space dimension {p}, so some relation has no "
                     f"realization at the module's own rank")
    else:
        lines.append(f"endomorphism-side dimension {e}, period space "
                     f"dimension {p}")
    if verdict.derivation is not None:
        lines.append("derivation:")
        lines.extend(_node_text(verdict.derivation, 1))
    code = 2 if verdict.status == "Unknown" else 0
    return code, report, lines


def _cmd_realize(cfg: RunConfig):
    m = load_module(cfg.paths["module"])
    c = relation_from_data(load_json(cfg.paths["relation"]), m)
    result = realize_relation(m, c, power_budget=cfg.power_budget)
    report = {
        "command": "realize",
        "status": result.status,
        "reason": result.reason,
    }
    if result.realization is not None:
        w = result.realization
        report["witness"] = {
            "power": w.power,
            "sigma": [vector_to_data(v) for v in w.sigma],
            "omega": [vector_to_data(v) for v in w.omega],
        }
        lines = [f"realized inside a power: M^{w.power}",
                 f"spinning vectors: {len(w.sigma)}"]
    else:
        report["witness"] = None
        lines = [f"not realized: {result.status}"]
        if result.reason:
            lines.append(result.reason)
    return (0 if result.status == "realized" else 2), report, lines


def _cmd_eval(cfg: RunConfig):
    m = load_module(cfg.paths["module"])
    point = load_comparison(cfg.paths["comparison"], m.algebra)
    rep = eval_and_conjecture(m, point)
    statuses = sorted(r.status for _, r in rep.realizations)
    report = {
        "command": "eval",
        "verdict": rep.verdict,
        "holds": rep.holds,
        "period_dim": rep.space.dim,
        "values": [_scalar_data(v) for v in rep.values],
        "quotient_kernel": [_vec_data(v) for v in rep.quotient_kernel],
        "ambient_kernel": [_vec_data(v) for v in rep.ambient_kernel],
        "relations_evaluate_to_zero": rep.relations_evaluate_to_zero,
        "realization_statuses": statuses,
    }
    lines = [
        f"verdict: the point {rep.verdict} "
        f"(injective on the period quotient: {'yes' if rep.holds else 'no'})",
        f"period space dimension: {rep.space.dim}",
        f"kernel on the quotient: {len(rep.quotient_kernel)}",
        f"kernel on all coefficients: {len(rep.ambient_kernel)}",
        f"relations evaluate to zero: "
        f"{'yes' if rep.relations_evaluate_to_zero else 'no'}",
    ]
    if statuses:
        lines.append("kernel vector realizations: " + ", ".join(statuses))
    return 0, report, lines


def _cmd_lift(cfg: RunConfig):
    data = load_json(cfg.paths["sequence"])
    m, partition, cut = sequence_file_from_data(
        data, base_dir=Path(cfg.paths["sequence"]).parent)
    seq = slice_by_weight(m, partition, cut)
    vectors = target_vectors_from_data(
        load_json(cfg.paths["target"]), seq.quot, "target")
    target = SubmoduleHandle.spin(seq.quot, vectors)
    lift = universal_lift(seq, target)
    report = {
        "command": "lift",
        "cut": cut,
        "target_dim": target.dim,
        "lift": _handle_data(lift),
        "lift_dim": lift.dim,
    }
    lines = [f"universal lift dimension: {lift.dim} "
             f"(target dimension {target.dim})",
             "lift dimensions per vertex: "
             + ", ".join(f"{v}:{lift.space(v).dim}"
                         for v in m.algebra.vertices)]
    return 0, report, lines


def _cmd_onemotive(cfg: RunConfig):
    if cfg.paths.get("input") is not None:
        inp = load_graded_input(cfg.paths["input"])
        source = {"input": str(cfg.paths["input"])}
    else:
        g = cfg.numbers["g"]
        l_dim = cfg.numbers["l"]
        m_rank = cfg.numbers["m"]
        if min(g, l_dim, m_rank) < 0:
            raise ValidationError("--g, --l, --m must be nonnegative")
        inp = rational_input(g, m_rank, l_dim)
        source = {"g": g, "l": l_dim, "m": m_rank}
    dims = graded_period_dims(inp)
    model = synthesize_model(inp)
    report = {
        "command": "onemotive",
        "source": source,
        "dims": {"weight_0": dims[0], "weight_-1": dims[1],
                 "weight_-2": dims[2]},
        "total": sum(dims),
        "model": {"ambient_dim": model.ambient_dim,
                  "total_dim": model.total_dim,
                  "matches": model.matches},
    }
    lines = [f"graded period dimensions: {dims[0]}, {dims[1]}, {dims[2]} "
             f"(total {sum(dims)})",
             f"matrix model agrees: {'yes' if model.matches else 'no'}"]
    return 0, report, lines


def _cmd_baker(cfg: RunConfig):
    dim = baker_dims(cfg.numbers["x"], cfg.numbers["l"], cfg.numbers["n"])
    report = {
        "command": "baker",
        "x": cfg.numbers["x"],
        "l": cfg.numbers["l"],
        "n": cfg.numbers["n"],
        "dim": dim,
    }
    return 0, report, [str(dim)]


_HANDLERS = {
    "period": _cmd_period,
    "depth": _cmd_depth,
    "endo": _cmd_endo,
    "certify": _cmd_certify,
    "realize": _cmd_realize,
    "eval": _cmd_eval,
    "lift": _cmd_lift,
    "onemotive": _cmd_onemotive,
    "baker": _cmd_baker,
}


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qperiods",
        description="Exact period spaces of quiver representations.")
    parser.add_argument("--emit-schema", action="store_true",
                        help="print the JSON input schemas and exit")
    parser.add_argument("--format", choices=("text", "json"),
                        default="text", dest="fmt",
                        help="report format (default: text)")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("period", help="period space of a module")
    p.add_argument("module")

    p = sub.add_parser("depth", help="relations from submodules of low powers")
    p.add_argument("module")
    p.add_argument("--k", type=int, required=True,
                   help="largest power of the module to search")
    p.add_argument("--spin-bound", type=int, default=1,
                   help="entry box for the spin-box candidate family")

    p = sub.add_parser("endo", help="endomorphism-side upper bound")
    p.add_argument("module")

    p = sub.add_parser("certify", help="certify or refute principality")
    p.add_argument("module")
    p.add_argument("--weights", required=True,
                   help="weight partition file")
    p.add_argument("--frontier-cap", type=int, default=24,
                   help="largest number of core candidates to try")

    p = sub.add_parser("realize", help="realize a coefficient relation")
    p.add_argument("module")
    p.add_argument("--relation", required=True,
                   help="coefficient matrix file")
    p.add_argument("--power-budget", type=int, default=None,
                   help="refuse witnesses above this power")

    p = sub.add_parser("eval", help="evaluate periods at a comparison point")
    p.add_argument("module")
    p.add_argument("--comparison", required=True,
                   help="comparison point file")

    p = sub.add_parser("lift", help="universal lift of a quotient submodule")
    p.add_argument("sequence")
    p.add_argument("--target", required=True,
                   help="spanning vectors of the target submodule")

    p = sub.add_parser("onemotive",
                       help="graded period dimensions of a weight-graded "
                            "input")
    p.add_argument("--g", type=int, default=None,
                   help="abelian-part rank over the rationals")
    p.add_argument("--l", type=int, default=None,
                   help="linear-part dimension")
    p.add_argument("--m", type=int, default=None,
                   help="toric-part rank")
    p.add_argument("--input", default=None,
                   help="graded input file, instead of the three ranks")

    p = sub.add_parser("baker", help="closed-form dimension count")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    return parser


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command, fmt=args.fmt)
    for role in ("module", "weights", "relation", "comparison",
                 "sequence", "target", "input"):
        if hasattr(args, role):
            cfg.paths[role] = getattr(args, role)
    for number in ("g", "l", "m", "x", "n"):
        if hasattr(args, number):
            cfg.numbers[number] = getattr(args, number)
    if hasattr(args, "k"):
        cfg.k = args.k
    if hasattr(args, "spin_bound"):
        cfg.spin_bound = args.spin_bound
    if hasattr(args, "power_budget"):
        cfg.power_budget = args.power_budget
    if hasattr(args, "frontier_cap"):
        cfg.core_cap = args.frontier_cap
    return cfg


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.emit_schema:
        print(dump_json(SCHEMAS), end="")
        return 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        print("qperiods: a command is required", file=sys.stderr)
        return 1
    if args.command == "onemotive":
        by_file = args.input is not None
        by_ranks = (args.g is not None or args.l is not None
                    or args.m is not None)
        if by_file == by_ranks:
            print("qperiods onemotive: give either --input or all of "
                  "--g --l --m", file=sys.stderr)
            return 1
        if not by_file and None in (args.g, args.l, args.m):
            print("qperiods onemotive: --g, --l and --m go together",
                  file=sys.stderr)
            return 1
    cfg = _config_from_args(args)
    try:
        cfg.validate()
        code, report, lines = _HANDLERS[cfg.command](cfg)
    except INPUT_ERRORS as exc:
        print(f"qperiods {cfg.command}: {exc}", file=sys.stderr)
        return 1
    if cfg.fmt == "json":
        report["exit_code"] = code
        print(dump_json(report), end="")
    else:
        for line in lines:
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
