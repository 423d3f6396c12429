"""A corpus of small algebras and modules used by tests, demos and docs.

Seven algebras, each with a standing weight assignment on its vertices
(weights decrease along arrows), and a few dozen modules chosen so that
every behavior the package exhibits has a witness in here: semisimples,
projectives, radicals, towers that certify, a module that refutes
principality, and a module whose relation space genuinely needs depth
two.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .quivalg import (
    BoundQuiverAlgebra,
    FdModule,
    build_algebra,
    direct_sum,
    module_power,
    projective_module,
    simple_module,
)


@lru_cache(maxsize=None)
def algebra(key: str) -> BoundQuiverAlgebra:
    if key == "a2":
        return build_algebra(["v1", "v2"], [("a", "v1", "v2")])
    if key == "a3":
        return build_algebra(
            ["w0", "wm1", "wm2"],
            [("x", "w0", "wm1"), ("y", "wm1", "wm2")])
    if key == "a3yx":
        return build_algebra(
            ["w0", "wm1", "wm2"],
            [("x", "w0", "wm1"), ("y", "wm1", "wm2")],
            relations=[[(1, ("x", "y"))]])
    if key == "square":
        return build_algebra(
            ["v1", "v2", "v3", "v4"],
            [("r", "v1", "v2"), ("s", "v1", "v3"),
             ("p", "v2", "v4"), ("q", "v3", "v4")],
            relations=[[(1, ("r", "p")), (-1, ("s", "q"))]])
    if key == "kronecker":
        return build_algebra(["k1", "k2"],
                             [("a", "k1", "k2"), ("b", "k1", "k2")])
    if key == "loop2":
        return build_algebra(["v"], [("z", "v", "v")],
                             relations=[[(1, ("z", "z"))]])
    if key == "star":
        return build_algebra(
            ["u1", "u2", "u3", "c"],
            [("a1", "u1", "c"), ("a2", "u2", "c"), ("a3", "u3", "c")])
    raise KeyError(f"unknown algebra key {key!r}")


# weight classes per algebra: tuples of (weight, vertices), weights strictly
# decreasing; arrows always point from higher to lower weight
WEIGHTS: dict[str, tuple] = {
    "a2": ((0, ("v1",)), (-1, ("v2",))),
    "a3": ((0, ("w0",)), (-1, ("wm1",)), (-2, ("wm2",))),
    "a3yx": ((0, ("w0",)), (-1, ("wm1",)), (-2, ("wm2",))),
    "square": ((0, ("v1",)), (-1, ("v2", "v3")), (-2, ("v4",))),
    "kronecker": ((0, ("k1",)), (-1, ("k2",))),
    "loop2": ((0, ("v",)),),
    "star": ((0, ("u1", "u2", "u3")), (-1, ("c",))),
}


@dataclass(frozen=True)
class CorpusEntry:
    key: str              # 'algebra/module'
    algebra_key: str
    module: FdModule


def _modules(key: str) -> dict[str, FdModule]:
    alg = algebra(key)
    out: dict[str, FdModule] = {}
    if key == "a2":
        s1, s2 = simple_module(alg, "v1"), simple_module(alg, "v2")
        p1 = projective_module(alg, "v1")
        out["s1"] = s1
        out["s2"] = s2
        out["p1"] = p1
        out["s1+s2"] = direct_sum([s1, s2])
        out["p1+s2"] = direct_sum([p1, s2])
        out["p1^2"] = module_power(p1, 2)
        out["p1+s1"] = direct_sum([p1, s1])
    elif key == "a3":
        s0 = simple_module(alg, "w0")
        s1 = simple_module(alg, "wm1")
        s2 = simple_module(alg, "wm2")
        proj = projective_module(alg, "w0")
        radical = FdModule(alg, {"wm1": 1, "wm2": 1}, {"y": [[1]]})
        out["s_w0"] = s0
        out["s_wm1"] = s1
        out["s_wm2"] = s2
        out["proj"] = proj
        out["rad"] = radical
        out["tower"] = direct_sum([proj, s2, s0])
        out["rad+s2"] = direct_sum([radical, s2])
        out["ss"] = direct_sum([s0, s1, s2])
    elif key == "a3yx":
        p0 = projective_module(alg, "w0")      # dims (1, 1, 0)
        p1 = projective_module(alg, "wm1")     # dims (0, 1, 1)
        out["p0"] = p0
        out["p1"] = p1
        out["mix"] = direct_sum([p0, p1])
        out["s_w0"] = simple_module(alg, "w0")
        out["p0+s_wm2"] = direct_sum([p0, simple_module(alg, "wm2")])
    elif key == "square":
        proj1 = projective_module(alg, "v1")
        radical = FdModule(alg, {"v2": 1, "v3": 1, "v4": 1},
                           {"p": [[1]], "q": [[1]]})
        out["proj1"] = proj1
        out["rad"] = radical
        out["s1"] = simple_module(alg, "v1")
        out["s4"] = simple_module(alg, "v4")
        out["proj1+s4"] = direct_sum([proj1, simple_module(alg, "v4")])
        out["proj2"] = projective_module(alg, "v2")
        out["proj2+s2+s3"] = direct_sum([out["proj2"],
                                         simple_module(alg, "v2"),
                                         simple_module(alg, "v3")])
    elif key == "kronecker":
        s1, s2 = simple_module(alg, "k1"), simple_module(alg, "k2")
        out["s1"] = s1
        out["s2"] = s2
        out["reg0"] = FdModule(alg, {"k1": 1, "k2": 1},
                               {"a": [[1]], "b": [[0]]})
        out["reg1"] = FdModule(alg, {"k1": 1, "k2": 1},
                               {"a": [[1]], "b": [[1]]})
        out["proj1"] = projective_module(alg, "k1")
        out["proj1+s2"] = direct_sum([out["proj1"], s2])
        out["big"] = FdModule(alg, {"k1": 2, "k2": 1},
                              {"a": [[1, 0]], "b": [[0, 1]]})
    elif key == "loop2":
        out["s"] = simple_module(alg, "v")
        out["reg"] = FdModule(alg, {"v": 2}, {"z": [[0, 0], [1, 0]]})
    elif key == "star":
        out["p_u1"] = projective_module(alg, "u1")
        out["s_c"] = simple_module(alg, "c")
        out["all"] = FdModule(alg, {"u1": 1, "u2": 1, "u3": 1, "c": 1},
                              {"a1": [[1]], "a2": [[1]], "a3": [[1]]})
    else:
        raise KeyError(f"unknown algebra key {key!r}")
    return out


@lru_cache(maxsize=None)
def corpus() -> tuple[CorpusEntry, ...]:
    entries = []
    for key in ("a2", "a3", "a3yx", "square", "kronecker", "loop2", "star"):
        for name, mod in _modules(key).items():
            entries.append(CorpusEntry(f"{key}/{name}", key, mod))
    return tuple(entries)


def get_module(key: str) -> FdModule:
    algebra_key, _, name = key.partition("/")
    mods = _modules(algebra_key)
    if name not in mods:
        raise KeyError(f"unknown module {key!r}")
    return mods[name]


def weight_classes(algebra_key: str) -> tuple:
    return WEIGHTS[algebra_key]
