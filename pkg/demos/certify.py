"""Certify or refute principality, and replay the certificate.

Principality means the period space equals the commutator quotient, so
every relation is realized by endomorphisms at the module's own rank.
The certifier assembles a derivation from saturation and semisimplicity
rules; a Refuted verdict carries an exact dimension gap; Unknown is an
honest answer, never a bluff.
"""

from qperiods import zoo
from qperiods.yoga import WeightPartition, certify_principal, replay_derivation


def parts(key):
    return WeightPartition.of(dict(zoo.weight_classes(key)))


def show(node, indent="  "):
    print(f"{indent}[{node.rule}] {node.statement}")
    for child in node.children:
        show(child, indent + "  ")


# a sum that certifies: the projective plus the missing simple
m = zoo.get_module("a2/p1+s2")
verdict = certify_principal(m, parts("a2"))
print("a2/p1+s2 ->", verdict.status)
show(verdict.derivation)
assert verdict.status == "Certified"
assert verdict.dims["endo_quotient"] == verdict.dims["period_space"] == 3
assert replay_derivation(m, parts("a2"), verdict)
print("replayed: every rule application re-checks")

# the bare projective refutes: too few endomorphisms
verdict = certify_principal(zoo.get_module("a2/p1"), parts("a2"))
print("\na2/p1 ->", verdict.status)
show(verdict.derivation)
assert verdict.status == "Refuted"
assert verdict.dims["endo_quotient"] > verdict.dims["period_space"]

# the nilpotent loop stays out of reach of the current rules
verdict = certify_principal(zoo.get_module("loop2/reg"), parts("loop2"))
print("\nloop2/reg ->", verdict.status)
assert verdict.status == "Unknown"
assert verdict.derivation is None
