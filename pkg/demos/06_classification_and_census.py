"""Classification up to diagram automorphisms, and the reachability census.

Two quadruples give equivalent twisted structures exactly when an affine
diagram automorphism matches all their data.  A twist can be moved into
polynomial (quasi-trigonometric) form exactly when some automorphism
moves Gamma_1 off the affine node; the census decides, per extended
diagram, whether every valid quadruple is movable.

The classically reported census (good types A_n, C_n, B_{2-4}, D_{4-10})
is REFUTED at B4 and D6-D10 by this library's exact enumeration: the
witnesses below are valid quadruples (their twists solve the Yang-Baxter
equation, verified exactly) that no diagram automorphism moves off the
affine node.
"""

from loopcybe import SigmaType, loop_algebra
from loopcybe.bd import BDQuadruple, build_twist, canonical_t_h, validate
from loopcybe.classify import (act, all_equivalence_witnesses, enumerate_representatives,
                               equivalence_witness, loop_diagram_automorphisms,
                               parabolic_restriction_check, type_census)
from loopcybe.loop import affine_diagram_data
from loopcybe.tensors import cybe, from_loop_tensor, r0, twist_residual

A2 = SigmaType.make("A2", [1, 0, 0])

print("== diagram automorphism groups ==")
for label, nodes in [("A2", 3), ("D4", 5), ("E8", 9)]:
    sigma = SigmaType.make(label, [1] + [0] * (nodes - 1))
    group = loop_diagram_automorphisms(affine_diagram_data(sigma))
    print("%s^(1): order %d" % (label, len(group)))

print()
print("== orbits of valid triples on A2^(1) ==")
for rep in enumerate_representatives(A2):
    print("representative %s, orbit size %d" % (rep["triple"], rep["orbit_size"]))

print()
print("== equivalence along the group ==")
q = BDQuadruple.make(A2, {1}, {2}, {1: 2}, canonical_t_h(A2, {1}, {2}, {1: 2}))
rot = (1, 2, 0)
q2 = act(rot, q)
print("rotated quadruple valid:", validate(q2)["valid"])
print("witness recovering the rotation:", equivalence_witness(q, q2))
S = {1, 2}
print("restricts to the polynomial parabolic (theta(S) = S)?",
      parabolic_restriction_check(q, q2, S),
      " - every connecting automorphism moves the affine node")

print()
print("== the reachability census ==")
rows = type_census(["A3", "C3", "B3", "B4", "B5", "D5", "D6", "D10", "D11",
                    "G2", "F4", "E6", "E7", "E8"], 11)
for r in rows:
    verdict = "good" if r["good"] else "BAD (unreachable Gamma1 = %s)" % r["witness_gamma1"]
    print("%s%-2d: %s" % (r["type"], r["rank"], verdict))

print()
print("== certifying the B4 counterexample ==")
sigma = SigmaType.make("B4", [1, 0, 0, 0, 0])
g1, g2, gm = {0, 1}, {1, 3}, {0: 1, 1: 3}
qb = BDQuadruple.make(sigma, g1, g2, gm, canonical_t_h(sigma, g1, g2, gm))
print("conditions 1-3:", validate(qb)["valid"])
L = loop_algebra(sigma)
t = build_twist(qb)
print("twist residual CYB(t) - Alt((delta x 1)t) symbolically zero:",
      not twist_residual(L, t))
group = loop_diagram_automorphisms(affine_diagram_data(sigma))
print("automorphism group:", group)
print("every image of Gamma_1 contains the affine node:",
      all(0 in {p[i] for i in g1} for p in group))
