"""Twisted loop algebras: affine diagrams, marks, gradings, the form B.

The algebra attached to (s; |nu|) is graded by powers of z; its affine
diagram, marks and order m are derived from the construction, never read
from tables.
"""

from fractions import Fraction as Q

from loopcybe import SigmaType, loop_algebra

print("== affine diagrams and marks ==")
for label, s, nu in [("A1", [1, 0], None), ("A2", [1, 0, 0], None),
                     ("C2", [1, 0, 0], None), ("A2", [1, 0], [1, 0])]:
    L = loop_algebra(SigmaType.make(label, s, nu))
    print("%s s=%s nu=%s:  m = %d, marks = %s" % (label, s, nu, L.m, L.marks))
    for row in L.affine_cartan:
        print("    ", row)

print()
print("== gradings ==")
L = loop_algebra(SigmaType.make("A1", [1, 1]))        # Coxeter grading of sl2
for slot in L.slots:
    print("slot %s: class %d mod %d" % (slot.label(), slot.sigma_class, L.m))

print()
print("== the twisted A2 loop algebra (|nu| = 2) ==")
Lt = loop_algebra(SigmaType.make("A2", [1, 0], nu=[1, 0]))
d0 = [s for s in Lt.slots if s.nu_class == 0]
d1 = [s for s in Lt.slots if s.nu_class == 1]
print("dim g_0 = %d, dim g_1 = %d" % (len(d0), len(d1)))

print()
print("== bracket and invariant form on loops ==")
L = loop_algebra(SigmaType.make("A1", [1, 0]))
ze = L.from_chev(1, {0: Q(1)})        # z e
zf = L.from_chev(-1, {1: Q(1)})       # z^-1 f
print("[z e, z^-1 f] =", L.bracket(ze, zf))
print("B(z e, z^-1 f) =", L.form(ze, zf), " (the Killing value kappa(e, f))")
print("B(z e, f) =", L.form(ze, L.from_chev(0, {1: Q(1)})), " (degree mismatch)")

print()
print("== parabolic subalgebras ==")
basis = L.parabolic_basis({1}, 2)     # S = all finite nodes: p^S_+ = sl2[z]
degs = sorted({k for el in basis for (_, k) in el.terms})
print("degrees present in p^S_+ for S = {1}:", degs, " (polynomial loops only)")
print("z^-1 f in p^S_+ ?", L.in_parabolic(zf, {1}, 2))
