"""The basic trigonometric solution r_0 and its exact verification.

r_0(x, y) = C_h/2 + C_- + (sum_k (x/y)^k C_k) / ((x/y)^m - 1) is a
skew-symmetric solution of the two-parameter classical Yang-Baxter
equation for every finite-order grading; this is checked symbolically by
clearing denominators.
"""

from fractions import Fraction as Q

from loopcybe import SigmaType, casimir_components, cobracket, cybe, loop_algebra, r0, skew
from loopcybe.tensors import taylor

print("== r_0 for sl2 (sigma = id) ==")
L = loop_algebra(SigmaType.make("A1", [1, 0]))
r = r0(L)
print("polynomial part (h x h/16 + f x e/4):", r.poly)
print("pole numerator (the Casimir):", r.pole_num[0])

print()
print("== Yang-Baxter and skew-symmetry, exact ==")
for label, s, nu in [("A1", [1, 0], None), ("A1", [1, 1], None),
                     ("A2", [1, 1, 1], None), ("B2", [1, 0, 0], None),
                     ("A2", [1, 0], [1, 0])]:
    L = loop_algebra(SigmaType.make(label, s, nu))
    r = r0(L)
    print("%-2s s=%-9s nu=%s:  CYB(r0) %s, r0 + tau r0(y,x) %s"
          % (label, s, nu,
             "= 0" if not cybe(r) else "!= 0",
             "= 0" if skew(r).is_zero() else "!= 0"))

print()
print("== the induced cobracket on generators ==")
L = loop_algebra(SigmaType.make("A1", [1, 0]))
r = r0(L)
for i, g in enumerate(L.generators()):
    print("node %d: delta(H) = %s" % (i, cobracket(g["h"], r)))
    print("         delta(X+) =", cobracket(g["plus"], r))

print()
print("== Taylor expansion in y ==")
coeffs = taylor(r, 2)
for order, c in enumerate(coeffs):
    print("order %d: %d terms" % (order, len(c)))
print("order-1 coefficient (x^-1 times the full Casimir):", coeffs[1])

print()
print("== split of the Casimir along the grading ==")
L3 = loop_algebra(SigmaType.make("A2", [1, 1, 1]))
cas = casimir_components(L3)
for k, comp in enumerate(cas["components"]):
    print("C_%d: %d terms" % (k, len(comp)))
print("C_0 = C_- + C_h + C_+ splits as %d + %d + %d terms"
      % (len(cas["minus"]), len(cas["h"]), len(cas["plus"])))
