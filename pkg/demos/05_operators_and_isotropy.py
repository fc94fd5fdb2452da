"""Residue operators, the Cayley transform, and Lagrangian subalgebras.

The twist of a quadruple acts through R_Q = theta+ (theta+ - pi_+)^{-1}
+ (psi(t_h) + 1/2) + (pi_- - theta-)^{-1}; the closed form agrees with
the residue of r_Q against loop elements, and the graph
W = {((R-1)f, Rf)} is exactly isotropic for the split form.
"""

from fractions import Fraction as Q

from loopcybe import SigmaType, loop_algebra
from loopcybe.bd import (BDQuadruple, build_rq, build_twist, canonical_t_h,
                         cayley, gluing_check, manin_identity_sides,
                         w0_samples, w_isotropy)
from loopcybe.tensors import residue_operator, wedge

A2 = SigmaType.make("A2", [1, 0, 0])
q = BDQuadruple.make(A2, {1}, {2}, {1: 2}, canonical_t_h(A2, {1}, {2}, {1: 2}))
L = loop_algebra(A2)

print("== closed form vs residue formula ==")
rq = build_rq(q)
rt = residue_operator(L, build_twist(q))
agree = all((rq(f) - rt(f)).is_zero() for f in L.basis_up_to(3))
print("R_Q(f) = res_y[psi(r_Q(z,y)) f(y) / y] on every |deg| <= 3 basis element:", agree)

print()
print("== Cayley transform ==")
rep = cayley(q, d=2)
print("im(R - 1) = N_+ + h_1 + N_-^G1:", rep["c1_matches"])
print("im(R)     = N_+^G2 + h_2 + N_-:", rep["c2_matches"])

print()
print("== Lagrangian isotropy of W ==")
iso = w_isotropy(q, d=2)
print("pairs checked: %d, all split-form values zero: %s" % (iso["pairs"], iso["isotropy_ok"]))
print("gluing equation theta_Q([x]) = [y] on all samples:", gluing_check(q, d=2))

print()
print("== the correspondence identity ==")
t = build_twist(q)
samples = w0_samples(L, 2)
tri = (samples[1], samples[5], samples[9])
left, right = manin_identity_sides(L, t, tri)
print("valid twist:    both sides", (left, right))
L1 = loop_algebra(SigmaType.make("A1", [1, 0]))
bad = wedge(L1, L1.from_chev(0, {0: Q(1)}), L1.from_chev(0, {1: Q(1)}))
small = w0_samples(L1, 1)
found = None
for w1 in small:
    for w2 in small:
        for w3 in small:
            l, r = manin_identity_sides(L1, bad, (w1, w2, w3))
            if l != 0:
                found = (l, r)
                break
        if found:
            break
    if found:
        break
print("non-twist e^f:  a triple with both sides equal and nonzero:", found)
