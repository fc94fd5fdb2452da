"""Twisted loop algebras for finite-order automorphisms of type (s; |nu|).

The loop algebra attached to a diagram automorphism nu and a vector s of
non-negative integers is organized around "slots": the joint eigenspace
lines of (nu-eigenvalue class, Cartan weight).  A slot is a g-vector
together with its nu-degree class and its degree class modulo m in the
regraded algebra.  A loop element is a finite sparse sum of z^k * slot
terms with k congruent to the slot's class modulo m.

All affine diagram data (simple root system, affine Cartan matrix,
marks, coroots) is derived from the construction rather than read from
tables; tests compare against the tabulated matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .cartan import CartanType, Root, is_positive, neg
from .chevalley import (ChevalleyAlgebra, Vec, chevalley_algebra,
                        lift_diagram_automorphism)
from .linalg import kernel_basis, mat_inverse, solve
from .scalars import Q, ScalarField

Weight = tuple  # values of a functional on the fixed Cartan basis


class AffineRoot(tuple):
    """A root (alpha, k): finite weight plus integer loop degree."""

    __slots__ = ()

    def __new__(cls, alpha: Weight, k: int):
        return tuple.__new__(cls, (tuple(alpha), int(k)))

    @property
    def alpha(self) -> Weight:
        return self[0]

    @property
    def k(self) -> int:
        return self[1]


@dataclass(frozen=True)
class SigmaType:
    """Automorphism datum (s; |nu|): diagram permutation plus weights s.

    `nu` is a node permutation of the finite diagram (0-indexed tuple),
    identity if None.  The derived order is m = |nu| * sum a_i s_i.
    """
    cartan_type: CartanType
    s: tuple
    nu: Optional[tuple] = None

    def __post_init__(self):
        if all(x == 0 for x in self.s):
            raise ValueError("s must have at least one non-zero entry")
        if any(x < 0 for x in self.s):
            raise ValueError("s entries must be non-negative")

    @staticmethod
    def make(type_label: str, s: Sequence[int], nu: Optional[Sequence[int]] = None) -> "SigmaType":
        return SigmaType(CartanType.parse(type_label), tuple(int(x) for x in s),
                         tuple(int(x) for x in nu) if nu is not None else None)


@dataclass
class Slot:
    """One line (or Cartan direction) of the nu-eigenspace decomposition."""
    index: int
    nu_class: int          # j with slot subset of g^nu_j
    weight: Weight         # functional values on the fixed Cartan basis
    vec: Vec               # g-vector in Chevalley coordinates
    positive: Optional[bool] = None  # sign of the root (weight, nu_class); None if weight = 0
    cartan: bool = False   # weight 0 at nu-class 0
    sigma_class: int = 0   # degree class modulo m after regrading
    nu_base_degree: int = 0  # hgt_s of the nu-root (weight, nu_class)

    def label(self) -> str:
        w = ",".join(str(x) for x in self.weight)
        return "[w=(%s);j=%d]" % (w, self.nu_class)


class LoopElement:
    """Finite sparse sum of z^k x terms, graded-consistently for one sigma."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "TwistedLoopAlgebra", terms: Optional[dict] = None):
        self.algebra = algebra
        self.terms = {}
        if terms:
            for key, c in terms.items():
                if c != 0:
                    self.terms[key] = c

    def __add__(self, other: "LoopElement") -> "LoopElement":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LoopElement(self.algebra, out)

    def __sub__(self, other: "LoopElement") -> "LoopElement":
        return self + other.scale(-1)

    def scale(self, c) -> "LoopElement":
        if c == 0:
            return LoopElement(self.algebra)
        return LoopElement(self.algebra, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, LoopElement) and self.algebra is other.algebra \
            and self.terms == other.terms

    def __hash__(self):
        raise TypeError("LoopElement is unhashable")

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> list[int]:
        return sorted({k for (_, k) in self.terms})

    def _check(self, other: "LoopElement") -> None:
        if self.algebra is not other.algebra:
            raise ValueError("loop elements over different algebras")

    def chev_parts(self) -> dict:
        """degree k -> g-vector (Chevalley coordinates)."""
        out: dict = {}
        for (sid, k), c in self.terms.items():
            vec = self.algebra.slots[sid].vec
            acc = out.setdefault(k, {})
            for i, ci in vec.items():
                s = acc.get(i, 0) + c * ci
                if s:
                    acc[i] = s
                else:
                    acc.pop(i, None)
        return {k: v for k, v in out.items() if v}

    def __repr__(self) -> str:
        bits = []
        for (sid, k), c in sorted(self.terms.items()):
            bits.append("%s * z^%d %s" % (c, k, self.algebra.slots[sid].label()))
        return "Loop(" + " + ".join(bits) + ")" if bits else "Loop(0)"


class TwistedLoopAlgebra:
    """The loop algebra of an automorphism of type (s; |nu|)."""

    def __init__(self, sigma: SigmaType):
        self.sigma = sigma
        self.alg: ChevalleyAlgebra = chevalley_algebra(sigma.cartan_type)
        n = self.alg.rank
        if sigma.nu is not None and tuple(sigma.nu) != tuple(range(n)):
            self.nu_cols = lift_diagram_automorphism(self.alg, sigma.nu)
            self.nu_perm = tuple(sigma.nu)
            self.nu_order = _perm_order(self.nu_perm)
        else:
            self.nu_cols = None
            self.nu_perm = tuple(range(n))
            self.nu_order = 1
        if len(sigma.s) != self._expected_nodes():
            raise ValueError("s must have %d entries for this diagram" % self._expected_nodes())
        self.field = ScalarField(1 if self.nu_order <= 2 else self.nu_order)
        self._decomp_cache: dict = {}
        self._build_cartan()
        self._build_slots()
        self._build_diagram()
        self._grade_slots()

    # ------------------------------------------------------------------ setup

    def _expected_nodes(self) -> int:
        # number of affine nodes = rank of the fixed subalgebra + 1
        n = self.alg.rank
        if self.nu_order == 1:
            return n + 1
        orbits = _perm_orbits(self.nu_perm)
        return len(orbits) + 1

    def _build_cartan(self) -> None:
        alg = self.alg
        if self.nu_order == 1:
            self.h_basis = [{alg.h_index(i): Q(1)} for i in range(alg.rank)]
        else:
            self.h_basis = []
            for orbit in _perm_orbits(self.nu_perm):
                vec: Vec = {}
                for i in orbit:
                    vec[alg.h_index(i)] = Q(1)
                self.h_basis.append(vec)
        self.nh = len(self.h_basis)
        # Gram of kappa restricted to the fixed Cartan
        self.h_gram = [[alg.killing(a, b) for b in self.h_basis] for a in self.h_basis]
        self.h_gram_inv = mat_inverse(self.h_gram)

    def _weight_of_root(self, r: Root) -> Weight:
        vals = []
        for hv in self.h_basis:
            acc = Q(0)
            for idx in hv:
                i = idx - 2 * self.alg.num_pos
                acc += self.alg.rs.pairing(r, i)
            vals.append(acc)
        return tuple(vals)

    def _build_slots(self) -> None:
        alg = self.alg
        r = self.nu_order
        F = self.field
        slots: list[Slot] = []

        def new_slot(j: int, weight: Weight, vec: Vec, positive, cartan=False) -> Slot:
            s = Slot(len(slots), j % r, weight, vec, positive=positive, cartan=cartan)
            slots.append(s)
            return s

        if r == 1:
            for k, beta in enumerate(alg.rs.positive_roots):
                new_slot(0, self._weight_of_root(beta), {alg.e_index(beta): Q(1)}, True)
                new_slot(0, self._weight_of_root(neg(beta)), {alg.f_index(beta): Q(1)}, False)
            for i in range(alg.rank):
                new_slot(0, tuple([Q(0)] * self.nh), {alg.h_index(i): Q(1)}, None, cartan=True)
        else:
            # root-space orbits under nu
            seen: set = set()
            for rho in alg.rs.all_roots:
                if rho in seen:
                    continue
                orbit = [rho]
                cur = _perm_root(self.nu_perm, rho)
                while cur != rho:
                    orbit.append(cur)
                    cur = _perm_root(self.nu_perm, cur)
                seen.update(orbit)
                idxs = [alg.root_index(x) for x in orbit]
                # matrix of nu on the orbit span
                mat = [[Q(0)] * len(idxs) for _ in idxs]
                for c, idx in enumerate(idxs):
                    img = self.nu_cols[idx]
                    for rr, iidx in enumerate(idxs):
                        if iidx in img:
                            mat[rr][c] = img[iidx]
                wt = self._weight_of_root(rho)
                pos = is_positive(rho)
                for j in range(r):
                    vecs = _eigen_kernel(mat, F, j, r)
                    for v in vecs:
                        chev = {}
                        for c, idx in enumerate(idxs):
                            if v[c] != 0:
                                chev[idx] = v[c]
                        new_slot(j, wt, chev, pos)
            # Cartan orbits
            zero_w = tuple([Q(0)] * self.nh)
            for orbit in _perm_orbits(self.nu_perm):
                idxs = [alg.h_index(i) for i in orbit]
                mat = [[Q(0)] * len(idxs) for _ in idxs]
                for c, i in enumerate(orbit):
                    tgt = alg.h_index(self.nu_perm[i])
                    rr = idxs.index(tgt)
                    mat[rr][c] = Q(1)
                for j in range(r):
                    vecs = _eigen_kernel(mat, F, j, r)
                    for v in vecs:
                        chev = {idxs[c]: v[c] for c in range(len(idxs)) if v[c] != 0}
                        new_slot(j, zero_w, chev, None, cartan=(j == 0))

        self.slots = slots
        # lookup: (weight, nu_class) -> slot indices
        self._by_weight: dict = {}
        for s in slots:
            self._by_weight.setdefault((s.weight, s.nu_class), []).append(s.index)
        for (w, j), ids in self._by_weight.items():
            if any(v != 0 for v in w) and len(ids) != 1:
                raise AssertionError("root space (%s, %d) not one-dimensional" % (w, j))
        # decomposition matrices per (weight, class) group
        self._group_solver: dict = {}

    def _build_diagram(self) -> None:
        """Simple root system Pi = {(alpha_0, 1), (alpha_i, 0)} and its data."""
        r = self.nu_order
        # class-0 positive weights (roots of the fixed subalgebra)
        pos_weights = []
        seen = set()
        for s in self.slots:
            if s.nu_class == 0 and s.positive is True and s.weight not in seen:
                seen.add(s.weight)
                pos_weights.append(s.weight)
        pos_set = set(pos_weights)

        def wsum(a: Weight, b: Weight) -> Weight:
            return tuple(x + y for x, y in zip(a, b))

        simple = [w for w in pos_weights
                  if not any(wsum(u, v) == w for u in pos_weights for v in pos_weights)]
        simple.sort()
        if self.nu_order == 1:
            # keep the native node order of the finite diagram
            simple = [self._weight_of_root(tuple(1 if j == i else 0 for j in range(self.alg.rank)))
                      for i in range(self.alg.rank)]
        if len(simple) != self.nh:
            raise AssertionError("wrong number of simple roots for the fixed subalgebra")

        if r == 1:
            alpha0 = self._weight_of_root(neg(self.alg.rs.highest_root()))
        else:
            # lowest weight of g_1 as a module over the fixed subalgebra
            w1 = sorted({s.weight for s in self.slots if s.nu_class == 1 % r})
            cand = [w for w in w1
                    if not any(tuple(a - b for a, b in zip(w, sw)) in w1 for sw in simple)]
            if len(cand) != 1:
                raise AssertionError("lowest weight of g_1 is not unique: %r" % (cand,))
            alpha0 = cand[0]

        self.node_weights: list[Weight] = [alpha0] + simple
        self.node_nu_degree: list[int] = [1] + [0] * len(simple)
        # kappa-coroots of the node functionals, as coordinate vectors over h_basis
        self.node_coroots = [self._coroot_coords(w) for w in self.node_weights]
        nodes = len(self.node_weights)
        gram = [[self._coords_form(self.node_coroots[i], self.node_coroots[j])
                 for j in range(nodes)] for i in range(nodes)]
        self.coroot_gram = gram
        self.affine_cartan = [[_as_int(2 * gram[i][j] / gram[j][j]) for j in range(nodes)]
                              for i in range(nodes)]
        # marks: (0, r) = r * sum a_i (alpha_i, deg_i); degree part forces a_0 = 1
        rhs = [-x for x in alpha0]
        mat = [[simple[j][t] for j in range(len(simple))] for t in range(self.nh)]
        sol = solve(mat, rhs)
        if sol is None:
            raise AssertionError("marks system inconsistent")
        marks = [Q(1)] + list(sol)
        self.marks = [_as_int(a) for a in marks]
        if any(a <= 0 for a in self.marks):
            raise AssertionError("marks must be positive")
        self.m = self.nu_order * sum(a * s for a, s in zip(self.marks, self.sigma.s))
        if self.m <= 0:
            raise ValueError("derived order m must be positive")

    def _coroot_coords(self, w: Weight) -> list:
        sol = solve(self.h_gram, list(w))
        if sol is None:
            raise ValueError("singular Cartan Gram matrix")
        return sol

    def _coords_form(self, x: Sequence, y: Sequence):
        acc = Q(0)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        acc += xi * yj * self.h_gram[i][j]
        return acc

    def cartan_vec(self, coords: Sequence) -> Vec:
        """Chevalley vector of a Cartan element given in h_basis coordinates."""
        out: Vec = {}
        for c, hv in zip(coords, self.h_basis):
            if c:
                for idx, v in hv.items():
                    s = out.get(idx, 0) + c * v
                    if s:
                        out[idx] = s
                    else:
                        out.pop(idx, None)
        return out

    def _grade_slots(self) -> None:
        for s in self.slots:
            base = self.s_height_pair(s.weight, s.nu_class)
            s.nu_base_degree = base
            s.sigma_class = base % self.m

    # -------------------------------------------------------------- structure

    def decompose_pair(self, weight: Weight, k: int) -> list:
        """Integer coefficients of the nu-root (weight, k) over Pi."""
        key = (weight, k)
        if key in self._decomp_cache:
            return self._decomp_cache[key]
        c0 = k  # alpha_0 carries nu-degree 1, all other nodes degree 0
        rest = [w - c0 * a0 for w, a0 in zip(weight, self.node_weights[0])]
        mat = [[self.node_weights[j + 1][t] for j in range(self.nh)] for t in range(self.nh)]
        sol = solve(mat, rest)
        if sol is None:
            raise ValueError("root (%s, %d) not in the span of Pi" % (weight, k))
        out = [c0] + [_as_int(x) for x in sol]
        self._decomp_cache[key] = out
        return out

    def s_height_pair(self, weight: Weight, k: int) -> int:
        cs = self.decompose_pair(weight, k)
        return sum(c * s for c, s in zip(cs, self.sigma.s))

    def s_height(self, weight: Weight, k: int) -> int:
        """hgt_s of a nu-root; decomposition must be integral."""
        return self.s_height_pair(weight, k)

    def zero(self) -> LoopElement:
        return LoopElement(self)

    def element(self, terms: dict) -> LoopElement:
        for (sid, k) in terms:
            slot = self.slots[sid]
            if (k - slot.sigma_class) % self.m != 0:
                raise ValueError("degree %d not allowed for slot %d (class %d mod %d)"
                                 % (k, sid, slot.sigma_class, self.m))
        return LoopElement(self, terms)

    def from_chev(self, k: int, gvec: Vec) -> LoopElement:
        """z^k * (g-vector); fails if the vector is not in g^sigma_k."""
        out: dict = {}
        for sid, c in self._decompose_gvec(gvec).items():
            slot = self.slots[sid]
            if (k - slot.sigma_class) % self.m != 0:
                raise ValueError("vector has a component outside g^sigma_%d" % k)
            out[(sid, k)] = c
        return LoopElement(self, out)

    def _group_matrix(self, weight: Weight, j: int):
        key = (weight, j)
        if key not in self._group_solver:
            ids = self._by_weight.get(key, [])
            support: list[int] = sorted({i for sid in ids for i in self.slots[sid].vec})
            mat = [[self.slots[sid].vec.get(i, Q(0)) for sid in ids] for i in support]
            self._group_solver[key] = (ids, support, mat)
        return self._group_solver[key]

    def chev_index_slots(self, i: int) -> list:
        """Decomposition of the Chevalley basis vector e_i over slots (cached)."""
        if not hasattr(self, "_chev_slot_cache"):
            self._chev_slot_cache: dict = {}
        if i not in self._chev_slot_cache:
            self._chev_slot_cache[i] = sorted(self._decompose_gvec({i: Q(1)}).items())
        return self._chev_slot_cache[i]

    def _decompose_gvec(self, gvec: Vec) -> dict:
        """Write a g-vector as a combination of slots; returns slot -> coeff."""
        out: dict = {}
        # classify basis indices by restricted weight
        buckets: dict = {}
        for idx, c in gvec.items():
            rho = self.alg.basis_root(idx)
            w = self._weight_of_root(rho) if rho is not None else tuple([Q(0)] * self.nh)
            buckets.setdefault(w, {})[idx] = c
        for w, sub in buckets.items():
            ids = [sid for j in range(self.nu_order)
                   for sid in self._by_weight.get((w, j), [])]
            support = sorted({i for sid in ids for i in self.slots[sid].vec})
            if any(i not in support for i in sub):
                raise ValueError("vector outside the slot span (weight %s)" % (w,))
            mat = [[self.slots[sid].vec.get(i, Q(0)) for sid in ids] for i in support]
            rhs = [sub.get(i, Q(0)) for i in support]
            sol = solve(mat, rhs)
            if sol is None:
                raise ValueError("vector cannot be decomposed into slots")
            for sid, c in zip(ids, sol):
                if c != 0:
                    out[sid] = c
        return out

    def bracket(self, f: LoopElement, g: LoopElement) -> LoopElement:
        f._check(g)
        if f.algebra is not self:
            raise ValueError("element of a different algebra")
        acc: dict = {}
        fparts = f.chev_parts()
        gparts = g.chev_parts()
        for kf, vf in fparts.items():
            for kg, vg in gparts.items():
                br = self.alg.bracket(vf, vg)
                if not br:
                    continue
                for sid, c in self._decompose_gvec(br).items():
                    key = (sid, kf + kg)
                    s = acc.get(key, 0) + c
                    if s:
                        acc[key] = s
                    else:
                        acc.pop(key, None)
        return LoopElement(self, acc)

    def form(self, f: LoopElement, g: LoopElement):
        """B(z^j x, z^k y) = delta_{j+k,0} kappa(x, y)."""
        f._check(g)
        acc = Q(0)
        fparts = f.chev_parts()
        gparts = g.chev_parts()
        for k, vf in fparts.items():
            vg = gparts.get(-k)
            if vg:
                acc += self.alg.killing(vf, vg)
        return acc

    # ------------------------------------------------------------------ roots

    def roots_of_degree(self, k: int) -> list:
        """All sigma-roots (weight, k) at loop degree k, as slot indices."""
        out = []
        for s in self.slots:
            if s.positive is not None and (k - s.sigma_class) % self.m == 0:
                out.append(s.index)
        return out

    def basis_of_degree(self, k: int) -> list[LoopElement]:
        """Basis of the degree-k slice z^k g^sigma_k."""
        out = []
        for s in self.slots:
            if (k - s.sigma_class) % self.m == 0:
                out.append(LoopElement(self, {(s.index, k): Q(1)}))
        return out

    def graded_piece(self, k: int) -> list[Vec]:
        """Basis of the eigenspace g^sigma_k, as g-vectors."""
        return [s.vec for s in self.slots if (k - s.sigma_class) % self.m == 0]

    def basis_up_to(self, d: int) -> list[LoopElement]:
        out: list[LoopElement] = []
        for k in range(-d, d + 1):
            out.extend(self.basis_of_degree(k))
        return out

    def roots_up_to(self, d: Optional[int] = None) -> list[AffineRoot]:
        """All roots (alpha, k) with |k| <= d (default 3m).

        The algebra is infinite-dimensional; every implemented identity
        involves bounded degrees, so enumeration is by window.  Roots
        with alpha = 0 (imaginary directions, k != 0) are included with
        their multiplicity collapsed to one entry.
        """
        if d is None:
            d = 3 * self.m
        out: list[AffineRoot] = []
        seen: set = set()
        for k in range(-d, d + 1):
            for elem in self.basis_of_degree(k):
                (sid, _), = elem.terms
                slot = self.slots[sid]
                if slot.positive is None and k == 0:
                    continue
                root = AffineRoot(slot.weight, k)
                if root not in seen:
                    seen.add(root)
                    out.append(root)
        return out

    def root_positive(self, sid: int, k: int) -> bool:
        """Positivity of the root carried by slot `sid` at degree k."""
        slot = self.slots[sid]
        if slot.positive is None and k == 0:
            raise ValueError("Cartan directions carry no sign")
        nu_k = self.nu_root_degree(sid, k)
        if nu_k > 0:
            return True
        if nu_k < 0:
            return False
        return bool(slot.positive)

    def nu_root_degree(self, sid: int, k: int) -> int:
        """nu-degree of the nu-root regrading to (slot sid, degree k)."""
        slot = self.slots[sid]
        t = (k - slot.nu_base_degree) // self.m if self.m else 0
        assert slot.nu_base_degree + t * self.m == k
        return slot.nu_class + t * self.nu_order

    def root_vector_pair(self, sid: int, k: int) -> tuple[LoopElement, LoopElement]:
        """(b, b_dual) spanning the (root, -root) spaces with B(b, b_dual) = 1."""
        slot = self.slots[sid]
        if slot.positive is None:
            raise ValueError("not a root direction (alpha = 0)")
        wneg = tuple(-x for x in slot.weight)
        # the opposite slot: weight -w, sigma class -k mod m
        cands = [s for j in range(self.nu_order) for s in self._by_weight.get((wneg, j), [])
                 if (-k - self.slots[s].sigma_class) % self.m == 0]
        if len(cands) != 1:
            raise AssertionError("opposite root space not unique")
        dual = self.slots[cands[0]]
        b = LoopElement(self, {(slot.index, k): Q(1)})
        bd = LoopElement(self, {(dual.index, -k): Q(1)})
        pairing = self.form(b, bd)
        if pairing == 0:
            raise AssertionError("degenerate root-space pairing")
        return b, bd.scale(1 / pairing)

    # ------------------------------------------------------------- generators

    def node_root(self, i: int) -> tuple[Weight, int]:
        """The simple root (alpha_i, s_i) of the regraded algebra."""
        return self.node_weights[i], self.sigma.s[i]

    def coroot_element(self, i: int) -> LoopElement:
        """H_i = 2 t_i / B(t_i, t_i) where t_i is the kappa-coroot of node i."""
        coords = self.node_coroots[i]
        nrm = self.coroot_gram[i][i]
        vec = self.cartan_vec([2 * c / nrm for c in coords])
        return self.from_chev(0, vec)

    def generators(self) -> list[dict]:
        """Affine Chevalley generators {X-: , H: , X+: } per node."""
        out = []
        for i in range(len(self.node_weights)):
            w = self.node_weights[i]
            si = self.sigma.s[i]
            j = self.node_nu_degree[i]
            plus_ids = self._by_weight.get((w, j % self.nu_order), [])
            assert len(plus_ids) == 1
            minus_ids = self._by_weight.get((tuple(-x for x in w), (-j) % self.nu_order), [])
            assert len(minus_ids) == 1
            xp = LoopElement(self, {(plus_ids[0], si): Q(1)})
            xm = LoopElement(self, {(minus_ids[0], -si): Q(1)})
            h = self.coroot_element(i)
            # scale X- so that [X+, X-] = H
            br = self.bracket(xp, xm)
            ratio = _element_ratio(br, h)
            out.append({"minus": xm.scale(1 / ratio), "h": h, "plus": xp})
        return out

    # -------------------------------------------------------------- parabolic

    def parabolic_basis(self, S: Iterable[int], d: int) -> list[LoopElement]:
        """Basis of p^S_+ truncated to |degree| <= d.

        p^S_+ = B_+ + N^S_-: the positive Borel plus the negative root
        spaces of roots supported on S.
        """
        S = set(S)
        if S >= set(range(len(self.node_weights))):
            raise ValueError("S must be a proper subset of the affine nodes")
        out = []
        for k in range(-d, d + 1):
            for elem in self.basis_of_degree(k):
                (sid, _), = elem.terms
                slot = self.slots[sid]
                if slot.positive is None and k == 0:
                    out.append(elem)  # Cartan inside the Borel
                    continue
                if self.root_positive(sid, k):
                    out.append(elem)
                    continue
                cs = self.decompose_pair(slot.weight, self.nu_root_degree(sid, k))
                if all(c == 0 for i, c in enumerate(cs) if i not in S):
                    out.append(elem)
        return out

    def in_parabolic(self, f: LoopElement, S: Iterable[int], d: int) -> bool:
        """Membership test for p^S_+ among elements of degree bound d."""
        S = set(S)
        for (sid, k) in f.terms:
            slot = self.slots[sid]
            if slot.positive is None and k == 0:
                continue
            if self.root_positive(sid, k):
                continue
            cs = self.decompose_pair(slot.weight, self.nu_root_degree(sid, k))
            if not all(c == 0 for i, c in enumerate(cs) if i not in S):
                return False
        return True


def _element_ratio(x: LoopElement, y: LoopElement):
    """Scalar c with x = c y (both nonzero, same support)."""
    if x.terms.keys() != y.terms.keys():
        raise ValueError("elements are not proportional")
    ratios = {x.terms[k] / y.terms[k] for k in x.terms}
    if len(ratios) != 1:
        raise ValueError("elements are not proportional")
    return ratios.pop()


def _perm_order(perm: tuple) -> int:
    order = 1
    cur = perm
    ident = tuple(range(len(perm)))
    while cur != ident:
        cur = tuple(perm[i] for i in cur)
        order += 1
    return order


def _perm_orbits(perm: tuple) -> list[list[int]]:
    seen: set = set()
    orbits = []
    for i in range(len(perm)):
        if i in seen:
            continue
        orbit = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            orbit.append(j)
            seen.add(j)
            j = perm[j]
        orbits.append(orbit)
    return orbits


def _perm_root(perm: tuple, r: Root) -> Root:
    out = [0] * len(r)
    for i, c in enumerate(r):
        out[perm[i]] = c
    return tuple(out)


def _eigen_kernel(mat: list, F: ScalarField, j: int, r: int) -> list:
    """Basis of the zeta_r^j eigenspace of a small rational matrix."""
    lam = ScalarField(r).zeta(j)  # rational for r <= 2, else in Q(zeta_r)
    n = len(mat)
    a = [[F.of(mat[i][k]) - lam * F.one() * (1 if i == k else 0) for k in range(n)]
         for i in range(n)]
    return kernel_basis(a, F.of(0), F.of(1))


def _as_int(q) -> int:
    q = Q(q)
    if q.denominator != 1:
        raise AssertionError("expected an integer, got %s" % q)
    return int(q)


_LOOP_CACHE: dict = {}


def loop_algebra(sigma: SigmaType) -> TwistedLoopAlgebra:
    key = (sigma.cartan_type, sigma.s, sigma.nu)
    if key not in _LOOP_CACHE:
        _LOOP_CACHE[key] = TwistedLoopAlgebra(sigma)
    return _LOOP_CACHE[key]


@dataclass
class AffineDiagramData:
    """Affine diagram data without the structure-constant machinery.

    Large-rank classification only needs Cartan-level information; the
    Killing form restricted to the Cartan is the root-sum
    kappa(h, h') = sum_beta beta(h) beta(h'), so everything here derives
    from the bare root system.  Field names mirror TwistedLoopAlgebra so
    the quadruple-condition code runs on either.
    """
    sigma: SigmaType
    nh: int
    h_gram: list
    node_weights: list
    node_coroots: list
    coroot_gram: list
    affine_cartan: list
    marks: list
    m: int


_DIAGRAM_CACHE: dict = {}


def affine_diagram_data(sigma: SigmaType):
    """Light diagram data; falls back to the full algebra for outer nu."""
    key = (sigma.cartan_type, sigma.s, sigma.nu)
    if key in _DIAGRAM_CACHE:
        return _DIAGRAM_CACHE[key]
    if key in _LOOP_CACHE:
        return _LOOP_CACHE[key]
    n = sigma.cartan_type.rank
    if sigma.nu is not None and tuple(sigma.nu) != tuple(range(n)):
        return loop_algebra(sigma)
    from .cartan import build_root_system
    rs = build_root_system(sigma.cartan_type)
    if len(sigma.s) != n + 1:
        raise ValueError("s must have %d entries for this diagram" % (n + 1))
    h_gram = [[Q(sum(rs.pairing(b, i) * rs.pairing(b, j) for b in rs.all_roots))
               for j in range(n)] for i in range(n)]
    theta = rs.highest_root()
    node_weights = [tuple(Q(-rs.pairing(theta, i)) for i in range(n))]
    for i in range(n):
        node_weights.append(tuple(Q(rs.cartan[i][j]) for j in range(n)))
    node_coroots = []
    for w in node_weights:
        sol = solve(h_gram, list(w))
        if sol is None:
            raise AssertionError("singular Cartan Gram matrix")
        node_coroots.append(sol)
    nodes = n + 1

    def form(x, y):
        return sum(x[i] * y[j] * h_gram[i][j] for i in range(n) for j in range(n))

    gram = [[form(node_coroots[i], node_coroots[j]) for j in range(nodes)]
            for i in range(nodes)]
    cart = [[_as_int(2 * gram[i][j] / gram[j][j]) for j in range(nodes)]
            for i in range(nodes)]
    rhs = [-x for x in node_weights[0]]
    mat = [[node_weights[j + 1][t] for j in range(n)] for t in range(n)]
    sol = solve(mat, rhs)
    marks = [1] + [_as_int(x) for x in sol]
    m = sum(a * s for a, s in zip(marks, sigma.s))
    data = AffineDiagramData(sigma, n, h_gram, node_weights, node_coroots,
                             gram, cart, marks, m)
    _DIAGRAM_CACHE[key] = data
    return data
