"""Affine diagram automorphisms, quadruple equivalence, and the type census.

Two quadruples give regularly equivalent twisted structures exactly when
a diagram automorphism matches their Gamma-data, conjugates gamma, and
maps the t_h family onto the other; this module implements that decision
procedure, orbit enumeration, and the reachability census that decides
which twists can be moved off the affine node (the quasi-trigonometric
question).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

from .bd import (BDQuadruple, D_INDEX, _orbit_escapes, canonical_t_h,
                 th_solution_space)
from .cartan import CartanType
from .linalg import in_span
from .loop import SigmaType, affine_diagram_data

Q = Fraction


def diagram_automorphisms(matrix: list) -> list:
    """All node permutations preserving the (affine) Cartan matrix entrywise."""
    n = len(matrix)
    out: list = []

    def extend(partial: list) -> None:
        k = len(partial)
        if k == n:
            out.append(tuple(partial))
            return
        for cand in range(n):
            if cand in partial:
                continue
            if matrix[k][k] != matrix[cand][cand]:
                continue
            ok = True
            for i, pi in enumerate(partial):
                if matrix[i][k] != matrix[pi][cand] or matrix[k][i] != matrix[cand][pi]:
                    ok = False
                    break
            if ok:
                extend(partial + [cand])

    extend([])
    out.sort()
    return out


def loop_diagram_automorphisms(L) -> list:
    return diagram_automorphisms(L.affine_cartan)


def _theta_on_cartan(L, perm: tuple) -> list:
    """Matrix of the induced map on the fixed Cartan: t_i -> t_{perm(i)}.

    Well-defined because the single relation sum a_i t_i = 0 among the
    node coroots is preserved (marks are permutation-invariant).
    """
    nodes = len(L.node_weights)
    cols = [list(L.node_coroots[i]) for i in range(1, nodes)]
    imgs = [list(L.node_coroots[perm[i]]) for i in range(1, nodes)]
    # node coroots 1..n form a basis of h (the relation involves node 0)
    m = [[cols[c][r] for c in range(len(cols))] for r in range(L.nh)]
    from .linalg import mat_inverse, mat_mul
    minv = mat_inverse(m)
    imat = [[imgs[c][r] for c in range(len(imgs))] for r in range(L.nh)]
    theta = mat_mul(imat, minv)
    # consistency: node 0 must also map correctly
    img0 = [sum(theta[r][t] * L.node_coroots[0][t] for t in range(L.nh))
            for r in range(L.nh)]
    if img0 != list(L.node_coroots[perm[0]]):
        raise AssertionError("diagram automorphism does not act on the Cartan")
    return theta


def act_on_t_h(L, perm: tuple, t_h: dict) -> dict:
    """(theta (x) theta) t_h for a d-free skew tensor over the h-basis."""
    theta = _theta_on_cartan(L, perm)
    nh = L.nh
    acc = [[Q(0)] * nh for _ in range(nh)]
    for (a, b), c in t_h.items():
        if a == D_INDEX or b == D_INDEX:
            raise ValueError("t_h action implemented for d-free tensors only")
        for p in range(nh):
            for q_ in range(nh):
                acc[p][q_] += c * (theta[p][a] * theta[q_][b] - theta[p][b] * theta[q_][a])
    out = {}
    for p in range(nh):
        for q_ in range(p + 1, nh):
            if acc[p][q_]:
                out[(p, q_)] = acc[p][q_]
    return out


def act(perm: tuple, q: BDQuadruple) -> BDQuadruple:
    """theta(Q): relabel Gamma-data and transport t_h."""
    L = affine_diagram_data(q.sigma)
    g1 = frozenset(perm[i] for i in q.gamma1)
    g2 = frozenset(perm[i] for i in q.gamma2)
    gmap = {perm[a]: perm[b] for a, b in q.gamma}
    th = act_on_t_h(L, perm, q.t_h_dict)
    return BDQuadruple.make(q.sigma, g1, g2, gmap, th)


def _t_h_vector(t_h: dict, pairs: list, nh: int) -> list:
    vec = [Q(0)] * len(pairs)
    for (a, b), c in t_h.items():
        a = nh if a == D_INDEX else a
        b = nh if b == D_INDEX else b
        key = (a, b) if a < b else (b, a)
        sgn = 1 if a < b else -1
        vec[pairs.index(key)] += sgn * c
    return vec


def equivalence_witness(qa: BDQuadruple, qb: BDQuadruple) -> Optional[tuple]:
    """A diagram automorphism theta with theta(qa) = qb, or None.

    The t_h comparison is modulo the homogeneous condition-3 family of
    qb (the affine families, not single points, are the invariant data).
    """
    wits = all_equivalence_witnesses(qa, qb)
    return wits[0] if wits else None


def all_equivalence_witnesses(qa: BDQuadruple, qb: BDQuadruple) -> list:
    if qa.sigma != qb.sigma:
        raise ValueError("quadruples live on different diagrams")
    L = affine_diagram_data(qa.sigma)
    group = loop_diagram_automorphisms(L)
    space_b = th_solution_space(qb.sigma, qb.gamma1, qb.gamma2, qb.gamma_map)
    pairs = space_b["pairs"]
    nh = L.nh
    homog = [_t_h_vector(b, pairs, nh) for b in space_b["basis"]]
    out = []
    for perm in group:
        if frozenset(perm[i] for i in qa.gamma1) != qb.gamma1:
            continue
        if frozenset(perm[i] for i in qa.gamma2) != qb.gamma2:
            continue
        if {perm[a]: perm[b] for a, b in qa.gamma} != qb.gamma_map:
            continue
        moved = act_on_t_h(L, perm, qa.t_h_dict)
        diff = dict(moved)
        for k, c in qb.t_h_dict.items():
            diff[k] = diff.get(k, 0) - c
        dv = _t_h_vector({k: v for k, v in diff.items() if v}, pairs, nh)
        if in_span(homog, dv):
            out.append(perm)
    return out


def enumerate_triples(L) -> list:
    """All (Gamma1, Gamma2, gamma) with conditions 1-2 on the diagram."""
    nodes = len(L.node_weights)
    out = []
    for mask in range(2 ** nodes):
        g1 = frozenset(i for i in range(nodes) if mask >> i & 1)
        if len(g1) >= nodes:
            continue
        for gamma in _isometric_maps(L, g1):
            out.append((g1, frozenset(gamma.values()), tuple(sorted(gamma.items()))))
    return sorted(out, key=lambda t: (sorted(t[0]), sorted(t[1]), t[2]))


def _isometric_maps(L, g1: frozenset):
    """Injective coroot-gram isometries gamma on g1 with escaping orbits."""
    nodes = list(range(len(L.node_weights)))
    src = sorted(g1)
    G = L.coroot_gram

    def backtrack(i: int, assigned: list):
        if i == len(src):
            gamma = dict(zip(src, assigned))
            if all(_orbit_escapes(gamma, g1, j) is not None for j in src):
                yield gamma
            return
        for cand in nodes:
            if cand in assigned:
                continue
            if G[src[i]][src[i]] != G[cand][cand]:
                continue
            if all(G[src[i]][src[j]] == G[cand][a] for j, a in enumerate(assigned)):
                yield from backtrack(i + 1, assigned + [cand])

    yield from backtrack(0, [])


def enumerate_representatives(sigma: SigmaType, cap: int = 13) -> list:
    """Orbit representatives of valid triples under the diagram group.

    Returns a list of dicts {"triple", "orbit_size"}; representatives are
    lexicographically minimal in their orbit.
    """
    L = affine_diagram_data(sigma)
    if len(L.node_weights) > cap:
        raise ValueError("diagram exceeds the enumeration cap (%d nodes)" % cap)
    group = loop_diagram_automorphisms(L)
    triples = enumerate_triples(L)
    seen: set = set()
    reps = []

    def key(t):
        g1, g2, gm = t
        return (tuple(sorted(g1)), tuple(sorted(g2)), gm)

    for t in triples:
        if key(t) in seen:
            continue
        orbit = set()
        for perm in group:
            g1, g2, gm = t
            moved = (frozenset(perm[i] for i in g1), frozenset(perm[i] for i in g2),
                     tuple(sorted((perm[a], perm[b]) for a, b in gm)))
            orbit.add(key(moved))
        seen.update(orbit)
        rep = min(orbit)
        reps.append({"triple": rep, "orbit_size": len(orbit)})
    reps.sort(key=lambda r: r["triple"])
    return reps


def quadruples_with_canonical_t_h(sigma: SigmaType) -> list:
    """Every valid triple upgraded with its canonical (d-free) t_h."""
    L = affine_diagram_data(sigma)
    out = []
    for g1, g2, gm in enumerate_triples(L):
        th = canonical_t_h(sigma, g1, g2, dict(gm))
        out.append(BDQuadruple.make(sigma, g1, g2, dict(gm), th))
    return out


# ------------------------------------------------------------------- census


def quasi_trig_reachable(L, gamma1: Iterable[int]) -> tuple:
    """(verdict, witness permutation or None): can Gamma_1 avoid node 0?"""
    g1 = frozenset(gamma1)
    for perm in loop_diagram_automorphisms(L):
        if 0 not in {perm[i] for i in g1}:
            return True, perm
    return False, None


def unreachable_admissible_gamma1(L) -> Optional[dict]:
    """A Gamma_1 supporting a valid quadruple that no automorphism moves
    off the affine node, or None.

    Unreachability means Gamma_1 contains the whole automorphism orbit of
    node 0, so only supersets of that orbit are scanned.
    """
    group = loop_diagram_automorphisms(L)
    orbit0 = sorted({perm.index(0) for perm in group})
    nodes = len(L.node_weights)
    rest = [i for i in range(nodes) if i not in orbit0]
    for mask in range(2 ** len(rest)):
        g1 = frozenset(orbit0) | {rest[i] for i in range(len(rest)) if mask >> i & 1}
        if len(g1) >= nodes:
            continue
        for gamma in _isometric_maps(L, g1):
            try:
                th = th_solution_space(L.sigma, g1, frozenset(gamma.values()), gamma)
            except ValueError:
                continue   # no t_h exists: not a quadruple after all
            return {"gamma1": sorted(g1), "gamma2": sorted(gamma.values()),
                    "gamma": gamma, "t_h_dimension": th["dimension"]}
    return None


def type_census(types: Iterable[str], max_rank: int, cap: int = 13) -> list:
    """Reachability verdict per extended diagram.

    good = every Gamma_1 admitting a valid quadruple is movable off the
    affine node; otherwise a concrete unreachable witness is reported.
    """
    out = []
    for label in types:
        series = label[0].upper()
        ranks = [int(label[1:])] if len(label) > 1 else []
        if not ranks:
            lo = {"A": 1, "B": 2, "C": 2, "D": 3, "E": 6, "F": 4, "G": 2}[series]
            hi = {"E": 8, "F": 4, "G": 2}.get(series, max_rank)
            ranks = [r for r in range(lo, hi + 1) if r <= max_rank]
        for rank in ranks:
            ct = CartanType(series, rank)
            sigma = SigmaType(ct, tuple([1] + [0] * rank))
            L = affine_diagram_data(sigma)
            if len(L.node_weights) > cap:
                raise ValueError("rank too large for exhaustive enumeration")
            wit = unreachable_admissible_gamma1(L)
            out.append({"type": series, "rank": rank, "good": wit is None,
                        "witness_gamma1": wit["gamma1"] if wit else None,
                        "witness": wit})
    return out


def parabolic_restriction_check(qa: BDQuadruple, qb: BDQuadruple,
                                S: Iterable[int]) -> bool:
    """Whether some equivalence witness preserves the node set S.

    Only then does the regular equivalence restrict to an automorphism of
    the parabolic subalgebra attached to S.
    """
    S = frozenset(S)
    if not (qa.gamma1 <= S and qb.gamma1 <= S):
        raise ValueError("Gamma_1 must be contained in S on both sides")
    for perm in all_equivalence_witnesses(qa, qb):
        if frozenset(perm[i] for i in S) == S:
            return True
    return False
