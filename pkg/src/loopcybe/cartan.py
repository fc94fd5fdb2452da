"""Cartan types and finite root systems.

Roots are integer coefficient vectors over the simple roots, so the
whole root system lives in Z^rank.  The inner product comes from the
symmetrized Cartan matrix with the shortest root length normalized to
(alpha, alpha) = 2 * d_min; only ratios matter downstream (the Killing
form is recomputed from structure constants by exact traces).

Positive roots are ordered by height and then lexicographically; this
ordering is canonical for the whole package (structure constants, basis
serialization, extraspecial pairs all refer to it).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Q = Fraction

Root = tuple[int, ...]

SERIES_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True)
class CartanType:
    series: str
    rank: int

    def __post_init__(self):
        ok = SERIES_RANKS.get(self.series)
        if ok is None:
            raise ValueError("unknown series %r" % (self.series,))
        if not ok(self.rank):
            raise ValueError("rank %d not admissible for series %s" % (self.rank, self.series))

    @staticmethod
    def parse(label: str) -> "CartanType":
        label = label.strip()
        if len(label) < 2 or not label[1:].isdigit():
            raise ValueError("cannot parse Cartan type %r" % (label,))
        return CartanType(label[0].upper(), int(label[1:]))

    def __str__(self) -> str:
        return "%s%d" % (self.series, self.rank)


def cartan_matrix(ct: CartanType) -> list[list[int]]:
    """Cartan matrix a[i][j] = 2(alpha_i, alpha_j)/(alpha_j, alpha_j), 0-indexed.

    Bourbaki numbering: chains run 1..n; B_n has the short root last,
    C_n the long root last, D_n forks at n-2, E_n hangs node 2 off node
    4 of the A-chain 1-3-4-5-..., F4 is 1-2=>3-4, G2 is 1<<=2 with
    alpha_1 short.
    """
    n = ct.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def join(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    s = ct.series
    if s in ("A", "B", "C"):
        for i in range(n - 1):
            join(i, i + 1)
        if s == "B" and n >= 2:
            a[n - 2][n - 1] = -2  # alpha_{n-1} long, alpha_n short
        if s == "C" and n >= 2:
            a[n - 1][n - 2] = -2  # alpha_n long
    elif s == "D":
        for i in range(n - 2):
            join(i, i + 1)
        join(n - 3, n - 1)
    elif s == "E":
        # chain 1-3-4-5-6(-7-8), node 2 attached to node 4  (Bourbaki)
        chain = [0] + list(range(2, n))
        for i, j in zip(chain, chain[1:]):
            join(i, j)
        join(1, 3)
    elif s == "F":
        join(0, 1)
        join(1, 2, aij=-2, aji=-1)
        join(2, 3)
    elif s == "G":
        join(0, 1, aij=-1, aji=-3)
    return a


def symmetrizer(a: list[list[int]]) -> list[Q]:
    """Positive rationals d_i with a_ij d_j = a_ji d_i, normalized to min 1.

    d_i = (alpha_i, alpha_i)/2 up to overall scale, so (a_i, a_j) = d_j a_ij.
    """
    n = len(a)
    d: list[Q | None] = [None] * n
    d[0] = Q(1)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if a[i][j] != 0 and d[i] is not None and d[j] is None:
                    d[j] = d[i] * a[j][i] / a[i][j]
                    changed = True
    if any(x is None for x in d):
        raise ValueError("Cartan matrix is not connected")
    lo = min(d)  # type: ignore[type-var]
    return [x / lo for x in d]  # type: ignore[union-attr]


@dataclass(frozen=True)
class RootSystem:
    cartan_type: CartanType
    cartan: tuple[tuple[int, ...], ...]          # a[i][j] = 2(ai,aj)/(aj,aj)
    d: tuple[Q, ...]                             # half square lengths (ai,ai)/2
    positive_roots: tuple[Root, ...]             # height-then-lex order

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    @property
    def all_roots(self) -> tuple[Root, ...]:
        return self.positive_roots + tuple(neg(r) for r in self.positive_roots)

    def is_root(self, r: Root) -> bool:
        return r in self._root_set()

    def _root_set(self) -> frozenset:
        if not hasattr(self, "_cached_set"):
            object.__setattr__(self, "_cached_set", frozenset(self.all_roots))
        return self._cached_set  # type: ignore[attr-defined]

    def inner(self, x: Root, y: Root) -> Q:
        """(x, y) under the symmetrized form; (ai, aj) = d_j a_ij."""
        acc = Q(0)
        for i, ci in enumerate(x):
            if ci:
                for j, cj in enumerate(y):
                    if cj:
                        acc += ci * cj * self.d[j] * self.cartan[i][j]
        return acc

    def pairing(self, x: Root, j: int) -> int:
        """<x, alpha_j^vee> = 2(x, alpha_j)/(alpha_j, alpha_j), an integer."""
        val = sum(ci * self.cartan[i][j] for i, ci in enumerate(x))
        return int(val)

    def height(self, r: Root) -> int:
        return sum(r)

    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    def p_value(self, alpha: Root, beta: Root) -> int:
        """Largest p with beta - p*alpha a root (the string length down)."""
        p = 0
        cur = sub(beta, alpha)
        while self.is_root(cur):
            p += 1
            cur = sub(cur, alpha)
        return p


def neg(r: Root) -> Root:
    return tuple(-c for c in r)


def add(x: Root, y: Root) -> Root:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Root, y: Root) -> Root:
    return tuple(a - b for a, b in zip(x, y))


def is_positive(r: Root) -> bool:
    for c in r:
        if c:
            return c > 0
    return False


def build_root_system(ct: CartanType) -> RootSystem:
    """Construct the full root system by closing simple roots upward.

    beta + alpha_i is a root iff p - <beta, alpha_i^vee> > 0 where p is
    the length of the alpha_i-string below beta (standard string rule).
    """
    a = cartan_matrix(ct)
    n = ct.rank
    d = symmetrizer(a)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots: set[Root] = set(simple)
    frontier = list(simple)
    while frontier:
        new: list[Root] = []
        for beta in frontier:
            for i in range(n):
                pairing = sum(c * a[k][i] for k, c in enumerate(beta))
                # p = string length below beta in direction alpha_i; only
                # positive roots are stored, which suffices: if beta != alpha_i
                # is positive and beta - alpha_i is a root, it is positive.
                p = 0
                cur = sub(beta, simple[i])
                while cur in roots:
                    p += 1
                    cur = sub(cur, simple[i])
                if p - pairing > 0:
                    cand = add(beta, simple[i])
                    if cand not in roots:
                        roots.add(cand)
                        new.append(cand)
        frontier = new
    ordered = sorted(roots, key=lambda r: (sum(r), r))
    return RootSystem(ct, tuple(tuple(row) for row in a), tuple(d), tuple(ordered))
