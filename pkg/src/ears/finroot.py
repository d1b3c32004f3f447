"""Finite irreducible reduced root systems in simple-root coordinates.

The form is carried by an integer Gram matrix of the simple roots,
normalized so that short roots have norm 2.  Node labels follow the
Bourbaki conventions: for B the last simple root is the short one, for C
it is the long one, for F4 the first two are long and for G2 the first
simple root is long.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

from .errors import IllegalTypeRank, NotARoot

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}


def parse_type(code: str, rank: int | None = None):
    """Split a code such as "B3" or "E6" (or "B" with an explicit rank)."""
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d*)\s*", str(code))
    if not m:
        raise IllegalTypeRank(f"unknown root system code {code!r}")
    letter, digits = m.group(1).upper(), m.group(2)
    if digits and rank is not None and int(digits) != rank:
        raise IllegalTypeRank(f"code {code} does not match rank {rank}")
    r = int(digits) if digits else rank
    if r is None:
        raise IllegalTypeRank(f"rank missing for type {letter}")
    return letter, r


def _edges_gram(n, norms, edges):
    g = [[0] * n for _ in range(n)]
    for i, a in enumerate(norms):
        g[i][i] = a
    for i, j, v in edges:
        g[i][j] = g[j][i] = v
    return g


def gram_matrix(letter: str, rank: int):
    l = rank
    if letter in _MIN_RANK and l < _MIN_RANK[letter]:
        raise IllegalTypeRank(f"{letter}{l} is not a legal reduced type")
    chain = [(i, i + 1, -1) for i in range(l - 1)]
    if letter == "A":
        return _edges_gram(l, [2] * l, chain)
    if letter == "B":
        norms = [4] * (l - 1) + [2]
        return _edges_gram(l, norms, [(i, i + 1, -2) for i in range(l - 1)])
    if letter == "C":
        norms = [2] * (l - 1) + [4]
        return _edges_gram(l, norms, chain[:-1] + [(l - 2, l - 1, -2)])
    if letter == "D":
        edges = [(i, i + 1, -1) for i in range(l - 2)] + [(l - 3, l - 1, -1)]
        return _edges_gram(l, [2] * l, edges)
    if letter == "E":
        if l not in (6, 7, 8):
            raise IllegalTypeRank(f"E{l} is not a legal type")
        # 1-3-4-5-6-7-8 with 2 attached to 4 (1-based labels)
        edges = [(0, 2, -1), (1, 3, -1)] + [(i, i + 1, -1) for i in range(2, l - 1)]
        return _edges_gram(l, [2] * l, edges)
    if letter == "F":
        if l != 4:
            raise IllegalTypeRank("F only exists in rank 4")
        return _edges_gram(4, [4, 4, 2, 2], [(0, 1, -2), (1, 2, -2), (2, 3, -1)])
    if letter == "G":
        if l != 2:
            raise IllegalTypeRank("G only exists in rank 2")
        return _edges_gram(2, [6, 2], [(0, 1, -3)])
    raise IllegalTypeRank(f"unknown type {letter}")


class Length(str, Enum):
    short = "short"
    long = "long"


@dataclass(frozen=True)
class FiniteRootSystem:
    letter: str
    rank: int
    gram: tuple
    roots: tuple = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.letter}{self.rank}"

    @property
    def xtype(self) -> str:
        return self.name if self.letter in "EFG" else self.letter

    def pair(self, x, y) -> int:
        g = self.gram
        return sum(x[i] * g[i][j] * y[j] for i in range(self.rank) for j in range(self.rank) if x[i] and y[j])

    def norm(self, x) -> int:
        return self.pair(x, x)

    @cached_property
    def k(self) -> int:
        return max(self.gram[i][i] for i in range(self.rank)) // 2

    @property
    def simply_laced(self) -> bool:
        return self.k == 1

    @cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.roots)

    @cached_property
    def short_roots(self) -> tuple:
        return tuple(r for r in self.roots if self.norm(r) == 2)

    @cached_property
    def long_roots(self) -> tuple:
        if self.simply_laced:
            return ()
        return tuple(r for r in self.roots if self.norm(r) == 2 * self.k)

    def length(self, r) -> Length:
        if tuple(r) not in self.root_set:
            raise NotARoot(f"{tuple(r)} is not a root of {self.name}")
        return Length.short if self.norm(r) == 2 else Length.long

    def simple_roots(self) -> tuple:
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    def cartan_integer(self, beta, alpha) -> int:
        """<beta, alpha^vee> = 2(beta, alpha)/(alpha, alpha)."""
        q, r = divmod(2 * self.pair(beta, alpha), self.norm(alpha))
        if r:
            raise ValueError("non-integral Cartan number")
        return q

    def cartan_matrix(self):
        s = self.simple_roots()
        return [[self.cartan_integer(a, b) for b in s] for a in s]

    def reflect(self, alpha, beta) -> tuple:
        c = self.cartan_integer(beta, alpha)
        return tuple(b - c * a for a, b in zip(alpha, beta))

    @staticmethod
    def height(r) -> int:
        return sum(r)


def _closure(frs_rank, gram, simple):
    tmp = FiniteRootSystem("?", frs_rank, gram, ())
    seen = set(simple) | {tuple(-a for a in s) for s in simple}
    frontier = list(seen)
    while frontier:
        nxt = []
        for b in frontier:
            for a in simple:
                c = tmp.reflect(a, b)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return tuple(sorted(seen, key=lambda r: (-sum(r), tuple(-x for x in r))))


def build_finite(xtype: str, rank: int | None = None) -> FiniteRootSystem:
    """Build a finite root system from a code ("A", 3) or "E6"."""
    letter, r = parse_type(xtype, rank)
    gram = tuple(tuple(row) for row in gram_matrix(letter, r))
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    roots = _closure(r, gram, simple)
    return FiniteRootSystem(letter, r, gram, roots)


def highest_roots(frs: FiniteRootSystem):
    """(theta_s, theta_l); theta_l is None for simply laced systems."""
    def top(rs):
        return max(rs, key=lambda r: (sum(r), r)) if rs else None
    return top(frs.short_roots), top(frs.long_roots)


def positive_roots(frs: FiniteRootSystem):
    return tuple(r for r in frs.roots if sum(r) > 0)


# ---------------------------------------------------------------- oracles

class FiniteVerdict(str, Enum):
    Base = "Base"
    SetNotBase = "SetNotBase"
    NotSet = "NotSet"


def _check_roots(frs, P):
    P = [tuple(p) for p in P]
    for p in P:
        if p not in frs.root_set:
            raise NotARoot(f"{p} is not a root of {frs.name}")
    return P


def orbit_closure(frs: FiniteRootSystem, P) -> frozenset:
    """W_P . P computed by saturation."""
    P = _check_roots(frs, P)
    seen = set(P)
    frontier = list(P)
    while frontier:
        nxt = []
        for b in frontier:
            for a in P:
                c = frs.reflect(a, b)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return frozenset(seen)


def is_finite_reflectable_set(frs, P) -> bool:
    return bool(P) and orbit_closure(frs, P) == frs.root_set


def finite_reflectable_oracle(frs: FiniteRootSystem, P) -> FiniteVerdict:
    """Brute force: is P a reflectable base, a reflectable set, or neither.

    Being a reflectable set is inherited by supersets, so it is enough to
    test the removal of each single element.
    """
    P = list(dict.fromkeys(_check_roots(frs, P)))
    if not is_finite_reflectable_set(frs, P):
        return FiniteVerdict.NotSet
    for i in range(len(P)):
        if is_finite_reflectable_set(frs, P[:i] + P[i + 1:]):
            return FiniteVerdict.SetNotBase
    return FiniteVerdict.Base


def _perm_of(frs, alpha):
    idx = {r: i for i, r in enumerate(frs.roots)}
    return [idx[frs.reflect(alpha, r)] for r in frs.roots]


def weyl_subgroup_order(frs: FiniteRootSystem, P) -> int:
    """Order of the group generated by the reflections in P (as root permutations)."""
    from sympy.combinatorics import Permutation, PermutationGroup

    P = _check_roots(frs, P)
    n = len(frs.roots)
    if not P:
        return 1
    return int(PermutationGroup([Permutation(_perm_of(frs, a), size=n) for a in P]).order())


def weyl_order(frs: FiniteRootSystem) -> int:
    return weyl_subgroup_order(frs, frs.simple_roots())


def generates_weyl(frs: FiniteRootSystem, P) -> bool:
    return weyl_subgroup_order(frs, P) == weyl_order(frs)


def finite_min_gen_oracle(frs: FiniteRootSystem, P) -> bool:
    """True iff the reflections in P generate W and no proper subset does."""
    P = list(dict.fromkeys(_check_roots(frs, P)))
    if not generates_weyl(frs, P):
        return False
    return not any(generates_weyl(frs, P[:i] + P[i + 1:]) for i in range(len(P)))
