"""Exact integer lattice arithmetic.

Sublattices of Z^n are kept in row Hermite normal form: an echelon
matrix with positive pivots and the entries above each pivot reduced
into [0, pivot).  That form is unique for a given span, so equality of
sublattices is equality of tuples.  Elementary divisors come from the
Smith form computed by sympy.

Semilattices are stored by their supporting class: a set of 0/1 vectors
J such that S is the union of the cosets tau_J + 2Z^nu.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterable, Sequence

from .errors import (ContainmentViolation, DimensionMismatch, MissingZero,
                     NotSpanning, PreconditionViolation)

IntVector = tuple  # tuple of ints


def _check_dims(vectors, n):
    for v in vectors:
        if len(v) != n:
            raise DimensionMismatch(f"vector {tuple(v)} has length {len(v)}, expected {n}")


def hermite_rows(rows: Iterable[Sequence[int]], n: int) -> tuple:
    """Row Hermite normal form of the integer span of ``rows``."""
    work = [list(r) for r in rows if any(r)]
    out = []
    for col in range(n):
        live = [r for r in work if r[col] != 0]
        if not live:
            continue
        rest = [r for r in work if r[col] == 0]
        # Euclid on the column until a single nonzero entry is left
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append(piv)
        work = rest
    # reduce above the pivots
    for i, row in enumerate(out):
        col = next(c for c, a in enumerate(row) if a)
        p = row[col]
        for j in range(i):
            q = out[j][col] // p
            if q:
                out[j] = [a - q * b for a, b in zip(out[j], row)]
    return tuple(tuple(r) for r in out)


@dataclass(frozen=True)
class Sublattice:
    """A sublattice of Z^n given by its canonical generator rows."""
    ambient_dim: int
    hnf: tuple

    @property
    def rank(self) -> int:
        return len(self.hnf)

    @property
    def pivots(self) -> tuple:
        return tuple(next(c for c, a in enumerate(r) if a) for r in self.hnf)

    def is_full(self) -> bool:
        return self.rank == self.ambient_dim

    def index(self) -> int:
        """|Z^n / self|, or 0 when the rank is deficient."""
        if not self.is_full():
            return 0
        d = 1
        for r, c in zip(self.hnf, self.pivots):
            d *= r[c]
        return d

    def reduce(self, v: Sequence[int]) -> tuple:
        """Canonical representative of the coset v + self."""
        v = list(v)
        for r, c in zip(self.hnf, self.pivots):
            q = v[c] // r[c]
            if q:
                v = [a - q * b for a, b in zip(v, r)]
        return tuple(v)

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length does not match the lattice")
        return not any(self.reduce(v))

    def contains_lattice(self, other: "Sublattice") -> bool:
        return all(self.contains(r) for r in other.hnf)

    def __add__(self, other: "Sublattice") -> "Sublattice":
        return hnf_span(list(self.hnf) + list(other.hnf), self.ambient_dim)

    def scaled(self, c: int) -> "Sublattice":
        return hnf_span([[c * a for a in r] for r in self.hnf], self.ambient_dim)

    def coordinates(self, v: Sequence[int]) -> tuple:
        """Integer coordinates of v in the hnf rows (v must lie in the lattice)."""
        v = list(v)
        coeffs = []
        for r, c in zip(self.hnf, self.pivots):
            q, rem = divmod(v[c], r[c])
            if rem:
                raise ContainmentViolation(f"{tuple(v)} is not in the lattice")
            coeffs.append(q)
            v = [a - q * b for a, b in zip(v, r)]
        if any(v):
            raise ContainmentViolation("vector is not in the lattice")
        return tuple(coeffs)

    def to_json(self):
        return [list(r) for r in self.hnf]


def hnf_span(gens: Iterable[Sequence[int]], ambient_dim: int) -> Sublattice:
    gens = [tuple(g) for g in gens]
    _check_dims(gens, ambient_dim)
    return Sublattice(ambient_dim, hermite_rows(gens, ambient_dim))


def full_lattice(n: int) -> Sublattice:
    return hnf_span([tuple(int(i == j) for j in range(n)) for i in range(n)], n)


def generates(gens: Iterable[Sequence[int]], target: Sublattice) -> bool:
    """True iff the span of ``gens`` is exactly ``target``."""
    return hnf_span(gens, target.ambient_dim) == target


def quotient_invariants(a: Sublattice, b: Sublattice) -> list:
    """Elementary divisors of a/b (entries > 1), with a 0 for each free summand."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import invariant_factors

    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("lattices live in different dimensions")
    if not a.contains_lattice(b):
        raise ContainmentViolation("second lattice is not contained in the first")
    free = a.rank - b.rank
    if b.rank == 0:
        return [0] * free
    coords = Matrix([list(a.coordinates(r)) for r in b.hnf])
    inv = [int(x) for x in invariant_factors(coords, domain=ZZ)]
    return [d for d in inv if abs(d) != 1] + [0] * free


class BasisVerdict(str, Enum):
    IsBasis = "IsBasis"
    NotSpanning = "NotSpanning"
    Dependent = "Dependent"
    Duplicate = "Duplicate"


def _prime_power_dim(order: int, p: int) -> int:
    d = 0
    while order > 1:
        if order % p:
            raise PreconditionViolation("quotient is not elementary abelian")
        order //= p
        d += 1
    return d


def zp_basis_verdict(vectors, a: Sublattice, b: Sublattice, p: int = 2) -> BasisVerdict:
    """Classify the images of ``vectors`` in the elementary abelian p-group a/b."""
    vectors = [tuple(v) for v in vectors]
    _check_dims(vectors, a.ambient_dim)
    if not a.contains_lattice(b):
        raise PreconditionViolation("b is not contained in a")
    if not b.contains_lattice(a.scaled(p)):
        raise PreconditionViolation(f"{p}a is not contained in b")
    for v in vectors:
        if not a.contains(v):
            raise PreconditionViolation(f"{v} does not lie in a")
    reps = [b.reduce(v) for v in vectors]
    if len(set(reps)) < len(reps):
        return BasisVerdict.Duplicate
    if b + hnf_span(vectors, a.ambient_dim) != a:
        return BasisVerdict.NotSpanning
    if a.rank != b.rank:
        raise PreconditionViolation("quotient is infinite")
    dim = _prime_power_dim(b.index() // a.index() if a.is_full() else _index_in(a, b), p)
    if len(vectors) != dim:
        return BasisVerdict.Dependent
    return BasisVerdict.IsBasis


def _index_in(a: Sublattice, b: Sublattice) -> int:
    n = 1
    for d in quotient_invariants(a, b):
        n *= d
    return n


def z2_basis_verdict(vectors, a: Sublattice, b: Sublattice) -> BasisVerdict:
    return zp_basis_verdict(vectors, a, b, 2)


# ---------------------------------------------------------------- semilattices

def _z2_rank(vectors) -> int:
    rows = [int("".join(str(x & 1) for x in v), 2) for v in vectors if any(x & 1 for x in v)]
    rank = 0
    while rows:
        piv = max(rows)
        rows.remove(piv)
        if piv == 0:
            continue
        rank += 1
        top = piv.bit_length() - 1
        rows = [r ^ piv if (r >> top) & 1 else r for r in rows]
        rows = [r for r in rows if r]
    return rank


@dataclass(frozen=True)
class Semilattice:
    """S = union of tau_J + 2Z^nu over J in supp, stored as 0/1 tuples."""
    nu: int
    supp: frozenset

    @property
    def index(self) -> int:
        return len(self.supp) - 1

    def is_lattice(self) -> bool:
        return len(self.supp) == 2 ** self.nu

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.nu:
            raise DimensionMismatch(f"expected a vector of length {self.nu}")
        return tuple(x % 2 for x in v) in self.supp

    def classes(self) -> list:
        """Nonzero supp classes ordered by size, then lexicographically by index set."""
        def key(J):
            idx = tuple(i for i, x in enumerate(J) if x)
            return (len(idx), idx)
        return sorted((J for J in self.supp if any(J)), key=key)

    def to_json(self):
        return {"nu": self.nu,
                "supp": [[i + 1 for i, x in enumerate(J) if x]
                         for J in [tuple([0] * self.nu)] + self.classes()]}

    def __repr__(self):
        return f"Semilattice(nu={self.nu}, supp={self.to_json()['supp']})"


def _as_bits(J, nu):
    if isinstance(J, (set, frozenset, list, tuple)) and all(isinstance(x, int) for x in J) \
            and len(J) == nu and all(x in (0, 1) for x in J) and not _looks_like_index_set(J, nu):
        return tuple(J)
    bits = [0] * nu
    for r in J:
        if not 1 <= r <= nu:
            raise DimensionMismatch(f"index {r} outside 1..{nu}")
        bits[r - 1] = 1
    return tuple(bits)


def _looks_like_index_set(J, nu):
    # a list such as [1] with nu=1 is ambiguous; we treat lists as index sets
    # unless they are tuples of the full length
    return isinstance(J, (list, set, frozenset))


def semilattice_validate(nu: int, supp) -> Semilattice:
    """Build a semilattice from index sets (1-based) or 0/1 tuples.

    Raises MissingZero when the empty class is absent and NotSpanning when
    the classes do not span Z_2^nu.
    """
    if nu < 0:
        raise PreconditionViolation("nu must be non-negative")
    bits = frozenset(_as_bits(J, nu) for J in supp)
    zero = tuple([0] * nu)
    if zero not in bits:
        raise MissingZero("the supporting class must contain the empty set (0 in S)")
    if _z2_rank(bits) != nu:
        raise NotSpanning("the supporting class does not span Z_2^nu")
    return Semilattice(nu, bits)


def semilattice_contains(s: Semilattice, v: Sequence[int]) -> bool:
    return s.contains(v)


def lattice_semilattice(nu: int) -> Semilattice:
    return Semilattice(nu, frozenset(product((0, 1), repeat=nu)))


def minimal_semilattice(nu: int, index: int | None = None) -> Semilattice:
    """{0} plus the coordinate classes, then further classes in a fixed order."""
    index = nu if index is None else index
    if not nu <= index <= 2 ** nu - 1 and not (nu == 0 and index == 0):
        raise PreconditionViolation(f"index {index} impossible for rank {nu}")
    zero = tuple([0] * nu)
    singles = [tuple(int(i == j) for j in range(nu)) for i in range(nu)]
    others = sorted((J for J in product((0, 1), repeat=nu) if sum(J) > 1),
                    key=lambda J: (sum(J), tuple(i for i, x in enumerate(J) if x)))
    supp = [zero] + singles + others[: index - nu]
    return Semilattice(nu, frozenset(supp))


def semilattice_from_json(obj, nu: int | None = None) -> Semilattice:
    """Accepts {"nu": n, "supp": [...]}; ``nu`` fills in a missing "nu" key."""
    return semilattice_validate(int(obj.get("nu", nu)), [list(J) for J in obj["supp"]])
