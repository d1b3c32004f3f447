"""Reflectable sets and bases, and the classes M_r, M_m, M_c.

Recognition works on exact coset classes.  Every coset lattice used here
contains 2k Z^nu on the isotropic coordinates, so the classes met by
R_sh or R_lg are found by running over finite roots and residues mod 2k.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, product
from typing import Iterable, Sequence

from .earoot import ExtAffineRootSystem, Root, connectivity, index_of, table1_base
from .errors import NoFiniteBase, PreconditionViolation, TypeNotCovered
from .finroot import FiniteVerdict, finite_reflectable_oracle, orbit_closure
from .lattice import BasisVerdict, Sublattice, hnf_span, zp_basis_verdict
from .weyl import HyperbolicSpace, NotFound, bounded_word_search, orbit_criterion_available, same_orbit_class


def _dedupe(P) -> list:
    return list(dict.fromkeys(P))


def _classes(ears: ExtAffineRootSystem, fins, lat: Sublattice) -> frozenset:
    """Classes modulo ``lat`` met by the nonisotropic roots over the finite parts ``fins``."""
    out = set()
    for f in fins:
        for r in ears.iso_classes(f):
            out.add(lat.reduce(tuple(f) + r))
    return frozenset(out)


def _cover(ears, P, fins, lat, disjoint: bool) -> bool:
    """R_X = union over P_X of (alpha + lat) cap R_X, as a union or a disjoint union."""
    reps = [lat.reduce(p.vector) for p in P]
    if disjoint and len(set(reps)) != len(reps):
        return False
    return set(reps) == _classes(ears, fins, lat)


def lattice_generated(ears: ExtAffineRootSystem, P) -> bool:
    return hnf_span([p.vector for p in P], ears.dim) == ears.lattice_R


def _split(ears, P):
    sh = [p for p in P if ears.is_short(p)]
    lg = [p for p in P if not ears.is_short(p)]
    return sh, lg


def _recognize(ears: ExtAffineRootSystem, P, base: bool) -> bool:
    P = _dedupe(ears.require_nonisotropic(P))
    if not P or not lattice_generated(ears, P):
        return False
    f = ears.finite
    ok_basis = (BasisVerdict.IsBasis,) if base else (BasisVerdict.IsBasis, BasisVerdict.Dependent)

    def zp(vecs, a, b):
        v = zp_basis_verdict([x.vector for x in vecs], a, b, p=ears.k)
        if v is BasisVerdict.Duplicate and not base:
            # a repeated class still spans as well as the distinct ones do
            seen = {}
            for x in vecs:
                seen.setdefault(b.reduce(x.vector), x)
            v = zp_basis_verdict([x.vector for x in seen.values()], a, b, p=ears.k)
        return v in ok_basis

    if f.letter == "A" and f.rank == 1:
        return _cover(ears, P, f.roots, ears.lattice_R.scaled(2), base)
    if f.simply_laced:
        if not base:
            return True
        return not any(lattice_generated(ears, P[:i] + P[i + 1:]) for i in range(len(P)))
    sh, lg = _split(ears, P)
    R_sh, R_lg, k = ears.lattice_short, ears.lattice_long, ears.k
    if f.letter == "B" and f.rank == 2:
        return (_cover(ears, sh, f.short_roots, R_lg, base)
                and _cover(ears, lg, f.long_roots, R_sh.scaled(2), base))
    if f.letter == "B":
        return _cover(ears, sh, f.short_roots, R_lg, base) and zp(lg, R_lg, R_sh.scaled(2))
    if f.letter == "C":
        return _cover(ears, lg, f.long_roots, R_sh.scaled(2), base) and zp(sh, R_sh, R_lg)
    # F4 and G2: both quotients are elementary abelian k-groups
    return zp(sh, R_sh, R_lg) and zp(lg, R_lg, R_sh.scaled(k))


def is_reflectable_set(ears: ExtAffineRootSystem, P: Iterable[Root]) -> bool:
    """Union-and-spanning form of the recognition criteria."""
    return _recognize(ears, list(P), base=False)


def is_reflectable_base(ears: ExtAffineRootSystem, P: Iterable[Root]) -> bool:
    """Disjoint-union-and-basis form of the recognition criteria."""
    return _recognize(ears, list(P), base=True)


def expected_cardinality(ears: ExtAffineRootSystem):
    """(|P|, |P_sh|, |P_lg|) shared by all reflectable bases; None entries for A1."""
    f = ears.finite
    l, nu, t = f.rank, ears.nu, ears.t
    if ears.S2 is None:
        raise PreconditionViolation("cardinalities need the semilattice data S1, S2")
    if f.letter == "A" and l == 1:
        return (1 + ears.S2.index, None, None)
    if f.simply_laced:
        raise TypeNotCovered(f"{f.name}: reflectable bases need not share a cardinality")
    i1, i2 = ears.S1.index, ears.S2.index
    if f.letter == "B" and l == 2:
        return (2 + i1 + i2, 1 + i1, 1 + i2)
    if f.letter == "B":
        return (l + i1 + (nu - t), 1 + i1, (l - 1) + (nu - t))
    if f.letter == "C":
        return (l + t + i2, (l - 1) + t, 1 + i2)
    if f.letter == "F":
        return (4 + nu, 2 + t, 2 + (nu - t))
    return (2 + nu, 1 + t, 1 + (nu - t))


# ---------------------------------------------------------------- minimality of R

class Minimality(str, Enum):
    Minimal = "Minimal"
    Unknown = "Unknown"


def minimality_report(ears: ExtAffineRootSystem):
    """(Minimal, reason) when a known sufficient condition applies, else (Unknown, None)."""
    f = ears.finite
    if ears.nu <= 2:
        return Minimality.Minimal, "nullity <= 2"
    if f.simply_laced and f.rank > 1:
        return Minimality.Minimal, "simply laced rank > 1"
    if f.letter in "FG":
        return Minimality.Minimal, "type F4 or G2"
    if f.letter in "ABC" and ears.S2 is not None and index_of(ears) == 0:
        return Minimality.Minimal, "ind(R) = 0 with type A1, B or C"
    return Minimality.Unknown, None


# ---------------------------------------------------------------- parity vectors

def _parity_maps(ears: ExtAffineRootSystem, P: Sequence[Root]):
    """Named Z_2-valued homomorphisms on W, each given on reflections."""
    maps = [("det", lambda a: 1)]
    f = ears.finite
    if not f.simply_laced:
        maps.append(("Psi(short)", lambda a: int(ears.is_short(a))))
    if f.letter == "B":
        Llat = ears.lattice_of_L()
        for i in range(1, ears.t + 1):
            def psi(a, i=i):
                if not ears.is_short(a):
                    return 0
                v = list(a.iso)
                v[i - 1] -= 1
                return int(Llat.contains(tuple(v)))
            maps.append((f"psi_{i}", psi))
    if orbit_criterion_available(ears) and minimality_report(ears)[0] is Minimality.Minimal:
        reps = []
        for p in P:
            if not any(same_orbit_class(ears, p, r) for r in reps):
                reps.append(p)
        for r in reps:
            maps.append((f"Phi[{r.label()}]", lambda a, r=r: int(same_orbit_class(ears, a, r))))
    return maps


def _separating_functional(vecs, target):
    """Indices of components whose sum vanishes on vecs but not on target, or None."""
    m = len(target)
    if m > 18:
        return None
    for mask in range(1, 1 << m):
        if sum(target[i] for i in range(m) if mask >> i & 1) % 2 == 0:
            continue
        if all(sum(v[i] for i in range(m) if mask >> i & 1) % 2 == 0 for v in vecs):
            return [i for i in range(m) if mask >> i & 1]
    return None


# ---------------------------------------------------------------- classification

class Verdict(str, Enum):
    Yes = "Yes"
    No = "No"
    Unknown = "Unknown"


@dataclass
class Removal:
    status: str  # CertifiedNecessary, CertifiedRedundant, Unknown
    reason: str
    witness: list | None = None

    def to_json(self):
        d = {"status": self.status, "reason": self.reason}
        if self.witness is not None:
            d["witness"] = [r.to_json() for r in self.witness]
            d["witness_labels"] = [r.label() for r in self.witness]
        return d


@dataclass
class Classification:
    reflectable_set: bool
    reflectable_base: bool
    generates_W: Verdict
    removals: dict
    m_m: Verdict
    m_m_certificate: str
    m_c: Verdict
    m_c_certificate: str
    cardinality: int
    notes: list = field(default_factory=list)

    @property
    def m_r(self) -> Verdict:
        return Verdict.Yes if self.reflectable_base else Verdict.No

    def to_json(self):
        return {
            "reflectable_set": self.reflectable_set,
            "reflectable_base": self.reflectable_base,
            "M_r": self.m_r.value,
            "generates_W": self.generates_W.value,
            "removals": [{"root": r.to_json(), "label": r.label(), **v.to_json()} for r, v in self.removals.items()],
            "M_m": self.m_m.value, "M_m_certificate": self.m_m_certificate,
            "M_c": self.m_c.value, "M_c_certificate": self.m_c_certificate,
            "cardinality": self.cardinality,
            "notes": self.notes,
        }


def _removal(ears, space, P, i, maps, vecs, maxlen, hints):
    alpha = P[i]
    Q = P[:i] + P[i + 1:]
    for word in hints.get(alpha, []):
        if all(w in Q for w in word) and space.word_eval(word) == space.reflection(alpha):
            return Removal("CertifiedRedundant", f"verified word of length {len(word)}", list(word))
    if not Q:
        return Removal("CertifiedNecessary", "empty remainder generates the trivial group")
    if not lattice_generated(ears, Q):
        return Removal("CertifiedNecessary", "lattice: <P minus alpha> != <R>")
    if not connectivity(Q, ears):
        return Removal("CertifiedNecessary", "P minus alpha is not connected")
    fn = _separating_functional([vecs[j] for j in range(len(P)) if j != i], vecs[i])
    if fn is not None:
        names = " + ".join(maps[c][0] for c in fn)
        return Removal("CertifiedNecessary", f"parity: {names} vanishes on P minus alpha but not on alpha")
    found = bounded_word_search(space, space.reflection(alpha), Q, maxlen=maxlen)
    if isinstance(found, NotFound):
        if found.exhausted and found.closed:
            return Removal("CertifiedNecessary", "the subgroup generated by P minus alpha was enumerated")
        return Removal("Unknown", f"no word of length <= {maxlen}")
    return Removal("CertifiedRedundant", f"word of length {len(found)}", found)


def _generates(ears, space, P, maps, maxlen):
    """Does W_P = W?  Yes via reflectable set or words for a known generating set."""
    if is_reflectable_set(ears, P):
        return Verdict.Yes, "P is a reflectable set"
    if not lattice_generated(ears, P):
        return Verdict.No, "lattice: <P> != <R>"
    if not connectivity(P, ears):
        return Verdict.No, "P is not connected"
    vecs = [[m(p) for _, m in maps] for p in P]
    gens = table1_base(ears) if ears.S2 is not None else None
    if gens is None:
        return Verdict.Unknown, "no reference generating set"
    for g in gens:
        fn = _separating_functional(vecs, [m(g) for _, m in maps])
        if fn is not None:
            return Verdict.No, f"parity map misses {g.label()}"
    for g in gens:
        if g in P:
            continue
        found = bounded_word_search(space, space.reflection(g), P, maxlen=maxlen)
        if isinstance(found, NotFound):
            if found.exhausted and found.closed:
                return Verdict.No, f"w_{g.label()} is outside the enumerated subgroup"
            return Verdict.Unknown, f"no word for w_{g.label()} within length {maxlen}"
    return Verdict.Yes, "words found for every reflection of a generating set"


def classify(ears: ExtAffineRootSystem, P: Iterable[Root], search_maxlen: int = 10,
             witness_hints: dict | None = None) -> Classification:
    """Fill the M_r / M_m / M_c verdicts with machine-checkable certificates.

    ``witness_hints`` maps a root of P to candidate words in the other
    roots; a candidate is used as the redundancy certificate if it checks out.
    """
    P = _dedupe(ears.require_nonisotropic(list(P)))
    hints = witness_hints or {}
    space = HyperbolicSpace(ears)
    refl_set = is_reflectable_set(ears, P)
    refl_base = refl_set and is_reflectable_base(ears, P)
    maps = _parity_maps(ears, P)
    vecs = [[m(p) for _, m in maps] for p in P]
    gen, gen_reason = _generates(ears, space, P, maps, search_maxlen)
    notes = []
    removals = {}
    for i, alpha in enumerate(P):
        removals[alpha] = _removal(ears, space, P, i, maps, vecs, search_maxlen, hints)

    dim = ears.ell + ears.nu
    minimal, why = minimality_report(ears)
    statuses = [r.status for r in removals.values()]
    if gen is Verdict.No:
        m_m, m_m_cert = Verdict.No, f"P does not generate W ({gen_reason})"
    elif "CertifiedRedundant" in statuses:
        red = [a for a, r in removals.items() if r.status == "CertifiedRedundant"]
        alpha = next((a for a in red if a in hints), red[0])
        m_m, m_m_cert = Verdict.No, f"w_{alpha.label()} is a word in the other reflections"
    elif gen is Verdict.Yes and all(s == "CertifiedNecessary" for s in statuses):
        m_m, m_m_cert = Verdict.Yes, "every removal is certified necessary"
    elif refl_base and len(P) == dim:
        m_m, m_m_cert = Verdict.Yes, "reflectable base with l+nu elements"
    elif refl_base and minimal is Minimality.Minimal:
        m_m, m_m_cert = Verdict.Yes, f"reflectable base of a minimal system ({why})"
    else:
        m_m, m_m_cert = Verdict.Unknown, "some removal could not be decided"

    c_known = ears.S2 is not None and index_of(ears) == 0
    if m_m is Verdict.No:
        m_c, m_c_cert = Verdict.No, "not in M_m"
    elif gen is Verdict.Yes and len(P) == dim:
        m_c, m_c_cert = Verdict.Yes, "generates W with l+nu elements, the lower bound"
    elif c_known and len(P) > dim:
        m_c, m_c_cert = Verdict.No, f"|P| = {len(P)} > c = l+nu = {dim}"
    else:
        m_c, m_c_cert = Verdict.Unknown, "minimal generating cardinality not determined"
    if refl_base and minimal is Minimality.Minimal and m_m is not Verdict.Yes:
        notes.append("inconsistent: reflectable base of a minimal system not certified in M_m")
    return Classification(refl_set, refl_base, gen, removals, m_m, m_m_cert, m_c, m_c_cert, len(P), notes)


# ---------------------------------------------------------------- finite part

def extract_finite(ears: ExtAffineRootSystem, P: Iterable[Root]):
    """Pick a subset of P whose finite parts form a base of the finite root system.

    Returns (subset, closure of its finite parts).
    """
    P = _dedupe(ears.require_nonisotropic(list(P)))
    f = ears.finite
    for combo in combinations(range(len(P)), f.rank):
        fins = [P[i].fin for i in combo]
        if len(set(fins)) < len(fins):
            continue
        if finite_reflectable_oracle(f, fins) is FiniteVerdict.Base:
            sub = [P[i] for i in combo]
            return sub, sorted(orbit_closure(f, fins))
    raise NoFiniteBase("no subset projects onto a base of the finite root system")
