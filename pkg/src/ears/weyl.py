"""The extended affine Weyl group acting on V_dot + V0 + (V0)*.

Vectors use the basis (alpha_1..alpha_l, sigma_1..sigma_nu, lambda_1..lambda_nu)
with (sigma_i, lambda_j) = delta_ij.  Internally every element is an integer
matrix on the rescaled basis (alpha, sigma, k*lambda): reflections in roots
and the central maps c_ij are integral there, which keeps products cheap
and exact.  Public matrices are Fractions on the unscaled basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .earoot import ExtAffineRootSystem, Root
from .errors import (DomainConstraintViolated, IndexOutOfRange, IsotropicRoot,
                     PreconditionViolation, RootOutsideSystem, UnsupportedOrbitCriterion)
from .lattice import hnf_span

MAX_SEARCH_LEN = 16


@dataclass(frozen=True)
class WeylElement:
    """An element of GL(V~) stored as an integer matrix on the scaled basis."""
    m: np.ndarray
    k: int
    ell: int
    nu: int

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.m @ other.m, self.k, self.ell, self.nu)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and np.array_equal(self.m, other.m)

    def __hash__(self):
        return hash(self.m.tobytes())

    def key(self) -> bytes:
        return self.m.tobytes()

    def is_identity(self) -> bool:
        return np.array_equal(self.m, np.eye(len(self.m), dtype=self.m.dtype))

    def inverse(self) -> "WeylElement":
        # these matrices have determinant +-1, so the adjugate is integral
        inv = np.linalg.inv(self.m.astype(float))
        r = np.rint(inv).astype(np.int64)
        if not np.array_equal(self.m @ r, np.eye(len(self.m), dtype=np.int64)):
            raise ArithmeticError("matrix is not unimodular")
        return WeylElement(r, self.k, self.ell, self.nu)

    def __pow__(self, n: int) -> "WeylElement":
        base = self if n >= 0 else self.inverse()
        out = WeylElement(np.eye(len(self.m), dtype=np.int64), self.k, self.ell, self.nu)
        for _ in range(abs(n)):
            out = out * base
        return out

    def matrix(self) -> list:
        """Exact matrix on the basis (alpha, sigma, lambda); columns are images."""
        n = len(self.m)
        scale = [1] * (self.ell + self.nu) + [self.k] * self.nu
        return [[Fraction(int(self.m[i][j]) * scale[j], scale[i]) for j in range(n)] for i in range(n)]

    def apply(self, v: Sequence) -> tuple:
        """Image of a vector given in the unscaled basis."""
        M = self.matrix()
        return tuple(sum(M[i][j] * v[j] for j in range(len(v))) for i in range(len(v)))

    def to_json(self):
        return [[str(x) for x in row] for row in self.matrix()]


class HyperbolicSpace:
    """V~ with its nondegenerate form, attached to a system R."""

    def __init__(self, ears: ExtAffineRootSystem):
        self.ears = ears
        self.ell, self.nu, self.k = ears.ell, ears.nu, ears.k
        self.n = self.ell + 2 * self.nu
        f = ears.finite
        G = [[Fraction(0)] * self.n for _ in range(self.n)]
        for i in range(self.ell):
            for j in range(self.ell):
                G[i][j] = Fraction(f.gram[i][j])
        for i in range(self.nu):
            G[self.ell + i][self.ell + self.nu + i] = G[self.ell + self.nu + i][self.ell + i] = Fraction(1)
        self.gram = G
        # scaled Gram: basis vector k*lambda_i
        sc = [1] * (self.ell + self.nu) + [self.k] * self.nu
        self._gram_scaled = [[G[i][j] * sc[i] * sc[j] for j in range(self.n)] for i in range(self.n)]
        self._cache = {}

    # ---- vectors
    def vector(self, r: Root) -> list:
        return list(r.fin) + list(r.iso) + [0] * self.nu

    def form(self, x, y) -> Fraction:
        G = self.gram
        return sum(x[i] * G[i][j] * y[j] for i in range(self.n) for j in range(self.n) if x[i] and y[j])

    def identity(self) -> WeylElement:
        return WeylElement(np.eye(self.n, dtype=np.int64), self.k, self.ell, self.nu)

    def _from_scaled_columns(self, cols) -> WeylElement:
        M = np.zeros((self.n, self.n), dtype=np.int64)
        for j, col in enumerate(cols):
            for i, x in enumerate(col):
                if x.denominator != 1:
                    raise ArithmeticError("non-integral entry in scaled basis")
                M[i][j] = int(x)
        return WeylElement(M, self.k, self.ell, self.nu)

    def _to_scaled(self, v) -> list:
        return [Fraction(x) for x in v[: self.ell + self.nu]] + [Fraction(x, self.k) for x in v[self.ell + self.nu:]]

    def _scaled_form(self, x, y):
        G = self._gram_scaled
        return sum(x[i] * G[i][j] * y[j] for i in range(self.n) for j in range(self.n) if x[i] and y[j])

    # ---- elements
    def reflection(self, alpha: Root) -> WeylElement:
        key = ("w", alpha)
        if key in self._cache:
            return self._cache[key]
        a = [Fraction(x) for x in self.vector(alpha)]
        aa = self._scaled_form(a, a)
        if aa == 0:
            raise IsotropicRoot(f"{alpha.label()} is isotropic")
        cols = []
        for j in range(self.n):
            e = [Fraction(int(i == j)) for i in range(self.n)]
            c = 2 * self._scaled_form(e, a) / aa
            cols.append([x - c * y for x, y in zip(e, a)])
        w = self._from_scaled_columns(cols)
        self._cache[key] = w
        return w

    def word_eval(self, word: Iterable[Root], check_roots=True) -> WeylElement:
        out = self.identity()
        for r in word:
            if check_roots and not self.ears.contains(r).nonisotropic:
                raise RootOutsideSystem(f"{r.label()} is not a nonisotropic root")
            out = out * self.reflection(r)
        return out

    def translation(self, i: int, alpha) -> WeylElement:
        """t^(i)_alpha(x) = x - (x, s)alpha + ((x, alpha) - (alpha, alpha)(x, s)/2) s with s = sigma_i/k."""
        if not 1 <= i <= self.nu:
            raise IndexOutOfRange(f"i={i} outside 1..{self.nu}")
        a = [Fraction(x) for x in (self.vector(alpha) if isinstance(alpha, Root) else alpha)]
        s = [Fraction(int(r == self.ell + i - 1), self.k) for r in range(self.n)]
        aa = self.form(a, a)
        cols = []
        for j in range(self.n):
            e = [Fraction(int(r == j)) * (self.k if j >= self.ell + self.nu else 1) for r in range(self.n)]
            xs = self.form(e, s)
            xa = self.form(e, a)
            img = [x - xs * y + (xa - aa * xs / 2) * z for x, y, z in zip(e, a, s)]
            cols.append(self._to_scaled(img))
        return self._from_scaled_columns(cols)

    def c_ij(self, i: int, j: int) -> WeylElement:
        """lambda_r -> lambda_r + delta_ri sigma_j/k - delta_rj sigma_i/k, fixing V."""
        if not (1 <= i <= self.nu and 1 <= j <= self.nu) or i == j:
            raise IndexOutOfRange(f"need 1 <= i != j <= {self.nu}, got ({i}, {j})")
        sig_j = [0] * self.ell + [int(r == j - 1) for r in range(self.nu)] + [0] * self.nu
        return self.translation(i, [-x for x in sig_j])

    def c_pair_word(self, alpha: Root, sigma: Sequence[int]) -> list:
        """c_(alpha, sigma) spelled as a word in reflections (one root per letter):
        (w_{a+s} w_a)(w_a w_{a+s_1})^{m_1}...(w_a w_{a+s_nu})^{m_nu} for s = sum m_i sigma_i."""
        m = list(sigma.iso if isinstance(sigma, Root) else sigma)
        if len(m) != self.nu:
            raise PreconditionViolation("sigma has the wrong length")
        zero_fin = tuple([0] * self.ell)

        def root(iso):
            r = alpha + Root(zero_fin, iso)
            if not self.ears.contains(r).nonisotropic:
                raise RootOutsideSystem(f"{r.label()} is not a root", root=r.to_json())
            return r

        a = root([0] * self.nu)
        word = [root(m), a]
        for i, mi in enumerate(m):
            unit = root([int(r == i) for r in range(self.nu)]) if mi else None
            pair = [a, unit] if mi > 0 else [unit, a]
            word += pair * abs(mi)
        return word

    def c_pair(self, alpha: Root, sigma: Sequence[int]) -> WeylElement:
        return self.word_eval(self.c_pair_word(alpha, sigma), check_roots=False)

    def expected_c_pair(self, alpha: Root, sigma: Sequence[int]) -> WeylElement:
        """prod_{i<j} c_ij^{k(alpha) m_i m_j}."""
        m = list(sigma.iso if isinstance(sigma, Root) else sigma)
        ka = self.ears.k_of(alpha)
        out = self.identity()
        for i in range(self.nu):
            for j in range(i + 1, self.nu):
                e = ka * m[i] * m[j]
                if e:
                    out = out * self.c_ij(i + 1, j + 1) ** e
        return out

    def preserves_form(self, w: WeylElement) -> bool:
        G = np.array([[int(x) for x in row] for row in self._gram_scaled], dtype=np.int64) \
            if all(x.denominator == 1 for row in self._gram_scaled for x in row) else None
        if G is None:
            M = w.matrix()
            return all(sum(M[a][i] * self.gram[a][b] * M[b][j] for a in range(self.n) for b in range(self.n))
                       == self.gram[i][j] for i in range(self.n) for j in range(self.n))
        return np.array_equal(w.m.T @ G @ w.m, G)


def word_equal(space: HyperbolicSpace, a: Iterable[Root], b: Iterable[Root]) -> bool:
    return space.word_eval(a) == space.word_eval(b)


# ---------------------------------------------------------------- reduced collections

@dataclass(frozen=True)
class Triple:
    eps: int
    which: str  # "theta_s" or "theta_l"
    eta: tuple


def _theta(ears: ExtAffineRootSystem, which: str) -> Root:
    from .finroot import highest_roots
    ts, tl = highest_roots(ears.finite)
    if which == "theta_s":
        return Root(ts, [0] * ears.nu)
    if which == "theta_l":
        if tl is None:
            raise DomainConstraintViolated("theta_l does not exist for simply laced types")
        return Root(tl, [0] * ears.nu)
    raise PreconditionViolation(f"unknown root label {which!r}")


def _check_domain(ears, coll):
    for tr in coll:
        if tr.eps not in (1, -1) or len(tr.eta) != ears.nu:
            raise PreconditionViolation("each triple needs eps = +-1 and eta of length nu")
        if tr.which == "theta_l" and any(tr.eta[:ears.t]):
            raise DomainConstraintViolated("theta_l may only be paired with sigma_{t+1..nu}",
                                           eta=list(tr.eta))
        _theta(ears, tr.which)


def reduced_check(ears: ExtAffineRootSystem, coll: Sequence[Triple]) -> bool:
    """sum_p k(alpha_p) eps_p m_ip m_jp = 0 for every i < j."""
    _check_domain(ears, coll)
    for i in range(ears.nu):
        for j in range(i + 1, ears.nu):
            s = sum(ears.k_of(_theta(ears, tr.which)) * tr.eps * tr.eta[i] * tr.eta[j] for tr in coll)
            if s:
                return False
    return True


def relator_word(space: HyperbolicSpace, coll: Sequence[Triple]) -> list:
    """prod_p c_(alpha_p, eta_p)^eps_p as a word in reflections."""
    _check_domain(space.ears, coll)
    word = []
    for tr in coll:
        w = space.c_pair_word(_theta(space.ears, tr.which), tr.eta)
        word += w if tr.eps > 0 else w[::-1]
    return word


def relation_holds(space: HyperbolicSpace, coll: Sequence[Triple]) -> bool:
    """Evaluate prod_p c_(alpha_p, eta_p)^eps_p and compare with the identity."""
    ears = space.ears
    _check_domain(ears, coll)
    out = space.identity()
    for tr in coll:
        out = out * space.c_pair(_theta(ears, tr.which), tr.eta) ** tr.eps
    return out.is_identity()


# ---------------------------------------------------------------- parity maps

class ParityKind(str, Enum):
    LengthPsi = "LengthPsi"
    OrbitPhi = "OrbitPhi"
    ShortCosetPsi = "ShortCosetPsi"


def orbit_criterion_available(ears: ExtAffineRootSystem) -> bool:
    f = ears.finite
    return (f.letter == "A" and f.rank == 1) or (f.letter == "B" and f.rank == 2)


def same_orbit_class(ears: ExtAffineRootSystem, alpha: Root, beta: Root) -> bool:
    """Coset test standing in for alpha in W beta (A1: mod 2<R>; B2: mod <R_lg> or 2<R_sh>)."""
    f = ears.finite
    if f.letter == "A" and f.rank == 1:
        lat = ears.lattice_R.scaled(2)
    elif f.letter == "B" and f.rank == 2:
        if ears.is_short(alpha) != ears.is_short(beta):
            return False
        lat = ears.lattice_long if ears.is_short(alpha) else ears.lattice_short.scaled(2)
    else:
        raise UnsupportedOrbitCriterion(f"no coset criterion for orbits in type {f.name}")
    return lat.contains(tuple(a - b for a, b in zip(alpha.vector, beta.vector)))


def parity_hom(ears: ExtAffineRootSystem, kind, alpha: Root, beta: Root | None = None, i: int | None = None) -> int:
    """Value in Z_2 of the parity map on the letter w_alpha."""
    kind = ParityKind(kind)
    if not ears.contains(alpha).nonisotropic:
        raise RootOutsideSystem(f"{alpha.label()} is not a nonisotropic root")
    if kind is ParityKind.LengthPsi:
        return int(ears.is_short(alpha))
    if kind is ParityKind.OrbitPhi:
        if beta is None:
            raise PreconditionViolation("OrbitPhi needs the orbit representative beta")
        if not orbit_criterion_available(ears):
            raise UnsupportedOrbitCriterion(f"orbit parity is only offered for A1 and B2, not {ears.name}")
        return int(same_orbit_class(ears, alpha, beta))
    if ears.finite.letter != "B":
        raise UnsupportedOrbitCriterion("the short coset maps are defined for type B")
    if i is None or not 1 <= i <= ears.t:
        raise IndexOutOfRange(f"need 1 <= i <= t = {ears.t}")
    if not ears.is_short(alpha):
        return 0
    shifted = list(alpha.iso)
    shifted[i - 1] -= 1
    return int(ears.lattice_of_L().contains(tuple(shifted)))


def parity_of_word(ears, kind, word: Iterable[Root], **kw) -> int:
    return sum(parity_hom(ears, kind, a, **kw) for a in word) % 2


# ---------------------------------------------------------------- word search

class NotFound:
    """No word up to maxlen.  ``closed`` means the generated subgroup was
    enumerated completely, which proves the target lies outside it."""

    def __init__(self, maxlen: int, exhausted: bool = True, closed: bool = False):
        self.maxlen = maxlen
        self.exhausted = exhausted
        self.closed = closed

    def __bool__(self):
        return False

    def __repr__(self):
        return f"NotFound(maxlen={self.maxlen})"


def _layers(space, gens, depth, state_cap):
    """Elements reachable by words of length <= depth, with one shortest word each."""
    ws = [space.reflection(g) for g in gens]
    seen = {space.identity().key(): ()}
    frontier = [(space.identity(), ())]
    for _ in range(depth):
        if not frontier:
            return seen, frontier, True, True
        nxt = []
        for el, word in frontier:
            for gi, w in enumerate(ws):
                if word and word[-1] == gi:
                    continue
                e2 = el * w
                key = e2.key()
                if key not in seen:
                    seen[key] = word + (gi,)
                    nxt.append((e2, word + (gi,)))
                    if len(seen) > state_cap:
                        return seen, nxt, False, False
        frontier = nxt
    return seen, frontier, True, not frontier


def bounded_word_search(space: HyperbolicSpace, target: WeylElement, gens: Sequence[Root],
                        maxlen: int = 10, state_cap: int = 400_000):
    """Shortest word in ``gens`` equal to ``target`` (meet in the middle), or NotFound."""
    if maxlen > MAX_SEARCH_LEN:
        raise PreconditionViolation(f"maxlen is limited to {MAX_SEARCH_LEN}")
    gens = list(dict.fromkeys(gens))
    if target.is_identity():
        return []
    half = (maxlen + 1) // 2
    fwd, _, complete, closed = _layers(space, gens, half, state_cap)
    if closed:
        word = fwd.get(target.key())
        if word is None:
            return NotFound(maxlen, exhausted=True, closed=True)
        return [gens[i] for i in word]
    ws = [space.reflection(g) for g in gens]
    # direct hit
    best = None
    tkey = target.key()
    if tkey in fwd:
        best = list(fwd[tkey])
    # target = X * Y with Y a word of length <= maxlen - half; X = target * Y^-1
    back = {tkey: ()}
    frontier = [(target, ())]
    for depth in range(1, maxlen - half + 1):
        nxt = []
        for el, word in frontier:
            for gi, w in enumerate(ws):
                if word and word[0] == gi:
                    continue
                e2 = el * w  # target * w_{y_last} ... so Y = (gi,) + word
                key = e2.key()
                if key in back:
                    continue
                yw = (gi,) + word
                back[key] = yw
                nxt.append((e2, yw))
                if key in fwd:
                    cand = list(fwd[key]) + list(yw)
                    if best is None or len(cand) < len(best):
                        best = cand
                if len(back) > state_cap:
                    complete = False
                    break
            if len(back) > state_cap:
                break
        frontier = nxt
        if best is not None and len(best) <= half + depth:
            break
    if best is None:
        return NotFound(maxlen, exhausted=complete, closed=False)
    word = [gens[i] for i in best]
    assert space.word_eval(word, check_roots=False) == target
    return word


def word_to_json(word):
    return [r.to_json() for r in word]


def word_from_json(obj):
    return [Root.from_json(x) for x in obj]


def lattice_generated(ears: ExtAffineRootSystem, P) -> bool:
    return hnf_span([p.vector for p in P], ears.dim) == ears.lattice_R
