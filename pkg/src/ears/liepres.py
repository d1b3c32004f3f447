"""Weight-graded nilpotent quotients of the Serre-type elliptic presentation.

Everything happens inside the free Lie algebra on the letters X_b, b in P
and -P.  The H and d generators are eliminated: [H_a, X_b] = (b, a^v) X_b
becomes the element

    rho(a, b) = [[X_a, X_-a], X_b] - (b, a^v) X_b,

relation (I) becomes a weight-zero element built from H_a = [X_a, X_-a],
and the d's only contribute the grading.  The ideal generated by these
elements and by every bracket whose weight leaves R is cut off at bracket
length ``maxlen``; since all relations are weight-homogeneous, its weight
beta part is spanned by right-normed brackets ad g1 ... ad gj (r) of
weight beta, which we enumerate locally, weight by weight.

Lie elements are stored expanded in the tensor algebra (dict word -> coeff)
and compared through their coefficients on Lyndon words.  That restriction
is injective on Lie polynomials (the standard bracketing of a Lyndon word
l is l plus lexicographically larger words), so linear algebra on Lyndon
coordinates is exact linear algebra on Lie elements.
"""
from __future__ import annotations

import itertools
import time
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .earoot import ExtAffineRootSystem, Membership, Root
from .errors import NotInSystem, PreconditionViolation, WindowTooSmall

Word = tuple  # tuple of letter indices


# ---------------------------------------------------------------- free Lie algebra

@lru_cache(maxsize=None)
def is_lyndon(w: Word) -> bool:
    n = len(w)
    return n > 0 and all(w < w[i:] + w[:i] for i in range(1, n))


@lru_cache(maxsize=None)
def standard_bracketing(w: Word):
    """Nested-tuple bracket of a Lyndon word (split at its longest proper Lyndon suffix)."""
    if len(w) == 1:
        return w[0]
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return (standard_bracketing(w[:i]), standard_bracketing(w[i:]))
    raise ValueError(f"{w} is not a Lyndon word")


def bracket(x: dict, y: dict) -> dict:
    """[x, y] = xy - yx for tensor-algebra elements."""
    out: dict = {}
    for u, a in x.items():
        for v, b in y.items():
            c = a * b
            out[u + v] = out.get(u + v, 0) + c
            out[v + u] = out.get(v + u, 0) - c
    return {w: c for w, c in out.items() if c}


def ad_letter(g: int, x: dict) -> dict:
    out: dict = {}
    for w, c in x.items():
        out[(g,) + w] = out.get((g,) + w, 0) + c
        out[w + (g,)] = out.get(w + (g,), 0) - c
    return {w: c for w, c in out.items() if c}


def letter(g: int) -> dict:
    return {(g,): 1}


def expand(tree) -> dict:
    """Tensor expansion of a nested-tuple bracket of letters."""
    if isinstance(tree, int):
        return letter(tree)
    return bracket(expand(tree[0]), expand(tree[1]))


def right_normed(letters) -> dict:
    """[x1, [x2, ... [x_{n-1}, x_n]]] with letters or tensor elements as entries."""
    items = [letter(x) if isinstance(x, int) else x for x in letters]
    acc = items[-1]
    for x in reversed(items[:-1]):
        acc = bracket(x, acc)
    return acc


def combine(*terms) -> dict:
    """Linear combination of (coefficient, element) pairs."""
    out: dict = {}
    for c, x in terms:
        for w, a in x.items():
            out[w] = out.get(w, 0) + c * a
    return {w: a for w, a in out.items() if a}


def lyndon_coords(x: dict) -> dict:
    return {w: Fraction(c) for w, c in x.items() if c and is_lyndon(w)}


def from_lyndon_coords(coords: dict) -> dict:
    """The unique Lie element whose Lyndon coordinates are ``coords``."""
    todo = dict(coords)
    out: dict = {}
    while todo:
        w = min(todo)
        c = todo.pop(w)
        if not c:
            continue
        p = expand(standard_bracketing(w))
        for u, a in p.items():
            out[u] = out.get(u, 0) + c * a
            if u != w and is_lyndon(u):
                todo[u] = todo.get(u, 0) - c * a
        todo = {u: a for u, a in todo.items() if a}
    return {w: c for w, c in out.items() if c}


def lyndon_words(n_letters: int, maxlen: int):
    """All Lyndon words of length <= maxlen (Duval's generator)."""
    if n_letters <= 0:
        return
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < maxlen:
            w.append(w[len(w) - m])
        while w and w[-1] == n_letters - 1:
            w.pop()


def hall_basis(alphabet, weight_window=None, maxlen: int = 3) -> dict:
    """Lyndon basis of the free Lie algebra graded by letter weights.

    ``alphabet`` lists one weight vector per letter; the result maps each
    weight (a tuple) to the standard bracketings of its Lyndon words, as
    nested tuples of letter indices.  ``weight_window`` optionally restricts
    the weights returned.
    """
    if maxlen < 1:
        raise PreconditionViolation("maxlen must be at least 1")
    weights = [tuple(a) for a in alphabet]
    window = None if weight_window is None else {tuple(w) for w in weight_window}
    out: dict = {}
    for w in lyndon_words(len(weights), maxlen):
        wt = tuple(map(sum, zip(*(weights[i] for i in w))))
        if window is None or wt in window:
            out.setdefault(wt, []).append(standard_bracketing(w))
    return out


# ---------------------------------------------------------------- exact echelon form

def _key(w: Word):
    return (len(w), w)


class Echelon:
    """Row echelon form over Q of sparse vectors keyed by words.

    Pivots are the largest coordinates under (length, lex) order, so fully
    reduced vectors end up supported on short words.
    """

    def __init__(self):
        self.rows: dict = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        vec = {w: Fraction(c) for w, c in vec.items() if c}
        done: dict = {}
        while vec:
            w = max(vec, key=_key)
            c = vec.pop(w)
            row = self.rows.get(w)
            if row is None:
                done[w] = c
                continue
            for u, a in row.items():
                if u == w:
                    continue
                v = vec.get(u, 0) - c * a
                if v:
                    vec[u] = v
                else:
                    vec.pop(u, None)
        return done

    def add(self, vec: dict) -> bool:
        """Insert a vector; False when it was already in the span."""
        vec = {w: Fraction(c) for w, c in vec.items() if c}
        # partial reduction: only until the leading term is a new pivot
        while vec:
            w = max(vec, key=_key)
            row = self.rows.get(w)
            if row is None:
                lead = vec[w]
                self.rows[w] = {u: a / lead for u, a in vec.items()}
                return True
            c = vec[w]
            for u, a in row.items():
                v = vec.get(u, 0) - c * a
                if v:
                    vec[u] = v
                else:
                    vec.pop(u, None)
        return False


# ---------------------------------------------------------------- presentation

class RelationMode(str, Enum):
    V = "V"
    VPRIME = "V'"
    NONE = "none"


def _wadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _wsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


@dataclass
class Relation:
    """Homogeneous ideal generator: tensor element, weight and bracket length."""
    name: str
    element: dict
    weight: tuple
    length: int


@dataclass
class GradedPresentation:
    ears: ExtAffineRootSystem
    P: list
    mode: RelationMode = RelationMode.V
    mic1: bool = False
    check_base: bool = True
    letters: list = field(init=False)
    relations: list = field(init=False)

    def __post_init__(self):
        self.mode = RelationMode(self.mode)
        P = self.ears.require_nonisotropic(self.P)
        if len(set(P)) != len(P):
            raise PreconditionViolation("P has repeated roots")
        if self.check_base:
            from .reflect import is_reflectable_base
            if not is_reflectable_base(self.ears, P):
                raise PreconditionViolation("P is not a reflectable base of this system")
        self.P = list(P)
        self.letters = list(P) + [-p for p in P]
        self.weights = [r.vector for r in self.letters]
        self.zero = tuple(0 for _ in self.weights[0])
        self._in_R: dict = {}
        self.neg = [(i + len(P)) % len(self.letters) for i in range(len(self.letters))]
        self._index = {r: i for i, r in enumerate(self.letters)}
        self.relations = self._build_relations()

    # -- letters and weights
    def letter_of(self, root: Root) -> int:
        try:
            return self._index[root]
        except KeyError:
            raise NotInSystem(f"{root.label()} is not a generator weight") from None

    def weight_root(self, w: tuple) -> Root:
        ell = self.ears.ell
        return Root(w[:ell], w[ell:])

    def in_R(self, w: tuple) -> bool:
        hit = self._in_R.get(w)
        if hit is None:
            hit = self._in_R[w] = self.weight_root(w) in self.ears
        return hit

    def weight_of_word(self, word: Word) -> tuple:
        return tuple(map(sum, zip(*(self.weights[i] for i in word))))

    def coroot_pairing(self, b: int, a: int) -> int:
        """(b, a^v) for letters b, a."""
        return self.ears.cartan(self.letters[b], self.letters[a])

    def H(self, a: int) -> dict:
        return bracket(letter(a), letter(self.neg[a]))

    def n_string(self, a: int, b: int, cap: int = 16) -> int:
        """n_{a,b} = min{n > 0 : n a + b not in R}."""
        ra, rb = self.letters[a], self.letters[b]
        for n in range(1, cap + 1):
            if (n * ra + rb) not in self.ears:
                return n
        raise PreconditionViolation("root string longer than the cap")

    def mic1_sides(self):
        """Both sides of the A1 relation
        1/2 ad X_{s1-a} ad X_{a-s1} [X_{a-s1}, X_{s2-a}] = [X_{a-s1}, X_{s2-a}]."""
        e = self.ears
        if e.finite.name != "A1" or e.nu != 2:
            raise PreconditionViolation("the mic1 relation is stated for A1 with nu = 2")
        a = Root((1,), (0, 0))
        s1, s2 = Root((0,), (1, 0)), Root((0,), (0, 1))
        x = self.letter_of(s1 - a)
        y = self.letter_of(s2 - a)
        rhs = right_normed([self.neg[x], y])
        lhs = {w: Fraction(c, 2) for w, c in right_normed([x, self.neg[x], rhs]).items()}
        return lhs, rhs, self.weight_of_word((self.neg[x], y))

    def _build_relations(self) -> list:
        rels = []
        m = len(self.letters)
        for a in range(m):
            for b in range(m):
                el = combine((1, bracket(self.H(a), letter(b))), (-self.coroot_pairing(b, a), letter(b)))
                rels.append(Relation(f"rho({a},{b})", el, self.weights[b], 3))
        # (I): sums of distinct elements of P that land in P
        for size in range(2, len(self.P) + 1):
            for combo in itertools.combinations(range(len(self.P)), size):
                total = self.P[combo[0]]
                for i in combo[1:]:
                    total = total + self.P[i]
                if total in self._index and self._index[total] < len(self.P):
                    terms = [(1, self.H(self._index[total]))] + [(-1, self.H(i)) for i in combo]
                    rels.append(Relation(f"I{combo}", combine(*terms), self.zero, 2))
        if self.mode is RelationMode.VPRIME:
            for a in range(m):
                for b in range(m):
                    n = self.n_string(a, b)
                    el = letter(b)
                    for _ in range(n):
                        el = ad_letter(a, el)
                    if el:
                        wt = _wadd(tuple(n * x for x in self.weights[a]), self.weights[b])
                        rels.append(Relation(f"V'({a},{b})", el, wt, n + 1))
        if self.mic1:
            lhs, rhs, wt = self.mic1_sides()
            rels.append(Relation("mic1", combine((1, lhs), (-1, rhs)), wt, 4))
        return rels

    def to_json(self):
        return {"system": self.ears.invariants(), "P": [p.label() for p in self.P],
                "mode": self.mode.value, "mic1": self.mic1,
                "relations": len(self.relations)}


# ---------------------------------------------------------------- truncated quotient

@dataclass
class GradedComponent:
    weight: tuple
    dim: int
    basis: list          # Lyndon words spanning the quotient (non-pivot coordinates)
    free_dim: int        # dimension of the free Lie algebra component
    generators: int      # ideal generators used
    seconds: float
    trivial: bool = False  # weight outside R: killed by (V) outright

    def to_json(self):
        return {"weight": list(self.weight), "dim": self.dim, "free_dim": self.free_dim,
                "generators": self.generators, "trivial": self.trivial,
                "basis": [list(w) for w in self.basis]}


class TruncatedQuotient:
    """The presented algebra's X-part cut off at bracket length ``maxlen``.

    Components are computed lazily per weight and cached.  Zero verdicts are
    exact statements about the presented algebra (membership in a finite part
    of the ideal); nonzero verdicts hold in the truncation.
    """

    def __init__(self, pres: GradedPresentation, maxlen: int = 7):
        if maxlen < 1:
            raise PreconditionViolation("maxlen must be at least 1")
        self.pres = pres
        self.maxlen = maxlen
        self.reach = self._reach()
        self._cache: dict = {}
        self._ech: dict = {}
        self._lyn = None

    def _reach(self) -> dict:
        dist = {tuple(0 for _ in self.pres.weights[0]): 0}
        q = deque(dist)
        while q:
            w = q.popleft()
            if dist[w] == self.maxlen:
                continue
            for g in self.pres.weights:
                u = _wadd(w, g)
                if u not in dist:
                    dist[u] = dist[w] + 1
                    q.append(u)
        return dist

    def reachable(self, weight: tuple, length: int | None = None) -> bool:
        d = self.reach.get(tuple(weight))
        return d is not None and d <= (self.maxlen if length is None else length)

    def lyndon_of_weight(self, w: tuple) -> list:
        if self._lyn is None:
            self._lyn = {}
            for word in lyndon_words(len(self.pres.weights), self.maxlen):
                self._lyn.setdefault(self.pres.weight_of_word(word), []).append(word)
        return self._lyn.get(tuple(w), [])

    def killed(self, w: tuple) -> bool:
        return self.pres.mode is RelationMode.V and not self.pres.in_R(w)

    # -- enumeration helpers
    def _chains(self, target: tuple, inner: tuple, budget: int):
        """Letter sequences (g1..gj), j <= budget, with inner + sum g = target.

        When (V) is in force, partial weights leaving R are skipped: such
        brackets are already covered by a shorter generator.
        """
        pres = self.pres
        out = []

        def rec(rest: tuple, chain: list, left: int):
            # rest = weight still to be supplied by outer letters
            if not any(rest):
                out.append(tuple(chain))
            if left == 0:
                return
            for g, gw in enumerate(pres.weights):
                # choose the innermost outer letter first: new partial weight
                partial = _wadd(_wsub(target, rest), gw)
                r2 = _wsub(rest, gw)
                d = self.reach.get(r2)
                if d is None or d > left - 1:
                    continue
                if self.killed(partial):
                    continue
                chain.append(g)
                rec(r2, chain, left - 1)
                chain.pop()

        if self.killed(inner):
            # inner element is itself a (V) element; it is handled separately
            return out
        rec(_wsub(target, inner), [], budget)
        return out

    def _words(self, target: tuple, maxlen: int):
        """All words of the given weight and length <= maxlen."""
        pres = self.pres
        out = []

        def rec(prefix: list, wt: tuple, left: int):
            if prefix and wt == target:
                out.append(tuple(prefix))
            if left == 0:
                return
            for g, gw in enumerate(pres.weights):
                nw = _wadd(wt, gw)
                d = self.reach.get(_wsub(target, nw))
                if d is None or d > left - 1:
                    continue
                prefix.append(g)
                rec(prefix, nw, left - 1)
                prefix.pop()

        rec([], tuple(0 for _ in target), maxlen)
        return out

    def _ideal_generators(self, target: tuple):
        pres, n = self.pres, self.maxlen
        # (V): brackets [g1..gj, b] with b a Lyndon basis element of a weight outside R
        if pres.mode is RelationMode.V:
            for u in self._killed_inner_weights(target):
                for w in self.lyndon_of_weight(u):
                    inner = expand(standard_bracketing(w))
                    for chain in self._chains_any(target, u, n - len(w)):
                        el = inner
                        for g in chain:
                            el = ad_letter(g, el)
                        yield el
        for rel in pres.relations:
            if rel.length > n:
                continue
            for chain in self._chains(target, rel.weight, n - rel.length):
                el = rel.element
                for g in chain:
                    el = ad_letter(g, el)
                yield el

    def _killed_inner_weights(self, target: tuple):
        """Weights u outside R from which target is reachable by outer letters
        whose partial sums (beyond u) all stay inside R."""
        out = []
        for u, d in self.reach.items():
            if d == 0 or self.pres.in_R(u):
                continue
            rest = self.reach.get(_wsub(target, u))
            if rest is not None and d + rest <= self.maxlen:
                out.append(u)
        return out

    def _chains_any(self, target, inner, budget):
        """Chains around a killed inner element whose partial weights all lie in R,
        so that the innermost killed suffix is the only one."""
        pres = self.pres
        out = []

        def rec(rest, chain, left):
            if not any(rest):
                out.append(tuple(chain))
            if left == 0:
                return
            for g, gw in enumerate(pres.weights):
                partial = _wadd(_wsub(target, rest), gw)
                r2 = _wsub(rest, gw)
                d = self.reach.get(r2)
                if d is None or d > left - 1:
                    continue
                if not pres.in_R(partial):
                    continue
                chain.append(g)
                rec(r2, chain, left - 1)
                chain.pop()

        rec(_wsub(target, inner), [], budget)
        return out

    # -- components
    def component(self, weight) -> GradedComponent:
        w = tuple(weight.vector) if isinstance(weight, Root) else tuple(weight)
        if w in self._cache:
            return self._cache[w]
        if not self.reachable(w):
            raise WindowTooSmall(f"weight {self.pres.weight_root(w).label()} needs more than "
                                 f"{self.maxlen} letters", weight=list(w))
        t0 = time.perf_counter()
        lyn = self.lyndon_of_weight(w)
        if self.killed(w):
            comp = GradedComponent(w, 0, [], len(lyn), 0, time.perf_counter() - t0, trivial=True)
            self._cache[w] = comp
            return comp
        ech = Echelon()
        count = 0
        gens = [lyndon_coords(el) for el in self._ideal_generators(w)]
        gens = [g for g in gens if g]
        gens.sort(key=lambda v: (max(len(x) for x in v), len(v)))
        seen = set()
        for g in gens:
            key = frozenset(g.items())
            if key in seen:
                continue
            seen.add(key)
            count += 1
            ech.add(g)
        basis = sorted((x for x in lyn if x not in ech.rows), key=_key)
        comp = GradedComponent(w, len(lyn) - len(ech), basis, len(lyn), count,
                               time.perf_counter() - t0)
        self._cache[w] = comp
        self._ech[w] = ech
        return comp

    def normal_form(self, x: dict) -> dict:
        """Reduce a homogeneous element; returns its Lyndon coordinates modulo the ideal."""
        if not x:
            return {}
        w = self.pres.weight_of_word(next(iter(x)))
        if self.killed(w):
            return {}
        if max(len(u) for u in x) > self.maxlen:
            raise WindowTooSmall("element longer than the truncation", weight=list(w))
        self.component(w)
        return self._ech[w].reduce(lyndon_coords(x))

    def is_zero(self, x: dict) -> bool:
        return not self.normal_form(x)

    def representative(self, x: dict) -> dict:
        """A short Lie element congruent to x modulo the ideal."""
        return from_lyndon_coords(self.normal_form(x))


# ---------------------------------------------------------------- operations

def _window_weights(pres: GradedPresentation, box: int):
    e = pres.ears
    out = []
    for fin in [tuple(0 for _ in range(e.ell))] + sorted(e.finite.roots):
        for iso in itertools.product(range(-box, box + 1), repeat=e.nu):
            out.append(Root(fin, iso))
    return out


def default_window(pres: GradedPresentation, box: int = 2, nonisotropic=True) -> list:
    """Roots of R (nonisotropic by default) with isotropic coordinates in [-box, box]."""
    return [r for r in _window_weights(pres, box)
            if (r in pres.ears) and (not nonisotropic or not r.is_isotropic())]


def _component_worker(args):
    pres, maxlen, w = args
    return TruncatedQuotient(pres, maxlen).component(w)


def quotient_dims(pres: GradedPresentation, maxlen: int = 7, weights=None, jobs: int = 1,
                  quotient: TruncatedQuotient | None = None) -> dict:
    """Map weight (Root) -> dimension of the truncated quotient at that weight.

    Without ``weights`` the window is every root with isotropic coordinates
    in [-2, 2] reachable with ``maxlen`` letters.
    """
    if maxlen > 8:
        raise PreconditionViolation("maxlen is bounded by 8")
    tq = quotient or TruncatedQuotient(pres, maxlen)
    if weights is None:
        weights = [r for r in default_window(pres, 2, nonisotropic=False) if tq.reachable(r.vector)]
    weights = [w if isinstance(w, Root) else pres.weight_root(tuple(w)) for w in weights]
    for w in weights:
        if not tq.reachable(w.vector):
            raise WindowTooSmall(f"weight {w.label()} is not reachable with {maxlen} letters",
                                 weight=list(w.vector))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        todo = [w for w in weights if tuple(w.vector) not in tq._cache and not tq.killed(w.vector)]
        todo.sort(key=lambda r: tq.reach[r.vector])
        with ProcessPoolExecutor(jobs) as ex:
            for comp in ex.map(_component_worker, [(pres, maxlen, r.vector) for r in todo]):
                tq._cache[comp.weight] = comp
    return {w: tq.component(w.vector).dim for w in weights}


def cartan_dim(pres: GradedPresentation, maxlen: int = 4) -> int:
    """Rank of span{H_a : a in P} in the truncated quotient, plus one d per isotropic direction."""
    e = pres.ears
    if e.nu != 2:
        raise PreconditionViolation("cartan_dim is stated for nullity 2")
    tq = TruncatedQuotient(pres, max(2, maxlen))
    ech = Echelon()
    for a in range(len(pres.P)):
        ech.add(tq.normal_form(pres.H(a)))
    return len(ech) + e.nu


def _exp_ad(tq: TruncatedQuotient, g: int, pieces: dict, sign: int = 1) -> dict:
    """exp(sign * ad X_g) on a weight-indexed family of reduced pieces."""
    out: dict = {}
    for w, x in pieces.items():
        term, n = x, 0
        coeff = Fraction(1)
        while term:
            wt = tq.pres.weight_of_word(next(iter(term)))
            out[wt] = combine((1, out.get(wt, {})), (coeff, term))
            n += 1
            coeff = coeff * sign / n
            nxt = ad_letter(g, term)
            if not nxt:
                break
            wt2 = tq.pres.weight_of_word(next(iter(nxt)))
            if tq.killed(wt2):
                break
            if max(len(u) for u in nxt) > tq.maxlen:
                raise WindowTooSmall("exp(ad) runs past the truncation", weight=list(wt2))
            term = tq.representative(nxt)
    return {w: tq.representative(x) for w, x in out.items() if x}


@dataclass
class PhiResult:
    gamma: Root
    beta: Root
    image_weight: Root
    ok: bool
    stray_weights: list
    detail: str

    def to_json(self):
        return {"gamma": self.gamma.label(), "beta": self.beta.label(),
                "image_weight": self.image_weight.label(), "ok": self.ok,
                "stray_weights": [r.label() for r in self.stray_weights], "detail": self.detail}


def phi_image(tq: TruncatedQuotient, gamma: Root, beta: Root):
    """Phi_gamma = exp(ad X_g) exp(-ad X_-g) exp(ad X_g) applied to a basis of L_beta."""
    pres = tq.pres
    g = pres.letter_of(gamma)
    comp = tq.component(beta.vector)
    images = []
    for w in comp.basis:
        x = from_lyndon_coords({w: Fraction(1)})
        pieces = {beta.vector: x}
        pieces = _exp_ad(tq, g, pieces, 1)
        pieces = _exp_ad(tq, pres.neg[g], pieces, -1)
        pieces = _exp_ad(tq, g, pieces, 1)
        images.append(pieces)
    return comp, images


def phi_check(pres: GradedPresentation, gamma: Root, beta: Root, maxlen: int = 7,
              quotient: TruncatedQuotient | None = None) -> PhiResult:
    """True iff Phi_gamma maps L_beta onto L_{w_gamma(beta)} in the truncated quotient."""
    tq = quotient or TruncatedQuotient(pres, maxlen)
    if pres.ears.contains(beta) not in (Membership.Short, Membership.Long):
        raise NotInSystem(f"{beta.label()} is not a nonisotropic root")
    target = pres.ears.reflect(gamma, beta)
    comp, images = phi_image(tq, gamma, beta)
    tcomp = tq.component(target.vector)
    stray = set()
    ech = Echelon()
    for pieces in images:
        for w, x in pieces.items():
            if w != target.vector:
                stray.add(pres.weight_root(w))
            else:
                ech.add(tq.normal_form(x))
    ok = not stray and len(ech) == tcomp.dim and comp.dim > 0
    detail = f"dim L_beta = {comp.dim}, dim L_target = {tcomp.dim}, image rank = {len(ech)}"
    return PhiResult(gamma, beta, target, ok, sorted(stray), detail)


class Mic1(str, Enum):
    BothSidesZero = "BothSidesZero"
    HoldsNontrivially = "HoldsNontrivially"
    Fails = "Fails"


def mic1_check(pres: GradedPresentation, maxlen: int = 5) -> Mic1:
    lhs, rhs, wt = pres.mic1_sides()
    tq = TruncatedQuotient(pres, max(4, maxlen))
    if tq.killed(wt):
        return Mic1.BothSidesZero
    diff = tq.is_zero(combine((1, lhs), (-1, rhs)))
    if not diff:
        return Mic1.Fails
    return Mic1.BothSidesZero if tq.is_zero(rhs) else Mic1.HoldsNontrivially


def letter_parity_invariant(pres: GradedPresentation, beta: Root, maxlen: int = 7) -> bool:
    """Every Lyndon word of weight beta (beta a generator weight) has odd length and,
    for each generator class {gamma, -gamma} other than that of beta, an even
    number of letters from that class."""
    b = pres.letter_of(beta)
    cls = {b, pres.neg[b]}
    tq = TruncatedQuotient(pres, maxlen)
    for w in tq._words(beta.vector, maxlen):
        if not is_lyndon(w):
            continue
        if len(w) % 2 == 0:
            return False
        for g in range(len(pres.P)):
            if g in cls:
                continue
            if (w.count(g) + w.count(pres.neg[g])) % 2:
                return False
    return True


def compare_modes(ears, P, maxlen: int, weights) -> dict:
    """Dimensions with (V) versus (V') only; reports the weights where they differ."""
    full = GradedPresentation(ears, P, RelationMode.V)
    prime = GradedPresentation(ears, P, RelationMode.VPRIME)
    a = quotient_dims(full, maxlen, weights)
    b = quotient_dims(prime, maxlen, weights)
    return {w: (a[w], b[w]) for w in weights if a[w] != b[w]}
