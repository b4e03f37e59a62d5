"""Character-shifted right coideal subalgebras and their associated graded algebras.

A character on ``U^-[w]`` (resp. on ``S(U^+[w])``) is determined by its values on
``F_s`` (resp. ``E_s K_s^-1``) for ``s`` in a set of mutually orthogonal simple
roots.  Outside ``N[supp]`` the character vanishes; inside, all words are equal
because the generators ``F_s`` commute, so the value on a degree is the
product of the generator values.

The shift of ``x`` is ``(phi (x) id) Delta(x)``.  Two routes are provided: a
direct word formula (subsets of letters in the support) and the generic route
through :meth:`UqAlgebra.coproduct`.  They are kept independent on purpose so
that tests can compare them.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import linalg
from .linalg import Echelon
from .qfield import ONE, ZERO, Q, RatFunc, coerce, q
from .rootsys import (RootDatum, SupportSet, Vec, WeylElt, is_neg, phi_plus,
                      reduced_words, roots_of_word, root_str, vadd, vsub, word_str)
from .uqalg import AlgElt, DegreeBoundError, UqAlgebra, content, get_algebra, qcomm

# lambda-normalisation for the rank-one family: lambda = 1, lambda * lambda' fixed
LAMBDA = ONE
LAMBDA_PRIME = q(2) / ((ONE - q(2)) * (Q - q(-1)))
WEYL_CONSTANT = q(2) / (Q - q(-1))


class CoidealError(ValueError):
    """Invalid coideal data or an element outside the expected subalgebra."""


class ClassificationError(RuntimeError):
    """A detected root set is not of the form Phi+(w') for a Weyl element."""


# ----------------------------------------------------------------------------
# characters

@dataclass(frozen=True)
class Character:
    w: WeylElt
    values: tuple  # sorted ((simple index, RatFunc), ...)
    side: str = "minus"

    def __post_init__(self):
        if self.side not in ("minus", "plus"):
            raise CoidealError("side must be 'minus' or 'plus'")
        idx = [i for i, _ in self.values]
        if len(set(idx)) != len(idx):
            raise CoidealError("repeated support index")
        ph = phi_plus(self.w)
        datum = self.w.datum
        for i, v in self.values:
            if not 0 <= i < datum.rank:
                raise CoidealError("support index out of range")
            if datum.simple[i] not in ph:
                raise CoidealError("support root a%d not in Phi+(%s)" % (i + 1, self.w))
            if not v:
                raise CoidealError("character values on the support must be nonzero")
        SupportSet.of(datum, idx)  # orthogonality

    @classmethod
    def make(cls, w: WeylElt, values: dict | None = None, side: str = "minus") -> "Character":
        vals = tuple(sorted((int(i), coerce(v)) for i, v in (values or {}).items()))
        return cls(w, vals, side)

    @classmethod
    def normalized(cls, w: WeylElt, supp: Iterable[int], side: str = "minus") -> "Character":
        return cls.make(w, {i: ONE for i in supp}, side)

    @property
    def support(self) -> SupportSet:
        return SupportSet.of(self.w.datum, [i for i, _ in self.values])

    @property
    def value_map(self) -> dict:
        return dict(self.values)

    def is_trivial(self) -> bool:
        return not self.values

    def degree_value(self, nu: Vec) -> RatFunc:
        """prod phi_s^m_s for nu = sum m_s alpha_s in N[supp], else 0."""
        vm = self.value_map
        out = ONE
        for k, m in enumerate(nu):
            if not m:
                continue
            v = vm.get(k)
            if v is None:
                return ZERO
            out = out * v ** m
        return out

    def functional(self, alg: UqAlgebra):
        """Linear functional on normal-form monomials (extension to U^- or U^+ U^0)."""
        gram = alg.datum.gram
        if self.side == "minus":
            def f(m: tuple) -> RatFunc:
                fn, fi, k, en, ei = m
                if any(en) or any(k):
                    return ZERO
                return self.degree_value(fn)
        else:
            def f(m: tuple) -> RatFunc:
                fn, fi, k, en, ei = m
                if any(fn) or any(a + b for a, b in zip(k, en)):
                    return ZERO
                v = self.degree_value(en)
                if not v:
                    return v
                # K^-g E_g = prod q^(-(a,a) m (m+1)/2) (E_s K_s^-1)^m_s
                e = sum(-gram[s][s] * m * (m + 1) // 2 for s, m in enumerate(en) if m)
                return v * q(e)
        return f


# ----------------------------------------------------------------------------
# PBW subspaces U^-[w] and U^+[w]

class PBWSpace:
    """Degree slices of U^-[w] (kind 'F') or U^+[w] (kind 'E') from ordered monomials."""

    def __init__(self, alg: UqAlgebra, word: Sequence[int], kind: str = "F"):
        self.alg = alg
        self.word = tuple(word)
        self.kind = kind
        self.roots = roots_of_word(alg.datum, self.word)
        self.vectors = alg.root_vectors(self.word, kind) if self.word else []
        self._mono: dict = {}
        self._exps: dict = {}
        self._ech: dict = {}

    def exponents(self, nu: Vec) -> list[tuple]:
        nu = tuple(nu)
        hit = self._exps.get(nu)
        if hit is not None:
            return hit
        out: list = []
        ell = len(self.roots)
        cur = [0] * ell

        def rec(k: int, rest: Vec):
            if not any(rest):
                out.append(tuple(cur))
                return
            if k == ell:
                return
            b = self.roots[k]
            a = 0
            r = rest
            while all(x >= 0 for x in r):
                cur[k] = a
                rec(k + 1, r)
                a += 1
                r = vsub(r, b)
            cur[k] = 0

        rec(0, nu)
        self._exps[nu] = out
        return out

    def monomial(self, exps: tuple) -> AlgElt:
        hit = self._mono.get(exps)
        if hit is not None:
            return hit
        k = next((i for i, a in enumerate(exps) if a), None)
        if k is None:
            res = self.alg.one()
        else:
            rest = list(exps)
            rest[k] -= 1
            res = self.vectors[k] * self.monomial(tuple(rest))
        self._mono[exps] = res
        return res

    def basis(self, nu: Vec) -> list[AlgElt]:
        return [self.monomial(a) for a in self.exponents(nu)]

    def degrees(self, max_height: int) -> list[Vec]:
        """All nonzero degrees sum a_k beta_k of height <= max_height."""
        n = self.alg.n
        seen = {(0,) * n}
        frontier = [(0,) * n]
        while frontier:
            nxt = []
            for v in frontier:
                for b in self.roots:
                    u = vadd(v, b)
                    if sum(u) <= max_height and u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        seen.discard((0,) * n)
        return sorted(seen, key=lambda v: (sum(v), v))

    def echelon(self, nu: Vec) -> Echelon:
        nu = tuple(nu)
        hit = self._ech.get(nu)
        if hit is None:
            hit = Echelon()
            for x in self.basis(nu):
                hit.add(x.terms)
            self._ech[nu] = hit
        return hit

    def contains(self, x: AlgElt) -> bool:
        groups: dict = {}
        for m, c in x.terms.items():
            fn, fi, k, en, ei = m
            if self.kind == "F":
                if any(k) or any(en):
                    return False
                deg = fn
            else:
                if any(k) or any(fn):
                    return False
                deg = en
            groups.setdefault(deg, {})[m] = c
        for deg, v in groups.items():
            if not any(deg):
                continue  # scalars lie in every subalgebra
            if not self.echelon(deg).contains(v):
                return False
        return True


def _pbw(alg: UqAlgebra, word: tuple, kind: str) -> PBWSpace:
    cache = alg._gen_cache.setdefault("pbw", {})
    key = (word, kind)
    if key not in cache:
        cache[key] = PBWSpace(alg, word, kind)
    return cache[key]


def pbw_space(w: WeylElt, kind: str = "F", bound: int = 12) -> PBWSpace:
    return _pbw(get_algebra(w.datum, bound), w.word, kind)


def x_root_vector(alg: UqAlgebra, word: Sequence[int], k: int) -> AlgElt:
    """E_beta K_beta^-1 for the k-th root of the word."""
    beta = roots_of_word(alg.datum, word)[k - 1]
    return alg.root_vector(word, k, "E") * alg.K(tuple(-x for x in beta))


# ----------------------------------------------------------------------------
# character shifts

def _shift_minus_fast(x: AlgElt, phi: Character) -> AlgElt:
    alg = x.alg
    cache = alg._gen_cache.setdefault(("shiftF", phi.values), {})
    out: dict = {}
    for m, c in x.terms.items():
        fn, fi, k, en, ei = m
        if any(k) or any(en):
            raise CoidealError("fast minus shift expects an element of U^-")
        img = cache.get((fn, fi))
        if img is None:
            img = {}
            word = alg.word(fn, fi)
            for cq, left, right, kv in alg._delta_fword(word):
                v = phi.degree_value(content(left, alg.n))
                if not v:
                    continue
                coef = cq * v
                rn = content(right, alg.n)
                for ri, rc in alg.coords(right).items():
                    key = (rn, ri, kv, alg.zero_vec, 0)
                    img[key] = img.get(key, ZERO) + coef * rc
            img = {a: b for a, b in img.items() if b}
            cache[(fn, fi)] = img
        for key, v in img.items():
            nv = out.get(key, ZERO) + c * v
            if nv:
                out[key] = nv
            else:
                out.pop(key, None)
    return AlgElt(alg, out)


def _shift_plus_fast(x: AlgElt, phi: Character) -> AlgElt:
    alg = x.alg
    gram = alg.datum.gram
    out = alg.zero()
    for m, c in x.terms.items():
        fn, fi, k, en, ei = m
        if any(fn) or any(a + b for a, b in zip(k, en)):
            raise CoidealError("fast plus shift expects elements of U^+ K^-deg")
        word = alg.word(en, ei)
        nu = en
        negnu = tuple(-a for a in nu)
        # x = K^-nu E_w ;  Delta = sum (K^-nu K^c(r) E_l) (x) (K^-nu E_r)
        for cq, kv, left, right in alg._delta_eword(word):
            cl = content(left, alg.n)
            # K^(c(r)-nu) = K^-c(l): left factor is K^-c(l) E_left
            v = phi.degree_value(cl)
            if not v:
                continue
            e = sum(-gram[s][s] * mm * (mm + 1) // 2 for s, mm in enumerate(cl) if mm)
            coef = c * cq * v * q(e)
            # left word E_left in basis coordinates: all words of N[supp] coincide
            out = out + (alg.K(negnu) * alg.eword(right)).scale(coef)
    return out


def character_shift(x: AlgElt, phi: Character, route: str = "fast",
                    check: bool = True) -> AlgElt:
    """(phi (x) id) Delta(x) for x in U^-[w] (minus side) or U^+[w]K^-deg (plus side)."""
    alg = x.alg
    if check:
        kind = "F" if phi.side == "minus" else "E"
        if phi.side == "minus":
            ok = _pbw(alg, phi.w.word, "F").contains(x)
        else:
            ok = _plus_contains(alg, phi.w.word, x)
        if not ok:
            raise CoidealError("element is not in the %s part of %s" % (kind, phi.w))
    if phi.is_trivial():
        return x
    if route == "fast":
        if phi.side == "minus":
            return _shift_minus_fast(x, phi)
        return _shift_plus_fast(x, phi)
    if route != "generic":
        raise CoidealError("unknown route " + repr(route))
    f = phi.functional(alg)
    return alg.coproduct(x).apply_left(lambda a: sum((f(mm) * cc for mm, cc in a.terms.items()), ZERO))


def _plus_contains(alg: UqAlgebra, word: tuple, x: AlgElt) -> bool:
    """x in span{y K^-deg(y) : y in U^+[w]}."""
    y: dict = {}
    for m, c in x.terms.items():
        fn, fi, k, en, ei = m
        if any(fn) or any(a + b for a, b in zip(k, en)):
            return False
        y[(fn, fi, alg.zero_vec, en, ei)] = c
    # K^-nu E -> E K^-nu only rescales each degree, which preserves the span
    return _pbw(alg, word, "E").contains(AlgElt(alg, y))


# ----------------------------------------------------------------------------
# presentations

@dataclass
class CoidealPresentation:
    datum: RootDatum
    w_minus: WeylElt
    phi_minus: Character
    lattice: tuple  # generator vectors of L
    w_plus: WeylElt
    phi_plus: Character
    generators: list = field(default_factory=list)  # [(label, AlgElt)]
    alg: UqAlgebra | None = None

    @property
    def elements(self) -> list[AlgElt]:
        return [g for _, g in self.generators]

    def generator(self, label: str) -> AlgElt:
        for lab, g in self.generators:
            if lab == label:
                return g
        raise KeyError(label)

    def describe(self) -> dict:
        return {
            "datum": self.datum.name,
            "w_minus": word_str(self.w_minus.word),
            "supp_minus": [i + 1 for i, _ in self.phi_minus.values],
            "lattice": [list(v) for v in self.lattice],
            "w_plus": word_str(self.w_plus.word),
            "supp_plus": [i + 1 for i, _ in self.phi_plus.values],
            "generators": {lab: str(g) for lab, g in self.generators},
        }


def build_presentation(w_minus: WeylElt, phi_minus: Character | dict | None,
                       lattice: Sequence[Sequence[int]], w_plus: WeylElt,
                       phi_plus_: Character | dict | None, bound: int = 12) -> CoidealPresentation:
    """Generators of U^-[w-]_phi- k[L] S(U^+[w+])_phi+.

    Plus-side generators are the shifts of E_beta K_beta^-1; these span the same
    degree slices as the antipode images S(E_beta).
    """
    datum = w_minus.datum
    if w_plus.datum != datum:
        raise CoidealError("w- and w+ belong to different root data")
    if not isinstance(phi_minus, Character):
        phi_minus = Character.make(w_minus, phi_minus or {}, "minus")
    if not isinstance(phi_plus_, Character):
        phi_plus_ = Character.make(w_plus, phi_plus_ or {}, "plus")
    if phi_minus.w != w_minus or phi_plus_.w != w_plus:
        raise CoidealError("character base elements do not match w-/w+")
    if phi_minus.side != "minus" or phi_plus_.side != "plus":
        raise CoidealError("character sides do not match")
    common = phi_minus.support.indices & phi_plus_.support.indices
    lat = tuple(tuple(int(x) for x in v) for v in lattice)
    for v in lat:
        if len(v) != datum.rank:
            raise CoidealError("lattice vector has wrong length")
        for s in common:
            if datum.form(v, datum.simple[s]):
                raise CoidealError("lattice vector %s is not orthogonal to a%d" % (v, s + 1))
    alg = get_algebra(datum, bound)
    gens: list = []
    wm = w_minus.word
    for k, beta in enumerate(roots_of_word(datum, wm), 1):
        x = alg.root_vector(wm, k, "F")
        gens.append(("F" + root_str(beta)[1:], character_shift(x, phi_minus, check=False)))
    for v in lat:
        gens.append(("K" + _vec_label(v), alg.K(v)))
        gens.append(("K" + _vec_label(tuple(-x for x in v)), alg.K(tuple(-x for x in v))))
    wp = w_plus.word
    for k, beta in enumerate(roots_of_word(datum, wp), 1):
        x = x_root_vector(alg, wp, k)
        gens.append(("E" + root_str(beta)[1:], character_shift(x, phi_plus_, check=False)))
    return CoidealPresentation(datum, w_minus, phi_minus, lat, w_plus, phi_plus_, gens, alg)


def _vec_label(v: Vec) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def orthogonal_lattice(datum: RootDatum, supp: Iterable[int]) -> tuple:
    """Integer basis of {mu in Z^n : (mu, a_s) = 0 for s in supp}."""
    import sympy

    supp = sorted(supp)
    if not supp:
        return tuple(datum.simple)
    m = sympy.Matrix([[datum.gram[s][j] for j in range(datum.rank)] for s in supp])
    out = []
    for v in m.nullspace():
        den = sympy.ilcm(*[sympy.fraction(x)[1] for x in v])
        vec = [int(x * den) for x in v]
        g = 0
        for x in vec:
            g = sympy.igcd(g, x)
        vec = [x // g for x in vec]
        if next(x for x in vec if x) < 0:
            vec = [-x for x in vec]
        out.append(tuple(vec))
    return tuple(out)


# ----------------------------------------------------------------------------
# coideal verification

@dataclass
class CoidealCheck:
    outcome: str  # "true" | "false" | "unknown at bound"
    failures: list  # [(generator label, right monomial text, left factor text)]
    span_size: int


def _products(gens: list[AlgElt], length: int) -> list[AlgElt]:
    alg = gens[0].alg
    layer = [alg.one()]
    out = [alg.one()]
    for _ in range(length):
        nxt = []
        for a in layer:
            for g in gens:
                nxt.append(a * g)
        out.extend(nxt)
        layer = nxt
    return out


def verify_coideal(C: CoidealPresentation | Sequence[AlgElt], bound: int = 2,
                   labels: Sequence[str] | None = None) -> CoidealCheck:
    """Delta(g) in span(C) (x) U for every generator g, tested on products of length <= bound."""
    if isinstance(C, CoidealPresentation):
        labels = [lab for lab, _ in C.generators]
        gens = C.elements
    else:
        gens = list(C)
        labels = list(labels or ["g%d" % k for k in range(len(gens))])
    if not gens:
        return CoidealCheck("true", [], 1)
    alg = gens[0].alg
    span = Echelon()
    for p in _products(gens, bound):
        span.add(p.terms)
    failures = []
    missing_weights = []
    for lab, g in zip(labels, gens):
        for m2, left in alg.coproduct(g).left_factors().items():
            if not span.contains(left.terms):
                failures.append((lab, str(AlgElt(alg, {m2: ONE})), str(left)))
                missing_weights.extend(alg.weight(m) for m in left.terms)
    if not failures:
        return CoidealCheck("true", [], span.rank)
    # definitive only when every generator is weight-homogeneous of one sign
    heights = set()
    homogeneous = True
    for g in gens:
        ws = {alg.weight(m) for m in g.terms}
        if len(ws) != 1:
            homogeneous = False
            break
        heights.add(sum(next(iter(ws))))
    if homogeneous and heights and (all(h > 0 for h in heights) or all(h < 0 for h in heights)):
        hmin = min(abs(h) for h in heights)
        need = max(abs(sum(wt)) for wt in missing_weights) // hmin
        if need <= bound:
            return CoidealCheck("false", failures, span.rank)
    return CoidealCheck("unknown at bound", failures, span.rank)


# ----------------------------------------------------------------------------
# Conjecture A

def conjA_predict(w: WeylElt, supp: SupportSet | Iterable[int]) -> WeylElt:
    datum = w.datum
    idx = sorted(supp.indices if isinstance(supp, SupportSet) else supp)
    SupportSet.of(datum, idx)
    out = w
    for i in reversed(idx):
        out = datum.element((i,)) * out
    return out


def default_window(datum: RootDatum, supp: SupportSet | Sequence[int]) -> int:
    return sum(datum.highest_root) + len(list(supp)) + 2


@lru_cache(maxsize=None)
def _phi_index(datum: RootDatum) -> dict:
    return {phi_plus(v): v for v in datum.all_elements()}


def lattice_rank(vectors: Sequence[Sequence[int]]) -> tuple[int, list]:
    """Rank and invariant factors of the integer lattice spanned by the vectors."""
    import sympy
    from sympy.matrices.normalforms import smith_normal_form

    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return 0, []
    snf = smith_normal_form(sympy.Matrix(vecs), domain=sympy.ZZ)
    diag = [int(snf[i, i]) for i in range(min(snf.shape)) if snf[i, i] != 0]
    return len(diag), [abs(x) for x in diag]


@dataclass
class GradedReport:
    datum: str
    w: tuple
    supp: tuple
    window: int
    semigroup_generators: list  # K^-mu exponents as positive mu vectors
    group_rank: int
    detected_roots: list
    w_prime: tuple | None
    predicted: tuple
    subspace_ok: bool
    localization_ok: bool
    hilbert_ok: bool
    growth_ok: bool
    verdict: str  # "confirmed" | "mismatch" | "classification-violating"
    seconds: float = 0.0
    notes: list = field(default_factory=list)

    def record(self) -> dict:
        return {
            "datum": self.datum,
            "w": word_str(self.w),
            "supp": ["a%d" % (i + 1) for i in self.supp],
            "window": self.window,
            "G": [list(v) for v in self.semigroup_generators],
            "rank_G": self.group_rank,
            "roots": [root_str(r) for r in self.detected_roots],
            "w_prime": None if self.w_prime is None else word_str(self.w_prime),
            "predicted": word_str(self.predicted),
            "growth": self.growth_ok,
            "verdict": self.verdict,
            "seconds": round(self.seconds, 3),
        }


class GradedComputation:
    """Leading-term data of U^-[w]_phi per total degree, with lazy caches."""

    def __init__(self, phi: Character, window: int):
        self.phi = phi
        self.w = phi.w
        self.datum = phi.w.datum
        self.window = window
        self.alg = get_algebra(self.datum, max(window, 12))
        self.pbw = _pbw(self.alg, self.w.word, "F")
        self._forms: dict = {}
        self._blocks: dict = {}

    @staticmethod
    def _colkey(m: tuple):
        fn, fi, k, en, ei = m
        return (sum(fn), fn, fi, k)

    def forms(self, nu: Vec) -> list[tuple[int, dict]]:
        """[(F-height of the leading block, leading form)] spanning gr in degree nu."""
        nu = tuple(nu)
        hit = self._forms.get(nu)
        if hit is not None:
            return hit
        ech = Echelon(self._colkey)
        for x in self.pbw.basis(nu):
            ech.add(_shift_minus_fast(x, self.phi).terms)
        out = []
        for piv, row in ech.rows.items():
            h = sum(piv[0])
            out.append((h, {m: c for m, c in row.items() if sum(m[0]) == h}))
        self._forms[nu] = out
        return out

    def block(self, nu: Vec, h: int) -> Echelon:
        key = (tuple(nu), h)
        hit = self._blocks.get(key)
        if hit is None:
            hit = Echelon()
            for hh, f in self.forms(nu):
                if hh == h:
                    hit.add(f)
            self._blocks[key] = hit
        return hit

    def in_degrees(self) -> list[Vec]:
        return self.pbw.degrees(self.window)


def _nsupp_vectors(n: int, supp: Sequence[int], max_height: int) -> list[Vec]:
    out = []
    for ms in itertools.product(range(max_height + 1), repeat=len(supp)):
        if sum(ms) > max_height:
            continue
        v = [0] * n
        for s, m in zip(supp, ms):
            v[s] = m
        out.append(tuple(v))
    return sorted(out, key=lambda v: (sum(v), v))


def graded_algebra(w: WeylElt, supp: SupportSet | Iterable[int] = (),
                   values: dict | None = None, window: int | None = None) -> GradedReport:
    """Associated graded algebra of U^-[w]_phi and its comparison with the formula for w'."""
    t0 = time.perf_counter()
    datum = w.datum
    sidx = sorted(supp.indices if isinstance(supp, SupportSet) else supp)
    if values is None:
        values = {i: ONE for i in sidx}
    phi = Character.make(w, {i: values[i] for i in sidx}, "minus")
    H = window or default_window(datum, sidx)
    gc = GradedComputation(phi, H)
    alg = gc.alg
    n = datum.rank
    zero = alg.zero_vec
    predicted = conjA_predict(w, sidx)
    notes = []

    degrees = gc.in_degrees()
    degset = set(degrees)

    # D^0: K^-nu in D for nu in N[supp]
    g_elems = []
    for nu in _nsupp_vectors(n, sidx, H):
        if not any(nu) or nu not in degset:
            continue
        piv = (zero, 0, tuple(-x for x in nu), zero, 0)
        if any(piv in f for h, f in gc.forms(nu) if h == 0):
            g_elems.append(nu)
    gset = set(g_elems)
    gens = [v for v in g_elems
            if not any(u in gset and vsub(v, u) in gset for u in g_elems if u != v)]
    grank, _ = lattice_rank(gens)

    # M_gamma: F-parts of leading forms
    theta_h = sum(datum.highest_root)
    M: dict = {}
    for nu in degrees:
        for h, f in gc.forms(nu):
            if h == 0 or h > theta_h:
                continue
            parts: dict = {}
            for (fn, fi, k, en, ei), c in f.items():
                parts.setdefault((fn, k), {})[fi] = c
            for (fn, k), vec in parts.items():
                M.setdefault(fn, Echelon()).add(vec)

    def mdim(g: Vec) -> int:
        e = M.get(g)
        return e.rank if e is not None else 0

    # roots by dimension excess over partitions into smaller detected roots
    detected: list = []
    violation = None
    for mu in datum.positive_roots:
        p = datum.kostant_dim(mu, detected) if detected else 0
        ex = mdim(mu) - p
        if ex == 1:
            detected.append(mu)
        elif ex != 0:
            violation = "dimension excess %d at %s" % (ex, root_str(mu))
            break
    w_prime = None
    if violation is None:
        w_prime = _phi_index(datum).get(frozenset(detected))
        if w_prime is None:
            violation = "roots %s are not Phi+ of a Weyl element" % [root_str(r) for r in detected]
    if violation is not None:
        return GradedReport(datum.name, w.word, tuple(sidx), H, gens, grank, detected, None,
                            predicted.word, False, False, False, False,
                            "classification-violating", time.perf_counter() - t0, [violation])

    # subspace equality M_gamma = U^-[w']_gamma on root degrees (complete in the window)
    vp = _pbw(alg, w_prime.word, "F")
    subspace_ok = True
    for g in datum.positive_roots:
        basis = [{m[1]: c for m, c in x.terms.items()} for x in vp.basis(g)]
        mine = M.get(g)
        theirs = Echelon()
        for b in basis:
            theirs.add(b)
        if (mine.rank if mine else 0) != theirs.rank or (
                mine is not None and not all(mine.contains(b) for b in basis)):
            subspace_ok = False
            notes.append("subspace mismatch at %s" % root_str(g))

    # localization: K^-kappa F_mu in D for some kappa in N[supp]
    localization_ok = True
    for k, mu in enumerate(vp.roots, 1):
        fmu = vp.vectors[k - 1]
        found = False
        for kap in _nsupp_vectors(n, sidx, H - sum(mu)):
            nu = vadd(mu, kap)
            if nu not in degset:
                continue
            negk = tuple(-x for x in kap)
            vec = {(fn, fi, negk, en, ei): c for (fn, fi, kk, en, ei), c in fmu.terms.items()}
            if gc.block(nu, sum(mu)).contains(vec):
                found = True
                break
        if not found:
            localization_ok = False
            notes.append("no K-multiple of F_%s found in the window" % root_str(mu)[1:])

    # dimension sanity: dim U^-[w]_nu <= sum_kappa dim U^-[w']_(nu - kappa)
    hilbert_ok = True
    for nu in degrees:
        if sum(nu) > theta_h + len(sidx):
            continue
        lhs = len(gc.pbw.exponents(nu))
        rhs = 0
        for kap in _nsupp_vectors(n, sidx, sum(nu)):
            g = vsub(nu, kap)
            if all(x >= 0 for x in g):
                rhs += len(vp.exponents(g)) if any(g) else 1
        if lhs > rhs:
            hilbert_ok = False
            notes.append("dimension bound fails at %s" % (nu,))

    growth_ok = w.length == grank + w_prime.length
    match = w_prime == predicted
    ok = match and growth_ok and subspace_ok and localization_ok and hilbert_ok
    return GradedReport(datum.name, w.word, tuple(sidx), H, gens, grank, detected, w_prime.word,
                        predicted.word, subspace_ok, localization_ok, hilbert_ok, growth_ok,
                        "confirmed" if ok else "mismatch", time.perf_counter() - t0, notes)


def growth_identity_check(w: WeylElt, report: GradedReport) -> bool:
    if report.w_prime is None:
        return False
    wp = w.datum.element(report.w_prime)
    return w.length == report.group_rank + wp.length


def sweep_cases(datum: RootDatum) -> list[tuple[WeylElt, SupportSet]]:
    from .rootsys import valid_supports

    out = []
    for w in datum.all_elements():
        for s in valid_supports(w):
            if len(s):
                out.append((w, s))
    out.sort(key=lambda ws: (ws[0].length, ws[0].word, ws[1].sort_key()))
    return out


def _sweep_worker(args) -> dict:
    name, word, supp, window = args
    from .rootsys import get_datum

    datum = get_datum(name)
    w = datum.element(word)
    rep = graded_algebra(w, supp, window=window)
    return rep.__dict__


def conjA_sweep(datum: RootDatum, window: int | None = None, jobs: int = 1,
                progress=None) -> list[GradedReport]:
    cases = sweep_cases(datum)
    args = [(datum.name, w.word, tuple(sorted(s.indices)), window) for w, s in cases]
    reports: list = []
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for k, d in enumerate(ex.map(_sweep_worker, args, chunksize=1)):
                reports.append(GradedReport(**d))
                if progress:
                    progress(k + 1, len(args), reports[-1])
    else:
        for k, (w, s) in enumerate(cases):
            reports.append(graded_algebra(w, s, window=window))
            if progress:
                progress(k + 1, len(cases), reports[-1])
    return reports


# ----------------------------------------------------------------------------
# criteria

@dataclass(frozen=True)
class Crit2Result:
    applicable: bool
    factorizations: tuple  # ((u1 word, i), (u2 word, l))


def criterion2_applicable(w: WeylElt, supp: SupportSet | Iterable[int] = ()) -> Crit2Result:
    """w = u1 s_i = u2 s_l with i != l and u1(a_i), u2(a_l) outside supp."""
    if w.is_identity():
        return Crit2Result(False, ())
    datum = w.datum
    sidx = set(supp.indices if isinstance(supp, SupportSet) else supp)
    sroots = {datum.simple[i] for i in sidx}
    ends = [i for i in range(datum.rank) if is_neg(w.act(datum.simple[i]))]
    good = []
    for i in ends:
        u = w.mul_simple(i)
        if u.act(datum.simple[i]) not in sroots:
            good.append((u.word, i))
    if len(good) >= 2:
        return Crit2Result(True, tuple(good[:2]))
    return Crit2Result(False, ())


def criterion3_hypothesis(v: WeylElt, i: int, m: int) -> bool:
    """<v(a_i), a_m^vee> = -1 and a_m has multiplicity zero in the positive root v(a_i)."""
    datum = v.datum
    nu = v.act(datum.simple[i])
    if not datum.is_positive_root(nu):
        return False
    if nu[m] != 0:
        return False
    return datum.coroot_pairing(nu, m) == -1


@dataclass(frozen=True)
class PropShiftResult:
    status: str  # "true" | "false" | "not applicable"
    lhs: str = ""
    rhs: str = ""


def prop_shift_check(v: WeylElt, i: int, m: int, phi_m_value=ONE, sign: str = "example",
                     bound: int = 12) -> PropShiftResult:
    """Compare the shift of T_m^-1 T_(v^-1)^-1 F_i with the closed formula.

    ``sign='example'`` uses the factor (q_m^-1 - q_m) reproduced by the worked
    examples; ``sign='literal'`` uses (q_m - q_m^-1).
    """
    datum = v.datum
    if not criterion3_hypothesis(v, i, m):
        return PropShiftResult("not applicable")
    alg = get_algebra(datum, bound)
    full = (m,) + v.word + (i,)
    if datum.element(full).length != len(full):
        return PropShiftResult("not applicable")
    y = alg.root_vector(v.word + (i,), len(v.word) + 1, "F")
    x = alg.lusztig_T(m, -1, y)
    w = datum.element(full)
    phi = Character.make(w, {m: phi_m_value}, "minus")
    lhs = character_shift(x, phi)
    d = datum.d[m]
    fac = (q(-d) - q(d)) if sign == "example" else (q(d) - q(-d))
    rhs = x + (y * alg.Ki(m, -1)).scale(fac * coerce(phi_m_value))
    return PropShiftResult("true" if lhs == rhs else "false", str(lhs), str(rhs))


def prop_shift_triples(datum: RootDatum) -> list[tuple[WeylElt, int, int]]:
    out = []
    for v in datum.all_elements():
        for i in range(datum.rank):
            for m in range(datum.rank):
                if criterion3_hypothesis(v, i, m):
                    full = (m,) + v.word + (i,)
                    if datum.element(full).length == len(full):
                        out.append((v, i, m))
    return out


# ----------------------------------------------------------------------------
# Conjecture B candidates

@dataclass(frozen=True)
class ConjBCandidate:
    w_minus: tuple
    supp: tuple  # roots (coordinate vectors)
    lattice: tuple
    w_plus: tuple
    w_minus_prime: tuple
    tag: str

    def record(self) -> dict:
        return {"w_minus": word_str(self.w_minus), "supp": [root_str(r) for r in self.supp],
                "lattice": [list(v) for v in self.lattice], "w_plus": word_str(self.w_plus),
                "w_minus_prime": word_str(self.w_minus_prime), "tag": self.tag}


def _orthogonal_root_sets(datum: RootDatum, simple_only: bool) -> list[tuple]:
    pool = [datum.simple[i] for i in range(datum.rank)] if simple_only else list(datum.positive_roots)
    out = [()]
    for k in range(1, len(pool) + 1):
        for sub in itertools.combinations(pool, k):
            if all(datum.form(a, b) == 0 for a, b in itertools.combinations(sub, 2)):
                out.append(sub)
    return out


def _reflection(datum: RootDatum, beta: Vec) -> WeylElt:
    """s_beta as a Weyl element (found by matching the action on simple roots)."""
    for w in datum.all_elements():
        if all(w.act(datum.simple[j]) == _reflect_root(datum, beta, datum.simple[j])
               for j in range(datum.rank)):
            return w
    raise CoidealError("no reflection for %s" % (beta,))


def _reflect_root(datum: RootDatum, beta: Vec, v: Vec) -> Vec:
    c = 2 * datum.form(v, beta) // datum.form(beta, beta)
    return tuple(a - c * b for a, b in zip(v, beta))


def conjB_candidates(datum: RootDatum, include_reflected: bool = False) -> list[ConjBCandidate]:
    """Triangular data with supp(phi+) = supp(phi-), L = supp-perp and l(w-'^-1 w+) = l(w0)."""
    if datum.rank > 3:
        raise CoidealError("Conjecture-B enumeration is limited to rank <= 3")
    w0 = datum.longest_element()
    elems = datum.all_elements()
    out = []
    for supp in _orthogonal_root_sets(datum, simple_only=not include_reflected):
        simple_supp = all(sum(r) == 1 for r in supp)
        if include_reflected and simple_supp:
            continue
        refl = datum.identity()
        for r in supp:
            refl = _reflection(datum, r) * refl
        lat = orthogonal_lattice(datum, [r.index(1) for r in supp]) if simple_supp else \
            _orth_roots_lattice(datum, supp)
        for wm in elems:
            ph = phi_plus(wm)
            if not all(r in ph for r in supp):
                continue
            wmp = refl * wm
            if wmp.length != wm.length - len(supp):
                continue
            for wp in elems:
                if not all(r in phi_plus(wp) for r in supp):
                    continue
                if wmp.inverse() * wp == w0 and wp.length + wmp.length == w0.length:
                    if not supp:
                        tag = "homogeneous"
                    elif not simple_supp:
                        tag = "reflected-support"
                    elif datum.rank <= 2 or (phi_plus(wm) & phi_plus(wp)) == set(supp):
                        tag = "known-family"
                    else:
                        tag = "other"
                    out.append(ConjBCandidate(wm.word, tuple(supp), lat, wp.word, wmp.word, tag))
    out.sort(key=lambda c: (len(c.supp), c.supp, len(c.w_minus), c.w_minus, c.w_plus))
    return out


def _orth_roots_lattice(datum: RootDatum, roots: Sequence[Vec]) -> tuple:
    import sympy

    m = sympy.Matrix([[datum.form(r, datum.simple[j]) for j in range(datum.rank)] for r in roots])
    out = []
    for v in m.nullspace():
        den = sympy.ilcm(*[sympy.fraction(x)[1] for x in v])
        out.append(tuple(int(x * den) for x in v))
    return tuple(out)


# ----------------------------------------------------------------------------
# catalog data for sl2 and sl3

def sl2_borel(lam=LAMBDA, lam_prime=LAMBDA_PRIME, bound: int = 12) -> CoidealPresentation:
    from .rootsys import get_datum

    d = get_datum("A1")
    s = d.element((0,))
    return build_presentation(s, {0: lam_prime}, (), s, {0: lam}, bound)


def sl3_borel(kind: str, lam=LAMBDA, lam_prime=LAMBDA_PRIME, bound: int = 12) -> CoidealPresentation:
    """kind: 'homogeneous' | 'type1' (w-=s1, w+=w0) | 'type2' (w-=w+=s1s2)."""
    from .rootsys import get_datum

    d = get_datum("A2")
    if kind == "homogeneous":
        return build_presentation(d.identity(), {}, d.simple, d.longest_element(), {}, bound)
    lat = ((1, 2),)
    if kind == "type1":
        return build_presentation(d.element((0,)), {0: lam_prime}, lat,
                                  d.element((0, 1, 0)), {0: lam}, bound)
    if kind == "type2":
        s12 = d.element((0, 1))
        return build_presentation(s12, {0: lam_prime}, lat, s12, {0: lam}, bound)
    raise CoidealError("unknown sl3 Borel " + repr(kind))


def weyl_identity(B: CoidealPresentation) -> tuple[AlgElt, AlgElt]:
    """([E-bar, F-bar]_{q^2}, expected q^2/(q-q^-1))."""
    E = B.generator("E1")
    F = B.generator("F1")
    return qcomm(E, F, q(2)), B.alg.scalar(WEYL_CONSTANT)


def sl3_type2_relations(B: CoidealPresentation) -> dict:
    """The commutator relations of the type-2 Borel as name -> (lhs, rhs)."""
    alg = B.alg
    E1, F1 = B.generator("E1"), B.generator("F1")
    E12, F12 = B.generator("E12"), B.generator("F12")
    K = B.generator("K(1,2)")
    zero = alg.zero()
    rel = {}
    for name, x in (("E1", E1), ("F1", F1), ("E12", E12), ("F12", F12)):
        rel["[K,%s]_1" % name] = (qcomm(K, x, ONE), zero)
    rel["[E1,E12]_q"] = (qcomm(E1, E12, q(1)), zero)
    rel["[E1,F12]_q"] = (qcomm(E1, F12, q(1)), zero)
    rel["[F1,E12]_q^-1"] = (qcomm(F1, E12, q(-1)), zero)
    rel["[F1,F12]_q^-1"] = (qcomm(F1, F12, q(-1)), zero)
    rel["[E1,F1]_q^2"] = (qcomm(E1, F1, q(2)), alg.scalar(WEYL_CONSTANT))
    rel["[E12,F12]_q^2"] = (qcomm(E12, F12, q(2)),
                           (F1 * E1).scale(q(4) - q(2)) + alg.scalar(q(4) / (Q - q(-1))))
    c1 = (ONE - q(-2)) * LAMBDA
    c2 = (q(-1) - Q) * LAMBDA_PRIME
    rel["c1*c2"] = (alg.scalar(c1 * c2), alg.one())
    return rel


def sl3_type2_corrected_relations(B: CoidealPresentation) -> dict:
    """The type-2 relations that fail as displayed, in the form the algebra satisfies.

    K = K_1 K_2^2 pairs with a_1 + a_2 to 3, so it q^3-commutes with the degree
    a_1 + a_2 generators; the q^2-commutator of those generators carries an
    extra factor -q^-1 with the root vectors used here.
    """
    alg = B.alg
    E1, F1 = B.generator("E1"), B.generator("F1")
    E12, F12 = B.generator("E12"), B.generator("F12")
    K = B.generator("K(1,2)")
    zero = alg.zero()
    rhs = (F1 * E1).scale(q(4) - q(2)) + alg.scalar(q(4) / (Q - q(-1)))
    return {
        "[K,E12]_q^3": (qcomm(K, E12, q(3)), zero),
        "[K,F12]_q^-3": (qcomm(K, F12, q(-3)), zero),
        "[E12,F12]_q^2": (qcomm(E12, F12, q(2)), rhs.scale(-q(-1))),
    }


# ----------------------------------------------------------------------------
# non-basicness witnesses

@dataclass
class WitnessResult:
    status: str  # "witness" | "no witness by this lemma" | "inconclusive"
    route: str  # "lemma" | "commutator" | ""
    mu: Vec | None = None
    weight: tuple | None = None
    pair: tuple | None = None
    trace_power: str = ""  # first nonzero trace of a power, as evidence
    notes: list = field(default_factory=list)

    def record(self) -> dict:
        return {"status": self.status, "route": self.route,
                "mu": root_str(self.mu) if self.mu else None,
                "weight": list(self.weight) if self.weight else None,
                "pair": list(self.pair) if self.pair else None,
                "evidence": self.trace_power, "notes": self.notes}


def leading_F_element(C: CoidealPresentation, mu: Vec, max_extra: int = 4) -> AlgElt | None:
    """An element of the minus part of C whose leading form is F_mu K^-kappa."""
    datum = C.datum
    alg = C.alg
    phi = C.phi_minus
    supp = sorted(phi.support.indices)
    wprime = conjA_predict(C.w_minus, supp)
    vp = _pbw(alg, wprime.word, "F")
    if tuple(mu) not in [tuple(r) for r in vp.roots]:
        return None
    fmu = vp.vectors[[tuple(r) for r in vp.roots].index(tuple(mu))]
    pbw = _pbw(alg, C.w_minus.word, "F")
    h = sum(mu)
    for kap in _nsupp_vectors(datum.rank, supp, max_extra):
        nu = vadd(tuple(mu), kap)
        basis = pbw.basis(nu)
        if not basis:
            continue
        ech = Echelon(GradedComputation._colkey)
        for x in basis:
            ech.add(_shift_minus_fast(x, phi).terms)
        block = Echelon()
        for piv, row in ech.rows.items():
            if sum(piv[0]) == h:
                block.add({m: c for m, c in row.items() if sum(m[0]) == h}, {piv: ONE})
        negk = tuple(-x for x in kap)
        target = {(fn, fi, negk, en, ei): c for (fn, fi, kk, en, ei), c in fmu.terms.items()}
        comb = block.express(target)
        if comb is None:
            continue
        out: dict = {}
        for piv, c in comb.items():
            out = linalg.vec_add(out, ech.rows[piv], c)
        return AlgElt(alg, out)
    return None


def _nonnilpotent_evidence(m: list) -> str:
    """'' if m is nilpotent, else the first nonzero trace of a power."""
    n = len(m)
    p = m
    for k in range(1, n + 1):
        tr = ZERO
        for i in range(n):
            tr = tr + p[i][i]
        if tr:
            return "tr(M^%d) = %s" % (k, tr)
        p = linalg.matmul(p, m)
    return "" if linalg.is_nilpotent(m) else "nonzero power"


def nonbasic_witness(C: CoidealPresentation, lambda_list: Sequence[Sequence[int]],
                     bound: int = 4) -> WitnessResult:
    """A non-nilpotent q^0-commutator on some L(lambda), which rules out basicness.

    First the root mu in Phi+(w+) and Phi+(w-') is used with E = shifted
    E_mu K_mu^-1 and F the element with leading form F_mu K^-kappa; if no such
    root exists, commutators of pairs of generators are tried.  A commutator
    acts by zero on every 1-dim module, hence nilpotently on any module whose
    composition factors are all 1-dim.
    """
    from .repthy import simple_module

    datum = C.datum
    supp = sorted(C.phi_minus.support.indices)
    wprime = conjA_predict(C.w_minus, supp)
    common = [r for r in roots_of_word(datum, C.w_plus.word) if r in set(phi_plus(wprime))]
    modules = [(tuple(lam), simple_module(datum, lam)) for lam in lambda_list]
    if common:
        for mu in common:
            E = C.generator("E" + root_str(mu)[1:])
            F = leading_F_element(C, mu, bound)
            if F is None:
                continue
            X = qcomm(E, F, ONE)
            for lam, V in modules:
                ev = _nonnilpotent_evidence(V.matrix(X))
                if ev:
                    return WitnessResult("witness", "lemma", mu, lam, ("E" + root_str(mu)[1:], "F"), ev)
        return WitnessResult("inconclusive", "lemma", notes=["all tested commutators nilpotent"])
    labels = [lab for lab, _ in C.generators]
    for (la, a), (lb, b) in itertools.combinations(C.generators, 2):
        X = qcomm(a, b, ONE)
        if not X:
            continue
        for lam, V in modules:
            ev = _nonnilpotent_evidence(V.matrix(X))
            if ev:
                return WitnessResult("witness", "commutator", None, lam, (la, lb), ev,
                                     ["no root in Phi+(w+) and Phi+(w-')"])
    return WitnessResult("no witness by this lemma", "", notes=[
        "no root in Phi+(w+) and Phi+(w-')", "%d generator commutators nilpotent" % (
            len(labels) * (len(labels) - 1) // 2)])
