"""Canonical-form arithmetic in U_q(g).

Normal form: (F-part) (K-part) (E-part).  The F- and E-parts live in the free
algebra on simple indices modulo the quantum Serre ideal; for each content
``nu`` we keep a list of representative words and reduce arbitrary words to
them.  Reduction uses the quantum shuffle pairing on words, whose radical is
exactly the Serre ideal for generic q: with ``G`` the Gram matrix on the
representatives, a word ``u`` has coordinates ``G^-1 (rep, u)_rep``.

Conventions (generic q):
    K_mu E_j K_mu^-1 = q^(mu,a_j) E_j,  K_mu F_j K_mu^-1 = q^-(mu,a_j) F_j
    [E_i, F_j] = delta_ij (K_i - K_i^-1)/(q_i - q_i^-1),  q_i = q^(d_i)
    Delta(E) = E(x)1 + K(x)E,  Delta(F) = F(x)K^-1 + 1(x)F,  Delta(K) = K(x)K
    S(E) = -K^-1 E,  S(F) = -F K,  S(K) = K^-1
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import flint

from . import linalg
from .qfield import ONE, ZERO, RatFunc, coerce, q, qbinom, qfact, qint
from .rootsys import RootDatum, Vec, is_reduced, vadd, vsub

PRIME = (1 << 61) - 1
Q0 = 1234567891


class DegreeBoundError(ValueError):
    """Raised when a computation would exceed the configured height bound."""


def multiset_words(nu: Vec) -> list[tuple]:
    """All words with letter counts nu, in increasing lexicographic order."""
    n = len(nu)
    out = []
    cnt = list(nu)
    total = sum(nu)
    cur: list[int] = []

    def rec():
        if len(cur) == total:
            out.append(tuple(cur))
            return
        for i in range(n):
            if cnt[i]:
                cnt[i] -= 1
                cur.append(i)
                rec()
                cur.pop()
                cnt[i] += 1

    rec()
    return out


def content(word: Sequence[int], n: int) -> Vec:
    c = [0] * n
    for i in word:
        c[i] += 1
    return tuple(c)


def _mod_eval(r: RatFunc) -> int:
    """Image of a Laurent polynomial with integer coefficients at q = Q0 mod PRIME."""
    out = 0
    for e, c in r.laurent_coeffs().items():
        num = c.numerator % PRIME
        den = pow(c.denominator, -1, PRIME)
        out += num * den * pow(Q0, e % (PRIME - 1), PRIME)
    return out % PRIME


@dataclass
class DegreeComponentBasis:
    """Representatives for one content of the Serre quotient."""

    nu: Vec
    reps: list  # words, increasing lex order
    index: dict
    ginv: list  # inverse Gram matrix on reps
    word_count: int
    serre_rank: int

    def __len__(self) -> int:
        return len(self.reps)


class UqAlgebra:
    """U_q(g) for a root datum with a height bound on F- and E-parts."""

    def __init__(self, datum: RootDatum, bound: int = 12):
        self.datum = datum
        self.n = datum.rank
        self.bound = bound
        self.zero_vec = (0,) * self.n
        self._bases: dict = {}
        self._ideal: dict = {}
        self._form: dict = {}
        self._coords: dict = {}
        self._ef_cache: dict = {}
        self._T: dict = {}
        self._gen_cache: dict = {}
        self.qi = [q(d) for d in datum.d]
        self._qdiff_inv = [ONE / (q(d) - q(-d)) for d in datum.d]

    # ------------------------------------------------------------------
    # Serre quotient bases
    def serre_relations(self) -> list[tuple[Vec, list[tuple[RatFunc, tuple]]]]:
        """(degree, [(coeff, word)]) for every ordered pair i != j."""
        key = ("serre",)
        if key in self._gen_cache:
            return self._gen_cache[key]
        out = []
        for i in range(self.n):
            for j in range(self.n):
                if i == j:
                    continue
                m = 1 - self.datum.cartan[i][j]
                d = self.datum.d[i]
                terms = []
                for r in range(m + 1):
                    c = qbinom(m, r, d) * (-1) ** r
                    terms.append((c, (i,) * (m - r) + (j,) + (i,) * r))
                deg = [0] * self.n
                deg[i] += m
                deg[j] += 1
                out.append((tuple(deg), terms))
        self._gen_cache[key] = out
        return out

    def _serre_ideal(self, nu: Vec):
        """Row-reduced basis mod PRIME of the Serre ideal slice in content nu.

        Returns (columns, rows) where columns is the word list in decreasing
        lex order and rows is an nmod_mat in rref (or None when zero).
        """
        hit = self._ideal.get(nu)
        if hit is not None:
            return hit
        cols = list(reversed(multiset_words(nu)))
        col_index = {w: k for k, w in enumerate(cols)}
        N = len(cols)
        gens: list[list[int]] = []
        for i in range(self.n):
            if nu[i] == 0:
                continue
            sub = list(nu)
            sub[i] -= 1
            sub = tuple(sub)
            scols, srows = self._serre_ideal(sub)
            if srows is None:
                continue
            emb = [col_index[(i,) + w] for w in scols]
            for row in srows.tolist():
                new = [0] * N
                for k, x in enumerate(row):
                    if x:
                        new[emb[k]] = int(x)
                gens.append(new)
        for deg, terms in self.serre_relations():
            rest = vsub(nu, deg)
            if any(x < 0 for x in rest):
                continue
            mods = [(_mod_eval(c), w) for c, w in terms]
            for v in multiset_words(rest):
                new = [0] * N
                for c, w in mods:
                    new[col_index[w + v]] = (new[col_index[w + v]] + c) % PRIME
                gens.append(new)
        if not gens:
            res = (cols, None)
        else:
            mat = flint.nmod_mat(gens, PRIME)
            rref, rk = mat.rref()
            if rk == 0:
                res = (cols, None)
            else:
                rows = rref.tolist()[:rk]
                res = (cols, flint.nmod_mat(rows, PRIME))
        self._ideal[nu] = res
        return res

    def basis(self, nu: Sequence[int]) -> DegreeComponentBasis:
        nu = tuple(nu)
        hit = self._bases.get(nu)
        if hit is not None:
            return hit
        if any(x < 0 for x in nu):
            raise ValueError("negative degree")
        if sum(nu) > self.bound:
            raise DegreeBoundError("degree %s exceeds height bound %d; raise the bound"
                                   % (nu, self.bound))
        if sum(nu) <= 1:
            reps = [tuple(i for i in range(self.n) for _ in range(nu[i]))]
            b = DegreeComponentBasis(nu, reps, {reps[0]: 0}, [[ONE]], 1, 0)
            self._bases[nu] = b
            return b
        cols, rows = self._serre_ideal(nu)
        pivots = set()
        if rows is not None:
            for row in rows.tolist():
                for k, x in enumerate(row):
                    if int(x):
                        pivots.add(k)
                        break
        reps = sorted(w for k, w in enumerate(cols) if k not in pivots)
        gram = [[self.form(a, b) for b in reps] for a in reps]
        ginv = linalg.inverse(gram)
        b = DegreeComponentBasis(nu, reps, {w: k for k, w in enumerate(reps)}, ginv,
                                 len(cols), len(pivots))
        self._bases[nu] = b
        return b

    def dim(self, nu: Sequence[int]) -> int:
        return len(self.basis(nu))

    def form(self, t: tuple, u: tuple) -> RatFunc:
        """Quantum shuffle pairing of two words of equal content."""
        if not t:
            return ONE
        key = (t, u)
        hit = self._form.get(key)
        if hit is not None:
            return hit
        j = t[-1]
        head = t[:-1]
        g = self.datum.gram[j]
        total = ZERO
        suffix = 0
        for p in range(len(u) - 1, -1, -1):
            if u[p] == j:
                sub = self.form(head, u[:p] + u[p + 1:])
                if sub:
                    total = total + sub * q(-suffix) if suffix else total + sub
            suffix += g[u[p]]
        self._form[key] = total
        return total

    def coords(self, word: tuple) -> dict:
        """Coordinates of a word in the representative basis of its content."""
        hit = self._coords.get(word)
        if hit is not None:
            return hit
        nu = content(word, self.n)
        b = self.basis(nu)
        k = b.index.get(word)
        if k is not None:
            res = {k: ONE}
        else:
            f = [self.form(r, word) for r in b.reps]
            c = linalg.matvec(b.ginv, f)
            res = {k: x for k, x in enumerate(c) if x}
        self._coords[word] = res
        return res

    def word(self, nu: Vec, idx: int) -> tuple:
        return self.basis(nu).reps[idx]

    # ------------------------------------------------------------------
    # elements
    def elt(self, terms: dict | None = None) -> "AlgElt":
        return AlgElt(self, terms or {})

    def zero(self) -> "AlgElt":
        return AlgElt(self, {})

    def one(self) -> "AlgElt":
        return self.scalar(ONE)

    def scalar(self, c) -> "AlgElt":
        c = coerce(c)
        z = self.zero_vec
        return AlgElt(self, {(z, 0, z, z, 0): c} if c else {})

    def K(self, mu: Sequence[int]) -> "AlgElt":
        z = self.zero_vec
        return AlgElt(self, {(z, 0, tuple(mu), z, 0): ONE})

    def Ki(self, i: int, e: int = 1) -> "AlgElt":
        mu = [0] * self.n
        mu[i] = e
        return self.K(mu)

    def fword(self, word: Sequence[int], c=ONE) -> "AlgElt":
        word = tuple(word)
        nu = content(word, self.n)
        z = self.zero_vec
        c = coerce(c)
        return AlgElt(self, {(nu, k, z, z, 0): c * x for k, x in self.coords(word).items()})

    def eword(self, word: Sequence[int], c=ONE) -> "AlgElt":
        word = tuple(word)
        nu = content(word, self.n)
        z = self.zero_vec
        c = coerce(c)
        return AlgElt(self, {(z, 0, z, nu, k): c * x for k, x in self.coords(word).items()})

    def E(self, i: int) -> "AlgElt":
        return self.eword((i,))

    def F(self, i: int) -> "AlgElt":
        return self.fword((i,))

    def E_div(self, i: int, r: int) -> "AlgElt":
        return self.eword((i,) * r, ONE / qfact(r, self.datum.d[i]))

    def F_div(self, i: int, r: int) -> "AlgElt":
        return self.fword((i,) * r, ONE / qfact(r, self.datum.d[i]))

    def monomial(self, fword=(), k=None, eword=(), c=ONE) -> "AlgElt":
        """F_fword K^k E_eword (words reduced to canonical form)."""
        x = self.fword(fword, c)
        if k is not None and any(k):
            x = x * self.K(k)
        if eword:
            x = x * self.eword(eword)
        return x

    # ------------------------------------------------------------------
    # multiplication
    def _ef(self, ew: tuple, fw: tuple) -> dict:
        """E_ew * F_fw as a dict (fword, kvec, eword) -> coeff, raw words."""
        if not ew or not fw:
            return {(fw, self.zero_vec, ew): ONE}
        key = (ew, fw)
        hit = self._ef_cache.get(key)
        if hit is not None:
            return hit
        a = ew[-1]
        head = ew[:-1]
        gram = self.datum.gram
        first: dict = {(fw, self.zero_vec, (a,)): ONE}
        # commutator terms from E_a passing each F_a
        m = len(fw)
        suffix = [0] * (m + 1)
        for p in range(m - 1, -1, -1):
            suffix[p] = suffix[p + 1] + gram[a][fw[p]]
        inv = self._qdiff_inv[a]
        for p in range(m):
            if fw[p] != a:
                continue
            rest = fw[:p] + fw[p + 1:]
            s = suffix[p + 1]
            kp = tuple(1 if t == a else 0 for t in range(self.n))
            km = tuple(-1 if t == a else 0 for t in range(self.n))
            _acc(first, (rest, kp, ()), q(-s) * inv)
            _acc(first, (rest, km, ()), -(q(s) * inv))
        out: dict = {}
        for (f1, k1, e1), c1 in first.items():
            for (f2, k2, e2), c2 in self._ef(head, f1).items():
                # E-part e2 must pass K^k1: e2 K^k1 = q^-(k1, deg e2) K^k1 e2
                s = self._pair_word(k1, e2)
                coef = c1 * c2
                if s:
                    coef = coef * q(-s)
                _acc(out, (f2, vadd(k2, k1), e2 + e1), coef)
        out = {k: v for k, v in out.items() if v}
        self._ef_cache[key] = out
        return out

    def _pair_word(self, mu: Vec, word: tuple) -> int:
        if not word or not any(mu):
            return 0
        g = self.datum.gram
        return sum(mu[i] * g[i][j] for j in word for i in range(self.n) if mu[i])

    def _pair(self, mu: Vec, nu: Vec) -> int:
        return self.datum.form(mu, nu) if any(mu) and any(nu) else 0

    def mul_mono(self, m1: tuple, m2: tuple) -> dict:
        fn1, fi1, k1, en1, ei1 = m1
        fn2, fi2, k2, en2, ei2 = m2
        key = (m1, m2)
        cache = self._gen_cache.setdefault("mm", {})
        hit = cache.get(key)
        if hit is not None:
            return hit
        f1 = self.word(fn1, fi1)
        e1 = self.word(en1, ei1)
        f2 = self.word(fn2, fi2)
        e2 = self.word(en2, ei2)
        out: dict = {}
        for (fw, kv, ew), c in self._ef(e1, f2).items():
            # K^k1 past fw, ew past K^k2
            s = self._pair_word(k1, fw) + self._pair_word(k2, ew)
            coef = c * q(-s) if s else c
            fcat = f1 + fw
            ecat = ew + e2
            kk = vadd(vadd(k1, kv), k2)
            fnu = content(fcat, self.n)
            enu = content(ecat, self.n)
            if sum(fnu) > self.bound or sum(enu) > self.bound:
                raise DegreeBoundError("product exceeds height bound %d" % self.bound)
            fc = self.coords(fcat)
            ec = self.coords(ecat)
            for fi, fx in fc.items():
                for ei, ex in ec.items():
                    _acc(out, (fnu, fi, kk, enu, ei), coef * fx * ex)
        out = {k: v for k, v in out.items() if v}
        cache[key] = out
        return out

    def multiply(self, x: "AlgElt", y: "AlgElt") -> "AlgElt":
        out: dict = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                c = c1 * c2
                for m, c3 in self.mul_mono(m1, m2).items():
                    _acc(out, m, c * c3)
        return AlgElt(self, {k: v for k, v in out.items() if v})

    # ------------------------------------------------------------------
    # Hopf structure
    def _delta_fword(self, word: tuple) -> list:
        """[(coef, left F-word, right F-word, right K-vec)]"""
        out = []
        g = self.datum.gram
        m = len(word)
        for mask in range(1 << m):
            left = tuple(word[p] for p in range(m) if mask >> p & 1)
            right = tuple(word[p] for p in range(m) if not mask >> p & 1)
            s = 0
            for a in range(m):
                if mask >> a & 1:
                    for b in range(a + 1, m):
                        if not mask >> b & 1:
                            s += g[word[a]][word[b]]
            kv = tuple(-x for x in content(left, self.n))
            out.append((q(s), left, right, kv))
        return out

    def _delta_eword(self, word: tuple) -> list:
        """[(coef, left K-vec, left E-word, right E-word)]"""
        out = []
        g = self.datum.gram
        m = len(word)
        for mask in range(1 << m):
            left = tuple(word[p] for p in range(m) if mask >> p & 1)
            right = tuple(word[p] for p in range(m) if not mask >> p & 1)
            s = 0
            for a in range(m):
                if mask >> a & 1:
                    for b in range(a + 1, m):
                        if not mask >> b & 1:
                            s += g[word[a]][word[b]]
            out.append((q(-s), content(right, self.n), left, right))
        return out

    def coproduct(self, x: "AlgElt") -> "TensorElt":
        out = TensorElt(self, {})
        for m, c in x.terms.items():
            out = out + self._coproduct_mono(m).scale(c)
        return out

    def _coproduct_mono(self, m: tuple) -> "TensorElt":
        cache = self._gen_cache.setdefault("delta", {})
        hit = cache.get(m)
        if hit is not None:
            return hit
        fn, fi, k, en, ei = m
        fw = self.word(fn, fi)
        ew = self.word(en, ei)
        tf = TensorElt(self, {})
        for c, left, right, kv in self._delta_fword(fw):
            tf = tf + TensorElt.pure(self.fword(left), self.fword(right) * self.K(kv)).scale(c)
        tk = TensorElt.pure(self.K(k), self.K(k))
        te = TensorElt(self, {})
        for c, kv, left, right in self._delta_eword(ew):
            te = te + TensorElt.pure(self.K(kv) * self.eword(left), self.eword(right)).scale(c)
        res = tf * tk * te
        cache[m] = res
        return res

    def counit(self, x: "AlgElt") -> RatFunc:
        total = ZERO
        for (fn, fi, k, en, ei), c in x.terms.items():
            if not any(fn) and not any(en):
                total = total + c
        return total

    def antipode(self, x: "AlgElt") -> "AlgElt":
        return self.apply_map(x, self._antipode_gen, anti=True)

    def _antipode_gen(self, kind: str, i) -> "AlgElt":
        if kind == "E":
            return -(self.Ki(i, -1) * self.E(i))
        if kind == "F":
            return -(self.F(i) * self.Ki(i, 1))
        return self.K(tuple(-x for x in i))

    def apply_map(self, x: "AlgElt", gen: Callable, anti: bool = False,
                  cache_key=None) -> "AlgElt":
        """Extend a generator assignment multiplicatively (or anti-multiplicatively)."""
        out = self.zero()
        cache = self._T.setdefault(cache_key, {}) if cache_key is not None else {}
        for m, c in x.terms.items():
            img = cache.get(m)
            if img is None:
                fn, fi, k, en, ei = m
                factors = [gen("F", j) for j in self.word(fn, fi)]
                factors.append(gen("K", k))
                factors += [gen("E", j) for j in self.word(en, ei)]
                if anti:
                    factors.reverse()
                img = self.one()
                for f in factors:
                    img = img * f
                if cache_key is not None:
                    cache[m] = img
            out = out + img.scale(c)
        return out

    # ------------------------------------------------------------------
    # Lusztig automorphisms (Jantzen's T_i and T_i^-1)
    def _T_gen(self, i: int, sign: int, kind: str, j) -> "AlgElt":
        key = ("Tgen", i, sign, kind, j if kind != "K" else tuple(j))
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        d = self.datum.d[i]
        qi = q(d)
        if kind == "K":
            res = self.K(self.datum.reflect(i, tuple(j)))
        elif j == i:
            if kind == "E":
                res = -(self.F(i) * self.Ki(i)) if sign > 0 else -(self.Ki(i, -1) * self.F(i))
            else:
                res = -(self.Ki(i, -1) * self.E(i)) if sign > 0 else -(self.E(i) * self.Ki(i))
        else:
            a = -self.datum.cartan[i][j]
            res = self.zero()
            for r in range(a + 1):
                if kind == "E":
                    c = (-1) ** r * q(-d * r)
                    if sign > 0:
                        t = self.E_div(i, a - r) * self.E(j) * self.E_div(i, r)
                    else:
                        t = self.E_div(i, r) * self.E(j) * self.E_div(i, a - r)
                else:
                    c = (-1) ** r * q(d * r)
                    if sign > 0:
                        t = self.F_div(i, r) * self.F(j) * self.F_div(i, a - r)
                    else:
                        t = self.F_div(i, a - r) * self.F(j) * self.F_div(i, r)
                res = res + t.scale(c)
        self._gen_cache[key] = res
        return res

    def lusztig_T(self, i: int, sign: int, x: "AlgElt") -> "AlgElt":
        return self.apply_map(x, lambda kind, j: self._T_gen(i, sign, kind, j),
                              cache_key=("T", i, sign))

    def root_vector(self, word: Sequence[int], k: int, kind: str = "F") -> "AlgElt":
        """PBW root vector for position k (1-based) of a reduced word."""
        word = tuple(word)
        if not 1 <= k <= len(word):
            raise ValueError("position out of range")
        if not is_reduced(self.datum, word):
            raise ValueError("word %s is not reduced" % (word,))
        key = ("root", word[:k], kind)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        x = self.F(word[k - 1]) if kind == "F" else self.E(word[k - 1])
        sign = -1 if kind == "F" else 1
        for j in reversed(word[:k - 1]):
            x = self.lusztig_T(j, sign, x)
        self._gen_cache[key] = x
        return x

    def root_vectors(self, word: Sequence[int], kind: str = "F") -> list["AlgElt"]:
        return [self.root_vector(word, k, kind) for k in range(1, len(word) + 1)]

    # ------------------------------------------------------------------
    def zdeg(self, m: tuple) -> int:
        return sum(m[3]) - sum(m[0])

    def weight(self, m: tuple) -> Vec:
        return vsub(m[3], m[0])


def _acc(d: dict, k, v: RatFunc) -> None:
    if k in d:
        d[k] = d[k] + v
    else:
        d[k] = v


class AlgElt:
    """Immutable element of U_q(g) in canonical form."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: UqAlgebra, terms: dict):
        self.alg = alg
        self.terms = {k: v for k, v in terms.items() if v}

    def __add__(self, other) -> "AlgElt":
        if not isinstance(other, AlgElt):
            other = self.alg.scalar(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return AlgElt(self.alg, out)

    __radd__ = __add__

    def __neg__(self) -> "AlgElt":
        return AlgElt(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "AlgElt":
        if not isinstance(other, AlgElt):
            other = self.alg.scalar(other)
        return self + (-other)

    def __rsub__(self, other) -> "AlgElt":
        return (-self) + other

    def scale(self, c) -> "AlgElt":
        c = coerce(c)
        if not c:
            return self.alg.zero()
        return AlgElt(self.alg, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other) -> "AlgElt":
        if isinstance(other, AlgElt):
            return self.alg.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "AlgElt":
        return self.scale(other)

    def __pow__(self, e: int) -> "AlgElt":
        out = self.alg.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgElt):
            other = self.alg.scalar(other)
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def zdegrees(self) -> set:
        return {self.alg.zdeg(m) for m in self.terms}

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: (-self.alg.zdeg(kv[0]), kv[0]))

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return "AlgElt(" + render(self) + ")"


def qcomm(x: AlgElt, y: AlgElt, c) -> AlgElt:
    """[x, y]_c = x y - c y x."""
    return x * y - (y * x).scale(c)


def _mono_str(alg: UqAlgebra, m: tuple) -> str:
    fn, fi, k, en, ei = m
    parts = []
    fw = alg.word(fn, fi)
    if fw:
        parts.append("".join("F%d" % (i + 1) for i in fw))
    if any(k):
        ks = []
        for i, e in enumerate(k):
            if e == 1:
                ks.append("K%d" % (i + 1))
            elif e:
                ks.append("K%d^%d" % (i + 1, e))
        parts.append("".join(ks))
    ew = alg.word(en, ei)
    if ew:
        parts.append("".join("E%d" % (i + 1) for i in ew))
    return "*".join(parts) if parts else "1"


def render(x: AlgElt) -> str:
    """Stable text form: sorted by Z-degree (descending) then monomial key."""
    if not x.terms:
        return "0"
    out = []
    for m, c in x.sorted_terms():
        out.append("(%s)*%s" % (c, _mono_str(x.alg, m)))
    return " + ".join(out)


def leading(x: AlgElt) -> tuple[int, AlgElt]:
    """Maximal Z-degree and the sub-sum at that degree."""
    if not x.terms:
        raise ValueError("zero element has no leading term")
    d = max(x.zdegrees())
    return d, AlgElt(x.alg, {m: c for m, c in x.terms.items() if x.alg.zdeg(m) == d})


z_degree_leading = leading


class TensorElt:
    """Element of U (x) U as a dict (mono, mono) -> coeff."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: UqAlgebra, terms: dict):
        self.alg = alg
        self.terms = {k: v for k, v in terms.items() if v}

    @classmethod
    def pure(cls, x: AlgElt, y: AlgElt) -> "TensorElt":
        out: dict = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                _acc(out, (m1, m2), c1 * c2)
        return cls(x.alg, out)

    def __add__(self, other: "TensorElt") -> "TensorElt":
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return TensorElt(self.alg, out)

    def __sub__(self, other: "TensorElt") -> "TensorElt":
        return self + other.scale(-ONE)

    def scale(self, c) -> "TensorElt":
        c = coerce(c)
        return TensorElt(self.alg, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "TensorElt") -> "TensorElt":
        alg = self.alg
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                left = alg.mul_mono(a1, a2)
                right = alg.mul_mono(b1, b2)
                c = c1 * c2
                for ml, cl in left.items():
                    cc = c * cl
                    for mr, cr in right.items():
                        _acc(out, (ml, mr), cc * cr)
        return TensorElt(alg, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorElt) and self.terms == other.terms

    def apply_left(self, f: Callable[[AlgElt], RatFunc]) -> AlgElt:
        """(f (x) id) for a linear functional f on monomials."""
        out = self.alg.zero()
        for (m1, m2), c in self.terms.items():
            v = f(AlgElt(self.alg, {m1: ONE}))
            if v:
                out = out + AlgElt(self.alg, {m2: c * v})
        return out

    def apply_right(self, f: Callable[[AlgElt], RatFunc]) -> AlgElt:
        out = self.alg.zero()
        for (m1, m2), c in self.terms.items():
            v = f(AlgElt(self.alg, {m2: ONE}))
            if v:
                out = out + AlgElt(self.alg, {m1: c * v})
        return out

    def multiply_out(self, left_map: Callable[[AlgElt], AlgElt] | None = None) -> AlgElt:
        """m((left_map (x) id)(t))."""
        out = self.alg.zero()
        for (m1, m2), c in self.terms.items():
            a = AlgElt(self.alg, {m1: c})
            if left_map is not None:
                a = left_map(a)
            out = out + a * AlgElt(self.alg, {m2: ONE})
        return out

    def left_factors(self) -> dict:
        """Group by right monomial: right mono -> left AlgElt."""
        groups: dict = {}
        for (m1, m2), c in self.terms.items():
            groups.setdefault(m2, {})[m1] = c
        return {m2: AlgElt(self.alg, g) for m2, g in groups.items()}


_ALGEBRAS: dict = {}


def get_algebra(datum: RootDatum, bound: int = 12) -> UqAlgebra:
    key = (datum.name, bound)
    if key not in _ALGEBRAS:
        _ALGEBRAS[key] = UqAlgebra(datum, bound)
    return _ALGEBRAS[key]


def build_degree_basis(datum: RootDatum, nu: Sequence[int], bound: int = 12) -> DegreeComponentBasis:
    return get_algebra(datum, bound).basis(tuple(nu))
