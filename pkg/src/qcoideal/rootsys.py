"""Root data and Weyl groups for types A, B, C, D and G2.

Conventions: Bourbaki labelling (B_n has alpha_n short, C_n has alpha_n
long, D_n branches at node n-2, G2 has alpha_1 short).  Indices are 0-based
internally; rendering to strings is 1-based (``s1s2``, ``a12``).  Roots are
integer coordinate tuples in the simple-root basis.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

Vec = tuple  # integer coordinate tuple


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c: int, a: Vec) -> Vec:
    return tuple(c * x for x in a)


def is_pos(v: Vec) -> bool:
    return any(v) and all(x >= 0 for x in v)


def is_neg(v: Vec) -> bool:
    return any(v) and all(x <= 0 for x in v)


class RootSystemError(ValueError):
    pass


def _gram(typ: str, n: int) -> list[list[int]]:
    """Symmetrised bilinear form (alpha_i, alpha_j); short roots have length^2 = 2."""
    g = [[0] * n for _ in range(n)]
    if typ == "A":
        for i in range(n):
            g[i][i] = 2
            if i + 1 < n:
                g[i][i + 1] = g[i + 1][i] = -1
    elif typ == "B":
        if n < 2:
            raise RootSystemError("B_n needs n >= 2")
        for i in range(n):
            g[i][i] = 4 if i < n - 1 else 2
            if i + 1 < n:
                g[i][i + 1] = g[i + 1][i] = -2
    elif typ == "C":
        if n < 2:
            raise RootSystemError("C_n needs n >= 2")
        for i in range(n):
            g[i][i] = 2 if i < n - 1 else 4
            if i + 1 < n - 1:
                g[i][i + 1] = g[i + 1][i] = -1
        g[n - 2][n - 1] = g[n - 1][n - 2] = -2
    elif typ == "D":
        if n < 3:
            raise RootSystemError("D_n needs n >= 3")
        for i in range(n):
            g[i][i] = 2
        for i in range(n - 2):
            if i + 1 <= n - 2:
                if i + 1 < n - 1:
                    g[i][i + 1] = g[i + 1][i] = -1
        g[n - 2][n - 1] = g[n - 1][n - 2] = 0
        g[n - 3][n - 1] = g[n - 1][n - 3] = -1
        g[n - 3][n - 2] = g[n - 2][n - 3] = -1
    elif typ == "G":
        if n != 2:
            raise RootSystemError("only G2 is supported")
        g = [[2, -3], [-3, 6]]
    else:
        raise RootSystemError("unsupported type " + repr(typ))
    return g


_SUPPORTED = {"A", "B", "C", "D", "G"}


def parse_type(spec: str) -> tuple[str, int]:
    """'A3' -> ('A', 3); 'G2' -> ('G', 2)."""
    spec = spec.strip().upper()
    if len(spec) < 2 or spec[0] not in _SUPPORTED or not spec[1:].isdigit():
        raise RootSystemError("unsupported root datum " + repr(spec))
    return spec[0], int(spec[1:])


class RootDatum:
    """Cartan data plus positive roots; immutable after construction."""

    def __init__(self, typ: str, rank: int):
        if typ not in _SUPPORTED:
            raise RootSystemError("unsupported type " + repr(typ))
        if rank < 1:
            raise RootSystemError("rank must be positive")
        self.type = typ
        self.rank = rank
        self.gram = tuple(tuple(r) for r in _gram(typ, rank))
        self.d = tuple(self.gram[i][i] // 2 for i in range(rank))
        self.cartan = tuple(
            tuple(2 * self.gram[i][j] // self.gram[i][i] for j in range(rank))
            for i in range(rank))
        self.simple = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
        self.positive_roots = self._generate_roots()
        self._pos_set = frozenset(self.positive_roots)
        self._wcache: dict = {}

    @property
    def name(self) -> str:
        return "%s%d" % (self.type, self.rank)

    def __repr__(self) -> str:
        return "RootDatum(%s)" % self.name

    def __eq__(self, other) -> bool:
        return isinstance(other, RootDatum) and other.name == self.name

    def __hash__(self) -> int:
        return hash(self.name)

    # forms ----------------------------------------------------------------
    def form(self, u: Vec, v: Vec) -> int:
        g = self.gram
        n = self.rank
        return sum(u[i] * g[i][j] * v[j] for i in range(n) if u[i] for j in range(n) if v[j])

    def coroot_pairing(self, v: Vec, i: int) -> int:
        """<v, alpha_i^vee>."""
        return 2 * self.form(v, self.simple[i]) // self.gram[i][i]

    def reflect(self, i: int, v: Vec) -> Vec:
        c = self.coroot_pairing(v, i)
        if not c:
            return tuple(v)
        out = list(v)
        out[i] -= c
        return tuple(out)

    def height(self, v: Vec) -> int:
        return sum(v)

    def is_root(self, v: Vec) -> bool:
        v = tuple(v)
        return v in self._pos_set or tuple(-x for x in v) in self._pos_set

    def is_positive_root(self, v: Vec) -> bool:
        return tuple(v) in self._pos_set

    def _generate_roots(self) -> tuple:
        found = set(self.simple)
        frontier = list(self.simple)
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(self.rank):
                    s = self.reflect(i, r)
                    if is_pos(s) and s not in found:
                        found.add(s)
                        nxt.append(s)
            frontier = nxt
        return tuple(sorted(found, key=lambda v: (sum(v), tuple(-x for x in v))))

    @property
    def highest_root(self) -> Vec:
        return max(self.positive_roots, key=sum)

    def expected_positive_count(self) -> int:
        n = self.rank
        return {"A": n * (n + 1) // 2, "B": n * n, "C": n * n, "D": n * (n - 1),
                "G": 6}[self.type]

    # Weyl group -----------------------------------------------------------
    def identity(self) -> "WeylElt":
        return self.element(())

    def element(self, word: Iterable[int]) -> "WeylElt":
        return reduce_and_canonicalize(self, word)

    def parse_word(self, text: str) -> "WeylElt":
        return self.element(parse_word(text))

    def all_elements(self) -> list["WeylElt"]:
        key = ("all",)
        if key not in self._wcache:
            seen = {self.identity()}
            frontier = [self.identity()]
            while frontier:
                nxt = []
                for w in frontier:
                    for i in range(self.rank):
                        v = w.mul_simple(i)
                        if v not in seen:
                            seen.add(v)
                            nxt.append(v)
                frontier = nxt
            self._wcache[key] = sorted(seen, key=lambda w: (w.length, w.word))
        return list(self._wcache[key])

    def longest_element(self) -> "WeylElt":
        return max(self.all_elements(), key=lambda w: w.length)

    # partitions -----------------------------------------------------------
    def kostant_dim(self, nu: Sequence[int], roots: Sequence[Vec] | None = None) -> int:
        nu = tuple(nu)
        if any(x < 0 for x in nu):
            return 0
        rts = tuple(sorted(roots)) if roots is not None else self.positive_roots
        return _partitions(nu, rts)

    def vec_str(self, v: Vec) -> str:
        return root_str(v)


@lru_cache(maxsize=None)
def _partitions(nu: Vec, roots: tuple) -> int:
    return _part_rec(nu, roots, len(roots) - 1)


@lru_cache(maxsize=None)
def _part_rec(nu: Vec, roots: tuple, k: int) -> int:
    if not any(nu):
        return 1
    if k < 0:
        return 0
    r = roots[k]
    total = 0
    cur = nu
    while all(x >= 0 for x in cur):
        total += _part_rec(cur, roots, k - 1)
        cur = vsub(cur, r)
    return total


def root_str(v: Vec) -> str:
    """1-based compact name: (1,1,0) -> 'a12', (2,1,1) -> 'a1123'."""
    if not any(v):
        return "0"
    if all(x >= 0 for x in v):
        return "a" + "".join(str(i + 1) * c for i, c in enumerate(v))
    return "-" + root_str(tuple(-x for x in v))


def parse_word(text: str) -> tuple[int, ...]:
    """'s3s1s2' or '3,1,2' or '' -> 0-based tuple."""
    text = text.strip().lower().replace(" ", "")
    if text in ("", "1", "e", "id"):
        return ()
    if "s" in text:
        parts = [p for p in text.split("s") if p]
    else:
        parts = [p for p in text.split(",") if p]
    return tuple(int(p) - 1 for p in parts)


def word_str(word: Sequence[int]) -> str:
    return "".join("s%d" % (i + 1) for i in word) or "1"


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def _apply(m, v: Vec) -> Vec:
    n = len(m)
    return tuple(sum(m[i][j] * v[j] for j in range(n)) for i in range(n))


@lru_cache(maxsize=None)
def _simple_matrix(datum: RootDatum, i: int):
    n = datum.rank
    cols = [datum.reflect(i, datum.simple[j]) for j in range(n)]
    return tuple(tuple(cols[j][r] for j in range(n)) for r in range(n))


@dataclass(frozen=True, eq=False)
class WeylElt:
    """Weyl group element: canonical (lex-least) reduced word and action matrix."""

    datum: RootDatum
    word: tuple
    mat: tuple = field(repr=False)
    inv: tuple = field(repr=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, WeylElt) and self.datum == other.datum
                and self.mat == other.mat)

    def __hash__(self) -> int:
        return hash(self.mat)

    def __repr__(self) -> str:
        return "WeylElt(%s, %s)" % (self.datum.name, word_str(self.word))

    def __str__(self) -> str:
        return word_str(self.word)

    @property
    def length(self) -> int:
        return len(self.word)

    def act(self, v: Vec) -> Vec:
        return _apply(self.mat, v)

    def act_inv(self, v: Vec) -> Vec:
        return _apply(self.inv, v)

    def inverse(self) -> "WeylElt":
        return self.datum.element(tuple(reversed(self.word)))

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        return self.datum.element(self.word + other.word)

    def mul_simple(self, i: int) -> "WeylElt":
        return self.datum.element(self.word + (i,))

    def is_identity(self) -> bool:
        return not self.word


def reduce_and_canonicalize(datum: RootDatum, word: Iterable[int]) -> WeylElt:
    word = tuple(word)
    key = ("w", word)
    hit = datum._wcache.get(key)
    if hit is not None:
        return hit
    n = datum.rank
    for i in word:
        if not 0 <= i < n:
            raise RootSystemError("simple index %d out of range for %s" % (i + 1, datum.name))
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    mat, inv = ident, ident
    for i in word:
        s = _simple_matrix(datum, i)
        mat = _matmul(mat, s)
        inv = _matmul(s, inv)
    mkey = ("m", mat)
    hit = datum._wcache.get(mkey)
    if hit is None:
        # greedy left descents give the lexicographically least reduced word
        canon = []
        cur_inv = inv
        while True:
            for i in range(n):
                if is_neg(_apply(cur_inv, datum.simple[i])):
                    canon.append(i)
                    cur_inv = _matmul(cur_inv, _simple_matrix(datum, i))
                    break
            else:
                break
        hit = WeylElt(datum, tuple(canon), mat, inv)
        datum._wcache[mkey] = hit
    datum._wcache[key] = hit
    return hit


def phi_plus(w: WeylElt) -> frozenset:
    """{beta > 0 : w^-1 beta < 0}."""
    return frozenset(b for b in w.datum.positive_roots if is_neg(w.act_inv(b)))


def roots_of_word(datum: RootDatum, word: Sequence[int]) -> list[Vec]:
    """beta_k = s_{i1} ... s_{i(k-1)} alpha_{ik}, in order."""
    out = []
    for k, i in enumerate(word):
        v = datum.simple[i]
        for j in reversed(word[:k]):
            v = datum.reflect(j, v)
        out.append(v)
    return out


def is_reduced(datum: RootDatum, word: Sequence[int]) -> bool:
    return datum.element(word).length == len(word)


def reduced_words(w: WeylElt) -> list[tuple]:
    """All reduced expressions of w (small groups only)."""
    datum = w.datum
    out = []

    def rec(cur: WeylElt, suffix: tuple):
        if cur.is_identity():
            out.append(suffix)
            return
        for i in range(datum.rank):
            if is_neg(cur.act(datum.simple[i])):  # right descent
                rec(cur.mul_simple(i), (i,) + suffix)

    rec(w, ())
    return sorted(set(out))


def unique_ending(w: WeylElt) -> int | None:
    """Index i if every reduced word of w ends in s_i, else None."""
    if w.is_identity():
        raise RootSystemError("identity has no ending")
    ends = [i for i in range(w.datum.rank) if is_neg(w.act(w.datum.simple[i]))]
    return ends[0] if len(ends) == 1 else None


def weak_le(v: WeylElt, w: WeylElt) -> bool:
    """Right weak order: w = v u with lengths adding."""
    return (v.inverse() * w).length == w.length - v.length


def bruhat_le(v: WeylElt, w: WeylElt) -> bool:
    """Subword property on the canonical reduced word of w."""
    if v.length > w.length:
        return False
    word = w.word
    for idx in itertools.combinations(range(len(word)), v.length):
        if w.datum.element(tuple(word[k] for k in idx)) == v:
            return True
    return False


@dataclass(frozen=True)
class SupportSet:
    datum: RootDatum
    indices: frozenset

    def __post_init__(self):
        idx = sorted(self.indices)
        for a, b in itertools.combinations(idx, 2):
            if self.datum.gram[a][b] != 0:
                raise RootSystemError("support %s is not orthogonal" % (idx,))

    @classmethod
    def of(cls, datum: RootDatum, indices: Iterable[int]) -> "SupportSet":
        return cls(datum, frozenset(indices))

    @property
    def roots(self) -> list[Vec]:
        return [self.datum.simple[i] for i in sorted(self.indices)]

    def sum(self) -> Vec:
        out = (0,) * self.datum.rank
        for r in self.roots:
            out = vadd(out, r)
        return out

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(sorted(self.indices))

    def __str__(self) -> str:
        return "{" + ",".join("a%d" % (i + 1) for i in sorted(self.indices)) + "}"

    def sort_key(self):
        return (len(self.indices), tuple(sorted(self.indices)))


def valid_supports(w: WeylElt) -> list[SupportSet]:
    datum = w.datum
    ph = phi_plus(w)
    cand = [i for i in range(datum.rank) if datum.simple[i] in ph]
    out = []
    for k in range(len(cand) + 1):
        for sub in itertools.combinations(cand, k):
            if all(datum.gram[a][b] == 0 for a, b in itertools.combinations(sub, 2)):
                out.append(SupportSet.of(datum, sub))
    return out


def support_reflection(datum: RootDatum, supp: SupportSet) -> WeylElt:
    return datum.element(tuple(sorted(supp.indices)))


# Criterion-1 classification -------------------------------------------------

@dataclass(frozen=True)
class Crit1Record:
    in_span: bool
    equal_roots: bool
    difference: Vec
    minimal_support: tuple
    subsystem_type: str | None
    row: str | None

    def __str__(self) -> str:
        if self.equal_roots:
            return "equal roots"
        if not self.in_span:
            return "difference not in Z[S]"
        return self.row or ("unlisted (%s)" % self.subsystem_type)


_ROWS = {
    ("A3", 2, False): "A3: a123 - a2 = a1 + a3",
    ("B3", 2, False): "B3: a123 - a2 = a1 + a3",
    ("B3", 2, True): "B3: a1123 - a2 = a1 + a1 + a3",
    ("C3", 2, False): "C3: a123 - a2 = a1 + a3",
    ("D4", 3, False): "D4: a1234 - a4 = a1 + a2 + a3",
}


def _subsystem(datum: RootDatum, gens: Sequence[Vec]) -> list[Vec]:
    """Roots of datum in the rational span of gens (positive and negative)."""
    import sympy

    base = sympy.Matrix([list(g) for g in gens])
    r = base.rank()
    out = []
    for b in datum.positive_roots:
        if sympy.Matrix([list(g) for g in gens] + [list(b)]).rank() == r:
            out.append(b)
            out.append(tuple(-x for x in b))
    return out


def classify_root_system(datum: RootDatum, roots: Sequence[Vec]) -> str:
    """Type name (e.g. 'B3') of a root subsystem given by its full root list."""
    # a generic functional splits positives; simple roots are the indecomposables
    weights = [1 + 7 ** k for k in range(datum.rank)]
    pos = [r for r in roots if sum(w * x for w, x in zip(weights, r)) > 0]
    pos_set = set(pos)
    simple = [r for r in pos
              if not any(vsub(r, s) in pos_set for s in pos if s != r)]
    n = len(simple)
    g = [[datum.form(a, b) for b in simple] for a in simple]
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            if g[i][j]:
                m = (4 * g[i][j] * g[i][j]) // (g[i][i] * g[j][j])
                edges[(i, j)] = m
    lengths = sorted(set(g[i][i] for i in range(n)))
    if n == 1:
        return "A1"
    if len(edges) != n - 1:
        return "reducible-rank%d" % n
    mults = sorted(edges.values())
    if mults[-1] == 3:
        return "G2"
    degree = [sum(1 for e in edges if i in e) for i in range(n)]
    if max(degree) == 3:
        return "D%d" % n
    if mults[-1] == 2:
        if n == 2:
            return "B2"
        # which end of the double bond is short?
        (i, j), = [e for e, m in edges.items() if m == 2]
        short = i if g[i][i] < g[j][j] else j
        leaf = degree[short] == 1
        nshort = sum(1 for k in range(n) if g[k][k] == lengths[0])
        return ("B%d" if (leaf and nshort == 1) else "C%d") % n
    return "A%d" % n


def criterion1_classify(beta_i: Vec, beta_j: Vec, S: SupportSet) -> Crit1Record:
    datum = S.datum
    diff = vsub(beta_i, beta_j)
    if not any(diff):
        return Crit1Record(True, True, diff, (), None, None)
    idx = sorted(S.indices)
    # S is a set of simple roots, so membership in Z[S] is a coordinate test
    outside = [k for k in range(datum.rank) if diff[k] and k not in S.indices]
    if outside:
        return Crit1Record(False, False, diff, (), None, None)
    minimal = tuple(k for k in idx if diff[k])
    gens = [datum.simple[k] for k in minimal] + [tuple(beta_i)]
    sub = _subsystem(datum, gens)
    typ = classify_root_system(datum, sub)
    two = any(abs(diff[k]) == 2 for k in minimal)
    row = _ROWS.get((typ, len(minimal), two))
    return Crit1Record(True, False, diff, minimal, typ, row)


# rho paths ------------------------------------------------------------------

@dataclass(frozen=True)
class RhoPath:
    root: Vec
    empty: bool
    path: tuple


def dynkin_path(datum: RootDatum, i: int, j: int) -> tuple:
    n = datum.rank
    prev = {i: None}
    frontier = [i]
    while frontier:
        nxt = []
        for a in frontier:
            for b in range(n):
                if b != a and datum.gram[a][b] and b not in prev:
                    prev[b] = a
                    nxt.append(b)
        frontier = nxt
    if j not in prev:
        raise RootSystemError("nodes not connected")
    path = [j]
    while path[-1] != i:
        path.append(prev[path[-1]])
    return tuple(reversed(path))


def rho_path(datum: RootDatum, i: int, j: int) -> RhoPath:
    if i == j:
        raise RootSystemError("rho needs distinct nodes")
    path = dynkin_path(datum, i, j)
    inner = path[1:-1]
    v = [0] * datum.rank
    for k in inner:
        v[k] += 1
    return RhoPath(tuple(v), not inner, path)


@lru_cache(maxsize=None)
def get_datum(name: str) -> RootDatum:
    typ, n = parse_type(name)
    return RootDatum(typ, n)
