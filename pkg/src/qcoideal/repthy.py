"""Finite-dimensional and induced modules of U_q(g) as exact matrices.

A :class:`ModuleWindow` stores, for every generator ``E_i, F_i, K_i, K_i^-1``,
the images of the basis vectors as sparse column dicts.  Infinite-dimensional
modules are truncated to a window of basis labels; each basis vector carries a
``margin``: any word of at most that many generators applied to it is computed
exactly (nothing falls off the window on the way).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import linalg
from .linalg import Echelon
from .qfield import ONE, ZERO, Q, RatFunc, coerce, q, qint
from .rootsys import RootDatum, Vec, get_datum, vadd, vsub
from .uqalg import AlgElt, UqAlgebra, get_algebra, qcomm

INF = 10 ** 9


class ModuleError(ValueError):
    """Construction failure (cap exceeded, non-dominant weight, ...)."""


class ConstraintError(ValueError):
    """Character values violate the one-dimensionality constraints."""


class InductionError(RuntimeError):
    """The coset reduction found no expansion; the PBW factorization failed."""


# ----------------------------------------------------------------------------
# sparse helpers

def _vadd(a: dict, b: dict, c: RatFunc = ONE) -> dict:
    return linalg.vec_add(a, b, c)


def _apply_cols(cols: list, v: dict) -> dict:
    out: dict = {}
    for j, c in v.items():
        for i, x in cols[j].items():
            nv = out.get(i, ZERO) + c * x
            if nv:
                out[i] = nv
            else:
                out.pop(i, None)
    return out


# ----------------------------------------------------------------------------
# modules

@dataclass
class ModuleWindow:
    datum: RootDatum
    labels: list
    ops: dict  # ("E"|"F"|"K"|"Ki", i) -> list of column dicts
    kind: str = "full"  # "full" | "window"
    margin: list | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.index = {lab: k for k, lab in enumerate(self.labels)}
        if self.margin is None:
            self.margin = [INF] * len(self.labels)
        self.alg = get_algebra(self.datum)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def boundary(self) -> list:
        """Labels whose image under some generator left the window."""
        return [lab for lab, m in zip(self.labels, self.margin) if m == 0]

    def interior(self, depth: int) -> list[int]:
        return [j for j, m in enumerate(self.margin) if m >= depth]

    # action -----------------------------------------------------------------
    def apply_op(self, key, v: dict) -> dict:
        return _apply_cols(self.ops[key], v)

    def apply_word(self, keys: Sequence, v: dict) -> dict:
        """keys[0] keys[1] ... keys[-1] applied to v (rightmost first)."""
        for key in reversed(keys):
            if not v:
                return v
            v = self.apply_op(key, v)
        return v

    def apply(self, x: AlgElt, v: dict) -> dict:
        out: dict = {}
        for (fn, fi, k, en, ei), c in x.terms.items():
            keys = [("F", i) for i in x.alg.word(fn, fi)]
            for i, e in enumerate(k):
                keys.extend([("K" if e > 0 else "Ki", i)] * abs(e))
            keys.extend(("E", i) for i in x.alg.word(en, ei))
            out = _vadd(out, self.apply_word(keys, v), c)
        return out

    def matrix(self, x: AlgElt) -> list[list[RatFunc]]:
        """Dense matrix (rows) of x; exact on full modules."""
        n = self.dim
        rows = [[ZERO] * n for _ in range(n)]
        for j in range(n):
            for i, c in self.apply(x, {j: ONE}).items():
                rows[i][j] = c
        return rows

    def op_matrix(self, key) -> list[list[RatFunc]]:
        n = self.dim
        rows = [[ZERO] * n for _ in range(n)]
        for j, col in enumerate(self.ops[key]):
            for i, c in col.items():
                rows[i][j] = c
        return rows

    # relations --------------------------------------------------------------
    def relation_failures(self) -> list[str]:
        """Defining relations of U_q(g) checked on columns deep enough in the window."""
        d = self.datum
        n = d.rank
        fails = []

        def check(name, lhs_terms, rhs_terms, depth):
            for j in self.interior(depth):
                e = {j: ONE}
                lhs: dict = {}
                for c, keys in lhs_terms:
                    lhs = _vadd(lhs, self.apply_word(keys, e), c)
                rhs: dict = {}
                for c, keys in rhs_terms:
                    rhs = _vadd(rhs, self.apply_word(keys, e), c)
                if lhs != rhs:
                    fails.append("%s at %s" % (name, self.labels[j]))
                    return

        for i in range(n):
            check("K%dK%d^-1" % (i + 1, i + 1), [(ONE, [("K", i), ("Ki", i)])], [(ONE, [])], 2)
            check("K%d^-1K%d" % (i + 1, i + 1), [(ONE, [("Ki", i), ("K", i)])], [(ONE, [])], 2)
            for j in range(n):
                a = d.gram[i][j]
                check("K%dK%d" % (i + 1, j + 1), [(ONE, [("K", i), ("K", j)])],
                      [(ONE, [("K", j), ("K", i)])], 2)
                check("K%dE%d" % (i + 1, j + 1), [(ONE, [("K", i), ("E", j)])],
                      [(q(a), [("E", j), ("K", i)])], 2)
                check("K%dF%d" % (i + 1, j + 1), [(ONE, [("K", i), ("F", j)])],
                      [(q(-a), [("F", j), ("K", i)])], 2)
                rhs = []
                if i == j:
                    c = ONE / (q(d.d[i]) - q(-d.d[i]))
                    rhs = [(c, [("K", i)]), (-c, [("Ki", i)])]
                check("[E%d,F%d]" % (i + 1, j + 1),
                      [(ONE, [("E", i), ("F", j)]), (-ONE, [("F", j), ("E", i)])], rhs, 2)
        for _deg, terms in self.alg.serre_relations():
            for kind in ("E", "F"):
                word = terms[0][1]
                check("Serre %s%s" % (kind, "".join(str(x + 1) for x in word)),
                      [(c, [(kind, x) for x in w]) for c, w in terms], [], len(word))
        return fails

    # export -----------------------------------------------------------------
    def export(self) -> dict:
        mats = {}
        for (kind, i), cols in sorted(self.ops.items()):
            trip = []
            for j, col in enumerate(cols):
                for r, c in sorted(col.items()):
                    trip.append([r, j, str(c)])
            mats["%s%d" % (kind, i + 1)] = trip
        return {"datum": self.datum.name, "kind": self.kind,
                "labels": [list(lab) if isinstance(lab, tuple) else lab for lab in self.labels],
                "boundary": [list(lab) if isinstance(lab, tuple) else lab for lab in self.boundary],
                "matrices": mats}


def _compute_margins(labels: list, ops: dict, dropped: set) -> list:
    """Largest depth for which every generator word stays inside the window."""
    n = len(labels)
    margin = [0 if j in dropped else INF for j in range(n)]
    changed = True
    while changed:
        changed = False
        for j in range(n):
            if margin[j] == 0:
                continue
            m = INF
            for cols in ops.values():
                for i in cols[j]:
                    m = min(m, margin[i] + 1 if margin[i] < INF else INF)
            if m < margin[j]:
                margin[j] = m
                changed = True
    return margin


# ----------------------------------------------------------------------------
# sl2 simple modules

def sl2_simple(n: int, eps: int = 1) -> ModuleWindow:
    """L(n, eps): K m_i = eps q^(n-2i) m_i, F m_i = m_(i+1), E m_i = eps [i][n+1-i] m_(i-1)."""
    if n < 0 or eps not in (1, -1):
        raise ModuleError("need n >= 0 and eps = +-1")
    d = get_datum("A1")
    K = [{i: RatFunc.qpow(n - 2 * i, eps)} for i in range(n + 1)]
    Ki = [{i: RatFunc.qpow(2 * i - n, eps)} for i in range(n + 1)]
    F = [({i + 1: ONE} if i < n else {}) for i in range(n + 1)]
    E = [({i - 1: qint(i) * qint(n + 1 - i) * eps} if i > 0 else {}) for i in range(n + 1)]
    ops = {("E", 0): E, ("F", 0): F, ("K", 0): K, ("Ki", 0): Ki}
    return ModuleWindow(d, [("m", i) for i in range(n + 1)], ops, "full",
                        meta={"n": n, "eps": eps})


# ----------------------------------------------------------------------------
# simple modules L(lambda) by Verma quotient

def dynkin_labels(datum: RootDatum, coords: Sequence) -> tuple:
    """<lambda, a_i^vee> for lambda given in simple-root coordinates (rationals allowed)."""
    out = []
    for i in range(datum.rank):
        s = sum(Fraction(c) * datum.gram[j][i] for j, c in enumerate(coords))
        v = 2 * s / datum.gram[i][i]
        if v.denominator != 1:
            raise ModuleError("weight is not integral")
        out.append(int(v))
    return tuple(out)


def weyl_dimension(datum: RootDatum, lam: Sequence[int]) -> int:
    """prod over positive roots of (lambda + rho, a^vee) / (rho, a^vee)."""
    num = Fraction(1)
    for a in datum.positive_roots:
        aa = datum.form(a, a)
        lr = sum(Fraction(c * (lam[j] + 1) * datum.d[j] * 2, aa) for j, c in enumerate(a))
        r = sum(Fraction(c * datum.d[j] * 2, aa) for j, c in enumerate(a))
        num *= lr / r
    if num.denominator != 1:
        raise ModuleError("non-integral Weyl dimension")
    return int(num)


def _lam_pair(datum: RootDatum, lam: Sequence[int], k: Sequence[int]) -> int:
    """(lambda, sum k_j a_j) for lambda with Dynkin labels lam."""
    return sum(kj * lam[j] * datum.d[j] for j, kj in enumerate(k))


def simple_module(datum: RootDatum, lam: Sequence[int], bound: int = 12, cap: int = 30) -> ModuleWindow:
    """L(lambda) of type +1 as the quotient of the Verma module by its radical."""
    lam = tuple(int(x) for x in lam)
    if len(lam) != datum.rank or any(x < 0 for x in lam):
        raise ModuleError("lambda must be dominant integral (Dynkin labels)")
    expected = weyl_dimension(datum, lam)
    if expected > cap:
        raise ModuleError("dim L(lambda) = %d exceeds the cap %d" % (expected, cap))
    alg = get_algebra(datum, bound)
    n = datum.rank
    zero = alg.zero_vec

    def e_action(i: int, nu: Vec, word: tuple) -> dict:
        """E_i F_word v_lambda in Verma coordinates of degree nu - a_i."""
        prod = alg.E(i) * alg.fword(word)
        out: dict = {}
        for (fn, fi, k, en, ei), c in prod.terms.items():
            if any(en):
                continue
            out[fi] = out.get(fi, ZERO) + c * q(_lam_pair(datum, lam, k))
        return {k: v for k, v in out.items() if v}

    # level-by-level quotient: reps[nu] = chosen words, proj[nu] expresses Verma vectors
    reps: dict = {zero: [()]}
    proj: dict = {}
    proj_ech = {}

    def project(nu: Vec, vec: dict) -> dict:
        """Coordinates in L_nu of a Verma vector (Verma basis index -> coeff)."""
        if nu == zero:
            return {0: vec.get(0, ZERO)} if vec.get(0) else {}
        ech, images = proj_ech[nu]
        img = image(nu, vec)
        if not img:
            return {}
        sol = ech.express(img)
        if sol is None:
            raise ModuleError("projection failed at %s" % (nu,))
        return {k: v for k, v in sol.items() if v}

    def image(nu: Vec, vec: dict) -> dict:
        """(i, L-coordinate) -> coeff of (E_i x)_i for x = sum vec."""
        out: dict = {}
        basis = alg.basis(nu)
        for idx, c in vec.items():
            word = basis.reps[idx]
            for i in range(n):
                if nu[i] == 0:
                    continue
                lower = vsub(nu, datum.simple[i])
                if lower not in reps:
                    continue
                for kk, v in project(lower, e_action(i, nu, word)).items():
                    key = (i, kk)
                    nv = out.get(key, ZERO) + c * v
                    if nv:
                        out[key] = nv
                    else:
                        out.pop(key, None)
        return out

    frontier = [zero]
    total = 1
    seen = {zero}
    while frontier:
        nxt = []
        for nu0 in frontier:
            for i in range(n):
                nu = vadd(nu0, datum.simple[i])
                if nu in seen:
                    continue
                seen.add(nu)
                if sum(nu) > bound:
                    raise ModuleError("height bound reached before the module closed")
                basis = alg.basis(nu)
                ech = Echelon()
                chosen = []
                for idx in range(len(basis)):
                    img = image(nu, {idx: ONE})
                    if ech.add(img, {len(chosen): ONE}):
                        chosen.append(basis.reps[idx])
                if chosen:
                    reps[nu] = chosen
                    proj_ech[nu] = (ech, None)
                    total += len(chosen)
                    if total > cap:
                        raise ModuleError("dimension cap exceeded")
                    nxt.append(nu)
        frontier = nxt

    degrees = sorted(reps, key=lambda v: (sum(v), v))
    labels = [(nu, w) for nu in degrees for w in reps[nu]]
    index = {lab: k for k, lab in enumerate(labels)}
    if len(labels) != expected:
        raise ModuleError("dimension %d differs from the Weyl formula %d" % (len(labels), expected))

    def to_global(nu: Vec, coords: dict) -> dict:
        return {index[(nu, reps[nu][k])]: c for k, c in coords.items()}

    ops: dict = {}
    for i in range(n):
        E, F, K, Ki = [], [], [], []
        for nu, word in labels:
            wt = _lam_pair(datum, lam, datum.simple[i]) - datum.form(nu, datum.simple[i])
            K.append({index[(nu, word)]: q(wt)})
            Ki.append({index[(nu, word)]: q(-wt)})
            up = vadd(nu, datum.simple[i])
            if up in reps:
                fw = alg.fword((i,) + word)
                vec = {fi: c for (fn, fi, *_r), c in fw.terms.items()}
                F.append(to_global(up, project(up, vec)))
            else:
                F.append({})
            if nu[i] > 0 and vsub(nu, datum.simple[i]) in reps:
                lower = vsub(nu, datum.simple[i])
                E.append(to_global(lower, project(lower, e_action(i, nu, word))))
            else:
                E.append({})
        ops[("E", i)], ops[("F", i)], ops[("K", i)], ops[("Ki", i)] = E, F, K, Ki
    return ModuleWindow(datum, labels, ops, "full", meta={"lambda": lam})


# ----------------------------------------------------------------------------
# restriction to a subalgebra

def _nullspace_in(vectors: list[dict], mat: Callable[[dict], dict]) -> list[dict]:
    """Basis of {sum c_k vectors[k] : mat(sum) = 0}."""
    ech = Echelon()
    kernel = []
    for k, v in enumerate(vectors):
        img = mat(v)
        track = {k: ONE}
        r = ech.reduce(img, track)
        if not r:
            comb: dict = {}
            for kk, c in track.items():
                comb = _vadd(comb, vectors[kk], c)
            if comb:
                kernel.append(comb)
        else:
            ech.add(img, {k: ONE})
    # orthogonalize into an echelon basis
    out = Echelon()
    for v in kernel:
        out.add(v)
    return out.basis()


def _common_eigenspaces(mats: list[list[dict]], dim: int) -> list[tuple[list[dict], tuple]]:
    """Joint eigenspaces of commuting-or-not operators (given as column lists)."""
    roots_cache: dict = {}

    def roots(k):
        if k not in roots_cache:
            dense = [[ZERO] * dim for _ in range(dim)]
            for j, col in enumerate(mats[k]):
                for i, c in col.items():
                    dense[i][j] = c
            roots_cache[k] = linalg.charpoly_roots(dense)
        return roots_cache[k]

    out = []

    def rec(k: int, space: list[dict], values: tuple):
        if not space:
            return
        if k == len(mats):
            out.append((space, values))
            return
        cols = mats[k]
        for c in roots(k):
            sub = _nullspace_in(space, lambda v: _vadd(_apply_cols(cols, v), v, -c))
            rec(k + 1, sub, values + (c,))

    rec(0, [{j: ONE} for j in range(dim)], ())
    return out


@dataclass
class CompositionReport:
    labels: list  # generator labels
    factors: list  # eigenvalue tuples of the 1-dim factors, in peeling order
    stuck_at: int | None  # stage with no common eigenvector, else None
    remaining: int  # dimension left when stuck

    @property
    def all_one_dimensional(self) -> bool:
        return self.stuck_at is None

    def record(self) -> dict:
        return {"generators": self.labels,
                "factors": [[str(v) for v in f] for f in self.factors],
                "outcome": "all factors 1-dim" if self.stuck_at is None
                else "higher-dimensional factor at stage %d" % self.stuck_at,
                "remaining_dim": self.remaining}


def _restrict_ops(V: ModuleWindow, gens: list[AlgElt]) -> list[list[dict]]:
    return [[V.apply(g, {j: ONE}) for j in range(V.dim)] for g in gens]


def _quotient(mats: list[list[dict]], dim: int, v: dict) -> tuple[list[list[dict]], int]:
    """Operators on the quotient by the invariant line through v."""
    p = min(v)
    keep = [j for j in range(dim) if j != p]
    pos = {j: k for k, j in enumerate(keep)}
    vp_inv = v[p].inverse()

    def reduce(w: dict) -> dict:
        c = w.get(p)
        if c:
            w = _vadd(w, v, -c * vp_inv)
        return {pos[j]: x for j, x in w.items() if j != p}

    return [[reduce(cols[j]) for j in keep] for cols in mats], dim - 1


def restrict_and_factor(V: ModuleWindow, C, labels: Sequence[str] | None = None) -> CompositionReport:
    """Greedy 1-dim peeling of V restricted to the algebra generated by C."""
    if V.kind != "full":
        raise ModuleError("restriction needs a full finite-dimensional module")
    if hasattr(C, "generators"):
        labels = [lab for lab, _ in C.generators]
        gens = [g for _, g in C.generators]
    else:
        gens = list(C)
        labels = list(labels or ["g%d" % k for k in range(len(gens))])
    mats = _restrict_ops(V, gens)
    dim = V.dim
    factors = []
    stage = 0
    while dim:
        spaces = _common_eigenspaces(mats, dim)
        if not spaces:
            return CompositionReport(list(labels), factors, stage, dim)
        space, values = spaces[0]
        factors.append(values)
        mats, dim = _quotient(mats, dim, space[0])
        stage += 1
    return CompositionReport(list(labels), factors, None, 0)


def one_dim_submodules(V: ModuleWindow, C) -> list[tuple[dict, dict]]:
    """All joint eigenspaces of C's generators on V as (values by label, basis vector)."""
    if hasattr(C, "generators"):
        labels = [lab for lab, _ in C.generators]
        gens = [g for _, g in C.generators]
    else:
        labels = ["g%d" % k for k in range(len(C))]
        gens = list(C)
    mats = _restrict_ops(V, gens)
    out = []
    for space, values in _common_eigenspaces(mats, V.dim):
        out.append((dict(zip(labels, values)), space[0], len(space)))
    return out


# ----------------------------------------------------------------------------
# induced modules U (x)_B k_chi

class CosetInduction:
    """U (x)_B k_chi with U = T B as vector spaces.

    ``t_gens`` and ``b_gens`` are lists of (name, element, laurent).  Basis
    monomials are ordered products of the T generators; B monomials are ordered
    products of the B generators.  An element y is rewritten as sum t*m by
    matching top parts in the grading by (F-content, E-content, K-vector) at
    maximal total letter count, which is exact as long as the top parts of the
    products t*m form a basis of that graded piece.
    """

    def __init__(self, alg: UqAlgebra, t_gens: list, b_gens: list, chi: dict):
        self.alg = alg
        self.t_gens = t_gens
        self.b_gens = b_gens
        self.chi = {name: coerce(v) for name, v in chi.items()}
        n = alg.n
        self.n = n
        self.sig = []  # per generator (side, index, fn, en, k, laurent)
        for side, gens in (("t", t_gens), ("b", b_gens)):
            for idx, (name, x, laurent) in enumerate(gens):
                top = self._top(x)
                sigs = {(m[0], m[3], m[2]) for m in top}
                if len(sigs) != 1:
                    raise InductionError("generator %s has an inhomogeneous top part" % name)
                fn, en, k = sigs.pop()
                if laurent and (any(fn) or any(en)):
                    raise InductionError("Laurent generator %s is not a K-monomial" % name)
                if not laurent and not any(fn) and not any(en):
                    raise InductionError("generator %s has no letters" % name)
                self.sig.append((side, idx, fn, en, k, laurent))
        lau = [s for s in self.sig if s[5]]
        if len(lau) != n:
            raise InductionError("need exactly rank-many Laurent generators")
        import sympy

        self._lau = lau
        m = sympy.Matrix([[s[4][i] for s in lau] for i in range(n)])
        if abs(m.det()) != 1:
            raise InductionError("Laurent generators do not span the K-lattice")
        self._lau_inv = m.inv()
        self._prod_cache: dict = {}
        self._top_cache: dict = {}
        self._cand_cache: dict = {}
        self._ech_cache: dict = {}

    @staticmethod
    def _dtot(m: tuple) -> int:
        return sum(m[0]) + sum(m[3])

    def _top(self, x: AlgElt) -> dict:
        if not x.terms:
            return {}
        d = max(self._dtot(m) for m in x.terms)
        return {m: c for m, c in x.terms.items() if self._dtot(m) == d}

    def _power(self, x: AlgElt, e: int, laurent_k: Vec | None) -> AlgElt:
        if laurent_k is not None:
            return self.alg.K(tuple(e * v for v in laurent_k))
        return x ** e

    def element(self, texps: tuple, bexps: tuple) -> AlgElt:
        key = (texps, bexps)
        hit = self._prod_cache.get(key)
        if hit is not None:
            return hit
        out = self.alg.one()
        for gens, exps in ((self.t_gens, texps), (self.b_gens, bexps)):
            for (name, x, laurent), e in zip(gens, exps):
                if e:
                    out = out * self._power(x, e, next(iter(x.terms))[2] if laurent else None)
        self._prod_cache[key] = out
        return out

    def t_element(self, texps: tuple) -> AlgElt:
        return self.element(tuple(texps), (0,) * len(self.b_gens))

    def _candidates(self, fn: Vec, en: Vec, k: Vec) -> list:
        key = (fn, en, k)
        hit = self._cand_cache.get(key)
        if hit is not None:
            return hit
        letters = [s for s in self.sig if not s[5]]
        out = []
        nt, nb = len(self.t_gens), len(self.b_gens)

        def rec(pos: int, f: Vec, e: Vec, kk: Vec, chosen: dict):
            if pos == len(letters):
                if any(f) or any(e):
                    return
                # solve the K part
                import sympy

                sol = self._lau_inv * sympy.Matrix(list(kk))
                if any(x.q != 1 for x in sol):
                    return
                ex = dict(chosen)
                for s, l in zip(self._lau, sol):
                    ex[(s[0], s[1])] = int(l)
                texps = tuple(ex.get(("t", i), 0) for i in range(nt))
                bexps = tuple(ex.get(("b", i), 0) for i in range(nb))
                out.append((texps, bexps))
                return
            side, idx, gf, ge, gk, _ = letters[pos]
            e_max = 0
            while True:
                f2 = tuple(a - (e_max + 1) * b for a, b in zip(f, gf))
                e2 = tuple(a - (e_max + 1) * b for a, b in zip(e, ge))
                if min(f2) < 0 or min(e2) < 0:
                    break
                e_max += 1
            for ex in range(e_max + 1):
                f2 = tuple(a - ex * b for a, b in zip(f, gf))
                e2 = tuple(a - ex * b for a, b in zip(e, ge))
                k2 = tuple(a - ex * b for a, b in zip(kk, gk))
                if ex:
                    chosen[(side, idx)] = ex
                rec(pos + 1, f2, e2, k2, chosen)
                chosen.pop((side, idx), None)

        rec(0, fn, en, k, {})
        self._cand_cache[key] = out
        return out

    def _echelon(self, sig: tuple) -> tuple[Echelon, list]:
        hit = self._ech_cache.get(sig)
        if hit is None:
            cands = self._candidates(*sig)
            ech = Echelon()
            for idx, c in enumerate(cands):
                top = self._top(self.element(*c))
                if not ech.add(top, {idx: ONE}):
                    raise InductionError("top parts dependent in degree %s" % (sig,))
            hit = (ech, cands)
            self._ech_cache[sig] = hit
        return hit

    def decompose(self, y: AlgElt) -> dict:
        """y = sum c (t*m) as {(texps, bexps): c}."""
        out: dict = {}
        while y.terms:
            top = self._top(y)
            groups: dict = {}
            for m, c in top.items():
                groups.setdefault((m[0], m[3], m[2]), {})[m] = c
            sub = self.alg.zero()
            for sig, vec in groups.items():
                ech, cands = self._echelon(sig)
                sol = ech.express(vec)
                if sol is None:
                    raise InductionError("no T*B expansion in degree %s" % (sig,))
                for idx, c in sol.items():
                    key = cands[idx]
                    out[key] = out.get(key, ZERO) + c
                    sub = sub + self.element(*key).scale(c)
            y = y - sub
        return {k: v for k, v in out.items() if v}

    def chi_of(self, bexps: tuple) -> RatFunc:
        out = ONE
        for (name, x, laurent), e in zip(self.b_gens, bexps):
            if e:
                out = out * self.chi[name] ** e
        return out

    def coords(self, y: AlgElt) -> dict:
        """y . 1_chi in the T basis."""
        out: dict = {}
        for (texps, bexps), c in self.decompose(y).items():
            v = c * self.chi_of(bexps)
            if v:
                nv = out.get(texps, ZERO) + v
                if nv:
                    out[texps] = nv
                else:
                    out.pop(texps)
        return out

    def character_failures(self) -> list[str]:
        """Pairs of B generators where chi(gh) differs from chi(g) chi(h)."""
        fails = []
        for (n1, x1, _), (n2, x2, _) in itertools.product(self.b_gens, repeat=2):
            got = self.coords(x1 * x2)
            t0 = (0,) * len(self.t_gens)
            if set(got) - {t0}:
                fails.append("%s*%s leaves B" % (n1, n2))
            elif got.get(t0, ZERO) != self.chi[n1] * self.chi[n2]:
                fails.append("%s*%s" % (n1, n2))
        return fails

    def module(self, labels: list, datum: RootDatum, meta: dict | None = None) -> ModuleWindow:
        index = {lab: k for k, lab in enumerate(labels)}
        ops: dict = {}
        dropped: set = set()
        alg = self.alg
        for i in range(self.n):
            for kind, x in (("E", alg.E(i)), ("F", alg.F(i)), ("K", alg.Ki(i, 1)), ("Ki", alg.Ki(i, -1))):
                cols = []
                for j, lab in enumerate(labels):
                    col = {}
                    for t, c in self.coords(x * self.t_element(lab)).items():
                        if t in index:
                            col[index[t]] = c
                        else:
                            dropped.add(j)
                    cols.append(col)
                ops[(kind, i)] = cols
        margin = _compute_margins(labels, ops, dropped)
        return ModuleWindow(datum, labels, ops, "window", margin, meta or {})


# ----------------------------------------------------------------------------
# sl2

@dataclass
class InducedSpec:
    """Character of a non-standard Borel plus a window radius."""

    borel: str  # "sl2" | "type1" | "type2"
    values: dict  # sl2: e, f; sl3: e1, f1, k
    window: int = 4
    lam: RatFunc = None
    lam_prime: RatFunc = None

    def __post_init__(self):
        from .coideal import LAMBDA, LAMBDA_PRIME

        if self.lam is None:
            self.lam = LAMBDA
        if self.lam_prime is None:
            self.lam_prime = LAMBDA_PRIME
        self.values = {k: coerce(v) for k, v in self.values.items()}
        if self.window < 1:
            raise ConstraintError("window radius must be positive")

    def constraint(self) -> tuple[RatFunc, RatFunc]:
        """(e f, lambda lambda') for the Weyl-algebra part."""
        if self.borel == "sl2":
            e, f = self.values["e"], self.values["f"]
        else:
            e, f = self.values["e1"], self.values["f1"]
        return e * f, self.lam * self.lam_prime

    def check(self) -> None:
        lhs, rhs = self.constraint()
        if lhs != rhs:
            raise ConstraintError("e*f = %s but lambda*lambda' = %s" % (lhs, rhs))
        if self.borel != "sl2" and not self.values.get("k"):
            raise ConstraintError("k must be nonzero")


def sl2_spec_for(e: RatFunc, window: int = 4) -> InducedSpec:
    """InducedSpec with f chosen to satisfy the constraint."""
    from .coideal import LAMBDA, LAMBDA_PRIME

    e = coerce(e)
    return InducedSpec("sl2", {"e": e, "f": LAMBDA * LAMBDA_PRIME / e}, window)


def _sl2_induction(spec: InducedSpec) -> CosetInduction:
    from .coideal import sl2_borel

    B = sl2_borel(spec.lam, spec.lam_prime)
    alg = B.alg
    t_gens = [("K", alg.Ki(0, 1), True)]
    b_gens = [("F1", B.generator("F1"), False), ("E1", B.generator("E1"), False)]
    return CosetInduction(alg, t_gens, b_gens, {"F1": spec.values["f"], "E1": spec.values["e"]})


def induced_sl2(spec: InducedSpec) -> ModuleWindow:
    """Window {K^n 1_chi : |n| <= N} of the induced module of B_{lambda,lambda'}."""
    if spec.borel != "sl2":
        raise ConstraintError("not an sl2 induction datum")
    spec.check()
    ind = _sl2_induction(spec)
    N = spec.window
    labels = [(n,) for n in range(-N, N + 1)]
    V = ind.module(labels, get_datum("A1"), {"spec": "sl2", "window": N})
    V.meta["induction"] = ind
    return V


def sl2_displayed_action(spec: InducedSpec, n: int) -> dict:
    """The closed formulas for K, F, E on K^n 1_chi, as {op: {m: coeff}}."""
    e, f = spec.values["e"], spec.values["f"]
    lam, lamp = spec.lam, spec.lam_prime
    return {
        "K": {n + 1: ONE},
        "F": {n: q(2 * n) * f, n - 1: -q(2 * n) * lamp},
        "E": {n + 1: q(-2 * n - 2) * e, n: -q(-2 * n - 2) * lam},
    }


def sl2_submodule_test(spec: InducedSpec) -> tuple[int, int] | None:
    """(n, eps) with chi(E-bar) = eps q^n lambda and n >= 0, or None (irreducible)."""
    r = spec.values["e"] / spec.lam
    if not r.is_laurent():
        return None
    cs = r.laurent_coeffs()
    if len(cs) != 1:
        return None
    (n, c), = cs.items()
    if n < 0 or c not in (1, -1):
        return None
    eps = int(c)
    # equivalent form on f
    if spec.values["f"] != RatFunc.qpow(-n, eps) * spec.lam_prime:
        return None
    return n, eps


def _dot(row: list, v: dict) -> RatFunc:
    out = ZERO
    for j, c in v.items():
        if row[j]:
            out = out + row[j] * c
    return out


def _laurent_mul_x(p: dict, e: int) -> dict:
    return {k + e: v for k, v in p.items()}


def _poly_rem_zero(a: dict, p: dict) -> bool:
    """Is the Laurent polynomial a divisible by p in Q(q)[X, X^-1]?"""
    a = dict(a)
    if not a:
        return True
    plo, phi = min(p), max(p)
    lead = p[phi]
    while a:
        hi = max(a)
        lo = min(a)
        if hi - lo < phi - plo:
            return False
        c = a[hi] / lead
        for k, v in p.items():
            key = k + hi - phi
            nv = a.get(key, ZERO) - c * v
            if nv:
                a[key] = nv
            else:
                a.pop(key, None)
    return True


def ideal_is_submodule(spec: InducedSpec, P: dict) -> bool:
    """Is the ideal (P) of k[K, K^-1] stable under E and F (window-free, exact)?"""
    fe = {}
    ff = {}
    for n, c in P.items():
        for op, col in sl2_displayed_action(spec, n).items():
            tgt = ff if op == "F" else fe if op == "E" else None
            if tgt is None:
                continue
            for m, v in col.items():
                nv = tgt.get(m, ZERO) + c * v
                if nv:
                    tgt[m] = nv
                else:
                    tgt.pop(m, None)
    return _poly_rem_zero(fe, P) and _poly_rem_zero(ff, P)


def frobenius_homs(spec: InducedSpec, nmax: int) -> list[tuple[int, int]]:
    """(n, eps) with Hom_U(V(chi), L(n, eps)) != 0, via eigenvectors of B in L(n, eps)."""
    from .coideal import sl2_borel

    B = sl2_borel(spec.lam, spec.lam_prime)
    Ebar, Fbar = B.generator("E1"), B.generator("F1")
    e, f = spec.values["e"], spec.values["f"]
    out = []
    for n in range(nmax + 1):
        for eps in (1, -1):
            L = sl2_simple(n, eps)
            basis = [{j: ONE} for j in range(L.dim)]
            sub = _nullspace_in(basis, lambda v: _vadd(L.apply(Ebar, v), v, -e))
            sub = _nullspace_in(sub, lambda v: _vadd(L.apply(Fbar, v), v, -f))
            if sub:
                out.append((n, eps))
    return out


def kernel_polynomial(n: int, eps: int) -> dict:
    """Characteristic polynomial of K on L(n, eps) as {exponent: coeff}."""
    P = {0: ONE}
    for k in range(n + 1):
        root = RatFunc.qpow(n - 2 * k, eps)
        P = _vadd(_laurent_mul_x(P, 1), P, -root)
    return P


def submodule_oracle(spec: InducedSpec, nmax: int) -> tuple[int, int] | None:
    """Finite-dimensional quotients by Frobenius reciprocity, confirmed on the ideal level.

    Every nonzero proper submodule (P) is cofinite and V/(P) has an irreducible
    quotient L(n, eps) with n < deg P; conversely a nonzero map to L(n, eps) is
    onto.  The kernel is the ideal of the characteristic polynomial of K on
    L(n, eps), which is checked for E/F stability directly.
    """
    hits = frobenius_homs(spec, nmax)
    if not hits:
        return None
    n, eps = hits[0]
    if not ideal_is_submodule(spec, kernel_polynomial(n, eps)):
        raise ModuleError("kernel ideal is not a submodule")
    return n, eps


@dataclass
class QuotientHom:
    n: int
    eps: int
    phi0: list  # phi_k(1_chi)
    matrix: list  # rows k, columns window labels
    inconsistencies: int
    hom_ok: bool


def sl2_quotient_hom(spec: InducedSpec, n: int, eps: int) -> QuotientHom:
    """The surjection V(chi) -> L(n, eps) on the window, with its recurrences checked."""
    V = induced_sl2(spec)
    L = sl2_simple(n, eps)
    e, f, lam, lamp = spec.values["e"], spec.values["f"], spec.lam, spec.lam_prime
    # phi_(k-1)(1) = (f - eps lambda' q^-(n-2k)) phi_k(1), phi_n(1) = 1
    phi0 = [ZERO] * (n + 1)
    phi0[n] = ONE
    for k in range(n, 0, -1):
        phi0[k - 1] = (f - RatFunc.qpow(-(n - 2 * k), eps) * lamp) * phi0[k]
    bad = 0
    if f - RatFunc.qpow(-n, eps) * lamp:
        bad += 1  # boundary k = 0
    for k in range(n + 1):
        rhs = q(-2) * (RatFunc.qpow(n - 2 * k, eps) * e - lam) * phi0[k]
        lhs = (qint(k + 1) * qint(n - k) * eps * phi0[k + 1]) if k < n else ZERO
        if lhs != rhs:
            bad += 1
    if any(not x for x in phi0):
        bad += 1

    def phi(k: int, i: int) -> RatFunc:
        return RatFunc.qpow((n - 2 * k) * i, eps ** (i % 2)) * phi0[k]

    labels = V.labels
    mat = [[phi(k, lab[0]) for lab in labels] for k in range(n + 1)]
    # recurrences at every window index, straight from the displayed action
    for lab in labels:
        i = lab[0]
        for k in range(n + 1):
            left = phi(k - 1, i) if k > 0 else ZERO
            right = q(2 * i) * f * phi(k, i) - q(2 * i) * lamp * phi(k, i - 1)
            if left != right:
                bad += 1
            left = (qint(k + 1) * qint(n - k) * eps * phi(k + 1, i)) if k < n else ZERO
            right = q(-2 * i - 2) * e * phi(k, i + 1) - q(-2 * i - 2) * lam * phi(k, i)
            if left != right:
                bad += 1
    # hom property on interior columns
    hom_ok = True
    for key in (("K", 0), ("Ki", 0), ("E", 0), ("F", 0)):
        for j in V.interior(1):
            img = V.apply_op(key, {j: ONE})
            lhs = [_dot(mat[k], img) for k in range(n + 1)]
            col = {k: mat[k][j] for k in range(n + 1) if mat[k][j]}
            out = L.apply_op(key, col)
            rhs = [out.get(k, ZERO) for k in range(n + 1)]
            if lhs != rhs:
                hom_ok = False
    return QuotientHom(n, eps, phi0, mat, bad, hom_ok)


def quotient_character_search(B, L: ModuleWindow) -> dict:
    """Values of B's generators on a 1-dim submodule of L restricted to B."""
    subs = one_dim_submodules(L, B)
    if not subs:
        raise ModuleError("no 1-dim submodule: the restriction has no character")
    return subs[0][0]


# ----------------------------------------------------------------------------
# sl3

_SL3_CHI = {"type1": {"F1": "f1", "K(1,2)": "k", "K(-1,-2)": "kinv", "E1": "e1", "E12": None, "E2": None},
            "type2": {"F1": "f1", "F12": None, "K(1,2)": "k", "K(-1,-2)": "kinv", "E1": "e1",
                      "E12": None}}


def _sl3_induction(borel_id: str, values: dict, lam=None, lam_prime=None) -> CosetInduction:
    from .coideal import LAMBDA, LAMBDA_PRIME, sl3_borel

    B = sl3_borel(borel_id, lam or LAMBDA, lam_prime or LAMBDA_PRIME)
    alg = B.alg
    g = B.generator
    if borel_id == "type1":
        t_gens = [("F2", alg.root_vector((1, 0), 1, "F"), False),
                  ("F12", alg.root_vector((1, 0), 2, "F"), False),
                  ("K2", alg.Ki(1, 1), True)]
        b_gens = [("F1", g("F1"), False), ("K(1,2)", g("K(1,2)"), True),
                  ("E1", g("E1"), False), ("E12", g("E12"), False), ("E2", g("E2"), False)]
    elif borel_id == "type2":
        t_gens = [("F2", alg.F(1), False), ("E2", alg.E(1), False), ("K2", alg.Ki(1, 1), True)]
        b_gens = [("F12", g("F12"), False), ("F1", g("F1"), False), ("K(1,2)", g("K(1,2)"), True),
                  ("E12", g("E12"), False), ("E1", g("E1"), False)]
    else:
        raise ConstraintError("unknown sl3 Borel " + repr(borel_id))
    chi = {}
    for name, _x, _l in b_gens:
        key = _SL3_CHI[borel_id][name]
        chi[name] = values[key] if key else ZERO
    return CosetInduction(alg, t_gens, b_gens, chi)


def induced_sl3(borel_id: str, values: dict, window: int = 2) -> ModuleWindow:
    """Window {t 1_chi : i, j <= N, |k| <= 2N} over the coset basis of the Borel.

    K_1 moves the K_2-exponent by two, so the K-direction gets twice the radius.
    """
    spec = InducedSpec(borel_id, values, window)
    spec.check()
    ind = _sl3_induction(borel_id, spec.values, spec.lam, spec.lam_prime)
    N = window
    labels = [(i, j, k) for i in range(N + 1) for j in range(N + 1) for k in range(-2 * N, 2 * N + 1)]
    V = ind.module(labels, get_datum("A2"), {"borel": borel_id, "window": N})
    V.meta["induction"] = ind
    return V
