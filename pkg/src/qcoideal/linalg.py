"""Exact sparse linear algebra over Q(q).

Vectors are dicts ``column -> RatFunc`` with no zero entries.  Column order is
supplied by a key function, which lets callers choose which monomials become
pivots (e.g. highest Z-degree first for leading-term extraction).
"""
from __future__ import annotations

from typing import Callable, Hashable, Iterable, Sequence

from .qfield import ONE, ZERO, FieldError, RatFunc

Vector = dict


def vec_add(a: Vector, b: Vector, c: RatFunc = ONE) -> Vector:
    """a + c*b (new dict)."""
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k, ZERO) + c * v if k in out else c * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def vec_scale(a: Vector, c: RatFunc) -> Vector:
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


def _axpy_inplace(a: Vector, b: Vector, c: RatFunc) -> None:
    for k, v in b.items():
        if k in a:
            nv = a[k] + c * v
            if nv:
                a[k] = nv
            else:
                del a[k]
        else:
            a[k] = c * v


class Echelon:
    """Incremental row echelon form with a caller-defined column order.

    Each stored row is normalised so that its leading column (the minimum
    under ``key``) has coefficient 1, and no two rows share a leading column.
    """

    def __init__(self, key: Callable[[Hashable], object] | None = None):
        self.key = key or (lambda c: c)
        self.rows: dict = {}  # pivot column -> row
        self.tags: dict = {}  # pivot column -> user tag (combination record)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _lead(self, v: Vector):
        return min(v, key=self.key)

    def reduce(self, v: Vector, track: Vector | None = None) -> Vector:
        """Fully reduce leading entries of v against stored rows.

        If ``track`` is given it is updated in place with the combination of
        stored-row tags subtracted (used to express v through the inputs).
        """
        v = dict(v)
        while v:
            lead = self._lead(v)
            row = self.rows.get(lead)
            if row is None:
                return v
            c = v[lead]
            _axpy_inplace(v, row, -c)
            if track is not None:
                _axpy_inplace(track, self.tags[lead], -c)
        return v

    def add(self, v: Vector, tag: Vector | None = None) -> bool:
        """Insert v; return True if it increased the rank."""
        track = dict(tag) if tag is not None else None
        r = self.reduce(v, track)
        if not r:
            return False
        lead = self._lead(r)
        inv = r[lead].inverse()
        if not inv.is_one():
            r = vec_scale(r, inv)
            if track is not None:
                track = vec_scale(track, inv)
        self.rows[lead] = r
        if track is not None:
            self.tags[lead] = track
        return True

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def express(self, v: Vector) -> Vector | None:
        """Tag combination equal to v, or None if v is not in the span."""
        track: Vector = {}
        r = self.reduce(v, track)
        if r:
            return None
        return {k: -c for k, c in track.items()}

    def pivots(self) -> list:
        return sorted(self.rows, key=self.key)

    def basis(self) -> list[Vector]:
        return [self.rows[p] for p in self.pivots()]


def rank(vectors: Iterable[Vector]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def span_equal(a: Sequence[Vector], b: Sequence[Vector]) -> bool:
    ea = Echelon()
    for v in a:
        ea.add(v)
    eb = Echelon()
    for v in b:
        eb.add(v)
    if ea.rank != eb.rank:
        return False
    return all(ea.contains(v) for v in b)


def inverse(m: Sequence[Sequence[RatFunc]]) -> list[list[RatFunc]]:
    """Gauss-Jordan inverse of a square matrix over Q(q)."""
    n = len(m)
    a = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = None
        best = None
        for r in range(col, n):
            x = a[r][col]
            if x:
                # prefer simple pivots to keep degrees down
                size = x.num.degree() + x.den.degree()
                if best is None or size < best:
                    piv, best = r, size
        if piv is None:
            raise FieldError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        rowc = [x * inv if x else x for x in a[col]]
        a[col] = rowc
        nz = [j for j in range(2 * n) if rowc[j]]
        for r in range(n):
            if r == col:
                continue
            f = a[r][col]
            if not f:
                continue
            row = a[r]
            for j in nz:
                row[j] = row[j] - f * rowc[j]
    return [row[n:] for row in a]


def matvec(m: Sequence[Sequence[RatFunc]], v: Sequence[RatFunc]) -> list[RatFunc]:
    out = []
    for row in m:
        s = ZERO
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def is_nilpotent(m: Sequence[Sequence[RatFunc]]) -> bool:
    """Exact test: M^n == 0 for an n x n matrix."""
    n = len(m)
    if n == 0:
        return True
    p = [list(r) for r in m]
    for _ in range(n - 1):
        p = matmul(p, m)
        if all(not x for r in p for x in r):
            return True
    return all(not x for r in p for x in r)


def matmul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[ZERO] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if not x:
                continue
            bt = b[t]
            for j in range(m):
                y = bt[j]
                if y:
                    oi[j] = oi[j] + x * y
    return out


def matrix_rank(m: Sequence[Sequence[RatFunc]]) -> int:
    return rank({j: x for j, x in enumerate(row) if x} for row in m)


def nullspace(m: Sequence[Sequence[RatFunc]], ncols: int) -> list[list[RatFunc]]:
    """Basis of {x : m x = 0}."""
    rows = [list(r) for r in m]
    piv_cols = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv if x else x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in piv_cols]
    out = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for i, pc in enumerate(piv_cols):
            v[pc] = -rows[i][fc]
        out.append(v)
    return out


def identity(n: int) -> list[list[RatFunc]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def is_zero_matrix(m) -> bool:
    return all(not x for r in m for x in r)


def _to_qpolys(m: Sequence[Sequence[RatFunc]]):
    """Clear denominators: m = m' / d with m' polynomial in q; returns (m' as coefficient lists, d)."""
    import flint

    den = None
    lo = 0
    for row in m:
        for x in row:
            if x:
                den = x.den if den is None else den * x.den / den.gcd(x.den)
                lo = min(lo, x.shift)
    if den is None:
        return [[[] for _ in row] for row in m], ONE
    d = RatFunc(den, flint.fmpq_poly([1]), -lo)
    out = []
    for row in m:
        r = []
        for x in row:
            if not x:
                r.append([])
                continue
            y = x * d
            coeffs = [0] * y.shift + list(y.num.coeffs())
            r.append(coeffs)
        out.append(r)
    return out, d


def charpoly_roots(m: Sequence[Sequence[RatFunc]]) -> list[RatFunc]:
    """Distinct roots in Q(q) of the characteristic polynomial of a square matrix."""
    import flint

    n = len(m)
    if n == 0:
        return []
    polys, d = _to_qpolys(m)
    ctx = flint.fmpq_mpoly_ctx.get(("t", "q"), "lex")
    t, qq = ctx.gens()
    zero = ctx.from_dict({})

    def conv(cs):
        return ctx.from_dict({(0, e): c for e, c in enumerate(cs) if c != 0}) if cs else zero

    a = [[conv(x) for x in row] for row in polys]
    # Faddeev-LeVerrier: only divisions by integers
    coeffs = [zero] * (n + 1)
    coeffs[n] = ctx.from_dict({(0, 0): 1})
    mk = [[zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        prod = [[zero] * n for _ in range(n)]
        for i in range(n):
            for l in range(n):
                x = a[i][l]
                if x.is_zero():
                    continue
                ml = mk[l]
                pi = prod[i]
                for j in range(n):
                    if not ml[j].is_zero():
                        pi[j] = pi[j] + x * ml[j]
        c_prev = coeffs[n - k + 1]
        # M_k = A M_{k-1} + c_{n-k+1} I
        mk = prod
        for i in range(n):
            mk[i][i] = mk[i][i] + c_prev
        am = zero
        for i in range(n):
            for l in range(n):
                if not a[i][l].is_zero() and not mk[l][i].is_zero():
                    am = am + a[i][l] * mk[l][i]
        coeffs[n - k] = am * flint.fmpq(-1, k)
    poly = zero
    for k, c in enumerate(coeffs):
        if not c.is_zero():
            poly = poly + c * t ** k
    roots = []
    _, factors = poly.factor()
    for f, _mult in factors:
        if f.degrees()[0] != 1:
            continue
        lin: dict = {}
        cst: dict = {}
        for (et, eq), c in f.to_dict().items():
            (lin if et == 1 else cst)[eq] = c
        r = -RatFunc.laurent(cst) / RatFunc.laurent(lin)
        r = r / d
        if r not in roots:
            roots.append(r)
    return roots
