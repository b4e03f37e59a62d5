"""Independent Hopf-algebra and automorphism checks shared by the test modules."""
from __future__ import annotations

import itertools

from qcoideal.qfield import ONE, ZERO
from qcoideal.uqalg import AlgElt, UqAlgebra, multiset_words


def generators(alg: UqAlgebra) -> list[AlgElt]:
    out = []
    for i in range(alg.n):
        out += [alg.E(i), alg.F(i), alg.Ki(i, 1), alg.Ki(i, -1)]
    return out


def products(alg: UqAlgebra, length: int) -> list[AlgElt]:
    gens = generators(alg)
    out = []
    for k in range(1, length + 1):
        for tup in itertools.product(gens, repeat=k):
            x = alg.one()
            for g in tup:
                x = x * g
            out.append(x)
    return out


def _mono(alg, m):
    return AlgElt(alg, {m: ONE})


def delta_left(alg, x) -> dict:
    """(Delta (x) id) Delta(x) as {(m1, m2, m3): c}."""
    out: dict = {}
    for (a, b), c in alg.coproduct(x).terms.items():
        for (a1, a2), c2 in alg.coproduct(_mono(alg, a)).terms.items():
            key = (a1, a2, b)
            out[key] = out.get(key, ZERO) + c * c2
    return {k: v for k, v in out.items() if v}


def delta_right(alg, x) -> dict:
    out: dict = {}
    for (a, b), c in alg.coproduct(x).terms.items():
        for (b1, b2), c2 in alg.coproduct(_mono(alg, b)).terms.items():
            key = (a, b1, b2)
            out[key] = out.get(key, ZERO) + c * c2
    return {k: v for k, v in out.items() if v}


def hopf_failures(alg: UqAlgebra, xs) -> list[str]:
    bad = []
    for x in xs:
        if delta_left(alg, x) != delta_right(alg, x):
            bad.append("coassociativity: %s" % x)
        t = alg.coproduct(x)
        if t.apply_left(alg.counit) != x or t.apply_right(alg.counit) != x:
            bad.append("counit: %s" % x)
        eps = alg.scalar(alg.counit(x))
        if t.multiply_out(alg.antipode) != eps:
            bad.append("antipode left: %s" % x)
        right = alg.zero()
        for (a, b), c in t.terms.items():
            right = right + AlgElt(alg, {a: c}) * alg.antipode(_mono(alg, b))
        if right != eps:
            bad.append("antipode right: %s" % x)
    for x, y in itertools.product(xs[:12], repeat=2):
        if alg.coproduct(x * y) != alg.coproduct(x) * alg.coproduct(y):
            bad.append("Delta multiplicative: %s, %s" % (x, y))
        if alg.antipode(x * y) != alg.antipode(y) * alg.antipode(x):
            bad.append("S anti-multiplicative: %s, %s" % (x, y))
    return bad


def relation_words(alg: UqAlgebra) -> list[tuple]:
    """All E- and F-words in the Serre degrees."""
    out = []
    for deg, _ in alg.serre_relations():
        out.extend(multiset_words(deg))
    return out


def automorphism_failures(alg: UqAlgebra, f) -> list[str]:
    """f (a map on AlgElt extended from generators) respects every defining relation."""
    gens = generators(alg)
    bad = []
    for g, h in itertools.product(gens, repeat=2):
        if f(g * h) != f(g) * f(h):
            bad.append("%s * %s" % (g, h))
    for w in relation_words(alg):
        for kind in ("E", "F"):
            letters = [alg.E(i) if kind == "E" else alg.F(i) for i in w]
            prod = alg.one()
            for x in letters:
                prod = prod * f(x)
            whole = alg.eword(w) if kind == "E" else alg.fword(w)
            if f(whole) != prod:
                bad.append("%s-word %s" % (kind, w))
    return bad
