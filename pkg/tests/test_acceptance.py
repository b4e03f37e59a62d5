"""Acceptance criteria 1-10; a per-criterion verdict line is printed in the terminal summary."""
from __future__ import annotations

import itertools
import time

import pytest

from _checks import automorphism_failures, hopf_failures, products
from qcoideal import coideal as cd
from qcoideal import repthy as rt
from qcoideal.linalg import Echelon, span_equal
from qcoideal.qfield import ONE, Q, RatFunc, coerce, q
from qcoideal.rootsys import get_datum, reduced_words
from qcoideal.uqalg import get_algebra, qcomm, render


def crit(n):
    return pytest.mark.criterion(n)


# ----------------------------------------------------------------------------
# 1. quantum Weyl identity

@crit(1)
def test_c1_weyl_identity():
    t = time.perf_counter()
    B = cd.sl2_borel(ONE, q(2) / ((ONE - q(2)) * (Q - q(-1))))
    lhs, rhs = cd.weyl_identity(B)
    assert lhs == rhs == B.alg.scalar(q(2) / (Q - q(-1)))
    assert time.perf_counter() - t < 1.0


# ----------------------------------------------------------------------------
# 2. sl3 type-2 relations

@pytest.fixture(scope="module")
def type2():
    return cd.sl3_borel("type2")


@crit(2)
@pytest.mark.xfail(strict=True, reason="three relations fail as displayed; see the corrected test")
def test_c2_type2_relations_as_displayed(type2):
    rel = cd.sl3_type2_relations(type2)
    assert [k for k, (lhs, rhs) in rel.items() if lhs != rhs] == []


@crit(2)
def test_c2_type2_relations_that_hold_as_displayed(type2):
    rel = cd.sl3_type2_relations(type2)
    failing = {k for k, (lhs, rhs) in rel.items() if lhs != rhs}
    assert failing == {"[K,E12]_1", "[K,F12]_1", "[E12,F12]_q^2"}
    lhs, rhs = rel["c1*c2"]
    assert lhs == rhs


@crit(2)
def test_c2_type2_relations_corrected(type2):
    for name, (lhs, rhs) in cd.sl3_type2_corrected_relations(type2).items():
        assert lhs == rhs, name


# ----------------------------------------------------------------------------
# 3. Conjecture A sweep

SWEEP = {"A2": 6, "A3": 24, "B3": 48, "C3": 48, "G2": 12}


@crit(3)
@pytest.mark.parametrize("name", sorted(SWEEP))
def test_c3_conjecture_a_sweep(name):
    d = get_datum(name)
    assert len(d.all_elements()) == SWEEP[name]
    reps = cd.conjA_sweep(d)
    assert len(reps) == len(cd.sweep_cases(d)) > 0
    bad = []
    for rep in reps:
        w = d.element(rep.w)
        pred = cd.conjA_predict(w, rep.supp)
        ok = (rep.w_prime is not None and d.element(rep.w_prime) == pred
              and w.length == rep.group_rank + pred.length and rep.verdict == "confirmed")
        if not ok:
            bad.append(rep.record())
    assert bad == []


# ----------------------------------------------------------------------------
# 4. A3 example expansions

@pytest.fixture(scope="module")
def a3_example():
    d = get_datum("A3")
    alg = get_algebra(d)
    a, b = Q + 2, coerce(3)
    F1, F2, F3 = alg.F(0), alg.F(1), alg.F(2)
    u, w = (2, 0, 1), (2, 0, 1, 0)
    F123 = alg.root_vector(u, 3, "F")
    F23 = alg.root_vector(w, 4, "F")
    bar123 = cd.character_shift(F123, cd.Character.make(d.element(u), {0: a, 2: b}))
    bar23 = cd.character_shift(F23, cd.Character.make(d.element(w), {0: a, 2: b}))
    return dict(alg=alg, a=a, b=b, F1=F1, F2=F2, F3=F3, F123=F123, F23=F23,
                bar123=bar123, bar23=bar23, K1=alg.Ki(0, -1), K3=alg.Ki(2, -1))


@crit(4)
def test_c4_root_vectors(a3_example):
    x = a3_example
    assert x["F123"] == qcomm(x["F1"], qcomm(x["F3"], x["F2"], Q), Q)
    assert x["F23"] == qcomm(x["F3"], x["F2"], Q)


@crit(4)
def test_c4_shift_expansions(a3_example):
    x = a3_example
    c = q(-1) - Q
    F12 = qcomm(x["F1"], x["F2"], Q)
    want123 = (x["F123"] + (x["F23"] * x["K1"]).scale(x["a"] * c)
               + (F12 * x["K3"]).scale(x["b"] * c)
               + (x["F2"] * x["K1"] * x["K3"]).scale(x["a"] * x["b"] * c * c))
    assert render(x["bar123"]) == render(want123)
    assert render(x["bar23"]) == render(x["F23"] + (x["F2"] * x["K3"]).scale(x["b"] * c))


@crit(4)
def test_c4_cancellation_combination(a3_example):
    x = a3_example
    combo = x["bar123"] + (x["bar23"] * x["K1"]).scale(x["a"] * (Q - q(-1)))
    want = x["F123"] + (qcomm(x["F1"], x["F2"], Q) * x["K3"]).scale(x["b"] * (q(-1) - Q))
    assert render(combo) == render(want)


@crit(4)
@pytest.mark.xfail(strict=True, reason="with a minus sign the F23 K1^-1 terms add instead of cancel")
def test_c4_cancellation_combination_as_displayed(a3_example):
    x = a3_example
    combo = x["bar123"] - (x["bar23"] * x["K1"]).scale(x["a"] * (Q - q(-1)))
    want = x["F123"] + (qcomm(x["F1"], x["F2"], Q) * x["K3"]).scale(x["b"] * (q(-1) - Q))
    assert render(combo) == render(want)


# ----------------------------------------------------------------------------
# 5. prop-shift formula

@crit(5)
@pytest.mark.parametrize("name", ["A3", "B3"])
def test_c5_prop_shift(name):
    d = get_datum(name)
    triples = cd.prop_shift_triples(d)
    assert len(triples) >= 18
    for v, i, m in triples:
        assert cd.prop_shift_check(v, i, m).status == "true", (v.word, i, m)
        assert cd.prop_shift_check(v, i, m, phi_m_value=Q + 3).status == "true"


# ----------------------------------------------------------------------------
# 6. PBW dimensions

@crit(6)
@pytest.mark.parametrize("name", ["A2", "A3", "B3", "C3"])
def test_c6_pbw_dimensions(name):
    d = get_datum(name)
    alg = get_algebra(d)
    for nu in itertools.product(range(9), repeat=d.rank):
        if 0 < sum(nu) <= 8:
            assert alg.dim(nu) == d.kostant_dim(nu), nu


# ----------------------------------------------------------------------------
# 7. sl2 induced modules

def _window_ideal_check(spec, P):
    """Span of the shifts K^s P inside the window is E/F stable, with codimension deg P."""
    V = rt.induced_sl2(spec)
    N = spec.window
    lo, hi = min(P), max(P)
    idx = {lab[0]: j for j, lab in enumerate(V.labels)}
    shifts = [s for s in range(-N, N + 1) if -N <= lo + s and hi + s <= N]
    S = Echelon()
    for s in shifts:
        S.add({idx[m + s]: c for m, c in P.items()})
    for s in shifts:
        if lo + s - 1 < -N or hi + s + 1 > N:
            continue
        v = {idx[m + s]: c for m, c in P.items()}
        for op in (("E", 0), ("F", 0)):
            if not S.contains(V.apply_op(op, v)):
                return None
    return V.dim - S.rank


@crit(7)
@pytest.mark.parametrize("n,eps", [(n, e) for n in range(4) for e in (1, -1)])
def test_c7_submodule_iff_lemma(n, eps):
    spec = rt.sl2_spec_for(RatFunc.qpow(n, eps) * cd.LAMBDA, 8)
    assert rt.sl2_submodule_test(spec) == (n, eps)
    assert rt.submodule_oracle(spec, 8) == (n, eps)
    P = rt.kernel_polynomial(n, eps)
    assert max(P) - min(P) == n + 1
    assert _window_ideal_check(spec, P) == n + 1


GENERIC = [Q + 1, 2 * q(3), q(-1), coerce(3), q(2) - q(-2)]


@crit(7)
@pytest.mark.parametrize("e", GENERIC, ids=str)
def test_c7_generic_characters_have_no_submodule(e):
    for N in range(1, 9):
        spec = rt.sl2_spec_for(e, N)
        assert rt.sl2_submodule_test(spec) is None
        assert rt.submodule_oracle(spec, N) is None


# ----------------------------------------------------------------------------
# 8. quotient existence

@crit(8)
@pytest.mark.parametrize("n,eps", [(n, e) for n in range(4) for e in (1, -1)])
def test_c8_quotient_character_search(n, eps):
    B = cd.sl2_borel()
    vals = rt.quotient_character_search(B, rt.sl2_simple(n, eps))
    assert vals["E1"] == RatFunc.qpow(n, eps) * cd.LAMBDA
    spec = rt.InducedSpec("sl2", {"e": vals["E1"], "f": vals["F1"]}, 5)
    spec.check()
    h = rt.sl2_quotient_hom(spec, n, eps)
    assert h.inconsistencies == 0 and h.hom_ok
    assert len(h.phi0) == n + 1 and all(h.phi0)


# ----------------------------------------------------------------------------
# 9. basicness battery

A2_WEIGHTS = [(1, 0), (0, 1), (1, 1)]


@pytest.fixture(scope="module")
def a2_simples():
    d = get_datum("A2")
    return {lam: rt.simple_module(d, lam) for lam in A2_WEIGHTS}


@crit(9)
@pytest.mark.parametrize("lattice", [((1, 0), (0, 1)), ((1, 1),)], ids=["full", "rho"])
def test_c9_homogeneous_basic(a2_simples, lattice):
    d = get_datum("A2")
    for w in d.all_elements():
        from qcoideal.rootsys import phi_plus
        assert all(any(d.form(mu, nu) for nu in lattice) for mu in phi_plus(w))
        C = cd.build_presentation(w, {}, lattice, d.identity(), {}, 12)
        for lam, L in a2_simples.items():
            rep = rt.restrict_and_factor(L, C)
            assert rep.all_one_dimensional, (w.word, lam)


@crit(9)
def test_c9_witness_for_full_sl2():
    d = get_datum("A1")
    s = d.element((0,))
    U = cd.build_presentation(s, {}, d.simple, s, {}, 12)
    assert cd.nonbasic_witness(U, [(1,)]).status == "witness"


@crit(9)
def test_c9_witness_for_off_constraint_borel():
    B = cd.sl2_borel(ONE, ONE)
    assert cd.nonbasic_witness(B, [(1,)]).status == "witness"
    assert cd.nonbasic_witness(cd.sl2_borel(), [(1,)]).status != "witness"


@crit(9)
@pytest.mark.parametrize("kind", ["homogeneous", "type1", "type2"])
def test_c9_no_witness_for_sl3_borels(kind):
    assert cd.nonbasic_witness(cd.sl3_borel(kind), A2_WEIGHTS).status != "witness"


# ----------------------------------------------------------------------------
# 10. Hopf and automorphism suites

@crit(10)
@pytest.mark.parametrize("name", ["A1", "A2"])
def test_c10_hopf_axioms(name):
    alg = get_algebra(get_datum(name))
    assert hopf_failures(alg, products(alg, 2)) == []


@crit(10)
@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_c10_T_preserves_relations(name):
    d = get_datum(name)
    alg = get_algebra(d)
    for i in range(d.rank):
        for sign in (1, -1):
            assert automorphism_failures(alg, lambda x: alg.lusztig_T(i, sign, x)) == []


@crit(10)
def test_c10_braid_relation_a2():
    alg = get_algebra(get_datum("A2"))
    from _checks import generators
    for sign in (1, -1):
        T = lambda i, x: alg.lusztig_T(i, sign, x)  # noqa: E731
        for g in generators(alg):
            assert T(0, T(1, T(0, g))) == T(1, T(0, T(1, g)))


@crit(10)
@pytest.mark.parametrize("name", ["A2", "A3", "B2"])
def test_c10_reduced_expression_independence(name):
    d = get_datum(name)
    alg = get_algebra(d)
    for w in d.all_elements():
        words = reduced_words(w)
        spaces = [cd.PBWSpace(alg, word) for word in words]
        for nu in spaces[0].degrees(5):
            ref = [x.terms for x in spaces[0].basis(nu)]
            for sp in spaces[1:]:
                assert span_equal(ref, [x.terms for x in sp.basis(nu)]), (w.word, nu)
