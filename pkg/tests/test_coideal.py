from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from qcoideal import coideal as cd
from qcoideal.qfield import ONE, Q, q
from qcoideal.rootsys import get_datum, valid_supports
from qcoideal.uqalg import get_algebra

CASES = []
for _name in ("A2", "A3", "B2"):
    _d = get_datum(_name)
    for _w in _d.all_elements():
        for _s in valid_supports(_w):
            if len(_s) and _w.length <= 4:
                CASES.append((_w, tuple(_s)))

values = st.sampled_from([ONE, Q, ONE * 2, q(-1) + ONE, ONE * -3])


def _pbw_elements(w, max_height=3):
    sp = cd.pbw_space(w)
    out = []
    for nu in sp.degrees(max_height):
        out.extend(sp.basis(nu))
    return out


@given(st.sampled_from(CASES), st.data())
def test_shift_is_multiplicative(case, data):
    w, supp = case
    phi = cd.Character.make(w, {i: data.draw(values) for i in supp}, "minus")
    xs = _pbw_elements(w)
    x = data.draw(st.sampled_from(xs))
    y = data.draw(st.sampled_from(xs))
    assert cd.character_shift(x * y, phi, check=False) == \
        cd.character_shift(x, phi) * cd.character_shift(y, phi)


@given(st.sampled_from(CASES), st.data())
def test_fast_route_matches_coproduct_route(case, data):
    w, supp = case
    phi = cd.Character.make(w, {i: data.draw(values) for i in supp}, "minus")
    x = data.draw(st.sampled_from(_pbw_elements(w)))
    assert cd.character_shift(x, phi, "fast") == cd.character_shift(x, phi, "generic")


@given(st.sampled_from(CASES), st.data())
def test_plus_side_routes_agree(case, data):
    w, supp = case
    alg = get_algebra(w.datum)
    phi = cd.Character.make(w, {i: data.draw(values) for i in supp}, "plus")
    k = data.draw(st.integers(1, w.length))
    x = cd.x_root_vector(alg, w.word, k)
    assert cd.character_shift(x, phi, "fast") == cd.character_shift(x, phi, "generic")


def test_character_validation():
    d = get_datum("A2")
    with pytest.raises(cd.CoidealError):
        cd.Character.make(d.element((0,)), {1: ONE})  # a2 not in Phi+(s1)
    with pytest.raises(cd.CoidealError):
        cd.Character.make(d.element((0,)), {0: 0 * ONE})
    with pytest.raises(cd.CoidealError):
        cd.character_shift(get_algebra(d).F(1), cd.Character.make(d.element((0,)), {0: ONE}))


def test_sl2_borel_generators():
    B = cd.sl2_borel()
    alg = B.alg
    assert B.generator("E1") == alg.E(0) * alg.Ki(0, -1) + alg.Ki(0, -1)
    assert B.generator("F1") == alg.F(0) + alg.Ki(0, -1).scale(cd.LAMBDA_PRIME)


@pytest.mark.parametrize("kind", ["homogeneous", "type1", "type2"])
def test_sl3_borels_are_coideals(kind):
    assert cd.verify_coideal(cd.sl3_borel(kind), bound=2).outcome == "true"


def test_non_coideal_is_rejected():
    alg = get_algebra(get_datum("A1"))
    res = cd.verify_coideal([alg.E(0)], bound=2)
    assert res.outcome == "false"
    assert res.failures


def test_orthogonal_lattice():
    d = get_datum("A2")
    assert cd.orthogonal_lattice(d, [0]) == ((1, 2),)
    assert cd.orthogonal_lattice(d, []) == d.simple
    with pytest.raises(cd.CoidealError):
        cd.build_presentation(d.element((0,)), {0: ONE}, [(1, 0)], d.element((0,)), {0: ONE})


def test_graded_a3_example():
    d = get_datum("A3")
    rep = cd.graded_algebra(d.element((2, 0, 1)), [0, 2])
    assert rep.w_prime == (1,)
    assert rep.verdict == "confirmed"


def test_graded_homogeneous_is_identity():
    d = get_datum("A2")
    w = d.longest_element()
    rep = cd.graded_algebra(w, [0])
    assert d.element(rep.w_prime) == cd.conjA_predict(w, [0])


def test_conjB_candidates_sl2():
    cands = cd.conjB_candidates(get_datum("A1"))
    assert [(c.w_minus, c.w_plus, c.tag) for c in cands] == [
        ((), (0,), "homogeneous"), ((0,), (), "homogeneous"), ((0,), (0,), "known-family")]


def test_criterion_helpers():
    d = get_datum("A3")
    res = cd.criterion2_applicable(d.longest_element())
    assert res.applicable and len(res.factorizations) == 2
    assert not cd.criterion2_applicable(d.element((0,))).applicable
    triples = cd.prop_shift_triples(d)
    assert triples and all(cd.criterion3_hypothesis(v, i, m) for v, i, m in triples)


def test_weyl_identity():
    lhs, rhs = cd.weyl_identity(cd.sl2_borel())
    assert lhs == rhs
    assert cd.WEYL_CONSTANT == q(2) / (Q - q(-1))


def test_lambda_prime_value():
    assert cd.LAMBDA_PRIME == q(2) / ((ONE - q(2)) * (Q - q(-1)))
