from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from qcoideal import coideal as cd
from qcoideal import repthy as rt
from qcoideal.qfield import ONE, Q, RatFunc, coerce, q
from qcoideal.rootsys import get_datum


def _weyl_dim_oracle(datum, lam):
    """prod over positive roots of (lam + rho, b) / (rho, b), computed with the form."""
    from fractions import Fraction

    # fundamental weights as rational combinations of simple roots via the inverse Cartan matrix
    import sympy

    n = datum.rank
    C = sympy.Matrix(datum.cartan)
    coords = list(C.inv() * sympy.Matrix(lam))  # lam in root coordinates
    rho = list(C.inv() * sympy.Matrix([1] * n))
    out = Fraction(1)
    for b in datum.positive_roots:
        num = sum((coords[i] + rho[i]) * sum(datum.gram[i][j] * b[j] for j in range(n)) for i in range(n))
        den = sum(rho[i] * sum(datum.gram[i][j] * b[j] for j in range(n)) for i in range(n))
        out *= Fraction(str(num)) / Fraction(str(den))
    return int(out)


@pytest.mark.parametrize("name,lam", [("A1", (3,)), ("A2", (1, 1)), ("A2", (2, 0)), ("B2", (0, 1)),
                                      ("B2", (1, 1)), ("G2", (1, 0)), ("A3", (0, 1, 0)),
                                      ("C3", (1, 0, 0))])
def test_simple_module_dimension_and_relations(name, lam):
    d = get_datum(name)
    V = rt.simple_module(d, lam)
    assert V.dim == rt.weyl_dimension(d, lam) == _weyl_dim_oracle(d, lam)
    assert V.relation_failures() == []
    assert not V.boundary


def test_weyl_dimension_table():
    assert rt.weyl_dimension(get_datum("A2"), (1, 1)) == 8
    assert rt.weyl_dimension(get_datum("G2"), (0, 1)) == 14
    assert rt.weyl_dimension(get_datum("B3"), (0, 0, 1)) == 8


def test_simple_module_cap():
    with pytest.raises(rt.ModuleError):
        rt.simple_module(get_datum("A2"), (4, 4))


@pytest.mark.parametrize("n", range(5))
@pytest.mark.parametrize("eps", [1, -1])
def test_sl2_simple(n, eps):
    L = rt.sl2_simple(n, eps)
    assert L.dim == n + 1
    assert L.relation_failures() == []
    K = L.op_matrix(("K", 0))
    assert {K[i][i] for i in range(n + 1)} == {RatFunc.qpow(n - 2 * k, eps) for k in range(n + 1)}


def test_restriction_to_weyl_borel():
    L = rt.sl2_simple(1, 1)
    subs = rt.one_dim_submodules(L, cd.sl2_borel())
    assert len(subs) == 1
    vals, _vec, _dim = subs[0]
    assert vals["E1"] == Q
    assert vals["F1"] == cd.LAMBDA_PRIME * q(-1)
    rep = rt.restrict_and_factor(L, cd.sl2_borel())
    assert rep.all_one_dimensional


def test_full_algebra_is_not_basic_on_l1():
    d = get_datum("A1")
    s = d.element((0,))
    U = cd.build_presentation(s, {}, d.simple, s, {}, 12)
    rep = rt.restrict_and_factor(rt.sl2_simple(1, 1), U)
    assert not rep.all_one_dimensional


windows = st.integers(2, 5)
generic = st.sampled_from([Q + ONE, 2 * q(3), q(-1), coerce(3), q(2) - q(-2), q(-3) * 5])


@given(generic, windows)
def test_displayed_action_matches_induction(e, N):
    spec = rt.sl2_spec_for(e, N)
    V = rt.induced_sl2(spec)
    assert V.relation_failures() == []
    assert V.meta["induction"].character_failures() == []
    for j in V.interior(1):
        n = V.labels[j][0]
        shown = rt.sl2_displayed_action(spec, n)
        for op in ("K", "F", "E"):
            got = V.apply_op((op, 0), {j: ONE})
            want = {V.labels.index((m,)): c for m, c in shown[op].items()}
            assert got == want


@given(generic)
def test_generic_character_irreducible(e):
    spec = rt.sl2_spec_for(e, 4)
    assert rt.sl2_submodule_test(spec) is None
    assert rt.submodule_oracle(spec, 6) is None


def test_constraint_violation():
    spec = rt.InducedSpec("sl2", {"e": ONE, "f": ONE}, 3)
    with pytest.raises(rt.ConstraintError):
        spec.check()
    with pytest.raises(rt.ConstraintError):
        rt.induced_sl3("type2", {"e1": ONE, "f1": ONE, "k": ONE}, 1)


@pytest.mark.parametrize("n,eps", [(n, e) for n in range(4) for e in (1, -1)])
def test_quotient_hom_intertwines(n, eps):
    spec = rt.sl2_spec_for(RatFunc.qpow(n, eps) * cd.LAMBDA, 4)
    h = rt.sl2_quotient_hom(spec, n, eps)
    assert h.inconsistencies == 0 and h.hom_ok
    assert all(h.phi0)
    assert len(rt.kernel_polynomial(n, eps)) == n + 2  # degree n+1 monic


def test_sl3_type2_window():
    V = rt.induced_sl3("type2", {"e1": ONE, "f1": cd.LAMBDA_PRIME, "k": ONE}, 2)
    assert V.meta["induction"].character_failures() == []
    assert V.relation_failures() == []
    assert all(len(lab) == 3 for lab in V.labels)


def test_sl3_type2_subwindow_is_regular_sl2_action():
    """On labels (i, j, 0), F2 and K2 act as on F2^i E2^j inside U_q(sl2)."""
    V = rt.induced_sl3("type2", {"e1": ONE, "f1": cd.LAMBDA_PRIME, "k": ONE}, 2)
    for j, (i, jj, k) in enumerate(V.labels):
        if k != 0 or i >= 2:
            continue
        assert V.apply_op(("F", 1), {j: ONE}) == {V.labels.index((i + 1, jj, 0)): ONE}
        assert V.apply_op(("K", 1), {j: ONE}) == {V.labels.index((i, jj, 1)): q(2 * (jj - i))}


def test_export_format():
    V = rt.sl2_simple(1, 1)
    ex = V.export()
    assert ex["labels"] and set(ex["matrices"]) >= {"E1", "F1", "K1"}
    for r, c, val in ex["matrices"]["E1"]:
        assert isinstance(val, str)


def test_quotient_character_search_sl3():
    d = get_datum("A2")
    L = rt.simple_module(d, (1, 0))
    vals = rt.quotient_character_search(cd.sl3_borel("type1"), L)
    assert set(vals) >= {"E1", "F1"}
