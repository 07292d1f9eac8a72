"""Point symmetries: the generator catalog, invariance certificates,
determining equations and the ansatz solver."""

import random

import pytest

from bbmkdv.expr import (ExprError, as_expr, dep, func_symbol, indep, param,
                         unknown)
from bbmkdv.jet import commutator, vector_field
from bbmkdv.linsolve import solve_linear
from bbmkdv.parse import parse
from bbmkdv.symmetry import (COLUMNS, GENERATOR_NAMES, SymmetryCase,
                             case_system, catalog, combination,
                             determining_equations, instantiate_conditions,
                             invariance_defect, is_symmetry, same_span,
                             solve_symmetries, standard_generators,
                             table_cases, verify_cell)
from bbmkdv.system import bbm_kdv, preset

T, X = indep("t"), indep("x")
U, V = dep("u"), dep("v")


def fields_equal(vf, texts):
    want = tuple(parse(s) for s in texts)
    return all((got - w).is_zero()
               for got, w in zip(vf.coefficients(), want))


class TestStandardGenerators:
    def test_symbolic_catalog(self):
        g = standard_generators()
        assert set(g) == set(GENERATOR_NAMES)
        assert fields_equal(g["X1"],
                            ("(a+b)*t", "0", "-2*(a*u+c)", "-(a+b)*v"))
        assert fields_equal(g["X2"], ("1", "0", "0", "0"))
        assert fields_equal(g["X3"],
                            ("0", "(a+b)*x", "2*(a*u+c)", "(a+b)*v"))
        assert fields_equal(g["X4"], ("0", "(a+b)*t", "0", "1"))
        assert fields_equal(g["X5"], ("0", "1", "0", "0"))

    def test_bound_instance_substitutes_parameters(self):
        g = standard_generators(preset("kaup"))
        assert fields_equal(g["X1"], ("t", "0", "-2*u - 2", "-v"))

    def test_commutation_relations(self):
        g = standard_generators()
        ab = as_expr(param("a")) + param("b")
        cm = commutator(g["X2"], g["X1"])
        assert (cm.xi_t - ab).is_zero() and cm.xi_x.is_zero()
        assert cm.eta_u.is_zero() and cm.eta_v.is_zero()
        cm = commutator(g["X5"], g["X3"])
        assert (cm.xi_x - ab).is_zero() and cm.xi_t.is_zero()
        cm = commutator(g["X2"], g["X5"])
        assert all(f.is_zero() for f in cm.coefficients())


class TestCombination:
    def test_string_forms(self):
        g = standard_generators()
        two = combination("2*X1+X3")
        want = (2 * g["X1"].xi_t + g["X3"].xi_t,
                2 * g["X1"].xi_x + g["X3"].xi_x,
                2 * g["X1"].eta_u + g["X3"].eta_u,
                2 * g["X1"].eta_v + g["X3"].eta_v)
        assert all((got - w).is_zero()
                   for got, w in zip(two.coefficients(), want))
        assert (combination("X1 - X2").xi_t
                - g["X1"].xi_t + 1).is_zero()
        assert combination("3/2*X5").xi_x == as_expr(3) / 2

    def test_pair_form_and_passthrough(self):
        vf = combination([(2, "X2")])
        assert vf.xi_t == as_expr(2)
        assert combination(vf) is vf

    @pytest.mark.parametrize("bad", ["X6", "2Y1", "", "X1*X2"])
    def test_malformed_spec(self, bad):
        with pytest.raises(ExprError):
            combination(bad)


class TestTable:
    def test_six_cells(self):
        cases = table_cases()
        assert len(cases) == 6
        assert {c.cell_id for c in cases} == {
            "b=0|eps=sigma=0", "a=b|eps=sigma=0", "b(a-b)!=0|eps=sigma=0",
            "b=0|{eps,sigma}!=0", "a=b|{eps,sigma}!=0",
            "b(a-b)!=0|{eps,sigma}!=0"}

    def test_unknown_column_rejected(self):
        with pytest.raises(ExprError):
            SymmetryCase("a=0", True)

    def test_catalog_contents(self):
        def names(case):
            return tuple((e.name, e.conditions) for e in catalog(case))

        assert names(SymmetryCase("b=0", True)) == (
            ("X1", ("kappa",)), ("2*X1+X3", ("lambda",)),
            ("X2", ()), ("X4", ()), ("X5", ()))
        assert names(SymmetryCase("a=b", True)) == (
            ("3*X1+X3", ()), ("X2", ()), ("X4", ()), ("X5", ()))
        assert names(SymmetryCase("b(a-b)!=0", True)) == (
            ("X2", ()), ("X4", ()), ("X5", ()))
        assert names(SymmetryCase("b=0", False)) == (
            ("X1", ("kappa",)), ("X2", ()), ("X5", ()))
        assert names(SymmetryCase("a=b", False)) == (
            ("X1", ("kappa", "lambda")), ("X2", ()), ("X5", ()))
        assert names(SymmetryCase("b(a-b)!=0", False)) == (
            ("X2", ()), ("X5", ()))

    def test_case_system_conditions(self):
        sys = case_system(SymmetryCase("a=b", True), extra_zero=("kappa",))
        assert sys.asm.apply_zero(as_expr(param("a")) - param("b")).is_zero()
        assert sys.asm.apply_zero(as_expr(param("kappa"))).is_zero()
        assert not sys.asm.apply_zero(as_expr(param("lambda"))).is_zero()

    @pytest.mark.parametrize("case", table_cases(),
                             ids=lambda c: c.cell_id)
    def test_every_cell_verifies(self, case):
        for entry, result in verify_cell(case):
            assert result.status == "pass", entry.name
            assert all(c.verify() for c in result.certificates)


class TestIsSymmetry:
    def test_defect_vanishes_for_admitted_generator(self):
        sys = preset("kaup")
        res = is_symmetry(combination("X2", sys), sys)
        assert bool(res)
        assert res.witness is None

    def test_non_symmetry_fails_with_witness(self):
        sys = preset("boussinesq")
        res = is_symmetry(combination("X4", sys), sys)
        assert res.status == "fail"
        assert res.witness is not None
        assert any(val != 0 for val in res.witness["_defect_values"])

    def test_zero_field_is_trivially_admitted(self):
        sys = preset("kaup")
        assert bool(is_symmetry(vector_field(), sys))

    def test_to_json_dict(self):
        sys = preset("kaup")
        d = is_symmetry(combination("X5", sys), sys).to_json_dict()
        assert d["status"] == "pass"
        assert len(d["certificates"]) == 2
        assert all(c["status"] == "proved" for c in d["certificates"])


# ---- determining equations against an independent reference ----

def fs(n, it, ix, iu, iv):
    return as_expr(func_symbol(n, it, ix, iu, iv))


def reference_conditions(vals):
    """Frozen invariance conditions on opaque coefficient functions,
    written out by hand for the family with the given parameter values."""
    a, b, c = (as_expr(vals[k]) for k in ("a", "b", "c"))
    eps, kp = as_expr(vals["eps"]), as_expr(vals["kappa"])
    lm, sg = as_expr(vals["lambda"]), as_expr(vals["sigma"])
    u, v = as_expr(U), as_expr(V)
    T0, X0 = fs("T", 0, 0, 0, 0), fs("X", 0, 0, 0, 0)
    U0, V0 = fs("U", 0, 0, 0, 0), fs("V", 0, 0, 0, 0)
    Tt = fs("T", 1, 0, 0, 0)
    Xt, Xx = fs("X", 1, 0, 0, 0), fs("X", 0, 1, 0, 0)
    Uu = fs("U", 0, 0, 1, 0)
    return [
        fs("T", 0, 1, 0, 0), fs("T", 0, 0, 1, 0), fs("T", 0, 0, 0, 1),
        fs("X", 0, 0, 1, 0), fs("X", 0, 0, 0, 1),
        eps * Xt, eps * Xx, sg * Xt, sg * Xx,
        fs("U", 1, 0, 0, 0), fs("U", 0, 1, 0, 0), fs("U", 0, 0, 0, 1),
        fs("V", 1, 0, 0, 0), fs("V", 0, 1, 0, 0),
        a * U0 - (a * u + c) * Uu,
        b * U0 + (b * u + c) * (Uu + 2 * (Tt - Xx)),
        kp * (Uu + 2 * Xx),
        lm * (Uu + 2 * (Tt - 2 * Xx)),
        (a + b) * (V0 + (Tt - Xx) * v) - Xt,
    ]


# ansatz monomials of total degree <= 2 in (t, x, u, v)
MONOS = [as_expr(1), as_expr(T), as_expr(X), as_expr(U), as_expr(V)]
_base = list(MONOS[1:])
for _i, _w1 in enumerate(_base):
    for _w2 in _base[_i:]:
        MONOS.append(_w1 * _w2)


def split_structural(e):
    """One condition per monomial in (t, x, u, v): the coefficients are
    parameter/unknown polynomials that must vanish."""
    from bbmkdv.expr import from_generator
    groups = {}
    for mono, coeff in e.nt:
        key = tuple((g, x) for g, x in mono if g.key[0] >= 20)
        rest = as_expr(coeff)
        for g, x in mono:
            if g.key[0] < 20:
                rest = rest * from_generator(g) ** x
        groups[key] = groups.get(key, as_expr(0)) + rest
    return list(groups.values())


def solve_over_ansatz(conds, asm):
    qs, assign = [], {}
    idx = 900
    for name in ("T", "X", "U", "V"):
        acc = as_expr(0)
        for m in MONOS:
            idx += 1
            q = unknown(idx, "q")
            qs.append(q)
            acc = acc + q * m
        assign[name] = acc
    split = []
    for e in instantiate_conditions(conds, assign):
        split.extend(split_structural(e))
    return solve_linear(split, qs, asm), assign


class TestDeterminingEquations:
    def test_symbolic_conditions_are_jet_free(self):
        det = determining_equations(bbm_kdv())
        assert len(det) >= 19
        assert all(e.max_jet_order() == 0 for e in det)

    @pytest.mark.parametrize("name,dim", [("boussinesq", 3), ("kaup", 4)])
    def test_reference_equivalence_on_instances(self, name, dim):
        # computed and hand-written determining systems carve out the same
        # solution space over the quadratic ansatz
        sys = preset(name)
        det = determining_equations(sys)
        ref = reference_conditions(sys.values)
        sol_det, assign = solve_over_ansatz(det, sys.asm)
        sol_ref, _ = solve_over_ansatz(ref, sys.asm)
        assert sol_det.dimension == dim
        assert sol_ref.dimension == dim
        assert all(q.is_zero() for q in sol_det.particular.values())
        inst_det = instantiate_conditions(det, assign)
        inst_ref = instantiate_conditions(ref, assign)
        for vec in sol_det.nullspace:
            assert all(e.subs(vec).is_zero() for e in inst_ref)
        for vec in sol_ref.nullspace:
            assert all(e.subs(vec).is_zero() for e in inst_det)

    def test_instantiate_requires_all_names(self):
        det = determining_equations(preset("kaup"))
        with pytest.raises(ExprError):
            instantiate_conditions(det, {"T": as_expr(1)})


class TestSolver:
    def test_kaup_dimension_and_span(self):
        sys = preset("kaup")
        basis = solve_symmetries(sys, deg=2)
        assert len(basis) == 4
        expected = [combination("2*X1+X3", sys), combination("X2", sys),
                    combination("X4", sys), combination("X5", sys)]
        assert same_span(basis, expected)

    def test_symbolic_parameters_rejected(self):
        with pytest.raises(ExprError):
            solve_symmetries(bbm_kdv())


class TestSameSpan:
    SYS = preset("kaup")

    def test_scaling_invariance(self):
        g = standard_generators(self.SYS)
        assert same_span([g["X2"]], [combination([(2, "X2")], self.SYS)])

    def test_distinct_directions(self):
        g = standard_generators(self.SYS)
        assert not same_span([g["X2"]], [g["X5"]])

    def test_triangular_mixes(self):
        g = standard_generators(self.SYS)
        mixed = [combination("X4 + X2", self.SYS), g["X2"]]
        assert same_span(mixed, [g["X4"], g["X2"]])

    def test_subspace_is_not_equal_span(self):
        g = standard_generators(self.SYS)
        assert not same_span([g["X2"]], [g["X2"], g["X5"]])
