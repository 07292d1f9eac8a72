"""Conservation laws: the variational density/flux construction,
divergence certificates, the printed catalog, triviality and
equivalence resolution, and the per-branch sweep."""

import random

import pytest

from bbmkdv.conslaw import (CATALOG_IDS, ConservedVector, catalog_prop3,
                            catalog_system, conserved_vector,
                            equivalence_classify, is_trivial, obvious_vectors,
                            reference_vectors, sweep_branch,
                            triviality_potential, verify_divergence)
from bbmkdv.expr import ExprError
from bbmkdv.parse import parse
from bbmkdv.selfadjoint import Substitution
from bbmkdv.symmetry import combination
from bbmkdv.system import bbm_kdv, preset


@pytest.fixture(scope="module")
def bous():
    return preset("boussinesq")


def strict_instance():
    return bbm_kdv({"a": 2, "b": 1, "c": 1, "eps": 0, "kappa": 1,
                    "lambda": 1, "sigma": 0})


class TestVectorOps:
    def test_components_and_json(self):
        vec = ConservedVector(parse("u*v"), parse("x + t"), "demo")
        assert str(vec.ct) == "u*v"
        assert vec.to_json_dict() == {"ct": "u*v", "cx": "x + t",
                                      "provenance": "demo"}

    def test_scaling(self):
        vec = ConservedVector(parse("u*v"), parse("x + t"), "demo")
        twice = vec.scaled(2)
        assert str(twice.ct) == "2*u*v" and str(twice.cx) == "2*x + 2*t"
        assert twice.provenance == "demo"

    def test_sum_and_difference(self):
        vec = ConservedVector(parse("u*v"), parse("x + t"), "demo")
        total = vec + vec.scaled(2)
        assert str(total.ct) == "3*u*v"
        # sums remember both parents
        assert total.provenance == ("demo", "demo")
        assert total.to_json_dict()["provenance"] == ["demo", "demo"]
        diff = vec - vec
        assert diff.ct.is_zero() and diff.cx.is_zero()

    def test_divergence_of_obvious_vectors(self, bous):
        first, second = obvious_vectors(bous)
        assert (first.divergence() - bous.equations[0]).is_zero()
        assert (second.divergence() - 2 * bous.equations[1]).is_zero()

    def test_verify_needs_a_system(self):
        vec = ConservedVector(parse("u"), parse("v"))
        with pytest.raises(ExprError):
            verify_divergence(vec)


class TestConstruction:
    def test_rejects_defective_substitution(self, bous):
        bad = Substitution(parse("u"), parse("v"))
        with pytest.raises(ExprError, match="defect"):
            conserved_vector(bous, bad, combination("X5", bous))

    def test_translation_generator_with_unit_pair(self, bous):
        # phi = 1, psi = 0 is admitted on every instance
        sub = Substitution(parse("1"), parse("0"), "unit")
        vec = conserved_vector(bous, sub, combination("X5", bous))
        assert str(vec.ct) == "-u_x"
        assert str(vec.cx) == "-u*v_x - v*u_x - v_x"
        assert vec.provenance == ("generator", "unit")
        cert = verify_divergence(vec, bous)
        assert cert.ok and cert.status == "proved"
        assert vec.certificate is cert

    def test_translation_vector_is_trivial(self, bous):
        sub = Substitution(parse("1"), parse("0"), "unit")
        vec = conserved_vector(bous, sub, combination("X5", bous))
        pot = triviality_potential(vec, bous)
        assert pot is not None and str(pot) == "-u"
        assert is_trivial(vec, bous)


class TestObviousVectors:
    def test_first_vector_needs_b_zero(self, bous):
        obs = obvious_vectors(bous)
        assert [o.provenance for o in obs] == ["obvious-1", "obvious-2"]
        obs = obvious_vectors(strict_instance())
        assert [o.provenance for o in obs] == ["obvious-2"]

    def test_boussinesq_components(self, bous):
        first, second = obvious_vectors(bous)
        assert str(first.ct) == "u"
        assert str(first.cx) == "u*v + v"
        assert str(second.ct) == "-2/3*v_xx + 2*v"
        assert str(second.cx) == "v^2 + 2*u"

    def test_bound_coefficients(self):
        (second,) = obvious_vectors(strict_instance())
        assert str(second.ct) == "2*v"
        assert str(second.cx) == "3*v^2 + u^2 + 2*u_xx + 2*u"


CATALOG_EXPECTED = {
    "i.a": (
        "-2*eps*u_x*v_x + 2*u*v",
        "2*a*u*v^2 + 2*eps*u*v_tx + 2*kappa*v*v_xx + 2*eps*v*u_tx"
        " + 2*lambda*u*u_xx - kappa*v_x^2 - lambda*u_x^2 + c*v^2 + c*u^2",
        {"F1": "2*v", "F2": "2*u"},
    ),
    "i.b-lambda0": (
        "(-1/2*a^2*sigma*v_x^2 + a*c*u*ln(a*u + c) + 1/2*a^2*v^2"
        " + c^2*ln(a*u + c))/(a*c)",
        "(a*c*u*v*ln(a*u + c) + 1/3*a^2*v^3 + c^2*v*ln(a*u + c)"
        " + a*sigma*v*v_tx + a*c*u*v + c^2*v)/(c)",
        {"F1": "ln(a*u + c) + 1", "F2": "(a*v)/(c)"},
    ),
    "i.b-sigma0": (
        "2*a*t*u*v + 2*c*t*v - 2*x*u",
        "2*a^2*t*u*v^2 + 2*a*lambda*t*u*u_xx - a*lambda*t*u_x^2"
        " + 2*a*c*t*v^2 + a*c*t*u^2 + 2*c*lambda*t*u_xx - 2*a*x*u*v"
        " + 2*c^2*t*u - 2*c*x*v",
        {"F1": "2*a*t*v - 2*x", "F2": "2*a*t*u + 2*c*t"},
    ),
    "ii.a": (
        "-a*eps*u_x^2 + a*u^2 + 2*c*u",
        "2*a^2*u^2*v + 2*a*eps*u*u_tx + 4*a*c*u*v + 2*c*eps*u_tx + 2*c^2*v",
        {"F1": "2*a*u + 2*c"},
    ),
    "ii.b": (
        "(a^2*u^2*ln(a*u + c) - a^2*sigma*v_x^2 + 2*a*c*u*ln(a*u + c)"
        " + a^2*v^2 + c^2*ln(a*u + c))/(a)",
        "2*a^2*u^2*v*ln(a*u + c) + 4*a*c*u*v*ln(a*u + c) + 4/3*a^2*v^3"
        " + a^2*u^2*v + 2*c^2*v*ln(a*u + c) + 2*a*sigma*v*v_tx"
        " + 2*a*c*u*v + c^2*v",
        {"F1": "2*a*u*ln(a*u + c) + 2*c*ln(a*u + c) + a*u + c",
         "F2": "2*a*v"},
    ),
}


class TestCatalog:
    def test_unknown_case_id(self):
        with pytest.raises(ExprError, match="i.a"):
            catalog_system("iii.z")

    @pytest.mark.parametrize("cid", CATALOG_IDS)
    def test_components(self, cid):
        vec = catalog_prop3(cid)
        ct, cx, _ = CATALOG_EXPECTED[cid]
        assert str(vec.ct) == ct
        assert str(vec.cx) == cx
        assert vec.provenance == "catalog:" + cid
        assert vec.system.label == "catalog:" + cid

    @pytest.mark.parametrize("cid", CATALOG_IDS)
    def test_certificate(self, cid):
        vec = catalog_prop3(cid)
        cert = verify_divergence(vec, vec.system)
        assert cert.ok and cert.status == "proved"
        assert cert.r == 1 and cert.deg == 1
        got = {k: str(q) for k, q in cert.coefficients.items()}
        assert got == CATALOG_EXPECTED[cid][2]
        assert cert.verify()
        assert cert.spot_check(random.Random(3), 6)

    def test_first_catalog_vector_is_not_trivial(self):
        vec = catalog_prop3("i.a")
        assert not is_trivial(vec, vec.system)


class TestEquivalence:
    def test_reference_pools(self, bous):
        sys_ia = catalog_system("i.a")
        assert [n for n, _ in reference_vectors(sys_ia)] == [
            "obvious-1", "obvious-2", "catalog:i.a"]
        # no catalog branch holds on a generic strict instance
        assert [n for n, _ in reference_vectors(strict_instance())] == [
            "obvious-2"]

    def test_catalog_vector_resolves_to_itself(self):
        sys_ia = catalog_system("i.a")
        res = equivalence_classify(catalog_prop3("i.a"), sys_ia)
        assert res.status == "catalog-equivalent"
        assert {k: str(v) for k, v in res.combination.items()} == {
            "catalog:i.a": "1"}
        assert res.to_json_dict() == {"status": "catalog-equivalent",
                                      "potential": "0",
                                      "combination": {"catalog:i.a": "1"}}

    def test_scaled_obvious_vector(self):
        sys_ia = catalog_system("i.a")
        second = obvious_vectors(sys_ia)[-1]
        res = equivalence_classify(second.scaled(3), sys_ia)
        assert res.status == "obvious-equivalent"
        assert {k: str(v) for k, v in res.combination.items()} == {
            "obvious-2": "3"}

    def test_trivial_vector_reports_potential(self, bous):
        sub = Substitution(parse("1"), parse("0"), "unit")
        vec = conserved_vector(bous, sub, combination("X5", bous))
        res = equivalence_classify(vec, bous)
        assert res.status == "trivial"
        assert str(res.potential) == "-u"
        assert res.combination == {}


SIGMA0_SWEEP = [
    ("X1", "c1", "catalog-equivalent", {"catalog:i.b-sigma0": "-a"}),
    ("X1", "c2", "catalog-equivalent",
     {"obvious-2": "-3/2*a*c", "catalog:i.a": "-3/2*a^2"}),
    ("X1", "c4", "obvious-equivalent", {"obvious-1": "-2*a"}),
    ("X1", "c5", "obvious-equivalent", {"obvious-2": "-1/2*a"}),
    ("X2", "c1", "catalog-equivalent",
     {"obvious-2": "1/2*c", "catalog:i.a": "1/2*a"}),
    ("X2", "c2", "trivial", {}),
    ("X2", "c4", "trivial", {}),
    ("X2", "c5", "trivial", {}),
    ("X4", "c1", "trivial", {}),
    ("X4", "c2", "obvious-equivalent", {"obvious-1": "a"}),
    ("X4", "c4", "trivial", {}),
    ("X4", "c5", "trivial", {}),
    ("X5", "c1", "obvious-equivalent", {"obvious-1": "-1"}),
    ("X5", "c2", "trivial", {}),
    ("X5", "c4", "trivial", {}),
    ("X5", "c5", "trivial", {}),
]


class TestSweep:
    def test_unknown_branch(self):
        with pytest.raises(ExprError):
            sweep_branch("i.c")

    def test_sigma0_branch_table(self):
        records = sweep_branch("i.b-sigma0")
        assert len(records) == len(SIGMA0_SWEEP)
        for rec, (gen, label, status, combo) in zip(records, SIGMA0_SWEEP):
            assert rec.ok
            assert rec.branch == "i.b-sigma0"
            assert (rec.generator, rec.substitution.label) == (gen, label)
            assert rec.symmetry_status == "pass"
            assert rec.certificate.ok
            assert rec.equivalence.status == status
            got = {k: str(v) for k, v in rec.equivalence.combination.items()}
            assert got == combo

    def test_record_json_shape(self):
        rec = sweep_branch("i.b-sigma0")[0]
        doc = rec.to_json_dict()
        assert sorted(doc) == ["branch", "certificate", "equivalence",
                               "extra_zero", "generator", "substitution",
                               "symmetry"]
        assert doc["substitution"] == {"phi": "a*t*v - x",
                                       "psi": "a*t*u + c*t"}
        assert doc["certificate"]["status"] == "proved"
        assert doc["equivalence"]["status"] == "catalog-equivalent"
