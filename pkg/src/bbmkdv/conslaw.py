"""Conserved vectors: assembly from (generator, substitution) pairs,
divergence verification, triviality and equivalence testing, the printed
catalog, and the constructive sweep over all admitted pairs per branch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .expr import (Expr, ExprError, Symbol, as_expr, dep, indep, jet, ln_,
                   param, unknown)
from .jet import VectorField, characteristics, total_derivative
from .reduce import (DEFAULT_LADDER, DEFAULT_ORDER_CAP, MembershipCertificate,
                     find_flux_potential, vanishes_with_ladder)
from .selfadjoint import (Substitution, admitted_substitution, is_substitution,
                          substitution_family, branch_of)
from .symmetry import combination, is_symmetry
from .system import PDESystem, bbm_kdv

U, V = dep("u"), dep("v")


def _p(sys: PDESystem, name: str) -> Expr:
    if name in sys.values:
        return as_expr(sys.values[name])
    return as_expr(param(name))


@dataclass
class ConservedVector:
    """A density/flux pair, optionally carrying its divergence
    certificate and the system it belongs to."""
    ct: Expr
    cx: Expr
    provenance: object = ""
    certificate: Optional[MembershipCertificate] = None
    system: Optional[PDESystem] = None

    def __post_init__(self):
        self.ct = as_expr(self.ct)
        self.cx = as_expr(self.cx)

    def divergence(self, cap: int = DEFAULT_ORDER_CAP) -> Expr:
        return (total_derivative(self.ct, "t", cap)
                + total_derivative(self.cx, "x", cap))

    def scaled(self, factor) -> "ConservedVector":
        f = as_expr(factor)
        return ConservedVector(f * self.ct, f * self.cx, self.provenance,
                               None, self.system)

    def __add__(self, other: "ConservedVector") -> "ConservedVector":
        return ConservedVector(self.ct + other.ct, self.cx + other.cx,
                               (self.provenance, other.provenance),
                               None, self.system)

    def __sub__(self, other: "ConservedVector") -> "ConservedVector":
        return self + other.scaled(-1)

    def to_json_dict(self) -> dict:
        out = {"ct": str(self.ct), "cx": str(self.cx),
               "provenance": (list(self.provenance)
                              if isinstance(self.provenance, tuple)
                              else self.provenance)}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json_dict()
        return out


def conserved_vector(sys: PDESystem, sub: Substitution, vf: VectorField,
                     cap: int = DEFAULT_ORDER_CAP) -> ConservedVector:
    """Assemble the density/flux pair of the variational construction for
    a symmetry generator and an admitted substitution.

    The substitution must have identically zero self-adjointness defect
    for the system; otherwise the construction does not yield a
    conservation law and an error is raised.
    """
    if not is_substitution(sys, sub):
        raise ExprError("substitution has a nonzero self-adjointness "
                        "defect for this system")
    a, b, c = _p(sys, "a"), _p(sys, "b"), _p(sys, "c")
    eps, kap = _p(sys, "eps"), _p(sys, "kappa")
    lam, sig = _p(sys, "lambda"), _p(sys, "sigma")
    phi, psi = sub.phi, sub.psi
    wu, wv = characteristics(vf)
    dx = lambda e: total_derivative(e, "x", cap)
    dt = lambda e: total_derivative(e, "t", cap)
    ct = (phi * wu - eps * dx(phi) * dx(wu)
          + psi * wv - sig * dx(psi) * dx(wv))
    cx = (((a + b) * V * phi + (b * U + c) * psi) * wu
          + eps * (phi * dt(dx(wu)) + dt(dx(phi)) * wu)
          + lam * (psi * dx(dx(wu)) - dx(psi) * dx(wu) + dx(dx(psi)) * wu)
          + ((a * U + c) * phi + (a + b) * V * psi) * wv
          + sig * (psi * dt(dx(wv)) + dt(dx(psi)) * wv)
          + kap * (phi * dx(dx(wv)) - dx(phi) * dx(wv) + dx(dx(phi)) * wv))
    ct = sys.asm.apply_zero(ct)
    cx = sys.asm.apply_zero(cx)
    gen_id = getattr(vf, "name", "") or "generator"
    return ConservedVector(ct, cx, (gen_id, sub.label or "substitution"),
                           None, sys)


def verify_divergence(vec: ConservedVector, sys: Optional[PDESystem] = None,
                      ladder=DEFAULT_LADDER,
                      cap: int = DEFAULT_ORDER_CAP) -> MembershipCertificate:
    """Certify D_t(ct) + D_x(cx) = 0 on solutions; the certificate is
    attached to the vector and returned (possibly inconclusive)."""
    if sys is None:
        sys = vec.system
    if sys is None:
        raise ExprError("no system to verify against")
    cert = vanishes_with_ladder(vec.divergence(cap), sys, ladder, cap)
    vec.certificate = cert
    return cert


def triviality_potential(vec: ConservedVector, sys: PDESystem, deg: int = 3,
                         r: int = 2) -> Optional[Expr]:
    """Flux potential H with ct = D_x H and cx = -D_t H modulo the
    system, or None when the bounded search fails."""
    return find_flux_potential(vec.ct, vec.cx, sys, deg, r)


def is_trivial(vec: ConservedVector, sys: PDESystem, deg: int = 3) -> bool:
    """True iff the vector is a total curl plus on-solutions-zero terms
    within the bounded search; False is exhaustion, not a proof."""
    return triviality_potential(vec, sys, deg) is not None


CATALOG_IDS = ("i.a", "i.b-lambda0", "i.b-sigma0", "ii.a", "ii.b")

_A, _B = param("a"), param("b")
_EPS, _KAP = param("eps"), param("kappa")
_LAM, _SIG = param("lambda"), param("sigma")

_CATALOG_ZERO = {
    "i.a": (as_expr(_B), as_expr(_EPS) - _SIG),
    "i.b-lambda0": (as_expr(_B), as_expr(_EPS), as_expr(_KAP), as_expr(_LAM)),
    "i.b-sigma0": (as_expr(_B), as_expr(_EPS), as_expr(_KAP), as_expr(_SIG)),
    "ii.a": (as_expr(_A) - _B, as_expr(_KAP)),
    "ii.b": (as_expr(_A) - _B, as_expr(_EPS), as_expr(_KAP), as_expr(_LAM)),
}


def catalog_system(case_id: str) -> PDESystem:
    if case_id not in _CATALOG_ZERO:
        raise ExprError("unknown catalog id %r; expected one of %s"
                        % (case_id, ", ".join(CATALOG_IDS)))
    return bbm_kdv(zero=_CATALOG_ZERO[case_id], label="catalog:" + case_id)


def catalog_prop3(case_id: str) -> ConservedVector:
    """The printed density/flux pair of the catalog case, under its
    branch assumptions."""
    sys = catalog_system(case_id)
    a, c = as_expr(_A), as_expr(param("c"))
    eps, kap = as_expr(_EPS), as_expr(_KAP)
    lam, sig = as_expr(_LAM), as_expr(_SIG)
    u, v = as_expr(U), as_expr(V)
    t, x = as_expr(indep("t")), as_expr(indep("x"))
    ut, ux = as_expr(jet(U, 1, 0)), as_expr(jet(U, 0, 1))
    vt, vx = as_expr(jet(V, 1, 0)), as_expr(jet(V, 0, 1))
    uxx, vtx = as_expr(jet(U, 0, 2)), as_expr(jet(V, 1, 1))
    utx = as_expr(jet(U, 1, 1))
    dx = lambda e: total_derivative(e, "x")
    if case_id == "i.a":
        ct = 2 * (u * v - eps * ux * vx)
        cx = (c * u ** 2 + (2 * a * u + c) * v ** 2
              - (lam * ux ** 2 + kap * vx ** 2)
              + 2 * (u * dx(lam * ux + eps * vt) + v * dx(eps * ut + kap * vx)))
    elif case_id == "i.b-lambda0":
        ct = ((a * u + c) * ln_(a * u + c) / a
              + a / (2 * c) * (v ** 2 - sig * vx ** 2))
        cx = ((a * u + c) * (ln_(a * u + c) + 1) * v
              + a * v / c * (a * v ** 2 / 3 + sig * vtx))
    elif case_id == "i.b-sigma0":
        ct = 2 * (t * (a * u + c) * v - x * u)
        cx = (t * (c * (a * u + 2 * c) * u - a * lam * ux ** 2)
              + 2 * (a * u + c) * ((a * t * v - x) * v + lam * t * uxx))
    elif case_id == "ii.a":
        ct = (a * u + 2 * c) * u - a * eps * ux ** 2
        cx = 2 * (a * u + c) * ((a * u + c) * v + eps * utx)
    elif case_id == "ii.b":
        ct = ((a * u + c) ** 2 * ln_(a * u + c) / a
              + a * (v ** 2 - sig * vx ** 2))
        cx = ((a * u + c) ** 2 * (2 * ln_(a * u + c) + 1) * v
              + 2 * a * v * (2 * a * v ** 2 / 3 + sig * vtx))
    else:
        raise ExprError("unknown catalog id %r" % case_id)
    return ConservedVector(sys.asm.apply_zero(ct), sys.asm.apply_zero(cx),
                           "catalog:" + case_id, None, sys)


def obvious_vectors(sys: PDESystem) -> Tuple[ConservedVector, ...]:
    """The vectors obtained from the equations by direct integration;
    the first exists only on the b = 0 branch."""
    a, b, c = _p(sys, "a"), _p(sys, "b"), _p(sys, "c")
    eps, kap = _p(sys, "eps"), _p(sys, "kappa")
    lam, sig = _p(sys, "lambda"), _p(sys, "sigma")
    u, v = as_expr(U), as_expr(V)
    uxx, vxx = as_expr(jet(U, 0, 2)), as_expr(jet(V, 0, 2))
    out = []
    if sys.asm.apply_zero(as_expr(b)).is_zero():
        ct = u + eps * uxx
        cx = (a * u + c) * v + kap * vxx
        out.append(ConservedVector(sys.asm.apply_zero(ct),
                                   sys.asm.apply_zero(cx),
                                   "obvious-1", None, sys))
    ct = 2 * (v + sig * vxx)
    cx = (a + b) * v ** 2 + (b * u + 2 * c) * u + 2 * lam * uxx
    out.append(ConservedVector(sys.asm.apply_zero(ct),
                               sys.asm.apply_zero(cx),
                               "obvious-2", None, sys))
    return tuple(out)


@dataclass
class EquivalenceResult:
    status: str  # trivial | obvious-equivalent | catalog-equivalent | unresolved
    potential: Optional[Expr] = None
    combination: Dict[str, Expr] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        out = {"status": self.status}
        if self.potential is not None:
            out["potential"] = str(self.potential)
        if self.combination:
            out["combination"] = {k: str(v)
                                  for k, v in sorted(self.combination.items())}
        return out


def reference_vectors(sys: PDESystem) -> List[Tuple[str, ConservedVector]]:
    """Obvious vectors plus every catalog vector whose branch conditions
    hold under the system's assumptions."""
    refs = [(vec.provenance, vec) for vec in obvious_vectors(sys)]
    for cid in CATALOG_IDS:
        if all(sys.asm.apply_zero(po).is_zero() for po in _CATALOG_ZERO[cid]):
            vec = catalog_prop3(cid)
            refs.append(("catalog:" + cid,
                         ConservedVector(sys.asm.apply_zero(vec.ct),
                                         sys.asm.apply_zero(vec.cx),
                                         vec.provenance, None, sys)))
    return refs


def equivalence_classify(vec: ConservedVector, sys: PDESystem,
                         refs: Optional[Sequence] = None, deg: int = 3,
                         r: int = 2) -> EquivalenceResult:
    """Resolve a verified vector against the reference laws: a curl (plus
    on-solutions-zero) is trivial; otherwise search for a combination of
    references whose removal leaves a curl."""
    h = triviality_potential(vec, sys, deg, r)
    if h is not None:
        return EquivalenceResult("trivial", h)
    if refs is None:
        refs = reference_vectors(sys)
    mus = [unknown(i + 1, "mu") for i in range(len(refs))]
    dct = vec.ct
    dcx = vec.cx
    for mu, (_name, ref) in zip(mus, refs):
        dct = dct - mu * ref.ct
        dcx = dcx - mu * ref.cx
    found = find_flux_potential(dct, dcx, sys, deg, r, extra_unknowns=mus)
    if found is None:
        return EquivalenceResult("unresolved")
    h, assign = found
    combo = {}
    catalog_hit = False
    obvious_hit = False
    for mu, (name, _ref) in zip(mus, refs):
        val = assign[mu]
        if val.is_zero():
            continue
        combo[str(name)] = val
        if str(name).startswith("catalog:"):
            catalog_hit = True
        else:
            obvious_hit = True
    if catalog_hit:
        return EquivalenceResult("catalog-equivalent", h, combo)
    if obvious_hit:
        return EquivalenceResult("obvious-equivalent", h, combo)
    return EquivalenceResult("trivial", h)


_SWEEP_GENERATORS: Dict[str, Tuple[Tuple[str, Tuple[str, ...]], ...]] = {
    # per branch: (generator spec, extra parameters set to zero); the extra
    # zeros are the table side conditions a generator needs inside the
    # branch; combinations whose side conditions would kill all four
    # dispersion coefficients are excluded by the family constraint
    "i.a": (("X1", ("kappa",)), ("X2", ()), ("X5", ()),
            ("X4", ("eps",)), ("2*X1+X3", ("eps", "lambda"))),
    "i.b-lambda0": (("X1", ()), ("X2", ()), ("X5", ())),
    "i.b-sigma0": (("X1", ()), ("X2", ()), ("X4", ()), ("X5", ())),
    "ii.a": (("X1", ("lambda",)), ("3*X1+X3", ("eps", "sigma")),
             ("X2", ()), ("X4", ("eps", "sigma")), ("X5", ())),
    "ii.b": (("X1", ()), ("X2", ()), ("X5", ())),
}


@dataclass
class SweepRecord:
    branch: str
    generator: str
    extra_zero: Tuple[str, ...]
    substitution: Substitution
    symmetry_status: str
    certificate: Optional[MembershipCertificate]
    equivalence: Optional[EquivalenceResult]

    @property
    def ok(self) -> bool:
        return (self.symmetry_status == "pass"
                and self.certificate is not None and self.certificate.ok
                and self.equivalence is not None
                and self.equivalence.status != "unresolved")

    def to_json_dict(self) -> dict:
        return {
            "branch": self.branch,
            "generator": self.generator,
            "extra_zero": list(self.extra_zero),
            "substitution": {"phi": str(self.substitution.phi),
                             "psi": str(self.substitution.psi)},
            "symmetry": self.symmetry_status,
            "certificate": (self.certificate.to_json_dict()
                            if self.certificate else None),
            "equivalence": (self.equivalence.to_json_dict()
                            if self.equivalence else None),
        }


def _admitted_substitutions(sys: PDESystem) -> List[Substitution]:
    """One substitution per surviving catalog constant (unit value)."""
    fam = substitution_family(branch_of(sys))
    adm = fam.admitted(sys)
    live = sorted({g.index for g in adm.constants()})
    out = []
    for i in live:
        inst = adm.instance({j: (1 if j == i else 0) for j in live})
        if inst.phi.is_zero() and inst.psi.is_zero():
            continue
        out.append(Substitution(inst.phi, inst.psi, "c%d" % i))
    return out


def sweep_branch(case_id: str, ladder=DEFAULT_LADDER, deg: int = 3,
                 r: int = 2) -> List[SweepRecord]:
    """Construct and classify the vector of every admitted (generator,
    substitution) pair of a catalog branch."""
    if case_id not in _SWEEP_GENERATORS:
        raise ExprError("unknown sweep branch %r" % case_id)
    records = []
    for gen_spec, extra in _SWEEP_GENERATORS[case_id]:
        zero = list(_CATALOG_ZERO[case_id]) + [as_expr(param(n))
                                               for n in extra]
        sys = bbm_kdv(zero=zero, label="%s+%s" % (case_id, ",".join(extra)))
        vf = combination(gen_spec, sys)
        sym = is_symmetry(vf, sys, ladder)
        for sub in _admitted_substitutions(sys):
            if sym.status != "pass":
                records.append(SweepRecord(case_id, gen_spec, extra, sub,
                                           sym.status, None, None))
                continue
            vec = conserved_vector(sys, sub, vf)
            vec.provenance = (gen_spec, sub.label)
            cert = verify_divergence(vec, sys, ladder)
            eq = equivalence_classify(vec, sys, deg=deg, r=r) if cert.ok \
                else None
            records.append(SweepRecord(case_id, gen_spec, extra, sub,
                                       sym.status, cert, eq))
    return records


def sweep_all(ladder=DEFAULT_LADDER, deg: int = 3,
              r: int = 2) -> Dict[str, List[SweepRecord]]:
    return {cid: sweep_branch(cid, ladder, deg, r) for cid in CATALOG_IDS}
