"""Nonlinear self-adjointness: substitutions into the adjoint system, the
identity defect, the per-branch substitution catalog, the mechanical
substitution solver, and the strict/quasi/nonlinear-only classification.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .expr import (Expr, ExprError, Symbol, as_expr, const, dep, exp_, indep,
                   jet, ln_, param, pow_, unknown)
from .jet import substitute_dependent, total_derivative
from .linsolve import solve_linear
from .reduce import _collect_conditions
from .system import PDESystem, adjoint_system

T, X = indep("t"), indep("x")
U, V = dep("u"), dep("v")
UX, VX = as_expr(jet(U, 0, 1)), as_expr(jet(V, 0, 1))


def _point_expr(e) -> Expr:
    e = as_expr(e)
    for g in e.generators():
        if isinstance(g, Symbol) and g.kind == "jet":
            raise ExprError("substitution components must not contain jet "
                            "coordinates: %r" % g)
        if isinstance(g, Symbol) and g.kind == "dep" and g.name not in ("u", "v"):
            raise ExprError("substitution components are functions of "
                            "(t, x, u, v); found %r" % g)
    return e


@dataclass(frozen=True)
class Substitution:
    """A candidate pair (phi, psi) of functions of (t, x, u, v) for the
    adjoint variables."""
    phi: Expr
    psi: Expr
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "phi", _point_expr(self.phi))
        object.__setattr__(self, "psi", _point_expr(self.psi))

    def jacobian(self) -> Tuple[Expr, Expr, Expr, Expr]:
        """(phi_u, phi_v, psi_u, psi_v)."""
        return (self.phi.diff(U), self.phi.diff(V),
                self.psi.diff(U), self.psi.diff(V))

    def is_degenerate(self) -> bool:
        return all(j.is_zero() for j in self.jacobian())

    def depends_on_base_point(self) -> bool:
        return self.phi.has(T) or self.phi.has(X) or \
            self.psi.has(T) or self.psi.has(X)

    def constants(self) -> Tuple[Symbol, ...]:
        out = {g for g in self.phi.generators() if getattr(g, "kind", "") == "const"}
        out |= {g for g in self.psi.generators() if getattr(g, "kind", "") == "const"}
        return tuple(sorted(out, key=lambda g: g.key))

    def instance(self, values: Dict[int, object]) -> "Substitution":
        mapping = {const(i): as_expr(val) for i, val in values.items()}
        return Substitution(self.phi.subs(mapping), self.psi.subs(mapping),
                            self.label)


def identity_substitution() -> Substitution:
    return Substitution(as_expr(U), as_expr(V), "identity")


def substituted_adjoint(sys: PDESystem, sub: Substitution,
                        via: str = "direct") -> Tuple[Expr, Expr]:
    """Adjoint equations with the adjoint variables replaced by the
    substitution pair.

    via="direct" expands the variational derivative image in terms of
    total derivatives of phi and psi; via="substitute" pushes the pair
    through the symbolic adjoint system.  Both routes agree identically.
    """
    if via == "substitute":
        adj = adjoint_system(sys)
        mapping = {dep("ubar"): sub.phi, dep("vbar"): sub.psi}
        return tuple(sys.asm.apply_zero(substitute_dependent(eq, mapping))
                     for eq in adj.equations)
    if via != "direct":
        raise ExprError("via must be 'direct' or 'substitute'")
    vals = sys.values
    p = {n: as_expr(vals[n]) if n in vals else as_expr(param(n))
         for n in ("a", "b", "c", "eps", "kappa", "lambda", "sigma")}
    a, b, c = p["a"], p["b"], p["c"]
    eps, kap, lam, sig = p["eps"], p["kappa"], p["lambda"], p["sigma"]
    phi, psi = sub.phi, sub.psi
    dt = lambda e: total_derivative(e, "t")
    dx = lambda e: total_derivative(e, "x")
    f1 = (dt(phi) + (a + b) * V * dx(phi) + (b * U + c) * dx(psi)
          + b * phi * VX + eps * dt(dx(dx(phi))) + lam * dx(dx(dx(psi))))
    f2 = (dt(psi) + (a * U + c) * dx(phi) + (a + b) * V * dx(psi)
          - b * phi * UX + kap * dx(dx(dx(phi))) + sig * dt(dx(dx(psi))))
    return (sys.asm.apply_zero(f1), sys.asm.apply_zero(f2))


def substitution_defect(sys: PDESystem, sub: Substitution) -> Tuple[Expr, Expr]:
    """Identity defect of the self-adjointness condition: the substituted
    adjoint minus the Jacobian combination of the equations.  Both
    components vanish identically iff the pair is admitted."""
    f1s, f2s = substituted_adjoint(sys, sub)
    mu, nv, pu, qv = sub.jacobian()
    e1, e2 = sys.equations
    d1 = f1s - (mu * e1 + nv * e2)
    d2 = f2s - (pu * e1 + qv * e2)
    return (sys.asm.apply_zero(d1), sys.asm.apply_zero(d2))


def is_substitution(sys: PDESystem, sub: Substitution) -> bool:
    d1, d2 = substitution_defect(sys, sub)
    return d1.is_zero() and d2.is_zero()


BRANCHES = ("b=0", "a=b", "a=0", "generic")


@dataclass(frozen=True)
class Gate:
    """A catalog constant survives only when every listed polynomial
    vanishes on the system's parameter assumptions."""
    index: int
    requires_zero: Tuple[Expr, ...]


@dataclass(frozen=True)
class SubstitutionFamily:
    branch: str
    phi: Expr
    psi: Expr
    constants: Tuple[int, ...]
    gates: Tuple[Gate, ...]

    def general(self) -> Substitution:
        return Substitution(self.phi, self.psi, self.branch)

    def admitted(self, sys: PDESystem) -> Substitution:
        """Zero out every gated constant whose gate fails under the
        system's zero-set."""
        kill = {}
        for gate in self.gates:
            ok = all(sys.asm.apply_zero(po).is_zero()
                     for po in gate.requires_zero)
            if not ok:
                kill[gate.index] = 0
        sub = self.general()
        if kill:
            sub = sub.instance(kill)
        return Substitution(sys.asm.apply_zero(sub.phi),
                            sys.asm.apply_zero(sub.psi), self.branch)


def substitution_family(branch: str) -> SubstitutionFamily:
    """Catalog of admitted substitution pairs per parameter branch, with
    free constants gated by the dispersion parameters."""
    a, b, c = (as_expr(param(n)) for n in "abc")
    eps, kap, lam, sig = (as_expr(param(n))
                          for n in ("eps", "kappa", "lambda", "sigma"))
    c1, c2, c3, c4, c5 = (as_expr(const(i)) for i in range(1, 6))
    u, v = as_expr(U), as_expr(V)
    t, x = as_expr(T), as_expr(X)
    if branch == "b=0":
        phi = (c1 * t + c2) * a * v + c3 * c * ln_(a * u + c) - c1 * x + c4
        psi = c3 * a * v + (c1 * t + c2) * (a * u + c) + c5
        gates = (Gate(1, (eps, sig)),
                 Gate(2, (eps - sig,)),
                 Gate(3, (eps, kap, lam)))
        return SubstitutionFamily(branch, phi, psi, (1, 2, 3, 4, 5), gates)
    if branch == "a=b":
        phi = (a * u + c) * (c1 * ln_(a * u + c) + c2)
        psi = c1 * a * v + c3
        gates = (Gate(1, (eps, kap, lam)), Gate(2, (kap,)))
        return SubstitutionFamily(branch, phi, psi, (1, 2, 3), gates)
    if branch == "a=0":
        phi = c1 * exp_(b * u / c) - c2 * (b * u + 2 * c)
        psi = c2 * b * v + c3
        gates = (Gate(1, (eps, kap)), Gate(2, (kap + lam,)))
        return SubstitutionFamily(branch, phi, psi, (1, 2, 3), gates)
    if branch == "generic":
        phi = c1 * pow_(a * u + c, b / a) + c2 * (b * b * u + (2 * b - a) * c)
        psi = c2 * (a - b) * b * v + c3
        gates = (Gate(1, (eps, kap)), Gate(2, (lam * a - (kap + lam) * b,)))
        return SubstitutionFamily(branch, phi, psi, (1, 2, 3), gates)
    raise ExprError("unknown branch %r; expected one of %s"
                    % (branch, ", ".join(BRANCHES)))


def branch_of(sys: PDESystem) -> str:
    """Pick the substitution branch the system's assumptions determine."""
    a = as_expr(param("a"))
    b = as_expr(param("b"))
    zb = sys.asm.apply_zero(b).is_zero()
    zab = sys.asm.apply_zero(a - b).is_zero()
    if zb and zab:
        raise ExprError("b = 0 and a = b force a = 0, outside the family")
    if zb:
        return "b=0"
    if zab:
        return "a=b"
    if not (sys.asm.licensed_nonzero(b)
            and sys.asm.licensed_nonzero(a - b)):
        raise ExprError("branch undetermined: declare b and a-b zero or "
                        "nonzero")
    if sys.asm.apply_zero(a).is_zero():
        return "a=0"
    if sys.asm.licensed_nonzero(a):
        return "generic"
    raise ExprError("branch undetermined: declare a zero or nonzero")


def admitted_substitution(sys: PDESystem) -> Substitution:
    """The gated catalog family for this system's branch."""
    return substitution_family(branch_of(sys)).admitted(sys)


def solve_substitutions(sys: PDESystem, basis=None):
    """Mechanically recover the surviving substitution space: write the
    branch family with unknown coefficients on its basis functions, force
    the identity defect to vanish, and solve.

    Returns (substitutions, solution): a list of basis Substitution pairs
    (one per nullspace direction) and the underlying linear solution.
    """
    if basis is None:
        fam = substitution_family(branch_of(sys))
        zero = sys.asm.apply_zero
        basis = []
        for i in fam.constants:
            pick = {j: (1 if j == i else 0) for j in fam.constants}
            inst = fam.general().instance(pick)
            basis.append((zero(inst.phi), zero(inst.psi)))
    ks: List[Symbol] = []
    phi = as_expr(0)
    psi = as_expr(0)
    for n, (bp, bq) in enumerate(basis, start=1):
        k = unknown(n, "k")
        ks.append(k)
        phi = phi + k * bp
        psi = psi + k * bq
    d1, d2 = substitution_defect(sys, Substitution(phi, psi, "ansatz"))
    conditions = _collect_conditions(d1) + _collect_conditions(d2)
    sol = solve_linear(conditions, ks, sys.asm)
    subs = []
    for vec in sol.nullspace:
        sp = as_expr(0)
        sq = as_expr(0)
        for k, (bp, bq) in zip(ks, basis):
            sp = sp + vec[k] * bp
            sq = sq + vec[k] * bq
        subs.append(Substitution(sp, sq, "solved"))
    return subs, sol


@dataclass
class Classification:
    kind: str  # strict | quasi | nonlinear-only | degenerate
    witness: Optional[Substitution]
    strict_defect: Tuple[Expr, Expr]
    notes: Tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        out = {"kind": self.kind,
               "strict_defect": [str(e) for e in self.strict_defect],
               "notes": list(self.notes)}
        if self.witness is not None:
            out["witness"] = {"phi": str(self.witness.phi),
                              "psi": str(self.witness.psi)}
        return out


def _nondegenerate_pick(fam: SubstitutionFamily, sys: PDESystem,
                        allow_base_point: bool):
    """Instantiate surviving constants one at a time, preferring pairs
    whose Jacobian does not vanish; additive constants are set to zero."""
    sub = fam.admitted(sys)
    live = [i for i in fam.constants
            if any(g.index == i for g in sub.constants())]
    for i in live:
        inst = sub.instance({j: (1 if j == i else 0) for j in live})
        if inst.is_degenerate():
            continue
        if not allow_base_point and inst.depends_on_base_point():
            continue
        return inst
    return None


def classify_selfadjointness(sys: PDESystem) -> Classification:
    """Strict, quasi or nonlinear self-adjointness, with a witness pair.

    strict: the identity pair works.  quasi: some pair in (u, v) alone
    with a nonvanishing Jacobian.  nonlinear-only: a nondegenerate pair needs
    explicit (t, x).  degenerate: only constant pairs survive the gates.
    """
    notes: List[str] = []
    d = substitution_defect(sys, identity_substitution())
    if d[0].is_zero() and d[1].is_zero():
        return Classification("strict", identity_substitution(), d)
    fam = substitution_family(branch_of(sys))
    pick = _nondegenerate_pick(fam, sys, allow_base_point=False)
    if pick is not None:
        return Classification("quasi", pick, d)
    pick = _nondegenerate_pick(fam, sys, allow_base_point=True)
    if pick is not None:
        notes.append("no (u,v)-only pair survives; witness needs (t,x)")
        return Classification("nonlinear-only", pick, d)
    notes.append("only constant pairs survive the parameter gates")
    return Classification("degenerate", None, d, tuple(notes))


def strict_conditions(sys: PDESystem) -> List[Expr]:
    """Parameter conditions equivalent to strict self-adjointness: the
    coefficients of the identity-pair defect."""
    d1, d2 = substitution_defect(sys, identity_substitution())
    return _collect_conditions(d1) + _collect_conditions(d2)
