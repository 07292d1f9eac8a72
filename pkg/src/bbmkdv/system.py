"""The BBM-KdV family, formal Lagrangian, Euler operator and adjoint system.

Family (two equations, parameters a, b, c, eps, kappa, lambda, sigma):

    u_t + (a+b) v u_x + (a u + c) v_x + eps u_txx + kappa v_xxx = 0
    v_t + (b u + c) u_x + (a+b) v v_x + lambda u_xxx + sigma v_txx = 0

subject to (a+b) c != 0 and not all of eps, kappa, lambda, sigma zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Tuple, Union

from .expr import (PARAM_NAMES, Assumptions, Expr, ExprError, Symbol, as_expr,
                   dep, jet, param)
from .jet import d_multi, substitute_dependent

Rationalish = Union[int, str, Fraction]


def _fraction(v: Rationalish) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    raise ExprError("parameter values must be exact rationals, got %r" % (v,))


@dataclass(frozen=True, eq=False)
class PDESystem:
    equations: Tuple[Expr, ...]
    dependents: Tuple[str, ...] = ("u", "v")
    independents: Tuple[str, ...] = ("t", "x")
    asm: Assumptions = field(default_factory=Assumptions)
    values: Mapping[str, Fraction] = field(default_factory=dict)
    label: str = ""

    def __post_init__(self):
        for eq in self.equations:
            if eq.max_jet_order() > 3:
                raise ExprError("system equations must have jet order <= 3")

    def params(self):
        """Parameter symbols still free in the equations."""
        out = set()
        for eq in self.equations:
            out |= {g for g in eq.generators()
                    if isinstance(g, Symbol) and g.kind == "param"}
        return out

    def value_of(self, name: str) -> Optional[Fraction]:
        return self.values.get(name)


def _param_exprs(bindings: Mapping[str, Fraction]):
    return {n: (as_expr(bindings[n]) if n in bindings else as_expr(param(n)))
            for n in PARAM_NAMES}


def bbm_kdv(bindings: Optional[Mapping[str, Rationalish]] = None,
            nonzero: Sequence = (), zero: Sequence = (),
            label: str = "") -> PDESystem:
    """Construct the family instance; unbound parameters stay symbolic.

    nonzero/zero extend the assumption set (branch conditions such as
    b = 0 can go in either bindings or zero).
    """
    vals = {}
    for name, raw in (bindings or {}).items():
        if name not in PARAM_NAMES:
            raise ExprError("unknown parameter %r" % name)
        vals[name] = _fraction(raw)
    p = _param_exprs(vals)
    a, b, c = p["a"], p["b"], p["c"]
    eps, kappa, lam, sigma = p["eps"], p["kappa"], p["lambda"], p["sigma"]

    base_nonzero = [q for q in (a + b, c) if not q.is_rational()]
    for q in (a + b, c):
        if q.is_rational() and q.is_zero():
            raise ExprError("family constraint violated: (a+b)*c must be "
                            "nonzero")
    # numeric bindings join the zero-set so assumption queries (licensing,
    # branch selection) see them without consulting the value table
    bound = tuple(as_expr(param(n)) - vals[n] for n in sorted(vals))
    asm = Assumptions(tuple(base_nonzero) + tuple(nonzero),
                      bound + tuple(zero))

    prod = asm.apply_zero((a + b) * c)
    if prod.is_zero():
        raise ExprError("family constraint violated: (a+b)*c must be nonzero")

    third = [asm.apply_zero(q) for q in (eps, kappa, lam, sigma)]
    if all(q.is_zero() for q in third):
        raise ExprError("family constraint violated: eps, kappa, lambda, "
                        "sigma must not all vanish")

    u, v = dep("u"), dep("v")
    f1 = (jet("u", 1, 0) + (a + b) * v * jet("u", 0, 1)
          + (a * u + c) * jet("v", 0, 1) + eps * jet("u", 1, 2)
          + kappa * jet("v", 0, 3))
    f2 = (jet("v", 1, 0) + (b * u + c) * jet("u", 0, 1)
          + (a + b) * v * jet("v", 0, 1) + lam * jet("u", 0, 3)
          + sigma * jet("v", 1, 2))
    f1 = asm.apply_zero(f1)
    f2 = asm.apply_zero(f2)
    return PDESystem(equations=(f1, f2), asm=asm, values=vals, label=label)


_PRESET_RE = re.compile(r"^bona-smith\(\s*lambda\s*=\s*(-?[0-9]+(?:/[0-9]+)?)"
                        r"\s*\)$")


def preset(name: str) -> PDESystem:
    """Named instances: boussinesq, kaup, bona-smith(lambda=<rational>)."""
    name = name.strip().lower()
    if name == "boussinesq":
        return bbm_kdv({"a": 1, "b": 0, "c": 1, "eps": 0, "kappa": 0,
                        "lambda": 0, "sigma": Fraction(-1, 3)},
                       label="boussinesq")
    if name == "kaup":
        return bbm_kdv({"a": 1, "b": 0, "c": 1, "eps": 0,
                        "kappa": Fraction(1, 3), "lambda": 0, "sigma": 0},
                       label="kaup")
    m = _PRESET_RE.match(name)
    if m:
        lam = Fraction(m.group(1))
        if lam >= 0:
            raise ExprError("bona-smith preset requires lambda < 0")
        es = lam / 2 - Fraction(1, 6)
        return bbm_kdv({"a": 1, "b": 0, "c": 1, "eps": es, "kappa": 0,
                        "lambda": lam, "sigma": es},
                       label="bona-smith(lambda=%s)" % lam)
    raise ExprError("unknown preset %r (expected boussinesq, kaup or "
                    "bona-smith(lambda=<rational>))" % name)


def reduce_equal_components(sys: PDESystem) -> Tuple[Expr, Expr]:
    """The two scalar equations obtained by setting v = u."""
    if tuple(sys.dependents) != ("u", "v"):
        raise ExprError("reduce_equal_components expects the two-component "
                        "family")
    u = dep("u")
    return tuple(substitute_dependent(eq, {"v": as_expr(u)})
                 for eq in sys.equations)


@dataclass(frozen=True, eq=False)
class FormalLagrangian:
    L: Expr
    adjoint_vars: Tuple[str, str] = ("ubar", "vbar")


def formal_lagrangian(sys: PDESystem) -> FormalLagrangian:
    """L = ubar*F1 + vbar*F2 with fresh adjoint variables."""
    if len(sys.equations) != 2:
        raise ExprError("formal_lagrangian requires exactly two equations")
    ub, vb = dep("ubar"), dep("vbar")
    return FormalLagrangian(ub * sys.equations[0] + vb * sys.equations[1])


def _order_in(e: Expr, name: str) -> int:
    best = 0
    for g in e.generators():
        if isinstance(g, Symbol) and g.kind == "jet" and g.dep == name:
            best = max(best, sum(g.index))
    return best


def euler_lagrange(L, depvar, max_order: int = 3) -> Expr:
    """Variational derivative: sum over |J| <= max_order of
    (-1)^|J| D_J(dL/d depvar_J)."""
    L = as_expr(L)
    w = dep(depvar) if isinstance(depvar, str) else depvar
    if w.kind != "dep":
        raise ExprError("euler_lagrange needs a dependent variable")
    need = _order_in(L, w.name)
    if need > max_order:
        raise ExprError("max_order %d below jet order %d of the Lagrangian"
                        % (max_order, need))
    out = as_expr(0)
    for nt in range(max_order + 1):
        for nx in range(max_order + 1 - nt):
            dL = L.diff(jet(w, nt, nx))
            if dL.is_zero():
                continue
            sign = -1 if (nt + nx) % 2 else 1
            out = out + sign * d_multi(dL, nt, nx)
    return out


def adjoint_system(sys: PDESystem) -> PDESystem:
    """Adjoint equations: negated variational derivatives of the formal
    Lagrangian with respect to the original dependent variables."""
    lag = formal_lagrangian(sys)
    order = max(3, max(eq.max_jet_order() for eq in sys.equations))
    f1s = -euler_lagrange(lag.L, "u", order)
    f2s = -euler_lagrange(lag.L, "v", order)
    return PDESystem(equations=(f1s, f2s), dependents=("ubar", "vbar"),
                     asm=sys.asm, values=sys.values,
                     label=(sys.label + "-adjoint") if sys.label
                     else "adjoint")
