"""Jet-space calculus: total derivatives, prolongation, characteristics.

Jet coordinates are independent algebraic coordinates; the total
derivatives D_t and D_x act by the chain rule through the dependent
variables, their jets, transcendental atoms, and opaque point-function
symbols (used by the determining-equation machinery).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Mapping, Tuple

from .expr import (Atom, Expr, ExprError, Symbol, as_expr, dep, func_symbol,
                   indep, jet)

DEFAULT_ORDER_CAP = 10

T = indep("t")
X = indep("x")


class OrderCapError(ExprError):
    pass


def _shift(g: Symbol, direction: str, cap: int) -> Symbol:
    nt, nx = g.index
    nt += int(direction == "t")
    nx += int(direction == "x")
    if nt + nx > cap:
        raise OrderCapError("jet order cap %d exceeded by %s_%s" %
                            (cap, g.dep, "t" * nt + "x" * nx))
    return jet(g.dep, nt, nx)


def _base_symbols(e: Expr, acc: set):
    """Symbols appearing anywhere in e, recursing through atom arguments."""
    for g in e.generators():
        if isinstance(g, Atom):
            _base_symbols(g.arg, acc)
            if g.head == "pow":
                _base_symbols(g.expo, acc)
        else:
            acc.add(g)


def total_derivative(e, direction: str, cap: int = DEFAULT_ORDER_CAP) -> Expr:
    """D_t or D_x of e.

    Expr.diff already applies the chain rule through atoms, so the sum
    runs over base symbols only; atoms contribute via diff itself.
    """
    if direction not in ("t", "x"):
        raise ExprError("direction must be 't' or 'x'")
    e = as_expr(e)
    dt = int(direction == "t")
    dx = int(direction == "x")
    syms: set = set()
    _base_symbols(e, syms)
    out = e.diff(T if direction == "t" else X)
    for g in syms:
        if g.kind == "dep":
            chain = as_expr(jet(g, dt, dx))
        elif g.kind == "jet":
            chain = as_expr(_shift(g, direction, cap))
        elif g.kind == "func":
            it, ix, iu, iv = g.index
            nm = g.dep
            chain = (as_expr(func_symbol(nm, it + dt, ix + dx, iu, iv))
                     + jet("u", dt, dx) * func_symbol(nm, it, ix, iu + 1, iv)
                     + jet("v", dt, dx) * func_symbol(nm, it, ix, iu, iv + 1))
        else:
            continue
        de = e.diff(g)
        if not de.is_zero():
            out = out + de * chain
    return out


def d_multi(e, nt: int, nx: int, cap: int = DEFAULT_ORDER_CAP) -> Expr:
    """D_t^nt D_x^nx e (the operators commute)."""
    out = as_expr(e)
    for _ in range(nx):
        out = total_derivative(out, "x", cap)
    for _ in range(nt):
        out = total_derivative(out, "t", cap)
    return out


@dataclass(frozen=True)
class VectorField:
    """Point generator xi_t d/dt + xi_x d/dx + eta_u d/du + eta_v d/dv."""

    xi_t: Expr
    xi_x: Expr
    eta_u: Expr
    eta_v: Expr

    def __post_init__(self):
        for f in (self.xi_t, self.xi_x, self.eta_u, self.eta_v):
            for g in f.generators():
                if isinstance(g, Symbol) and g.kind == "jet":
                    raise ExprError("generator coefficients must be point "
                                    "functions of (t,x,u,v)")

    def coefficients(self):
        return (self.xi_t, self.xi_x, self.eta_u, self.eta_v)

    def act_point(self, f) -> Expr:
        """First-order action on a point function of (t,x,u,v)."""
        f = as_expr(f)
        return (self.xi_t * f.diff(T) + self.xi_x * f.diff(X)
                + self.eta_u * f.diff(dep("u")) + self.eta_v * f.diff(dep("v")))

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.coefficients())


def vector_field(xi_t=0, xi_x=0, eta_u=0, eta_v=0) -> VectorField:
    return VectorField(as_expr(xi_t), as_expr(xi_x),
                       as_expr(eta_u), as_expr(eta_v))


def linear_combination(terms) -> VectorField:
    """Sum of coeff * VectorField pairs."""
    xt = xx = eu = ev = as_expr(0)
    for coeff, vf in terms:
        coeff = as_expr(coeff)
        xt = xt + coeff * vf.xi_t
        xx = xx + coeff * vf.xi_x
        eu = eu + coeff * vf.eta_u
        ev = ev + coeff * vf.eta_v
    return VectorField(xt, xx, eu, ev)


def commutator(a: VectorField, b: VectorField) -> VectorField:
    return VectorField(a.act_point(b.xi_t) - b.act_point(a.xi_t),
                       a.act_point(b.xi_x) - b.act_point(a.xi_x),
                       a.act_point(b.eta_u) - b.act_point(a.eta_u),
                       a.act_point(b.eta_v) - b.act_point(a.eta_v))


def characteristics(vf: VectorField) -> Tuple[Expr, Expr]:
    """W^u = eta_u - xi_t u_t - xi_x u_x and the v analogue."""
    wu = vf.eta_u - vf.xi_t * jet("u", 1, 0) - vf.xi_x * jet("u", 0, 1)
    wv = vf.eta_v - vf.xi_t * jet("v", 1, 0) - vf.xi_x * jet("v", 0, 1)
    return wu, wv


@lru_cache(maxsize=None)
def prolong(vf: VectorField, order: int,
            cap: int = DEFAULT_ORDER_CAP) -> Mapping[Symbol, Expr]:
    """Prolonged coefficients {w_J: zeta^w_J} for 1 <= |J| <= order.

    Coefficient recursion: zeta_{J,i} = D_i zeta_J - w_{J+t} D_i(xi_t)
    - w_{J+x} D_i(xi_x).
    """
    dxi_t = {d: total_derivative(vf.xi_t, d, cap) for d in ("t", "x")}
    dxi_x = {d: total_derivative(vf.xi_x, d, cap) for d in ("t", "x")}
    out: Dict[Symbol, Expr] = {}
    for w, eta in (("u", vf.eta_u), ("v", vf.eta_v)):
        zeta: Dict[Tuple[int, int], Expr] = {(0, 0): eta}
        for total in range(1, order + 1):
            for nt in range(total, -1, -1):
                nx = total - nt
                if nx > 0:
                    prev, d = (nt, nx - 1), "x"
                else:
                    prev, d = (nt - 1, 0), "t"
                zj = zeta[prev]
                zeta[(nt, nx)] = (total_derivative(zj, d, cap)
                                  - jet(w, prev[0] + 1, prev[1]) * dxi_t[d]
                                  - jet(w, prev[0], prev[1] + 1) * dxi_x[d])
                out[jet(w, nt, nx)] = zeta[(nt, nx)]
    return out


def prolong_characteristic(vf: VectorField, order: int,
                           cap: int = DEFAULT_ORDER_CAP) -> Mapping[Symbol, Expr]:
    """Same coefficients via zeta_J = D_J(W) + xi_t w_{J+t} + xi_x w_{J+x}."""
    wu, wv = characteristics(vf)
    out: Dict[Symbol, Expr] = {}
    for w, char in (("u", wu), ("v", wv)):
        for total in range(1, order + 1):
            for nt in range(total + 1):
                nx = total - nt
                out[jet(w, nt, nx)] = (d_multi(char, nt, nx, cap)
                                       + vf.xi_t * jet(w, nt + 1, nx)
                                       + vf.xi_x * jet(w, nt, nx + 1))
    return out


def apply_generator(vf: VectorField, e, order: int = None,
                    cap: int = DEFAULT_ORDER_CAP) -> Expr:
    """Prolonged generator applied to e (order defaults to e's jet order)."""
    e = as_expr(e)
    if order is None:
        order = e.max_jet_order()
    out = (vf.xi_t * e.diff(T) + vf.xi_x * e.diff(X)
           + vf.eta_u * e.diff(dep("u")) + vf.eta_v * e.diff(dep("v")))
    if order > 0:
        pr = prolong(vf, order, cap)
        for g, zeta in pr.items():
            de = e.diff(g)
            if not de.is_zero():
                out = out + zeta * de
    return out


def substitute_dependent(e, mapping: Mapping[Symbol, Expr],
                         cap: int = DEFAULT_ORDER_CAP) -> Expr:
    """Bind dependent variables to expressions, rewriting their jets
    through total derivatives (w_J -> D_J value)."""
    e = as_expr(e)
    full: Dict[Symbol, Expr] = {}
    for w, value in mapping.items():
        if isinstance(w, str):
            w = dep(w)
        if w.kind != "dep":
            raise ExprError("substitute_dependent keys must be dependent "
                            "variables")
        value = as_expr(value)
        full[w] = value
        orders = [(g.index) for g in e.generators()
                  if isinstance(g, Symbol) and g.kind == "jet"
                  and g.dep == w.name]
        cache: Dict[Tuple[int, int], Expr] = {(0, 0): value}

        def derive(idx):
            if idx in cache:
                return cache[idx]
            nt, nx = idx
            if nx > 0:
                val = total_derivative(derive((nt, nx - 1)), "x", cap)
            else:
                val = total_derivative(derive((nt - 1, 0)), "t", cap)
            cache[idx] = val
            return val

        for idx in orders:
            full[jet(w, *idx)] = derive(idx)
    return e.subs(full)
