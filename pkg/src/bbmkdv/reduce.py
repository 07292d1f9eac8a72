"""On-solutions calculus: membership certificates by exact reduction.

A jet-space expression vanishes on solutions of the system when it is a
combination of the prolonged equations D_t^i D_x^j F_a.  Each prolonged
equation is solved for its principal coordinate (the derivative of u_t,
resp. v_t, carried with coefficient exactly 1); candidates are reduced by
synthetic division against these solved forms, which yields the multiplier
of every equation used and a residual.  Residual zero proves membership;
a nonzero residual is inconclusive (bounded search, never a proof of
nonvanishing).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .expr import (Expr, ExprError, Symbol, as_expr, from_generator, indep,
                   jet, unknown)
from .jet import DEFAULT_ORDER_CAP, d_multi, total_derivative
from .linsolve import (InconsistentSystemError, UnlicensedPivotError,
                       solve_linear)
from .numeric import eval_rational, random_point
from .parse import to_text
from .system import PDESystem

_T = indep("t")
_X = indep("x")

DEFAULT_LADDER: Tuple[Tuple[int, int], ...] = ((1, 1), (2, 1), (2, 2), (3, 2))


def equation_id(a: int, i: int, j: int) -> str:
    name = "F%d" % a
    if i == 0 and j == 0:
        return name
    ops = ""
    if i:
        ops += "Dt" + ("^%d" % i if i > 1 else "")
    if j:
        ops += "Dx" + ("^%d" % j if j > 1 else "")
    return "%s(%s)" % (ops, name)


def prolong_system(sys: PDESystem, r: int,
                   cap: int = DEFAULT_ORDER_CAP) -> List[Expr]:
    """All D_t^i D_x^j F_a with i + j <= r."""
    if r < 0:
        raise ExprError("prolongation depth must be >= 0")
    out = []
    for eq in sys.equations:
        for i in range(r + 1):
            for j in range(r + 1 - i):
                out.append(d_multi(eq, i, j, cap))
    return out


def _solved_forms(sys: PDESystem, r: int, cap: int):
    """Map principal jet coordinate -> (equation id, equation, solved rhs).

    D_t^i D_x^j F_a carries the coordinate w_{(i+1)t, jx} (w the a-th
    dependent variable) with coefficient exactly 1, so on solutions that
    coordinate equals minus the rest.
    """
    forms: Dict[Symbol, Tuple[str, Expr, Expr]] = {}
    for a, eq in enumerate(sys.equations, start=1):
        w = sys.dependents[a - 1]
        for i in range(r + 1):
            for j in range(r + 1 - i):
                g = d_multi(eq, i, j, cap)
                z = jet(w, i + 1, j)
                parts = g.coeffs_in(z)
                if max(parts) != 1 or not (parts[1] - 1).is_zero():
                    raise ExprError("prolonged equation is not monic in its "
                                    "principal coordinate %r" % z)
                forms[z] = (equation_id(a, i, j), g, -parts.get(0, _Z))
    return forms


def jet_degree(e) -> int:
    """Total degree in positive-order jet coordinates (numerator)."""
    e = as_expr(e)
    best = 0
    for mono, _ in e.nt:
        d = sum(ex for g, ex in mono
                if isinstance(g, Symbol) and g.kind == "jet")
        best = max(best, d)
    return best


@dataclass
class MembershipCertificate:
    candidate: Expr
    coefficients: Dict[str, Expr]
    residual: Expr
    r: int
    deg: int
    equations: Dict[str, Expr] = field(default_factory=dict)

    @property
    def residual_zero(self) -> bool:
        return self.residual.is_zero()

    @property
    def multiplier_degree(self) -> int:
        return max((jet_degree(q) for q in self.coefficients.values()),
                   default=0)

    @property
    def ok(self) -> bool:
        return self.residual_zero and self.multiplier_degree <= self.deg

    @property
    def status(self) -> str:
        return "proved" if self.ok else "inconclusive"

    def verify(self) -> bool:
        """Recompute candidate - sum(q * G) from scratch."""
        acc = self.candidate
        for key, q in self.coefficients.items():
            acc = acc - q * self.equations[key]
        return (acc - self.residual).is_zero()

    def spot_check(self, rng, n: int = 20) -> bool:
        """The certificate is a ring identity: evaluate candidate
        - sum q*G - residual at random rational points (atoms treated as
        free generators)."""
        gens = set()
        exprs = [self.candidate, self.residual]
        exprs += list(self.coefficients.values())
        exprs += list(self.equations.values())
        for e in exprs:
            gens |= e.generators()
        gens = sorted(gens, key=lambda g: g.key)
        for _ in range(n):
            point = random_point(gens, rng)
            try:
                val = eval_rational(self.candidate, point)
                for key, q in self.coefficients.items():
                    val -= (eval_rational(q, point)
                            * eval_rational(self.equations[key], point))
                val -= eval_rational(self.residual, point)
            except ZeroDivisionError:
                continue
            if val != 0:
                return False
        return True

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "r": self.r,
            "deg": self.deg,
            "multipliers": {k: to_text(q)
                            for k, q in sorted(self.coefficients.items())},
            "residual": to_text(self.residual),
        }


def _principals_in(e: Expr, forms) -> List[Symbol]:
    found = [g for g in e.generators()
             if isinstance(g, Symbol) and g.kind == "jet" and g in forms]
    for mono, _ in e.dt:
        for g, _x in mono:
            if isinstance(g, Symbol) and g.kind == "jet" and g in forms:
                raise ExprError("principal coordinate %r in a denominator; "
                                "cannot reduce" % g)
    return found


def vanishes_on_solutions(candidate, sys: PDESystem, r: int, deg: int,
                          cap: int = DEFAULT_ORDER_CAP) -> MembershipCertificate:
    """Reduce candidate modulo the prolonged system; certificate collects
    the multiplier of every prolonged equation used.

    Reduction order: highest t-count first, then lowest x-order, so each
    substitution only introduces coordinates that are handled later.
    """
    e = sys.asm.apply_zero(as_expr(candidate))
    forms = _solved_forms(sys, r, cap)
    used: Dict[str, Expr] = {}
    coeffs: Dict[str, Expr] = {}
    while True:
        principals = _principals_in(e, forms)
        if not principals:
            break
        z = max(principals, key=lambda g: (g.index[0], -g.index[1]))
        key, g_eq, rhs = forms[z]
        parts = e.coeffs_in(z)
        d = max(parts)
        # synthetic division of e by (z - rhs): remainder is e with z
        # bound to rhs, quotient is the multiplier of the equation
        b = parts[d]
        quot = _Z
        zed = as_expr(z)
        for k in range(d - 1, -1, -1):
            quot = quot * zed + b
            b = parts.get(k, _Z) + b * rhs
        e = b
        if key in coeffs:
            coeffs[key] = coeffs[key] + quot
        else:
            coeffs[key] = quot
            used[key] = g_eq
    coeffs = {k: q for k, q in coeffs.items() if not q.is_zero()}
    used = {k: used[k] for k in coeffs}
    return MembershipCertificate(candidate=sys.asm.apply_zero(as_expr(candidate)),
                                 coefficients=coeffs, residual=e,
                                 r=r, deg=deg, equations=used)


def vanishes_with_ladder(candidate, sys: PDESystem,
                         ladder: Sequence[Tuple[int, int]] = DEFAULT_LADDER,
                         cap: int = DEFAULT_ORDER_CAP) -> MembershipCertificate:
    """Try the search ladder in order; first certificate that proves
    membership wins, otherwise the last attempt is returned."""
    last = None
    for r, deg in ladder:
        cert = vanishes_on_solutions(candidate, sys, r, deg, cap)
        if cert.ok:
            return cert
        last = cert
    return last


def _mono_to_expr(mono) -> Expr:
    out = as_expr(1)
    for g, x in mono:
        out = out * from_generator(g) ** x
    return out


def _collect_conditions(e: Expr) -> List[Expr]:
    """Split an expression that must vanish identically into one condition
    per monomial in the structural generators (t, x, u, v, jets, atoms);
    each condition is a polynomial in parameters and ansatz unknowns,
    kept whole for the licensed linear solver.

    A structural denominator is harmless: the quotient vanishes iff its
    numerator does, so only the numerator is split."""
    e = as_expr(e)
    groups: Dict[tuple, Expr] = {}
    for mono, coeff in e.nt:
        key_part = tuple((g, x) for g, x in mono if g.key[0] >= 20)
        coeff_part = tuple((g, x) for g, x in mono if g.key[0] < 20)
        term = coeff * _mono_to_expr(coeff_part)
        groups[key_part] = groups.get(key_part, _Z) + term
    return [groups[k] for k in sorted(groups,
                                      key=lambda m: tuple((g.key, x)
                                                          for g, x in m))]


_Z = as_expr(0)


def _mono_merge(pairs) -> tuple:
    merged: Dict = {}
    for g, x in pairs:
        merged[g] = merged.get(g, 0) + x
        if merged[g] == 0:
            del merged[g]
    return tuple(sorted(merged.items(), key=lambda kv: kv[0].key))


def _antiderivative_candidates(e: Expr, direction: str) -> set:
    """Monomial candidates for H given that D_direction H contributes to e:
    every input monomial with one derivative in that direction removed from
    one jet factor, every monomial with a pure first-order factor of that
    direction deleted (the chain-rule partner of atom and point factors),
    plus t/x-scaled point monomials."""
    first = (0, 1) if direction == "x" else (1, 0)
    cands = set()
    for mono, _ in as_expr(e).nt:
        factors = [(g, x) for g, x in mono if g.key[0] >= 20]
        jets = [(g, x) for g, x in factors
                if isinstance(g, Symbol) and g.kind == "jet"]
        for g, _x in jets:
            nt, nx = g.index
            if direction == "x" and nx >= 1:
                lower = jet(g.dep, nt, nx - 1)
            elif direction == "t" and nt >= 1:
                lower = jet(g.dep, nt - 1, nx)
            else:
                continue
            cands.add(_mono_merge(factors + [(g, -1), (lower, 1)]))
            if g.index == first:
                cands.add(_mono_merge(factors + [(g, -1)]))
        if not jets:
            anti = _X if direction == "x" else _T
            cands.add(_mono_merge(factors + [(anti, 1)]))
    return cands


def find_flux_potential(dCt, dCx, sys: PDESystem, deg: int,
                        r: int = 2, extra_unknowns: Sequence[Symbol] = (),
                        cap: int = DEFAULT_ORDER_CAP):
    """Search for H with dCt = D_x H and dCx = -D_t H modulo the system.

    Returns the pair (H, assignment for extra_unknowns) when extra
    unknowns are supplied, else H alone; None when no potential exists
    within the bounded basis (inconclusive, not a proof of nontriviality).
    """
    dCt = sys.asm.apply_zero(as_expr(dCt))
    dCx = sys.asm.apply_zero(as_expr(dCx))
    # candidates come from the inputs and from their on-solutions normal
    # forms: reduction can surface the monomials an antiderivative needs
    # (e.g. a density that is a t-derivative of lower-order terms)
    red_ct = vanishes_on_solutions(dCt, sys, r, 0, cap).residual
    red_cx = vanishes_on_solutions(dCx, sys, r, 0, cap).residual
    basis_monos = set()
    basis_monos |= _antiderivative_candidates(dCt, "x")
    basis_monos |= _antiderivative_candidates(dCx, "t")
    basis_monos |= _antiderivative_candidates(red_ct, "x")
    basis_monos |= _antiderivative_candidates(red_cx, "t")
    # differentiating an atom-bearing candidate sheds the atom and leaves a
    # rational tail; the atom-free monomial must be present to absorb the
    # polynomial part of that tail
    frontier = set(basis_monos)
    while frontier:
        shed_new = set()
        for m in frontier:
            for g, _x in m:
                if g.kind == "atom":
                    shed = _mono_merge(list(m) + [(g, -1)])
                    if shed and shed not in basis_monos:
                        shed_new.add(shed)
        basis_monos |= shed_new
        frontier = shed_new
    basis_monos = {m for m in basis_monos
                   if sum(x for g, x in m
                          if isinstance(g, Symbol) and g.kind == "jet") <= deg}
    basis = sorted(basis_monos, key=lambda m: tuple((g.key, x)
                                                    for g, x in m))
    ks = [unknown(i + 1, "k") for i in range(len(basis))]
    h = _Z
    for k, m in zip(ks, basis):
        h = h + k * _mono_to_expr(m)

    e1 = dCt - total_derivative(h, "x", cap)
    e2 = dCx + total_derivative(h, "t", cap)
    conditions: List[Expr] = []
    for e in (e1, e2):
        cert = vanishes_on_solutions(e, sys, r, deg + 3, cap)
        conditions.extend(_collect_conditions(cert.residual))
    all_unknowns = tuple(ks) + tuple(extra_unknowns)
    try:
        sol = solve_linear(conditions, all_unknowns, sys.asm)
    except (InconsistentSystemError, UnlicensedPivotError):
        return None
    assign = sol.particular
    h_val = h.subs({k: assign[k] for k in ks}) if ks else _Z
    if extra_unknowns:
        return h_val, {q: assign[q] for q in extra_unknowns}
    return h_val


def solution_point(sys: PDESystem, order: int, rng,
                   extra_generators: Sequence = (),
                   attempts: int = 50) -> dict:
    """Random rational point of the truncated solution jet space: free
    coordinates are sampled, then every principal coordinate of order
    <= `order` is solved from the prolonged equations (descending x-order
    within ascending t-count, so each value is determined by values already
    fixed)."""
    if any(e.atoms() for e in sys.equations):
        raise ExprError("solution sampling supports polynomial systems only")
    r = order - 3
    forms = _solved_forms(sys, max(r, 0), DEFAULT_ORDER_CAP) if r >= 0 else {}
    params = set()
    for e in sys.equations:
        params |= {g for g in e.generators()
                   if isinstance(g, Symbol) and g.kind in ("param", "const")}
    for g in extra_generators:
        if isinstance(g, Symbol) and g.kind in ("param", "const"):
            params.add(g)
    params = sorted(params, key=lambda g: g.key)
    coords = [_T, _X]
    for w in sys.dependents:
        for total in range(order + 1):
            for nt in range(total + 1):
                coords.append(jet(w, nt, total - nt))
    for _ in range(attempts):
        point = random_point(params, rng)
        ok = True
        for nz in sys.asm.nonzero:
            try:
                if eval_rational(nz, point) == 0:
                    ok = False
                    break
            except ZeroDivisionError:
                ok = False
                break
        if not ok:
            continue
        point.update(random_point(coords, rng))
        try:
            for k in range(1, order + 1):
                for j in range(order - k, -1, -1):
                    for w in sys.dependents:
                        z = jet(w, k, j)
                        if z in forms:
                            _key, _g, rhs = forms[z]
                            point[z] = eval_rational(rhs, point)
        except ZeroDivisionError:
            continue
        return point
    raise ExprError("failed to sample a solution-jet point")
