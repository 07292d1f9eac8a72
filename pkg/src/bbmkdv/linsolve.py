"""Exact linear algebra over expression coefficients with licensed pivots.

Solves affine systems in designated unknown symbols.  A pivot entry may be
divided by only when the assumption set licenses it as nonvanishing
(nonzero rational times declared nonzero factors); no case splitting is
ever performed.  Arithmetic is exact throughout (canonical quotients of
polynomials with rational coefficients).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .expr import (Assumptions, Expr, ExprError, Symbol, as_expr,
                   licensed_pivot)


class UnlicensedPivotError(ExprError):
    """A needed pivot is not licensed by the assumption set."""

    def __init__(self, coefficients):
        self.coefficients = list(coefficients)
        super().__init__(
            "no licensed pivot available; offending coefficients: %s"
            % ", ".join(repr(c) for c in self.coefficients[:4]))


class InconsistentSystemError(ExprError):
    pass


def split_linear(e, unknowns: Sequence[Symbol]) -> Tuple[Dict[Symbol, Expr], Expr]:
    """Write e = sum coeff_q * q + const; error if e is not affine in the
    unknowns or a coefficient contains an unknown."""
    e = as_expr(e)
    coeffs: Dict[Symbol, Expr] = {}
    rest = e
    for q in unknowns:
        if not rest.has(q):
            continue
        parts = rest.coeffs_in(q)
        if max(parts) > 1:
            raise ExprError("expression is nonlinear in unknown %r" % q)
        coeffs[q] = parts[1]
        rest = parts.get(0, as_expr(0))
    for q, cf in coeffs.items():
        for other in unknowns:
            if cf.has(other):
                raise ExprError("nonlinear cross term between unknowns "
                                "%r and %r" % (q, other))
    return coeffs, rest


@dataclass
class LinearSolution:
    unknowns: Tuple[Symbol, ...]
    particular: Dict[Symbol, Expr]
    nullspace: List[Dict[Symbol, Expr]] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.nullspace)

    def instance(self, free_values: Sequence) -> Dict[Symbol, Expr]:
        if len(free_values) != len(self.nullspace):
            raise ExprError("expected %d free values" % len(self.nullspace))
        out = dict(self.particular)
        for val, vec in zip(free_values, self.nullspace):
            val = as_expr(val)
            for q in self.unknowns:
                out[q] = out[q] + val * vec[q]
        return out


def solve_linear(equations: Sequence, unknowns: Sequence[Symbol],
                 asm: Assumptions = None) -> LinearSolution:
    """Solve the affine system {e = 0} for the unknowns.

    Returns a particular solution plus a nullspace basis (free unknowns
    parametrize the family).  Raises InconsistentSystemError when no
    solution exists, UnlicensedPivotError when deciding would require
    dividing by an unlicensed parameter expression.
    """
    asm = asm or Assumptions()
    unknowns = tuple(unknowns)
    rows: List[Tuple[Dict[Symbol, Expr], Expr]] = []
    for e in equations:
        coeffs, const = split_linear(asm.apply_zero(e), unknowns)
        coeffs = {q: cf for q, cf in coeffs.items() if not cf.is_zero()}
        if coeffs:
            rows.append((coeffs, const))
        elif not const.is_zero():
            if licensed_pivot(const, asm) or const.is_rational():
                raise InconsistentSystemError(
                    "equation reduces to nonzero constant %r" % const)
            raise UnlicensedPivotError([const])

    pivot_of: Dict[Symbol, Tuple[Dict[Symbol, Expr], Expr]] = {}
    active = rows
    deferred: List[Expr] = []
    for q in unknowns:
        chosen = None
        for i, (coeffs, const) in enumerate(active):
            cf = coeffs.get(q)
            if cf is not None and licensed_pivot(cf, asm):
                chosen = i
                break
        if chosen is None:
            deferred.extend(coeffs[q] for coeffs, _ in active if q in coeffs)
            continue
        pcoeffs, pconst = active.pop(chosen)
        pivot_of[q] = (pcoeffs, pconst)
        remaining = []
        for coeffs, const in active:
            cf = coeffs.get(q)
            if cf is None:
                remaining.append((coeffs, const))
                continue
            factor = cf / pcoeffs[q]
            newc = {}
            for k in set(coeffs) | set(pcoeffs):
                if k is q:
                    continue
                val = coeffs.get(k, _Z) - factor * pcoeffs.get(k, _Z)
                if not val.is_zero():
                    newc[k] = val
            newconst = const - factor * pconst
            if newc:
                remaining.append((newc, newconst))
            elif not newconst.is_zero():
                if licensed_pivot(newconst, asm) or newconst.is_rational():
                    raise InconsistentSystemError(
                        "equations force nonzero constant %r" % newconst)
                raise UnlicensedPivotError([newconst])
        active = remaining

    if active:
        bad = [cf for coeffs, _ in active for cf in coeffs.values()]
        raise UnlicensedPivotError(bad or deferred)

    free = [q for q in unknowns if q not in pivot_of]

    def back_substitute(assign: Dict[Symbol, Expr]) -> Dict[Symbol, Expr]:
        out = dict(assign)
        for q in reversed(unknowns):
            if q not in pivot_of:
                continue
            coeffs, const = pivot_of[q]
            acc = const
            for k, cf in coeffs.items():
                if k is not q:
                    acc = acc + cf * out[k]
            out[q] = -acc / coeffs[q]
        return out

    particular = back_substitute({q: _Z for q in free})
    nullspace = []
    for f in free:
        assign = {q: (_ONE if q is f else _Z) for q in free}
        vec = back_substitute(assign)
        # homogeneous part: subtract the particular constants
        nullspace.append({q: vec[q] - particular[q] for q in unknowns})
    return LinearSolution(unknowns=unknowns, particular=particular,
                          nullspace=nullspace)


_Z = as_expr(0)
_ONE = as_expr(1)
