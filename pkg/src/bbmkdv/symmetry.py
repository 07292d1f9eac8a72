"""Point symmetries: generator catalog, invariance checking, determining
equations with opaque coefficient functions, and the numeric ansatz solver.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .expr import (Expr, ExprError, Symbol, as_expr, dep, func_symbol, indep,
                   jet, param, unknown)
from .jet import (VectorField, apply_generator, linear_combination,
                  vector_field)
from .linsolve import solve_linear
from .numeric import eval_rational
from .reduce import (DEFAULT_LADDER, MembershipCertificate, _collect_conditions,
                     solution_point, vanishes_on_solutions,
                     vanishes_with_ladder)
from .system import PDESystem, bbm_kdv

T, X = indep("t"), indep("x")
U, V = dep("u"), dep("v")

GENERATOR_NAMES = ("X1", "X2", "X3", "X4", "X5")


def _params_of(sys: Optional[PDESystem]):
    if sys is None:
        vals = {}
    else:
        vals = sys.values
    out = {}
    for name in ("a", "b", "c"):
        out[name] = as_expr(vals[name]) if name in vals else as_expr(param(name))
    return out["a"], out["b"], out["c"]


def standard_generators(sys: Optional[PDESystem] = None) -> Dict[str, VectorField]:
    """The five catalog generators, with the system's parameter bindings
    substituted when given."""
    a, b, c = _params_of(sys)
    au_c = a * U + c
    fields = {
        "X1": vector_field((a + b) * T, 0, -2 * au_c, -(a + b) * V),
        "X2": vector_field(1, 0, 0, 0),
        "X3": vector_field(0, (a + b) * X, 2 * au_c, (a + b) * V),
        "X4": vector_field(0, (a + b) * T, 0, 1),
        "X5": vector_field(0, 1, 0, 0),
    }
    if sys is not None:
        zero = sys.asm.apply_zero
        fields = {k: VectorField(zero(f.xi_t), zero(f.xi_x),
                                 zero(f.eta_u), zero(f.eta_v))
                  for k, f in fields.items()}
    return fields


_TERM_RE = re.compile(r"^\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?X([1-5])\s*$")


def combination(spec, sys: Optional[PDESystem] = None) -> VectorField:
    """Build a generator from 'X4', '2*X1 + X3', or (coeff, name) pairs."""
    gens = standard_generators(sys)
    if isinstance(spec, VectorField):
        return spec
    if isinstance(spec, str):
        terms = []
        txt = spec.replace("-", "+-")
        for piece in txt.split("+"):
            if not piece.strip():
                continue
            m = _TERM_RE.match(piece)
            if not m:
                raise ExprError("cannot parse generator term %r" % piece)
            sign, coeff, idx = m.groups()
            val = Fraction(coeff) if coeff else Fraction(1)
            if sign == "-":
                val = -val
            terms.append((val, "X" + idx))
        if not terms:
            raise ExprError("empty generator specification")
        spec = terms
    return linear_combination([(as_expr(cf), gens[name])
                               for cf, name in spec])


COLUMNS = ("b=0", "a=b", "b(a-b)!=0")


@dataclass(frozen=True)
class SymmetryCase:
    """One Table cell: parameter column x whether eps and sigma both
    vanish."""
    column: str
    eps_sigma_zero: bool

    def __post_init__(self):
        if self.column not in COLUMNS:
            raise ExprError("unknown column %r" % self.column)

    @property
    def cell_id(self) -> str:
        row = "eps=sigma=0" if self.eps_sigma_zero else "{eps,sigma}!=0"
        return "%s|%s" % (self.column, row)


def table_cases() -> Tuple[SymmetryCase, ...]:
    return tuple(SymmetryCase(col, both)
                 for both in (True, False) for col in COLUMNS)


@dataclass(frozen=True)
class CatalogEntry:
    """An admitted generator with its side conditions (parameter
    polynomials that must vanish additionally)."""
    name: str
    conditions: Tuple[str, ...] = ()

    def vector_field(self, sys: Optional[PDESystem] = None) -> VectorField:
        return combination(self.name, sys)


_K, _L = "kappa", "lambda"


def catalog(case: SymmetryCase) -> Tuple[CatalogEntry, ...]:
    """Admitted generators for a Table cell; each entry carries its own
    extra zero conditions."""
    if case.eps_sigma_zero:
        if case.column == "b=0":
            return (CatalogEntry("X1", (_K,)),
                    CatalogEntry("2*X1+X3", (_L,)),
                    CatalogEntry("X2"), CatalogEntry("X4"),
                    CatalogEntry("X5"))
        if case.column == "a=b":
            return (CatalogEntry("3*X1+X3"), CatalogEntry("X2"),
                    CatalogEntry("X4"), CatalogEntry("X5"))
        return (CatalogEntry("X2"), CatalogEntry("X4"), CatalogEntry("X5"))
    if case.column == "b=0":
        return (CatalogEntry("X1", (_K,)), CatalogEntry("X2"),
                CatalogEntry("X5"))
    if case.column == "a=b":
        return (CatalogEntry("X1", (_K, _L)), CatalogEntry("X2"),
                CatalogEntry("X5"))
    return (CatalogEntry("X2"), CatalogEntry("X5"))


def case_system(case: SymmetryCase, extra_zero: Sequence = (),
                label: str = "") -> PDESystem:
    """Symbolic family instance satisfying the cell conditions plus any
    side conditions (named parameters or polynomials)."""
    zero = []
    nonzero = []
    if case.column == "b=0":
        zero.append(param("b"))
    elif case.column == "a=b":
        zero.append(param("a") - param("b"))
    else:
        nonzero += [param("b"), param("a") - param("b")]
    if case.eps_sigma_zero:
        zero += [param("eps"), param("sigma")]
    for cond in extra_zero:
        zero.append(as_expr(param(cond)) if isinstance(cond, str)
                    else as_expr(cond))
    return bbm_kdv(nonzero=nonzero, zero=zero,
                   label=label or case.cell_id)


def invariance_defect(vf: VectorField, sys: PDESystem) -> Tuple[Expr, ...]:
    """Prolonged generator applied to each equation (not yet reduced)."""
    return tuple(sys.asm.apply_zero(apply_generator(vf, eq, 3))
                 for eq in sys.equations)


@dataclass
class SymmetryResult:
    status: str  # pass | fail | inconclusive
    certificates: Tuple[MembershipCertificate, ...]
    witness: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.status == "pass"

    def to_json_dict(self) -> dict:
        out = {"status": self.status,
               "certificates": [c.to_json_dict() for c in self.certificates]}
        if self.witness is not None:
            out["witness"] = {str(k): str(v)
                              for k, v in sorted(self.witness.items(),
                                                 key=lambda kv: str(kv[0]))}
        return out


def is_symmetry(vf: VectorField, sys: PDESystem,
                ladder=DEFAULT_LADDER, rng=None) -> SymmetryResult:
    """Membership check of both invariance defects, with a numeric witness
    at a solution-jet point when no certificate exists and the defect is
    provably nonzero there."""
    defects = invariance_defect(vf, sys)
    certs = tuple(vanishes_with_ladder(e, sys, ladder) for e in defects)
    if all(c.ok for c in certs):
        return SymmetryResult("pass", certs)
    if rng is None:
        import random
        rng = random.Random(20190411)
    witness = _nonzero_witness(defects, sys, rng)
    if witness is not None:
        return SymmetryResult("fail", certs, witness)
    return SymmetryResult("inconclusive", certs)


def _nonzero_witness(defects, sys: PDESystem, rng, tries: int = 6):
    if any(e.atoms() for e in defects):
        return None
    order = max([e.max_jet_order() for e in defects] + [3]) + 3
    extra = set()
    for e in defects:
        extra |= {g for g in e.generators()
                  if isinstance(g, Symbol) and g.kind in ("param", "const")}
    for _ in range(tries):
        try:
            point = solution_point(sys, order, rng,
                                   extra_generators=sorted(extra,
                                                           key=lambda g: g.key))
            vals = [eval_rational(e, point) for e in defects]
        except (ExprError, ZeroDivisionError):
            continue
        if any(val != 0 for val in vals):
            point["_defect_values"] = tuple(vals)
            return point
    return None


def verify_cell(case: SymmetryCase, ladder=DEFAULT_LADDER):
    """Check every catalog entry of the cell, each side condition
    instantiated separately; returns list of (entry, SymmetryResult)."""
    results = []
    for entry in catalog(case):
        sys = case_system(case, extra_zero=entry.conditions)
        vf = entry.vector_field(sys)
        results.append((entry, is_symmetry(vf, sys, ladder)))
    return results


def determining_equations(sys: PDESystem, names=("T", "X", "U", "V"),
                          r: int = 2) -> List[Expr]:
    """Invariance conditions on opaque coefficient functions of
    (t, x, u, v): reduce the prolonged-generator images modulo the system,
    then split by the remaining jet monomials."""
    tn, xn, un, vn = names
    vf = VectorField(as_expr(func_symbol(tn, 0, 0, 0, 0)),
                     as_expr(func_symbol(xn, 0, 0, 0, 0)),
                     as_expr(func_symbol(un, 0, 0, 0, 0)),
                     as_expr(func_symbol(vn, 0, 0, 0, 0)))
    conditions: List[Expr] = []
    for eq in sys.equations:
        e = sys.asm.apply_zero(apply_generator(vf, eq, 3))
        cert = vanishes_on_solutions(e, sys, r, 3)
        conditions.extend(_split_by_jets(cert.residual))
    return _dedupe(conditions)


def _split_by_jets(e: Expr) -> List[Expr]:
    """Coefficients of e with respect to monomials in positive-order jet
    coordinates (everything else, including u and v, stays inside the
    coefficients)."""
    e = as_expr(e)
    num = e.nt
    groups: Dict[tuple, Expr] = {}
    for mono, coeff in num:
        jet_part = tuple((g, x) for g, x in mono
                         if isinstance(g, Symbol) and g.kind == "jet")
        rest = tuple((g, x) for g, x in mono
                     if not (isinstance(g, Symbol) and g.kind == "jet"))
        term = _from_mono(rest, coeff)
        groups[jet_part] = groups.get(jet_part, as_expr(0)) + term
    den = Expr(as_expr(1).nt, e.dt)
    return [groups[k] / den for k in sorted(
        groups, key=lambda m: tuple((g.key, x) for g, x in m))]


def _from_mono(mono, coeff) -> Expr:
    out = as_expr(coeff)
    for g, x in mono:
        from .expr import from_generator
        out = out * from_generator(g) ** x
    return out


def _dedupe(conditions: Sequence[Expr]) -> List[Expr]:
    # canonical kernel: equal values share (num, den); fold signs together
    out: List[Expr] = []
    seen = set()
    for cond in conditions:
        if cond.is_zero():
            continue
        key = (cond.nt, cond.dt)
        neg = -cond
        if key in seen or (neg.nt, neg.dt) in seen:
            continue
        seen.add(key)
        out.append(cond)
    return out


def instantiate_conditions(conditions: Sequence[Expr],
                           assignments: Dict[str, Expr]) -> List[Expr]:
    """Substitute polynomial ansatz functions of (t, x, u, v) for the
    opaque coefficient functions in determining conditions; each
    derivative coordinate becomes the matching partial of the ansatz."""
    out = []
    cache: Dict[Symbol, Expr] = {}
    for cond in conditions:
        e = as_expr(cond)
        mapping = {}
        for g in e.generators():
            if not (isinstance(g, Symbol) and g.kind == "func"):
                continue
            if g.dep not in assignments:
                raise ExprError("no ansatz given for function %r" % g.dep)
            if g not in cache:
                val = as_expr(assignments[g.dep])
                it, ix, iu, iv = g.index
                for sym, n in ((T, it), (X, ix), (U, iu), (V, iv)):
                    for _ in range(n):
                        val = val.diff(sym)
                cache[g] = val
            mapping[g] = cache[g]
        out.append(e.subs(mapping) if mapping else e)
    return out


def ansatz_nullspace(conditions: Sequence[Expr], deg: int = 2,
                     names=("T", "X", "U", "V"), asm=None):
    """Solution space of determining conditions over the polynomial
    ansatz of total degree <= deg; returns (solution, unknowns)."""
    monos = _point_monomials(deg)
    assignments: Dict[str, Expr] = {}
    qs: List[Symbol] = []
    idx = 0
    for name in names:
        acc = as_expr(0)
        for m in monos:
            idx += 1
            q = unknown(idx, "q")
            qs.append(q)
            acc = acc + q * m
        assignments[name] = acc
    inst = instantiate_conditions(conditions, assignments)
    split: List[Expr] = []
    for e in inst:
        split.extend(_collect_conditions(e))
    return solve_linear(split, qs, asm), qs


def _point_monomials(deg: int) -> List[Expr]:
    vars_ = (as_expr(T), as_expr(X), as_expr(U), as_expr(V))
    monos = [as_expr(1)]
    for _ in range(deg):
        monos = monos + [m * w for m in monos for w in vars_]
    seen: List[Expr] = []
    for m in monos:
        if not any((m - s).is_zero() for s in seen):
            seen.append(m)
    return seen


def solve_symmetries(sys: PDESystem, deg: int = 2,
                     r: int = 2) -> List[VectorField]:
    """Numeric-parameter ansatz solver: polynomial coefficients of total
    degree <= deg in (t, x, u, v); returns a basis of the admitted
    generator space."""
    if sys.params():
        raise ExprError("solve_symmetries requires all parameters numeric")
    monos = _point_monomials(deg)
    qs: List[Symbol] = []
    comps = []
    idx = 0
    for _ in range(4):
        acc = as_expr(0)
        for m in monos:
            idx += 1
            q = unknown(idx, "q")
            qs.append(q)
            acc = acc + q * m
        comps.append(acc)
    vf = VectorField(*comps)
    conditions: List[Expr] = []
    for eq in sys.equations:
        e = apply_generator(vf, eq, 3)
        cert = vanishes_on_solutions(e, sys, r, 3)
        conditions.extend(_collect_conditions(cert.residual))
    sol = solve_linear(conditions, qs, sys.asm)
    basis = []
    for vec in sol.nullspace:
        parts = []
        pos = 0
        for _ in range(4):
            acc = as_expr(0)
            for m in monos:
                acc = acc + vec[qs[pos]] * m
                pos += 1
            parts.append(acc)
        basis.append(VectorField(*parts))
    return basis


def _monomial_coords(e: Expr) -> Dict[tuple, Fraction]:
    if e.dt != as_expr(1).dt:
        raise ExprError("generator coefficients must be polynomial for "
                        "span comparison")
    out: Dict[tuple, Fraction] = {}
    for mono, coeff in e.nt:
        for g, _x in mono:
            if g.kind in ("param", "const", "unknown"):
                raise ExprError("span comparison needs numeric coefficients")
        out[mono] = Fraction(coeff)
    return out


def span_vectors(fields: Sequence[VectorField]):
    """Embed generators in a common coordinate space (list of dicts)."""
    return [{(i,) + mono: val
             for i, compo in enumerate(vf.coefficients())
             for mono, val in _monomial_coords(compo).items()}
            for vf in fields]


def _rank(vectors) -> int:
    rows = [dict(v) for v in vectors]
    rank = 0
    while rows:
        row = rows.pop(0)
        row = {k: v for k, v in row.items() if v != 0}
        if not row:
            continue
        rank += 1
        pivot_key = sorted(row)[0]
        pv = row[pivot_key]
        for other in rows:
            ov = other.get(pivot_key)
            if ov:
                factor = ov / pv
                for k, v in row.items():
                    other[k] = other.get(k, Fraction(0)) - factor * v
    return rank


def same_span(fields_a: Sequence[VectorField],
              fields_b: Sequence[VectorField]) -> bool:
    va = span_vectors(fields_a)
    vb = span_vectors(fields_b)
    ra, rb = _rank(va), _rank(vb)
    return ra == rb == _rank(va + vb)
