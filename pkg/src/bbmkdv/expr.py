"""Exact symbolic expressions: canonical quotients of multivariate polynomials.

An Expr is num/den where num and den are sparse polynomials over Q
(``fractions.Fraction`` coefficients).  Generators are Symbols
(parameters, arbitrary constants, independent and dependent variables,
jet coordinates) plus transcendental atoms (ln, exp, pow).  The
canonical form is:

  * monomials ordered graded-lex under a fixed global symbol order,
  * den monic (leading coefficient 1), den == 1 when num == 0,
  * common monomial content cancelled, exact polynomial quotients
    collapsed; no other factorization is attempted, so equality is
    always decided by subtraction (zero iff numerator of the
    difference is the zero polynomial).

Normalization is idempotent: normalizing a normalized Expr returns a
bitwise-identical object.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

Q = Fraction

PARAM_NAMES = ("a", "b", "c", "eps", "kappa", "lambda", "sigma")
DEP_NAMES = ("u", "v", "ubar", "vbar")
INDEP_NAMES = ("t", "x")

_RANK_PARAM = 0
_RANK_CONST = 10
_RANK_UNKNOWN = 15
_RANK_INDEP = 20
_RANK_DEP = 30
_RANK_JET = 40
_RANK_FUNC = 50
_RANK_ATOM = 60


class ExprError(ValueError):
    pass


class Symbol:
    """A named generator.  Interned: equal symbols are identical objects."""

    __slots__ = ("kind", "name", "dep", "index", "key", "_hash")

    def __init__(self, kind, name, dep=None, index=None, key=()):
        self.kind = kind
        self.name = name
        self.dep = dep
        self.index = index
        self.key = key
        self._hash = hash(key)

    def __repr__(self):
        return self.name

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key < other.key

    # arithmetic sugar so Symbols compose directly into Exprs
    def _as_expr(self):
        return from_generator(self)

    def __add__(self, other):
        return self._as_expr() + other

    __radd__ = __add__

    def __sub__(self, other):
        return self._as_expr() - other

    def __rsub__(self, other):
        return (-self._as_expr()) + other

    def __mul__(self, other):
        return self._as_expr() * other

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._as_expr() / other

    def __rtruediv__(self, other):
        return as_expr(other) / self._as_expr()

    def __pow__(self, n):
        return self._as_expr() ** n

    def __neg__(self):
        return -self._as_expr()


_symbols: dict = {}


def _intern(kind, name, dep, index, key):
    sym = _symbols.get(key)
    if sym is None:
        sym = Symbol(kind, name, dep, index, key)
        _symbols[key] = sym
    return sym


def param(name: str) -> Symbol:
    if name not in PARAM_NAMES:
        raise ExprError("unknown parameter %r" % name)
    i = PARAM_NAMES.index(name)
    return _intern("param", name, None, i, (_RANK_PARAM, i))


def const(i: int) -> Symbol:
    """Arbitrary constant c1 .. c99 (a namespace distinct from parameter c)."""
    if not 1 <= i <= 99:
        raise ExprError("arbitrary constants range over c1..c99")
    return _intern("const", "c%d" % i, None, i, (_RANK_CONST, i))


def unknown(i: int, tag: str = "q") -> Symbol:
    """Internal ansatz unknown; solved for by the linear solvers."""
    return _intern("unknown", "%s%d" % (tag, i), None, i,
                   (_RANK_UNKNOWN, tag, i))


def indep(name: str) -> Symbol:
    i = INDEP_NAMES.index(name)
    return _intern("indep", name, None, i, (_RANK_INDEP, i))


def dep(name: str) -> Symbol:
    i = DEP_NAMES.index(name)
    return _intern("dep", name, None, i, (_RANK_DEP, i))


def jet(var: Union[str, Symbol], nt: int, nx: int) -> Symbol:
    """Jet coordinate var_{t^nt x^nx}; (0,0) gives the variable itself."""
    base = dep(var) if isinstance(var, str) else var
    if base.kind != "dep":
        raise ExprError("jet base must be a dependent variable")
    if nt < 0 or nx < 0:
        raise ExprError("negative jet index")
    if nt == 0 and nx == 0:
        return base
    name = base.name + "_" + "t" * nt + "x" * nx
    total = nt + nx
    return _intern("jet", name, base.name, (nt, nx),
                   (_RANK_JET, total, base.index, nt))


def func_symbol(name: str, it: int, ix: int, iu: int, iv: int) -> Symbol:
    """Opaque scalar function of (t,x,u,v): partial-derivative coordinate."""
    suffix = "t" * it + "x" * ix + "u" * iu + "v" * iv
    full = name + ("_" + suffix if suffix else "")
    return _intern("func", full, name, (it, ix, iu, iv),
                   (_RANK_FUNC, name, it, ix, iu, iv))


class Atom:
    """Transcendental atom: ln(arg), exp(arg) or pow(arg, expo).

    Atoms are opaque generators; two atoms are equal iff heads and
    normalized arguments (and exponents) are identical.
    """

    __slots__ = ("head", "arg", "expo", "key", "_hash")

    def __init__(self, head, arg, expo, key):
        self.head = head
        self.arg = arg
        self.expo = expo
        self.key = key
        self._hash = hash(key)

    @property
    def kind(self):
        return "atom"

    def __repr__(self):
        if self.head == "pow":
            return "pow(%r, %r)" % (self.arg, self.expo)
        return "%s(%r)" % (self.head, self.arg)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key < other.key


_atoms: dict = {}

_HEAD_RANK = {"ln": 0, "exp": 1, "pow": 2}


def _atom(head: str, arg: "Expr", expo: Optional["Expr"]) -> Atom:
    key = (_RANK_ATOM, _HEAD_RANK[head], arg._skey(),
           expo._skey() if expo is not None else ())
    at = _atoms.get(key)
    if at is None:
        at = Atom(head, arg, expo, key)
        _atoms[key] = at
    return at


Gen = Union[Symbol, Atom]

# A monomial is a tuple of (generator, positive exponent) pairs sorted by
# generator key; a polynomial is a dict monomial -> Fraction.

_ONE_MONO = ()


def _mono_key(m):
    # graded, then lex with the highest-ranked generator most significant
    return (sum(e for _, e in m), tuple((g.key, e) for g, e in reversed(m)))


def _mono_mul_raw(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = {}
    for g, e in m1:
        d[g] = e
    for g, e in m2:
        d[g] = d.get(g, 0) + e
    return tuple(sorted(d.items(), key=lambda ge: ge[0].key))


def _mono_div(m1, m2):
    """m1 / m2 or None if not divisible."""
    d = {g: e for g, e in m1}
    for g, e in m2:
        r = d.get(g, 0) - e
        if r < 0:
            return None
        if r == 0:
            d.pop(g, None)
        else:
            d[g] = r
    return tuple(sorted(d.items(), key=lambda ge: ge[0].key))


def _mono_needs_canon(m):
    for g, e in m:
        if isinstance(g, Atom) and g.head == "pow" and e > 1:
            return True
    seen = set()
    for g, e in m:
        if isinstance(g, Atom) and g.head == "pow":
            k = g.key[2]
            if k in seen:
                return True
            seen.add(k)
    return False


def _mono_canon(m, coeff) -> "Expr":
    """Rebuild a raw monomial merging pow atoms that share a base."""
    plain = []
    pows = {}  # arg struct key -> (arg, total exponent Expr)
    for g, e in m:
        if isinstance(g, Atom) and g.head == "pow":
            k = g.key[2]
            arg, tot = pows.get(k, (g.arg, ZERO))
            pows[k] = (arg, tot + g.expo * e)
        else:
            plain.append((g, e))
    out = _from_poly({tuple(plain): coeff})
    for arg, tot in pows.values():
        out = out * pow_(arg, tot)
    return out


def _padd(p1, p2):
    if len(p1) < len(p2):
        p1, p2 = p2, p1
    out = dict(p1)
    for m, c in p2.items():
        s = out.get(m)
        if s is None:
            out[m] = c
        else:
            s = s + c
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def _pneg(p):
    return {m: -c for m, c in p.items()}


def _pscale(p, c):
    if not c:
        return {}
    return {m: k * c for m, k in p.items()}


def _pmul(p1, p2):
    """Polynomial product; returns (plain dict, list of Expr overflow)."""
    out = {}
    extras = []
    for m1, c1 in p1.items():
        for m2, c2 in p2.items():
            m = _mono_mul_raw(m1, m2)
            c = c1 * c2
            if _mono_needs_canon(m):
                extras.append(_mono_canon(m, c))
                continue
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
    return out, extras


def _plead(p):
    return max(p, key=_mono_key)


def _pdivide(p, d):
    """Exact polynomial division p / d, or None."""
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    if not p:
        return {}
    rem = dict(p)
    dl = _plead(d)
    dc = d[dl]
    q = {}
    while rem:
        rl = _plead(rem)
        mq = _mono_div(rl, dl)
        if mq is None:
            return None
        if _mono_needs_canon(mq):
            return None
        cq = rem[rl] / dc
        q[mq] = cq
        for m, c in d.items():
            mm = _mono_mul_raw(m, mq)
            if _mono_needs_canon(mm):
                return None
            s = rem.get(mm, Q(0)) - c * cq
            if s:
                rem[mm] = s
            else:
                rem.pop(mm, None)
    return q


def _pcontent_mono(polys):
    """Common monomial factor of every term across the given polys."""
    common = None
    for p in polys:
        for m in p:
            d = {g: e for g, e in m}
            if common is None:
                common = d
            else:
                common = {g: min(e, d[g]) for g, e in common.items()
                          if g in d and min(e, d[g]) > 0}
            if not common:
                return ()
    return tuple(sorted((common or {}).items(), key=lambda ge: ge[0].key))


class Expr:
    """Canonical polynomial quotient.  Immutable and hashable."""

    __slots__ = ("nt", "dt", "_hash", "_n", "_d")

    def __init__(self, nt, dt):
        self.nt = nt
        self.dt = dt
        self._hash = hash((nt, dt))
        self._n = None
        self._d = None

    @property
    def num(self):
        if self._n is None:
            self._n = dict(self.nt)
        return self._n

    @property
    def den(self):
        if self._d is None:
            self._d = dict(self.dt)
        return self._d

    def _skey(self):
        """Stable structural key (used to order atoms by their arguments)."""
        return (tuple((tuple((g.key, e) for g, e in m), str(c))
                      for m, c in self.nt),
                tuple((tuple((g.key, e) for g, e in m), str(c))
                      for m, c in self.dt))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, Expr):
            if isinstance(other, (int, Fraction)):
                other = as_expr(other)
            else:
                return NotImplemented
        return self.nt == other.nt and self.dt == other.dt

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __repr__(self):
        from .parse import to_text
        return to_text(self)

    def is_zero(self):
        return not self.nt

    def is_rational(self):
        return (not self.nt or (len(self.nt) == 1 and self.nt[0][0] == ())) \
            and self.dt == ((_ONE_MONO, Q(1)),)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ExprError("not a rational constant: %r" % self)
        return self.nt[0][1] if self.nt else Q(0)

    def is_integer(self):
        return self.is_rational() and self.as_rational().denominator == 1

    def __add__(self, other):
        other = as_expr(other)
        if self.dt == other.dt:
            return _make(_padd(self.num, other.num), dict(self.den))
        n1d2, x1 = _pmul(self.num, other.den)
        n2d1, x2 = _pmul(other.num, self.den)
        dd, x3 = _pmul(self.den, other.den)
        if not (x1 or x2 or x3):
            return _make(_padd(n1d2, n2d1), dd)
        num = _from_poly(n1d2) + _from_poly(n2d1)
        for e in x1 + x2:
            num = num + e
        den = _from_poly(dd)
        for e in x3:
            den = den + e
        return num / den

    __radd__ = __add__

    def __neg__(self):
        return Expr(tuple((m, -c) for m, c in self.nt), self.dt)

    def __sub__(self, other):
        return self + (-as_expr(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = as_expr(other)
        if not self.nt or not other.nt:
            return ZERO
        nn, x1 = _pmul(self.num, other.num)
        dd, x2 = _pmul(self.den, other.den)
        if not (x1 or x2):
            return _make(nn, dd)
        num = _from_poly(nn)
        for e in x1:
            num = num + e
        den = _from_poly(dd)
        for e in x2:
            den = den + e
        return num / den

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_expr(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero expression")
        nn, x1 = _pmul(self.num, other.den)
        dd, x2 = _pmul(self.den, other.num)
        if not (x1 or x2):
            return _make(nn, dd)
        num = _from_poly(nn)
        for e in x1:
            num = num + e
        den = _from_poly(dd)
        for e in x2:
            den = den + e
        return num / den

    def __rtruediv__(self, other):
        return as_expr(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise ExprError("exponent must be an integer literal")
        if n == 0:
            return ONE
        b = self if n > 0 else ONE / self
        out = b
        for _ in range(abs(n) - 1):
            out = out * b
        return out

    # ---- structure ----

    def generators(self):
        gens = set()
        for part in (self.nt, self.dt):
            for m, _ in part:
                for g, _e in m:
                    gens.add(g)
        return gens

    def atoms(self):
        return {g for g in self.generators() if isinstance(g, Atom)}

    def has(self, gen: Gen) -> bool:
        for part in (self.nt, self.dt):
            for m, _ in part:
                for g, _e in m:
                    if g is gen:
                        return True
        return False

    def max_jet_order(self) -> int:
        best = 0
        for g in self.generators():
            if isinstance(g, Symbol) and g.kind == "jet":
                best = max(best, g.index[0] + g.index[1])
        return best

    def coeffs_in(self, z: Gen) -> dict:
        """Split num as a polynomial in generator z: degree -> Expr.

        Requires z absent from den.
        """
        for m, _ in self.dt:
            for g, _e in m:
                if g is z:
                    raise ExprError("generator %r occurs in denominator" % z)
        split: dict = {}
        for m, c in self.nt:
            k = 0
            rest = []
            for g, e in m:
                if g is z:
                    k = e
                else:
                    rest.append((g, e))
            split.setdefault(k, {})[tuple(rest)] = c
        return {k: _make(p, dict(self.den)) for k, p in split.items()}

    def diff(self, s: Gen) -> "Expr":
        """Partial derivative treating every other generator as constant."""
        dn = _poly_diff(self.num, s)
        if self.dt == _ONE_T:
            return dn
        dd = _poly_diff(self.den, s)
        den_e = Expr(self.dt, _ONE_T)
        num_e = Expr(self.nt, _ONE_T)
        return (dn * den_e - num_e * dd) / (den_e * den_e)

    def subs(self, mapping: Mapping[Gen, "Expr"]) -> "Expr":
        """Substitute generators by expressions.

        Jet coordinates of a dependent variable are NOT rewritten when
        the variable itself is a key; use jet.substitute_dependent for
        that.  Atom arguments are substituted recursively.
        """
        mapping = {k: as_expr(vv) for k, vv in mapping.items()}
        num = _subs_poly(self.num, mapping)
        den = _subs_poly(self.den, mapping)
        if den.is_zero():
            raise ZeroDivisionError("substitution produced a zero denominator")
        return num / den

    def normalized(self) -> "Expr":
        """Re-run canonicalization (idempotence check hook)."""
        return _make(dict(self.num), dict(self.den))


def _poly_diff(p, s):
    out = ZERO
    for m, c in p.items():
        for i, (g, e) in enumerate(m):
            dg = _gen_diff(g, s)
            if dg is None or dg.is_zero():
                continue
            rest = list(m)
            if e == 1:
                del rest[i]
            else:
                rest[i] = (g, e - 1)
            out = out + _from_poly({tuple(rest): c * e}) * dg
    return out


def _gen_diff(g, s):
    if g is s:
        return ONE
    if isinstance(g, Atom):
        if g.head == "ln":
            da = g.arg.diff(s)
            return None if da.is_zero() else da / g.arg
        if g.head == "exp":
            da = g.arg.diff(s)
            return None if da.is_zero() else from_generator(g) * da
        # pow(arg, expo): expo is parameter-level by construction
        if not g.expo.diff(s).is_zero():
            raise ExprError("pow exponent depends on differentiation symbol")
        da = g.arg.diff(s)
        if da.is_zero():
            return None
        return g.expo * from_generator(g) * da / g.arg
    return None


def _subs_poly(p, mapping):
    out = ZERO
    for m, c in p.items():
        term = as_expr(c)
        for g, e in m:
            if isinstance(g, Atom):
                arg = g.arg.subs(mapping)
                if g.head == "ln":
                    f = ln_(arg)
                elif g.head == "exp":
                    f = exp_(arg)
                else:
                    f = pow_(arg, g.expo.subs(mapping))
            else:
                f = mapping.get(g)
                f = from_generator(g) if f is None else f
            term = term * f ** e
        out = out + term
    return out


def _make(num: dict, den: dict) -> Expr:
    num = {m: c for m, c in num.items() if c}
    den = {m: c for m, c in den.items() if c}
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return ZERO
    # cancel common monomial content
    mc = _pcontent_mono((num, den))
    if mc:
        num = {_mono_div(m, mc): c for m, c in num.items()}
        den = {_mono_div(m, mc): c for m, c in den.items()}
    den_const = len(den) == 1 and _ONE_MONO in den
    if not den_const:
        q = _pdivide(num, den)
        if q is not None:
            num, den = q, {_ONE_MONO: Q(1)}
        else:
            num_const = len(num) == 1 and _ONE_MONO in num
            if not num_const:
                q = _pdivide(den, num)
                if q is not None:
                    num, den = {_ONE_MONO: Q(1)}, q
    lc = den[_plead(den)]
    if lc != 1:
        num = {m: c / lc for m, c in num.items()}
        den = {m: c / lc for m, c in den.items()}
    nt = tuple(sorted(num.items(), key=lambda mc: _mono_key(mc[0]),
                      reverse=True))
    dt = tuple(sorted(den.items(), key=lambda mc: _mono_key(mc[0]),
                      reverse=True))
    return Expr(nt, dt)


def _from_poly(p: dict) -> Expr:
    return _make(p, {_ONE_MONO: Q(1)})


_ONE_T = ((_ONE_MONO, Q(1)),)
ZERO = Expr((), _ONE_T)
ONE = Expr(_ONE_T, _ONE_T)


def from_generator(g: Gen) -> Expr:
    return _from_poly({((g, 1),): Q(1)})


def as_expr(v) -> Expr:
    if isinstance(v, Expr):
        return v
    if isinstance(v, (Symbol, Atom)):
        return from_generator(v)
    if isinstance(v, (int, Fraction)):
        return _from_poly({_ONE_MONO: Q(v)}) if v else ZERO
    raise ExprError("cannot coerce %r to Expr" % (v,))


def ln_(arg) -> Expr:
    arg = as_expr(arg)
    if arg.is_zero():
        raise ExprError("ln of zero")
    if arg == ONE:
        return ZERO
    return from_generator(_atom("ln", arg, None))


def exp_(arg) -> Expr:
    arg = as_expr(arg)
    if arg.is_zero():
        return ONE
    return from_generator(_atom("exp", arg, None))


def pow_(arg, expo) -> Expr:
    """pow(arg, expo); integer-literal exponents fold into the polynomial
    layer, and the exponent must be parameter-level (no t,x,u,v, jets)."""
    arg = as_expr(arg)
    expo = as_expr(expo)
    if expo.is_integer():
        return arg ** int(expo.as_rational())
    for g in expo.generators():
        if isinstance(g, Atom) or g.kind not in ("param", "const", "unknown"):
            raise ExprError("pow exponent must be parameter-level")
    if arg.is_zero():
        raise ExprError("pow of zero base with symbolic exponent")
    if arg == ONE:
        return ONE
    return from_generator(_atom("pow", arg, expo))


def rational(n, d=1) -> Expr:
    return as_expr(Q(n, d))


def equals(e1, e2, assumptions: "Assumptions" = None) -> bool:
    """Exact equality; zero assumptions are substituted first."""
    e1, e2 = as_expr(e1), as_expr(e2)
    if assumptions is not None:
        e1 = assumptions.apply_zero(e1)
        e2 = assumptions.apply_zero(e2)
    return (e1 - e2).is_zero()


class Assumptions:
    """Parameter facts: polynomials declared zero (substituted away) and
    polynomial factors declared nonzero (licensing pivots and cancellation).
    """

    def __init__(self, nonzero: Iterable = (), zero: Iterable = ()):
        self.nonzero = tuple(as_expr(p) for p in nonzero)
        self.zero_raw = tuple(as_expr(p) for p in zero)
        for p in self.nonzero + self.zero_raw:
            if p.dt != _ONE_T:
                raise ExprError("assumptions must be polynomial")
        self.zero_map = {}
        self.zero_map = self._solve_zero(self.zero_raw)
        # reduce the nonzero factors modulo the zero set so licensing sees
        # the same coordinates as reduced expressions
        reduced = []
        for p in self.nonzero:
            q = self.apply_zero(p)
            if q.is_zero():
                raise ExprError("assumptions conflict: %r is declared "
                                "nonzero but the zero set forces it to 0" % p)
            if not q.is_rational() and q not in reduced:
                reduced.append(q)
        self.nonzero = tuple(reduced)

    def _solve_zero(self, constraints):
        subs_map: dict = {}
        for raw in constraints:
            p = raw.subs(subs_map)
            if p.is_zero():
                continue
            sol = None
            for g in sorted(p.generators(), key=lambda g: g.key,
                            reverse=True):
                if isinstance(g, Atom) or g.kind not in ("param", "const"):
                    raise ExprError("zero assumption must be parameter-level")
                split = p.coeffs_in(g)
                if max(split) != 1:
                    continue
                coeff = split[1]
                if self.licensed_nonzero(coeff):
                    rest = split.get(0, ZERO)
                    sol = (g, -rest / coeff)
                    break
            if sol is None:
                raise ExprError(
                    "cannot solve zero assumption %r for a parameter "
                    "(needs a licensed nonzero linear coefficient)" % raw)
            g, val = sol
            subs_map = {k: vv.subs({g: val}) for k, vv in subs_map.items()}
            subs_map[g] = val
        return subs_map

    def apply_zero(self, e) -> Expr:
        e = as_expr(e)
        return e.subs(self.zero_map) if self.zero_map else e

    def licensed_nonzero(self, p) -> bool:
        """True iff p is a nonzero rational times a product of declared
        nonzero factors (syntactic division test, no factorization).
        The zero-set is applied first, so arguments may be unreduced."""
        p = self.apply_zero(as_expr(p))
        if p.is_zero():
            return False
        if p.is_rational():
            return True
        poly = dict(p.num)
        progress = True
        while progress:
            if len(poly) == 1 and _ONE_MONO in poly:
                return True
            progress = False
            for f in self.nonzero:
                q = _pdivide(poly, f.num)
                if q is not None and q:
                    poly = q
                    progress = True
        return len(poly) == 1 and _ONE_MONO in poly

    def extended(self, nonzero=(), zero=()) -> "Assumptions":
        return Assumptions(self.nonzero + tuple(as_expr(p) for p in nonzero),
                           self.zero_raw + tuple(as_expr(p) for p in zero))

    def __repr__(self):
        return "Assumptions(nonzero=%r, zero=%r)" % (
            list(self.nonzero), list(self.zero_raw))


def licensed_pivot(p, assumptions: Assumptions) -> bool:
    """May we divide by p without excluding admissible parameter values?

    p is viewed as a polynomial in the non-parameter generators; it is a
    licensed pivot iff some coefficient (a pure parameter polynomial) is
    licensed nonzero.  A nonzero function of t,x,u,v with one licensed
    coefficient vanishes nowhere identically on the admissible set.
    """
    p = as_expr(p)
    if p.is_zero():
        return False
    groups: dict = {}
    for m, c in p.nt:
        par = []
        rest = []
        for g, e in m:
            if isinstance(g, Symbol) and g.kind in ("param", "const"):
                par.append((g, e))
            else:
                rest.append((g, e))
        groups.setdefault(tuple(rest), {})[tuple(par)] = c
    for coeff_poly in groups.values():
        if assumptions.licensed_nonzero(_from_poly(coeff_poly)):
            return True
    return False
