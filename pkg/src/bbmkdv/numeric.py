"""Numeric evaluation of expressions at sampled points.

Exact rational evaluation treats transcendental atoms as independent
generators (sound for checking ring identities such as membership
certificates).  Float evaluation interprets the atoms through math.* and
exists for test oracles only; the kernel itself never touches floats.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping

from .expr import Atom, Expr, ExprError, as_expr


def _poly_eval_rational(part, point: Mapping) -> Fraction:
    total = Fraction(0)
    for mono, coeff in part:
        term = Fraction(coeff)
        for g, e in mono:
            try:
                val = point[g]
            except KeyError:
                raise ExprError("no value for generator %r" % g)
            term *= Fraction(val) ** e
        total += term
    return total


def eval_rational(e, point: Mapping) -> Fraction:
    """Exact value; every generator (atoms included) needs an entry."""
    e = as_expr(e)
    den = _poly_eval_rational(e.dt, point)
    if den == 0:
        raise ZeroDivisionError("denominator vanishes at the sample point")
    return _poly_eval_rational(e.nt, point) / den


def eval_float(e, point: Mapping) -> float:
    """Float value with ln/exp/pow interpreted through math.*."""
    e = as_expr(e)

    def gen_value(g):
        if isinstance(g, Atom):
            arg = eval_float(g.arg, point)
            if g.head == "ln":
                return math.log(arg)
            if g.head == "exp":
                return math.exp(arg)
            return arg ** eval_float(g.expo, point)
        try:
            return float(point[g])
        except KeyError:
            raise ExprError("no value for generator %r" % g)

    def poly(part):
        total = 0.0
        for mono, coeff in part:
            term = float(coeff)
            for g, ex in mono:
                term *= gen_value(g) ** ex
            total += term
        return total

    den = poly(e.dt)
    if den == 0.0:
        raise ZeroDivisionError("denominator vanishes at the sample point")
    return poly(e.nt) / den


def random_fraction(rng, span: int = 7) -> Fraction:
    num = rng.randint(-span, span)
    den = rng.randint(1, 4)
    return Fraction(num, den)


def random_point(generators, rng, span: int = 7, avoid_zero=()) -> dict:
    """Random rational assignment for the given generators; entries named
    in avoid_zero are resampled until nonzero."""
    point = {}
    for g in generators:
        val = random_fraction(rng, span)
        while g in avoid_zero and val == 0:
            val = random_fraction(rng, span)
        point[g] = val
    return point
