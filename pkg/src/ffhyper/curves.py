"""Elliptic-curve point counts over F_q and hypergeometric trace formulas.

Curves are cubics y^2 = x^3 + c2 x^2 + c1 x + c0.  The trace of Frobenius
is a_q = q + 1 - #E(F_q), with the point at infinity included in the count.
``trace_naive`` gets it exactly by summing quadratic-character signs of the
cubic's values; the formula routes express a_q through a 2F1 value:

  thm_3_1  y^2 = x^3 + c x^2 + d, q = 1 mod 6, c != 0:
           a_q = -q * chi2(-3c) * 2F1(order-6 pair; eps | -27 d / (4 c^3))

  thm_3_2  y^2 = x^3 + f x^2 + g x, q = 1 mod 4, f != 0:
           a_q = -q * chi2(2f) * chi4(-1) * 2F1(order-4 pair; eps | 4 g / f^2)

  thm_1_1  y^2 = x^3 + a x + b, q = 1 mod 6, a != 0, -a/3 a square:
           with 3 k^2 + a = 0,
           a_q = -q * chi2(-k) * 2F1(order-6 pair; eps | -(k^3+ak+b)/(4k^3))

  thm_1_2  y^2 = x^3 + a x + b, q = 1 mod 4, q != 9, some root h != 0 of
           the cubic:
           a_q = -q * chi2(6h) * chi4(-1) * 2F1(order-4 pair; eps |
           (12 h^2 + 4 a) / (9 h^2))

The two short-Weierstrass routes each admit an equivalent evaluation by
shifting x so the curve lands in the matching special shape; ``via="shift"``
takes that road instead, and both roads must round to the same integer.

Every complex-valued route passes through one rounding contract: the
imaginary part must stay below 1e-6 * q, the real part within 0.4 of an
integer, and the rounded trace inside the Hasse bound |a| <= 2 sqrt(q);
otherwise PrecisionFailure is raised rather than a trace reported.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .characters import char_at_minus_one, quartic_pair, sextic_pair
from .errors import (
    CharacteristicThree,
    ExcludedQ,
    NoNonzeroRoot,
    NonResidue,
    PrecisionFailure,
    Singular,
    WrongCongruence,
    ZeroCoefficient,
)
from .fields import Field
from .hypergeo import hyper_2f1

IMAG_TOL_COEFF = 1e-6  # allowed |Im raw| is IMAG_TOL_COEFF * q
ROUND_MARGIN = 0.4  # allowed distance from Re raw to the nearest integer


@dataclass(frozen=True)
class CurveSpec:
    """y^2 = x^3 + c2 x^2 + c1 x + c0 with a shape tag for reporting."""

    shape: str
    c2: int
    c1: int
    c0: int

    @classmethod
    def short(cls, a: int, b: int) -> "CurveSpec":
        return cls("short", 0, a, b)

    @classmethod
    def e1(cls, c: int, d: int) -> "CurveSpec":
        return cls("e1", c, 0, d)

    @classmethod
    def e2(cls, f: int, g: int) -> "CurveSpec":
        return cls("e2", f, g, 0)

    @classmethod
    def general(cls, c2: int, c1: int, c0: int) -> "CurveSpec":
        return cls("general", c2, c1, c0)

    def named_coeffs(self, field: Field) -> dict[str, str]:
        fmt = field.format_element
        if self.shape == "short":
            return {"a": fmt(self.c1), "b": fmt(self.c0)}
        if self.shape == "e1":
            return {"c": fmt(self.c2), "d": fmt(self.c0)}
        if self.shape == "e2":
            return {"f": fmt(self.c2), "g": fmt(self.c1)}
        return {"c2": fmt(self.c2), "c1": fmt(self.c1), "c0": fmt(self.c0)}


@dataclass(frozen=True)
class TraceReport:
    curve: CurveSpec
    method: str
    raw: complex
    trace: int
    residual_to_integer: float
    imag_residual: float
    auxiliary: dict
    flags: tuple[str, ...]


def cubic_discriminant(field: Field, c2: int, c1: int, c0: int) -> int:
    """Discriminant of x^3 + c2 x^2 + c1 x + c0 as a field element."""
    m, a, p3 = field.mul, field.add, field.pow
    fi = field.from_int
    t1 = m(fi(18), m(c2, m(c1, c0)))
    t2 = m(fi(4), m(p3(c2, 3), c0))
    t3 = m(p3(c2, 2), p3(c1, 2))
    t4 = m(fi(4), p3(c1, 3))
    t5 = m(fi(27), p3(c0, 2))
    return a(a(t1, field.neg(t2)), a(t3, field.neg(a(t4, t5))))


def is_singular(field: Field, curve: CurveSpec) -> bool:
    return cubic_discriminant(field, curve.c2, curve.c1, curve.c0) == 0


def _rhs_values(field: Field, curve: CurveSpec) -> np.ndarray:
    xs = field.elements()
    acc = field.vec_add(xs, curve.c2)
    acc = field.vec_add(field.vec_mul(acc, xs), curve.c1)
    return field.vec_add(field.vec_mul(acc, xs), curve.c0)


def count_points(field: Field, curve: CurveSpec) -> int:
    """#E(F_q) including the point at infinity, by exact character signs."""
    signs = field.quadratic_signs()[_rhs_values(field, curve)]
    return field.q + 1 + int(signs.sum(dtype=np.int64))


def _finish(field: Field, curve: CurveSpec, method: str, raw: complex,
            auxiliary: dict, flags: tuple[str, ...] = ()) -> TraceReport:
    imag = abs(raw.imag)
    if imag >= IMAG_TOL_COEFF * field.q:
        raise PrecisionFailure(
            f"imaginary part {imag:g} too large for q={field.q} ({method})")
    trace = round(raw.real)
    resid = abs(raw.real - trace)
    if resid >= ROUND_MARGIN:
        raise PrecisionFailure(
            f"real part {raw.real:g} is {resid:g} from an integer ({method})")
    if "singular" not in flags and trace * trace > 4 * field.q:
        raise PrecisionFailure(
            f"rounded trace {trace} violates the Hasse bound at q={field.q}")
    return TraceReport(curve, method, raw, trace, resid, imag, auxiliary, flags)


def trace_naive(field: Field, curve: CurveSpec) -> TraceReport:
    """Exact trace from the point count; works for singular cubics too."""
    trace = field.q + 1 - count_points(field, curve)
    flags = ("singular",) if is_singular(field, curve) else ()
    return _finish(field, curve, "naive", complex(trace), {}, flags)


def shift_substitution(field: Field, a: int, b: int, r: int) -> CurveSpec:
    """Image of y^2 = x^3 + a x + b under x -> x + r, as a general cubic.

    The new coefficients are (3r, 3r^2 + a, r^3 + a r + b); the point count
    and the discriminant are unchanged.
    """
    c2 = field.mul(field.from_int(3), r)
    c1 = field.add(field.mul(field.from_int(3), field.pow(r, 2)), a)
    c0 = field.add(field.add(field.pow(r, 3), field.mul(a, r)), b)
    return CurveSpec.general(c2, c1, c0)


def _quadratic_sign(field: Field, x: int) -> int:
    return int(field.quadratic_signs()[x])


def trace_e1(field: Field, c: int, d: int) -> TraceReport:
    """Trace of y^2 = x^3 + c x^2 + d via the order-6 character pair."""
    if field.q % 6 != 1:
        raise WrongCongruence(f"q = {field.q} is not 1 mod 6")
    if c == 0:
        raise ZeroCoefficient("c")
    curve = CurveSpec.e1(c, d)
    if is_singular(field, curve):
        raise Singular(f"d (4c^3 + 27d) = 0 at (c, d) = ({c}, {d})")
    sign = _quadratic_sign(field, field.neg(field.mul(field.from_int(3), c)))
    arg = field.div(field.neg(field.mul(field.from_int(27), d)),
                    field.mul(field.from_int(4), field.pow(c, 3)))
    s, s_conj = sextic_pair(field)
    raw = -field.q * sign * hyper_2f1(field, s, s_conj, 0, arg)
    return _finish(field, curve, "thm_3_1", raw,
                   {"argument": field.format_element(arg)})


def trace_e2(field: Field, f: int, g: int) -> TraceReport:
    """Trace of y^2 = x^3 + f x^2 + g x via the order-4 character pair."""
    if field.q % 4 != 1:
        raise WrongCongruence(f"q = {field.q} is not 1 mod 4")
    if f == 0:
        raise ZeroCoefficient("f")
    curve = CurveSpec.e2(f, g)
    if is_singular(field, curve):
        raise Singular(f"g (f^2 - 4g) = 0 at (f, g) = ({f}, {g})")
    sign2 = _quadratic_sign(field, field.mul(field.from_int(2), f))
    sign4 = char_at_minus_one((field.q - 1) // 4)  # order-4 character at -1
    arg = field.div(field.mul(field.from_int(4), g), field.pow(f, 2))
    s, s_conj = quartic_pair(field)
    raw = -field.q * sign2 * sign4 * hyper_2f1(field, s, s_conj, 0, arg)
    return _finish(field, curve, "thm_3_2", raw,
                   {"argument": field.format_element(arg)})


def _rhs_at(field: Field, a: int, b: int, x: int) -> int:
    return field.add(field.add(field.pow(x, 3), field.mul(a, x)), b)


def _agree_or_fail(reports: list[TraceReport], what: str) -> None:
    traces = {r.trace for r in reports}
    if len(traces) > 1:
        raise PrecisionFailure(f"{what} choices disagree: {sorted(traces)}")


def trace_short_sextic(field: Field, a: int, b: int, *, via: str = "direct") -> TraceReport:
    """Trace of y^2 = x^3 + a x + b for q = 1 mod 6, through a shift root k.

    Needs a != 0 and -a/3 a square; k runs over both roots of 3k^2 + a = 0
    and the two evaluations must agree.  ``via="shift"`` rewrites the curve
    with x -> x + k and reuses the x^2-shape formula instead of the direct
    expression; the two roads compute identical field data.
    """
    if via not in ("direct", "shift"):
        raise ValueError(f"unknown route {via!r}")
    if field.q % 6 != 1:
        raise WrongCongruence(f"q = {field.q} is not 1 mod 6")
    if a == 0:
        raise ZeroCoefficient("a")
    target = field.neg(field.div(a, field.from_int(3)))  # k^2 = -a/3
    ks = field.sqrt(target)
    if not ks:
        raise NonResidue(f"-a/3 = {field.format_element(target)} is not a square")
    curve = CurveSpec.short(a, b)
    if is_singular(field, curve):
        raise Singular(f"4a^3 + 27b^2 = 0 at (a, b) = ({a}, {b})")
    s, s_conj = sextic_pair(field)
    reports = []
    for k in ks:
        if via == "shift":
            shifted = shift_substitution(field, a, b, k)
            inner = trace_e1(field, shifted.c2, shifted.c0)
            raw = inner.raw
        else:
            sign = _quadratic_sign(field, field.neg(k))
            arg = field.div(field.neg(_rhs_at(field, a, b, k)),
                            field.mul(field.from_int(4), field.pow(k, 3)))
            raw = -field.q * sign * hyper_2f1(field, s, s_conj, 0, arg)
        aux = {"via": via, "k": field.format_element(k),
               "k_candidates": ";".join(field.format_element(r) for r in ks)}
        reports.append(_finish(field, curve, "thm_1_1", raw, aux))
    _agree_or_fail(reports, "shift root")
    return reports[0]


def trace_short_quartic(field: Field, a: int, b: int, *, via: str = "direct") -> TraceReport:
    """Trace of y^2 = x^3 + a x + b for q = 1 mod 4, through a cubic root h.

    Needs a nonzero root h of the cubic; all such roots are evaluated and
    must agree.  q = 9 is excluded outright, and other characteristic-3
    fields are refused because the formula divides by 9 h^2.
    """
    if via not in ("direct", "shift"):
        raise ValueError(f"unknown route {via!r}")
    if field.q % 4 != 1:
        raise WrongCongruence(f"q = {field.q} is not 1 mod 4")
    if field.q == 9:
        raise ExcludedQ("q = 9 is excluded")
    if field.p == 3:
        raise CharacteristicThree("the formula divides by 9 h^2")
    hs = [h for h in field.cubic_roots(a, b) if h != 0]
    if not hs:
        raise NoNonzeroRoot("x^3 + a x + b has no nonzero root")
    curve = CurveSpec.short(a, b)
    if is_singular(field, curve):
        raise Singular(f"4a^3 + 27b^2 = 0 at (a, b) = ({a}, {b})")
    s, s_conj = quartic_pair(field)
    sign4 = char_at_minus_one((field.q - 1) // 4)
    reports = []
    for h in hs:
        if via == "shift":
            shifted = shift_substitution(field, a, b, h)
            inner = trace_e2(field, shifted.c2, shifted.c1)
            raw = inner.raw
        else:
            sign2 = _quadratic_sign(field, field.mul(field.from_int(6), h))
            h2 = field.pow(h, 2)
            num = field.add(field.mul(field.from_int(12), h2),
                            field.mul(field.from_int(4), a))
            arg = field.div(num, field.mul(field.from_int(9), h2))
            raw = -field.q * sign2 * sign4 * hyper_2f1(field, s, s_conj, 0, arg)
        aux = {"via": via, "h": field.format_element(h),
               "h_candidates": ";".join(field.format_element(r) for r in hs)}
        reports.append(_finish(field, curve, "thm_1_2", raw, aux))
    _agree_or_fail(reports, "cubic root")
    return reports[0]
