from __future__ import annotations

import pytest

from ffhyper import (
    CharacteristicThree,
    ExcludedQ,
    NoNonzeroRoot,
    NonResidue,
    NotApplicable,
    Singular,
    WrongCongruence,
    ZeroCoefficient,
    build_field,
    prime_powers,
    primitive_elements,
)
from ffhyper.curves import (
    CurveSpec,
    count_points,
    cubic_discriminant,
    is_singular,
    shift_substitution,
    trace_e1,
    trace_e2,
    trace_naive,
    trace_short_quartic,
    trace_short_sextic,
)

from oracles import oracle_count_points


def test_count_points_examples():
    f5 = build_field(5)
    assert count_points(f5, CurveSpec.short(1, 0)) == 4
    assert count_points(f5, CurveSpec.short(2, 1)) == 7
    f7 = build_field(7)
    assert count_points(f7, CurveSpec.short(0, 1)) == 12
    assert count_points(f7, CurveSpec.e1(1, 1)) == 11


def test_count_points_matches_enumeration_oracle():
    for p, e in [(5, 1), (7, 1), (3, 2), (13, 1), (5, 2)]:
        f = build_field(p, e)
        cases = [(0, 1, 0), (0, 0, 1), (1, 0, 1), (2, 3, 4), (1, 1, 1), (0, 2, 1)]
        for c2, c1, c0 in cases:
            assert count_points(f, CurveSpec.general(c2, c1, c0)) == \
                oracle_count_points(f, c2, c1, c0)


def test_trace_naive_examples():
    f5 = build_field(5)
    rep = trace_naive(f5, CurveSpec.short(1, 0))
    assert (rep.trace, rep.raw, rep.residual_to_integer, rep.imag_residual) == (2, 2 + 0j, 0.0, 0.0)
    assert rep.flags == ()
    f13 = build_field(13)
    assert trace_naive(f13, CurveSpec.e1(2, 1)).trace == 0
    assert trace_naive(f13, CurveSpec.short(10, 3)).trace == -2
    assert trace_naive(f13, CurveSpec.short(1, 1)).trace == -4


def test_trace_naive_flags_singular():
    f7 = build_field(7)
    rep = trace_naive(f7, CurveSpec.short(0, 0))  # y^2 = x^3, a cusp
    assert rep.flags == ("singular",)
    assert rep.trace == 7 + 1 - count_points(f7, CurveSpec.short(0, 0))


def test_discriminant_matches_shape_formulas():
    for p, e in [(7, 1), (13, 1), (3, 2), (5, 2)]:
        f = build_field(p, e)
        fi = f.from_int
        for u in range(0, f.q, max(f.q // 11, 1)):
            for v in range(0, f.q, max(f.q // 13, 1)):
                # short: -(4a^3 + 27b^2)
                want = f.neg(f.add(f.mul(fi(4), f.pow(u, 3)), f.mul(fi(27), f.pow(v, 2))))
                assert cubic_discriminant(f, 0, u, v) == want
                # x^2-shape: -d(4c^3 + 27d)
                want = f.neg(f.mul(v, f.add(f.mul(fi(4), f.pow(u, 3)), f.mul(fi(27), v))))
                assert cubic_discriminant(f, u, 0, v) == want
                # x-shape: g^2 (f^2 - 4g)
                want = f.mul(f.pow(v, 2), f.sub(f.pow(u, 2), f.mul(fi(4), v)))
                assert cubic_discriminant(f, u, v, 0) == want


def test_shift_substitution_example_and_invariants():
    f5 = build_field(5)
    sh = shift_substitution(f5, 1, 0, 2)
    assert (sh.shape, sh.c2, sh.c1, sh.c0) == ("general", 1, 3, 0)
    for p, e in [(5, 1), (13, 1), (3, 2)]:
        f = build_field(p, e)
        for a, b, r in [(1, 0, 2), (3, 1, 1), (0, 1, 4), (2, 2, 3)]:
            sh = shift_substitution(f, a, b, r)
            short = CurveSpec.short(a, b)
            assert count_points(f, sh) == count_points(f, short)
            assert is_singular(f, sh) == is_singular(f, short)


def test_trace_e1_examples():
    f7 = build_field(7)
    rep = trace_e1(f7, 1, 1)
    assert rep.trace == -3
    assert rep.method == "thm_3_1"
    assert rep.imag_residual < 1e-6 * 7 and rep.residual_to_integer < 1e-4
    f13 = build_field(13)
    assert trace_e1(f13, 2, 1).trace == 0


def test_trace_e1_preconditions():
    f7 = build_field(7)
    with pytest.raises(ZeroCoefficient) as err:
        trace_e1(f7, 0, 1)
    assert err.value.reason == "zero_c"
    with pytest.raises(Singular):
        trace_e1(f7, 1, 0)
    f11 = build_field(11)
    with pytest.raises(WrongCongruence):
        trace_e1(f11, 1, 1)


def test_trace_e2_examples_and_preconditions():
    f5 = build_field(5)
    assert trace_e2(f5, 1, 3).trace == 2
    assert trace_e2(f5, 1, 3).method == "thm_3_2"
    with pytest.raises(ZeroCoefficient) as err:
        trace_e2(f5, 0, 1)
    assert err.value.reason == "zero_f"
    with pytest.raises(Singular):
        trace_e2(f5, 1, 0)
    with pytest.raises(Singular):
        trace_e2(f5, 2, 1)  # f^2 = 4g
    f7 = build_field(7)
    with pytest.raises(WrongCongruence):
        trace_e2(f7, 1, 1)


def test_trace_short_sextic_examples():
    f13 = build_field(13)
    rep = trace_short_sextic(f13, 10, 3)
    assert rep.trace == -2
    assert rep.auxiliary["k"] == "1"
    assert rep.auxiliary["k_candidates"] == "1;12"  # both roots of 3k^2 + a
    assert rep.method == "thm_1_1"
    sh = trace_short_sextic(f13, 10, 3, via="shift")
    assert sh.raw == rep.raw  # identical data flows through both routes


def test_trace_short_sextic_preconditions():
    f13 = build_field(13)
    with pytest.raises(ZeroCoefficient) as err:
        trace_short_sextic(f13, 0, 1)
    assert err.value.reason == "zero_a"
    f7 = build_field(7)
    with pytest.raises(NonResidue):
        trace_short_sextic(f7, 3, 1)  # -a/3 = 6, not a square mod 7
    f11 = build_field(11)
    with pytest.raises(WrongCongruence):
        trace_short_sextic(f11, 1, 1)
    # singular: a = -3, b = 2 gives 4a^3 + 27b^2 = 0 and -a/3 = 1 a square
    with pytest.raises(Singular):
        trace_short_sextic(f13, f13.neg(3), 2)


def test_trace_short_quartic_examples():
    f13 = build_field(13)
    rep = trace_short_quartic(f13, 1, 1)
    assert rep.trace == -4
    assert rep.auxiliary["h"] == "7"
    f5 = build_field(5)
    rep = trace_short_quartic(f5, 1, 0)
    assert rep.trace == 2
    assert rep.auxiliary["h_candidates"] == "2;3"
    assert trace_short_quartic(f5, 1, 0, via="shift").raw == rep.raw


def test_trace_short_quartic_preconditions():
    f7 = build_field(7)
    with pytest.raises(WrongCongruence):
        trace_short_quartic(f7, 1, 0)
    f9 = build_field(3, 2)
    with pytest.raises(ExcludedQ):
        trace_short_quartic(f9, 1, 0)
    f81 = build_field(3, 4)
    with pytest.raises(CharacteristicThree):
        trace_short_quartic(f81, 1, 0)
    f13 = build_field(13)
    with pytest.raises(NoNonzeroRoot):
        trace_short_quartic(f13, 2, 0)  # x^3 + 2x: -2 is not a square mod 13
    with pytest.raises(Singular):
        trace_short_quartic(f13, 1, 3)  # (x-2)^2 (x+4): repeated nonzero root


@pytest.mark.parametrize("p,e,q", prime_powers(5, 31, 6))
def test_mod6_formulas_exhaustive_small(p, e, q):
    f = build_field(p, e)
    for c in range(1, q):
        for d in range(1, q):
            try:
                rep = trace_e1(f, c, d)
            except NotApplicable:
                continue
            assert rep.trace == trace_naive(f, CurveSpec.e1(c, d)).trace
    for a in range(1, q):
        for b in range(q):
            try:
                rep = trace_short_sextic(f, a, b)
            except NotApplicable:
                continue
            assert rep.trace == trace_naive(f, CurveSpec.short(a, b)).trace
            assert trace_short_sextic(f, a, b, via="shift").trace == rep.trace


@pytest.mark.parametrize("p,e,q", prime_powers(5, 29, 4))
def test_mod4_formulas_exhaustive_small(p, e, q):
    f = build_field(p, e)
    for fc in range(1, q):
        for g in range(1, q):
            try:
                rep = trace_e2(f, fc, g)
            except NotApplicable:
                continue
            assert rep.trace == trace_naive(f, CurveSpec.e2(fc, g)).trace
    for a in range(q):
        for b in range(q):
            try:
                rep = trace_short_quartic(f, a, b)
            except NotApplicable:
                continue
            assert rep.trace == trace_naive(f, CurveSpec.short(a, b)).trace
            assert trace_short_quartic(f, a, b, via="shift").trace == rep.trace


def test_trace_respects_generator_choice():
    for p, e in [(13, 1), (5, 2), (3, 2)]:
        f1 = build_field(p, e)
        g2 = primitive_elements(f1, 2)[1]
        f2 = build_field(p, e, generator=g2)
        assert f1.generator != f2.generator
        cases = [(1, 2), (2, 3), (4, 1)]
        for c, d in cases:
            try:
                t1 = trace_e1(f1, c, d).trace
                t2 = trace_e1(f2, c, d).trace
            except NotApplicable:
                continue
            assert t1 == t2


def test_hasse_bound_on_reported_traces():
    for p, e, q in prime_powers(5, 49):
        f = build_field(p, e)
        for a in range(1, q, max(q // 7, 1)):
            for b in range(0, q, max(q // 7, 1)):
                curve = CurveSpec.short(a, b)
                rep = trace_naive(f, curve)
                if "singular" not in rep.flags:
                    assert rep.trace * rep.trace <= 4 * q
