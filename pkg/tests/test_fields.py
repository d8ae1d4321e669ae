from __future__ import annotations

import numpy as np
import pytest

from ffhyper import InvalidFieldParameters, NoDiscreteLog, build_field, prime_powers, primitive_elements
from ffhyper.fields import factorize, is_prime

SMALL_Q = [(5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2), (3, 3), (7, 2), (3, 4), (11, 2)]


def test_build_field_examples():
    f7 = build_field(7)
    assert (f7.q, f7.e, f7.modulus, f7.generator) == (7, 1, None, 3)

    f9 = build_field(3, 2)
    assert f9.modulus == (1, 0)  # x^2 + 1
    assert f9.generator == 4  # alpha + 1
    # alpha + 1 really has order 8
    orders = {j for j in range(1, 9) if f9.pow(4, j) == 1}
    assert min(orders) == 8

    assert build_field(5).generator == 2


def test_build_field_rejects_bad_parameters():
    with pytest.raises(InvalidFieldParameters):
        build_field(4)
    with pytest.raises(InvalidFieldParameters):
        build_field(2, 3)
    with pytest.raises(InvalidFieldParameters):
        build_field(3, 1)  # q = 3 < 5
    with pytest.raises(InvalidFieldParameters):
        build_field(3, 12, max_q=200_000)  # 531441 over the cap
    with pytest.raises(InvalidFieldParameters):
        build_field(7, 1, generator=2)  # order 3, not a generator


def test_modulus_is_deterministic_and_irreducible():
    for p, e in [(3, 2), (3, 3), (5, 2), (7, 2), (3, 4), (5, 3)]:
        f1 = build_field(p, e)
        f2 = build_field(p, e)
        assert f1.modulus == f2.modulus
        # no roots in the base field
        for r in range(p):
            acc = 1
            for c in reversed(f1.modulus):
                acc = (acc * r + c) % p
            assert acc != 0


def test_scalar_arithmetic_examples():
    f7 = build_field(7)
    assert f7.inv(3) == 5
    assert f7.mul(3, 5) == 1
    f9 = build_field(3, 2)
    assert f9.mul(3, 3) == 2  # alpha * alpha = -1
    f5 = build_field(5)
    assert f5.pow(2, 4) == 1


@pytest.mark.parametrize("p,e", SMALL_Q)
def test_field_axioms_exhaustive(p, e):
    f = build_field(p, e)
    q = f.q
    xs = f.elements()
    # exp/log tables are inverse bijections
    assert sorted(int(v) for v in f.exp_table) == list(range(1, q))
    assert all(f.exp_table[f.log_table[x]] == x for x in range(1, q))
    # additive and multiplicative structure on a subgrid
    sample = range(q) if q <= 30 else range(0, q, max(q // 23, 1))
    for x in sample:
        assert f.add(x, f.neg(x)) == 0
        if x:
            assert f.mul(x, f.inv(x)) == 1
        for y in sample:
            assert f.add(x, y) == f.add(y, x)
            assert f.mul(x, y) == f.mul(y, x)
    # distributivity, vectorized over all pairs with a fixed z
    z = f.generator
    lhs = f.vec_mul(f.vec_add(xs[:, None], xs[None, :]), z)
    rhs = f.vec_add(f.vec_mul(xs[:, None], z), f.vec_mul(xs[None, :], z))
    assert (lhs == rhs).all()


@pytest.mark.parametrize("p,e", SMALL_Q)
def test_trace_is_additive_and_frobenius_stable(p, e):
    f = build_field(p, e)
    xs = f.elements()
    tr = f.trace_table
    assert ((tr >= 0) & (tr < p)).all()
    # trace(x + y) = trace(x) + trace(y) mod p
    total = tr[f.vec_add(xs[:, None], xs[None, :])]
    assert (total == (tr[:, None] + tr[None, :]) % p).all()
    # trace(x^p) = trace(x)
    assert (tr[f.vec_pow(xs, p)] == tr).all()
    # trace of a prime-subfield element c is e * c
    for c in range(p):
        assert f.trace(c) == (e * c) % p


def test_trace_examples_q9():
    f9 = build_field(3, 2)
    assert f9.trace(1) == 2
    assert f9.trace(3) == 0  # alpha + alpha^3 = 0 since alpha^2 = -1


@pytest.mark.parametrize("p,e", SMALL_Q)
def test_sqrt_structure(p, e):
    f = build_field(p, e)
    squares = 0
    for x in range(f.q):
        roots = f.sqrt(x)
        for r in roots:
            assert f.mul(r, r) == x
        if roots:
            squares += 1
        if len(roots) == 2:
            assert roots[0] < roots[1]
            assert roots[1] == f.neg(roots[0])
    assert squares == (f.q + 1) // 2  # zero plus half the units


def test_sqrt_examples():
    f7 = build_field(7)
    assert f7.sqrt(2) == (3, 4)
    assert f7.sqrt(3) == ()
    assert f7.sqrt(0) == (0,)


def test_cubic_roots_examples():
    f5 = build_field(5)
    assert f5.cubic_roots(1, 0) == [0, 2, 3]
    f7 = build_field(7)
    assert f7.cubic_roots(0, f7.neg(1)) == [1, 2, 4]
    assert f7.cubic_roots(1, 1) == []


@pytest.mark.parametrize("p,e", SMALL_Q)
def test_cubic_roots_resubstitute(p, e):
    f = build_field(p, e)
    rng = np.random.default_rng(7)
    for _ in range(8):
        a, b = int(rng.integers(f.q)), int(rng.integers(f.q))
        roots = f.cubic_roots(a, b)
        assert roots == sorted(roots)
        for r in roots:
            assert f.add(f.add(f.pow(r, 3), f.mul(a, r)), b) == 0


def test_dlog_examples_and_zero():
    f7 = build_field(7)
    assert f7.dlog(6) == 3
    with pytest.raises(NoDiscreteLog):
        f7.dlog(0)
    with pytest.raises(ZeroDivisionError):
        f7.inv(0)


def test_element_text_round_trip():
    f9 = build_field(3, 2)
    assert f9.parse_element("2,1") == 5
    assert f9.format_element(5) == "2,1"
    assert f9.parse_element("2") == 2  # short form pads high digits
    f7 = build_field(7)
    assert f7.parse_element("6") == 6
    for bad in ["7", "-1", "1,2"]:
        with pytest.raises(ValueError):
            f7.parse_element(bad)
    with pytest.raises(ValueError):
        f9.parse_element("3,0")
    for f in (f7, f9):
        for x in range(f.q):
            assert f.parse_element(f.format_element(x)) == x


def test_generator_override_and_primitive_elements():
    f7 = build_field(7)
    assert primitive_elements(f7, 2) == [3, 5]
    alt = build_field(7, generator=5)
    assert alt.generator == 5
    assert sorted(int(v) for v in alt.exp_table) == list(range(1, 7))
    # same field contents, different log tables
    assert alt.mul(3, 5) == 1


def test_prime_powers_enumeration():
    mod6 = [q for _, _, q in prime_powers(5, 100, 6)]
    assert mod6 == [7, 13, 19, 25, 31, 37, 43, 49, 61, 67, 73, 79, 97]
    mod4 = [q for _, _, q in prime_powers(5, 60, 4)]
    assert mod4 == [5, 9, 13, 17, 25, 29, 37, 41, 49, 53]
    allq = [q for _, _, q in prime_powers(5, 30)]
    assert allq == [5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29]
    assert prime_powers(50, 10) == []


def test_int_helpers():
    assert [n for n in range(60) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert factorize(97) == {97: 1}
