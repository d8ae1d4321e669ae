"""Complex character evaluation on F_q.

The canonical additive character sends x to zeta_p^trace(x) with
zeta_p = exp(2*pi*i/p).  Multiplicative characters form a cyclic group of
order q - 1 indexed by integers m mod q - 1: the character with index m
sends the field generator g to omega^m, omega = exp(2*pi*i/(q-1)), so its
value at x is omega^(m * dlog(x)).  Every character (including the trivial
one, index 0) takes the value 0 at x = 0.

Character values therefore depend on the generator baked into the Field;
quantities meant to be generator independent are checked for that property
elsewhere, not assumed here.
"""

from __future__ import annotations

import numpy as np

from .errors import WrongCongruence
from .fields import Field


def unit_roots(field: Field) -> np.ndarray:
    """omega^k for k = 0 .. q-2, cached on the field."""
    cached = field._cache.get("unit_roots")
    if cached is None:
        n = field.q - 1
        cached = np.exp(2j * np.pi * np.arange(n) / n)
        field._cache["unit_roots"] = cached
    return cached


def theta_values(field: Field) -> np.ndarray:
    """Additive character values theta(x) for every element index x, cached."""
    cached = field._cache.get("theta_values")
    if cached is None:
        zeta = np.exp(2j * np.pi * np.arange(field.p) / field.p)
        cached = zeta[field.trace_table]
        field._cache["theta_values"] = cached
    return cached


def additive_char(field: Field, x: int) -> complex:
    return complex(theta_values(field)[x])


def mult_char(field: Field, m: int, x: int) -> complex:
    """Value at x of the multiplicative character with index m (0 at x = 0)."""
    if x == 0:
        return 0j
    n = field.q - 1
    return complex(unit_roots(field)[m * field.dlog(x) % n])


def char_at_minus_one(m: int) -> int:
    """Exact value of the index-m character at -1, which is (-1)^m."""
    return -1 if m & 1 else 1


def quadratic_index(field: Field) -> int:
    """Index of the order-2 character."""
    return (field.q - 1) // 2


def quartic_pair(field: Field) -> tuple[int, int]:
    """Indices of the two order-4 characters (inverse of each other)."""
    if field.q % 4 != 1:
        raise WrongCongruence(f"q = {field.q} is not 1 mod 4")
    n = field.q - 1
    return n // 4, 3 * n // 4


def sextic_pair(field: Field) -> tuple[int, int]:
    """Indices of the two order-6 characters (inverse of each other)."""
    if field.q % 6 != 1:
        raise WrongCongruence(f"q = {field.q} is not 1 mod 6")
    n = field.q - 1
    return n // 6, 5 * n // 6


def char_sum_over_x_residual(field: Field, n: int) -> float:
    """|sum_x T^n(x) - expected|: the sum is q-1 for n = 0, else 0."""
    m = field.q - 1
    computed = unit_roots(field)[n % m * np.arange(m) % m].sum()
    expected = m if n % m == 0 else 0
    return abs(computed - expected)


def char_sum_over_n_residual(field: Field, x: int) -> float:
    """|sum_n T^n(x) - expected|: q-1 at x = 1, else 0 (a zero sum at x = 0)."""
    m = field.q - 1
    if x == 0:
        return 0.0
    computed = unit_roots(field)[np.arange(m) * field.dlog(x) % m].sum()
    expected = m if x == 1 else 0
    return abs(computed - expected)


def delta_sum_residual(field: Field, v: int) -> float:
    """|sum_z theta(z v) - expected|: the sum is q at v = 0, else 0."""
    computed = theta_values(field)[field.vec_mul(field.elements(), v)].sum()
    expected = field.q if v == 0 else 0
    return abs(computed - expected)


_ORTHOGONALITY_KINDS = {
    "char_sum_over_x": char_sum_over_x_residual,
    "char_sum_over_n": char_sum_over_n_residual,
    "delta_identity": delta_sum_residual,
}


def check_orthogonality(field: Field, kind: str, param: int) -> float:
    """Residual of one orthogonality identity; see the kind-specific helpers."""
    try:
        fn = _ORTHOGONALITY_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown orthogonality kind {kind!r}") from None
    return fn(field, param)
