"""Finite-field hypergeometric series built from character binomials.

With characters indexed mod q-1, the series with top indices (a_0 .. a_n),
bottom indices (b_1 .. b_n) and argument x is

    q/(q-1) * sum over l of
        binom(T^(a_0+l), T^l)
        * prod_i binom(T^(a_i+l), T^(b_i+l))
        * T^l(x).

Each binomial factor, as a function of l, is evaluated in one vectorized
pass from the field's cached Gauss table: when a_i - b_i is nonzero mod q-1
the Jacobi-sum factorization applies uniformly in l, and when it is zero the
factor is the constant -1/q except at the single l where the top character
degenerates to the trivial one (value (q-2)/q there).

The (n+1)F(n) evaluator and the dedicated 2F1 evaluator share this code
path; the 2F1 route additionally caches its weight vector per parameter
triple so that sweeping many arguments over one field costs O(q) each.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .characters import unit_roots
from .charsums import gauss_sum_table
from .fields import Field


def binomial_sequence(field: Field, top: int, bottom: int) -> np.ndarray:
    """binom(T^(top+l), T^(bottom+l)) for l = 0 .. q-2, as one array."""
    n = field.q - 1
    q = field.q
    diff = (top - bottom) % n
    l = np.arange(n, dtype=np.int64)
    if diff == 0:
        seq = np.full(n, -1.0 / q, dtype=np.complex128)
        seq[(-top) % n] = (q - 2) / q
        return seq
    g = gauss_sum_table(field).values
    signs = np.where((bottom + l) % 2 == 0, 1.0, -1.0)
    return signs / q * g[(top + l) % n] * g[(-(bottom + l)) % n] / g[diff]


def _series_value(field: Field, weights: np.ndarray, x: int) -> complex:
    if x == 0:
        return 0j
    n = field.q - 1
    l = np.arange(n, dtype=np.int64)
    chi_x = unit_roots(field)[l * field.dlog(x) % n]
    return complex(field.q / n * (weights @ chi_x))


def hyper_npfn(field: Field, top: tuple[int, ...], bottom: tuple[int, ...], x: int) -> complex:
    """General (n+1)F(n) value; ``top`` must be one index longer than ``bottom``."""
    if len(top) != len(bottom) + 1 or not top:
        raise ValueError("need n+1 top indices and n bottom indices, n >= 0")
    weights = binomial_sequence(field, top[0], 0)
    for t, b in zip(top[1:], bottom):
        weights = weights * binomial_sequence(field, t, b)
    return _series_value(field, weights, x)


def hyper_2f1(field: Field, a: int, b: int, c: int, x: int) -> complex:
    """2F1(T^a, T^b; T^c | x) with the weight vector cached per (a, b, c)."""
    n = field.q - 1
    key = ("2f1", a % n, b % n, c % n)
    weights = field._cache.get(key)
    if weights is None:
        weights = binomial_sequence(field, a, 0) * binomial_sequence(field, b, c)
        weights.setflags(write=False)
        field._cache[key] = weights
    return _series_value(field, weights, x)


@dataclass(frozen=True)
class HyperSeries:
    """An (n+1)F(n) series with reduced character indices and its argument."""

    top: tuple[int, ...]
    bottom: tuple[int, ...]
    argument: int

    def __post_init__(self):
        if len(self.top) != len(self.bottom) + 1 or not self.top:
            raise ValueError("need n+1 top indices and n bottom indices")

    def evaluate(self, field: Field) -> complex:
        return hyper_npfn(field, self.top, self.bottom, self.argument)
