"""Gauss sums, Jacobi sums, and the character binomial coefficient.

The Gauss sum for character index m is

    G_m = sum over x != 0 of T^m(x) * theta(x)
        = sum over j of omega^(m j) * theta(g^j),

a length-(q-1) discrete Fourier transform with a positive-sign kernel.  Two
evaluation routes are kept deliberately distinct so they can cross-check
each other: a direct O(q^2) summation and an O(q log q) Bluestein chirp-z
transform built on zero-padded power-of-two FFTs.

The Jacobi sum J(A, B) = sum_x A(x) B(1-x) factors as G(A) G(B) / G(AB)
whenever AB is nontrivial; the remaining cases are exact small integers:
J(eps, eps) = q - 2 and J(A, A^-1) = -A(-1) for A nontrivial.

The binomial coefficient of two characters is binom(A, B) =
B(-1)/q * J(A, B conjugate).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .characters import char_at_minus_one, mult_char, theta_values, unit_roots
from .errors import TrivialCharacter, WrongCongruence, ZeroArgument
from .fields import Field

# Below this field size the direct summation wins on constant factors; the
# crossover is re-measured by the bench command rather than trusted.
DFT_CROSSOVER = 512


def dft_positive_kernel(x: np.ndarray) -> np.ndarray:
    """X_k = sum_j x_j exp(+2 pi i j k / n) for arbitrary n, via Bluestein.

    The chirp phase j^2 is reduced mod 2n in integer arithmetic before
    hitting the complex exponential, so large n costs no precision.
    """
    n = x.shape[0]
    if n == 1:
        return x.astype(np.complex128)
    idx = np.arange(n, dtype=np.int64)
    chirp = np.exp((1j * np.pi / n) * (idx * idx % (2 * n)))
    size = 1 << int(2 * n - 1).bit_length()
    u = np.zeros(size, dtype=np.complex128)
    u[:n] = x * chirp
    v = np.zeros(size, dtype=np.complex128)
    v[:n] = chirp.conj()
    v[size - n + 1 :] = chirp[1:][::-1].conj()
    conv = np.fft.ifft(np.fft.fft(u) * np.fft.fft(v))[:n]
    return conv * chirp


@dataclass(frozen=True, eq=False)
class GaussSumTable:
    """All q-1 Gauss sums of a field, indexed by character index mod q-1."""

    field: Field
    method: str
    values: np.ndarray = dc_field(repr=False)

    def __getitem__(self, m: int) -> complex:
        return complex(self.values[m % (self.field.q - 1)])


def _theta_on_generator_powers(field: Field) -> np.ndarray:
    return theta_values(field)[field.exp_table]


def _gauss_direct(field: Field) -> np.ndarray:
    n = field.q - 1
    theta_seq = _theta_on_generator_powers(field)
    roots = unit_roots(field)
    j = np.arange(n, dtype=np.int64)
    out = np.empty(n, dtype=np.complex128)
    for m in range(n):
        out[m] = roots[m * j % n] @ theta_seq
    return out


def _gauss_dft(field: Field) -> np.ndarray:
    return dft_positive_kernel(_theta_on_generator_powers(field))


def gauss_sum_table(field: Field, method: str = "auto") -> GaussSumTable:
    """Gauss sums for every character index, computed once per field and method.

    method: "direct" (O(q^2) summation), "dft" (Bluestein), or "auto"
    (direct below DFT_CROSSOVER, dft above).
    """
    if method == "auto":
        method = "direct" if field.q < DFT_CROSSOVER else "dft"
    if method not in ("direct", "dft"):
        raise ValueError(f"unknown gauss sum method {method!r}")
    key = ("gauss", method)
    cached = field._cache.get(key)
    if cached is None:
        values = _gauss_direct(field) if method == "direct" else _gauss_dft(field)
        values.setflags(write=False)
        cached = GaussSumTable(field, method, values)
        field._cache[key] = cached
    return cached


def jacobi_sum_direct(field: Field, a: int, b: int) -> complex:
    """J(T^a, T^b) by direct O(q) summation over x not in {0, 1}."""
    n = field.q - 1
    logs = field._cache.get("jacobi_logs")
    if logs is None:
        xs = np.arange(2, field.q, dtype=np.int64)
        one_minus = field.vec_add(np.ones_like(xs), field.vec_neg(xs))
        logs = (field.log_table[xs], field.log_table[one_minus])
        field._cache["jacobi_logs"] = logs
    lx, lm = logs
    return complex(unit_roots(field)[(a * lx + b * lm) % n].sum())


def jacobi_sum_matrix(field: Field) -> np.ndarray:
    """All Jacobi sums J(T^a, T^b) by direct summation, as a (q-1, q-1) array.

    Vectorized form of ``jacobi_sum_direct`` over every index pair at once
    (one complex matrix product); it never touches the Gauss table, so it
    serves as the direct side when cross-checking the factored route.
    """
    n = field.q - 1
    xs = np.arange(2, field.q, dtype=np.int64)
    lx = field.log_table[xs]
    lm = field.log_table[field.vec_add(np.ones_like(xs), field.vec_neg(xs))]
    idx = np.arange(n, dtype=np.int64)
    roots = unit_roots(field)
    left = roots[idx[:, None] * lx[None, :] % n]
    right = roots[lm[:, None] * idx[None, :] % n]
    return left @ right


def jacobi_sum(field: Field, a: int, b: int, *, method: str = "factored") -> complex:
    """J(T^a, T^b); the factored route goes through the cached Gauss table."""
    if method == "direct":
        return jacobi_sum_direct(field, a, b)
    n = field.q - 1
    a, b = a % n, b % n
    if (a + b) % n == 0:
        if a == 0:
            return complex(field.q - 2)
        return complex(-char_at_minus_one(a))
    g = gauss_sum_table(field).values
    return complex(g[a] * g[b] / g[(a + b) % n])


def greene_binomial(field: Field, a: int, b: int, *, method: str = "factored") -> complex:
    """binom(T^a, T^b) = T^b(-1)/q * J(T^a, T^-b)."""
    n = field.q - 1
    return char_at_minus_one(b) / field.q * jacobi_sum(field, a, (-b) % n, method=method)


# ---------------------------------------------------------------------------
# identity residuals


def theta_expansion_residual(field: Field, alpha: int) -> float:
    """Additive character recovered from Gauss sums, for alpha != 0:

        theta(alpha) = 1/(q-1) * sum_m G_{-m} T^m(alpha)
    """
    if alpha == 0:
        raise ZeroArgument("theta expansion holds on nonzero arguments only")
    n = field.q - 1
    g = gauss_sum_table(field).values
    m = np.arange(n, dtype=np.int64)
    rhs = (g[(-m) % n] * unit_roots(field)[m * field.dlog(alpha) % n]).sum() / n
    return abs(complex(theta_values(field)[alpha]) - rhs)


def gauss_product_residual(field: Field, i: int) -> float:
    """|G_i G_{-i} - q T^i(-1)| for a nontrivial index i."""
    n = field.q - 1
    if i % n == 0:
        raise TrivialCharacter("the product identity needs a nontrivial character")
    g = gauss_sum_table(field).values
    return abs(g[i % n] * g[(-i) % n] - field.q * char_at_minus_one(i))


def davenport_hasse_residual(field: Field, m: int, psi: int) -> float:
    """Product relation over the m-torsion characters, for q = 1 mod m:

        prod_chi G(chi psi) = -G(psi^m) psi(m^-m) prod_chi G(chi)

    with chi running over the m indices j*(q-1)/m.
    """
    if m < 1 or (field.q - 1) % m != 0:
        raise WrongCongruence(f"q = {field.q} is not 1 mod {m}")
    n = field.q - 1
    step = n // m
    g = gauss_sum_table(field).values
    lhs = np.prod(g[(psi + np.arange(m) * step) % n])
    m_to_minus_m = field.inv(field.pow(field.from_int(m), m))
    rhs = -g[m * psi % n] * mult_char(field, psi, m_to_minus_m) * np.prod(g[np.arange(m) * step % n])
    return abs(complex(lhs) - complex(rhs))


def gauss_binomial_residual(field: Field, m: int, n: int) -> float:
    """|G_m G_{-n} - q binom(T^m, T^n) G_{m-n} T^n(-1)| for T^(m-n) nontrivial.

    The binomial side is evaluated through the direct O(q) Jacobi sum so the
    two sides of the identity do not share the Gauss-table computation.
    """
    units = field.q - 1
    if (m - n) % units == 0:
        raise TrivialCharacter("needs T^(m-n) nontrivial")
    g = gauss_sum_table(field).values
    lhs = g[m % units] * g[(-n) % units]
    binom = greene_binomial(field, m, n, method="direct")
    rhs = field.q * binom * g[(m - n) % units] * char_at_minus_one(n)
    return abs(lhs - rhs)


_IDENTITY_KINDS = {
    "theta_expansion": theta_expansion_residual,
    "gauss_inverse": gauss_product_residual,
    "davenport_hasse": davenport_hasse_residual,
    "gauss_binomial": gauss_binomial_residual,
}


def check_identity(field: Field, kind: str, *params: int) -> float:
    """Residual of one Gauss/Jacobi-sum identity by kind name."""
    try:
        fn = _IDENTITY_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown identity kind {kind!r}") from None
    return fn(field, *params)
