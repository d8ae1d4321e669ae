"""Deterministic construction of F_q = F_{p^e}, p an odd prime, with log tables.

Elements are encoded as plain integers in [0, q): the element
sum_i d_i * alpha^i (digits d_i in [0, p), alpha the residue of x modulo the
field's modulus polynomial) gets the index sum_i d_i * p^i.  "Canonical
order" on elements means this integer order; it is also the order used to
break ties everywhere (modulus choice, generator choice, root listings).

Construction is reproducible: the modulus is the lexicographically smallest
monic irreducible of degree e, comparing coefficient tuples constant term
first, and the generator is the smallest element of multiplicative order
q - 1 in canonical order.  A validated generator override is accepted so
that results can be checked for independence from the choice.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .errors import InvalidFieldParameters, NoDiscreteLog

DEFAULT_MAX_Q = 200_000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, as {prime: multiplicity}."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_powers(q_min: int, q_max: int, congruence: int | None = None) -> list[tuple[int, int, int]]:
    """All (p, e, q) with q = p^e in [q_min, q_max], p an odd prime, q >= 5.

    If ``congruence`` is given, keep only q with q % congruence == 1.
    Sorted by q.
    """
    lo = max(q_min, 5)
    if q_max < lo:
        return []
    sieve = np.ones(q_max + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(q_max**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    out = []
    for p in np.flatnonzero(sieve):
        p = int(p)
        if p == 2:
            continue
        q, e = p, 1
        while q <= q_max:
            if q >= lo and (congruence is None or q % congruence == 1):
                out.append((p, e, q))
            q, e = q * p, e + 1
    out.sort(key=lambda t: t[2])
    return out


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over Z/p (coefficient lists, lowest degree first)


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = a[:]
    dn = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= dn and a:
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dn
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _ptrim(a)
    return a


def _pmulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, f, p)


def _ppowmod(a: list[int], k: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, f, p)
    while k:
        if k & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        k >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim(a[:]), _ptrim(b[:])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(lower: tuple[int, ...], p: int) -> bool:
    """Monic degree-e polynomial x^e + sum lower[i] x^i irreducible over Z/p?

    Tests that no irreducible factor of degree <= e/2 exists:
    gcd(x^(p^d) - x, f) must be constant for d = 1 .. e // 2.
    """
    e = len(lower)
    if lower[0] == 0:  # divisible by x
        return False
    # cheap screen: a linear factor means a root in Z/p
    for r in range(p):
        acc = 1
        for c in reversed(lower):
            acc = (acc * r + c) % p
        # acc = r^e + ... built Horner-style with implicit leading 1
        if acc == 0:
            return False
    f = list(lower) + [1]
    h = [0, 1]
    for _ in range(e // 2):
        h = _ppowmod(h, p, f, p)  # iterated Frobenius: h = x^(p^d) mod f
        g = _pgcd([(c1 - c2) % p for c1, c2 in _zip_pad(h, [0, 1])], f, p)
        if len(g) > 1:
            return False
    return True


def _zip_pad(a: list[int], b: list[int]) -> list[tuple[int, int]]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]


def _find_modulus(p: int, e: int) -> tuple[int, ...]:
    for lower in product(range(p), repeat=e):
        # product() yields coefficient tuples (c0, ..., c_{e-1}) in ascending
        # lexicographic order with the constant term compared first
        if _is_irreducible(lower, p):
            return lower
    raise InvalidFieldParameters(f"no irreducible polynomial found for p={p}, e={e}")


# ---------------------------------------------------------------------------


class Field:
    """F_q with precomputed exp/log/trace tables.

    Attributes are fixed after construction; worker threads may share a Field
    freely.  Lazily attached caches (``_cache``) are idempotent: concurrent
    recomputation yields identical values.

    exp_table[j] = g^j for j in [0, q-1); log_table[x] = j with g^j = x and
    log_table[0] = -1; trace_table[x] = x + x^p + ... + x^(p^(e-1)) as an
    integer in [0, p).
    """

    __slots__ = ("p", "e", "q", "modulus", "generator", "exp_table", "log_table",
                 "trace_table", "_cache")

    def __init__(self, p: int, e: int, modulus: tuple[int, ...] | None,
                 generator: int, exp_table: np.ndarray, log_table: np.ndarray,
                 trace_table: np.ndarray):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        self.generator = generator
        self.exp_table = exp_table
        self.log_table = log_table
        self.trace_table = trace_table
        self._cache: dict = {}

    def __repr__(self) -> str:
        return f"Field(q={self.q}, p={self.p}, e={self.e}, generator={self.format_element(self.generator)})"

    # -- scalar arithmetic ---------------------------------------------------

    def digits(self, x: int) -> tuple[int, ...]:
        if self.e == 1:
            return (x,)
        out = []
        for _ in range(self.e):
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def add(self, x: int, y: int) -> int:
        p = self.p
        if self.e == 1:
            return (x + y) % p
        out, mult = 0, 1
        for _ in range(self.e):
            out += (x % p + y % p) % p * mult
            x //= p
            y //= p
            mult *= p
        return out

    def neg(self, x: int) -> int:
        p = self.p
        if self.e == 1:
            return (p - x) % p
        out, mult = 0, 1
        for _ in range(self.e):
            out += (p - x % p) % p * mult
            x //= p
            mult *= p
        return out

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        n = self.q - 1
        return int(self.exp_table[(int(self.log_table[x]) + int(self.log_table[y])) % n])

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        n = self.q - 1
        return int(self.exp_table[(n - int(self.log_table[x])) % n])

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, k: int) -> int:
        if x == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        n = self.q - 1
        return int(self.exp_table[(int(self.log_table[x]) * k) % n])

    def from_int(self, n: int) -> int:
        """Image of the rational integer n in the prime subfield."""
        return n % self.p

    def dlog(self, x: int) -> int:
        """Discrete log base the canonical generator; x = 0 has none."""
        if x == 0:
            raise NoDiscreteLog("discrete log of zero")
        return int(self.log_table[x])

    def trace(self, x: int) -> int:
        """Absolute trace down to Z/p, as an integer in [0, p)."""
        return int(self.trace_table[x])

    def sqrt(self, x: int) -> tuple[int, ...]:
        """All square roots of x in canonical order: 0, 1, or 2 of them."""
        if x == 0:
            return (0,)
        n = self.q - 1
        l = int(self.log_table[x])
        if l % 2:
            return ()
        r = int(self.exp_table[l // 2])
        s = int(self.exp_table[(l // 2 + n // 2) % n])
        return (r, s) if r < s else (s, r)

    def cubic_roots(self, a: int, b: int) -> list[int]:
        """Roots of x^3 + a x + b in F_q, ascending canonical order."""
        xs = self.elements()
        vals = self.vec_add(self.vec_add(self.vec_pow(xs, 3), self.vec_mul(xs, a)), b)
        return [int(r) for r in np.flatnonzero(vals == 0)]

    # -- vectorized arithmetic on int64 arrays of element indices -------------

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def vec_add(self, xs, ys) -> np.ndarray:
        p = self.p
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        if self.e == 1:
            return (xs + ys) % p
        out = np.zeros(np.broadcast(xs, ys).shape, dtype=np.int64)
        mult = 1
        for _ in range(self.e):
            out += (xs % p + ys % p) % p * mult
            xs, ys = xs // p, ys // p
            mult *= p
        return out

    def vec_neg(self, xs) -> np.ndarray:
        p = self.p
        xs = np.asarray(xs, dtype=np.int64)
        if self.e == 1:
            return (p - xs) % p
        out = np.zeros(xs.shape, dtype=np.int64)
        mult = 1
        for _ in range(self.e):
            out += (p - xs % p) % p * mult
            xs = xs // p
            mult *= p
        return out

    def vec_mul(self, xs, ys) -> np.ndarray:
        n = self.q - 1
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        lx = self.log_table[xs]
        ly = self.log_table[ys]
        nz = (lx >= 0) & (ly >= 0)
        out = np.zeros(np.broadcast(xs, ys).shape, dtype=np.int64)
        out[nz] = self.exp_table[(lx + ly)[nz] % n]
        return out

    def vec_pow(self, xs, k: int) -> np.ndarray:
        """Elementwise x^k for k >= 0 (0^0 = 1)."""
        xs = np.asarray(xs, dtype=np.int64)
        if k == 0:
            return np.ones(xs.shape, dtype=np.int64)
        n = self.q - 1
        lx = self.log_table[xs]
        nz = lx >= 0
        out = np.zeros(xs.shape, dtype=np.int64)
        out[nz] = self.exp_table[(lx[nz] * k) % n]
        return out

    def quadratic_signs(self) -> np.ndarray:
        """int8 table over all elements: 0 at zero, else +-1 by square-ness.

        Exact integer values of the order-2 character, usable without any
        complex rounding.
        """
        cached = self._cache.get("qr_signs")
        if cached is None:
            signs = np.zeros(self.q, dtype=np.int8)
            signs[self.exp_table[::2]] = 1
            signs[self.exp_table[1::2]] = -1
            self._cache["qr_signs"] = cached = signs
        return cached

    # -- text encoding ---------------------------------------------------------

    def format_element(self, x: int) -> str:
        if self.e == 1:
            return str(x)
        return ",".join(str(d) for d in self.digits(x))

    def parse_element(self, text: str) -> int:
        """Inverse of format_element; for e > 1 accepts 1..e comma-separated digits."""
        parts = text.strip().split(",")
        if self.e == 1:
            if len(parts) != 1:
                raise ValueError(f"expected one value for a prime field element: {text!r}")
            x = int(parts[0])
            if not 0 <= x < self.q:
                raise ValueError(f"element {x} out of range [0, {self.q})")
            return x
        if not 1 <= len(parts) <= self.e:
            raise ValueError(f"expected at most {self.e} digits: {text!r}")
        out, mult = 0, 1
        for part in parts:
            d = int(part)
            if not 0 <= d < self.p:
                raise ValueError(f"digit {d} out of range [0, {self.p})")
            out += d * mult
            mult *= self.p
        return out


def primitive_elements(field: Field, count: int = 2) -> list[int]:
    """The first ``count`` generators of F_q^* in canonical element order."""
    n = field.q - 1
    j = np.arange(n, dtype=np.int64)
    gens = np.sort(field.exp_table[np.gcd(j, n) == 1])
    return [int(g) for g in gens[:count]]


def _element_mul_fn(p: int, e: int, modulus: tuple[int, ...] | None):
    """Index-space multiplication usable before any tables exist."""
    if e == 1:
        return lambda x, y: x * y % p
    f = list(modulus) + [1]

    def mul(x: int, y: int) -> int:
        a = []
        for _ in range(e):
            a.append(x % p)
            x //= p
        b = []
        for _ in range(e):
            b.append(y % p)
            y //= p
        c = _pmulmod(a, b, f, p)
        out = 0
        for d in reversed(c):
            out = out * p + d
        return out

    return mul


def _index_pow(mul, x: int, k: int) -> int:
    result, base = 1, x
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def _has_full_order(mul, x: int, n: int, prime_divisors: list[int]) -> bool:
    return all(_index_pow(mul, x, n // r) != 1 for r in prime_divisors)


def build_field(p: int, e: int = 1, *, generator: int | None = None,
                max_q: int = DEFAULT_MAX_Q) -> Field:
    """Construct F_{p^e} deterministically.

    Raises InvalidFieldParameters for p not an odd prime, e < 1, q < 5, or
    q > max_q.  ``generator`` overrides the canonical generator; it must be a
    valid element index of multiplicative order q - 1.
    """
    if not isinstance(p, int) or not isinstance(e, int):
        raise InvalidFieldParameters("p and e must be integers")
    if e < 1:
        raise InvalidFieldParameters(f"extension degree must be >= 1, got {e}")
    if p == 2:
        raise InvalidFieldParameters("p must be odd")
    if not is_prime(p):
        raise InvalidFieldParameters(f"p = {p} is not prime")
    q = p**e
    if q < 5:
        raise InvalidFieldParameters(f"q = {q} is below the minimum field size 5")
    if q > max_q:
        raise InvalidFieldParameters(f"q = {q} exceeds the size cap {max_q}")

    modulus = _find_modulus(p, e) if e > 1 else None
    mul = _element_mul_fn(p, e, modulus)
    n = q - 1
    divisors = sorted(factorize(n))

    if generator is None:
        g = 0
        for cand in range(2, q):
            if _has_full_order(mul, cand, n, divisors):
                g = cand
                break
        if g == 0:
            raise InvalidFieldParameters(f"no generator found for q={q}")
    else:
        if not 1 <= generator < q:
            raise InvalidFieldParameters(f"generator index {generator} out of range")
        if not _has_full_order(mul, generator, n, divisors):
            raise InvalidFieldParameters(
                f"element {generator} does not generate F_{q}^*")
        g = generator

    exp_table = np.empty(n, dtype=np.int64)
    x = 1
    for j in range(n):
        exp_table[j] = x
        x = mul(x, g)
    if x != 1:
        raise InvalidFieldParameters(f"generator order check failed for q={q}")
    log_table = np.full(q, -1, dtype=np.int64)
    log_table[exp_table] = np.arange(n, dtype=np.int64)

    field = Field(p, e, modulus, g, exp_table, log_table,
                  trace_table=np.zeros(q, dtype=np.int64))
    xs = field.elements()
    acc = xs.copy()
    cur = xs
    for _ in range(e - 1):
        cur = field.vec_pow(cur, p)
        acc = field.vec_add(acc, cur)
    if e > 1 and (acc >= p).any():
        raise InvalidFieldParameters(f"trace left the prime subfield for q={q}")
    field.trace_table = acc
    return field
