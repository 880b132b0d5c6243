"""Exact integer utilities: primality, factorization, Jacobi symbols, CRT,
the logarithmic integral, and prime counts in arithmetic progressions.

Everything here is deterministic.  The only randomized internals (Pollard rho
restarts) draw from a fixed seed that can be overridden with set_rho_seed.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, List, Tuple

import numpy as np

# Deterministic Miller-Rabin witness tiers: each set is exact below its
# threshold (the last one out to 3.3 * 10**24, far past 64 bits).
_MR_TIERS = (
    (2047, (2,)),
    (1373653, (2, 3)),
    (3215031751, (2, 3, 5, 7)),
    (3474749660383, (2, 3, 5, 7, 11, 13)),
    (341550071728321, (2, 3, 5, 7, 11, 13, 17)),
    (None, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
)

_rho_seed = 0


class NonCoprimeModuliError(ValueError):
    """Raised by crt when two moduli share a factor."""

    def __init__(self, m1: int, m2: int, g: int):
        self.pair = (m1, m2)
        super().__init__(f"moduli {m1} and {m2} share the factor {g}")


def set_rho_seed(seed: int) -> None:
    """Reseed the Pollard rho restart sequence (default 0)."""
    global _rho_seed
    _rho_seed = int(seed)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    for bound, witnesses in _MR_TIERS:
        if bound is None or n < bound:
            break
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in witnesses:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# prime sieves

_prime_cache: List[int] = []
_prime_cache_limit = -1


def primes_up_to(n: int) -> List[int]:
    """All primes <= n, ascending.  Backed by a growing cached sieve."""
    global _prime_cache, _prime_cache_limit
    if n > _prime_cache_limit:
        limit = max(n, 2 * max(_prime_cache_limit, 0), 1000)
        sieve = np.ones(limit + 1, dtype=bool)
        sieve[:2] = False
        for p in range(2, math.isqrt(limit) + 1):
            if sieve[p]:
                sieve[p * p :: p] = False
        _prime_cache = np.flatnonzero(sieve).tolist()
        _prime_cache_limit = limit
    return _prime_cache[: bisect_right(_prime_cache, n)]


def smallest_factor_table(n: int) -> np.ndarray:
    """Array t of length n+1 with t[k] = smallest prime factor of k (t[k] = k
    for k prime, 0 and 1 map to themselves).  Meant for bulk factorization."""
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in range(2, math.isqrt(n) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest] = rest
    return spf


def factor_with_table(n: int, spf: np.ndarray) -> dict:
    """Exponent dict of n using a smallest_factor_table (n within the table)."""
    out: dict = {}
    n = int(n)
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = e
    return out


# ---------------------------------------------------------------------------
# factorization

@dataclass(frozen=True)
class Factorization:
    """Sorted prime-power decomposition of a positive integer."""

    value: int
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        prev = 1
        for p, e in self.factors:
            if p <= prev or e < 1 or not is_prime(p):
                raise ValueError(f"bad factor list for {self.value}")
            prev = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors do not reconstruct {self.value}")

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def nu(self) -> int:
        """Number of distinct prime factors."""
        return len(self.factors)

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    @property
    def mu(self) -> int:
        """Mobius function of value."""
        if not self.is_squarefree:
            return 0
        return -1 if self.nu % 2 else 1

    def totient(self) -> int:
        t = 1
        for p, e in self.factors:
            t *= p ** (e - 1) * (p - 1)
        return t


def _trial_primes(cap: int) -> Iterator[int]:
    limit = 1000
    i = 0
    while True:
        ps = primes_up_to(min(limit, cap))
        while i < len(ps):
            yield ps[i]
            i += 1
        if limit >= cap:
            return
        limit *= 10


def _pollard_brent(n: int, rng: random.Random) -> int:
    """Nontrivial factor of an odd composite n (Brent's cycle variant)."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            y = ys
            while g == 1:
                y = (y * y + c) % n
                g = math.gcd(abs(x - y), n)
        if g != n:
            return g


def factorize(n: int) -> Factorization:
    """Full factorization of n >= 1.

    Trial division peels off the prime factors below 1000 (early exit once
    the remainder drops below the square of the trial prime); whatever
    survives is split recursively by Pollard rho (Brent), with a
    deterministic primality test deciding when to stop splitting.
    """
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    counts: dict = {}
    m = n
    for p in _trial_primes(1000):
        if p * p > m:
            break
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    if m > 1:
        rng = random.Random(_rho_seed)
        stack = [m]
        while stack:
            t = stack.pop()
            if t == 1:
                continue
            if is_prime(t):
                counts[t] = counts.get(t, 0) + 1
                continue
            d = _pollard_brent(t, rng)
            stack.append(d)
            stack.append(t // d)
    return Factorization(n, tuple(sorted(counts.items())))


def totient(n: int) -> int:
    return factorize(n).totient()


def padic_valuation(n: int, p: int) -> int:
    """Largest e with p**e dividing n (n nonzero)."""
    if n == 0:
        raise ValueError("valuation of zero")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def is_square(n: int) -> bool:
    """Exact perfect-square test; negative inputs are never squares."""
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


# ---------------------------------------------------------------------------
# Jacobi symbol and CRT

def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd positive n, by quadratic reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"jacobi needs odd positive n, got {n}")
    a %= n
    t = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def crt(pairs: Iterable[Tuple[int, int]]) -> Tuple[int, int]:
    """Combine congruences x = r (mod m) with pairwise coprime moduli.
    Returns (u, v) with 0 <= u < v = product of the moduli."""
    items = [(int(r), int(m)) for r, m in pairs]
    for _, m in items:
        if m < 1:
            raise ValueError(f"modulus {m} is not positive")
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            g = math.gcd(items[i][1], items[j][1])
            if g != 1:
                raise NonCoprimeModuliError(items[i][1], items[j][1], g)
    u, v = 0, 1
    for r, m in items:
        if m == 1:
            continue
        k = (r - u) * pow(v, -1, m) % m
        u += v * k
        v *= m
    return u % v, v


# ---------------------------------------------------------------------------
# logarithmic integral and progression counts

def _simpson(fa: float, fm: float, fb: float, a: float, b: float) -> float:
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive(a, b, fa, fm, fb, whole, eps, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = 1.0 / math.log(lm)
    frm = 1.0 / math.log(rm)
    left = _simpson(fa, flm, fm, a, m)
    right = _simpson(fm, frm, fb, m, b)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * eps:
        return left + right + delta / 15.0
    half = 0.5 * eps
    return _adaptive(a, m, fa, flm, fm, left, half, depth - 1) + _adaptive(
        m, b, fm, frm, fb, right, half, depth - 1
    )


@lru_cache(maxsize=None)
def li(y: float) -> float:
    """Integral of dt/log(t) from 2 to y, by adaptive Simpson quadrature.

    The absolute tolerance is 1e-9 * max(1, estimated value); the estimate
    y/log(y) is within a small constant of the true value, so the result is
    good to a relative 1e-9 for any y of interest.
    """
    y = float(y)
    if y < 2.0:
        raise ValueError(f"li defined for y >= 2, got {y}")
    if y == 2.0:
        return 0.0
    rough = y / math.log(y)
    eps = 1e-10 * max(1.0, rough)
    a, b = 2.0, y
    fa = 1.0 / math.log(a)
    fb = 1.0 / math.log(b)
    m = 0.5 * (a + b)
    fm = 1.0 / math.log(m)
    whole = _simpson(fa, fm, fb, a, b)
    return _adaptive(a, b, fa, fm, fb, whole, eps, 60)


@dataclass(frozen=True)
class ProgressionCount:
    """Exact prime count in a residue class, with its deviation from the
    expected density li(y)/phi(m)."""

    y: int
    m: int
    s: int
    count: int
    error: float


def count_progression(y: int, m: int, s: int) -> ProgressionCount:
    """Count primes p <= y with p = s (mod m); gcd(s, m) must be 1."""
    if y < 2:
        raise ValueError(f"need y >= 2, got {y}")
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    s_red = s % m
    if math.gcd(s_red, m) != 1:
        raise ValueError(f"residue {s} not coprime to modulus {m}")
    count = 0
    for p in primes_up_to(y):
        if p % m == s_red:
            count += 1
    err = count - li(float(y)) / totient(m)
    return ProgressionCount(y, m, s_red, count, err)


def max_error(x: int, m: int) -> float:
    """max over residues s coprime to m of |count - li(x)/phi(m)| at y = x.

    Only the endpoint y = x is examined; no running maximum over y <= x is
    taken.
    """
    if x < 2 or m < 1:
        raise ValueError(f"need x >= 2 and m >= 1, got x={x} m={m}")
    counts = [0] * m
    for p in primes_up_to(x):
        counts[p % m] += 1
    expected = li(float(x)) / totient(m)
    worst = 0.0
    for s in range(m):
        if math.gcd(s, m) == 1:
            worst = max(worst, abs(counts[s] - expected))
    return worst
