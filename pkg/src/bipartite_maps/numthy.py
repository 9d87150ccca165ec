"""Exact elementary number theory used throughout the package.

Everything here works on plain Python integers.  Factorizations are listed by
descending prime so that iteration order downstream is fixed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd
from typing import Iterable, Iterator, Sequence

from .errors import ContractError


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ``(prime, exponent)`` pairs, largest prime first."""

    pairs: tuple[tuple[int, int], ...]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    @property
    def value(self) -> int:
        out = 1
        for p, e in self.pairs:
            out *= p**e
        return out

    def exponent(self, p: int) -> int:
        for q, e in self.pairs:
            if q == p:
                return e
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)


@dataclass(frozen=True)
class Residue:
    """A residue class ``value mod modulus`` with canonical representative."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ContractError(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def __str__(self) -> str:
        return f"{self.value} mod {self.modulus}"


_TRIAL_LIMIT = 1000


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of the odd composite ``n``."""
    for c in range(1, n):
        y, m, g, r, q = 2, 128, 1, 1, 1
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
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"no factor found for {n}")


def _split(m: int, out: dict) -> None:
    if m == 1:
        return
    if is_prime(m):
        out[m] = out.get(m, 0) + 1
        return
    d = _pollard_brent(m)
    _split(d, out)
    _split(m // d, out)


@lru_cache(maxsize=4096)
def factorize(n: int) -> Factorization:
    if n < 1:
        raise ContractError(f"factorize needs n >= 1, got {n}")
    found: dict[int, int] = {}
    m = n
    p = 2
    while p * p <= m and p < _TRIAL_LIMIT:
        while m % p == 0:
            m //= p
            found[p] = found.get(p, 0) + 1
        p += 1 if p == 2 else 2
    if m > 1 and p * p > m:
        found[m] = found.get(m, 0) + 1
    else:
        # whatever is left has no prime factor below the trial limit
        _split(m, found)
    return Factorization(tuple(sorted(found.items(), reverse=True)))


def prime_divisors(n: int) -> tuple[int, ...]:
    """Distinct primes dividing ``n`` in ascending order."""
    return tuple(sorted(factorize(n).primes))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_below(bound: int) -> list[int]:
    if bound <= 2:
        return []
    sieve = bytearray([1]) * bound
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(bound**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound, i)))
    return [i for i in range(bound) if sieve[i]]


def euler_phi(n: int) -> int:
    if n < 1:
        raise ContractError(f"euler_phi needs n >= 1, got {n}")
    out = n
    for p, _ in factorize(n):
        out -= out // p
    return out


def crt_combine(congruences: Sequence[Residue]) -> Residue:
    """Solve simultaneous congruences with pairwise coprime moduli."""
    value, modulus = 0, 1
    for r in congruences:
        if gcd(modulus, r.modulus) != 1:
            raise ContractError(
                f"moduli not pairwise coprime: {modulus} and {r.modulus}"
            )
        # value + modulus * k == r.value  (mod r.modulus)
        k = (r.value - value) * pow(modulus, -1, r.modulus) % r.modulus
        value += modulus * k
        modulus *= r.modulus
    return Residue(value, modulus)


def multiplicative_order(a: Residue) -> int:
    if gcd(a.value, a.modulus) != 1:
        raise ContractError(f"{a} is not a unit")
    if a.modulus == 1:
        return 1
    order = euler_phi(a.modulus)
    for p, _ in factorize(order):
        while order % p == 0 and pow(a.value, order // p, a.modulus) == 1:
            order //= p
    return order


def pi_part(n: int, pi: Iterable[int]) -> int:
    """Largest divisor of ``n`` whose prime factors all lie in ``pi``."""
    pi = set(pi)
    out = 1
    for p, e in factorize(n):
        if p in pi:
            out *= p**e
    return out


def exact_power(q: int, m: int) -> int:
    """The exponent ``r`` with ``q**r`` exactly dividing ``m`` (``m`` nonzero)."""
    if m == 0:
        raise ContractError("exact_power of zero is undefined")
    r = 0
    while m % q == 0:
        m //= q
        r += 1
    return r


def lcm(*values: int) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


def primitive_root(modulus: int) -> int:
    """Least generator of the cyclic unit group mod ``modulus``.

    Only moduli ``1, 2, 4, p**k, 2*p**k`` have one; anything else raises.
    """
    if modulus == 1:
        return 0
    if modulus == 2:
        return 1
    phi = euler_phi(modulus)
    qs = factorize(phi).primes
    for g in range(2, modulus):
        if gcd(g, modulus) != 1:
            continue
        if all(pow(g, phi // q, modulus) != 1 for q in qs):
            return g
    raise ContractError(f"no primitive root modulo {modulus}")
