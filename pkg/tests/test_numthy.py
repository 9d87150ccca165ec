from math import gcd, prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bipartite_maps.errors import ContractError
from bipartite_maps.numthy import (
    Residue,
    crt_combine,
    euler_phi,
    exact_power,
    factorize,
    is_prime,
    lcm,
    multiplicative_order,
    pi_part,
    prime_divisors,
    primes_below,
    primitive_root,
)


def naive_phi(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def naive_order(a, m):
    k, x = 1, a % m
    while x != 1 % m:
        x = x * a % m
        k += 1
    return k


class TestFactorize:
    def test_ninety(self):
        assert factorize(90).pairs == ((5, 1), (3, 2), (2, 1))

    def test_one_is_empty(self):
        f = factorize(1)
        assert f.pairs == () and f.value == 1

    def test_hundred_five(self):
        assert factorize(105).as_dict() == {7: 1, 5: 1, 3: 1}

    def test_exponent_of_absent_prime(self):
        assert factorize(90).exponent(7) == 0

    def test_rejects_zero(self):
        with pytest.raises(ContractError):
            factorize(0)

    @given(st.integers(min_value=1, max_value=10**6))
    def test_recomposes(self, n):
        f = factorize(n)
        assert prod(p**e for p, e in f) == n
        assert all(is_prime(p) and e >= 1 for p, e in f)
        assert list(f.primes) == sorted(f.primes, reverse=True)

    def test_large_prime_factors(self):
        n = 2**10 * 999983 * 1000003 * (10**11 + 3) ** 2
        assert factorize(n).as_dict() == {2: 10, 999983: 1, 1000003: 1, 10**11 + 3: 2}

    def test_prime_divisors_ascending(self):
        assert prime_divisors(90) == (2, 3, 5)


def test_is_prime_matches_sieve():
    sieve = set(primes_below(5000))
    assert all(is_prime(k) == (k in sieve) for k in range(5000))


class TestEulerPhi:
    @pytest.mark.parametrize("n,expected", [(1, 1), (9, 6), (3, 2), (120, 32)])
    def test_values(self, n, expected):
        assert euler_phi(n) == expected

    @given(st.integers(min_value=1, max_value=3000))
    def test_against_count(self, n):
        assert euler_phi(n) == naive_phi(n)


class TestCrt:
    def test_single(self):
        assert crt_combine([Residue(2, 7)]) == Residue(2, 7)

    def test_pair(self):
        assert crt_combine([Residue(4, 5), Residue(2, 3)]) == Residue(14, 15)

    def test_degenerate_modulus(self):
        assert crt_combine([Residue(0, 1)]) == Residue(0, 1)

    def test_non_coprime(self):
        with pytest.raises(ContractError):
            crt_combine([Residue(1, 4), Residue(3, 6)])

    def test_residue_reduces(self):
        assert Residue(-1, 5).value == 4

    @given(st.lists(st.sampled_from([3, 4, 5, 7, 11, 13]), min_size=1, max_size=4, unique=True), st.data())
    def test_reproduces_inputs(self, moduli, data):
        if any(gcd(a, b) != 1 for i, a in enumerate(moduli) for b in moduli[i + 1 :]):
            return
        rs = [Residue(data.draw(st.integers(0, m - 1)), m) for m in moduli]
        out = crt_combine(rs)
        assert out.modulus == prod(moduli)
        assert all(out.value % r.modulus == r.value for r in rs)


class TestMultiplicativeOrder:
    @pytest.mark.parametrize("a,m,k", [(1, 12, 1), (2, 7, 3), (14, 15, 2), (1, 1, 1)])
    def test_values(self, a, m, k):
        assert multiplicative_order(Residue(a, m)) == k

    def test_non_unit(self):
        with pytest.raises(ContractError):
            multiplicative_order(Residue(3, 9))

    @given(st.integers(2, 400), st.integers(1, 10**4))
    def test_divides_phi(self, m, a):
        if gcd(a, m) != 1:
            return
        k = multiplicative_order(Residue(a, m))
        assert euler_phi(m) % k == 0
        assert k == naive_order(a, m)


class TestPiPart:
    def test_values(self):
        assert pi_part(90, {3, 5}) == 45
        assert pi_part(90, set()) == 1
        assert pi_part(21, {7}) == 7

    @given(st.integers(1, 10**5), st.sets(st.sampled_from([2, 3, 5, 7, 11, 13])))
    def test_complement(self, n, pi):
        rest = set(factorize(n).primes) - pi
        assert pi_part(n, pi) * pi_part(n, rest) == n


def test_exact_power():
    assert exact_power(2, 48) == 4
    assert exact_power(3, 10) == 0


def test_lcm():
    assert lcm(4, 6, 10) == 60
    assert lcm() == 1


@pytest.mark.parametrize("m", [2, 3, 5, 7, 9, 25, 27, 49, 121])
def test_primitive_root_generates(m):
    g = primitive_root(m)
    assert multiplicative_order(Residue(g, m)) == euler_phi(m)
