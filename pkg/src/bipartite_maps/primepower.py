"""Prime-power isobicyclic triples.

For ``n = p**e`` every regular embedding of K_{n,n} comes from one of two
families:

* metacyclic groups ``<g, h | g^n = h^n = 1, h^g = h^(1+p^f)>`` with canonical
  generators ``x = g^u``, ``y = g^u h``;
* for ``p = 2`` only, four exceptional groups ``G(n; k, l)`` (one when n = 4)
  whose Frattini subgroup ``<x^2, y^2>`` has index 4.

Labels are rendered as ``p^e:std``, ``p^e:M(f,u)`` and ``2^e:N(k,l)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import ConstructionError, ContractError
from .groups import IsobicyclicTriple, close_generators, is_isobicyclic
from .numthy import Residue, euler_phi, exact_power, is_prime, primitive_root


@dataclass(frozen=True, order=True)
class PrimePowerLabel:
    """Isomorphism class of a ``p**e``-isobicyclic triple.

    ``kind`` is ``"M"`` (metacyclic, uses ``f`` and ``u``) or ``"N"``
    (non-metacyclic 2-group, uses ``k`` and ``l``).  The standard triple is the
    metacyclic label with ``f == e`` and ``u == 1``.
    """

    p: int
    e: int
    kind: str = "M"
    f: int = 0
    u: int = 1
    k: int = 0
    l: int = 0

    def __post_init__(self):
        p, e = self.p, self.e
        if not is_prime(p) or e < 1:
            raise ContractError(f"bad prime power {p}^{e}")
        if self.kind == "M":
            if not 1 <= self.f <= e:
                raise ContractError(f"f={self.f} out of range for {p}^{e}")
            if p == 2 and e >= 2 and self.f == 1:
                raise ContractError("f=1 is not isobicyclic for 2^e with e >= 2")
            top = p ** (e - self.f)
            if not (1 <= self.u <= top and gcd(self.u, p) == 1):
                raise ContractError(f"u={self.u} is not a representative mod {top}")
            if self.k or self.l:
                raise ContractError("metacyclic labels carry no k, l")
        elif self.kind == "N":
            if p != 2 or e < 2:
                raise ContractError("non-metacyclic labels need p=2, e>=2")
            if self.k not in (0, 1) or self.l not in (0, 1):
                raise ContractError("k and l must be 0 or 1")
            if e == 2 and (self.k, self.l) != (0, 0):
                raise ContractError("only N(0,0) exists for n=4")
            if self.f != 0 or self.u != 1:
                raise ContractError("non-metacyclic labels carry no f, u")
        else:
            raise ContractError(f"unknown label kind {self.kind!r}")

    @classmethod
    def standard(cls, p: int, e: int) -> "PrimePowerLabel":
        return cls(p, e, "M", e, 1)

    @classmethod
    def metacyclic(cls, p: int, e: int, f: int, u: int = 1) -> "PrimePowerLabel":
        return cls(p, e, "M", f, u)

    @classmethod
    def nonmetacyclic(cls, e: int, k: int, l: int) -> "PrimePowerLabel":
        return cls(2, e, "N", 0, 1, k, l)

    @property
    def n(self) -> int:
        return self.p**self.e

    @property
    def is_standard(self) -> bool:
        return self.kind == "M" and self.f == self.e

    @property
    def is_metacyclic(self) -> bool:
        return self.kind == "M"

    def __str__(self) -> str:
        head = f"{self.p}^{self.e}:"
        if self.is_standard:
            return head + "std"
        if self.kind == "M":
            return head + f"M({self.f},{self.u})"
        return head + f"N({self.k},{self.l})"

    @classmethod
    def parse(cls, text: str) -> "PrimePowerLabel":
        m = _LABEL_RE.fullmatch(text.strip())
        if not m:
            raise ContractError(f"cannot parse prime-power label {text!r}")
        p, e = int(m["p"]), int(m["e"])
        if m["std"]:
            return cls.standard(p, e)
        if m["f"] is not None:
            return cls.metacyclic(p, e, int(m["f"]), int(m["u"]))
        return cls(p, e, "N", 0, 1, int(m["k"]), int(m["l"]))


_LABEL_RE = re.compile(
    r"(?P<p>\d+)\^(?P<e>\d+):(?:(?P<std>std)|M\((?P<f>\d+),(?P<u>\d+)\)|N\((?P<k>\d+),(?P<l>\d+)\))"
)


def f_invariant(label: PrimePowerLabel) -> int:
    """The twist parameter ``f`` of the group; 1 for the non-metacyclic 2-groups."""
    return label.f if label.kind == "M" else 1


def enumerate_prime_power_labels(p: int, e: int) -> list[PrimePowerLabel]:
    """Representatives of every isomorphism class of ``p**e``-isobicyclic triples."""
    if not is_prime(p) or e < 1:
        raise ContractError(f"bad prime power {p}^{e}")
    out = []
    fmin = 2 if (p == 2 and e >= 2) else 1
    for f in range(fmin, e + 1):
        top = p ** (e - f)
        out.extend(PrimePowerLabel.metacyclic(p, e, f, u) for u in range(1, top + 1) if u % p)
    if p == 2 and e == 2:
        out.append(PrimePowerLabel.nonmetacyclic(2, 0, 0))
    elif p == 2 and e >= 3:
        out.extend(PrimePowerLabel.nonmetacyclic(e, k, l) for k in (0, 1) for l in (0, 1))
    return out


def prime_power_count(p: int, e: int) -> int:
    """Closed-form size of :func:`enumerate_prime_power_labels`."""
    if p != 2:
        return p ** (e - 1)
    if e == 1:
        return 1
    if e == 2:
        return 2
    return 2 ** (e - 2) + 4


@lru_cache(maxsize=None)
def build_prime_power_triple(label: PrimePowerLabel) -> IsobicyclicTriple:
    if label.kind == "M":
        triple = _metacyclic_triple(label)
    else:
        triple = _nonmetacyclic_triple(label)
        if not nonmetacyclic_relations_hold(triple, label.k, label.l):
            raise ConstructionError(f"defining relations fail for {label}")
    if not is_isobicyclic(triple.group, triple.x, triple.y, triple.n):
        raise ConstructionError(f"{label} did not build an isobicyclic triple")
    return triple


def _metacyclic_triple(label: PrimePowerLabel) -> IsobicyclicTriple:
    # g^i h^j  ->  (i, j);  h^g = h^(1+p^f) twists the h-exponent
    n = label.n
    twist = [pow(1 + label.p**label.f, i, n) for i in range(n)]

    def rule(a, b):
        return ((a[0] + b[0]) % n, (a[1] * twist[b[0]] + b[1]) % n)

    x, y = (label.u % n, 0), (label.u % n, 1 % n)
    G = close_generators(rule, [x, y], identity=(0, 0), max_size=n * n)
    return IsobicyclicTriple(G, G.index(x), G.index(y), n, str(label))


def _nonmetacyclic_triple(label: PrimePowerLabel) -> IsobicyclicTriple:
    # x^(2a) y^(2b) x^eps y^delta  ->  (a, b, eps, delta) with a, b mod n/2
    n, e, k, l = label.n, label.e, label.k, label.l
    h = n // 2
    zq = n // 4  # z = x^(n/2) y^(n/2) has Frattini coordinates (zq, zq)

    def act_x(a, b):  # x . phi . x^-1 on the Frattini subgroup
        return (a + zq * l * b) % h, (-b + zq * l * b) % h

    def act_y(a, b):
        return (-a + zq * l * a) % h, (b + zq * l * a) % h

    s = 1 + k * 2 ** (e - 2)
    c = (s % h, -s % h)  # c = [y, x] = x^(2s) y^(-2s)
    yx_shift = act_x(*act_y(*c))  # y x = act_x(act_y(c)) . x y

    def times_x(a, b, eps, dlt):
        if dlt:
            sa, sb = act_x(*yx_shift) if eps else yx_shift
            a, b = (a + sa) % h, (b + sb) % h
        if eps:
            return (a + 1) % h, b, 0, dlt
        return a, b, 1, dlt

    def times_y(a, b, eps, dlt):
        if not dlt:
            return a, b, eps, 1
        sa, sb = act_x(0, 1) if eps else (0, 1)
        return (a + sa) % h, (b + sb) % h, eps, 0

    def rule(u, v):
        a2, b2 = v[0], v[1]
        if u[3]:
            a2, b2 = act_y(a2, b2)
        if u[2]:
            a2, b2 = act_x(a2, b2)
        w = ((u[0] + a2) % h, (u[1] + b2) % h, u[2], u[3])
        if v[2]:
            w = times_x(*w)
        if v[3]:
            w = times_y(*w)
        return w

    x, y = (0, 0, 1, 0), (0, 0, 0, 1)
    G = close_generators(rule, [x, y], identity=(0, 0, 0, 0), max_size=n * n)
    return IsobicyclicTriple(G, G.index(x), G.index(y), n, str(label))


def nonmetacyclic_relations_hold(triple: IsobicyclicTriple, k: int, l: int) -> bool:
    """Check the defining presentation of ``G(n; k, l)`` on ``triple``'s generators."""
    G, x, y, n = triple.group, triple.x, triple.y, triple.n
    e = n.bit_length() - 1
    pw = G.power
    if pw(x, n) != 0 or pw(y, n) != 0:
        return False
    c = G.mul(G.mul(G.inv(y), G.inv(x)), G.mul(y, x))
    s = 2 + k * 2 ** (e - 1)
    if c != G.mul(pw(x, s), pw(y, -s)):
        return False
    t = l * 2 ** (e - 2)
    if G.conj(c, x) != G.mul(pw(c, -1 + t), pw(x, 4)):
        return False
    return G.conj(c, y) == G.mul(pw(c, -1 - t), pw(y, -4))


def admissible_eigenvalues(q_label: PrimePowerLabel, p: int, d: int) -> list[Residue]:
    """Eigenvalues of diagonal actions of a ``q``-group on ``C_{p^d} x C_{p^d}``.

    These are the solutions of ``lam ** (q**m) == 1`` in ``Z_{p^d}`` with
    ``m = min(f_Q, r)`` and ``q**r`` exactly dividing ``p - 1``; there are
    ``q**m`` of them, listed in ascending order (1 first).
    """
    q = q_label.p
    if q == p:
        raise ContractError("a Sylow subgroup cannot act on itself diagonally")
    modulus = p**d
    r = exact_power(q, p - 1)
    m = min(f_invariant(q_label), r)
    if m == 0:
        return [Residue(1, modulus)]
    # Z_{p^d}^* is cyclic here (p odd since q | p - 1); take the q^m-torsion
    g = primitive_root(modulus)
    step = euler_phi(modulus) // q**m
    root = pow(g, step, modulus)
    values = sorted(pow(root, i, modulus) for i in range(q**m))
    return [Residue(v, modulus) for v in values]
