"""Hole operations, mirror images and Petrie duals on triples.

``H_j`` raises both canonical generators to the ``j``-th power, the mirror
image is ``H_{-1}`` and the Petrie dual inverts ``y`` only.  Reflexibility and
self-Petriality are existence questions for one automorphism of ``G``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from .errors import ContractError, NotRegularError
from .groups import IsobicyclicTriple, extend_generator_map
from .labelling import labelling_from_triple
from .numthy import factorize


@dataclass(frozen=True)
class ChiralityReport:
    reflexible: bool
    self_petrie: bool
    mirror_partner: str
    petrie_partner: Optional[str]
    petrie_face_length: int


def hole_operation(T: IsobicyclicTriple, j: int) -> IsobicyclicTriple:
    if gcd(j, T.n) != 1:
        raise ContractError(f"j={j} is not coprime to n={T.n}")
    G = T.group
    return T.with_generators(G.power(T.x, j), G.power(T.y, j), f"H_{j}({T.name})")


def mirror(T: IsobicyclicTriple) -> IsobicyclicTriple:
    G = T.group
    return T.with_generators(G.inv(T.x), G.inv(T.y), f"mirror({T.name})")


def petrie_length(T: IsobicyclicTriple) -> int:
    """``m' = |x y^-1|``; Petrie polygons have ``2 m'`` sides."""
    G = T.group
    return G.element_order(G.mul(T.x, G.inv(T.y)))


def petrie_dual(T: IsobicyclicTriple) -> IsobicyclicTriple:
    """``(G, x, y^-1)``; only regular when ``T`` is reflexible.

    Raises:
        NotRegularError: ``T`` is chiral; carries ``m'`` anyway.
    """
    if not is_reflexible(T):
        raise NotRegularError("Petrie dual of a chiral map is not regular", petrie_length(T))
    G = T.group
    return T.with_generators(T.x, G.inv(T.y), f"P({T.name})")


def _has_automorphism(T: IsobicyclicTriple, x_img: int, y_img: int) -> bool:
    phi = extend_generator_map(T.group, T.group, [(T.x, x_img), (T.y, y_img)])
    return phi is not None and phi.bijective


def is_reflexible(T: IsobicyclicTriple) -> bool:
    G = T.group
    return _has_automorphism(T, G.inv(T.x), G.inv(T.y))


def is_self_petrie(T: IsobicyclicTriple) -> bool:
    return _has_automorphism(T, T.x, T.group.inv(T.y))


def chirality_report(T: IsobicyclicTriple) -> ChiralityReport:
    """Reflexibility, self-Petriality and partner labellings (as descriptors)."""
    reflexible = is_reflexible(T)
    mirror_id = labelling_from_triple(mirror(T)).descriptor
    petrie_id = None
    if reflexible:
        petrie_id = labelling_from_triple(petrie_dual(T)).descriptor
    return ChiralityReport(
        reflexible=reflexible,
        self_petrie=is_self_petrie(T),
        mirror_partner=mirror_id,
        petrie_partner=petrie_id,
        petrie_face_length=2 * petrie_length(T),
    )


def _two_adic_and_odd(n: int) -> tuple[int, int]:
    fac = factorize(n)
    return fac.exponent(2), sum(1 for p in fac.primes if p != 2)


def rho(n: int) -> int:
    """Number of reflexible regular embeddings of K_{n,n}."""
    e, r = _two_adic_and_odd(n)
    if e == 0:
        return 1
    if e == 1:
        return 2**r
    if e == 2:
        return 2 ** (r + 1)
    return 3 * 2 ** (r + 1)


def sigma(n: int) -> int:
    """Number of self-Petrie regular embeddings of K_{n,n}."""
    e, r = _two_adic_and_odd(n)
    if e == 0:
        return 1
    if e == 1:
        return 2**r
    if e == 2:
        return 2 ** (r + 1)
    return 2 ** (r + 2)


def chi_pairs(n: int, nu: Optional[int] = None) -> int:
    """Number of chiral pairs, ``(nu(n) - rho(n)) / 2``."""
    if nu is None:
        from .census import nu_formula

        nu = nu_formula(n).total
    return (nu - rho(n)) // 2
