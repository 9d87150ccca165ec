"""Isobicyclic labellings and the triples they determine.

A labelling of ``n`` picks a short spanning subgraph of ``pi_graph(n)``, a
prime-power label for every vertex (forced standard on arc heads) and a
nontrivial eigenvalue on every arc.  Labellings correspond one-to-one with
isomorphism classes of ``n``-isobicyclic triples:

* :func:`triple_from_labelling` builds the triple as a semidirect product of
  ``C_t x C_t`` (the arc heads) by the cartesian product of the other Sylow
  triples;
* :func:`labelling_from_triple` reads the labelling back off any triple.

Descriptor grammar (also the census row id)::

    labelling  := vertexlabel (";" vertexlabel)* ("|" arclabel)*
    vertexlabel:= prime "^" exp ":" ("std" | "M(" f "," u ")" | "N(" k "," l ")")
    arclabel   := q "->" p ":" lambda
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod
from typing import Iterator, Optional, Sequence

from .errors import ClassificationViolation, ConstructionError, ContractError
from .groups import (
    IsobicyclicTriple,
    close_generators,
    is_isobicyclic,
    subgroup,
    triples_isomorphic,
)
from .numbergraph import ShortSubgraph, pi_graph, short_spanning_subgraphs
from .numthy import Residue, crt_combine, factorize, lcm, multiplicative_order
from .primepower import (
    PrimePowerLabel,
    admissible_eigenvalues,
    build_prime_power_triple,
    enumerate_prime_power_labels,
)


@dataclass(frozen=True)
class IsoLabelling:
    n: int
    gamma: Optional[ShortSubgraph]
    vertex_labels: tuple[tuple[int, PrimePowerLabel], ...]
    arc_labels: tuple[tuple[tuple[int, int], int], ...] = ()

    def __post_init__(self):
        _validate(self)

    def label(self, p: int) -> PrimePowerLabel:
        return dict(self.vertex_labels)[p]

    def arc_label(self, q: int, p: int) -> int:
        return dict(self.arc_labels)[(q, p)]

    @property
    def terminal(self) -> frozenset[int]:
        return self.gamma.terminal if self.gamma else frozenset()

    @property
    def descriptor(self) -> str:
        text = ";".join(str(lab) for _, lab in self.vertex_labels)
        for (q, p), lam in self.arc_labels:
            text += f"|{q}->{p}:{lam}"
        return text

    def __str__(self) -> str:
        return self.descriptor

    @classmethod
    def parse(cls, descriptor: str) -> "IsoLabelling":
        descriptor = descriptor.strip()
        if not descriptor:
            return cls(1, None, ())
        head, *arcs = descriptor.split("|")
        labels = [PrimePowerLabel.parse(part) for part in head.split(";")]
        n = prod(lab.n for lab in labels)
        arc_labels = []
        for text in arcs:
            try:
                pair, lam = text.split(":")
                q, p = (int(v) for v in pair.split("->"))
                arc_labels.append(((q, p), int(lam)))
            except ValueError:
                raise ContractError(f"cannot parse arc label {text!r}") from None
        arc_labels.sort()
        gamma = ShortSubgraph(pi_graph(n), tuple(a for a, _ in arc_labels)) if n > 1 else None
        vertex_labels = tuple(sorted((lab.p, lab) for lab in labels))
        return cls(n, gamma, vertex_labels, tuple(arc_labels))


def _validate(L: IsoLabelling) -> None:
    fac = factorize(L.n).as_dict()
    if L.n == 1:
        if L.vertex_labels or L.arc_labels:
            raise ContractError("n=1 has only the empty labelling")
        return
    if L.gamma is None or L.gamma.parent != pi_graph(L.n):
        raise ContractError("gamma must be a short spanning subgraph of pi_graph(n)")
    primes = [p for p, _ in L.vertex_labels]
    if primes != sorted(fac):
        raise ContractError(f"vertex labels {primes} do not match the primes of {L.n}")
    for p, lab in L.vertex_labels:
        if lab.p != p or lab.e != fac[p]:
            raise ContractError(f"label {lab} does not fit {p}^{fac[p]}")
        if p in L.gamma.terminal and not lab.is_standard:
            raise ContractError(f"arc head {p} must carry the standard label")
    if tuple(a for a, _ in L.arc_labels) != tuple(sorted(L.gamma.arcs)):
        raise ContractError("arc labels must cover exactly the arcs of gamma")
    labels = dict(L.vertex_labels)
    for (q, p), lam in L.arc_labels:
        allowed = {r.value for r in admissible_eigenvalues(labels[q], p, fac[p])}
        if lam == 1 or lam not in allowed:
            raise ContractError(f"{lam} is not a nontrivial admissible eigenvalue on {q}->{p}")


def enumerate_labellings(n: int) -> list[IsoLabelling]:
    """All labellings of ``n``: subgraphs, then vertex labels, then arc labels."""
    return list(iter_labellings(n))


def iter_labellings(n: int) -> Iterator[IsoLabelling]:
    if n < 1:
        raise ContractError(f"n must be positive, got {n}")
    if n == 1:
        yield IsoLabelling(1, None, ())
        return
    fac = factorize(n).as_dict()
    primes = sorted(fac)
    for gamma in short_spanning_subgraphs(pi_graph(n)):
        heads = gamma.terminal
        choices = [
            [PrimePowerLabel.standard(p, fac[p])]
            if p in heads
            else enumerate_prime_power_labels(p, fac[p])
            for p in primes
        ]
        arcs = sorted(gamma.arcs)
        for labels in itertools.product(*choices):
            by_prime = dict(zip(primes, labels))
            arc_choices = [
                [r.value for r in admissible_eigenvalues(by_prime[q], p, fac[p]) if r.value != 1]
                for q, p in arcs
            ]
            vertex_labels = tuple(zip(primes, labels))
            for lams in itertools.product(*arc_choices):
                yield IsoLabelling(n, gamma, vertex_labels, tuple(zip(arcs, lams)))


def count_labellings_by_subgraph(n: int) -> dict[ShortSubgraph, int]:
    """Number of labellings of each short spanning subgraph, without listing them.

    Follows the same loops as :func:`iter_labellings` but multiplies counts.
    """
    if n == 1:
        return {}
    fac = factorize(n).as_dict()
    out = {}
    for gamma in short_spanning_subgraphs(pi_graph(n)):
        total = 1
        for q in gamma.nonterminal:
            weight = 0
            for lab in enumerate_prime_power_labels(q, fac[q]):
                w = 1
                for _, p in gamma.arcs_from(q):
                    w *= len(admissible_eigenvalues(lab, p, fac[p])) - 1
                weight += w
            total *= weight
        out[gamma] = total
    return out


def trivial_triple() -> IsobicyclicTriple:
    G = close_generators(lambda a, b: 0, [], identity=0)
    return IsobicyclicTriple(G, 0, 0, 1, "1")


def cartesian_product(triples: Sequence[IsobicyclicTriple], verify: bool = True) -> IsobicyclicTriple:
    """Direct product with componentwise canonical generators."""
    triples = list(triples)
    if not triples:
        return trivial_triple()
    if len(triples) == 1:
        return triples[0]
    for a, b in itertools.combinations(triples, 2):
        if gcd(a.n, b.n) != 1:
            raise ContractError(f"orders {a.n} and {b.n} are not coprime")
    muls = [T.group.mul for T in triples]

    def rule(a, b):
        return tuple(m(i, j) for m, i, j in zip(muls, a, b))

    n = prod(T.n for T in triples)
    x = tuple(T.x for T in triples)
    y = tuple(T.y for T in triples)
    G = close_generators(
        rule, [x, y], identity=(0,) * len(triples), max_size=n * n, associativity_samples=0
    )
    name = " x ".join(T.name or f"T({T.n})" for T in triples)
    out = IsobicyclicTriple(G, G.index(x), G.index(y), n, name)
    if verify and not is_isobicyclic(G, out.x, out.y, n):
        raise ConstructionError("cartesian product is not isobicyclic")
    return out


def semidirect_product(
    S_triple: IsobicyclicTriple, t: int, lam: int | Residue, verify: bool = True
) -> IsobicyclicTriple:
    """Extend ``C_t x C_t`` by ``S`` acting diagonally with eigenvalue ``lam``.

    Elements are ``(a, b, s)`` meaning ``s * x_T^a * y_T^b``; ``x_S`` acts on
    ``C_t^2`` as ``diag(1, lam)`` and ``y_S`` as ``diag(lam, 1)``.  The canonical
    generators are ``x_S x_T`` and ``y_S y_T``.

    Raises:
        ContractError: ``s`` and ``t`` are not coprime or ``lam`` is not a unit.
        ConstructionError: the diagonal action does not extend to ``S``.
    """
    lam = lam.value if isinstance(lam, Residue) else lam % t
    S, s = S_triple.group, S_triple.n
    if gcd(s, t) != 1:
        raise ContractError(f"s={s} and t={t} are not coprime")
    if gcd(lam, t) != 1:
        raise ContractError(f"{lam} is not a unit mod {t}")

    # diagonal entries of psi(sigma), grown along a spanning tree of S
    psi = [None] * len(S)
    psi[0] = (1 % t, 1 % t)
    queue = [0]
    steps = [(S_triple.x, (1, lam)), (S_triple.y, (lam, 1))]
    for a in queue:
        da, db = psi[a]
        for g, (ga, gb) in steps:
            c = S.mul(a, g)
            val = (da * ga % t, db * gb % t)
            if psi[c] is None:
                psi[c] = val
                queue.append(c)
            elif psi[c] != val:
                raise ConstructionError(f"eigenvalue {lam} does not define an action of S")
    smul = S.mul

    def rule(u, v):
        d = psi[v[2]]
        return ((u[0] * d[0] + v[0]) % t, (u[1] * d[1] + v[1]) % t, smul(u[2], v[2]))

    n = s * t
    x, y = (1 % t, 0, S_triple.x), (0, 1 % t, S_triple.y)
    G = close_generators(rule, [x, y], identity=(0, 0, 0), max_size=n * n, associativity_samples=0)
    out = IsobicyclicTriple(G, G.index(x), G.index(y), n, f"S({t}):{lam} ({S_triple.name})")
    if verify and not is_isobicyclic(G, out.x, out.y, n):
        raise ConstructionError("semidirect product is not isobicyclic")
    return out


@dataclass(frozen=True)
class CanonicalDecomposition:
    s: int
    t: int
    s_factors: tuple[PrimePowerLabel, ...]
    lam: Residue
    pi: frozenset[int]
    lambda_order: int


def canonical_decomposition(L: IsoLabelling) -> CanonicalDecomposition:
    heads = sorted(L.terminal)
    fac = factorize(L.n).as_dict()
    t = prod(p ** fac[p] for p in heads)
    per_head = []
    orders = []
    for p in heads:
        mod = p ** fac[p]
        lam_p = 1
        for (q, pp), lam in L.arc_labels:
            if pp == p:
                lam_p = lam_p * lam % mod
        per_head.append(Residue(lam_p, mod))
        orders.append(multiplicative_order(Residue(lam_p, mod)))
    lam = crt_combine(per_head)
    s_factors = tuple(lab for p, lab in L.vertex_labels if p not in L.terminal)
    return CanonicalDecomposition(L.n // t, t, s_factors, lam, frozenset(heads), lcm(*orders))


@lru_cache(maxsize=128)
def triple_from_labelling(L: IsoLabelling, verify: bool = True) -> IsobicyclicTriple:
    dec = canonical_decomposition(L)
    factors = [build_prime_power_triple(lab) for lab in dec.s_factors]
    S = cartesian_product(factors, verify=verify)
    if dec.t == 1:
        return IsobicyclicTriple(S.group, S.x, S.y, S.n, L.descriptor)
    T = semidirect_product(S, dec.t, dec.lam, verify=verify)
    return IsobicyclicTriple(T.group, T.x, T.y, T.n, L.descriptor)


def sylow_triple(T: IsobicyclicTriple, p: int) -> IsobicyclicTriple:
    """Canonical Sylow ``p``-subtriple ``(P, x_p, y_p)`` with ``x_p`` the p-part of ``x``."""
    G, n = T.group, T.n
    pe = p ** factorize(n).exponent(p)
    a = crt_combine([Residue(1, pe), Residue(0, n // pe)]).value
    xp, yp = G.power(T.x, a), G.power(T.y, a)
    P = subgroup(G, [xp, yp], max_size=pe * pe + 1)
    return IsobicyclicTriple(P, P.index(xp), P.index(yp), pe, f"Sylow {p} of {T.name}")


def identify_prime_power(T: IsobicyclicTriple) -> PrimePowerLabel:
    """Catalogue label of a prime-power triple."""
    (p, e), = factorize(T.n).pairs
    for lab in enumerate_prime_power_labels(p, e):
        if triples_isomorphic(build_prime_power_triple(lab), T):
            return lab
    raise ClassificationViolation(f"{p}^{e} triple matches no catalogued label")


def labelling_from_triple(T: IsobicyclicTriple) -> IsoLabelling:
    """Read the labelling off a triple via its canonical Sylow generators."""
    n, G = T.n, T.group
    if n == 1:
        return IsoLabelling(1, None, ())
    fac = factorize(n).as_dict()
    primes = sorted(fac)
    parts = {}
    for p in primes:
        pe = p ** fac[p]
        a = crt_combine([Residue(1, pe), Residue(0, n // pe)]).value
        parts[p] = (G.power(T.x, a), G.power(T.y, a))
    labels = tuple((p, identify_prime_power(sylow_triple(T, p))) for p in primes)

    arcs = []
    for p in primes:
        xp, yp = parts[p]
        xpos = {g: i for i, g in enumerate(G.cyclic_subgroup(xp))}
        ypos = {g: i for i, g in enumerate(G.cyclic_subgroup(yp))}
        for q in primes:
            if (p - 1) % q:
                continue
            xq, yq = parts[q]
            lam = xpos.get(G.conj(xp, yq))
            lam_y = ypos.get(G.conj(yp, xq))
            if lam is None or lam != lam_y or G.conj(xp, xq) != xp or G.conj(yp, yq) != yp:
                raise ClassificationViolation(f"Sylow {q} does not act diagonally on Sylow {p}")
            if lam != 1:
                arcs.append(((q, p), lam))
    arcs.sort()
    try:
        gamma = ShortSubgraph(pi_graph(n), tuple(a for a, _ in arcs))
        return IsoLabelling(n, gamma, labels, tuple(arcs))
    except ContractError as exc:
        raise ClassificationViolation(f"triple yields an invalid labelling: {exc}") from exc
