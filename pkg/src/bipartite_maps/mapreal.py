"""Oriented maps of K_{n,n} and their face structure.

Darts are numbered ``2*edge + end`` with ``end = 0`` at the black vertex and
``end = 1`` at the white one, so the edge involution is ``d ^ 1`` and the colour
of a dart is its parity.  For a triple ``(G, x, y)`` the edges are the group
elements, black vertices the cosets ``gX`` and white vertices the cosets
``gY``; rotating around ``gX`` sends edge ``g`` to ``g*x`` (and ``g*y`` at
white vertices).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

from .errors import ContractError, RegularityViolation
from .groups import IsobicyclicTriple
from .labelling import IsoLabelling
from .numthy import pi_part, prime_divisors


class OrientedMap:
    """Rotation system on the darts of a bipartite map with ``2*n*n`` darts."""

    def __init__(self, n: int, rotation, edge_swap=None):
        self.n = n
        self.rotation = tuple(rotation)
        if edge_swap is None:
            edge_swap = tuple(d ^ 1 for d in range(len(self.rotation)))
        self.edge_swap = tuple(edge_swap)

    def __len__(self) -> int:
        return len(self.rotation)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        """Vertex id per dart; ids follow the smallest dart of each rotation orbit."""
        out = [-1] * len(self)
        vid = 0
        for d in range(len(self)):
            if out[d] == -1:
                c = d
                while out[c] == -1:
                    out[c] = vid
                    c = self.rotation[c]
                vid += 1
        return tuple(out)

    def color(self, dart: int) -> int:
        """0 for a dart at a black vertex, 1 at a white vertex."""
        return dart & 1

    def edge_of(self, dart: int) -> int:
        return dart >> 1

    def vertex_count(self) -> int:
        return max(self.vertex_of) + 1 if self.rotation else 0

    def validate(self) -> None:
        """Check the rotation is colour-preserving and the graph is K_{n,n}."""
        n, D = self.n, len(self)
        if D != 2 * n * n or sorted(self.rotation) != list(range(D)):
            raise ContractError("rotation is not a permutation of 2n^2 darts")
        for d in range(D):
            s = self.edge_swap[d]
            if s == d or self.edge_swap[s] != d or (s ^ d) & 1 != 1:
                raise ContractError("edge_swap must pair each black dart with a white one")
            if self.rotation[d] & 1 != d & 1:
                raise ContractError("rotation must preserve dart colour")
        sizes = {}
        for d in range(D):
            sizes[self.vertex_of[d]] = sizes.get(self.vertex_of[d], 0) + 1
        if len(sizes) != 2 * n or set(sizes.values()) != {n}:
            raise ContractError("vertex stars must be 2n stars of size n")
        pairs = {(self.vertex_of[d], self.vertex_of[self.edge_swap[d]]) for d in range(0, D) if d & 1 == 0}
        if len(pairs) != n * n:
            raise ContractError("underlying graph is not K_{n,n}")

    def face_permutation(self) -> list[int]:
        rot, swap = self.rotation, self.edge_swap
        return [rot[swap[d]] for d in range(len(self))]

    def faces(self) -> list[list[int]]:
        """Face boundaries as dart cycles, each starting at its smallest dart."""
        phi = self.face_permutation()
        seen = [False] * len(self)
        out = []
        for d in range(len(self)):
            if not seen[d]:
                cycle = []
                c = d
                while not seen[c]:
                    seen[c] = True
                    cycle.append(c)
                    c = phi[c]
                out.append(cycle)
        return out


@dataclass(frozen=True)
class MapInvariants:
    face_length: int
    face_count: int
    euler: int
    genus: int
    type: tuple[int, int]


def realize_map(T: IsobicyclicTriple) -> OrientedMap:
    G, n = T.group, T.n
    rotation = [0] * (2 * len(G))
    for g in range(len(G)):
        rotation[2 * g] = 2 * G.mul(g, T.x)
        rotation[2 * g + 1] = 2 * G.mul(g, T.y) + 1
    return OrientedMap(n, rotation)


def trace_faces(M: OrientedMap) -> MapInvariants:
    """Face structure, Euler characteristic and genus of a regular map.

    Raises:
        RegularityViolation: faces of different lengths, or an Euler
            characteristic that disagrees with the closed form.
    """
    n = M.n
    faces = M.faces()
    lengths = {len(f) for f in faces}
    if len(lengths) != 1:
        raise RegularityViolation(f"faces of unequal lengths {sorted(lengths)}")
    face_length = lengths.pop()
    m = face_length // 2
    V, E, F = M.vertex_count(), len(M) // 2, len(faces)
    euler = V - E + F
    if euler != 2 * n - n * n + Fraction(n * n, m):
        raise RegularityViolation(f"Euler characteristic {euler} disagrees with 2n - n^2 + n^2/m")
    if euler % 2:
        raise RegularityViolation(f"odd Euler characteristic {euler} on an orientable surface")
    return MapInvariants(face_length, F, euler, 1 - euler // 2, (face_length, n))


def predicted_invariants(L: IsoLabelling) -> MapInvariants:
    """Type and genus from the labelling alone.

    ``m = |xy|`` is ``n_{pi'}`` unless the Sylow 2-label is non-metacyclic, where
    it is ``2 n_{pi*}`` (k = l) or ``4 n_{pi*}`` (k != l), with ``pi`` the arc heads
    and ``pi* = pi' minus {2}``.
    """
    n = L.n
    heads = set(L.terminal)
    primes = set(prime_divisors(n)) if n > 1 else set()
    lab2 = dict(L.vertex_labels).get(2)
    half = Fraction(n, 2)
    if lab2 is None or lab2.is_metacyclic:
        m = pi_part(n, primes - heads)
        genus = 1 + half * (n - pi_part(n, heads) - 2)
    else:
        star = pi_part(n, primes - heads - {2})
        plus = pi_part(n, heads | {2})
        if lab2.k == lab2.l:
            m = 2 * star
            genus = 1 + half * (n - Fraction(plus, 2) - 2)
        else:
            m = 4 * star
            genus = 1 + half * (n - Fraction(plus, 4) - 2)
    euler = 2 * n - n * n + n * n // m
    if genus.denominator != 1 or 2 - 2 * genus != euler:
        raise RegularityViolation(f"closed forms disagree for {L}")
    return MapInvariants(2 * m, n * n // m, euler, int(genus), (2 * m, n))


def predicted_xy_order(L: IsoLabelling) -> int:
    """``|xy|`` as the product of the Sylow contributions over non-head vertices."""
    out = 1
    for p, lab in L.vertex_labels:
        if p in L.terminal:
            continue
        if lab.is_metacyclic:
            out *= lab.n
        else:
            out *= 2 if lab.k == lab.l else 4
    return out


def map_to_dict(M: OrientedMap, labelling: Optional[str] = None) -> dict:
    """JSON-ready export; dart id is ``2*edge + end``."""
    inv = trace_faces(M)
    black, white = [], []
    seen = set()
    for d in range(len(M)):
        v = M.vertex_of[d]
        if v in seen:
            continue
        seen.add(v)
        ring = []
        c = d
        while True:
            ring.append(c >> 1)
            c = M.rotation[c]
            if c == d:
                break
        (black if d % 2 == 0 else white).append(ring)
    return {
        "n": M.n,
        "labelling": labelling,
        "black": [{"id": i, "rotation": r} for i, r in enumerate(black)],
        "white": [{"id": i, "rotation": r} for i, r in enumerate(white)],
        "faces": M.faces(),
        "type": list(inv.type),
        "genus": inv.genus,
    }


def map_to_json(M: OrientedMap, labelling: Optional[str] = None) -> str:
    return json.dumps(map_to_dict(M, labelling), separators=(",", ":")) + "\n"
