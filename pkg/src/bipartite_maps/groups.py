"""A small finite-group engine.

Groups are built by closing a list of generators under a user supplied
multiplication rule on hashable encodings.  Elements are then addressed by
their breadth-first discovery index, with the identity at index 0.  Nothing
here knows about maps; the rest of the package only asks for products,
orders and generator-anchored morphisms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Optional, Sequence

from .errors import AxiomError, ContractError, SizeOverflowError

DEFAULT_MAX_SIZE = 2 * 120**2

Rule = Callable[[Hashable, Hashable], Hashable]


class FiniteGroup:
    """Finite group given by element encodings and a multiplication rule.

    Attributes:
        elements: encodings, in breadth-first discovery order.
        generators: indices of the generators, in the order supplied.
        inverse: inverse of every element, by index.
        right: ``right[k][i]`` is the index of ``elements[i] * generators[k]``.
    """

    def __init__(self, elements, index, rule, generators, parent, via, inverse, right):
        self.elements = elements
        self._index = index
        self.rule = rule
        self.generators = generators
        self._parent = parent
        self._via = via
        self.inverse = inverse
        self.right = right
        self._gen_pos = {g: k for k, g in reversed(list(enumerate(generators)))}

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={len(self)}, generators={len(self.generators)})"

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, encoding: Hashable) -> int:
        return self._index[encoding]

    def mul(self, i: int, j: int) -> int:
        k = self._gen_pos.get(j)
        if k is not None:
            return self.right[k][i]
        return self._index[self.rule(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        return self.inverse[i]

    def power(self, i: int, k: int) -> int:
        if k < 0:
            i, k = self.inverse[i], -k
        out = 0
        while k:
            if k & 1:
                out = self.mul(out, i)
            i = self.mul(i, i)
            k >>= 1
        return out

    def conj(self, a: int, b: int) -> int:
        """``a ** b``, i.e. ``b**-1 * a * b``."""
        return self.mul(self.mul(self.inverse[b], a), b)

    def element_order(self, g: int) -> int:
        k, h = 1, g
        while h != 0:
            h = self.mul(h, g)
            k += 1
        return k

    def cyclic_subgroup(self, g: int) -> list[int]:
        """Powers ``g**0, g**1, ...`` up to the order of ``g``."""
        out = [0]
        h = g
        while h != 0:
            out.append(h)
            h = self.mul(h, g)
        return out

    def word(self, i: int) -> tuple[int, ...]:
        """Normal-form word (generator positions) evaluating to element ``i``."""
        out = []
        while i != 0:
            out.append(self._via[i])
            i = self._parent[i]
        return tuple(reversed(out))

    def evaluate(self, word: Iterable[int]) -> int:
        out = 0
        for k in word:
            out = self.right[k][out]
        return out

    def verify_associativity(self, samples: Optional[int] = 256, seed: int = 0) -> bool:
        """Light's test ``(a*b)*s == a*(b*s)`` for generators ``s``.

        With ``samples=None`` every pair ``a, b`` is checked, which proves
        associativity; otherwise that many random pairs are tried.
        """
        n = len(self)
        if samples is None:
            pairs = ((a, b) for a in range(n) for b in range(n))
        else:
            rng = random.Random(seed)
            pairs = ((rng.randrange(n), rng.randrange(n)) for _ in range(samples))
        for a, b in pairs:
            ab = self.mul(a, b)
            for k in range(len(self.generators)):
                if self.right[k][ab] != self.mul(a, self.right[k][b]):
                    return False
        return True


def close_generators(
    rule: Rule,
    gens: Sequence[Hashable],
    identity: Optional[Hashable] = None,
    max_size: int = DEFAULT_MAX_SIZE,
    associativity_samples: Optional[int] = 64,
) -> FiniteGroup:
    """Close ``gens`` under ``rule`` and return the generated group.

    Element numbering is breadth-first from the identity, trying generators in
    the order given, so the result is fully deterministic.  The identity and
    inverse laws are verified on the whole closure and associativity on a
    random sample (``associativity_samples=None`` checks it fully).

    Raises:
        SizeOverflowError: the closure grows past ``max_size`` elements.
        AxiomError: the rule breaks the group axioms on the closure.
    """
    gens = list(gens)
    if identity is None:
        if not gens:
            raise ContractError("cannot infer the identity without generators")
        identity = _identity_from_cycle(rule, gens[0], max_size)

    elements = [identity]
    index = {identity: 0}
    parent = [-1]
    via = [-1]
    right = [[] for _ in gens]
    i = 0
    while i < len(elements):
        a = elements[i]
        for k, s in enumerate(gens):
            c = rule(a, s)
            j = index.get(c)
            if j is None:
                j = len(elements)
                if j >= max_size:
                    raise SizeOverflowError(
                        f"closure exceeds {max_size} elements"
                    )
                index[c] = j
                elements.append(c)
                parent.append(i)
                via.append(k)
            right[k].append(j)
        i += 1

    for a in elements:
        if rule(identity, a) != a or rule(a, identity) != a:
            raise AxiomError(f"identity law fails at {a!r}")

    # inverse of a = b*s is s**-1 * b**-1
    gen_inv = []
    for k in range(len(gens)):
        prev, cur = 0, right[k][0]
        while cur != 0:
            prev, cur = cur, right[k][cur]
        gen_inv.append(prev)
    inverse = [0] * len(elements)
    for j in range(1, len(elements)):
        c = rule(elements[gen_inv[via[j]]], elements[inverse[parent[j]]])
        inv = index.get(c)
        if inv is None or rule(elements[j], c) != identity:
            raise AxiomError(f"no inverse found for {elements[j]!r}")
        inverse[j] = inv

    group = FiniteGroup(
        elements=tuple(elements),
        index=index,
        rule=rule,
        generators=tuple(index[g] for g in gens),
        parent=tuple(parent),
        via=tuple(via),
        inverse=tuple(inverse),
        right=tuple(tuple(r) for r in right),
    )
    if associativity_samples != 0 and not group.verify_associativity(associativity_samples):
        raise AxiomError("multiplication rule is not associative")
    return group


def _identity_from_cycle(rule: Rule, g: Hashable, max_size: int) -> Hashable:
    prev, cur = g, rule(g, g)
    for _ in range(max_size):
        if cur == g:
            return prev
        prev, cur = cur, rule(cur, g)
    raise SizeOverflowError(f"generator order exceeds {max_size}")


def subgroup(group: FiniteGroup, gens: Sequence[int], max_size: int = DEFAULT_MAX_SIZE) -> FiniteGroup:
    """Subgroup generated by element indices of ``group``; encodings are those indices."""
    return close_generators(group.mul, gens, identity=0, max_size=max_size, associativity_samples=0)


@dataclass(frozen=True, eq=False)
class GroupMorphism:
    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]
    bijective: bool

    def __call__(self, i: int) -> int:
        return self.images[i]


def extend_generator_map(
    A: FiniteGroup, B: FiniteGroup, pairs: Mapping[int, int] | Sequence[tuple[int, int]]
) -> Optional[GroupMorphism]:
    """Extend an assignment on generating elements to a homomorphism ``A -> B``.

    The keys of ``pairs`` are taken as the generating set of ``A``.  The map is
    grown along a breadth-first spanning tree and every edge ``a -> a*s`` is
    checked against ``phi(a) * phi(s)``; this covers all generator steps and so
    proves the homomorphism property.  Returns ``None`` when the assignment does
    not extend, or when the keys fail to generate ``A``.
    """
    items = list(pairs.items()) if isinstance(pairs, Mapping) else list(pairs)
    img = [-1] * len(A)
    img[0] = 0
    queue = [0]
    amul, bmul = A.mul, B.mul
    for a in queue:
        ia = img[a]
        for s, t in items:
            c = amul(a, s)
            d = bmul(ia, t)
            seen = img[c]
            if seen == -1:
                img[c] = d
                queue.append(c)
            elif seen != d:
                return None
    if len(queue) != len(A):
        return None
    bijective = len(A) == len(B) and len(set(img)) == len(B)
    return GroupMorphism(A, B, tuple(img), bijective)


@dataclass(frozen=True, eq=False)
class IsobicyclicTriple:
    """A group with two canonical generators ``x``, ``y`` of order ``n``.

    ``name`` is a free-form tag set by constructors, used only in reprs.
    """

    group: FiniteGroup
    x: int
    y: int
    n: int
    name: str = ""

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<IsobicyclicTriple n={self.n} |G|={len(self.group)}{tag}>"

    def with_generators(self, x: int, y: int, name: str = "") -> "IsobicyclicTriple":
        return IsobicyclicTriple(self.group, x, y, self.n, name)


def element_order(G: FiniteGroup, g: int) -> int:
    return G.element_order(g)


def is_isobicyclic(G: FiniteGroup, x: int, y: int, n: int) -> bool:
    if len(G) != n * n:
        return False
    X = G.cyclic_subgroup(x)
    Y = G.cyclic_subgroup(y)
    if len(X) != n or len(Y) != n:
        return False
    if set(X) & set(Y) != {0}:
        return False
    covered = {G.mul(a, b) for a in X for b in Y}
    if len(covered) != len(G):
        return False
    swap = extend_generator_map(G, G, [(x, y), (y, x)])
    return swap is not None and swap.bijective


def triples_isomorphic(T1: IsobicyclicTriple, T2: IsobicyclicTriple) -> bool:
    if T1.n != T2.n:
        raise ContractError(f"triples have different n: {T1.n} vs {T2.n}")
    if len(T1.group) != len(T2.group):
        return False
    phi = extend_generator_map(T1.group, T2.group, [(T1.x, T2.x), (T1.y, T2.y)])
    return phi is not None and phi.bijective
