"""Divisibility digraphs on primes.

``pi_graph(n)`` has the primes dividing ``n`` as vertices and an arc ``q -> p``
whenever ``q | p - 1``, labelled by the exponent ``r`` with ``q**r || p - 1``.
The inverse problem (which labelled digraphs arise this way) and the finite
extension-property witnesses for the odd-prime graph live here too.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Optional, Sequence

from .errors import ContractError, NotRealizableError, ScaleError, SearchExhaustedError
from .numthy import Residue, crt_combine, exact_power, is_prime, lcm, prime_divisors

DEFAULT_PRIME_BOUND = 10**5
DEFAULT_MAX_VERTICES = 8


@dataclass(frozen=True)
class PrimeDigraph:
    vertices: tuple[int, ...]
    arcs: tuple[tuple[tuple[int, int], int], ...]

    @property
    def arc_labels(self) -> dict[tuple[int, int], int]:
        return dict(self.arcs)

    @property
    def arc_list(self) -> tuple[tuple[int, int], ...]:
        return tuple(a for a, _ in self.arcs)

    def label(self, q: int, p: int) -> int:
        """``r(q, p)``, or 0 when there is no arc."""
        return self.arc_labels.get((q, p), 0)

    def as_labelled(self) -> "LabelledDigraph":
        return LabelledDigraph(self.vertices, dict(self.arcs))

    def to_dot(self, name: str = "Pi") -> str:
        lines = [f"digraph {name} {{"]
        lines += [f'  "{v}";' for v in self.vertices]
        lines += [f'  "{q}" -> "{p}" [label="{r}"];' for (q, p), r in self.arcs]
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ShortSubgraph:
    """Spanning subgraph with no directed path of length two."""

    parent: PrimeDigraph
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        missing = set(self.arcs) - set(self.parent.arc_list)
        if missing:
            raise ContractError(f"arcs {sorted(missing)} are not in the parent graph")
        if self.terminal & {q for q, _ in self.arcs}:
            raise ContractError("subgraph contains a directed path of length 2")

    @property
    def terminal(self) -> frozenset[int]:
        return frozenset(p for _, p in self.arcs)

    @property
    def nonterminal(self) -> tuple[int, ...]:
        heads = self.terminal
        return tuple(v for v in self.parent.vertices if v not in heads)

    def arcs_from(self, q: int) -> tuple[tuple[int, int], ...]:
        return tuple(a for a in self.arcs if a[0] == q)

    def arcs_into(self, p: int) -> tuple[tuple[int, int], ...]:
        return tuple(a for a in self.arcs if a[1] == p)


def pi_graph(n: int) -> PrimeDigraph:
    if n < 2:
        raise ContractError(f"pi_graph needs n >= 2, got {n}")
    return prime_digraph(prime_divisors(n))


def prime_digraph(primes: Iterable[int]) -> PrimeDigraph:
    """Divisibility digraph on a set of primes; ``pi_graph(n)`` on the primes of ``n``.

    Useful when ``n`` is too large to factor but its primes are known.
    """
    ps = tuple(sorted(set(primes)))
    arcs = tuple(
        ((q, p), exact_power(q, p - 1)) for q in ps for p in ps if q != p and (p - 1) % q == 0
    )
    return PrimeDigraph(ps, arcs)


def short_spanning_subgraphs(g: PrimeDigraph) -> list[ShortSubgraph]:
    """All short spanning subgraphs, by arc count then lexicographically."""
    arcs = sorted(g.arc_list)
    out = []
    for size in range(len(arcs) + 1):
        for chosen in itertools.combinations(arcs, size):
            heads = {p for _, p in chosen}
            if not heads & {q for q, _ in chosen}:
                out.append(ShortSubgraph(g, chosen))
    return out


@dataclass
class LabelledDigraph:
    """Abstract digraph with positive-integer arc labels.

    Vertex ids are arbitrary hashables; their listed order is used for every
    deterministic tie-break.
    """

    vertices: tuple
    arcs: dict = field(default_factory=dict)

    def __post_init__(self):
        self.vertices = tuple(self.vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ContractError("duplicate vertex ids")
        vs = set(self.vertices)
        for (u, v), r in self.arcs.items():
            if u not in vs or v not in vs or u == v:
                raise ContractError(f"bad arc {u!r}->{v!r}")
            if not isinstance(r, int) or r < 1:
                raise ContractError(f"arc label must be a positive integer, got {r!r}")

    @classmethod
    def from_json(cls, text: str) -> "LabelledDigraph":
        data = json.loads(text)
        arcs = {(a["from"], a["to"]): int(a.get("label", 1)) for a in data.get("arcs", [])}
        return cls(tuple(data["vertices"]), arcs)

    def to_json(self) -> str:
        arcs = [{"from": u, "to": v, "label": r} for (u, v), r in self.arcs.items()]
        return json.dumps({"vertices": list(self.vertices), "arcs": arcs})

    def predecessors(self, v) -> list:
        return [u for (u, w) in self.arcs if w == v]

    def topological_order(self) -> list:
        """Kahn's algorithm, ties broken by listed vertex order."""
        indeg = {v: 0 for v in self.vertices}
        for _, w in self.arcs:
            indeg[w] += 1
        order = []
        ready = [v for v in self.vertices if indeg[v] == 0]
        while ready:
            v = ready.pop(0)
            order.append(v)
            for (u, w) in self.arcs:
                if u == v:
                    indeg[w] -= 1
                    if indeg[w] == 0:
                        ready.append(w)
            ready.sort(key=self.vertices.index)
        if len(order) != len(self.vertices):
            raise NotRealizableError("digraph has a directed cycle")
        return order

    def is_acyclic(self) -> bool:
        try:
            self.topological_order()
        except NotRealizableError:
            return False
        return True


def labelled_isomorphism(a: LabelledDigraph, b: LabelledDigraph) -> Optional[dict]:
    """A label-preserving vertex bijection ``a -> b``, by exhaustive search."""
    if len(a.vertices) != len(b.vertices) or len(a.arcs) != len(b.arcs):
        return None
    for image in itertools.permutations(b.vertices):
        m = dict(zip(a.vertices, image))
        if all(b.arcs.get((m[u], m[v])) == r for (u, v), r in a.arcs.items()):
            return m
    return None


def is_even_realizable(delta: LabelledDigraph) -> bool:
    """Whether ``delta`` could be ``pi_graph(n)`` for even ``n``.

    Needs acyclicity plus a vertex (playing the prime 2) with an arc to every
    other vertex.
    """
    if not delta.is_acyclic():
        return False
    others = len(delta.vertices) - 1
    return any(
        sum(1 for (x, _) in delta.arcs if x == u) == others for u in delta.vertices
    )


def realize_digraph(
    delta: LabelledDigraph,
    strategy: str = "proof",
    prime_bound: int = DEFAULT_PRIME_BOUND,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    allow_even: bool = False,
) -> tuple[int, dict]:
    """Find ``n`` with ``pi_graph(n)`` isomorphic to ``delta``.

    ``strategy="proof"`` adds vertices in topological order, choosing each new
    prime ``p`` as the least one above all earlier primes with
    ``p = q**r + 1 (mod q**(r+1))`` for every earlier prime ``q`` (``r = 0`` when
    there is no arc).  ``strategy="minimal"`` searches for the least such ``n``.

    Returns:
        ``(n, mapping)`` where ``mapping`` sends each vertex of ``delta`` to its prime.

    Raises:
        NotRealizableError: ``delta`` has a directed cycle.
        SearchExhaustedError: no realization among primes below ``prime_bound``.
    """
    order = delta.topological_order()
    if strategy == "proof":
        return _realize_by_congruences(delta, order, prime_bound)
    if strategy == "minimal":
        if len(delta.vertices) > max_vertices:
            raise ScaleError(f"minimal search is capped at {max_vertices} vertices")
        return _realize_minimal(delta, prime_bound, allow_even)
    raise ContractError(f"unknown strategy {strategy!r}")


def _realize_by_congruences(delta, order, prime_bound):
    mapping: dict = {}
    for v in order:
        congruences = [Residue(1, 2)]
        for w, q in mapping.items():
            r = delta.arcs.get((w, v), 0)
            congruences.append(Residue(q**r + 1, q ** (r + 1)))
        target = crt_combine(congruences)
        floor = max(mapping.values(), default=2)
        p = target.value
        if p <= floor:
            p += ((floor - p) // target.modulus + 1) * target.modulus
        while not is_prime(p):
            p += target.modulus
            if p >= prime_bound:
                raise SearchExhaustedError(f"no prime below {prime_bound} for vertex {v!r}")
        if p >= prime_bound:
            raise SearchExhaustedError(f"no prime below {prime_bound} for vertex {v!r}")
        mapping[v] = p
    n = 1
    for p in mapping.values():
        n *= p
    return n, mapping


def _linear_extensions(delta) -> Iterator[tuple]:
    verts = list(delta.vertices)
    preds = {v: set(delta.predecessors(v)) for v in verts}

    def extend(order, placed):
        if len(order) == len(verts):
            yield tuple(order)
            return
        for v in verts:
            if v not in placed and preds[v] <= placed:
                order.append(v)
                placed.add(v)
                yield from extend(order, placed)
                placed.discard(v)
                order.pop()

    return extend([], set())


def _realize_minimal(delta, prime_bound, allow_even):
    """Least ``n`` realizing ``delta``, by branch and bound.

    Primes grow along the arcs, so in a minimal realization the primes in
    increasing order list the vertices in some topological order.  For each
    such order the search assigns increasing primes, stepping through the
    progression ``p = 1 (mod prod q^r)`` forced by the incoming arcs, and the
    cap on ``n`` is raised until a realization appears.
    """
    verts = list(delta.vertices)
    if not verts:
        return 1, {}
    k = len(verts)
    orders = list(_linear_extensions(delta))
    try:
        ceiling, _ = _realize_by_congruences(delta, orders[0], prime_bound)
        ceiling += 1
    except SearchExhaustedError:
        ceiling = prime_bound**k

    def forced_step(v, mapping):
        step = 2
        for w, q in mapping.items():
            step = lcm(step, q ** delta.arcs.get((w, v), 0))
        return step

    def lower_bound(order, idx, p, product, mapping):
        # each later prime exceeds p and its forced modulus
        mapping[order[idx]] = p
        out = product * p
        for u in order[idx + 1 :]:
            least = max(p + 2, forced_step(u, mapping) + 1)
            if least >= prime_bound:
                out = math.inf
                break
            out *= least
        del mapping[order[idx]]
        return out

    def search(cap):
        best = [cap, None]

        def dfs(order, idx, prev, product, mapping):
            if idx == k:
                best[0], best[1] = product, dict(mapping)
                return
            v = order[idx]
            step = forced_step(v, mapping)
            candidates = []
            if allow_even and idx == 0:
                candidates = [2]
            p = prev + 1 + (1 - (prev + 1)) % step  # least p > prev with p = 1 mod step
            candidates = itertools.chain(candidates, itertools.count(p, step))
            for p in candidates:
                if p >= prime_bound or lower_bound(order, idx, p, product, mapping) >= best[0]:
                    return
                if p <= prev or not is_prime(p):
                    continue
                if all(delta.arcs.get((w, v), 0) == exact_power(q, p - 1) for w, q in mapping.items()):
                    mapping[v] = p
                    dfs(order, idx + 1, p, product * p, mapping)
                    del mapping[v]

        for order in orders:
            dfs(order, 0, 1, 1, {})
        return best

    cap = min(ceiling, 10 ** (k + 1))
    while True:
        n, mapping = search(cap)
        if mapping is not None:
            return n, mapping
        if cap >= ceiling:
            raise SearchExhaustedError(f"no realization with primes below {prime_bound}")
        cap = min(ceiling, cap * 100)


def realize_underlying_graph(
    vertices: Sequence[Hashable],
    edges: Iterable[tuple[Hashable, Hashable]],
    strategy: str = "minimal",
    prime_bound: int = DEFAULT_PRIME_BOUND,
) -> tuple[int, dict]:
    """Realize an undirected graph as the underlying graph of some ``pi_graph(n)``.

    Each edge is oriented from the earlier to the later vertex in ``vertices``
    and labelled 1.
    """
    pos = {v: i for i, v in enumerate(vertices)}
    arcs = {}
    for u, v in edges:
        if u == v:
            raise ContractError("graph must be simple")
        a, b = (u, v) if pos[u] < pos[v] else (v, u)
        arcs[(a, b)] = 1
    return realize_digraph(LabelledDigraph(tuple(vertices), arcs), strategy, prime_bound)


def extension_witness(U: Iterable[int], V: Iterable[int], bound: int = DEFAULT_PRIME_BOUND) -> int:
    """Least odd prime adjacent (in the odd-prime divisibility graph) to all of ``U``
    and to none of ``V``.

    Candidates are scanned in the class ``p = 1 (mod u)``, ``p = -1 (mod v)``.
    """
    U, V = sorted(set(U)), sorted(set(V))
    if set(U) & set(V):
        raise ContractError("U and V must be disjoint")
    for q in U + V:
        if q == 2 or not is_prime(q):
            raise ContractError(f"{q} is not an odd prime")
    target = crt_combine([Residue(1, 2)] + [Residue(1, u) for u in U] + [Residue(-1, v) for v in V])
    taken = set(U) | set(V)
    p = target.value
    while p < bound:
        if p > 2 and p not in taken and is_prime(p) and _witnesses(p, U, V):
            return p
        p += target.modulus
    raise SearchExhaustedError(f"no witness below {bound}")


def _witnesses(p: int, U, V) -> bool:
    return (
        all((p - 1) % u == 0 for u in U)
        and all((p - 1) % v != 0 for v in V)
        and all((v - 1) % p != 0 for v in V)
    )
