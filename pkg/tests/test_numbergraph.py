import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipartite_maps.errors import ContractError, NotRealizableError, SearchExhaustedError
from bipartite_maps.numbergraph import (
    LabelledDigraph,
    extension_witness,
    is_even_realizable,
    labelled_isomorphism,
    pi_graph,
    prime_digraph,
    realize_digraph,
    realize_underlying_graph,
    short_spanning_subgraphs,
)
from bipartite_maps.numthy import exact_power, factorize, is_prime, primes_below

ODD_PRIMES_50 = [p for p in primes_below(50) if p != 2]


def random_dag(rng, k, labels=(1, 2)):
    vs = tuple("abcd"[:k])
    arcs = {}
    for i, j in itertools.combinations(range(k), 2):
        if rng.random() < 0.5:
            arcs[(vs[i], vs[j])] = rng.choice(labels)
    return LabelledDigraph(vs, arcs)


class TestPiGraph:
    def test_hundred_five(self):
        g = pi_graph(105)
        assert g.vertices == (3, 5, 7)
        assert g.arcs == (((3, 7), 1),)

    def test_ninety(self):
        g = pi_graph(90)
        assert g.vertices == (2, 3, 5)
        assert g.arc_labels == {(2, 3): 1, (2, 5): 2}

    def test_prime(self):
        g = pi_graph(13)
        assert g.vertices == (13,) and g.arcs == ()

    def test_rejects_one(self):
        with pytest.raises(ContractError):
            pi_graph(1)

    @given(st.integers(2, 10**6))
    def test_arcs_exact_and_increasing(self, n):
        g = pi_graph(n)
        assert g.as_labelled().is_acyclic()
        for (q, p), r in g.arcs:
            assert q < p and (p - 1) % q**r == 0 and (p - 1) % q ** (r + 1) != 0
        assert g == prime_digraph(factorize(n).primes)

    def test_dot(self):
        dot = pi_graph(105).to_dot("Pi_105")
        assert dot.startswith("digraph Pi_105 {")
        assert '"3" -> "7" [label="1"];' in dot


class TestShortSubgraphs:
    def test_ninety(self):
        arcs = [s.arcs for s in short_spanning_subgraphs(pi_graph(90))]
        assert arcs == [(), ((2, 3),), ((2, 5),), ((2, 3), (2, 5))]

    def test_prime(self):
        assert len(short_spanning_subgraphs(pi_graph(7))) == 1

    def test_hundred_five(self):
        assert [s.arcs for s in short_spanning_subgraphs(pi_graph(105))] == [(), ((3, 7),)]

    def test_terminal_and_nonterminal(self):
        s = short_spanning_subgraphs(pi_graph(90))[3]
        assert s.terminal == {3, 5}
        assert s.nonterminal == (2,)

    @pytest.mark.parametrize("n", [2 * 3 * 7 * 43, 3 * 7 * 43, 2 * 3 * 5 * 7 * 11, 2 * 3 * 7 * 13 * 43])
    def test_exhaustive_against_subsets(self, n):
        g = pi_graph(n)
        expected = 0
        for k in range(len(g.arc_list) + 1):
            for chosen in itertools.combinations(g.arc_list, k):
                heads = {p for _, p in chosen}
                tails = {q for q, _ in chosen}
                expected += not (heads & tails)
        got = short_spanning_subgraphs(g)
        assert len(got) == expected
        for s in got:
            assert not (s.terminal & {q for q, _ in s.arcs})

    def test_single_tail_power_of_two(self):
        # every arc leaves 2, so every subset is short
        g = pi_graph(2 * 3 * 5 * 17)
        assert all(q == 2 for q, _ in g.arc_list)
        assert len(short_spanning_subgraphs(g)) == 2 ** len(g.arc_list)


class TestLabelledDigraph:
    def test_json_round_trip(self):
        d = LabelledDigraph(("a", "b"), {("a", "b"): 2})
        assert LabelledDigraph.from_json(d.to_json()) == d

    def test_cycle(self):
        d = LabelledDigraph(("a", "b"), {("a", "b"): 1, ("b", "a"): 1})
        assert not d.is_acyclic()
        with pytest.raises(NotRealizableError):
            realize_digraph(d)

    def test_bad_label(self):
        with pytest.raises(ContractError):
            LabelledDigraph(("a", "b"), {("a", "b"): 0})

    def test_isomorphism_respects_labels(self):
        a = LabelledDigraph(("a", "b"), {("a", "b"): 1})
        b = LabelledDigraph(("x", "y"), {("y", "x"): 1})
        c = LabelledDigraph(("x", "y"), {("y", "x"): 2})
        assert labelled_isomorphism(a, b) == {"a": "y", "b": "x"}
        assert labelled_isomorphism(a, c) is None

    def test_even_realizable(self):
        assert is_even_realizable(pi_graph(2 * 3 * 5).as_labelled())
        assert not is_even_realizable(LabelledDigraph(("a", "b", "c"), {("a", "b"): 1}))


class TestRealizeDigraph:
    def test_single_vertex(self):
        assert realize_digraph(LabelledDigraph(("a",), {}), strategy="minimal")[0] == 3

    def test_one_arc_minimal(self):
        n, m = realize_digraph(LabelledDigraph(("a", "b"), {("a", "b"): 1}), strategy="minimal")
        assert n == 21 and m == {"a": 3, "b": 7}

    def test_one_arc_proof(self):
        n, m = realize_digraph(LabelledDigraph(("a", "b"), {("a", "b"): 1}), strategy="proof")
        assert n == 39 and m == {"a": 3, "b": 13}

    def test_unknown_strategy(self):
        with pytest.raises(ContractError):
            realize_digraph(LabelledDigraph(("a",), {}), strategy="greedy")

    def test_exhaustion_is_reported(self):
        chain = LabelledDigraph(("a", "b", "c", "d"), {("a", "b"): 2, ("a", "c"): 1, ("b", "c"): 1, ("c", "d"): 2})
        with pytest.raises(SearchExhaustedError):
            realize_digraph(chain, strategy="proof")

    def test_minimal_against_brute_force(self):
        # least odd squarefree n per labelled digraph shape, up to 3 primes
        seen = []
        for n in range(3, 30000, 2):
            f = factorize(n)
            if any(e > 1 for _, e in f) or len(f) > 3:
                continue
            d = pi_graph(n).as_labelled()
            if any(labelled_isomorphism(d, s) is not None for s, _ in seen):
                continue
            seen.append((d, n))
        assert len(seen) > 10
        for d, n in seen:
            assert realize_digraph(d, strategy="minimal")[0] == n

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6), st.integers(1, 4))
    def test_round_trip(self, seed, k):
        d = random_dag(random.Random(seed), k)
        for strategy in ("proof", "minimal"):
            n, m = realize_digraph(d, strategy=strategy, prime_bound=10**40 if strategy == "proof" else 10**9)
            assert n % 2 == 1 and sorted(m) == sorted(d.vertices)
            g = prime_digraph(m.values())
            assert labelled_isomorphism(d, g.as_labelled()) is not None
            # the vertex map itself is the isomorphism
            assert {(u, v): g.label(m[u], m[v]) for (u, v) in d.arcs} == d.arcs
            assert len(g.arcs) == len(d.arcs)


class TestUnderlyingGraph:
    def test_edgeless(self):
        assert realize_underlying_graph(["a", "b"], [])[0] == 15

    def test_single_edge(self):
        assert realize_underlying_graph(["a", "b"], [("a", "b")])[0] == 21

    def test_triangle(self):
        n, m = realize_underlying_graph("abc", [("a", "b"), ("b", "c"), ("a", "c")])
        g = pi_graph(n)
        undirected = {frozenset(a) for a in g.arc_list}
        assert len(g.vertices) == 3 and len(undirected) == 3


def clauses_hold(p, U, V):
    return (
        is_prime(p)
        and p % 2 == 1
        and p not in set(U) | set(V)
        and all((p - 1) % u == 0 for u in U)
        and all((p - 1) % v != 0 and (v - 1) % p != 0 for v in V)
    )


class TestExtensionWitness:
    def test_three_five(self):
        assert extension_witness({3}, {5}) == 19

    def test_empty(self):
        assert extension_witness(set(), set()) == 3

    def test_pair_and_one(self):
        p = extension_witness({3, 7}, {5})
        scan = next(q for q in range(64, 10**6, 105) if q % 2 and clauses_hold(q, {3, 7}, {5}))
        assert p == scan == 379

    def test_not_disjoint(self):
        with pytest.raises(ContractError):
            extension_witness({3}, {3})

    def test_even_prime(self):
        with pytest.raises(ContractError):
            extension_witness({2}, set())

    def test_exhausted(self):
        with pytest.raises(SearchExhaustedError):
            extension_witness({3, 5, 7, 11}, {13}, bound=100)

    @given(st.sets(st.sampled_from(ODD_PRIMES_50), max_size=3), st.sets(st.sampled_from(ODD_PRIMES_50), max_size=3))
    def test_clauses(self, U, V):
        V = V - U
        p = extension_witness(U, V, bound=10**14)
        assert clauses_hold(p, U, V)
        assert exact_power(2, p - 1) >= 1
