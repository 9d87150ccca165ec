from itertools import islice

import pytest

from bipartite_maps.errors import ContractError, ScaleError
from bipartite_maps.labelling import enumerate_labellings, triple_from_labelling
from bipartite_maps.mapreal import OrientedMap, realize_map
from bipartite_maps.oracle import (
    _assignments,
    brute_force_census,
    canonical_code,
    count_color_orientation_automorphisms,
    enumerate_embeddings,
    match_representatives,
)


def pipeline_maps(n):
    return [realize_map(triple_from_labelling(L)) for L in enumerate_labellings(n)]


def relabel(M, perm_edges):
    """The same map with edges renamed by ``perm_edges`` (black ends stay black)."""
    D = len(M)
    image = [2 * perm_edges[d >> 1] + (d & 1) for d in range(D)]
    rot = [0] * D
    for d in range(D):
        rot[image[d]] = image[M.rotation[d]]
    return OrientedMap(M.n, rot)


class TestEnumeration:
    def test_counts(self):
        assert sum(1 for _ in _assignments(1)) == 1
        assert sum(1 for _ in _assignments(2)) == 1
        assert sum(1 for _ in _assignments(3)) == 32
        assert sum(1 for _ in _assignments(4)) == 6**7

    def test_embeddings_validate(self):
        for M in enumerate_embeddings(3):
            M.validate()

    def test_scale(self):
        with pytest.raises(ScaleError):
            next(enumerate_embeddings(5))
        with pytest.raises(ScaleError):
            brute_force_census(5)

    def test_bad_n(self):
        with pytest.raises(ContractError):
            brute_force_census(0)


class TestAutomorphisms:
    def test_non_regular_four(self):
        counts = [count_color_orientation_automorphisms(M) for M in islice(enumerate_embeddings(4), 200)]
        low = [c for c in counts if c < 16]
        assert low and all(16 % c == 0 for c in low)

    def test_three_regular_and_not(self):
        counts = {count_color_orientation_automorphisms(M) for M in enumerate_embeddings(3)}
        assert 9 in counts and min(counts) < 9
        assert all(9 % c == 0 for c in counts)


class TestCanonicalCode:
    def test_invariant_under_relabelling(self):
        M = pipeline_maps(4)[1]
        perm = [5, 3, 0, 1, 7, 2, 4, 6, 9, 8, 10, 11, 15, 12, 13, 14]
        assert canonical_code(relabel(M, perm)) == canonical_code(M)

    def test_separates_classes(self):
        a, b = pipeline_maps(4)
        assert canonical_code(a) != canonical_code(b)


class TestCensus:
    @pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 1)])
    def test_small(self, n, count):
        got, reps = brute_force_census(n)
        assert got == count == len(reps)
        if n > 1:
            assert match_representatives(reps, pipeline_maps(n)) == list(range(count))

    def test_four(self):
        got, reps = brute_force_census(4, jobs=2)
        assert got == 2
        idx = match_representatives(reps, pipeline_maps(4))
        assert idx is not None and sorted(idx) == [0, 1]

    def test_mismatch(self):
        assert match_representatives(pipeline_maps(4)[:1], pipeline_maps(4)) is None
