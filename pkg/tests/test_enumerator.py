"""Tests for additive tables, pruned enumeration and sharding."""

import itertools

import pytest

from gammalab.services.axioms import validate
from gammalab.services.classifier import relabelings
from gammalab.services.enumerator import (
    SearchSpec,
    enumerate_additive,
    enumerate_sharded,
    enumerate_structures,
    merge,
    shard,
)
from gammalab.services.errors import CapacityError, UsageError
from gammalab.services.semiring import GammaSemiring
from tests.conftest import or_table

MAX_TABLE = tuple(tuple(max(a, b) for b in range(3)) for a in range(3))


def brute_force_count(m, n, r, add):
    """Valid structures over ``add`` found by trying every value on every nonzero cell."""
    nonzero = [
        (gammas, args)
        for gammas in itertools.product(range(r), repeat=n - 1)
        for args in itertools.product(range(1, m), repeat=n)
    ]
    count = 0
    for values in itertools.product(range(m), repeat=len(nonzero)):
        table = dict(zip(nonzero, values))
        s = GammaSemiring.from_rules(
            m, n, r, lambda a, b: add[a][b], lambda gammas, args: table.get((gammas, args), 0)
        )
        count += validate(s, stop_at_first=True).valid
    return count


def relabel_table(table, perm):
    size = len(table)
    inverse = [0] * size
    for old, new in enumerate(perm):
        inverse[new] = old
    return tuple(tuple(perm[table[inverse[a]][inverse[b]]] for b in range(size)) for a in range(size))


class TestEnumerateAdditive:
    """Tests for commutative monoid tables."""

    def test_two_elements(self):
        """Should find both tables on two elements."""
        assert enumerate_additive(2, deduplicate=False) == [((0, 1), (1, 0)), ((0, 1), (1, 1))]

    def test_every_table_is_a_monoid(self):
        """Should only emit commutative tables with identity 0."""
        for table in enumerate_additive(3, deduplicate=False):
            assert all(table[0][a] == a for a in range(3))
            assert all(table[a][b] == table[b][a] for a in range(3) for b in range(3))

    def test_deduplication_covers_every_orbit(self):
        """Should keep one representative per relabeling orbit."""
        everything = enumerate_additive(3, deduplicate=False)
        representatives = enumerate_additive(3)
        for table in everything:
            images = {relabel_table(table, perm) for perm in relabelings(3)}
            assert len(images & set(representatives)) == 1

    def test_limit(self):
        """Should refuse carriers beyond the additive limit."""
        with pytest.raises(CapacityError):
            enumerate_additive(5, carrier_limit=4)


class TestSearchSpec:
    """Tests for search specifications."""

    def test_rejects_non_monoid(self):
        """Should reject a non-associative addition."""
        with pytest.raises(UsageError, match="commutative monoid"):
            SearchSpec(m=3, n=3, r=1, add=((0, 1, 2), (1, 2, 0), (2, 0, 0)))

    def test_free_cell_count(self):
        """Should count nonzero cells over every Gamma-tuple."""
        assert SearchSpec(m=3, n=3, r=2).free_cell_count == 4 * 8

    def test_capacity(self):
        """Should refuse searches beyond the free cell limit."""
        with pytest.raises(CapacityError):
            enumerate_structures(SearchSpec(m=3, n=3, r=1), free_cell_limit=4)


class TestEnumerateStructures:
    """Tests for pruned enumeration against exhaustive oracles."""

    def test_boolean_or(self):
        """Should find the zero operation and AND over OR."""
        result = enumerate_structures(SearchSpec(m=2, n=3, r=1, add=or_table(2)))
        assert result.valid_count == 2
        assert result.canonical_class_count == 2
        assert [s.value(0, (1, 1, 1)) for s in result.structures] == [0, 1]

    def test_two_elements_every_addition(self):
        """Should match the exhaustive count over both additions."""
        result = enumerate_structures(SearchSpec(m=2, n=3, r=1))
        expected = sum(brute_force_count(2, 3, 1, table) for table in enumerate_additive(2))
        assert result.valid_count == expected

    def test_max_addition_matches_oracle(self):
        """Should match the exhaustive count over max addition on three elements."""
        result = enumerate_structures(SearchSpec(m=3, n=3, r=1, add=MAX_TABLE))
        assert result.valid_count == brute_force_count(3, 3, 1, MAX_TABLE)
        assert result.bounds["crude_bound_holds"]
        assert result.bounds["prefilled_bound_holds"]

    def test_emits_valid_structures(self):
        """Should emit only structures passing validation."""
        for s in enumerate_structures(SearchSpec(m=3, n=3, r=1, add=MAX_TABLE)).structures:
            assert validate(s, stop_at_first=True).valid

    def test_canonical_only(self):
        """Should emit one structure per class when asked."""
        full = enumerate_structures(SearchSpec(m=3, n=3, r=1, add=MAX_TABLE))
        canonical = enumerate_structures(SearchSpec(m=3, n=3, r=1, add=MAX_TABLE, canonical_only=True))
        assert len(canonical.structures) == full.canonical_class_count
        assert canonical.valid_count == full.valid_count

    def test_e4_is_found(self, e4):
        """Should contain E4 among the max-addition structures."""
        result = enumerate_structures(SearchSpec(m=3, n=3, r=1, add=MAX_TABLE))
        assert e4 in result.structures


class TestSharding:
    """Tests for shard and merge."""

    def test_sharded_matches_sequential(self):
        """Should merge shards into the sequential result."""
        spec = SearchSpec(m=3, n=3, r=1, add=MAX_TABLE)
        sequential = enumerate_structures(spec)
        merged = enumerate_sharded(spec, 2)
        assert merged.structures == sequential.structures
        assert merged.valid_count == sequential.valid_count

    def test_merge_order_ignores_shard_order(self):
        """Should give the same result whatever order shards arrive in."""
        spec = SearchSpec(m=2, n=3, r=1)
        results = [enumerate_structures(part) for part in shard(spec, 1)]
        assert merge(results).structures == merge(list(reversed(results))).structures

    def test_incomplete_shards(self):
        """Should refuse a shard set with a prefix missing."""
        spec = SearchSpec(m=2, n=3, r=1)
        results = [enumerate_structures(part) for part in shard(spec, 1)]
        with pytest.raises(UsageError, match="incomplete"):
            merge(results[:1])

    def test_duplicated_shard(self):
        """Should refuse a shard set with a prefix twice."""
        spec = SearchSpec(m=2, n=3, r=1)
        results = [enumerate_structures(part) for part in shard(spec, 1)]
        with pytest.raises(UsageError, match="duplicated"):
            merge(results + results[:1])

    def test_depth_bounds(self):
        """Should reject depths beyond the free cells."""
        with pytest.raises(UsageError):
            shard(SearchSpec(m=2, n=3, r=1), 2)
