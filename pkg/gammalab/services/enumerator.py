"""Exhaustive, pruned and symmetry-reduced generation of valid structures."""

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from gammalab.config.settings import get_toolkit_settings
from gammalab.services.axioms import validate
from gammalab.services.classifier import addition_automorphisms, is_canonical_under, relabelings
from gammalab.services.errors import CapacityError, UsageError
from gammalab.services.metrics_service import metrics_service
from gammalab.services.search_kernel import (
    SATISFIED,
    UNSET,
    VIOLATED,
    Constraint,
    ConstraintSearch,
    sum_constraint,
)
from gammalab.services.semiring import AssocMode, GammaSemiring


logger = logging.getLogger(__name__)

AdditionTable = tuple[tuple[int, ...], ...]


def _is_commutative_monoid(table: Sequence[Sequence[int]]) -> bool:
    size = len(table)
    elements = range(size)
    return (
        all(table[0][a] == a for a in elements)
        and all(table[a][b] == table[b][a] for a in elements for b in elements)
        and all(
            table[table[a][b]][c] == table[a][table[b][c]]
            for a in elements for b in elements for c in elements
        )
    )


def _relabeled_table(table: AdditionTable, perm: Sequence[int]) -> AdditionTable:
    size = len(table)
    inv = [0] * size
    for old, new in enumerate(perm):
        inv[new] = old
    return tuple(tuple(perm[table[inv[a]][inv[b]]] for b in range(size)) for a in range(size))


def enumerate_additive(
    m: int,
    deduplicate: bool = True,
    carrier_limit: Optional[int] = None,
) -> list[AdditionTable]:
    """
    Commutative monoid tables on [0, m) with identity 0, in lexicographic
    order. With ``deduplicate`` only the lexicographically least table of
    each relabeling orbit (0 fixed) is kept.
    """
    limit = carrier_limit or get_toolkit_settings().additive_carrier_limit
    if m > limit:
        raise CapacityError("carrier size for additive tables", m, limit)

    free_pairs = list(itertools.combinations_with_replacement(range(1, m), 2))
    tables = []
    for values in itertools.product(range(m), repeat=len(free_pairs)):
        table = [[0] * m for _ in range(m)]
        for a in range(m):
            table[0][a] = table[a][0] = a
        for (a, b), value in zip(free_pairs, values):
            table[a][b] = table[b][a] = value
        if _is_commutative_monoid(table):
            tables.append(tuple(tuple(row) for row in table))

    if deduplicate:
        tables = [
            table for table in tables
            if all(_relabeled_table(table, perm) >= table for perm in relabelings(m))
        ]
    logger.debug(f"{len(tables)} additive tables on {m} elements (deduplicate={deduplicate})")
    return tables


@dataclass(frozen=True)
class SearchSpec:
    """``add`` of ``None`` scans every additive table up to relabeling."""

    m: int
    n: int
    r: int
    add: Optional[AdditionTable] = None
    assoc_mode: AssocMode = AssocMode.PAPER_ENDS
    canonical_only: bool = False
    shard_depth: int = 0
    shard_prefix: tuple[int, ...] = ()

    def __post_init__(self):
        if self.m < 1 or self.n < 3 or self.r < 1:
            raise UsageError(f"sizes must satisfy m >= 1, n >= 3, r >= 1 (got {self.m}, {self.n}, {self.r})")
        if self.add is not None:
            table = tuple(tuple(int(v) for v in row) for row in self.add)
            if len(table) != self.m or any(len(row) != self.m for row in table):
                raise UsageError(f"addition table must be {self.m}x{self.m}")
            if not _is_commutative_monoid(table):
                raise UsageError("addition table is not a commutative monoid with identity 0")
            object.__setattr__(self, "add", table)
        object.__setattr__(self, "assoc_mode", AssocMode(self.assoc_mode))
        object.__setattr__(self, "shard_prefix", tuple(self.shard_prefix))
        if len(self.shard_prefix) != self.shard_depth:
            raise UsageError(f"shard prefix {self.shard_prefix} does not match depth {self.shard_depth}")
        if any(not 0 <= v < self.m for v in self.shard_prefix):
            raise UsageError(f"shard prefix values must lie in [0, {self.m})")

    @property
    def free_cell_count(self) -> int:
        return self.r ** (self.n - 1) * (self.m - 1) ** self.n

    def unsharded(self) -> "SearchSpec":
        return replace(self, shard_depth=0, shard_prefix=())


@dataclass(frozen=True)
class EnumerationResult:
    spec: SearchSpec
    structures: tuple[GammaSemiring, ...]
    additive_indices: tuple[int, ...]
    total_candidates_scanned: int
    nodes_visited: int
    valid_count: int
    canonical_class_count: int
    bounds: dict = field(default_factory=dict)

    def to_jsonable(self) -> dict:
        return {
            "m": self.spec.m,
            "n": self.spec.n,
            "r": self.spec.r,
            "canonical_only": self.spec.canonical_only,
            "total_candidates_scanned": self.total_candidates_scanned,
            "nodes_visited": self.nodes_visited,
            "valid_count": self.valid_count,
            "canonical_class_count": self.canonical_class_count,
            "emitted": len(self.structures),
        }


class _CellLayout:
    """Flat mu indexing shared by the constraint builders."""

    def __init__(self, m: int, n: int, r: int):
        self.m, self.n, self.r = m, n, r
        self.table_size = m ** n

    def index(self, gamma_index: int, args: Sequence[int]) -> int:
        position = 0
        for a in args:
            position = position * self.m + a
        return gamma_index * self.table_size + position

    def gamma_index(self, gammas: Sequence[int]) -> int:
        position = 0
        for g in gammas:
            position = position * self.r + g
        return position


def _window_lookup(layout: _CellLayout, window: int, letters: Sequence[int], gammas: Sequence[int]):
    """(inner cell, outer base index, multiplier) so outer cell = base + inner value * multiplier."""
    n = layout.n
    inner = layout.index(layout.gamma_index(gammas[window:window + n - 1]), letters[window:window + n])
    outer_letters = list(letters[:window]) + [0] + list(letters[window + n:])
    outer_gamma = layout.gamma_index(tuple(gammas[:window]) + tuple(gammas[window + n - 1:]))
    base = layout.index(outer_gamma, outer_letters)
    multiplier = layout.m ** (n - 1 - window)
    return inner, base, multiplier


def _associativity_constraint(first, second) -> Constraint:
    inner_a, base_a, mult_a = first
    inner_b, base_b, mult_b = second

    def check(cells: list[int]) -> int:
        value_a = cells[inner_a]
        if value_a == UNSET:
            return inner_a
        value_b = cells[inner_b]
        if value_b == UNSET:
            return inner_b
        outer_a = base_a + value_a * mult_a
        outer_b = base_b + value_b * mult_b
        result_a = cells[outer_a]
        if result_a == UNSET:
            return outer_a
        result_b = cells[outer_b]
        if result_b == UNSET:
            return outer_b
        return SATISFIED if result_a == result_b else VIOLATED

    return check


def structure_constraints(
    m: int,
    n: int,
    r: int,
    add: AdditionTable,
    assoc_mode: AssocMode,
) -> list[Constraint]:
    """
    Distributivity and associativity instances over nonzero arguments.
    Instances touching a zero argument hold by absorption prefill.
    """
    layout = _CellLayout(m, n, r)
    plus = lambda a, b: add[a][b]  # noqa: E731
    nonzero = range(1, m)
    constraints = []

    for gammas in itertools.product(range(r), repeat=n - 1):
        gamma_index = layout.gamma_index(gammas)
        for slot in range(n):
            for x, x_prime in itertools.combinations_with_replacement(nonzero, 2):
                for others in itertools.product(nonzero, repeat=n - 1):
                    def placed(v):
                        return others[:slot] + (v,) + others[slot:]

                    constraints.append(sum_constraint(
                        layout.index(gamma_index, placed(add[x][x_prime])),
                        layout.index(gamma_index, placed(x)),
                        layout.index(gamma_index, placed(x_prime)),
                        plus,
                    ))

    for window in assoc_mode.windows(n):
        if window == 0:
            continue
        for gammas in itertools.product(range(r), repeat=2 * n - 2):
            for letters in itertools.product(nonzero, repeat=2 * n - 1):
                constraints.append(_associativity_constraint(
                    _window_lookup(layout, 0, letters, gammas),
                    _window_lookup(layout, window, letters, gammas),
                ))
    return constraints


def _prefilled_cells(m: int, n: int, r: int) -> tuple[list[int], list[int]]:
    cells = []
    free = []
    for _ in range(r ** (n - 1)):
        for args in itertools.product(range(m), repeat=n):
            if 0 in args:
                cells.append(0)
            else:
                free.append(len(cells))
                cells.append(UNSET)
    return cells, free


def _check_bounds(spec: SearchSpec, valid_count: int, tables: int) -> dict:
    m, n, r = spec.m, spec.n, spec.r
    crude_log = r * m ** n * math.log(m) if m > 1 else 0.0
    prefilled_log = spec.free_cell_count * math.log(m) if m > 1 else 0.0
    count_log = math.log(valid_count) if valid_count else float("-inf")
    table_log = math.log(tables) if tables else 0.0
    bounds = {
        "crude_bound_holds": count_log <= crude_log + table_log + 1e-9,
        "prefilled_bound_holds": count_log <= prefilled_log + table_log + 1e-9,
    }
    for name, holds in bounds.items():
        if not holds:
            logger.warning(f"{name.replace('_', ' ')} fails: {valid_count} structures for m={m}, n={n}, r={r}")
    return bounds


def enumerate_structures(spec: SearchSpec, free_cell_limit: Optional[int] = None) -> EnumerationResult:
    """Fill free cells in lexicographic order with constraint pruning; emit valid structures."""
    limit = free_cell_limit or get_toolkit_settings().free_cell_limit
    if spec.free_cell_count > limit:
        raise CapacityError("free cell count", spec.free_cell_count, limit)

    tables = [spec.add] if spec.add is not None else enumerate_additive(spec.m)
    cells, free = _prefilled_cells(spec.m, spec.n, spec.r)
    if spec.shard_depth > len(free):
        raise UsageError(f"shard depth {spec.shard_depth} exceeds {len(free)} free cells")
    domains = [(value,) for value in spec.shard_prefix] + [tuple(range(spec.m))] * (len(free) - spec.shard_depth)

    logger.info(
        f"Enumerating m={spec.m}, n={spec.n}, r={spec.r} over {len(tables)} additive table(s), "
        f"{len(free)} free cells, prefix {list(spec.shard_prefix)}"
    )

    structures, indices = [], []
    nodes = candidates = valid_count = canonical_count = 0
    with metrics_service.time_operation("enumerate"):
        for table_index, table in enumerate(tables):
            search = ConstraintSearch(
                cells, free, domains,
                structure_constraints(spec.m, spec.n, spec.r, table, spec.assoc_mode),
            )
            symmetries = None
            for solution in search.solutions():
                s = GammaSemiring(
                    m=spec.m, n=spec.n, r=spec.r, add=table, mu=solution, assoc_mode=spec.assoc_mode
                )
                if not validate(s, stop_at_first=True).valid:
                    raise RuntimeError(f"search emitted a structure failing the axioms: {solution}")
                valid_count += 1
                if symmetries is None:
                    symmetries = addition_automorphisms(s)
                canonical = is_canonical_under(s, symmetries)
                canonical_count += canonical
                if canonical or not spec.canonical_only:
                    structures.append(s)
                    indices.append(table_index)
            nodes += search.nodes
            candidates += search.candidates

    bounds = _check_bounds(spec, valid_count, len(tables))
    metrics_service.record_search("structures", nodes, candidates, len(structures))
    logger.info(
        f"Enumeration done: {valid_count} valid, {canonical_count} classes, "
        f"{candidates} candidates, {nodes} nodes"
    )
    return EnumerationResult(
        spec=spec,
        structures=tuple(structures),
        additive_indices=tuple(indices),
        total_candidates_scanned=candidates,
        nodes_visited=nodes,
        valid_count=valid_count,
        canonical_class_count=canonical_count,
        bounds=bounds,
    )


def shard(spec: SearchSpec, depth: int) -> list[SearchSpec]:
    """Split by the values of the first ``depth`` free cells, in lexicographic prefix order."""
    if spec.shard_depth:
        raise UsageError("spec is already a shard")
    if not 0 <= depth <= spec.free_cell_count:
        raise UsageError(f"shard depth {depth} outside [0, {spec.free_cell_count}]")
    return [
        replace(spec, shard_depth=depth, shard_prefix=prefix)
        for prefix in itertools.product(range(spec.m), repeat=depth)
    ]


def merge(results: Sequence[EnumerationResult]) -> EnumerationResult:
    """Fold shard results; shards must cover every prefix of one depth exactly once."""
    if not results:
        raise UsageError("nothing to merge")
    base = results[0].spec.unsharded()
    depth = results[0].spec.shard_depth
    if any(result.spec.unsharded() != base or result.spec.shard_depth != depth for result in results):
        raise UsageError("shards belong to different searches")

    prefixes = [result.spec.shard_prefix for result in results]
    if len(set(prefixes)) != len(prefixes):
        raise UsageError("duplicated shard prefix")
    if set(prefixes) != set(itertools.product(range(base.m), repeat=depth)):
        raise UsageError("shard set is incomplete")

    ordered = sorted(results, key=lambda result: result.spec.shard_prefix)
    entries = sorted(
        (
            (table_index, position, structure)
            for position, result in enumerate(ordered)
            for table_index, structure in zip(result.additive_indices, result.structures)
        ),
        key=lambda entry: (entry[0], entry[1]),
    )
    valid_count = sum(result.valid_count for result in ordered)
    return EnumerationResult(
        spec=base,
        structures=tuple(structure for _, _, structure in entries),
        additive_indices=tuple(table_index for table_index, _, _ in entries),
        total_candidates_scanned=sum(result.total_candidates_scanned for result in ordered),
        nodes_visited=sum(result.nodes_visited for result in ordered),
        valid_count=valid_count,
        canonical_class_count=sum(result.canonical_class_count for result in ordered),
        bounds=_check_bounds(base, valid_count, len(enumerate_additive(base.m)) if base.add is None else 1),
    )


def enumerate_sharded(
    spec: SearchSpec,
    depth: int,
    max_workers: Optional[int] = None,
) -> EnumerationResult:
    """Run every shard, in worker processes when ``max_workers`` is set, and merge."""
    shards = shard(spec, depth)
    if max_workers:
        with ProcessPoolExecutor(max_workers=max_workers) as executor:
            results = list(executor.map(enumerate_structures, shards))
    else:
        results = [enumerate_structures(part) for part in shards]
    return merge(results)
