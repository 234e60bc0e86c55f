"""Carrier data model for finite n-ary Gamma-semirings."""

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from gammalab.services.errors import UsageError


TABLE_DTYPE = np.int16


class AssocMode(str, Enum):
    """Which bracketings of a flat word the associativity law compares."""

    PAPER_ENDS = "paper_ends"
    DORNTE = "dornte"

    def windows(self, n: int) -> tuple[int, ...]:
        """Window offsets (0-based start of the inner application) to compare."""
        if self is AssocMode.PAPER_ENDS:
            return (0, n - 1)
        return tuple(range(n))


def _mixed_radix(digits: Sequence[int], base: int) -> int:
    index = 0
    for digit in digits:
        index = index * base + digit
    return index


@dataclass(frozen=True, eq=False)
class GammaSemiring:
    """
    Finite carrier [0, m) with an addition table and one n-ary table per
    Gamma-tuple.

    ``mu`` has shape ``(r ** (n - 1),) + (m,) * n``; Gamma-tuples are indexed
    lexicographically and arguments are row-major with x1 slowest. Axioms are
    not enforced here (see ``axioms.validate``), only shapes and value ranges.
    """

    m: int
    n: int
    r: int
    add: np.ndarray
    mu: np.ndarray
    assoc_mode: AssocMode = AssocMode.PAPER_ENDS

    def __post_init__(self):
        if self.m < 1 or self.n < 3 or self.r < 1:
            raise UsageError(
                f"sizes must satisfy m >= 1, n >= 3, r >= 1 (got m={self.m}, n={self.n}, r={self.r})"
            )

        add_table = np.array(self.add, dtype=TABLE_DTYPE)
        if add_table.shape != (self.m, self.m):
            raise UsageError(f"addition table must be {self.m}x{self.m}, got {add_table.shape}")

        gamma_count = self.r ** (self.n - 1)
        mu_table = np.array(self.mu, dtype=TABLE_DTYPE)
        try:
            mu_table = mu_table.reshape((gamma_count,) + (self.m,) * self.n)
        except ValueError:
            raise UsageError(
                f"operation tables must hold {gamma_count} tables of {self.m ** self.n} cells, "
                f"got shape {mu_table.shape}"
            )

        for table_name, table in (("add", add_table), ("mu", mu_table)):
            if table.size and (table.min() < 0 or table.max() >= self.m):
                raise UsageError(f"{table_name} holds values outside [0, {self.m})")

        add_table.setflags(write=False)
        mu_table.setflags(write=False)
        object.__setattr__(self, "add", add_table)
        object.__setattr__(self, "mu", mu_table)
        object.__setattr__(self, "assoc_mode", AssocMode(self.assoc_mode))

        # Flat python lists keep single-cell lookups cheap in the scans.
        object.__setattr__(self, "_flat_add", [int(v) for v in add_table.ravel()])
        object.__setattr__(self, "_flat_mu", [int(v) for v in mu_table.ravel()])
        object.__setattr__(self, "_table_size", self.m ** self.n)
        object.__setattr__(
            self,
            "_key",
            (self.m, self.n, self.r, self.assoc_mode.value,
             tuple(self._flat_add), tuple(self._flat_mu)),
        )

    @classmethod
    def from_rules(
        cls,
        m: int,
        n: int,
        r: int,
        add_rule: Callable[[int, int], int],
        mu_rule: Callable[[tuple[int, ...], tuple[int, ...]], int],
        assoc_mode: AssocMode = AssocMode.PAPER_ENDS,
    ) -> "GammaSemiring":
        """Build the tables by evaluating ``add_rule(a, b)`` and ``mu_rule(gammas, args)``."""
        add_table = [[add_rule(a, b) for b in range(m)] for a in range(m)]
        mu_tables = [
            [mu_rule(gammas, args) for args in itertools.product(range(m), repeat=n)]
            for gammas in itertools.product(range(r), repeat=n - 1)
        ]
        return cls(m=m, n=n, r=r, add=add_table, mu=mu_tables, assoc_mode=assoc_mode)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GammaSemiring):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return (
            f"GammaSemiring(m={self.m}, n={self.n}, r={self.r}, "
            f"assoc_mode={self.assoc_mode.value})"
        )

    @property
    def gamma_count(self) -> int:
        return self.r ** (self.n - 1)

    @property
    def full_bits(self) -> int:
        return (1 << self.m) - 1

    def gamma_tuples(self) -> list[tuple[int, ...]]:
        return list(itertools.product(range(self.r), repeat=self.n - 1))

    def gamma_index(self, gammas: Sequence[int]) -> int:
        return _mixed_radix(gammas, self.r)

    def cell_index(self, args: Sequence[int]) -> int:
        return _mixed_radix(args, self.m)

    def plus(self, a: int, b: int) -> int:
        return self._flat_add[a * self.m + b]

    def value(self, gamma_index: int, args: Sequence[int]) -> int:
        """Unchecked table lookup used by the scans."""
        return self._flat_mu[gamma_index * self._table_size + _mixed_radix(args, self.m)]

    def iter_cells(self, nonzero_only: bool = False) -> Iterator[tuple[int, tuple[int, ...], int]]:
        """Yield ``(gamma_index, args, value)`` in lexicographic order."""
        elements = range(1, self.m) if nonzero_only else range(self.m)
        for gamma_index in range(self.gamma_count):
            for args in itertools.product(elements, repeat=self.n):
                yield gamma_index, args, self.value(gamma_index, args)

    def table_key(self) -> tuple[int, ...]:
        """Addition table then operation tables, flattened in serialization order."""
        return tuple(self._flat_add) + tuple(self._flat_mu)

    def with_mode(self, assoc_mode: AssocMode) -> "GammaSemiring":
        return GammaSemiring(
            m=self.m, n=self.n, r=self.r, add=self.add, mu=self.mu, assoc_mode=assoc_mode
        )

    def relabel(
        self,
        permutation: Sequence[int],
        gamma_permutation: Optional[Sequence[int]] = None,
    ) -> "GammaSemiring":
        """
        Apply ``permutation`` (old element -> new element) to every table,
        and optionally ``gamma_permutation`` (old Gamma label -> new label).
        """
        forward = np.asarray(permutation, dtype=np.intp)
        if sorted(forward.tolist()) != list(range(self.m)):
            raise UsageError(f"relabeling {list(permutation)} is not a permutation of [0, {self.m})")
        inverse = np.argsort(forward)

        new_add = forward[self.add][np.ix_(inverse, inverse)]
        new_mu = forward[self.mu][(slice(None),) + np.ix_(*([inverse] * self.n))]

        if gamma_permutation is not None:
            gamma_forward = list(gamma_permutation)
            if sorted(gamma_forward) != list(range(self.r)):
                raise UsageError(f"{gamma_forward} is not a permutation of Gamma")
            source_order = [0] * self.gamma_count
            for old_index, gammas in enumerate(self.gamma_tuples()):
                relabeled = tuple(gamma_forward[g] for g in gammas)
                source_order[self.gamma_index(relabeled)] = old_index
            new_mu = new_mu[source_order]

        return GammaSemiring(
            m=self.m, n=self.n, r=self.r, add=new_add, mu=new_mu, assoc_mode=self.assoc_mode
        )


def eval_mu(s: GammaSemiring, gammas: Sequence[int], args: Sequence[int]) -> int:
    """Bounds-checked lookup of mu(x1, g1, x2, ..., g_{n-1}, xn)."""
    if len(gammas) != s.n - 1:
        raise UsageError(f"expected {s.n - 1} Gamma parameters, got {len(gammas)}")
    if len(args) != s.n:
        raise UsageError(f"expected {s.n} arguments, got {len(args)}")
    if any(not 0 <= g < s.r for g in gammas):
        raise UsageError(f"Gamma index out of range [0, {s.r}): {tuple(gammas)}")
    if any(not 0 <= x < s.m for x in args):
        raise UsageError(f"element index out of range [0, {s.m}): {tuple(args)}")
    return s.value(s.gamma_index(gammas), tuple(args))


def diagonal(s: GammaSemiring, a: int, gammas: Sequence[int]) -> int:
    """The n-ary diagonal: mu with every argument slot holding ``a``."""
    return eval_mu(s, gammas, (a,) * s.n)
