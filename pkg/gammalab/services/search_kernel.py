"""
Backtracking over table cells with watched constraints.

A constraint is a callable over the cell list (``UNSET`` marks open cells)
returning ``SATISFIED``, ``VIOLATED`` or the index of an open cell it needs
before it can decide. Each constraint sits on the watch list of exactly one
open cell and is re-evaluated when that cell gets a value.
"""

import logging
from typing import Callable, Iterator, Sequence

logger = logging.getLogger(__name__)

UNSET = -1
SATISFIED = -1
VIOLATED = -2

Constraint = Callable[[list[int]], int]


def first_unset(cells: list[int], indices: Sequence[int]) -> int:
    """Index of the first open cell among ``indices``, or ``SATISFIED`` when all are set."""
    for index in indices:
        if cells[index] == UNSET:
            return index
    return SATISFIED


class ConstraintSearch:
    """Assigns ``order`` cells in sequence; ``domains[d]`` lists the values tried at depth d."""

    def __init__(
        self,
        cells: Sequence[int],
        order: Sequence[int],
        domains: Sequence[Sequence[int]],
        constraints: Sequence[Constraint],
    ):
        if len(order) != len(domains):
            raise ValueError("every ordered cell needs a domain")
        self.cells = list(cells)
        self.order = list(order)
        self.domains = [tuple(domain) for domain in domains]
        self.constraints = list(constraints)
        self.watch: list[list[Constraint]] = [[] for _ in self.cells]
        self.nodes = 0
        self.candidates = 0

    def _place(self, constraint: Constraint, pending: list[int]) -> bool:
        status = constraint(self.cells)
        if status == VIOLATED:
            return False
        if status >= 0:
            self.watch[status].append(constraint)
            pending.append(status)
        return True

    def _undo(self, pending: list[int]) -> None:
        for index in reversed(pending):
            self.watch[index].pop()

    def solutions(self) -> Iterator[list[int]]:
        """Yield a copy of the cell list for every complete assignment satisfying all constraints."""
        pending: list[int] = []
        for constraint in self.constraints:
            if not self._place(constraint, pending):
                logger.debug("Constraint violated before any assignment")
                self._undo(pending)
                return
        yield from self._descend(0)
        self._undo(pending)

    def _descend(self, depth: int) -> Iterator[list[int]]:
        self.nodes += 1
        if depth == len(self.order):
            yield list(self.cells)
            return

        cell = self.order[depth]
        for value in self.domains[depth]:
            self.candidates += 1
            self.cells[cell] = value
            pending: list[int] = []
            consistent = all(self._place(constraint, pending) for constraint in self.watch[cell])
            if consistent:
                yield from self._descend(depth + 1)
            self._undo(pending)
        self.cells[cell] = UNSET


def sum_constraint(lhs: int, left: int, right: int, plus: Callable[[int, int], int]) -> Constraint:
    """cells[lhs] == plus(cells[left], cells[right])."""
    watched = (lhs, left, right)

    def check(cells: list[int]) -> int:
        missing = first_unset(cells, watched)
        if missing != SATISFIED:
            return missing
        return SATISFIED if cells[lhs] == plus(cells[left], cells[right]) else VIOLATED

    return check
