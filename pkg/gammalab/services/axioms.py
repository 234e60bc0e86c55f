"""Exhaustive checks of the defining axioms and the argument-symmetry profile."""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from gammalab.config.settings import get_toolkit_settings
from gammalab.services.metrics_service import metrics_service
from gammalab.services.semiring import GammaSemiring


logger = logging.getLogger(__name__)

AXIOMS = ("A1", "A2", "A3", "A4")


@dataclass(frozen=True)
class Violation:
    """
    One failing axiom instance.

    ``witness`` layout per axiom:
      A1: (law, a, b[, c]) with law 0=identity, 1=commutativity, 2=associativity
      A2: (slot, x, x', other arguments in slot order), slot 1-based
      A3: the argument tuple
      A4: (window, x1, ..., x_{2n-1}), window 0-based
    """

    axiom: str
    gammas: tuple[int, ...]
    witness: tuple[int, ...]
    lhs: int
    rhs: int

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "gammas": list(self.gammas),
            "witness": list(self.witness),
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()
    truncated: tuple[str, ...] = field(default=())

    @property
    def valid(self) -> bool:
        return not self.violations

    def first(self, axiom: str) -> Optional[Violation]:
        return next((v for v in self.violations if v.axiom == axiom), None)

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [v.to_dict() for v in self.violations],
            "truncated": list(self.truncated),
        }


def window_value(
    s: GammaSemiring,
    window: int,
    letters: Sequence[int],
    gammas: Sequence[int],
) -> int:
    """
    Evaluate a flat word of 2n-1 letters and 2n-2 Gamma labels, bracketing
    the inner application at ``window``.
    """
    n = s.n
    inner = s.value(
        s.gamma_index(gammas[window:window + n - 1]),
        letters[window:window + n],
    )
    outer_letters = tuple(letters[:window]) + (inner,) + tuple(letters[window + n:])
    outer_gammas = tuple(gammas[:window]) + tuple(gammas[window + n - 1:])
    return s.value(s.gamma_index(outer_gammas), outer_letters)


def _addition_violations(s: GammaSemiring) -> Iterator[Violation]:
    m = s.m
    for a in range(m):
        if s.plus(0, a) != a:
            yield Violation("A1", (), (0, a), s.plus(0, a), a)
    for a, b in itertools.product(range(m), repeat=2):
        if s.plus(a, b) != s.plus(b, a):
            yield Violation("A1", (), (1, a, b), s.plus(a, b), s.plus(b, a))
    for a, b, c in itertools.product(range(m), repeat=3):
        lhs = s.plus(s.plus(a, b), c)
        rhs = s.plus(a, s.plus(b, c))
        if lhs != rhs:
            yield Violation("A1", (), (2, a, b, c), lhs, rhs)


def _distributivity_violations(s: GammaSemiring) -> Iterator[Violation]:
    n = s.n
    for gamma_index, gammas in enumerate(s.gamma_tuples()):
        for slot in range(n):
            for x, x_prime, *others in itertools.product(range(s.m), repeat=n + 1):

                def placed(v, others=others, slot=slot):
                    return tuple(others[:slot]) + (v,) + tuple(others[slot:])

                lhs = s.value(gamma_index, placed(s.plus(x, x_prime)))
                rhs = s.plus(s.value(gamma_index, placed(x)), s.value(gamma_index, placed(x_prime)))
                if lhs != rhs:
                    yield Violation("A2", gammas, (slot + 1, x, x_prime, *others), lhs, rhs)


def _absorption_violations(s: GammaSemiring) -> Iterator[Violation]:
    gammas = s.gamma_tuples()
    for gamma_index, args, value in s.iter_cells():
        if value != 0 and 0 in args:
            yield Violation("A3", gammas[gamma_index], args, value, 0)


def _associativity_violations(s: GammaSemiring) -> Iterator[Violation]:
    n = s.n
    windows = [k for k in s.assoc_mode.windows(n) if k != 0]
    for window in windows:
        for gammas in itertools.product(range(s.r), repeat=2 * n - 2):
            for letters in itertools.product(range(s.m), repeat=2 * n - 1):
                lhs = window_value(s, 0, letters, gammas)
                rhs = window_value(s, window, letters, gammas)
                if lhs != rhs:
                    yield Violation("A4", gammas, (window, *letters), lhs, rhs)


_CHECKS = {
    "A1": _addition_violations,
    "A2": _distributivity_violations,
    "A3": _absorption_violations,
    "A4": _associativity_violations,
}


def validate(
    s: GammaSemiring,
    max_violations: Optional[int] = None,
    stop_at_first: bool = False,
) -> ValidationReport:
    """
    Check A1-A4 exhaustively.

    At most ``max_violations`` witnesses are kept per axiom, in lexicographic
    witness order; an axiom whose list was cut is named in ``truncated``.
    ``stop_at_first`` returns as soon as any violation is found.
    """
    cap = max_violations or get_toolkit_settings().max_violations
    violations: list[Violation] = []
    truncated: list[str] = []

    for axiom in AXIOMS:
        for count, violation in enumerate(_CHECKS[axiom](s)):
            if count >= cap:
                truncated.append(axiom)
                break
            violations.append(violation)
            if stop_at_first:
                break
        if stop_at_first and violations:
            break

    report = ValidationReport(tuple(violations), tuple(truncated))
    metrics_service.record_validation(report.valid)
    if not report.valid:
        logger.debug(f"{s!r} failed {sorted({v.axiom for v in violations})}")
    return report


def is_valid(s: GammaSemiring) -> bool:
    return validate(s, stop_at_first=True).valid


def symmetry_profile(s: GammaSemiring) -> frozenset[tuple[int, int]]:
    """1-based argument transpositions (i, j) under which some mu table changes."""
    broken = set()
    for i, j in itertools.combinations(range(s.n), 2):
        for gamma_index, args, value in s.iter_cells():
            swapped = list(args)
            swapped[i], swapped[j] = swapped[j], swapped[i]
            if s.value(gamma_index, swapped) != value:
                broken.add((i + 1, j + 1))
                break
    return frozenset(broken)
