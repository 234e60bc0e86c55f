"""Ideal detection, enumeration and lattice operations for every closure kind."""

import itertools
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence, Union

from gammalab.config.settings import get_toolkit_settings
from gammalab.services.audit import AuditEntry, collect
from gammalab.services.errors import CapacityError, UsageError
from gammalab.services.semiring import GammaSemiring


logger = logging.getLogger(__name__)


class KindVariant(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    TWO_SIDED = "two_sided"
    POSITIONAL = "positional"
    THRESHOLD = "threshold"


@dataclass(frozen=True)
class IdealKind:
    """
    Closure rule of an ideal.

    Left is positional closure at slot 2 and Right at slot n; TwoSided
    requires both. Positional(S) fires when every slot in S holds a member,
    Threshold(t) when at least t slots do. Positions are 1-based.
    """

    variant: KindVariant
    positions: tuple[int, ...] = ()
    threshold: int = 0

    @classmethod
    def positional(cls, positions: Iterable[int]) -> "IdealKind":
        ordered = tuple(sorted(set(positions)))
        if not ordered or ordered[0] < 1:
            raise UsageError(f"positional kind needs a nonempty set of positions >= 1, got {ordered}")
        return cls(KindVariant.POSITIONAL, positions=ordered)

    @classmethod
    def at_least(cls, count: int) -> "IdealKind":
        if count < 1:
            raise UsageError(f"threshold must be at least 1, got {count}")
        return cls(KindVariant.THRESHOLD, threshold=count)

    @classmethod
    def parse(cls, text: str) -> "IdealKind":
        """Parse ``left``, ``right``, ``two_sided``, ``positional{1,3}`` or ``threshold{2}``."""
        text = text.strip().lower()
        for variant in (KindVariant.LEFT, KindVariant.RIGHT, KindVariant.TWO_SIDED):
            if text == variant.value:
                return cls(variant)
        match = re.fullmatch(r"(positional|threshold)\{([0-9,\s]+)\}", text)
        if not match:
            raise UsageError(f"Unknown ideal kind '{text}'")
        numbers = [int(part) for part in match.group(2).split(",") if part.strip()]
        if match.group(1) == "positional":
            return cls.positional(numbers)
        if len(numbers) != 1:
            raise UsageError(f"threshold kind takes one number, got {numbers}")
        return cls.at_least(numbers[0])

    def label(self) -> str:
        if self.variant is KindVariant.POSITIONAL:
            return "positional{" + ",".join(str(p) for p in self.positions) + "}"
        if self.variant is KindVariant.THRESHOLD:
            return "threshold{" + str(self.threshold) + "}"
        return self.variant.value

    def to_jsonable(self) -> str:
        return self.label()

    def check_arity(self, n: int) -> None:
        if self.variant is KindVariant.POSITIONAL and self.positions[-1] > n:
            raise UsageError(f"{self.label()} names a slot beyond arity {n}")
        if self.variant is KindVariant.THRESHOLD and self.threshold > n:
            raise UsageError(f"{self.label()} exceeds arity {n}")

    def trigger_sets(self, n: int) -> tuple[tuple[int, ...], ...]:
        """0-based slot sets whose joint membership forces the product in."""
        if self.variant is KindVariant.LEFT:
            return ((1,),)
        if self.variant is KindVariant.RIGHT:
            return ((n - 1,),)
        if self.variant is KindVariant.TWO_SIDED:
            return ((1,), (n - 1,))
        if self.variant is KindVariant.POSITIONAL:
            return (tuple(p - 1 for p in self.positions),)
        return tuple(itertools.combinations(range(n), self.threshold))

    def triggered(self, n: int, bits: int, args: Sequence[int]) -> bool:
        if self.variant is KindVariant.THRESHOLD:
            return sum((bits >> a) & 1 for a in args) >= self.threshold
        return any(
            all((bits >> args[slot]) & 1 for slot in slots) for slots in self.trigger_sets(n)
        )


LEFT = IdealKind(KindVariant.LEFT)
RIGHT = IdealKind(KindVariant.RIGHT)
TWO_SIDED = IdealKind(KindVariant.TWO_SIDED)


@dataclass(frozen=True)
class IdealSubset:
    """A subset of [0, m) as a bit set; ``kinds`` lists verified closure kinds."""

    m: int
    bits: int
    kinds: frozenset = field(default=frozenset(), compare=False)

    @classmethod
    def of(cls, m: int, members: Iterable[int], kinds: Iterable[IdealKind] = ()) -> "IdealSubset":
        bits = 0
        for element in members:
            if not 0 <= element < m:
                raise UsageError(f"element {element} outside [0, {m})")
            bits |= 1 << element
        return cls(m, bits, frozenset(kinds))

    @classmethod
    def full(cls, m: int) -> "IdealSubset":
        return cls(m, (1 << m) - 1)

    @classmethod
    def zero(cls, m: int) -> "IdealSubset":
        return cls(m, 1)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.m) if (self.bits >> x) & 1)

    @property
    def is_full(self) -> bool:
        return self.bits == (1 << self.m) - 1

    def __contains__(self, element: int) -> bool:
        return bool((self.bits >> element) & 1)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __repr__(self) -> str:
        return "{" + ",".join(str(x) for x in self.members) + "}"

    def issubset(self, other: "IdealSubset") -> bool:
        return self.bits & ~other.bits == 0

    def tagged(self, *kinds: IdealKind) -> "IdealSubset":
        return IdealSubset(self.m, self.bits, self.kinds | frozenset(kinds))

    def to_jsonable(self) -> list[int]:
        return list(self.members)


SubsetLike = Union[IdealSubset, int]


def as_bits(subset: SubsetLike) -> int:
    return subset.bits if isinstance(subset, IdealSubset) else subset


def sort_key(subset: IdealSubset) -> int:
    return subset.bits


def _check_scan_size(s: GammaSemiring, limit: Optional[int]) -> None:
    limit = limit or get_toolkit_settings().ideal_scan_limit
    if s.m > limit:
        raise CapacityError("carrier size for subset scans", s.m, limit)


def is_additively_closed(s: GammaSemiring, subset: SubsetLike) -> bool:
    bits = as_bits(subset)
    if not bits & 1:
        return False
    members = [x for x in range(s.m) if (bits >> x) & 1]
    return all((bits >> s.plus(a, b)) & 1 for a in members for b in members)


def additive_closure(s: GammaSemiring, subset: SubsetLike) -> int:
    """Smallest additively closed superset, always containing 0."""
    bits = as_bits(subset) | 1
    frontier = True
    while frontier:
        frontier = False
        members = [x for x in range(s.m) if (bits >> x) & 1]
        for a in members:
            for b in members:
                total = s.plus(a, b)
                if not (bits >> total) & 1:
                    bits |= 1 << total
                    frontier = True
    return bits


def additive_closed_subsets(s: GammaSemiring, limit: Optional[int] = None) -> list[IdealSubset]:
    """Every additively closed subset containing 0, ordered by bit pattern."""
    _check_scan_size(s, limit)
    seen = set()
    for atoms in range(1 << (s.m - 1)):
        seen.add(additive_closure(s, (atoms << 1) | 1))
    return [IdealSubset(s.m, bits) for bits in sorted(seen)]


def closure_violation(
    s: GammaSemiring,
    subset: SubsetLike,
    kind: IdealKind,
) -> Optional[tuple[tuple[int, ...], tuple[int, ...], int]]:
    """First ``(gammas, args, value)`` where the kind's rule fires but the product escapes."""
    kind.check_arity(s.n)
    bits = as_bits(subset)
    gammas = s.gamma_tuples()
    for gamma_index, args, value in s.iter_cells():
        if not (bits >> value) & 1 and kind.triggered(s.n, bits, args):
            return gammas[gamma_index], args, value
    return None


def is_ideal(s: GammaSemiring, subset: SubsetLike, kind: IdealKind) -> bool:
    if not is_additively_closed(s, subset):
        return False
    return closure_violation(s, subset, kind) is None


def all_ideals(
    s: GammaSemiring,
    kind: IdealKind,
    limit: Optional[int] = None,
) -> list[IdealSubset]:
    """All ideals of ``kind``, kind-tagged, ordered by bit pattern."""
    kind.check_arity(s.n)
    return [
        candidate.tagged(kind)
        for candidate in additive_closed_subsets(s, limit)
        if closure_violation(s, candidate, kind) is None
    ]


def generated_ideal(s: GammaSemiring, seed: SubsetLike, kind: IdealKind) -> IdealSubset:
    """Least ideal of ``kind`` containing ``seed``."""
    kind.check_arity(s.n)
    seed_bits = as_bits(seed)
    if not seed_bits:
        raise UsageError("seed of a generated ideal must be nonempty")

    current = additive_closure(s, seed_bits)
    while True:
        grown = current
        for _, args, value in s.iter_cells():
            if kind.triggered(s.n, current, args):
                grown |= 1 << value
        grown = additive_closure(s, grown)
        if grown == current:
            return IdealSubset(s.m, current, frozenset({kind}))
        current = grown


def _shared_kinds(
    s: GammaSemiring,
    operands: Sequence[IdealSubset],
    kind: Optional[IdealKind],
) -> frozenset:
    if kind is not None:
        for operand in operands:
            if kind not in operand.kinds and not is_ideal(s, operand, kind):
                raise UsageError(f"{operand!r} is not a {kind.label()} ideal")
        return frozenset({kind})

    common = frozenset.intersection(*(operand.kinds for operand in operands))
    if not common:
        raise UsageError("operands share no verified ideal kind")
    return common


def _reverified(s: GammaSemiring, bits: int, kinds: frozenset, operation: str) -> IdealSubset:
    verified = []
    for candidate_kind in sorted(kinds, key=IdealKind.label):
        if is_ideal(s, bits, candidate_kind):
            verified.append(candidate_kind)
        else:
            logger.warning(
                f"{operation} of {candidate_kind.label()} ideals is not a "
                f"{candidate_kind.label()} ideal: {IdealSubset(s.m, bits)!r}"
            )
    return IdealSubset(s.m, bits, frozenset(verified))


def sum_ideals(
    s: GammaSemiring,
    first: IdealSubset,
    second: IdealSubset,
    kind: Optional[IdealKind] = None,
) -> IdealSubset:
    """
    Additive closure of ``{x + y}``. The result is tagged only with the
    shared kinds it still satisfies; a dropped kind is logged.
    """
    kinds = _shared_kinds(s, (first, second), kind)
    sums = 0
    for a in first.members:
        for b in second.members:
            sums |= 1 << s.plus(a, b)
    return _reverified(s, additive_closure(s, sums), kinds, "sum")


def intersect_ideals(
    s: GammaSemiring,
    ideals: Sequence[IdealSubset],
    kind: Optional[IdealKind] = None,
) -> IdealSubset:
    """Bit-and of the family; the empty family gives the full carrier."""
    if not ideals:
        return IdealSubset.full(s.m)
    kinds = _shared_kinds(s, ideals, kind)
    bits = s.full_bits
    for ideal in ideals:
        bits &= ideal.bits
    return _reverified(s, bits, kinds, "intersection")


@dataclass(frozen=True)
class ThresholdIndex:
    """Least threshold closing the subset; ``None`` stands for infinity."""

    value: Optional[int]

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def to_jsonable(self):
        return "inf" if self.value is None else self.value

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


def tau(s: GammaSemiring, subset: SubsetLike) -> ThresholdIndex:
    if not is_additively_closed(s, subset):
        logger.debug(f"{IdealSubset(s.m, as_bits(subset))!r} is not additively closed, tau is infinite")
        return ThresholdIndex(None)
    for count in range(1, s.n + 1):
        if closure_violation(s, subset, IdealKind.at_least(count)) is None:
            return ThresholdIndex(count)
    return ThresholdIndex(None)


@dataclass(frozen=True)
class PositionalDecomposition:
    holds: bool
    family: tuple[tuple[tuple[int, ...], IdealSubset], ...]
    intersection: IdealSubset

    def to_jsonable(self) -> dict:
        return {
            "holds": self.holds,
            "family": [
                {"positions": list(positions), "ideal": ideal.to_jsonable()}
                for positions, ideal in self.family
            ],
            "intersection": self.intersection.to_jsonable(),
        }


def positional_decomposition_check(
    s: GammaSemiring,
    subset: IdealSubset,
    count: int,
) -> PositionalDecomposition:
    """Intersect the least Positional(S)-ideals over ``subset`` for every |S| = count."""
    threshold_kind = IdealKind.at_least(count)
    threshold_kind.check_arity(s.n)
    if not is_ideal(s, subset, threshold_kind):
        raise UsageError(f"{subset!r} is not a {threshold_kind.label()} ideal")

    family = []
    bits = s.full_bits
    for positions in itertools.combinations(range(1, s.n + 1), count):
        closure = generated_ideal(s, subset, IdealKind.positional(positions))
        family.append((positions, closure))
        bits &= closure.bits

    intersection = IdealSubset(s.m, bits)
    holds = intersection.bits == subset.bits
    if not holds:
        logger.warning(
            f"Positional closures of {subset!r} intersect to {intersection!r} at threshold {count}"
        )
    return PositionalDecomposition(holds, tuple(family), intersection)


def _lattice_outcomes(s: GammaSemiring, kind: IdealKind, ideals: list[IdealSubset]):
    for first, second in itertools.combinations_with_replacement(ideals, 2):
        total = sum_ideals(s, first, second, kind)
        meet = intersect_ideals(s, [first, second], kind)
        witness = {"kind": kind, "pair": [first, second], "sum": total, "intersection": meet}
        yield witness, kind in total.kinds and kind in meet.kinds


def _hierarchy_outcomes(s: GammaSemiring, closed: list[IdealSubset]):
    for subset in closed:
        holding = [
            count for count in range(1, s.n + 1)
            if closure_violation(s, subset, IdealKind.at_least(count)) is None
        ]
        if not holding:
            continue
        lowest = holding[0]
        missing = [count for count in range(lowest, s.n + 1) if count not in holding]
        yield {"subset": subset, "holds_at": lowest, "fails_at": missing}, not missing


def _monotonicity_outcomes(s: GammaSemiring, indexed: list[tuple[IdealSubset, ThresholdIndex]]):
    for (smaller, smaller_tau), (larger, larger_tau) in itertools.permutations(indexed, 2):
        if smaller.bits != larger.bits and smaller.issubset(larger):
            witness = {"smaller": smaller, "tau_smaller": smaller_tau,
                       "larger": larger, "tau_larger": larger_tau}
            yield witness, larger_tau.value >= smaller_tau.value


def _prime_saturated(s: GammaSemiring, subset: IdealSubset) -> bool:
    return all(
        value not in subset or any(x in subset for x in args)
        for _, args, value in s.iter_cells()
    )


def audit_ideal_theorems(s: GammaSemiring, limit: Optional[int] = None) -> list[AuditEntry]:
    """
    Lattice, threshold and generation claims checked over the whole subset
    lattice. Counterexamples are returned as failing entries.
    """
    entries = []
    for kind in (LEFT, RIGHT, TWO_SIDED):
        entries.append(collect(
            f"ideals.lattice.{kind.label()}",
            _lattice_outcomes(s, kind, all_ideals(s, kind, limit)),
        ))

    closed = additive_closed_subsets(s, limit)
    extra_kinds = [
        IdealKind.positional(positions)
        for size in range(1, s.n + 1)
        for positions in itertools.combinations(range(1, s.n + 1), size)
    ] + [IdealKind.at_least(count) for count in range(1, s.n + 1)]
    for kind in extra_kinds:
        members = [c.tagged(kind) for c in closed if closure_violation(s, c, kind) is None]
        entries.append(collect(
            f"ideals.threshold_lattice.{kind.label()}",
            _lattice_outcomes(s, kind, members),
        ))

    entries.append(collect("ideals.threshold_hierarchy", _hierarchy_outcomes(s, closed)))

    indexed = [(c, tau(s, c)) for c in closed]
    finite = [(c, index) for c, index in indexed if not index.is_infinite]
    entries.append(collect(
        "ideals.threshold_monotonicity",
        _monotonicity_outcomes(s, finite),
        detail="contested: larger ideals may close at a lower threshold",
    ))
    entries.append(collect(
        "ideals.tau_prime_saturation",
        (
            ({"subset": c, "tau": index, "prime_saturated": _prime_saturated(s, c)},
             (index.value == 1) == _prime_saturated(s, c))
            for c, index in finite
        ),
        detail="contested",
    ))
    entries.append(collect(
        "ideals.positional_decomposition",
        (
            (decomposition, decomposition.holds)
            for c, index in finite
            for decomposition in [positional_decomposition_check(s, c, index.value)]
        ),
    ))

    def generation_outcomes():
        for kind in (LEFT, RIGHT, TWO_SIDED):
            ideals = all_ideals(s, kind, limit)
            for element in range(s.m):
                generated = generated_ideal(s, 1 << element, kind)
                containing = [i for i in ideals if element in i]
                least = intersect_ideals(s, containing, kind).bits if containing else s.full_bits
                removable = [
                    x for x in generated.members
                    if x != element and is_ideal(s, generated.bits & ~(1 << x), kind)
                ]
                witness = {"kind": kind, "seed": element, "generated": generated,
                           "removable": removable}
                yield witness, not removable and least == generated.bits

    entries.append(collect("ideals.generated_minimality", generation_outcomes()))
    return entries
