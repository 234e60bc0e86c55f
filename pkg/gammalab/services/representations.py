"""Finite j-slot modules: validation, enumeration, annihilators and primitive ideals."""

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from gammalab.config.settings import get_toolkit_settings
from gammalab.services.audit import AuditEntry, AuditStatus, collect
from gammalab.services.axioms import ValidationReport, Violation
from gammalab.services.enumerator import enumerate_additive
from gammalab.services.errors import CapacityError, UsageError
from gammalab.services.ideals import TWO_SIDED, IdealSubset, is_ideal
from gammalab.services.metrics_service import metrics_service
from gammalab.services.radicals import Side, is_prime, jacobson_radical
from gammalab.services.search_kernel import (
    SATISFIED,
    UNSET,
    VIOLATED,
    Constraint,
    ConstraintSearch,
    sum_constraint,
)
from gammalab.services.semiring import GammaSemiring


logger = logging.getLogger(__name__)


class _ActionLayout:
    """
    Flat action indexing: Gamma-tuple, then the n-1 base arguments in slot
    order, then the module element.
    """

    def __init__(self, base: GammaSemiring, slot: int, k: int):
        self.base = base
        self.slot_index = slot - 1
        self.k = k
        self.block = base.m ** (base.n - 1) * k

    def index(self, gamma_index: int, base_args: Sequence[int], x: int) -> int:
        position = 0
        for a in base_args:
            position = position * self.base.m + a
        return gamma_index * self.block + position * self.k + x

    def split(self, word: Sequence[int]) -> tuple[tuple[int, ...], int]:
        j = self.slot_index
        return tuple(word[:j]) + tuple(word[j + 1:]), word[j]

    def word_index(self, gamma_index: int, word: Sequence[int]) -> int:
        base_args, x = self.split(word)
        return self.index(gamma_index, base_args, x)

    def weight(self, word_position: int) -> int:
        """Index step for a unit change of the letter at ``word_position`` of an action word."""
        j = self.slot_index
        if word_position == j:
            return 1
        base_position = word_position if word_position < j else word_position - 1
        return self.base.m ** (self.base.n - 2 - base_position) * self.k


@dataclass(frozen=True, eq=False)
class ModuleStructure:
    """Additive monoid on [0, k) acted on by the base with the module element in ``slot``."""

    base: GammaSemiring
    slot: int
    k: int
    madd: np.ndarray
    action: np.ndarray

    def __post_init__(self):
        n, m = self.base.n, self.base.m
        if not 1 <= self.slot <= n:
            raise UsageError(f"module slot must lie in [1, {n}], got {self.slot}")
        if self.k < 1:
            raise UsageError("module carrier must be nonempty")
        madd = np.array(self.madd, dtype=np.int16)
        if madd.shape != (self.k, self.k):
            raise UsageError(f"module addition must be {self.k}x{self.k}, got {madd.shape}")
        action = np.array(self.action, dtype=np.int16)
        shape = (self.base.gamma_count,) + (m,) * (n - 1) + (self.k,)
        try:
            action = action.reshape(shape)
        except ValueError:
            raise UsageError(f"action table must have shape {shape}, got {action.shape}")
        for table in (madd, action):
            if table.size and (table.min() < 0 or table.max() >= self.k):
                raise UsageError(f"module tables hold values outside [0, {self.k})")

        madd.setflags(write=False)
        action.setflags(write=False)
        object.__setattr__(self, "madd", madd)
        object.__setattr__(self, "action", action)
        object.__setattr__(self, "_flat_madd", [int(v) for v in madd.ravel()])
        object.__setattr__(self, "_flat_action", [int(v) for v in action.ravel()])
        object.__setattr__(self, "_layout", _ActionLayout(self.base, self.slot, self.k))

    @classmethod
    def from_rules(
        cls,
        base: GammaSemiring,
        slot: int,
        k: int,
        madd_rule: Callable[[int, int], int],
        action_rule: Callable[[tuple[int, ...], tuple[int, ...]], int],
    ) -> "ModuleStructure":
        """``action_rule(gammas, word)`` sees the full n-letter word with the module element in ``slot``."""
        madd = [[madd_rule(x, y) for y in range(k)] for x in range(k)]
        action = []
        for gammas in base.gamma_tuples():
            for base_args in itertools.product(range(base.m), repeat=base.n - 1):
                for x in range(k):
                    word = base_args[:slot - 1] + (x,) + base_args[slot - 1:]
                    action.append(action_rule(gammas, word))
        return cls(base, slot, k, madd, action)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleStructure):
            return NotImplemented
        return (self.base, self.slot, self.k, self.table_key()) == (
            other.base, other.slot, other.k, other.table_key()
        )

    def __hash__(self) -> int:
        return hash((self.base, self.slot, self.k, self.table_key()))

    def __repr__(self) -> str:
        return f"ModuleStructure(slot={self.slot}, k={self.k}, base={self.base!r})"

    def plus(self, x: int, y: int) -> int:
        return self._flat_madd[x * self.k + y]

    def act(self, gamma_index: int, word: Sequence[int]) -> int:
        return self._flat_action[self._layout.word_index(gamma_index, word)]

    def words(self) -> Iterator[tuple[int, tuple[int, ...]]]:
        """Every (gamma_index, word) pair."""
        j = self.slot - 1
        for gamma_index in range(self.base.gamma_count):
            for base_args in itertools.product(range(self.base.m), repeat=self.base.n - 1):
                for x in range(self.k):
                    yield gamma_index, base_args[:j] + (x,) + base_args[j:]

    @property
    def is_zero_action(self) -> bool:
        return not any(self._flat_action)

    def table_key(self) -> tuple[int, ...]:
        return tuple(self._flat_madd) + tuple(self._flat_action)

    def relabel(self, permutation: Sequence[int]) -> "ModuleStructure":
        forward = np.asarray(permutation, dtype=np.intp)
        inverse = np.argsort(forward)
        madd = forward[self.madd][np.ix_(inverse, inverse)]
        action = forward[self.action][..., inverse]
        return ModuleStructure(self.base, self.slot, self.k, madd, action)

    def to_jsonable(self) -> dict:
        return {
            "slot": self.slot,
            "k": self.k,
            "madd": self.madd.tolist(),
            "action": self.action.reshape(self.base.gamma_count, -1).tolist(),
        }


def regular_module(base: GammaSemiring, slot: int) -> ModuleStructure:
    return ModuleStructure.from_rules(
        base, slot, base.m, base.plus, lambda gammas, word: base.value(base.gamma_index(gammas), word)
    )


def _well_typed(n: int, slot_index: int, window: int, position: int) -> bool:
    """Whether bracketing at ``window`` keeps the module letter at ``position`` in action slots."""
    if window <= position < window + n:
        return position - window == slot_index and window == slot_index
    outer = position if position < window else position - (n - 1)
    return outer == slot_index


@dataclass(frozen=True)
class _WindowRef:
    """Inner value is a fixed base product or an action cell; outer cell = base + inner * step."""

    inner_cell: Optional[int]
    inner_value: int
    outer_base: int
    outer_step: int


def _window_ref(
    layout: _ActionLayout,
    window: int,
    position: int,
    letters: Sequence[int],
    gammas: Sequence[int],
) -> _WindowRef:
    base = layout.base
    n = base.n
    inner_letters = tuple(letters[window:window + n])
    inner_gamma = base.gamma_index(gammas[window:window + n - 1])
    outer_gamma = base.gamma_index(tuple(gammas[:window]) + tuple(gammas[window + n - 1:]))
    outer_word = tuple(letters[:window]) + (0,) + tuple(letters[window + n:])
    outer_base = layout.word_index(outer_gamma, outer_word)
    step = layout.weight(window)
    if window <= position < window + n:
        return _WindowRef(layout.word_index(inner_gamma, inner_letters), 0, outer_base, step)
    return _WindowRef(None, base.value(inner_gamma, inner_letters), outer_base, step)


def _resolve(ref: _WindowRef, cells: Sequence[int]) -> tuple[int, int]:
    """(value, UNSET) when decided, else (UNSET, cell index still needed)."""
    inner = ref.inner_value if ref.inner_cell is None else cells[ref.inner_cell]
    if inner == UNSET:
        return UNSET, ref.inner_cell
    outer = ref.outer_base + inner * ref.outer_step
    if cells[outer] == UNSET:
        return UNSET, outer
    return cells[outer], UNSET


def _compatibility_constraint(first: _WindowRef, second: _WindowRef) -> Constraint:
    def check(cells: list[int]) -> int:
        value_a, missing = _resolve(first, cells)
        if missing != UNSET:
            return missing
        value_b, missing = _resolve(second, cells)
        if missing != UNSET:
            return missing
        return SATISFIED if value_a == value_b else VIOLATED

    return check


def _compatibility_instances(layout: _ActionLayout, base_letters: Sequence[int], module_letters: Sequence[int]):
    """Yield (gammas, position, letters, window_a, window_b) for every equation the mode imposes."""
    base = layout.base
    n = base.n
    windows = base.assoc_mode.windows(n)
    for position in range(2 * n - 1):
        typed = [w for w in windows if _well_typed(n, layout.slot_index, w, position)]
        if len(typed) < 2:
            continue
        for gammas in itertools.product(range(base.r), repeat=2 * n - 2):
            for others in itertools.product(base_letters, repeat=2 * n - 2):
                for x in module_letters:
                    letters = others[:position] + (x,) + others[position:]
                    for window in typed[1:]:
                        yield gammas, position, letters, typed[0], window


def validate_module(
    mod: ModuleStructure,
    max_violations: Optional[int] = None,
    stop_at_first: bool = False,
) -> ValidationReport:
    """
    M1 additive monoid, M2 additivity in base slots, M3 additivity in the
    module slot, M4 zero absorption, M5 compatibility with the base operation.
    """
    cap = max_violations or get_toolkit_settings().max_violations
    base, k = mod.base, mod.k
    layout = mod._layout
    j = mod.slot - 1
    gamma_tuples = base.gamma_tuples()

    def monoid():
        for x in range(k):
            if mod.plus(0, x) != x:
                yield Violation("M1", (), (0, x), mod.plus(0, x), x)
        for x, y in itertools.product(range(k), repeat=2):
            if mod.plus(x, y) != mod.plus(y, x):
                yield Violation("M1", (), (1, x, y), mod.plus(x, y), mod.plus(y, x))
        for x, y, z in itertools.product(range(k), repeat=3):
            lhs, rhs = mod.plus(mod.plus(x, y), z), mod.plus(x, mod.plus(y, z))
            if lhs != rhs:
                yield Violation("M1", (), (2, x, y, z), lhs, rhs)

    def base_additivity():
        for gamma_index, word in mod.words():
            for position in (p for p in range(base.n) if p != j):
                a = word[position]
                for a_prime in range(base.m):
                    other = word[:position] + (a_prime,) + word[position + 1:]
                    summed = word[:position] + (base.plus(a, a_prime),) + word[position + 1:]
                    lhs = mod.act(gamma_index, summed)
                    rhs = mod.plus(mod.act(gamma_index, word), mod.act(gamma_index, other))
                    if lhs != rhs:
                        yield Violation("M2", gamma_tuples[gamma_index], (position + 1, a_prime, *word), lhs, rhs)

    def module_additivity():
        for gamma_index, gammas in enumerate(gamma_tuples):
            for base_args in itertools.product(range(base.m), repeat=base.n - 1):
                for x, y in itertools.product(range(k), repeat=2):
                    lhs = mod.act(gamma_index, base_args[:j] + (mod.plus(x, y),) + base_args[j:])
                    rhs = mod.plus(
                        mod.act(gamma_index, base_args[:j] + (x,) + base_args[j:]),
                        mod.act(gamma_index, base_args[:j] + (y,) + base_args[j:]),
                    )
                    if lhs != rhs:
                        yield Violation("M3", gammas, (*base_args, x, y), lhs, rhs)

    def absorption():
        for gamma_index, word in mod.words():
            base_args, x = layout.split(word)
            value = mod.act(gamma_index, word)
            if value != 0 and (x == 0 or 0 in base_args):
                yield Violation("M4", gamma_tuples[gamma_index], word, value, 0)

    def compatibility():
        cells = mod._flat_action
        for gammas, position, letters, first, second in _compatibility_instances(
            layout, range(base.m), range(k)
        ):
            lhs, _ = _resolve(_window_ref(layout, first, position, letters, gammas), cells)
            rhs, _ = _resolve(_window_ref(layout, second, position, letters, gammas), cells)
            if lhs != rhs:
                yield Violation("M5", gammas, (position, second, *letters), lhs, rhs)

    violations, truncated = [], []
    for axiom, check in (("M1", monoid), ("M2", base_additivity), ("M3", module_additivity),
                         ("M4", absorption), ("M5", compatibility)):
        for count, violation in enumerate(check()):
            if count >= cap:
                truncated.append(axiom)
                break
            violations.append(violation)
            if stop_at_first:
                break
        if stop_at_first and violations:
            break
    return ValidationReport(tuple(violations), tuple(truncated))


def module_constraints(base: GammaSemiring, slot: int, k: int, madd: Sequence[Sequence[int]]) -> list[Constraint]:
    """Additivity and compatibility instances over nonzero letters."""
    layout = _ActionLayout(base, slot, k)
    j = slot - 1
    plus = lambda x, y: madd[x][y]  # noqa: E731
    nonzero_base = range(1, base.m)
    nonzero_module = range(1, k)
    constraints = []

    for gamma_index in range(base.gamma_count):
        for base_position in range(base.n - 1):
            for a, a_prime in itertools.combinations_with_replacement(nonzero_base, 2):
                for rest in itertools.product(nonzero_base, repeat=base.n - 2):
                    for x in nonzero_module:
                        def args(v):
                            return rest[:base_position] + (v,) + rest[base_position:]

                        constraints.append(sum_constraint(
                            layout.index(gamma_index, args(base.plus(a, a_prime)), x),
                            layout.index(gamma_index, args(a), x),
                            layout.index(gamma_index, args(a_prime), x),
                            plus,
                        ))
        for base_args in itertools.product(nonzero_base, repeat=base.n - 1):
            for x, y in itertools.combinations_with_replacement(nonzero_module, 2):
                constraints.append(sum_constraint(
                    layout.index(gamma_index, base_args, madd[x][y]),
                    layout.index(gamma_index, base_args, x),
                    layout.index(gamma_index, base_args, y),
                    plus,
                ))

    for gammas, position, letters, first, second in _compatibility_instances(
        layout, nonzero_base, nonzero_module
    ):
        constraints.append(_compatibility_constraint(
            _window_ref(layout, first, position, letters, gammas),
            _window_ref(layout, second, position, letters, gammas),
        ))
    logger.debug(f"{len(constraints)} module constraints for slot {slot}, k={k}")
    return constraints


def _prefilled_action(base: GammaSemiring, slot: int, k: int) -> tuple[list[int], list[int]]:
    layout = _ActionLayout(base, slot, k)
    cells = [0] * (base.gamma_count * layout.block)
    free = []
    for gamma_index in range(base.gamma_count):
        for base_args in itertools.product(range(base.m), repeat=base.n - 1):
            for x in range(k):
                if x and 0 not in base_args:
                    index = layout.index(gamma_index, base_args, x)
                    cells[index] = UNSET
                    free.append(index)
    return cells, sorted(free)


def is_canonical_module(mod: ModuleStructure) -> bool:
    key = mod.table_key()
    return all(
        mod.relabel((0,) + tail).table_key() >= key
        for tail in itertools.permutations(range(1, mod.k))
    )


@dataclass(frozen=True)
class ModuleEnumeration:
    modules: tuple[ModuleStructure, ...]
    valid_count: int
    nodes_visited: int
    total_candidates_scanned: int


def enumerate_modules(
    s: GammaSemiring,
    slot: int,
    k_max: int,
    carrier_limit: Optional[int] = None,
    free_cell_limit: Optional[int] = None,
) -> ModuleEnumeration:
    """Valid modules with carriers up to ``k_max``, one per relabeling class, in search order."""
    settings = get_toolkit_settings()
    carrier_limit = carrier_limit or settings.module_carrier_limit
    if k_max > carrier_limit:
        raise CapacityError("module carrier size", k_max, carrier_limit)
    if not 1 <= slot <= s.n:
        raise UsageError(f"module slot must lie in [1, {s.n}], got {slot}")

    modules = []
    valid = nodes = candidates = 0
    for k in range(1, k_max + 1):
        cells, free = _prefilled_action(s, slot, k)
        limit = free_cell_limit or settings.free_cell_limit
        if len(free) > limit:
            raise CapacityError("free action cells", len(free), limit)
        for madd in enumerate_additive(k, deduplicate=False, carrier_limit=carrier_limit):
            search = ConstraintSearch(
                cells, free, [tuple(range(k))] * len(free), module_constraints(s, slot, k, madd)
            )
            for solution in search.solutions():
                mod = ModuleStructure(s, slot, k, madd, solution)
                valid += 1
                if is_canonical_module(mod):
                    modules.append(mod)
            nodes += search.nodes
            candidates += search.candidates

    metrics_service.record_search("modules", nodes, candidates, len(modules))
    logger.info(f"Found {len(modules)} modules (slot {slot}, k <= {k_max}) from {valid} valid tables")
    return ModuleEnumeration(tuple(modules), valid, nodes, candidates)


def submodules(mod: ModuleStructure) -> list[tuple[int, ...]]:
    """Subsets holding 0 closed under module addition and the action, by bit pattern."""
    result = []
    for bits in range(1, 1 << mod.k, 2):
        members = [x for x in range(mod.k) if (bits >> x) & 1]
        closed = all((bits >> mod.plus(x, y)) & 1 for x in members for y in members)
        if closed:
            closed = all(
                (bits >> mod.act(gamma_index, word)) & 1
                for gamma_index, word in mod.words()
                if (bits >> word[mod.slot - 1]) & 1
            )
        if closed:
            result.append(tuple(members))
    return result


def is_simple(mod: ModuleStructure) -> bool:
    """
    No submodules besides {0} and the whole carrier, and an action that is
    not identically zero.

    The second condition goes beyond M != 0: a nonzero carrier with the zero
    action has only trivial submodules when k is 2, but its annihilator is all
    of T, and primitive ideals must stay proper.
    """
    if mod.k < 2 or mod.is_zero_action:
        return False
    return len(submodules(mod)) == 2


@dataclass(frozen=True)
class AnnihilatorSet:
    two_sided: IdealSubset
    left: IdealSubset
    right: IdealSubset

    def to_jsonable(self) -> dict:
        return {
            "two_sided": self.two_sided.to_jsonable(),
            "left": self.left.to_jsonable(),
            "right": self.right.to_jsonable(),
        }


def _annihilated_by_positions(mod: ModuleStructure, positions: Sequence[int]) -> IdealSubset:
    killing = []
    for a in range(mod.base.m):
        if all(
            mod.act(gamma_index, word) == 0
            for gamma_index, word in mod.words()
            if any(word[p] == a for p in positions)
        ):
            killing.append(a)
    return IdealSubset.of(mod.base.m, killing)


def annihilators(mod: ModuleStructure) -> AnnihilatorSet:
    """Elements killing every action when placed in any (left: earlier, right: later) base slot."""
    j = mod.slot - 1
    base_positions = [p for p in range(mod.base.n) if p != j]
    return AnnihilatorSet(
        two_sided=_annihilated_by_positions(mod, base_positions),
        left=_annihilated_by_positions(mod, [p for p in base_positions if p < j]),
        right=_annihilated_by_positions(mod, [p for p in base_positions if p > j]),
    )


@dataclass(frozen=True)
class PrimitiveIdeals:
    """Annihilators of simple modules found with carriers up to ``k_max``."""

    slot: int
    k_max: int
    entries: tuple[tuple[IdealSubset, ModuleStructure], ...]

    @property
    def ideals(self) -> list[IdealSubset]:
        return [ideal for ideal, _ in self.entries]

    def to_jsonable(self) -> dict:
        return {
            "status": AuditStatus.WITHIN_BOUND.value,
            "slot": self.slot,
            "k_max": self.k_max,
            "ideals": [
                {"ideal": ideal.to_jsonable(), "witness_module": witness.to_jsonable()}
                for ideal, witness in self.entries
            ],
        }


def simple_modules(s: GammaSemiring, slot: int, k_max: int) -> list[ModuleStructure]:
    return [mod for mod in enumerate_modules(s, slot, k_max).modules if is_simple(mod)]


def primitive_ideals(
    s: GammaSemiring,
    slot: int,
    k_max: int,
    simple: Optional[list[ModuleStructure]] = None,
) -> PrimitiveIdeals:
    seen = {}
    for mod in simple if simple is not None else simple_modules(s, slot, k_max):
        ideal = annihilators(mod).two_sided
        if ideal.bits not in seen:
            if is_ideal(s, ideal, TWO_SIDED):
                ideal = ideal.tagged(TWO_SIDED)
            seen[ideal.bits] = (ideal, mod)
    entries = tuple(seen[bits] for bits in sorted(seen))
    return PrimitiveIdeals(slot, k_max, entries)


def module_homomorphisms(source: ModuleStructure, target: ModuleStructure) -> Iterator[tuple[int, ...]]:
    """Maps fixing 0 that preserve module addition and the action."""
    if (source.base, source.slot) != (target.base, target.slot):
        return
    j = source.slot - 1
    for tail in itertools.product(range(target.k), repeat=source.k - 1):
        phi = (0,) + tail
        if any(
            phi[source.plus(x, y)] != target.plus(phi[x], phi[y])
            for x in range(source.k) for y in range(source.k)
        ):
            continue
        if all(
            phi[source.act(gamma_index, word)]
            == target.act(gamma_index, word[:j] + (phi[word[j]],) + word[j + 1:])
            for gamma_index, word in source.words()
        ):
            yield phi


def quotient_module(mod: ModuleStructure, blocks: Sequence[Sequence[int]]) -> ModuleStructure:
    """Module induced on the blocks of a congruence (blocks sorted by least member)."""
    class_of = [0] * mod.k
    for index, block in enumerate(blocks):
        for x in block:
            class_of[x] = index
    representatives = [block[0] for block in blocks]
    return ModuleStructure.from_rules(
        mod.base,
        mod.slot,
        len(blocks),
        lambda a, b: class_of[mod.plus(representatives[a], representatives[b])],
        lambda gammas, word: class_of[mod.act(
            mod.base.gamma_index(gammas),
            word[:mod.slot - 1] + (representatives[word[mod.slot - 1]],) + word[mod.slot:],
        )],
    )


def _kernel_blocks(phi: Sequence[int]) -> list[tuple[int, ...]]:
    blocks: dict[int, list[int]] = {}
    for x, image in enumerate(phi):
        blocks.setdefault(image, []).append(x)
    return sorted((tuple(block) for block in blocks.values()), key=lambda block: block[0])


def _within_bound(check_id: str, equal: bool, witness: dict, k_max: int) -> AuditEntry:
    if equal:
        return AuditEntry(check_id, AuditStatus.WITHIN_BOUND, detail=f"equal for carriers up to {k_max}")
    return collect(check_id, [(witness, False)], detail=f"differs for carriers up to {k_max}")


def _meet(m: int, subsets: Sequence[IdealSubset]) -> IdealSubset:
    bits = (1 << m) - 1
    for subset in subsets:
        bits &= subset.bits
    return IdealSubset(m, bits)


def _is_semisimple(mod: ModuleStructure) -> bool:
    """The carrier is the additive closure of its simple submodules."""
    subs = [set(sub) for sub in submodules(mod)]
    simple_subs = [
        sub for sub in subs
        if len(sub) > 1
        and not any(other != sub and other < sub and len(other) > 1 for other in subs)
        and any(
            mod.act(gamma_index, word) != 0
            for gamma_index, word in mod.words()
            if word[mod.slot - 1] in sub
        )
    ]
    span = {0}
    for sub in simple_subs:
        span |= sub
    changed = True
    while changed:
        grown = {mod.plus(x, y) for x in span for y in span} | span
        changed = grown != span
        span = grown
    return len(span) == mod.k


def audit_representation_theorems(s: GammaSemiring, slot: int, k_max: int) -> list[AuditEntry]:
    """Primitive-ideal, Jacobson, first-isomorphism, density and Schur claims over the enumerated modules."""
    enumeration = enumerate_modules(s, slot, k_max)
    modules = list(enumeration.modules)
    simple = [mod for mod in modules if is_simple(mod)]
    primitives = primitive_ideals(s, slot, k_max, simple)
    annihilator_sets = {id(mod): annihilators(mod) for mod in modules}
    prefix = "modules"
    entries = []

    entries.append(collect(
        f"{prefix}.annihilator_ideal",
        (({"module": mod, "annihilator": annihilator_sets[id(mod)].two_sided},
          is_ideal(s, annihilator_sets[id(mod)].two_sided, TWO_SIDED)) for mod in modules),
    ))
    entries.append(collect(
        f"{prefix}.primitive_prime",
        (({"ideal": ideal, "module": witness},
          not ideal.is_full and bool(is_prime(s, ideal, Side.TWO)))
         for ideal, witness in primitives.entries),
    ))

    jacobson = jacobson_radical(s, Side.TWO)
    primitive_meet = _meet(s.m, primitives.ideals)
    entries.append(_within_bound(
        f"{prefix}.jacobson_vs_primitive",
        jacobson.subset.bits == primitive_meet.bits,
        {"jacobson": jacobson.subset, "primitive_intersection": primitive_meet},
        k_max,
    ))

    for side, attribute in ((Side.L, "left"), (Side.R, "right")):
        side_jacobson = jacobson_radical(s, side)
        meet = _meet(s.m, [getattr(annihilators(mod), attribute) for mod in simple])
        entries.append(_within_bound(
            f"{prefix}.{attribute}_primitive",
            side_jacobson.subset.bits == meet.bits,
            {"jacobson": side_jacobson.subset, "annihilator_intersection": meet},
            k_max,
        ))

    def first_isomorphism():
        for source, target in itertools.product(modules, repeat=2):
            if target.k > source.k:
                continue
            for phi in module_homomorphisms(source, target):
                if set(phi) != set(range(target.k)):
                    continue
                blocks = _kernel_blocks(phi)
                quotient = quotient_module(source, blocks)
                induced = tuple(phi[block[0]] for block in blocks)
                holds = (
                    quotient.k == target.k
                    and quotient.relabel(induced) == target
                    and validate_module(quotient, stop_at_first=True).valid
                )
                yield {"source": source, "target": target, "map": list(phi)}, holds

    entries.append(collect(f"{prefix}.first_isomorphism", first_isomorphism()))

    faithful_family = bool(simple) and _meet(s.m, [annihilator_sets[id(mod)].two_sided for mod in simple]).bits == 1

    def separations():
        if not faithful_family:
            return
        for a, b in itertools.combinations(range(s.m), 2):
            separated = any(
                mod.act(gamma_index, word[:p] + (a,) + word[p + 1:])
                != mod.act(gamma_index, word[:p] + (b,) + word[p + 1:])
                for mod in simple
                for gamma_index, word in mod.words()
                for p in range(s.n) if p != mod.slot - 1
            )
            yield {"elements": [a, b]}, separated

    entries.append(collect(f"{prefix}.density", separations(), detail=f"simple modules up to {k_max}"))

    def schur():
        for mod in simple:
            if annihilator_sets[id(mod)].two_sided.bits != 1:
                continue
            for phi in module_homomorphisms(mod, mod):
                if any(phi):
                    yield {"module": mod, "endomorphism": list(phi)}, len(set(phi)) == mod.k

    entries.append(collect(f"{prefix}.schur", schur()))

    semisimple_outcomes = []
    if not jacobson.empty_family and jacobson.subset.bits == 1:
        semisimple_outcomes = [
            ({"module": mod}, _is_semisimple(mod))
            for mod in modules if annihilator_sets[id(mod)].two_sided.bits == 1
        ]
    entry = collect(f"{prefix}.semisimple_faithful", semisimple_outcomes,
                    detail=f"faithful modules up to {k_max}")
    if entry.status is AuditStatus.PASS:
        entry = AuditEntry(entry.check_id, AuditStatus.WITHIN_BOUND, detail=entry.detail)
    entries.append(entry)
    return entries
