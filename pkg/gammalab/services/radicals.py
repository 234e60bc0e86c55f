"""Prime and semiprime tests, diagonal and prime radicals, modular maximal ideals and Jacobson radicals."""

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

from gammalab.services.audit import AuditEntry, collect
from gammalab.services.errors import UsageError
from gammalab.services.ideals import (
    LEFT,
    RIGHT,
    TWO_SIDED,
    IdealKind,
    IdealSubset,
    all_ideals,
    as_bits,
    intersect_ideals,
    is_ideal,
    SubsetLike,
)
from gammalab.services.morphisms import bourne_quotient, pullback_ideal
from gammalab.services.semiring import GammaSemiring


logger = logging.getLogger(__name__)


class Side(str, Enum):
    L = "L"
    R = "R"
    TWO = "two"

    @property
    def kind(self) -> IdealKind:
        return {Side.L: LEFT, Side.R: RIGHT, Side.TWO: TWO_SIDED}[self]

    def prime_slots(self, n: int) -> range:
        """0-based slots one of which must land in a prime holding the product."""
        if self is Side.L:
            return range(1, n)
        if self is Side.R:
            return range(0, n - 1)
        return range(n)


@dataclass(frozen=True)
class PrimalityResult:
    holds: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.holds

    def to_jsonable(self) -> dict:
        payload = {"holds": self.holds}
        if self.witness is not None:
            payload["witness"] = self.witness
        return payload


@dataclass(frozen=True)
class IntersectionResult:
    """Intersection of a family; an empty family yields the full carrier."""

    subset: IdealSubset
    family: tuple[IdealSubset, ...]

    @property
    def empty_family(self) -> bool:
        return not self.family

    def to_jsonable(self) -> dict:
        return {
            "subset": self.subset.to_jsonable(),
            "family": [member.to_jsonable() for member in self.family],
            "empty_family": self.empty_family,
        }


def is_prime(s: GammaSemiring, p: IdealSubset, side: Side) -> PrimalityResult:
    """Product in ``p`` forces an argument into ``p`` at one of the side's slots."""
    if p.is_full:
        raise UsageError("proper ideal required")
    if side.kind not in p.kinds and not is_ideal(s, p, side.kind):
        return PrimalityResult(False, {"reason": f"not a {side.kind.label()} ideal"})

    slots = side.prime_slots(s.n)
    gammas = s.gamma_tuples()
    for gamma_index, args, value in s.iter_cells():
        if value in p and not any(args[slot] in p for slot in slots):
            return PrimalityResult(False, {"gammas": list(gammas[gamma_index]), "args": list(args)})
    return PrimalityResult(True)


def diagonal_value(s: GammaSemiring, a: int, gamma_index: int) -> int:
    return s.value(gamma_index, (a,) * s.n)


def is_semiprime(s: GammaSemiring, q: SubsetLike) -> PrimalityResult:
    bits = as_bits(q)
    gammas = s.gamma_tuples()
    for a in range(s.m):
        if (bits >> a) & 1:
            continue
        for gamma_index in range(s.gamma_count):
            if (bits >> diagonal_value(s, a, gamma_index)) & 1:
                return PrimalityResult(False, {"element": a, "gammas": list(gammas[gamma_index])})
    return PrimalityResult(True)


def diagonal_radical(s: GammaSemiring, i: SubsetLike) -> IdealSubset:
    """Elements with some diagonal inside ``i``; a raw subset, not closed up."""
    bits = as_bits(i)
    return IdealSubset.of(
        s.m,
        (
            a for a in range(s.m)
            if any((bits >> diagonal_value(s, a, g)) & 1 for g in range(s.gamma_count))
        ),
    )


def side_primes(s: GammaSemiring, side: Side, limit: Optional[int] = None) -> list[IdealSubset]:
    """Proper primes of ``side``, ordered by bit pattern."""
    return [
        ideal for ideal in all_ideals(s, side.kind, limit)
        if not ideal.is_full and is_prime(s, ideal, side)
    ]


def _intersection(s: GammaSemiring, family: list[IdealSubset], kind: IdealKind) -> IntersectionResult:
    if not family:
        return IntersectionResult(IdealSubset.full(s.m).tagged(kind), ())
    return IntersectionResult(intersect_ideals(s, family, kind), tuple(family))


def radical_over(s: GammaSemiring, primes: list[IdealSubset], i: SubsetLike, kind: IdealKind) -> IntersectionResult:
    bits = as_bits(i)
    return _intersection(s, [p for p in primes if bits & ~p.bits == 0], kind)


def prime_radical(
    s: GammaSemiring,
    i: IdealSubset,
    side: Side,
    limit: Optional[int] = None,
) -> IntersectionResult:
    """Intersection of the side-primes containing ``i``."""
    if side.kind not in i.kinds and not is_ideal(s, i, side.kind):
        raise UsageError(f"{i!r} is not a {side.kind.label()} ideal")
    return radical_over(s, side_primes(s, side, limit), i, side.kind)


def modularity_witness(s: GammaSemiring) -> Optional[int]:
    """
    Least nonzero w with a + mu(a, w, ..., w, a) = a for every a and every
    Gamma-tuple; ``a`` fills the first and last slots.
    """
    for w in range(1, s.m):
        if all(
            s.plus(a, s.value(g, (a,) + (w,) * (s.n - 2) + (a,))) == a
            for a in range(s.m)
            for g in range(s.gamma_count)
        ):
            return w
    return None


def maximal_ideals(s: GammaSemiring, side: Side, limit: Optional[int] = None) -> list[IdealSubset]:
    proper = [ideal for ideal in all_ideals(s, side.kind, limit) if not ideal.is_full]
    return [
        ideal for ideal in proper
        if not any(other.bits != ideal.bits and ideal.issubset(other) for other in proper)
    ]


@dataclass(frozen=True)
class ModularMaximals:
    ideals: tuple[IdealSubset, ...]
    witness: Optional[int]

    def to_jsonable(self) -> dict:
        return {"ideals": [i.to_jsonable() for i in self.ideals], "witness": self.witness}


def modular_maximal_ideals(s: GammaSemiring, side: Side, limit: Optional[int] = None) -> ModularMaximals:
    witness = modularity_witness(s)
    if witness is None:
        return ModularMaximals((), None)
    return ModularMaximals(tuple(maximal_ideals(s, side, limit)), witness)


def jacobson_radical(s: GammaSemiring, side: Side, limit: Optional[int] = None) -> IntersectionResult:
    return _intersection(s, list(modular_maximal_ideals(s, side, limit).ideals), side.kind)


@dataclass(frozen=True)
class RadicalReport:
    prime_radicals: dict
    jacobson: dict
    modular_witness: Optional[int]
    diagonal_radicals: tuple[tuple[IdealSubset, IdealSubset], ...]
    checks: tuple[AuditEntry, ...] = field(default=())

    @property
    def discrepancies(self) -> list[AuditEntry]:
        return [entry for entry in self.checks if entry.failed]

    def to_dict(self) -> dict:
        return {
            "prime_radicals": {side.value: r.to_jsonable() for side, r in self.prime_radicals.items()},
            "jacobson": {side.value: r.to_jsonable() for side, r in self.jacobson.items()},
            "modular_witness": self.modular_witness,
            "diagonal_radicals": [
                {"ideal": ideal.to_jsonable(), "diagonal_radical": radical.to_jsonable()}
                for ideal, radical in self.diagonal_radicals
            ],
        }


def _has_zero_divisor_tuple(q: GammaSemiring) -> Optional[dict]:
    for gamma_index, args, value in q.iter_cells(nonzero_only=True):
        if value == 0:
            return {"gammas": list(q.gamma_tuples()[gamma_index]), "classes": list(args)}
    return None


def audit_radical_theorems(s: GammaSemiring, limit: Optional[int] = None) -> RadicalReport:
    """Radical correspondence, closure and hereditary claims over the two-sided ideal lattice."""
    two_sided = all_ideals(s, TWO_SIDED, limit)
    primes = {side: side_primes(s, side, limit) for side in Side}
    zero = IdealSubset.zero(s.m)
    prime_radicals = {side: radical_over(s, primes[side], zero, side.kind) for side in Side}
    modular = {side: modular_maximal_ideals(s, side, limit) for side in Side}
    jacobson = {side: _intersection(s, list(modular[side].ideals), side.kind) for side in Side}

    radical_of = {i.bits: radical_over(s, primes[Side.TWO], i, TWO_SIDED).subset for i in two_sided}
    diagonals = tuple((i, diagonal_radical(s, i)) for i in two_sided)
    checks = []

    checks.append(collect(
        "radicals.diagonal_vs_prime",
        (
            ({"ideal": i, "diagonal_radical": d, "prime_radical": radical_of[i.bits]},
             d.bits == radical_of[i.bits].bits)
            for i, d in diagonals
        ),
        detail="contested",
    ))
    checks.append(collect(
        "radicals.semiprime_fixpoint",
        (
            ({"ideal": i, "semiprime": bool(is_semiprime(s, i)), "diagonal_radical": d},
             bool(is_semiprime(s, i)) == (d.bits == i.bits))
            for i, d in diagonals
        ),
    ))

    def quotient_outcomes():
        for p in two_sided:
            if p.is_full:
                continue
            divisor = _has_zero_divisor_tuple(bourne_quotient(s, p).quotient)
            prime = bool(is_prime(s, p, Side.TWO))
            yield {"ideal": p, "prime": prime, "zero_divisor": divisor}, prime == (divisor is None)

    checks.append(collect("radicals.quotient_characterization", quotient_outcomes()))

    def closure_outcomes():
        for i in two_sided:
            radical = radical_of[i.bits]
            again = radical_over(s, primes[Side.TWO], radical, TWO_SIDED).subset
            yield {"ideal": i, "law": "extensive", "radical": radical}, i.issubset(radical)
            yield {"ideal": i, "law": "idempotent", "radical": radical, "again": again}, again.bits == radical.bits
        for i, j in itertools.permutations(two_sided, 2):
            if i.issubset(j):
                yield ({"ideal": i, "larger": j, "law": "isotone"},
                       radical_of[i.bits].issubset(radical_of[j.bits]))

    checks.append(collect("radicals.closure_operator", closure_outcomes()))

    semiprimes = [q for q in two_sided if is_semiprime(s, q)]

    def semiprime_meets():
        for size in (2, 3):
            for family in itertools.combinations(semiprimes, size):
                bits = s.full_bits
                for q in family:
                    bits &= q.bits
                yield {"family": list(family)}, bool(is_semiprime(s, bits))

    checks.append(collect("radicals.semiprime_intersections", semiprime_meets()))

    j_two = jacobson[Side.TWO]
    checks.append(collect(
        "radicals.jacobson_semiprime",
        [({"jacobson": j_two.subset}, bool(is_semiprime(s, j_two.subset)))],
        detail="contested: holds unconditionally only if modular maximal ideals are prime",
    ))
    all_modular_prime = all(
        not m.is_full and is_prime(s, m, Side.TWO) for m in modular[Side.TWO].ideals
    )
    checks.append(collect(
        "radicals.jacobson_semiprime_conditional",
        [({"jacobson": j_two.subset}, bool(is_semiprime(s, j_two.subset)))] if all_modular_prime else [],
    ))

    for side in Side:
        side_modular_prime = all(is_prime(s, m, side) for m in modular[side].ideals)
        outcomes = []
        if side_modular_prime:
            outcomes.append((
                {"side": side, "jacobson": jacobson[side].subset,
                 "prime_radical": prime_radicals[side].subset},
                jacobson[side].subset.bits == prime_radicals[side].subset.bits,
            ))
        checks.append(collect(f"radicals.jacobson_equals_prime_radical.{side.value}", outcomes))

    maximal_two = maximal_ideals(s, Side.TWO, limit)
    maximal_outcomes = []
    if all(is_prime(s, m, Side.TWO) for m in maximal_two):
        meet = _intersection(s, maximal_two, TWO_SIDED).subset
        maximal_outcomes.append(
            ({"jacobson": j_two.subset, "maximal_intersection": meet}, meet.bits == j_two.subset.bits)
        )
    checks.append(collect("radicals.jacobson_maximal_intersection", maximal_outcomes, detail="contested"))

    left_right = prime_radicals[Side.L].subset.bits & prime_radicals[Side.R].subset.bits
    checks.append(collect(
        "radicals.directional_containment",
        [({"two": prime_radicals[Side.TWO].subset, "left_and_right": IdealSubset(s.m, left_right)},
          prime_radicals[Side.TWO].subset.bits & ~left_right == 0)],
    ))
    checks.append(collect(
        "radicals.diagonal_radical_semiprime",
        (({"ideal": i, "diagonal_radical": d}, bool(is_semiprime(s, d))) for i, d in diagonals),
        detail="contested",
    ))

    quotients = [bourne_quotient(s, i) for i in two_sided]
    for side in Side:
        def hereditary(side=side):
            for q in quotients:
                for target_prime in side_primes(q.quotient, side, limit):
                    preimage = pullback_ideal(q.projection, target_prime)
                    holds = not preimage.is_full and bool(is_prime(s, preimage, side))
                    yield {"quotient_by": q.ideal, "target_prime": target_prime, "preimage": preimage}, holds

        checks.append(collect(f"radicals.hereditary.{side.value}", hereditary()))

    return RadicalReport(
        prime_radicals=prime_radicals,
        jacobson=jacobson,
        modular_witness=modular[Side.TWO].witness,
        diagonal_radicals=diagonals,
        checks=tuple(checks),
    )
