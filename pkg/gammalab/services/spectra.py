"""Prime spectra with their Zariski-type closed sets, and the topology audits."""

import itertools
import logging
from dataclasses import dataclass
from typing import Optional

from gammalab.config.settings import get_toolkit_settings
from gammalab.services.audit import AuditEntry, AuditStatus, collect
from gammalab.services.errors import UsageError
from gammalab.services.ideals import IdealSubset, SubsetLike, all_ideals, as_bits, intersect_ideals
from gammalab.services.morphisms import Homomorphism, image_subset, pullback_ideal
from gammalab.services.radicals import (
    Side,
    jacobson_radical,
    radical_over,
    side_primes,
)
from gammalab.services.semiring import GammaSemiring


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Spectrum:
    side: Side
    m: int
    points: tuple[IdealSubset, ...]

    def __len__(self) -> int:
        return len(self.points)

    def to_jsonable(self) -> dict:
        return {"side": self.side.value, "points": [p.to_jsonable() for p in self.points]}


@dataclass(frozen=True)
class ClosedSet:
    generator: IdealSubset
    points: tuple[IdealSubset, ...]

    def to_jsonable(self) -> dict:
        return {"generator": self.generator.to_jsonable(), "points": [p.to_jsonable() for p in self.points]}


def spectrum(s: GammaSemiring, side: Side, limit: Optional[int] = None) -> Spectrum:
    return Spectrum(side, s.m, tuple(side_primes(s, side, limit)))


def vanishing_set(spec: Spectrum, a_set: SubsetLike) -> ClosedSet:
    bits = as_bits(a_set)
    points = tuple(p for p in spec.points if bits & ~p.bits == 0)
    return ClosedSet(IdealSubset(spec.m, bits), points)


def basic_open(spec: Spectrum, a: int) -> tuple[IdealSubset, ...]:
    return tuple(p for p in spec.points if a not in p)


def _point_bits(points) -> frozenset:
    return frozenset(p.bits for p in points)


def _test_subsets(m: int, exhaustive_limit: Optional[int]) -> list[int]:
    limit = exhaustive_limit or get_toolkit_settings().zariski_exhaustive_limit
    if m <= limit:
        return list(range(1 << m))
    logger.info(f"Carrier {m} exceeds {limit}, Zariski subset checks use singletons only")
    return [1 << a for a in range(m)] + [0, (1 << m) - 1]


def verify_zariski_axioms(
    s: GammaSemiring,
    side: Side,
    limit: Optional[int] = None,
    exhaustive_limit: Optional[int] = None,
) -> list[AuditEntry]:
    spec = spectrum(s, side, limit)
    prefix = f"spectra.{side.value}"
    everything = _point_bits(spec.points)
    side_ideals = all_ideals(s, side.kind, limit)
    subsets = _test_subsets(s.m, exhaustive_limit)
    entries = []

    entries.append(collect(f"{prefix}.zariski.extremes", [
        ({"generator": "zero"}, _point_bits(vanishing_set(spec, 1).points) == everything),
        ({"generator": "carrier"}, not vanishing_set(spec, s.full_bits).points),
    ]))

    def intersections():
        for a, b in itertools.combinations_with_replacement(subsets, 2):
            left = _point_bits(vanishing_set(spec, a).points) & _point_bits(vanishing_set(spec, b).points)
            joined = _point_bits(vanishing_set(spec, a | b).points)
            yield {"A": IdealSubset(s.m, a), "B": IdealSubset(s.m, b)}, left == joined

    entries.append(collect(f"{prefix}.zariski.intersection", intersections()))

    def finite_unions():
        for i, j in itertools.combinations_with_replacement(side_ideals, 2):
            meet = intersect_ideals(s, [i, j], side.kind)
            union = _point_bits(vanishing_set(spec, i).points) | _point_bits(vanishing_set(spec, j).points)
            yield {"I": i, "J": j}, union == _point_bits(vanishing_set(spec, meet).points)

    entries.append(collect(f"{prefix}.zariski.finite_union", finite_unions()))

    def radical_closed_sets():
        for i in side_ideals:
            radical = radical_over(s, list(spec.points), i, side.kind).subset
            same = _point_bits(vanishing_set(spec, i).points) == _point_bits(vanishing_set(spec, radical).points)
            yield {"ideal": i, "radical": radical}, same

    entries.append(collect(f"{prefix}.zariski.radical", radical_closed_sets()))

    def separations():
        for p, q in itertools.combinations(spec.points, 2):
            separated = any((a in p) != (a in q) for a in range(s.m))
            yield {"points": [p, q]}, separated

    entries.append(collect(f"{prefix}.zariski.t0", separations()))
    entries.append(AuditEntry(f"{prefix}.zariski.compact", AuditStatus.PASS, detail="finite space"))

    def identifications():
        for i in side_ideals:
            radical = radical_over(s, list(spec.points), i, side.kind).subset
            closure_bits = s.full_bits
            for point in vanishing_set(spec, i).points:
                closure_bits &= point.bits
            yield {"ideal": i, "radical": radical, "via_closed_set": IdealSubset(s.m, closure_bits)}, \
                closure_bits == radical.bits
        whole = s.full_bits
        for point in spec.points:
            whole &= point.bits
        zero_radical = radical_over(s, list(spec.points), 1, side.kind).subset
        yield {"ideal": "zero", "radical": zero_radical, "via_closed_set": IdealSubset(s.m, whole)}, \
            whole == zero_radical.bits

    entries.append(collect(f"{prefix}.radical_identification", identifications()))
    return entries


@dataclass(frozen=True)
class SpectralPullback:
    side: Side
    mapping: tuple[tuple[IdealSubset, IdealSubset], ...]
    checks: tuple[AuditEntry, ...]

    def to_jsonable(self) -> dict:
        return {
            "side": self.side.value,
            "mapping": [{"target": t.to_jsonable(), "source": src.to_jsonable()} for t, src in self.mapping],
            "checks": [entry.to_dict() for entry in self.checks],
        }


def pullback_map(
    f: Homomorphism,
    side: Side,
    limit: Optional[int] = None,
    exhaustive_limit: Optional[int] = None,
) -> SpectralPullback:
    """Spec(target) -> Spec(source), P' to its preimage, with continuity audited."""
    if not f.is_surjective:
        raise UsageError("spectral pullback requires a surjective homomorphism")

    source_spec = spectrum(f.source, side, limit)
    target_spec = spectrum(f.target, side, limit)
    mapping = tuple((point, pullback_ideal(f, point)) for point in target_spec.points)
    source_points = _point_bits(source_spec.points)
    prefix = f"spectra.{side.value}.pullback"

    hereditary = collect(
        f"{prefix}.hereditary",
        (({"target": t, "preimage": src}, src.bits in source_points) for t, src in mapping),
    )

    def continuity():
        for a in _test_subsets(f.source.m, exhaustive_limit):
            generator = IdealSubset(f.source.m, a)
            closed = _point_bits(vanishing_set(source_spec, a).points)
            preimage = frozenset(t.bits for t, src in mapping if src.bits in closed)
            image = image_subset(f, generator)
            yield {"A": generator, "image": image}, \
                preimage == _point_bits(vanishing_set(target_spec, image).points)

    return SpectralPullback(side, mapping, (hereditary, collect(f"{prefix}.continuity", continuity())))


@dataclass(frozen=True)
class SpecializationOrder:
    """``pairs`` holds (P, Q) with P strictly specializing to Q, i.e. P a proper subset of Q."""

    pairs: tuple[tuple[IdealSubset, IdealSubset], ...]
    components: tuple[tuple[IdealSubset, ...], ...]
    isolated: tuple[IdealSubset, ...]

    @property
    def discrete(self) -> bool:
        return not self.pairs

    def to_jsonable(self) -> dict:
        return {
            "specializations": [[p.to_jsonable(), q.to_jsonable()] for p, q in self.pairs],
            "components": [[p.to_jsonable() for p in c] for c in self.components],
            "isolated": [p.to_jsonable() for p in self.isolated],
        }


def specialization_and_components(spec: Spectrum) -> SpecializationOrder:
    pairs = tuple(
        (p, q) for p, q in itertools.permutations(spec.points, 2)
        if p.bits != q.bits and p.issubset(q)
    )
    generic = [p for p in spec.points if not any(q.issubset(p) and q.bits != p.bits for q in spec.points)]
    components = tuple(vanishing_set(spec, p).points for p in generic)
    related = {p.bits for pair in pairs for p in pair}
    isolated = tuple(p for p in spec.points if p.bits not in related)
    return SpecializationOrder(pairs, components, isolated)


@dataclass(frozen=True)
class DiscretenessResult:
    jacobson_zero: bool
    empty_family: bool
    discrete: bool
    entry: AuditEntry

    def to_jsonable(self) -> dict:
        return {
            "jacobson_zero": self.jacobson_zero,
            "empty_family": self.empty_family,
            "discrete": self.discrete,
            "check": self.entry.to_dict(),
        }


def discreteness_check(s: GammaSemiring, limit: Optional[int] = None) -> DiscretenessResult:
    """Jacobson radical zero (over a nonempty family) against a discrete two-sided spectrum."""
    spec = spectrum(s, Side.TWO, limit)
    order = specialization_and_components(spec)
    jacobson = jacobson_radical(s, Side.TWO, limit)
    jacobson_zero = not jacobson.empty_family and jacobson.subset.bits == 1

    if not spec.points:
        entry = AuditEntry(
            "spectra.discreteness",
            AuditStatus.VACUOUS,
            detail="empty spectrum" + (", Jacobson family empty" if jacobson.empty_family else ""),
        )
    else:
        entry = collect(
            "spectra.discreteness",
            [({"jacobson": jacobson.subset, "specializations": order.to_jsonable()["specializations"]},
              jacobson_zero == order.discrete)],
            detail="contested",
        )
    return DiscretenessResult(jacobson_zero, jacobson.empty_family, order.discrete, entry)


def audit_spectral_theorems(s: GammaSemiring, limit: Optional[int] = None) -> list[AuditEntry]:
    entries = []
    for side in Side:
        entries.extend(verify_zariski_axioms(s, side, limit))
    entries.append(discreteness_check(s, limit).entry)
    return entries
