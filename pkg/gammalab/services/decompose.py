"""Comaximality, Chinese-remainder maps, semisimple decompositions and idempotent pinning."""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

from gammalab.services.audit import AuditEntry, AuditStatus, collect
from gammalab.services.axioms import validate
from gammalab.services.errors import UsageError
from gammalab.services.ideals import (
    TWO_SIDED,
    IdealKind,
    IdealSubset,
    all_ideals,
    is_ideal,
    sum_ideals,
)
from gammalab.services.morphisms import (
    Homomorphism,
    bourne_quotient,
    homomorphism_violation,
    product_structure,
    pullback_ideal,
)
from gammalab.services.radicals import Side, diagonal_radical, jacobson_radical, maximal_ideals
from gammalab.services.representations import primitive_ideals
from gammalab.services.semiring import GammaSemiring
from gammalab.services.spectra import spectrum, vanishing_set
from gammalab.services.structure_io import to_document


logger = logging.getLogger(__name__)


def _require_two_sided(s: GammaSemiring, ideal: IdealSubset) -> IdealSubset:
    if TWO_SIDED in ideal.kinds:
        return ideal
    if not is_ideal(s, ideal, TWO_SIDED):
        raise UsageError(f"{ideal!r} is not a two-sided ideal")
    return ideal.tagged(TWO_SIDED)


def are_comaximal(s: GammaSemiring, first: IdealSubset, second: IdealSubset) -> bool:
    """I + J = T."""
    first, second = _require_two_sided(s, first), _require_two_sided(s, second)
    return sum_ideals(s, first, second, TWO_SIDED).is_full


@dataclass(frozen=True)
class CrtReport:
    ideals: tuple[IdealSubset, ...]
    pairwise_comaximal: bool
    map_is_homomorphism: bool = False
    surjective: bool = False
    kernel_equals_intersection: bool = False
    witnesses: tuple[dict, ...] = ()
    mapping: tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return (
            self.pairwise_comaximal
            and self.map_is_homomorphism
            and self.surjective
            and self.kernel_equals_intersection
        )

    @property
    def injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    def entries(self, prefix: str = "decompose.crt") -> list[AuditEntry]:
        by_check = {w["check"]: w for w in self.witnesses}
        flags = (
            ("comaximal", self.pairwise_comaximal),
            ("homomorphism", self.map_is_homomorphism),
            ("surjective", self.surjective),
            ("kernel", self.kernel_equals_intersection),
        )
        result = []
        for name, holds in flags:
            if holds:
                result.append(AuditEntry(f"{prefix}.{name}", AuditStatus.PASS))
            elif name in by_check:
                result.append(collect(f"{prefix}.{name}", [(by_check[name], False)]))
            else:
                result.append(AuditEntry(f"{prefix}.{name}", AuditStatus.VACUOUS, detail="not reached"))
        return result

    def to_jsonable(self) -> dict:
        return {
            "ideals": [ideal.to_jsonable() for ideal in self.ideals],
            "pairwise_comaximal": self.pairwise_comaximal,
            "map_is_homomorphism": self.map_is_homomorphism,
            "surjective": self.surjective,
            "kernel_equals_intersection": self.kernel_equals_intersection,
            "map": list(self.mapping),
            "witnesses": list(self.witnesses),
        }


def _kernel_blocks(mapping: Sequence[int]) -> list[tuple[int, ...]]:
    blocks: dict[int, list[int]] = {}
    for x, image in enumerate(mapping):
        blocks.setdefault(image, []).append(x)
    return sorted((tuple(block) for block in blocks.values()), key=lambda block: block[0])


def crt_check(s: GammaSemiring, ideals: Sequence[IdealSubset], carrier_limit: Optional[int] = None) -> CrtReport:
    """
    Build T -> prod T/I_k and check it is a surjective homomorphism whose
    kernel congruence is the Bourne congruence of the intersection.
    """
    if not ideals:
        raise UsageError("the Chinese-remainder check needs at least one ideal")
    ideals = tuple(_require_two_sided(s, ideal) for ideal in ideals)

    for first, second in itertools.combinations(ideals, 2):
        if not are_comaximal(s, first, second):
            witness = {"check": "comaximal", "pair": [first.to_jsonable(), second.to_jsonable()]}
            logger.info(f"{first!r} and {second!r} are not comaximal")
            return CrtReport(ideals, False, witnesses=(witness,))

    quotients = [bourne_quotient(s, ideal) for ideal in ideals]
    product = product_structure([q.quotient for q in quotients], carrier_limit)
    mapping = tuple(product.encode([q.class_of(a) for q in quotients]) for a in range(s.m))
    phi = Homomorphism(s, product.structure, mapping)
    witnesses = []

    violation = homomorphism_violation(phi)
    if violation is not None:
        witnesses.append({"check": "homomorphism", **violation})

    missing = [x for x in range(product.structure.m) if x not in set(mapping)]
    if missing:
        witnesses.append({"check": "surjective", "missed": list(product.decode(missing[0]))})

    meet_bits = s.full_bits
    for ideal in ideals:
        meet_bits &= ideal.bits
    expected = [tuple(block) for block in bourne_quotient(s, IdealSubset(s.m, meet_bits)).classes]
    kernel = _kernel_blocks(mapping)
    if kernel != expected:
        witnesses.append({
            "check": "kernel",
            "kernel": [list(block) for block in kernel],
            "intersection_congruence": [list(block) for block in expected],
        })

    failed = {w["check"] for w in witnesses}
    report = CrtReport(
        ideals=ideals,
        pairwise_comaximal=True,
        map_is_homomorphism="homomorphism" not in failed,
        surjective="surjective" not in failed,
        kernel_equals_intersection="kernel" not in failed,
        witnesses=tuple(witnesses),
        mapping=mapping,
    )
    if not report.passed:
        logger.warning(f"Chinese-remainder map over {list(ideals)} fails: {sorted(failed)}")
    return report


def _minimal_primitives(s: GammaSemiring, slot: int, k_max: int) -> list[IdealSubset]:
    """Inclusion-minimal primitive ideals; annihilators failing the ideal check are skipped."""
    found = [ideal for ideal in primitive_ideals(s, slot, k_max).ideals if TWO_SIDED in ideal.kinds]
    return [
        ideal for ideal in found
        if not any(other.bits != ideal.bits and other.issubset(ideal) for other in found)
    ]


def wedderburn_check(s: GammaSemiring, slot: int, k_max: int) -> AuditEntry:
    """With J = 0, the minimal primitive ideals found within bound split T into a faithful product."""
    check_id = "decompose.wedderburn"
    jacobson = jacobson_radical(s, Side.TWO)
    if jacobson.empty_family or jacobson.subset.bits != 1:
        return AuditEntry(check_id, AuditStatus.VACUOUS, detail=f"Jacobson radical is {jacobson.subset!r}")

    minimal = _minimal_primitives(s, slot, k_max)
    if not minimal:
        return AuditEntry(check_id, AuditStatus.VACUOUS, detail=f"no primitive ideals for carriers up to {k_max}")

    report = crt_check(s, minimal)
    witness = {
        "minimal_primitives": minimal,
        "factor_count": len(minimal),
        "crt": report.to_jsonable(),
        "injective": report.injective,
    }
    entry = collect(check_id, [(witness, report.passed and report.injective)],
                    detail=f"{len(minimal)} factors, carriers up to {k_max}")
    if entry.status is AuditStatus.PASS:
        return AuditEntry(check_id, AuditStatus.WITHIN_BOUND, witness=witness, detail=entry.detail)
    return entry


def reduction_modulo_radical_check(s: GammaSemiring, slot: int, k_max: int) -> list[AuditEntry]:
    """T/J has zero Jacobson radical and the map over minimal primitives has kernel ~J."""
    jacobson = jacobson_radical(s, Side.TWO)
    radical = jacobson.subset
    quotient = bourne_quotient(s, radical)
    quotient_radical = jacobson_radical(quotient.quotient, Side.TWO).subset
    entries = [collect(
        "decompose.reduction.jacobson_zero",
        [({"radical": radical, "quotient_classes": quotient.classes, "quotient_radical": quotient_radical},
          quotient_radical.bits == 1)],
    )]

    minimal = _minimal_primitives(s, slot, k_max)
    if not minimal:
        entries.append(AuditEntry(
            "decompose.reduction.semisimple", AuditStatus.VACUOUS,
            detail=f"no primitive ideals for carriers up to {k_max}",
        ))
        return entries

    report = crt_check(s, minimal)
    kernel = _kernel_blocks(report.mapping) if report.mapping else []
    holds = report.pairwise_comaximal and report.map_is_homomorphism and kernel == list(quotient.classes)
    entry = collect(
        "decompose.reduction.semisimple",
        [({"minimal_primitives": minimal, "kernel": kernel, "radical_congruence": quotient.classes}, holds)],
        detail=f"carriers up to {k_max}",
    )
    if entry.status is AuditStatus.PASS:
        entry = AuditEntry(entry.check_id, AuditStatus.WITHIN_BOUND, detail=entry.detail)
    entries.append(entry)
    return entries


def _is_central(s: GammaSemiring, e: int) -> bool:
    for gamma_index, args, value in s.iter_cells():
        for position in range(s.n - 1):
            if e not in (args[position], args[position + 1]):
                continue
            swapped = list(args)
            swapped[position], swapped[position + 1] = swapped[position + 1], swapped[position]
            if s.value(gamma_index, swapped) != value:
                return False
    return True


def central_idempotents(s: GammaSemiring, include_zero: bool = False) -> list[int]:
    """
    Elements e with every diagonal equal to e whose adjacent transpositions
    never change a product. 0 qualifies trivially and is left out unless asked for.
    """
    candidates = range(0 if include_zero else 1, s.m)
    return [
        e for e in candidates
        if all(s.value(g, (e,) * s.n) == e for g in range(s.gamma_count)) and _is_central(s, e)
    ]


GammaMap = Callable[[tuple[int, ...]], tuple[int, int]]


def first_and_last(gammas: tuple[int, ...]) -> tuple[int, int]:
    return gammas[0], gammas[-1]


@dataclass(frozen=True)
class PinningSpec:
    e: int
    gamma_map: GammaMap = first_and_last

    def to_jsonable(self) -> dict:
        return {"e": self.e, "gamma_map": getattr(self.gamma_map, "__name__", "custom")}


@dataclass(frozen=True)
class PinnedStructure:
    source: GammaSemiring
    spec: PinningSpec
    structure: GammaSemiring
    checks: tuple[AuditEntry, ...] = field(default=())

    def to_jsonable(self) -> dict:
        return {
            "pinning": self.spec.to_jsonable(),
            "structure": to_document(self.structure),
            "checks": [entry.to_dict() for entry in self.checks],
        }


def _pinned_word(n: int, e: int, x: int, y: int, z: int) -> tuple[int, ...]:
    return (x,) + (e,) * (n - 3) + (y, z)


def pinned_ternary(s: GammaSemiring, spec: PinningSpec) -> PinnedStructure:
    """Ternary structure x(a,b)y z := mu(x, e, ..., e, y, z) over the tuples ``gamma_map`` sends to (a, b)."""
    if s.n <= 3:
        raise UsageError(f"pinning needs arity above 3, got {s.n}")
    central = central_idempotents(s)
    if spec.e not in central:
        raise UsageError(
            f"{spec.e} is not a central idempotent; central_idempotents gives {central}"
            if central else "structure has no nonzero central idempotent to pin with"
        )

    preimages: dict[tuple[int, int], list[int]] = {}
    for gamma_index, gammas in enumerate(s.gamma_tuples()):
        pair = tuple(spec.gamma_map(gammas))
        if not all(0 <= g < s.r for g in pair) or len(pair) != 2:
            raise UsageError(f"gamma_map sent {gammas} outside Gamma pairs: {pair}")
        preimages.setdefault(pair, []).append(gamma_index)
    pairs = list(itertools.product(range(s.r), repeat=2))
    unmapped = [pair for pair in pairs if pair not in preimages]
    if unmapped:
        raise UsageError(f"gamma_map is not onto Gamma pairs; {unmapped[0]} has no preimage")

    def mu_rule(gammas: tuple[int, ...], args: tuple[int, ...]) -> int:
        return s.value(preimages[gammas][0], _pinned_word(s.n, spec.e, *args))

    pinned = GammaSemiring.from_rules(s.m, 3, s.r, s.plus, mu_rule, assoc_mode=s.assoc_mode)
    logger.info(f"Pinned {s!r} at e={spec.e}")
    return PinnedStructure(s, spec, pinned, tuple(_transfer_audit(s, spec, pinned, preimages)))


def _transfer_audit(
    s: GammaSemiring,
    spec: PinningSpec,
    pinned: GammaSemiring,
    preimages: dict[tuple[int, int], list[int]],
) -> list[AuditEntry]:
    prefix = "decompose.pinning"
    gammas = s.gamma_tuples()

    def consistency():
        for pair, indices in sorted(preimages.items()):
            for gamma_index in indices[1:]:
                for x, y, z in itertools.product(range(s.m), repeat=3):
                    word = _pinned_word(s.n, spec.e, x, y, z)
                    chosen = s.value(indices[0], word)
                    other = s.value(gamma_index, word)
                    yield {"pair": list(pair), "gammas": list(gammas[gamma_index]), "args": [x, y, z]}, \
                        chosen == other

    def ideal_transfer():
        for count in range(1, 4):
            kind = IdealKind.at_least(count)
            for ideal in all_ideals(s, kind):
                yield {"kind": kind, "ideal": ideal}, is_ideal(pinned, ideal, kind)

    def diagonal_transfer():
        for ideal in all_ideals(s, TWO_SIDED):
            source, target = diagonal_radical(s, ideal), diagonal_radical(pinned, ideal)
            yield {"ideal": ideal, "source": source, "pinned": target}, source.bits == target.bits

    source_j, pinned_j = jacobson_radical(s, Side.TWO).subset, jacobson_radical(pinned, Side.TWO).subset
    report = validate(pinned, stop_at_first=True)
    first = report.violations[0].to_dict() if report.violations else None

    entries = [
        collect(f"{prefix}.gamma_consistency", consistency()),
        collect(f"{prefix}.valid", [(first, report.valid)]),
        collect(f"{prefix}.ideal_transfer", ideal_transfer()),
        collect(f"{prefix}.diagonal_radical", diagonal_transfer()),
        collect(f"{prefix}.jacobson", [({"source": source_j, "pinned": pinned_j}, source_j.bits == pinned_j.bits)]),
    ]
    return entries


def spectra_disjoint_union_check(s: GammaSemiring, ideals: Sequence[IdealSubset]) -> AuditEntry:
    """Spec(T) against the pulled-back spectra of the Chinese-remainder factors."""
    check_id = "decompose.spectra_union"
    report = crt_check(s, ideals)
    if not report.passed:
        return AuditEntry(check_id, AuditStatus.VACUOUS, detail="Chinese-remainder map did not pass")

    whole = spectrum(s, Side.TWO)
    tagged = []
    for index, ideal in enumerate(report.ideals):
        q = bourne_quotient(s, ideal)
        for point in spectrum(q.quotient, Side.TWO).points:
            tagged.append((index, pullback_ideal(q.projection, point)))
    union = sorted({point.bits for _, point in tagged})
    points = sorted(point.bits for point in whole.points)

    def lattice_outcomes():
        yield {"spectrum": points, "factor_union": union, "factor_points": len(tagged)}, points == union
        union_points = tuple(IdealSubset(s.m, bits) for bits in union)
        for ideal in all_ideals(s, TWO_SIDED):
            closed = sorted(p.bits for p in vanishing_set(whole, ideal).points)
            pulled = sorted(p.bits for p in union_points if ideal.issubset(p))
            yield {"generator": ideal, "closed": closed, "factor_closed": pulled}, closed == pulled

    return collect(check_id, lattice_outcomes(), detail=f"{len(report.ideals)} factors")


@dataclass(frozen=True)
class DecompositionReport:
    central_idempotents: tuple[int, ...]
    comaximal_pairs: tuple[tuple[IdealSubset, IdealSubset], ...]
    crt: Optional[CrtReport]
    checks: tuple[AuditEntry, ...]

    def to_jsonable(self) -> dict[str, Any]:
        return {
            "central_idempotents": list(self.central_idempotents),
            "comaximal_pairs": [[a.to_jsonable(), b.to_jsonable()] for a, b in self.comaximal_pairs],
            "crt": self.crt.to_jsonable() if self.crt is not None else None,
            "checks": [entry.to_dict() for entry in self.checks],
        }


def audit_decomposition(s: GammaSemiring, slot: int, k_max: int) -> DecompositionReport:
    """
    Chinese-remainder checks over the maximal two-sided ideals (when pairwise
    comaximal) and over {0}, plus the semisimplicity audits.
    """
    maximal = maximal_ideals(s, Side.TWO)
    pairs = tuple(
        (first, second) for first, second in itertools.combinations(maximal, 2)
        if are_comaximal(s, first, second)
    )
    family = maximal if maximal and len(pairs) == len(maximal) * (len(maximal) - 1) // 2 else []
    checks = []
    crt = None
    if family:
        crt = crt_check(s, family)
        checks.extend(crt.entries("decompose.crt.maximal"))
        checks.append(spectra_disjoint_union_check(s, family))
    checks.extend(crt_check(s, [IdealSubset.zero(s.m)]).entries("decompose.crt.zero"))
    checks.append(wedderburn_check(s, slot, k_max))
    checks.extend(reduction_modulo_radical_check(s, slot, k_max))
    return DecompositionReport(tuple(central_idempotents(s)), pairs, crt, tuple(checks))
