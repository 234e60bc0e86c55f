"""Homomorphisms, Bourne quotients and direct products."""

import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from gammalab.config.settings import get_toolkit_settings
from gammalab.services.audit import AuditEntry, collect
from gammalab.services.errors import CapacityError, UsageError
from gammalab.services.ideals import (
    IdealKind,
    IdealSubset,
    TWO_SIDED,
    all_ideals,
    closure_violation,
    is_additively_closed,
    is_ideal,
)
from gammalab.services.semiring import GammaSemiring


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Homomorphism:
    """
    Element map ``source -> target``. ``gamma_relabeling`` maps source Gamma
    labels to target labels; absent means Gamma is fixed pointwise.
    """

    source: GammaSemiring
    target: GammaSemiring
    mapping: tuple[int, ...]
    gamma_relabeling: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(int(x) for x in self.mapping))
        if len(self.mapping) != self.source.m:
            raise UsageError(f"map has {len(self.mapping)} entries, source carrier has {self.source.m}")
        if any(not 0 <= x < self.target.m for x in self.mapping):
            raise UsageError(f"map values must lie in [0, {self.target.m})")
        if self.gamma_relabeling is not None:
            object.__setattr__(self, "gamma_relabeling", tuple(self.gamma_relabeling))

    def __call__(self, element: int) -> int:
        return self.mapping[element]

    def image_bits(self) -> int:
        bits = 0
        for value in self.mapping:
            bits |= 1 << value
        return bits

    @property
    def is_surjective(self) -> bool:
        return self.image_bits() == self.target.full_bits

    @property
    def is_bijective(self) -> bool:
        return self.source.m == self.target.m and self.is_surjective

    def to_jsonable(self) -> dict:
        payload = {"map": list(self.mapping)}
        if self.gamma_relabeling is not None:
            payload["gamma_relabeling"] = list(self.gamma_relabeling)
        return payload


def _check_shapes(f: Homomorphism) -> None:
    if f.source.n != f.target.n or f.source.r != f.target.r:
        raise UsageError(
            f"arity/Gamma mismatch: source (n={f.source.n}, r={f.source.r}), "
            f"target (n={f.target.n}, r={f.target.r})"
        )


def homomorphism_violation(f: Homomorphism) -> Optional[dict]:
    """First cell the map fails to preserve, or ``None``."""
    _check_shapes(f)
    source, target, phi = f.source, f.target, f.mapping
    if phi[0] != 0:
        return {"law": "zero", "image_of_zero": phi[0]}

    for a, b in itertools.product(range(source.m), repeat=2):
        if phi[source.plus(a, b)] != target.plus(phi[a], phi[b]):
            return {"law": "add", "args": [a, b]}

    relabel = f.gamma_relabeling or tuple(range(source.r))
    for gamma_index, gammas in enumerate(source.gamma_tuples()):
        target_index = target.gamma_index([relabel[g] for g in gammas])
        for args in itertools.product(range(source.m), repeat=source.n):
            image = target.value(target_index, [phi[x] for x in args])
            if phi[source.value(gamma_index, args)] != image:
                return {"law": "mu", "gammas": list(gammas), "args": list(args)}
    return None


def is_homomorphism(f: Homomorphism) -> bool:
    return homomorphism_violation(f) is None


def pullback_ideal(f: Homomorphism, ideal: IdealSubset) -> IdealSubset:
    """Preimage of a target subset; not kind-tagged."""
    _check_shapes(f)
    if ideal.m != f.target.m:
        raise UsageError(f"subset lives on a carrier of size {ideal.m}, target has {f.target.m}")
    return IdealSubset.of(f.source.m, (a for a in range(f.source.m) if f(a) in ideal))


def image_subset(f: Homomorphism, subset: IdealSubset) -> IdealSubset:
    return IdealSubset.of(f.target.m, {f(a) for a in subset.members})


@dataclass(frozen=True)
class QuotientStructure:
    parent: GammaSemiring
    ideal: IdealSubset
    classes: tuple[tuple[int, ...], ...]
    quotient: GammaSemiring
    projection: Homomorphism

    def class_of(self, element: int) -> int:
        return self.projection(element)

    def to_jsonable(self) -> dict:
        return {
            "ideal": self.ideal.to_jsonable(),
            "classes": [list(block) for block in self.classes],
        }


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        root_a, root_b = self.find(a), self.find(b)
        if root_a == root_b:
            return False
        if root_b < root_a:
            root_a, root_b = root_b, root_a
        self.parent[root_b] = root_a
        return True


def congruence_closure(s: GammaSemiring, pairs: Sequence[tuple[int, int]]) -> list[tuple[int, ...]]:
    """
    Smallest congruence of ``s`` containing ``pairs``, as blocks sorted by
    their least element.
    """
    forest = _UnionFind(s.m)
    for a, b in pairs:
        forest.union(a, b)

    changed = True
    while changed:
        changed = False
        for a in range(s.m):
            root = forest.find(a)
            if root == a:
                continue
            for c in range(s.m):
                changed |= forest.union(s.plus(a, c), s.plus(root, c))
            for gamma_index in range(s.gamma_count):
                for slot in range(s.n):
                    for others in itertools.product(range(s.m), repeat=s.n - 1):
                        with_a = others[:slot] + (a,) + others[slot:]
                        with_root = others[:slot] + (root,) + others[slot:]
                        changed |= forest.union(
                            s.value(gamma_index, with_a), s.value(gamma_index, with_root)
                        )

    blocks: dict[int, list[int]] = {}
    for x in range(s.m):
        blocks.setdefault(forest.find(x), []).append(x)
    return sorted((tuple(block) for block in blocks.values()), key=lambda block: block[0])


def bourne_pairs(s: GammaSemiring, ideal: IdealSubset) -> list[tuple[int, int]]:
    members = ideal.members
    return [
        (a, b)
        for a, b in itertools.combinations(range(s.m), 2)
        if any(s.plus(a, p) == s.plus(b, q) for p in members for q in members)
    ]


def quotient_by_blocks(s: GammaSemiring, blocks: Sequence[tuple[int, ...]]) -> tuple[GammaSemiring, tuple[int, ...]]:
    """Induced structure on the blocks of a congruence plus the class lookup."""
    class_of = [0] * s.m
    for index, block in enumerate(blocks):
        for x in block:
            class_of[x] = index
    representatives = [block[0] for block in blocks]
    size = len(blocks)

    add_table = [
        [class_of[s.plus(representatives[i], representatives[j])] for j in range(size)]
        for i in range(size)
    ]
    mu_tables = [
        [
            class_of[s.value(gamma_index, [representatives[c] for c in classes])]
            for classes in itertools.product(range(size), repeat=s.n)
        ]
        for gamma_index in range(s.gamma_count)
    ]
    quotient = GammaSemiring(
        m=size, n=s.n, r=s.r, add=add_table, mu=mu_tables, assoc_mode=s.assoc_mode
    )
    return quotient, tuple(class_of)


def bourne_quotient(s: GammaSemiring, ideal: IdealSubset) -> QuotientStructure:
    """Quotient by the smallest congruence containing the Bourne relation of ``ideal``."""
    if TWO_SIDED not in ideal.kinds and not is_ideal(s, ideal, TWO_SIDED):
        raise UsageError(f"{ideal!r} is not a two-sided ideal")

    blocks = congruence_closure(s, bourne_pairs(s, ideal))
    quotient, class_of = quotient_by_blocks(s, blocks)
    logger.debug(f"Quotient of {s!r} by {ideal!r} has {len(blocks)} classes")
    return QuotientStructure(
        parent=s,
        ideal=ideal,
        classes=tuple(blocks),
        quotient=quotient,
        projection=Homomorphism(s, quotient, class_of),
    )


@dataclass(frozen=True)
class ProductStructure:
    """Componentwise product; element index is mixed radix, first factor most significant."""

    factors: tuple[GammaSemiring, ...]
    structure: GammaSemiring

    def encode(self, components: Sequence[int]) -> int:
        index = 0
        for factor, component in zip(self.factors, components):
            index = index * factor.m + component
        return index

    def decode(self, index: int) -> tuple[int, ...]:
        components = []
        for factor in reversed(self.factors):
            index, component = divmod(index, factor.m)
            components.append(component)
        return tuple(reversed(components))


def product_structure(factors: Sequence[GammaSemiring], carrier_limit: Optional[int] = None) -> ProductStructure:
    if not factors:
        raise UsageError("a product needs at least one factor")
    n, r = factors[0].n, factors[0].r
    if any(f.n != n or f.r != r for f in factors):
        raise UsageError("product factors must share arity and Gamma size")

    size = 1
    for factor in factors:
        size *= factor.m
    limit = carrier_limit or get_toolkit_settings().ideal_scan_limit
    if size > limit:
        raise CapacityError("product carrier size", size, limit)

    shell = ProductStructure(tuple(factors), factors[0])
    tuples = [shell.decode(index) for index in range(size)]

    def add_rule(a: int, b: int) -> int:
        return shell.encode([f.plus(x, y) for f, x, y in zip(factors, tuples[a], tuples[b])])

    def mu_rule(gammas: tuple[int, ...], args: tuple[int, ...]) -> int:
        gamma_index = factors[0].gamma_index(gammas)
        columns = zip(*(tuples[a] for a in args))
        return shell.encode([f.value(gamma_index, column) for f, column in zip(factors, columns)])

    structure = GammaSemiring.from_rules(
        size, n, r, add_rule, mu_rule, assoc_mode=factors[0].assoc_mode
    )
    return ProductStructure(tuple(factors), structure)


def audit_threshold_transport(s: GammaSemiring, limit: Optional[int] = None) -> list[AuditEntry]:
    """Threshold ideals under every Bourne-quotient projection: preimages and images."""
    quotients = [bourne_quotient(s, ideal) for ideal in all_ideals(s, TWO_SIDED, limit)]
    kinds = [IdealKind.at_least(count) for count in range(1, s.n + 1)]

    def preimages():
        for q in quotients:
            for kind in kinds:
                for target_ideal in all_ideals(q.quotient, kind, limit):
                    preimage = pullback_ideal(q.projection, target_ideal)
                    witness = {"quotient_by": q.ideal, "kind": kind,
                               "target_ideal": target_ideal, "preimage": preimage}
                    yield witness, is_ideal(s, preimage, kind)

    def images():
        for q in quotients:
            for kind in kinds:
                for ideal in all_ideals(s, kind, limit):
                    image = image_subset(q.projection, ideal)
                    witness = {"quotient_by": q.ideal, "kind": kind, "ideal": ideal, "image": image}
                    holds = (
                        is_additively_closed(q.quotient, image)
                        and closure_violation(q.quotient, image, kind) is None
                    )
                    yield witness, holds

    return [
        collect("ideals.threshold_preimages", preimages()),
        collect("ideals.threshold_images", images()),
    ]
