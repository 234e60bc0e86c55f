"""Canonical forms, isomorphism tests and isomorphism-class partitions."""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from gammalab.config.settings import get_toolkit_settings
from gammalab.services.errors import CapacityError
from gammalab.services.metrics_service import metrics_service
from gammalab.services.morphisms import Homomorphism, is_homomorphism
from gammalab.services.semiring import GammaSemiring
from gammalab.services.structure_io import digest


logger = logging.getLogger(__name__)

Relabeling = tuple[int, ...]


def relabelings(m: int) -> Iterator[Relabeling]:
    """Permutations of [0, m) fixing 0, identity first."""
    for tail in itertools.permutations(range(1, m)):
        yield (0,) + tail


def _gamma_relabelings(r: int, permute_gamma: bool) -> list[Optional[Relabeling]]:
    if not permute_gamma:
        return [None]
    return list(itertools.permutations(range(r)))


def inverse(permutation: Sequence[int]) -> Relabeling:
    return tuple(int(x) for x in np.argsort(np.asarray(permutation)))


def compose(outer: Sequence[int], inner: Sequence[int]) -> Relabeling:
    """``outer`` after ``inner``."""
    return tuple(outer[x] for x in inner)


def addition_automorphisms(s: GammaSemiring) -> list[Relabeling]:
    """Relabelings fixing 0 that leave the addition table unchanged."""
    return [
        perm for perm in relabelings(s.m)
        if all(perm[s.plus(a, b)] == s.plus(perm[a], perm[b]) for a in range(s.m) for b in range(s.m))
    ]


@dataclass(frozen=True)
class CanonicalForm:
    structure: GammaSemiring
    digest: str
    relabeling: Relabeling
    gamma_relabeling: Optional[Relabeling] = None

    @property
    def permute_gamma(self) -> bool:
        return self.gamma_relabeling is not None

    def to_jsonable(self) -> dict:
        payload = {"digest": self.digest, "relabeling": list(self.relabeling)}
        if self.gamma_relabeling is not None:
            payload["gamma_relabeling"] = list(self.gamma_relabeling)
            payload["permute_gamma"] = True
        return payload


def _check_capacity(s: GammaSemiring, carrier_limit: Optional[int]) -> None:
    limit = carrier_limit or get_toolkit_settings().canonical_carrier_limit
    if s.m > limit:
        raise CapacityError("carrier size for canonical forms", s.m, limit)


def minimal_relabeling(
    s: GammaSemiring,
    candidates: Iterable[Relabeling],
    permute_gamma: bool = False,
) -> tuple[GammaSemiring, Relabeling, Optional[Relabeling]]:
    """The relabeling among ``candidates`` whose tables serialize smallest."""
    best = None
    for perm in candidates:
        for gamma_perm in _gamma_relabelings(s.r, permute_gamma):
            candidate = s.relabel(perm, gamma_perm)
            key = candidate.table_key()
            if best is None or key < best[0]:
                best = (key, candidate, perm, gamma_perm)
    _, structure, perm, gamma_perm = best
    return structure, perm, gamma_perm


def canonical_form(
    s: GammaSemiring,
    permute_gamma: bool = False,
    carrier_limit: Optional[int] = None,
) -> CanonicalForm:
    _check_capacity(s, carrier_limit)
    structure, perm, gamma_perm = minimal_relabeling(s, relabelings(s.m), permute_gamma)
    return CanonicalForm(structure, digest(structure), perm, gamma_perm)


def is_canonical_under(s: GammaSemiring, candidates: Iterable[Relabeling]) -> bool:
    """True when no candidate relabeling gives smaller tables."""
    key = s.table_key()
    return all(s.relabel(perm).table_key() >= key for perm in candidates)


def _same_shape(s1: GammaSemiring, s2: GammaSemiring) -> bool:
    if (s1.m, s1.n, s1.r, s1.assoc_mode) != (s2.m, s2.n, s2.r, s2.assoc_mode):
        logger.info(
            f"Shape mismatch: (m={s1.m}, n={s1.n}, r={s1.r}, {s1.assoc_mode.value}) vs "
            f"(m={s2.m}, n={s2.n}, r={s2.r}, {s2.assoc_mode.value})"
        )
        return False
    return True


def brute_force_isomorphism(
    s1: GammaSemiring,
    s2: GammaSemiring,
    permute_gamma: bool = False,
) -> Optional[Homomorphism]:
    """Search every relabeling fixing 0 for one carrying ``s1`` onto ``s2``."""
    if not _same_shape(s1, s2):
        return None
    for perm in relabelings(s1.m):
        for gamma_perm in _gamma_relabelings(s1.r, permute_gamma):
            if s1.relabel(perm, gamma_perm) == s2:
                return Homomorphism(s1, s2, perm, gamma_perm)
    return None


def are_isomorphic(
    s1: GammaSemiring,
    s2: GammaSemiring,
    permute_gamma: bool = False,
) -> Optional[Homomorphism]:
    """A bijective witness ``s1 -> s2`` rebuilt from the two canonical relabelings, or ``None``."""
    if not _same_shape(s1, s2):
        return None
    first = canonical_form(s1, permute_gamma)
    second = canonical_form(s2, permute_gamma)
    if first.digest != second.digest:
        return None
    if first.structure != second.structure:
        logger.warning(f"Digest collision on {first.digest}, falling back to exhaustive search")
        return brute_force_isomorphism(s1, s2, permute_gamma)

    mapping = compose(inverse(second.relabeling), first.relabeling)
    gamma_mapping = None
    if permute_gamma:
        gamma_mapping = compose(inverse(second.gamma_relabeling), first.gamma_relabeling)
    witness = Homomorphism(s1, s2, mapping, gamma_mapping)
    if not is_homomorphism(witness):
        raise RuntimeError(f"Rebuilt witness {mapping} does not preserve the tables")
    return witness


@dataclass(frozen=True)
class IsomorphismClass:
    digest: str
    representatives: tuple[GammaSemiring, ...]
    collision: bool = False

    def to_jsonable(self) -> dict:
        payload = {
            "digest": self.digest,
            "m": self.representatives[0].m,
            "n": self.representatives[0].n,
            "r": self.representatives[0].r,
            "size": len(self.representatives),
        }
        if self.collision:
            payload["collision"] = True
        return payload


def partition(structures: Sequence[GammaSemiring], permute_gamma: bool = False) -> list[IsomorphismClass]:
    """
    Group by shape, then by canonical digest. Members sharing a digest are
    checked against the first; a mismatch is a digest collision and splits
    the group by exhaustive search.
    """
    groups: dict[tuple, list[tuple[GammaSemiring, CanonicalForm]]] = {}
    for s in structures:
        form = canonical_form(s, permute_gamma)
        groups.setdefault((s.m, s.n, s.r, s.assoc_mode.value, form.digest), []).append((s, form))

    classes = []
    for key in sorted(groups):
        members = groups[key]
        buckets: list[list[tuple[GammaSemiring, CanonicalForm]]] = []
        for member in members:
            for bucket in buckets:
                if bucket[0][1].structure == member[1].structure:
                    bucket.append(member)
                    break
            else:
                buckets.append([member])

        collision = len(buckets) > 1
        if collision:
            logger.warning(f"Digest collision: {len(buckets)} distinct canonical forms share {key[-1]}")
            merged: list[list[GammaSemiring]] = []
            for bucket in buckets:
                representative = bucket[0][0]
                target = next(
                    (group for group in merged
                     if brute_force_isomorphism(group[0], representative, permute_gamma) is not None),
                    None,
                )
                if target is None:
                    merged.append([s for s, _ in bucket])
                else:
                    target.extend(s for s, _ in bucket)
            classes.extend(IsomorphismClass(key[-1], tuple(group), True) for group in merged)
        else:
            classes.append(IsomorphismClass(key[-1], tuple(s for s, _ in members)))

    metrics_service.set_isomorphism_classes(len(classes))
    return classes
