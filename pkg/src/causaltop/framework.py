"""Finite frameworks: a set of places with a distinguished family of place-subsets.

A framework is the same data as a formal context ``(places, framology, in)``.
Dualizing swaps the roles: framology members become places ("abstract points")
and each old place ``x`` contributes the set of members containing it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping

from ._order import canonical_key, canonical_sorted
from .errors import ResourceError, ValidationError

MAX_ISO_PLACES = 10


@dataclass(frozen=True)
class Framework:
    places: frozenset
    framology: frozenset

    def __init__(self, places: Iterable[Hashable], framology: Iterable[Iterable[Hashable]] = ()):
        places = frozenset(places)
        members = frozenset(frozenset(m) for m in framology)
        for m in members:
            if not m <= places:
                extra = canonical_sorted(m - places)
                raise ValidationError(f"framology member contains non-places: {extra!r}")
        object.__setattr__(self, "places", places)
        object.__setattr__(self, "framology", members)

    def __repr__(self):
        return f"Framework(places={self.sorted_places()!r}, framology={self.sorted_framology()!r})"

    def sorted_places(self) -> list:
        return canonical_sorted(self.places)

    def sorted_framology(self) -> list:
        return [canonical_sorted(m) for m in canonical_sorted(self.framology)]

    def star(self, x) -> frozenset:
        """Members of the framology containing ``x``."""
        return frozenset(U for U in self.framology if x in U)


@dataclass(frozen=True)
class FrameworkMorphism:
    source: Framework
    target: Framework
    mapping: Mapping

    def __call__(self, x):
        return self.mapping[x]

    def image(self, subset: Iterable) -> frozenset:
        return frozenset(self.mapping[x] for x in subset)


@dataclass(frozen=True)
class IsomorphismWitness:
    forward: FrameworkMorphism
    backward: FrameworkMorphism

    def verify(self) -> bool:
        f, g = self.forward, self.backward
        if f.source != g.target or f.target != g.source:
            return False
        if not (check_morphism(f) and check_morphism(g)):
            return False
        return all(g(f(x)) == x for x in f.source.places) and all(
            f(g(y)) == y for y in g.source.places
        )

    def is_bijective(self) -> bool:
        f = self.forward
        return len(set(f.mapping.values())) == len(f.source.places) == len(f.target.places)


def is_T0(fw: Framework) -> bool:
    # x and y are separated exactly when their stars differ
    stars = [fw.star(x) for x in fw.places]
    return len(set(stars)) == len(stars)


def dualize(fw: Framework) -> Framework:
    return Framework(fw.framology, (fw.star(x) for x in fw.places))


def quotient(fw: Framework, partition: Iterable[Iterable[Hashable]]) -> Framework:
    classes = [frozenset(c) for c in partition]
    class_of = {}
    for c in classes:
        if not c:
            raise ValidationError("partition contains an empty class")
        for x in c:
            if x in class_of:
                raise ValidationError(f"place {x!r} appears in more than one class")
            if x not in fw.places:
                raise ValidationError(f"{x!r} is not a place")
            class_of[x] = c
    missing = fw.places - class_of.keys()
    if missing:
        raise ValidationError(f"partition misses places {canonical_sorted(missing)!r}")
    return Framework(classes, (frozenset(class_of[x] for x in U) for U in fw.framology))


def check_morphism(m: FrameworkMorphism) -> bool:
    mapping = m.mapping
    if any(x not in mapping for x in m.source.places):
        return False
    if any(mapping[x] not in m.target.places for x in m.source.places):
        return False
    return all(m.image(U) in m.target.framology for U in m.source.framology)


def kernel_partition(fw: Framework) -> list:
    """Classes of places with identical stars, in canonical order."""
    groups = {}
    for x in canonical_sorted(fw.places):
        groups.setdefault(fw.star(x), []).append(x)
    return [frozenset(g) for g in groups.values()]


def canonical_map(fw: Framework) -> FrameworkMorphism:
    """The surjection ``x -> star(x)`` onto the double dual."""
    dd = dualize(dualize(fw))
    return FrameworkMorphism(fw, dd, {x: fw.star(x) for x in fw.places})


def double_dual_isomorphism(fw: Framework) -> IsomorphismWitness:
    """Witness that the double dual is isomorphic to the quotient by the star kernel.

    For a T0 framework the kernel is trivial and the witness's forward map has
    ``fw`` itself as source; otherwise its source is the quotient framework.
    """
    dd = dualize(dualize(fw))
    if is_T0(fw):
        source = fw
        forward = {x: fw.star(x) for x in fw.places}
    else:
        source = quotient(fw, kernel_partition(fw))
        forward = {c: fw.star(next(iter(c))) for c in source.places}
    backward = {y: x for x, y in forward.items()}
    return IsomorphismWitness(
        FrameworkMorphism(source, dd, forward),
        FrameworkMorphism(dd, source, backward),
    )


def _profile(fw: Framework, x) -> tuple:
    # membership count plus the sorted sizes of containing members
    return tuple(sorted(len(U) for U in fw.framology if x in U))


def frameworks_isomorphic(
    a: Framework, b: Framework, max_places: int = MAX_ISO_PLACES
) -> IsomorphismWitness | None:
    """Search for a framework isomorphism by backtracking.

    Candidates for each place are restricted to places with the same profile
    (sizes of the framology members containing it).
    """
    n = len(a.places)
    if max(n, len(b.places)) > max_places:
        raise ResourceError(f"isomorphism search limited to {max_places} places")
    if n != len(b.places) or len(a.framology) != len(b.framology):
        return None
    if sorted(map(len, a.framology)) != sorted(map(len, b.framology)):
        return None
    prof_a = {x: _profile(a, x) for x in a.places}
    prof_b = {y: _profile(b, y) for y in b.places}
    if Counter(prof_a.values()) != Counter(prof_b.values()):
        return None

    order = sorted(a.places, key=lambda x: (-len(prof_a[x]), canonical_key(x)))
    pos = {x: i for i, x in enumerate(order)}
    # members of a that become fully assigned once order[i] is placed
    closing = [[] for _ in range(n)]
    for U in a.framology:
        if U:
            closing[max(pos[x] for x in U)].append(U)
    candidates = {x: canonical_sorted(y for y in b.places if prof_b[y] == prof_a[x]) for x in order}

    mapping: dict = {}
    used: set = set()

    def extend(i: int) -> bool:
        if i == n:
            return True
        x = order[i]
        for y in candidates[x]:
            if y in used:
                continue
            mapping[x] = y
            if all(frozenset(mapping[z] for z in U) in b.framology for U in closing[i]):
                used.add(y)
                if extend(i + 1):
                    return True
                used.discard(y)
            del mapping[x]
        return False

    if not extend(0):
        return None
    forward = FrameworkMorphism(a, b, dict(mapping))
    backward = FrameworkMorphism(b, a, {y: x for x, y in mapping.items()})
    witness = IsomorphismWitness(forward, backward)
    # empty members and injectivity make the image count match; confirm anyway
    return witness if witness.verify() else None
