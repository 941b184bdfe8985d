"""Finite topological spaces stored by their closed sets.

Points are kept in canonical order and every closed set is a bitmask over that
order; the public surface speaks frozensets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable

from ._order import canonical_sorted
from .errors import ResourceError, ValidationError

MAX_FIP_SUBBASE = 20


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _union_closure(masks: Iterable[int]) -> set:
    fam = {0}
    for m in set(masks):
        fam |= {s | m for s in fam}
    return fam


def _intersection_closure(masks: Iterable[int], full: int) -> set:
    fam = {full}
    for m in set(masks):
        fam |= {s & m for s in fam}
    return fam


class FiniteTopology:
    """A topology on a finite ground set, given by its family of closed sets."""

    __slots__ = ("points", "index", "masks", "full")

    def __init__(self, ground: Iterable[Hashable], closed: Iterable[Iterable[Hashable]], *, check=True):
        self.points = tuple(canonical_sorted(set(ground)))
        self.index = {p: i for i, p in enumerate(self.points)}
        self.full = (1 << len(self.points)) - 1
        self.masks = frozenset(self._mask(c) for c in closed)
        if check:
            self._check()

    @classmethod
    def from_masks(cls, points: tuple, masks: Iterable[int]) -> "FiniteTopology":
        t = cls.__new__(cls)
        t.points = points
        t.index = {p: i for i, p in enumerate(points)}
        t.full = (1 << len(points)) - 1
        t.masks = frozenset(masks)
        return t

    def _mask(self, subset: Iterable[Hashable]) -> int:
        m = 0
        for x in subset:
            try:
                m |= 1 << self.index[x]
            except KeyError:
                raise ValidationError(f"{x!r} is not a point of the ground set") from None
        return m

    def _set(self, mask: int) -> frozenset:
        return frozenset(self.points[i] for i in _bits(mask))

    def _check(self):
        if 0 not in self.masks or self.full not in self.masks:
            raise ValidationError("empty set and ground must be closed")
        ms = list(self.masks)
        for i, a in enumerate(ms):
            for b in ms[i + 1:]:
                if a | b not in self.masks or a & b not in self.masks:
                    raise ValidationError(
                        f"closed sets not closed under union/intersection: {self._set(a)}, {self._set(b)}"
                    )

    @property
    def ground(self) -> frozenset:
        return frozenset(self.points)

    @property
    def closed_sets(self) -> frozenset:
        return frozenset(self._set(m) for m in self.masks)

    @property
    def open_sets(self) -> frozenset:
        return frozenset(self._set(self.full & ~m) for m in self.masks)

    def is_closed(self, subset: Iterable[Hashable]) -> bool:
        return self._mask(subset) in self.masks

    def closure_mask(self, mask: int) -> int:
        out = self.full
        for c in self.masks:
            if c & mask == mask:
                out &= c
        return out

    def closure(self, subset: Iterable[Hashable]) -> frozenset:
        return self._set(self.closure_mask(self._mask(subset)))

    def sorted_closed_sets(self) -> list:
        return [canonical_sorted(c) for c in canonical_sorted(self.closed_sets)]

    def __eq__(self, other):
        if not isinstance(other, FiniteTopology):
            return NotImplemented
        return self.points == other.points and self.masks == other.masks

    def __hash__(self):
        return hash((self.points, self.masks))

    def __repr__(self):
        return f"FiniteTopology(ground={list(self.points)!r}, closed={self.sorted_closed_sets()!r})"


@dataclass(frozen=True)
class SpecializationPreorder:
    """``le(x, y)`` holds iff x lies in the closure of {y}."""

    points: tuple
    relation: frozenset

    def le(self, x, y) -> bool:
        return (x, y) in self.relation

    def up_set(self, x) -> frozenset:
        return frozenset(y for y in self.points if (x, y) in self.relation)

    def is_up_set(self, subset: Iterable[Hashable]) -> bool:
        s = frozenset(subset)
        return all(self.up_set(x) <= s for x in s)

    def hasse_edges(self) -> list:
        """Transitively reduced edges ``x -> y`` (x <= y, x != y).

        Mutually related points keep their edges; an edge is dropped only when
        some point inequivalent to both ends sits between them.
        """

        def equiv(a, b):
            return self.le(a, b) and self.le(b, a)

        edges = []
        for x in self.points:
            for y in self.points:
                if x == y or not self.le(x, y):
                    continue
                between = any(
                    self.le(x, z) and self.le(z, y) and not equiv(z, x) and not equiv(z, y)
                    for z in self.points
                )
                if not between:
                    edges.append((x, y))
        return edges


def generate_from_closed_subbase(ground: Iterable[Hashable], subbase: Iterable[Iterable[Hashable]]) -> FiniteTopology:
    """Coarsest topology in which every subbase member is closed."""
    points = tuple(canonical_sorted(set(ground)))
    shell = FiniteTopology.from_masks(points, ())
    masks = [shell._mask(s) for s in subbase]
    unions = _union_closure(masks)
    return FiniteTopology.from_masks(points, _intersection_closure(unions, shell.full) | {0})


def is_T1(t: FiniteTopology) -> bool:
    return all((1 << i) in t.masks for i in range(len(t.points)))


def has_fip(family: list) -> bool:
    """Finite intersection property of a finite family of sets."""
    if not family:
        return True
    return bool(frozenset.intersection(*map(frozenset, family)))


def check_fip_compactness(
    t: FiniteTopology,
    subbase: Iterable[Iterable[Hashable]],
    *,
    fip: Callable[[list], bool] = has_fip,
    max_subbase: int = MAX_FIP_SUBBASE,
) -> bool:
    """Exhaustive Alexander-subbase check: every nonempty subfamily that has the
    f.i.p. (as judged by ``fip``) must have nonempty intersection.

    ``fip`` is pluggable so that test harnesses can inject a faulty judgement.
    """
    members = [frozenset(s) for s in subbase]
    if len(members) > max_subbase:
        raise ResourceError(f"subbase has {len(members)} members; limit is {max_subbase}")
    masks = [t._mask(s) for s in members]
    if generate_from_closed_subbase(t.points, members) != t:
        raise ValidationError("subbase does not generate the given topology")
    n = len(masks)
    inter = [t.full] * (1 << n)
    for sub in range(1, 1 << n):
        low = (sub & -sub).bit_length() - 1
        inter[sub] = inter[sub & (sub - 1)] & masks[low]
        if inter[sub] == 0 and fip([members[i] for i in _bits(sub)]):
            return False
    return True


def specialization(t: FiniteTopology) -> SpecializationPreorder:
    rel = set()
    for j, y in enumerate(t.points):
        cl = t.closure_mask(1 << j)
        for i in _bits(cl):
            rel.add((t.points[i], y))
    return SpecializationPreorder(t.points, frozenset(rel))


def de_groot_dual(t: FiniteTopology) -> FiniteTopology:
    """Co-compact dual. Every subset of a finite space is compact, so the closed
    sets of the dual are exactly the saturated sets, i.e. specialization up-sets.
    """
    spec = specialization(t)
    ups = [spec.up_set(x) for x in t.points]
    shell = FiniteTopology.from_masks(t.points, ())
    up_masks = [shell._mask(u) for u in ups]
    # up-sets are exactly the unions of principal up-sets
    return FiniteTopology.from_masks(t.points, _union_closure(up_masks) | {t.full})


def dual_iteration(t: FiniteTopology, max_steps: int = 8) -> list:
    """``[t, t^G, t^GG, ...]`` stopped just before the first repeat."""
    if max_steps < 4:
        raise ValueError("max_steps must be at least 4")
    seq = [t]
    for _ in range(max_steps):
        nxt = de_groot_dual(seq[-1])
        if nxt in seq:
            break
        seq.append(nxt)
    return seq


def is_superconnected(t: FiniteTopology) -> bool:
    opens = [t.full & ~c for c in t.masks]
    opens = [o for o in opens if o]
    return all(a & b for i, a in enumerate(opens) for b in opens[i:])


def restrict(t: FiniteTopology, subset: Iterable[Hashable]) -> FiniteTopology:
    sub = frozenset(subset)
    m = t._mask(sub)
    points = tuple(p for p in t.points if p in sub)
    return FiniteTopology(points, (t._set(c & m) for c in t.masks), check=False)


def discrete(ground: Iterable[Hashable]) -> FiniteTopology:
    pts = list(ground)
    return generate_from_closed_subbase(pts, [[p] for p in pts])


def indiscrete(ground: Iterable[Hashable]) -> FiniteTopology:
    return generate_from_closed_subbase(ground, [])
