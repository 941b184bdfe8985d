"""The region lattice as a causal site, point separation, and dyadic refinement.

``RegionSite`` exposes a finite sample of regions through the site protocol
used by ``validate_causal_site``: order is inclusion, join is union, precedence
is ``region_precedes`` and the cutting is ``region_cutting``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import ResourceError, SeparationError, ValidationError
from .region import (
    EMPTY,
    Block,
    NullPoint,
    Region,
    region_cutting,
    region_intersect,
    region_precedes,
    region_subset,
    region_union,
)
from .site import validate_causal_site

MAX_CLOSURE = 5000
MAX_LEVEL = 5


def _overlap(a: Region, b: Region) -> bool:
    a0, a1, a2, a3 = a.bounds
    b0, b1, b2, b3 = b.bounds
    return a0 <= b1 and b0 <= a1 and a2 <= b3 and b2 <= a3


def _touching_pairs(regions: Sequence[Region]):
    """Pairs with overlapping bounding boxes, by a sweep over min_u."""
    live = sorted((r for r in regions if r), key=lambda r: r.bounds[0])
    for i, a in enumerate(live):
        a_max_u = a.bounds[1]
        for b in live[i + 1:]:
            if b.bounds[0] > a_max_u:
                break
            if _overlap(a, b):
                yield a, b


def lattice_closure(sample: Iterable[Region], depth: int = 2, *, unions: bool = True,
                    max_elements: int = MAX_CLOSURE) -> list:
    """Apply pairwise union/intersection ``depth`` times; the empty region is always included."""
    cur = set(sample) | {EMPTY}
    for _ in range(depth):
        items = list(cur)
        new = set(cur)
        if unions:
            for i, a in enumerate(items):
                for b in items[i + 1:]:
                    new.add(region_union(a, b))
                    if len(new) > max_elements:
                        raise ResourceError(f"lattice closure exceeds {max_elements} regions")
        for a, b in _touching_pairs(items):
            new.add(region_intersect(a, b))
            if len(new) > max_elements:
                raise ResourceError(f"lattice closure exceeds {max_elements} regions")
        if new == cur:
            break
        cur = new
    return sorted(cur)


def _precedes_or_false(a: Region, b: Region) -> bool:
    if not a or not b:
        return False
    return region_precedes(a, b)


class RegionSite:
    """Finite set of regions viewed through the causal-site protocol."""

    def __init__(self, elements: Iterable[Region], precedes: Callable[[Region, Region], bool] | None = None):
        self.elements = tuple(sorted(set(elements) | {EMPTY}))
        self.bottom = EMPTY
        self._precedes = precedes or _precedes_or_false
        self._le_cache: dict = {}

    def le(self, a: Region, b: Region) -> bool:
        key = (a, b)
        hit = self._le_cache.get(key)
        if hit is None:
            hit = self._le_cache[key] = region_subset(a, b)
        return hit

    def precedes(self, a: Region, b: Region) -> bool:
        if not a or not b:
            return False
        return self._precedes(a, b)

    def join(self, a: Region, b: Region) -> Region:
        return region_union(a, b)

    def cutting(self, a: Region, b: Region) -> Region:
        """Cutting of ``a`` by ``b``."""
        return region_cutting(b, a)


def validate_region_site(sample: Sequence[Region], depth: int = 2, *,
                         precedes: Callable[[Region, Region], bool] | None = None,
                         max_elements: int = MAX_CLOSURE) -> list:
    elements = lattice_closure(sample, depth, max_elements=max_elements)
    return validate_causal_site(RegionSite(elements, precedes=precedes))


def _square(p: NullPoint, r: Fraction) -> Block:
    return Block(p.u - r, p.u + r, p.v - r, p.v + r)


def separate(points: Sequence[NullPoint], x: NullPoint, *, max_halvings: int = 256) -> Region:
    """Finite union of small diamonds covering ``points`` and missing ``x``.

    Each point gets a diamond centred on it, with dyadic half-width halved
    until ``x`` falls outside.
    """
    blocks = []
    for p in points:
        if p == x:
            raise SeparationError(f"{x!r} coincides with a point to be covered")
        r = Fraction(1)
        for _ in range(max_halvings):
            blk = _square(p, r)
            if not blk.contains(x):
                break
            r /= 2
        else:
            raise ResourceError("separation needed too many halvings")
        blocks.append(blk)
    region = Region(blocks)
    if region.contains(x) or not all(region.contains(p) for p in points):
        raise AssertionError("separation postcondition failed")
    return region


@dataclass
class Refinement:
    window: Block
    level: int
    site: list
    families: list
    witnesses: dict = field(default_factory=dict)

    def family_of(self, p: NullPoint) -> frozenset:
        return point_family(self.site, p)


def dyadic_diamonds(window: Block, level: int) -> list:
    k = 1 << level
    du = (window.u_hi - window.u_lo) / k
    dv = (window.v_hi - window.v_lo) / k
    out = []
    for i in range(k):
        for j in range(k):
            out.append(Region([Block(window.u_lo + i * du, window.u_lo + (i + 1) * du,
                                     window.v_lo + j * dv, window.v_lo + (j + 1) * dv)]))
    return out


def point_family(site: Iterable[Region], p: NullPoint) -> frozenset:
    """All site members containing ``p``."""
    return frozenset(c for c in site if c and c.contains(p))


def _cell_representatives(site: Sequence[Region]) -> list:
    us, vs = set(), set()
    for r in site:
        bu, bv = r.breakpoints
        us.update(bu)
        vs.update(bv)

    def reps(vals):
        vals = sorted(vals)
        out = list(vals)
        out += [(a + b) / 2 for a, b in zip(vals, vals[1:])]
        return sorted(out)

    return [NullPoint(u, v) for u in reps(us) for v in reps(vs)]


def maximal_fip_families(site: Sequence[Region]) -> list:
    """Inclusion-maximal subfamilies of ``site`` with nonempty intersection.

    Membership is constant on the cells of the breakpoint grid, so the
    candidates are the point families of one representative per cell.
    """
    live = [r for r in site if r]
    fams = set()
    by_u = sorted(live, key=lambda r: r.bounds[0])
    for z in _cell_representatives(live):
        fam = frozenset(r for r in by_u if r.bounds[0] <= z.u <= r.bounds[1] and r.contains(z))
        if fam:
            fams.add(fam)
    containing: dict = {}
    for fam in fams:
        for r in fam:
            containing.setdefault(r, []).append(fam)
    maximal = []
    for fam in fams:
        pivot = min(fam, key=lambda r: len(containing[r]))
        if not any(len(other) > len(fam) and fam < other for other in containing[pivot]):
            maximal.append(fam)
    return sorted(maximal, key=lambda f: sorted(f))


def family_intersection(fam: Iterable[Region]) -> Region:
    it = iter(fam)
    acc = next(it)
    for r in it:
        acc = region_intersect(acc, r)
    return acc


def refine_and_enumerate(window: Block, level: int, *, depth: int = 2, max_level: int = MAX_LEVEL,
                         enumerate_families: bool = True) -> Refinement:
    if level < 0:
        raise ValidationError("level must be non-negative")
    if level > max_level:
        raise ResourceError(f"refinement level {level} exceeds the configured maximum {max_level}")
    site = lattice_closure(dyadic_diamonds(window, level), depth, unions=False,
                           max_elements=max(MAX_CLOSURE, 4 * (2 ** level + 1) ** 2))
    site = [r for r in site if r]
    families = maximal_fip_families(site) if enumerate_families else []
    witnesses = {fam: family_intersection(fam) for fam in families}
    return Refinement(window, level, site, families, witnesses)
