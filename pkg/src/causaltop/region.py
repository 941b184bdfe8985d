"""Exact region lattice of closed diamonds in 1+1 dimensions.

In null coordinates ``u = t - x``, ``v = t + x`` the causal order is the
componentwise order, so a closed diamond is an axis-aligned rectangle and every
finite union of finite intersections of diamonds is a finite union of closed
(possibly degenerate) rectangles.

A ``Region`` stores such a set in canonical slab form: a sequence of slabs
ordered by ``u``, each either a single abscissa ``u = c`` (``lo == hi``) or an
open strip ``lo < u < hi``, carrying the cross-section as disjoint closed
``v``-intervals. Breakpoints are kept only where the cross-section actually
changes, which makes the representation unique per point set.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DimensionError, InvalidDiamondError, SeparationError, UndefinedPrecedenceError
from .minkowski import MinkVec, RatLike, causal_le, rat, rat_str


@dataclass(frozen=True, order=True)
class NullPoint:
    u: Fraction
    v: Fraction

    def __init__(self, u: RatLike, v: RatLike):
        object.__setattr__(self, "u", rat(u))
        object.__setattr__(self, "v", rat(v))

    def le(self, other: "NullPoint") -> bool:
        return self.u <= other.u and self.v <= other.v

    def __repr__(self):
        return f"NullPoint({rat_str(self.u)}, {rat_str(self.v)})"


def to_null(p: MinkVec) -> NullPoint:
    if p.dim != 2:
        raise DimensionError("null coordinates are defined in 1+1 dimensions only")
    t, x = p.coords
    return NullPoint(t - x, t + x)


def from_null(n: NullPoint) -> MinkVec:
    return MinkVec((n.u + n.v) / 2, (n.v - n.u) / 2)


@dataclass(frozen=True, order=True)
class Block:
    """Closed rectangle ``[u_lo, u_hi] x [v_lo, v_hi]``, i.e. the diamond
    between ``(u_lo, v_lo)`` and ``(u_hi, v_hi)``."""

    u_lo: Fraction
    u_hi: Fraction
    v_lo: Fraction
    v_hi: Fraction

    def __init__(self, u_lo: RatLike, u_hi: RatLike, v_lo: RatLike, v_hi: RatLike):
        vals = tuple(rat(c) for c in (u_lo, u_hi, v_lo, v_hi))
        if vals[0] > vals[1] or vals[2] > vals[3]:
            raise InvalidDiamondError(f"block bounds out of order: {vals}")
        for name, val in zip(("u_lo", "u_hi", "v_lo", "v_hi"), vals):
            object.__setattr__(self, name, val)

    @classmethod
    def from_diamond(cls, p: MinkVec, q: MinkVec) -> "Block":
        if not causal_le(p, q):
            raise InvalidDiamondError(f"{p!r} is not causally below {q!r}")
        a, b = to_null(p), to_null(q)
        return cls(a.u, b.u, a.v, b.v)

    @property
    def apexes(self) -> tuple:
        """(past tip, future tip) in (t, x) coordinates."""
        return (
            from_null(NullPoint(self.u_lo, self.v_lo)),
            from_null(NullPoint(self.u_hi, self.v_hi)),
        )

    def contains(self, n: NullPoint) -> bool:
        return self.u_lo <= n.u <= self.u_hi and self.v_lo <= n.v <= self.v_hi

    def intersect(self, other: "Block") -> "Block | None":
        u_lo, u_hi = max(self.u_lo, other.u_lo), min(self.u_hi, other.u_hi)
        v_lo, v_hi = max(self.v_lo, other.v_lo), min(self.v_hi, other.v_hi)
        if u_lo > u_hi or v_lo > v_hi:
            return None
        return Block(u_lo, u_hi, v_lo, v_hi)

    def __repr__(self):
        f = rat_str
        return f"[{f(self.u_lo)},{f(self.u_hi)}]x[{f(self.v_lo)},{f(self.v_hi)}]"


def _merge_intervals(ivs: Iterable[tuple]) -> tuple:
    out = []
    for lo, hi in sorted(ivs):
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return tuple(out)


def _normalize(blocks: Sequence[Block]) -> tuple:
    if not blocks:
        return ()
    us = sorted({b.u_lo for b in blocks} | {b.u_hi for b in blocks})
    by_lo = sorted(blocks, key=lambda b: b.u_lo)
    pieces = []
    for i, c in enumerate(us):
        # blocks are few per call; a linear filter keeps this obviously correct
        pieces.append((c, c, _merge_intervals((b.v_lo, b.v_hi) for b in by_lo if b.u_lo <= c <= b.u_hi)))
        if i + 1 < len(us):
            d = us[i + 1]
            pieces.append((c, d, _merge_intervals((b.v_lo, b.v_hi) for b in by_lo if b.u_lo <= c and d <= b.u_hi)))
    out = []
    for piece in pieces:
        lo, hi, ivs = piece
        if (
            lo != hi
            and len(out) >= 2
            and out[-1][0] == out[-1][1] == lo
            and out[-2][1] == lo
            and out[-2][0] != out[-2][1]
            and out[-1][2] == ivs == out[-2][2]
        ):
            out.pop()
            out[-1] = (out[-1][0], hi, ivs)
        else:
            out.append(piece)
    return tuple(p for p in out if p[2])


class Region:
    """Closed region: finite union of closed diamonds (null-coordinate rectangles)."""

    __slots__ = ("slabs", "_hash", "__dict__")

    def __init__(self, blocks: Iterable[Block] = ()):
        self.slabs = _normalize(list(blocks))
        self._hash = hash(self.slabs)

    @classmethod
    def _from_slabs(cls, slabs: tuple) -> "Region":
        r = cls.__new__(cls)
        r.slabs = slabs
        r._hash = hash(slabs)
        return r

    def __eq__(self, other):
        if not isinstance(other, Region):
            return NotImplemented
        return self._hash == other._hash and self.slabs == other.slabs

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return bool(self.slabs)

    def is_empty(self) -> bool:
        return not self.slabs

    def sort_key(self):
        return tuple((lo, hi, ivs) for lo, hi, ivs in self.slabs)

    def __lt__(self, other: "Region"):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        if not self.slabs:
            return "Region(empty)"
        return "Region(" + " u ".join(map(repr, self.blocks)) + ")"

    @cached_property
    def blocks(self) -> tuple:
        """Interior-disjoint closed blocks whose union is the region."""
        out = []
        slabs = self.slabs
        for i, (lo, hi, ivs) in enumerate(slabs):
            if lo != hi:
                out.extend(Block(lo, hi, a, b) for a, b in ivs)
                continue
            covered = []
            if i > 0 and slabs[i - 1][1] == lo and slabs[i - 1][0] != lo:
                covered.extend(slabs[i - 1][2])
            if i + 1 < len(slabs) and slabs[i + 1][0] == lo and slabs[i + 1][1] != lo:
                covered.extend(slabs[i + 1][2])
            for a, b in ivs:
                if not any(c <= a and b <= d for c, d in covered):
                    out.append(Block(lo, lo, a, b))
        return tuple(out)

    @cached_property
    def bounds(self) -> tuple:
        """(min_u, max_u, min_v, max_v); attained since regions are compact."""
        if not self.slabs:
            raise UndefinedPrecedenceError("empty region has no extent")
        return (
            self.slabs[0][0],
            self.slabs[-1][1],
            min(ivs[0][0] for _, _, ivs in self.slabs),
            max(ivs[-1][1] for _, _, ivs in self.slabs),
        )

    @cached_property
    def breakpoints(self) -> tuple:
        us = sorted({s[0] for s in self.slabs} | {s[1] for s in self.slabs})
        vs = sorted({c for _, _, ivs in self.slabs for iv in ivs for c in iv})
        return tuple(us), tuple(vs)

    def contains(self, p: NullPoint) -> bool:
        slabs = self.slabs
        i = bisect_left(slabs, p.u, key=lambda s: s[1])
        # first slab whose upper end is >= u; a point slab at u sorts before the strip starting at u
        while i < len(slabs):
            lo, hi, ivs = slabs[i]
            if lo > p.u:
                return False
            if lo == hi == p.u or lo < p.u < hi:
                return any(a <= p.v <= b for a, b in ivs)
            i += 1
        return False

    def to_diamonds(self) -> list:
        return [b.apexes for b in self.blocks]


EMPTY = Region()


def region_from_diamonds(ds: Iterable[tuple]) -> Region:
    return Region(Block.from_diamond(MinkVec(p) if not isinstance(p, MinkVec) else p,
                                     MinkVec(q) if not isinstance(q, MinkVec) else q) for p, q in ds)


def region_from_blocks(blocks: Iterable) -> Region:
    return Region(b if isinstance(b, Block) else Block(*b) for b in blocks)


def region_union(a: Region, b: Region) -> Region:
    if not a:
        return b
    if not b or a == b:
        return a
    return Region(a.blocks + b.blocks)


def region_intersect(a: Region, b: Region) -> Region:
    if not a or not b:
        return EMPTY
    if a == b:
        return a
    a0, a1, a2, a3 = a.bounds
    b0, b1, b2, b3 = b.bounds
    if a1 < b0 or b1 < a0 or a3 < b2 or b3 < a2:
        return EMPTY
    out = []
    for x in a.blocks:
        for y in b.blocks:
            z = x.intersect(y)
            if z is not None:
                out.append(z)
    return Region(out)


def region_contains_point(a: Region, p: NullPoint) -> bool:
    return a.contains(p)


def region_subset(a: Region, b: Region) -> bool:
    if not a:
        return True
    if not b:
        return False
    a0, a1, a2, a3 = a.bounds
    b0, b1, b2, b3 = b.bounds
    if a0 < b0 or a1 > b1 or a2 < b2 or a3 > b3:
        return False
    return region_intersect(a, b) == a


def region_precedes(a: Region, b: Region) -> bool:
    """A < B: A != B and every point of A is causally below every point of B."""
    if not a or not b:
        raise UndefinedPrecedenceError("precedence is undefined for the empty region")
    _, a_max_u, _, a_max_v = a.bounds
    b_min_u, _, b_min_v, _ = b.bounds
    return a_max_u <= b_min_u and a_max_v <= b_min_v and a != b


def past_apex(a: Region) -> NullPoint:
    """Greatest point whose causal future contains ``a``."""
    min_u, _, min_v, _ = a.bounds
    return NullPoint(min_u, min_v)


def region_cutting(b: Region, a: Region) -> Region:
    """Largest part of ``b`` lying causally before ``a``.

    The set of points ``p`` with ``a`` inside the causal future of ``p`` has the
    single maximal element ``m = past_apex(a)``; the cut is ``b`` intersected
    with the causal past of ``m``. When that intersection would equal ``a``
    (only possible for a one-point ``a``) nothing strictly precedes ``a`` inside
    ``b`` and the cut is empty.
    """
    if not a:
        raise UndefinedPrecedenceError("cutting by the empty region is undefined")
    if not b:
        return EMPTY
    m = past_apex(a)
    clipped = []
    for blk in b.blocks:
        u_hi, v_hi = min(blk.u_hi, m.u), min(blk.v_hi, m.v)
        if blk.u_lo <= u_hi and blk.v_lo <= v_hi:
            clipped.append(Block(blk.u_lo, u_hi, blk.v_lo, v_hi))
    cut = Region(clipped)
    return EMPTY if cut == a else cut
