"""Finite causal sites, their axioms, cuttings and the topology they induce.

``validate_causal_site`` accepts anything that looks like a site: an
``elements`` sequence, a ``bottom``, and ``le``, ``precedes``, ``join`` and
``cutting`` callables. ``join`` and ``cutting`` may return values outside
``elements`` (the region site computes them geometrically); relations on such
values are evaluated through the callables.
"""

from __future__ import annotations

import itertools
from typing import Hashable, Iterable, NamedTuple

from ._order import canonical_key, canonical_sorted
from .errors import CuttingError, ValidationError
from .topology import (
    MAX_FIP_SUBBASE,
    FiniteTopology,
    check_fip_compactness,
    generate_from_closed_subbase,
    is_T1,
)


class Violation(NamedTuple):
    rule: str
    witness: tuple
    message: str = ""


def reflexive_transitive_closure(elements: Iterable[Hashable], pairs: Iterable[tuple]) -> frozenset:
    elems = list(elements)
    up = {x: {x} for x in elems}
    for a, b in pairs:
        up[a].add(b)
    changed = True
    while changed:
        changed = False
        for x in elems:
            reach = set().union(*(up[y] for y in up[x]))
            if reach != up[x]:
                up[x] = reach
                changed = True
    return frozenset((x, y) for x in elems for y in up[x])


def transitive_reduction(elements: Iterable[Hashable], leq: Iterable[tuple]) -> list:
    """Covering pairs of a partial order given as its full relation."""
    rel = set(leq)
    elems = canonical_sorted(set(elements))
    out = []
    for x in elems:
        for y in elems:
            if x == y or (x, y) not in rel:
                continue
            if not any(z not in (x, y) and (x, z) in rel and (z, y) in rel for z in elems):
                out.append((x, y))
    return out


class CausalSite:
    """Explicit finite causal site with relations given as sets of pairs.

    ``leq`` is taken as given (no closure is applied) so that malformed input
    can be validated; use ``reflexive_transitive_closure`` to expand a Hasse
    diagram first.
    """

    def __init__(self, elements: Iterable[Hashable], leq: Iterable[tuple], prec: Iterable[tuple], bottom: Hashable):
        self.elements = tuple(canonical_sorted(set(elements)))
        if bottom not in self.elements:
            raise ValidationError(f"bottom {bottom!r} is not an element")
        self.bottom = bottom
        self.leq = frozenset(map(tuple, leq))
        self.prec = frozenset(map(tuple, prec))
        known = set(self.elements)
        for x, y in itertools.chain(self.leq, self.prec):
            if x not in known or y not in known:
                raise ValidationError(f"relation pair ({x!r}, {y!r}) mentions a non-element")

    def le(self, a, b) -> bool:
        return (a, b) in self.leq

    def precedes(self, a, b) -> bool:
        return (a, b) in self.prec

    def up(self, a) -> frozenset:
        return frozenset(x for x in self.elements if (a, x) in self.leq)

    def down(self, a) -> frozenset:
        return frozenset(x for x in self.elements if (x, a) in self.leq)

    def join(self, a, b):
        """Least upper bound, or None when it does not exist."""
        ubs = self.up(a) & self.up(b)
        least = [j for j in canonical_sorted(ubs) if ubs <= self.up(j)]
        return least[0] if least else None

    def cutting(self, a, b, strict: bool = False):
        return find_cutting(self, a, b, strict=strict)

    def __eq__(self, other):
        if not isinstance(other, CausalSite):
            return NotImplemented
        return (self.elements, self.bottom, self.leq, self.prec) == (
            other.elements, other.bottom, other.leq, other.prec)

    def __hash__(self):
        return hash((self.elements, self.bottom, self.leq, self.prec))

    def __repr__(self):
        return f"CausalSite(elements={list(self.elements)!r}, bottom={self.bottom!r}, prec={sorted(self.prec, key=canonical_key)!r})"


def cutting_candidates(cs: CausalSite, a, b, strict: bool = False) -> list:
    """All elements satisfying both clauses of the cutting axiom for (a, b).

    With ``strict=False`` the bottom element counts as preceding ``a`` for this
    purpose, so an empty set of admissible parts yields the bottom as cutting.
    """
    if a == cs.bottom:
        raise ValidationError("cutting by the bottom element is undefined")
    below = [c for c in cs.elements if c != cs.bottom and cs.precedes(c, a) and cs.le(c, b)]
    pool = list(below) if strict else below + [cs.bottom]
    return [x for x in pool if all(cs.le(c, x) for c in below)]


def find_cutting(cs: CausalSite, a, b, strict: bool = False):
    found = cutting_candidates(cs, a, b, strict=strict)
    if not found:
        raise CuttingError(f"no cutting of {a!r} by {b!r}", witness=(a, b))
    return found[0]


def _mask_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def validate_causal_site(site, *, strict: bool = False) -> list:
    """Check order, bottom, joins, strict-order and axioms (i)-(iv).

    Returns a list of ``Violation``; empty iff the site passes.
    """
    elems = list(site.elements)
    n = len(elems)
    idx = {x: i for i, x in enumerate(elems)}
    bot = site.bottom
    b_i = idx[bot]
    report = []

    up = [0] * n
    down = [0] * n
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            if site.le(x, y):
                up[i] |= 1 << j
                down[j] |= 1 << i

    for i, x in enumerate(elems):
        if not up[i] >> i & 1:
            report.append(Violation("order-reflexive", (x,), f"{x!r} is not below itself"))
        for j in _mask_bits(up[i] & down[i]):
            if j > i:
                report.append(Violation("order-antisymmetric", (x, elems[j])))
        for j in _mask_bits(up[i]):
            missing = up[j] & ~up[i]
            if missing:
                k = next(_mask_bits(missing))
                report.append(Violation("order-transitive", (x, elems[j], elems[k])))
                break
        if not site.le(bot, x):
            report.append(Violation("bottom-least", (bot, x), f"bottom is not below {x!r}"))

    joins = {}
    for i, j in itertools.combinations(range(n), 2):
        a, b = elems[i], elems[j]
        jv = site.join(a, b)
        if jv is None:
            report.append(Violation("join-exists", (a, b), "no least upper bound"))
            continue
        joins[i, j] = jv
        if not (site.le(a, jv) and site.le(b, jv)):
            report.append(Violation("join-upper", (a, b, jv)))
            continue
        common = up[i] & up[j]
        k = idx.get(jv)
        bad = (common & ~up[k]) if k is not None else next(
            (1 << c for c in _mask_bits(common) if not site.le(jv, elems[c])), 0)
        if bad:
            report.append(Violation("join-least", (a, b, elems[next(_mask_bits(bad))])))

    p_out = [0] * n
    p_in = [0] * n
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            if site.precedes(x, y):
                if i == b_i or j == b_i:
                    report.append(Violation("prec-bottom", (x, y), "bottom takes part in precedence"))
                    continue
                p_out[i] |= 1 << j
                p_in[j] |= 1 << i
    nonbot = ((1 << n) - 1) & ~(1 << b_i)

    for i, x in enumerate(elems):
        if p_out[i] >> i & 1:
            report.append(Violation("prec-antireflexive", (x,), f"{x!r} precedes itself"))
        for j in _mask_bits(p_out[i]):
            missing = p_out[j] & ~p_out[i]
            if missing:
                report.append(Violation("prec-transitive", (x, elems[j], elems[next(_mask_bits(missing))])))
                break

    for ai, a in enumerate(elems):
        for bi in _mask_bits(down[ai] & nonbot):
            b = elems[bi]
            miss = p_out[ai] & ~p_out[bi]
            if miss:
                c = elems[next(_mask_bits(miss))]
                report.append(Violation("axiom-i", (b, a, c), f"{b!r} below {a!r} < {c!r} but not {b!r} < {c!r}"))
            miss = p_in[ai] & ~p_in[bi]
            if miss:
                c = elems[next(_mask_bits(miss))]
                report.append(Violation("axiom-ii", (b, a, c), f"{b!r} below {a!r}, {c!r} < {a!r} but not {c!r} < {b!r}"))

    for (i, j), jv in joins.items():
        common = p_out[i] & p_out[j]
        if not common:
            continue
        k = idx.get(jv)
        if k is not None:
            bad = common & ~p_out[k]
            cs_bad = [elems[c] for c in _mask_bits(bad)][:1]
        else:
            cs_bad = [elems[c] for c in _mask_bits(common) if not site.precedes(jv, elems[c])][:1]
        if cs_bad:
            report.append(Violation("axiom-iii", (elems[i], elems[j], cs_bad[0])))

    for ai, a in enumerate(elems):
        if ai == b_i:
            continue
        for bi, b in enumerate(elems):
            try:
                cut = site.cutting(a, b, strict=strict) if _accepts_strict(site) else site.cutting(a, b)
            except CuttingError:
                report.append(Violation("axiom-iv", (a, b), "no cutting exists"))
                continue
            k = idx.get(cut)
            if not site.le(cut, b):
                report.append(Violation("axiom-iv-a", (a, b, cut), "cutting not below b"))
            if not (site.precedes(cut, a) or (cut == bot and not strict)):
                report.append(Violation("axiom-iv-a", (a, b, cut), "cutting does not precede a"))
            parts = p_in[ai] & down[bi]
            if k is not None:
                bad = parts & ~down[k]
                bad_c = [elems[c] for c in _mask_bits(bad)][:1]
            else:
                bad_c = [elems[c] for c in _mask_bits(parts) if not site.le(elems[c], cut)][:1]
            if bad_c:
                report.append(Violation("axiom-iv-b", (a, b, bad_c[0]), "admissible part not below cutting"))
    return report


def _accepts_strict(site) -> bool:
    return isinstance(site, CausalSite)


def is_centered(cs: CausalSite, family: Iterable[Hashable]) -> bool:
    """Finite family: some non-bottom element lies below every member."""
    fam = frozenset(family)
    return any(y != cs.bottom and all(cs.le(y, x) for x in fam) for y in cs.elements)


def maximal_centered_families(cs: CausalSite) -> list:
    """Inclusion-maximal sets ``up(y) - {bottom}`` over non-bottom ``y``.

    A finite family is centered exactly when it sits inside such an up-set, so
    these are the maximal centered families. Sorted canonically.
    """
    ups = {cs.up(y) - {cs.bottom} for y in cs.elements if y != cs.bottom}
    maximal = [u for u in ups if not any(u < w for w in ups)]
    return canonical_sorted(maximal)


def closed_subbase(cs: CausalSite, ground: list | None = None) -> list:
    """Distinct sets ``{F in ground : x in F}`` over elements ``x``, canonically sorted."""
    if ground is None:
        ground = maximal_centered_families(cs)
    return canonical_sorted({frozenset(U for U in ground if x in U) for x in cs.elements})


def synthesize_topology(cs: CausalSite) -> FiniteTopology:
    """Space of maximal centered families with the closed subbase from ``closed_subbase``.

    The result is checked to be T1 and (when the subbase is small enough for an
    exhaustive check) compact in the Alexander-subbase sense.
    """
    ground = maximal_centered_families(cs)
    subbase = closed_subbase(cs, ground)
    t = generate_from_closed_subbase(ground, subbase)
    if not is_T1(t):
        raise AssertionError("synthesized topology is not T1")
    if len(subbase) <= MAX_FIP_SUBBASE and not check_fip_compactness(t, subbase):
        raise AssertionError("synthesized topology failed the subbase compactness check")
    return t
