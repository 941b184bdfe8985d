"""Seeded random instances for property suites and the CLI."""

from __future__ import annotations

import random
from fractions import Fraction

from .framework import Framework
from .minkowski import MinkVec
from .region import Block, NullPoint, Region
from .site import CausalSite
from .topology import FiniteTopology, generate_from_closed_subbase


def random_subset(rng: random.Random, pool, p: float = 0.5) -> frozenset:
    return frozenset(x for x in pool if rng.random() < p)


def random_framework(rng: random.Random, max_places: int = 8, max_members: int = 8) -> Framework:
    places = list(range(rng.randint(0, max_places)))
    k = rng.randint(0, max_members)
    return Framework(places, [random_subset(rng, places, rng.random()) for _ in range(k)])


def random_topology(rng: random.Random, max_points: int = 7, max_subbase: int = 6) -> FiniteTopology:
    ground = list(range(rng.randint(0, max_points)))
    subbase = [random_subset(rng, ground, rng.random()) for _ in range(rng.randint(0, max_subbase))]
    return generate_from_closed_subbase(ground, subbase)


def _saturate(elements, leq, bottom, prec):
    """Close a precedence relation under axioms (i)-(iii) and transitivity."""
    prec = set(prec)
    nonbot = [e for e in elements if e != bottom]
    while True:
        new = set(prec)
        for a, c in prec:
            for b in nonbot:
                if (b, a) in leq:
                    new.add((b, c))
                if (b, c) in leq:
                    new.add((a, b))
            for c2 in nonbot:
                if (c, c2) in prec:
                    new.add((a, c2))
        for c in nonbot:
            preds = [a for a in nonbot if (a, c) in new]
            for i, a in enumerate(preds):
                for b in preds[i + 1:]:
                    new.add((a | b, c))
        if new == prec:
            return prec
        prec = new


def random_causal_site(rng: random.Random, max_elements: int = 10, universe: int = 5,
                       density: float = 0.5) -> CausalSite:
    """Sublattice of a small powerset (elements are bitmask ints, bottom 0)
    with a precedence relation saturated under axioms (i)-(iii).

    Seed pairs that would force a reflexive pair are dropped; cuttings then
    exist automatically since admissible parts are closed under joins.
    """
    while True:
        elems = {0}
        for _ in range(rng.randint(1, max_elements)):
            bits = sum(1 << i for i in range(universe) if rng.random() < 0.3)
            elems.add(bits or 1 << rng.randrange(universe))
        closed = set(elems)
        while True:
            more = {a | b for a in closed for b in closed} - closed
            if not more:
                break
            closed |= more
        if len(closed) <= max_elements:
            break
    elements = sorted(closed)
    leq = {(a, b) for a in elements for b in elements if a & b == a}
    nonbot = [e for e in elements if e]
    pairs = [(a, c) for a in nonbot for c in nonbot if a != c]
    rng.shuffle(pairs)
    prec: set = set()
    for pair in pairs:
        if rng.random() >= density or pair in prec:
            continue
        trial = _saturate(elements, leq, 0, prec | {pair})
        if all(a != c for a, c in trial):
            prec = trial
    return CausalSite(elements, leq, prec, 0)


def random_rational(rng: random.Random, lo: int, hi: int, dens=(1, 2, 3, 4)) -> Fraction:
    d = rng.choice(dens)
    return Fraction(rng.randint(lo * d, hi * d), d)


def random_vector(rng: random.Random, dim: int, lo: int = -5, hi: int = 5) -> MinkVec:
    return MinkVec(tuple(random_rational(rng, lo, hi, (1, 2, 3, 5, 7)) for _ in range(dim)))


def random_causal_vector(rng: random.Random, dim: int) -> MinkVec:
    """Random vector in the closed future cone of the origin, often on its boundary."""
    space = [random_rational(rng, -4, 4, (1, 2, 3, 5)) for _ in range(dim - 1)]
    # t >= |space|: choose t as a rational upper bound of the Euclidean norm
    n2 = sum(s * s for s in space)
    t = Fraction(0)
    while t * t < n2:
        t += Fraction(1, rng.choice((1, 2, 4)))
    if rng.random() < 0.5:
        t += random_rational(rng, 0, 3)
    if dim == 2 and rng.random() < 0.3:
        t = abs(space[0])  # exactly null
    return MinkVec((t, *space))


def random_block(rng: random.Random, span: int = 6, size: int = 3) -> Block:
    u = random_rational(rng, 0, span)
    v = random_rational(rng, 0, span)
    return Block(u, u + random_rational(rng, 0, size), v, v + random_rational(rng, 0, size))


def random_region(rng: random.Random, max_blocks: int = 3, span: int = 6, size: int = 3) -> Region:
    return Region(random_block(rng, span, size) for _ in range(rng.randint(0, max_blocks)))


def random_diamond_sample(rng: random.Random, max_diamonds: int = 6) -> list:
    return [Region([random_block(rng)]) for _ in range(rng.randint(1, max_diamonds))]


def random_null_point(rng: random.Random, span: int = 6) -> NullPoint:
    return NullPoint(random_rational(rng, 0, span, (1, 2, 3, 4, 5)), random_rational(rng, 0, span, (1, 2, 3, 4, 5)))


def random_dyadic_point(rng: random.Random, window: Block, max_level: int = 5) -> NullPoint:
    k = 1 << rng.randint(0, max_level)
    i, j = rng.randint(0, k), rng.randint(0, k)
    du = (window.u_hi - window.u_lo) / k
    dv = (window.v_hi - window.v_lo) / k
    return NullPoint(window.u_lo + i * du, window.v_lo + j * dv)
