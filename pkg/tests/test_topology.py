import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causaltop.errors import ResourceError, ValidationError
from causaltop.topology import (
    FiniteTopology,
    check_fip_compactness,
    de_groot_dual,
    discrete,
    dual_iteration,
    generate_from_closed_subbase,
    indiscrete,
    is_superconnected,
    is_T1,
    restrict,
    specialization,
)

fs = frozenset
SIERPINSKI = FiniteTopology([0, 1], [[], [0], [0, 1]])


def fixpoint_closure(ground, family):
    """Oracle: add pairwise unions and intersections until nothing changes."""
    fam = {fs(), fs(ground)} | {fs(s) for s in family}
    while True:
        new = fam | {a | b for a in fam for b in fam} | {a & b for a in fam for b in fam}
        if new == fam:
            return fam
        fam = new


def saturated_sets(t):
    """Oracle: all intersections of open sets (ground = empty intersection)."""
    sat = {fs(t.points)} | set(t.open_sets)
    while True:
        new = sat | {a & b for a in sat for b in sat}
        if new == sat:
            return sat
        sat = new


@st.composite
def subbases(draw, max_points=6, max_members=5):
    n = draw(st.integers(0, max_points))
    ground = list(range(n))
    members = draw(st.lists(st.sets(st.sampled_from(ground)) if ground else st.just(set()),
                            max_size=max_members))
    return ground, members


@st.composite
def topologies(draw, max_points=6):
    ground, members = draw(subbases(max_points))
    return generate_from_closed_subbase(ground, members)


class TestConstruction:
    def test_requires_lattice(self):
        with pytest.raises(ValidationError):
            FiniteTopology([1, 2, 3], [[], [1], [2], [1, 2, 3]])

    def test_requires_empty_and_ground(self):
        with pytest.raises(ValidationError):
            FiniteTopology([1, 2], [[1, 2]])

    def test_point_outside_ground(self):
        with pytest.raises(ValidationError):
            FiniteTopology([1], [[], [1], [2]])


class TestGenerate:
    def test_discrete(self):
        t = generate_from_closed_subbase([1, 2], [[1], [2]])
        assert t.closed_sets == {fs(), fs({1}), fs({2}), fs({1, 2})}

    def test_intersection_included(self):
        t = generate_from_closed_subbase([1, 2, 3], [[1, 2], [2, 3]])
        assert fs({2}) in t.closed_sets

    def test_indiscrete(self):
        t = generate_from_closed_subbase([1, 2, 3], [])
        assert t.closed_sets == {fs(), fs({1, 2, 3})}

    def test_member_outside_ground(self):
        with pytest.raises(ValidationError):
            generate_from_closed_subbase([1], [[1, 2]])

    @settings(max_examples=200, deadline=None)
    @given(subbases())
    def test_matches_fixpoint_oracle(self, data):
        ground, members = data
        assert generate_from_closed_subbase(ground, members).closed_sets == fixpoint_closure(ground, members)


class TestT1:
    def test_discrete(self):
        assert is_T1(discrete([1, 2]))

    def test_sierpinski(self):
        assert not is_T1(SIERPINSKI)

    def test_indiscrete(self):
        assert not is_T1(indiscrete([1, 2]))


class TestFipCompactness:
    @settings(max_examples=100, deadline=None)
    @given(subbases())
    def test_finite_spaces_pass(self, data):
        ground, members = data
        t = generate_from_closed_subbase(ground, members)
        assert check_fip_compactness(t, members)

    def test_disjoint_pair_passes_vacuously(self):
        t = discrete([1, 2])
        assert check_fip_compactness(t, [[1], [2]])

    def test_injected_counterexample(self):
        # pairwise intersecting, empty triple intersection: a judge that only
        # looks at pairs believes the family has f.i.p.
        ground = [1, 2, 3]
        sub = [[1, 2], [2, 3], [1, 3]]
        t = generate_from_closed_subbase(ground, sub)

        def pairwise_only(family):
            return all(a & b for a, b in itertools.combinations(family, 2))

        assert check_fip_compactness(t, sub)
        assert not check_fip_compactness(t, sub, fip=pairwise_only)

    def test_guard(self):
        with pytest.raises(ResourceError):
            check_fip_compactness(indiscrete([1]), [[1]] * 21)

    def test_subbase_must_generate(self):
        with pytest.raises(ValidationError):
            check_fip_compactness(discrete([1, 2]), [[1]])


class TestSpecialization:
    def test_discrete(self):
        spec = specialization(discrete([1, 2, 3]))
        assert spec.relation == {(x, x) for x in (1, 2, 3)}

    def test_sierpinski(self):
        spec = specialization(SIERPINSKI)
        assert spec.le(0, 1) and not spec.le(1, 0)

    def test_indiscrete(self):
        spec = specialization(indiscrete([1, 2]))
        assert spec.relation == {(a, b) for a in (1, 2) for b in (1, 2)}

    @settings(max_examples=100, deadline=None)
    @given(topologies())
    def test_preorder(self, t):
        spec = specialization(t)
        pts = t.points
        assert all(spec.le(x, x) for x in pts)
        for x, y, z in itertools.product(pts, repeat=3):
            if spec.le(x, y) and spec.le(y, z):
                assert spec.le(x, z)


class TestDeGroot:
    def test_discrete(self):
        t = discrete([1, 2, 3])
        assert de_groot_dual(t) == t

    def test_sierpinski(self):
        d = de_groot_dual(SIERPINSKI)
        assert d.closed_sets == {fs(), fs({1}), fs({0, 1})}
        assert de_groot_dual(d) == SIERPINSKI

    def test_indiscrete(self):
        t = indiscrete([1, 2, 3])
        assert de_groot_dual(t) == t

    @settings(max_examples=200, deadline=None)
    @given(topologies())
    def test_closed_sets_are_up_sets(self, t):
        spec = specialization(t)
        ups = {fs(s) for r in range(len(t.points) + 1)
               for s in itertools.combinations(t.points, r) if spec.is_up_set(s)}
        assert de_groot_dual(t).closed_sets == ups

    @settings(max_examples=200, deadline=None)
    @given(topologies())
    def test_matches_saturated_oracle(self, t):
        # every subset of a finite space is compact, so the closed base is the
        # family of saturated sets
        assert de_groot_dual(t).closed_sets == fixpoint_closure(t.points, saturated_sets(t))

    @settings(max_examples=200, deadline=None)
    @given(topologies())
    def test_triple_dual(self, t):
        g = de_groot_dual(t)
        assert de_groot_dual(de_groot_dual(g)) == g

    @settings(max_examples=200, deadline=None)
    @given(topologies())
    def test_double_dual_identity_on_finite_spaces(self, t):
        # finite spaces are Alexandrov: the dual is the opposite topology
        assert de_groot_dual(de_groot_dual(t)) == t


class TestIteration:
    def test_discrete(self):
        assert len(dual_iteration(discrete([1, 2]))) == 1

    def test_sierpinski(self):
        seq = dual_iteration(SIERPINSKI)
        assert seq == [SIERPINSKI, de_groot_dual(SIERPINSKI)]

    def test_min_steps(self):
        with pytest.raises(ValueError):
            dual_iteration(SIERPINSKI, max_steps=3)

    @settings(max_examples=200, deadline=None)
    @given(topologies())
    def test_at_most_four(self, t):
        assert len(dual_iteration(t)) <= 4


class TestSuperconnected:
    def test_indiscrete(self):
        assert is_superconnected(indiscrete([1, 2, 3]))

    def test_discrete(self):
        assert not is_superconnected(discrete([1, 2]))

    def test_sierpinski(self):
        assert is_superconnected(SIERPINSKI)


class TestRestrict:
    def test_identity(self):
        assert restrict(SIERPINSKI, [0, 1]) == SIERPINSKI

    def test_empty(self):
        r = restrict(SIERPINSKI, [])
        assert r.closed_sets == {fs()}

    def test_sierpinski_point(self):
        assert restrict(SIERPINSKI, [1]) == discrete([1])

    def test_outside(self):
        with pytest.raises(ValidationError):
            restrict(SIERPINSKI, [7])

    @settings(max_examples=100, deadline=None)
    @given(topologies(), st.data())
    def test_is_topology(self, t, data):
        sub = data.draw(st.sets(st.sampled_from(t.points)) if t.points else st.just(set()))
        r = restrict(t, sub)
        FiniteTopology(r.points, r.closed_sets)  # re-validates lattice invariants
