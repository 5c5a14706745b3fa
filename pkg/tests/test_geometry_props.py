"""Property tests for the exact geometry layer."""
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from icregion.composite import NONCOOPERATIVE, COOPERATIVE, DecodingChoice, Group
from icregion.composite.constraints import lifted_system
from icregion.corpus import entry
from icregion.geometry import (
    Polyhedron,
    VarId,
    contains_point,
    fme_eliminate,
    hull_of_union,
    lp_max,
    poly_equal,
    poly_subset,
    project_by_vertices,
    remove_redundant,
    vertices,
)
from icregion.geometry.inequality import canonical_row
from icregion.geometry.polyhedron import RegionUnion

from oracles import brute_vertices, feasible_with_fixed, random_bounded_system, sample_points
from suites import geometry_suite

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=6)


@settings(max_examples=200)
@given(st.lists(rationals, min_size=1, max_size=6), rationals)
def test_canonical_row_idempotent_and_scale_free(coeffs, rhs):
    c = canonical_row(coeffs, rhs)
    assert canonical_row(c[:-1], c[-1]) == c
    assert canonical_row([3 * x for x in coeffs], 3 * rhs) == c
    assert all(isinstance(x, int) for x in c)


@st.composite
def systems(draw):
    seed = draw(st.integers(0, 10 ** 9))
    return random_bounded_system(random.Random(seed), max_vars=draw(st.integers(2, 5)))


slow_ok = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@slow_ok
@given(systems(), st.data())
def test_fme_agrees_with_vertex_projection(p, data):
    keep_n = data.draw(st.integers(1, p.dim - 1))
    keep = data.draw(st.permutations(p.variables))[:keep_n]
    keep = [v for v in p.variables if v in keep]
    a = fme_eliminate(p, set(p.variables) - set(keep))
    b = project_by_vertices(p, keep)
    assert poly_equal(a, b)
    # irredundant output: dropping any row changes the set
    for r in a.rows:
        rest = Polyhedron(a.variables, [x for x in a.rows if x != r])
        assert not poly_equal(rest, a)


@slow_ok
@given(systems(), st.data())
def test_projection_membership_matches_lp_oracle(p, data):
    keep = [v for v in p.variables if v in data.draw(st.permutations(p.variables))[:2]]
    proj = fme_eliminate(p, set(p.variables) - set(keep))
    rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
    for pt in sample_points(rng, len(keep), vertices(proj), 20):
        assert contains_point(proj, pt) == feasible_with_fixed(p, keep, pt)


@slow_ok
@given(systems())
def test_remove_redundant_preserves_set(p):
    q = remove_redundant(p)
    assert poly_equal(p, q)
    assert remove_redundant(q) == q
    assert len(q.rows) <= len(p.rows)


@slow_ok
@given(systems())
def test_vertices_match_brute_force(p):
    assert set(vertices(p)) == brute_vertices([list(r) for r in p.rows], p.dim)


@slow_ok
@given(systems(), systems())
def test_hull_contains_members_and_is_minimal(p, q):
    if p.dim != q.dim:
        return
    q = Polyhedron(p.variables, q.rows)
    h = hull_of_union(RegionUnion([p, q]))
    for m in (p, q):
        if vertices(m):
            assert poly_subset(m, h)
    for v in vertices(h):
        assert v in set(vertices(p)) | set(vertices(q))


@slow_ok
@given(systems(), st.data())
def test_lp_optimum_attained_at_a_vertex(p, data):
    obj = {v: data.draw(st.integers(-3, 3)) for v in p.variables}
    res = lp_max(p, obj)
    verts = vertices(p)
    if not verts:
        assert res.status == "infeasible"
        return
    best = max(sum(obj[v] * x for v, x in zip(p.variables, pt)) for pt in verts)
    assert res.status == "optimal" and res.value == best
    assert contains_point(p, res.point)


def test_geometry_suite_small():
    stats = geometry_suite(seed=11, systems=8, points=30)
    assert stats["inside"] and stats["outside"]


def test_projection_keeps_facet_after_redundancy_removal():
    # Regression: ancestor-count pruning combined with LP redundancy removal
    # once lost the facet R1 <= 2 of this non-cooperative group system.
    inst = entry("eg4").instance
    g = Group(inst, (1, 2, 3, 4))
    d = DecodingChoice.of({1: {1, 2}, 2: {2}, 3: {3, 5}, 4: {4}, 5: {1, 5}})
    p, _ = lifted_system(g, d, NONCOOPERATIVE)
    keep = [g.rate_var(j) for j in g.receivers]
    proj = fme_eliminate(p, set(p.variables) - set(keep))
    assert lp_max(proj, {g.rate_var(1): 1}).value == lp_max(p, {g.rate_var(1): 1}).value == 2


def _corpus_group_systems():
    out = []
    eg2 = entry("eg2").instance
    for comp in (COOPERATIVE, NONCOOPERATIVE):
        g = Group(eg2, (1, 2))
        d = DecodingChoice.of({1: {1}, 2: {2, 4}, 3: {3, 4}, 4: {4}})
        out.append(pytest.param(g, d, comp, id=f"eg2-{comp}"))
    eg5 = entry("eg5").instance
    for senders in ((1, 2), (2, 3), (1, 3)):
        g = Group(eg5, senders)
        d = DecodingChoice.of({j: {j} for j in g.receivers})
        out.append(pytest.param(g, d, COOPERATIVE, id=f"eg5-{senders}"))
    return out


@pytest.mark.parametrize("g,d,comp", _corpus_group_systems())
def test_backends_agree_on_corpus_group_systems(g, d, comp):
    p, _ = lifted_system(g, d, comp)
    keep = [g.rate_var(j) for j in g.receivers]
    a = fme_eliminate(p, set(p.variables) - set(keep))
    b = project_by_vertices(p, keep)
    assert poly_equal(a, b)


def test_exactness_no_floats():
    p = Polyhedron([VarId.named("x")], [(3, 1)]).with_nonnegativity()
    res = lp_max(p, {VarId.named("x"): Fraction(1, 7)})
    assert res.value == Fraction(1, 21)
    assert isinstance(res.value, Fraction)
