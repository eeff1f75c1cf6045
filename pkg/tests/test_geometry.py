from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hpcolor import geometry as g

rationals = st.fractions(
    min_value=-50, max_value=50, max_denominator=16
).map(lambda f: int(f) if f.denominator == 1 else f)
small_ints = st.integers(min_value=-100, max_value=100)
points = st.tuples(rationals, rationals)


def distinct_x_points(draw, n_min=1, n_max=12):
    xs = draw(
        st.lists(small_ints, min_size=n_min, max_size=n_max, unique=True)
    )
    ys = draw(st.lists(small_ints, min_size=len(xs), max_size=len(xs)))
    return [(x, y) for x, y in zip(xs, ys)]


point_sets = st.composite(distinct_x_points)()


def test_orientation_examples():
    assert g.orientation((0, 0), (1, 0), (0, 1)) == g.LEFT
    assert g.orientation((0, 0), (1, 0), (2, 0)) == g.COLLINEAR
    # determinant (1*1 - 1*2) = -1
    assert g.orientation((0, 0), (1, 1), (2, 1)) == g.RIGHT


@given(points, points, points)
def test_orientation_antisymmetry(p, q, r):
    assert g.orientation(p, q, r) == -g.orientation(p, r, q)


@given(points, points, points, rationals, rationals)
def test_orientation_translation_invariant(p, q, r, dx, dy):
    shift = lambda t: (t[0] + dx, t[1] + dy)
    assert g.orientation(p, q, r) == g.orientation(shift(p), shift(q), shift(r))


def test_side_of_line_examples():
    diag = g.Line(1, 0)  # y = x
    assert g.side_of_line((0, 5), diag) == g.ABOVE
    assert g.side_of_line((3, 3), diag) == g.ON
    # value of y = -x + 2 at x=1 is 1 > -2
    assert g.side_of_line((1, -2), g.Line(-1, 2)) == g.BELOW


def test_line_through_rejects_vertical():
    with pytest.raises(g.VerticalLineError):
        g.Line.through((1, 0), (1, 5))


def test_segments_intersect_examples():
    assert g.segments_intersect(((0, 0), (2, 2)), ((0, 2), (2, 0)))
    assert not g.segments_intersect(((0, 0), (1, 0)), ((2, 0), (3, 0)))
    # shared endpoint (1,1) lies on the first segment
    assert g.segments_intersect(((0, 0), (2, 2)), ((1, 1), (5, 0)))


def test_hull_examples():
    assert g.upper_hull([(0, 0)]).vertices == [(0, 0)]
    up = g.upper_hull([(-1, 0), (0, 10), (1, 0)])
    assert up.vertices == [(-1, 0), (0, 10), (1, 0)]
    lo = g.lower_hull([(-1, 0), (0, 10), (1, 0)])
    assert lo.vertices == [(-1, 0), (1, 0)]


def test_hull_duplicate_x_rejected():
    with pytest.raises(g.DuplicateXError):
        g.upper_hull([(0, 0), (0, 1), (2, 2)])


@given(point_sets)
def test_hull_reflection_duality(pts):
    up = g.upper_hull(pts).vertices
    lo = g.lower_hull([(x, -y) for x, y in pts]).vertices
    assert up == [(x, -y) for x, y in lo]


@given(point_sets)
def test_hulls_dominate_generators(pts):
    for chain in (g.upper_hull(pts), g.lower_hull(pts)):
        for w in pts:
            assert g.region_contains(chain, w)


def test_hull_layers_examples():
    layers = g.hull_layers([(-2, 0), (2, 0), (0, -1)], g.LOWER)
    assert len(layers.layers) == 1
    layers = g.hull_layers([(-2, 0), (2, 0), (1, 1), (0, -1)], g.LOWER)
    assert layers.layers[0].vertices == [(-2, 0), (0, -1), (2, 0)]
    assert layers.layers[1].vertices == [(1, 1)]


@given(point_sets)
def test_hull_layers_partition(pts):
    layers = g.hull_layers(pts, g.UPPER)
    seen = []
    for chain in layers.layers:
        seen.extend(chain.vertices)
    assert sorted(seen) == sorted(pts)
    assert set(layers.assignment) == set(pts)
    # peeling again reproduces layer i+1
    for i in range(len(layers.layers) - 1):
        rest = [p for p in pts if layers.assignment[p] > i]
        if rest:
            again = g.upper_hull(rest)
            assert again.vertices == layers.layers[i + 1].vertices


def test_chain_eval_examples():
    chain = g.HullChain(g.UPPER, [(-1, 0), (1, 2)])
    assert g.chain_eval(chain, 0) == 1
    single = g.HullChain(g.UPPER, [(0, 0)])
    assert g.chain_eval(single, 0) == 0
    apex = g.HullChain(g.UPPER, [(-1, 0), (0, 10), (1, 0)])
    assert g.chain_eval(apex, Fraction(1, 2)) == 5
    with pytest.raises(g.OutOfSpanError):
        g.chain_eval(chain, 5)


def test_region_contains_examples():
    upper = g.HullChain(g.UPPER, [(-1, 0), (1, 2)])
    assert g.region_contains(upper, (0, 0))  # boundary at 0 is 1 >= 0
    single = g.HullChain(g.LOWER, [(0, 0)])
    assert g.region_contains(single, (0, 5))  # on the upward ray
    assert not g.region_contains(single, (1, 5))  # outside x-span


def tangent_oracle(q, chain):
    """Brute force: the vertex whose q-line keeps all vertices region-side."""
    hits = []
    for v in chain.vertices:
        if v[0] == q[0]:
            continue
        ok = True
        for w in chain.vertices:
            s = g.point_above_line(w, q, v) if w != v else 0
            if chain.side == g.LOWER and s < 0:
                ok = False
            if chain.side == g.UPPER and s > 0:
                ok = False
        if ok:
            hits.append(v)
    return hits


def test_tangent_examples():
    # from (-2, 0) the line keeping [(0,1),(2,1)] weakly above must touch
    # the far vertex: through (0,1) the slope-1/2 line leaves (2,1) below
    chain = g.HullChain(g.LOWER, [(0, 1), (2, 1)])
    ln, touch = g.tangent_from_point((-2, 0), chain)
    assert touch == [(2, 1)]
    assert ln.slope == Fraction(1, 4)
    assert g.side_of_line((0, 1), ln) == g.ABOVE
    single = g.HullChain(g.LOWER, [(0, 0)])
    ln, touch = g.tangent_from_point((-1, -1), single)
    assert touch == [(0, 0)] and ln.slope == 1
    with pytest.raises(g.DegenerateTangentError):
        g.tangent_from_point((1, 100), chain)


@given(point_sets, points)
def test_tangent_property_against_scan(pts, q):
    for side in (g.UPPER, g.LOWER):
        chain = g.upper_hull(pts) if side == g.UPPER else g.lower_hull(pts)
        if g.region_contains(chain, q):
            continue
        if any(v[0] == q[0] for v in (chain.vertices[0], chain.vertices[-1])):
            continue
        ln, touch = g.tangent_from_point(q, chain)
        expected = tangent_oracle(q, chain)
        assert expected, "oracle must find a tangent vertex"
        assert touch[0] in expected
        # every chain vertex weakly on the region side of the line
        for w in chain.vertices:
            s = g.side_of_line(w, ln)
            assert s >= 0 if side == g.LOWER else s <= 0
        assert g.side_of_line(touch[0], ln) == g.ON


def test_point_in_triangle_examples():
    a, b, c = (0, 0), (3, 0), (0, 3)
    assert g.point_in_triangle_interior((1, 1), a, b, c)
    assert not g.point_in_triangle_interior((0, 0), a, b, c)
    # on the hypotenuse of (0,0),(2,0),(2,2): boundary excluded
    assert not g.point_in_triangle_interior((1, 1), (0, 0), (2, 0), (2, 2))
    with pytest.raises(g.DegenerateTriangleError):
        g.point_in_triangle_interior((1, 1), (0, 0), (1, 0), (2, 0))


@settings(max_examples=30)
@given(point_sets)
def test_second_layer_matches_hull_layers(pts):
    spts = sorted(pts)
    for side in (g.UPPER, g.LOWER):
        layers = g.hull_layers(spts, side)
        expect = layers.layers[1].vertices if len(layers.layers) > 1 else []
        assert g.second_layer(spts, side) == expect
