"""Inconsistent-edge sets, cycle merging, and orienting curves."""

import pytest

from surfcurve.constructions import inconsistent_edges, merge_to_simple_cycle, orienting_curve
from surfcurve.curves import ORIENTING, classify_by_cutting
from surfcurve.errors import DisconnectedSupport, OddVertexDegree, SurfaceOrientable
from surfcurve.surface import parse_srf

PROJECTIVE = "srf 1\nedges 1\nweight 1 1\nface +1 +1\n"
TORUS = "srf 1\nedges 2\nweight 1 1\nweight 2 1\nface +1 +2 -1 -2\n"
KLEIN = "srf 1\nedges 2\nweight 1 1\nweight 2 1\nface +1 +1 +2 +2\n"
N3 = "srf 1\nedges 3\n" + "".join(f"weight {i} 1\n" for i in (1, 2, 3)) + "face +1 +1 +2 +2 +3 +3\n"
SPHERE2 = "srf 1\nedges 2\nweight 1 1\nweight 2 1\nface +1 +2\nface -2 -1\n"


def test_inconsistent_edges_examples():
    assert inconsistent_edges(parse_srf(TORUS)).edges == set()
    assert inconsistent_edges(parse_srf(KLEIN)).edges == {1, 2}
    assert inconsistent_edges(parse_srf(PROJECTIVE)).edges == {1}
    assert inconsistent_edges(parse_srf(SPHERE2)).edges == set()


def test_inconsistent_edges_even_incidence():
    for text in (PROJECTIVE, KLEIN, N3):
        m = parse_srf(text)
        inc = inconsistent_edges(m)
        for v, c in inc.vertex_incidences().items():
            assert c % 2 == 0


def test_inconsistent_empty_iff_orientable():
    for text in (PROJECTIVE, TORUS, KLEIN, N3, SPHERE2):
        m = parse_srf(text)
        assert (not inconsistent_edges(m).edges) == m.is_orientable()


def test_merge_projective_double_crossing():
    m = parse_srf(PROJECTIVE)
    curve = merge_to_simple_cycle(m, {1: 2})
    assert curve.is_simple()
    assert curve.crossing_counts() == {1: 2}


def test_merge_klein_ones():
    m = parse_srf(KLEIN)
    curve = merge_to_simple_cycle(m, {1: 1, 2: 1})
    assert curve.is_simple()
    assert curve.crossing_counts() == {1: 1, 2: 1}


def test_merge_rejects_bad_mu():
    m = parse_srf(KLEIN)
    with pytest.raises(DisconnectedSupport):
        merge_to_simple_cycle(m, {})
    with pytest.raises(OddVertexDegree):
        # on the bigon sphere edge 1 joins two distinct vertices
        merge_to_simple_cycle(parse_srf(SPHERE2), {1: 1})


def test_merge_larger_mu():
    m = parse_srf(N3)
    curve = merge_to_simple_cycle(m, {1: 2, 2: 2, 3: 2})
    assert curve.is_simple()
    assert curve.crossing_counts() == {1: 2, 2: 2, 3: 2}


def test_orienting_curve_projective():
    c = orienting_curve(parse_srf(PROJECTIVE))
    assert c.is_simple()
    assert c.multiplicity() <= 2
    assert c.crossing_counts() == {1: 1}
    cls = classify_by_cutting(c.overlay, c.cid)
    assert cls.kind == ORIENTING
    assert cls.sided == "one-sided"  # genus 1 is odd


def test_orienting_curve_klein():
    c = orienting_curve(parse_srf(KLEIN))
    assert c.is_simple()
    assert c.multiplicity() <= 2
    assert c.crossing_counts() == {1: 1, 2: 1}
    cls = classify_by_cutting(c.overlay, c.cid)
    assert cls.kind == ORIENTING
    assert cls.sided == "two-sided"  # genus 2 is even


def test_orienting_curve_n3():
    c = orienting_curve(parse_srf(N3))
    assert c.is_simple()
    assert c.multiplicity() <= 2
    cls = classify_by_cutting(c.overlay, c.cid)
    assert cls.kind == ORIENTING
    assert cls.sided == "one-sided"


def test_orienting_curve_rejects_orientable():
    with pytest.raises(SurfaceOrientable):
        orienting_curve(parse_srf(TORUS))
