"""Core map machinery: gluing, genus, orientability, duality, cutting."""

from fractions import Fraction

import pytest

from surfcurve.errors import GluingError, NonPositiveWeight, ParseError
from surfcurve.surface import SurfaceMap, parse_srf

PROJECTIVE = "srf 1\nedges 1\nweight 1 1\nface +1 +1\n"
TORUS = "srf 1\nedges 2\nweight 1 1\nweight 2 1\nface +1 +2 -1 -2\n"
KLEIN = "srf 1\nedges 2\nweight 1 1\nweight 2 1\nface +1 +1 +2 +2\n"
SPHERE = "srf 1\nedges 1\nweight 1 1\nface +1 -1\n"
N3 = "srf 1\nedges 3\n" + "".join(f"weight {i} 1\n" for i in (1, 2, 3)) + "face +1 +1 +2 +2 +3 +3\n"


def test_projective_plane_counts():
    m = parse_srf(PROJECTIVE)
    assert (m.n_vertices, m.n_edges, m.n_faces) == (1, 1, 1)
    assert m.euler_characteristic() == 1
    assert m.euler_genus() == 1
    assert not m.is_orientable()


def test_torus_counts():
    m = parse_srf(TORUS)
    assert (m.n_vertices, m.n_edges, m.n_faces) == (1, 2, 1)
    assert m.euler_genus() == 2
    assert m.is_orientable()


def test_klein_bottle():
    m = parse_srf(KLEIN)
    assert m.euler_genus() == 2
    assert not m.is_orientable()


def test_sphere():
    m = parse_srf(SPHERE)
    assert m.euler_genus() == 0
    assert m.is_orientable()
    assert m.n_vertices == 2


def test_n3_genus():
    m = parse_srf(N3)
    assert m.euler_genus() == 3
    assert not m.is_orientable()


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_srf("edges 1\nweight 1 1\nface +1 +1\n")
    with pytest.raises(GluingError):
        parse_srf("srf 1\nedges 1\nweight 1 1\nface +1 +1 +1 -1\n")
    with pytest.raises(NonPositiveWeight):
        parse_srf("srf 1\nedges 1\nweight 1 0\nface +1 +1\n")
    with pytest.raises(ParseError):
        parse_srf("srf 1\nedges 1\nweight 1 1\nface\n")


def test_comments_and_fraction_weights():
    m = parse_srf("# hi\nsrf 1\nedges 1\nweight 1 0.5 # half\nface +1 +1\n")
    assert m.edge_weight[1] == Fraction(1, 2)


def test_dual_involution():
    for text in (PROJECTIVE, TORUS, KLEIN, SPHERE, N3):
        m = parse_srf(text)
        d = m.dual()
        assert d.n_vertices == m.n_faces
        assert d.n_faces == m.n_vertices
        assert d.euler_genus() == m.euler_genus()
        assert d.is_orientable() == m.is_orientable()
        dd = d.dual()
        assert dd.isomorphic_signature() == m.isomorphic_signature()


def test_dual_projective_self_dual():
    m = parse_srf(PROJECTIVE)
    d = m.dual()
    assert (d.n_vertices, d.n_edges, d.n_faces) == (1, 1, 1)


def test_cut_torus_along_one_edge():
    # cutting the torus square along edge 1 leaves a cylinder
    m = parse_srf(TORUS)
    res = m.cut_along_edges([1])
    assert res.component_count == 1
    assert res.boundary_count == 2
    assert res.is_orientable()
    assert res.chi_surface() == 0


def test_cut_projective_core():
    # the single edge of the projective plane is its core curve; cutting
    # along it yields a disk
    m = parse_srf(PROJECTIVE)
    res = m.cut_along_edges([1])
    assert res.component_count == 1
    assert res.boundary_count == 1
    assert res.is_orientable()
    assert res.chi_surface() == 1


def test_cut_sphere_along_arc_is_slit():
    # a single edge is an arc, not a closed curve: slitting keeps one disk
    m = parse_srf(SPHERE)
    res = m.cut_along_edges([1])
    assert res.component_count == 1
    assert res.boundary_count == 1
    assert res.chi_surface() == 1


def test_cut_sphere_along_equator_separates():
    # bigon sphere: two faces glued along a 2-cycle; the cycle separates
    text = "srf 1\nedges 2\nweight 1 1\nweight 2 1\nface +1 +2\nface -2 -1\n"
    m = parse_srf(text)
    assert m.euler_genus() == 0
    res = m.cut_along_edges([1, 2])
    assert res.component_count == 2
    assert res.boundary_count == 2


def test_cap_after_cut():
    m = parse_srf(PROJECTIVE)
    res = m.cut_along_edges([1])
    hole = res.boundary_components[0]
    capped = res.map.with_hole_capped(hole)
    assert capped.boundary_count() == 0
    assert capped.euler_genus() == 0  # disk capped = sphere


def test_srf_roundtrip():
    for text in (PROJECTIVE, TORUS, KLEIN, N3):
        m = parse_srf(text)
        m2 = parse_srf(m.to_srf())
        assert m2.isomorphic_signature() == m.isomorphic_signature()


def test_face_words_consistent():
    m = parse_srf(TORUS)
    w = m.face_word(0)
    ids = sorted(e for e, _ in w)
    assert ids == [1, 1, 2, 2]
    signs = {}
    for e, s in w:
        signs.setdefault(e, []).append(s)
    for e, ss in signs.items():
        assert sorted(ss) == [-1, 1]  # orientable gluing


def test_vertex_rotation_degree():
    m = parse_srf(TORUS)
    assert m.vertex_degree(0) == 4
    m = parse_srf(N3)
    assert sum(m.vertex_degree(v) for v in range(m.n_vertices)) == 2 * m.n_edges
