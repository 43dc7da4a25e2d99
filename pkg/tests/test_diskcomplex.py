import pytest
from hypothesis import given, settings, strategies as st

from almostnormal.curves import classify_curve, enumerate_curves, vertex_link
from almostnormal.diskcomplex import (
    CANCELING,
    COINCIDENT,
    DISJOINT,
    InvalidConfig,
    Status,
    TetClass,
    TetPieces,
    build_disk_complex,
    certify_almost_normal,
    classify_tet,
)
from almostnormal.surface import PieceRef, SurfaceConfig, TetCoords, TubeDescriptor, load_surface
from almostnormal.tetra import ALL_PERMS
from almostnormal.triangulation import load_triangulation

from conftest import FIXTURES

CURVES = enumerate_curves(24)
GRAPHS = {c: build_disk_complex(c) for c in CURVES}


def test_small_curves_give_empty_graphs():
    for c in CURVES:
        if c.length <= 4:
            assert GRAPHS[c].is_empty


def test_octagon_graph():
    for c in CURVES:
        if c.length != 8:
            continue
        g = GRAPHS[c]
        assert len(g.vertices) == 4
        assert {tag for _, _, tag in g.edges} == {COINCIDENT}
        assert g.component_count == 2
        for comp in g.components():
            assert len({g.vertices[i].side for i in comp}) == 1


def test_long_curves_give_connected_graphs():
    for c in CURVES:
        if c.length >= 12:
            g = GRAPHS[c]
            assert g.is_connected
            k = c.length // 4
            assert len(g.vertices) == 2 * 2 * (2 * k - 3)  # two tilts per parallel sub-edge


def test_edge_tags():
    for c, g in GRAPHS.items():
        for i, j, tag in g.edges:
            a, b = g.vertices[i], g.vertices[j]
            shared = set(a.endpoints()) & set(b.endpoints())
            if tag == CANCELING:
                assert a.side != b.side and len(shared) == 1
            elif tag == COINCIDENT:
                assert a.side == b.side and (a.edge, a.gap) == (b.edge, b.gap)
            else:
                assert tag == DISJOINT and not shared


def test_each_side_is_connected():
    for c, g in GRAPHS.items():
        for side in (0, 1):
            assert len(g.side_components(side)) == (0 if c.length <= 4 else 1)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([c for c in CURVES if c.length >= 8]), st.sampled_from(ALL_PERMS))
def test_relabelling(c, perm):
    g, h = GRAPHS[c], build_disk_complex(c.permuted(perm))
    assert len(g.vertices) == len(h.vertices)
    assert sorted(map(len, g.components())) == sorted(map(len, h.components()))
    assert sorted(tag for *_, tag in g.edges) == sorted(tag for *_, tag in h.edges)


def test_graph_output():
    c = next(c for c in CURVES if c.length == 8)
    g = GRAPHS[c]
    assert g.to_json()["components"] == [[0, 1], [2, 3]]
    assert g.to_text().splitlines()[-3] == "components 2"


def test_classify_tet():
    assert classify_tet(TetPieces.of(t=(1, 1, 1, 0), q=(1, 0, 0))) is TetClass.EMPTY
    assert classify_tet(TetPieces.of(t=(1, 1, 0, 0), o=(1, 0, 0))) is TetClass.DISCONNECTED
    twelve = next(c for c in CURVES if c.length == 12)
    assert classify_tet(TetPieces.of(disks=(twelve,))) is TetClass.CONNECTED
    eight = next(c for c in CURVES if c.length == 8)
    assert classify_tet(TetPieces.of(disks=(eight,))) is TetClass.DISCONNECTED
    tube = (PieceRef("t", 0), PieceRef("q", 0))
    assert classify_tet(TetPieces.of(t=(1, 0, 0, 0), q=(1, 0, 0), tube=tube)) is TetClass.DISCONNECTED
    assert classify_tet(TetPieces.of(t=(1, 0, 0, 0), o=(1, 0, 0), tube=(PieceRef("t", 0), PieceRef("o", 0)))) is (
        TetClass.CONNECTED
    )
    crossing_quad = next(c for c in CURVES if c.length == 4 and classify_curve(c).edge_pair == 1)
    with pytest.raises(InvalidConfig):
        classify_tet(TetPieces.of(q=(1, 1, 0)))
    with pytest.raises(InvalidConfig):
        classify_tet(TetPieces.of(o=(1, 0, 0), disks=(eight,)))
    with pytest.raises(InvalidConfig):
        classify_tet(TetPieces.of(q=(1, 0, 0), disks=(crossing_quad,)))
    assert classify_tet(TetPieces.of(q=(1, 0, 0), disks=(vertex_link(0), vertex_link(0)))) is TetClass.EMPTY


def load(tri, srf):
    T = load_triangulation(FIXTURES / tri)
    return T, load_surface(FIXTURES / srf, T.tet_count)


def test_certificates():
    for v in range(4):
        assert certify_almost_normal(*load("double.tri", f"double_link{v}.srf")).status is Status.NORMAL
    assert certify_almost_normal(*load("fixture_closed.tri", "closed_link.srf")).status is Status.NORMAL
    cert = certify_almost_normal(*load("fixture_closed.tri", "oct_surface.srf"))
    assert (cert.status, cert.exceptional_tet, cert.exceptional_kind) == (Status.ALMOST_NORMAL, 0, "Octagon")
    assert cert.classes.count(TetClass.DISCONNECTED) == 1
    cert = certify_almost_normal(*load("fixture_closed.tri", "bad.srf"))
    assert (cert.status, cert.reason) == (Status.REJECTED, "MultipleExceptionalTets")
    cert = certify_almost_normal(*load("disk12.tri", "disk12.srf"))
    assert (cert.status, cert.reason, cert.tet) == (Status.REJECTED, "LongDiskPresent", 0)
    cert = certify_almost_normal(*load("double.tri", "tube.srf"))
    assert (cert.status, cert.exceptional_kind) == (Status.ALMOST_NORMAL, "TubedAnnulus")


def test_rejections(double):
    cert = certify_almost_normal(double, SurfaceConfig((TetCoords(q=(1, 1, 0)), TetCoords())))
    assert (cert.reason, cert.tet) == ("QuadConditionViolated", 0)
    cert = certify_almost_normal(double, SurfaceConfig((TetCoords((1, 0, 0, 0)), TetCoords())))
    assert cert.reason == "MatchingFailure"
    both = SurfaceConfig((TetCoords((1, 0, 0, 0), o=(1, 0, 0)), TetCoords((1, 0, 0, 0), o=(1, 0, 0))))
    oversized = both.with_tube(TubeDescriptor(1, PieceRef("t", 0), PieceRef("o", 0)))
    cert = certify_almost_normal(double, oversized)
    assert (cert.reason, cert.tet) == ("OversizedTube", 1)
    blocked = SurfaceConfig((TetCoords((1, 0, 0, 0), (2, 0, 0)), TetCoords((1, 0, 0, 0), (2, 0, 0))))
    cert = certify_almost_normal(double, blocked.with_tube(TubeDescriptor(0, PieceRef("t", 0), PieceRef("q", 0, 1))))
    assert cert.reason == "InvalidTube"
