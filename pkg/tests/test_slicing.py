"""Hyperplane cross-sections: oracle equivalence, topology, provenance."""

import itertools
import math

import numpy as np
import pytest

from pentaslice.polytope import regular_pentachoron, transform
from pentaslice.rotation import PlaneId, Rotation4, compose, simple_rotation
from pentaslice.slicing import (
    DegenerateSlice,
    Hyperplane,
    ParallelEdge,
    VertexSign,
    classify_vertex,
    euler_characteristic,
    intersect_edge,
    slice_polychoron,
)

EPS = 1e-9 * 2.0  # slice tolerance for the edge-length-2 pentachoron


def random_orientation(rng) -> Rotation4:
    q = Rotation4.identity()
    for _ in range(6):
        plane = list(PlaneId)[rng.integers(0, 6)]
        q = compose(simple_rotation(plane, rng.uniform(0, 2 * math.pi)), q)
    return q


def brute_force_cut_points(p, c0: float) -> np.ndarray:
    # Independent oracle: cross-multiplied interpolation over all edges,
    # never sharing the t-form code path under test.
    points = []
    for i, j in p.edges:
        si = p.vertices[i, 3] - c0
        sj = p.vertices[j, 3] - c0
        if si * sj < 0.0:
            points.append((sj * p.vertices[i, :3] - si * p.vertices[j, :3]) / (sj - si))
    return np.array(points) if points else np.zeros((0, 3))


def match_vertex_sets(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    if len(a) != len(b):
        return False
    if len(a) == 0:
        return True
    d = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=2)
    used = set()
    for row in d:
        candidates = [k for k in np.argsort(row) if k not in used and row[k] <= tol]
        if not candidates:
            return False
        used.add(candidates[0])
    return True


def test_classify_on_within_eps():
    assert classify_vertex(0.0, 0.0, 1e-9) is VertexSign.ON
    assert classify_vertex(1e-9, 0.0, 1e-9) is VertexSign.ON
    assert classify_vertex(-1e-9, 0.0, 1e-9) is VertexSign.ON


def test_classify_pentachoron_base_and_apex():
    assert classify_vertex(-1.0 / math.sqrt(10.0), 0.0, 1e-9) is VertexSign.BELOW
    assert classify_vertex(4.0 / math.sqrt(10.0), 0.0, 1e-9) is VertexSign.ABOVE


def test_classify_rejects_nonpositive_eps():
    with pytest.raises(ValueError):
        classify_vertex(0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        classify_vertex(0.0, 0.0, -1e-9)


def test_intersect_symmetric_edge_at_midpoint():
    point, t = intersect_edge([0, 0, 0, -1], [0, 0, 0, 1], 0.0)
    assert t == 0.5
    np.testing.assert_array_equal(point, [0.0, 0.0, 0.0])


def test_intersect_apex_to_base_edge():
    # Walking from the apex down to the first vertex, the w=0 crossing
    # sits 0.8 of the way: t = (0 - 4/sqrt(10)) / (-1/sqrt(10) - 4/sqrt(10)).
    p = regular_pentachoron(2.0)
    point, t = intersect_edge(p.vertices[4], p.vertices[0], 0.0)
    assert abs(t - 0.8) < 1e-15
    expected = np.array([-0.8, -0.8 / math.sqrt(3.0), -0.8 / math.sqrt(6.0)])
    np.testing.assert_allclose(point, expected, atol=1e-15)


def test_intersection_lands_on_hyperplane():
    rng = np.random.default_rng(31)
    for _ in range(200):
        p = rng.uniform(-5, 5, size=4)
        q = rng.uniform(-5, 5, size=4)
        c0 = rng.uniform(min(p[3], q[3]), max(p[3], q[3]))
        if (p[3] - c0) * (q[3] - c0) >= 0.0:
            continue
        _, t = intersect_edge(p, q, c0)
        assert 0.0 < t < 1.0
        w = p[3] + t * (q[3] - p[3])
        assert abs(w - c0) <= 1e-12


def test_parallel_edge_rejected():
    with pytest.raises(ParallelEdge):
        intersect_edge([0, 0, 0, 1], [1, 1, 1, 1], 0.5)


def test_unrotated_slice_is_regular_tetrahedron():
    p = regular_pentachoron(2.0)
    mesh = slice_polychoron(p, Hyperplane(0.0), EPS)
    assert len(mesh.vertices) == 4
    assert len(mesh.edges) == 6
    assert len(mesh.faces) == 4
    lengths = np.array(
        [np.linalg.norm(mesh.vertices[i] - mesh.vertices[j]) for i, j in mesh.edges]
    )
    assert np.all(np.abs(lengths - 1.6) < 1e-12)
    assert euler_characteristic(mesh) == 2
    # All cut edges run from the apex, which sits 0.8 of each edge's
    # length above the hyperplane.
    for t in mesh.vertex_params:
        assert abs(t - 0.8) < 1e-12 or abs(t - 0.2) < 1e-12


def test_slice_above_polytope_is_empty():
    p = regular_pentachoron(2.0)
    mesh = slice_polychoron(p, Hyperplane(2.0), EPS)
    assert mesh.is_empty
    assert euler_characteristic(mesh) == 0
    assert len(mesh.edges) == 0 and len(mesh.faces) == 0


def test_slice_below_polytope_is_empty():
    p = regular_pentachoron(2.0)
    assert slice_polychoron(p, Hyperplane(-2.0), EPS).is_empty


def test_slice_through_vertex_is_degenerate():
    p = regular_pentachoron(2.0)
    with pytest.raises(DegenerateSlice):
        slice_polychoron(p, Hyperplane(4.0 / math.sqrt(10.0)), EPS)
    with pytest.raises(DegenerateSlice):
        slice_polychoron(p, Hyperplane(-1.0 / math.sqrt(10.0)), EPS)


def test_large_eps_forces_degeneracy():
    p = regular_pentachoron(2.0)
    with pytest.raises(DegenerateSlice):
        slice_polychoron(p, Hyperplane(0.0), eps=2.0)


def test_rotated_slice_keeps_euler_two():
    p = transform(regular_pentachoron(2.0), simple_rotation(PlaneId.XW, math.pi / 16))
    mesh = slice_polychoron(p, Hyperplane(0.0), EPS)
    assert not mesh.is_empty
    assert euler_characteristic(mesh) == 2


def face_planarity_deviation(mesh, face) -> float:
    pts = mesh.vertices[list(face)]
    center = pts.mean(axis=0)
    normal = np.zeros(3)
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        normal[0] += (a[1] - b[1]) * (a[2] + b[2])
        normal[1] += (a[2] - b[2]) * (a[0] + b[0])
        normal[2] += (a[0] - b[0]) * (a[1] + b[1])
    normal /= np.linalg.norm(normal)
    return float(np.abs((pts - center) @ normal).max())


def face_is_convex(mesh, face) -> bool:
    pts = mesh.vertices[list(face)]
    n = len(pts)
    if n == 3:
        return True
    reference = None
    for i in range(n):
        a = pts[(i + 1) % n] - pts[i]
        b = pts[(i + 2) % n] - pts[(i + 1) % n]
        cross = np.cross(a, b)
        if reference is None:
            reference = cross
        elif float(np.dot(reference, cross)) < 0.0:
            return False
    return True


def test_two_vs_three_split_yields_quads():
    # R_xw(2.0) puts two vertices below w=0 and three above; the three
    # cells mixing both below-vertices with two above-vertices cut as
    # planar quadrilaterals, the other two as triangles.
    p = transform(regular_pentachoron(2.0), simple_rotation(PlaneId.XW, 2.0))
    mesh = slice_polychoron(p, Hyperplane(0.0), EPS)
    assert len(mesh.vertices) == 6
    assert len(mesh.edges) == 9
    assert len(mesh.faces) == 5
    assert sorted(len(f) for f in mesh.faces) == [3, 3, 4, 4, 4]
    assert euler_characteristic(mesh) == 2
    for face in mesh.faces:
        assert face_planarity_deviation(mesh, face) < 1e-9 * 2.0
        assert face_is_convex(mesh, face)


def test_face_normals_point_away_from_centroid():
    rng = np.random.default_rng(41)
    checked = 0
    while checked < 20:
        p = transform(regular_pentachoron(2.0), random_orientation(rng))
        c0 = rng.uniform(-1.0, 1.0)
        try:
            mesh = slice_polychoron(p, Hyperplane(c0), EPS)
        except DegenerateSlice:
            continue
        if mesh.is_empty:
            continue
        centroid = mesh.vertices.mean(axis=0)
        for face in mesh.faces:
            pts = mesh.vertices[list(face)]
            normal = np.zeros(3)
            n = len(pts)
            for i in range(n):
                a, b = pts[i], pts[(i + 1) % n]
                normal[0] += (a[1] - b[1]) * (a[2] + b[2])
                normal[1] += (a[2] - b[2]) * (a[0] + b[0])
                normal[2] += (a[0] - b[0]) * (a[1] + b[1])
            outward = pts.mean(axis=0) - centroid
            assert float(np.dot(normal, outward)) > 0.0
        checked += 1


def test_vertex_set_matches_brute_force_oracle():
    rng = np.random.default_rng(47)
    base = regular_pentachoron(2.0)
    w0 = math.sqrt(2.0 / 5.0) * 2.0
    checked = 0
    while checked < 100:
        p = transform(base, random_orientation(rng))
        c0 = rng.uniform(-w0, w0)
        try:
            mesh = slice_polychoron(p, Hyperplane(c0), EPS)
        except DegenerateSlice:
            continue
        expected = brute_force_cut_points(p, c0)
        assert match_vertex_sets(mesh.vertices, expected, 1e-9)
        if not mesh.is_empty:
            assert euler_characteristic(mesh) == 2
        checked += 1


def test_mesh_has_no_volume_elements():
    mesh = slice_polychoron(regular_pentachoron(2.0), Hyperplane(0.0), EPS)
    assert set(vars(mesh)) == {
        "vertices",
        "vertex_source_edges",
        "vertex_params",
        "edges",
        "edge_source_faces",
        "faces",
        "face_source_cells",
    }


def test_cut_count_parity_per_cell():
    rng = np.random.default_rng(53)
    base = regular_pentachoron(2.0)
    checked = 0
    while checked < 50:
        p = transform(base, random_orientation(rng))
        c0 = rng.uniform(-1.2, 1.2)
        try:
            mesh = slice_polychoron(p, Hyperplane(c0), EPS)
        except DegenerateSlice:
            continue
        for cell_faces, cell_vertices in zip(
            p.cells, itertools.combinations(range(5), 4)
        ):
            cell_vertex_set = set(cell_vertices)
            cut = sum(
                1
                for ei in mesh.vertex_source_edges
                if set(p.edges[ei]) <= cell_vertex_set
            )
            assert cut in (0, 3, 4)
        checked += 1


def test_provenance_completeness():
    rng = np.random.default_rng(59)
    base = regular_pentachoron(2.0)
    checked = 0
    while checked < 25:
        p = transform(base, random_orientation(rng))
        c0 = rng.uniform(-1.0, 1.0)
        try:
            mesh = slice_polychoron(p, Hyperplane(c0), EPS)
        except DegenerateSlice:
            continue
        if mesh.is_empty:
            continue

        for ei, t in zip(mesh.vertex_source_edges, mesh.vertex_params):
            i, j = p.edges[ei]
            assert (p.vertices[i, 3] - c0) * (p.vertices[j, 3] - c0) < 0.0
            assert 0.0 < t < 1.0

        for (mi, mj), fi in zip(mesh.edges, mesh.edge_source_faces):
            loop = p.faces[fi]
            boundary = {
                frozenset((loop[k], loop[(k + 1) % len(loop)]))
                for k in range(len(loop))
            }
            for mv in (mi, mj):
                source = frozenset(p.edges[mesh.vertex_source_edges[mv]])
                assert source in boundary

        for face, ci in zip(mesh.faces, mesh.face_source_cells):
            cell_vertices = set()
            for fi in p.cells[ci]:
                cell_vertices.update(p.faces[fi])
            for mv in face:
                source = set(p.edges[mesh.vertex_source_edges[mv]])
                assert source <= cell_vertices
        checked += 1


def test_nearby_hyperplanes_give_nearby_meshes():
    rng = np.random.default_rng(61)
    base = regular_pentachoron(2.0)
    checked = 0
    while checked < 50:
        p = transform(base, random_orientation(rng))
        c0 = rng.uniform(-1.0, 1.0)
        # Keep every vertex clearly off both hyperplanes so the two
        # slices share one combinatorial type and no cut edge is close
        # to tangent.
        if np.abs(p.vertices[:, 3] - c0).min() < 1e-3:
            continue
        a = slice_polychoron(p, Hyperplane(c0), EPS)
        b = slice_polychoron(p, Hyperplane(c0 + 1e-9), EPS)
        assert a.vertex_source_edges == b.vertex_source_edges
        if not a.is_empty:
            motion = np.linalg.norm(a.vertices - b.vertices, axis=1).max()
            assert motion <= 1e-6 * 2.0
        checked += 1


def test_empty_mesh_counts():
    mesh = slice_polychoron(regular_pentachoron(2.0), Hyperplane(1.9), EPS)
    assert mesh.is_empty
    assert mesh.vertices.shape == (0, 3)
    assert mesh.vertex_source_edges == ()
    assert mesh.vertex_params == ()
