import xml.etree.ElementTree as ET

import numpy as np
import pytest
from scipy.linalg import orthogonal_procrustes
from scipy.sparse.csgraph import minimum_spanning_tree

from abdkit.analysis import (
    Dendrogram,
    DistanceMatrix,
    classical_mds,
    cluster_purity,
    cut_clusters,
    dendrogram_to_newick,
    distance_matrix,
    embedding_to_csv,
    export,
    load_distance_csv,
    single_linkage,
)
from abdkit.fixtures import graph_counterexample
from abdkit.synth import convex_polygon, star


def dm(labels, rows):
    return DistanceMatrix(list(labels), np.array(rows, dtype=float))


# ---------------------------------------------------------------------------
# distance_matrix
# ---------------------------------------------------------------------------

def test_matrix_self_pair(rng):
    g = star(rng)
    out = distance_matrix([g, g], n_frames=3)
    assert np.array_equal(out.d, np.zeros((2, 2)))


def test_matrix_convex_polygons_all_zero(rng):
    polys = [convex_polygon(rng, k) for k in (5, 7, 9)]
    out = distance_matrix(polys, n_frames=4)
    assert np.array_equal(out.d, np.zeros((3, 3)))


def test_matrix_graph_triple_values():
    g, h, j = graph_counterexample()
    out = distance_matrix([g, h, j], n_frames=1, labels=["g", "h", "j"])
    assert out.d[0, 1] == 6.5
    assert out.d[0, 2] == 2.5
    assert out.d[1, 2] == 3.0
    assert np.array_equal(out.d, out.d.T)


def test_matrix_permutation_equivariance():
    g, h, j = graph_counterexample()
    a = distance_matrix([g, h, j], n_frames=1)
    b = distance_matrix([j, g, h], n_frames=1)
    perm = [2, 0, 1]  # position of [j, g, h] items inside [g, h, j]
    for r in range(3):
        for c in range(3):
            assert b.d[r, c] == a.d[perm[r], perm[c]]


def test_matrix_jobs_parallel_matches_serial():
    g, h, j = graph_counterexample()
    a = distance_matrix([g, h, j], n_frames=2, jobs=1)
    b = distance_matrix([g, h, j], n_frames=2, jobs=2)
    assert np.array_equal(a.d, b.d)


def test_matrix_needs_two_graphs(rng):
    with pytest.raises(ValueError):
        distance_matrix([star(rng)])


def test_matrix_validation():
    with pytest.raises(ValueError, match="symmetric"):
        dm(["a", "b"], [[0, 1], [2, 0]])
    with pytest.raises(ValueError, match="diagonal"):
        dm(["a", "b"], [[1, 1], [1, 0]])
    with pytest.raises(ValueError, match="negative"):
        dm(["a", "b"], [[0, -1], [-1, 0]])


# ---------------------------------------------------------------------------
# single linkage + cuts
# ---------------------------------------------------------------------------

def test_single_linkage_two_points():
    dend = single_linkage(dm(["a", "b"], [[0, 1], [1, 0]]))
    assert dend.merges == [(0, 1, 1.0, 2)]


def test_single_linkage_three_point_trace():
    d = dm(["a", "b", "c"], [[0, 1, 5], [1, 0, 4], [5, 4, 0]])
    dend = single_linkage(d)
    assert [m[2] for m in dend.merges] == [1.0, 4.0]
    assert dend.merges[0][:2] == (0, 1)
    assert cut_clusters(dend, 2) == [0, 0, 1]


def test_single_linkage_all_zero():
    dend = single_linkage(dm(list("abc"), np.zeros((3, 3))))
    assert [m[2] for m in dend.merges] == [0.0, 0.0]


def test_single_linkage_heights_match_mst(rng):
    for _ in range(10):
        n = int(rng.integers(3, 9))
        m = rng.uniform(0.1, 5.0, (n, n))
        m = np.triu(m, 1)
        m = m + m.T
        d = dm([f"x{i}" for i in range(n)], m)
        dend = single_linkage(d)
        heights = sorted(step[2] for step in dend.merges)
        mst = minimum_spanning_tree(m).toarray()
        mst_weights = sorted(mst[mst > 0])
        assert heights == pytest.approx(mst_weights)


def test_cut_clusters_edges():
    dend = single_linkage(dm(["a", "b"], [[0, 2], [2, 0]]))
    assert cut_clusters(dend, 2) == [0, 1]
    assert cut_clusters(dend, 1) == [0, 0]
    with pytest.raises(ValueError):
        cut_clusters(dend, 3)
    with pytest.raises(ValueError):
        cut_clusters(dend, 0)


def test_cluster_purity():
    assert cluster_purity([0, 0, 1, 1], ["a", "a", "b", "b"]) == 1.0
    assert cluster_purity([0, 0, 0, 0], ["a", "a", "b", "b"]) == 0.5


# ---------------------------------------------------------------------------
# classical MDS
# ---------------------------------------------------------------------------

def test_mds_all_zero():
    emb = classical_mds(dm(list("abc"), np.zeros((3, 3))), k=2)
    assert np.allclose(emb.coords, 0.0)


def test_mds_collinear_points():
    # points 0, 1, 2 on a line
    d = dm(list("abc"), [[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    emb = classical_mds(d, k=2)
    for i in range(3):
        for j in range(3):
            dist = np.linalg.norm(emb.coords[i] - emb.coords[j])
            assert dist == pytest.approx(d.d[i, j], abs=1e-9)


def test_mds_recovers_planar_configuration(rng):
    for _ in range(5):
        n = int(rng.integers(4, 9))
        pts = rng.uniform(-3, 3, (n, 2))
        d = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
        emb = classical_mds(dm([f"p{i}" for i in range(n)], d), k=2)
        # embedded pairwise distances reproduce the input
        dd = np.linalg.norm(emb.coords[:, None, :] - emb.coords[None, :, :], axis=2)
        assert np.allclose(dd, d, atol=1e-8)
        # and the configuration matches up to rigid motion
        centered = pts - pts.mean(axis=0)
        rot, _ = orthogonal_procrustes(emb.coords, centered)
        residual = np.linalg.norm(emb.coords @ rot - centered)
        assert residual < 1e-6


def test_mds_clamps_negative_eigenvalues():
    # a non-metric matrix (violates the triangle inequality badly)
    d = dm(list("abc"), [[0, 10, 1], [10, 0, 1], [1, 1, 0]])
    emb = classical_mds(d, k=2)
    assert emb.n_clamped >= 1
    assert np.all(np.isfinite(emb.coords))


def test_mds_column_centered_and_sign_fixed(rng):
    n = 6
    pts = rng.uniform(-2, 2, (n, 2))
    d = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
    emb = classical_mds(dm([f"p{i}" for i in range(n)], d), k=2)
    assert np.allclose(emb.coords.mean(axis=0), 0.0, atol=1e-9)
    for col in range(2):
        nz = np.nonzero(np.abs(emb.coords[:, col]) > 1e-12)[0]
        if nz.size:
            assert emb.coords[nz[0], col] > 0


def test_mds_k_too_large():
    with pytest.raises(ValueError):
        classical_mds(dm(["a", "b"], [[0, 1], [1, 0]]), k=3)


# ---------------------------------------------------------------------------
# exports
# ---------------------------------------------------------------------------

def test_matrix_csv_round_trip(tmp_path):
    d = dm(["alpha", "beta", "gamma"], [[0, 1.5, 2.25], [1.5, 0, 0.75], [2.25, 0.75, 0]])
    p = tmp_path / "m.csv"
    export(d, p, "csv")
    back = load_distance_csv(p)
    assert back.labels == d.labels
    assert np.array_equal(back.d, d.d)


def test_newick_leaf_count(tmp_path):
    labels = [f"leaf{i}" for i in range(5)]
    rngm = np.random.default_rng(3)
    m = rngm.uniform(1, 2, (5, 5))
    m = np.triu(m, 1)
    m = m + m.T
    dend = single_linkage(dm(labels, m))
    p = tmp_path / "d.nwk"
    export(dend, p, "newick")
    text = p.read_text()
    assert text.endswith(";\n")
    for label in labels:
        assert label in text
    assert text.count(",") == 4  # n-1 internal commas for a binary dendrogram


def test_newick_single_leaf():
    dend = Dendrogram(["only"], [])
    assert dendrogram_to_newick(dend) == "only;"


def test_svg_parses_as_xml(tmp_path, rng):
    labels = [f"L{i}" for i in range(4)]
    m = rng.uniform(1, 2, (4, 4))
    m = np.triu(m, 1)
    m = m + m.T
    d = dm(labels, m)
    dend = single_linkage(d)
    emb = classical_mds(d, k=2)
    for artifact, name in [(dend, "dend.svg"), (emb, "emb.svg")]:
        p = tmp_path / name
        export(artifact, p, "svg")
        root = ET.parse(p).getroot()
        assert root.tag.endswith("svg")


def test_embedding_csv(tmp_path):
    emb = classical_mds(dm(["a", "b"], [[0, 2], [2, 0]]), k=2)
    p = tmp_path / "e.csv"
    export(emb, p, "csv")
    lines = p.read_text().strip().splitlines()
    assert lines[0] == "label,x0,x1"
    assert len(lines) == 3
    assert embedding_to_csv(emb).startswith("label,")


def test_export_rejects_bad_combos(tmp_path):
    d = dm(["a", "b"], [[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        export(d, tmp_path / "x", "svg")
    dend = single_linkage(d)
    with pytest.raises(ValueError):
        export(dend, tmp_path / "x", "csv")
    with pytest.raises(TypeError):
        export(42, tmp_path / "x", "csv")
