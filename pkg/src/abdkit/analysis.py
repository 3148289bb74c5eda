"""Pairwise ABD matrices, single-linkage clustering, classical MDS, exports.

The distance matrix is symmetric and nonnegative with a zero diagonal but
is *not* assumed to satisfy the triangle inequality -- the underlying
distance provably does not.  Classical (Torgerson) MDS therefore clamps
negative eigenvalues of the double-centered Gram matrix at zero and
reports how many were clamped.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .abd import frame_angles, merge_tree_at
from .branching import branching_distance
from .filtration import DEFAULT_COLLAPSE_TOL
from .graph_io import EmbeddedGraph, largest_component

__all__ = [
    "DistanceMatrix",
    "Dendrogram",
    "Embedding2D",
    "distance_matrix",
    "single_linkage",
    "cut_clusters",
    "cluster_purity",
    "classical_mds",
    "export",
    "load_distance_csv",
    "matrix_to_csv",
    "dendrogram_to_newick",
    "embedding_to_csv",
]


@dataclass
class DistanceMatrix:
    labels: list[str]
    d: np.ndarray

    def __post_init__(self) -> None:
        self.d = np.asarray(self.d, dtype=float)
        n = len(self.labels)
        if self.d.shape != (n, n):
            raise ValueError(f"matrix shape {self.d.shape} does not match {n} labels")
        if not np.allclose(self.d, self.d.T, atol=0.0, rtol=0.0, equal_nan=False):
            raise ValueError("matrix is not symmetric")
        if np.any(np.diag(self.d) != 0.0):
            raise ValueError("diagonal is not zero")
        if np.any(self.d < 0.0):
            raise ValueError("negative entries")

    @property
    def n(self) -> int:
        return len(self.labels)


@dataclass
class Dendrogram:
    """Single-linkage merge steps: (cluster-a, cluster-b, height, new size).

    Original items are clusters ``0..n-1``; step ``t`` creates cluster
    ``n + t``.  Heights are non-decreasing.
    """

    labels: list[str]
    merges: list[tuple[int, int, float, int]]

    @property
    def n(self) -> int:
        return len(self.labels)


@dataclass
class Embedding2D:
    labels: list[str]
    coords: np.ndarray
    eigenvalues: np.ndarray
    n_clamped: int = 0


def _pair_abd(args) -> tuple[int, int, float]:
    i, j, trees_i, trees_j, avg, mode, tol = args
    dists = sorted(
        branching_distance(a, b, mode=mode, tol=tol) for a, b in zip(trees_i, trees_j)
    )
    if avg == "median":
        val = float(np.median(dists))
    elif avg == "mean":
        val = float(np.mean(dists))
    else:
        raise ValueError(f"unknown avg {avg!r}")
    return i, j, val


def distance_matrix(
    graphs: list[EmbeddedGraph],
    n_frames: int = 10,
    avg: str = "median",
    mode: str = "exact",
    tol: float = 1e-6,
    labels: list[str] | None = None,
    collapse_tol: float = DEFAULT_COLLAPSE_TOL,
    jobs: int = 1,
) -> DistanceMatrix:
    """Pairwise ABD matrix; each merge tree is built once per (graph, angle).

    Unordered pairs are independent work items (``jobs`` > 1 runs them in a
    process pool); per-frame values are sorted before aggregation, so the
    result does not depend on scheduling.
    """
    if len(graphs) < 2:
        raise ValueError("need at least 2 graphs")
    if labels is None:
        labels = [f"g{i}" for i in range(len(graphs))]
    if len(labels) != len(graphs):
        raise ValueError("labels/graphs length mismatch")
    comps = [largest_component(g) for g in graphs]
    angles = frame_angles(n_frames).angles
    trees = [[merge_tree_at(g, w, collapse_tol) for w in angles] for g in comps]
    n = len(graphs)
    tasks = [
        (i, j, trees[i], trees[j], avg, mode, tol) for i in range(n) for j in range(i + 1, n)
    ]
    out = np.zeros((n, n))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_pair_abd, tasks))
    else:
        results = [_pair_abd(t) for t in tasks]
    for i, j, val in results:
        out[i, j] = out[j, i] = val
    return DistanceMatrix(labels, out)


def single_linkage(dm: DistanceMatrix) -> Dendrogram:
    """Agglomerate by smallest inter-cluster (minimum-link) distance.

    Ties are broken by the lexicographically smallest (a, b) cluster-id
    pair, so dendrograms are reproducible across runs and platforms.
    """
    n = dm.n
    members: dict[int, list[int]] = {i: [i] for i in range(n)}
    merges: list[tuple[int, int, float, int]] = []
    next_id = n
    d = dm.d
    while len(members) > 1:
        best: tuple[float, int, int] | None = None
        ids = sorted(members)
        for ai in range(len(ids)):
            for bi in range(ai + 1, len(ids)):
                a, b = ids[ai], ids[bi]
                link = min(d[p, q] for p in members[a] for q in members[b])
                if best is None or link < best[0]:
                    best = (link, a, b)
        link, a, b = best
        members[next_id] = members.pop(a) + members.pop(b)
        merges.append((a, b, float(link), len(members[next_id])))
        next_id += 1
    return Dendrogram(list(dm.labels), merges)


def cut_clusters(dend: Dendrogram, k: int) -> list[int]:
    """Cluster index per item after undoing the last k-1 merges.

    Clusters are numbered 0..k-1 ordered by their smallest member index.
    """
    n = dend.n
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}]")
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cluster_members: dict[int, list[int]] = {i: [i] for i in range(n)}
    next_id = n
    for a, b, _, _ in dend.merges[: n - k]:
        cluster_members[next_id] = cluster_members.pop(a) + cluster_members.pop(b)
        next_id += 1
    groups = sorted(cluster_members.values(), key=min)
    assignment = [0] * n
    for idx, group in enumerate(groups):
        for item in group:
            assignment[item] = idx
    return assignment


def cluster_purity(assignment: list[int], truth: list[str]) -> float:
    """Fraction of items in their cluster's majority class."""
    if len(assignment) != len(truth):
        raise ValueError("length mismatch")
    total = 0
    for c in set(assignment):
        counts: dict[str, int] = {}
        for a, t in zip(assignment, truth):
            if a == c:
                counts[t] = counts.get(t, 0) + 1
        total += max(counts.values())
    return total / len(truth)


def classical_mds(dm: DistanceMatrix, k: int = 2) -> Embedding2D:
    """Torgerson MDS: double-center the squared distances, eigendecompose.

    Negative eigenvalues (the matrix is non-metric, so they do occur) are
    clamped at zero and counted.  Each output axis is sign-fixed so its
    first nonzero coordinate is positive.
    """
    n = dm.n
    if k > n:
        raise ValueError(f"k={k} exceeds the number of points {n}")
    j = np.eye(n) - np.ones((n, n)) / n
    b = -0.5 * j @ (dm.d**2) @ j
    evals, evecs = np.linalg.eigh(b)
    order = np.argsort(evals)[::-1]
    evals = evals[order]
    evecs = evecs[:, order]
    n_clamped = int(np.sum(evals < 0.0))
    clamped = np.clip(evals, 0.0, None)
    coords = evecs[:, :k] * np.sqrt(clamped[:k])
    for col in range(coords.shape[1]):
        nz = np.nonzero(np.abs(coords[:, col]) > 1e-12)[0]
        if nz.size and coords[nz[0], col] < 0:
            coords[:, col] = -coords[:, col]
    return Embedding2D(list(dm.labels), coords, evals, n_clamped)


# ---------------------------------------------------------------------------
# exports
# ---------------------------------------------------------------------------

def export(artifact, path: str | Path, kind: str) -> None:
    """Write an analysis artifact: matrices to csv, dendrograms to newick or
    svg, embeddings to csv or svg."""
    path = Path(path)
    if isinstance(artifact, DistanceMatrix):
        if kind != "csv":
            raise ValueError("distance matrices export as csv only")
        path.write_text(matrix_to_csv(artifact))
    elif isinstance(artifact, Dendrogram):
        if kind == "newick":
            path.write_text(dendrogram_to_newick(artifact) + "\n")
        elif kind == "svg":
            path.write_text(_dendrogram_svg(artifact))
        else:
            raise ValueError("dendrograms export as newick or svg")
    elif isinstance(artifact, Embedding2D):
        if kind == "csv":
            path.write_text(embedding_to_csv(artifact))
        elif kind == "svg":
            path.write_text(_scatter_svg(artifact))
        else:
            raise ValueError("embeddings export as csv or svg")
    else:
        raise TypeError(f"cannot export {type(artifact).__name__}")


def matrix_to_csv(dm: DistanceMatrix) -> str:
    lines = [",".join(dm.labels)]
    for row in dm.d:
        lines.append(",".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"


def load_distance_csv(path: str | Path) -> DistanceMatrix:
    lines = Path(path).read_text().strip().splitlines()
    labels = lines[0].split(",")
    rows = [[float(x) for x in line.split(",")] for line in lines[1:]]
    return DistanceMatrix(labels, np.array(rows))


def _newick_name(label: str) -> str:
    out = "".join(c if c.isalnum() or c in "._-" else "_" for c in label)
    return out or "_"


def dendrogram_to_newick(dend: Dendrogram) -> str:
    """Newick with branch lengths; leaf-to-parent length = merge height."""
    n = dend.n
    height: dict[int, float] = {i: 0.0 for i in range(n)}
    text: dict[int, str] = {i: _newick_name(label) for i, label in enumerate(dend.labels)}
    next_id = n
    for a, b, h, _ in dend.merges:
        la = h - height[a]
        lb = h - height[b]
        text[next_id] = f"({text[a]}:{la!r},{text[b]}:{lb!r})"
        height[next_id] = h
        next_id += 1
    return text[next_id - 1] + ";" if dend.merges else text[0] + ";"


def _svg_header(width: float, height: float) -> str:
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.6g}" '
        f'height="{height:.6g}" viewBox="0 0 {width:.6g} {height:.6g}">\n'
    )


def _leaf_order(dend: Dendrogram) -> list[int]:
    n = dend.n
    trees: dict[int, list[int]] = {i: [i] for i in range(n)}
    next_id = n
    for a, b, _, _ in dend.merges:
        trees[next_id] = trees.pop(a) + trees.pop(b)
        next_id += 1
    return trees[next_id - 1] if dend.merges else [0]


def _dendrogram_svg(dend: Dendrogram) -> str:
    n = dend.n
    order = _leaf_order(dend)
    xpos = {leaf: 40.0 + 30.0 * i for i, leaf in enumerate(order)}
    max_h = max((m[2] for m in dend.merges), default=1.0) or 1.0
    plot_h = 240.0

    def ypix(h: float) -> float:
        return 20.0 + plot_h * (1.0 - h / max_h)

    height: dict[int, float] = {i: 0.0 for i in range(n)}
    parts = []
    next_id = n
    for a, b, h, _ in dend.merges:
        xa, xb = xpos[a], xpos[b]
        ya, yb, ym = ypix(height[a]), ypix(height[b]), ypix(h)
        parts.append(
            f'<path d="M {xa:.6g} {ya:.6g} V {ym:.6g} H {xb:.6g} V {yb:.6g}" '
            'fill="none" stroke="black"/>'
        )
        xpos[next_id] = (xa + xb) / 2.0
        height[next_id] = h
        next_id += 1
    for i, leaf in enumerate(order):
        x = 40.0 + 30.0 * i
        parts.append(
            f'<text x="{x:.6g}" y="{20.0 + plot_h + 14.0:.6g}" font-size="9" '
            f'text-anchor="middle">{escape(dend.labels[leaf])}</text>'
        )
    width = 80.0 + 30.0 * (len(order) - 1)
    return _svg_header(width, plot_h + 60.0) + "\n".join(parts) + "\n</svg>\n"


def embedding_to_csv(emb: Embedding2D) -> str:
    k = emb.coords.shape[1]
    header = "label," + ",".join(f"x{i}" for i in range(k))
    lines = [header]
    for label, row in zip(emb.labels, emb.coords):
        lines.append(label + "," + ",".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"


def _scatter_svg(emb: Embedding2D) -> str:
    pts = emb.coords[:, :2] if emb.coords.shape[1] >= 2 else np.column_stack(
        [emb.coords[:, 0], np.zeros(len(emb.labels))]
    )
    span = max(float(np.abs(pts).max()), 1e-9)
    size = 320.0
    parts = []
    for label, (x, y) in zip(emb.labels, pts):
        px = size / 2.0 + (x / span) * (size / 2.0 - 30.0)
        py = size / 2.0 - (y / span) * (size / 2.0 - 30.0)
        parts.append(f'<circle cx="{px:.6g}" cy="{py:.6g}" r="3" fill="steelblue"/>')
        parts.append(
            f'<text x="{px + 5.0:.6g}" y="{py - 5.0:.6g}" font-size="9">{escape(label)}</text>'
        )
    return _svg_header(size, size) + "\n".join(parts) + "\n</svg>\n"
