"""Geometric network model: scenario parameters, nodes, links, paths.

Distances are plain Euclidean lengths in the same unit system as the
eavesdropper density (nodes per unit area). Link weights are squared
distances, which is the quantity every downstream formula consumes.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field


DEFAULT_WINDOW = (-1000.0, 1000.0, -1000.0, 1000.0)


class NetModelError(ValueError):
    """Invalid scenario, topology, or path input."""


@dataclass(frozen=True)
class Scenario:
    """Global physical parameters shared by analytics, simulation and routing.

    alpha     : path-loss exponent, must exceed 2
    lambda_e  : eavesdropper density (points per unit area)
    epsilon   : maximum tolerable end-to-end secrecy outage probability
    power_db  : per-hop transmit power in dB
    sim_window: (xmin, xmax, ymin, ymax) rectangle for PPP sampling
    """

    alpha: float
    lambda_e: float
    epsilon: float
    power_db: float = 80.0
    sim_window: tuple[float, float, float, float] = DEFAULT_WINDOW

    def __post_init__(self):
        if not self.alpha > 2.0:
            raise NetModelError(f"path-loss exponent must exceed 2, got {self.alpha}")
        if self.lambda_e < 0.0:
            raise NetModelError(f"eavesdropper density must be >= 0, got {self.lambda_e}")
        if not 0.0 < self.epsilon < 1.0:
            raise NetModelError(f"epsilon must lie strictly in (0,1), got {self.epsilon}")
        xmin, xmax, ymin, ymax = self.sim_window
        if not (xmax > xmin and ymax > ymin):
            raise NetModelError(f"sim_window must have positive area, got {self.sim_window}")

    @property
    def power_linear(self) -> float:
        return 10.0 ** (self.power_db / 10.0)

    @property
    def window_area(self) -> float:
        xmin, xmax, ymin, ymax = self.sim_window
        return (xmax - xmin) * (ymax - ymin)


@dataclass(frozen=True)
class Node:
    id: int
    x: float
    y: float


@dataclass(frozen=True)
class Link:
    src: int
    dst: int
    dist: float

    @property
    def weight(self) -> float:
        # squared distance, computed (never stored) so it can't drift
        return self.dist * self.dist


@dataclass(frozen=True)
class Path:
    """Ordered multihop route, source first."""

    nodes: tuple[int, ...]
    sum_sq_dist: float

    @property
    def hop_count(self) -> int:
        return len(self.nodes) - 1


def _euclid(a: Node, b: Node) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


class Topology:
    """Immutable set of legitimate nodes with symmetric weighted links.

    Safe for concurrent read access; all mutation happens in __init__.
    """

    def __init__(self, nodes: list[Node], edges=None):
        if len(nodes) < 2:
            raise NetModelError("a topology needs at least 2 nodes")
        ids = [n.id for n in nodes]
        if len(set(ids)) != len(ids):
            raise NetModelError("duplicate node ids")
        for n in nodes:
            if not (math.isfinite(n.x) and math.isfinite(n.y)):
                raise NetModelError(f"non-finite coordinates on node {n.id}")
        self.nodes = {n.id: n for n in nodes}
        self.order = sorted(self.nodes)  # fixed id order for matrix views
        self._adj: dict[int, dict[int, float]] = {i: {} for i in self.nodes}
        if edges is None:
            pairs = [(a.id, b.id) for i, a in enumerate(nodes) for b in nodes[i + 1:]]
        else:
            pairs = list(edges)
        for u, v in pairs:
            if u not in self.nodes or v not in self.nodes:
                raise NetModelError(f"edge ({u},{v}) references unknown node")
            if u == v:
                raise NetModelError(f"self-loop on node {u}")
            d = _euclid(self.nodes[u], self.nodes[v])
            if d <= 0.0:
                raise NetModelError(f"nodes {u} and {v} are co-located")
            self._adj[u][v] = d
            self._adj[v][u] = d

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, {})

    def link(self, u: int, v: int) -> Link:
        if not self.has_edge(u, v):
            raise NetModelError(f"no link between {u} and {v}")
        return Link(u, v, self._adj[u][v])

    def neighbors(self, u: int) -> dict[int, float]:
        return dict(self._adj[u])

    def links(self) -> list[Link]:
        out = []
        for u in self.order:
            for v, d in self._adj[u].items():
                if u < v:
                    out.append(Link(u, v, d))
        return out

    def weight_matrix(self):
        """Squared-distance matrix indexed by self.order, inf off-edges."""
        import numpy as np

        n = len(self.order)
        idx = {nid: i for i, nid in enumerate(self.order)}
        w = np.full((n, n), np.inf)
        for u in self.order:
            for v, d in self._adj[u].items():
                w[idx[u], idx[v]] = d * d
        return w

    def path(self, node_ids) -> Path:
        """Build a Path from an ordered node-id sequence, validating edges."""
        seq = tuple(node_ids)
        if len(seq) < 2:
            raise NetModelError("a path needs at least one hop")
        if len(set(seq)) != len(seq):
            raise NetModelError("path revisits a node")
        total = 0.0
        for u, v in zip(seq, seq[1:]):
            total += self.link(u, v).weight
        return Path(seq, total)


def build_topology(nodes: list[Node], edges=None) -> Topology:
    """Full mesh over the given nodes, or restricted to an explicit edge list."""
    return Topology(nodes, edges)


def path_sum_sq(path: Path, topology: Topology) -> float:
    """Sum of squared hop distances, recomputed from the topology."""
    return topology.path(path.nodes).sum_sq_dist


def hop_distances(path: Path, topology: Topology) -> list[float]:
    return [topology.link(u, v).dist for u, v in zip(path.nodes, path.nodes[1:])]


def load_nodes_csv(fname) -> list[Node]:
    """Read `id,x,y` rows; '#' comments and a non-numeric header are skipped."""
    nodes = []
    with open(fname, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].lstrip().startswith("#"):
                continue
            try:
                nid = int(row[0])
            except ValueError:
                continue  # header line
            if len(row) < 3:
                raise NetModelError(f"malformed node row: {row}")
            nodes.append(Node(nid, float(row[1]), float(row[2])))
    if not nodes:
        raise NetModelError(f"no node rows found in {fname}")
    return nodes


def load_edges_csv(fname) -> list[tuple[int, int]]:
    """Read optional `from,to` edge rows, same comment/header rules."""
    edges = []
    with open(fname, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].lstrip().startswith("#"):
                continue
            try:
                u = int(row[0])
            except ValueError:
                continue
            edges.append((u, int(row[1])))
    return edges
