"""Hand-picked fixture graphs used across tests, docs and the CLI examples."""
from __future__ import annotations

from .graphs import Graph

#: Monotone-mixture showcase on 15 vertices: a five-clique core (increasing
#: and componentwise members), bridge pendants on the increasing members,
#: a separate componentwise triangle, one isolated decreasing agent and one
#: isolated componentwise agent.
CORE_PERIPHERY_TYPES = (
    "2", "1", "1", "2", "1",      # 0-4: the clique core
    "2p", "2p",                   # 5, 6: pendants on vertices 4 and 2
    "1p",                         # 7: isolated decreasing agent
    "2",                          # 8: isolated componentwise agent
    "2", "2", "2",                # 9-11: separate triangle
    "2p", "2p", "2p",             # 12-14: more pendants on 4 and 2
)


def core_periphery_fifteen() -> Graph:
    edges = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    edges += [(9, 10), (9, 11), (10, 11)]
    edges += [(4, 5), (2, 6), (4, 12), (4, 13), (2, 14)]
    return Graph.from_edges(15, edges)


def ten_vertex_betweenness_stable() -> Graph:
    """A ten-vertex non-bipartite graph (it contains the triangle 3-4-8)
    that is stable for betweenness games."""
    edges_1_indexed = [
        (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 8), (1, 10),
        (2, 3), (2, 5), (2, 7), (2, 9),
        (3, 4), (3, 6), (3, 7), (3, 8), (3, 9),
        (4, 5), (4, 7), (4, 9),
        (5, 6), (5, 7), (5, 8), (5, 9),
        (6, 7), (6, 9),
        (7, 8), (7, 10),
        (8, 9),
        (9, 10),
    ]
    return Graph.from_edges(10, [(a - 1, b - 1) for a, b in edges_1_indexed])


def six_vertex_eccentricity_stable() -> Graph:
    """A five-cycle with a sixth vertex joined to two non-adjacent cycle
    vertices: triangle-free, every eccentricity two, stable for
    eccentricity games."""
    return Graph.from_edges(6, [(0, 1), (0, 4), (4, 3), (3, 2), (2, 1), (1, 5), (5, 4)])


def wheel(n: int) -> Graph:
    """Hub joined to an (n-1)-cycle."""
    rim = [(i, i % (n - 1) + 1) for i in range(1, n)]
    return Graph.from_edges(n, [(0, i) for i in range(1, n)] + rim)
