import logging
from dataclasses import dataclass

import networkx as nx

from .exceptions import DisconnectedGraphError, EmptyFaceError, InvalidParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DistanceTable:
    source: int
    dist: tuple

    def farthest(self):
        """Largest distance and the smallest vertex index attaining it."""
        value = max(self.dist)
        return value, self.dist.index(value)


def polytope_graph(polytope):
    """The 1-skeleton as a networkx graph on vertex indices."""
    graph = nx.Graph()
    graph.add_nodes_from(range(len(polytope.vertices)))
    graph.add_edges_from(polytope.edges)
    return graph


def bfs_distances(polytope, source, graph=None):
    n = len(polytope.vertices)
    if not 0 <= source < n:
        raise InvalidParameterError(f'source {source} out of range 0..{n - 1}')
    if graph is None:
        graph = polytope_graph(polytope)
    lengths = nx.single_source_shortest_path_length(graph, source)
    if len(lengths) != n:
        raise DisconnectedGraphError(f'{n - len(lengths)} vertices unreachable from vertex {source}')
    return DistanceTable(source=source, dist=tuple(lengths[i] for i in range(n)))


def all_distances(polytope):
    graph = polytope_graph(polytope)
    return [bfs_distances(polytope, source, graph=graph) for source in range(len(polytope.vertices))]


def diameter(polytope):
    """Graph diameter and the lexicographically smallest vertex pair attaining it."""
    best, witness = 0, (0, 0)
    for table in all_distances(polytope):
        value, far = table.farthest()
        if value > best:
            best, witness = value, (min(table.source, far), max(table.source, far))
    return best, witness


def distance(polytope, u, v):
    return bfs_distances(polytope, u).dist[v]


def distance_to_face(polytope, u, face):
    if not face:
        raise EmptyFaceError('distance to an empty vertex set is undefined')
    table = bfs_distances(polytope, u)
    return min(table.dist[v] for v in face)
