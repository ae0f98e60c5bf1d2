"""Level graphs of an ultrametric space and complete multipartite recognition.

The level graph at ``r`` joins two points exactly when their distance is
``r``.  The level graph at the diameter is always complete multipartite
with at least two parts; a space is in U exactly when every level graph,
once its isolated vertices are removed, is complete bipartite.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import UltraSpace, diameter, spectrum
from .errors import EmptyGraph, LevelNotInSpectrum, NotMultipartite, SingletonSpace

Edge = frozenset


@dataclass(frozen=True)
class LevelGraph:
    vertices: frozenset[str]
    edges: frozenset[Edge]
    level: Fraction

    def neighbours(self, v: str) -> set[str]:
        return {u for e in self.edges if v in e for u in e if u != v}

    def induced(self, subset) -> "LevelGraph":
        subset = frozenset(subset) & self.vertices
        return LevelGraph(subset, frozenset(e for e in self.edges if e <= subset), self.level)


def _part_key(part: frozenset[str]):
    return (len(part), min(part))


def level_graph(X: UltraSpace, r) -> LevelGraph:
    r = Fraction(r)
    if r not in spectrum(X):
        raise LevelNotInSpectrum(f"{r} is not a distance of the space")
    edges = frozenset(
        Edge((X.points[i], X.points[j])) for i, j in X.pairs() if X.dist[i][j] == r
    )
    return LevelGraph(frozenset(X.points), edges, r)


def diametral_graph(X: UltraSpace) -> LevelGraph:
    return level_graph(X, diameter(X)[0])


def strip_isolated(G: LevelGraph) -> LevelGraph:
    """Induced subgraph on the vertices that have at least one edge."""
    if not G.edges:
        raise EmptyGraph("graph has no edges")
    covered = frozenset(v for e in G.edges for v in e)
    return LevelGraph(covered, G.edges, G.level)


def multipartite_parts(G: LevelGraph) -> tuple[frozenset[str], ...]:
    """Parts of a complete multipartite graph, sorted by (size, smallest id).

    The parts are the connected components of the complement.  Each must be
    independent in ``G`` and every pair across parts must be an edge;
    otherwise :class:`NotMultipartite` is raised with a witnessing pair.
    """
    if not G.edges:
        raise EmptyGraph("graph has no edges")
    isolated = G.vertices - {v for e in G.edges for v in e}
    if isolated:
        raise NotMultipartite("graph has isolated vertices; strip them first", min(isolated))

    vertices = sorted(G.vertices)
    adj = {v: set() for v in vertices}
    for e in G.edges:
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)

    seen: set[str] = set()
    parts = []
    for start in vertices:
        if start in seen:
            continue
        comp, stack = {start}, [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            for u in vertices:
                if u != v and u not in adj[v] and u not in seen:
                    seen.add(u)
                    comp.add(u)
                    stack.append(u)
        parts.append(frozenset(comp))

    for part in parts:
        for a, b in combinations(sorted(part), 2):
            if b in adj[a]:
                raise NotMultipartite(f"edge {{{a},{b}}} lies inside a part", (a, b))
    # cross pairs are non-edges of the complement, hence edges of G by construction
    if len(parts) < 2:
        raise NotMultipartite("complement is connected: a single part", None)
    return tuple(sorted(parts, key=_part_key))


def is_complete_bipartite(G: LevelGraph) -> bool:
    try:
        return len(multipartite_parts(G)) == 2
    except (NotMultipartite, EmptyGraph):
        return False


def diametral_parts(X: UltraSpace) -> tuple[frozenset[str], ...]:
    """Parts of the diametral graph; at least two for any space with two or more points."""
    if len(X) < 2:
        raise SingletonSpace("diametral decomposition needs at least two points")
    return multipartite_parts(diametral_graph(X))


def characterize_u_by_graphs(X: UltraSpace) -> bool:
    """Membership in U decided from level graphs alone.

    True iff for every distance ``r`` the level graph with isolated vertices
    removed is complete bipartite.
    """
    if len(X) < 2:
        raise SingletonSpace("graph characterization needs at least two points")
    return all(is_complete_bipartite(strip_isolated(level_graph(X, r))) for r in spectrum(X))


# -- export -------------------------------------------------------------------

def _dot_id(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(G: LevelGraph) -> str:
    lines = ["graph G {", f"  level={_dot_id(str(G.level))};"]
    for v in sorted(G.vertices):
        lines.append(f"  {_dot_id(v)};")
    for a, b in sorted(tuple(sorted(e)) for e in G.edges):
        lines.append(f"  {_dot_id(a)} -- {_dot_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dict(G: LevelGraph) -> dict:
    return {
        "vertices": sorted(G.vertices),
        "edges": sorted(sorted(e) for e in G.edges),
        "level": str(G.level),
    }


def graph_to_json(G: LevelGraph) -> str:
    return json.dumps(graph_to_dict(G), indent=2) + "\n"
