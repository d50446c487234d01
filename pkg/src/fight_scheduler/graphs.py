"""Bipartite graphs, maximum matching and Delta-edge-coloring.

Adjacency lists are kept sorted so that matchings and colorings are
reproducible for a given graph.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable

Vertex = Hashable
Edge = tuple  # (left, right)


def _key(v):
    return (type(v).__name__, v) if not isinstance(v, tuple) else ("tuple", v)


@dataclass(frozen=True)
class BipartiteGraph:
    left: tuple
    right: tuple
    edges: tuple

    def __post_init__(self):
        left, right = set(self.left), set(self.right)
        if left & right:
            raise ValueError("left and right vertex sets overlap")
        seen = set()
        for u, v in self.edges:
            if u not in left or v not in right:
                raise ValueError(f"edge {(u, v)} does not join left to right")
            if (u, v) in seen:
                raise ValueError(f"parallel edge {(u, v)}")
            seen.add((u, v))
        adj: dict = {x: [] for x in self.left}
        adj.update({x: [] for x in self.right})
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for x in adj:
            adj[x].sort(key=_key)
        object.__setattr__(self, "_adj", adj)

    @classmethod
    def from_edges(cls, edges: Iterable[Edge], left=(), right=()) -> "BipartiteGraph":
        edges = tuple(edges)
        lefts = list(dict.fromkeys(list(left) + [u for u, _ in edges]))
        rights = list(dict.fromkeys(list(right) + [v for _, v in edges]))
        return cls(tuple(lefts), tuple(rights), edges)

    def neighbors(self, v) -> list:
        return self._adj[v]

    def degree(self, v) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj.values()), default=0)

    def to_edge_list(self) -> str:
        """One ``left right`` pair per line, for graph-drawing tools."""
        return "".join(f"{u} {v}\n" for u, v in self.edges)


def max_matching(graph: BipartiteGraph, left_subset=None) -> dict:
    """Hopcroft-Karp maximum matching.

    Returns a dict mapping matched left vertices to their right partner.
    With ``left_subset`` only those left vertices take part.
    """
    lefts = [u for u in graph.left if left_subset is None or u in left_subset]
    adj = graph._adj
    pair_l: dict = {}
    pair_r: dict = {}
    inf = float("inf")

    def bfs() -> bool:
        dist.clear()
        queue = deque()
        for u in lefts:
            if u not in pair_l:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = pair_r.get(v)
                if w is None:
                    found = True
                elif w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(root) -> bool:
        # iterative augmenting-path search along the BFS layering
        stack = [(root, iter(adj[root]))]
        path = []
        while stack:
            u, it = stack[-1]
            advanced = False
            for v in it:
                w = pair_r.get(v)
                if w is None:
                    path.append((u, v))
                    for a, b in path:
                        pair_l[a] = b
                        pair_r[b] = a
                    return True
                if dist.get(w, inf) == dist[u] + 1:
                    path.append((u, v))
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                dist[u] = inf
                if path:
                    path.pop()
        return False

    dist: dict = {}
    while bfs():
        for u in lefts:
            if u not in pair_l:
                dfs(u)
    return pair_l


def konig_edge_coloring(graph: BipartiteGraph) -> dict:
    """Proper edge coloring with exactly ``max_degree`` colors (0-based).

    Edges are colored one at a time; when the two endpoints have no common
    free color, the alternating path of the two candidate colors starting at
    the right endpoint is swapped.  In a bipartite graph that path never
    returns to the left endpoint, so the swap frees a shared color.
    """
    delta = graph.max_degree()
    # at[v][c] = neighbour joined to v by an edge of color c
    at: dict = {v: {} for v in graph._adj}
    for u, v in graph.edges:
        a = next(c for c in range(delta) if c not in at[u])
        b = next(c for c in range(delta) if c not in at[v])
        if a != b and a in at[v]:
            # walk the a/b path from v and swap its colors
            path = []
            x, c = v, a
            while c in at[x]:
                y = at[x][c]
                path.append((x, y, c))
                x, c = y, (b if c == a else a)
            for x, y, c in path:
                del at[x][c]
                del at[y][c]
            for x, y, c in path:
                d = b if c == a else a
                at[x][d] = y
                at[y][d] = x
        at[u][a] = v
        at[v][a] = u
    coloring = {}
    for u in graph.left:
        for c, v in at[u].items():
            coloring[(u, v)] = c
    return coloring


def is_proper(graph: BipartiteGraph, coloring: dict) -> bool:
    if set(coloring) != set(graph.edges):
        return False
    used: dict = {}
    for (u, v), c in coloring.items():
        for x in (u, v):
            if (x, c) in used:
                return False
            used[(x, c)] = True
    return True
