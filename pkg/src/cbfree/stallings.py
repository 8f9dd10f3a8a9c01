"""Folded core graphs of finitely generated subgroups.

A tuple of reduced words becomes a wedge of subdivided loops at the
basepoint; same-label edge pairs are then identified with a union-find
until the graph is folded, and degree-1 non-basepoint vertices are
trimmed. The result answers membership (spell the word from the
basepoint) and rank (first Betti number) queries, and serves as the
independent oracle behind the Nielsen and Whitehead modules.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .words import Word


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:  # keep the lowest id (the basepoint stays 0)
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


class StallingsGraph:
    """A folded, trimmed, canonically numbered core graph."""

    __slots__ = ("n_vertices", "edges", "_out", "_in")

    basepoint = 0

    def __init__(self, n_vertices: int, edges: Sequence[tuple]):
        self.n_vertices = n_vertices
        self.edges = tuple(sorted(edges))
        self._out = {}
        self._in = {}
        for u, label, v in self.edges:
            self._out[(u, label)] = v
            self._in[(v, label)] = u

    def step(self, vertex: int, letter: int) -> Optional[int]:
        """Follow one signed letter from a vertex, or None."""
        if letter > 0:
            return self._out.get((vertex, letter))
        return self._in.get((vertex, -letter))

    def contains(self, w: Word) -> bool:
        cur = self.basepoint
        for s in w.signed:
            cur = self.step(cur, s)
            if cur is None:
                return False
        return cur == self.basepoint

    @property
    def rank(self) -> int:
        return len(self.edges) - self.n_vertices + 1


def build_graph(t: Sequence[Word], _edge_order: Optional[Sequence[int]] = None) -> StallingsGraph:
    """Folded core graph of the subgroup generated by the tuple.

    _edge_order optionally permutes the fold scan (testing knob: any
    order folds to a label-isomorphic graph).
    """
    for w in t:
        if not w:
            raise ValueError("tuple entries must be nonempty words")
    edges = []
    next_vertex = 1
    for w in t:
        prev = 0
        letters = w.signed
        for pos, s in enumerate(letters):
            nxt = 0 if pos == len(letters) - 1 else next_vertex
            if nxt != 0:
                next_vertex += 1
            if s > 0:
                edges.append((prev, s, nxt))
            else:
                edges.append((nxt, -s, prev))
            prev = nxt
    if _edge_order is not None:
        edges = [edges[i] for i in _edge_order]

    uf = UnionFind(next_vertex)
    # Fold: rescan after every identification until stable.
    changed = True
    while changed:
        changed = False
        out_map = {}
        in_map = {}
        for u, label, v in edges:
            ru, rv = uf.find(u), uf.find(v)
            prior = out_map.get((ru, label))
            if prior is None:
                out_map[(ru, label)] = rv
            elif prior != rv:
                uf.union(prior, rv)
                changed = True
                break
            prior = in_map.get((rv, label))
            if prior is None:
                in_map[(rv, label)] = ru
            elif prior != ru:
                uf.union(prior, ru)
                changed = True
                break

    folded = {(uf.find(u), label, uf.find(v)) for u, label, v in edges}

    # Core: trim degree-1 vertices away from the basepoint.
    base = uf.find(0)
    while True:
        degree = {}
        for u, _, v in folded:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        dead = {x for x, d in degree.items() if d <= 1 and x != base}
        if not dead:
            break
        folded = {e for e in folded if e[0] not in dead and e[2] not in dead}

    # Canonical renumbering: BFS from the basepoint, labels ascending,
    # outgoing before incoming.
    adjacency = {}
    for u, label, v in folded:
        adjacency.setdefault(u, []).append((label, 0, v))
        adjacency.setdefault(v, []).append((label, 1, u))
    order = {base: 0}
    queue = [base]
    while queue:
        cur = queue.pop(0)
        for _, _, nxt in sorted(adjacency.get(cur, [])):
            if nxt not in order:
                order[nxt] = len(order)
                queue.append(nxt)
    renumbered = [(order[u], label, order[v]) for u, label, v in folded]
    return StallingsGraph(max(len(order), 1), renumbered)


def contains(graph: StallingsGraph, w: Word) -> bool:
    """True iff w spells a closed path at the basepoint."""
    return graph.contains(w)


def rank(graph: StallingsGraph) -> int:
    """Rank of the subgroup: E - V + 1 of the connected core graph."""
    return graph.rank


def to_dot(graph: StallingsGraph) -> str:
    """Deterministic DOT rendering; the basepoint is double-circled."""
    lines = ["digraph stallings {"]
    lines.append("  0 [shape=doublecircle];")
    for v in range(1, graph.n_vertices):
        lines.append(f"  {v} [shape=circle];")
    for u, label, v in graph.edges:
        lines.append(f'  {u} -> {v} [label="a{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
