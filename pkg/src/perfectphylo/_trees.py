"""Small helpers for unrooted trees given as node and edge lists."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Mapping

Adjacency = Mapping[int, frozenset[int]]


def edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def adjacency(nodes: Iterable[int], edges: Iterable[tuple[int, int]]) -> dict[int, frozenset[int]]:
    adj: dict[int, set[int]] = {v: set() for v in nodes}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return {v: frozenset(ns) for v, ns in adj.items()}


def is_tree(nodes: Iterable[int], edges: Iterable[tuple[int, int]]) -> bool:
    nodes = list(nodes)
    edges = list(edges)
    if not nodes or len(edges) != len(nodes) - 1:
        return False
    if any(u == v or u not in set(nodes) or v not in set(nodes) for u, v in edges):
        return False
    return is_connected(adjacency(nodes, edges), nodes)


def is_connected(adj: Adjacency, subset: Iterable[int]) -> bool:
    """True iff ``subset`` induces a connected subgraph (the empty set does not)."""
    subset = set(subset)
    if not subset:
        return False
    start = next(iter(subset))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w in subset and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen == subset


def steiner(adj: Adjacency, terminals: Iterable[int]) -> frozenset[int]:
    """Node set of the minimal subtree containing ``terminals``."""
    terminals = set(terminals)
    if not terminals:
        return frozenset()
    keep = set(adj)
    degree = {v: len(adj[v]) for v in keep}
    queue = deque(v for v in keep if degree[v] <= 1 and v not in terminals)
    while queue:
        v = queue.popleft()
        if v not in keep or len(keep) == 1:
            continue
        keep.discard(v)
        for w in adj[v]:
            if w in keep:
                degree[w] -= 1
                if degree[w] <= 1 and w not in terminals:
                    queue.append(w)
    return frozenset(keep)


def center(adj: Adjacency) -> list[int]:
    """The one or two central nodes, found by peeling leaves."""
    remaining = set(adj)
    degree = {v: len(adj[v]) for v in remaining}
    layer = [v for v in remaining if degree[v] <= 1]
    while len(remaining) > 2:
        nxt = []
        for v in layer:
            remaining.discard(v)
            for w in adj[v]:
                if w in remaining:
                    degree[w] -= 1
                    if degree[w] == 1:
                        nxt.append(w)
        layer = nxt
    return sorted(remaining)


def preorder(adj: Adjacency, root: int) -> list[int]:
    """Depth-first preorder, visiting neighbours in ascending id order."""
    order = []
    stack = [(root, None)]
    while stack:
        v, parent = stack.pop()
        order.append(v)
        for w in sorted(adj[v], reverse=True):
            if w != parent:
                stack.append((w, v))
    return order
