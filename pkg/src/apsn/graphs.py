"""Undirected simple graphs on 0..n-1 with bitset adjacency.

A graph is (n, mask) where bit k of ``mask`` is the k-th unordered pair in
row-major order: (0,1), (0,2), ..., (0,n-1), (1,2), ...  Graphs are frozen
and safe to share across parallel workers; every operation returns a new
value.  Vertex count is capped at 12; full enumeration at 8; canonical forms
at 10.  The caps raise :class:`SizeGuardError` rather than crawling.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    DuplicateEdgeError,
    MalformedLineError,
    ParameterError,
    SelfLoopError,
    SizeGuardError,
    VertexRangeError,
)

MAX_VERTICES = 16
MAX_ENUMERATION = 8
MAX_CANONICAL = 10


class _Infinite:
    """Distinguished marker for the distance between disconnected vertices."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"


INFINITE = _Infinite()

# ---------------------------------------------------------------------------
# pair indexing

_PAIR_TABLES: dict[int, tuple[dict[tuple[int, int], int], list[tuple[int, int]]]] = {}


def _pair_table(n: int):
    cached = _PAIR_TABLES.get(n)
    if cached is None:
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        index = {p: k for k, p in enumerate(pairs)}
        cached = (index, pairs)
        _PAIR_TABLES[n] = cached
    return cached


def pair_index(n: int, i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return _pair_table(n)[0][(i, j)]


def pair_list(n: int) -> list[tuple[int, int]]:
    return _pair_table(n)[1]


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def build_adjacency(n: int, mask: int) -> tuple[int, ...]:
    """Per-vertex neighbor bitsets for a pair-mask graph."""
    adj = [0] * n
    m = mask
    pairs = pair_list(n)
    while m:
        low = m & -m
        i, j = pairs[low.bit_length() - 1]
        adj[i] |= 1 << j
        adj[j] |= 1 << i
        m ^= low
    return tuple(adj)


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# Graph value


@dataclass(frozen=True)
class Graph:
    n: int
    mask: int = 0

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise SizeGuardError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if self.mask >> pair_count(self.n):
            raise ParameterError("adjacency mask has bits beyond the last pair")

    # -- construction -------------------------------------------------------

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        mask = 0
        for i, j in edges:
            if i == j:
                raise SelfLoopError(f"self-loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise VertexRangeError(f"edge ({i},{j}) outside 0..{n - 1}")
            bit = 1 << pair_index(n, i, j)
            if mask & bit:
                raise DuplicateEdgeError(f"duplicate edge ({i},{j})")
            mask |= bit
        return Graph(n, mask)

    @staticmethod
    def empty(n: int) -> "Graph":
        return Graph(n, 0)

    @staticmethod
    def complete(n: int) -> "Graph":
        return Graph(n, (1 << pair_count(n)) - 1)

    @staticmethod
    def path(n: int) -> "Graph":
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @staticmethod
    def cycle(n: int) -> "Graph":
        if n < 3:
            raise ParameterError("cycle needs at least 3 vertices")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @staticmethod
    def complete_bipartite(a: int, b: int) -> "Graph":
        return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    @staticmethod
    def disjoint_union(g1: "Graph", g2: "Graph") -> "Graph":
        shift = g1.n
        edges = list(g1.edges()) + [(i + shift, j + shift) for i, j in g2.edges()]
        return Graph.from_edges(g1.n + g2.n, edges)

    # -- basic queries -------------------------------------------------------

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.mask >> pair_index(self.n, i, j) & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        pairs = pair_list(self.n)
        for k in bits(self.mask):
            yield pairs[k]

    def non_edges(self) -> Iterator[tuple[int, int]]:
        pairs = pair_list(self.n)
        for k, p in enumerate(pairs):
            if not self.mask >> k & 1:
                yield p

    def edge_count(self) -> int:
        return self.mask.bit_count()

    def adjacency(self) -> tuple[int, ...]:
        return build_adjacency(self.n, self.mask)

    def neighbors(self, i: int) -> list[int]:
        return list(bits(self.adjacency()[i]))

    def degree(self, i: int) -> int:
        return self.adjacency()[i].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adjacency()]

    def add_edge(self, i: int, j: int) -> "Graph":
        bit = 1 << pair_index(self.n, i, j)
        if self.mask & bit:
            raise ParameterError(f"edge ({i},{j}) already present")
        return Graph(self.n, self.mask | bit)

    def remove_edge(self, i: int, j: int) -> "Graph":
        bit = 1 << pair_index(self.n, i, j)
        if not self.mask & bit:
            raise ParameterError(f"edge ({i},{j}) not present")
        return Graph(self.n, self.mask ^ bit)

    def relabel(self, perm: tuple[int, ...]) -> "Graph":
        """Image of the graph under vertex i -> perm[i]."""
        return Graph(self.n, apply_permutation(self.n, self.mask, perm))


# ---------------------------------------------------------------------------
# reachability


def reachable_from(adj: tuple[int, ...], start_mask: int) -> int:
    seen = start_mask
    frontier = start_mask
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def component_masks(g: Graph) -> list[int]:
    adj = g.adjacency()
    remaining = (1 << g.n) - 1
    comps = []
    while remaining:
        start = remaining & -remaining
        comp = reachable_from(adj, start)
        comps.append(comp)
        remaining &= ~comp
    return comps


def component_of(g: Graph, i: int) -> int:
    return reachable_from(g.adjacency(), 1 << i)


def same_component(g: Graph, i: int, j: int) -> bool:
    return bool(component_of(g, i) >> j & 1)


def is_connected(g: Graph) -> bool:
    return component_of(g, 0) == (1 << g.n) - 1


def bfs_distances(adj: tuple[int, ...], src: int) -> list[int]:
    """Distances from src; -1 marks unreachable.  Internal helper."""
    n = len(adj)
    dist = [-1] * n
    dist[src] = 0
    seen = 1 << src
    frontier = seen
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        nxt &= ~seen
        for v in bits(nxt):
            dist[v] = d
        seen |= nxt
        frontier = nxt
    return dist


@dataclass(frozen=True)
class DistanceMatrix:
    n: int
    rows: tuple[tuple[object, ...], ...]  # entries are int or INFINITE

    def __getitem__(self, pair):
        i, j = pair
        return self.rows[i][j]


def distances(g: Graph) -> DistanceMatrix:
    adj = g.adjacency()
    rows = []
    for i in range(g.n):
        raw = bfs_distances(adj, i)
        rows.append(tuple(INFINITE if d < 0 else d for d in raw))
    return DistanceMatrix(g.n, tuple(rows))


# ---------------------------------------------------------------------------
# domination and bridges


def dominates(g: Graph, y: int, x: int) -> bool:
    """True iff every neighbor of x is y itself or a neighbor of y."""
    if x == y:
        raise ParameterError("domination is undefined on a vertex and itself")
    adj = g.adjacency()
    return adj[x] & ~(adj[y] | 1 << y) == 0


def is_bridge(g: Graph, i: int, j: int) -> bool:
    """For a present edge: removal disconnects its endpoints.
    For an absent pair: the endpoints lie in different components."""
    if g.has_edge(i, j):
        return not same_component(g.remove_edge(i, j), i, j)
    return not same_component(g, i, j)


# ---------------------------------------------------------------------------
# enumeration and canonical forms


def graph_count(n: int) -> int:
    return 1 << pair_count(n)


def enumerate_labeled_graphs(n: int, shard: tuple[int, int] | None = None) -> Iterator[Graph]:
    """All labeled graphs on n vertices in increasing mask order.

    ``shard=(k, total)`` yields only the k-th of ``total`` contiguous slices
    of the mask range, for independent parallel walkers.
    """
    if n > MAX_ENUMERATION:
        raise SizeGuardError(
            f"full enumeration capped at n={MAX_ENUMERATION} (got {n})"
        )
    total_graphs = graph_count(n)
    lo, hi = 0, total_graphs
    if shard is not None:
        k, total = shard
        if not (0 <= k < total):
            raise ParameterError(f"shard index {k} outside 0..{total - 1}")
        lo, hi = shard_bounds(total_graphs, k, total)
    for mask in range(lo, hi):
        yield Graph(n, mask)


def shard_bounds(total_graphs: int, k: int, total: int) -> tuple[int, int]:
    base, extra = divmod(total_graphs, total)
    lo = k * base + min(k, extra)
    hi = lo + base + (1 if k < extra else 0)
    return lo, hi


def apply_permutation(n: int, mask: int, perm: tuple[int, ...]) -> int:
    index, pairs = _pair_table(n)
    out = 0
    m = mask
    while m:
        low = m & -m
        i, j = pairs[low.bit_length() - 1]
        a, b = perm[i], perm[j]
        if a > b:
            a, b = b, a
        out |= 1 << index[(a, b)]
        m ^= low
    return out


def canonical_form(g: Graph) -> int:
    """Minimum adjacency mask over all vertex permutations.

    Two graphs are isomorphic iff their canonical forms are equal.  Intended
    for small found sets, not for whole-space deduplication.
    """
    if g.n > MAX_CANONICAL:
        raise SizeGuardError(f"canonical form capped at n={MAX_CANONICAL} (got {g.n})")
    best = g.mask
    for perm in itertools.permutations(range(g.n)):
        m = apply_permutation(g.n, g.mask, perm)
        if m < best:
            best = m
    return best


# ---------------------------------------------------------------------------
# I/O: edge-list text and graph6


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count()}"]
    lines.extend(f"{i} {j}" for i, j in g.edges())
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> Graph:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise MalformedLineError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise MalformedLineError(f"header must be 'n <count>', got {lines[0]!r}")
    try:
        n, count = int(head[0]), int(head[1])
    except ValueError:
        raise MalformedLineError(f"header must be 'n <count>', got {lines[0]!r}")
    if len(lines) - 1 != count:
        raise MalformedLineError(
            f"header announces {count} edges but {len(lines) - 1} lines follow"
        )
    mask = 0
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise MalformedLineError(f"edge line must be 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLineError(f"edge line must be 'u v', got {ln!r}")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"edge ({u},{v}) outside 0..{n - 1}")
        if u >= v:
            raise MalformedLineError(f"edge ({u},{v}) must be written with u < v")
        bit = 1 << pair_index(n, u, v)
        if mask & bit:
            raise DuplicateEdgeError(f"duplicate edge ({u},{v})")
        mask |= bit
    return Graph(n, mask)


def to_graph6(g: Graph) -> str:
    """Standard graph6 ASCII encoding (n <= 62)."""
    n = g.n
    out = [chr(n + 63)]
    # graph6 packs the upper triangle column by column: (0,1), (0,2), (1,2), ...
    bits_stream = []
    for j in range(1, n):
        for i in range(j):
            bits_stream.append(1 if g.has_edge(i, j) else 0)
    for k in range(0, len(bits_stream), 6):
        chunk = bits_stream[k : k + 6]
        chunk += [0] * (6 - len(chunk))
        val = 0
        for b in chunk:
            val = val << 1 | b
        out.append(chr(val + 63))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise MalformedLineError("empty graph6 input")
    n = ord(s[0]) - 63
    if not 1 <= n <= 62:
        raise MalformedLineError(f"unsupported graph6 vertex count byte {s[0]!r}")
    if n > MAX_VERTICES:
        raise SizeGuardError(f"graph6 input has n={n} > {MAX_VERTICES}")
    need = (pair_count(n) + 5) // 6
    body = s[1 : 1 + need]
    if len(body) != need:
        raise MalformedLineError("graph6 body truncated")
    stream = []
    for ch in body:
        val = ord(ch) - 63
        if not 0 <= val < 64:
            raise MalformedLineError(f"invalid graph6 byte {ch!r}")
        stream.extend((val >> k) & 1 for k in range(5, -1, -1))
    mask = 0
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if stream[pos]:
                mask |= 1 << pair_index(n, i, j)
            pos += 1
    return Graph(n, mask)
