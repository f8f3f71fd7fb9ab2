"""Centrality measures with exact rational arithmetic wherever possible.

Exact measures return Fractions; spectral measures (eigenvector, Katz,
PageRank) return floats and are tagged approximate.  Brute-force oracles
(`brute_shapley`, `brute_betweenness`) are deliberately independent
implementations kept for cross-checking the fast paths.

Conventions for degenerate inputs, applied consistently throughout:

* closeness, random-walk closeness and eccentricity of an isolated vertex
  are 0 (their defining expressions divide by an empty sum there);
* decay and harmonic sums skip unreachable vertices (a vanishing
  contribution at infinite distance);
* betweenness sums over unordered pairs {y, z} with y != i != z, and a
  disconnected pair contributes 0.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConvergenceError, ParameterError, SizeGuardError
from .graphs import (
    Graph,
    bfs_distances,
    bits,
    component_masks,
    is_connected,
    reachable_from,
)
from .linalg import solve_rational
from .values import Approx, Exact, Value

EXACT_KINDS = frozenset(
    {
        "degree",
        "linear",
        "closeness",
        "eccentricity",
        "rwcloseness",
        "decay",
        "harmonic",
        "betweenness",
        "rwbetweenness",
        "gametheoretic",
    }
)
APPROX_KINDS = frozenset({"eigenvector", "katz", "pagerank"})

#: Measures whose defining formula is a reciprocal of an (empty) sum at
#: isolated vertices; their conventional 0 there is excluded from axiom and
#: monotonicity checks because the formula itself is undefined at that point.
UNDEFINED_ON_ISOLATED = frozenset({"closeness", "rwcloseness", "eccentricity"})

EIG_TOLERANCE = 1e-12
EIG_MAX_ITER = 10**6
PAGERANK_TOLERANCE = 1e-12
PAGERANK_MAX_ITER = 10**6
BRUTE_CAP = 7


@dataclass(frozen=True)
class Measure:
    kind: str
    beta: Fraction | None = None  # decay
    alpha: float | None = None  # katz; None = auto
    damping: float | None = None  # pagerank
    weights: tuple[tuple[int, ...], ...] | None = None  # linear

    def __post_init__(self):
        if self.kind not in EXACT_KINDS | APPROX_KINDS:
            raise ParameterError(f"unknown measure kind {self.kind!r}")
        if self.kind == "decay":
            if self.beta is None or not (0 < self.beta < 1):
                raise ParameterError("decay requires a rational beta with 0 < beta < 1")
        if self.kind == "katz" and self.alpha is not None:
            if not (0 < self.alpha < 1):
                raise ParameterError("katz alpha must satisfy 0 < alpha < 1")
        if self.kind == "pagerank":
            d = 0.85 if self.damping is None else self.damping
            if not (0 < d < 1):
                raise ParameterError("pagerank damping must be in (0, 1)")
        if self.kind == "linear":
            w = self.weights
            if w is None:
                raise ParameterError("linear centrality requires a weight table")
            size = len(w)
            for i, row in enumerate(w):
                if len(row) != size:
                    raise ParameterError("weight table must be square")
                for j, x in enumerate(row):
                    if not isinstance(x, int) or x < 0:
                        raise ParameterError("linear weights are nonnegative integers")
                    if x != w[j][i]:
                        raise ParameterError("weight table must be symmetric")
                if row[i] != 0:
                    raise ParameterError("weight table diagonal must be zero")

    @property
    def is_exact(self) -> bool:
        return self.kind in EXACT_KINDS


def degree() -> Measure:
    return Measure("degree")


def linear(weights) -> Measure:
    return Measure("linear", weights=tuple(tuple(row) for row in weights))


def closeness() -> Measure:
    return Measure("closeness")


def eccentricity() -> Measure:
    return Measure("eccentricity")


def rw_closeness() -> Measure:
    return Measure("rwcloseness")


def decay(beta) -> Measure:
    return Measure("decay", beta=Fraction(beta))


def harmonic() -> Measure:
    return Measure("harmonic")


def betweenness() -> Measure:
    return Measure("betweenness")


def rw_betweenness() -> Measure:
    return Measure("rwbetweenness")


def eigenvector() -> Measure:
    return Measure("eigenvector")


def katz(alpha: float | None = None) -> Measure:
    return Measure("katz", alpha=alpha)


def pagerank(damping: float = 0.85) -> Measure:
    return Measure("pagerank", damping=damping)


def game_theoretic() -> Measure:
    return Measure("gametheoretic")


# ---------------------------------------------------------------------------
# shortest-path machinery shared by several measures


def all_pairs(adj: tuple[int, ...]) -> list[list[int]]:
    return [bfs_distances(adj, s) for s in range(len(adj))]


def path_counts(adj: tuple[int, ...]) -> tuple[list[list[int]], list[list[int]]]:
    """(dist, sigma): shortest-path lengths and counts from every source."""
    n = len(adj)
    dist = []
    sigma = []
    for s in range(n):
        d = [-1] * n
        sig = [0] * n
        d[s] = 0
        sig[s] = 1
        frontier = [s]
        level = 0
        while frontier:
            level += 1
            nxt = []
            for v in frontier:
                for w in bits(adj[v]):
                    if d[w] == -1:
                        d[w] = level
                        nxt.append(w)
                    if d[w] == level:
                        sig[w] += sig[v]
            frontier = nxt
        dist.append(d)
        sigma.append(sig)
    return dist, sigma


# ---------------------------------------------------------------------------
# exact vectors


def _degree_vector(g: Graph) -> tuple[Fraction, ...]:
    return tuple(Fraction(d) for d in g.degrees())


def _linear_vector(g: Graph, weights) -> tuple[Fraction, ...]:
    if len(weights) != g.n:
        raise ParameterError(f"weight table is {len(weights)}x{len(weights)}, graph has n={g.n}")
    adj = g.adjacency()
    return tuple(
        Fraction(sum(weights[i][j] for j in bits(adj[i]))) for i in range(g.n)
    )


def _closeness_vector(g: Graph) -> tuple[Fraction, ...]:
    adj = g.adjacency()
    out = []
    for i in range(g.n):
        dist = bfs_distances(adj, i)
        total = sum(d for d in dist if d > 0)
        out.append(Fraction(1, total) if total else Fraction(0))
    return tuple(out)


def _harmonic_vector(g: Graph) -> tuple[Fraction, ...]:
    adj = g.adjacency()
    out = []
    for i in range(g.n):
        dist = bfs_distances(adj, i)
        out.append(sum((Fraction(1, d) for d in dist if d > 0), Fraction(0)))
    return tuple(out)


def _decay_vector(g: Graph, beta: Fraction) -> tuple[Fraction, ...]:
    adj = g.adjacency()
    out = []
    for i in range(g.n):
        dist = bfs_distances(adj, i)
        out.append(sum((beta**d for d in dist if d > 0), Fraction(0)))
    return tuple(out)


def _eccentricity_vector(g: Graph) -> tuple[Fraction, ...]:
    # (n-1) / max distance within the own component; 0 for isolated vertices.
    adj = g.adjacency()
    out = []
    for i in range(g.n):
        dist = bfs_distances(adj, i)
        far = max((d for d in dist if d > 0), default=0)
        out.append(Fraction(g.n - 1, far) if far else Fraction(0))
    return tuple(out)


def _betweenness_vector(g: Graph) -> tuple[Fraction, ...]:
    adj = g.adjacency()
    dist, sigma = path_counts(adj)
    bet = [Fraction(0)] * g.n
    for y in range(g.n):
        dy = dist[y]
        sy = sigma[y]
        for z in range(y + 1, g.n):
            dyz = dy[z]
            if dyz <= 1:
                continue  # disconnected or adjacent pairs route through nobody
            syz = sy[z]
            for i in range(g.n):
                if i == y or i == z:
                    continue
                if dy[i] > 0 and dist[i][z] > 0 and dy[i] + dist[i][z] == dyz:
                    inner = sy[i] * sigma[i][z]
                    if inner:
                        bet[i] += Fraction(inner, syz)
    return tuple(bet)


def _gametheoretic_vector(g: Graph) -> tuple[Fraction, ...]:
    adj = g.adjacency()
    deg = [a.bit_count() for a in adj]
    out = []
    for i in range(g.n):
        total = Fraction(1, deg[i] + 1)
        for j in bits(adj[i]):
            total += Fraction(1, deg[j] + 1)
        out.append(total)
    return tuple(out)


def hitting_times(g: Graph, target: int) -> dict[int, Fraction]:
    """Expected steps for a walk from each vertex of Conn(target) to first
    hit the target, solved exactly."""
    adj = g.adjacency()
    comp = reachable_from(adj, 1 << target)
    members = [v for v in bits(comp) if v != target]
    if not members:
        return {target: Fraction(0)}
    index = {v: k for k, v in enumerate(members)}
    size = len(members)
    matrix = [[Fraction(0)] * size for _ in range(size)]
    rhs = [Fraction(1)] * size
    for v in members:
        r = index[v]
        d = adj[v].bit_count()
        matrix[r][r] = Fraction(1)
        for w in bits(adj[v]):
            if w != target:
                matrix[r][index[w]] -= Fraction(1, d)
    sol = solve_rational(matrix, rhs)
    out = {target: Fraction(0)}
    out.update({v: sol[index[v]] for v in members})
    return out


def _rwcloseness_vector(g: Graph) -> tuple[Fraction, ...]:
    out = []
    for i in range(g.n):
        ht = hitting_times(g, i)
        total = sum(ht.values(), Fraction(0))
        out.append(Fraction(1) / total if total else Fraction(0))
    return tuple(out)


def absorption_probabilities(g: Graph, hit: int, avoid: int) -> dict[int, Fraction]:
    """P[walk from v reaches `hit` before `avoid`] for all v, exactly.

    Within a component containing both special vertices this is the standard
    absorbing-walk solve.  A walk in a component containing `hit` but not
    `avoid` reaches `hit` with probability 1 (finite recurrence); a walk in a
    component without `hit` never does.
    """
    adj = g.adjacency()
    comp_hit = reachable_from(adj, 1 << hit)
    probs: dict[int, Fraction] = {}
    if not comp_hit >> avoid & 1:
        for v in range(g.n):
            probs[v] = Fraction(1) if comp_hit >> v & 1 else Fraction(0)
        probs[avoid] = Fraction(0)
        return probs
    members = [v for v in bits(comp_hit) if v not in (hit, avoid)]
    index = {v: k for k, v in enumerate(members)}
    size = len(members)
    sol: list[Fraction] = []
    if size:
        matrix = [[Fraction(0)] * size for _ in range(size)]
        rhs = [Fraction(0)] * size
        for v in members:
            r = index[v]
            d = adj[v].bit_count()
            matrix[r][r] = Fraction(1)
            for w in bits(adj[v]):
                if w == hit:
                    rhs[r] += Fraction(1, d)
                elif w != avoid:
                    matrix[r][index[w]] -= Fraction(1, d)
        sol = solve_rational(matrix, rhs)
    for v in range(g.n):
        if v == hit:
            probs[v] = Fraction(1)
        elif v == avoid:
            probs[v] = Fraction(0)
        elif comp_hit >> v & 1:
            probs[v] = sol[index[v]]
        else:
            probs[v] = Fraction(0)
    return probs


def _rwbetweenness_vector(g: Graph) -> tuple[Fraction, ...]:
    """Sum over ordered pairs (j, k) of the probability that a walk started
    at j with absorbing vertex k passes through i.  Pairs not sharing a
    component with i contribute 0 (no walk from j can both reach i and be
    absorbed at k)."""
    comps = component_masks(g)
    out = []
    for i in range(g.n):
        comp = next(c for c in comps if c >> i & 1)
        others = [v for v in bits(comp) if v != i]
        total = Fraction(0)
        for k in others:
            probs = absorption_probabilities(g, hit=i, avoid=k)
            for j in others:
                if j != k:
                    total += probs[j]
        out.append(total)
    return tuple(out)


# ---------------------------------------------------------------------------
# approximate vectors


def _adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for i, j in g.edges():
        a[i, j] = a[j, i] = 1.0
    return a


def spectral_radius_bound(g: Graph) -> int:
    return max(1, max(g.degrees(), default=0))


def is_spectrally_degenerate(g: Graph) -> bool:
    """Eigenvector centrality is only defined up to component choice on
    disconnected graphs; callers flag such inputs in reports."""
    return not is_connected(g)


def _eigenvector_vector(g: Graph) -> tuple[float, ...]:
    n = g.n
    if g.mask == 0:
        # zero matrix: power iteration below would stall on the unit shift,
        # and any vector is an eigenvector; report the uniform one.
        return tuple([1.0 / math.sqrt(n)] * n)
    a = _adjacency_matrix(g)
    # The unit shift keeps eigenvectors, makes the dominant eigenvalue unique
    # in magnitude (bipartite adjacency spectra are symmetric around 0, which
    # makes unshifted power iteration oscillate forever).
    shifted = a + np.eye(n)
    x = np.full(n, 1.0 / math.sqrt(n))
    for _ in range(EIG_MAX_ITER):
        y = shifted @ x
        y /= np.linalg.norm(y)
        if np.max(np.abs(y - x)) < EIG_TOLERANCE:
            return tuple(float(v) for v in y)
        x = y
    raise ConvergenceError("eigenvector power iteration did not converge")


def _resolve_katz_alpha(m: Measure, g: Graph) -> float:
    if m.alpha is not None:
        lam = float(np.max(np.abs(np.linalg.eigvalsh(_adjacency_matrix(g))))) if g.mask else 0.0
        if m.alpha * lam >= 1:
            raise ParameterError(
                f"katz alpha {m.alpha} times spectral radius {lam:.6f} is >= 1"
            )
        return m.alpha
    return 1.0 / (2.0 * spectral_radius_bound(g))


def _katz_vector(g: Graph, m: Measure) -> tuple[float, ...]:
    alpha = _resolve_katz_alpha(m, g)
    a = _adjacency_matrix(g)
    rhs = alpha * (a @ np.ones(g.n))
    sol = np.linalg.solve(np.eye(g.n) - alpha * a, rhs)
    return tuple(float(v) for v in sol)


def _pagerank_vector(g: Graph, damping: float | None) -> tuple[float, ...]:
    d = 0.85 if damping is None else damping
    n = g.n
    adj = g.adjacency()
    degs = [a.bit_count() for a in adj]
    p = [1.0 / n] * n
    for _ in range(PAGERANK_MAX_ITER):
        dangling = sum(p[u] for u in range(n) if degs[u] == 0)
        base = (1.0 - d) / n + d * dangling / n
        nxt = [base] * n
        for u in range(n):
            if degs[u]:
                share = d * p[u] / degs[u]
                for w in bits(adj[u]):
                    nxt[w] += share
        if max(abs(a - b) for a, b in zip(nxt, p)) < PAGERANK_TOLERANCE:
            return tuple(nxt)
        p = nxt
    raise ConvergenceError("pagerank power iteration did not converge")


# ---------------------------------------------------------------------------
# public entry points


def centrality_vector(m: Measure, g: Graph):
    """All vertices' centrality values as raw numbers (Fraction or float)."""
    kind = m.kind
    if kind == "degree":
        return _degree_vector(g)
    if kind == "linear":
        return _linear_vector(g, m.weights)
    if kind == "closeness":
        return _closeness_vector(g)
    if kind == "eccentricity":
        return _eccentricity_vector(g)
    if kind == "rwcloseness":
        return _rwcloseness_vector(g)
    if kind == "decay":
        return _decay_vector(g, m.beta)
    if kind == "harmonic":
        return _harmonic_vector(g)
    if kind == "betweenness":
        return _betweenness_vector(g)
    if kind == "rwbetweenness":
        return _rwbetweenness_vector(g)
    if kind == "gametheoretic":
        return _gametheoretic_vector(g)
    if kind == "eigenvector":
        return _eigenvector_vector(g)
    if kind == "katz":
        return _katz_vector(g, m)
    if kind == "pagerank":
        return _pagerank_vector(g, m.damping)
    raise ParameterError(f"unknown measure kind {kind!r}")


def centrality(m: Measure, g: Graph, i: int, tol: float = 1e-9) -> Value:
    if not 0 <= i < g.n:
        raise ParameterError(f"vertex {i} outside 0..{g.n - 1}")
    raw = centrality_vector(m, g)[i]
    return Exact(raw) if m.is_exact else Approx(float(raw), tol)


# ---------------------------------------------------------------------------
# independent brute-force oracles


def coverage_value(adj_closed: list[int], coalition_mask: int) -> int:
    """|S union N(S)| as the popcount of the union of closed neighborhoods."""
    cover = 0
    for v in bits(coalition_mask):
        cover |= adj_closed[v]
    return cover.bit_count()


def brute_shapley(g: Graph, i: int) -> Fraction:
    """Shapley value of vertex i in the coverage game, averaged over every
    ordering of the players.  Independent of the closed-form path."""
    if g.n > BRUTE_CAP:
        raise SizeGuardError(f"brute shapley capped at n={BRUTE_CAP}")
    adj = g.adjacency()
    closed = [adj[v] | 1 << v for v in range(g.n)]
    total = 0
    for order in itertools.permutations(range(g.n)):
        cover = 0
        for v in order:
            new = cover | closed[v]
            if v == i:
                total += new.bit_count() - cover.bit_count()
                break
            cover = new
    return Fraction(total, math.factorial(g.n))


def _all_simple_paths(adj: tuple[int, ...], src: int, dst: int):
    stack = [(src, 1 << src, (src,))]
    while stack:
        v, seen, path = stack.pop()
        if v == dst:
            yield path
            continue
        for w in bits(adj[v] & ~seen):
            stack.append((w, seen | 1 << w, path + (w,)))


def brute_betweenness(g: Graph, i: int) -> Fraction:
    """Betweenness from full enumeration of simple paths per pair."""
    if g.n > BRUTE_CAP:
        raise SizeGuardError(f"brute betweenness capped at n={BRUTE_CAP}")
    adj = g.adjacency()
    total = Fraction(0)
    for y in range(g.n):
        for z in range(y + 1, g.n):
            if i in (y, z):
                continue
            paths = list(_all_simple_paths(adj, y, z))
            if not paths:
                continue
            shortest = min(len(p) for p in paths)
            on_shortest = [p for p in paths if len(p) == shortest]
            through = sum(1 for p in on_shortest if i in p)
            if through:
                total += Fraction(through, len(on_shortest))
    return total
