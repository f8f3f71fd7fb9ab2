"""Edge-flip game engine: utilities, improving moves and stability.

The asymptotic (edge cost -> 0+) semantics compile to sign conditions:

* an addition blocks stability iff both endpoints' centralities strictly
  increase (a zero gain minus a positive cost is a strict loss);
* a removal blocks stability iff at least one endpoint's centrality does
  not decrease (the saved cost then strictly improves its utility).

Rule-based agents answer the same questions structurally instead of
numerically: monotone types from the component/bridge geometry of the flip,
degree-homophilic agents from their threshold function on degrees.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .centrality import APPROX_KINDS, Measure, centrality_vector
from .errors import ContractError, ParameterError, SpecValidationError
from .graphs import Graph, component_masks, pair_list, reachable_from
from .values import (
    AMBIGUITY_BAND,
    DEFAULT_TOLERANCE,
    Approx,
    Exact,
    Value,
    value_to_json,
)

MONOTONE_KINDS = ("1", "1p", "2", "2p")


@dataclass(frozen=True)
class HomophilyFunction:
    """Strictly increasing integer threshold on the partner's degree.

    Either the closed form matching game-theoretic centrality
    (f(d) = (d+1)(d+2) - 3, so f(0) = -1) or an explicit value table
    indexed by degree.
    """

    table: tuple[int, ...] | None = None  # None = game-theoretic closed form

    def __post_init__(self):
        if self.table is not None:
            if len(self.table) < 1:
                raise ParameterError("homophily table must not be empty")
            for a, b in zip(self.table, self.table[1:]):
                if b <= a:
                    raise ParameterError("homophily table must be strictly increasing")

    def __call__(self, d: int) -> int:
        if self.table is None:
            return (d + 1) * (d + 2) - 3
        if d >= len(self.table):
            raise ParameterError(
                f"homophily table has no value for degree {d} (length {len(self.table)})"
            )
        return self.table[d]


GT_HOMOPHILY = HomophilyFunction()


@dataclass(frozen=True)
class NumericAgent:
    measure: Measure
    threshold: Fraction | None = None  # None = untruncated

    def __post_init__(self):
        if self.threshold is not None and self.threshold < 0:
            raise ParameterError("truncation threshold must be nonnegative")


@dataclass(frozen=True)
class MonotoneAgent:
    kind: str  # '1', '1p', '2', '2p'

    def __post_init__(self):
        if self.kind not in MONOTONE_KINDS:
            raise ParameterError(f"monotone agent kind must be one of {MONOTONE_KINDS}")


@dataclass(frozen=True)
class HomophilicAgent:
    f: HomophilyFunction = GT_HOMOPHILY


Agent = Union[NumericAgent, MonotoneAgent, HomophilicAgent]


@dataclass(frozen=True)
class ExactPolicy:
    pass


@dataclass(frozen=True)
class TolerantPolicy:
    tol: float = DEFAULT_TOLERANCE


Policy = Union[ExactPolicy, TolerantPolicy]


@dataclass(frozen=True)
class GameSpec:
    agents: tuple[Agent, ...]
    policy: Policy = ExactPolicy()

    def __post_init__(self):
        kinds = {
            agent.measure.kind in APPROX_KINDS
            for agent in self.agents
            if isinstance(agent, NumericAgent)
        }
        if kinds == {True, False}:
            raise SpecValidationError(
                "mixing exact and approximate measures in one game is rejected"
            )
        if kinds == {True} and isinstance(self.policy, ExactPolicy):
            raise SpecValidationError(
                "approximate (spectral) measures require the tolerant policy"
            )

    @property
    def n(self) -> int:
        return len(self.agents)

    def bind(self, g: Graph) -> None:
        if g.n != self.n:
            raise SpecValidationError(
                f"game has {self.n} agents but graph has {g.n} vertices"
            )


def uniform_game(n: int, agent: Agent, policy: Policy = ExactPolicy()) -> GameSpec:
    return GameSpec(tuple([agent] * n), policy)


# ---------------------------------------------------------------------------
# evaluation cache


class EvalCache:
    """Memo for per-graph centrality vectors and structural facts.

    Exhaustive scans revisit the same adjacency masks through edge flips, so
    one shared cache turns a census into one vector computation per graph.
    ``max_vectors`` bounds the vector memo with oldest-first eviction for
    walks over spaces too large to hold (two million graphs at n = 7).
    """

    def __init__(self, max_vectors: int | None = None):
        self.max_vectors = max_vectors
        self.vectors: dict[tuple[Measure, int, int], tuple] = {}
        self.facts: dict[tuple[int, int], tuple[list[int], frozenset, list[int]]] = {}

    def vector(self, m: Measure, g: Graph):
        key = (m, g.n, g.mask)
        out = self.vectors.get(key)
        if out is None:
            out = centrality_vector(m, g)
            if self.max_vectors is not None and len(self.vectors) >= self.max_vectors:
                self.vectors.pop(next(iter(self.vectors)))
            self.vectors[key] = out
        return out

    def graph_facts(self, g: Graph) -> tuple[list[int], frozenset, list[int]]:
        """(component bitmask per vertex, bridge edge set, degrees)."""
        key = (g.n, g.mask)
        out = self.facts.get(key)
        if out is None:
            adj = g.adjacency()
            comp_of = [0] * g.n
            for comp in component_masks(g):
                m = comp
                while m:
                    low = m & -m
                    comp_of[low.bit_length() - 1] = comp
                    m ^= low
            bridges = set()
            for i, j in g.edges():
                cut = list(adj)
                cut[i] &= ~(1 << j)
                cut[j] &= ~(1 << i)
                if not reachable_from(tuple(cut), 1 << i) >> j & 1:
                    bridges.add((i, j))
            degrees = [a.bit_count() for a in adj]
            out = (comp_of, frozenset(bridges), degrees)
            if self.max_vectors is not None and len(self.facts) >= self.max_vectors:
                self.facts.pop(next(iter(self.facts)))
            self.facts[key] = out
        return out


# ---------------------------------------------------------------------------
# deltas and sign classification


def _truncate(raw, threshold: Fraction | None):
    if threshold is None:
        return raw
    if isinstance(raw, Fraction):
        return min(raw, threshold)
    return min(float(raw), float(threshold))


def _agent_value(spec: GameSpec, g: Graph, k: int, cache: EvalCache):
    agent = spec.agents[k]
    if not isinstance(agent, NumericAgent):
        raise ContractError("centrality deltas are defined for numeric agents only")
    raw = cache.vector(agent.measure, g)[k]
    return _truncate(raw, agent.threshold)


def _delta_value(spec: GameSpec, before, after, k: int) -> Value:
    agent = spec.agents[k]
    if agent.measure.is_exact:
        return Exact(after - before)
    tol = spec.policy.tol if isinstance(spec.policy, TolerantPolicy) else DEFAULT_TOLERANCE
    return Approx(float(after) - float(before), tol)


def _classify(spec: GameSpec, delta: Value) -> tuple[int, bool]:
    """(-1|0|+1, in the near-band) under the game's numeric policy."""
    if isinstance(delta, Exact):
        d = delta.value
        return ((d > 0) - (d < 0), False)
    if isinstance(spec.policy, ExactPolicy):
        raise SpecValidationError("approximate delta under exact policy")
    tol = spec.policy.tol
    x = delta.value
    if abs(x) <= tol:
        return (0, False)
    return (1 if x > 0 else -1, abs(x) <= AMBIGUITY_BAND * tol)


def delta_add(
    spec: GameSpec, g: Graph, i: int, j: int, cache: EvalCache | None = None
) -> tuple[Value, Value]:
    """Truncated-centrality changes at both endpoints when edge ij is added."""
    spec.bind(g)
    if g.has_edge(i, j):
        raise ContractError(f"edge ({i},{j}) already present")
    cache = cache or EvalCache()
    h = g.add_edge(i, j)
    return (
        _delta_value(spec, _agent_value(spec, g, i, cache), _agent_value(spec, h, i, cache), i),
        _delta_value(spec, _agent_value(spec, g, j, cache), _agent_value(spec, h, j, cache), j),
    )


def delta_remove(
    spec: GameSpec, g: Graph, i: int, j: int, cache: EvalCache | None = None
) -> tuple[Value, Value]:
    spec.bind(g)
    if not g.has_edge(i, j):
        raise ContractError(f"edge ({i},{j}) not present")
    cache = cache or EvalCache()
    h = g.remove_edge(i, j)
    return (
        _delta_value(spec, _agent_value(spec, g, i, cache), _agent_value(spec, h, i, cache), i),
        _delta_value(spec, _agent_value(spec, g, j, cache), _agent_value(spec, h, j, cache), j),
    )


# ---------------------------------------------------------------------------
# willingness per agent kind


def _monotone_willing_add(kind: str, same_comp: bool) -> bool:
    if kind == "1":
        return True
    if kind == "1p":
        return False
    if kind == "2":
        return same_comp
    return not same_comp  # '2p'


def _monotone_willing_remove(kind: str, bridge: bool) -> bool:
    # Derived from the monotonicity axioms applied to the graph after the
    # removal: an increasing agent always strictly loses; a decreasing agent
    # always gains; a componentwise agent does not lose exactly when the
    # removal disconnects the pair; a peripheral agent exactly when it does not.
    if kind == "1":
        return False
    if kind == "1p":
        return True
    if kind == "2":
        return bridge
    return not bridge  # '2p'


@dataclass
class _FlipEval:
    blocking: bool
    ambiguous: bool  # the verdict relies on a near-band float delta
    delta_i: Optional[Value] = None
    delta_j: Optional[Value] = None


def _eval_add(spec: GameSpec, g: Graph, i: int, j: int, cache: EvalCache) -> _FlipEval:
    facts = None
    if not (isinstance(spec.agents[i], NumericAgent) and isinstance(spec.agents[j], NumericAgent)):
        facts = cache.graph_facts(g)
    # per endpoint: (willing, near-band)
    verdicts: list[tuple[bool, bool]] = []
    deltas: dict[int, Value] = {}
    h: Graph | None = None
    for k in (i, j):
        agent = spec.agents[k]
        if isinstance(agent, MonotoneAgent):
            same_comp = bool(facts[0][i] >> j & 1)
            verdicts.append((_monotone_willing_add(agent.kind, same_comp), False))
        elif isinstance(agent, HomophilicAgent):
            degrees = facts[2]
            other = j if k == i else i
            verdicts.append((degrees[other] <= agent.f(degrees[k]), False))
        else:
            if h is None:
                h = g.add_edge(i, j)
            delta = _delta_value(
                spec, _agent_value(spec, g, k, cache), _agent_value(spec, h, k, cache), k
            )
            deltas[k] = delta
            sign, band = _classify(spec, delta)
            verdicts.append((sign > 0, band))
    blocking = all(w for w, _ in verdicts)
    # A confident refusal by either endpoint settles the verdict no matter
    # what the other endpoint's band says.
    if any(not w and not band for w, band in verdicts):
        ambiguous = False
    else:
        ambiguous = any(band for _, band in verdicts)
    return _FlipEval(blocking, ambiguous, deltas.get(i), deltas.get(j))


def _eval_remove(spec: GameSpec, g: Graph, i: int, j: int, cache: EvalCache) -> _FlipEval:
    facts = None
    if not (isinstance(spec.agents[i], NumericAgent) and isinstance(spec.agents[j], NumericAgent)):
        facts = cache.graph_facts(g)
    verdicts: list[tuple[bool, bool]] = []  # (endpoint benefits, near-band)
    deltas: dict[int, Value] = {}
    h: Graph | None = None
    for k in (i, j):
        agent = spec.agents[k]
        if isinstance(agent, MonotoneAgent):
            bridges = facts[1]
            bridge = (i, j) in bridges or (j, i) in bridges
            verdicts.append((_monotone_willing_remove(agent.kind, bridge), False))
        elif isinstance(agent, HomophilicAgent):
            degrees = facts[2]
            other = j if k == i else i
            verdicts.append((degrees[other] - 1 > agent.f(degrees[k] - 1), False))
        else:
            if h is None:
                h = g.remove_edge(i, j)
            delta = _delta_value(
                spec, _agent_value(spec, g, k, cache), _agent_value(spec, h, k, cache), k
            )
            deltas[k] = delta
            sign, band = _classify(spec, delta)
            verdicts.append((sign >= 0, band))
    blocking = any(w for w, _ in verdicts)
    # One confidently nonnegative endpoint settles the removal verdict.
    if any(w and not band for w, band in verdicts):
        ambiguous = False
    else:
        ambiguous = any(band for _, band in verdicts)
    return _FlipEval(blocking, ambiguous, deltas.get(i), deltas.get(j))


def improving_add(
    spec: GameSpec, g: Graph, i: int, j: int, cache: EvalCache | None = None
) -> bool:
    spec.bind(g)
    if g.has_edge(i, j):
        raise ContractError(f"edge ({i},{j}) already present")
    return _eval_add(spec, g, i, j, cache or EvalCache()).blocking


def improving_remove(
    spec: GameSpec, g: Graph, i: int, j: int, cache: EvalCache | None = None
) -> bool:
    spec.bind(g)
    if not g.has_edge(i, j):
        raise ContractError(f"edge ({i},{j}) not present")
    return _eval_remove(spec, g, i, j, cache or EvalCache()).blocking


# ---------------------------------------------------------------------------
# stability


@dataclass(frozen=True)
class Flip:
    i: int
    j: int
    kind: str  # 'add' | 'remove'
    delta_i: Optional[Value] = None
    delta_j: Optional[Value] = None

    def to_json(self) -> dict:
        return {
            "edge": [self.i, self.j],
            "kind": self.kind,
            "delta_i": value_to_json(self.delta_i) if self.delta_i is not None else None,
            "delta_j": value_to_json(self.delta_j) if self.delta_j is not None else None,
        }


@dataclass
class StabilityReport:
    stable: bool
    blocking_flips: list[Flip] = field(default_factory=list)
    ambiguous_flips: list[Flip] = field(default_factory=list)
    confident_block: bool = False

    @property
    def verdict(self) -> str:
        """'stable' | 'unstable' | 'ambiguous' (no confident block, bands seen)."""
        if self.confident_block:
            return "unstable"
        if self.ambiguous_flips:
            return "ambiguous"
        return "stable" if self.stable else "unstable"

    def to_json(self) -> dict:
        return {
            "stable": self.stable,
            "verdict": self.verdict,
            "blocking_flips": [f.to_json() for f in self.blocking_flips],
            "ambiguous_flips": [f.to_json() for f in self.ambiguous_flips],
        }


def candidate_flips(g: Graph) -> list[tuple[str, int, int]]:
    """Fixed deterministic flip order: additions by pair index, then removals."""
    order = []
    for i, j in pair_list(g.n):
        if not g.has_edge(i, j):
            order.append(("add", i, j))
    for i, j in pair_list(g.n):
        if g.has_edge(i, j):
            order.append(("remove", i, j))
    return order


def is_apsn(
    spec: GameSpec,
    g: Graph,
    cache: EvalCache | None = None,
    early_exit: bool = False,
) -> StabilityReport:
    """Stability verdict with the full list of blocking flips.

    With ``early_exit`` the scan aborts at the first confidently blocking
    flip (census mode); flips seen until then are still reported.
    """
    spec.bind(g)
    cache = cache or EvalCache()
    report = StabilityReport(stable=True)
    for kind, i, j in candidate_flips(g):
        ev = (
            _eval_add(spec, g, i, j, cache)
            if kind == "add"
            else _eval_remove(spec, g, i, j, cache)
        )
        flip = Flip(i, j, kind, ev.delta_i, ev.delta_j)
        if ev.ambiguous:
            report.ambiguous_flips.append(flip)
        if ev.blocking:
            report.blocking_flips.append(flip)
            report.stable = False
            if not ev.ambiguous:
                report.confident_block = True
                if early_exit:
                    return report
    return report


# ---------------------------------------------------------------------------
# finite-cost bridge


def _numeric_exact_only(spec: GameSpec) -> None:
    for agent in spec.agents:
        if not isinstance(agent, NumericAgent) or not agent.measure.is_exact:
            raise ContractError(
                "finite-cost checks are defined for exact numeric agents only"
            )


def finite_cost_check(
    spec: GameSpec, g: Graph, cost: Fraction, cache: EvalCache | None = None
) -> bool:
    """Pairwise stability at one explicit positive edge cost."""
    spec.bind(g)
    _numeric_exact_only(spec)
    if cost <= 0:
        raise ParameterError("edge cost must be positive")
    cache = cache or EvalCache()
    for kind, i, j in candidate_flips(g):
        if kind == "add":
            di, dj = delta_add(spec, g, i, j, cache)
            ui, uj = di.value - cost, dj.value - cost
            if ui >= 0 and uj >= 0 and (ui > 0 or uj > 0):
                return False
        else:
            di, dj = delta_remove(spec, g, i, j, cache)
            if di.value + cost > 0 or dj.value + cost > 0:
                return False
    return True


def epsilon_witness(spec: GameSpec, g: Graph, cache: EvalCache | None = None) -> Fraction:
    """Half the minimum positive |delta| over all flips; 1 when all deltas
    vanish (any positive cost then behaves identically)."""
    spec.bind(g)
    _numeric_exact_only(spec)
    cache = cache or EvalCache()
    best: Fraction | None = None
    for kind, i, j in candidate_flips(g):
        deltas = (
            delta_add(spec, g, i, j, cache)
            if kind == "add"
            else delta_remove(spec, g, i, j, cache)
        )
        for d in deltas:
            mag = abs(d.value)
            if mag > 0 and (best is None or mag < best):
                best = mag
    return Fraction(1) if best is None else best / 2


# ---------------------------------------------------------------------------
# best-response dynamics


@dataclass
class Trajectory:
    steps: list[Flip]
    final: Graph
    converged: bool

    def to_json(self) -> dict:
        from .graphs import to_graph6

        return {
            "steps": [f.to_json() for f in self.steps],
            "final": to_graph6(self.final),
            "converged": self.converged,
        }


def best_response_dynamics(
    spec: GameSpec,
    g0: Graph,
    max_steps: int,
    seed: int,
    rule: str = "random",
    cache: EvalCache | None = None,
) -> Trajectory:
    """Apply improving flips until none exists or the step budget runs out.

    ``rule='first'`` always takes the first blocking flip in the fixed scan
    order; ``rule='random'`` draws uniformly among all blocking flips with a
    deterministic seeded generator.
    """
    if rule not in ("random", "first"):
        raise ParameterError("dynamics rule must be 'random' or 'first'")
    spec.bind(g0)
    cache = cache or EvalCache()
    rng = random.Random(seed)
    g = g0
    steps: list[Flip] = []
    for _ in range(max_steps):
        report = is_apsn(spec, g, cache, early_exit=(rule == "first"))
        if report.stable:
            return Trajectory(steps, g, True)
        flip = (
            report.blocking_flips[0]
            if rule == "first"
            else rng.choice(report.blocking_flips)
        )
        steps.append(flip)
        g = g.add_edge(flip.i, flip.j) if flip.kind == "add" else g.remove_edge(flip.i, flip.j)
    final_report = is_apsn(spec, g, cache, early_exit=True)
    return Trajectory(steps, g, final_report.stable)
