"""Measure grammar strings and agent-profile JSON files.

Grammar: ``degree``, ``linear:<weightfile>``, ``closeness``, ``eccentricity``,
``rwcloseness``, ``decay:<p>/<q>``, ``harmonic``, ``betweenness``,
``rwbetweenness``, ``eigenvector``, ``katz:<alpha>``, ``pagerank:<damping>``,
``gametheoretic``.

Profile files hold an array of agent entries, each with a ``node`` index and
exactly one of ``measure`` (plus optional ``threshold``), ``rule``
(``1|1p|2|2p``) or ``homophily_f`` (``"gt"`` or ``{"table": [...]}``).
A top-level object form adds ``policy`` and a ``default`` entry applied to
nodes without their own row.
"""
from __future__ import annotations

import json
import os
from fractions import Fraction

from .centrality import APPROX_KINDS, Measure
from .errors import MeasureGrammarError, ProfileError
from .game import (
    Agent,
    ExactPolicy,
    GameSpec,
    HomophilicAgent,
    HomophilyFunction,
    MonotoneAgent,
    NumericAgent,
    TolerantPolicy,
)
from .truncation import read_weight_table
from .values import DEFAULT_TOLERANCE, format_rational, parse_rational

_PLAIN_KINDS = {
    "degree",
    "closeness",
    "eccentricity",
    "rwcloseness",
    "harmonic",
    "betweenness",
    "rwbetweenness",
    "eigenvector",
    "gametheoretic",
}


def parse_measure(text: str, base_dir: str | None = None) -> Measure:
    text = text.strip()
    kind, _, arg = text.partition(":")
    try:
        if kind in _PLAIN_KINDS:
            if arg:
                raise MeasureGrammarError(f"{kind} takes no parameter, got {arg!r}")
            return Measure(kind)
        if kind == "decay":
            if not arg:
                raise MeasureGrammarError("decay needs a rational parameter p/q")
            return Measure("decay", beta=parse_rational(arg))
        if kind == "katz":
            return Measure("katz", alpha=float(arg) if arg else None)
        if kind == "pagerank":
            return Measure("pagerank", damping=float(arg) if arg else 0.85)
        if kind == "linear":
            if not arg:
                raise MeasureGrammarError("linear needs a weight-table file")
            path = arg if base_dir is None else os.path.join(base_dir, arg)
            with open(path) as fh:
                return Measure("linear", weights=read_weight_table(fh.read()))
    except (ValueError, ZeroDivisionError) as exc:
        raise MeasureGrammarError(f"cannot parse measure {text!r}: {exc}")
    raise MeasureGrammarError(f"unknown measure {text!r}")


def measure_grammar(m: Measure) -> str:
    if m.kind == "decay":
        return f"decay:{format_rational(m.beta)}"
    if m.kind == "katz":
        return "katz" if m.alpha is None else f"katz:{m.alpha}"
    if m.kind == "pagerank":
        return f"pagerank:{0.85 if m.damping is None else m.damping}"
    if m.kind == "linear":
        return "linear:<inline>"
    return m.kind


def _parse_threshold(text) -> Fraction | None:
    if text is None or text == "inf":
        return None
    try:
        return parse_rational(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ProfileError(f"bad threshold {text!r}: {exc}")


def _entry_to_agent(entry: dict, base_dir: str | None) -> Agent:
    keys = [k for k in ("measure", "rule", "homophily_f") if k in entry]
    if len(keys) != 1:
        raise ProfileError(
            f"agent entry needs exactly one of measure/rule/homophily_f, got {entry!r}"
        )
    if "measure" in entry:
        measure = parse_measure(entry["measure"], base_dir)
        return NumericAgent(measure, _parse_threshold(entry.get("threshold")))
    if "threshold" in entry:
        raise ProfileError("thresholds apply to numeric agents only")
    if "rule" in entry:
        return MonotoneAgent(str(entry["rule"]))
    spec = entry["homophily_f"]
    if spec == "gt":
        return HomophilicAgent()
    if isinstance(spec, dict) and "table" in spec:
        return HomophilicAgent(HomophilyFunction(table=tuple(spec["table"])))
    raise ProfileError(f"homophily_f must be 'gt' or {{'table': [...]}}, got {spec!r}")


def _parse_policy(raw):
    if raw is None:
        return None
    if raw == "exact":
        return ExactPolicy()
    if isinstance(raw, dict) and "tolerant" in raw:
        return TolerantPolicy(float(raw["tolerant"]))
    raise ProfileError(f"policy must be 'exact' or {{'tolerant': tol}}, got {raw!r}")


def load_profile(text: str, n: int, base_dir: str | None = None) -> GameSpec:
    """Build the n-agent game described by a profile JSON document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProfileError(f"profile is not valid JSON: {exc}")
    if isinstance(doc, list):
        entries, default, policy_raw = doc, None, None
    elif isinstance(doc, dict):
        entries = doc.get("agents", [])
        default = doc.get("default")
        policy_raw = doc.get("policy")
    else:
        raise ProfileError("profile must be a JSON array or object")
    agents: list[Agent | None] = [None] * n
    for entry in entries:
        if "node" not in entry:
            raise ProfileError(f"agent entry without node index: {entry!r}")
        k = entry["node"]
        if not (isinstance(k, int) and 0 <= k < n):
            raise ProfileError(f"node index {k!r} outside 0..{n - 1}")
        if agents[k] is not None:
            raise ProfileError(f"duplicate entry for node {k}")
        agents[k] = _entry_to_agent(entry, base_dir)
    if default is not None:
        filler = _entry_to_agent(default, base_dir)
        agents = [a if a is not None else filler for a in agents]
    missing = [k for k, a in enumerate(agents) if a is None]
    if missing:
        raise ProfileError(f"no agent for nodes {missing} and no default entry")
    policy = _parse_policy(policy_raw)
    if policy is None:
        approx = any(
            isinstance(a, NumericAgent) and a.measure.kind in APPROX_KINDS
            for a in agents
        )
        policy = TolerantPolicy(DEFAULT_TOLERANCE) if approx else ExactPolicy()
    return GameSpec(tuple(agents), policy)


def load_profile_file(path: str, n: int) -> GameSpec:
    with open(path) as fh:
        return load_profile(fh.read(), n, base_dir=os.path.dirname(path) or ".")
