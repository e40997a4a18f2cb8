"""Exact arithmetic checks for recognizing sporadic simple groups by order and prime graph."""

from .factored import FactoredInteger, factor
from .groups import GroupId, order, out_order, parse_group
from .enumeration import exceptional_divisors, simple_divisors
from .primegraph import build_graph, graph_of
from .filters import kill_candidate, refute_frobenius, verify_characterization
from .claims import load_claims, replay_claims

__all__ = [
    "FactoredInteger",
    "factor",
    "GroupId",
    "order",
    "out_order",
    "parse_group",
    "simple_divisors",
    "exceptional_divisors",
    "build_graph",
    "graph_of",
    "refute_frobenius",
    "kill_candidate",
    "verify_characterization",
    "load_claims",
    "replay_claims",
]

__version__ = "0.1.0"
