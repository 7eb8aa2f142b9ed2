"""Explainable MCTS engine: search, explanations and the session service."""

import json

from ._xmcts import (
    ConfigError,
    IllegalMoveError,
    ParseError,
    UsageError,
    format_percent,
    legal_moves,
    to_probability,
)
from . import _xmcts

__all__ = [
    "ConfigError",
    "IllegalMoveError",
    "ParseError",
    "UsageError",
    "Service",
    "analyze",
    "explain",
    "format_percent",
    "legal_moves",
    "to_probability",
]


def analyze(game, moves=(), candidate=None, size=None, enh="solver", iterations=1000, seed=0, verbosity=2):
    """Search the position after `moves` and return the explanation report as a dict."""
    return json.loads(
        _xmcts.analyze_json(game, list(moves), candidate, size, enh, iterations, seed, verbosity)
    )


def explain(snapshot, verbosity=2):
    """Explain a turn snapshot (dict or JSON text)."""
    text = snapshot if isinstance(snapshot, str) else json.dumps(snapshot)
    return json.loads(_xmcts.explain_json(text, verbosity))


class Service:
    """The HTTP protocol without a socket: handle(method, path, body) -> (status, dict)."""

    def __init__(self):
        self._impl = _xmcts.Service()

    def handle(self, method, path, body=None):
        text = "" if body is None else (body if isinstance(body, str) else json.dumps(body))
        status, out = self._impl.handle(method, path, text)
        return status, json.loads(out)

    def session_count(self):
        return self._impl.session_count()
