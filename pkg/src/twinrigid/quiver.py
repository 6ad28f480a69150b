"""Quivers whose underlying graph is a simply-laced Dynkin diagram."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Any

from .errors import UnsupportedAlgebraError, UsageError


def dynkin_type(n: int, edges) -> str:
    """Name the Dynkin diagram (``"A3"``, ``"D4"``, ``"E6"``...) of an undirected graph.

    Raises UnsupportedAlgebraError for anything that is not a connected
    simply-laced Dynkin diagram.
    """
    if n < 1:
        raise UnsupportedAlgebraError("a quiver needs at least one vertex")
    adj = {v: set() for v in range(1, n + 1)}
    for s, t in edges:
        if s == t:
            raise UnsupportedAlgebraError(f"loop at vertex {s}")
        if t in adj[s]:
            raise UnsupportedAlgebraError(f"multiple edges between {s} and {t}")
        adj[s].add(t)
        adj[t].add(s)
    if len(edges) != n - 1:
        raise UnsupportedAlgebraError("underlying graph is not a tree")
    seen, stack = {1}, [1]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        raise UnsupportedAlgebraError("underlying graph is not connected")

    branch = [v for v in adj if len(adj[v]) >= 3]
    if not branch:
        return f"A{n}"
    if len(branch) > 1 or len(adj[branch[0]]) > 3:
        raise UnsupportedAlgebraError("underlying graph is not Dynkin")
    c = branch[0]
    arms = []
    for start in sorted(adj[c]):
        length, prev, cur = 1, c, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    a, b, d = sorted(arms)
    if (a, b) == (1, 1):
        return f"D{n}"
    if (a, b) == (1, 2) and d in (2, 3, 4):
        return f"E{n}"
    raise UnsupportedAlgebraError(f"underlying graph with arms {sorted(arms)} is not Dynkin")


@dataclass(frozen=True)
class Quiver:
    """Vertices ``1..n`` and arrows ``(source, target)``, validated as Dynkin."""

    n: int
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        arrows = tuple((int(s), int(t)) for s, t in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        for s, t in arrows:
            if not (1 <= s <= self.n and 1 <= t <= self.n):
                raise UsageError(f"arrow ({s},{t}) uses a vertex outside 1..{self.n}")
        object.__setattr__(self, "kind", dynkin_type(self.n, arrows))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def opposite(self) -> "Quiver":
        return Quiver(self.n, tuple((t, s) for s, t in self.arrows))

    def is_sink(self, v: int) -> bool:
        return all(s != v for s, _ in self.arrows)

    def is_source(self, v: int) -> bool:
        return all(t != v for _, t in self.arrows)

    def reflect(self, v: int) -> "Quiver":
        """Reverse every arrow incident to ``v``; arrow indices are preserved."""
        return Quiver(self.n, tuple((t, s) if v in (s, t) else (s, t) for s, t in self.arrows))

    def sink_order(self) -> list[int]:
        """Vertices ordered so each is a sink after reflecting at the previous ones."""
        order, q = [], self
        remaining = set(self.vertices)
        while remaining:
            v = min(u for u in remaining if q.is_sink(u))
            order.append(v)
            remaining.discard(v)
            q = q.reflect(v)
        return order

    @cached_property
    def path_counts(self) -> tuple[tuple[int, ...], ...]:
        """``path_counts[v-1][w-1]`` is the number of paths from v to w."""
        n = self.n
        counts = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        succ = {v: [t for s, t in self.arrows if s == v] for v in self.vertices}
        order = []
        state = {}

        def visit(v):
            state[v] = 1
            for w in succ[v]:
                if state.get(w) is None:
                    visit(w)
            order.append(v)

        for v in self.vertices:
            if v not in state:
                visit(v)
        for v in order:  # successors first
            for w in succ[v]:
                for u in range(n):
                    counts[v - 1][u] += counts[w - 1][u]
        return tuple(tuple(r) for r in counts)

    def to_json(self) -> dict[str, Any]:
        return {"vertices": self.n, "arrows": [list(a) for a in self.arrows]}

    def __str__(self) -> str:
        arrows = ", ".join(f"{s}->{t}" for s, t in self.arrows)
        return f"{self.kind}[{arrows}]"


def parse_quiver(data: dict[str, Any] | str) -> Quiver:
    """Build a Quiver from ``{"vertices": n, "arrows": [[s, t], ...]}`` (dict or JSON text)."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise UsageError(f"quiver is not valid JSON: {exc}") from None
    if not isinstance(data, dict) or "vertices" not in data:
        raise UsageError('quiver description must be an object with "vertices" and "arrows"')
    n = data["vertices"]
    arrows = data.get("arrows", [])
    if not isinstance(n, int) or isinstance(n, bool):
        raise UsageError('"vertices" must be an integer')
    if not isinstance(arrows, list) or not all(
        isinstance(a, (list, tuple)) and len(a) == 2 and all(isinstance(x, int) for x in a) for a in arrows
    ):
        raise UsageError('"arrows" must be a list of [source, target] integer pairs')
    return Quiver(n, tuple(tuple(a) for a in arrows))


def load_quiver(path: str | Path) -> Quiver:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_quiver(text)


def linear_quiver(n: int, arrows: str = "") -> Quiver:
    """Type A_n path 1 - 2 - ... - n; ``arrows[k]`` is ``<`` or ``>`` for edge k+1 - k+2.

    ``linear_quiver(3, "<<")`` is 1 <- 2 <- 3.
    """
    arrows = arrows or "<" * (n - 1)
    if len(arrows) != n - 1:
        raise UsageError("need one direction per edge")
    out = []
    for k, ch in enumerate(arrows, start=1):
        out.append((k + 1, k) if ch == "<" else (k, k + 1))
    return Quiver(n, tuple(out))


def orientations(n: int, edges) -> list[Quiver]:
    """Every orientation of the tree on ``edges``; edge k is flipped when bit k is set."""
    edges = [tuple(e) for e in edges]
    out = []
    for bits in range(1 << len(edges)):
        out.append(Quiver(n, tuple((b, a) if bits >> k & 1 else (a, b) for k, (a, b) in enumerate(edges))))
    return out
