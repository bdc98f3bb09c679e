"""Per-run bookkeeping: recursion nodes, product counts and stage timings."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from .minplus import ProductStats

STAGES = ("planarize", "separate", "distances", "minplus", "combine")


@dataclass
class Trace:
    nodes: list[dict] = field(default_factory=list)
    stats: ProductStats = field(default_factory=ProductStats)
    timings: dict[str, float] = field(default_factory=lambda: {s: 0.0 for s in STAGES})

    calls: dict[str, int] = field(default_factory=lambda: {s: 0 for s in STAGES})
    _stack: list = field(default_factory=list, repr=False)

    @contextmanager
    def stage(self, name: str):
        """Time a stage exclusively: nested stages pause the enclosing one."""
        self.calls[name] = self.calls.get(name, 0) + 1
        now = time.perf_counter()
        if self._stack:
            outer, t0 = self._stack[-1]
            self.timings[outer] = self.timings.get(outer, 0.0) + now - t0
        self._stack.append([name, now])
        try:
            yield
        finally:
            now = time.perf_counter()
            _, t0 = self._stack.pop()
            self.timings[name] = self.timings.get(name, 0.0) + now - t0
            if self._stack:
                self._stack[-1][1] = now

    def add(self, **info) -> dict:
        self.nodes.append(info)
        return info

    def executed(self) -> list[str]:
        return [s for s in STAGES if self.calls.get(s, 0) > 0]

    def summary(self, kind: str) -> dict:
        nodes = [x for x in self.nodes if x.get("kind") == kind]
        internal = [x for x in nodes if x.get("internal")]
        return {
            "nodes": len(nodes),
            "internal": len(internal),
            "max_depth": max((x["depth"] for x in nodes), default=-1),
            "min_bd_per_internal": min((x.get("bd", 0) for x in internal), default=0),
        }
