"""Tunable knobs shared by the distance and girth recursions.

None of these affect correctness; they only move work between the recursive
and the brute-force parts.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields, replace
from fractions import Fraction

OMEGA = 2.371339


def default_rho(omega: float = OMEGA) -> float:
    return (3 - omega) / (22 + 6 * omega)


@dataclass(frozen=True)
class Params:
    omega: float = OMEGA
    rho: float | None = None  # None: derived from omega
    alpha: float | None = None  # None: 3 * rho
    n0: int = 64  # girth recursion floor (segments)
    dist_n0: int = 64  # distance recursion floor (planar vertices)
    eps: Fraction = Fraction(1, 100)
    delta_max: int = 4
    block: int | None = None  # min-plus block height, None: ceil(sqrt(dim))
    debug: bool = False

    def __post_init__(self):
        if self.dist_n0 < 4:
            raise ValueError("dist_n0 must be at least 4")
        if self.n0 < 1:
            raise ValueError("n0 must be positive")
        if not 0 < self.eps < Fraction(1, 2):
            raise ValueError("eps must lie in (0, 1/2)")
        a = self.alpha_value
        if not 0 < a < 0.5:
            raise ValueError("alpha must lie in (0, 1/2)")

    @property
    def rho_value(self) -> float:
        return default_rho(self.omega) if self.rho is None else self.rho

    @property
    def alpha_value(self) -> float:
        return 3 * self.rho_value if self.alpha is None else self.alpha

    def p_dist(self, n: int) -> int:
        return max(1, math.ceil(n ** (0.5 + self.alpha_value) / math.log(n + 2) ** 1.1))

    def w_dist(self, n: int) -> Fraction:
        return Fraction(n ** (0.5 - self.alpha_value)).limit_denominator(1000)

    def p_girth(self, n: int) -> int:
        return max(1, math.ceil(n ** (0.5 + self.rho_value)))

    def as_dict(self) -> dict:
        d = asdict(self)
        d["eps"] = str(self.eps)
        d["rho"] = self.rho_value
        d["alpha"] = self.alpha_value
        return d

    def with_overrides(self, text: str | dict | None) -> "Params":
        """Apply ``k=v,k=v`` overrides (or a dict)."""
        if not text:
            return self
        items = text.items() if isinstance(text, dict) else (kv.split("=", 1) for kv in text.split(",") if kv.strip())
        kinds = {f.name: f for f in fields(self)}
        upd = {}
        for k, v in items:
            k = k.strip()
            if k not in kinds:
                raise ValueError(f"unknown parameter {k!r}")
            upd[k] = _coerce(k, v)
        return replace(self, **upd)


def _coerce(name, v):
    if not isinstance(v, str):
        return v
    v = v.strip()
    if name == "debug":
        return v.lower() in ("1", "true", "yes", "on")
    if name == "eps":
        return Fraction(v)
    if name in ("n0", "dist_n0", "delta_max"):
        return int(v)
    if name == "block":
        return None if v.lower() in ("none", "") else int(v)
    if v.lower() == "none":
        return None
    return float(v)
