"""Exhaustive minimum-distance checks for Kronecker products of EG codes.

Each trial samples two generator vectors, builds ``EG_k1(g1) (x) EG_k2(g2)``
and computes its minimum rank distance by enumeration.  In the first regime
the distance is exactly ``t2 - k2 + 1``; in the second it lies between
``max(d1, d2)`` and ``d1 d2`` where ``di = ti - ki + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .codes import CASE_1, CASE_2, EGCode, EGKCode
from .galois import GF2m
from .rank_linalg import min_rank_distance_bruteforce
from .sampling import Expander, sample_generator

DOMAIN_MRD = 0x05


@dataclass(frozen=True)
class Shape:
    """Component parameters ``(n, k, t)`` for both factors over ``GF(2^m)``."""

    m: int
    n1: int
    k1: int
    t1: int
    n2: int
    k2: int
    t2: int

    def __post_init__(self):
        for n, k, t in ((self.n1, self.k1, self.t1), (self.n2, self.k2, self.t2)):
            if not 1 <= k <= t <= min(n, self.m):
                raise ValueError("need 1 <= k <= t <= min(n, m) for both factors")

    @property
    def regime(self) -> str | None:
        if self.k1 == self.t1 and self.t2 == self.m < self.t1 * self.t2:
            return CASE_1
        if self.t1 * self.t2 <= self.m:
            return CASE_2
        return None

    @property
    def bounds(self) -> tuple[int, int] | None:
        """Inclusive ``(low, high)`` range the distance must fall in."""
        d1 = self.t1 - self.k1 + 1
        d2 = self.t2 - self.k2 + 1
        if self.regime == CASE_1:
            return d2, d2
        if self.regime == CASE_2:
            return max(d1, d2), d1 * d2
        return None

    @property
    def kind(self) -> str:
        return "GK" if self.n1 == self.t1 and self.n2 == self.t2 else "EGK"

    def describe(self) -> str:
        return (
            f"{self.kind} m={self.m} (n1,k1,t1)=({self.n1},{self.k1},{self.t1}) "
            f"(n2,k2,t2)=({self.n2},{self.k2},{self.t2})"
        )


@dataclass
class ShapeResult:
    shape: Shape
    distances: list[int] = field(default_factory=list)

    @property
    def violations(self) -> list[tuple[int, int]]:
        b = self.shape.bounds
        if b is None:
            return []
        return [(i, d) for i, d in enumerate(self.distances) if not b[0] <= d <= b[1]]

    @property
    def attains_low(self) -> bool:
        b = self.shape.bounds
        return b is not None and b[0] in self.distances

    @property
    def attains_high(self) -> bool:
        b = self.shape.bounds
        return b is not None and b[1] in self.distances

    def histogram(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.distances:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))


def sample_code(e: Expander, fld: GF2m, shape: Shape) -> EGKCode:
    g1 = sample_generator(e, fld, shape.n1, shape.t1)
    g2 = sample_generator(e, fld, shape.n2, shape.t2)
    return EGKCode(EGCode(fld, tuple(g1), shape.k1, shape.t1), EGCode(fld, tuple(g2), shape.k2, shape.t2))


def run_shape(shape: Shape, trials: int, e: Expander) -> ShapeResult:
    fld = GF2m(shape.m)
    res = ShapeResult(shape)
    for _ in range(trials):
        code = sample_code(e, fld, shape)
        res.distances.append(min_rank_distance_bruteforce(fld, code.generator_matrix))
    return res


def default_grid() -> list[Shape]:
    """GK and EGK shapes in the first regime for m = 3, 4, 5, then one second-regime shape."""
    grid = []
    for m in (3, 4, 5):
        grid.append(Shape(m, 2, 2, 2, m, 2, m))
        grid.append(Shape(m, 3, 2, 2, m + 1, 2, m))
    grid.append(Shape(4, 2, 1, 2, 2, 1, 2))
    return grid


# d = max(d1, d2) on the second-regime shape needs both supports to be
# GF(4)-lines, probability 1/49 per instance, so it gets more trials
CASE_2_TRIALS = 200


def run_grid(seed: bytes, trials: int = 50, grid: Sequence[Shape] | None = None) -> list[ShapeResult]:
    e = Expander(seed, DOMAIN_MRD)
    out = []
    for s in default_grid() if grid is None else grid:
        n = max(trials, CASE_2_TRIALS) if trials and grid is None and s.regime == CASE_2 else trials
        out.append(run_shape(s, n, e))
    return out
