"""Contraction inequalities for multifunctions and a sampling falsifier.

For index i, exponent r and coefficients (a, b, c) the condition at (x, y) is

    min{H_i(Fx,Fy)^r, d_i(x,Fx) d_i(y,Fy)^(r-1), d_i(y,Fy)^r}
        + a min{d_i(x,Fy), d_i(y,Fx)}
    <= [b d_i(x,Fx) + c d_i(x,y)] d_i(y,Fy)^(r-1)

with 0^0 = 1. The single-valued minus-sign variant (a = -1 with the three
term minimum) is exposed separately as :func:`corollary_sides`.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, List, Tuple

from scipy.stats import qmc

from .hyperspace import FiniteSet, hausdorff, point_set_distance
from .multifunction import Multifunction, evaluate
from .space import InputError, Point, PseudometricFamily, as_point

TOL = 1e-12


@dataclass(frozen=True)
class ContractionParams:
    r: int
    coefficients: Tuple[Tuple[float, float, float], ...]

    def __post_init__(self):
        coeffs = tuple(tuple(float(v) for v in t) for t in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if not isinstance(self.r, int) or isinstance(self.r, bool) or self.r < 1:
            raise InputError(f"exponent r must be an integer >= 1, got {self.r!r}")
        if not coeffs:
            raise InputError("need one (a, b, c) triple per family index")
        for i, t in enumerate(coeffs):
            if len(t) != 3:
                raise InputError(f"coefficient {i} must be a triple (a, b, c), got {t}")
            if not 0 < t[1] + t[2] < 1:
                raise InputError(f"coefficient {i}: need 0 < b + c < 1, got b + c = {t[1] + t[2]}")

    @classmethod
    def uniform(cls, a: float, b: float, c: float, n: int = 1, r: int = 1) -> "ContractionParams":
        return cls(r, ((a, b, c),) * n)

    def k(self) -> List[float]:
        return [b + c for _, b, c in self.coefficients]

    def check_family(self, family: PseudometricFamily) -> None:
        if len(self.coefficients) != len(family):
            raise InputError(f"{len(self.coefficients)} coefficient triples for a family of size {len(family)}")


def violates(lhs: float, rhs: float) -> bool:
    return lhs > rhs + TOL * max(1.0, abs(rhs))


def _sides(family, params, i, x, y, Fx: FiniteSet, Fy: FiniteSet):
    a, b, c = params.coefficients[i]
    r = params.r
    d = family.members[i]
    dxFx = point_set_distance(family, i, x, Fx)
    dyFy = point_set_distance(family, i, y, Fy)
    tail = dyFy ** (r - 1)  # 0.0 ** 0 == 1.0
    block = min(hausdorff(family, i, Fx, Fy) ** r, dxFx * tail, dyFy ** r)
    cross = min(point_set_distance(family, i, x, Fy), point_set_distance(family, i, y, Fx))
    lhs = block + a * cross
    rhs = (b * dxFx + c * d(x, y)) * tail
    return lhs, rhs


def condition_sides(F: Multifunction, params: ContractionParams, family: PseudometricFamily,
                    i: int, x, y) -> Tuple[float, float]:
    params.check_family(family)
    family.check_index(i)
    x, y = as_point(x, family.dimension), as_point(y, family.dimension)
    return _sides(family, params, i, x, y, evaluate(F, x), evaluate(F, y))


def _failures(F, params, family, x, y):
    Fx, Fy = evaluate(F, x), evaluate(F, y)
    out = []
    for i in range(len(family)):
        lhs, rhs = _sides(family, params, i, x, y, Fx, Fy)
        if violates(lhs, rhs):
            out.append((i, lhs, rhs))
    return out


def holds_at(F: Multifunction, params: ContractionParams, family: PseudometricFamily, x, y) -> bool:
    params.check_family(family)
    x, y = as_point(x, family.dimension), as_point(y, family.dimension)
    return not _failures(F, params, family, x, y)


def uniqueness_applicable(params: ContractionParams) -> bool:
    return all(a > c > 0 for a, _, c in params.coefficients)


def corollary_sides(T: Callable, b: float, c: float, family: PseudometricFamily,
                    i: int, x, y) -> Tuple[float, float]:
    if not 0 < b + c < 1:
        raise InputError(f"need 0 < b + c < 1, got {b + c}")
    family.check_index(i)
    x, y = as_point(x, family.dimension), as_point(y, family.dimension)
    Tx, Ty = as_point(T(x), family.dimension), as_point(T(y), family.dimension)
    d = family.members[i]
    lhs = min(d(Tx, Ty), d(x, Tx), d(y, Ty)) - min(d(x, Ty), d(y, Tx))
    rhs = b * d(x, Tx) + c * d(x, y)
    return lhs, rhs


@dataclass(frozen=True)
class Box:
    lower: Point
    upper: Point

    def __post_init__(self):
        lo, hi = as_point(self.lower), as_point(self.upper)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        if len(lo) != len(hi):
            raise InputError("box bounds differ in dimension")
        if not all(h > l for l, h in zip(lo, hi)):
            raise InputError(f"degenerate region [{lo}, {hi}]")

    @property
    def dimension(self) -> int:
        return len(self.lower)

    def center(self) -> Point:
        return tuple((l + h) / 2 for l, h in zip(self.lower, self.upper))

    def corners(self) -> List[Point]:
        return [tuple(c) for c in itertools.product(*zip(self.lower, self.upper))]

    def probe_pairs(self) -> List[Tuple[Point, Point]]:
        """All ordered pairs of corners and center, diagonal included."""
        pts = self.corners() + [self.center()]
        return list(itertools.product(pts, pts))

    def sample_pairs(self, budget: int, seed: int) -> List[Tuple[Point, Point]]:
        n = self.dimension
        u = qmc.Halton(d=2 * n, scramble=True, seed=seed).random(budget)
        lo, hi = self.lower * 2, self.upper * 2
        pts = qmc.scale(u, lo, hi)
        return [(tuple(map(float, row[:n])), tuple(map(float, row[n:]))) for row in pts]


@dataclass
class ConditionReport:
    seed: int
    budget: int
    region: Box
    pairs_checked: int = 0
    violations: List[dict] = field(default_factory=list)

    @property
    def holds_on_sample(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "budget": self.budget,
            "region": {"lower": list(self.region.lower), "upper": list(self.region.upper)},
            "pairs_checked": self.pairs_checked,
            "holds_on_sample": self.holds_on_sample,
            "violations": self.violations,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def scan(F: Multifunction, params: ContractionParams, family: PseudometricFamily,
         region: Box, budget: int, seed: int) -> ConditionReport:
    """Falsify the condition on the probe pairs plus `budget` Halton pairs.

    An empty violation list is a sampling result, not a proof.
    """
    if budget < 1:
        raise InputError(f"budget must be >= 1, got {budget}")
    params.check_family(family)
    if region.dimension != family.dimension:
        raise InputError("region dimension does not match the space")
    report = ConditionReport(seed, budget, region)
    pairs = region.probe_pairs() + region.sample_pairs(budget, seed)
    for k, (x, y) in enumerate(pairs):
        for i, lhs, rhs in _failures(F, params, family, x, y):
            report.violations.append(
                {"sample": k, "x": list(x), "y": list(y), "index": i, "lhs": lhs, "rhs": rhs}
            )
    report.pairs_checked = len(pairs)
    return report
