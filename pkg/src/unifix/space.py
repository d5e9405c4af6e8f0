"""Carrier space: points, finite pseudometric families and entourages.

Points are plain tuples of floats. A family is an ordered list of
pseudometrics over a fixed dimension; each member only looks at a subset of
coordinates, so single members are usually degenerate (d(x, y) = 0 for
x != y) while the family as a whole separates points.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, Tuple

Point = Tuple[float, ...]


class InputError(ValueError):
    """Raised for malformed arguments (dimension mismatch, bad index, ...)."""


def as_point(coords: Iterable[float], dimension: int | None = None) -> Point:
    if isinstance(coords, (int, float)):
        coords = (coords,)
    p = tuple(float(c) for c in coords)
    if not p:
        raise InputError("a point needs at least one coordinate")
    if not all(math.isfinite(c) for c in p):
        raise InputError(f"non-finite coordinate in {p}")
    if dimension is not None and len(p) != dimension:
        raise InputError(f"point {p} has dimension {len(p)}, expected {dimension}")
    return p


@dataclass(frozen=True)
class Pseudometric:
    """Weighted coordinate-subset pseudometric.

    ``kind == "abs"``:        d(x, y) = sum_j w_j |x_j - y_j|
    ``kind == "euclidean"``:  d(x, y) = sqrt(sum_j (w_j (x_j - y_j))^2)

    Both are homogeneous of degree one in the weights.
    """

    kind: str
    coords: Tuple[int, ...]
    weights: Tuple[float, ...]

    def __post_init__(self):
        if self.kind not in ("abs", "euclidean"):
            raise InputError(f"unknown pseudometric kind {self.kind!r}")
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if not self.coords:
            raise InputError("pseudometric needs a nonempty coordinate subset")
        if len(self.weights) != len(self.coords):
            raise InputError("one weight per coordinate is required")
        if not all(w > 0 and math.isfinite(w) for w in self.weights):
            raise InputError(f"weights must be finite and > 0, got {self.weights}")

    def __call__(self, x: Point, y: Point) -> float:
        if self.kind == "abs":
            s = 0.0
            for j, w in zip(self.coords, self.weights):
                s += w * abs(x[j] - y[j])
            return s
        s = 0.0
        for j, w in zip(self.coords, self.weights):
            t = w * (x[j] - y[j])
            s += t * t
        return math.sqrt(s)

    def scaled(self, lam: float) -> "Pseudometric":
        return Pseudometric(self.kind, self.coords, tuple(lam * w for w in self.weights))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "coords": list(self.coords), "weights": list(self.weights)}


@dataclass(frozen=True)
class PseudometricFamily:
    dimension: int
    members: Tuple[Callable[[Point, Point], float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if self.dimension < 1:
            raise InputError("dimension must be >= 1")
        if not self.members:
            raise InputError("a pseudometric family needs at least one member")
        for m in self.members:
            coords = getattr(m, "coords", ())
            if any(not 0 <= j < self.dimension for j in coords):
                raise InputError(f"coordinate subset {coords} out of range for dimension {self.dimension}")

    @property
    def index_count(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    @classmethod
    def from_specs(cls, dimension: int, specs: Sequence[dict]) -> "PseudometricFamily":
        members = []
        for s in specs:
            coords = s.get("coords", list(range(dimension)))
            weights = s.get("weights", [1.0] * len(coords))
            if isinstance(weights, (int, float)):
                weights = [weights] * len(coords)
            members.append(Pseudometric(s.get("kind", "abs"), tuple(coords), tuple(weights)))
        return cls(dimension, tuple(members))

    @classmethod
    def absolute(cls, *weights: float) -> "PseudometricFamily":
        """Family of weighted |x - y| on the real line, one member per weight."""
        return cls(1, tuple(Pseudometric("abs", (0,), (w,)) for w in (weights or (1.0,))))

    def scaled(self, lam: float) -> "PseudometricFamily":
        return PseudometricFamily(self.dimension, tuple(m.scaled(lam) for m in self.members))

    def check_index(self, i: int) -> None:
        if not isinstance(i, int) or not 0 <= i < len(self.members):
            raise InputError(f"index {i!r} out of range for a family of size {len(self.members)}")

    def check_point(self, x: Point) -> None:
        if len(x) != self.dimension:
            raise InputError(f"point {x} has dimension {len(x)}, expected {self.dimension}")

    def aggregate(self, x: Point, y: Point) -> float:
        """max over the family of d_i(x, y)."""
        return max(m(x, y) for m in self.members)

    def to_dicts(self) -> list:
        return [m.to_dict() for m in self.members]


@dataclass(frozen=True)
class Entourage:
    index: int
    epsilon: float

    def __post_init__(self):
        if not self.epsilon > 0:
            raise InputError(f"entourage radius must be > 0, got {self.epsilon}")
        if self.index < 0:
            raise InputError(f"negative entourage index {self.index}")


def eval_pseudometric(family: PseudometricFamily, i: int, x: Point, y: Point) -> float:
    family.check_index(i)
    family.check_point(x)
    family.check_point(y)
    return family.members[i](x, y)


def augmented_diameter(family: PseudometricFamily, A) -> float:
    """sup of d_i(x, y) over all indices and all pairs of points of A."""
    pts = list(getattr(A, "points", A))
    if not pts:
        raise InputError("augmented diameter of an empty set")
    for p in pts:
        family.check_point(p)
    best = 0.0
    for m in family.members:
        for k, x in enumerate(pts):
            for y in pts[k + 1:]:
                d = m(x, y)
                if d > best:
                    best = d
    return best


def entourage_contains(family: PseudometricFamily, e: Entourage, x: Point, y: Point) -> bool:
    return eval_pseudometric(family, e.index, x, y) < e.epsilon
