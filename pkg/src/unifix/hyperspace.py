"""Finite compact sets, point-to-set distances and Hausdorff pseudometrics."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Tuple

from .space import InputError, Point, PseudometricFamily, as_point


@dataclass(frozen=True)
class FiniteSet:
    """Nonempty finite point set, stored sorted lexicographically.

    Use :meth:`of` to build one; it normalizes order and removes duplicates.
    With ``dedup_tolerance > 0`` a family is needed to decide which points
    are close (max-over-index aggregate distance); points are kept greedily
    in sorted order.
    """

    points: Tuple[Point, ...]
    dedup_tolerance: float = 0.0

    def __post_init__(self):
        if not self.points:
            raise InputError("FiniteSet must be nonempty")
        dims = {len(p) for p in self.points}
        if len(dims) != 1:
            raise InputError(f"mixed point dimensions {sorted(dims)}")

    @classmethod
    def of(cls, points: Iterable, family: PseudometricFamily | None = None,
           dedup_tolerance: float = 0.0) -> "FiniteSet":
        pts = sorted({as_point(p) for p in points})
        if dedup_tolerance < 0:
            raise InputError("dedup_tolerance must be >= 0")
        if dedup_tolerance > 0:
            if family is None:
                raise InputError("dedup with a positive tolerance needs a family")
            kept: List[Point] = []
            for p in pts:
                if all(family.aggregate(p, q) > dedup_tolerance for q in kept):
                    kept.append(p)
            pts = kept
        return cls(tuple(pts), dedup_tolerance)

    @property
    def dimension(self) -> int:
        return len(self.points[0])

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x):
        return tuple(x) in self.points


def _check(family: PseudometricFamily, i: int | None, *sets) -> None:
    if i is not None:
        family.check_index(i)
    for s in sets:
        if isinstance(s, FiniteSet):
            if s.dimension != family.dimension:
                raise InputError(f"set of dimension {s.dimension} in a space of dimension {family.dimension}")
        else:
            family.check_point(s)


def point_set_distance(family: PseudometricFamily, i: int, x: Point, A: FiniteSet) -> float:
    _check(family, i, x, A)
    d = family.members[i]
    return min(d(x, a) for a in A.points)


def hausdorff(family: PseudometricFamily, i: int, A: FiniteSet, B: FiniteSet) -> float:
    """H_i(A, B): the larger of the two directed distances.

    Single pass over the |A| x |B| pair grid, tracking row and column minima.
    """
    _check(family, i, A, B)
    d = family.members[i]
    inf = float("inf")
    col_min = [inf] * len(B.points)
    directed_ab = 0.0
    for a in A.points:
        row = inf
        for k, b in enumerate(B.points):
            v = d(a, b)
            if v < row:
                row = v
            if v < col_min[k]:
                col_min[k] = v
        if row > directed_ab:
            directed_ab = row
    return max(directed_ab, max(col_min))


def hyper_entourage_contains(family: PseudometricFamily, i: int, epsilon: float,
                             A: FiniteSet, B: FiniteSet) -> bool:
    if not epsilon > 0:
        raise InputError(f"epsilon must be > 0, got {epsilon}")
    return hausdorff(family, i, A, B) < epsilon


def nearest_point(family: PseudometricFamily, x: Point, A: FiniteSet) -> Tuple[Point, List[float]]:
    """Member of A minimizing max_i d_i(x, a), with its per-index distances.

    A is stored in lexicographic order and only strict improvements replace
    the incumbent, so ties go to the lexicographically smallest point.
    """
    _check(family, None, x, A)
    best, best_val, best_ds = None, float("inf"), None
    for a in A.points:
        ds = [m(x, a) for m in family.members]
        agg = max(ds)
        if agg < best_val:
            best, best_val, best_ds = a, agg, ds
    return best, best_ds
