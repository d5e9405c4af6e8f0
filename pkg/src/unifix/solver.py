"""Nearest-point orbits of a multifunction and their convergence certificates.

From x_k the next point is the member of F(x_k) closest to x_k (max over the
family), so the step distance equals the point-to-image distance whenever the
family has a single member. The orbit stops once every d_i(x_k, F x_k) is
below the tolerance.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .checker import ContractionParams, uniqueness_applicable
from .hyperspace import FiniteSet, nearest_point
from .multifunction import Multifunction, evaluate
from .space import InputError, Point, PseudometricFamily, as_point

SLACK = 1e-9

FIXED_POINT_FOUND = "fixed_point_found"
MAX_ITERATIONS_REACHED = "max_iterations_reached"
DIVERGED = "diverged"


@dataclass(frozen=True)
class SolveOptions:
    tolerance: float = 1e-8
    max_iterations: int = 1000
    divergence_guard: Optional[float] = None  # None: 1e12 * (1 + aggregate norm of x0)

    def __post_init__(self):
        if not self.tolerance > 0:
            raise InputError(f"tolerance must be > 0, got {self.tolerance}")
        if self.max_iterations < 1:
            raise InputError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.divergence_guard is not None and not self.divergence_guard > 0:
            raise InputError(f"divergence_guard must be > 0, got {self.divergence_guard}")

    def guard_for(self, family: PseudometricFamily, x0: Point) -> float:
        if self.divergence_guard is not None:
            return self.divergence_guard
        return 1e12 * (1.0 + family.aggregate(x0, (0.0,) * len(x0)))


@dataclass
class OrbitTrace:
    points: List[Point]
    step_distances: List[List[float]] = field(default_factory=list)
    residuals: List[List[float]] = field(default_factory=list)

    def __len__(self):
        return len(self.points)

    def check_membership(self, F: Multifunction) -> bool:
        return all(nxt in evaluate(F, cur) for cur, nxt in zip(self.points, self.points[1:]))

    def check_step_distances(self, family: PseudometricFamily) -> bool:
        if len(self.step_distances) != len(self.points) - 1:
            return False
        for (cur, nxt), row in zip(zip(self.points, self.points[1:]), self.step_distances):
            if [m(cur, nxt) for m in family.members] != list(row):
                return False
        return True

    def csv_header(self) -> List[str]:
        d = len(self.points[0])
        m = len(self.residuals[0]) if self.residuals else 0
        return (["n"] + [f"x_{j}" for j in range(d)]
                + [f"step_d_{i}" for i in range(m)] + [f"res_d_{i}" for i in range(m)])

    def to_csv(self) -> str:
        """One row per point; the last row has empty step columns."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.csv_header())
        m = len(self.residuals[0]) if self.residuals else 0
        for n, p in enumerate(self.points):
            steps = self.step_distances[n] if n < len(self.step_distances) else [None] * m
            res = self.residuals[n] if n < len(self.residuals) else [None] * m
            w.writerow([n] + [_g(v) for v in p] + [_g(v) for v in steps] + [_g(v) for v in res])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "OrbitTrace":
        rows = list(csv.reader(io.StringIO(text)))
        header, body = rows[0], rows[1:]
        d = sum(1 for h in header if h.startswith("x_"))
        m = sum(1 for h in header if h.startswith("step_d_"))
        points, steps, res = [], [], []
        for row in body:
            points.append(tuple(float(v) for v in row[1:1 + d]))
            s = row[1 + d:1 + d + m]
            if all(v != "" for v in s):
                steps.append([float(v) for v in s])
            r = row[1 + d + m:1 + d + 2 * m]
            if all(v != "" for v in r):
                res.append([float(v) for v in r])
        return cls(points, steps, res)


def _g(v) -> str:
    return "" if v is None else format(v, ".17g")


@dataclass
class SolveReport:
    status: str
    final_point: Point
    final_residual: List[float]
    iterations_used: int
    rate_estimates: List[Optional[float]]

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "final_point": list(self.final_point),
            "final_residual": list(self.final_residual),
            "iterations_used": self.iterations_used,
            "rate_estimates": list(self.rate_estimates),
        }


def _residual_from_image(family, x, image: FiniteSet) -> List[float]:
    return [min(m(x, a) for a in image.points) for m in family.members]


def step(F: Multifunction, family: PseudometricFamily, x) -> Point:
    x = as_point(x, family.dimension)
    return nearest_point(family, x, evaluate(F, x))[0]


def residual(F: Multifunction, family: PseudometricFamily, x) -> List[float]:
    x = as_point(x, family.dimension)
    return _residual_from_image(family, x, evaluate(F, x))


def rate_estimates(trace: OrbitTrace) -> List[Optional[float]]:
    """Per index, exp of the least-squares slope of log(step) against n.

    Zero steps are skipped; fewer than two positive steps gives None.
    """
    if not trace.step_distances:
        return [None] * (len(trace.residuals[0]) if trace.residuals else 0)
    out = []
    for i in range(len(trace.step_distances[0])):
        pts = [(n, math.log(row[i])) for n, row in enumerate(trace.step_distances) if row[i] > 0]
        if len(pts) < 2:
            out.append(None)
            continue
        mn = sum(n for n, _ in pts) / len(pts)
        ml = sum(l for _, l in pts) / len(pts)
        sxx = sum((n - mn) ** 2 for n, _ in pts)
        sxy = sum((n - mn) * (l - ml) for n, l in pts)
        out.append(math.exp(sxy / sxx))
    return out


def solve(F: Multifunction, family: PseudometricFamily, x0, opts: SolveOptions = SolveOptions()
          ) -> Tuple[OrbitTrace, SolveReport]:
    x = as_point(x0, family.dimension)
    guard = opts.guard_for(family, x)
    image = evaluate(F, x)
    trace = OrbitTrace([x], [], [_residual_from_image(family, x, image)])
    status = MAX_ITERATIONS_REACHED
    k = 0
    while True:
        if max(trace.residuals[-1]) <= opts.tolerance:
            status = FIXED_POINT_FOUND
            break
        if k >= opts.max_iterations:
            break
        nxt, ds = nearest_point(family, x, image)
        x = nxt
        k += 1
        image = evaluate(F, x)
        trace.points.append(x)
        trace.step_distances.append(ds)
        trace.residuals.append(_residual_from_image(family, x, image))
        if max(ds) > guard or not all(math.isfinite(c) for c in x):
            status = DIVERGED
            break
    report = SolveReport(status, x, trace.residuals[-1], k, rate_estimates(trace))
    return trace, report


@dataclass
class BoundCheck:
    """Outcome of a trace verification; truthy iff the bound held everywhere."""

    passed: bool
    checked: int
    first_failure: Optional[dict] = None

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "first_failure": self.first_failure}


def _check_k(trace: OrbitTrace, k: Sequence[float]) -> List[float]:
    if len(trace.points) < 2:
        raise InputError("trace needs at least two points")
    k = [float(v) for v in k]
    if len(k) != len(trace.step_distances[0]):
        raise InputError(f"{len(k)} rates for {len(trace.step_distances[0])} indices")
    if not all(0 < v < 1 for v in k):
        raise InputError(f"rates must lie in (0, 1), got {k}")
    return k


def verify_geometric_decay(trace: OrbitTrace, k: Sequence[float]) -> BoundCheck:
    """Check d_i(x_n, x_{n+1}) <= k_i^n d_i(x_0, x_1) for every n and i."""
    k = _check_k(trace, k)
    first = trace.step_distances[0]
    checked = 0
    for n, row in enumerate(trace.step_distances):
        for i, (s, ki) in enumerate(zip(row, k)):
            checked += 1
            bound = ki ** n * first[i]
            if s > bound + SLACK:
                return BoundCheck(False, checked, {"n": n, "index": i, "value": s, "bound": bound})
    return BoundCheck(True, checked)


def verify_tail_bound(trace: OrbitTrace, family: PseudometricFamily, k: Sequence[float]) -> BoundCheck:
    """Check d_i(x_n, x_m) <= k_i^n / (1 - k_i) d_i(x_0, x_1) for all n < m.

    Passing this on every tail {x_n : n >= p} is the finite-trace form of the
    orbit being Cauchy.
    """
    k = _check_k(trace, k)
    first = trace.step_distances[0]
    pts = trace.points
    checked = 0
    for i, (m, ki) in enumerate(zip(family.members, k)):
        for n in range(len(pts)):
            bound = ki ** n / (1 - ki) * first[i]
            for mm in range(n + 1, len(pts)):
                checked += 1
                v = m(pts[n], pts[mm])
                if v > bound + SLACK:
                    return BoundCheck(False, checked, {"n": n, "m": mm, "index": i, "value": v, "bound": bound})
    return BoundCheck(True, checked)


@dataclass
class UniquenessReport:
    passed: bool
    limits: List[Point]
    statuses: List[str]
    max_pair_distance: float
    threshold: float

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "limits": [list(p) for p in self.limits],
            "statuses": self.statuses,
            "max_pair_distance": self.max_pair_distance,
            "threshold": self.threshold,
        }


def uniqueness_probe(F: Multifunction, family: PseudometricFamily, params: ContractionParams,
                     starts: Sequence, opts: SolveOptions = SolveOptions()) -> UniquenessReport:
    """Solve from each start and compare the converged limits pairwise.

    Two converged limits z, w pass when max_i d_i(z, w) stays within
    2 tol (1 + max_i c_i / a_i).
    """
    if not uniqueness_applicable(params):
        raise InputError("uniqueness probe needs a_i > c_i > 0 for every index")
    params.check_family(family)
    if not starts:
        raise InputError("uniqueness probe needs at least one start")
    results = [solve(F, family, s, opts)[1] for s in starts]
    limits = [r.final_point for r in results]
    statuses = [r.status for r in results]
    threshold = 2 * opts.tolerance * (1 + max(c / a for a, _, c in params.coefficients))
    conv = [r.final_point for r in results if r.status == FIXED_POINT_FOUND]
    worst = 0.0
    for j, z in enumerate(conv):
        for w in conv[j + 1:]:
            worst = max(worst, family.aggregate(z, w))
    return UniquenessReport(worst <= threshold, limits, statuses, worst, threshold)


def report_json(report: SolveReport, extra: dict | None = None) -> str:
    d = report.to_dict()
    if extra:
        d.update(extra)
    return json.dumps(d, indent=2) + "\n"
