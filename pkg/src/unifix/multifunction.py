"""Set-valued maps X -> 2^X, the single-valued lift and a small builtin catalog."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence, Tuple

from .hyperspace import FiniteSet
from .space import InputError, Point, as_point


class ConfigError(ValueError):
    """Raised when a builtin map description is inconsistent."""


@dataclass(frozen=True)
class Multifunction:
    evaluator: Callable[[Point], FiniteSet]
    dimension: int
    descriptor: str = "custom"

    def __call__(self, x) -> FiniteSet:
        return evaluate(self, x)


def evaluate(F: Multifunction, x) -> FiniteSet:
    x = as_point(x, F.dimension)
    image = F.evaluator(x)
    if not isinstance(image, FiniteSet):
        image = FiniteSet.of(image)
    if image.dimension != F.dimension:
        raise InputError(f"{F.descriptor}: image dimension {image.dimension} != {F.dimension}")
    return image


def lift_single_valued(T: Callable, dimension: int = 1, descriptor: str | None = None) -> Multifunction:
    """Wrap a point map T as the multifunction x -> {T(x)}."""
    def ev(x: Point) -> FiniteSet:
        return FiniteSet.of([as_point(T(x), dimension)])

    return Multifunction(ev, dimension, descriptor or f"lift({getattr(T, '__name__', 'T')})")


def _affine(M, v):
    rows = len(M)

    def apply(x: Point) -> Point:
        out = []
        for r in range(rows):
            s = 0.0
            for m, xj in zip(M[r], x):
                s += m * xj
            out.append(s + v[r])
        return tuple(out)

    return apply


def _matrix(M, dimension) -> Tuple[Tuple[float, ...], ...]:
    if isinstance(M, (int, float)):
        return tuple(tuple(float(M) if r == c else 0.0 for c in range(dimension)) for r in range(dimension))
    M = tuple(tuple(float(e) for e in row) for row in M)
    if len(M) != dimension or any(len(row) != dimension for row in M):
        raise ConfigError(f"matrix must be {dimension}x{dimension}")
    return M


def _offset(v, dimension) -> Tuple[float, ...]:
    if v is None:
        return (0.0,) * dimension
    if isinstance(v, (int, float)):
        v = [v] * dimension
    v = tuple(float(e) for e in v)
    if len(v) != dimension:
        raise ConfigError(f"offset must have length {dimension}")
    return v


def _fmt(x) -> str:
    return repr(x).replace(" ", "")


@dataclass(frozen=True)
class BuiltinSpec:
    """Catalog entry. ``kind`` is one of

    affine_contraction (matrix, offset), multi_affine (branches: list of
    (matrix, offset)), scaled_selector (ratios), identity, expansion (factor).
    A scalar matrix means that multiple of the identity.
    """

    kind: str
    dimension: int = 1
    matrix: object = None
    offset: object = None
    branches: Sequence = field(default_factory=tuple)
    ratios: Sequence[float] = field(default_factory=tuple)
    factor: float = 2.0

    @classmethod
    def from_dict(cls, d: dict, dimension: int) -> "BuiltinSpec":
        d = dict(d)
        kind = d.pop("kind", None)
        if kind is None:
            raise ConfigError("map spec needs a 'kind'")
        d.pop("dimension", None)
        unknown = set(d) - {"matrix", "offset", "branches", "ratios", "factor"}
        if unknown:
            raise ConfigError(f"unknown map fields {sorted(unknown)}")
        if "branches" in d:
            d["branches"] = tuple(
                (b["matrix"], b.get("offset")) if isinstance(b, dict) else tuple(b) for b in d["branches"]
            )
        return cls(kind=kind, dimension=dimension, **d)


def make_builtin(spec: BuiltinSpec) -> Multifunction:
    n = spec.dimension
    if n < 1:
        raise ConfigError("dimension must be >= 1")
    kind = spec.kind
    if kind == "identity":
        return lift_single_valued(lambda x: x, n, "identity")
    if kind == "expansion":
        mu = float(spec.factor)
        if not mu > 1:
            raise ConfigError(f"expansion factor must be > 1, got {mu}")
        return lift_single_valued(lambda x: tuple(mu * c for c in x), n, f"expansion({_fmt(mu)})")
    if kind == "affine_contraction":
        if spec.matrix is None:
            raise ConfigError("affine_contraction needs a matrix")
        M, v = _matrix(spec.matrix, n), _offset(spec.offset, n)
        return lift_single_valued(_affine(M, v), n, f"affine_contraction(M={_fmt(M)},v={_fmt(v)})")
    if kind == "multi_affine":
        if not spec.branches:
            raise ConfigError("multi_affine needs at least one branch")
        maps, parts = [], []
        for M, v in spec.branches:
            M, v = _matrix(M, n), _offset(v, n)
            maps.append(_affine(M, v))
            parts.append(f"(M={_fmt(M)},v={_fmt(v)})")

        def ev(x: Point) -> FiniteSet:
            return FiniteSet.of([f(x) for f in maps])

        return Multifunction(ev, n, "multi_affine(" + ",".join(parts) + ")")
    if kind == "scaled_selector":
        ratios = tuple(float(r) for r in spec.ratios)
        if not ratios:
            raise ConfigError("scaled_selector needs at least one ratio")

        def ev(x: Point) -> FiniteSet:
            return FiniteSet.of([tuple(lam * c for c in x) for lam in ratios])

        return Multifunction(ev, n, f"scaled_selector({_fmt(ratios)})")
    raise ConfigError(f"unknown builtin map {kind!r}")
