import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import diameter_oracle, direct_distance
from unifix import (Entourage, FiniteSet, InputError, PseudometricFamily, augmented_diameter,
                    entourage_contains, eval_pseudometric)

LINE = PseudometricFamily.absolute(1.0)
TWO = PseudometricFamily.from_specs(2, [
    {"kind": "abs", "coords": [0], "weights": [1.0]},
    {"kind": "abs", "coords": [1], "weights": [2.0]},
])
LINE_2X = PseudometricFamily.absolute(1.0, 2.0)

coord = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


@st.composite
def families(draw, max_dim=3, max_size=3):
    dim = draw(st.integers(1, max_dim))
    specs = []
    for _ in range(draw(st.integers(1, max_size))):
        coords = draw(st.lists(st.integers(0, dim - 1), min_size=1, max_size=dim, unique=True))
        weights = draw(st.lists(st.floats(0.01, 100), min_size=len(coords), max_size=len(coords)))
        specs.append({"kind": draw(st.sampled_from(["abs", "euclidean"])), "coords": coords, "weights": weights})
    return PseudometricFamily.from_specs(dim, specs), specs


def points(dim):
    return st.tuples(*[coord] * dim)


def test_eval_examples():
    assert eval_pseudometric(LINE, 0, (0.0,), (0.0,)) == 0
    assert eval_pseudometric(LINE, 0, (1.0,), (4.0,)) == 3
    spec = {"kind": "abs", "coords": [1], "weights": [2.0]}
    assert eval_pseudometric(TWO, 1, (0.0, 0.0), (0.0, 1.5)) == 3.0 == direct_distance(spec, (0, 0), (0, 1.5))


def test_eval_errors():
    with pytest.raises(InputError):
        eval_pseudometric(LINE, 1, (0.0,), (1.0,))
    with pytest.raises(InputError):
        eval_pseudometric(LINE, 0, (0.0, 1.0), (1.0,))


@pytest.mark.parametrize("spec", [
    {"kind": "abs", "coords": [0], "weights": [0.0]},
    {"kind": "abs", "coords": [0], "weights": [-1.0]},
    {"kind": "manhattan", "coords": [0], "weights": [1.0]},
    {"kind": "abs", "coords": [3], "weights": [1.0]},
])
def test_bad_family_specs(spec):
    with pytest.raises(InputError):
        PseudometricFamily.from_specs(1, [spec])


def test_augmented_diameter_examples():
    assert augmented_diameter(LINE, FiniteSet.of([7])) == 0
    assert augmented_diameter(LINE, FiniteSet.of([0, 1])) == 1
    A = FiniteSet.of([0, 1, 0.5])
    assert augmented_diameter(LINE_2X, A) == 2 == diameter_oracle(LINE_2X, A.points)
    with pytest.raises(InputError):
        augmented_diameter(LINE, [])


def test_entourage_examples():
    assert entourage_contains(LINE, Entourage(0, 1.0), (0.0,), (0.0,))
    assert not entourage_contains(LINE, Entourage(0, 1.0), (0.0,), (1.0,))
    assert entourage_contains(LINE_2X, Entourage(1, 0.5), (0.0,), (0.2,))
    with pytest.raises(InputError):
        Entourage(0, 0.0)


@settings(max_examples=300)
@given(st.data())
def test_pseudometric_axioms(data):
    family, _ = data.draw(families())
    x, y, z = (data.draw(points(family.dimension)) for _ in range(3))
    for i in range(len(family)):
        d = lambda p, q: eval_pseudometric(family, i, p, q)
        assert d(x, x) == 0
        assert d(x, y) == d(y, x)
        assert d(x, z) <= d(x, y) + d(y, z) + 1e-12 * max(1.0, d(x, z))


@given(st.data())
def test_matches_direct_definition(data):
    family, specs = data.draw(families())
    x, y = data.draw(points(family.dimension)), data.draw(points(family.dimension))
    for i, spec in enumerate(specs):
        assert eval_pseudometric(family, i, x, y) == pytest.approx(direct_distance(spec, x, y), rel=1e-12, abs=1e-300)


@given(st.data(), st.floats(0.01, 100))
def test_scale_covariance(data, lam):
    family, _ = data.draw(families())
    pts = data.draw(st.lists(points(family.dimension), min_size=1, max_size=6))
    scaled = family.scaled(lam)
    for i in range(len(family)):
        assert eval_pseudometric(scaled, i, pts[0], pts[-1]) == pytest.approx(
            lam * eval_pseudometric(family, i, pts[0], pts[-1]), rel=1e-12, abs=1e-300)
    A = FiniteSet.of(pts)
    assert augmented_diameter(scaled, A) == pytest.approx(lam * augmented_diameter(family, A), rel=1e-12, abs=1e-300)


@given(st.data())
def test_diameter_is_enumeration_max(data):
    family, _ = data.draw(families())
    A = FiniteSet.of(data.draw(st.lists(points(family.dimension), min_size=1, max_size=8)))
    assert augmented_diameter(family, A) == diameter_oracle(family, A.points)


@given(st.data(), st.floats(1e-6, 1e3))
def test_entourage_symmetric(data, eps):
    family, _ = data.draw(families())
    x, y = data.draw(points(family.dimension)), data.draw(points(family.dimension))
    e = Entourage(data.draw(st.integers(0, len(family) - 1)), eps)
    assert entourage_contains(family, e, x, y) == entourage_contains(family, e, y, x)
