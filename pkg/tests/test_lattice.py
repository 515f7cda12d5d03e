import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from phaseless import (DegenerateInput, Lattice, LineFamily, NotEmbeddable, RationalDependence,
                       detect_rational_dependence, lattice_in_line_family, lattice_points_in_box,
                       line_points, superlattice_embed)
from phaseless.lattice import rotation_matrix

from oracles import convergents, lattice_brute_force


def test_line_points_axis_aligned():
    fam = LineFamily(0.0, 0.5)
    pts = line_points(fam, [0.0, 1.0], (-1, 1))
    assert pts.shape == (6, 2)
    assert np.allclose(pts[:2], [[0, -0.5], [1, -0.5]])
    assert np.allclose(pts[4:], [[0, 0.5], [1, 0.5]])
    assert np.all(fam.contains(pts))


def test_line_points_rotated_round_trip():
    fam = LineFamily(1.0, 2.0, (0.3, -0.2))
    xs = np.linspace(-3, 3, 11)
    pts = line_points(fam, xs, range(-2, 3))
    local = (pts - np.array(fam.shift)) @ rotation_matrix(fam.theta)
    X, N = np.meshgrid(xs, 2.0 * np.arange(-2, 3))
    assert np.max(np.abs(local - np.stack([X.ravel(), N.ravel()], 1))) <= 1e-14
    assert np.max(fam.distance(pts)) <= 1e-14


def test_single_line_family():
    fam = LineFamily(0.5, math.inf)
    assert fam.single
    assert len(line_points(fam, [0, 1], (-2, 2))) == 2
    assert fam.distance([[0.0, 1.0]])[0] == pytest.approx(math.cos(0.5))
    with pytest.raises(ValueError):
        LineFamily(0.0, 0.0)


def test_refined_and_distance():
    fam = LineFamily(0.0, 1.0).refined(2)
    assert fam.spacing == 0.5
    assert fam.distance([[3.0, 0.75]])[0] == pytest.approx(0.25)


def test_box_counts():
    assert len(lattice_points_in_box(Lattice.rectangular(1, 1), (-1, 1, -1, 1))) == 9
    assert len(lattice_points_in_box(Lattice.rectangular(1, 1, (0.5, 0.5)), (0, 1, 0, 1))) == 1
    assert len(lattice_points_in_box(Lattice.rectangular(1, 1), (0.2, 0.8, 0.2, 0.8))) == 0
    with pytest.raises(ValueError):
        lattice_points_in_box(Lattice.rectangular(1, 1), (1, 0, 0, 1))


def _as_set(pts):
    return {(round(x, 9), round(y, 9)) for x, y in pts}


@pytest.mark.parametrize("L, z, box", [
    ([[1, 2], [3, 1]], (0, 0), (-2, 2, -2, 2)),
    ([[0.7, -0.2], [0.1, 0.5]], (0.3, -0.1), (-3, 1, -2, 2.5)),
    ([[math.sqrt(2), 1], [0, 1]], (0, 0), (-4, 4, -4, 4)),
])
def test_box_matches_brute_force(L, z, box):
    got = lattice_points_in_box(Lattice(np.array(L, float), z), box)
    assert _as_set(got.points) == lattice_brute_force(L, z, box)


def test_degenerate_box():
    lat = Lattice.from_rationals([["1", "2"], ["1", "2"]])
    s = lattice_points_in_box(lat, (-2, 2, -2, 2))
    assert s.degenerate and _as_set(s.points) == lattice_brute_force([[1, 2], [1, 2]], (0, 0), (-2, 2, -2, 2))
    half = Lattice.from_rationals([["1", "3/2"], ["0", "0"]])
    assert _as_set(lattice_points_in_box(half, (-1, 1, -1, 1)).points) == {(-1, 0), (-0.5, 0), (0, 0), (0.5, 0), (1, 0)}
    zero = Lattice.from_rationals([["0", "0"], ["0", "0"]], (0.1, 0.1))
    assert len(lattice_points_in_box(zero, (0, 1, 0, 1))) == 1


def test_detect_exact():
    half = detect_rational_dependence(Fraction(1, 2), Fraction(3, 4))
    assert half.dependent and half.ratio == Fraction(2, 3)
    r = detect_rational_dependence(Fraction(3, 4), Fraction(1, 2))
    assert r.dependent and r.mode == "exact" and r.ratio == Fraction(3, 2)
    assert detect_rational_dependence(0, 5).ratio == 0
    sw = detect_rational_dependence(2, 0)
    assert sw.dependent and sw.swapped
    with pytest.raises(DegenerateInput):
        detect_rational_dependence(0, 0)
    with pytest.raises(DegenerateInput):
        detect_rational_dependence(0.0, 0.0)


def test_detect_float():
    r = detect_rational_dependence(0.75, 0.5)
    assert r.dependent and r.mode == "continued_fraction_heuristic" and r.ratio == Fraction(3, 2)
    assert detect_rational_dependence(1 / 3, 1.0).ratio == Fraction(1, 3)


def test_sqrt2_not_dependent_against_convergents():
    x = math.sqrt(2)
    # every convergent below the denominator cap misses by more than the tolerance
    for c in convergents(Fraction(x), 10 ** 6):
        assert abs(x - float(c)) > 1e-12 * x
    assert not detect_rational_dependence(x, 1.0).dependent


def test_dependence_validation():
    with pytest.raises(ValueError):
        RationalDependence(True, 2, 4)
    with pytest.raises(ValueError):
        RationalDependence(True, 1, 1, mode="guess")


def _check_embedding(lat, emb, vs):
    Lp = emb.lattice.generator
    assert Lp[0, 1] == 0 and Lp[1, 0] == 0
    for v in vs:
        w = emb.map(v)
        assert all(isinstance(k, int) for k in w)
        assert np.allclose(lat.generator @ np.asarray(v, float), Lp @ np.asarray(w, float), atol=1e-12)


def test_superlattice_reference_example():
    lat = Lattice.from_rationals([["1", "2"], ["3", "1"]])
    emb = superlattice_embed(lat)
    assert emb.lattice.exact == ((1, 0), (0, 1))
    assert emb.witness == ((1, 2), (3, 1))
    _check_embedding(lat, emb, [(1, 0), (0, 1), (-2, 5)])
    rng = np.random.default_rng(0)
    vs = [tuple(int(a) for a in v) for v in rng.integers(-50, 51, size=(1000, 2))]
    _check_embedding(lat, emb, vs)


def test_superlattice_rectangular_is_identity():
    lat = Lattice.from_rationals([["1/2", "0"], ["0", "3"]])
    emb = superlattice_embed(lat)
    assert emb.lattice.exact == ((Fraction(1, 2), 0), (0, 3))
    assert emb.witness == ((1, 0), (0, 1))


@settings(max_examples=100)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=12), min_size=4, max_size=4))
def test_superlattice_random_rationals(entries):
    a, b, c, d = entries
    if (a == 0 and b == 0) or (c == 0 and d == 0):
        return
    lat = Lattice.from_rationals([[a, b], [c, d]])
    emb = superlattice_embed(lat)
    for v in ((1, 0), (0, 1), (3, -7)):
        w = emb.map(v)
        lhs = [a * v[0] + b * v[1], c * v[0] + d * v[1]]
        (l1, _), (_, l2) = emb.lattice.exact
        assert lhs == [l1 * w[0], l2 * w[1]]


def test_superlattice_refuses_heuristics_and_irrationals():
    with pytest.raises(NotEmbeddable):
        superlattice_embed(Lattice(np.array([[0.5, 1.0], [0.0, 1.0]])))
    emb = superlattice_embed(Lattice(np.array([[0.5, 1.0], [0.0, 1.0]])), allow_heuristic=True)
    assert emb.lattice.generator[0, 0] == pytest.approx(0.5)
    with pytest.raises(NotEmbeddable):
        superlattice_embed(Lattice(np.array([[math.sqrt(2), 1.0], [0.0, 1.0]])), allow_heuristic=True)
    with pytest.raises(DegenerateInput):
        superlattice_embed(Lattice.from_rationals([["0", "0"], ["1", "1"]]))


def test_lattice_in_line_family_rectangular():
    fam = lattice_in_line_family(Lattice.rectangular(2.0, 0.5))
    assert fam.theta == 0 and fam.spacing == pytest.approx(0.5)


def test_lattice_in_line_family_rotated():
    R = rotation_matrix(1.0)
    lat = Lattice(R @ np.diag([0.7, 1.0]), (0.2, 0.1))
    fam = lattice_in_line_family(lat)
    assert fam.theta == pytest.approx(1.0) and fam.spacing == pytest.approx(1.0)
    pts = lattice_points_in_box(lat, (-5, 5, -5, 5)).points
    assert np.max(fam.distance(pts)) < 1e-12


def test_lattice_in_line_family_rotated_identity():
    fam = lattice_in_line_family(Lattice(rotation_matrix(1.0)))
    assert fam.theta == pytest.approx(1.0) and fam.spacing == pytest.approx(1.0)


def test_lattice_in_line_family_degenerate():
    fam = lattice_in_line_family(Lattice(np.array([[1.0, 2.0], [1.0, 2.0]])))
    assert fam.single and fam.theta == pytest.approx(math.pi / 4)
